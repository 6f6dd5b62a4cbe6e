//! Finite contact algebras, local contact algebras and their duality with
//! finite spaces, plus an interval model of the rational line.

pub mod clusters;
pub mod contact;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod finba;
pub mod fintop;
pub mod io;
pub mod lca;
pub mod lineregions;
pub mod report;

pub use clusters::{enumerate_clusters, is_cluster, Cluster, ClusterVerdict, ElementSet};
pub use contact::{check_axioms, extremal_contacts, AxiomSystem, Contact, ContactRelation, ElementRelation};
pub use error::{Error, Result};
pub use finba::{Element, FiniteBooleanAlgebra};
pub use fintop::{FiniteSpace, SpaceMap};
pub use lca::{check_lca_axioms, LocalContactAlgebra};
pub use report::{Report, Violation};
