//! JSON documents for every structure the command line reads or writes.
//!
//! Elements are written as sorted arrays of atom names. Morphism tables are
//! objects keyed by the comma-joined sorted names of the source element.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::contact::ContactRelation;
use crate::duality::AlgebraMorphism;
use crate::error::{Error, Result};
use crate::finba::{Element, FiniteBooleanAlgebra};
use crate::fintop::{FiniteSpace, SpaceMap};
use crate::lca::LocalContactAlgebra;
use crate::lineregions::RationalRegion;

/// Every document kind, detected from its top-level keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra(FiniteBooleanAlgebra),
    Contact(ContactRelation),
    Lca(LocalContactAlgebra),
    Space(FiniteSpace),
    Map(SpaceMap),
    Morphism(AlgebraMorphism),
    Region(RationalRegion),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::Contact(_) => "contact",
            Document::Lca(_) => "lca",
            Document::Space(_) => "space",
            Document::Map(_) => "map",
            Document::Morphism(_) => "morphism",
            Document::Region(_) => "region",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Algebra(a) => algebra_json(a),
            Document::Contact(c) => contact_json(c),
            Document::Lca(l) => lca_json(l),
            Document::Space(s) => space_json(s),
            Document::Map(m) => map_json(m),
            Document::Morphism(m) => morphism_json(m),
            Document::Region(r) => serde_json::to_value(r).expect("regions serialize"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraRepr {
    atoms: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LcaRepr {
    algebra: AlgebraRepr,
    contact: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bounded: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceRepr {
    points: Vec<String>,
    min_nbhd: IndexMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapRepr {
    source: SpaceRepr,
    target: SpaceRepr,
    assign: IndexMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismRepr {
    source: LcaRepr,
    target: LcaRepr,
    table: IndexMap<String, Vec<String>>,
}

/// Sorted atom names of `a`.
pub fn element_names(alg: &FiniteBooleanAlgebra, a: Element) -> Vec<String> {
    let mut names: Vec<String> = alg.names_of(a).into_iter().map(str::to_owned).collect();
    names.sort();
    names
}

pub fn element_json(alg: &FiniteBooleanAlgebra, a: Element) -> Value {
    json!(element_names(alg, a))
}

/// Comma-joined sorted names; the empty string for zero.
pub fn element_key(alg: &FiniteBooleanAlgebra, a: Element) -> String {
    element_names(alg, a).join(",")
}

pub fn parse_element<S: AsRef<str>>(alg: &FiniteBooleanAlgebra, names: &[S]) -> Result<Element> {
    alg.element(names)
}

fn algebra_repr(a: &FiniteBooleanAlgebra) -> AlgebraRepr {
    AlgebraRepr {
        atoms: a.atom_names().to_vec(),
    }
}

fn lca_repr(c: &ContactRelation, bounded: Option<Element>) -> LcaRepr {
    let alg = crate::contact::Contact::algebra(c);
    let names = alg.atom_names();
    LcaRepr {
        algebra: algebra_repr(alg),
        contact: c
            .pairs()
            .into_iter()
            .map(|(i, j)| [names[i].clone(), names[j].clone()])
            .collect(),
        bounded: bounded.map(|g| element_names(alg, g)),
    }
}

fn space_repr(s: &FiniteSpace) -> SpaceRepr {
    SpaceRepr {
        points: s.point_names().to_vec(),
        min_nbhd: s
            .point_names()
            .iter()
            .enumerate()
            .map(|(x, name)| {
                let nb = s.names_of(s.min_nbhd(x)).into_iter().map(str::to_owned).collect();
                (name.clone(), nb)
            })
            .collect(),
    }
}

pub fn algebra_json(a: &FiniteBooleanAlgebra) -> Value {
    serde_json::to_value(algebra_repr(a)).expect("serializable")
}

pub fn contact_json(c: &ContactRelation) -> Value {
    serde_json::to_value(lca_repr(c, None)).expect("serializable")
}

pub fn lca_json(l: &LocalContactAlgebra) -> Value {
    serde_json::to_value(lca_repr(&l.contact, Some(l.ideal.generator))).expect("serializable")
}

pub fn space_json(s: &FiniteSpace) -> Value {
    serde_json::to_value(space_repr(s)).expect("serializable")
}

pub fn map_json(m: &SpaceMap) -> Value {
    let repr = MapRepr {
        source: space_repr(&m.source),
        target: space_repr(&m.target),
        assign: m
            .assign
            .iter()
            .enumerate()
            .map(|(x, &y)| {
                (
                    m.source.point_names()[x].clone(),
                    m.target.point_names()[y].clone(),
                )
            })
            .collect(),
    };
    serde_json::to_value(repr).expect("serializable")
}

pub fn morphism_json(m: &AlgebraMorphism) -> Value {
    let (sa, ta) = (m.source_algebra(), m.target_algebra());
    let repr = MorphismRepr {
        source: lca_repr(&m.source.contact, Some(m.source.ideal.generator)),
        target: lca_repr(&m.target.contact, Some(m.target.ideal.generator)),
        table: sa
            .elements()
            .map(|a| (element_key(sa, a), element_names(ta, m.apply(a))))
            .collect(),
    };
    serde_json::to_value(repr).expect("serializable")
}

fn structure<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Malformed(format!("{what}: {e}")))
}

fn build_algebra(r: AlgebraRepr, cap: usize) -> Result<FiniteBooleanAlgebra> {
    FiniteBooleanAlgebra::with_cap(r.atoms, cap)
}

fn build_lca(r: LcaRepr, cap: usize) -> Result<(ContactRelation, Option<Element>)> {
    let alg = build_algebra(r.algebra, cap)?;
    let pairs = r
        .contact
        .iter()
        .map(|[p, q]| Ok((alg.atom_index(p)?, alg.atom_index(q)?)))
        .collect::<Result<Vec<_>>>()?;
    let bounded = r.bounded.map(|names| alg.element(&names)).transpose()?;
    Ok((ContactRelation::from_pairs(alg, pairs)?, bounded))
}

fn build_space(r: SpaceRepr) -> Result<FiniteSpace> {
    let index = |name: &str| {
        r.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownName(name.to_owned()))
    };
    for key in r.min_nbhd.keys() {
        index(key)?;
    }
    let nbhd = r
        .points
        .iter()
        .map(|p| {
            let row = r
                .min_nbhd
                .get(p)
                .ok_or_else(|| Error::Malformed(format!("no minimal neighbourhood for `{p}`")))?;
            row.iter().try_fold(0u64, |acc, n| Ok(acc | 1 << index(n)?))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteSpace::new(r.points.clone(), nbhd)
}

fn build_map(r: MapRepr) -> Result<SpaceMap> {
    let source = build_space(r.source)?;
    let target = build_space(r.target)?;
    for key in r.assign.keys() {
        source.point_index(key)?;
    }
    let assign = source
        .point_names()
        .iter()
        .map(|p| {
            let y = r
                .assign
                .get(p)
                .ok_or_else(|| Error::Malformed(format!("no image for `{p}`")))?;
            target.point_index(y)
        })
        .collect::<Result<Vec<_>>>()?;
    SpaceMap::new(source, target, assign)
}

fn lca_from(rel: ContactRelation, bounded: Option<Element>) -> Result<LocalContactAlgebra> {
    match bounded {
        Some(g) => LocalContactAlgebra::new(rel, g),
        None => Ok(LocalContactAlgebra::compact(rel)),
    }
}

fn build_morphism(r: MorphismRepr, cap: usize) -> Result<AlgebraMorphism> {
    let (sr, sb) = build_lca(r.source, cap)?;
    let (tr, tb) = build_lca(r.target, cap)?;
    let source = lca_from(sr, sb)?;
    let target = lca_from(tr, tb)?;
    let (sa, ta) = (source.algebra(), target.algebra());
    let mut table = vec![None; sa.element_count()];
    for (key, value) in &r.table {
        let names: Vec<&str> = if key.is_empty() { Vec::new() } else { key.split(',').map(str::trim).collect() };
        let a = sa.element(&names)?;
        if table[a.mask() as usize].replace(ta.element(value)?).is_some() {
            return Err(Error::Malformed(format!("table entry for `{key}` given twice")));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                Error::Malformed(format!(
                    "table has no entry for `{}`",
                    element_key(sa, Element::from_mask(i as u64))
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::new(source, target, table)
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let msg = full.rfind(" at line ").map_or(full.as_str(), |i| &full[..i]).to_owned();
        Error::Syntax {
            line: e.line(),
            col: e.column().max(1),
            msg,
        }
    })
}

/// Parses any document, detecting its kind from its keys.
pub fn parse_document(text: &str, max_atoms: usize) -> Result<Document> {
    document_from_value(parse_value(text)?, max_atoms)
}

pub fn document_from_value(v: Value, max_atoms: usize) -> Result<Document> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Malformed("expected a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    if has("table") {
        Ok(Document::Morphism(build_morphism(structure(v, "morphism")?, max_atoms)?))
    } else if has("assign") {
        Ok(Document::Map(build_map(structure(v, "map")?)?))
    } else if has("min_nbhd") || has("points") {
        Ok(Document::Space(build_space(structure(v, "space")?)?))
    } else if has("intervals") {
        Ok(Document::Region(structure(v, "region")?))
    } else if has("contact") {
        let (rel, bounded) = build_lca(structure(v, "contact algebra")?, max_atoms)?;
        match bounded {
            Some(g) => Ok(Document::Lca(LocalContactAlgebra::new(rel, g)?)),
            None => Ok(Document::Contact(rel)),
        }
    } else if has("atoms") {
        Ok(Document::Algebra(build_algebra(structure(v, "algebra")?, max_atoms)?))
    } else {
        Err(Error::Malformed(
            "unrecognized document: expected one of the keys atoms, contact, points, assign, table, intervals".into(),
        ))
    }
}

/// Reads a contact algebra or local contact algebra; plain contact documents
/// get the improper ideal.
pub fn as_lca(doc: Document) -> Result<LocalContactAlgebra> {
    match doc {
        Document::Lca(l) => Ok(l),
        Document::Contact(c) => Ok(LocalContactAlgebra::compact(c)),
        other => Err(Error::Malformed(format!(
            "expected a contact algebra, found a {}",
            other.kind()
        ))),
    }
}
