use std::fmt::Write;
use std::path::Path;

use contact_duality::clusters::enumerate_clusters;
use contact_duality::contact::{check_axioms, AxiomSystem, ContactRelation};
use contact_duality::corpus::{all_maps, random_maps, seeded_rng};
use contact_duality::duality::{
    check_morphism as check_laws, compose as diamond, dual_space, roundtrip_verify, verify_lambda_g, xi_a_map, xi_t_map,
    AlgebraMorphism, MorphismKind, RoundtripItem,
};
use contact_duality::error::Error;
use contact_duality::fintop::{map_predicates, rc_algebra, space_predicates, FiniteSpace, SpaceMap};
use contact_duality::io::{self, element_key, element_names, Document};
use contact_duality::lca::{check_lca_axioms, sigma_infinity, LocalContactAlgebra};
use contact_duality::lineregions::{self, Endpoint, RationalRegion};
use contact_duality::Report;
use num::BigRational;
use serde_json::{json, Map, Value};

use crate::render::{checks_outcome, contact_dot, preorder_dot, refusal, set_text, Check, Outcome};
use crate::{load, Kind, RegionOp, Structural};

/// Spaces up to this size get every self-map in `roundtrip`.
const EXHAUSTIVE_ROUNDTRIP_POINTS: usize = 4;

pub struct Context {
    pub max_atoms: usize,
    pub seed: u64,
}

type Run = Result<Outcome, Structural>;

fn structural(path: &Path, e: Error) -> Structural {
    Structural(format!("{}: {e}", path.display()))
}

/// Axiom refusals and non-perfect maps are check failures (exit 1);
/// everything else is structural.
fn settle(path: &Path, e: Error) -> Run {
    match e {
        Error::AxiomsFailed { what, report } => Ok(refusal(what, &report)),
        Error::NotPerfect(what) => Ok(Outcome {
            pass: false,
            json: json!({ "refused": "map", "reason": format!("not perfect: fails {what}") }),
            text: format!("refused: map is not perfect (fails {what})\n"),
            dot: None,
        }),
        other => Err(structural(path, other)),
    }
}

fn doc(ctx: &Context, path: &Path) -> Result<Document, Structural> {
    Ok(load(path, ctx.max_atoms)?.doc)
}

fn lca_doc(ctx: &Context, path: &Path) -> Result<LocalContactAlgebra, Structural> {
    io::as_lca(doc(ctx, path)?).map_err(|e| structural(path, e))
}

fn morphism_doc(ctx: &Context, path: &Path) -> Result<AlgebraMorphism, Structural> {
    match doc(ctx, path)? {
        Document::Morphism(m) => Ok(m),
        other => Err(Structural(format!(
            "{}: expected a morphism, found a {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn per_law(labels: &[&'static str], report: &Report) -> Vec<Check> {
    labels
        .iter()
        .map(|&law| {
            Check::required(
                law,
                Report {
                    violations: report.violations.iter().filter(|v| v.law == law).cloned().collect(),
                },
            )
        })
        .collect()
}

fn labels(kind: MorphismKind) -> &'static [&'static str] {
    match kind {
        MorphismKind::Pal => &["PAL1", "PAL2", "PAL3", "PAL4", "PAL5", "PAL6"],
        MorphismKind::Dval => &["DVAL1", "DVAL2", "DVAL3", "DVAL4"],
    }
}

pub fn validate(ctx: &Context, file: &Path) -> Run {
    Ok(match doc(ctx, file)? {
        Document::Algebra(a) => Outcome::info(
            json!({ "kind": "algebra", "pass": true, "atoms": a.atom_count() }),
            format!("algebra: {} atoms, {} elements\n", a.atom_count(), a.element_count()),
        ),
        Document::Contact(c) => checks_outcome(
            "contact",
            vec![
                Check::required("CA", check_axioms(&c, AxiomSystem::Ca)),
                Check::required("NCA", check_axioms(&c, AxiomSystem::Nca)),
                Check::informational("CON", check_axioms(&c, AxiomSystem::Con)),
            ],
        ),
        Document::Lca(l) => checks_outcome(
            "lca",
            vec![
                Check::required("CA", check_axioms(&l.contact, AxiomSystem::Ca)),
                Check::required("LCA", check_lca_axioms(&l)),
                Check::required("NCA(C_ρ)", l.alexandroff().certificate()),
                Check::informational("CON", check_axioms(&l.contact, AxiomSystem::Con)),
            ],
        ),
        Document::Morphism(phi) => {
            let report = check_laws(&phi, MorphismKind::Pal);
            checks_outcome("morphism", per_law(labels(MorphismKind::Pal), &report))
        }
        Document::Space(x) => space_outcome(&x),
        Document::Map(f) => map_outcome(&f),
        Document::Region(r) => Outcome::info(
            json!({ "kind": "region", "pass": true, "region": r, "bounded": r.is_bounded() }),
            format!("{r}\n"),
        ),
    })
}

fn flags_text(flags: &[(&str, bool)]) -> String {
    flags.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

fn space_outcome(x: &FiniteSpace) -> Outcome {
    let p = space_predicates(x);
    let flags = [
        ("connected", p.connected),
        ("hausdorff", p.hausdorff),
        ("extremally_disconnected", p.extremally_disconnected),
        ("compact", p.compact),
    ];
    let preds: Map<String, Value> = flags.iter().map(|&(k, v)| (k.to_owned(), json!(v))).collect();
    Outcome::info(
        json!({ "kind": "space", "pass": true, "points": x.point_count(), "predicates": preds }),
        format!("space: {} points\n{}", x.point_count(), flags_text(&flags)),
    )
}

fn map_outcome(f: &SpaceMap) -> Outcome {
    let p = map_predicates(f);
    let flags = [
        ("continuous", p.continuous),
        ("closed", p.closed),
        ("perfect", p.perfect),
        ("injective", p.injective),
        ("surjective", p.surjective),
        ("dense_image", p.dense_image),
    ];
    let preds: Map<String, Value> = flags.iter().map(|&(k, v)| (k.to_owned(), json!(v))).collect();
    Outcome::info(
        json!({ "kind": "map", "pass": true, "predicates": preds }),
        format!("map: {} → {} points\n{}", f.source.point_count(), f.target.point_count(), flags_text(&flags)),
    )
}

pub fn clusters(ctx: &Context, file: &Path) -> Run {
    let l = lca_doc(ctx, file)?;
    let alg = l.algebra();
    let all = enumerate_clusters(&l.contact).map_err(|e| structural(file, e))?;
    let mut text = format!("clusters: {}\n", all.len());
    let mut listed = Vec::with_capacity(all.len());
    for c in &all {
        let bounded = c.support.meets(l.ideal.generator);
        let names = element_names(alg, c.support);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        writeln!(text, "  {}{}", set_text(&refs), if bounded { "" } else { " unbounded" }).unwrap();
        listed.push(json!({ "support": names, "bounded": bounded }));
    }
    let sigma = sigma_infinity(&l).map(|s| {
        let names = element_names(alg, s.cluster.support);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let status = s.verdict.condition().map_or("cluster".to_owned(), |k| format!("fails {k}"));
        writeln!(text, "sigma_infinity: {} ({status})", set_text(&refs)).unwrap();
        json!({ "support": names, "is_cluster": s.verdict.holds(), "fails": s.verdict.condition() })
    });
    if sigma.is_none() {
        text.push_str("sigma_infinity: none\n");
    }
    Ok(Outcome::info(json!({ "clusters": listed, "sigma_infinity": sigma }), text).with_dot(contact_dot(&l.contact)))
}

pub fn dualize(ctx: &Context, file: &Path) -> Run {
    let l = lca_doc(ctx, file)?;
    let d = match dual_space(&l) {
        Ok(d) => d,
        Err(e) => return settle(file, e),
    };
    let cert = verify_lambda_g(&l, &d).map_err(|e| structural(file, e))?;
    let alg = l.algebra();
    let x = &d.space;
    let mut table = Map::new();
    let mut text = format!(
        "case: {}\npoints: {}\n",
        serde_json::to_value(d.case).expect("serializable").as_str().unwrap_or_default(),
        x.point_names().join(", ")
    );
    for (p, name) in x.point_names().iter().enumerate() {
        writeln!(text, "  U({name}) = {}", set_text(&x.names_of(x.min_nbhd(p)))).unwrap();
    }
    text.push_str("lambda_g:\n");
    for a in alg.elements() {
        let pts = x.names_of(d.lambda_g(a));
        let names = element_names(alg, a);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        writeln!(text, "  {} ↦ {}", set_text(&refs), set_text(&pts)).unwrap();
        table.insert(element_key(alg, a), json!(pts));
    }
    if cert.is_empty() {
        text.push_str("certificate: pass\n");
    } else {
        writeln!(text, "certificate: fail: {cert}").unwrap();
    }
    Ok(Outcome {
        pass: cert.is_empty(),
        json: json!({
            "case": d.case,
            "space": io::space_json(x),
            "lambda_g": table,
            "certificate": cert.violations,
        }),
        text,
        dot: Some(preorder_dot(x)),
    })
}

pub fn lift(ctx: &Context, file: &Path) -> Run {
    let x = match doc(ctx, file)? {
        Document::Space(x) => x,
        other => {
            return Err(Structural(format!(
                "{}: lift expects a space, found a {}",
                file.display(),
                other.kind()
            )))
        }
    };
    let rc = rc_algebra(&x).map_err(|e| structural(file, e))?;
    let l = rc.lca();
    let mut text = format!("regular closed algebra: {} atoms\n", rc.atom_sets.len());
    for (name, &set) in rc.algebra().atom_names().iter().zip(&rc.atom_sets) {
        writeln!(text, "  {name} = {}", set_text(&x.names_of(set))).unwrap();
    }
    Ok(Outcome::info(io::lca_json(&l), text).with_dot(contact_dot(&rc.contact)))
}

fn morphism_text(m: &AlgebraMorphism) -> String {
    let (sa, ta) = (m.source_algebra(), m.target_algebra());
    let mut text = String::new();
    for a in sa.elements() {
        let (from, to) = (element_names(sa, a), element_names(ta, m.apply(a)));
        let from: Vec<&str> = from.iter().map(String::as_str).collect();
        let to: Vec<&str> = to.iter().map(String::as_str).collect();
        writeln!(text, "{} ↦ {}", set_text(&from), set_text(&to)).unwrap();
    }
    text
}

fn map_text(f: &SpaceMap) -> String {
    f.assign
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{} ↦ {}\n", f.source.point_names()[x], f.target.point_names()[y]))
        .collect()
}

pub fn dual_map(ctx: &Context, file: &Path) -> Run {
    match doc(ctx, file)? {
        Document::Map(f) => match xi_t_map(&f) {
            Ok(phi) => Ok(Outcome::info(io::morphism_json(&phi), morphism_text(&phi))),
            Err(e) => settle(file, e),
        },
        Document::Morphism(phi) => match xi_a_map(&phi) {
            Ok(f) => Ok(Outcome::info(io::map_json(&f), map_text(&f))),
            Err(e) => settle(file, e),
        },
        other => Err(Structural(format!(
            "{}: dual-map expects a map or a morphism, found a {}",
            file.display(),
            other.kind()
        ))),
    }
}

pub fn check_morphism(ctx: &Context, file: &Path, kind: Kind) -> Run {
    let phi = morphism_doc(ctx, file)?;
    let kind = match kind {
        Kind::Pal => MorphismKind::Pal,
        Kind::Dval => MorphismKind::Dval,
    };
    let report = check_laws(&phi, kind);
    Ok(checks_outcome("morphism", per_law(labels(kind), &report)))
}

pub fn compose(ctx: &Context, outer: &Path, inner: &Path) -> Run {
    let (phi2, phi1) = (morphism_doc(ctx, outer)?, morphism_doc(ctx, inner)?);
    let m = diamond(&phi2, &phi1).map_err(|e| structural(outer, e))?;
    Ok(Outcome::info(io::morphism_json(&m), morphism_text(&m)))
}

pub fn roundtrip(ctx: &Context, file: &Path, samples: usize) -> Run {
    let items: Vec<(String, RoundtripItem)> = match doc(ctx, file)? {
        Document::Space(x) => {
            let maps = if x.point_count() <= EXHAUSTIVE_ROUNDTRIP_POINTS {
                all_maps(&x, &x)
            } else {
                random_maps(&x, &x, samples, &mut seeded_rng(ctx.seed))
            };
            maps.into_iter()
                .filter(|f| map_predicates(f).perfect)
                .map(|f| (assign_label(&f), RoundtripItem::Space(f)))
                .collect()
        }
        Document::Map(f) => vec![(assign_label(&f), RoundtripItem::Space(f))],
        Document::Morphism(phi) => vec![("morphism".into(), RoundtripItem::Algebra(phi))],
        Document::Algebra(a) => {
            let l = LocalContactAlgebra::compact(ContactRelation::overlap(a));
            vec![("identity".into(), RoundtripItem::Algebra(AlgebraMorphism::identity(&l)))]
        }
        Document::Contact(c) => {
            let l = LocalContactAlgebra::compact(c);
            vec![("identity".into(), RoundtripItem::Algebra(AlgebraMorphism::identity(&l)))]
        }
        Document::Lca(l) => vec![("identity".into(), RoundtripItem::Algebra(AlgebraMorphism::identity(&l)))],
        Document::Region(_) => {
            return Err(Structural(format!(
                "{}: roundtrip expects a space, map, algebra or morphism",
                file.display()
            )))
        }
    };
    let mut failures = Vec::new();
    let mut text = String::new();
    for (label, item) in &items {
        let report = match roundtrip_verify(item) {
            Ok(r) => r,
            Err(e) => {
                let refused = settle(file, e)?;
                failures.push(json!({ "item": label, "refused": refused.json }));
                write!(text, "{label}: {}", refused.text).unwrap();
                continue;
            }
        };
        if !report.is_empty() {
            writeln!(text, "{label}: {report}").unwrap();
            failures.push(json!({ "item": label, "violations": report.violations }));
        }
    }
    let pass = failures.is_empty();
    writeln!(text, "roundtrip: {} items, {}", items.len(), if pass { "pass" } else { "fail" }).unwrap();
    Ok(Outcome {
        pass,
        json: json!({ "items": items.len(), "pass": pass, "failures": failures }),
        text,
        dot: None,
    })
}

fn assign_label(f: &SpaceMap) -> String {
    let names: Vec<&str> = f.assign.iter().map(|&y| f.target.point_names()[y].as_str()).collect();
    format!("[{}]", names.join(","))
}

fn region_arg(name: &str, s: &str) -> Result<RationalRegion, Structural> {
    s.parse().map_err(|e| match e {
        Error::Syntax { line, col, msg } => Structural(format!("{name}:{line}:{col}: {msg}")),
        other => Structural(format!("{name}: {other}")),
    })
}

fn rational_arg(name: &str, s: &str) -> Result<BigRational, Structural> {
    let e: Endpoint = s.parse().map_err(|m| Structural(format!("{name}: {m}")))?;
    e.finite().cloned().ok_or_else(|| Structural(format!("{name}: expected a finite rational")))
}

fn region_outcome(r: RationalRegion) -> Outcome {
    let text = format!("{r}\n");
    Outcome::info(json!({ "region": r }), text)
}

fn truth(value: bool, extra: Option<(&str, Value)>) -> Outcome {
    let mut obj = Map::new();
    obj.insert("result".into(), json!(value));
    if let Some((k, v)) = extra {
        obj.insert(k.into(), v);
    }
    Outcome::info(Value::Object(obj), format!("{value}\n"))
}

pub fn region(op: &RegionOp) -> Run {
    let two = |a: &str, b: &str| -> Result<(RationalRegion, RationalRegion), Structural> {
        Ok((region_arg("A", a)?, region_arg("B", b)?))
    };
    Ok(match op {
        RegionOp::Join { a, b } => {
            let (a, b) = two(a, b)?;
            region_outcome(a.join(&b))
        }
        RegionOp::Meet { a, b } => {
            let (a, b) = two(a, b)?;
            region_outcome(a.meet(&b))
        }
        RegionOp::Complement { a } => region_outcome(region_arg("A", a)?.complement()),
        RegionOp::Le { a, b } => {
            let (a, b) = two(a, b)?;
            truth(a.le(&b), None)
        }
        RegionOp::Contact { a, b } => {
            let (a, b) = two(a, b)?;
            let point = a.contact_point(&b).map(|p| json!(p.to_string()));
            truth(a.contact(&b), point.map(|p| ("point", p)))
        }
        RegionOp::WayBelow { a, b } => {
            let (a, b) = two(a, b)?;
            truth(a.way_below(&b), None)
        }
        RegionOp::Bounded { a } => truth(region_arg("A", a)?.is_bounded(), None),
        RegionOp::Interpolate { f, g } => {
            let (f, g) = (region_arg("F", f)?, region_arg("G", g)?);
            region_outcome(lineregions::interpolate(&f, &g).map_err(|e| Structural(format!("interpolate: {e}")))?)
        }
        RegionOp::AffineDual { alpha, beta, f } => {
            let (alpha, beta) = (rational_arg("ALPHA", alpha)?, rational_arg("BETA", beta)?);
            let f = region_arg("F", f)?;
            region_outcome(
                lineregions::affine_dual(&alpha, &beta, &f).map_err(|e| Structural(format!("affine-dual: {e}")))?,
            )
        }
    })
}
