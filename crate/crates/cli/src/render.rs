use std::fmt::Write;

use contact_duality::fintop::FiniteSpace;
use contact_duality::{Contact, ContactRelation, Report};
use serde_json::{json, Value};

/// Everything a verb produces; `main` picks the rendering.
pub struct Outcome {
    pub pass: bool,
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl Outcome {
    pub fn info(json: Value, text: String) -> Self {
        Outcome {
            pass: true,
            json,
            text,
            dot: None,
        }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

/// One named check. `required` checks decide the exit status.
pub struct Check {
    pub name: &'static str,
    pub required: bool,
    pub report: Report,
}

impl Check {
    pub fn required(name: &'static str, report: Report) -> Self {
        Check {
            name,
            required: true,
            report,
        }
    }

    pub fn informational(name: &'static str, report: Report) -> Self {
        Check {
            name,
            required: false,
            report,
        }
    }
}

pub fn checks_outcome(kind: &str, checks: Vec<Check>) -> Outcome {
    let pass = checks.iter().all(|c| !c.required || c.report.is_empty());
    let json = json!({
        "kind": kind,
        "pass": pass,
        "checks": checks.iter().map(|c| json!({
            "name": c.name,
            "required": c.required,
            "pass": c.report.is_empty(),
            "violations": c.report.violations,
        })).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for c in &checks {
        let note = if c.required { "" } else { " (informational)" };
        if c.report.is_empty() {
            writeln!(text, "{}: pass{note}", c.name).unwrap();
        } else {
            writeln!(text, "{}: fail{note}: {}", c.name, c.report).unwrap();
        }
    }
    Outcome {
        pass,
        json,
        text,
        dot: None,
    }
}

/// A failing outcome carrying a refusal report.
pub fn refusal(what: &str, report: &Report) -> Outcome {
    Outcome {
        pass: false,
        json: json!({ "refused": what, "violations": report.violations }),
        text: format!("refused: {what} fails its axioms: {report}\n"),
        dot: None,
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Atom contact graph as an undirected DOT graph.
pub fn contact_dot(rel: &ContactRelation) -> String {
    let names = rel.algebra().atom_names();
    let mut out = String::from("graph contact {\n");
    for n in names {
        writeln!(out, "  {};", quote(n)).unwrap();
    }
    for (i, j) in rel.pairs() {
        writeln!(out, "  {} -- {};", quote(&names[i]), quote(&names[j])).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Specialization preorder (`x → y` when `y ∈ U_x`), covers only.
pub fn preorder_dot(x: &FiniteSpace) -> String {
    let names = x.point_names();
    let n = x.point_count();
    let strictly_above = |p: usize| x.min_nbhd(p) & !(1u64 << p);
    let mut out = String::from("digraph specialization {\n");
    for name in names {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
    for p in 0..n {
        let up = strictly_above(p);
        for q in (0..n).filter(|&q| up >> q & 1 == 1) {
            // skip q if some r strictly between p and q; equivalent points are drawn both ways
            let covered = (0..n).any(|r| {
                r != p && r != q && up >> r & 1 == 1 && x.min_nbhd(r) >> q & 1 == 1 && x.min_nbhd(q) >> r & 1 == 0
                    && x.min_nbhd(r) >> p & 1 == 0
            });
            if !covered {
                writeln!(out, "  {} -> {};", quote(&names[p]), quote(&names[q])).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn set_text(names: &[&str]) -> String {
    format!("{{{}}}", names.join(", "))
}
