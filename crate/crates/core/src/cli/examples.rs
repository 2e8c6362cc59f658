//! Bundled example fixtures with their expected values.

use crate::fixtures;
use crate::homcore::{DimVerdict, ExtDim, ResolutionOutcome};
use crate::twoterm::{SiltingVerdict, TorsionClass};

use super::report::{Analysis, Check};

#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub quiver: String,
    pub complex: Option<String>,
    pub modules: Vec<String>,
    kind: Kind,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Ex1(usize),
    Ex2,
    Ex3,
    A0,
}

/// All bundled examples, ordered by name.
pub fn all() -> Vec<Example> {
    let mut out: Vec<Example> = (2..=4)
        .map(|n| Example {
            name: format!("ex1:n={n}"),
            quiver: fixtures::ex1_quiver(n),
            complex: Some(fixtures::ex1_complex(n)),
            modules: Vec::new(),
            kind: Kind::Ex1(n),
        })
        .collect();
    out.push(Example {
        name: "ex2".into(),
        quiver: fixtures::EX2_QUIVER.into(),
        complex: Some(fixtures::EX2_COMPLEX.into()),
        modules: Vec::new(),
        kind: Kind::Ex2,
    });
    out.push(Example {
        name: "ex3".into(),
        quiver: fixtures::EX3_QUIVER.into(),
        complex: Some(fixtures::EX3_COMPLEX.into()),
        modules: ["S2", "P1", "P2/(a, d)", "P2/(a.b)"].map(String::from).to_vec(),
        kind: Kind::Ex3,
    });
    out.push(Example {
        name: "a0".into(),
        quiver: fixtures::A0_QUIVER.into(),
        complex: None,
        modules: Vec::new(),
        kind: Kind::A0,
    });
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Examples whose name equals `filter` or starts with `filter:`.
pub fn select(filter: Option<&str>) -> Vec<Example> {
    all()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name == f || e.name.starts_with(&format!("{f}:"))))
        .collect()
}

fn check(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check { name: name.into(), pass: expected == actual, expected, actual }
}

fn verdict_string(v: Option<SiltingVerdict>) -> String {
    v.map_or_else(|| "none".into(), |v| format!("{v:?}"))
}

fn ext_string(e: Option<ExtDim>) -> String {
    match e {
        Some(ExtDim::Known(d)) => d.to_string(),
        _ => "unknown".into(),
    }
}

impl Example {
    pub fn checks(&self, an: &Analysis) -> Vec<Check> {
        let s = an.silting.as_ref();
        let end = s.and_then(|s| s.end.as_ref());
        let verdict = verdict_string(s.map(|s| s.verdict));
        let gld_b = end.map_or_else(|| "none".into(), |e| e.gld.overall.to_string());
        let simples = end.map_or(0, |e| e.simples);
        let mut out = Vec::new();
        match self.kind {
            Kind::Ex1(n) => {
                out.push(check("gld A", n, an.gld.overall));
                out.push(check("verdict", "Silting", verdict));
                let pd = s.map(|s| s.pd_h0);
                out.push(check("pd H0 <= 1", true, matches!(pd, Some(DimVerdict::Finite(0 | 1)))));
                out.push(check("gld B", 2 * n + 2, gld_b));
                out.push(check("simples of B", 2 * n + 4, simples));
                out.push(check("ext1 between simples of B", 2 * n + 3, ext_string(end.map(|e| e.ext1_total))));
            }
            Kind::Ex2 => {
                out.push(check("gld A", 2, an.gld.overall));
                out.push(check("verdict", "Silting", verdict));
                out.push(check("gld B", 7, gld_b));
                out.push(check("simples of B", 8, simples));
                let pds: Vec<_> = end.map(|e| e.gld.per_simple.clone()).unwrap_or_default();
                let within = pds.iter().all(|o| matches!(o, ResolutionOutcome::Finite(0..=7)));
                let attained = pds.contains(&ResolutionOutcome::Finite(7));
                out.push(check("pd of simples of B <= 7, one attained", true, within && attained));
            }
            Kind::Ex3 => {
                out.push(check("gld A", 3, an.gld.overall));
                out.push(check("verdict", "Silting", verdict));
                let expected = [
                    TorsionClass::Torsion,
                    TorsionClass::TorsionFree,
                    TorsionClass::TorsionFree,
                    TorsionClass::TorsionFree,
                ];
                let modules = s.map(|s| s.modules.as_slice()).unwrap_or_default();
                for (text, class) in self.modules.iter().zip(expected) {
                    let m = modules.iter().find(|m| &m.text == text);
                    let actual = m.map_or_else(|| "missing".into(), |m| {
                        if m.routes_agree { format!("{:?}", m.class) } else { "routes disagree".into() }
                    });
                    out.push(check(&format!("torsion class of {text}"), format!("{class:?}"), actual));
                }
                let f_s2 = modules.iter().find(|m| m.text == "S2").map(|m| m.functor);
                out.push(check(
                    "Hom(P, S2) resolution",
                    format!("{:?}", Some(ResolutionOutcome::InfinitePeriodic { entry: 0, period: 3 })),
                    format!("{f_s2:?}"),
                ));
                out.push(check("gld B", DimVerdict::Infinite, gld_b));
            }
            Kind::A0 => out.push(check("gld A", 3, an.gld.overall)),
        }
        out
    }
}
