//! Computation of a report for an algebra and an optional two-term complex.

use serde::Serialize;

use crate::fdalg::{self, SplitFailure};
use crate::homcore::{
    self, evaluate_bounds, BoundCheck, BoundInputs, DimVerdict, ExtDim, FdBackend, GldimVerdict, PathAlgebraBackend,
    ResolutionOutcome,
};
use crate::pathalg::PathAlgebra;
use crate::repmod::Representation;
use crate::twoterm::{self, SiltingVerdict, TorsionClass, TwoTermComplex};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub cap: usize,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct ModuleAnalysis {
    pub text: String,
    pub class: TorsionClass,
    pub routes_agree: bool,
    /// Minimal resolution of `Hom(P, M)` over `End(P)`.
    pub functor: ResolutionOutcome,
}

#[derive(Clone, Debug)]
pub struct EndAnalysis {
    pub dim: usize,
    pub simples: usize,
    pub gld: GldimVerdict,
    pub ext1_total: ExtDim,
}

#[derive(Clone, Debug)]
pub struct SiltingAnalysis {
    pub verdict: SiltingVerdict,
    pub tilting: bool,
    pub pd_h0: DimVerdict,
    pub modules: Vec<ModuleAnalysis>,
    pub end: Option<EndAnalysis>,
    pub bounds: Vec<BoundCheck>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub dim: usize,
    /// `paths[i][j] = dim e_i A e_j`.
    pub paths: Vec<Vec<usize>>,
    pub vertices: Vec<String>,
    pub gld: GldimVerdict,
    pub silting: Option<SiltingAnalysis>,
}

pub fn analyze_algebra(a: &PathAlgebra, opts: Options) -> Analysis {
    let back = PathAlgebraBackend { alg: a.algebra.clone(), seed: opts.seed };
    let n = a.vertex_count();
    Analysis {
        dim: a.dim(),
        paths: (0..n).map(|i| (0..n).map(|j| a.algebra.paths_between(i, j).len()).collect()).collect(),
        vertices: a.presentation.vertices.clone(),
        gld: homcore::gldim(&back, opts.cap),
        silting: None,
    }
}

/// Runs every computation for `(A, P)`; `modules` are classified against the torsion pair of `P`.
pub fn analyze(
    a: &PathAlgebra,
    p: &TwoTermComplex,
    modules: &[(String, Representation)],
    opts: Options,
) -> Result<Analysis, SplitFailure> {
    let mut out = analyze_algebra(a, opts);
    let back_a = PathAlgebraBackend { alg: a.algebra.clone(), seed: opts.seed };
    let verdict = twoterm::is_silting(p);
    let tilting = twoterm::is_tilting(p);
    let pd_h0 = homcore::pd(&back_a, &p.homology(0), opts.cap);
    let mut s = SiltingAnalysis { verdict, tilting, pd_h0, modules: Vec::new(), end: None, bounds: Vec::new() };
    if verdict == SiltingVerdict::Silting {
        let end = fdalg::end_algebra(p);
        let back_b = FdBackend { structure: fdalg::fd_structure(&end.algebra)?, seed: opts.seed };
        let gld = homcore::gldim(&back_b, opts.cap);
        s.bounds = evaluate_bounds(&BoundInputs { gld_a: out.gld.overall, gld_b: gld.overall, pd_h0, tilting });
        for (text, m) in modules {
            let r = twoterm::torsion_classify(p, m);
            let fm = twoterm::functor_hom(&end, &TwoTermComplex::stalk0(m));
            let rep = back_b.structure.to_representation(&fm);
            s.modules.push(ModuleAnalysis {
                text: text.clone(),
                class: r.class,
                routes_agree: r.routes_agree(),
                functor: homcore::min_resolution(&back_b, &rep, opts.cap).outcome,
            });
        }
        s.end = Some(EndAnalysis {
            dim: end.algebra.dim(),
            simples: back_b.structure.basic.vertex_count(),
            ext1_total: homcore::ext1_simple_total(&back_b, opts.cap),
            gld,
        });
    }
    out.silting = Some(s);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Serialize)]
struct AlgebraJson {
    dim: String,
    vertices: Vec<String>,
    paths: Vec<Vec<String>>,
    gldim: String,
    simple_pd: Vec<String>,
}

#[derive(Serialize)]
struct PeriodJson {
    simple: String,
    entry: String,
    period: String,
}

#[derive(Serialize)]
struct EndJson {
    dim: String,
    simples: String,
    gldim: String,
    simple_pd: Vec<String>,
    ext1_simples: String,
    period: Vec<PeriodJson>,
}

#[derive(Serialize)]
struct ModuleJson {
    module: String,
    class: TorsionClass,
    routes_agree: bool,
    functor_resolution: String,
}

#[derive(Serialize)]
struct SiltingJson {
    verdict: SiltingVerdict,
    tilting: bool,
    pd_h0: String,
    modules: Vec<ModuleJson>,
}

#[derive(Serialize)]
struct BoundJson {
    name: &'static str,
    outcome: homcore::BoundOutcome,
    bound: Option<String>,
}

#[derive(Serialize)]
pub struct ReportJson {
    schema_version: &'static str,
    fixture: Option<String>,
    algebra: AlgebraJson,
    silting: Option<SiltingJson>,
    end: Option<EndJson>,
    bounds: Vec<BoundJson>,
    checks: Vec<Check>,
    elapsed_ms: Option<String>,
}

pub fn outcome_string(o: ResolutionOutcome) -> String {
    match o {
        ResolutionOutcome::Finite(d) => format!("pd {d}"),
        ResolutionOutcome::InfinitePeriodic { entry, period } => format!("periodic from {entry} with period {period}"),
        ResolutionOutcome::ExceededCap(c) => format!("unknown (cap {c})"),
    }
}

fn ext_string(e: ExtDim) -> String {
    match e {
        ExtDim::Known(d) => d.to_string(),
        ExtDim::Unknown => "unknown".into(),
    }
}

fn simple_pd(g: &GldimVerdict) -> Vec<String> {
    g.per_simple.iter().map(|o| DimVerdict::from(*o).to_string()).collect()
}

/// Report record; every number is rendered as a decimal string.
pub fn report_json(
    fixture: Option<&str>,
    an: &Analysis,
    checks: Vec<Check>,
    elapsed_ms: Option<u128>,
) -> ReportJson {
    let algebra = AlgebraJson {
        dim: an.dim.to_string(),
        vertices: an.vertices.clone(),
        paths: an.paths.iter().map(|r| r.iter().map(usize::to_string).collect()).collect(),
        gldim: an.gld.overall.to_string(),
        simple_pd: simple_pd(&an.gld),
    };
    let silting = an.silting.as_ref().map(|s| SiltingJson {
        verdict: s.verdict,
        tilting: s.tilting,
        pd_h0: s.pd_h0.to_string(),
        modules: s
            .modules
            .iter()
            .map(|m| ModuleJson {
                module: m.text.clone(),
                class: m.class,
                routes_agree: m.routes_agree,
                functor_resolution: outcome_string(m.functor),
            })
            .collect(),
    });
    let end = an.silting.as_ref().and_then(|s| s.end.as_ref()).map(|e| EndJson {
        dim: e.dim.to_string(),
        simples: e.simples.to_string(),
        gldim: e.gld.overall.to_string(),
        simple_pd: simple_pd(&e.gld),
        ext1_simples: ext_string(e.ext1_total),
        period: e
            .gld
            .per_simple
            .iter()
            .enumerate()
            .filter_map(|(i, o)| match *o {
                ResolutionOutcome::InfinitePeriodic { entry, period } => Some(PeriodJson {
                    simple: (i + 1).to_string(),
                    entry: entry.to_string(),
                    period: period.to_string(),
                }),
                _ => None,
            })
            .collect(),
    });
    let bounds = an
        .silting
        .as_ref()
        .map(|s| {
            s.bounds
                .iter()
                .map(|b| BoundJson { name: b.name, outcome: b.outcome, bound: b.bound.map(|x| x.to_string()) })
                .collect()
        })
        .unwrap_or_default();
    ReportJson {
        schema_version: SCHEMA_VERSION,
        fixture: fixture.map(str::to_string),
        algebra,
        silting,
        end,
        bounds,
        checks,
        elapsed_ms: elapsed_ms.map(|t| t.to_string()),
    }
}

/// Plain-text summary of a report.
pub fn render_text(r: &ReportJson) -> String {
    let mut out = String::new();
    if let Some(f) = &r.fixture {
        out.push_str(&format!("fixture {f}\n"));
    }
    out.push_str(&format!("algebra: dim {}, gldim {}\n", r.algebra.dim, r.algebra.gldim));
    out.push_str(&format!("  pd of simples: {}\n", r.algebra.simple_pd.join(" ")));
    if r.silting.is_none() {
        out.push_str("  paths e_i A e_j:\n");
        for (v, row) in r.algebra.vertices.iter().zip(&r.algebra.paths) {
            out.push_str(&format!("    {v}: {}\n", row.join(" ")));
        }
    }
    if let Some(s) = &r.silting {
        out.push_str(&format!(
            "silting: {:?}, tilting {}, pd H0 {}\n",
            s.verdict,
            if s.tilting { "yes" } else { "no" },
            s.pd_h0
        ));
        for m in &s.modules {
            out.push_str(&format!(
                "  {}: {:?}{}, Hom(P, -) resolution {}\n",
                m.module,
                m.class,
                if m.routes_agree { "" } else { " (routes disagree)" },
                m.functor_resolution
            ));
        }
    }
    if let Some(e) = &r.end {
        out.push_str(&format!(
            "end: dim {}, simples {}, gldim {}, ext1 between simples {}\n",
            e.dim, e.simples, e.gldim, e.ext1_simples
        ));
        out.push_str(&format!("  pd of simples: {}\n", e.simple_pd.join(" ")));
        for p in &e.period {
            out.push_str(&format!("  simple {}: syzygy {} recurs after {}\n", p.simple, p.entry, p.period));
        }
    }
    for b in &r.bounds {
        let bound = b.bound.as_deref().map(|x| format!(" (bound {x})")).unwrap_or_default();
        out.push_str(&format!("bound {}: {:?}{bound}\n", b.name, b.outcome));
    }
    for c in &r.checks {
        out.push_str(&format!(
            "check {}: {} (expected {}, got {})\n",
            c.name,
            if c.pass { "ok" } else { "FAILED" },
            c.expected,
            c.actual
        ));
    }
    if let Some(t) = &r.elapsed_ms {
        out.push_str(&format!("elapsed {t} ms\n"));
    }
    out
}
