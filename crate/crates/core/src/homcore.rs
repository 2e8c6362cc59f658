//! Minimal projective resolutions, projective and global dimension, Ext.
//!
//! Everything is written against [`ModuleCategory`], implemented for path algebras
//! and for split basic algebras given by structure constants.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactlin::{unit, Matrix, Scalar, Subspace};
use crate::fdalg::{self, FdStructure, SplitFailure};
use crate::pathalg::{BasicAlgebra, PathAlgebra};
use crate::repmod::{self, HomSpace, ModuleMap, ProjectiveCover, Representation, WithMap, DEFAULT_ISO_SEED};
use crate::twoterm::{self, TwoTermComplex};

pub const DEFAULT_CAP: usize = 64;

/// Module category of a split basic algebra.
pub trait ModuleCategory: Sync {
    fn algebra(&self) -> &Arc<BasicAlgebra>;
    fn iso_seed(&self) -> u64;

    fn simples(&self) -> Vec<Representation> {
        (0..self.algebra().vertex_count()).map(|v| Representation::simple(self.algebra(), v)).collect()
    }

    fn projective(&self, v: usize) -> Representation {
        Representation::projective(self.algebra(), v)
    }

    fn projective_cover(&self, m: &Representation) -> ProjectiveCover {
        repmod::projective_cover(m)
    }

    fn kernel(&self, f: &ModuleMap, m: &Representation) -> WithMap {
        repmod::kernel(f, m)
    }

    fn radical(&self, m: &Representation) -> Vec<Subspace> {
        repmod::radical_subspaces(m)
    }

    fn hom(&self, m: &Representation, n: &Representation) -> HomSpace {
        repmod::hom(m, n).expect("modules over the backend algebra")
    }

    fn find_isomorphism(&self, m: &Representation, n: &Representation) -> Option<ModuleMap> {
        repmod::find_isomorphism(m, n, self.iso_seed())
    }

    fn is_projective(&self, m: &Representation) -> bool {
        repmod::is_projective(m)
    }
}

/// Modules over `A = kQ/I`.
#[derive(Clone, Debug)]
pub struct PathAlgebraBackend {
    pub alg: Arc<BasicAlgebra>,
    pub seed: u64,
}

impl PathAlgebraBackend {
    pub fn new(a: &PathAlgebra) -> Self {
        PathAlgebraBackend { alg: a.algebra.clone(), seed: DEFAULT_ISO_SEED }
    }
}

impl ModuleCategory for PathAlgebraBackend {
    fn algebra(&self) -> &Arc<BasicAlgebra> {
        &self.alg
    }

    fn iso_seed(&self) -> u64 {
        self.seed
    }
}

/// Modules over an algebra given by structure constants, through its Gabriel quiver.
#[derive(Clone, Debug)]
pub struct FdBackend {
    pub structure: FdStructure,
    pub seed: u64,
}

impl FdBackend {
    pub fn new(b: &Arc<fdalg::FdAlgebra>) -> Result<Self, SplitFailure> {
        Ok(FdBackend { structure: fdalg::fd_structure(b)?, seed: DEFAULT_ISO_SEED })
    }
}

impl ModuleCategory for FdBackend {
    fn algebra(&self) -> &Arc<BasicAlgebra> {
        &self.structure.basic
    }

    fn iso_seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResolutionOutcome {
    /// Projective dimension `d`.
    Finite(usize),
    /// `Ω^entry ≅ Ω^(entry + period)`.
    InfinitePeriodic { entry: usize, period: usize },
    ExceededCap(usize),
}

#[derive(Clone, Debug)]
pub struct Resolution {
    /// `Ω^0 = M, Ω^1, ...`
    pub syzygies: Vec<Representation>,
    /// `covers[k]: P_k -> Ω^k`.
    pub covers: Vec<ProjectiveCover>,
    /// `inclusions[k]: Ω^{k+1} -> P_k`.
    pub inclusions: Vec<ModuleMap>,
    pub outcome: ResolutionOutcome,
}

impl Resolution {
    /// Differential `P_k -> P_{k-1}` for `k >= 1`.
    pub fn differential(&self, k: usize) -> ModuleMap {
        self.covers[k].map.then(&self.inclusions[k - 1])
    }

    /// Exactness at every step, minimality of every cover, and an invertible witness
    /// for a periodic outcome.
    pub fn verify(&self, backend: &dyn ModuleCategory) -> Result<(), String> {
        for (k, c) in self.covers.iter().enumerate() {
            let omega = &self.syzygies[k];
            if !c.map.is_natural(&c.module, omega) {
                return Err(format!("cover {k} is not a module map"));
            }
            if c.map.rank() != omega.total_dim() {
                return Err(format!("cover {k} is not surjective"));
            }
            if let Some(incl) = self.inclusions.get(k) {
                let next = &self.syzygies[k + 1];
                if !incl.is_natural(next, &c.module) || incl.rank() != next.total_dim() {
                    return Err(format!("syzygy {} is not a submodule of P_{k}", k + 1));
                }
                if !incl.then(&c.map).is_zero() || next.total_dim() + omega.total_dim() != c.module.total_dim() {
                    return Err(format!("step {k} is not exact"));
                }
                let rad = backend.radical(&c.module);
                for (block, r) in incl.blocks.iter().zip(&rad) {
                    if (0..block.cols()).any(|j| !r.contains(&block.column(j))) {
                        return Err(format!("cover {k} is not minimal"));
                    }
                }
            }
        }
        if let ResolutionOutcome::InfinitePeriodic { entry, period } = self.outcome {
            let (a, b) = (&self.syzygies[entry], &self.syzygies[entry + period]);
            match backend.find_isomorphism(a, b) {
                Some(f) if f.is_natural(a, b) && f.is_isomorphism() && !a.is_zero() => {}
                _ => return Err("periodicity witness is not an isomorphism".into()),
            }
        }
        Ok(())
    }
}

fn resolve(
    backend: &dyn ModuleCategory,
    m: &Representation,
    cap: usize,
    stop_on_period: bool,
    min_steps: usize,
) -> Resolution {
    let mut res = Resolution { syzygies: vec![m.clone()], covers: Vec::new(), inclusions: Vec::new(), outcome: ResolutionOutcome::ExceededCap(cap) };
    let mut periodic = None;
    for k in 0.. {
        let cur = res.syzygies[k].clone();
        if cur.is_zero() {
            res.outcome = ResolutionOutcome::Finite(0);
            return res;
        }
        if backend.is_projective(&cur) {
            res.covers.push(backend.projective_cover(&cur));
            res.outcome = ResolutionOutcome::Finite(k);
            return res;
        }
        if periodic.is_none() {
            periodic = (0..k)
                .find(|&j| backend.find_isomorphism(&res.syzygies[j], &cur).is_some())
                .map(|j| ResolutionOutcome::InfinitePeriodic { entry: j, period: k - j });
        }
        if let Some(p) = periodic {
            if stop_on_period || k >= min_steps {
                res.outcome = p;
                return res;
            }
        }
        if k >= cap {
            res.outcome = ResolutionOutcome::ExceededCap(cap);
            return res;
        }
        let c = backend.projective_cover(&cur);
        let kern = backend.kernel(&c.map, &c.module);
        res.covers.push(c);
        res.inclusions.push(kern.map);
        res.syzygies.push(kern.module);
    }
    unreachable!()
}

/// Iterates projective covers and kernels; stops at a projective syzygy, at a syzygy
/// isomorphic to any earlier one, or after `cap` steps.
pub fn min_resolution(backend: &dyn ModuleCategory, m: &Representation, cap: usize) -> Resolution {
    resolve(backend, m, cap, true, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DimVerdict {
    Finite(usize),
    Infinite,
    Unknown(usize),
}

impl From<ResolutionOutcome> for DimVerdict {
    fn from(o: ResolutionOutcome) -> Self {
        match o {
            ResolutionOutcome::Finite(d) => DimVerdict::Finite(d),
            ResolutionOutcome::InfinitePeriodic { .. } => DimVerdict::Infinite,
            ResolutionOutcome::ExceededCap(c) => DimVerdict::Unknown(c),
        }
    }
}

impl std::fmt::Display for DimVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimVerdict::Finite(d) => write!(f, "{d}"),
            DimVerdict::Infinite => f.write_str("infinite"),
            DimVerdict::Unknown(c) => write!(f, "unknown (cap {c})"),
        }
    }
}

pub fn pd(backend: &dyn ModuleCategory, m: &Representation, cap: usize) -> DimVerdict {
    min_resolution(backend, m, cap).outcome.into()
}

#[derive(Clone, Debug)]
pub struct GldimVerdict {
    pub per_simple: Vec<ResolutionOutcome>,
    pub overall: DimVerdict,
}

pub fn combine_verdicts(per: &[ResolutionOutcome]) -> DimVerdict {
    let mut max = 0;
    let mut unknown = None;
    for o in per {
        match *o {
            ResolutionOutcome::InfinitePeriodic { .. } => return DimVerdict::Infinite,
            ResolutionOutcome::ExceededCap(c) => unknown = Some(c),
            ResolutionOutcome::Finite(d) => max = max.max(d),
        }
    }
    unknown.map_or(DimVerdict::Finite(max), DimVerdict::Unknown)
}

/// Maximum projective dimension of the simples, one resolution per simple in parallel.
pub fn gldim(backend: &dyn ModuleCategory, cap: usize) -> GldimVerdict {
    let simples = backend.simples();
    let per: Vec<ResolutionOutcome> = simples.par_iter().map(|s| min_resolution(backend, s, cap).outcome).collect();
    let overall = combine_verdicts(&per);
    GldimVerdict { per_simple: per, overall }
}

/// Projective resolution by arbitrary surjections `covers`, out to `P_len`.
pub struct FreeResolution {
    pub terms: Vec<Representation>,
    /// `differentials[k]: P_{k+1} -> P_k`.
    pub differentials: Vec<ModuleMap>,
}

/// Non-minimal resolution using one projective per basis vector of each syzygy.
pub fn free_resolution(m: &Representation, len: usize) -> FreeResolution {
    let alg = m.alg.clone();
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut cur = m.clone();
    let mut prev_incl: Option<ModuleMap> = None;
    for _ in 0..=len {
        let mut verts = Vec::new();
        let mut images = Vec::new();
        for v in 0..cur.dims.len() {
            for i in 0..cur.dims[v] {
                verts.push(v);
                images.push(unit(cur.dims[v], i));
            }
        }
        let p = repmod::projective_sum(&alg, &verts);
        let cover = repmod::map_from_projectives(&p, &verts, &cur, &images);
        if let Some(incl) = prev_incl.take() {
            differentials.push(cover.then(&incl));
        }
        let k = repmod::kernel(&cover, &p);
        terms.push(p);
        prev_incl = Some(k.map);
        cur = k.module;
    }
    FreeResolution { terms, differentials }
}

fn cochain_rank(d: &ModuleMap, src: &Representation, tgt: &Representation, n: &Representation) -> usize {
    // δ: Hom(tgt, N) -> Hom(src, N), f -> f ∘ d
    let h_t = repmod::hom(tgt, n).expect("same algebra");
    let h_s = repmod::hom(src, n).expect("same algebra");
    let cols: Vec<Vec<Scalar>> =
        h_t.basis.iter().map(|f| h_s.coordinates(&d.then(f)).expect("composite is natural")).collect();
    Matrix::from_columns(h_s.dim(), &cols).rank()
}

/// `dim Ext^i` from the terms and differentials `P_{k+1} -> P_k` of any projective
/// resolution that reaches `P_{i+1}`.
pub fn ext_from_resolution(terms: &[Representation], diffs: &[ModuleMap], n: &Representation, i: usize) -> usize {
    let hom_i = repmod::hom(&terms[i], n).expect("same algebra").dim();
    let out_rank = if i + 1 < terms.len() { cochain_rank(&diffs[i], &terms[i + 1], &terms[i], n) } else { 0 };
    let in_rank = if i > 0 { cochain_rank(&diffs[i - 1], &terms[i], &terms[i - 1], n) } else { 0 };
    hom_i - out_rank - in_rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtDim {
    Known(usize),
    Unknown,
}

pub fn ext_dim(backend: &dyn ModuleCategory, m: &Representation, n: &Representation, i: usize, cap: usize) -> ExtDim {
    let res = resolve(backend, m, cap, false, i + 1);
    let available = res.covers.len();
    if let ResolutionOutcome::ExceededCap(_) = res.outcome {
        if available < i + 2 {
            return ExtDim::Unknown;
        }
    }
    let terms: Vec<Representation> = res.covers.iter().map(|c| c.module.clone()).collect();
    if i >= terms.len() {
        return ExtDim::Known(0);
    }
    let diffs: Vec<ModuleMap> = (1..terms.len()).map(|k| res.differential(k)).collect();
    ExtDim::Known(ext_from_resolution(&terms, &diffs, n, i))
}

/// `Σ_{i,j} dim Ext^1(S_i, S_j)`, the number of arrows of the quiver.
pub fn ext1_simple_total(backend: &dyn ModuleCategory, cap: usize) -> ExtDim {
    let simples = backend.simples();
    let mut total = 0;
    for s in &simples {
        for t in &simples {
            match ext_dim(backend, s, t, 1, cap) {
                ExtDim::Known(d) => total += d,
                ExtDim::Unknown => return ExtDim::Unknown,
            }
        }
    }
    ExtDim::Known(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundOutcome {
    Pass,
    /// An applicable inequality is violated.
    Fail,
    NotApplicable,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub outcome: BoundOutcome,
    pub bound: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct BoundInputs {
    pub gld_a: DimVerdict,
    pub gld_b: DimVerdict,
    pub pd_h0: DimVerdict,
    pub tilting: bool,
}

fn check_le(gld_b: DimVerdict, bound: usize) -> BoundOutcome {
    match gld_b {
        DimVerdict::Finite(v) if v <= bound => BoundOutcome::Pass,
        DimVerdict::Finite(_) | DimVerdict::Infinite => BoundOutcome::Fail,
        DimVerdict::Unknown(_) => BoundOutcome::Inconclusive,
    }
}

/// Evaluates the four bounds on `gld End(P)`.
pub fn evaluate_bounds(inp: &BoundInputs) -> Vec<BoundCheck> {
    let fixed = |name: &'static str, need: usize, bound: usize| match inp.gld_a {
        DimVerdict::Finite(d) if d == need => BoundCheck { name, outcome: check_le(inp.gld_b, bound), bound: Some(bound) },
        DimVerdict::Unknown(_) => BoundCheck { name, outcome: BoundOutcome::Inconclusive, bound: None },
        _ => BoundCheck { name, outcome: BoundOutcome::NotApplicable, bound: None },
    };
    let mut out = vec![fixed("gldA=1 => gldB<=3", 1, 3), fixed("gldA=2 => gldB<=7", 2, 7)];

    let name = "pdH0<=1 => gldB<=2gldA+2";
    out.push(match (inp.pd_h0, inp.gld_a) {
        (DimVerdict::Unknown(_), _) | (DimVerdict::Finite(0 | 1), DimVerdict::Unknown(_)) => {
            BoundCheck { name, outcome: BoundOutcome::Inconclusive, bound: None }
        }
        (DimVerdict::Finite(p), DimVerdict::Finite(d)) if p <= 1 => {
            BoundCheck { name, outcome: check_le(inp.gld_b, 2 * d + 2), bound: Some(2 * d + 2) }
        }
        _ => BoundCheck { name, outcome: BoundOutcome::NotApplicable, bound: None },
    });

    let name = "tilting => gldB<=gldA+1";
    out.push(match (inp.tilting, inp.gld_a) {
        (true, DimVerdict::Finite(d)) => BoundCheck { name, outcome: check_le(inp.gld_b, d + 1), bound: Some(d + 1) },
        (true, DimVerdict::Unknown(_)) => BoundCheck { name, outcome: BoundOutcome::Inconclusive, bound: None },
        _ => BoundCheck { name, outcome: BoundOutcome::NotApplicable, bound: None },
    });
    out
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub inputs: BoundInputs,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn falsified(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == BoundOutcome::Fail)
    }
}

/// Computes `gld A`, `gld End(p)`, `pd H^0(p)` and tilting, then evaluates the bounds.
pub fn check_bounds(a: &PathAlgebra, p: &TwoTermComplex, cap: usize) -> Result<BoundsReport, SplitFailure> {
    let back_a = PathAlgebraBackend::new(a);
    let end = fdalg::end_algebra(p);
    let back_b = FdBackend::new(&end.algebra)?;
    let inputs = BoundInputs {
        gld_a: gldim(&back_a, cap).overall,
        gld_b: gldim(&back_b, cap).overall,
        pd_h0: pd(&back_a, &p.homology(0), cap),
        tilting: twoterm::is_tilting(p),
    };
    let checks = evaluate_bounds(&inputs);
    Ok(BoundsReport { inputs, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundOutcome::*;
    use DimVerdict::*;

    fn outcomes(inp: BoundInputs) -> Vec<BoundOutcome> {
        evaluate_bounds(&inp).into_iter().map(|c| c.outcome).collect()
    }

    #[test]
    fn hereditary_bound() {
        let inp = BoundInputs { gld_a: Finite(1), gld_b: Finite(3), pd_h0: Finite(1), tilting: false };
        assert_eq!(outcomes(inp), vec![Pass, NotApplicable, Pass, NotApplicable]);
        let inp = BoundInputs { gld_a: Finite(1), gld_b: Finite(4), pd_h0: Finite(2), tilting: true };
        assert_eq!(outcomes(inp), vec![Fail, NotApplicable, NotApplicable, Fail]);
    }

    #[test]
    fn infinite_and_unknown_dimensions() {
        let inp = BoundInputs { gld_a: Finite(2), gld_b: Infinite, pd_h0: Finite(0), tilting: true };
        assert_eq!(outcomes(inp), vec![NotApplicable, Fail, Fail, Fail]);
        let inp = BoundInputs { gld_a: Finite(2), gld_b: Unknown(8), pd_h0: Unknown(8), tilting: false };
        assert_eq!(outcomes(inp), vec![NotApplicable, Inconclusive, Inconclusive, NotApplicable]);
        let inp = BoundInputs { gld_a: Unknown(8), gld_b: Finite(0), pd_h0: Finite(1), tilting: true };
        assert_eq!(outcomes(inp), vec![Inconclusive, Inconclusive, Inconclusive, Inconclusive]);
        let inp = BoundInputs { gld_a: Infinite, gld_b: Finite(9), pd_h0: Finite(1), tilting: true };
        assert_eq!(outcomes(inp), vec![NotApplicable; 4]);
    }

    #[test]
    fn verdicts_combine_with_infinite_first() {
        let f = ResolutionOutcome::Finite(3);
        let p = ResolutionOutcome::InfinitePeriodic { entry: 0, period: 2 };
        let c = ResolutionOutcome::ExceededCap(5);
        assert_eq!(combine_verdicts(&[f, ResolutionOutcome::Finite(1)]), Finite(3));
        assert_eq!(combine_verdicts(&[f, c]), Unknown(5));
        assert_eq!(combine_verdicts(&[c, p, f]), Infinite);
        assert_eq!(combine_verdicts(&[]), Finite(0));
    }
}
