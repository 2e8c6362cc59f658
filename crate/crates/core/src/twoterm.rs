//! Two-term complexes `X^{-1} -> X^0`, morphisms in the homotopy category, and the
//! torsion theory attached to a silting complex.

use std::sync::Arc;

use crate::exactlin::{Matrix, Scalar, Subspace};
use crate::fdalg::{self, EndAlgebra, FdModule, SplitFailure};
use crate::pathalg::BasicAlgebra;
use crate::repmod::{self, hom, HomSpace, ModuleMap, Representation, WithMap};

#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub minus1: Representation,
    pub zero: Representation,
    pub diff: ModuleMap,
    /// Both terms are projective modules.
    pub terms_projective: bool,
}

/// Degreewise maps `X^{-1} -> Y^{-1}` and `X^0 -> Y^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub minus1: ModuleMap,
    pub zero: ModuleMap,
}

impl ChainMap {
    pub fn identity(x: &TwoTermComplex) -> Self {
        ChainMap { minus1: ModuleMap::identity(&x.minus1), zero: ModuleMap::identity(&x.zero) }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ChainMap) -> ChainMap {
        ChainMap { minus1: self.minus1.then(&after.minus1), zero: self.zero.then(&after.zero) }
    }

    pub fn is_chain_map(&self, x: &TwoTermComplex, y: &TwoTermComplex) -> bool {
        x.diff.then(&self.zero) == self.minus1.then(&y.diff)
    }
}

impl TwoTermComplex {
    pub fn new(minus1: Representation, zero: Representation, diff: ModuleMap) -> Self {
        let terms_projective = repmod::is_projective(&minus1) && repmod::is_projective(&zero);
        TwoTermComplex { minus1, zero, diff, terms_projective }
    }

    /// `m` in degree 0.
    pub fn stalk0(m: &Representation) -> Self {
        let z = Representation::zero(&m.alg);
        let diff = ModuleMap::zero(&z, m);
        TwoTermComplex::new(z, m.clone(), diff)
    }

    /// `m` in degree -1.
    pub fn stalk1(m: &Representation) -> Self {
        let z = Representation::zero(&m.alg);
        let diff = ModuleMap::zero(m, &z);
        TwoTermComplex::new(m.clone(), z, diff)
    }

    pub fn from_map(f: &ModuleMap, source: &Representation, target: &Representation) -> Self {
        TwoTermComplex::new(source.clone(), target.clone(), f.clone())
    }

    pub fn alg(&self) -> &Arc<BasicAlgebra> {
        &self.zero.alg
    }

    pub fn direct_sum(parts: &[TwoTermComplex]) -> Self {
        assert!(!parts.is_empty());
        let m1: Vec<Representation> = parts.iter().map(|p| p.minus1.clone()).collect();
        let m0: Vec<Representation> = parts.iter().map(|p| p.zero.clone()).collect();
        let s1 = repmod::direct_sum(&m1);
        let s0 = repmod::direct_sum(&m0);
        let mut diff = ModuleMap::zero(&s1.module, &s0.module);
        for (k, p) in parts.iter().enumerate() {
            diff = diff.add(&s1.projections[k].then(&p.diff).then(&s0.injections[k]));
        }
        TwoTermComplex {
            minus1: s1.module,
            zero: s0.module,
            diff,
            terms_projective: parts.iter().all(|p| p.terms_projective),
        }
    }

    /// Minimal projective presentation `cover(ker) -> cover(m)`.
    pub fn projective_presentation(m: &Representation) -> Self {
        let c0 = repmod::projective_cover(m);
        let k = repmod::kernel(&c0.map, &c0.module);
        let c1 = repmod::projective_cover(&k.module);
        let diff = c1.map.then(&k.map);
        TwoTermComplex { minus1: c1.module, zero: c0.module, diff, terms_projective: true }
    }

    /// `H^{-1}` with its inclusion into `X^{-1}`.
    pub fn h_minus1(&self) -> WithMap {
        repmod::kernel(&self.diff, &self.minus1)
    }

    /// `H^0` with the projection from `X^0`.
    pub fn h_zero(&self) -> WithMap {
        repmod::cokernel(&self.diff, &self.zero)
    }

    pub fn homology(&self, degree: i32) -> Representation {
        match degree {
            -1 => self.h_minus1().module,
            0 => self.h_zero().module,
            _ => Representation::zero(self.alg()),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.minus1.total_dim() + self.zero.total_dim()
    }
}

/// `Hom_K(X, Y[shift])`: chain maps modulo null-homotopic ones.
///
/// Elements are coordinate vectors over the component Hom spaces: for shift 0 the
/// pair `(X^{-1} -> Y^{-1}, X^0 -> Y^0)`, for shift 1 `X^{-1} -> Y^0`, for shift -1
/// `X^0 -> Y^{-1}`.
#[derive(Clone, Debug)]
pub struct ChainHomClass {
    pub shift: i32,
    comps: Vec<HomSpace>,
    cycles: Subspace,
    boundaries: Subspace,
    classes: Subspace,
}

impl ChainHomClass {
    fn build(shift: i32, comps: Vec<HomSpace>, cycles: Subspace, boundaries: Subspace) -> Self {
        let reduced: Vec<Vec<Scalar>> = cycles.basis().iter().map(|z| boundaries.reduce(z)).collect();
        let classes = Subspace::from_vectors(cycles.ambient(), reduced);
        ChainHomClass { shift, comps, cycles, boundaries, classes }
    }

    fn zero_space(shift: i32) -> Self {
        ChainHomClass::build(shift, Vec::new(), Subspace::zero(0), Subspace::zero(0))
    }

    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    pub fn cycles_dim(&self) -> usize {
        self.cycles.dim()
    }

    pub fn boundaries_dim(&self) -> usize {
        self.boundaries.dim()
    }

    /// Canonical representatives of a basis of classes.
    pub fn class_basis(&self) -> &[Vec<Scalar>] {
        self.classes.basis()
    }

    /// Coordinates of the class of a cycle in [`Self::class_basis`].
    pub fn class_coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.classes.coordinates(&self.boundaries.reduce(v))
    }

    /// Basis of the null-homotopic maps.
    pub fn boundary_basis(&self) -> &[Vec<Scalar>] {
        self.boundaries.basis()
    }

    pub fn is_cycle(&self, v: &[Scalar]) -> bool {
        self.cycles.contains(v)
    }

    pub fn is_null_homotopic(&self, v: &[Scalar]) -> bool {
        self.boundaries.contains(v)
    }

    /// Chain map of a coordinate vector (shift 0 only).
    pub fn chain_map(&self, v: &[Scalar]) -> ChainMap {
        assert_eq!(self.shift, 0);
        let a = self.comps[0].dim();
        ChainMap { minus1: self.comps[0].combine(&v[..a]), zero: self.comps[1].combine(&v[a..]) }
    }

    pub fn chain_map_coordinates(&self, f: &ChainMap) -> Option<Vec<Scalar>> {
        assert_eq!(self.shift, 0);
        let mut v = self.comps[0].coordinates(&f.minus1)?;
        v.extend(self.comps[1].coordinates(&f.zero)?);
        Some(v)
    }

    /// The single component map of a coordinate vector (shift ±1).
    pub fn component_map(&self, v: &[Scalar]) -> ModuleMap {
        assert_ne!(self.shift, 0);
        self.comps[0].combine(v)
    }
}

fn columns_matrix(rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
    Matrix::from_columns(rows, &cols)
}

/// Homotopy classes of maps `x -> y[shift]`. Equals the derived Hom when `x` has
/// projective terms; `y` is arbitrary.
pub fn hom_homotopy(x: &TwoTermComplex, y: &TwoTermComplex, shift: i32) -> ChainHomClass {
    let h = |a: &Representation, b: &Representation| hom(a, b).expect("same algebra");
    match shift {
        0 => {
            let h11 = h(&x.minus1, &y.minus1);
            let h00 = h(&x.zero, &y.zero);
            let h0m = h(&x.zero, &y.minus1);
            let (a, b) = (h11.dim(), h00.dim());
            let flat_len: usize = x.minus1.dims.iter().zip(&y.zero.dims).map(|(p, q)| p * q).sum();
            let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(a + b);
            for f in &h11.basis {
                cols.push(f.then(&y.diff).flatten());
            }
            for g in &h00.basis {
                cols.push(x.diff.then(g).flatten().into_iter().map(|c| -c).collect());
            }
            let cycles = columns_matrix(flat_len, cols).nullspace();
            let bounds = h0m.basis.iter().map(|k| {
                let mut v = h11.coordinates(&x.diff.then(k)).expect("h∘d is natural");
                v.extend(h00.coordinates(&k.then(&y.diff)).expect("d∘h is natural"));
                v
            });
            let boundaries = Subspace::from_vectors(a + b, bounds);
            ChainHomClass::build(0, vec![h11, h00], cycles, boundaries)
        }
        1 => {
            let hm0 = h(&x.minus1, &y.zero);
            let h00 = h(&x.zero, &y.zero);
            let h11 = h(&x.minus1, &y.minus1);
            let n = hm0.dim();
            let bounds = h00
                .basis
                .iter()
                .map(|g| x.diff.then(g))
                .chain(h11.basis.iter().map(|f| f.then(&y.diff)))
                .map(|f| hm0.coordinates(&f).expect("composite is natural"))
                .collect::<Vec<_>>();
            let boundaries = Subspace::from_vectors(n, bounds);
            ChainHomClass::build(1, vec![hm0], Subspace::full(n), boundaries)
        }
        -1 => {
            let h0m = h(&x.zero, &y.minus1);
            let n = h0m.dim();
            let len1: usize = x.minus1.dims.iter().zip(&y.minus1.dims).map(|(p, q)| p * q).sum();
            let len2: usize = x.zero.dims.iter().zip(&y.zero.dims).map(|(p, q)| p * q).sum();
            let cols: Vec<Vec<Scalar>> = h0m
                .basis
                .iter()
                .map(|f| {
                    let mut v = x.diff.then(f).flatten();
                    v.extend(f.then(&y.diff).flatten());
                    v
                })
                .collect();
            let cycles = columns_matrix(len1 + len2, cols).nullspace();
            ChainHomClass::build(-1, vec![h0m], cycles, Subspace::zero(n))
        }
        s => ChainHomClass::zero_space(s),
    }
}

pub fn is_presilting(p: &TwoTermComplex) -> bool {
    hom_homotopy(p, p, 1).dim() == 0
}

pub fn is_tilting(p: &TwoTermComplex) -> bool {
    is_presilting(p) && hom_homotopy(p, p, -1).dim() == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SiltingVerdict {
    Silting,
    PresiltingNotSilting,
    NotPresilting,
    SplitFailure,
}

/// Presilting, and the number of simple blocks of `End(p)/rad` equals the number of vertices.
pub fn is_silting(p: &TwoTermComplex) -> SiltingVerdict {
    if !is_presilting(p) {
        return SiltingVerdict::NotPresilting;
    }
    let end = fdalg::end_algebra(p);
    match fdalg::semisimple_block_count(&end.algebra) {
        Ok(k) if k == p.alg().vertex_count() => SiltingVerdict::Silting,
        Ok(_) => SiltingVerdict::PresiltingNotSilting,
        Err(SplitFailure { .. }) => SiltingVerdict::SplitFailure,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TorsionClass {
    Torsion,
    TorsionFree,
    Neither,
}

/// `0 -> tM -> M -> M/tM -> 0`.
#[derive(Clone, Debug)]
pub struct CanonicalSequence {
    pub torsion: WithMap,
    pub free: WithMap,
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub class: TorsionClass,
    /// `(Hom(P, M[1]) = 0, Hom(P, M) = 0)`.
    pub by_hom: (bool, bool),
    /// `(tM = M, tM = 0)` with `tM` the trace of `H^0(P)`.
    pub by_trace: (bool, bool),
    pub sequence: CanonicalSequence,
}

impl TorsionReport {
    pub fn routes_agree(&self) -> bool {
        self.by_hom == self.by_trace
    }
}

/// Torsion submodule: the trace of `H^0(p)` in `m`.
pub fn canonical_sequence(h0: &Representation, m: &Representation) -> CanonicalSequence {
    let subs = repmod::trace_subspaces(h0, m);
    CanonicalSequence {
        torsion: repmod::submodule(m, &subs).expect("trace is a submodule"),
        free: repmod::quotient(m, &subs).expect("trace is a submodule"),
    }
}

pub fn torsion_classify(p: &TwoTermComplex, m: &Representation) -> TorsionReport {
    let x = TwoTermComplex::stalk0(m);
    let by_hom = (hom_homotopy(p, &x, 1).dim() == 0, hom_homotopy(p, &x, 0).dim() == 0);
    let sequence = canonical_sequence(&p.homology(0), m);
    let t = sequence.torsion.module.total_dim();
    let by_trace = (t == m.total_dim(), t == 0);
    let class = if by_hom.0 {
        TorsionClass::Torsion
    } else if by_hom.1 {
        TorsionClass::TorsionFree
    } else {
        TorsionClass::Neither
    };
    TorsionReport { class, by_hom, by_trace, sequence }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CMembership {
    /// `H^0(x)` torsion and `H^{-1}(x)` torsion-free, via traces.
    pub by_homology: bool,
    /// `Hom(p, x[1]) = 0 = Hom(p, x[-1])`.
    pub by_hom_vanishing: bool,
}

impl CMembership {
    pub fn agree(&self) -> bool {
        self.by_homology == self.by_hom_vanishing
    }
}

/// Membership of `x` in the heart `C(p)`.
pub fn c_membership(p: &TwoTermComplex, x: &TwoTermComplex) -> CMembership {
    let t = p.homology(0);
    let h0 = x.homology(0);
    let hm = x.homology(-1);
    let torsion = repmod::trace(&t, &h0).module.total_dim() == h0.total_dim();
    let free = repmod::trace(&t, &hm).module.is_zero();
    CMembership {
        by_homology: torsion && free,
        by_hom_vanishing: hom_homotopy(p, x, 1).dim() == 0 && hom_homotopy(p, x, -1).dim() == 0,
    }
}

/// Replaces `p0^{-1}` by `p0^{-1} / t H^{-1}(p0)`, with `t` the torsion part for `p`.
pub fn tilde(p: &TwoTermComplex, p0: &TwoTermComplex) -> TwoTermComplex {
    let h0 = p.homology(0);
    let k = p0.h_minus1();
    let t = repmod::trace_subspaces(&h0, &k.module);
    let subs: Vec<Subspace> = t
        .iter()
        .zip(&k.map.blocks)
        .map(|(s, incl)| Subspace::from_vectors(incl.rows(), s.basis().iter().map(|v| incl.mul_vec(v))))
        .collect();
    let q = repmod::quotient(&p0.minus1, &subs).expect("torsion part is a submodule");
    // lift quotient coordinates back along unit vectors at the complement coordinates
    let lifts = ModuleMap {
        blocks: subs
            .iter()
            .map(|s| {
                let cols: Vec<Vec<Scalar>> =
                    s.complement_coordinates().iter().map(|&c| crate::exactlin::unit(s.ambient(), c)).collect();
                Matrix::from_columns(s.ambient(), &cols)
            })
            .collect(),
    };
    let diff = lifts.then(&p0.diff);
    TwoTermComplex::new(q.module, p0.zero.clone(), diff)
}

/// `Hom_K(p, x)` as a right module over `End(p)`, acting by precomposition.
pub fn functor_hom(end: &EndAlgebra, x: &TwoTermComplex) -> FdModule {
    let space = hom_homotopy(&end.complex, x, 0);
    let reps: Vec<ChainMap> = space.class_basis().iter().map(|v| space.chain_map(v)).collect();
    let d = reps.len();
    let action = end
        .basis_maps
        .iter()
        .map(|b| {
            let cols: Vec<Vec<Scalar>> = reps
                .iter()
                .map(|v| {
                    let comp = b.then(v);
                    let c = space.chain_map_coordinates(&comp).expect("composite of chain maps");
                    space.class_coordinates(&c).expect("composite is a cycle")
                })
                .collect();
            Matrix::from_columns(d, &cols)
        })
        .collect();
    FdModule { alg: end.algebra.clone(), dim: d, action }
}
