//! Finite-dimensional algebras given by structure constants, and their modules.
//!
//! The main client is `B = End(P)`. A split basic `B` is rewritten as a quiver with a
//! basis of path words ([`FdStructure`]) so that its modules can be handled by the
//! representation code in [`crate::repmod`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlin::{axpy, int, unit, Matrix, Scalar, Subspace};
use crate::pathalg::{BasicAlgebra, BasisElement};
use crate::quiverdsl::ArrowDecl;
use crate::repmod::{self, ModuleMap, Representation};
use crate::twoterm::{hom_homotopy, ChainHomClass, ChainMap, TwoTermComplex};

/// Largest absolute value whose divisors are enumerated when looking for rational roots.
const ROOT_SEARCH_LIMIT: u64 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("algebra does not split as a basic algebra over Q: {reason}")]
pub struct SplitFailure {
    pub reason: String,
}

fn split_failure(reason: impl Into<String>) -> SplitFailure {
    SplitFailure { reason: reason.into() }
}

#[derive(Clone, Debug)]
pub struct FdAlgebra {
    pub labels: Vec<String>,
    /// `structure[i][j]` holds the coordinates of `b_i * b_j`.
    pub structure: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl FdAlgebra {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.structure[i][j]);
            }
        }
        out
    }

    /// Matrix of `y -> x * y`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.mul(x, &unit(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Matrix of `y -> y * x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.mul(&unit(n, j), x)).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| self.mul(&self.structure[i][j], &unit(n, k)) == self.mul(&unit(n, i), &self.structure[j][k]))
            })
        })
    }

    pub fn unit_is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let e = unit(n, i);
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    /// The algebra of a [`BasicAlgebra`] by its structure constants.
    pub fn from_basic(a: &BasicAlgebra) -> Self {
        FdAlgebra {
            labels: (0..a.dim()).map(|i| a.basis_label(i)).collect(),
            structure: a.structure_constants(),
            unit: a.one(),
        }
    }

    /// Full matrix algebra `M_n(Q)` with basis the matrix units.
    pub fn matrix_algebra(n: usize) -> Self {
        let d = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut structure = vec![vec![vec![Scalar::zero(); d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    structure[idx(i, j)][idx(j, l)] = unit(d, idx(i, l));
                }
            }
        }
        let mut u = vec![Scalar::zero(); d];
        for i in 0..n {
            u[idx(i, i)] = Scalar::one();
        }
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{i}{j}"))).collect();
        FdAlgebra { labels, structure, unit: u }
    }

    /// `Q × ... × Q` with coordinate idempotents as basis.
    pub fn product_of_fields(n: usize) -> Self {
        let mut structure = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, row) in structure.iter_mut().enumerate() {
            row[i] = unit(n, i);
        }
        FdAlgebra { labels: (0..n).map(|i| format!("f{i}")).collect(), structure, unit: vec![Scalar::one(); n] }
    }

    /// `Q[x]/(p)` in the monomial basis, for a monic polynomial given by its
    /// coefficients `[c_0, ..., c_{d-1}]` (so `x^d = -Σ c_k x^k`).
    pub fn truncated_polynomial(coeffs: &[Scalar]) -> Self {
        let d = coeffs.len();
        let mut powers: Vec<Vec<Scalar>> = (0..d).map(|i| unit(d, i)).collect();
        for k in d..2 * d {
            let prev = &powers[k - 1];
            let mut next = vec![Scalar::zero(); d];
            next[1..d].clone_from_slice(&prev[..d - 1]);
            let top = prev[d - 1].clone();
            for (i, c) in coeffs.iter().enumerate() {
                next[i] -= &top * c;
            }
            powers.push(next);
        }
        let structure = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
        FdAlgebra { labels: (0..d).map(|i| format!("x^{i}")).collect(), structure, unit: unit(d, 0) }
    }
}

/// Jacobson radical: `{x : tr L_{xy} = 0 for all y}`.
pub fn radical(b: &FdAlgebra) -> Subspace {
    let n = b.dim();
    let traces: Vec<Scalar> = (0..n).map(|m| trace(&b.left_matrix(&unit(n, m)))).collect();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut t = Scalar::zero();
            for (c, tm) in b.structure[i][j].iter().zip(&traces) {
                if !c.is_zero() {
                    t += c * tm;
                }
            }
            g[(i, j)] = t;
        }
    }
    g.transpose().nullspace()
}

fn trace(m: &Matrix) -> Scalar {
    (0..m.rows()).fold(Scalar::zero(), |acc, i| acc + &m[(i, i)])
}

/// Span of all products `x * y` with `x ∈ u`, `y ∈ v`.
pub fn product_space(b: &FdAlgebra, u: &Subspace, v: &Subspace) -> Subspace {
    let gens = u.basis().iter().flat_map(|x| v.basis().iter().map(move |y| b.mul(x, y)));
    Subspace::from_vectors(b.dim(), gens)
}

/// Least `N` with `J^N = 0`, or `None` if the powers stabilise at a nonzero space.
pub fn nilpotency_index(b: &FdAlgebra, j: &Subspace) -> Option<usize> {
    let mut power = Subspace::full(b.dim());
    let mut k = 0;
    while !power.is_zero() {
        let next = product_space(b, &power, j);
        if next == power {
            return None;
        }
        power = next;
        k += 1;
    }
    Some(k)
}

/// `b / ideal` for a two-sided ideal, with basis the images of `b_c` at the complement
/// coordinates of `ideal`.
pub fn quotient_algebra(b: &FdAlgebra, ideal: &Subspace) -> FdAlgebra {
    let lifts = ideal.complement_coordinates();
    let projection = ideal.quotient_projection();
    let n = b.dim();
    let structure = lifts
        .iter()
        .map(|&p| lifts.iter().map(|&q| projection.mul_vec(&b.mul(&unit(n, p), &unit(n, q)))).collect())
        .collect();
    FdAlgebra {
        labels: lifts.iter().map(|&p| b.labels[p].clone()).collect(),
        structure,
        unit: projection.mul_vec(&b.unit),
    }
}

/// `B/J` with basis the lifts `b_c` at the complement coordinates of `J`.
struct Semisimple {
    dim: usize,
    lifts: Vec<usize>,
    structure: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl Semisimple {
    fn new(b: &FdAlgebra, j: &Subspace) -> Self {
        let q = quotient_algebra(b, j);
        Semisimple { dim: q.dim(), lifts: j.complement_coordinates(), structure: q.structure, unit: q.unit }
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, yk) in y.iter().enumerate() {
                if !yk.is_zero() {
                    axpy(&mut out, &(xi * yk), &self.structure[i][k]);
                }
            }
        }
        out
    }

    fn lift(&self, x: &[Scalar], n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (c, &p) in x.iter().zip(&self.lifts) {
            out[p] = c.clone();
        }
        out
    }

    fn center(&self) -> Subspace {
        let d = self.dim;
        let mut rows = Vec::new();
        for k in 0..d {
            let s = unit(d, k);
            // z * s - s * z = 0, linear in z
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|i| {
                    let e = unit(d, i);
                    let mut v = self.mul(&e, &s);
                    axpy(&mut v, &-Scalar::one(), &self.mul(&s, &e));
                    v
                })
                .collect();
            let m = Matrix::from_columns(d, &cols);
            rows.extend(m.row_vectors());
        }
        Matrix::from_rows(d, rows).nullspace()
    }

    /// Primitive central idempotents, or a failure if some centre element has a
    /// minimal polynomial that does not split into distinct rational factors.
    fn central_idempotents(&self) -> Result<Vec<Vec<Scalar>>, SplitFailure> {
        let z = self.center();
        let mut idems = vec![self.unit.clone()];
        for zb in z.basis() {
            let mut next = Vec::new();
            for e in &idems {
                let y = self.mul(zb, e);
                let poly = self.minimal_polynomial(&y, e);
                let roots = rational_roots(&poly)?;
                if roots.len() + 1 != poly.len() {
                    return Err(split_failure("centre element with irreducible factor of degree > 1"));
                }
                if roots.len() == 1 {
                    next.push(e.clone());
                    continue;
                }
                for (i, l) in roots.iter().enumerate() {
                    // Π_{μ ≠ λ} (y - μ e) / (λ - μ)
                    let mut acc = e.clone();
                    for (k, mu) in roots.iter().enumerate() {
                        if k == i {
                            continue;
                        }
                        let mut f = y.clone();
                        axpy(&mut f, &-mu.clone(), e);
                        let scale = (l - mu).recip();
                        acc = self.mul(&acc, &f).into_iter().map(|c| c * &scale).collect();
                    }
                    next.push(acc);
                }
            }
            idems = next;
        }
        if idems.len() != z.dim() {
            return Err(split_failure("centre is not a product of copies of Q"));
        }
        Ok(idems)
    }

    /// Minimal polynomial of `y` in the unital algebra `eSe` with unit `e`, as
    /// coefficients `[c_0, ..., c_{d-1}, 1]`.
    fn minimal_polynomial(&self, y: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
        let mut powers = vec![e.to_vec()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), y);
            let m = Matrix::from_columns(self.dim, &powers);
            if let Some(sol) = m.solve_right(&Matrix::from_columns(self.dim, std::slice::from_ref(&next))).expect("shapes") {
                let mut poly: Vec<Scalar> = sol.column(0).into_iter().map(|c| -c).collect();
                poly.push(Scalar::one());
                return poly;
            }
            powers.push(next);
        }
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let v = n.to_u64().filter(|&v| v <= ROOT_SEARCH_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots of a monic polynomial (coefficients low to high), sorted.
fn rational_roots(poly: &[Scalar]) -> Result<Vec<Scalar>, SplitFailure> {
    let l = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * Scalar::from_integer(l.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.first().is_some_and(Zero::is_zero) {
        ints.remove(0);
        if !roots.contains(&Scalar::zero()) {
            roots.push(Scalar::zero());
        }
    }
    if ints.len() > 1 {
        let lead = ints.last().expect("nonempty").clone();
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(&lead)) else {
            return Err(split_failure("coefficients too large for the rational root search"));
        };
        let eval = |x: &Scalar| ints.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + Scalar::from_integer(c.clone()));
        for p in &ps {
            for q in &qs {
                for s in [1i64, -1] {
                    let cand = Scalar::new(p * s, q.clone());
                    if !roots.contains(&cand) && eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Number of simple components of `b / rad b`.
pub fn semisimple_block_count(b: &FdAlgebra) -> Result<usize, SplitFailure> {
    let j = radical(b);
    Ok(Semisimple::new(b, &j).central_idempotents()?.len())
}

fn lift_idempotent(b: &FdAlgebra, e: &[Scalar]) -> Vec<Scalar> {
    let mut e = e.to_vec();
    loop {
        let e2 = b.mul(&e, &e);
        if e2 == e {
            return e;
        }
        let e3 = b.mul(&e2, &e);
        e = e2.iter().zip(&e3).map(|(a, c)| int(3) * a - int(2) * c).collect();
    }
}

/// Complete set of primitive orthogonal idempotents of a split basic algebra.
pub fn primitive_idempotents(b: &FdAlgebra) -> Result<Vec<Vec<Scalar>>, SplitFailure> {
    let j = radical(b);
    let s = Semisimple::new(b, &j);
    let central = s.central_idempotents()?;
    for e in &central {
        let block = Subspace::from_vectors(s.dim, (0..s.dim).map(|k| s.mul(e, &unit(s.dim, k))));
        if block.dim() != 1 {
            return Err(split_failure(format!("semisimple block of dimension {} (not basic)", block.dim())));
        }
    }
    let n = b.dim();
    let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(central.len());
    let mut sum = vec![Scalar::zero(); n];
    for (k, e) in central.iter().enumerate() {
        let mut comp = b.unit.clone();
        axpy(&mut comp, &-Scalar::one(), &sum);
        let lifted = if k + 1 == central.len() {
            comp
        } else {
            let f = b.mul(&b.mul(&comp, &s.lift(e, n)), &comp);
            lift_idempotent(b, &f)
        };
        axpy(&mut sum, &Scalar::one(), &lifted);
        out.push(lifted);
    }
    debug_assert_eq!(sum, b.unit);
    Ok(out)
}

/// A split basic algebra rewritten on its Gabriel quiver.
#[derive(Clone, Debug)]
pub struct FdStructure {
    pub algebra: Arc<FdAlgebra>,
    pub idempotents: Vec<Vec<Scalar>>,
    pub radical: Subspace,
    /// Arrow elements of `e_i J e_j` spanning it modulo `J^2`.
    pub arrow_elements: Vec<Vec<Scalar>>,
    pub basic: Arc<BasicAlgebra>,
    /// Column `k` is the element of `basic.basis[k]` in the original coordinates.
    pub change_of_basis: Matrix,
    change_inverse: Matrix,
}

pub fn fd_structure(b: &Arc<FdAlgebra>) -> Result<FdStructure, SplitFailure> {
    let idem = primitive_idempotents(b)?;
    let j = radical(b);
    let j2 = product_space(b, &j, &j);
    let k = idem.len();
    let sandwich = |i: usize, s: &Subspace, t: usize| {
        Subspace::from_vectors(b.dim(), s.basis().iter().map(|x| b.mul(&b.mul(&idem[i], x), &idem[t])))
    };
    let mut arrows = Vec::new();
    let mut arrow_elements = Vec::new();
    for i in 0..k {
        for t in 0..k {
            let eje = sandwich(i, &j, t);
            let mut span = sandwich(i, &j2, t);
            for v in eje.basis() {
                if !span.contains(v) {
                    span = span.sum(&Subspace::from_vectors(b.dim(), [v.clone()])).expect("same ambient");
                    arrows.push(ArrowDecl { label: format!("x{}", arrows.len() + 1), source: i, target: t });
                    arrow_elements.push(v.clone());
                }
            }
        }
    }

    // path-word basis, layer by layer
    let mut basis: Vec<BasisElement> = (0..k).map(|i| BasisElement { source: i, target: i, word: Vec::new() }).collect();
    let mut elements: Vec<Vec<Scalar>> = idem.clone();
    let mut span = Subspace::from_vectors(b.dim(), elements.clone());
    let mut layer: Vec<usize> = (0..k).collect();
    while !layer.is_empty() {
        let mut cands: Vec<(Vec<usize>, usize, Vec<Scalar>)> = Vec::new();
        for &u in &layer {
            for (x, a) in arrows.iter().enumerate() {
                if a.source == basis[u].target {
                    let mut w = basis[u].word.clone();
                    w.push(x);
                    cands.push((w, basis[u].source, b.mul(&elements[u], &arrow_elements[x])));
                }
            }
        }
        cands.sort_by(|l, r| l.0.cmp(&r.0));
        let mut next = Vec::new();
        for (w, src, el) in cands {
            if span.contains(&el) {
                continue;
            }
            span = span.sum(&Subspace::from_vectors(b.dim(), [el.clone()])).expect("same ambient");
            let tgt = arrows[*w.last().expect("nonempty")].target;
            next.push(basis.len());
            basis.push(BasisElement { source: src, target: tgt, word: w });
            elements.push(el);
        }
        layer = next;
    }
    if basis.len() != b.dim() {
        return Err(split_failure("arrows and idempotents do not generate the algebra"));
    }
    let change = Matrix::from_columns(b.dim(), &elements);
    let inv = change.inverse().expect("path words form a basis");
    let right_action = arrow_elements
        .iter()
        .map(|xe| {
            let cols: Vec<Vec<Scalar>> = elements.iter().map(|el| inv.mul_vec(&b.mul(el, xe))).collect();
            Matrix::from_columns(b.dim(), &cols)
        })
        .collect();
    let vertices = (1..=k).map(|i| i.to_string()).collect();
    let basic = Arc::new(BasicAlgebra::new(vertices, arrows, basis, right_action));
    Ok(FdStructure {
        algebra: b.clone(),
        idempotents: idem,
        radical: j,
        arrow_elements,
        basic,
        change_of_basis: change,
        change_inverse: inv,
    })
}

/// Right module: `m · b_k = action[k] m`.
#[derive(Clone, Debug)]
pub struct FdModule {
    pub alg: Arc<FdAlgebra>,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl FdModule {
    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, r) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                out.add_scaled(c, r);
            }
        }
        out
    }

    /// `R_{xy} = R_y R_x` on basis pairs and the unit acts as the identity.
    pub fn is_valid(&self) -> bool {
        let n = self.alg.dim();
        if self.action.len() != n || self.action.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return false;
        }
        if self.action_of(&self.alg.unit) != Matrix::identity(self.dim) {
            return false;
        }
        (0..n).all(|i| (0..n).all(|j| self.action_of(&self.alg.structure[i][j]) == self.action[j].mul(&self.action[i])))
    }

    /// `B_B` with `y · x = y x`.
    pub fn regular(b: &Arc<FdAlgebra>) -> Self {
        let n = b.dim();
        FdModule { alg: b.clone(), dim: n, action: (0..n).map(|k| b.right_matrix(&unit(n, k))).collect() }
    }

    /// Submodule on an invariant subspace, in its canonical basis.
    pub fn submodule(&self, s: &Subspace) -> Option<FdModule> {
        let d = s.dim();
        let action = self
            .action
            .iter()
            .map(|r| {
                let cols: Option<Vec<Vec<Scalar>>> = s.basis().iter().map(|v| s.coordinates(&r.mul_vec(v))).collect();
                cols.map(|c| Matrix::from_columns(d, &c))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FdModule { alg: self.alg.clone(), dim: d, action })
    }
}

impl FdStructure {
    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    /// Original-coordinate element of a path-word combination.
    pub fn element(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.change_of_basis.mul_vec(coords)
    }

    /// Path-word coordinates of an original-coordinate element.
    pub fn word_coordinates(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.change_inverse.mul_vec(x)
    }

    /// Vertex components `M e_i`, with arrows acting by their elements.
    pub fn to_representation(&self, m: &FdModule) -> Representation {
        let comps: Vec<Subspace> = self.idempotents.iter().map(|e| m.action_of(e).column_space()).collect();
        let dims = comps.iter().map(Subspace::dim).collect();
        let maps = self
            .basic
            .arrows
            .iter()
            .zip(&self.arrow_elements)
            .map(|(a, xe)| {
                let r = m.action_of(xe);
                let cols: Vec<Vec<Scalar>> = comps[a.source]
                    .basis()
                    .iter()
                    .map(|v| comps[a.target].coordinates(&r.mul_vec(v)).expect("arrow maps M e_i into M e_j"))
                    .collect();
                Matrix::from_columns(comps[a.target].dim(), &cols)
            })
            .collect();
        Representation { alg: self.basic.clone(), dims, maps }
    }

    pub fn to_fd_module(&self, r: &Representation) -> FdModule {
        let n = self.algebra.dim();
        let action = (0..n).map(|k| r.action_matrix(&self.change_inverse.column(k))).collect();
        FdModule { alg: self.algebra.clone(), dim: r.total_dim(), action }
    }

    /// `e_i B` as a submodule of the regular module.
    pub fn fd_projective(&self, i: usize) -> FdModule {
        let reg = FdModule::regular(&self.algebra);
        let s = self.algebra.left_matrix(&self.idempotents[i]).column_space();
        reg.submodule(&s).expect("e_i B is a right ideal")
    }

    pub fn fd_simples(&self) -> Vec<FdModule> {
        (0..self.vertex_count()).map(|i| self.to_fd_module(&Representation::simple(&self.basic, i))).collect()
    }

    pub fn fd_hom_dim(&self, m: &FdModule, n: &FdModule) -> usize {
        repmod::hom(&self.to_representation(m), &self.to_representation(n)).expect("same algebra").dim()
    }

    pub fn fd_kernel(&self, f: &ModuleMap, m: &FdModule) -> FdModule {
        self.to_fd_module(&repmod::kernel(f, &self.to_representation(m)).module)
    }

    pub fn fd_cokernel(&self, f: &ModuleMap, n: &FdModule) -> FdModule {
        self.to_fd_module(&repmod::cokernel(f, &self.to_representation(n)).module)
    }

    pub fn fd_top(&self, m: &FdModule) -> FdModule {
        self.to_fd_module(&repmod::top(&self.to_representation(m)).module)
    }

    pub fn fd_projective_cover(&self, m: &FdModule) -> (FdModule, Vec<usize>) {
        let c = repmod::projective_cover(&self.to_representation(m));
        (self.to_fd_module(&c.module), c.summands)
    }

    pub fn fd_iso(&self, m: &FdModule, n: &FdModule) -> bool {
        repmod::iso_test(&self.to_representation(m), &self.to_representation(n))
    }
}

/// `End(p)` with multiplication `x * y = x ∘ y`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: Arc<FdAlgebra>,
    pub complex: TwoTermComplex,
    pub space: ChainHomClass,
    pub basis_maps: Vec<ChainMap>,
}

pub fn end_algebra(p: &TwoTermComplex) -> EndAlgebra {
    let space = hom_homotopy(p, p, 0);
    let basis_maps: Vec<ChainMap> = space.class_basis().iter().map(|v| space.chain_map(v)).collect();
    let class = |f: &ChainMap| {
        let c = space.chain_map_coordinates(f).expect("endomorphism of p");
        space.class_coordinates(&c).expect("chain map")
    };
    let structure = basis_maps
        .iter()
        .map(|x| basis_maps.iter().map(|y| class(&y.then(x))).collect())
        .collect();
    let unit = class(&ChainMap::identity(p));
    let labels = (0..basis_maps.len()).map(|i| format!("b{}", i + 1)).collect();
    EndAlgebra { algebra: Arc::new(FdAlgebra { labels, structure, unit }), complex: p.clone(), space, basis_maps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::frac;
    use crate::fixtures::{EX2_QUIVER, EX3_QUIVER};
    use crate::pathalg::{build_algebra, DEFAULT_LENGTH_CAP};
    use crate::quiverdsl::parse_algebra;

    fn path_algebra(text: &str) -> Arc<BasicAlgebra> {
        build_algebra(&parse_algebra(text).unwrap(), DEFAULT_LENGTH_CAP).unwrap().algebra
    }

    #[test]
    fn matrix_algebra_is_simple_but_not_basic() {
        let m2 = FdAlgebra::matrix_algebra(2);
        assert!(m2.is_associative() && m2.unit_is_identity());
        assert!(radical(&m2).is_zero());
        assert_eq!(semisimple_block_count(&m2), Ok(1));
        assert!(fd_structure(&Arc::new(m2)).is_err());
    }

    #[test]
    fn field_extension_does_not_split() {
        let c = FdAlgebra::truncated_polynomial(&[int(1), int(0)]);
        assert!(radical(&c).is_zero());
        assert!(semisimple_block_count(&c).is_err());
    }

    #[test]
    fn split_semisimple_polynomial_quotient() {
        // x^2 - 3x + 2 = (x - 1)(x - 2)
        let b = FdAlgebra::truncated_polynomial(&[int(2), int(-3)]);
        let idem = primitive_idempotents(&b).unwrap();
        assert_eq!(idem.len(), 2);
        assert_eq!(b.mul(&idem[0], &idem[1]), vec![Scalar::zero(); 2]);
        let f = FdAlgebra::truncated_polynomial(&[frac(-1, 4), int(0)]);
        assert_eq!(primitive_idempotents(&f).unwrap().len(), 2);
    }

    #[test]
    fn truncated_polynomial_radical() {
        let b = FdAlgebra::truncated_polynomial(&[int(0), int(0), int(0)]);
        let j = radical(&b);
        assert_eq!(j.dim(), 2);
        assert_eq!(nilpotency_index(&b, &j), Some(3));
        let s = fd_structure(&Arc::new(b)).unwrap();
        assert_eq!(s.basic.vertex_count(), 1);
        assert_eq!(s.basic.arrows.len(), 1);
    }

    #[test]
    fn product_of_fields_has_no_arrows() {
        let s = fd_structure(&Arc::new(FdAlgebra::product_of_fields(3))).unwrap();
        assert_eq!(s.basic.vertex_count(), 3);
        assert!(s.basic.arrows.is_empty());
    }

    #[test]
    fn path_algebras_round_trip_through_structure_constants() {
        for text in [EX3_QUIVER, EX2_QUIVER] {
            let a = path_algebra(text);
            let b = Arc::new(FdAlgebra::from_basic(&a));
            assert!(b.is_associative() && b.unit_is_identity());
            let j = radical(&b);
            assert_eq!(j.dim(), a.dim() - a.vertex_count());
            let s = fd_structure(&b).unwrap();
            assert_eq!(s.basic.vertex_count(), a.vertex_count());
            assert_eq!(s.basic.arrows.len(), a.arrows.len());
            assert_eq!(s.basic.dim(), a.dim());
            let regular = FdModule::regular(&b);
            let rep = s.to_representation(&regular);
            assert!(rep.is_valid());
            let back = s.to_fd_module(&rep);
            assert!(back.is_valid());
            assert!(s.fd_iso(&back, &regular));
        }
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        let b = FdAlgebra::from_basic(&path_algebra(EX3_QUIVER));
        let idem = primitive_idempotents(&b).unwrap();
        let zero = vec![Scalar::zero(); b.dim()];
        let mut sum = zero.clone();
        for (i, e) in idem.iter().enumerate() {
            assert_eq!(&b.mul(e, e), e);
            for (k, f) in idem.iter().enumerate() {
                if i != k {
                    assert_eq!(b.mul(e, f), zero);
                }
            }
            axpy(&mut sum, &Scalar::one(), e);
        }
        assert_eq!(sum, b.unit);
    }
}
