//! Finite-dimensional right modules over a [`BasicAlgebra`] as quiver representations.
//!
//! An arrow `x: i -> j` acts by a matrix `M_i -> M_j` on column vectors, so a word
//! `x1 ... xk` acts by `M(xk) ... M(x1)`.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactlin::{int, is_zero_vec, unit, Matrix, Scalar, Subspace};
use crate::pathalg::BasicAlgebra;

pub const DEFAULT_ISO_SEED: u64 = 0xA1B2;
const ISO_RANDOM_ATTEMPTS: usize = 32;
const ISO_EXHAUSTIVE_MAX_DIM: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("modules are defined over different algebras")]
    AlgebraMismatch,
    #[error("subspace is not invariant under the arrow actions")]
    NotInvariant,
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub alg: Arc<BasicAlgebra>,
    pub dims: Vec<usize>,
    /// `maps[x]` has shape `dims[target(x)] x dims[source(x)]`.
    pub maps: Vec<Matrix>,
}

/// Per-vertex matrices `M_v -> N_v`; source and target are kept by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

impl Representation {
    pub fn zero(alg: &Arc<BasicAlgebra>) -> Self {
        Representation::from_dims(alg, vec![0; alg.vertex_count()])
    }

    fn from_dims(alg: &Arc<BasicAlgebra>, dims: Vec<usize>) -> Self {
        let maps = alg.arrows.iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        Representation { alg: alg.clone(), dims, maps }
    }

    /// `e_v A`: the component at `j` has basis the paths from `v` to `j`.
    pub fn projective(alg: &Arc<BasicAlgebra>, v: usize) -> Self {
        let comps: Vec<Vec<usize>> = (0..alg.vertex_count()).map(|j| alg.paths_between(v, j)).collect();
        let dims = comps.iter().map(Vec::len).collect();
        let maps = alg
            .arrows
            .iter()
            .enumerate()
            .map(|(x, a)| {
                let (rows, cols) = (&comps[a.target], &comps[a.source]);
                let mut m = Matrix::zeros(rows.len(), cols.len());
                for (r, &gr) in rows.iter().enumerate() {
                    for (c, &gc) in cols.iter().enumerate() {
                        m[(r, c)] = alg.right_action[x][(gr, gc)].clone();
                    }
                }
                m
            })
            .collect();
        Representation { alg: alg.clone(), dims, maps }
    }

    pub fn simple(alg: &Arc<BasicAlgebra>, v: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        Representation::from_dims(alg, dims)
    }

    /// The regular module `A = ⊕ e_v A`.
    pub fn regular(alg: &Arc<BasicAlgebra>) -> Self {
        let parts: Vec<Representation> = (0..alg.vertex_count()).map(|v| Representation::projective(alg, v)).collect();
        direct_sum(&parts).module
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Start of each vertex component in global coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// Matrix of a word of arrows starting at `source`.
    pub fn word_action(&self, source: usize, word: &[usize]) -> Matrix {
        word.iter().fold(Matrix::identity(self.dims[source]), |acc, &x| self.maps[x].mul(&acc))
    }

    /// Right action of an algebra element on global coordinates.
    pub fn action_matrix(&self, element: &[Scalar]) -> Matrix {
        let n = self.total_dim();
        let off = self.offsets();
        let mut out = Matrix::zeros(n, n);
        for (k, c) in element.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = &self.alg.basis[k];
            let w = self.word_action(b.source, &b.word).scale(c);
            for r in 0..w.rows() {
                for s in 0..w.cols() {
                    if !w[(r, s)].is_zero() {
                        out[(off[b.target] + r, off[b.source] + s)] += &w[(r, s)];
                    }
                }
            }
        }
        out
    }

    /// Every path relation of the algebra acts as the corresponding basis combination.
    pub fn is_valid(&self) -> bool {
        let alg = &self.alg;
        if self.dims.len() != alg.vertex_count() || self.maps.len() != alg.arrows.len() {
            return false;
        }
        for (x, a) in alg.arrows.iter().enumerate() {
            if self.maps[x].rows() != self.dims[a.target] || self.maps[x].cols() != self.dims[a.source] {
                return false;
            }
        }
        let n = alg.dim();
        for (k, b) in alg.basis.iter().enumerate() {
            let mb = self.word_action(b.source, &b.word);
            for (x, a) in alg.arrows.iter().enumerate() {
                if a.source != b.target {
                    continue;
                }
                let lhs = self.maps[x].mul(&mb);
                let prod = alg.mul_arrow(&unit(n, k), x);
                let mut rhs = Matrix::zeros(self.dims[a.target], self.dims[b.source]);
                for (l, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        let bl = &alg.basis[l];
                        rhs.add_scaled(c, &self.word_action(bl.source, &bl.word));
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg)
    }
}

impl ModuleMap {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        ModuleMap { blocks: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect() }
    }

    pub fn identity(m: &Representation) -> Self {
        ModuleMap { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&after.blocks).map(|(f, g)| g.mul(f)).collect() }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(f, g)| f.add(g)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(|f| f.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    pub fn unflatten(src_dims: &[usize], tgt_dims: &[usize], v: &[Scalar]) -> ModuleMap {
        let mut pos = 0;
        let blocks = src_dims
            .iter()
            .zip(tgt_dims)
            .map(|(&c, &r)| {
                let rows = (0..r).map(|i| v[pos + i * c..pos + (i + 1) * c].to_vec()).collect();
                pos += r * c;
                Matrix::from_rows(c, rows)
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Commutes with every arrow action.
    pub fn is_natural(&self, m: &Representation, n: &Representation) -> bool {
        m.alg.arrows.iter().enumerate().all(|(x, a)| {
            n.maps[x].mul(&self.blocks[a.source]) == self.blocks[a.target].mul(&m.maps[x])
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && b.is_invertible())
    }

    pub fn global_matrix(&self, m: &Representation, n: &Representation) -> Matrix {
        let mut out = Matrix::zeros(n.total_dim(), m.total_dim());
        let (om, on) = (m.offsets(), n.offsets());
        for (v, b) in self.blocks.iter().enumerate() {
            out.set_block(on[v], om[v], b);
        }
        out
    }
}

/// Hom space with its canonical basis (the echelon basis of the naturality solutions).
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<ModuleMap>,
    space: Subspace,
    src_dims: Vec<usize>,
    tgt_dims: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, f: &ModuleMap) -> Option<Vec<Scalar>> {
        self.space.coordinates(&f.flatten())
    }

    pub fn combine(&self, coords: &[Scalar]) -> ModuleMap {
        ModuleMap::unflatten(&self.src_dims, &self.tgt_dims, &self.space.combine(coords))
    }
}

pub fn hom(m: &Representation, n: &Representation) -> Result<HomSpace, RepError> {
    if !m.same_algebra(n) {
        return Err(RepError::AlgebraMismatch);
    }
    let nv = m.dims.len();
    let mut block_off = vec![0; nv + 1];
    for v in 0..nv {
        block_off[v + 1] = block_off[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = block_off[nv];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (x, a) in m.alg.arrows.iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (mx, nx) = (&m.maps[x], &n.maps[x]);
        // (N(x) f_i - f_j M(x))[r][c] = 0
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..n.dims[i] {
                    if !nx[(r, k)].is_zero() {
                        row[block_off[i] + k * m.dims[i] + c] += &nx[(r, k)];
                    }
                }
                for k in 0..m.dims[j] {
                    if !mx[(k, c)].is_zero() {
                        row[block_off[j] + r * m.dims[j] + k] -= &mx[(k, c)];
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let space = Matrix::from_rows(unknowns, rows).nullspace();
    let basis = space.basis().iter().map(|v| ModuleMap::unflatten(&m.dims, &n.dims, v)).collect();
    Ok(HomSpace { basis, space, src_dims: m.dims.clone(), tgt_dims: n.dims.clone() })
}

/// Submodule or quotient together with its structure map.
#[derive(Clone, Debug)]
pub struct WithMap {
    pub module: Representation,
    pub map: ModuleMap,
}

fn check_invariant(m: &Representation, subs: &[Subspace]) -> Result<(), RepError> {
    for (x, a) in m.alg.arrows.iter().enumerate() {
        for v in subs[a.source].basis() {
            if !subs[a.target].contains(&m.maps[x].mul_vec(v)) {
                return Err(RepError::NotInvariant);
            }
        }
    }
    Ok(())
}

/// Submodule spanned per vertex by `subs`, with its inclusion.
pub fn submodule(m: &Representation, subs: &[Subspace]) -> Result<WithMap, RepError> {
    check_invariant(m, subs)?;
    let dims: Vec<usize> = subs.iter().map(Subspace::dim).collect();
    let maps = m
        .alg
        .arrows
        .iter()
        .enumerate()
        .map(|(x, a)| {
            let cols: Vec<Vec<Scalar>> = subs[a.source]
                .basis()
                .iter()
                .map(|v| subs[a.target].coordinates(&m.maps[x].mul_vec(v)).expect("invariant"))
                .collect();
            Matrix::from_columns(dims[a.target], &cols)
        })
        .collect();
    let blocks = subs.iter().map(Subspace::basis_matrix).collect();
    Ok(WithMap { module: Representation { alg: m.alg.clone(), dims, maps }, map: ModuleMap { blocks } })
}

/// Quotient by the submodule spanned per vertex by `subs`, with its projection.
pub fn quotient(m: &Representation, subs: &[Subspace]) -> Result<WithMap, RepError> {
    check_invariant(m, subs)?;
    let projections: Vec<Matrix> = subs.iter().map(Subspace::quotient_projection).collect();
    let lifts: Vec<Matrix> = subs
        .iter()
        .map(|s| {
            let comp = s.complement_coordinates();
            let cols: Vec<Vec<Scalar>> = comp.iter().map(|&c| unit(s.ambient(), c)).collect();
            Matrix::from_columns(s.ambient(), &cols)
        })
        .collect();
    let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
    let maps = m
        .alg
        .arrows
        .iter()
        .enumerate()
        .map(|(x, a)| projections[a.target].mul(&m.maps[x]).mul(&lifts[a.source]))
        .collect();
    Ok(WithMap { module: Representation { alg: m.alg.clone(), dims, maps }, map: ModuleMap { blocks: projections } })
}

pub fn kernel(f: &ModuleMap, m: &Representation) -> WithMap {
    let subs: Vec<Subspace> = f.blocks.iter().map(Matrix::nullspace).collect();
    submodule(m, &subs).expect("kernel of a module map is a submodule")
}

pub fn image_subspaces(f: &ModuleMap) -> Vec<Subspace> {
    f.blocks.iter().map(Matrix::column_space).collect()
}

pub fn image(f: &ModuleMap, n: &Representation) -> WithMap {
    submodule(n, &image_subspaces(f)).expect("image of a module map is a submodule")
}

pub fn cokernel(f: &ModuleMap, n: &Representation) -> WithMap {
    quotient(n, &image_subspaces(f)).expect("image of a module map is a submodule")
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Representation,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(parts: &[Representation]) -> DirectSum {
    assert!(!parts.is_empty(), "direct sum of an empty family needs an algebra; use Representation::zero");
    let alg = parts[0].alg.clone();
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let mut maps: Vec<Matrix> = alg.arrows.iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    let mut off = vec![0usize; nv];
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for p in parts {
        for (x, a) in alg.arrows.iter().enumerate() {
            maps[x].set_block(off[a.target], off[a.source], &p.maps[x]);
        }
        let mut inj = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut i = Matrix::zeros(dims[v], p.dims[v]);
            i.set_block(off[v], 0, &Matrix::identity(p.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
        }
        injections.push(ModuleMap { blocks: inj });
        projections.push(ModuleMap { blocks: proj });
        for (o, d) in off.iter_mut().zip(&p.dims) {
            *o += d;
        }
    }
    DirectSum { module: Representation { alg, dims, maps }, injections, projections }
}

pub fn radical_subspaces(m: &Representation) -> Vec<Subspace> {
    let nv = m.dims.len();
    let mut gens: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
    for (x, a) in m.alg.arrows.iter().enumerate() {
        for c in 0..m.maps[x].cols() {
            gens[a.target].push(m.maps[x].column(c));
        }
    }
    gens.into_iter().enumerate().map(|(v, g)| Subspace::from_vectors(m.dims[v], g)).collect()
}

/// Sum of the images of all arrow actions.
pub fn radical(m: &Representation) -> WithMap {
    submodule(m, &radical_subspaces(m)).expect("radical is a submodule")
}

pub fn top(m: &Representation) -> WithMap {
    quotient(m, &radical_subspaces(m)).expect("radical is a submodule")
}

pub fn trace_subspaces(g: &Representation, m: &Representation) -> Vec<Subspace> {
    let h = hom(g, m).expect("same algebra");
    let nv = m.dims.len();
    (0..nv)
        .map(|v| {
            let gens = h.basis.iter().flat_map(|f| (0..f.blocks[v].cols()).map(move |c| f.blocks[v].column(c)));
            Subspace::from_vectors(m.dims[v], gens)
        })
        .collect()
}

/// Sum of the images of all homomorphisms `g -> m`.
pub fn trace(g: &Representation, m: &Representation) -> WithMap {
    submodule(m, &trace_subspaces(g, m)).expect("trace is a submodule")
}

/// Map `⊕_c P_{vertices[c]} -> n` sending the generator of summand `c` to `images[c] ∈ n_{vertices[c]}`.
pub fn map_from_projectives(
    source: &Representation,
    vertices: &[usize],
    n: &Representation,
    images: &[Vec<Scalar>],
) -> ModuleMap {
    let alg = &n.alg;
    let nv = alg.vertex_count();
    let mut blocks: Vec<Matrix> = (0..nv).map(|v| Matrix::zeros(n.dims[v], source.dims[v])).collect();
    let mut off = vec![0usize; nv];
    for (&u, img) in vertices.iter().zip(images) {
        for j in 0..nv {
            for (c, &p) in alg.paths_between(u, j).iter().enumerate() {
                let b = &alg.basis[p];
                let col = n.word_action(u, &b.word).mul_vec(img);
                for (r, val) in col.into_iter().enumerate() {
                    blocks[j][(r, off[j] + c)] = val;
                }
            }
            off[j] += alg.paths_between(u, j).len();
        }
    }
    ModuleMap { blocks }
}

/// `⊕ P_v` over the given list of vertices.
pub fn projective_sum(alg: &Arc<BasicAlgebra>, vertices: &[usize]) -> Representation {
    if vertices.is_empty() {
        return Representation::zero(alg);
    }
    let parts: Vec<Representation> = vertices.iter().map(|&v| Representation::projective(alg, v)).collect();
    direct_sum(&parts).module
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: Representation,
    pub map: ModuleMap,
    /// Vertex of each indecomposable summand, in order.
    pub summands: Vec<usize>,
}

/// Minimal projective cover: one `P_v` per basis vector of the top at `v`.
pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let rad = radical_subspaces(m);
    let mut summands = Vec::new();
    let mut images = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for c in r.complement_coordinates() {
            summands.push(v);
            images.push(unit(m.dims[v], c));
        }
    }
    let module = projective_sum(&m.alg, &summands);
    let map = map_from_projectives(&module, &summands, m, &images);
    ProjectiveCover { module, map, summands }
}

/// `m` is projective iff its projective cover (always surjective) has the same dimension.
pub fn is_projective(m: &Representation) -> bool {
    projective_cover(m).module.total_dim() == m.total_dim()
}

pub fn iso_test(m: &Representation, n: &Representation) -> bool {
    find_isomorphism(m, n, DEFAULT_ISO_SEED).is_some()
}

/// Searches the Hom space for an invertible map: seeded random integer combinations
/// with coefficients in `[-3, 3]`, then all `{-1, 0, 1}` combinations when `dim Hom <= 6`.
/// Outside the exhaustive regime a `None` may be a false negative.
pub fn find_isomorphism(m: &Representation, n: &Representation, seed: u64) -> Option<ModuleMap> {
    if !m.same_algebra(n) || m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    let h = hom(m, n).ok()?;
    let d = h.dim();
    if d == 0 {
        return None;
    }
    let attempt = |coeffs: &[Scalar]| {
        let f = h.combine(coeffs);
        f.is_isomorphism().then_some(f)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_RANDOM_ATTEMPTS {
        let coeffs: Vec<Scalar> = (0..d).map(|_| int(rng.gen_range(-3..=3))).collect();
        if let Some(f) = attempt(&coeffs) {
            return Some(f);
        }
    }
    if d <= ISO_EXHAUSTIVE_MAX_DIM {
        let total = 3usize.pow(d as u32);
        for mut code in 0..total {
            let coeffs: Vec<Scalar> = (0..d)
                .map(|_| {
                    let c = (code % 3) as i64 - 1;
                    code /= 3;
                    int(c)
                })
                .collect();
            if let Some(f) = attempt(&coeffs) {
                return Some(f);
            }
        }
    }
    None
}

/// Radical layers `rad^k M / rad^{k+1} M` as dimension vectors.
pub fn radical_layers(m: &Representation) -> Vec<Vec<usize>> {
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        let r = radical(&cur);
        layers.push(cur.dims.iter().zip(&r.module.dims).map(|(a, b)| a - b).collect());
        cur = r.module;
    }
    layers
}
