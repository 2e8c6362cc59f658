//! Finite-dimensional quotients of path algebras.
//!
//! [`BasicAlgebra`] is the shared description of a split basic algebra used by both
//! path algebras and endomorphism algebras: a quiver, a basis of path words and the
//! right action of every arrow on that basis.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{axpy, is_zero_vec, unit, Matrix, Scalar};
use crate::quiverdsl::{AlgebraPresentation, ArrowDecl};

pub const DEFAULT_LENGTH_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("paths of length {cap} survive modulo the relations; the algebra is not finite-dimensional within the cap")]
    NotFiniteDimensional { cap: usize },
    #[error("relation {0} mixes paths of different lengths")]
    NonHomogeneousRelation(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    /// Arrow indices; empty for the idempotent at `source`.
    pub word: Vec<usize>,
}

impl BasisElement {
    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// Split basic algebra given by a quiver and a basis of path words.
#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub basis: Vec<BasisElement>,
    /// Column `j` of `right_action[x]` holds the coordinates of `basis[j] * x`.
    pub right_action: Vec<Matrix>,
    idempotents: Vec<usize>,
}

impl BasicAlgebra {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<ArrowDecl>,
        basis: Vec<BasisElement>,
        right_action: Vec<Matrix>,
    ) -> Self {
        let idempotents = (0..vertices.len())
            .map(|v| {
                basis
                    .iter()
                    .position(|b| b.word.is_empty() && b.source == v)
                    .expect("every vertex has an idempotent basis element")
            })
            .collect();
        BasicAlgebra { vertices, arrows, basis, right_action, idempotents }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn idempotent_index(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    /// Basis indices of `e_u A e_v`, i.e. paths from `u` to `v`.
    pub fn paths_between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == u && self.basis[i].target == v).collect()
    }

    /// `x * arrow` in coordinates.
    pub fn mul_arrow(&self, x: &[Scalar], arrow: usize) -> Vec<Scalar> {
        self.right_action[arrow].mul_vec(x)
    }

    /// `x * w` for a word `w` of arrows.
    pub fn mul_word(&self, x: &[Scalar], word: &[usize]) -> Vec<Scalar> {
        word.iter().fold(x.to_vec(), |acc, &a| self.mul_arrow(&acc, a))
    }

    /// Coordinates of the path `word` starting at `source`.
    pub fn path_element(&self, source: usize, word: &[usize]) -> Vec<Scalar> {
        self.mul_word(&unit(self.dim(), self.idempotents[source]), word)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (j, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = &self.basis[j];
            let mut restricted = vec![Scalar::zero(); self.dim()];
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() && self.basis[i].target == b.source {
                    restricted[i] = xi.clone();
                }
            }
            if is_zero_vec(&restricted) {
                continue;
            }
            axpy(&mut out, c, &self.mul_word(&restricted, &b.word));
        }
        out
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for &i in &self.idempotents {
            v[i] = Scalar::one();
        }
        v
    }

    pub fn word_label(&self, source: usize, word: &[usize]) -> String {
        if word.is_empty() {
            format!("e{}", self.vertices[source])
        } else {
            word.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn basis_label(&self, i: usize) -> String {
        let b = &self.basis[i];
        self.word_label(b.source, &b.word)
    }

    /// Largest degree of a basis word plus one: the least `N` with `J^N = 0`.
    pub fn loewy_bound(&self) -> usize {
        self.basis.iter().map(BasisElement::degree).max().map_or(0, |d| d + 1)
    }

    /// Dense `c[i][j] = basis[i] * basis[j]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.mul(&unit(n, i), &unit(n, j))).collect())
            .collect()
    }
}

/// `A = kQ/I` together with its presentation.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    pub presentation: AlgebraPresentation,
    pub algebra: Arc<BasicAlgebra>,
    pub structure: Vec<Vec<Vec<Scalar>>>,
}

impl PathAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.algebra.vertex_count()
    }

    /// Normal form of a linear combination of paths; an empty path stands for `e_v`.
    pub fn element(&self, v: usize, terms: &[(Scalar, Vec<usize>)]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (c, path) in terms {
            let src = path.first().map_or(v, |&a| self.algebra.arrows[a].source);
            axpy(&mut out, c, &self.algebra.path_element(src, path));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// Least `N` with `J^N = 0`.
    pub nilpotency_degree: usize,
    pub relations_in_j2: bool,
    pub offending_relations: Vec<usize>,
}

pub fn admissibility_report(a: &PathAlgebra) -> AdmissibilityReport {
    let offending: Vec<usize> = a
        .presentation
        .relations
        .iter()
        .enumerate()
        .filter(|(_, r)| r.terms.iter().any(|(_, p)| p.len() < 2))
        .map(|(i, _)| i)
        .collect();
    AdmissibilityReport {
        nilpotency_degree: a.algebra.loewy_bound(),
        relations_in_j2: offending.is_empty(),
        offending_relations: offending,
    }
}

/// Builds a basis of `kQ/I` degree by degree.
///
/// Degree `l` candidates are the chosen degree `l-1` words extended by one arrow, in
/// lexicographic order. The ideal in degree `l` is spanned by the normal forms of
/// `u * r` with `u` a chosen word, `|u| + |r| = l`; a candidate is chosen when it is
/// not in the span of that and the smaller candidates.
pub fn build_algebra(p: &AlgebraPresentation, length_cap: usize) -> Result<PathAlgebra, AlgebraError> {
    for (i, r) in p.relations.iter().enumerate() {
        let len = r.terms[0].1.len();
        if r.terms.iter().any(|(_, path)| path.len() != len) {
            return Err(AlgebraError::NonHomogeneousRelation(i));
        }
    }

    let mut basis: Vec<BasisElement> =
        (0..p.vertices.len()).map(|v| BasisElement { source: v, target: v, word: Vec::new() }).collect();
    // reduction[i][x]: normal form of basis[i] * x as sparse (index, coeff) pairs
    let mut reduction: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); p.arrows.len()]; basis.len()];
    let mut layers: Vec<Vec<usize>> = vec![(0..basis.len()).collect()];

    let normal_form_prefix = |v: &[(usize, Scalar)], word: &[usize], reduction: &Vec<Vec<Vec<(usize, Scalar)>>>| {
        let mut cur: Vec<(usize, Scalar)> = v.to_vec();
        for &a in word {
            let mut next: std::collections::BTreeMap<usize, Scalar> = Default::default();
            for (i, c) in &cur {
                for (j, d) in &reduction[*i][a] {
                    let e = next.entry(*j).or_insert_with(Scalar::zero);
                    *e += c * d;
                }
            }
            cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        cur
    };

    let mut degree = 1;
    loop {
        let prev = layers.last().expect("degree 0 layer").clone();
        if prev.is_empty() {
            break;
        }
        if degree > length_cap {
            return Err(AlgebraError::NotFiniteDimensional { cap: length_cap });
        }
        let mut candidates: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for &b in &prev {
            for (x, arrow) in p.arrows.iter().enumerate() {
                if arrow.source == basis[b].target {
                    let mut w = basis[b].word.clone();
                    w.push(x);
                    candidates.push((b, x, w));
                }
            }
        }
        candidates.sort_by(|l, r| l.2.cmp(&r.2));
        let nc = candidates.len();
        let cand_index = |b: usize, x: usize| candidates.iter().position(|c| c.0 == b && c.1 == x);

        // relation vectors in candidate coordinates
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for r in &p.relations {
            let len = r.terms[0].1.len();
            if len > degree {
                continue;
            }
            let first_arrow = r.terms[0].1[0];
            let src = p.arrows[first_arrow].source;
            for &u in &layers[degree - len] {
                if basis[u].target != src {
                    continue;
                }
                let mut row = vec![Scalar::zero(); nc];
                for (c, path) in &r.terms {
                    let (body, last) = path.split_at(path.len() - 1);
                    let pre = normal_form_prefix(&[(u, Scalar::one())], body, &reduction);
                    for (i, d) in pre {
                        let k = cand_index(i, last[0]).expect("prefix lands in previous layer");
                        row[k] += c * &d;
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }

        // echelon form with the largest candidate as leading entry of each row
        let mut reversed: Vec<Vec<Scalar>> = rows.into_iter().map(|mut r| {
            r.reverse();
            r
        }).collect();
        let pivots_rev = crate::exactlin::rref_in_place(&mut reversed, nc);
        let pivot_set: std::collections::HashSet<usize> = pivots_rev.iter().map(|&c| nc - 1 - c).collect();

        let mut new_layer = Vec::new();
        let mut cand_to_basis = vec![usize::MAX; nc];
        for (k, (b, _, w)) in candidates.iter().enumerate() {
            if !pivot_set.contains(&k) {
                let idx = basis.len();
                let last = *w.last().expect("nonempty");
                basis.push(BasisElement { source: basis[*b].source, target: p.arrows[last].target, word: w.clone() });
                reduction.push(vec![Vec::new(); p.arrows.len()]);
                cand_to_basis[k] = idx;
                new_layer.push(idx);
            }
        }
        for (k, (b, x, _)) in candidates.iter().enumerate() {
            let nf: Vec<(usize, Scalar)> = if pivot_set.contains(&k) {
                let row_pos = pivots_rev.iter().position(|&c| nc - 1 - c == k).expect("pivot row");
                let row = &reversed[row_pos];
                (0..nc)
                    .filter(|&j| j != k && !row[nc - 1 - j].is_zero())
                    .map(|j| (cand_to_basis[j], -row[nc - 1 - j].clone()))
                    .collect()
            } else {
                vec![(cand_to_basis[k], Scalar::one())]
            };
            reduction[*b][*x] = nf;
        }
        layers.push(new_layer);
        degree += 1;
    }

    let n = basis.len();
    let right_action: Vec<Matrix> = (0..p.arrows.len())
        .map(|x| {
            let mut m = Matrix::zeros(n, n);
            for (j, red) in reduction.iter().enumerate() {
                for (i, c) in &red[x] {
                    m[(*i, j)] = c.clone();
                }
            }
            m
        })
        .collect();
    let algebra = Arc::new(BasicAlgebra::new(p.vertices.clone(), p.arrows.clone(), basis, right_action));
    let structure = algebra.structure_constants();
    Ok(PathAlgebra { presentation: p.clone(), algebra, structure })
}
