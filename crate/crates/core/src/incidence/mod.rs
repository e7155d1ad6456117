//! The incidence algebra `𝒜_n` of the Boolean lattice of subsets of
//! `{1..n}`, its modules, and their Krull–Schmidt decomposition.

mod heredity;
mod krull_schmidt;
mod module;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{resource, Result};
use crate::linalg::{Matrix, Subspace};
use crate::rootsystem::Guard;
use crate::scalar::Field;
use crate::Subset;

pub use heredity::{HeredityLayer, HeredityReport};
pub use krull_schmidt::{hom_space, Summand, DEFAULT_SEED, MAX_MODULE_DIM};
pub use module::{AlgebraModule, ModuleMap};

/// Default ceiling on `n`.
pub const MAX_N: usize = 6;

/// `𝒜_n` with basis the matrix units `e_{Y,Z}`, `Y ⊆ Z`.
#[derive(Debug, Clone)]
pub struct IncidenceAlgebra {
    n: usize,
    vertices: Vec<Subset>,
    basis: Vec<(Subset, Subset)>,
    index: HashMap<(Subset, Subset), usize>,
}

/// `dim P(Y)`, `dim I(Y)` and their composition lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDims {
    pub vertex: Subset,
    pub projective_dim: usize,
    pub injective_dim: usize,
    pub projective_length: usize,
    pub injective_length: usize,
    /// Largest multiplicity of a simple in either module.
    pub max_multiplicity: usize,
}

impl IncidenceAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        Self::new_with(n, Guard::default())
    }

    pub fn new_with(n: usize, guard: Guard) -> Result<Self> {
        if n > MAX_N && !guard.allow_large {
            return resource(format!("n = {n} exceeds the guard n <= {MAX_N}"));
        }
        if n > 12 {
            return resource(format!("n = {n}: 3^n basis elements is infeasible"));
        }
        let vertices = Subset::full(n).subsets();
        let mut basis: Vec<(Subset, Subset)> = vertices
            .iter()
            .flat_map(|&y| vertices.iter().filter(move |z| y.is_subset(**z)).map(move |&z| (y, z)))
            .collect();
        basis.sort();
        let index = basis.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Ok(IncidenceAlgebra {
            n,
            vertices,
            basis,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Subsets of `{1..n}` in graded order.
    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    /// Basis pairs ordered by `(|Y|, lex Y, |Z|, lex Z)`.
    pub fn basis(&self) -> &[(Subset, Subset)] {
        &self.basis
    }

    pub fn basis_index(&self, y: Subset, z: Subset) -> Option<usize> {
        self.index.get(&(y, z)).copied()
    }

    /// `e_i · e_j` as a basis index, or `None` for zero.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        let (y, z) = self.basis[i];
        let (z2, w) = self.basis[j];
        (z == z2).then(|| self.index[&(y, w)])
    }

    pub fn basis_vector<F: Field>(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    /// `e_{Y,Y}`.
    pub fn idempotent<F: Field>(&self, y: Subset) -> Vec<F> {
        self.basis_vector(self.index[&(y, y)])
    }

    pub fn unit<F: Field>(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        for &y in &self.vertices {
            v[self.index[&(y, y)]] = F::one();
        }
        v
    }

    /// Product of two elements given by coordinates.
    pub fn mul<F: Field>(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(k) = self.mul_basis(i, j) {
                    out[k] = out[k].clone() + x.clone() * y.clone();
                }
            }
        }
        out
    }

    /// Indices of the strict units `e_{Y,Z}`, `Y ⊊ Z`.
    pub fn strict_units(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].0 != self.basis[k].1).collect()
    }

    /// `rad^1, rad^2, …` as sets of basis indices, ending with the first
    /// empty power. Each power is the span of products of basis elements,
    /// which are again basis elements.
    pub fn radical_powers(&self) -> Vec<BTreeSet<usize>> {
        let rad: BTreeSet<usize> = self.strict_units().into_iter().collect();
        let mut out = vec![rad.clone()];
        while !out.last().expect("non-empty").is_empty() {
            let prev = out.last().expect("non-empty");
            let next: BTreeSet<usize> = prev
                .iter()
                .flat_map(|&a| rad.iter().filter_map(move |&b| self.mul_basis(a, b)))
                .collect();
            out.push(next);
        }
        out
    }

    /// `dim rad^k` for `k = 1, 2, …` up to and including the first zero.
    pub fn radical_series(&self) -> Vec<usize> {
        self.radical_powers().iter().map(|p| p.len()).collect()
    }

    /// The left regular representation `x ↦ e_i x`, one matrix per basis element
    /// (acting on column coordinate vectors).
    pub fn regular_matrices<F: Field>(&self) -> Vec<Matrix<F>> {
        (0..self.dim())
            .map(|i| {
                let mut m = Matrix::zeros(self.dim(), self.dim());
                for j in 0..self.dim() {
                    if let Some(k) = self.mul_basis(i, j) {
                        m[(k, j)] = F::one();
                    }
                }
                m
            })
            .collect()
    }

    /// The radical as the null space of the trace form of the regular
    /// representation (valid in characteristic zero).
    pub fn trace_form_radical<F: Field>(&self) -> Subspace<F> {
        trace_form_radical(&self.regular_matrices())
    }

    /// `cartan[Y][Z] = dim e_Y A e_Z`, indexed by [`IncidenceAlgebra::vertices`].
    pub fn cartan(&self) -> Vec<Vec<u64>> {
        self.vertices
            .iter()
            .map(|&y| {
                let ey = self.index[&(y, y)];
                self.vertices
                    .iter()
                    .map(|&z| {
                        let ez = self.index[&(z, z)];
                        let hits: BTreeSet<usize> = (0..self.dim())
                            .filter_map(|b| self.mul_basis(ey, b).and_then(|x| self.mul_basis(x, ez)))
                            .collect();
                        hits.len() as u64
                    })
                    .collect()
            })
            .collect()
    }

    pub fn cartan_determinant<F: Field>(&self) -> F {
        let c = self.cartan();
        Matrix::from_fn(c.len(), c.len(), |i, j| F::from_i64(c[i][j] as i64)).determinant()
    }

    /// Non-zero entries of `dim e_Y (rad/rad²) e_Z`: the arrows of the quiver.
    pub fn ext1(&self) -> BTreeMap<(Subset, Subset), u64> {
        let powers = self.radical_powers();
        let rad = &powers[0];
        let rad2 = powers.get(1).cloned().unwrap_or_default();
        let mut out = BTreeMap::new();
        for &k in rad.difference(&rad2) {
            *out.entry(self.basis[k]).or_insert(0) += 1;
        }
        out
    }

    /// Projective `P(Y) = e_Y A` and injective `I(Y) = D(A e_Y)` data.
    pub fn projective_injective_dims(&self) -> Vec<VertexDims> {
        let c = self.cartan();
        let v = self.vertices.len();
        (0..v)
            .map(|y| {
                let row: Vec<u64> = c[y].clone();
                let col: Vec<u64> = (0..v).map(|x| c[x][y]).collect();
                let ey = self.index[&(self.vertices[y], self.vertices[y])];
                let pdim = (0..self.dim()).filter(|&b| self.mul_basis(ey, b).is_some()).count();
                let idim = (0..self.dim()).filter(|&b| self.mul_basis(b, ey).is_some()).count();
                VertexDims {
                    vertex: self.vertices[y],
                    projective_dim: pdim,
                    injective_dim: idim,
                    projective_length: row.iter().sum::<u64>() as usize,
                    injective_length: col.iter().sum::<u64>() as usize,
                    max_multiplicity: row.iter().chain(&col).copied().max().unwrap_or(0) as usize,
                }
            })
            .collect()
    }
}

/// `{a : tr(L_a L_b) = 0 for all b}` for a family of matrices `L_i`
/// representing a basis of an algebra; coordinates are in that basis.
pub fn trace_form_radical<F: Field>(mats: &[Matrix<F>]) -> Subspace<F> {
    let k = mats.len();
    let gram = Matrix::from_fn(k, k, |i, j| mats[i].trace_of_product(&mats[j]));
    Subspace::span(k, gram.nullspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn set(idx: &[usize]) -> Subset {
        Subset::from_indices(idx.iter().copied()).unwrap()
    }

    #[test]
    fn dimensions() {
        for n in 0..=4 {
            assert_eq!(IncidenceAlgebra::new(n).unwrap().dim(), 3usize.pow(n as u32));
        }
        assert!(IncidenceAlgebra::new(7).is_err());
    }

    #[test]
    fn matrix_unit_products() {
        let a = IncidenceAlgebra::new(2).unwrap();
        let i = a.basis_index(Subset::EMPTY, set(&[1])).unwrap();
        let j = a.basis_index(set(&[1]), set(&[1, 2])).unwrap();
        assert_eq!(a.mul_basis(i, j), a.basis_index(Subset::EMPTY, set(&[1, 2])));
        assert_eq!(a.mul_basis(j, i), None);
        let u: Vec<Q> = a.unit();
        let x: Vec<Q> = a.basis_vector(i);
        assert_eq!(a.mul(&u, &x), x);
        assert_eq!(a.mul(&x, &u), x);
    }

    #[test]
    fn radical_series() {
        assert_eq!(IncidenceAlgebra::new(0).unwrap().radical_series(), vec![0]);
        assert_eq!(IncidenceAlgebra::new(1).unwrap().radical_series(), vec![1, 0]);
        assert_eq!(IncidenceAlgebra::new(2).unwrap().radical_series(), vec![5, 1, 0]);
    }

    #[test]
    fn trace_form_agrees_with_strict_units() {
        for n in 0..=2 {
            let a = IncidenceAlgebra::new(n).unwrap();
            let r: Subspace<Q> = a.trace_form_radical();
            let strict = Subspace::span(a.dim(), a.strict_units().into_iter().map(|k| a.basis_vector(k)));
            assert!(r.same_as(&strict));
        }
    }

    #[test]
    fn cartan_and_arrows() {
        let a = IncidenceAlgebra::new(1).unwrap();
        assert_eq!(a.cartan(), vec![vec![1, 1], vec![0, 1]]);
        let a2 = IncidenceAlgebra::new(2).unwrap();
        let arrows: Vec<(Subset, Subset)> = a2.ext1().into_keys().collect();
        assert_eq!(
            arrows,
            vec![
                (Subset::EMPTY, set(&[1])),
                (Subset::EMPTY, set(&[2])),
                (set(&[1]), set(&[1, 2])),
                (set(&[2]), set(&[1, 2])),
            ]
        );
        assert_eq!(IncidenceAlgebra::new(3).unwrap().ext1().len(), 12);
        assert_eq!(a2.cartan_determinant::<Q>(), Q::from_i64(1));
    }

    #[test]
    fn projective_and_injective_sizes() {
        let a = IncidenceAlgebra::new(2).unwrap();
        let t = a.projective_injective_dims();
        assert_eq!(t[0].projective_dim, 4);
        assert_eq!(t[3].injective_dim, 4);
        assert!(t.iter().all(|d| d.max_multiplicity == 1));
    }
}
