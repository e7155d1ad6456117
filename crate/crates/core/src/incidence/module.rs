use std::collections::BTreeMap;

use super::IncidenceAlgebra;
use crate::error::{input, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::Subset;

/// A right `𝒜_n`-module given by a vector space `M e_Y` at every vertex and
/// the action of every `e_{Y,Z}`: a row vector `m ∈ M e_Y` goes to
/// `m · A_{Y,Z} ∈ M e_Z`.
#[derive(Clone, PartialEq)]
pub struct AlgebraModule<F> {
    n: usize,
    vertices: Vec<Subset>,
    dims: Vec<usize>,
    maps: BTreeMap<(Subset, Subset), Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for AlgebraModule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraModule(n={}, dims={:?})", self.n, self.dim_vector())
    }
}

/// A module homomorphism as one matrix per vertex (row-vector convention).
#[derive(Clone, PartialEq)]
pub struct ModuleMap<F> {
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for ModuleMap<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

impl<F: Field> ModuleMap<F> {
    pub fn identity(m: &AlgebraModule<F>) -> Self {
        ModuleMap {
            blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &ModuleMap<F>) -> Self {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap<F>) -> Self {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        ModuleMap {
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn pow(&self, e: u32) -> Self {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.pow(e)).collect(),
        }
    }

    /// Entries of every block, concatenated row-major.
    pub fn flatten(&self) -> Vec<F> {
        self.blocks.iter().flat_map(|b| b.to_rows().into_iter().flatten()).collect()
    }
}

fn chain_between(y: Subset, z: Subset) -> Vec<Subset> {
    let mut out = vec![y];
    let mut cur = y;
    for i in z.difference(y).iter0() {
        cur = cur.with0(i);
        out.push(cur);
    }
    out
}

impl<F: Field> AlgebraModule<F> {
    /// Builds and validates a module. Missing covering maps are zero; a
    /// missing longer map is the composite along a maximal chain.
    pub fn new(
        n: usize,
        dims: &BTreeMap<Subset, usize>,
        given: &BTreeMap<(Subset, Subset), Matrix<F>>,
    ) -> Result<Self> {
        let full = Subset::full(n);
        let vertices = full.subsets();
        for y in dims.keys() {
            if !y.is_subset(full) {
                return input(format!("vertex {y} is not a subset of [1..{n}]"));
            }
        }
        let dim_of = |y: &Subset| dims.get(y).copied().unwrap_or(0);
        for (&(y, z), m) in given {
            if !y.is_subset(z) || !z.is_subset(full) {
                return input(format!("no basis element e_({y},{z}) in the algebra"));
            }
            if m.rows() != dim_of(&y) || m.cols() != dim_of(&z) {
                return input(format!(
                    "map {y}->{z} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim_of(&y),
                    dim_of(&z)
                ));
            }
            if y == z && *m != Matrix::identity(dim_of(&y)) {
                return input(format!("e_({y},{y}) must act as the identity"));
            }
        }
        let mut maps = BTreeMap::new();
        for &y in &vertices {
            for &z in vertices.iter().filter(|z| y.is_subset(**z)) {
                let m = if let Some(m) = given.get(&(y, z)) {
                    m.clone()
                } else if y == z {
                    Matrix::identity(dim_of(&y))
                } else if z.len() == y.len() + 1 {
                    Matrix::zeros(dim_of(&y), dim_of(&z))
                } else {
                    let chain = chain_between(y, z);
                    let mut acc = Matrix::identity(dim_of(&y));
                    for w in chain.windows(2) {
                        let step = given
                            .get(&(w[0], w[1]))
                            .cloned()
                            .unwrap_or_else(|| Matrix::zeros(dim_of(&w[0]), dim_of(&w[1])));
                        acc = acc.mul(&step);
                    }
                    acc
                };
                maps.insert((y, z), m);
            }
        }
        let module = AlgebraModule {
            n,
            dims: vertices.iter().map(dim_of).collect(),
            vertices,
            maps,
        };
        module.validate()?;
        Ok(module)
    }

    /// Checks `A_{Y,Z} A_{Z,W} = A_{Y,W}` for every chain `Y ⊆ Z ⊆ W`.
    pub fn validate(&self) -> Result<()> {
        for (&(y, z), a) in &self.maps {
            for (&(z2, w), b) in self.maps.range((z, Subset::EMPTY)..) {
                if z2 != z {
                    break;
                }
                if a.mul(b) != self.maps[&(y, w)] {
                    return input(format!("action is not associative: e_({y},{z}) e_({z},{w}) != e_({y},{w})"));
                }
            }
        }
        Ok(())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, &BTreeMap::new(), &BTreeMap::new()).expect("zero module is valid")
    }

    /// The thin module with a one-dimensional space at every `X` with
    /// `lo ⊆ X ⊆ hi` and identity maps between them.
    pub fn interval(n: usize, lo: Subset, hi: Subset) -> Result<Self> {
        if !lo.is_subset(hi) || !hi.is_subset(Subset::full(n)) {
            return input(format!("[{lo}, {hi}] is not an interval of subsets of [1..{n}]"));
        }
        let support: Vec<Subset> = hi.subsets().into_iter().filter(|x| lo.is_subset(*x)).collect();
        let dims = support.iter().map(|&x| (x, 1)).collect();
        let mut maps = BTreeMap::new();
        for &x in &support {
            for &y in support.iter().filter(|y| x.is_subset(**y)) {
                maps.insert((x, y), Matrix::identity(1));
            }
        }
        Self::new(n, &dims, &maps)
    }

    /// The indecomposable projective `P(Y) = e_Y A`.
    pub fn projective(n: usize, y: Subset) -> Result<Self> {
        Self::interval(n, y, Subset::full(n))
    }

    /// The indecomposable injective `I(Z)`.
    pub fn injective(n: usize, z: Subset) -> Result<Self> {
        Self::interval(n, Subset::EMPTY, z)
    }

    /// `A` as a right module over itself: `A e_Z` has basis `e_{X,Z}`, `X ⊆ Z`.
    pub fn regular(alg: &IncidenceAlgebra) -> Self {
        let n = alg.n();
        let mut comp: BTreeMap<Subset, Vec<usize>> = BTreeMap::new();
        for (k, &(_, z)) in alg.basis().iter().enumerate() {
            comp.entry(z).or_default().push(k);
        }
        let dims = comp.iter().map(|(&z, v)| (z, v.len())).collect();
        let mut maps = BTreeMap::new();
        for (&z, src) in &comp {
            for (&w, dst) in comp.iter().filter(|(w, _)| z.is_subset(**w)) {
                let act = alg.basis_index(z, w).expect("z is a subset of w");
                let mut m = Matrix::zeros(src.len(), dst.len());
                for (r, &b) in src.iter().enumerate() {
                    if let Some(img) = alg.mul_basis(b, act) {
                        let c = dst.iter().position(|&d| d == img).expect("image lies in A e_W");
                        m[(r, c)] = F::one();
                    }
                }
                maps.insert((z, w), m);
            }
        }
        Self::new(n, &dims, &maps).expect("regular module is valid")
    }

    pub fn direct_sum(parts: &[&AlgebraModule<F>]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return input("direct sum of no modules");
        };
        let n = first.n;
        if parts.iter().any(|p| p.n != n) {
            return input("direct sum of modules over different algebras");
        }
        let mut dims = BTreeMap::new();
        for (i, &v) in first.vertices.iter().enumerate() {
            dims.insert(v, parts.iter().map(|p| p.dims[i]).sum());
        }
        let mut maps = BTreeMap::new();
        for &(y, z) in first.maps.keys() {
            let mut m = Matrix::zeros(dims[&y], dims[&z]);
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                let b = &p.maps[&(y, z)];
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                    }
                }
                r0 += b.rows();
                c0 += b.cols();
            }
            maps.insert((y, z), m);
        }
        Self::new(n, &dims, &maps)
    }

    /// The isomorphic module with maps `g_Y A_{Y,Z} g_Z⁻¹`.
    pub fn base_change(&self, g: &[Matrix<F>]) -> Result<Self> {
        if g.len() != self.vertices.len() {
            return input("one change-of-basis matrix per vertex is required");
        }
        let mut inv = Vec::new();
        for (k, gk) in g.iter().enumerate() {
            match gk.inverse() {
                Some(i) if gk.rows() == self.dims[k] => inv.push(i),
                _ => return input(format!("change of basis at {} is not invertible", self.vertices[k])),
            }
        }
        let mut maps = BTreeMap::new();
        for (&(y, z), a) in &self.maps {
            let (iy, iz) = (self.vertex_index(y), self.vertex_index(z));
            maps.insert((y, z), g[iy].mul(a).mul(&inv[iz]));
        }
        Self::new(self.n, &self.dim_vector(), &maps)
    }

    /// The submodule spanned by the given rows at each vertex, re-expressed
    /// in those bases. Returns `None` if the spans are not closed under the action.
    pub fn submodule(&self, bases: &[Vec<Vec<F>>]) -> Option<Self> {
        let mats: Vec<Option<Matrix<F>>> = bases
            .iter()
            .map(|b| (!b.is_empty()).then(|| Matrix::from_rows(b.clone())))
            .collect();
        let mut dims = BTreeMap::new();
        for (k, &v) in self.vertices.iter().enumerate() {
            dims.insert(v, bases[k].len());
        }
        let mut maps = BTreeMap::new();
        for (&(y, z), a) in &self.maps {
            let (iy, iz) = (self.vertex_index(y), self.vertex_index(z));
            let mut m = Matrix::zeros(bases[iy].len(), bases[iz].len());
            for (r, row) in bases[iy].iter().enumerate() {
                let img = a.left_apply(row);
                let coords = match &mats[iz] {
                    Some(bz) => bz.solve_left(&img)?,
                    None if img.iter().all(|x| x.is_zero()) => Vec::new(),
                    None => return None,
                };
                for (c, x) in coords.into_iter().enumerate() {
                    m[(r, c)] = x;
                }
            }
            maps.insert((y, z), m);
        }
        Self::new(self.n, &dims, &maps).ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    pub fn vertex_index(&self, y: Subset) -> usize {
        self.vertices.iter().position(|&v| v == y).expect("vertex of the lattice")
    }

    /// Dimension at each vertex, in vertex order.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, y: Subset) -> usize {
        self.dims[self.vertex_index(y)]
    }

    /// Non-zero dimensions only.
    pub fn dim_vector(&self) -> BTreeMap<Subset, usize> {
        self.vertices
            .iter()
            .zip(&self.dims)
            .filter(|(_, &d)| d > 0)
            .map(|(&v, &d)| (v, d))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, y: Subset, z: Subset) -> &Matrix<F> {
        &self.maps[&(y, z)]
    }

    pub fn maps(&self) -> &BTreeMap<(Subset, Subset), Matrix<F>> {
        &self.maps
    }

    /// Pairs `Y ⊂ Z` with `|Z| = |Y| + 1`.
    pub fn covering_pairs(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.maps.keys().copied().filter(|(y, z)| z.len() == y.len() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn set(idx: &[usize]) -> Subset {
        Subset::from_indices(idx.iter().copied()).unwrap()
    }

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn regular_module_of_a1() {
        let a = IncidenceAlgebra::new(1).unwrap();
        let m = AlgebraModule::<Q>::regular(&a);
        assert_eq!(m.total_dim(), 2 + 1);
        assert_eq!(m.dim_at(Subset::EMPTY), 1);
        assert_eq!(m.dim_at(set(&[1])), 2);
    }

    #[test]
    fn composition_is_checked() {
        let n = 2;
        let dims: BTreeMap<Subset, usize> = Subset::full(2).subsets().into_iter().map(|s| (s, 1)).collect();
        let mut maps = BTreeMap::new();
        maps.insert((Subset::EMPTY, set(&[1])), Matrix::from_rows(vec![vec![q(1)]]));
        maps.insert((set(&[1]), set(&[1, 2])), Matrix::from_rows(vec![vec![q(1)]]));
        maps.insert((Subset::EMPTY, set(&[2])), Matrix::from_rows(vec![vec![q(1)]]));
        maps.insert((set(&[2]), set(&[1, 2])), Matrix::from_rows(vec![vec![q(2)]]));
        assert!(AlgebraModule::new(n, &dims, &maps).is_err());
        maps.insert((set(&[2]), set(&[1, 2])), Matrix::from_rows(vec![vec![q(1)]]));
        let m = AlgebraModule::new(n, &dims, &maps).unwrap();
        assert_eq!(*m.map(Subset::EMPTY, set(&[1, 2])), Matrix::from_rows(vec![vec![q(1)]]));
    }

    #[test]
    fn shapes_are_checked() {
        let dims: BTreeMap<Subset, usize> = [(Subset::EMPTY, 1), (set(&[1]), 1)].into_iter().collect();
        let mut maps = BTreeMap::new();
        maps.insert((Subset::EMPTY, set(&[1])), Matrix::<Q>::zeros(2, 1));
        assert!(AlgebraModule::new(1, &dims, &maps).is_err());
    }

    #[test]
    fn sums_and_base_change() {
        let p = AlgebraModule::<Q>::projective(2, Subset::EMPTY).unwrap();
        let i = AlgebraModule::<Q>::injective(2, set(&[1, 2])).unwrap();
        assert_eq!(p, i);
        let s = AlgebraModule::direct_sum(&[&p, &p]).unwrap();
        assert_eq!(s.total_dim(), 8);
        let g: Vec<Matrix<Q>> = s
            .dims()
            .iter()
            .map(|&d| Matrix::from_fn(d, d, |r, c| if c >= r { q(1 + (r + c) as i64) } else { q(0) }))
            .collect();
        let t = s.base_change(&g).unwrap();
        assert_eq!(t.dim_vector(), s.dim_vector());
        assert!(t.validate().is_ok());
    }
}
