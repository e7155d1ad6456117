use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::{AlgebraModule, ModuleMap};
use super::{trace_form_radical, IncidenceAlgebra};
use crate::error::{input, resource, Result};
use crate::linalg::{Matrix, Subspace};
use crate::poly::char_poly;
use crate::scalar::Field;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Largest total dimension accepted by [`IncidenceAlgebra::krull_schmidt_decompose`].
pub const MAX_MODULE_DIM: usize = 64;

const RANDOM_TRIES: usize = 6;

/// One isomorphism class of indecomposable summands.
#[derive(Clone)]
pub struct Summand<F> {
    pub module: AlgebraModule<F>,
    pub multiplicity: usize,
    /// `End / rad End` was shown to be one-dimensional.
    pub certified_local: bool,
}

impl<F: Field> std::fmt::Debug for Summand<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Summand")
            .field("module", &self.module)
            .field("multiplicity", &self.multiplicity)
            .field("certified_local", &self.certified_local)
            .finish()
    }
}

/// A basis of `Hom(a, b)` solved from `A_{Y,Z} h_Z = h_Y B_{Y,Z}` on covering pairs.
pub fn hom_space<F: Field>(a: &AlgebraModule<F>, b: &AlgebraModule<F>) -> Vec<ModuleMap<F>> {
    let nv = a.vertices().len();
    let mut offset = vec![0; nv + 1];
    for k in 0..nv {
        offset[k + 1] = offset[k] + a.dims()[k] * b.dims()[k];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |k: usize, i: usize, j: usize| offset[k] + i * b.dims()[k] + j;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (y, z) in a.covering_pairs() {
        let (iy, iz) = (a.vertex_index(y), a.vertex_index(z));
        let (ma, mb) = (a.map(y, z), b.map(y, z));
        for i in 0..a.dims()[iy] {
            for j in 0..b.dims()[iz] {
                let mut row = vec![F::zero(); unknowns];
                for l in 0..a.dims()[iz] {
                    row[var(iz, l, j)] = row[var(iz, l, j)].clone() + ma[(i, l)].clone();
                }
                for l in 0..b.dims()[iy] {
                    row[var(iy, i, l)] = row[var(iy, i, l)].clone() - mb[(l, j)].clone();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let solutions = if rows.is_empty() {
        (0..unknowns)
            .map(|k| {
                let mut v = vec![F::zero(); unknowns];
                v[k] = F::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    solutions
        .into_iter()
        .map(|v| ModuleMap {
            blocks: (0..nv)
                .map(|k| Matrix::from_fn(a.dims()[k], b.dims()[k], |i, j| v[var(k, i, j)].clone()))
                .collect(),
        })
        .collect()
}

/// Coordinates with respect to a fixed basis of flattened maps.
struct Coords<F> {
    pivots: Vec<usize>,
    inverse: Matrix<F>,
}

impl<F: Field> Coords<F> {
    fn new(basis: &[Vec<F>]) -> Self {
        let m = Matrix::from_rows(basis.to_vec());
        let (_, pivots) = m.transpose().rref();
        let square = Matrix::from_fn(basis.len(), basis.len(), |i, j| m[(i, pivots[j])].clone());
        Coords {
            inverse: square.inverse().expect("basis vectors are independent"),
            pivots,
        }
    }

    fn of(&self, v: &[F]) -> Vec<F> {
        let picked: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.inverse.left_apply(&picked)
    }
}

fn combine<F: Field>(maps: &[ModuleMap<F>], coeffs: &[F]) -> ModuleMap<F> {
    let mut acc = maps[0].scale(&coeffs[0]);
    for (m, c) in maps.iter().zip(coeffs).skip(1) {
        acc = acc.add(&m.scale(c));
    }
    acc
}

fn random_coeffs<F: Field>(rng: &mut ChaCha8Rng, k: usize) -> Vec<F> {
    (0..k).map(|_| F::from_i64(rng.gen_range(-4..=4))).collect()
}

fn max_block<F: Field>(m: &AlgebraModule<F>) -> u32 {
    m.dims().iter().copied().max().unwrap_or(0) as u32
}

fn is_nilpotent<F: Field>(phi: &ModuleMap<F>, d: u32) -> bool {
    phi.pow(d.max(1)).is_zero()
}

/// The Fitting decomposition `M = ker ψ^d ⊕ im ψ^d`, if both parts are non-zero.
fn fitting_split<F: Field>(m: &AlgebraModule<F>, psi: &ModuleMap<F>) -> Option<(AlgebraModule<F>, AlgebraModule<F>)> {
    let p = psi.pow(max_block(m).max(1));
    let mut kernel = Vec::new();
    let mut image = Vec::new();
    for b in &p.blocks {
        kernel.push(if b.rows() == 0 { Vec::new() } else { b.left_nullspace() });
        image.push(if b.rows() == 0 {
            Vec::new()
        } else {
            Subspace::span(b.cols(), b.to_rows()).basis().to_vec()
        });
    }
    let k = m.submodule(&kernel)?;
    let i = m.submodule(&image)?;
    (k.total_dim() > 0 && i.total_dim() > 0 && k.total_dim() + i.total_dim() == m.total_dim()).then_some((k, i))
}

/// Random endomorphisms, shifted by each rational eigenvalue of a vertex block.
fn split_by_eigenvalues<F: Field>(
    m: &AlgebraModule<F>,
    end: &[ModuleMap<F>],
    rng: &mut ChaCha8Rng,
) -> Option<(AlgebraModule<F>, AlgebraModule<F>)> {
    let d = max_block(m);
    let id = ModuleMap::identity(m);
    for _ in 0..RANDOM_TRIES {
        let phi = combine(end, &random_coeffs(rng, end.len()));
        let mut eigen: Vec<F> = Vec::new();
        for b in phi.blocks.iter().filter(|b| b.rows() > 0) {
            for r in char_poly(b).rational_roots() {
                if !eigen.contains(&r) {
                    eigen.push(r);
                }
            }
        }
        for lambda in eigen {
            let psi = phi.add(&id.scale(&-lambda));
            if !is_nilpotent(&psi, d) {
                if let Some(s) = fitting_split(m, &psi) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Endomorphisms that push a chosen top vector at `Y` into the radical of
/// `M e_Y`. They are never invertible, and a non-nilpotent one exists
/// whenever `End / rad End` is a product of matrix algebras over `F` other
/// than `F` itself.
fn split_by_top<F: Field>(
    m: &AlgebraModule<F>,
    end: &[ModuleMap<F>],
    rng: &mut ChaCha8Rng,
) -> Option<(AlgebraModule<F>, AlgebraModule<F>)> {
    let d = max_block(m);
    for (k, &y) in m.vertices().iter().enumerate() {
        let dy = m.dims()[k];
        if dy == 0 {
            continue;
        }
        let mut rad = Subspace::zero(dy);
        for (w, z) in m.covering_pairs() {
            if z == y {
                for row in m.map(w, z).to_rows() {
                    rad.insert(row);
                }
            }
        }
        for t in 0..dy {
            let mut top = vec![F::zero(); dy];
            top[t] = F::one();
            if rad.contains(&top) {
                continue;
            }
            let residues: Vec<Vec<F>> = end.iter().map(|phi| rad.reduce(phi.blocks[k].row(t).to_vec())).collect();
            let kernel = Matrix::from_rows(residues).left_nullspace();
            if kernel.is_empty() {
                continue;
            }
            let family: Vec<ModuleMap<F>> = kernel.iter().map(|c| combine(end, c)).collect();
            for _ in 0..RANDOM_TRIES {
                let psi = combine(&family, &random_coeffs(rng, family.len()));
                if !is_nilpotent(&psi, d) {
                    if let Some(s) = fitting_split(m, &psi) {
                        return Some(s);
                    }
                }
            }
        }
    }
    None
}

/// `dim End − dim rad End == 1`, with `rad` from the trace form of the
/// regular representation. Every radical element must also be nilpotent.
fn certify_local<F: Field>(m: &AlgebraModule<F>, end: &[ModuleMap<F>]) -> bool {
    match end.len() {
        0 => return false,
        1 => return true,
        _ => {}
    }
    let flat: Vec<Vec<F>> = end.iter().map(|e| e.flatten()).collect();
    let coords = Coords::new(&flat);
    let k = end.len();
    let regular: Vec<Matrix<F>> = end
        .iter()
        .map(|a| {
            let cols: Vec<Vec<F>> = end.iter().map(|b| coords.of(&a.then(b).flatten())).collect();
            Matrix::from_rows(cols).transpose()
        })
        .collect();
    let rad = trace_form_radical(&regular);
    if k - rad.dim() != 1 {
        return false;
    }
    let d = max_block(m);
    rad.basis().iter().all(|c| is_nilpotent(&combine(end, c), d))
}

fn isomorphic<F: Field>(a: &AlgebraModule<F>, b: &AlgebraModule<F>, rng: &mut ChaCha8Rng) -> bool {
    if a.dims() != b.dims() {
        return false;
    }
    let hom = hom_space(a, b);
    if hom.is_empty() {
        return a.total_dim() == 0;
    }
    (0..RANDOM_TRIES).any(|_| combine(&hom, &random_coeffs(rng, hom.len())).is_invertible())
}

impl IncidenceAlgebra {
    /// Splits `m` into indecomposable summands grouped up to isomorphism,
    /// ordered by descending total dimension and then by dimension vector.
    pub fn krull_schmidt_decompose<F: Field>(&self, m: &AlgebraModule<F>, seed: u64) -> Result<Vec<Summand<F>>> {
        if m.n() != self.n() {
            return input(format!("module over A_{} given to A_{}", m.n(), self.n()));
        }
        if m.total_dim() > MAX_MODULE_DIM {
            return resource(format!(
                "module of total dimension {} exceeds the guard {MAX_MODULE_DIM}",
                m.total_dim()
            ));
        }
        m.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pending = vec![m.clone()];
        let mut done: Vec<(AlgebraModule<F>, bool)> = Vec::new();
        while let Some(x) = pending.pop() {
            if x.total_dim() == 0 {
                continue;
            }
            let end = hom_space(&x, &x);
            if end.len() > 1 {
                let split = split_by_eigenvalues(&x, &end, &mut rng).or_else(|| split_by_top(&x, &end, &mut rng));
                if let Some((a, b)) = split {
                    pending.push(a);
                    pending.push(b);
                    continue;
                }
            }
            let local = certify_local(&x, &end);
            done.push((x, local));
        }
        let mut groups: Vec<Summand<F>> = Vec::new();
        for (x, local) in done {
            match groups.iter_mut().find(|g| isomorphic(&g.module, &x, &mut rng)) {
                Some(g) => {
                    g.multiplicity += 1;
                    g.certified_local &= local;
                }
                None => groups.push(Summand {
                    module: x,
                    multiplicity: 1,
                    certified_local: local,
                }),
            }
        }
        groups.sort_by(|a, b| {
            b.module
                .total_dim()
                .cmp(&a.module.total_dim())
                .then_with(|| a.module.dims().cmp(b.module.dims()))
                .then_with(|| a.multiplicity.cmp(&b.multiplicity))
        });
        Ok(groups)
    }
}
