use super::IncidenceAlgebra;
use crate::linalg::Subspace;
use crate::scalar::Field;
use crate::Subset;

/// One step `J_{k-1} ⊂ J_k` of the heredity chain, checked in `A / J_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeredityLayer {
    /// Cardinality of the subsets whose idempotents are added at this step.
    pub level: usize,
    /// `dim J_k`.
    pub ideal_dim: usize,
    /// `dim J_k / J_{k-1}`.
    pub layer_dim: usize,
    /// `J² = J`.
    pub idempotent: bool,
    /// `J · rad · J = 0`.
    pub radical_annihilated: bool,
    /// `ε A' ε` is a product of copies of the field.
    pub semisimple_corner: bool,
    /// `Σ_Y dim(A' e_Y) · dim(e_Y A')`.
    pub tensor_dim: usize,
    /// The multiplication map onto `J` is onto and `tensor_dim = layer_dim`.
    pub tensor_exact: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeredityReport {
    pub n: usize,
    pub layers: Vec<HeredityLayer>,
}

impl HeredityReport {
    pub fn passed(&self) -> bool {
        self.layers.iter().all(|l| l.pass)
    }
}

fn extend<F: Field>(base: &Subspace<F>, vectors: impl IntoIterator<Item = Vec<F>>) -> Subspace<F> {
    let mut s = base.clone();
    for v in vectors {
        if v.iter().any(|x| !x.is_zero()) {
            s.insert(v);
        }
    }
    s
}

fn nonzero<F: Field>(v: &[F]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

impl IncidenceAlgebra {
    /// Peels the vertex idempotents by descending cardinality and checks the
    /// heredity-ideal axioms for each layer.
    pub fn heredity_chain_check<F: Field>(&self) -> HeredityReport {
        let n = self.n();
        let dim = self.dim();
        let basis: Vec<Vec<F>> = (0..dim).map(|i| self.basis_vector(i)).collect();
        let rad: Vec<Vec<F>> = self.strict_units().into_iter().map(|i| self.basis_vector(i)).collect();
        let mut q = Subspace::<F>::zero(dim);
        let mut eps = vec![F::zero(); dim];
        let mut layers = Vec::new();
        for level in (0..=n).rev() {
            let peeled: Vec<Subset> = self.vertices().iter().copied().filter(|y| y.len() == level).collect();
            for &y in &peeled {
                eps = eps.iter().zip(self.idempotent::<F>(y)).map(|(a, b)| a.clone() + b).collect();
            }
            let j = extend(
                &q,
                basis.iter().flat_map(|a| {
                    let ae = self.mul(a, &eps);
                    basis.iter().map(move |b| self.mul(&ae, b)).collect::<Vec<_>>()
                }),
            );
            let jb: Vec<Vec<F>> = j.basis().to_vec();

            let squares = extend(&q, jb.iter().flat_map(|x| jb.iter().map(|y| self.mul(x, y))));
            let idempotent = squares.same_as(&j);

            let jr: Vec<Vec<F>> = {
                let s = Subspace::span(dim, jb.iter().flat_map(|x| rad.iter().map(|r| self.mul(x, r))).filter(|v| nonzero(v)));
                s.basis().to_vec()
            };
            let radical_annihilated = jr.iter().all(|x| jb.iter().all(|y| q.contains(&self.mul(x, y))));

            let local: Vec<Vec<F>> = peeled.iter().map(|&y| self.idempotent::<F>(y)).collect();
            let eps_local: Vec<F> = local.iter().fold(vec![F::zero(); dim], |acc, e| {
                acc.iter().zip(e).map(|(a, b)| a.clone() + b.clone()).collect()
            });
            let corner = extend(
                &q,
                basis.iter().map(|b| self.mul(&self.mul(&eps_local, b), &eps_local)),
            );
            let idems = extend(&q, local.iter().cloned());
            let orthogonal = local.iter().enumerate().all(|(i, a)| {
                local.iter().enumerate().all(|(k, b)| {
                    let p = self.mul(a, b);
                    let target = if i == k { a.clone() } else { vec![F::zero(); dim] };
                    let diff: Vec<F> = p.iter().zip(&target).map(|(x, y)| x.clone() - y.clone()).collect();
                    q.contains(&diff)
                })
            });
            let semisimple_corner = corner.dim() - q.dim() == peeled.len()
                && idems.dim() - q.dim() == peeled.len()
                && orthogonal;

            let mut tensor_dim = 0;
            let mut images = q.clone();
            for e in &local {
                let left: Vec<Vec<F>> = basis.iter().map(|b| self.mul(b, e)).filter(|v| nonzero(v)).collect();
                let right: Vec<Vec<F>> = basis.iter().map(|b| self.mul(e, b)).filter(|v| nonzero(v)).collect();
                let dl = extend(&q, left.iter().cloned()).dim() - q.dim();
                let dr = extend(&q, right.iter().cloned()).dim() - q.dim();
                tensor_dim += dl * dr;
                for x in &left {
                    for y in &right {
                        let p = self.mul(x, y);
                        if nonzero(&p) {
                            images.insert(p);
                        }
                    }
                }
            }
            let layer_dim = j.dim() - q.dim();
            let tensor_exact = tensor_dim == layer_dim && images.same_as(&j);

            layers.push(HeredityLayer {
                level,
                ideal_dim: j.dim(),
                layer_dim,
                idempotent,
                radical_annihilated,
                semisimple_corner,
                tensor_dim,
                tensor_exact,
                pass: idempotent && radical_annihilated && semisimple_corner && tensor_exact,
            });
            q = j;
        }
        if n == 0 {
            layers.clear();
        }
        HeredityReport { n, layers }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn small_chains_pass() {
        let r0 = IncidenceAlgebra::new(0).unwrap().heredity_chain_check::<Rational64>();
        assert!(r0.layers.is_empty() && r0.passed());
        let r1 = IncidenceAlgebra::new(1).unwrap().heredity_chain_check::<Rational64>();
        assert_eq!(r1.layers.len(), 2);
        assert_eq!(r1.layers[0].ideal_dim, 2);
        assert!(r1.passed());
        let r2 = IncidenceAlgebra::new(2).unwrap().heredity_chain_check::<Rational64>();
        assert_eq!(r2.layers.iter().map(|l| l.level).collect::<Vec<_>>(), vec![2, 1, 0]);
        assert!(r2.passed(), "{r2:?}");
    }
}
