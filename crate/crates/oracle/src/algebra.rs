use kleppner_core::cocycle::Cocycle;
use kleppner_core::group::{Group, GroupElement};
use nalgebra::{DMatrix, DVector};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::{null_space, C64};
use crate::{OracleError, Result};

/// Largest group order the oracle accepts.
pub const MAX_ORDER: usize = 256;

/// Numeric stand-in for a formal θ: the fractional part of the golden ratio.
pub const DEFAULT_THETA: f64 = 0.618_033_988_749_894_8;

/// A matrix with one nonzero entry per column: column `j` is
/// `phase[j] · δ_{perm[j]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phase: Vec<C64>,
}

impl Monomial {
    pub fn identity(n: usize) -> Monomial {
        Monomial {
            perm: (0..n).collect(),
            phase: vec![C64::new(1.0, 0.0); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let phase = other
            .perm
            .iter()
            .zip(&other.phase)
            .map(|(&k, &b)| self.phase[k] * b)
            .collect();
        Monomial { perm, phase }
    }

    pub fn adjoint(&self) -> Monomial {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phase = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            phase[self.perm[j]] = self.phase[j].conj();
        }
        Monomial { perm, phase }
    }

    pub fn scale(&self, c: C64) -> Monomial {
        Monomial {
            perm: self.perm.clone(),
            phase: self.phase.iter().map(|p| p * c).collect(),
        }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(v.len());
        for j in 0..self.dim() {
            out[self.perm[j]] += self.phase[j] * v[j];
        }
        out
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> DVector<C64> {
        let mut out = DVector::zeros(self.dim());
        out[self.perm[j]] = self.phase[j];
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim())
            .filter(|&j| self.perm[j] == j)
            .map(|j| self.phase[j])
            .sum()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            m[(self.perm[j], j)] = self.phase[j];
        }
        m
    }

    /// Largest entry of `U*U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let mut seen = vec![false; self.dim()];
        let mut worst: f64 = 0.0;
        for j in 0..self.dim() {
            if std::mem::replace(&mut seen[self.perm[j]], true) {
                return f64::INFINITY;
            }
            worst = worst.max((self.phase[j].norm() - 1.0).abs());
        }
        worst
    }
}

/// Operator norm of `a - b`.
pub(crate) fn distance(a: &Monomial, b: &Monomial) -> f64 {
    if a.perm == b.perm {
        return a.phase.iter().zip(&b.phase).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    }
    let d = a.to_dense() - b.to_dense();
    d.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// `C*_r(G, σ)` for finite `G`, as the matrices `λ_σ(g)` on `ℓ²(G)`.
#[derive(Debug, Clone)]
pub struct TwistedAlgebra {
    group: Group,
    cocycle: Cocycle,
    theta_value: Option<f64>,
    identity: usize,
    generators: Vec<usize>,
    sigma: Vec<Vec<C64>>,
    lambda: Vec<Monomial>,
}

impl TwistedAlgebra {
    /// Builds `λ_σ(g) δ_h = σ(g,h) δ_{gh}`.
    pub fn build(cocycle: &Cocycle, theta_value: Option<f64>) -> Result<TwistedAlgebra> {
        let group = cocycle.group().clone();
        let t = group
            .as_finite()
            .ok_or_else(|| OracleError::Precondition(format!("{} is not finite", group.name())))?;
        let n = t.order();
        if n > MAX_ORDER {
            return Err(OracleError::GroupTooLarge { order: n, cap: MAX_ORDER });
        }
        let table = cocycle.to_table()?;
        let needs_theta = table.iter().flatten().any(|v| v.has_theta());
        let theta = match (needs_theta, theta_value) {
            (true, None) => return Err(OracleError::MissingThetaValue),
            (_, v) => v.unwrap_or(DEFAULT_THETA),
        };
        let sigma: Vec<Vec<C64>> = table
            .iter()
            .map(|row| row.iter().map(|v| v.eval_numeric(theta)).collect())
            .collect();
        let lambda = (0..n)
            .map(|g| Monomial {
                perm: (0..n).map(|h| t.mul(g as u32, h as u32) as usize).collect(),
                phase: sigma[g].clone(),
            })
            .collect();
        let mut generators: Vec<usize> = group
            .generators()
            .into_iter()
            .map(|x| match x {
                GroupElement::Finite(i) => i as usize,
                _ => unreachable!("finite group"),
            })
            .collect();
        if generators.is_empty() {
            generators.push(t.identity() as usize);
        }
        Ok(TwistedAlgebra {
            identity: t.identity() as usize,
            group,
            cocycle: cocycle.clone(),
            theta_value: needs_theta.then_some(theta),
            generators,
            sigma,
            lambda,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// The value substituted for θ, when one was needed.
    pub fn theta_value(&self) -> Option<f64> {
        self.theta_value
    }

    pub fn order(&self) -> usize {
        self.lambda.len()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn lambda(&self, g: usize) -> &Monomial {
        &self.lambda[g]
    }

    pub(crate) fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub(crate) fn mul_index(&self, g: usize, h: usize) -> usize {
        self.lambda[g].perm[h]
    }

    pub(crate) fn inv_index(&self, g: usize) -> usize {
        self.lambda[g].perm.iter().position(|&x| x == self.identity).expect("group")
    }

    /// Coefficients of an operator `x = Σ c_k λ(k)` in the algebra, read off
    /// from `x δ_e`.
    pub(crate) fn coefficients(&self, x: &Monomial) -> DVector<C64> {
        x.column(self.identity)
    }

    /// Dense matrix of `Σ c_k λ(k)`.
    pub fn element_matrix(&self, c: &DVector<C64>) -> DMatrix<C64> {
        let n = self.order();
        let mut m = DMatrix::zeros(n, n);
        for (k, ck) in c.iter().enumerate() {
            if ck.norm() == 0.0 {
                continue;
            }
            let l = &self.lambda[k];
            for j in 0..n {
                m[(l.perm[j], j)] += ck * l.phase[j];
            }
        }
        m
    }

    /// Largest `‖λ(g)λ(h) − σ(g,h)λ(gh)‖` over all pairs.
    pub fn multiplicativity_defect(&self) -> f64 {
        let n = self.order();
        let mut worst: f64 = 0.0;
        for g in 0..n {
            for h in 0..n {
                let lhs = self.lambda[g].mul(&self.lambda[h]);
                let rhs = self.lambda[self.mul_index(g, h)].scale(self.sigma[g][h]);
                worst = worst.max(distance(&lhs, &rhs));
            }
        }
        worst
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.lambda.iter().map(Monomial::unitarity_defect).fold(0.0, f64::max)
    }

    /// A basis of the center, as coefficient vectors.
    pub fn center_basis(&self) -> Result<Vec<DVector<C64>>> {
        let n = self.order();
        let gens = self.generator_indices();
        let mut system = DMatrix::zeros(gens.len() * n, n);
        for (r, &g) in gens.iter().enumerate() {
            for k in 0..n {
                let left = self.lambda[k].mul(&self.lambda[g]);
                let right = self.lambda[g].mul(&self.lambda[k]);
                let col = self.coefficients(&left) - self.coefficients(&right);
                system.view_mut((r * n, k), (n, 1)).copy_from(&col);
            }
        }
        null_space(&system, "center")
    }

    pub fn center_dimension(&self) -> Result<usize> {
        Ok(self.center_basis()?.len())
    }

    /// Matrix sizes of the simple summands, ascending.
    pub fn block_structure(&self) -> Result<Vec<usize>> {
        Ok(self.blocks()?.into_iter().map(|b| b.size).collect())
    }

    /// Eigenspaces of a generic Hermitian central element, one per simple
    /// summand.
    pub(crate) fn blocks(&self) -> Result<Vec<Block>> {
        let basis = self.center_basis()?;
        let k = basis.len();
        let mut last = String::new();
        for attempt in 0..3u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + attempt);
            let n = self.order();
            let mut h = DMatrix::<C64>::zeros(n, n);
            for c in &basis {
                let x = self.element_matrix(c);
                let xa = x.adjoint();
                let (r1, r2) = (unit(&mut rng), unit(&mut rng));
                h += (&x + &xa) * C64::new(r1, 0.0) + (&x - &xa) * C64::new(0.0, r2);
            }
            let eig = h.symmetric_eigen();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let spread = eig.eigenvalues.iter().map(|v| v.abs()).fold(1.0, f64::max);
            let tol = 1e-7 * spread;
            let mut clusters: Vec<Vec<usize>> = Vec::new();
            for &i in &order {
                match clusters.last_mut() {
                    Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs() < tol => c.push(i),
                    _ => clusters.push(vec![i]),
                }
            }
            if clusters.len() != k {
                last = format!("{} eigenvalue clusters for a center of dimension {k}", clusters.len());
                continue;
            }
            let mut blocks = Vec::with_capacity(k);
            for c in clusters {
                let size = (c.len() as f64).sqrt().round() as usize;
                if size * size != c.len() {
                    return Err(OracleError::IllConditioned(format!(
                        "eigenspace of dimension {} is not a square",
                        c.len()
                    )));
                }
                let vectors = c.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
                blocks.push(Block { size, vectors });
            }
            blocks.sort_by_key(|b| b.size);
            return Ok(blocks);
        }
        Err(OracleError::IllConditioned(last))
    }

    /// `‖λ(g)λ(h)λ(g)* − σ̃(g,h)λ(ghg⁻¹)‖`, with `σ̃` taken from the exact layer.
    pub fn conjugation_identity_defect(&self, g: usize, h: usize) -> Result<f64> {
        let tilde = self
            .cocycle
            .sigma_tilde(&GroupElement::Finite(g as u32), &GroupElement::Finite(h as u32))?
            .eval_numeric(self.theta_value.unwrap_or(DEFAULT_THETA));
        let lg = &self.lambda[g];
        let lhs = lg.mul(&self.lambda[h]).mul(&lg.adjoint());
        let ghg = self.mul_index(self.mul_index(g, h), self.inv_index(g));
        Ok(distance(&lhs, &self.lambda[ghg].scale(tilde)))
    }

    /// Largest conjugation defect over all pairs.
    pub fn conjugation_max_defect(&self) -> Result<f64> {
        let n = self.order();
        let mut worst: f64 = 0.0;
        for g in 0..n {
            for h in 0..n {
                worst = worst.max(self.conjugation_identity_defect(g, h)?);
            }
        }
        Ok(worst)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub size: usize,
    /// Orthonormal basis of the range of the minimal central projection.
    pub vectors: Vec<DVector<C64>>,
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_algebra() {
        let a = Monomial {
            perm: vec![1, 2, 0],
            phase: vec![C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0)],
        };
        let dense = a.to_dense();
        let b = a.mul(&a.adjoint());
        assert!(distance(&b, &Monomial::identity(3)) < 1e-15);
        assert!((a.mul(&a).to_dense() - &dense * &dense).norm() < 1e-15);
        assert!((a.adjoint().to_dense() - dense.adjoint()).norm() < 1e-15);
    }
}
