use nalgebra::{DMatrix, DVector};
use rand_core::RngCore;

use crate::algebra::{Monomial, TwistedAlgebra};
use crate::linalg::{null_space, C64};
use crate::{OracleError, Result};

const STATE_TOLERANCE: f64 = 1e-9;

/// A linear functional on the algebra, stored as its values `ψ(λ(g))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceVector {
    pub values: Vec<C64>,
}

/// Right-hand side used for `ψ(a_N* a_N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionForm {
    /// `1 − N|p|² + |p|² Σ_{i≠j} ψ(x_j⁻¹ x_i)`.
    Corrected,
    /// The same expansion with the cross sum missing its `|p|²` factor.
    WithoutCrossFactor,
}

impl TraceVector {
    /// `τ(x) = ⟨x δ_e, δ_e⟩`, computed as the normalized matrix trace.
    pub fn canonical(a: &TwistedAlgebra) -> TraceVector {
        let n = a.order() as f64;
        TraceVector {
            values: (0..a.order()).map(|g| a.lambda(g).trace() / n).collect(),
        }
    }

    /// The normalized traces of the simple summands.
    pub fn extreme(a: &TwistedAlgebra) -> Result<Vec<TraceVector>> {
        let blocks = a.blocks()?;
        Ok(blocks
            .iter()
            .map(|b| {
                let scale = (b.size * b.size) as f64;
                let values = (0..a.order())
                    .map(|g| {
                        let l = a.lambda(g);
                        b.vectors.iter().map(|v| v.dotc(&l.apply(v))).sum::<C64>() / scale
                    })
                    .collect();
                TraceVector { values }
            })
            .collect())
    }

    /// A random convex combination of the extreme traces.
    pub fn random<R: RngCore>(a: &TwistedAlgebra, rng: &mut R) -> Result<TraceVector> {
        let extreme = TraceVector::extreme(a)?;
        let weights: Vec<f64> = extreme.iter().map(|_| (rng.next_u32() as f64) + 1.0).collect();
        let total: f64 = weights.iter().sum();
        let mut values = vec![C64::new(0.0, 0.0); a.order()];
        for (t, w) in extreme.iter().zip(&weights) {
            for (v, x) in values.iter_mut().zip(&t.values) {
                *v += x * (w / total);
            }
        }
        Ok(TraceVector { values })
    }

    pub fn at(&self, g: usize) -> C64 {
        self.values[g]
    }

    /// `ψ(Σ c_k λ(k))`.
    pub fn eval(&self, c: &DVector<C64>) -> C64 {
        c.iter().zip(&self.values).map(|(x, v)| x * v).sum()
    }

    fn eval_operator(&self, a: &TwistedAlgebra, x: &Monomial) -> C64 {
        let e = a.identity_index();
        self.values[x.perm[e]] * x.phase[e]
    }

    /// Checks normalization, the trace property and positivity.
    pub fn check_state(&self, a: &TwistedAlgebra) -> Result<()> {
        let n = a.order();
        if self.values.len() != n {
            return Err(OracleError::InvalidTrace(format!("{} values for {n} elements", self.values.len())));
        }
        if (self.values[a.identity_index()] - C64::new(1.0, 0.0)).norm() > STATE_TOLERANCE {
            return Err(OracleError::InvalidTrace("value at the identity is not 1".into()));
        }
        let mut gram = DMatrix::zeros(n, n);
        for x in 0..n {
            let xa = a.lambda(x).adjoint();
            for y in 0..n {
                let ly = a.lambda(y);
                let comm = self.eval_operator(a, &a.lambda(x).mul(ly)) - self.eval_operator(a, &ly.mul(a.lambda(x)));
                if comm.norm() > STATE_TOLERANCE {
                    return Err(OracleError::InvalidTrace(format!("not tracial on ({x}, {y})")));
                }
                gram[(x, y)] = self.eval_operator(a, &xa.mul(ly));
            }
        }
        let smallest = gram.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
        if smallest < -STATE_TOLERANCE {
            return Err(OracleError::InvalidTrace(format!("negative value {smallest:e} on a square")));
        }
        Ok(())
    }
}

impl TwistedAlgebra {
    /// Dimension of the space of tracial functionals invariant under
    /// `γ_g(x) = λ(g) x λ(g)*`.
    pub fn invariant_trace_space_dim(&self) -> Result<usize> {
        let n = self.order();
        let gens = self.generator_indices().to_vec();
        let mut system = DMatrix::<C64>::zeros(2 * gens.len() * n, n);
        let mut row = 0;
        for &g in &gens {
            let lg = self.lambda(g);
            let lg_adj = lg.adjoint();
            for h in 0..n {
                let lh = self.lambda(h);
                let forward = self.coefficients(&lg.mul(lh));
                let backward = self.coefficients(&lh.mul(lg));
                let conj = self.coefficients(&lg.mul(lh).mul(&lg_adj));
                for k in 0..n {
                    system[(row, k)] = forward[k] - backward[k];
                    system[(row + 1, k)] = conj[k] - C64::new(f64::from(u8::from(k == h)), 0.0);
                }
                row += 2;
            }
        }
        Ok(null_space(&system, "invariant traces")?.len())
    }

    /// `|ψ(a_N* a_N) − expansion|` for `a_N = 1 − conj(ψ(h)) Σ_i λ(g_i h g_i⁻¹)`.
    /// Requires a trivial cocycle.
    pub fn carey_moran_residual(&self, psi: &TraceVector, h: usize, gs: &[usize], form: ExpansionForm) -> Result<f64> {
        if !self.cocycle().is_identically_trivial()? {
            return Err(OracleError::Precondition("the expansion is stated for trivial cocycles".into()));
        }
        let mut distinct = gs.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != gs.len() {
            return Err(OracleError::Precondition("g_i must be distinct".into()));
        }
        psi.check_state(self)?;
        let n = self.order();
        let p = psi.at(h);
        let conj_of = |g: usize| self.mul_index(self.mul_index(g, h), self.inv_index(g));
        let xs: Vec<usize> = gs.iter().map(|&g| conj_of(g)).collect();

        let mut a_n = DMatrix::<C64>::identity(n, n);
        for &x in &xs {
            a_n -= self.lambda(x).to_dense() * p.conj();
        }
        let product = a_n.adjoint() * &a_n;
        let direct = psi.eval(&product.column(self.identity_index()).into_owned());

        let cross: C64 = xs
            .iter()
            .enumerate()
            .flat_map(|(i, &xi)| xs.iter().enumerate().filter(move |(j, _)| *j != i).map(move |(_, &xj)| (xi, xj)))
            .map(|(xi, xj)| psi.at(self.mul_index(self.inv_index(xj), xi)))
            .sum();
        let big_n = gs.len() as f64;
        let p2 = p.norm_sqr();
        let predicted = match form {
            ExpansionForm::Corrected => C64::new(1.0 - big_n * p2, 0.0) + cross * p2,
            ExpansionForm::WithoutCrossFactor => C64::new(1.0 - big_n * p2, 0.0) + cross,
        };
        Ok((direct - predicted).norm())
    }
}
