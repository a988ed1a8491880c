use kleppner_core::cocycle::Cocycle;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{TwistedAlgebra, MAX_ORDER};
use crate::trace::{ExpansionForm, TraceVector};
use crate::Result;

const CAREY_MORAN_INSTANCES: usize = 4;

/// Summary of the matrix computations for one `(G, σ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub center_dim: usize,
    pub blocks: Vec<usize>,
    pub invariant_trace_dim: usize,
    /// `None` when neither `σ` is trivial nor `G^σ` fits the oracle.
    pub carey_moran_max_residual: Option<f64>,
    pub conjugation_max_defect: f64,
}

impl OracleReport {
    pub fn compute(cocycle: &Cocycle, theta_value: Option<f64>, seed: u64) -> Result<OracleReport> {
        let a = TwistedAlgebra::build(cocycle, theta_value)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let carey_moran_max_residual = if cocycle.is_identically_trivial()? {
            Some(carey_moran_instances(&a, &mut rng, CAREY_MORAN_INSTANCES)?)
        } else {
            match cocycle.g_sigma_extension() {
                Ok((ext, _)) if ext.order().is_some_and(|n| n <= MAX_ORDER) => {
                    let b = TwistedAlgebra::build(&Cocycle::trivial(&ext), None)?;
                    Some(carey_moran_instances(&b, &mut rng, CAREY_MORAN_INSTANCES)?)
                }
                _ => None,
            }
        };
        Ok(OracleReport {
            center_dim: a.center_dimension()?,
            blocks: a.block_structure()?,
            invariant_trace_dim: a.invariant_trace_space_dim()?,
            carey_moran_max_residual,
            conjugation_max_defect: a.conjugation_max_defect()?,
        })
    }
}

/// Largest residual of the corrected expansion over random instances with
/// `N ≤ 8`.
pub fn carey_moran_instances<R: RngCore>(a: &TwistedAlgebra, rng: &mut R, count: usize) -> Result<f64> {
    let n = a.order();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let psi = TraceVector::random(a, rng)?;
        let h = (rng.next_u32() as usize) % n;
        let len = 1 + (rng.next_u32() as usize) % n.min(8);
        let mut pool: Vec<usize> = (0..n).collect();
        let mut gs = Vec::with_capacity(len);
        for _ in 0..len {
            let i = (rng.next_u32() as usize) % pool.len();
            gs.push(pool.swap_remove(i));
        }
        worst = worst.max(a.carey_moran_residual(&psi, h, &gs, ExpansionForm::Corrected)?);
    }
    Ok(worst)
}
