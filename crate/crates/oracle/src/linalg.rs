use nalgebra::{Complex, DMatrix, DVector};

use crate::{OracleError, Result};

pub type C64 = Complex<f64>;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_THRESHOLD: f64 = 1e-9;
/// Relative singular values inside `(GUARD_LOW, GUARD_HIGH)` are refused.
pub const GUARD_LOW: f64 = 1e-11;
pub const GUARD_HIGH: f64 = 1e-7;

/// Orthonormal basis of the kernel of `m`.
pub(crate) fn null_space(m: &DMatrix<C64>, what: &str) -> Result<Vec<DVector<C64>>> {
    let n = m.ncols();
    if m.nrows() == 0 {
        return Ok((0..n).map(|i| DVector::from_fn(n, |j, _| C64::new(f64::from(u8::from(i == j)), 0.0))).collect());
    }
    // Pad to a square system so that V* has a row for every unknown.
    let m = if m.nrows() < n {
        let mut padded = DMatrix::zeros(n, n);
        padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = m.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    // Entries are sums of a few unit-modulus numbers, so a largest singular
    // value far below 1 is rounding noise of an exactly zero system.
    let largest = svd.singular_values.iter().cloned().fold(1.0, f64::max);
    let mut basis = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        let rel = s / largest;
        if rel > GUARD_LOW && rel < GUARD_HIGH {
            return Err(OracleError::IllConditioned(format!(
                "{what}: relative singular value {rel:e} inside the guard band"
            )));
        }
        if rel < RANK_THRESHOLD {
            basis.push(DVector::from_fn(n, |j, _| v_t[(i, j)].conj()));
        }
    }
    Ok(basis)
}
