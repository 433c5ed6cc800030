//! Process-wide numeric tolerances.
//!
//! `eps` is the single threshold used for every eigenvalue comparison
//! outside the eigensolver itself (kernel counting, rigidity decisions,
//! bound slack). The eigensolver has its own, much tighter, tolerance.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default comparison tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Default off-diagonal tolerance for the Jacobi eigensolver.
pub const DEFAULT_SOLVER_TOL: f64 = 1e-12;

/// Relative margin used when deciding whether a norm is smooth at a point.
pub const SMOOTHNESS_MARGIN: f64 = 1e-9;

static EPS_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

pub fn eps() -> f64 {
    f64::from_bits(EPS_BITS.load(Ordering::Relaxed))
}

/// Overrides the comparison tolerance. Non-positive or non-finite values are ignored.
pub fn set_eps(value: f64) {
    if value.is_finite() && value > 0.0 {
        EPS_BITS.store(value.to_bits(), Ordering::Relaxed);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bits_match_constant() {
        assert_eq!(f64::from_bits(0x3E11_2E0B_E826_D695), DEFAULT_EPS);
    }
}
