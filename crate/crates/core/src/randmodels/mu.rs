use num_rational::Rational64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ratio::to_f64;

/// The `mu` in `(0, 1]` with `mu e^{-mu} = lambda e^{-lambda}`, by bisection
/// to absolute error `1e-12`.
pub fn conjugate_mu(lambda: Rational64) -> Result<f64> {
    if lambda < Rational64::one() {
        return Err(Error::domain("lambda", format!("{lambda} < 1")));
    }
    if lambda == Rational64::one() {
        return Ok(1.0);
    }
    let l = to_f64(&lambda);
    let target = l * (-l).exp();
    // x e^{-x} increases on (0, 1)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid * (-mid).exp() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
