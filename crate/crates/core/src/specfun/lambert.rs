//! Principal branch W₀ of the Lambert W function: the solution of
//! W·e^W = x with W ≥ −1, defined for x ≥ −1/e.

use super::SpecFunError;

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// −1/e, the branch point of W₀, rounded to nearest f64.
const NEG_INV_E: f64 = -0.367_879_441_171_442_33;

/// Rounding slack accepted below the branch point before declaring the
/// argument out of domain.
const BRANCH_SLACK: f64 = 1e-12;

/// Lambert W, principal branch, with residual |W·e^W − x| ≤ 1e-10·max(1,|x|).
///
/// An initial guess (branch-point series near −1/e, Maclaurin head near 0,
/// log asymptotics for large x) is polished by Halley iteration, which
/// converges cubically; a handful of steps reaches machine precision.
pub fn lambert_w0(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() || x < NEG_INV_E - BRANCH_SLACK {
        return Err(SpecFunError::Domain(
            "lambert_w0 requires x >= -1/e; no real principal-branch value",
        ));
    }
    if x <= NEG_INV_E {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }

    // p measures the distance to the branch point: W = −1 + p − p²/3 + ...
    let p = (2.0 * (core::f64::consts::E * x + 1.0)).sqrt();
    if p < 1e-4 {
        // Series error is O(p⁴) here, already below 1e-16; Halley would
        // divide by the vanishing derivative, so return directly.
        return Ok(-1.0 + p * (1.0 - p * (1.0 / 3.0 - p * (11.0 / 72.0))));
    }

    let mut w = if x < -0.2 {
        -1.0 + p * (1.0 - p * (1.0 / 3.0 - p * (11.0 / 72.0)))
    } else if x < 0.3 {
        x * (1.0 - x)
    } else if x <= core::f64::consts::E {
        x.ln_1p()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    let tol = 1e-13 * x.abs().max(1.0);
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= tol {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        // Halley: w ← w − f / (e^w(w+1) − f(w+2)/(2(w+1)))
        let denom = ew * wp1 - f * (w + 2.0) / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    let residual = (w * w.exp() - x).abs();
    if residual <= 1e-10 * x.abs().max(1.0) {
        Ok(w)
    } else {
        Err(SpecFunError::NoConvergence("lambert_w0 Halley iteration"))
    }
}
