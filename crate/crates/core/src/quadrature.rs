//! Adaptive Simpson quadrature with Richardson extrapolation.
//!
//! This is the workhorse behind the verification oracles: it integrates the
//! defining mixture integrals directly so the closed forms elsewhere in the
//! crate can be checked against something that never touches them.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;
const INITIAL_PANELS: usize = 16;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    /// Estimated value of the integral.
    pub value: f64,
    /// Accumulated absolute error estimate over all accepted panels.
    pub error_estimate: f64,
}

/// Integrates `f` over `[a, b]` to a relative tolerance `rel_tol`.
///
/// The interval is pre-split into a fixed number of panels so narrow peaks
/// are not missed by the first Simpson estimate, then each panel is refined
/// by interval halving until its local error bound fits its share of the
/// budget.  Fails with [`Error::QuadratureFailure`] if the accumulated
/// error estimate still exceeds the tolerance after the depth limit.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Domain(format!(
            "integration bounds must be finite with b >= a, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
        });
    }

    // First pass: composite Simpson over the initial panels, to size the
    // absolute error budget from the integral's own magnitude.
    let width = (b - a) / INITIAL_PANELS as f64;
    let mut panels = Vec::with_capacity(INITIAL_PANELS);
    let mut rough = 0.0;
    for i in 0..INITIAL_PANELS {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == INITIAL_PANELS { b } else { lo + width };
        let mid = 0.5 * (lo + hi);
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        let s = (hi - lo) * (flo + 4.0 * fmid + fhi) / 6.0;
        rough += s;
        panels.push((lo, hi, flo, fmid, fhi, s));
    }

    let budget = rel_tol * rough.abs().max(f64::MIN_POSITIVE);
    let mut value = 0.0;
    let mut error_estimate = 0.0;
    for (lo, hi, flo, fmid, fhi, s) in panels {
        let (v, e) = refine(
            &f,
            lo,
            hi,
            flo,
            fmid,
            fhi,
            s,
            budget / INITIAL_PANELS as f64,
            MAX_DEPTH,
        );
        value += v;
        error_estimate += e;
    }

    let achieved = error_estimate / value.abs().max(f64::MIN_POSITIVE);
    if achieved > rel_tol {
        return Err(Error::QuadratureFailure {
            achieved,
            target: rel_tol,
        });
    }
    Ok(Quadrature {
        value,
        error_estimate,
    })
}

// One level of interval halving.  `s` is the Simpson estimate for [lo, hi]
// computed by the caller; returns (value, error bound) for the panel.
#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    flo: f64,
    fmid: f64,
    fhi: f64,
    s: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let mid = 0.5 * (lo + hi);
    let lq = 0.5 * (lo + mid);
    let rq = 0.5 * (mid + hi);
    let flq = f(lq);
    let frq = f(rq);
    let s_left = (mid - lo) * (flo + 4.0 * flq + fmid) / 6.0;
    let s_right = (hi - mid) * (fmid + 4.0 * frq + fhi) / 6.0;
    let s2 = s_left + s_right;
    let delta = s2 - s;
    // |delta| / 15 bounds the error of the extrapolated value.
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return (s2 + delta / 15.0, delta.abs() / 15.0);
    }
    let (lv, le) = refine(f, lo, mid, flo, flq, fmid, s_left, 0.5 * tol, depth - 1);
    let (rv, re) = refine(f, mid, hi, fmid, frq, fhi, s_right, 0.5 * tol, depth - 1);
    (lv + rv, le + re)
}
