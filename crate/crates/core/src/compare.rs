//! Comparing the Riggs multiplier with Meissner's monic multiplier.
//!
//! Both are monic and both certify the same optimal degree, but they differ
//! as vectors. In the transformed coordinates `c = b·R_s` the Riggs
//! multiplier is the unit vector `(0,…,0,1)` while Meissner's picks up a
//! second nonzero entry `c[s−1] = −r·sin((s+2)θ)/sin((s+1)θ)`; the two
//! coincide exactly when `θ = π/(s+2)`. Coefficientwise the Riggs
//! multiplier is never larger, and the per-index ratio (independent of `r`)
//! collapses to 0 as `θ → π/(s+1)`.

use serde::{Deserialize, Serialize};

use crate::multiplier::{c_vector_of, meissner_monic, optimal_degree, riggs_recurrence};
use crate::poly::{PolarQuadratic, Polynomial};
use crate::Error;

/// Side-by-side view of the two monic multipliers for one quadratic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub pq: PolarQuadratic,
    pub s: usize,
    pub c_r: Vec<f64>,
    pub c_m: Vec<f64>,
    pub coeff_ratios: Vec<f64>,
    pub equal: bool,
    pub ordering_holds: bool,
}

/// `c = b·R_s` for a degree-s multiplier of the quadratic.
pub fn c_vector(g: &Polynomial, pq: &PolarQuadratic) -> Result<Vec<f64>, Error> {
    let s = optimal_degree(pq.theta())?;
    if g.degree() != s {
        return Err(Error::DegreeMismatch {
            expected: s,
            actual: g.degree(),
        });
    }
    Ok(c_vector_of(g.coeffs(), &pq.to_polynomial()))
}

/// Closed form of Meissner's monic c-vector:
/// `(0, …, 0, −r·sin((s+2)θ)/sin((s+1)θ), 1)`; just `(1)` when `s = 0`.
pub fn meissner_c_closed(pq: &PolarQuadratic) -> Result<Vec<f64>, Error> {
    let s = optimal_degree(pq.theta())?;
    if s == 0 {
        return Ok(vec![1.0]);
    }
    let (r, theta) = (pq.r(), pq.theta());
    let mut c = vec![0.0; s + 1];
    c[s - 1] = -r * ((s as f64 + 2.0) * theta).sin() / ((s as f64 + 1.0) * theta).sin();
    c[s] = 1.0;
    Ok(c)
}

fn ratio_with_s(theta: f64, s: usize, i: usize) -> f64 {
    let sf = s as f64;
    let ifl = i as f64;
    ((sf - ifl + 1.0) * theta).sin() * ((sf + 1.0) * theta).sin()
        / (theta.sin() * ((ifl + 1.0) * theta).sin())
}

/// Ratio `coeff(g_R, i) / coeff(g_M*, i)` in closed trigonometric form:
/// `sin((s−i+1)θ)·sin((s+1)θ) / (sin θ·sin((i+1)θ))`, independent of `r`.
pub fn ratio(theta: f64, i: usize) -> f64 {
    let s = optimal_degree(theta).expect("theta must lie in (0, pi)");
    assert!(i <= s, "index {i} exceeds multiplier degree {s}");
    ratio_with_s(theta, s, i)
}

/// One row of a [`RatioTable`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioRow {
    pub theta: f64,
    pub ratios: Vec<f64>,
}

/// Coefficient ratios at ten angles equally spaced across
/// `π/(s+2) ≤ θ < π/(s+1)`, one column per index `i = 0..s-1`.
///
/// Index `s` is omitted: both multipliers are monic so that ratio is
/// always 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioTable {
    pub s: usize,
    pub rows: Vec<RatioRow>,
}

/// The data behind the comparison figures: rows run from `θ = π/(s+2)`
/// (all ratios 1) toward `π/(s+1)` (all ratios sinking to 0).
pub fn ratio_table(s: usize) -> RatioTable {
    assert!(s >= 1, "the ratio table needs s >= 1");
    let lo = std::f64::consts::PI / (s as f64 + 2.0);
    let hi = std::f64::consts::PI / (s as f64 + 1.0);
    let rows = (0..10)
        .map(|step| {
            let w = step as f64 / 10.0;
            let theta = (1.0 - w) * lo + w * hi;
            RatioRow {
                theta,
                ratios: (0..s).map(|i| ratio_with_s(theta, s, i)).collect(),
            }
        })
        .collect();
    RatioTable { s, rows }
}

/// Evaluate the ratio at `θ = π/(s+1) − ε` for each `ε`, tracking the
/// collapse of the ratio as the angle approaches the upper boundary.
pub fn limit_check(s: usize, i: usize, eps_sequence: &[f64]) -> Vec<f64> {
    assert!(s >= 1 && i <= s);
    let hi = std::f64::consts::PI / (s as f64 + 1.0);
    let gap = hi - std::f64::consts::PI / (s as f64 + 2.0);
    eps_sequence
        .iter()
        .map(|&eps| {
            assert!(
                eps > 0.0 && eps <= gap * (1.0 + 1e-12),
                "epsilon {eps} outside (0, {gap}]"
            );
            ratio_with_s(hi - eps, s, i)
        })
        .collect()
}

/// Assemble the full comparison for one quadratic.
pub fn report(pq: &PolarQuadratic) -> Result<ComparisonReport, Error> {
    let s = optimal_degree(pq.theta())?;
    let g_r = riggs_recurrence(pq)?.g;
    let g_m = meissner_monic(pq)?.g;
    let c_r = c_vector(&g_r, pq)?;
    let c_m = c_vector(&g_m, pq)?;
    let coeff_ratios: Vec<f64> = (0..=s).map(|i| ratio_with_s(pq.theta(), s, i)).collect();

    // Equality is decided from the closed-form entry, which suffers no
    // cancellation; it vanishes exactly when theta snaps to pi/(s+2).
    let closed = meissner_c_closed(pq)?;
    let equal = s == 0 || closed[s - 1].abs() <= 1e-9 * pq.r();

    // c entries are sums of b·a products cancelling to near zero, so their
    // comparison tolerance must scale with the products, not the results.
    let g_scale = g_r.max_abs_coeff().max(g_m.max_abs_coeff()).max(1.0);
    let f_scale = pq.to_polynomial().max_abs_coeff().max(1.0);
    let c_tol = 1e-9 * g_scale * f_scale;
    let ordering_holds = c_r
        .iter()
        .zip(&c_m)
        .all(|(r, m)| *r <= *m + c_tol)
        && (0..=s).all(|i| g_r.coeff(i) <= g_m.coeff(i) + 1e-9 * g_scale);

    Ok(ComparisonReport {
        pq: *pq,
        s,
        c_r,
        c_m,
        coeff_ratios,
        equal,
        ordering_holds,
    })
}
