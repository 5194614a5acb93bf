//! Optimal-degree Poincaré multipliers for positive quadratics.
//!
//! For a quadratic with non-real roots `r·e^{±iθ}` the optimal multiplier
//! degree is `s = ⌈π/θ⌉ − 2`. Three algebraically independent routes build
//! the same monic degree-s multiplier `g_R` — a backward coefficient
//! recurrence, a banded determinant expanded by cofactors, and a closed
//! trigonometric form — and two more build Meissner's classical multiplier
//! and its monic normalization. Every construction returns a
//! [`MultiplierCertificate`] whose claims can be re-checked from scratch
//! with [`verify`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::poly::{PolarQuadratic, Polynomial};
use crate::tmatrix::MAX_DEGREE;
use crate::Error;

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    RiggsRecurrence,
    RiggsDeterminant,
    RiggsClosedForm,
    Meissner,
    MeissnerMonic,
}

/// Whether the certified degree is known to be the smallest possible.
///
/// Quadratic constructions are optimal by the degree theorem; composed
/// multipliers for higher-degree polynomials make no minimality claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    Optimal,
    Unknown,
}

/// A multiplier `g` for `f` together with everything needed to re-check it:
/// the degree `s`, the transformed coordinates `c = b·R_s` (`b` being the
/// coefficient row of `g`), the product `g·f`, and the tolerance in force.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiplierCertificate {
    pub f: Polynomial,
    pub g: Polynomial,
    pub s: usize,
    pub c: Vec<f64>,
    pub product: Polynomial,
    pub provenance: Provenance,
    pub tol: f64,
    pub composed: bool,
    pub optimality: Optimality,
}

/// Smallest degree of a nonzero multiplier: `s = ⌈π/θ⌉ − 2`.
///
/// When `π/θ` sits within `1e-9` of an integer it is snapped to that
/// integer before the ceiling, so angles like `π/k` given in floating
/// point land on the boundary case instead of one degree above it.
pub fn optimal_degree(theta: f64) -> Result<usize, Error> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!(
            "angle theta must lie in (0, pi), got {theta}"
        )));
    }
    let ratio = PI / theta;
    let rounded = ratio.round();
    let ceiling = if (ratio - rounded).abs() < 1e-9 {
        rounded
    } else {
        ratio.ceil()
    };
    Ok(((ceiling as i64) - 2).max(0) as usize)
}

/// Default certificate tolerance: `1e-9` scaled by the largest coefficient
/// magnitude involved.
pub(crate) fn default_tol(f: &Polynomial, g: &Polynomial) -> f64 {
    1e-9 * 1.0_f64.max(f.max_abs_coeff()).max(g.max_abs_coeff())
}

/// `c = b·R_s` for a monic `f` of any degree `d`: the band of `R_s` below
/// the unit diagonal carries `f`'s coefficients, so
/// `c[i] = Σ_k b[i+k]·a_{d−k}` for `k = 0..=d`.
pub(crate) fn c_vector_of(b: &[f64], f: &Polynomial) -> Vec<f64> {
    let d = f.degree();
    let s = b.len() - 1;
    (0..=s)
        .map(|i| {
            (0..=d)
                .filter(|k| i + k <= s)
                .map(|k| b[i + k] * f.coeff(d - k))
                .sum()
        })
        .collect()
}

pub(crate) fn certify(
    f: Polynomial,
    g: Polynomial,
    provenance: Provenance,
    composed: bool,
    optimality: Optimality,
    tol_override: Option<f64>,
) -> Result<MultiplierCertificate, Error> {
    let s = g.degree();
    let tol = tol_override.unwrap_or_else(|| default_tol(&f, &g));
    let product = g.multiply(&f);
    for (index, &value) in product.coeffs().iter().enumerate() {
        if value < -tol {
            return Err(Error::CertificateFailure { index, value, tol });
        }
    }
    let c = c_vector_of(g.coeffs(), &f);
    Ok(MultiplierCertificate {
        f,
        g,
        s,
        c,
        product,
        provenance,
        tol,
        composed,
        optimality,
    })
}

fn quadratic_certificate(
    pq: &PolarQuadratic,
    b: Vec<f64>,
    provenance: Provenance,
) -> Result<MultiplierCertificate, Error> {
    certify(
        pq.to_polynomial(),
        Polynomial::new(b),
        provenance,
        false,
        Optimality::Optimal,
        None,
    )
}

/// Multiplier by the backward recurrence `b_s = 1`,
/// `b_{s−j} = −b_{s−j+1}·a1 − b_{s−j+2}·a0` (with `b_{s+1} := 0`).
pub fn riggs_recurrence(pq: &PolarQuadratic) -> Result<MultiplierCertificate, Error> {
    let s = optimal_degree(pq.theta())?;
    assert!(s <= MAX_DEGREE, "multiplier degree {s} exceeds {MAX_DEGREE}");
    let (a0, a1) = (pq.a0(), pq.a1());
    let mut b = vec![0.0; s + 1];
    b[s] = 1.0;
    for j in 1..=s {
        let above = b[s - j + 1];
        let two_above = if j >= 2 { b[s - j + 2] } else { 0.0 };
        b[s - j] = -above * a1 - two_above * a0;
    }
    quadratic_certificate(pq, b, Provenance::RiggsRecurrence)
}

/// Multiplier as a banded (s+1)×(s+1) determinant whose last column is
/// `x^0..x^s`; the coefficient of `x^k` is the cofactor
/// `(−1)^{k+s}·det(minor)` with the minor solved by LU with partial
/// pivoting. O(s⁴) overall and deliberately independent of the recurrence
/// it cross-checks.
pub fn riggs_determinant(pq: &PolarQuadratic) -> Result<MultiplierCertificate, Error> {
    let s = optimal_degree(pq.theta())?;
    let (a0, a1) = (pq.a0(), pq.a1());
    let band = |row: usize, col: usize| -> f64 {
        if row == col {
            1.0
        } else if row == col + 1 {
            a1
        } else if row == col + 2 {
            a0
        } else {
            0.0
        }
    };
    let mut b = vec![0.0; s + 1];
    for k in 0..=s {
        let minor: Vec<Vec<f64>> = (0..=s)
            .filter(|&row| row != k)
            .map(|row| (0..s).map(|col| band(row, col)).collect())
            .collect();
        let sign = if (k + s) % 2 == 0 { 1.0 } else { -1.0 };
        b[k] = sign * det_lu(minor);
    }
    quadratic_certificate(pq, b, Provenance::RiggsDeterminant)
}

/// Determinant by LU factorization with partial pivoting; empty matrix
/// has determinant 1.
fn det_lu(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            if factor != 0.0 {
                for c in col + 1..n {
                    let delta = factor * m[col][c];
                    m[row][c] -= delta;
                }
            }
        }
    }
    det
}

/// Multiplier from the closed form `b_{s−j} = r^j·sin((j+1)θ)/sin θ`.
pub fn riggs_closed_form(pq: &PolarQuadratic) -> Result<MultiplierCertificate, Error> {
    let s = optimal_degree(pq.theta())?;
    assert!(s <= MAX_DEGREE, "multiplier degree {s} exceeds {MAX_DEGREE}");
    let (r, theta) = (pq.r(), pq.theta());
    let sin_theta = theta.sin();
    let mut b = vec![0.0; s + 1];
    for j in 0..=s {
        b[s - j] = r.powi(j as i32) * ((j as f64 + 1.0) * theta).sin() / sin_theta;
    }
    quadratic_certificate(pq, b, Provenance::RiggsClosedForm)
}

/// Meissner's multiplier: coefficient of `x^i` is
/// `r^(2−i)·sin((i+1)θ)/sin θ`. Not monic in general.
pub fn meissner(pq: &PolarQuadratic) -> Result<MultiplierCertificate, Error> {
    let s = optimal_degree(pq.theta())?;
    assert!(s <= MAX_DEGREE, "multiplier degree {s} exceeds {MAX_DEGREE}");
    let (r, theta) = (pq.r(), pq.theta());
    let sin_theta = theta.sin();
    let b: Vec<f64> = (0..=s)
        .map(|i| r.powi(2 - i as i32) * ((i as f64 + 1.0) * theta).sin() / sin_theta)
        .collect();
    quadratic_certificate(pq, b, Provenance::Meissner)
}

/// Meissner's multiplier normalized to be monic: coefficient of `x^i` is
/// `r^(s−i)·sin((i+1)θ)/sin((s+1)θ)`.
pub fn meissner_monic(pq: &PolarQuadratic) -> Result<MultiplierCertificate, Error> {
    let s = optimal_degree(pq.theta())?;
    assert!(s <= MAX_DEGREE, "multiplier degree {s} exceeds {MAX_DEGREE}");
    let (r, theta) = (pq.r(), pq.theta());
    let sin_top = ((s as f64 + 1.0) * theta).sin();
    let b: Vec<f64> = (0..=s)
        .map(|i| r.powi((s - i) as i32) * ((i as f64 + 1.0) * theta).sin() / sin_top)
        .collect();
    quadratic_certificate(pq, b, Provenance::MeissnerMonic)
}

/// One failed certificate invariant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvariantFailure {
    pub invariant: String,
    pub detail: String,
}

/// Result of re-checking a certificate from scratch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub failures: Vec<InvariantFailure>,
}

/// Recompute the product and c-vector and re-check every certificate
/// invariant. Never errors; failed invariants are reported by name.
pub fn verify(cert: &MultiplierCertificate) -> VerifyReport {
    let mut failures = Vec::new();
    let fail = |failures: &mut Vec<InvariantFailure>, invariant: &str, detail: String| {
        failures.push(InvariantFailure {
            invariant: invariant.to_string(),
            detail,
        });
    };

    if cert.g.degree() != cert.s {
        fail(
            &mut failures,
            "degree",
            format!("deg g = {}, certificate says s = {}", cert.g.degree(), cert.s),
        );
    }
    if cert.provenance != Provenance::Meissner && (cert.g.leading() - 1.0).abs() > cert.tol {
        fail(
            &mut failures,
            "monic",
            format!("leading coefficient of g is {}", cert.g.leading()),
        );
    }

    let product = cert.g.multiply(&cert.f);
    let len = product.coeffs().len().max(cert.product.coeffs().len());
    let mut worst = 0.0_f64;
    for k in 0..len {
        worst = worst.max((product.coeff(k) - cert.product.coeff(k)).abs());
    }
    if worst > cert.tol {
        fail(
            &mut failures,
            "product-matches",
            format!("recomputed g*f differs from stored product by {worst:e}"),
        );
    }

    if let Some((index, &value)) = product
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, &v)| v < -cert.tol)
    {
        fail(
            &mut failures,
            "coeffs-nonneg",
            format!("coefficient {index} of g*f is {value:e}, below -{:e}", cert.tol),
        );
    }

    let c = c_vector_of(cert.g.coeffs(), &cert.f);
    if c.len() != cert.c.len() {
        fail(
            &mut failures,
            "c-vector",
            format!("c has length {}, expected {}", cert.c.len(), c.len()),
        );
    } else {
        let worst = c
            .iter()
            .zip(&cert.c)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        if worst > cert.tol {
            fail(
                &mut failures,
                "c-vector",
                format!("recomputed b*R differs from stored c by {worst:e}"),
            );
        }
    }

    VerifyReport {
        passed: failures.is_empty(),
        failures,
    }
}
