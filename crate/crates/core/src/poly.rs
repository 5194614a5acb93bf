//! Real univariate polynomials and the polar form of a monic quadratic.
//!
//! Coefficients are stored in ascending degree order: `coeffs[k]` multiplies
//! `x^k`. All comparisons go through explicit tolerances; the quantities in
//! this domain are trigonometric and never exact in `f64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Default relative tolerance, scaled by the magnitude of whatever is
/// being compared.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Whether a monic polynomial is positive over (0, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Positivity {
    Positive,
    NotPositive,
}

/// Real univariate polynomial with ascending coefficients.
///
/// Trailing (highest-degree) zeros are trimmed on construction; the zero
/// polynomial is the single coefficient `0` and has degree 0 by convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().expect("coeffs is never empty")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0.0]
    }

    /// Leading coefficient exactly 1.
    pub fn is_monic(&self) -> bool {
        self.leading() == 1.0
    }

    /// Largest coefficient magnitude; 0 only for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Coefficient convolution; degree adds for nonzero inputs.
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// True iff every coefficient is `>= -tol`.
    pub fn coeffs_nonneg(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|&c| c >= -tol)
    }

    /// Polar form of a monic quadratic with non-real roots `r·e^{±iθ}`.
    ///
    /// Fails with [`Error::RealRoots`] when the discriminant is
    /// non-negative, and with [`Error::Domain`] when the input is not a
    /// monic quadratic.
    pub fn to_polar(&self) -> Result<PolarQuadratic, Error> {
        if self.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                actual: self.degree(),
            });
        }
        if !self.is_monic() {
            return Err(Error::Domain(format!(
                "quadratic must be monic, leading coefficient is {}",
                self.leading()
            )));
        }
        let a0 = self.coeffs[0];
        let a1 = self.coeffs[1];
        let discriminant = a1 * a1 - 4.0 * a0;
        if discriminant >= 0.0 {
            return Err(Error::RealRoots { discriminant });
        }
        let r = a0.sqrt();
        // Clamp guards roundoff when the discriminant is barely negative
        // (θ near 0 or π).
        let mut cos_theta = -a1 / (2.0 * r);
        if cos_theta > 1.0 && cos_theta < 1.0 + 1e-12 {
            cos_theta = 1.0;
        }
        if cos_theta < -1.0 && cos_theta > -1.0 - 1e-12 {
            cos_theta = -1.0;
        }
        PolarQuadratic::new(r, cos_theta.acos())
    }

    /// Positivity over (0, ∞) for a monic polynomial.
    ///
    /// Degrees 0–2 are decided from the discriminant and root signs; higher
    /// degrees go through the root finder in [`crate::composer`].
    pub fn classify_positivity(&self) -> Result<Positivity, Error> {
        if !self.is_monic() {
            return Err(Error::Domain(
                "positivity is defined for monic polynomials".into(),
            ));
        }
        match self.degree() {
            0 => Ok(Positivity::Positive),
            1 => {
                // Root is -a0; a root at exactly 0 does not break f > 0 on
                // the open ray.
                if -self.coeffs[0] > 0.0 {
                    Ok(Positivity::NotPositive)
                } else {
                    Ok(Positivity::Positive)
                }
            }
            2 => {
                let a0 = self.coeffs[0];
                let a1 = self.coeffs[1];
                let disc = a1 * a1 - 4.0 * a0;
                if disc < 0.0 {
                    return Ok(Positivity::Positive);
                }
                let largest_root = (-a1 + disc.sqrt()) / 2.0;
                if largest_root > 0.0 {
                    Ok(Positivity::NotPositive)
                } else {
                    Ok(Positivity::Positive)
                }
            }
            _ => {
                let roots = crate::composer::find_roots(&self.coeffs)?;
                let positive_real = roots.iter().any(|z| {
                    let scale = z.norm().max(1.0);
                    z.im.abs() < 1e-8 * scale && z.re > 1e-9 * scale
                });
                if positive_real {
                    Ok(Positivity::NotPositive)
                } else {
                    Ok(Positivity::Positive)
                }
            }
        }
    }
}

impl fmt::Display for Polynomial {
    /// Comma-separated ascending coefficients, e.g. `2,-2,1` for x²−2x+2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format!("{c}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let coeffs: Result<Vec<f64>, _> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect();
        match coeffs {
            Ok(c) if !c.is_empty() => Ok(Polynomial::new(c)),
            _ => Err(Error::Domain(format!(
                "cannot parse polynomial from {s:?}; expected comma-separated coefficients, ascending degree"
            ))),
        }
    }
}

/// Root pair `r·e^{±iθ}` of a monic real quadratic with non-real roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarQuadratic {
    r: f64,
    theta: f64,
}

impl PolarQuadratic {
    /// Requires `r > 0` and `θ` strictly inside (0, π).
    pub fn new(r: f64, theta: f64) -> Result<Self, Error> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!("modulus r must be positive, got {r}")));
        }
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(Error::Domain(format!(
                "angle theta must lie in (0, pi), got {theta}"
            )));
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Constant coefficient `a0 = r²` of the quadratic.
    pub fn a0(&self) -> f64 {
        self.r * self.r
    }

    /// Linear coefficient `a1 = −2r·cos θ` of the quadratic.
    pub fn a1(&self) -> f64 {
        -2.0 * self.r * self.theta.cos()
    }

    /// The monic quadratic `x² − 2r·cos(θ)x + r²`.
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(vec![self.a0(), self.a1(), 1.0])
    }
}
