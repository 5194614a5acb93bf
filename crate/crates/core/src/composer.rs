//! Multipliers for positive polynomials of any degree.
//!
//! A monic positive polynomial splits over ℝ into linear factors with
//! non-positive roots and quadratics with non-real roots. Factors whose
//! roots sit at angle `θ ≥ π/2` (and every linear factor) already have
//! non-negative coefficients, so a multiplier for the whole polynomial is
//! the product of per-factor optimal multipliers over the remaining
//! quadratics. The composed degree is *not* claimed minimal; certificates
//! carry `optimality: unknown`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::multiplier::{certify, riggs_recurrence, MultiplierCertificate, Optimality, Provenance};
use crate::poly::{PolarQuadratic, Polynomial, Positivity};
use crate::Error;

const MAX_ITERATIONS: usize = 200;
const STEP_TOLERANCE: f64 = 1e-12;

/// A real root with multiplicity.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LinearFactor {
    pub root: f64,
    pub multiplicity: usize,
}

/// A conjugate root pair with multiplicity.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadraticFactor {
    pub quadratic: PolarQuadratic,
    pub multiplicity: usize,
}

/// Factorization of a monic polynomial into real linear and quadratic
/// factors, with the coefficientwise reassembly error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Factorization {
    pub linear_factors: Vec<LinearFactor>,
    pub quadratic_factors: Vec<QuadraticFactor>,
    pub residual_error: f64,
}

impl Factorization {
    /// Multiply the factors back out.
    pub fn reassemble(&self) -> Polynomial {
        let mut p = Polynomial::one();
        for lf in &self.linear_factors {
            let factor = Polynomial::new(vec![-lf.root, 1.0]);
            for _ in 0..lf.multiplicity {
                p = p.multiply(&factor);
            }
        }
        for qf in &self.quadratic_factors {
            let factor = qf.quadratic.to_polynomial();
            for _ in 0..qf.multiplicity {
                p = p.multiply(&factor);
            }
        }
        p
    }
}

/// All complex roots of the polynomial, by simultaneous Aberth–Ehrlich
/// iteration. Deterministic: initial guesses sit on a circle of radius
/// `1 + max|coeff|` with a fixed angular offset, and the iteration stops
/// once every relative step falls below `1e-12`.
pub(crate) fn find_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, Error> {
    let trimmed = Polynomial::new(coeffs.to_vec());
    let n = trimmed.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = trimmed.leading();
    let monic: Vec<f64> = trimmed.coeffs().iter().map(|c| c / lead).collect();
    let deriv: Vec<f64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect();

    let radius = 1.0 + monic.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            // Fixed offset breaks root-configuration symmetries.
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let eval = |cs: &[f64], x: Complex64| -> Complex64 {
        cs.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    };
    // Below this, |p(z)| is indistinguishable from evaluation roundoff and
    // the iterate cannot improve; treat the root as converged.
    let noise_floor = |x: f64| -> f64 {
        let abs_eval = monic.iter().rev().fold(0.0_f64, |acc, &c| acc * x + c.abs());
        4.0 * n as f64 * f64::EPSILON * abs_eval
    };

    let mut max_step = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        max_step = 0.0;
        let mut all_at_floor = true;
        for k in 0..n {
            let p = eval(&monic, z[k]);
            if p.norm() > noise_floor(z[k].norm()) {
                all_at_floor = false;
            } else if p.norm() == 0.0 {
                continue;
            }
            let dp = eval(&deriv, z[k]);
            if dp.norm() == 0.0 {
                // Sitting on a critical point; nudge off it.
                let nudge = 1e-3 * (1.0 + z[k].norm());
                z[k] += Complex64::new(nudge, 1e-3);
                max_step = f64::INFINITY;
                continue;
            }
            let w = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let delta = if denom.norm() == 0.0 { w } else { w / denom };
            z[k] -= delta;
            max_step = max_step.max(delta.norm() / z[k].norm().max(1.0));
        }
        // Done when steps are tiny, or when every residual sits at the
        // evaluation noise floor and no further digit can be gained.
        if max_step < STEP_TOLERANCE || all_at_floor {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        residual: max_step,
        partial: z,
    })
}

/// Factor a monic polynomial of degree >= 1 into real linear and
/// quadratic factors.
///
/// Roots with `|imag| < 1e-8·max(1, |root|)` count as real; conjugate
/// pairs become [`PolarQuadratic`] values. Repeated roots are recovered by
/// clustering within `1e-6`, which is conservative: genuinely distinct
/// roots closer than that are merged into one factor of higher
/// multiplicity.
pub fn factor(f: &Polynomial) -> Result<Factorization, Error> {
    if !f.is_monic() {
        return Err(Error::Domain("factor() expects a monic polynomial".into()));
    }
    if f.degree() == 0 {
        return Err(Error::Domain("factor() expects degree >= 1".into()));
    }
    let roots = find_roots(f.coeffs())?;

    let mut reals: Vec<f64> = Vec::new();
    let mut upper: Vec<Complex64> = Vec::new();
    let mut lower: Vec<Complex64> = Vec::new();
    for z in roots {
        let scale = z.norm().max(1.0);
        if z.im.abs() < 1e-8 * scale {
            reals.push(z.re);
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    // Real coefficients force conjugate symmetry; if rounding split a pair
    // across the threshold, demote the weakest iterates to real.
    while upper.len() != lower.len() {
        let longer = if upper.len() > lower.len() {
            &mut upper
        } else {
            &mut lower
        };
        let idx = longer
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.im.abs().total_cmp(&b.1.im.abs()))
            .map(|(i, _)| i)
            .expect("length mismatch implies non-empty");
        let z = longer.remove(idx);
        reals.push(z.re);
    }

    let linear_factors = cluster_reals(&mut reals);
    let mut pairs: Vec<(f64, f64)> = upper
        .into_iter()
        .map(|z| (z.norm(), z.arg()))
        .collect();
    let quadratic_factors = cluster_quadratics(&mut pairs)?;

    let mut factorization = Factorization {
        linear_factors,
        quadratic_factors,
        residual_error: 0.0,
    };
    let rebuilt = factorization.reassemble();
    let len = rebuilt.coeffs().len().max(f.coeffs().len());
    factorization.residual_error = (0..len)
        .map(|k| (rebuilt.coeff(k) - f.coeff(k)).abs())
        .fold(0.0, f64::max);
    Ok(factorization)
}

fn cluster_reals(values: &mut Vec<f64>) -> Vec<LinearFactor> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<LinearFactor> = Vec::new();
    for &v in values.iter() {
        match out.last_mut() {
            Some(last) if (v - last.root).abs() <= 1e-6 * last.root.abs().max(1.0) => {
                // Running mean keeps the representative centered.
                let m = last.multiplicity as f64;
                last.root = (last.root * m + v) / (m + 1.0);
                last.multiplicity += 1;
            }
            _ => out.push(LinearFactor {
                root: v,
                multiplicity: 1,
            }),
        }
    }
    out
}

fn cluster_quadratics(pairs: &mut Vec<(f64, f64)>) -> Result<Vec<QuadraticFactor>, Error> {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut out: Vec<QuadraticFactor> = Vec::new();
    for &(r, theta) in pairs.iter() {
        let merged = out.last_mut().filter(|last| {
            (r - last.quadratic.r()).abs() <= 1e-6 * last.quadratic.r().max(1.0)
                && (theta - last.quadratic.theta()).abs() <= 1e-6
        });
        match merged {
            Some(last) => {
                let m = last.multiplicity as f64;
                let r_new = (last.quadratic.r() * m + r) / (m + 1.0);
                let theta_new = (last.quadratic.theta() * m + theta) / (m + 1.0);
                last.quadratic = PolarQuadratic::new(r_new, theta_new)?;
                last.multiplicity += 1;
            }
            None => out.push(QuadraticFactor {
                quadratic: PolarQuadratic::new(r, theta)?,
                multiplicity: 1,
            }),
        }
    }
    Ok(out)
}

/// Poincaré multiplier for any monic positive polynomial: the product of
/// optimal multipliers over the quadratic factors with `θ < π/2`.
///
/// The certificate tolerance is `1e-7` scaled, absorbing factorization
/// error, and `optimality` is `Unknown`: per-factor degrees are optimal
/// but nothing is claimed about their sum.
pub fn compose_multiplier(f: &Polynomial) -> Result<MultiplierCertificate, Error> {
    if f.classify_positivity()? == Positivity::NotPositive {
        return Err(Error::NotPositive);
    }
    let mut g = Polynomial::one();
    if f.degree() >= 1 {
        let factorization = factor(f)?;
        for qf in &factorization.quadratic_factors {
            if qf.quadratic.theta() < std::f64::consts::FRAC_PI_2 {
                let per_factor = riggs_recurrence(&qf.quadratic)?;
                for _ in 0..qf.multiplicity {
                    g = g.multiply(&per_factor.g);
                }
            }
        }
    }
    let tol = 1e-7
        * 1.0_f64
            .max(f.max_abs_coeff())
            .max(g.max_abs_coeff());
    certify(
        f.clone(),
        g,
        Provenance::RiggsRecurrence,
        true,
        Optimality::Unknown,
        Some(tol),
    )
}
