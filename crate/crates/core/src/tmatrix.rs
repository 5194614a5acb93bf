//! The `[L | R]` block structure behind the multiplier search and the
//! T-matrix `T = R⁻¹L`.
//!
//! For a monic quadratic `f = x² + a1·x + a0`, the coefficients of `g·f`
//! are `b·[L | R]` where `b` is the coefficient row of `g`, `L` holds the
//! first two columns of the banded product matrix and `R` the remaining
//! unit-lower-triangular band. Solving `R·T = L` by forward substitution
//! gives the (s+1)×2 matrix whose sign pattern governs existence and
//! optimality of a degree-s multiplier. Each entry also has a closed
//! trigonometric form:
//!
//! ```text
//! T[k][0] =  r^(k+2) · sin((k+1)θ) / sin θ
//! T[k][1] = −r^(k+1) · sin((k+2)θ) / sin θ
//! ```

use crate::poly::PolarQuadratic;

/// Hard cap on the multiplier degree. Entries grow like `r^(s+2)`, so far
/// beyond this the arithmetic overflows `f64` for any `r > 1` anyway.
pub const MAX_DEGREE: usize = 10_000;

/// The matrices `L` (size (s+1)×2) and `R` (size (s+1)×(s+1)) for a given
/// quadratic and degree bound `s`.
///
/// `R` is unit lower triangular with `a1` on the first subdiagonal and `a0`
/// on the second, so it is stored implicitly; [`FrameworkMatrices::r_entry`]
/// and [`FrameworkMatrices::r_dense`] materialize it on demand.
#[derive(Debug, Clone)]
pub struct FrameworkMatrices {
    s: usize,
    quadratic: PolarQuadratic,
    l: Vec<[f64; 2]>,
}

impl FrameworkMatrices {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn quadratic(&self) -> &PolarQuadratic {
        &self.quadratic
    }

    /// Rows of `L`: `(a0, a1)`, `(0, a0)`, then zeros.
    pub fn l(&self) -> &[[f64; 2]] {
        &self.l
    }

    pub fn r_entry(&self, row: usize, col: usize) -> f64 {
        if row == col {
            1.0
        } else if row == col + 1 {
            self.quadratic.a1()
        } else if row == col + 2 {
            self.quadratic.a0()
        } else {
            0.0
        }
    }

    pub fn r_dense(&self) -> Vec<Vec<f64>> {
        let n = self.s + 1;
        (0..n)
            .map(|i| (0..n).map(|j| self.r_entry(i, j)).collect())
            .collect()
    }
}

/// Build `L` and `R` for the quadratic with roots `r·e^{±iθ}`.
pub fn build_framework(pq: &PolarQuadratic, s: usize) -> FrameworkMatrices {
    assert!(s <= MAX_DEGREE, "degree bound {s} exceeds {MAX_DEGREE}");
    let (a0, a1) = (pq.a0(), pq.a1());
    let mut l = vec![[0.0, 0.0]; s + 1];
    l[0] = [a0, a1];
    if s >= 1 {
        l[1] = [0.0, a0];
    }
    FrameworkMatrices {
        s,
        quadratic: *pq,
        l,
    }
}

/// The solution `T = R⁻¹L`, rows indexed `k = 0..=s`.
#[derive(Debug, Clone)]
pub struct TMatrix {
    s: usize,
    quadratic: PolarQuadratic,
    rows: Vec<[f64; 2]>,
}

impl TMatrix {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn quadratic(&self) -> &PolarQuadratic {
        &self.quadratic
    }

    pub fn rows(&self) -> &[[f64; 2]] {
        &self.rows
    }

    pub fn entry(&self, k: usize, j: usize) -> f64 {
        self.rows[k][j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        assert!(j < 2);
        self.rows.iter().map(|row| row[j]).collect()
    }

    /// Cross-check every entry against the closed trigonometric form.
    ///
    /// Returns the worst offender when the relative gap exceeds `1e-6`.
    /// A large gap means θ sits near a sine zero, where the forward
    /// recurrence cancels catastrophically; callers should surface this
    /// rather than trust the numbers silently.
    pub fn consistency(&self) -> Result<(), TMatrixDiagnostic> {
        let mut worst: Option<TMatrixDiagnostic> = None;
        for (k, row) in self.rows.iter().enumerate() {
            for (j, &recurrence) in row.iter().enumerate() {
                let closed = closed_form_t(&self.quadratic, k, j);
                let relative = relative_gap(recurrence, closed, entry_scale(&self.quadratic, k, j));
                if relative > 1e-6 && worst.as_ref().map_or(true, |w| relative > w.relative) {
                    worst = Some(TMatrixDiagnostic {
                        k,
                        j,
                        recurrence,
                        closed,
                        relative,
                    });
                }
            }
        }
        match worst {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }
}

/// Recurrence/closed-form disagreement report from [`TMatrix::consistency`].
#[derive(Debug, Clone, Copy)]
pub struct TMatrixDiagnostic {
    pub k: usize,
    pub j: usize,
    pub recurrence: f64,
    pub closed: f64,
    pub relative: f64,
}

impl std::fmt::Display for TMatrixDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "T[{}][{}] recurrence {:e} vs closed form {:e} (relative gap {:.3e}); \
             theta is near a sine zero and cancellation grows",
            self.k, self.j, self.recurrence, self.closed, self.relative
        )
    }
}

/// Natural magnitude of `T[k][j]`, used to scale relative comparisons.
pub(crate) fn entry_scale(pq: &PolarQuadratic, k: usize, j: usize) -> f64 {
    let power = if j == 0 { k as i32 + 2 } else { k as i32 + 1 };
    pq.r().powi(power) / pq.theta().sin()
}

pub(crate) fn relative_gap(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(scale).max(f64::MIN_POSITIVE)
}

/// Solve `R·T = L` by banded forward substitution, O(s) per column.
///
/// Row k of the system reads `a0·T[k−2] + a1·T[k−1] + T[k] = L[k]`, so each
/// entry costs two multiply-adds; `R` is never inverted.
pub fn compute_t_recurrence(fm: &FrameworkMatrices) -> TMatrix {
    let (a0, a1) = (fm.quadratic.a0(), fm.quadratic.a1());
    let l = fm.l();
    let mut rows = vec![[0.0, 0.0]; fm.s + 1];
    for k in 0..=fm.s {
        for j in 0..2 {
            let mut v = l[k][j];
            if k >= 1 {
                v -= a1 * rows[k - 1][j];
            }
            if k >= 2 {
                v -= a0 * rows[k - 2][j];
            }
            rows[k][j] = v;
        }
    }
    TMatrix {
        s: fm.s,
        quadratic: fm.quadratic,
        rows,
    }
}

/// Closed trigonometric form of `T[k][j]`.
pub fn closed_form_t(pq: &PolarQuadratic, k: usize, j: usize) -> f64 {
    assert!(j < 2, "T has exactly two columns");
    let (r, theta) = (pq.r(), pq.theta());
    let k = k as i32;
    match j {
        0 => r.powi(k + 2) * ((k as f64 + 1.0) * theta).sin() / theta.sin(),
        _ => -r.powi(k + 1) * ((k as f64 + 2.0) * theta).sin() / theta.sin(),
    }
}

/// Build the framework and solve for `T` in one step.
pub fn t_matrix(pq: &PolarQuadratic, s: usize) -> TMatrix {
    compute_t_recurrence(&build_framework(pq, s))
}
