//! Why no smaller multiplier degree works.
//!
//! Two independent routes. The sign argument ([`refute_degree`]) shows that
//! for `t` below the optimal degree every entry of the second T-column is
//! strictly negative, so no non-negative combination of rows can reach the
//! closed first quadrant. The cone oracle ([`cone_feasible`]) decides
//! feasibility geometrically for *any* T-matrix: a degree-t multiplier
//! exists exactly when the conic hull of the rows of `T_t` meets the closed
//! quadrant in a nonzero point. With two columns the hull lives in the
//! plane, so the test reduces to sign checks on 2×2 cross products — no LP
//! solver involved.

use serde::{Deserialize, Serialize};

use crate::multiplier::optimal_degree;
use crate::poly::PolarQuadratic;
use crate::tmatrix::{t_matrix, TMatrix};
use crate::Error;

/// How an [`InfeasibilityWitness`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessMethod {
    SignArgument,
    ConeOracle,
}

/// Proof that no multiplier of degree `t` exists: all of `T[k][1]` for
/// `k = 0..=t` are strictly negative. Empty when the optimal degree is
/// already 0 and there is nothing below it to refute.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfeasibilityWitness {
    pub t: usize,
    pub negative_column: Vec<f64>,
    pub method: WitnessMethod,
}

/// Refute degree `t` by the sign argument.
///
/// An entry only counts as negative below `-1e-12·r^(k+1)`, separating
/// proof-grade negativity from roundoff; anything weaker is reported as
/// [`Error::NotRefutable`] and the caller must treat the degree as
/// undecided (it usually means `t >= s`).
pub fn refute_degree(pq: &PolarQuadratic, t: usize) -> Result<InfeasibilityWitness, Error> {
    let s = optimal_degree(pq.theta())?;
    if s == 0 {
        // Nothing below degree 0; the trivial witness has no rows.
        return Ok(InfeasibilityWitness {
            t,
            negative_column: Vec::new(),
            method: WitnessMethod::SignArgument,
        });
    }
    let tm = t_matrix(pq, t);
    let column = tm.column(1);
    for (k, &value) in column.iter().enumerate() {
        let strictness = 1e-12 * pq.r().powi(k as i32 + 1);
        if value >= -strictness {
            return Err(Error::NotRefutable { t, k, value });
        }
    }
    Ok(InfeasibilityWitness {
        t,
        negative_column: column,
        method: WitnessMethod::SignArgument,
    })
}

/// Does some non-negative, nonzero combination of the rows of `T` land in
/// the closed first quadrant (excluding the origin)?
pub fn cone_feasible(t: &TMatrix) -> bool {
    cone_feasible_rows(t.rows())
}

pub(crate) fn cone_feasible_rows(rows: &[[f64; 2]]) -> bool {
    // Snap entries that are zero up to roundoff, then reason exactly.
    let rays: Vec<[f64; 2]> = rows
        .iter()
        .filter_map(|&[x, y]| {
            let scale = x.abs().max(y.abs());
            if scale == 0.0 {
                return None;
            }
            let snap = 1e-12 * scale;
            Some([
                if x.abs() <= snap { 0.0 } else { x },
                if y.abs() <= snap { 0.0 } else { y },
            ])
        })
        .filter(|&[x, y]| x != 0.0 || y != 0.0)
        .collect();

    if rays.iter().any(|&[x, y]| x >= 0.0 && y >= 0.0) {
        return true;
    }

    // By Carathéodory in the plane, any hull point is a combination of at
    // most two rays, and two closed convex cones meet beyond the origin
    // only if a generator of one lies in the other. No ray is in the
    // quadrant (checked above), so test the quadrant's generators (1,0)
    // and (0,1) against every two-ray cone.
    let cross = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
    let in_cone = |u: [f64; 2], v: [f64; 2], d: [f64; 2]| -> bool {
        // cross(u, v) > 0 required: v lies counterclockwise of u by < π.
        cross(u, d) >= 0.0 && cross(d, v) >= 0.0
    };
    let axes = [[1.0, 0.0], [0.0, 1.0]];
    for (i, &u) in rays.iter().enumerate() {
        for &v in &rays[i + 1..] {
            let c = cross(u, v);
            let (u, v) = if c > 0.0 { (u, v) } else { (v, u) };
            if c != 0.0 && axes.iter().any(|&d| in_cone(u, v, d)) {
                return true;
            }
        }
    }
    false
}

/// Smallest `t <= t_max` whose T-matrix passes the cone oracle.
pub fn minimal_degree_search(pq: &PolarQuadratic, t_max: usize) -> Result<usize, Error> {
    let tm = t_matrix(pq, t_max);
    for t in 0..=t_max {
        if cone_feasible_rows(&tm.rows()[..=t]) {
            return Ok(t);
        }
    }
    Err(Error::SearchExhausted { t_max })
}

/// Cone-oracle feasibility for every degree `0..=t_max`, in order.
pub fn feasibility_table(pq: &PolarQuadratic, t_max: usize) -> Vec<(usize, bool)> {
    let tm = t_matrix(pq, t_max);
    (0..=t_max)
        .map(|t| (t, cone_feasible_rows(&tm.rows()[..=t])))
        .collect()
}
