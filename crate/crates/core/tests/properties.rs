//! Property and invariant sweeps over randomized inputs.
//!
//! Sampling is seeded so every run checks the same inputs.

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poincare_core::compare;
use poincare_core::composer;
use poincare_core::multiplier::{
    self, meissner, meissner_monic, optimal_degree, riggs_closed_form, riggs_determinant,
    riggs_recurrence,
};
use poincare_core::optimality::{cone_feasible, feasibility_table, refute_degree};
use poincare_core::poly::{PolarQuadratic, Polynomial, Positivity};
use poincare_core::tmatrix::{build_framework, closed_form_t, compute_t_recurrence, t_matrix};

fn pq(r: f64, theta: f64) -> PolarQuadratic {
    PolarQuadratic::new(r, theta).unwrap()
}

fn rel(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(scale).max(f64::MIN_POSITIVE)
}

/// Natural magnitude of T[k][j], for scaling relative comparisons.
fn t_scale(r: f64, theta: f64, k: usize, j: usize) -> f64 {
    r.powi(k as i32 + if j == 0 { 2 } else { 1 }) / theta.sin()
}

#[test]
fn polar_round_trip_ten_thousand() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let r = rng.gen_range(0.1..10.0);
        let theta = rng.gen_range(0.01..PI - 0.01);
        let back = pq(r, theta).to_polynomial().to_polar().unwrap();
        assert!(rel(back.r(), r, 0.0) < 1e-10, "r={r} theta={theta}");
        assert!(rel(back.theta(), theta, 0.0) < 1e-10, "r={r} theta={theta}");
    }
}

proptest! {
    #[test]
    fn multiply_commutes(
        a in prop::collection::vec(-10.0..10.0f64, 1..=21),
        b in prop::collection::vec(-10.0..10.0f64, 1..=21),
    ) {
        let (p, q) = (Polynomial::new(a), Polynomial::new(b));
        let pq_ = p.multiply(&q);
        let qp = q.multiply(&p);
        let scale = pq_.max_abs_coeff().max(1.0);
        for k in 0..pq_.coeffs().len().max(qp.coeffs().len()) {
            prop_assert!((pq_.coeff(k) - qp.coeff(k)).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn multiply_associates(
        a in prop::collection::vec(-10.0..10.0f64, 1..=15),
        b in prop::collection::vec(-10.0..10.0f64, 1..=15),
        c in prop::collection::vec(-10.0..10.0f64, 1..=15),
    ) {
        let (p, q, r) = (Polynomial::new(a), Polynomial::new(b), Polynomial::new(c));
        let left = p.multiply(&q).multiply(&r);
        let right = p.multiply(&q.multiply(&r));
        let scale = left.max_abs_coeff().max(1.0);
        for k in 0..left.coeffs().len().max(right.coeffs().len()) {
            prop_assert!((left.coeff(k) - right.coeff(k)).abs() <= 1e-12 * scale);
        }
    }
}

/// Random monic positive polynomial assembled from known factors, together
/// with the generating quadratics.
///
/// Factors are kept pairwise separated: root clusters make the expanded
/// coefficients forget the individual root positions, and no finder can
/// recover what rounding has destroyed.
fn random_positive_poly(rng: &mut ChaCha8Rng) -> (Polynomial, Vec<f64>, Vec<PolarQuadratic>) {
    'retry: loop {
        let n_quads = rng.gen_range(0..=4usize);
        let n_linear = rng.gen_range(0..=(10 - 2 * n_quads));
        if 2 * n_quads + n_linear == 0 {
            continue;
        }
        let quads: Vec<PolarQuadratic> = (0..n_quads)
            .map(|_| pq(rng.gen_range(0.3..3.0), rng.gen_range(0.15..PI - 0.05)))
            .collect();
        let roots: Vec<f64> = (0..n_linear).map(|_| rng.gen_range(-2.0..0.0)).collect();

        let mut points: Vec<(f64, f64)> = roots.iter().map(|&x| (x, 0.0)).collect();
        for q in &quads {
            points.push((q.r() * q.theta().cos(), q.r() * q.theta().sin()));
        }
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                if ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() < 0.05 {
                    continue 'retry;
                }
            }
        }

        let mut f = Polynomial::one();
        for q in &quads {
            f = f.multiply(&q.to_polynomial());
        }
        for &root in &roots {
            f = f.multiply(&Polynomial::new(vec![-root, 1.0]));
        }
        return (f, roots, quads);
    }
}

#[test]
fn positivity_closed_under_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let (f, _, _) = random_positive_poly(&mut rng);
        let (g, _, _) = random_positive_poly(&mut rng);
        assert_eq!(f.classify_positivity().unwrap(), Positivity::Positive);
        assert_eq!(g.classify_positivity().unwrap(), Positivity::Positive);
        if f.degree() + g.degree() <= 12 {
            assert_eq!(
                f.multiply(&g).classify_positivity().unwrap(),
                Positivity::Positive,
                "product of {f} and {g}"
            );
        }
    }
}

#[test]
fn t_recurrence_matches_closed_form_and_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..1000 {
        let r = rng.gen_range(0.1..10.0);
        let theta = rng.gen_range(0.01..PI - 0.01);
        let s = rng.gen_range(0..=50usize);
        let fm = build_framework(&pq(r, theta), s);
        let t = compute_t_recurrence(&fm);
        let (a0, a1) = (pq(r, theta).a0(), pq(r, theta).a1());
        for k in 0..=s {
            for j in 0..2 {
                let closed = closed_form_t(&pq(r, theta), k, j);
                let scale = t_scale(r, theta, k, j);
                assert!(
                    rel(t.entry(k, j), closed, scale) < 1e-8,
                    "closed form at r={r} theta={theta} k={k} j={j}"
                );
                // Defining system R·T = L.
                let mut lhs = t.entry(k, j);
                if k >= 1 {
                    lhs += a1 * t.entry(k - 1, j);
                }
                if k >= 2 {
                    lhs += a0 * t.entry(k - 2, j);
                }
                assert!(
                    rel(lhs, fm.l()[k][j], scale) < 1e-9,
                    "system at r={r} theta={theta} k={k} j={j}"
                );
            }
        }
    }
}

#[test]
fn t_sign_pattern_at_optimal_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..500 {
        let r = rng.gen_range(0.1..10.0);
        let theta = rng.gen_range(0.05..PI - 0.01);
        let s = optimal_degree(theta).unwrap();
        let t = t_matrix(&pq(r, theta), s);
        let slack0 = 1e-9 * t_scale(r, theta, s, 0);
        let slack1 = 1e-9 * t_scale(r, theta, s, 1);
        assert!(t.entry(s, 0) >= -slack0, "T[s][0] at r={r} theta={theta}");
        assert!(t.entry(s, 1) >= -slack1, "T[s][1] at r={r} theta={theta}");
        // Below the optimal degree the second column is strictly negative.
        if s >= 1 {
            let t = t_matrix(&pq(r, theta), s - 1);
            for k in 0..s {
                assert!(t.entry(k, 1) < 0.0, "T[{k}][1] at r={r} theta={theta}");
            }
        }
    }
}

#[test]
fn riggs_routes_agree_three_ways() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..1000 {
        let r = rng.gen_range(0.1..10.0);
        let theta = rng.gen_range(0.0605..PI - 0.01); // keeps s <= 50
        let by_rec = riggs_recurrence(&pq(r, theta)).unwrap();
        let by_det = riggs_determinant(&pq(r, theta)).unwrap();
        let by_closed = riggs_closed_form(&pq(r, theta)).unwrap();
        let scale = by_rec.g.max_abs_coeff();
        for k in 0..=by_rec.s {
            assert!(
                rel(by_rec.g.coeff(k), by_det.g.coeff(k), scale) < 1e-8,
                "det k={k} r={r} theta={theta}"
            );
            assert!(
                rel(by_rec.g.coeff(k), by_closed.g.coeff(k), scale) < 1e-8,
                "closed k={k} r={r} theta={theta}"
            );
        }
    }
}

#[test]
fn certificates_nonneg_and_unit_c() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..500 {
        let r = rng.gen_range(0.1..10.0);
        let theta = rng.gen_range(0.0605..PI - 0.01);
        let q = pq(r, theta);
        for make in [riggs_recurrence, riggs_determinant, riggs_closed_form, meissner, meissner_monic] {
            let cert = make(&q).unwrap();
            assert!(cert.product.coeffs_nonneg(cert.tol));
            assert!(multiplier::verify(&cert).passed);
        }
        let cert = riggs_recurrence(&q).unwrap();
        // c cancels out of b·a products; 1e-9 is relative to those.
        let unit_tol =
            1e-9 * cert.g.max_abs_coeff().max(1.0) * q.to_polynomial().max_abs_coeff().max(1.0);
        for (i, &c) in cert.c.iter().enumerate() {
            let want = if i == cert.s { 1.0 } else { 0.0 };
            assert!((c - want).abs() < unit_tol, "c[{i}] at r={r} theta={theta}");
        }
        // All Riggs coefficients are strictly positive at the optimal
        // degree, where (j+1)θ < π for every j.
        for k in 0..=cert.s {
            assert!(cert.g.coeff(k) > 0.0, "b[{k}] at r={r} theta={theta}");
        }
    }
}

#[test]
fn meissner_monic_is_scaled_meissner() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..500 {
        let r = rng.gen_range(0.1..10.0);
        let theta = rng.gen_range(0.0605..PI - 0.01);
        let plain = meissner(&pq(r, theta)).unwrap();
        let monic = meissner_monic(&pq(r, theta)).unwrap();
        let lead = plain.g.leading();
        for k in 0..=plain.s {
            let want = plain.g.coeff(k) / lead;
            assert!(
                rel(monic.g.coeff(k), want, 1.0) < 1e-10,
                "k={k} r={r} theta={theta}"
            );
        }
    }
}

#[test]
fn optimal_degree_zero_exactly_for_obtuse() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..2000 {
        let theta = rng.gen_range(0.01..PI - 0.001);
        let s = optimal_degree(theta).unwrap();
        assert_eq!(s == 0, theta >= PI / 2.0, "theta={theta}");
    }
}

#[test]
fn cone_search_agrees_with_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..1000 {
        let theta = rng.gen_range(0.01..PI - 0.01);
        let q = pq(1.0, theta);
        let s = optimal_degree(theta).unwrap();
        let table = feasibility_table(&q, s + 3);
        // Infeasible strictly below s, feasible from s on (monotone).
        for &(t, feasible) in &table {
            assert_eq!(feasible, t >= s, "t={t} theta={theta}");
        }
    }
}

#[test]
fn refutation_below_optimal_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for _ in 0..500 {
        let r = rng.gen_range(0.1..10.0);
        let theta = rng.gen_range(0.02..PI / 2.0 - 0.01);
        let q = pq(r, theta);
        let s = optimal_degree(theta).unwrap();
        for t in 0..s {
            let witness = refute_degree(&q, t).unwrap();
            assert_eq!(witness.negative_column.len(), t + 1);
            assert!(witness.negative_column.iter().all(|&v| v < 0.0));
            // Refutation implies the cone oracle agrees.
            assert!(!cone_feasible(&t_matrix(&q, t)), "t={t} theta={theta}");
        }
    }
}

#[test]
fn coefficient_ordering_riggs_below_meissner() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..1000 {
        let r = rng.gen_range(0.25..4.0);
        let theta = rng.gen_range(0.02..PI / 2.0 - 1e-4);
        let q = pq(r, theta);
        let g_r = riggs_recurrence(&q).unwrap().g;
        let g_m = meissner_monic(&q).unwrap().g;
        let scale = g_r.max_abs_coeff().max(g_m.max_abs_coeff()).max(1.0);
        for i in 0..=g_r.degree() {
            assert!(
                g_r.coeff(i) <= g_m.coeff(i) + 1e-9 * scale,
                "i={i} r={r} theta={theta}"
            );
        }
    }
}

#[test]
fn c_vectors_ordered_and_meissner_entry_nonneg() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..500 {
        let r = rng.gen_range(0.25..4.0);
        let theta = rng.gen_range(0.02..PI / 2.0 - 1e-4);
        let q = pq(r, theta);
        let s = optimal_degree(theta).unwrap();
        let c_m = compare::meissner_c_closed(&q).unwrap();
        assert!(c_m[s - 1] >= 0.0, "c_M[s-1] at r={r} theta={theta}");
        let rep = compare::report(&q).unwrap();
        assert!(rep.ordering_holds, "r={r} theta={theta}");
        // The c entries cancel out of b·a products, so tolerances scale
        // with those products.
        let g_m = meissner_monic(&q).unwrap().g;
        let c_tol = 1e-9 * g_m.max_abs_coeff().max(1.0) * q.to_polynomial().max_abs_coeff().max(1.0);
        for i in 0..=s {
            assert!(rep.c_r[i] <= rep.c_m[i] + c_tol, "i={i} r={r} theta={theta}");
            // Entries other than s-1 agree between the two vectors.
            if i != s - 1 {
                assert!(
                    (rep.c_r[i] - rep.c_m[i]).abs() <= c_tol,
                    "i={i} r={r} theta={theta}"
                );
            }
        }
    }
}

#[test]
fn equality_criterion_at_boundary_angles() {
    for k in 3..=40usize {
        let rep = compare::report(&pq(1.0, PI / k as f64)).unwrap();
        assert!(rep.equal, "theta=pi/{k}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    for _ in 0..200 {
        // Generic interior angles are unequal cases.
        let s = rng.gen_range(1..20usize);
        let w = rng.gen_range(0.05..0.95);
        let theta = PI / (s as f64 + 2.0) * (1.0 - w) + PI / (s as f64 + 1.0) * w;
        let rep = compare::report(&pq(1.0, theta)).unwrap();
        assert!(!rep.equal, "theta={theta}");
    }
}

#[test]
fn ratio_independent_of_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    for _ in 0..200 {
        let theta = rng.gen_range(0.05..PI / 2.0 - 0.01);
        let s = optimal_degree(theta).unwrap();
        let i = rng.gen_range(0..=s);
        let reference = compare::ratio(theta, i);
        for r in [0.5, 1.0, 7.0] {
            let q = pq(r, theta);
            let g_r = riggs_recurrence(&q).unwrap().g;
            let g_m = meissner_monic(&q).unwrap().g;
            if g_m.coeff(i).abs() > 1e-12 {
                let by_division = g_r.coeff(i) / g_m.coeff(i);
                assert!(
                    (reference - by_division).abs() < 1e-9 * reference.abs().max(1.0),
                    "r={r} theta={theta} i={i}"
                );
            }
        }
    }
}

#[test]
fn composed_certificates_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(89);
    for _ in 0..100 {
        let (f, roots, quads) = random_positive_poly(&mut rng);
        let scale = f.max_abs_coeff().max(1.0);

        let fact = composer::factor(&f).unwrap();
        assert!(
            fact.residual_error <= 1e-7 * scale,
            "round trip for {f} (residual {})",
            fact.residual_error
        );
        let found_linear: usize = fact.linear_factors.iter().map(|l| l.multiplicity).sum();
        let found_quads: usize = fact.quadratic_factors.iter().map(|q| q.multiplicity).sum();
        assert_eq!(found_linear, roots.len(), "linear count for {f}");
        assert_eq!(found_quads, quads.len(), "quadratic count for {f}");

        let cert = composer::compose_multiplier(&f).unwrap();
        assert!(multiplier::verify(&cert).passed);
        assert!(cert.product.coeffs_nonneg(1e-7 * scale.max(cert.g.max_abs_coeff())));

        // Degree additivity over the factors that need a multiplier.
        let expected: usize = quads
            .iter()
            .filter(|q| q.theta() < PI / 2.0)
            .map(|q| optimal_degree(q.theta()).unwrap())
            .sum();
        assert_eq!(cert.s, expected, "degree additivity for {f}");
    }
}
