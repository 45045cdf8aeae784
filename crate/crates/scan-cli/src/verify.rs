//! The invariant battery behind `rotor-scan verify`.
//!
//! One outcome row per check, aggregated over all spaces `l <= l_max` and
//! the sampled shift / mode grids. Checks of the algebraic-identity class
//! use the caller-supplied tolerance (default 1e-12); structurally different
//! thresholds (modulus exactness, diagonal vanishing, quadrature agreement,
//! divergence and order windows) are pinned.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotor_phase::finite::{FiniteSpace, ShiftParam};
use rotor_phase::infinite::{self, QuadratureSpec, WindingFunction};
use rotor_phase::limits::ShiftSchedule;
use rotor_phase::linalg::{commutator, max_abs_diff, max_abs_diff_vec, Matrix};
use serde::Serialize;

use crate::report::fmt_sci;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub check_name: &'static str,
    pub pass: bool,
    pub worst_deviation: f64,
    pub context: String,
}

pub const VERIFY_HEADER: &str = "check_name,status,worst_deviation,context";

fn outcome(name: &'static str, worst: f64, threshold: f64, grid: &str) -> VerifyOutcome {
    VerifyOutcome {
        check_name: name,
        pass: worst <= threshold,
        worst_deviation: worst,
        context: format!("{grid}; tol {threshold:e}"),
    }
}

fn shift(s: f64) -> ShiftParam {
    ShiftParam::new(s).expect("grid shifts lie in [0, 1]")
}

const S_COARSE: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const S_QUAD: [f64; 4] = [0.1, 0.25, 0.5, 0.9];

fn s_tenths() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

/// Run every invariant of the finite and infinite modules for `l <= l_max`.
pub fn run_verify(l_max: u32, tol: f64) -> Vec<VerifyOutcome> {
    vec![
        conjugate_basis_modulus(l_max),
        phase_completeness(l_max, tol),
        shifted_completeness(l_max, tol),
        route_equality(l_max, tol),
        shift_unitarity(l_max, tol),
        commutator_closed_form(l_max, tol),
        commutator_diagonal(l_max),
        shifted_periodicity(l_max),
        r_element_consistency(l_max, tol),
        hermiticity(l_max, tol),
        limit_order_case_i(l_max),
        naive_divergence_case_ii(l_max),
        overlap_quadrature(),
        phi_element_quadrature(),
        r_element_quadrature(),
        defect_quadrature(),
        overlap_translation(),
        defect_equal_windings(),
        paradox_resolution(),
        infinite_limit_order(),
    ]
}

pub fn all_pass(outcomes: &[VerifyOutcome]) -> bool {
    outcomes.iter().all(|o| o.pass)
}

fn conjugate_basis_modulus(l_max: u32) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let expected = 1.0 / (space.dim() as f64).sqrt();
        for n in 0..space.dim() {
            let v = space.phase_state(n).expect("index in range");
            for i in 0..space.dim() {
                worst = worst.max((v[i].norm() - expected).abs());
            }
        }
    }
    outcome(
        "finite_conjugate_basis_modulus",
        worst,
        1e-15,
        &format!("l <= {l_max}; all (n; m)"),
    )
}

fn phase_completeness(l_max: u32, tol: f64) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let d = space.dim();
        let mut sum = Matrix::zeros(d, d);
        for n in 0..d {
            let v = space.phase_state(n).expect("index in range");
            sum.accumulate_dyad(Complex64::new(1.0, 0.0), &v, &v);
        }
        worst = worst.max(max_abs_diff(&sum, &Matrix::identity(d)));
    }
    outcome(
        "finite_phase_completeness",
        worst,
        tol,
        &format!("l <= {l_max}"),
    )
}

fn shifted_completeness(l_max: u32, tol: f64) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let d = space.dim();
        for &s in &S_COARSE {
            let mut sum = Matrix::zeros(d, d);
            for m in -space.l()..=space.l() {
                let v = space.shifted_state((m - 1) as f64 + s);
                sum.accumulate_dyad(Complex64::new(1.0, 0.0), &v, &v);
            }
            worst = worst.max(max_abs_diff(&sum, &Matrix::identity(d)));
        }
    }
    outcome(
        "finite_shifted_completeness",
        worst,
        tol,
        &format!("l <= {l_max}; s in {{0 0.25 0.5 0.75 1}}"),
    )
}

fn route_equality(l_max: u32, tol: f64) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        for &s in &s_tenths() {
            let sp = shift(s);
            worst = worst.max(max_abs_diff(
                &space.shift_unitary_sum(sp),
                &space.shift_unitary_exp(sp),
            ));
        }
    }
    outcome(
        "finite_route_equality",
        worst,
        tol,
        &format!("l <= {l_max}; s grid 0..1 step 0.1"),
    )
}

fn shift_unitarity(l_max: u32, tol: f64) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let d = space.dim();
        for &s in &s_tenths() {
            let u = space.shift_unitary_exp(shift(s));
            let gram = u.adjoint().matmul(&u);
            worst = worst.max(max_abs_diff(&gram, &Matrix::identity(d)));
        }
    }
    outcome(
        "finite_shift_unitarity",
        worst,
        tol,
        &format!("l <= {l_max}; s grid 0..1 step 0.1"),
    )
}

fn commutator_closed_form(l_max: u32, tol: f64) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let closed = space.commutator_closed_form();
        let direct = commutator(&space.phase_operator(), &space.lz_operator());
        worst = worst.max(max_abs_diff(&closed.matrix, &direct));
    }
    outcome(
        "finite_commutator_closed_form",
        worst,
        tol,
        &format!("l <= {l_max}"),
    )
}

fn commutator_diagonal(l_max: u32) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let direct = commutator(&space.phase_operator(), &space.lz_operator());
        for i in 0..space.dim() {
            worst = worst.max(direct[(i, i)].norm());
        }
    }
    outcome(
        "finite_commutator_diagonal",
        worst,
        1e-13,
        &format!("l <= {l_max}"),
    )
}

fn shifted_periodicity(l_max: u32) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        for &mu in &[0.5, -1.25, 2.8] {
            let a = space.shifted_state(mu);
            let b = space.shifted_state(mu + space.dim() as f64);
            worst = worst.max(max_abs_diff_vec(&a, &b));
        }
    }
    outcome(
        "finite_shifted_periodicity",
        worst,
        1e-13,
        &format!("l <= {l_max}; mu in {{0.5 -1.25 2.8}}"),
    )
}

fn r_element_consistency(l_max: u32, tol: f64) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        for &s in &[0.01, 0.37, 1.0] {
            let sp = shift(s);
            let r = space.r_matrix(sp);
            for n in -space.l()..=space.l() {
                for k in -space.l()..=space.l() {
                    let closed = space.r_element_closed(n, k, sp).expect("labels in range");
                    let entry = r[((n + space.l()) as usize, (k + space.l()) as usize)];
                    worst = worst.max((closed - entry).norm());
                }
            }
        }
    }
    outcome(
        "finite_r_element_consistency",
        worst,
        tol,
        &format!("l <= {l_max}; s in {{0.01 0.37 1}}"),
    )
}

fn hermiticity(l_max: u32, tol: f64) -> VerifyOutcome {
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let phi = space.phase_operator();
        worst = worst.max(max_abs_diff(&phi, &phi.adjoint()));
        for &s in &S_COARSE {
            let lz_s = space.lz_s_operator(shift(s));
            worst = worst.max(max_abs_diff(&lz_s, &lz_s.adjoint()));
        }
    }
    outcome(
        "finite_hermiticity",
        worst,
        tol,
        &format!("l <= {l_max}; s in {{0 0.25 0.5 0.75 1}}"),
    )
}

fn limit_order_case_i(l_max: u32) -> VerifyOutcome {
    let schedule = ShiftSchedule::default();
    let mut worst = 0.0_f64;
    for l in 1..=l_max {
        let space = FiniteSpace::new(l);
        let k = space.l() - 1;
        for n in [k, -space.l()] {
            let est = space
                .normalized_limit(n, k, &schedule)
                .expect("labels in range");
            let order = est.observed_order.expect("20-point schedule");
            worst = worst.max((order - 1.0).abs());
        }
    }
    outcome(
        "finite_limit_order_case_i",
        worst,
        0.1,
        &format!("1 <= l <= {l_max}; k = l-1"),
    )
}

fn naive_divergence_case_ii(l_max: u32) -> VerifyOutcome {
    let s = 1e-5;
    let mut worst = 0.0_f64;
    for l in 0..=l_max {
        let space = FiniteSpace::new(l);
        let v = space
            .naive_normalized_element(space.l(), space.l(), shift(s))
            .expect("labels in range");
        worst = worst.max((v.norm() * s / space.dim() as f64 - 1.0).abs());
    }
    outcome(
        "finite_naive_divergence_case_ii",
        worst,
        1e-3,
        &format!("l <= {l_max}; s = 1e-5"),
    )
}

fn overlap_quadrature() -> VerifyOutcome {
    let quad = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    for n in -10..=10i64 {
        for m in -10..=10i64 {
            for &s in &S_QUAD {
                let numeric = quad.integrate_refined(infinite::overlap_integrand(n, m, s));
                worst = worst.max((numeric - infinite::overlap_c(n, m, s)).norm());
            }
        }
    }
    outcome(
        "infinite_overlap_quadrature",
        worst,
        1e-9,
        "|n| <= 10; |m| <= 10; s in {0.1 0.25 0.5 0.9}; 4096 nodes",
    )
}

fn phi_element_quadrature() -> VerifyOutcome {
    let quad = QuadratureSpec::default();
    let tau = std::f64::consts::TAU;
    let mut worst = 0.0_f64;
    for n in -10..=10i64 {
        for m in -10..=10i64 {
            let f = |phi: f64| {
                rotor_phase::linalg::cis((m - n) as f64 * phi)
                    .scale(phi)
                    .unscale(tau)
            };
            let numeric = quad.integrate_refined(f);
            worst = worst.max((numeric - infinite::phi_matrix_element(n, m)).norm());
        }
    }
    outcome(
        "infinite_phi_element_quadrature",
        worst,
        1e-9,
        "|n| <= 10; |m| <= 10; 4096 nodes",
    )
}

fn r_element_quadrature() -> VerifyOutcome {
    let quad = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    for n in -10..=10i64 {
        for m in -10..=10i64 {
            for &s in &S_QUAD {
                let base = infinite::overlap_integrand(n, m, s);
                let term1 = quad.integrate_refined(|phi| base(phi).scale(m as f64));
                let term2 = quad.integrate_refined(|phi| base(phi).scale(m as f64 + s));
                let numeric = term1 - term2;
                worst = worst.max((numeric - infinite::r_element_infinite(n, m, s)).norm());
            }
        }
    }
    outcome(
        "infinite_r_element_quadrature",
        worst,
        1e-9,
        "|n| <= 10; |m| <= 10; s in {0.1 0.25 0.5 0.9}; 4096 nodes",
    )
}

fn defect_quadrature() -> VerifyOutcome {
    let quad = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    for &(m2, s2) in &[(0i64, 0.0), (2, 0.25), (-3, 0.9)] {
        for &(m1, s1) in &[(0i64, 0.5), (-1, 0.7), (4, 0.1), (1, 0.9)] {
            let u1 = WindingFunction::new(m1, s1);
            let u2 = WindingFunction::new(m2, s2);
            let f1 = |phi: f64| u2.eval(phi).conj() * u1.eval(phi).scale(u1.momentum());
            let f2 = |phi: f64| u2.eval(phi).conj().scale(u2.momentum()) * u1.eval(phi);
            let numeric = quad.integrate_refined(f1) - quad.integrate_refined(f2);
            worst = worst.max((numeric - infinite::boundary_defect(&u2, &u1)).norm());
        }
    }
    outcome(
        "infinite_defect_quadrature",
        worst,
        1e-9,
        "winding grid; 4096 nodes",
    )
}

fn overlap_translation() -> VerifyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x726f746f72);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let n = rng.gen_range(-20i64..=20);
        let m = rng.gen_range(-20i64..=20);
        let t = rng.gen_range(-5i64..=5);
        let s = rng.gen_range(0.0..1.0);
        let diff = (infinite::overlap_c(n, m, s) - infinite::overlap_c(n + t, m + t, s)).norm();
        worst = worst.max(diff);
    }
    outcome(
        "infinite_overlap_translation",
        worst,
        0.0,
        "50 seeded random pairs",
    )
}

fn defect_equal_windings() -> VerifyOutcome {
    let quad = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    for &m in &[-4i64, 0, 3] {
        for &s in &S_QUAD {
            let u = WindingFunction::new(m, s);
            let f1 = |phi: f64| u.eval(phi).conj() * u.eval(phi).scale(u.momentum());
            let f2 = |phi: f64| u.eval(phi).conj().scale(u.momentum()) * u.eval(phi);
            let numeric = quad.integrate_refined(f1) - quad.integrate_refined(f2);
            worst = worst.max(numeric.norm());
            worst = worst.max(infinite::boundary_defect(&u, &u).norm());
        }
    }
    outcome(
        "infinite_defect_equal_windings",
        worst,
        1e-14,
        "|m| <= 4; s in {0.1 0.25 0.5 0.9}",
    )
}

fn paradox_resolution() -> VerifyOutcome {
    let schedule = ShiftSchedule::default();
    let i = Complex64::new(0.0, 1.0);
    let mut worst = 0.0_f64;
    for n in -5..=5i64 {
        for m in -5..=5i64 {
            let naive = infinite::naive_commutator_element(n, m);
            if n == m {
                worst = worst.max(naive.norm());
            } else {
                worst = worst.max((naive + i).norm());
            }
            let est = infinite::canonical_limit_element(n, m, &schedule);
            let target = if n == m { i } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((est.value - target).norm());
        }
    }
    outcome(
        "infinite_paradox_resolution",
        worst,
        1e-8,
        "naive 0 / -i vs canonical limit i delta; |n| <= 5; |m| <= 5",
    )
}

fn infinite_limit_order() -> VerifyOutcome {
    let schedule = ShiftSchedule::default();
    let mut worst = 0.0_f64;
    for n in -5..=5i64 {
        for m in -5..=5i64 {
            let est = infinite::canonical_limit_element(n, m, &schedule);
            let order = est.observed_order.expect("20-point schedule");
            worst = worst.max((order - 1.0).abs());
        }
    }
    outcome("infinite_limit_order", worst, 0.1, "|n| <= 5; |m| <= 5")
}

pub fn verify_csv(outcomes: &[VerifyOutcome]) -> String {
    let mut out = String::from(VERIFY_HEADER);
    out.push('\n');
    for o in outcomes {
        out.push_str(&format!(
            "{},{},{},{}\n",
            o.check_name,
            if o.pass { "pass" } else { "fail" },
            fmt_sci(o.worst_deviation),
            o.context,
        ));
    }
    out
}

#[derive(Serialize)]
struct VerifyOutcomeJson<'a> {
    check_name: &'a str,
    status: &'a str,
    worst_deviation: f64,
    context: &'a str,
}

pub fn verify_json(outcomes: &[VerifyOutcome]) -> String {
    let mirror: Vec<VerifyOutcomeJson> = outcomes
        .iter()
        .map(|o| VerifyOutcomeJson {
            check_name: o.check_name,
            status: if o.pass { "pass" } else { "fail" },
            worst_deviation: o.worst_deviation,
            context: &o.context,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&mirror).expect("outcomes serialize");
    out.push('\n');
    out
}
