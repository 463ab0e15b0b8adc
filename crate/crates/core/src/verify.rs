//! The cross-verification suite: every closed-form identity of the library
//! checked against an independent numerical route, with pinned tolerances.
//! Each criterion reports pass/fail plus the worst observed deviation; the
//! CLI `verify-all` command and the acceptance test target both run
//! [`run_all`].

use crate::arcmap::ArcWeight;
use crate::asympt::{self, LegendreArc};
use crate::fredholm::{closed_form_bs, fredholm_det};
use crate::kernels::{kernel_eval, kernel_from_symbol, KernelSpec, Representation};
use crate::polybase::{orthonormality_defect, PolyFamily};
use crate::special::quad::{make_rule, QuadKind};
use crate::toeplitz::{
    scaling_sequence, toeplitz_logdet_direct, toeplitz_logdet_product, ScalingFamily,
};

use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {:<34} {} ({:.2}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details,
            self.seconds
        )
    }
}

fn finish(
    id: u32,
    name: &'static str,
    passed: bool,
    details: String,
    start: Instant,
) -> CriterionResult {
    CriterionResult {
        id,
        name,
        passed,
        details,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Closed form of the Bernstein-Szego Fredholm determinant:
/// |det(I - K_BS(r)) on \[0,2s\] - e^{-s^2/2-2rs}(cosh s + r sinh s)| <= 1e-8
/// at m = 48 over r in {0, 0.5, 1, 2}, s in {0.5, 1, 2}.
pub fn criterion_1() -> CriterionResult {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut ok = true;
    for &r in &[0.0, 0.5, 1.0, 2.0] {
        for &s in &[0.5, 1.0, 2.0] {
            let spec = KernelSpec::bernstein_szego(r);
            match fredholm_det(&spec, s, 48) {
                Ok(det) => {
                    let err = (det - closed_form_bs(r, s)).abs();
                    worst = worst.max(err);
                    ok &= err <= 1e-8;
                }
                Err(e) => {
                    return finish(
                        1,
                        "bs fredholm closed form",
                        false,
                        format!("error: {e}"),
                        start,
                    )
                }
            }
        }
    }
    finish(
        1,
        "bs fredholm closed form",
        ok,
        format!("max |det - closed| = {worst:.2e} (tol 1e-8)"),
        start,
    )
}

/// The r = 0 special case through the independently coded kernel K_C:
/// determinant matches e^{-s^2/2} cosh s to 1e-8, and K_C matches the
/// r = 0 K_BS evaluation to 1e-10 pointwise on the kernel grid.
pub fn criterion_2() -> CriterionResult {
    let start = Instant::now();
    let mut worst_det = 0.0f64;
    let mut ok = true;
    let kc = KernelSpec::chebyshev_kc();
    for &s in &[0.5, 1.0, 2.0] {
        match fredholm_det(&kc, s, 48) {
            Ok(det) => {
                let err = (det - closed_form_bs(0.0, s)).abs();
                worst_det = worst_det.max(err);
                ok &= err <= 1e-8;
            }
            Err(e) => {
                return finish(
                    2,
                    "kc fredholm + pointwise",
                    false,
                    format!("error: {e}"),
                    start,
                )
            }
        }
    }
    let bs0 = KernelSpec::bernstein_szego(0.0);
    let mut worst_pt = 0.0f64;
    let mut z = -10.0;
    while z <= 10.0 {
        let a = kernel_eval(&kc, z).unwrap();
        let b = kernel_eval(&bs0, z).unwrap();
        worst_pt = worst_pt.max((a - b).abs());
        z += 0.25;
    }
    ok &= worst_pt <= 1e-10;
    finish(
        2,
        "kc fredholm + pointwise",
        ok,
        format!("max det err {worst_det:.2e} (tol 1e-8), max |K_C - K_BS(0)| = {worst_pt:.2e} (tol 1e-10)"),
        start,
    )
}

/// Representation equivalence of the three K_BS integral forms on
/// z in [-10, 10] step 0.25, r in {0.3, 1, 2}; tolerance 1e-8.
pub fn criterion_3() -> CriterionResult {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &r in &[0.3, 1.0, 2.0] {
        let cosh = KernelSpec::bernstein_szego(r).with_representation(Representation::CoshForm);
        let sine = KernelSpec::bernstein_szego(r).with_representation(Representation::SineForm);
        let bess = KernelSpec::bernstein_szego(r).with_representation(Representation::BesselForm);
        let mut z = -10.0;
        while z <= 10.0 {
            let a = kernel_eval(&cosh, z).unwrap();
            let b = kernel_eval(&sine, z).unwrap();
            let mut diff = (a - b).abs();
            if (r - 1.0).abs() < 1e-14 {
                let c = kernel_eval(&bess, z).unwrap();
                diff = diff.max((a - c).abs()).max((b - c).abs());
            }
            worst = worst.max(diff);
            z += 0.25;
        }
    }
    finish(
        3,
        "kernel representation equivalence",
        worst <= 1e-8,
        format!("max pairwise diff = {worst:.2e} (tol 1e-8)"),
        start,
    )
}

/// Fourier inversion of 1 - sigma(r, xi) reproduces the kernel to 1e-5 on
/// |z| <= 10 for r in {0, 1, 2}.
pub fn criterion_4() -> CriterionResult {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &r in &[0.0, 1.0, 2.0] {
        let spec = if r == 0.0 {
            KernelSpec::chebyshev_kc()
        } else {
            KernelSpec::bernstein_szego(r)
        };
        let mut z = -10.0;
        while z <= 10.0 {
            let a = kernel_from_symbol(r, z);
            let b = kernel_eval(&spec, z).unwrap();
            worst = worst.max((a - b).abs());
            z += 0.25;
        }
    }
    finish(
        4,
        "symbol Fourier inversion",
        worst <= 1e-5,
        format!("max |K_from_sigma - K| = {worst:.2e} (tol 1e-5)"),
        start,
    )
}

/// Product-formula vs direct-elimination log-determinants:
/// |logdet_product - logdet_direct| <= 1e-7 for the four weight families,
/// n <= 30, s in {0.5, 1, 2} with alpha = 2s/n.
pub fn criterion_5() -> CriterionResult {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut ok = true;
    for &s in &[0.5, 1.0, 2.0] {
        for n in 1..=30u32 {
            let alpha = 2.0 * s / n as f64;
            if alpha > PI {
                continue; // no such arc
            }
            let weights = [
                ArcWeight::chebyshev1(alpha),
                ArcWeight::chebyshev2(alpha),
                ArcWeight::f1(alpha),
                ArcWeight::bernstein_szego(alpha, 1.0),
            ];
            for fw in weights {
                let fw = match fw {
                    Ok(f) => f,
                    Err(e) => {
                        return finish(5, "product vs direct logdet", false, format!("{e}"), start)
                    }
                };
                let d = toeplitz_logdet_direct(&fw, n, None);
                let p = toeplitz_logdet_product(&fw, n);
                match (d, p) {
                    (Ok(d), Ok(p)) => {
                        let err = (d.logmag - p.logmag).abs();
                        worst = worst.max(err);
                        ok &= err <= 1e-7 && d.sign == p.sign;
                    }
                    _ => ok = false,
                }
            }
        }
    }
    finish(
        5,
        "product vs direct logdet",
        ok,
        format!("max |logdet diff| = {worst:.2e} (tol 1e-7)"),
        start,
    )
}

/// Scaling limit alpha = 2s/n: |D_n - closed form| at n = 400 within 2% of
/// the closed form and monotonically decreasing over n in {50,100,200,400},
/// for (r, s) in {(0,1), (1,1), (2,0.5)}.
pub fn criterion_6() -> CriterionResult {
    let start = Instant::now();
    let mut ok = true;
    let mut details = String::new();
    for &(r, s) in &[(0.0, 1.0), (1.0, 1.0), (2.0, 0.5)] {
        let family = if r == 0.0 {
            ScalingFamily::Chebyshev1
        } else {
            ScalingFamily::BernsteinSzego { r }
        };
        let rows = match scaling_sequence(family, s, &[50, 100, 200, 400]) {
            Ok(rows) => rows,
            Err(e) => return finish(6, "toeplitz scaling limit", false, format!("{e}"), start),
        };
        let closed = closed_form_bs(r, s);
        let mut prev = f64::INFINITY;
        for row in &rows {
            let dev = row.deviation.unwrap();
            ok &= dev < prev;
            prev = dev;
        }
        let final_rel = prev / closed;
        ok &= final_rel <= 0.02;
        details.push_str(&format!("(r={r},s={s}): {final_rel:.2e} rel; "));
    }
    finish(
        6,
        "toeplitz scaling limit",
        ok,
        format!("{details}(tol 2%, monotone)"),
        start,
    )
}

/// The sine-kernel cross-check: D_400(f0) at s = 1 within 2% of the m = 64
/// Nystrom determinant of the sine kernel on [0, 2] (oracle vs oracle; no
/// closed form exists).
pub fn criterion_7() -> CriterionResult {
    let start = Instant::now();
    let s = 1.0;
    let n = 400u32;
    let fw = match ArcWeight::f0(2.0 * s / n as f64) {
        Ok(f) => f,
        Err(e) => {
            return finish(
                7,
                "sine-kernel gap cross-check",
                false,
                format!("{e}"),
                start,
            )
        }
    };
    let toeplitz = match toeplitz_logdet_direct(&fw, n, None) {
        Ok(d) => d.to_f64(),
        Err(e) => {
            return finish(
                7,
                "sine-kernel gap cross-check",
                false,
                format!("{e}"),
                start,
            )
        }
    };
    let nystrom = match fredholm_det(&KernelSpec::sine(), s, 64) {
        Ok(d) => d,
        Err(e) => {
            return finish(
                7,
                "sine-kernel gap cross-check",
                false,
                format!("{e}"),
                start,
            )
        }
    };
    let rel = (toeplitz - nystrom).abs() / nystrom;
    finish(
        7,
        "sine-kernel gap cross-check",
        rel <= 0.02,
        format!("D_400(f0) = {toeplitz:.6}, Nystrom = {nystrom:.6}, rel diff {rel:.2e} (tol 2%)"),
        start,
    )
}

/// Legendre-arc asymptotics: dn_exact/dn_asymptotic at n = 400 within
/// [0.98, 1.02] for f1 and [0.95, 1.05] for f2 at s in {0.5, 1, 2}; the A_n
/// ratio within 1% at n = 200; the Hilb ratio within 1% at n = 400.
pub fn criterion_8() -> CriterionResult {
    let start = Instant::now();
    let mut ok = true;
    let mut details = String::new();
    for &s in &[0.5, 1.0, 2.0] {
        let r1 = match asympt::report(LegendreArc::F1, s, &[400]) {
            Ok(rows) => rows[0].ratio,
            Err(e) => return finish(8, "legendre-arc asymptotics", false, format!("{e}"), start),
        };
        ok &= (0.98..=1.02).contains(&r1);
        let r2 = match asympt::report(LegendreArc::F2, s, &[400]) {
            Ok(rows) => rows[0].ratio,
            Err(e) => return finish(8, "legendre-arc asymptotics", false, format!("{e}"), start),
        };
        ok &= (0.95..=1.05).contains(&r2);
        details.push_str(&format!("s={s}: f1 {r1:.4}, f2 {r2:.4}; "));
    }
    let a_ratio = match asympt::a_n_asymptotic_ratio(200) {
        Ok(r) => r,
        Err(e) => return finish(8, "legendre-arc asymptotics", false, format!("{e}"), start),
    };
    ok &= (a_ratio - 1.0).abs() <= 0.01;
    let mut worst_hilb = 0.0f64;
    for &s in &[0.5, 1.0, 2.0] {
        worst_hilb = worst_hilb.max((asympt::hilb_ratio(400, s) - 1.0).abs());
    }
    ok &= worst_hilb <= 0.01;
    details.push_str(&format!(
        "A_200 ratio {a_ratio:.4}, hilb dev {worst_hilb:.2e}"
    ));
    finish(8, "legendre-arc asymptotics", ok, details, start)
}

/// The OPUC property suite: circle orthogonality defect <= 1e-8
/// (n, m <= 12); Szego recurrence residual <= 1e-9 (n <= 20); |a_n| < 1;
/// interval reconstruction residual <= 1e-9; Bernstein-Szego interval
/// orthonormality defect <= 1e-10 (k, m <= 8).
pub fn criterion_9() -> CriterionResult {
    let start = Instant::now();
    let alpha = 0.8;
    let mut ok = true;
    let mut details = String::new();

    let weights = [
        ArcWeight::chebyshev1(alpha).unwrap(),
        ArcWeight::chebyshev2(alpha).unwrap(),
        ArcWeight::f1(alpha).unwrap(),
        ArcWeight::bernstein_szego(alpha, 1.0).unwrap(),
    ];

    let mut worst_orth = 0.0f64;
    for fw in &weights {
        match fw.orthogonality_defect(12, 400) {
            Ok(d) => worst_orth = worst_orth.max(d),
            Err(e) => return finish(9, "opuc property suite", false, format!("{e}"), start),
        }
    }
    ok &= worst_orth <= 1e-8;
    details.push_str(&format!("orth {worst_orth:.1e}; "));

    // Szego recurrence and Verblunsky bounds
    let mut seed = 0x5eed5eedu64;
    let mut next = || {
        seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (seed >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst_szego = 0.0f64;
    let mut verblunsky_bounded = true;
    for fw in &weights {
        for n in 0..=20u32 {
            let a_n = match fw.verblunsky(n + 1) {
                Ok(a) => a,
                Err(e) => return finish(9, "opuc property suite", false, format!("{e}"), start),
            };
            verblunsky_bounded &= a_n.abs() < 1.0;
            for _ in 0..20 {
                let z = Complex64::from_polar(1.0, 2.0 * PI * next());
                let lhs = fw.phi(n + 1, z).unwrap();
                let rhs = z * fw.phi(n, z).unwrap() - a_n * fw.phi_star(n, z).unwrap();
                worst_szego = worst_szego.max((lhs - rhs).norm() / lhs.norm().max(1.0));
            }
        }
    }
    ok &= worst_szego <= 1e-9 && verblunsky_bounded;
    details.push_str(&format!("szego {worst_szego:.1e}; "));

    // interval reconstruction
    let mut worst_rec = 0.0f64;
    for fw in &weights {
        let fam = match fw.kind() {
            crate::arcmap::ArcKind::PForm(f) => f,
            _ => unreachable!(),
        };
        for n in 0..=12u32 {
            for _ in 0..10 {
                let x = 2.0 * next() - 1.0;
                let rebuilt = fw.reconstruct_p(n, x).unwrap();
                let direct = crate::polybase::eval_monic(fam, n, x);
                worst_rec = worst_rec.max((rebuilt - direct).abs() / direct.abs().max(1.0));
            }
        }
    }
    ok &= worst_rec <= 1e-9;
    details.push_str(&format!("reconstruction {worst_rec:.1e}; "));

    // Bernstein-Szego interval orthonormality under the Chebyshev-2 rule
    let rule = make_rule(QuadKind::GaussChebyshev2, 128).unwrap();
    let bs = PolyFamily::bernstein_szego(0.9, 1.0);
    let bs_defect = orthonormality_defect(bs, 8, &rule);
    ok &= bs_defect <= 1e-10;
    details.push_str(&format!("bs orthonormality {bs_defect:.1e}"));

    finish(9, "opuc property suite", ok, details, start)
}

/// Run criteria 1 through 9 in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}

/// Number of criteria in [`run_all`].
pub fn criterion_count() -> u32 {
    9
}
