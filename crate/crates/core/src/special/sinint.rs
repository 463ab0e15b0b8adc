//! Sine integral Si(x) = int_0^x sin(t)/t dt, needed for the closed-form
//! oscillatory tails of the kernel integrals.

use super::quad::integrate_panels;

/// Si(x) for x >= 0. Panel quadrature of the entire integrand up to x = 40,
/// auxiliary asymptotic expansion beyond (error far below 1e-13 there).
pub fn si(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x <= 40.0 {
        let panels = (x / 2.0).ceil() as usize + 1;
        return integrate_panels(0.0, x, panels, 20, |t| {
            if t.abs() < 1e-30 {
                1.0
            } else {
                t.sin() / t
            }
        });
    }
    // Si(x) = pi/2 - cos(x) f(x) - sin(x) g(x),
    // f ~ (1/x) sum (-1)^k (2k)!/x^{2k},  g ~ (1/x^2) sum (-1)^k (2k+1)!/x^{2k}
    let x2 = x * x;
    let mut f = 0.0;
    let mut g = 0.0;
    let mut term_f = 1.0; // (2k)! / x^{2k}
    let mut term_g = 1.0; // (2k+1)! / x^{2k}
    let mut sign = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..30 {
        if term_f >= prev {
            break; // asymptotic series started diverging
        }
        prev = term_f;
        f += sign * term_f;
        g += sign * term_g;
        let kk = 2.0 * k as f64;
        term_f *= (kk + 1.0) * (kk + 2.0) / x2;
        term_g *= (kk + 2.0) * (kk + 3.0) / x2;
        sign = -sign;
    }
    f /= x;
    g /= x2;
    std::f64::consts::FRAC_PI_2 - x.cos() * f - x.sin() * g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // published values
        assert!((si(1.0) - 0.946083070367183).abs() < 1e-12);
        assert!((si(2.0) - 1.605412976802695).abs() < 1e-12);
        assert!((si(10.0) - 1.658347594218874).abs() < 1e-12);
        assert!((si(20.0) - 1.548241701043439).abs() < 1e-12);
    }

    #[test]
    fn branch_agreement_near_switch() {
        // quadrature just below 40 vs asymptotic just above must bracket pi/2
        let lo = si(39.9);
        let hi = si(40.1);
        assert!((lo - hi).abs() < 0.05); // same oscillation envelope
                                         // envelope: |Si(x) - pi/2| <= 2/x roughly
        for &x in &[45.0, 80.0, 500.0, 5000.0] {
            assert!((si(x) - std::f64::consts::FRAC_PI_2).abs() < 2.0 / x);
        }
    }

    #[test]
    fn continuity_at_switch() {
        // compare panel value at 40 with asymptotic at 40+tiny
        let a = si(40.0);
        let b = si(40.0 + 1e-9);
        assert!((a - b).abs() < 1e-9);
    }
}
