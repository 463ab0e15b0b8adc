//! Gaussian quadrature rules on [-1, 1].
//!
//! Gauss-Legendre nodes are found by Newton iteration on the Legendre
//! polynomial with Chebyshev initial guesses; Gauss-Chebyshev rules use
//! their classical closed forms.

use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Which classical weight the rule integrates against.
///
/// * `GaussLegendre`: weight 1
/// * `GaussChebyshev1`: weight 1/sqrt(1-x^2)
/// * `GaussChebyshev2`: weight sqrt(1-x^2)
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadKind {
    GaussLegendre,
    GaussChebyshev1,
    GaussChebyshev2,
}

/// Node/weight set of a named kind on the reference interval (-1, 1).
///
/// Nodes are strictly increasing, weights all positive, and an m-node rule
/// integrates x^p exactly against its weight function for p <= 2m-1.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub kind: QuadKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrate f against the rule's weight function on (-1, 1).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrate f on [a, b] with the affine image of the rule.
    /// Meaningful for the Gauss-Legendre kind (weight 1).
    pub fn integrate_on<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * x);
        }
        acc * h
    }
}

/// Build a rule of the given kind with m nodes.
pub fn make_rule(kind: QuadKind, m: usize) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::InvalidArgument("node count m must be >= 1".into()));
    }
    Ok(match kind {
        QuadKind::GaussLegendre => gauss_legendre_rule(m),
        QuadKind::GaussChebyshev1 => gauss_chebyshev1_rule(m),
        QuadKind::GaussChebyshev2 => gauss_chebyshev2_rule(m),
    })
}

/// Shared, cached Gauss-Legendre rule (the workhorse of every mapped
/// integral in the crate).
pub fn gauss_legendre(m: usize) -> Arc<QuadratureRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(m)
        .or_insert_with(|| Arc::new(gauss_legendre_rule(m)))
        .clone()
}

/// Legendre P_m(x) and its derivative, classical normalization.
fn legendre_pair(m: usize, x: f64) -> (f64, f64) {
    if m == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..m {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    // P'_m = m (x P_m - P_{m-1}) / (x^2 - 1)
    let dp = m as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn gauss_legendre_rule(m: usize) -> QuadratureRule {
    if m == 1 {
        return QuadratureRule {
            kind: QuadKind::GaussLegendre,
            nodes: vec![0.0],
            weights: vec![2.0],
        };
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let half = m / 2;
    for j in 0..half {
        // Chebyshev-style initial guess for the j-th positive-side root
        let mut x = (std::f64::consts::PI * (j as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_pair(m, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // one polishing step, then the weight from the converged node
        let (p, d) = legendre_pair(m, x);
        x -= p / d;
        let dp = legendre_pair(m, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[j] = -x.abs();
        nodes[m - 1 - j] = x.abs();
        weights[j] = w;
        weights[m - 1 - j] = w;
    }
    if m % 2 == 1 {
        let (_, d) = legendre_pair(m, 0.0);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (d * d);
    }
    QuadratureRule {
        kind: QuadKind::GaussLegendre,
        nodes,
        weights,
    }
}

fn gauss_chebyshev1_rule(m: usize) -> QuadratureRule {
    let mf = m as f64;
    let mut nodes: Vec<f64> = (1..=m)
        .map(|j| ((2.0 * j as f64 - 1.0) * std::f64::consts::PI / (2.0 * mf)).cos())
        .collect();
    nodes.reverse();
    QuadratureRule {
        kind: QuadKind::GaussChebyshev1,
        weights: vec![std::f64::consts::PI / mf; m],
        nodes,
    }
}

fn gauss_chebyshev2_rule(m: usize) -> QuadratureRule {
    let mp1 = m as f64 + 1.0;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for j in (1..=m).rev() {
        let t = j as f64 * std::f64::consts::PI / mp1;
        nodes.push(t.cos());
        weights.push(std::f64::consts::PI / mp1 * t.sin() * t.sin());
    }
    QuadratureRule {
        kind: QuadKind::GaussChebyshev2,
        nodes,
        weights,
    }
}

/// Composite Gauss-Legendre integration of f over [a, b] with `panels`
/// equal panels of `nodes_per_panel` nodes each.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    panels: usize,
    nodes_per_panel: usize,
    f: F,
) -> f64 {
    let rule = gauss_legendre(nodes_per_panel);
    let width = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        acc += rule.integrate_on(lo, lo + width, &f);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcg(seed: &mut u64) -> f64 {
        // deterministic uniform in [0,1)
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (*seed >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn one_point_rule_is_midpoint() {
        let r = make_rule(QuadKind::GaussLegendre, 1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert_eq!(r.weights, vec![2.0]);
    }

    #[test]
    fn two_point_rule() {
        let r = make_rule(QuadKind::GaussLegendre, 2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15);
        assert!((r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        assert!((r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(make_rule(QuadKind::GaussLegendre, 0).is_err());
    }

    #[test]
    fn chebyshev1_closed_form_and_mass() {
        let m = 17;
        let r = make_rule(QuadKind::GaussChebyshev1, m).unwrap();
        for (j, &x) in r.nodes.iter().enumerate() {
            // ascending order: node j corresponds to index m-j in the classical formula
            let jj = m - j;
            let expect = ((2.0 * jj as f64 - 1.0) * std::f64::consts::PI / (2.0 * m as f64)).cos();
            assert!((x - expect).abs() < 1e-15);
        }
        // integral of the bare weight: sum of weights = pi
        let mass: f64 = r.weights.iter().sum();
        assert!((mass - std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn legendre_weights_sum_to_two() {
        for &m in &[3usize, 10, 64, 257, 400] {
            let r = gauss_legendre(m);
            let mass: f64 = r.weights.iter().sum();
            assert!(
                (mass - 2.0).abs() < 1e-13,
                "m={m}: weight sum {mass} off by {:e}",
                (mass - 2.0).abs()
            );
        }
    }

    #[test]
    fn nodes_strictly_increasing_in_open_interval() {
        for kind in [
            QuadKind::GaussLegendre,
            QuadKind::GaussChebyshev1,
            QuadKind::GaussChebyshev2,
        ] {
            let r = make_rule(kind, 33).unwrap();
            for w in &r.weights {
                assert!(*w > 0.0);
            }
            for pair in r.nodes.windows(2) {
                assert!(pair[0] < pair[1]);
            }
            assert!(r.nodes[0] > -1.0 && *r.nodes.last().unwrap() < 1.0);
        }
    }

    /// An m-node Gauss rule must integrate monomials up to degree 2m-1
    /// exactly against its weight function.
    #[test]
    fn monomial_exactness() {
        // exact moments: GL: int x^p = 2/(p+1) (p even); GC1: pi * (p-1)!!/p!!;
        // GC2: pi/2 * (p-1)!!/(p+2)!! * ... use recurrences instead
        fn gl_moment(p: usize) -> f64 {
            if p % 2 == 1 {
                0.0
            } else {
                2.0 / (p as f64 + 1.0)
            }
        }
        fn gc1_moment(p: usize) -> f64 {
            // int_{-1}^{1} x^p / sqrt(1-x^2) dx = pi * (p-1)!!/p!! for even p
            if p % 2 == 1 {
                return 0.0;
            }
            let mut v = std::f64::consts::PI;
            let mut k = p;
            while k >= 2 {
                v *= (k - 1) as f64 / k as f64;
                k -= 2;
            }
            v
        }
        fn gc2_moment(p: usize) -> f64 {
            // int x^p sqrt(1-x^2) dx = pi/2 * (p-1)!!/(p+2)!! variant; build by recurrence
            // M_p = M_{p-2} * (p-1)/(p+2), M_0 = pi/2
            if p % 2 == 1 {
                return 0.0;
            }
            let mut v = std::f64::consts::PI / 2.0;
            let mut k = 2;
            while k <= p {
                v *= (k - 1) as f64 / (k + 2) as f64;
                k += 2;
            }
            v
        }
        for (kind, moment) in [
            (QuadKind::GaussLegendre, gl_moment as fn(usize) -> f64),
            (QuadKind::GaussChebyshev1, gc1_moment),
            (QuadKind::GaussChebyshev2, gc2_moment),
        ] {
            for &m in &[1usize, 2, 5, 12, 40] {
                let r = make_rule(kind, m).unwrap();
                for p in 0..(2 * m) {
                    let got = r.integrate(|x| x.powi(p as i32));
                    let want = moment(p);
                    let scale = want.abs().max(1.0);
                    assert!(
                        (got - want).abs() <= 1e-12 * scale,
                        "{kind:?} m={m} p={p}: {got} vs {want}"
                    );
                }
            }
        }
    }

    /// Random polynomials of degree <= 2m-1 are reproduced to 1e-12 relative.
    #[test]
    fn random_polynomial_exactness() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        for &m in &[4usize, 9, 21] {
            let r = make_rule(QuadKind::GaussLegendre, m).unwrap();
            for _ in 0..20 {
                let deg = 2 * m - 1;
                let coeffs: Vec<f64> = (0..=deg).map(|_| 2.0 * lcg(&mut seed) - 1.0).collect();
                let exact: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(p, c)| {
                        if p % 2 == 0 {
                            c * 2.0 / (p as f64 + 1.0)
                        } else {
                            0.0
                        }
                    })
                    .sum();
                let got = r.integrate(|x| {
                    let mut acc = 0.0;
                    for &c in coeffs.iter().rev() {
                        acc = acc * x + c;
                    }
                    acc
                });
                let scale = exact.abs().max(1.0);
                assert!((got - exact).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn chebyshev1_recovers_pi() {
        // int dx/sqrt(1-x^2) = pi
        let r = make_rule(QuadKind::GaussChebyshev1, 8).unwrap();
        let got = r.integrate(|_| 1.0);
        assert!((got - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn panel_integration_smooth() {
        let got = integrate_panels(0.0, 2.0, 8, 16, |x: f64| x.exp());
        assert!((got - (2f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn deterministic_for_fixed_inputs() {
        let a = make_rule(QuadKind::GaussLegendre, 37).unwrap();
        let b = make_rule(QuadKind::GaussLegendre, 37).unwrap();
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.weights, b.weights);
    }
}
