/// Similarity variables at a point `(S, N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeQuantities {
    pub gamma: f64,
    pub s: f64,
    pub n: f64,
    /// `Φ = γNS² − γ²S⁵/10`.
    pub phi: f64,
    /// `K = N/S³ − γ/3`, undefined at `S = 0`.
    pub k: Option<f64>,
    /// `K̂ = S²K`.
    pub khat: Option<f64>,
    /// `K̄ = S^{5/2}K`, defined for `S > 0` only.
    pub kbar: Option<f64>,
    pub x: f64,
    pub y: f64,
}

pub fn regime_quantities(s: f64, n: f64, gamma: f64) -> RegimeQuantities {
    let s2 = s * s;
    let phi = gamma * n * s2 - gamma * gamma * s2 * s2 * s / 10.0;
    let y = n - gamma * s2 * s / 3.0;
    // K = N/S³ − γ/3 and K̂ = S²K, both via Y so that Y = 0 gives exactly zero.
    let k = (s != 0.0).then(|| y / (s2 * s));
    let khat = (s != 0.0).then(|| y / s);
    let kbar = (s > 0.0).then(|| y / s.sqrt());
    RegimeQuantities { gamma, s, n, phi, k, khat, kbar, x: s, y }
}

/// `4 / (15 √γ)`, the quintic coefficient of the phase.
pub fn quintic_coefficient(gamma: f64) -> f64 {
    4.0 / (15.0 * gamma.sqrt())
}

/// Cartesian point of the curvilinear coordinates `(s, n)` about the cubic.
pub fn curvilinear_to_cartesian(s: f64, n: f64, gamma: f64) -> (f64, f64) {
    let s2 = s * s;
    let x = s + gamma * n * s2 - gamma * gamma * s2 * s2 * s / 10.0;
    let y = n - gamma * s2 * s / 3.0;
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: f64 = 4.0 / 9.0;

    #[test]
    fn on_the_cubic_k_vanishes() {
        let q = regime_quantities(3.0, 4.0, G);
        assert_eq!(q.k, Some(0.0));
        assert_eq!(q.khat, Some(0.0));
        assert_eq!(q.y, 0.0);
    }

    #[test]
    fn origin_line_has_no_k() {
        let q = regime_quantities(0.0, 2.5, G);
        assert_eq!(q.phi, 0.0);
        assert!(q.k.is_none() && q.khat.is_none() && q.kbar.is_none());
        assert_eq!(q.y, 2.5);
    }

    #[test]
    fn khat_and_kbar_scalings() {
        let n = G * 1000.0 / 3.0 + 1e-2;
        let q = regime_quantities(10.0, n, G);
        assert!((q.khat.unwrap() - 1e-3).abs() < 1e-12);
        assert!((q.kbar.unwrap() - 10f64.sqrt() * q.khat.unwrap()).abs() < 1e-15);
        let neg = regime_quantities(-2.0, 1.0, G);
        assert!(neg.kbar.is_none() && neg.k.is_some());
    }

    #[test]
    fn cartesian_map_examples() {
        assert_eq!(curvilinear_to_cartesian(0.0, 1.7, G), (0.0, 1.7));
        let s: f64 = 1.3;
        let (_, y) = curvilinear_to_cartesian(s, G * s.powi(3) / 3.0, G);
        assert!(y.abs() < 1e-15);
        let (x, y) = curvilinear_to_cartesian(1.0, 1.0, G);
        assert!((x - (1.0 + G - G * G / 10.0)).abs() < 1e-15);
        assert!((y - (1.0 - G / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn quintic_coefficient_for_four_ninths() {
        assert!((quintic_coefficient(G) - 0.4).abs() < 1e-15);
    }
}
