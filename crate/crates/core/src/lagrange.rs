//! Lagrange interpolation at para-orthogonal nodes.
//!
//! The fundamental polynomials are kernel quotients,
//! ℓⱼₙ = Kₙ(ζⱼₙ,·)/Kₙ(ζⱼₙ,ζⱼₙ), written with the node in the kernel's
//! first slot so that ℓⱼₙ is a polynomial in its argument (the kernel
//! is conjugate-symmetric, Kₙ(z,ζ) = conj(Kₙ(ζ,z))). The interpolant
//! Lₙ(f) = Σⱼ f(ζⱼₙ)·ℓⱼₙ is stored in the orthonormal basis
//! {φ₀,…,φₙ}: one O(n²) pass converts the samples into coefficients,
//! after which each evaluation is a single O(n) recursion sweep. That
//! keeps grid-based error norms cheap and avoids the ill-conditioned
//! monomial coefficients of Bₙ₊₁ at large n.

use num_complex::Complex64;

use crate::measure::Measure;
use crate::opuc::OpucBasis;
use crate::paraorth::NodeSystem;

/// ℓⱼₙ(z) = Kₙ(ζⱼₙ, z)/Kₙ(ζⱼₙ, ζⱼₙ).
pub fn fundamental_eval(ns: &NodeSystem, b: &OpucBasis, j: usize, z: Complex64) -> Complex64 {
    assert!(j <= ns.degree(), "node index {j} out of range");
    b.cd_kernel(ns.degree(), ns.nodes()[j], z) / ns.kernel_diags()[j]
}

/// The interpolation polynomial Lₙ(f) for one node system.
#[derive(Clone, Debug)]
pub struct Interpolant {
    n: usize,
    samples: Vec<Complex64>,
    /// coordinates of Lₙ(f) in the orthonormal basis {φₘ}ₘ₌₀ⁿ
    phi_coords: Vec<Complex64>,
}

/// Sample f at the nodes and form Lₙ(f).
pub fn interpolate<F: Fn(Complex64) -> Complex64>(
    ns: &NodeSystem,
    b: &OpucBasis,
    f: F,
) -> Interpolant {
    let samples: Vec<Complex64> = ns.nodes().iter().map(|z| f(*z)).collect();
    from_samples(ns, b, samples)
}

/// Form Lₙ(f) from already-taken node samples.
pub fn from_samples(ns: &NodeSystem, b: &OpucBasis, samples: Vec<Complex64>) -> Interpolant {
    let n = ns.degree();
    assert_eq!(samples.len(), n + 1);
    // L_n(f) = sum_m phi_m * sum_j samples_j conj(phi_m(zeta_j)) / K_n(zeta_j, zeta_j)
    let mut phi_coords = vec![Complex64::new(0.0, 0.0); n + 1];
    for ((node, sample), kd) in ns.nodes().iter().zip(&samples).zip(ns.kernel_diags()) {
        let scale = sample / kd;
        let mut phi = Complex64::new(b.kappas()[0], 0.0);
        let mut star = phi;
        phi_coords[0] += scale * phi.conj();
        for m in 0..n {
            let alpha = b.alphas()[m];
            let inv = (1.0 - alpha.norm_sqr()).sqrt().recip();
            let next_phi = (node * phi - alpha.conj() * star) * inv;
            let next_star = (star - alpha * node * phi) * inv;
            phi = next_phi;
            star = next_star;
            phi_coords[m + 1] += scale * phi.conj();
        }
    }
    Interpolant {
        n,
        samples,
        phi_coords,
    }
}

impl Interpolant {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Coordinates in the orthonormal basis {φₘ}.
    pub fn phi_coords(&self) -> &[Complex64] {
        &self.phi_coords
    }

    /// Lₙ(f)(z), one recursion sweep.
    pub fn eval(&self, b: &OpucBasis, z: Complex64) -> Complex64 {
        let mut phi = Complex64::new(b.kappas()[0], 0.0);
        let mut star = phi;
        let mut acc = self.phi_coords[0] * phi;
        for m in 0..self.n {
            let alpha = b.alphas()[m];
            let inv = (1.0 - alpha.norm_sqr()).sqrt().recip();
            let next_phi = (z * phi - alpha.conj() * star) * inv;
            let next_star = (star - alpha * z * phi) * inv;
            phi = next_phi;
            star = next_star;
            acc += self.phi_coords[m + 1] * phi;
        }
        acc
    }

    /// ‖Lₙ(f)‖₂² by Parseval in the φ basis.
    pub fn l2_norm_sq(&self) -> f64 {
        self.phi_coords.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Grid resolution for error norms: the integrand oscillates at
/// frequency ~n, so keep at least 32 points per oscillation.
pub fn error_resolution(n: usize, override_resolution: Option<usize>) -> usize {
    let base = 4096.max(32 * (n + 1));
    match override_resolution {
        Some(r) => r.max(base),
        None => base,
    }
}

/// ‖f − Lₙ(f)‖ₚ against μ. The convergence theory covers p ∈ (0,2];
/// larger p is computed all the same and flagged by the harness.
pub fn interp_error<F: Fn(Complex64) -> Complex64>(
    ns: &NodeSystem,
    b: &OpucBasis,
    m: &Measure,
    f: F,
    p: f64,
    override_resolution: Option<usize>,
) -> f64 {
    let interp = interpolate(ns, b, &f);
    let resolution = error_resolution(ns.degree(), override_resolution);
    m.lp_norm(|z| f(z) - interp.eval(b, z), p, resolution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Measure;
    use crate::paraorth::find_nodes;
    use crate::unit;
    use std::f64::consts::FRAC_PI_2;

    fn system(m: &Measure, n: usize, w_theta: f64) -> (OpucBasis, NodeSystem) {
        let t = m.moments(n + 2);
        let b = OpucBasis::from_moments(&t, n + 2).unwrap();
        let ns = find_nodes(&b, n, unit(w_theta)).unwrap();
        (b, ns)
    }

    #[test]
    fn fundamental_delta_property() {
        let m = Measure::arc(FRAC_PI_2).unwrap();
        let (b, ns) = system(&m, 5, 0.7);
        for j in 0..=5 {
            for k in 0..=5 {
                let v = fundamental_eval(&ns, &b, j, ns.nodes()[k]);
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!(
                    (v - Complex64::new(expected, 0.0)).norm() < 1e-9,
                    "j={j} k={k} v={v}"
                );
            }
        }
    }

    #[test]
    fn fundamental_hand_case() {
        // lebesgue, n=1, w=1: nodes {1,-1}, l_0(z) = (1+z)/2
        let m = Measure::lebesgue();
        let (b, ns) = system(&m, 1, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let v = fundamental_eval(&ns, &b, 0, i);
        assert!((v - Complex64::new(0.5, 0.5)).norm() < 1e-12, "{v}");
    }

    #[test]
    fn partition_of_unity() {
        let m = Measure::arc(2.2).unwrap();
        let (b, ns) = system(&m, 7, 1.9);
        for k in 0..10 {
            let z = unit(0.61 * k as f64);
            let total: Complex64 = (0..=7).map(|j| fundamental_eval(&ns, &b, j, z)).sum();
            assert!((total - Complex64::new(1.0, 0.0)).norm() < 1e-9, "{total}");
        }
    }

    #[test]
    fn interpolation_of_reciprocal_is_z() {
        // lebesgue, n=1, w=1, f = 1/z on the circle: L_1(f)(z) = z
        let m = Measure::lebesgue();
        let (b, ns) = system(&m, 1, 0.0);
        let interp = interpolate(&ns, &b, |z| 1.0 / z);
        for &theta in &[0.4, 2.0, 5.1] {
            let z = unit(theta);
            assert!((interp.eval(&b, z) - z).norm() < 1e-12);
        }
    }

    #[test]
    fn projection_on_polynomials() {
        let m = Measure::arc(FRAC_PI_2).unwrap();
        let (b, ns) = system(&m, 6, 0.0);
        // fixed degree-6 polynomial
        let f = |z: Complex64| {
            let coeffs = [0.8, -0.3, 0.5, 0.0, 1.1, -0.2, 0.4];
            coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
        };
        let interp = interpolate(&ns, &b, f);
        for k in 0..20 {
            let z = unit(0.313 * k as f64);
            let fv = f(z);
            assert!((interp.eval(&b, z) - fv).norm() <= 1e-8 * (1.0 + fv.norm()));
        }
    }

    #[test]
    fn constant_interpolates_to_one() {
        let m = Measure::lebesgue()
            .with_atoms(vec![crate::measure::Atom { angle: 0.0, mass: 1.0 }])
            .unwrap();
        let (b, ns) = system(&m, 4, 1.0);
        let interp = interpolate(&ns, &b, |_| Complex64::new(1.0, 0.0));
        for k in 0..10 {
            let z = unit(0.7 * k as f64);
            assert!((interp.eval(&b, z) - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn interpolant_reproduces_samples() {
        let m = Measure::arc(1.0).unwrap();
        let (b, ns) = system(&m, 8, 2.5);
        let interp = interpolate(&ns, &b, |z| (z * Complex64::new(0.3, 0.8)).exp());
        for (node, sample) in ns.nodes().iter().zip(interp.samples()) {
            let v = interp.eval(&b, *node);
            assert!((v - sample).norm() <= 1e-9 * (1.0 + sample.norm()));
        }
    }

    #[test]
    fn parseval_matches_discrete_norm() {
        let m = Measure::arc(2.8).unwrap();
        let (b, ns) = system(&m, 9, 0.2);
        let interp = interpolate(&ns, &b, |z| z.exp());
        let discrete: f64 = ns
            .weights()
            .iter()
            .zip(interp.samples())
            .map(|(wgt, s)| wgt * s.norm_sqr())
            .sum();
        let parseval = interp.l2_norm_sq();
        assert!((discrete - parseval).abs() <= 1e-8 * (1.0 + parseval));
    }

    #[test]
    fn interp_error_examples() {
        let m = Measure::lebesgue();
        // f = 1/z, n=1, w=1: error is ||conj(z) - z||_2 = sqrt(2)
        let (b, ns) = system(&m, 1, 0.0);
        let err = interp_error(&ns, &b, &m, |z| 1.0 / z, 2.0, None);
        assert!((err - 2.0f64.sqrt()).abs() < 1e-10, "{err}");

        // entire function at 13 roots of unity: error at Taylor-tail scale
        let (b, ns) = system(&m, 12, 0.0);
        let err = interp_error(&ns, &b, &m, |z| z.exp(), 2.0, None);
        assert!(err < 1e-9, "{err}");
    }
}
