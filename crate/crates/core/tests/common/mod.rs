//! Shared oracles for the integration tests.
//!
//! Everything here recomputes library quantities by an independent
//! route: Verblunsky coefficients by modified Gram–Schmidt on the
//! moment Gram matrix, and para-orthogonal zeros by companion-matrix
//! eigenvalues. The Gram–Schmidt oracle is carried in two-float
//! arithmetic because the map from moments to orthogonal polynomials
//! amplifies input perturbations exponentially when the coefficients do
//! not decay; in plain `f64` the oracle and the implementation would
//! drift apart for reasons that have nothing to do with either being
//! wrong.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use szego_interp::{MomentTable, OpucBasis};

/// Two-float arithmetic: a value is an unevaluated sum `(hi, lo)`.
pub mod qd {
    /// Unevaluated two-float sum.
    pub type Q = (f64, f64);

    pub fn from_f64(x: f64) -> Q {
        (x, 0.0)
    }

    pub fn to_f64(x: Q) -> f64 {
        x.0 + x.1
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let v = s - a;
        (s, (a - (s - v)) + (b - v))
    }

    fn fast_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    pub fn add(x: Q, y: Q) -> Q {
        let (s, e) = two_sum(x.0, y.0);
        let (t, f) = two_sum(x.1, y.1);
        let (s, e) = fast_sum(s, e + t);
        fast_sum(s, e + f)
    }

    pub fn neg(x: Q) -> Q {
        (-x.0, -x.1)
    }

    pub fn sub(x: Q, y: Q) -> Q {
        add(x, neg(y))
    }

    pub fn mul(x: Q, y: Q) -> Q {
        let p = x.0 * y.0;
        let e = x.0.mul_add(y.0, -p);
        fast_sum(p, e + x.0 * y.1 + x.1 * y.0)
    }

    pub fn div(x: Q, y: Q) -> Q {
        let q1 = x.0 / y.0;
        let r = sub(x, mul(y, from_f64(q1)));
        let q2 = r.0 / y.0;
        let r = sub(r, mul(y, from_f64(q2)));
        add(fast_sum(q1, q2), from_f64(r.0 / y.0))
    }

    /// One Newton step on an `f64` seed is enough at this precision.
    pub fn sqrt(x: Q) -> Q {
        let y = from_f64(x.0.sqrt());
        mul(add(y, div(x, y)), from_f64(0.5))
    }

    /// Complex value with two-float parts.
    pub type Qc = (Q, Q);

    pub fn c_from(re: f64, im: f64) -> Qc {
        (from_f64(re), from_f64(im))
    }

    pub fn c_to(x: Qc) -> num_complex::Complex64 {
        num_complex::Complex64::new(to_f64(x.0), to_f64(x.1))
    }

    pub fn c_add(x: Qc, y: Qc) -> Qc {
        (add(x.0, y.0), add(x.1, y.1))
    }

    pub fn c_sub(x: Qc, y: Qc) -> Qc {
        (sub(x.0, y.0), sub(x.1, y.1))
    }

    pub fn c_mul(x: Qc, y: Qc) -> Qc {
        (
            sub(mul(x.0, y.0), mul(x.1, y.1)),
            add(mul(x.0, y.1), mul(x.1, y.0)),
        )
    }

    pub fn c_conj(x: Qc) -> Qc {
        (x.0, neg(x.1))
    }

    pub fn c_scale(x: Qc, s: Q) -> Qc {
        (mul(x.0, s), mul(x.1, s))
    }
}

/// The Gram–Schmidt orthonormalization of {1, z, …, z^max_degree}
/// under the moment inner product ⟨zᵃ, zᵇ⟩ = c_{b−a}: monic
/// coefficient vectors and their orthonormal rescalings, in two-float
/// arithmetic with a second orthogonalization pass.
struct GramSchmidt {
    monic_constant_terms: Vec<qd::Qc>,
    orthonormal: Vec<Vec<qd::Qc>>,
}

fn gram_schmidt(t: &MomentTable, max_degree: usize) -> GramSchmidt {
    use qd::*;
    let dim = max_degree + 1;
    // gram[a][b] = <z^a, z^b> = c_{b-a}
    let gram: Vec<Vec<Qc>> = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| {
                    let c = t.moment(b as i64 - a as i64);
                    c_from(c.re, c.im)
                })
                .collect()
        })
        .collect();
    let ip = |u: &[Qc], v: &[Qc]| -> Qc {
        let mut acc = c_from(0.0, 0.0);
        for (a, ua) in u.iter().enumerate() {
            for (b, vb) in v.iter().enumerate() {
                acc = c_add(acc, c_mul(c_mul(*ua, c_conj(*vb)), gram[a][b]));
            }
        }
        acc
    };

    let mut out = GramSchmidt {
        monic_constant_terms: Vec::new(),
        orthonormal: Vec::new(),
    };
    for n in 0..dim {
        let mut v: Vec<Qc> = vec![c_from(0.0, 0.0); n + 1];
        v[n] = c_from(1.0, 0.0);
        for _pass in 0..2 {
            for q in &out.orthonormal {
                let proj = ip(&v, q);
                for (a, qa) in q.iter().enumerate() {
                    v[a] = c_sub(v[a], c_mul(proj, *qa));
                }
            }
        }
        let norm_sq = ip(&v, &v).0;
        if to_f64(norm_sq) <= 0.0 {
            // the stored (rounded) moments stop being a positive-measure
            // moment sequence at this order; everything beyond is
            // undefined, for this oracle and for any other route
            break;
        }
        // v is monic: the passes never touch the leading entry
        out.monic_constant_terms.push(v[0]);
        let inv = div(from_f64(1.0), sqrt(norm_sq));
        out.orthonormal
            .push(v.iter().map(|x| c_scale(*x, inv)).collect());
    }
    out
}

/// Verblunsky coefficients by Gram–Schmidt, read off as
/// αₙ = −conj(Φₙ₊₁(0)) from the monic vectors. Returns α₀..α_{K−1}
/// where K ≤ max_degree is the last order at which the stored moments
/// are still a positive-measure moment sequence (rounding can destroy
/// positivity at surprisingly low order when the true coefficients do
/// not decay).
pub fn gram_schmidt_alphas(t: &MomentTable, max_degree: usize) -> Vec<Complex64> {
    gram_schmidt(t, max_degree)
        .monic_constant_terms
        .iter()
        .skip(1)
        .map(|c| -qd::c_to(*c).conj())
        .collect()
}

/// Orthonormal φₙ(z) evaluated from the Gram–Schmidt coefficient
/// vectors, for spot checks against the recursion route.
pub fn gram_schmidt_phi(t: &MomentTable, n: usize, z: Complex64) -> Complex64 {
    let gs = gram_schmidt(t, n);
    gs.orthonormal[n]
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + qd::c_to(*c))
}

/// Monomial coefficients of φₙ and φₙ* from the Verblunsky
/// coefficients, by running the Szegő recursion on coefficient vectors.
fn phi_coefficient_vectors(basis: &OpucBasis, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let kappa0 = basis.kappas()[0];
    let mut phi = vec![Complex64::new(kappa0, 0.0)];
    let mut star = phi.clone();
    for k in 0..n {
        let alpha = basis.alphas()[k];
        let scale = (1.0 - alpha.norm_sqr()).sqrt().recip();
        let mut next_phi = vec![Complex64::new(0.0, 0.0); k + 2];
        let mut next_star = vec![Complex64::new(0.0, 0.0); k + 2];
        for (a, c) in phi.iter().enumerate() {
            next_phi[a + 1] += scale * c;
            next_star[a + 1] -= scale * alpha * c;
        }
        for (a, c) in star.iter().enumerate() {
            next_phi[a] -= scale * alpha.conj() * c;
            next_star[a] += scale * c;
        }
        phi = next_phi;
        star = next_star;
    }
    (phi, star)
}

/// Zeros of the para-orthogonal polynomial Bₙ₊₁(w,·) by an independent
/// route: expand (1 − w̄z)Kₙ(w,z) = conj(φₙ₊₁*(w))φₙ₊₁*(z) −
/// conj(φₙ₊₁(w))φₙ₊₁(z) in the monomial basis and take companion-matrix
/// eigenvalues.
pub fn companion_nodes(basis: &OpucBasis, n: usize, w: Complex64) -> Vec<Complex64> {
    let (phi, star) = phi_coefficient_vectors(basis, n + 1);
    let horner = |c: &[Complex64], z: Complex64| {
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, v| acc * z + v)
    };
    let a = horner(&star, w).conj();
    let b = horner(&phi, w).conj();
    let mut coeffs: Vec<Complex64> = (0..=n + 1)
        .map(|k| a * star.get(k).copied().unwrap_or_default() - b * phi[k])
        .collect();

    let lead = *coeffs.last().unwrap();
    assert!(
        lead.norm() > 1e-12,
        "para-orthogonal leading coefficient vanished"
    );
    for c in coeffs.iter_mut() {
        *c /= lead;
    }

    let m = n + 1;
    let mut mat = DMatrix::<Complex64>::zeros(m, m);
    for i in 1..m {
        mat[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..m {
        mat[(i, m - 1)] = -coeffs[i];
    }
    let eigen = mat
        .schur()
        .eigenvalues()
        .expect("companion matrix eigenvalues");
    let mut nodes: Vec<Complex64> = eigen.iter().copied().collect();
    // the zeros are unimodular in exact arithmetic; project and sort
    for z in nodes.iter_mut() {
        assert!((z.norm() - 1.0).abs() < 1e-6, "eigenvalue off circle: {z}");
        *z /= z.norm();
    }
    nodes.sort_by(|x, y| {
        x.arg()
            .rem_euclid(std::f64::consts::TAU)
            .total_cmp(&y.arg().rem_euclid(std::f64::consts::TAU))
    });
    nodes
}

/// Largest distance from any point of `a` to the nearest point of `b`,
/// symmetrized.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |xs: &[Complex64], ys: &[Complex64]| {
        xs.iter()
            .map(|x| {
                ys.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// The three measures every acceptance run exercises.
pub fn test_measure_specs() -> [&'static str; 3] {
    ["lebesgue", "arc:1.5707963", "lebesgue+atoms:0:1.0"]
}
