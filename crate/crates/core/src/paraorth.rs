//! Para-orthogonal polynomials and Szegő quadrature nodes.
//!
//! Bₙ₊₁(w,z) = conj(φₙ₊₁*(w))·φₙ₊₁*(z) − conj(φₙ₊₁(w))·φₙ₊₁(z) has
//! n+1 simple zeros on the unit circle, one of them w. Because the
//! polynomial is self-inversive, e^{−i(n+1)θ/2}·Bₙ₊₁(w,e^{iθ}) is real
//! up to one fixed unimodular factor σ, so the zeros can be bracketed
//! by sign changes of a real function of θ and bisected to machine
//! accuracy with no linear-algebra machinery. The monic form
//! zΦₙ(z) − β̄Φₙ*(z) with β = w̄·φₙ*(w)/φₙ(w) would admit an
//! eigenvalue route instead; the bisection keeps per-zero error
//! control.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

use crate::opuc::OpucBasis;
use crate::unit;

/// Bisection stops when the bracket width drops below this.
const BISECT_TOL: f64 = 1e-13;
/// Step for the centered-difference derivative in the Newton polish.
const NEWTON_STEP: f64 = 1e-7;
/// Angles closer than this (mod 2π) are the same zero.
const DEDUP_TOL: f64 = 1e-9;
/// The found zero nearest w must be within this chordal distance of w.
const SNAP_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum ParaorthError {
    #[error(
        "node finding failed for n = {n}: found {found} distinct unimodular zeros, \
         expected {expected}"
    )]
    NodeFindingFailure { n: usize, found: usize, expected: usize },
    #[error("generating point w must be unimodular, got |w| = {modulus}")]
    GeneratorOffCircle { modulus: f64 },
}

/// The n+1 zeros of Bₙ₊₁(w,·) with their kernel diagonals and the
/// masses of the discrete measure μₙ.
#[derive(Clone, Debug)]
pub struct NodeSystem {
    n: usize,
    w: Complex64,
    nodes: Vec<Complex64>,
    kernel_diags: Vec<f64>,
    weights: Vec<f64>,
}

impl NodeSystem {
    /// Degree parameter; the system has n+1 nodes.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// The generating point w ∈ Zₙ(w).
    pub fn generator(&self) -> Complex64 {
        self.w
    }

    /// Nodes ζ₀ₙ..ζₙₙ sorted by angle in [0, 2π).
    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// Kₙ(ζⱼₙ, ζⱼₙ) per node.
    pub fn kernel_diags(&self) -> &[f64] {
        &self.kernel_diags
    }

    /// Szegő weights 1/Kₙ(ζⱼₙ, ζⱼₙ).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Qₙ(f) = Σⱼ f(ζⱼₙ)/Kₙ(ζⱼₙ,ζⱼₙ).
    pub fn quadrature<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(z, wgt)| wgt * f(*z))
            .sum()
    }
}

/// Bₙ₊₁(w,z), evaluated from the recursion values at degree n+1.
pub fn para_eval(b: &OpucBasis, n: usize, w: Complex64, z: Complex64) -> Complex64 {
    let pw = b.eval_phi(n + 1, w);
    let pz = b.eval_phi(n + 1, z);
    pw.phi_star.conj() * pz.phi_star - pw.phi.conj() * pz.phi
}

/// Locate the n+1 zeros of Bₙ₊₁(w,·) on 𝕋 and assemble the node
/// system.
pub fn find_nodes(b: &OpucBasis, n: usize, w: Complex64) -> Result<NodeSystem, ParaorthError> {
    let modulus = w.norm();
    if (modulus - 1.0).abs() > 1e-10 {
        return Err(ParaorthError::GeneratorOffCircle { modulus });
    }
    let w = w / modulus;
    let expected = n + 1;
    // half-angle phase: antiperiodic over 2π when n+1 is odd
    let span = if expected % 2 == 1 { 2.0 * TAU } else { TAU };
    let half = expected as f64 / 2.0;
    let g = |theta: f64| unit(-half * theta) * para_eval(b, n, w, unit(theta));

    let mut grid = 8 * expected;
    let max_grid = 128 * expected;
    let mut angles;
    loop {
        angles = scan_real_zeros(&g, span, grid);
        if angles.len() == expected {
            break;
        }
        if grid >= max_grid {
            return Err(ParaorthError::NodeFindingFailure {
                n,
                found: angles.len(),
                expected,
            });
        }
        grid *= 2;
    }

    // snap the zero nearest w onto w exactly
    let w_angle = w.arg().rem_euclid(TAU);
    let mut nearest = 0;
    let mut best = f64::INFINITY;
    for (j, theta) in angles.iter().enumerate() {
        let d = (unit(*theta) - w).norm();
        if d < best {
            best = d;
            nearest = j;
        }
    }
    if best > SNAP_TOL {
        return Err(ParaorthError::NodeFindingFailure {
            n,
            found: angles.len(),
            expected,
        });
    }
    angles[nearest] = w_angle;

    let mut pairs: Vec<(f64, Complex64)> = angles
        .iter()
        .enumerate()
        .map(|(j, theta)| {
            let node = if j == nearest { w } else { unit(*theta) };
            (*theta, node)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let nodes: Vec<Complex64> = pairs.iter().map(|p| p.1).collect();
    let kernel_diags: Vec<f64> = nodes.iter().map(|z| b.kernel_diag(n, *z)).collect();
    let weights: Vec<f64> = kernel_diags.iter().map(|kd| kd.recip()).collect();
    if weights.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(ParaorthError::NodeFindingFailure {
            n,
            found: nodes.len(),
            expected,
        });
    }

    Ok(NodeSystem {
        n,
        w,
        nodes,
        kernel_diags,
        weights,
    })
}

/// Zeros (mod 2π) of Re[σ·g] over one period of length `span`, found by
/// sign-change bracketing on a uniform grid and bisection.
fn scan_real_zeros<G: Fn(f64) -> Complex64>(g: &G, span: f64, grid: usize) -> Vec<f64> {
    let step = span / grid as f64;
    let samples: Vec<Complex64> = (0..grid).map(|i| g(step * i as f64)).collect();

    // fix the unimodular factor from the largest sample
    let peak = samples
        .iter()
        .cloned()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or_default();
    if peak.norm() == 0.0 {
        return Vec::new();
    }
    let sigma = (peak / peak.norm()).conj();
    let h = |theta: f64| (sigma * g(theta)).re;
    let hv: Vec<f64> = samples.iter().map(|v| (sigma * v).re).collect();

    let mut raw = Vec::new();
    for i in 0..grid {
        let a = step * i as f64;
        let fa = hv[i];
        let fb = hv[(i + 1) % grid];
        if fa == 0.0 {
            raw.push(a);
            continue;
        }
        if fa * fb < 0.0 {
            let mut theta = bisect(&h, a, a + step, fa);
            // one Newton polish with a centered-difference derivative
            let hp = (h(theta + NEWTON_STEP) - h(theta - NEWTON_STEP)) / (2.0 * NEWTON_STEP);
            if hp != 0.0 {
                let delta = h(theta) / hp;
                if delta.is_finite() && delta.abs() < step {
                    theta -= delta;
                }
            }
            raw.push(theta);
        }
    }

    dedup_angles(raw)
}

fn bisect<H: Fn(f64) -> f64>(h: &H, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > BISECT_TOL {
        let mid = 0.5 * (a + b);
        let fm = h(mid);
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Reduce angles mod 2π, sort, and merge clusters closer than
/// [`DEDUP_TOL`] (including across the 0/2π seam).
fn dedup_angles(raw: Vec<f64>) -> Vec<f64> {
    if raw.is_empty() {
        return raw;
    }
    let mut angles: Vec<f64> = raw.into_iter().map(|t| t.rem_euclid(TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::new();
    for theta in angles {
        match merged.last_mut() {
            Some(last) if theta - *last < DEDUP_TOL => {
                *last = 0.5 * (*last + theta);
            }
            _ => merged.push(theta),
        }
    }
    if merged.len() > 1 {
        let first = merged[0];
        let last = *merged.last().unwrap();
        if first + TAU - last < DEDUP_TOL {
            merged.pop();
        }
    }
    merged
}
