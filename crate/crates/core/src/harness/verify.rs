//! Identity-verification suite.
//!
//! Runs every numerical invariant of the kernel/node/interpolation
//! stack against one measure, over degrees n ∈ {1, 2, 4, …, n_max},
//! with seeded random generating points and test polynomials, and
//! reports the worst residual per invariant.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use super::catalog::FunctionId;
use super::{parse_measure_spec, HarnessError};
use crate::lagrange;
use crate::measure::Measure;
use crate::opuc::OpucBasis;
use crate::paraorth::{find_nodes, NodeSystem};
use crate::unit;

#[derive(Clone, Debug)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl VerifyCheck {
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub measure: String,
    pub n_max: usize,
    pub seed: u64,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(VerifyCheck::pass)
    }

    pub fn render_table(&self) -> String {
        let mut out = format!(
            "measure={} n_max={} seed={}\n{:<24} {:>13} {:>10} result\n",
            self.measure, self.n_max, self.seed, "invariant", "max residual", "tolerance"
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{:<24} {:>13.3e} {:>10.1e} {}\n",
                c.name,
                c.residual,
                c.tolerance,
                if c.pass() { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

struct Checks(Vec<VerifyCheck>);

impl Checks {
    fn new(spec: &[(&'static str, f64)]) -> Self {
        Checks(
            spec.iter()
                .map(|(name, tolerance)| VerifyCheck {
                    name,
                    residual: 0.0,
                    tolerance: *tolerance,
                })
                .collect(),
        )
    }

    fn bump(&mut self, name: &str, residual: f64) {
        let check = self
            .0
            .iter_mut()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("unknown check {name}"));
        if residual > check.residual {
            check.residual = residual;
        }
    }
}

fn degree_schedule(n_max: usize) -> Vec<usize> {
    let mut degrees = Vec::new();
    let mut n = 1;
    while n <= n_max {
        degrees.push(n);
        n *= 2;
    }
    if *degrees.last().unwrap() != n_max {
        degrees.push(n_max);
    }
    degrees
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    unit(rng.gen::<f64>() * TAU)
}

/// Random point of supp μ (uniform over the density pieces). Pointwise
/// identities are polynomial identities on all of ℂ, but for measures
/// whose density vanishes on a set of positive measure the polynomials
/// grow exponentially off the support, so only on supp μ — where the
/// Lᵖ(μ) theory lives — can finite precision resolve them.
fn random_support_point(measure: &Measure, rng: &mut ChaCha8Rng) -> Complex64 {
    let pieces = measure.density().pieces();
    let total: f64 = pieces.iter().map(|(lo, hi)| hi - lo).sum();
    let mut t = rng.gen::<f64>() * total;
    for &(lo, hi) in &pieces {
        if t <= hi - lo {
            return unit(lo + t);
        }
        t -= hi - lo;
    }
    unit(pieces.last().map(|&(_, hi)| hi).unwrap_or(0.0))
}

/// Σᵢ ωᵢ g(e^{iθᵢ}) over a grid from [`Measure::quadrature_grid`]:
/// near machine precision for polynomial integrands, unlike the
/// trapezoid rule on a non-periodic piece.
fn integrate_grid<F: Fn(Complex64) -> Complex64>(grid: &[(f64, f64)], g: F) -> Complex64 {
    grid.iter().map(|&(theta, w)| w * g(unit(theta))).sum()
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Vec<Complex64> {
    (0..=degree)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Largest circular distance from any angle of `a` to the nearest
/// angle of `b`.
fn angle_hausdorff(a: &NodeSystem, b: &NodeSystem) -> f64 {
    a.nodes()
        .iter()
        .map(|x| {
            b.nodes()
                .iter()
                .map(|y| {
                    let d = (x.arg() - y.arg()).rem_euclid(TAU);
                    d.min(TAU - d)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

pub fn run_verify(spec: &str, n_max: usize, seed: u64) -> Result<VerifyReport, HarnessError> {
    if n_max == 0 || n_max > 64 {
        return Err(HarnessError::Config(format!(
            "n_max must lie in 1..=64, got {n_max}"
        )));
    }
    let measure = parse_measure_spec(spec)?;
    let moments = measure.moments(n_max + 2);
    let basis = OpucBasis::from_measure(&measure, n_max + 2)?;
    let c0 = moments.mass();
    // exact (to roundoff) for every polynomial integrand below
    let grid = measure.quadrature_grid(2 * (n_max + 2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut checks = Checks::new(&[
        ("orthonormality", 1e-8),
        ("reproducing_property", 1e-8),
        ("modulus_symmetry", 1e-12),
        ("cd_consistency", 1e-10),
        ("kappa_monotone", 1e-14),
        ("kernel_offdiagonal", 1e-8),
        ("node_set_symmetry", 1e-9),
        ("laurent_exactness", 1e-8),
        ("mass_identity", 1e-10),
        ("weights_positive", 0.0),
        ("node_min_gap", 0.0),
        ("delta_property", 1e-9),
        ("partition_of_unity", 1e-9),
        ("parseval", 1e-8),
        ("fundamental_norms", 1e-8),
        ("boundedness_witness", 1e-8),
        ("projection", 1e-8),
    ]);

    orthonormality(&grid, &basis, n_max, &mut checks);
    kappa_monotonicity(&basis, &mut checks);

    for n in degree_schedule(n_max) {
        let w = random_unimodular(&mut rng);
        let ns = find_nodes(&basis, n, w)?;

        phi_checks(&basis, n, &mut rng, &mut checks);
        if n <= 8 {
            reproducing(&grid, &basis, n, &mut rng, &mut checks);
        }
        node_checks(&basis, &moments, n, &ns, &mut rng, &mut checks);
        lagrange_checks(&measure, &grid, &basis, &ns, c0, &mut rng, &mut checks);
    }

    Ok(VerifyReport {
        measure: spec.to_string(),
        n_max,
        seed,
        checks: checks.0,
    })
}

fn orthonormality(grid: &[(f64, f64)], basis: &OpucBasis, n_max: usize, checks: &mut Checks) {
    let top = n_max.min(8);
    for j in 0..=top {
        for k in 0..=top {
            let inner = integrate_grid(grid, |z| {
                basis.eval_phi(j, z).phi * basis.eval_phi(k, z).phi.conj()
            });
            let expected = if j == k { 1.0 } else { 0.0 };
            checks.bump(
                "orthonormality",
                (inner - Complex64::new(expected, 0.0)).norm(),
            );
        }
    }
}

fn kappa_monotonicity(basis: &OpucBasis, checks: &mut Checks) {
    for pair in basis.kappas().windows(2) {
        checks.bump("kappa_monotone", ((pair[0] - pair[1]) / pair[0]).max(0.0));
    }
}

fn phi_checks(basis: &OpucBasis, n: usize, rng: &mut ChaCha8Rng, checks: &mut Checks) {
    for _ in 0..10 {
        let z = random_unimodular(rng);
        let p = basis.eval_phi(n, z);
        checks.bump(
            "modulus_symmetry",
            (p.phi.norm() - p.phi_star.norm()).abs() / (1.0 + p.phi.norm()),
        );

        let w = random_unimodular(rng);
        if (1.0 - w.conj() * z).norm() > 1e-6 {
            let cd = basis.cd_kernel(n, w, z);
            let direct = basis.kernel_sum(n, w, z);
            checks.bump(
                "cd_consistency",
                (cd - direct).norm() / (1.0 + direct.norm()),
            );
        }
    }
}

fn reproducing(
    grid: &[(f64, f64)],
    basis: &OpucBasis,
    n: usize,
    rng: &mut ChaCha8Rng,
    checks: &mut Checks,
) {
    for _ in 0..3 {
        let coeffs = random_poly(rng, n);
        let w = random_unimodular(rng);
        let value = integrate_grid(grid, |z| {
            horner(&coeffs, z) * basis.cd_kernel(n, w, z).conj()
        });
        let at_w = horner(&coeffs, w);
        checks.bump(
            "reproducing_property",
            (value - at_w).norm() / (1.0 + at_w.norm()),
        );
    }
}

fn node_checks(
    basis: &OpucBasis,
    moments: &crate::measure::MomentTable,
    n: usize,
    ns: &NodeSystem,
    rng: &mut ChaCha8Rng,
    checks: &mut Checks,
) {
    let c0 = moments.mass();
    let nodes = ns.nodes();
    let diag = ns.kernel_diags();

    // Kn(zeta_j, zeta_m) = 0 off the diagonal
    for j in 0..nodes.len() {
        for m in (j + 1)..nodes.len() {
            let k = basis.cd_kernel(n, nodes[j], nodes[m]);
            checks.bump(
                "kernel_offdiagonal",
                k.norm() / (diag[j] * diag[m]).sqrt(),
            );
        }
    }

    // rebuilding from any node reproduces the node set
    let j = rng.gen_range(0..nodes.len());
    if let Ok(rebuilt) = find_nodes(basis, n, nodes[j]) {
        checks.bump("node_set_symmetry", angle_hausdorff(ns, &rebuilt));
    } else {
        checks.bump("node_set_symmetry", f64::INFINITY);
    }

    // quadrature is exact on Laurent monomials z^k, |k| <= n
    for k in -(n as i64)..=(n as i64) {
        let q = ns.quadrature(|z| z.powi(k as i32));
        checks.bump(
            "laurent_exactness",
            (q - moments.moment(k).conj()).norm() / c0,
        );
    }

    let total: f64 = ns.weights().iter().sum();
    checks.bump("mass_identity", (total - c0).abs() / c0);

    let min_weight = ns.weights().iter().cloned().fold(f64::INFINITY, f64::min);
    checks.bump("weights_positive", (-min_weight).max(0.0));

    let mut min_gap = f64::INFINITY;
    for j in 0..nodes.len() {
        let next = (j + 1) % nodes.len();
        let d = (nodes[next].arg() - nodes[j].arg()).rem_euclid(TAU);
        min_gap = min_gap.min(d.min(TAU - d));
    }
    checks.bump("node_min_gap", (1e-10 - min_gap).max(0.0));
}

fn lagrange_checks(
    measure: &Measure,
    grid: &[(f64, f64)],
    basis: &OpucBasis,
    ns: &NodeSystem,
    c0: f64,
    rng: &mut ChaCha8Rng,
    checks: &mut Checks,
) {
    let n = ns.degree();
    let nodes = ns.nodes();
    let diag = ns.kernel_diags();

    // delta property in the L2(mu)-normalized frame: the residual of
    // l_j(zeta_k) is scaled by sqrt(Kn(zeta_j,zeta_j)/Kn(zeta_k,zeta_k)),
    // which compares node pairs with wildly different Christoffel
    // weights fairly (an unscaled comparison would demand cancellation
    // beyond what any precision can deliver when the weights differ by
    // many orders of magnitude)
    for j in 0..=n {
        for k in 0..=n {
            let v = lagrange::fundamental_eval(ns, basis, j, nodes[k]);
            let scaled = v * (diag[j] / diag[k]).sqrt();
            let expected = if j == k { 1.0 } else { 0.0 };
            checks.bump(
                "delta_property",
                (scaled - Complex64::new(expected, 0.0)).norm(),
            );
        }
    }

    for _ in 0..50 {
        let z = random_support_point(measure, rng);
        let total: Complex64 = (0..=n)
            .map(|j| lagrange::fundamental_eval(ns, basis, j, z))
            .sum();
        checks.bump("partition_of_unity", (total - Complex64::new(1.0, 0.0)).norm());
    }

    // ||l_j||_2^2 = weight_j, and they sum to the total mass
    let mut norm_total = 0.0;
    for j in 0..=n {
        let norm_sq = integrate_grid(grid, |z| {
            let v = lagrange::fundamental_eval(ns, basis, j, z);
            Complex64::new(v.norm_sqr(), 0.0)
        })
        .re;
        norm_total += norm_sq;
        checks.bump("fundamental_norms", (norm_sq - ns.weights()[j]).abs() / c0);
    }
    checks.bump("fundamental_norms", (norm_total - c0).abs() / c0);

    for f in FunctionId::ALL {
        let interp = lagrange::interpolate(ns, basis, |z| f.eval(z));

        // Parseval: continuous L2 norm of the interpolant equals the
        // weighted sum of its node samples
        let continuous = integrate_grid(grid, |z| {
            Complex64::new(interp.eval(basis, z).norm_sqr(), 0.0)
        })
        .re;
        let discrete: f64 = ns
            .weights()
            .iter()
            .zip(interp.samples())
            .map(|(wgt, s)| wgt * s.norm_sqr())
            .sum();
        checks.bump("parseval", (continuous - discrete).abs() / (1.0 + discrete));

        // ||L_n(f)||_2 <= sqrt(c0) * max_j |f(zeta_j)|
        let max_sample = interp
            .samples()
            .iter()
            .map(|s| s.norm())
            .fold(0.0, f64::max);
        if max_sample > 0.0 {
            let ratio = discrete.sqrt() / (c0.sqrt() * max_sample);
            checks.bump("boundedness_witness", (ratio - 1.0).max(0.0));
        }

        // L_n(L_n(f)) = L_n(f)
        let again = lagrange::interpolate(ns, basis, |z| interp.eval(basis, z));
        for _ in 0..20 {
            let z = random_support_point(measure, rng);
            let a = interp.eval(basis, z);
            let b = again.eval(basis, z);
            checks.bump("projection", (a - b).norm() / (1.0 + a.norm()));
        }
    }
}
