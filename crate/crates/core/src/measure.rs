//! Finite positive measures on the unit circle.
//!
//! A [`Measure`] is an absolutely continuous part, given as a piecewise
//! density against dθ/(2π), plus finitely many atoms. This computable
//! class is rich enough to cover both the Szegő and the non-Szegő regime
//! while keeping ∫|g|ᵖ dμ evaluable for arbitrary functions g on 𝕋.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

use crate::unit;

/// Relative agreement required between successive grid doublings when
/// computing moments numerically.
pub const MOMENT_TOL: f64 = 1e-12;
/// Default trapezoid resolution per smooth density piece.
pub const DEFAULT_RESOLUTION: usize = 4096;
/// Hard cap on the per-piece grid size during moment refinement.
pub const MAX_RESOLUTION: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("invalid measure parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "moment quadrature did not converge: residual {residual:e} above {tol:e} at the grid cap"
    )]
    QuadratureNonConvergence { residual: f64, tol: f64 },
}

/// Whether log μ′ ∈ L¹ of Lebesgue measure. Declared by each
/// constructor rather than computed: deciding it numerically is
/// ill-posed, and the flag only routes experiment presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SzegoClass {
    Szego,
    NonSzego,
    Unknown,
}

/// Absolutely continuous part of the measure, as a density against
/// dθ/(2π). Each variant is piecewise smooth with known breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub enum Density {
    /// density ≡ 1; normalized Lebesgue measure, c₀ = 1.
    Lebesgue,
    /// Indicator of the arc [−a, a], 0 < a ≤ π.
    Arc { half_width: f64 },
}

impl Density {
    /// Smooth pieces as angle intervals; the density is smooth in the
    /// interior of each and may jump only at the endpoints.
    pub fn pieces(&self) -> Vec<(f64, f64)> {
        match self {
            Density::Lebesgue => vec![(0.0, TAU)],
            Density::Arc { half_width } => vec![(-half_width, *half_width)],
        }
    }

    /// Angles where smoothness may fail.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Density::Lebesgue => vec![],
            Density::Arc { half_width } => vec![-half_width, *half_width],
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        match self {
            Density::Lebesgue => 1.0,
            Density::Arc { half_width } => {
                // distance from θ to 0 modulo 2π
                let d = (theta.rem_euclid(TAU)).min(TAU - theta.rem_euclid(TAU));
                if d <= *half_width {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// A point mass on the circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    /// Angle in [0, 2π).
    pub angle: f64,
    /// Strictly positive mass.
    pub mass: f64,
}

/// Finite positive Borel measure on 𝕋 in density-plus-atoms form.
#[derive(Clone, Debug)]
pub struct Measure {
    density: Density,
    atoms: Vec<Atom>,
    szego_class: SzegoClass,
}

impl Measure {
    /// Normalized Lebesgue measure dθ/(2π).
    pub fn lebesgue() -> Self {
        Measure {
            density: Density::Lebesgue,
            atoms: Vec::new(),
            szego_class: SzegoClass::Szego,
        }
    }

    /// Indicator of the arc [−a, a] against dθ/(2π). For a < π the
    /// density vanishes on a set of positive measure, so log μ′ ∉ L¹;
    /// a = π is Lebesgue measure itself.
    pub fn arc(half_width: f64) -> Result<Self, MeasureError> {
        if !(half_width > 0.0 && half_width <= PI) {
            return Err(MeasureError::InvalidParameter(format!(
                "arc half-width must lie in (0, pi], got {half_width}"
            )));
        }
        let szego_class = if (half_width - PI).abs() < 1e-15 {
            SzegoClass::Szego
        } else {
            SzegoClass::NonSzego
        };
        Ok(Measure {
            density: Density::Arc { half_width },
            atoms: Vec::new(),
            szego_class,
        })
    }

    /// Add point masses to the measure. The Szegő class flag is
    /// inherited from the base (atoms do not change μ′).
    pub fn with_atoms(mut self, atoms: Vec<Atom>) -> Result<Self, MeasureError> {
        for a in &atoms {
            if !(a.mass > 0.0) || !a.mass.is_finite() {
                return Err(MeasureError::InvalidParameter(format!(
                    "atom mass must be positive and finite, got {}",
                    a.mass
                )));
            }
            if !a.angle.is_finite() {
                return Err(MeasureError::InvalidParameter(
                    "atom angle must be finite".into(),
                ));
            }
        }
        let mut normalized: Vec<Atom> = atoms
            .iter()
            .map(|a| Atom {
                angle: a.angle.rem_euclid(TAU),
                mass: a.mass,
            })
            .collect();
        let mut sorted = normalized.clone();
        sorted.sort_by(|x, y| x.angle.total_cmp(&y.angle));
        for pair in sorted.windows(2) {
            if (pair[0].angle - pair[1].angle).abs() < 1e-14 {
                return Err(MeasureError::InvalidParameter(format!(
                    "duplicate atom angle {}",
                    pair[0].angle
                )));
            }
        }
        self.atoms.append(&mut normalized);
        Ok(self)
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn szego_class(&self) -> SzegoClass {
        self.szego_class
    }

    /// Total mass μ(𝕋) = c₀.
    pub fn mass(&self) -> f64 {
        self.moments(0).moment(0).re
    }

    /// Trigonometric moments c_k = ∫ e^{−ikθ} dμ for 0 ≤ k ≤ order,
    /// using the closed forms of the built-in densities plus the exact
    /// atom sums.
    pub fn moments(&self, order: usize) -> MomentTable {
        let mut values = vec![Complex64::new(0.0, 0.0); order + 1];
        match self.density {
            Density::Lebesgue => values[0] = Complex64::new(1.0, 0.0),
            Density::Arc { half_width } => {
                values[0] = Complex64::new(half_width / PI, 0.0);
                for (k, v) in values.iter_mut().enumerate().skip(1) {
                    *v = Complex64::new((k as f64 * half_width).sin() / (PI * k as f64), 0.0);
                }
            }
        }
        for a in &self.atoms {
            for (k, v) in values.iter_mut().enumerate() {
                *v += a.mass * unit(-(k as f64) * a.angle);
            }
        }
        MomentTable { values }
    }

    /// Moments by Gauss–Legendre quadrature per smooth piece, doubling
    /// the node count until successive estimates agree to
    /// [`MOMENT_TOL`]. Kept alongside the closed forms as an
    /// independent route.
    pub fn moments_numeric(&self, order: usize) -> Result<MomentTable, MeasureError> {
        let mut resolution = (2 * order).max(32);
        let mut prev = self.moments_at_resolution(order, resolution);
        loop {
            resolution *= 2;
            let next = self.moments_at_resolution(order, resolution);
            let residual = prev
                .values
                .iter()
                .zip(&next.values)
                .map(|(a, b)| (a - b).norm() / (1.0 + b.norm()))
                .fold(0.0f64, f64::max);
            if residual <= MOMENT_TOL {
                return Ok(next);
            }
            if resolution >= MAX_RESOLUTION {
                return Err(MeasureError::QuadratureNonConvergence {
                    residual,
                    tol: MOMENT_TOL,
                });
            }
            prev = next;
        }
    }

    fn moments_at_resolution(&self, order: usize, resolution: usize) -> MomentTable {
        let grid = self.quadrature_grid_sized(resolution);
        let values = (0..=order)
            .map(|k| {
                grid.iter()
                    .map(|&(theta, weight)| weight * unit(-(k as f64) * theta))
                    .sum()
            })
            .collect();
        MomentTable { values }
    }

    /// Quadrature points (θᵢ, ωᵢ) with Σᵢ ωᵢ g(e^{iθᵢ}) ≈ ∫ g dμ:
    /// a Gauss–Legendre rule on each smooth density piece plus the atoms
    /// as explicit point masses. The rule is sized so trigonometric
    /// polynomials of degree ≤ `max_freq` are integrated to near
    /// machine precision.
    pub fn quadrature_grid(&self, max_freq: usize) -> Vec<(f64, f64)> {
        // Gauss–Legendre error for e^{ikθ} on a length-L interval decays
        // super-exponentially once the node count passes ~e·L·k/8;
        // 0.8·L·k plus a flat margin keeps every mode below roundoff.
        let max_len = self
            .density
            .pieces()
            .iter()
            .map(|(lo, hi)| hi - lo)
            .fold(0.0f64, f64::max);
        let m = (0.8 * max_len * (max_freq.max(1) as f64)).ceil() as usize + 32;
        self.quadrature_grid_sized(m)
    }

    /// Same grid with an explicit per-piece node count.
    fn quadrature_grid_sized(&self, nodes_per_piece: usize) -> Vec<(f64, f64)> {
        let rule = legendre_rule(nodes_per_piece.max(4));
        let mut grid = Vec::new();
        for (lo, hi) in self.density.pieces() {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for &(x, w) in &rule {
                let theta = mid + half * x;
                grid.push((theta, w * half * self.density.eval_inside(theta) / TAU));
            }
        }
        for a in &self.atoms {
            grid.push((a.angle, a.mass));
        }
        grid
    }

    /// ∫ g dμ: composite trapezoid over each smooth density piece at the
    /// given per-piece resolution, plus the exact atom sum.
    /// Deterministic for fixed inputs.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, g: F, resolution: usize) -> Complex64 {
        let resolution = resolution.max(16);
        let mut total = Complex64::new(0.0, 0.0);
        for (lo, hi) in self.density.pieces() {
            let h = (hi - lo) / resolution as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=resolution {
                let theta = lo + h * i as f64;
                let weight = if i == 0 || i == resolution { 0.5 } else { 1.0 };
                acc += weight * self.density.eval_inside(theta) * g(unit(theta));
            }
            total += acc * h / TAU;
        }
        for a in &self.atoms {
            total += a.mass * g(unit(a.angle));
        }
        total
    }

    /// ‖g‖ₚ = (∫ |g|ᵖ dμ)^{1/p}. The same formula serves 0 < p < 1,
    /// where ‖·‖ₚ is only a quasi-norm.
    pub fn lp_norm<F: Fn(Complex64) -> Complex64>(&self, g: F, p: f64, resolution: usize) -> f64 {
        assert!(p > 0.0, "lp_norm requires p > 0, got {p}");
        let integral = self.integrate(|z| Complex64::new(g(z).norm().powf(p), 0.0), resolution);
        integral.re.max(0.0).powf(1.0 / p)
    }
}

impl Density {
    /// Density value inside a smooth piece. Both built-ins are the
    /// constant 1 there; using this instead of [`Density::eval`] keeps
    /// the piece endpoints from rounding onto the wrong side of an
    /// indicator jump.
    fn eval_inside(&self, _theta: f64) -> f64 {
        match self {
            Density::Lebesgue => 1.0,
            Density::Arc { .. } => 1.0,
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on
/// Pₘ, using the three-term recurrence for the value and derivative.
fn legendre_rule(m: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(m);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// Trigonometric moments c₀..c_N of a measure. Only k ≥ 0 is stored;
/// c₋ₖ = conj(cₖ) is supplied by [`MomentTable::moment`].
#[derive(Clone, Debug)]
pub struct MomentTable {
    values: Vec<Complex64>,
}

impl MomentTable {
    /// Wrap an explicit moment sequence. c₀ must be real and positive.
    pub fn new(values: Vec<Complex64>) -> Result<Self, MeasureError> {
        match values.first() {
            Some(c0) if c0.im.abs() <= 1e-14 * (1.0 + c0.re.abs()) && c0.re > 0.0 => {
                Ok(MomentTable { values })
            }
            Some(c0) => Err(MeasureError::InvalidParameter(format!(
                "c0 must be real and positive, got {c0}"
            ))),
            None => Err(MeasureError::InvalidParameter(
                "moment table must contain at least c0".into(),
            )),
        }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// c_k for any integer k, using c₋ₖ = conj(cₖ).
    pub fn moment(&self, k: i64) -> Complex64 {
        let idx = k.unsigned_abs() as usize;
        assert!(idx <= self.order(), "moment index {k} beyond order {}", self.order());
        if k >= 0 {
            self.values[idx]
        } else {
            self.values[idx].conj()
        }
    }

    /// Total mass c₀.
    pub fn mass(&self) -> f64 {
        self.values[0].re
    }
}
