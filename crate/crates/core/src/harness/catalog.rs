//! Built-in test functions on the unit circle.
//!
//! Two families: functions that are merely continuous on 𝕋 (`conj`,
//! `absim`, `dist1`) and members of the disk algebra (`exp`, `geom`,
//! `poly7`).

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

use crate::unit;

const POLY7: [Complex64; 8] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.5, -0.25),
    Complex64::new(-0.75, 0.5),
    Complex64::new(0.25, 0.25),
    Complex64::new(0.0, -0.5),
    Complex64::new(0.6, 0.1),
    Complex64::new(-0.3, 0.2),
    Complex64::new(0.45, -0.35),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionId {
    /// z ↦ 1/z = z̄ on 𝕋.
    Conj,
    /// z ↦ |Im z|.
    AbsIm,
    /// z ↦ |z − 1|.
    Dist1,
    /// z ↦ e^z.
    Exp,
    /// z ↦ 1/(2 − z).
    Geom,
    /// A fixed degree-7 polynomial.
    Poly7,
}

impl FunctionId {
    pub const ALL: [FunctionId; 6] = [
        FunctionId::Conj,
        FunctionId::AbsIm,
        FunctionId::Dist1,
        FunctionId::Exp,
        FunctionId::Geom,
        FunctionId::Poly7,
    ];

    pub fn eval(self, z: Complex64) -> Complex64 {
        match self {
            FunctionId::Conj => 1.0 / z,
            FunctionId::AbsIm => Complex64::new(z.im.abs(), 0.0),
            FunctionId::Dist1 => Complex64::new((z - 1.0).norm(), 0.0),
            FunctionId::Exp => z.exp(),
            FunctionId::Geom => 1.0 / (Complex64::new(2.0, 0.0) - z),
            FunctionId::Poly7 => POLY7
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c),
        }
    }

    /// Analytic in the disk and continuous up to the boundary.
    pub fn is_disk_algebra(self) -> bool {
        matches!(self, FunctionId::Exp | FunctionId::Geom | FunctionId::Poly7)
    }

    /// sup-norm on 𝕋, estimated on a uniform angle grid.
    pub fn sup_norm(self, resolution: usize) -> f64 {
        (0..resolution)
            .map(|i| {
                self.eval(unit(std::f64::consts::TAU * i as f64 / resolution as f64))
                    .norm()
            })
            .fold(0.0, f64::max)
    }
}

impl FromStr for FunctionId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conj" => Ok(FunctionId::Conj),
            "absim" => Ok(FunctionId::AbsIm),
            "dist1" => Ok(FunctionId::Dist1),
            "exp" => Ok(FunctionId::Exp),
            "geom" => Ok(FunctionId::Geom),
            "poly7" => Ok(FunctionId::Poly7),
            other => Err(format!(
                "unknown function id {other:?}; expected one of conj, absim, dist1, exp, geom, poly7"
            )),
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FunctionId::Conj => "conj",
            FunctionId::AbsIm => "absim",
            FunctionId::Dist1 => "dist1",
            FunctionId::Exp => "exp",
            FunctionId::Geom => "geom",
            FunctionId::Poly7 => "poly7",
        };
        f.write_str(name)
    }
}
