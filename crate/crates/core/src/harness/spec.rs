//! Textual measure descriptors.
//!
//! Grammar (exact):
//!
//! ```text
//! lebesgue
//! arc:<a>                                  0 < a <= pi, radians
//! <base>+atoms:<t1>:<m1>[,<t2>:<m2>...]    angles in radians, masses > 0
//! ```
//!
//! Example: `arc:1.5707963+atoms:0:0.25`.

use std::f64::consts::PI;
use thiserror::Error;

use crate::measure::{Atom, Measure};

#[derive(Debug, Error)]
#[error("at byte {position}: {message}")]
pub struct SpecParseError {
    pub position: usize,
    pub message: String,
}

fn err(position: usize, message: impl Into<String>) -> SpecParseError {
    SpecParseError {
        position,
        message: message.into(),
    }
}

/// Parse a measure descriptor into a [`Measure`].
pub fn parse_measure_spec(text: &str) -> Result<Measure, SpecParseError> {
    let text = text.trim();
    let (base_text, atoms_text) = match text.find('+') {
        Some(idx) => (&text[..idx], Some((&text[idx + 1..], idx + 1))),
        None => (text, None),
    };

    let base = parse_base(base_text)?;
    let measure = match atoms_text {
        None => base,
        Some((rest, offset)) => {
            let atoms = parse_atoms(rest, offset)?;
            base.with_atoms(atoms)
                .map_err(|e| err(offset, e.to_string()))?
        }
    };
    Ok(measure)
}

fn parse_base(base: &str) -> Result<Measure, SpecParseError> {
    if base == "lebesgue" {
        return Ok(Measure::lebesgue());
    }
    if let Some(param) = base.strip_prefix("arc:") {
        let a: f64 = param
            .parse()
            .map_err(|_| err(4, format!("expected a decimal arc half-width, got {param:?}")))?;
        if !(a > 0.0 && a <= PI) {
            return Err(err(4, format!("arc half-width must lie in (0, pi], got {a}")));
        }
        return Measure::arc(a).map_err(|e| err(4, e.to_string()));
    }
    Err(err(
        0,
        format!("expected `lebesgue` or `arc:<a>` as the base measure, got {base:?}"),
    ))
}

fn parse_atoms(rest: &str, offset: usize) -> Result<Vec<Atom>, SpecParseError> {
    let list = rest
        .strip_prefix("atoms:")
        .ok_or_else(|| err(offset, format!("expected `atoms:<theta>:<mass>,...`, got {rest:?}")))?;
    let mut atoms = Vec::new();
    let mut position = offset + "atoms:".len();
    for entry in list.split(',') {
        let mut parts = entry.splitn(2, ':');
        let angle_text = parts.next().unwrap_or("");
        let mass_text = parts
            .next()
            .ok_or_else(|| err(position, format!("atom entry {entry:?} is missing `:mass`")))?;
        let angle: f64 = angle_text
            .parse()
            .map_err(|_| err(position, format!("bad atom angle {angle_text:?}")))?;
        let mass: f64 = mass_text
            .parse()
            .map_err(|_| err(position + angle_text.len() + 1, format!("bad atom mass {mass_text:?}")))?;
        if !(mass > 0.0) {
            return Err(err(
                position + angle_text.len() + 1,
                format!("atom mass must be positive, got {mass}"),
            ));
        }
        atoms.push(Atom { angle, mass });
        position += entry.len() + 1;
    }
    if atoms.is_empty() {
        return Err(err(offset, "atom list must not be empty"));
    }
    Ok(atoms)
}
