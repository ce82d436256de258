//! Builders for the nonpositive parts of the five algebras.

pub mod e16;
pub mod e44;
pub mod e510;
pub mod extract;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::GradedSuperalgebra;
use crate::error::{Error, Result};
use crate::superpoly::DEFAULT_TRUNCATION;

pub use extract::{Extraction, Generator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgebraId {
    E44,
    E510,
    E36,
    E38,
    E16,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 5] = [
        AlgebraId::E44,
        AlgebraId::E510,
        AlgebraId::E36,
        AlgebraId::E38,
        AlgebraId::E16,
    ];

    /// Short identifier used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            AlgebraId::E44 => "E44",
            AlgebraId::E510 => "E510",
            AlgebraId::E36 => "E36",
            AlgebraId::E38 => "E38",
            AlgebraId::E16 => "E16",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraId::E44 => e44::NAME,
            AlgebraId::E510 => e510::NAME_E510,
            AlgebraId::E36 => e510::NAME_E36,
            AlgebraId::E38 => e510::NAME_E38,
            AlgebraId::E16 => e16::NAME,
        }
    }

    /// Whether parity ≡ degree mod 2 is expected. Only E(4,4) has a
    /// `g_{-1}` that is not purely odd.
    pub fn consistent_gradation(self) -> bool {
        self != AlgebraId::E44
    }

    /// Degrees present in the basis but outside solver constraints and
    /// the generation check.
    pub fn excluded_degrees(self) -> &'static [i32] {
        match self {
            AlgebraId::E38 => &[-3],
            _ => &[],
        }
    }

    pub fn from_name(name: &str) -> Option<AlgebraId> {
        AlgebraId::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    /// Accepts `E44`, `e44` or `E(4,4)`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        AlgebraId::ALL.into_iter().find(|a| a.id() == key).ok_or_else(|| {
            Error::Config(format!(
                "unknown algebra {s:?}; expected one of E44, E510, E36, E38, E16"
            ))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BuildOptions {
    /// Maximum polynomial degree of realization coefficients.
    pub truncation: u32,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

pub fn build(id: AlgebraId) -> Result<GradedSuperalgebra> {
    build_with(id, &BuildOptions::default()).map(|e| e.algebra)
}

pub fn build_with(id: AlgebraId, opts: &BuildOptions) -> Result<Extraction> {
    let t = opts.truncation;
    match id {
        AlgebraId::E44 => e44::build(),
        AlgebraId::E510 => e510::build_e510(t),
        AlgebraId::E36 => e510::build_e36(t),
        AlgebraId::E38 => e510::build_e38(t),
        AlgebraId::E16 => e16::build(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ids() {
        assert_eq!("E(5,10)".parse::<AlgebraId>().unwrap(), AlgebraId::E510);
        assert_eq!("e16".parse::<AlgebraId>().unwrap(), AlgebraId::E16);
        assert!("E99".parse::<AlgebraId>().is_err());
        for a in AlgebraId::ALL {
            assert_eq!(AlgebraId::from_name(a.name()), Some(a));
        }
    }

    #[test]
    fn built_dimensions() {
        let dims: Vec<usize> = AlgebraId::ALL.iter().map(|&a| build(a).unwrap().dim()).collect();
        assert_eq!(dims, vec![40, 39, 21, 23, 23]);
    }
}
