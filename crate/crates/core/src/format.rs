//! Canonical JSON serialization of algebras and reports.
//!
//! An [`AlgebraFile`] lists the basis and the stored brackets `i ≤ j` in
//! ascending `(i, j, k)` order with rationals as lowest-terms `num/den`
//! pairs. Reading a file validates the layout and re-runs the antisymmetry
//! and grading checks.

use serde::{Deserialize, Serialize};

use crate::algebra::checks;
use crate::algebra::{AlgebraElement, BasisElement, GradedSuperalgebra};
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "homlie";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisRecord {
    pub index: usize,
    pub label: String,
    pub parity: u8,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub k: usize,
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub name: String,
    pub basis: Vec<BasisRecord>,
    pub brackets: Vec<BracketRecord>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &GradedSuperalgebra) -> Result<AlgebraFile> {
        let basis = alg
            .basis()
            .iter()
            .map(|b| BasisRecord {
                index: b.index,
                label: b.label.clone(),
                parity: b.parity.is_odd() as u8,
                degree: b.degree,
            })
            .collect();
        let mut brackets = Vec::new();
        for ((i, j), v) in alg.stored_brackets() {
            let terms = v
                .terms()
                .map(|(k, c)| {
                    let num = i64::try_from(c.numer())
                        .map_err(|_| Error::Domain(format!("structure constant {c} does not fit in 64 bits")))?;
                    let den = i64::try_from(c.denom())
                        .map_err(|_| Error::Domain(format!("structure constant {c} does not fit in 64 bits")))?;
                    Ok(TermRecord { k, num, den })
                })
                .collect::<Result<_>>()?;
            brackets.push(BracketRecord { i, j, terms });
        }
        Ok(AlgebraFile {
            format_version: FORMAT_VERSION,
            name: alg.name().to_string(),
            basis,
            brackets,
        })
    }

    /// Validates every record and returns the algebra.
    pub fn to_algebra(&self) -> Result<GradedSuperalgebra> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::parse(
                "format_version",
                format!("unsupported version {}", self.format_version),
            ));
        }
        let mut basis = Vec::with_capacity(self.basis.len());
        for (pos, b) in self.basis.iter().enumerate() {
            let at = format!("basis[{pos}]");
            if b.index != pos {
                return Err(Error::parse(at, format!("index {} at position {pos}", b.index)));
            }
            let parity = match b.parity {
                0 => Parity::Even,
                1 => Parity::Odd,
                p => return Err(Error::parse(at, format!("parity must be 0 or 1, got {p}"))),
            };
            basis.push(BasisElement {
                index: b.index,
                label: b.label.clone(),
                parity,
                degree: b.degree,
            });
        }
        let dim = basis.len();
        let mut alg =
            GradedSuperalgebra::new(self.name.clone(), basis).map_err(|e| Error::parse("basis", e.to_string()))?;
        let mut last: Option<(usize, usize)> = None;
        for (n, r) in self.brackets.iter().enumerate() {
            let at = format!("brackets[{n}] ({}, {})", r.i, r.j);
            if r.i > r.j {
                return Err(Error::parse(at, "requires i <= j"));
            }
            if r.j >= dim {
                return Err(Error::parse(at, format!("index out of range for dimension {dim}")));
            }
            if last.is_some_and(|l| l >= (r.i, r.j)) {
                return Err(Error::parse(at, "entries must be strictly ascending in (i, j)"));
            }
            last = Some((r.i, r.j));
            if r.terms.is_empty() {
                return Err(Error::parse(at, "empty term list"));
            }
            let mut value = AlgebraElement::zero();
            let mut last_k: Option<usize> = None;
            for t in &r.terms {
                let at = format!("{at} term k={}", t.k);
                if t.k >= dim {
                    return Err(Error::parse(at, format!("index out of range for dimension {dim}")));
                }
                if last_k.is_some_and(|l| l >= t.k) {
                    return Err(Error::parse(at, "terms must be strictly ascending in k"));
                }
                last_k = Some(t.k);
                if t.num == 0 {
                    return Err(Error::parse(at, "zero coefficient"));
                }
                let c = rational::from_canonical_parts(t.num, t.den).map_err(|why| Error::parse(at, why))?;
                value.add_term(t.k, c);
            }
            alg.set_bracket(r.i, r.j, value)
                .map_err(|e| Error::parse(format!("brackets[{n}]"), e.to_string()))?;
        }
        for rep in [checks::check_grading_parity(&alg), checks::check_antisymmetry(&alg)] {
            if let Some(w) = rep.witnesses.first() {
                return Err(Error::parse(
                    format!("bracket {:?}", w.labels),
                    format!("{} check failed: {}", rep.check, w.detail),
                ));
            }
        }
        Ok(alg)
    }
}

/// Pretty JSON with a trailing newline. Struct fields serialize in
/// declaration order and maps are ordered, so output is deterministic.
pub fn to_canonical_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn algebra_to_json(alg: &GradedSuperalgebra) -> Result<String> {
    to_canonical_json(&AlgebraFile::from_algebra(alg)?)
}

pub fn algebra_from_json(s: &str) -> Result<GradedSuperalgebra> {
    let file: AlgebraFile = serde_json::from_str(s)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    file.to_algebra()
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// Envelope for every machine-readable report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportFile<C: Serialize, R: Serialize> {
    pub format_version: u32,
    pub tool: Tool,
    pub command: String,
    pub configuration: C,
    pub report: R,
}

impl<C: Serialize, R: Serialize> ReportFile<C, R> {
    pub fn new(command: impl Into<String>, configuration: C, report: R) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            tool: Tool {
                name: TOOL_NAME,
                version: TOOL_VERSION,
            },
            command: command.into(),
            configuration,
            report,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }
}
