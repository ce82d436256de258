//! Invertibility of candidate maps under a triangular mask.
//!
//! A map that sends each degree to the same or lower degrees is block lower
//! triangular, so it is invertible iff each diagonal block is.

use num_traits::Zero;
use serde::Serialize;

use super::linear::CandidateMap;
use super::variety::span_rank;
use crate::algebra::GradedSuperalgebra;
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Invertible,
    Singular,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDeterminant {
    pub degree: i32,
    pub size: usize,
    pub determinant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invertibility {
    pub verdict: Verdict,
    /// The verdict holds at every point of the component, not only at the
    /// witness point.
    pub everywhere: bool,
    pub witness_parameters: Option<Vec<String>>,
    pub blocks: Vec<BlockDeterminant>,
    pub reason: String,
}

/// Whether every entry maps a degree into the same or a lower degree.
pub fn is_lower_triangular(alg: &GradedSuperalgebra, m: &CandidateMap) -> bool {
    m.entries()
        .all(|((target, source), _)| alg.degree(target) <= alg.degree(source))
}

fn blocks_at(alg: &GradedSuperalgebra, m: &CandidateMap) -> Vec<(i32, Vec<Vec<Rational>>)> {
    alg.degrees()
        .into_iter()
        .map(|d| (d, m.block(&alg.component(d))))
        .collect()
}

fn determinants(alg: &GradedSuperalgebra, m: &CandidateMap) -> Vec<BlockDeterminant> {
    blocks_at(alg, m)
        .into_iter()
        .map(|(degree, b)| BlockDeterminant {
            degree,
            size: b.len(),
            determinant: rational::to_string(&linalg::determinant(&b)),
        })
        .collect()
}

fn all_nonzero(blocks: &[BlockDeterminant]) -> bool {
    blocks.iter().all(|b| b.determinant != "0")
}

const GRID: [i64; 6] = [0, 1, -1, 2, -2, 3];
const MAX_SAMPLES: usize = 4096;

/// Invertibility on the family `base + Σ t_i directions[i]`.
pub fn check_family(alg: &GradedSuperalgebra, base: &CandidateMap, directions: &[CandidateMap]) -> Invertibility {
    if !is_lower_triangular(alg, base) || !directions.iter().all(|d| is_lower_triangular(alg, d)) {
        return Invertibility {
            verdict: Verdict::Undetermined,
            everywhere: false,
            witness_parameters: None,
            blocks: Vec::new(),
            reason: "family is not block triangular in the grading".into(),
        };
    }
    let base_blocks = blocks_at(alg, base);
    let dir_blocks: Vec<Vec<(i32, Vec<Vec<Rational>>)>> = directions.iter().map(|d| blocks_at(alg, d)).collect();
    let varying: Vec<bool> = (0..base_blocks.len())
        .map(|k| {
            dir_blocks
                .iter()
                .any(|db| db[k].1.iter().flatten().any(|v| !v.is_zero()))
        })
        .collect();
    if !varying.iter().any(|&v| v) {
        let blocks = determinants(alg, base);
        let ok = all_nonzero(&blocks);
        return Invertibility {
            verdict: if ok { Verdict::Invertible } else { Verdict::Singular },
            everywhere: true,
            witness_parameters: None,
            blocks,
            reason: if directions.is_empty() {
                "exact block determinants".into()
            } else {
                "diagonal blocks are constant on the family".into()
            },
        };
    }
    for (k, (degree, b)) in base_blocks.iter().enumerate() {
        let mut stack = vec![b.clone()];
        stack.extend(dir_blocks.iter().map(|db| db[k].1.clone()));
        let n = b.len();
        for transpose in [false, true] {
            let r = span_rank(&stack, transpose);
            if r < n {
                return Invertibility {
                    verdict: Verdict::Singular,
                    everywhere: true,
                    witness_parameters: None,
                    blocks: Vec::new(),
                    reason: format!(
                        "degree {degree} block has {} of dimension {r} < {n} on the whole family",
                        if transpose { "row space" } else { "column space" }
                    ),
                };
            }
        }
    }
    let k = directions.len();
    let samples = GRID.len().checked_pow(k as u32).unwrap_or(usize::MAX).min(MAX_SAMPLES);
    for s in 0..samples {
        let mut idx = s;
        let t: Vec<Rational> = (0..k)
            .map(|_| {
                let v = GRID[idx % GRID.len()];
                idx /= GRID.len();
                rational::int(v)
            })
            .collect();
        let mut m = base.clone();
        for (d, ti) in directions.iter().zip(&t) {
            m = m.plus(&d.scale(ti));
        }
        let blocks = determinants(alg, &m);
        if all_nonzero(&blocks) {
            return Invertibility {
                verdict: Verdict::Invertible,
                everywhere: false,
                witness_parameters: Some(t.iter().map(rational::to_string).collect()),
                blocks,
                reason: "invertible at the witness point".into(),
            };
        }
    }
    Invertibility {
        verdict: Verdict::Undetermined,
        everywhere: false,
        witness_parameters: None,
        blocks: Vec::new(),
        reason: format!("no invertible point among {samples} samples and no rank bound"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_algebras::*;
    use crate::rational::int;

    #[test]
    fn points() {
        let a = borel();
        let id = check_family(&a, &CandidateMap::identity(2), &[]);
        assert_eq!(id.verdict, Verdict::Invertible);
        assert!(id.blocks.iter().all(|b| b.determinant == "1"));
        let z = check_family(&a, &CandidateMap::zero(2), &[]);
        assert_eq!(z.verdict, Verdict::Singular);
    }

    #[test]
    fn families() {
        let a = abelian(2);
        let mut e00 = CandidateMap::zero(2);
        e00.set(0, 0, int(1));
        // diag(1, t): invertible at t = 1
        let mut base = CandidateMap::zero(2);
        base.set(0, 0, int(1));
        let mut d = CandidateMap::zero(2);
        d.set(1, 1, int(1));
        let inv = check_family(&a, &base, &[d.clone()]);
        assert_eq!(inv.verdict, Verdict::Invertible);
        assert!(!inv.everywhere);
        assert_eq!(inv.witness_parameters, Some(vec!["1".to_string()]));
        // t·E_00: column space of dimension 1
        let sing = check_family(&a, &CandidateMap::zero(2), &[e00]);
        assert_eq!(sing.verdict, Verdict::Singular);
        assert!(sing.everywhere);
        // identity plus t·(h ↦ f)
        let b = borel();
        let mut off = CandidateMap::zero(2);
        off.set(1, 0, int(1));
        let fam = check_family(&b, &CandidateMap::identity(2), &[off]);
        assert_eq!(fam.verdict, Verdict::Invertible);
        assert!(fam.everywhere);
    }
}
