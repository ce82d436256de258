//! Classification of Hom-Lie superalgebra structures `σ` on the
//! nonpositive part of a graded Lie superalgebra.
//!
//! The pipeline has three stages. The Hom-Jacobi identity is linear in `σ`
//! and is solved exactly over the masked entries. Multiplicativity is then a
//! system of quadratics in the coordinates of the nullspace, decomposed with
//! Gröbner bases. Finally each component is tested for invertibility through
//! the determinants of its diagonal degree blocks.

pub mod groebner;
pub mod invert;
pub mod linear;
pub mod poly;
pub mod quadratic;
pub mod variety;

use serde::Serialize;

use crate::algebra::GradedSuperalgebra;
use crate::builders::{self, AlgebraId};
use crate::error::{Error, Result};
use crate::linalg::EliminationStrategy;
use crate::rational::{self, Rational};

use invert::{Invertibility, Verdict};
use linear::{CandidateMap, FiltrationMode, UnknownLayout};
use variety::{Shape, VarietyConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolverConfig {
    pub filtration: FiltrationMode,
    pub strategy: EliminationStrategy,
    /// Recompute the nullspace with the other elimination strategy and
    /// require an identical basis.
    pub cross_check: bool,
    pub linear_only: bool,
    pub param_cap: usize,
    pub pair_cap: usize,
    pub branch_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let v = VarietyConfig::default();
        Self {
            filtration: FiltrationMode::Filtered,
            strategy: EliminationStrategy::FractionFree,
            cross_check: true,
            linear_only: false,
            param_cap: 32,
            pair_cap: v.pair_cap,
            branch_cap: v.max_branches,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Complete,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub strategy: EliminationStrategy,
    pub nullspace_dim: usize,
    pub identical_basis: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSummary {
    pub unknowns: usize,
    pub triples_total: usize,
    pub triples_vacuous: usize,
    pub rows: usize,
    pub distinct_rows: usize,
    pub rank: usize,
    pub cross_check: Option<CrossCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSummary {
    pub polynomials: usize,
    pub after_interreduction: usize,
    pub groebner_runs: usize,
    pub pairs_processed: usize,
    pub pairs_pruned: usize,
    pub zero_reductions: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Point,
    Affine,
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub kind: ComponentKind,
    pub dimension: Option<usize>,
    /// Defining relations in the nullspace coordinates `c1..cd`.
    pub relations: Vec<String>,
    /// Coordinates of the base point, or of the point itself.
    pub base: Option<Vec<String>>,
    pub directions: Vec<Vec<String>>,
    pub base_map: Option<CandidateMap>,
    pub direction_maps: Vec<CandidateMap>,
    pub contains_identity: bool,
    pub contains_zero: bool,
    pub invertibility: Option<Invertibility>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertibleSolution {
    pub component: usize,
    pub family_dimension: usize,
    /// The solution at the witness parameters (the point itself for a point).
    pub map: CandidateMap,
    pub is_identity: bool,
    pub invertibility: Invertibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub algebra: String,
    pub algebra_id: Option<String>,
    pub dim: usize,
    pub excluded_degrees: Vec<i32>,
    pub labels: Vec<String>,
    pub config: SolverConfig,
    pub status: Status,
    pub linear: LinearSummary,
    pub nullspace_dim: usize,
    pub nullspace_basis: Vec<CandidateMap>,
    pub quadratic: Option<QuadraticSummary>,
    pub variety_components: Vec<ComponentReport>,
    /// `None` when the filter does not run (linear stage only, or a mask
    /// that is not block triangular).
    pub invertible_solutions: Option<Vec<InvertibleSolution>>,
    /// `None` when not evaluated.
    pub trivial_certificate: Option<bool>,
    pub notes: Vec<String>,
}

impl SolutionReport {
    pub fn is_inconclusive(&self) -> bool {
        self.status == Status::Inconclusive
    }
}

fn render(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::to_string).collect()
}

/// The algebra that `classify` works on: the built algebra with its
/// excluded degrees removed.
pub fn active_algebra(id: AlgebraId) -> Result<GradedSuperalgebra> {
    let a = builders::build(id)?;
    let keep: Vec<usize> = (0..a.dim())
        .filter(|&i| !id.excluded_degrees().contains(&a.degree(i)))
        .collect();
    if keep.len() == a.dim() {
        return Ok(a);
    }
    a.restrict(&keep, a.name().to_string())
}

pub fn classify(id: AlgebraId, config: &SolverConfig) -> Result<SolutionReport> {
    let alg = active_algebra(id)?;
    let mut report = classify_algebra(&alg, config)?;
    report.algebra_id = Some(id.id().to_string());
    report.excluded_degrees = id.excluded_degrees().to_vec();
    Ok(report)
}

pub fn classify_algebra(alg: &GradedSuperalgebra, config: &SolverConfig) -> Result<SolutionReport> {
    let n = alg.dim();
    let layout = UnknownLayout::new(alg, config.filtration);
    let sys = linear::assemble_homjacobi(alg, &layout);
    let ns = linear::nullspace(&sys, config.strategy);
    let cross_check = if config.cross_check {
        let other = match config.strategy {
            EliminationStrategy::FractionFree => EliminationStrategy::Rational,
            EliminationStrategy::Rational => EliminationStrategy::FractionFree,
        };
        let ns2 = linear::nullspace(&sys, other);
        if ns2.basis != ns.basis {
            return Err(Error::Domain(format!(
                "{}: elimination strategies disagree ({} vs {} basis vectors)",
                alg.name(),
                ns.basis.len(),
                ns2.basis.len()
            )));
        }
        Some(CrossCheck {
            strategy: other,
            nullspace_dim: ns2.basis.len(),
            identical_basis: true,
        })
    } else {
        None
    };
    let family: Vec<CandidateMap> = ns.basis.iter().map(|r| layout.map_from_row(r)).collect();
    let mut report = SolutionReport {
        algebra: alg.name().to_string(),
        algebra_id: None,
        dim: n,
        excluded_degrees: Vec::new(),
        labels: alg.basis().iter().map(|b| b.label.clone()).collect(),
        config: *config,
        status: Status::Complete,
        linear: LinearSummary {
            unknowns: layout.len(),
            triples_total: sys.triples_total,
            triples_vacuous: sys.triples_vacuous,
            rows: sys.rows.len(),
            distinct_rows: ns.distinct_rows,
            rank: ns.rank,
            cross_check,
        },
        nullspace_dim: family.len(),
        nullspace_basis: family.clone(),
        quadratic: None,
        variety_components: Vec::new(),
        invertible_solutions: None,
        trivial_certificate: None,
        notes: Vec::new(),
    };
    if config.linear_only {
        report.notes.push("linear stage only; certificate not evaluated".into());
        return Ok(report);
    }
    let d = family.len();
    if d > config.param_cap {
        report.status = Status::Inconclusive;
        report
            .notes
            .push(format!("{d} nullspace parameters exceed the cap {}", config.param_cap));
        return Ok(report);
    }
    let qsys = quadratic::assemble_multiplicativity(alg, &family);
    let reduced = quadratic::interreduce_linear(&qsys.polynomials);
    let var = variety::decompose(
        &reduced,
        d,
        VarietyConfig {
            pair_cap: config.pair_cap,
            max_branches: config.branch_cap,
        },
    );
    report.quadratic = Some(QuadraticSummary {
        polynomials: qsys.polynomials.len(),
        after_interreduction: reduced.len(),
        groebner_runs: var.groebner_runs,
        pairs_processed: var.stats.pairs_processed,
        pairs_pruned: var.stats.pairs_pruned,
        zero_reductions: var.stats.zero_reductions,
    });
    if let variety::Status::Inconclusive(why) = &var.status {
        report.status = Status::Inconclusive;
        report.notes.push(why.clone());
    }
    let coords_of = |m: &CandidateMap| -> Option<Vec<Rational>> {
        let row = layout.row_from_map(m)?;
        crate::linalg::SpanDecomposer::new(&ns.basis)
            .ok()?
            .decompose(&row)
            .map(|r| {
                let mut c = vec![Rational::from_integer(0.into()); d];
                for (k, v) in r {
                    c[k] = v;
                }
                c
            })
    };
    let id_coords = coords_of(&CandidateMap::identity(n));
    let zero_coords = vec![Rational::from_integer(0.into()); d];
    let run_filter = config.filtration.is_triangular() || config.filtration == FiltrationMode::FilteredExceptMinusOne;
    let mut invertible = Vec::new();
    for (ci, c) in var.components.iter().enumerate() {
        let contains = |p: &Option<Vec<Rational>>| p.as_ref().is_some_and(|p| c.contains_point(p));
        let mut cr = ComponentReport {
            kind: ComponentKind::Residual,
            dimension: c.dimension(),
            relations: c.ideal.iter().map(|g| g.render()).collect(),
            base: None,
            directions: Vec::new(),
            base_map: None,
            direction_maps: Vec::new(),
            contains_identity: contains(&id_coords),
            contains_zero: c.contains_point(&zero_coords),
            invertibility: None,
        };
        if let Shape::Affine { base, directions } = &c.shape {
            cr.kind = if directions.is_empty() {
                ComponentKind::Point
            } else {
                ComponentKind::Affine
            };
            cr.base = Some(render(base));
            cr.directions = directions.iter().map(|v| render(v)).collect();
            let base_map = quadratic::combine(&family, base, n);
            let dir_maps: Vec<CandidateMap> = directions.iter().map(|v| quadratic::combine(&family, v, n)).collect();
            if run_filter {
                let inv = invert::check_family(alg, &base_map, &dir_maps);
                if inv.verdict == Verdict::Invertible {
                    let t: Vec<Rational> = match &inv.witness_parameters {
                        Some(t) => t.iter().map(|s| rational::parse(s).expect("rendered")).collect(),
                        None => vec![Rational::from_integer(0.into()); directions.len()],
                    };
                    let point = c.point_at(&t).expect("affine");
                    let map = quadratic::combine(&family, &point, n);
                    invertible.push(InvertibleSolution {
                        component: ci,
                        family_dimension: directions.len(),
                        is_identity: map.is_identity(),
                        map,
                        invertibility: inv.clone(),
                    });
                }
                cr.invertibility = Some(inv);
            }
            cr.base_map = Some(base_map);
            cr.direction_maps = dir_maps;
        } else if run_filter {
            cr.invertibility = Some(Invertibility {
                verdict: Verdict::Undetermined,
                everywhere: false,
                witness_parameters: None,
                blocks: Vec::new(),
                reason: "residual component".into(),
            });
        }
        report.variety_components.push(cr);
    }
    if !run_filter {
        report
            .notes
            .push("mask is not block triangular; invertibility filter not run".into());
        return Ok(report);
    }
    if report.status == Status::Inconclusive {
        report.invertible_solutions = Some(invertible);
        return Ok(report);
    }
    let undetermined = report.variety_components.iter().any(|c| {
        c.invertibility
            .as_ref()
            .is_some_and(|i| i.verdict == Verdict::Undetermined)
    });
    let trivial =
        !undetermined && !invertible.is_empty() && invertible.iter().all(|s| s.family_dimension == 0 && s.is_identity);
    if undetermined {
        report
            .notes
            .push("some components have undetermined invertibility".into());
    }
    for s in invertible.iter().filter(|s| !s.is_identity || s.family_dimension > 0) {
        report.notes.push(format!(
            "component {} contains invertible solutions other than the identity",
            s.component
        ));
    }
    report.invertible_solutions = Some(invertible);
    report.trivial_certificate = Some(trivial);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_algebras::*;

    #[test]
    fn borel_classification() {
        let a = borel();
        let r = classify_algebra(&a, &SolverConfig::default()).unwrap();
        assert_eq!(r.status, Status::Complete);
        assert!(r.variety_components.iter().any(|c| c.contains_identity));
        assert!(r.variety_components.iter().any(|c| c.contains_zero));
        assert!(r.trivial_certificate.is_some());
    }

    #[test]
    fn linear_only_and_unmasked_skip_certificate() {
        let a = borel();
        let cfg = SolverConfig {
            linear_only: true,
            ..Default::default()
        };
        let r = classify_algebra(&a, &cfg).unwrap();
        assert_eq!(r.trivial_certificate, None);
        assert!(r.variety_components.is_empty());
        let cfg = SolverConfig {
            filtration: FiltrationMode::Off,
            ..Default::default()
        };
        let r = classify_algebra(&a, &cfg).unwrap();
        assert_eq!(r.trivial_certificate, None);
        assert_eq!(r.invertible_solutions, None);
    }

    #[test]
    fn param_cap_is_inconclusive() {
        let a = abelian(3);
        let cfg = SolverConfig {
            param_cap: 2,
            ..Default::default()
        };
        let r = classify_algebra(&a, &cfg).unwrap();
        assert!(r.is_inconclusive());
    }
}
