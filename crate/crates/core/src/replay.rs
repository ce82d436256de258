//! Replay of bracket identities as σ-free fixtures.
//!
//! Fixtures are data: an expression tree over basis labels, the expected
//! element, and the identity it comes from. The shipped set pins the sign
//! conventions of every builder.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, GradedSuperalgebra};
use crate::builders::{self, AlgebraId};
use crate::error::{Error, Result};
use crate::rational;

pub const FIXTURE_FORMAT_VERSION: u32 = 1;

const SHIPPED: &str = include_str!("../fixtures/replay.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    Basis(String),
    Bracket(Box<Expr>, Box<Expr>),
    Scale(String, Box<Expr>),
    Sum(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub location: String,
    pub quote: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub algebra: String,
    pub lhs: Expr,
    pub expected: Vec<Term>,
    pub citation: Citation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSet {
    pub format_version: u32,
    pub fixtures: Vec<Fixture>,
}

impl FixtureSet {
    pub fn parse(json: &str) -> Result<FixtureSet> {
        let set: FixtureSet = serde_json::from_str(json)
            .map_err(|e| Error::parse(format!("fixtures line {}", e.line()), e.to_string()))?;
        if set.format_version != FIXTURE_FORMAT_VERSION {
            return Err(Error::parse(
                "fixtures",
                format!("unsupported format_version {}", set.format_version),
            ));
        }
        for f in &set.fixtures {
            let bad = |reason: &str| Error::Fixture {
                fixture: f.name.clone(),
                reason: reason.to_string(),
            };
            f.algebra.parse::<AlgebraId>().map_err(|_| bad("unknown algebra"))?;
            if f.citation.location.trim().is_empty() || f.citation.quote.trim().is_empty() {
                return Err(bad("empty citation"));
            }
        }
        Ok(set)
    }

    pub fn for_algebra(&self, id: AlgebraId) -> Vec<&Fixture> {
        self.fixtures
            .iter()
            .filter(|f| f.algebra.parse::<AlgebraId>().ok() == Some(id))
            .collect()
    }
}

pub fn shipped() -> FixtureSet {
    FixtureSet::parse(SHIPPED).expect("shipped fixtures are well formed")
}

fn lookup(alg: &GradedSuperalgebra, fixture: &str, label: &str) -> Result<usize> {
    alg.index_of(label).ok_or_else(|| Error::Fixture {
        fixture: fixture.to_string(),
        reason: format!("unknown label {label:?} in {}", alg.name()),
    })
}

pub fn evaluate(alg: &GradedSuperalgebra, fixture: &str, e: &Expr) -> Result<AlgebraElement> {
    Ok(match e {
        Expr::Basis(l) => AlgebraElement::basis(lookup(alg, fixture, l)?),
        Expr::Bracket(a, b) => alg.bracket(&evaluate(alg, fixture, a)?, &evaluate(alg, fixture, b)?)?,
        Expr::Scale(c, a) => evaluate(alg, fixture, a)?.scale(&rational::parse(c)?),
        Expr::Sum(items) => {
            let mut acc = AlgebraElement::zero();
            for i in items {
                acc = acc.plus(&evaluate(alg, fixture, i)?);
            }
            acc
        }
    })
}

pub fn expected_element(alg: &GradedSuperalgebra, f: &Fixture) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for t in &f.expected {
        out.add_term(lookup(alg, &f.name, &t.label)?, rational::parse(&t.value)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    pub citation: Citation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub algebra: String,
    pub passed: bool,
    pub outcomes: Vec<FixtureOutcome>,
}

/// Evaluates fixtures against an arbitrary algebra carrying the expected
/// labels.
pub fn replay_on(alg: &GradedSuperalgebra, fixtures: &[&Fixture]) -> Result<ReplayReport> {
    let outcomes: Vec<FixtureOutcome> = fixtures
        .par_iter()
        .map(|f| {
            let actual = evaluate(alg, &f.name, &f.lhs)?;
            let expected = expected_element(alg, f)?;
            let shown_expected = expected.display_with(alg).to_string();
            let shown_actual = actual.display_with(alg).to_string();
            Ok(FixtureOutcome {
                name: f.name.clone(),
                passed: actual == expected,
                expected: shown_expected,
                actual: shown_actual,
                citation: f.citation.clone(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ReplayReport {
        algebra: alg.name().to_string(),
        passed: outcomes.iter().all(|o| o.passed),
        outcomes,
    })
}

pub fn replay_all(id: AlgebraId) -> Result<ReplayReport> {
    let set = shipped();
    let alg = builders::build(id)?;
    replay_on(&alg, &set.for_algebra(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_algebras::*;

    #[test]
    fn shipped_set_covers_every_algebra() {
        let set = shipped();
        for id in [AlgebraId::E44, AlgebraId::E510, AlgebraId::E36, AlgebraId::E16] {
            assert!(!set.for_algebra(id).is_empty(), "{id}");
        }
    }

    #[test]
    fn unknown_label_is_a_fixture_error() {
        let a = borel();
        let f = Fixture {
            name: "bad".into(),
            algebra: "E44".into(),
            lhs: Expr::Bracket(Box::new(Expr::Basis("h".into())), Box::new(Expr::Basis("q".into()))),
            expected: vec![],
            citation: Citation {
                location: "x".into(),
                quote: "y".into(),
            },
            note: None,
        };
        assert!(matches!(replay_on(&a, &[&f]), Err(Error::Fixture { .. })));
    }

    #[test]
    fn expression_round_trip() {
        let e = Expr::Bracket(
            Box::new(Expr::Scale("-1".into(), Box::new(Expr::Basis("h".into())))),
            Box::new(Expr::Sum(vec![Expr::Basis("f".into())])),
        );
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"{"bracket":[{"scale":["-1",{"basis":"h"}]},{"sum":[{"basis":"f"}]}]}"#
        );
        assert_eq!(serde_json::from_str::<Expr>(&s).unwrap(), e);
        let a = borel();
        assert_eq!(
            evaluate(&a, "t", &e).unwrap(),
            AlgebraElement::term(1, rational::int(2))
        );
    }

    #[test]
    fn rejects_empty_citation_and_version() {
        let mut set = shipped();
        set.fixtures[0].citation.quote = " ".into();
        assert!(FixtureSet::parse(&serde_json::to_string(&set).unwrap()).is_err());
        let mut set = shipped();
        set.format_version = 7;
        assert!(FixtureSet::parse(&serde_json::to_string(&set).unwrap()).is_err());
    }
}
