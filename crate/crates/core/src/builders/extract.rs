//! Realization → structure constants.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::checks::{check_antisymmetry_table, BracketTable};
use crate::algebra::{AlgebraElement, BasisElement, GradedSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::{Row, SpanDecomposer};
use crate::parity::Parity;
use crate::rational::Rational;

/// A basis element together with its concrete realization.
#[derive(Clone, Debug)]
pub struct Generator<T> {
    pub label: String,
    pub parity: Parity,
    pub degree: i32,
    pub value: T,
}

impl<T> Generator<T> {
    pub fn new(label: impl Into<String>, parity: Parity, degree: i32, value: T) -> Self {
        Self {
            label: label.into(),
            parity,
            degree,
            value,
        }
    }
}

/// Built algebra plus the full ordered-pair table it was extracted from.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub algebra: GradedSuperalgebra,
    pub table: BracketTable,
}

struct Coordinates<K> {
    index: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Coordinates<K> {
    fn row(&self, v: Vec<(K, Rational)>) -> Option<Row> {
        let mut row: Row = Vec::with_capacity(v.len());
        for (k, c) in v {
            row.push((*self.index.get(&k)?, c));
        }
        Some(crate::linalg::row_from_entries(row))
    }
}

/// Computes every ordered bracket of the generators inside the realization
/// and re-expresses it in the generator basis. Fails on a dependent
/// generator, on a bracket leaving the span, or on a table that is not
/// super-antisymmetric.
pub fn extract<T, K>(
    name: &str,
    gens: &[Generator<T>],
    coords: impl Fn(&T) -> Vec<(K, Rational)> + Sync,
    bracket: impl Fn(&T, &T) -> Result<T> + Sync,
) -> Result<Extraction>
where
    T: Sync,
    K: Ord + Clone + Send + Sync,
{
    let mut index = BTreeMap::new();
    let raw: Vec<Vec<(K, Rational)>> = gens.iter().map(|g| coords(&g.value)).collect();
    for r in &raw {
        for (k, _) in r {
            let next = index.len();
            index.entry(k.clone()).or_insert(next);
        }
    }
    let coordinates = Coordinates { index };
    let family: Vec<Row> = raw
        .into_iter()
        .map(|r| coordinates.row(r).expect("generator keys are interned"))
        .collect();
    let span = SpanDecomposer::new(&family).map_err(|idx| Error::Construction {
        algebra: name.to_string(),
        reason: format!(
            "generator {} is linearly dependent on its predecessors",
            gens[idx].label
        ),
    })?;

    let basis: Vec<BasisElement> = gens
        .iter()
        .enumerate()
        .map(|(index, g)| BasisElement {
            index,
            label: g.label.clone(),
            parity: g.parity,
            degree: g.degree,
        })
        .collect();

    let n = gens.len();
    let rows: Vec<Vec<(usize, AlgebraElement)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..n {
                let closure = || Error::Closure {
                    algebra: name.to_string(),
                    left: gens[i].label.clone(),
                    right: gens[j].label.clone(),
                };
                let value = bracket(&gens[i].value, &gens[j].value)?;
                let row = coordinates.row(coords(&value)).ok_or_else(closure)?;
                let comb = span.decompose(&row).ok_or_else(closure)?;
                let el = AlgebraElement::from_row(&comb);
                if !el.is_zero() {
                    out.push((j, el));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut table = BracketTable::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, el) in row {
            table.insert((i, j), el);
        }
    }
    let anti = check_antisymmetry_table(&basis, &table);
    if !anti.passed {
        let w = &anti.witnesses[0];
        return Err(Error::Construction {
            algebra: name.to_string(),
            reason: format!("realization is not super-antisymmetric: {}", w.detail),
        });
    }
    let mut algebra = GradedSuperalgebra::new(name, basis)?;
    for (&(i, j), v) in &table {
        if i <= j {
            algebra.set_bracket(i, j, v.clone())?;
        }
    }
    Ok(Extraction { algebra, table })
}

/// Images of `sub` generators expressed in the `sup` generator basis, by
/// decomposing their realizations.
pub fn embed<T, K>(
    sub: &[Generator<T>],
    sup: &[Generator<T>],
    coords: impl Fn(&T) -> Vec<(K, Rational)>,
) -> Result<Vec<AlgebraElement>>
where
    K: Ord + Clone,
{
    let mut index = BTreeMap::new();
    let raw: Vec<Vec<(K, Rational)>> = sup.iter().map(|g| coords(&g.value)).collect();
    for r in &raw {
        for (k, _) in r {
            let next = index.len();
            index.entry(k.clone()).or_insert(next);
        }
    }
    let coordinates = Coordinates { index };
    let family: Vec<Row> = raw
        .into_iter()
        .map(|r| coordinates.row(r).expect("generator keys are interned"))
        .collect();
    let span = SpanDecomposer::new(&family)
        .map_err(|idx| Error::Domain(format!("generator {} is linearly dependent", sup[idx].label)))?;
    sub.iter()
        .map(|g| {
            coordinates
                .row(coords(&g.value))
                .and_then(|r| span.decompose(&r))
                .map(|c| AlgebraElement::from_row(&c))
                .ok_or_else(|| Error::Domain(format!("{} is outside the ambient span", g.label)))
        })
        .collect()
}
