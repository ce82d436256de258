//! Exact sparse linear algebra: incremental reduced row echelon forms with
//! two independent arithmetic paths (integer fraction-free and rational),
//! nullspaces, ranks, determinants and span decomposition.
//!
//! Pivoting is deterministic: rows are consumed in the order given, and each
//! new pivot sits in the smallest column of the reduced row. Because the
//! reduced row echelon form is unique, both strategies must produce the same
//! nullspace basis; the tests and the solver use that as a cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Sparse vector: strictly increasing column indices, no zero entries.
pub type Row = Vec<(usize, Rational)>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EliminationStrategy {
    /// Integer rows with gcd content removal.
    #[default]
    FractionFree,
    /// Ordinary rational arithmetic with unit pivots.
    Rational,
}

impl EliminationStrategy {
    pub fn id(self) -> &'static str {
        match self {
            EliminationStrategy::FractionFree => "fraction-free",
            EliminationStrategy::Rational => "rational",
        }
    }
}

/// `a + f·b` for sorted sparse rows.
pub fn axpy(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a canonical sparse row from unsorted, possibly repeated entries.
pub fn row_from_entries(entries: impl IntoIterator<Item = (usize, Rational)>) -> Row {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in entries {
        *acc.entry(c).or_insert_with(Rational::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn lookup<T>(row: &[(usize, T)], col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// Incremental RREF over the rationals.
#[derive(Clone, Debug, Default)]
pub struct RationalEchelon {
    pivots: BTreeMap<usize, Row>,
}

impl RationalEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the current pivots; returns the remainder.
    pub fn reduce(&self, row: &[(usize, Rational)]) -> Row {
        let mut r: Row = row.to_vec();
        for (c, v) in row {
            if let Some(p) = self.pivots.get(c) {
                // pivot rows are zero on every other pivot column
                let f = -v.clone();
                r = axpy(&r, &f, p);
            }
        }
        r
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        let r = self.reduce(row);
        let Some((lead, lv)) = r.first().cloned() else {
            return false;
        };
        let inv = lv.recip();
        let r: Row = r.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        for p in self.pivots.values_mut() {
            if let Some(v) = lookup(p, lead) {
                let f = -v.clone();
                *p = axpy(p, &f, &r);
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &Row)> {
        self.pivots.iter().map(|(&c, r)| (c, r))
    }

    /// Basis of `{v : row · v = 0 for all rows}` in `ncols` unknowns, one
    /// vector per free column in ascending order, normalized to 1 there.
    pub fn nullspace(&self, ncols: usize) -> Vec<Row> {
        let free: Vec<usize> = (0..ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v: Vec<(usize, Rational)> = self
                    .pivots
                    .iter()
                    .filter_map(|(&c, p)| lookup(p, f).map(|x| (c, -x.clone())))
                    .collect();
                v.push((f, Rational::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn int_combine(a: &BigInt, r: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    // a·r − b·p
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        if j == p.len() || (i < r.len() && r[i].0 < p[j].0) {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if i == r.len() || p[j].0 < r[i].0 {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(r: &mut IntRow) {
    let g = r.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if g.is_zero() {
        return;
    }
    let g = if r[0].1.is_negative() { -g } else { g };
    if !g.is_one() {
        for e in r.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
}

/// Incremental RREF over the integers: every row is primitive with a
/// positive pivot, and pivot columns are zero in all other rows.
#[derive(Clone, Debug, Default)]
pub struct FractionFreeEchelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl FractionFreeEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    fn to_int_row(row: &[(usize, Rational)]) -> IntRow {
        let l = row.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
        let mut r: IntRow = row.iter().map(|(c, v)| (*c, v.numer() * (&l / v.denom()))).collect();
        if !r.is_empty() {
            make_primitive(&mut r);
        }
        r
    }

    fn reduce_int(&self, row: IntRow) -> IntRow {
        let mut r = row;
        let cols: Vec<usize> = r.iter().map(|e| e.0).filter(|c| self.pivots.contains_key(c)).collect();
        for c in cols {
            let p = &self.pivots[&c];
            let Some(b) = lookup(&r, c).cloned() else {
                continue;
            };
            let a = &p[0].1;
            let g = a.gcd(&b);
            r = int_combine(&(a / &g), &r, &(&b / &g), p);
            if !r.is_empty() {
                make_primitive(&mut r);
            }
        }
        r
    }

    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        let r = self.reduce_int(Self::to_int_row(row));
        let Some(lead) = r.first().map(|e| e.0) else {
            return false;
        };
        let a = r[0].1.clone();
        for p in self.pivots.values_mut() {
            if let Some(b) = lookup(p, lead).cloned() {
                let g = a.gcd(&b);
                let mut np = int_combine(&(&a / &g), p, &(&b / &g), &r);
                make_primitive(&mut np);
                *p = np;
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn nullspace(&self, ncols: usize) -> Vec<Row> {
        let free: Vec<usize> = (0..ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v: Row = self
                    .pivots
                    .iter()
                    .filter_map(|(&c, p)| lookup(p, f).map(|x| (c, Rational::new(-x.clone(), p[0].1.clone()))))
                    .collect();
                v.push((f, Rational::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

/// Strategy-dispatched incremental echelon form.
#[derive(Clone, Debug)]
pub enum Echelon {
    FractionFree(FractionFreeEchelon),
    Rational(RationalEchelon),
}

impl Echelon {
    pub fn new(strategy: EliminationStrategy) -> Self {
        match strategy {
            EliminationStrategy::FractionFree => Echelon::FractionFree(FractionFreeEchelon::new()),
            EliminationStrategy::Rational => Echelon::Rational(RationalEchelon::new()),
        }
    }

    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        match self {
            Echelon::FractionFree(e) => e.insert(row),
            Echelon::Rational(e) => e.insert(row),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Echelon::FractionFree(e) => e.rank(),
            Echelon::Rational(e) => e.rank(),
        }
    }

    pub fn nullspace(&self, ncols: usize) -> Vec<Row> {
        match self {
            Echelon::FractionFree(e) => e.nullspace(ncols),
            Echelon::Rational(e) => e.nullspace(ncols),
        }
    }
}

pub fn rank<'a>(rows: impl IntoIterator<Item = &'a Row>, strategy: EliminationStrategy) -> usize {
    let mut e = Echelon::new(strategy);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn nullspace<'a>(rows: impl IntoIterator<Item = &'a Row>, ncols: usize, strategy: EliminationStrategy) -> Vec<Row> {
    let mut e = Echelon::new(strategy);
    for r in rows {
        e.insert(r);
    }
    e.nullspace(ncols)
}

/// Exact determinant of a square dense matrix by Gaussian elimination with
/// the first nonzero entry in each column as pivot.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Expresses vectors in a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct SpanDecomposer {
    // pivot column -> (reduced vector, combination of the original family)
    pivots: BTreeMap<usize, (Row, Row)>,
    len: usize,
}

impl SpanDecomposer {
    /// Fails with the index of the first vector dependent on its
    /// predecessors.
    pub fn new(family: &[Row]) -> Result<Self, usize> {
        let mut pivots: BTreeMap<usize, (Row, Row)> = BTreeMap::new();
        for (idx, v) in family.iter().enumerate() {
            let mut r = v.clone();
            let mut comb: Row = vec![(idx, Rational::one())];
            for (c, x) in v {
                if let Some((pv, pc)) = pivots.get(c) {
                    let f = -x.clone();
                    r = axpy(&r, &f, pv);
                    comb = axpy(&comb, &f, pc);
                }
            }
            let Some((lead, lv)) = r.first().cloned() else {
                return Err(idx);
            };
            let inv = lv.recip();
            let r: Row = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
            let comb: Row = comb.into_iter().map(|(c, x)| (c, x * &inv)).collect();
            for (pv, pc) in pivots.values_mut() {
                if let Some(x) = lookup(pv, lead) {
                    let f = -x.clone();
                    *pv = axpy(pv, &f, &r);
                    *pc = axpy(pc, &f, &comb);
                }
            }
            pivots.insert(lead, (r, comb));
        }
        Ok(Self {
            pivots,
            len: family.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coefficients of `target` over the family, `None` if outside the span.
    pub fn decompose(&self, target: &[(usize, Rational)]) -> Option<Row> {
        let mut r: Row = target.to_vec();
        let mut comb: Row = Vec::new();
        for (c, x) in target {
            if let Some((pv, pc)) = self.pivots.get(c) {
                r = axpy(&r, &-x.clone(), pv);
                comb = axpy(&comb, x, pc);
            }
        }
        r.is_empty().then_some(comb)
    }
}
