//! Structural invariant checkers. Each returns a [`CheckReport`] rather than
//! an error: a failing invariant is data, not a fault.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{AlgebraElement, BasisElement, GradedSuperalgebra};
use crate::linalg::{self, EliminationStrategy, Row};
use crate::parity::Parity;
use crate::rational::{self, Rational};

/// Witness lists are truncated to this many entries; `failures` keeps the
/// full count.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub detail: String,
}

impl Witness {
    fn new(basis: &[BasisElement], indices: Vec<usize>, detail: String) -> Self {
        let labels = indices.iter().map(|&i| basis[i].label.clone()).collect();
        Self {
            indices,
            labels,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub evaluated: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    pub metrics: BTreeMap<String, i64>,
}

impl CheckReport {
    fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            passed: true,
            evaluated: 0,
            failures: 0,
            witnesses: Vec::new(),
            metrics: BTreeMap::new(),
        }
    }

    fn fail(&mut self, w: Witness) {
        self.passed = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub fn metric(&self, key: &str) -> Option<i64> {
        self.metrics.get(key).copied()
    }
}

fn render(alg_basis: &[BasisElement], e: &AlgebraElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .map(|(i, c)| format!("{}*{}", rational::to_string(c), alg_basis[i].label))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Full (ordered-pair) bracket table, as produced by a realization before
/// it is halved into `i ≤ j` storage.
pub type BracketTable = BTreeMap<(usize, usize), AlgebraElement>;

/// `[x,y] = −(−1)^{|x||y|} [y,x]` on a full table.
pub fn check_antisymmetry_table(basis: &[BasisElement], table: &BracketTable) -> CheckReport {
    let mut rep = CheckReport::new("antisymmetry");
    let zero = AlgebraElement::zero();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            rep.evaluated += 1;
            let a = table.get(&(i, j)).unwrap_or(&zero);
            let b = table.get(&(j, i)).unwrap_or(&zero);
            let s = -basis[i].parity.koszul(basis[j].parity);
            let residual = a.minus(&b.scale(&rational::sign(s)));
            if !residual.is_zero() {
                let detail = format!(
                    "[{0},{1}] = {2}, [{1},{0}] = {3}",
                    basis[i].label,
                    basis[j].label,
                    render(basis, a),
                    render(basis, b)
                );
                rep.fail(Witness::new(basis, vec![i, j], detail));
            }
        }
    }
    rep
}

/// Expands stored brackets with the sign rule and runs the table check. On
/// halved storage this can only fail on the diagonal (a nonzero even square).
pub fn check_antisymmetry(alg: &GradedSuperalgebra) -> CheckReport {
    let mut table = BracketTable::new();
    for ((i, j), v) in alg.stored_brackets() {
        table.insert((i, j), v.clone());
        if i != j {
            table.insert((j, i), alg.bracket_basis(j, i));
        }
    }
    check_antisymmetry_table(alg.basis(), &table)
}

/// Graded Jacobi sum
/// `(−1)^{|x||z|}[x,[y,z]] + (−1)^{|y||x|}[y,[z,x]] + (−1)^{|z||y|}[z,[x,y]]`.
pub fn jacobi_residual(alg: &GradedSuperalgebra, x: usize, y: usize, z: usize) -> AlgebraElement {
    let p = |i| alg.parity(i);
    let mut out = AlgebraElement::zero();
    let terms = [
        (x, y, z, p(x).koszul(p(z))),
        (y, z, x, p(y).koszul(p(x))),
        (z, x, y, p(z).koszul(p(y))),
    ];
    for (a, b, c, s) in terms {
        let inner = alg.bracket_basis(b, c);
        for (k, ck) in inner.terms() {
            alg.add_bracket_basis(&mut out, &(ck * rational::sign(s)), a, k);
        }
    }
    out
}

/// Exhaustive over `i ≤ j ≤ k`; the other orderings follow by
/// antisymmetry. Triples are split across threads by first index and merged
/// in ascending order.
pub fn check_jacobi(alg: &GradedSuperalgebra) -> CheckReport {
    let n = alg.dim();
    let per_first: Vec<(usize, Vec<(usize, usize, usize, AlgebraElement)>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            let mut count = 0;
            for j in i..n {
                for k in j..n {
                    count += 1;
                    let r = jacobi_residual(alg, i, j, k);
                    if !r.is_zero() {
                        bad.push((i, j, k, r));
                    }
                }
            }
            (count, bad)
        })
        .collect();
    let mut rep = CheckReport::new("jacobi");
    for (count, bad) in per_first {
        rep.evaluated += count;
        for (i, j, k, r) in bad {
            let detail = format!("residual {}", render(alg.basis(), &r));
            rep.fail(Witness::new(alg.basis(), vec![i, j, k], detail));
        }
    }
    rep
}

/// Degree and parity additivity of every stored entry, plus the
/// consistency status (parity ≡ degree mod 2) with its witness set.
pub fn check_grading_parity(alg: &GradedSuperalgebra) -> CheckReport {
    let mut rep = CheckReport::new("grading-parity");
    for ((i, j), v) in alg.stored_brackets() {
        rep.evaluated += 1;
        let deg = alg.degree(i) + alg.degree(j);
        let par = alg.parity(i) + alg.parity(j);
        for k in v.support() {
            if alg.degree(k) != deg || alg.parity(k) != par {
                let detail = format!(
                    "[{}, {}] has component {} of degree {} parity {}; expected degree {deg} parity {par}",
                    alg.label(i),
                    alg.label(j),
                    alg.label(k),
                    alg.degree(k),
                    alg.parity(k)
                );
                rep.fail(Witness::new(alg.basis(), vec![i, j, k], detail));
            }
        }
    }
    let inconsistent: Vec<usize> = alg
        .basis()
        .iter()
        .filter(|b| b.parity != Parity::from_count(b.degree.unsigned_abs() as usize))
        .map(|b| b.index)
        .collect();
    rep.metrics.insert("consistent".into(), inconsistent.is_empty() as i64);
    rep.metrics
        .insert("inconsistent_elements".into(), inconsistent.len() as i64);
    rep
}

/// Basis elements whose parity differs from their degree mod 2.
pub fn inconsistency_witnesses(alg: &GradedSuperalgebra) -> Vec<usize> {
    alg.basis()
        .iter()
        .filter(|b| b.parity != Parity::from_count(b.degree.unsigned_abs() as usize))
        .map(|b| b.index)
        .collect()
}

/// Coordinates of `ad(x)|_{g_{-1}}` as a sparse row over `(v, k)` pairs.
fn ad_restricted(alg: &GradedSuperalgebra, x: usize, minus_one: &[usize]) -> Row {
    let dim = alg.dim();
    let mut row = Vec::new();
    for (slot, &v) in minus_one.iter().enumerate() {
        for (k, c) in alg.bracket_basis(x, v).terms() {
            row.push((slot * dim + k, c.clone()));
        }
    }
    linalg::row_from_entries(row)
}

/// Transitivity: `x ∈ g_0` and `[x, g_{-1}] = 0` imply `x = 0`. Computes
/// the kernel of `x ↦ ad(x)|_{g_{-1}}` exactly.
pub fn check_transitivity(alg: &GradedSuperalgebra) -> CheckReport {
    let mut rep = CheckReport::new("transitivity");
    let g0 = alg.component(0);
    let gm1 = alg.component(-1);
    let rows: Vec<Row> = g0.iter().map(|&x| ad_restricted(alg, x, &gm1)).collect();
    rep.evaluated = g0.len();
    // rank of the family of images = rank of the map
    let rank = linalg::rank(rows.iter(), EliminationStrategy::FractionFree);
    let kernel = g0.len() - rank;
    rep.metrics.insert("g0_dim".into(), g0.len() as i64);
    rep.metrics.insert("kernel_dim".into(), kernel as i64);
    if kernel > 0 {
        let ns = linalg::nullspace(
            transpose(&rows, alg.dim() * gm1.len()).iter(),
            g0.len(),
            EliminationStrategy::FractionFree,
        );
        for v in ns {
            let el = AlgebraElement::from_terms(v.into_iter().map(|(c, q)| (g0[c], q)));
            let idx: Vec<usize> = el.support().collect();
            let detail = format!("kernel element {}", render(alg.basis(), &el));
            rep.fail(Witness::new(alg.basis(), idx, detail));
        }
    }
    rep
}

fn transpose(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut cols: Vec<Row> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            cols[*c].push((r, v.clone()));
        }
    }
    cols.into_iter().filter(|c| !c.is_empty()).collect()
}

/// `[g_0, g_{-1}] = g_{-1}` and, for each `d ≤ −2` not listed in
/// `out_of_scope`, `Σ_{a+b=d, a,b<0} [g_a, g_b] = g_d`.
pub fn check_generation(alg: &GradedSuperalgebra, out_of_scope: &[i32]) -> CheckReport {
    let mut rep = CheckReport::new("generation");
    let span_rank = |pairs: &[(usize, usize)]| -> usize {
        let rows: Vec<Row> = pairs
            .iter()
            .map(|&(a, b)| alg.bracket_basis(a, b).to_row())
            .filter(|r| !r.is_empty())
            .collect();
        linalg::rank(rows.iter(), EliminationStrategy::FractionFree)
    };
    let g0 = alg.component(0);
    let gm1 = alg.component(-1);
    if !gm1.is_empty() {
        let pairs: Vec<(usize, usize)> = g0.iter().flat_map(|&x| gm1.iter().map(move |&v| (x, v))).collect();
        rep.evaluated += pairs.len();
        let r = span_rank(&pairs);
        rep.metrics.insert("rank_g0_gm1".into(), r as i64);
        rep.metrics.insert("dim_g-1".into(), gm1.len() as i64);
        if r != gm1.len() {
            rep.fail(Witness::new(
                alg.basis(),
                vec![],
                format!("[g_0, g_-1] has rank {r}, dim g_-1 = {}", gm1.len()),
            ));
        }
    }
    for d in (alg.min_degree()..=-2).rev() {
        if out_of_scope.contains(&d) {
            continue;
        }
        let target = alg.component(d);
        let mut pairs = Vec::new();
        for a in (d + 1)..0 {
            let b = d - a;
            if a < b {
                continue;
            }
            for &x in &alg.component(a) {
                for &y in &alg.component(b) {
                    pairs.push((x, y));
                }
            }
        }
        rep.evaluated += pairs.len();
        let r = span_rank(&pairs);
        rep.metrics.insert(format!("rank_into_g{d}"), r as i64);
        rep.metrics.insert(format!("dim_g{d}"), target.len() as i64);
        if r != target.len() {
            rep.fail(Witness::new(
                alg.basis(),
                vec![],
                format!(
                    "brackets of negative parts span rank {r} in g_{d}, dim {}",
                    target.len()
                ),
            ));
        }
    }
    rep
}

/// Optional: absolute irreducibility of `g_{-1}` as a `g_0`-module, decided
/// by Burnside's theorem. The associative envelope of `ad(g_0)|_{g_{-1}}`
/// equals `End(g_{-1})` exactly when no proper nonzero invariant subspace
/// exists over an algebraic closure.
pub fn check_irreducibility(alg: &GradedSuperalgebra) -> CheckReport {
    let mut rep = CheckReport::new("irreducibility");
    let g0 = alg.component(0);
    let gm1 = alg.component(-1);
    let n = gm1.len();
    let pos: BTreeMap<usize, usize> = gm1.iter().enumerate().map(|(s, &v)| (v, s)).collect();
    type Mat = Vec<Vec<Rational>>;
    let mut gens: Vec<Mat> = Vec::new();
    for &x in &g0 {
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (col, &v) in gm1.iter().enumerate() {
            for (k, c) in alg.bracket_basis(x, v).terms() {
                if let Some(&row) = pos.get(&k) {
                    m[row][col] = c.clone();
                }
            }
        }
        gens.push(m);
    }
    let flatten = |m: &Mat| -> Row {
        let mut r = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    r.push((i * n + j, v.clone()));
                }
            }
        }
        r
    };
    let mul = |a: &Mat, b: &Mat| -> Mat {
        let mut c = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !b[k][j].is_zero() {
                        c[i][j] += &a[i][k] * &b[k][j];
                    }
                }
            }
        }
        c
    };
    // span of words in the generators, including the identity
    let mut ech = linalg::RationalEchelon::new();
    let mut basis: Vec<Mat> = Vec::new();
    let mut ident = vec![vec![Rational::zero(); n]; n];
    for (i, row) in ident.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    let mut frontier = vec![ident];
    while let Some(m) = frontier.pop() {
        if ech.insert(&flatten(&m)) {
            for g in &gens {
                frontier.push(mul(g, &m));
            }
            basis.push(m);
        }
        if ech.rank() == n * n {
            break;
        }
    }
    rep.evaluated = basis.len();
    rep.metrics.insert("envelope_dim".into(), ech.rank() as i64);
    rep.metrics.insert("end_dim".into(), (n * n) as i64);
    if ech.rank() != n * n {
        rep.fail(Witness::new(
            alg.basis(),
            vec![],
            format!("associative envelope has dimension {} < {}", ech.rank(), n * n),
        ));
    }
    rep
}

/// All five structural checks (irreducibility is separate).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub algebra: String,
    pub dim: usize,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

pub fn run_suite(alg: &GradedSuperalgebra, generation_out_of_scope: &[i32]) -> SuiteReport {
    let checks = vec![
        check_antisymmetry(alg),
        check_jacobi(alg),
        check_grading_parity(alg),
        check_transitivity(alg),
        check_generation(alg, generation_out_of_scope),
    ];
    SuiteReport {
        algebra: alg.name().to_string(),
        dim: alg.dim(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_algebras::*;
    use crate::rational::int;

    #[test]
    fn full_table_with_symmetric_even_pair_fails() {
        let b = basis(&[
            ("e1", Parity::Even, 0),
            ("e2", Parity::Even, 0),
            ("e3", Parity::Even, 0),
        ]);
        let mut table = BracketTable::new();
        table.insert((0, 1), AlgebraElement::basis(2));
        table.insert((1, 0), AlgebraElement::basis(2));
        let rep = check_antisymmetry_table(&b, &table);
        assert!(!rep.passed);
        assert_eq!(rep.witnesses[0].labels, vec!["e1", "e2"]);
    }

    #[test]
    fn antisymmetry_passes_on_stored_and_abelian() {
        assert!(check_antisymmetry(&abelian(1)).passed);
        assert!(check_antisymmetry(&borel()).passed);
    }

    #[test]
    fn even_square_is_an_antisymmetry_violation() {
        let mut a = abelian(2);
        a.set_bracket(0, 0, AlgebraElement::basis(1)).unwrap();
        let rep = check_antisymmetry(&a);
        assert!(!rep.passed);
        assert_eq!(rep.witnesses[0].indices, vec![0, 0]);
    }

    #[test]
    fn jacobi_fails_on_hand_made_algebra() {
        let a = broken_jacobi();
        // hand evaluation on (e1, e2, e3):
        // [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = 0 + [e2,-e1] + [e3,e3] = e3
        assert_eq!(jacobi_residual(&a, 0, 1, 2), AlgebraElement::basis(2));
        // a repeated even argument always cancels
        assert!(jacobi_residual(&a, 0, 0, 1).is_zero());
        let rep = check_jacobi(&a);
        assert!(!rep.passed);
        assert_eq!(rep.witnesses[0].indices, vec![0, 1, 2]);
        assert_eq!(rep.evaluated, 10);
    }

    #[test]
    fn jacobi_passes_on_abelian_and_borel() {
        assert!(check_jacobi(&abelian(3)).passed);
        assert!(check_jacobi(&borel()).passed);
    }

    #[test]
    fn grading_violation_detected() {
        let mut a = borel();
        // [h, f] should land in degree -1; put it in degree 0 instead
        a.set_bracket(0, 1, AlgebraElement::basis(0)).unwrap();
        let rep = check_grading_parity(&a);
        assert!(!rep.passed);
        assert!(check_grading_parity(&borel()).passed);
    }

    #[test]
    fn transitivity_examples() {
        let rep = check_transitivity(&borel());
        assert!(rep.passed);
        assert_eq!(rep.metric("kernel_dim"), Some(0));

        // add a central even degree-0 element
        let mut b = basis(&[("h", Parity::Even, 0), ("f", Parity::Even, -1), ("z", Parity::Even, 0)]);
        b[2].index = 2;
        let mut a = GradedSuperalgebra::new("borel+z", b).unwrap();
        a.set_bracket(0, 1, AlgebraElement::term(1, int(-2))).unwrap();
        let rep = check_transitivity(&a);
        assert!(!rep.passed);
        assert_eq!(rep.metric("kernel_dim"), Some(1));
        assert_eq!(rep.witnesses[0].labels, vec!["z"]);

        let rep = check_transitivity(&abelian(2));
        assert!(!rep.passed);
        assert_eq!(rep.metric("kernel_dim"), Some(2));
    }

    #[test]
    fn generation_on_borel() {
        let rep = check_generation(&borel(), &[]);
        assert!(rep.passed);
        assert_eq!(rep.metric("rank_g0_gm1"), Some(1));
    }

    #[test]
    fn irreducibility_of_one_dimensional_module() {
        let rep = check_irreducibility(&borel());
        assert!(rep.passed);
        assert_eq!(rep.metric("envelope_dim"), Some(1));
    }
}
