//! Decomposition of the solution variety of the quadratic stage.
//!
//! The reduced Gröbner basis is split recursively along factorizations of
//! its elements: a common variable factor, a rational root of a univariate
//! element, or a quadratic that is a product of two rational linear forms.
//! A branch whose basis is linear is an affine component. A branch with no
//! available split is kept as a residual component given by its basis.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::groebner::{groebner, normal_form, GroebnerOutcome, GroebnerStats};
use super::poly::{Monomial, Poly};
use crate::linalg::{self, EliminationStrategy};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `base + Σ t_i directions[i]`; a point when there are no directions.
    Affine {
        base: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
    },
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Reduced Gröbner basis of the component's ideal.
    pub ideal: Vec<Poly>,
    pub shape: Shape,
}

impl Component {
    pub fn dimension(&self) -> Option<usize> {
        match &self.shape {
            Shape::Affine { directions, .. } => Some(directions.len()),
            Shape::Residual => None,
        }
    }

    pub fn is_point(&self) -> bool {
        self.dimension() == Some(0)
    }

    /// Whether every point of the component satisfies `p = 0`.
    pub fn contains_point(&self, c: &[Rational]) -> bool {
        self.ideal.iter().all(|g| g.eval(c).is_zero())
    }

    /// Parameter values of the point at `t`.
    pub fn point_at(&self, t: &[Rational]) -> Option<Vec<Rational>> {
        let Shape::Affine { base, directions } = &self.shape else {
            return None;
        };
        let mut out = base.clone();
        for (d, ti) in directions.iter().zip(t) {
            for (o, di) in out.iter_mut().zip(d) {
                *o += di * ti;
            }
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct Variety {
    pub components: Vec<Component>,
    pub status: Status,
    pub groebner_runs: usize,
    pub stats: GroebnerStats,
}

#[derive(Clone, Copy, Debug)]
pub struct VarietyConfig {
    pub pair_cap: usize,
    pub max_branches: usize,
}

impl Default for VarietyConfig {
    fn default() -> Self {
        Self {
            pair_cap: 50_000,
            max_branches: 4096,
        }
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// `l` with `l² = q`, if `q` is the square of a polynomial of degree ≤ 1.
fn linear_sqrt(q: &Poly) -> Option<Poly> {
    let n = q.nvars();
    if q.is_zero() {
        return Some(Poly::zero(n));
    }
    if q.degree() > 2 {
        return None;
    }
    let square = |i: usize| Monomial::var(n, i).mul(&Monomial::var(n, i));
    let constant = q.coefficient(&Monomial::one(n));
    let mut l = Poly::zero(n);
    if let Some(w) = (0..n).find(|&i| !q.coefficient(&square(i)).is_zero()) {
        let lw = rational_sqrt(&q.coefficient(&square(w)))?;
        let two_lw = &lw * rational::int(2);
        for u in 0..n {
            if u == w {
                continue;
            }
            let cross = Monomial::var(n, u).mul(&Monomial::var(n, w));
            l.add_term(Monomial::var(n, u), &q.coefficient(&cross) / &two_lw);
        }
        l.add_term(Monomial::var(n, w), lw);
        l.add_term(Monomial::one(n), &q.coefficient(&Monomial::var(n, w)) / &two_lw);
    } else {
        if q.degree() > 0 {
            return None;
        }
        l.add_term(Monomial::one(n), rational_sqrt(&constant)?);
    }
    (l.mul(&l) == *q).then_some(l)
}

/// Splits `p = a v² + b v + c` in the variable `v` over Q.
fn split_quadratic_in(p: &Poly, v: usize) -> Option<(Poly, Poly)> {
    let n = p.nvars();
    let mut a = Rational::zero();
    let mut b = Poly::zero(n);
    let mut c = Poly::zero(n);
    for (m, k) in p.terms() {
        match m.0[v] {
            2 => a = k.clone(),
            1 => b.add_term(Monomial::var(n, v).quotient(m), k.clone()),
            _ => c.add_term(m.clone(), k.clone()),
        }
    }
    let vp = Poly::var(n, v);
    if !a.is_zero() {
        let disc = b.mul(&b).minus(&c.scale(&(&a * rational::int(4))));
        let s = linear_sqrt(&disc)?;
        let two_a = &a * rational::int(2);
        // roots r = (−b ± s)/(2a); factors v − r
        let r1 = b.scale(&-Rational::one()).plus(&s).scale(&(Rational::one() / &two_a));
        let r2 = b.scale(&-Rational::one()).minus(&s).scale(&(Rational::one() / &two_a));
        return Some((vp.minus(&r1), vp.minus(&r2)));
    }
    if b.is_zero() || b.is_constant() {
        return None;
    }
    // p = v·b + c = (v + l)·b with b linear, when b divides c.
    let (l, r) = c.divide(&b);
    if !r.is_zero() || l.degree() > 1 {
        return None;
    }
    Some((vp.plus(&l), b))
}

fn split_quadratic(p: &Poly) -> Option<(Poly, Poly)> {
    if p.degree() != 2 {
        return None;
    }
    p.variables().into_iter().find_map(|v| split_quadratic_in(p, v))
}

fn common_variable(p: &Poly) -> Option<(Poly, Poly)> {
    let n = p.nvars();
    let v = (0..n).find(|&v| p.terms().all(|(m, _)| m.0[v] > 0))?;
    let (q, r) = p.divide(&Poly::var(n, v));
    debug_assert!(r.is_zero());
    Some((Poly::var(n, v), q))
}

/// Coefficients of a univariate polynomial, lowest degree first.
fn univariate(p: &Poly) -> Option<(usize, Vec<Rational>)> {
    let vars = p.variables();
    let [v] = vars[..] else { return None };
    let mut coeffs = vec![Rational::zero(); p.degree() as usize + 1];
    for (m, c) in p.terms() {
        coeffs[m.0[v] as usize] = c.clone();
    }
    Some((v, coeffs))
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n > BigInt::from(limit) {
        return None;
    }
    let n: u64 = n.try_into().ok()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(n / d));
        }
        d += 1;
    }
    Some(out)
}

fn rational_root(p: &Poly) -> Option<(Poly, Poly)> {
    let (v, coeffs) = univariate(p)?;
    if coeffs.len() < 3 {
        return None;
    }
    let n = p.nvars();
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let low = ints.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        return common_variable(p);
    }
    let ps = divisors(&ints[0], 1 << 24)?;
    let qs = divisors(ints.last().expect("nonempty"), 1 << 24)?;
    let eval = |r: &Rational| coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * r + c);
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    for a in &ps {
        for b in &qs {
            let r = Rational::new(a.clone(), b.clone());
            candidates.insert(r.clone());
            candidates.insert(-r);
        }
    }
    let r = candidates.into_iter().find(|r| eval(r).is_zero())?;
    let f = Poly::var(n, v).minus(&Poly::constant(n, r));
    let (q, rem) = p.divide(&f);
    debug_assert!(rem.is_zero());
    Some((f, q))
}

fn find_split(gb: &[Poly]) -> Option<(Poly, Poly)> {
    let refs: Vec<&Poly> = gb.iter().collect();
    let outside = |f: &Poly| !normal_form(f, &refs).is_zero();
    for p in gb.iter().filter(|p| p.degree() >= 2) {
        for split in [common_variable(p), rational_root(p), split_quadratic(p)]
            .into_iter()
            .flatten()
        {
            if !split.0.is_constant() && !split.1.is_constant() && outside(&split.0) && outside(&split.1) {
                return Some(split);
            }
        }
    }
    None
}

/// Affine solution set of a reduced linear Gröbner basis.
fn affine_shape(gb: &[Poly], n: usize) -> Shape {
    let mut pivots: Vec<(usize, Poly)> = Vec::new();
    for g in gb {
        let (m, _) = g.leading().expect("nonzero");
        let v = m.support().next().expect("nonconstant");
        pivots.push((v, g.clone()));
    }
    let pivot_vars: BTreeSet<usize> = pivots.iter().map(|(v, _)| *v).collect();
    let mut base = vec![Rational::zero(); n];
    for (v, g) in &pivots {
        let (_, c) = g.as_affine().expect("linear");
        base[*v] = -c;
    }
    let mut directions = Vec::new();
    for f in (0..n).filter(|v| !pivot_vars.contains(v)) {
        let mut d = vec![Rational::zero(); n];
        d[f] = Rational::one();
        for (v, g) in &pivots {
            let (lin, _) = g.as_affine().expect("linear");
            if let Some(c) = lin.get(&f) {
                d[*v] = -c.clone();
            }
        }
        directions.push(d);
    }
    Shape::Affine { base, directions }
}

/// Substitutes the parametrization of `a` into `g`.
fn restricted_to(g: &Poly, a: &Component) -> Option<Poly> {
    let Shape::Affine { base, directions } = &a.shape else {
        return None;
    };
    let k = directions.len();
    let coords: Vec<Poly> = (0..g.nvars())
        .map(|i| {
            let mut p = Poly::constant(k, base[i].clone());
            for (t, d) in directions.iter().enumerate() {
                p.add_term(Monomial::var(k, t), d[i].clone());
            }
            p
        })
        .collect();
    let mut out = Poly::zero(k);
    for (m, c) in g.terms() {
        let mut t = Poly::constant(k, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&coords[i]);
            }
        }
        out.add_scaled(&t, &Rational::one());
    }
    Some(out)
}

fn contained_in(a: &Component, b: &Component) -> bool {
    b.ideal.iter().all(|g| restricted_to(g, a).is_some_and(|p| p.is_zero()))
}

pub fn decompose(generators: &[Poly], nvars: usize, cfg: VarietyConfig) -> Variety {
    let mut out = Variety {
        components: Vec::new(),
        status: Status::Complete,
        groebner_runs: 0,
        stats: GroebnerStats {
            pairs_processed: 0,
            pairs_pruned: 0,
            zero_reductions: 0,
        },
    };
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut found: Vec<Component> = Vec::new();
    let mut work: Vec<Vec<Poly>> = vec![generators.to_vec()];
    while let Some(gens) = work.pop() {
        if out.groebner_runs >= cfg.max_branches {
            out.status = Status::Inconclusive(format!("branch cap {} reached", cfg.max_branches));
            break;
        }
        out.groebner_runs += 1;
        let gb = match groebner(&gens, cfg.pair_cap) {
            GroebnerOutcome::Complete(gb, s) => {
                out.stats.pairs_processed += s.pairs_processed;
                out.stats.pairs_pruned += s.pairs_pruned;
                out.stats.zero_reductions += s.zero_reductions;
                gb
            }
            GroebnerOutcome::CapExceeded(_, s) => {
                out.stats.pairs_processed += s.pairs_processed;
                out.status = Status::Inconclusive(format!("S-pair cap {} reached", cfg.pair_cap));
                break;
            }
        };
        if gb.iter().any(|g| g.is_unit()) {
            continue;
        }
        if !seen.insert(gb.iter().map(|g| g.render()).collect()) {
            continue;
        }
        if gb.iter().all(|g| g.degree() <= 1) {
            let shape = affine_shape(&gb, nvars);
            found.push(Component { ideal: gb, shape });
            continue;
        }
        match find_split(&gb) {
            Some((f, g)) => {
                for factor in [g, f] {
                    let mut next = gb.clone();
                    next.push(factor);
                    work.push(next);
                }
            }
            None => found.push(Component {
                ideal: gb,
                shape: Shape::Residual,
            }),
        }
    }
    // Drop components contained in another one.
    for (i, a) in found.iter().enumerate() {
        let redundant = found
            .iter()
            .enumerate()
            .any(|(j, b)| j != i && contained_in(a, b) && (!contained_in(b, a) || j < i));
        if !redundant {
            out.components.push(a.clone());
        }
    }
    out.components.sort_by(|a, b| {
        let key = |c: &Component| {
            (
                c.dimension().map_or(usize::MAX, |d| d),
                c.ideal.iter().map(|g| g.render()).collect::<Vec<_>>(),
            )
        };
        key(a).cmp(&key(b))
    });
    out
}

/// Rank of the column span of `blocks` placed side by side.
pub fn span_rank(blocks: &[Vec<Vec<Rational>>], transpose: bool) -> usize {
    let mut rows = Vec::new();
    for b in blocks {
        let n = b.len();
        for k in 0..n {
            let row = linalg::row_from_entries((0..n).map(|l| {
                let v = if transpose { b[l][k].clone() } else { b[k][l].clone() };
                (l, v)
            }));
            rows.push(row);
        }
    }
    linalg::rank(rows.iter(), EliminationStrategy::Rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn k(n: usize, c: i64) -> Poly {
        Poly::constant(n, int(c))
    }

    #[test]
    fn scaled_identity_points() {
        // λ - λ² = 0
        let p = v(1, 0).minus(&v(1, 0).mul(&v(1, 0)));
        let var = decompose(&[p], 1, VarietyConfig::default());
        assert_eq!(var.status, Status::Complete);
        let pts: Vec<_> = var.components.iter().map(|c| c.point_at(&[]).unwrap()).collect();
        assert_eq!(pts, vec![vec![int(0)], vec![int(1)]]);
    }

    #[test]
    fn product_of_linear_forms_and_families() {
        // (c0 + c1 - 1)(c0 - 2c1) = 0, c2 c0 = 0
        let n = 3;
        let l1 = v(n, 0).plus(&v(n, 1)).minus(&k(n, 1));
        let l2 = v(n, 0).minus(&v(n, 1).scale(&int(2)));
        let p = l1.mul(&l2);
        let q = v(n, 2).mul(&v(n, 0));
        let var = decompose(&[p.clone(), q.clone()], n, VarietyConfig::default());
        assert_eq!(var.status, Status::Complete);
        assert!(var.components.iter().all(|c| c.dimension().is_some()));
        for c in &var.components {
            let dim = c.dimension().unwrap();
            for t in [vec![int(0); dim], vec![int(3); dim]] {
                let pt = c.point_at(&t).unwrap();
                assert!(p.eval(&pt).is_zero() && q.eval(&pt).is_zero());
            }
        }
        // {l1, c2}, {l1, c0}, {l2, c2}, {l2, c0}
        let dims: Vec<_> = var.components.iter().map(|c| c.dimension().unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn irreducible_quadratic_is_residual() {
        let p = v(1, 0).mul(&v(1, 0)).minus(&k(1, 2));
        let var = decompose(&[p], 1, VarietyConfig::default());
        assert_eq!(var.components.len(), 1);
        assert_eq!(var.components[0].shape, Shape::Residual);
        let p = v(1, 0).mul(&v(1, 0)).plus(&k(1, 1));
        let var = decompose(&[p], 1, VarietyConfig::default());
        assert_eq!(var.components[0].shape, Shape::Residual);
    }

    #[test]
    fn cubic_rational_roots() {
        // (c - 1)(c + 2)(2c - 3)
        let c = v(1, 0);
        let p = c
            .minus(&k(1, 1))
            .mul(&c.plus(&k(1, 2)))
            .mul(&c.scale(&int(2)).minus(&k(1, 3)));
        let var = decompose(&[p], 1, VarietyConfig::default());
        let pts: Vec<_> = var
            .components
            .iter()
            .map(|c| c.point_at(&[]).unwrap()[0].clone())
            .collect();
        assert_eq!(pts, vec![int(-2), int(1), rational::frac(3, 2)]);
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let var = decompose(&[v(1, 0), v(1, 0).minus(&k(1, 1))], 1, VarietyConfig::default());
        assert!(var.components.is_empty());
        assert_eq!(var.status, Status::Complete);
    }

    #[test]
    fn pair_cap_is_inconclusive() {
        let n = 3;
        let p = v(n, 0).mul(&v(n, 1)).minus(&v(n, 2));
        let q = v(n, 1).mul(&v(n, 2)).minus(&v(n, 0));
        let cfg = VarietyConfig {
            pair_cap: 0,
            max_branches: 10,
        };
        assert!(matches!(decompose(&[p, q], n, cfg).status, Status::Inconclusive(_)));
    }
}
