//! Buchberger's algorithm over Q with the Gebauer–Möller pair criteria.
//!
//! Pairs are selected by the normal strategy (smallest lcm in grevlex, ties
//! by pair indices), so the computation is deterministic.

use std::collections::BTreeSet;

use num_traits::One;

use super::poly::{Monomial, Poly};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_processed: usize,
    pub pairs_pruned: usize,
    pub zero_reductions: usize,
}

#[derive(Clone, Debug)]
pub enum GroebnerOutcome {
    /// Reduced Gröbner basis, monic, ascending by leading monomial.
    Complete(Vec<Poly>, GroebnerStats),
    /// Pair cap reached; the partial basis generates the same ideal but is
    /// not known to be a Gröbner basis.
    CapExceeded(Vec<Poly>, GroebnerStats),
}

/// Full normal form of `f` modulo `basis`.
pub fn normal_form(f: &Poly, basis: &[&Poly]) -> Poly {
    let mut p = f.clone();
    let mut r = Poly::zero(f.nvars());
    while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(&lm)));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.leading().expect("nonzero divisor");
                let q = gm.quotient(&lm);
                let c = -(lc / gc);
                p.add_scaled(&g.mul_term(&q, &Rational::one()), &c);
            }
            None => {
                p.add_term(lm.clone(), -lc.clone());
                r.add_term(lm, lc);
            }
        }
    }
    r
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient(&l), &fc.recip());
    let b = g.mul_term(&gm.quotient(&l), &gc.recip());
    a.minus(&b)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

struct State {
    polys: Vec<Poly>,
    active: Vec<usize>,
    pairs: BTreeSet<Pair>,
    pruned: usize,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i]
            .leading_monomial()
            .expect("stored polynomials are nonzero")
    }

    /// Gebauer–Möller update with the new polynomial `h`.
    fn update(&mut self, h: usize) {
        let hm = self.lm(h).clone();
        let cands: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, hm.lcm(self.lm(g)))).collect();
        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (n, (g, l)) in cands.iter().enumerate() {
            let coprime = hm.coprime(self.lm(*g));
            let dominated = cands
                .iter()
                .enumerate()
                .any(|(m, (_, l2))| m != n && l2.divides(l) && (l2 != l || m < n));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            } else {
                self.pruned += 1;
            }
        }
        // product criterion
        let before = kept.len();
        kept.retain(|(g, _)| !hm.coprime(self.lm(*g)));
        self.pruned += before - kept.len();
        // prune old pairs made redundant by h
        let old: Vec<Pair> = self.pairs.iter().cloned().collect();
        for p in old {
            let l1 = hm.lcm(self.lm(p.i));
            let l2 = hm.lcm(self.lm(p.j));
            if hm.divides(&p.lcm) && l1 != p.lcm && l2 != p.lcm {
                self.pairs.remove(&p);
                self.pruned += 1;
            }
        }
        for (g, l) in kept {
            let (i, j) = if g < h { (g, h) } else { (h, g) };
            self.pairs.insert(Pair { lcm: l, i, j });
        }
        let polys = &self.polys;
        self.active
            .retain(|&g| !hm.divides(polys[g].leading_monomial().expect("nonzero")));
        self.active.push(h);
    }
}

/// Reduced basis of a set of polynomials whose leading monomials are
/// pairwise non-divisible after removal of redundant elements.
fn interreduce(basis: Vec<Poly>) -> Vec<Poly> {
    let mut gs: Vec<Poly> = basis.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    gs.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in gs {
        let lm = g.leading_monomial().expect("nonzero").clone();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().expect("nonzero").divides(&lm))
        {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for (n, g) in minimal.iter().enumerate() {
        let others: Vec<&Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != n)
            .map(|(_, p)| p)
            .collect();
        let (lm, _) = g.leading().expect("nonzero");
        let tail = {
            let mut t = g.clone();
            t.add_term(lm.clone(), -Rational::one());
            t
        };
        let mut r = normal_form(&tail, &others);
        r.add_term(lm.clone(), Rational::one());
        out.push(r);
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}

pub fn groebner(generators: &[Poly], pair_cap: usize) -> GroebnerOutcome {
    let mut st = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        pruned: 0,
    };
    let mut stats = GroebnerStats {
        pairs_processed: 0,
        pairs_pruned: 0,
        zero_reductions: 0,
    };
    for g in generators {
        let basis: Vec<&Poly> = st.active.iter().map(|&i| &st.polys[i]).collect();
        let r = normal_form(g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return GroebnerOutcome::Complete(vec![r.monic()], stats);
        }
        st.polys.push(r.monic());
        let h = st.polys.len() - 1;
        st.update(h);
    }
    while let Some(p) = st.pairs.iter().next().cloned() {
        st.pairs.remove(&p);
        if stats.pairs_processed >= pair_cap {
            stats.pairs_pruned = st.pruned;
            let partial = st.active.iter().map(|&i| st.polys[i].clone()).collect();
            return GroebnerOutcome::CapExceeded(partial, stats);
        }
        stats.pairs_processed += 1;
        let s = s_polynomial(&st.polys[p.i], &st.polys[p.j]);
        let basis: Vec<&Poly> = st.active.iter().map(|&i| &st.polys[i]).collect();
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if r.is_unit() {
            stats.pairs_pruned = st.pruned;
            return GroebnerOutcome::Complete(vec![r.monic()], stats);
        }
        st.polys.push(r.monic());
        let h = st.polys.len() - 1;
        st.update(h);
    }
    stats.pairs_pruned = st.pruned;
    let basis = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    GroebnerOutcome::Complete(interreduce(basis), stats)
}
