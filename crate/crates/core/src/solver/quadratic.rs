//! Quadratic stage: multiplicativity `σ[x,y] = [σx, σy]` on the family
//! `σ = Σ c_k B_k`.

use rayon::prelude::*;
use serde::Serialize;

use super::linear::CandidateMap;
use super::poly::{Monomial, Poly};
use crate::algebra::{AlgebraElement, GradedSuperalgebra};
use crate::linalg::{Echelon, EliminationStrategy, Row};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairTag {
    pub pair: (usize, usize),
    pub output: usize,
}

#[derive(Clone, Debug)]
pub struct QuadraticSystem {
    pub nparams: usize,
    pub polynomials: Vec<Poly>,
    pub tags: Vec<PairTag>,
}

fn products(alg: &GradedSuperalgebra, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    alg.bracket(a, b).expect("images lie in the algebra")
}

/// One vector equation per pair `i ≤ j`, one polynomial per nonzero output
/// coordinate.
pub fn assemble_multiplicativity(alg: &GradedSuperalgebra, family: &[CandidateMap]) -> QuadraticSystem {
    let d = family.len();
    let n = alg.dim();
    let images: Vec<Vec<AlgebraElement>> = family.iter().map(|m| m.images()).collect();
    let per_i: Vec<Vec<(PairTag, Poly)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in i..n {
                let mut polys: std::collections::BTreeMap<usize, Poly> = Default::default();
                let w = alg.bracket_basis(i, j);
                for (k, m) in family.iter().enumerate() {
                    for (o, c) in m.apply(&w).terms() {
                        polys
                            .entry(o)
                            .or_insert_with(|| Poly::zero(d))
                            .add_term(Monomial::var(d, k), c.clone());
                    }
                }
                for k in 0..d {
                    if images[k][i].is_zero() {
                        continue;
                    }
                    for l in 0..d {
                        if images[l][j].is_zero() {
                            continue;
                        }
                        let prod = Monomial::var(d, k).mul(&Monomial::var(d, l));
                        for (o, c) in products(alg, &images[k][i], &images[l][j]).terms() {
                            polys
                                .entry(o)
                                .or_insert_with(|| Poly::zero(d))
                                .add_term(prod.clone(), -c.clone());
                        }
                    }
                }
                for (o, p) in polys {
                    if !p.is_zero() {
                        out.push((
                            PairTag {
                                pair: (i, j),
                                output: o,
                            },
                            p,
                        ));
                    }
                }
            }
            out
        })
        .collect();
    let mut sys = QuadraticSystem {
        nparams: d,
        polynomials: Vec::new(),
        tags: Vec::new(),
    };
    for (t, p) in per_i.into_iter().flatten() {
        sys.tags.push(t);
        sys.polynomials.push(p);
    }
    sys
}

/// `σ[e_i,e_j] − [σe_i, σe_j]` for every pair with a nonzero residual.
pub fn multiplicativity_residuals(
    alg: &GradedSuperalgebra,
    sigma: &CandidateMap,
) -> Vec<((usize, usize), AlgebraElement)> {
    let images = sigma.images();
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let lhs = sigma.apply(&alg.bracket_basis(i, j));
            let rhs = products(alg, &images[i], &images[j]);
            let r = lhs.minus(&rhs);
            if !r.is_zero() {
                out.push(((i, j), r));
            }
        }
    }
    out
}

/// Linear interreduction of the generators as vectors over their
/// monomials: returns a basis of their Q-span in reduced echelon form,
/// highest monomials first.
pub fn interreduce_linear(polys: &[Poly]) -> Vec<Poly> {
    let Some(nvars) = polys.first().map(|p| p.nvars()) else {
        return Vec::new();
    };
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    monos.reverse();
    let col = |m: &Monomial| monos.binary_search_by(|x| m.cmp(x)).expect("collected");
    let mut ech = Echelon::new(EliminationStrategy::Rational);
    for p in polys {
        let row: Row = crate::linalg::row_from_entries(p.terms().map(|(m, c)| (col(m), c.clone())));
        ech.insert(&row);
    }
    let Echelon::Rational(e) = ech else { unreachable!() };
    e.pivot_rows()
        .map(|(_, r)| {
            let mut p = Poly::zero(nvars);
            for (c, v) in r {
                p.add_term(monos[*c].clone(), v.clone());
            }
            p
        })
        .collect()
}

/// Coefficients `c` to a concrete map `Σ c_k B_k`.
pub fn combine(family: &[CandidateMap], coeffs: &[Rational], dim: usize) -> CandidateMap {
    let mut out = CandidateMap::zero(dim);
    for (m, c) in family.iter().zip(coeffs) {
        out = out.plus(&m.scale(c));
    }
    out
}
