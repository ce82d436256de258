//! Supercommutative polynomials in even variables `x_1..x_n` and odd
//! variables `ξ_1..ξ_m`, together with the vector-field, differential-form
//! and contact-bracket machinery used by the realizations.
//!
//! Variable indices are 1-based, matching the usual `x_1, …, x_5` notation.

mod contact;
mod fields;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational::{self, Rational};

pub use contact::{contact_bracket, contact_bracket_poly, ContactElement, DEFAULT_TRUNCATION};
pub use fields::{
    divergence, exterior_d_1form, exterior_d_2form, form_bracket, form_bracket_term, function_differential,
    lie_derivative_2form, vf_bracket, OneForm, ThreeForm, TwoForm, VectorField,
};

/// A polynomial variable.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Even(usize),
    Odd(usize),
}

impl Var {
    pub fn parity(self) -> Parity {
        match self {
            Var::Even(_) => Parity::Even,
            Var::Odd(_) => Parity::Odd,
        }
    }
}

/// Sign of the permutation written in one-line notation, or 0 if an entry
/// repeats. Entries may be arbitrary distinct integers.
pub fn permutation_sign(entries: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for a in 0..entries.len() {
        for b in a + 1..entries.len() {
            if entries[a] == entries[b] {
                return 0;
            }
            if entries[a] > entries[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ε_{tijkl}`: the sign of `(t i j k l)` as a permutation of `(1 2 3 4 5)`,
/// zero when an index repeats.
pub fn perm_sign(t: usize, i: usize, j: usize, k: usize, l: usize) -> Result<i32> {
    let idx = [t, i, j, k, l];
    if let Some(bad) = idx.iter().find(|&&v| !(1..=5).contains(&v)) {
        return Err(Error::Domain(format!("permutation index {bad} outside 1..5")));
    }
    Ok(permutation_sign(&idx))
}

/// Monomial `x^a ξ_{i_1} ⋯ ξ_{i_r}` with `i_1 < ⋯ < i_r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperMonomial {
    even: BTreeMap<usize, u32>,
    odd: Vec<usize>,
}

impl SuperMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::Even(i) => SuperMonomial {
                even: BTreeMap::from([(i, 1)]),
                odd: Vec::new(),
            },
            Var::Odd(i) => SuperMonomial {
                even: BTreeMap::new(),
                odd: vec![i],
            },
        }
    }

    /// Builds a monomial from even exponents and an odd index sequence,
    /// reordering the odd factors. Returns the reordering sign, or `None`
    /// when an odd factor repeats.
    pub fn new(even: impl IntoIterator<Item = (usize, u32)>, odd: &[usize]) -> Option<(i32, SuperMonomial)> {
        let s = permutation_sign(odd);
        if s == 0 {
            return None;
        }
        let mut odd = odd.to_vec();
        odd.sort_unstable();
        let even =
            even.into_iter()
                .filter(|&(_, e)| e > 0)
                .fold(BTreeMap::new(), |mut m: BTreeMap<usize, u32>, (i, e)| {
                    *m.entry(i).or_default() += e;
                    m
                });
        Some((s, SuperMonomial { even, odd }))
    }

    pub fn even_exponents(&self) -> &BTreeMap<usize, u32> {
        &self.even
    }

    pub fn odd_factors(&self) -> &[usize] {
        &self.odd
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.len())
    }

    /// Total degree, counting every variable with weight one.
    pub fn degree(&self) -> u32 {
        self.even.values().sum::<u32>() + self.odd.len() as u32
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.even.get(&i).copied().unwrap_or(0)
    }

    /// Product `self · other` as `(sign, monomial)`, `None` if an odd
    /// variable appears twice.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(i32, SuperMonomial)> {
        let mut inversions = 0usize;
        let mut merged = Vec::with_capacity(self.odd.len() + other.odd.len());
        let (mut a, mut b) = (0, 0);
        while a < self.odd.len() || b < other.odd.len() {
            if b == other.odd.len() || (a < self.odd.len() && self.odd[a] < other.odd[b]) {
                merged.push(self.odd[a]);
                a += 1;
            } else if a == self.odd.len() || other.odd[b] < self.odd[a] {
                // other.odd[b] jumps over the remaining factors of self
                inversions += self.odd.len() - a;
                merged.push(other.odd[b]);
                b += 1;
            } else {
                return None;
            }
        }
        let mut even = self.even.clone();
        for (&i, &e) in &other.even {
            *even.entry(i).or_default() += e;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, SuperMonomial { even, odd: merged }))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&i, &e) in &self.even {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        for &i in &self.odd {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "xi{i}")?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

/// Finite sum of monomials with rational coefficients; no stored zeros,
/// terms kept in the canonical monomial order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SuperPoly {
    terms: BTreeMap<SuperMonomial, Rational>,
}

impl SuperPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, SuperMonomial::one())
    }

    pub fn term(c: Rational, m: SuperMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), SuperMonomial::var(v))
    }

    pub fn x(i: usize) -> Self {
        Self::var(Var::Even(i))
    }

    pub fn xi(i: usize) -> Self {
        Self::var(Var::Odd(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Z₂-degree, `None` if the polynomial mixes parities. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(SuperMonomial::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Largest total degree of a term; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(SuperMonomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero();
        }
        SuperPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> SuperPoly {
        SuperPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((s, m)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// `∂p/∂v`. For odd `v` this is the left derivative: `ξ_v` is moved to
    /// the front (sign `(-1)^(odd factors before it)`) and struck out.
    pub fn partial(&self, v: Var) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m, c) in &self.terms {
            match v {
                Var::Even(i) => {
                    let e = m.exponent(i);
                    if e == 0 {
                        continue;
                    }
                    let mut nm = m.clone();
                    if e == 1 {
                        nm.even.remove(&i);
                    } else {
                        nm.even.insert(i, e - 1);
                    }
                    out.add_term(nm, c * rational::int(e as i64));
                }
                Var::Odd(i) => {
                    let Some(pos) = m.odd.iter().position(|&j| j == i) else {
                        continue;
                    };
                    let mut nm = m.clone();
                    nm.odd.remove(pos);
                    out.add_term(nm, if pos % 2 == 0 { c.clone() } else { -c.clone() });
                }
            }
        }
        out
    }

    /// Odd variable indices occurring anywhere in the polynomial.
    pub fn odd_support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.odd.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Even variable indices occurring anywhere in the polynomial.
    pub fn even_support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.even.keys().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        SuperPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        SuperPoly::mul(self, rhs)
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{}", rational::to_string(c))?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({})*{m}", rational::to_string(c))?;
            }
        }
        Ok(())
    }
}
