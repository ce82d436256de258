//! E(4,4): `g_0 = P̂(4) ⊂ gl(4|4)` acting on `g_{-1} = F^{4|4}`.
//!
//! Indices are 1-based in labels and 0-based internally; `i' = i + 4`.

use std::array;
use std::fmt;

use num_traits::{One, Zero};

use super::extract::{extract, Extraction, Generator};
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational::{self, Rational};
use crate::superpoly::permutation_sign;

pub const NAME: &str = "E(4,4)";

/// 8×8 matrix over Q with the block parity of gl(4|4): rows and columns
/// 1–4 even, 5–8 odd.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperMatrix8 {
    m: [[Rational; 8]; 8],
}

impl fmt::Debug for SuperMatrix8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .entries()
            .map(|(r, c, v)| format!("({r},{c})={}", rational::to_string(v)))
            .collect();
        write!(f, "SuperMatrix8[{}]", entries.join(", "))
    }
}

fn slot_parity(k: usize) -> Parity {
    if k < 4 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl SuperMatrix8 {
    pub fn zero() -> Self {
        Self {
            m: array::from_fn(|_| array::from_fn(|_| Rational::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for k in 0..8 {
            out.m[k][k] = Rational::one();
        }
        out
    }

    /// Matrix unit `E_{rc}` (0-based).
    pub fn unit(r: usize, c: usize) -> Self {
        let mut out = Self::zero();
        out.m[r][c] = Rational::one();
        out
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.m[r][c]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.m.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(c, v)| (r, c, v))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries().next().is_none()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.m[r][c] += v;
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (r, c, v) in self.entries() {
            out.m[r][c] = v * s;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (r, k, a) in self.entries() {
            for c in 0..8 {
                let b = &other.m[k][c];
                if !b.is_zero() {
                    out.m[r][c] += a * b;
                }
            }
        }
        out
    }

    /// `None` unless the support is purely even-block or purely odd-block.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.entries().map(|(r, c, _)| slot_parity(r) + slot_parity(c));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn apply(&self, v: &[Rational; 8]) -> [Rational; 8] {
        array::from_fn(|r| (0..8).fold(Rational::zero(), |acc, c| acc + &self.m[r][c] * &v[c]))
    }

    /// `ab − (−1)^{|a||b|} ba`.
    pub fn supercommutator(&self, other: &Self) -> Result<Self> {
        let (pa, pb) = match (self.parity(), other.parity()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Domain("supercommutator of inhomogeneous matrices".into())),
        };
        let s = rational::sign(pa.koszul(pb));
        Ok(self.mul(other).minus(&other.mul(self).scale(&s)))
    }
}

/// 4×4 block.
pub type Block4 = [[Rational; 4]; 4];

/// `C̃_{kl} = Σ_{m<n} ε_{klmn} c_{mn}` (single ordered sum; an involution
/// on skew matrices).
pub fn hodge_dual(c: &Block4) -> Block4 {
    array::from_fn(|k| {
        array::from_fn(|l| {
            let mut acc = Rational::zero();
            for m in 0..4 {
                for n in (m + 1)..4 {
                    let e = permutation_sign(&[k + 1, l + 1, m + 1, n + 1]);
                    if e != 0 {
                        acc += rational::sign(e) * &c[m][n];
                    }
                }
            }
            acc
        })
    })
}

/// The C-family element for `i < j` (0-based): lower-left skew block
/// `E_{i'j} − E_{j'i}` minus the upper-right embedding of its dual.
pub fn c_element(i: usize, j: usize) -> SuperMatrix8 {
    let mut skew: Block4 = array::from_fn(|_| array::from_fn(|_| Rational::zero()));
    skew[i][j] = Rational::one();
    skew[j][i] = -Rational::one();
    let dual = hodge_dual(&skew);
    let mut out = SuperMatrix8::zero();
    for r in 0..4 {
        for c in 0..4 {
            out.m[r + 4][c] = skew[r][c].clone();
            out.m[r][c + 4] = -dual[r][c].clone();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum E44Element {
    Matrix(SuperMatrix8),
    Vector([Rational; 8]),
}

impl E44Element {
    fn vector_parity(v: &[Rational; 8]) -> Option<Parity> {
        let mut it = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| slot_parity(k));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn parity(&self) -> Option<Parity> {
        match self {
            E44Element::Matrix(m) => m.parity(),
            E44Element::Vector(v) => Self::vector_parity(v),
        }
    }

    /// Matrix entries at `8r + c`, vector entries at `64 + k`.
    pub fn coordinates(&self) -> Vec<(usize, Rational)> {
        match self {
            E44Element::Matrix(m) => m.entries().map(|(r, c, v)| (8 * r + c, v.clone())).collect(),
            E44Element::Vector(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (64 + k, c.clone()))
                .collect(),
        }
    }
}

/// Supercommutator on matrices, `m·v` on matrix–vector pairs, zero on
/// vector pairs.
pub fn realize_bracket(a: &E44Element, b: &E44Element) -> Result<E44Element> {
    use E44Element::*;
    Ok(match (a, b) {
        (Matrix(x), Matrix(y)) => Matrix(x.supercommutator(y)?),
        (Matrix(m), Vector(v)) => Vector(m.apply(v)),
        (Vector(v), Matrix(m)) => {
            let (pv, pm) = match (a.parity(), m.parity()) {
                (Some(p), Some(q)) => (p, q),
                _ => return Err(Error::Domain("inhomogeneous E(4,4) element".into())),
            };
            let s = rational::sign(-pv.koszul(pm));
            Vector(m.apply(v).map(|c| c * &s))
        }
        (Vector(_), Vector(_)) => Vector(array::from_fn(|_| Rational::zero())),
    })
}

fn p(k: usize) -> usize {
    k + 4
}

/// Basis in listing order: A, B, C, I, then `v_1..v_4`, `v_1'..v_4'`.
pub fn generators() -> Vec<Generator<E44Element>> {
    let e = SuperMatrix8::unit;
    let mut gens = Vec::new();
    let mut push = |label: String, parity, degree, value| {
        gens.push(Generator::new(label, parity, degree, value));
    };
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                let m = e(i, j).minus(&e(p(j), p(i)));
                let label = format!("E_{}{}-E_{}'{}'", i + 1, j + 1, j + 1, i + 1);
                push(label, Parity::Even, 0, E44Element::Matrix(m));
            }
        }
    }
    for i in 0..4 {
        for j in i..4 {
            let (m, label) = if i == j {
                (e(i, p(i)), format!("E_{}{}'", i + 1, i + 1))
            } else {
                (
                    e(i, p(j)).plus(&e(j, p(i))),
                    format!("E_{}{}'+E_{}{}'", i + 1, j + 1, j + 1, i + 1),
                )
            };
            push(label, Parity::Odd, 0, E44Element::Matrix(m));
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let label = format!("E_{}'{}-E_{}'{}-dual", i + 1, j + 1, j + 1, i + 1);
            push(label, Parity::Odd, 0, E44Element::Matrix(c_element(i, j)));
        }
    }
    push(
        "I".into(),
        Parity::Even,
        0,
        E44Element::Matrix(SuperMatrix8::identity()),
    );
    for i in 0..3 {
        let m = e(i, i)
            .minus(&e(i + 1, i + 1))
            .minus(&e(p(i), p(i)).minus(&e(p(i + 1), p(i + 1))));
        push(format!("h_{}", i + 1), Parity::Even, 0, E44Element::Matrix(m));
    }
    for k in 0..8 {
        let mut v: [Rational; 8] = array::from_fn(|_| Rational::zero());
        v[k] = Rational::one();
        let (label, parity) = if k < 4 {
            (format!("v_{}", k + 1), Parity::Even)
        } else {
            (format!("v_{}'", k - 3), Parity::Odd)
        };
        push(label, parity, -1, E44Element::Vector(v));
    }
    gens
}

pub fn build() -> Result<Extraction> {
    extract(NAME, &generators(), E44Element::coordinates, realize_bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;
    use crate::rational::int;

    fn skew(i: usize, j: usize) -> Block4 {
        let mut s: Block4 = array::from_fn(|_| array::from_fn(|_| Rational::zero()));
        s[i][j] = int(1);
        s[j][i] = int(-1);
        s
    }

    #[test]
    fn dual_is_an_involution_with_unit_normalization() {
        for i in 0..4 {
            for j in (i + 1)..4 {
                let c = skew(i, j);
                assert_eq!(hodge_dual(&hodge_dual(&c)), c);
            }
        }
        // dual of E_12 - E_21 is E_34 - E_43
        assert_eq!(hodge_dual(&skew(0, 1)), skew(2, 3));
    }

    #[test]
    fn dimensions_and_parities() {
        let gens = generators();
        assert_eq!(gens.len(), 40);
        for g in &gens {
            if let E44Element::Matrix(m) = &g.value {
                assert_eq!(m.parity(), Some(g.parity), "{}", g.label);
            }
        }
    }

    #[test]
    fn closure_and_natural_action() {
        let alg = build().unwrap().algebra;
        let ix = |l: &str| alg.index_of(l).unwrap();
        // [E_12 - E_2'1', v_2] = v_1
        assert_eq!(
            alg.bracket_basis(ix("E_12-E_2'1'"), ix("v_2")),
            AlgebraElement::basis(ix("v_1"))
        );
        // [E_21 - E_1'2', v_2'] = -v_1'
        assert_eq!(
            alg.bracket_basis(ix("E_21-E_1'2'"), ix("v_2'")),
            AlgebraElement::term(ix("v_1'"), int(-1))
        );
        // I is central in g_0
        for j in alg.component(0) {
            assert!(alg.bracket_basis(ix("I"), j).is_zero());
        }
    }

    #[test]
    fn inhomogeneous_supercommutator_is_rejected() {
        let mixed = SuperMatrix8::unit(0, 0).plus(&SuperMatrix8::unit(0, 4));
        assert!(mixed.supercommutator(&SuperMatrix8::identity()).is_err());
    }
}
