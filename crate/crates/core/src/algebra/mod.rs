//! Finite-dimensional Z₂ × Z-graded superalgebras given by sparse structure
//! constants.
//!
//! Only pairs `(i, j)` with `i ≤ j` are stored; `[e_j, e_i]` is recovered as
//! `−(−1)^{|i||j|} [e_i, e_j]`, so super-antisymmetry holds by construction
//! apart from the diagonal, where an even square must vanish.

pub mod checks;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Row;
use crate::parity::Parity;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub index: usize,
    pub label: String,
    pub parity: Parity,
    pub degree: i32,
}

/// Sparse linear combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: BTreeMap<usize, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(i) {
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

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.coeffs {
            self.add_term(i, v * c);
        }
    }

    pub fn plus(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn minus(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn to_row(&self) -> Row {
        self.coeffs.iter().map(|(&i, c)| (i, c.clone())).collect()
    }

    pub fn from_row(row: &[(usize, Rational)]) -> Self {
        Self::from_terms(row.iter().cloned())
    }

    /// Renders with basis labels, e.g. `v_1 - 2*d_12`.
    pub fn display_with<'a>(&'a self, alg: &'a GradedSuperalgebra) -> impl fmt::Display + 'a {
        DisplayElement { el: self, alg }
    }
}

struct DisplayElement<'a> {
    el: &'a AlgebraElement,
    alg: &'a GradedSuperalgebra,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.el.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.el.terms().enumerate() {
            let label = self.alg.basis.get(i).map(|b| b.label.as_str()).unwrap_or("?");
            let s = rational::to_string(c);
            match (n, s.as_str()) {
                (0, "1") => write!(f, "{label}")?,
                (0, "-1") => write!(f, "-{label}")?,
                (0, _) => write!(f, "{s}*{label}")?,
                (_, "1") => write!(f, " + {label}")?,
                (_, "-1") => write!(f, " - {label}")?,
                _ if c < &Rational::zero() => write!(f, " - {}*{label}", rational::to_string(&-c))?,
                _ => write!(f, " + {s}*{label}")?,
            }
        }
        Ok(())
    }
}

/// Structure constants `[e_i, e_j] = Σ_k c^k_{ij} e_k` stored for `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSuperalgebra {
    name: String,
    basis: Vec<BasisElement>,
    brackets: BTreeMap<(usize, usize), AlgebraElement>,
    labels: HashMap<String, usize>,
}

impl GradedSuperalgebra {
    /// Validates basis indices and label uniqueness; brackets are added
    /// afterwards with [`set_bracket`](Self::set_bracket).
    pub fn new(name: impl Into<String>, basis: Vec<BasisElement>) -> Result<Self> {
        let name = name.into();
        let mut labels = HashMap::new();
        for (pos, b) in basis.iter().enumerate() {
            if b.index != pos {
                return Err(Error::Construction {
                    algebra: name,
                    reason: format!("basis element {:?} has index {} at position {pos}", b.label, b.index),
                });
            }
            if labels.insert(b.label.clone(), pos).is_some() {
                return Err(Error::Construction {
                    algebra: name,
                    reason: format!("duplicate basis label {:?}", b.label),
                });
            }
        }
        Ok(Self {
            name,
            basis,
            brackets: BTreeMap::new(),
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    pub fn min_degree(&self) -> i32 {
        self.basis.iter().map(|b| b.degree).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    /// Distinct degrees, descending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d.dedup();
        d
    }

    /// Basis indices of degree `d`, ascending.
    pub fn component(&self, d: i32) -> Vec<usize> {
        self.basis.iter().filter(|b| b.degree == d).map(|b| b.index).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }

    /// Stores `[e_i, e_j]` for `i ≤ j`. A zero value removes the entry.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: AlgebraElement) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i > j {
            return Err(Error::Domain(format!(
                "bracket entries are stored for i <= j only, got ({i}, {j})"
            )));
        }
        for k in value.support() {
            self.check_index(k)?;
        }
        if value.is_zero() {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), value);
        }
        Ok(())
    }

    /// Stored entries `((i, j), [e_i, e_j])`, `i ≤ j`, ascending.
    pub fn stored_brackets(&self) -> impl Iterator<Item = ((usize, usize), &AlgebraElement)> {
        self.brackets.iter().map(|(&ij, v)| (ij, v))
    }

    /// Sign `s` and stored entry with `[e_i, e_j] = s · stored`.
    pub fn bracket_basis_ref(&self, i: usize, j: usize) -> Option<(i32, &AlgebraElement)> {
        if i <= j {
            self.brackets.get(&(i, j)).map(|v| (1, v))
        } else {
            let s = -self.parity(i).koszul(self.parity(j));
            self.brackets.get(&(j, i)).map(|v| (s, v))
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> AlgebraElement {
        match self.bracket_basis_ref(i, j) {
            None => AlgebraElement::zero(),
            Some((1, v)) => v.clone(),
            Some((_, v)) => v.scale(&-Rational::one()),
        }
    }

    /// Accumulates `c·[e_i, e_j]` into `acc`.
    pub fn add_bracket_basis(&self, acc: &mut AlgebraElement, c: &Rational, i: usize, j: usize) {
        if let Some((s, v)) = self.bracket_basis_ref(i, j) {
            if s > 0 {
                acc.add_scaled(v, c);
            } else {
                acc.add_scaled(v, &-c.clone());
            }
        }
    }

    /// Bilinear bracket of arbitrary elements.
    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        for i in a.support().chain(b.support()) {
            self.check_index(i)?;
        }
        Ok(self.bracket_unchecked(a, b))
    }

    pub(crate) fn bracket_unchecked(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, ci) in a.terms() {
            for (j, cj) in b.terms() {
                self.add_bracket_basis(&mut out, &(ci * cj), i, j);
            }
        }
        out
    }

    /// Z₂-degree of a homogeneous element, `None` for mixed or zero.
    pub fn element_parity(&self, a: &AlgebraElement) -> Option<Parity> {
        let mut it = a.support().map(|i| self.parity(i));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Copy restricted to the `keep` basis elements (reindexed in order),
    /// dropping brackets whose values leave the kept span.
    pub fn restrict(&self, keep: &[usize], name: impl Into<String>) -> Result<GradedSuperalgebra> {
        let map: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &i)| (i, n)).collect();
        let basis = keep
            .iter()
            .enumerate()
            .map(|(n, &i)| BasisElement {
                index: n,
                ..self.basis[i].clone()
            })
            .collect();
        let mut out = GradedSuperalgebra::new(name, basis)?;
        for (&(i, j), v) in &self.brackets {
            let (Some(&a), Some(&b)) = (map.get(&i), map.get(&j)) else {
                continue;
            };
            let mapped: Option<Vec<(usize, Rational)>> =
                v.terms().map(|(k, c)| map.get(&k).map(|&m| (m, c.clone()))).collect();
            let Some(mapped) = mapped else {
                return Err(Error::Domain(format!(
                    "restriction of {} is not closed at [{}, {}]",
                    self.name,
                    self.label(i),
                    self.label(j)
                )));
            };
            out.set_bracket(a, b, AlgebraElement::from_terms(mapped))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
pub(crate) mod test_algebras {
    use super::*;
    use crate::rational::int;

    pub fn basis(spec: &[(&str, Parity, i32)]) -> Vec<BasisElement> {
        spec.iter()
            .enumerate()
            .map(|(index, &(label, parity, degree))| BasisElement {
                index,
                label: label.to_string(),
                parity,
                degree,
            })
            .collect()
    }

    /// `e1, e2, e3` even of degree 0 with `[e1,e2]=e3`, `[e1,e3]=e1`.
    pub fn broken_jacobi() -> GradedSuperalgebra {
        let mut a = GradedSuperalgebra::new(
            "broken",
            basis(&[
                ("e1", Parity::Even, 0),
                ("e2", Parity::Even, 0),
                ("e3", Parity::Even, 0),
            ]),
        )
        .unwrap();
        a.set_bracket(0, 1, AlgebraElement::basis(2)).unwrap();
        a.set_bracket(0, 2, AlgebraElement::basis(0)).unwrap();
        a
    }

    pub fn abelian(n: usize) -> GradedSuperalgebra {
        let spec: Vec<(String, Parity, i32)> = (0..n).map(|i| (format!("a{i}"), Parity::Even, 0)).collect();
        let spec: Vec<(&str, Parity, i32)> = spec.iter().map(|(l, p, d)| (l.as_str(), *p, *d)).collect();
        GradedSuperalgebra::new("abelian", basis(&spec)).unwrap()
    }

    /// sl(2) with a grading: f (−1), h (0), e would be +1 and is omitted, so
    /// this is the nonpositive part `⟨h, f⟩` with `[h, f] = −2f`.
    pub fn borel() -> GradedSuperalgebra {
        let mut a =
            GradedSuperalgebra::new("borel", basis(&[("h", Parity::Even, 0), ("f", Parity::Even, -1)])).unwrap();
        a.set_bracket(0, 1, AlgebraElement::term(1, int(-2))).unwrap();
        a
    }
}

#[cfg(test)]
mod tests {
    use super::test_algebras::*;
    use super::*;
    use crate::rational::int;

    #[test]
    fn bracket_with_zero_is_zero() {
        let a = borel();
        let r = a.bracket(&AlgebraElement::basis(0), &AlgebraElement::zero()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn unstored_square_is_zero() {
        let a = borel();
        assert!(a.bracket_basis(0, 0).is_zero());
    }

    #[test]
    fn reversed_pair_uses_sign_rule() {
        let mut a = GradedSuperalgebra::new(
            "odd",
            basis(&[("p", Parity::Odd, -1), ("q", Parity::Odd, -1), ("z", Parity::Even, -2)]),
        )
        .unwrap();
        a.set_bracket(0, 1, AlgebraElement::basis(2)).unwrap();
        // odd-odd brackets are symmetric
        assert_eq!(a.bracket_basis(1, 0), AlgebraElement::basis(2));
        let b = borel();
        assert_eq!(b.bracket_basis(1, 0), AlgebraElement::term(1, int(2)));
    }

    #[test]
    fn out_of_range_is_domain_error() {
        let a = borel();
        let err = a.bracket(&AlgebraElement::basis(5), &AlgebraElement::basis(0));
        assert!(matches!(err, Err(Error::IndexOutOfRange { index: 5, dim: 2 })));
        assert!(a.clone().set_bracket(1, 0, AlgebraElement::zero()).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = GradedSuperalgebra::new("dup", basis(&[("a", Parity::Even, 0), ("a", Parity::Even, 0)]));
        assert!(err.is_err());
    }

    #[test]
    fn display_uses_labels() {
        let a = borel();
        let e = AlgebraElement::from_terms([(0, int(1)), (1, int(-3))]);
        assert_eq!(e.display_with(&a).to_string(), "h - 3*f");
    }
}
