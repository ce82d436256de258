//! Polynomial vector fields and differential forms on `F^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{permutation_sign, SuperPoly, Var};
use crate::rational::Rational;

fn add_into<K: Ord>(map: &mut BTreeMap<K, SuperPoly>, key: K, p: SuperPoly) {
    if p.is_zero() {
        return;
    }
    let entry = map.entry(key).or_default();
    *entry = &*entry + &p;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, SuperPoly>) {
    map.retain(|_, p| !p.is_zero());
}

/// `Σ f_i ∂_i` over the even variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorField {
    components: BTreeMap<usize, SuperPoly>,
}

impl VectorField {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `f ∂_i`.
    pub fn term(i: usize, f: SuperPoly) -> Self {
        let mut v = Self::zero();
        v.add_component(i, f);
        v
    }

    /// `∂_i`.
    pub fn partial(i: usize) -> Self {
        Self::term(i, SuperPoly::one())
    }

    /// `x_i ∂_j`.
    pub fn linear(i: usize, j: usize) -> Self {
        Self::term(j, SuperPoly::x(i))
    }

    pub fn add_component(&mut self, i: usize, f: SuperPoly) {
        add_into(&mut self.components, i, f);
        prune(&mut self.components);
    }

    pub fn component(&self, i: usize) -> SuperPoly {
        self.components.get(&i).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &SuperPoly)> {
        self.components.iter().map(|(&i, p)| (i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn plus(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        for (&i, p) in &other.components {
            add_into(&mut out.components, i, p.clone());
        }
        prune(&mut out.components);
        out
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        let mut out = VectorField::zero();
        for (&i, p) in &self.components {
            out.add_component(i, p.scale(c));
        }
        out
    }

    /// `D(f) = Σ f_i ∂_i(f)`.
    pub fn apply(&self, f: &SuperPoly) -> SuperPoly {
        self.components.iter().fold(SuperPoly::zero(), |acc, (&i, fi)| {
            &acc + &(fi * &f.partial(Var::Even(i)))
        })
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, p)) in self.components.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})*D{i}")?;
        }
        Ok(())
    }
}

/// `Σ_i ∂_i(f_i)`.
pub fn divergence(d: &VectorField) -> SuperPoly {
    d.components
        .iter()
        .fold(SuperPoly::zero(), |acc, (&i, fi)| &acc + &fi.partial(Var::Even(i)))
}

/// Commutator of two even vector fields viewed as derivations.
pub fn vf_bracket(a: &VectorField, b: &VectorField) -> VectorField {
    let mut out = VectorField::zero();
    let keys: Vec<usize> = a.components.keys().chain(b.components.keys()).copied().collect();
    for k in keys {
        if out.components.contains_key(&k) {
            continue;
        }
        let c = &a.apply(&b.component(k)) - &b.apply(&a.component(k));
        out.add_component(k, c);
    }
    out
}

/// Sorts an index tuple, returning the reordering sign (0 on repeats).
fn sort_indices<const N: usize>(idx: [usize; N]) -> (i32, [usize; N]) {
    let s = permutation_sign(&idx);
    let mut sorted = idx;
    sorted.sort_unstable();
    (s, sorted)
}

/// `Σ f_i dx_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneForm {
    components: BTreeMap<usize, SuperPoly>,
}

impl OneForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(i: usize, f: SuperPoly) -> Self {
        let mut w = Self::zero();
        w.add_term(i, f);
        w
    }

    pub fn add_term(&mut self, i: usize, f: SuperPoly) {
        add_into(&mut self.components, i, f);
        prune(&mut self.components);
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &SuperPoly)> {
        self.components.iter().map(|(&i, p)| (i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// `df = Σ_m ∂_m(f) dx_m` over the even variables present in `f`.
pub fn function_differential(f: &SuperPoly) -> OneForm {
    let mut out = OneForm::zero();
    for m in f.even_support() {
        out.add_term(m, f.partial(Var::Even(m)));
    }
    out
}

/// `Σ f_ij d_ij` with `d_ij = dx_i ∧ dx_j`, stored on `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoForm {
    components: BTreeMap<(usize, usize), SuperPoly>,
}

impl TwoForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `f dx_i ∧ dx_j`, renormalized to `i < j`.
    pub fn term(i: usize, j: usize, f: SuperPoly) -> Self {
        let mut w = Self::zero();
        w.add_term(i, j, f);
        w
    }

    /// `d_ij`.
    pub fn basis(i: usize, j: usize) -> Self {
        Self::term(i, j, SuperPoly::one())
    }

    pub fn add_term(&mut self, i: usize, j: usize, f: SuperPoly) {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => {}
            std::cmp::Ordering::Less => add_into(&mut self.components, (i, j), f),
            std::cmp::Ordering::Greater => add_into(&mut self.components, (j, i), -&f),
        }
        prune(&mut self.components);
    }

    pub fn component(&self, i: usize, j: usize) -> SuperPoly {
        if i < j {
            self.components.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            -&self.component(j, i)
        } else {
            SuperPoly::zero()
        }
    }

    pub fn components(&self) -> impl Iterator<Item = ((usize, usize), &SuperPoly)> {
        self.components.iter().map(|(&ij, p)| (ij, p))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn plus(&self, other: &TwoForm) -> TwoForm {
        let mut out = self.clone();
        for (&(i, j), p) in &other.components {
            add_into(&mut out.components, (i, j), p.clone());
        }
        prune(&mut out.components);
        out
    }

    pub fn scale(&self, c: &Rational) -> TwoForm {
        if c.is_zero() {
            return TwoForm::zero();
        }
        TwoForm {
            components: self.components.iter().map(|(&ij, p)| (ij, p.scale(c))).collect(),
        }
    }

    /// `α ∧ β` for one-forms.
    pub fn wedge(a: &OneForm, b: &OneForm) -> TwoForm {
        let mut out = TwoForm::zero();
        for (i, f) in a.components() {
            for (j, g) in b.components() {
                out.add_term(i, j, f * g);
            }
        }
        out
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), p)) in self.components.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})*d{i}{j}")?;
        }
        Ok(())
    }
}

/// Three-forms, stored on strictly increasing index triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThreeForm {
    components: BTreeMap<(usize, usize, usize), SuperPoly>,
}

impl ThreeForm {
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, f: SuperPoly) {
        let (s, [a, b, c]) = sort_indices([i, j, k]);
        match s {
            0 => {}
            1 => add_into(&mut self.components, (a, b, c), f),
            _ => add_into(&mut self.components, (a, b, c), -&f),
        }
        prune(&mut self.components);
    }

    pub fn component(&self, i: usize, j: usize, k: usize) -> SuperPoly {
        let (s, [a, b, c]) = sort_indices([i, j, k]);
        let p = self.components.get(&(a, b, c)).cloned().unwrap_or_default();
        match s {
            0 => SuperPoly::zero(),
            1 => p,
            _ => -&p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// `d(Σ f_i dx_i) = Σ ∂_m(f_i) dx_m ∧ dx_i`.
pub fn exterior_d_1form(w: &OneForm) -> TwoForm {
    let mut out = TwoForm::zero();
    for (i, f) in w.components() {
        for (m, g) in function_differential(f).components() {
            out.add_term(m, i, g.clone());
        }
    }
    out
}

/// `d(f d_ij) = Σ_m ∂_m(f) dx_m ∧ dx_i ∧ dx_j`, collected on ordered triples.
pub fn exterior_d_2form(w: &TwoForm) -> ThreeForm {
    let mut out = ThreeForm::default();
    for ((i, j), f) in w.components() {
        for (m, g) in function_differential(f).components() {
            out.add_term(m, i, j, g.clone());
        }
    }
    out
}

/// Lie derivative `L_D ω`:
/// `L_D(f d_ij) = D(f) d_ij + f (d(D x_i) ∧ dx_j + dx_i ∧ d(D x_j))`.
pub fn lie_derivative_2form(d: &VectorField, w: &TwoForm) -> TwoForm {
    let mut out = TwoForm::zero();
    for ((i, j), f) in w.components() {
        out.add_term(i, j, d.apply(f));
        let dxi = OneForm::term(i, SuperPoly::one());
        let dxj = OneForm::term(j, SuperPoly::one());
        let d_di = function_differential(&d.component(i));
        let d_dj = function_differential(&d.component(j));
        let moved = TwoForm::wedge(&d_di, &dxj).plus(&TwoForm::wedge(&dxi, &d_dj));
        for ((a, b), g) in moved.components() {
            out.add_term(a, b, f * g);
        }
    }
    out
}

/// `[f d_ij, g d_kl] = ε_{tijkl} f g ∂_t`, in five variables.
pub fn form_bracket_term((i, j, f): (usize, usize, &SuperPoly), (k, l, g): (usize, usize, &SuperPoly)) -> VectorField {
    let mut out = VectorField::zero();
    for t in 1..=5 {
        let s = permutation_sign(&[t, i, j, k, l]);
        if s != 0 {
            let fg = f * g;
            out.add_component(t, if s > 0 { fg } else { -&fg });
        }
    }
    out
}

/// Bilinear extension of [`form_bracket_term`].
pub fn form_bracket(a: &TwoForm, b: &TwoForm) -> VectorField {
    let mut out = VectorField::zero();
    for ((i, j), f) in a.components() {
        for ((k, l), g) in b.components() {
            out = out.plus(&form_bracket_term((i, j, f), (k, l, g)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(i: usize) -> SuperPoly {
        SuperPoly::x(i)
    }

    #[test]
    fn divergence_examples() {
        assert!(divergence(&VectorField::linear(1, 2)).is_zero());
        let cancel = VectorField::linear(1, 1).plus(&VectorField::linear(2, 2).scale(&int(-1)));
        assert!(divergence(&cancel).is_zero());
        assert_eq!(divergence(&VectorField::linear(1, 1)), SuperPoly::one());
    }

    #[test]
    fn exterior_derivative_examples() {
        assert!(exterior_d_2form(&TwoForm::basis(1, 2)).is_zero());
        let d = exterior_d_2form(&TwoForm::term(1, 2, x(3)));
        assert_eq!(d.component(1, 2, 3), SuperPoly::one());
        assert_eq!(d.component(3, 1, 2), SuperPoly::one());
        assert!(exterior_d_2form(&TwoForm::term(1, 2, x(1))).is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_sample() {
        let f = &(&x(1) * &x(2)) + &(&x(3) * &x(3));
        let w = OneForm::term(4, f);
        assert!(!exterior_d_1form(&w).is_zero());
        assert!(exterior_d_2form(&exterior_d_1form(&w)).is_zero());
    }

    /// Evaluates `[A, B]` on each coordinate function: `A(B(x_k)) - B(A(x_k))`.
    fn commutator_on_coordinates(a: &VectorField, b: &VectorField, n: usize) -> VectorField {
        let mut out = VectorField::zero();
        for k in 1..=n {
            let xk = x(k);
            out.add_component(k, &a.apply(&b.apply(&xk)) - &b.apply(&a.apply(&xk)));
        }
        out
    }

    #[test]
    fn vf_bracket_matches_composition_oracle() {
        let cases = [
            (
                VectorField::linear(1, 2),
                VectorField::linear(2, 3),
                VectorField::linear(1, 3),
            ),
            (
                VectorField::linear(1, 2),
                VectorField::partial(1),
                VectorField::partial(2).scale(&int(-1)),
            ),
            (
                VectorField::linear(1, 2),
                VectorField::linear(3, 4),
                VectorField::zero(),
            ),
        ];
        for (a, b, expected) in cases {
            assert_eq!(commutator_on_coordinates(&a, &b, 5), expected);
            assert_eq!(vf_bracket(&a, &b), expected);
        }
    }

    #[test]
    fn lie_derivative_examples() {
        let d = VectorField::linear(1, 2);
        assert_eq!(lie_derivative_2form(&d, &TwoForm::basis(2, 3)), TwoForm::basis(1, 3));
        assert!(lie_derivative_2form(&d, &TwoForm::basis(1, 3)).is_zero());
        // x_4∂_5 moves dx_5 to dx_4 and kills dx_4
        let d45 = VectorField::linear(4, 5);
        assert!(lie_derivative_2form(&d45, &TwoForm::basis(1, 4)).is_zero());
        assert_eq!(lie_derivative_2form(&d45, &TwoForm::basis(1, 5)), TwoForm::basis(1, 4));
        let d54 = VectorField::linear(5, 4);
        assert_eq!(lie_derivative_2form(&d54, &TwoForm::basis(1, 4)), TwoForm::basis(1, 5));
    }

    #[test]
    fn form_bracket_examples() {
        let one = SuperPoly::one();
        assert_eq!(
            form_bracket(&TwoForm::basis(1, 2), &TwoForm::basis(3, 4)),
            VectorField::partial(5)
        );
        assert!(form_bracket(&TwoForm::basis(1, 2), &TwoForm::basis(1, 3)).is_zero());
        assert_eq!(
            form_bracket_term((2, 3, &x(1)), (4, 5, &one)),
            VectorField::linear(1, 1)
        );
    }

    #[test]
    fn jacobi_on_linear_fields() {
        let n = 3;
        let mut fields = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                fields.push(VectorField::linear(i, j));
            }
        }
        fields.push(VectorField::partial(1));
        fields.push(VectorField::partial(3));
        for a in &fields {
            for b in &fields {
                for c in &fields {
                    let s = vf_bracket(a, &vf_bracket(b, c))
                        .plus(&vf_bracket(b, &vf_bracket(c, a)))
                        .plus(&vf_bracket(c, &vf_bracket(a, b)));
                    assert!(s.is_zero());
                }
            }
        }
    }
}
