//! E(5,10) and its subalgebras E(3,6), E(3,8): divergence-free vector
//! fields (even) and closed 2-forms (odd) on `F^5`.

use super::extract::{embed, extract, Extraction, Generator};
use crate::algebra::{AlgebraElement, BasisElement, GradedSuperalgebra};
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational::{int, Rational};
use crate::superpoly::{
    divergence, exterior_d_2form, form_bracket, lie_derivative_2form, vf_bracket, SuperMonomial, TwoForm, VectorField,
};

pub const NAME_E510: &str = "E(5,10)";
pub const NAME_E36: &str = "E(3,6)";
pub const NAME_E38: &str = "E(3,8)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum E510Element {
    Field(VectorField),
    Form(TwoForm),
}

/// `(kind, i, j, monomial)`; fields use `(0, i, 0, m)` for `m ∂_i`, forms
/// `(1, i, j, m)` for `m d_ij`.
pub type Coordinate = (u8, usize, usize, SuperMonomial);

impl E510Element {
    pub fn coordinates(&self) -> Vec<(Coordinate, Rational)> {
        match self {
            E510Element::Field(d) => d
                .components()
                .flat_map(|(i, f)| f.terms().map(move |(m, c)| ((0, i, 0, m.clone()), c.clone())))
                .collect(),
            E510Element::Form(w) => w
                .components()
                .flat_map(|((i, j), f)| f.terms().map(move |(m, c)| ((1, i, j, m.clone()), c.clone())))
                .collect(),
        }
    }

    fn max_coefficient_degree(&self) -> u32 {
        match self {
            E510Element::Field(d) => d.components().map(|(_, f)| f.degree()).max().unwrap_or(0),
            E510Element::Form(w) => w.components().map(|(_, f)| f.degree()).max().unwrap_or(0),
        }
    }
}

/// Commutator on fields, `[D, ω] = L_D ω`, `[ω, D] = −L_D ω`, and
/// `[f d_ij, g d_kl] = ε_{tijkl} f g ∂_t` on forms.
pub fn realize_bracket(a: &E510Element, b: &E510Element) -> Result<E510Element> {
    use E510Element::*;
    Ok(match (a, b) {
        (Field(x), Field(y)) => Field(vf_bracket(x, y)),
        (Field(d), Form(w)) => Form(lie_derivative_2form(d, w)),
        (Form(w), Field(d)) => Form(lie_derivative_2form(d, w).scale(&int(-1))),
        (Form(x), Form(y)) => Field(form_bracket(x, y)),
    })
}

fn field(label: String, d: VectorField) -> Generator<E510Element> {
    Generator::new(label, Parity::Even, 0, E510Element::Field(d))
}

fn form(i: usize, j: usize) -> Generator<E510Element> {
    Generator::new(
        format!("d_{i}{j}"),
        Parity::Odd,
        -1,
        E510Element::Form(TwoForm::basis(i, j)),
    )
}

fn partial(i: usize) -> Generator<E510Element> {
    Generator::new(
        format!("D_{i}"),
        Parity::Even,
        -2,
        E510Element::Field(VectorField::partial(i)),
    )
}

fn diag(coeffs: &[(usize, i64)]) -> VectorField {
    coeffs.iter().fold(VectorField::zero(), |acc, &(k, c)| {
        acc.plus(&VectorField::linear(k, k).scale(&int(c)))
    })
}

/// sl(5), `⟨d_ij⟩`, `⟨∂_i⟩`.
pub fn generators_e510() -> Vec<Generator<E510Element>> {
    let mut gens = Vec::new();
    for i in 1..=5 {
        for j in 1..=5 {
            if i != j {
                gens.push(field(format!("x_{i}D_{j}"), VectorField::linear(i, j)));
            }
        }
    }
    for k in 1..=4 {
        gens.push(field(
            format!("x_{k}D_{k}-x_{}D_{}", k + 1, k + 1),
            diag(&[(k, 1), (k + 1, -1)]),
        ));
    }
    for i in 1..=5 {
        for j in (i + 1)..=5 {
            gens.push(form(i, j));
        }
    }
    gens.extend((1..=5).map(partial));
    gens
}

/// gl(3) ⊕ sl(2) with the Cartan elements `h_1..h_4`, `⟨d_ij⟩_{i≤3<j}`,
/// `⟨∂_1, ∂_2, ∂_3⟩`.
pub fn generators_e36() -> Vec<Generator<E510Element>> {
    let mut gens = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                gens.push(field(format!("x_{i}D_{j}"), VectorField::linear(i, j)));
            }
        }
    }
    gens.push(field("x_4D_5".into(), VectorField::linear(4, 5)));
    gens.push(field("x_5D_4".into(), VectorField::linear(5, 4)));
    let hs: [&[(usize, i64)]; 4] = [
        &[(1, 1), (2, -1)],
        &[(2, 1), (3, -1)],
        &[(4, 1), (5, -1)],
        &[(2, -1), (3, -1), (5, 2)],
    ];
    for (m, h) in hs.iter().enumerate() {
        gens.push(field(format!("h_{}", m + 1), diag(h)));
    }
    for i in 1..=3 {
        for j in 4..=5 {
            gens.push(form(i, j));
        }
    }
    gens.extend((1..=3).map(partial));
    gens
}

/// Divergence and closedness failures of a generator list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RealizationAudit {
    pub fields_checked: usize,
    pub forms_checked: usize,
    pub divergence_failures: Vec<String>,
    pub closedness_failures: Vec<String>,
}

impl RealizationAudit {
    pub fn passed(&self) -> bool {
        self.divergence_failures.is_empty() && self.closedness_failures.is_empty()
    }
}

pub fn audit(gens: &[Generator<E510Element>]) -> RealizationAudit {
    let mut out = RealizationAudit::default();
    for g in gens {
        match &g.value {
            E510Element::Field(d) => {
                out.fields_checked += 1;
                if !divergence(d).is_zero() {
                    out.divergence_failures.push(g.label.clone());
                }
            }
            E510Element::Form(w) => {
                out.forms_checked += 1;
                if !exterior_d_2form(w).is_zero() {
                    out.closedness_failures.push(g.label.clone());
                }
            }
        }
    }
    out
}

/// Build-time gate: divergence zero, `dE = 0`, coefficients within the
/// truncation bound.
pub fn validate(name: &str, gens: &[Generator<E510Element>], truncation: u32) -> Result<()> {
    let a = audit(gens);
    let fail = |reason: String| Error::Construction {
        algebra: name.to_string(),
        reason,
    };
    if let Some(l) = a.divergence_failures.first() {
        return Err(fail(format!("vector field {l} has nonzero divergence")));
    }
    if let Some(l) = a.closedness_failures.first() {
        return Err(fail(format!("2-form {l} is not closed")));
    }
    if let Some(g) = gens.iter().find(|g| g.value.max_coefficient_degree() > truncation) {
        return Err(fail(format!("{} exceeds truncation degree {truncation}", g.label)));
    }
    Ok(())
}

fn build_from(name: &str, gens: &[Generator<E510Element>], truncation: u32) -> Result<Extraction> {
    validate(name, gens, truncation)?;
    extract(name, gens, E510Element::coordinates, realize_bracket)
}

pub fn build_e510(truncation: u32) -> Result<Extraction> {
    build_from(NAME_E510, &generators_e510(), truncation)
}

pub fn build_e36(truncation: u32) -> Result<Extraction> {
    build_from(NAME_E36, &generators_e36(), truncation)
}

/// Degrees 0, −1, −2 copied from E(3,6); `g_{-3} = ⟨dx_4, dx_5⟩` is odd
/// and enters no bracket.
pub fn build_e38(truncation: u32) -> Result<Extraction> {
    let base = build_e36(truncation)?;
    let mut basis: Vec<BasisElement> = base.algebra.basis().to_vec();
    for l in ["dx_4", "dx_5"] {
        basis.push(BasisElement {
            index: basis.len(),
            label: l.into(),
            parity: Parity::Odd,
            degree: -3,
        });
    }
    let mut algebra = GradedSuperalgebra::new(NAME_E38, basis)?;
    for ((i, j), v) in base.algebra.stored_brackets() {
        algebra.set_bracket(i, j, v.clone())?;
    }
    Ok(Extraction {
        algebra,
        table: base.table,
    })
}

/// Result of bracketing the images of a subalgebra inside an ambient one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub pairs: usize,
    pub mismatches: Vec<(String, String)>,
}

/// Checks `ι[a, b]_sub = [ιa, ιb]_sup` for every pair of E(3,6) basis
/// elements, with `ι` obtained from the realizations.
pub fn e36_embedding(truncation: u32) -> Result<EmbeddingReport> {
    let sub = build_e36(truncation)?.algebra;
    let sup = build_e510(truncation)?.algebra;
    let images = embed(&generators_e36(), &generators_e510(), E510Element::coordinates)?;
    let image = |e: &AlgebraElement| {
        let mut out = AlgebraElement::zero();
        for (k, c) in e.terms() {
            out.add_scaled(&images[k], c);
        }
        out
    };
    let mut rep = EmbeddingReport {
        pairs: 0,
        mismatches: Vec::new(),
    };
    for i in 0..sub.dim() {
        for j in i..sub.dim() {
            rep.pairs += 1;
            let lhs = image(&sub.bracket_basis(i, j));
            let rhs = sup.bracket(&images[i], &images[j])?;
            if lhs != rhs {
                rep.mismatches
                    .push((sub.label(i).to_string(), sub.label(j).to_string()));
            }
        }
    }
    Ok(rep)
}
