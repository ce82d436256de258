//! E(1,6): contact polynomials in `x, ξ_1..ξ_6`. An element of polynomial
//! degree `k` (with `deg x = 2`, `deg ξ_i = 1`) sits in Z-degree `k − 2`.

use super::extract::{extract, Extraction, Generator};
use crate::error::Result;
use crate::parity::Parity;
use crate::rational::Rational;
use crate::superpoly::{contact_bracket, ContactElement, SuperMonomial, SuperPoly};

pub const NAME: &str = "E(1,6)";

pub fn coordinates(f: &ContactElement) -> Vec<(SuperMonomial, Rational)> {
    f.value().terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub fn realize_bracket(f: &ContactElement, g: &ContactElement) -> Result<ContactElement> {
    Ok(contact_bracket(f, g))
}

/// `⟨x, ξ_iξ_j⟩`, `⟨ξ_i⟩`, `⟨1⟩`.
pub fn generators(truncation: u32) -> Result<Vec<Generator<ContactElement>>> {
    let mut gens = Vec::new();
    let el = |p: SuperPoly| ContactElement::new(p, truncation);
    gens.push(Generator::new("x", Parity::Even, 0, el(SuperPoly::x(1))?));
    for i in 1..=6 {
        for j in (i + 1)..=6 {
            let p = &SuperPoly::xi(i) * &SuperPoly::xi(j);
            gens.push(Generator::new(format!("xi_{i}xi_{j}"), Parity::Even, 0, el(p)?));
        }
    }
    for i in 1..=6 {
        gens.push(Generator::new(
            format!("xi_{i}"),
            Parity::Odd,
            -1,
            el(SuperPoly::xi(i))?,
        ));
    }
    gens.push(Generator::new("1", Parity::Even, -2, el(SuperPoly::one())?));
    Ok(gens)
}

pub fn build(truncation: u32) -> Result<Extraction> {
    extract(NAME, &generators(truncation)?, coordinates, realize_bracket)
}
