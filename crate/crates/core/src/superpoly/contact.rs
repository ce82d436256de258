//! The contact bracket on polynomials in one even variable `x` (stored as
//! even variable 1) and odd variables `ξ_1..ξ_6`.

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational::int;

use super::{SuperPoly, Var};

/// Degree bound covering every element of the nonpositive part.
pub const DEFAULT_TRUNCATION: u32 = 2;

const X: Var = Var::Even(1);

/// A Z₂-homogeneous contact polynomial of bounded degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactElement {
    value: SuperPoly,
    parity: Parity,
}

impl ContactElement {
    pub fn new(value: SuperPoly, truncation: u32) -> Result<Self> {
        let parity = value
            .parity()
            .ok_or_else(|| Error::Domain(format!("contact element {value} is not homogeneous")))?;
        if value.degree() > truncation {
            return Err(Error::Domain(format!(
                "contact element {value} exceeds truncation degree {truncation}"
            )));
        }
        if value.even_support().iter().any(|&i| i != 1) {
            return Err(Error::Domain(format!(
                "contact element {value} uses an even variable other than x"
            )));
        }
        Ok(Self { value, parity })
    }

    pub fn value(&self) -> &SuperPoly {
        &self.value
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

/// `Σ ξ_i ∂_i(f)`.
fn euler(f: &SuperPoly) -> SuperPoly {
    f.odd_support().into_iter().fold(SuperPoly::zero(), |acc, i| {
        &acc + &(&SuperPoly::xi(i) * &f.partial(Var::Odd(i)))
    })
}

/// `[f,g] = (2f − Σξ_i∂_i f) ∂_x g − (−1)^{|f||g|} (2g − Σξ_i∂_i g) ∂_x f
///          + (−1)^{|f|} Σ ∂_i f ∂_i g`.
pub fn contact_bracket_poly(f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
    let pf = f
        .parity()
        .ok_or_else(|| Error::Domain(format!("{f} is not homogeneous")))?;
    let pg = g
        .parity()
        .ok_or_else(|| Error::Domain(format!("{g} is not homogeneous")))?;
    let two = int(2);
    let first = &(&f.scale(&two) - &euler(f)) * &g.partial(X);
    let second = &(&g.scale(&two) - &euler(g)) * &f.partial(X);
    let mut odd_indices = f.odd_support();
    odd_indices.extend(g.odd_support());
    odd_indices.sort_unstable();
    odd_indices.dedup();
    let third = odd_indices.into_iter().fold(SuperPoly::zero(), |acc, i| {
        &acc + &(&f.partial(Var::Odd(i)) * &g.partial(Var::Odd(i)))
    });
    let mut out = first;
    out = &out - &second.scale(&int(pf.koszul(pg) as i64));
    out = &out + &third.scale(&int(if pf.is_odd() { -1 } else { 1 }));
    Ok(out)
}

pub fn contact_bracket(f: &ContactElement, g: &ContactElement) -> ContactElement {
    let value = contact_bracket_poly(&f.value, &g.value).expect("contact elements are homogeneous by construction");
    let parity = f.parity + g.parity;
    ContactElement { value, parity }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: SuperPoly) -> ContactElement {
        ContactElement::new(p, DEFAULT_TRUNCATION).unwrap()
    }

    fn xi(i: usize) -> SuperPoly {
        SuperPoly::xi(i)
    }

    #[test]
    fn contact_examples() {
        let xi23 = &xi(2) * &xi(3);
        assert_eq!(contact_bracket(&el(xi23), &el(xi(2))).value(), &xi(3));
        assert_eq!(
            contact_bracket(&el(xi(4)), &el(xi(4))).value(),
            &SuperPoly::constant(int(-1))
        );
        assert_eq!(contact_bracket(&el(SuperPoly::x(1)), &el(xi(5))).value(), &(-&xi(5)));
        assert_eq!(
            contact_bracket(&el(SuperPoly::one()), &el(SuperPoly::x(1))).value(),
            &SuperPoly::constant(int(2))
        );
    }

    #[test]
    fn rejects_inhomogeneous_and_high_degree() {
        assert!(ContactElement::new(&xi(1) + &SuperPoly::one(), 2).is_err());
        let cubic = &(&xi(1) * &xi(2)) * &xi(3);
        assert!(ContactElement::new(cubic.clone(), 2).is_err());
        assert!(ContactElement::new(cubic, 3).is_ok());
        assert!(contact_bracket_poly(&(&xi(1) + &SuperPoly::one()), &xi(2)).is_err());
    }
}
