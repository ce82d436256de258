use proptest::prelude::*;

use homlie::algebra::checks;
use homlie::format;
use homlie::parity::Parity;
use homlie::rational::{frac, int};
use homlie::superpoly::contact_bracket_poly;
use homlie::superpoly::{SuperMonomial, SuperPoly, Var};
use homlie::{AlgebraElement, BasisElement, GradedSuperalgebra};

/// Homogeneous polynomial of parity `p` in `x_1` (even) and `ξ_1..ξ_n`.
fn homogeneous(p: Parity, n_odd: usize) -> impl Strategy<Value = SuperPoly> {
    let term = (0u32..3, prop::collection::btree_set(1..=n_odd, 0..=n_odd), -3i64..=3);
    prop::collection::vec(term, 1..5).prop_map(move |terms| {
        let mut f = SuperPoly::zero();
        for (e, odd, c) in terms {
            let odd: Vec<usize> = odd.into_iter().collect();
            if Parity::from_count(odd.len()) != p {
                continue;
            }
            let (s, m) = SuperMonomial::new([(1, e)], &odd).unwrap();
            f = &f + &SuperPoly::term(int(c * s as i64), m);
        }
        f
    })
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn with_parity(n_odd: usize) -> impl Strategy<Value = (Parity, SuperPoly)> {
    parity().prop_flat_map(move |p| homogeneous(p, n_odd).prop_map(move |f| (p, f)))
}

fn sign(s: i32) -> homlie::Rational {
    int(s as i64)
}

proptest! {
    #[test]
    fn supercommutativity((pf, f) in with_parity(4), (pg, g) in with_parity(4)) {
        prop_assert_eq!(&f * &g, (&g * &f).scale(&sign(pf.koszul(pg))));
    }

    #[test]
    fn associativity((_, f) in with_parity(4), (_, g) in with_parity(4), (_, h) in with_parity(4)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn leibniz((pf, f) in with_parity(4), (_, g) in with_parity(4), i in 1usize..=4) {
        let x = Var::Even(1);
        prop_assert_eq!((&f * &g).partial(x), &(&f.partial(x) * &g) + &(&f * &g.partial(x)));
        let v = Var::Odd(i);
        let rhs = &(&f.partial(v) * &g) + &(&f * &g.partial(v)).scale(&sign(pf.koszul(Parity::Odd)));
        prop_assert_eq!((&f * &g).partial(v), rhs);
    }

    #[test]
    fn contact_bracket_is_a_lie_superbracket(
        (pf, f) in with_parity(6),
        (pg, g) in with_parity(6),
        (ph, h) in with_parity(6),
    ) {
        let br = |a: &SuperPoly, b: &SuperPoly| contact_bracket_poly(a, b).unwrap();
        prop_assert_eq!(br(&f, &g), br(&g, &f).scale(&sign(-pf.koszul(pg))));
        // (−1)^{|f||h|}[f,[g,h]] + cyclic = 0
        let sum = &(&br(&f, &br(&g, &h)).scale(&sign(pf.koszul(ph)))
            + &br(&g, &br(&h, &f)).scale(&sign(pg.koszul(pf))))
            + &br(&h, &br(&f, &g)).scale(&sign(ph.koszul(pg)));
        prop_assert!(sum.is_zero(), "{}", sum);
    }
}

/// Random graded algebra data respecting degree and parity additivity; the
/// Jacobi identity is not required for serialization.
fn random_algebra() -> impl Strategy<Value = GradedSuperalgebra> {
    let basis = prop::collection::vec((parity(), -2i32..=0), 1..6);
    basis
        .prop_flat_map(|spec| {
            let n = spec.len();
            let coeffs = prop::collection::vec((-4i64..=4, 1i64..=3), n * n * n);
            (Just(spec), coeffs)
        })
        .prop_map(|(spec, coeffs)| {
            let n = spec.len();
            let basis: Vec<BasisElement> = spec
                .iter()
                .enumerate()
                .map(|(i, &(parity, degree))| BasisElement {
                    index: i,
                    label: format!("e{i}"),
                    parity,
                    degree,
                })
                .collect();
            let mut alg = GradedSuperalgebra::new("random", basis.clone()).unwrap();
            for i in 0..n {
                for j in i..n {
                    if i == j && basis[i].parity == Parity::Even {
                        continue;
                    }
                    let mut v = AlgebraElement::zero();
                    for k in 0..n {
                        let ok = basis[k].degree == basis[i].degree + basis[j].degree
                            && basis[k].parity == basis[i].parity + basis[j].parity;
                        if ok {
                            let (a, b) = coeffs[(i * n + j) * n + k];
                            v.add_term(k, frac(a, b));
                        }
                    }
                    alg.set_bracket(i, j, v).unwrap();
                }
            }
            alg
        })
}

proptest! {
    #[test]
    fn serialization_round_trip(alg in random_algebra()) {
        prop_assert!(checks::check_grading_parity(&alg).passed);
        let s = format::algebra_to_json(&alg).unwrap();
        let back = format::algebra_from_json(&s).unwrap();
        prop_assert_eq!(&back, &alg);
        prop_assert_eq!(format::algebra_to_json(&back).unwrap(), s);
    }
}

#[test]
fn shipped_algebras_round_trip() {
    for id in homlie::AlgebraId::ALL {
        let a = homlie::build(id).unwrap();
        let s = format::algebra_to_json(&a).unwrap();
        assert_eq!(format::algebra_from_json(&s).unwrap(), a, "{id}");
    }
}
