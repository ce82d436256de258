use homlie::builders::e510::{self, audit, generators_e36, generators_e510};
use homlie::builders::{build_with, BuildOptions};
use homlie::superpoly::DEFAULT_TRUNCATION;
use homlie::{build, AlgebraId, Parity};

fn dims(id: AlgebraId) -> Vec<(i32, usize)> {
    let a = build(id).unwrap();
    a.degrees().into_iter().map(|d| (d, a.component(d).len())).collect()
}

#[test]
fn dimensions_by_degree() {
    assert_eq!(dims(AlgebraId::E44), vec![(0, 32), (-1, 8)]);
    assert_eq!(dims(AlgebraId::E510), vec![(0, 24), (-1, 10), (-2, 5)]);
    assert_eq!(dims(AlgebraId::E36), vec![(0, 12), (-1, 6), (-2, 3)]);
    assert_eq!(dims(AlgebraId::E38), vec![(0, 12), (-1, 6), (-2, 3), (-3, 2)]);
    assert_eq!(dims(AlgebraId::E16), vec![(0, 16), (-1, 6), (-2, 1)]);
    for (id, n) in [
        (AlgebraId::E44, 40),
        (AlgebraId::E510, 39),
        (AlgebraId::E36, 21),
        (AlgebraId::E38, 23),
        (AlgebraId::E16, 23),
    ] {
        assert_eq!(build(id).unwrap().dim(), n, "{id}");
    }
}

#[test]
fn labels_follow_the_basis_lists() {
    let a = build(AlgebraId::E44).unwrap();
    assert_eq!(a.label(0), "E_12-E_2'1'");
    for l in ["E_11'", "E_12'+E_21'", "E_1'2-E_2'1-dual", "I", "h_1", "v_1", "v_4'"] {
        assert!(a.index_of(l).is_some(), "{l}");
    }
    assert_eq!(a.parity(a.index_of("v_1").unwrap()), Parity::Even);
    assert_eq!(a.parity(a.index_of("v_1'").unwrap()), Parity::Odd);

    let a = build(AlgebraId::E510).unwrap();
    assert_eq!(a.label(0), "x_1D_2");
    assert_eq!(a.label(20), "x_1D_1-x_2D_2");
    assert_eq!(a.label(24), "d_12");
    assert_eq!(a.label(38), "D_5");

    let a = build(AlgebraId::E16).unwrap();
    assert_eq!(a.label(0), "x");
    assert_eq!(a.label(1), "xi_1xi_2");
    assert_eq!(a.label(16), "xi_1");
    assert_eq!(a.label(22), "1");

    let a = build(AlgebraId::E38).unwrap();
    for l in ["dx_4", "dx_5"] {
        let i = a.index_of(l).unwrap();
        assert_eq!((a.degree(i), a.parity(i)), (-3, Parity::Odd));
    }
}

#[test]
fn e510_generators_are_divergence_free_and_closed() {
    let gens = generators_e510();
    let g0: Vec<_> = gens.iter().filter(|g| g.degree == 0).cloned().collect();
    let even = audit(&g0);
    assert_eq!(even.fields_checked, 24);
    assert!(even.divergence_failures.is_empty());
    let odd: Vec<_> = gens.iter().filter(|g| g.parity == Parity::Odd).cloned().collect();
    let odd = audit(&odd);
    assert_eq!(odd.forms_checked, 10);
    assert!(odd.closedness_failures.is_empty());
    assert!(audit(&gens).passed());
    assert!(audit(&generators_e36()).passed());
}

#[test]
fn e36_embeds_in_e510() {
    let rep = e510::e36_embedding(DEFAULT_TRUNCATION).unwrap();
    assert_eq!(rep.pairs, 21 * 22 / 2);
    assert!(rep.mismatches.is_empty(), "{:?}", rep.mismatches);
}

#[test]
fn e38_restricts_to_e36_entrywise() {
    let e36 = build(AlgebraId::E36).unwrap();
    let e38 = build(AlgebraId::E38).unwrap();
    for i in 0..e36.dim() {
        assert_eq!(e36.element(i), e38.element(i));
    }
    for i in 0..e38.dim() {
        for j in 0..e38.dim() {
            let v = e38.bracket_basis(i, j);
            if i < e36.dim() && j < e36.dim() {
                assert_eq!(v, e36.bracket_basis(i, j), "({i}, {j})");
            } else {
                assert!(v.is_zero());
            }
        }
    }
}

#[test]
fn build_is_independent_of_a_larger_truncation() {
    let opts = BuildOptions {
        truncation: DEFAULT_TRUNCATION + 2,
    };
    for id in [AlgebraId::E510, AlgebraId::E16] {
        assert_eq!(build_with(id, &opts).unwrap().algebra, build(id).unwrap(), "{id}");
    }
}
