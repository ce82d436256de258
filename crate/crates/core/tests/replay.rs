use homlie::replay::{self, Expr};
use homlie::{build, AlgebraElement, AlgebraId};

#[test]
fn shipped_fixtures_pass() {
    for id in AlgebraId::ALL {
        let r = replay::replay_all(id).unwrap();
        for o in &r.outcomes {
            assert!(o.passed, "{id} {}: expected {} got {}", o.name, o.expected, o.actual);
        }
    }
}

#[test]
fn negating_one_structure_constant_fails_a_fixture() {
    let set = replay::shipped();
    for f in &set.fixtures {
        let Expr::Bracket(a, b) = &f.lhs else {
            continue;
        };
        let (Expr::Basis(a), Expr::Basis(b)) = (a.as_ref(), b.as_ref()) else {
            continue;
        };
        let id: AlgebraId = f.algebra.parse().unwrap();
        let mut alg = build(id).unwrap();
        let (i, j) = (alg.index_of(a).unwrap(), alg.index_of(b).unwrap());
        let (i, j) = (i.min(j), i.max(j));
        let v = alg.bracket_basis(i, j);
        assert!(!v.is_zero());
        let flipped = v.scale(&homlie::rational::int(-1));
        alg.set_bracket(i, j, flipped).unwrap();
        let r = replay::replay_on(&alg, &set.for_algebra(id)).unwrap();
        let failed: Vec<_> = r
            .outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.name.as_str())
            .collect();
        assert!(failed.contains(&f.name.as_str()), "{}: {failed:?}", f.name);
    }
}

#[test]
fn fixture_results_are_independent_of_order() {
    let set = replay::shipped();
    let alg = build(AlgebraId::E16).unwrap();
    let mut fx = set.for_algebra(AlgebraId::E16);
    let a = replay::replay_on(&alg, &fx).unwrap();
    fx.reverse();
    let mut b = replay::replay_on(&alg, &fx).unwrap();
    b.outcomes.reverse();
    assert_eq!(a, b);
    assert_ne!(AlgebraElement::zero(), AlgebraElement::basis(0));
}
