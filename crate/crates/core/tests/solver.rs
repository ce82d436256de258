use homlie::linalg::{self, EliminationStrategy, Row};
use homlie::rational::{frac, int};
use homlie::solver::invert::{check_family, Verdict};
use homlie::solver::linear::{assemble_homjacobi, CandidateMap, FiltrationMode, UnknownLayout};
use homlie::solver::poly::Poly;
use homlie::solver::quadratic::multiplicativity_residuals;
use homlie::solver::variety::{decompose, Shape, VarietyConfig};
use homlie::solver::{self, active_algebra, ComponentKind, SolutionReport, SolverConfig};
use homlie::{format, AlgebraElement, AlgebraId, GradedSuperalgebra, Rational};

const CERTIFIED: [AlgebraId; 4] = [AlgebraId::E44, AlgebraId::E510, AlgebraId::E36, AlgebraId::E38];

fn classify(id: AlgebraId, filtration: FiltrationMode) -> SolutionReport {
    let cfg = SolverConfig {
        filtration,
        ..SolverConfig::default()
    };
    solver::classify(id, &cfg).unwrap()
}

fn as_row(v: &[Rational]) -> Row {
    linalg::row_from_entries(v.iter().cloned().enumerate())
}

#[test]
fn nullspace_examples() {
    for s in [EliminationStrategy::FractionFree, EliminationStrategy::Rational] {
        let empty: Vec<Row> = Vec::new();
        assert_eq!(linalg::nullspace(empty.iter(), 3, s).len(), 3);
        let rows = [as_row(&[int(1), int(-1)])];
        let ns = linalg::nullspace(rows.iter(), 2, s);
        assert_eq!(ns, vec![as_row(&[int(1), int(1)])]);
    }
}

fn var(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

#[test]
fn variety_examples() {
    let c = var(1, 0);
    let v = decompose(&[c.mul(&c).minus(&c)], 1, VarietyConfig::default());
    let mut points: Vec<Vec<Rational>> = v
        .components
        .iter()
        .map(|k| match &k.shape {
            Shape::Affine { base, directions } if directions.is_empty() => base.clone(),
            s => panic!("unexpected {s:?}"),
        })
        .collect();
    points.sort();
    assert_eq!(points, vec![vec![int(0)], vec![int(1)]]);

    let (c1, c2) = (var(2, 0), var(2, 1));
    let v = decompose(&[c1.mul(&c2), c1.minus(&c2)], 2, VarietyConfig::default());
    assert_eq!(v.components.len(), 1);
    assert!(v.components[0].is_point());
    assert!(v.components[0].contains_point(&[int(0), int(0)]));

    let v = decompose(&[], 1, VarietyConfig::default());
    assert_eq!(v.components.len(), 1);
    assert_eq!(v.components[0].dimension(), Some(1));
    assert!(v.components[0].contains_point(&[frac(7, 3)]));
}

#[test]
fn invertibility_examples() {
    let a = active_algebra(AlgebraId::E510).unwrap();
    let n = a.dim();
    let id = check_family(&a, &CandidateMap::identity(n), &[]);
    assert_eq!(id.verdict, Verdict::Invertible);
    assert!(id.blocks.iter().all(|b| b.determinant == "1"));
    assert_eq!(check_family(&a, &CandidateMap::zero(n), &[]).verdict, Verdict::Singular);

    let mut m = CandidateMap::identity(n);
    for i in a.component(-2) {
        m.set(i, i, int(0));
    }
    let r = check_family(&a, &m, &[]);
    assert_eq!(r.verdict, Verdict::Singular);
    for b in &r.blocks {
        assert_eq!(b.determinant == "0", b.degree == -2, "{b:?}");
    }
}

#[test]
fn identity_and_zero_satisfy_homjacobi() {
    for id in AlgebraId::ALL {
        let a = active_algebra(id).unwrap();
        let layout = UnknownLayout::new(&a, FiltrationMode::Filtered);
        let sys = assemble_homjacobi(&a, &layout);
        let n = a.dim();
        for m in [
            CandidateMap::identity(n),
            CandidateMap::zero(n),
            CandidateMap::scaled_identity(n, &int(2)),
        ] {
            assert!(sys.satisfied_by(&layout.row_from_map(&m).unwrap()), "{id}");
        }
    }
}

#[test]
fn e16_nullspace_contains_zero_and_identity() {
    let r = classify(AlgebraId::E16, FiltrationMode::Filtered);
    assert!(r.nullspace_dim >= 2);
    let zero = r.variety_components.iter().any(|c| c.contains_zero);
    let ident = r.variety_components.iter().any(|c| c.contains_identity);
    assert!(zero && ident);
}

#[test]
fn scaled_identity_is_multiplicative_only_at_zero_and_one() {
    for id in AlgebraId::ALL {
        let a = active_algebra(id).unwrap();
        let n = a.dim();
        for (l, ok) in [
            (int(0), true),
            (int(1), true),
            (int(2), false),
            (int(-1), false),
            (frac(1, 2), false),
        ] {
            let res = multiplicativity_residuals(&a, &CandidateMap::scaled_identity(n, &l));
            assert_eq!(res.is_empty(), ok, "{id} λ={l}");
            // residual is (λ − λ²)[x, y]
            for ((i, j), r) in res {
                assert_eq!(r, a.bracket_basis(i, j).scale(&(&l - &l * &l)));
            }
        }
    }
}

fn d_forms(a: &GradedSuperalgebra) -> Vec<(usize, [usize; 2])> {
    (0..a.dim())
        .filter_map(|i| {
            let l = a.label(i).strip_prefix("d_")?.as_bytes();
            Some((i, [(l[0] - b'0') as usize, (l[1] - b'0') as usize]))
        })
        .collect()
}

fn br(a: &GradedSuperalgebra, x: &AlgebraElement, y: usize) -> AlgebraElement {
    a.bracket(x, &AlgebraElement::basis(y)).unwrap()
}

#[test]
fn consequences_for_nullspace_elements_of_the_e5_family() {
    for id in [AlgebraId::E510, AlgebraId::E36, AlgebraId::E38] {
        for mode in [FiltrationMode::Filtered, FiltrationMode::Off] {
            let cfg = SolverConfig {
                filtration: mode,
                linear_only: true,
                ..SolverConfig::default()
            };
            let a = active_algebra(id).unwrap();
            let r = solver::classify(id, &cfg).unwrap();
            let ds = d_forms(&a);
            assert_eq!(ds.len(), if id == AlgebraId::E510 { 10 } else { 6 });
            let mut checked = 0;
            for tau in &r.nullspace_basis {
                for &(p, ij) in &ds {
                    for &(q, kl) in &ds {
                        if p == q {
                            continue;
                        }
                        let shared = ij.iter().filter(|x| kl.contains(x)).count();
                        let tp = br(&a, &tau.image(p), q);
                        let tq = br(&a, &tau.image(q), p);
                        if shared == 1 {
                            if id == AlgebraId::E510 {
                                assert!(tp.is_zero(), "{id} [τ({}), {}]", a.label(p), a.label(q));
                            } else {
                                assert_eq!(tp, tq.scale(&int(-1)), "{id}");
                            }
                            checked += 1;
                        } else if shared == 0 {
                            let rhs = a.bracket(&AlgebraElement::basis(p), &tau.image(q)).unwrap();
                            assert_eq!(tp, rhs, "{id}");
                            checked += 1;
                        }
                    }
                }
            }
            assert!(checked > 0);
        }
    }
}

#[test]
fn certified_algebras_have_only_the_identity() {
    for id in CERTIFIED {
        let r = classify(id, FiltrationMode::Filtered);
        assert!(!r.is_inconclusive(), "{id}");
        let inv = r.invertible_solutions.as_ref().unwrap();
        assert_eq!(inv.len(), 1, "{id}");
        assert!(inv[0].is_identity && inv[0].family_dimension == 0, "{id}");
        assert!(inv[0].invertibility.blocks.iter().all(|b| b.determinant == "1"));
        let zero = r.variety_components.iter().find(|c| c.contains_zero).unwrap();
        assert_eq!(zero.invertibility.as_ref().unwrap().verdict, Verdict::Singular);
        assert_eq!(r.trivial_certificate, Some(true), "{id}");
        let cc = r.linear.cross_check.as_ref().unwrap();
        assert!(cc.identical_basis);
        assert_eq!(cc.nullspace_dim, r.nullspace_dim);
    }
}

#[test]
fn e16_has_a_unipotent_family_under_the_filtered_mask() {
    let r = classify(AlgebraId::E16, FiltrationMode::Filtered);
    assert!(!r.is_inconclusive());
    assert_eq!(r.trivial_certificate, Some(false));
    let inv = r.invertible_solutions.as_ref().unwrap();
    assert_eq!(inv.len(), 1);
    let c = &r.variety_components[inv[0].component];
    assert_eq!(c.kind, ComponentKind::Affine);
    assert!(c.contains_identity);
    assert!(c.invertibility.as_ref().unwrap().everywhere);
    let a = active_algebra(AlgebraId::E16).unwrap();
    let (x, one) = (a.index_of("x").unwrap(), a.index_of("1").unwrap());
    assert_eq!(c.direction_maps.len(), 1);
    let dir = &c.direction_maps[0];
    let entries: Vec<_> = dir.entries().map(|(k, v)| (k, v.clone())).collect();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].0, (one, x));
    // away from t = 0 the family moves x ∈ g_0, so σ|_{g_0} ≠ id
    assert_eq!(a.degree(x), 0);
    let sigma = CandidateMap::identity(a.dim()).plus(dir);
    assert!(!sigma.is_identity());
    assert!(multiplicativity_residuals(&a, &sigma).is_empty());
}

#[test]
fn graded_mask_certifies_all_five() {
    for id in AlgebraId::ALL {
        let r = classify(id, FiltrationMode::Graded);
        assert_eq!(r.trivial_certificate, Some(true), "{id}");
    }
}

fn outcome(r: &SolutionReport) -> (Option<bool>, Vec<(ComponentKind, Option<usize>, bool, bool)>) {
    let mut comps: Vec<_> = r
        .variety_components
        .iter()
        .map(|c| (c.kind, c.dimension, c.contains_identity, c.contains_zero))
        .collect();
    comps.sort_by_key(|c| format!("{c:?}"));
    (r.trivial_certificate, comps)
}

#[test]
fn unmasking_g_minus_one_changes_nothing() {
    for id in [AlgebraId::E510, AlgebraId::E36, AlgebraId::E38, AlgebraId::E16] {
        let base = classify(id, FiltrationMode::Filtered);
        let loose = classify(id, FiltrationMode::FilteredExceptMinusOne);
        assert_eq!(outcome(&base), outcome(&loose), "{id}");
    }
}

#[test]
fn classification_is_deterministic() {
    for id in [AlgebraId::E36, AlgebraId::E16] {
        let a = format::to_canonical_json(&classify(id, FiltrationMode::Filtered)).unwrap();
        let b = format::to_canonical_json(&classify(id, FiltrationMode::Filtered)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn strategies_agree() {
    for id in AlgebraId::ALL {
        let mk = |s| {
            let cfg = SolverConfig {
                strategy: s,
                cross_check: false,
                linear_only: true,
                ..SolverConfig::default()
            };
            solver::classify(id, &cfg).unwrap()
        };
        let ff = mk(EliminationStrategy::FractionFree);
        let q = mk(EliminationStrategy::Rational);
        assert_eq!(ff.nullspace_basis, q.nullspace_basis, "{id}");
        assert_eq!(ff.linear.rank, q.linear.rank);
    }
}
