use whq_core::galois::check_prop27;
use whq_core::projections::{base_monoid, check_projection_identities, identity_names, projection_set, Side};
use whq_core::report::failures;
use whq_core::splitting::{check_intertwining, check_lemma_diagrams, omega_family, OmegaFamily};
use whq_core::structure::*;
use whq_core::{dualize, mor_equal, Matrix, Mor, WeakStructure};

fn p2() -> WeakStructure {
    Example::PairGroupoid.build()
}

/// The dual of the pair groupoid algebra, read in quasigroup mode (it is
/// associative and coassociative, so both readings apply).
fn dual_p2() -> WeakStructure {
    dualize(&p2()).with_mode(Mode::Quasigroup)
}

fn basis_map(d: usize, image: impl Fn(usize) -> usize) -> Mor {
    let m = Matrix::from_triplets(whq_core::Field::Rational, d, d, (0..d).map(|x| (image(x), x, whq_core::Field::Rational.one())))
        .unwrap();
    Mor::new(d, 1, 1, m).unwrap()
}

/// The identity arrow at `o`.
fn unit_at(g: &Groupoid, o: usize) -> usize {
    (0..g.arrows())
        .find(|u| g.source[*u] == o && g.target[*u] == o && (0..g.arrows()).all(|x| g.target[x] != o || g.compose[*u][x] == Some(x)))
        .unwrap()
}

fn groupoids() -> Vec<(&'static str, Groupoid)> {
    vec![
        ("z3", Groupoid::from_group(&cyclic_group_table(3))),
        ("s3", Groupoid::from_group(&symmetric_group_s3_table())),
        ("pair-2", pair_groupoid(2)),
        ("pair-3", pair_groupoid(3)),
    ]
}

#[test]
fn all_identities_hold_on_every_example() {
    let names = identity_names();
    assert_eq!(names.len(), 32);
    let mut structures: Vec<(String, WeakStructure)> =
        Example::ALL.iter().map(|e| (e.name().to_string(), e.build())).collect();
    structures.push(("dual-p2".into(), dual_p2()));
    structures.push(("trivial+z2".into(), direct_sum(&trivial(), &Example::Z2.build()).unwrap()));
    for (name, s) in structures {
        let lines = check_projection_identities(&s).unwrap();
        assert_eq!(lines.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(), names);
        assert!(failures(&lines).is_empty(), "{name}: {:?}", failures(&lines));
    }
}

#[test]
fn projections_match_groupoid_combinatorics() {
    for (name, g) in groupoids() {
        let s = groupoid_algebra(&g).unwrap();
        let p = projection_set(&s).unwrap();
        let to_target = basis_map(g.arrows(), |a| unit_at(&g, g.target[a]));
        let to_source = basis_map(g.arrows(), |a| unit_at(&g, g.source[a]));
        assert_eq!(p.pi_l, to_target, "{name}");
        assert_eq!(p.pi_l_bar, to_target, "{name}");
        assert_eq!(p.pi_r, to_source, "{name}");
        assert_eq!(p.pi_r_bar, to_source, "{name}");
    }
}

#[test]
fn dual_projections_are_transposes() {
    for s in [p2(), Example::S3.build()] {
        let p = projection_set(&s).unwrap();
        let q = projection_set(&dualize(&s)).unwrap();
        assert_eq!(q.pi_l, p.pi_l.transpose());
        assert_eq!(q.pi_r, p.pi_r.transpose());
        assert_eq!(q.pi_l_bar, p.pi_r_bar.transpose());
        assert_eq!(q.pi_r_bar, p.pi_l_bar.transpose());
    }
}

#[test]
fn projection_equalities_on_the_pair_groupoid() {
    let p = projection_set(&p2()).unwrap();
    assert!(mor_equal(&p.pi_l, &p.pi_l_bar));
    assert!(!mor_equal(&p.pi_l, &p.pi_r_bar));
    assert!(!mor_equal(&p.pi_l, &p.pi_r));
    let q = projection_set(&dual_p2()).unwrap();
    assert!(!mor_equal(&q.pi_l, &q.pi_l_bar));
}

#[test]
fn omega_ranks_count_composable_pairs() {
    for (name, g) in groupoids().into_iter().take(3) {
        let s = groupoid_algebra(&g).unwrap();
        let n = g.arrows();
        let composable = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| g.source[*a] == g.target[*b]).count();
        let fam = omega_family(&s).unwrap();
        for (side, index) in OmegaFamily::ORDER {
            assert_eq!(fam.rank(side, index), composable, "{name} {side:?}{index}");
            assert!(fam.split(side, index).check().unwrap());
        }
        assert!(failures(&check_intertwining(&s, &fam).unwrap()).is_empty());
    }
}

#[test]
fn lemma_diagrams_on_every_example() {
    let expected = [1, 4, 9, 36, 8, 64, 100];
    for (ex, want) in Example::ALL.iter().zip(expected) {
        let r = check_lemma_diagrams(&ex.build()).unwrap();
        assert!(failures(&r.lines).is_empty(), "{}: {:?}", ex.name(), failures(&r.lines));
        for (what, rank) in &r.ranks {
            assert_eq!(*rank, want, "{} {what}", ex.name());
        }
    }
    let r = check_lemma_diagrams(&dual_p2()).unwrap();
    assert!(failures(&r.lines).is_empty());
}

#[test]
fn lemma_diagrams_need_premises() {
    let (bad, _) = perturb(&p2(), Target::Unit, 1).unwrap();
    assert!(matches!(check_lemma_diagrams(&bad), Err(whq_core::Error::PremiseFailure(_))));
}

#[test]
fn base_monoids_have_expected_rank() {
    let s = p2();
    for side in [Side::L, Side::R] {
        let b = base_monoid(&s, side).unwrap();
        assert_eq!(b.rank, 2);
        assert!(b.proj.mul(&b.inj).unwrap().is_identity());
    }
    assert_eq!(base_monoid(&Example::S3.build(), Side::L).unwrap().rank, 1);
}

#[test]
fn prop27_on_the_pair_groupoid_and_its_dual() {
    let r = check_prop27(&p2()).unwrap();
    assert!(r.passed(), "{:?}", failures(&r.lines()));
    let truth = |r: &whq_core::galois::Prop27Report, prefix: &str| {
        let e = r.equivalences.iter().find(|e| e.id.starts_with(prefix)).unwrap();
        (e.predicate, e.condition)
    };
    // Π̄^L = Π^L and Π̄^R = Π^R, but Π^L ≠ Π^R.
    assert_eq!(truth(&r, "v-"), (true, true));
    assert_eq!(truth(&r, "vi-"), (false, false));
    assert_eq!(truth(&r, "vii-"), (false, false));
    assert_eq!(truth(&r, "viii-"), (true, true));

    let d = check_prop27(&dual_p2()).unwrap();
    assert!(d.passed(), "{:?}", failures(&d.lines()));
    assert_eq!(truth(&d, "v-"), (false, false));
    assert_eq!(truth(&d, "vi-"), (true, true));
    assert_eq!(truth(&d, "vii-"), (true, true));
    assert_eq!(truth(&d, "viii-"), (false, false));
}

#[test]
fn prop27_holds_everywhere() {
    for ex in Example::ALL {
        let r = check_prop27(&ex.build()).unwrap();
        assert!(r.passed(), "{}: {:?}", ex.name(), failures(&r.lines()));
        assert_eq!(r.unconditional.len(), 16);
        assert_eq!(r.equivalences.len(), 8);
    }
}
