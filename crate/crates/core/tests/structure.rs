use proptest::prelude::*;
use whq_core::structure::*;
use whq_core::{dualize, Error, Mode, WeakStructure};

fn small_examples() -> Vec<Example> {
    vec![Example::Trivial, Example::Z2, Example::Z3, Example::PairGroupoid]
}

fn target() -> impl Strategy<Value = Target> {
    prop::sample::select(vec![Target::Mult, Target::Comult, Target::Unit, Target::Counit])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn premise_lines_match_their_duals(ex in prop::sample::select(small_examples()), t in target(), seed in 0u64..1000) {
        let (s, _) = perturb(&ex.build(), t, seed).unwrap();
        let here = premises_in_mode(&s, Mode::Quasigroup).unwrap();
        let there = premises_in_mode(&dualize(&s), Mode::Coquasigroup).unwrap();
        prop_assert_eq!(here.lines.len(), there.lines.len());
        for line in &here.lines {
            let other = there.line(dual_premise_line(&line.id).unwrap()).unwrap();
            prop_assert_eq!(line.holds, other.holds, "{} vs {}", line.id, other.id);
        }
    }

    #[test]
    fn dualize_is_an_involution(ex in prop::sample::select(small_examples()), t in target(), seed in 0u64..1000) {
        let (s, _) = perturb(&ex.build(), t, seed).unwrap();
        prop_assert_eq!(dualize(&dualize(&s)), s);
    }

    #[test]
    fn perturbation_is_reversible(ex in prop::sample::select(small_examples()), t in target(), seed in 0u64..1000) {
        let s = ex.build();
        let (bad, p) = perturb(&s, t, seed).unwrap();
        prop_assert_ne!(&bad, &s);
        prop_assert_eq!(perturb(&s, t, seed).unwrap().0, bad.clone());
        prop_assert_eq!(p.restore(&bad).unwrap(), s);
    }

    #[test]
    fn json_round_trip_of_perturbed(ex in prop::sample::select(small_examples()), t in target(), seed in 0u64..1000) {
        let (s, _) = perturb(&ex.build(), t, seed).unwrap();
        let text = to_json(&s);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(to_json(&back), text);
    }
}

#[test]
fn bundled_examples_pass_their_premises() {
    for ex in Example::ALL {
        let s = ex.build();
        assert!(validate_premises(&s).unwrap().passed(), "{}", ex.name());
        let d = dualize(&s);
        assert_eq!(d.mode(), Mode::Coquasigroup);
        assert!(validate_premises(&d).unwrap().passed(), "dual {}", ex.name());
    }
}

#[test]
fn nonassociative_loop_fails_coquasigroup_premises() {
    let s = Example::SteinerAffine.build();
    let r = premises_in_mode(&s, Mode::Coquasigroup).unwrap();
    assert!(!r.line("associativity").unwrap().holds);
    assert_eq!(r.braiding, "symmetric base: c^-1 = c");
}

#[test]
fn files_round_trip_byte_identically() {
    let mut all: Vec<WeakStructure> = Example::ALL.iter().map(|e| e.build()).collect();
    all.push(dualize(&Example::PairGroupoid.build()));
    all.push(Example::S3.build().reduce_mod(5).unwrap());
    all.push(Example::Z2.build().strip_lambda().with_basis(None));
    for s in all {
        let text = to_json(&s);
        let back = from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json(&back), text);
    }
}

#[test]
fn builders_reject_bad_tables() {
    assert!(matches!(group_algebra(&[vec![0, 1], vec![0, 1]]), Err(Error::NotAGroup(_))));
    assert!(matches!(group_algebra(&steiner_affine_table()), Err(Error::NotAGroup(_))));
    assert!(matches!(loop_algebra(&[vec![0, 1, 2], vec![1, 2, 1], vec![2, 0, 1]]), Err(Error::NotIPLoop(_))));
    let mut g = pair_groupoid(2);
    g.compose[0][1] = None;
    assert!(matches!(groupoid_algebra(&g), Err(Error::NotAGroupoid(_))));
}

#[test]
fn example_dimensions() {
    let dims: Vec<usize> = Example::ALL.iter().map(|e| e.build().dim()).collect();
    assert_eq!(dims, vec![1, 2, 3, 6, 4, 8, 10]);
}
