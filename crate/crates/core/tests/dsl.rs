use proptest::prelude::*;
use whq_core::dsl::{eval_expr, parse_expr, Atom, BinOp, Expr};
use whq_core::galois::{candidate_inverses, galois_maps};
use whq_core::projections::{projection_set, Side};
use whq_core::splitting::omega_family;
use whq_core::structure::Example;
use whq_core::{dualize, Mor, WeakStructure};

fn eval(s: &WeakStructure, text: &str) -> Mor {
    eval_expr(s, &parse_expr(text).unwrap()).unwrap()
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (0usize..4).prop_map(Atom::Id),
        Just(Atom::Eta),
        Just(Atom::Mu),
        Just(Atom::Eps),
        Just(Atom::Delta),
        Just(Atom::Lambda),
        (2usize..5, 1usize..4).prop_map(|(total, pos)| Atom::Swap { total, pos }),
        Just(Atom::PiL),
        Just(Atom::PiRBar),
        (prop::bool::ANY, 1u8..=2).prop_map(|(l, index)| Atom::Omega { side: if l { Side::L } else { Side::R }, index }),
        Just(Atom::Beta),
        Just(Atom::GammaBar),
    ]
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    atom_strategy().prop_map(Expr::atom).prop_recursive(5, 40, 2, |inner| {
        (prop::sample::select(vec![BinOp::Compose, BinOp::Tensor, BinOp::Convolve]), inner.clone(), inner)
            .prop_map(|(op, l, r)| Expr::binary(op, l, r))
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in expr_strategy()) {
        let printed = e.to_string();
        let back = parse_expr(&printed).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn whitespace_is_insignificant(e in expr_strategy()) {
        let printed = e.to_string();
        let squeezed: String = printed.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse_expr(&squeezed).unwrap(), e);
    }
}

#[test]
fn omega_transcription_matches_module() {
    let s = Example::PairGroupoid.build();
    let fam = omega_family(&s).unwrap();
    let l1 = eval(&s, "(mu # id(1)) . (id(1) # piL # id(1)) . (id(1) # delta)");
    assert_eq!(&l1, fam.omega(Side::L, 1));
    assert_eq!(&eval(&s, "omega(L,1)"), fam.omega(Side::L, 1));
    assert_eq!(&eval(&s, "(id(1) ⊗ mu) ∘ (id(1) ⊗ piR ⊗ id(1)) ∘ (delta ⊗ id(1))"), fam.omega(Side::R, 2));
}

#[test]
fn named_atoms_match_constructions() {
    let mut structures: Vec<WeakStructure> = Example::ALL.iter().map(|e| e.build()).collect();
    structures.push(dualize(&Example::PairGroupoid.build()));
    for s in structures {
        let p = projection_set(&s).unwrap();
        let (beta, gamma) = galois_maps(&s).unwrap();
        let (bb, gb) = candidate_inverses(&s).unwrap();
        let fam = omega_family(&s).unwrap();
        assert_eq!(eval(&s, "piL"), p.pi_l);
        assert_eq!(eval(&s, "piR"), p.pi_r);
        assert_eq!(eval(&s, "piLbar"), p.pi_l_bar);
        assert_eq!(eval(&s, "piRbar"), p.pi_r_bar);
        assert_eq!(eval(&s, "beta"), beta);
        assert_eq!(eval(&s, "gamma"), gamma);
        assert_eq!(eval(&s, "betabar"), bb);
        assert_eq!(eval(&s, "gammabar"), gb);
        assert_eq!(&eval(&s, "lambda"), s.lambda().unwrap());
        assert_eq!(eval(&s, "swap(2,1)"), s.c());
        for (side, index) in whq_core::splitting::OmegaFamily::ORDER {
            assert_eq!(&eval(&s, &format!("omega({},{index})", side.name())), fam.omega(side, index));
        }
        assert_eq!(eval(&s, "beta"), eval(&s, "(mu # id(1)) . (id(1) # delta)"));
        assert_eq!(eval(&s, "piLbar"), eval(&s, "(id(1) # (eps . mu)) . ((delta . eta) # id(1))"));
    }
}

#[test]
fn convolution_identities() {
    let s = Example::PairGroupoid.build();
    assert_eq!(eval(&s, "piL * id(1)"), eval(&s, "id(1)"));
    assert_eq!(eval(&s, "id(1) * piR"), eval(&s, "id(1)"));
    assert_eq!(eval(&s, "id(1) * lambda"), eval(&s, "piL"));
    assert_ne!(eval(&s, "piL"), eval(&s, "eta . eps"));
    let z3 = Example::Z3.build();
    assert_eq!(eval(&z3, "id(1) * lambda"), eval(&z3, "eta . eps"));
}
