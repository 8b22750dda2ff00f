use std::cell::OnceCell;

use super::{Atom, BinOp, Expr, ExprKind};
use crate::error::{Error, Result};
use crate::galois::{candidate_inverses, galois_maps};
use crate::moncat::Mor;
use crate::projections::{projection_set, ProjectionSet};
use crate::splitting::omega;
use crate::structure::WeakStructure;

/// Evaluates expressions against one structure, computing the derived maps
/// at most once.
pub struct Evaluator<'a> {
    s: &'a WeakStructure,
    projections: OnceCell<ProjectionSet>,
    galois: OnceCell<(Mor, Mor)>,
    bars: OnceCell<(Mor, Mor)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(s: &'a WeakStructure) -> Evaluator<'a> {
        Evaluator { s, projections: OnceCell::new(), galois: OnceCell::new(), bars: OnceCell::new() }
    }

    fn projections(&self) -> Result<&ProjectionSet> {
        if self.projections.get().is_none() {
            let _ = self.projections.set(projection_set(self.s)?);
        }
        Ok(self.projections.get().unwrap())
    }

    fn galois(&self) -> Result<&(Mor, Mor)> {
        if self.galois.get().is_none() {
            let _ = self.galois.set(galois_maps(self.s)?);
        }
        Ok(self.galois.get().unwrap())
    }

    fn bars(&self) -> Result<&(Mor, Mor)> {
        if self.bars.get().is_none() {
            let _ = self.bars.set(candidate_inverses(self.s)?);
        }
        Ok(self.bars.get().unwrap())
    }

    pub fn atom(&self, atom: &Atom) -> Result<Mor> {
        let s = self.s;
        Ok(match atom {
            Atom::Id(n) => s.id(*n),
            Atom::Eta => s.eta().clone(),
            Atom::Mu => s.mu().clone(),
            Atom::Eps => s.eps().clone(),
            Atom::Delta => s.delta().clone(),
            Atom::Lambda => s.lambda()?.clone(),
            Atom::Swap { total, pos } => Mor::swap(s.field(), s.dim(), *total, *pos)?,
            Atom::PiL => self.projections()?.pi_l.clone(),
            Atom::PiR => self.projections()?.pi_r.clone(),
            Atom::PiLBar => self.projections()?.pi_l_bar.clone(),
            Atom::PiRBar => self.projections()?.pi_r_bar.clone(),
            Atom::Omega { side, index } => omega(s, self.projections()?, *side, *index)?,
            Atom::Beta => self.galois()?.0.clone(),
            Atom::Gamma => self.galois()?.1.clone(),
            Atom::BetaBar => self.bars()?.0.clone(),
            Atom::GammaBar => self.bars()?.1.clone(),
        })
    }

    pub fn eval(&self, e: &Expr) -> Result<Mor> {
        match &e.kind {
            ExprKind::Atom(a) => self.atom(a),
            ExprKind::Binary { op, lhs, rhs } => {
                let (l, r) = (self.eval(lhs)?, self.eval(rhs)?);
                let out = match op {
                    BinOp::Compose => l.compose(&r),
                    BinOp::Tensor => l.tensor(&r),
                    BinOp::Convolve => self.s.convolve(&l, &r),
                };
                out.map_err(|err| match err {
                    Error::ArityMismatch(why) => {
                        Error::ArityMismatch(format!("in `{e}` at offset {}: {why}", e.span.start + 1))
                    }
                    other => other,
                })
            }
        }
    }
}

pub fn eval_expr(s: &WeakStructure, e: &Expr) -> Result<Mor> {
    Evaluator::new(s).eval(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_expr;
    use crate::structure::Example;

    #[test]
    fn unit_law_gives_identity() {
        let e = parse_expr("mu . (id(1) # eta)").unwrap();
        for ex in Example::ALL {
            let s = ex.build();
            assert_eq!(eval_expr(&s, &e).unwrap(), s.id(1), "{}", ex.name());
        }
    }

    #[test]
    fn arity_errors_name_the_subtree() {
        let s = Example::Z2.build();
        let e = parse_expr("eta # (mu . eta)").unwrap();
        match eval_expr(&s, &e) {
            Err(Error::ArityMismatch(m)) => assert!(m.contains("`mu . eta` at offset 7"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(eval_expr(&s, &parse_expr("mu * id(1)").unwrap()), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn lambda_atoms_need_an_antipode() {
        let s = Example::Z2.build().strip_lambda();
        for text in ["lambda", "betabar", "gammabar . id(2)"] {
            assert_eq!(eval_expr(&s, &parse_expr(text).unwrap()), Err(Error::MissingAntipode));
        }
        assert!(eval_expr(&s, &parse_expr("piLbar").unwrap()).is_ok());
    }
}
