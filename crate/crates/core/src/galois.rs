//! Galois maps, their candidate inverses, the fusion morphisms between the
//! split Ω-images, and almost (co)linearity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::moncat::{chain, tensor_all, Mor};
use crate::projections::{projection_set, Side};
use crate::report::{failures, Check};
use crate::splitting::{omega_family, OmegaFamily};
use crate::structure::{premises_in_mode, Mode, WeakStructure};

/// `β = (μ ⊗ H)(H ⊗ δ)` and `γ = (H ⊗ μ)(δ ⊗ H)`.
pub fn galois_maps(s: &WeakStructure) -> Result<(Mor, Mor)> {
    let h = s.h();
    let beta = s.mu().tensor(&h)?.compose(&h.tensor(s.delta())?)?;
    let gamma = h.tensor(s.mu())?.compose(&s.delta().tensor(&h)?)?;
    Ok((beta, gamma))
}

/// `β̄ = (μ ⊗ H)(H ⊗ λ ⊗ H)(H ⊗ δ)` and `γ̄ = (H ⊗ μ)(H ⊗ λ ⊗ H)(δ ⊗ H)`.
pub fn candidate_inverses(s: &WeakStructure) -> Result<(Mor, Mor)> {
    let h = s.h();
    let mid = tensor_all(&[&h, s.lambda()?, &h])?;
    let beta_bar = chain(&[&s.mu().tensor(&h)?, &mid, &h.tensor(s.delta())?])?;
    let gamma_bar = chain(&[&h.tensor(s.mu())?, &mid, &s.delta().tensor(&h)?])?;
    Ok((beta_bar, gamma_bar))
}

pub fn almost_linear(s: &WeakStructure, phi: &Mor, side: Side) -> Result<bool> {
    let h = s.h();
    let insert_unit = tensor_all(&[&h, s.eta(), &h])?;
    let rhs = match side {
        Side::L => chain(&[&s.mu().tensor(&h)?, &h.tensor(phi)?, &insert_unit])?,
        Side::R => chain(&[&h.tensor(s.mu())?, &phi.tensor(&h)?, &insert_unit])?,
    };
    Ok(*phi == rhs)
}

pub fn almost_colinear(s: &WeakStructure, phi: &Mor, side: Side) -> Result<bool> {
    let h = s.h();
    let drop_counit = tensor_all(&[&h, s.eps(), &h])?;
    let rhs = match side {
        Side::L => chain(&[&drop_counit, &h.tensor(phi)?, &s.delta().tensor(&h)?])?,
        Side::R => chain(&[&drop_counit, &phi.tensor(&h)?, &h.tensor(s.delta())?])?,
    };
    Ok(*phi == rhs)
}

/// The fusion morphisms together with the splittings they were built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionMaps {
    pub omegas: OmegaFamily,
    pub beta: Mor,
    pub gamma: Mor,
    /// `q_R^1 β j_L^1 : H×_L^1 H → H×_R^1 H`
    pub f: Matrix,
    /// `q_L^2 γ j_R^2 : H×_R^2 H → H×_L^2 H`
    pub g: Matrix,
    /// `q_R^2 γ j_L^2`, the map written `h` in the coquasigroup statement.
    pub h_printed: Matrix,
    /// `q_L^1 β j_R^1`, the map written `s` in the coquasigroup statement.
    pub s_printed: Matrix,
    pub beta_bar: Option<Mor>,
    pub gamma_bar: Option<Mor>,
}

pub fn fusion(s: &WeakStructure) -> Result<FusionMaps> {
    let omegas = omega_family(s)?;
    let (beta, gamma) = galois_maps(s)?;
    let sandwich = |q: &Matrix, m: &Mor, j: &Matrix| q.mul(m.matrix())?.mul(j);
    let f = sandwich(omegas.q(Side::R, 1), &beta, omegas.j(Side::L, 1))?;
    let g = sandwich(omegas.q(Side::L, 2), &gamma, omegas.j(Side::R, 2))?;
    let h_printed = sandwich(omegas.q(Side::R, 2), &gamma, omegas.j(Side::L, 2))?;
    let s_printed = sandwich(omegas.q(Side::L, 1), &beta, omegas.j(Side::R, 1))?;
    let (beta_bar, gamma_bar) = match s.has_lambda() {
        true => {
            let (b, g) = candidate_inverses(s)?;
            (Some(b), Some(g))
        }
        false => (None, None),
    };
    Ok(FusionMaps { omegas, beta, gamma, f, g, h_printed, s_printed, beta_bar, gamma_bar })
}

impl FusionMaps {
    fn dim(&self) -> usize {
        self.beta.dim()
    }

    /// `j ∘ m ∘ q` as an endomorphism of `H ⊗ H`.
    pub fn lift(&self, j: &Matrix, m: &Matrix, q: &Matrix) -> Result<Mor> {
        Mor::new(self.dim(), 2, 2, j.mul(m)?.mul(q)?)
    }

    /// `j_R^1 ∘ f ∘ q_L^1`
    pub fn lifted_f(&self) -> Result<Mor> {
        let o = &self.omegas;
        self.lift(o.j(Side::R, 1), &self.f, o.q(Side::L, 1))
    }

    /// `j_L^2 ∘ g ∘ q_R^2`
    pub fn lifted_g(&self) -> Result<Mor> {
        let o = &self.omegas;
        self.lift(o.j(Side::L, 2), &self.g, o.q(Side::R, 2))
    }

    /// `j_L^1 ∘ f⁻¹ ∘ q_R^1`
    pub fn lifted_f_inverse(&self, f_inv: &Matrix) -> Result<Mor> {
        let o = &self.omegas;
        self.lift(o.j(Side::L, 1), f_inv, o.q(Side::R, 1))
    }

    /// `j_R^2 ∘ g⁻¹ ∘ q_L^2`
    pub fn lifted_g_inverse(&self, g_inv: &Matrix) -> Result<Mor> {
        let o = &self.omegas;
        self.lift(o.j(Side::R, 2), g_inv, o.q(Side::L, 2))
    }

    /// `q_L^1 ∘ β̄ ∘ j_R^1`
    pub fn f_inverse_formula(&self) -> Result<Matrix> {
        let bb = self.beta_bar.as_ref().ok_or(Error::MissingAntipode)?;
        self.omegas.q(Side::L, 1).mul(bb.matrix())?.mul(self.omegas.j(Side::R, 1))
    }

    /// `q_R^2 ∘ γ̄ ∘ j_L^2`
    pub fn g_inverse_formula(&self) -> Result<Matrix> {
        let gb = self.gamma_bar.as_ref().ok_or(Error::MissingAntipode)?;
        self.omegas.q(Side::R, 2).mul(gb.matrix())?.mul(self.omegas.j(Side::L, 2))
    }
}

/// A claimed equivalence, with both sides evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub id: String,
    pub predicate: bool,
    pub condition: bool,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.predicate == self.condition
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop27Report {
    pub unconditional: Vec<Check>,
    pub equivalences: Vec<Equivalence>,
    pub notes: Vec<String>,
}

impl Prop27Report {
    pub fn lines(&self) -> Vec<Check> {
        self.unconditional
            .iter()
            .cloned()
            .chain(self.equivalences.iter().map(|e| Check::new(e.id.clone(), e.holds())))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.lines().iter().all(|c| c.holds)
    }

    pub fn equivalence(&self, id: &str) -> Option<&Equivalence> {
        self.equivalences.iter().find(|e| e.id == id)
    }
}

/// Almost (co)linearity of the Galois maps and Ω-morphisms, and the
/// equivalences tying the remaining halves to coincidences of the Π maps.
pub fn check_prop27(s: &WeakStructure) -> Result<Prop27Report> {
    let premises = premises_in_mode(s, Mode::Quasigroup)?;
    if !premises.passed() {
        return Err(Error::PremiseFailure(failures(&premises.lines)));
    }
    let p = projection_set(s)?;
    let fam = omega_family(s)?;
    let (beta, gamma) = galois_maps(s)?;
    let (l1, r1, l2, r2) = (fam.omega(Side::L, 1), fam.omega(Side::R, 1), fam.omega(Side::L, 2), fam.omega(Side::R, 2));
    let lin = |m: &Mor, side| almost_linear(s, m, side);
    let colin = |m: &Mor, side| almost_colinear(s, m, side);

    let mut unconditional = Vec::new();
    let mut push = |id: &str, v: bool| unconditional.push(Check::new(id, v));
    push("i-beta-left-linear", lin(&beta, Side::L)?);
    push("i-beta-right-colinear", colin(&beta, Side::R)?);
    push("ii-gamma-right-linear", lin(&gamma, Side::R)?);
    push("ii-gamma-left-colinear", colin(&gamma, Side::L)?);
    push("iii-omegaL1-left-linear", lin(l1, Side::L)?);
    push("iii-omegaL1-right-colinear", colin(l1, Side::R)?);
    push("iii-omegaR1-left-linear", lin(r1, Side::L)?);
    push("iii-omegaR1-right-colinear", colin(r1, Side::R)?);
    push("iv-omegaL2-right-linear", lin(l2, Side::R)?);
    push("iv-omegaL2-left-colinear", colin(l2, Side::L)?);
    push("iv-omegaR2-right-linear", lin(r2, Side::R)?);
    push("iv-omegaR2-left-colinear", colin(r2, Side::L)?);
    push("v-omegaL1-right-linear", lin(l1, Side::R)?);
    push("vi-omegaR1-left-colinear", colin(r1, Side::L)?);
    push("vii-omegaL2-right-colinear", colin(l2, Side::R)?);
    push("viii-omegaR2-left-linear", lin(r2, Side::L)?);

    let pl_eq_plb = p.pi_l == p.pi_l_bar;
    let pr_eq_prb = p.pi_r == p.pi_r_bar;
    let plb_eq_pr = p.pi_l_bar == p.pi_r;
    let pl_eq_prb = p.pi_l == p.pi_r_bar;
    let eqv = |id: &str, predicate: bool, condition: bool| Equivalence { id: id.into(), predicate, condition };
    let l1_colin = colin(l1, Side::L)?;
    let r1_lin = lin(r1, Side::R)?;
    let l2_lin = lin(l2, Side::L)?;
    let r2_colin = colin(r2, Side::R)?;
    let equivalences = vec![
        eqv("v-omegaL1-left-colinear-iff-piL-eq-piLbar", l1_colin, pl_eq_plb),
        eqv("vi-omegaR1-right-linear-iff-piLbar-eq-piR", r1_lin, plb_eq_pr),
        eqv("vii-omegaL2-left-linear-iff-piL-eq-piRbar", l2_lin, pl_eq_prb),
        eqv("viii-omegaR2-right-colinear-iff-piR-eq-piRbar", r2_colin, pr_eq_prb),
        eqv("remark-piL-eq-piLbar-iff-piR-eq-piRbar", pl_eq_plb, pr_eq_prb),
        eqv("remark-piLbar-eq-piR-iff-piL-eq-piRbar", plb_eq_pr, pl_eq_prb),
        eqv("remark-omegaL1-left-colinear-iff-omegaR2-right-colinear", l1_colin, r2_colin),
        eqv("remark-omegaR1-right-linear-iff-omegaL2-left-linear", r1_lin, l2_lin),
    ];
    Ok(Prop27Report {
        unconditional,
        equivalences,
        notes: vec![
            "(viii) read as: Omega_R^2 almost left H-linear; almost right H-colinear iff Pi^R = Pibar^R".into(),
            "second remark equivalence read as: Pibar^L = Pi^R iff Pi^L = Pibar^R".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Example;

    #[test]
    fn trivial_maps() {
        let t = crate::structure::trivial();
        let (b, g) = galois_maps(&t).unwrap();
        assert!(b.matrix().is_identity() && g.matrix().is_identity());
        let id2 = t.id(2);
        assert!(almost_colinear(&t, &id2, Side::L).unwrap());
        assert!(almost_linear(&t, &id2, Side::R).unwrap());
    }

    #[test]
    fn z2_beta_is_a_permutation() {
        let z2 = Example::Z2.build();
        let (b, _) = galois_maps(&z2).unwrap();
        // β(g ⊗ h) = gh ⊗ h
        for g in 0..2 {
            for h in 0..2 {
                let col = g * 2 + h;
                let row = ((g + h) % 2) * 2 + h;
                assert!(b.matrix().get(row, col).is_one());
            }
        }
        let (bb, _) = candidate_inverses(&z2).unwrap();
        assert_eq!(bb, b);
    }

    #[test]
    fn fusion_needs_no_antipode() {
        let p2 = Example::PairGroupoid.build().strip_lambda();
        let fm = fusion(&p2).unwrap();
        assert!(fm.beta_bar.is_none());
        assert!(matches!(fm.f_inverse_formula(), Err(Error::MissingAntipode)));
    }
}
