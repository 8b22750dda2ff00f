//! The four Ω-morphisms on `H ⊗ H`, their splittings, and the
//! (co)equalizer descriptions of their images.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::moncat::{chain, tensor_all, Mor, Splitting};
use crate::projections::{base_monoid, projection_set, BaseMonoid, ProjectionSet, Side};
use crate::report::{failures, Check};
use crate::structure::{premises_in_mode, Mode, WeakStructure};

/// `Ω_σ^1 = (μ ⊗ H)(H ⊗ Π^σ ⊗ H)(H ⊗ δ)`,
/// `Ω_σ^2 = (H ⊗ μ)(H ⊗ Π^σ ⊗ H)(δ ⊗ H)`.
pub fn omega(s: &WeakStructure, p: &ProjectionSet, side: Side, index: u8) -> Result<Mor> {
    let h = s.h();
    let middle = tensor_all(&[&h, p.get(side, false), &h])?;
    match index {
        1 => chain(&[&s.mu().tensor(&h)?, &middle, &h.tensor(s.delta())?]),
        2 => chain(&[&h.tensor(s.mu())?, &middle, &s.delta().tensor(&h)?]),
        _ => Err(Error::ArityMismatch(format!("Ω index must be 1 or 2, got {index}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaFamily {
    /// Indexed by [`OmegaFamily::slot`]: L1, R1, L2, R2.
    splits: [Splitting; 4],
}

impl OmegaFamily {
    pub const ORDER: [(Side, u8); 4] = [(Side::L, 1), (Side::R, 1), (Side::L, 2), (Side::R, 2)];

    fn slot(side: Side, index: u8) -> usize {
        match (side, index) {
            (Side::L, 1) => 0,
            (Side::R, 1) => 1,
            (Side::L, 2) => 2,
            _ => 3,
        }
    }

    pub fn omega(&self, side: Side, index: u8) -> &Mor {
        &self.splits[Self::slot(side, index)].nabla
    }

    pub fn split(&self, side: Side, index: u8) -> &Splitting {
        &self.splits[Self::slot(side, index)]
    }

    /// `q_σ^α`.
    pub fn q(&self, side: Side, index: u8) -> &Matrix {
        &self.split(side, index).proj
    }

    /// `j_σ^α`.
    pub fn j(&self, side: Side, index: u8) -> &Matrix {
        &self.split(side, index).inj
    }

    pub fn rank(&self, side: Side, index: u8) -> usize {
        self.split(side, index).rank
    }
}

pub fn omega_family(s: &WeakStructure) -> Result<OmegaFamily> {
    let p = projection_set(s)?;
    let split = |side, index| omega(s, &p, side, index)?.split();
    Ok(OmegaFamily { splits: [split(Side::L, 1)?, split(Side::R, 1)?, split(Side::L, 2)?, split(Side::R, 2)?] })
}

/// `(μ ⊗ H)(H ⊗ Ω_σ^1) = Ω_σ^1 (μ ⊗ H)` and
/// `(H ⊗ μ)(Ω_σ^2 ⊗ H) = Ω_σ^2 (H ⊗ μ)`.
pub fn check_intertwining(s: &WeakStructure, fam: &OmegaFamily) -> Result<Vec<Check>> {
    let h = s.h();
    let mu = s.mu();
    let mut out = Vec::new();
    for side in [Side::L, Side::R] {
        let o = fam.omega(side, 1);
        out.push(Check::new(
            format!("muconomega-{}", side.name()),
            chain(&[&mu.tensor(&h)?, &h.tensor(o)?])? == chain(&[o, &mu.tensor(&h)?])?,
        ));
    }
    for side in [Side::L, Side::R] {
        let o = fam.omega(side, 2);
        out.push(Check::new(
            format!("omegaconmu-{}", side.name()),
            chain(&[&h.tensor(mu)?, &o.tensor(&h)?])? == chain(&[o, &h.tensor(mu)?])?,
        ));
    }
    Ok(out)
}

/// A right module `(M, φ_M)` over a base monoid, with `φ_M` an
/// `m × (m·r)` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightModule {
    pub rank: usize,
    pub action: Matrix,
}

impl RightModule {
    /// `H` acted on by the base monoid through `μ ∘ (H ⊗ i)`.
    pub fn regular(base: &BaseMonoid) -> RightModule {
        RightModule { rank: base.right_action.rows(), action: base.right_action.clone() }
    }

    pub fn check(&self, base: &BaseMonoid) -> Result<()> {
        let field = base.inj.field();
        let id_m = Matrix::identity(field, self.rank);
        let id_r = Matrix::identity(field, base.rank);
        let fail = |what: &str| Error::ModuleLawFailure(what.to_string());
        if self.action.rows() != self.rank || self.action.cols() != self.rank * base.rank {
            return Err(fail("action has the wrong shape"));
        }
        if self.action.mul(&id_m.kron(&base.eta_base)?)? != id_m {
            return Err(fail("unit acts nontrivially"));
        }
        if self.action.mul(&self.action.kron(&id_r)?)? != self.action.mul(&id_m.kron(&base.mu_base)?)? {
            return Err(fail("action is not associative"));
        }
        Ok(())
    }
}

/// A coequalizer of two parallel maps, realized as the cokernel of their
/// difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoequalizerResult {
    pub left: Matrix,
    pub right: Matrix,
    pub rank: usize,
    /// `rank × target`, with canonical (RREF) rows.
    pub quotient: Matrix,
    pivot_selector: Matrix,
}

impl CoequalizerResult {
    pub fn new(left: Matrix, right: Matrix) -> Result<CoequalizerResult> {
        let r = left.sub(&right)?.left_kernel();
        Ok(CoequalizerResult { left, right, rank: r.rank(), pivot_selector: r.pivot_selector(), quotient: r.basis })
    }

    pub fn coequalizes(&self, q: &Matrix) -> Result<bool> {
        Ok(q.mul(&self.left)? == q.mul(&self.right)?)
    }

    /// The unique `u` with `q = u ∘ quotient`, when `q` coequalizes the pair
    /// and `u` is invertible.
    pub fn comparison(&self, q: &Matrix) -> Result<Option<Matrix>> {
        if !self.coequalizes(q)? {
            return Ok(None);
        }
        let u = q.mul(&self.pivot_selector)?;
        if u.mul(&self.quotient)? != *q || u.rows() != u.cols() {
            return Ok(None);
        }
        Ok(u.inverse().ok().map(|_| u))
    }
}

/// `M ⊗_{H_σ} H`: the coequalizer of `φ_M ⊗ H` and `M ⊗ ϕ_H` on
/// `M ⊗ H_σ ⊗ H`, with `ϕ_H = μ ∘ (i_σ ⊗ H)`.
pub fn relative_tensor(s: &WeakStructure, module: &RightModule, side: Side) -> Result<CoequalizerResult> {
    let base = base_monoid(s, side)?;
    module.check(&base)?;
    let field = s.field();
    let left = module.action.kron(&Matrix::identity(field, s.dim()))?;
    let right = Matrix::identity(field, module.rank).kron(&base.left_action)?;
    CoequalizerResult::new(left, right)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub lines: Vec<Check>,
    pub ranks: Vec<(String, usize)>,
    pub notes: Vec<String>,
}

/// Realizes both coequalizer diagrams and both equalizer diagrams and
/// compares them with the Ω splittings.
pub fn check_lemma_diagrams(s: &WeakStructure) -> Result<DiagramReport> {
    let premises = premises_in_mode(s, Mode::Quasigroup)?;
    if !premises.passed() {
        return Err(Error::PremiseFailure(failures(&premises.lines)));
    }
    let fam = omega_family(s)?;
    let field = s.field();
    let id_d = Matrix::identity(field, s.dim());
    let mut lines = Vec::new();
    let mut ranks = Vec::new();

    for (side, index) in [(Side::L, 1u8), (Side::R, 2u8)] {
        let tag = format!("{}{}", side.name(), index);
        let coeq = relative_tensor(s, &RightModule::regular(&base_monoid(s, side)?), side)?;
        let q = fam.q(side, index);
        lines.push(Check::new(format!("coequalizer-{tag}-coequalizes"), coeq.coequalizes(q)?));
        lines.push(Check::new(format!("coequalizer-{tag}-comparison-iso"), coeq.comparison(q)?.is_some()));
        ranks.push((format!("omega-{tag}"), fam.rank(side, index)));
        ranks.push((format!("coequalizer-{tag}"), coeq.rank));
    }

    for (side, index) in [(Side::L, 2u8), (Side::R, 1u8)] {
        let tag = format!("{}{}", side.name(), index);
        let p = base_monoid(s, side)?.proj;
        let delta = s.delta().matrix();
        let a = id_d.kron(&p)?.mul(delta)?.kron(&id_d)?;
        let b = id_d.kron(&p.kron(&id_d)?.mul(delta)?)?;
        let eq = a.sub(&b)?.kernel();
        let image = fam.omega(side, index).matrix().column_space();
        lines.push(Check::new(format!("equalizer-{tag}-image"), eq.basis == image.basis));
        ranks.push((format!("equalizer-{tag}"), eq.rank()));
    }
    Ok(DiagramReport {
        lines,
        ranks,
        notes: vec!["the equalizer for Omega_R^1 maps into H (x) H_R (x) H".into()],
    })
}
