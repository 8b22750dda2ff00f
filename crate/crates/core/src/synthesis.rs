//! Antipode axioms, antipode synthesis from the fusion morphisms, and
//! classification of a structure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{almost_colinear, almost_linear, fusion, galois_maps, FusionMaps};
use crate::matrix::Matrix;
use crate::moncat::{chain, tensor_all, Mor};
use crate::projections::{projection_set, Side};
use crate::report::{all_hold, failures, Check};
use crate::structure::{dualize, premises_in_mode, Mode, WeakStructure};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub mode: Mode,
    pub lines: Vec<Check>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        all_hold(&self.lines)
    }

    pub fn line(&self, id: &str) -> Option<&Check> {
        self.lines.iter().find(|c| c.id == id)
    }
}

/// Checks the antipode axioms of the structure's mode: the `a4` family for
/// quasigroups, the `b4` family for coquasigroups.
pub fn verify_axioms(s: &WeakStructure) -> Result<AxiomReport> {
    let lambda = s.lambda()?;
    let p = projection_set(s)?;
    let h = s.h();
    let mu = s.mu();
    let delta = s.delta();
    let (pl, pr) = (&p.pi_l, &p.pi_r);
    let prefix = match s.mode() {
        Mode::Quasigroup => "a4",
        Mode::Coquasigroup => "b4",
    };
    let id = |k: u8| format!("{prefix}-{k}");

    let mut lines = vec![
        Check::chain(id(1), &[pl.clone(), s.convolve(&h, lambda)?]),
        Check::chain(id(2), &[pr.clone(), s.convolve(lambda, &h)?]),
        Check::chain(id(3), &[s.convolve(lambda, pl)?, s.convolve(pr, lambda)?, lambda.clone()]),
    ];
    let lam_mid = tensor_all(&[&h, lambda, &h])?;
    let rest = match s.mode() {
        Mode::Quasigroup => vec![
            Check::chain(
                id(4),
                &[
                    chain(&[mu, &lambda.tensor(mu)?, &delta.tensor(&h)?])?,
                    chain(&[mu, &pr.tensor(&h)?])?,
                ],
            ),
            Check::chain(
                id(5),
                &[
                    chain(&[mu, &h.tensor(mu)?, &lam_mid, &delta.tensor(&h)?])?,
                    chain(&[mu, &pl.tensor(&h)?])?,
                ],
            ),
            Check::chain(
                id(6),
                &[
                    chain(&[mu, &mu.tensor(lambda)?, &h.tensor(delta)?])?,
                    chain(&[mu, &h.tensor(pl)?])?,
                ],
            ),
            Check::chain(
                id(7),
                &[
                    chain(&[mu, &mu.tensor(&h)?, &lam_mid, &h.tensor(delta)?])?,
                    chain(&[mu, &h.tensor(pr)?])?,
                ],
            ),
        ],
        Mode::Coquasigroup => vec![
            Check::chain(
                id(4),
                &[
                    chain(&[&mu.tensor(&h)?, &lambda.tensor(delta)?, delta])?,
                    chain(&[&pr.tensor(&h)?, delta])?,
                ],
            ),
            Check::chain(
                id(5),
                &[
                    chain(&[&mu.tensor(&h)?, &lam_mid, &h.tensor(delta)?, delta])?,
                    chain(&[&pl.tensor(&h)?, delta])?,
                ],
            ),
            Check::chain(
                id(6),
                &[
                    chain(&[&h.tensor(mu)?, &delta.tensor(lambda)?, delta])?,
                    chain(&[&h.tensor(pl)?, delta])?,
                ],
            ),
            Check::chain(
                id(7),
                &[
                    chain(&[&h.tensor(mu)?, &lam_mid, &delta.tensor(&h)?, delta])?,
                    chain(&[&h.tensor(pr)?, delta])?,
                ],
            ),
        ],
    };
    lines.extend(rest);
    let notes = match s.mode() {
        Mode::Quasigroup => vec![],
        Mode::Coquasigroup => vec!["b4-7 is checked as (H (x) mu)(H (x) lambda (x) H)(delta (x) H) delta".into()],
    };
    Ok(AxiomReport { mode: s.mode(), lines, notes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    NotInvertibleF { rank: usize, size: usize },
    NotInvertibleG { rank: usize, size: usize },
    AlmostLinearityFailedF,
    AlmostLinearityFailedG,
    LambdaMismatch,
    AxiomFailure { name: String },
    Synthesized,
}

impl Status {
    pub fn is_synthesized(&self) -> bool {
        matches!(self, Status::Synthesized)
    }

    fn renamed_axiom(&self, from: &str, to: &str) -> Status {
        match self {
            Status::AxiomFailure { name } => Status::AxiomFailure { name: name.replacen(from, to, 1) },
            other => other.clone(),
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::NotInvertibleF { rank, size } => write!(f, "NotInvertibleF(rank {rank} of {size})"),
            Status::NotInvertibleG { rank, size } => write!(f, "NotInvertibleG(rank {rank} of {size})"),
            Status::AlmostLinearityFailedF => write!(f, "AlmostLinearityFailedF"),
            Status::AlmostLinearityFailedG => write!(f, "AlmostLinearityFailedG"),
            Status::LambdaMismatch => write!(f, "LambdaMismatch"),
            Status::AxiomFailure { name } => write!(f, "AxiomFailure({name})"),
            Status::Synthesized => write!(f, "Synthesized"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeResult {
    pub status: Status,
    pub lambda: Option<Mor>,
    pub lambda_bar: Option<Mor>,
    pub evidence: Vec<Check>,
    pub notes: Vec<String>,
}

impl AntipodeResult {
    fn stopped(status: Status, evidence: Vec<Check>, notes: Vec<String>) -> AntipodeResult {
        AntipodeResult { status, lambda: None, lambda_bar: None, evidence, notes }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status,
            "lambda": self.lambda.as_ref().map(|m| matrix_strings(m.matrix())),
            "evidence": self.evidence,
            "notes": self.notes,
        })
    }
}

/// Dense rows of `"num/den"` strings.
pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_dense().into_iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect()
}

fn invert(m: &Matrix) -> std::result::Result<Matrix, (usize, usize)> {
    let size = m.rows().max(m.cols());
    match m.rows() == m.cols() {
        true => m.inverse().map_err(|_| (m.rank(), size)),
        false => Err((m.rank(), size)),
    }
}

/// Shared by the three checks that never need an antipode.
fn expression_evidence(s: &WeakStructure, fm: &FusionMaps) -> Result<Vec<Check>> {
    let h = s.h();
    let lf = fm.lifted_f()?;
    let lg = fm.lifted_g()?;
    Ok(vec![
        Check::chain("betaandgammaexpressions-beta", &[lf.clone(), fm.beta.clone()]),
        Check::chain("betaandgammaexpressions-gamma", &[lg.clone(), fm.gamma.clone()]),
        Check::chain(
            "muexpression",
            &[s.mu().clone(), h.tensor(s.eps())?.compose(&lf)?, s.eps().tensor(&h)?.compose(&lg)?],
        ),
        Check::chain(
            "deltaexpression",
            &[s.delta().clone(), lf.compose(&s.eta().tensor(&h)?)?, lg.compose(&h.tensor(s.eta())?)?],
        ),
    ])
}

/// Builds the antipode of a weak Hopf quasigroup candidate from the
/// inverses of the fusion morphisms `f` and `g`.
pub fn synthesize_antipode(s: &WeakStructure) -> Result<AntipodeResult> {
    let premises = premises_in_mode(s, Mode::Quasigroup)?;
    if !premises.passed() {
        return Err(Error::PremiseFailure(failures(&premises.lines)));
    }
    let s = s.strip_lambda().with_mode(Mode::Quasigroup);
    let fm = fusion(&s)?;
    let h = s.h();
    let mut evidence = expression_evidence(&s, &fm)?;

    let f_inv = match invert(&fm.f) {
        Ok(m) => m,
        Err((rank, size)) => return Ok(AntipodeResult::stopped(Status::NotInvertibleF { rank, size }, evidence, vec![])),
    };
    let g_inv = match invert(&fm.g) {
        Ok(m) => m,
        Err((rank, size)) => return Ok(AntipodeResult::stopped(Status::NotInvertibleG { rank, size }, evidence, vec![])),
    };
    let lf = fm.lifted_f_inverse(&f_inv)?;
    let lg = fm.lifted_g_inverse(&g_inv)?;
    if !almost_linear(&s, &lf, Side::L)? {
        return Ok(AntipodeResult::stopped(Status::AlmostLinearityFailedF, evidence, vec![]));
    }
    if !almost_linear(&s, &lg, Side::R)? {
        return Ok(AntipodeResult::stopped(Status::AlmostLinearityFailedG, evidence, vec![]));
    }
    evidence.push(Check::chain(
        "betaequality",
        &[
            h.tensor(s.delta())?.compose(&lf)?,
            chain(&[&lf.tensor(&h)?, &h.tensor(s.delta())?])?,
        ],
    ));
    evidence.push(Check::chain(
        "gammaequality",
        &[
            s.delta().tensor(&h)?.compose(&lg)?,
            chain(&[&h.tensor(&lg)?, &s.delta().tensor(&h)?])?,
        ],
    ));

    let lambda = chain(&[&h.tensor(s.eps())?, &lf, &s.eta().tensor(&h)?])?;
    let lambda_bar = chain(&[&s.eps().tensor(&h)?, &lg, &h.tensor(s.eta())?])?;
    if lambda != lambda_bar {
        return Ok(AntipodeResult {
            status: Status::LambdaMismatch,
            lambda: None,
            lambda_bar: None,
            evidence,
            notes: vec![],
        });
    }
    let with = s.with_lambda(lambda.clone())?;
    let axioms = verify_axioms(&with)?;
    evidence.extend(axioms.lines.iter().cloned());
    if let Some(bad) = axioms.lines.iter().find(|c| !c.holds) {
        let status = Status::AxiomFailure { name: bad.id.clone() };
        return Ok(AntipodeResult { status, lambda: Some(lambda), lambda_bar: Some(lambda_bar), evidence, notes: vec![] });
    }

    let fm = fusion(&with)?;
    let (beta_bar, gamma_bar) = (fm.beta_bar.clone().unwrap(), fm.gamma_bar.clone().unwrap());
    evidence.push(Check::new("f-inverse-formula", fm.f_inverse_formula()? == f_inv));
    evidence.push(Check::new("g-inverse-formula", fm.g_inverse_formula()? == g_inv));
    evidence.push(Check::chain("lifted-f-inverse", &[lf, beta_bar.clone()]));
    evidence.push(Check::chain("lifted-g-inverse", &[lg, gamma_bar.clone()]));
    evidence.push(lambda_chain(&with, &lambda_bar)?);
    let o = &fm.omegas;
    let (beta, gamma) = (&fm.beta, &fm.gamma);
    evidence.push(Check::chain("equalitiesomega-L1", &[o.omega(Side::L, 1).clone(), beta_bar.compose(beta)?]));
    evidence.push(Check::chain("equalitiesomega-R1", &[o.omega(Side::R, 1).clone(), beta.compose(&beta_bar)?]));
    evidence.push(Check::chain("equalitiesomega-L2", &[o.omega(Side::L, 2).clone(), gamma.compose(&gamma_bar)?]));
    evidence.push(Check::chain("equalitiesomega-R2", &[o.omega(Side::R, 2).clone(), gamma_bar.compose(gamma)?]));
    Ok(AntipodeResult { status: Status::Synthesized, lambda: Some(lambda), lambda_bar: Some(lambda_bar), evidence, notes: vec![] })
}

/// `λ = λ∗Π^L = … = λ̄∗Π^L = λ̄`, every intermediate expression evaluated.
fn lambda_chain(s: &WeakStructure, lambda_bar: &Mor) -> Result<Check> {
    let p = projection_set(s)?;
    let lambda = s.lambda()?;
    let (h, mu, delta) = (s.h(), s.mu(), s.delta());
    Check::build("lambda-chain", || {
        Ok(vec![
            lambda.clone(),
            s.convolve(lambda, &p.pi_l)?,
            chain(&[mu, &h.tensor(&p.pi_l)?, &lambda.tensor(&h)?, delta])?,
            chain(&[mu, &mu.tensor(lambda)?, &h.tensor(delta)?, &lambda.tensor(&h)?, delta])?,
            chain(&[mu, &p.pi_r.tensor(&h)?, &h.tensor(lambda)?, delta])?,
            chain(&[mu, &lambda_bar.tensor(mu)?, &delta.tensor(&h)?, &h.tensor(lambda)?, delta])?,
            s.convolve(lambda_bar, &p.pi_l)?,
            lambda_bar.clone(),
        ])
    })
}

/// Synthesis for a weak Hopf coquasigroup candidate. The direct route uses
/// `h = q_L^2 γ j_R^2` and `s = q_R^1 β j_L^1` with colinearity tests; the
/// result is cross-checked against synthesis on the dual structure.
pub fn dual_synthesis(s: &WeakStructure) -> Result<AntipodeResult> {
    let premises = premises_in_mode(s, Mode::Coquasigroup)?;
    if !premises.passed() {
        return Err(Error::PremiseFailure(failures(&premises.lines)));
    }
    let s = s.strip_lambda().with_mode(Mode::Coquasigroup);
    let direct = dual_direct(&s)?;
    let via_dual = synthesize_antipode(&dualize(&s))?;
    let expected_status = via_dual.status.renamed_axiom("a4-", "b4-");
    let expected_lambda = via_dual.lambda.as_ref().map(Mor::transpose);
    if direct.status != expected_status {
        return Err(Error::CrossCheckMismatch(format!(
            "direct route gives {}, dual route gives {}",
            direct.status, expected_status
        )));
    }
    if direct.status.is_synthesized() && direct.lambda != expected_lambda {
        return Err(Error::CrossCheckMismatch("the two routes produce different antipodes".into()));
    }
    let mut out = direct;
    out.evidence.push(Check::new("cross-check-dual", true));
    Ok(out)
}

fn dual_direct(s: &WeakStructure) -> Result<AntipodeResult> {
    let fm = fusion(s)?;
    let h = s.h();
    let mut evidence = expression_evidence(s, &fm)?;
    let notes = vec![
        format!("printed h = q_R^2 gamma j_L^2 has rank {} of {}", fm.h_printed.rank(), fm.h_printed.rows().max(fm.h_printed.cols())),
        format!("printed s = q_L^1 beta j_R^1 has rank {} of {}", fm.s_printed.rank(), fm.s_printed.rows().max(fm.s_printed.cols())),
    ];
    let h_inv = match invert(&fm.g) {
        Ok(m) => m,
        Err((rank, size)) => return Ok(AntipodeResult::stopped(Status::NotInvertibleF { rank, size }, evidence, notes)),
    };
    let s_inv = match invert(&fm.f) {
        Ok(m) => m,
        Err((rank, size)) => return Ok(AntipodeResult::stopped(Status::NotInvertibleG { rank, size }, evidence, notes)),
    };
    let lh = fm.lifted_g_inverse(&h_inv)?;
    let ls = fm.lifted_f_inverse(&s_inv)?;
    if !almost_colinear(s, &lh, Side::L)? {
        return Ok(AntipodeResult::stopped(Status::AlmostLinearityFailedF, evidence, notes));
    }
    if !almost_colinear(s, &ls, Side::R)? {
        return Ok(AntipodeResult::stopped(Status::AlmostLinearityFailedG, evidence, notes));
    }
    let lambda = chain(&[&s.eps().tensor(&h)?, &lh, &h.tensor(s.eta())?])?;
    let lambda_bar = chain(&[&h.tensor(s.eps())?, &ls, &s.eta().tensor(&h)?])?;
    if lambda != lambda_bar {
        return Ok(AntipodeResult::stopped(Status::LambdaMismatch, evidence, notes));
    }
    let with = s.with_lambda(lambda.clone())?;
    let axioms = verify_axioms(&with)?;
    evidence.extend(axioms.lines.iter().cloned());
    let status = match axioms.lines.iter().find(|c| !c.holds) {
        Some(bad) => Status::AxiomFailure { name: bad.id.clone() },
        None => Status::Synthesized,
    };
    Ok(AntipodeResult { status, lambda: Some(lambda), lambda_bar: Some(lambda_bar), evidence, notes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma212 {
    pub associative: bool,
    pub intertwines_f: bool,
    pub intertwines_g: bool,
}

/// `φ_{X_L^1} = q_L^1 (μ ⊗ H)(H ⊗ j_L^1)` and its right counterpart.
fn phi_actions(s: &WeakStructure, fm: &FusionMaps) -> Result<(Matrix, Matrix)> {
    let o = &fm.omegas;
    let id_d = Matrix::identity(s.field(), s.dim());
    let mu_h = s.mu().tensor(&s.h())?;
    let act = |side| o.q(side, 1).mul(mu_h.matrix())?.mul(&id_d.kron(o.j(side, 1))?);
    Ok((act(Side::L)?, act(Side::R)?))
}

/// `ψ_{X_σ^2} = q_σ^2 (H ⊗ μ)(j_σ^2 ⊗ H)`.
fn psi_actions(s: &WeakStructure, fm: &FusionMaps) -> Result<(Matrix, Matrix)> {
    let o = &fm.omegas;
    let id_d = Matrix::identity(s.field(), s.dim());
    let h_mu = s.h().tensor(s.mu())?;
    let act = |side| o.q(side, 2).mul(h_mu.matrix())?.mul(&o.j(side, 2).kron(&id_d)?);
    Ok((act(Side::L)?, act(Side::R)?))
}

/// Whether `f` and `g` intertwine the module actions on the split images.
pub fn lemma212_check(s: &WeakStructure) -> Result<Lemma212> {
    let fm = fusion(s)?;
    let id_d = Matrix::identity(s.field(), s.dim());
    let (phi_l, phi_r) = phi_actions(s, &fm)?;
    let (psi_l, psi_r) = psi_actions(s, &fm)?;
    Ok(Lemma212 {
        associative: s.is_associative()?,
        intertwines_f: fm.f.mul(&phi_l)? == phi_r.mul(&id_d.kron(&fm.f)?)?,
        intertwines_g: fm.g.mul(&psi_r)? == psi_l.mul(&fm.g.kron(&id_d)?)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reason")]
pub enum Verdict {
    HopfAlgebra,
    WeakHopfAlgebra,
    HopfQuasigroup,
    HopfCoquasigroup,
    WeakHopfQuasigroup,
    WeakHopfCoquasigroup,
    NotRecognized(String),
}

impl Verdict {
    /// The verdict expected for the dual structure.
    pub fn dual(&self) -> Verdict {
        match self {
            Verdict::HopfQuasigroup => Verdict::HopfCoquasigroup,
            Verdict::HopfCoquasigroup => Verdict::HopfQuasigroup,
            Verdict::WeakHopfQuasigroup => Verdict::WeakHopfCoquasigroup,
            Verdict::WeakHopfCoquasigroup => Verdict::WeakHopfQuasigroup,
            other => other.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::HopfAlgebra => "HopfAlgebra",
            Verdict::WeakHopfAlgebra => "WeakHopfAlgebra",
            Verdict::HopfQuasigroup => "HopfQuasigroup",
            Verdict::HopfCoquasigroup => "HopfCoquasigroup",
            Verdict::WeakHopfQuasigroup => "WeakHopfQuasigroup",
            Verdict::WeakHopfCoquasigroup => "WeakHopfCoquasigroup",
            Verdict::NotRecognized(_) => "NotRecognized",
        }
    }

    fn same_kind(&self, other: &Verdict) -> bool {
        self.name() == other.name()
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::NotRecognized(why) => write!(f, "NotRecognized({why})"),
            v => f.write_str(v.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub associative: bool,
    pub coassociative: bool,
    /// `ε ∘ μ = ε ⊗ ε` and `ε ∘ η = 1`.
    pub eps_multiplicative: bool,
    /// `δ ∘ η = η ⊗ η` and `δ ∘ μ = (μ ⊗ μ) ∘ δ_{H⊗H}`.
    pub delta_unital: bool,
    /// All four projections equal `η ∘ ε`.
    pub pi_trivial: bool,
}

pub fn flags(s: &WeakStructure) -> Result<Flags> {
    let p = projection_set(s)?;
    let eta_eps = s.eta().compose(s.eps())?;
    let delta_mult = s.delta().compose(s.mu())? == chain(&[&s.mu().tensor(s.mu())?, &s.delta_hh()?])?;
    Ok(Flags {
        associative: s.is_associative()?,
        coassociative: s.is_coassociative()?,
        eps_multiplicative: s.eps_mu() == s.eps().tensor(s.eps())? && s.eps().compose(s.eta())?.matrix().is_identity(),
        delta_unital: s.delta_eta() == s.eta().tensor(s.eta())? && delta_mult,
        pi_trivial: [&p.pi_l, &p.pi_r, &p.pi_l_bar, &p.pi_r_bar].iter().all(|m| **m == eta_eps),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub flags: Flags,
    pub antipode: Option<AntipodeResult>,
    pub evidence: Vec<Check>,
    pub dual_verdict: Verdict,
}

impl Classification {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict.name(),
            "reason": match &self.verdict { Verdict::NotRecognized(r) => Some(r.clone()), _ => None },
            "flags": self.flags,
            "dual_verdict": self.dual_verdict.name(),
            "antipode": self.antipode.as_ref().map(AntipodeResult::to_json),
            "evidence": self.evidence,
        })
    }
}

struct Core {
    verdict: Verdict,
    antipode: Option<AntipodeResult>,
    evidence: Vec<Check>,
}

fn not_recognized(why: impl Into<String>, antipode: Option<AntipodeResult>, evidence: Vec<Check>) -> Core {
    Core { verdict: Verdict::NotRecognized(why.into()), antipode, evidence }
}

/// Runs the synthesis matching `mode`, turning a premise failure into a
/// `NotRecognized` reason.
fn synthesize_in(s: &WeakStructure, mode: Mode) -> Result<std::result::Result<AntipodeResult, String>> {
    let out = match mode {
        Mode::Quasigroup => synthesize_antipode(s),
        Mode::Coquasigroup => dual_synthesis(s),
    };
    match out {
        Ok(r) => Ok(Ok(r)),
        Err(Error::PremiseFailure(lines)) => Ok(Err(format!("premises fail: {}", lines.join(", ")))),
        Err(e) => Err(e),
    }
}

fn classify_core(s: &WeakStructure, fl: &Flags) -> Result<Core> {
    if fl.associative && fl.coassociative {
        return bialgebra_route(s, fl);
    }
    if fl.eps_multiplicative && fl.delta_unital {
        if fl.coassociative {
            return raw_galois_route(s, Mode::Quasigroup);
        }
        if fl.associative {
            return raw_galois_route(s, Mode::Coquasigroup);
        }
        return Ok(not_recognized("neither associative nor coassociative", None, vec![]));
    }
    let mode = match (fl.coassociative, fl.associative) {
        (true, _) => Mode::Quasigroup,
        (false, true) => Mode::Coquasigroup,
        _ => return Ok(not_recognized("neither associative nor coassociative", None, vec![])),
    };
    let r = match synthesize_in(s, mode)? {
        Ok(r) => r,
        Err(why) => return Ok(not_recognized(why, None, vec![])),
    };
    if !r.status.is_synthesized() {
        return Ok(not_recognized(format!("synthesis stopped: {}", r.status), Some(r), vec![]));
    }
    let verdict = match mode {
        Mode::Quasigroup => Verdict::WeakHopfQuasigroup,
        Mode::Coquasigroup => Verdict::WeakHopfCoquasigroup,
    };
    Ok(Core { verdict, antipode: Some(r), evidence: vec![] })
}

/// Associative and coassociative: `f` invertible decides, and the almost
/// linearity of the inverses follows from the intertwining of Lemma-type
/// module actions.
fn bialgebra_route(s: &WeakStructure, fl: &Flags) -> Result<Core> {
    let premises = premises_in_mode(s, Mode::Quasigroup)?;
    if !premises.passed() {
        return Ok(not_recognized(format!("premises fail: {}", failures(&premises.lines).join(", ")), None, vec![]));
    }
    let s = s.strip_lambda().with_mode(Mode::Quasigroup);
    let fm = fusion(&s)?;
    let lemma = lemma212_check(&s)?;
    let mut evidence = vec![
        Check::new("lemma212-f", lemma.intertwines_f),
        Check::new("lemma212-g", lemma.intertwines_g),
    ];
    let f_inv = invert(&fm.f).ok();
    let g_inv = invert(&fm.g).ok();
    evidence.push(Check::new("ii-f", f_inv.is_some()));
    evidence.push(Check::new("ii-g", g_inv.is_some()));
    let id_d = Matrix::identity(s.field(), s.dim());
    if let Some(fi) = &f_inv {
        let (phi_l, phi_r) = phi_actions(&s, &fm)?;
        evidence.push(Check::new("f-inverse-intertwines", phi_l.mul(&id_d.kron(fi)?)? == fi.mul(&phi_r)?));
        evidence.push(Check::new("f-inverse-almost-left-linear", almost_linear(&s, &fm.lifted_f_inverse(fi)?, Side::L)?));
    }
    if let Some(gi) = &g_inv {
        let (psi_l, psi_r) = psi_actions(&s, &fm)?;
        evidence.push(Check::new("g-inverse-intertwines", psi_r.mul(&gi.kron(&id_d)?)? == gi.mul(&psi_l)?));
        evidence.push(Check::new("g-inverse-almost-right-linear", almost_linear(&s, &fm.lifted_g_inverse(gi)?, Side::R)?));
    }
    let r = synthesize_antipode(&s)?;
    if f_inv.is_none() || g_inv.is_none() {
        let which = if f_inv.is_none() { "f" } else { "g" };
        return Ok(not_recognized(format!("{which} is not an isomorphism"), Some(r), evidence));
    }
    if !all_hold(&evidence) || !r.status.is_synthesized() {
        return Ok(not_recognized(format!("bialgebra route failed: {}", r.status), Some(r), evidence));
    }
    let verdict = if fl.pi_trivial { Verdict::HopfAlgebra } else { Verdict::WeakHopfAlgebra };
    Ok(Core { verdict, antipode: Some(r), evidence })
}

/// Counit and coproduct are unital magma morphisms: the Galois maps
/// themselves must be invertible with almost (co)linear inverses.
fn raw_galois_route(s: &WeakStructure, mode: Mode) -> Result<Core> {
    let (beta, gamma) = galois_maps(s)?;
    let mut evidence = Vec::new();
    let (bi, gi) = (beta.invert().ok(), gamma.invert().ok());
    evidence.push(Check::new("beta-invertible", bi.is_some()));
    evidence.push(Check::new("gamma-invertible", gi.is_some()));
    let (Some(bi), Some(gi)) = (bi, gi) else {
        return Ok(not_recognized("a Galois map is not invertible", None, evidence));
    };
    match mode {
        Mode::Quasigroup => {
            evidence.push(Check::new("beta-inverse-almost-left-linear", almost_linear(s, &bi, Side::L)?));
            evidence.push(Check::new("gamma-inverse-almost-right-linear", almost_linear(s, &gi, Side::R)?));
        }
        Mode::Coquasigroup => {
            evidence.push(Check::new("beta-inverse-almost-right-colinear", almost_colinear(s, &bi, Side::R)?));
            evidence.push(Check::new("gamma-inverse-almost-left-colinear", almost_colinear(s, &gi, Side::L)?));
        }
    }
    if !all_hold(&evidence) {
        return Ok(not_recognized(format!("Galois inverses fail: {}", failures(&evidence).join(", ")), None, evidence));
    }
    let r = match synthesize_in(s, mode)? {
        Ok(r) => r,
        Err(why) => return Ok(not_recognized(why, None, evidence)),
    };
    if !r.status.is_synthesized() {
        return Ok(not_recognized(format!("synthesis stopped: {}", r.status), Some(r), evidence));
    }
    let verdict = match mode {
        Mode::Quasigroup => Verdict::HopfQuasigroup,
        Mode::Coquasigroup => Verdict::HopfCoquasigroup,
    };
    Ok(Core { verdict, antipode: Some(r), evidence })
}

/// Classifies `s` and its dual, and requires the two verdicts to agree.
pub fn classify(s: &WeakStructure) -> Result<Classification> {
    let fl = flags(s)?;
    let core = classify_core(s, &fl)?;
    let d = dualize(s);
    let dual_core = classify_core(&d, &flags(&d)?)?;
    let mut verdict = core.verdict;
    if !dual_core.verdict.same_kind(&verdict.dual()) {
        verdict = Verdict::NotRecognized(format!("dual pass disagrees: {} vs {}", verdict, dual_core.verdict));
    }
    Ok(Classification { verdict, flags: fl, antipode: core.antipode, evidence: core.evidence, dual_verdict: dual_core.verdict })
}
