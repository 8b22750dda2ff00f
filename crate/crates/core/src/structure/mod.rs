//! Structure-constant model of a unital magma / comonoid pair (or monoid /
//! counital comagma pair) on a finite dimensional `H`.

mod builders;
mod file;

pub use builders::{
    cyclic_group_table, direct_sum, group_algebra, groupoid_algebra, loop_algebra, pair_groupoid, steiner_affine_table,
    steiner_fano_table, symmetric_group_s3_table, trivial, Example, Groupoid,
};
pub use file::{from_json, to_json};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::moncat::{chain, tensor_all, Mor};
use crate::report::{all_hold, Check};

/// Which half of the structure is allowed to be non-(co)associative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Unital magma plus comonoid.
    Quasigroup,
    /// Monoid plus counital comagma.
    Coquasigroup,
}

impl Mode {
    pub fn flipped(self) -> Mode {
        match self {
            Mode::Quasigroup => Mode::Coquasigroup,
            Mode::Coquasigroup => Mode::Quasigroup,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakStructure {
    field: Field,
    dim: usize,
    eta: Mor,
    mu: Mor,
    eps: Mor,
    delta: Mor,
    lambda: Option<Mor>,
    mode: Mode,
    basis: Option<Vec<String>>,
}

impl WeakStructure {
    /// Assembles a structure after checking the shape of every tensor. The
    /// algebraic laws are not checked here; see [`validate_premises`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: Field,
        dim: usize,
        eta: Mor,
        mu: Mor,
        eps: Mor,
        delta: Mor,
        lambda: Option<Mor>,
        mode: Mode,
        basis: Option<Vec<String>>,
    ) -> Result<WeakStructure> {
        if dim == 0 {
            return Err(Error::ShapeMismatch("dim H must be positive".into()));
        }
        let expect = |name: &str, m: &Mor, src: usize, dst: usize| -> Result<()> {
            if m.dim() != dim || m.src() != src || m.dst() != dst || m.field() != field {
                return Err(Error::ShapeMismatch(format!(
                    "{name} must be H^{src} -> H^{dst} over {field:?} with dim {dim}"
                )));
            }
            Ok(())
        };
        expect("unit", &eta, 0, 1)?;
        expect("product", &mu, 2, 1)?;
        expect("counit", &eps, 1, 0)?;
        expect("coproduct", &delta, 1, 2)?;
        if let Some(l) = &lambda {
            expect("antipode", l, 1, 1)?;
        }
        if let Some(b) = &basis {
            if b.len() != dim {
                return Err(Error::ShapeMismatch(format!("{} basis labels for dim {dim}", b.len())));
            }
        }
        Ok(WeakStructure { field, dim, eta, mu, eps, delta, lambda, mode, basis })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn basis(&self) -> Option<&[String]> {
        self.basis.as_deref()
    }

    pub fn eta(&self) -> &Mor {
        &self.eta
    }

    pub fn mu(&self) -> &Mor {
        &self.mu
    }

    pub fn eps(&self) -> &Mor {
        &self.eps
    }

    pub fn delta(&self) -> &Mor {
        &self.delta
    }

    pub fn lambda(&self) -> Result<&Mor> {
        self.lambda.as_ref().ok_or(Error::MissingAntipode)
    }

    pub fn has_lambda(&self) -> bool {
        self.lambda.is_some()
    }

    pub fn id(&self, arity: usize) -> Mor {
        Mor::identity(self.field, self.dim, arity)
    }

    /// `id_H`.
    pub fn h(&self) -> Mor {
        self.id(1)
    }

    /// The symmetry `c_{H,H}`.
    pub fn c(&self) -> Mor {
        Mor::swap(self.field, self.dim, 2, 1).expect("swap(2, 1) is in range")
    }

    /// `f ∗ g = μ ∘ (f ⊗ g) ∘ δ`.
    pub fn convolve(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        for m in [f, g] {
            if m.src() != 1 || m.dst() != 1 {
                return Err(Error::ArityMismatch(format!(
                    "convolution needs H -> H maps, got H^{} -> H^{}",
                    m.src(),
                    m.dst()
                )));
            }
        }
        chain(&[&self.mu, &f.tensor(g)?, &self.delta])
    }

    /// `δ ∘ η`.
    pub fn delta_eta(&self) -> Mor {
        self.delta.compose(&self.eta).expect("unit then coproduct")
    }

    /// `ε ∘ μ`.
    pub fn eps_mu(&self) -> Mor {
        self.eps.compose(&self.mu).expect("product then counit")
    }

    pub fn with_lambda(&self, lambda: Mor) -> Result<WeakStructure> {
        let mut s = self.clone();
        s.lambda = Some(lambda);
        WeakStructure::new(s.field, s.dim, s.eta, s.mu, s.eps, s.delta, s.lambda, s.mode, s.basis)
    }

    /// Copy without the antipode.
    pub fn strip_lambda(&self) -> WeakStructure {
        WeakStructure { lambda: None, ..self.clone() }
    }

    pub fn with_mode(&self, mode: Mode) -> WeakStructure {
        WeakStructure { mode, ..self.clone() }
    }

    pub fn with_basis(&self, basis: Option<Vec<String>>) -> WeakStructure {
        assert!(basis.as_ref().map_or(true, |b| b.len() == self.dim), "one label per basis vector");
        WeakStructure { basis, ..self.clone() }
    }

    pub(crate) fn with_tensors(&self, eta: Mor, mu: Mor, eps: Mor, delta: Mor) -> Result<WeakStructure> {
        WeakStructure::new(
            self.field,
            self.dim,
            eta,
            mu,
            eps,
            delta,
            self.lambda.clone(),
            self.mode,
            self.basis.clone(),
        )
    }

    pub fn is_associative(&self) -> Result<bool> {
        let h = self.h();
        Ok(chain(&[&self.mu, &self.mu.tensor(&h)?])? == chain(&[&self.mu, &h.tensor(&self.mu)?])?)
    }

    pub fn is_coassociative(&self) -> Result<bool> {
        let h = self.h();
        Ok(chain(&[&self.delta.tensor(&h)?, &self.delta])? == chain(&[&h.tensor(&self.delta)?, &self.delta])?)
    }

    /// `δ_{H⊗H} = (H ⊗ c ⊗ H) ∘ (δ ⊗ δ)`.
    pub fn delta_hh(&self) -> Result<Mor> {
        let h = self.h();
        chain(&[&tensor_all(&[&h, &self.c(), &h])?, &self.delta.tensor(&self.delta)?])
    }

    /// Maps every tensor into the prime field `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<WeakStructure> {
        let field = Field::prime(p)?;
        let conv = |m: &Mor| -> Result<Mor> {
            let triplets = m
                .matrix()
                .entries()
                .map(|(i, j, v)| {
                    let q = v.as_rational().ok_or(Error::MixedFields)?;
                    Ok((i, j, field.from_rational(q)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let mat = crate::matrix::Matrix::from_triplets(field, m.matrix().rows(), m.matrix().cols(), triplets)?;
            Mor::new(m.dim(), m.src(), m.dst(), mat)
        };
        WeakStructure::new(
            field,
            self.dim,
            conv(&self.eta)?,
            conv(&self.mu)?,
            conv(&self.eps)?,
            conv(&self.delta)?,
            self.lambda.as_ref().map(conv).transpose()?,
            self.mode,
            self.basis.clone(),
        )
    }
}

/// The structure on the dual space obtained by transposing every tensor:
/// `μ' = δᵀ, δ' = μᵀ, η' = εᵀ, ε' = ηᵀ, λ' = λᵀ`, with the mode flipped.
pub fn dualize(s: &WeakStructure) -> WeakStructure {
    WeakStructure {
        field: s.field,
        dim: s.dim,
        eta: s.eps.transpose(),
        mu: s.delta.transpose(),
        eps: s.eta.transpose(),
        delta: s.mu.transpose(),
        lambda: s.lambda.as_ref().map(Mor::transpose),
        mode: s.mode.flipped(),
        basis: s.basis.clone(),
    }
}

/// Per-condition verdicts on the antipode-free hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PremiseReport {
    pub mode: Mode,
    pub braiding: String,
    pub lines: Vec<Check>,
}

impl PremiseReport {
    pub fn passed(&self) -> bool {
        all_hold(&self.lines)
    }

    pub fn line(&self, id: &str) -> Option<&Check> {
        self.lines.iter().find(|c| c.id == id)
    }
}

/// Name of the line checking the transposed condition in the other mode.
pub fn dual_premise_line(id: &str) -> Option<&'static str> {
    const PAIRS: [(&str, &str); 11] = [
        ("unit-left", "counit-left"),
        ("unit-right", "counit-right"),
        ("counit-left", "unit-left"),
        ("counit-right", "unit-right"),
        ("coassociativity", "associativity"),
        ("a1", "b1"),
        ("a2-assoc", "b3-coassoc"),
        ("a2-split", "b3-mu"),
        ("a2-split-inv", "b3-mu-inv"),
        ("a3-mu", "b2-split"),
        ("a3-mu-inv", "b2-split-inv"),
    ];
    PAIRS
        .iter()
        .find_map(|(a, b)| (*a == id).then_some(*b))
        .or_else(|| PAIRS.iter().find_map(|(a, b)| (*b == id).then_some(*a)))
        .or(match id {
            "associativity" => Some("coassociativity"),
            _ => None,
        })
}

/// Checks the hypotheses of the structure's own mode.
pub fn validate_premises(s: &WeakStructure) -> Result<PremiseReport> {
    premises_in_mode(s, s.mode)
}

/// Checks the unit/counit laws, the (co)associativity demanded by `mode`,
/// and the three compatibility conditions of that mode. The braiding is the
/// symmetric swap, so every `c⁻¹` branch is evaluated with `c`.
pub fn premises_in_mode(s: &WeakStructure, mode: Mode) -> Result<PremiseReport> {
    let h = s.h();
    let c = s.c();
    let (eta, mu, eps, delta) = (s.eta(), s.mu(), s.eps(), s.delta());
    let eps_mu = s.eps_mu();
    let delta_eta = s.delta_eta();
    let mut lines = vec![
        Check::chain("unit-left", &[chain(&[mu, &eta.tensor(&h)?])?, h.clone()]),
        Check::chain("unit-right", &[chain(&[mu, &h.tensor(eta)?])?, h.clone()]),
        Check::chain("counit-left", &[chain(&[&eps.tensor(&h)?, delta])?, h.clone()]),
        Check::chain("counit-right", &[chain(&[&h.tensor(eps)?, delta])?, h.clone()]),
    ];

    // ε∘μ∘(μ⊗H), ε∘μ∘(H⊗μ), ((ε∘μ)⊗(ε∘μ))∘(H⊗δ⊗H), same with c∘δ.
    let a2_lhs = chain(&[&eps_mu, &mu.tensor(&h)?])?;
    let a2_rassoc = chain(&[&eps_mu, &h.tensor(mu)?])?;
    let a2_split = chain(&[&eps_mu.tensor(&eps_mu)?, &tensor_all(&[&h, delta, &h])?])?;
    let a2_split_inv = chain(&[
        &eps_mu.tensor(&eps_mu)?,
        &tensor_all(&[&h, &c.compose(delta)?, &h])?,
    ])?;
    // (δ⊗H)∘δ∘η, (H⊗δ)∘δ∘η, (H⊗μ⊗H)∘(δη⊗δη), same with μ∘c.
    let a3_lhs = chain(&[&delta.tensor(&h)?, &delta_eta])?;
    let a3_rassoc = chain(&[&h.tensor(delta)?, &delta_eta])?;
    let a3_mu = chain(&[&tensor_all(&[&h, mu, &h])?, &delta_eta.tensor(&delta_eta)?])?;
    let a3_mu_inv = chain(&[
        &tensor_all(&[&h, &mu.compose(&c)?, &h])?,
        &delta_eta.tensor(&delta_eta)?,
    ])?;
    let lhs1 = s.delta().compose(mu)?;
    let rhs1 = chain(&[&mu.tensor(mu)?, &s.delta_hh()?])?;

    match mode {
        Mode::Quasigroup => {
            lines.push(Check::new("coassociativity", s.is_coassociative()?));
            lines.push(Check::chain("a1", &[lhs1, rhs1]));
            lines.push(Check::chain("a2-assoc", &[a2_lhs.clone(), a2_rassoc]));
            lines.push(Check::chain("a2-split", &[a2_lhs.clone(), a2_split]));
            lines.push(Check::chain("a2-split-inv", &[a2_lhs, a2_split_inv]));
            lines.push(Check::chain("a3-mu", &[a3_lhs.clone(), a3_mu]));
            lines.push(Check::chain("a3-mu-inv", &[a3_lhs, a3_mu_inv]));
        }
        Mode::Coquasigroup => {
            lines.push(Check::new("associativity", s.is_associative()?));
            lines.push(Check::chain("b1", &[lhs1, rhs1]));
            lines.push(Check::chain("b2-split", &[a2_lhs.clone(), a2_split]));
            lines.push(Check::chain("b2-split-inv", &[a2_lhs, a2_split_inv]));
            lines.push(Check::chain("b3-coassoc", &[a3_lhs.clone(), a3_rassoc]));
            lines.push(Check::chain("b3-mu", &[a3_lhs.clone(), a3_mu]));
            lines.push(Check::chain("b3-mu-inv", &[a3_lhs, a3_mu_inv]));
        }
    }
    Ok(PremiseReport { mode, braiding: "symmetric base: c^-1 = c".into(), lines })
}

/// Which structure tensor a perturbation edits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Mult,
    Comult,
    Unit,
    Counit,
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Target> {
        match s {
            "mult" | "mu" => Ok(Target::Mult),
            "comult" | "delta" => Ok(Target::Comult),
            "unit" | "eta" => Ok(Target::Unit),
            "counit" | "eps" => Ok(Target::Counit),
            other => Err(Error::Format(format!("unknown perturbation target {other:?}"))),
        }
    }
}

/// A single structure-constant edit, enough to undo it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub target: Target,
    pub row: usize,
    pub col: usize,
    pub old: Scalar,
    pub new: Scalar,
}

impl Perturbation {
    pub fn restore(&self, s: &WeakStructure) -> Result<WeakStructure> {
        set_entry(s, self.target, self.row, self.col, self.old.clone())
    }
}

fn set_entry(s: &WeakStructure, target: Target, row: usize, col: usize, v: Scalar) -> Result<WeakStructure> {
    let edit = |m: &Mor| -> Result<Mor> {
        let mut mat = m.matrix().clone();
        mat.set(row, col, v.clone())?;
        Mor::new(m.dim(), m.src(), m.dst(), mat)
    };
    let (mut eta, mut mu, mut eps, mut delta) = (s.eta.clone(), s.mu.clone(), s.eps.clone(), s.delta.clone());
    match target {
        Target::Mult => mu = edit(&mu)?,
        Target::Comult => delta = edit(&delta)?,
        Target::Unit => eta = edit(&eta)?,
        Target::Counit => eps = edit(&eps)?,
    }
    s.with_tensors(eta, mu, eps, delta)
}

/// Adds one to a single seed-chosen entry of the target tensor.
pub fn perturb(s: &WeakStructure, target: Target, seed: u64) -> Result<(WeakStructure, Perturbation)> {
    let m = match target {
        Target::Mult => &s.mu,
        Target::Comult => &s.delta,
        Target::Unit => &s.eta,
        Target::Counit => &s.eps,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let row = rng.gen_range(0..m.matrix().rows());
    let col = rng.gen_range(0..m.matrix().cols());
    let old = m.matrix().get(row, col);
    let new = &old + &s.field.one();
    let perturbed = set_entry(s, target, row, col, new.clone())?;
    Ok((perturbed, Perturbation { target, row, col, old, new }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_structure_passes_both_modes() {
        let t = trivial();
        assert!(validate_premises(&t).unwrap().passed());
        assert!(premises_in_mode(&t, Mode::Coquasigroup).unwrap().passed());
    }

    #[test]
    fn dual_line_names_are_involutive() {
        for id in [
            "unit-left", "counit-right", "coassociativity", "associativity", "a1", "b1", "a2-assoc", "a2-split",
            "a3-mu-inv", "b2-split", "b3-coassoc",
        ] {
            let d = dual_premise_line(id).unwrap();
            assert_eq!(dual_premise_line(d), Some(id));
        }
    }

    #[test]
    fn perturb_then_restore() {
        let p2 = Example::PairGroupoid.build();
        for target in [Target::Mult, Target::Comult, Target::Unit, Target::Counit] {
            let (bad, edit) = perturb(&p2, target, 1).unwrap();
            assert_ne!(bad, p2);
            assert_eq!(edit.restore(&bad).unwrap(), p2);
        }
    }

    #[test]
    fn perturbation_is_seed_deterministic() {
        let p2 = Example::PairGroupoid.build();
        assert_eq!(perturb(&p2, Target::Mult, 7).unwrap(), perturb(&p2, Target::Mult, 7).unwrap());
    }

    #[test]
    fn shape_checked_on_construction() {
        let t = trivial();
        let bad = WeakStructure::new(
            t.field(),
            1,
            t.mu().clone(),
            t.mu().clone(),
            t.eps().clone(),
            t.delta().clone(),
            None,
            Mode::Quasigroup,
            None,
        );
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
    }
}
