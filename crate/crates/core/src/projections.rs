//! Target and source morphisms, their barred variants, the identity suite
//! they satisfy under (a1)–(a3), and the base monoids `H_L`, `H_R`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::moncat::{chain, tensor_all, Mor};
use crate::report::Check;
use crate::structure::WeakStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::L => "L",
            Side::R => "R",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionSet {
    pub pi_l: Mor,
    pub pi_r: Mor,
    pub pi_l_bar: Mor,
    pub pi_r_bar: Mor,
}

impl ProjectionSet {
    pub fn get(&self, side: Side, barred: bool) -> &Mor {
        match (side, barred) {
            (Side::L, false) => &self.pi_l,
            (Side::R, false) => &self.pi_r,
            (Side::L, true) => &self.pi_l_bar,
            (Side::R, true) => &self.pi_r_bar,
        }
    }
}

pub fn projection_set(s: &WeakStructure) -> Result<ProjectionSet> {
    let h = s.h();
    let c = s.c();
    let em = s.eps_mu();
    let de = s.delta_eta();
    Ok(ProjectionSet {
        pi_l: chain(&[&em.tensor(&h)?, &h.tensor(&c)?, &de.tensor(&h)?])?,
        pi_r: chain(&[&h.tensor(&em)?, &c.tensor(&h)?, &h.tensor(&de)?])?,
        pi_l_bar: chain(&[&h.tensor(&em)?, &de.tensor(&h)?])?,
        pi_r_bar: chain(&[&em.tensor(&h)?, &h.tensor(&de)?])?,
    })
}

/// Everything the identity suite refers to, built once.
struct Kit {
    h: Mor,
    c: Mor,
    eta: Mor,
    mu: Mor,
    eps: Mor,
    delta: Mor,
    em: Mor,
    de: Mor,
    pl: Mor,
    pr: Mor,
    plb: Mor,
    prb: Mor,
    s: WeakStructure,
}

fn t(parts: &[&Mor]) -> Result<Mor> {
    tensor_all(parts)
}

fn same(sides: &[Mor]) -> bool {
    sides.windows(2).all(|w| w[0] == w[1])
}

type Line = (&'static str, fn(&Kit) -> Result<bool>);

fn monoid_lines(k: &Kit, p: &Mor) -> Result<[bool; 3]> {
    let (h, mu) = (&k.h, &k.mu);
    let mu_p_h = chain(&[mu, &t(&[p, h])?])?;
    let mu_h_p = chain(&[mu, &t(&[h, p])?])?;
    Ok([
        chain(&[mu, &t(&[&mu_p_h, h])?])? == chain(&[mu, &t(&[p, mu])?])?,
        chain(&[mu, &t(&[h, &mu_p_h])?])? == chain(&[mu, &t(&[&mu_h_p, h])?])?,
        chain(&[mu, &t(&[h, &mu_h_p])?])? == chain(&[mu, &t(&[mu, p])?])?,
    ])
}

const LINES: [Line; 32] = [
    ("idempotent-piL", |k| k.pl.is_idempotent()),
    ("idempotent-piR", |k| k.pr.is_idempotent()),
    ("idempotent-piLbar", |k| k.plb.is_idempotent()),
    ("idempotent-piRbar", |k| k.prb.is_idempotent()),
    ("unidadpi", |k| {
        Ok(same(&[
            k.pl.compose(&k.eta)?,
            k.pr.compose(&k.eta)?,
            k.plb.compose(&k.eta)?,
            k.prb.compose(&k.eta)?,
            k.eta.clone(),
        ]))
    }),
    ("counidadpi", |k| {
        Ok(same(&[
            k.eps.compose(&k.pl)?,
            k.eps.compose(&k.pr)?,
            k.eps.compose(&k.plb)?,
            k.eps.compose(&k.prb)?,
            k.eps.clone(),
        ]))
    }),
    ("pi-l", |k| Ok(same(&[k.s.convolve(&k.pl, &k.h)?, k.s.convolve(&k.h, &k.pr)?, k.h.clone()]))),
    ("mu-pi-l", |k| {
        Ok(chain(&[&k.mu, &t(&[&k.h, &k.pl])?])?
            == chain(&[&t(&[&k.em, &k.h])?, &t(&[&k.h, &k.c])?, &t(&[&k.delta, &k.h])?])?)
    }),
    ("mu-pi-r", |k| {
        Ok(chain(&[&k.mu, &t(&[&k.pr, &k.h])?])?
            == chain(&[&t(&[&k.h, &k.em])?, &t(&[&k.c, &k.h])?, &t(&[&k.h, &k.delta])?])?)
    }),
    ("mu-pi-l-var", |k| {
        Ok(chain(&[&k.mu, &t(&[&k.h, &k.plb])?])? == chain(&[&t(&[&k.h, &k.em])?, &t(&[&k.delta, &k.h])?])?)
    }),
    ("mu-pi-r-var", |k| {
        Ok(chain(&[&k.mu, &t(&[&k.prb, &k.h])?])? == chain(&[&t(&[&k.em, &k.h])?, &t(&[&k.h, &k.delta])?])?)
    }),
    ("delta-pi-l", |k| {
        Ok(chain(&[&t(&[&k.h, &k.pl])?, &k.delta])?
            == chain(&[&t(&[&k.mu, &k.h])?, &t(&[&k.h, &k.c])?, &t(&[&k.de, &k.h])?])?)
    }),
    ("delta-pi-r", |k| {
        Ok(chain(&[&t(&[&k.pr, &k.h])?, &k.delta])?
            == chain(&[&t(&[&k.h, &k.mu])?, &t(&[&k.c, &k.h])?, &t(&[&k.h, &k.de])?])?)
    }),
    ("pi-l-mu-pi-l", |k| {
        Ok(same(&[
            chain(&[&k.pl, &k.mu, &t(&[&k.h, &k.pl])?])?,
            chain(&[&k.pl, &k.mu])?,
            chain(&[&k.pl, &k.mu, &t(&[&k.h, &k.plb])?])?,
        ]))
    }),
    ("pi-delta-mu-pi-3", |k| {
        Ok(same(&[
            chain(&[&t(&[&k.h, &k.pl])?, &k.delta, &k.pl])?,
            chain(&[&k.delta, &k.pl])?,
            chain(&[&t(&[&k.h, &k.prb])?, &k.delta, &k.pl])?,
        ]))
    }),
    ("pi-l-barra-delta", |k| {
        Ok(chain(&[&t(&[&k.plb, &k.h])?, &k.delta])? == chain(&[&t(&[&k.h, &k.mu])?, &t(&[&k.de, &k.h])?])?)
    }),
    ("pi-r-barra-delta", |k| {
        Ok(chain(&[&t(&[&k.h, &k.prb])?, &k.delta])? == chain(&[&t(&[&k.mu, &k.h])?, &t(&[&k.h, &k.de])?])?)
    }),
    ("pi-delta-mu-pi-4", |k| {
        Ok(same(&[
            chain(&[&t(&[&k.pr, &k.h])?, &k.delta, &k.pr])?,
            chain(&[&k.delta, &k.pr])?,
            chain(&[&t(&[&k.plb, &k.h])?, &k.delta, &k.pr])?,
        ]))
    }),
    ("doblepiLmu", |k| {
        let pp = t(&[&k.pl, &k.pl])?;
        Ok(chain(&[&k.mu, &pp])? == chain(&[&k.pl, &k.mu, &pp])?)
    }),
    ("doblepiRmu", |k| {
        let pp = t(&[&k.pr, &k.pr])?;
        Ok(chain(&[&k.mu, &pp])? == chain(&[&k.pr, &k.mu, &pp])?)
    }),
    ("pi-composition-2", |k| {
        Ok(k.prb.compose(&k.pl)? == k.pl
            && k.plb.compose(&k.pr)? == k.pr
            && k.pl.compose(&k.plb)? == k.pl
            && k.prb.compose(&k.pl)? == k.pl)
    }),
    ("PiLRconvolution", |k| Ok(k.s.convolve(&k.pl, &k.pl)? == k.pl && k.s.convolve(&k.pr, &k.pr)? == k.pr)),
    ("aux-1-monoid-hl", |k| {
        Ok(chain(&[&k.delta, &k.mu, &t(&[&k.pl, &k.h])?])?
            == chain(&[&t(&[&k.mu, &k.h])?, &t(&[&k.pl, &k.delta])?])?)
    }),
    ("aux-2-monoid-hl", |k| {
        Ok(chain(&[&k.delta, &k.mu, &t(&[&k.h, &k.pl])?])?
            == chain(&[&t(&[&k.mu, &k.h])?, &t(&[&k.h, &k.c])?, &t(&[&k.delta, &k.pl])?])?)
    }),
    ("aux-1-monoid-hr", |k| {
        Ok(chain(&[&k.delta, &k.mu, &t(&[&k.h, &k.pr])?])?
            == chain(&[&t(&[&k.h, &k.mu])?, &t(&[&k.delta, &k.pr])?])?)
    }),
    ("aux-2-monoid-hr", |k| {
        Ok(chain(&[&k.delta, &k.mu, &t(&[&k.pr, &k.h])?])?
            == chain(&[&t(&[&k.h, &k.mu])?, &t(&[&k.c, &k.h])?, &t(&[&k.pr, &k.delta])?])?)
    }),
    ("monoid-hl-1", |k| Ok(monoid_lines(k, &k.pl)?[0])),
    ("monoid-hl-2", |k| Ok(monoid_lines(k, &k.pl)?[1])),
    ("monoid-hl-3", |k| Ok(monoid_lines(k, &k.pl)?[2])),
    ("monoid-hr-1", |k| Ok(monoid_lines(k, &k.pr)?[0])),
    ("monoid-hr-2", |k| Ok(monoid_lines(k, &k.pr)?[1])),
    ("monoid-hr-3", |k| Ok(monoid_lines(k, &k.pr)?[2])),
];

/// Names of the identity lines, in report order.
pub fn identity_names() -> Vec<&'static str> {
    LINES.iter().map(|(id, _)| *id).collect()
}

/// Evaluates every identity line exactly. The report always contains all
/// lines, whether or not the premises hold.
pub fn check_projection_identities(s: &WeakStructure) -> Result<Vec<Check>> {
    let p = projection_set(s)?;
    let kit = Kit {
        h: s.h(),
        c: s.c(),
        eta: s.eta().clone(),
        mu: s.mu().clone(),
        eps: s.eps().clone(),
        delta: s.delta().clone(),
        em: s.eps_mu(),
        de: s.delta_eta(),
        pl: p.pi_l,
        pr: p.pi_r,
        plb: p.pi_l_bar,
        prb: p.pi_r_bar,
        s: s.clone(),
    };
    LINES
        .par_iter()
        .map(|(id, line)| Ok(Check::new(*id, line(&kit)?)))
        .collect()
}

/// The image of `Π^L` or `Π^R` with its induced monoid structure and the
/// actions of that monoid on `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseMonoid {
    pub side: Side,
    pub rank: usize,
    /// `d × r`
    pub inj: Matrix,
    /// `r × d`
    pub proj: Matrix,
    /// `r × 1`
    pub eta_base: Matrix,
    /// `r × r²`
    pub mu_base: Matrix,
    /// `μ ∘ (H ⊗ i)`, `d × (d·r)`
    pub right_action: Matrix,
    /// `μ ∘ (i ⊗ H)`, `d × (r·d)`
    pub left_action: Matrix,
}

pub fn base_monoid(s: &WeakStructure, side: Side) -> Result<BaseMonoid> {
    let p = projection_set(s)?;
    let split = p.get(side, false).split()?;
    let field = s.field();
    let d = s.dim();
    let r = split.rank;
    let id_d = Matrix::identity(field, d);
    let id_r = Matrix::identity(field, r);
    let mu = s.mu().matrix();
    let eta_base = split.proj.mul(s.eta().matrix())?;
    let mu_base = split.proj.mul(mu)?.mul(&split.inj.kron(&split.inj)?)?;
    let right_action = mu.mul(&id_d.kron(&split.inj)?)?;
    let left_action = mu.mul(&split.inj.kron(&id_d)?)?;

    let monoid_fail = |what: &str| Error::MonoidAxiomFailure(format!("H_{}: {what}", side.name()));
    if mu_base.mul(&eta_base.kron(&id_r)?)? != id_r || mu_base.mul(&id_r.kron(&eta_base)?)? != id_r {
        return Err(monoid_fail("unit law"));
    }
    if mu_base.mul(&mu_base.kron(&id_r)?)? != mu_base.mul(&id_r.kron(&mu_base)?)? {
        return Err(monoid_fail("associativity"));
    }
    let module_fail = |what: &str| Error::ModuleLawFailure(format!("H over H_{}: {what}", side.name()));
    if right_action.mul(&id_d.kron(&eta_base)?)? != id_d
        || right_action.mul(&right_action.kron(&id_r)?)? != right_action.mul(&id_d.kron(&mu_base)?)?
    {
        return Err(module_fail("right action"));
    }
    if left_action.mul(&eta_base.kron(&id_d)?)? != id_d
        || left_action.mul(&id_r.kron(&left_action)?)? != left_action.mul(&mu_base.kron(&id_d)?)?
    {
        return Err(module_fail("left action"));
    }
    Ok(BaseMonoid {
        side,
        rank: r,
        inj: split.inj,
        proj: split.proj,
        eta_base,
        mu_base,
        right_action,
        left_action,
    })
}
