//! JSON structure files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::matrix::Matrix;
use crate::moncat::Mor;

use super::{Mode, WeakStructure};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    field: Field,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    unit: Vec<String>,
    counit: Vec<String>,
    mult: Vec<Entry>,
    comult: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode: Option<Vec<Vec<String>>>,
    mode: Mode,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    i: usize,
    j: usize,
    k: usize,
    v: String,
}

/// Canonical JSON text: entries sorted by `(i, j, k)`, zeros omitted,
/// trailing newline.
pub fn to_json(s: &WeakStructure) -> String {
    let d = s.dim();
    let column = |m: &Mor| (0..d).map(|x| m.matrix().get(x, 0).to_string()).collect();
    let row = |m: &Mor| (0..d).map(|x| m.matrix().get(0, x).to_string()).collect();
    // μ: row c, column a·d+b. δ: row a·d+b, column c.
    let mut mult: Vec<Entry> = s
        .mu()
        .matrix()
        .entries()
        .map(|(c, ab, v)| Entry { i: ab / d, j: ab % d, k: c, v: v.to_string() })
        .collect();
    let mut comult: Vec<Entry> = s
        .delta()
        .matrix()
        .entries()
        .map(|(ab, c, v)| Entry { i: ab / d, j: ab % d, k: c, v: v.to_string() })
        .collect();
    mult.sort_by_key(|e| (e.i, e.j, e.k));
    comult.sort_by_key(|e| (e.i, e.j, e.k));
    let file = StructureFile {
        field: s.field(),
        dim: d,
        basis: s.basis().map(<[String]>::to_vec),
        unit: column(s.eta()),
        counit: row(s.eps()),
        mult,
        comult,
        antipode: s.lambda.as_ref().map(|l| {
            (0..d).map(|i| (0..d).map(|j| l.matrix().get(i, j).to_string()).collect()).collect()
        }),
        mode: s.mode(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("structure file serializes");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> Result<WeakStructure> {
    let file: StructureFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let field = match file.field {
        Field::Prime { p } => Field::prime(p)?,
        f => f,
    };
    let d = file.dim;
    if d == 0 {
        return Err(Error::Format("dim must be positive".into()));
    }
    let parse = |v: &str| -> Result<Scalar> { field.parse(v) };
    let vector = |name: &str, values: &[String]| -> Result<Vec<Scalar>> {
        if values.len() != d {
            return Err(Error::Format(format!("{name} has {} entries, expected {d}", values.len())));
        }
        values.iter().map(|v| parse(v)).collect()
    };
    let eta = Matrix::from_dense(field, d, 1, vector("unit", &file.unit)?)?;
    let eps = Matrix::from_dense(field, 1, d, vector("counit", &file.counit)?)?;
    let tensor = |name: &str, entries: &[Entry], product: bool| -> Result<Matrix> {
        let mut seen = std::collections::BTreeSet::new();
        let mut triplets = Vec::with_capacity(entries.len());
        for e in entries {
            if e.i >= d || e.j >= d || e.k >= d {
                return Err(Error::Format(format!("{name} index ({}, {}, {}) out of range", e.i, e.j, e.k)));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(Error::Format(format!("{name} entry ({}, {}, {}) repeated", e.i, e.j, e.k)));
            }
            let pair = e.i * d + e.j;
            let (r, c) = if product { (e.k, pair) } else { (pair, e.k) };
            triplets.push((r, c, parse(&e.v)?));
        }
        let (rows, cols) = if product { (d, d * d) } else { (d * d, d) };
        Matrix::from_triplets(field, rows, cols, triplets)
    };
    let mu = tensor("mult", &file.mult, true)?;
    let delta = tensor("comult", &file.comult, false)?;
    let lambda = match &file.antipode {
        None => None,
        Some(rows) => {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::Format(format!("antipode must be {d}x{d}")));
            }
            let values = rows.iter().flatten().map(|v| parse(v)).collect::<Result<Vec<_>>>()?;
            Some(Mor::new(d, 1, 1, Matrix::from_dense(field, d, d, values)?)?)
        }
    };
    WeakStructure::new(
        field,
        d,
        Mor::new(d, 0, 1, eta)?,
        Mor::new(d, 2, 1, mu)?,
        Mor::new(d, 1, 0, eps)?,
        Mor::new(d, 1, 2, delta)?,
        lambda,
        file.mode,
        file.basis,
    )
    .map_err(|e| Error::Format(e.to_string()))
}
