//! Bundled examples: group algebras, groupoid algebras and inverse-property
//! loop algebras, all with grouplike coproduct `δ(x) = x ⊗ x`.

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::matrix::Matrix;
use crate::moncat::Mor;

use super::{Mode, WeakStructure};

const Q: Field = Field::Rational;

/// Builds the algebra with basis `labels`, product `prod[a][b]` (or zero),
/// unit `Σ units`, grouplike coproduct, `ε ≡ 1` and antipode `x ↦ inv[x]`.
fn grouplike(labels: Vec<String>, prod: &[Vec<Option<usize>>], units: &[usize], inv: &[usize]) -> WeakStructure {
    let d = labels.len();
    let one = || Q.one();
    let eta = Matrix::from_triplets(Q, d, 1, units.iter().map(|u| (*u, 0, one()))).expect("unit in range");
    let mu = Matrix::from_triplets(
        Q,
        d,
        d * d,
        (0..d).flat_map(|a| (0..d).filter_map(move |b| prod[a][b].map(|c| (c, a * d + b, one())))),
    )
    .expect("product in range");
    let eps = Matrix::from_triplets(Q, 1, d, (0..d).map(|x| (0, x, one()))).expect("counit in range");
    let delta = Matrix::from_triplets(Q, d * d, d, (0..d).map(|x| (x * d + x, x, one()))).expect("coproduct in range");
    let lambda = Matrix::from_triplets(Q, d, d, (0..d).map(|x| (inv[x], x, one()))).expect("antipode in range");
    let mor = |m: Matrix, src, dst| Mor::new(d, src, dst, m).expect("builder shapes");
    WeakStructure::new(
        Q,
        d,
        mor(eta, 0, 1),
        mor(mu, 2, 1),
        mor(eps, 1, 0),
        mor(delta, 1, 2),
        Some(mor(lambda, 1, 1)),
        Mode::Quasigroup,
        Some(labels),
    )
    .expect("builder output is well formed")
}

fn check_square(table: &[Vec<usize>]) -> std::result::Result<usize, String> {
    let n = table.len();
    if n == 0 {
        return Err("empty table".into());
    }
    for row in table {
        if row.len() != n {
            return Err("table is not square".into());
        }
        if let Some(x) = row.iter().find(|x| **x >= n) {
            return Err(format!("entry {x} out of range"));
        }
    }
    Ok(n)
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|e| (0..n).all(|x| table[*e][x] == x && table[x][*e] == x))
}

fn two_sided_inverses(table: &[Vec<usize>], e: usize) -> Option<Vec<usize>> {
    let n = table.len();
    (0..n)
        .map(|x| (0..n).find(|y| table[x][*y] == e && table[*y][x] == e))
        .collect()
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

fn table_product(table: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
    table.iter().map(|row| row.iter().map(|x| Some(*x)).collect()).collect()
}

/// Group algebra `k[G]` from a multiplication table `table[a][b] = a·b`.
pub fn group_algebra(table: &[Vec<usize>]) -> Result<WeakStructure> {
    let n = check_square(table).map_err(Error::NotAGroup)?;
    let e = find_identity(table).ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
    }
    let inv = two_sided_inverses(table, e).ok_or_else(|| Error::NotAGroup("missing inverse".into()))?;
    Ok(grouplike(default_labels(n), &table_product(table), &[e], &inv))
}

/// Loop algebra of an inverse-property loop given by its Latin square.
pub fn loop_algebra(table: &[Vec<usize>]) -> Result<WeakStructure> {
    let n = check_square(table).map_err(Error::NotIPLoop)?;
    for i in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for j in 0..n {
            row[table[i][j]] = true;
            col[table[j][i]] = true;
        }
        if !row.iter().all(|x| *x) || !col.iter().all(|x| *x) {
            return Err(Error::NotIPLoop(format!("not a Latin square at line {i}")));
        }
    }
    let e = find_identity(table).ok_or_else(|| Error::NotIPLoop("no identity element".into()))?;
    let inv = two_sided_inverses(table, e).ok_or_else(|| Error::NotIPLoop("missing two-sided inverse".into()))?;
    for x in 0..n {
        for y in 0..n {
            if table[inv[x]][table[x][y]] != y {
                return Err(Error::NotIPLoop(format!("left inverse property fails at ({x}, {y})")));
            }
            if table[table[y][x]][inv[x]] != y {
                return Err(Error::NotIPLoop(format!("right inverse property fails at ({x}, {y})")));
            }
        }
    }
    Ok(grouplike(default_labels(n), &table_product(table), &[e], &inv))
}

/// A finite groupoid. Arrow `a` goes from `source[a]` to `target[a]`;
/// `compose[a][b]` is `a ∘ b`, defined when `source[a] == target[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groupoid {
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub labels: Option<Vec<String>>,
}

impl Groupoid {
    pub fn arrows(&self) -> usize {
        self.source.len()
    }

    /// A one-object groupoid, i.e. a group.
    pub fn from_group(table: &[Vec<usize>]) -> Groupoid {
        let n = table.len();
        Groupoid {
            objects: 1,
            source: vec![0; n],
            target: vec![0; n],
            compose: table_product(table),
            labels: None,
        }
    }
}

/// The groupoid with exactly one arrow `e_ij : j → i` between any two of
/// `n` objects.
pub fn pair_groupoid(n: usize) -> Groupoid {
    let idx = |i: usize, j: usize| i * n + j;
    let mut compose = vec![vec![None; n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                compose[idx(i, j)][idx(j, l)] = Some(idx(i, l));
            }
        }
    }
    Groupoid {
        objects: n,
        source: (0..n * n).map(|a| a % n).collect(),
        target: (0..n * n).map(|a| a / n).collect(),
        compose,
        labels: Some((0..n * n).map(|a| format!("e{}{}", a / n + 1, a % n + 1)).collect()),
    }
}

/// Groupoid algebra: product is composition when defined and zero
/// otherwise, unit is the sum of identity arrows.
pub fn groupoid_algebra(g: &Groupoid) -> Result<WeakStructure> {
    let bad = |m: String| Error::NotAGroupoid(m);
    let n = g.arrows();
    if n == 0 || g.target.len() != n || g.compose.len() != n || g.compose.iter().any(|r| r.len() != n) {
        return Err(bad("inconsistent arrow data".into()));
    }
    if g.source.iter().chain(&g.target).any(|o| *o >= g.objects) {
        return Err(bad("arrow endpoint out of range".into()));
    }
    for a in 0..n {
        for b in 0..n {
            match (g.compose[a][b], g.source[a] == g.target[b]) {
                (None, false) => {}
                (Some(c), true) if c < n && g.target[c] == g.target[a] && g.source[c] == g.source[b] => {}
                _ => return Err(bad(format!("composite {a}∘{b} is wrong"))),
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = g.compose[a][b].and_then(|ab| g.compose[ab][c]);
                let right = g.compose[b][c].and_then(|bc| g.compose[a][bc]);
                if left != right {
                    return Err(bad(format!("({a}∘{b})∘{c} ≠ {a}∘({b}∘{c})")));
                }
            }
        }
    }
    let mut units = Vec::with_capacity(g.objects);
    for o in 0..g.objects {
        let unit = (0..n).find(|u| {
            g.source[*u] == o
                && g.target[*u] == o
                && (0..n).all(|x| {
                    (g.target[x] != o || g.compose[*u][x] == Some(x)) && (g.source[x] != o || g.compose[x][*u] == Some(x))
                })
        });
        units.push(unit.ok_or_else(|| bad(format!("object {o} has no identity arrow")))?);
    }
    let inv = (0..n)
        .map(|a| {
            (0..n).find(|b| {
                g.compose[a][*b] == Some(units[g.target[a]]) && g.compose[*b][a] == Some(units[g.source[a]])
            })
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| bad("an arrow has no inverse".into()))?;
    let labels = g.labels.clone().unwrap_or_else(|| default_labels(n));
    if labels.len() != n {
        return Err(bad("wrong number of labels".into()));
    }
    Ok(grouplike(labels, &g.compose, &units, &inv))
}

/// The structure on `H = K`.
pub fn trivial() -> WeakStructure {
    grouplike(vec!["1".into()], &[vec![Some(0)]], &[0], &[0])
}

/// `Z/n` with elements `0..n` under addition.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// `S3` as permutations of `{0,1,2}` in lexicographic order, with
/// `(σ·τ)(x) = σ(τ(x))`.
pub fn symmetric_group_s3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
    perms
        .iter()
        .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
        .collect()
}

/// The Steiner loop of the Fano plane: identity `0`, points `1..=7`,
/// `x·x = 0` and `x·y` the third point on the line through `x` and `y`.
pub fn steiner_fano_table() -> Vec<Vec<usize>> {
    const LINES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
    let mut t = vec![vec![0; 8]; 8];
    for x in 0..8 {
        t[0][x] = x;
        t[x][0] = x;
    }
    for [a, b, c] in LINES {
        t[a][b] = c;
        t[b][a] = c;
        t[a][c] = b;
        t[c][a] = b;
        t[b][c] = a;
        t[c][b] = a;
    }
    t
}

/// The Steiner loop of the affine plane `AG(2, 3)`: identity `0`, the nine
/// points `(x, y) ∈ Z/3 × Z/3` as `1 + 3x + y`, `p·p = 0` and
/// `p·q = -(p + q)`, the third point on their line. Not associative.
pub fn steiner_affine_table() -> Vec<Vec<usize>> {
    let point = |k: usize| ((k - 1) / 3, (k - 1) % 3);
    let index = |x: usize, y: usize| 1 + 3 * x + y;
    let mut t = vec![vec![0; 10]; 10];
    for a in 0..10 {
        for b in 0..10 {
            t[a][b] = match (a, b) {
                (0, _) => b,
                (_, 0) => a,
                _ if a == b => 0,
                _ => {
                    let ((x1, y1), (x2, y2)) = (point(a), point(b));
                    index((6 - x1 - x2) % 3, (6 - y1 - y2) % 3)
                }
            };
        }
    }
    t
}

/// Re-indexes every tensor leg of `m` from `0..m.dim()` to
/// `offset..offset + m.dim()` inside a space of dimension `total`.
fn embed(m: &Mor, total: usize, offset: usize) -> Result<Mor> {
    let small = m.dim();
    let lift = |mut i: usize, legs: usize| {
        let (mut out, mut place) = (0, 1);
        for _ in 0..legs {
            out += (i % small + offset) * place;
            i /= small;
            place *= total;
        }
        out
    };
    let entries = m.matrix().entries().map(|(i, j, v)| (lift(i, m.dst()), lift(j, m.src()), v.clone()));
    let mat = Matrix::from_triplets(m.field(), total.pow(m.dst() as u32), total.pow(m.src() as u32), entries)?;
    Mor::new(total, m.src(), m.dst(), mat)
}

/// `A ⊕ B` with componentwise structure; the unit is `1_A + 1_B` and the
/// counit is `ε_A + ε_B`, so the sum is weak whenever both parts are nonzero.
pub fn direct_sum(a: &WeakStructure, b: &WeakStructure) -> Result<WeakStructure> {
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    let d = a.dim() + b.dim();
    let sum = |x: &Mor, y: &Mor| embed(x, d, 0)?.add(&embed(y, d, a.dim())?);
    let lambda = match (a.lambda(), b.lambda()) {
        (Ok(x), Ok(y)) => Some(sum(x, y)?),
        _ => None,
    };
    let basis = match (a.basis(), b.basis()) {
        (Some(x), Some(y)) => Some(x.iter().map(|l| format!("{l}.a")).chain(y.iter().map(|l| format!("{l}.b"))).collect()),
        _ => None,
    };
    WeakStructure::new(
        a.field(),
        d,
        sum(a.eta(), b.eta())?,
        sum(a.mu(), b.mu())?,
        sum(a.eps(), b.eps())?,
        sum(a.delta(), b.delta())?,
        lambda,
        a.mode(),
        basis,
    )
}

/// The bundled examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Example {
    Trivial,
    Z2,
    Z3,
    S3,
    PairGroupoid,
    SteinerFano,
    SteinerAffine,
}

impl Example {
    pub const ALL: [Example; 7] = [
        Example::Trivial,
        Example::Z2,
        Example::Z3,
        Example::S3,
        Example::PairGroupoid,
        Example::SteinerFano,
        Example::SteinerAffine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Example::Trivial => "trivial",
            Example::Z2 => "z2",
            Example::Z3 => "z3",
            Example::S3 => "s3",
            Example::PairGroupoid => "groupoid-pair",
            Example::SteinerFano => "steiner-fano",
            Example::SteinerAffine => "steiner-ag3",
        }
    }

    pub fn build(self) -> WeakStructure {
        let built = match self {
            Example::Trivial => Ok(trivial()),
            Example::Z2 => group_algebra(&cyclic_group_table(2)),
            Example::Z3 => group_algebra(&cyclic_group_table(3)),
            Example::S3 => group_algebra(&symmetric_group_s3_table()),
            Example::PairGroupoid => groupoid_algebra(&pair_groupoid(2)),
            Example::SteinerFano => loop_algebra(&steiner_fano_table()),
            Example::SteinerAffine => loop_algebra(&steiner_affine_table()),
        };
        built.expect("bundled tables are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_antipode_is_identity() {
        let z2 = Example::Z2.build();
        assert_eq!(z2.dim(), 2);
        assert!(z2.lambda().unwrap().matrix().is_identity());
    }

    #[test]
    fn z3_antipode_squares() {
        let z3 = Example::Z3.build();
        let l = z3.lambda().unwrap().matrix();
        assert_eq!(l.get(2, 1), Q.one());
        assert_eq!(l.get(1, 2), Q.one());
        assert_eq!(l.get(0, 0), Q.one());
    }

    fn nonassociative_triples(t: &[Vec<usize>]) -> usize {
        let n = t.len();
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let s = direct_sum(&trivial(), &Example::Z2.build()).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.lambda().unwrap().matrix().is_identity());
        assert_eq!(s.eta().matrix().nnz(), 2);
        assert_eq!(s.mu().matrix().get(2, 2 * 3 + 1), Q.one());
        assert!(s.mu().matrix().get(0, 1).is_zero());
        assert!(direct_sum(&trivial(), &trivial().reduce_mod(5).unwrap()).is_err());
    }

    #[test]
    fn fano_steiner_loop_is_elementary_abelian() {
        let t = steiner_fano_table();
        assert_eq!(nonassociative_triples(&t), 0);
        let s8 = loop_algebra(&t).unwrap();
        assert_eq!(s8, group_algebra(&t).unwrap());
        assert!(s8.lambda().unwrap().matrix().is_identity());
    }

    #[test]
    fn affine_steiner_loop_is_nonassociative_ip_loop() {
        let t = steiner_affine_table();
        assert!(nonassociative_triples(&t) > 0);
        let s10 = loop_algebra(&t).unwrap();
        assert_eq!(s10.dim(), 10);
        assert!(s10.lambda().unwrap().matrix().is_identity());
        assert!(!s10.is_associative().unwrap());
    }

    #[test]
    fn group_loop_and_groupoid_builders_agree() {
        let t = symmetric_group_s3_table();
        let g = group_algebra(&t).unwrap();
        assert_eq!(loop_algebra(&t).unwrap(), g);
        assert_eq!(groupoid_algebra(&Groupoid::from_group(&t)).unwrap(), g);
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(matches!(group_algebra(&steiner_affine_table()), Err(Error::NotAGroup(_))));
        assert!(matches!(loop_algebra(&[vec![0, 1], vec![0, 1]]), Err(Error::NotIPLoop(_))));
        let mut g = pair_groupoid(2);
        g.compose[0][0] = None;
        assert!(matches!(groupoid_algebra(&g), Err(Error::NotAGroupoid(_))));
    }

    #[test]
    fn pair_groupoid_unit() {
        let p2 = Example::PairGroupoid.build();
        assert_eq!(p2.dim(), 4);
        let eta = p2.eta().matrix();
        assert_eq!((eta.get(0, 0), eta.get(3, 0)), (Q.one(), Q.one()));
        assert!(eta.get(1, 0).is_zero() && eta.get(2, 0).is_zero());
    }
}
