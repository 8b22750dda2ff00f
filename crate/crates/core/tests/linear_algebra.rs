use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use whq_core::{Error, Field, Matrix, Scalar};

const Q: Field = Field::Rational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_fn(Q, rows.len(), cols, |i, j| Q.from_i64(rows[i][j]))
}

/// Textbook Gauss-Jordan on dense rationals; returns (rank, reduced rows).
fn oracle_rref(rows: &[Vec<i64>]) -> (usize, Vec<Vec<BigRational>>) {
    let mut a: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|x| rat(*x, 1)).collect()).collect();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|i| !a[*i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = BigRational::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let v = a[r][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    (r, a)
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn fraction() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn rational_field_axioms(a in fraction(), b in fraction(), c in fraction()) {
        let (x, y, z) = (Scalar::Rat(a.clone()), Scalar::Rat(b.clone()), Scalar::Rat(c.clone()));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).as_rational().unwrap().clone(), a.clone() * b.clone());
        if !a.is_zero() {
            prop_assert!(x.checked_mul(&x.inverse().unwrap()).unwrap().is_one());
        } else {
            prop_assert_eq!(x.inverse(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 13, 101, 65_521]), a in -500i64..500, b in -500i64..500) {
        let f = Field::prime(p).unwrap();
        let (x, y) = (f.from_i64(a), f.from_i64(b));
        prop_assert_eq!(&x * &y, f.from_i64((a * b).rem_euclid(p as i64)));
        prop_assert_eq!(&x - &x, f.zero());
        if !x.is_zero() {
            let mut power = f.one();
            for _ in 0..(p - 1).min(200) {
                power = &power * &x;
            }
            if p <= 201 {
                prop_assert!(power.is_one());
            }
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn rank_and_rref_match_oracle(rows in small_matrix(4, 5)) {
        let m = to_matrix(&rows);
        let (rank, reduced) = oracle_rref(&rows);
        prop_assert_eq!(m.rank(), rank);
        let r = m.rref();
        for (i, row) in reduced.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                prop_assert_eq!(r.basis.get(i, j), Scalar::Rat(v.clone()));
            }
        }
    }

    #[test]
    fn inverse_matches_oracle(rows in small_matrix(4, 4)) {
        let m = to_matrix(&rows);
        let (rank, _) = oracle_rref(&rows);
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(rank, 4);
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            }
            Err(e) => prop_assert_eq!(e, Error::Singular { rank, size: 4 }),
        }
    }

    #[test]
    fn kernel_is_annihilated(rows in small_matrix(3, 5)) {
        let m = to_matrix(&rows);
        let k = m.kernel();
        prop_assert_eq!(k.rank(), 5 - m.rank());
        prop_assert!(m.mul(&k.basis.transpose()).unwrap().is_zero());
        let lk = m.left_kernel();
        prop_assert!(lk.basis.mul(&m).unwrap().is_zero());
    }

    #[test]
    fn kron_interchange_law(a in small_matrix(2, 3), b in small_matrix(2, 2), c in small_matrix(3, 2), d in small_matrix(2, 1)) {
        let (a, b, c, d) = (to_matrix(&a), to_matrix(&b), to_matrix(&c), to_matrix(&d));
        let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_factorization_reassembles(rows in small_matrix(4, 4)) {
        let m = to_matrix(&rows);
        let (c, r) = m.rank_factorization();
        prop_assert_eq!(c.cols(), m.rank());
        prop_assert_eq!(c.mul(&r).unwrap(), m);
    }
}

#[test]
fn scalar_literals_round_trip() {
    for text in ["0", "1", "-3/4", "22/7", "-1"] {
        assert_eq!(Q.parse(text).unwrap().to_string(), text);
    }
    assert_eq!(Q.parse("6/8").unwrap().to_string(), "3/4");
    assert_eq!(Q.parse("1/0"), Err(Error::DivisionByZero));
    assert!(matches!(Q.parse("x"), Err(Error::ScalarParse(_))));
    let f7 = Field::prime(7).unwrap();
    assert_eq!(f7.parse("1/2").unwrap(), f7.from_i64(4));
    assert!(f7.parse("1/7").is_err());
    assert!(Field::prime(9).is_err());
}

#[test]
fn mixed_fields_rejected() {
    let a = Matrix::identity(Q, 2);
    let b = Matrix::identity(Field::prime(5).unwrap(), 2);
    assert_eq!(a.mul(&b), Err(Error::MixedFields));
    assert_eq!(Q.one().checked_add(&Field::prime(5).unwrap().one()), Err(Error::MixedFields));
}

#[test]
fn prime_field_elimination() {
    let f = Field::prime(3).unwrap();
    // rank 2 over Q, rank 1 over F_3
    let m = Matrix::from_fn(f, 2, 2, |i, j| f.from_i64([[1, 2], [2, 1]][i][j]));
    assert_eq!(m.rank(), 1);
    assert_eq!(to_matrix(&[vec![1, 2], vec![2, 1]]).rank(), 2);
}
