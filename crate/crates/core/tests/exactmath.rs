use jsuper::exactmath::{Field, Matrix, Poly, RatFun, Rational, Valuation};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn poly(c: &[i64]) -> Poly {
    Poly::new(c.iter().map(|&x| q(x, 1)).collect())
}

fn rf(n: &[i64], d: &[i64]) -> RatFun {
    RatFun::new(poly(n), poly(d))
}

/// Determinant by cofactor expansion along the first row.
fn laplace_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = a.clone() * laplace_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Largest k with a nonzero k-by-k minor.
fn rank_by_minors(m: &[Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            subsets(rows, k).iter().any(|rs| {
                subsets(cols, k).iter().any(|cs| {
                    let sub: Vec<Vec<Rational>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                        .collect();
                    !laplace_det(&sub).is_zero()
                })
            })
        })
        .unwrap_or(0)
}

#[test]
fn valuation_examples() {
    assert_eq!(rf(&[0, 1], &[1, 1]).valuation(), Valuation::Finite(1));
    assert_eq!(rf(&[1], &[0, 1]).valuation(), Valuation::Finite(-1));
    assert_eq!(RatFun::zero().valuation(), Valuation::Infinite);
}

#[test]
fn limit_examples() {
    assert_eq!(rf(&[3, 2], &[1, 0, 1]).limit_at_zero(), Ok(q(3, 1)));
    assert_eq!(
        (RatFun::s_pow(2) * RatFun::s().inv().unwrap()).limit_at_zero(),
        Ok(q(0, 1))
    );
    assert!(rf(&[1], &[0, 1]).limit_at_zero().is_err());
}

#[test]
fn rank_and_nullity_examples() {
    let m = |rows: Vec<Vec<i64>>| {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| q(x, 1)).collect())
                .collect(),
        )
    };
    assert_eq!(Matrix::<Rational>::identity(2).nullspace_dim(), 0);
    assert_eq!(Matrix::<Rational>::zeros(2, 2).nullspace_dim(), 2);
    assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).nullspace_dim(), 1);
    assert_eq!(Matrix::<Rational>::identity(5).rank(), 5);
    assert_eq!(Matrix::<Rational>::zeros(3, 4).rank(), 0);
    assert_eq!(m(vec![vec![1, 1], vec![1, 1], vec![0, 0]]).rank(), 1);
}

#[test]
fn rank_over_rational_functions() {
    let s = RatFun::s();
    let one = RatFun::one();
    let m = Matrix::from_rows(vec![
        vec![s.clone(), one.clone()],
        vec![s.clone() * s.clone(), s.clone()],
    ]);
    assert_eq!(m.rank(), 1);
    let m = Matrix::from_rows(vec![vec![s.clone(), one.clone()], vec![one, s]]);
    assert_eq!(m.rank(), 2);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| poly(&c))
}

fn small_ratfun() -> impl Strategy<Value = RatFun> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        if d.degree().is_none() {
            RatFun::from_poly(n)
        } else {
            RatFun::new(n, d)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if let Some(i) = Field::inv(&a) {
            prop_assert_eq!(a * i, Rational::one());
        }
    }

    #[test]
    fn ratfun_field_laws(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), RatFun::zero());
        match a.inv() {
            Some(i) => prop_assert_eq!(a * i, RatFun::one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn valuation_is_additive(a in small_ratfun(), b in small_ratfun()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((a.clone() * b.clone()).valuation(), a.valuation() + b.valuation());
    }

    #[test]
    fn limits_are_additive(a in small_ratfun(), b in small_ratfun()) {
        if let (Ok(x), Ok(y)) = (a.limit_at_zero(), b.limit_at_zero()) {
            prop_assert_eq!((a + b).limit_at_zero(), Ok(x + y));
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in small_ratfun(), b in small_ratfun(), x in small_rational()) {
        if let (Some(u), Some(v)) = (a.eval(&x), b.eval(&x)) {
            prop_assert_eq!((a.clone() * b.clone()).eval(&x), Some(u.clone() * v.clone()));
            prop_assert_eq!((a + b).eval(&x), Some(u + v));
        }
    }

    #[test]
    fn elimination_rank_matches_minors(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-2i64..=2, 16),
    ) {
        let m: Vec<Vec<Rational>> = (0..rows)
            .map(|i| (0..cols).map(|j| q(entries[i * 4 + j], 1)).collect())
            .collect();
        let expected = rank_by_minors(&m);
        let mat = Matrix::from_rows(m);
        prop_assert_eq!(mat.rank(), expected);
        prop_assert_eq!(mat.rank_by_elimination(), expected);
        prop_assert_eq!(mat.nullspace_dim(), cols - expected);
    }

    #[test]
    fn determinant_matches_cofactors(entries in prop::collection::vec(-3i64..=3, 16)) {
        let m: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| q(entries[i * 4 + j], 1)).collect()).collect();
        let expected = laplace_det(&m);
        let mat = Matrix::from_rows(m);
        prop_assert_eq!(mat.det(), expected.clone());
        match mat.inverse() {
            Some(inv) => prop_assert_eq!(mat.mul(&inv), Matrix::identity(4)),
            None => prop_assert!(expected.is_zero()),
        }
    }
}
