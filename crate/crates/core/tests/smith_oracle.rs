//! Smith normal form against determinantal divisors: the k-th invariant
//! factor is d_k / d_{k-1}, where d_k is the gcd of all k×k minors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surgcalc_core::linalg::{invariant_factors, invariant_factors_generic, smith_normal_form};
use surgcalc_core::IntMatrix;

fn det(m: &[i64], n: usize, rows: &[usize], cols: &[usize]) -> i64 {
    match rows.len() {
        1 => m[rows[0] * n + cols[0]],
        2 => {
            let a = |i: usize, j: usize| m[rows[i] * n + cols[j]];
            a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)
        }
        _ => {
            let mut s = 0;
            for (j, _) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &c)| c).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                s += sign * m[rows[0] * n + cols[j]] * det(m, n, &rows[1..], &rest);
            }
            s
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from determinantal divisors, zeros last.
fn oracle(m: &[i64], r: usize, c: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut prev = 1i64;
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                g = g.gcd(&det(m, c, &rows, &cols));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat(0).take(r.min(c) - out.len()));
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn for_each_matrix(r: usize, c: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let n = r * c;
    let base = 2 * bound + 1;
    let mut m = vec![-bound; n];
    for _ in 0..base.pow(n as u32) {
        f(&m);
        for x in m.iter_mut() {
            *x += 1;
            if *x <= bound {
                break;
            }
            *x = -bound;
        }
    }
}

fn big(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

#[test]
fn exhaustive_small_shapes_bigint() {
    for r in 1..=3 {
        for c in 1..=3 {
            if r * c > 6 {
                continue;
            }
            let mut count = 0u64;
            for_each_matrix(r, c, 3, |m| {
                let got = big(&invariant_factors(&IntMatrix::from_i64(r, c, m)));
                assert_eq!(got, oracle(m, r, c), "{r}x{c} {m:?}");
                count += 1;
            });
            assert_eq!(count, 7u64.pow((r * c) as u32));
        }
    }
}

/// `oracle` for 3×3, without allocation.
fn oracle3(m: &[i64]) -> [i64; 3] {
    let d1 = m.iter().fold(0i64, |g, &x| g.gcd(&x));
    let mut d2 = 0i64;
    for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
        for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
            d2 = d2.gcd(&(m[r0 * 3 + c0] * m[r1 * 3 + c1] - m[r0 * 3 + c1] * m[r1 * 3 + c0]));
        }
    }
    let d3 = (m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
        + m[2] * (m[3] * m[7] - m[4] * m[6]))
        .abs();
    let q = |a: i64, b: i64| if b == 0 { 0 } else { a / b };
    [d1, q(d2, d1), q(d3, d2)]
}

#[test]
fn exhaustive_three_by_three() {
    let mut count = 0u64;
    let mut checked = 0u64;
    for_each_matrix(3, 3, 3, |m| {
        let got = invariant_factors_generic::<i64>(3, 3, m.to_vec());
        assert_eq!(got, oracle3(m), "{m:?}");
        if count % 4099 == 0 {
            assert_eq!(got, oracle(m, 3, 3));
            checked += 1;
        }
        count += 1;
    });
    assert_eq!(count, 7u64.pow(9));
    assert!(checked > 9000);
}

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = vec![BigInt::zero(); a.rows() * b.cols()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            for k in 0..a.cols() {
                out[i * b.cols() + j] += &a.row(i)[k] * &b.row(k)[j];
            }
        }
    }
    IntMatrix::from_entries(a.rows(), b.cols(), out)
}

#[test]
fn random_transforms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let entries: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-20..=20)).collect();
        let a = IntMatrix::from_i64(r, c, &entries);
        let s = smith_normal_form(&a);
        assert_eq!(mul(&mul(&s.u, &a), &s.v), s.d, "{entries:?}");
        assert!(s.u.determinant().abs() == BigInt::from(1));
        assert!(s.v.determinant().abs() == BigInt::from(1));
        for i in 0..r {
            for j in 0..c {
                let x = &s.d.row(i)[j];
                if i == j {
                    assert_eq!(x, &s.factors[i]);
                    assert!(!x.is_negative());
                } else {
                    assert!(x.is_zero());
                }
            }
        }
        for w in s.factors.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        if r * c <= 9 && r <= 3 && c <= 3 {
            assert_eq!(big(&s.factors), oracle(&entries, r, c));
        }
    }
}
