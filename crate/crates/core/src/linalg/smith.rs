use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U·A·V = D` with `D` diagonal and `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `D`: nonnegative, each dividing the next, zeros last.
    /// Length is `min(rows, cols)`.
    pub factors: Vec<BigInt>,
}

/// Row-major dense matrix over any signed integer type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone + Zero> Dense<T> {
    pub fn identity(n: usize) -> Self
    where
        T: num_traits::One,
    {
        let mut data = alloc::vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Dense {
            rows: n,
            cols: n,
            data,
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Integer + Signed + Clone> Dense<T> {
    /// row[dst] -= q · row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) {
        for j in 0..self.cols {
            let s = self.at(src, j).clone();
            if !s.is_zero() {
                let d = &mut self.data[dst * self.cols + j];
                *d = d.clone() - q.clone() * s;
            }
        }
    }

    /// col[dst] -= q · col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) {
        for i in 0..self.rows {
            let s = self.at(i, src).clone();
            if !s.is_zero() {
                let d = &mut self.data[i * self.cols + dst];
                *d = d.clone() - q.clone() * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let d = &mut self.data[r * self.cols + j];
            *d = -d.clone();
        }
    }
}

/// Transforms accumulated alongside the reduction.
pub struct Transforms<T> {
    pub u: Dense<T>,
    pub v: Dense<T>,
}

/// Reduces `a` in place to Smith normal form and returns the invariant
/// factors. When `transforms` is given, row operations are mirrored on `u`
/// and column operations on `v`, so that `U·A·V = D` holds at the end.
///
/// Pivot rule: the smallest nonzero absolute value in the active block,
/// ties broken row-major.
pub fn reduce<T: Integer + Signed + Clone>(
    a: &mut Dense<T>,
    mut transforms: Option<&mut Transforms<T>>,
) -> Vec<T> {
    let (r, c) = (a.rows, a.cols);
    let n = r.min(c);
    for t in 0..n {
        let Some((pi, pj)) = smallest(a, t, t..r, t..c) else {
            break;
        };
        move_pivot(a, transforms.as_deref_mut(), t, pi, pj);
        loop {
            let mut remainder = false;
            for i in t + 1..r {
                if !a.at(i, t).is_zero() {
                    let q = a.at(i, t).clone() / a.at(t, t).clone();
                    a.row_axpy(i, t, &q);
                    if let Some(tr) = transforms.as_deref_mut() {
                        tr.u.row_axpy(i, t, &q);
                    }
                    remainder |= !a.at(i, t).is_zero();
                }
            }
            for j in t + 1..c {
                if !a.at(t, j).is_zero() {
                    let q = a.at(t, j).clone() / a.at(t, t).clone();
                    a.col_axpy(j, t, &q);
                    if let Some(tr) = transforms.as_deref_mut() {
                        tr.v.col_axpy(j, t, &q);
                    }
                    remainder |= !a.at(t, j).is_zero();
                }
            }
            if remainder {
                let (pi, pj) = smallest_cross(a, t);
                move_pivot(a, transforms.as_deref_mut(), t, pi, pj);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let p = a.at(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.at(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -T::one();
                    a.row_axpy(t, i, &minus_one);
                    if let Some(tr) = transforms.as_deref_mut() {
                        tr.u.row_axpy(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t);
            if let Some(tr) = transforms.as_deref_mut() {
                tr.u.negate_row(t);
            }
        }
    }
    (0..n).map(|i| a.at(i, i).clone()).collect()
}

fn smallest<T: Integer + Signed + Clone>(
    a: &Dense<T>,
    _t: usize,
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = a.at(i, j);
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                best = Some((i, j, m));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smallest nonzero entry in row `t` and column `t` of the active block.
fn smallest_cross<T: Integer + Signed + Clone>(a: &Dense<T>, t: usize) -> (usize, usize) {
    let mut best = (t, t, a.at(t, t).abs());
    for i in t + 1..a.rows {
        let v = a.at(i, t);
        if !v.is_zero() && v.abs() < best.2 {
            best = (i, t, v.abs());
        }
    }
    for j in t + 1..a.cols {
        let v = a.at(t, j);
        if !v.is_zero() && v.abs() < best.2 {
            best = (t, j, v.abs());
        }
    }
    (best.0, best.1)
}

fn move_pivot<T: Integer + Signed + Clone>(
    a: &mut Dense<T>,
    transforms: Option<&mut Transforms<T>>,
    t: usize,
    i: usize,
    j: usize,
) {
    a.swap_rows(t, i);
    a.swap_cols(t, j);
    if let Some(tr) = transforms {
        tr.u.swap_rows(t, i);
        tr.v.swap_cols(t, j);
    }
}

/// Invariant factors only, over a fixed-width type.
pub fn invariant_factors_generic<T: Integer + Signed + Clone>(
    rows: usize,
    cols: usize,
    data: Vec<T>,
) -> Vec<T> {
    let mut a = Dense { rows, cols, data };
    reduce(&mut a, None)
}

fn to_dense(m: &IntMatrix) -> Dense<BigInt> {
    Dense {
        rows: m.rows(),
        cols: m.cols(),
        data: m.entries().to_vec(),
    }
}

fn from_dense(d: Dense<BigInt>) -> IntMatrix {
    IntMatrix::from_entries(d.rows, d.cols, d.data)
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = to_dense(m);
    let mut tr = Transforms {
        u: Dense::identity(m.rows()),
        v: Dense::identity(m.cols()),
    };
    let factors = reduce(&mut a, Some(&mut tr));
    SmithForm {
        d: from_dense(a),
        u: from_dense(tr.u),
        v: from_dense(tr.v),
        factors,
    }
}

/// Invariant factors without tracking transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = to_dense(m);
    reduce(&mut a, None)
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).iter().filter(|f| !f.is_zero()).count()
}

/// Whether `v` is an integer combination of the columns of `m`.
pub fn in_column_lattice(m: &IntMatrix, v: &[i64]) -> bool {
    assert_eq!(v.len(), m.rows());
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    let s = smith_normal_form(m);
    let w = s.u.mul_vec(v);
    w.iter().enumerate().all(|(i, wi)| match s.factors.get(i) {
        Some(d) if !d.is_zero() => wi.is_multiple_of(d),
        _ => wi.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = IntMatrix::from_rows(rows);
        smith_normal_form(&m)
            .factors
            .iter()
            .map(|f| i64::try_from(f).unwrap())
            .collect()
    }

    #[test]
    fn diag_2_3() {
        assert_eq!(factors(&[alloc::vec![2, 0], alloc::vec![0, 3]]), [1, 6]);
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(invariant_factors(&IntMatrix::zeros(2, 3)), [BigInt::zero(), BigInt::zero()]);
        assert_eq!(invariant_factors(&IntMatrix::identity(4)), alloc::vec![BigInt::one(); 4]);
        assert!(invariant_factors(&IntMatrix::zeros(0, 0)).is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::diagonal(&[2, 3])), 2);
        assert_eq!(rank(&IntMatrix::from_rows(&[alloc::vec![1, 2], alloc::vec![2, 4]])), 1);
        assert_eq!(rank(&IntMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn transforms_hold() {
        let m = IntMatrix::from_rows(&[alloc::vec![4, 6, -2], alloc::vec![6, 9, 12], alloc::vec![2, 3, 14]]);
        let s = smith_normal_form(&m);
        assert_eq!(&(&s.u * &m) * &s.v, s.d);
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
    }

    #[test]
    fn lattice_membership() {
        let m = IntMatrix::diagonal(&[2, 3]);
        assert!(in_column_lattice(&m, &[4, -3]));
        assert!(!in_column_lattice(&m, &[1, 0]));
        let z = IntMatrix::zeros(2, 0);
        assert!(in_column_lattice(&z, &[0, 0]));
        assert!(!in_column_lattice(&z, &[0, 1]));
    }

    #[test]
    fn generic_matches_bigint() {
        let data = [3i64, -2, 1, 0, 2, 2, -3, 1, 1];
        let g = invariant_factors_generic(3, 3, data.to_vec());
        let b = invariant_factors(&IntMatrix::from_i64(3, 3, &data));
        assert_eq!(g.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), b);
    }
}
