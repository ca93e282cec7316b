//! Exact integer and rational matrices.
//!
//! `IntegerMatrix` carries the Hermite normal form and fraction-free
//! determinant that the ideal arithmetic is built on. The HNF convention is
//! column-style: column operations only, result upper-triangular with
//! positive pivots on the diagonal and entries to the right of each pivot
//! reduced into `[0, pivot)`.

use crate::error::{Error, Result};
use rug::{Complete, Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![Integer::new(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::from(1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntegerMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = Integer::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<Integer>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = IntegerMatrix::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = IntegerMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut m = IntegerMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Integer::new();
                for k in 0..self.cols {
                    acc += (&self[(i, k)] * &rhs[(k, j)]).complete();
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Integer::new();
                for k in 0..self.cols {
                    acc += (&self[(i, k)] * &v[k]).complete();
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Integer) -> Self {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v *= c;
        }
        m
    }

    /// gcd of all entries (0 for the zero matrix).
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for v in &self.data {
            g = g.gcd(v);
        }
        g
    }

    pub fn div_exact(&self, c: &Integer) -> Self {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            let q = v.div_exact_ref(c).complete();
            *v = q;
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Integer {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Integer::from(1);
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i32;
        let mut prev = Integer::from(1);
        for k in 0..n - 1 {
            if a[idx(k, k)] == 0 {
                let swap = (k + 1..n).find(|&i| a[idx(i, k)] != 0);
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return Integer::new(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = (&a[idx(k, k)] * &a[idx(i, j)]).complete()
                        - (&a[idx(i, k)] * &a[idx(k, j)]).complete();
                    a[idx(i, j)] = t.div_exact(&prev);
                }
                a[idx(i, k)] = Integer::new();
            }
            prev = a[idx(k, k)].clone();
        }
        let mut d = a[idx(n - 1, n - 1)].clone();
        if sign < 0 {
            d = -d;
        }
        d
    }

    /// Column-style Hermite normal form.
    ///
    /// The columns of the result span the same lattice as the columns of
    /// `self`. Requires the column span to have full rank `rows`; the result
    /// is square upper-triangular with positive pivots and entries right of
    /// each pivot reduced mod the pivot.
    pub fn hnf(&self) -> Result<IntegerMatrix> {
        let n = self.rows;
        let m = self.cols;
        if m < n {
            return Err(Error::RankDeficient);
        }
        let mut w = self.clone();
        let mut active = m; // columns [0, active) still in play
        for i in (0..n).rev() {
            // Euclidean sweep on row i over the active columns.
            loop {
                let mut piv: Option<usize> = None;
                for j in 0..active {
                    if w[(i, j)] != 0 {
                        piv = match piv {
                            Some(p)
                                if w[(i, p)].clone().abs() <= w[(i, j)].clone().abs() =>
                            {
                                Some(p)
                            }
                            _ => Some(j),
                        };
                    }
                }
                let p = match piv {
                    Some(p) => p,
                    None => return Err(Error::RankDeficient),
                };
                let mut others = false;
                for j in 0..active {
                    if j != p && w[(i, j)] != 0 {
                        others = true;
                        let q = w[(i, j)].clone().div_rem_floor(w[(i, p)].clone()).0;
                        w.col_sub_mul(j, p, &q);
                    }
                }
                if !others {
                    // move pivot column to the end of the active range
                    w.swap_cols(p, active - 1);
                    active -= 1;
                    if w[(i, active)] < 0 {
                        w.negate_col(active);
                    }
                    break;
                }
            }
        }
        // Extract the n pivot columns (they sit at [m-n, m), pivot of row i
        // at column m-n+i) and reduce above-pivot entries.
        let mut h = IntegerMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = w[(i, m - n + j)].clone();
            }
        }
        // Reduce right of each pivot, bottom row first: subtracting a
        // multiple of column i only touches rows <= i, so earlier rows stay
        // reduced.
        for i in (0..n).rev() {
            for j in i + 1..n {
                let q = h[(i, j)].clone().div_rem_floor(h[(i, i)].clone()).0;
                h.col_sub_mul(j, i, &q);
            }
        }
        Ok(h)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = i * self.cols;
            self.data.swap(x + a, x + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self[(i, j)];
            *v = (-&*v).complete();
        }
    }

    /// `col_j -= q * col_p`
    fn col_sub_mul(&mut self, j: usize, p: usize, q: &Integer) {
        if *q == 0 {
            return;
        }
        for i in 0..self.rows {
            let t = (&self[(i, p)] * q).complete();
            self[(i, j)] -= t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = Integer;
    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact rational matrix; just enough for change-of-basis work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::new(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::from(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = RatMatrix::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_integer(m: &IntegerMatrix) -> Self {
        let mut r = RatMatrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                r[(i, j)] = Rational::from(&m[(i, j)]);
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::new();
                for k in 0..self.cols {
                    acc += (&self[(i, k)] * &v[k]).complete();
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut m = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Rational::new();
                for k in 0..self.cols {
                    acc += (&self[(i, k)] * &rhs[(k, j)]).complete();
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut det = Rational::from(1);
        for k in 0..n {
            if a[idx(k, k)].cmp0() == std::cmp::Ordering::Equal {
                let swap = (k + 1..n).find(|&i| a[idx(i, k)].cmp0() != std::cmp::Ordering::Equal);
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        det = -det;
                    }
                    None => return Rational::new(),
                }
            }
            det *= &a[idx(k, k)];
            let inv = a[idx(k, k)].clone().recip();
            for i in k + 1..n {
                let f = (&a[idx(i, k)] * &inv).complete();
                for j in k..n {
                    let t = (&a[idx(k, j)] * &f).complete();
                    a[idx(i, j)] -= t;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let piv = (k..n).find(|&i| a[(i, k)].cmp0() != std::cmp::Ordering::Equal)?;
            if piv != k {
                for j in 0..n {
                    let t = a[(k, j)].clone();
                    a[(k, j)] = a[(piv, j)].clone();
                    a[(piv, j)] = t;
                    let t = inv[(k, j)].clone();
                    inv[(k, j)] = inv[(piv, j)].clone();
                    inv[(piv, j)] = t;
                }
            }
            let p = a[(k, k)].clone().recip();
            for j in 0..n {
                a[(k, j)] *= &p;
                inv[(k, j)] *= &p;
            }
            for i in 0..n {
                if i != k && a[(i, k)].cmp0() != std::cmp::Ordering::Equal {
                    let f = a[(i, k)].clone();
                    for j in 0..n {
                        let t = (&a[(k, j)] * &f).complete();
                        a[(i, j)] -= t;
                        let t = (&inv[(k, j)] * &f).complete();
                        inv[(i, j)] -= t;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Split into an integer matrix and the common denominator.
    pub fn to_integer_scaled(&self) -> (IntegerMatrix, Integer) {
        let mut den = Integer::from(1);
        for v in &self.data {
            den = den.lcm(v.denom());
        }
        let mut m = IntegerMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = (&self[(i, j)] * &Rational::from(&den)).complete();
                debug_assert_eq!(*q.denom(), 1);
                m[(i, j)] = q.numer().clone();
            }
        }
        (m, den)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hnf_of_identity_is_identity() {
        let id = IntegerMatrix::identity(4);
        assert_eq!(id.hnf().unwrap(), id);
    }

    #[test]
    fn hnf_is_idempotent_on_fixed_point() {
        let m = IntegerMatrix::from_rows(&[vec![2, 1], vec![0, 1]]);
        let h = m.hnf().unwrap();
        assert_eq!(h, m);
        assert_eq!(h.hnf().unwrap(), m);
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lim: i64) -> IntegerMatrix {
        loop {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-lim..=lim)).collect())
                .collect();
            let m = IntegerMatrix::from_rows(&rows);
            if m.det() != 0 {
                return m;
            }
        }
    }

    /// Lattice membership of `v` in the column span of an HNF matrix.
    fn in_span(h: &IntegerMatrix, v: &[Integer]) -> bool {
        let n = h.rows();
        let mut rem: Vec<Integer> = v.to_vec();
        for i in (0..n).rev() {
            let (q, r) = rem[i].clone().div_rem(h[(i, i)].clone());
            if r != 0 {
                return false;
            }
            for k in 0..n {
                let t = (&h[(k, i)] * &q).complete();
                rem[k] -= t;
            }
        }
        rem.iter().all(|x| *x == 0)
    }

    #[test]
    fn hnf_pivot_product_is_abs_det_and_span_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3usize, 4] {
            for _ in 0..50 {
                let m = random_matrix(&mut rng, n, 9);
                let h = m.hnf().unwrap();
                // pivot product = |det|
                let mut prod = Integer::from(1);
                for i in 0..n {
                    assert!(h[(i, i)] > 0);
                    prod *= &h[(i, i)];
                    for j in 0..i {
                        assert!(h[(i, j)] == 0);
                    }
                    for j in i + 1..n {
                        assert!(h[(i, j)] >= 0 && h[(i, j)] < h[(i, i)]);
                    }
                }
                assert_eq!(prod, m.det().abs());
                // idempotence
                assert_eq!(h.hnf().unwrap(), h);
                // mutual membership of generators
                for j in 0..n {
                    assert!(in_span(&h, &m.column(j)));
                    assert!(in_span(&m.hnf().unwrap(), &h.column(j)));
                }
            }
        }
    }

    #[test]
    fn hnf_rank_deficient_errors() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(m.hnf(), Err(Error::RankDeficient)));
    }

    #[test]
    fn bareiss_det_matches_rational_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 4, 12);
            let d1 = m.det();
            let d2 = RatMatrix::from_integer(&m).det();
            assert_eq!(Rational::from(&d1), d2);
        }
    }

    #[test]
    fn rational_inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = random_matrix(&mut rng, 4, 9);
        let r = RatMatrix::from_integer(&m);
        let inv = r.inverse().unwrap();
        assert_eq!(r.mul(&inv), RatMatrix::identity(4));
    }
}
