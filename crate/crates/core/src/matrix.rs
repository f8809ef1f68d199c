//! Exact integer matrices: fraction-free determinants, adjugates, and the
//! Smith normal form with recorded unimodular transforms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix over ℤ with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntegerMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntegerMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &BigInt) -> IntegerMatrix {
        let data = self.data.iter().map(|a| a * k).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> IntegerMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntegerMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Fraction-free Bareiss determinant.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                // pivot search
                let mut found = None;
                for i in k + 1..n {
                    if !a[i * n + k].is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division not exact");
                    a[i * n + j] = q;
                }
            }
            for i in k + 1..n {
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        sign * a[(n - 1) * n + (n - 1)].clone()
    }

    /// Adjugate via cofactors: `self · adj = det · I`.
    pub fn adjugate(&self) -> IntegerMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut adj = IntegerMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j).determinant();
                let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                adj[(j, i)] = sign * minor;
            }
        }
        adj
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> IntegerMatrix {
        let n = self.rows;
        let mut m = IntegerMatrix::zero(n - 1, n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == skip_r {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == skip_c {
                    continue;
                }
                m[(r, c)] = self[(i, j)].clone();
                c += 1;
            }
            r += 1;
        }
        m
    }

    /// Smith normal form `U·A·V = S` with unimodular U, V and nonnegative
    /// diagonal invariant factors s₁ | s₂ | …; a zero determinant leaves
    /// trailing zeros on the diagonal (see [`SmithDecomposition::is_singular`]).
    ///
    /// Pivot rule: smallest nonzero |entry|, ties broken by lowest row then
    /// column index, so the output is deterministic.
    pub fn smith_normal_form(&self) -> SmithDecomposition {
        assert!(self.is_square(), "SNF implemented for square presentation matrices");
        let n = self.rows;
        let mut s = self.clone();
        let mut u = IntegerMatrix::identity(n);
        let mut v = IntegerMatrix::identity(n);

        let mut t = 0usize;
        'outer: while t < n {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            let mut best: Option<BigInt> = None;
            for i in t..n {
                for j in t..n {
                    let val = s[(i, j)].abs();
                    if val.is_zero() {
                        continue;
                    }
                    if best.as_ref().map(|b| &val < b).unwrap_or(true) {
                        best = Some(val);
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break, // all-zero tail: trailing zeros stay
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // clear row and column t
            loop {
                let mut dirty = false;
                for i in t + 1..n {
                    if s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&s[(i, t)], &s[(t, t)]);
                    if !q.is_zero() {
                        s.row_axpy(i, t, &-&q);
                        u.row_axpy(i, t, &-&q);
                    }
                    if !s[(i, t)].is_zero() {
                        // remainder smaller than pivot: swap it up and restart
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&s[(t, j)], &s[(t, t)]);
                    if !q.is_zero() {
                        s.col_axpy(j, t, &-&q);
                        v.col_axpy(j, t, &-&q);
                    }
                    if !s[(t, j)].is_zero() {
                        s.swap_cols(t, j);
                        v.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }

            // divisibility: pivot must divide the rest of the block
            for i in t + 1..n {
                for j in t + 1..n {
                    if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                        // fold row i into row t and redo this step
                        s.row_axpy(t, i, &BigInt::one());
                        u.row_axpy(t, i, &BigInt::one());
                        continue 'outer;
                    }
                }
            }

            if s[(t, t)].is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }

        debug_assert!(u.mul(self).mul(&v) == s, "SNF transform check failed");
        debug_assert!(u.determinant().abs().is_one() && v.determinant().abs().is_one());
        SmithDecomposition { u, s, v }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += q * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let add = &self.data[source * self.cols + j] * q;
            self.data[target * self.cols + j] += add;
        }
    }

    /// col[target] += q * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let add = &self.data[i * self.cols + source] * q;
            self.data[i * self.cols + target] += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }
}

/// Quotient rounding to nearest, so remainders satisfy |r| ≤ |b|/2.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.is_zero() {
        return q;
    }
    let two_r = r.abs() * BigInt::from(2);
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

impl core::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U·A·V = S` with diagonal S and |det U| = |det V| = 1.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal invariant factors (including any trailing zeros).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows()).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Invariant factors with the unit (=1) entries dropped.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors().into_iter().filter(|f| !f.is_one()).collect()
    }

    pub fn is_singular(&self) -> bool {
        self.invariant_factors().iter().any(|f| f.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows)
    }

    fn factors(a: &IntegerMatrix) -> Vec<i64> {
        use num_traits::ToPrimitive;
        a.smith_normal_form().invariant_factors().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[3, 1, 3], &[1, 3, 7], &[3, 7, 11]]).determinant(), BigInt::from(-44));
        assert_eq!(m(&[&[3, 0, 2], &[0, 2, 3], &[2, 3, 2]]).determinant(), BigInt::from(-23));
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant(), BigInt::from(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), BigInt::from(0));
    }

    #[test]
    fn snf_examples() {
        // diag(2,3) -> diag(1,6)
        assert_eq!(factors(&m(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(factors(&IntegerMatrix::identity(3)), vec![1, 1, 1]);
        // tribonacci multiplication-by-g'(β) matrix -> diag(1,2,22)
        let w = m(&[&[-1, 3, 1], &[-2, 2, 4], &[3, 1, 3]]);
        assert_eq!(factors(&w), vec![1, 2, 22]);
    }

    #[test]
    fn snf_singular_flagged() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let d = a.smith_normal_form();
        assert!(d.is_singular());
        assert_eq!(d.invariant_factors().last().unwrap(), &BigInt::zero());
        assert_eq!(d.u.mul(&a).mul(&d.v), d.s);
    }

    #[test]
    fn adjugate_identity() {
        let a = m(&[&[3, 1, 3], &[1, 3, 7], &[3, 7, 11]]);
        let adj = a.adjugate();
        let det = a.determinant();
        let prod = a.mul(&adj);
        let expected = IntegerMatrix::identity(3).scale(&det);
        assert_eq!(prod, expected);
    }
}
