//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m.data[r][c] = x.clone();
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r][c] = value;
    }

    pub fn set_int(&mut self, r: usize, c: usize, value: i64) {
        self.data[r][c] = rational(value);
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn rref(&self) -> Echelon {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(lead, p);
            let inv = a[lead][c].recip();
            for x in a[lead][c..].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[lead].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == lead || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { matrix: Matrix { rows: self.rows, cols: self.cols, data: a }, pivots }
    }

    pub fn rank(&self) -> usize {
        // row echelon without back substitution
        let mut a = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let (top, bottom) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in bottom.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = &row[c] / &pivot_row[c];
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// A basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.matrix.data[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b` with all free variables set to zero, or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut augmented = self.data.clone();
        for (row, b) in augmented.iter_mut().zip(rhs) {
            row.push(b.clone());
        }
        let ech = Matrix { rows: self.rows, cols: self.cols + 1, data: augmented }.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.matrix.data[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for c in 0..self.cols {
            let Some(p) = (c..self.rows).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det *= &a[c][c];
            let (top, bottom) = a.split_at_mut(c + 1);
            let pivot_row = &top[c];
            for row in bottom.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = &row[c] / &pivot_row[c];
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &factor * p;
                }
            }
        }
        det
    }
}

/// An incrementally built echelon basis of a subspace of `Q^n`.
#[derive(Clone, Debug, Default)]
pub struct IncrementalBasis {
    // (pivot column, row with 1 at pivot and 0 at every other stored pivot)
    rows: Vec<(usize, Vec<Rational>)>,
}

impl IncrementalBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after eliminating every stored pivot.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns false if it was already in it.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray
/// whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let denom = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(denom.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| if x.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[rational(3), rational(1)]).unwrap();
        assert_eq!(x, vec![rational(2), rational(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rational(1), rational(3)]).is_none());
    }

    #[test]
    fn determinant_matches_hand_value() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        // expansion along row 2: -1 * (2*1 - 1*1)
        assert_eq!(a.determinant(), rational(-1));
    }

    #[test]
    fn incremental_basis_tracks_span() {
        let mut b = IncrementalBasis::new();
        assert!(b.insert(&[rational(1), rational(1), rational(0)]));
        assert!(b.insert(&[rational(0), rational(1), rational(1)]));
        assert!(!b.insert(&[rational(1), rational(2), rational(1)]));
        assert!(b.contains(&[rational(2), rational(3), rational(1)]));
        assert_eq!(b.dimension(), 2);
    }

    #[test]
    fn primitive_vectors() {
        let v = [Rational::new(BigInt::from(-1), BigInt::from(2)), rational(0), rational(3)];
        assert_eq!(primitive_integer_vector(&v), vec![BigInt::from(1), BigInt::from(0), BigInt::from(-6)]);
    }
}
