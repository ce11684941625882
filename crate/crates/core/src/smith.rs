//! Smith normal form of integer matrices (invariant factors only).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Diagonal of the Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithResult {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub factors: Vec<BigInt>,
}

impl SmithResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one, i.e. the torsion coefficients of a cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> SmithResult {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            // clear column t
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[r][t].is_zero() {
                    clean = false;
                    if a[r][t].abs() < a[t][t].abs() {
                        a.swap(t, r);
                    }
                }
            }
            // clear row t
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let p = row[t].clone();
                    row[c] -= &q * p;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                    if a[t][c].abs() < a[t][t].abs() {
                        for row in a.iter_mut() {
                            row.swap(t, c);
                        }
                    }
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !(&a[r][c] % &a[t][t]).is_zero()));
            match offender {
                Some(r) => {
                    let src = a[r].clone();
                    for (x, y) in a[t].iter_mut().zip(&src) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    SmithResult { factors }
}
