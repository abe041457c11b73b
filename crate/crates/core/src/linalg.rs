//! Dense rational matrices with fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
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
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| clear_denominators(self.row(r)).0)
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        bareiss(rows, self.cols).rank
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let (ints, lcm) = clear_denominators(self.row(r));
                scale *= lcm;
                ints
            })
            .collect();
        let elim = bareiss(rows, self.cols);
        if elim.rank < self.rows {
            Rational::zero()
        } else {
            Rational::new(elim.det, scale)
        }
    }
}

impl Matrix {
    /// Basis of the right kernel `{v : A v = 0}` from the reduced row echelon form.
    ///
    /// Gauss–Jordan over the rationals; independent of the fraction-free
    /// routine behind [`Matrix::rank`].
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(lead, p);
            let inv = rows[lead][col].recip();
            for x in rows[lead].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[lead].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != lead && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &factor * y;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == rows.len() {
                break;
            }
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rows[r][free].clone();
                }
                v
            })
            .collect()
    }
}

/// Multiplies a rational row by the lcm of its denominators.
fn clear_denominators(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    (ints, lcm)
}

struct Elimination {
    rank: usize,
    /// Signed last pivot; equals the determinant when the input is square and of full rank.
    det: BigInt,
}

/// Bareiss fraction-free elimination over the integers. Every division is exact.
fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Elimination {
    let nrows = rows.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            rows.swap(pivot_row, rank);
            negate = !negate;
        }
        let pivot = rows[rank][col].clone();
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_vals = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for c in col..cols {
                let v = &pivot * &row[c] - &factor * &pivot_vals[c];
                debug_assert!((&v % &prev).is_zero());
                row[c] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    let det = if negate { -prev } else { prev };
    Elimination { rank, det }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(m(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, 0]]).rank(), 2);
        assert_eq!(Matrix::identity(5).rank(), 5);
        assert_eq!(Matrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 3 - a.rank());
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert!(Matrix::identity(3).kernel().is_empty());
        assert_eq!(Matrix::zeros(2, 3).kernel().len(), 3);
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), int(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), int(-1));
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det(), int(6));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), int(0));
        let half = Matrix::from_rows(vec![vec![frac(1, 2), int(0)], vec![int(0), frac(2, 3)]]);
        assert_eq!(half.det(), frac(1, 3));
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        fn cofactor(a: &[Vec<i64>]) -> i64 {
            if a.len() == 1 {
                return a[0][0];
            }
            (0..a.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = a[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * a[0][j] * cofactor(&minor)
                })
                .sum()
        }
        let a = vec![
            vec![3, -1, 4, 1],
            vec![5, 9, -2, 6],
            vec![5, 3, 5, -8],
            vec![9, 7, 9, 3],
        ];
        let rows: Vec<&[i64]> = a.iter().map(|r| r.as_slice()).collect();
        assert_eq!(m(&rows).det(), int(cofactor(&a)));
    }
}
