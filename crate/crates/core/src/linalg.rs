//! Exact dense linear algebra over Q(q): elimination, solving, rank, and
//! inversion. Pivots are chosen by minimal coefficient complexity, which
//! keeps intermediate rational functions small.

use crate::scalar::{pivot_cmp, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("system is inconsistent: target not in span")]
    Inconsistent,
    #[error("rank-deficient system: columns dependent (rank {rank}, need {need})")]
    RankDeficient { rank: usize, need: usize },
}

/// Dense matrix, row-major.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![vec![Scalar::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Mat { rows, cols, data }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.data[k][j].is_zero() {
                        continue;
                    }
                    let t = self.data[i][k].mul_ref(&other.data[k][j]);
                    out.data[i][j] += &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !self.data[i][j].is_zero() && !v[j].is_zero() {
                        acc += &self.data[i][j].mul_ref(&v[j]);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Row-reduce `aug` (rows x (cols + extra)) in place over the first `cols`
/// columns; returns the pivot column list.
fn row_reduce(aug: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let rows = aug.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        // pick the structurally simplest nonzero pivot in column c
        let mut best: Option<usize> = None;
        for i in r..rows {
            if aug[i][c].is_zero() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    if pivot_cmp(&aug[i][c], &aug[b][c]).is_lt() {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(p) = best else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].inv().expect("pivot nonzero");
        for j in c..aug[r].len() {
            if !aug[r][j].is_zero() {
                aug[r][j] = aug[r][j].mul_ref(&inv);
            }
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..aug[i].len() {
                    if !aug[r][j].is_zero() {
                        let t = f.mul_ref(&aug[r][j]);
                        aug[i][j] -= &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank of the matrix whose columns are the given vectors.
pub fn column_rank(cols: &[Vec<Scalar>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    let mut aug: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    row_reduce(&mut aug, cols.len()).len()
}

/// Solve sum_j x_j cols[j] = target exactly. The columns must be linearly
/// independent (otherwise `RankDeficient`); an unrepresentable target gives
/// `Inconsistent`.
pub fn solve_columns(cols: &[Vec<Scalar>], target: &[Scalar]) -> Result<Vec<Scalar>, SolveError> {
    let n = cols.len();
    if n == 0 {
        return if target.iter().all(|c| c.is_zero()) {
            Ok(Vec::new())
        } else {
            Err(SolveError::Inconsistent)
        };
    }
    let rows = cols[0].len();
    assert_eq!(rows, target.len());
    let mut aug: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n {
        return Err(SolveError::RankDeficient {
            rank: pivots.len(),
            need: n,
        });
    }
    // consistency: rows past the pivot rows must have zero rhs
    for row in aug.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Err(SolveError::Inconsistent);
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Ok(x)
}

/// Solve with a possibly rank-deficient column set, returning one exact
/// particular solution (free variables set to zero).
pub fn solve_columns_any(
    cols: &[Vec<Scalar>],
    target: &[Scalar],
) -> Result<Vec<Scalar>, SolveError> {
    let n = cols.len();
    let rows = cols.first().map_or(target.len(), |c| c.len());
    let mut aug: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    for row in aug.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Err(SolveError::Inconsistent);
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Ok(x)
}

/// Exact inverse via Gauss-Jordan; `None` when singular.
pub fn invert(m: &Mat) -> Option<Mat> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row = m.data[i].clone();
            for j in 0..n {
                row.push(if i == j { Scalar::one() } else { Scalar::zero() });
            }
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    let mut out = Mat::zeros(n, n);
    for (r, &c) in pivots.iter().enumerate() {
        for j in 0..n {
            out.data[c][j] = aug[r][n + j].clone();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn solve_simple() {
        // columns (1, q), (0, 1); target (1, q+1) -> x = (1, 1)
        let cols = vec![
            vec![s(1), Scalar::q_pow(1)],
            vec![s(0), s(1)],
        ];
        let target = vec![s(1), Scalar::q_pow(1).add_ref(&s(1))];
        let x = solve_columns(&cols, &target).unwrap();
        assert_eq!(x, vec![s(1), s(1)]);
    }

    #[test]
    fn detects_inconsistency_and_rank() {
        let cols = vec![vec![s(1), s(0)], vec![s(2), s(0)]];
        assert!(matches!(
            solve_columns(&cols, &[s(0), s(1)]),
            Err(SolveError::RankDeficient { .. })
        ));
        let cols = vec![vec![s(1), s(0)]];
        assert_eq!(
            solve_columns(&cols, &[s(0), s(1)]),
            Err(SolveError::Inconsistent)
        );
        assert_eq!(column_rank(&[vec![s(1), s(2)], vec![s(2), s(4)]]), 1);
    }

    #[test]
    fn invert_roundtrip() {
        let m = Mat::from_rows(vec![
            vec![Scalar::q_pow(1), s(1)],
            vec![s(1), Scalar::q_pow(-1)],
        ]);
        // det = 1 - 1 = 0: singular
        assert!(invert(&m).is_none());
        let m = Mat::from_rows(vec![
            vec![Scalar::q_pow(1), s(1)],
            vec![s(0), s(3)],
        ]);
        let inv = invert(&m).unwrap();
        let prod = m.mul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(prod.data[i][j], if i == j { s(1) } else { s(0) });
            }
        }
    }
}
