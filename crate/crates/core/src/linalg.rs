//! Dense matrices over `F_p`: row reduction, rank, membership and null spaces.

use crate::error::{Error, Result};
use crate::gfpoly::PrimeField;

/// Row-major dense matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<u8>>,
}

impl Matrix {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Matrix {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(field: PrimeField, ncols: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        let mut m = Matrix::new(field, ncols);
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    pub fn push_row(&mut self, row: Vec<u8>) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::Mismatch(format!(
                "row of length {} in a matrix with {} columns",
                row.len(),
                self.ncols
            )));
        }
        let f = self.field;
        self.rows
            .push(row.into_iter().map(|c| f.reduce(c as u32)).collect());
        Ok(())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i]
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.ncols || self.field != other.field {
            return Err(Error::Mismatch(format!(
                "stacking {}-column and {}-column matrices",
                self.ncols, other.ncols
            )));
        }
        let mut m = self.clone();
        m.rows.extend(other.rows.iter().cloned());
        Ok(m)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows() != other.nrows() {
            return Err(Error::Mismatch(format!(
                "concatenating {}-row and {}-row matrices",
                self.nrows(),
                other.nrows()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        Ok(Matrix {
            field: self.field,
            ncols: self.ncols + other.ncols,
            rows,
        })
    }

    /// Reduced row echelon form with leftmost pivots; zero rows dropped.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, sel);
            let inv = f.inv(rows[r][col]);
            if inv != 1 {
                for c in rows[r].iter_mut() {
                    *c = f.mul(*c, inv);
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col] == 0 {
                    continue;
                }
                let factor = row[col];
                axpy(f, row, &pivot_row, f.neg(factor), col);
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Echelon {
            basis: Matrix {
                field: f,
                ncols: self.ncols,
                rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Whether both matrices span the same row space.
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.field == other.field
            && self.ncols == other.ncols
            && self.echelon().basis == other.echelon().basis
    }

    /// Basis of the right null space `{v : self * v^T = 0}`.
    pub fn null_space(&self) -> Matrix {
        let f = self.field;
        let ech = self.echelon();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut out = Matrix::new(f, self.ncols);
        for free in (0..self.ncols).filter(|&c| pivot_set[c].is_none()) {
            let mut v = vec![0u8; self.ncols];
            v[free] = 1;
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = f.neg(ech.basis.rows[r][free]);
            }
            out.rows.push(v);
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.ncols)
            .map(|c| self.rows.iter().map(|r| r[c]).collect())
            .collect();
        Matrix {
            field: self.field,
            ncols: self.nrows(),
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&c| c == 0))
    }

    /// `message * self` for a message of length `nrows`.
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut out = vec![0u8; self.ncols];
        for (row, &m) in self.rows.iter().zip(message) {
            if m != 0 {
                axpy(f, &mut out, row, m, 0);
            }
        }
        out
    }
}

/// `dst[from..] += factor * src[from..]`.
#[inline]
pub(crate) fn axpy(f: PrimeField, dst: &mut [u8], src: &[u8], factor: u8, from: usize) {
    if f.is_binary() {
        for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
            *d ^= s;
        }
    } else {
        for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
            *d = f.add(*d, f.mul(factor, s));
        }
    }
}

/// Reduced row echelon basis together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Residue of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let f = self.basis.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                axpy(f, &mut w, row, f.neg(c), 0);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        v.len() == self.basis.ncols && self.reduce(v).iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_membership() {
        let f = PrimeField::BINARY;
        let m = Matrix::from_rows(
            f,
            4,
            vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]],
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
        let e = m.echelon();
        assert_eq!(e.pivots(), &[0, 1]);
        assert!(e.contains(&[1, 0, 1, 0]));
        assert!(!e.contains(&[0, 0, 0, 1]));
    }

    #[test]
    fn null_space_is_orthogonal() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(f, 4, vec![vec![1, 2, 3, 4], vec![0, 1, 4, 2]]).unwrap();
        let ns = m.null_space();
        assert_eq!(ns.nrows(), 2);
        for v in ns.rows() {
            for r in m.rows() {
                let s: u32 = r.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                assert_eq!(s % 5, 0);
            }
        }
    }

    #[test]
    fn odd_field_echelon_is_reduced() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(f, 3, vec![vec![2, 1, 0], vec![1, 1, 1]]).unwrap();
        let e = m.echelon();
        assert_eq!(e.basis().row(0)[0], 1);
        assert_eq!(e.basis().row(1)[0], 0);
        assert!(e.contains(&m.encode(&[2, 2])));
    }
}
