use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::domain::Domain;
use crate::error::{Error, Result};

/// Row-major matrix with entries in a coefficient domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(domain: Domain, rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount { rows, cols, got: entries.len() });
        }
        let entries = entries.iter().map(|e| domain.reduce(e)).collect();
        Ok(ExactMatrix { domain, rows, cols, entries })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(domain: Domain, rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged rows".into()));
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        ExactMatrix::new(domain, r, c, entries)
    }

    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Self {
        ExactMatrix { domain, rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(domain: Domain, n: usize) -> Self {
        let mut m = ExactMatrix::zeros(domain, n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = self.domain.reduce(&v);
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every intermediate entry is a minor of the input, so all divisions are
    /// exact over Z.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let dom = self.domain;
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = dom.sub(&(&a[i][j] * &a[k][k]), &(&a[i][k] * &a[k][j]));
                    a[i][j] = dom.div_exact(&num, &prev);
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { dom.neg(&det) } else { det })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
