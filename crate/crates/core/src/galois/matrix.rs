use super::{FiniteField, GaloisError};

/// A dense square matrix over a finite field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub entries: Vec<u32>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            entries: rows.concat(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix { n, entries }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn mul(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).fold(0, |acc, k| f.add(acc, f.mul(self.get(i, k), other.get(k, j))));
            }
        }
        Matrix { n, entries }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, f: &FiniteField) -> u32 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let d = a[col * n + col];
            det = f.mul(det, d);
            let dinv = f.inv(d).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], dinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self, f: &FiniteField) -> Result<Matrix, GaloisError> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(n).entries;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(GaloisError::SingularMatrix)?;
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let dinv = f.inv(a[col * n + col]).expect("pivot is nonzero");
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], dinv);
                inv[col * n + j] = f.mul(inv[col * n + j], dinv);
            }
            for r in (0..n).filter(|&r| r != col) {
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Ok(Matrix { n, entries: inv })
    }
}
