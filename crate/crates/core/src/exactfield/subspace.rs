//! Subspaces of F_p^n in canonical (reduced row echelon) form.

use super::fp::{mul_mod, sub_mod};
use super::matrix::MatrixFq;
use super::FieldError;

/// A subspace of `F_p^ambient`, stored as the RREF of a basis.
///
/// Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceFq {
    basis: MatrixFq,
    pivots: Vec<usize>,
}

impl SubspaceFq {
    pub fn zero(p: u32, ambient: usize) -> Self {
        SubspaceFq {
            basis: MatrixFq::zeros(p, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        SubspaceFq {
            basis: MatrixFq::identity(p, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let data: Vec<u32> = vectors.iter().flatten().copied().collect();
        let m = MatrixFq::from_flat(p, vectors.len(), ambient, data);
        Self::from_rows_matrix(&m)
    }

    /// Row space of `m`.
    pub fn from_rows_matrix(m: &MatrixFq) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let basis = MatrixFq::from_flat(m.modulus(), k, m.cols(), r.data()[..k * m.cols()].to_vec());
        SubspaceFq { basis, pivots }
    }

    pub fn modulus(&self) -> u32 {
        self.basis.modulus()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// RREF basis, one row per basis vector.
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the standard vectors at these positions
    /// span a fixed complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts the component along this subspace; the result vanishes at pivots.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.modulus();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc];
            if f == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                *x = sub_mod(*x, mul_mod(f, b, p), p);
            }
        }
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of a vector known to lie in the subspace, w.r.t. the RREF basis.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    pub fn contains(&self, other: &SubspaceFq) -> bool {
        (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    pub fn join(&self, other: &SubspaceFq) -> SubspaceFq {
        Self::from_rows_matrix(&MatrixFq::vstack(&self.basis, &other.basis))
    }

    /// Image of the subspace under the linear map `m` (acting on column vectors).
    pub fn image_under(&self, m: &MatrixFq) -> SubspaceFq {
        let vecs: Vec<Vec<u32>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        SubspaceFq::span(self.modulus(), m.rows(), &vecs)
    }

    /// All subspaces of dimension `k` that contain `self`.
    pub fn superspaces(&self, k: usize) -> Result<Vec<SubspaceFq>, FieldError> {
        let n = self.ambient();
        if k > n || k < self.dim() {
            return Err(FieldError::InvalidDimension { k, n });
        }
        let comp = self.complement_coords();
        let p = self.modulus();
        let inner = enumerate_subspaces(comp.len(), k - self.dim(), p)?;
        Ok(inner
            .into_iter()
            .map(|s| {
                let mut vecs: Vec<Vec<u32>> = (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect();
                for i in 0..s.dim() {
                    let mut v = vec![0u32; n];
                    for (j, &c) in comp.iter().enumerate() {
                        v[c] = s.basis.get(i, j);
                    }
                    vecs.push(v);
                }
                SubspaceFq::span(p, n, &vecs)
            })
            .collect())
    }
}

/// Every `k`-dimensional subspace of `F_p^n`, each exactly once.
pub fn enumerate_subspaces(n: usize, k: usize, p: u32) -> Result<Vec<SubspaceFq>, FieldError> {
    if k > n {
        return Err(FieldError::InvalidDimension { k, n });
    }
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(n, k, 0, &mut pivots, &mut |piv| {
        // free slots: (row i, col c) with c > piv[i] and c not a pivot
        let mut free = Vec::new();
        for (i, &pc) in piv.iter().enumerate() {
            for c in pc + 1..n {
                if !piv.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut m = MatrixFq::zeros(p, k, n);
            for (i, &pc) in piv.iter().enumerate() {
                m.set(i, pc, 1);
            }
            for (&(i, c), &v) in free.iter().zip(&vals) {
                m.set(i, c, v);
            }
            out.push(SubspaceFq {
                basis: m,
                pivots: piv.to_vec(),
            });
            // odometer
            let mut j = 0;
            while j < vals.len() {
                vals[j] += 1;
                if vals[j] < p {
                    break;
                }
                vals[j] = 0;
                j += 1;
            }
            if j == vals.len() {
                break;
            }
        }
    });
    Ok(out)
}

fn choose_pivots(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for c in start..n {
        if n - c < k - acc.len() {
            break;
        }
        acc.push(c);
        choose_pivots(n, k, c + 1, acc, f);
        acc.pop();
    }
}

/// Gaussian binomial `[n choose k]_q` by the product formula.
pub fn gaussian_binomial(n: u32, k: u32, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(k - i) - 1;
    }
    num / den
}
