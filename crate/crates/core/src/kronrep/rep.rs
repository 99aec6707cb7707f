//! Concrete representations: two matrices and an orientation flag.

use serde::{Deserialize, Serialize};

use crate::exactfield::{check_prime, invariant_factors, BinaryFormFq, MatrixFq, Poly};

use super::KronError;

/// `Plus` has both arrows `V0 -> V1` (matrices `d1 x d0`); `Minus` has them
/// `V1 -> V0` (matrices `d0 x d1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KronRep {
    q: u32,
    dims: (usize, usize),
    x1: MatrixFq,
    x2: MatrixFq,
    orientation: Orientation,
}

impl KronRep {
    pub fn new(
        q: u32,
        dims: (usize, usize),
        x1: MatrixFq,
        x2: MatrixFq,
        orientation: Orientation,
    ) -> Result<Self, KronError> {
        check_prime(q)?;
        let want = match orientation {
            Orientation::Plus => (dims.1, dims.0),
            Orientation::Minus => (dims.0, dims.1),
        };
        for m in [&x1, &x2] {
            if m.modulus() != q {
                return Err(KronError::Field(crate::exactfield::FieldError::ModulusMismatch {
                    left: q,
                    right: m.modulus(),
                }));
            }
            if m.shape() != want {
                return Err(KronError::Shape(format!(
                    "expected {}x{} matrices for dims {:?}, got {}x{}",
                    want.0,
                    want.1,
                    dims,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(KronRep {
            q,
            dims,
            x1,
            x2,
            orientation,
        })
    }

    /// Plus-oriented rep from two `d1 x d0` matrices.
    pub fn plus(q: u32, x1: MatrixFq, x2: MatrixFq) -> Result<Self, KronError> {
        let dims = (x1.cols(), x1.rows());
        Self::new(q, dims, x1, x2, Orientation::Plus)
    }

    pub fn zero(q: u32, dims: (usize, usize), orientation: Orientation) -> Self {
        let (r, c) = match orientation {
            Orientation::Plus => (dims.1, dims.0),
            Orientation::Minus => (dims.0, dims.1),
        };
        KronRep {
            q,
            dims,
            x1: MatrixFq::zeros(q, r, c),
            x2: MatrixFq::zeros(q, r, c),
            orientation,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn x1(&self) -> &MatrixFq {
        &self.x1
    }

    pub fn x2(&self) -> &MatrixFq {
        &self.x2
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, KronError> {
        if self.orientation != other.orientation {
            return Err(KronError::Orientation);
        }
        Self::new(
            self.q,
            (self.dims.0 + other.dims.0, self.dims.1 + other.dims.1),
            self.x1.direct_sum(&other.x1),
            self.x2.direct_sum(&other.x2),
            self.orientation,
        )
    }

    /// Swaps the two vertices: the matrices are kept, dims swap and the
    /// orientation flips. An involution.
    pub fn transpose_tau(&self) -> Self {
        KronRep {
            q: self.q,
            dims: (self.dims.1, self.dims.0),
            x1: self.x1.clone(),
            x2: self.x2.clone(),
            orientation: self.orientation.flip(),
        }
    }

    /// The Plus rep on the same dimension vector with transposed matrices
    /// (the linear dual). Identity on Plus reps.
    pub fn to_plus(&self) -> Self {
        match self.orientation {
            Orientation::Plus => self.clone(),
            Orientation::Minus => KronRep {
                q: self.q,
                dims: self.dims,
                x1: self.x1.transpose(),
                x2: self.x2.transpose(),
                orientation: Orientation::Plus,
            },
        }
    }

    /// The Plus rep with transposed matrices on swapped dims; the dual of a
    /// Plus rep, so it exchanges preprojectives and preinjectives.
    pub fn dual_plus(&self) -> Self {
        let p = self.to_plus();
        KronRep {
            q: p.q,
            dims: (p.dims.1, p.dims.0),
            x1: p.x1.transpose(),
            x2: p.x2.transpose(),
            orientation: Orientation::Plus,
        }
    }

    /// Pencil `t*x1 + x2` over F_q[t].
    pub(crate) fn pencil(&self, swap: bool) -> Vec<Vec<Poly>> {
        let (a, b) = if swap {
            (&self.x2, &self.x1)
        } else {
            (&self.x1, &self.x2)
        };
        (0..a.rows())
            .map(|r| {
                (0..a.cols())
                    .map(|c| Poly::new(self.q, vec![b.get(r, c), a.get(r, c)]))
                    .collect()
            })
            .collect()
    }

    /// `det(lambda x1 + mu x2)`, or `None` when the matrices are not square.
    pub fn pencil_determinant(&self) -> Option<BinaryFormFq> {
        let (d0, d1) = self.dims;
        if d0 != d1 {
            return None;
        }
        let inv = invariant_factors(self.pencil(false));
        if inv.len() < d0 {
            return Some(BinaryFormFq::new(self.q, vec![0; d0 + 1]));
        }
        let det = inv.iter().fold(Poly::constant(self.q, 1), |acc, f| acc.mul(f));
        let mut c = det.coeffs().to_vec();
        c.resize(d0 + 1, 0);
        Some(BinaryFormFq::new(self.q, c))
    }

    /// Square with a pencil determinant that is not identically zero.
    pub fn is_regular(&self) -> bool {
        match self.pencil_determinant() {
            Some(f) => !f.is_zero(),
            None => false,
        }
    }
}

/// Solution-space dimension of `f1 x_i^a = x_i^b f0` for Plus reps.
fn hom_dim_plus(a: &KronRep, b: &KronRep) -> usize {
    let (a0, a1) = a.dims;
    let (b0, b1) = b.dims;
    let n0 = b0 * a0;
    let unknowns = n0 + b1 * a1;
    let rows = 2 * b1 * a0;
    if unknowns == 0 {
        return 0;
    }
    let p = a.q;
    let mut m = MatrixFq::zeros(p, rows, unknowns);
    for (i, (xa, xb)) in [(&a.x1, &b.x1), (&a.x2, &b.x2)].into_iter().enumerate() {
        for r in 0..b1 {
            for c in 0..a0 {
                let eq = i * b1 * a0 + r * a0 + c;
                // (f1 xa)[r][c] = sum_k f1[r][k] xa[k][c]
                for k in 0..a1 {
                    let v = xa.get(k, c);
                    if v != 0 {
                        let col = n0 + r * a1 + k;
                        m.set(eq, col, (m.get(eq, col) + v) % p);
                    }
                }
                // -(xb f0)[r][c] = -sum_k xb[r][k] f0[k][c]
                for k in 0..b0 {
                    let v = xb.get(r, k);
                    if v != 0 {
                        let col = k * a0 + c;
                        m.set(eq, col, (m.get(eq, col) + p - v) % p);
                    }
                }
            }
        }
    }
    unknowns - m.rank()
}

/// `dim Hom(a, b)`. Both reps must share `q` and orientation.
pub fn hom_dim(a: &KronRep, b: &KronRep) -> Result<usize, KronError> {
    if a.q != b.q {
        return Err(KronError::Field(crate::exactfield::FieldError::ModulusMismatch {
            left: a.q,
            right: b.q,
        }));
    }
    if a.orientation != b.orientation {
        return Err(KronError::Orientation);
    }
    Ok(match a.orientation {
        Orientation::Plus => hom_dim_plus(a, b),
        // Hom(a, b) is dual to Hom(b*, a*)
        Orientation::Minus => hom_dim_plus(&b.to_plus(), &a.to_plus()),
    })
}

/// Euler form `a0 b0 + a1 b1 - 2 a0 b1`.
pub fn euler_form(a: (usize, usize), b: (usize, usize)) -> i64 {
    (a.0 * b.0 + a.1 * b.1) as i64 - 2 * (a.0 * b.1) as i64
}

/// `dim Ext^1(a, b) = dim Hom(a, b) - <dim a, dim b>`.
pub fn ext_dim(a: &KronRep, b: &KronRep) -> Result<usize, KronError> {
    let h = hom_dim(a, b)? as i64;
    Ok((h - euler_form(a.dims, b.dims)) as usize)
}
