//! Product and coproduct normalization data.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Which factor of a product is evaluated on the submodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorOrder {
    /// `(f*g)(V) = sum_W f(W) g(V/W)`.
    SubFirst,
    /// `(f*g)(V) = sum_W f(V/W) g(W)`.
    QuotFirst,
}

/// Extra ε-power in `θ^(k) = ε^e(k) θ^k / [k]!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DividedRule {
    /// `e(k) = 0`.
    Plain,
    /// `e(k) = k(k-1)/2`.
    PlusBinom,
    /// `e(k) = -k(k-1)/2`.
    MinusBinom,
}

impl DividedRule {
    pub const ALL: [DividedRule; 3] = [DividedRule::Plain, DividedRule::PlusBinom, DividedRule::MinusBinom];

    pub fn exponent(self, k: u32) -> i64 {
        let c = (k as i64) * (k as i64 - 1) / 2;
        match self {
            DividedRule::Plain => 0,
            DividedRule::PlusBinom => c,
            DividedRule::MinusBinom => -c,
        }
    }
}

/// Bilinear twist forms and flags fixing the product and coproduct.
///
/// The product of homogeneous elements of grades `b`, `c` carries `ε^t(b,c)`
/// with `t(b,c) = sum_ij t[i][j] b_i c_j`; the coproduct component at `(b, c)`
/// carries `ε^u(b,c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistConvention {
    pub factor_order: FactorOrder,
    pub t: [[i64; 2]; 2],
    pub u: [[i64; 2]; 2],
    pub divided: DividedRule,
}

pub type Grade = (usize, usize);

fn bilinear(m: &[[i64; 2]; 2], b: Grade, c: Grade) -> i64 {
    let b = [b.0 as i64, b.1 as i64];
    let c = [c.0 as i64, c.1 as i64];
    (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| m[i][j] * b[i] * c[j])
        .sum()
}

/// `n(b,c) = 2 b0 c1 - b0 c0 - b1 c1`.
pub const COPRODUCT_TWIST: [[i64; 2]; 2] = [[-1, 2], [0, -1]];

impl TwistConvention {
    /// The convention singled out by calibration against the anchors.
    pub fn calibrated() -> Self {
        TwistConvention {
            factor_order: FactorOrder::QuotFirst,
            t: [[-1, -2], [0, -1]],
            u: COPRODUCT_TWIST,
            divided: DividedRule::Plain,
        }
    }

    pub fn t_form(&self, b: Grade, c: Grade) -> i64 {
        bilinear(&self.t, b, c)
    }

    pub fn u_form(&self, b: Grade, c: Grade) -> i64 {
        bilinear(&self.u, b, c)
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canon = serde_json::to_string(self).expect("serializable");
        let digest = Sha256::digest(canon.as_bytes());
        hex::encode(digest)[..16].to_string()
    }

    /// The same convention with `t01` raised by one.
    pub fn perturbed(&self) -> Self {
        let mut c = *self;
        c.t[0][1] += 1;
        c
    }
}
