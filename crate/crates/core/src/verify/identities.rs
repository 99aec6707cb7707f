//! Checks of algebraic identities among named elements.
//!
//! The subscripts `k`, `l`, `r`, `s` of the γ/μ commutators are 1-based:
//! subscript `k` of a dense-orbit element is `gamma(k - 1)` / `mu(k - 1)` in
//! dimension-vector indexing.

use super::{compare, CheckReport, Checker, Discrepancy, UnitPolicy};
use crate::hallcore::{HallElem, HallError, QEps};
use crate::symfun::{kostka, partitions_of, Partition};

impl Checker {
    /// `sum_k (-1)^k θi^(k) θj θi^(3-k) = 0`.
    pub fn check_serre(&self, i: u8) -> Result<CheckReport, HallError> {
        let j = 1 - i;
        let g = self.gens();
        let mut sum = HallElem::zero(self.q());
        for k in 0..=3u32 {
            let term = self.mul(&self.mul(&g.theta_div(i, k)?, &g.theta(j))?, &g.theta_div(i, 3 - k)?)?;
            sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        }
        Ok(self.report("serre", Discrepancy::Elem(sum)).param("i", i).param("j", j))
    }

    /// `[n] ρ_n = sum_{i=1}^n ε^{i-n} φ_i ρ_{n-i}`.
    pub fn check_relation(&self, n: u32) -> Result<CheckReport, HallError> {
        let g = self.gens();
        let lhs = g.rho(n)?.scale(&self.qint(n as i64));
        let mut rhs = HallElem::zero(self.q());
        for i in 1..=n {
            rhs = rhs.add(&self.mul(&g.phi(i)?, &g.rho(n - i)?)?.shift(i as i64 - n as i64));
        }
        Ok(self.report("relation", Discrepancy::Elem(lhs.sub(&rhs))).param("n", n))
    }

    /// `P̃_n` from its recursion against the direct indicator `ρ_n`.
    pub fn check_ptilde(&self, n: u32) -> Result<CheckReport, HallError> {
        let g = self.gens();
        let d = g.ptilde(n)?.sub(&g.rho(n)?);
        Ok(self.report("ptilde", Discrepancy::Elem(d)).param("n", n))
    }

    /// Coefficients of `u^1..u^N` in `℘(ε^{-1}u) = (1 + (ε-ε^{-1})Φ(u)) ℘(εu)`.
    ///
    /// With `inverted` the roles of `ε` and `ε^{-1}` in `℘` are exchanged,
    /// which is the form implied by the ρ recursion.
    pub fn check_pseries(&self, big_n: u32, inverted: bool) -> Result<CheckReport, HallError> {
        let g = self.gens();
        let s = if inverted { -1 } else { 1 };
        let e1 = &self.eps(1) - &self.eps(-1);
        let mut total = HallElem::zero(self.q());
        for n in 1..=big_n {
            let ni = n as i64;
            let lhs = g.rho(n)?.shift(-s * ni);
            let mut rhs = g.rho(n)?.shift(s * ni);
            for i in 1..=n {
                let term = self.mul(&g.phi(i)?, &g.rho(n - i)?)?.shift(s * (ni - i as i64));
                rhs = rhs.add(&term.scale(&e1));
            }
            total = total.add(&lhs.sub(&rhs));
        }
        let id = if inverted { "pseries_inverted" } else { "pseries" };
        Ok(self.report(id, Discrepancy::Elem(total)).param("N", big_n))
    }

    /// `γ_k μ_l - q^{-1} μ_l γ_k = φ_{k+l-1}` for subscripts `k, l ≥ 1`.
    pub fn check_gamma_mu(&self, k: u32, l: u32, policy: UnitPolicy) -> Result<CheckReport, HallError> {
        assert!(k >= 1 && l >= 1);
        let g = self.gens();
        let (gk, ml) = (g.gamma(k - 1), g.mu(l - 1));
        let lhs = self.mul(&gk, &ml)?.sub(&self.mul(&ml, &gk)?.shift(-2));
        let rhs = g.phi(k + l - 1)?;
        let (d, unit) = compare(&lhs, &rhs, policy);
        Ok(self.report("gamma_mu", d).param("k", k).param("l", l).with_unit(unit))
    }

    /// Both halves of the ρ/μ and γ/ρ commutation rule for subscripts `r, s ≥ 1`:
    /// `ρ_r μ_s = sum_i [r-i+1] μ_{r+s-i} ρ_i` (half 1) and
    /// `γ_s ρ_r = sum_i [r-i+1] ρ_i γ_{r+s-i}` (half 2).
    pub fn check_rho_commutation(
        &self,
        r: u32,
        s: u32,
        half: u8,
        policy: UnitPolicy,
    ) -> Result<CheckReport, HallError> {
        assert!(r >= 1 && s >= 1);
        let g = self.gens();
        let rr = g.rho(r)?;
        let (lhs, mut rhs) = if half == 1 {
            (self.mul(&rr, &g.mu(s - 1))?, HallElem::zero(self.q()))
        } else {
            (self.mul(&g.gamma(s - 1), &rr)?, HallElem::zero(self.q()))
        };
        for i in 0..=r {
            let c = self.qint((r - i + 1) as i64);
            let ri = g.rho(i)?;
            let term = if half == 1 {
                self.mul(&g.mu(r + s - i - 1), &ri)?
            } else {
                self.mul(&ri, &g.gamma(r + s - i - 1))?
            };
            rhs = rhs.add(&term.scale(&c));
        }
        let (d, unit) = compare(&lhs, &rhs, policy);
        Ok(self
            .report("rho_commutation", d)
            .param("r", r)
            .param("s", s)
            .param("half", half)
            .with_unit(unit))
    }
}

impl Checker {
    fn x(&self, r: u32) -> HallElem {
        self.gens().mu(r)
    }

    fn y(&self, s: u32) -> HallElem {
        assert!(s >= 1, "y is indexed from 1");
        self.gens().gamma(s - 1).neg()
    }

    fn commutator(&self, a: &HallElem, b: &HallElem) -> Result<HallElem, HallError> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// `[η_s, z_r] = ±([2s]/s) z_{r+s}` with `z = x` or `z = y`; either sign
    /// is accepted and the matching one recorded.
    fn drinfeld_heisenberg(&self, id: u8, s: u32, r: u32) -> Result<CheckReport, HallError> {
        let z = |k: u32| if id == 1 { self.x(k) } else { self.y(k) };
        let lhs = self.commutator(&self.gens().eta(s)?, &z(r))?;
        let c = &self.qint(2 * s as i64) / &QEps::from_int(self.q(), s as i64);
        let rhs = z(r + s).scale(&c);
        let plus = lhs.sub(&rhs);
        let minus = lhs.add(&rhs);
        let (d, note) = if minus.is_zero() && !plus.is_zero() {
            (minus, "sign -")
        } else {
            (plus, "sign +")
        };
        Ok(self
            .report("drinfeld", Discrepancy::Elem(d))
            .param("relation", id)
            .param("s", s)
            .param("r", r)
            .note(note))
    }

    /// Relation (3) for `x` (`v = ε`) or (4) for `y` (`v = ε^{-1}` in place of `ε`).
    fn drinfeld_quadratic(&self, id: u8, r: u32, s: u32) -> Result<CheckReport, HallError> {
        let (z, e): (Box<dyn Fn(u32) -> HallElem>, i64) = if id == 3 {
            (Box::new(|k| self.x(k)), 2)
        } else {
            (Box::new(|k| self.y(k)), -2)
        };
        let lhs = self.mul(&z(r + 1), &z(s))?.sub(&self.mul(&z(s), &z(r + 1))?.shift(e));
        let rhs = self.mul(&z(r), &z(s + 1))?.shift(e).sub(&self.mul(&z(s + 1), &z(r))?);
        Ok(self
            .report("drinfeld", Discrepancy::Elem(lhs.sub(&rhs)))
            .param("relation", id)
            .param("r", r)
            .param("s", s))
    }

    /// `ε^{-2} x_r y_s - y_s x_r = ψ_{r+s}/(ε - ε^{-1})`, reading
    /// `ψ_i = (ε - ε^{-1}) φ_i` as in the generating series.
    fn drinfeld_mixed(&self, r: u32, s: u32, policy: UnitPolicy) -> Result<CheckReport, HallError> {
        let (x, y) = (self.x(r), self.y(s));
        let lhs = self.mul(&x, &y)?.shift(-2).sub(&self.mul(&y, &x)?);
        let rhs = self.gens().phi(r + s)?;
        let (d, unit) = compare(&lhs, &rhs, policy);
        Ok(self
            .report("drinfeld", d)
            .param("relation", 5)
            .param("r", r)
            .param("s", s)
            .with_unit(unit))
    }

    /// Drinfeld relation `id` under `x_r ↦ μ(r)`, `y_s ↦ -γ(s-1)`, `h_s ↦ η_s`.
    /// The pair `(a, b)` is `(s, r)` for relations 1 and 2 and `(r, s)` otherwise.
    pub fn check_drinfeld(&self, id: u8, a: u32, b: u32, policy: UnitPolicy) -> Result<CheckReport, HallError> {
        match id {
            1 | 2 => self.drinfeld_heisenberg(id, a, b),
            3 | 4 => self.drinfeld_quadratic(id, a, b),
            5 => self.drinfeld_mixed(a, b, policy),
            _ => panic!("no Drinfeld relation {id}"),
        }
    }

    /// `sum_{i=1}^m [2i]/[i] [m-i+1] = m [m+1]`.
    pub fn check_q_identity(&self, m: u32) -> CheckReport {
        let q = self.q();
        let mut lhs = QEps::zero(q);
        for i in 1..=m as i64 {
            lhs += &(&(&self.qint(2 * i) / &self.qint(i)) * &self.qint(m as i64 - i + 1));
        }
        let rhs = self.qint(m as i64 + 1).scale_int(m as i64);
        self.report("q_identity", Discrepancy::Scalar(&lhs - &rhs))
            .param("m", m)
    }

    /// `ρ_λ = sum_μ K_{μλ} s_μ`.
    pub fn check_kostka(&self, lambda: &Partition) -> Result<CheckReport, HallError> {
        let g = self.gens();
        let lhs = g.rho_product(lambda)?;
        let mut rhs = HallElem::zero(self.q());
        for mu in partitions_of(lambda.weight()) {
            let k = kostka(&mu, lambda).expect("same weight");
            if k > 0 {
                rhs = rhs.add(&g.schur_of(&mu)?.scale(&QEps::from_int(self.q(), k as i64)));
            }
        }
        Ok(self
            .report("kostka", Discrepancy::Elem(lhs.sub(&rhs)))
            .param("lambda", lambda.parts().to_vec()))
    }

    /// `r(θ0^(λ1) θ1^(λ1) ... θ0^(λp) θ1^(λp)) = ρ_λ`, up to a recorded unit.
    pub fn check_flag_monomial(&self, lambda: &Partition, policy: UnitPolicy) -> Result<CheckReport, HallError> {
        let g = self.gens();
        let mut acc = HallElem::unit(self.q());
        for &part in lambda.parts() {
            acc = self.mul(&acc, &g.theta_div(0, part)?)?;
            acc = self.mul(&acc, &g.theta_div(1, part)?)?;
        }
        let (d, unit) = compare(&acc.restrict_regular(), &g.rho_product(lambda)?, policy);
        Ok(self
            .report("flag_monomial", d)
            .param("lambda", lambda.parts().to_vec())
            .with_unit(unit))
    }
}
