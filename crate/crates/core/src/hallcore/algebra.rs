//! Twisted product, coproduct, inner product and the reflection σ₁.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::exactfield::{gaussian_binomial, MatrixFq};
use crate::kronrep::{classify, group_order, reflect_at_1, representative, IsoClass, KronRep, Orientation};

use super::convention::{FactorOrder, Grade, TwistConvention};
use super::elem::HallElem;
use super::qeps::QEps;
use super::store::StructureStore;
use super::tensor::HallTensor;
use super::HallError;

fn add(a: Grade, b: Grade) -> Grade {
    (a.0 + b.0, a.1 + b.1)
}

fn big(n: BigUint) -> BigInt {
    BigInt::from(n)
}

/// The Hall algebra at a fixed `q` under a fixed convention.
#[derive(Clone)]
pub struct HallAlgebra {
    store: Arc<StructureStore>,
    conv: TwistConvention,
}

impl HallAlgebra {
    pub fn new(q: u32, conv: TwistConvention) -> Result<Self, HallError> {
        crate::exactfield::check_prime(q).map_err(crate::kronrep::KronError::from)?;
        Ok(Self::with_store(Arc::new(StructureStore::new(q)), conv))
    }

    /// Shares raw structure constants with other conventions.
    pub fn with_store(store: Arc<StructureStore>, conv: TwistConvention) -> Self {
        HallAlgebra { store, conv }
    }

    pub fn q(&self) -> u32 {
        self.store.q()
    }

    pub fn convention(&self) -> &TwistConvention {
        &self.conv
    }

    pub fn store(&self) -> &Arc<StructureStore> {
        &self.store
    }

    pub fn with_convention(&self, conv: TwistConvention) -> Self {
        HallAlgebra {
            store: self.store.clone(),
            conv,
        }
    }

    fn check(&self, f: &HallElem) -> Result<(), HallError> {
        if f.q() != self.q() {
            return Err(HallError::FieldMismatch(f.q(), self.q()));
        }
        Ok(())
    }

    /// Homogeneous product without twist, for Plus elements.
    fn raw_homogeneous(
        &self,
        fb: &HallElem,
        gc: &HallElem,
        b: Grade,
        c: Grade,
        order: FactorOrder,
    ) -> Result<HallElem, HallError> {
        let d = add(b, c);
        let w = match order {
            FactorOrder::QuotFirst => c,
            FactorOrder::SubFirst => b,
        };
        self.store.prepare(d, w)?;
        let classes = self.store.classes(d)?;
        let q = self.q();
        let terms: Vec<(IsoClass, QEps)> = classes
            .par_iter()
            .map(|z| -> Result<Option<(IsoClass, QEps)>, HallError> {
                let sec = self.store.section(z, w)?;
                let mut acc = QEps::zero(q);
                for (s, t, n) in sec.iter() {
                    let (x, y) = match order {
                        FactorOrder::QuotFirst => (t, s),
                        FactorOrder::SubFirst => (s, t),
                    };
                    let fx = fb.get(x);
                    if fx.is_zero() {
                        continue;
                    }
                    let gy = gc.get(y);
                    if gy.is_zero() {
                        continue;
                    }
                    acc += &(&fx * &gy).scale_int(*n as i64);
                }
                Ok((!acc.is_zero()).then(|| (z.clone(), acc)))
            })
            .filter_map(|r| r.transpose())
            .collect::<Result<_, _>>()?;
        Ok(HallElem::from_terms(q, terms))
    }

    /// Product with the twist exponent supplied per pair of grades.
    pub fn product_with(
        &self,
        f: &HallElem,
        g: &HallElem,
        order: FactorOrder,
        twist: impl Fn(Grade, Grade) -> i64,
    ) -> Result<HallElem, HallError> {
        self.check(f)?;
        self.check(g)?;
        let mut out = HallElem::zero(self.q());
        for b in f.grades() {
            let fb = f.homogeneous_part(b);
            for c in g.grades() {
                let gc = g.homogeneous_part(c);
                let part = self.raw_homogeneous(&fb, &gc, b, c, order)?;
                out = out.add(&part.shift(twist(b, c)));
            }
        }
        Ok(out)
    }

    /// Untwisted product in the given factor order.
    pub fn raw_product(&self, f: &HallElem, g: &HallElem, order: FactorOrder) -> Result<HallElem, HallError> {
        self.product_with(f, g, order, |_, _| 0)
    }

    /// `f * g`. Minus elements multiply through the vertex swap.
    pub fn product(&self, f: &HallElem, g: &HallElem) -> Result<HallElem, HallError> {
        let minus = |e: &HallElem| e.orientation() == Orientation::Minus && !e.is_zero();
        match (minus(f), minus(g)) {
            (false, false) => {
                let conv = self.conv;
                self.product_with(f, g, conv.factor_order, |b, c| conv.t_form(b, c))
            }
            (true, true) => {
                let p = self.product(&swap_vertices(f), &swap_vertices(g))?;
                Ok(swap_vertices(&p))
            }
            _ => Err(HallError::OrientationMismatch),
        }
    }

    /// `f * g`, panicking on mismatched inputs.
    pub fn mul(&self, f: &HallElem, g: &HallElem) -> HallElem {
        self.product(f, g).expect("product of compatible elements")
    }

    /// Left-nested product of a word; the unit for an empty word.
    pub fn mul_all(&self, factors: &[&HallElem]) -> HallElem {
        factors
            .iter()
            .fold(HallElem::unit(self.q()), |acc, f| self.mul(&acc, f))
    }

    fn orbit(&self, c: &IsoClass) -> BigRational {
        let g = big(group_order(self.q(), c.dims()));
        BigRational::new(g, big(self.store.aut(c)))
    }

    /// The component of `Δ(f)` in grade `(b, c)`, computed from Hall numbers:
    /// the number of extensions of fixed representatives landing in class `Z`
    /// is `|O_Z| g^Z / (Gr |O_X| |O_Y|)`.
    pub fn coproduct(&self, f: &HallElem, b: Grade, c: Grade) -> Result<HallTensor, HallError> {
        self.check(f)?;
        let q = self.q();
        let d = add(b, c);
        let w = match self.conv.factor_order {
            FactorOrder::QuotFirst => c,
            FactorOrder::SubFirst => b,
        };
        let gr = gaussian_binomial(d.0 as u32, w.0 as u32, q) * gaussian_binomial(d.1 as u32, w.1 as u32, q);
        let gr = BigRational::from_integer(BigInt::from(gr));
        let twist = QEps::eps_pow(q, self.conv.u_form(b, c));
        let mut out = HallTensor::zero(q);
        for (z, fz) in f.homogeneous_part(d).terms() {
            let oz = self.orbit(z);
            for (s, t, n) in self.store.section(z, w)?.iter() {
                let (x, y) = match self.conv.factor_order {
                    FactorOrder::QuotFirst => (t, s),
                    FactorOrder::SubFirst => (s, t),
                };
                let ratio = &oz * BigRational::from_integer(BigInt::from(*n)) / (&gr * self.orbit(x) * self.orbit(y));
                out.add_term(x.clone(), y.clone(), fz.scale_rational(&ratio) * &twist);
            }
        }
        Ok(out)
    }

    /// Sum of the coproduct components over every splitting of each grade.
    pub fn coproduct_full(&self, f: &HallElem) -> Result<HallTensor, HallError> {
        let mut out = HallTensor::zero(self.q());
        for d in f.grades() {
            for b0 in 0..=d.0 {
                for b1 in 0..=d.1 {
                    let part = self.coproduct(f, (b0, b1), (d.0 - b0, d.1 - b1))?;
                    out = out.add(&part);
                }
            }
        }
        Ok(out)
    }

    /// Coproduct component by enumerating every block extension
    /// `[[s, a], [0, t]]` of the canonical sub and quotient models.
    pub fn coproduct_direct(&self, f: &HallElem, b: Grade, c: Grade) -> Result<HallTensor, HallError> {
        self.check(f)?;
        let q = self.q();
        let twist = QEps::eps_pow(q, self.conv.u_form(b, c));
        let mut out = HallTensor::zero(q);
        for x in self.store.classes(b)?.iter() {
            for y in self.store.classes(c)?.iter() {
                let (sub, quot) = match self.conv.factor_order {
                    FactorOrder::QuotFirst => (representative(y), representative(x)),
                    FactorOrder::SubFirst => (representative(x), representative(y)),
                };
                let (w0, w1) = sub.dims();
                let (t0, t1) = quot.dims();
                let cells = w1 * t0;
                let total = (q as u64).pow(2 * cells as u32);
                let mut acc = QEps::zero(q);
                for idx in 0..total {
                    let mut k = idx;
                    let mut next = || {
                        let v = (k % q as u64) as u32;
                        k /= q as u64;
                        v
                    };
                    let a1 = MatrixFq::from_flat(q, w1, t0, (0..cells).map(|_| next()).collect());
                    let a2 = MatrixFq::from_flat(q, w1, t0, (0..cells).map(|_| next()).collect());
                    let zero = MatrixFq::zeros(q, t1, w0);
                    let x1 = MatrixFq::block(sub.x1(), &a1, &zero, quot.x1());
                    let x2 = MatrixFq::block(sub.x2(), &a2, &zero, quot.x2());
                    let ext = KronRep::plus(q, x1, x2)?;
                    acc += &f.get(&classify(&ext)?);
                }
                out.add_term(x.clone(), y.clone(), &acc * &twist);
            }
        }
        Ok(out)
    }

    /// `(f, g) = sum_c q^{dim G} f(c) g(c) / |Aut c|`.
    pub fn inner(&self, f: &HallElem, g: &HallElem) -> Result<QEps, HallError> {
        self.check(f)?;
        self.check(g)?;
        if f.orientation() != g.orientation() && !f.is_zero() && !g.is_zero() {
            return Err(HallError::OrientationMismatch);
        }
        let q = self.q();
        let mut acc = QEps::zero(q);
        for (c, fc) in f.terms() {
            let gc = g.get(c);
            if gc.is_zero() {
                continue;
            }
            let (d0, d1) = c.dims();
            let qg = num_traits::pow(BigInt::from(q), d0 * d0 + d1 * d1);
            let w = BigRational::new(qg, big(self.store.aut(c)));
            acc += &(fc * &gc).scale_rational(&w);
        }
        Ok(acc)
    }

    /// The reflection at vertex 1 on class functions: for a Minus element
    /// supported where `ker x1 ∩ ker x2 = 0`, `σ₁(f)` takes the value
    /// `ε^{d1'² - d1²} f(x)` on the class of the reflected representation.
    pub fn sigma1(&self, f: &HallElem) -> Result<HallElem, HallError> {
        self.check(f)?;
        if f.orientation() != Orientation::Minus && !f.is_zero() {
            return Err(HallError::OrientationMismatch);
        }
        let q = self.q();
        let mut out = HallElem::zero(q);
        for (c, v) in f.terms() {
            let plus = representative(c);
            let (d0, d1) = c.dims();
            let minus = KronRep::new(
                q,
                (d0, d1),
                plus.x1().transpose(),
                plus.x2().transpose(),
                Orientation::Minus,
            )?;
            let r = reflect_at_1(&minus).map_err(|_| HallError::SupportPrecondition(c.to_string()))?;
            let d1p = 2 * d0 - d1;
            let k = (d1p * d1p) as i64 - (d1 * d1) as i64;
            out.add_term(classify(&r)?, v.shift(k));
        }
        Ok(out.with_orientation(Orientation::Minus))
    }
}

/// Transport along the vertex swap: a Minus class function becomes a Plus one
/// on swapped dimension vectors and vice versa.
pub fn swap_vertices(f: &HallElem) -> HallElem {
    let o = f.orientation().flip();
    f.dual().with_orientation(o)
}
