use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::CoeffRing;

/// Power series c_0 + c_1 t + ... + c_N t^N over a coefficient ring, truncated at order N.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: CoeffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> TruncatedSeries<R> {
    /// Pads or cuts `coeffs` to length order + 1.
    pub fn new(ring: R, order: usize, mut coeffs: Vec<R::Elem>) -> Self {
        coeffs.resize(order + 1, ring.zero());
        TruncatedSeries { ring, coeffs }
    }

    pub fn zero(ring: R, order: usize) -> Self {
        Self::new(ring, order, Vec::new())
    }

    pub fn one(ring: R, order: usize) -> Self {
        let one = ring.one();
        Self::new(ring, order, vec![one])
    }

    /// 1 + c·t^k
    pub fn binomial(ring: R, order: usize, c: &R::Elem, k: usize) -> Self {
        let mut s = Self::one(ring, order);
        if k <= order {
            s.coeffs[k] = s.ring.add(&s.coeffs[k], c);
        }
        s
    }

    /// 1/(1 − c·t^k) = Σ c^j t^{jk}
    pub fn geometric(ring: R, order: usize, c: &R::Elem, k: usize) -> Self {
        assert!(k > 0);
        let mut s = Self::zero(ring, order);
        let mut p = s.ring.one();
        let mut i = 0;
        while i <= order {
            s.coeffs[i] = p.clone();
            p = s.ring.mul(&p, c);
            i += k;
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    fn check(&self, o: &Self) -> Result<usize> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.order().min(o.order()))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.check(o)?;
        let c = (0..=n).map(|i| self.ring.add(&self.coeffs[i], &o.coeffs[i])).collect();
        Ok(Self::new(self.ring.clone(), n, c))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let n = self.check(o)?;
        let c = (0..=n).map(|i| self.ring.sub(&self.coeffs[i], &o.coeffs[i])).collect();
        Ok(Self::new(self.ring.clone(), n, c))
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|x| self.ring.neg(x)).collect();
        Self::new(self.ring.clone(), self.order(), c)
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let c = self.coeffs.iter().map(|x| self.ring.mul(x, k)).collect();
        Self::new(self.ring.clone(), self.order(), c)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let n = self.check(o)?;
        let r = &self.ring;
        let mut c = vec![r.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !r.is_zero(b) {
                    c[i + j] = r.add(&c[i + j], &r.mul(a, b));
                }
            }
        }
        Ok(Self::new(r.clone(), n, c))
    }

    /// Multiplicative inverse; needs a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let r = &self.ring;
        let inv0 = r.inverse(&self.coeffs[0]).ok_or(Error::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<R::Elem> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = r.zero();
            for j in 1..=k {
                if !r.is_zero(&self.coeffs[j]) {
                    acc = r.add(&acc, &r.mul(&self.coeffs[j], &out[k - j]));
                }
            }
            out.push(r.neg(&r.mul(&acc, &inv0)));
        }
        Ok(Self::new(r.clone(), n, out))
    }

    /// s^e by binary powering; negative e goes through the inverse.
    pub fn int_pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.ring.clone(), self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let r = &self.ring;
        if self.coeffs[0] != r.one() {
            return Err(Error::ConstantTermNotOne);
        }
        if !r.has_rational_division() {
            return Err(Error::RingLacksRationalDivision);
        }
        // n s_n = Σ_{k=1}^{n} k L_k s_{n-k}
        let n = self.order();
        let mut l = vec![r.zero(); n + 1];
        for m in 1..=n {
            let mut acc = r.mul_int(&self.coeffs[m], &BigInt::from(m));
            for k in 1..m {
                if !r.is_zero(&l[k]) && !r.is_zero(&self.coeffs[m - k]) {
                    let t = r.mul(&l[k], &self.coeffs[m - k]);
                    acc = r.sub(&acc, &r.mul_int(&t, &BigInt::from(k)));
                }
            }
            l[m] = r.div_int(&acc, &BigInt::from(m))?;
        }
        Ok(Self::new(r.clone(), n, l))
    }

    /// Formal exponential of a series with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        let r = &self.ring;
        if !r.is_zero(&self.coeffs[0]) {
            return Err(Error::ConstantTermNotZero);
        }
        if !r.has_rational_division() {
            return Err(Error::RingLacksRationalDivision);
        }
        // n E_n = Σ_{k=1}^{n} k s_k E_{n-k}
        let n = self.order();
        let mut e = vec![r.zero(); n + 1];
        e[0] = r.one();
        for m in 1..=n {
            let mut acc = r.zero();
            for k in 1..=m {
                if !r.is_zero(&self.coeffs[k]) {
                    let t = r.mul(&self.coeffs[k], &e[m - k]);
                    acc = r.add(&acc, &r.mul_int(&t, &BigInt::from(k)));
                }
            }
            e[m] = r.div_int(&acc, &BigInt::from(m))?;
        }
        Ok(Self::new(r.clone(), n, e))
    }

    /// t·(d/dt) of the series.
    pub fn t_derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().map(|(i, x)| self.ring.mul_int(x, &BigInt::from(i))).collect();
        Self::new(self.ring.clone(), self.order(), c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Self::new(self.ring.clone(), self.order(), self.coeffs.iter().map(f).collect())
    }

    /// Coefficient strings indexed from t^0.
    pub fn format_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.ring.format(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_rational_function;
    use crate::rings::{IntegerRing, RationalField, RationalFunctionField};
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qs(order: usize, cs: &[&str]) -> TruncatedSeries<RationalFunctionField> {
        let c = cs.iter().map(|s| parse_rational_function(s).unwrap()).collect();
        TruncatedSeries::new(RationalFunctionField, order, c)
    }

    #[test]
    fn log_of_one_plus_t() {
        let s = TruncatedSeries::new(RationalField, 3, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(s.log().unwrap().coeffs(), &[rat(0, 1), rat(1, 1), rat(-1, 2), rat(1, 3)]);
        let one = TruncatedSeries::one(RationalField, 5);
        assert_eq!(one.log().unwrap(), TruncatedSeries::zero(RationalField, 5));
    }

    #[test]
    fn exp_examples() {
        let z = TruncatedSeries::zero(RationalField, 4);
        assert_eq!(z.exp().unwrap(), TruncatedSeries::one(RationalField, 4));
        let t = TruncatedSeries::new(RationalField, 3, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(t.exp().unwrap().coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 6)]);
    }

    #[test]
    fn exp_log_round_trip_over_q_of_q() {
        let s = qs(4, &["1", "-q"]);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn exp_of_scaled_log() {
        // exp((1-q) log(1/(1-t))) at order 2: coefficient of t is 1-q
        let h = qs(2, &["1", "1", "1"]);
        let l = h.log().unwrap().scale(&parse_rational_function("1-q").unwrap());
        let e = l.exp().unwrap();
        assert_eq!(e.coeff(1), &parse_rational_function("1-q").unwrap());
        // (1-t)^{-(1-q)}: t^2 coefficient is (1-q)(2-q)/2
        assert_eq!(e.coeff(2), &parse_rational_function("(1-q)*(2-q)/2").unwrap());
    }

    #[test]
    fn powers() {
        let s = TruncatedSeries::new(IntegerRing, 3, vec![1.into(), (-1).into()]);
        let inv = s.int_pow(-1).unwrap();
        assert_eq!(inv.coeffs(), &[1.into(), 1.into(), 1.into(), 1.into()]);
        assert_eq!(s.int_pow(0).unwrap(), TruncatedSeries::one(IntegerRing, 3));
        let two = TruncatedSeries::new(IntegerRing, 3, vec![2.into()]);
        assert_eq!(two.int_pow(-1), Err(Error::NotInvertible));
        // ((1-t)/(1-qt))^1 = 1 + (q-1)t + (q^2-q)t^2
        let num = qs(2, &["1", "-1"]);
        let den = qs(2, &["1", "-q"]);
        let r = num.mul(&den.int_pow(-1).unwrap()).unwrap();
        assert_eq!(r, qs(2, &["1", "q-1", "q^2-q"]));
    }

    #[test]
    fn domain_errors() {
        let s = TruncatedSeries::new(IntegerRing, 2, vec![1.into(), 1.into()]);
        assert_eq!(s.log(), Err(Error::RingLacksRationalDivision));
        let s = TruncatedSeries::new(RationalField, 2, vec![rat(2, 1)]);
        assert_eq!(s.log(), Err(Error::ConstantTermNotOne));
        assert_eq!(s.exp(), Err(Error::ConstantTermNotZero));
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        use crate::rings::ZMod;
        let a = TruncatedSeries::one(ZMod::new(4).unwrap(), 2);
        let b = TruncatedSeries::one(ZMod::new(6).unwrap(), 2);
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
        assert_eq!(a.mul(&b), Err(Error::RingMismatch));
    }
}
