//! The power-series presentation Λ̄^g / Λ^m: Θ(a) = Π 1/(1 − a_n tⁿ), ring
//! operations transported through Θ, the ghost Υ, and the product identities
//! Π((1 − tⁿ)/(1 − q tⁿ))^{a_n} and Π((1 − g tⁿ)/(1 − tⁿ))^{a_n}.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactalg::{QRationalFunction, TruncatedSeries, ZPolynomial};
use crate::necklace::NecklaceVector;
use crate::rings::{CoeffRing, PolyRing, RationalExtension, RationalFunctionField};
use crate::witt::{GhostVector, WittContext, WittVector};

/// A series 1 + Σ_{n≤N} s_n tⁿ tagged with a Witt context.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaElement<R: CoeffRing> {
    ctx: Arc<WittContext<R>>,
    series: TruncatedSeries<R>,
}

impl<R: CoeffRing> LambdaElement<R> {
    pub fn new(ctx: &Arc<WittContext<R>>, series: TruncatedSeries<R>) -> Result<Self> {
        if series.ring() != ctx.ring() {
            return Err(Error::RingMismatch);
        }
        if series.order() != ctx.trunc() {
            return Err(Error::InvalidContext(format!(
                "series order {} does not match truncation {}",
                series.order(),
                ctx.trunc()
            )));
        }
        if *series.coeff(0) != ctx.ring().one() {
            return Err(Error::ConstantTermNotOne);
        }
        Ok(LambdaElement { ctx: ctx.clone(), series })
    }

    pub fn ctx(&self) -> &Arc<WittContext<R>> {
        &self.ctx
    }

    pub fn series(&self) -> &TruncatedSeries<R> {
        &self.series
    }

    fn same(&self, o: &Self) -> Result<()> {
        if *self.ctx != *o.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        theta(&theta_inv(self)?.add(&theta_inv(o)?)?)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        theta(&theta_inv(self)?.mul(&theta_inv(o)?)?)
    }
}

/// s ← s·(1 − c tᵏ), in place.
fn mul_binomial<R: CoeffRing>(ring: &R, s: &mut [R::Elem], c: &R::Elem, k: usize) {
    for i in (k..s.len()).rev() {
        if !ring.is_zero(&s[i - k]) {
            s[i] = ring.sub(&s[i], &ring.mul(c, &s[i - k]));
        }
    }
}

/// s ← s/(1 − c tᵏ), in place.
fn div_binomial<R: CoeffRing>(ring: &R, s: &mut [R::Elem], c: &R::Elem, k: usize) {
    for i in k..s.len() {
        if !ring.is_zero(&s[i - k]) {
            s[i] = ring.add(&s[i], &ring.mul(c, &s[i - k]));
        }
    }
}

/// Θ(a) = Π_{n≤N} 1/(1 − a_n tⁿ).
pub fn theta<R: CoeffRing>(a: &WittVector<R>) -> Result<LambdaElement<R>> {
    let ctx = a.ctx();
    let ring = ctx.ring();
    let mut s = vec![ring.zero(); ctx.trunc() + 1];
    s[0] = ring.one();
    for (i, c) in a.coords().iter().enumerate() {
        if !ring.is_zero(c) {
            div_binomial(ring, &mut s, c, i + 1);
        }
    }
    LambdaElement::new(ctx, TruncatedSeries::new(ring.clone(), ctx.trunc(), s))
}

/// The preimage under Θ, peeling one factor 1/(1 − a_n tⁿ) at a time.
pub fn theta_inv<R: CoeffRing>(s: &LambdaElement<R>) -> Result<WittVector<R>> {
    let ctx = s.ctx();
    let ring = ctx.ring();
    let mut rest = s.series.coeffs().to_vec();
    let mut coords = Vec::with_capacity(ctx.trunc());
    for n in 1..=ctx.trunc() {
        let a = rest[n].clone();
        if !ring.is_zero(&a) {
            mul_binomial(ring, &mut rest, &a, n);
        }
        coords.push(a);
    }
    ctx.vector(coords)
}

/// Υ(s) = Φ(Θ⁻¹(s)); the n-th component is the coefficient of t^{n−1} in
/// (d/dt) log Π (1 − g a_n tⁿ)/(1 − a_n tⁿ).
pub fn upsilon<R: CoeffRing>(s: &LambdaElement<R>) -> Result<GhostVector<R>> {
    Ok(theta_inv(s)?.ghost())
}

/// Υ by formal logarithmic differentiation; needs rational division.
pub fn upsilon_by_log_derivative<R: CoeffRing>(s: &LambdaElement<R>) -> Result<GhostVector<R>> {
    let ctx = s.ctx();
    let ring = ctx.ring();
    let a = theta_inv(s)?;
    let mut num = vec![ring.zero(); ctx.trunc() + 1];
    num[0] = ring.one();
    for (i, c) in a.coords().iter().enumerate() {
        if !ring.is_zero(c) {
            mul_binomial(ring, &mut num, &ring.mul(ctx.g(), c), i + 1);
        }
    }
    let num = TruncatedSeries::new(ring.clone(), ctx.trunc(), num);
    let full = num.mul(&s.series)?;
    let d = full.log()?.t_derivative();
    ctx.ghost_vector(d.coeffs()[1..].to_vec())
}

/// b_1..b_N with Π_n ((1 − tⁿ)/(1 − q tⁿ))^{a_n} = 1 + Σ b_n tⁿ, computed over
/// ℚ(q) and certified to lie in ℤ[q].
pub fn kimlee_expand(a: &[BigInt], n: usize) -> Result<Vec<ZPolynomial>> {
    let r = &RationalFunctionField;
    let mut acc = vec![r.zero(); n + 1];
    acc[0] = r.one();
    let one = r.one();
    let q = QRationalFunction::q();
    for (i, e) in a.iter().enumerate().take(n) {
        let k = i + 1;
        let e = e
            .to_i64()
            .ok_or_else(|| Error::InvalidContext(format!("exponent {e} out of range")))?;
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                mul_binomial(r, &mut acc, &one, k);
                div_binomial(r, &mut acc, &q, k);
            } else {
                div_binomial(r, &mut acc, &one, k);
                mul_binomial(r, &mut acc, &q, k);
            }
        }
    }
    acc[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| {
            PolyRing
                .retract(c)
                .ok_or_else(|| Error::IntegralityViolation(format!("coefficient of t^{} is {c}", i + 1)))
        })
        .collect()
}

/// Θ∘τ⁻¹ as a product: Π ((1 − g tⁿ)/(1 − tⁿ))^{a_n} when every a_n is an
/// integer, else the exp form.
pub fn symmetric_product<R: CoeffRing>(a: &NecklaceVector<R>) -> Result<LambdaElement<R>> {
    let ring = a.ctx().ring();
    if a.coords().iter().all(|c| ring.to_integer(c).is_some()) {
        symmetric_product_pow(a)
    } else {
        symmetric_product_exp(a)
    }
}

/// Π ((1 − g tⁿ)/(1 − tⁿ))^{a_n} for integer coordinates.
pub fn symmetric_product_pow<R: CoeffRing>(a: &NecklaceVector<R>) -> Result<LambdaElement<R>> {
    let ctx = a.ctx();
    let ring = ctx.ring();
    let n = ctx.trunc();
    let mut acc = TruncatedSeries::one(ring.clone(), n);
    for (i, c) in a.coords().iter().enumerate() {
        let k = i + 1;
        let e = ring
            .to_integer(c)
            .and_then(|e| e.to_i64())
            .ok_or_else(|| Error::InvalidContext(format!("coordinate {k} is not a machine integer")))?;
        if e == 0 {
            continue;
        }
        let num = TruncatedSeries::binomial(ring.clone(), n, &ring.neg(ctx.g()), k);
        let den = TruncatedSeries::geometric(ring.clone(), n, &ring.one(), k);
        acc = acc.mul(&num.mul(&den)?.int_pow(e)?)?;
    }
    LambdaElement::new(ctx, acc)
}

/// Π_n exp(Σ_{r≥1} (1/r)(1 − g^r)ψ^r(a_n) t^{nr}); needs rational division.
pub fn symmetric_product_exp<R: CoeffRing>(a: &NecklaceVector<R>) -> Result<LambdaElement<R>> {
    let ctx = a.ctx();
    let ring = ctx.ring();
    if !ring.has_rational_division() {
        return Err(Error::RingLacksRationalDivision);
    }
    let n = ctx.trunc();
    let mut log = vec![ring.zero(); n + 1];
    for (i, c) in a.coords().iter().enumerate() {
        let k = i + 1;
        if ring.is_zero(c) {
            continue;
        }
        for r in 1..=n / k {
            let t = ring.mul(ctx.one_minus_gpow(r), &ring.psi(r, c)?);
            log[k * r] = ring.add(&log[k * r], &ring.div_int(&t, &BigInt::from(r))?);
        }
    }
    LambdaElement::new(ctx, TruncatedSeries::new(ring.clone(), n, log).exp()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_zpoly;
    use crate::rings::IntegerRing;
    use crate::witt::Deformation;

    fn zq(s: &str) -> ZPolynomial {
        parse_zpoly(s).unwrap()
    }

    fn zq_ctx(g: &str, n: usize) -> Arc<WittContext<PolyRing>> {
        WittContext::new(PolyRing, Deformation::poly(zq(g)), n).unwrap()
    }

    #[test]
    fn theta_examples() {
        let ctx = zq_ctx("q", 2);
        let a = ctx.vector(vec![zq("2+q"), zq("-3")]).unwrap();
        let s = theta(&a).unwrap();
        assert_eq!(s.series().coeffs(), &[zq("1"), zq("2+q"), zq("(2+q)^2-3")]);
        assert_eq!(theta_inv(&s).unwrap(), a);
        assert_eq!(theta(&ctx.zero()).unwrap().series(), &TruncatedSeries::one(PolyRing, 2));
        let z = WittContext::new(IntegerRing, Deformation::int(0), 4).unwrap();
        let u = theta(&z.unity().unwrap()).unwrap();
        assert!(u.series().coeffs().iter().all(|c| *c == BigInt::from(1)));
    }

    #[test]
    fn theta_inv_of_one_plus_t() {
        let ctx = WittContext::new(IntegerRing, Deformation::int(0), 4).unwrap();
        let s = TruncatedSeries::new(IntegerRing, 4, vec![1.into(), 1.into()]);
        let a = theta_inv(&LambdaElement::new(&ctx, s).unwrap()).unwrap();
        assert_eq!(a.coords(), &[1, -1, 0, -1].map(BigInt::from));
        let one = LambdaElement::new(&ctx, TruncatedSeries::one(IntegerRing, 4)).unwrap();
        assert_eq!(theta_inv(&one).unwrap(), ctx.zero());
    }

    #[test]
    fn transported_operations() {
        let ctx = zq_ctx("q", 2);
        let a = theta(&ctx.vector(vec![zq("1"), zq("0")]).unwrap()).unwrap();
        let b = theta(&ctx.vector(vec![zq("-1"), zq("0")]).unwrap()).unwrap();
        let expect = theta(&ctx.vector(vec![zq("0"), zq("1+q")]).unwrap()).unwrap();
        assert_eq!(a.add(&b).unwrap(), expect);
        let one = theta(&ctx.zero()).unwrap();
        assert_eq!(a.add(&one).unwrap(), a);
        assert_eq!(a.mul(&one).unwrap(), one);
    }

    #[test]
    fn upsilon_examples() {
        let ctx = WittContext::new(RationalFunctionField, Deformation::poly(zq("q")), 5).unwrap();
        let r = &RationalFunctionField;
        let mut c = vec![r.zero(); 5];
        c[0] = r.one();
        let s = theta(&ctx.vector(c).unwrap()).unwrap();
        let u = upsilon(&s).unwrap();
        for n in 1..=5u32 {
            assert_eq!(u.coords()[n as usize - 1], QRationalFunction::one().sub(&QRationalFunction::q().pow(n)));
        }
        assert_eq!(upsilon_by_log_derivative(&s).unwrap(), u);
    }

    #[test]
    fn kimlee_examples() {
        let a = [1, 0, 0, 0, 0].map(BigInt::from);
        let b = kimlee_expand(&a, 5).unwrap();
        for (i, p) in b.iter().enumerate() {
            assert_eq!(*p, &(&ZPolynomial::zero() - &ZPolynomial::q().pow(i as u32)) * &zq("1-q"));
        }
        assert!(kimlee_expand(&[0, 0, 0].map(BigInt::from), 3).unwrap().iter().all(|p| p.is_zero()));
    }

    #[test]
    fn symmetric_product_examples() {
        let ctx = zq_ctx("q", 4);
        let a = NecklaceVector::new(&ctx, vec![zq("1"), zq("0"), zq("0"), zq("0")]).unwrap();
        let s = symmetric_product(&a).unwrap();
        // (1 − q t)/(1 − t) = 1 + (1 − q)(t + t² + …)
        assert_eq!(s.series().coeffs(), &[zq("1"), zq("1-q"), zq("1-q"), zq("1-q"), zq("1-q")]);
        let z = NecklaceVector::zero(&ctx).unwrap();
        assert_eq!(symmetric_product(&z).unwrap().series(), &TruncatedSeries::one(PolyRing, 4));
        let qctx = WittContext::new(RationalFunctionField, Deformation::poly(zq("q")), 4).unwrap();
        let r = &RationalFunctionField;
        let b = NecklaceVector::new(&qctx, ["2", "-1", "0", "3"].iter().map(|x| r.parse(x).unwrap()).collect()).unwrap();
        assert_eq!(symmetric_product_pow(&b).unwrap(), symmetric_product_exp(&b).unwrap());
    }
}
