//! Coefficient rings: commutative rings with unity, optional Ψ-operations and
//! exact division through a rational extension.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::parse::{parse_integer, parse_rational, parse_rational_function, parse_zpoly};
use crate::exactalg::{QPolynomial, QRationalFunction, ZPolynomial};

pub trait CoeffRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    /// Selector string, e.g. `Z`, `Zq`, `Zmod:6`.
    fn selector(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn mul_int(&self, a: &Self::Elem, n: &BigInt) -> Self::Elem {
        self.mul(a, &self.from_int(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, it: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// The image of q for ℤ[q]-algebras.
    fn q_image(&self) -> Option<Self::Elem> {
        None
    }

    fn has_psi(&self) -> bool;

    fn psi(&self, n: usize, x: &Self::Elem) -> Result<Self::Elem>;

    fn is_torsion_free(&self) -> bool;

    /// Whether exact division is certified through an embedding into a ℚ-algebra.
    fn has_rational_extension(&self) -> bool {
        self.is_torsion_free()
    }

    /// Whether every nonzero integer is invertible (needed by series log/exp).
    fn has_rational_division(&self) -> bool;

    /// y with d·y = x, or NotDivisible.
    fn div_int(&self, x: &Self::Elem, d: &BigInt) -> Result<Self::Elem>;

    /// y with d·y = x, or NotDivisible.
    fn div_exact(&self, x: &Self::Elem, d: &Self::Elem) -> Result<Self::Elem>;

    fn inverse(&self, x: &Self::Elem) -> Option<Self::Elem>;

    /// Some(n) when x is the image of the integer n and the ring is torsion-free.
    fn to_integer(&self, _x: &Self::Elem) -> Option<BigInt> {
        None
    }

    fn format(&self, x: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn from_rational(&self, c: &BigRational) -> Result<Self::Elem> {
        let n = self.from_int(c.numer());
        if c.denom().is_one() {
            return Ok(n);
        }
        self.div_int(&n, c.denom())
    }

    /// Evaluates p at q_image; constants need no q.
    fn from_qpoly(&self, p: &QPolynomial) -> Result<Self::Elem> {
        if p.is_constant() {
            return self.from_rational(&p.constant_term());
        }
        let q = self.q_image().ok_or_else(|| Error::UnboundVariable("q".into()))?;
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, &q);
            acc = self.add(&acc, &self.from_rational(c)?);
        }
        Ok(acc)
    }

    fn from_zpoly(&self, p: &ZPolynomial) -> Result<Self::Elem> {
        if p.is_constant() {
            return Ok(self.from_int(&p.constant_term()));
        }
        let q = self.q_image().ok_or_else(|| Error::UnboundVariable("q".into()))?;
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, &q);
            acc = self.add(&acc, &self.from_int(c));
        }
        Ok(acc)
    }

    fn from_rational_function(&self, r: &QRationalFunction) -> Result<Self::Elem> {
        let num = self.from_qpoly(r.numer())?;
        let den = self.from_qpoly(r.denom())?;
        let inv = self.inverse(&den).ok_or(Error::NotInvertible)?;
        Ok(self.mul(&num, &inv))
    }
}

/// Embedding of a ring into a ring where integer division is always possible,
/// with a membership test for the image.
pub trait RationalExtension: CoeffRing {
    type Ext: CoeffRing;
    fn extension(&self) -> Self::Ext;
    fn embed(&self, x: &Self::Elem) -> <Self::Ext as CoeffRing>::Elem;
    /// Some(x) when y = embed(x).
    fn retract(&self, y: &<Self::Ext as CoeffRing>::Elem) -> Option<Self::Elem>;
}

fn not_divisible(x: impl fmt::Display, d: impl fmt::Display) -> Error {
    Error::NotDivisible(format!("{x} by {d}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct IntegerRing;

impl CoeffRing for IntegerRing {
    type Elem = BigInt;

    fn selector(&self) -> String {
        "Z".into()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn mul_int(&self, a: &BigInt, n: &BigInt) -> BigInt {
        a * n
    }
    fn pow(&self, a: &BigInt, e: u32) -> BigInt {
        num_traits::pow::Pow::pow(a, e)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn has_psi(&self) -> bool {
        true
    }
    fn psi(&self, _n: usize, x: &BigInt) -> Result<BigInt> {
        Ok(x.clone())
    }
    fn is_torsion_free(&self) -> bool {
        true
    }
    fn has_rational_division(&self) -> bool {
        false
    }
    fn div_int(&self, x: &BigInt, d: &BigInt) -> Result<BigInt> {
        self.div_exact(x, d)
    }
    fn div_exact(&self, x: &BigInt, d: &BigInt) -> Result<BigInt> {
        if d.is_zero() {
            return Err(not_divisible(x, d));
        }
        let (q, r) = x.div_rem(d);
        if r.is_zero() { Ok(q) } else { Err(not_divisible(x, d)) }
    }
    fn inverse(&self, x: &BigInt) -> Option<BigInt> {
        (x.abs().is_one()).then(|| x.clone())
    }
    fn to_integer(&self, x: &BigInt) -> Option<BigInt> {
        Some(x.clone())
    }
    fn format(&self, x: &BigInt) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        parse_integer(s)
    }
}

impl RationalExtension for IntegerRing {
    type Ext = RationalField;
    fn extension(&self) -> RationalField {
        RationalField
    }
    fn embed(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }
    fn retract(&self, y: &BigRational) -> Option<BigInt> {
        y.is_integer().then(|| y.to_integer())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RationalField;

impl CoeffRing for RationalField {
    type Elem = BigRational;

    fn selector(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn has_psi(&self) -> bool {
        true
    }
    fn psi(&self, _n: usize, x: &BigRational) -> Result<BigRational> {
        Ok(x.clone())
    }
    fn is_torsion_free(&self) -> bool {
        true
    }
    fn has_rational_division(&self) -> bool {
        true
    }
    fn div_int(&self, x: &BigRational, d: &BigInt) -> Result<BigRational> {
        if d.is_zero() {
            return Err(not_divisible(x, d));
        }
        Ok(x / BigRational::from_integer(d.clone()))
    }
    fn div_exact(&self, x: &BigRational, d: &BigRational) -> Result<BigRational> {
        if d.is_zero() {
            return Err(not_divisible(x, d));
        }
        Ok(x / d)
    }
    fn inverse(&self, x: &BigRational) -> Option<BigRational> {
        (!x.is_zero()).then(|| x.recip())
    }
    fn to_integer(&self, x: &BigRational) -> Option<BigInt> {
        x.is_integer().then(|| x.to_integer())
    }
    fn format(&self, x: &BigRational) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
}

impl RationalExtension for RationalField {
    type Ext = RationalField;
    fn extension(&self) -> RationalField {
        RationalField
    }
    fn embed(&self, x: &BigRational) -> BigRational {
        x.clone()
    }
    fn retract(&self, y: &BigRational) -> Option<BigRational> {
        Some(y.clone())
    }
}

/// ℤ[q] with Ψⁿ(q) = qⁿ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PolyRing;

impl CoeffRing for PolyRing {
    type Elem = ZPolynomial;

    fn selector(&self) -> String {
        "Zq".into()
    }
    fn zero(&self) -> ZPolynomial {
        ZPolynomial::zero()
    }
    fn one(&self) -> ZPolynomial {
        ZPolynomial::one()
    }
    fn from_int(&self, n: &BigInt) -> ZPolynomial {
        ZPolynomial::constant(n.clone())
    }
    fn add(&self, a: &ZPolynomial, b: &ZPolynomial) -> ZPolynomial {
        a + b
    }
    fn sub(&self, a: &ZPolynomial, b: &ZPolynomial) -> ZPolynomial {
        a - b
    }
    fn neg(&self, a: &ZPolynomial) -> ZPolynomial {
        -a
    }
    fn mul(&self, a: &ZPolynomial, b: &ZPolynomial) -> ZPolynomial {
        a * b
    }
    fn mul_int(&self, a: &ZPolynomial, n: &BigInt) -> ZPolynomial {
        a.scale(n)
    }
    fn is_zero(&self, a: &ZPolynomial) -> bool {
        a.is_zero()
    }
    fn q_image(&self) -> Option<ZPolynomial> {
        Some(ZPolynomial::q())
    }
    fn has_psi(&self) -> bool {
        true
    }
    fn psi(&self, n: usize, x: &ZPolynomial) -> Result<ZPolynomial> {
        Ok(x.dilate(n))
    }
    fn is_torsion_free(&self) -> bool {
        true
    }
    fn has_rational_division(&self) -> bool {
        false
    }
    fn div_int(&self, x: &ZPolynomial, d: &BigInt) -> Result<ZPolynomial> {
        x.div_scalar_exact(d).ok_or_else(|| not_divisible(x, d))
    }
    fn div_exact(&self, x: &ZPolynomial, d: &ZPolynomial) -> Result<ZPolynomial> {
        x.div_exact(d).ok_or_else(|| not_divisible(x, d))
    }
    fn inverse(&self, x: &ZPolynomial) -> Option<ZPolynomial> {
        (x.is_constant() && x.constant_term().abs().is_one()).then(|| x.clone())
    }
    fn to_integer(&self, x: &ZPolynomial) -> Option<BigInt> {
        x.is_constant().then(|| x.constant_term())
    }
    fn format(&self, x: &ZPolynomial) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<ZPolynomial> {
        parse_zpoly(s)
    }
    fn from_zpoly(&self, p: &ZPolynomial) -> Result<ZPolynomial> {
        Ok(p.clone())
    }
}

impl RationalExtension for PolyRing {
    type Ext = RationalFunctionField;
    fn extension(&self) -> RationalFunctionField {
        RationalFunctionField
    }
    fn embed(&self, x: &ZPolynomial) -> QRationalFunction {
        QRationalFunction::from_zpoly(x)
    }
    fn retract(&self, y: &QRationalFunction) -> Option<ZPolynomial> {
        y.as_poly()?.to_z()
    }
}

/// ℚ(q) with Ψⁿ(q) = qⁿ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RationalFunctionField;

impl CoeffRing for RationalFunctionField {
    type Elem = QRationalFunction;

    fn selector(&self) -> String {
        "Qq".into()
    }
    fn zero(&self) -> QRationalFunction {
        QRationalFunction::zero()
    }
    fn one(&self) -> QRationalFunction {
        QRationalFunction::one()
    }
    fn from_int(&self, n: &BigInt) -> QRationalFunction {
        QRationalFunction::from_rational(BigRational::from_integer(n.clone()))
    }
    fn add(&self, a: &QRationalFunction, b: &QRationalFunction) -> QRationalFunction {
        a.add(b)
    }
    fn sub(&self, a: &QRationalFunction, b: &QRationalFunction) -> QRationalFunction {
        a.sub(b)
    }
    fn neg(&self, a: &QRationalFunction) -> QRationalFunction {
        a.neg()
    }
    fn mul(&self, a: &QRationalFunction, b: &QRationalFunction) -> QRationalFunction {
        a.mul(b)
    }
    fn mul_int(&self, a: &QRationalFunction, n: &BigInt) -> QRationalFunction {
        a.scale(&BigRational::from_integer(n.clone()))
    }
    fn pow(&self, a: &QRationalFunction, e: u32) -> QRationalFunction {
        a.pow(e)
    }
    fn is_zero(&self, a: &QRationalFunction) -> bool {
        a.is_zero()
    }
    fn q_image(&self) -> Option<QRationalFunction> {
        Some(QRationalFunction::q())
    }
    fn has_psi(&self) -> bool {
        true
    }
    fn psi(&self, n: usize, x: &QRationalFunction) -> Result<QRationalFunction> {
        Ok(x.dilate(n))
    }
    fn is_torsion_free(&self) -> bool {
        true
    }
    fn has_rational_division(&self) -> bool {
        true
    }
    fn div_int(&self, x: &QRationalFunction, d: &BigInt) -> Result<QRationalFunction> {
        x.div_int(d).ok_or_else(|| not_divisible(x, d))
    }
    fn div_exact(&self, x: &QRationalFunction, d: &QRationalFunction) -> Result<QRationalFunction> {
        x.div(d).ok_or_else(|| not_divisible(x, d))
    }
    fn inverse(&self, x: &QRationalFunction) -> Option<QRationalFunction> {
        x.inv()
    }
    fn to_integer(&self, x: &QRationalFunction) -> Option<BigInt> {
        let p = x.as_poly()?;
        let c = p.constant_term();
        (p.is_constant() && c.is_integer()).then(|| c.to_integer())
    }
    fn format(&self, x: &QRationalFunction) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<QRationalFunction> {
        parse_rational_function(s)
    }
    fn from_rational_function(&self, r: &QRationalFunction) -> Result<QRationalFunction> {
        Ok(r.clone())
    }
}

impl RationalExtension for RationalFunctionField {
    type Ext = RationalFunctionField;
    fn extension(&self) -> RationalFunctionField {
        RationalFunctionField
    }
    fn embed(&self, x: &QRationalFunction) -> QRationalFunction {
        x.clone()
    }
    fn retract(&self, y: &QRationalFunction) -> Option<QRationalFunction> {
        Some(y.clone())
    }
}

/// ℤ/kℤ with identity Ψ. Not torsion-free, so it only supports the
/// universal-polynomial computation path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZMod {
    k: u64,
}

impl ZMod {
    pub fn new(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidContext(format!("modulus {k} must be at least 2")));
        }
        Ok(ZMod { k })
    }

    pub fn modulus(&self) -> u64 {
        self.k
    }

    fn reduce(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.k)).to_u64().unwrap()
    }
}

impl CoeffRing for ZMod {
    type Elem = u64;

    fn selector(&self) -> String {
        format!("Zmod:{}", self.k)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.k
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.k as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.k as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.k - a }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.k as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn has_psi(&self) -> bool {
        true
    }
    fn psi(&self, _n: usize, x: &u64) -> Result<u64> {
        Ok(*x)
    }
    fn is_torsion_free(&self) -> bool {
        false
    }
    fn has_rational_division(&self) -> bool {
        false
    }
    fn div_int(&self, x: &u64, d: &BigInt) -> Result<u64> {
        let dd = self.reduce(d);
        self.div_exact(x, &dd).map_err(|_| not_divisible(x, d))
    }
    /// Succeeds only for unit divisors, where the quotient is unique.
    fn div_exact(&self, x: &u64, d: &u64) -> Result<u64> {
        let inv = self.inverse(d).ok_or_else(|| not_divisible(x, d))?;
        Ok(self.mul(x, &inv))
    }
    fn inverse(&self, x: &u64) -> Option<u64> {
        let e = (*x as i128).extended_gcd(&(self.k as i128));
        (e.gcd == 1).then(|| e.x.rem_euclid(self.k as i128) as u64)
    }
    fn format(&self, x: &u64) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        Ok(self.reduce(&parse_integer(s)?))
    }
}

/// Views a ring as a plain ring with identity Ψ; the q-structure is hidden
/// because Ψⁿ(q) = q would contradict Ψⁿ(q) = qⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialPsi<R>(pub R);

/// Strips Ψ-operations from a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoPsi<R>(pub R);

macro_rules! delegate_ring {
    () => {
        fn zero(&self) -> R::Elem {
            self.0.zero()
        }
        fn one(&self) -> R::Elem {
            self.0.one()
        }
        fn from_int(&self, n: &BigInt) -> R::Elem {
            self.0.from_int(n)
        }
        fn add(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
            self.0.add(a, b)
        }
        fn sub(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
            self.0.sub(a, b)
        }
        fn neg(&self, a: &R::Elem) -> R::Elem {
            self.0.neg(a)
        }
        fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
            self.0.mul(a, b)
        }
        fn is_zero(&self, a: &R::Elem) -> bool {
            self.0.is_zero(a)
        }
        fn is_torsion_free(&self) -> bool {
            self.0.is_torsion_free()
        }
        fn has_rational_division(&self) -> bool {
            self.0.has_rational_division()
        }
        fn div_int(&self, x: &R::Elem, d: &BigInt) -> Result<R::Elem> {
            self.0.div_int(x, d)
        }
        fn div_exact(&self, x: &R::Elem, d: &R::Elem) -> Result<R::Elem> {
            self.0.div_exact(x, d)
        }
        fn inverse(&self, x: &R::Elem) -> Option<R::Elem> {
            self.0.inverse(x)
        }
        fn format(&self, x: &R::Elem) -> String {
            self.0.format(x)
        }
        fn parse(&self, s: &str) -> Result<R::Elem> {
            self.0.parse(s)
        }
    };
}

impl<R: CoeffRing> CoeffRing for TrivialPsi<R> {
    type Elem = R::Elem;
    delegate_ring!();
    fn selector(&self) -> String {
        format!("Trivial({})", self.0.selector())
    }
    fn has_psi(&self) -> bool {
        true
    }
    fn psi(&self, _n: usize, x: &R::Elem) -> Result<R::Elem> {
        Ok(x.clone())
    }
}

impl<R: CoeffRing> CoeffRing for NoPsi<R> {
    type Elem = R::Elem;
    delegate_ring!();
    fn selector(&self) -> String {
        format!("NoPsi({})", self.0.selector())
    }
    fn q_image(&self) -> Option<R::Elem> {
        self.0.q_image()
    }
    fn has_psi(&self) -> bool {
        false
    }
    fn psi(&self, _n: usize, _x: &R::Elem) -> Result<R::Elem> {
        Err(Error::NoPsiStructure)
    }
    fn to_integer(&self, x: &R::Elem) -> Option<BigInt> {
        self.0.to_integer(x)
    }
}

/// Checks the commutative-ring axioms on every pair and triple of samples.
pub fn check_ring_axioms<R: CoeffRing>(ring: &R, samples: &[R::Elem]) -> std::result::Result<(), String> {
    let (zero, one) = (ring.zero(), ring.one());
    let fail = |what: &str, xs: &[&R::Elem]| -> String {
        let shown: Vec<String> = xs.iter().map(|x| ring.format(x)).collect();
        format!("{what} fails on {}", shown.join(", "))
    };
    for a in samples {
        if ring.add(a, &zero) != *a {
            return Err(fail("additive identity", &[a]));
        }
        if ring.mul(a, &one) != *a {
            return Err(fail("multiplicative identity", &[a]));
        }
        if !ring.is_zero(&ring.add(a, &ring.neg(a))) {
            return Err(fail("additive inverse", &[a]));
        }
        for b in samples {
            if ring.add(a, b) != ring.add(b, a) {
                return Err(fail("additive commutativity", &[a, b]));
            }
            if ring.mul(a, b) != ring.mul(b, a) {
                return Err(fail("multiplicative commutativity", &[a, b]));
            }
            for c in samples {
                if ring.add(&ring.add(a, b), c) != ring.add(a, &ring.add(b, c)) {
                    return Err(fail("additive associativity", &[a, b, c]));
                }
                if ring.mul(&ring.mul(a, b), c) != ring.mul(a, &ring.mul(b, c)) {
                    return Err(fail("multiplicative associativity", &[a, b, c]));
                }
                if ring.mul(a, &ring.add(b, c)) != ring.add(&ring.mul(a, b), &ring.mul(a, c)) {
                    return Err(fail("distributivity", &[a, b, c]));
                }
            }
        }
    }
    Ok(())
}

/// Checks Ψ¹ = id, ΨⁿΨᵐ = Ψⁿᵐ, and that each Ψⁿ (n ≤ max_n) is a unital ring map.
pub fn check_psi_axioms<R: CoeffRing>(ring: &R, samples: &[R::Elem], max_n: usize) -> std::result::Result<(), String> {
    let psi = |n: usize, x: &R::Elem| ring.psi(n, x).map_err(|e| e.to_string());
    if let Some(q) = ring.q_image() {
        for n in 1..=max_n {
            if psi(n, &q)? != ring.pow(&q, n as u32) {
                return Err(format!("psi^{n}(q) != q^{n}"));
            }
        }
    }
    for n in 1..=max_n {
        if psi(n, &ring.one())? != ring.one() {
            return Err(format!("psi^{n} does not preserve unity"));
        }
    }
    for a in samples {
        if psi(1, a)? != *a {
            return Err(format!("psi^1 is not the identity on {}", ring.format(a)));
        }
        for n in 1..=max_n {
            for m in 1..=max_n {
                if psi(n, &psi(m, a)?)? != psi(n * m, a)? {
                    return Err(format!("psi^{n} psi^{m} != psi^{} on {}", n * m, ring.format(a)));
                }
            }
            for b in samples {
                if psi(n, &ring.add(a, b))? != ring.add(&psi(n, a)?, &psi(n, b)?) {
                    return Err(format!("psi^{n} not additive"));
                }
                if psi(n, &ring.mul(a, b))? != ring.mul(&psi(n, a)?, &psi(n, b)?) {
                    return Err(format!("psi^{n} not multiplicative"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> ZPolynomial {
        ZPolynomial::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn psi_examples() {
        assert_eq!(PolyRing.psi(3, &zp(&[1, 1, 1])).unwrap(), zp(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(IntegerRing.psi(7, &BigInt::from(5)).unwrap(), BigInt::from(5));
        assert_eq!(PolyRing.psi(1, &zp(&[3, -1])).unwrap(), zp(&[3, -1]));
        assert_eq!(NoPsi(PolyRing).psi(2, &zp(&[1])), Err(Error::NoPsiStructure));
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(PolyRing.div_exact(&zp(&[1, 0, -1]), &zp(&[1, -1])).unwrap(), zp(&[1, 1]));
        assert_eq!(IntegerRing.div_int(&BigInt::from(6), &BigInt::from(3)).unwrap(), BigInt::from(2));
        assert!(matches!(PolyRing.div_int(&zp(&[0, 1, 0, -1]), &BigInt::from(2)), Err(Error::NotDivisible(_))));
        // the membership test agrees
        let y = PolyRing.extension().div_int(&PolyRing.embed(&zp(&[0, 1, 0, -1])), &BigInt::from(2)).unwrap();
        assert_eq!(PolyRing.retract(&y), None);
    }

    #[test]
    fn zmod_basics() {
        let r = ZMod::new(6).unwrap();
        assert_eq!(r.from_i64(-1), 5);
        assert_eq!(r.inverse(&5), Some(5));
        assert_eq!(r.inverse(&2), None);
        assert!(!r.is_torsion_free());
        check_ring_axioms(&r, &[0, 1, 2, 3, 5]).unwrap();
        check_psi_axioms(&r, &[0, 1, 4], 4).unwrap();
    }

    #[test]
    fn self_checks_on_shipped_rings() {
        let zs: Vec<BigInt> = [-3, 0, 1, 7].iter().map(|&x| BigInt::from(x)).collect();
        check_ring_axioms(&IntegerRing, &zs).unwrap();
        check_psi_axioms(&IntegerRing, &zs, 4).unwrap();
        let ps = vec![zp(&[1, -1]), zp(&[0, 2, 1]), zp(&[-1]), zp(&[])];
        check_ring_axioms(&PolyRing, &ps).unwrap();
        check_psi_axioms(&PolyRing, &ps, 4).unwrap();
        let qs: Vec<QRationalFunction> = ["1/(1-q)", "q^2+1/2", "(1+q)/(2-q^2)"]
            .iter()
            .map(|s| RationalFunctionField.parse(s).unwrap())
            .collect();
        check_ring_axioms(&RationalFunctionField, &qs).unwrap();
        check_psi_axioms(&RationalFunctionField, &qs, 3).unwrap();
        check_psi_axioms(&TrivialPsi(PolyRing), &ps, 3).unwrap();
    }

    #[test]
    fn embeddings_round_trip() {
        let x = zp(&[2, 0, -5]);
        assert_eq!(PolyRing.retract(&PolyRing.embed(&x)), Some(x));
        assert_eq!(IntegerRing.retract(&BigRational::new(1.into(), 2.into())), None);
    }
}
