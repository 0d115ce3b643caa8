use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient type for dense polynomials.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Send + Sync {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn add_assign_ref(&mut self, o: &Self);
    fn sub_assign_ref(&mut self, o: &Self);
    /// self += a * b
    fn add_mul(&mut self, a: &Self, b: &Self);
    fn from_bigint(n: BigInt) -> Self;
    fn is_negative(&self) -> bool;
    fn to_rational(&self) -> BigRational;
}

macro_rules! impl_scalar {
    ($t:ty, $from:expr, $to_rat:expr) => {
        impl Scalar for $t {
            #[inline]
            fn add_ref(&self, o: &Self) -> Self {
                self + o
            }
            #[inline]
            fn sub_ref(&self, o: &Self) -> Self {
                self - o
            }
            #[inline]
            fn mul_ref(&self, o: &Self) -> Self {
                self * o
            }
            #[inline]
            fn neg_ref(&self) -> Self {
                -self
            }
            #[inline]
            fn add_assign_ref(&mut self, o: &Self) {
                *self += o;
            }
            #[inline]
            fn sub_assign_ref(&mut self, o: &Self) {
                *self -= o;
            }
            #[inline]
            fn add_mul(&mut self, a: &Self, b: &Self) {
                *self += a * b;
            }
            fn from_bigint(n: BigInt) -> Self {
                ($from)(n)
            }
            fn is_negative(&self) -> bool {
                Signed::is_negative(self)
            }
            fn to_rational(&self) -> BigRational {
                ($to_rat)(self)
            }
        }
    };
}

impl_scalar!(BigInt, |n: BigInt| n, |x: &BigInt| BigRational::from_integer(x.clone()));
impl_scalar!(BigRational, BigRational::from_integer, |x: &BigRational| x.clone());

/// Dense univariate polynomial in q; index i holds the coefficient of q^i.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
}

pub type QPolynomial = DensePoly<BigRational>;
pub type ZPolynomial = DensePoly<BigInt>;

impl<T: Scalar> DensePoly<T> {
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(T::from_bigint(BigInt::from(n)))
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        DensePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x);
            acc.add_assign_ref(c);
        }
        acc
    }

    /// Substitutes q ↦ q^k.
    pub fn dilate(&self, k: usize) -> Self {
        if k == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        DensePoly { coeffs }
    }

    /// Substitutes q ↦ h(q).
    pub fn compose(&self, h: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * h) + &Self::constant(c.clone());
        }
        acc
    }

    /// The deformed integer [n]_g = 1 + g + ... + g^{n-1}.
    pub fn q_integer(n: usize, g: &Self) -> Self {
        let mut acc = Self::zero();
        let mut p = Self::one();
        for i in 0..n {
            acc = &acc + &p;
            if i + 1 < n {
                p = &p * g;
            }
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DensePoly<U> {
        DensePoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<'a, T: Scalar> Add<&'a DensePoly<T>> for &'a DensePoly<T> {
    type Output = DensePoly<T>;
    fn add(self, o: &DensePoly<T>) -> DensePoly<T> {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            c.add_assign_ref(s);
        }
        DensePoly::from_coeffs(coeffs)
    }
}

impl<'a, T: Scalar> Sub<&'a DensePoly<T>> for &'a DensePoly<T> {
    type Output = DensePoly<T>;
    fn sub(self, o: &DensePoly<T>) -> DensePoly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, T::zero());
        for (c, s) in coeffs.iter_mut().zip(&o.coeffs) {
            c.sub_assign_ref(s);
        }
        DensePoly::from_coeffs(coeffs)
    }
}

impl<'a, T: Scalar> Mul<&'a DensePoly<T>> for &'a DensePoly<T> {
    type Output = DensePoly<T>;
    fn mul(self, o: &DensePoly<T>) -> DensePoly<T> {
        if self.is_zero() || o.is_zero() {
            return DensePoly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j].add_mul(a, b);
            }
        }
        DensePoly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Neg for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn neg(self) -> DensePoly<T> {
        DensePoly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr<DensePoly<T>> for DensePoly<T> {
            type Output = DensePoly<T>;
            fn $m(self, o: DensePoly<T>) -> DensePoly<T> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for DensePoly<T> {
    type Output = DensePoly<T>;
    fn neg(self) -> DensePoly<T> {
        -&self
    }
}

/// Prints in ascending degree, e.g. `1-2*q+q^3`.
impl<T: Scalar> fmt::Display for DensePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl ZPolynomial {
    pub fn to_q(&self) -> QPolynomial {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by d, if all divisions are exact.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Option<ZPolynomial> {
        if d.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (qt, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(qt);
        }
        Some(DensePoly { coeffs: out })
    }

    /// Exact division in ℤ[q]; None when the quotient is not an integer polynomial.
    pub fn div_exact(&self, d: &ZPolynomial) -> Option<ZPolynomial> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lead = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    fn primitive(&self) -> ZPolynomial {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar_exact(&c).expect("content divides")
    }

    /// gcd in ℤ[q] up to sign, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &ZPolynomial) -> ZPolynomial {
        if self.is_zero() {
            return other.primitive_positive();
        }
        if other.is_zero() {
            return self.primitive_positive();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = Self::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        let g = a.primitive_positive();
        g.scale(&cont)
    }

    fn primitive_positive(&self) -> ZPolynomial {
        let p = self.primitive();
        if p.leading().is_some_and(|c| Signed::is_negative(c)) {
            -p
        } else {
            p
        }
    }

    fn pseudo_rem(&self, d: &ZPolynomial) -> ZPolynomial {
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let top = rem[k].clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            let shift = k - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * dc;
            }
            rem.pop();
        }
        Self::from_coeffs(rem)
    }
}

impl QPolynomial {
    /// Some(p) when every coefficient is an integer.
    pub fn to_z(&self) -> Option<ZPolynomial> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(DensePoly { coeffs: out })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Writes self = z / den with z in ℤ[q] and den > 0 minimal.
    pub fn clear_denominators(&self) -> (ZPolynomial, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let z = self.coeffs.iter().map(|c| (c.numer() * &den) / c.denom()).collect();
        (ZPolynomial::from_coeffs(z), den)
    }

    pub fn monic(&self) -> QPolynomial {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division over ℚ. Panics on a zero divisor.
    pub fn div_rem(&self, d: &QPolynomial) -> (QPolynomial, QPolynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let c = &rem[k + dd] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic gcd over ℚ (zero only when both inputs are zero).
    pub fn gcd(&self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        let (a, _) = self.clear_denominators();
        let (b, _) = other.clear_denominators();
        a.gcd(&b).to_q().monic()
    }
}
