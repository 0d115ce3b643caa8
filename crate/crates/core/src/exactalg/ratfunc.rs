use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{QPolynomial, ZPolynomial};

/// Element of ℚ(q) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRationalFunction {
    num: QPolynomial,
    den: QPolynomial,
}

impl QRationalFunction {
    /// None when the denominator is zero.
    pub fn new(num: QPolynomial, den: QPolynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    fn reduce(num: QPolynomial, den: QPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeff(0).recip();
            return QRationalFunction { num: num.scale(&inv), den: QPolynomial::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        Self::normalize(num, den)
    }

    fn normalize(num: QPolynomial, den: QPolynomial) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            return QRationalFunction { num, den };
        }
        let inv = lead.recip();
        QRationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        QRationalFunction { num: QPolynomial::zero(), den: QPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(QPolynomial::one())
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        QRationalFunction { num: p, den: QPolynomial::one() }
    }

    pub fn from_zpoly(p: &ZPolynomial) -> Self {
        Self::from_poly(p.to_q())
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(QPolynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn q() -> Self {
        Self::from_poly(QPolynomial::q())
    }

    pub fn numer(&self) -> &QPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &QPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(p) when the denominator is 1.
    pub fn as_poly(&self) -> Option<&QPolynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return Self::reduce(&self.num + &o.num, self.den.clone());
        }
        Self::reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        QRationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(&self.num * &o.num);
        }
        // Both inputs are reduced, so only cross cancellations can occur.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let split = |p: &QPolynomial, g: &QPolynomial| if g.is_one() { p.clone() } else { p.div_rem(g).0 };
        let num = &split(&self.num, &g1) * &split(&o.num, &g2);
        let den = &split(&o.den, &g1) * &split(&self.den, &g2);
        Self::normalize(num, den)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QRationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn div_int(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        Some(self.scale(&BigRational::new(BigInt::one(), d.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        QRationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Substitutes q ↦ q^k; coprimality survives the substitution.
    pub fn dilate(&self, k: usize) -> Self {
        QRationalFunction { num: self.num.dilate(k), den: self.den.dilate(k) }
    }

    /// Value at a rational point; None at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

impl fmt::Display for QRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &QPolynomial, allow_sign: bool| {
            let s = p.to_string();
            let atomic = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
                && (allow_sign || !s.starts_with('-'))
                && !s.contains('*')
                && !s.contains('/');
            if atomic { s } else { format!("({s})") }
        };
        write!(f, "{}/{}", wrap(&self.num, true), wrap(&self.den, false))
    }
}
