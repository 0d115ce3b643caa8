use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{DensePoly, Scalar};
use crate::error::{Error, Result};
use crate::rings::CoeffRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    X,
    Y,
}

/// Indexed variable x_d or y_d. Orders by index, then x before y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub index: u32,
    pub kind: VarKind,
}

impl Var {
    pub fn x(index: u32) -> Self {
        Var { index, kind: VarKind::X }
    }
    pub fn y(index: u32) -> Self {
        Var { index, kind: VarKind::Y }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            VarKind::X => 'x',
            VarKind::Y => 'y',
        };
        write!(f, "{c}_{}", self.index)
    }
}

/// Product of variable powers, sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut factors: Vec<(Var, u32)>) -> Self {
        factors.retain(|f| f.1 > 0);
        factors.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|f| f.0 == v).map_or(0, |f| f.1)
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Graded: total degree first, then lexicographic on the factor list.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in the indexed variables with coefficients in a
/// univariate polynomial ring over T. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly<T: Scalar> {
    terms: BTreeMap<Monomial, DensePoly<T>>,
}

/// Coefficients in ℚ[q].
pub type MultiPolynomial = MPoly<BigRational>;
/// Coefficients in ℤ[q].
pub type ZMultiPolynomial = MPoly<BigInt>;

impl<T: Scalar> MPoly<T> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: DensePoly<T>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: DensePoly<T>, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(DensePoly::one(), Monomial(vec![(v, 1)]))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, DensePoly<T>)>) -> Self {
        let mut acc: HashMap<Monomial, DensePoly<T>> = HashMap::new();
        for (m, c) in it {
            let e = acc.entry(m).or_insert_with(DensePoly::zero);
            *e = &*e + &c;
        }
        Self::collect(acc)
    }

    fn collect(acc: HashMap<Monomial, DensePoly<T>>) -> Self {
        MPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &DensePoly<T>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> DensePoly<T> {
        self.terms.get(m).cloned().unwrap_or_else(DensePoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            match terms.get_mut(m) {
                Some(e) => {
                    let s = &*e + c;
                    if s.is_zero() {
                        terms.remove(m);
                    } else {
                        *e = s;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MPoly { terms }
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Monomial, DensePoly<T>> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let prod = ca * cb;
                let e = acc.entry(ma.mul(mb)).or_insert_with(DensePoly::zero);
                *e = &*e + &prod;
            }
        }
        Self::collect(acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(DensePoly::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &DensePoly<T>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::collect(self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect())
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&DensePoly<T>) -> DensePoly<U>) -> MPoly<U> {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Fallible coefficient map.
    pub fn try_map_coeffs<U: Scalar>(&self, f: impl Fn(&DensePoly<T>) -> Option<DensePoly<U>>) -> Option<MPoly<U>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.insert(m.clone(), d);
            }
        }
        Some(MPoly { terms })
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|f| f.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Evaluates with q ↦ `q` and each variable through `lookup`.
    pub fn evaluate<R: CoeffRing>(
        &self,
        ring: &R,
        q: Option<&R::Elem>,
        lookup: impl Fn(Var) -> Option<R::Elem>,
    ) -> Result<R::Elem> {
        let mut qpow: Vec<R::Elem> = vec![ring.one()];
        let mut vpow: HashMap<Var, Vec<R::Elem>> = HashMap::new();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut mono = ring.one();
            for &(v, e) in &m.0 {
                if !vpow.contains_key(&v) {
                    let x = lookup(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                    vpow.insert(v, vec![ring.one(), x]);
                }
                let pows = vpow.get_mut(&v).unwrap();
                while pows.len() <= e as usize {
                    let next = ring.mul(pows.last().unwrap(), &pows[1]);
                    pows.push(next);
                }
                mono = ring.mul(&mono, &pows[e as usize]);
            }
            let mut coef = ring.zero();
            for (i, a) in c.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if i >= qpow.len() {
                    let qv = q.ok_or_else(|| Error::UnboundVariable("q".into()))?;
                    while qpow.len() <= i {
                        let next = ring.mul(qpow.last().unwrap(), qv);
                        qpow.push(next);
                    }
                }
                let ai = ring.from_rational(&a.to_rational())?;
                coef = ring.add(&coef, &ring.mul(&ai, &qpow[i]));
            }
            let val = ring.mul(&coef, &mono);
            acc = ring.add(&acc, &val);
        }
        Ok(acc)
    }
}

impl ZMultiPolynomial {
    pub fn to_q(&self) -> MultiPolynomial {
        self.map_coeffs(|c| c.to_q())
    }

    /// Divides every coefficient by d, if all divisions are exact.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Option<Self> {
        self.try_map_coeffs(|c| c.div_scalar_exact(d))
    }
}

impl MultiPolynomial {
    pub fn to_z(&self) -> Option<ZMultiPolynomial> {
        self.try_map_coeffs(|c| c.to_z())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integral())
    }
}

impl<T: Scalar> fmt::Display for MPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.0.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// Evaluates p with the given variable bindings; q maps to `q` when provided,
/// else to the ring's designated q-image.
pub fn mpoly_substitute<R: CoeffRing>(
    p: &MultiPolynomial,
    ring: &R,
    bindings: &HashMap<Var, R::Elem>,
    q: Option<&R::Elem>,
) -> Result<R::Elem> {
    let qi = ring.q_image();
    let q = q.or(qi.as_ref());
    p.evaluate(ring, q, |v| bindings.get(&v).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_qpoly;
    use crate::exactalg::QPolynomial;
    use crate::rings::{IntegerRing, PolyRing};

    fn c(s: &str) -> QPolynomial {
        parse_qpoly(s).unwrap()
    }

    #[test]
    fn substitute_examples() {
        // I_2 = -x_2 - (1+g) x_1^2 at g = q, x_1 = 1, x_2 = 0
        let i2 = MultiPolynomial::var(Var::x(2))
            .neg()
            .sub(&MultiPolynomial::var(Var::x(1)).pow(2).scale(&c("1+q")));
        let mut b = HashMap::new();
        b.insert(Var::x(1), PolyRing.one());
        b.insert(Var::x(2), PolyRing.zero());
        let v = mpoly_substitute(&i2, &PolyRing, &b, None).unwrap();
        assert_eq!(v, PolyRing.parse("-1-q").unwrap());
        assert_eq!(mpoly_substitute(&MultiPolynomial::zero(), &PolyRing, &b, None).unwrap(), PolyRing.zero());
    }

    #[test]
    fn unbound_variables() {
        let p = MultiPolynomial::var(Var::y(3)).scale(&c("q"));
        let b: HashMap<Var, BigInt> = HashMap::new();
        assert_eq!(mpoly_substitute(&p, &IntegerRing, &b, None), Err(Error::UnboundVariable("y_3".into())));
        let mut b = HashMap::new();
        b.insert(Var::y(3), BigInt::from(2));
        assert_eq!(mpoly_substitute(&p, &IntegerRing, &b, None), Err(Error::UnboundVariable("q".into())));
        assert_eq!(mpoly_substitute(&p, &IntegerRing, &b, Some(&BigInt::from(5))).unwrap(), BigInt::from(10));
    }

    #[test]
    fn canonical_ordering() {
        let p = MultiPolynomial::var(Var::y(1))
            .mul(&MultiPolynomial::var(Var::x(2)))
            .add(&MultiPolynomial::var(Var::x(1)))
            .add(&MultiPolynomial::constant(c("2")));
        assert_eq!(p.to_string(), "(2) + (1)*x_1 + (1)*y_1*x_2");
    }
}
