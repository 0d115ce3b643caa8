//! q-deformed symmetric functions on a finite alphabet x_1..x_k, with
//! coefficients in ℚ(q).
//!
//! Identities are only meaningful in degrees ≤ k, so every constructor rejects
//! larger degrees.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::exactalg::{QPolynomial, QRationalFunction, TruncatedSeries};
use crate::rings::CoeffRing;

/// Polynomial in x_1..x_k keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, QRationalFunction>,
}

impl SymPoly {
    pub fn zero(vars: usize) -> Self {
        SymPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: QRationalFunction) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, QRationalFunction::one())
    }

    /// x_i, 1-based.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i - 1] = 1;
        Self::from_terms(vars, [(e, QRationalFunction::one())])
    }

    pub fn from_terms(vars: usize, it: impl IntoIterator<Item = (Vec<u32>, QRationalFunction)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            assert_eq!(e.len(), vars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: QRationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Terms in ascending exponent-vector order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QRationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> QRationalFunction {
        self.terms.get(e).cloned().unwrap_or_else(QRationalFunction::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient when the polynomial has no x-dependence.
    pub fn as_constant(&self) -> Option<QRationalFunction> {
        match self.terms.len() {
            0 => Some(QRationalFunction::zero()),
            1 => self.terms.get(&vec![0; self.vars]).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.vars, o.vars, "alphabet size");
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        SymPoly { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &QRationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        SymPoly { vars: self.vars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.vars, o.vars, "alphabet size");
        if self.is_symmetric() && o.is_symmetric() {
            return self.mul_symmetric(o);
        }
        self.mul_filtered(o, |_| true)
    }

    /// Computes only the coefficients at non-increasing exponent vectors,
    /// then fills each orbit.
    fn mul_symmetric(&self, o: &Self) -> Self {
        let dominant = self.mul_filtered(o, |e| e.windows(2).all(|w| w[0] >= w[1]));
        let mut terms = BTreeMap::new();
        for (e, c) in dominant.terms {
            let mut perm = e.clone();
            perm.reverse();
            loop {
                terms.insert(perm.clone(), c.clone());
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        SymPoly { vars: self.vars, terms }
    }

    fn mul_filtered(&self, o: &Self, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut acc: HashMap<Vec<u32>, QRationalFunction> = HashMap::new();
        let mut e = vec![0u32; self.vars];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                for (i, x) in e.iter_mut().enumerate() {
                    *x = e1[i] + e2[i];
                }
                if !keep(&e) {
                    continue;
                }
                let e = e.clone();
                let c = c1.mul(c2);
                match acc.get_mut(&e) {
                    Some(x) => *x = x.add(&c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        SymPoly { vars: self.vars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars);
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

    /// Invariance under every adjacent transposition x_i ↔ x_{i+1}.
    pub fn is_symmetric(&self) -> bool {
        (0..self.vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut s = e.clone();
                s.swap(i, i + 1);
                self.terms.get(&s) == Some(c)
            })
        })
    }

    /// Substitutes a rational value for q; NotInvertible at a pole.
    pub fn specialize_q(&self, value: &BigRational) -> Result<Self> {
        let mut r = Self::zero(self.vars);
        for (e, c) in &self.terms {
            let v = c.eval(value).ok_or(Error::NotInvertible)?;
            r.add_term(e.clone(), QRationalFunction::from_rational(v));
        }
        Ok(r)
    }

    /// Largest e such that some coefficient has denominator c·(1 − q)^e, or
    /// None when a denominator has any other factor.
    pub fn one_minus_q_exponent(&self) -> Option<u32> {
        let base = QPolynomial::from_coeffs(vec![BigRational::one(), -BigRational::one()]);
        let mut worst = 0;
        for c in self.terms.values() {
            let mut d = c.denom().clone();
            let mut e = 0;
            while !d.is_constant() {
                let (quo, rem) = d.div_rem(&base);
                if !rem.is_zero() {
                    return None;
                }
                d = quo;
                e += 1;
            }
            worst = worst.max(e);
        }
        Some(worst)
    }

    /// True when every coefficient lies in ℚ[q].
    pub fn has_polynomial_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.as_poly().is_some())
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x_{}", j + 1)?,
                    _ => write!(f, "*x_{}^{k}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Advances to the next lexicographic permutation; false after the last.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// ℚ(q)[x_1..x_k] as a coefficient ring, so power series over it get exp/log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymRing {
    vars: usize,
}

impl SymRing {
    pub fn new(vars: usize) -> Self {
        SymRing { vars }
    }
}

impl CoeffRing for SymRing {
    type Elem = SymPoly;

    fn selector(&self) -> String {
        format!("Qq[x_1..x_{}]", self.vars)
    }
    fn zero(&self) -> SymPoly {
        SymPoly::zero(self.vars)
    }
    fn one(&self) -> SymPoly {
        SymPoly::one(self.vars)
    }
    fn from_int(&self, n: &BigInt) -> SymPoly {
        SymPoly::constant(self.vars, QRationalFunction::from_rational(BigRational::from_integer(n.clone())))
    }
    fn add(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        a.add(b)
    }
    fn neg(&self, a: &SymPoly) -> SymPoly {
        a.neg()
    }
    fn mul(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        a.mul(b)
    }
    fn mul_int(&self, a: &SymPoly, n: &BigInt) -> SymPoly {
        a.scale(&QRationalFunction::from_rational(BigRational::from_integer(n.clone())))
    }
    fn is_zero(&self, a: &SymPoly) -> bool {
        a.is_zero()
    }
    fn q_image(&self) -> Option<SymPoly> {
        Some(SymPoly::constant(self.vars, QRationalFunction::q()))
    }
    fn has_psi(&self) -> bool {
        false
    }
    fn psi(&self, _n: usize, _x: &SymPoly) -> Result<SymPoly> {
        Err(Error::NoPsiStructure)
    }
    fn is_torsion_free(&self) -> bool {
        true
    }
    fn has_rational_division(&self) -> bool {
        true
    }
    fn div_int(&self, x: &SymPoly, d: &BigInt) -> Result<SymPoly> {
        if d.is_zero() {
            return Err(Error::NotDivisible(format!("{x} by 0")));
        }
        Ok(x.scale(&QRationalFunction::from_rational(BigRational::new(BigInt::one(), d.clone()))))
    }
    fn div_exact(&self, x: &SymPoly, d: &SymPoly) -> Result<SymPoly> {
        let inv = self.inverse(d).ok_or_else(|| Error::NotDivisible(format!("{x} by {d}")))?;
        Ok(x.mul(&inv))
    }
    fn inverse(&self, x: &SymPoly) -> Option<SymPoly> {
        Some(SymPoly::constant(self.vars, x.as_constant()?.inv()?))
    }
    fn format(&self, x: &SymPoly) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<SymPoly> {
        let c = crate::exactalg::parse::parse_rational_function(s)?;
        Ok(SymPoly::constant(self.vars, c))
    }
}

/// A finite alphabet x_1..x_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    k: usize,
}

impl Alphabet {
    pub fn new(k: usize) -> Self {
        Alphabet { k }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn ring(&self) -> SymRing {
        SymRing::new(self.k)
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.k {
            return Err(Error::DegreeExceedsAlphabet { degree: n, vars: self.k });
        }
        Ok(())
    }

    fn scalar(&self, c: QRationalFunction) -> SymPoly {
        SymPoly::constant(self.k, c)
    }

    pub fn power_sum(&self, n: usize) -> Result<SymPoly> {
        self.check(n)?;
        Ok(self.power_sum_unchecked(n))
    }

    fn power_sum_unchecked(&self, n: usize) -> SymPoly {
        SymPoly::from_terms(
            self.k,
            (0..self.k).map(|i| {
                let mut e = vec![0; self.k];
                e[i] = n as u32;
                (e, QRationalFunction::one())
            }),
        )
    }

    /// Sum of all monomials of degree n.
    pub fn complete_h(&self, n: usize) -> Result<SymPoly> {
        self.check(n)?;
        let mut out = Vec::new();
        let mut e = vec![0u32; self.k];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == e.len() {
                e[i] = left;
                out.push(e.clone());
                return;
            }
            for a in 0..=left {
                e[i] = a;
                rec(i + 1, left - a, e, out);
            }
        }
        if self.k == 0 {
            return Ok(if n == 0 { SymPoly::one(0) } else { SymPoly::zero(0) });
        }
        rec(0, n as u32, &mut e, &mut out);
        Ok(SymPoly::from_terms(self.k, out.into_iter().map(|e| (e, QRationalFunction::one()))))
    }

    /// Solves Σ_{d|n} d·w(n/d)·z_d^{n/d} = p_n for z_1..z_N.
    fn solve(&self, n: usize, weight: impl Fn(usize) -> QRationalFunction) -> Result<Vec<SymPoly>> {
        self.check(n)?;
        self.recurse(n, weight)
    }

    /// The same recursion without the degree guard.
    fn recurse(&self, n: usize, weight: impl Fn(usize) -> QRationalFunction) -> Result<Vec<SymPoly>> {
        let mut z: Vec<SymPoly> = Vec::with_capacity(n);
        for m in 1..=n {
            let mut rest = self.power_sum_unchecked(m);
            for d in divisors(m) {
                if d == m {
                    break;
                }
                let c = weight(m / d).mul(&QRationalFunction::from_int(d as i64));
                rest = rest.sub(&z[d - 1].pow((m / d) as u32).scale(&c));
            }
            let lead = weight(1).mul(&QRationalFunction::from_int(m as i64));
            let inv = lead.inv().ok_or(Error::DegenerateDeformation)?;
            z.push(rest.scale(&inv));
        }
        Ok(z)
    }

    /// u_1..u_N from Σ_{d|n} d[n/d]_q u_d^{n/d} = p_n.
    pub fn u_sequence(&self, n: usize) -> Result<Vec<SymPoly>> {
        self.solve(n, q_integer)
    }

    /// v_1..v_N from Σ_{d|n} d(1 − q^{n/d}) v_d^{n/d} = p_n.
    pub fn v_sequence(&self, n: usize) -> Result<Vec<SymPoly>> {
        self.solve(n, |k| QRationalFunction::one().sub(&QRationalFunction::q().pow(k as u32)))
    }

    /// q_1..q_N from Σ_{d|n} d q_d^{n/d} = p_n.
    pub fn qn_sequence(&self, n: usize) -> Result<Vec<SymPoly>> {
        self.solve(n, |_| QRationalFunction::one())
    }

    pub fn u_q(&self, n: usize) -> Result<SymPoly> {
        Ok(self.u_sequence(n)?.pop().unwrap_or_else(|| SymPoly::zero(self.k)))
    }

    pub fn v_q(&self, n: usize) -> Result<SymPoly> {
        Ok(self.v_sequence(n)?.pop().unwrap_or_else(|| SymPoly::zero(self.k)))
    }

    pub fn qn_basis(&self, n: usize) -> Result<SymPoly> {
        Ok(self.qn_sequence(n)?.pop().unwrap_or_else(|| SymPoly::zero(self.k)))
    }

    /// H(X,t) = Σ h_n tⁿ up to order N.
    pub fn h_series(&self, n: usize) -> Result<TruncatedSeries<SymRing>> {
        self.check(n)?;
        let coeffs = (0..=n).map(|i| self.complete_h(i)).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries::new(self.ring(), n, coeffs))
    }

    /// Π_{m≤N} 1/(1 − z_m t^m).
    pub fn product_of_geometrics(&self, z: &[SymPoly], n: usize) -> TruncatedSeries<SymRing> {
        let ring = self.ring();
        let mut acc = TruncatedSeries::one(ring.clone(), n);
        for (i, c) in z.iter().enumerate().take(n) {
            if !c.is_zero() {
                acc = acc.mul(&TruncatedSeries::geometric(ring.clone(), n, c, i + 1)).expect("same ring");
            }
        }
        acc
    }

    /// Π_{m≤N} (1 − q z_m t^m)/(1 − z_m t^m).
    pub fn product_of_ratios(&self, z: &[SymPoly], n: usize) -> TruncatedSeries<SymRing> {
        let ring = self.ring();
        let q = QRationalFunction::q();
        let mut acc = self.product_of_geometrics(z, n);
        for (i, c) in z.iter().enumerate().take(n) {
            if !c.is_zero() {
                let b = TruncatedSeries::binomial(ring.clone(), n, &c.scale(&q.neg()), i + 1);
                acc = acc.mul(&b).expect("same ring");
            }
        }
        acc
    }

    /// H^q(X,t) = Π 1/(1 − u_n tⁿ).
    pub fn hq_series(&self, n: usize) -> Result<TruncatedSeries<SymRing>> {
        Ok(self.product_of_geometrics(&self.u_sequence(n)?, n))
    }

    /// G^q(X,t) = Π 1/(1 − v_n tⁿ).
    pub fn gq_series(&self, n: usize) -> Result<TruncatedSeries<SymRing>> {
        Ok(self.product_of_geometrics(&self.v_sequence(n)?, n))
    }

    pub fn hq(&self, n: usize) -> Result<SymPoly> {
        Ok(self.hq_series(n)?.coeff(n).clone())
    }

    pub fn gq(&self, n: usize) -> Result<SymPoly> {
        Ok(self.gq_series(n)?.coeff(n).clone())
    }

    /// H(X,t)^{1−q} = exp((1 − q) log H(X,t)).
    pub fn h_power_one_minus_q(&self, n: usize) -> Result<TruncatedSeries<SymRing>> {
        let c = self.scalar(QRationalFunction::one().sub(&QRationalFunction::q()));
        self.h_series(n)?.log()?.scale(&c).exp()
    }
}

/// [n]_q = 1 + q + … + q^{n−1}.
fn q_integer(n: usize) -> QRationalFunction {
    QRationalFunction::from_poly(QPolynomial::from_coeffs(vec![BigRational::one(); n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_rational_function;

    fn rf(s: &str) -> QRationalFunction {
        parse_rational_function(s).unwrap()
    }

    fn mono(e: &[u32], c: &str) -> SymPoly {
        SymPoly::from_terms(e.len(), [(e.to_vec(), rf(c))])
    }

    #[test]
    fn classical_bases() {
        let a = Alphabet::new(2);
        assert_eq!(a.power_sum(2).unwrap(), mono(&[2, 0], "1").add(&mono(&[0, 2], "1")));
        let h2 = a.complete_h(2).unwrap();
        assert_eq!(h2, mono(&[2, 0], "1").add(&mono(&[1, 1], "1")).add(&mono(&[0, 2], "1")));
        // p_2 = 2h_2 − h_1²
        let h1 = a.complete_h(1).unwrap();
        assert_eq!(a.power_sum(2).unwrap(), h2.scale(&rf("2")).sub(&h1.pow(2)));
        assert_eq!(a.power_sum(3), Err(Error::DegreeExceedsAlphabet { degree: 3, vars: 2 }));
    }

    #[test]
    fn base_cases() {
        let a = Alphabet::new(3);
        let p1 = a.power_sum(1).unwrap();
        assert_eq!(a.u_q(1).unwrap(), p1);
        assert_eq!(a.v_q(1).unwrap(), p1.scale(&rf("1/(1-q)")));
        assert_eq!(a.qn_basis(1).unwrap(), p1);
        assert_eq!(a.hq(1).unwrap(), p1);
    }

    #[test]
    fn one_variable() {
        let a = Alphabet::new(1);
        assert!(a.u_q(2).is_err());
        // (1 + q)x² + 2u_2 = x² and x² = q_1² + 2q_2
        let u = a.recurse(2, q_integer).unwrap();
        assert_eq!(u[1], mono(&[2], "-q/2"));
        let qn = a.recurse(2, |_| QRationalFunction::one()).unwrap();
        assert!(qn[1].is_zero());
    }

    #[test]
    fn remark_relation() {
        let a = Alphabet::new(3);
        let u = a.u_sequence(3).unwrap();
        let qn = a.qn_sequence(3).unwrap();
        for p in [2usize, 3] {
            let c = q_integer(p).sub(&QRationalFunction::one()).div_int(&BigInt::from(p)).unwrap();
            assert_eq!(qn[p - 1], u[p - 1].add(&u[0].pow(p as u32).scale(&c)));
        }
    }

    #[test]
    fn denominators_and_specialization() {
        let a = Alphabet::new(4);
        let u = a.u_sequence(4).unwrap();
        let v = a.v_sequence(4).unwrap();
        let qn = a.qn_sequence(4).unwrap();
        for n in 1..=4 {
            assert!(u[n - 1].has_polynomial_coefficients());
            let e = v[n - 1].one_minus_q_exponent().unwrap();
            assert!(e as usize <= n && e >= 1);
            assert_eq!(v[n - 1].specialize_q(&BigRational::zero()).unwrap(), qn[n - 1]);
            assert!(v[n - 1].is_symmetric());
        }
    }

    #[test]
    fn product_identities() {
        let a = Alphabet::new(3);
        let n = 3;
        let v = a.v_sequence(n).unwrap();
        assert_eq!(a.product_of_ratios(&v, n), a.h_series(n).unwrap());
        let u = a.u_sequence(n).unwrap();
        assert_eq!(a.product_of_ratios(&u, n), a.h_power_one_minus_q(n).unwrap());
    }

    #[test]
    fn symmetric_product_matches_full() {
        let a = Alphabet::new(3);
        let p = a.power_sum(2).unwrap().add(&a.complete_h(1).unwrap().scale(&rf("q")));
        let h = a.complete_h(3).unwrap();
        assert_eq!(p.mul(&h), p.mul_filtered(&h, |_| true));
        let mut v = vec![0, 1, 1];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn symmetry_detection() {
        assert!(!mono(&[2, 0], "1").is_symmetric());
        assert!(SymPoly::zero(3).is_symmetric());
        assert_eq!(mono(&[1, 0], "q").to_string(), "(q)*x_1");
    }
}
