//! Teichmüller-type maps M, M^m, M^g and the isomorphism τ from Witt vectors
//! to necklace vectors, τ(a)_n = Σ_{d|n} M(a_d, n/d).
//!
//! Values are computed in the ring itself with every division by n certified;
//! a failed division means the Ψ-structure violates the λ-ring congruences and
//! is reported as NotDivisible.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{divisors, mobius as classical_mobius};
use crate::error::{Error, Result};
use crate::exactalg::{QRationalFunction, ZPolynomial};
use crate::necklace::{f_coeffs, MobiusTable, NecklaceVector};
use crate::rings::{CoeffRing, RationalExtension};
use crate::witt::{WittContext, WittVector};

fn require_lambda_ring<R: CoeffRing>(ring: &R) -> Result<()> {
    if !ring.has_psi() {
        return Err(Error::NoPsiStructure);
    }
    if !ring.is_torsion_free() {
        return Err(Error::InvalidContext(format!(
            "Teichmüller maps need a torsion-free ring, got {}",
            ring.selector()
        )));
    }
    Ok(())
}

/// M(x, n) = (1/n)Σ_{d|n} μ(d)ψ^d(x^{n/d}).
pub fn teich_classical<R: CoeffRing>(ring: &R, x: &R::Elem, n: usize) -> Result<R::Elem> {
    require_lambda_ring(ring)?;
    let mut acc = ring.zero();
    for d in divisors(n) {
        let mu = classical_mobius(d);
        if mu == 0 {
            continue;
        }
        let t = ring.psi(d, &ring.pow(x, (n / d) as u32))?;
        acc = if mu > 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
    }
    ring.div_int(&acc, &BigInt::from(n))
}

/// M^m(x, n) = (1/n)Σ_{d|n} μ_m(d)[n/d]_m Ψ^d(x^{n/d}).
pub fn teich_m<R: CoeffRing>(ring: &R, x: &R::Elem, n: usize, m: &BigInt) -> Result<R::Elem> {
    require_lambda_ring(ring)?;
    let mg = ZPolynomial::constant(m.clone());
    let mu = MobiusTable::new(&mg, n);
    let mut acc = ring.zero();
    for d in divisors(n) {
        let c = mu.get(d).constant_term() * ZPolynomial::q_integer(n / d, &mg).constant_term();
        if c == BigInt::from(0) {
            continue;
        }
        acc = ring.add(&acc, &ring.mul_int(&ring.psi(d, &ring.pow(x, (n / d) as u32))?, &c));
    }
    ring.div_int(&acc, &BigInt::from(n))
}

/// M(x, 1..=k) for the context's deformation, from
/// Σ_{d|n} d[n/d]_g Ψ^{n/d}(M(x, d)) = [n]_g xⁿ.
pub fn teich_sequence<R: CoeffRing>(ctx: &WittContext<R>, x: &R::Elem, k: usize) -> Result<Vec<R::Elem>> {
    let ring = ctx.ring();
    require_lambda_ring(ring)?;
    if k > ctx.trunc() {
        return Err(Error::TruncationTooShort { need: k, have: ctx.trunc() });
    }
    let mut out: Vec<R::Elem> = Vec::with_capacity(k);
    let mut xp = ring.one();
    for n in 1..=k {
        xp = ring.mul(&xp, x);
        let mut rest = ring.mul(ctx.q_integer(n), &xp);
        for d in divisors(n) {
            if d == n {
                break;
            }
            let z = &out[d - 1];
            if ring.is_zero(z) {
                continue;
            }
            let s = ring.mul(&ring.mul_int(&ring.psi(n / d, z)?, &BigInt::from(d)), ctx.q_integer(n / d));
            rest = ring.sub(&rest, &s);
        }
        out.push(if n == 1 { rest } else { ring.div_int(&rest, &BigInt::from(n))? });
    }
    Ok(out)
}

/// M^g(x, n) by the defining recursion.
pub fn teich_g<R: CoeffRing>(ctx: &WittContext<R>, x: &R::Elem, n: usize) -> Result<R::Elem> {
    Ok(teich_sequence(ctx, x, n)?.pop().unwrap())
}

/// Closed forms M(x, n) = Σ_{d|n} c_{n,d}·Ψ^d(x^{n/d}) with c_{n,d} ∈ ℚ(q):
/// c_{n,d} = μ_m(d)[n/d]_m / n for a constant deformation m, and
/// c_{n,d} = f_d(q)(1 − g(q^d)^{n/d}) / n otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct TeichmullerCache {
    g: ZPolynomial,
    table: Vec<Vec<(usize, QRationalFunction)>>,
}

impl TeichmullerCache {
    pub fn new(g: &ZPolynomial, n_max: usize) -> Result<Self> {
        let mut table = Vec::with_capacity(n_max);
        if g.is_constant() {
            let mu = MobiusTable::new(g, n_max);
            for n in 1..=n_max {
                let row = divisors(n)
                    .into_iter()
                    .map(|d| {
                        let c = mu.get(d).constant_term() * ZPolynomial::q_integer(n / d, g).constant_term();
                        (d, QRationalFunction::from_rational(BigRational::new(c, BigInt::from(n))))
                    })
                    .collect();
                table.push(row);
            }
        } else {
            let f = f_coeffs(g, n_max)?;
            for n in 1..=n_max {
                let row = divisors(n)
                    .into_iter()
                    .map(|d| {
                        let gd = QRationalFunction::from_zpoly(&g.dilate(d)).pow((n / d) as u32);
                        let c = f[d - 1].mul(&QRationalFunction::one().sub(&gd));
                        (d, c.div_int(&BigInt::from(n)).expect("n is nonzero"))
                    })
                    .collect();
                table.push(row);
            }
        }
        Ok(TeichmullerCache { g: g.clone(), table })
    }

    pub fn deformation(&self) -> &ZPolynomial {
        &self.g
    }

    pub fn coefficients(&self, n: usize) -> &[(usize, QRationalFunction)] {
        &self.table[n - 1]
    }

    /// Evaluates M(x, n) in the rational extension and certifies the result
    /// lies in the ring.
    pub fn evaluate<R: RationalExtension>(&self, ring: &R, x: &R::Elem, n: usize) -> Result<R::Elem>
    where
        R::Ext: CoeffRing,
    {
        let ext = ring.extension();
        let y = ring.embed(x);
        let mut acc = ext.zero();
        for (d, c) in self.coefficients(n) {
            let t = ext.psi(*d, &ext.pow(&y, (n / d) as u32))?;
            acc = ext.add(&acc, &ext.mul(&ext.from_rational_function(c)?, &t));
        }
        ring.retract(&acc).ok_or_else(|| Error::NotDivisible(format!("M(x, {n}) = {} is not in the ring", ext.format(&acc))))
    }
}

/// τ(a)_n = Σ_{d|n} M(a_d, n/d), with M the context's Teichmüller map.
pub fn tau<R: CoeffRing>(a: &WittVector<R>) -> Result<NecklaceVector<R>> {
    let ctx = a.ctx();
    let ring = ctx.ring();
    require_lambda_ring(ring)?;
    let n_max = ctx.trunc();
    let mut coords = vec![ring.zero(); n_max];
    for (i, x) in a.coords().iter().enumerate() {
        let d = i + 1;
        if ring.is_zero(x) {
            continue;
        }
        let m = teich_sequence(ctx, x, n_max / d)?;
        for (j, v) in m.iter().enumerate() {
            let n = d * (j + 1);
            coords[n - 1] = ring.add(&coords[n - 1], v);
        }
    }
    NecklaceVector::new(ctx, coords)
}

/// Inverse of τ by the unitriangular solve a_n = b_n − Σ_{d|n, d<n} M(a_d, n/d).
pub fn tau_inv<R: CoeffRing>(b: &NecklaceVector<R>) -> Result<WittVector<R>> {
    let ctx: &Arc<WittContext<R>> = b.ctx();
    let ring = ctx.ring();
    require_lambda_ring(ring)?;
    let n_max = ctx.trunc();
    let mut rest: Vec<R::Elem> = b.coords().to_vec();
    let mut coords = Vec::with_capacity(n_max);
    for d in 1..=n_max {
        let x = rest[d - 1].clone();
        if !ring.is_zero(&x) && 2 * d <= n_max {
            let m = teich_sequence(ctx, &x, n_max / d)?;
            for (j, v) in m.iter().enumerate().skip(1) {
                let n = d * (j + 1);
                rest[n - 1] = ring.sub(&rest[n - 1], v);
            }
        }
        coords.push(x);
    }
    ctx.vector(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_zpoly;
    use crate::rings::{IntegerRing, PolyRing};
    use crate::witt::Deformation;

    fn zq(s: &str) -> ZPolynomial {
        parse_zpoly(s).unwrap()
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn classical_values() {
        let v: Vec<BigInt> = (1..=8).map(|n| teich_classical(&IntegerRing, &b(2), n).unwrap()).collect();
        assert_eq!(v, [2, 1, 2, 3, 6, 9, 18, 30].map(b));
        assert_eq!(teich_classical(&IntegerRing, &b(1), 4).unwrap(), b(0));
        assert_eq!(teich_classical(&PolyRing, &zq("1+q"), 1).unwrap(), zq("1+q"));
    }

    #[test]
    fn deformed_values() {
        for m in [-2i64, 0, 3] {
            let mb = b(m);
            let ctx = WittContext::new(IntegerRing, Deformation::int(m), 8).unwrap();
            let seq = teich_sequence(&ctx, &b(5), 8).unwrap();
            for n in 1..=8 {
                assert_eq!(teich_m(&IntegerRing, &b(5), n, &mb).unwrap(), seq[n - 1]);
            }
            // prime n: ([p]_m/p)(x^p − x)
            let p3 = (1 + m + m * m) * (125 - 5) / 3;
            assert_eq!(seq[2], b(p3));
        }
        let v0: Vec<BigInt> = (1..=6).map(|n| teich_m(&IntegerRing, &b(3), n, &b(0)).unwrap()).collect();
        let vc: Vec<BigInt> = (1..=6).map(|n| teich_classical(&IntegerRing, &b(3), n).unwrap()).collect();
        assert_eq!(v0, vc);
        // m = 1: Σ μ(d)ψ^d(x^{n/d})
        assert_eq!(teich_m(&IntegerRing, &b(2), 6, &b(1)).unwrap(), b(64 - 8 - 4 + 2));
    }

    #[test]
    fn q_deformed_values() {
        let ctx = WittContext::new(PolyRing, Deformation::poly(zq("q")), 10).unwrap();
        let x = zq("2-q+q^2");
        let seq = teich_sequence(&ctx, &x, 10).unwrap();
        let cache = TeichmullerCache::new(&zq("q"), 10).unwrap();
        for n in 1..=10 {
            let classical = teich_classical(&PolyRing, &x, n).unwrap();
            assert_eq!(seq[n - 1], &ZPolynomial::q_integer(n, &zq("q")) * &classical);
            assert_eq!(cache.evaluate(&PolyRing, &x, n).unwrap(), seq[n - 1]);
        }
        let g = zq("q^2+1");
        let ctx = WittContext::new(PolyRing, Deformation::poly(g.clone()), 6).unwrap();
        let cache = TeichmullerCache::new(&g, 6).unwrap();
        let seq = teich_sequence(&ctx, &x, 6).unwrap();
        for n in 1..=6 {
            assert_eq!(cache.evaluate(&PolyRing, &x, n).unwrap(), seq[n - 1]);
        }
    }

    #[test]
    fn tau_examples() {
        let ctx = WittContext::new(IntegerRing, Deformation::int(0), 6).unwrap();
        let a = ctx.vector([2, 0, 0, 0, 0, 0].map(b).to_vec()).unwrap();
        assert_eq!(tau(&a).unwrap().coords(), &[2, 1, 2, 3, 6, 9].map(b));
        assert!(tau(&ctx.zero()).unwrap().coords().iter().all(|c| *c == b(0)));
        let c = ctx.vector([3, -1, 4, 1, -5, 9].map(b).to_vec()).unwrap();
        let t = tau(&c).unwrap();
        assert_eq!(t.ghost().unwrap().coords(), c.ghost().coords());
        assert_eq!(tau_inv(&t).unwrap(), c);
    }
}
