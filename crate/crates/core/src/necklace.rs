//! Truncated necklace rings B̄^g and B^m over Ψ-rings. Addition is
//! componentwise; the product is Ψ-twisted:
//! Σ_{d|n} d·[n/d]_g·Ψ^{n/d}(P_d) = (1 − g)·φ_ab(x)_n·φ_ab(y)_n.
//!
//! The deformation-only data (μ_m, μ̂_g, structure constants, f_n) live in ℤ[q]
//! or ℚ(q); an integer deformation m is handled as the constant polynomial m,
//! for which dilation q ↦ q^k acts trivially.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};
use crate::exactalg::{QRationalFunction, ZPolynomial};
use crate::rings::{CoeffRing, RationalFunctionField};
use crate::witt::{Deformation, GhostVector, WittContext};

/// μ̂_g(1..=N) from μ̂(1) = 1, μ̂(n) = −Σ_{d|n, d<n} [n/d]_g · μ̂(d)(q^{n/d}).
/// For a constant g = m this is μ_m.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusTable {
    g: ZPolynomial,
    values: Vec<ZPolynomial>,
}

impl MobiusTable {
    pub fn new(g: &ZPolynomial, n: usize) -> Self {
        let mut values: Vec<ZPolynomial> = Vec::with_capacity(n);
        let qints: Vec<ZPolynomial> = (0..=n).map(|k| ZPolynomial::q_integer(k, g)).collect();
        for k in 1..=n {
            if k == 1 {
                values.push(ZPolynomial::one());
                continue;
            }
            let mut acc = ZPolynomial::zero();
            for d in divisors(k) {
                if d == k {
                    break;
                }
                acc = &acc - &(&qints[k / d] * &values[d - 1].dilate(k / d));
            }
            values.push(acc);
        }
        MobiusTable { g: g.clone(), values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn deformation(&self) -> &ZPolynomial {
        &self.g
    }

    pub fn get(&self, n: usize) -> &ZPolynomial {
        &self.values[n - 1]
    }
}

/// μ_m(n).
pub fn mobius(m: &BigInt, n: usize) -> BigInt {
    MobiusTable::new(&ZPolynomial::constant(m.clone()), n).get(n).constant_term()
}

/// μ̂_g(n).
pub fn mobius_hat(g: &ZPolynomial, n: usize) -> ZPolynomial {
    MobiusTable::new(g, n).get(n).clone()
}

/// The inner sum of the structure constant before scaling by ij/n:
/// Σ_{e | n/[i,j]} (1 − g(q^e))·[n/(ei)]_{g(q^e)}·[n/(ej)]_{g(q^e)}·μ̂_g(e).
fn structure_sum(g: &ZPolynomial, mu: &MobiusTable, n: usize, i: usize, j: usize) -> ZPolynomial {
    let l = lcm(i, j);
    let mut acc = ZPolynomial::zero();
    if n % l != 0 {
        return acc;
    }
    for e in divisors(n / l) {
        let ge = g.dilate(e);
        let term = &(&(&ZPolynomial::one() - &ge) * &ZPolynomial::q_integer(n / (e * i), &ge))
            * &(&ZPolynomial::q_integer(n / (e * j), &ge) * mu.get(e));
        acc = &acc + &term;
    }
    acc
}

/// Coefficient of Ψ^{n/i}(x_i)Ψ^{n/j}(y_j) in the n-th product coordinate:
/// (ij/n)·Σ_{e | n/[i,j]} (1 − g(q^e))[n/(ei)]_{g(q^e)}[n/(ej)]_{g(q^e)} μ̂_g(e).
/// For constant g = m this is ((1 − m)ij/n)Σ [n/(ei)]_m [n/(ej)]_m μ_m(e).
pub fn structure_constant(g: &ZPolynomial, mu: &MobiusTable, n: usize, i: usize, j: usize) -> Result<ZPolynomial> {
    if i == 0 || j == 0 || n % i != 0 || n % j != 0 {
        return Err(Error::InvalidContext(format!("{i} and {j} must divide {n}")));
    }
    let s = structure_sum(g, mu, n, i, j).scale(&BigInt::from(i * j));
    s.div_scalar_exact(&BigInt::from(n))
        .ok_or_else(|| Error::NotDivisible(format!("structure constant ({n}; {i}, {j}): {s} by {n}")))
}

/// f_1..f_N in ℚ(q) from Σ_{d|n} (1 − g^{n/d})·f_d(q^{n/d}) = δ_{n,1}.
pub fn f_coeffs(g: &ZPolynomial, n: usize) -> Result<Vec<QRationalFunction>> {
    if g.is_one() {
        return Err(Error::DegenerateDeformation);
    }
    let gq = QRationalFunction::from_zpoly(g);
    let one = QRationalFunction::one();
    let one_minus_gpow: Vec<QRationalFunction> = (0..=n).map(|k| one.sub(&gq.pow(k as u32))).collect();
    let inv = one_minus_gpow[1].inv().ok_or(Error::DegenerateDeformation)?;
    let mut f: Vec<QRationalFunction> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut rest = if k == 1 { one.clone() } else { QRationalFunction::zero() };
        for d in divisors(k) {
            if d == k {
                break;
            }
            rest = rest.sub(&one_minus_gpow[k / d].mul(&f[d - 1].dilate(k / d)));
        }
        f.push(rest.mul(&inv));
    }
    Ok(f)
}

/// E_1..E_N in ℚ(q) with Σ_{d|n} d(1 − g^{n/d})·E_d(q^{n/d}) = 1 for every n.
pub fn neck_unity_over_fractions(g: &ZPolynomial, n: usize) -> Result<Vec<QRationalFunction>> {
    let r = &RationalFunctionField;
    let ctx = WittContext::new(r.clone(), Deformation::poly(g.clone()), n)?;
    let inv = r.inverse(ctx.one_minus_g()).ok_or(Error::NotUnital)?;
    solve_twisted(r, ctx.qints(), &vec![inv; n])
}

/// Σ_{d|n} d·c_{n/d}·Ψ^{n/d}(x_d) for the weights c = [·]_g or 1 − g^·.
fn twisted_ghost<R: CoeffRing>(ring: &R, weights: impl Fn(usize) -> R::Elem, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let mut out = Vec::with_capacity(x.len());
    for n in 1..=x.len() {
        let mut acc = ring.zero();
        for d in divisors(n) {
            let a = &x[d - 1];
            if ring.is_zero(a) {
                continue;
            }
            let k = n / d;
            let t = ring.mul(&ring.mul_int(&ring.psi(k, a)?, &BigInt::from(d)), &weights(k));
            acc = ring.add(&acc, &t);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Solves Σ_{d|n} d·[n/d]·Ψ^{n/d}(z_d) = targets_n; qints[k] = [k].
fn solve_twisted<R: CoeffRing>(ring: &R, qints: &[R::Elem], targets: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let mut out: Vec<R::Elem> = Vec::with_capacity(targets.len());
    for (i, t) in targets.iter().enumerate() {
        let n = i + 1;
        let mut rest = t.clone();
        for d in divisors(n) {
            if d == n {
                break;
            }
            let z = &out[d - 1];
            if ring.is_zero(z) {
                continue;
            }
            let k = n / d;
            let s = ring.mul(&ring.mul_int(&ring.psi(k, z)?, &BigInt::from(d)), &qints[k]);
            rest = ring.sub(&rest, &s);
        }
        out.push(if n == 1 { rest } else { ring.div_int(&rest, &BigInt::from(n))? });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NecklaceVector<R: CoeffRing> {
    ctx: Arc<WittContext<R>>,
    coords: Vec<R::Elem>,
}

impl<R: CoeffRing> NecklaceVector<R> {
    pub fn new(ctx: &Arc<WittContext<R>>, coords: Vec<R::Elem>) -> Result<Self> {
        if !ctx.ring().has_psi() {
            return Err(Error::NoPsiStructure);
        }
        if coords.len() != ctx.trunc() {
            return Err(Error::InvalidContext(format!("expected {} coordinates, got {}", ctx.trunc(), coords.len())));
        }
        Ok(NecklaceVector { ctx: ctx.clone(), coords })
    }

    pub fn zero(ctx: &Arc<WittContext<R>>) -> Result<Self> {
        Self::new(ctx, vec![ctx.ring().zero(); ctx.trunc()])
    }

    /// The multiplicative identity, from Σ_{d|n} d(1 − g^{n/d})Ψ^{n/d}(E_d) = 1.
    pub fn unity(ctx: &Arc<WittContext<R>>) -> Result<Self> {
        let ring = ctx.ring();
        if !ring.has_psi() {
            return Err(Error::NoPsiStructure);
        }
        if ring.inverse(ctx.one_minus_g()).is_none() {
            return Err(Error::NotUnital);
        }
        let e = neck_unity_over_fractions(&ctx.deformation().as_zpoly(), ctx.trunc())?;
        let coords =
            e.iter().map(|x| ring.from_rational_function(x).map_err(|_| Error::NotUnital)).collect::<Result<_>>()?;
        Self::new(ctx, coords)
    }

    pub fn ctx(&self) -> &Arc<WittContext<R>> {
        &self.ctx
    }

    pub fn coords(&self) -> &[R::Elem] {
        &self.coords
    }

    pub fn format_coords(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.ctx.ring().format(c)).collect()
    }

    fn ring(&self) -> &R {
        self.ctx.ring()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if *self.ctx != *o.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn with_coords(&self, coords: Vec<R::Elem>) -> Self {
        NecklaceVector { ctx: self.ctx.clone(), coords }
    }

    /// φ: w_n = Σ_{d|n} d(1 − g^{n/d})Ψ^{n/d}(a_d).
    pub fn ghost(&self) -> Result<GhostVector<R>> {
        let c = twisted_ghost(self.ring(), |k| self.ctx.one_minus_gpow(k).clone(), &self.coords)?;
        self.ctx.ghost_vector(c)
    }

    /// φ_ab: w_n = Σ_{d|n} d[n/d]_g Ψ^{n/d}(a_d).
    pub fn ghost_ab(&self) -> Result<GhostVector<R>> {
        let c = twisted_ghost(self.ring(), |k| self.ctx.q_integer(k).clone(), &self.coords)?;
        self.ctx.ghost_vector(c)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let r = self.ring();
        Ok(self.with_coords(self.coords.iter().zip(&o.coords).map(|(a, b)| r.add(a, b)).collect()))
    }

    pub fn neg(&self) -> Self {
        self.with_coords(self.coords.iter().map(|a| self.ring().neg(a)).collect())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Product by the twisted recursion on torsion-free rings, by structure
    /// constants elsewhere.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        if !self.ring().is_torsion_free() {
            return self.mul_via_constants(o);
        }
        let r = self.ring();
        let ax = self.ghost_ab()?;
        let ay = o.ghost_ab()?;
        let targets: Vec<R::Elem> = ax
            .coords()
            .iter()
            .zip(ay.coords())
            .map(|(a, b)| r.mul(self.ctx.one_minus_g(), &r.mul(a, b)))
            .collect();
        Ok(self.with_coords(solve_twisted(r, self.ctx.qints(), &targets)?))
    }

    /// P_n = Σ_{i,j|n} c_n(i,j)·Ψ^{n/i}(x_i)·Ψ^{n/j}(y_j).
    pub fn mul_via_constants(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let r = self.ring();
        let g = self.ctx.deformation().as_zpoly();
        let n_max = self.ctx.trunc();
        let mu = MobiusTable::new(&g, n_max);
        let mut coords = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let divs = divisors(n);
            let px: Vec<R::Elem> = divs.iter().map(|&i| r.psi(n / i, &self.coords[i - 1])).collect::<Result<_>>()?;
            let py: Vec<R::Elem> = divs.iter().map(|&j| r.psi(n / j, &o.coords[j - 1])).collect::<Result<_>>()?;
            let mut acc = r.zero();
            for (a, &i) in divs.iter().enumerate() {
                if r.is_zero(&px[a]) {
                    continue;
                }
                for (b, &j) in divs.iter().enumerate() {
                    if r.is_zero(&py[b]) || n % lcm(i, j) != 0 {
                        continue;
                    }
                    let c = structure_constant(&g, &mu, n, i, j)?;
                    if c.is_zero() {
                        continue;
                    }
                    let t = r.mul(&r.from_zpoly(&c)?, &r.mul(&px[a], &py[b]));
                    acc = r.add(&acc, &t);
                }
            }
            coords.push(acc);
        }
        Ok(self.with_coords(coords))
    }

    /// Coordinate n is a_{n/r} when r | n, else 0.
    pub fn induce(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidContext("induction index must be positive".into()));
        }
        let z = self.ring().zero();
        Ok(self.with_coords(
            (1..=self.ctx.trunc()).map(|n| if n % r == 0 { self.coords[n / r - 1].clone() } else { z.clone() }).collect(),
        ))
    }

    fn restrict_target(&self, r: usize, trunc: usize) -> Result<Arc<WittContext<R>>> {
        if r == 0 {
            return Err(Error::InvalidContext("restriction index must be positive".into()));
        }
        if self.ctx.trunc() < trunc * r {
            return Err(Error::TruncationTooShort { need: trunc * r, have: self.ctx.trunc() });
        }
        self.ctx.derive(self.ctx.deformation().clone(), trunc)
    }

    /// R with φ(R)_n = φ(a)_{nr}, by the recursion
    /// n·R_n = φ_ab(a)_{nr} − Σ_{d|n, d<n} d[n/d]_g Ψ^{n/d}(R_d).
    /// Non-torsion-free rings with an integer deformation use the closed form.
    pub fn restrict(&self, r: usize, trunc: usize) -> Result<Self> {
        let dst = self.restrict_target(r, trunc)?;
        if !self.ring().is_torsion_free() {
            return self.restrict_closed_form(r, trunc);
        }
        let ab = self.ghost_ab()?;
        let targets: Vec<R::Elem> = (1..=trunc).map(|n| ab.coords()[n * r - 1].clone()).collect();
        let coords = solve_twisted(self.ring(), dst.qints(), &targets)?;
        Ok(NecklaceVector { ctx: dst, coords })
    }

    /// R_n = (1/n)Σ_{e|nr} e·(Σ_{d|(n, nr/e)} μ_m(d)[nr/(de)]_m)·Ψ^{nr/e}(a_e),
    /// for integer deformations; coefficients are certified integral.
    pub fn restrict_closed_form(&self, r: usize, trunc: usize) -> Result<Self> {
        let dst = self.restrict_target(r, trunc)?;
        let m = match self.ctx.deformation() {
            Deformation::Integer(m) => m.clone(),
            Deformation::Polynomial(_) => {
                return Err(Error::InvalidContext("closed-form restriction needs an integer deformation".into()))
            }
        };
        let ring = self.ring();
        let mg = ZPolynomial::constant(m.clone());
        let mu = MobiusTable::new(&mg, trunc);
        let qint = |k: usize| ZPolynomial::q_integer(k, &mg).constant_term();
        let mut coords = Vec::with_capacity(trunc);
        for n in 1..=trunc {
            let nr = n * r;
            let mut acc = ring.zero();
            for e in divisors(nr) {
                let mut inner = BigInt::from(0);
                for d in divisors(gcd(n, nr / e)) {
                    inner += mu.get(d).constant_term() * qint(nr / (d * e));
                }
                let c = inner * BigInt::from(e);
                let (q, rem) = (&c / BigInt::from(n), &c % BigInt::from(n));
                if rem != BigInt::from(0) {
                    return Err(Error::NotDivisible(format!("restriction coefficient {c} by {n}")));
                }
                let a = &self.coords[e - 1];
                if ring.is_zero(a) || q == BigInt::from(0) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul_int(&ring.psi(nr / e, a)?, &q));
            }
            coords.push(acc);
        }
        Ok(NecklaceVector { ctx: dst, coords })
    }

    /// The strict isomorphism onto the 2 − g context: φ^{2−g}(y) = φ^g(a),
    /// via n·y_n = −φ_ab^g(a)_n − Σ_{d|n, d<n} d[n/d]_{2−g}Ψ^{n/d}(y_d).
    pub fn transport_two_minus(&self) -> Result<Self> {
        if self.ctx.deformation().is_one() {
            return Err(Error::DegenerateDeformation);
        }
        if !self.ring().is_torsion_free() {
            return Err(Error::InvalidContext(format!(
                "necklace transport needs a torsion-free ring, got {}",
                self.ring().selector()
            )));
        }
        let dst = self.ctx.derive(self.ctx.deformation().two_minus(), self.ctx.trunc())?;
        let targets: Vec<R::Elem> = self.ghost_ab()?.coords().iter().map(|a| self.ring().neg(a)).collect();
        let coords = solve_twisted(self.ring(), dst.qints(), &targets)?;
        Ok(NecklaceVector { ctx: dst, coords })
    }
}

/// η(w)_n = (1/n)Σ_{d|n} f_d·Ψ^d(w_{n/d}), the inverse of the necklace ghost map.
/// Needs a Ψ-ring in which integers are invertible and f_d can be mapped.
pub fn eta_inverse<R: CoeffRing>(w: &GhostVector<R>) -> Result<NecklaceVector<R>> {
    let ctx = w.ctx();
    let ring = ctx.ring();
    if !ring.has_psi() {
        return Err(Error::NoPsiStructure);
    }
    if !ring.has_rational_division() {
        return Err(Error::RingLacksRationalDivision);
    }
    let f = f_coeffs(&ctx.deformation().as_zpoly(), ctx.trunc())?;
    let f: Vec<R::Elem> = f.iter().map(|x| ring.from_rational_function(x)).collect::<Result<_>>()?;
    let mut coords = Vec::with_capacity(ctx.trunc());
    for n in 1..=ctx.trunc() {
        let mut acc = ring.zero();
        for d in divisors(n) {
            acc = ring.add(&acc, &ring.mul(&f[d - 1], &ring.psi(d, &w.coords()[n / d - 1])?));
        }
        coords.push(ring.div_int(&acc, &BigInt::from(n))?);
    }
    NecklaceVector::new(ctx, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_zpoly;
    use crate::rings::{IntegerRing, PolyRing, ZMod};

    fn zq(s: &str) -> ZPolynomial {
        parse_zpoly(s).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn int_neck(m: i64, cs: &[i64]) -> NecklaceVector<IntegerRing> {
        let ctx = WittContext::new(IntegerRing, Deformation::int(m), cs.len()).unwrap();
        NecklaceVector::new(&ctx, ints(cs)).unwrap()
    }

    #[test]
    fn ghost_examples() {
        let ctx = WittContext::new(PolyRing, Deformation::poly(zq("q")), 2).unwrap();
        let a = NecklaceVector::new(&ctx, vec![zq("q"), zq("0")]).unwrap();
        assert_eq!(a.ghost().unwrap().coords(), &[zq("(1-q)*q"), zq("(1-q^2)*q^2")]);
        assert_eq!(int_neck(0, &[3, 5]).ghost().unwrap().coords(), &ints(&[3, 13])[..]);
    }

    #[test]
    fn product_examples() {
        let a = int_neck(0, &[1, 1]);
        assert_eq!(a.mul(&a).unwrap().coords(), &ints(&[1, 4])[..]);
        let b = int_neck(1, &[2, -3, 5, 1]);
        assert!(b.mul(&b).unwrap().coords().iter().all(|c| *c == BigInt::from(0)));
        let x = int_neck(-1, &[1, 2, 3, 4, 5, 6]);
        let y = int_neck(-1, &[2, -1, 0, 1, 3, -2]);
        assert_eq!(x.mul(&y).unwrap(), x.mul_via_constants(&y).unwrap());
    }

    #[test]
    fn mobius_examples() {
        let mu: Vec<BigInt> = (1..=12).map(|n| mobius(&BigInt::from(0), n)).collect();
        assert_eq!(mu, ints(&[1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]));
        for m in -2..=3i64 {
            let mb = BigInt::from(m);
            let qi = |k: u32| (0..k).map(|i| mb.pow(i)).sum::<BigInt>();
            assert_eq!(mobius(&mb, 4), qi(2) * qi(2) - qi(4));
            assert_eq!(mobius(&mb, 7), -qi(7));
        }
    }

    #[test]
    fn structure_constant_examples() {
        let q = zq("q");
        let mu = MobiusTable::new(&q, 12);
        // [i,j] = n: d(i,j) = ij(1-q)/n [n/i]_q [n/j]_q
        let d = structure_constant(&q, &mu, 6, 2, 3).unwrap();
        assert_eq!(d, zq("(1-q)*(1+q+q^2)*(1+q)"));
        let z = ZPolynomial::zero();
        let mu0 = MobiusTable::new(&z, 12);
        assert_eq!(structure_constant(&z, &mu0, 12, 4, 6).unwrap(), ZPolynomial::from_int(2));
        assert_eq!(structure_constant(&z, &mu0, 12, 2, 6).unwrap(), ZPolynomial::zero());
        let one = ZPolynomial::one();
        let mu1 = MobiusTable::new(&one, 12);
        assert!(structure_constant(&one, &mu1, 12, 4, 6).unwrap().is_zero());
    }

    #[test]
    fn f_and_eta() {
        let f = f_coeffs(&zq("q"), 12).unwrap();
        for (i, x) in f.iter().enumerate() {
            let mu = crate::arith::mobius(i + 1);
            assert_eq!(*x, QRationalFunction::from_int(mu).mul(&QRationalFunction::from_zpoly(&zq("1-q")).inv().unwrap()));
        }
        let f = f_coeffs(&zq("q^2+q"), 1).unwrap();
        assert_eq!(f[0], QRationalFunction::from_zpoly(&zq("1-q-q^2")).inv().unwrap());
        let ctx = WittContext::new(RationalFunctionField, Deformation::poly(zq("q^2+q")), 6).unwrap();
        let r = &RationalFunctionField;
        let a = NecklaceVector::new(&ctx, ["1", "q/2", "0", "-3", "1/(1+q)", "q^3"].iter().map(|s| r.parse(s).unwrap()).collect())
            .unwrap();
        assert_eq!(eta_inverse(&a.ghost().unwrap()).unwrap(), a);
    }

    #[test]
    fn unity_examples() {
        let ctx = WittContext::new(RationalFunctionField, Deformation::poly(zq("q")), 4).unwrap();
        let e = NecklaceVector::unity(&ctx).unwrap();
        let r = &RationalFunctionField;
        assert_eq!(e.coords(), &[r.parse("1/(1-q)").unwrap(), r.zero(), r.zero(), r.zero()]);
        let e0 = NecklaceVector::unity(&WittContext::new(IntegerRing, Deformation::int(0), 3).unwrap()).unwrap();
        assert_eq!(e0.coords(), &ints(&[1, 0, 0])[..]);
        let zq_ctx = WittContext::new(PolyRing, Deformation::poly(zq("q")), 3).unwrap();
        assert_eq!(NecklaceVector::unity(&zq_ctx), Err(Error::NotUnital));
        // a deformation with g(q)^2 != g(q^2): the unit is not concentrated in degree 1
        let ctx = WittContext::new(RationalFunctionField, Deformation::poly(zq("q^2+q")), 4).unwrap();
        let e = NecklaceVector::unity(&ctx).unwrap();
        let a = NecklaceVector::new(&ctx, ["1", "q", "-2", "q^2+3"].iter().map(|s| r.parse(s).unwrap()).collect()).unwrap();
        assert_eq!(e.mul(&a).unwrap(), a);
        assert!(!e.coords()[1].is_zero());
    }

    #[test]
    fn restrict_and_induce() {
        let a = int_neck(0, &[3, 5]);
        assert_eq!(a.restrict(2, 1).unwrap().coords(), &ints(&[13])[..]);
        assert_eq!(a.restrict_closed_form(2, 1).unwrap().coords(), &ints(&[13])[..]);
        let b = int_neck(2, &[1, -2, 3, 0, 4, 1, 2, 5]);
        assert_eq!(b.restrict(2, 4).unwrap(), b.restrict_closed_form(2, 4).unwrap());
        assert_eq!(b.induce(1).unwrap(), b);
        assert_eq!(b.induce(2).unwrap().ghost().unwrap().coords()[5], b.ghost().unwrap().coords()[2].clone() * 2);
    }

    #[test]
    fn transport_examples() {
        let a = int_neck(0, &[3, -1, 2, 7]);
        let y = a.transport_two_minus().unwrap();
        assert_eq!(y.coords()[0], BigInt::from(-3));
        assert_eq!(y.ghost().unwrap().coords(), a.ghost().unwrap().coords());
        assert_eq!(y.transport_two_minus().unwrap(), a);
        assert_eq!(int_neck(1, &[1]).transport_two_minus(), Err(Error::DegenerateDeformation));
    }

    #[test]
    fn zmod_product_uses_constants() {
        let r = ZMod::new(9).unwrap();
        let ctx = WittContext::new(r, Deformation::int(2), 6).unwrap();
        let a = NecklaceVector::new(&ctx, vec![1, 4, 7, 2, 0, 8]).unwrap();
        let b = NecklaceVector::new(&ctx, vec![3, 3, 1, 5, 6, 2]).unwrap();
        let za = int_neck(2, &[1, 4, 7, 2, 0, 8]);
        let zb = int_neck(2, &[3, 3, 1, 5, 6, 2]);
        let expect: Vec<u64> = za.mul(&zb).unwrap().coords().iter().map(|c| r.from_int(c)).collect();
        assert_eq!(a.mul(&b).unwrap().coords(), &expect[..]);
    }
}
