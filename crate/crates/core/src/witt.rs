//! Truncated deformed Witt vectors W̄^g (polynomial deformation g(q)) and W^m
//! (integer deformation m): ring operations, ghost maps, unity, transports,
//! induction and restriction, and the universal polynomials S_n, P_n, I_n.
//!
//! Every ring operation is computed through the abelianized ghost relation
//! Σ_{d|n} d·[n/d]_g·z_d^{n/d} = T_n, which only divides by n. On torsion-free
//! rings that division is done directly and certified; other rings evaluate
//! universal polynomials generated by the same relation over ℤ[g][x, y].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::exactalg::{MultiPolynomial, QPolynomial, QRationalFunction, Var, ZMultiPolynomial, ZPolynomial};
use crate::rings::{CoeffRing, RationalFunctionField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Deformation {
    /// g(q) with integer coefficients.
    Polynomial(ZPolynomial),
    /// m, for rings without a q.
    Integer(BigInt),
}

impl Deformation {
    pub fn poly(g: ZPolynomial) -> Self {
        Deformation::Polynomial(g)
    }

    pub fn int(m: i64) -> Self {
        Deformation::Integer(BigInt::from(m))
    }

    /// g as a polynomial in q; constant for an integer deformation.
    pub fn as_zpoly(&self) -> ZPolynomial {
        match self {
            Deformation::Polynomial(g) => g.clone(),
            Deformation::Integer(m) => ZPolynomial::constant(m.clone()),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_zpoly().is_one()
    }

    /// A constant deformation of the same kind.
    pub fn constant_like(&self, c: i64) -> Self {
        match self {
            Deformation::Polynomial(_) => Deformation::Polynomial(ZPolynomial::from_int(c)),
            Deformation::Integer(_) => Deformation::int(c),
        }
    }

    pub fn two_minus(&self) -> Self {
        match self {
            Deformation::Polynomial(g) => Deformation::Polynomial(&ZPolynomial::from_int(2) - g),
            Deformation::Integer(m) => Deformation::Integer(BigInt::from(2) - m),
        }
    }

    pub fn image<R: CoeffRing>(&self, ring: &R) -> Result<R::Elem> {
        match self {
            Deformation::Polynomial(g) => ring.from_zpoly(g),
            Deformation::Integer(m) => Ok(ring.from_int(m)),
        }
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deformation::Polynomial(g) => write!(f, "g={g}"),
            Deformation::Integer(m) => write!(f, "m={m}"),
        }
    }
}

/// How ring operations reach their coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComputePath {
    /// Recursion in the ring itself; divisions by n are certified exact.
    Ghost,
    /// Evaluation of cached universal polynomials.
    Universal,
}

/// Deformation, truncation level N and coefficient ring, with the ring images
/// of g, 1 − g^k and [k]_g cached for k ≤ N.
#[derive(Clone, Debug)]
pub struct WittContext<R: CoeffRing> {
    deformation: Deformation,
    trunc: usize,
    ring: R,
    path: ComputePath,
    g: R::Elem,
    one_minus_gpow: Vec<R::Elem>,
    qints: Vec<R::Elem>,
}

impl<R: CoeffRing> PartialEq for WittContext<R> {
    fn eq(&self, o: &Self) -> bool {
        self.deformation == o.deformation && self.trunc == o.trunc && self.ring == o.ring && self.path == o.path
    }
}

impl<R: CoeffRing> WittContext<R> {
    /// Picks the ghost path on torsion-free rings and the universal path otherwise.
    pub fn new(ring: R, deformation: Deformation, trunc: usize) -> Result<Arc<Self>> {
        let path = if ring.is_torsion_free() { ComputePath::Ghost } else { ComputePath::Universal };
        Self::with_path(ring, deformation, trunc, path)
    }

    pub fn with_path(ring: R, deformation: Deformation, trunc: usize, path: ComputePath) -> Result<Arc<Self>> {
        if trunc == 0 {
            return Err(Error::InvalidContext("truncation level must be positive".into()));
        }
        let has_q = ring.q_image().is_some();
        match &deformation {
            Deformation::Integer(_) if has_q => {
                return Err(Error::InvalidContext(format!(
                    "integer deformation needs a ring without q, got {}",
                    ring.selector()
                )))
            }
            Deformation::Polynomial(_) if !has_q => {
                return Err(Error::InvalidContext(format!(
                    "polynomial deformation needs a ring with q, got {}",
                    ring.selector()
                )))
            }
            _ => {}
        }
        if path == ComputePath::Ghost && !ring.is_torsion_free() {
            return Err(Error::InvalidContext(format!(
                "{} is not torsion-free; only the universal-polynomial path is available",
                ring.selector()
            )));
        }
        let g = deformation.image(&ring)?;
        let mut one_minus_gpow = vec![ring.zero()];
        let mut qints = vec![ring.zero()];
        let mut gp = ring.one();
        for _ in 1..=trunc {
            qints.push(ring.add(qints.last().unwrap(), &gp));
            gp = ring.mul(&gp, &g);
            one_minus_gpow.push(ring.sub(&ring.one(), &gp));
        }
        Ok(Arc::new(WittContext { deformation, trunc, ring, path, g, one_minus_gpow, qints }))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn path(&self) -> ComputePath {
        self.path
    }

    /// The image of g (or m) in the ring.
    pub fn g(&self) -> &R::Elem {
        &self.g
    }

    /// 1 − g^k for 1 ≤ k ≤ N.
    pub fn one_minus_gpow(&self, k: usize) -> &R::Elem {
        &self.one_minus_gpow[k]
    }

    pub fn one_minus_g(&self) -> &R::Elem {
        &self.one_minus_gpow[1]
    }

    /// [k]_g for 0 ≤ k ≤ N.
    pub fn q_integer(&self, k: usize) -> &R::Elem {
        &self.qints[k]
    }

    pub(crate) fn qints(&self) -> &[R::Elem] {
        &self.qints
    }

    /// Same ring and path with a different deformation or truncation.
    pub fn derive(&self, deformation: Deformation, trunc: usize) -> Result<Arc<Self>> {
        Self::with_path(self.ring.clone(), deformation, trunc, self.path)
    }

    pub fn vector(self: &Arc<Self>, coords: Vec<R::Elem>) -> Result<WittVector<R>> {
        if coords.len() != self.trunc {
            return Err(Error::InvalidContext(format!(
                "expected {} coordinates, got {}",
                self.trunc,
                coords.len()
            )));
        }
        Ok(WittVector { ctx: self.clone(), coords })
    }

    pub fn zero(self: &Arc<Self>) -> WittVector<R> {
        WittVector { ctx: self.clone(), coords: vec![self.ring.zero(); self.trunc] }
    }

    pub fn ghost_vector(self: &Arc<Self>, coords: Vec<R::Elem>) -> Result<GhostVector<R>> {
        if coords.len() != self.trunc {
            return Err(Error::InvalidContext(format!(
                "expected {} ghost components, got {}",
                self.trunc,
                coords.len()
            )));
        }
        Ok(GhostVector { ctx: self.clone(), coords })
    }

    /// The multiplicative identity E, from Σ_{d|n} d(1 − g^{n/d}) E_d^{n/d} = 1.
    pub fn unity(self: &Arc<Self>) -> Result<WittVector<R>> {
        if self.ring.inverse(self.one_minus_g()).is_none() {
            return Err(Error::NotUnital);
        }
        let e = unity_over_fractions(&self.deformation.as_zpoly(), self.trunc)?;
        let coords = e
            .iter()
            .map(|x| self.ring.from_rational_function(x).map_err(|_| Error::NotUnital))
            .collect::<Result<Vec<_>>>()?;
        self.vector(coords)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self != o {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

/// E_1..E_N in ℚ(q) for deformation g, with (1 − g)^n E_n certified in ℤ[q].
pub fn unity_over_fractions(g: &ZPolynomial, n: usize) -> Result<Vec<QRationalFunction>> {
    let ctx = WittContext::new(RationalFunctionField, Deformation::poly(g.clone()), n)?;
    let r = &RationalFunctionField;
    let inv = r.inverse(ctx.one_minus_g()).ok_or(Error::NotUnital)?;
    let targets = vec![inv; n];
    let e = solve_abelian(r, ctx.qints(), &targets)?;
    let one_minus_g = (&ZPolynomial::one() - g).to_q();
    let mut scale = QRationalFunction::one();
    for (i, x) in e.iter().enumerate() {
        scale = scale.mul(&QRationalFunction::from_poly(one_minus_g.clone()));
        let c = x.mul(&scale);
        if !c.denom().is_one() || !c.numer().is_integral() {
            return Err(Error::IntegralityViolation(format!("(1-g)^{} E_{} = {c}", i + 1, i + 1)));
        }
    }
    Ok(e)
}

/// Lazily extended powers x^1, x^2, … of a list of bases.
pub(crate) struct Powers<'a, R: CoeffRing> {
    ring: &'a R,
    table: Vec<Vec<R::Elem>>,
}

impl<'a, R: CoeffRing> Powers<'a, R> {
    pub(crate) fn new(ring: &'a R) -> Self {
        Powers { ring, table: Vec::new() }
    }

    pub(crate) fn from_bases(ring: &'a R, bases: &[R::Elem]) -> Self {
        Powers { ring, table: bases.iter().map(|b| vec![b.clone()]).collect() }
    }

    pub(crate) fn push(&mut self, base: R::Elem) {
        self.table.push(vec![base]);
    }

    /// bases[i]^e for e ≥ 1.
    pub(crate) fn get(&mut self, i: usize, e: usize) -> &R::Elem {
        let row = &mut self.table[i];
        while row.len() < e {
            let next = self.ring.mul(row.last().unwrap(), &row[0]);
            row.push(next);
        }
        &row[e - 1]
    }
}

fn scaled<R: CoeffRing>(ring: &R, x: &R::Elem, d: usize, c: &R::Elem, unit: bool) -> R::Elem {
    let y = if d == 1 { x.clone() } else { ring.mul_int(x, &BigInt::from(d)) };
    if unit {
        y
    } else {
        ring.mul(&y, c)
    }
}

/// Σ_{d|n} d·[n/d]·x_d^{n/d}; `pows` holds the coordinates x_1, x_2, ….
fn abelian_ghost_at<R: CoeffRing>(ring: &R, qints: &[R::Elem], pows: &mut Powers<R>, n: usize) -> R::Elem {
    let mut acc = ring.zero();
    for d in divisors(n) {
        let k = n / d;
        let p = pows.get(d - 1, k);
        if ring.is_zero(p) {
            continue;
        }
        acc = ring.add(&acc, &scaled(ring, p, d, &qints[k], k == 1));
    }
    acc
}

pub(crate) fn abelian_ghost<R: CoeffRing>(ring: &R, qints: &[R::Elem], x: &[R::Elem]) -> Vec<R::Elem> {
    let mut pows = Powers::from_bases(ring, x);
    (1..=x.len()).map(|n| abelian_ghost_at(ring, qints, &mut pows, n)).collect()
}

/// Solves Σ_{d|n} d·[n/d]·z_d^{n/d} = targets_n for n = 1..len; qints[k] = [k].
pub(crate) fn solve_abelian<R: CoeffRing>(ring: &R, qints: &[R::Elem], targets: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let mut pows = Powers::new(ring);
    let mut out = Vec::with_capacity(targets.len());
    for (i, t) in targets.iter().enumerate() {
        let n = i + 1;
        let mut rest = t.clone();
        for d in divisors(n) {
            if d == n {
                break;
            }
            let k = n / d;
            let p = pows.get(d - 1, k);
            if !ring.is_zero(p) {
                rest = ring.sub(&rest, &scaled(ring, p, d, &qints[k], false));
            }
        }
        let z = if n == 1 { rest } else { ring.div_int(&rest, &BigInt::from(n))? };
        pows.push(z.clone());
        out.push(z);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Add,
    Mul,
    Neg,
    TwoMinus,
    ToH(i64),
    Restrict(usize),
}

/// Abelian-ghost targets of an operation, for output indices 1..=n, given the
/// source deformation image g and source [k]_g (long enough for the op).
fn op_targets<R: CoeffRing>(
    ring: &R,
    one_minus_g: &R::Elem,
    qints: &[R::Elem],
    op: Op,
    x: &[R::Elem],
    y: Option<&[R::Elem]>,
    n: usize,
) -> Vec<R::Elem> {
    let mut px = Powers::from_bases(ring, x);
    match op {
        Op::Restrict(r) => (1..=n).map(|k| abelian_ghost_at(ring, qints, &mut px, k * r)).collect(),
        _ => {
            let ax: Vec<R::Elem> = (1..=n).map(|k| abelian_ghost_at(ring, qints, &mut px, k)).collect();
            match op {
                Op::Add => {
                    let ay = abelian_ghost(ring, qints, &y.unwrap()[..n]);
                    ax.iter().zip(&ay).map(|(a, b)| ring.add(a, b)).collect()
                }
                Op::Mul => {
                    let ay = abelian_ghost(ring, qints, &y.unwrap()[..n]);
                    ax.iter().zip(&ay).map(|(a, b)| ring.mul(one_minus_g, &ring.mul(a, b))).collect()
                }
                Op::Neg | Op::TwoMinus => ax.iter().map(|a| ring.neg(a)).collect(),
                // divide by 1 − h, which is ±1
                Op::ToH(h) => ax
                    .iter()
                    .map(|a| {
                        let v = ring.mul(one_minus_g, a);
                        if h == 2 {
                            ring.neg(&v)
                        } else {
                            v
                        }
                    })
                    .collect(),
                Op::Restrict(_) => unreachable!(),
            }
        }
    }
}

/// ℤ[g][x_d, y_d] with g carried as the coefficient variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
struct UniversalRing;

impl CoeffRing for UniversalRing {
    type Elem = ZMultiPolynomial;

    fn selector(&self) -> String {
        "Universal".into()
    }
    fn zero(&self) -> ZMultiPolynomial {
        ZMultiPolynomial::zero()
    }
    fn one(&self) -> ZMultiPolynomial {
        ZMultiPolynomial::constant(ZPolynomial::one())
    }
    fn from_int(&self, n: &BigInt) -> ZMultiPolynomial {
        ZMultiPolynomial::constant(ZPolynomial::constant(n.clone()))
    }
    fn add(&self, a: &ZMultiPolynomial, b: &ZMultiPolynomial) -> ZMultiPolynomial {
        a.add(b)
    }
    fn sub(&self, a: &ZMultiPolynomial, b: &ZMultiPolynomial) -> ZMultiPolynomial {
        a.sub(b)
    }
    fn neg(&self, a: &ZMultiPolynomial) -> ZMultiPolynomial {
        a.neg()
    }
    fn mul(&self, a: &ZMultiPolynomial, b: &ZMultiPolynomial) -> ZMultiPolynomial {
        a.mul(b)
    }
    fn mul_int(&self, a: &ZMultiPolynomial, n: &BigInt) -> ZMultiPolynomial {
        a.scale(&ZPolynomial::constant(n.clone()))
    }
    fn is_zero(&self, a: &ZMultiPolynomial) -> bool {
        a.is_zero()
    }
    fn q_image(&self) -> Option<ZMultiPolynomial> {
        Some(ZMultiPolynomial::constant(ZPolynomial::q()))
    }
    fn has_psi(&self) -> bool {
        false
    }
    fn psi(&self, _n: usize, _x: &ZMultiPolynomial) -> Result<ZMultiPolynomial> {
        Err(Error::NoPsiStructure)
    }
    fn is_torsion_free(&self) -> bool {
        true
    }
    fn has_rational_division(&self) -> bool {
        false
    }
    fn div_int(&self, x: &ZMultiPolynomial, d: &BigInt) -> Result<ZMultiPolynomial> {
        x.div_scalar_exact(d)
            .ok_or_else(|| Error::IntegralityViolation(format!("universal polynomial not divisible by {d}")))
    }
    fn div_exact(&self, _x: &ZMultiPolynomial, _d: &ZMultiPolynomial) -> Result<ZMultiPolynomial> {
        Err(Error::NotDivisible("universal polynomials divide by integers only".into()))
    }
    fn inverse(&self, x: &ZMultiPolynomial) -> Option<ZMultiPolynomial> {
        let minus_one = self.neg(&self.one());
        (*x == self.one() || *x == minus_one).then(|| x.clone())
    }
    fn format(&self, x: &ZMultiPolynomial) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<ZMultiPolynomial> {
        Err(Error::Parse(format!("cannot parse universal polynomial `{s}`")))
    }
}

fn universal_qints(g: &ZPolynomial, len: usize) -> Vec<ZMultiPolynomial> {
    (0..=len).map(|k| ZMultiPolynomial::constant(ZPolynomial::q_integer(k, g))).collect()
}

fn generate_universal(op: Op, n: usize) -> Result<Vec<ZMultiPolynomial>> {
    let u = &UniversalRing;
    let g = ZPolynomial::q();
    let span = match op {
        Op::Restrict(r) => n * r,
        _ => n,
    };
    let src_q = universal_qints(&g, span);
    let one_minus_g = ZMultiPolynomial::constant(&ZPolynomial::one() - &g);
    let xs: Vec<ZMultiPolynomial> = (1..=span).map(|d| ZMultiPolynomial::var(Var::x(d as u32))).collect();
    let ys: Vec<ZMultiPolynomial> = (1..=span).map(|d| ZMultiPolynomial::var(Var::y(d as u32))).collect();
    let targets = op_targets(u, &one_minus_g, &src_q, op, &xs, Some(&ys), n);
    let dst_q = match op {
        Op::TwoMinus => universal_qints(&(&ZPolynomial::from_int(2) - &g), n),
        Op::ToH(h) => universal_qints(&ZPolynomial::from_int(h), n),
        _ => src_q,
    };
    solve_abelian(u, &dst_q, &targets)
}

type UniversalCache = Mutex<HashMap<Op, Arc<Vec<ZMultiPolynomial>>>>;

fn universal_cache() -> &'static UniversalCache {
    static CACHE: OnceLock<UniversalCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Universal polynomials of `op` for indices 1..=n, generated once per process.
/// Concurrent generators may race; generation is deterministic, so whichever
/// result is published is the same.
fn universal(op: Op, n: usize) -> Result<Arc<Vec<ZMultiPolynomial>>> {
    if let Some(v) = universal_cache().lock().unwrap().get(&op) {
        if v.len() >= n {
            return Ok(v.clone());
        }
    }
    let fresh = Arc::new(generate_universal(op, n)?);
    let mut cache = universal_cache().lock().unwrap();
    let entry = cache.entry(op).or_insert_with(|| fresh.clone());
    if entry.len() < fresh.len() {
        *entry = fresh;
    }
    Ok(entry.clone())
}

/// S_n, P_n, I_n in ℤ[g][x_d, y_d], the coefficient variable standing for g.
/// Every division by n is checked exact; failure raises IntegralityViolation.
pub fn generic_defining_polys(n: usize) -> Result<(ZMultiPolynomial, ZMultiPolynomial, ZMultiPolynomial)> {
    if n == 0 {
        return Err(Error::InvalidContext("index must be positive".into()));
    }
    let s = universal(Op::Add, n)?;
    let p = universal(Op::Mul, n)?;
    let i = universal(Op::Neg, n)?;
    Ok((s[n - 1].clone(), p[n - 1].clone(), i[n - 1].clone()))
}

/// S_n, P_n, I_n with g specialized to the polynomial `g` in q.
pub fn gen_defining_polys(n: usize, g: &QPolynomial) -> Result<(MultiPolynomial, MultiPolynomial, MultiPolynomial)> {
    let (s, p, i) = generic_defining_polys(n)?;
    let sub = |m: &ZMultiPolynomial| m.to_q().map_coeffs(|c| c.compose(g));
    Ok((sub(&s), sub(&p), sub(&i)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WittVector<R: CoeffRing> {
    ctx: Arc<WittContext<R>>,
    coords: Vec<R::Elem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GhostVector<R: CoeffRing> {
    ctx: Arc<WittContext<R>>,
    coords: Vec<R::Elem>,
}

impl<R: CoeffRing> WittVector<R> {
    pub fn ctx(&self) -> &Arc<WittContext<R>> {
        &self.ctx
    }

    /// a_1..a_N, index 0 holding a_1.
    pub fn coords(&self) -> &[R::Elem] {
        &self.coords
    }

    pub fn format_coords(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.ctx.ring.format(c)).collect()
    }

    /// Φ: w_n = Σ_{d|n} d(1 − g^{n/d}) a_d^{n/d}.
    pub fn ghost(&self) -> GhostVector<R> {
        let ctx = &self.ctx;
        let r = &ctx.ring;
        let mut pows = Powers::from_bases(r, &self.coords);
        let coords = (1..=ctx.trunc)
            .map(|n| {
                let mut acc = r.zero();
                for d in divisors(n) {
                    let k = n / d;
                    let p = pows.get(d - 1, k);
                    if !r.is_zero(p) {
                        acc = r.add(&acc, &scaled(r, p, d, &ctx.one_minus_gpow[k], false));
                    }
                }
                acc
            })
            .collect();
        GhostVector { ctx: ctx.clone(), coords }
    }

    /// Φ_ab: w_n = Σ_{d|n} d·[n/d]_g·a_d^{n/d}.
    pub fn ghost_ab(&self) -> GhostVector<R> {
        let coords = abelian_ghost(&self.ctx.ring, &self.ctx.qints, &self.coords);
        GhostVector { ctx: self.ctx.clone(), coords }
    }

    fn run(&self, op: Op, other: Option<&Self>, dst: &Arc<WittContext<R>>) -> Result<Self> {
        let ctx = &self.ctx;
        let r = &ctx.ring;
        let n = dst.trunc;
        let coords = match ctx.path {
            ComputePath::Ghost => {
                let targets = op_targets(
                    r,
                    ctx.one_minus_g(),
                    &ctx.qints,
                    op,
                    &self.coords,
                    other.map(|o| &o.coords[..]),
                    n,
                );
                solve_abelian(r, &dst.qints, &targets)?
            }
            ComputePath::Universal => {
                let polys = universal(op, n)?;
                let lookup = |v: Var| {
                    let src = match v.kind {
                        crate::exactalg::VarKind::X => &self.coords,
                        crate::exactalg::VarKind::Y => &other?.coords,
                    };
                    src.get(v.index as usize - 1).cloned()
                };
                polys[..n].iter().map(|p| p.evaluate(r, Some(&ctx.g), lookup)).collect::<Result<Vec<_>>>()?
            }
        };
        Ok(WittVector { ctx: dst.clone(), coords })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        self.run(Op::Add, Some(o), &self.ctx)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        self.run(Op::Mul, Some(o), &self.ctx)
    }

    pub fn neg(&self) -> Result<Self> {
        self.run(Op::Neg, None, &self.ctx)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg()?)
    }

    /// The strict isomorphism W̄^g → W̄^{2−g}: Φ^{2−g}(y) = Φ^g(a).
    pub fn transport_two_minus_g(&self) -> Result<Self> {
        if self.ctx.deformation.is_one() {
            return Err(Error::DegenerateDeformation);
        }
        let dst = self.ctx.derive(self.ctx.deformation.two_minus(), self.ctx.trunc)?;
        self.run(Op::TwoMinus, None, &dst)
    }

    /// T in the deformation h ∈ {0, 2} with Φ^h(T) = Φ^g(a).
    pub fn transport_to_h(&self, h: i64) -> Result<Self> {
        if h != 0 && h != 2 {
            return Err(Error::InvalidContext(format!("target deformation must be 0 or 2, got {h}")));
        }
        if self.ctx.deformation.is_one() {
            return Err(Error::DegenerateDeformation);
        }
        let dst = self.ctx.derive(self.ctx.deformation.constant_like(h), self.ctx.trunc)?;
        self.run(Op::ToH(h), None, &dst)
    }

    /// Verschiebung-type map: coordinate n is a_{n/r} when r | n, else 0.
    pub fn induce(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidContext("induction index must be positive".into()));
        }
        let ring = &self.ctx.ring;
        let coords =
            (1..=self.ctx.trunc).map(|n| if n % r == 0 { self.coords[n / r - 1].clone() } else { ring.zero() }).collect();
        Ok(WittVector { ctx: self.ctx.clone(), coords })
    }

    /// Frobenius-type map to truncation `trunc`: Φ(R)_n = Φ(a)_{nr}. Needs
    /// input truncation at least trunc·r.
    pub fn restrict(&self, r: usize, trunc: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidContext("restriction index must be positive".into()));
        }
        if self.ctx.trunc < trunc * r {
            return Err(Error::TruncationTooShort { need: trunc * r, have: self.ctx.trunc });
        }
        let dst = self.ctx.derive(self.ctx.deformation.clone(), trunc)?;
        if r == 1 {
            return Ok(WittVector { ctx: dst, coords: self.coords[..trunc].to_vec() });
        }
        self.run(Op::Restrict(r), None, &dst)
    }

    /// The first `trunc` coordinates in the context truncated at that level.
    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        if trunc > self.ctx.trunc {
            return Err(Error::TruncationTooShort { need: trunc, have: self.ctx.trunc });
        }
        let dst = self.ctx.derive(self.ctx.deformation.clone(), trunc)?;
        Ok(WittVector { ctx: dst, coords: self.coords[..trunc].to_vec() })
    }
}

impl<R: CoeffRing> GhostVector<R> {
    pub fn ctx(&self) -> &Arc<WittContext<R>> {
        &self.ctx
    }

    pub fn coords(&self) -> &[R::Elem] {
        &self.coords
    }

    pub fn format_coords(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.ctx.ring.format(c)).collect()
    }

    fn zip(&self, o: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| f(a, b)).collect();
        Ok(GhostVector { ctx: self.ctx.clone(), coords })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| self.ctx.ring.add(a, b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| self.ctx.ring.sub(a, b))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| self.ctx.ring.mul(a, b))
    }

    pub fn neg(&self) -> Self {
        let coords = self.coords.iter().map(|a| self.ctx.ring.neg(a)).collect();
        GhostVector { ctx: self.ctx.clone(), coords }
    }

    /// The unique a with Φ(a) = w, solved by n(1 − g)a_n = w_n − Σ_{d<n} d(1 − g^{n/d})a_d^{n/d}.
    pub fn unghost(&self) -> Result<WittVector<R>> {
        let ctx = &self.ctx;
        if ctx.deformation.is_one() {
            return Err(Error::DegenerateDeformation);
        }
        if !ctx.ring.is_torsion_free() {
            return Err(Error::InvalidContext(format!("unghost needs a torsion-free ring, got {}", ctx.ring.selector())));
        }
        let r = &ctx.ring;
        let mut pows = Powers::new(r);
        let mut coords = Vec::with_capacity(ctx.trunc);
        for (i, w) in self.coords.iter().enumerate() {
            let n = i + 1;
            let mut rest = w.clone();
            for d in divisors(n) {
                if d == n {
                    break;
                }
                let k = n / d;
                let p = pows.get(d - 1, k);
                if !r.is_zero(p) {
                    rest = r.sub(&rest, &scaled(r, p, d, &ctx.one_minus_gpow[k], false));
                }
            }
            let a = r.div_exact(&r.div_int(&rest, &BigInt::from(n))?, ctx.one_minus_g())?;
            pows.push(a.clone());
            coords.push(a);
        }
        Ok(WittVector { ctx: ctx.clone(), coords })
    }
}

/// Evaluates a universal polynomial at integer-valued x, y and g; a plain
/// oracle for the universal path that never touches the coefficient ring.
pub fn evaluate_over_integers(p: &ZMultiPolynomial, g: &BigInt, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
    use crate::rings::IntegerRing;
    p.evaluate(&IntegerRing, Some(g), |v| {
        let src = match v.kind {
            crate::exactalg::VarKind::X => x,
            crate::exactalg::VarKind::Y => y,
        };
        src.get(v.index as usize - 1).cloned()
    })
}
