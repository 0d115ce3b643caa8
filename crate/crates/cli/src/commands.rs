use std::sync::Arc;

use clap::ValueEnum;
use num_bigint::BigInt;
use qwitt::bridges::{tau, tau_inv, teich_sequence};
use qwitt::exactalg::parse::{parse_integer, parse_zpoly};
use qwitt::exactalg::{MultiPolynomial, TruncatedSeries, ZMultiPolynomial};
use qwitt::lambdaf::{kimlee_expand, theta, theta_inv, upsilon, LambdaElement};
use qwitt::necklace::{eta_inverse, mobius, structure_constant, MobiusTable, NecklaceVector};
use qwitt::rings::{CoeffRing, IntegerRing, PolyRing, RationalField, RationalFunctionField, ZMod};
use qwitt::symfun::{Alphabet, SymPoly};
use qwitt::witt::{gen_defining_polys, generic_defining_polys, Deformation, WittContext};
use qwitt::{Error, Result};
use serde_json::{json, Value};

use crate::doc::{integer_value, read_input, scalar_text, Doc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WittOp {
    Add,
    Mul,
    Neg,
    Ghost,
    Unghost,
    Unity,
    Transport,
    Induce,
    Restrict,
    GenPolys,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NeckOp {
    Mul,
    Ghost,
    Eta,
    Mobius,
    Coeff,
    Induce,
    Restrict,
    Unity,
    Transport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesOp {
    Theta,
    ThetaInv,
    Upsilon,
    Kimlee,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BridgeOp {
    Tau,
    TauInv,
    Teich,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymOp {
    U,
    V,
    Hq,
    Gq,
    Qn,
}

/// The global flags, shared by every subcommand.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Opts {
    /// Coefficient ring: Z, Q, Zq, Qq or Zmod:<k>
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Deformation polynomial in q
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Integer deformation
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// File path or inline JSON
    #[arg(long = "in", global = true, allow_hyphen_values = true)]
    pub input: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub in2: Option<String>,
    #[arg(long, global = true)]
    pub r: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub h: Option<i64>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub i: Option<usize>,
    #[arg(long, global = true)]
    pub j: Option<usize>,
    #[arg(long, global = true)]
    pub vars: Option<usize>,
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("missing --{flag}"))
}

/// Resolved ring, deformation and truncation for one input.
struct Setup {
    ring: String,
    deformation: Deformation,
    trunc: usize,
    coords: Vec<String>,
}

impl Opts {
    fn flag_deformation(&self) -> Result<Option<Deformation>> {
        match (&self.g, &self.m) {
            (Some(_), Some(_)) => Err(Error::Parse("give only one of --g and --m".into())),
            (Some(g), None) => Ok(Some(Deformation::poly(parse_zpoly(g)?))),
            (None, Some(m)) => Ok(Some(Deformation::Integer(parse_integer(m)?))),
            (None, None) => Ok(None),
        }
    }

    fn doc(&self, arg: Option<&String>, flag: &str) -> Result<Doc> {
        Doc::from_value(&read_input(arg.ok_or_else(|| missing(flag))?)?)
    }

    /// Flags win over document fields; a series carries one more entry than
    /// its truncation.
    fn setup(&self, doc: Option<&Doc>, series: bool) -> Result<Setup> {
        let empty = Doc::default();
        let doc = doc.unwrap_or(&empty);
        let deformation =
            self.flag_deformation()?.or_else(|| doc.deformation.clone()).ok_or_else(|| missing("g or --m"))?;
        let ring = self.ring.clone().or_else(|| doc.ring.clone()).unwrap_or_else(|| {
            match deformation {
                Deformation::Polynomial(_) => "Zq",
                Deformation::Integer(_) => "Z",
            }
            .to_string()
        });
        let from_len = if doc.coords.is_empty() {
            None
        } else if series {
            Some(doc.coords.len() - 1)
        } else {
            Some(doc.coords.len())
        };
        let trunc = self.trunc.or(doc.trunc).or(from_len).ok_or_else(|| missing("trunc"))?;
        Ok(Setup { ring, deformation, trunc, coords: doc.coords.clone() })
    }
}

macro_rules! on_ring {
    ($sel:expr, $f:ident ( $($arg:expr),* )) => {
        match $sel.as_str() {
            "Z" => $f(IntegerRing, $($arg),*),
            "Q" => $f(RationalField, $($arg),*),
            "Zq" => $f(PolyRing, $($arg),*),
            "Qq" => $f(RationalFunctionField, $($arg),*),
            s => match s.strip_prefix("Zmod:").map(str::parse::<u64>) {
                Some(Ok(k)) => $f(ZMod::new(k)?, $($arg),*),
                _ => Err(Error::Parse(format!("unknown ring {s}"))),
            },
        }
    };
}

fn context<R: CoeffRing>(ring: R, s: &Setup) -> Result<Arc<WittContext<R>>> {
    WittContext::new(ring, s.deformation.clone(), s.trunc)
}

fn elems<R: CoeffRing>(ring: &R, coords: &[String]) -> Result<Vec<R::Elem>> {
    coords.iter().map(|c| ring.parse(c)).collect()
}

fn vector_doc<R: CoeffRing>(ctx: &WittContext<R>, coords: Vec<String>, kind: &str) -> Value {
    Doc {
        ring: Some(ctx.ring().selector()),
        deformation: Some(ctx.deformation().clone()),
        trunc: Some(ctx.trunc()),
        coords,
        is_series: kind == "series",
    }
    .to_value(kind)
}

pub fn witt(op: WittOp, o: &Opts) -> Result<Value> {
    if op == WittOp::GenPolys {
        return gen_polys(o);
    }
    let d1 = match op {
        WittOp::Unity => None,
        _ => Some(o.doc(o.input.as_ref(), "in")?),
    };
    let s1 = o.setup(d1.as_ref(), false)?;
    let s2 = match op {
        WittOp::Add | WittOp::Mul => Some(o.setup(Some(&o.doc(o.in2.as_ref(), "in2")?), false)?),
        _ => None,
    };
    on_ring!(s1.ring, witt_on(op, o, &s1, s2.as_ref()))
}

fn witt_on<R: CoeffRing>(ring: R, op: WittOp, o: &Opts, s1: &Setup, s2: Option<&Setup>) -> Result<Value> {
    let ctx = context(ring.clone(), s1)?;
    if op == WittOp::Unity {
        let u = ctx.unity()?;
        return Ok(vector_doc(u.ctx(), u.format_coords(), "witt"));
    }
    if op == WittOp::Unghost {
        let w = ctx.ghost_vector(elems(&ring, &s1.coords)?)?.unghost()?;
        return Ok(vector_doc(w.ctx(), w.format_coords(), "witt"));
    }
    let a = ctx.vector(elems(&ring, &s1.coords)?)?;
    let second = || -> Result<_> {
        let s2 = s2.expect("binary operation has a second input");
        let ctx2 = if s2.ring == s1.ring { context(ring.clone(), s2)? } else { return Err(Error::ContextMismatch) };
        ctx2.vector(elems(&ring, &s2.coords)?)
    };
    let out = match op {
        WittOp::Add => a.add(&second()?)?,
        WittOp::Mul => a.mul(&second()?)?,
        WittOp::Neg => a.neg()?,
        WittOp::Ghost => return Ok(vector_doc(&ctx, a.ghost().format_coords(), "ghost")),
        WittOp::Transport => match o.h {
            None => a.transport_two_minus_g()?,
            Some(h) => a.transport_to_h(h)?,
        },
        WittOp::Induce => a.induce(o.r.ok_or_else(|| missing("r"))?)?,
        WittOp::Restrict => {
            let r = o.r.ok_or_else(|| missing("r"))?;
            a.restrict(r, o.n.unwrap_or(ctx.trunc() / r.max(1)))?
        }
        WittOp::Unity | WittOp::Unghost | WittOp::GenPolys => unreachable!("handled above"),
    };
    Ok(vector_doc(out.ctx(), out.format_coords(), "witt"))
}

fn terms_json<T: std::fmt::Display>(terms: impl Iterator<Item = (String, T)>, var: &str) -> Value {
    Value::Array(
        terms
            .map(|(m, c)| {
                let c = c.to_string();
                let c = if var == "q" { c } else { c.replace('q', var) };
                json!({"monomial": m, "coeff": c})
            })
            .collect(),
    )
}

fn gen_polys(o: &Opts) -> Result<Value> {
    let n = o.n.ok_or_else(|| missing("n"))?;
    let mono = |m: &qwitt::exactalg::Monomial| if m.factors().is_empty() { "1".to_string() } else { m.to_string() };
    if let Some(g) = &o.g {
        let g = parse_zpoly(g)?.to_q();
        let (s, p, i) = gen_defining_polys(n, &g)?;
        let list = |x: &MultiPolynomial| terms_json(x.terms().map(|(m, c)| (mono(m), c)), "q");
        return Ok(json!({"n": n, "coefficient_variable": "q", "S": list(&s), "P": list(&p), "I": list(&i)}));
    }
    let (s, p, i) = generic_defining_polys(n)?;
    let list = |x: &ZMultiPolynomial| terms_json(x.terms().map(|(m, c)| (mono(m), c)), "g");
    Ok(json!({"n": n, "coefficient_variable": "g", "S": list(&s), "P": list(&p), "I": list(&i)}))
}

pub fn neck(op: NeckOp, o: &Opts) -> Result<Value> {
    match op {
        NeckOp::Mobius => return neck_mobius(o),
        NeckOp::Coeff => return neck_coeff(o),
        _ => {}
    }
    let d1 = match op {
        NeckOp::Unity => None,
        _ => Some(o.doc(o.input.as_ref(), "in")?),
    };
    let s1 = o.setup(d1.as_ref(), false)?;
    let s2 = match op {
        NeckOp::Mul => Some(o.setup(Some(&o.doc(o.in2.as_ref(), "in2")?), false)?),
        _ => None,
    };
    on_ring!(s1.ring, neck_on(op, o, &s1, s2.as_ref()))
}

fn neck_on<R: CoeffRing>(ring: R, op: NeckOp, o: &Opts, s1: &Setup, s2: Option<&Setup>) -> Result<Value> {
    let ctx = context(ring.clone(), s1)?;
    let out = match op {
        NeckOp::Unity => NecklaceVector::unity(&ctx)?,
        NeckOp::Eta => eta_inverse(&ctx.ghost_vector(elems(&ring, &s1.coords)?)?)?,
        _ => {
            let a = NecklaceVector::new(&ctx, elems(&ring, &s1.coords)?)?;
            match op {
                NeckOp::Mul => {
                    let s2 = s2.expect("binary operation has a second input");
                    if s2.ring != s1.ring {
                        return Err(Error::ContextMismatch);
                    }
                    let b = NecklaceVector::new(&context(ring.clone(), s2)?, elems(&ring, &s2.coords)?)?;
                    a.mul(&b)?
                }
                NeckOp::Ghost => return Ok(vector_doc(&ctx, a.ghost()?.format_coords(), "ghost")),
                NeckOp::Induce => a.induce(o.r.ok_or_else(|| missing("r"))?)?,
                NeckOp::Restrict => {
                    let r = o.r.ok_or_else(|| missing("r"))?;
                    a.restrict(r, o.n.unwrap_or(ctx.trunc() / r.max(1)))?
                }
                NeckOp::Transport => a.transport_two_minus()?,
                _ => unreachable!("handled above"),
            }
        }
    };
    Ok(vector_doc(out.ctx(), out.format_coords(), "necklace"))
}

fn neck_mobius(o: &Opts) -> Result<Value> {
    let n = o.n.ok_or_else(|| missing("n"))?;
    match o.flag_deformation()?.ok_or_else(|| missing("g or --m"))? {
        Deformation::Integer(m) => Ok(Value::Array((1..=n).map(|k| integer_value(&mobius(&m, k))).collect())),
        Deformation::Polynomial(g) => {
            let t = MobiusTable::new(&g, n);
            Ok(Value::Array((1..=n).map(|k| json!(t.get(k).to_string())).collect()))
        }
    }
}

fn neck_coeff(o: &Opts) -> Result<Value> {
    let n = o.n.ok_or_else(|| missing("n"))?;
    let i = o.i.ok_or_else(|| missing("i"))?;
    let j = o.j.ok_or_else(|| missing("j"))?;
    let def = o.flag_deformation()?.ok_or_else(|| missing("g or --m"))?;
    let g = def.as_zpoly();
    let c = structure_constant(&g, &MobiusTable::new(&g, n), n, i, j)?;
    Ok(json!(c.to_string()))
}

pub fn series(op: SeriesOp, o: &Opts) -> Result<Value> {
    let doc = o.doc(o.input.as_ref(), "in")?;
    if op == SeriesOp::Kimlee {
        let n = o.trunc.unwrap_or(doc.coords.len());
        let mut a = doc.coords.iter().map(|c| parse_integer(c)).collect::<Result<Vec<BigInt>>>()?;
        a.resize(n, BigInt::from(0));
        let b = kimlee_expand(&a, n)?;
        return Ok(Value::Array(b.iter().map(|p| json!(p.to_string())).collect()));
    }
    let takes_series = op != SeriesOp::Theta;
    let s = o.setup(Some(&doc), takes_series)?;
    on_ring!(s.ring, series_on(op, &s))
}

fn series_on<R: CoeffRing>(ring: R, op: SeriesOp, s: &Setup) -> Result<Value> {
    let ctx = context(ring.clone(), s)?;
    if op == SeriesOp::Theta {
        let t = theta(&ctx.vector(elems(&ring, &s.coords)?)?)?;
        return Ok(vector_doc(&ctx, format_series(t.series()), "series"));
    }
    let coeffs = elems(&ring, &s.coords)?;
    if coeffs.len() != s.trunc + 1 {
        return Err(Error::InvalidContext(format!(
            "series has {} coefficients, truncation {} needs {}",
            coeffs.len(),
            s.trunc,
            s.trunc + 1
        )));
    }
    let el = LambdaElement::new(&ctx, TruncatedSeries::new(ring, s.trunc, coeffs))?;
    match op {
        SeriesOp::ThetaInv => Ok(vector_doc(&ctx, theta_inv(&el)?.format_coords(), "witt")),
        SeriesOp::Upsilon => Ok(vector_doc(&ctx, upsilon(&el)?.format_coords(), "ghost")),
        SeriesOp::Theta | SeriesOp::Kimlee => unreachable!("handled above"),
    }
}

fn format_series<R: CoeffRing>(s: &TruncatedSeries<R>) -> Vec<String> {
    s.coeffs().iter().map(|c| s.ring().format(c)).collect()
}

pub fn bridge(op: BridgeOp, o: &Opts) -> Result<Value> {
    let input = read_input(o.input.as_ref().ok_or_else(|| missing("in"))?)?;
    if op == BridgeOp::Teich {
        let x = scalar_text(&input)?;
        let s = o.setup(None, false)?;
        return on_ring!(s.ring, teich_on(&s, &x));
    }
    let s = o.setup(Some(&Doc::from_value(&input)?), false)?;
    on_ring!(s.ring, bridge_on(op, &s))
}

fn teich_on<R: CoeffRing>(ring: R, s: &Setup, x: &str) -> Result<Value> {
    let ctx = context(ring.clone(), s)?;
    let m = teich_sequence(&ctx, &ring.parse(x)?, s.trunc)?;
    Ok(Value::Array(m.iter().map(|v| json!(ring.format(v))).collect()))
}

fn bridge_on<R: CoeffRing>(ring: R, op: BridgeOp, s: &Setup) -> Result<Value> {
    let ctx = context(ring.clone(), s)?;
    let coords = elems(&ring, &s.coords)?;
    match op {
        BridgeOp::Tau => Ok(vector_doc(&ctx, tau(&ctx.vector(coords)?)?.format_coords(), "necklace")),
        BridgeOp::TauInv => Ok(vector_doc(&ctx, tau_inv(&NecklaceVector::new(&ctx, coords)?)?.format_coords(), "witt")),
        BridgeOp::Teich => unreachable!("handled above"),
    }
}

pub fn symfun(op: SymOp, o: &Opts) -> Result<Value> {
    let k = o.vars.ok_or_else(|| missing("vars"))?;
    let n = o.n.ok_or_else(|| missing("n"))?;
    let a = Alphabet::new(k);
    let p = match op {
        SymOp::U => a.u_q(n)?,
        SymOp::V => a.v_q(n)?,
        SymOp::Hq => a.hq(n)?,
        SymOp::Gq => a.gq(n)?,
        SymOp::Qn => a.qn_basis(n)?,
    };
    Ok(sym_json(&p))
}

/// Terms in descending exponent-vector order.
fn sym_json(p: &SymPoly) -> Value {
    let mut terms: Vec<_> = p.terms().collect();
    terms.reverse();
    Value::Array(terms.into_iter().map(|(e, c)| json!({"exponents": e, "coeff": c.to_string()})).collect())
}
