//! Text grammar for polynomials and vectors.
//!
//! A term is `c*t^a*x^b*gen(i)` with `*` separators; polynomials are sums of
//! terms; vectors may also be written `[p_1, ..., p_s]`. Parenthesized
//! subexpressions and natural powers of them are accepted on input. t-exponents
//! are semantic: with denominator 2, `t^(1/2)` is the raw exponent 1.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::ordering::CompiledOrdering;
use crate::poly::PolyVector;
use crate::ring::{Monomial, RingContext};

pub fn parse_poly(text: &str, ord: &CompiledOrdering) -> Result<PolyVector> {
    let mut p = Parser {
        src: text.as_bytes(),
        text,
        pos: 0,
        ord,
        sord: ord.scalar(),
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    p.finish(value, 0)
}

#[derive(Clone)]
enum Value {
    Scalar(PolyVector),
    Vector(PolyVector),
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    ord: &'a CompiledOrdering,
    sord: CompiledOrdering,
}

impl Parser<'_> {
    fn ctx(&self) -> &RingContext {
        self.ord.ctx()
    }

    fn is_module(&self) -> bool {
        self.ctx().rank() > 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }

    fn small_natural(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.natural()?;
        u32::try_from(v).map_err(|_| Error::parse(start, "exponent too large"))
    }

    fn finish(&self, v: Value, offset: usize) -> Result<PolyVector> {
        match v {
            Value::Vector(p) => Ok(p),
            Value::Scalar(p) if !self.is_module() => Ok(p),
            Value::Scalar(p) if p.is_zero() => Ok(PolyVector::zero(self.ord)),
            Value::Scalar(_) => Err(Error::parse(
                offset,
                "expected a vector: use gen(i) or [p_1, ..., p_s]",
            )),
        }
    }

    fn scalar(&self, p: PolyVector) -> Value {
        if self.is_module() {
            Value::Scalar(p)
        } else {
            Value::Vector(p)
        }
    }

    fn add(&self, a: Value, b: Value, negate: bool, at: usize) -> Result<Value> {
        let b = if negate { neg(b) } else { b };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::Vector(x), Value::Vector(y)) => Value::Vector(&x + &y),
            (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s))
                if s.is_zero() =>
            {
                Value::Vector(v)
            }
            _ => return Err(Error::parse(at, "cannot add a scalar to a vector")),
        })
    }

    fn mul(&self, a: Value, b: Value, at: usize) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                Value::Vector(v.mul_by_poly(&s))
            }
            (Value::Vector(x), Value::Vector(y)) if !self.is_module() => Value::Vector(&x * &y),
            _ => return Err(Error::parse(at, "cannot multiply two vectors")),
        })
    }

    fn expr(&mut self) -> Result<Value> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let at = self.pos;
        let first = self.product()?;
        let mut acc = self.add(self.scalar(PolyVector::zero(&self.sord)), first, negate, at)?;
        loop {
            let negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let at = self.pos;
            let rhs = self.product()?;
            acc = self.add(acc, rhs, negate, at)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            let at = self.pos;
            let rhs = self.power()?;
            acc = self.mul(acc, rhs, at)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Value> {
        self.skip_ws();
        let start = self.pos;
        if let Some(name) = self.identifier() {
            if name == "gen" {
                return self.generator(start);
            }
            let index = self
                .ctx()
                .var_index(&name)
                .ok_or_else(|| Error::parse(start, format!("unknown variable `{name}`")))?;
            let raw = if self.eat(b'^') {
                self.var_exponent(index)?
            } else if self.ctx().is_tvar(index) {
                self.ctx().denom()
            } else {
                1
            };
            let nv = self.ctx().nvars();
            let mon = Monomial::var(nv, index, raw);
            return Ok(self.scalar(PolyVector::term(&self.sord, self.ctx().field().one(), mon)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let k = self.small_natural()?;
            let p = match &base {
                Value::Scalar(p) => p.clone(),
                Value::Vector(p) if !self.is_module() => p.clone(),
                Value::Vector(_) => {
                    return Err(Error::parse(at, "cannot raise a vector to a power"))
                }
            };
            let mut acc = PolyVector::one(&self.sord);
            for _ in 0..k {
                acc = &acc * &p;
            }
            return Ok(self.scalar(acc));
        }
        Ok(base)
    }

    fn identifier(&mut self) -> Option<String> {
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return None,
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Some(self.text[start..self.pos].to_string())
    }

    fn generator(&mut self, start: usize) -> Result<Value> {
        self.expect(b'(')?;
        let at = self.pos;
        let i = self.small_natural()? as usize;
        self.expect(b')')?;
        let s = self.ctx().rank();
        if i == 0 || i > s {
            return Err(Error::parse(at, format!("gen({i}) out of range 1..{s}")));
        }
        let nv = self.ctx().nvars();
        let e = PolyVector::term(self.ord, self.ctx().field().one(), Monomial::one(nv, i - 1));
        let _ = start;
        Ok(Value::Vector(e))
    }

    /// Exponent after `^` for variable `index`, converted to raw units.
    fn var_exponent(&mut self, index: usize) -> Result<u32> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let (num, den) = if self.eat(b'(') {
            let negative = self.eat(b'-');
            let num = self.natural()?;
            let den = if self.eat(b'/') {
                self.natural()?
            } else {
                BigInt::from(1)
            };
            self.expect(b')')?;
            if negative && num != BigInt::from(0) {
                return Err(Error::parse(at, "negative exponent"));
            }
            (num, den)
        } else {
            (self.natural()?, BigInt::from(1))
        };
        if den == BigInt::from(0) {
            return Err(Error::parse(at, "zero denominator in exponent"));
        }
        let scale = if self.ctx().is_tvar(index) {
            BigInt::from(self.ctx().denom())
        } else {
            BigInt::from(1)
        };
        let (q, r) = (num * scale).div_rem(&den);
        if r != BigInt::from(0) {
            return Err(Error::parse(
                at,
                "exponent is not a multiple of the ring's denominator",
            ));
        }
        u32::try_from(q).map_err(|_| Error::parse(at, "exponent too large"))
    }

    fn atom(&mut self) -> Result<Value> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut comps = Vec::new();
                loop {
                    let cat = self.pos;
                    match self.expr()? {
                        Value::Scalar(p) => comps.push(p),
                        Value::Vector(p) if !self.is_module() => comps.push(p),
                        Value::Vector(_) => {
                            return Err(Error::parse(cat, "vector entries must be scalars"))
                        }
                    }
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b']')?;
                let s = self.ctx().rank();
                if comps.len() != s {
                    return Err(Error::parse(
                        at,
                        format!("vector has {} entries, rank is {s}", comps.len()),
                    ));
                }
                Ok(Value::Vector(PolyVector::from_components(self.ord, &comps)))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.natural()?
                } else {
                    BigInt::from(1)
                };
                let c = self
                    .ctx()
                    .field()
                    .from_ratio(&num, &den)
                    .map_err(|e| Error::parse(at, e.to_string()))?;
                Ok(self.scalar(PolyVector::constant(&self.sord, c)))
            }
            _ => Err(Error::parse(at, "expected a term")),
        }
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(p.neg()),
        Value::Vector(p) => Value::Vector(p.neg()),
    }
}

/// Monomial text without coefficient; empty for the constant monomial
/// (the component is printed only when `with_comp`).
pub fn format_monomial(mon: &Monomial, ctx: &RingContext, with_comp: bool) -> String {
    let mut parts: Vec<String> = Vec::new();
    let denom = ctx.denom() as u64;
    for (i, &e) in mon.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = &ctx.names()[i];
        if ctx.is_tvar(i) && denom > 1 {
            let g = (e as u64).gcd(&denom);
            let (num, den) = (e as u64 / g, denom / g);
            parts.push(match (num, den) {
                (1, 1) => name.clone(),
                (k, 1) => format!("{name}^{k}"),
                (k, d) => format!("{name}^({k}/{d})"),
            });
        } else if e == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    if with_comp {
        parts.push(format!("gen({})", mon.comp() + 1));
    }
    parts.join("*")
}

fn push_term(out: &mut String, c: &Coefficient, mon_text: &str, first: bool) {
    let negative = c.is_negative();
    let abs = if negative { c.neg() } else { c.clone() };
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if mon_text.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(mon_text);
    } else {
        out.push_str(&abs.to_string());
        out.push('*');
        out.push_str(mon_text);
    }
}

/// Canonical text: terms in descending order, `gen(i)` only when `s > 1`.
pub fn format_poly(f: &PolyVector) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ctx = f.ctx();
    let with_comp = ctx.rank() > 1;
    let mut out = String::new();
    for (k, t) in f.terms().iter().enumerate() {
        let mon = format_monomial(&t.mon, ctx, with_comp);
        push_term(&mut out, &t.coeff, &mon, k == 0);
    }
    out
}

/// `[p_1, ..., p_s]` with every component printed as a polynomial.
pub fn format_vector(f: &PolyVector) -> String {
    let parts: Vec<String> = (0..f.ctx().rank())
        .map(|i| format_poly(&f.component(i)))
        .collect();
    format!("[{}]", parts.join(", "))
}
