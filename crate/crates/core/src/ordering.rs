//! Monomial orderings: declarative specs and compiled comparators.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{Monomial, RingContext};

/// Global orderings on the x-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlobalKind {
    Lex,
    DegLex,
    DegRevLex,
}

impl GlobalKind {
    pub fn name(&self) -> &'static str {
        match self {
            GlobalKind::Lex => "lex",
            GlobalKind::DegLex => "deglex",
            GlobalKind::DegRevLex => "degrevlex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "lex" => Some(GlobalKind::Lex),
            "deglex" => Some(GlobalKind::DegLex),
            "degrevlex" => Some(GlobalKind::DegRevLex),
            _ => None,
        }
    }
}

/// How module monomials `p*e_i` compare across components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Priority {
    ComponentFirst,
    MonomialFirst,
}

/// Which variables count towards the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grading {
    /// Only the x-block.
    X,
    /// The t-block (raw exponents) and the x-block together.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderingSpec {
    /// `lex`, `deglex`, `degrevlex` on x, ties broken locally on t
    /// (fewer t's at the first difference is bigger).
    TLocal(GlobalKind),
    /// Weight `w` of length `m+n` (or `m+n+s` with component weights) first.
    WeightThen {
        w: Vec<BigRational>,
        then: Box<OrderingSpec>,
    },
    /// Degrevlex on the listed x-variables first, then `inner` on everything.
    Block {
        outer: Vec<String>,
        inner: Box<OrderingSpec>,
    },
    ModuleExt {
        base: Box<OrderingSpec>,
        priority: Priority,
    },
    /// Degree in (homogenized block + last x-variable) first, then `base` on
    /// the monomial with the last x-variable removed.
    Homogenized {
        base: Box<OrderingSpec>,
        folded: bool,
    },
    /// `u*eps_i > v*eps_j` iff `u*leads[i] > v*leads[j]`, or equal and `i < j`.
    Schreyer {
        base: CompiledOrdering,
        leads: Vec<Monomial>,
    },
    /// `w . (alpha/N, beta)` first, then a global ordering on x. Needs `m = 1`.
    TInitialW {
        w: Vec<BigRational>,
        global: GlobalKind,
    },
    /// Degrevlex on all variables, t included. Not t-local; used only for
    /// exact polynomial division.
    Global,
}

impl OrderingSpec {
    pub fn lex() -> Self {
        OrderingSpec::TLocal(GlobalKind::Lex)
    }

    pub fn weighted(w: &[i64], then: OrderingSpec) -> Self {
        OrderingSpec::WeightThen {
            w: w.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
            then: Box::new(then),
        }
    }

    pub fn tinitial(w: &[BigRational], global: GlobalKind) -> Self {
        OrderingSpec::TInitialW {
            w: w.to_vec(),
            global,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = SpecParser { src: text, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(Error::parse(p.pos, "trailing input in ordering"));
        }
        Ok(spec)
    }

    /// The same ordering for rank-1 elements: component weights are dropped.
    fn scalar_spec(&self, ctx: &RingContext) -> OrderingSpec {
        match self {
            OrderingSpec::WeightThen { w, then } => OrderingSpec::WeightThen {
                w: w[..w.len().min(ctx.nvars())].to_vec(),
                then: Box::new(then.scalar_spec(ctx)),
            },
            OrderingSpec::Block { outer, inner } => OrderingSpec::Block {
                outer: outer.clone(),
                inner: Box::new(inner.scalar_spec(ctx)),
            },
            OrderingSpec::ModuleExt { base, priority } => OrderingSpec::ModuleExt {
                base: Box::new(base.scalar_spec(ctx)),
                priority: *priority,
            },
            OrderingSpec::Homogenized { base, folded } => OrderingSpec::Homogenized {
                base: Box::new(base.scalar_spec(ctx)),
                folded: *folded,
            },
            OrderingSpec::Schreyer { base, .. } => base.scalar().spec().clone(),
            other => other.clone(),
        }
    }

    /// The ordering adjusted to a context with one more trailing x-variable, which
    /// receives weight zero everywhere.
    pub fn with_extra_x(&self, ctx: &RingContext) -> Result<OrderingSpec> {
        Ok(match self {
            OrderingSpec::TLocal(k) => OrderingSpec::TLocal(*k),
            OrderingSpec::WeightThen { w, then } => {
                let mut w = w.clone();
                w.insert(ctx.nvars().min(w.len()), BigRational::zero());
                OrderingSpec::WeightThen {
                    w,
                    then: Box::new(then.with_extra_x(ctx)?),
                }
            }
            OrderingSpec::Block { outer, inner } => OrderingSpec::Block {
                outer: outer.clone(),
                inner: Box::new(inner.with_extra_x(ctx)?),
            },
            OrderingSpec::ModuleExt { base, priority } => OrderingSpec::ModuleExt {
                base: Box::new(base.with_extra_x(ctx)?),
                priority: *priority,
            },
            OrderingSpec::TInitialW { w, global } => {
                let mut w = w.clone();
                w.push(BigRational::zero());
                OrderingSpec::TInitialW { w, global: *global }
            }
            other => {
                return Err(Error::Unsupported(format!(
                    "cannot extend ordering `{other}` by a variable"
                )))
            }
        })
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingSpec::TLocal(k) => write!(f, "{}", k.name()),
            OrderingSpec::WeightThen { w, then } => {
                write!(f, "ws({}) {then}", join_rationals(w))
            }
            OrderingSpec::Block { outer, inner } => {
                write!(f, "block({} | {inner})", outer.join(","))
            }
            OrderingSpec::ModuleExt { base, priority } => match priority {
                Priority::ComponentFirst => write!(f, "module(c, {base})"),
                Priority::MonomialFirst => write!(f, "module({base}, c)"),
            },
            OrderingSpec::Homogenized { base, folded } => {
                write!(
                    f,
                    "homogenized{}({base})",
                    if *folded { "_full" } else { "" }
                )
            }
            OrderingSpec::Schreyer { base, leads } => {
                write!(f, "schreyer({}; {} leads)", base.spec(), leads.len())
            }
            OrderingSpec::TInitialW { w, global } => {
                write!(f, "tw({} ; {})", join_rationals(w), global.name())
            }
            OrderingSpec::Global => write!(f, "global"),
        }
    }
}

fn join_rationals(w: &[BigRational]) -> String {
    w.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a name"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_digit() || c == '-' || c == '+' || c == '/' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        parse_rational(text).ok_or_else(|| Error::parse(start, format!("bad weight `{text}`")))
    }

    fn spec(&mut self) -> Result<OrderingSpec> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let word = self.word()?.to_string();
        if let Some(kind) = GlobalKind::from_name(&word) {
            return Ok(OrderingSpec::TLocal(kind));
        }
        match word.as_str() {
            "ws" => {
                self.expect('(')?;
                let w = self.rational_list(')')?;
                self.expect(')')?;
                let then = self.spec()?;
                Ok(OrderingSpec::WeightThen {
                    w,
                    then: Box::new(then),
                })
            }
            "block" => {
                self.expect('(')?;
                let mut outer = vec![self.word()?.to_string()];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    outer.push(self.word()?.to_string());
                }
                self.expect('|')?;
                let inner = self.spec()?;
                self.expect(')')?;
                Ok(OrderingSpec::Block {
                    outer,
                    inner: Box::new(inner),
                })
            }
            "module" => {
                self.expect('(')?;
                let save = self.pos;
                if self.word().ok() == Some("c") && self.peek() == Some(',') {
                    self.pos += 1;
                    let base = self.spec()?;
                    self.expect(')')?;
                    return Ok(OrderingSpec::ModuleExt {
                        base: Box::new(base),
                        priority: Priority::ComponentFirst,
                    });
                }
                self.pos = save;
                let base = self.spec()?;
                self.expect(',')?;
                let c_pos = self.pos;
                if self.word()? != "c" {
                    return Err(Error::parse(c_pos, "expected `c`"));
                }
                self.expect(')')?;
                Ok(OrderingSpec::ModuleExt {
                    base: Box::new(base),
                    priority: Priority::MonomialFirst,
                })
            }
            "tw" => {
                self.expect('(')?;
                let w = self.rational_list(';')?;
                self.expect(';')?;
                let kind_pos = self.pos;
                let kind = self.word()?;
                let global = GlobalKind::from_name(kind).ok_or_else(|| {
                    Error::parse(kind_pos, format!("`{kind}` is not a global ordering"))
                })?;
                self.expect(')')?;
                Ok(OrderingSpec::TInitialW { w, global })
            }
            _ => Err(Error::parse(start, format!("unknown ordering `{word}`"))),
        }
    }

    fn rational_list(&mut self, end: char) -> Result<Vec<BigRational>> {
        let mut out = vec![self.rational()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.rational()?);
        }
        if self.peek() != Some(end) {
            return Err(Error::parse(self.pos, format!("expected `{end}`")));
        }
        Ok(out)
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = text.split_once('/').unwrap_or((text, "1"));
    let num: BigInt = num.strip_prefix('+').unwrap_or(num).parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// A compiled comparator together with its spec and context.
#[derive(Clone)]
pub struct CompiledOrdering(Arc<Inner>);

struct Inner {
    spec: OrderingSpec,
    ctx: Arc<RingContext>,
    node: Node,
    scalar: OnceLock<CompiledOrdering>,
    homogenized: [OnceLock<CompiledOrdering>; 2],
}

enum Node {
    Local {
        m: usize,
        n: usize,
        kind: GlobalKind,
    },
    Weight {
        /// Scaled so that the value of `t^a x^b e_c` is
        /// `sum(tw*a) + denom*(sum(xw*b) + cw[c])`.
        tw: Vec<i128>,
        xw: Vec<i128>,
        cw: Vec<i128>,
        denom: i128,
        then: Box<Node>,
    },
    Block {
        outer: Vec<usize>,
        inner: Box<Node>,
    },
    Module {
        base: Box<Node>,
        priority: Priority,
    },
    Homog {
        base: Box<Node>,
        lo: usize,
        slot: usize,
    },
    Schreyer {
        base: CompiledOrdering,
        leads: Vec<Monomial>,
    },
    TInit {
        w0: i128,
        xw: Vec<i128>,
        denom: i128,
        n: usize,
        global: GlobalKind,
    },
    Global {
        nvars: usize,
    },
}

fn deg(a: &[u32], lo: usize, hi: usize) -> u64 {
    a[lo..hi].iter().map(|&e| e as u64).sum()
}

fn lex(a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
    for i in lo..hi {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

fn revlex(a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn local_lex(a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
    lex(a, b, lo, hi).reverse()
}

fn global_cmp(kind: GlobalKind, a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
    match kind {
        GlobalKind::Lex => lex(a, b, lo, hi),
        GlobalKind::DegLex => deg(a, lo, hi)
            .cmp(&deg(b, lo, hi))
            .then_with(|| lex(a, b, lo, hi)),
        GlobalKind::DegRevLex => deg(a, lo, hi)
            .cmp(&deg(b, lo, hi))
            .then_with(|| revlex(a, b, lo, hi)),
    }
}

fn dot(w: &[i128], e: &[u32]) -> i128 {
    w.iter().zip(e).map(|(w, &e)| w * e as i128).sum()
}

impl Node {
    fn cmp(&self, a: &[u32], ca: usize, b: &[u32], cb: usize) -> Ordering {
        match self {
            Node::Local { m, n, kind } => {
                global_cmp(*kind, a, b, *m, m + n).then_with(|| local_lex(a, b, 0, *m))
            }
            Node::Weight {
                tw,
                xw,
                cw,
                denom,
                then,
            } => {
                let m = tw.len();
                let value = |e: &[u32], c: usize| {
                    let comp = cw.get(c).copied().unwrap_or(0);
                    dot(tw, &e[..m]) + denom * (dot(xw, &e[m..m + xw.len()]) + comp)
                };
                value(a, ca)
                    .cmp(&value(b, cb))
                    .then_with(|| then.cmp(a, ca, b, cb))
            }
            Node::Block { outer, inner } => {
                let da: u64 = outer.iter().map(|&i| a[i] as u64).sum();
                let db: u64 = outer.iter().map(|&i| b[i] as u64).sum();
                da.cmp(&db)
                    .then_with(|| {
                        for &i in outer.iter().rev() {
                            if a[i] != b[i] {
                                return b[i].cmp(&a[i]);
                            }
                        }
                        Ordering::Equal
                    })
                    .then_with(|| inner.cmp(a, ca, b, cb))
            }
            Node::Module { base, priority } => match priority {
                Priority::ComponentFirst => cb.cmp(&ca).then_with(|| base.cmp(a, ca, b, cb)),
                Priority::MonomialFirst => base.cmp(a, ca, b, cb).then_with(|| cb.cmp(&ca)),
            },
            Node::Homog { base, lo, slot } => deg(a, *lo, slot + 1)
                .cmp(&deg(b, *lo, slot + 1))
                .then_with(|| base.cmp(&a[..*slot], ca, &b[..*slot], cb))
                .then_with(|| a[*slot].cmp(&b[*slot])),
            Node::Schreyer { base, leads } => {
                let (la, lb) = (&leads[ca], &leads[cb]);
                let k = la.nvars();
                let pa: smallvec::SmallVec<[u32; 8]> =
                    a[..k].iter().zip(la.exps()).map(|(x, y)| x + y).collect();
                let pb: smallvec::SmallVec<[u32; 8]> =
                    b[..k].iter().zip(lb.exps()).map(|(x, y)| x + y).collect();
                base.cmp_raw(&pa, la.comp(), &pb, lb.comp())
                    .then_with(|| cb.cmp(&ca))
            }
            Node::TInit {
                w0,
                xw,
                denom,
                n,
                global,
            } => {
                let value = |e: &[u32]| w0 * e[0] as i128 + denom * dot(xw, &e[1..1 + n]);
                value(a)
                    .cmp(&value(b))
                    .then_with(|| global_cmp(*global, a, b, 1, 1 + n))
                    .then_with(|| local_lex(a, b, 0, 1))
            }
            Node::Global { nvars } => global_cmp(GlobalKind::DegRevLex, a, b, 0, *nvars),
        }
    }
}

/// Clears denominators of `w`, returning integer numerators over a common denominator.
fn scale_weights(w: &[BigRational]) -> Result<Vec<i128>> {
    let l = w.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    w.iter()
        .map(|r| {
            (r.numer() * (&l / r.denom()))
                .to_i128()
                .filter(|v| v.abs() < (1i128 << 80))
                .ok_or_else(|| Error::InvalidOrdering("weight too large".into()))
        })
        .collect()
}

fn build(spec: &OrderingSpec, ctx: &Arc<RingContext>) -> Result<Node> {
    let (m, n) = (ctx.m(), ctx.n());
    Ok(match spec {
        OrderingSpec::TLocal(kind) => Node::Local { m, n, kind: *kind },
        OrderingSpec::WeightThen { w, then } => {
            let len = w.len();
            if len != m + n && len != m + n + ctx.rank() {
                return Err(Error::InvalidOrdering(format!(
                    "weight vector has length {len}, expected {} or {}",
                    m + n,
                    m + n + ctx.rank()
                )));
            }
            if w[..m].iter().any(|r| r.is_positive()) {
                return Err(Error::OrderingNotTLocal);
            }
            let scaled = scale_weights(w)?;
            Node::Weight {
                tw: scaled[..m].to_vec(),
                xw: scaled[m..m + n].to_vec(),
                cw: scaled[m + n..].to_vec(),
                denom: ctx.denom() as i128,
                then: Box::new(build(then, ctx)?),
            }
        }
        OrderingSpec::Block { outer, inner } => {
            let mut idx = Vec::with_capacity(outer.len());
            for name in outer {
                match ctx.var_index(name) {
                    Some(i) if i >= m => {
                        if idx.contains(&i) {
                            return Err(Error::InvalidOrdering(format!(
                                "variable `{name}` listed twice in block"
                            )));
                        }
                        idx.push(i)
                    }
                    Some(_) => return Err(Error::OrderingNotTLocal),
                    None => {
                        return Err(Error::InvalidOrdering(format!("unknown variable `{name}`")))
                    }
                }
            }
            Node::Block {
                outer: idx,
                inner: Box::new(build(inner, ctx)?),
            }
        }
        OrderingSpec::ModuleExt { base, priority } => Node::Module {
            base: Box::new(build(base, ctx)?),
            priority: *priority,
        },
        OrderingSpec::Homogenized { base, folded } => {
            let base_ctx = ctx.without_last_x()?;
            Node::Homog {
                base: Box::new(build_top(base, &base_ctx)?),
                lo: if *folded { 0 } else { m },
                slot: ctx.nvars() - 1,
            }
        }
        OrderingSpec::Schreyer { base, leads } => {
            if base.ctx().nvars() != ctx.nvars() {
                return Err(Error::InvalidOrdering(
                    "Schreyer base lives over different variables".into(),
                ));
            }
            if leads.len() != ctx.rank() {
                return Err(Error::InvalidOrdering(format!(
                    "{} leading monomials for rank {}",
                    leads.len(),
                    ctx.rank()
                )));
            }
            Node::Schreyer {
                base: base.clone(),
                leads: leads.clone(),
            }
        }
        OrderingSpec::TInitialW { w, global } => {
            if m != 1 {
                return Err(Error::InvalidOrdering(
                    "t-initial ordering needs exactly one t-variable".into(),
                ));
            }
            if w.len() != 1 + n {
                return Err(Error::InvalidOrdering(format!(
                    "weight vector has length {}, expected {}",
                    w.len(),
                    1 + n
                )));
            }
            if !w[0].is_negative() {
                return Err(Error::InvalidOrdering(
                    "the t-weight must be negative".into(),
                ));
            }
            let scaled = scale_weights(w)?;
            Node::TInit {
                w0: scaled[0],
                xw: scaled[1..].to_vec(),
                denom: ctx.denom() as i128,
                n,
                global: *global,
            }
        }
        OrderingSpec::Global => Node::Global { nvars: m + n },
    })
}

/// Builds a node that also orders components (default: monomial first,
/// smaller component index bigger).
fn build_top(spec: &OrderingSpec, ctx: &Arc<RingContext>) -> Result<Node> {
    let node = build(spec, ctx)?;
    Ok(match spec {
        OrderingSpec::ModuleExt { .. }
        | OrderingSpec::Schreyer { .. }
        | OrderingSpec::Homogenized { .. } => node,
        _ => Node::Module {
            base: Box::new(node),
            priority: Priority::MonomialFirst,
        },
    })
}

impl CompiledOrdering {
    /// Compiles `spec` for `ctx`, rejecting orderings in which some `t_i >= 1`.
    pub fn compile(spec: &OrderingSpec, ctx: &Arc<RingContext>) -> Result<Self> {
        let ord = Self::compile_unchecked(spec, ctx)?;
        if !ord.is_t_local() {
            return Err(Error::OrderingNotTLocal);
        }
        Ok(ord)
    }

    pub(crate) fn compile_unchecked(spec: &OrderingSpec, ctx: &Arc<RingContext>) -> Result<Self> {
        let node = build_top(spec, ctx)?;
        Ok(CompiledOrdering(Arc::new(Inner {
            spec: spec.clone(),
            ctx: ctx.clone(),
            node,
            scalar: OnceLock::new(),
            homogenized: [OnceLock::new(), OnceLock::new()],
        })))
    }

    pub fn spec(&self) -> &OrderingSpec {
        &self.0.spec
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.0.ctx
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.node.cmp(a.exps(), a.comp(), b.exps(), b.comp())
    }

    pub(crate) fn cmp_raw(&self, a: &[u32], ca: usize, b: &[u32], cb: usize) -> Ordering {
        self.0.node.cmp(a, ca, b, cb)
    }

    /// True iff `t_i < 1` for every t-variable.
    pub fn is_t_local(&self) -> bool {
        let nv = self.ctx().nvars();
        let one = Monomial::one(nv, 0);
        (0..self.ctx().m()).all(|i| self.cmp(&Monomial::var(nv, i, 1), &one) == Ordering::Less)
    }

    /// The ordering on rank-1 elements over the same variables.
    pub fn scalar(&self) -> CompiledOrdering {
        if self.ctx().rank() == 1 {
            return self.clone();
        }
        self.0
            .scalar
            .get_or_init(|| match self.spec() {
                OrderingSpec::Schreyer { base, .. } => base.scalar(),
                spec => {
                    let ctx = self.ctx().with_rank(1);
                    CompiledOrdering::compile_unchecked(&spec.scalar_spec(&ctx), &ctx)
                        .expect("rank-1 restriction of a valid ordering")
                }
            })
            .clone()
    }

    /// The homogenization of this ordering on the context extended by a
    /// trailing homogenizing variable.
    pub fn homogenized(&self, grading: Grading) -> CompiledOrdering {
        let slot = match grading {
            Grading::X => 0,
            Grading::Full => 1,
        };
        self.0.homogenized[slot]
            .get_or_init(|| {
                let ctx = self.ctx().with_extra_x("x0");
                let spec = OrderingSpec::Homogenized {
                    base: Box::new(self.spec().clone()),
                    folded: grading == Grading::Full,
                };
                CompiledOrdering::compile_unchecked(&spec, &ctx)
                    .expect("homogenization of a valid ordering")
            })
            .clone()
    }

    /// The Schreyer ordering on the rank-`leads.len()` free module.
    pub fn schreyer(&self, leads: Vec<Monomial>) -> Result<CompiledOrdering> {
        if leads.is_empty() {
            return Err(Error::InvalidOrdering(
                "Schreyer ordering needs leads".into(),
            ));
        }
        let ctx = self.ctx().with_rank(leads.len());
        CompiledOrdering::compile(
            &OrderingSpec::Schreyer {
                base: self.clone(),
                leads,
            },
            &ctx,
        )
    }

    /// The same spec on another context (same variables up to denominators or rank).
    pub fn recompile(&self, ctx: &Arc<RingContext>) -> Result<CompiledOrdering> {
        CompiledOrdering::compile_unchecked(self.spec(), ctx)
    }

    pub fn same_as(&self, other: &CompiledOrdering) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.ctx() == other.ctx() && self.spec() == other.spec())
    }
}

impl PartialEq for CompiledOrdering {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for CompiledOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompiledOrdering({})", self.spec())
    }
}

/// `homogenized(ord)` as a free function.
pub fn homogenized(ord: &CompiledOrdering, grading: Grading) -> CompiledOrdering {
    ord.homogenized(grading)
}

pub fn compile(spec: &OrderingSpec, ctx: &Arc<RingContext>) -> Result<CompiledOrdering> {
    CompiledOrdering::compile(spec, ctx)
}

pub fn is_t_local(ord: &CompiledOrdering) -> bool {
    ord.is_t_local()
}
