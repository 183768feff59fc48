//! w-initial forms, t-initial forms and t-initial ideals over one t-variable
//! with fractional exponents `t^(a/N)`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ordering::{CompiledOrdering, GlobalKind, OrderingSpec};
use crate::poly::{PolyVector, Term};
use crate::ring::{Monomial, RingContext};
use crate::stdbasis::{std, GeneratorSet};

/// `(w_0, w_1, .., w_n)` with `w_0 < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVectorW(Vec<BigRational>);

impl WeightVectorW {
    pub fn new(w: Vec<BigRational>) -> Result<Self> {
        match w.first() {
            None => Err(Error::InvalidOrdering("empty weight vector".into())),
            Some(w0) if !w0.is_negative() => Err(Error::InvalidOrdering(
                "the t-weight w_0 must be negative".into(),
            )),
            Some(_) => Ok(WeightVectorW(w)),
        }
    }

    pub fn from_ints(w: &[i64]) -> Result<Self> {
        Self::new(
            w.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    fn check(&self, ctx: &RingContext) -> Result<()> {
        if ctx.m() != 1 {
            return Err(Error::InvalidRing(
                "t-initial forms need exactly one t-variable".into(),
            ));
        }
        if self.0.len() != 1 + ctx.n() {
            return Err(Error::InvalidOrdering(format!(
                "weight vector has length {}, expected {}",
                self.0.len(),
                1 + ctx.n()
            )));
        }
        Ok(())
    }
}

fn degree_of(mon: &Monomial, w: &WeightVectorW, denom: u32) -> BigRational {
    let e = mon.exps();
    let mut d = &w.0[0] * BigRational::new(e[0].into(), denom.into());
    for (wi, &b) in w.0[1..].iter().zip(&e[1..]) {
        if b != 0 {
            d += wi * BigRational::from_integer(b.into());
        }
    }
    d
}

/// `w . (alpha/N, beta)` for the term `t^alpha x^beta`.
pub fn w_degree(term: &Term, w: &WeightVectorW, ctx: &RingContext) -> Result<BigRational> {
    w.check(ctx)?;
    Ok(degree_of(&term.mon, w, ctx.denom()))
}

/// The largest w-degree among the terms of `f`.
pub fn ord_w(f: &PolyVector, w: &WeightVectorW) -> Result<BigRational> {
    w.check(f.ctx())?;
    let denom = f.ctx().denom();
    f.terms()
        .iter()
        .map(|t| degree_of(&t.mon, w, denom))
        .max()
        .ok_or(Error::ZeroInput("w-order"))
}

/// The terms of `f` of maximal w-degree, t-powers kept.
pub fn in_w(f: &PolyVector, w: &WeightVectorW) -> Result<PolyVector> {
    let top = ord_w(f, w)?;
    let denom = f.ctx().denom();
    Ok(f.filter_terms(|t| degree_of(&t.mon, w, denom) == top))
}

/// The ordering used for t-initial forms: `global` on the x-variables alone.
pub fn x_ordering(ctx: &RingContext, global: GlobalKind) -> Result<CompiledOrdering> {
    let xctx = ctx.x_only()?;
    CompiledOrdering::compile(&OrderingSpec::TLocal(global), &xctx)
}

/// `IN_w(f)` with `t = 1`, as an element of `K[x]` under degrevlex.
pub fn tin_w(f: &PolyVector, w: &WeightVectorW) -> Result<PolyVector> {
    let xord = x_ordering(f.ctx(), GlobalKind::DegRevLex)?;
    tin_w_in(f, w, &xord)
}

fn tin_w_in(f: &PolyVector, w: &WeightVectorW, xord: &CompiledOrdering) -> Result<PolyVector> {
    let init = in_w(f, w)?;
    Ok(init.map_monomials(xord, |m| Monomial::new(&m.exps()[1..], m.comp())))
}

/// Generators of the t-initial ideal of `<gens>`: a standard basis under the
/// ordering `tw(w ; global)`, each element mapped by `tin_w`. Output is monic,
/// deduplicated and sorted by leading monomial, largest first.
pub fn tinitial_ideal(
    ctx: &Arc<RingContext>,
    gens: &[PolyVector],
    w: &WeightVectorW,
    global: GlobalKind,
) -> Result<Vec<PolyVector>> {
    w.check(ctx)?;
    if ctx.rank() != 1 {
        return Err(Error::Unsupported(
            "t-initial ideals are implemented for ideals (rank 1)".into(),
        ));
    }
    let ord = CompiledOrdering::compile(&OrderingSpec::tinitial(w.as_slice(), global), ctx)?;
    let basis = std(&GeneratorSet::new(&ord, gens)?)?;
    let xord = x_ordering(ctx, global)?;
    let mut out: Vec<PolyVector> = Vec::new();
    for g in basis.gens() {
        let h = tin_w_in(g, w, &xord)?.monic();
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| {
        xord.cmp(b.lm().unwrap(), a.lm().unwrap())
            .then_with(|| b.len().cmp(&a.len()))
            .then_with(|| crate::parse::format_poly(a).cmp(&crate::parse::format_poly(b)))
    });
    Ok(out)
}

/// The same element over the denominator `N*factor`: every t-exponent is
/// multiplied by `factor`, so the value as a Puiseux polynomial is unchanged.
pub fn rescale(f: &PolyVector, factor: u32) -> Result<PolyVector> {
    if factor == 0 {
        return Err(Error::Unsupported("rescale factor must be positive".into()));
    }
    let ctx = f.ctx();
    let denom = ctx
        .denom()
        .checked_mul(factor)
        .ok_or_else(|| Error::Unsupported("denominator overflow".into()))?;
    let nctx = ctx.with_denom(denom);
    let ord = f.ord().recompile(&nctx)?;
    let m = ctx.m();
    let overflow = std::cell::Cell::new(false);
    let g = f.map_monomials(&ord, |mon| {
        let mut out = mon.clone();
        for e in &mut out.exps_mut()[..m] {
            match e.checked_mul(factor) {
                Some(v) => *e = v,
                None => overflow.set(true),
            }
        }
        out
    });
    if overflow.get() {
        return Err(Error::Unsupported("exponent overflow".into()));
    }
    Ok(g)
}
