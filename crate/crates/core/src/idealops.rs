//! Elimination, intersection, ideal quotient and saturation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ordering::{CompiledOrdering, OrderingSpec};
use crate::poly::PolyVector;
use crate::ring::{Monomial, RingContext};
use crate::stdbasis::{member_of_std, std, GeneratorSet};

/// Default bound on quotient steps in [`saturate`].
pub const SATURATION_CAP: usize = 1000;

/// Standard basis of `<gens>` intersected with the subring without
/// `drop_vars`, under `inner`. Uses a block ordering with the dropped
/// variables in a global block in front of `inner`.
pub fn eliminate(
    gens: &[PolyVector],
    drop_vars: &[String],
    inner: &CompiledOrdering,
) -> Result<GeneratorSet> {
    let ctx = inner.ctx();
    if drop_vars.is_empty() {
        return Err(Error::Unsupported("no variables to eliminate".into()));
    }
    let mut idx = Vec::new();
    for name in drop_vars {
        match ctx.var_index(name) {
            Some(i) if ctx.is_tvar(i) => return Err(Error::CannotEliminateLocal),
            Some(i) => idx.push(i),
            None => return Err(Error::Unsupported(format!("unknown variable `{name}`"))),
        }
    }
    let block = CompiledOrdering::compile(
        &OrderingSpec::Block {
            outer: drop_vars.to_vec(),
            inner: Box::new(inner.spec().clone()),
        },
        ctx,
    )?;
    let basis = std(&GeneratorSet::new(&block, gens)?)?;
    let kept: Vec<PolyVector> = basis
        .gens()
        .iter()
        .filter(|g| {
            let lm = g.lm().unwrap();
            idx.iter().all(|&i| lm.exps()[i] == 0)
        })
        .map(|g| g.reorder(inner))
        .collect();
    Ok(GeneratorSet::verified(inner, kept))
}

fn embed(f: &PolyVector, ord: &CompiledOrdering) -> PolyVector {
    f.map_monomials(ord, |m| {
        let mut exps: smallvec::SmallVec<[u32; 8]> = m.exps().iter().copied().collect();
        exps.push(0);
        Monomial::new(exps, m.comp())
    })
}

fn strip_last(f: &PolyVector, ord: &CompiledOrdering) -> PolyVector {
    let nv = ord.ctx().nvars();
    f.map_monomials(ord, |m| Monomial::new(&m.exps()[..nv], m.comp()))
}

/// Standard basis of `<a> ∩ <b>` via a tag variable `tau`: eliminate `tau`
/// from `<tau*a_i, (1 - tau)*b_j>`.
pub fn intersect(
    a: &[PolyVector],
    b: &[PolyVector],
    inner: &CompiledOrdering,
) -> Result<GeneratorSet> {
    let ctx: &Arc<RingContext> = inner.ctx();
    let tctx = ctx.with_extra_x("tau");
    let tau = tctx.names().last().unwrap().clone();
    let inner_t = CompiledOrdering::compile(&inner.spec().with_extra_x(ctx)?, &tctx)?;
    let a = a
        .iter()
        .map(|f| f.try_reorder(inner))
        .collect::<Result<Vec<_>>>()?;
    let b = b
        .iter()
        .map(|f| f.try_reorder(inner))
        .collect::<Result<Vec<_>>>()?;
    let sord = inner_t.scalar();
    let nv = tctx.nvars();
    let tau_poly = PolyVector::term(&sord, ctx.field().one(), Monomial::var(nv, nv - 1, 1));
    let one_minus_tau = &PolyVector::one(&sord) - &tau_poly;
    let mut gens = Vec::new();
    for f in &a {
        gens.push(embed(f, &inner_t).mul_by_poly(&tau_poly));
    }
    for g in &b {
        gens.push(embed(g, &inner_t).mul_by_poly(&one_minus_tau));
    }
    let elim = eliminate(&gens, &[tau], &inner_t)?;
    let back: Vec<PolyVector> = elim.gens().iter().map(|g| strip_last(g, inner)).collect();
    Ok(GeneratorSet::verified(inner, back))
}

/// `h / f` when `f` divides `h` in the polynomial ring.
fn exact_divide(h: &PolyVector, f: &PolyVector) -> Option<PolyVector> {
    let global = CompiledOrdering::compile_unchecked(&OrderingSpec::Global, h.ctx()).ok()?;
    let f = f.reorder(&global);
    let mut rem = h.reorder(&global);
    let lt = f.lt()?.clone();
    let inv = lt.coeff.inv().ok()?;
    let mut q = Vec::new();
    while let Some(t) = rem.lt().cloned() {
        let mon = lt.mon.quotient_of(&t.mon)?;
        let c = t.coeff.mul(&inv);
        rem = rem.add_scaled(&c.neg(), &mon, &f);
        q.push(crate::poly::Term::new(c, mon));
    }
    Some(PolyVector::from_terms(&global, q))
}

fn require_ideal(ord: &CompiledOrdering, what: &str) -> Result<()> {
    if ord.ctx().rank() != 1 {
        return Err(Error::Unsupported(format!(
            "{what} is implemented for ideals (rank 1)"
        )));
    }
    Ok(())
}

/// Standard basis of `<gens> : <f>`.
pub fn quotient(
    gens: &[PolyVector],
    f: &PolyVector,
    inner: &CompiledOrdering,
) -> Result<GeneratorSet> {
    require_ideal(inner, "quotient")?;
    if f.is_zero() {
        return Err(Error::Unsupported("quotient by the zero element".into()));
    }
    let f = f.try_reorder(inner)?;
    let meet = intersect(gens, std::slice::from_ref(&f), inner)?;
    let mut quotients = Vec::with_capacity(meet.len());
    for h in meet.gens() {
        let q = exact_divide(h, &f).ok_or_else(|| {
            Error::Internal("intersection element is not a multiple of the divisor".into())
        })?;
        quotients.push(q.reorder(inner));
    }
    std(&GeneratorSet::new(inner, &quotients)?)
}

/// Standard basis of `<gens> : <f>^infinity`, iterating quotients until the
/// ideal stops growing (at most `max_iter` steps).
pub fn saturate(
    gens: &[PolyVector],
    f: &PolyVector,
    inner: &CompiledOrdering,
    max_iter: usize,
) -> Result<GeneratorSet> {
    require_ideal(inner, "saturation")?;
    let mut cur = std(&GeneratorSet::new(inner, gens)?)?;
    for _ in 0..max_iter {
        let next = quotient(cur.gens(), f, inner)?;
        let mut stable = true;
        for g in next.gens() {
            if !member_of_std(g, &cur)? {
                stable = false;
                break;
            }
        }
        if stable {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::IterationLimit(max_iter))
}
