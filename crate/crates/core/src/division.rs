//! Homogenization, ecart, the homogeneous determinate division and Mora's
//! weak division with remainder.

use std::collections::BTreeSet;
use std::fmt;

use log::warn;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::ordering::CompiledOrdering;
pub use crate::ordering::Grading;
use crate::poly::{PolyVector, Term};
use crate::ring::Monomial;

/// Conditions a division `u*f = sum q_i*g_i + r` may satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `lm(f) >= lm(q_i*g_i)` for all i.
    ID1,
    /// `lm(g_i)` does not divide `lm(r)` unless `r = 0`.
    ID2,
    /// `lm(g_i)` does not divide `lm(r_j*e_j)` for any nonzero component `r_j`.
    SID2,
    /// For `j < i` no term of `q_i*lm(g_i)` is divisible by `lm(g_j)`.
    DD1,
    /// No term of `r` is divisible by any `lm(g_i)`.
    DD2,
    /// `q_i` and `r` are homogeneous of the degrees forced by `f` and `lm(g_i)`.
    DDH,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HddwrMode {
    /// Requires homogeneity in all variables; always terminates.
    Folded,
    /// Iterates until the running residual lies in `<t>^prec` (raw exponent
    /// units); the residual is returned separately.
    Truncated(u32),
}

/// `u*f - residual = sum q_i*g_i + r`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionResult {
    pub u: PolyVector,
    pub q: Vec<PolyVector>,
    pub r: PolyVector,
    pub residual: Option<PolyVector>,
    /// Grading in which the DDH condition is evaluated.
    pub grading: Grading,
}

/// A homogenized element over the context with one extra trailing variable.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogenizedPoly {
    pub poly: PolyVector,
    /// Degree of the original element; `None` for zero.
    pub source_degree: Option<u32>,
    pub grading: Grading,
    base: CompiledOrdering,
}

fn degree_of(mon: &Monomial, m: usize, grading: Grading) -> u32 {
    match grading {
        Grading::X => mon.deg_x(m),
        Grading::Full => mon.degree(),
    }
}

/// `deg(f) - deg(lm(f))` in the given grading; `f` must be nonzero.
fn ecart_in(f: &PolyVector, grading: Grading) -> u32 {
    let m = f.ctx().m();
    let lm = f.lm().expect("ecart of zero");
    f.deg(grading).unwrap() - degree_of(lm, m, grading)
}

/// `deg_x(f) - deg_x(lm(f))` under `ord`.
pub fn ecart(f: &PolyVector, ord: &CompiledOrdering) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroInput("ecart"));
    }
    Ok(ecart_in(&f.try_reorder(ord)?, Grading::X))
}

fn homogenize_to(f: &PolyVector, hord: &CompiledOrdering, grading: Grading) -> PolyVector {
    let Some(d) = f.deg(grading) else {
        return PolyVector::zero(hord);
    };
    let m = f.ctx().m();
    f.map_monomials(hord, |mon| {
        let mut exps = mon
            .exps()
            .iter()
            .copied()
            .collect::<smallvec::SmallVec<[u32; 8]>>();
        exps.push(d - degree_of(mon, m, grading));
        Monomial::new(exps, mon.comp())
    })
}

fn dehomogenize_to(f: &PolyVector, ord: &CompiledOrdering) -> PolyVector {
    let nv = ord.ctx().nvars();
    f.map_monomials(ord, |mon| Monomial::new(&mon.exps()[..nv], mon.comp()))
}

/// `x0^deg(f) * f(x/x0)`, with `deg` taken in `grading`.
pub fn homogenize(f: &PolyVector, grading: Grading) -> HomogenizedPoly {
    let hord = f.ord().homogenized(grading);
    HomogenizedPoly {
        poly: homogenize_to(f, &hord, grading),
        source_degree: f.deg(grading),
        grading,
        base: f.ord().clone(),
    }
}

/// Substitutes 1 for the homogenizing variable.
pub fn dehomogenize(h: &HomogenizedPoly) -> PolyVector {
    dehomogenize_to(&h.poly, &h.base)
}

struct DdOutput {
    q: Vec<PolyVector>,
    r: PolyVector,
    rest: PolyVector,
}

/// The determinate division iteration: each pass sends every term of the
/// running element to the first generator whose leading monomial divides it
/// (or to the remainder) and continues with `-sum q_{i,nu}*tail(g_i)`.
/// Stops when the running element is zero or `stop` accepts it.
fn determinate_division(
    f: &PolyVector,
    gs: &[&PolyVector],
    stop: impl Fn(&PolyVector) -> bool,
) -> Result<DdOutput> {
    const MAX_PASSES: usize = 1_000_000;
    let ord = f.ord();
    let sord = ord.scalar();
    let leads: Vec<(&Monomial, Coefficient)> = gs
        .iter()
        .map(|g| {
            let lt = g.lt().expect("nonzero divisor");
            (
                &lt.mon,
                lt.coeff.inv().expect("nonzero leading coefficient"),
            )
        })
        .collect();
    let tails: Vec<PolyVector> = gs.iter().map(|g| g.tail()).collect();
    let mut q: Vec<PolyVector> = gs.iter().map(|_| PolyVector::zero(&sord)).collect();
    let mut r = PolyVector::zero(ord);
    let mut cur = f.clone();
    let mut passes = 0;
    while !cur.is_zero() && !stop(&cur) {
        passes += 1;
        if passes > MAX_PASSES {
            return Err(Error::Internal(
                "determinate division did not converge".into(),
            ));
        }
        let mut qn: Vec<Vec<Term>> = vec![Vec::new(); gs.len()];
        let mut rn: Vec<Term> = Vec::new();
        for t in cur.terms() {
            match leads.iter().position(|(lm, _)| lm.divides(&t.mon)) {
                Some(i) => {
                    let (lm, inv) = &leads[i];
                    qn[i].push(Term::new(
                        t.coeff.mul(inv),
                        lm.quotient_of(&t.mon).expect("divisible"),
                    ));
                }
                None => rn.push(t.clone()),
            }
        }
        let mut next: Vec<Term> = Vec::new();
        for (i, terms) in qn.into_iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            for qt in &terms {
                for tt in tails[i].terms() {
                    next.push(Term::new(
                        qt.coeff.mul(&tt.coeff).neg(),
                        qt.mon.mul(&tt.mon),
                    ));
                }
            }
            q[i] = &q[i] + &PolyVector::from_terms(&sord, terms);
        }
        if !rn.is_empty() {
            r = &r + &PolyVector::from_terms(ord, rn);
        }
        cur = PolyVector::from_terms(ord, next);
    }
    Ok(DdOutput { q, r, rest: cur })
}

fn prepare(
    f: &PolyVector,
    gs: &[PolyVector],
    ord: &CompiledOrdering,
) -> Result<(PolyVector, Vec<PolyVector>)> {
    let f = f.try_reorder(ord)?;
    let gs = gs
        .iter()
        .map(|g| g.try_reorder(ord))
        .collect::<Result<Vec<_>>>()?;
    Ok((f, gs))
}

/// Homogeneous determinate division with remainder (`u = 1`).
///
/// `f` and every `g_i` must be x-homogeneous; `Folded` additionally requires
/// homogeneity in all variables. Zero divisors are rejected.
pub fn hddwr(
    f: &PolyVector,
    gs: &[PolyVector],
    ord: &CompiledOrdering,
    mode: HddwrMode,
) -> Result<DivisionResult> {
    let (f, gs) = prepare(f, gs, ord)?;
    if let Some(i) = gs.iter().position(|g| g.is_zero()) {
        return Err(Error::ZeroGenerator(i + 1));
    }
    let gradings: &[Grading] = match mode {
        HddwrMode::Folded => &[Grading::X, Grading::Full],
        HddwrMode::Truncated(_) => &[Grading::X],
    };
    for &grading in gradings {
        let what = match grading {
            Grading::X => "x-homogeneous",
            Grading::Full => "homogeneous in all variables",
        };
        if !f.is_homogeneous(grading) {
            return Err(Error::NotHomogeneous(format!("dividend is not {what}")));
        }
        if let Some(i) = gs.iter().position(|g| !g.is_homogeneous(grading)) {
            return Err(Error::NotHomogeneous(format!(
                "divisor {} is not {what}",
                i + 1
            )));
        }
    }
    let refs: Vec<&PolyVector> = gs.iter().collect();
    let m = ord.ctx().m();
    let out = match mode {
        HddwrMode::Folded => determinate_division(&f, &refs, |_| false)?,
        HddwrMode::Truncated(prec) => determinate_division(&f, &refs, |cur| {
            cur.terms().iter().all(|t| t.mon.deg_t(m) >= prec)
        })?,
    };
    Ok(DivisionResult {
        u: PolyVector::one(&ord.scalar()),
        q: out.q,
        r: out.r,
        residual: match mode {
            HddwrMode::Folded => None,
            HddwrMode::Truncated(_) => Some(out.rest),
        },
        grading: Grading::X,
    })
}

enum Origin {
    Input(usize),
    /// An intermediate `h` with `h = v*f - sum a_i*g_i`.
    Appended {
        v: PolyVector,
        a: Vec<PolyVector>,
    },
}

struct Reducer {
    poly: PolyVector,
    hom: PolyVector,
    ecart: u32,
    origin: Origin,
}

/// Mora's weak division with remainder.
///
/// Returns `u*f = sum q_i*g_i + r` with `lt(u) = 1`, satisfying ID1 and ID2.
/// t-variables are folded into the polynomial ring for degrees, ecart and
/// homogenization, which guarantees termination. Zero divisors are skipped.
pub fn dwr(f: &PolyVector, gs: &[PolyVector], ord: &CompiledOrdering) -> Result<DivisionResult> {
    if !ord.is_t_local() {
        return Err(Error::OrderingNotTLocal);
    }
    let (f, gs) = prepare(f, gs, ord)?;
    for (i, g) in gs.iter().enumerate() {
        if g.is_zero() {
            warn!("division: dropping zero divisor {}", i + 1);
        }
    }
    Ok(dwr_tracked(&f, &gs))
}

fn dwr_tracked(f: &PolyVector, gs: &[PolyVector]) -> DivisionResult {
    let (r, tracked) = dwr_prepared(f, gs, true);
    let (u, q) = tracked.expect("tracking requested");
    DivisionResult {
        u,
        q,
        r,
        residual: None,
        grading: Grading::X,
    }
}

/// The remainder of [`dwr`] alone, skipping the bookkeeping for `u` and `q`.
pub fn dwr_remainder(
    f: &PolyVector,
    gs: &[PolyVector],
    ord: &CompiledOrdering,
) -> Result<PolyVector> {
    if !ord.is_t_local() {
        return Err(Error::OrderingNotTLocal);
    }
    let (f, gs) = prepare(f, gs, ord)?;
    Ok(dwr_prepared(&f, &gs, false).0)
}

/// Returns the remainder and, when `track` is set, `(u, q)`.
fn dwr_prepared(
    f: &PolyVector,
    gs: &[PolyVector],
    track: bool,
) -> (PolyVector, Option<(PolyVector, Vec<PolyVector>)>) {
    let ord = f.ord();
    let sord = ord.scalar();
    let hord = ord.homogenized(Grading::Full);
    let hsord = hord.scalar();
    let nvh = hord.ctx().nvars();
    let mut reducers: Vec<Reducer> = Vec::new();
    for (i, g) in gs.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        reducers.push(Reducer {
            poly: g.clone(),
            hom: homogenize_to(g, &hord, Grading::Full),
            ecart: ecart_in(g, Grading::Full),
            origin: Origin::Input(i),
        });
    }
    let mut v = PolyVector::one(&sord);
    let mut a: Vec<PolyVector> = gs.iter().map(|_| PolyVector::zero(&sord)).collect();
    let mut h = f.clone();
    let mut scale = ord.ctx().field().one();
    let rational = ord.ctx().field().characteristic() == 0;
    while let Some(lm_h) = h.lm() {
        let Some(min_ecart) = reducers
            .iter()
            .filter(|red| red.poly.lm().unwrap().divides(lm_h))
            .map(|red| red.ecart)
            .min()
        else {
            break;
        };
        let eh = ecart_in(&h, Grading::Full);
        let hh = homogenize_to(&h, &hord, Grading::Full);
        let (coeffs, next, append) = if min_ecart > eh {
            // Divide x0^e * h^h by the leading terms of all reducers.
            let shift = Monomial::var(nvh, nvh - 1, min_ecart - eh);
            let big = hh.mul_term(&hord.ctx().field().one(), &shift);
            let mut qs: Vec<Vec<Term>> = vec![Vec::new(); reducers.len()];
            for t in big.terms() {
                if let Some(j) = reducers
                    .iter()
                    .position(|red| red.hom.lm().unwrap().divides(&t.mon))
                {
                    let lt = reducers[j].hom.lt().unwrap();
                    qs[j].push(Term::new(
                        t.coeff.div(&lt.coeff),
                        lt.mon.quotient_of(&t.mon).unwrap(),
                    ));
                }
            }
            let coeffs: Vec<PolyVector> = qs
                .into_iter()
                .map(|terms| dehomogenize_to(&PolyVector::from_terms(&hsord, terms), &sord))
                .collect();
            let mut next = h.clone();
            for (c, red) in coeffs.iter().zip(&reducers) {
                if !c.is_zero() {
                    next = &next - &red.poly.mul_by_poly(c);
                }
            }
            (coeffs, next, true)
        } else {
            let homs: Vec<&PolyVector> = reducers.iter().map(|red| &red.hom).collect();
            let out = determinate_division(&hh, &homs, |_| false)
                .expect("folded homogeneous division terminates");
            let coeffs = out.q.iter().map(|q| dehomogenize_to(q, &sord)).collect();
            (coeffs, dehomogenize_to(&out.r, ord), false)
        };
        if append {
            reducers.push(Reducer {
                hom: hh,
                ecart: eh,
                poly: h.clone(),
                origin: Origin::Appended {
                    v: v.clone(),
                    a: a.clone(),
                },
            });
        }
        if track {
            for (c, red) in coeffs.iter().zip(&reducers) {
                if c.is_zero() {
                    continue;
                }
                match &red.origin {
                    Origin::Input(i) => a[*i] = &a[*i] + c,
                    Origin::Appended { v: vj, a: aj } => {
                        v = &v - &(vj * c);
                        for (ai, aji) in a.iter_mut().zip(aj) {
                            if !aji.is_zero() {
                                *ai = &*ai - &(aji * c);
                            }
                        }
                    }
                }
            }
        }
        h = next;
        // Over QQ keep h monic against coefficient growth. Every step is linear
        // in h and unaffected by rescaled reducers, so only the accumulated
        // factor has to be undone at the end.
        if let Some(lc) = h.lc().filter(|c| rational && !c.is_one()) {
            let s = lc.inv().expect("nonzero leading coefficient");
            h = h.scalar_mul(&s);
            scale = scale.mul(&s);
            if track {
                v = v.scalar_mul(&s);
                for ai in &mut a {
                    *ai = ai.scalar_mul(&s);
                }
            }
        }
    }
    let back = scale.inv().expect("nonzero scale");
    let h = h.scalar_mul(&back);
    let tracked = track.then(|| {
        let q = a.iter().map(|ai| ai.scalar_mul(&back)).collect();
        (v.scalar_mul(&back), q)
    });
    (h, tracked)
}

/// Weak division whose remainder also satisfies SID2: the leading monomial
/// of every nonzero component of `r` avoids all `lm(g_i)`.
pub fn dwr_strong(
    f: &PolyVector,
    gs: &[PolyVector],
    ord: &CompiledOrdering,
) -> Result<DivisionResult> {
    if !ord.is_t_local() {
        return Err(Error::OrderingNotTLocal);
    }
    let (f, gs) = prepare(f, gs, ord)?;
    let active: Vec<bool> = gs.iter().map(|g| !g.is_zero()).collect();
    let excluded = vec![false; ord.ctx().rank()];
    Ok(strong_rec(&f, &gs, &active, &excluded))
}

fn project(p: &PolyVector, excluded: &[bool]) -> PolyVector {
    p.filter_terms(|t| !excluded[t.mon.comp()])
}

/// One level of the per-component recursion. `gs` are already projected away
/// from the excluded components; inactive generators get quotient zero.
fn strong_rec(
    f: &PolyVector,
    gs: &[PolyVector],
    active: &[bool],
    excluded: &[bool],
) -> DivisionResult {
    let sord = f.ord().scalar();
    let used: Vec<PolyVector> = gs
        .iter()
        .zip(active)
        .map(|(g, &on)| {
            if on {
                g.clone()
            } else {
                PolyVector::zero(g.ord())
            }
        })
        .collect();
    let base = dwr_tracked(f, &used);
    let Some(lead) = base.r.lm() else {
        return base;
    };
    let j = lead.comp();
    let mut excluded2 = excluded.to_vec();
    excluded2[j] = true;
    if excluded2.iter().all(|&e| e) {
        return base;
    }
    let active2: Vec<bool> = gs
        .iter()
        .zip(active)
        .map(|(g, &on)| on && g.lm().is_some_and(|lm| lm.comp() != j))
        .collect();
    let gs2: Vec<PolyVector> = gs.iter().map(|g| project(g, &excluded2)).collect();
    let inner = strong_rec(&project(&base.r, &excluded2), &gs2, &active2, &excluded2);
    // u*u'*f = sum (u'*q_i + q_i')*g_i + (u'*r - sum q_i'*g_i)
    let u = &base.u * &inner.u;
    let q: Vec<PolyVector> = base
        .q
        .iter()
        .zip(&inner.q)
        .map(|(qi, qi2)| &(qi * &inner.u) + qi2)
        .collect();
    let mut r = base.r.mul_by_poly(&inner.u);
    for (g, qi2) in gs.iter().zip(&inner.q) {
        if !qi2.is_zero() {
            r = &r - &g.mul_by_poly(qi2);
        }
    }
    debug_assert!(u.ord().same_as(&sord));
    DivisionResult {
        u,
        q,
        r,
        residual: None,
        grading: Grading::X,
    }
}

/// Verifies the identity of `res` exactly and returns the satisfied conditions.
pub fn check_conditions(
    f: &PolyVector,
    gs: &[PolyVector],
    res: &DivisionResult,
    ord: &CompiledOrdering,
) -> Result<BTreeSet<Condition>> {
    let (f, gs) = prepare(f, gs, ord)?;
    let sord = ord.scalar();
    if res.q.len() != gs.len() {
        return Err(Error::NotADivision(format!(
            "{} quotients for {} divisors",
            res.q.len(),
            gs.len()
        )));
    }
    let u = res.u.try_reorder(&sord)?;
    let q = res
        .q
        .iter()
        .map(|qi| qi.try_reorder(&sord))
        .collect::<Result<Vec<_>>>()?;
    let r = res.r.try_reorder(ord)?;
    let mut lhs = f.mul_by_poly(&u);
    if let Some(rest) = &res.residual {
        lhs = &lhs - &rest.try_reorder(ord)?;
    }
    let products: Vec<PolyVector> = gs.iter().zip(&q).map(|(g, qi)| g.mul_by_poly(qi)).collect();
    let mut rhs = r.clone();
    for p in &products {
        rhs = &rhs + p;
    }
    if lhs != rhs {
        return Err(Error::NotADivision(
            "u*f differs from sum q_i*g_i + r".into(),
        ));
    }
    let unit = u.lt().is_some_and(|t| t.mon.is_one() && t.coeff.is_one());
    if !unit {
        return Err(Error::NotADivision("leading term of u is not 1".into()));
    }

    let leads: Vec<Option<&Monomial>> = gs.iter().map(|g| g.lm()).collect();
    let divides_any = |mon: &Monomial| leads.iter().flatten().any(|l| l.divides(mon));
    let mut out = BTreeSet::new();

    let id1 = products.iter().all(|p| match (p.lm(), f.lm()) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(lp), Some(lf)) => ord.cmp(lf, lp) != std::cmp::Ordering::Less,
    });
    if id1 {
        out.insert(Condition::ID1);
    }
    if r.lm().is_none_or(|lr| !divides_any(lr)) {
        out.insert(Condition::ID2);
    }
    let sid2 = (0..ord.ctx().rank()).all(|j| {
        r.terms()
            .iter()
            .find(|t| t.mon.comp() == j)
            .is_none_or(|t| !divides_any(&t.mon))
    });
    if sid2 {
        out.insert(Condition::SID2);
    }
    let dd1 = q.iter().enumerate().all(|(i, qi)| {
        let Some(li) = leads[i] else { return true };
        qi.terms().iter().all(|t| {
            let mon = t.mon.mul(li);
            leads[..i].iter().flatten().all(|lj| !lj.divides(&mon))
        })
    });
    if dd1 {
        out.insert(Condition::DD1);
    }
    if r.terms().iter().all(|t| !divides_any(&t.mon)) {
        out.insert(Condition::DD2);
    }
    if ddh_holds(&f, &leads, &q, &r, res.grading) {
        out.insert(Condition::DDH);
    }
    Ok(out)
}

fn ddh_holds(
    f: &PolyVector,
    leads: &[Option<&Monomial>],
    q: &[PolyVector],
    r: &PolyVector,
    grading: Grading,
) -> bool {
    let m = f.ctx().m();
    if !f.is_homogeneous(grading) {
        return false;
    }
    let Some(d) = f.deg(grading) else {
        return q.iter().all(|qi| qi.is_zero()) && r.is_zero();
    };
    let q_ok = q.iter().zip(leads).all(|(qi, lead)| {
        if qi.is_zero() {
            return true;
        }
        let Some(lead) = lead else { return false };
        let want = d as i64 - degree_of(lead, m, grading) as i64;
        qi.is_homogeneous(grading) && qi.deg(grading).map(|e| e as i64) == Some(want)
    });
    q_ok && (r.is_zero() || (r.is_homogeneous(grading) && r.deg(grading) == Some(d)))
}
