//! s-polynomials, standard bases, leading modules and membership.

use std::collections::VecDeque;

use crate::division::dwr_remainder;
use crate::error::{Error, Result};
use crate::ordering::CompiledOrdering;
use crate::poly::PolyVector;
use crate::ring::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StdStatus {
    Unknown,
    Verified,
    Failed,
}

/// Nonzero generators sharing one ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    gens: Vec<PolyVector>,
    ord: CompiledOrdering,
    status: StdStatus,
}

impl GeneratorSet {
    /// Drops zero generators and re-sorts everything under `ord`.
    pub fn new(ord: &CompiledOrdering, gens: &[PolyVector]) -> Result<Self> {
        let gens = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.try_reorder(ord))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorSet {
            gens,
            ord: ord.clone(),
            status: StdStatus::Unknown,
        })
    }

    pub(crate) fn verified(ord: &CompiledOrdering, gens: Vec<PolyVector>) -> Self {
        GeneratorSet {
            gens,
            ord: ord.clone(),
            status: StdStatus::Verified,
        }
    }

    pub fn gens(&self) -> &[PolyVector] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<PolyVector> {
        self.gens
    }

    pub fn ord(&self) -> &CompiledOrdering {
        &self.ord
    }

    pub fn status(&self) -> StdStatus {
        self.status
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Runs the Buchberger check and records the outcome.
    pub fn verify(&mut self) -> Result<bool> {
        let ok = is_standard_basis(self)?;
        self.status = if ok {
            StdStatus::Verified
        } else {
            StdStatus::Failed
        };
        Ok(ok)
    }

    /// Every generator monic, in input order.
    pub fn monic_gens(&self) -> Vec<PolyVector> {
        self.gens.iter().map(|g| g.monic()).collect()
    }
}

/// `(lcm/lt(f))*f - (lcm/lt(g))*g`, zero when the leading components differ.
pub fn spoly(f: &PolyVector, g: &PolyVector) -> Result<PolyVector> {
    let (Some(ltf), Some(ltg)) = (f.lt(), g.lt()) else {
        return Err(Error::ZeroInput("s-polynomial"));
    };
    let g = g.try_reorder(f.ord())?;
    let Some(lcm) = ltf.mon.lcm(&ltg.mon) else {
        return Ok(PolyVector::zero(f.ord()));
    };
    let mf = ltf.mon.quotient_of(&lcm).unwrap();
    let mg = ltg.mon.quotient_of(&lcm).unwrap();
    let a = f.mul_term(&ltf.coeff.inv()?, &mf);
    let b = g.mul_term(&ltg.coeff.inv()?, &mg);
    Ok(&a - &b)
}

fn same_lead_component(f: &PolyVector, g: &PolyVector) -> bool {
    match (f.lm(), g.lm()) {
        (Some(a), Some(b)) => a.comp() == b.comp(),
        _ => false,
    }
}

/// Standard basis by the pair algorithm with a FIFO queue. The output starts
/// with the input generators; new elements are weak remainders appended in
/// the order found.
pub fn std(input: &GeneratorSet) -> Result<GeneratorSet> {
    let ord = input.ord();
    if !ord.is_t_local() {
        return Err(Error::OrderingNotTLocal);
    }
    let mut gens: Vec<PolyVector> = input.gens().to_vec();
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..gens.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    // initial pairs in lexicographic order (i, j)
    pairs.make_contiguous().sort();
    while let Some((i, j)) = pairs.pop_front() {
        if !same_lead_component(&gens[i], &gens[j]) {
            continue;
        }
        let s = spoly(&gens[i], &gens[j])?;
        if s.is_zero() {
            continue;
        }
        let r = dwr_remainder(&s, &gens, ord)?;
        if r.is_zero() {
            continue;
        }
        log::debug!("std: new generator {} from pair ({i}, {j})", gens.len() + 1);
        let k = gens.len();
        gens.push(r);
        for l in 0..k {
            pairs.push_back((l, k));
        }
    }
    Ok(GeneratorSet::verified(ord, gens))
}

/// True iff every s-polynomial has weak remainder zero.
pub fn is_standard_basis(set: &GeneratorSet) -> Result<bool> {
    let gens = set.gens();
    for j in 0..gens.len() {
        for i in 0..j {
            if !same_lead_component(&gens[i], &gens[j]) {
                continue;
            }
            let s = spoly(&gens[i], &gens[j])?;
            if !s.is_zero() && !dwr_remainder(&s, gens, set.ord())?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimal monomial generators of the leading module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingModule {
    pub gens: Vec<Monomial>,
}

impl LeadingModule {
    pub fn contains(&self, mon: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(mon))
    }
}

/// Leading monomials with non-minimal ones removed, sorted descending.
pub fn leading_module(set: &GeneratorSet) -> LeadingModule {
    let lms: Vec<Monomial> = set.gens().iter().filter_map(|g| g.lm().cloned()).collect();
    let mut keep: Vec<Monomial> = Vec::new();
    for (i, m) in lms.iter().enumerate() {
        let redundant = lms
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && other.divides(m) && (other != m || j < i));
        if !redundant {
            keep.push(m.clone());
        }
    }
    let ord = set.ord();
    keep.sort_by(|a, b| ord.cmp(b, a));
    LeadingModule { gens: keep }
}

/// Drops generators whose leading monomial is divisible by another one's.
pub fn minimalize(set: &GeneratorSet) -> GeneratorSet {
    let gens = set.gens();
    let keep: Vec<PolyVector> = gens
        .iter()
        .enumerate()
        .filter(|(i, g)| {
            let m = g.lm().unwrap();
            !gens.iter().enumerate().any(|(j, other)| {
                let o = other.lm().unwrap();
                j != *i && o.divides(m) && (o != m || j < *i)
            })
        })
        .map(|(_, g)| g.clone())
        .collect();
    GeneratorSet {
        gens: keep,
        ord: set.ord().clone(),
        status: set.status(),
    }
}

/// Membership in the span of an already verified standard basis.
pub fn member_of_std(f: &PolyVector, basis: &GeneratorSet) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(dwr_remainder(f, basis.gens(), basis.ord())?.is_zero())
}

/// Whether `f` lies in the submodule generated by `set` over the localization.
pub fn membership(f: &PolyVector, set: &GeneratorSet) -> Result<bool> {
    let basis = match set.status() {
        StdStatus::Verified => set.clone(),
        _ => std(set)?,
    };
    member_of_std(f, &basis)
}
