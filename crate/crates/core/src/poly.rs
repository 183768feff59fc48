//! Sparse elements of `K[t][x]^s` kept sorted under a compiled ordering.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::ordering::{CompiledOrdering, Grading};
use crate::ring::{Monomial, RingContext};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coefficient,
    pub mon: Monomial,
}

impl Term {
    pub fn new(coeff: Coefficient, mon: Monomial) -> Self {
        Term { coeff, mon }
    }
}

/// Leading monomial, coefficient, term and tail. All `None`/zero for `f = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingData {
    pub lm: Option<Monomial>,
    pub lc: Coefficient,
    pub lt: Option<Term>,
    pub tail: PolyVector,
}

/// A vector in `K[t][x]^s` (a polynomial when `s = 1`) as a strictly
/// descending sequence of nonzero terms.
#[derive(Clone)]
pub struct PolyVector {
    ord: CompiledOrdering,
    terms: Vec<Term>,
}

/// True when both contexts describe the same variables, field and denominator.
pub(crate) fn same_ring(a: &RingContext, b: &RingContext) -> bool {
    a.names() == b.names() && a.m() == b.m() && a.field() == b.field() && a.denom() == b.denom()
}

impl PolyVector {
    pub fn zero(ord: &CompiledOrdering) -> Self {
        PolyVector {
            ord: ord.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ord: &CompiledOrdering, c: Coefficient) -> Self {
        let nv = ord.ctx().nvars();
        Self::term(ord, c, Monomial::one(nv, 0))
    }

    pub fn one(ord: &CompiledOrdering) -> Self {
        Self::constant(ord, ord.ctx().field().one())
    }

    pub fn term(ord: &CompiledOrdering, c: Coefficient, mon: Monomial) -> Self {
        assert!(
            ord.ctx().field().contains(&c),
            "coefficient from another field"
        );
        assert!(mon.comp() < ord.ctx().rank(), "component out of range");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term::new(c, mon)]
        };
        PolyVector {
            ord: ord.clone(),
            terms,
        }
    }

    /// Sorts, merges equal monomials and drops zero coefficients.
    pub fn from_terms(ord: &CompiledOrdering, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.mon, &a.mon));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon => last.coeff = last.coeff.add(&t.coeff),
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(t)
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        PolyVector {
            ord: ord.clone(),
            terms: out,
        }
    }

    /// Assembles a vector from rank-1 components.
    pub fn from_components(ord: &CompiledOrdering, comps: &[PolyVector]) -> Self {
        assert_eq!(comps.len(), ord.ctx().rank(), "wrong number of components");
        let terms = comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms
                    .iter()
                    .map(move |t| Term::new(t.coeff.clone(), t.mon.with_comp(i)))
            })
            .collect();
        Self::from_terms(ord, terms)
    }

    pub fn ord(&self) -> &CompiledOrdering {
        &self.ord
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        self.ord.ctx()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn lc(&self) -> Option<&Coefficient> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn lt(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn tail(&self) -> PolyVector {
        PolyVector {
            ord: self.ord.clone(),
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    pub fn leading_data(&self) -> LeadingData {
        LeadingData {
            lm: self.lm().cloned(),
            lc: self
                .lc()
                .cloned()
                .unwrap_or_else(|| self.ctx().field().zero()),
            lt: self.lt().cloned(),
            tail: self.tail(),
        }
    }

    /// True for the constant polynomial 1 (component 0).
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].coeff.is_one()
            && self.terms[0].mon.is_one()
            && self.terms[0].mon.comp() == 0
    }

    /// The same element sorted under another ordering of the same ring.
    pub fn reorder(&self, ord: &CompiledOrdering) -> PolyVector {
        self.try_reorder(ord).expect("reorder across rings")
    }

    pub fn try_reorder(&self, ord: &CompiledOrdering) -> Result<PolyVector> {
        if !same_ring(self.ctx(), ord.ctx()) || self.ctx().rank() != ord.ctx().rank() {
            return Err(Error::ContextMismatch(
                "reorder needs the same ring".to_string(),
            ));
        }
        if self.ord.same_as(ord) {
            return Ok(self.clone());
        }
        Ok(Self::from_terms(ord, self.terms.clone()))
    }

    fn check_same(&self, other: &PolyVector) -> Result<()> {
        if self.ctx() != other.ctx() {
            return Err(Error::ContextMismatch(format!(
                "operands over {:?} and {:?}",
                self.ctx().names(),
                other.ctx().names()
            )));
        }
        Ok(())
    }

    fn merge(&self, other: &PolyVector, negate: bool) -> PolyVector {
        let other = if self.ord.same_as(&other.ord) {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.reorder(&self.ord))
        };
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let take_b = |t: &Term| {
            if negate {
                Term::new(t.coeff.neg(), t.mon.clone())
            } else {
                t.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match self.ord.cmp(&a[i].mon, &b[j].mon) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(take_b(&b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].coeff.sub(&b[j].coeff)
                    } else {
                        a[i].coeff.add(&b[j].coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term::new(c, a[i].mon.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(take_b));
        PolyVector {
            ord: self.ord.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &PolyVector) -> Result<PolyVector> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &PolyVector) -> Result<PolyVector> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> PolyVector {
        PolyVector {
            ord: self.ord.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.neg(), t.mon.clone()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Coefficient) -> PolyVector {
        assert!(
            self.ctx().field().contains(c),
            "coefficient from another field"
        );
        if c.is_zero() {
            return PolyVector::zero(&self.ord);
        }
        PolyVector {
            ord: self.ord.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.mul(c), t.mon.clone()))
                .collect(),
        }
    }

    /// Multiplies by the term `c * mon` where `mon` is a scalar monomial.
    /// Orderings are compatible with multiplication, so no re-sort is needed.
    pub fn mul_term(&self, c: &Coefficient, mon: &Monomial) -> PolyVector {
        if c.is_zero() {
            return PolyVector::zero(&self.ord);
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term::new(t.coeff.mul(c), mon.mul(&t.mon)))
            .collect();
        debug_assert!(terms
            .windows(2)
            .all(|w| self.ord.cmp(&w[0].mon, &w[1].mon) == Ordering::Greater));
        PolyVector {
            ord: self.ord.clone(),
            terms,
        }
    }

    /// Product with a rank-1 polynomial `p` over the same variables.
    pub fn try_mul_by_poly(&self, p: &PolyVector) -> Result<PolyVector> {
        if !same_ring(self.ctx(), p.ctx()) || p.ctx().rank() != 1 {
            return Err(Error::ContextMismatch(
                "multiplier must be a rank-1 polynomial over the same ring".into(),
            ));
        }
        Ok(self.mul_by_poly(p))
    }

    pub fn mul_by_poly(&self, p: &PolyVector) -> PolyVector {
        debug_assert!(same_ring(self.ctx(), p.ctx()) && p.ctx().rank() == 1);
        if p.is_zero() || self.is_zero() {
            return PolyVector::zero(&self.ord);
        }
        if p.terms.len() == 1 {
            return self.mul_term(&p.terms[0].coeff, &p.terms[0].mon);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * p.terms.len());
        for a in &p.terms {
            for b in &self.terms {
                terms.push(Term::new(a.coeff.mul(&b.coeff), a.mon.mul(&b.mon)));
            }
        }
        Self::from_terms(&self.ord, terms)
    }

    /// `self + c * mon * g`, the workhorse of reductions.
    pub fn add_scaled(&self, c: &Coefficient, mon: &Monomial, g: &PolyVector) -> PolyVector {
        self.merge(&g.mul_term(c, mon), false)
    }

    pub fn deg(&self, grading: Grading) -> Option<u32> {
        let m = self.ctx().m();
        self.terms
            .iter()
            .map(|t| match grading {
                Grading::X => t.mon.deg_x(m),
                Grading::Full => t.mon.degree(),
            })
            .max()
    }

    /// Maximal x-degree, `None` for zero.
    pub fn deg_x(&self) -> Option<u32> {
        self.deg(Grading::X)
    }

    pub fn is_homogeneous(&self, grading: Grading) -> bool {
        let m = self.ctx().m();
        let mut degs = self.terms.iter().map(|t| match grading {
            Grading::X => t.mon.deg_x(m),
            Grading::Full => t.mon.degree(),
        });
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_x_homogeneous(&self) -> bool {
        self.is_homogeneous(Grading::X)
    }

    /// Component `i` as a rank-1 polynomial.
    pub fn component(&self, i: usize) -> PolyVector {
        let ord = self.ord.scalar();
        PolyVector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.mon.comp() == i)
                .map(|t| Term::new(t.coeff.clone(), t.mon.with_comp(0)))
                .collect::<Vec<_>>(),
            ord,
        }
        .resorted_if_needed()
    }

    fn resorted_if_needed(self) -> PolyVector {
        let sorted = self
            .terms
            .windows(2)
            .all(|w| self.ord.cmp(&w[0].mon, &w[1].mon) == Ordering::Greater);
        if sorted {
            self
        } else {
            Self::from_terms(&self.ord, self.terms)
        }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Term) -> bool) -> PolyVector {
        PolyVector {
            ord: self.ord.clone(),
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    /// Rewrites every monomial and re-normalizes under `ord` (which may live
    /// over a different context with the same field).
    pub fn map_monomials(
        &self,
        ord: &CompiledOrdering,
        f: impl Fn(&Monomial) -> Monomial,
    ) -> PolyVector {
        Self::from_terms(
            ord,
            self.terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), f(&t.mon)))
                .collect(),
        )
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> PolyVector {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scalar_mul(&c.inv().expect("nonzero leading coefficient")),
        }
    }
}

impl PartialEq for PolyVector {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx() != other.ctx() {
            return false;
        }
        if self.ord.same_as(&other.ord) {
            return self.terms == other.terms;
        }
        let mut a = self.terms.clone();
        let mut b = other.terms.clone();
        a.sort_by(|x, y| x.mon.cmp(&y.mon));
        b.sort_by(|x, y| x.mon.cmp(&y.mon));
        a == b
    }
}

impl Eq for PolyVector {}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyVector({self})")
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_poly(self))
    }
}

impl Add for &PolyVector {
    type Output = PolyVector;
    fn add(self, rhs: &PolyVector) -> PolyVector {
        self.try_add(rhs).expect("context mismatch in addition")
    }
}

impl Sub for &PolyVector {
    type Output = PolyVector;
    fn sub(self, rhs: &PolyVector) -> PolyVector {
        self.try_sub(rhs).expect("context mismatch in subtraction")
    }
}

impl Neg for &PolyVector {
    type Output = PolyVector;
    fn neg(self) -> PolyVector {
        PolyVector::neg(self)
    }
}

/// `vector * scalar polynomial` (either operand may be the rank-1 one).
impl Mul for &PolyVector {
    type Output = PolyVector;
    fn mul(self, rhs: &PolyVector) -> PolyVector {
        if rhs.ctx().rank() == 1 {
            self.try_mul_by_poly(rhs)
                .expect("context mismatch in product")
        } else {
            rhs.try_mul_by_poly(self)
                .expect("context mismatch in product")
        }
    }
}

/// `deg_x` as a free function; `None` stands for the degree of zero.
pub fn deg_x(f: &PolyVector) -> Option<u32> {
    f.deg_x()
}

pub fn is_x_homogeneous(f: &PolyVector) -> bool {
    f.is_x_homogeneous()
}

pub fn leading_data(f: &PolyVector, ord: &CompiledOrdering) -> LeadingData {
    f.reorder(ord).leading_data()
}
