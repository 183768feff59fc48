//! Ring contexts and module monomials.

use std::sync::Arc;

use smallvec::SmallVec;

use crate::coeff::FieldSpec;
use crate::error::{Error, Result};

/// Description of `K[t_1..t_m][x_1..x_n]^s` where the t-exponents are
/// multiples of `1/denom`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    m: usize,
    n: usize,
    s: usize,
    field: FieldSpec,
    denom: u32,
    names: Vec<String>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: AsRef<str>>(
        field: FieldSpec,
        tvars: &[S],
        xvars: &[S],
        s: usize,
        denom: u32,
    ) -> Result<Arc<Self>> {
        let names: Vec<String> = tvars
            .iter()
            .chain(xvars.iter())
            .map(|v| v.as_ref().to_string())
            .collect();
        let ctx = RingContext {
            m: tvars.len(),
            n: xvars.len(),
            s,
            field,
            denom,
            names,
        };
        ctx.validate()?;
        Ok(Arc::new(ctx))
    }

    fn validate(&self) -> Result<()> {
        if self.m + self.n == 0 {
            return Err(Error::InvalidRing(
                "at least one variable is required".into(),
            ));
        }
        if self.s == 0 {
            return Err(Error::InvalidRing("rank must be at least 1".into()));
        }
        if self.denom == 0 {
            return Err(Error::InvalidRing("denominator must be at least 1".into()));
        }
        for (i, name) in self.names.iter().enumerate() {
            if !is_identifier(name) || name == "gen" {
                return Err(Error::InvalidRing(format!(
                    "invalid variable name `{name}`"
                )));
            }
            if self.names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of variables, `m + n`.
    pub fn nvars(&self) -> usize {
        self.m + self.n
    }

    pub fn rank(&self) -> usize {
        self.s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn tvars(&self) -> &[String] {
        &self.names[..self.m]
    }

    pub fn xvars(&self) -> &[String] {
        &self.names[self.m..]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }

    pub fn is_tvar(&self, index: usize) -> bool {
        index < self.m
    }

    pub fn with_rank(&self, s: usize) -> Arc<Self> {
        assert!(s >= 1, "rank must be at least 1");
        Arc::new(RingContext { s, ..self.clone() })
    }

    pub fn with_denom(&self, denom: u32) -> Arc<Self> {
        assert!(denom >= 1, "denominator must be at least 1");
        Arc::new(RingContext {
            denom,
            ..self.clone()
        })
    }

    /// Appends one x-variable with a name not already in use.
    pub fn with_extra_x(&self, preferred: &str) -> Arc<Self> {
        let mut name = preferred.to_string();
        while self.names.contains(&name) {
            name.push('_');
        }
        let mut names = self.names.clone();
        names.push(name);
        Arc::new(RingContext {
            n: self.n + 1,
            names,
            ..self.clone()
        })
    }

    /// Removes the last x-variable.
    pub fn without_last_x(&self) -> Result<Arc<Self>> {
        if self.n == 0 {
            return Err(Error::InvalidRing("no x-variable to remove".into()));
        }
        let ctx = RingContext {
            n: self.n - 1,
            names: self.names[..self.names.len() - 1].to_vec(),
            ..self.clone()
        };
        ctx.validate()?;
        Ok(Arc::new(ctx))
    }

    /// The polynomial ring in the x-variables alone (t set aside), denominator 1.
    pub fn x_only(&self) -> Result<Arc<Self>> {
        RingContext::new(self.field, &[] as &[String], self.xvars(), self.s, 1)
    }
}

pub type Exps = SmallVec<[u32; 8]>;

/// `t^alpha * x^beta * e_comp`, stored as one exponent vector (t-block first)
/// plus a 0-based component. Scalar monomials use component 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exps,
    comp: usize,
}

impl Monomial {
    pub fn new(exps: impl AsRef<[u32]>, comp: usize) -> Self {
        Monomial {
            exps: Exps::from_slice(exps.as_ref()),
            comp,
        }
    }

    pub fn one(nvars: usize, comp: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            comp,
        }
    }

    /// The single variable `index` to the power `e`.
    pub fn var(nvars: usize, index: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars, 0);
        m.exps[index] = e;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exps_mut(&mut self) -> &mut Exps {
        &mut self.exps
    }

    pub fn comp(&self) -> usize {
        self.comp
    }

    pub fn with_comp(&self, comp: usize) -> Self {
        Monomial {
            exps: self.exps.clone(),
            comp,
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Sum of exponents over the x-block (indices `m..`).
    pub fn deg_x(&self, m: usize) -> u32 {
        self.exps[m..].iter().sum()
    }

    /// Sum of the raw t-exponents (indices `..m`).
    pub fn deg_t(&self, m: usize) -> u32 {
        self.exps[..m].iter().sum()
    }

    /// Product; a scalar factor (component 0) takes the other's component.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
            comp: self.comp + other.comp,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.comp == other.comp && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// The scalar monomial `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(b, a)| b - a)
                .collect(),
            comp: 0,
        })
    }

    /// Componentwise maximum, or `None` (the zero monomial) when components differ.
    pub fn lcm(&self, other: &Monomial) -> Option<Monomial> {
        if self.comp != other.comp {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
            comp: self.comp,
        })
    }
}

pub fn monomial_divides(p: &Monomial, q: &Monomial) -> bool {
    p.divides(q)
}

pub fn monomial_lcm(p: &Monomial, q: &Monomial) -> Option<Monomial> {
    p.lcm(q)
}
