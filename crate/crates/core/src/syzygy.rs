//! Syzygies of a standard basis via the Schreyer ordering.

use crate::division::dwr;
use crate::error::{Error, Result};
use crate::ordering::CompiledOrdering;
use crate::poly::PolyVector;
use crate::stdbasis::{GeneratorSet, StdStatus};

/// The vectors `s_ij` in the free module with basis `eps_1..eps_k`, sorted
/// under the Schreyer ordering induced by the generators.
#[derive(Debug, Clone)]
pub struct Syzygies {
    pub ord: CompiledOrdering,
    pub pairs: Vec<(usize, usize)>,
    pub vectors: Vec<PolyVector>,
}

/// `s_ij = u*(m_ji/lc_i)*eps_i - u*(m_ij/lc_j)*eps_j - sum q_v*eps_v` for every
/// pair `i < j` with equal lead components, where
/// `u*spoly(g_i, g_j) = sum q_v*g_v` is the weak division by the basis.
///
/// With `must_be_std`, an unverified input is checked first and a failing
/// check is an error.
pub fn syz(set: &GeneratorSet, must_be_std: bool) -> Result<Syzygies> {
    if must_be_std && set.status() != StdStatus::Verified {
        let mut copy = set.clone();
        if !copy.verify()? {
            return Err(Error::NotStandardBasis);
        }
    }
    let gens = set.gens();
    let k = gens.len();
    if k == 0 {
        return Err(Error::Unsupported(
            "syzygies of an empty generator list".into(),
        ));
    }
    let leads: Vec<_> = gens.iter().map(|g| g.lm().unwrap().clone()).collect();
    let sord = set.ord().schreyer(leads)?;
    let scalar = set.ord().scalar();
    let mut pairs = Vec::new();
    let mut vectors = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let (lti, ltj) = (gens[i].lt().unwrap(), gens[j].lt().unwrap());
            let Some(lcm) = lti.mon.lcm(&ltj.mon) else {
                continue;
            };
            let m_ji = lti.mon.quotient_of(&lcm).unwrap();
            let m_ij = ltj.mon.quotient_of(&lcm).unwrap();
            let ci = PolyVector::term(&scalar, lti.coeff.inv()?, m_ji);
            let cj = PolyVector::term(&scalar, ltj.coeff.inv()?, m_ij);
            let s = &gens[i].mul_by_poly(&ci) - &gens[j].mul_by_poly(&cj);
            let div = dwr(&s, gens, set.ord())?;
            if !div.r.is_zero() {
                return Err(Error::NotStandardBasis);
            }
            let mut comps: Vec<PolyVector> = div.q.iter().map(|q| q.neg()).collect();
            comps[i] = &comps[i] + &(&ci * &div.u);
            comps[j] = &comps[j] - &(&cj * &div.u);
            pairs.push((i, j));
            vectors.push(PolyVector::from_components(&sord, &comps));
        }
    }
    Ok(Syzygies {
        ord: sord,
        pairs,
        vectors,
    })
}

/// `sum_i v_i * g_i` for a vector `v` over the generator basis.
pub fn apply(v: &PolyVector, gens: &[PolyVector]) -> PolyVector {
    let mut acc = PolyVector::zero(gens[0].ord());
    for (i, g) in gens.iter().enumerate() {
        let c = v.component(i);
        if !c.is_zero() {
            acc = &acc + &g.mul_by_poly(&c.reorder(&g.ord().scalar()));
        }
    }
    acc
}
