//! Seeded random instances and a naive Buchberger oracle shared by the
//! integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tstd::{
    Coefficient, CompiledOrdering, FieldSpec, Monomial, OrderingSpec, PolyVector, RingContext, Term,
};

pub const PRIME: u64 = 32003;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fields() -> [FieldSpec; 2] {
    [FieldSpec::Rationals, FieldSpec::prime(PRIME).unwrap()]
}

pub fn ring(field: FieldSpec, m: usize, n: usize, s: usize, denom: u32) -> Arc<RingContext> {
    let t: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
    let x: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    RingContext::new(field, &t, &x, s, denom).unwrap()
}

pub fn compile(spec: &OrderingSpec, ctx: &Arc<RingContext>) -> CompiledOrdering {
    CompiledOrdering::compile(spec, ctx).unwrap()
}

pub fn coeff(rng: &mut ChaCha8Rng, field: FieldSpec) -> Coefficient {
    loop {
        let c = match field {
            FieldSpec::Rationals => {
                let num: i64 = rng.gen_range(-6..=6);
                let den: i64 = if rng.gen_bool(0.2) {
                    rng.gen_range(2..=4)
                } else {
                    1
                };
                field
                    .from_ratio(&BigInt::from(num), &BigInt::from(den))
                    .unwrap()
            }
            FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        };
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn monomial(rng: &mut ChaCha8Rng, ctx: &RingContext, max_deg: u32) -> Monomial {
    let nv = ctx.nvars();
    let mut exps = vec![0u32; nv];
    if nv > 0 {
        let d = rng.gen_range(0..=max_deg);
        for _ in 0..d {
            exps[rng.gen_range(0..nv)] += 1;
        }
    }
    for e in &mut exps[..ctx.m()] {
        *e *= ctx.denom();
    }
    Monomial::new(exps, rng.gen_range(0..ctx.rank()))
}

pub fn poly(
    rng: &mut ChaCha8Rng,
    ord: &CompiledOrdering,
    max_terms: usize,
    max_deg: u32,
) -> PolyVector {
    let ctx = ord.ctx();
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| Term::new(coeff(rng, ctx.field()), monomial(rng, ctx, max_deg)))
        .collect();
    PolyVector::from_terms(ord, terms)
}

pub fn nonzero_poly(
    rng: &mut ChaCha8Rng,
    ord: &CompiledOrdering,
    max_terms: usize,
    max_deg: u32,
) -> PolyVector {
    loop {
        let p = poly(rng, ord, max_terms, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A rank-1 element under the scalar restriction of `ord`.
pub fn scalar_poly(
    rng: &mut ChaCha8Rng,
    ord: &CompiledOrdering,
    max_terms: usize,
    max_deg: u32,
) -> PolyVector {
    let sord = ord.scalar();
    nonzero_poly(rng, &sord, max_terms, max_deg)
}

/// Homogeneous in x of degree `d` (t-powers arbitrary up to `max_t`).
pub fn x_homogeneous(
    rng: &mut ChaCha8Rng,
    ord: &CompiledOrdering,
    d: u32,
    max_t: u32,
    max_terms: usize,
) -> PolyVector {
    let ctx = ord.ctx();
    let (m, n) = (ctx.m(), ctx.n());
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<Term> = (0..k)
            .map(|_| {
                let mut exps = vec![0u32; m + n];
                for _ in 0..d {
                    exps[m + rng.gen_range(0..n)] += 1;
                }
                if m > 0 {
                    for _ in 0..rng.gen_range(0..=max_t) {
                        exps[rng.gen_range(0..m)] += ctx.denom();
                    }
                }
                Term::new(
                    coeff(rng, ctx.field()),
                    Monomial::new(exps, rng.gen_range(0..ctx.rank())),
                )
            })
            .collect();
        let p = PolyVector::from_terms(ord, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Every term has x-degree `dx` and raw t-degree `dt`, so the element is
/// homogeneous both in x alone and in all variables.
pub fn bihomogeneous(
    rng: &mut ChaCha8Rng,
    ord: &CompiledOrdering,
    dx: u32,
    dt: u32,
    max_terms: usize,
) -> PolyVector {
    let ctx = ord.ctx();
    let (m, n) = (ctx.m(), ctx.n());
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<Term> = (0..k)
            .map(|_| {
                let mut exps = vec![0u32; m + n];
                for _ in 0..dx {
                    exps[m + rng.gen_range(0..n)] += 1;
                }
                for _ in 0..dt {
                    exps[rng.gen_range(0..m)] += 1;
                }
                Term::new(
                    coeff(rng, ctx.field()),
                    Monomial::new(exps, rng.gen_range(0..ctx.rank())),
                )
            })
            .collect();
        let p = PolyVector::from_terms(ord, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

// ---- dense oracle --------------------------------------------------------

/// Rational polynomial as a map from (exponents, component) to coefficient.
pub type Dense = BTreeMap<(Vec<u32>, usize), BigRational>;

pub fn to_dense(f: &PolyVector) -> Dense {
    f.terms()
        .iter()
        .map(|t| {
            (
                (t.mon.exps().to_vec(), t.mon.comp()),
                t.coeff
                    .as_rational()
                    .expect("rational coefficients")
                    .clone(),
            )
        })
        .collect()
}

fn insert(map: &mut Dense, key: (Vec<u32>, usize), c: BigRational) {
    let e = map.entry(key.clone()).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

pub fn dense_add(a: &Dense, b: &Dense, sign: i64) -> Dense {
    let mut out = a.clone();
    for (k, v) in b {
        insert(
            &mut out,
            k.clone(),
            v * BigRational::from_integer(sign.into()),
        );
    }
    out
}

/// Product of a scalar `a` (component 0) with `b`, or of two scalars.
pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for ((ea, ca), va) in a {
        for ((eb, cb), vb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            insert(&mut out, (e, ca + cb), va * vb);
        }
    }
    out
}

// ---- naive Buchberger over Q[x] with degrevlex ----------------------------

pub type Naive = BTreeMap<Vec<u32>, BigRational>;

pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn naive_lead(f: &Naive) -> Option<(&Vec<u32>, &BigRational)> {
    f.iter().max_by(|x, y| degrevlex(x.0, y.0))
}

fn naive_sub_mul(f: &mut Naive, c: &BigRational, m: &[u32], g: &Naive) {
    for (e, v) in g {
        let key: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
        let entry = f.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry -= c * v;
        if entry.is_zero() {
            f.remove(&key);
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction of `f` by `gs` (textbook multivariate division).
pub fn naive_reduce(f: &Naive, gs: &[Naive]) -> Naive {
    let mut p = f.clone();
    let mut rem = Naive::new();
    while let Some((e, c)) = naive_lead(&p).map(|(e, c)| (e.clone(), c.clone())) {
        let mut reduced = false;
        for g in gs {
            let (ge, gc) = naive_lead(g).unwrap();
            if divides(ge, &e) {
                let m: Vec<u32> = e.iter().zip(ge).map(|(a, b)| a - b).collect();
                naive_sub_mul(&mut p, &(&c / gc), &m, g);
                reduced = true;
                break;
            }
        }
        if !reduced {
            p.remove(&e);
            rem.insert(e, c);
        }
    }
    rem
}

pub fn naive_buchberger(input: &[Naive]) -> Vec<Naive> {
    let mut gs: Vec<Naive> = input.iter().filter(|g| !g.is_empty()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..gs.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (ei, ci) = naive_lead(&gs[i])
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let (ej, cj) = naive_lead(&gs[j])
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let lcm: Vec<u32> = ei.iter().zip(&ej).map(|(a, b)| *a.max(b)).collect();
        let mi: Vec<u32> = lcm.iter().zip(&ei).map(|(a, b)| a - b).collect();
        let mj: Vec<u32> = lcm.iter().zip(&ej).map(|(a, b)| a - b).collect();
        let mut s = Naive::new();
        naive_sub_mul(&mut s, &-(BigRational::one() / &ci), &mi, &gs[i]);
        naive_sub_mul(&mut s, &(BigRational::one() / &cj), &mj, &gs[j]);
        let r = naive_reduce(&s, &gs);
        if !r.is_empty() {
            let k = gs.len();
            gs.push(r);
            for l in 0..k {
                pairs.push((l, k));
            }
        }
    }
    gs
}

/// Minimal generators of the monomial ideal spanned by `lms`, sorted.
pub fn minimal_monomials(mut lms: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    lms.sort();
    lms.dedup();
    let keep: Vec<Vec<u32>> = lms
        .iter()
        .filter(|m| !lms.iter().any(|o| o != *m && divides(o, m)))
        .cloned()
        .collect();
    keep
}

pub fn to_naive(f: &PolyVector) -> Naive {
    to_dense(f).into_iter().map(|((e, _), c)| (e, c)).collect()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---- CLI fixture cases ------------------------------------------------------

pub fn fixture_session() -> String {
    format!("{}/tests/fixtures/session.tst", env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_dir() -> String {
    format!("{}/tests/golden", env!("CARGO_MANIFEST_DIR"))
}

/// `(golden file stem, arguments after the binary name)`, one or more per
/// subcommand.
pub fn cli_cases() -> Vec<(&'static str, Vec<String>)> {
    let s = fixture_session();
    let case = |name: &'static str, args: &[&str]| -> (&'static str, Vec<String>) {
        let mut v: Vec<String> = vec![args[0].to_string(), s.clone()];
        v.extend(args[1..].iter().map(|a| a.to_string()));
        (name, v)
    };
    vec![
        case("std", &["std", "--ideal", "L"]),
        case("std_reduce", &["std", "--ideal", "L", "--reduce"]),
        case("check_true", &["check", "--ideal", "I"]),
        case("check_false", &["check", "--ideal", "L"]),
        case("nf_mora", &["nf", "--ideal", "J", "--poly", "t"]),
        case(
            "nf_strong",
            &[
                "nf", "--ideal", "L", "--poly", "x^3 + y", "--mode", "strong",
            ],
        ),
        case(
            "hddwr_fixture",
            &["hddwr", "--ideal", "D", "--poly", "x^2", "--prec", "10"],
        ),
        case(
            "hddwr_folded",
            &["hddwr", "--ideal", "X", "--poly", "t*x^2 + t*x*y"],
        ),
        case(
            "error_not_homogeneous",
            &["hddwr", "--ideal", "X", "--poly", "x^2 + t*x"],
        ),
        case(
            "hddwr_truncated",
            &["hddwr", "--ideal", "H", "--poly", "x", "--prec", "4"],
        ),
        case("member_true", &["member", "--ideal", "K", "--poly", "x"]),
        case("member_false", &["member", "--ideal", "X", "--poly", "y"]),
        case("syz", &["syz", "--ideal", "L"]),
        case("eliminate", &["eliminate", "--ideal", "I", "--vars", "x"]),
        case("intersect", &["intersect", "--ideal", "X", "--other", "J"]),
        case("quotient", &["quotient", "--ideal", "T", "--by", "t"]),
        case("saturate", &["saturate", "--ideal", "T", "--by", "t"]),
        case("tinitial", &["tinitial", "--ideal", "L", "--w", "-1,0,0"]),
        case(
            "tinitial_denom",
            &[
                "tinitial", "--ideal", "I", "--w", "-1,-1,0", "--denom", "2", "--global", "lex",
            ],
        ),
        case(
            "order_override",
            &["std", "--ideal", "L", "--order", "ws(-1,1,2) lex"],
        ),
        case(
            "error_not_local",
            &["std", "--ideal", "L", "--order", "ws(1,1,1) lex"],
        ),
        case(
            "error_bad_poly",
            &["member", "--ideal", "I", "--poly", "x +* y"],
        ),
    ]
}

/// Runs the binary and renders `exit=N` followed by stdout.
pub fn run_cli(args: &[String]) -> String {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_tstd"))
        .args(args)
        .env_remove("TSTD_MAX_ITER")
        .output()
        .expect("run tstd");
    format!(
        "exit={}\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout)
    )
}
