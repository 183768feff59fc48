//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All checks are exact; counts and budgets are pinned below.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tstd::division::check_conditions;
use tstd::idealops::{intersect, quotient, saturate, SATURATION_CAP};
use tstd::parse::parse_poly;
use tstd::stdbasis::{is_standard_basis, leading_module, membership, std};
use tstd::syzygy::{apply, syz};
use tstd::tropical::{in_w, rescale, tin_w, tinitial_ideal, x_ordering, WeightVectorW};
use tstd::{
    dwr, hddwr, CompiledOrdering, Condition, FieldSpec, GeneratorSet, GlobalKind, HddwrMode,
    Monomial, OrderingSpec, PolyVector,
};

const DIVISIONS_PER_FIELD: usize = 1000;
const DIVISION_BUDGET: Duration = Duration::from_secs(60);
const HDDWR_INSTANCES: usize = 500;
const STD_IDEALS: usize = 200;
const ORACLE_IDEALS: usize = 50;
const SCHREYER_BASES: usize = 100;
const SCHREYER_SELF_CHECK_MAX_K: usize = 4;
const IDEALOP_RANDOM: usize = 100;
const TIN_PAIRS: usize = 500;
const TIN_COMBINATIONS: usize = 100;
const TROPICAL_FIXTURES: usize = 20;
const MAX_PREC: u32 = 8;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn lex_tx() -> CompiledOrdering {
    let ctx = tstd::RingContext::new(FieldSpec::Rationals, &["t"], &["x", "y"], 1, 1).unwrap();
    CompiledOrdering::compile(&OrderingSpec::lex(), &ctx).unwrap()
}

fn p(o: &CompiledOrdering, s: &str) -> PolyVector {
    parse_poly(s, o).unwrap()
}

fn same_span(o: &CompiledOrdering, a: &[PolyVector], b: &[PolyVector]) -> Result<bool, String> {
    let sa = ok(GeneratorSet::new(o, a), "set")?;
    let sb = ok(GeneratorSet::new(o, b), "set")?;
    for g in a {
        if !ok(membership(g, &sb), "membership")? {
            return Ok(false);
        }
    }
    for g in b {
        if !ok(membership(g, &sa), "membership")? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random small setting as in the division suite.
fn random_setting(rng: &mut ChaCha8Rng, field: FieldSpec, weighted: bool) -> CompiledOrdering {
    let m = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=3);
    let s = rng.gen_range(1..=2);
    let ctx = common::ring(field, m, n, s, 1);
    let spec = if weighted {
        let w: Vec<i64> = (0..m).map(|_| -1).chain((0..n).map(|_| 1)).collect();
        OrderingSpec::weighted(&w, OrderingSpec::lex())
    } else {
        OrderingSpec::lex()
    };
    common::compile(&spec, &ctx)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for (fi, field) in common::fields().into_iter().enumerate() {
        let mut rng = common::rng(1000 + fi as u64);
        for i in 0..DIVISIONS_PER_FIELD {
            let ord = random_setting(&mut rng, field, i % 2 == 1);
            let k = rng.gen_range(1..=3);
            let gs: Vec<PolyVector> = (0..k)
                .map(|_| common::nonzero_poly(&mut rng, &ord, 3, 5))
                .collect();
            let f = common::poly(&mut rng, &ord, 4, 5);
            let res = ok(dwr(&f, &gs, &ord), "dwr")?;
            let conds = check_conditions(&f, &gs, &res, &ord)
                .map_err(|e| format!("instance {i} over {field}: {e}"))?;
            ensure(
                conds.contains(&Condition::ID1) && conds.contains(&Condition::ID2),
                || format!("instance {i} over {field}: conditions {conds:?}"),
            )?;
            let unit = res
                .u
                .lt()
                .is_some_and(|t| t.mon.is_one() && t.coeff.is_one());
            ensure(unit, || format!("instance {i}: lt(u) != 1"))?;
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < DIVISION_BUDGET, || {
        format!("{total} divisions took {elapsed:?}, budget {DIVISION_BUDGET:?}")
    })?;
    Ok(format!(
        "{total} divisions exact, ID1+ID2 hold, {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = common::rng(2000);
    for i in 0..HDDWR_INSTANCES {
        let field = common::fields()[i % 2];
        let folded = i % 4 < 2;
        let ord = random_setting(&mut rng, field, i % 3 == 0);
        let k = rng.gen_range(1..=3);
        let (f, gs, mode) = if folded {
            let gs: Vec<PolyVector> = (0..k)
                .map(|_| {
                    let (dx, dt) = (rng.gen_range(1..=2), rng.gen_range(0..=2));
                    common::bihomogeneous(&mut rng, &ord, dx, dt, 3)
                })
                .collect();
            let (dx, dt) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            (
                common::bihomogeneous(&mut rng, &ord, dx, dt, 4),
                gs,
                HddwrMode::Folded,
            )
        } else {
            let gs: Vec<PolyVector> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..=3);
                    common::x_homogeneous(&mut rng, &ord, d, 2, 3)
                })
                .collect();
            let d = rng.gen_range(1..=4);
            let prec = rng.gen_range(1..=6);
            (
                common::x_homogeneous(&mut rng, &ord, d, 2, 4),
                gs,
                HddwrMode::Truncated(prec),
            )
        };
        let a = ok(hddwr(&f, &gs, &ord, mode), "hddwr")?;
        let b = ok(hddwr(&f, &gs, &ord, mode), "hddwr")?;
        ensure(a == b, || format!("instance {i}: rerun differs"))?;
        let conds =
            check_conditions(&f, &gs, &a, &ord).map_err(|e| format!("instance {i}: {e}"))?;
        for c in [Condition::DD1, Condition::DD2, Condition::DDH] {
            ensure(conds.contains(&c), || {
                format!("instance {i} ({mode:?}): {c} fails, got {conds:?}")
            })?;
        }
    }
    let o = lex_tx();
    let res = ok(
        hddwr(
            &p(&o, "x^2"),
            &[p(&o, "x - t*y")],
            &o,
            HddwrMode::Truncated(10),
        ),
        "fixture",
    )?;
    let exact = res.residual.as_ref().is_none_or(|r| r.is_zero());
    ensure(
        exact && res.q == [p(&o, "x + t*y")] && res.r == p(&o, "t^2*y^2"),
        || {
            format!(
                "fixture gave q = {:?}, r = {}",
                res.q.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                res.r
            )
        },
    )?;
    Ok(format!(
        "{HDDWR_INSTANCES} instances satisfy DD1, DD2, DDH and rerun identically; fixture exact"
    ))
}

fn criterion_3() -> Outcome {
    let o = lex_tx();
    let res = ok(dwr(&p(&o, "t"), &[p(&o, "t - t^2")], &o), "dwr")?;
    ensure(
        res.u == p(&o, "1 - t") && res.q == [p(&o, "1")] && res.r.is_zero(),
        || format!("dwr(t, [t - t^2]) = ({}, {:?}, {})", res.u, res.q, res.r),
    )?;
    let set = ok(GeneratorSet::new(&o, &[p(&o, "x - t*x")]), "set")?;
    ensure(ok(membership(&p(&o, "x"), &set), "membership")?, || {
        "x not in <x - t*x>".into()
    })?;
    Ok("dwr(t, [t - t^2]) = (1 - t, [1], 0); x in <x - t*x>".into())
}

fn criterion_4() -> Outcome {
    let mut rng = common::rng(4000);
    let mut appended = 0;
    for i in 0..STD_IDEALS {
        let field = common::fields()[i % 2];
        let ord = random_setting(&mut rng, field, i % 2 == 1);
        let k = rng.gen_range(1..=3);
        let gens: Vec<PolyVector> = (0..k)
            .map(|_| common::nonzero_poly(&mut rng, &ord, 3, 5))
            .collect();
        let input = ok(GeneratorSet::new(&ord, &gens), "set")?;
        let basis = ok(std(&input), "std")?;
        appended += basis.len() - input.len();
        ensure(ok(is_standard_basis(&basis), "check")?, || {
            format!("ideal {i}: Buchberger check fails")
        })?;
    }
    let o = lex_tx();
    let input = ok(
        GeneratorSet::new(&o, &[p(&o, "x - t"), p(&o, "y - t")]),
        "set",
    )?;
    let basis = ok(std(&input), "std")?;
    ensure(basis.gens() == input.gens(), || {
        "std(x - t, y - t) added generators".into()
    })?;
    ensure(ok(is_standard_basis(&input), "check")?, || {
        "fixture fails check".into()
    })?;
    Ok(format!(
        "{STD_IDEALS} bases closed ({appended} generators appended); fixture unchanged"
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(5000);
    for i in 0..ORACLE_IDEALS {
        let n = rng.gen_range(1..=3);
        let ctx = common::ring(FieldSpec::Rationals, 0, n, 1, 1);
        let ord = common::compile(&OrderingSpec::TLocal(GlobalKind::DegRevLex), &ctx);
        let k = rng.gen_range(1..=4);
        let gens: Vec<PolyVector> = (0..k)
            .map(|_| common::nonzero_poly(&mut rng, &ord, 3, 4))
            .collect();
        let basis = ok(std(&ok(GeneratorSet::new(&ord, &gens), "set")?), "std")?;
        let ours = common::minimal_monomials(
            leading_module(&basis)
                .gens
                .iter()
                .map(|m| m.exps().to_vec())
                .collect(),
        );
        let naive_in: Vec<common::Naive> = gens.iter().map(common::to_naive).collect();
        let oracle = common::naive_buchberger(&naive_in);
        let theirs = common::minimal_monomials(
            oracle
                .iter()
                .map(|g| common::naive_lead(g).unwrap().0.clone())
                .collect(),
        );
        ensure(ours == theirs, || {
            format!("ideal {i}: {ours:?} vs oracle {theirs:?}")
        })?;
    }
    Ok(format!(
        "{ORACLE_IDEALS} leading ideals match the naive oracle"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6000);
    let mut vectors = 0;
    let mut self_checked = 0;
    let mut bases = 0;
    while bases < SCHREYER_BASES {
        let field = common::fields()[bases % 2];
        let ord = random_setting(&mut rng, field, bases % 2 == 1);
        let k = rng.gen_range(2..=3);
        let gens: Vec<PolyVector> = (0..k)
            .map(|_| common::nonzero_poly(&mut rng, &ord, 3, 3))
            .collect();
        let basis = ok(std(&ok(GeneratorSet::new(&ord, &gens), "set")?), "std")?;
        if basis.len() > 6 {
            continue;
        }
        bases += 1;
        let out = ok(syz(&basis, true), "syz")?;
        let g = basis.gens();
        for ((i, j), v) in out.pairs.iter().zip(&out.vectors) {
            ensure(apply(v, g).is_zero(), || {
                format!("s_{i}{j} does not annihilate G")
            })?;
            let li = g[*i].lm().unwrap();
            let lj = g[*j].lm().unwrap();
            let lcm = li.lcm(lj).unwrap();
            let mji = li.quotient_of(&lcm).unwrap();
            let expected = Monomial::new(mji.exps(), *i);
            ensure(v.lm() == Some(&expected), || {
                format!("lm(s_{i}{j}) = {:?}, expected {expected:?}", v.lm())
            })?;
            vectors += 1;
        }
        if basis.len() <= SCHREYER_SELF_CHECK_MAX_K && !out.vectors.is_empty() {
            let set = ok(GeneratorSet::new(&out.ord, &out.vectors), "set")?;
            ensure(ok(is_standard_basis(&set), "check")?, || {
                "syzygies fail the Buchberger check".into()
            })?;
            self_checked += 1;
        }
    }
    Ok(format!(
        "{vectors} syzygies over {SCHREYER_BASES} bases annihilate with the predicted lm; {self_checked} sets self-verified"
    ))
}

fn criterion_7() -> Outcome {
    let o = lex_tx();
    let t = p(&o, "t");
    let i = ok(
        intersect(&[p(&o, "x")], std::slice::from_ref(&t), &o),
        "intersect",
    )?;
    ensure(same_span(&o, i.gens(), &[p(&o, "t*x")])?, || {
        "<x> ∩ <t> != <t*x>".into()
    })?;
    let q = ok(quotient(&[p(&o, "t*x")], &p(&o, "x"), &o), "quotient")?;
    ensure(same_span(&o, q.gens(), std::slice::from_ref(&t))?, || {
        "<t*x> : <x> != <t>".into()
    })?;
    let s = ok(
        saturate(&[p(&o, "t*x")], &t, &o, SATURATION_CAP),
        "saturate",
    )?;
    ensure(same_span(&o, s.gens(), &[p(&o, "x")])?, || {
        "<t*x> : t^inf != <x>".into()
    })?;
    let s = ok(
        saturate(&[p(&o, "t^2*x"), p(&o, "t*y")], &t, &o, SATURATION_CAP),
        "saturate",
    )?;
    ensure(same_span(&o, s.gens(), &[p(&o, "x"), p(&o, "y")])?, || {
        "<t^2*x, t*y> : t^inf != <x, y>".into()
    })?;

    let mut rng = common::rng(7000);
    for n in 0..IDEALOP_RANDOM {
        let k = rng.gen_range(1..=2);
        let gens: Vec<PolyVector> = (0..k)
            .map(|_| common::nonzero_poly(&mut rng, &o, 3, 3))
            .collect();
        let f = if n % 3 == 2 {
            common::nonzero_poly(&mut rng, &o, 2, 1)
        } else {
            t.clone()
        };
        let sat = ok(saturate(&gens, &f, &o, SATURATION_CAP), "saturate")?;
        for g in &gens {
            ensure(ok(membership(g, &sat), "membership")?, || {
                format!("ideal {n}: I not inside I : f^inf")
            })?;
        }
        let again = ok(saturate(sat.gens(), &f, &o, SATURATION_CAP), "saturate")?;
        ensure(leading_module(&sat) == leading_module(&again), || {
            format!("ideal {n}: saturation not idempotent")
        })?;
    }
    Ok(format!(
        "four identities hold; containment and idempotence on {IDEALOP_RANDOM} random ideals"
    ))
}

fn random_w(rng: &mut ChaCha8Rng, n: usize) -> WeightVectorW {
    let mut w = vec![-rng.gen_range(1..=3i64)];
    w.extend((0..n).map(|_| rng.gen_range(-2..=2i64)));
    WeightVectorW::from_ints(&w).unwrap()
}

fn tropical_ring(denom: u32) -> CompiledOrdering {
    let ctx = common::ring(FieldSpec::Rationals, 1, 2, 1, denom);
    common::compile(&OrderingSpec::lex(), &ctx)
}

fn tin_span_equal(
    a: &[PolyVector],
    b: &[PolyVector],
    xord: &CompiledOrdering,
) -> Result<bool, String> {
    same_span(xord, a, b)
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8000);
    for i in 0..TIN_PAIRS {
        let o = tropical_ring(1 + (i % 2) as u32);
        let w = random_w(&mut rng, 2);
        let f = common::nonzero_poly(&mut rng, &o, 4, 3);
        let g = common::nonzero_poly(&mut rng, &o, 4, 3);
        let fg = &f * &g;
        let lhs = ok(tin_w(&fg, &w), "tin")?;
        let rhs = &ok(tin_w(&f, &w), "tin")? * &ok(tin_w(&g, &w), "tin")?;
        ensure(lhs == rhs, || {
            format!("pair {i}: tin(fg) = {lhs}, tin(f)tin(g) = {rhs}")
        })?;
        let lhs = ok(in_w(&fg, &w), "in_w")?;
        let rhs = &ok(in_w(&f, &w), "in_w")? * &ok(in_w(&g, &w), "in_w")?;
        ensure(lhs == rhs, || format!("pair {i}: IN_w not multiplicative"))?;
    }

    let o = tropical_ring(1);
    let ctx = o.ctx().clone();
    let xord = ok(x_ordering(&ctx, GlobalKind::DegRevLex), "x ordering")?;
    let q = |s: &str| parse_poly(s, &o).unwrap();
    let show = |v: &[PolyVector]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let w100 = WeightVectorW::from_ints(&[-1, 0, 0]).unwrap();
    let got = ok(
        tinitial_ideal(&ctx, &[q("x1 + x2 + t1")], &w100, GlobalKind::DegRevLex),
        "tinitial",
    )?;
    ensure(show(&got) == ["x1 + x2"], || {
        format!("tin_(-1,0,0)<x+y+t> = {:?}", show(&got))
    })?;
    let w110 = WeightVectorW::from_ints(&[-1, -1, 0]).unwrap();
    let got = ok(tin_w(&q("x1 + x2 + t1"), &w110), "tin")?;
    ensure(got.to_string() == "x2", || {
        format!("tin_(-1,-1,0)(x+y+t) = {got}")
    })?;
    let o1 = {
        let c = common::ring(FieldSpec::Rationals, 1, 1, 1, 1);
        common::compile(&OrderingSpec::lex(), &c)
    };
    let got = ok(
        tin_w(
            &p(&o1, "x1^2 + t1*x1 + t1^3"),
            &WeightVectorW::from_ints(&[-1, -1]).unwrap(),
        ),
        "tin",
    )?;
    ensure(got.to_string() == "x1^2 + x1", || {
        format!("tin_(-1,-1)(x^2+tx+t^3) = {got}")
    })?;

    for n in 0..TIN_COMBINATIONS {
        let w = random_w(&mut rng, 2);
        let k = rng.gen_range(1..=2);
        let gens: Vec<PolyVector> = (0..k)
            .map(|_| common::nonzero_poly(&mut rng, &o, 3, 2))
            .collect();
        let tins = ok(
            tinitial_ideal(&ctx, &gens, &w, GlobalKind::DegRevLex),
            "tinitial",
        )?;
        let mut h = PolyVector::zero(&o);
        for g in &gens {
            let a = common::nonzero_poly(&mut rng, &o, 2, 2);
            h = &h + &(&a * g);
        }
        if h.is_zero() {
            continue;
        }
        let th = ok(tin_w(&h, &w), "tin")?;
        let set = ok(GeneratorSet::new(&xord, &tins), "set")?;
        ensure(ok(membership(&th, &set), "membership")?, || {
            format!("combination {n}: tin(h) = {th} not in {:?}", show(&tins))
        })?;
    }

    let o2 = tropical_ring(2);
    for n in 0..TROPICAL_FIXTURES {
        let w = random_w(&mut rng, 2);
        let k = rng.gen_range(1..=2);
        let gens: Vec<PolyVector> = (0..k)
            .map(|_| common::nonzero_poly(&mut rng, &o, 3, 2))
            .collect();
        let base = ok(
            tinitial_ideal(&ctx, &gens, &w, GlobalKind::DegRevLex),
            "tinitial",
        )?;
        let scaled: Vec<PolyVector> = gens
            .iter()
            .map(|g| rescale(g, 2).unwrap().reorder(&o2))
            .collect();
        let fine = ok(
            tinitial_ideal(o2.ctx(), &scaled, &w, GlobalKind::DegRevLex),
            "tinitial",
        )?;
        ensure(tin_span_equal(&base, &fine, &xord)?, || {
            format!(
                "fixture {n}: N vs 2N differ: {:?} vs {:?}",
                show(&base),
                show(&fine)
            )
        })?;
        let unit = |v: &[PolyVector]| v.iter().any(|g| g.is_one());
        ensure(unit(&base) == unit(&fine), || {
            format!("fixture {n}: unit detection differs")
        })?;

        let sat = ok(saturate(&gens, &q("t1"), &o, SATURATION_CAP), "saturate")?;
        let via_sat = ok(
            tinitial_ideal(&ctx, sat.gens(), &w, GlobalKind::DegRevLex),
            "tinitial",
        )?;
        ensure(tin_span_equal(&base, &via_sat, &xord)?, || {
            format!("fixture {n}: saturation changes the t-initial ideal")
        })?;
    }
    Ok(format!(
        "{TIN_PAIRS} multiplicative pairs; fixtures exact; {TIN_COMBINATIONS} combinations; {TROPICAL_FIXTURES} rescale and saturation fixtures"
    ))
}

fn criterion_9() -> Outcome {
    let ctx = common::ring(FieldSpec::Rationals, 1, 1, 1, 1);
    let o = common::compile(&OrderingSpec::lex(), &ctx);
    let f = p(&o, "x1");
    let g = p(&o, "x1 - t1*x1");
    for prec in 1..=MAX_PREC {
        let res = ok(
            hddwr(&f, std::slice::from_ref(&g), &o, HddwrMode::Truncated(prec)),
            "hddwr",
        )?;
        let series = (0..prec)
            .map(|k| format!("t1^{k}"))
            .collect::<Vec<_>>()
            .join(" + ");
        ensure(res.q == [p(&o, &series)], || {
            format!("prec {prec}: q = {}", res.q[0])
        })?;
        let residual = res.residual.clone().unwrap_or_else(|| PolyVector::zero(&o));
        let in_power = residual.terms().iter().all(|t| t.mon.exps()[0] >= prec);
        ensure(in_power, || {
            format!("prec {prec}: residual {residual} not in <t>^{prec}")
        })?;
        ensure(residual == p(&o, &format!("t1^{prec}*x1")), || {
            format!("prec {prec}: residual {residual}")
        })?;
        ok(
            check_conditions(&f, std::slice::from_ref(&g), &res, &o),
            "identity",
        )?;
    }
    Ok(format!(
        "quotients 1 + .. + t^(p-1) and residual t^p*x for p = 1..{MAX_PREC}"
    ))
}

fn criterion_10() -> Outcome {
    let cases = common::cli_cases();
    for (name, args) in &cases {
        let first = common::run_cli(args);
        let second = common::run_cli(args);
        ensure(first == second, || format!("{name}: two runs differ"))?;
        let path = format!("{}/{name}.out", common::golden_dir());
        let golden = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
        ensure(first == golden, || {
            format!("{name}: output differs from golden file")
        })?;
    }
    Ok(format!(
        "{} invocations byte-identical to golden files",
        cases.len()
    ))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let only: Option<u32> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (n, run) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({detail}) [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why}) [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
