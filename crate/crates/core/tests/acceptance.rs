//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use serde_json::Value;

use modunits::fakedegree::{brute_force_units, coadjoint_profile, fake_degree_report, Verdict};
use modunits::invariants::{
    bogomolov, field_for, kernel_between, kernel_from, main_theorem_from, mq_from_classes, mq_layers, probe_unit,
    Limits, UnitContext,
};
use modunits::nilalgebra::{augmentation_ideal, group_ring_element, parse_algebra};
use modunits::pcgroup::{builtin, PcPresentation, BUILTIN_NAMES};
use modunits::smallfield::{find_embedding, make_field};
use modunits::unitgroup::{unit_abelianization, DEFAULT_MAX_GENS};

type Outcome = Result<(), String>;

macro_rules! ensure_eq {
    ($a:expr, $b:expr, $($ctx:tt)+) => {{
        match (&$a, &$b) {
            (a, b) => {
                if a != b {
                    return Err(format!("{}: {:?} != {:?}", format!($($ctx)+), a, b));
                }
            }
        }
    }};
}

fn factors(parts: &[(u64, usize)]) -> Vec<u64> {
    parts.iter().flat_map(|&(f, e)| std::iter::repeat_n(f, e)).collect()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Class numbers by hand: abelian groups have one class per element,
/// D_8 and Q_8 have 5, the extraspecial group of order 27 has 3^2 + 3 - 1.
fn expected_class_count(name: &str) -> usize {
    match name {
        "c2" => 2,
        "c4" | "c2xc2" => 4,
        "c8" => 8,
        "d8" | "q8" => 5,
        "heis3" => 11,
        "jm14_f39" => 26,
        _ => panic!("unknown built-in {name}"),
    }
}

/// Every built-in of order below 64 has trivial Bogomolov multiplier.
fn expected_b0(name: &str) -> u64 {
    if name == "jm14_f39" {
        2
    } else {
        1
    }
}

fn field_sizes(pres: &PcPresentation) -> [u64; 2] {
    let p = pres.p() as u64;
    [p, p * p]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = builtin("jm14_f39").map_err(|e| e.to_string())?;
    let classes = g.conjugacy_classes().map_err(|e| e.to_string())?;
    ensure_eq!(classes.count(), 26, "k(pi)");
    ensure_eq!(g.abelianization().unwrap().factors(), [4, 4], "pi_ab");
    let r = bogomolov(&g, "jm14_f39", 2).map_err(|e| e.to_string())?;
    ensure_eq!(r.unit_ab.factors(), factors(&[(2, 13), (4, 5), (8, 1)]).as_slice(), "(1+I)_ab");
    ensure_eq!(r.mq.factors(), factors(&[(2, 13), (4, 6)]).as_slice(), "M_2");
    ensure_eq!(r.b0_order, big(2), "|B_0|");
    ensure_eq!(r.b0_structure.factors(), [2], "B_0");
    let secs = start.elapsed().as_secs_f64();
    if secs > 600.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let limits = Limits::default();
    for name in BUILTIN_NAMES {
        let g = builtin(name).unwrap();
        if g.order().is_none_or(|o| o > 128) {
            continue;
        }
        let classes = g.conjugacy_classes().unwrap();
        for q in field_sizes(&g) {
            let ctx = UnitContext::new(&g, &field_for(g.p() as u64, q).unwrap(), &limits).map_err(|e| e.to_string())?;
            let main = main_theorem_from(&classes, &ctx).map_err(|e| e.to_string())?;
            let k = expected_class_count(name) as u32;
            let b0 = expected_b0(name);
            ensure_eq!(main.unit_ab_order, big(q).pow(k - 1) * big(b0), "{name} q={q}: |(1+I)_ab|");
            // kernel stabilization: |ker f_m| for m = 1, p, p^2, ... settles at |B_0|
            let mut m = 1usize;
            let stable = loop {
                let order = kernel_from(&ctx, m, &limits).map_err(|e| e.to_string())?.kernel.order().unwrap();
                if order == main.inferred_b0_order || m > 4 {
                    break order;
                }
                m *= g.p() as usize;
            };
            ensure_eq!(stable, big(b0), "{name} q={q}: stable kernel");
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let f2 = make_field(2, 1).unwrap();
    for name in BUILTIN_NAMES {
        let g = builtin(name).unwrap();
        if g.p() != 2 || g.order().is_none_or(|o| o > 16) {
            continue;
        }
        let a = augmentation_ideal(&g, &f2).unwrap();
        let bf = brute_force_units(&a).map_err(|e| e.to_string())?;
        let ab = unit_abelianization(&a).map_err(|e| e.to_string())?;
        ensure_eq!(big(bf.ab_order), ab.group.order().unwrap(), "{name}: ab order");
        let units = modunits::unitgroup::UnitPcp::new(&a).unwrap().presentation();
        let k = units.conjugacy_classes().map_err(|e| e.to_string())?.count() as u64;
        ensure_eq!(k, bf.class_count, "{name}: class count of 1+I");
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let limits = Limits::default();
    for name in BUILTIN_NAMES {
        let g = builtin(name).unwrap();
        let f = make_field(g.p() as u64, 1).unwrap();
        let ctx = UnitContext::new(&g, &f, &limits).map_err(|e| e.to_string())?;
        let id = find_embedding(&f, &f).unwrap();
        let k1 = kernel_between(&ctx, &ctx, &id).map_err(|e| e.to_string())?.kernel;
        ensure_eq!(k1.factors(), [] as [u64; 0], "{name}: ker f_1");
        let k2 = kernel_from(&ctx, 2, &limits).map_err(|e| e.to_string())?.kernel;
        let want: &[u64] = if expected_b0(name) == 1 { &[] } else { &[2] };
        ensure_eq!(k2.factors(), want, "{name}: ker f_2");
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for name in BUILTIN_NAMES {
        let g = builtin(name).unwrap();
        for q in field_sizes(&g) {
            let a = augmentation_ideal(&g, &field_for(g.p() as u64, q).unwrap()).unwrap();
            ensure_eq!(a.dim() - a.lie_commutator_dim(), expected_class_count(name) - 1, "{name} q={q}: codim");
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let a = augmentation_ideal(&builtin("jm14_f39").unwrap(), &make_field(2, 1).unwrap()).unwrap();
    let r = fake_degree_report(&a, DEFAULT_MAX_GENS, false).map_err(|e| e.to_string())?;
    ensure_eq!(r.fixed_points, big(1 << 25), "fixed points");
    ensure_eq!(r.ab_order, big(1 << 26), "|(1+J)_ab|");
    ensure_eq!(r.verdict, Verdict::Violated { ratio: big(2) }, "verdict");
    Ok(())
}

fn criterion_7() -> Outcome {
    let a = parse_algebra(include_str!("../data/heisenberg_f3.alg")).map_err(|e| e.to_string())?;
    ensure_eq!((a.nil_index(), a.field().q()), (3, 3), "J^3 = J^p = 0");
    let prof = coadjoint_profile(&a).map_err(|e| e.to_string())?;
    ensure_eq!(prof.fake_degrees.clone().into_iter().collect::<Vec<_>>(), vec![(1, 9), (3, 2)], "profile");
    let bf = brute_force_units(&a).map_err(|e| e.to_string())?;
    ensure_eq!(bf.group_order, 27, "|1+J|");
    ensure_eq!(prof.orbit_total(), 11, "orbit count");
    ensure_eq!(bf.class_count, 11, "class count");
    ensure_eq!(prof.fixed_points(), 9, "fixed points");
    ensure_eq!(bf.ab_order, 9, "brute-force ab order");
    ensure_eq!(unit_abelianization(&a).unwrap().group.order().unwrap(), big(9), "ab order");
    Ok(())
}

fn criterion_8() -> Outcome {
    let g = builtin("jm14_f39").unwrap();
    let limits = Limits::default();
    let ctx = UnitContext::new(&g, &make_field(2, 1).unwrap(), &limits).map_err(|e| e.to_string())?;
    let (g3, g5, g7) = (g.generator(2), g.generator(4), g.generator(6));
    let u = group_ring_element(
        &g,
        &ctx.algebra,
        &[(1, g3.clone()), (-1, g5.clone()), (-1, g.mul(&g7, &g3)), (1, g.mul(&g7, &g5))],
    )
    .ok_or("bad element")?;
    let probe = probe_unit(&ctx, &u, 4, 2, &limits).map_err(|e| e.to_string())?;
    ensure_eq!(probe.is_trivial(), false, "trivial class");
    ensure_eq!(probe.is_power, true, "4th power");
    ensure_eq!(probe.in_kernel(), true, "in ker f_2");
    Ok(())
}

fn criterion_9() -> Outcome {
    for name in BUILTIN_NAMES {
        let g = builtin(name).unwrap();
        let classes = g.conjugacy_classes().unwrap();
        for n in 1..=2usize {
            let q = (g.p() as u64).pow(n as u32);
            let mq = mq_from_classes(&g, &classes, n).map_err(|e| e.to_string())?;
            let layers = mq_layers(&mq, &classes, g.p() as u64, n);
            ensure_eq!(layers.observed, layers.expected, "{name} q={q}: layers");
            let k = expected_class_count(name) as u32;
            ensure_eq!(mq.order().unwrap(), big(q).pow(k - 1), "{name} q={q}: |M_q|");
        }
    }
    // C_i by hand for the order-128 group: 19 classes of height 0, 6 of height 1
    let g = builtin("jm14_f39").unwrap();
    let classes = g.conjugacy_classes().unwrap();
    let mq = mq_from_classes(&g, &classes, 1).unwrap();
    ensure_eq!(mq_layers(&mq, &classes, 2, 1).observed, vec![19, 6], "jm14_f39 layers");
    Ok(())
}

fn selftest_json(seed: &str) -> Result<Value, String> {
    let out = modunits::cli::run(["modunits", "selftest", "--json", "--seed", seed]);
    if out.code != 0 {
        return Err(format!("exit {}: {}{}", out.code, out.stdout, out.stderr));
    }
    let mut v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    v.as_object_mut().unwrap().remove("timings_ms");
    Ok(v)
}

fn criterion_10() -> Outcome {
    let first = selftest_json("7")?;
    let checks = first["results"]["checks"].as_array().ok_or("no checks")?;
    for want in ["snf", "collection", "sift", "embedding", "orbits"] {
        let c = checks.iter().find(|c| c["name"] == want).ok_or(format!("missing suite {want}"))?;
        ensure_eq!(c["passed"], Value::Bool(true), "{want}: {}", c["detail"]);
    }
    ensure_eq!(first["results"]["passed"], Value::Bool(true), "all suites");
    ensure_eq!(selftest_json("7")?, first, "rerun with the same seed");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("order-128 example regression", criterion_1),
        ("main-theorem identity", criterion_2),
        ("oracle equivalence", criterion_3),
        ("exponent criterion", criterion_4),
        ("Lie commutator codimension", criterion_5),
        ("fake-degree violation", criterion_6),
        ("fake-degree positive case", criterion_7),
        ("split-failure probe", criterion_8),
        ("M_q filtration layers", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.1} s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
