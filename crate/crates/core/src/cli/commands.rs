use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::{json, Value};

use super::{load_algebra, selftest::run_selftest, Report, RunConfig, Timings};
use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::fakedegree::{coadjoint_profile, fake_degree_report, OrbitProfile, Verdict};
use crate::invariants::{
    bogomolov_with, field_for, kernel_from, main_theorem_from, mq_from_classes, mq_layers, UnitContext,
};
use crate::nilalgebra::{augmentation_ideal, NilpotentAlgebra};
use crate::pcgroup::{format_word, PcPresentation};
use crate::smallfield::FieldDesc;

fn ab_json(g: &AbelianGroup) -> Value {
    json!(g.factors())
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn group(cfg: &RunConfig, t: &mut Timings) -> Result<PcPresentation> {
    let src = cfg.group.as_ref().expect("checked by RunConfig");
    t.time("parse", || src.load())
}

fn group_field(cfg: &RunConfig, pres: &PcPresentation) -> Result<FieldDesc> {
    field_for(pres.p() as u64, cfg.q.unwrap_or(pres.p() as u64))
}

/// The algebra named on the command line: a file, or the augmentation
/// ideal of the group over `F_q`.
fn algebra(cfg: &RunConfig, t: &mut Timings) -> Result<NilpotentAlgebra> {
    match &cfg.algebra {
        Some(path) => {
            let a = t.time("parse", || load_algebra(path))?;
            if let Some(q) = cfg.q {
                if q != a.field().q() {
                    return Err(Error::FieldMismatch(format!(
                        "--q {q} differs from the algebra's field size {}",
                        a.field().q()
                    )));
                }
            }
            Ok(a)
        }
        None => {
            let pres = group(cfg, t)?;
            let f = group_field(cfg, &pres)?;
            t.time("algebra", || augmentation_ideal(&pres, &f))
        }
    }
}

pub fn classes(cfg: &RunConfig, t: &mut Timings) -> Result<Report> {
    let pres = group(cfg, t)?;
    let data = t.time("classes", || pres.conjugacy_classes_with_guard(cfg.limits.max_order))?;
    let exponent = pres.exponent_from_classes(&data);
    let pi_ab = t.time("abelianization", || pres.abelianization())?;
    let rows: Vec<Value> = data
        .classes
        .iter()
        .enumerate()
        .map(|(c, cl)| {
            json!({
                "rep": format_word(&cl.rep.to_word()),
                "size": cl.size,
                "power": data.power_map[c],
                "height": data.heights[c],
            })
        })
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "group: {}", cfg.group.as_ref().unwrap().describe());
    let _ = writeln!(text, "order: {}^{}", pres.p(), pres.m());
    let _ = writeln!(text, "k: {}", data.count());
    let _ = writeln!(text, "exponent: {exponent}");
    let _ = writeln!(text, "pi_ab: {pi_ab}");
    let _ = writeln!(text, "height counts: {:?}", data.height_counts());
    let _ = writeln!(text, "{:>5}  {:<24} {:>8} {:>6} {:>6}", "class", "rep", "size", "power", "height");
    for (c, cl) in data.classes.iter().enumerate() {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "{:>5}  {:<24} {:>8} {:>6} {:>6}",
            c,
            format_word(&cl.rep.to_word()),
            cl.size,
            opt(data.power_map[c].map(|x| x.to_string())),
            opt(data.heights[c].map(|x| x.to_string())),
        );
    }
    Ok(Report {
        q: None,
        results: json!({
            "order": pres.order().map(|o| o.to_string()),
            "k": data.count(),
            "exponent": exponent,
            "pi_ab": ab_json(&pi_ab),
            "height_counts": data.height_counts(),
            "classes": rows,
        }),
        text,
        failed: false,
    })
}

pub fn units(cfg: &RunConfig, t: &mut Timings) -> Result<Report> {
    let mut text = String::new();
    let mut results = serde_json::Map::new();
    let (ctx, q) = if cfg.algebra.is_some() {
        let a = algebra(cfg, t)?;
        let q = a.field().q();
        let ctx = t.time("units", || UnitContext::from_algebra(a, &cfg.limits))?;
        let _ = writeln!(text, "algebra: {} (dim {}, q = {q})", cfg.input().as_str().unwrap_or(""), ctx.algebra.dim());
        (ctx, q)
    } else {
        let pres = group(cfg, t)?;
        let field = group_field(cfg, &pres)?;
        let q = field.q();
        let classes = t.time("classes", || pres.conjugacy_classes_with_guard(cfg.limits.max_order))?;
        let ctx = t.time("units", || UnitContext::new(&pres, &field, &cfg.limits))?;
        let main = main_theorem_from(&classes, &ctx)?;
        let _ = writeln!(text, "group: {}, q = {q}", cfg.group.as_ref().unwrap().describe());
        let _ = writeln!(text, "k: {}", main.k);
        results.insert("k".into(), json!(main.k));
        results.insert("q_pow_k_minus_1".into(), big(&main.q_pow_k_minus_1));
        results.insert("inferred_b0_order".into(), big(&main.inferred_b0_order));
        let _ = writeln!(text, "q^(k-1): {}", main.q_pow_k_minus_1);
        let _ = writeln!(text, "inferred |B_0|: {}", main.inferred_b0_order);
        (ctx, q)
    };
    let order = ctx.ab.group.order()?;
    results.insert("generators".into(), json!(ctx.pcp.num_generators()));
    results.insert("unit_ab".into(), ab_json(&ctx.ab.group));
    results.insert("unit_ab_order".into(), big(&order));
    let _ = writeln!(text, "pc generators: {}", ctx.pcp.num_generators());
    let _ = writeln!(text, "(1 + J)_ab: {}", ctx.ab.group);
    let _ = writeln!(text, "|(1 + J)_ab|: {order}");
    if let Some(m) = cfg.m {
        let k = t.time("kernel", || kernel_from(&ctx, m, &cfg.limits))?;
        let _ = writeln!(text, "ker f_{m}: {} (order {})", k.kernel, k.kernel.order()?);
        results.insert("kernel_m".into(), json!(m));
        results.insert("kernel".into(), ab_json(&k.kernel));
    }
    Ok(Report {
        q: Some(q),
        results: Value::Object(results),
        text,
        failed: false,
    })
}

pub fn mq(cfg: &RunConfig, t: &mut Timings) -> Result<Report> {
    let pres = group(cfg, t)?;
    let field = group_field(cfg, &pres)?;
    let classes = t.time("classes", || pres.conjugacy_classes_with_guard(cfg.limits.max_order))?;
    let mq = t.time("mq", || mq_from_classes(&pres, &classes, field.n()))?;
    let layers = mq_layers(&mq, &classes, field.p(), field.n());
    let order = mq.order()?;
    let q_pow = BigUint::from(field.q()).pow(classes.count() as u32 - 1);
    let ok = layers.holds() && order == q_pow;
    let mut text = String::new();
    let _ = writeln!(text, "group: {}, q = {}", cfg.group.as_ref().unwrap().describe(), field.q());
    let _ = writeln!(text, "k: {}", classes.count());
    let _ = writeln!(text, "M_q: {mq}");
    let _ = writeln!(text, "|M_q|: {order} (q^(k-1) = {q_pow})");
    let _ = writeln!(text, "layers log_p |p^i M / p^(i+1) M|: {:?}", layers.observed);
    let _ = writeln!(text, "expected n |C_i|:                 {:?}", layers.expected);
    let _ = writeln!(text, "check: {}", if ok { "PASS" } else { "FAIL" });
    Ok(Report {
        q: Some(field.q()),
        results: json!({
            "k": classes.count(),
            "mq": ab_json(&mq),
            "order": big(&order),
            "q_pow_k_minus_1": big(&q_pow),
            "layers": { "observed": layers.observed, "expected": layers.expected },
            "check": ok,
        }),
        text,
        failed: !ok,
    })
}

pub fn bogomolov(cfg: &RunConfig, t: &mut Timings) -> Result<Report> {
    let pres = group(cfg, t)?;
    let field = group_field(cfg, &pres)?;
    let src = cfg.group.as_ref().unwrap();
    let r = t.time("bogomolov", || bogomolov_with(&pres, &src.name(), field.q(), &cfg.limits))?;
    let mut text = String::new();
    let _ = writeln!(text, "group: {}, q = {}", src.describe(), r.q);
    let _ = writeln!(text, "k: {}", r.k);
    let _ = writeln!(text, "(1 + I)_ab: {}", r.unit_ab);
    let _ = writeln!(text, "M_q: {}", r.mq);
    for (m, o) in &r.kernel_orders {
        let _ = writeln!(text, "|ker f_{m}|: {o}");
    }
    let _ = writeln!(text, "|B_0|: {}", r.b0_order);
    let _ = writeln!(text, "B_0: {}", r.b0_structure);
    let _ = writeln!(text, "exp B_0: {}", r.b0_exponent);
    let kernels: Vec<Value> = r
        .kernel_orders
        .iter()
        .map(|(m, o)| json!({ "m": m, "order": big(o) }))
        .collect();
    Ok(Report {
        q: Some(r.q),
        results: json!({
            "group": r.group_name,
            "k": r.k,
            "unit_ab": ab_json(&r.unit_ab),
            "mq": ab_json(&r.mq),
            "b0_order": big(&r.b0_order),
            "b0_structure": ab_json(&r.b0_structure),
            "b0_exponent": r.b0_exponent,
            "kernel_orders": kernels,
        }),
        text,
        failed: false,
    })
}

fn profile_json(p: &OrbitProfile) -> Value {
    let pairs = |m: &std::collections::BTreeMap<u64, u64>| -> Value {
        Value::Array(m.iter().map(|(k, v)| json!([k, v])).collect())
    };
    json!({
        "counts": pairs(&p.counts),
        "orbit_counts": pairs(&p.orbit_counts),
        "fake_degrees": pairs(&p.fake_degrees),
        "orbit_total": p.orbit_total(),
    })
}

pub fn fakedegree(cfg: &RunConfig, t: &mut Timings) -> Result<Report> {
    let a = algebra(cfg, t)?;
    let q = a.field().q();
    let rep = t.time("report", || fake_degree_report(&a, cfg.limits.max_gens, true))?;
    let profile = match t.time("profile", || coadjoint_profile(&a)) {
        Ok(p) => Some(p),
        Err(e) if e.is_guard() => None,
        Err(e) => return Err(e),
    };
    let mut text = String::new();
    let _ = writeln!(text, "input: {}, q = {q}, dim J = {}", cfg.input().as_str().unwrap_or(""), a.dim());
    let _ = writeln!(text, "fixed points |J / [J,J]_L|: {}", rep.fixed_points);
    let _ = writeln!(text, "|(1 + J)_ab|: {}", rep.ab_order);
    let ratio = match &rep.verdict {
        Verdict::Consistent => None,
        Verdict::Violated { ratio } => Some(ratio.clone()),
    };
    match &ratio {
        None => {
            let _ = writeln!(text, "verdict: CONSISTENT");
        }
        Some(r) => {
            let _ = writeln!(text, "verdict: VIOLATED (ratio {r})");
        }
    }
    if let Some(p) = &profile {
        let degs: Vec<String> = p.fake_degrees.iter().map(|(d, m)| format!("{d}x{m}")).collect();
        let _ = writeln!(text, "fake degrees (degree x multiplicity): {{{}}}", degs.join(", "));
        let _ = writeln!(text, "orbits: {}", p.orbit_total());
    }
    if let Some((orbits, classes)) = rep.orbit_check {
        let _ = writeln!(text, "orbit count {orbits} vs class count of 1 + J {classes}");
    }
    Ok(Report {
        q: Some(q),
        results: json!({
            "fixed_points": big(&rep.fixed_points),
            "ab_order": big(&rep.ab_order),
            "verdict": rep.verdict.label(),
            "ratio": ratio.as_ref().map(big),
            "profile": profile.as_ref().map(profile_json),
            "orbit_check": rep.orbit_check.map(|(o, c)| json!({ "orbits": o, "classes": c })),
        }),
        text,
        failed: false,
    })
}

pub fn selftest(cfg: &RunConfig, t: &mut Timings) -> Result<Report> {
    let checks = t.time("selftest", || run_selftest(cfg))?;
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(text, "{} checks, {} failed", checks.len(), failed);
    Ok(Report {
        q: None,
        results: json!({
            "checks": checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect::<Vec<_>>(),
            "passed": failed == 0,
        }),
        text,
        failed: failed > 0,
    })
}
