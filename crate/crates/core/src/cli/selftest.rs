use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RunConfig;
use crate::abelian::{smith_normal_form, IntMatrix};
use crate::error::Result;
use crate::fakedegree::{brute_force_units, coadjoint_profile, fixed_point_count};
use crate::invariants::{field_for, kernel_between, main_theorem_from, mq_from_classes, mq_layers, Limits, UnitContext};
use crate::nilalgebra::{augmentation_ideal, parse_algebra, NilpotentAlgebra};
use crate::pcgroup::{builtin, PcPresentation, BUILTIN_NAMES};
use crate::smallfield::{find_embedding_nth, make_field};
use crate::unitgroup::UnitPcp;

/// Outcome of one property suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, failures: Vec<String>, ok_detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() { ok_detail } else { failures.join("; ") },
    }
}

/// Runs every suite. Guard and input errors abort with `Err`; failed
/// properties are reported as failed checks.
pub fn run_selftest(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut groups: Vec<(String, PcPresentation)> = Vec::new();
    if let Some(src) = &cfg.group {
        groups.push((src.describe(), src.load()?));
    }
    for name in BUILTIN_NAMES {
        groups.push((format!("builtin:{name}"), builtin(name)?));
    }
    let limits = cfg.limits;
    Ok(vec![
        snf_suite(&mut rng),
        collection_suite(&groups, &mut rng, &limits)?,
        class_suite(&groups, &mut rng, &limits)?,
        sift_suite(&mut rng, &limits)?,
        main_theorem_suite(&limits)?,
        oracle_suite(&limits)?,
        embedding_suite(&limits)?,
        orbit_suite()?,
    ])
}

fn snf_suite(rng: &mut ChaCha8Rng) -> Check {
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = IntMatrix::from_i64(c, &rows);
        let sf = smith_normal_form(&m);
        if sf.u.mul(&m).mul(&sf.v) != sf.s {
            failures.push(format!("matrix {trial}: U M V != S"));
        }
        if !sf.u.determinant().abs().is_one() || !sf.v.determinant().abs().is_one() {
            failures.push(format!("matrix {trial}: transform not unimodular"));
        }
        if sf.v.mul(&sf.v_inv) != IntMatrix::identity(c) {
            failures.push(format!("matrix {trial}: V V^-1 != I"));
        }
        let d = sf.diagonal();
        for i in 0..r {
            for j in 0..c {
                if i != j && !sf.s.get(i, j).is_zero() {
                    failures.push(format!("matrix {trial}: off-diagonal entry"));
                }
            }
        }
        for w in d.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            if w[0].is_negative() || !divides {
                failures.push(format!("matrix {trial}: divisibility fails at {} | {}", w[0], w[1]));
            }
        }
        if failures.len() > 5 {
            break;
        }
    }
    check("snf", failures, "1000 random matrices: U M V = S, unimodular, divisibility chain".into())
}

fn collection_suite(groups: &[(String, PcPresentation)], rng: &mut ChaCha8Rng, limits: &Limits) -> Result<Check> {
    let mut failures = Vec::new();
    let mut n = 0;
    for (name, g) in groups {
        if g.order().is_none_or(|o| o > limits.max_order) {
            continue;
        }
        if let Some(v) = g.consistency_check() {
            failures.push(format!("{name}: {v}"));
        }
        let order = g.order().unwrap() as usize;
        for _ in 0..50 {
            let [x, y, z] = [0; 3].map(|_| g.element_at(rng.gen_range(0..order)));
            if g.mul(&g.mul(&x, &y), &z) != g.mul(&x, &g.mul(&y, &z)) {
                failures.push(format!("{name}: associativity"));
            }
            if !g.mul(&x, &g.inverse(&x)).is_identity() {
                failures.push(format!("{name}: inverse"));
            }
            let i = rng.gen_range(0..order);
            if g.index_of(&g.element_at(i)) != i {
                failures.push(format!("{name}: normal form round trip"));
            }
            n += 1;
        }
    }
    Ok(check("collection", failures, format!("{n} random products, inverses and normal forms")))
}

fn class_suite(groups: &[(String, PcPresentation)], rng: &mut ChaCha8Rng, limits: &Limits) -> Result<Check> {
    let mut failures = Vec::new();
    for (name, g) in groups {
        let data = g.conjugacy_classes_with_guard(limits.max_order)?;
        let total: u64 = data.classes.iter().map(|c| c.size).sum();
        if Some(total) != g.order() {
            failures.push(format!("{name}: class sizes sum to {total}"));
        }
        for c in 0..data.count() {
            let members = data.members(c);
            for _ in 0..20 {
                let x = g.element_at(members[rng.gen_range(0..members.len())]);
                let xp = g.pow(&x, g.p() as u64);
                let got = (!xp.is_identity()).then(|| data.class_of_index(g.index_of(&xp)));
                if got != data.power_map[c] {
                    failures.push(format!("{name}: power map depends on the representative of class {c}"));
                    break;
                }
            }
        }
    }
    Ok(check("classes", failures, "class sizes and conjugation-invariant power maps".into()))
}

fn small_algebras(limits: &Limits) -> Result<Vec<(String, NilpotentAlgebra)>> {
    let mut out = Vec::new();
    for name in BUILTIN_NAMES {
        let g = builtin(name)?;
        if g.order().is_none_or(|o| o > 16 || o > limits.max_order) {
            continue;
        }
        for n in [1, 2] {
            let f = make_field(g.p() as u64, n)?;
            out.push((format!("{name}/F_{}", f.q()), augmentation_ideal(&g, &f)?));
        }
    }
    out.push(("heisenberg/F_3".into(), heisenberg(3, 1)?));
    Ok(out)
}

fn heisenberg(p: u64, n: usize) -> Result<NilpotentAlgebra> {
    parse_algebra(&format!("algebra\np {p}\nn {n}\ndim 3\nb1*b3 = b2\n"))
}

fn sift_suite(rng: &mut ChaCha8Rng, limits: &Limits) -> Result<Check> {
    let mut failures = Vec::new();
    let algebras = small_algebras(limits)?;
    for (name, a) in &algebras {
        let pcp = UnitPcp::with_guard(a, limits.max_gens)?;
        let p = pcp.p() as u32;
        for _ in 0..200 {
            let e: Vec<u32> = (0..pcp.num_generators()).map(|_| rng.gen_range(0..p)).collect();
            if pcp.sift(&pcp.rebuild(&e)) != e {
                failures.push(format!("{name}: sift(rebuild(e)) != e"));
                break;
            }
        }
        let ab = pcp.abelianization()?;
        for _ in 0..50 {
            let x = a.random_element(rng);
            let y = a.random_element(rng);
            let c = a.unit_commutator(&x, &y);
            if pcp.project_unit(&ab, &c).iter().any(|v| !v.is_zero()) {
                failures.push(format!("{name}: commutator survives abelianization"));
                break;
            }
        }
    }
    Ok(check("sift", failures, format!("{} algebras, 200 round trips each", algebras.len())))
}

fn main_theorem_suite(limits: &Limits) -> Result<Check> {
    let mut failures = Vec::new();
    let mut n = 0;
    for name in BUILTIN_NAMES {
        let g = builtin(name)?;
        if g.order().is_none_or(|o| o > 32) {
            continue;
        }
        let classes = g.conjugacy_classes_with_guard(limits.max_order)?;
        let qs: &[u64] = if g.p() == 2 { &[2, 4] } else { &[g.p() as u64] };
        for &q in qs {
            let f = field_for(g.p() as u64, q)?;
            let ctx = UnitContext::new(&g, &f, limits)?;
            let main = main_theorem_from(&classes, &ctx)?;
            let mq = mq_from_classes(&g, &classes, f.n())?;
            if mq.order()? != main.q_pow_k_minus_1 {
                failures.push(format!("{name}, q = {q}: |M_q| != q^(k-1)"));
            }
            if !mq_layers(&mq, &classes, f.p(), f.n()).holds() {
                failures.push(format!("{name}, q = {q}: M_q layers"));
            }
            if !main.inferred_b0_order.is_one() {
                failures.push(format!("{name}, q = {q}: |B_0| = {}", main.inferred_b0_order));
            }
            if ctx.algebra.dim() - ctx.algebra.lie_commutator_dim() != classes.count() - 1 {
                failures.push(format!("{name}, q = {q}: Lie codimension != k - 1"));
            }
            n += 1;
        }
    }
    Ok(check("main_theorem", failures, format!("{n} (group, q) pairs with trivial B_0")))
}

/// Conjugacy classes of `pi` by direct enumeration.
fn brute_force_class_count(g: &PcPresentation) -> usize {
    let order = g.order().unwrap() as usize;
    let elems: Vec<_> = (0..order).map(|i| g.element_at(i)).collect();
    let mut seen = vec![false; order];
    let mut count = 0;
    for i in 0..order {
        if seen[i] {
            continue;
        }
        count += 1;
        for h in &elems {
            seen[g.index_of(&g.conjugate(&elems[i], h))] = true;
        }
    }
    count
}

fn oracle_suite(limits: &Limits) -> Result<Check> {
    let mut failures = Vec::new();
    let f2 = make_field(2, 1)?;
    for name in BUILTIN_NAMES {
        let g = builtin(name)?;
        if g.order().is_none_or(|o| o > 16) || g.p() != 2 {
            continue;
        }
        let a = augmentation_ideal(&g, &f2)?;
        let bf = brute_force_units(&a)?;
        let ab = UnitPcp::with_guard(&a, limits.max_gens)?.abelianization()?.group.order()?;
        if BigUint::from(bf.ab_order) != ab {
            failures.push(format!("{name}: oracle {} vs {ab}", bf.ab_order));
        }
        let k = g.conjugacy_classes_with_guard(limits.max_order)?.count();
        if brute_force_class_count(&g) != k {
            failures.push(format!("{name}: class count"));
        }
    }
    Ok(check("oracle", failures, "groups of order <= 16 over F_2".into()))
}

fn embedding_suite(limits: &Limits) -> Result<Check> {
    let mut failures = Vec::new();
    let mut orders = Vec::new();
    for (name, n) in [("d8", 1usize), ("jm14_f39", 2)] {
        let g = builtin(name)?;
        let f = make_field(2, n)?;
        let big = make_field(2, 2 * n)?;
        let ctx = UnitContext::new(&g, &f, limits)?;
        let e0 = find_embedding_nth(&f, &big, 0)?;
        let e1 = find_embedding_nth(&f, &big, 1)?;
        let target = UnitContext::from_algebra(ctx.algebra.extend_scalars(&e0)?, limits)?;
        let k0 = kernel_between(&ctx, &target, &e0)?.kernel;
        let k1 = kernel_between(&ctx, &target, &e1)?.kernel;
        if k0.factors() != k1.factors() {
            failures.push(format!("{name}: {k0} vs {k1}"));
        }
        orders.push(format!("{name}/F_{}: {}", f.q(), k0));
    }
    Ok(check("embedding", failures, format!("|ker f_2| independent of the root ({})", orders.join(", "))))
}

fn orbit_suite() -> Result<Check> {
    let mut failures = Vec::new();
    let mut algebras = vec![
        ("heisenberg/F_3".to_string(), heisenberg(3, 1)?),
        ("heisenberg/F_2".to_string(), heisenberg(2, 1)?),
        ("heisenberg/F_4".to_string(), heisenberg(2, 2)?),
    ];
    for (name, n) in [("d8", 1), ("q8", 1), ("c2xc2", 2), ("c4", 2)] {
        let g = builtin(name)?;
        let f = make_field(g.p() as u64, n)?;
        algebras.push((format!("{name}/F_{}", f.q()), augmentation_ideal(&g, &f)?));
    }
    for (name, a) in &algebras {
        // odd ranks and s not dividing N_s are reported as errors by the profile
        let prof = match coadjoint_profile(a) {
            Ok(p) => p,
            Err(e) if !e.is_guard() => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let q = BigUint::from(a.field().q());
        if BigUint::from(prof.total()) != q.pow(a.dim() as u32) {
            failures.push(format!("{name}: sum of N_s"));
        }
        for (&s, &ns) in &prof.counts {
            if ns % s != 0 {
                failures.push(format!("{name}: orbit size {s}"));
            }
        }
        if prof.orbit_total() < prof.fixed_points() {
            failures.push(format!("{name}: fewer orbits than fixed points"));
        }
        if BigUint::from(prof.fixed_points()) != fixed_point_count(a) {
            failures.push(format!("{name}: fixed points disagree with the Lie codimension"));
        }
    }
    Ok(check("orbits", failures, format!("{} coadjoint profiles", algebras.len())))
}
