use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::mq::{field_for, mq_from_classes};
use crate::abelian::{hom_kernel, p_power_log, AbelianGroup};
use crate::error::{Error, Result};
use crate::nilalgebra::{augmentation_ideal, NilpotentAlgebra};
use crate::pcgroup::{ClassData, PcPresentation, DEFAULT_MAX_ORDER};
use crate::smallfield::{find_embedding_nth, make_field, Embedding, FieldDesc, MAX_DEGREE};
use crate::unitgroup::{inclusion_ab_map, AbelianizationData, UnitPcp, DEFAULT_MAX_GENS};

/// Resource limits and debug switches shared by the report functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: u64,
    pub max_gens: usize,
    /// Use the second root when embedding `F_q` into `F_(q^m)`.
    pub alt_embedding: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
            max_gens: DEFAULT_MAX_GENS,
            alt_embedding: false,
        }
    }
}

/// `1 + I_(F_q)` with its pc structure and abelianization.
pub struct UnitContext {
    pub field: FieldDesc,
    pub algebra: NilpotentAlgebra,
    pub pcp: UnitPcp,
    pub ab: AbelianizationData,
}

impl UnitContext {
    pub fn new(pres: &PcPresentation, field: &FieldDesc, limits: &Limits) -> Result<UnitContext> {
        let algebra = augmentation_ideal(pres, field)?;
        UnitContext::from_algebra(algebra, limits)
    }

    pub fn from_algebra(algebra: NilpotentAlgebra, limits: &Limits) -> Result<UnitContext> {
        let pcp = UnitPcp::with_guard(&algebra, limits.max_gens)?;
        let ab = pcp.abelianization()?;
        Ok(UnitContext {
            field: algebra.field().clone(),
            algebra,
            pcp,
            ab,
        })
    }

    /// The same algebra over `F_(q^m)`, and the embedding used.
    pub fn extend(&self, m: usize, limits: &Limits) -> Result<(UnitContext, Embedding)> {
        let n = self.field.n() * m;
        if m == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        let big = make_field(self.field.p(), n)?;
        let e = find_embedding_nth(&self.field, &big, limits.alt_embedding as usize)?;
        let ctx = UnitContext::from_algebra(self.algebra.extend_scalars(&e)?, limits)?;
        Ok((ctx, e))
    }
}

fn check_classes(pres: &PcPresentation, limits: &Limits) -> Result<ClassData> {
    pres.conjugacy_classes_with_guard(limits.max_order)
}

/// Both sides of `|(1 + I)_ab| = q^(k-1) |B_0|`.
#[derive(Clone, Debug)]
pub struct MainTheoremReport {
    pub k: usize,
    pub unit_ab: AbelianGroup,
    pub unit_ab_order: BigUint,
    pub q_pow_k_minus_1: BigUint,
    pub inferred_b0_order: BigUint,
}

pub fn main_theorem_report(pres: &PcPresentation, q: u64) -> Result<MainTheoremReport> {
    let limits = Limits::default();
    let field = field_for(pres.p() as u64, q)?;
    let classes = check_classes(pres, &limits)?;
    let ctx = UnitContext::new(pres, &field, &limits)?;
    main_theorem_from(&classes, &ctx)
}

pub fn main_theorem_from(classes: &ClassData, ctx: &UnitContext) -> Result<MainTheoremReport> {
    let q = ctx.field.q();
    let k = classes.count();
    let unit_ab_order = ctx.ab.group.order()?;
    let q_pow = BigUint::from(q).pow(k as u32 - 1);
    if (&unit_ab_order % &q_pow) != BigUint::zero() {
        return Err(Error::NonIntegralRatio(format!("{unit_ab_order} / {q_pow}")));
    }
    let ratio = &unit_ab_order / &q_pow;
    if p_power_log(&ratio, ctx.field.p()).is_none() {
        return Err(Error::NonIntegralRatio(format!("{unit_ab_order} / {q_pow} = {ratio}")));
    }
    Ok(MainTheoremReport {
        k,
        unit_ab: ctx.ab.group.clone(),
        unit_ab_order,
        q_pow_k_minus_1: q_pow,
        inferred_b0_order: ratio,
    })
}

/// `ker (f: (1 + I_(F_q))_ab -> (1 + I_(F_(q^m)))_ab)`.
#[derive(Clone, Debug)]
pub struct KernelReport {
    pub m: usize,
    pub kernel: AbelianGroup,
    /// Kernel generators in the invariant-factor coordinates of the source.
    pub generators: Vec<Vec<BigInt>>,
}

pub fn kernel_f(pres: &PcPresentation, q: u64, m: usize) -> Result<KernelReport> {
    kernel_f_with(pres, q, m, &Limits::default())
}

pub fn kernel_f_with(pres: &PcPresentation, q: u64, m: usize, limits: &Limits) -> Result<KernelReport> {
    let field = field_for(pres.p() as u64, q)?;
    let ctx = UnitContext::new(pres, &field, limits)?;
    kernel_from(&ctx, m, limits)
}

pub fn kernel_from(ctx: &UnitContext, m: usize, limits: &Limits) -> Result<KernelReport> {
    if m == 1 && !limits.alt_embedding {
        return Ok(KernelReport {
            m,
            kernel: AbelianGroup::trivial(),
            generators: Vec::new(),
        });
    }
    let (big, e) = ctx.extend(m, limits)?;
    kernel_between(ctx, &big, &e)
}

/// Kernel of the map induced by `e` between two precomputed contexts.
pub fn kernel_between(src: &UnitContext, dst: &UnitContext, e: &Embedding) -> Result<KernelReport> {
    let t = inclusion_ab_map(&src.pcp, &src.ab, &dst.pcp, &dst.ab, e)?;
    let hk = hom_kernel(&src.ab.group, &dst.ab.group, &t)?;
    Ok(KernelReport {
        m: dst.field.n() / src.field.n(),
        kernel: hk.group,
        generators: hk.generators,
    })
}

/// Order, structure and exponent of the Bogomolov multiplier.
#[derive(Clone, Debug)]
pub struct BogomolovReport {
    pub group_name: String,
    pub q: u64,
    pub k: usize,
    pub unit_ab: AbelianGroup,
    pub mq: AbelianGroup,
    pub b0_order: BigUint,
    pub b0_structure: AbelianGroup,
    pub b0_exponent: u64,
    /// `(m, |ker f_m|)` for `m = 1, p, p^2, ...` up to the exponent.
    pub kernel_orders: Vec<(u64, BigUint)>,
}

pub fn bogomolov(pres: &PcPresentation, name: &str, q: u64) -> Result<BogomolovReport> {
    bogomolov_with(pres, name, q, &Limits::default())
}

pub fn bogomolov_with(pres: &PcPresentation, name: &str, q: u64, limits: &Limits) -> Result<BogomolovReport> {
    let field = field_for(pres.p() as u64, q)?;
    let p = field.p();
    let classes = check_classes(pres, limits)?;
    let ctx = UnitContext::new(pres, &field, limits)?;
    let main = main_theorem_from(&classes, &ctx)?;
    let mq = mq_from_classes(pres, &classes, field.n())?;
    if mq.order()? != main.q_pow_k_minus_1 {
        return Err(Error::InternalInconsistency(format!(
            "|M_q| = {} but q^(k-1) = {}",
            mq.order()?,
            main.q_pow_k_minus_1
        )));
    }
    let b0_order = main.inferred_b0_order.clone();
    let pi_ab = pres.abelianization()?.order()?;
    if (&main.q_pow_k_minus_1 % &pi_ab) != BigUint::zero() {
        return Err(Error::InternalInconsistency(format!(
            "|pi_ab| = {pi_ab} does not divide q^(k-1)"
        )));
    }

    let cap = p_power_log(&b0_order, p).expect("checked p-power") + 2;
    let mut kernel_orders = Vec::new();
    let mut prev = BigUint::one();
    for t in 0..=cap {
        let m = p.pow(t);
        let rep = kernel_from(&ctx, m as usize, limits)?;
        let order = rep.kernel.order()?;
        if order < prev || order > b0_order {
            return Err(Error::InternalInconsistency(format!(
                "|ker f_{m}| = {order} is inconsistent with |B_0| = {b0_order}"
            )));
        }
        kernel_orders.push((m, order.clone()));
        if order == b0_order {
            return Ok(BogomolovReport {
                group_name: name.to_string(),
                q,
                k: main.k,
                unit_ab: main.unit_ab,
                mq,
                b0_order,
                b0_structure: rep.kernel,
                b0_exponent: m,
                kernel_orders,
            });
        }
        prev = order;
    }
    Err(Error::InternalInconsistency(format!(
        "kernel did not reach |B_0| = {b0_order} by m = {}^{cap}",
        p
    )))
}
