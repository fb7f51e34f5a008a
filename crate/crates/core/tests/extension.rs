use modunits::invariants::{Limits, UnitContext};
use modunits::pcgroup::{builtin, BUILTIN_NAMES};
use modunits::smallfield::make_field;

// Extending scalars of I(F_q) must agree with building I(F_(q^m)) directly.
#[test]
fn extension_matches_direct_construction() {
    let limits = Limits::default();
    for name in BUILTIN_NAMES {
        let g = builtin(name).unwrap();
        let p = g.p() as u64;
        let small = UnitContext::new(&g, &make_field(p, 1).unwrap(), &limits).unwrap();
        let (ext, _) = small.extend(2, &limits).unwrap();
        let direct = UnitContext::new(&g, &make_field(p, 2).unwrap(), &limits).unwrap();
        assert_eq!(ext.ab.group.factors(), direct.ab.group.factors(), "{name}");
        assert_eq!(ext.algebra.dim(), direct.algebra.dim());
    }
}

#[test]
fn extension_degree_guard() {
    let g = builtin("c2").unwrap();
    let ctx = UnitContext::new(&g, &make_field(2, 4).unwrap(), &Limits::default()).unwrap();
    assert!(ctx.extend(5, &Limits::default()).is_err());
}
