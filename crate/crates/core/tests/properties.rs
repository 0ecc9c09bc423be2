use proptest::prelude::*;
use wildprim::class_module::ClassModule;
use wildprim::enumerator::{self, EnumerateOptions};
use wildprim::linalg::Echelon;
use wildprim::local_ring::{LaurentElt, MixedElt, WElt};
use wildprim::modrep::{self, Module};
use wildprim::tower::{GroupElt, TameTower};
use wildprim::verify;
use wildprim::{BaseFieldSpec, Exec, PrecisionPolicy};

fn quartic_tower() -> TameTower {
    TameTower::build(BaseFieldSpec::qp(2, 2), 2, PrecisionPolicy::default()).unwrap()
}

fn mixed(t: &TameTower, coeffs: &[u64], shift: usize) -> MixedElt {
    let r = t.mixed_ring().unwrap();
    let w = r.coefficients();
    let cs: Vec<WElt> = coeffs
        .chunks(w.degree())
        .map(|c| WElt(c.iter().map(|&x| x % w.modulus()).collect()))
        .collect();
    r.mul(&r.from_coefficients(&cs), &r.monomial(&w.one(), shift))
}

fn group_elt(t: &TameTower, a: u64, b: u64) -> GroupElt {
    let g = t.group();
    GroupElt { a: a % g.e, b: b % g.frobenius_order() }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn valuations_are_additive_and_ultrametric(
        a in proptest::collection::vec(any::<u64>(), 18),
        b in proptest::collection::vec(any::<u64>(), 18),
        i in 0usize..4, j in 0usize..4,
    ) {
        let t = quartic_tower();
        let r = t.mixed_ring().unwrap();
        let (x, y) = (mixed(&t, &a, i), mixed(&t, &b, j));
        if let (Ok(vx), Ok(vy)) = (r.valuation(&x), r.valuation(&y)) {
            prop_assert_eq!(r.valuation(&r.mul(&x, &y)).unwrap(), vx + vy);
            match r.valuation(&r.add(&x, &y)) {
                Ok(vs) => {
                    prop_assert!(vs >= vx.min(vy));
                    if vx != vy {
                        prop_assert_eq!(vs, vx.min(vy));
                    }
                }
                // Cancellation beyond the working precision.
                Err(_) => prop_assert_eq!(vx, vy),
            }
        }
    }

    #[test]
    fn galois_action_is_a_ring_automorphism_and_composes(
        a in proptest::collection::vec(any::<u64>(), 18),
        b in proptest::collection::vec(any::<u64>(), 18),
        g in (any::<u64>(), any::<u64>()),
        h in (any::<u64>(), any::<u64>()),
    ) {
        let t = quartic_tower();
        let r = t.mixed_ring().unwrap();
        let (x, y) = (mixed(&t, &a, 0), mixed(&t, &b, 1));
        let (g, h) = (group_elt(&t, g.0, g.1), group_elt(&t, h.0, h.1));
        let gx = t.apply_mixed(g, &x).unwrap();
        let gy = t.apply_mixed(g, &y).unwrap();
        prop_assert_eq!(t.apply_mixed(g, &r.add(&x, &y)).unwrap(), r.add(&gx, &gy));
        prop_assert_eq!(t.apply_mixed(g, &r.mul(&x, &y)).unwrap(), r.mul(&gx, &gy));
        let gh = t.group().mul(g, h);
        prop_assert_eq!(t.apply_mixed(gh, &x).unwrap(), t.apply_mixed(g, &t.apply_mixed(h, &x).unwrap()).unwrap());
    }

    #[test]
    fn laurent_action_composes(coeffs in proptest::collection::vec(0u64..64, 12), g in (any::<u64>(), any::<u64>()), h in (any::<u64>(), any::<u64>())) {
        let t = TameTower::build(BaseFieldSpec::laurent(2, 1), 2, PrecisionPolicy::default()).unwrap();
        let r = t.laurent_ring().unwrap();
        let l = t.residue_field();
        let x: LaurentElt = r.from_terms(coeffs.iter().enumerate().map(|(k, &c)| (k as i64 - 8, l.from_index(c))), 4);
        let (g, h) = (group_elt(&t, g.0, g.1), group_elt(&t, h.0, h.1));
        let gh = t.group().mul(g, h);
        prop_assert_eq!(t.apply_laurent(gh, &x).unwrap(), t.apply_laurent(g, &t.apply_laurent(h, &x).unwrap()).unwrap());
    }

    #[test]
    fn class_map_properties_hold_for_any_seed(seed in any::<u64>()) {
        for (base, n, bound) in [(BaseFieldSpec::qp(2, 1), 2, None), (BaseFieldSpec::laurent(3, 1), 1, Some(5))] {
            let tower = TameTower::build(base, n, PrecisionPolicy::default()).unwrap();
            let module = ClassModule::build(tower, bound, Exec::Serial).unwrap();
            let report = verify::class_map_properties(&module, 16, seed, Exec::Serial).unwrap();
            prop_assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(6) })]

    #[test]
    fn catalogs_do_not_depend_on_the_seed(seed in any::<u64>()) {
        for (base, n, level_bound) in [(BaseFieldSpec::qp(2, 1), 2, None), (BaseFieldSpec::laurent(2, 1), 2, Some(3))] {
            let cold = EnumerateOptions { level_bound, ..EnumerateOptions::default() };
            let seeded = EnumerateOptions { seed, ..cold };
            prop_assert_eq!(
                enumerator::enumerate_primitive(base, n, cold).unwrap(),
                enumerator::enumerate_primitive(base, n, seeded).unwrap()
            );
        }
    }
}

#[test]
fn inertia_fixes_residue_coefficients_and_permutes_uniformizer_conjugates() {
    let t = quartic_tower();
    let r = t.mixed_ring().unwrap();
    let l = t.residue_field();
    let g = t.group();
    for k in [1u64, 7, 100, 4095] {
        let c = r.teichmuller(&l.from_index(k));
        for a in 0..g.e {
            assert_eq!(t.apply_mixed(GroupElt { a, b: 0 }, &c).unwrap(), c);
        }
    }
    // sigma^a pi = zeta^a pi: the e conjugates of pi are distinct.
    let pi = r.uniformizer();
    let mut conj: Vec<MixedElt> = (0..g.e).map(|a| t.apply_mixed(GroupElt { a, b: 0 }, &pi).unwrap()).collect();
    for (a, x) in conj.iter().enumerate() {
        assert_eq!(r.leading(x).unwrap(), (1, l.pow(t.zeta(), a as u64)));
    }
    conj.dedup();
    assert_eq!(conj.len() as u64, g.e);
}

#[test]
fn base_field_is_fixed_by_the_whole_group() {
    let t = quartic_tower();
    let r = t.mixed_ring().unwrap();
    let emb = t.base_embedding().unwrap();
    let k = t.base_residue_field();
    for x in k.elements() {
        let lift = r.teichmuller(&emb.apply(&x));
        for g in t.group_elements() {
            assert_eq!(t.apply_mixed(g, &lift).unwrap(), lift);
        }
    }
    let int = r.from_int(-37);
    assert!(t.group_elements().into_iter().all(|g| t.apply_mixed(g, &int).unwrap() == int));
}

#[test]
fn galois_matrices_are_stable_under_extra_precision() {
    for (base, n) in [(BaseFieldSpec::qp(2, 1), 2), (BaseFieldSpec::qp(3, 1), 1)] {
        let low = TameTower::build(base, n, PrecisionPolicy::default()).unwrap();
        let digits = low.precision() + low.e();
        let high = TameTower::build(base, n, PrecisionPolicy { digits: Some(digits), ..PrecisionPolicy::default() }).unwrap();
        let a = ClassModule::build(low, None, Exec::Serial).unwrap();
        let b = ClassModule::build(high, None, Exec::Serial).unwrap();
        assert_eq!(a.generators(), b.generators());
        for d in [-1i64, 3, 6, 10] {
            assert_eq!(a.reduce_integer(d).unwrap(), b.reduce_integer(d).unwrap());
        }
    }
}

#[test]
fn too_little_precision_is_reported() {
    let opts = EnumerateOptions { precision: PrecisionPolicy { digits: Some(3), ..PrecisionPolicy::default() }, ..EnumerateOptions::default() };
    let err = enumerator::enumerate_primitive(BaseFieldSpec::qp(2, 1), 2, opts).unwrap_err();
    assert!(matches!(err, wildprim::Error::PrecisionExhausted(_)), "{err}");
}

/// Every emitted submodule is stable and simple, and each class is emitted
/// `(p^h - 1) / (p^d - 1)` times where `h = dim Hom(S, V)` and `d` is the endomorphism degree.
#[test]
fn emitted_submodules_are_simple_with_the_expected_multiplicity() {
    let cases = [
        (BaseFieldSpec::qp(2, 1), 2, None),
        (BaseFieldSpec::qp(2, 2), 2, None),
        (BaseFieldSpec::qp(3, 1), 1, None),
        (BaseFieldSpec::laurent(2, 1), 2, Some(5)),
        (BaseFieldSpec::laurent(2, 2), 1, Some(3)),
    ];
    for (base, n, level_bound) in cases {
        let en = enumerator::enumerate_full(base, n, EnumerateOptions { level_bound, ..EnumerateOptions::default() }, None).unwrap();
        let [s, f] = en.module.generators();
        let p = en.module.p();
        let v = Module::new(p, en.module.dim(), vec![s.clone(), f.clone()]);
        for sub in &en.submodules {
            assert!(v.is_stable(&sub.basis));
            let mut ech = Echelon::new(p, v.dim());
            for r in 0..sub.basis.rows() {
                ech.insert(sub.basis.row(r));
            }
            assert!(modrep::is_simple(&v.submodule(&ech)).unwrap());
        }
        for (k, class) in en.classes.iter().enumerate().filter(|(_, c)| c.dim() == n as usize) {
            let h = modrep::hom_space(&class.module, &v).len() as u32;
            let expected = (u64::from(p).pow(h) - 1) / (u64::from(p).pow(class.end_degree as u32) - 1);
            let emitted = en.submodules.iter().filter(|s| s.class_index == k).count() as u64;
            assert_eq!(emitted, expected, "{} n={n} class {}", base.name(), class.label);
        }
        assert_eq!(en.records.len(), en.submodules.len());
    }
}
