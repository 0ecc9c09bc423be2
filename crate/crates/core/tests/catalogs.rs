//! Catalog-level values frozen from independent derivations or quoted from the source text.

use wildprim::class_module::{ClassModule, Representative};
use wildprim::enumerator::{self, EnumerateOptions};
use wildprim::linalg::FpMatrix;
use wildprim::modrep::{self, ChopOptions, Module};
use wildprim::tower::TameTower;
use wildprim::{BaseFieldSpec, Exec, PrecisionPolicy};

fn tally(v: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for x in v {
        *m.entry(x).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

#[test]
fn tower_parameters() {
    let t = TameTower::build(BaseFieldSpec::qp(2, 1), 2, PrecisionPolicy::default()).unwrap();
    assert_eq!((t.e(), t.s(), t.residue_field().degree(), t.degree_over_base(), t.group().order()), (3, 2, 6, 18, 18));
    let t = TameTower::build(BaseFieldSpec::qp(2, 1), 3, PrecisionPolicy::default()).unwrap();
    assert_eq!((t.e(), t.s(), t.residue_field().degree()), (7, 3, 21));
    let t = TameTower::build(BaseFieldSpec::qp(2, 2), 2, PrecisionPolicy::default()).unwrap();
    assert_eq!((t.s(), t.group().order(), t.group().is_commutative(), t.group().exponent()), (1, 9, true, 3));
}

#[test]
fn class_module_dimensions() {
    let dim = |base, n, b| {
        let t = TameTower::build(base, n, PrecisionPolicy::default()).unwrap();
        ClassModule::build(t, b, Exec::Parallel).unwrap().dim()
    };
    assert_eq!(dim(BaseFieldSpec::qp(2, 1), 1, None), 3);
    assert_eq!(dim(BaseFieldSpec::qp(2, 1), 2, None), 20);
    assert_eq!(dim(BaseFieldSpec::qp(2, 1), 3, None), 149);
    assert_eq!(dim(BaseFieldSpec::laurent(2, 1), 1, Some(5)), 4);
    assert_eq!(dim(BaseFieldSpec::laurent(2, 2), 1, Some(1)), 3);
}

#[test]
fn galois_matrices_generate_the_full_group() {
    let t = TameTower::build(BaseFieldSpec::qp(2, 1), 2, PrecisionPolicy::default()).unwrap();
    let m = ClassModule::build(t, None, Exec::Parallel).unwrap();
    let [s, f] = m.generators();
    assert_eq!(modrep::matrix_group_order(&[s.clone(), f.clone()], 2, m.dim()), 18);
}

#[test]
fn quadratic_catalog_of_q2() {
    let recs = enumerator::enumerate_primitive(BaseFieldSpec::qp(2, 1), 1, EnumerateOptions::default()).unwrap();
    assert_eq!(tally(recs.iter().map(|r| r.differental_exponent)), [(0, 1), (2, 2), (3, 4)]);
    assert_eq!(recs.iter().filter(|r| r.tres_ramifiee).count(), 4);
    assert!(recs.iter().filter(|r| r.tres_ramifiee).all(|r| r.differental_exponent == 3));
    assert_eq!(recs.iter().filter(|r| r.unramified).count(), 1);
    assert!(recs.iter().all(|r| r.closure_order == 2));
}

#[test]
fn quartic_catalog_of_q2() {
    let recs = enumerator::enumerate_primitive(BaseFieldSpec::qp(2, 1), 2, EnumerateOptions::default()).unwrap();
    assert_eq!(recs.len(), 4);
    let a4: Vec<_> = recs.iter().filter(|r| r.closure_label.as_deref() == Some("A4")).collect();
    let s4: Vec<_> = recs.iter().filter(|r| r.closure_label.as_deref() == Some("S4")).collect();
    assert_eq!((a4.len(), s4.len()), (1, 3));
    assert_eq!((a4[0].image_order, a4[0].closure_order, a4[0].differental_exponent), (3, 12, 6));
    assert!(s4.iter().all(|r| r.image_order == 6 && r.closure_order == 24));
    assert_eq!(tally(s4.iter().map(|r| r.filtration_index)), [(1, 2), (5, 1)]);
    assert_eq!(tally(s4.iter().map(|r| r.differental_exponent)), [(4, 1), (8, 2)]);
}

#[test]
fn no_s4_quartics_over_q4() {
    let recs = enumerator::enumerate_primitive(BaseFieldSpec::qp(2, 2), 2, EnumerateOptions::default()).unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r.closure_order == 12));
}

#[test]
fn sixteen_octics() {
    let recs = enumerator::enumerate_primitive(BaseFieldSpec::qp(2, 1), 3, EnumerateOptions::default()).unwrap();
    assert_eq!(recs.len(), 16);
    assert!(recs.iter().all(|r| r.degree == 8 && r.ramification_index == 8));
}

#[test]
fn artin_schreier_quadratics() {
    let opts = |b| EnumerateOptions { level_bound: Some(b), ..EnumerateOptions::default() };
    let base = BaseFieldSpec::laurent(2, 1);
    let counts: Vec<usize> =
        [1, 3, 5].iter().map(|&b| enumerator::enumerate_primitive(base, 1, opts(b)).unwrap().len()).collect();
    assert_eq!(counts, [3, 7, 15]);
    let recs = enumerator::enumerate_primitive(base, 1, opts(5)).unwrap();
    assert_eq!(tally(recs.iter().map(|r| r.differental_exponent)), [(0, 1), (2, 2), (4, 4), (6, 8)]);
}

#[test]
fn representation_counts() {
    let reps = enumerator::list_representations(BaseFieldSpec::qp(2, 1), 2, 0).unwrap();
    assert_eq!(reps.len(), 2);
    assert!(reps.iter().all(|r| r.dim == 2));
    assert_eq!(enumerator::list_representations(BaseFieldSpec::qp(2, 1), 1, 0).unwrap().len(), 1);
    // Over F_2((t)) the representation through the unramified cubic is not absolutely irreducible.
    let reps = enumerator::list_representations(BaseFieldSpec::laurent(2, 1), 2, 0).unwrap();
    assert!(reps.iter().any(|r| r.end_degree == 2));
}

/// `Gal(Q_2(zeta_7)/Q_2)` acting on the classes of `Q_8^x`: exactly one stable simple plane.
#[test]
fn unramified_cubic_has_a_unique_stable_plane() {
    let tower = TameTower::build(BaseFieldSpec::qp(2, 3), 1, PrecisionPolicy::default()).unwrap();
    let module = ClassModule::build(tower, None, Exec::Serial).unwrap();
    let ring = module.tower().mixed_ring().unwrap();
    let w = ring.coefficients();
    let frob = w.frobenius_power_matrix(1);
    let cols: Vec<Vec<u8>> = module
        .basis()
        .representatives()
        .iter()
        .map(|rep| {
            let Representative::Mixed(x) = rep else { unreachable!() };
            module.reduce_mixed(&ring.apply_semilinear(x, Some(&frob), &[w.one()])).unwrap().0
        })
        .collect();
    let phi = FpMatrix::from_cols(2, &cols, module.dim());
    assert_eq!(phi.pow(3), FpMatrix::identity(2, module.dim()));
    let v = Module::new(2, module.dim(), vec![phi]);

    let mut shift = FpMatrix::zeros(2, 3, 3);
    for i in 0..3 {
        shift.set((i + 1) % 3, i, 1);
    }
    let regular = Module::new(2, 3, vec![shift]);
    let words: Vec<Vec<(usize, u64)>> = (0..3).map(|k| vec![(0, k)]).collect();
    let classes = modrep::composition_classes(&regular, &words, ChopOptions::default()).unwrap();
    let planes: Vec<_> = classes.iter().filter(|c| c.dim() == 2).cloned().collect();
    let fast = modrep::enumerate_simple_submodules(&v, &planes, Exec::Serial).unwrap();
    assert_eq!(fast.len(), 1);
    assert_eq!(modrep::brute_simple_submodules(&v, 2).unwrap().len(), 1);
}

#[test]
fn cubic_mass_over_q3_and_q9() {
    for f in [1, 2] {
        let m = wildprim::verify::mass_check(BaseFieldSpec::qp(3, f), EnumerateOptions::default()).unwrap();
        assert_eq!(m, num_rational::Ratio::from_integer(3));
    }
}
