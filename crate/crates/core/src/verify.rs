//! Independent oracles and consistency checks for the enumeration pipeline.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::class_module::{BasisKind, ClassModule, ClassVector};
use crate::local_ring::{LaurentElt, MixedElt, WElt};
use crate::enumerator::{self, EnumerateOptions, Enumeration, ExtensionRecord};
use crate::exec::Exec;
use crate::linalg::{Echelon, FpMatrix};
use crate::modrep::{self, Module};
use crate::tower::{BaseFieldSpec, Characteristic, PrecisionPolicy, TameTower};
use crate::Error;

/// One named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: String,
    pub expected: String,
}

/// Aggregated checks; failures never abort the run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: impl Into<String>, measured: impl ToString, expected: impl ToString) {
        let (measured, expected) = (measured.to_string(), expected.to_string());
        self.checks.push(Check { name: name.into(), passed: measured == expected, measured, expected });
    }

    pub fn push_bool(&mut self, name: impl Into<String>, ok: bool) {
        self.push(name, ok, true);
    }

    /// Record an error from a sub-computation as a failed check.
    pub fn push_error(&mut self, name: impl Into<String>, err: &Error) {
        self.checks.push(Check { name: name.into(), passed: false, measured: format!("error: {err}"), expected: "success".into() });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Different exponent of `Q_2(sqrt d)/Q_2` from the valuation of `f'(alpha)` for a monogenic generator.
pub fn quadratic_different_oracle(d: i64) -> Result<u32, Error> {
    if d == 0 {
        return Err(Error::InvalidInput("zero".into()));
    }
    let mut u = d;
    let mut v = 0u32;
    while u % 2 == 0 {
        u /= 2;
        v += 1;
    }
    let v = v % 2;
    if v == 1 {
        // alpha^2 = 2u (up to squares), Eisenstein: v_E(2 alpha) = 2 + 1.
        return Ok(3);
    }
    match u.rem_euclid(8) {
        // x^2 - u with alpha - 1 a uniformizer-generated integral basis: v_E(2 alpha) = 2.
        3 | 7 => Ok(2),
        // (1 + alpha)/2 is a root of x^2 - x + (1 - u)/4, separable mod 2: unramified.
        5 => Ok(0),
        _ => Err(Error::InvalidInput(format!("{d} is a square in Q_2"))),
    }
}

/// Representatives of the seven nontrivial classes of `Q_2^x / Q_2^x2`.
pub const QUADRATIC_REPRESENTATIVES: [i64; 7] = [-1, 2, -2, 5, -5, 10, -10];

/// For each representative: the position of the record whose parameter line contains its class,
/// the pipeline's different exponent and the oracle's.
pub fn quadratic_agreement(enumeration: &Enumeration) -> Result<Vec<(i64, usize, usize, u32)>, Error> {
    let module = &enumeration.module;
    let mut out = Vec::new();
    for &d in &QUADRATIC_REPRESENTATIVES {
        let v = module.reduce_integer(d)?;
        let mut line = FpMatrix::from_rows(module.p(), std::slice::from_ref(&v.0), module.dim());
        line.rref();
        let pos = enumeration
            .records
            .iter()
            .position(|r| r.parameter_basis == line.row_vecs())
            .ok_or_else(|| Error::InvariantViolation(format!("no record for the class of {d}")))?;
        out.push((d, pos, enumeration.records[pos].differental_exponent, quadratic_different_oracle(d)?));
    }
    Ok(out)
}

/// Serre's mass over the totally ramified degree-`p` records.
pub fn mass(records: &[ExtensionRecord], q: u64) -> Ratio<i128> {
    let mut total = Ratio::from_integer(0i128);
    for r in records.iter().filter(|r| !r.unramified) {
        let p = r.p as i128;
        let aut = if r.closure_order == r.degree { r.degree as i128 } else { 1 };
        let exp = (r.differental_exponent - (r.p as usize - 1)) as u32;
        total += Ratio::new(p, aut * (q as i128).pow(exp));
    }
    total
}

/// Mass of the degree-`p` extensions of the base (expected: `p` in characteristic 0).
pub fn mass_check(base: BaseFieldSpec, opts: EnumerateOptions) -> Result<Ratio<i128>, Error> {
    let records = enumerator::enumerate_primitive(base, 1, opts)?;
    Ok(mass(&records, base.q()))
}

/// Dimension and Hom-multiplicity checks of the module structure theorems.
pub fn structure_checks(base: BaseFieldSpec, n: u32, opts: EnumerateOptions) -> Result<VerificationReport, Error> {
    let tower = TameTower::build(base, n, opts.precision)?;
    let classes = enumerator::group_classes(&tower, opts.seed)?;
    let group = *tower.group();
    let module = ClassModule::build(tower.clone(), opts.level_bound, opts.exec)?;
    let p = tower.p();
    let name = format!("{} n={n}", base.name());
    let mut report = VerificationReport::default();
    match base.characteristic {
        Characteristic::Zero => {
            report.push(format!("{name}: dimension = [L:Q_p] + 2"), module.dim(), tower.degree_over_base() * base.f + 2);
            let [s, f] = module.generators();
            let v = Module::new(p, module.dim(), vec![s.clone(), f.clone()]);
            let [rs, rf] = group.regular_generators(p);
            let regular = Module::new(p, group.order() as usize, vec![rs, rf]);
            let one = FpMatrix::identity(p, 1);
            let trivial = Module::new(p, 1, vec![one.clone(), one]);
            let [ws, wf] = module.omega_generators();
            let omega = Module::new(
                p,
                1,
                vec![FpMatrix::from_rows(p, &[vec![ws]], 1), FpMatrix::from_rows(p, &[vec![wf]], 1)],
            );
            let rows = opts.exec.map(&classes, |c| {
                let measured = modrep::hom_space(&c.module, &v).len();
                let expected = base.f * modrep::hom_space(&c.module, &regular).len()
                    + modrep::hom_space(&c.module, &trivial).len()
                    + modrep::hom_space(&c.module, &omega).len();
                (c.label.clone(), measured, expected)
            });
            for (label, measured, expected) in rows {
                report.push(format!("{name}: dim Hom({label}, V)"), measured, expected);
            }
            let expected_omega = expected_omega(&tower);
            report.push(format!("{name}: boundary character"), format!("{:?}", module.omega_generators()), format!("{expected_omega:?}"));
        }
        Characteristic::P => {
            let bound = opts.level_bound.unwrap_or(0);
            let graded = module.basis().graded_dimensions();
            let fprime = tower.residue_field().degree();
            let mut measured = Vec::new();
            let mut expected = Vec::new();
            for i in 1..=bound {
                measured.push(graded.get(&(crate::class_module::BasisKind::PoleLevel, i)).copied().unwrap_or(0));
                expected.push(if i % p as usize == 0 { 0 } else { fprime });
            }
            measured.push(graded.get(&(crate::class_module::BasisKind::Constant, 0)).copied().unwrap_or(0));
            expected.push(1);
            report.push(format!("{name} B={bound}: graded dimensions"), format!("{measured:?}"), format!("{expected:?}"));
        }
    }
    Ok(report)
}

/// Action of `sigma`, `phi` on `mu_p`, computed from the tower data alone.
///
/// `mu_p` is generated by `1 + eps pi^c + ...` with `eps^(p-1) = -1`, so
/// `sigma` acts by `zeta^c` and `phi` by `eps^(q-1) = (-1)^((q-1)/(p-1))`.
pub fn expected_omega(tower: &TameTower) -> [u8; 2] {
    let p = tower.p() as u64;
    if tower.base().characteristic == Characteristic::P {
        return [1, 1];
    }
    let l = tower.residue_field();
    let z = l.pow(tower.zeta(), tower.c() as u64);
    debug_assert!(z.0[1..].iter().all(|&c| c == 0));
    let sigma = z.0[0] as u8;
    let phi = if ((tower.q() - 1) / (p - 1)) % 2 == 0 { 1 } else { (p - 1) as u8 };
    [sigma, phi]
}

/// Duality, divisibility, brute-force, precision and execution-mode checks.
pub fn cross_checks(base: BaseFieldSpec, n: u32, opts: EnumerateOptions) -> Result<VerificationReport, Error> {
    let mut report = VerificationReport::default();
    let name = match opts.level_bound {
        Some(b) => format!("{} n={n} B={b}", base.name()),
        None => format!("{} n={n}", base.name()),
    };
    let en = enumerator::enumerate_full(base, n, opts, None)?;
    let module = &en.module;
    let p = module.p();
    let group = *module.tower().group();
    let [s, f] = module.generators();

    // Galois relations on the class module.
    let id = FpMatrix::identity(p, module.dim());
    let relations = s.pow(group.e) == id
        && f.pow(group.frobenius_order()) == id
        && f.mul(s).mul(&f.inverse().unwrap_or_else(|| id.clone())) == s.pow(group.q);
    report.push_bool(format!("{name}: Galois relations"), relations);

    // Level divisibility and the differental exponent formula.
    let pc = module.basis().boundary_level();
    let div_ok = en.records.iter().all(|r| {
        let degenerate = n == 1 && (r.level == 0 || Some(r.level) == pc);
        (r.level % p as usize != 0 || degenerate)
            && r.differental_exponent == if r.unramified { 0 } else { r.level + r.degree as usize - 1 }
    });
    report.push_bool(format!("{name}: level divisibility and d = level + p^n - 1"), div_ok);

    // Duality: omega (x) rho^-T is a representation of G agreeing with direct evaluation.
    let v = Module::new(p, module.dim(), vec![s.clone(), f.clone()]);
    let elements = group.elements();
    let mut dual_ok = true;
    for sub in &en.submodules {
        let mut ech = Echelon::new(p, module.dim());
        for r in 0..sub.basis.rows() {
            ech.insert(sub.basis.row(r));
        }
        let restricted = v.submodule(&ech);
        let [ds, df] = enumerator::dual_action(module, &restricted)?;
        let rho = |g| group.represent(g, &restricted.generators()[0], &restricted.generators()[1]);
        let dual = |g| group.represent(g, &ds, &df);
        for &g in elements.iter() {
            let direct = rho(group.inv(g)).transpose().scale(module.omega(g));
            if direct != dual(g) {
                dual_ok = false;
            }
        }
        for &g in elements.iter().step_by(7) {
            for &h in elements.iter().step_by(5) {
                if dual(group.mul(g, h)) != dual(g).mul(&dual(h)) {
                    dual_ok = false;
                }
            }
        }
    }
    report.push_bool(format!("{name}: duality omega (x) rho^-T"), dual_ok);

    // Brute-force oracle on small modules.
    if module.dim() <= 14 {
        let mut fast: Vec<Vec<Vec<u8>>> = en
            .submodules
            .iter()
            .map(|s| {
                let mut m = s.basis.clone();
                m.rref();
                m.row_vecs()
            })
            .collect();
        fast.sort();
        match modrep::brute_simple_submodules(&v, n as usize) {
            Ok(brute) => {
                let brute: Vec<Vec<Vec<u8>>> = brute.iter().map(|m| m.row_vecs()).collect();
                report.push(format!("{name}: brute-force submodule count"), brute.len(), fast.len());
                report.push_bool(format!("{name}: brute-force subspaces identical"), brute == fast);
            }
            // Too many subspaces to scan: the oracle does not apply.
            Err(Error::TooLarge(_)) => {}
            Err(e) => report.push_error(format!("{name}: brute-force submodule count"), &e),
        }
    }

    // Precision stability (characteristic 0).
    if base.characteristic == Characteristic::Zero {
        let e = module.tower().e();
        let digits = module.tower().precision();
        let higher = EnumerateOptions { precision: PrecisionPolicy { digits: Some(digits + e), ..opts.precision }, ..opts };
        let other = enumerator::enumerate_full(base, n, higher, Some(en.classes.clone()))?;
        report.push_bool(format!("{name}: identical catalog at precision N + e"), other.records == en.records);
    }

    // Execution mode.
    let other_exec = if opts.exec == Exec::Serial { Exec::Parallel } else { Exec::Serial };
    let other = enumerator::enumerate_full(base, n, EnumerateOptions { exec: other_exec, ..opts }, Some(en.classes.clone()))?;
    report.push_bool(format!("{name}: identical catalog serial vs pooled"), other.records == en.records);

    if base.characteristic == Characteristic::Zero {
        report.push(format!("{name}: boundary character"), format!("{:?}", module.omega_generators()), format!("{:?}", expected_omega(module.tower())));
    }
    Ok(report)
}

/// Random-sample properties of the class map: additivity, kernel, equivariance, filtration adaptation.
///
/// Each sample draws from its own seeded stream, so the outcome does not depend on `exec`.
pub fn class_map_properties(module: &ClassModule, samples: usize, seed: u64, exec: Exec) -> Result<VerificationReport, Error> {
    let tower = module.tower();
    let group = *tower.group();
    let name = format!("{} n={}", tower.base().name(), tower.n());
    let p = module.p();
    let fp = crate::linalg::Fp::new(p);
    let add = |a: &ClassVector, b: &ClassVector| ClassVector(a.0.iter().zip(&b.0).map(|(&x, &y)| fp.add(x, y)).collect());
    let descriptors = module.basis().descriptors();
    // The class of something at unit level >= i (char 0) or pole order <= i (char p) stays in that part of the basis.
    let adapted = |v: &ClassVector, i: usize, upward: bool| {
        v.0.iter().zip(descriptors).all(|(&c, d)| {
            c == 0 || if upward { d.kind != BasisKind::Uniformizer && d.index >= i } else { d.index <= i }
        })
    };
    let equivariant = |rx: &ClassVector, images: [ClassVector; 2]| {
        images.iter().zip(module.generators()).all(|(img, m)| img.0 == m.mul_vec(&rx.0))
    };
    let indices: Vec<u64> = (0..samples as u64).collect();
    let outcomes: Vec<[bool; 4]> = match tower.base().characteristic {
        Characteristic::Zero => {
            let ring = tower.mixed_ring().expect("char 0");
            let w = ring.coefficients();
            let e = ring.e();
            let pc = module.basis().boundary_level().expect("char 0");
            let rand_unit = |rng: &mut ChaCha8Rng| -> MixedElt {
                let mut cs: Vec<WElt> =
                    (0..e).map(|_| WElt((0..w.degree()).map(|_| rng.gen_range(0..w.modulus())).collect())).collect();
                if w.residue(&cs[0]).is_zero() {
                    cs[0] = w.add(&cs[0], &w.one());
                }
                ring.from_coefficients(&cs)
            };
            let times_pi = |x: MixedElt, k: usize| ring.mul(&x, &ring.monomial(&w.one(), k));
            exec.try_map(&indices, |&i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
                let x = times_pi(rand_unit(&mut rng), rng.gen_range(0..p as usize));
                let y = times_pi(rand_unit(&mut rng), rng.gen_range(0..p as usize));
                let (rx, ry) = (module.reduce_mixed(&x)?, module.reduce_mixed(&y)?);
                let hom = module.reduce_mixed(&ring.mul(&x, &y))? == add(&rx, &ry);
                // Valuation at most 1 keeps z^p within the working precision.
                let z = times_pi(rand_unit(&mut rng), rng.gen_range(0..2));
                let kernel = module.reduce_mixed(&ring.pth_power(&z))?.is_zero();
                let images = [
                    module.reduce_mixed(&tower.apply_mixed(group.sigma(), &x)?)?,
                    module.reduce_mixed(&tower.apply_mixed(group.phi(), &x)?)?,
                ];
                let level = rng.gen_range(1..=pc);
                let unit = ring.add(&ring.one(), &times_pi(rand_unit(&mut rng), level));
                let filtration = adapted(&module.reduce_mixed(&unit)?, level, true);
                Ok([hom, kernel, equivariant(&rx, images), filtration])
            })?
        }
        Characteristic::P => {
            let ring = tower.laurent_ring().expect("char p");
            let l = tower.residue_field();
            let bound = module.basis().level_bound().expect("char p") as i64;
            let prec = 4;
            let rand_series = |rng: &mut ChaCha8Rng, poles: i64| -> LaurentElt {
                let terms: Vec<_> = (-poles..prec).map(|j| (j, l.from_index(rng.gen_range(0..l.order())))).collect();
                ring.from_terms(terms, prec)
            };
            exec.try_map(&indices, |&i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
                let (x, y) = (rand_series(&mut rng, bound), rand_series(&mut rng, bound));
                let rx = module.reduce_laurent(&x)?;
                let hom = module.reduce_laurent(&ring.add(&x, &y))? == add(&rx, &module.reduce_laurent(&y)?);
                let kernel = module.reduce_laurent(&ring.sub(&ring.pth_power(&x), &x))?.is_zero();
                let images = [
                    module.reduce_laurent(&tower.apply_laurent(group.sigma(), &x)?)?,
                    module.reduce_laurent(&tower.apply_laurent(group.phi(), &x)?)?,
                ];
                let level = rng.gen_range(0..=bound);
                let filtration = adapted(&module.reduce_laurent(&rand_series(&mut rng, level))?, level as usize, false);
                Ok([hom, kernel, equivariant(&rx, images), filtration])
            })?
        }
    };
    let labels = ["homomorphism", "kernel contains p-th powers", "Galois equivariance", "filtration adaptation"];
    let mut report = VerificationReport::default();
    for (k, label) in labels.iter().enumerate() {
        let failures = outcomes.iter().filter(|o| !o[k]).count();
        report.push(format!("{name}: class map {label} ({samples} samples, failures)"), failures, 0);
    }
    Ok(report)
}

/// Named check suites for the command-line `verify` front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quick,
    Full,
}

/// Towers covered by a suite: `(base, n, level bound)`.
pub fn suite_instances(suite: Suite) -> Vec<(BaseFieldSpec, u32, Option<usize>)> {
    let mut out = vec![
        (BaseFieldSpec::qp(2, 1), 1, None),
        (BaseFieldSpec::qp(2, 1), 2, None),
        (BaseFieldSpec::qp(2, 2), 1, None),
        (BaseFieldSpec::qp(2, 2), 2, None),
        (BaseFieldSpec::qp(3, 1), 1, None),
        (BaseFieldSpec::laurent(2, 1), 1, Some(3)),
        (BaseFieldSpec::laurent(2, 1), 1, Some(5)),
        (BaseFieldSpec::laurent(2, 1), 2, Some(5)),
    ];
    if suite == Suite::Full {
        out.extend([
            (BaseFieldSpec::qp(2, 1), 3, None),
            (BaseFieldSpec::qp(3, 1), 2, None),
            (BaseFieldSpec::qp(5, 1), 1, None),
            (BaseFieldSpec::laurent(3, 1), 1, Some(4)),
        ]);
    }
    out
}

/// Run every check of a suite. Sub-computation errors become failed checks.
pub fn run_suite(suite: Suite, seed: u64, exec: Exec) -> VerificationReport {
    let samples = 1000;
    let mut report = VerificationReport::default();
    let opts = EnumerateOptions { seed, exec, ..EnumerateOptions::default() };

    match enumerator::enumerate_full(BaseFieldSpec::qp(2, 1), 1, opts, None).and_then(|en| quadratic_agreement(&en)) {
        Ok(rows) => {
            for (d, _, pipeline, oracle) in rows {
                report.push(format!("Q_2 n=1: d of Q_2(sqrt {d}) against the quadratic oracle"), pipeline, oracle);
            }
        }
        Err(e) => report.push_error("Q_2 n=1: quadratic oracle agreement", &e),
    }
    for base in [BaseFieldSpec::qp(2, 1), BaseFieldSpec::qp(2, 2)] {
        let name = format!("{}: mass of degree-2 extensions", base.name());
        match mass_check(base, opts) {
            Ok(m) => report.push(name, m, 2),
            Err(e) => report.push_error(name, &e),
        }
    }
    let reports = exec.map(&suite_instances(suite), |&(base, n, level_bound)| {
        let opts = EnumerateOptions { level_bound, ..opts };
        let mut r = VerificationReport::default();
        let name = format!("{} n={n}", base.name());
        match structure_checks(base, n, opts) {
            Ok(x) => r.merge(x),
            Err(e) => r.push_error(format!("{name}: structure checks"), &e),
        }
        match cross_checks(base, n, opts) {
            Ok(x) => r.merge(x),
            Err(e) => r.push_error(format!("{name}: cross checks"), &e),
        }
        let props = TameTower::build(base, n, opts.precision)
            .and_then(|t| ClassModule::build(t, level_bound, Exec::Serial))
            .and_then(|m| class_map_properties(&m, samples, seed, exec));
        match props {
            Ok(x) => r.merge(x),
            Err(e) => r.push_error(format!("{name}: class map properties"), &e),
        }
        r
    });
    for r in reports {
        report.merge(r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_values() {
        assert_eq!(quadratic_different_oracle(2).unwrap(), 3);
        assert_eq!(quadratic_different_oracle(-1).unwrap(), 2);
        assert_eq!(quadratic_different_oracle(5).unwrap(), 0);
        assert_eq!(quadratic_different_oracle(-10).unwrap(), 3);
        assert_eq!(quadratic_different_oracle(3).unwrap(), 2);
        assert!(quadratic_different_oracle(17).is_err());
        assert!(quadratic_different_oracle(4).is_err());
    }

    #[test]
    fn mass_from_d_multiset() {
        let recs = enumerator::enumerate_primitive(BaseFieldSpec::qp(2, 1), 1, EnumerateOptions::default()).unwrap();
        assert_eq!(mass(&recs, 2), Ratio::from_integer(2));
    }

    #[test]
    fn quadratic_agreement_q2() {
        let en = enumerator::enumerate_full(BaseFieldSpec::qp(2, 1), 1, EnumerateOptions::default(), None).unwrap();
        for (d, _, pipeline, oracle) in quadratic_agreement(&en).unwrap() {
            assert_eq!(pipeline as u32, oracle, "d = {d}");
        }
    }

    #[test]
    fn small_cross_checks_pass() {
        let r = cross_checks(BaseFieldSpec::qp(2, 1), 1, EnumerateOptions::default()).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let opts = EnumerateOptions { level_bound: Some(3), ..EnumerateOptions::default() };
        let r = cross_checks(BaseFieldSpec::laurent(2, 1), 1, opts).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.name.contains("brute-force")));
    }

    #[test]
    fn class_map_samples() {
        let opts = EnumerateOptions::default();
        for (base, n, lb) in [(BaseFieldSpec::qp(2, 1), 2, None), (BaseFieldSpec::qp(3, 1), 1, None), (BaseFieldSpec::laurent(2, 1), 2, Some(5))] {
            let tower = TameTower::build(base, n, opts.precision).unwrap();
            let module = ClassModule::build(tower, lb, Exec::Serial).unwrap();
            let r = class_map_properties(&module, 50, 1, Exec::Parallel).unwrap();
            assert_eq!(r, class_map_properties(&module, 50, 1, Exec::Serial).unwrap());
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn structure_q2() {
        let r = structure_checks(BaseFieldSpec::qp(2, 1), 2, EnumerateOptions::default()).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let opts = EnumerateOptions { level_bound: Some(5), ..EnumerateOptions::default() };
        let r = structure_checks(BaseFieldSpec::laurent(2, 1), 1, opts).unwrap();
        assert!(r.all_passed());
    }
}
