//! Primitive extensions of degree `p^n` from simple submodules of the class module.

use serde::{Deserialize, Serialize};

use crate::class_module::{ClassModule, FiltrationPosition};
use crate::exec::Exec;
use crate::linalg::FpMatrix;
use crate::modrep::{self, ChopOptions, Module, SimpleModuleClass, SimpleSubmodule, Word};
use crate::tower::{BaseFieldSpec, Characteristic, PrecisionPolicy, TameGroup, TameTower};
use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOptions {
    /// Pole-order bound `B` (characteristic p only).
    pub level_bound: Option<usize>,
    pub precision: PrecisionPolicy,
    /// Seed of the MeatAxe word sampler.
    pub seed: u64,
    #[serde(skip)]
    pub exec: Exec,
}

/// One primitive extension `E/K` of degree `p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRecord {
    pub base: String,
    pub p: u32,
    pub f: usize,
    pub characteristic: Characteristic,
    pub n: u32,
    pub degree: u64,
    pub representation: String,
    pub representation_fingerprint: String,
    pub end_degree: usize,
    /// Basis of the parameter subspace (reduced echelon rows over the class basis).
    pub parameter_basis: Vec<Vec<u8>>,
    pub filtration_index: usize,
    pub level: usize,
    pub differental_excess: usize,
    pub differental_exponent: usize,
    pub discriminant_exponent: usize,
    pub ramification_index: u64,
    pub image_order: u64,
    pub closure_order: u64,
    pub closure_label: Option<String>,
    pub unramified: bool,
    pub tres_ramifiee: bool,
}

/// A simple `F_p[G_n]`-module of dimension `n` with descriptive metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationInfo {
    pub label: String,
    pub dim: usize,
    pub end_degree: usize,
    /// Multiplicity as a composition factor of the regular module.
    pub regular_multiplicity: usize,
    pub fingerprint: String,
    /// Least `j` such that `zeta^j` is an eigenvalue of `sigma` (over the residue field of `L_n`).
    pub inertia_exponent: Option<u64>,
    pub sigma_charpoly: Vec<u32>,
    pub phi_charpoly: Vec<u32>,
}

/// Words `sigma^a phi^b` for all group elements, in canonical order.
pub fn group_words(group: &TameGroup) -> Vec<Word> {
    group.elements().into_iter().map(|g| vec![(0, g.a), (1, g.b)]).collect()
}

/// All simple `F_p[G_n]`-modules (composition factors of the regular module), sorted by fingerprint.
pub fn group_classes(tower: &TameTower, seed: u64) -> Result<Vec<SimpleModuleClass>, Error> {
    let group = tower.group();
    let [s, f] = group.regular_generators(tower.p());
    let regular = Module::new(tower.p(), group.order() as usize, vec![s, f]);
    modrep::composition_classes(&regular, &group_words(group), ChopOptions { seed, ..ChopOptions::default() })
}

/// Cheap consistency check of class data from an untrusted source (e.g. a cache):
/// each module satisfies the group relations and matches its fingerprint, and the
/// composition multiplicities account for the whole regular module.
pub fn classes_consistent(tower: &TameTower, classes: &[SimpleModuleClass]) -> bool {
    let group = tower.group();
    let words = group_words(group);
    let total: usize = classes.iter().map(|c| c.dim() * c.multiplicity).sum();
    total == group.order() as usize
        && classes.iter().all(|c| {
            let m = &c.module;
            if m.p() != tower.p() || m.generators().len() != 2 {
                return false;
            }
            let (s, f) = (&m.generators()[0], &m.generators()[1]);
            let id = FpMatrix::identity(m.p(), m.dim());
            s.pow(group.e) == id
                && f.pow(group.frobenius_order()) == id
                && f.mul(s) == s.pow(group.q).mul(f)
                && modrep::Fingerprint::of(m, &words) == c.fingerprint
        })
}

/// Simple classes of dimension `n`, with metadata.
pub fn list_representations(base: BaseFieldSpec, n: u32, seed: u64) -> Result<Vec<RepresentationInfo>, Error> {
    let tower = TameTower::build(base, n, PrecisionPolicy::default())?;
    let classes = group_classes(&tower, seed)?;
    Ok(describe_classes(&tower, &classes, n))
}

pub fn describe_classes(tower: &TameTower, classes: &[SimpleModuleClass], n: u32) -> Vec<RepresentationInfo> {
    classes
        .iter()
        .filter(|c| c.dim() == n as usize)
        .map(|c| {
            let [s, f] = [&c.module.generators()[0], &c.module.generators()[1]];
            let sigma_charpoly = s.charpoly();
            RepresentationInfo {
                label: c.label.clone(),
                dim: c.dim(),
                end_degree: c.end_degree,
                regular_multiplicity: c.multiplicity,
                fingerprint: c.fingerprint.digest(),
                inertia_exponent: inertia_exponent(tower, &sigma_charpoly),
                sigma_charpoly,
                phi_charpoly: f.charpoly(),
            }
        })
        .collect()
}

fn inertia_exponent(tower: &TameTower, charpoly: &[u32]) -> Option<u64> {
    let l = tower.residue_field();
    (0..tower.e() as u64).find(|&j| {
        let x = l.pow(tower.zeta(), j);
        let val = charpoly.iter().rev().fold(l.zero(), |acc, &c| l.add(&l.mul(&acc, &x), &l.from_prime(c)));
        val.is_zero()
    })
}

/// Everything computed for one enumeration, for reuse by the verification layer.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub module: ClassModule,
    pub classes: Vec<SimpleModuleClass>,
    pub submodules: Vec<SimpleSubmodule>,
    pub records: Vec<ExtensionRecord>,
}

/// All primitive extensions of degree `p^n` of the base field.
pub fn enumerate_primitive(base: BaseFieldSpec, n: u32, opts: EnumerateOptions) -> Result<Vec<ExtensionRecord>, Error> {
    Ok(enumerate_full(base, n, opts, None)?.records)
}

/// Like [`enumerate_primitive`], optionally reusing precomputed group classes.
pub fn enumerate_full(
    base: BaseFieldSpec,
    n: u32,
    opts: EnumerateOptions,
    classes: Option<Vec<SimpleModuleClass>>,
) -> Result<Enumeration, Error> {
    if base.characteristic == Characteristic::P && opts.level_bound.is_none() {
        return Err(Error::InvalidInput("a level bound is required in characteristic p".into()));
    }
    let tower = TameTower::build(base, n, opts.precision)?;
    let classes = match classes {
        Some(c) => c,
        None => group_classes(&tower, opts.seed)?,
    };
    let module = ClassModule::build(tower, opts.level_bound, opts.exec)?;
    let [s, f] = module.generators();
    let v = Module::new(module.p(), module.dim(), vec![s.clone(), f.clone()]);
    let selected: Vec<SimpleModuleClass> = classes.iter().filter(|c| c.dim() == n as usize).cloned().collect();
    let mut submodules = modrep::enumerate_simple_submodules(&v, &selected, opts.exec)?;
    // Class indices refer to the full class list.
    for sub in &mut submodules {
        sub.class_index = classes.iter().position(|c| c.label == sub.class_label).expect("class exists");
    }
    let mut records = opts.exec.try_map(&submodules, |sub| make_record(&module, &v, &classes[sub.class_index], sub))?;
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| {
        (records[a].level, submodules[a].class_index, &records[a].parameter_basis).cmp(&(
            records[b].level,
            submodules[b].class_index,
            &records[b].parameter_basis,
        ))
    });
    records = order.iter().map(|&i| records[i].clone()).collect();
    let submodules = order.iter().map(|&i| submodules[i].clone()).collect();
    Ok(Enumeration { module, classes, submodules, records })
}

/// Action of `sigma`, `phi` on `Hom(D, boundary line)`: `omega(g) rho(g)^-T`.
pub fn dual_action(module: &ClassModule, restricted: &Module) -> Result<[FpMatrix; 2], Error> {
    let omega = module.omega_generators();
    let mut out = Vec::with_capacity(2);
    for (g, w) in restricted.generators().iter().zip(omega) {
        let inv = g.inverse().ok_or_else(|| Error::InvariantViolation("non-invertible group action".into()))?;
        out.push(inv.transpose().scale(w));
    }
    Ok([out[0].clone(), out[1].clone()])
}

fn make_record(
    module: &ClassModule,
    v: &Module,
    class: &SimpleModuleClass,
    sub: &SimpleSubmodule,
) -> Result<ExtensionRecord, Error> {
    let tower = module.tower();
    let base = tower.base();
    let p = tower.p();
    let n = tower.n();
    let basis = module.basis();
    let index = match module.filtration_position(&sub.basis) {
        FiltrationPosition::Exact(i) => i,
        FiltrationPosition::Straddle { outer, inner } => {
            return Err(Error::InvariantViolation(format!(
                "simple submodule straddles filtration indices {outer} and {inner}"
            )))
        }
    };
    let level = match base.characteristic {
        Characteristic::Zero => basis.boundary_level().expect("char 0") - index,
        Characteristic::P => index,
    };
    let pc = basis.boundary_level();
    let divisible = level % p as usize == 0;
    let degenerate_ok = n == 1 && (level == 0 || Some(level) == pc);
    if divisible && !degenerate_ok {
        return Err(Error::InvariantViolation(format!("level {level} is divisible by p (n = {n})")));
    }
    let degree = (p as u64).pow(n);
    let unramified = level == 0;
    let differental_exponent = if unramified { 0 } else { level + degree as usize - 1 };
    let mut ech = crate::linalg::Echelon::new(p, v.dim());
    for r in 0..sub.basis.rows() {
        ech.insert(sub.basis.row(r));
    }
    let restricted = v.submodule(&ech);
    // The closure is C x| image, with C = Hom(D, mu_p) carrying omega (x) rho^-T.
    let dual = dual_action(module, &restricted)?;
    let image_order = modrep::matrix_group_order(&dual, p, n as usize) as u64;
    let closure_order = degree * image_order;
    let closure_label = match (p, n, closure_order) {
        (2, 2, 12) => Some("A4".to_string()),
        (2, 2, 24) => Some("S4".to_string()),
        _ => None,
    };
    Ok(ExtensionRecord {
        base: base.name(),
        p,
        f: base.f,
        characteristic: base.characteristic,
        n,
        degree,
        representation: class.label.clone(),
        representation_fingerprint: class.fingerprint.digest(),
        end_degree: class.end_degree,
        parameter_basis: sub.basis.row_vecs(),
        filtration_index: index,
        level,
        differental_excess: level,
        differental_exponent,
        discriminant_exponent: differental_exponent,
        ramification_index: if unramified { 1 } else { degree },
        image_order,
        closure_order,
        closure_label,
        unramified,
        tres_ramifiee: base.characteristic == Characteristic::Zero && n == 1 && Some(level) == pc,
    })
}
