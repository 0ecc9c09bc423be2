//! Modular representations: spinning, MeatAxe chopping, Hom/End spaces and
//! enumeration of simple submodules.
//!
//! Matrices act on column vectors; a module is given by the matrices of a
//! fixed generating set of the acting group.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::linalg::{Echelon, Fp, FpMatrix};
use crate::poly::{self, Poly};
use crate::Error;

/// Product `g_{i_1}^{k_1} g_{i_2}^{k_2} ...` of generators.
pub type Word = Vec<(usize, u64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Module {
    p: u32,
    dim: usize,
    gens: Vec<FpMatrix>,
}

impl Module {
    pub fn new(p: u32, dim: usize, gens: Vec<FpMatrix>) -> Self {
        assert!(gens.iter().all(|g| g.rows() == dim && g.cols() == dim && g.p() == p));
        Self { p, dim, gens }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.gens
    }

    pub fn word(&self, w: &Word) -> FpMatrix {
        w.iter().fold(FpMatrix::identity(self.p, self.dim), |acc, &(g, k)| acc.mul(&self.gens[g].pow(k)))
    }

    /// Action on a submodule with the given (echelon) basis.
    pub fn submodule(&self, sub: &Echelon) -> Module {
        let k = sub.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u8>> = sub.rows().iter().map(|u| sub.coords(&g.mul_vec(u))).collect();
                FpMatrix::from_cols(self.p, &cols, k)
            })
            .collect();
        Module::new(self.p, k, gens)
    }

    /// Action on the quotient by a submodule, in the coordinates of the non-pivot positions.
    pub fn quotient(&self, sub: &Echelon) -> Module {
        let free: Vec<usize> = (0..self.dim).filter(|c| !sub.pivots().contains(c)).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u8>> = free
                    .iter()
                    .map(|&c| {
                        let mut w = g.col(c);
                        sub.reduce(&mut w);
                        free.iter().map(|&r| w[r]).collect()
                    })
                    .collect();
                FpMatrix::from_cols(self.p, &cols, free.len())
            })
            .collect();
        Module::new(self.p, free.len(), gens)
    }

    pub fn transpose(&self) -> Module {
        Module::new(self.p, self.dim, self.gens.iter().map(|g| g.transpose()).collect())
    }

    /// Whether the row space of `rows` is invariant.
    pub fn is_stable(&self, rows: &FpMatrix) -> bool {
        let mut ech = Echelon::new(self.p, self.dim);
        for r in 0..rows.rows() {
            ech.insert(rows.row(r));
        }
        ech.rows().iter().all(|u| self.gens.iter().all(|g| ech.contains(&g.mul_vec(u))))
    }
}

/// Smallest invariant subspace containing the seeds.
pub fn spin(gens: &[FpMatrix], seeds: &[Vec<u8>], p: u32, dim: usize) -> Echelon {
    let mut ech = Echelon::new(p, dim);
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push_back(s.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        if ech.len() == dim {
            break;
        }
        for g in gens {
            let w = g.mul_vec(&v);
            if ech.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    ech
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChopOptions {
    pub seed: u64,
    /// Random algebra elements tried per split before giving up.
    pub max_attempts: usize,
}

impl Default for ChopOptions {
    fn default() -> Self {
        Self { seed: 0, max_attempts: 500 }
    }
}

/// Proper nonzero submodule, or `None` if the module is irreducible (Norton-certified).
pub fn split(module: &Module, rng: &mut ChaCha8Rng, max_attempts: usize) -> Result<Option<Echelon>, Error> {
    let (p, n) = (module.p, module.dim);
    if n <= 1 {
        return Ok(None);
    }
    if module.gens.is_empty() {
        let mut e = Echelon::new(p, n);
        e.insert(FpMatrix::identity(p, n).row(0));
        return Ok(Some(e));
    }
    let transposed: Vec<FpMatrix> = module.gens.iter().map(|g| g.transpose()).collect();
    for _ in 0..max_attempts {
        let a = random_algebra_element(module, rng);
        let cp = a.charpoly();
        for g in poly::irreducible_factors(&cp, p) {
            let theta = a.eval_poly(&g);
            let ker = theta.kernel();
            if ker.rows() == 0 {
                continue;
            }
            let sub = spin(&module.gens, &[ker.row(0).to_vec()], p, n);
            if sub.len() < n {
                return Ok(Some(sub));
            }
            if ker.rows() == g.len() - 1 {
                let tker = theta.transpose().kernel();
                let dual = spin(&transposed, &[tker.row(0).to_vec()], p, n);
                if dual.len() < n {
                    // The annihilator of a proper dual submodule is a proper submodule.
                    let ann = dual.to_matrix().kernel();
                    let mut e = Echelon::new(p, n);
                    for r in 0..ann.rows() {
                        e.insert(ann.row(r));
                    }
                    return Ok(Some(e));
                }
                return Ok(None);
            }
        }
    }
    Err(Error::IterationCap(format!("no MeatAxe certificate after {max_attempts} random elements (dim {n})")))
}

fn random_algebra_element(module: &Module, rng: &mut ChaCha8Rng) -> FpMatrix {
    let (p, n) = (module.p, module.dim);
    let mut acc = FpMatrix::zeros(p, n, n);
    while acc.is_zero() {
        for _ in 0..4 {
            let len = rng.gen_range(1..=3);
            let mut w = module.gens[rng.gen_range(0..module.gens.len())].clone();
            for _ in 1..len {
                w = w.mul(&module.gens[rng.gen_range(0..module.gens.len())]);
            }
            let c = rng.gen_range(0..p) as u8;
            acc = acc.add(&w.scale(c));
        }
    }
    acc
}

/// Composition factors, in discovery order.
pub fn chop(module: &Module, opts: ChopOptions) -> Result<Vec<Module>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut stack = vec![module.clone()];
    let mut out = Vec::new();
    while let Some(m) = stack.pop() {
        if m.dim == 0 {
            continue;
        }
        match split(&m, &mut rng, opts.max_attempts)? {
            None => out.push(m),
            Some(sub) => {
                stack.push(m.quotient(&sub));
                stack.push(m.submodule(&sub));
            }
        }
    }
    Ok(out)
}

/// Invariant of a module over a fixed list of group words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// Sorted dimensions of the fixed spaces of the words.
    pub fixed_dims: Vec<usize>,
    /// Characteristic polynomial of each word (complete invariant of a simple module).
    pub charpolys: Vec<Poly>,
}

impl Fingerprint {
    pub fn of(module: &Module, words: &[Word]) -> Self {
        let id = FpMatrix::identity(module.p, module.dim);
        let mut fixed_dims = Vec::with_capacity(words.len());
        let mut charpolys = Vec::with_capacity(words.len());
        for w in words {
            let m = module.word(w);
            fixed_dims.push(module.dim - m.sub(&id).rank());
            charpolys.push(m.charpoly());
        }
        fixed_dims.sort_unstable();
        Self { dim: module.dim, fixed_dims, charpolys }
    }

    /// Short stable digest (FNV-1a) for display.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        eat(self.dim as u64);
        self.fixed_dims.iter().for_each(|&d| eat(d as u64));
        for cp in &self.charpolys {
            eat(u64::MAX);
            cp.iter().for_each(|&c| eat(c as u64));
        }
        format!("{h:016x}")
    }
}

/// An isomorphism class of simple modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleModuleClass {
    pub label: String,
    pub module: Module,
    pub fingerprint: Fingerprint,
    /// `d` with `End(S) = F_{p^d}`.
    pub end_degree: usize,
    /// Multiplicative generator of `End(S)`.
    pub end_generator: FpMatrix,
    /// Multiplicity as a composition factor of the chopped module.
    pub multiplicity: usize,
}

impl SimpleModuleClass {
    pub fn dim(&self) -> usize {
        self.module.dim
    }
}

/// Composition factors grouped into classes, sorted by fingerprint and labeled `2a`, `2b`, ...
pub fn composition_classes(module: &Module, words: &[Word], opts: ChopOptions) -> Result<Vec<SimpleModuleClass>, Error> {
    let factors = chop(module, opts)?;
    let mut groups: Vec<(Fingerprint, Module, usize)> = Vec::new();
    for f in factors {
        let fp = Fingerprint::of(&f, words);
        match groups.iter_mut().find(|(g, _, _)| *g == fp) {
            Some(entry) => entry.2 += 1,
            None => groups.push((fp, f, 1)),
        }
    }
    groups.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<SimpleModuleClass> = Vec::with_capacity(groups.len());
    for (fingerprint, module, multiplicity) in groups {
        let (end_degree, end_generator) = end_field(&module)?;
        let same_dim = out.iter().filter(|c| c.dim() == module.dim).count();
        out.push(SimpleModuleClass {
            label: class_label(module.dim, same_dim),
            module,
            fingerprint,
            end_degree,
            end_generator,
            multiplicity,
        });
    }
    Ok(out)
}

fn class_label(dim: usize, k: usize) -> String {
    let mut suffix = String::new();
    let mut k = k;
    loop {
        suffix.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    format!("{dim}{suffix}")
}

/// Basis of `Hom_G(S, V)` (matrices `dim V x dim S`); fast path for cyclic `S`.
pub fn hom_space(s: &Module, v: &Module) -> Vec<FpMatrix> {
    let (p, k, n) = (s.p, s.dim, v.dim);
    if k == 0 || n == 0 {
        return Vec::new();
    }
    // Spanning tree of S from e_0.
    let mut vecs: Vec<Vec<u8>> = vec![FpMatrix::identity(p, k).row(0).to_vec()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut ech = Echelon::new(p, k);
    ech.insert(&vecs[0]);
    let mut tree_edges = HashSet::new();
    let mut idx = 0;
    while idx < vecs.len() && vecs.len() < k {
        for (g, m) in s.gens.iter().enumerate() {
            let w = m.mul_vec(&vecs[idx]);
            if ech.insert(&w) {
                tree_edges.insert((idx, g));
                vecs.push(w);
                parent.push(Some((idx, g)));
            }
        }
        idx += 1;
    }
    if vecs.len() < k {
        return hom_space_naive(s, v);
    }
    let b = FpMatrix::from_cols(p, &vecs, k);
    let b_inv = b.inverse().expect("spin basis is a basis");
    let mut images: Vec<FpMatrix> = Vec::with_capacity(k);
    for par in &parent {
        let w = match par {
            None => FpMatrix::identity(p, n),
            Some((j, g)) => v.gens[*g].mul(&images[*j]),
        };
        images.push(w);
    }
    let mut constraints = Echelon::new(p, n);
    'outer: for j in 0..k {
        for (g, m) in s.gens.iter().enumerate() {
            if tree_edges.contains(&(j, g)) {
                continue;
            }
            let a = b_inv.mul_vec(&m.mul_vec(&vecs[j]));
            let mut c = v.gens[g].mul(&images[j]);
            for (l, &al) in a.iter().enumerate() {
                if al != 0 {
                    c = c.sub(&images[l].scale(al));
                }
            }
            for r in 0..n {
                constraints.insert(c.row(r));
                if constraints.len() == n {
                    break 'outer;
                }
            }
        }
    }
    let sols = constraints.to_matrix().kernel();
    (0..sols.rows())
        .map(|r| {
            let v0 = sols.row(r);
            let cols: Vec<Vec<u8>> = images.iter().map(|w| w.mul_vec(v0)).collect();
            FpMatrix::from_cols(p, &cols, n).mul(&b_inv)
        })
        .collect()
}

/// `Hom_G(S, V)` by solving `V_g X = X S_g` directly (reference implementation).
pub fn hom_space_naive(s: &Module, v: &Module) -> Vec<FpMatrix> {
    let (p, k, n) = (s.p, s.dim, v.dim);
    let fp = Fp::new(p);
    let unknowns = n * k;
    let mut eqs: Vec<Vec<u8>> = Vec::new();
    for (sg, vg) in s.gens.iter().zip(&v.gens) {
        for r in 0..n {
            for c in 0..k {
                let mut row = vec![0u8; unknowns];
                for t in 0..n {
                    let x = vg.get(r, t);
                    row[t * k + c] = fp.add(row[t * k + c], x);
                }
                for t in 0..k {
                    let x = sg.get(t, c);
                    row[r * k + t] = fp.sub(row[r * k + t], x);
                }
                eqs.push(row);
            }
        }
    }
    let sols = if eqs.is_empty() {
        FpMatrix::identity(p, unknowns)
    } else {
        FpMatrix::from_rows(p, &eqs, unknowns).kernel()
    };
    (0..sols.rows())
        .map(|r| {
            let rows: Vec<Vec<u8>> = sols.row(r).chunks(k).map(|c| c.to_vec()).collect();
            FpMatrix::from_rows(p, &rows, k)
        })
        .collect()
}

/// Degree `d` of `End(S) = F_{p^d}` and the least multiplicative generator
/// (coordinates against the Hom basis in enumeration order).
pub fn end_field(s: &Module) -> Result<(usize, FpMatrix), Error> {
    let p = s.p as u64;
    let basis = hom_space(s, s);
    let d = basis.len();
    if d == 0 {
        return Err(Error::InvariantViolation("module has no endomorphisms (dimension 0?)".into()));
    }
    let order = p
        .checked_pow(d as u32)
        .filter(|&q| q <= 1 << 20)
        .ok_or_else(|| Error::TooLarge(format!("endomorphism field of degree {d}")))?;
    let id = FpMatrix::identity(s.p, s.dim);
    let primes = poly::prime_factors(order - 1);
    for idx in 1..order {
        let mut x = FpMatrix::zeros(s.p, s.dim, s.dim);
        let mut t = idx;
        for b in &basis {
            let c = (t % p) as u8;
            t /= p;
            if c != 0 {
                x = x.add(&b.scale(c));
            }
        }
        if primes.iter().all(|&r| x.pow((order - 1) / r) != id) && x.pow(order - 1) == id {
            return Ok((d, x));
        }
    }
    Err(Error::InvariantViolation("endomorphism ring is not a field (module not simple)".into()))
}

/// A simple submodule of an ambient module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleSubmodule {
    /// Reduced echelon basis (rows).
    pub basis: FpMatrix,
    pub class_label: String,
    pub class_index: usize,
    pub end_degree: usize,
}

/// Whether a module is simple: spin every nonzero vector when cheap, Norton otherwise.
pub fn is_simple(module: &Module) -> Result<bool, Error> {
    let (p, n) = (module.p as u64, module.dim);
    if n == 0 {
        return Ok(false);
    }
    if p.checked_pow(n as u32).is_some_and(|c| c <= 1 << 12) {
        let count = p.pow(n as u32);
        for idx in 1..count {
            let mut v = vec![0u8; n];
            let mut t = idx;
            for c in v.iter_mut() {
                *c = (t % p) as u8;
                t /= p;
            }
            if spin(&module.gens, &[v], module.p, n).len() < n {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    Ok(split(module, &mut rng, ChopOptions::default().max_attempts)?.is_none())
}

fn echelon_of(p: u32, m: &FpMatrix) -> Echelon {
    let mut e = Echelon::new(p, m.cols());
    for r in 0..m.rows() {
        e.insert(m.row(r));
    }
    e
}

/// All simple submodules of `v` isomorphic to one of `classes`, via `Hom(S, V)` modulo `End(S)^x`.
///
/// Output is sorted by class (in the given order) and then by echelon basis.
pub fn enumerate_simple_submodules(
    v: &Module,
    classes: &[SimpleModuleClass],
    exec: Exec,
) -> Result<Vec<SimpleSubmodule>, Error> {
    let indexed: Vec<(usize, &SimpleModuleClass)> = classes.iter().enumerate().collect();
    let per_class = exec.try_map(&indexed, |&(ci, class)| submodules_of_class(v, ci, class))?;
    Ok(per_class.into_iter().flatten().collect())
}

fn submodules_of_class(v: &Module, class_index: usize, class: &SimpleModuleClass) -> Result<Vec<SimpleSubmodule>, Error> {
    let p = v.p;
    let pu = p as u64;
    let (k, n, d) = (class.dim(), v.dim, class.end_degree);
    let homs = hom_space(&class.module, v);
    let flat = |m: &FpMatrix| -> Vec<u8> { (0..n).flat_map(|r| m.row(r).to_vec()).collect() };
    // theta^i for the field generator.
    let theta_pows: Vec<FpMatrix> = (0..d).map(|i| class.end_generator.pow(i as u64)).collect();
    // F_{p^d}-basis of H (H is an End(S)-vector space by precomposition).
    let mut span = Echelon::new(p, n * k);
    let mut basis: Vec<Vec<FpMatrix>> = Vec::new();
    for h in &homs {
        if span.contains(&flat(h)) {
            continue;
        }
        let orbit: Vec<FpMatrix> = theta_pows.iter().map(|t| h.mul(t)).collect();
        for x in &orbit {
            span.insert(&flat(x));
        }
        basis.push(orbit);
    }
    if span.len() != homs.len() {
        return Err(Error::InvariantViolation("Hom space is not an End(S)-vector space".into()));
    }
    let r = basis.len();
    let field_size = pu.pow(d as u32);
    let mut expected: u64 = 0;
    for j in 0..r {
        expected += field_size.pow((r - j - 1) as u32);
    }
    if expected > 1 << 22 {
        return Err(Error::TooLarge(format!("{expected} submodules of class {}", class.label)));
    }
    let mut out = Vec::with_capacity(expected as usize);
    for j in 0..r {
        let tail = r - j - 1;
        for idx in 0..field_size.pow(tail as u32) {
            let mut h = basis[j][0].clone();
            let mut t = idx;
            for orbit in &basis[j + 1..] {
                for x in orbit {
                    let c = (t % pu) as u8;
                    t /= pu;
                    if c != 0 {
                        h = h.add(&x.scale(c));
                    }
                }
            }
            let mut image = h.transpose();
            let pivots = image.rref();
            if pivots.len() != k {
                return Err(Error::InvariantViolation("nonzero homomorphism from a simple module is not injective".into()));
            }
            let rows = FpMatrix::from_rows(p, &(0..k).map(|i| image.row(i).to_vec()).collect::<Vec<_>>(), n);
            if !v.is_stable(&rows) {
                return Err(Error::InvariantViolation("emitted submodule is not stable".into()));
            }
            if !is_simple(&v.submodule(&echelon_of(p, &rows)))? {
                return Err(Error::InvariantViolation("emitted submodule is not simple".into()));
            }
            out.push(SimpleSubmodule { basis: rows, class_label: class.label.clone(), class_index, end_degree: d });
        }
    }
    if out.len() as u64 != expected {
        return Err(Error::InvariantViolation("submodule count disagrees with the projective-space count".into()));
    }
    out.sort_by_key(|s| s.basis.row_vecs());
    let before = out.len();
    out.dedup_by(|a, b| a.basis == b.basis);
    if out.len() != before {
        return Err(Error::InvariantViolation("duplicate submodules emitted".into()));
    }
    Ok(out)
}

/// Every `k`-dimensional subspace in reduced echelon form, in lexicographic order of rows.
fn echelon_subspaces(p: u32, dim: usize, k: usize, mut visit: impl FnMut(&FpMatrix)) {
    fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            combos(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut pivot_sets = Vec::new();
    combos(dim, k, 0, &mut Vec::new(), &mut pivot_sets);
    for pivots in pivot_sets {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..dim).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        let mut m = FpMatrix::zeros(p, k, dim);
        for (r, &pc) in pivots.iter().enumerate() {
            m.set(r, pc, 1);
        }
        for idx in 0..total {
            let mut t = idx;
            for &(r, c) in &free {
                m.set(r, c, (t % p as u64) as u8);
                t /= p as u64;
            }
            visit(&m);
        }
    }
}

/// Number of `k`-dimensional subspaces of `F_p^dim` (Gaussian binomial), saturating.
pub fn subspace_count(p: u32, dim: usize, k: usize) -> u128 {
    if k > dim {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(p.saturating_pow((dim - i) as u32) - 1);
        den = den.saturating_mul(p.saturating_pow((i + 1) as u32) - 1);
    }
    num / den
}

/// Exhaustive oracle: all stable simple `k`-dimensional subspaces, sorted.
pub fn brute_simple_submodules(v: &Module, k: usize) -> Result<Vec<FpMatrix>, Error> {
    if v.dim > 14 {
        return Err(Error::TooLarge(format!("brute-force scan needs dimension <= 14, got {}", v.dim)));
    }
    if subspace_count(v.p, v.dim, k) > 1 << 22 {
        return Err(Error::TooLarge("too many subspaces for an exhaustive scan".into()));
    }
    let mut out = Vec::new();
    let mut err = None;
    echelon_subspaces(v.p, v.dim, k, |m| {
        if err.is_some() || !v.is_stable(m) {
            return;
        }
        match is_simple(&v.submodule(&echelon_of(v.p, m))) {
            Ok(true) => out.push(m.clone()),
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    out.sort_by_key(|a| a.row_vecs());
    Ok(out)
}

/// Order of the matrix group generated by `gens` (closure enumeration).
pub fn matrix_group_order(gens: &[FpMatrix], p: u32, dim: usize) -> usize {
    let id = FpMatrix::identity(p, dim);
    let mut seen: HashSet<FpMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// F_p[C_m] with the cyclic shift.
    pub(crate) fn cyclic_regular(p: u32, m: usize) -> Module {
        let mut g = FpMatrix::zeros(p, m, m);
        for i in 0..m {
            g.set((i + 1) % m, i, 1);
        }
        Module::new(p, m, vec![g])
    }

    fn words_cyclic(m: usize) -> Vec<Word> {
        (0..m as u64).map(|k| vec![(0, k)]).collect()
    }

    #[test]
    fn spin_examples() {
        let m = cyclic_regular(2, 3);
        let e = spin(m.generators(), &[vec![1, 1, 1]], 2, 3);
        assert_eq!(e.len(), 1);
        let e = spin(m.generators(), &[vec![1, 0, 0]], 2, 3);
        assert_eq!(e.len(), 3);
        let id = Module::new(2, 3, vec![FpMatrix::identity(2, 3)]);
        assert_eq!(spin(id.generators(), &[vec![0, 1, 1]], 2, 3).len(), 1);
    }

    #[test]
    fn chop_cyclic_three_over_f2() {
        let classes = composition_classes(&cyclic_regular(2, 3), &words_cyclic(3), ChopOptions::default()).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!((classes[0].dim(), classes[0].multiplicity, classes[0].end_degree), (1, 1, 1));
        assert_eq!((classes[1].dim(), classes[1].multiplicity, classes[1].end_degree), (2, 1, 2));
        assert_eq!(classes[1].label, "2a");
        let trivial = Module::new(2, 3, vec![FpMatrix::identity(2, 3)]);
        let classes = composition_classes(&trivial, &words_cyclic(1), ChopOptions::default()).unwrap();
        assert_eq!((classes.len(), classes[0].multiplicity), (1, 3));
    }

    #[test]
    fn end_field_examples() {
        let trivial = Module::new(2, 1, vec![FpMatrix::identity(2, 1)]);
        assert_eq!(end_field(&trivial).unwrap(), (1, FpMatrix::identity(2, 1)));
        // The 2-dimensional simple of C_3: companion matrix of x^2 + x + 1.
        let c = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]], 2);
        let s = Module::new(2, 2, vec![c.clone()]);
        let (d, gen) = end_field(&s).unwrap();
        assert_eq!(d, 2);
        assert_ne!(gen, FpMatrix::identity(2, 2));
        assert_eq!(gen.mul(&c), c.mul(&gen));
        // Brute force: the commutant of c has exactly 4 elements.
        let mut count = 0;
        for idx in 0..16u32 {
            let m = FpMatrix::from_rows(2, &[vec![(idx & 1) as u8, (idx >> 1 & 1) as u8], vec![(idx >> 2 & 1) as u8, (idx >> 3 & 1) as u8]], 2);
            if m.mul(&c) == c.mul(&m) {
                count += 1;
            }
        }
        assert_eq!(count, 4);
        assert_eq!(hom_space(&s, &s).len(), 2);
    }

    #[test]
    fn enumerate_matches_brute_force_small() {
        let v = cyclic_regular(2, 3);
        let classes = composition_classes(&v, &words_cyclic(3), ChopOptions::default()).unwrap();
        for k in 1..=2 {
            let sel: Vec<_> = classes.iter().filter(|c| c.dim() == k).cloned().collect();
            let fast: Vec<FpMatrix> =
                enumerate_simple_submodules(&v, &sel, Exec::Serial).unwrap().into_iter().map(|s| s.basis).collect();
            assert_eq!(fast, brute_simple_submodules(&v, k).unwrap());
            assert_eq!(fast.len(), 1);
        }
        // Trivial group on F_2^3: 7 lines.
        let v = Module::new(2, 3, vec![FpMatrix::identity(2, 3)]);
        let classes = composition_classes(&v, &words_cyclic(1), ChopOptions::default()).unwrap();
        let fast = enumerate_simple_submodules(&v, &classes, Exec::Serial).unwrap();
        assert_eq!(fast.len(), 7);
        assert_eq!(fast.into_iter().map(|s| s.basis).collect::<Vec<_>>(), brute_simple_submodules(&v, 1).unwrap());
    }

    #[test]
    fn hom_fast_matches_naive() {
        let v = cyclic_regular(3, 8);
        let classes = composition_classes(&v, &words_cyclic(8), ChopOptions::default()).unwrap();
        for c in &classes {
            assert_eq!(hom_space(&c.module, &v).len(), hom_space_naive(&c.module, &v).len());
            for h in hom_space(&c.module, &v) {
                assert_eq!(v.generators()[0].mul(&h), h.mul(&c.module.generators()[0]));
            }
        }
    }

    #[test]
    fn group_order_of_cyclic_shift() {
        let m = cyclic_regular(2, 5);
        assert_eq!(matrix_group_order(m.generators(), 2, 5), 5);
    }

    #[test]
    fn gaussian_binomial() {
        assert_eq!(subspace_count(2, 3, 1), 7);
        assert_eq!(subspace_count(2, 3, 2), 7);
        assert_eq!(subspace_count(2, 4, 2), 35);
        let mut n = 0;
        echelon_subspaces(2, 4, 2, |_| n += 1);
        assert_eq!(n, 35);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn chop_multiplicities_are_seed_invariant(seed in 0u64..1000, m in 2usize..10, p in prop_oneof![Just(2u32), Just(3u32)]) {
            let v = cyclic_regular(p, m);
            let words = words_cyclic(m);
            let a = composition_classes(&v, &words, ChopOptions { seed, ..ChopOptions::default() }).unwrap();
            let b = composition_classes(&v, &words, ChopOptions::default()).unwrap();
            let key = |cs: &[SimpleModuleClass]| cs.iter().map(|c| (c.fingerprint.clone(), c.multiplicity)).collect::<Vec<_>>();
            prop_assert_eq!(key(&a), key(&b));
            let total: usize = a.iter().map(|c| c.dim() * c.multiplicity).sum();
            prop_assert_eq!(total, m);
        }
    }
}
