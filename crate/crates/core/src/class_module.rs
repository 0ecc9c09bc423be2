//! The filtered class module of `L_n` with its Galois action.
//!
//! Characteristic 0: `L^x / L^xp` with basis
//! `pi`, `1 + omega(x^k) pi^i` (`1 <= i < p c`, `p` not dividing `i`, `k < f'`)
//! and one boundary vector `1 + omega(b0) pi^(p c)`, where `e = c (p - 1)`.
//!
//! Characteristic p: `L / (x^p - x)L` truncated at pole order `B`, with basis
//! one constant of absolute trace 1 followed by `x^k u^-i` (`i <= B`, `p` not
//! dividing `i`).
//!
//! Basis order is (kind, filtration index, residue-basis position).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::ff::FfElt;
use crate::linalg::FpMatrix;
use crate::local_ring::{LaurentElt, MixedElt, WElt};
use crate::tower::{Characteristic, GroupElt, TameTower};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Uniformizer,
    UnitLevel,
    Boundary,
    Constant,
    PoleLevel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisDescriptor {
    pub kind: BasisKind,
    /// Unit level (char 0, with 0 for the uniformizer) or pole order (char p, 0 for the constant).
    pub index: usize,
    pub residue_position: usize,
}

#[derive(Clone, Debug)]
pub enum Representative {
    Mixed(MixedElt),
    Laurent(LaurentElt),
}

#[derive(Clone, Debug)]
pub struct ClassBasis {
    characteristic: Characteristic,
    descriptors: Vec<BasisDescriptor>,
    representatives: Vec<Representative>,
    /// `p c` (char 0).
    boundary_level: Option<usize>,
    /// `B` (char p).
    level_bound: Option<usize>,
    /// Residue degree `f'`.
    fprime: usize,
    p: u32,
}

impl ClassBasis {
    pub fn len(&self) -> usize {
        self.descriptors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.descriptors.is_empty()
    }

    pub fn descriptors(&self) -> &[BasisDescriptor] {
        &self.descriptors
    }

    pub fn representatives(&self) -> &[Representative] {
        &self.representatives
    }

    pub fn boundary_level(&self) -> Option<usize> {
        self.boundary_level
    }

    pub fn level_bound(&self) -> Option<usize> {
        self.level_bound
    }

    /// Level contributed by a basis vector: `p c - index` (char 0) or the pole order (char p).
    pub fn level_of(&self, pos: usize) -> usize {
        let d = self.descriptors[pos];
        match self.characteristic {
            Characteristic::Zero => self.boundary_level.unwrap_or(0) - d.index,
            Characteristic::P => d.index,
        }
    }

    /// Filtration index corresponding to a level.
    pub fn index_of_level(&self, level: usize) -> usize {
        match self.characteristic {
            Characteristic::Zero => self.boundary_level.unwrap_or(0) - level,
            Characteristic::P => level,
        }
    }

    fn unit_position(&self, i: usize, k: usize) -> usize {
        let p = self.p as usize;
        let below = (i - 1) - (i - 1) / p;
        match self.characteristic {
            Characteristic::Zero => 1 + below * self.fprime + k,
            Characteristic::P => 1 + below * self.fprime + k,
        }
    }

    fn boundary_position(&self) -> Option<usize> {
        match self.characteristic {
            Characteristic::Zero => self
                .descriptors
                .last()
                .filter(|d| d.kind == BasisKind::Boundary)
                .map(|_| self.len() - 1),
            Characteristic::P => None,
        }
    }

    /// Dimension of the span of basis vectors at each filtration index (graded dimensions).
    pub fn graded_dimensions(&self) -> BTreeMap<(BasisKind, usize), usize> {
        let mut out = BTreeMap::new();
        for d in &self.descriptors {
            *out.entry((d.kind, d.index)).or_insert(0) += 1;
        }
        out
    }
}

/// Coordinates of a class against a [`ClassBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassVector(pub Vec<u8>);

impl ClassVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Where a subspace sits in the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationPosition {
    /// The subspace lies in the step of this index and meets the next step trivially.
    Exact(usize),
    /// No such index: the projection to the outer index is not injective.
    Straddle { outer: usize, inner: usize },
}

/// Class module with basis, reduction and Galois action.
#[derive(Clone, Debug)]
pub struct ClassModule {
    tower: TameTower,
    basis: ClassBasis,
    sigma: FpMatrix,
    phi: FpMatrix,
    /// `omega(x^k)` for the residue basis (char 0).
    unit_lifts: Vec<WElt>,
    /// Residue of the boundary vector (char 0).
    boundary_residue: Option<FfElt>,
}

impl ClassModule {
    /// Build the module; `level_bound` is required in characteristic p and ignored otherwise.
    pub fn build(tower: TameTower, level_bound: Option<usize>, exec: Exec) -> Result<Self, Error> {
        let p = tower.p();
        let fprime = tower.residue_field().degree();
        let l = tower.residue_field().clone();
        let (basis, unit_lifts, boundary_residue) = match tower.base().characteristic {
            Characteristic::Zero => {
                let ring = tower.mixed_ring().expect("characteristic 0 tower");
                let w = ring.coefficients();
                let pc = p as usize * tower.c();
                let unit_lifts: Vec<WElt> = (0..fprime).map(|k| w.teichmuller(&l.basis(k))).collect();
                let mut descriptors =
                    vec![BasisDescriptor { kind: BasisKind::Uniformizer, index: 0, residue_position: 0 }];
                let mut representatives = vec![Representative::Mixed(ring.uniformizer())];
                for i in (1..pc).filter(|i| i % p as usize != 0) {
                    for (k, lift) in unit_lifts.iter().enumerate() {
                        descriptors.push(BasisDescriptor { kind: BasisKind::UnitLevel, index: i, residue_position: k });
                        representatives.push(Representative::Mixed(ring.add(&ring.one(), &ring.monomial(lift, i))));
                    }
                }
                // Least residue outside the image of z -> z^p + z.
                let one = l.one();
                let b0 = l.elements().find(|b| l.solve_artin_schreier(&one, b).is_none());
                if let Some(b0) = &b0 {
                    descriptors.push(BasisDescriptor { kind: BasisKind::Boundary, index: pc, residue_position: 0 });
                    let lift = w.teichmuller(b0);
                    representatives.push(Representative::Mixed(ring.add(&ring.one(), &ring.monomial(&lift, pc))));
                }
                let basis = ClassBasis {
                    characteristic: Characteristic::Zero,
                    descriptors,
                    representatives,
                    boundary_level: Some(pc),
                    level_bound: None,
                    fprime,
                    p,
                };
                (basis, unit_lifts, b0)
            }
            Characteristic::P => {
                let bound = level_bound.ok_or_else(|| {
                    Error::InvalidInput("a level bound is required in characteristic p".into())
                })?;
                if bound == 0 {
                    return Err(Error::InvalidInput("level bound must be at least 1".into()));
                }
                let ring = tower.laurent_ring().expect("characteristic p tower");
                let c0 = l
                    .elements()
                    .find(|c| l.absolute_trace(c) == 1)
                    .expect("trace is surjective");
                let mut descriptors =
                    vec![BasisDescriptor { kind: BasisKind::Constant, index: 0, residue_position: 0 }];
                let mut representatives = vec![Representative::Laurent(ring.monomial(&c0, 0, 1))];
                for i in (1..=bound).filter(|i| i % p as usize != 0) {
                    for k in 0..fprime {
                        descriptors.push(BasisDescriptor { kind: BasisKind::PoleLevel, index: i, residue_position: k });
                        representatives.push(Representative::Laurent(ring.monomial(&l.basis(k), -(i as i64), 1)));
                    }
                }
                let basis = ClassBasis {
                    characteristic: Characteristic::P,
                    descriptors,
                    representatives,
                    boundary_level: None,
                    level_bound: Some(bound),
                    fprime,
                    p,
                };
                (basis, Vec::new(), None)
            }
        };
        let dim = basis.len();
        let mut module = Self {
            tower,
            basis,
            sigma: FpMatrix::identity(p, dim),
            phi: FpMatrix::identity(p, dim),
            unit_lifts,
            boundary_residue,
        };
        let [sigma, phi] = module.galois_matrices(exec)?;
        module.sigma = sigma;
        module.phi = phi;
        Ok(module)
    }

    pub fn tower(&self) -> &TameTower {
        &self.tower
    }

    pub fn basis(&self) -> &ClassBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn p(&self) -> u32 {
        self.tower.p()
    }

    /// Matrices of `sigma` and `phi` (columns are images of basis vectors).
    pub fn generators(&self) -> [&FpMatrix; 2] {
        [&self.sigma, &self.phi]
    }

    /// Matrix of an arbitrary group element.
    pub fn matrix_of(&self, g: GroupElt) -> FpMatrix {
        self.tower.group().represent(g, &self.sigma, &self.phi)
    }

    /// Columns `g . b_j` for the two generators, computed by reducing Galois images.
    fn galois_matrices(&self, exec: Exec) -> Result<[FpMatrix; 2], Error> {
        let group = self.tower.group();
        let gens = [group.sigma(), group.phi()];
        let jobs: Vec<(usize, usize)> = (0..2).flat_map(|g| (0..self.dim()).map(move |j| (g, j))).collect();
        let cols = exec.try_map(&jobs, |&(g, j)| self.reduce_image(gens[g], j))?;
        let (s, f) = cols.split_at(self.dim());
        let to_matrix = |cs: &[ClassVector]| {
            FpMatrix::from_cols(self.p(), &cs.iter().map(|c| c.0.clone()).collect::<Vec<_>>(), self.dim())
        };
        Ok([to_matrix(s), to_matrix(f)])
    }

    fn reduce_image(&self, g: GroupElt, j: usize) -> Result<ClassVector, Error> {
        match &self.basis.representatives[j] {
            Representative::Mixed(x) => self.reduce_mixed(&self.tower.apply_mixed(g, x)?),
            Representative::Laurent(x) => self.reduce_laurent(&self.tower.apply_laurent(g, x)?),
        }
    }

    /// Class of a nonzero element of `L` (char 0), given as an element of the integer ring.
    pub fn reduce_mixed(&self, x: &MixedElt) -> Result<ClassVector, Error> {
        let ring = self.tower.mixed_ring().ok_or_else(|| Error::InvalidInput("not a characteristic 0 module".into()))?;
        let p = self.p();
        let l = self.tower.residue_field();
        let w = ring.coefficients();
        let pc = self.basis.boundary_level.expect("char 0 basis");
        let mut coords = vec![0u8; self.dim()];
        let (v, r) = ring.leading(x)?;
        coords[0] = (v % p as usize) as u8;
        let mut u = ring.divide_pow_uniformizer(x, v)?;
        // Roots of unity of order prime to p are p-th powers: drop the Teichmuller part.
        if r != l.one() {
            let t = w.teichmuller(&l.inv(&r)?);
            u = ring.mul(&u, &ring.from_coefficient(&t));
        }
        let one = ring.one();
        let mut last = 0usize;
        loop {
            let diff = ring.sub(&u, &one);
            let Some(i) = ring.valuation_upto(&diff, pc)? else { break };
            if i <= last {
                return Err(Error::InvariantViolation(format!(
                    "class reduction did not advance past level {last}"
                )));
            }
            last = i;
            let a = ring.leading_at(&diff, i);
            if i == pc {
                let boundary = self.boundary_residue.as_ref();
                let mut solved = false;
                for mu in 0..p {
                    // a + mu b0 + (z^p + z) = 0
                    let mut target = l.neg(&a);
                    if let Some(b0) = boundary {
                        target = l.sub(&target, &l.scale(b0, mu));
                    } else if mu > 0 {
                        break;
                    }
                    if let Some(z) = l.solve_artin_schreier(&l.one(), &target) {
                        if mu > 0 {
                            let b0w = w.teichmuller(boundary.expect("checked above"));
                            for _ in 0..mu {
                                u = ring.mul_one_plus_monomial(&u, &b0w, pc);
                            }
                            let pos = self.basis.boundary_position().expect("boundary exists");
                            coords[pos] = ((p - mu) % p) as u8;
                        }
                        let zw = w.teichmuller(&z);
                        for _ in 0..p {
                            u = ring.mul_one_plus_monomial(&u, &zw, pc / p as usize);
                        }
                        solved = true;
                        break;
                    }
                }
                if !solved {
                    return Err(Error::InvariantViolation("boundary level could not be cleared".into()));
                }
            } else if i % p as usize == 0 {
                let b = l.pth_root(&l.neg(&a));
                let bw = w.teichmuller(&b);
                for _ in 0..p {
                    u = ring.mul_one_plus_monomial(&u, &bw, i / p as usize);
                }
            } else {
                for (k, &ak) in a.0.iter().enumerate() {
                    if ak == 0 {
                        continue;
                    }
                    coords[self.basis.unit_position(i, k)] = ak as u8;
                    for _ in 0..(p - ak) {
                        u = ring.mul_one_plus_monomial(&u, &self.unit_lifts[k], i);
                    }
                }
            }
        }
        Ok(ClassVector(coords))
    }

    /// Class of an integer (char 0).
    pub fn reduce_integer(&self, n: i64) -> Result<ClassVector, Error> {
        if n == 0 {
            return Err(Error::InvalidInput("zero has no class".into()));
        }
        let ring = self.tower.mixed_ring().ok_or_else(|| Error::InvalidInput("not a characteristic 0 module".into()))?;
        self.reduce_mixed(&ring.from_int(n))
    }

    /// Class of a Laurent series (char p). Positive-valuation terms are discarded.
    pub fn reduce_laurent(&self, x: &LaurentElt) -> Result<ClassVector, Error> {
        let l = self.tower.residue_field();
        let p = self.p() as i64;
        let bound = self.basis.level_bound.expect("char p basis") as i64;
        let mut coords = vec![0u8; self.dim()];
        let mut terms: BTreeMap<i64, FfElt> = x.terms().range(..=0).map(|(&j, c)| (j, c.clone())).collect();
        if x.precision() <= 0 {
            return Err(Error::PrecisionExhausted("series unknown at the constant term".into()));
        }
        while let Some((j, a)) = terms.pop_first() {
            if j == 0 {
                coords[0] = l.absolute_trace(&a) as u8;
                break;
            }
            let i = -j;
            if i % p == 0 {
                // a u^-i = (b u^(-i/p))^p with b^p = a, congruent to b u^(-i/p).
                let b = l.pth_root(&a);
                let key = -(i / p);
                let sum = match terms.get(&key) {
                    Some(old) => l.add(old, &b),
                    None => b,
                };
                if sum.is_zero() {
                    terms.remove(&key);
                } else {
                    terms.insert(key, sum);
                }
            } else {
                if i > bound {
                    return Err(Error::OutsideModule(format!("pole order {i} exceeds the level bound {bound}")));
                }
                for (k, &ak) in a.0.iter().enumerate() {
                    coords[self.basis.unit_position(i as usize, k)] = ak as u8;
                }
            }
        }
        Ok(ClassVector(coords))
    }

    /// Position of a subspace (rows of `rows`) in the filtration.
    pub fn filtration_position(&self, rows: &FpMatrix) -> FiltrationPosition {
        let basis = &self.basis;
        let outer_level = (0..rows.rows())
            .flat_map(|r| (0..rows.cols()).filter(move |&c| rows.get(r, c) != 0))
            .map(|c| basis.level_of(c))
            .max()
            .unwrap_or(0);
        let cols: Vec<usize> = (0..self.dim()).filter(|&c| basis.level_of(c) == outer_level).collect();
        let proj = FpMatrix::from_rows(
            self.p(),
            &(0..rows.rows()).map(|r| cols.iter().map(|&c| rows.get(r, c)).collect()).collect::<Vec<_>>(),
            cols.len(),
        );
        let outer = basis.index_of_level(outer_level);
        // Left kernel of the projection: combinations of rows vanishing at the outer level.
        let left = proj.transpose().kernel();
        if left.rows() == 0 {
            return FiltrationPosition::Exact(outer);
        }
        let combo = FpMatrix::from_rows(self.p(), &[left.row(0).to_vec()], rows.rows()).mul(rows);
        let inner_level = (0..combo.cols())
            .filter(|&c| combo.get(0, c) != 0)
            .map(|c| basis.level_of(c))
            .max()
            .unwrap_or(0);
        FiltrationPosition::Straddle { outer, inner: basis.index_of_level(inner_level) }
    }

    /// Scalars by which `sigma` and `phi` act on the boundary line (char 0); trivial in char p.
    pub fn omega_generators(&self) -> [u8; 2] {
        match self.basis.boundary_position() {
            Some(b) => [self.sigma.get(b, b), self.phi.get(b, b)],
            None => [1, 1],
        }
    }

    /// The character of `G_n` on the boundary line.
    pub fn omega(&self, g: GroupElt) -> u8 {
        let [s, f] = self.omega_generators();
        let fp = crate::linalg::Fp::new(self.p());
        let pow = |x: u8, k: u64| (0..k).fold(1u8, |acc, _| fp.mul(acc, x));
        fp.mul(pow(s, g.a), pow(f, g.b))
    }
}
