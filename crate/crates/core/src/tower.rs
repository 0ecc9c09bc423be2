//! The tame tower `L_n / K` and its Galois group.
//!
//! `K` is either the unramified extension of `Q_p` of degree `f` or the
//! Laurent series field `F_{p^f}((t))`. With `e = p^n - 1` and `s` the order of
//! `q = p^f` modulo `e`, `L_n` has ramification index `e` and residue field
//! `l` of degree `f s e` over `F_p`; it is realized as `W(l)[pi]/(pi^e - p)`
//! resp. `l((u))` with `u^e = t`.
//!
//! The group `G_n` is generated by `sigma: pi -> zeta pi` (fixing coefficients)
//! and `phi` (the `q`-Frobenius on coefficients, fixing `pi`), with
//! `phi sigma phi^-1 = sigma^q`.

use serde::{Deserialize, Serialize};

use crate::ff::{Embedding, FfElt, FiniteField};
use crate::linalg::FpMatrix;
use crate::local_ring::{LaurentElt, LaurentRing, MixedElt, MixedRing, UnramifiedRing, WElt};
use crate::poly;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Characteristic {
    /// Unramified extension of `Q_p`.
    #[serde(rename = "0")]
    Zero,
    /// `F_q((t))`.
    #[serde(rename = "p")]
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseFieldSpec {
    pub p: u32,
    pub f: usize,
    pub characteristic: Characteristic,
}

impl BaseFieldSpec {
    pub fn new(p: u32, f: usize, characteristic: Characteristic) -> Result<Self, Error> {
        if !poly::is_prime(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidInput("residue degree must be positive".into()));
        }
        Ok(Self { p, f, characteristic })
    }

    pub fn qp(p: u32, f: usize) -> Self {
        Self { p, f, characteristic: Characteristic::Zero }
    }

    pub fn laurent(p: u32, f: usize) -> Self {
        Self { p, f, characteristic: Characteristic::P }
    }

    /// Cardinality of the residue field.
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f as u32)
    }

    /// Short human-readable name, e.g. `Q_2`, `Q_4`, `F_2((t))`.
    pub fn name(&self) -> String {
        match self.characteristic {
            Characteristic::Zero => format!("Q_{}", self.q()),
            Characteristic::P => format!("F_{}((t))", self.q()),
        }
    }
}

/// Working precision in units of the uniformizer of `L_n` (characteristic 0 only).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    /// `None` selects `p e / (p - 1) + e + 8`.
    pub digits: Option<usize>,
    /// Upper bound on the residue degree `f s e` (default 64).
    pub max_residue_degree: Option<usize>,
}

impl PrecisionPolicy {
    pub fn digits(digits: usize) -> Self {
        Self { digits: Some(digits), ..Self::default() }
    }

    pub fn default_digits(p: u32, e: usize) -> usize {
        p as usize * e / (p as usize - 1) + e + 8
    }
}

/// `sigma^a phi^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElt {
    pub a: u64,
    pub b: u64,
}

/// `G_n = <sigma, phi>`, the semidirect product `Z/e x| Z/(s e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameGroup {
    pub e: u64,
    pub s: u64,
    /// `q mod e`.
    pub q: u64,
}

impl TameGroup {
    pub fn new(e: u64, s: u64, q: u64) -> Self {
        Self { e, s, q: q % e }
    }

    pub fn order(&self) -> u64 {
        self.s * self.e * self.e
    }

    /// Order of `phi`.
    pub fn frobenius_order(&self) -> u64 {
        self.s * self.e
    }

    pub fn identity(&self) -> GroupElt {
        GroupElt { a: 0, b: 0 }
    }

    pub fn sigma(&self) -> GroupElt {
        GroupElt { a: 1 % self.e, b: 0 }
    }

    pub fn phi(&self) -> GroupElt {
        GroupElt { a: 0, b: 1 % self.frobenius_order() }
    }

    fn q_pow(&self, b: u64) -> u64 {
        poly::powmod(self.q as u32, b, self.e as u32) as u64 % self.e
    }

    pub fn mul(&self, g: GroupElt, h: GroupElt) -> GroupElt {
        GroupElt {
            a: (g.a + self.q_pow(g.b) * h.a) % self.e,
            b: (g.b + h.b) % self.frobenius_order(),
        }
    }

    pub fn inv(&self, g: GroupElt) -> GroupElt {
        let b = (self.frobenius_order() - g.b) % self.frobenius_order();
        // (a, b)^-1 = (-q^{-b} a, -b) = (-q^{b'} a, b') with b' = -b.
        GroupElt { a: (self.e - self.q_pow(b) * g.a % self.e) % self.e, b }
    }

    /// All elements in lexicographic `(a, b)` order.
    pub fn elements(&self) -> Vec<GroupElt> {
        (0..self.e)
            .flat_map(|a| (0..self.frobenius_order()).map(move |b| GroupElt { a, b }))
            .collect()
    }

    /// Position of `g` in [`TameGroup::elements`].
    pub fn index(&self, g: GroupElt) -> usize {
        (g.a * self.frobenius_order() + g.b) as usize
    }

    /// Matrices of `sigma` and `phi` on the regular module `F_p[G]` (left multiplication).
    pub fn regular_generators(&self, p: u32) -> [FpMatrix; 2] {
        let n = self.order() as usize;
        let mut out = [FpMatrix::zeros(p, n, n), FpMatrix::zeros(p, n, n)];
        for (k, gen) in [self.sigma(), self.phi()].into_iter().enumerate() {
            for h in self.elements() {
                out[k].set(self.index(self.mul(gen, h)), self.index(h), 1);
            }
        }
        out
    }

    /// Image of `g` under a representation given by the matrices of `sigma` and `phi`.
    pub fn represent(&self, g: GroupElt, sigma: &FpMatrix, phi: &FpMatrix) -> FpMatrix {
        sigma.pow(g.a).mul(&phi.pow(g.b))
    }

    /// Whether the group is commutative.
    pub fn is_commutative(&self) -> bool {
        self.e <= 1 || self.q == 1 % self.e
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        let mut lcm = 1u64;
        for g in self.elements() {
            let mut k = 1;
            let mut x = g;
            while x != self.identity() {
                x = self.mul(x, g);
                k += 1;
            }
            lcm = lcm / gcd(lcm, k) * k;
        }
        lcm
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of `q` modulo `m` (1 for `m = 1`).
pub fn multiplicative_order(q: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = q % m;
    while x != 1 {
        x = x * (q % m) % m;
        k += 1;
    }
    k
}

#[derive(Clone, Debug)]
pub enum TowerRing {
    Mixed {
        ring: MixedRing,
        /// `omega(zeta)^j` for `j < e`.
        zeta_powers: Vec<WElt>,
        /// Matrix of `phi^b` on the coefficient ring, for `b < s e`.
        frob_powers: Vec<Vec<Vec<u64>>>,
    },
    Laurent {
        ring: LaurentRing,
        zeta_powers: Vec<FfElt>,
    },
}

/// The tower `L_n` over `K`.
#[derive(Clone, Debug)]
pub struct TameTower {
    base: BaseFieldSpec,
    n: u32,
    e: usize,
    s: usize,
    residue: FiniteField,
    base_residue: FiniteField,
    zeta: FfElt,
    precision: usize,
    group: TameGroup,
    ring: TowerRing,
}

impl TameTower {
    pub fn build(base: BaseFieldSpec, n: u32, policy: PrecisionPolicy) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let base = BaseFieldSpec::new(base.p, base.f, base.characteristic)?;
        let p = base.p as u64;
        let e = p
            .checked_pow(n)
            .map(|x| x - 1)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{n} overflows")))?;
        let q = base.q();
        let s = multiplicative_order(q, e);
        let fprime = base.f as u64 * s * e;
        let cap = policy.max_residue_degree.unwrap_or(64) as u64;
        if fprime > cap {
            return Err(Error::TooLarge(format!("residue degree {fprime} exceeds the bound {cap}")));
        }
        let (e, s) = (e as usize, s as usize);
        let residue = FiniteField::new(base.p, fprime as usize)?;
        let base_residue = FiniteField::new(base.p, base.f)?;
        let zeta = residue.least_of_order(e as u64)?;
        let group = TameGroup::new(e as u64, s as u64, q);
        let precision = policy.digits.unwrap_or(PrecisionPolicy::default_digits(base.p, e));
        let zeta_pows: Vec<FfElt> = (0..e).map(|j| residue.pow(&zeta, j as u64)).collect();
        let ring = match base.characteristic {
            Characteristic::Zero => {
                if precision == 0 {
                    return Err(Error::InvalidInput("precision must be positive".into()));
                }
                let m = precision.div_ceil(e) + 2;
                let w = UnramifiedRing::new(residue.clone(), m as u32)?;
                let zeta_w = w.teichmuller(&zeta);
                let zeta_powers = (0..e).map(|j| w.pow(&zeta_w, j as u64)).collect();
                let phi = w.frobenius_power_matrix(base.f);
                let mut frob_powers = vec![w.frobenius_power_matrix(0)];
                for b in 1..s * e {
                    let prev: &Vec<Vec<u64>> = &frob_powers[b - 1];
                    let next = prev.iter().map(|col| w.apply_matrix(&phi, &WElt(col.clone())).0).collect();
                    frob_powers.push(next);
                }
                let ring = MixedRing::with_precision_bound(w, e, precision)?;
                TowerRing::Mixed { ring, zeta_powers, frob_powers }
            }
            Characteristic::P => TowerRing::Laurent { ring: LaurentRing::new(residue.clone()), zeta_powers: zeta_pows },
        };
        Ok(Self { base, n, e, s, residue, base_residue, zeta, precision, group, ring })
    }

    pub fn base(&self) -> BaseFieldSpec {
        self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Ramification index `e = p^n - 1`.
    pub fn e(&self) -> usize {
        self.e
    }

    /// Order of `q` modulo `e`.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    pub fn base_residue_field(&self) -> &FiniteField {
        &self.base_residue
    }

    /// Embedding of the residue field of `K` into that of `L_n`.
    pub fn base_embedding(&self) -> Result<Embedding, Error> {
        Embedding::new(&self.base_residue, &self.residue)
    }

    /// Residue of the chosen primitive `e`-th root of unity.
    pub fn zeta(&self) -> &FfElt {
        &self.zeta
    }

    /// Working precision `N` (characteristic 0).
    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn group(&self) -> &TameGroup {
        &self.group
    }

    pub fn group_elements(&self) -> Vec<GroupElt> {
        self.group.elements()
    }

    /// Degree `[L_n : K]`.
    pub fn degree_over_base(&self) -> usize {
        self.s * self.e * self.e
    }

    /// `e / (p - 1)`.
    pub fn c(&self) -> usize {
        self.e / (self.base.p as usize - 1)
    }

    pub fn ring(&self) -> &TowerRing {
        &self.ring
    }

    pub fn mixed_ring(&self) -> Option<&MixedRing> {
        match &self.ring {
            TowerRing::Mixed { ring, .. } => Some(ring),
            TowerRing::Laurent { .. } => None,
        }
    }

    pub fn laurent_ring(&self) -> Option<&LaurentRing> {
        match &self.ring {
            TowerRing::Laurent { ring, .. } => Some(ring),
            TowerRing::Mixed { .. } => None,
        }
    }

    /// `g = sigma^a phi^b` applied to an element of the characteristic-0 ring.
    pub fn apply_mixed(&self, g: GroupElt, x: &MixedElt) -> Result<MixedElt, Error> {
        let TowerRing::Mixed { ring, zeta_powers, frob_powers } = &self.ring else {
            return Err(Error::InvalidInput("tower is not of characteristic 0".into()));
        };
        let e = self.e as u64;
        let scal: Vec<WElt> = (0..e).map(|j| zeta_powers[(g.a * j % e) as usize].clone()).collect();
        let frob = if g.b == 0 { None } else { Some(frob_powers[g.b as usize].as_slice()) };
        Ok(ring.apply_semilinear(x, frob, &scal))
    }

    /// `g = sigma^a phi^b` applied to a Laurent series.
    pub fn apply_laurent(&self, g: GroupElt, x: &LaurentElt) -> Result<LaurentElt, Error> {
        let TowerRing::Laurent { ring, zeta_powers } = &self.ring else {
            return Err(Error::InvalidInput("tower is not of characteristic p".into()));
        };
        let e = self.e as i64;
        let k = self.base.f * g.b as usize;
        Ok(ring.map_terms(x, |c, j| {
            let z = &zeta_powers[(g.a as i64 * j).rem_euclid(e) as usize];
            self.residue.mul(z, &self.residue.frobenius(c, k))
        }))
    }
}
