//! Truncated integer rings of the tame tower.
//!
//! * [`UnramifiedRing`]: `W(F_{p^f}) / p^m`, the Witt vectors of a finite
//!   field, realized as `(Z/p^m)[X] / (F~)` with `F~` the naive lift of the
//!   residue modulus.
//! * [`MixedRing`]: `W / p^m [pi] / (pi^e - p)`, the valuation ring of a tamely
//!   totally ramified extension of `W[1/p]`, truncated at `pi^(m e)`.
//! * [`LaurentRing`]: truncated Laurent series `l((u))` in characteristic `p`.
//!
//! Elements carry an absolute precision (in units of the uniformizer) so that
//! a zero that is only zero "to the available precision" is reported as
//! [`Error::PrecisionExhausted`] rather than silently treated as exact.

use std::collections::BTreeMap;

use crate::ff::{FfElt, FiniteField};
use crate::Error;

/// Largest modulus `p^m` supported by the `u64` arithmetic.
const MAX_MODULUS: u64 = 1 << 31;

/// `W(F_{p^f}) / p^m`.
#[derive(Clone, Debug)]
pub struct UnramifiedRing {
    residue: FiniteField,
    p: u64,
    m: u32,
    modulus: u64,
    /// Monic lift of the residue modulus, `f + 1` coefficients.
    lift: Vec<u64>,
    /// Column `j`: coordinates of `Phi(x^j)` for the absolute Frobenius `Phi`.
    frob: Vec<Vec<u64>>,
}

/// Element of [`UnramifiedRing`]: `f` coefficients mod `p^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WElt(pub Vec<u64>);

impl UnramifiedRing {
    pub fn new(residue: FiniteField, m: u32) -> Result<Self, Error> {
        let p = residue.p() as u64;
        if m == 0 {
            return Err(Error::InvalidInput("working precision must be positive".into()));
        }
        let modulus = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_MODULUS)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{m} exceeds the coefficient word size")))?;
        let lift = residue.modulus().iter().map(|&c| c as u64).collect();
        let mut ring = Self { residue, p, m, modulus, lift, frob: Vec::new() };
        ring.frob = ring.frobenius_matrix()?;
        Ok(ring)
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Working precision `m` (elements are known mod `p^m`).
    pub fn precision(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.residue.degree()
    }

    pub fn zero(&self) -> WElt {
        WElt(vec![0; self.degree()])
    }

    pub fn one(&self) -> WElt {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> WElt {
        let mut v = self.zero();
        v.0[0] = c.rem_euclid(self.modulus as i64) as u64;
        v
    }

    /// Naive (coefficientwise) lift of a residue element.
    pub fn lift(&self, a: &FfElt) -> WElt {
        WElt(a.0.iter().map(|&c| c as u64).collect())
    }

    pub fn residue(&self, x: &WElt) -> FfElt {
        FfElt(x.0.iter().map(|&c| (c % self.p) as u32).collect())
    }

    pub fn is_zero(&self, x: &WElt) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &WElt, b: &WElt) -> WElt {
        WElt(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.modulus).collect())
    }

    pub fn sub(&self, a: &WElt, b: &WElt) -> WElt {
        WElt(a.0.iter().zip(&b.0).map(|(x, y)| (x + self.modulus - y) % self.modulus).collect())
    }

    pub fn neg(&self, a: &WElt) -> WElt {
        WElt(a.0.iter().map(|x| (self.modulus - x) % self.modulus).collect())
    }

    pub fn scale(&self, a: &WElt, c: u64) -> WElt {
        let c = c % self.modulus;
        WElt(a.0.iter().map(|x| x * c % self.modulus).collect())
    }

    pub fn mul(&self, a: &WElt, b: &WElt) -> WElt {
        let f = self.degree();
        let mut prod = vec![0u64; 2 * f];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.modulus;
            }
        }
        self.reduce_poly(prod)
    }

    /// Reduce a polynomial of degree `< 2f` modulo the lifted modulus.
    fn reduce_poly(&self, mut prod: Vec<u64>) -> WElt {
        let f = self.degree();
        for top in (f..prod.len()).rev() {
            let c = prod[top] % self.modulus;
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for k in 0..f {
                let t = c * self.lift[k] % self.modulus;
                let idx = top - f + k;
                prod[idx] = (prod[idx] + self.modulus - t) % self.modulus;
            }
        }
        prod.truncate(f);
        WElt(prod.into_iter().map(|c| c % self.modulus).collect())
    }

    pub fn pow(&self, a: &WElt, mut e: u64) -> WElt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// p-adic valuation (`None` for zero).
    pub fn valuation(&self, x: &WElt) -> Option<u32> {
        x.0.iter().filter(|&&c| c != 0).map(|&c| vp(c, self.p)).min()
    }

    /// Exact division by `p^t`; the top `t` digits of the result are unknown and set to zero.
    pub fn div_p_pow(&self, x: &WElt, t: u32) -> WElt {
        let d = self.p.pow(t);
        WElt(x.0.iter().map(|&c| c / d).collect())
    }

    /// Inverse of a unit (nonzero residue), by Newton iteration.
    pub fn inv(&self, x: &WElt) -> Result<WElt, Error> {
        let r = self.residue(x);
        let r_inv = self.residue.inv(&r)?;
        let mut y = self.lift(&r_inv);
        let two = self.from_int(2);
        for _ in 0..=self.m.ilog2() + 1 {
            y = self.mul(&y, &self.sub(&two, &self.mul(x, &y)));
        }
        debug_assert_eq!(self.mul(x, &y), self.one());
        Ok(y)
    }

    /// Teichmuller representative: the unique root of unity with residue `a`.
    pub fn teichmuller(&self, a: &FfElt) -> WElt {
        if a.is_zero() {
            return self.zero();
        }
        // z -> z^{p^f} fixes the residue and contracts towards the root of unity.
        let mut z = self.lift(a);
        for _ in 0..self.m {
            let mut next = z.clone();
            for _ in 0..self.degree() {
                next = self.pow(&next, self.p);
            }
            if next == z {
                break;
            }
            z = next;
        }
        z
    }

    /// Absolute Frobenius (the lift of `x -> x^p`) applied `k` times.
    pub fn frobenius(&self, x: &WElt, k: usize) -> WElt {
        let mut y = x.clone();
        for _ in 0..(k % self.degree()) {
            y = self.apply_matrix(&self.frob, &y);
        }
        y
    }

    /// Matrix (columns = images of `x^j`) of `Phi^k`.
    pub fn frobenius_power_matrix(&self, k: usize) -> Vec<Vec<u64>> {
        (0..self.degree())
            .map(|j| {
                let mut e = self.zero();
                e.0[j] = 1;
                self.frobenius(&e, k).0
            })
            .collect()
    }

    pub fn apply_matrix(&self, cols: &[Vec<u64>], x: &WElt) -> WElt {
        let f = self.degree();
        let mut out = vec![0u64; f];
        for (j, &c) in x.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(&cols[j]) {
                *o = (*o + c * m) % self.modulus;
            }
        }
        WElt(out)
    }

    /// Root of the lifted modulus congruent to `X^p`: the image of `X` under Frobenius.
    fn frobenius_matrix(&self) -> Result<Vec<Vec<u64>>, Error> {
        let f = self.degree();
        let mut x = self.zero();
        if f == 1 {
            // W(F_p) = Z/p^m: Frobenius is the identity.
            return Ok(vec![vec![1]]);
        }
        x.0[1] = 1;
        let mut root = self.pow(&x, self.p);
        let deriv: Vec<u64> = (1..=f).map(|k| self.lift[k] * k as u64 % self.modulus).collect();
        for _ in 0..=2 * self.m + 2 {
            let val = self.eval(&self.lift, &root);
            if self.is_zero(&val) {
                break;
            }
            let d = self.eval(&deriv, &root);
            root = self.sub(&root, &self.mul(&val, &self.inv(&d)?));
        }
        if !self.is_zero(&self.eval(&self.lift, &root)) {
            return Err(Error::IterationCap("Frobenius root lifting did not converge".into()));
        }
        let mut cols = Vec::with_capacity(f);
        let mut power = self.one();
        for _ in 0..f {
            cols.push(power.0.clone());
            power = self.mul(&power, &root);
        }
        Ok(cols)
    }

    fn eval(&self, coeffs: &[u64], x: &WElt) -> WElt {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_int(c as i64));
        }
        acc
    }
}

fn vp(mut c: u64, p: u64) -> u32 {
    let mut v = 0;
    while c % p == 0 {
        c /= p;
        v += 1;
    }
    v
}

/// `W / p^m [pi] / (pi^e - p)`.
#[derive(Clone, Debug)]
pub struct MixedRing {
    w: UnramifiedRing,
    e: usize,
    /// Tracked precision `N <= m e` in units of `pi`.
    prec: usize,
}

/// Element of [`MixedRing`]: `sum_j c_j pi^j` for `j < e`, stored flat
/// (`data[j * f + k]` is coefficient `k` of `c_j`), known modulo `pi^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedElt {
    data: Vec<u64>,
    prec: usize,
}

impl MixedElt {
    /// Absolute precision in units of the uniformizer.
    pub fn precision(&self) -> usize {
        self.prec
    }
}

impl MixedRing {
    /// Ring with the full precision `pi^(m e)` of the coefficient ring.
    pub fn new(w: UnramifiedRing, e: usize) -> Result<Self, Error> {
        let prec = w.precision() as usize * e;
        Self::with_precision_bound(w, e, prec)
    }

    /// Ring whose elements are only trusted modulo `pi^prec`.
    pub fn with_precision_bound(w: UnramifiedRing, e: usize, prec: usize) -> Result<Self, Error> {
        if e == 0 {
            return Err(Error::InvalidInput("ramification index must be positive".into()));
        }
        if prec > w.precision() as usize * e {
            return Err(Error::InvalidInput(format!("precision {prec} exceeds the coefficient ring")));
        }
        Ok(Self { w, e, prec })
    }

    pub fn coefficients(&self) -> &UnramifiedRing {
        &self.w
    }

    pub fn e(&self) -> usize {
        self.e
    }

    fn f(&self) -> usize {
        self.w.degree()
    }

    /// Precision of elements built from exact data.
    pub fn full_precision(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> MixedElt {
        MixedElt { data: vec![0; self.e * self.f()], prec: self.full_precision() }
    }

    pub fn one(&self) -> MixedElt {
        self.from_coefficient(&self.w.one())
    }

    pub fn from_int(&self, c: i64) -> MixedElt {
        self.from_coefficient(&self.w.from_int(c))
    }

    pub fn from_coefficient(&self, c: &WElt) -> MixedElt {
        self.monomial(c, 0)
    }

    /// `c pi^j` for any `j >= 0`.
    pub fn monomial(&self, c: &WElt, j: usize) -> MixedElt {
        let mut x = self.zero();
        let (t, slot) = (j / self.e, j % self.e);
        if t >= self.w.precision() as usize {
            return x;
        }
        let c = self.w.scale(c, self.w.p().pow(t as u32));
        x.data[slot * self.f()..(slot + 1) * self.f()].copy_from_slice(&c.0);
        x
    }

    pub fn uniformizer(&self) -> MixedElt {
        self.monomial(&self.w.one(), 1)
    }

    /// Coefficient `c_j` of `pi^j`, `j < e`.
    pub fn coefficient(&self, x: &MixedElt, j: usize) -> WElt {
        WElt(x.data[j * self.f()..(j + 1) * self.f()].to_vec())
    }

    pub fn from_coefficients(&self, cs: &[WElt]) -> MixedElt {
        assert_eq!(cs.len(), self.e);
        MixedElt { data: cs.iter().flat_map(|c| c.0.iter().copied()).collect(), prec: self.full_precision() }
    }

    pub fn with_precision(&self, x: &MixedElt, prec: usize) -> MixedElt {
        MixedElt { data: x.data.clone(), prec: prec.min(x.prec) }
    }

    pub fn add(&self, a: &MixedElt, b: &MixedElt) -> MixedElt {
        let q = self.w.modulus();
        MixedElt {
            data: a.data.iter().zip(&b.data).map(|(x, y)| (x + y) % q).collect(),
            prec: a.prec.min(b.prec),
        }
    }

    pub fn sub(&self, a: &MixedElt, b: &MixedElt) -> MixedElt {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &MixedElt) -> MixedElt {
        let q = self.w.modulus();
        MixedElt { data: a.data.iter().map(|x| (q - x) % q).collect(), prec: a.prec }
    }

    pub fn mul(&self, a: &MixedElt, b: &MixedElt) -> MixedElt {
        let (e, f) = (self.e, self.f());
        let q = self.w.modulus();
        let p = self.w.p();
        let mut acc = vec![vec![0u64; 2 * f]; e];
        for i in 0..e {
            let ai = &a.data[i * f..(i + 1) * f];
            if ai.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..e {
                let bj = &b.data[j * f..(j + 1) * f];
                if bj.iter().all(|&c| c == 0) {
                    continue;
                }
                let (slot, factor) = if i + j >= e { (i + j - e, p) } else { (i + j, 1) };
                let target = &mut acc[slot];
                for (k, &x) in ai.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let x = x * factor % q;
                    for (l, &y) in bj.iter().enumerate() {
                        target[k + l] = (target[k + l] + x * y) % q;
                    }
                }
            }
        }
        let mut data = Vec::with_capacity(e * f);
        for poly in acc {
            data.extend(self.w.reduce_poly(poly).0);
        }
        MixedElt { data, prec: self.product_precision(a, b) }
    }

    fn product_precision(&self, a: &MixedElt, b: &MixedElt) -> usize {
        let full = self.full_precision();
        let va = self.valuation_raw(a).unwrap_or(a.prec);
        let vb = self.valuation_raw(b).unwrap_or(b.prec);
        (a.prec + vb).min(b.prec + va).min(full)
    }

    /// `x * (1 + y pi^j)`: the sparse product used by the class reduction.
    pub fn mul_one_plus_monomial(&self, x: &MixedElt, y: &WElt, j: usize) -> MixedElt {
        let (e, f) = (self.e, self.f());
        let p = self.w.p();
        let m = self.w.precision() as usize;
        let mut out = x.clone();
        for i in 0..e {
            let ci = WElt(x.data[i * f..(i + 1) * f].to_vec());
            if self.w.is_zero(&ci) {
                continue;
            }
            let t = i + j;
            let (carry, slot) = (t / e, t % e);
            if carry >= m {
                continue;
            }
            let prod = self.w.scale(&self.w.mul(&ci, y), p.pow(carry as u32));
            let dst = &mut out.data[slot * f..(slot + 1) * f];
            for (d, c) in dst.iter_mut().zip(prod.0) {
                *d = (*d + c) % self.w.modulus();
            }
        }
        out.prec = x.prec.min(self.full_precision());
        out
    }

    pub fn pow(&self, a: &MixedElt, mut k: u64) -> MixedElt {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pth_power(&self, a: &MixedElt) -> MixedElt {
        self.pow(a, self.w.p())
    }

    fn valuation_raw(&self, x: &MixedElt) -> Option<usize> {
        let f = self.f();
        let mut best: Option<usize> = None;
        for j in 0..self.e {
            for &c in &x.data[j * f..(j + 1) * f] {
                if c != 0 {
                    let v = vp(c, self.w.p()) as usize * self.e + j;
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        best
    }

    /// Valuation in units of `pi`. Errors if `x` vanishes to its known precision.
    pub fn valuation(&self, x: &MixedElt) -> Result<usize, Error> {
        match self.valuation_raw(x) {
            Some(v) if v < x.prec => Ok(v),
            _ => Err(Error::PrecisionExhausted(format!(
                "element is zero modulo pi^{} (its known precision)",
                x.prec
            ))),
        }
    }

    /// Valuation if it is at most `bound`; `None` if `x` is zero modulo `pi^(bound+1)`.
    pub fn valuation_upto(&self, x: &MixedElt, bound: usize) -> Result<Option<usize>, Error> {
        if x.prec <= bound {
            return Err(Error::PrecisionExhausted(format!(
                "need precision above pi^{bound}, have pi^{}",
                x.prec
            )));
        }
        Ok(self.valuation_raw(x).filter(|&v| v <= bound))
    }

    /// Residue of `x / pi^v(x)` at the given valuation.
    pub fn leading_at(&self, x: &MixedElt, v: usize) -> FfElt {
        let (t, j) = (v / self.e, v % self.e);
        let c = self.w.div_p_pow(&self.coefficient(x, j), t as u32);
        self.w.residue(&c)
    }

    /// Valuation and leading residue.
    pub fn leading(&self, x: &MixedElt) -> Result<(usize, FfElt), Error> {
        let v = self.valuation(x)?;
        Ok((v, self.leading_at(x, v)))
    }

    /// `x / pi^k`, requiring `v(x) >= k`. Precision drops by `k`.
    pub fn divide_pow_uniformizer(&self, x: &MixedElt, k: usize) -> Result<MixedElt, Error> {
        if let Some(v) = self.valuation_raw(x) {
            if v < k {
                return Err(Error::InvalidInput(format!("valuation {v} is below {k}")));
            }
        }
        if x.prec < k {
            return Err(Error::PrecisionExhausted(format!("cannot divide by pi^{k}")));
        }
        let e = self.e;
        let mut out = self.zero();
        for i in 0..e {
            let c = self.coefficient(x, i);
            if self.w.is_zero(&c) {
                continue;
            }
            // pi^(i-k) = pi^(i - k + e s) / p^s
            let s = if k > i { (k - i).div_ceil(e) } else { 0 };
            let slot = i + e * s - k;
            let c = self.w.div_p_pow(&c, s as u32);
            out.data[slot * self.f()..(slot + 1) * self.f()].copy_from_slice(&c.0);
        }
        out.prec = x.prec - k;
        Ok(out)
    }

    /// Inverse of a unit by Newton iteration.
    pub fn inv(&self, x: &MixedElt) -> Result<MixedElt, Error> {
        let (v, r) = self.leading(x)?;
        if v != 0 {
            return Err(Error::InvalidInput("inverse of a non-unit".into()));
        }
        let r_inv = self.w.residue_field().inv(&r)?;
        let mut y = self.from_coefficient(&self.w.teichmuller(&r_inv));
        let two = self.from_int(2);
        for _ in 0..=(self.full_precision().max(2)).ilog2() + 1 {
            y = self.mul(&y, &self.sub(&two, &self.mul(x, &y)));
        }
        y.prec = x.prec;
        Ok(y)
    }

    /// Teichmuller representative as a ring element.
    pub fn teichmuller(&self, a: &FfElt) -> MixedElt {
        self.from_coefficient(&self.w.teichmuller(a))
    }

    /// Apply a coefficient map (given as a matrix on `W`) and multiply `pi^j` by `scal[j]`.
    pub fn apply_semilinear(&self, x: &MixedElt, frob: Option<&[Vec<u64>]>, scal: &[WElt]) -> MixedElt {
        let mut cs = Vec::with_capacity(self.e);
        for (j, s) in scal.iter().enumerate().take(self.e) {
            let mut c = self.coefficient(x, j);
            if let Some(m) = frob {
                c = self.w.apply_matrix(m, &c);
            }
            cs.push(self.w.mul(&c, s));
        }
        let mut y = self.from_coefficients(&cs);
        y.prec = x.prec;
        y
    }
}

/// Truncated Laurent series over `l` in the variable `u`.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    field: FiniteField,
}

/// Element of [`LaurentRing`]: nonzero terms below the precision `prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentElt {
    terms: BTreeMap<i64, FfElt>,
    prec: i64,
}

impl LaurentElt {
    pub fn terms(&self) -> &BTreeMap<i64, FfElt> {
        &self.terms
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }
}

impl LaurentRing {
    pub fn new(field: FiniteField) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn zero(&self, prec: i64) -> LaurentElt {
        LaurentElt { terms: BTreeMap::new(), prec }
    }

    pub fn monomial(&self, c: &FfElt, j: i64, prec: i64) -> LaurentElt {
        let mut x = self.zero(prec);
        if !c.is_zero() && j < prec {
            x.terms.insert(j, c.clone());
        }
        x
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (i64, FfElt)>, prec: i64) -> LaurentElt {
        let mut x = self.zero(prec);
        for (j, c) in terms {
            self.add_term(&mut x, j, &c);
        }
        x
    }

    fn add_term(&self, x: &mut LaurentElt, j: i64, c: &FfElt) {
        if j >= x.prec || c.is_zero() {
            return;
        }
        let sum = match x.terms.get(&j) {
            Some(old) => self.field.add(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            x.terms.remove(&j);
        } else {
            x.terms.insert(j, sum);
        }
    }

    pub fn add(&self, a: &LaurentElt, b: &LaurentElt) -> LaurentElt {
        let mut x = LaurentElt { terms: BTreeMap::new(), prec: a.prec.min(b.prec) };
        for (&j, c) in a.terms.iter().chain(&b.terms) {
            self.add_term(&mut x, j, c);
        }
        x
    }

    pub fn neg(&self, a: &LaurentElt) -> LaurentElt {
        LaurentElt { terms: a.terms.iter().map(|(&j, c)| (j, self.field.neg(c))).collect(), prec: a.prec }
    }

    pub fn sub(&self, a: &LaurentElt, b: &LaurentElt) -> LaurentElt {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &LaurentElt, b: &LaurentElt) -> LaurentElt {
        let va = self.valuation_raw(a).unwrap_or(a.prec);
        let vb = self.valuation_raw(b).unwrap_or(b.prec);
        let mut x = self.zero((a.prec + vb).min(b.prec + va));
        for (&i, c) in &a.terms {
            for (&j, d) in &b.terms {
                self.add_term(&mut x, i + j, &self.field.mul(c, d));
            }
        }
        x
    }

    pub fn pth_power(&self, a: &LaurentElt) -> LaurentElt {
        let p = self.field.p() as i64;
        LaurentElt {
            terms: a.terms.iter().map(|(&j, c)| (j * p, self.field.frobenius(c, 1))).collect(),
            prec: a.prec.saturating_mul(p),
        }
    }

    fn valuation_raw(&self, x: &LaurentElt) -> Option<i64> {
        x.terms.keys().next().copied()
    }

    pub fn valuation(&self, x: &LaurentElt) -> Result<i64, Error> {
        self.valuation_raw(x).ok_or_else(|| {
            Error::PrecisionExhausted(format!("series is zero modulo u^{}", x.prec))
        })
    }

    pub fn leading(&self, x: &LaurentElt) -> Result<(i64, FfElt), Error> {
        let (&j, c) = x.terms.iter().next().ok_or_else(|| {
            Error::PrecisionExhausted(format!("series is zero modulo u^{}", x.prec))
        })?;
        Ok((j, c.clone()))
    }

    /// Inverse of a nonzero series by Newton iteration on the unit part.
    pub fn inv(&self, x: &LaurentElt) -> Result<LaurentElt, Error> {
        let (v, c) = self.leading(x)?;
        let rel = x.prec - v;
        // unit = x u^{-v}
        let unit = LaurentElt { terms: x.terms.iter().map(|(&j, d)| (j - v, d.clone())).collect(), prec: rel };
        let mut y = self.monomial(&self.field.inv(&c)?, 0, rel);
        let two = self.monomial(&self.field.from_prime(2), 0, rel);
        for _ in 0..=(rel.max(2) as u64).ilog2() + 1 {
            y = self.mul(&y, &self.sub(&two, &self.mul(&unit, &y)));
            y.prec = rel;
        }
        Ok(LaurentElt { terms: y.terms.into_iter().map(|(j, d)| (j - v, d)).collect(), prec: rel - v })
    }

    /// Map each coefficient `c_j` to `g(c_j) * s^j` for a field map `g`.
    pub fn map_terms(&self, x: &LaurentElt, g: impl Fn(&FfElt, i64) -> FfElt) -> LaurentElt {
        let mut y = self.zero(x.prec);
        for (&j, c) in &x.terms {
            self.add_term(&mut y, j, &g(c, j));
        }
        y
    }
}
