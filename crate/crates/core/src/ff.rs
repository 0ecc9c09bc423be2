//! Finite fields F_{p^f} in the dense polynomial basis.
//!
//! The modulus is the least monic irreducible polynomial of degree `f`
//! under the element enumeration order: a polynomial or element with
//! coefficient vector `c` (low degree first) has index `sum c_k p^k`, and
//! "least" always refers to this index. Fields in scope are small, so
//! elements are plain coefficient vectors.

use std::fmt;

use crate::poly::{self, mulmod, Poly};
use crate::Error;

/// An element of a [`FiniteField`]: `f` coefficients in `0..p`, low degree first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FfElt(pub Vec<u32>);

impl fmt::Debug for FfElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FfElt {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    f: usize,
    modulus: Poly,
    /// Column j holds the coordinates of (x^j)^p.
    frob: Vec<Vec<u32>>,
}

impl FiniteField {
    /// The field with the least monic irreducible modulus of degree `f`.
    pub fn new(p: u32, f: usize) -> Result<Self, Error> {
        if !poly::is_prime(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p > 251 {
            return Err(Error::InvalidInput(format!("prime {p} is too large (max 251)")));
        }
        if f == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        let modulus = least_irreducible(p, f)?;
        Ok(Self::with_modulus(p, modulus))
    }

    /// Field defined by an explicit monic irreducible modulus (not checked).
    pub fn with_modulus(p: u32, modulus: Poly) -> Self {
        let f = modulus.len() - 1;
        let mut field = Self { p, f, modulus, frob: Vec::new() };
        let frob = (0..f)
            .map(|j| {
                let mut xj = vec![0u32; f];
                xj[j] = 1;
                field.pow(&FfElt(xj), p as u64).0
            })
            .collect();
        field.frob = frob;
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements, `p^f`.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.f as u32)
    }

    pub fn zero(&self) -> FfElt {
        FfElt(vec![0; self.f])
    }

    pub fn one(&self) -> FfElt {
        self.from_prime(1)
    }

    pub fn from_prime(&self, c: u32) -> FfElt {
        let mut v = vec![0; self.f];
        v[0] = c % self.p;
        FfElt(v)
    }

    /// The class of `x` (i.e. the generator of the polynomial basis).
    pub fn gen(&self) -> FfElt {
        let mut v = vec![0; self.f];
        if self.f == 1 {
            // F_p[x]/(x): the generator is 0.
            return FfElt(v);
        }
        v[1] = 1;
        FfElt(v)
    }

    pub fn basis(&self, k: usize) -> FfElt {
        let mut v = vec![0; self.f];
        v[k] = 1;
        FfElt(v)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FfElt {
        let r = poly::rem(&coeffs.iter().map(|c| c % self.p).collect::<Vec<_>>(), &self.modulus, self.p);
        self.pad(r)
    }

    fn pad(&self, mut r: Poly) -> FfElt {
        r.resize(self.f, 0);
        FfElt(r)
    }

    /// Position in the enumeration order.
    pub fn index(&self, x: &FfElt) -> u64 {
        x.0.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> FfElt {
        let mut v = vec![0; self.f];
        for c in v.iter_mut() {
            *c = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        FfElt(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = FfElt> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FfElt, b: &FfElt) -> FfElt {
        FfElt(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % self.p).collect())
    }

    pub fn sub(&self, a: &FfElt, b: &FfElt) -> FfElt {
        FfElt(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + self.p - y) % self.p).collect())
    }

    pub fn neg(&self, a: &FfElt) -> FfElt {
        FfElt(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn scale(&self, a: &FfElt, c: u32) -> FfElt {
        FfElt(a.0.iter().map(|&x| mulmod(x, c % self.p, self.p)).collect())
    }

    pub fn mul(&self, a: &FfElt, b: &FfElt) -> FfElt {
        let prod = poly::mul(&a.0, &b.0, self.p);
        self.pad(poly::rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: &FfElt, mut e: u64) -> FfElt {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: &FfElt) -> Result<FfElt, Error> {
        if a.is_zero() {
            return Err(Error::InvalidInput("inverse of zero in a finite field".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// `x^(p^k)`.
    pub fn frobenius(&self, x: &FfElt, k: usize) -> FfElt {
        let mut y = x.clone();
        for _ in 0..(k % self.f) {
            y = self.frob_once(&y);
        }
        y
    }

    fn frob_once(&self, x: &FfElt) -> FfElt {
        let mut out = vec![0u64; self.f];
        for (j, &c) in x.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &m) in self.frob[j].iter().enumerate() {
                out[i] += c as u64 * m as u64;
            }
        }
        FfElt(out.into_iter().map(|v| (v % self.p as u64) as u32).collect())
    }

    /// The unique `y` with `y^p = x`.
    pub fn pth_root(&self, x: &FfElt) -> FfElt {
        self.frobenius(x, self.f - 1)
    }

    /// Trace down to F_p.
    pub fn absolute_trace(&self, x: &FfElt) -> u32 {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.f {
            acc = self.add(&acc, &y);
            y = self.frob_once(&y);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0));
        acc.0[0]
    }

    /// Relative trace to the subfield of degree `d` (which must divide `f`),
    /// expressed in the coordinates of this field.
    pub fn relative_trace(&self, x: &FfElt, d: usize) -> Result<FfElt, Error> {
        if d == 0 || self.f % d != 0 {
            return Err(Error::InvalidInput(format!("{d} does not divide {}", self.f)));
        }
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..(self.f / d) {
            acc = self.add(&acc, &y);
            y = self.frobenius(&y, d);
        }
        Ok(acc)
    }

    /// Trace to `sub`, returned as an element of `sub` via the canonical embedding.
    pub fn trace_to(&self, x: &FfElt, sub: &FiniteField) -> Result<FfElt, Error> {
        let emb = Embedding::new(sub, self)?;
        let t = self.relative_trace(x, sub.degree())?;
        emb.preimage(&t)
            .ok_or_else(|| Error::InvalidInput("trace does not lie in the subfield".into()))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: &FfElt) -> u64 {
        let n = self.order() - 1;
        let mut ord = n;
        for r in poly::prime_factors(n) {
            while ord % r == 0 && self.pow(x, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    /// Least element (enumeration order) generating the multiplicative group.
    pub fn find_generator(&self) -> FfElt {
        let n = self.order() - 1;
        let primes = poly::prime_factors(n);
        (1..self.order())
            .map(|i| self.from_index(i))
            .find(|x| primes.iter().all(|&r| self.pow(x, n / r) != self.one()))
            .expect("multiplicative group is cyclic")
    }

    /// Least element of multiplicative order exactly `m` (which must divide `p^f - 1`).
    pub fn least_of_order(&self, m: u64) -> Result<FfElt, Error> {
        let n = self.order() - 1;
        if m == 0 || n % m != 0 {
            return Err(Error::InvalidInput(format!("{m} does not divide {n}")));
        }
        if m == 1 {
            return Ok(self.one());
        }
        let g = self.find_generator();
        let base = self.pow(&g, n / m);
        let mut best: Option<(u64, FfElt)> = None;
        let mut y = self.one();
        for k in 0..m {
            if gcd_u64(k, m) == 1 {
                let idx = self.index(&y);
                if best.as_ref().is_none_or(|(b, _)| idx < *b) {
                    best = Some((idx, y.clone()));
                }
            }
            y = self.mul(&y, &base);
        }
        Ok(best.expect("m-th roots of unity exist").1)
    }

    /// Some `x` with `x^p + c x = b`, if one exists.
    ///
    /// The map is F_p-linear, so this is a linear solve on coordinates.
    pub fn solve_artin_schreier(&self, c: &FfElt, b: &FfElt) -> Option<FfElt> {
        let f = self.f;
        let p = self.p;
        // Augmented matrix: columns are images of basis vectors, last column is b.
        let mut rows = vec![vec![0u32; f + 1]; f];
        for j in 0..f {
            let e = self.basis(j);
            let img = self.add(&self.frob_once(&e), &self.mul(c, &e));
            for i in 0..f {
                rows[i][j] = img.0[i];
            }
        }
        for i in 0..f {
            rows[i][f] = b.0[i];
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..f {
            let Some(pr) = (r..f).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = poly::invmod(rows[r][col], p);
            for x in rows[r].iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            for i in 0..f {
                if i != r && rows[i][col] != 0 {
                    let m = rows[i][col];
                    for j in 0..=f {
                        rows[i][j] = (rows[i][j] + p - mulmod(m, rows[r][j], p)) % p;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[f] != 0) {
            return None;
        }
        let mut x = vec![0u32; f];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = rows[i][f];
        }
        Some(FfElt(x))
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn least_irreducible(p: u32, f: usize) -> Result<Poly, Error> {
    let count = (p as u64)
        .checked_pow(f as u32)
        .ok_or_else(|| Error::InvalidInput(format!("F_{p}^{f} is too large")))?;
    for idx in 0..count {
        let mut c = Vec::with_capacity(f + 1);
        let mut k = idx;
        for _ in 0..f {
            c.push((k % p as u64) as u32);
            k /= p as u64;
        }
        c.push(1);
        if poly::is_irreducible(&c, p) {
            return Ok(c);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Ring embedding of a subfield, fixed by sending the generator of `sub`
/// to the least root of its modulus in `sup`.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// Image of x^j for j < sub degree, in sup coordinates.
    images: Vec<FfElt>,
    sup: FiniteField,
}

impl Embedding {
    pub fn new(sub: &FiniteField, sup: &FiniteField) -> Result<Self, Error> {
        if sub.p != sup.p {
            return Err(Error::InvalidInput("fields of different characteristic".into()));
        }
        if sup.f % sub.f != 0 {
            return Err(Error::InvalidInput(format!(
                "degree {} does not divide {}",
                sub.f, sup.f
            )));
        }
        let root = if sub.f == 1 {
            // Modulus x - c with c = -modulus[0].
            sup.from_prime((sub.p - sub.modulus[0]) % sub.p)
        } else {
            let n_sup = sup.order() - 1;
            let n_sub = sub.order() - 1;
            let eta = sup.pow(&sup.find_generator(), n_sup / n_sub);
            let mut y = sup.one();
            let mut best: Option<(u64, FfElt)> = None;
            for _ in 0..n_sub {
                let val = sub
                    .modulus
                    .iter()
                    .rev()
                    .fold(sup.zero(), |acc, &c| sup.add(&sup.mul(&acc, &y), &sup.from_prime(c)));
                if val.is_zero() {
                    let idx = sup.index(&y);
                    if best.as_ref().is_none_or(|(b, _)| idx < *b) {
                        best = Some((idx, y.clone()));
                    }
                }
                y = sup.mul(&y, &eta);
            }
            best.expect("the modulus splits in an extension field").1
        };
        let mut images = Vec::with_capacity(sub.f);
        let mut acc = sup.one();
        for _ in 0..sub.f {
            images.push(acc.clone());
            acc = sup.mul(&acc, &root);
        }
        Ok(Self { images, sup: sup.clone() })
    }

    pub fn apply(&self, x: &FfElt) -> FfElt {
        let s = &self.sup;
        x.0.iter()
            .zip(&self.images)
            .fold(s.zero(), |acc, (&c, img)| s.add(&acc, &s.scale(img, c)))
    }

    /// Image of the generator of the subfield.
    pub fn generator_image(&self) -> FfElt {
        if self.images.len() > 1 {
            self.images[1].clone()
        } else {
            self.sup.zero()
        }
    }

    /// Inverse image of an element of the embedded subfield.
    pub fn preimage(&self, y: &FfElt) -> Option<FfElt> {
        let s = &self.sup;
        let p = s.p;
        let d = self.images.len();
        let f = s.f;
        let mut rows: Vec<Vec<u32>> = (0..f)
            .map(|i| {
                let mut r: Vec<u32> = self.images.iter().map(|img| img.0[i]).collect();
                r.push(y.0[i]);
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..d {
            let Some(pr) = (r..f).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = poly::invmod(rows[r][col], p);
            for x in rows[r].iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            for i in 0..f {
                if i != r && rows[i][col] != 0 {
                    let m = rows[i][col];
                    for j in 0..=d {
                        rows[i][j] = (rows[i][j] + p - mulmod(m, rows[r][j], p)) % p;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[d] != 0) {
            return None;
        }
        let mut x = vec![0u32; d];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = rows[i][d];
        }
        Some(FfElt(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn moduli_are_lex_least() {
        assert_eq!(FiniteField::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn least_cubic_matches_exhaustive_scan() {
        // Scan all 8 monic cubics over F_2 by brute-force root and factor test.
        let mut irreducible = Vec::new();
        for idx in 0..8u32 {
            let c = [idx & 1, (idx >> 1) & 1, (idx >> 2) & 1, 1];
            let has_root = (0..2).any(|x| poly::eval(&c, x, 2) == 0);
            // A cubic is irreducible iff it has no roots.
            if !has_root {
                irreducible.push(idx);
            }
        }
        assert_eq!(irreducible, vec![3, 5]);
        let field = FiniteField::new(2, 3).unwrap();
        let idx: u32 = field.modulus()[..3].iter().rev().fold(0, |a, &c| a * 2 + c);
        assert_eq!(idx, irreducible[0]);
    }

    #[test]
    fn construction_errors() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 0).is_err());
    }

    #[test]
    fn trace_and_roots_in_f4() {
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.absolute_trace(&f4.one()), 0);
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f4.trace_to(&f4.one(), &f2).unwrap(), f2.zero());
        let g = f4.find_generator();
        assert_eq!(f4.mult_order(&g), 3);
        assert_eq!(f4.pth_root(&g), f4.mul(&g, &g));
    }

    #[test]
    fn generator_of_f8_has_order_7() {
        let f8 = FiniteField::new(2, 3).unwrap();
        let g = f8.find_generator();
        // Exhaustive order check over the 7 units.
        let mut y = g.clone();
        let mut ord = 1;
        while y != f8.one() {
            y = f8.mul(&y, &g);
            ord += 1;
        }
        assert_eq!(ord, 7);
        assert_eq!(f8.index(&g), 2);
    }

    #[test]
    fn embeddings() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let f4 = FiniteField::new(2, 2).unwrap();
        let e = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(e.apply(&f2.one()), f4.one());
        let big = FiniteField::new(2, 12).unwrap();
        let e = Embedding::new(&f4, &big).unwrap();
        let r = e.generator_image();
        let val = big.add(&big.add(&big.mul(&r, &r), &r), &big.one());
        assert!(val.is_zero());
        let f8 = FiniteField::new(2, 3).unwrap();
        assert!(Embedding::new(&f8, &f4).is_err());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let f64_ = FiniteField::new(2, 6).unwrap();
        let e = Embedding::new(&f4, &f64_).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(&f4.add(&a, &b)), f64_.add(&e.apply(&a), &e.apply(&b)));
                assert_eq!(e.apply(&f4.mul(&a, &b)), f64_.mul(&e.apply(&a), &e.apply(&b)));
            }
            assert_eq!(f64_.frobenius(&e.apply(&a), 1), e.apply(&f4.frobenius(&a, 1)));
            assert_eq!(e.preimage(&e.apply(&a)), Some(a.clone()));
        }
    }

    #[test]
    fn artin_schreier_small_cases() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f2.solve_artin_schreier(&f2.one(), &f2.one()), None);
        let x = f2.solve_artin_schreier(&f2.one(), &f2.zero()).unwrap();
        assert!(f2.add(&f2.mul(&x, &x), &x).is_zero());
        let f4 = FiniteField::new(2, 2).unwrap();
        let g = f4.gen();
        // x^2 + x = g has a solution iff trace(g) = 0, and tr(g) = 1 here.
        let brute = f4.elements().any(|x| f4.add(&f4.mul(&x, &x), &x) == g);
        assert_eq!(f4.solve_artin_schreier(&f4.one(), &g).is_some(), brute);
        let x = f4.solve_artin_schreier(&f4.one(), &f4.one()).unwrap();
        assert_eq!(f4.add(&f4.mul(&x, &x), &x), f4.one());
    }

    #[test]
    fn artin_schreier_matches_exhaustive_search() {
        for (p, f) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (5, 1), (2, 8)] {
            let field = FiniteField::new(p, f).unwrap();
            let elems: Vec<FfElt> = field.elements().collect();
            let cs: Vec<&FfElt> = elems.iter().step_by(1 + elems.len() / 8).collect();
            for c in cs {
                for b in elems.iter().step_by(1 + elems.len() / 16) {
                    let brute = elems.iter().any(|x| {
                        field.add(&field.pow(x, p as u64), &field.mul(c, x)) == *b
                    });
                    let got = field.solve_artin_schreier(c, b);
                    assert_eq!(got.is_some(), brute, "p={p} f={f}");
                    if let Some(x) = got {
                        assert_eq!(field.add(&field.pow(&x, p as u64), &field.mul(c, &x)), *b);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_and_pth_root_exhaustive() {
        for (p, f) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2)] {
            let field = FiniteField::new(p, f).unwrap();
            for x in field.elements() {
                assert_eq!(field.pth_root(&field.pow(&x, p as u64)), x);
                assert_eq!(field.frobenius(&x, f), x);
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..4096, b in 0u64..4096, c in 0u64..4096) {
            let field = FiniteField::new(2, 12).unwrap();
            let (a, b, c) = (field.from_index(a), field.from_index(b), field.from_index(c));
            prop_assert_eq!(field.mul(&field.mul(&a, &b), &c), field.mul(&a, &field.mul(&b, &c)));
            prop_assert_eq!(
                field.mul(&a, &field.add(&b, &c)),
                field.add(&field.mul(&a, &b), &field.mul(&a, &c))
            );
            if !a.is_zero() {
                prop_assert_eq!(field.mul(&a, &field.inv(&a).unwrap()), field.one());
            }
            let fa = field.frobenius(&a, 1);
            let fb = field.frobenius(&b, 1);
            prop_assert_eq!(field.frobenius(&field.mul(&a, &b), 1), field.mul(&fa, &fb));
        }

        #[test]
        fn odd_characteristic_axioms(a in 0u64..729, b in 0u64..729) {
            let field = FiniteField::new(3, 6).unwrap();
            let (a, b) = (field.from_index(a), field.from_index(b));
            prop_assert_eq!(field.sub(&field.add(&a, &b), &b), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(field.mul(&a, &field.inv(&a).unwrap()), field.one());
            }
        }
    }
}
