//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are stored low degree first and are always reduced mod p.
//! The zero polynomial is the empty vector.

/// Polynomial over F_p, low degree first, no trailing zeros.
pub type Poly = Vec<u32>;

#[inline]
pub fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn powmod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue modulo the prime p.
pub fn invmod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    powmod(a, p as u64 - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u32]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub fn scale(a: &[u32], c: u32, p: u32) -> Poly {
    let mut r: Poly = a.iter().map(|&x| mulmod(x, c, p)).collect();
    trim(&mut r);
    r
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x as u64 * y as u64;
            if acc[i + j] >= 1 << 62 {
                acc[i + j] %= p as u64;
            }
        }
    }
    let mut r: Poly = acc.into_iter().map(|v| (v % p as u64) as u32).collect();
    trim(&mut r);
    r
}

/// Quotient and remainder of `a` by the nonzero polynomial `b`.
pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = invmod(b[db], p);
    let mut q = vec![0u32; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + db], lead_inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(c, bj, p)) % p;
            }
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u32], b: &[u32], p: u32) -> Poly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u32], p: u32) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, invmod(lc, p), p),
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn mulrem(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

/// `a^e mod m`.
pub fn pow_rem(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut base = rem(a, m, p);
    let mut r = rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulrem(&r, &base, m, p);
        }
        base = mulrem(&base, &base, m, p);
        e >>= 1;
    }
    r
}

pub fn derivative(a: &[u32], p: u32) -> Poly {
    let mut r: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, (i as u64 % p as u64) as u32, p))
        .collect();
    trim(&mut r);
    r
}

pub fn eval(a: &[u32], x: u32, p: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// Rabin's irreducibility test for a polynomial of positive degree.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = match degree(f) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // powers[k] = x^(p^k) mod f
    let mut powers = vec![rem(&x, f, p)];
    for k in 1..=d {
        let next = pow_rem(&powers[k - 1], p as u64, f, p);
        powers.push(next);
    }
    if powers[d] != powers[0] {
        return false;
    }
    for r in prime_factors(d as u64) {
        let k = d / r as usize;
        let g = gcd(&sub(&powers[k], &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root_poly(a: &[u32], p: u32) -> Poly {
    // Over F_p the coefficientwise Frobenius is the identity.
    let mut r: Poly = a.iter().step_by(p as usize).copied().collect();
    trim(&mut r);
    r
}

/// Distinct irreducible factors of the squarefree part, in no particular order.
fn squarefree_parts(f: &[u32], p: u32, out: &mut Vec<Poly>) {
    let f = monic(f, p);
    if f.len() <= 1 {
        return;
    }
    let df = derivative(&f, p);
    if df.is_empty() {
        squarefree_parts(&pth_root_poly(&f, p), p, out);
        return;
    }
    let mut c = gcd(&f, &df, p);
    let mut w = divrem(&f, &c, p).0;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push(monic(&z, p));
        }
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        squarefree_parts(&pth_root_poly(&c, p), p, out);
    }
}

/// Berlekamp splitting of a monic squarefree polynomial.
fn berlekamp(f: &[u32], p: u32) -> Vec<Poly> {
    let d = f.len() - 1;
    if d <= 1 {
        return vec![f.to_vec()];
    }
    // Rows of Q - I: x^(p*i) mod f minus x^i.
    let xp = pow_rem(&[0, 1], p as u64, f, p);
    let mut row = vec![1u32];
    let mut mat = vec![vec![0u32; d]; d];
    for (i, line) in mat.iter_mut().enumerate() {
        for (j, slot) in line.iter_mut().enumerate() {
            *slot = row.get(j).copied().unwrap_or(0);
        }
        line[i] = (line[i] + p - 1) % p;
        row = mulrem(&row, &xp, f, p);
    }
    // Left kernel of mat: vectors v with v * mat = 0. Transpose and take the right kernel.
    let mut t = vec![vec![0u32; d]; d];
    for i in 0..d {
        for j in 0..d {
            t[j][i] = mat[i][j];
        }
    }
    let kernel = right_kernel_u32(&mut t, p);
    let k = kernel.len();
    let mut factors = vec![f.to_vec()];
    if k == 1 {
        return factors;
    }
    for v in kernel.iter() {
        let mut vpoly = v.clone();
        trim(&mut vpoly);
        if vpoly.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors.drain(..) {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = sub(&vpoly, &[s], p);
                let h = gcd(&rest, &shifted, p);
                if h.len() > 1 && h.len() < rest.len() {
                    rest = divrem(&rest, &h, p).0;
                    rest = monic(&rest, p);
                    next.push(h);
                }
            }
            next.push(rest);
        }
        factors = next;
        if factors.len() == k {
            break;
        }
    }
    factors
}

/// Right kernel of a small dense matrix over F_p (destroys the input).
fn right_kernel_u32(m: &mut [Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = invmod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = mulmod(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][fc]) % p;
            }
            v
        })
        .collect()
}

/// Distinct monic irreducible factors, sorted by degree then enumeration index.
pub fn irreducible_factors(f: &[u32], p: u32) -> Vec<Poly> {
    let mut parts = Vec::new();
    squarefree_parts(f, p, &mut parts);
    let mut out: Vec<Poly> = parts.iter().flat_map(|g| berlekamp(g, p)).collect();
    for g in out.iter_mut() {
        *g = monic(g, p);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out.dedup();
    out
}
