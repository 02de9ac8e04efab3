//! Dense polynomials over `Z/nZ` as coefficient vectors, lowest degree first.
//!
//! Only what the field and Galois-ring constructions need: multiplication,
//! reduction by a monic modulus, modular powers, and (for prime `n`) the
//! extended Euclidean algorithm.

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u32], b: &[u32], n: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0) as u64;
            let y = b.get(i).copied().unwrap_or(0) as u64;
            ((x + y) % n as u64) as u32
        })
        .collect();
    trim(out)
}

pub fn sub(a: &[u32], b: &[u32], n: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0) as u64;
            let y = b.get(i).copied().unwrap_or(0) as u64;
            ((x + n as u64 - y % n as u64) % n as u64) as u32
        })
        .collect();
    trim(out)
}

pub fn scale(a: &[u32], c: u32, n: u32) -> Poly {
    trim(a.iter().map(|&x| ((x as u64 * c as u64) % n as u64) as u32).collect())
}

pub fn mul(a: &[u32], b: &[u32], n: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % n as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder modulo a monic polynomial `f`.
pub fn rem_monic(a: &[u32], f: &[u32], n: u32) -> Poly {
    let df = f.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64 % n as u64).collect();
    let n64 = n as u64;
    while r.len() > df {
        let top = r.pop().unwrap();
        if top == 0 {
            continue;
        }
        let shift = r.len() - df;
        for (k, &fc) in f[..df].iter().enumerate() {
            let sub = top * fc as u64 % n64;
            r[shift + k] = (r[shift + k] + n64 - sub) % n64;
        }
    }
    trim(r.into_iter().map(|c| c as u32).collect())
}

pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], n: u32) -> Poly {
    rem_monic(&mul(a, b, n), f, n)
}

pub fn powmod(base: &[u32], mut exp: u64, f: &[u32], n: u32) -> Poly {
    let mut result = rem_monic(&[1], f, n);
    let mut b = rem_monic(base, f, n);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(&result, &b, f, n);
        }
        b = mulmod(&b, &b, f, n);
        exp >>= 1;
    }
    result
}

pub fn inv_mod_prime(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Division with remainder over the prime field `F_p`.
pub fn divrem_prime(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod_prime(b[db], p);
    let mut r = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        q[dr - db] = c;
        for k in 0..=db {
            let s = (c as u64 * b[k] as u64) % p as u64;
            r[dr - db + k] = ((r[dr - db + k] as u64 + p as u64 - s) % p as u64) as u32;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Extended gcd over `F_p`: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd_prime(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (q, r) = divrem_prime(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(d) = degree(&r0) {
        let inv = inv_mod_prime(r0[d], p);
        r0 = scale(&r0, inv, p);
        s0 = scale(&s0, inv, p);
        t0 = scale(&t0, inv, p);
    }
    (r0, s0, t0)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Whether `x` has multiplicative order exactly `order` modulo the monic `f` over `Z/nZ`.
pub fn x_has_order(f: &[u32], n: u32, order: u64) -> bool {
    let x = [0u32, 1];
    if powmod(&x, order, f, n) != vec![1] {
        return false;
    }
    prime_factors(order).into_iter().all(|r| powmod(&x, order / r, f, n) != vec![1])
}

/// Primitivity over `F_p`: `x` generates the multiplicative group of `F_p[x]/(f)`.
pub fn is_primitive(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 || f[deg] != 1 || f[0] == 0 {
        return false;
    }
    let order = (p as u64).pow(deg as u32) - 1;
    if deg == 1 {
        // F_p[x]/(x - r) sends x to r = -f0
        let r = (p - f[0]) % p;
        return multiplicative_order_mod(r as u64, p as u64) == order;
    }
    x_has_order(f, p, order)
}

fn multiplicative_order_mod(a: u64, p: u64) -> u64 {
    if a.is_multiple_of(p) {
        return 0;
    }
    let mut k = 1;
    let mut x = a % p;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}
