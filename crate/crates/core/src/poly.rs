//! Dense univariate polynomials over `Z/pZ` with `p < 2^62`, used to find
//! eigenvalues: characteristic polynomials via Hessenberg reduction and
//! distinct roots via `gcd(f, x^p - x)` followed by equal-degree splitting.
//!
//! Coefficient vectors are little-endian (`f[k]` is the coefficient of `x^k`).

/// Mersenne prime used to reduce rational matrices before root finding.
pub const LARGE_PRIME: u64 = (1 << 61) - 1;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if a % m == 0 {
        None
    } else {
        Some(pow_mod(a, m - 2, m))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    if f.is_empty() {
        f.push(0);
    }
}

fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn poly_sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|k| {
            sub_mod(
                a.get(k).copied().unwrap_or(0),
                b.get(k).copied().unwrap_or(0),
                m,
            )
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, m), m);
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `b` (b nonzero).
fn poly_rem(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    poly_divrem(a, b, m).1
}

fn poly_divrem(a: &[u64], b: &[u64], m: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], m).unwrap();
    let mut r = a.to_vec();
    trim(&mut r);
    let da = match degree(&r) {
        Some(d) if d >= db => d,
        _ => return (vec![0], r),
    };
    let mut q = vec![0u64; da - db + 1];
    for k in (db..=da).rev() {
        let c = mul_mod(r[k], lead_inv, m);
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            r[k - db + j] = sub_mod(r[k - db + j], mul_mod(c, bj, m), m);
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

fn make_monic(f: &mut [u64], m: u64) {
    if let Some(d) = degree(f) {
        let inv = inv_mod(f[d], m).unwrap();
        for c in f.iter_mut() {
            *c = mul_mod(*c, inv, m);
        }
    }
}

fn poly_gcd(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = poly_rem(&x, &y, m);
        x = y;
        y = r;
    }
    make_monic(&mut x, m);
    x
}

/// `base^exp mod f`.
fn poly_pow_mod(base: &[u64], mut exp: u64, f: &[u64], m: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, m), f, m);
        }
        b = poly_rem(&poly_mul(&b, &b, m), f, m);
        exp >>= 1;
    }
    acc
}

pub fn eval(f: &[u64], x: u64, m: u64) -> u64 {
    f.iter()
        .rev()
        .fold(0u64, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
}

/// Distinct roots of `f` in `F_m`, sorted ascending.
pub fn roots(f: &[u64], m: u64) -> Vec<u64> {
    let mut f = f.to_vec();
    trim(&mut f);
    let d = match degree(&f) {
        None => return Vec::new(),
        Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if m <= 4096 || d == 0 {
        return (0..m).filter(|&x| eval(&f, x, m) == 0).collect();
    }
    make_monic(&mut f, m);
    // g = gcd(f, x^m - x) collects the distinct linear factors.
    let xm = poly_pow_mod(&[0, 1], m, &f, m);
    let g = poly_gcd(&f, &poly_sub(&xm, &[0, 1], m), m);
    let mut out = Vec::new();
    split_linear(&g, m, 1, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

fn split_linear(g: &[u64], m: u64, mut shift: u64, out: &mut Vec<u64>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => {
            // monic: x + c
            out.push(sub_mod(0, g[0], m));
        }
        Some(d) => {
            let half = (m - 1) / 2;
            loop {
                let h = poly_pow_mod(&[shift % m, 1], half, g, m);
                let h = poly_sub(&h, &[1], m);
                let c = poly_gcd(g, &h, m);
                shift += 1;
                let dc = degree(&c).unwrap_or(0);
                if dc > 0 && dc < d {
                    let (q, _) = poly_divrem(g, &c, m);
                    let mut q = q;
                    make_monic(&mut q, m);
                    split_linear(&c, m, shift, out);
                    split_linear(&q, m, shift, out);
                    return;
                }
                if shift > 64 + d as u64 * 8 {
                    // Splitting succeeds with probability about 1/2 per shift;
                    // fall back to exhaustive search when that is cheap.
                    if m <= 1 << 20 {
                        out.extend((0..m).filter(|&x| eval(g, x, m) == 0));
                    }
                    return;
                }
            }
        }
    }
}

/// Characteristic polynomial `det(x I - a)` of a square matrix given row-major
/// with entries already reduced modulo `m`.
pub fn charpoly(a: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut h = a.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    // Hessenberg reduction by similarity transforms.
    for j in 0..n.saturating_sub(2) {
        let piv_row = j + 1;
        if h[idx(piv_row, j)] == 0 {
            if let Some(i) = (j + 2..n).find(|&i| h[idx(i, j)] != 0) {
                for c in 0..n {
                    h.swap(idx(i, c), idx(piv_row, c));
                }
                for r in 0..n {
                    h.swap(idx(r, i), idx(r, piv_row));
                }
            } else {
                continue;
            }
        }
        let inv = inv_mod(h[idx(piv_row, j)], m).unwrap();
        for i in j + 2..n {
            let u = mul_mod(h[idx(i, j)], inv, m);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = mul_mod(u, h[idx(piv_row, c)], m);
                h[idx(i, c)] = sub_mod(h[idx(i, c)], v, m);
            }
            for r in 0..n {
                let v = mul_mod(u, h[idx(r, i)], m);
                h[idx(r, piv_row)] = add_mod(h[idx(r, piv_row)], v, m);
            }
        }
    }
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let diag = h[idx(k - 1, k - 1)];
        let mut next = poly_mul(&p[k - 1], &[sub_mod(0, diag, m), 1], m);
        let mut t = 1u64;
        for i in 1..k {
            t = mul_mod(t, h[idx(k - i, k - i - 1)], m);
            let coef = mul_mod(t, h[idx(k - i - 1, k - 1)], m);
            if coef == 0 {
                continue;
            }
            let scaled: Vec<u64> = p[k - i - 1].iter().map(|&c| mul_mod(c, coef, m)).collect();
            next = poly_sub(&next, &scaled, m);
        }
        p.push(next);
    }
    let mut out = p.pop().unwrap();
    out.resize(n + 1, 0);
    out
}

/// Rational reconstruction: the fraction `num/den` with `|num|, den <= sqrt(m/2)`
/// congruent to `r` modulo `m`, if one exists.
pub fn rational_reconstruct(r: u64, m: u64) -> Option<(i128, i128)> {
    let bound = ((m / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m as i128, r as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((num, den))
}
