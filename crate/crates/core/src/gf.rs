//! Finite fields F_q with q = p^m <= 2^31.
//!
//! An element is a [`Felt`]: the coefficient vector (c_0, .., c_{m-1}) of a
//! polynomial in the modulus basis, packed as the integer sum c_i p^i. For
//! m = 1 this is simply the residue in [0, p). All arithmetic goes through a
//! shared [`FieldCtx`]; fields with q <= 2^16 keep log/exp tables internally.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 31;

const LOG_TABLE_LIMIT: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field size {p}^{m} exceeds 2^31")]
    Overflow { p: u64, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MismatchedField,
    #[error("frobenius exponent {j} outside 0..={m}")]
    BadExponent { j: u32, m: u32 },
    #[error("invalid field element {0:?}")]
    Parse(String),
}

/// Canonical field element. Only meaningful together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    /// Packed integer encoding (sum of c_i p^i).
    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field F_{p^m}.
#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    omega: Felt,
    tables: Option<LogTables>,
}

impl PartialEq for FieldCtx {
    // the modulus is a function of (p, m), so this is codec equality
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FieldCtx {}

/// Shorthand for [`FieldCtx::new`].
pub fn field_new(p: u64, m: u32) -> Result<Arc<FieldCtx>, GfError> {
    FieldCtx::new(p, m)
}

impl FieldCtx {
    /// Builds F_{p^m} with the least monic irreducible modulus of degree m,
    /// ordering candidates by their coefficient vectors read from degree m-1
    /// down to degree 0.
    pub fn new(p: u64, m: u32) -> Result<Arc<FieldCtx>, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if m == 0 {
            return Err(GfError::DegreeZero);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(GfError::Overflow { p, m });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, m)
        };
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            omega: Felt(0),
            tables: None,
        };
        ctx.omega = ctx.find_primitive();
        if m > 1 && q <= LOG_TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(Arc::new(ctx))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low degree first (length m + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element found by ascending search.
    pub fn omega(&self) -> Felt {
        self.omega
    }

    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }

    pub fn one(&self) -> Felt {
        Felt::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Felt {
        Felt(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_raw(&self, raw: u32) -> Result<Felt, GfError> {
        if raw >= self.q {
            return Err(GfError::Parse(raw.to_string()));
        }
        Ok(Felt(raw))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Felt, GfError> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::Parse(format!("{coeffs:?}")));
        }
        Ok(Felt(self.encode(coeffs)))
    }

    pub fn coeffs(&self, x: Felt) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut v = x.0;
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.q).map(Felt)
    }

    /// The basis 1, x, .., x^{m-1} of F_q over F_p.
    pub fn prime_basis(&self) -> Vec<Felt> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut v = 1u32;
        for _ in 0..self.m {
            out.push(Felt(v));
            v = v.wrapping_mul(self.p);
        }
        out
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.m == 1 {
            let s = a.0 as u64 + b.0 as u64;
            let p = self.p as u64;
            return Felt(if s >= p { s - p } else { s } as u32);
        }
        if self.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut r, mut pw) = (0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            r += d * pw;
            pw = pw.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        Felt(r)
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        if a.0 == 0 {
            return a;
        }
        if self.m == 1 {
            return Felt(self.p - a.0);
        }
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut r, mut pw) = (0u32, 1u32);
        while x > 0 {
            let d = (self.p - x % self.p) % self.p;
            r += d * pw;
            pw = pw.wrapping_mul(self.p);
            x /= self.p;
        }
        Felt(r)
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if self.m == 1 {
            return Felt(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        match &self.tables {
            Some(t) => Felt(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: Felt, b: Felt) -> Felt {
        let m = self.m as usize;
        let p = self.p as u64;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &f) in self.modulus[..m].iter().enumerate() {
                let t = prod[d - m + i] + (p - c) * f as u64 % p;
                prod[d - m + i] = t % p;
            }
        }
        let out: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        Felt(self.encode(&out))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        if self.m == 1 {
            let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let k = r0 / r1;
                (r0, r1) = (r1, r0 - k * r1);
                (t0, t1) = (t1, t0 - k * t1);
            }
            return Ok(self.from_int(t0));
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize];
            return Ok(Felt(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, mut e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.0 == 0 {
            return Felt::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = (self.q - 1) as u64;
            let idx = (t.log[a.0 as usize] as u64 * (e % n)) % n;
            return Felt(t.exp[idx as usize]);
        }
        let mut base = a;
        let mut acc = Felt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x^(p^j) for 0 <= j <= m.
    pub fn frobenius(&self, x: Felt, j: u32) -> Result<Felt, GfError> {
        if j > self.m {
            return Err(GfError::BadExponent { j, m: self.m });
        }
        Ok(self.pow(x, (self.p as u64).pow(j)))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Felt) -> Result<u64, GfError> {
        if x.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let mut n = self.q as u64 - 1;
        for (l, _) in factorize(self.q as u64 - 1) {
            while n % l == 0 && self.pow(x, n / l) == Felt::ONE {
                n /= l;
            }
        }
        Ok(n)
    }

    /// An element of order exactly k, or None when k does not divide q - 1.
    pub fn root_of_unity(&self, k: u64) -> Option<Felt> {
        let n = self.q as u64 - 1;
        if k == 0 || n % k != 0 {
            return None;
        }
        Some(self.pow(self.omega, n / k))
    }

    /// A square root, when one exists.
    pub fn sqrt(&self, x: Felt) -> Option<Felt> {
        if x.0 == 0 {
            return Some(x);
        }
        let q = self.q as u64;
        if self.p == 2 {
            return Some(self.pow(x, q / 2));
        }
        if self.pow(x, (q - 1) / 2) != Felt::ONE {
            return None;
        }
        let mut s = 0;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let mut c = self.pow(self.omega, t);
        let mut r = self.pow(x, t.div_ceil(2));
        let mut u = self.pow(x, t);
        let mut k = s;
        while u != Felt::ONE {
            let mut i = 0;
            let mut z = u;
            while z != Felt::ONE {
                z = self.mul(z, z);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(k - i - 1) {
                b = self.mul(b, b);
            }
            r = self.mul(r, b);
            c = self.mul(b, b);
            u = self.mul(u, c);
            k = i;
        }
        Some(r)
    }

    /// Text form: an integer for m = 1, `[c0,c1,..]` otherwise.
    pub fn format(&self, x: Felt) -> String {
        if self.m == 1 {
            return x.0.to_string();
        }
        let parts: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn parse(&self, s: &str) -> Result<Felt, GfError> {
        let err = || GfError::Parse(s.to_string());
        let t = s.trim();
        if self.m == 1 {
            let v: u64 = t.parse().map_err(|_| err())?;
            if v >= self.p as u64 {
                return Err(err());
            }
            return Ok(Felt(v as u32));
        }
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let coeffs: Vec<u32> = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| err())?;
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(err());
        }
        Ok(Felt(self.encode(&coeffs)))
    }

    fn find_primitive(&self) -> Felt {
        if self.q == 2 {
            return Felt::ONE;
        }
        let n = self.q as u64 - 1;
        let primes: Vec<u64> = factorize(n).into_iter().map(|(l, _)| l).collect();
        (1..self.q)
            .map(Felt)
            .find(|&x| primes.iter().all(|&l| self.pow(x, n / l) != Felt::ONE))
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut x = Felt::ONE;
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, self.omega);
        }
        LogTables { exp, log }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.m)
        }
    }
}

/// A field element bound to its field; arithmetic checks that operands agree.
#[derive(Clone, Debug)]
pub struct Element {
    ctx: Arc<FieldCtx>,
    value: Felt,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.value == other.value
    }
}

impl Eq for Element {}

impl Element {
    pub fn new(ctx: &Arc<FieldCtx>, value: Felt) -> Self {
        Element {
            ctx: Arc::clone(ctx),
            value,
        }
    }

    pub fn value(&self) -> Felt {
        self.value
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    fn check(&self, other: &Element) -> Result<(), GfError> {
        if *self.ctx != *other.ctx {
            return Err(GfError::MismatchedField);
        }
        Ok(())
    }

    fn wrap(&self, value: Felt) -> Element {
        Element {
            ctx: Arc::clone(&self.ctx),
            value,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.ctx.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.ctx.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.ctx.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Element) -> Result<Element, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.ctx.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<Element, GfError> {
        Ok(self.wrap(self.ctx.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Element {
        self.wrap(self.ctx.pow(self.value, e))
    }

    pub fn frobenius(&self, j: u32) -> Result<Element, GfError> {
        Ok(self.wrap(self.ctx.frobenius(self.value, j)?))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.format(self.value))
    }
}

fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let total = (p as u64).pow(m);
    for e in 0..total {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut v = e;
        for _ in 0..m {
            f.push((v % p as u64) as u32);
            v /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree <= deg(f)/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    if f[0] == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        let mut g = vec![0u32; d + 1];
        g[d] = 1;
        for e in 0..count {
            let mut v = e;
            for c in g.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    let d = g.len() - 1;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    for top in (d..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            let idx = top - d + i;
            r[idx] = (r[idx] + (p - c) * g[i] as u64) % p;
        }
    }
    r[..d].iter().all(|&c| c % p == 0)
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all u64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Serializable field parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
}

impl FieldSpec {
    pub fn of(ctx: &FieldCtx) -> FieldSpec {
        FieldSpec {
            p: ctx.p() as u64,
            m: ctx.m(),
        }
    }

    pub fn build(&self) -> Result<Arc<FieldCtx>, GfError> {
        FieldCtx::new(self.p, self.m)
    }

    pub fn q(&self) -> u64 {
        self.p.saturating_pow(self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // brute-force multiplicative order by repeated multiplication
    fn naive_order(ctx: &FieldCtx, x: Felt) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != Felt::ONE {
            y = ctx.mul(y, x);
            n += 1;
        }
        n
    }

    #[test]
    fn prime_field_basics() {
        let f5 = field_new(5, 1).unwrap();
        assert_eq!(f5.omega(), Felt(2));
        assert_eq!(naive_order(&f5, f5.omega()), 4);
        assert_eq!(f5.inv(Felt(2)).unwrap(), Felt(3));
        assert_eq!(f5.frobenius(Felt(2), 1).unwrap(), Felt(2));
        assert_eq!(f5.pow(Felt(3), 0), Felt::ONE);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(field_new(4, 1).unwrap_err(), GfError::NonPrime(4));
        assert_eq!(field_new(5, 0).unwrap_err(), GfError::DegreeZero);
        assert!(matches!(field_new(2, 32), Err(GfError::Overflow { .. })));
        assert!(field_new(2, 31).is_ok());
    }

    #[test]
    fn f9_modulus_is_least_irreducible_quadratic() {
        // brute force: monic quadratics over F_3 without roots
        let candidates = (0..3u32).flat_map(|c1| (0..3u32).map(move |c0| (c1, c0)));
        let best = candidates
            .filter(|&(c1, c0)| (0..3u32).all(|r| (r * r + c1 * r + c0) % 3 != 0))
            .map(|(c1, c0)| vec![c0, c1, 1])
            .next();
        let f9 = field_new(3, 2).unwrap();
        assert_eq!(f9.modulus(), best.unwrap().as_slice());
        assert_eq!(naive_order(&f9, f9.omega()), 8);
        assert_eq!(f9.pow(f9.omega(), 8), Felt::ONE);
        assert_eq!(f9.frobenius(f9.omega(), 2).unwrap(), f9.omega());
    }

    #[test]
    fn small_binary_moduli() {
        assert_eq!(field_new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(field_new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn log_tables_match_polynomial_multiplication() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let ctx = field_new(p, m).unwrap();
            for a in ctx.elements() {
                for b in ctx.elements() {
                    assert_eq!(ctx.mul(a, b), ctx.mul_poly(a, b));
                }
            }
        }
    }

    #[test]
    fn large_extension_without_tables() {
        let ctx = field_new(2, 20).unwrap();
        assert!(ctx.tables.is_none());
        let x = ctx.omega();
        assert_eq!(ctx.pow(x, ctx.q() as u64 - 1), Felt::ONE);
        let y = ctx.inv(x).unwrap();
        assert_eq!(ctx.mul(x, y), Felt::ONE);
    }

    #[test]
    fn sqrt_round_trips() {
        for (p, m) in [(2, 3), (3, 2), (5, 1), (13, 1), (17, 1), (7, 2)] {
            let ctx = field_new(p, m).unwrap();
            for x in ctx.elements() {
                let sq = ctx.mul(x, x);
                let r = ctx.sqrt(sq).expect("square has a root");
                assert_eq!(ctx.mul(r, r), sq);
            }
        }
        let f7 = field_new(7, 1).unwrap();
        assert!(f7.sqrt(Felt(3)).is_none());
    }

    #[test]
    fn text_syntax_round_trip() {
        let f9 = field_new(3, 2).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.parse(&f9.format(x)).unwrap(), x);
        }
        assert_eq!(f9.format(f9.parse("[2,1]").unwrap()), "[2,1]");
        assert!(f9.parse("[1]").is_err());
        assert!(f9.parse("[3,0]").is_err());
        let f5 = field_new(5, 1).unwrap();
        assert!(f5.parse("5").is_err());
        assert_eq!(f5.parse(" 4 ").unwrap(), Felt(4));
    }

    #[test]
    fn bound_elements_check_fields() {
        let f5 = field_new(5, 1).unwrap();
        let f7 = field_new(7, 1).unwrap();
        let a = Element::new(&f5, Felt(2));
        let b = Element::new(&f7, Felt(2));
        assert_eq!(a.add(&b).unwrap_err(), GfError::MismatchedField);
        assert_eq!(a.inv().unwrap().value(), Felt(3));
        assert_eq!(
            Element::new(&f5, Felt::ZERO).inv().unwrap_err(),
            GfError::DivisionByZero
        );
        let f5b = field_new(5, 1).unwrap();
        assert_eq!(a.mul(&Element::new(&f5b, Felt(3))).unwrap().value(), Felt(1));
        assert_eq!(a.frobenius(2).unwrap_err(), GfError::BadExponent { j: 2, m: 1 });
    }

    #[test]
    fn primality() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime(n), naive(n), "{n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(factorize(120), vec![(2, 3), (3, 1), (5, 1)]);
    }
}
