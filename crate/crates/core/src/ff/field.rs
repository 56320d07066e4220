use std::fmt;
use std::sync::Arc;

use super::FfError;

/// Field element, encoded as the base-p integer of its coefficient vector
/// (constant term is the least significant digit). The prime subfield is
/// therefore `0..p`.
pub type Fe = u32;

const MAX_ORDER: u64 = 1 << 20;
const ADD_TABLE_MAX: u32 = 256;

/// GF(p^m) with a fixed modulus and log/antilog tables.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}
impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, f)` with `q = p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut f) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

// Dense polynomials over Z/p, low degree first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db] as u64, p as u64 - 2, p as u64) as u32;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn digits(mut x: u32, p: u32, m: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(m as usize);
    for _ in 0..m {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut f = digits(low as u32, p, m);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    pub fn new(p: u64, m: u32) -> Result<Arc<FieldCtx>, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        if m == 0 {
            return Err(FfError::ZeroDegree);
        }
        let order = (p as u128).pow(m);
        if order > MAX_ORDER as u128 {
            return Err(FfError::TooLarge { p, m });
        }
        let (p, order) = (p as u32, order as u32);
        let modulus = least_irreducible(p, m);
        let mut ctx = FieldCtx {
            p,
            m,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        ctx.build_tables();
        Ok(Arc::new(ctx))
    }

    pub fn prime(p: u64) -> Result<Arc<FieldCtx>, FfError> {
        Self::new(p, 1)
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let (p, m) = (self.p, self.m);
        let (da, db) = (digits(a, p, m), digits(b, p, m));
        let mut prod = vec![0u32; (2 * m) as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, p);
        r.resize(m as usize, 0);
        undigits(&r, p)
    }

    fn build_tables(&mut self) {
        let n = self.order - 1;
        let factors = prime_factors(n as u64);
        let pow_slow = |ctx: &FieldCtx, a: Fe, mut e: u64| {
            let (mut acc, mut b) = (1, a);
            while e > 0 {
                if e & 1 == 1 {
                    acc = ctx.mul_slow(acc, b);
                }
                b = ctx.mul_slow(b, b);
                e >>= 1;
            }
            acc
        };
        let gen = (1..self.order)
            .find(|&g| factors.iter().all(|&r| pow_slow(self, g, n as u64 / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = k as u32;
            x = self.mul_slow(x, gen);
        }
        self.exp = exp;
        self.log = log;
        if self.m > 1 && self.order <= ADD_TABLE_MAX {
            let q = self.order;
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = Some(t);
        }
    }

    fn add_digits(&self, mut a: Fe, mut b: Fe) -> Fe {
        let (p, mut place, mut out) = (self.p, 1, 0);
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }
    /// Modulus coefficients, low degree first (monic, length m+1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.m == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let (p, mut x, mut place, mut out) = (self.p, a, 1, 0);
            for _ in 0..self.m {
                out += ((p - x % p) % p) * place;
                x /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let n = self.order - 1;
        let k = self.log[a as usize] + self.log[b as usize];
        self.exp[(if k >= n { k - n } else { k }) as usize]
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        let n = self.order - 1;
        let k = self.log[a as usize];
        Some(self.exp[((n - k) % n) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` for any integer exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.order - 1) as i64;
        let k = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[k as usize]
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as i64)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, x: i64) -> Fe {
        x.rem_euclid(self.p as i64) as Fe
    }

    pub fn one(&self) -> Fe {
        1
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive(&self) -> Fe {
        self.exp[1 % self.exp.len()]
    }

    /// Discrete log with respect to [`FieldCtx::primitive`].
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a, self.p, self.m)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe, FfError> {
        if c.len() > self.m as usize || c.iter().any(|&x| x >= self.p) {
            return Err(FfError::BadElement(format!("{c:?}")));
        }
        Ok(undigits(c, self.p))
    }

    pub fn contains(&self, a: Fe) -> bool {
        a < self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.order
    }

    pub fn units(&self) -> impl Iterator<Item = Fe> {
        1..self.order
    }

    /// Whether every (n)-th root of unity of the algebraic closure lies here.
    pub fn has_roots_of_unity(&self, n: u64) -> bool {
        (self.order as u64 - 1) % n == 0
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        if self.m == 1 {
            a.to_string()
        } else {
            let c = self.coeffs(a);
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}
