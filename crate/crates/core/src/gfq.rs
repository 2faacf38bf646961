//! Exact arithmetic in GF(p^f) and in its quadratic extension GF(p^2f).
//!
//! A [`FieldElem`] is a packed coefficient vector: the element
//! `c_0 + c_1 x + ... + c_{f-1} x^{f-1}` is stored as the base-`p` integer
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`, so elements are plain `Copy` values
//! and the integer order is the field enumeration order used everywhere else.
//! Elements carry no reference to their field; every operation goes through
//! the owning [`FieldCtx`].
//!
//! The defining polynomial of GF(p^f) is the monic irreducible polynomial of
//! degree `f` whose low-order coefficient tuple, read as a base-`p` integer, is
//! smallest. Multiplication uses discrete log tables built once per context.

use crate::error::{Error, Result};

/// Largest field order a [`FieldCtx`] will build.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^f`, or returns `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Position in the field enumeration order (the packed coefficients).
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    f: u32,
    q: u32,
    /// `c_0..c_{f-1}` of the monic modulus; the leading `x^f` is implicit.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive `g`, stored twice over for
    /// reduction-free lookups.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(p: u32, f: u32) -> Result<Self> {
        if f == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p.checked_pow(f).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge { p, f })?;
        let modulus = if f == 1 { vec![0] } else { minimal_irreducible(p, f) };
        let mut ctx = FieldCtx { p, f, q, modulus, exp: Vec::new(), log: Vec::new() };
        ctx.build_log_tables();
        Ok(ctx)
    }

    /// Builds GF(q) from its order.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, f)
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let generator = (1..self.q)
            .find(|&g| {
                let mut acc = g;
                let mut order = 1usize;
                while acc != 1 {
                    acc = self.slow_mul(acc, g);
                    order += 1;
                }
                order == n
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            exp[i + n] = acc;
            log[acc as usize] = i as u32;
            acc = self.slow_mul(acc, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    /// Schoolbook product modulo the defining polynomial.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let f = self.f as usize;
        let a = self.digits(a);
        let b = self.digits(b);
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (f..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^f = -(c_0 + ... + c_{f-1} x^{f-1})
            for (k, &m) in self.modulus.iter().enumerate() {
                let slot = deg - f + k;
                prod[slot] = (prod[slot] + (p - m as u64) * c) % p;
            }
        }
        prod.truncate(f);
        self.pack(prod.iter().map(|&c| c as u32))
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.f)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, digits: impl DoubleEndedIterator<Item = u32>) -> u32 {
        digits.rev().fold(0, |acc, d| acc * self.p + d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Low-order coefficients `c_0..c_{f-1}` of the monic defining polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        x.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    pub fn from_index(&self, index: u32) -> Result<FieldElem> {
        if index < self.q {
            Ok(FieldElem(index))
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() != self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::ContextMismatch);
        }
        Ok(FieldElem(self.pack(coeffs.iter().copied())))
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        self.digits(x.0)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.f == 1 {
            let s = a.0 + b.0;
            FieldElem(if s >= self.p { s - self.p } else { s })
        } else if self.p == 2 {
            FieldElem(a.0 ^ b.0)
        } else {
            let (mut x, mut y) = (a.0, b.0);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.f {
                out += ((x % self.p + y % self.p) % self.p) * place;
                x /= self.p;
                y /= self.p;
                place *= self.p;
            }
            FieldElem(out)
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.f == 1 {
            FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else if self.p == 2 {
            a
        } else {
            let mut x = a.0;
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.f {
                out += ((self.p - x % self.p) % self.p) * place;
                x /= self.p;
                place *= self.p;
            }
            FieldElem(out)
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(FieldElem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`; negative exponents go through the inverse.
    pub fn pow(&self, a: FieldElem, n: i64) -> Result<FieldElem> {
        if a.0 == 0 {
            return match n {
                0 => Ok(FieldElem::ONE),
                n if n > 0 => Ok(FieldElem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let order = (self.q - 1) as i128;
        let e = (self.log[a.0 as usize] as i128 * n as i128).rem_euclid(order);
        Ok(FieldElem(self.exp[e as usize]))
    }

    /// The field automorphism `x -> x^(p^k)`, with `k` taken modulo `f`.
    pub fn frobenius(&self, a: FieldElem, k: i64) -> FieldElem {
        let k = k.rem_euclid(self.f as i64) as u32;
        if k == 0 || a.0 == 0 {
            return a;
        }
        let order = (self.q - 1) as u64;
        let shift = (self.p as u64).pow(k) % order;
        let e = (self.log[a.0 as usize] as u64 * shift) % order;
        FieldElem(self.exp[e as usize])
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        self.p == 2 || a.0 == 0 || self.log[a.0 as usize].is_multiple_of(2)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElem) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(n / gcd(self.log[a.0 as usize], n))
    }

    /// Absolute trace to the prime field.
    pub fn trace(&self, a: FieldElem) -> FieldElem {
        (0..self.f as i64).fold(FieldElem::ZERO, |acc, k| self.add(acc, self.frobenius(a, k)))
    }

    /// Human-readable polynomial form, e.g. `x^2+2` (prime fields print integers).
    pub fn format(&self, a: FieldElem) -> String {
        if self.f == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(deg, &c)| match (deg, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (d, 1) => format!("x^{d}"),
                (d, c) => format!("{c}x^{d}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Polynomials over Z_p, low-degree coefficient first, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn poly_rem(mut a: Poly, b: &Poly, p: u64) -> Poly {
    let lead_inv = mod_inv(*b.last().expect("nonzero divisor"), p);
    while a.len() >= b.len() {
        let c = a.last().unwrap() * lead_inv % p;
        let shift = a.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * bc % p) % p;
        }
        a = trim(a);
    }
    a
}

fn poly_mulmod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(trim(prod), m, p)
}

fn poly_gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: a monic `g` of degree `n` is irreducible iff
/// `gcd(g, x^(p^i) - x) = 1` for every `1 <= i <= n/2`.
fn is_irreducible(g: &Poly, p: u64) -> bool {
    let n = g.len() - 1;
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..n / 2 {
        let mut acc: Poly = vec![1];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, g, p);
            }
            base = poly_mulmod(&base, &base, g, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if poly_gcd(g.clone(), trim(diff), p).len() != 1 {
            return false;
        }
    }
    true
}

fn minimal_irreducible(p: u32, f: u32) -> Vec<u32> {
    let count = p.pow(f);
    (0..count)
        .map(|v| {
            let mut x = v;
            (0..f)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect::<Vec<u32>>()
        })
        .find(|coeffs| {
            if coeffs[0] == 0 {
                return false;
            }
            let mut g: Poly = coeffs.iter().map(|&c| c as u64).collect();
            g.push(1);
            is_irreducible(&g, p as u64)
        })
        .expect("irreducible polynomials exist in every degree")
}

/// How GF(q^2) is presented over GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadKind {
    /// `t^2 = s` with `s` a nonsquare (odd characteristic).
    Odd,
    /// `t^2 + t = s` with `s` of absolute trace 1 (characteristic 2).
    Even,
}

/// The element `u + v t` of GF(q^2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadElem {
    pub u: FieldElem,
    pub v: FieldElem,
}

impl QuadElem {
    pub const ZERO: QuadElem = QuadElem { u: FieldElem::ZERO, v: FieldElem::ZERO };
    pub const ONE: QuadElem = QuadElem { u: FieldElem::ONE, v: FieldElem::ZERO };

    pub fn from_base(u: FieldElem) -> Self {
        QuadElem { u, v: FieldElem::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct QuadExtCtx {
    base: FieldCtx,
    kind: QuadKind,
    s: FieldElem,
}

impl QuadExtCtx {
    pub fn new(base: FieldCtx) -> Self {
        let (kind, s) = if base.p() == 2 {
            let one = FieldElem::ONE;
            let s = base.elements().find(|&x| base.trace(x) == one).expect("trace is onto the prime field");
            (QuadKind::Even, s)
        } else {
            let s = base.elements().find(|&x| !base.is_square(x)).expect("odd fields have nonsquares");
            (QuadKind::Odd, s)
        };
        QuadExtCtx { base, kind, s }
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn kind(&self) -> QuadKind {
        self.kind
    }

    pub fn s(&self) -> FieldElem {
        self.s
    }

    /// The adjoined root `t`.
    pub fn t(&self) -> QuadElem {
        QuadElem { u: FieldElem::ZERO, v: FieldElem::ONE }
    }

    /// All elements, ordered by `u + q v`.
    pub fn elements(&self) -> impl Iterator<Item = QuadElem> + '_ {
        self.base.elements().flat_map(move |v| self.base.elements().map(move |u| QuadElem { u, v }))
    }

    pub fn add(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        let f = &self.base;
        QuadElem { u: f.add(a.u, b.u), v: f.add(a.v, b.v) }
    }

    pub fn neg(&self, a: QuadElem) -> QuadElem {
        QuadElem { u: self.base.neg(a.u), v: self.base.neg(a.v) }
    }

    pub fn sub(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        let f = &self.base;
        let uu = f.mul(a.u, b.u);
        let vv = f.mul(a.v, b.v);
        let cross = f.add(f.mul(a.u, b.v), f.mul(a.v, b.u));
        match self.kind {
            QuadKind::Odd => QuadElem { u: f.add(uu, f.mul(vv, self.s)), v: cross },
            // t^2 = t + s in characteristic 2
            QuadKind::Even => QuadElem { u: f.add(uu, f.mul(vv, self.s)), v: f.add(cross, vv) },
        }
    }

    /// `a^q`, the nontrivial automorphism over GF(q).
    pub fn conj(&self, a: QuadElem) -> QuadElem {
        match self.kind {
            QuadKind::Odd => QuadElem { u: a.u, v: self.base.neg(a.v) },
            QuadKind::Even => QuadElem { u: self.base.add(a.u, a.v), v: a.v },
        }
    }

    /// `a^(q+1) = a * conj(a)`, which lies in GF(q).
    pub fn norm(&self, a: QuadElem) -> FieldElem {
        let n = self.mul(a, self.conj(a));
        debug_assert!(n.v.is_zero());
        n.u
    }

    pub fn inv(&self, a: QuadElem) -> Result<QuadElem> {
        let n_inv = self.base.inv(self.norm(a))?;
        let c = self.conj(a);
        Ok(QuadElem { u: self.base.mul(c.u, n_inv), v: self.base.mul(c.v, n_inv) })
    }

    pub fn pow(&self, a: QuadElem, n: u64) -> QuadElem {
        let mut acc = QuadElem::ONE;
        let mut base = a;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn format(&self, a: QuadElem) -> String {
        format!("({})+({})t", self.base.format(a.u), self.base.format(a.v))
    }
}
