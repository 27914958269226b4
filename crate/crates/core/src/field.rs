//! Exact arithmetic in GF(p^s), its automorphism group, subfield embeddings,
//! and the twisted norms N_i^sigma used by remainder evaluation.
//!
//! Elements are stored in the polynomial basis over Z_p, packed into a single
//! index `idx = c_0 + c_1 p + ... + c_{s-1} p^{s-1}`. Multiplication goes
//! through exp/log tables built once at field construction, which caps the
//! supported size at `q <= 2^20`.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

/// Hard size cap for table-backed fields.
pub const FIELD_SIZE_CAP: u64 = 1 << 20;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

/// An element of a [`FiniteField`], tagged with the id of its field.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: u32,
    idx: u32,
}

impl FieldElement {
    /// Packed polynomial-basis index of the element.
    pub fn index(&self) -> u32 {
        self.idx
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}#{}", self.idx, self.field)
    }
}

/// Explicit finite field GF(p^s) with a designated primitive element.
pub struct FiniteField {
    id: u32,
    p: u64,
    s: u32,
    q: u64,
    /// Monic irreducible modulus, ascending coefficients, length s+1.
    modulus: Vec<u64>,
    primitive: u32,
    /// exp[i] = index of primitive^i, for 0 <= i < q-1.
    exp: Vec<u32>,
    /// log[idx] for idx != 0; log[0] is a sentinel.
    log: Vec<u32>,
}

const LOG_ZERO: u32 = u32::MAX;

// ---------------------------------------------------------------------------
// Z_p[x] helpers used only during construction (no tables available yet).
// ---------------------------------------------------------------------------

fn zp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn zp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    zp_trim(&mut out);
    out
}

fn zp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    zp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm], p);
    while r.len() > dm {
        let c = (r[r.len() - 1] * lead_inv) % p;
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            let idx = shift + j;
            let sub = (c * mj) % p;
            r[idx] = (r[idx] + p - sub) % p;
        }
        zp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn zp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    zp_trim(&mut a);
    zp_trim(&mut b);
    while !b.is_empty() {
        let r = zp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
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

fn is_prime(n: u64) -> bool {
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

/// Prime factorization by trial division; returns distinct primes.
fn prime_divisors(mut n: u64) -> Vec<u64> {
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

fn zp_is_irreducible(f: &[u64], p: u64) -> bool {
    let s = (f.len() - 1) as u32;
    if s == 0 {
        return false;
    }
    if s == 1 {
        return true;
    }
    // cheap screens: a root in Z_p is a linear factor
    for c in 0..p {
        let mut acc = 0u64;
        for &coef in f.iter().rev() {
            acc = (acc * c + coef) % p;
        }
        if acc == 0 {
            return false;
        }
    }
    // f is irreducible of degree s iff x^(p^s) == x (mod f) and
    // gcd(x^(p^(s/t)) - x, f) = 1 for every prime t | s.
    let xps = zp_frobenius_of_x_impl(s, f, p);
    let mut x = vec![0, 1];
    x = zp_rem(&x, f, p);
    if xps != x {
        return false;
    }
    for t in prime_divisors(s as u64) {
        let k = s / t as u32;
        let mut g = zp_frobenius_of_x_impl(k, f, p);
        // g - x
        while g.len() < x.len() {
            g.push(0);
        }
        for (i, &xi) in x.iter().enumerate() {
            g[i] = (g[i] + p - xi) % p;
        }
        zp_trim(&mut g);
        let d = zp_gcd(f, &g, p);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

fn zp_pow_mod_impl(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = zp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = zp_rem(&zp_mul(&acc, &b, p), m, p);
        }
        b = zp_rem(&zp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn zp_frobenius_of_x_impl(k: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut cur = zp_rem(&[0, 1], m, p);
    for _ in 0..k {
        cur = zp_pow_mod_impl(&cur, p, m, p);
    }
    cur
}

// ---------------------------------------------------------------------------
// FiniteField
// ---------------------------------------------------------------------------

impl FiniteField {
    /// Build GF(p^s). When `modulus` is omitted the lexicographically smallest
    /// monic irreducible (ascending-coefficient order) is chosen.
    pub fn new(p: u64, s: u32, modulus: Option<&[u64]>) -> Result<Arc<FiniteField>> {
        Self::with_cap(p, s, modulus, FIELD_SIZE_CAP)
    }

    pub fn with_cap(p: u64, s: u32, modulus: Option<&[u64]>, cap: u64) -> Result<Arc<FiniteField>> {
        if !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        if s == 0 {
            return Err(Error::InvalidModulus("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..s {
            q = q.checked_mul(p).ok_or_else(|| Error::CapExceeded(format!("p^s overflows: p={p} s={s}")))?;
            if q > cap.min(FIELD_SIZE_CAP) {
                return Err(Error::CapExceeded(format!(
                    "field size p^s = {p}^{s} exceeds cap {}",
                    cap.min(FIELD_SIZE_CAP)
                )));
            }
        }
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if m.len() != (s as usize) + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic degree-{s} coefficient sequence of length {}",
                        s + 1
                    )));
                }
                zp_trim(&mut m);
                if m.len() != (s as usize) + 1 {
                    return Err(Error::InvalidModulus("leading coefficient vanished".into()));
                }
                if !zp_is_irreducible(&m, p) {
                    return Err(Error::InvalidModulus(format!(
                        "polynomial is reducible over Z_{p}"
                    )));
                }
                m
            }
            None => Self::smallest_irreducible(p, s),
        };

        let mut field = FiniteField {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            p,
            s,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.find_primitive_and_tables();
        Ok(Arc::new(field))
    }

    fn smallest_irreducible(p: u64, s: u32) -> Vec<u64> {
        // Scan low coefficient vectors (c_0, ..., c_{s-1}) in lexicographic
        // order with c_0 most significant.
        let mut coeffs = vec![0u64; s as usize];
        loop {
            let mut cand: Vec<u64> = coeffs.clone();
            cand.push(1);
            if zp_is_irreducible(&cand, p) {
                return cand;
            }
            // increment with c_{s-1} fastest
            let mut i = s as usize;
            loop {
                if i == 0 {
                    unreachable!("an irreducible of every degree exists over Z_p");
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    fn idx_to_poly(&self, idx: u32) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.s as usize);
        let mut rest = idx as u64;
        for _ in 0..self.s {
            v.push(rest % self.p);
            rest /= self.p;
        }
        zp_trim(&mut v);
        v
    }

    fn poly_to_idx(&self, poly: &[u64]) -> u32 {
        let mut idx = 0u64;
        for &c in poly.iter().rev() {
            idx = idx * self.p + (c % self.p);
        }
        idx as u32
    }

    fn find_primitive_and_tables(&mut self) {
        let q1 = self.q - 1;
        let primes = prime_divisors(q1);
        let mut primitive = 0u32;
        'outer: for idx in 1..self.q as u32 {
            let cand = self.idx_to_poly(idx);
            for &ell in &primes {
                let pw = zp_pow_mod_impl(&cand, q1 / ell, &self.modulus, self.p);
                if pw == vec![1] {
                    continue 'outer;
                }
            }
            primitive = idx;
            break;
        }
        debug_assert!(primitive != 0 || self.q == 2 || q1 == 0);
        if primitive == 0 {
            primitive = 1; // GF(2): 1 generates the trivial group
        }
        self.primitive = primitive;

        let mut exp = vec![0u32; q1.max(1) as usize];
        let mut log = vec![LOG_ZERO; self.q as usize];
        if self.p == 2 {
            // bit-packed fast path
            let m_mask: u64 = self
                .modulus
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc | ((c & 1) << i));
            let low_mask = m_mask & !(1 << self.s); // modulus without leading term
            let xi = primitive as u64;
            let mut cur: u64 = 1;
            for i in 0..q1.max(1) {
                exp[i as usize] = cur as u32;
                log[cur as usize] = i as u32;
                // cur *= xi (carry-less), reduce by modulus
                let mut acc: u64 = 0;
                let mut a = cur;
                let mut b = xi;
                while b != 0 {
                    if b & 1 == 1 {
                        acc ^= a;
                    }
                    a <<= 1;
                    b >>= 1;
                }
                let mut bit = 63 - acc.leading_zeros() as i64;
                while acc != 0 && bit >= self.s as i64 {
                    acc ^= low_mask << (bit - self.s as i64);
                    acc ^= 1u64 << bit;
                    if acc == 0 {
                        break;
                    }
                    bit = 63 - acc.leading_zeros() as i64;
                }
                cur = acc;
            }
        } else {
            let xi = self.idx_to_poly(primitive);
            let mut cur = vec![1u64];
            for i in 0..q1.max(1) {
                let idx = self.poly_to_idx(&cur);
                exp[i as usize] = idx;
                log[idx as usize] = i as u32;
                cur = zp_rem(&zp_mul(&cur, &xi, self.p), &self.modulus, self.p);
            }
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    #[track_caller]
    fn check(&self, a: FieldElement) {
        assert_eq!(a.field, self.id, "field mismatch: element #{} used in field #{}", a.field, self.id);
    }

    fn wrap(&self, idx: u32) -> FieldElement {
        FieldElement { field: self.id, idx }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The designated multiplicative generator.
    pub fn generator(&self) -> FieldElement {
        self.wrap(self.primitive)
    }

    /// Element from ascending Z_p coordinates (length <= s).
    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        assert!(coords.len() <= self.s as usize, "too many coordinates");
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            idx = idx * self.p + (c % self.p);
        }
        self.wrap(idx as u32)
    }

    /// Ascending Z_p coordinates of `a` in the polynomial basis, length s.
    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        self.check(a);
        let mut v = Vec::with_capacity(self.s as usize);
        let mut rest = a.idx as u64;
        for _ in 0..self.s {
            v.push(rest % self.p);
            rest /= self.p;
        }
        v
    }

    pub fn from_index(&self, idx: u64) -> FieldElement {
        assert!(idx < self.q, "index out of range");
        self.wrap(idx as u32)
    }

    /// g^k for the designated generator g.
    pub fn generator_pow(&self, k: u64) -> FieldElement {
        if self.q == 2 {
            return self.one();
        }
        self.wrap(self.exp[(k % (self.q - 1)) as usize])
    }

    /// Discrete log with respect to the designated generator; None for zero.
    pub fn dlog(&self, a: FieldElement) -> Option<u64> {
        self.check(a);
        if a.idx == 0 {
            None
        } else {
            Some(self.log[a.idx as usize] as u64)
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if self.p == 2 {
            return self.wrap(a.idx ^ b.idx);
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let (mut x, mut y) = (a.idx as u64, b.idx as u64);
        for _ in 0..self.s {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * mult;
            mult *= self.p;
            x /= self.p;
            y /= self.p;
        }
        self.wrap(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        if self.p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let mut x = a.idx as u64;
        for _ in 0..self.s {
            let d = (self.p - x % self.p) % self.p;
            out += d * mult;
            mult *= self.p;
            x /= self.p;
        }
        self.wrap(out as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.idx == 0 || b.idx == 0 {
            return self.zero();
        }
        let la = self.log[a.idx as usize] as u64;
        let lb = self.log[b.idx as usize] as u64;
        self.wrap(self.exp[((la + lb) % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.idx == 0 {
            return Err(Error::DivisionByZero);
        }
        let la = self.log[a.idx as usize] as u64;
        let q1 = self.q - 1;
        Ok(self.wrap(self.exp[((q1 - la) % q1) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with e possibly negative (errors on 0^e for e < 0).
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        self.check(a);
        if a.idx == 0 {
            return if e > 0 {
                Ok(self.zero())
            } else if e == 0 {
                Ok(self.one())
            } else {
                Err(Error::DivisionByZero)
            };
        }
        let q1 = (self.q - 1) as i64;
        let la = self.log[a.idx as usize] as i64;
        let ex = (la as i128 * e as i128).rem_euclid(q1 as i128) as u64;
        Ok(self.wrap(self.exp[ex as usize]))
    }

    /// Frobenius power: a^(p^k).
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        self.check(a);
        if a.idx == 0 {
            return a;
        }
        let q1 = self.q - 1;
        let mut factor = 1u64;
        for _ in 0..(k % self.frob_order()) {
            factor = factor * self.p % q1;
        }
        let la = self.log[a.idx as usize] as u64;
        self.wrap(self.exp[(la as u128 * factor as u128 % q1 as u128) as usize])
    }

    fn frob_order(&self) -> u32 {
        self.s
    }

    /// Nonzero elements in ascending discrete-log order.
    pub fn elements_by_log(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..(self.q - 1)).map(move |k| self.wrap(self.exp[k as usize]))
    }

    /// All q elements: zero first, then ascending index.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.wrap(i as u32))
    }

    // -- text forms ---------------------------------------------------------

    /// Canonical literal: `0`, `1`, `g`, or `g^k`.
    pub fn format_element(&self, a: FieldElement) -> String {
        self.check(a);
        match self.dlog(a) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "g".into(),
            Some(k) => format!("g^{k}"),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        match t {
            "0" => Ok(self.zero()),
            "1" => Ok(self.one()),
            "g" => Ok(self.generator()),
            _ => {
                let rest = t
                    .strip_prefix("g^")
                    .ok_or_else(|| Error::Parse(format!("bad element literal: {t:?}")))?;
                let k: u64 = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in element literal: {t:?}")))?;
                Ok(self.generator_pow(k))
            }
        }
    }

    /// Parse a field spec string: `p^s` plus optional `mod=<c0,c1,...,cs>`.
    pub fn parse_spec(spec: &str) -> Result<Arc<FiniteField>> {
        Self::parse_spec_with_cap(spec, FIELD_SIZE_CAP)
    }

    pub fn parse_spec_with_cap(spec: &str, cap: u64) -> Result<Arc<FiniteField>> {
        let mut parts = spec.split_whitespace();
        let head = parts.next().ok_or_else(|| Error::Parse("empty field spec".into()))?;
        let (p_str, s_str) = head
            .split_once('^')
            .ok_or_else(|| Error::Parse(format!("field spec must look like p^s, got {head:?}")))?;
        let p: u64 = p_str.parse().map_err(|_| Error::Parse(format!("bad characteristic {p_str:?}")))?;
        let s: u32 = s_str.parse().map_err(|_| Error::Parse(format!("bad degree {s_str:?}")))?;
        let mut modulus: Option<Vec<u64>> = None;
        for tok in parts {
            if let Some(list) = tok.strip_prefix("mod=") {
                let coeffs: Result<Vec<u64>> = list
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad modulus coefficient {c:?}"))))
                    .collect();
                modulus = Some(coeffs?);
            } else {
                return Err(Error::Parse(format!("unexpected token in field spec: {tok:?}")));
            }
        }
        FiniteField::with_cap(p, s, modulus.as_deref(), cap)
    }

    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{} mod={}", self.p, self.s, coeffs.join(","))
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})#{}", self.p, self.s, self.id)
    }
}

// ---------------------------------------------------------------------------
// FieldAutomorphism
// ---------------------------------------------------------------------------

/// The automorphism sigma(a) = a^(p^r) of a fixed field, together with its
/// order mu and fixed-subfield size q0.
#[derive(Clone)]
pub struct FieldAutomorphism {
    field: Arc<FiniteField>,
    r: u32,
    mu: u32,
    q0: u64,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

impl FieldAutomorphism {
    pub fn new(field: Arc<FiniteField>, r: u32) -> Result<FieldAutomorphism> {
        if r >= field.s {
            return Err(Error::InvalidArgument(format!(
                "Frobenius power r={} must satisfy 0 <= r < s={}",
                r, field.s
            )));
        }
        let g = gcd_u64(r as u64, field.s as u64) as u32;
        let g = if r == 0 { field.s } else { g };
        let mu = field.s / g;
        let q0 = {
            let mut v = 1u64;
            for _ in 0..g {
                v *= field.p;
            }
            v
        };
        Ok(FieldAutomorphism { field, r, mu, q0 })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn frobenius_power(&self) -> u32 {
        self.r
    }

    /// Order mu = s / gcd(r, s) of sigma.
    pub fn order(&self) -> u32 {
        self.mu
    }

    /// Size q0 = p^gcd(r, s) of the fixed subfield.
    pub fn fixed_size(&self) -> u64 {
        self.q0
    }

    pub fn is_identity(&self) -> bool {
        self.mu == 1
    }

    /// sigma^power(a), negative powers reduced modulo the order.
    pub fn apply(&self, a: FieldElement, power: i64) -> FieldElement {
        let mu = self.mu as i64;
        let k = power.rem_euclid(mu) as u32;
        let total = (self.r as u64 * k as u64) % self.field.s as u64;
        self.field.frobenius(a, total as u32)
    }

    /// Checked variant mapping a wrong-field element to `FieldMismatch`.
    pub fn try_apply(&self, a: FieldElement, power: i64) -> Result<FieldElement> {
        if a.field != self.field.id {
            return Err(Error::FieldMismatch);
        }
        Ok(self.apply(a, power))
    }

    /// The twisted norm N_i^sigma(a) = sigma^{i-1}(a)...sigma(a)a. Negative i
    /// is defined through N_i(a) sigma^i(N_{-i}(a)) = 1. For nonzero a the
    /// product form is cross-checked against a^{[i]_r}.
    pub fn norm(&self, a: FieldElement, i: i64) -> Result<FieldElement> {
        self.field.check(a);
        if i == 0 {
            return Ok(self.field.one());
        }
        if i < 0 {
            if a.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let pos = self.norm(a, -i)?;
            let inv = self.field.inv(pos)?;
            return Ok(self.apply(inv, i));
        }
        let f = &self.field;
        let mut acc = f.one();
        for j in 0..i {
            acc = f.mul(self.apply(a, j), acc);
        }
        if !a.is_zero() {
            // exponent form: a^{[i]_r} with [i]_r = sum_{j<i} p^{rj} taken mod q-1
            let q1 = f.q - 1;
            let bracket = bracket_mod(f.p, self.r, i as u64, q1);
            let la = f.log[a.idx as usize] as u128;
            let expo = (la * bracket as u128 % q1 as u128) as u64;
            let check = f.wrap(f.exp[expo as usize]);
            assert_eq!(acc, check, "norm product/exponent forms disagree");
        }
        Ok(acc)
    }

    /// Embedding of the fixed subfield GF(p^gcd(r,s)).
    pub fn fixed_subfield(&self) -> Result<SubfieldEmbedding> {
        let t = if self.r == 0 {
            self.field.s
        } else {
            gcd_u64(self.r as u64, self.field.s as u64) as u32
        };
        SubfieldEmbedding::new(self.field.clone(), t, None)
    }
}

/// [i]_r = (p^{ri} - 1)/(p^r - 1) reduced mod m, via the geometric sum.
fn bracket_mod(p: u64, r: u32, i: u64, m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let pr = mod_pow(p, r as u64, m);
    let mut acc = 0u64;
    let mut term = 1 % m;
    for _ in 0..i {
        acc = (acc + term) % m;
        term = term * pr % m;
    }
    acc
}

/// [i]_r mod m, exposed for the equivalence-class count formulas.
pub(crate) fn bracket_int_mod(p: u64, r: u32, i: u64, m: u64) -> u64 {
    bracket_mod(p, r, i, m)
}

impl fmt::Debug for FieldAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma=tau^{} on {:?}", self.r, self.field)
    }
}

// ---------------------------------------------------------------------------
// SubfieldEmbedding
// ---------------------------------------------------------------------------

/// GF(p^t) embedded in GF(p^s) (t | s), with an ordered basis of the
/// super-field over the sub-field and precomputed decomposition tables.
pub struct SubfieldEmbedding {
    sup: Arc<FiniteField>,
    sub: Arc<FiniteField>,
    /// image of each sub-field element, indexed by sub idx
    sub_to_sup: Vec<u32>,
    /// preimage per sup idx; u32::MAX when outside the image
    sup_to_sub: Vec<u32>,
    /// basis of sup over sub: 1, xbar, ..., xbar^(s/t - 1)
    basis: Vec<FieldElement>,
    /// inverse of the Z_p change-of-coordinates matrix, row-major s x s
    decomp: Vec<Vec<u64>>,
}

impl SubfieldEmbedding {
    /// Embed GF(p^t) into `sup`. The image of the sub-field generator is the
    /// root of the sub-field modulus with the smallest discrete log, unless
    /// `root_index` selects another of the t conjugate roots.
    pub fn new(sup: Arc<FiniteField>, t: u32, root_index: Option<usize>) -> Result<SubfieldEmbedding> {
        let s = sup.s;
        if t == 0 || !s.is_multiple_of(t) {
            return Err(Error::InvalidArgument(format!("subfield degree {t} must divide {s}")));
        }
        let sub = FiniteField::new(sup.p, t, None)?;
        // image y of the sub-field generator xbar: a root of sub.modulus in sup
        let y = if t == 1 {
            sup.zero()
        } else {
            let mut roots: Vec<FieldElement> = Vec::new();
            for a in sup.elements_by_log() {
                if eval_zp_poly(&sup, &sub.modulus, a).is_zero() {
                    roots.push(a);
                }
            }
            // zero cannot be a root: modulus irreducible of degree >= 2
            if roots.len() != t as usize {
                return Err(Error::Internal(format!(
                    "expected {t} conjugate roots, found {}",
                    roots.len()
                )));
            }
            roots[root_index.unwrap_or(0) % roots.len()]
        };

        let k = (s / t) as usize;
        let xbar = if s == 1 { sup.one() } else { sup.from_index(sup.p) };
        let mut basis = Vec::with_capacity(k);
        let mut b = sup.one();
        for _ in 0..k {
            basis.push(b);
            b = sup.mul(b, xbar);
        }

        // columns of the Z_p matrix: coords of y^d * basis_j for j < k, d < t
        let n = s as usize;
        let mut mat = vec![vec![0u64; n]; n]; // rows = sup coords, cols = (j, d)
        let mut ypow = Vec::with_capacity(t as usize);
        let mut yp = sup.one();
        for _ in 0..t {
            ypow.push(yp);
            yp = sup.mul(yp, y);
        }
        for j in 0..k {
            for d in 0..t as usize {
                let col = j * t as usize + d;
                let v = sup.mul(ypow[d], basis[j]);
                let coords = sup.coords(v);
                for row in 0..n {
                    mat[row][col] = coords[row];
                }
            }
        }
        let decomp = invert_zp_matrix(&mat, sup.p)
            .ok_or_else(|| Error::Internal("embedding change of basis is singular".into()))?;

        // tables
        let mut sub_to_sup = vec![0u32; sub.q as usize];
        let mut sup_to_sub = vec![u32::MAX; sup.q as usize];
        for bidx in 0..sub.q as u32 {
            let coords = sub.coords(sub.from_index(bidx as u64));
            let mut acc = sup.zero();
            for (d, &c) in coords.iter().enumerate() {
                if c != 0 {
                    let cf = sup.from_coords(&[c]);
                    acc = sup.add(acc, sup.mul(cf, ypow[d]));
                }
            }
            sub_to_sup[bidx as usize] = acc.idx;
            sup_to_sub[acc.idx as usize] = bidx;
        }

        Ok(SubfieldEmbedding { sup, sub, sub_to_sup, sup_to_sub, basis, decomp })
    }

    pub fn superfield(&self) -> &Arc<FiniteField> {
        &self.sup
    }

    pub fn subfield(&self) -> &Arc<FiniteField> {
        &self.sub
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn to_sup(&self, b: FieldElement) -> FieldElement {
        self.sub.check(b);
        FieldElement { field: self.sup.id, idx: self.sub_to_sup[b.idx as usize] }
    }

    pub fn to_sub(&self, a: FieldElement) -> Option<FieldElement> {
        self.sup.check(a);
        let idx = self.sup_to_sub[a.idx as usize];
        if idx == u32::MAX {
            None
        } else {
            Some(FieldElement { field: self.sub.id, idx })
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        self.to_sub(a).is_some()
    }

    /// Coordinates of `a` over the basis, as sub-field elements.
    pub fn decompose(&self, a: FieldElement) -> Vec<FieldElement> {
        let coords = self.sup.coords(a);
        let n = coords.len();
        let t = self.sub.s as usize;
        let k = self.basis.len();
        let p = self.sup.p;
        let mut stacked = vec![0u64; n];
        for (row, sr) in stacked.iter_mut().enumerate() {
            let mut acc = 0u64;
            for col in 0..n {
                acc = (acc + self.decomp[row][col] * coords[col]) % p;
            }
            *sr = acc;
        }
        (0..k)
            .map(|j| self.sub.from_coords(&stacked[j * t..(j + 1) * t]))
            .collect()
    }

    pub fn recompose(&self, coords: &[FieldElement]) -> FieldElement {
        assert_eq!(coords.len(), self.basis.len(), "coordinate count mismatch");
        let mut acc = self.sup.zero();
        for (j, &c) in coords.iter().enumerate() {
            acc = self.sup.add(acc, self.sup.mul(self.to_sup(c), self.basis[j]));
        }
        acc
    }
}

fn eval_zp_poly(field: &FiniteField, poly: &[u64], at: FieldElement) -> FieldElement {
    let mut acc = field.zero();
    for &c in poly.iter().rev() {
        acc = field.mul(acc, at);
        if c % field.p != 0 {
            acc = field.add(acc, field.from_coords(&[c]));
        }
    }
    acc
}

fn invert_zp_matrix(mat: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut a: Vec<Vec<u64>> = mat.to_vec();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_multiple_of(p))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = mod_inverse(a[col][col], p);
        for j in 0..n {
            a[col][j] = a[col][j] * pinv % p;
            inv[col][j] = inv[col][j] * pinv % p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_multiple_of(p) {
                let f = a[r][col] % p;
                for j in 0..n {
                    a[r][j] = (a[r][j] + (p - f) * a[col][j]) % p;
                    inv[r][j] = (inv[r][j] + (p - f) * inv[col][j]) % p;
                }
            }
        }
    }
    Some(inv)
}
