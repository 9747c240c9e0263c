//! Arithmetic in GF(p^m).
//!
//! Elements are stored as the integer `Σ c_i p^i` of their coefficient vector in the
//! polynomial basis, so subfields, the prime field and GF(2^m) XOR addition all fall out of
//! the same encoding. Fields up to [`TABLE_CEILING`] elements get full log/antilog tables;
//! larger fields (up to [`ORDER_CEILING`]) multiply by reducing polynomial products and
//! compute discrete logs with Pohlig-Hellman.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{self, checked_pow, factorize, gcd, is_prime};
use crate::error::{Error, Result};

/// Largest field order that gets log/antilog tables.
pub const TABLE_CEILING: u64 = 1 << 20;
/// Largest supported field order.
pub const ORDER_CEILING: u64 = 1 << 32;

const ZERO_LOG: u32 = u32::MAX;

/// A field element in polynomial-basis integer encoding.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf({})", self.0)
    }
}

/// `{p, m, modulus}` with the modulus listed lowest degree first and monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// An immutable finite field with a fixed primitive element.
pub struct FieldTable {
    spec: FieldSpec,
    order: u64,
    group_factors: Vec<(u64, u32)>,
    primitive: Gf,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("p", &self.spec.p)
            .field("m", &self.spec.m)
            .field("modulus", &self.spec.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FieldTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FieldTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldTable {
    /// Builds GF(p^m), using the lexicographically first monic irreducible modulus when
    /// none is given.
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidParameters("extension degree must be at least 1".into()));
        }
        let order = match checked_pow(p as u64, m) {
            Some(q) if q <= ORDER_CEILING => q,
            _ => return Err(Error::FieldTooLarge { p, m, ceiling: ORDER_CEILING }),
        };
        let modulus = match modulus {
            Some(mut f) => {
                while f.len() > 1 && f.last() == Some(&0) {
                    f.pop();
                }
                if f.len() != m as usize + 1 {
                    return Err(Error::ModulusDegree { expected: m, found: f.len().saturating_sub(1) });
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidParameters(format!("modulus coefficient not reduced mod {p}")));
                }
                // normalize to monic
                let lead_inv = arith::mod_inverse(f[m as usize] as u64, p as u64);
                let f: Vec<u32> = f.iter().map(|&c| (c as u64 * lead_inv % p as u64) as u32).collect();
                if !gfp::is_irreducible(&to_u64(&f), p as u64) {
                    return Err(Error::ReducibleModulus(f, p));
                }
                f
            }
            None => first_irreducible(p, m),
        };
        let spec = FieldSpec { p, m, modulus };
        let group_factors = factorize(order - 1);
        debug_assert_eq!(group_factors.iter().map(|&(l, e)| l.pow(e)).product::<u64>(), order - 1);
        let mut field = FieldTable { spec, order, group_factors, primitive: Gf::ONE, tables: None };
        field.primitive = field.find_primitive();
        if order <= TABLE_CEILING {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Shared, lazily built field with the default modulus.
    pub fn cached(p: u32, m: u32) -> Result<Arc<FieldTable>> {
        if let Some(f) = field_cache().lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        let field = Arc::new(FieldTable::new(p, m, None)?);
        field_cache().lock().unwrap().entry((p, m)).or_insert_with(|| field.clone());
        Ok(field)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        FieldTable::new(spec.p, spec.m, Some(spec.modulus.clone()))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Prime factorization of q − 1.
    pub fn group_factors(&self) -> &[(u64, u32)] {
        &self.group_factors
    }

    pub fn primitive(&self) -> Gf {
        self.primitive
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order as u32).map(Gf)
    }

    /// Embeds an integer into the prime field.
    pub fn from_int(&self, c: i64) -> Gf {
        Gf(c.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn coefficients(&self, x: Gf) -> Vec<u32> {
        let p = self.spec.p;
        let mut v = x.0;
        (0..self.spec.m)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Gf {
        let p = self.spec.p;
        Gf(coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p))
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        let p = self.spec.p;
        if p == 2 {
            return Gf(a.0 ^ b.0);
        }
        if self.spec.m == 1 {
            return Gf((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Gf(out)
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Gf(out)
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        match &self.tables {
            Some(t) => Gf(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.poly_mul(a, b),
        }
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::ZeroElement("inverse"));
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Gf(t.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
            }
            None => self.pow(a, self.order - 2),
        })
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.is_zero() {
            return Gf::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128;
            let k = (l * e as u128 % (self.order - 1) as u128) as usize;
            return Gf(t.exp[k]);
        }
        let mut base = a;
        let mut acc = Gf::ONE;
        let mut e = e % (self.order - 1);
        if e == 0 {
            return Gf::ONE;
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(acc, base);
            }
            base = self.poly_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// g^k for the fixed primitive element g.
    pub fn exp(&self, k: u64) -> Gf {
        match &self.tables {
            Some(t) => Gf(t.exp[(k % (self.order - 1)) as usize]),
            None => self.pow(self.primitive, k),
        }
    }

    /// Discrete logarithm base the primitive element; `None` for zero.
    pub fn log(&self, a: Gf) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                debug_assert_ne!(l, ZERO_LOG);
                Some(l as u64)
            }
            None => Some(self.pohlig_hellman(a)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Gf) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement("multiplicative order"));
        }
        let mut ord = self.order - 1;
        for &(l, e) in &self.group_factors {
            for _ in 0..e {
                if self.pow(a, ord / l) == Gf::ONE {
                    ord /= l;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// g^((q−1)/n): an element of multiplicative order exactly n.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Gf> {
        if n == 0 || !(self.order - 1).is_multiple_of(n) {
            return Err(Error::NoRootOfUnity { n, order: self.order - 1 });
        }
        Ok(self.exp((self.order - 1) / n))
    }

    /// x ↦ x^(p^times).
    pub fn frobenius(&self, x: Gf, times: u32) -> Gf {
        let mut y = x;
        for _ in 0..times {
            y = self.pow(y, self.spec.p as u64);
        }
        y
    }

    /// Whether `x` lies in the subfield GF(p^d).
    pub fn in_subfield(&self, x: Gf, d: u32) -> bool {
        self.spec.m.is_multiple_of(d) && self.frobenius(x, d) == x
    }

    /// Elements of the subfield GF(p^d): zero followed by increasing powers of its
    /// primitive element g^((q−1)/(p^d−1)).
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Gf>> {
        if d == 0 || !self.spec.m.is_multiple_of(d) {
            return Err(Error::NotSubfield { sub: d, top: self.spec.m });
        }
        let sub_order = (self.spec.p as u64).pow(d);
        let step = (self.order - 1) / (sub_order - 1);
        let mut out = Vec::with_capacity(sub_order as usize);
        out.push(Gf::ZERO);
        out.extend((0..sub_order - 1).map(|j| self.exp(j * step)));
        Ok(out)
    }

    /// Relative trace from GF(p^top) down to GF(p^sub); `x` must lie in GF(p^top).
    pub fn relative_trace(&self, x: Gf, top: u32, sub: u32) -> Result<Gf> {
        if top == 0 || !self.spec.m.is_multiple_of(top) {
            return Err(Error::NotSubfield { sub: top, top: self.spec.m });
        }
        if sub == 0 || !top.is_multiple_of(sub) {
            return Err(Error::NotSubfield { sub, top });
        }
        if top != self.spec.m && !self.in_subfield(x, top) {
            return Err(Error::OutsideSubfield);
        }
        let step = checked_pow(self.spec.p as u64, sub).expect("subfield order fits");
        let mut acc = Gf::ZERO;
        let mut y = x;
        for _ in 0..top / sub {
            acc = self.add(acc, y);
            y = self.pow(y, step);
        }
        Ok(acc)
    }

    /// Absolute-to-subfield trace tr: GF(p^m) → GF(p^z).
    pub fn trace(&self, z: u32, x: Gf) -> Result<Gf> {
        self.relative_trace(x, self.spec.m, z)
    }

    fn find_primitive(&self) -> Gf {
        if self.order == 2 {
            return Gf::ONE;
        }
        (1..self.order as u32)
            .map(Gf)
            .find(|&g| {
                self.group_factors
                    .iter()
                    .all(|&(l, _)| self.slow_pow(g, (self.order - 1) / l) != Gf::ONE)
            })
            .expect("multiplicative group is cyclic")
    }

    fn slow_pow(&self, a: Gf, mut e: u64) -> Gf {
        let mut base = a;
        let mut acc = Gf::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(acc, base);
            }
            base = self.poly_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![ZERO_LOG; self.order as usize];
        let mut x = Gf::ONE;
        for i in 0..n {
            exp[i] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.poly_mul(x, self.primitive);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        LogTables { exp, log }
    }

    fn poly_mul(&self, a: Gf, b: Gf) -> Gf {
        let p = self.spec.p;
        let m = self.spec.m as usize;
        if p == 2 {
            let modbits: u64 = self
                .spec
                .modulus
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc | ((c as u64) << i));
            let (mut x, mut y, mut r) = (a.0 as u64, b.0 as u64, 0u64);
            while y != 0 {
                if y & 1 == 1 {
                    r ^= x;
                }
                y >>= 1;
                x <<= 1;
                if (x >> m) & 1 == 1 {
                    x ^= modbits;
                }
            }
            return Gf(r as u32);
        }
        let pa = self.coefficients(a);
        let pb = self.coefficients(b);
        let pu = p as u64;
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in pa.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % pu;
            }
        }
        for deg in (m..2 * m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (i, &f) in self.spec.modulus.iter().enumerate() {
                let idx = deg - m + i;
                prod[idx] = (prod[idx] + (pu - c) * f as u64) % pu;
            }
        }
        let coeffs: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.from_coefficients(&coeffs)
    }

    /// Discrete log without tables.
    fn pohlig_hellman(&self, h: Gf) -> u64 {
        let n = self.order - 1;
        let mut residues = Vec::new();
        for &(l, e) in &self.group_factors {
            let le = l.pow(e);
            // gamma generates the subgroup of order l
            let gamma = self.pow(self.primitive, n / l);
            let mut x: u64 = 0;
            let mut lk = 1u64;
            for k in 0..e {
                let _ = k;
                // h_k = (g^{-x} h)^{n / l^{k+1}}
                let gx_inv = self.pow(self.primitive, (n - x % n) % n);
                let hk = self.pow(self.mul(gx_inv, h), n / (lk * l));
                let d = self.bsgs(gamma, hk, l);
                x += d * lk;
                lk *= l;
            }
            residues.push((x % le, le));
        }
        // CRT
        let mut acc: u128 = 0;
        let mut modulus: u128 = 1;
        for (r, m) in residues {
            let (r, m) = (r as u128, m as u128);
            while acc % m != r {
                acc += modulus;
            }
            modulus *= m;
        }
        (acc % n as u128) as u64
    }

    fn bsgs(&self, gamma: Gf, target: Gf, order: u64) -> u64 {
        let steps = (order as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(steps as usize);
        let mut cur = Gf::ONE;
        for j in 0..steps {
            baby.entry(cur).or_insert(j);
            cur = self.mul(cur, gamma);
        }
        let factor = self.inv(self.pow(gamma, steps)).expect("gamma is nonzero");
        let mut y = target;
        for i in 0..=steps {
            if let Some(&j) = baby.get(&y) {
                return (i * steps + j) % order;
            }
            y = self.mul(y, factor);
        }
        unreachable!("element lies in the subgroup generated by gamma")
    }
}

/// The elements of a subfield GF(p^d) ⊆ GF(p^M) re-indexed as compact symbols 0..q
/// (index 0 is zero, index 1 is one), with addition and multiplication tables.
#[derive(Clone, Debug)]
pub struct Alphabet {
    degree: u32,
    p: u32,
    elems: Vec<Gf>,
    index: HashMap<Gf, u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    basis: Vec<u8>,
}

impl Alphabet {
    pub const MAX_SIZE: usize = 256;

    pub fn new(field: &FieldTable, degree: u32) -> Result<Self> {
        let mut elems = field.subfield_elements(degree)?;
        if elems.len() > Self::MAX_SIZE {
            return Err(Error::InvalidParameters(format!(
                "symbol alphabet of size {} exceeds {}",
                elems.len(),
                Self::MAX_SIZE
            )));
        }
        elems.sort_unstable();
        let q = elems.len();
        let index: HashMap<Gf, u8> = elems.iter().enumerate().map(|(i, &e)| (e, i as u8)).collect();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                add[i * q + j] = index[&field.add(a, b)];
                mul[i * q + j] = index[&field.mul(a, b)];
            }
        }
        // powers of a generator of the subfield form a basis over the prime field
        let theta = field.subfield_elements(degree)?.get(2).copied().unwrap_or(Gf::ONE);
        let basis = (0..degree).map(|e| index[&field.pow(theta, e as u64)]).collect();
        Ok(Alphabet { degree, p: field.characteristic(), elems, index, add, mul, basis })
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn element(&self, idx: u8) -> Gf {
        self.elems[idx as usize]
    }

    pub fn index_of(&self, x: Gf) -> Option<u8> {
        self.index.get(&x).copied()
    }

    /// Indices of a basis of the alphabet over its prime field.
    pub fn prime_basis(&self) -> &[u8] {
        &self.basis
    }

    /// Index of the prime-field element `c`.
    pub fn prime(&self, c: u32) -> u8 {
        self.index[&Gf(c % self.p)]
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.elems.len() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.elems.len() + b as usize]
    }
}

/// A cyclotomic coset: the orbit of `rep` under multiplication by q mod n, listed in orbit order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coset {
    pub rep: usize,
    pub members: Vec<usize>,
}

/// Partition of {0, ..., n-1} into cyclotomic cosets, ordered by minimal representative.
pub fn cyclotomic_cosets(n: usize, q: u64) -> Result<Vec<Coset>> {
    if n == 0 {
        return Err(Error::InvalidParameters("length must be positive".into()));
    }
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n: n as u64, q });
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for rep in 0..n {
        if seen[rep] {
            continue;
        }
        out.push(Coset { rep, members: coset_of(rep, n, q) });
        for &i in &out.last().unwrap().members {
            seen[i] = true;
        }
    }
    Ok(out)
}

/// Orbit of `i` under x ↦ q·x mod n.
pub fn coset_of(i: usize, n: usize, q: u64) -> Vec<usize> {
    let qm = (q % n as u64) as usize;
    let mut members = vec![i % n];
    let mut x = (i % n) * qm % n;
    while x != members[0] {
        members.push(x);
        x = x * qm % n;
    }
    members
}

fn to_u64(v: &[u32]) -> Vec<u64> {
    v.iter().map(|&c| c as u64).collect()
}

fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    let pu = p as u64;
    let count = pu.pow(m);
    for t in 0..count {
        let mut f: Vec<u64> = Vec::with_capacity(m as usize + 1);
        let mut v = t;
        for _ in 0..m {
            f.push(v % pu);
            v /= pu;
        }
        f.push(1);
        if gfp::is_irreducible(&f, pu) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Polynomials over the prime field, used only for the irreducibility test.
mod gfp {
    use super::gcd;
    use crate::arith::mod_inverse;

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let df = f.len() - 1;
        let inv = mod_inverse(f[df], p);
        while r.len() > df {
            let c = r[r.len() - 1] * inv % p;
            let shift = r.len() - 1 - df;
            for (i, &fc) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * fc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, f, p)
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        acc
    }

    fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// x^(p^k) mod f
    fn frob_x(k: u32, f: &[u64], p: u64) -> Vec<u64> {
        let mut y = rem(&[0, 1], f, p);
        for _ in 0..k {
            y = powmod(&y, p, f, p);
        }
        y
    }

    fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
        let mut v = a.to_vec();
        if v.len() < 2 {
            v.resize(2, 0);
        }
        v[1] = (v[1] + p - 1) % p;
        trim(v)
    }

    /// Rabin's test: f of degree m is irreducible iff x^(p^m) ≡ x (mod f) and
    /// gcd(x^(p^(m/l)) − x, f) = 1 for every prime l | m.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let m = (f.len() - 1) as u32;
        if m == 1 {
            return true;
        }
        if !sub_x(&frob_x(m, &f, p), p).is_empty() {
            return false;
        }
        for (l, _) in crate::arith::factorize(m as u64) {
            let h = sub_x(&frob_x(m / l as u32, &f, p), p);
            let g = poly_gcd(&f, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        let _ = gcd;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_two() {
        let f = FieldTable::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![Gf(0), Gf(1)]);
        assert_eq!(f.mul(Gf(1), Gf(1)), Gf(1));
        assert_eq!(f.add(Gf(1), Gf(1)), Gf(0));
    }

    #[test]
    fn default_moduli_are_lexicographically_first() {
        assert_eq!(FieldTable::new(2, 3, None).unwrap().spec().modulus, vec![1, 1, 0, 1]);
        assert_eq!(FieldTable::new(2, 4, None).unwrap().spec().modulus, vec![1, 1, 0, 0, 1]);
        assert_eq!(FieldTable::new(3, 2, None).unwrap().spec().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn group_orders() {
        let f = FieldTable::new(2, 6, None).unwrap();
        assert_eq!(f.order() - 1, 63);
        let g = FieldTable::new(3, 4, None).unwrap();
        assert_eq!(g.order() - 1, 80);
        let beta = g.nth_root_of_unity(40).unwrap();
        assert_eq!(g.element_order(beta).unwrap(), 40);
    }

    #[test]
    fn roots_of_unity() {
        let f = FieldTable::new(2, 12, None).unwrap();
        let a = f.nth_root_of_unity(45).unwrap();
        assert_eq!(f.pow(a, 45), Gf::ONE);
        for k in 1..45 {
            assert_ne!(f.pow(a, k), Gf::ONE);
        }
        let f6 = FieldTable::new(2, 6, None).unwrap();
        assert_eq!(f6.nth_root_of_unity(63).unwrap(), f6.primitive());
        let f3 = FieldTable::new(3, 4, None).unwrap();
        assert_eq!(f3.element_order(f3.nth_root_of_unity(80).unwrap()).unwrap(), 80);
        assert!(matches!(f6.nth_root_of_unity(5), Err(Error::NoRootOfUnity { .. })));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(FieldTable::new(4, 2, None), Err(Error::NotPrime(4))));
        assert!(matches!(
            FieldTable::new(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus(..))
        ));
        assert!(matches!(FieldTable::new(2, 40, None), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn trace_of_cube_root_in_gf4() {
        let f = FieldTable::new(2, 2, None).unwrap();
        let w = f.nth_root_of_unity(3).unwrap();
        // ω + ω² computed by hand
        let direct = f.add(w, f.mul(w, w));
        assert_eq!(direct, Gf::ONE);
        assert_eq!(f.trace(1, w).unwrap(), Gf::ONE);
        assert_eq!(f.trace(1, Gf::ZERO).unwrap(), Gf::ZERO);
    }

    #[test]
    fn trace_preimages_are_balanced() {
        let f = FieldTable::new(2, 6, None).unwrap();
        for z in [1, 2, 3] {
            let mut counts: HashMap<Gf, usize> = HashMap::new();
            for x in f.elements() {
                let t = f.trace(z, x).unwrap();
                assert!(f.in_subfield(t, z));
                *counts.entry(t).or_default() += 1;
            }
            assert_eq!(counts.len(), 1 << z);
            assert!(counts.values().all(|&c| c == 1 << (6 - z)));
        }
        assert!(matches!(f.trace(4, Gf::ONE), Err(Error::NotSubfield { .. })));
    }

    #[test]
    fn trace_is_transitive() {
        for (p, m) in [(2u32, 4u32), (2, 6), (2, 8), (3, 4), (2, 12), (2, 16), (5, 4)] {
            let f = FieldTable::new(p, m, None).unwrap();
            for z in (1..=m).filter(|z| m % z == 0) {
                for x in f.elements() {
                    let direct = f.trace(1, x).unwrap();
                    let inner = f.relative_trace(x, m, z).unwrap();
                    let outer = f.relative_trace(inner, z, 1).unwrap();
                    assert_eq!(direct, outer, "p={p} m={m} z={z}");
                }
            }
        }
    }

    #[test]
    fn root_of_unity_sums() {
        for (p, m) in [(2u32, 4u32), (2, 6), (3, 2), (3, 4), (5, 2), (13, 1)] {
            let f = FieldTable::new(p, m, None).unwrap();
            let q1 = f.order() - 1;
            for n in (1..=q1).filter(|n| q1.is_multiple_of(*n)) {
                for a in f.elements().filter(|&a| !a.is_zero() && f.pow(a, n) == Gf::ONE) {
                    let mut acc = Gf::ZERO;
                    let mut x = Gf::ONE;
                    for _ in 0..n {
                        acc = f.add(acc, x);
                        x = f.mul(x, a);
                    }
                    let expected = if a == Gf::ONE { f.from_int(n as i64) } else { Gf::ZERO };
                    assert_eq!(acc, expected);
                }
            }
        }
    }

    #[test]
    fn lazy_mode_agrees_with_tables() {
        // 2^21 is above the table ceiling
        let big = FieldTable::new(2, 21, None).unwrap();
        assert!(!big.has_tables());
        let g = big.primitive();
        assert_eq!(big.element_order(g).unwrap(), big.order() - 1);
        for k in [0u64, 1, 2, 17, 12345, 2_000_000] {
            let x = big.exp(k);
            assert_eq!(big.log(x), Some(k % (big.order() - 1)));
        }
        let x = big.exp(777);
        assert_eq!(big.mul(x, big.inv(x).unwrap()), Gf::ONE);
    }

    #[test]
    fn alphabet_tables() {
        let f = FieldTable::new(2, 6, None).unwrap();
        let a = Alphabet::new(&f, 2).unwrap();
        assert_eq!(a.size(), 4);
        assert_eq!(a.element(0), Gf::ZERO);
        assert_eq!(a.element(1), Gf::ONE);
        for i in 0..4u8 {
            assert_eq!(a.add(i, i), 0);
            assert_eq!(a.mul(i, 1), i);
        }
    }

    #[test]
    fn cosets_mod_15() {
        let c = cyclotomic_cosets(15, 2).unwrap();
        let sets: Vec<Vec<usize>> = c.iter().map(|c| c.members.clone()).collect();
        assert_eq!(
            sets,
            vec![vec![0], vec![1, 2, 4, 8], vec![3, 6, 12, 9], vec![5, 10], vec![7, 14, 13, 11]]
        );
        assert!(matches!(cyclotomic_cosets(15, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn coset_sizes_match_extension_degrees() {
        assert_eq!(coset_of(1, 45, 2).len(), 12);
        for i in [1, 2, 41] {
            assert_eq!(coset_of(i, 80, 3).len(), 4);
        }
    }

    proptest! {
        #[test]
        fn cosets_are_frobenius_stable(n in 1usize..120, q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16])) {
            prop_assume!(gcd(n as u64, q) == 1);
            let cosets = cyclotomic_cosets(n, q).unwrap();
            let mut all: Vec<usize> = cosets.iter().flat_map(|c| c.members.iter().copied()).collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            for c in &cosets {
                prop_assert_eq!(c.rep, *c.members.iter().min().unwrap());
                let mut a: Vec<usize> = c.members.iter().map(|&x| (x as u64 * q % n as u64) as usize).collect();
                let mut b = c.members.clone();
                a.sort_unstable();
                b.sort_unstable();
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn inverse_and_power_laws(x in 1u32..4096, a in 0u64..5000, b in 0u64..5000) {
            let f = FieldTable::cached(2, 12).unwrap();
            let x = Gf(x);
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), Gf::ONE);
            prop_assert_eq!(f.pow(f.pow(x, a), b), f.pow(x, (a * b) % (f.order() - 1)));
            prop_assert_eq!(f.exp(f.log(x).unwrap()), x);
        }

        #[test]
        fn odd_characteristic_laws(x in 1u32..81, y in 0u32..81) {
            let f = FieldTable::cached(3, 4).unwrap();
            let (x, y) = (Gf(x), Gf(y));
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), Gf::ONE);
            prop_assert_eq!(f.sub(f.add(x, y), y), x);
            prop_assert_eq!(f.pow(x, 80), Gf::ONE);
            prop_assert_eq!(f.mul(x, y), f.poly_mul(x, y));
        }
    }
}
