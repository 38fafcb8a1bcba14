//! Exact arithmetic in Galois rings GR(p², m).
//!
//! GR(p², m) is realized as Z_{p²}[z]/⟨h(z)⟩ for a monic basic irreducible h
//! of degree m (h is *basic irreducible* when h mod p is irreducible over
//! F_p). Elements are dense coefficient vectors of length m over Z_{p²},
//! always kept fully reduced so that equality is structural. The residue
//! field F_{p^m} = GR(p², m)/(p) is exposed through a parallel element type
//! with coefficients reduced mod p.
//!
//! Every element has a unique p-adic expansion b₀ + p·b₁ with b₀, b₁ in the
//! Teichmüller set {x : x^{p^m} = x}; the expansion drives the generalized
//! Frobenius b₀ + p·b₁ ↦ b₀^{p^k} + p·b₁^{p^k}.

use crate::error::{Error, Result};

/// Context for GR(p², m): the prime, extension degree and defining modulus.
/// Immutable after construction; all element operations go through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisRingContext {
    p: u32,
    m: usize,
    p2: u32,
    /// p^m, the residue field size.
    q: u64,
    /// Monic degree-m polynomial over Z_{p²}, ascending coefficients, length m+1.
    modulus: Vec<u32>,
}

/// Element of GR(p², m): length-m coefficient vector over Z_{p²} in the
/// basis {1, z, …, z^{m-1}}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrElement {
    pub coeffs: Vec<u32>,
}

/// Element of the residue field F_{p^m}: length-m vector with entries mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElement {
    pub coeffs: Vec<u32>,
}

pub(crate) fn is_prime(n: u32) -> bool {
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

/// Distinct prime divisors of x by trial division.
pub(crate) fn prime_divisors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

// ---- polynomial helpers over Z_M (M = p or p²), dense ascending vectors ----

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_raw(a: &[u32], b: &[u32], md: u64) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + ai as u64 * bj as u64) % md) as u32;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a by monic b over Z_M.
fn poly_rem_monic(a: &[u32], b: &[u32], md: u64) -> Vec<u32> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    while r.len() > db {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for j in 0..=db {
                let sub = (lead * b[j] as u64) % md;
                let cur = r[shift + j] as u64;
                r[shift + j] = ((cur + md - sub) % md) as u32;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_pow_mod(base: &[u32], mut e: u64, modulus: &[u32], md: u64) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = poly_rem_monic(base, modulus, md);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem_monic(&poly_mul_raw(&result, &b, md), modulus, md);
        }
        b = poly_rem_monic(&poly_mul_raw(&b, &b, md), modulus, md);
        e >>= 1;
    }
    result
}

// gcd over F_p (prime modulus, so every nonzero lead is invertible)
fn fp_inv_scalar(a: u32, p: u32) -> u32 {
    // Fermat
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

fn fp_poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    assert!(!bb.is_empty(), "division by zero polynomial");
    let lead_inv = fp_inv_scalar(*bb.last().unwrap(), p) as u64;
    let db = bb.len() - 1;
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let md = p as u64;
    while r.len() > db {
        let c = (*r.last().unwrap() as u64 * lead_inv) % md;
        let shift = r.len() - 1 - db;
        if c != 0 {
            for j in 0..=db {
                let sub = (c * bb[j] as u64) % md;
                let cur = r[shift + j] as u64;
                r[shift + j] = ((cur + md - sub) % md) as u32;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn fp_poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = fp_poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Irreducibility of a monic polynomial over F_p:
/// z^{p^m} ≡ z mod h, and gcd(z^{p^{m/r}} − z, h) = 1 for every prime r | m.
fn fp_is_irreducible(h: &[u32], p: u32) -> bool {
    let mut h = h.to_vec();
    for c in h.iter_mut() {
        *c %= p;
    }
    poly_trim(&mut h);
    if h.len() < 2 {
        return false;
    }
    let m = (h.len() - 1) as u64;
    if *h.last().unwrap() != 1 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let md = p as u64;
    let z = vec![0u32, 1];
    let qm = (p as u64).pow(m as u32);
    let zq = poly_pow_mod(&z, qm, &h, md);
    if zq != poly_rem_monic(&z, &h, md) {
        return false;
    }
    for r in prime_divisors(m) {
        let e = (p as u64).pow((m / r) as u32);
        let mut diff = poly_pow_mod(&z, e, &h, md);
        // diff -= z
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = fp_poly_gcd(&diff, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// A monic irreducible h over F_p is primitive when its root z has
/// multiplicative order p^m − 1 in F_p[z]/⟨h⟩.
fn fp_is_primitive(h: &[u32], p: u32) -> bool {
    if !fp_is_irreducible(h, p) {
        return false;
    }
    let mut hh = h.to_vec();
    for c in hh.iter_mut() {
        *c %= p;
    }
    let m = (hh.len() - 1) as u32;
    let order = (p as u64).pow(m) - 1;
    if order == 0 {
        return false;
    }
    let md = p as u64;
    let z = vec![0u32, 1];
    if poly_rem_monic(&z, &hh, md).is_empty() {
        // root would be 0 (only possible for m = 1, h = z)
        return false;
    }
    for r in prime_divisors(order) {
        if poly_pow_mod(&z, order / r, &hh, md) == vec![1u32] {
            return false;
        }
    }
    true
}

impl GaloisRingContext {
    /// Build GR(p², m). When `modulus` is omitted, the default is the
    /// lexicographically first (ascending coefficient tuple, constant term
    /// most significant) monic degree-m polynomial whose reduction mod p is
    /// primitive over F_p.
    pub fn new(p: u32, m: usize, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree m must be >= 1".into()));
        }
        let p2 = p
            .checked_mul(p)
            .ok_or_else(|| Error::InvalidParameter("p^2 overflows".into()))?;
        let q = (p as u64)
            .checked_pow(m as u32)
            .ok_or_else(|| Error::InvalidParameter("p^m overflows".into()))?;
        let modulus = match modulus {
            Some(mut h) => {
                for c in h.iter_mut() {
                    *c %= p2;
                }
                if h.len() != m + 1 || h[m] != 1 {
                    return Err(Error::NotBasicIrreducible(h));
                }
                if !fp_is_irreducible(&h, p) {
                    return Err(Error::NotBasicIrreducible(h));
                }
                h
            }
            None => Self::default_modulus(p, m)?,
        };
        Ok(GaloisRingContext { p, m, p2, q, modulus })
    }

    /// Lexicographically first monic degree-m polynomial with primitive
    /// reduction. Coefficients below p suffice: reducing a tuple mod p never
    /// increases it lexicographically and preserves the reduction.
    fn default_modulus(p: u32, m: usize) -> Result<Vec<u32>> {
        let mut tuple = vec![0u32; m];
        loop {
            let mut h = tuple.clone();
            h.push(1);
            if fp_is_primitive(&h, p) {
                return Ok(h);
            }
            // odometer, last coordinate fastest
            let mut k = m;
            loop {
                if k == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "no primitive modulus of degree {m} over Z_{}",
                        p * p
                    )));
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < p {
                    break;
                }
                tuple[k] = 0;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn p2(&self) -> u32 {
        self.p2
    }
    pub fn m(&self) -> usize {
        self.m
    }
    /// Residue field size p^m.
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// Ring cardinality p^{2m}.
    pub fn cardinality(&self) -> u64 {
        self.q * self.q
    }

    // ---- element constructors ----

    pub fn zero(&self) -> GrElement {
        GrElement { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> GrElement {
        self.scalar(1)
    }

    /// Embed c ∈ Z_{p²} as a constant.
    pub fn scalar(&self, c: u32) -> GrElement {
        let mut v = vec![0; self.m];
        v[0] = c % self.p2;
        GrElement { coeffs: v }
    }

    /// Element from an arbitrary coefficient vector (reduced and padded).
    pub fn element(&self, coeffs: &[u32]) -> GrElement {
        let md = self.p2 as u64;
        let mut v: Vec<u32> = coeffs.iter().map(|&c| (c as u64 % md) as u32).collect();
        if v.len() > self.m {
            v = poly_rem_monic(&v, &self.modulus, md);
        }
        v.resize(self.m, 0);
        GrElement { coeffs: v }
    }

    /// All p^{2m} elements in ascending lexicographic coefficient order.
    pub fn elements(&self) -> Vec<GrElement> {
        let mut out = Vec::with_capacity((self.cardinality()) as usize);
        let mut v = vec![0u32; self.m];
        loop {
            out.push(GrElement { coeffs: v.clone() });
            let mut k = self.m;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                v[k] += 1;
                if v[k] < self.p2 {
                    break;
                }
                v[k] = 0;
            }
        }
    }

    // ---- ring arithmetic ----

    pub fn add(&self, a: &GrElement, b: &GrElement) -> GrElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p2)
            .collect();
        GrElement { coeffs }
    }

    pub fn sub(&self, a: &GrElement, b: &GrElement) -> GrElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p2 - y) % self.p2)
            .collect();
        GrElement { coeffs }
    }

    pub fn neg(&self, a: &GrElement) -> GrElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p2 - x) % self.p2).collect();
        GrElement { coeffs }
    }

    pub fn mul(&self, a: &GrElement, b: &GrElement) -> GrElement {
        let md = self.p2 as u64;
        let prod = poly_mul_raw(&a.coeffs, &b.coeffs, md);
        let mut r = poly_rem_monic(&prod, &self.modulus, md);
        r.resize(self.m, 0);
        GrElement { coeffs: r }
    }

    pub fn mul_scalar(&self, a: &GrElement, c: u32) -> GrElement {
        let md = self.p2 as u64;
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| ((x as u64 * c as u64) % md) as u32)
            .collect();
        GrElement { coeffs }
    }

    pub fn pow(&self, a: &GrElement, mut e: u64) -> GrElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn is_zero(&self, a: &GrElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// x is a unit iff x mod p ≠ 0.
    pub fn is_unit(&self, a: &GrElement) -> bool {
        a.coeffs.iter().any(|&c| c % self.p != 0)
    }

    /// Inverse of a unit: residue-field inverse lifted by one Newton step
    /// b ↦ b(2 − ab), exact mod p².
    pub fn inv(&self, a: &GrElement) -> Result<GrElement> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let rbar = self.residue(a);
        let rinv = self.res_pow(&rbar, self.q - 2);
        let b0 = self.lift(&rinv);
        let two = self.scalar(2);
        let t = self.sub(&two, &self.mul(a, &b0));
        let b = self.mul(&b0, &t);
        debug_assert_eq!(self.mul(a, &b), self.one());
        Ok(b)
    }

    /// Multiplicative order, or None for non-units. Walks successive powers;
    /// fine at the sizes this library targets.
    pub fn multiplicative_order(&self, a: &GrElement) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let one = self.one();
        let mut x = a.clone();
        let cap = self.cardinality();
        for k in 1..=cap {
            if x == one {
                return Some(k);
            }
            x = self.mul(&x, a);
        }
        None
    }

    // ---- residue field ----

    pub fn residue(&self, a: &GrElement) -> ResidueElement {
        ResidueElement {
            coeffs: a.coeffs.iter().map(|&c| c % self.p).collect(),
        }
    }

    /// Coefficientwise lift F_{p^m} → GR(p², m) with entries in [0, p).
    pub fn lift(&self, a: &ResidueElement) -> GrElement {
        GrElement { coeffs: a.coeffs.clone() }
    }

    pub fn res_zero(&self) -> ResidueElement {
        ResidueElement { coeffs: vec![0; self.m] }
    }

    pub fn res_one(&self) -> ResidueElement {
        let mut v = vec![0; self.m];
        v[0] = 1;
        ResidueElement { coeffs: v }
    }

    pub fn res_is_zero(&self, a: &ResidueElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn res_add(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        ResidueElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn res_sub(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        ResidueElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        }
    }

    pub fn res_neg(&self, a: &ResidueElement) -> ResidueElement {
        ResidueElement {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn res_mul(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        let md = self.p as u64;
        let modulus: Vec<u32> = self.modulus.iter().map(|&c| c % self.p).collect();
        let prod = poly_mul_raw(&a.coeffs, &b.coeffs, md);
        let mut r = poly_rem_monic(&prod, &modulus, md);
        r.resize(self.m, 0);
        ResidueElement { coeffs: r }
    }

    pub fn res_pow(&self, a: &ResidueElement, mut e: u64) -> ResidueElement {
        let mut result = self.res_one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.res_mul(&result, &base);
            }
            base = self.res_mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn res_inv(&self, a: &ResidueElement) -> Result<ResidueElement> {
        if self.res_is_zero(a) {
            return Err(Error::NotAUnit);
        }
        Ok(self.res_pow(a, self.q - 2))
    }

    pub fn res_order(&self, a: &ResidueElement) -> Option<u64> {
        if self.res_is_zero(a) {
            return None;
        }
        let one = self.res_one();
        let mut x = a.clone();
        for k in 1..=self.q {
            if x == one {
                return Some(k);
            }
            x = self.res_mul(&x, a);
        }
        None
    }

    /// All p^m residue field elements in ascending lexicographic order.
    pub fn residue_elements(&self) -> Vec<ResidueElement> {
        let mut out = Vec::with_capacity(self.q as usize);
        let mut v = vec![0u32; self.m];
        loop {
            out.push(ResidueElement { coeffs: v.clone() });
            let mut k = self.m;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                v[k] += 1;
                if v[k] < self.p {
                    break;
                }
                v[k] = 0;
            }
        }
    }

    // ---- Teichmüller structure ----

    /// Teichmüller lift of a residue class: a ↦ a^{p^m} on any lift, already
    /// a fixed point of x ↦ x^{p^m} mod p².
    pub fn teichmuller_lift(&self, a: &ResidueElement) -> GrElement {
        self.pow(&self.lift(a), self.q)
    }

    /// Teichmüller part of a (the lift of its residue).
    pub fn teichmuller_part(&self, a: &GrElement) -> GrElement {
        self.pow(a, self.q)
    }

    /// Unique expansion a = b₀ + p·b₁ with b₀, b₁ Teichmüller.
    pub fn teichmuller_decompose(&self, a: &GrElement) -> (GrElement, GrElement) {
        let b0 = self.teichmuller_part(a);
        let delta = self.sub(a, &b0);
        let r1 = ResidueElement {
            coeffs: delta.coeffs.iter().map(|&c| (c / self.p) % self.p).collect(),
        };
        let b1 = self.teichmuller_lift(&r1);
        (b0, b1)
    }

    /// The p^m multiplicative representatives {0} ∪ {x : x^{p^m - 1} = 1},
    /// in the order induced by the residue field enumeration.
    pub fn teichmuller_set(&self) -> Vec<GrElement> {
        self.residue_elements()
            .iter()
            .map(|r| self.teichmuller_lift(r))
            .collect()
    }

    /// A unit of multiplicative order exactly p^m − 1: the Teichmüller lift
    /// of the lexicographically smallest primitive residue field element.
    pub fn primitive_unit(&self) -> GrElement {
        for r in self.residue_elements() {
            if self.res_order(&r) == Some(self.q - 1) {
                return self.teichmuller_lift(&r);
            }
        }
        unreachable!("residue field always has a primitive element")
    }

    /// Generalized Frobenius relative to the degree-`base_m` subring:
    /// b₀ + p·b₁ ↦ b₀^{p^{base_m}} + p·b₁^{p^{base_m}}.
    pub fn frobenius(&self, a: &GrElement, base_m: usize) -> Result<GrElement> {
        if base_m == 0 || !self.m.is_multiple_of(base_m) {
            return Err(Error::BadSubfieldDegree { base_m, m: self.m });
        }
        let e = (self.p as u64).pow(base_m as u32);
        let (b0, b1) = self.teichmuller_decompose(a);
        let t0 = self.pow(&b0, e);
        let t1 = self.pow(&b1, e);
        Ok(self.add(&t0, &self.mul_scalar(&t1, self.p)))
    }
}
