//! Polynomials over GR(p², m) and over its residue field, cyclotomic cosets,
//! the classified factorization of xⁿ − 1, and the attached idempotents.
//!
//! With gcd(n, p) = 1, xⁿ − 1 splits over R = GR(p², m) into pairwise coprime
//! monic basic irreducible factors. Grouping each factor with its reciprocal
//! gives the classification used throughout the crate:
//!
//! * `Unity` — the factor x − 1,
//! * `SelfReciprocal` — f with f* = u·f for a unit u,
//! * `Pair` — f = ρ·ρ* with ρ, ρ* coprime basic irreducibles.
//!
//! The primary idempotents ε_i of R[x]/⟨xⁿ−1⟩ are computed from a Bezout
//! identity over the residue field followed by one idempotent-lifting step
//! e ↦ 3e² − 2e³, which is exact mod p².

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRingContext, GrElement, ResidueElement};

/// Polynomial over R, ascending dense coefficients, trailing zeros stripped.
/// The zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RPoly {
    pub coeffs: Vec<GrElement>,
}

/// Polynomial over the residue field F_{p^m}, same conventions as `RPoly`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResiduePoly {
    pub coeffs: Vec<ResidueElement>,
}

impl RPoly {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

impl ResiduePoly {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
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

impl GaloisRingContext {
    // ---- construction ----

    pub fn rp_from(&self, mut coeffs: Vec<GrElement>) -> RPoly {
        while coeffs.last().map(|c| self.is_zero(c)) == Some(true) {
            coeffs.pop();
        }
        RPoly { coeffs }
    }

    pub fn rp_zero(&self) -> RPoly {
        RPoly { coeffs: Vec::new() }
    }

    pub fn rp_one(&self) -> RPoly {
        RPoly { coeffs: vec![self.one()] }
    }

    pub fn rp_const(&self, c: &GrElement) -> RPoly {
        self.rp_from(vec![c.clone()])
    }

    pub fn rp_x(&self) -> RPoly {
        RPoly { coeffs: vec![self.zero(), self.one()] }
    }

    /// Polynomial from scalar coefficients (each embedded as a constant of R).
    pub fn rp_from_scalars(&self, coeffs: &[u32]) -> RPoly {
        self.rp_from(coeffs.iter().map(|&c| self.scalar(c)).collect())
    }

    /// xⁿ − 1.
    pub fn rp_xn_minus_1(&self, n: u64) -> RPoly {
        let mut coeffs = vec![self.zero(); n as usize + 1];
        coeffs[0] = self.neg(&self.one());
        coeffs[n as usize] = self.one();
        self.rp_from(coeffs)
    }

    pub fn rp_coeff(&self, a: &RPoly, k: usize) -> GrElement {
        a.coeffs.get(k).cloned().unwrap_or_else(|| self.zero())
    }

    // ---- arithmetic ----

    pub fn rp_add(&self, a: &RPoly, b: &RPoly) -> RPoly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.add(&self.rp_coeff(a, k), &self.rp_coeff(b, k)));
        }
        self.rp_from(out)
    }

    pub fn rp_sub(&self, a: &RPoly, b: &RPoly) -> RPoly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.sub(&self.rp_coeff(a, k), &self.rp_coeff(b, k)));
        }
        self.rp_from(out)
    }

    pub fn rp_neg(&self, a: &RPoly) -> RPoly {
        RPoly { coeffs: a.coeffs.iter().map(|c| self.neg(c)).collect() }
    }

    pub fn rp_mul(&self, a: &RPoly, b: &RPoly) -> RPoly {
        if a.is_zero() || b.is_zero() {
            return self.rp_zero();
        }
        let mut out = vec![self.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if self.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(ai, bj));
            }
        }
        self.rp_from(out)
    }

    pub fn rp_mul_el(&self, a: &RPoly, c: &GrElement) -> RPoly {
        self.rp_from(a.coeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn rp_mul_scalar(&self, a: &RPoly, c: u32) -> RPoly {
        self.rp_from(a.coeffs.iter().map(|x| self.mul_scalar(x, c)).collect())
    }

    /// Division with remainder by a monic divisor.
    pub fn rp_divrem(&self, a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
        let db = b.degree().expect("monic divisor must be nonzero");
        assert_eq!(b.coeffs[db], self.one(), "divisor must be monic");
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (self.rp_zero(), self.rp_from(rem));
        }
        let mut quot = vec![self.zero(); rem.len() - db];
        while rem.len() > db {
            let lead = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - db;
            if !self.is_zero(&lead) {
                quot[shift] = lead.clone();
                for j in 0..=db {
                    let t = self.mul(&lead, &b.coeffs[j]);
                    rem[shift + j] = self.sub(&rem[shift + j], &t);
                }
            }
            rem.pop();
            while rem.last().map(|c| self.is_zero(c)) == Some(true) {
                rem.pop();
            }
        }
        (self.rp_from(quot), self.rp_from(rem))
    }

    pub fn rp_rem(&self, a: &RPoly, b: &RPoly) -> RPoly {
        self.rp_divrem(a, b).1
    }

    /// Reduce modulo xⁿ − 1 by folding exponents.
    pub fn rp_mod_xn1(&self, a: &RPoly, n: u64) -> RPoly {
        let n = n as usize;
        let mut out = vec![self.zero(); n];
        for (k, c) in a.coeffs.iter().enumerate() {
            out[k % n] = self.add(&out[k % n], c);
        }
        self.rp_from(out)
    }

    /// Multiply by x modulo xⁿ − 1 (cyclic coefficient rotation).
    pub fn rp_shift_mod_xn1(&self, a: &RPoly, n: u64) -> RPoly {
        let n = n as usize;
        let mut out = vec![self.zero(); n];
        for (k, c) in a.coeffs.iter().enumerate() {
            out[(k + 1) % n] = c.clone();
        }
        self.rp_from(out)
    }

    pub fn rp_residue(&self, a: &RPoly) -> ResiduePoly {
        self.fq_from(a.coeffs.iter().map(|c| self.residue(c)).collect())
    }

    pub fn rp_lift(&self, a: &ResiduePoly) -> RPoly {
        self.rp_from(a.coeffs.iter().map(|c| self.lift(c)).collect())
    }

    // ---- arithmetic modulo a fixed monic polynomial (quotient ring view) ----

    pub fn polymod_mul(&self, a: &RPoly, b: &RPoly, f: &RPoly) -> RPoly {
        self.rp_rem(&self.rp_mul(a, b), f)
    }

    pub fn polymod_pow(&self, a: &RPoly, mut e: u64, f: &RPoly) -> RPoly {
        let mut result = self.rp_rem(&self.rp_one(), f);
        let mut base = self.rp_rem(a, f);
        while e > 0 {
            if e & 1 == 1 {
                result = self.polymod_mul(&result, &base, f);
            }
            base = self.polymod_mul(&base, &base, f);
            e >>= 1;
        }
        result
    }

    /// Inverse of a unit of R[x]/⟨f⟩: residue-field inverse via the extended
    /// Euclidean algorithm, then one Newton step b ↦ b(2 − ab).
    pub fn polymod_inv(&self, a: &RPoly, f: &RPoly) -> Result<RPoly> {
        let abar = self.rp_residue(&self.rp_rem(a, f));
        let fbar = self.rp_residue(f);
        let (g, s, _) = self.fq_xgcd(&abar, &fbar);
        if g.degree() != Some(0) {
            return Err(Error::NotAUnit);
        }
        let ginv = self.res_inv(&g.coeffs[0])?;
        let sbar = self.fq_mul_el(&s, &ginv);
        let b0 = self.rp_lift(&self.fq_rem(&sbar, &fbar));
        let two = self.rp_from_scalars(&[2]);
        let t = self.rp_sub(&two, &self.polymod_mul(a, &b0, f));
        let b = self.polymod_mul(&b0, &t, f);
        debug_assert_eq!(self.polymod_mul(a, &b, f), self.rp_rem(&self.rp_one(), f));
        Ok(b)
    }

    /// Multiplicative order in R[x]/⟨f⟩ by iteration, None for non-units.
    pub fn polymod_order(&self, a: &RPoly, f: &RPoly, cap: u64) -> Option<u64> {
        let one = self.rp_rem(&self.rp_one(), f);
        let mut x = self.rp_rem(a, f);
        for k in 1..=cap {
            if x == one {
                return Some(k);
            }
            x = self.polymod_mul(&x, a, f);
        }
        None
    }

    // ---- residue field polynomials ----

    pub fn fq_from(&self, mut coeffs: Vec<ResidueElement>) -> ResiduePoly {
        while coeffs.last().map(|c| self.res_is_zero(c)) == Some(true) {
            coeffs.pop();
        }
        ResiduePoly { coeffs }
    }

    pub fn fq_zero(&self) -> ResiduePoly {
        ResiduePoly { coeffs: Vec::new() }
    }

    pub fn fq_one(&self) -> ResiduePoly {
        ResiduePoly { coeffs: vec![self.res_one()] }
    }

    pub fn fq_coeff(&self, a: &ResiduePoly, k: usize) -> ResidueElement {
        a.coeffs.get(k).cloned().unwrap_or_else(|| self.res_zero())
    }

    pub fn fq_add(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.res_add(&self.fq_coeff(a, k), &self.fq_coeff(b, k)));
        }
        self.fq_from(out)
    }

    pub fn fq_sub(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.res_sub(&self.fq_coeff(a, k), &self.fq_coeff(b, k)));
        }
        self.fq_from(out)
    }

    pub fn fq_neg(&self, a: &ResiduePoly) -> ResiduePoly {
        ResiduePoly { coeffs: a.coeffs.iter().map(|c| self.res_neg(c)).collect() }
    }

    pub fn fq_mul(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        if a.is_zero() || b.is_zero() {
            return self.fq_zero();
        }
        let mut out = vec![self.res_zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if self.res_is_zero(ai) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                out[i + j] = self.res_add(&out[i + j], &self.res_mul(ai, bj));
            }
        }
        self.fq_from(out)
    }

    pub fn fq_mul_el(&self, a: &ResiduePoly, c: &ResidueElement) -> ResiduePoly {
        self.fq_from(a.coeffs.iter().map(|x| self.res_mul(x, c)).collect())
    }

    pub fn fq_divrem(&self, a: &ResiduePoly, b: &ResiduePoly) -> (ResiduePoly, ResiduePoly) {
        let db = b.degree().expect("division by zero polynomial");
        let lead_inv = self.res_inv(&b.coeffs[db]).expect("field leading coefficient");
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (self.fq_zero(), self.fq_from(rem));
        }
        let mut quot = vec![self.res_zero(); rem.len() - db];
        while rem.len() > db {
            let c = self.res_mul(rem.last().unwrap(), &lead_inv);
            let shift = rem.len() - 1 - db;
            if !self.res_is_zero(&c) {
                quot[shift] = c.clone();
                for j in 0..=db {
                    let t = self.res_mul(&c, &b.coeffs[j]);
                    rem[shift + j] = self.res_sub(&rem[shift + j], &t);
                }
            }
            rem.pop();
            while rem.last().map(|x| self.res_is_zero(x)) == Some(true) {
                rem.pop();
            }
        }
        (self.fq_from(quot), self.fq_from(rem))
    }

    pub fn fq_rem(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        self.fq_divrem(a, b).1
    }

    /// Extended Euclid: returns (g, s, t) with s·a + t·b = g.
    pub fn fq_xgcd(
        &self,
        a: &ResiduePoly,
        b: &ResiduePoly,
    ) -> (ResiduePoly, ResiduePoly, ResiduePoly) {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut s0 = self.fq_one();
        let mut s1 = self.fq_zero();
        let mut t0 = self.fq_zero();
        let mut t1 = self.fq_one();
        while !r1.is_zero() {
            let (q, r) = self.fq_divrem(&r0, &r1);
            let s = self.fq_sub(&s0, &self.fq_mul(&q, &s1));
            let t = self.fq_sub(&t0, &self.fq_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        (r0, s0, t0)
    }

    pub fn fq_mod_xn1(&self, a: &ResiduePoly, n: u64) -> ResiduePoly {
        let n = n as usize;
        let mut out = vec![self.res_zero(); n];
        for (k, c) in a.coeffs.iter().enumerate() {
            out[k % n] = self.res_add(&out[k % n], c);
        }
        self.fq_from(out)
    }

    pub fn fqmod_mul(&self, a: &ResiduePoly, b: &ResiduePoly, f: &ResiduePoly) -> ResiduePoly {
        self.fq_rem(&self.fq_mul(a, b), f)
    }

    pub fn fqmod_pow(&self, a: &ResiduePoly, mut e: u64, f: &ResiduePoly) -> ResiduePoly {
        let mut result = self.fq_rem(&self.fq_one(), f);
        let mut base = self.fq_rem(a, f);
        while e > 0 {
            if e & 1 == 1 {
                result = self.fqmod_mul(&result, &base, f);
            }
            base = self.fqmod_mul(&base, &base, f);
            e >>= 1;
        }
        result
    }

    pub fn fqmod_inv(&self, a: &ResiduePoly, f: &ResiduePoly) -> Result<ResiduePoly> {
        let (g, s, _) = self.fq_xgcd(&self.fq_rem(a, f), f);
        if g.degree() != Some(0) {
            return Err(Error::NotAUnit);
        }
        let ginv = self.res_inv(&g.coeffs[0])?;
        Ok(self.fq_rem(&self.fq_mul_el(&s, &ginv), f))
    }

    pub fn fqmod_order(&self, a: &ResiduePoly, f: &ResiduePoly, cap: u64) -> Option<u64> {
        let one = self.fq_rem(&self.fq_one(), f);
        let mut x = self.fq_rem(a, f);
        for k in 1..=cap {
            if x == one {
                return Some(k);
            }
            x = self.fqmod_mul(&x, a, f);
        }
        None
    }
}

/// Reciprocal polynomial g*(x) = x^deg(g) · g(1/x): coefficient reversal.
pub fn reciprocal(g: &RPoly) -> Result<RPoly> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut coeffs: Vec<GrElement> = g.coeffs.iter().rev().cloned().collect();
    while let Some(last) = coeffs.last() {
        if last.coeffs.iter().all(|&c| c == 0) {
            coeffs.pop();
        } else {
            break;
        }
    }
    Ok(RPoly { coeffs })
}

/// Does g* = u·g hold for some unit u?
pub fn is_self_reciprocal(ctx: &GaloisRingContext, g: &RPoly) -> bool {
    let Ok(gstar) = reciprocal(g) else { return false };
    if gstar.degree() != g.degree() {
        return false;
    }
    let lead = g.coeffs.last().unwrap();
    let Ok(lead_inv) = ctx.inv(lead) else { return false };
    let u = ctx.mul(gstar.coeffs.last().unwrap(), &lead_inv);
    if !ctx.is_unit(&u) {
        return false;
    }
    gstar == ctx.rp_mul_el(g, &u)
}

// ---- cyclotomic cosets ----

/// The orbit structure of multiplication by q on Z/n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloCoset {
    pub representative: u64,
    /// Orbit {i, iq, iq², …} mod n starting at the representative.
    pub members: Vec<u64>,
}

/// q-cyclotomic cosets modulo n, ordered by ascending representative.
pub fn cyclotomic_cosets(n: u64, q: u64) -> Result<Vec<CycloCoset>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let g = gcd_u64(n, q);
    if g != 1 {
        return Err(Error::NotCoprime { n, p: g });
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut x = i;
        loop {
            seen[x as usize] = true;
            members.push(x);
            x = x * q % n;
            if x == i {
                break;
            }
        }
        out.push(CycloCoset { representative: i, members });
    }
    Ok(out)
}

// ---- factorization of xⁿ − 1 ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Unity,
    SelfReciprocal,
    Pair,
}

#[derive(Debug, Clone)]
pub struct Factor {
    pub index: usize,
    pub kind: FactorKind,
    pub f: RPoly,
    /// Degree datum: deg f for Unity/SelfReciprocal, deg ρ for Pair.
    pub d: usize,
    pub rho: Option<RPoly>,
    pub rho_star: Option<RPoly>,
    /// One coset for Unity/SelfReciprocal, the two merged cosets for Pair.
    pub cosets: Vec<CycloCoset>,
}

#[derive(Debug, Clone)]
pub struct FactorProfile {
    pub ctx: GaloisRingContext,
    pub n: u64,
    pub factors: Vec<Factor>,
    /// Number of SelfReciprocal factors (indices 1..=r).
    pub r: usize,
    /// Number of Pair factors (indices r+1..=r+t).
    pub t: usize,
    /// Number of i in 0..=r with d_i = 1.
    pub lambda: usize,
}

/// Embedding of R = GR(p², m) into an extension GR(p², mκ), together with a
/// lookup for recognizing elements of the image.
pub(crate) struct Extension {
    pub big: GaloisRingContext,
    root: GrElement,
    back: HashMap<GrElement, GrElement>,
}

impl Extension {
    /// Build GR(p², mκ) ⊇ R with the image of R recognized via a root of
    /// the base modulus found by residue scan plus one Newton step.
    pub fn new(ctx: &GaloisRingContext, kappa: usize) -> Result<Extension> {
        let big = GaloisRingContext::new(ctx.p(), ctx.m() * kappa, None)?;
        let h: Vec<u32> = ctx.modulus().to_vec();
        // root of h mod p in the big residue field
        let mut root_res = None;
        for cand in big.residue_elements() {
            let mut acc = big.res_zero();
            for &c in h.iter().rev() {
                acc = big.res_mul(&acc, &cand);
                let mut sc = vec![0u32; big.m()];
                sc[0] = c % ctx.p();
                acc = big.res_add(&acc, &ResidueElement { coeffs: sc });
            }
            if big.res_is_zero(&acc) {
                root_res = Some(cand);
                break;
            }
        }
        let root_res = root_res.ok_or_else(|| {
            Error::InvalidParameter("base modulus has no root in the extension".into())
        })?;
        // Newton: r ← r − h(r)/h'(r)
        let eval = |x: &GrElement, poly: &[u32]| -> GrElement {
            let mut acc = big.zero();
            for &c in poly.iter().rev() {
                acc = big.mul(&acc, x);
                acc = big.add(&acc, &big.scalar(c));
            }
            acc
        };
        let mut hprime = Vec::with_capacity(h.len().saturating_sub(1));
        for (i, &c) in h.iter().enumerate().skip(1) {
            hprime.push(((i as u64 * c as u64) % big.p2() as u64) as u32);
        }
        let r0 = big.lift(&root_res);
        let hv = eval(&r0, &h);
        let hd = eval(&r0, &hprime);
        let root = big.sub(&r0, &big.mul(&hv, &big.inv(&hd)?));
        debug_assert!(big.is_zero(&eval(&root, &h)));

        let mut ext = Extension { big, root, back: HashMap::new() };
        for a in ctx.elements() {
            let image = ext.embed(&a);
            ext.back.insert(image, a);
        }
        Ok(ext)
    }

    pub fn embed(&self, a: &GrElement) -> GrElement {
        let mut acc = self.big.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.big.mul(&acc, &self.root);
            acc = self.big.add(&acc, &self.big.scalar(*c));
        }
        acc
    }

    /// Recognize an extension element as an element of the base ring.
    pub fn project(&self, a: &GrElement) -> Option<GrElement> {
        self.back.get(a).cloned()
    }
}

/// Multiplicative order of q modulo n.
pub(crate) fn order_mod(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    for k in 1..=n {
        if x == 1 {
            return k;
        }
        x = x * q % n;
    }
    unreachable!("q must be a unit mod n")
}

/// Classified factorization of xⁿ − 1 over R.
///
/// Minimal polynomials come from a primitive n-th root of unity ω in the
/// extension GR(p², mκ), κ the order of p^m mod n. Cosets are merged with
/// their negatives; the surviving classes are ordered Unity first, then
/// SelfReciprocal by ascending (degree, representative), then Pair by
/// ascending (degree, representative). Within a pair, ρ is the member whose
/// descending coefficient tuple is lexicographically smaller, a choice
/// intrinsic to the factors rather than to ω.
pub fn factor_unity(ctx: &GaloisRingContext, n: u64) -> Result<FactorProfile> {
    let q = ctx.q();
    let cosets = cyclotomic_cosets(n, q)?;
    let kappa = order_mod(q % n.max(1), n) as usize;
    let ext = Extension::new(ctx, kappa)?;
    let big = &ext.big;
    let zeta = big.primitive_unit();
    let omega = big.pow(&zeta, (big.q() - 1) / n);
    debug_assert_eq!(big.multiplicative_order(&omega), Some(n));

    // minimal polynomial over R of ω^rep for each coset
    let mut minpoly: HashMap<u64, RPoly> = HashMap::new();
    for coset in &cosets {
        let mut poly = big.rp_one();
        for &s in &coset.members {
            let root = big.pow(&omega, s);
            let lin = big.rp_from(vec![big.neg(&root), big.one()]);
            poly = big.rp_mul(&poly, &lin);
        }
        let mut coeffs = Vec::with_capacity(poly.coeffs.len());
        for c in &poly.coeffs {
            let r = ext.project(c).ok_or_else(|| {
                Error::InvalidParameter("minimal polynomial coefficient outside base ring".into())
            })?;
            coeffs.push(r);
        }
        minpoly.insert(coset.representative, ctx.rp_from(coeffs));
    }

    let coset_of = |v: u64| -> &CycloCoset {
        cosets.iter().find(|c| c.members.contains(&v)).unwrap()
    };

    let mut unity: Option<Factor> = None;
    let mut self_recip: Vec<Factor> = Vec::new();
    let mut pairs: Vec<Factor> = Vec::new();
    let mut done = vec![false; cosets.len()];

    for (ci, coset) in cosets.iter().enumerate() {
        if done[ci] {
            continue;
        }
        done[ci] = true;
        let rep = coset.representative;
        let neg_rep = (n - rep % n) % n;
        let partner = coset_of(neg_rep);
        let f = minpoly[&rep].clone();
        if partner.representative == rep {
            // self-paired coset
            let factor = Factor {
                index: 0,
                kind: if rep == 0 { FactorKind::Unity } else { FactorKind::SelfReciprocal },
                d: coset.members.len(),
                f,
                rho: None,
                rho_star: None,
                cosets: vec![coset.clone()],
            };
            if rep == 0 {
                unity = Some(factor);
            } else {
                self_recip.push(factor);
            }
        } else {
            let pj = cosets.iter().position(|c| c.representative == partner.representative).unwrap();
            done[pj] = true;
            let g = minpoly[&partner.representative].clone();
            // orientation intrinsic to the polynomials: ρ has the smaller
            // descending coefficient tuple
            let desc = |p: &RPoly| -> Vec<GrElement> { p.coeffs.iter().rev().cloned().collect() };
            let (rho, rho_star, c1, c2) = if desc(&f) <= desc(&g) {
                (f.clone(), g.clone(), coset.clone(), partner.clone())
            } else {
                (g.clone(), f.clone(), partner.clone(), coset.clone())
            };
            let d = rho.degree().unwrap();
            pairs.push(Factor {
                index: 0,
                kind: FactorKind::Pair,
                d,
                f: ctx.rp_mul(&rho, &rho_star),
                rho: Some(rho),
                rho_star: Some(rho_star),
                cosets: vec![c1, c2],
            });
        }
    }

    self_recip.sort_by_key(|f| (f.d, f.cosets[0].representative));
    pairs.sort_by_key(|f| {
        (f.d, f.cosets.iter().map(|c| c.representative).min().unwrap())
    });

    let mut factors = Vec::with_capacity(1 + self_recip.len() + pairs.len());
    factors.push(unity.expect("coset of 0 always present"));
    factors.extend(self_recip);
    factors.extend(pairs);
    for (i, f) in factors.iter_mut().enumerate() {
        f.index = i;
    }
    let r = factors.iter().filter(|f| f.kind == FactorKind::SelfReciprocal).count();
    let t = factors.iter().filter(|f| f.kind == FactorKind::Pair).count();
    let lambda = factors[..=r].iter().filter(|f| f.d == 1).count();

    // exact reconstruction check
    let mut prod = ctx.rp_one();
    for f in &factors {
        prod = ctx.rp_mul(&prod, &f.f);
    }
    assert_eq!(prod, ctx.rp_xn_minus_1(n), "factor product must equal x^n - 1");
    for f in &factors {
        if f.kind == FactorKind::Pair {
            let a = ctx.rp_residue(f.rho.as_ref().unwrap());
            let b = ctx.rp_residue(f.rho_star.as_ref().unwrap());
            let (g, _, _) = ctx.fq_xgcd(&a, &b);
            assert_eq!(g.degree(), Some(0), "pair members must be coprime mod p");
        }
    }

    Ok(FactorProfile { ctx: ctx.clone(), n, factors, r, t, lambda })
}

// ---- idempotents ----

/// The primary idempotents ε_0..ε_{r+t} of R[x]/⟨xⁿ−1⟩ and, for each Pair
/// factor, the pair idempotents (ε_{i,1}, ε_{i,2}) of R[x]/⟨f_i⟩.
#[derive(Debug, Clone)]
pub struct IdempotentFamily {
    pub n: u64,
    pub eps: Vec<RPoly>,
    /// Parallel to the factor list; Some for Pair factors.
    pub pair_eps: Vec<Option<(RPoly, RPoly)>>,
}

/// One idempotent-lifting step e ↦ 3e² − 2e³ computed modulo xⁿ − 1.
fn lift_idempotent_mod_xn1(ctx: &GaloisRingContext, e: &RPoly, n: u64) -> RPoly {
    let e2 = ctx.rp_mod_xn1(&ctx.rp_mul(e, e), n);
    let e3 = ctx.rp_mod_xn1(&ctx.rp_mul(&e2, e), n);
    ctx.rp_sub(&ctx.rp_mul_scalar(&e2, 3), &ctx.rp_mul_scalar(&e3, 2))
}

fn lift_idempotent_mod_f(ctx: &GaloisRingContext, e: &RPoly, f: &RPoly) -> RPoly {
    let e2 = ctx.polymod_mul(e, e, f);
    let e3 = ctx.polymod_mul(&e2, e, f);
    ctx.rp_rem(&ctx.rp_sub(&ctx.rp_mul_scalar(&e2, 3), &ctx.rp_mul_scalar(&e3, 2)), f)
}

pub fn primary_idempotents(profile: &FactorProfile) -> Result<IdempotentFamily> {
    let ctx = &profile.ctx;
    let n = profile.n;
    let fbars: Vec<ResiduePoly> = profile
        .factors
        .iter()
        .map(|f| ctx.rp_residue(&f.f))
        .collect();

    let mut eps = Vec::with_capacity(profile.factors.len());
    for (i, factor) in profile.factors.iter().enumerate() {
        // F̄_i = Π_{j≠i} f̄_j, Bezout over the residue field, then lift
        let mut fbig = ctx.fq_one();
        for (j, fb) in fbars.iter().enumerate() {
            if j != i {
                fbig = ctx.fq_mul(&fbig, fb);
            }
        }
        let (g, s, _) = ctx.fq_xgcd(&fbig, &fbars[i]);
        if g.degree() != Some(0) {
            return Err(Error::InternalBezoutFailure(factor.index));
        }
        let ginv = ctx.res_inv(&g.coeffs[0])?;
        let ubar = ctx.fq_mul_el(&s, &ginv);
        let ebar = ctx.fq_mod_xn1(&ctx.fq_mul(&ubar, &fbig), n);
        let e = lift_idempotent_mod_xn1(ctx, &ctx.rp_lift(&ebar), n);
        eps.push(e);
    }

    // verify the orthogonal idempotent identities exactly
    let one = ctx.rp_one();
    let mut total = ctx.rp_zero();
    for e in &eps {
        total = ctx.rp_add(&total, e);
    }
    if ctx.rp_mod_xn1(&total, n) != one {
        return Err(Error::InternalBezoutFailure(0));
    }
    for i in 0..eps.len() {
        for j in 0..eps.len() {
            let prod = ctx.rp_mod_xn1(&ctx.rp_mul(&eps[i], &eps[j]), n);
            let expect = if i == j { eps[i].clone() } else { ctx.rp_zero() };
            if prod != expect {
                return Err(Error::InternalBezoutFailure(i));
            }
        }
    }

    let mut pair_eps = Vec::with_capacity(profile.factors.len());
    for factor in &profile.factors {
        if factor.kind != FactorKind::Pair {
            pair_eps.push(None);
            continue;
        }
        let rho = factor.rho.as_ref().unwrap();
        let rho_star = factor.rho_star.as_ref().unwrap();
        let rbar = ctx.rp_residue(rho);
        let rsbar = ctx.rp_residue(rho_star);
        let (g, phi, _) = ctx.fq_xgcd(&rsbar, &rbar);
        if g.degree() != Some(0) {
            return Err(Error::InternalBezoutFailure(factor.index));
        }
        let ginv = ctx.res_inv(&g.coeffs[0])?;
        let phib = ctx.fq_mul_el(&phi, &ginv);
        let fbar = ctx.rp_residue(&factor.f);
        let e1bar = ctx.fq_rem(&ctx.fq_mul(&phib, &rsbar), &fbar);
        let e1 = lift_idempotent_mod_f(ctx, &ctx.rp_lift(&e1bar), &factor.f);
        let e2 = ctx.rp_rem(&ctx.rp_sub(&one, &e1), &factor.f);
        // e1 ≡ 1 mod ρ, 0 mod ρ*; orthogonality mod f
        if ctx.polymod_mul(&e1, &e1, &factor.f) != e1
            || !ctx.polymod_mul(&e1, &e2, &factor.f).is_zero()
        {
            return Err(Error::InternalBezoutFailure(factor.index));
        }
        pair_eps.push(Some((e1, e2)));
    }

    Ok(IdempotentFamily { n, eps, pair_eps })
}
