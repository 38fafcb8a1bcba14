//! Component algebras A_i = R[x]/⟨f_i⟩ attached to the factors of xⁿ − 1.
//!
//! Each component carries the involutive automorphism θ_i : b(x) ↦ b(x^{n−1})
//! and a distinguished unit ζ_i of maximal Teichmüller order. For
//! self-reciprocal factors of degree ≥ 2 the degree is even, A_i is a Galois
//! ring, and θ_i is the half-way power of the generalized Frobenius. For a
//! reciprocal pair f_i = ρ_i ρ_i*, A_i splits into two Galois rings glued by
//! the pair idempotents, and θ_i swaps the blocks.
//!
//! The solution sets that parameterize the skew-cyclic ideals downstream are
//! computed from their defining equations by exhaustive scan over the
//! relevant finite structures, never from closed-form exponent formulas, so
//! they are independent of the choice of ζ_i.

use crate::error::{Error, Result};
use crate::galois_ring::GaloisRingContext;
use crate::ring_poly::{FactorKind, FactorProfile, IdempotentFamily, RPoly, ResiduePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// deg f_i = 1: A_i ≅ R, θ_i is the identity.
    Linear,
    /// Self-reciprocal f_i of even degree ≥ 2.
    SelfReciprocal,
    /// f_i = ρ_i ρ_i* with coprime basic irreducible halves.
    ReciprocalPair,
}

#[derive(Debug, Clone)]
pub struct ComponentAlgebra {
    pub ctx: GaloisRingContext,
    pub index: usize,
    pub kind: ComponentKind,
    pub n: u64,
    pub f: RPoly,
    /// Degree datum: deg f_i for Linear/SelfReciprocal, deg ρ_i for a pair.
    pub d: usize,
    pub rho: Option<RPoly>,
    pub rho_star: Option<RPoly>,
    /// Pair idempotents (ε_{i,1}, ε_{i,2}) reduced mod f_i.
    pub eps1: Option<RPoly>,
    pub eps2: Option<RPoly>,
    /// Unit of multiplicative order p^{md_i} − 1; lives in A_i for
    /// Linear/SelfReciprocal and in R[x]/⟨ρ_i⟩ for a pair.
    pub zeta: RPoly,
    /// Pair only: ε_{i,1}(x)·ζ_i(x) mod f_i.
    pub zeta_embedded: Option<RPoly>,
    x_inv: RPoly,
    x_inv_bar: ResiduePoly,
    f_bar: ResiduePoly,
}

/// Parameter sets for the ideal classification of one component.
#[derive(Debug, Clone)]
pub enum SolutionSets {
    SelfReciprocal {
        /// Teichmüller units with w·θ(w) = 1; p^{md/2} + 1 of them.
        w_set: Vec<RPoly>,
        /// Residue solutions of θ̄(v) + v = 0; p^{md/2} of them.
        v_set: Vec<ResiduePoly>,
    },
    ReciprocalPair {
        /// {0} ∪ ε₁⟨ζ⟩ mod f, the first block's Teichmüller-like set.
        u1: Vec<RPoly>,
        k1: Vec<ResiduePoly>,
        k2: Vec<ResiduePoly>,
        /// One entry per w ∈ 𝒲; p^{md} − 1 of them, ascending by w.
        w_entries: Vec<WEntry>,
    },
}

#[derive(Debug, Clone)]
pub struct WEntry {
    pub w: RPoly,
    /// The block element u with w = u + θ(u)^{-1}.
    pub u: RPoly,
    /// Residue solutions of w̄·θ̄(v) + θ̄(w̄)·v = 0 in canonical form; p^{md} of them.
    pub v_set: Vec<ResiduePoly>,
}

impl SolutionSets {
    pub fn w_list(&self) -> Vec<RPoly> {
        match self {
            SolutionSets::SelfReciprocal { w_set, .. } => w_set.clone(),
            SolutionSets::ReciprocalPair { w_entries, .. } => {
                w_entries.iter().map(|e| e.w.clone()).collect()
            }
        }
    }
}

/// Classify and build the i-th component.
pub fn build_component(
    profile: &FactorProfile,
    idem: &IdempotentFamily,
    i: usize,
) -> Result<ComponentAlgebra> {
    let factor = profile
        .factors
        .get(i)
        .ok_or(Error::IndexOutOfRange(i))?;
    let ctx = profile.ctx.clone();
    let n = profile.n;
    let f = factor.f.clone();
    let f_bar = ctx.rp_residue(&f);
    let deg_f = f.degree().unwrap();
    let kind = match factor.kind {
        FactorKind::Pair => ComponentKind::ReciprocalPair,
        _ if deg_f == 1 => ComponentKind::Linear,
        _ => ComponentKind::SelfReciprocal,
    };
    if kind == ComponentKind::SelfReciprocal {
        assert!(factor.d % 2 == 0, "self-reciprocal degree >= 2 must be even");
    }
    let qd = (ctx.p() as u64).pow((ctx.m() * factor.d) as u32);

    let x = ctx.rp_x();
    let x_inv = if deg_f == 1 {
        // elements are constants; substitution is the identity
        ctx.polymod_pow(&x, n - 1, &f)
    } else {
        ctx.polymod_pow(&x, n - 1, &f)
    };
    let x_inv_bar = ctx.rp_residue(&x_inv);

    let (eps1, eps2) = match &idem.pair_eps[i] {
        Some((a, b)) => (Some(a.clone()), Some(b.clone())),
        None => (None, None),
    };

    let zeta = match kind {
        ComponentKind::Linear => ctx.rp_const(&ctx.primitive_unit()),
        ComponentKind::SelfReciprocal => find_zeta(&ctx, &f, factor.d, qd),
        ComponentKind::ReciprocalPair => {
            find_zeta(&ctx, factor.rho.as_ref().unwrap(), factor.d, qd)
        }
    };
    let zeta_embedded = if kind == ComponentKind::ReciprocalPair {
        Some(ctx.polymod_mul(eps1.as_ref().unwrap(), &zeta, &f))
    } else {
        None
    };

    let comp = ComponentAlgebra {
        ctx,
        index: i,
        kind,
        n,
        f,
        d: factor.d,
        rho: factor.rho.clone(),
        rho_star: factor.rho_star.clone(),
        eps1,
        eps2,
        zeta,
        zeta_embedded,
        x_inv,
        x_inv_bar,
        f_bar,
    };

    // structural sanity: θ is an involution, ζ has the advertised order,
    // and for a pair θ swaps the idempotents
    let xa = comp.ctx.rp_rem(&comp.ctx.rp_x(), &comp.f);
    assert_eq!(comp.a_theta(&comp.a_theta(&xa)), xa);
    match comp.kind {
        ComponentKind::ReciprocalPair => {
            let rho = comp.rho.as_ref().unwrap();
            assert_eq!(comp.ctx.polymod_order(&comp.zeta, rho, qd), Some(qd - 1));
            assert_eq!(
                comp.a_theta(comp.eps1.as_ref().unwrap()),
                comp.eps2.as_ref().unwrap().clone()
            );
        }
        _ => {
            assert_eq!(comp.ctx.polymod_order(&comp.zeta, &comp.f, qd), Some(qd - 1));
        }
    }
    Ok(comp)
}

/// Teichmüller lift of the lexicographically smallest primitive element of
/// F_{p^m}[x]/⟨modulus mod p⟩.
fn find_zeta(ctx: &GaloisRingContext, modulus: &RPoly, d: usize, qd: u64) -> RPoly {
    let mbar = ctx.rp_residue(modulus);
    for cand in enumerate_residue_polys(ctx, d) {
        if ctx.fqmod_order(&cand, &mbar, qd) == Some(qd - 1) {
            return ctx.polymod_pow(&ctx.rp_lift(&cand), qd, modulus);
        }
    }
    unreachable!("finite field always has a primitive element")
}

/// All residue polynomials of degree < d in ascending lexicographic order of
/// their padded coefficient vectors (constant coefficient most significant).
pub fn enumerate_residue_polys(ctx: &GaloisRingContext, d: usize) -> Vec<ResiduePoly> {
    let field = ctx.residue_elements();
    let mut idx = vec![0usize; d];
    let mut out = Vec::new();
    loop {
        let coeffs: Vec<_> = idx.iter().map(|&k| field[k].clone()).collect();
        out.push(ctx.fq_from(coeffs));
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < field.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Sort key: padded coefficient vector, flattened.
pub(crate) fn rp_sort_key(comp: &ComponentAlgebra, a: &RPoly) -> Vec<u32> {
    let width = comp.f.degree().unwrap();
    let mut key = Vec::with_capacity(width * comp.ctx.m());
    for k in 0..width {
        key.extend(comp.ctx.rp_coeff(a, k).coeffs.iter().copied());
    }
    key
}

pub(crate) fn fq_sort_key(comp: &ComponentAlgebra, a: &ResiduePoly) -> Vec<u32> {
    let width = comp.f.degree().unwrap();
    let mut key = Vec::with_capacity(width * comp.ctx.m());
    for k in 0..width {
        key.extend(comp.ctx.fq_coeff(a, k).coeffs.iter().copied());
    }
    key
}

impl ComponentAlgebra {
    /// p^{m d_i}, the order of the component's residue field (for a pair,
    /// of each of the two block fields).
    pub fn field_order(&self) -> u64 {
        (self.ctx.p() as u64).pow((self.ctx.m() * self.d) as u32)
    }

    /// log_p |A_i| = 2m·deg f_i.
    pub fn log_p_cardinality(&self) -> u32 {
        (2 * self.ctx.m() * self.f.degree().unwrap()) as u32
    }

    pub fn a_zero(&self) -> RPoly {
        self.ctx.rp_zero()
    }

    pub fn a_one(&self) -> RPoly {
        self.ctx.rp_rem(&self.ctx.rp_one(), &self.f)
    }

    pub fn a_add(&self, a: &RPoly, b: &RPoly) -> RPoly {
        self.ctx.rp_add(a, b)
    }

    pub fn a_sub(&self, a: &RPoly, b: &RPoly) -> RPoly {
        self.ctx.rp_sub(a, b)
    }

    pub fn a_neg(&self, a: &RPoly) -> RPoly {
        self.ctx.rp_neg(a)
    }

    pub fn a_mul(&self, a: &RPoly, b: &RPoly) -> RPoly {
        self.ctx.polymod_mul(a, b, &self.f)
    }

    pub fn a_pow(&self, a: &RPoly, e: u64) -> RPoly {
        self.ctx.polymod_pow(a, e, &self.f)
    }

    pub fn a_inv(&self, a: &RPoly) -> Result<RPoly> {
        self.ctx.polymod_inv(a, &self.f)
    }

    pub fn a_is_unit(&self, a: &RPoly) -> bool {
        let abar = self.ctx.rp_residue(a);
        let (g, _, _) = self.ctx.fq_xgcd(&abar, &self.f_bar);
        g.degree() == Some(0)
    }

    /// θ_i: substitute x ↦ x^{n−1} and reduce mod f_i.
    pub fn a_theta(&self, b: &RPoly) -> RPoly {
        let mut acc = self.ctx.rp_zero();
        for c in b.coeffs.iter().rev() {
            acc = self.ctx.polymod_mul(&acc, &self.x_inv, &self.f);
            acc = self.ctx.rp_add(&acc, &self.ctx.rp_const(c));
        }
        self.ctx.rp_rem(&acc, &self.f)
    }

    /// Generalized Frobenius of A_i over R on the Teichmüller expansion.
    pub fn a_frobenius(&self, b: &RPoly) -> RPoly {
        let (b0, b1) = self.a_teich_decompose(b);
        let e = self.ctx.p() as u64;
        let pm = e.pow(self.ctx.m() as u32);
        let t0 = self.a_pow(&b0, pm);
        let t1 = self.a_pow(&b1, pm);
        self.a_add(&t0, &self.ctx.rp_mul_scalar(&t1, self.ctx.p()))
    }

    /// Unique expansion b = b₀ + p·b₁ with b₀, b₁ fixed by x ↦ x^{p^{md}}.
    pub fn a_teich_decompose(&self, b: &RPoly) -> (RPoly, RPoly) {
        let qd = self.field_order();
        let b0 = self.a_pow(b, qd);
        let delta = self.a_sub(b, &b0);
        let r1 = self.div_p_residue(&delta);
        let b1 = self.a_pow(&self.ctx.rp_lift(&r1), qd);
        (b0, b1)
    }

    /// For an element all of whose coefficients lie in pR, the residue of
    /// the exact quotient by p.
    pub fn div_p_residue(&self, a: &RPoly) -> ResiduePoly {
        let p = self.ctx.p();
        let coeffs = a
            .coeffs
            .iter()
            .map(|c| {
                debug_assert!(c.coeffs.iter().all(|&x| x % p == 0));
                crate::galois_ring::ResidueElement {
                    coeffs: c.coeffs.iter().map(|&x| (x / p) % p).collect(),
                }
            })
            .collect();
        self.ctx.fq_from(coeffs)
    }

    pub fn a_residue(&self, a: &RPoly) -> ResiduePoly {
        self.ctx.rp_residue(a)
    }

    pub fn k_lift(&self, a: &ResiduePoly) -> RPoly {
        self.ctx.rp_lift(a)
    }

    // residue-level operations in K_i = F_{p^m}[x]/⟨f̄_i⟩

    pub fn k_zero(&self) -> ResiduePoly {
        self.ctx.fq_zero()
    }

    pub fn k_one(&self) -> ResiduePoly {
        self.ctx.fq_rem(&self.ctx.fq_one(), &self.f_bar)
    }

    pub fn k_add(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        self.ctx.fq_add(a, b)
    }

    pub fn k_sub(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        self.ctx.fq_sub(a, b)
    }

    pub fn k_neg(&self, a: &ResiduePoly) -> ResiduePoly {
        self.ctx.fq_neg(a)
    }

    pub fn k_mul(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        self.ctx.fqmod_mul(a, b, &self.f_bar)
    }

    pub fn k_pow(&self, a: &ResiduePoly, e: u64) -> ResiduePoly {
        self.ctx.fqmod_pow(a, e, &self.f_bar)
    }

    pub fn k_inv(&self, a: &ResiduePoly) -> Result<ResiduePoly> {
        self.ctx.fqmod_inv(a, &self.f_bar)
    }

    pub fn k_theta(&self, b: &ResiduePoly) -> ResiduePoly {
        let mut acc = self.ctx.fq_zero();
        for c in b.coeffs.iter().rev() {
            acc = self.ctx.fqmod_mul(&acc, &self.x_inv_bar, &self.f_bar);
            let mut cc = self.ctx.fq_zero();
            cc.coeffs = vec![c.clone()];
            let cc = self.ctx.fq_from(cc.coeffs);
            acc = self.ctx.fq_add(&acc, &cc);
        }
        self.ctx.fq_rem(&acc, &self.f_bar)
    }

    pub fn f_bar(&self) -> &ResiduePoly {
        &self.f_bar
    }

    /// Teichmüller units of A_i (SelfReciprocal/Linear): the cyclic group ⟨ζ⟩.
    pub fn teich_units(&self) -> Vec<RPoly> {
        assert!(self.kind != ComponentKind::ReciprocalPair);
        let qd = self.field_order();
        let mut out = Vec::with_capacity((qd - 1) as usize);
        let mut x = self.a_one();
        for _ in 0..qd - 1 {
            out.push(x.clone());
            x = self.a_mul(&x, &self.zeta);
        }
        out
    }
}

/// Compute the parameter sets of the component's ideal classification from
/// their defining equations. Errors with `KindMismatch` on degree-1
/// components, which need no such sets.
pub fn solution_sets(comp: &ComponentAlgebra) -> Result<SolutionSets> {
    match comp.kind {
        ComponentKind::Linear => Err(Error::KindMismatch("degree-1 component has no solution sets")),
        ComponentKind::SelfReciprocal => Ok(self_reciprocal_sets(comp)),
        ComponentKind::ReciprocalPair => Ok(pair_sets(comp)),
    }
}

fn self_reciprocal_sets(comp: &ComponentAlgebra) -> SolutionSets {
    let qd = comp.field_order();
    let one = comp.a_one();
    let mut w_set: Vec<RPoly> = comp
        .teich_units()
        .into_iter()
        .filter(|w| comp.a_mul(w, &comp.a_theta(w)) == one)
        .collect();
    w_set.sort_by_key(|w| rp_sort_key(comp, w));
    let half = (comp.ctx.p() as u64).pow((comp.ctx.m() * comp.d / 2) as u32);
    assert_eq!(w_set.len() as u64, half + 1, "unit solution count");

    let mut v_set: Vec<ResiduePoly> = enumerate_residue_polys(&comp.ctx, comp.d)
        .into_iter()
        .filter(|v| comp.k_add(&comp.k_theta(v), v).is_zero())
        .collect();
    v_set.sort_by_key(|v| fq_sort_key(comp, v));
    assert_eq!(v_set.len() as u64, half, "residue solution count");
    let _ = qd;

    SolutionSets::SelfReciprocal { w_set, v_set }
}

fn pair_sets(comp: &ComponentAlgebra) -> SolutionSets {
    let qd = comp.field_order();
    let eps1 = comp.eps1.as_ref().unwrap();
    let eps2 = comp.eps2.as_ref().unwrap();
    let zeta_emb = comp.zeta_embedded.as_ref().unwrap();
    let one = comp.a_one();

    // U₁ = {0} ∪ ε₁⟨ζ⟩
    let mut nonzero = Vec::with_capacity((qd - 1) as usize);
    let mut u = eps1.clone();
    for _ in 0..qd - 1 {
        nonzero.push(u.clone());
        u = comp.a_mul(&u, zeta_emb);
    }
    assert_eq!(u, *eps1, "ζ must have order p^{{md}} − 1 in the first block");
    let mut u1 = vec![comp.a_zero()];
    u1.extend(nonzero.iter().cloned());
    u1.sort_by_key(|x| rp_sort_key(comp, x));
    u1.dedup();
    assert_eq!(u1.len() as u64, qd, "|U₁| = p^{{md}}");

    let mut k1: Vec<ResiduePoly> = u1.iter().map(|x| comp.a_residue(x)).collect();
    k1.sort_by_key(|x| fq_sort_key(comp, x));
    k1.dedup();
    assert_eq!(k1.len() as u64, qd, "|K₁| = p^{{md}}");
    let mut k2: Vec<ResiduePoly> = k1.iter().map(|x| comp.k_theta(x)).collect();
    k2.sort_by_key(|x| fq_sort_key(comp, x));
    k2.dedup();
    assert_eq!(k2.len() as u64, qd, "|K₂| = p^{{md}}");

    let eps1_bar = comp.a_residue(eps1);
    let eps2_bar = comp.a_residue(eps2);

    let mut w_entries = Vec::with_capacity((qd - 1) as usize);
    for u in &nonzero {
        let t = comp.a_theta(u);
        // inverse inside the second block: invert t + ε₁ globally, cut to the block
        let tinv = comp.a_mul(&comp.a_inv(&comp.a_add(&t, eps1)).unwrap(), eps2);
        let w = comp.a_add(u, &tinv);
        assert_eq!(comp.a_mul(&w, &comp.a_theta(&w)), one, "w·θ(w) = 1");

        let ubar = comp.a_residue(u);
        let tbar = comp.k_theta(&ubar);
        let tbar_inv = comp.k_mul(
            &comp.k_inv(&comp.k_add(&tbar, &eps1_bar)).unwrap(),
            &eps2_bar,
        );
        let c = comp.k_mul(&tbar_inv, &tbar_inv);
        let wbar = comp.a_residue(&w);
        let theta_wbar = comp.k_theta(&wbar);
        let mut v_set: Vec<ResiduePoly> = k1
            .iter()
            .map(|v| comp.k_sub(v, &comp.k_mul(&c, &comp.k_theta(v))))
            .collect();
        v_set.sort_by_key(|x| fq_sort_key(comp, x));
        v_set.dedup();
        assert_eq!(v_set.len() as u64, qd, "|𝒱^{{(w)}}| = p^{{md}}");
        for v in &v_set {
            let lhs = comp.k_add(
                &comp.k_mul(&wbar, &comp.k_theta(v)),
                &comp.k_mul(&theta_wbar, v),
            );
            assert!(lhs.is_zero(), "defining equation of 𝒱^{{(w)}}");
        }
        w_entries.push(WEntry { w, u: u.clone(), v_set });
    }
    w_entries.sort_by_key(|e| rp_sort_key(comp, &e.w));
    assert_eq!(w_entries.len() as u64, qd - 1, "|𝒲| = p^{{md}} − 1");
    for pair in w_entries.windows(2) {
        assert_ne!(pair[0].w, pair[1].w, "w values must be distinct");
    }

    SolutionSets::ReciprocalPair { u1, k1, k2, w_entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_poly::{factor_unity, primary_idempotents};

    fn setup(p: u32, m: usize, n: u64) -> (FactorProfile, IdempotentFamily) {
        let ctx = GaloisRingContext::new(p, m, None).unwrap();
        let profile = factor_unity(&ctx, n).unwrap();
        let idem = primary_idempotents(&profile).unwrap();
        (profile, idem)
    }

    fn comps(profile: &FactorProfile, idem: &IdempotentFamily) -> Vec<ComponentAlgebra> {
        (0..profile.factors.len())
            .map(|i| build_component(profile, idem, i).unwrap())
            .collect()
    }

    #[test]
    fn z4_15_components_and_zeta_orders() {
        let (profile, idem) = setup(2, 1, 15);
        let c = comps(&profile, &idem);
        assert_eq!(c[0].kind, ComponentKind::Linear);
        assert_eq!(c[1].kind, ComponentKind::SelfReciprocal);
        assert_eq!(c[2].kind, ComponentKind::SelfReciprocal);
        assert_eq!(c[3].kind, ComponentKind::ReciprocalPair);

        let ctx = &profile.ctx;
        // canonical generator of A₁ is x itself, of order 3
        assert_eq!(c[1].zeta, ctx.rp_from_scalars(&[0, 1]));
        assert_eq!(ctx.polymod_order(&c[1].zeta, &c[1].f, 16), Some(3));

        // the stated elements have the stated orders, independent of which
        // generator the library picked
        let stated2 = ctx.rp_from_scalars(&[1, 1, 0, 2]);
        assert_eq!(ctx.polymod_order(&stated2, &c[2].f, 300), Some(15));
        let stated3 = ctx.rp_from_scalars(&[0, 0, 1]);
        assert_eq!(
            ctx.polymod_order(&stated3, c[3].rho.as_ref().unwrap(), 300),
            Some(15)
        );
        assert_eq!(ctx.polymod_order(&c[2].zeta, &c[2].f, 300), Some(15));
        assert_eq!(
            ctx.polymod_order(&c[3].zeta, c[3].rho.as_ref().unwrap(), 300),
            Some(15)
        );
    }

    #[test]
    fn theta_is_involution_exhaustive_a1() {
        let (profile, idem) = setup(2, 1, 15);
        let c1 = build_component(&profile, &idem, 1).unwrap();
        let ctx = &profile.ctx;
        // θ₁(x) = x^14 mod (1 + x + x²) = x² mod f = 3 + 3x
        let x = ctx.rp_from_scalars(&[0, 1]);
        assert_eq!(c1.a_theta(&x), ctx.rp_from_scalars(&[3, 3]));
        for a0 in 0..4u32 {
            for a1 in 0..4u32 {
                let a = ctx.rp_from_scalars(&[a0, a1]);
                assert_eq!(c1.a_theta(&c1.a_theta(&a)), a);
            }
        }
    }

    #[test]
    fn theta_swaps_pair_idempotents() {
        let (profile, idem) = setup(2, 1, 15);
        let c3 = build_component(&profile, &idem, 3).unwrap();
        assert_eq!(
            c3.a_theta(c3.eps1.as_ref().unwrap()),
            c3.eps2.as_ref().unwrap().clone()
        );
    }

    #[test]
    fn theta_equals_half_frobenius_on_self_reciprocal() {
        let (profile, idem) = setup(2, 1, 15);
        for i in [1usize, 2] {
            let c = build_component(&profile, &idem, i).unwrap();
            // θ = φ^{d/2}; check on all of A_i for i=1 and a sample for i=2
            let els: Vec<RPoly> = if i == 1 {
                let ctx = &profile.ctx;
                let mut v = Vec::new();
                for a0 in 0..4u32 {
                    for a1 in 0..4u32 {
                        v.push(ctx.rp_from_scalars(&[a0, a1]));
                    }
                }
                v
            } else {
                c.teich_units()
            };
            for a in els {
                let mut x = a.clone();
                for _ in 0..c.d / 2 {
                    x = c.a_frobenius(&x);
                }
                assert_eq!(x, c.a_theta(&a));
            }
        }
    }

    #[test]
    fn solution_sets_z4_15_match_worked_example() {
        let (profile, idem) = setup(2, 1, 15);
        let ctx = &profile.ctx;
        let c1 = build_component(&profile, &idem, 1).unwrap();
        let SolutionSets::SelfReciprocal { w_set, v_set } = solution_sets(&c1).unwrap() else {
            panic!()
        };
        let expect_w: Vec<RPoly> = [vec![1, 0], vec![0, 1], vec![3, 3]]
            .iter()
            .map(|v| ctx.rp_from_scalars(v))
            .collect();
        assert_eq!(
            w_set.iter().collect::<std::collections::BTreeSet<_>>(),
            expect_w.iter().collect()
        );
        let expect_v: Vec<ResiduePoly> = [vec![0u32], vec![1]]
            .iter()
            .map(|v| ctx.rp_residue(&ctx.rp_from_scalars(v)))
            .collect();
        assert_eq!(
            v_set.iter().collect::<std::collections::BTreeSet<_>>(),
            expect_v.iter().collect()
        );

        let c2 = build_component(&profile, &idem, 2).unwrap();
        let SolutionSets::SelfReciprocal { w_set, v_set } = solution_sets(&c2).unwrap() else {
            panic!()
        };
        let expect_w: Vec<RPoly> = [
            vec![1, 0, 0, 0],
            vec![3, 3, 3, 3],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
        ]
        .iter()
        .map(|v| ctx.rp_from_scalars(v))
        .collect();
        assert_eq!(
            w_set.iter().collect::<std::collections::BTreeSet<_>>(),
            expect_w.iter().collect()
        );
        let expect_v: Vec<ResiduePoly> = [
            vec![0u32, 0, 0, 0],
            vec![1, 0, 0, 0],
            vec![1, 0, 1, 1],
            vec![0, 0, 1, 1],
        ]
        .iter()
        .map(|v| ctx.rp_residue(&ctx.rp_from_scalars(v)))
        .collect();
        assert_eq!(
            v_set.iter().collect::<std::collections::BTreeSet<_>>(),
            expect_v.iter().collect()
        );
    }

    #[test]
    fn pair_solution_set_sizes_z4_15() {
        let (profile, idem) = setup(2, 1, 15);
        let c3 = build_component(&profile, &idem, 3).unwrap();
        let SolutionSets::ReciprocalPair { u1, k1, k2, w_entries } =
            solution_sets(&c3).unwrap()
        else {
            panic!()
        };
        assert_eq!(u1.len(), 16);
        assert_eq!(k1.len(), 16);
        assert_eq!(k2.len(), 16);
        assert_eq!(w_entries.len(), 15);
        for e in &w_entries {
            assert_eq!(e.v_set.len(), 16);
        }
    }

    #[test]
    fn solution_sets_are_generator_independent() {
        let (profile, idem) = setup(2, 1, 15);
        for i in [1usize, 2] {
            let c = build_component(&profile, &idem, i).unwrap();
            let s1 = solution_sets(&c).unwrap();
            // replace ζ by another primitive unit (its square generates the
            // same group only when the order is coprime to 2; use ζ^k for the
            // smallest k > 1 coprime to the group order)
            let qd = c.field_order();
            let k = (2..qd).find(|k| num_gcd(*k, qd - 1) == 1).unwrap();
            let mut c2 = c.clone();
            c2.zeta = c.a_pow(&c.zeta, k);
            let s2 = solution_sets(&c2).unwrap();
            match (s1, s2) {
                (
                    SolutionSets::SelfReciprocal { w_set: w1, v_set: v1 },
                    SolutionSets::SelfReciprocal { w_set: w2, v_set: v2 },
                ) => {
                    assert_eq!(w1, w2);
                    assert_eq!(v1, v2);
                }
                _ => panic!(),
            }
        }
        // pair component: re-pick ζ as a different power inside Υ₁
        let c3 = build_component(&profile, &idem, 3).unwrap();
        let s1 = solution_sets(&c3).unwrap();
        let qd = c3.field_order();
        let k = (2..qd).find(|k| num_gcd(*k, qd - 1) == 1).unwrap();
        let mut c3b = c3.clone();
        c3b.zeta = profile
            .ctx
            .polymod_pow(&c3.zeta, k, c3.rho.as_ref().unwrap());
        c3b.zeta_embedded = Some(profile.ctx.polymod_mul(
            c3b.eps1.as_ref().unwrap(),
            &c3b.zeta,
            &c3b.f,
        ));
        let s2 = solution_sets(&c3b).unwrap();
        match (s1, s2) {
            (
                SolutionSets::ReciprocalPair { u1: a1, k1: b1, k2: d1, w_entries: e1 },
                SolutionSets::ReciprocalPair { u1: a2, k1: b2, k2: d2, w_entries: e2 },
            ) => {
                assert_eq!(a1, a2);
                assert_eq!(b1, b2);
                assert_eq!(d1, d2);
                let w1: Vec<_> = e1.iter().map(|e| e.w.clone()).collect();
                let w2: Vec<_> = e2.iter().map(|e| e.w.clone()).collect();
                assert_eq!(w1, w2);
                for (x, y) in e1.iter().zip(e2.iter()) {
                    assert_eq!(x.v_set, y.v_set);
                }
            }
            _ => panic!(),
        }
    }

    fn num_gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }

    #[test]
    fn solution_sets_sizes_on_grid() {
        for (p, m, n) in [(2u32, 1usize, 7u64), (3, 1, 4), (2, 2, 5), (5, 1, 3)] {
            let (profile, idem) = setup(p, m, n);
            for i in 0..profile.factors.len() {
                let c = build_component(&profile, &idem, i).unwrap();
                let half = (p as u64).pow((m * c.d) as u32 / 2);
                let qd = c.field_order();
                match c.kind {
                    ComponentKind::Linear => {
                        assert!(matches!(solution_sets(&c), Err(Error::KindMismatch(_))));
                    }
                    ComponentKind::SelfReciprocal => {
                        let SolutionSets::SelfReciprocal { w_set, v_set } =
                            solution_sets(&c).unwrap()
                        else {
                            panic!()
                        };
                        assert_eq!(w_set.len() as u64, half + 1);
                        assert_eq!(v_set.len() as u64, half);
                    }
                    ComponentKind::ReciprocalPair => {
                        let SolutionSets::ReciprocalPair { u1, k1, k2, w_entries } =
                            solution_sets(&c).unwrap()
                        else {
                            panic!()
                        };
                        assert_eq!(u1.len() as u64, qd);
                        assert_eq!(k1.len() as u64, qd);
                        assert_eq!(k2.len() as u64, qd);
                        assert_eq!(w_entries.len() as u64, qd - 1);
                        for e in &w_entries {
                            assert_eq!(e.v_set.len() as u64, qd);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_range_component() {
        let (profile, idem) = setup(2, 1, 7);
        assert!(matches!(
            build_component(&profile, &idem, 99),
            Err(Error::IndexOutOfRange(99))
        ));
    }
}
