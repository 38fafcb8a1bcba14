//! Exhaustive distance computation and independent brute-force oracles.
//!
//! Minimum Hamming and Lee distances come from a full scan of the codeword
//! space (Lee weight min(a, p²−a) per symbol is defined only over Z_{p²},
//! i.e. m = 1). Duality is verified directly: vanishing inner products of
//! the spanning rows plus the cardinality law |C|·|C^⊥| = |R|^{2n}.
//!
//! For small components the skew quotient rings R_i = A_i[y;θ_i]/⟨y²−1⟩ and
//! their residue counterparts Γ_i = K_i[y;θ̄_i]/⟨y²−1⟩ are materialized
//! element by element, and the full left-ideal lattice is recovered by brute
//! force — either scanning all subsets (tiny rings) or closing the family of
//! principal left ideals under pairwise sums. These lattices are the
//! independent check on the symbolic enumeration.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::code_builder::{scan_words, LinearCode};
use crate::component_algebra::ComponentAlgebra;
use crate::error::{Error, Result};
use crate::galois_ring::GrElement;
use crate::ideal_enumeration::{IdealCase, IdealDescriptor};
use crate::ring_poly::{RPoly, ResiduePoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightReport {
    /// Minimum Hamming weight over nonzero codewords; 0 for the zero code.
    pub d_hamming: u32,
    /// Minimum Lee weight, when requested (m = 1 only).
    pub d_lee: Option<u32>,
    /// Coefficient tuples visited by the scan.
    pub words_scanned: u64,
}

/// Exhaustive minimum-distance scan.
pub fn min_distances(code: &LinearCode, cap: u64, lee: bool) -> Result<WeightReport> {
    let ctx = &code.ctx;
    if lee && ctx.m() != 1 {
        return Err(Error::LeeUndefined(ctx.m()));
    }
    if code.cardinality > BigUint::from(cap) {
        return Err(Error::TooLarge {
            what: "code",
            size: code.cardinality.to_string(),
            cap: cap.to_string(),
        });
    }
    let p2 = ctx.p2();
    let width = 2 * code.n as usize;
    let mut dh = u32::MAX;
    let mut dl = u32::MAX;
    let scanned = scan_words(ctx, &code.rows, width, cap.saturating_mul(1024), |w| {
        let mut h = 0u32;
        let mut l = 0u32;
        for c in w {
            if !ctx.is_zero(c) {
                h += 1;
            }
            if lee {
                let a = c.coeffs[0];
                l += a.min(p2 - a);
            }
        }
        if h > 0 {
            dh = dh.min(h);
            if lee {
                dl = dl.min(l);
            }
        }
    })?;
    Ok(WeightReport {
        d_hamming: if dh == u32::MAX { 0 } else { dh },
        d_lee: if lee {
            Some(if dl == u32::MAX { 0 } else { dl })
        } else {
            None
        },
        words_scanned: scanned,
    })
}

/// Lee weight of a symbol of Z_{p²}.
pub fn lee_weight(p2: u32, a: u32) -> u32 {
    let a = a % p2;
    a.min(p2 - a)
}

/// All pairwise generator-row inner products vanish and the cardinalities
/// multiply to |R|^{2n}.
pub fn verify_duality(code: &LinearCode, dual: &LinearCode) -> bool {
    let ctx = &code.ctx;
    for a in &code.rows {
        for b in &dual.rows {
            let mut acc = ctx.zero();
            for (x, y) in a.iter().zip(b) {
                acc = ctx.add(&acc, &ctx.mul(x, y));
            }
            if !ctx.is_zero(&acc) {
                return false;
            }
        }
    }
    let full = BigUint::from(ctx.p()).pow(2 * ctx.m() as u32 * 2 * code.n as u32);
    &code.cardinality * &dual.cardinality == full
}

// ---- finite skew quotient rings, materialized ----

/// Element b₀ + b₁·y of a skew quotient ring, as the pair (b₀, b₁).
pub type SkewElem = (RPoly, RPoly);

/// Element of the residue-level ring Γ_i.
pub type GammaElem = (ResiduePoly, ResiduePoly);

/// What a brute-force lattice search needs from a finite skew quotient ring.
trait SkewRingOps {
    type El: Clone + Ord + Eq + std::hash::Hash;
    fn zero(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// x and y as ring elements.
    fn x(&self) -> Self::El;
    fn y(&self) -> Self::El;
    /// The scalar subring, embedded.
    fn scalars(&self) -> Vec<Self::El>;
    fn deg(&self) -> usize;
    fn all_elements(&self) -> Vec<Self::El>;
}

struct SkewRing<'a> {
    comp: &'a ComponentAlgebra,
}

impl SkewRingOps for SkewRing<'_> {
    type El = SkewElem;

    fn zero(&self) -> SkewElem {
        (self.comp.a_zero(), self.comp.a_zero())
    }

    fn add(&self, a: &SkewElem, b: &SkewElem) -> SkewElem {
        (self.comp.a_add(&a.0, &b.0), self.comp.a_add(&a.1, &b.1))
    }

    fn mul(&self, a: &SkewElem, b: &SkewElem) -> SkewElem {
        // (a₀ + a₁y)(b₀ + b₁y) = a₀b₀ + a₁θ(b₁) + (a₀b₁ + a₁θ(b₀))y
        let c = self.comp;
        let t0 = c.a_add(&c.a_mul(&a.0, &b.0), &c.a_mul(&a.1, &c.a_theta(&b.1)));
        let t1 = c.a_add(&c.a_mul(&a.0, &b.1), &c.a_mul(&a.1, &c.a_theta(&b.0)));
        (t0, t1)
    }

    fn x(&self) -> SkewElem {
        (
            self.comp.ctx.rp_rem(&self.comp.ctx.rp_x(), &self.comp.f),
            self.comp.a_zero(),
        )
    }

    fn y(&self) -> SkewElem {
        (self.comp.a_zero(), self.comp.a_one())
    }

    fn scalars(&self) -> Vec<SkewElem> {
        self.comp
            .ctx
            .elements()
            .into_iter()
            .map(|c| (self.comp.ctx.rp_const(&c), self.comp.a_zero()))
            .collect()
    }

    fn deg(&self) -> usize {
        self.comp.f.degree().unwrap()
    }

    fn all_elements(&self) -> Vec<SkewElem> {
        let halves = a_elements(self.comp);
        let mut out = Vec::with_capacity(halves.len() * halves.len());
        for b0 in &halves {
            for b1 in &halves {
                out.push((b0.clone(), b1.clone()));
            }
        }
        out
    }
}

struct GammaRing<'a> {
    comp: &'a ComponentAlgebra,
}

impl SkewRingOps for GammaRing<'_> {
    type El = GammaElem;

    fn zero(&self) -> GammaElem {
        (self.comp.k_zero(), self.comp.k_zero())
    }

    fn add(&self, a: &GammaElem, b: &GammaElem) -> GammaElem {
        (self.comp.k_add(&a.0, &b.0), self.comp.k_add(&a.1, &b.1))
    }

    fn mul(&self, a: &GammaElem, b: &GammaElem) -> GammaElem {
        let c = self.comp;
        let t0 = c.k_add(&c.k_mul(&a.0, &b.0), &c.k_mul(&a.1, &c.k_theta(&b.1)));
        let t1 = c.k_add(&c.k_mul(&a.0, &b.1), &c.k_mul(&a.1, &c.k_theta(&b.0)));
        (t0, t1)
    }

    fn x(&self) -> GammaElem {
        let ctx = &self.comp.ctx;
        let xbar = ctx.rp_residue(&ctx.rp_x());
        (ctx.fq_rem(&xbar, self.comp.f_bar()), self.comp.k_zero())
    }

    fn y(&self) -> GammaElem {
        (self.comp.k_zero(), self.comp.k_one())
    }

    fn scalars(&self) -> Vec<GammaElem> {
        self.comp
            .ctx
            .residue_elements()
            .into_iter()
            .map(|c| (self.comp.ctx.fq_from(vec![c]), self.comp.k_zero()))
            .collect()
    }

    fn deg(&self) -> usize {
        self.comp.f.degree().unwrap()
    }

    fn all_elements(&self) -> Vec<GammaElem> {
        let halves = crate::component_algebra::enumerate_residue_polys(
            &self.comp.ctx,
            self.comp.f.degree().unwrap(),
        );
        let mut out = Vec::with_capacity(halves.len() * halves.len());
        for b0 in &halves {
            for b1 in &halves {
                out.push((b0.clone(), b1.clone()));
            }
        }
        out
    }
}

/// All elements of A_i as reduced polynomials.
pub fn a_elements(comp: &ComponentAlgebra) -> Vec<RPoly> {
    let deg = comp.f.degree().unwrap();
    let base = comp.ctx.elements();
    let mut idx = vec![0usize; deg];
    let mut out = Vec::new();
    loop {
        let coeffs: Vec<GrElement> = idx.iter().map(|&k| base[k].clone()).collect();
        out.push(comp.ctx.rp_from(coeffs));
        let mut k = deg;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < base.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Left ideal generated by `gens`: the scalar span of the monomial multiples
/// x^k·g and x^k·y·g, closed under addition.
fn left_ideal_span<R: SkewRingOps>(
    ring: &R,
    gens: &[R::El],
    cap: usize,
) -> Result<BTreeSet<R::El>> {
    let mut vectors = Vec::new();
    for g in gens {
        let mut xg = g.clone();
        let mut xyg = ring.mul(&ring.y(), g);
        for _ in 0..ring.deg() {
            vectors.push(xg.clone());
            vectors.push(xyg.clone());
            xg = ring.mul(&ring.x(), &xg);
            xyg = ring.mul(&ring.x(), &xyg);
        }
    }
    let scalars = ring.scalars();
    let mut set: HashSet<R::El> = HashSet::new();
    set.insert(ring.zero());
    for v in &vectors {
        let mut next = HashSet::with_capacity(set.len());
        for c in &scalars {
            let cv = ring.mul(c, v);
            for s in &set {
                next.insert(ring.add(s, &cv));
            }
            if next.len() > cap {
                return Err(Error::TooLarge {
                    what: "materialized ideal",
                    size: format!(">{}", cap),
                    cap: cap.to_string(),
                });
            }
        }
        set = next;
    }
    Ok(set.into_iter().collect())
}

fn is_left_ideal<R: SkewRingOps>(ring: &R, all: &[R::El], set: &BTreeSet<R::El>) -> bool {
    if !set.contains(&ring.zero()) {
        return false;
    }
    for a in set {
        for b in set {
            if !set.contains(&ring.add(a, b)) {
                return false;
            }
        }
        for r in all {
            if !set.contains(&ring.mul(r, a)) {
                return false;
            }
        }
    }
    true
}

/// Full left-ideal lattice by closing the principal ideals under sums.
fn all_left_ideals<R: SkewRingOps>(ring: &R, cap: usize) -> Result<Vec<BTreeSet<R::El>>> {
    let all = ring.all_elements();
    if all.len() > cap {
        return Err(Error::TooLarge {
            what: "skew ring",
            size: all.len().to_string(),
            cap: cap.to_string(),
        });
    }
    let mut family: BTreeSet<BTreeSet<R::El>> = BTreeSet::new();
    for alpha in &all {
        family.insert(left_ideal_span(ring, std::slice::from_ref(alpha), all.len())?);
    }
    loop {
        let snapshot: Vec<BTreeSet<R::El>> = family.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                // sum of two additive subgroups
                let mut sum = BTreeSet::new();
                for a in &snapshot[i] {
                    for b in &snapshot[j] {
                        sum.insert(ring.add(a, b));
                    }
                }
                if family.insert(sum) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(family.into_iter().collect())
}

/// Exhaustive subset scan, feasible only for tiny rings (|R_i| ≤ 16).
fn all_left_ideals_subset_scan<R: SkewRingOps>(ring: &R) -> Result<Vec<BTreeSet<R::El>>> {
    let all = ring.all_elements();
    let k = all.len();
    if k > 16 {
        return Err(Error::TooLarge {
            what: "subset scan",
            size: k.to_string(),
            cap: "16".to_string(),
        });
    }
    let index = |e: &R::El| all.iter().position(|x| x == e).unwrap();
    let zero_idx = index(&ring.zero());
    let mut add_t = vec![vec![0usize; k]; k];
    let mut mul_t = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            add_t[i][j] = index(&ring.add(&all[i], &all[j]));
            mul_t[i][j] = index(&ring.mul(&all[i], &all[j]));
        }
    }
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1u32 << k) {
        if mask & (1 << zero_idx) == 0 {
            continue;
        }
        let members: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        for &i in &members {
            for &j in &members {
                if mask & (1 << add_t[i][j]) == 0 {
                    continue 'mask;
                }
            }
            for row in &mul_t {
                if mask & (1 << row[i]) == 0 {
                    continue 'mask;
                }
            }
        }
        out.push(members.into_iter().map(|i| all[i].clone()).collect());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForceStrategy {
    /// Test every subset for subgroup and left-multiplication closure.
    SubsetScan,
    /// Principal left ideals closed under pairwise sums.
    CyclicClosure,
    /// Subset scan when |R_i| ≤ 16, cyclic closure otherwise.
    Auto,
}

/// Default element-count cap for brute-force lattices.
pub const DEFAULT_RING_CAP: usize = 1 << 16;

/// The complete left-ideal lattice of R_i as materialized element sets.
pub fn brute_force_ideals(
    comp: &ComponentAlgebra,
    strategy: BruteForceStrategy,
    cap: usize,
) -> Result<Vec<BTreeSet<SkewElem>>> {
    let ring = SkewRing { comp };
    let size = ring.all_elements().len();
    let ideals = match strategy {
        BruteForceStrategy::SubsetScan => all_left_ideals_subset_scan(&ring)?,
        BruteForceStrategy::CyclicClosure => all_left_ideals(&ring, cap)?,
        BruteForceStrategy::Auto => {
            if size <= 16 {
                all_left_ideals_subset_scan(&ring)?
            } else {
                all_left_ideals(&ring, cap)?
            }
        }
    };
    // sanity: every member really is a left ideal (cheap at these sizes)
    if size <= 256 {
        let all = ring.all_elements();
        for ideal in &ideals {
            debug_assert!(is_left_ideal(&ring, &all, ideal));
        }
    }
    Ok(ideals)
}

/// The left-ideal lattice of the residue ring Γ_i = K_i[y;θ̄_i]/⟨y²−1⟩.
pub fn brute_force_residue_ideals(
    comp: &ComponentAlgebra,
    cap: usize,
) -> Result<Vec<BTreeSet<GammaElem>>> {
    let ring = GammaRing { comp };
    all_left_ideals(&ring, cap)
}

/// Generator elements of a descriptor, as elements of R_i.
pub fn descriptor_generators(comp: &ComponentAlgebra, desc: &IdealDescriptor) -> Vec<SkewElem> {
    use IdealCase::*;
    let ctx = &comp.ctx;
    let one = comp.a_one();
    let zero = comp.a_zero();
    let pe = ctx.rp_mul_scalar(&one, ctx.p());
    let neg_one = comp.a_neg(&one);
    match &desc.case {
        Zero => vec![],
        Full => vec![(one.clone(), zero)],
        PScalar => vec![(pe.clone(), zero)],
        PYPlusOne => vec![(pe.clone(), pe.clone())],
        PYMinusOne => vec![(ctx.rp_mul_scalar(&neg_one, ctx.p()), pe.clone())],
        YPlusOne => vec![(one.clone(), one.clone())],
        YMinusOne => vec![(neg_one, one.clone())],
        YPlusOnePlusP => vec![(one.clone(), one.clone()), (pe.clone(), zero)],
        YMinusOnePlusP => vec![(neg_one, one.clone()), (pe.clone(), zero)],
        YMinusOnePlus2u { u } => {
            let w = ctx.rp_const(&ctx.add(&ctx.neg(&ctx.one()), &ctx.mul_scalar(u, ctx.p())));
            vec![(w, one.clone())]
        }
        PWPlusY { w } => vec![(ctx.rp_mul_scalar(w, ctx.p()), pe.clone())],
        WThetaPlusY { w, theta } => {
            let g = crate::ideal_enumeration::cyclic_generator(comp, w, theta);
            vec![(g, one.clone())]
        }
        WPlusYPlusP { w } => vec![(w.clone(), one.clone()), (pe.clone(), zero)],
        PEps { j } => {
            let e = if *j == 1 { comp.eps1.as_ref() } else { comp.eps2.as_ref() };
            vec![(ctx.rp_mul_scalar(e.unwrap(), ctx.p()), zero)]
        }
        EpsPlusP { j } => {
            let e = if *j == 1 { comp.eps1.as_ref() } else { comp.eps2.as_ref() };
            vec![(e.unwrap().clone(), zero.clone()), (pe.clone(), zero)]
        }
        EpsPlusPBy { j, b } => {
            let e = if *j == 1 { comp.eps1.as_ref() } else { comp.eps2.as_ref() };
            let bl = comp.k_lift(b);
            vec![(e.unwrap().clone(), ctx.rp_mul_scalar(&bl, ctx.p()))]
        }
    }
}

/// Materialize the left ideal named by a descriptor.
pub fn materialize_ideal(
    comp: &ComponentAlgebra,
    desc: &IdealDescriptor,
    cap: usize,
) -> Result<BTreeSet<SkewElem>> {
    let ring = SkewRing { comp };
    let gens = descriptor_generators(comp, desc);
    left_ideal_span(&ring, &gens, cap)
}

/// Minimum A_i-Hamming weight of a materialized ideal (0, 1 or 2).
pub fn ideal_min_weight(set: &BTreeSet<SkewElem>) -> u8 {
    let mut best = 0u8;
    for (b0, b1) in set {
        let w = (!b0.is_zero()) as u8 + (!b1.is_zero()) as u8;
        if w > 0 && (best == 0 || w < best) {
            best = w;
        }
    }
    best
}

/// Closure of a materialized set under left multiplication by y.
pub fn closed_under_y(comp: &ComponentAlgebra, set: &BTreeSet<SkewElem>) -> bool {
    set.iter().all(|(b0, b1)| {
        let y_mult = (comp.a_theta(b1), comp.a_theta(b0));
        set.contains(&y_mult)
    })
}
