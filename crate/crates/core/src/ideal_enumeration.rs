//! Symbolic enumeration of the left ideals of R_i = A_i[y;θ_i]/⟨y²−1⟩.
//!
//! Ideals are named by finitely parameterized descriptors, never materialized
//! here; parameters are drawn from the component's solution sets, so
//! descriptor equality is structural and enumeration of millions of codes
//! stays cheap. Cardinalities and minimum A_i-Hamming weights come from the
//! classification tables; duals are computed descriptor-to-descriptor and
//! `dual_descriptor` is an involution.
//!
//! Case vocabulary (one name per generator shape, shared across kinds):
//!
//! * `zero`, `full`, `p_scalar` — {0}, R_i, R_i·p;
//! * `p_y_plus_1`, `p_y_minus_1`, `y_plus_1`, `y_minus_1`,
//!   `y_plus_1_plus_p`, `y_minus_1_plus_p`, `y_minus_1_plus_2u` — the
//!   degree-1 cases (for p = 2 only the `minus` variants are distinct and
//!   the last carries a Teichmüller parameter u);
//! * `p_w_plus_y`, `w_theta_plus_y`, `w_plus_y_plus_p` — unit-parameterized
//!   cases of the higher-degree components;
//! * `p_eps`, `eps_plus_p`, `eps_plus_p_by` — block cases of a reciprocal
//!   pair (j ∈ {1, 2}, b in the block residue field).

use num_bigint::BigUint;

use crate::component_algebra::{ComponentAlgebra, ComponentKind, SolutionSets, WEntry};
use crate::error::{Error, Result};
use crate::galois_ring::GrElement;
use crate::ring_poly::{FactorKind, FactorProfile, RPoly, ResiduePoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealCase {
    Zero,
    /// R_i itself (p⁰·I₂).
    Full,
    /// R_i·p.
    PScalar,
    PYPlusOne,
    PYMinusOne,
    YPlusOne,
    YMinusOne,
    YPlusOnePlusP,
    YMinusOnePlusP,
    /// R_i((y−1) + pu) for a Teichmüller representative u (p = 2 only).
    YMinusOnePlus2u { u: GrElement },
    /// R_i·p(w + y).
    PWPlusY { w: RPoly },
    /// R_i(w(1+pθ) + y) on self-reciprocal components,
    /// R_i(w + pθ + y) on reciprocal pairs.
    WThetaPlusY { w: RPoly, theta: ResiduePoly },
    /// R_i(w + y) + R_i·p.
    WPlusYPlusP { w: RPoly },
    /// R_i·p·ε_{i,j}.
    PEps { j: u8 },
    /// R_i·ε_{i,j} + R_i·p.
    EpsPlusP { j: u8 },
    /// R_i(ε_{i,j} + p·b·y) with b in the j-th block residue field.
    EpsPlusPBy { j: u8, b: ResiduePoly },
}

impl IdealCase {
    pub fn name(&self) -> &'static str {
        match self {
            IdealCase::Zero => "zero",
            IdealCase::Full => "full",
            IdealCase::PScalar => "p_scalar",
            IdealCase::PYPlusOne => "p_y_plus_1",
            IdealCase::PYMinusOne => "p_y_minus_1",
            IdealCase::YPlusOne => "y_plus_1",
            IdealCase::YMinusOne => "y_minus_1",
            IdealCase::YPlusOnePlusP => "y_plus_1_plus_p",
            IdealCase::YMinusOnePlusP => "y_minus_1_plus_p",
            IdealCase::YMinusOnePlus2u { .. } => "y_minus_1_plus_2u",
            IdealCase::PWPlusY { .. } => "p_w_plus_y",
            IdealCase::WThetaPlusY { .. } => "w_theta_plus_y",
            IdealCase::WPlusYPlusP { .. } => "w_plus_y_plus_p",
            IdealCase::PEps { .. } => "p_eps",
            IdealCase::EpsPlusP { .. } => "eps_plus_p",
            IdealCase::EpsPlusPBy { .. } => "eps_plus_p_by",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealDescriptor {
    pub component: usize,
    pub case: IdealCase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealInfo {
    pub cardinality: BigUint,
    /// Minimum A_i-Hamming weight of the ideal as a length-2 code (0, 1 or 2).
    pub min_weight_d: u8,
}

fn p_pow(p: u32, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

/// Cardinality and minimum-weight datum of one descriptor, from the
/// classification tables.
pub fn ideal_info(comp: &ComponentAlgebra, case: &IdealCase) -> IdealInfo {
    let p = comp.ctx.p();
    let m = comp.ctx.m() as u32;
    let md = m * comp.d as u32;
    let (card, d) = match comp.kind {
        ComponentKind::Linear => match case {
            IdealCase::Zero => (BigUint::from(1u32), 0),
            IdealCase::Full => (p_pow(p, 4 * m), 1),
            IdealCase::PScalar => (p_pow(p, 2 * m), 1),
            IdealCase::PYPlusOne | IdealCase::PYMinusOne => (p_pow(p, m), 2),
            IdealCase::YPlusOne | IdealCase::YMinusOne => (p_pow(p, 2 * m), 2),
            IdealCase::YPlusOnePlusP | IdealCase::YMinusOnePlusP => (p_pow(p, 3 * m), 1),
            IdealCase::YMinusOnePlus2u { .. } => (p_pow(p, 2 * m), 2),
            _ => unreachable!("case not defined for degree-1 components"),
        },
        ComponentKind::SelfReciprocal => match case {
            IdealCase::Zero => (BigUint::from(1u32), 0),
            IdealCase::Full => (p_pow(p, 4 * md), 1),
            IdealCase::PScalar => (p_pow(p, 2 * md), 1),
            IdealCase::PWPlusY { .. } => (p_pow(p, md), 2),
            IdealCase::WThetaPlusY { .. } => (p_pow(p, 2 * md), 2),
            IdealCase::WPlusYPlusP { .. } => (p_pow(p, 3 * md), 1),
            _ => unreachable!("case not defined for self-reciprocal components"),
        },
        ComponentKind::ReciprocalPair => match case {
            IdealCase::Zero => (BigUint::from(1u32), 0),
            IdealCase::Full => (p_pow(p, 8 * md), 1),
            IdealCase::PScalar => (p_pow(p, 4 * md), 1),
            IdealCase::PEps { .. } => (p_pow(p, 2 * md), 1),
            IdealCase::PWPlusY { .. } => (p_pow(p, 2 * md), 2),
            IdealCase::EpsPlusP { .. } => (p_pow(p, 6 * md), 1),
            IdealCase::EpsPlusPBy { .. } => (p_pow(p, 4 * md), 1),
            IdealCase::WPlusYPlusP { .. } => (p_pow(p, 6 * md), 1),
            IdealCase::WThetaPlusY { .. } => (p_pow(p, 4 * md), 2),
            _ => unreachable!("case not defined for pair components"),
        },
    };
    IdealInfo { cardinality: card, min_weight_d: d }
}

/// Every left ideal of R_i, in table-row order with parameters in canonical
/// (ascending) order. `sets` is required for non-degree-1 components.
pub fn enumerate_ideals(
    comp: &ComponentAlgebra,
    sets: Option<&SolutionSets>,
) -> Result<Vec<(IdealDescriptor, IdealInfo)>> {
    let mut cases: Vec<IdealCase> = Vec::new();
    match comp.kind {
        ComponentKind::Linear => {
            cases.push(IdealCase::Zero);
            cases.push(IdealCase::Full);
            cases.push(IdealCase::PScalar);
            if comp.ctx.p() == 2 {
                cases.push(IdealCase::PYMinusOne);
                cases.push(IdealCase::YMinusOnePlusP);
                for u in comp.ctx.teichmuller_set() {
                    cases.push(IdealCase::YMinusOnePlus2u { u });
                }
            } else {
                cases.push(IdealCase::PYPlusOne);
                cases.push(IdealCase::PYMinusOne);
                cases.push(IdealCase::YPlusOnePlusP);
                cases.push(IdealCase::YMinusOnePlusP);
                cases.push(IdealCase::YPlusOne);
                cases.push(IdealCase::YMinusOne);
            }
        }
        ComponentKind::SelfReciprocal => {
            let Some(SolutionSets::SelfReciprocal { w_set, v_set }) = sets else {
                return Err(Error::KindMismatch("self-reciprocal solution sets required"));
            };
            cases.push(IdealCase::Zero);
            cases.push(IdealCase::Full);
            cases.push(IdealCase::PScalar);
            for w in w_set {
                cases.push(IdealCase::PWPlusY { w: w.clone() });
            }
            for w in w_set {
                for theta in v_set {
                    cases.push(IdealCase::WThetaPlusY { w: w.clone(), theta: theta.clone() });
                }
            }
            for w in w_set {
                cases.push(IdealCase::WPlusYPlusP { w: w.clone() });
            }
        }
        ComponentKind::ReciprocalPair => {
            let Some(SolutionSets::ReciprocalPair { k1, k2, w_entries, .. }) = sets else {
                return Err(Error::KindMismatch("pair solution sets required"));
            };
            cases.push(IdealCase::Zero);
            cases.push(IdealCase::Full);
            cases.push(IdealCase::PScalar);
            cases.push(IdealCase::PEps { j: 1 });
            cases.push(IdealCase::PEps { j: 2 });
            for e in w_entries {
                cases.push(IdealCase::PWPlusY { w: e.w.clone() });
            }
            cases.push(IdealCase::EpsPlusP { j: 1 });
            cases.push(IdealCase::EpsPlusP { j: 2 });
            for b in k1 {
                cases.push(IdealCase::EpsPlusPBy { j: 1, b: b.clone() });
            }
            for b in k2 {
                cases.push(IdealCase::EpsPlusPBy { j: 2, b: b.clone() });
            }
            for e in w_entries {
                cases.push(IdealCase::WPlusYPlusP { w: e.w.clone() });
            }
            for e in w_entries {
                for theta in &e.v_set {
                    cases.push(IdealCase::WThetaPlusY { w: e.w.clone(), theta: theta.clone() });
                }
            }
        }
    }
    let out: Vec<(IdealDescriptor, IdealInfo)> = cases
        .into_iter()
        .map(|case| {
            let info = ideal_info(comp, &case);
            (IdealDescriptor { component: comp.index, case }, info)
        })
        .collect();
    debug_assert_eq!(BigUint::from(out.len() as u64), component_ideal_count(comp));
    Ok(out)
}

/// Closed-form number of left ideals of R_i.
pub fn component_ideal_count(comp: &ComponentAlgebra) -> BigUint {
    let p = comp.ctx.p();
    let m = comp.ctx.m() as u32;
    let md = m * comp.d as u32;
    match comp.kind {
        ComponentKind::Linear => {
            if p == 2 {
                p_pow(2, m) + 5u32
            } else {
                BigUint::from(9u32)
            }
        }
        ComponentKind::SelfReciprocal => p_pow(p, md) + 3u32 * p_pow(p, md / 2) + 5u32,
        ComponentKind::ReciprocalPair => p_pow(p, 2 * md) + 3u32 * p_pow(p, md) + 5u32,
    }
}

/// Closed-form number of left dihedral codes, from the factor profile alone.
pub fn closed_form_count(profile: &FactorProfile) -> BigUint {
    let p = profile.ctx.p();
    let m = profile.ctx.m() as u32;
    let mut total = BigUint::from(1u32);
    for f in &profile.factors {
        let md = m * f.d as u32;
        let term = match f.kind {
            FactorKind::Pair => p_pow(p, 2 * md) + 3u32 * p_pow(p, md) + 5u32,
            _ if f.d == 1 => {
                if p == 2 {
                    p_pow(2, m) + 5u32
                } else {
                    BigUint::from(9u32)
                }
            }
            _ => p_pow(p, md) + 3u32 * p_pow(p, md / 2) + 5u32,
        };
        total *= term;
    }
    total
}

/// Total code count: evaluates the closed form and cross-checks it against
/// the enumeration stream lengths.
pub fn count_ideals(
    profile: &FactorProfile,
    components: &[(ComponentAlgebra, Option<SolutionSets>)],
) -> Result<BigUint> {
    let closed = closed_form_count(profile);
    let mut enumerated = BigUint::from(1u32);
    for (comp, sets) in components {
        let stream = enumerate_ideals(comp, sets.as_ref())?;
        enumerated *= BigUint::from(stream.len() as u64);
    }
    if closed != enumerated {
        return Err(Error::MismatchWithEnumeration {
            closed_form: closed.to_string(),
            enumerated: enumerated.to_string(),
        });
    }
    Ok(closed)
}

fn w_by_residue(
    comp: &ComponentAlgebra,
    candidates: &[RPoly],
    target: &ResiduePoly,
) -> Result<RPoly> {
    for w in candidates {
        if &comp.a_residue(w) == target {
            return Ok(w.clone());
        }
    }
    Err(Error::InvalidParameter("no unit solution with the required residue".into()))
}

fn pair_entry_by_w<'a>(entries: &'a [WEntry], w: &RPoly) -> Result<&'a WEntry> {
    entries
        .iter()
        .find(|e| &e.w == w)
        .ok_or_else(|| Error::InvalidParameter("w is not in the unit solution set".into()))
}

/// Generator element of the cyclic case: w(1 + p·lift θ) on self-reciprocal
/// components, w + p·lift θ on pairs.
pub fn cyclic_generator(comp: &ComponentAlgebra, w: &RPoly, theta: &ResiduePoly) -> RPoly {
    let lifted = comp.k_lift(theta);
    match comp.kind {
        ComponentKind::SelfReciprocal => {
            let one = comp.a_one();
            comp.a_mul(w, &comp.a_add(&one, &comp.ctx.rp_mul_scalar(&lifted, comp.ctx.p())))
        }
        ComponentKind::ReciprocalPair => {
            comp.a_add(w, &comp.ctx.rp_mul_scalar(&lifted, comp.ctx.p()))
        }
        ComponentKind::Linear => unreachable!("degree-1 components have no cyclic case"),
    }
}

/// Canonical (w, θ) naming the ideal R_i(g + y) — the inverse of
/// `cyclic_generator` — for any admissible unit g.
pub fn canonical_w_theta(
    comp: &ComponentAlgebra,
    sets: &SolutionSets,
    g: &RPoly,
) -> Result<(RPoly, ResiduePoly)> {
    match (comp.kind, sets) {
        (ComponentKind::SelfReciprocal, SolutionSets::SelfReciprocal { w_set, v_set }) => {
            let qd = comp.field_order();
            let w = comp.a_pow(g, qd);
            if !w_set.contains(&w) {
                return Err(Error::InvalidParameter(
                    "Teichmüller part is not in the unit solution set".into(),
                ));
            }
            let fac = comp.a_mul(g, &comp.a_inv(&w)?);
            let diff = comp.a_sub(&fac, &comp.a_one());
            let theta = comp.div_p_residue(&diff);
            if !v_set.contains(&theta) {
                return Err(Error::InvalidParameter(
                    "deviation is not in the residue solution set".into(),
                ));
            }
            Ok((w, theta))
        }
        (ComponentKind::ReciprocalPair, SolutionSets::ReciprocalPair { w_entries, .. }) => {
            let gbar = comp.a_residue(g);
            let ws: Vec<RPoly> = w_entries.iter().map(|e| e.w.clone()).collect();
            let w = w_by_residue(comp, &ws, &gbar)?;
            let entry = pair_entry_by_w(w_entries, &w)?;
            let diff = comp.a_sub(g, &w);
            let theta = comp.div_p_residue(&diff);
            if !entry.v_set.contains(&theta) {
                return Err(Error::InvalidParameter(
                    "deviation is not in the residue solution set".into(),
                ));
            }
            Ok((w, theta))
        }
        _ => Err(Error::KindMismatch("canonical (w, θ) needs a non-degree-1 component")),
    }
}

/// Descriptor of the Euclidean dual ideal. An involution on the full
/// descriptor set of each component.
pub fn dual_descriptor(
    comp: &ComponentAlgebra,
    sets: Option<&SolutionSets>,
    desc: &IdealDescriptor,
) -> Result<IdealDescriptor> {
    use IdealCase::*;
    let p = comp.ctx.p();
    let need_sets = || sets.ok_or(Error::KindMismatch("solution sets required"));
    let case = match &desc.case {
        Zero => Full,
        Full => Zero,
        PScalar => PScalar,
        // degree-1 cases; for p = 2 the sign variants collapse since ±1
        // agree mod p and the p-multiple generators then coincide
        PYPlusOne => YMinusOnePlusP,
        PYMinusOne => {
            if p == 2 {
                YMinusOnePlusP
            } else {
                YPlusOnePlusP
            }
        }
        YPlusOnePlusP => PYMinusOne,
        YMinusOnePlusP => PYMinusOne.flip_sign_unless_two(p),
        YPlusOne => YMinusOne,
        YMinusOne => YPlusOne,
        YMinusOnePlus2u { u } => {
            // −(−1 + 2u) = −1 + 2u' with ū' = ū + 1
            let r = comp.ctx.residue(u);
            let rp = comp.ctx.res_add(&r, &comp.ctx.res_one());
            YMinusOnePlus2u { u: comp.ctx.teichmuller_lift(&rp) }
        }
        // unit-parameterized cases: the dual generator negates the unit;
        // modulo the p-multiples that accompany these cases only the
        // residue of w matters, so re-canonicalize by residue
        PWPlusY { w } => {
            let target = comp.k_neg(&comp.a_residue(w));
            let wp = w_by_residue(comp, &need_sets()?.w_list(), &target)?;
            WPlusYPlusP { w: wp }
        }
        WPlusYPlusP { w } => {
            let target = comp.k_neg(&comp.a_residue(w));
            let wp = w_by_residue(comp, &need_sets()?.w_list(), &target)?;
            PWPlusY { w: wp }
        }
        WThetaPlusY { w, theta } => {
            let sets = need_sets()?;
            let g = cyclic_generator(comp, w, theta);
            let (wp, tp) = canonical_w_theta(comp, sets, &comp.a_neg(&g))?;
            WThetaPlusY { w: wp, theta: tp }
        }
        // block cases
        PEps { j } => EpsPlusP { j: *j },
        EpsPlusP { j } => PEps { j: *j },
        EpsPlusPBy { j, b } => EpsPlusPBy { j: *j, b: comp.k_neg(b) },
    };
    Ok(IdealDescriptor { component: desc.component, case })
}

impl IdealCase {
    fn flip_sign_unless_two(self, p: u32) -> IdealCase {
        match self {
            IdealCase::PYMinusOne if p != 2 => IdealCase::PYPlusOne,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfClass {
    pub self_dual: bool,
    pub self_orthogonal: bool,
}

/// Classify one descriptor. Self-duality is exactly
/// `desc == dual_descriptor(desc)`; self-orthogonality follows the
/// classification of ideals contained in their dual.
pub fn classify_self(
    comp: &ComponentAlgebra,
    sets: Option<&SolutionSets>,
    desc: &IdealDescriptor,
) -> Result<SelfClass> {
    use IdealCase::*;
    let p = comp.ctx.p();
    let self_dual = dual_descriptor(comp, sets, desc)? == *desc;
    let self_orthogonal = match &desc.case {
        Zero | PScalar => true,
        PYPlusOne | PYMinusOne => true,
        PWPlusY { .. } => true,
        PEps { .. } => true,
        EpsPlusPBy { b, .. } => p == 2 || b.is_zero(),
        _ => false,
    };
    debug_assert!(!self_dual || self_orthogonal);
    Ok(SelfClass { self_dual, self_orthogonal })
}

/// Per-component list of self-dual outer ideals.
pub fn self_dual_descriptors(
    comp: &ComponentAlgebra,
    sets: Option<&SolutionSets>,
) -> Result<Vec<IdealDescriptor>> {
    let mut out = Vec::new();
    for (d, _) in enumerate_ideals(comp, sets)? {
        if classify_self(comp, sets, &d)?.self_dual {
            out.push(d);
        }
    }
    Ok(out)
}

/// Per-component list of self-orthogonal outer ideals.
pub fn self_orthogonal_descriptors(
    comp: &ComponentAlgebra,
    sets: Option<&SolutionSets>,
) -> Result<Vec<IdealDescriptor>> {
    let mut out = Vec::new();
    for (d, _) in enumerate_ideals(comp, sets)? {
        if classify_self(comp, sets, &d)?.self_orthogonal {
            out.push(d);
        }
    }
    Ok(out)
}

/// Closed-form count of self-dual codes. Degree-1 and self-reciprocal
/// components admit exactly one self-dual ideal (R_i·p); each pair admits 3
/// for odd p and 2·p^{md}+1 for p = 2, so the total is the product over the
/// pair components.
pub fn count_self_dual(profile: &FactorProfile) -> BigUint {
    let p = profile.ctx.p();
    let m = profile.ctx.m() as u32;
    let mut total = BigUint::from(1u32);
    for f in &profile.factors {
        if f.kind == FactorKind::Pair {
            let md = m * f.d as u32;
            total *= if p == 2 {
                2u32 * p_pow(2, md) + 1u32
            } else {
                BigUint::from(3u32)
            };
        }
    }
    total
}

/// Closed-form count of self-orthogonal codes.
pub fn count_self_orthogonal(profile: &FactorProfile) -> BigUint {
    let p = profile.ctx.p();
    let m = profile.ctx.m() as u32;
    let mut total = BigUint::from(1u32);
    for f in &profile.factors {
        let md = m * f.d as u32;
        let term = match f.kind {
            FactorKind::Pair => {
                if p == 2 {
                    3u32 * p_pow(2, md) + 3u32
                } else {
                    p_pow(p, md) + 5u32
                }
            }
            _ if f.d == 1 => BigUint::from(if p == 2 { 3u32 } else { 4u32 }),
            _ => p_pow(p, md / 2) + 3u32,
        };
        total *= term;
    }
    total
}
