//! From descriptor selections to concrete R-linear codes of length 2n.
//!
//! Each outer ideal descriptor has a generator/parity matrix pair (G_i, H_i)
//! over A_i in the 1-, 2- or 4-row normal forms of the classification; the
//! pairing G_i·θ_i(H_i)^tr = 0 holds for every pair. Concatenation with the
//! inner cyclic code ε_i·R[x]/⟨xⁿ−1⟩ expands every A_i-row (g₀, g₁) into
//! deg f_i rows over R, laid out as the x-part followed by the xy-part
//! (coordinates a₀,…,a_{n−1} | b₀,…,b_{n−1} for a(x) + b(x)y).
//!
//! Generator rows are a spanning set, not a basis: rows like (0 | p·…)
//! generate only p-torsion, so cardinalities always come from the symbolic
//! tables. Codeword enumeration iterates coefficient tuples row by row —
//! with the per-row coefficient range reduced to Teichmüller representatives
//! when the row is p-torsion — deduplicating through a hash set, under a
//! hard cap that guards misuse.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::component_algebra::{ComponentAlgebra, ComponentKind, SolutionSets};
use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRingContext, GrElement};
use crate::ideal_enumeration::{
    cyclic_generator, dual_descriptor, ideal_info, IdealCase, IdealDescriptor,
};
use crate::ring_poly::{FactorProfile, IdempotentFamily, RPoly};

/// Default cap on scanned coefficient tuples.
pub const DEFAULT_WORD_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixRole {
    Generator,
    Parity,
}

/// k×2 matrix over A_i (k ∈ {0, 1, 2, 4}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterMatrix {
    pub component: usize,
    pub role: MatrixRole,
    pub rows: Vec<[RPoly; 2]>,
}

/// One outer descriptor per component, in component order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSelection {
    pub descriptors: Vec<IdealDescriptor>,
}

/// An R-linear code of length 2n given by a spanning set of generator rows.
#[derive(Debug, Clone)]
pub struct LinearCode {
    pub ctx: GaloisRingContext,
    pub n: u64,
    /// K×2n spanning rows (not necessarily a free basis).
    pub rows: Vec<Vec<GrElement>>,
    /// Exact cardinality, from the per-component tables.
    pub cardinality: BigUint,
    pub selection: CodeSelection,
}

/// Generator and parity matrices of one descriptor, exactly the table row.
pub fn outer_matrices(
    comp: &ComponentAlgebra,
    sets: Option<&SolutionSets>,
    desc: &IdealDescriptor,
) -> Result<(OuterMatrix, OuterMatrix)> {
    use IdealCase::*;
    if desc.component != comp.index {
        return Err(Error::ComponentMismatch { expected: comp.index, got: desc.component });
    }
    let ctx = &comp.ctx;
    let p = ctx.p();
    let one = comp.a_one();
    let zero = comp.a_zero();
    let pe = ctx.rp_mul_scalar(&one, p);
    let mul_p = |a: &RPoly| ctx.rp_mul_scalar(a, p);
    let neg = |a: &RPoly| comp.a_neg(a);

    let identity = vec![[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    let p_identity = vec![[pe.clone(), zero.clone()], [zero.clone(), pe.clone()]];

    let (g, h): (Vec<[RPoly; 2]>, Vec<[RPoly; 2]>) = match &desc.case {
        Zero => (vec![], identity),
        Full => (identity, vec![]),
        PScalar => (p_identity.clone(), p_identity),
        // degree-1 cases with w = ±1 or w = −1 + pu
        PYPlusOne | PYMinusOne | YPlusOne | YMinusOne | YPlusOnePlusP | YMinusOnePlusP
        | YMinusOnePlus2u { .. } => {
            let w = match &desc.case {
                PYPlusOne | YPlusOne | YPlusOnePlusP => one.clone(),
                YMinusOnePlus2u { u } => {
                    let two_u = ctx.mul_scalar(u, p);
                    ctx.rp_const(&ctx.add(&ctx.neg(&ctx.one()), &two_u))
                }
                _ => neg(&one),
            };
            match &desc.case {
                PYPlusOne | PYMinusOne => (
                    vec![[mul_p(&w), pe.clone()]],
                    vec![[neg(&w), one.clone()], [zero.clone(), pe.clone()]],
                ),
                YPlusOnePlusP | YMinusOnePlusP => (
                    vec![[w.clone(), one.clone()], [zero.clone(), pe.clone()]],
                    vec![[mul_p(&neg(&w)), pe.clone()]],
                ),
                _ => (
                    vec![[w.clone(), one.clone()]],
                    vec![[neg(&w), one.clone()]],
                ),
            }
        }
        PWPlusY { w } => (
            vec![[mul_p(w), pe.clone()]],
            vec![[neg(w), one.clone()], [zero.clone(), pe.clone()]],
        ),
        WPlusYPlusP { w } => (
            vec![[w.clone(), one.clone()], [zero.clone(), pe.clone()]],
            vec![[mul_p(&neg(w)), pe.clone()]],
        ),
        WThetaPlusY { w, theta } => {
            let gen = cyclic_generator(comp, w, theta);
            (
                vec![[gen.clone(), one.clone()]],
                vec![[neg(&gen), one.clone()]],
            )
        }
        PEps { j } | EpsPlusP { j } | EpsPlusPBy { j, .. } => {
            if comp.kind != ComponentKind::ReciprocalPair {
                return Err(Error::KindMismatch("block case on a non-pair component"));
            }
            let (ea, eb) = if *j == 1 {
                (comp.eps1.clone().unwrap(), comp.eps2.clone().unwrap())
            } else {
                (comp.eps2.clone().unwrap(), comp.eps1.clone().unwrap())
            };
            match &desc.case {
                PEps { .. } => (
                    vec![[mul_p(&ea), zero.clone()], [zero.clone(), mul_p(&eb)]],
                    vec![
                        [ea.clone(), zero.clone()],
                        [zero.clone(), eb.clone()],
                        [mul_p(&eb), zero.clone()],
                        [zero.clone(), mul_p(&ea)],
                    ],
                ),
                EpsPlusP { .. } => (
                    vec![
                        [ea.clone(), zero.clone()],
                        [zero.clone(), eb.clone()],
                        [mul_p(&eb), zero.clone()],
                        [zero.clone(), mul_p(&ea)],
                    ],
                    vec![[mul_p(&ea), zero.clone()], [zero.clone(), mul_p(&eb)]],
                ),
                EpsPlusPBy { b, .. } => {
                    let bl = comp.k_lift(b);
                    let tl = comp.k_lift(&comp.k_theta(b));
                    (
                        vec![[ea.clone(), mul_p(&bl)], [mul_p(&tl), eb.clone()]],
                        vec![
                            [ea.clone(), neg(&mul_p(&bl))],
                            [neg(&mul_p(&tl)), eb.clone()],
                        ],
                    )
                }
                _ => unreachable!(),
            }
        }
    };
    let _ = sets;
    Ok((
        OuterMatrix { component: comp.index, role: MatrixRole::Generator, rows: g },
        OuterMatrix { component: comp.index, role: MatrixRole::Parity, rows: h },
    ))
}

/// G·θ(H)^tr = 0 over A_i, row by row.
pub fn pairing_vanishes(comp: &ComponentAlgebra, g: &OuterMatrix, h: &OuterMatrix) -> bool {
    for grow in &g.rows {
        for hrow in &h.rows {
            let s = comp.a_add(
                &comp.a_mul(&grow[0], &comp.a_theta(&hrow[0])),
                &comp.a_mul(&grow[1], &comp.a_theta(&hrow[1])),
            );
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

fn poly_to_width(ctx: &GaloisRingContext, a: &RPoly, n: usize) -> Vec<GrElement> {
    let mut v = Vec::with_capacity(n);
    for k in 0..n {
        v.push(ctx.rp_coeff(a, k));
    }
    v
}

/// Expand an outer matrix over A_i into rows over R of width 2n: each
/// A_i-row (g₀, g₁) becomes the deg f_i rows (xʲ·ε_i·g₀ | xʲ·ε_i·g₁).
pub fn concatenate(
    comp: &ComponentAlgebra,
    idem: &IdempotentFamily,
    matrix: &OuterMatrix,
) -> Result<Vec<Vec<GrElement>>> {
    if matrix.component != comp.index {
        return Err(Error::ComponentMismatch { expected: comp.index, got: matrix.component });
    }
    let ctx = &comp.ctx;
    let n = comp.n;
    let eps = &idem.eps[comp.index];
    let deg = comp.f.degree().unwrap();
    let mut out = Vec::with_capacity(matrix.rows.len() * deg);
    for row in &matrix.rows {
        let mut e0 = ctx.rp_mod_xn1(&ctx.rp_mul(eps, &row[0]), n);
        let mut e1 = ctx.rp_mod_xn1(&ctx.rp_mul(eps, &row[1]), n);
        for _ in 0..deg {
            let mut v = poly_to_width(ctx, &e0, n as usize);
            v.extend(poly_to_width(ctx, &e1, n as usize));
            out.push(v);
            e0 = ctx.rp_shift_mod_xn1(&e0, n);
            e1 = ctx.rp_shift_mod_xn1(&e1, n);
        }
    }
    Ok(out)
}

fn check_selection(profile: &FactorProfile, selection: &CodeSelection) -> Result<()> {
    for i in 0..profile.factors.len() {
        match selection.descriptors.get(i) {
            Some(d) if d.component == i => {}
            _ => return Err(Error::IncompleteSelection(i)),
        }
    }
    if selection.descriptors.len() != profile.factors.len() {
        return Err(Error::IncompleteSelection(selection.descriptors.len()));
    }
    Ok(())
}

/// Direct sum of the per-component concatenated codes: stacked generator
/// rows, cardinality the product of the table cardinalities.
pub fn build_code(
    profile: &FactorProfile,
    idem: &IdempotentFamily,
    components: &[(ComponentAlgebra, Option<SolutionSets>)],
    selection: &CodeSelection,
) -> Result<LinearCode> {
    check_selection(profile, selection)?;
    let mut rows = Vec::new();
    let mut cardinality = BigUint::from(1u32);
    for (i, desc) in selection.descriptors.iter().enumerate() {
        let (comp, sets) = &components[i];
        let (g, _) = outer_matrices(comp, sets.as_ref(), desc)?;
        rows.extend(concatenate(comp, idem, &g)?);
        cardinality *= ideal_info(comp, &desc.case).cardinality;
    }
    Ok(LinearCode {
        ctx: profile.ctx.clone(),
        n: profile.n,
        rows,
        cardinality,
        selection: selection.clone(),
    })
}

/// The Euclidean dual: built from the dual descriptor of every component.
pub fn dual_code(
    profile: &FactorProfile,
    idem: &IdempotentFamily,
    components: &[(ComponentAlgebra, Option<SolutionSets>)],
    selection: &CodeSelection,
) -> Result<LinearCode> {
    check_selection(profile, selection)?;
    let duals: Vec<IdealDescriptor> = selection
        .descriptors
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let (comp, sets) = &components[i];
            dual_descriptor(comp, sets.as_ref(), d)
        })
        .collect::<Result<_>>()?;
    build_code(profile, idem, components, &CodeSelection { descriptors: duals })
}

/// Per-row coefficient representatives: a p-torsion row only needs the
/// Teichmüller transversal of R/pR.
fn row_multipliers(ctx: &GaloisRingContext, row: &[GrElement]) -> Vec<GrElement> {
    let torsion = row
        .iter()
        .all(|c| ctx.is_zero(&ctx.mul_scalar(c, ctx.p())));
    if torsion {
        ctx.teichmuller_set()
    } else {
        ctx.elements()
    }
}

/// Number of coefficient tuples the scan will visit.
pub fn scan_size(ctx: &GaloisRingContext, rows: &[Vec<GrElement>]) -> BigUint {
    let mut total = BigUint::from(1u32);
    for row in rows {
        total *= BigUint::from(row_multipliers(ctx, row).len() as u64);
    }
    total
}

/// Visit every R-linear combination of the rows (words may repeat when the
/// rows are dependent). Returns the number of tuples visited.
pub(crate) fn scan_words(
    ctx: &GaloisRingContext,
    rows: &[Vec<GrElement>],
    width: usize,
    cap: u64,
    mut visit: impl FnMut(&[GrElement]),
) -> Result<u64> {
    let total = scan_size(ctx, rows);
    if total > BigUint::from(cap) {
        return Err(Error::TooLarge {
            what: "codeword scan",
            size: total.to_string(),
            cap: cap.to_string(),
        });
    }
    // precompute scaled rows
    let scaled: Vec<Vec<Vec<GrElement>>> = rows
        .iter()
        .map(|row| {
            row_multipliers(ctx, row)
                .iter()
                .map(|c| row.iter().map(|x| ctx.mul(x, c)).collect())
                .collect()
        })
        .collect();
    let mut digits = vec![0usize; rows.len()];
    let mut cur = vec![ctx.zero(); width];
    let mut scanned = 0u64;
    loop {
        visit(&cur);
        scanned += 1;
        // odometer step, last digit fastest
        let mut k = rows.len();
        loop {
            if k == 0 {
                return Ok(scanned);
            }
            k -= 1;
            let old = digits[k];
            for (j, c) in scaled[k][old].iter().enumerate() {
                cur[j] = ctx.sub(&cur[j], c);
            }
            digits[k] = (old + 1) % scaled[k].len();
            for (j, c) in scaled[k][digits[k]].iter().enumerate() {
                cur[j] = ctx.add(&cur[j], c);
            }
            if digits[k] != 0 {
                break;
            }
        }
    }
}

/// All distinct codewords, deduplicated.
pub fn enumerate_codewords(code: &LinearCode, cap: u64) -> Result<HashSet<Vec<GrElement>>> {
    let mut set = HashSet::new();
    let width = 2 * code.n as usize;
    scan_words(&code.ctx, &code.rows, width, cap, |w| {
        set.insert(w.to_vec());
    })?;
    Ok(set)
}

/// Closure of the code under the two module actions that characterize it:
/// the simultaneous cyclic shift of both halves, and the half-swapping
/// reversal (a₀(x), a₁(x)) ↦ (a₁(x^{−1}), a₀(x^{−1})). A perturbed generator
/// row generally breaks both.
pub fn dihedral_closure_check(code: &LinearCode, cap: u64) -> Result<bool> {
    let ctx = &code.ctx;
    let n = code.n as usize;
    let words = enumerate_codewords(code, cap)?;
    for w in &words {
        let mut shifted = vec![ctx.zero(); 2 * n];
        for k in 0..n {
            shifted[(k + 1) % n] = w[k].clone();
            shifted[n + (k + 1) % n] = w[n + k].clone();
        }
        if !words.contains(&shifted) {
            return Ok(false);
        }
        let mut swapped = vec![ctx.zero(); 2 * n];
        for k in 0..n {
            swapped[k] = w[n + (n - k) % n].clone();
            swapped[n + k] = w[(n - k) % n].clone();
        }
        if !words.contains(&swapped) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component_algebra::{build_component, solution_sets};
    use crate::ideal_enumeration::enumerate_ideals;
    use crate::ring_poly::{factor_unity, primary_idempotents};

    struct Setup {
        profile: FactorProfile,
        idem: IdempotentFamily,
        comps: Vec<(ComponentAlgebra, Option<SolutionSets>)>,
    }

    fn setup(p: u32, m: usize, n: u64) -> Setup {
        let ctx = GaloisRingContext::new(p, m, None).unwrap();
        let profile = factor_unity(&ctx, n).unwrap();
        let idem = primary_idempotents(&profile).unwrap();
        let comps = (0..profile.factors.len())
            .map(|i| {
                let c = build_component(&profile, &idem, i).unwrap();
                let s = solution_sets(&c).ok();
                (c, s)
            })
            .collect();
        Setup { profile, idem, comps }
    }

    fn zero_selection(s: &Setup) -> CodeSelection {
        CodeSelection {
            descriptors: (0..s.profile.factors.len())
                .map(|i| IdealDescriptor { component: i, case: IdealCase::Zero })
                .collect(),
        }
    }

    fn full_selection(s: &Setup) -> CodeSelection {
        CodeSelection {
            descriptors: (0..s.profile.factors.len())
                .map(|i| IdealDescriptor { component: i, case: IdealCase::Full })
                .collect(),
        }
    }

    #[test]
    fn pairing_identity_all_rows_z4_15() {
        let s = setup(2, 1, 15);
        for (c, sets) in &s.comps {
            for (d, _) in enumerate_ideals(c, sets.as_ref()).unwrap() {
                let (g, h) = outer_matrices(c, sets.as_ref(), &d).unwrap();
                assert!(pairing_vanishes(c, &g, &h), "case {}", d.case.name());
            }
        }
    }

    #[test]
    fn concatenate_full_on_unity_component() {
        let s = setup(2, 1, 15);
        let (c0, s0) = &s.comps[0];
        let full = IdealDescriptor { component: 0, case: IdealCase::Full };
        let (g, _) = outer_matrices(c0, s0.as_ref(), &full).unwrap();
        let rows = concatenate(c0, &s.idem, &g).unwrap();
        assert_eq!(rows.len(), 2);
        let eps0 = poly_to_width(&s.profile.ctx, &s.idem.eps[0], 15);
        let zero15 = vec![s.profile.ctx.zero(); 15];
        assert_eq!(rows[0], [eps0.clone(), zero15.clone()].concat());
        assert_eq!(rows[1], [zero15, eps0].concat());
    }

    /// Worked length-30 construction: the degree-2 and degree-4
    /// self-reciprocal components carry (w, θ) ideals, the rest are zero.
    fn eq14_selection(s: &Setup, w1: &RPoly, t1: u32, w2: &RPoly, t2: &[u32]) -> CodeSelection {
        let ctx = &s.profile.ctx;
        let theta1 = ctx.rp_residue(&ctx.rp_from_scalars(&[t1]));
        let theta2 = ctx.rp_residue(&ctx.rp_from_scalars(t2));
        CodeSelection {
            descriptors: vec![
                IdealDescriptor { component: 0, case: IdealCase::Zero },
                IdealDescriptor {
                    component: 1,
                    case: IdealCase::WThetaPlusY { w: w1.clone(), theta: theta1 },
                },
                IdealDescriptor {
                    component: 2,
                    case: IdealCase::WThetaPlusY { w: w2.clone(), theta: theta2 },
                },
                IdealDescriptor { component: 3, case: IdealCase::Zero },
            ],
        }
    }

    #[test]
    fn worked_code_shape_and_cardinality() {
        let s = setup(2, 1, 15);
        let ctx = &s.profile.ctx;
        let w1 = ctx.rp_from_scalars(&[1]);
        let w2 = ctx.rp_from_scalars(&[1]);
        let sel = eq14_selection(&s, &w1, 0, &w2, &[1, 0, 1, 1]);
        let code = build_code(&s.profile, &s.idem, &s.comps, &sel).unwrap();
        assert_eq!(code.rows.len(), 6);
        assert!(code.rows.iter().all(|r| r.len() == 30));
        assert_eq!(code.cardinality, BigUint::from(4096u32));

        let dual = dual_code(&s.profile, &s.idem, &s.comps, &sel).unwrap();
        assert_eq!(&code.cardinality * &dual.cardinality, BigUint::from(2u32).pow(60));
        assert_eq!(dual.cardinality, BigUint::from(2u32).pow(48));
    }

    #[test]
    fn zero_and_full_selections() {
        let s = setup(2, 1, 7);
        let zero = build_code(&s.profile, &s.idem, &s.comps, &zero_selection(&s)).unwrap();
        assert_eq!(zero.rows.len(), 0);
        assert_eq!(zero.cardinality, BigUint::from(1u32));
        let words = enumerate_codewords(&zero, 16).unwrap();
        assert_eq!(words.len(), 1);

        let full = build_code(&s.profile, &s.idem, &s.comps, &full_selection(&s)).unwrap();
        assert_eq!(full.cardinality, BigUint::from(4u32).pow(14));
        let dual = dual_code(&s.profile, &s.idem, &s.comps, &full_selection(&s)).unwrap();
        assert_eq!(dual.cardinality, BigUint::from(1u32));
    }

    #[test]
    fn generator_rows_orthogonal_to_dual_rows() {
        let s = setup(2, 1, 15);
        let ctx = &s.profile.ctx;
        let w1 = ctx.rp_from_scalars(&[0, 1]);
        let w2 = ctx.rp_from_scalars(&[0, 0, 0, 1]);
        let sel = eq14_selection(&s, &w1, 1, &w2, &[0, 0, 1, 1]);
        let code = build_code(&s.profile, &s.idem, &s.comps, &sel).unwrap();
        let dual = dual_code(&s.profile, &s.idem, &s.comps, &sel).unwrap();
        for a in &code.rows {
            for b in &dual.rows {
                let mut acc = ctx.zero();
                for (x, y) in a.iter().zip(b) {
                    acc = ctx.add(&acc, &ctx.mul(x, y));
                }
                assert!(ctx.is_zero(&acc));
            }
        }
    }

    #[test]
    fn enumerated_words_match_declared_cardinality_small() {
        let s = setup(2, 1, 7);
        let (c0, s0) = &s.comps[0];
        for (d, info) in enumerate_ideals(c0, s0.as_ref()).unwrap() {
            let mut descriptors = zero_selection(&s).descriptors;
            descriptors[0] = d;
            let code =
                build_code(&s.profile, &s.idem, &s.comps, &CodeSelection { descriptors }).unwrap();
            let words = enumerate_codewords(&code, 1 << 16).unwrap();
            assert_eq!(BigUint::from(words.len() as u64), info.cardinality);
        }
    }

    #[test]
    fn closure_holds_and_perturbation_breaks_it() {
        let s = setup(2, 1, 7);
        let (_, s1) = &s.comps[1];
        // a small-cardinality ideal on the pair component keeps the scan cheap
        let Some(SolutionSets::ReciprocalPair { w_entries, .. }) = s1 else { panic!() };
        let e = &w_entries[3];
        let mut descriptors = zero_selection(&s).descriptors;
        descriptors[1] = IdealDescriptor {
            component: 1,
            case: IdealCase::PWPlusY { w: e.w.clone() },
        };
        let code =
            build_code(&s.profile, &s.idem, &s.comps, &CodeSelection { descriptors }).unwrap();
        assert!(dihedral_closure_check(&code, 1 << 20).unwrap());

        let mut corrupted = code.clone();
        corrupted.rows[0][2] = code.ctx.add(&corrupted.rows[0][2], &code.ctx.one());
        assert!(!dihedral_closure_check(&corrupted, 1 << 20).unwrap());
    }

    #[test]
    fn incomplete_selection_is_rejected() {
        let s = setup(2, 1, 7);
        let mut sel = zero_selection(&s);
        sel.descriptors.pop();
        assert!(matches!(
            build_code(&s.profile, &s.idem, &s.comps, &sel),
            Err(Error::IncompleteSelection(_))
        ));
        let mut sel = zero_selection(&s);
        sel.descriptors[1].component = 0;
        assert!(matches!(
            build_code(&s.profile, &s.idem, &s.comps, &sel),
            Err(Error::IncompleteSelection(1))
        ));
    }

    #[test]
    fn scan_cap_is_enforced() {
        let s = setup(2, 1, 7);
        let full = build_code(&s.profile, &s.idem, &s.comps, &full_selection(&s)).unwrap();
        assert!(matches!(
            enumerate_codewords(&full, 1 << 10),
            Err(Error::TooLarge { .. })
        ));
    }
}
