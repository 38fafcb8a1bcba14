//! Acceptance suite: reproduces the published worked example end to end and
//! checks the structural laws on a small parameter grid. One test per
//! criterion; each prints a PASS line on success.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dihedral_codes::code_builder::{
    build_code, dihedral_closure_check, dual_code, enumerate_codewords, outer_matrices,
    pairing_vanishes, CodeSelection,
};
use dihedral_codes::component_algebra::{
    build_component, solution_sets, ComponentAlgebra, SolutionSets,
};
use dihedral_codes::galois_ring::GaloisRingContext;
use dihedral_codes::ideal_enumeration::{
    classify_self, count_ideals, count_self_dual, count_self_orthogonal, dual_descriptor,
    enumerate_ideals, self_dual_descriptors, IdealCase, IdealDescriptor,
};
use dihedral_codes::metrics_oracle::{
    brute_force_ideals, brute_force_residue_ideals, materialize_ideal, min_distances,
    verify_duality, BruteForceStrategy, SkewElem,
};
use dihedral_codes::ring_poly::{factor_unity, primary_idempotents, FactorProfile, IdempotentFamily, RPoly};

struct World {
    profile: FactorProfile,
    idem: IdempotentFamily,
    comps: Vec<(ComponentAlgebra, Option<SolutionSets>)>,
}

fn world(p: u32, m: usize, n: u64) -> World {
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
    World { profile, idem, comps }
}

fn zero_selection(w: &World) -> Vec<IdealDescriptor> {
    (0..w.profile.factors.len())
        .map(|i| IdealDescriptor { component: i, case: IdealCase::Zero })
        .collect()
}

const GRID: [(u32, usize, u64); 4] = [(2, 1, 7), (3, 1, 4), (2, 2, 5), (5, 1, 3)];

#[test]
fn criterion_1_factorization_of_x15_minus_1() {
    let start = Instant::now();
    let w = world(2, 1, 15);
    let ctx = &w.profile.ctx;
    assert_eq!(w.profile.r, 2);
    assert_eq!(w.profile.t, 1);
    assert_eq!(w.profile.lambda, 1);
    let f = &w.profile.factors;
    assert_eq!(f[0].f, ctx.rp_from_scalars(&[3, 1]));
    assert_eq!(f[1].f, ctx.rp_from_scalars(&[1, 1, 1]));
    assert_eq!(f[2].f, ctx.rp_from_scalars(&[1, 1, 1, 1, 1]));
    assert_eq!(f[3].rho.as_ref().unwrap(), &ctx.rp_from_scalars(&[1, 3, 2, 0, 1]));
    assert_eq!(
        f.iter().map(|x| x.d).collect::<Vec<_>>(),
        vec![1, 2, 4, 4]
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 1: PASS — factorization of x^15 - 1 over Z4 exact in {elapsed:?}");
}

#[test]
fn criterion_2_idempotents_match_printed_values() {
    let start = Instant::now();
    let w = world(2, 1, 15);
    let ctx = &w.profile.ctx;
    assert_eq!(w.idem.eps[0], ctx.rp_from_scalars(&[3; 15]));
    assert_eq!(
        w.idem.eps[1],
        ctx.rp_from_scalars(&[2, 1, 1, 2, 1, 1, 2, 1, 1, 2, 1, 1, 2, 1, 1])
    );
    assert_eq!(
        w.idem.eps[2],
        ctx.rp_from_scalars(&[0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1])
    );
    // the fourth idempotent is recomputed (the orthogonality identities pin
    // it down); the exact identities are checked here
    let mut total = ctx.rp_zero();
    for e in &w.idem.eps {
        total = ctx.rp_add(&total, e);
    }
    assert_eq!(ctx.rp_mod_xn1(&total, 15), ctx.rp_one());
    for i in 0..4 {
        for j in 0..4 {
            let prod = ctx.rp_mod_xn1(&ctx.rp_mul(&w.idem.eps[i], &w.idem.eps[j]), 15);
            let expect = if i == j { w.idem.eps[i].clone() } else { ctx.rp_zero() };
            assert_eq!(prod, expect);
        }
    }
    let (e31, e32) = w.idem.pair_eps[3].as_ref().unwrap();
    assert_eq!(e31, &ctx.rp_from_scalars(&[2, 2, 3, 1, 2, 1, 0, 3]));
    assert_eq!(e32, &ctx.rp_from_scalars(&[3, 2, 1, 3, 2, 3, 0, 1]));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 2: PASS — idempotents match the printed values in {elapsed:?}");
}

#[test]
fn criterion_3_code_count() {
    let start = Instant::now();
    let w = world(2, 1, 15);
    let lens: Vec<usize> = w
        .comps
        .iter()
        .map(|(c, s)| enumerate_ideals(c, s.as_ref()).unwrap().len())
        .collect();
    assert_eq!(lens, vec![7, 15, 33, 309]);
    let count = count_ideals(&w.profile, &w.comps).unwrap();
    assert_eq!(count, BigUint::from(1_070_685u64));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!("criterion 3: PASS — 7·15·33·309 = 1,070,685 codes in {elapsed:?}");
}

#[test]
fn criterion_4_self_dual_and_self_orthogonal() {
    let start = Instant::now();
    let w = world(2, 1, 15);
    assert_eq!(count_self_dual(&w.profile), BigUint::from(33u32));
    assert_eq!(count_self_orthogonal(&w.profile), BigUint::from(5355u32));
    let mut sd_prod = 1u64;
    let mut so_prod = 1u64;
    for (c, s) in &w.comps {
        let sds = self_dual_descriptors(c, s.as_ref()).unwrap();
        for d in &sds {
            assert_eq!(dual_descriptor(c, s.as_ref(), d).unwrap(), *d);
        }
        sd_prod *= sds.len() as u64;
        let mut so = 0u64;
        for (d, _) in enumerate_ideals(c, s.as_ref()).unwrap() {
            if classify_self(c, s.as_ref(), &d).unwrap().self_orthogonal {
                so += 1;
            }
        }
        so_prod *= so;
    }
    assert_eq!(sd_prod, 33);
    assert_eq!(so_prod, 5355);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!("criterion 4: PASS — 33 self-dual and 5355 self-orthogonal codes in {elapsed:?}");
}

#[test]
fn criterion_5_worked_solution_sets_and_unit_orders() {
    let start = Instant::now();
    let w = world(2, 1, 15);
    let ctx = &w.profile.ctx;

    let as_set = |v: &[Vec<u32>]| -> BTreeSet<RPoly> {
        v.iter().map(|c| ctx.rp_from_scalars(c)).collect()
    };
    let Some(SolutionSets::SelfReciprocal { w_set, v_set }) = &w.comps[1].1 else { panic!() };
    assert_eq!(
        w_set.iter().cloned().collect::<BTreeSet<_>>(),
        as_set(&[vec![1], vec![0, 1], vec![3, 3]])
    );
    let vres: BTreeSet<_> = v_set.iter().cloned().collect();
    let vexp: BTreeSet<_> = [vec![0u32], vec![1]]
        .iter()
        .map(|c| ctx.rp_residue(&ctx.rp_from_scalars(c)))
        .collect();
    assert_eq!(vres, vexp);

    let Some(SolutionSets::SelfReciprocal { w_set, v_set }) = &w.comps[2].1 else { panic!() };
    assert_eq!(
        w_set.iter().cloned().collect::<BTreeSet<_>>(),
        as_set(&[
            vec![1],
            vec![3, 3, 3, 3],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 1],
        ])
    );
    let vres: BTreeSet<_> = v_set.iter().cloned().collect();
    let vexp: BTreeSet<_> = [vec![0u32], vec![1], vec![1, 0, 1, 1], vec![0, 0, 1, 1]]
        .iter()
        .map(|c| ctx.rp_residue(&ctx.rp_from_scalars(c)))
        .collect();
    assert_eq!(vres, vexp);

    // the stated generator elements have the stated multiplicative orders
    let (c1, _) = &w.comps[1];
    let (c2, _) = &w.comps[2];
    let (c3, _) = &w.comps[3];
    assert_eq!(ctx.polymod_order(&ctx.rp_from_scalars(&[0, 1]), &c1.f, 20), Some(3));
    assert_eq!(
        ctx.polymod_order(&ctx.rp_from_scalars(&[1, 1, 0, 2]), &c2.f, 300),
        Some(15)
    );
    assert_eq!(
        ctx.polymod_order(
            &ctx.rp_from_scalars(&[0, 0, 1]),
            c3.rho.as_ref().unwrap(),
            300
        ),
        Some(15)
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 5: PASS — worked solution sets and unit orders in {elapsed:?}");
}

#[test]
fn criterion_6_sixty_codes_with_dh12_dl20() {
    let start = Instant::now();
    let w = world(2, 1, 15);
    let ctx = &w.profile.ctx;
    let Some(SolutionSets::SelfReciprocal { w_set: w1s, v_set: v1s }) = &w.comps[1].1 else {
        panic!()
    };
    let Some(SolutionSets::SelfReciprocal { w_set: w2s, v_set: v2s }) = &w.comps[2].1 else {
        panic!()
    };
    // the table's θ₂ values are the two solutions outside the prime subfield
    let theta2: Vec<_> = v2s
        .iter()
        .filter(|t| t.degree().map(|d| d >= 1).unwrap_or(false))
        .cloned()
        .collect();
    assert_eq!(theta2.len(), 2);

    let mut tuples = Vec::new();
    for w1 in w1s {
        for t1 in v1s {
            for w2 in w2s {
                for t2 in &theta2 {
                    tuples.push((w1.clone(), t1.clone(), w2.clone(), t2.clone()));
                }
            }
        }
    }
    assert_eq!(tuples.len(), 60);

    for (k, (w1, t1, w2, t2)) in tuples.iter().enumerate() {
        let code_start = Instant::now();
        let mut descriptors = zero_selection(&w);
        descriptors[1] = IdealDescriptor {
            component: 1,
            case: IdealCase::WThetaPlusY { w: w1.clone(), theta: t1.clone() },
        };
        descriptors[2] = IdealDescriptor {
            component: 2,
            case: IdealCase::WThetaPlusY { w: w2.clone(), theta: t2.clone() },
        };
        let code =
            build_code(&w.profile, &w.idem, &w.comps, &CodeSelection { descriptors }).unwrap();
        assert_eq!(code.cardinality, BigUint::from(4096u32));
        let words = enumerate_codewords(&code, 1 << 13).unwrap();
        assert_eq!(words.len(), 4096);
        let report = min_distances(&code, 1 << 13, true).unwrap();
        assert_eq!(report.d_hamming, 12, "tuple {k}");
        assert_eq!(report.d_lee, Some(20), "tuple {k}");
        let per = code_start.elapsed();
        assert!(per.as_secs_f64() < 2.0, "code {k} took {per:?}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 180.0, "took {elapsed:?}, budget 3 min");
    println!(
        "criterion 6: PASS — all 60 length-30 codes have d_H = 12, d_L = 20 in {elapsed:?}"
    );
    let _ = ctx;
}

#[test]
fn criterion_7_duality_suite_on_grid() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (p, m, n) in GRID {
        let w = world(p, m, n);
        let streams: Vec<Vec<(IdealDescriptor, _)>> = w
            .comps
            .iter()
            .map(|(c, s)| enumerate_ideals(c, s.as_ref()).unwrap())
            .collect();
        let ring_size = BigUint::from(p).pow(2 * m as u32 * 2 * n as u32);

        let mut selections: Vec<Vec<IdealDescriptor>> = Vec::new();
        // all single-component selections
        for (i, stream) in streams.iter().enumerate() {
            for (d, _) in stream {
                let mut sel = zero_selection(&w);
                sel[i] = d.clone();
                selections.push(sel);
            }
        }
        // at least 200 uniformly sampled selections
        for _ in 0..200 {
            let sel: Vec<IdealDescriptor> = streams
                .iter()
                .map(|stream| stream[rng.gen_range(0..stream.len())].0.clone())
                .collect();
            selections.push(sel);
        }

        for descriptors in selections {
            let sel = CodeSelection { descriptors };
            let code = build_code(&w.profile, &w.idem, &w.comps, &sel).unwrap();
            let dual = dual_code(&w.profile, &w.idem, &w.comps, &sel).unwrap();
            assert_eq!(
                &code.cardinality * &dual.cardinality,
                ring_size,
                "cardinality law (p={p}, m={m}, n={n})"
            );
            assert!(verify_duality(&code, &dual), "orthogonality (p={p}, m={m}, n={n})");
            if code.cardinality <= BigUint::from(1u32 << 12) {
                assert!(
                    dihedral_closure_check(&code, 1 << 14).unwrap_or(true),
                    "closure (p={p}, m={m}, n={n})"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 2 min");
    println!("criterion 7: PASS — duality suite over the parameter grid in {elapsed:?}");
}

#[test]
fn criterion_8_oracle_equivalence() {
    let start = Instant::now();

    // degree-1 component at p = 2: 7 ideals
    let w = world(2, 1, 1);
    let (c0, s0) = &w.comps[0];
    let brute: BTreeSet<BTreeSet<SkewElem>> =
        brute_force_ideals(c0, BruteForceStrategy::Auto, 1 << 10)
            .unwrap()
            .into_iter()
            .collect();
    assert_eq!(brute.len(), 7);
    let symbolic: BTreeSet<BTreeSet<SkewElem>> = enumerate_ideals(c0, s0.as_ref())
        .unwrap()
        .into_iter()
        .map(|(d, _)| materialize_ideal(c0, &d, 1 << 10).unwrap())
        .collect();
    assert_eq!(symbolic, brute);

    // degree-1 component at p = 3: 9 ideals
    let w = world(3, 1, 2);
    let (c0, s0) = &w.comps[0];
    let brute: BTreeSet<BTreeSet<SkewElem>> =
        brute_force_ideals(c0, BruteForceStrategy::Auto, 1 << 10)
            .unwrap()
            .into_iter()
            .collect();
    assert_eq!(brute.len(), 9);
    let symbolic: BTreeSet<BTreeSet<SkewElem>> = enumerate_ideals(c0, s0.as_ref())
        .unwrap()
        .into_iter()
        .map(|(d, _)| materialize_ideal(c0, &d, 1 << 10).unwrap())
        .collect();
    assert_eq!(symbolic, brute);

    // degree-2 self-reciprocal component at p = 2: 15 ideals
    let w = world(2, 1, 15);
    let (c1, s1) = &w.comps[1];
    let brute: BTreeSet<BTreeSet<SkewElem>> =
        brute_force_ideals(c1, BruteForceStrategy::Auto, 1 << 10)
            .unwrap()
            .into_iter()
            .collect();
    assert_eq!(brute.len(), 15);
    let symbolic: BTreeSet<BTreeSet<SkewElem>> = enumerate_ideals(c1, s1.as_ref())
        .unwrap()
        .into_iter()
        .map(|(d, _)| materialize_ideal(c1, &d, 1 << 10).unwrap())
        .collect();
    assert_eq!(symbolic, brute);

    // residue-level lattices: 2^{md/2} + 3
    assert_eq!(brute_force_residue_ideals(c1, 1 << 10).unwrap().len(), 5);
    let (c2, _) = &w.comps[2];
    assert_eq!(brute_force_residue_ideals(c2, 1 << 10).unwrap().len(), 7);
    let w34 = world(3, 1, 4);
    let (c2, _) = &w34.comps[2];
    assert_eq!(brute_force_residue_ideals(c2, 1 << 10).unwrap().len(), 6);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 2 min");
    println!("criterion 8: PASS — brute-force lattices match the enumeration in {elapsed:?}");
}

#[test]
fn criterion_9_pairing_identity_everywhere() {
    let start = Instant::now();
    let mut checked = 0usize;
    for (p, m, n) in [(2, 1, 15), GRID[0], GRID[1], GRID[2], GRID[3]] {
        let w = world(p, m, n);
        for (c, s) in &w.comps {
            for (d, _) in enumerate_ideals(c, s.as_ref()).unwrap() {
                let (g, h) = outer_matrices(c, s.as_ref(), &d).unwrap();
                assert!(
                    pairing_vanishes(c, &g, &h),
                    "pairing failed for {} (p={p}, m={m}, n={n})",
                    d.case.name()
                );
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("criterion 9: PASS — pairing identity on {checked} table rows in {elapsed:?}");
}
