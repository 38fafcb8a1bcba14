//! Canonical JSON forms of the library's data: factor profiles, idempotent
//! families, ideal descriptors, selections, codes and weight reports.
//!
//! Ring elements serialize as plain residues of Z_{p²} when m = 1 and as
//! coefficient arrays otherwise; polynomials are ascending coefficient
//! lists. Parsing validates every descriptor parameter against the
//! component's computed solution sets and reports failures with a JSON
//! pointer to the offending value.

use serde_json::{json, Map, Value};

use crate::code_builder::{CodeSelection, LinearCode};
use crate::component_algebra::{ComponentAlgebra, ComponentKind, SolutionSets};
use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRingContext, GrElement, ResidueElement};
use crate::ideal_enumeration::{IdealCase, IdealDescriptor};
use crate::metrics_oracle::WeightReport;
use crate::ring_poly::{FactorKind, FactorProfile, IdempotentFamily, RPoly, ResiduePoly};

fn schema_err(pointer: &str, detail: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.to_string(), detail: detail.into() }
}

// ---- elements ----

pub fn gr_to_json(ctx: &GaloisRingContext, a: &GrElement) -> Value {
    if ctx.m() == 1 {
        json!(a.coeffs[0])
    } else {
        json!(a.coeffs)
    }
}

pub fn gr_from_json(ctx: &GaloisRingContext, v: &Value, ptr: &str) -> Result<GrElement> {
    let coeffs: Vec<u32> = if ctx.m() == 1 {
        vec![v
            .as_u64()
            .ok_or_else(|| schema_err(ptr, "expected an integer residue"))? as u32]
    } else {
        let arr = v
            .as_array()
            .ok_or_else(|| schema_err(ptr, "expected a coefficient array"))?;
        if arr.len() != ctx.m() {
            return Err(schema_err(ptr, format!("expected {} coefficients", ctx.m())));
        }
        arr.iter()
            .map(|x| {
                x.as_u64()
                    .map(|c| c as u32)
                    .ok_or_else(|| schema_err(ptr, "expected an integer residue"))
            })
            .collect::<Result<_>>()?
    };
    Ok(ctx.element(&coeffs))
}

fn res_to_json(ctx: &GaloisRingContext, a: &ResidueElement) -> Value {
    if ctx.m() == 1 {
        json!(a.coeffs[0])
    } else {
        json!(a.coeffs)
    }
}

pub fn rpoly_to_json(ctx: &GaloisRingContext, a: &RPoly) -> Value {
    Value::Array(a.coeffs.iter().map(|c| gr_to_json(ctx, c)).collect())
}

pub fn rpoly_from_json(ctx: &GaloisRingContext, v: &Value, ptr: &str) -> Result<RPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema_err(ptr, "expected a coefficient list"))?;
    let coeffs = arr
        .iter()
        .enumerate()
        .map(|(k, x)| gr_from_json(ctx, x, &format!("{ptr}/{k}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ctx.rp_from(coeffs))
}

pub fn respoly_to_json(ctx: &GaloisRingContext, a: &ResiduePoly) -> Value {
    Value::Array(a.coeffs.iter().map(|c| res_to_json(ctx, c)).collect())
}

pub fn respoly_from_json(ctx: &GaloisRingContext, v: &Value, ptr: &str) -> Result<ResiduePoly> {
    let rp = rpoly_from_json(ctx, v, ptr)?;
    for c in &rp.coeffs {
        if c.coeffs.iter().any(|&x| x >= ctx.p()) {
            return Err(schema_err(ptr, "residue coefficients must lie below p"));
        }
    }
    Ok(ctx.rp_residue(&rp))
}

// ---- factor profile / idempotents ----

pub fn profile_to_json(profile: &FactorProfile) -> Value {
    let ctx = &profile.ctx;
    let factors: Vec<Value> = profile
        .factors
        .iter()
        .map(|f| {
            let kind = match f.kind {
                FactorKind::Unity => "unity",
                FactorKind::SelfReciprocal => "self_reciprocal",
                FactorKind::Pair => "pair",
            };
            let mut obj = Map::new();
            obj.insert("i".into(), json!(f.index));
            obj.insert("kind".into(), json!(kind));
            obj.insert("f".into(), rpoly_to_json(ctx, &f.f));
            if let Some(rho) = &f.rho {
                obj.insert("rho".into(), rpoly_to_json(ctx, rho));
            }
            obj.insert("d".into(), json!(f.d));
            Value::Object(obj)
        })
        .collect();
    json!({
        "p": ctx.p(),
        "m": ctx.m(),
        "n": profile.n,
        "factors": factors,
        "r": profile.r,
        "t": profile.t,
        "lambda": profile.lambda,
    })
}

pub fn idempotents_to_json(profile: &FactorProfile, idem: &IdempotentFamily) -> Value {
    let ctx = &profile.ctx;
    let eps: Vec<Value> = idem.eps.iter().map(|e| rpoly_to_json(ctx, e)).collect();
    let pair_eps: Vec<Value> = idem
        .pair_eps
        .iter()
        .enumerate()
        .filter_map(|(i, pe)| {
            pe.as_ref().map(|(e1, e2)| {
                json!({
                    "i": i,
                    "eps1": rpoly_to_json(ctx, e1),
                    "eps2": rpoly_to_json(ctx, e2),
                })
            })
        })
        .collect();
    json!({
        "p": ctx.p(),
        "m": ctx.m(),
        "n": profile.n,
        "eps": eps,
        "pair_eps": pair_eps,
    })
}

// ---- descriptors ----

pub fn descriptor_to_json(ctx: &GaloisRingContext, desc: &IdealDescriptor) -> Value {
    let mut params = Map::new();
    match &desc.case {
        IdealCase::YMinusOnePlus2u { u } => {
            params.insert("u".into(), gr_to_json(ctx, u));
        }
        IdealCase::PWPlusY { w } | IdealCase::WPlusYPlusP { w } => {
            params.insert("w".into(), rpoly_to_json(ctx, w));
        }
        IdealCase::WThetaPlusY { w, theta } => {
            params.insert("w".into(), rpoly_to_json(ctx, w));
            params.insert("theta".into(), respoly_to_json(ctx, theta));
        }
        IdealCase::PEps { j } | IdealCase::EpsPlusP { j } => {
            params.insert("j".into(), json!(j));
        }
        IdealCase::EpsPlusPBy { j, b } => {
            params.insert("j".into(), json!(j));
            params.insert("b".into(), respoly_to_json(ctx, b));
        }
        _ => {}
    }
    json!({
        "i": desc.component,
        "case": desc.case.name(),
        "params": Value::Object(params),
    })
}

fn param<'v>(v: &'v Value, key: &str, ptr: &str) -> Result<&'v Value> {
    v.get("params")
        .and_then(|p| p.get(key))
        .ok_or_else(|| schema_err(&format!("{ptr}/params/{key}"), "missing parameter"))
}

/// Parse one descriptor, validating every parameter against the component's
/// solution sets.
pub fn descriptor_from_json(
    comp: &ComponentAlgebra,
    sets: Option<&SolutionSets>,
    v: &Value,
    ptr: &str,
) -> Result<IdealDescriptor> {
    let ctx = &comp.ctx;
    let i = v
        .get("i")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_err(&format!("{ptr}/i"), "missing component index"))? as usize;
    if i != comp.index {
        return Err(schema_err(
            &format!("{ptr}/i"),
            format!("descriptor is for component {i}, expected {}", comp.index),
        ));
    }
    let case_name = v
        .get("case")
        .and_then(Value::as_str)
        .ok_or_else(|| schema_err(&format!("{ptr}/case"), "missing case tag"))?;
    let linear = comp.kind == ComponentKind::Linear;
    let p2 = ctx.p() == 2;

    let parse_w = |ptr_w: &str, raw: &Value| -> Result<RPoly> {
        let w = rpoly_from_json(ctx, raw, ptr_w)?;
        let wlist = sets
            .map(|s| s.w_list())
            .ok_or_else(|| schema_err(ptr_w, "component has no unit solution set"))?;
        if !wlist.contains(&w) {
            return Err(schema_err(ptr_w, "w is not in the unit solution set"));
        }
        Ok(w)
    };

    let case = match case_name {
        "zero" => IdealCase::Zero,
        "full" => IdealCase::Full,
        "p_scalar" => IdealCase::PScalar,
        "p_y_plus_1" if linear && !p2 => IdealCase::PYPlusOne,
        "p_y_minus_1" if linear => IdealCase::PYMinusOne,
        "y_plus_1" if linear && !p2 => IdealCase::YPlusOne,
        "y_minus_1" if linear && !p2 => IdealCase::YMinusOne,
        "y_plus_1_plus_p" if linear && !p2 => IdealCase::YPlusOnePlusP,
        "y_minus_1_plus_p" if linear => IdealCase::YMinusOnePlusP,
        "y_minus_1_plus_2u" if linear && p2 => {
            let raw = param(v, "u", ptr)?;
            let u = gr_from_json(ctx, raw, &format!("{ptr}/params/u"))?;
            if !ctx.teichmuller_set().contains(&u) {
                return Err(schema_err(
                    &format!("{ptr}/params/u"),
                    "u is not a Teichmüller representative",
                ));
            }
            IdealCase::YMinusOnePlus2u { u }
        }
        "p_w_plus_y" if !linear => {
            let w = parse_w(&format!("{ptr}/params/w"), param(v, "w", ptr)?)?;
            IdealCase::PWPlusY { w }
        }
        "w_plus_y_plus_p" if !linear => {
            let w = parse_w(&format!("{ptr}/params/w"), param(v, "w", ptr)?)?;
            IdealCase::WPlusYPlusP { w }
        }
        "w_theta_plus_y" if !linear => {
            let w = parse_w(&format!("{ptr}/params/w"), param(v, "w", ptr)?)?;
            let tptr = format!("{ptr}/params/theta");
            let theta = respoly_from_json(ctx, param(v, "theta", ptr)?, &tptr)?;
            let ok = match sets {
                Some(SolutionSets::SelfReciprocal { v_set, .. }) => v_set.contains(&theta),
                Some(SolutionSets::ReciprocalPair { w_entries, .. }) => w_entries
                    .iter()
                    .find(|e| e.w == w)
                    .map(|e| e.v_set.contains(&theta))
                    .unwrap_or(false),
                _ => false,
            };
            if !ok {
                return Err(schema_err(&tptr, "theta is not in the residue solution set"));
            }
            IdealCase::WThetaPlusY { w, theta }
        }
        "p_eps" | "eps_plus_p" | "eps_plus_p_by"
            if comp.kind == ComponentKind::ReciprocalPair =>
        {
            let j = param(v, "j", ptr)?
                .as_u64()
                .filter(|j| *j == 1 || *j == 2)
                .ok_or_else(|| schema_err(&format!("{ptr}/params/j"), "j must be 1 or 2"))?
                as u8;
            match case_name {
                "p_eps" => IdealCase::PEps { j },
                "eps_plus_p" => IdealCase::EpsPlusP { j },
                _ => {
                    let bptr = format!("{ptr}/params/b");
                    let b = respoly_from_json(ctx, param(v, "b", ptr)?, &bptr)?;
                    let Some(SolutionSets::ReciprocalPair { k1, k2, .. }) = sets else {
                        return Err(schema_err(&bptr, "component has no block fields"));
                    };
                    let field = if j == 1 { k1 } else { k2 };
                    if !field.contains(&b) {
                        return Err(schema_err(&bptr, "b is not in the block residue field"));
                    }
                    IdealCase::EpsPlusPBy { j, b }
                }
            }
        }
        other => {
            return Err(schema_err(
                &format!("{ptr}/case"),
                format!("unknown or inapplicable case tag {other:?}"),
            ))
        }
    };
    Ok(IdealDescriptor { component: i, case })
}

// ---- selections ----

pub struct SelectionHeader {
    pub p: u32,
    pub m: usize,
    pub n: u64,
    pub modulus: Option<Vec<u32>>,
}

pub fn selection_header_from_json(v: &Value) -> Result<SelectionHeader> {
    let p = v
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_err("/p", "missing prime p"))? as u32;
    let m = v
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_err("/m", "missing extension degree m"))? as usize;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_err("/n", "missing length n"))?;
    let modulus = match v.get("modulus") {
        None | Some(Value::Null) => None,
        Some(Value::Array(arr)) => Some(
            arr.iter()
                .map(|x| {
                    x.as_u64()
                        .map(|c| c as u32)
                        .ok_or_else(|| schema_err("/modulus", "expected integers"))
                })
                .collect::<Result<Vec<u32>>>()?,
        ),
        Some(_) => return Err(schema_err("/modulus", "expected a coefficient array")),
    };
    Ok(SelectionHeader { p, m, n, modulus })
}

pub fn selection_from_json(
    components: &[(ComponentAlgebra, Option<SolutionSets>)],
    v: &Value,
) -> Result<CodeSelection> {
    let arr = v
        .get("selection")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err("/selection", "missing selection array"))?;
    if arr.len() != components.len() {
        return Err(schema_err(
            "/selection",
            format!("expected {} descriptors, got {}", components.len(), arr.len()),
        ));
    }
    let descriptors = arr
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let (comp, sets) = &components[k];
            descriptor_from_json(comp, sets.as_ref(), d, &format!("/selection/{k}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CodeSelection { descriptors })
}

pub fn selection_to_json(
    ctx: &GaloisRingContext,
    n: u64,
    selection: &CodeSelection,
) -> Value {
    json!({
        "p": ctx.p(),
        "m": ctx.m(),
        "n": n,
        "selection": selection
            .descriptors
            .iter()
            .map(|d| descriptor_to_json(ctx, d))
            .collect::<Vec<_>>(),
    })
}

// ---- codes and reports ----

pub fn code_to_json(code: &LinearCode) -> Value {
    let ctx = &code.ctx;
    let rows: Vec<Value> = code
        .rows
        .iter()
        .map(|row| Value::Array(row.iter().map(|c| gr_to_json(ctx, c)).collect()))
        .collect();
    json!({
        "p": ctx.p(),
        "m": ctx.m(),
        "n": code.n,
        "selection": code.selection
            .descriptors
            .iter()
            .map(|d| descriptor_to_json(ctx, d))
            .collect::<Vec<_>>(),
        "rows": rows,
        "cardinality": code.cardinality.to_string(),
    })
}

pub fn weight_report_to_json(report: &WeightReport, elapsed_ms: u128) -> Value {
    let mut obj = Map::new();
    obj.insert("d_hamming".into(), json!(report.d_hamming));
    if let Some(dl) = report.d_lee {
        obj.insert("d_lee".into(), json!(dl));
    }
    obj.insert("words_scanned".into(), json!(report.words_scanned));
    obj.insert("elapsed_ms".into(), json!(elapsed_ms as u64));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component_algebra::{build_component, solution_sets};
    use crate::ideal_enumeration::enumerate_ideals;
    use crate::ring_poly::{factor_unity, primary_idempotents};

    fn build(p: u32, m: usize, n: u64) -> (FactorProfile, Vec<(ComponentAlgebra, Option<SolutionSets>)>) {
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
        (profile, comps)
    }

    #[test]
    fn descriptor_roundtrip_is_stable() {
        for (p, m, n) in [(2u32, 1usize, 15u64), (3, 1, 4), (2, 2, 5)] {
            let (profile, comps) = build(p, m, n);
            let ctx = &profile.ctx;
            for (c, s) in &comps {
                for (d, _) in enumerate_ideals(c, s.as_ref()).unwrap() {
                    let v = descriptor_to_json(ctx, &d);
                    let back = descriptor_from_json(c, s.as_ref(), &v, "/selection/0").unwrap();
                    assert_eq!(back, d);
                    // byte-identical canonical form
                    let v2 = descriptor_to_json(ctx, &back);
                    assert_eq!(
                        serde_json::to_string(&v).unwrap(),
                        serde_json::to_string(&v2).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn unknown_case_tag_is_rejected() {
        let (_, comps) = build(2, 1, 15);
        let (c, s) = &comps[0];
        let v = json!({"i": 0, "case": "mystery", "params": {}});
        let err = descriptor_from_json(c, s.as_ref(), &v, "/selection/0").unwrap_err();
        assert!(matches!(err, Error::Schema { .. }));
    }

    #[test]
    fn foreign_parameter_is_rejected_with_pointer() {
        let (profile, comps) = build(2, 1, 15);
        let ctx = &profile.ctx;
        let (c1, s1) = &comps[1];
        // x + 1 is a unit of A₁ but not in the solution set
        let bad = json!({
            "i": 1,
            "case": "p_w_plus_y",
            "params": {"w": rpoly_to_json(ctx, &ctx.rp_from_scalars(&[1, 1]))},
        });
        let err = descriptor_from_json(c1, s1.as_ref(), &bad, "/selection/1").unwrap_err();
        let Error::Schema { pointer, .. } = err else { panic!("expected schema error") };
        assert_eq!(pointer, "/selection/1/params/w");
    }

    #[test]
    fn profile_json_shape() {
        let (profile, _) = build(2, 1, 15);
        let v = profile_to_json(&profile);
        assert_eq!(v["r"], json!(2));
        assert_eq!(v["t"], json!(1));
        assert_eq!(v["lambda"], json!(1));
        assert_eq!(v["factors"][0]["f"], json!([3, 1]));
        assert_eq!(v["factors"][3]["rho"], json!([1, 3, 2, 0, 1]));
    }
}
