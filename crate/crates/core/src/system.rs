//! Convenience facade bundling the full pipeline for one parameter set:
//! factorization, idempotents, components and their solution sets.

use crate::code_builder::{build_code, dual_code, CodeSelection, LinearCode};
use crate::component_algebra::{build_component, solution_sets, ComponentAlgebra, SolutionSets};
use crate::error::Result;
use crate::galois_ring::GaloisRingContext;
use crate::ring_poly::{factor_unity, primary_idempotents, FactorProfile, IdempotentFamily};

pub struct CodeSystem {
    pub profile: FactorProfile,
    pub idem: IdempotentFamily,
    pub components: Vec<(ComponentAlgebra, Option<SolutionSets>)>,
}

impl CodeSystem {
    pub fn new(p: u32, m: usize, n: u64, modulus: Option<Vec<u32>>) -> Result<CodeSystem> {
        let ctx = GaloisRingContext::new(p, m, modulus)?;
        let profile = factor_unity(&ctx, n)?;
        let idem = primary_idempotents(&profile)?;
        let components = (0..profile.factors.len())
            .map(|i| {
                let c = build_component(&profile, &idem, i)?;
                let s = match solution_sets(&c) {
                    Ok(s) => Some(s),
                    Err(crate::error::Error::KindMismatch(_)) => None,
                    Err(e) => return Err(e),
                };
                Ok((c, s))
            })
            .collect::<Result<_>>()?;
        Ok(CodeSystem { profile, idem, components })
    }

    pub fn ctx(&self) -> &GaloisRingContext {
        &self.profile.ctx
    }

    pub fn build(&self, selection: &CodeSelection) -> Result<LinearCode> {
        build_code(&self.profile, &self.idem, &self.components, selection)
    }

    pub fn dual(&self, selection: &CodeSelection) -> Result<LinearCode> {
        dual_code(&self.profile, &self.idem, &self.components, selection)
    }
}
