//! Lower central quotients of surgery manifolds.
//!
//! For 0-framed surgery on `L`, `π_1(M_L)/π_1(M_L)_q` is presented as
//! `F/⟨F_q, w_1, …, w_m⟩` with the longitudes as relators. It is the free
//! nilpotent group `F/F_q` exactly when every relator lies in `F_q`, which
//! happens exactly when all `μ̄` of weight at most `q` vanish. Both sides are
//! computed independently and must agree.

use serde::Serialize;

use crate::bracket::{canonical_values, evaluate, massey_sum, Evaluation, LinkingExpr};
use crate::corpus;
use crate::error::{Error, Result};
use crate::link::inverse_mirror;
use crate::magnus::lcs_depth;
use crate::mu::{LongitudeSystem, MilnorInvariants, MuIndex, MuValue};
use crate::mutation::{find_detector, MutationType, StringLinkSum};

/// A longitude that fails to lie in `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorWitness {
    /// 1-based component.
    pub component: usize,
    /// Largest `d` with the longitude in `F_d`.
    pub lcs_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcqReport {
    pub q: usize,
    pub free: bool,
    /// Lexicographically least index of weight `<= q` with nonzero `μ̄`.
    pub witness: Option<MuIndex>,
    pub witness_value: Option<MuValue>,
    /// First relator outside `F_q`.
    pub relator: Option<RelatorWitness>,
}

/// Decides whether `F/⟨F_q, w_1, …, w_m⟩ ≅ F/F_q`. Needs `1 <= q <= depth - 1`
/// so that weight-`q` invariants are readable.
pub fn lcq_is_free(system: &LongitudeSystem, q: usize) -> Result<LcqReport> {
    if q == 0 || q + 1 > system.depth() {
        return Err(Error::WeightExceedsDepth { weight: q, depth: system.depth() });
    }
    let inv = MilnorInvariants::new(system);
    let witness = if q >= 2 { inv.first_nonvanishing(q)? } else { None };
    let witness_value = witness.as_ref().map(|i| inv.mu_bar(i)).transpose()?;

    let relator = system.longitudes().iter().enumerate().find_map(|(i, w)| {
        let d = lcs_depth(w, q + 1);
        (d < q).then_some(RelatorWitness { component: i + 1, lcs_depth: d })
    });

    let mu_route = witness.is_none();
    let relator_route = relator.is_none();
    if mu_route != relator_route {
        return Err(Error::RouteDisagreement { mu_route, relator_route });
    }
    Ok(LcqReport { q, free: mu_route, witness, witness_value, relator })
}

/// The weight-nine self-mutation example, evaluated through the bracket
/// calculus rather than a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfMutationHeadline {
    pub q: usize,
    pub index: MuIndex,
    pub massey_sum: LinkingExpr,
    pub evaluation: Evaluation,
}

pub fn self_mutation_headline() -> SelfMutationHeadline {
    let index: MuIndex = "122121222".parse().expect("valid literal");
    let expr = massey_sum(&index).expect("weight nine is supported");
    let values = canonical_values(&corpus::star_values()).expect("valid literal");
    let evaluation = evaluate(&expr, &values, true);
    SelfMutationHeadline { q: 9, index, massey_sum: expr, evaluation }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutativePairReport {
    pub q: usize,
    #[serde(rename = "type")]
    pub mutation_type: MutationType,
    pub detectors: Vec<MuIndex>,
    pub detector_found: bool,
    /// `α # α^{-1}`.
    pub link: LcqReport,
    /// `α # (α^{-1})^τ`.
    pub mutant: LcqReport,
    /// The link's quotient is free while the mutant's is not.
    pub distinct: bool,
    pub headline: SelfMutationHeadline,
}

/// Compares the `q`-th lower central quotients of `α # α^{-1}` and its
/// `τ`-mutant. Requires every `μ̄_α` below weight `q` to vanish.
pub fn mutative_pair_report(alpha: &LongitudeSystem, q: usize, tau: MutationType) -> Result<MutativePairReport> {
    let detectors = find_detector(alpha, q, tau)?;
    let sum = StringLinkSum::new(alpha.clone(), inverse_mirror(alpha))?;
    let link = lcq_is_free(&sum.link(), q)?;
    let mutant = lcq_is_free(&sum.mutant(tau), q)?;
    Ok(MutativePairReport {
        q,
        mutation_type: tau,
        detector_found: !detectors.is_empty(),
        distinct: link.free && !mutant.free,
        detectors,
        link,
        mutant,
        headline: self_mutation_headline(),
    })
}
