//! Bi-mutation of 2-component links split as a connected sum `α # β`.
//!
//! The mutant of type `τ` is `α # β^τ`: `F` exchanges the two components of
//! `β`, `R` reverses both of its orientations, and `FR` does both.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::link::{connected_sum, inverse_mirror, reorder, reorient};
use crate::mu::{congruent, reduce_mod, LongitudeSystem, MilnorInvariants, MuIndex};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MutationType {
    F,
    R,
    FR,
}

impl MutationType {
    pub const ALL: [MutationType; 3] = [MutationType::F, MutationType::R, MutationType::FR];

    fn flips(self) -> bool {
        matches!(self, MutationType::F | MutationType::FR)
    }

    fn reverses(self) -> bool {
        matches!(self, MutationType::R | MutationType::FR)
    }
}

impl fmt::Display for MutationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutationType::F => "F",
            MutationType::R => "R",
            MutationType::FR => "FR",
        })
    }
}

impl FromStr for MutationType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(MutationType::F),
            "R" => Ok(MutationType::R),
            "FR" => Ok(MutationType::FR),
            _ => Err(Error::IndexParse(format!("unknown mutation type `{s}` (expected F, R or FR)"))),
        }
    }
}

/// `I^τ`: `F` exchanges 1 and 2, `R` reverses, `FR` does both.
pub fn transform_index(index: &MuIndex, tau: MutationType) -> Result<MuIndex> {
    require_two_component_index(index)?;
    let mut v: Vec<u32> = index.entries().to_vec();
    if tau.flips() {
        v.iter_mut().for_each(|c| *c = 3 - *c);
    }
    if tau.reverses() {
        v.reverse();
    }
    MuIndex::new(v)
}

fn require_two_component_index(index: &MuIndex) -> Result<()> {
    if index.entries().iter().any(|&c| c != 1 && c != 2) {
        return Err(Error::NotTwoComponentIndex(index.to_string()));
    }
    Ok(())
}

fn require_two(sys: &LongitudeSystem, name: &str) -> Result<()> {
    if sys.m() != 2 {
        return Err(Error::Incompatible(format!("{name} must have 2 components, got {}", sys.m())));
    }
    Ok(())
}

/// `β^τ`, the tangle `β` after the mutation involution.
pub fn transform_system(beta: &LongitudeSystem, tau: MutationType) -> Result<LongitudeSystem> {
    require_two(beta, "beta")?;
    let mut out = beta.clone();
    if tau.flips() {
        out = reorder(&out, &[1, 0])?;
    }
    if tau.reverses() {
        out = reorient(&out, &[0, 1].into())?;
    }
    Ok(out)
}

/// A 2-component link presented as the connected sum of two 2-component pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringLinkSum {
    alpha: LongitudeSystem,
    beta: LongitudeSystem,
}

impl StringLinkSum {
    pub fn new(alpha: LongitudeSystem, beta: LongitudeSystem) -> Result<Self> {
        require_two(&alpha, "alpha")?;
        require_two(&beta, "beta")?;
        if alpha.depth() != beta.depth() {
            return Err(Error::Incompatible(format!(
                "alpha has depth {} but beta has depth {}",
                alpha.depth(),
                beta.depth()
            )));
        }
        Ok(StringLinkSum { alpha, beta })
    }

    pub fn alpha(&self) -> &LongitudeSystem {
        &self.alpha
    }

    pub fn beta(&self) -> &LongitudeSystem {
        &self.beta
    }

    pub fn link(&self) -> LongitudeSystem {
        connected_sum(&self.alpha, &self.beta).expect("validated on construction")
    }

    pub fn mutant(&self, tau: MutationType) -> LongitudeSystem {
        let beta = transform_system(&self.beta, tau).expect("validated on construction");
        connected_sum(&self.alpha, &beta).expect("validated on construction")
    }
}

/// Predicted and computed `μ(I)` of a connected sum or one of its mutants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutantReport {
    pub index: MuIndex,
    /// `None` for the unmutated sum.
    #[serde(rename = "type")]
    pub mutation_type: Option<MutationType>,
    #[serde(with = "crate::json::bigint")]
    pub mu_alpha: BigInt,
    /// `μ_β(I^τ)`, or `μ_β(I)` for the unmutated sum.
    #[serde(with = "crate::json::bigint")]
    pub mu_beta_transformed: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub modulus: BigInt,
    /// `mu_alpha + mu_beta_transformed` reduced modulo `modulus`.
    #[serde(with = "crate::json::bigint")]
    pub residue: BigInt,
    /// `μ(I)` computed directly on the summed longitudes.
    #[serde(with = "crate::json::bigint")]
    pub mu_link: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub delta_link: BigInt,
    pub congruence_holds: bool,
}

fn report(
    alpha: &LongitudeSystem,
    beta: &LongitudeSystem,
    index: &MuIndex,
    tau: Option<MutationType>,
) -> Result<MutantReport> {
    let sum = StringLinkSum::new(alpha.clone(), beta.clone())?;
    let beta_index = match tau {
        Some(t) => transform_index(index, t)?,
        None => {
            require_two_component_index(index)?;
            index.clone()
        }
    };
    let a = MilnorInvariants::new(alpha);
    let b = MilnorInvariants::new(beta);
    let mu_alpha = a.mu(index)?;
    let mu_beta_transformed = b.mu(&beta_index)?;
    let modulus = a.delta(index)?.gcd(&b.delta(&beta_index)?);
    let predicted = &mu_alpha + &mu_beta_transformed;
    let link = match tau {
        Some(t) => sum.mutant(t),
        None => sum.link(),
    };
    let l = MilnorInvariants::new(&link);
    let mu_link = l.mu(index)?;
    Ok(MutantReport {
        index: index.clone(),
        mutation_type: tau,
        residue: reduce_mod(&predicted, &modulus),
        congruence_holds: congruent(&mu_link, &predicted, &modulus),
        delta_link: l.delta(index)?,
        mu_alpha,
        mu_beta_transformed,
        modulus,
        mu_link,
    })
}

/// `μ_{α#β}(I) ≡ μ_α(I) + μ_β(I) mod gcd(Δ_α(I), Δ_β(I))`.
pub fn csum_mu(alpha: &LongitudeSystem, beta: &LongitudeSystem, index: &MuIndex) -> Result<MutantReport> {
    report(alpha, beta, index, None)
}

/// `μ_{α#β^τ}(I) ≡ μ_α(I) + μ_β(I^τ) mod gcd(Δ_α(I), Δ_β(I^τ))`.
pub fn mutant_mu(
    alpha: &LongitudeSystem,
    beta: &LongitudeSystem,
    index: &MuIndex,
    tau: MutationType,
) -> Result<MutantReport> {
    report(alpha, beta, index, Some(tau))
}

/// Moves the linking number of `β` into `α` by full twists that cancel in
/// the sum: `α'` gains `x_2^k`, `x_1^k` at the end of its longitudes and `β'`
/// gains `x_2^{-k}`, `x_1^{-k}` at the start, with `k = lk(β)`. Hence
/// `α' # β'` has literally the same longitudes as `α # β`.
pub fn normalize_linking(
    alpha: &LongitudeSystem,
    beta: &LongitudeSystem,
) -> Result<(LongitudeSystem, LongitudeSystem)> {
    StringLinkSum::new(alpha.clone(), beta.clone())?;
    let k = beta.linking_number(1, 2);
    if k == 0 {
        return Ok((alpha.clone(), beta.clone()));
    }
    let twist = |g: u32, e: i64| Word::power_of(g, e);
    let a = LongitudeSystem::new(
        2,
        alpha.depth(),
        vec![alpha.longitude(1) * &twist(2, k), alpha.longitude(2) * &twist(1, k)],
    )?;
    let b = LongitudeSystem::new(
        2,
        beta.depth(),
        vec![twist(2, -k) * beta.longitude(1).clone(), twist(1, -k) * beta.longitude(2).clone()],
    )?;
    Ok((a, b))
}

/// Checks that every mutant of the normalized sum has the same `|μ̄(12)|` and
/// the same `μ̄(1122)` residue as the sum itself. Needs depth at least 5.
pub fn weight_lt6_invariance_check(alpha: &LongitudeSystem, beta: &LongitudeSystem) -> Result<bool> {
    let (a, b) = normalize_linking(alpha, beta)?;
    let sum = StringLinkSum::new(a, b)?;
    let i12: MuIndex = "12".parse()?;
    let i1122: MuIndex = "1122".parse()?;
    let base = MilnorInvariants::new(&sum.link());
    let lk = base.mu_bar(&i12)?.residue;
    let sato_levine = base.mu_bar(&i1122)?.residue;
    for tau in MutationType::ALL {
        let m = MilnorInvariants::new(&sum.mutant(tau));
        let r12 = m.mu_bar(&i12)?.residue;
        if r12 != lk && r12 != -&lk {
            return Ok(false);
        }
        if m.mu_bar(&i1122)?.residue != sato_levine {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_detector_preconditions(alpha: &LongitudeSystem, q: usize) -> Result<MilnorInvariants> {
    require_two(alpha, "alpha")?;
    if q < 2 || q + 1 > alpha.depth() {
        return Err(Error::WeightExceedsDepth { weight: q, depth: alpha.depth() });
    }
    let inv = MilnorInvariants::new(alpha);
    if q > 2 {
        if let Some(index) = inv.first_nonvanishing(q - 1)? {
            return Err(Error::LowerWeightNonvanishing { index: index.to_string(), weight: q });
        }
    }
    Ok(inv)
}

/// All `I ∈ {1,2}^q` with `μ_α(I) ≠ μ_α(I^τ)`, assuming every `μ̄_α` below
/// weight `q` vanishes (so these `μ` are honest integer invariants).
pub fn find_detector(alpha: &LongitudeSystem, q: usize, tau: MutationType) -> Result<Vec<MuIndex>> {
    let inv = check_detector_preconditions(alpha, q)?;
    let mut out = Vec::new();
    for index in MuIndex::all(2, q) {
        if inv.mu(&index)? != inv.mu(&transform_index(&index, tau)?)? {
            out.push(index);
        }
    }
    Ok(out)
}

/// The mutant `α # (α^{-1})^τ` of the ribbon sum `α # α^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub weight: usize,
    #[serde(rename = "type")]
    pub mutation_type: MutationType,
    /// Every mutant `μ̄` of weight below `weight` vanishes.
    pub vanishing_below: bool,
    /// Some detector gives a nonzero mutant `μ̄` at `weight`.
    pub nonvanishing: bool,
    pub reports: Vec<MutantReport>,
}

pub fn theorem_main_witness(alpha: &LongitudeSystem, q: usize, tau: MutationType) -> Result<WitnessReport> {
    let detectors = find_detector(alpha, q, tau)?;
    let beta = inverse_mirror(alpha);
    let mutant = MilnorInvariants::new(&StringLinkSum::new(alpha.clone(), beta.clone())?.mutant(tau));
    let vanishing_below = q == 2 || mutant.all_vanish_up_to(q - 1)?;
    let reports = detectors
        .iter()
        .map(|i| mutant_mu(alpha, &beta, i, tau))
        .collect::<Result<Vec<_>>>()?;
    let nonvanishing = reports.iter().any(|r| !r.residue.is_zero() && r.congruence_holds);
    Ok(WitnessReport { weight: q, mutation_type: tau, vanishing_below, nonvanishing, reports })
}
