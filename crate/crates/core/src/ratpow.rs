//! Per-class breakdown of the distinct rational-power count.
//!
//! Distinct rational-power factors partition by the conjugacy class of
//! their primitive root (two primitive roots of the same word coincide), so
//! the total is the sum of the per-class counts. Words with no squares have
//! an empty breakdown with total 0; they are legitimate inputs, not errors.

use std::collections::BTreeMap;

use crate::factor_index::{enumerate_rational_power_factors, RationalPowerFactor};
use crate::word::Word;
use crate::{Error, Result};

/// Rational-power totals, per-class sizes, and per-class length profiles.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct RpBreakdown {
    pub total: u64,
    /// class key -> number of distinct rational-power factors in the class.
    pub per_class: BTreeMap<Word, u64>,
    /// class key -> (factor length -> count at that exact length).
    pub per_class_length_profile: BTreeMap<Word, BTreeMap<usize, u64>>,
}

impl RpBreakdown {
    /// Root length of a class (the key is a rotation of the root).
    pub fn class_root_len(key: &Word) -> usize {
        key.len()
    }
}

/// Groups an already-enumerated factor list by class.
pub fn breakdown_from_factors(factors: &[RationalPowerFactor]) -> RpBreakdown {
    let mut per_class: BTreeMap<Word, u64> = BTreeMap::new();
    let mut profile: BTreeMap<Word, BTreeMap<usize, u64>> = BTreeMap::new();
    for f in factors {
        let key = (*f.class_key).clone();
        *per_class.entry(key.clone()).or_insert(0) += 1;
        *profile
            .entry(key)
            .or_default()
            .entry(f.total_len)
            .or_insert(0) += 1;
    }
    RpBreakdown {
        total: factors.len() as u64,
        per_class,
        per_class_length_profile: profile,
    }
}

/// Counts distinct rational-power factors of `w`, grouped by the conjugacy
/// class of the primitive root.
pub fn rp_with_breakdown(w: &Word) -> Result<RpBreakdown> {
    let factors = enumerate_rational_power_factors(w)?;
    Ok(breakdown_from_factors(&factors))
}

/// Per-length member counts of one class. Errors on a class that never
/// occurs squared in `w`.
pub fn qclass_length_profile(w: &Word, class_key: &Word) -> Result<BTreeMap<usize, u64>> {
    let breakdown = rp_with_breakdown(w)?;
    breakdown
        .per_class_length_profile
        .get(class_key)
        .cloned()
        .ok_or(Error::UnknownClass)
}
