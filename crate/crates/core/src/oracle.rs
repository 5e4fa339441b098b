//! Brute-force rational-power counter, kept deliberately naive and apart
//! from the indexed path: every substring goes into an exact set, the set is
//! filtered by a linear period scan, and nothing here is shared with
//! `factor_index` beyond the text codec.

use std::collections::HashSet;

use crate::word::Word;
use crate::{Error, Result};

/// Longest input the oracle accepts; beyond this the cubic scan is too slow
/// to be useful as a cross-check.
pub const ORACLE_MAX_LEN: usize = 400;

/// Counts distinct rational-power factors by exhaustive substring
/// enumeration.
pub fn rp_oracle(w: &Word) -> Result<u64> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    if w.len() > ORACLE_MAX_LEN {
        return Err(Error::OracleLimit {
            len: w.len(),
            max: ORACLE_MAX_LEN,
        });
    }
    let s = w.letters();
    let mut substrings: HashSet<&[u8]> = HashSet::new();
    for i in 0..s.len() {
        for j in i + 1..=s.len() {
            substrings.insert(&s[i..j]);
        }
    }
    let mut count = 0u64;
    for f in substrings {
        let mut period = f.len();
        for p in 1..f.len() {
            if (p..f.len()).all(|k| f[k] == f[k - p]) {
                period = p;
                break;
            }
        }
        if f.len() >= 2 * period {
            count += 1;
        }
    }
    Ok(count)
}
