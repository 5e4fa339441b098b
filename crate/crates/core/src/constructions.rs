//! Word families with quadratically many distinct rational-power factors.
//!
//! Two families are provided: the runs family `(a^n b a^{n-1} b)^4 a^{n-1}`
//! with the proven count `9 n^2 + 9 n + 1`, and a morphic family built by
//! applying `0 -> a^t b, 1 -> a^{t-1} b` to prefixes of the Fibonacci word.
//! The morphic family's count formulas come from an unpublished draft
//! table; they are carried as *hypotheses* and must be confirmed by
//! measurement, never asserted.

use std::collections::BTreeMap;

use crate::ratpow::rp_with_breakdown;
use crate::word::Word;
use crate::{Error, Result};

/// Parameters of one generated word.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConstructionSpec {
    Wn { n: usize },
    FibMorphic { t: usize, d: usize, prefix_len: usize },
}

impl ConstructionSpec {
    pub fn generate(&self) -> Result<Word> {
        match *self {
            ConstructionSpec::Wn { n } => gen_wn(n),
            ConstructionSpec::FibMorphic { t, d, prefix_len } => gen_fib_morphic(t, d, prefix_len),
        }
    }
}

/// `(a^n b a^{n-1} b)^4 a^{n-1}`, of length `9 n + 3`.
pub fn gen_wn(n: usize) -> Result<Word> {
    if n < 1 {
        return Err(Error::Parameter("wn needs n >= 1".into()));
    }
    let mut letters = Vec::with_capacity(9 * n + 3);
    for _ in 0..4 {
        letters.extend(std::iter::repeat_n(0u8, n));
        letters.push(1);
        letters.extend(std::iter::repeat_n(0u8, n - 1));
        letters.push(1);
    }
    letters.extend(std::iter::repeat_n(0u8, n - 1));
    debug_assert_eq!(letters.len(), 9 * n + 3);
    Word::from_letters(letters)
}

/// Predicted count for [`gen_wn`] with its four-class split, keyed by the
/// canonical rotation of each root. Valid for `n >= 2`; the class split
/// degenerates below that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WnExpectedRp {
    pub total: u64,
    pub per_class: BTreeMap<Word, u64>,
}

pub fn expected_rp_wn(n: usize) -> Result<WnExpectedRp> {
    if n < 2 {
        return Err(Error::FormulaRange);
    }
    let nu = n as u64;
    let mut per_class = BTreeMap::new();
    let run = |a: usize, tail: &[u8]| {
        let mut letters = vec![0u8; a];
        letters.extend_from_slice(tail);
        Word::from_letters(letters).expect("binary letters")
    };
    // a^k for 2 <= k <= n
    per_class.insert(run(1, &[]), nu - 1);
    // roots conjugate to a^{n-1} b, least rotation a^{n-1} b
    per_class.insert(run(n - 1, &[1]), nu * (nu + 1) / 2);
    // roots conjugate to a^{n-1} b a, least rotation a^n b
    per_class.insert(run(n, &[1]), nu * (nu - 1) / 2);
    // roots conjugate to a^{n-1} b a^n b, least rotation a^n b a^{n-1} b
    let mut long_key = vec![0u8; n];
    long_key.push(1);
    long_key.extend(std::iter::repeat_n(0u8, n - 1));
    long_key.push(1);
    per_class.insert(
        Word::from_letters(long_key).expect("binary letters"),
        (2 * nu + 1) * (2 * nu + 2) / 2 + (2 * nu + 1) * (3 * nu + 1),
    );
    let total = 9 * nu * nu + 9 * nu + 1;
    debug_assert_eq!(per_class.values().sum::<u64>(), total);
    Ok(WnExpectedRp { total, per_class })
}

/// Prefix of the fixed point of `0 -> 01, 1 -> 0` starting from 0.
pub fn fibonacci_prefix(len: usize) -> Word {
    let mut cur = vec![0u8];
    while cur.len() < len {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &c in &cur {
            if c == 0 {
                next.push(0);
                next.push(1);
            } else {
                next.push(0);
            }
        }
        cur = next;
    }
    cur.truncate(len);
    Word::from_letters(cur).expect("binary letters")
}

/// Prefix lengths for which the draft records data, mapped to the cut
/// position of the partial block `P`. The cut 17 for the 55-prefix is
/// recorded explicitly in the draft; the other cuts are recovered from its
/// leading-coefficient table (each denominator factors through the block
/// length at the optimal partial run).
const FIB_CUTS: [(usize, usize); 4] = [(13, 4), (21, 6), (34, 11), (55, 17)];

fn fib_cut(prefix_len: usize) -> Result<usize> {
    FIB_CUTS
        .iter()
        .find(|&&(p, _)| p == prefix_len)
        .map(|&(_, c)| c)
        .ok_or_else(|| {
            Error::Parameter(format!(
                "unsupported fibonacci prefix length {prefix_len} (use 13, 21, 34, or 55)"
            ))
        })
}

fn apply_run_morphism(t: usize, bits: &Word) -> Vec<u8> {
    let mut out = Vec::new();
    for &b in bits.letters() {
        let run = if b == 0 { t } else { t - 1 };
        out.extend(std::iter::repeat_n(0u8, run));
        out.push(1);
    }
    out
}

/// `Q^4 P a^d` where `Q` is the morphic image of the Fibonacci prefix and
/// `P` the image of its cut; for the 55-prefix the length is
/// `237 t + 147 + d`.
pub fn gen_fib_morphic(t: usize, d: usize, prefix_len: usize) -> Result<Word> {
    if t < 1 {
        return Err(Error::Parameter("fib family needs t >= 1".into()));
    }
    if d + 1 > t {
        return Err(Error::Parameter(format!(
            "fib family needs 0 <= d <= t - 1, got d = {d}, t = {t}"
        )));
    }
    let cut = fib_cut(prefix_len)?;
    let block = apply_run_morphism(t, &fibonacci_prefix(prefix_len));
    let partial = apply_run_morphism(t, &fibonacci_prefix(cut));
    let mut letters = Vec::with_capacity(4 * block.len() + partial.len() + d);
    for _ in 0..4 {
        letters.extend_from_slice(&block);
    }
    letters.extend_from_slice(&partial);
    letters.extend(std::iter::repeat_n(0u8, d));
    Word::from_letters(letters)
}

/// Draft-table prediction for the 55-prefix family: what the count is
/// *claimed* to be, never a verified fact.
pub fn fib_draft_prediction(t: usize, d: usize) -> u64 {
    let (t, d) = (t as u64, d as u64);
    6491 * t * t + 8099 * t + 2524 + d * (55 * t + 34)
}

/// Draft leading coefficient (numerator, denominator) of count / length^2
/// for each supported prefix length.
pub fn fib_draft_coefficient(prefix_len: usize) -> Option<(u64, u64)> {
    match prefix_len {
        13 => Some((169, 1464)),
        21 => Some((441, 3818)),
        34 => Some((289, 2501)),
        55 => Some((3025, 26176)),
        _ => None,
    }
}

/// Measurement of one morphic word against the draft formula.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FibAudit {
    pub t: usize,
    pub d: usize,
    pub length: usize,
    pub predicted_rp: u64,
    pub measured_rp: u64,
    pub confirmed: bool,
}

/// Measures the 55-prefix word at (t, d) and reports whether the draft
/// formula matches.
pub fn audit_fib_hypothesis(t: usize, d: usize) -> Result<FibAudit> {
    let word = gen_fib_morphic(t, d, 55)?;
    let measured = rp_with_breakdown(&word)?.total;
    let predicted = fib_draft_prediction(t, d);
    Ok(FibAudit {
        t,
        d,
        length: word.len(),
        predicted_rp: predicted,
        measured_rp: measured,
        confirmed: measured == predicted,
    })
}

// ---------------------------------------------------------------------------
// search seeds
// ---------------------------------------------------------------------------

/// Length-`len` prefix of the periodic runs pattern `(a^k b a^{k-1} b)^inf`
/// with `k` chosen so that the full construction fits; at `len = 9k + 3`
/// this is exactly `gen_wn(k)`.
pub fn wn_seed_word(len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::EmptyInput);
    }
    let k = if len >= 12 { (len - 3) / 9 } else { 1 };
    let mut period = Vec::with_capacity(2 * k + 1);
    period.extend(std::iter::repeat_n(0u8, k));
    period.push(1);
    period.extend(std::iter::repeat_n(0u8, k - 1));
    period.push(1);
    let letters: Vec<u8> = (0..len).map(|i| period[i % period.len()]).collect();
    Word::from_letters(letters)
}

/// Length-`len` prefix of the periodic morphic block `Q_t^inf`, with `t`
/// sized to the requested length; at `len = 237t + 147 + d` (d < t) this
/// reproduces the morphic construction.
pub fn fib_seed_word(len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::EmptyInput);
    }
    let t = (((len as i64 - 147) as f64 / 237.0).round() as i64).max(1) as usize;
    let block = apply_run_morphism(t, &fibonacci_prefix(55));
    let letters: Vec<u8> = (0..len).map(|i| block[i % block.len()]).collect();
    Word::from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rp_oracle;

    #[test]
    fn wn_examples() {
        assert_eq!(gen_wn(2).unwrap().text(), "aababaababaababaababa");
        assert_eq!(gen_wn(2).unwrap().len(), 21);
        assert_eq!(gen_wn(1).unwrap().text(), "abbabbabbabb");
        assert_eq!(gen_wn(3).unwrap().len(), 30);
        assert!(gen_wn(0).is_err());
        for n in 1..=50 {
            assert_eq!(gen_wn(n).unwrap().len(), 9 * n + 3);
        }
    }

    #[test]
    fn expected_rp_examples() {
        assert_eq!(expected_rp_wn(2).unwrap().total, 55);
        assert_eq!(expected_rp_wn(3).unwrap().total, 109);
        assert_eq!(expected_rp_wn(5).unwrap().total, 271);
        assert_eq!(expected_rp_wn(1), Err(Error::FormulaRange));
    }

    #[test]
    fn expected_breakdown_matches_measurement() {
        for n in 2..=5 {
            let expected = expected_rp_wn(n).unwrap();
            let measured = rp_with_breakdown(&gen_wn(n).unwrap()).unwrap();
            assert_eq!(measured.total, expected.total, "n = {n}");
            assert_eq!(measured.per_class, expected.per_class, "n = {n}");
        }
        assert_eq!(
            rp_oracle(&gen_wn(3).unwrap()).unwrap(),
            expected_rp_wn(3).unwrap().total
        );
    }

    #[test]
    fn fib_prefix_values() {
        let f13: Vec<u8> = fibonacci_prefix(13).letters().to_vec();
        assert_eq!(f13, [0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(fibonacci_prefix(2).letters(), &[0, 1]);
        let f55 = fibonacci_prefix(55);
        assert_eq!(f55.letters().iter().filter(|&&c| c == 0).count(), 34);
        assert_eq!(f55.letters().iter().filter(|&&c| c == 1).count(), 21);
        let f17: Vec<u8> = fibonacci_prefix(17).letters().to_vec();
        assert_eq!(
            f17,
            [0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0]
        );
    }

    #[test]
    fn fib_morphic_lengths() {
        assert_eq!(gen_fib_morphic(1, 0, 55).unwrap().len(), 384);
        assert_eq!(gen_fib_morphic(2, 1, 55).unwrap().len(), 237 * 2 + 147 + 1);
        for t in 1..=4 {
            for d in 0..t {
                assert_eq!(
                    gen_fib_morphic(t, d, 55).unwrap().len(),
                    237 * t + 147 + d,
                    "t = {t}, d = {d}"
                );
            }
        }
        // Block length for the 13-prefix at t = 1: 8 zeros and 5 ones.
        let q = apply_run_morphism(1, &fibonacci_prefix(13));
        assert_eq!(q.len(), 8 * 2 + 5);
        assert!(gen_fib_morphic(1, 1, 55).is_err());
        assert!(gen_fib_morphic(2, 0, 20).is_err());
        assert!(gen_fib_morphic(0, 0, 55).is_err());
    }

    #[test]
    fn block_lengths_follow_fibonacci_counts() {
        for (prefix, expected_q_at_t1) in [(13, 21), (21, 34), (34, 55), (55, 89)] {
            let q = apply_run_morphism(1, &fibonacci_prefix(prefix));
            assert_eq!(q.len(), expected_q_at_t1, "prefix {prefix}");
        }
    }

    #[test]
    fn draft_prediction_values() {
        assert_eq!(fib_draft_prediction(1, 0), 17114);
        assert_eq!(fib_draft_prediction(2, 0), 44686);
        assert_eq!(fib_draft_prediction(2, 1), 44686 + 144);
    }

    #[test]
    fn seed_words() {
        assert_eq!(wn_seed_word(21).unwrap(), gen_wn(2).unwrap());
        assert_eq!(wn_seed_word(48).unwrap(), gen_wn(5).unwrap());
        assert_eq!(fib_seed_word(384).unwrap(), gen_fib_morphic(1, 0, 55).unwrap());
        assert_eq!(wn_seed_word(10).unwrap().len(), 10);
        assert_eq!(fib_seed_word(100).unwrap().len(), 100);
    }
}
