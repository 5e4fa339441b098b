//! Maximization of the distinct rational-power count over words of a fixed
//! length: exact exhaustive search with symmetry pruning for small lengths,
//! hill climbing with restarts beyond that.
//!
//! The count is invariant under letter renaming and under reversal (factors
//! reverse bijectively and periods are preserved), so the exhaustive walk
//! only evaluates words in renaming-canonical form (letters first occur in
//! alphabetical order) that are no larger than their renamed reversal. The
//! lexicographically least maximizer survives both prunes, so witness
//! tie-breaking stays exact.

use rayon::prelude::*;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{fib_seed_word, wn_seed_word};
use crate::factor_index::RpCounter;
use crate::word::Word;
use crate::{Error, Result};

/// Default exhaustive budget: the binary space up to length 22.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Heuristic,
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Heuristic => "heuristic",
        })
    }
}

/// Starting point for the hill climber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitStrategy {
    Random,
    WnSeed,
    FibSeed,
}

/// Outcome of one search run. `wall_ms` is informational and excluded from
/// serialized output so that logs stay byte-stable.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub sigma: usize,
    pub best_rp: u64,
    pub witness: Word,
    pub mode: SearchMode,
    pub seed: u64,
    pub iters: u64,
    #[serde(skip)]
    pub wall_ms: f64,
}

fn rename_canonical(letters: &[u8], sigma: usize) -> Vec<u8> {
    let mut map = [u8::MAX; 26];
    let mut next = 0u8;
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        if map[l as usize] == u8::MAX {
            map[l as usize] = next;
            next += 1;
        }
        out.push(map[l as usize]);
    }
    debug_assert!((next as usize) <= sigma);
    out
}

/// Better-result merge: higher count wins, ties go to the smaller witness.
fn better(a: (u64, Vec<u8>), b: (u64, Vec<u8>)) -> (u64, Vec<u8>) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Exact maximum of the count over all `sigma^n` words, by exhaustive walk
/// of renaming-canonical representatives with reversal pruning.
pub fn exhaustive_max_rp(n: usize, sigma: usize, budget: Option<u128>) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if !(2..=3).contains(&sigma) {
        return Err(Error::Parameter(format!(
            "exhaustive search supports sigma 2 or 3, got {sigma}"
        )));
    }
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let needed = (sigma as u128).pow(n as u32);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let started = std::time::Instant::now();

    // Split the canonical space on a short prefix, then let workers extend.
    let split = n.min(11).saturating_sub(1);
    let mut prefixes: Vec<(Vec<u8>, u8)> = vec![(vec![0u8], 0)]; // canonical words start with 'a'
    for _ in 1..=split {
        let mut next = Vec::with_capacity(prefixes.len() * sigma);
        for (p, max_used) in &prefixes {
            let limit = (*max_used + 1).min(sigma as u8 - 1);
            for c in 0..=limit {
                let mut p2 = p.clone();
                p2.push(c);
                next.push((p2, (*max_used).max(c)));
            }
        }
        prefixes = next;
    }

    let results: Vec<(u64, Vec<u8>, u64)> = prefixes
        .par_iter()
        .map(|(prefix, max_used)| {
            let mut counter = RpCounter::new();
            let mut word = prefix.clone();
            let mut best: (u64, Vec<u8>) = (0, vec![]);
            let mut evaluated = 0u64;
            fn walk(
                word: &mut Vec<u8>,
                max_used: u8,
                n: usize,
                sigma: usize,
                counter: &mut RpCounter,
                best: &mut (u64, Vec<u8>),
                evaluated: &mut u64,
            ) {
                if word.len() == n {
                    // Skip words strictly above their renamed reversal.
                    let mut rev = word.clone();
                    rev.reverse();
                    let rev = rename_canonical(&rev, sigma);
                    if rev < *word {
                        return;
                    }
                    *evaluated += 1;
                    let rp = counter.count(word);
                    if rp > best.0 || (rp == best.0 && (best.1.is_empty() || *word < best.1)) {
                        *best = (rp, word.clone());
                    }
                    return;
                }
                let limit = (max_used + 1).min(sigma as u8 - 1);
                for c in 0..=limit {
                    word.push(c);
                    walk(word, max_used.max(c), n, sigma, counter, best, evaluated);
                    word.pop();
                }
            }
            walk(
                &mut word,
                *max_used,
                n,
                sigma,
                &mut counter,
                &mut best,
                &mut evaluated,
            );
            (best.0, best.1, evaluated)
        })
        .collect();

    let mut best: (u64, Vec<u8>) = (0, vec![]);
    let mut evaluated = 0u64;
    for (rp, witness, count) in results {
        evaluated += count;
        if witness.is_empty() {
            continue;
        }
        if best.1.is_empty() {
            best = (rp, witness);
        } else {
            best = better(best, (rp, witness));
        }
    }
    Ok(SearchResult {
        n,
        sigma,
        best_rp: best.0,
        witness: Word::from_letters(best.1).expect("letters below sigma"),
        mode: SearchMode::Exhaustive,
        seed: 0,
        iters: evaluated,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

fn random_word(n: usize, sigma: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    (0..n).map(|_| rng.random_range(0..sigma as u8)).collect()
}

fn mutate(letters: &[u8], sigma: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let n = letters.len();
    let mut out = letters.to_vec();
    if n >= 3 && rng.random_bool(0.3) {
        // Rotate a block: repetition density is sensitive to the phase of
        // periodic segments, and point mutations alone plateau early.
        let start = rng.random_range(0..n - 2);
        let len = rng.random_range(2..=(n - start).min((n / 4).max(2)));
        let by = rng.random_range(1..len);
        out[start..start + len].rotate_left(by);
    } else {
        let pos = rng.random_range(0..n);
        let delta = rng.random_range(1..sigma as u8);
        out[pos] = (out[pos] + delta) % sigma as u8;
    }
    out
}

/// Hill climbing with sideways moves and random restarts. Deterministic for
/// a fixed (seed, iters, init); the result never falls below the
/// initialization's own count.
pub fn heuristic_max_rp(
    n: usize,
    sigma: usize,
    seed: u64,
    iters: u64,
    init: InitStrategy,
) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > 5000 {
        return Err(Error::Parameter(format!("heuristic search caps n at 5000, got {n}")));
    }
    if !(2..=26).contains(&sigma) {
        return Err(Error::Parameter(format!("sigma must be in 2..=26, got {sigma}")));
    }
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counter = RpCounter::new();

    let initial: Vec<u8> = match init {
        InitStrategy::Random => random_word(n, sigma, &mut rng),
        InitStrategy::WnSeed => wn_seed_word(n)?.letters().to_vec(),
        InitStrategy::FibSeed => fib_seed_word(n)?.letters().to_vec(),
    };
    let mut cur = initial;
    let mut cur_rp = counter.count(&cur);
    let mut best = (cur_rp, cur.clone());
    let patience = (n as u64).max(500);
    let mut stale = 0u64;

    for _ in 0..iters {
        let cand = mutate(&cur, sigma, &mut rng);
        let cand_rp = counter.count(&cand);
        if cand_rp >= cur_rp {
            cur = cand;
            cur_rp = cand_rp;
        }
        if cur_rp > best.0 || (cur_rp == best.0 && cur < best.1) {
            best = (cur_rp, cur.clone());
            stale = 0;
        } else {
            stale += 1;
            if stale >= patience {
                cur = random_word(n, sigma, &mut rng);
                cur_rp = counter.count(&cur);
                stale = 0;
            }
        }
    }
    Ok(SearchResult {
        n,
        sigma,
        best_rp: best.0,
        witness: Word::from_letters(best.1).expect("letters below sigma"),
        mode: SearchMode::Heuristic,
        seed,
        iters,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// One row of the coefficient table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CoefficientRow {
    pub n: usize,
    pub sigma: usize,
    pub best_rp: u64,
    pub ratio: f64,
    pub mode: SearchMode,
    pub n2_over_8: f64,
    pub n2_over_9: f64,
}

/// Renders search results as table rows sorted by length, with the two
/// theoretical envelopes for plotting.
pub fn coefficient_report(results: &[SearchResult]) -> Result<Vec<CoefficientRow>> {
    if results.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut rows: Vec<CoefficientRow> = results
        .iter()
        .map(|r| {
            let nn = (r.n * r.n) as f64;
            CoefficientRow {
                n: r.n,
                sigma: r.sigma,
                best_rp: r.best_rp,
                ratio: r.best_rp as f64 / nn,
                mode: r.mode,
                n2_over_8: nn / 8.0,
                n2_over_9: nn / 9.0,
            }
        })
        .collect();
    rows.sort_by_key(|a| (a.n, a.sigma));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_wn;
    use crate::oracle::rp_oracle;

    #[test]
    fn exhaustive_small_anchors() {
        let r = exhaustive_max_rp(2, 2, None).unwrap();
        assert_eq!((r.best_rp, r.witness.text().as_str()), (1, "aa"));
        let r = exhaustive_max_rp(4, 2, None).unwrap();
        assert_eq!((r.best_rp, r.witness.text().as_str()), (3, "aaaa"));
        assert_eq!(rp_oracle(&r.witness).unwrap(), 3);
    }

    #[test]
    fn exhaustive_budget_guard() {
        let err = exhaustive_max_rp(40, 2, Some(1 << 20)).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                needed: 1 << 40,
                budget: 1 << 20
            }
        );
    }

    #[test]
    fn exhaustive_matches_unpruned_scan() {
        // Check the symmetry pruning against a full scan at small sizes.
        let mut counter = RpCounter::new();
        for n in 1..=8usize {
            let mut best = (0u64, vec![0u8; n]);
            for code in 0..(1u32 << n) {
                let letters: Vec<u8> =
                    (0..n).map(|i| ((code >> i) & 1) as u8).collect();
                let rp = counter.count(&letters);
                if rp > best.0 || (rp == best.0 && letters < best.1) {
                    best = (rp, letters);
                }
            }
            let pruned = exhaustive_max_rp(n, 2, None).unwrap();
            assert_eq!(pruned.best_rp, best.0, "n = {n}");
            assert_eq!(pruned.witness.letters(), &best.1[..], "n = {n}");
        }
    }

    #[test]
    fn heuristic_dominates_initialization() {
        let wn = gen_wn(5).unwrap();
        let r = heuristic_max_rp(wn.len(), 2, 11, 50, InitStrategy::WnSeed).unwrap();
        assert!(r.best_rp >= 271, "best {} below construction", r.best_rp);
    }

    #[test]
    fn heuristic_is_deterministic() {
        let a = heuristic_max_rp(40, 2, 5, 300, InitStrategy::Random).unwrap();
        let b = heuristic_max_rp(40, 2, 5, 300, InitStrategy::Random).unwrap();
        assert_eq!((a.best_rp, a.witness), (b.best_rp, b.witness));
        let c = heuristic_max_rp(40, 2, 6, 300, InitStrategy::Random).unwrap();
        // Different seed may differ; only check it still returns something sane.
        assert!(c.best_rp >= 1);
    }

    #[test]
    fn coefficient_rows() {
        let results = vec![
            SearchResult {
                n: 21,
                sigma: 2,
                best_rp: 55,
                witness: gen_wn(2).unwrap(),
                mode: SearchMode::Exhaustive,
                seed: 0,
                iters: 0,
                wall_ms: 0.0,
            },
            SearchResult {
                n: 4,
                sigma: 2,
                best_rp: 3,
                witness: Word::parse("aaaa").unwrap(),
                mode: SearchMode::Exhaustive,
                seed: 0,
                iters: 0,
                wall_ms: 0.0,
            },
        ];
        let rows = coefficient_report(&results).unwrap();
        assert_eq!(rows[0].n, 4);
        assert!((rows[0].ratio - 0.1875).abs() < 1e-15);
        assert!((rows[1].ratio - 55.0 / 441.0).abs() < 1e-15);
        assert!(coefficient_report(&[]).is_err());
    }
}
