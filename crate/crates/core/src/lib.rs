//! Counting distinct rational-power factors of finite words.
//!
//! A *rational power* is a word of the form `p^k p'` where `p` is nonempty,
//! `k >= 2` is an integer, and `p'` is a (possibly empty) prefix of `p`;
//! equivalently, a word whose length is at least twice its smallest period.
//! This crate counts the distinct rational-power factors of a word, groups
//! them by the conjugacy class of their primitive root, derives per-class
//! circuit statistics from the word's factor graphs, and machine-checks the
//! inequality chain that bounds the count by `n^2/8 + O(n)`.
//!
//! Module map:
//!
//! * [`word`] - words, periods, primitivity, conjugacy, rational-power
//!   expansion.
//! * [`factor_index`] - factor membership (suffix automaton), factor
//!   complexity profiles, and the enumeration of distinct rational-power
//!   factors.
//! * [`ratpow`] - per-class breakdown of the rational-power count, plus the
//!   quarantined brute-force oracle in [`oracle`].
//! * [`rauzy`] - order-`i` factor graphs, small-circuit detection, and
//!   per-class active intervals.
//! * [`bounds`] - the piecewise-quadratic envelope functions and both the
//!   word-level and continuous-region inequality checks.
//! * [`constructions`] - word families with quadratically many distinct
//!   rational powers, with their predicted counts.
//! * [`search`] - exhaustive and hill-climbing maximization of the count
//!   over words of a fixed length.

pub mod bounds;
pub mod constructions;
pub mod factor_index;
mod hashing;
pub mod oracle;
pub mod ratpow;
pub mod rauzy;
pub mod search;
pub mod word;

pub use bounds::BoundReport;
pub use factor_index::{FactorIndex, RationalPowerFactor};
pub use ratpow::RpBreakdown;
pub use rauzy::{ClassStats, ScProfile};
pub use word::Word;

/// Errors shared across the crate. The message texts are part of the CLI
/// contract, so variants carry fixed phrasings.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("invalid character {ch:?} at position {pos}")]
    InvalidCharacter { ch: char, pos: usize },
    #[error("letter {0} outside supported alphabet")]
    LetterOutOfRange(u8),
    #[error("key requires primitive root")]
    KeyRequiresPrimitiveRoot,
    #[error("requires a primitive word")]
    RequiresPrimitive,
    #[error("order below root length")]
    OrderBelowRootLength,
    #[error("order out of range")]
    OrderOutOfRange,
    #[error("hypotheses not met")]
    HypothesesNotMet,
    #[error("oracle limit: length {len} exceeds {max}")]
    OracleLimit { len: usize, max: usize },
    #[error("unknown class")]
    UnknownClass,
    #[error("formula range: n must be at least 2")]
    FormulaRange,
    #[error("budget exceeded: needs {needed} words, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Everything the analysis pipeline derives from a single word.
#[derive(Debug, Clone)]
pub struct WordAnalysis {
    pub word: Word,
    pub index: FactorIndex,
    pub breakdown: RpBreakdown,
    pub class_stats: Vec<ClassStats>,
    pub sc_profile: ScProfile,
    pub bounds: BoundReport,
}

/// Runs the full pipeline: index, rational-power breakdown, circuit
/// statistics, and every word-level inequality check.
pub fn analyze_word(w: &Word) -> Result<WordAnalysis> {
    let index = factor_index::build_index(w)?;
    let factors = factor_index::enumerate_rational_power_factors(w)?;
    let breakdown = ratpow::breakdown_from_factors(&factors);
    let class_stats = rauzy::class_stats_from_parts(&index, &breakdown);
    let sc_profile = rauzy::sc_profile_from_index(&index);
    let bounds = bounds::check_word_bounds_from_parts(w, &breakdown, &class_stats);
    Ok(WordAnalysis {
        word: w.clone(),
        index,
        breakdown,
        class_stats,
        sc_profile,
        bounds,
    })
}
