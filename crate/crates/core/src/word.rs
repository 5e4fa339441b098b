//! Words, periods, primitivity, conjugacy, and rational-power expansion.
//!
//! Letters are small integers; text I/O maps letter `i` to the lowercase
//! ASCII character `'a' + i`. The empty word is representable (it shows up
//! as I/O input) but every analytic operation rejects it.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Largest alphabet the text codec supports ('a'..='z').
pub const MAX_ALPHABET: usize = 26;

/// A finite word over letters `0..26`.
///
/// Ordering and equality are lexicographic on the letter sequence, with a
/// proper prefix ordered before its extensions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| (l as usize) >= MAX_ALPHABET) {
            return Err(Error::LetterOutOfRange(l));
        }
        Ok(Word { letters })
    }

    /// Parses lowercase ASCII text. Whitespace is not a letter and is
    /// rejected like any other non-lowercase character.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            if !ch.is_ascii_lowercase() {
                return Err(Error::InvalidCharacter { ch, pos });
            }
            letters.push(ch as u8 - b'a');
        }
        Ok(Word { letters })
    }

    pub fn text(&self) -> String {
        self.letters.iter().map(|&l| (b'a' + l) as char).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> u8 {
        self.letters[i]
    }

    /// Number of distinct letters actually occurring.
    pub fn alphabet_size(&self) -> usize {
        let mut seen = [false; MAX_ALPHABET];
        for &l in &self.letters {
            seen[l as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    pub fn rotate_left(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut out = Vec::with_capacity(self.letters.len());
        out.extend_from_slice(&self.letters[k..]);
        out.extend_from_slice(&self.letters[..k]);
        Word { letters: out }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.text())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.text())
    }
}

/// The unique primitive word `root` with `source = root^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveRoot {
    pub root: Word,
    pub exponent: usize,
}

/// A rational exponent stored as the unreduced pair (total length, root
/// length); the rational value is `total_len / root_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct RationalExponent {
    pub total_len: usize,
    pub root_len: usize,
}

impl RationalExponent {
    /// Requires `total_len >= 2 * root_len`, the defining condition of a
    /// rational power.
    pub fn new(total_len: usize, root_len: usize) -> Result<Self> {
        if root_len == 0 || total_len < 2 * root_len {
            return Err(Error::Parameter(format!(
                "exponent {total_len}/{root_len} is below 2"
            )));
        }
        Ok(RationalExponent { total_len, root_len })
    }

    pub fn value(&self) -> f64 {
        self.total_len as f64 / self.root_len as f64
    }
}

// ---------------------------------------------------------------------------
// slice-level primitives shared by the indexed paths
// ---------------------------------------------------------------------------

/// Fills `fail` with the border table of `x`: `fail[i]` is the length of the
/// longest proper border of the prefix `x[..=i]`. `fail` is resized to
/// `x.len()`.
pub(crate) fn border_table_into(x: &[u8], fail: &mut Vec<u32>) {
    fail.clear();
    fail.resize(x.len(), 0);
    let mut k = 0usize;
    for i in 1..x.len() {
        while k > 0 && x[i] != x[k] {
            k = fail[k - 1] as usize;
        }
        if x[i] == x[k] {
            k += 1;
        }
        fail[i] = k as u32;
    }
}

pub(crate) fn smallest_period_slice(x: &[u8]) -> usize {
    let mut fail = Vec::new();
    border_table_into(x, &mut fail);
    x.len() - fail[x.len() - 1] as usize
}

pub(crate) fn has_period_slice(x: &[u8], p: usize) -> bool {
    if p == 0 || p > x.len() {
        return false;
    }
    (p..x.len()).all(|i| x[i] == x[i - p])
}

/// Start index of the lexicographically least rotation (Booth).
pub(crate) fn least_rotation_index(v: &[u8]) -> usize {
    let n = v.len();
    debug_assert!(n > 0);
    let (mut i, mut j, mut len) = (0usize, 1usize, 0usize);
    while i < n && j < n && len < n {
        let a = v[(i + len) % n];
        let b = v[(j + len) % n];
        if a == b {
            len += 1;
            continue;
        }
        if a > b {
            i += len + 1;
        } else {
            j += len + 1;
        }
        if i == j {
            j += 1;
        }
        len = 0;
    }
    i.min(j)
}

pub(crate) fn expand_slice(root: &[u8], total_len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(total_len);
    for i in 0..total_len {
        out.push(root[i % root.len()]);
    }
    out
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// Least `p >= 1` such that letters `p` apart agree throughout the word,
/// computed as `|w| - longest_border(w)`.
pub fn smallest_period(w: &Word) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(smallest_period_slice(w.letters()))
}

/// Whether `w` has period `p`. Periods above `|w|` are rejected as `false`;
/// a word is only of period `p` when it is a rational power (exponent >= 1)
/// of a length-`p` prefix.
pub fn has_period(w: &Word, p: usize) -> bool {
    has_period_slice(w.letters(), p)
}

/// True iff `w` is not an integer power (exponent >= 2) of a shorter word.
pub fn is_primitive(w: &Word) -> Result<bool> {
    let p = smallest_period(w)?;
    Ok(p == w.len() || !w.len().is_multiple_of(p))
}

/// The unique primitive `q` and exponent `k` with `w = q^k`.
pub fn primitive_root(w: &Word) -> Result<PrimitiveRoot> {
    let p = smallest_period(w)?;
    if w.len().is_multiple_of(p) {
        Ok(PrimitiveRoot {
            root: w.subword(0, p),
            exponent: w.len() / p,
        })
    } else {
        Ok(PrimitiveRoot {
            root: w.clone(),
            exponent: 1,
        })
    }
}

/// All distinct rotations of `w`; the size equals the primitive-root length.
pub fn conjugacy_class(w: &Word) -> Result<BTreeSet<Word>> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok((0..w.len()).map(|i| w.rotate_left(i)).collect())
}

/// The lexicographically least rotation, used as the stable identity of a
/// conjugacy class. Requires a primitive input so that keys and classes are
/// in bijection.
pub fn canonical_class_key(w: &Word) -> Result<Word> {
    if !is_primitive(w)? {
        return Err(Error::KeyRequiresPrimitiveRoot);
    }
    Ok(w.rotate_left(least_rotation_index(w.letters())))
}

/// Length-`total_len` prefix of the periodic word `u u u ...`.
pub fn rational_power_expand(u: &Word, total_len: usize) -> Result<Word> {
    if u.is_empty() {
        return Err(Error::EmptyInput);
    }
    Word::from_letters(expand_slice(u.letters(), total_len))
}

/// The length-`order` factors of the periodic word `u u u ...`, one per
/// rotation of `u`; exactly `|u|` words when `u` is primitive.
pub fn class_factors_of_order(u: &Word, order: usize) -> Result<BTreeSet<Word>> {
    if u.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !is_primitive(u)? {
        return Err(Error::RequiresPrimitive);
    }
    if order < u.len() {
        return Err(Error::OrderBelowRootLength);
    }
    let mut out = BTreeSet::new();
    for i in 0..u.len() {
        out.insert(rational_power_expand(&u.rotate_left(i), order)?);
    }
    Ok(out)
}

/// Periodicity interaction check: given that `w` has periods `k` and `l`
/// and `|w| >= k + l - gcd(k, l)`, reports whether `gcd(k, l)` is also a
/// period. The hypotheses are validated and their violation is an error,
/// distinct from a `false` return.
pub fn fine_wilf_holds(w: &Word, k: usize, l: usize) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    if k == 0 || l == 0 || !has_period(w, k) || !has_period(w, l) {
        return Err(Error::HypothesesNotMet);
    }
    let g = gcd(k, l);
    if w.len() < k + l - g {
        return Err(Error::HypothesesNotMet);
    }
    Ok(has_period(w, g))
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    // Brute-force period scan, independent of the border-table route.
    fn naive_period(x: &[u8]) -> usize {
        (1..=x.len())
            .find(|&p| (p..x.len()).all(|i| x[i] == x[i - p]))
            .unwrap()
    }

    #[test]
    fn smallest_period_examples() {
        assert_eq!(smallest_period(&w("aaaa")).unwrap(), 1);
        assert_eq!(smallest_period(&w("abab")).unwrap(), 2);
        assert_eq!(smallest_period(&w("bbab")).unwrap(), 3);
        assert_eq!(smallest_period(&w("a")).unwrap(), 1);
        assert_eq!(smallest_period(&Word::default()), Err(Error::EmptyInput));
    }

    #[test]
    fn smallest_period_matches_naive_scan() {
        let mut rng = 0x243f_6a88_85a3_08d3u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for _ in 0..2000 {
            let len = 1 + (next() % 24) as usize;
            let sigma = 1 + (next() % 3) as u8;
            let letters: Vec<u8> = (0..len).map(|_| (next() % sigma as u64) as u8).collect();
            let word = Word::from_letters(letters.clone()).unwrap();
            assert_eq!(smallest_period(&word).unwrap(), naive_period(&letters));
        }
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&w("ab")).unwrap());
        assert!(!is_primitive(&w("abab")).unwrap());
        assert!(is_primitive(&w("aba")).unwrap());
        assert!(!is_primitive(&w("aaa")).unwrap());
    }

    #[test]
    fn primitive_root_examples() {
        let r = primitive_root(&w("abab")).unwrap();
        assert_eq!((r.root.text().as_str(), r.exponent), ("ab", 2));
        let r = primitive_root(&w("aaa")).unwrap();
        assert_eq!((r.root.text().as_str(), r.exponent), ("a", 3));
        let r = primitive_root(&w("aba")).unwrap();
        assert_eq!((r.root.text().as_str(), r.exponent), ("aba", 1));
    }

    #[test]
    fn conjugacy_class_examples() {
        let class = conjugacy_class(&w("bbab")).unwrap();
        let texts: Vec<String> = class.iter().map(|v| v.text()).collect();
        assert_eq!(texts, ["abbb", "babb", "bbab", "bbba"]);
        assert_eq!(conjugacy_class(&w("aa")).unwrap().len(), 1);
        assert_eq!(conjugacy_class(&w("ab")).unwrap().len(), 2);
    }

    #[test]
    fn class_key_examples() {
        assert_eq!(canonical_class_key(&w("bbab")).unwrap().text(), "abbb");
        assert_eq!(canonical_class_key(&w("ba")).unwrap().text(), "ab");
        assert_eq!(canonical_class_key(&w("a")).unwrap().text(), "a");
        assert_eq!(
            canonical_class_key(&w("abab")),
            Err(Error::KeyRequiresPrimitiveRoot)
        );
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            rational_power_expand(&w("bbab"), 9).unwrap().text(),
            "bbabbbabb"
        );
        assert_eq!(rational_power_expand(&w("a"), 4).unwrap().text(), "aaaa");
        assert_eq!(rational_power_expand(&w("ab"), 5).unwrap().text(), "ababa");
    }

    #[test]
    fn class_factors_examples() {
        let set = class_factors_of_order(&w("ab"), 3).unwrap();
        let texts: Vec<String> = set.iter().map(|v| v.text()).collect();
        assert_eq!(texts, ["aba", "bab"]);
        assert_eq!(class_factors_of_order(&w("a"), 2).unwrap().len(), 1);
        assert_eq!(class_factors_of_order(&w("ab"), 2).unwrap().len(), 2);
        assert_eq!(
            class_factors_of_order(&w("ab"), 1),
            Err(Error::OrderBelowRootLength)
        );
    }

    #[test]
    fn fine_wilf_examples() {
        assert!(fine_wilf_holds(&w("aaaaa"), 2, 3).unwrap());
        assert!(fine_wilf_holds(&w("ababab"), 2, 4).unwrap());
        // |w| = 5 < 3 + 5 - 1: hypotheses too weak.
        assert_eq!(
            fine_wilf_holds(&w("aabaa"), 3, 5),
            Err(Error::HypothesesNotMet)
        );
        // Not actually a period.
        assert_eq!(
            fine_wilf_holds(&w("ab"), 1, 2),
            Err(Error::HypothesesNotMet)
        );
    }

    #[test]
    fn least_rotation_matches_scan() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for _ in 0..2000 {
            let len = 1 + (next() % 16) as usize;
            let letters: Vec<u8> = (0..len).map(|_| (next() % 3) as u8).collect();
            let word = Word::from_letters(letters.clone()).unwrap();
            let best = (0..len).map(|i| word.rotate_left(i)).min().unwrap();
            assert_eq!(word.rotate_left(least_rotation_index(&letters)), best);
        }
    }

    #[test]
    fn parse_rejects_bad_text() {
        assert!(matches!(
            Word::parse("ab cd"),
            Err(Error::InvalidCharacter { ch: ' ', pos: 2 })
        ));
        assert!(Word::parse("Ab").is_err());
        assert_eq!(Word::parse("").unwrap().len(), 0);
    }

    #[test]
    fn exponent_pair_is_unreduced() {
        let e = RationalExponent::new(9, 4).unwrap();
        assert_eq!((e.total_len, e.root_len), (9, 4));
        assert!((e.value() - 2.25).abs() < 1e-15);
        assert!(RationalExponent::new(3, 2).is_err());
    }
}
