//! Distinct-factor indexing and the enumeration of distinct rational-power
//! factors.
//!
//! Membership and factor-complexity queries are served by a suffix
//! automaton (linear construction, queries linear in the query length).
//! The rational-power enumeration uses the characterization
//!
//! > a factor `f` is a rational power iff `|f| >= 2 * smallest_period(f)`
//!
//! which follows from the definition: `f = p^k p'` with `k >= 2` makes `|p|`
//! a period and `|f| >= 2|p|`; conversely with `p` the prefix of length
//! `smallest_period(f)`, `f = p^(|f|/|p|)` floor-wise with the remainder a
//! prefix of `p`. The test suite checks this equivalence against the
//! literal `p^k p'` expansion for every word up to length 12.

use std::collections::HashMap;
use std::collections::hash_map::Entry;
use std::sync::Arc;

use crate::hashing::PrefixHashes;
use crate::word::{
    self, least_rotation_index, RationalExponent, Word,
};
use crate::{Error, Result};

const UNSET: u32 = u32::MAX;

struct SamState {
    len: u32,
    link: u32,
    first_end: u32,
    next: [u32; word::MAX_ALPHABET],
}

/// Suffix automaton over one word; recognizes exactly the factors of the
/// word as paths from the initial state.
struct SuffixAutomaton {
    states: Vec<SamState>,
    last: u32,
}

impl SuffixAutomaton {
    fn new() -> Self {
        SuffixAutomaton {
            states: vec![SamState {
                len: 0,
                link: UNSET,
                first_end: UNSET,
                next: [UNSET; word::MAX_ALPHABET],
            }],
            last: 0,
        }
    }

    fn push(&mut self, c: u8, pos: u32) {
        let c = c as usize;
        let cur = self.states.len() as u32;
        self.states.push(SamState {
            len: self.states[self.last as usize].len + 1,
            link: 0,
            first_end: pos,
            next: [UNSET; word::MAX_ALPHABET],
        });
        let mut p = self.last;
        self.last = cur;
        loop {
            if p == UNSET {
                return;
            }
            let q = self.states[p as usize].next[c];
            if q != UNSET {
                if self.states[p as usize].len + 1 == self.states[q as usize].len {
                    self.states[cur as usize].link = q;
                } else {
                    let clone = self.states.len() as u32;
                    self.states.push(SamState {
                        len: self.states[p as usize].len + 1,
                        link: self.states[q as usize].link,
                        first_end: self.states[q as usize].first_end,
                        next: self.states[q as usize].next,
                    });
                    self.states[q as usize].link = clone;
                    self.states[cur as usize].link = clone;
                    let mut pp = p;
                    while pp != UNSET && self.states[pp as usize].next[c] == q {
                        self.states[pp as usize].next[c] = clone;
                        pp = self.states[pp as usize].link;
                    }
                }
                return;
            }
            self.states[p as usize].next[c] = cur;
            p = self.states[p as usize].link;
        }
    }
}

/// Cursor for incremental factor-membership walks. Dead cursors stay dead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorCursor(u32);

impl FactorCursor {
    pub fn alive(&self) -> bool {
        self.0 != UNSET
    }
}

/// Immutable factor index over one word: membership plus per-length
/// distinct-factor counts.
#[derive(Clone)]
pub struct FactorIndex {
    source: Word,
    automaton: Arc<SuffixAutomatonOwned>,
    fac_counts: Arc<Vec<u64>>,
}

// Keep the raw automaton in a separately shareable box so FactorIndex can be
// cloned cheaply by concurrent readers.
struct SuffixAutomatonOwned {
    states: Vec<SamState>,
}

impl std::fmt::Debug for FactorIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FactorIndex")
            .field("source", &self.source)
            .field("states", &self.automaton.states.len())
            .finish()
    }
}

/// Builds the factor index of `w`. Linear-time automaton construction;
/// comfortably handles words of length 5000.
pub fn build_index(w: &Word) -> Result<FactorIndex> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sam = SuffixAutomaton::new();
    for (i, &c) in w.letters().iter().enumerate() {
        sam.push(c, i as u32);
    }
    let n = w.len();
    // Distinct length-i factors: each non-initial state covers the length
    // range (len(link), len]; accumulate with a difference array.
    let mut diff = vec![0i64; n + 2];
    for (id, st) in sam.states.iter().enumerate().skip(1) {
        let lo = sam.states[st.link as usize].len as usize + 1;
        let hi = st.len as usize;
        debug_assert!(lo <= hi, "state {id} has empty length range");
        diff[lo] += 1;
        diff[hi + 1] -= 1;
    }
    let mut fac_counts = Vec::with_capacity(n);
    let mut acc = 0i64;
    for &d in &diff[1..=n] {
        acc += d;
        fac_counts.push(acc as u64);
    }
    Ok(FactorIndex {
        source: w.clone(),
        automaton: Arc::new(SuffixAutomatonOwned { states: sam.states }),
        fac_counts: Arc::new(fac_counts),
    })
}

impl FactorIndex {
    pub fn source(&self) -> &Word {
        &self.source
    }

    /// `|Fac_i|`: the number of distinct length-`i` factors (0 outside
    /// `1..=n`).
    pub fn fac_count(&self, i: usize) -> u64 {
        if i == 0 || i > self.source.len() {
            0
        } else {
            self.fac_counts[i - 1]
        }
    }

    /// Distinct-factor counts for lengths `1..=n`.
    pub fn fac_counts(&self) -> &[u64] {
        &self.fac_counts
    }

    /// Whether `u` occurs in the source as a contiguous factor.
    pub fn contains_factor(&self, u: &Word) -> Result<bool> {
        if u.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(self.contains_letters(u.letters()))
    }

    pub(crate) fn contains_letters(&self, letters: &[u8]) -> bool {
        let mut cur = self.cursor();
        for &c in letters {
            cur = self.step(cur, c);
            if !cur.alive() {
                return false;
            }
        }
        true
    }

    /// Cursor at the empty factor.
    pub fn cursor(&self) -> FactorCursor {
        FactorCursor(0)
    }

    /// Advances a cursor by one letter; the result is alive iff the extended
    /// word is still a factor.
    pub fn step(&self, cur: FactorCursor, letter: u8) -> FactorCursor {
        if cur.0 == UNSET {
            return cur;
        }
        FactorCursor(self.automaton.states[cur.0 as usize].next[letter as usize])
    }

    /// Calls `visit(start, len)` once per distinct factor of the source,
    /// where `source[start..start+len]` is the factor's first occurrence.
    pub(crate) fn for_each_distinct_factor(&self, mut visit: impl FnMut(usize, usize)) {
        for st in self.automaton.states.iter().skip(1) {
            let lo = self.automaton.states[st.link as usize].len as usize + 1;
            let hi = st.len as usize;
            let end = st.first_end as usize + 1;
            for len in lo..=hi {
                visit(end - len, len);
            }
        }
    }
}

/// One distinct rational-power factor: the expansion of `root()` to
/// `total_len` letters, where `root()` is `class_key` rotated left by
/// `rot`. Equality ignores the occurrence witness: two values are equal
/// iff their underlying letter sequences are.
#[derive(Clone, Debug)]
pub struct RationalPowerFactor {
    /// Lexicographically least rotation of the primitive root.
    pub class_key: Arc<Word>,
    /// Root = `class_key.rotate_left(rot)`.
    pub rot: usize,
    pub root_len: usize,
    pub total_len: usize,
    /// Start of the factor's first occurrence in the source.
    pub witness: usize,
}

impl RationalPowerFactor {
    pub fn exponent(&self) -> RationalExponent {
        RationalExponent::new(self.total_len, self.root_len)
            .expect("enumerated factor has exponent >= 2")
    }

    pub fn root(&self) -> Word {
        self.class_key.rotate_left(self.rot)
    }

    /// Materializes the factor's letters.
    pub fn expansion(&self) -> Word {
        word::rational_power_expand(&self.root(), self.total_len)
            .expect("root is nonempty")
    }
}

impl PartialEq for RationalPowerFactor {
    fn eq(&self, other: &Self) -> bool {
        self.total_len == other.total_len
            && self.rot == other.rot
            && self.class_key == other.class_key
    }
}

impl Eq for RationalPowerFactor {}

/// How duplicate factors are recognized during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dedup {
    /// Letter sequences are compared whenever two candidates hash alike.
    Exact,
    /// 128-bit hash equality is trusted; used by the bulk search paths.
    HashOnly,
}

/// Enumerates the distinct rational-power factors of `w` (exact
/// deduplication), sorted by (total length, class key, rotation).
///
/// One border-table pass per suffix yields the smallest period of every
/// prefix of that suffix; a factor qualifies iff its length is at least
/// twice that period. Distinctness is resolved per length through 128-bit
/// rolling hashes, comparing letters on every hash hit.
pub fn enumerate_rational_power_factors(w: &Word) -> Result<Vec<RationalPowerFactor>> {
    enumerate_with_dedup(w, Dedup::Exact)
}

pub fn enumerate_with_dedup(w: &Word, dedup: Dedup) -> Result<Vec<RationalPowerFactor>> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    let letters = w.letters();
    let n = letters.len();
    let hashes = PrefixHashes::new(letters);

    // (length, hash) -> witness start. The spill map handles true 128-bit
    // collisions in exact mode; it is expected to stay empty.
    let mut seen: HashMap<(u32, u128), u32> = HashMap::new();
    let mut spill: HashMap<(u32, u128), Vec<u32>> = HashMap::new();

    // root hash -> class assignment, interned per distinct root.
    let mut root_cache: HashMap<(u32, u128), (u32, u32)> = HashMap::new();
    let mut class_lookup: HashMap<(u32, u128), u32> = HashMap::new();
    let mut classes: Vec<Arc<Word>> = Vec::new();

    struct RawFactor {
        class_id: u32,
        rot: u32,
        root_len: u32,
        total_len: u32,
        witness: u32,
    }
    let mut out: Vec<RawFactor> = Vec::new();
    let mut fail: Vec<u32> = Vec::new();

    for start in 0..n {
        let suffix = &letters[start..];
        word::border_table_into(suffix, &mut fail);
        for len in 2..=suffix.len() {
            let period = len - fail[len - 1] as usize;
            if len < 2 * period {
                continue;
            }
            let key = (len as u32, hashes.range(start, start + len));
            let is_new = match seen.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(start as u32);
                    true
                }
                Entry::Occupied(e) => {
                    if dedup == Dedup::Exact {
                        let w0 = *e.get() as usize;
                        if letters[w0..w0 + len] == letters[start..start + len] {
                            false
                        } else {
                            // Genuine 128-bit collision: fall back to an
                            // exact per-hash bucket.
                            let bucket = spill.entry(key).or_default();
                            let matched = bucket.iter().any(|&s| {
                                let s = s as usize;
                                letters[s..s + len] == letters[start..start + len]
                            });
                            if matched {
                                false
                            } else {
                                bucket.push(start as u32);
                                true
                            }
                        }
                    } else {
                        false
                    }
                }
            };
            if !is_new {
                continue;
            }

            let root_key = (period as u32, hashes.range(start, start + period));
            let (class_id, rot) = match root_cache.entry(root_key) {
                Entry::Occupied(e) => *e.get(),
                Entry::Vacant(e) => {
                    let root = &letters[start..start + period];
                    let r0 = least_rotation_index(root);
                    let canon: Vec<u8> = root[r0..]
                        .iter()
                        .chain(root[..r0].iter())
                        .copied()
                        .collect();
                    let canon_hash = PrefixHashes::hash_word(&canon);
                    let class_id = match class_lookup.entry((period as u32, canon_hash)) {
                        Entry::Occupied(c) => {
                            let id = *c.get();
                            debug_assert_eq!(classes[id as usize].letters(), &canon[..]);
                            id
                        }
                        Entry::Vacant(c) => {
                            let id = classes.len() as u32;
                            classes.push(Arc::new(
                                Word::from_letters(canon).expect("letters already validated"),
                            ));
                            c.insert(id);
                            id
                        }
                    };
                    let rot = ((period - r0) % period) as u32;
                    *e.insert((class_id, rot))
                }
            };
            out.push(RawFactor {
                class_id,
                rot,
                root_len: period as u32,
                total_len: len as u32,
                witness: start as u32,
            });
        }
    }

    out.sort_by(|a, b| {
        (a.total_len, &classes[a.class_id as usize], a.rot).cmp(&(
            b.total_len,
            &classes[b.class_id as usize],
            b.rot,
        ))
    });
    Ok(out
        .into_iter()
        .map(|f| RationalPowerFactor {
            class_key: Arc::clone(&classes[f.class_id as usize]),
            rot: f.rot as usize,
            root_len: f.root_len as usize,
            total_len: f.total_len as usize,
            witness: f.witness as usize,
        })
        .collect())
}

/// Allocation-reusing counter of distinct rational-power factors, for the
/// search paths that evaluate many words. Hash-based deduplication.
pub struct RpCounter {
    fail: Vec<u32>,
    seen: std::collections::HashSet<(u32, u128)>,
}

impl RpCounter {
    pub fn new() -> Self {
        RpCounter {
            fail: Vec::new(),
            seen: std::collections::HashSet::new(),
        }
    }

    pub fn count(&mut self, letters: &[u8]) -> u64 {
        let n = letters.len();
        if n == 0 {
            return 0;
        }
        let hashes = PrefixHashes::new(letters);
        self.seen.clear();
        let mut total = 0u64;
        for start in 0..n {
            let suffix = &letters[start..];
            word::border_table_into(suffix, &mut self.fail);
            for len in 2..=suffix.len() {
                let period = len - self.fail[len - 1] as usize;
                if len >= 2 * period
                    && self.seen.insert((len as u32, hashes.range(start, start + len)))
                {
                    total += 1;
                }
            }
        }
        total
    }
}

impl Default for RpCounter {
    fn default() -> Self {
        Self::new()
    }
}
