//! Order-`i` factor graphs, small circuits, and per-class circuit
//! statistics.
//!
//! The order-`i` graph of `w` has the distinct length-`i` factors as
//! vertices and the distinct length-`i+1` factors as edges, each edge
//! running from its prefix vertex to its suffix vertex. For a primitive
//! word `p` with `|p| = l <= i`, the class [p] contributes a *small
//! circuit* at order `i` when every length-`i` and length-`i+1` factor of
//! the periodic word `p p p ...` occurs in `w`; since those length-`i`
//! words are prefixes of the length-`i+1` ones, the edge condition alone
//! decides existence.
//!
//! Circuit orders of a fixed class form a contiguous interval starting at
//! `l`: a circuit at order `m > l` forces circuits at every order between,
//! because lower-order class factors are prefixes of higher-order ones.
//! Detection therefore scans upward from `l` and stops at the first
//! failure.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::factor_index::{build_index, FactorIndex};
use crate::hashing::PrefixHashes;
use crate::ratpow::{rp_with_breakdown, RpBreakdown};
use crate::word::{self, Word};
use crate::{Error, Result};

/// Materialized order-`i` factor graph.
#[derive(Debug, Clone)]
pub struct RauzyGraph {
    pub order: usize,
    pub vertices: Vec<Word>,
    pub edges: Vec<RauzyEdge>,
}

/// An edge is a length-`(order+1)` factor joining its prefix vertex to its
/// suffix vertex.
#[derive(Debug, Clone)]
pub struct RauzyEdge {
    pub label: Word,
    pub from: usize,
    pub to: usize,
}

impl RauzyGraph {
    /// DOT rendering for documentation figures.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph rauzy {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", i, v.text()));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}\"];\n",
                e.from,
                e.to,
                e.label.text()
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// A small circuit of one class at one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCircuit {
    pub class_key: Word,
    pub order: usize,
}

/// A class with at least one circuit: orders `root_len ..
/// root_len + circuit_count` each carry one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitClass {
    pub class_key: Word,
    pub root_len: usize,
    pub circuit_count: usize,
}

impl CircuitClass {
    pub fn orders(&self) -> std::ops::Range<usize> {
        self.root_len..self.root_len + self.circuit_count
    }
}

/// Circuit statistics of one primitive class whose square occurs in the
/// word; `active interval` is the order range carrying circuits.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClassStats {
    pub class_key: Word,
    pub root_len: usize,
    pub circuit_count: usize,
    pub qclass_size: u64,
}

impl ClassStats {
    /// `root_len + circuit_count`, the first order past the active interval.
    pub fn reach(&self) -> usize {
        self.root_len + self.circuit_count
    }

    pub fn active_interval(&self) -> std::ops::Range<usize> {
        self.root_len..self.reach()
    }
}

/// Per-order circuit counts plus the factor-complexity budget
/// `|Fac_{i+1}| - |Fac_i| + 1` that bounds each of them.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScProfile {
    /// `per_order[i - 1]` = number of small circuits at order `i`.
    pub per_order: Vec<u64>,
    /// `complexity_budget[i - 1]` = `|Fac_{i+1}| - |Fac_i| + 1`.
    pub complexity_budget: Vec<i64>,
    pub total: u64,
}

/// Builds the order-`i` factor graph of `w`.
pub fn rauzy_graph(w: &Word, order: usize) -> Result<RauzyGraph> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    if order < 1 || order > w.len() {
        return Err(Error::OrderOutOfRange);
    }
    let vertices: BTreeSet<Word> = (0..=w.len() - order)
        .map(|i| w.subword(i, i + order))
        .collect();
    let vertices: Vec<Word> = vertices.into_iter().collect();
    let vertex_id: BTreeMap<&Word, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edge_labels: BTreeSet<Word> = BTreeSet::new();
    if w.len() > order {
        for i in 0..=w.len() - order - 1 {
            edge_labels.insert(w.subword(i, i + order + 1));
        }
    }
    let edges = edge_labels
        .into_iter()
        .map(|label| {
            let from = vertex_id[&label.subword(0, order)];
            let to = vertex_id[&label.subword(1, order + 1)];
            RauzyEdge { label, from, to }
        })
        .collect();
    Ok(RauzyGraph {
        order,
        vertices,
        edges,
    })
}

/// Number of consecutive orders from `|root|` at which the class of `root`
/// has a circuit (0 when even the base order fails). Uses incremental
/// automaton cursors: one letter appended per rotation per order.
fn scan_class(ix: &FactorIndex, root: &[u8]) -> usize {
    let ell = root.len();
    debug_assert!(ell >= 1);
    let mut cursors = Vec::with_capacity(ell);
    for j in 0..ell {
        let mut cur = ix.cursor();
        // Feed the length-(ell+1) expansion of rotation j.
        for k in 0..=ell {
            cur = ix.step(cur, root[(j + k) % ell]);
            if !cur.alive() {
                return 0;
            }
        }
        cursors.push(cur);
    }
    let mut count = 1usize;
    let n = ix.source().len();
    loop {
        let order = ell + count;
        if order + 1 > n {
            return count;
        }
        // Extend every rotation's expansion from length order to order + 1.
        for (j, cur) in cursors.iter_mut().enumerate() {
            *cur = ix.step(*cur, root[(j + order) % ell]);
            if !cur.alive() {
                return count;
            }
        }
        count += 1;
    }
}

/// Every primitive class with at least one circuit, with its full order
/// interval. Candidates are the length-`(l+1)` factors whose first and last
/// letters agree; hash pruning discards classes missing a rotation before
/// the exact cursor scan confirms the survivors.
pub fn all_circuit_classes(ix: &FactorIndex) -> Vec<CircuitClass> {
    let letters = ix.source().letters().to_vec();
    let hashes = PrefixHashes::new(&letters);

    struct Cand {
        start: u32,
        target: u128,
        alive: bool,
    }
    // root length -> root hash -> candidate
    let mut by_len: HashMap<u32, HashMap<u128, Cand>> = HashMap::new();
    ix.for_each_distinct_factor(|start, len| {
        if len < 2 || letters[start] != letters[start + len - 1] {
            return;
        }
        let ell = len - 1;
        let h = hashes.range(start, start + ell);
        if let Entry::Vacant(e) = by_len.entry(ell as u32).or_default().entry(h) {
            let target =
                PrefixHashes::append_letter(hashes.range(start + 1, start + ell), letters[start]);
            e.insert(Cand {
                start: start as u32,
                target,
                alive: true,
            });
        }
    });

    let mut out = Vec::new();
    let mut lens: Vec<u32> = by_len.keys().copied().collect();
    lens.sort_unstable();
    for ell in lens {
        let cands = by_len.get_mut(&ell).unwrap();
        let ell = ell as usize;
        // Remove candidates whose rotated-by-one root is not a candidate,
        // propagating along reverse rotation edges until stable.
        let mut incoming: HashMap<u128, Vec<u128>> = HashMap::new();
        for (&h, c) in cands.iter() {
            incoming.entry(c.target).or_default().push(h);
        }
        let mut dead: Vec<u128> = cands
            .iter()
            .filter(|(_, c)| !cands.contains_key(&c.target))
            .map(|(&h, _)| h)
            .collect();
        for h in &dead {
            cands.get_mut(h).unwrap().alive = false;
        }
        while let Some(h) = dead.pop() {
            if let Some(sources) = incoming.get(&h) {
                for &s in sources {
                    if let Some(c) = cands.get_mut(&s) {
                        if c.alive {
                            c.alive = false;
                            dead.push(s);
                        }
                    }
                }
            }
        }
        // Survivors split into rotation cycles; a cycle of full length ell
        // is a primitive class candidate, shorter cycles are powers.
        let mut visited: BTreeSet<u128> = BTreeSet::new();
        let mut survivors: Vec<u128> = cands
            .iter()
            .filter(|(_, c)| c.alive)
            .map(|(&h, _)| h)
            .collect();
        survivors.sort_unstable();
        for h0 in survivors {
            if visited.contains(&h0) {
                continue;
            }
            let mut cycle_len = 0usize;
            let mut h = h0;
            loop {
                visited.insert(h);
                cycle_len += 1;
                h = cands[&h].target;
                if h == h0 || cycle_len > ell {
                    break;
                }
                if visited.contains(&h) {
                    break;
                }
            }
            if cycle_len != ell || h != h0 {
                continue;
            }
            let start = cands[&h0].start as usize;
            let root = &letters[start..start + ell];
            let period = word::smallest_period_slice(root);
            if period != ell && ell.is_multiple_of(period) {
                continue; // root is itself a power
            }
            let m = scan_class(ix, root);
            if m == 0 {
                continue;
            }
            let r0 = word::least_rotation_index(root);
            let key: Vec<u8> = root[r0..].iter().chain(root[..r0].iter()).copied().collect();
            out.push(CircuitClass {
                class_key: Word::from_letters(key).expect("letters already validated"),
                root_len: ell,
                circuit_count: m,
            });
        }
    }
    out.sort_by(|a, b| (a.root_len, &a.class_key).cmp(&(b.root_len, &b.class_key)));
    out.dedup_by(|a, b| a.class_key == b.class_key);
    out
}

/// All classes with a small circuit at the given order.
pub fn detect_small_circuits_at_order(w: &Word, order: usize) -> Result<Vec<SmallCircuit>> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    if order < 1 || order > w.len() {
        return Err(Error::OrderOutOfRange);
    }
    let ix = build_index(w)?;
    Ok(all_circuit_classes(&ix)
        .into_iter()
        .filter(|c| c.orders().contains(&order))
        .map(|c| SmallCircuit {
            class_key: c.class_key,
            order,
        })
        .collect())
}

pub fn sc_profile_from_index(ix: &FactorIndex) -> ScProfile {
    let n = ix.source().len();
    let mut per_order = vec![0u64; n];
    for class in all_circuit_classes(ix) {
        for order in class.orders() {
            per_order[order - 1] += 1;
        }
    }
    let complexity_budget: Vec<i64> = (1..=n)
        .map(|i| ix.fac_count(i + 1) as i64 - ix.fac_count(i) as i64 + 1)
        .collect();
    let total = per_order.iter().sum();
    ScProfile {
        per_order,
        complexity_budget,
        total,
    }
}

/// Per-order circuit counts of `w` and their factor-complexity budgets.
pub fn sc_profile(w: &Word) -> Result<ScProfile> {
    Ok(sc_profile_from_index(&build_index(w)?))
}

/// Statistics for the classes whose square occurs in `w` (the classes that
/// can own rational powers), sorted by descending interval end then key.
pub fn class_stats_from_parts(ix: &FactorIndex, breakdown: &RpBreakdown) -> Vec<ClassStats> {
    let mut stats: Vec<ClassStats> = breakdown
        .per_class
        .iter()
        .map(|(key, &qclass_size)| {
            let m = scan_class(ix, key.letters());
            debug_assert!(m >= 1, "square class {key} must carry a base circuit");
            ClassStats {
                class_key: key.clone(),
                root_len: key.len(),
                circuit_count: m,
                qclass_size,
            }
        })
        .collect();
    stats.sort_by(|a, b| {
        b.reach()
            .cmp(&a.reach())
            .then_with(|| a.class_key.cmp(&b.class_key))
    });
    stats
}

pub fn class_stats(w: &Word) -> Result<Vec<ClassStats>> {
    let ix = build_index(w)?;
    let breakdown = rp_with_breakdown(w)?;
    Ok(class_stats_from_parts(&ix, &breakdown))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn graph_examples() {
        let g = rauzy_graph(&w("abab"), 1).unwrap();
        let vs: Vec<String> = g.vertices.iter().map(|v| v.text()).collect();
        assert_eq!(vs, ["a", "b"]);
        let es: Vec<(String, usize, usize)> = g
            .edges
            .iter()
            .map(|e| (e.label.text(), e.from, e.to))
            .collect();
        assert_eq!(es, [("ab".into(), 0, 1), ("ba".into(), 1, 0)]);

        let g = rauzy_graph(&w("bbab"), 3).unwrap();
        let vs: Vec<String> = g.vertices.iter().map(|v| v.text()).collect();
        assert_eq!(vs, ["bab", "bba"]);
        let es: Vec<(String, usize, usize)> = g
            .edges
            .iter()
            .map(|e| (e.label.text(), e.from, e.to))
            .collect();
        assert_eq!(es, [("bbab".into(), 1, 0)]);

        let g = rauzy_graph(&w("aaaa"), 4).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());

        assert!(matches!(
            rauzy_graph(&w("ab"), 3),
            Err(Error::OrderOutOfRange)
        ));
    }

    #[test]
    fn graph_sizes_match_complexity() {
        let word = w("abbabaabbaab");
        let ix = build_index(&word).unwrap();
        for order in 1..=word.len() {
            let g = rauzy_graph(&word, order).unwrap();
            assert_eq!(g.vertices.len() as u64, ix.fac_count(order));
            assert_eq!(g.edges.len() as u64, ix.fac_count(order + 1));
        }
    }

    #[test]
    fn dot_output_mentions_vertices() {
        let g = rauzy_graph(&w("abab"), 1).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("label=\"a\""));
        assert!(dot.contains("->"));
    }

    #[test]
    fn detect_examples() {
        let found = detect_small_circuits_at_order(&w("abab"), 2).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].class_key.text(), "ab");

        assert!(detect_small_circuits_at_order(&w("abab"), 3)
            .unwrap()
            .is_empty());

        let found = detect_small_circuits_at_order(&w("aaaa"), 3).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].class_key.text(), "a");
    }

    #[test]
    fn circuits_do_not_require_squares() {
        // aba and bab occur but neither abab nor baba does, so the class of
        // ab owns a circuit at order 2 without its square occurring.
        let word = w("aabaabbabb");
        let ix = build_index(&word).unwrap();
        assert!(!ix.contains_factor(&w("abab")).unwrap());
        assert!(!ix.contains_factor(&w("baba")).unwrap());
        let found = detect_small_circuits_at_order(&word, 2).unwrap();
        assert!(found.iter().any(|c| c.class_key.text() == "ab"));
    }

    #[test]
    fn sc_profile_examples() {
        let p = sc_profile(&w("aaaa")).unwrap();
        assert_eq!(p.per_order, [1, 1, 1, 0]);
        assert_eq!(p.total, 3);

        assert_eq!(sc_profile(&w("abab")).unwrap().total, 1);
        assert_eq!(sc_profile(&w("ab")).unwrap().total, 0);
    }

    #[test]
    fn profile_agrees_with_per_order_detection() {
        for text in ["aabaabbabb", "aababaababaababaababa", "abbabbabbabb", "abc"] {
            let word = w(text);
            let profile = sc_profile(&word).unwrap();
            for order in 1..=word.len() {
                let direct = detect_small_circuits_at_order(&word, order).unwrap();
                assert_eq!(
                    profile.per_order[order - 1],
                    direct.len() as u64,
                    "order {order} of {text}"
                );
            }
        }
    }

    #[test]
    fn class_stats_examples() {
        let stats = class_stats(&w("aaaa")).unwrap();
        assert_eq!(stats.len(), 1);
        let s = &stats[0];
        assert_eq!(
            (s.class_key.text().as_str(), s.root_len, s.circuit_count, s.qclass_size),
            ("a", 1, 3, 3)
        );
        assert_eq!(s.active_interval(), 1..4);

        let stats = class_stats(&w("abab")).unwrap();
        assert_eq!(stats.len(), 1);
        let s = &stats[0];
        assert_eq!(
            (s.class_key.text().as_str(), s.root_len, s.circuit_count, s.qclass_size),
            ("ab", 2, 1, 1)
        );

        // In (a^2 b a b)^4 a the longest run of a has length 2, so the
        // class of a is active at order 1 only.
        let stats = class_stats(&w("aababaababaababaababa")).unwrap();
        let a = stats.iter().find(|s| s.class_key.text() == "a").unwrap();
        assert_eq!((a.root_len, a.circuit_count), (1, 1));
        assert_eq!(stats.len(), 4);
    }

    #[test]
    fn stats_sorted_by_descending_reach() {
        let stats = class_stats(&w("aababaababaababaababa")).unwrap();
        for pair in stats.windows(2) {
            assert!(pair[0].reach() >= pair[1].reach());
        }
    }

    #[test]
    fn square_free_word_has_no_stats() {
        assert!(class_stats(&w("abcbacbc")).unwrap().is_empty());
    }
}
