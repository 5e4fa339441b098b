//! The piecewise-quadratic envelope functions behind the `n^2/8` upper
//! bound, the word-level inequality chain, and the continuous-region grid
//! checks.
//!
//! For a class with root length `l` and `m` circuit orders, the envelope
//!
//! ```text
//! F(x, y) = (y - x/2) x   if y >= x,      y^2 / 2   otherwise
//! ```
//!
//! evaluated at (l/N, m/N) bounds the class's share of the rational-power
//! count (N = n + 1). `F` is homogeneous of degree 2, so the unnormalized
//! per-class bound is `N^2 F(l/N, m/N) = F(l, m)`.
//!
//! Word-level checks compare integers exactly: with `f2(l, m) = 2 F(l, m)`
//! (an integer), the three chained claims become `4 sum(f2) <= N^2`,
//! `2 RP <= sum(f2) + n`, and `8 RP <= N^2 + 4n`. Floating point appears
//! only in reported margins and in the continuous grids, where the absolute
//! tolerance is 1e-12.

use rayon::prelude::*;

use crate::rauzy::{self, ClassStats};
use crate::ratpow::{self, RpBreakdown};
use crate::word::Word;
use crate::{Error, Result};

/// Absolute tolerance for every floating-point comparison in this module.
pub const TOLERANCE: f64 = 1e-12;

/// A class rendered as a point of the normalized domain: `x = l/N`,
/// `y = m/N`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NormalizedClassPoint {
    pub x: f64,
    pub y: f64,
}

impl NormalizedClassPoint {
    pub fn new(root_len: usize, circuit_count: usize, big_n: usize) -> Self {
        let p = NormalizedClassPoint {
            x: root_len as f64 / big_n as f64,
            y: circuit_count as f64 / big_n as f64,
        };
        debug_assert!(p.x > 0.0 && p.y > 0.0 && p.x + p.y <= 1.0);
        p
    }
}

#[inline]
pub(crate) fn f_raw(x: f64, y: f64) -> f64 {
    if y >= x {
        (y - 0.5 * x) * x
    } else {
        0.5 * y * y
    }
}

/// The two-branch envelope `F`.
pub fn eval_f(x: f64, y: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 {
        return Err(Error::Domain(format!("F needs x, y >= 0, got ({x}, {y})")));
    }
    Ok(f_raw(x, y))
}

#[inline]
pub(crate) fn phi_raw(r: f64) -> f64 {
    if r <= 0.5 {
        0.5 * r * r
    } else {
        0.5 * (1.0 - r) * (3.0 * r - 1.0)
    }
}

/// Best value of `F(x, y)` over `0 <= x <= s - y` at fixed `y = r s`,
/// normalized by `s^2`.
pub fn eval_phi(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("phi needs r in [0, 1], got {r}")));
    }
    Ok(phi_raw(r))
}

#[inline]
pub(crate) fn v_raw(t: f64) -> f64 {
    if t <= 4.0 / 3.0 {
        0.25 * (2.0 - t) * (3.0 * t - 2.0)
    } else if t <= 1.5 {
        1.5 * t * t - 4.0 * t + 3.0
    } else {
        0.5 * (3.0 - t) * (t - 1.0)
    }
}

/// Closed-form bound for the packing value: `P(s, B) <= s^2 V(B/s)`.
pub fn eval_v(t: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&t) {
        return Err(Error::Domain(format!("V needs T in [1, 2], got {t}")));
    }
    Ok(v_raw(t))
}

#[inline]
pub(crate) fn w_raw(a: f64, s: f64) -> f64 {
    let t = a / s;
    if t <= 1.0 / 3.0 {
        0.25 * s * s + 0.5 * a * s - 0.75 * a * a
    } else if t <= 0.5 {
        0.5 * s * s - a * s + 1.5 * a * a
    } else {
        a * s - 0.5 * a * a
    }
}

/// `W(a, s) = s^2 V(1 + a/s)` together with the four reduction summands
/// `U_j(a, S)`; each `U_j` is present only when its admissibility
/// constraint holds (`a <= S`, `2a <= S`, `3a <= S`, `a <= S`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WEnvelope {
    pub w: f64,
    pub u: [Option<f64>; 4],
}

pub fn eval_w_and_u(a: f64, s: f64, big_s: f64) -> Result<WEnvelope> {
    if !(a > 0.0 && a <= s && s <= 0.5) {
        return Err(Error::Domain(format!(
            "W needs 0 < a <= s <= 1/2, got ({a}, {s})"
        )));
    }
    if !(big_s >= a && big_s <= 0.5) {
        return Err(Error::Domain(format!(
            "U needs a <= S <= 1/2, got S = {big_s}"
        )));
    }
    let u1 = Some(0.5 * a * a + 0.5 * (big_s - a) * (big_s - a));
    let u2 = (2.0 * a <= big_s)
        .then_some(1.5 * a * a + 0.5 * (big_s - 2.0 * a) * (big_s - 2.0 * a));
    let u3 = (3.0 * a <= big_s)
        .then_some(3.0 * a * a + 0.5 * (big_s - 3.0 * a) * (big_s - 3.0 * a));
    let u4 = Some(w_raw(a, big_s));
    Ok(WEnvelope {
        w: w_raw(a, s),
        u: [u1, u2, u3, u4],
    })
}

// ---------------------------------------------------------------------------
// packing sampling
// ---------------------------------------------------------------------------

/// Sampled lower estimate of the constrained packing maximum
///
/// ```text
/// P(s, B) = max sum_j F(x_j, y_j)    over x_j + y_j <= s, sum_j y_j <= B
/// ```
///
/// Random families are mixed with the structured profiles that attain the
/// closed-form optimum, so per-cell results sit at the bound wherever it is
/// tight. Deterministic for a fixed seed.
pub fn sample_packing_max(
    s: f64,
    b: f64,
    max_parts: usize,
    trials: u64,
    seed: u64,
) -> Result<f64> {
    if !(s > 0.0 && s <= 0.5 + TOLERANCE) {
        return Err(Error::Parameter(format!("need 0 < s <= 1/2, got s = {s}")));
    }
    if b < s - TOLERANCE {
        return Err(Error::Parameter(format!("infeasible: B = {b} below s = {s}")));
    }
    if b > 2.0 * s + TOLERANCE {
        return Err(Error::Parameter(format!("need B <= 2s, got B = {b}")));
    }
    if max_parts == 0 {
        return Err(Error::Parameter("need at least one part".into()));
    }
    let t = (b / s).clamp(1.0, 2.0);
    let mut best = 0.0f64;

    let mut consider = |parts: &[(f64, f64)]| {
        let total: f64 = parts.iter().map(|&(x, y)| f_raw(x, y)).sum();
        if total > best {
            best = total;
        }
    };

    // Equal splits over k parts cover every branch of the closed form.
    let mut parts = Vec::with_capacity(max_parts);
    for k in 1..=max_parts {
        let y = (b / k as f64).min(s);
        let x = y.min(s - y);
        parts.clear();
        parts.resize(k, (x, y));
        consider(&parts);
    }
    // Middle-branch profile (2 - T, 2 - T, 3T - 4), scaled by s.
    if t >= 4.0 / 3.0 && max_parts >= 3 {
        let r3 = 3.0 * t - 4.0;
        let mk = |r: f64| {
            let y = r * s;
            (y.min(s - y), y)
        };
        consider(&[mk(2.0 - t), mk(2.0 - t), mk(r3.min(1.0))]);
    }
    // The two equality profiles of the eighth bound, scaled to (s, B).
    if max_parts >= 3 {
        let y = (2.0 * s / 3.0).min(b / 3.0);
        consider(&[(y.min(s - y), y); 3]);
    }
    if max_parts >= 4 {
        let y = (0.5 * s).min(0.25 * b);
        consider(&[(y.min(s - y), y); 4]);
    }

    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ys = Vec::with_capacity(max_parts);
    for _ in 0..trials {
        let k = rng.random_range(1..=max_parts);
        ys.clear();
        let mut sum = 0.0;
        for _ in 0..k {
            let y = rng.random::<f64>() * s;
            ys.push(y);
            sum += y;
        }
        let scale = if sum > b { b / sum } else { 1.0 };
        let envelope_x = rng.random_bool(0.5);
        let mut total = 0.0;
        for &y in &ys {
            let y = y * scale;
            let x = if envelope_x {
                y.min(s - y)
            } else {
                rng.random::<f64>() * (s - y)
            };
            total += f_raw(x, y);
        }
        if total > best {
            best = total;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// word-level checks
// ---------------------------------------------------------------------------

/// Per-class outcome of the counting lemmas.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ClassCheck {
    pub class_key: String,
    pub root_len: usize,
    pub circuit_count: usize,
    pub qclass_size: u64,
    /// No member has length `>= 2 l + m`.
    pub no_long_members_ok: bool,
    /// At most `i` members of length `2 l + m - i` for `1 <= i <= l`.
    pub near_boundary_ok: bool,
    /// `m(m+1)/2` when `m <= l`, else `l(l+1)/2 + l(m - l)`.
    pub size_bound: u64,
    pub size_bound_ok: bool,
    pub point: NormalizedClassPoint,
    pub f_value: f64,
}

/// Every word-level inequality for one word, with margins. Failures are
/// entries, never errors.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub word: String,
    pub n: usize,
    pub big_n: usize,
    pub rp_total: u64,
    pub classes: Vec<ClassCheck>,
    /// For every class j: total active-interval overlap with j is at most
    /// `N - 2 l_j`.
    pub overlap_ok: bool,
    /// For the class with the furthest reach: overlap from the others is at
    /// most `N - 2 l_1 - m_1`.
    pub pivot_overlap_ok: bool,
    /// `2 l_j + m_j <= N` for every class.
    pub interval_budget_ok: bool,
    pub sum_f_normalized: f64,
    pub sum_f_unnormalized: f64,
    /// `sum F(l_i/N, m_i/N) <= 1/8`, compared exactly in integers.
    pub eighth_ok: bool,
    pub eighth_margin: f64,
    /// `RP <= sum F(l_i, m_i) + n/2`, compared exactly in integers.
    pub linear_slack_ok: bool,
    pub linear_slack_margin: f64,
    /// `RP <= N^2/8 + n/2`, compared exactly in integers.
    pub quadratic_ok: bool,
    pub quadratic_margin: f64,
    pub all_ok: bool,
}

/// `2 F(l, m)` as an exact integer.
fn f2_int(l: u64, m: u64) -> u64 {
    if m >= l {
        (2 * m - l) * l
    } else {
        m * m
    }
}

fn interval_overlap(a: (usize, usize), b: (usize, usize)) -> usize {
    let lo = a.0.max(b.0);
    let hi = a.1.min(b.1);
    hi.saturating_sub(lo)
}

pub fn check_word_bounds_from_parts(
    w: &Word,
    breakdown: &RpBreakdown,
    stats: &[ClassStats],
) -> BoundReport {
    let n = w.len();
    let big_n = n + 1;
    let rp_total = breakdown.total;

    let empty = std::collections::BTreeMap::new();
    let classes: Vec<ClassCheck> = stats
        .iter()
        .map(|c| {
            let l = c.root_len;
            let m = c.circuit_count;
            let profile = breakdown
                .per_class_length_profile
                .get(&c.class_key)
                .unwrap_or(&empty);
            let no_long_members_ok = profile.keys().all(|&len| len < 2 * l + m);
            let near_boundary_ok = (1..=l).all(|i| {
                let len = 2 * l + m - i;
                profile.get(&len).copied().unwrap_or(0) <= i as u64
            });
            let (lu, mu) = (l as u64, m as u64);
            let size_bound = if mu <= lu {
                mu * (mu + 1) / 2
            } else {
                lu * (lu + 1) / 2 + lu * (mu - lu)
            };
            let point = NormalizedClassPoint::new(l, m, big_n);
            ClassCheck {
                class_key: c.class_key.text(),
                root_len: l,
                circuit_count: m,
                qclass_size: c.qclass_size,
                no_long_members_ok,
                near_boundary_ok,
                size_bound,
                size_bound_ok: c.qclass_size <= size_bound,
                point,
                f_value: f_raw(point.x, point.y),
            }
        })
        .collect();

    let intervals: Vec<(usize, usize)> = stats
        .iter()
        .map(|c| (c.root_len, c.reach()))
        .collect();
    let overlap_ok = stats.iter().enumerate().all(|(j, cj)| {
        let total: usize = intervals
            .iter()
            .map(|&i| interval_overlap(i, intervals[j]))
            .sum();
        total + 2 * cj.root_len <= big_n
    });
    let pivot_overlap_ok = match stats.first() {
        None => true,
        Some(c0) => {
            let others: usize = intervals
                .iter()
                .skip(1)
                .map(|&i| interval_overlap(i, intervals[0]))
                .sum();
            others + 2 * c0.root_len + c0.circuit_count <= big_n
        }
    };
    let interval_budget_ok = stats
        .iter()
        .all(|c| 2 * c.root_len + c.circuit_count <= big_n);

    let sum_f2: u64 = stats
        .iter()
        .map(|c| f2_int(c.root_len as u64, c.circuit_count as u64))
        .sum();
    let nn = big_n as u128;
    let eighth_ok = 4 * sum_f2 as u128 <= nn * nn;
    let linear_slack_ok = 2 * rp_total as u128 <= sum_f2 as u128 + n as u128;
    let quadratic_ok = 8 * rp_total as u128 <= nn * nn + 4 * n as u128;

    let sum_f_normalized = sum_f2 as f64 / (2.0 * (big_n as f64) * (big_n as f64));
    let sum_f_unnormalized = sum_f2 as f64 / 2.0;
    let lemma_ok = classes.iter().all(|c| {
        c.no_long_members_ok && c.near_boundary_ok && c.size_bound_ok
    });
    let all_ok = lemma_ok
        && overlap_ok
        && pivot_overlap_ok
        && interval_budget_ok
        && eighth_ok
        && linear_slack_ok
        && quadratic_ok;

    BoundReport {
        word: w.text(),
        n,
        big_n,
        rp_total,
        classes,
        overlap_ok,
        pivot_overlap_ok,
        interval_budget_ok,
        sum_f_normalized,
        sum_f_unnormalized,
        eighth_ok,
        eighth_margin: 0.125 - sum_f_normalized,
        linear_slack_ok,
        linear_slack_margin: sum_f_unnormalized + n as f64 / 2.0 - rp_total as f64,
        quadratic_ok,
        quadratic_margin: (big_n as f64).powi(2) / 8.0 + n as f64 / 2.0 - rp_total as f64,
        all_ok,
    }
}

/// Runs the whole word-level inequality chain on `w`.
pub fn check_word_bounds(w: &Word) -> Result<BoundReport> {
    let ix = crate::factor_index::build_index(w)?;
    let breakdown = ratpow::rp_with_breakdown(w)?;
    let stats = rauzy::class_stats_from_parts(&ix, &breakdown);
    Ok(check_word_bounds_from_parts(w, &breakdown, &stats))
}

// ---------------------------------------------------------------------------
// continuous-region checks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct PackingGridReport {
    pub resolution: usize,
    pub trials_per_cell: u64,
    pub cells: u64,
    pub violations: u64,
    /// Largest sampled excess over the closed form (negative when slack).
    pub max_excess: f64,
    pub sampled_at_half_one: f64,
    pub bound_at_half_one: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OneEighthReport {
    pub resolution: usize,
    pub feasible_points: u64,
    pub max_value: f64,
    pub argmax: [f64; 3],
    /// Grid points within 1e-9 of the maximum (capped).
    pub equality_witnesses: Vec<[f64; 3]>,
    pub violations: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PhiStepReport {
    pub resolution: usize,
    pub max_violation: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OptimizationReport {
    pub packing: PackingGridReport,
    pub one_eighth: OneEighthReport,
    pub phi_steps: PhiStepReport,
    pub all_ok: bool,
}

fn mix_seed(seed: u64, cell: u64) -> u64 {
    let mut z = seed ^ cell.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Grid checks of the two optimization facts the eighth bound rests on,
/// plus the superadditivity steps used to reduce the packing problem.
///
/// * packing: sampled `P(s, B) <= s^2 V(B/s) + 1e-12` over a
///   `packing_resolution`-squared grid, `trials` samples per cell;
/// * one-eighth: `F(a, 1-a-s-y) + W(a, s) + y^2/2 <= 1/8 + 1e-12` over the
///   feasible (a, s, y) grid at `grid_resolution` steps per half-unit axis;
/// * step inequalities for `phi` on pairs below 1/2.
pub fn verify_optimization_lemmas(
    grid_resolution: usize,
    packing_resolution: usize,
    trials: u64,
    seed: u64,
) -> Result<OptimizationReport> {
    if grid_resolution < 50 {
        return Err(Error::Parameter(format!(
            "grid resolution {grid_resolution} below 50"
        )));
    }
    if packing_resolution < 2 {
        return Err(Error::Parameter("packing resolution below 2".into()));
    }

    // Packing grid over (s, T = B/s).
    let res = packing_resolution;
    let cells: Vec<(usize, usize)> = (0..res)
        .flat_map(|i| (0..res).map(move |j| (i, j)))
        .collect();
    let cell_results: Vec<(f64, f64, bool)> = cells
        .par_iter()
        .map(|&(i, j)| {
            let s = (i + 1) as f64 / (2.0 * res as f64);
            let t = 1.0 + j as f64 / (res - 1) as f64;
            let b = s * t;
            let cell = (i * res + j) as u64;
            let sampled = sample_packing_max(s, b, 6, trials, mix_seed(seed, cell))
                .expect("grid cell is feasible");
            let bound = s * s * v_raw(t);
            let corner = i == res - 1 && j == res - 1;
            (sampled - bound, sampled, corner)
        })
        .collect();
    let mut max_excess = f64::NEG_INFINITY;
    let mut violations = 0u64;
    let mut sampled_at_half_one = f64::NAN;
    for &(excess, sampled, corner) in &cell_results {
        if excess > max_excess {
            max_excess = excess;
        }
        if excess > TOLERANCE {
            violations += 1;
        }
        if corner {
            sampled_at_half_one = sampled;
        }
    }
    let packing = PackingGridReport {
        resolution: res,
        trials_per_cell: trials,
        cells: (res * res) as u64,
        violations,
        max_excess,
        sampled_at_half_one,
        bound_at_half_one: 0.25 * v_raw(2.0),
        ok: violations == 0,
    };

    // One-eighth grid over (a, s, y).
    let res = grid_resolution;
    let step = 1.0 / (2.0 * res as f64);
    let slices: Vec<(u64, f64, [f64; 3], u64)> = (1..=res)
        .into_par_iter()
        .map(|is| {
            let s = is as f64 * step;
            let mut best = f64::NEG_INFINITY;
            let mut arg = [0.0; 3];
            let mut points = 0u64;
            let mut violations = 0u64;
            for ia in 1..=is {
                let a = ia as f64 * step;
                for iy in 0..=(res - is) {
                    let y = iy as f64 * step;
                    let value = f_raw(a, 1.0 - a - s - y) + w_raw(a, s) + 0.5 * y * y;
                    points += 1;
                    if value > 0.125 + TOLERANCE {
                        violations += 1;
                    }
                    if value > best {
                        best = value;
                        arg = [a, s, y];
                    }
                }
            }
            (points, best, arg, violations)
        })
        .collect();
    let feasible_points: u64 = slices.iter().map(|r| r.0).sum();
    let one_eighth_violations: u64 = slices.iter().map(|r| r.3).sum();
    let (mut max_value, mut argmax) = (f64::NEG_INFINITY, [0.0; 3]);
    for &(_, best, arg, _) in &slices {
        if best > max_value || (best == max_value && arg < argmax) {
            max_value = best;
            argmax = arg;
        }
    }
    let mut equality_witnesses = Vec::new();
    'outer: for is in 1..=res {
        let s = is as f64 * step;
        for ia in 1..=is {
            let a = ia as f64 * step;
            for iy in 0..=(res - is) {
                let y = iy as f64 * step;
                let value = f_raw(a, 1.0 - a - s - y) + w_raw(a, s) + 0.5 * y * y;
                if (value - max_value).abs() <= 1e-9 {
                    equality_witnesses.push([a, s, y]);
                    if equality_witnesses.len() >= 64 {
                        break 'outer;
                    }
                }
            }
        }
    }
    let one_eighth = OneEighthReport {
        resolution: res,
        feasible_points,
        max_value,
        argmax,
        equality_witnesses,
        violations: one_eighth_violations,
        ok: one_eighth_violations == 0,
    };

    // Step inequalities for phi below 1/2.
    let mut max_violation = f64::NEG_INFINITY;
    for i in 0..res {
        let ri = i as f64 * step;
        for j in 0..res {
            let rj = j as f64 * step;
            let lhs = phi_raw(ri) + phi_raw(rj);
            let rhs = if ri + rj <= 0.5 {
                phi_raw(ri + rj)
            } else {
                phi_raw(0.5) + phi_raw(ri + rj - 0.5)
            };
            if lhs - rhs > max_violation {
                max_violation = lhs - rhs;
            }
        }
    }
    let phi_steps = PhiStepReport {
        resolution: res,
        max_violation,
        ok: max_violation <= TOLERANCE,
    };

    let all_ok = packing.ok && one_eighth.ok && phi_steps.ok;
    Ok(OptimizationReport {
        packing,
        one_eighth,
        phi_steps,
        all_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        assert!((eval_f(0.25, 0.5).unwrap() - 3.0 / 32.0).abs() < 1e-15);
        assert!((eval_f(0.5, 0.25).unwrap() - 1.0 / 32.0).abs() < 1e-15);
        // Branches agree on the seam y = x.
        for x in [0.1, 0.37, 0.5, 1.0] {
            let on_seam = eval_f(x, x).unwrap();
            assert!((on_seam - 0.5 * x * x).abs() < 1e-15);
        }
        assert!(eval_f(-0.1, 0.2).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(eval_phi(0.0).unwrap(), 0.0);
        assert!((eval_phi(0.5).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(eval_phi(1.0).unwrap(), 0.0);
        assert!(eval_phi(1.5).is_err());
    }

    #[test]
    fn v_examples() {
        assert!((eval_v(2.0).unwrap() - 0.5).abs() < 1e-15);
        let low = 0.25 * (2.0 - 4.0 / 3.0) * (3.0 * 4.0 / 3.0 - 2.0);
        assert!((eval_v(4.0 / 3.0).unwrap() - low).abs() < 1e-15);
        assert!((eval_v(4.0 / 3.0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!((eval_v(1.5).unwrap() - 0.375).abs() < 1e-15);
        assert!(eval_v(0.9).is_err());
    }

    #[test]
    fn v_branches_are_continuous() {
        for (t, expect) in [(4.0 / 3.0, 1.0 / 3.0), (1.5, 0.375)] {
            let below = v_raw(t - 1e-9);
            let above = v_raw(t + 1e-9);
            assert!((below - expect).abs() < 1e-8);
            assert!((above - expect).abs() < 1e-8);
        }
    }

    #[test]
    fn w_and_u_examples() {
        // At a = s the last branch gives s^2 / 2 = s^2 V(2).
        let e = eval_w_and_u(0.25, 0.25, 0.25).unwrap();
        assert!((e.w - 0.25 * 0.25 * v_raw(2.0)).abs() < 1e-15);
        // U1 at (1/4, 1/2).
        let e = eval_w_and_u(0.25, 0.3, 0.5).unwrap();
        assert!((e.u[0].unwrap() - 1.0 / 16.0).abs() < 1e-15);
        assert!(e.u[1].is_some()); // 2a = S admissible
        assert!(e.u[2].is_none()); // 3a > S
        assert!((e.u[3].unwrap() - w_raw(0.25, 0.5)).abs() < 1e-15);
        assert!(eval_w_and_u(0.3, 0.2, 0.4).is_err());
    }

    #[test]
    fn w_branches_are_continuous() {
        for s in [0.2, 0.35, 0.5] {
            for seam in [s / 3.0, s / 2.0] {
                let below = w_raw(seam - 1e-10, s);
                let above = w_raw(seam + 1e-10, s);
                assert!((below - above).abs() < 1e-9, "seam {seam} at s = {s}");
            }
        }
    }

    #[test]
    fn w_matches_v_composition() {
        for &(a, s) in &[(0.05, 0.4), (0.1, 0.25), (0.2, 0.3), (0.25, 0.25)] {
            let direct = w_raw(a, s);
            let composed = s * s * v_raw(1.0 + a / s);
            assert!((direct - composed).abs() < 1e-13, "(a, s) = ({a}, {s})");
        }
    }

    #[test]
    fn packing_examples() {
        let p = sample_packing_max(0.5, 1.0, 6, 20_000, 7).unwrap();
        assert!((p - 0.125).abs() <= 1e-12, "sampled {p}");
        let p = sample_packing_max(0.5, 0.5, 6, 20_000, 7).unwrap();
        assert!(p <= 0.25 * v_raw(1.0) + TOLERANCE);
        assert!(sample_packing_max(0.5, 0.4, 6, 10, 0).is_err());
    }

    #[test]
    fn packing_is_deterministic() {
        let a = sample_packing_max(0.3, 0.5, 6, 5_000, 42).unwrap();
        let b = sample_packing_max(0.3, 0.5, 6, 5_000, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn word_bounds_examples() {
        let r = check_word_bounds(&Word::parse("aaaa").unwrap()).unwrap();
        assert!((r.sum_f_normalized - 0.1).abs() < 1e-15);
        assert!(r.eighth_ok && r.linear_slack_ok && r.quadratic_ok && r.all_ok);
        assert!((r.linear_slack_margin - 1.5).abs() < 1e-12); // 2.5 + 2 - 3

        let r = check_word_bounds(&Word::parse("abab").unwrap()).unwrap();
        assert!((r.sum_f_normalized - 1.0 / 50.0).abs() < 1e-15);
        assert!(r.all_ok);
    }

    #[test]
    fn square_free_word_passes_trivially() {
        let r = check_word_bounds(&Word::parse("abc").unwrap()).unwrap();
        assert_eq!(r.rp_total, 0);
        assert!(r.all_ok);
        assert_eq!(r.sum_f_normalized, 0.0);
    }

    #[test]
    fn grid_checks_pass_at_low_resolution() {
        let report = verify_optimization_lemmas(60, 12, 2_000, 3).unwrap();
        assert!(report.all_ok, "{report:?}");
        assert!(report.one_eighth.max_value <= 0.125 + TOLERANCE);
        // The equality point (1/4, 1/4, 0) is on every even grid.
        assert!(report.one_eighth.max_value >= 0.125 - 1e-9);
        assert!(verify_optimization_lemmas(49, 12, 10, 0).is_err());
    }
}
