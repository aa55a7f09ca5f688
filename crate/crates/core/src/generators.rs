//! Enumeration of ECH generators in the null class `Gamma = 0`.
//!
//! A generator with `M = d|e|` has grading `d^2|e| + m+ - m- + d chi`. For a
//! fixed `d` and a fixed number `h` of (simple) hyperbolic orbits the pair
//! `(m+, m-)` is then pinned by `m+ - m- = s` and `m+ + m- = d|e| - h`, so
//! enumeration is a scan over `d`, `h` and the hyperbolic subsets of size `h`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::arith::{self, add, mul, sub};
use crate::bundle::{action_of, ExactAction, MorseProfile, OrbitSet, PrequantizationBundle};
use crate::error::{Error, Result};
use crate::index::grading;

/// A null-class generator together with its grading and action.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedGenerator {
    pub orbit_set: OrbitSet,
    pub grading: i64,
    pub action: ExactAction,
    /// `M / |e|`.
    pub d: u64,
}

impl Ord for GradedGenerator {
    /// Action, then `m-` descending, `m+` ascending, hyperbolic vector
    /// lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.action
            .cmp(&other.action)
            .then_with(|| other.orbit_set.m_minus.cmp(&self.orbit_set.m_minus))
            .then_with(|| self.orbit_set.m_plus.cmp(&other.orbit_set.m_plus))
            .then_with(|| self.orbit_set.m_hyp.cmp(&other.orbit_set.m_hyp))
            .then_with(|| self.grading.cmp(&other.grading))
    }
}

impl PartialOrd for GradedGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All 0/1 vectors of length `n` with exactly `k` ones, in lexicographic
/// order.
fn hyperbolic_subsets(n: usize, k: usize) -> Vec<Vec<u64>> {
    fn rec(pos: usize, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let n = cur.len();
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if n - pos < left {
            return;
        }
        // zero first keeps the output lexicographically sorted
        rec(pos + 1, left, cur, out);
        cur[pos] = 1;
        rec(pos + 1, left - 1, cur, out);
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, k, &mut vec![0; n], &mut out);
    }
    out
}

fn graded(
    bundle: &PrequantizationBundle,
    profile: &MorseProfile,
    orbit_set: OrbitSet,
    d: u64,
) -> Result<GradedGenerator> {
    let grading = grading(bundle, &orbit_set)?;
    let action = action_of(&orbit_set, profile)?;
    Ok(GradedGenerator {
        orbit_set,
        grading,
        action,
        d,
    })
}

/// Every null-class generator of the given even grading, sorted, with
/// actions taken from the standard Morse profile.
pub fn enumerate_by_grading(
    bundle: &PrequantizationBundle,
    target_grading: i64,
) -> Result<Vec<GradedGenerator>> {
    enumerate_by_grading_with(bundle, &MorseProfile::standard(bundle.genus()), target_grading)
}

/// Largest `d` that can carry a generator of grading `target`.
///
/// Feasibility needs `|target - d^2|e| - d chi| <= d|e|`, in particular
/// `d((d-1)|e| + chi) <= target`. Once `(d-1)|e| + chi > 0` the left side is
/// strictly increasing in `d`, so the first `d` past that point violating
/// the inequality bounds the search.
pub fn grading_search_bound(bundle: &PrequantizationBundle, target: i64) -> Result<u64> {
    let abs_e = i128::from(bundle.abs_e());
    let chi = i128::from(bundle.chi());
    let target = i128::from(target);
    let mut d: i128 = 0;
    loop {
        let slope = add(mul(d - 1, abs_e)?, chi)?;
        if slope > 0 && mul(d, slope)? > target {
            return Ok(u64::try_from(d - 1).unwrap_or(0));
        }
        d += 1;
    }
}

pub fn enumerate_by_grading_with(
    bundle: &PrequantizationBundle,
    profile: &MorseProfile,
    target_grading: i64,
) -> Result<Vec<GradedGenerator>> {
    if target_grading < 0 || target_grading % 2 != 0 {
        return Err(Error::BadGrading(target_grading));
    }
    let abs_e = i128::from(bundle.abs_e());
    let chi = i128::from(bundle.chi());
    let n_hyp = bundle.hyperbolic_count();
    let target = i128::from(target_grading);
    let d_max = grading_search_bound(bundle, target_grading)?;

    let mut out = Vec::new();
    for d in 0..=d_max {
        let di = i128::from(d);
        let big_m = mul(di, abs_e)?;
        let s = sub(sub(target, mul(mul(di, di)?, abs_e)?)?, mul(di, chi)?)?;
        let h_max = big_m.min(n_hyp as i128);
        for h in 0..=h_max {
            let rest = big_m - h;
            if s.abs() > rest || (rest - s) % 2 != 0 {
                continue;
            }
            let m_plus = arith::to_u64((rest + s) / 2)?;
            let m_minus = arith::to_u64((rest - s) / 2)?;
            for hyp in hyperbolic_subsets(n_hyp, h as usize) {
                let g = graded(bundle, profile, OrbitSet::new(m_plus, hyp, m_minus), d)?;
                if g.grading != target_grading {
                    return Err(Error::Inconsistency(format!(
                        "solved {} at grading {} but it grades to {}",
                        g.orbit_set, target_grading, g.grading
                    )));
                }
                out.push(g);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every null-class generator with action strictly below `limit`, sorted
/// ascending.
pub fn enumerate_by_action(
    bundle: &PrequantizationBundle,
    profile: &MorseProfile,
    limit: &ExactAction,
) -> Result<Vec<GradedGenerator>> {
    if profile.h_saddle().len() != bundle.hyperbolic_count() {
        return Err(Error::ProfileLength {
            expected: bundle.hyperbolic_count(),
            found: profile.h_saddle().len(),
        });
    }
    let abs_e = bundle.abs_e();
    let n_hyp = bundle.hyperbolic_count();
    let mut out = Vec::new();
    let mut d: u64 = 0;
    loop {
        let big_m = d.checked_mul(abs_e).ok_or(Error::Overflow)?;
        if big_m.checked_mul(2).ok_or(Error::Overflow)? > limit.leading {
            break;
        }
        let h_max = big_m.min(n_hyp as u64);
        for h in 0..=h_max {
            let rest = big_m - h;
            for hyp in hyperbolic_subsets(n_hyp, h as usize) {
                for m_plus in 0..=rest {
                    let set = OrbitSet::new(m_plus, hyp.clone(), rest - m_plus);
                    if action_of(&set, profile)? < *limit {
                        out.push(graded(bundle, profile, set, d)?);
                    }
                }
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// Solution `(m-, m+, d)` of `m- + m+ = d|e|`, `2k = 2d + d^2|e| + m+ - m-`
/// on a sphere bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphereSolution {
    pub m_minus: u64,
    pub m_plus: u64,
    pub d: u64,
}

/// The unique sphere generator of grading `2k`. Uniqueness is checked by
/// scanning every `d` whose lower grading bound `2d + d(d-1)|e|` is at most
/// `2k`.
pub fn sphere_pair_for_k(abs_e: u64, k: u64) -> Result<SphereSolution> {
    if abs_e == 0 {
        return Err(Error::NonPositive("|e|".into()));
    }
    let e = i128::from(abs_e);
    let two_k = mul(2, i128::from(k))?;
    let mut found = Vec::new();
    let mut d: i128 = 0;
    loop {
        let lower = add(mul(2, d)?, mul(mul(d, d - 1)?, e)?)?;
        if lower > two_k {
            break;
        }
        let big_m = mul(d, e)?;
        let s = sub(sub(two_k, mul(2, d)?)?, mul(mul(d, d)?, e)?)?;
        if s.abs() <= big_m && (big_m - s) % 2 == 0 {
            found.push(SphereSolution {
                m_minus: arith::to_u64((big_m - s) / 2)?,
                m_plus: arith::to_u64((big_m + s) / 2)?,
                d: arith::to_u64(d)?,
            });
        }
        d += 1;
    }
    match found.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Inconsistency(format!(
            "{} sphere generators at grading 2k = {} for |e| = {}",
            found.len(),
            two_k,
            abs_e
        ))),
    }
}
