//! ECH capacities of sphere and torus prequantization bundles.
//!
//! Sphere: `c_k = 2d|e|` for the unique `d >= 0` with
//! `2d + d(d-1)|e| <= 2k <= 2d + d(d+1)|e|`. An independent route walks the
//! combinatorial U map from the unique grading-`2k` generator down to the
//! empty set.
//!
//! Torus: `2 d_- |e| <= c_k <= 2 d_+ |e|`, where `d_-`, `d_+` are the extreme
//! `d` admitting nonnegative `(m+, m1, m2, m-)` with
//! `d^2|e| + m+ - m- = 2k`, `m+ + m1 + m2 + m- = d|e|`, `m1, m2 in {0, 1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, exact_sqrt, isqrt};
use crate::bundle::{OrbitSet, PrequantizationBundle};
use crate::error::{Error, Result};
use crate::generators::sphere_pair_for_k;
use crate::index::grading;

/// `(d, m+, m1, m2, m-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub d: u64,
    pub m_plus: u64,
    pub m_1: u64,
    pub m_2: u64,
    pub m_minus: u64,
}

impl Witness {
    /// True when the tuple solves the torus system for `(abs_e, k)`.
    pub fn certifies_torus(&self, abs_e: u64, k: u64) -> bool {
        let (d, e) = (i128::from(self.d), i128::from(abs_e));
        let lhs = d * d * e + i128::from(self.m_plus) - i128::from(self.m_minus);
        let total = i128::from(self.m_plus)
            + i128::from(self.m_1)
            + i128::from(self.m_2)
            + i128::from(self.m_minus);
        lhs == 2 * i128::from(k) && total == d * e && self.m_1 <= 1 && self.m_2 <= 1
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.d, self.m_plus, self.m_1, self.m_2, self.m_minus
        )
    }
}

/// Capacity as an exact value (`lower == upper`) or a bound pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CapacityResult {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    pub witness_lower: Witness,
    pub witness_upper: Witness,
}

fn sphere_bounds(abs_e: i128, d: i128) -> (i128, i128) {
    let lower = 2 * d + d * (d - 1) * abs_e;
    let upper = 2 * d + d * (d + 1) * abs_e;
    (lower, upper)
}

/// `c_k` of the sphere bundle with Euler number `-abs_e`.
pub fn capacity_sphere(abs_e: u64, k: u64) -> Result<u64> {
    if abs_e == 0 {
        return Err(Error::NonPositive("|e|".into()));
    }
    let e = i128::from(abs_e);
    let two_k = 2 * i128::from(k);
    let mut hits = Vec::new();
    let mut d: i128 = 0;
    loop {
        let (lower, upper) = sphere_bounds(e, d);
        if lower > two_k {
            break;
        }
        if two_k <= upper {
            hits.push(d);
        }
        d += 1;
    }
    match hits.as_slice() {
        [d] => arith::to_u64(2 * d * e),
        _ => Err(Error::Inconsistency(format!(
            "{} values of d satisfy the sphere window for |e| = {}, k = {}",
            hits.len(),
            abs_e,
            k
        ))),
    }
}

/// Sphere capacity packaged with the realizing generator as witness.
pub fn capacity_sphere_result(abs_e: u64, k: u64) -> Result<CapacityResult> {
    let value = capacity_sphere(abs_e, k)?;
    let sol = sphere_pair_for_k(abs_e, k)?;
    let w = Witness {
        d: sol.d,
        m_plus: sol.m_plus,
        m_1: 0,
        m_2: 0,
        m_minus: sol.m_minus,
    };
    if sol.d.checked_mul(2 * abs_e) != Some(value) {
        return Err(Error::Inconsistency(format!(
            "sphere generator for k = {k} has d = {} but capacity is {value}",
            sol.d
        )));
    }
    Ok(CapacityResult {
        lower: value,
        upper: value,
        exact: true,
        witness_lower: w,
        witness_upper: w,
    })
}

/// Sphere generator `e-^m_minus e+^m_plus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpherePair {
    pub m_minus: u64,
    pub m_plus: u64,
}

impl SpherePair {
    pub fn new(m_minus: u64, m_plus: u64) -> Self {
        Self { m_minus, m_plus }
    }

    pub fn to_orbit_set(self) -> OrbitSet {
        OrbitSet::elliptic(0, self.m_plus, self.m_minus)
    }
}

impl fmt::Display for SpherePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m_minus, self.m_plus)
    }
}

/// Image of a generator under U.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UImage {
    Pair(SpherePair),
    Empty,
}

impl fmt::Display for UImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UImage::Pair(p) => p.fmt(f),
            UImage::Empty => f.write_str("EMPTY"),
        }
    }
}

/// One application of U on the sphere:
/// `e+^i e-^j -> e+^(i-1) e-^(j+1)` when `i >= 1`, and
/// `e-^j -> e+^(j-|e|)` otherwise.
pub fn sphere_u_step(abs_e: u64, gen: SpherePair) -> Result<UImage> {
    if abs_e == 0 {
        return Err(Error::NonPositive("|e|".into()));
    }
    if gen.m_minus == 0 && gen.m_plus == 0 {
        return Err(Error::EmptyInput);
    }
    let total = gen.m_minus.checked_add(gen.m_plus).ok_or(Error::Overflow)?;
    if total % abs_e != 0 {
        return Err(Error::NonzeroClass(total % abs_e));
    }
    if gen.m_plus >= 1 {
        let m_minus = gen.m_minus.checked_add(1).ok_or(Error::Overflow)?;
        return Ok(UImage::Pair(SpherePair::new(m_minus, gen.m_plus - 1)));
    }
    // m_plus = 0 and m_minus is a positive multiple of |e|.
    let rest = gen.m_minus - abs_e;
    Ok(if rest == 0 {
        UImage::Empty
    } else {
        UImage::Pair(SpherePair::new(0, rest))
    })
}

/// A state of a U orbit with its grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UStep {
    pub state: UImage,
    pub grading: i64,
}

/// Iterates U from `start` until the empty set, recording gradings. The
/// first entry is `start` itself. Fails if some step does not lower the
/// grading by exactly 2.
pub fn sphere_u_orbit(abs_e: u64, start: SpherePair) -> Result<Vec<UStep>> {
    let bundle = PrequantizationBundle::sphere(abs_e)?;
    let mut grade = grading(&bundle, &start.to_orbit_set())?;
    let mut out = vec![UStep {
        state: if start.m_minus == 0 && start.m_plus == 0 {
            UImage::Empty
        } else {
            UImage::Pair(start)
        },
        grading: grade,
    }];
    let mut current = out[0].state;
    while let UImage::Pair(pair) = current {
        let next = sphere_u_step(abs_e, pair)?;
        let next_grade = match next {
            UImage::Pair(p) => grading(&bundle, &p.to_orbit_set())?,
            UImage::Empty => 0,
        };
        if next_grade != grade - 2 {
            return Err(Error::Inconsistency(format!(
                "U step {pair} -> {next} moved grading {grade} -> {next_grade}"
            )));
        }
        out.push(UStep {
            state: next,
            grading: next_grade,
        });
        grade = next_grade;
        current = next;
    }
    Ok(out)
}

/// Sphere capacity computed by finding the grading-`2k` generator, checking
/// that `U^k` sends it to the empty set in exactly `k` steps, and reading off
/// its leading action `2M`.
pub fn capacity_sphere_via_u(abs_e: u64, k: u64) -> Result<u64> {
    let sol = sphere_pair_for_k(abs_e, k)?;
    let start = SpherePair::new(sol.m_minus, sol.m_plus);
    let orbit = sphere_u_orbit(abs_e, start)?;
    let steps = (orbit.len() - 1) as u64;
    if steps != k {
        return Err(Error::Inconsistency(format!(
            "U orbit of {start} reaches EMPTY after {steps} steps, expected {k}"
        )));
    }
    let total = sol.m_minus.checked_add(sol.m_plus).ok_or(Error::Overflow)?;
    total.checked_mul(2).ok_or(Error::Overflow)
}

/// `d(d-1)|e| <= 2k <= d(d+1)|e|`.
pub fn torus_window_feasible(abs_e: u64, k: u64, d: u64) -> bool {
    let (e, k, d) = (i128::from(abs_e), i128::from(k), i128::from(d));
    d * (d - 1) * e <= 2 * k && 2 * k <= d * (d + 1) * e
}

/// Explicit solution of the torus system at a given `d`, or `None` when
/// there is none. With `s = 2k - d^2|e|`: `m+ = max(s, 0) + t`,
/// `m- = max(-s, 0) + t`, and a single hyperbolic orbit absorbs the parity.
pub fn torus_witness(abs_e: u64, k: u64, d: u64) -> Result<Option<Witness>> {
    let e = i128::from(abs_e);
    let di = i128::from(d);
    let big_m = arith::mul(di, e)?;
    let s = arith::sub(2 * i128::from(k), arith::mul(arith::mul(di, di)?, e)?)?;
    let slack = big_m - s.abs();
    if slack < 0 {
        return Ok(None);
    }
    let parity = slack % 2;
    let t = (slack - parity) / 2;
    let w = Witness {
        d,
        m_plus: arith::to_u64(s.max(0) + t)?,
        m_1: arith::to_u64(parity)?,
        m_2: 0,
        m_minus: arith::to_u64((-s).max(0) + t)?,
    };
    if !w.certifies_torus(abs_e, k) {
        return Err(Error::Inconsistency(format!(
            "constructed witness {w} does not solve the torus system for |e| = {abs_e}, k = {k}"
        )));
    }
    Ok(Some(w))
}

/// Minimal and maximal feasible `d` for the torus system, each with witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusBounds {
    pub d_minus: u64,
    pub d_plus: u64,
    pub witness_minus: Witness,
    pub witness_plus: Witness,
}

/// Every feasible `d` lies in `[r, r + 1]` with `r = floor(sqrt(2k/|e|))`
/// (from `(d+1)^2 > d(d+1) >= 2k/|e|` and `(d-1)^2 <= d(d-1) <= 2k/|e|`); the
/// scan covers `[r - 1, r + 2]`.
pub fn torus_d_bounds(abs_e: u64, k: u64) -> Result<TorusBounds> {
    if abs_e == 0 {
        return Err(Error::NonPositive("|e|".into()));
    }
    if k == 0 {
        return Err(Error::TorusIndexZero);
    }
    let ratio = (2 * u128::from(k)) / u128::from(abs_e);
    let r = u64::try_from(isqrt(ratio)).map_err(|_| Error::Overflow)?;
    let mut feasible = Vec::new();
    for d in r.saturating_sub(1)..=r.saturating_add(2) {
        if let Some(w) = torus_witness(abs_e, k, d)? {
            feasible.push(w);
        }
    }
    let (Some(&lo), Some(&hi)) = (feasible.first(), feasible.last()) else {
        return Err(Error::Inconsistency(format!(
            "no feasible d for torus |e| = {abs_e}, k = {k}"
        )));
    };
    if hi.d - lo.d > 1 {
        return Err(Error::Inconsistency(format!(
            "d_+ - d_- = {} for |e| = {abs_e}, k = {k}",
            hi.d - lo.d
        )));
    }
    Ok(TorusBounds {
        d_minus: lo.d,
        d_plus: hi.d,
        witness_minus: lo,
        witness_plus: hi,
    })
}

pub fn capacity_torus_bounds(abs_e: u64, k: u64) -> Result<CapacityResult> {
    let b = torus_d_bounds(abs_e, k)?;
    let scale = |d: u64| {
        d.checked_mul(abs_e)
            .and_then(|v| v.checked_mul(2))
            .ok_or(Error::Overflow)
    };
    Ok(CapacityResult {
        lower: scale(b.d_minus)?,
        upper: scale(b.d_plus)?,
        exact: b.d_minus == b.d_plus,
        witness_lower: b.witness_minus,
        witness_upper: b.witness_plus,
    })
}

/// `k = n(n-1)/2` for some positive `n`, returning `n`.
pub fn triangular_root(k: u64) -> Option<u64> {
    let disc = 8 * u128::from(k) + 1;
    exact_sqrt(disc).map(|s| s.div_ceil(2) as u64)
}

/// `2 floor(sqrt(2k + 1/4) + 1/2)` for the torus with `e = -1`, evaluated as
/// `2 floor((isqrt(8k + 1) + 1) / 2)`.
pub fn capacity_torus_closed_form(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::TorusIndexZero);
    }
    if let Some(n) = triangular_root(k) {
        return Err(Error::TriangularIndex { k, n });
    }
    let root = isqrt(8 * u128::from(k) + 1);
    let d = root.div_ceil(2);
    // d must be the largest integer with d(d-1) <= 2k.
    let two_k = 2 * u128::from(k);
    if !(d * (d - 1) <= two_k && (d + 1) * d > two_k) {
        return Err(Error::Inconsistency(format!(
            "floor evaluation gave d = {d} for k = {k}"
        )));
    }
    arith::to_u64(2 * d as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_examples() {
        assert_eq!(capacity_sphere(1, 0).unwrap(), 0);
        assert_eq!(capacity_sphere(1, 3).unwrap(), 4);
        assert_eq!(capacity_sphere(2, 1).unwrap(), 4);
    }

    #[test]
    fn u_step_examples() {
        assert_eq!(
            sphere_u_step(2, SpherePair::new(1, 1)).unwrap(),
            UImage::Pair(SpherePair::new(2, 0))
        );
        assert_eq!(sphere_u_step(2, SpherePair::new(2, 0)).unwrap(), UImage::Empty);
        assert_eq!(
            sphere_u_step(1, SpherePair::new(3, 0)).unwrap(),
            UImage::Pair(SpherePair::new(0, 2))
        );
    }

    #[test]
    fn u_step_errors() {
        assert_eq!(sphere_u_step(2, SpherePair::new(0, 0)), Err(Error::EmptyInput));
        assert_eq!(sphere_u_step(2, SpherePair::new(1, 0)), Err(Error::NonzeroClass(1)));
    }

    #[test]
    fn via_u_examples() {
        assert_eq!(capacity_sphere_via_u(2, 2).unwrap(), 4);
        assert_eq!(capacity_sphere_via_u(1, 0).unwrap(), 0);
        assert_eq!(capacity_sphere_via_u(1, 3).unwrap(), capacity_sphere(1, 3).unwrap());
    }

    #[test]
    fn u_orbit_trace() {
        let orbit = sphere_u_orbit(2, SpherePair::new(1, 1)).unwrap();
        let states: Vec<String> = orbit.iter().map(|s| s.state.to_string()).collect();
        assert_eq!(states, vec!["(1,1)", "(2,0)", "EMPTY"]);
        let grades: Vec<i64> = orbit.iter().map(|s| s.grading).collect();
        assert_eq!(grades, vec![4, 2, 0]);
    }

    #[test]
    fn torus_bound_examples() {
        let b = torus_d_bounds(1, 3).unwrap();
        assert_eq!((b.d_minus, b.d_plus), (2, 3));
        let b = torus_d_bounds(1, 4).unwrap();
        assert_eq!((b.d_minus, b.d_plus), (3, 3));
        for e in 2..=10 {
            let b = torus_d_bounds(e, 1).unwrap();
            assert_eq!((b.d_minus, b.d_plus), (1, 1));
        }
        assert_eq!(torus_d_bounds(1, 0), Err(Error::TorusIndexZero));
    }

    #[test]
    fn torus_capacity_examples() {
        let r = capacity_torus_bounds(2, 1).unwrap();
        assert!(r.exact);
        assert_eq!(r.lower, 4);
        let r = capacity_torus_bounds(1, 3).unwrap();
        assert_eq!((r.lower, r.upper, r.exact), (4, 6, false));
        let r = capacity_torus_bounds(1, 4).unwrap();
        assert_eq!((r.lower, r.upper, r.exact), (6, 6, true));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(capacity_torus_closed_form(2).unwrap(), 4);
        assert_eq!(capacity_torus_closed_form(5).unwrap(), 6);
        assert_eq!(
            capacity_torus_closed_form(3),
            Err(Error::TriangularIndex { k: 3, n: 3 })
        );
        assert_eq!(
            capacity_torus_closed_form(1),
            Err(Error::TriangularIndex { k: 1, n: 2 })
        );
        assert_eq!(capacity_torus_closed_form(0), Err(Error::TorusIndexZero));
    }

    #[test]
    fn witness_rejects_non_solutions() {
        let w = Witness {
            d: 2,
            m_plus: 2,
            m_1: 0,
            m_2: 0,
            m_minus: 0,
        };
        assert!(w.certifies_torus(1, 3));
        assert!(!w.certifies_torus(1, 4));
        assert!(!Witness { m_1: 2, ..w }.certifies_torus(1, 3));
    }
}
