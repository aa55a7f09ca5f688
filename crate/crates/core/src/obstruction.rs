//! Capacity sequences of balls and ellipsoids, embedding obstructions, and
//! the Gromov width report for disk bundles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bundle::PrequantizationBundle;
use crate::error::{Error, Result};
use crate::spectrum::{capacity_sphere, capacity_torus_bounds};

/// Nondecreasing sequence of exact capacities `c_0, c_1, ...` with `c_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitySequence {
    values: Vec<BigRational>,
    label: String,
}

impl CapacitySequence {
    pub fn new(values: Vec<BigRational>, label: impl Into<String>) -> Result<Self> {
        match values.first() {
            Some(v) if v.is_zero() => {}
            _ => return Err(Error::BadSequence("first value must be 0".into())),
        }
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::BadSequence(format!("decreases at k = {}", i + 1)));
        }
        Ok(Self {
            values,
            label: label.into(),
        })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.values.get(k)
    }
}

fn require_positive(a: &BigRational, what: &str) -> Result<()> {
    if !a.is_positive() {
        return Err(Error::NonPositive(format!("{what} = {a}")));
    }
    Ok(())
}

/// `c_k(B(a)) = d a` for `d(d+1)/2 <= k < (d+1)(d+2)/2`, for `k = 0..=k_max`.
pub fn ball_capacities(a: &BigRational, k_max: usize) -> Result<CapacitySequence> {
    require_positive(a, "ball size")?;
    let mut values = Vec::with_capacity(k_max + 1);
    let mut d: usize = 0;
    // next block starts at (d+1)(d+2)/2
    let mut next_start: usize = 1;
    for k in 0..=k_max {
        if k == next_start {
            d += 1;
            next_start += d + 1;
        }
        values.push(a * BigRational::from_integer(BigInt::from(d)));
    }
    CapacitySequence::new(values, format!("ball:{a}"))
}

/// The `k_max + 1` smallest elements of `{ma + nb : m, n >= 0}` with
/// multiplicity.
///
/// All elements up to a threshold `T` are listed by a bounded double loop;
/// `T` doubles until at least `k_max + 1` of them exist, at which point the
/// sorted prefix is complete.
pub fn ellipsoid_capacities(
    a: &BigRational,
    b: &BigRational,
    k_max: usize,
) -> Result<CapacitySequence> {
    require_positive(a, "ellipsoid a")?;
    require_positive(b, "ellipsoid b")?;
    let need = k_max + 1;
    let mut threshold = a.max(b).clone();
    let values = loop {
        let mut found = Vec::new();
        let mut m_term = BigRational::zero();
        while m_term <= threshold {
            let mut v = m_term.clone();
            while v <= threshold {
                found.push(v.clone());
                v += b;
            }
            m_term += a;
        }
        if found.len() >= need {
            found.sort();
            found.truncate(need);
            break found;
        }
        threshold *= BigRational::from_integer(BigInt::from(2));
    };
    CapacitySequence::new(values, format!("ellipsoid:{a},{b}"))
}

/// First `k` with `source[k] > target[k]`, i.e. the capacity that rules out
/// an embedding of source into target. `None` when no index obstructs.
pub fn obstructs_embedding(
    source: &CapacitySequence,
    target: &CapacitySequence,
) -> Result<Option<usize>> {
    if source.len() != target.len() {
        return Err(Error::LengthMismatch {
            source_len: source.len(),
            target_len: target.len(),
        });
    }
    Ok(source
        .values
        .iter()
        .zip(&target.values)
        .position(|(s, t)| s > t))
}

/// Upper bounds on the Gromov width of the unit disk bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GromovReport {
    pub genus: u32,
    pub euler: i64,
    /// The disk-bundle bound `c_Gr <= 1`.
    pub paper_bound: u64,
    /// `c_1` of the boundary when it is known exactly.
    pub capacity_c1: Option<u64>,
    pub best_bound: u64,
    /// False for genus >= 2, where the bound is reported but not proven here.
    pub genus_in_scope: bool,
}

pub fn gromov_width_report(bundle: &PrequantizationBundle) -> Result<GromovReport> {
    let abs_e = bundle.abs_e();
    let (capacity_c1, genus_in_scope) = match bundle.genus() {
        0 => (Some(capacity_sphere(abs_e, 1)?), true),
        1 if abs_e >= 2 => {
            let r = capacity_torus_bounds(abs_e, 1)?;
            if !r.exact {
                return Err(Error::Inconsistency(format!(
                    "torus c_1 not exact for |e| = {abs_e}"
                )));
            }
            (Some(r.lower), true)
        }
        1 => (None, true),
        _ => (None, false),
    };
    let paper_bound = 1;
    let best_bound = capacity_c1.map_or(paper_bound, |c| c.min(paper_bound));
    Ok(GromovReport {
        genus: bundle.genus(),
        euler: bundle.euler(),
        paper_bound,
        capacity_c1,
        best_bound,
        genus_in_scope,
    })
}

/// Parses `ball:A` or `ellipsoid:A,B` and builds the sequence up to `k_max`.
pub fn parse_domain(spec: &str, k_max: usize) -> Result<CapacitySequence> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("domain `{spec}` needs `kind:params`")))?;
    match kind {
        "ball" => ball_capacities(&crate::bundle::parse_rational(args)?, k_max),
        "ellipsoid" => {
            let (a, b) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("ellipsoid `{args}` needs `A,B`")))?;
            ellipsoid_capacities(
                &crate::bundle::parse_rational(a)?,
                &crate::bundle::parse_rational(b)?,
                k_max,
            )
        }
        other => Err(Error::Parse(format!("unknown domain `{other}`"))),
    }
}

/// Integer view of a rational, when it is one.
pub fn as_integer(q: &BigRational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}
