//! Bundles, orbit sets and exact actions.
//!
//! A prequantization bundle over a closed surface of genus `g` with Euler
//! number `e <= -1`, after perturbation by a perfect Morse function on the
//! base, has Reeb orbits `e+` (over the maximum), `h1..h2g` (over the
//! saddles) and `e-` (over the minimum), each with arbitrary covers. Orbit
//! sets are multiplicity vectors over that alphabet.
//!
//! Actions are kept in the small-perturbation limit: a pair `(2M, c)` meaning
//! `2M + eps * c` for infinitesimal `eps > 0`, compared lexicographically.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Circle bundle of Euler number `euler` over a genus `genus` surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrequantizationBundle {
    genus: u32,
    euler: i64,
}

impl PrequantizationBundle {
    pub fn new(genus: u32, euler: i64) -> Result<Self> {
        if euler > -1 {
            return Err(Error::NonNegativeEuler(euler));
        }
        // 2g must fit comfortably in an i64 and in usize.
        if genus > (u32::MAX >> 2) {
            return Err(Error::Overflow);
        }
        Ok(Self { genus, euler })
    }

    /// Sphere base, `e = -abs_e`.
    pub fn sphere(abs_e: u64) -> Result<Self> {
        Self::new(0, neg_abs(abs_e)?)
    }

    /// Torus base, `e = -abs_e`.
    pub fn torus(abs_e: u64) -> Result<Self> {
        Self::new(1, neg_abs(abs_e)?)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn abs_e(&self) -> u64 {
        self.euler.unsigned_abs()
    }

    /// Euler characteristic of the base, `2 - 2g`.
    pub fn chi(&self) -> i64 {
        2 - 2 * i64::from(self.genus)
    }

    pub fn hyperbolic_count(&self) -> usize {
        2 * self.genus as usize
    }
}

fn neg_abs(abs_e: u64) -> Result<i64> {
    if abs_e == 0 {
        return Err(Error::NonNegativeEuler(0));
    }
    i64::try_from(abs_e).map(|v| -v).map_err(|_| Error::Overflow)
}

/// One letter of the orbit alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitLabel {
    /// Fiber over the maximum.
    EPlus,
    /// Fiber over the `i`-th saddle, 1-based.
    Hyperbolic(usize),
    /// Fiber over the minimum.
    EMinus,
}

/// Multiplicities `(m+, m_1..m_2g, m-)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitSet {
    pub m_plus: u64,
    pub m_hyp: Vec<u64>,
    pub m_minus: u64,
}

impl OrbitSet {
    pub fn new(m_plus: u64, m_hyp: Vec<u64>, m_minus: u64) -> Self {
        Self {
            m_plus,
            m_hyp,
            m_minus,
        }
    }

    pub fn empty(genus: u32) -> Self {
        Self::new(0, vec![0; 2 * genus as usize], 0)
    }

    /// `e+^m_plus e-^m_minus` with no hyperbolic orbits.
    pub fn elliptic(genus: u32, m_plus: u64, m_minus: u64) -> Self {
        Self::new(m_plus, vec![0; 2 * genus as usize], m_minus)
    }

    pub fn is_empty(&self) -> bool {
        self.m_plus == 0 && self.m_minus == 0 && self.m_hyp.iter().all(|&m| m == 0)
    }

    /// Total multiplicity `M`.
    pub fn total(&self) -> Result<u64> {
        let hyp = self.hyperbolic_total()?;
        self.m_plus
            .checked_add(self.m_minus)
            .and_then(|s| s.checked_add(hyp))
            .ok_or(Error::Overflow)
    }

    pub fn hyperbolic_total(&self) -> Result<u64> {
        self.m_hyp
            .iter()
            .try_fold(0u64, |acc, &m| acc.checked_add(m))
            .ok_or(Error::Overflow)
    }

    pub fn multiplicity(&self, label: OrbitLabel) -> u64 {
        match label {
            OrbitLabel::EPlus => self.m_plus,
            OrbitLabel::EMinus => self.m_minus,
            OrbitLabel::Hyperbolic(i) => self.m_hyp.get(i.wrapping_sub(1)).copied().unwrap_or(0),
        }
    }

    /// Fails unless the hyperbolic vector has length `2g`.
    pub fn check_genus(&self, bundle: &PrequantizationBundle) -> Result<()> {
        if self.m_hyp.len() != bundle.hyperbolic_count() {
            return Err(Error::HyperbolicCount {
                genus: bundle.genus(),
                expected: bundle.hyperbolic_count(),
                found: self.m_hyp.len(),
            });
        }
        Ok(())
    }

    /// Componentwise sum (product of orbit sets).
    pub fn union(&self, other: &OrbitSet) -> Result<OrbitSet> {
        if self.m_hyp.len() != other.m_hyp.len() {
            return Err(Error::Precondition(
                "orbit sets over different alphabets".into(),
            ));
        }
        let add = |a: u64, b: u64| a.checked_add(b).ok_or(Error::Overflow);
        Ok(OrbitSet {
            m_plus: add(self.m_plus, other.m_plus)?,
            m_hyp: self
                .m_hyp
                .iter()
                .zip(&other.m_hyp)
                .map(|(&a, &b)| add(a, b))
                .collect::<Result<_>>()?,
            m_minus: add(self.m_minus, other.m_minus)?,
        })
    }

    /// Parses `e+^a h1^b ... e-^c`. Factors are whitespace separated, the
    /// exponent defaults to 1, omitted factors are 0, and each letter may
    /// appear at most once. An empty string, `empty` or `∅` is the empty set.
    pub fn parse(spec: &str, genus: u32) -> Result<OrbitSet> {
        let mut set = OrbitSet::empty(genus);
        let trimmed = spec.trim();
        if trimmed.is_empty() || trimmed == "empty" || trimmed == "∅" {
            return Ok(set);
        }
        let mut seen = Vec::new();
        for token in trimmed.split_whitespace() {
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let exp = e
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (b, exp)
                }
                None => (token, 1),
            };
            let label = match base {
                "e+" => OrbitLabel::EPlus,
                "e-" => OrbitLabel::EMinus,
                h if h.starts_with('h') => {
                    let i = h[1..]
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad orbit label `{h}`")))?;
                    if i == 0 || i > set.m_hyp.len() {
                        return Err(Error::Parse(format!(
                            "`{h}` out of range for genus {genus} (h1..h{})",
                            set.m_hyp.len()
                        )));
                    }
                    OrbitLabel::Hyperbolic(i)
                }
                other => return Err(Error::Parse(format!("unknown orbit `{other}`"))),
            };
            if seen.contains(&label) {
                return Err(Error::Parse(format!("orbit `{base}` repeated")));
            }
            seen.push(label);
            match label {
                OrbitLabel::EPlus => set.m_plus = exp,
                OrbitLabel::EMinus => set.m_minus = exp,
                OrbitLabel::Hyperbolic(i) => set.m_hyp[i - 1] = exp,
            }
        }
        Ok(set)
    }
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let mut parts = Vec::new();
        let mut push = |name: String, m: u64| match m {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{m}")),
        };
        push("e+".into(), self.m_plus);
        for (i, &m) in self.m_hyp.iter().enumerate() {
            push(format!("h{}", i + 1), m);
        }
        push("e-".into(), self.m_minus);
        f.write_str(&parts.join(" "))
    }
}

/// Values of the perfect Morse function at its critical points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseProfile {
    h_min: BigRational,
    h_saddle: Vec<BigRational>,
    h_max: BigRational,
}

impl MorseProfile {
    pub fn new(h_min: BigRational, h_saddle: Vec<BigRational>, h_max: BigRational) -> Result<Self> {
        if h_min >= h_max || h_saddle.iter().any(|s| *s <= h_min || *s >= h_max) {
            return Err(Error::ProfileOrder);
        }
        Ok(Self {
            h_min,
            h_saddle,
            h_max,
        })
    }

    /// Minimum 0, every saddle 1/2, maximum 1.
    pub fn standard(genus: u32) -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        Self {
            h_min: BigRational::zero(),
            h_saddle: vec![half; 2 * genus as usize],
            h_max: BigRational::from_integer(BigInt::from(1)),
        }
    }

    pub fn h_min(&self) -> &BigRational {
        &self.h_min
    }

    pub fn h_saddle(&self) -> &[BigRational] {
        &self.h_saddle
    }

    pub fn h_max(&self) -> &BigRational {
        &self.h_max
    }
}

/// `2M + eps * correction`, ordered as `eps -> 0+`.
///
/// Field order matters: the derived `Ord` compares `leading` first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactAction {
    pub leading: u64,
    pub correction: BigRational,
}

impl ExactAction {
    pub fn new(leading: u64, correction: BigRational) -> Self {
        Self {
            leading,
            correction,
        }
    }

    /// Pure leading term with zero correction.
    pub fn from_leading(leading: u64) -> Self {
        Self::new(leading, BigRational::zero())
    }
}

impl fmt::Display for ExactAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.leading, self.correction)
    }
}

impl FromStr for ExactAction {
    type Err = Error;

    /// Accepts `L` or `L:c` with `c` an integer or `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let (lead, corr) = match s.split_once(':') {
            Some((l, c)) => (l, Some(c)),
            None => (s, None),
        };
        let leading = lead
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad action leading term `{lead}`")))?;
        let correction = match corr {
            Some(c) => parse_rational(c)?,
            None => BigRational::zero(),
        };
        Ok(Self::new(leading, correction))
    }
}

/// Parses `p` or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Class of an orbit set in the torsion summand `Z/|e|` of `H_1(Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaResidue(pub u64);

/// `M mod |e|`.
pub fn gamma_class(bundle: &PrequantizationBundle, alpha: &OrbitSet) -> Result<GammaResidue> {
    Ok(GammaResidue(alpha.total()? % bundle.abs_e()))
}

/// Hyperbolic orbits may only appear with multiplicity 0 or 1.
pub fn is_ech_generator(alpha: &OrbitSet) -> bool {
    alpha.m_hyp.iter().all(|&m| m <= 1)
}

pub fn action_of(alpha: &OrbitSet, profile: &MorseProfile) -> Result<ExactAction> {
    if alpha.m_hyp.len() != profile.h_saddle.len() {
        return Err(Error::ProfileLength {
            expected: alpha.m_hyp.len(),
            found: profile.h_saddle.len(),
        });
    }
    let leading = alpha.total()?.checked_mul(2).ok_or(Error::Overflow)?;
    let weigh = |m: u64, h: &BigRational| BigRational::from_integer(BigInt::from(m)) * h;
    let mut correction = weigh(alpha.m_plus, &profile.h_max) + weigh(alpha.m_minus, &profile.h_min);
    for (&m, h) in alpha.m_hyp.iter().zip(&profile.h_saddle) {
        correction += weigh(m, h);
    }
    Ok(ExactAction::new(leading, correction))
}
