//! ECH index, Fredholm index, relative index and absolute grading.
//!
//! Relative classes in `H_2(DE, alpha)` are `Z_alpha + d[Sigma]`, where
//! `Z_alpha` is the union of fiber disks over the critical points and `d`
//! is an arbitrary integer. With `e < 0` the Euler number and
//! `chi = 2 - 2g`:
//!
//! ```text
//! I(Z_alpha + d[Sigma]) = M + m+ - m- + 2dM + d^2 e + d e + d chi
//! ```
//!
//! Every formula here is evaluated with checked `i128` intermediates.

use serde::{Deserialize, Serialize};

use crate::arith::{self, add, mul, sub};
use crate::bundle::{gamma_class, is_ech_generator, OrbitLabel, OrbitSet, PrequantizationBundle};
use crate::error::{Error, Result};

/// Coefficient of `[Sigma]` in a relative class `Z_alpha + d[Sigma]`.
/// Negative values are legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelativeClassOffset {
    pub d: i64,
}

impl RelativeClassOffset {
    pub fn new(d: i64) -> Self {
        Self { d }
    }
}

/// End data of a holomorphic curve needed by the Fredholm index.
///
/// `M = 0` (no ends at all) is accepted by [`fredholm_index`] since the
/// formula is total, but such input lies outside the setting the formula was
/// derived for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveEndData {
    /// Genus of the curve.
    pub genus_c: u64,
    /// Number of ends at hyperbolic orbits.
    pub h_ends: u64,
    /// Number of ends at covers of `e+`.
    pub eplus_ends: u64,
    /// Total multiplicity of the positive orbit set.
    pub total: u64,
    pub d: i64,
}

impl CurveEndData {
    pub fn new(genus_c: u64, h_ends: u64, eplus_ends: u64, total: u64, d: i64) -> Result<Self> {
        let c = Self {
            genus_c,
            h_ends,
            eplus_ends,
            total,
            d,
        };
        c.validate()?;
        Ok(c)
    }

    /// Every end carries multiplicity at least one.
    pub fn validate(&self) -> Result<()> {
        let ends = self
            .h_ends
            .checked_add(self.eplus_ends)
            .ok_or(Error::Overflow)?;
        if ends > self.total {
            return Err(Error::CurveData(format!(
                "{} ends but total multiplicity {}",
                ends, self.total
            )));
        }
        Ok(())
    }
}

fn m(x: u64) -> i128 {
    i128::from(x)
}

pub fn ech_index(
    bundle: &PrequantizationBundle,
    alpha: &OrbitSet,
    offset: RelativeClassOffset,
) -> Result<i64> {
    alpha.check_genus(bundle)?;
    let big_m = m(alpha.total()?);
    let d = i128::from(offset.d);
    let e = i128::from(bundle.euler());
    let chi = i128::from(bundle.chi());
    let fiber_part = sub(add(big_m, m(alpha.m_plus))?, m(alpha.m_minus))?;
    let value = arith::sum(&[
        fiber_part,
        mul(mul(2, d)?, big_m)?,
        mul(mul(d, d)?, e)?,
        mul(d, e)?,
        mul(d, chi)?,
    ])?;
    arith::to_i64(value)
}

/// Shifts the index of `Z_alpha` to `Z_alpha + d[Sigma]` via
/// `I(Z + d Sigma) = I(Z) + 2d (Z . Sigma) + I(d Sigma)` with
/// `Z_alpha . Sigma = M` and `I(d Sigma) = d chi + d e + d^2 e`.
pub fn index_ambiguity(
    bundle: &PrequantizationBundle,
    alpha: &OrbitSet,
    z_alpha_index: i64,
    d: i64,
) -> Result<i64> {
    alpha.check_genus(bundle)?;
    let big_m = m(alpha.total()?);
    let d = i128::from(d);
    let e = i128::from(bundle.euler());
    let chi = i128::from(bundle.chi());
    let self_term = arith::sum(&[mul(d, chi)?, mul(d, e)?, mul(mul(d, d)?, e)?])?;
    let value = arith::sum(&[
        i128::from(z_alpha_index),
        mul(mul(2, d)?, big_m)?,
        self_term,
    ])?;
    arith::to_i64(value)
}

pub fn fredholm_index(bundle: &PrequantizationBundle, c: &CurveEndData) -> Result<i64> {
    c.validate()?;
    let d = i128::from(c.d);
    let e = i128::from(bundle.euler());
    let chi = i128::from(bundle.chi());
    let value = arith::sum(&[
        mul(2, m(c.genus_c))?,
        -2,
        m(c.h_ends),
        mul(2, m(c.eplus_ends))?,
        mul(2, m(c.total))?,
        mul(mul(2, d)?, chi)?,
        mul(mul(2, d)?, e)?,
    ])?;
    arith::to_i64(value)
}

/// `2I(C) - ind(C)` from its own closed form
/// `2m+ - 2m- + 4dM - 2d^2|e| + 2 - 2g(C) - h(C) - 2e+(C)`.
///
/// Requires `c.total = M(alpha)`, `c.d = offset.d` and every hyperbolic end
/// simple (`c.h_ends` equals the hyperbolic multiplicity of `alpha`).
pub fn two_i_minus_ind(
    bundle: &PrequantizationBundle,
    alpha: &OrbitSet,
    offset: RelativeClassOffset,
    c: &CurveEndData,
) -> Result<i64> {
    alpha.check_genus(bundle)?;
    c.validate()?;
    let total = alpha.total()?;
    if c.total != total {
        return Err(Error::Precondition(format!(
            "curve total multiplicity {} != orbit set M {}",
            c.total, total
        )));
    }
    if c.d != offset.d {
        return Err(Error::Precondition(format!(
            "curve degree {} != class offset {}",
            c.d, offset.d
        )));
    }
    let hyp = alpha.hyperbolic_total()?;
    if c.h_ends != hyp {
        return Err(Error::Precondition(format!(
            "hyperbolic ends {} != hyperbolic multiplicity {}",
            c.h_ends, hyp
        )));
    }
    let d = i128::from(offset.d);
    let abs_e = i128::from(bundle.abs_e());
    let value = arith::sum(&[
        mul(2, m(alpha.m_plus))?,
        -mul(2, m(alpha.m_minus))?,
        mul(mul(4, d)?, m(total))?,
        -mul(mul(2, mul(d, d)?)?, abs_e)?,
        2,
        -mul(2, m(c.genus_c))?,
        -m(c.h_ends),
        -mul(2, m(c.eplus_ends))?,
    ])?;
    arith::to_i64(value)
}

/// `I(alpha, beta) = I(Z_alpha + d_alpha [Sigma]) - I(Z_beta)` with
/// `d_alpha = (M_alpha - M_beta) / |e|`.
pub fn relative_index(
    bundle: &PrequantizationBundle,
    alpha: &OrbitSet,
    beta: &OrbitSet,
) -> Result<i64> {
    alpha.check_genus(bundle)?;
    beta.check_genus(bundle)?;
    let ga = gamma_class(bundle, alpha)?;
    let gb = gamma_class(bundle, beta)?;
    if ga != gb {
        return Err(Error::ResidueMismatch {
            alpha: ga.0,
            beta: gb.0,
            abs_e: bundle.abs_e(),
        });
    }
    let diff = sub(m(alpha.total()?), m(beta.total()?))?;
    let d_alpha = arith::to_i64(diff / i128::from(bundle.abs_e()))?;
    let ia = ech_index(bundle, alpha, RelativeClassOffset::new(d_alpha))?;
    let ib = ech_index(bundle, beta, RelativeClassOffset::new(0))?;
    arith::to_i64(sub(i128::from(ia), i128::from(ib))?)
}

/// Absolute grading `gr(alpha) = I(alpha, ∅)` of a generator in the null
/// class, in closed form `d^2|e| + m+ - m- + d chi` with `d = M/|e|`.
///
/// The parity of the result equals the number of hyperbolic orbits in
/// `alpha`.
pub fn grading(bundle: &PrequantizationBundle, alpha: &OrbitSet) -> Result<i64> {
    alpha.check_genus(bundle)?;
    if !is_ech_generator(alpha) {
        return Err(Error::NotGenerator);
    }
    let gamma = gamma_class(bundle, alpha)?;
    if gamma.0 != 0 {
        return Err(Error::NonzeroClass(gamma.0));
    }
    let abs_e = i128::from(bundle.abs_e());
    let d = m(alpha.total()?) / abs_e;
    let value = arith::sum(&[
        mul(mul(d, d)?, abs_e)?,
        m(alpha.m_plus),
        -m(alpha.m_minus),
        mul(d, i128::from(bundle.chi()))?,
    ])?;
    arith::to_i64(value)
}

/// Orbit types that determine ECH partition conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    LPositiveElliptic,
    LNegativeElliptic,
    PositiveHyperbolic,
}

impl OrbitLabel {
    /// `e+` is L-positive, `e-` is L-negative, every `h_i` is positive
    /// hyperbolic.
    pub fn kind(self) -> OrbitKind {
        match self {
            OrbitLabel::EPlus => OrbitKind::LPositiveElliptic,
            OrbitLabel::EMinus => OrbitKind::LNegativeElliptic,
            OrbitLabel::Hyperbolic(_) => OrbitKind::PositiveHyperbolic,
        }
    }
}

/// Partition of the multiplicity `m` attached to an orbit of the given kind.
pub fn partition_of(kind: OrbitKind, m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    Ok(match kind {
        OrbitKind::LNegativeElliptic => vec![m],
        OrbitKind::LPositiveElliptic | OrbitKind::PositiveHyperbolic => {
            let len = usize::try_from(m).map_err(|_| Error::Overflow)?;
            vec![1; len]
        }
    })
}
