//! C ABI over `prequant-ech`.
//!
//! Every function returns an [`EchStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be read with
//! [`ech_last_error_message`]. Handles are opaque and must be released with
//! their matching `*_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prequant_ech as ech;
use prequant_ech::{Error, GradedGenerator, OrbitSet, PrequantizationBundle};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EchStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Overflow = 3,
    Precondition = 4,
    Parse = 5,
    OutOfRange = 6,
    Internal = 7,
    Panic = 8,
}

impl From<&Error> for EchStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Overflow => EchStatus::Overflow,
            Error::Parse(_) => EchStatus::Parse,
            Error::Inconsistency(_) => EchStatus::Internal,
            Error::Precondition(_)
            | Error::ResidueMismatch { .. }
            | Error::NonzeroClass(_)
            | Error::NotGenerator
            | Error::TriangularIndex { .. }
            | Error::TorusIndexZero
            | Error::LengthMismatch { .. } => EchStatus::Precondition,
            _ => EchStatus::InvalidArgument,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ech_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

struct Fail(EchStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EchStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(EchStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EchStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EchStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside prequant-ech");
            EchStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(EchStatus::Parse, format!("{what} is not UTF-8")))
}

pub struct EchBundle(PrequantizationBundle);

pub struct EchOrbitSet(OrbitSet);

pub struct EchGeneratorList(Vec<GradedGenerator>);

#[no_mangle]
pub unsafe extern "C" fn ech_bundle_new(genus: u32, euler: i64, out: *mut *mut EchBundle) -> EchStatus {
    guard(|| {
        let b = PrequantizationBundle::new(genus, euler)?;
        write(out, Box::into_raw(Box::new(EchBundle(b))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ech_bundle_free(bundle: *mut EchBundle) {
    if !bundle.is_null() {
        drop(Box::from_raw(bundle));
    }
}

/// Builds `e+^m_plus h_1^m_hyp[0] ... e-^m_minus`. `m_hyp` may be NULL when
/// `n_hyp` is 0.
#[no_mangle]
pub unsafe extern "C" fn ech_orbit_set_new(
    m_plus: u64,
    m_hyp: *const u64,
    n_hyp: usize,
    m_minus: u64,
    out: *mut *mut EchOrbitSet,
) -> EchStatus {
    guard(|| {
        let hyp = if n_hyp == 0 {
            Vec::new()
        } else {
            if m_hyp.is_null() {
                return Err(null("m_hyp"));
            }
            std::slice::from_raw_parts(m_hyp, n_hyp).to_vec()
        };
        let set = OrbitSet::new(m_plus, hyp, m_minus);
        write(out, Box::into_raw(Box::new(EchOrbitSet(set))), "out")
    })
}

/// Parses text such as `"e+^2 h1 e-^3"` for a base of the given genus.
#[no_mangle]
pub unsafe extern "C" fn ech_orbit_set_parse(
    text: *const c_char,
    genus: u32,
    out: *mut *mut EchOrbitSet,
) -> EchStatus {
    guard(|| {
        let set = OrbitSet::parse(c_str(text, "text")?, genus)?;
        write(out, Box::into_raw(Box::new(EchOrbitSet(set))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ech_orbit_set_free(set: *mut EchOrbitSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ech_orbit_set_total(set: *const EchOrbitSet, out: *mut u64) -> EchStatus {
    guard(|| {
        let total = deref(set, "set")?.0.total()?;
        write(out, total, "out")
    })
}

/// Writes the text form plus a trailing NUL into `buf`. `required` receives
/// the buffer size needed, NUL included; a short buffer gives `OutOfRange`.
#[no_mangle]
pub unsafe extern "C" fn ech_orbit_set_to_string(
    set: *const EchOrbitSet,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> EchStatus {
    guard(|| {
        let text = deref(set, "set")?.0.to_string();
        let need = text.len() + 1;
        write(required, need, "required")?;
        if len < need {
            return Err(Fail(EchStatus::OutOfRange, format!("buffer needs {need} bytes")));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        buf.add(text.len()).write(0);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ech_index(
    bundle: *const EchBundle,
    alpha: *const EchOrbitSet,
    d: i64,
    out: *mut i64,
) -> EchStatus {
    guard(|| {
        let v = ech::ech_index(&deref(bundle, "bundle")?.0, &deref(alpha, "alpha")?.0, ech::RelativeClassOffset::new(d))?;
        write(out, v, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ech_relative_index(
    bundle: *const EchBundle,
    alpha: *const EchOrbitSet,
    beta: *const EchOrbitSet,
    out: *mut i64,
) -> EchStatus {
    guard(|| {
        let v = ech::relative_index(&deref(bundle, "bundle")?.0, &deref(alpha, "alpha")?.0, &deref(beta, "beta")?.0)?;
        write(out, v, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ech_grading(
    bundle: *const EchBundle,
    alpha: *const EchOrbitSet,
    out: *mut i64,
) -> EchStatus {
    guard(|| {
        let v = ech::grading(&deref(bundle, "bundle")?.0, &deref(alpha, "alpha")?.0)?;
        write(out, v, "out")
    })
}

/// Null-class generators of the given (even, nonnegative) grading, sorted by
/// action.
#[no_mangle]
pub unsafe extern "C" fn ech_generators_by_grading(
    bundle: *const EchBundle,
    grading: i64,
    out: *mut *mut EchGeneratorList,
) -> EchStatus {
    guard(|| {
        let gens = ech::enumerate_by_grading(&deref(bundle, "bundle")?.0, grading)?;
        write(out, Box::into_raw(Box::new(EchGeneratorList(gens))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ech_generator_list_len(list: *const EchGeneratorList, out: *mut usize) -> EchStatus {
    guard(|| write(out, deref(list, "list")?.0.len(), "out"))
}

/// Generator summary. The action is `(action_leading, correction)` with the
/// correction given as a reduced fraction `num/den`, when it fits in i64.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchGeneratorInfo {
    pub d: u64,
    pub grading: i64,
    pub m_plus: u64,
    pub m_minus: u64,
    pub hyperbolic_total: u64,
    pub action_leading: u64,
    pub action_correction_num: i64,
    pub action_correction_den: i64,
}

#[no_mangle]
pub unsafe extern "C" fn ech_generator_list_get(
    list: *const EchGeneratorList,
    i: usize,
    info: *mut EchGeneratorInfo,
    orbit_set: *mut *mut EchOrbitSet,
) -> EchStatus {
    guard(|| {
        let gens = &deref(list, "list")?.0;
        let g = gens
            .get(i)
            .ok_or_else(|| Fail(EchStatus::OutOfRange, format!("index {i} >= {}", gens.len())))?;
        let corr = &g.action.correction;
        let to_i64 = |x: &num_bigint::BigInt| {
            i64::try_from(x).map_err(|_| Fail(EchStatus::Overflow, "action correction exceeds i64".into()))
        };
        let summary = EchGeneratorInfo {
            d: g.d,
            grading: g.grading,
            m_plus: g.orbit_set.m_plus,
            m_minus: g.orbit_set.m_minus,
            hyperbolic_total: g.orbit_set.hyperbolic_total()?,
            action_leading: g.action.leading,
            action_correction_num: to_i64(corr.numer())?,
            action_correction_den: to_i64(corr.denom())?,
        };
        if !info.is_null() {
            info.write(summary);
        }
        if !orbit_set.is_null() {
            orbit_set.write(Box::into_raw(Box::new(EchOrbitSet(g.orbit_set.clone()))));
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ech_generator_list_free(list: *mut EchGeneratorList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ech_capacity_sphere(abs_e: u64, k: u64, out: *mut u64) -> EchStatus {
    guard(|| write(out, ech::capacity_sphere(abs_e, k)?, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn ech_capacity_sphere_via_u(abs_e: u64, k: u64, out: *mut u64) -> EchStatus {
    guard(|| write(out, ech::capacity_sphere_via_u(abs_e, k)?, "out"))
}

/// One U step on the sphere. `*is_empty` is set when the image is the empty
/// set, in which case the pair outputs are zero.
#[no_mangle]
pub unsafe extern "C" fn ech_sphere_u_step(
    abs_e: u64,
    m_minus: u64,
    m_plus: u64,
    out_m_minus: *mut u64,
    out_m_plus: *mut u64,
    is_empty: *mut bool,
) -> EchStatus {
    guard(|| {
        let (a, b, empty) = match ech::sphere_u_step(abs_e, ech::SpherePair::new(m_minus, m_plus))? {
            ech::UImage::Pair(p) => (p.m_minus, p.m_plus, false),
            ech::UImage::Empty => (0, 0, true),
        };
        write(out_m_minus, a, "out_m_minus")?;
        write(out_m_plus, b, "out_m_plus")?;
        write(is_empty, empty, "is_empty")
    })
}

/// `(d, m+, m1, m2, m-)` solving the torus system.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchWitness {
    pub d: u64,
    pub m_plus: u64,
    pub m_1: u64,
    pub m_2: u64,
    pub m_minus: u64,
}

impl From<ech::Witness> for EchWitness {
    fn from(w: ech::Witness) -> Self {
        EchWitness {
            d: w.d,
            m_plus: w.m_plus,
            m_1: w.m_1,
            m_2: w.m_2,
            m_minus: w.m_minus,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchCapacityResult {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    pub witness_lower: EchWitness,
    pub witness_upper: EchWitness,
}

#[no_mangle]
pub unsafe extern "C" fn ech_capacity_torus_bounds(abs_e: u64, k: u64, out: *mut EchCapacityResult) -> EchStatus {
    guard(|| {
        let r = ech::capacity_torus_bounds(abs_e, k)?;
        let r = EchCapacityResult {
            lower: r.lower,
            upper: r.upper,
            exact: r.exact,
            witness_lower: r.witness_lower.into(),
            witness_upper: r.witness_upper.into(),
        };
        write(out, r, "out")
    })
}

/// Exact torus capacity for `|e| = 1`; `Precondition` when `k` is triangular.
#[no_mangle]
pub unsafe extern "C" fn ech_capacity_torus_closed_form(k: u64, out: *mut u64) -> EchStatus {
    guard(|| write(out, ech::capacity_torus_closed_form(k)?, "out"))
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchGromovReport {
    pub genus: u32,
    pub euler: i64,
    pub paper_bound: u64,
    pub has_capacity_c1: bool,
    /// Zero when `has_capacity_c1` is false.
    pub capacity_c1: u64,
    pub best_bound: u64,
    pub genus_in_scope: bool,
}

#[no_mangle]
pub unsafe extern "C" fn ech_gromov_report(bundle: *const EchBundle, out: *mut EchGromovReport) -> EchStatus {
    guard(|| {
        let r = ech::gromov_width_report(&deref(bundle, "bundle")?.0)?;
        let r = EchGromovReport {
            genus: r.genus,
            euler: r.euler,
            paper_bound: r.paper_bound,
            has_capacity_c1: r.capacity_c1.is_some(),
            capacity_c1: r.capacity_c1.unwrap_or(0),
            best_bound: r.best_bound,
            genus_in_scope: r.genus_in_scope,
        };
        write(out, r, "out")
    })
}
