//! C ABI over `ranktower`.
//!
//! Plans and certificates are opaque handles released with their `_free`
//! function. Strings returned through `char **` are owned by the caller and
//! released with `rt_string_free`. Every fallible call returns an
//! `RtStatus`; on failure `rt_last_error` describes the error on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ranktower::bounds::{build_certificate, AbelianVarietyDesc, BoundCertificate, SelmerInput};
use ranktower::cli::{plan_request, ConstructArgs};
use ranktower::cyclotomic;
use ranktower::error::Error;
use ranktower::fixtures::{fixture, FixtureId};
use ranktower::report;
use ranktower::reproduce::{reproduce, verify_factorization};
use ranktower::tower::{build_tower_plan, Provenance, TowerPlan};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    ValidationFailed = 5,
    EqualPrimes = 6,
    RamifiedPrime = 7,
    NotTotallySplit = 8,
    DiscriminantDivisible = 9,
    SearchExhausted = 10,
    TorsionHypothesisUnmet = 11,
    PlanNotInflated = 12,
    Arithmetic = 13,
    Panic = 99,
}

impl From<&Error> for RtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => RtStatus::Parse,
            Error::InvalidInput(_) => RtStatus::InvalidInput,
            Error::ValidationFailed(_) => RtStatus::ValidationFailed,
            Error::EqualPrimes(_) => RtStatus::EqualPrimes,
            Error::RamifiedPrime { .. } => RtStatus::RamifiedPrime,
            Error::NotTotallySplit { .. } => RtStatus::NotTotallySplit,
            Error::DiscriminantDivisible { .. } => RtStatus::DiscriminantDivisible,
            Error::SearchExhausted { .. } => RtStatus::SearchExhausted,
            Error::TorsionHypothesisUnmet => RtStatus::TorsionHypothesisUnmet,
            Error::PlanNotInflated { .. } => RtStatus::PlanNotInflated,
            Error::NotCoprime { .. }
            | Error::ModulusMismatch { .. }
            | Error::ZeroPolynomial
            | Error::NotSquarefree
            | Error::InvalidChain => RtStatus::Arithmetic,
        }
    }
}

/// Parameters for `rt_plan_new`. Zero means "default" for `n`, `d`, `m`,
/// `conductor` (p) and `s0` (no fine Selmer data); `nilpotent_s = 0`
/// selects the abelian Γ = Z_p^d.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RtPlanParams {
    pub ell: u64,
    pub p: u64,
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub nilpotent_s: u64,
    pub conductor: u64,
    /// Defining polynomial of F over Q(ζ_c) when m > 2, or NULL.
    pub poly: *const c_char,
    /// Class number of F and number of primes of F above p (m > 2 with
    /// `poly`; 0 = unknown, which fails the base-field checklist).
    pub class_number: u64,
    pub primes_above_p: u64,
    pub s0: u64,
    pub apply_reserve: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RtSplitting {
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

/// Opaque tower plan.
pub struct RtPlan {
    plan: TowerPlan,
}

/// Opaque bound certificate.
pub struct RtCertificate {
    certificate: BoundCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: RtStatus, msg: &str) -> RtStatus {
    set_last_error(msg);
    status
}

fn from_error(e: &Error) -> RtStatus {
    fail(RtStatus::from(e), &format!("{}: {e}", e.kind()))
}

/// Runs `body`, turning panics into `RtStatus::Panic`.
fn guard(body: impl FnOnce() -> RtStatus) -> RtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == RtStatus::Ok {
                set_last_error("");
            }
            status
        }
        Err(_) => fail(RtStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RtStatus> {
    if p.is_null() {
        return Err(fail(RtStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(RtStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> RtStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            RtStatus::Ok
        }
        Err(_) => fail(RtStatus::Panic, "output contained NUL"),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(RtStatus::NullPointer, concat!("null pointer: ", stringify!($p)));
        })+
    };
}

/// Human-readable description of the last failure on this thread. The
/// pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn rt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds and validates a tower plan.
///
/// # Safety
/// `params` and `out` must be valid pointers; `params->poly` must be NULL
/// or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rt_plan_new(params: *const RtPlanParams, out: *mut *mut RtPlan) -> RtStatus {
    guard(|| {
        non_null!(params, out);
        let p = &*params;
        let poly = if p.poly.is_null() {
            None
        } else {
            match read_str(p.poly) {
                Ok(s) => Some(s.to_string()),
                Err(status) => return status,
            }
        };
        let args = ConstructArgs {
            ell: p.ell,
            p: p.p,
            n: if p.n == 0 { 1 } else { p.n },
            d: if p.d == 0 { 1 } else { p.d },
            m: if p.m == 0 { 2 } else { p.m },
            family: if p.nilpotent_s == 0 { "abelian".into() } else { format!("gamma{}", p.nilpotent_s) },
            conductor: (p.conductor != 0).then_some(p.conductor),
            poly,
            class_number: (p.class_number != 0).then_some(p.class_number),
            primes_above_p: (p.primes_above_p != 0).then_some(p.primes_above_p),
            primes: None,
            s0: (p.s0 != 0).then_some(p.s0),
            dim_a: 1,
            variety: "A".into(),
            apply_reserve: p.apply_reserve,
        };
        match plan_request(&args).and_then(|req| build_tower_plan(&req)) {
            Ok(plan) => {
                *out = Box::into_raw(Box::new(RtPlan { plan }));
                RtStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Plan of an embedded worked example ("example1", "example2", "example3").
///
/// # Safety
/// `example` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_plan_from_example(example: *const c_char, out: *mut *mut RtPlan) -> RtStatus {
    guard(|| {
        non_null!(out);
        let id: FixtureId = match read_str(example).map(str::parse) {
            Ok(Ok(id)) => id,
            Ok(Err(e)) => return from_error(&e),
            Err(status) => return status,
        };
        match build_tower_plan(&fixture(id).plan_request()) {
            Ok(plan) => {
                *out = Box::into_raw(Box::new(RtPlan { plan }));
                RtStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `plan` must be NULL or a handle from `rt_plan_new` / `rt_plan_from_example`.
#[no_mangle]
pub unsafe extern "C" fn rt_plan_free(plan: *mut RtPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Number of primes selected for α.
///
/// # Safety
/// `plan` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rt_plan_prime_count(plan: *const RtPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.plan.selected_primes.len())
}

/// α as a decimal string.
///
/// # Safety
/// `plan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_plan_alpha(plan: *const RtPlan, out: *mut *mut c_char) -> RtStatus {
    guard(|| {
        non_null!(plan, out);
        write_string(out, (*plan).plan.alpha.to_string())
    })
}

/// t as a decimal string.
///
/// # Safety
/// `plan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_plan_t(plan: *const RtPlan, out: *mut *mut c_char) -> RtStatus {
    guard(|| {
        non_null!(plan, out);
        write_string(out, (*plan).plan.t.to_string())
    })
}

/// The plan as a versioned JSON document.
///
/// # Safety
/// `plan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_plan_to_json(plan: *const RtPlan, out: *mut *mut c_char) -> RtStatus {
    guard(|| {
        non_null!(plan, out);
        write_string(out, report::to_json("plan", &(*plan).plan))
    })
}

/// Certificate for layers 0..=n_max. Fine Selmer columns are filled when
/// the plan declares s0; `dim_a` is the dimension of the abelian variety.
///
/// # Safety
/// `plan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_certificate_new(
    plan: *const RtPlan,
    dim_a: u64,
    n_max: u32,
    out: *mut *mut RtCertificate,
) -> RtStatus {
    guard(|| {
        non_null!(plan, out);
        let plan = &(*plan).plan;
        let variety = AbelianVarietyDesc {
            label: "A".into(),
            dim_a,
            torsion_nontrivial_at_ell: true,
            bad_primes: Default::default(),
            provenance: Provenance::Asserted,
        };
        let selmer = plan.selmer.map(|s| SelmerInput { variety: &variety, s0: s.s0 });
        match build_certificate(plan, selmer, n_max) {
            Ok(certificate) => {
                *out = Box::into_raw(Box::new(RtCertificate { certificate }));
                RtStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `cert` must be NULL or a handle from `rt_certificate_new`.
#[no_mangle]
pub unsafe extern "C" fn rt_certificate_free(cert: *mut RtCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Number of rows (n_max + 1).
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rt_certificate_row_count(cert: *const RtCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.certificate.rows.len())
}

/// Class-group ℓ-rank lower bound at row `n`, as a decimal string.
///
/// # Safety
/// `cert` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_certificate_class_rank(
    cert: *const RtCertificate,
    n: u32,
    out: *mut *mut c_char,
) -> RtStatus {
    guard(|| {
        non_null!(cert, out);
        let cert = &*cert;
        match cert.certificate.rows.get(n as usize) {
            Some(row) => write_string(out, row.class_rank_lower.to_string()),
            None => fail(RtStatus::InvalidInput, "row index out of range"),
        }
    })
}

/// # Safety
/// `cert` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_certificate_to_json(cert: *const RtCertificate, out: *mut *mut c_char) -> RtStatus {
    guard(|| {
        non_null!(cert, out);
        write_string(out, report::to_json("certificate", &(*cert).certificate))
    })
}

/// Decomposition of q in Q(ζ_m).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_split(q: u64, m: u64, out: *mut RtSplitting) -> RtStatus {
    guard(|| {
        non_null!(out);
        match cyclotomic::splitting_data(q, m) {
            Ok(s) => {
                *out = RtSplitting { e: s.e, f: s.f, g: s.g };
                RtStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Multiplies `count` factors in Q(ζ_conductor). `*passed` is set to 1
/// when the product is exactly `prime`; `*out_json` receives the report.
///
/// # Safety
/// `factors` must point to `count` NUL-terminated strings; `passed` and
/// `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rt_verify_factorization(
    conductor: u64,
    prime: u64,
    factors: *const *const c_char,
    count: usize,
    passed: *mut i32,
    out_json: *mut *mut c_char,
) -> RtStatus {
    guard(|| {
        non_null!(factors, passed, out_json);
        let mut texts = Vec::with_capacity(count);
        for i in 0..count {
            match read_str(*factors.add(i)) {
                Ok(s) => texts.push(s),
                Err(status) => return status,
            }
        }
        match verify_factorization(conductor, prime, &texts) {
            Ok(r) => {
                *passed = i32::from(r.passed);
                write_string(out_json, report::to_json("factorization", &r))
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Reproduces a worked example. `*passed` is 1 when no hard check failed.
///
/// # Safety
/// `example` must be a NUL-terminated string; `passed` and `out_json`
/// must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rt_reproduce(
    example: *const c_char,
    n_max: u32,
    passed: *mut i32,
    out_json: *mut *mut c_char,
) -> RtStatus {
    guard(|| {
        non_null!(passed, out_json);
        let id: FixtureId = match read_str(example).map(str::parse) {
            Ok(Ok(id)) => id,
            Ok(Err(e)) => return from_error(&e),
            Err(status) => return status,
        };
        match reproduce(id, n_max) {
            Ok(r) => {
                *passed = i32::from(r.passed());
                write_string(out_json, report::to_json("reproduction", &r))
            }
            Err(e) => from_error(&e),
        }
    })
}
