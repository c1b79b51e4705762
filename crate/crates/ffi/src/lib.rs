//! C interface to `bchforms`.
//!
//! Every function returns a [`BchStatus`]. Results come back through out
//! pointers: opaque handles released with their `_free` function, or
//! NUL-terminated JSON strings released with [`bch_string_free`]. After a
//! failure, [`bch_last_error`] describes it on the calling thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bchforms::api::{self, Mode, Outcome};
use bchforms::cyclotomic::code_params;
use bchforms::forms::RankType;
use bchforms::oracle::{enumerate_code_weights, EnumerationBudget, Route};
use bchforms::schemes::FamilyKind;
use bchforms::verify::{Suite, VerifyOptions};
use bchforms::weights::{code_enumerator_odd, ConstantClass, WeightEnumerator};
use bchforms::{Error, FieldContext, GfElem};
use serde_json::Value;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BchStatus {
    Ok = 0,
    /// The call ran, but a closed form and its oracle disagreed.
    Mismatch = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    OutOfRange = 4,
    Unsupported = 5,
    BudgetExceeded = 6,
    Arithmetic = 7,
    Panic = 8,
}

/// Work ceilings; pass NULL wherever one is accepted to use the defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BchBudget {
    pub max_codewords: u64,
    pub max_field_size: u64,
}

/// Opaque GF(q^m) handle.
pub struct BchField(FieldContext);

/// Opaque weight enumerator handle.
pub struct BchEnumerator(WeightEnumerator);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BchStatus {
    match e {
        Error::OutOfRange { .. }
        | Error::IndexOutOfTheoremRange { .. }
        | Error::ArityMismatch { .. } => BchStatus::OutOfRange,
        Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. } => BchStatus::BudgetExceeded,
        Error::NotPrime(_)
        | Error::NotPrimePower(_)
        | Error::ReducibleModulus
        | Error::InvalidModulus(_)
        | Error::InvalidArgument(_)
        | Error::ParityMismatch { .. } => BchStatus::InvalidArgument,
        Error::NonIntegralResult(_) | Error::NegativeEntry(_) | Error::Overflow(_) => {
            BchStatus::Arithmetic
        }
        _ => BchStatus::Unsupported,
    }
}

/// Runs `f`, recording any error or panic for [`bch_last_error`].
fn guard(f: impl FnOnce() -> Result<BchStatus, (BchStatus, String)>) -> BchStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == BchStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BchStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (BchStatus, String) {
    (status_of(&e), format!("{}: {e}", e.kind()))
}

fn null() -> (BchStatus, String) {
    (BchStatus::NullPointer, "null pointer argument".into())
}

fn budget_of(b: *const BchBudget) -> EnumerationBudget {
    if b.is_null() {
        EnumerationBudget::default()
    } else {
        let b = unsafe { *b };
        EnumerationBudget {
            max_codewords: b.max_codewords,
            max_field_size: b.max_field_size,
        }
    }
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Result<(), (BchStatus, String)> {
    let s = CString::new(serde_json::to_string(v).map_err(|e| (BchStatus::Panic, e.to_string()))?)
        .map_err(|e| (BchStatus::Panic, e.to_string()))?;
    *out = s.into_raw();
    Ok(())
}

/// The default budget.
#[no_mangle]
pub extern "C" fn bch_budget_default() -> BchBudget {
    let b = EnumerationBudget::default();
    BchBudget {
        max_codewords: b.max_codewords,
        max_field_size: b.max_field_size,
    }
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bch_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn bch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds GF(q^m) with its default moduli.
#[no_mangle]
pub unsafe extern "C" fn bch_field_new(q: u64, m: u32, out: *mut *mut BchField) -> BchStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let ctx = FieldContext::for_q(q, m).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BchField(ctx)));
        Ok(BchStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn bch_field_free(field: *mut BchField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of elements, `q^m`.
#[no_mangle]
pub unsafe extern "C" fn bch_field_order(field: *const BchField, out: *mut u32) -> BchStatus {
    guard(|| {
        let (Some(f), false) = (field.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = f.0.order();
        Ok(BchStatus::Ok)
    })
}

fn element(f: &BchField, x: u32) -> Result<GfElem, (BchStatus, String)> {
    if x >= f.0.order() {
        return Err((
            BchStatus::OutOfRange,
            format!("element index {x} outside the field"),
        ));
    }
    Ok(GfElem(x))
}

/// Product of two elements given by their coordinate indices.
#[no_mangle]
pub unsafe extern "C" fn bch_field_mul(
    field: *const BchField,
    a: u32,
    b: u32,
    out: *mut u32,
) -> BchStatus {
    guard(|| {
        let (Some(f), false) = (field.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = f.0.mul(element(f, a)?, element(f, b)?).0;
        Ok(BchStatus::Ok)
    })
}

/// Absolute trace to GF(q), as an index of GF(q).
#[no_mangle]
pub unsafe extern "C" fn bch_field_trace(
    field: *const BchField,
    x: u32,
    out: *mut u32,
) -> BchStatus {
    guard(|| {
        let (Some(f), false) = (field.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = f.0.trace(element(f, x)?);
        Ok(BchStatus::Ok)
    })
}

/// Closed-form weight enumerator of the code with index `i` (odd q).
#[no_mangle]
pub unsafe extern "C" fn bch_enumerator_closed(
    q: u64,
    m: u32,
    i: u32,
    out: *mut *mut BchEnumerator,
) -> BchStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = code_params(q, m, i).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BchEnumerator(
            code_enumerator_odd(&p).map_err(lib_err)?,
        )));
        Ok(BchStatus::Ok)
    })
}

/// Weight enumerator of the code with index `i` by exhaustive search.
#[no_mangle]
pub unsafe extern "C" fn bch_enumerator_oracle(
    q: u64,
    m: u32,
    i: u32,
    budget: *const BchBudget,
    out: *mut *mut BchEnumerator,
) -> BchStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = code_params(q, m, i).map_err(lib_err)?;
        let ctx = FieldContext::for_q(q, m).map_err(lib_err)?;
        let e =
            enumerate_code_weights(&ctx, &p, Route::Trace, &budget_of(budget)).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BchEnumerator(e)));
        Ok(BchStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn bch_enumerator_free(e: *mut BchEnumerator) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Whether two enumerators are identical; writes 1 or 0.
#[no_mangle]
pub unsafe extern "C" fn bch_enumerator_equal(
    a: *const BchEnumerator,
    b: *const BchEnumerator,
    out: *mut i32,
) -> BchStatus {
    guard(|| {
        let (Some(a), Some(b), false) = (a.as_ref(), b.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = (a.0 == b.0) as i32;
        Ok(BchStatus::Ok)
    })
}

/// Smallest nonzero weight; writes 0 for the zero code.
#[no_mangle]
pub unsafe extern "C" fn bch_enumerator_min_distance(
    e: *const BchEnumerator,
    out: *mut u64,
) -> BchStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = e.0.min_distance().unwrap_or(0);
        Ok(BchStatus::Ok)
    })
}

/// `{"length": n, "counts": {"w": "A_w", ...}}` with decimal-string counts.
#[no_mangle]
pub unsafe extern "C" fn bch_enumerator_json(
    e: *const BchEnumerator,
    out: *mut *mut c_char,
) -> BchStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let v = serde_json::to_value(&e.0).map_err(|x| (BchStatus::Panic, x.to_string()))?;
        write_json(out, &v)?;
        Ok(BchStatus::Ok)
    })
}

fn field<T: serde::de::DeserializeOwned>(req: &Value, key: &str) -> Result<T, (BchStatus, String)> {
    let v = req
        .get(key)
        .ok_or_else(|| (BchStatus::InvalidArgument, format!("missing field {key:?}")))?;
    serde_json::from_value(v.clone())
        .map_err(|e| (BchStatus::InvalidArgument, format!("field {key:?}: {e}")))
}

fn opt_field<T: serde::de::DeserializeOwned>(
    req: &Value,
    key: &str,
) -> Result<Option<T>, (BchStatus, String)> {
    match req.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => field(req, key).map(Some),
    }
}

fn mode(req: &Value) -> Result<Mode, (BchStatus, String)> {
    Mode::parse(&opt_field::<String>(req, "mode")?.unwrap_or_else(|| "both".into()))
        .map_err(lib_err)
}

fn run_command(req: &Value, budget: &EnumerationBudget) -> Result<Outcome, (BchStatus, String)> {
    let cmd: String = field(req, "command")?;
    let r = match cmd.as_str() {
        "params" => api::params(field(req, "q")?, field(req, "m")?, field(req, "i")?),
        "coset-leaders" => api::coset_leaders(field(req, "q")?, field(req, "m")?),
        "genpoly" => api::genpoly(field(req, "q")?, field(req, "m")?, field(req, "delta")?),
        "enumerator" => api::enumerator(
            field(req, "q")?,
            field(req, "m")?,
            field(req, "i")?,
            mode(req)?,
            budget,
        ),
        "classify-form" => {
            let lambdas: Vec<u32> = field(req, "lambdas")?;
            api::classify_form(
                field(req, "q")?,
                field(req, "m")?,
                field(req, "i")?,
                &lambdas,
                budget,
            )
        }
        "inner-dist" => {
            let kind = FamilyKind::parse(&field::<String>(req, "family")?).map_err(lib_err)?;
            api::inner_dist(
                kind,
                field(req, "q")?,
                field(req, "m")?,
                field(req, "i")?,
                mode(req)?,
                budget,
            )
        }
        "dg-bound" => api::dg_bound(field(req, "n")?, field(req, "d")?, field(req, "q")?),
        "design-check" => api::design_check(
            field(req, "q")?,
            field(req, "m")?,
            field(req, "i")?,
            opt_field(req, "t")?.unwrap_or(2),
            opt_field(req, "corrupt")?.unwrap_or(false),
            budget,
        ),
        "appendix-table" => {
            let class = ConstantClass::parse(
                &opt_field::<String>(req, "class")?.unwrap_or_else(|| "zero".into()),
            )
            .map_err(lib_err)?;
            let rt = RankType::new(field(req, "rank")?, field(req, "type")?);
            api::appendix_table(
                field(req, "q")?,
                field(req, "m")?,
                rt,
                class,
                mode(req)?,
                budget,
            )
        }
        "verify" => {
            let suite = Suite::parse(&field::<String>(req, "suite")?).map_err(lib_err)?;
            let opts = VerifyOptions {
                q: opt_field(req, "q")?,
                m: opt_field(req, "m")?,
                i: opt_field(req, "i")?,
                max_m: opt_field(req, "max_m")?,
                budget: *budget,
            };
            Ok(api::run_verify(suite, &opts))
        }
        other => {
            return Err((
                BchStatus::InvalidArgument,
                format!("unknown command {other:?}"),
            ))
        }
    };
    r.map_err(lib_err)
}

/// Runs one command described as JSON, e.g.
/// `{"command": "enumerator", "q": 3, "m": 3, "i": 1, "mode": "both"}`,
/// and writes the same payload the command-line tool prints. Returns
/// `Mismatch` (with the payload still written) when a comparison failed.
#[no_mangle]
pub unsafe extern "C" fn bch_command_json(
    request: *const c_char,
    budget: *const BchBudget,
    out: *mut *mut c_char,
) -> BchStatus {
    guard(|| {
        if request.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let text = CStr::from_ptr(request)
            .to_str()
            .map_err(|e| (BchStatus::InvalidArgument, e.to_string()))?;
        let req: Value = serde_json::from_str(text)
            .map_err(|e| (BchStatus::InvalidArgument, format!("request: {e}")))?;
        let outcome = run_command(&req, &budget_of(budget))?;
        write_json(out, &outcome.payload)?;
        if outcome.ok {
            Ok(BchStatus::Ok)
        } else {
            set_error("comparison failed");
            Ok(BchStatus::Mismatch)
        }
    })
}
