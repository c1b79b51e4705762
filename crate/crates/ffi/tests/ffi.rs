use std::ffi::{CStr, CString};
use std::ptr;

use bchforms_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(bch_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn command(req: &str) -> (BchStatus, serde_json::Value) {
    let req = CString::new(req).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { bch_command_json(req.as_ptr(), ptr::null(), &mut out) };
    if out.is_null() {
        return (status, serde_json::Value::Null);
    }
    let v = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    unsafe { bch_string_free(out) };
    (status, v)
}

#[test]
fn field_handle_round_trip() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { bch_field_new(3, 3, &mut f) }, BchStatus::Ok);
    let mut order = 0;
    assert_eq!(unsafe { bch_field_order(f, &mut order) }, BchStatus::Ok);
    assert_eq!(order, 27);
    let mut t = 0;
    assert_eq!(unsafe { bch_field_trace(f, 1, &mut t) }, BchStatus::Ok);
    assert_eq!(t, 0, "Tr(1) = 3 = 0 in GF(3)");
    let mut p = 0;
    assert_eq!(unsafe { bch_field_mul(f, 1, 5, &mut p) }, BchStatus::Ok);
    assert_eq!(p, 5);
    assert_eq!(
        unsafe { bch_field_mul(f, 27, 1, &mut p) },
        BchStatus::OutOfRange
    );
    assert!(last_error().contains("outside"));
    unsafe { bch_field_free(f) };
}

#[test]
fn bad_field_reports_error() {
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { bch_field_new(6, 2, &mut f) },
        BchStatus::InvalidArgument
    );
    assert!(f.is_null());
    assert!(last_error().starts_with("NotPrimePower"));
    assert_eq!(
        unsafe { bch_field_new(3, 3, ptr::null_mut()) },
        BchStatus::NullPointer
    );
}

#[test]
fn enumerators_agree_through_handles() {
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        unsafe { bch_enumerator_closed(3, 3, 1, &mut a) },
        BchStatus::Ok
    );
    let budget = bch_budget_default();
    assert_eq!(
        unsafe { bch_enumerator_oracle(3, 3, 1, &budget, &mut b) },
        BchStatus::Ok
    );
    let mut eq = 0;
    assert_eq!(
        unsafe { bch_enumerator_equal(a, b, &mut eq) },
        BchStatus::Ok
    );
    assert_eq!(eq, 1);
    let mut d = 0;
    assert_eq!(
        unsafe { bch_enumerator_min_distance(a, &mut d) },
        BchStatus::Ok
    );
    assert_eq!(d, 14);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bch_enumerator_json(a, &mut s) }, BchStatus::Ok);
    let v: serde_json::Value =
        serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert_eq!(v["counts"]["14"], "390");
    unsafe {
        bch_string_free(s);
        bch_enumerator_free(a);
        bch_enumerator_free(b);
    }
}

#[test]
fn budget_is_enforced() {
    let tiny = BchBudget {
        max_codewords: 100,
        max_field_size: 1 << 16,
    };
    let mut e = ptr::null_mut();
    assert_eq!(
        unsafe { bch_enumerator_oracle(3, 3, 1, &tiny, &mut e) },
        BchStatus::BudgetExceeded
    );
    assert!(e.is_null());
    assert!(last_error().starts_with("BudgetExceeded"));
}

#[test]
fn json_commands_match_library_payloads() {
    let (s, v) = command(r#"{"command": "params", "q": 3, "m": 3, "i": 1}"#);
    assert_eq!(s, BchStatus::Ok);
    assert_eq!(v, bchforms::api::params(3, 3, 1).unwrap().payload);
    let (s, v) = command(r#"{"command": "enumerator", "q": 2, "m": 6, "i": 3, "mode": "both"}"#);
    assert_eq!(s, BchStatus::Ok);
    assert_eq!(v["witness"]["word_weight"], 23);
    let (s, v) = command(r#"{"command": "design-check", "q": 3, "m": 3, "i": 1, "corrupt": true}"#);
    assert_eq!(s, BchStatus::Mismatch);
    assert_eq!(v["design"], false);
    let (s, _) = command(r#"{"command": "params", "q": 2, "m": 6, "i": 4}"#);
    assert_eq!(s, BchStatus::OutOfRange);
    assert!(last_error().starts_with("IndexOutOfTheoremRange"));
    let (s, _) = command(r#"{"command": "nope"}"#);
    assert_eq!(s, BchStatus::InvalidArgument);
    let (s, _) = command("not json");
    assert_eq!(s, BchStatus::InvalidArgument);
}
