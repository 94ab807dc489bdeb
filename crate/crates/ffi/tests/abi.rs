use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ranktower_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    rt_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rt_last_error()).to_str().unwrap().to_string() }
}

fn params(ell: u64, p: u64, n: u64) -> RtPlanParams {
    RtPlanParams {
        ell,
        p,
        n,
        d: 1,
        m: 2,
        nilpotent_s: 0,
        conductor: 0,
        poly: ptr::null(),
        class_number: 0,
        primes_above_p: 0,
        s0: 0,
        apply_reserve: false,
    }
}

#[test]
fn plan_and_certificate_handles() {
    unsafe {
        let mut plan: *mut RtPlan = ptr::null_mut();
        let p = RtPlanParams { s0: 2, ..params(5, 3, 2) };
        assert_eq!(rt_plan_new(&p, &mut plan), RtStatus::Ok);
        assert_eq!(rt_plan_prime_count(plan), 42);
        let mut s = ptr::null_mut();
        assert_eq!(rt_plan_t(plan, &mut s), RtStatus::Ok);
        assert_eq!(take(s), "42");
        assert_eq!(rt_plan_alpha(plan, &mut s), RtStatus::Ok);
        assert_eq!(
            take(s),
            "1291141833150387370595540844192626559291716201825247806529654404639162193029004657967210"
        );

        let mut cert: *mut RtCertificate = ptr::null_mut();
        assert_eq!(rt_certificate_new(plan, 1, 4, &mut cert), RtStatus::Ok);
        assert_eq!(rt_certificate_row_count(cert), 5);
        let ranks: Vec<String> = (0..5)
            .map(|n| {
                let mut s = ptr::null_mut();
                assert_eq!(rt_certificate_class_rank(cert, n, &mut s), RtStatus::Ok);
                take(s)
            })
            .collect();
        assert_eq!(ranks, ["2", "6", "18", "54", "162"]);
        assert_eq!(rt_certificate_class_rank(cert, 5, &mut s), RtStatus::InvalidInput);

        assert_eq!(rt_certificate_to_json(cert, &mut s), RtStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rows"][2]["fine_selmer_lower_paper"], "18");
        assert_eq!(v["rows"][2]["fine_selmer_lower_conservative"], "16");

        rt_certificate_free(cert);
        rt_plan_free(plan);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut plan: *mut RtPlan = ptr::null_mut();
        assert_eq!(rt_plan_new(&params(5, 5, 2), &mut plan), RtStatus::EqualPrimes);
        assert!(plan.is_null());
        assert!(last_error().starts_with("EqualPrimes"));
        assert_eq!(rt_plan_new(&params(4, 3, 2), &mut plan), RtStatus::ValidationFailed);
        assert!(last_error().contains("params.not-prime"));
        assert_eq!(rt_plan_new(ptr::null(), &mut plan), RtStatus::NullPointer);

        let mut split = RtSplitting::default();
        assert_eq!(rt_split(3, 9, &mut split), RtStatus::RamifiedPrime);
        assert_eq!(rt_split(43, 7, &mut split), RtStatus::Ok);
        assert_eq!(split, RtSplitting { e: 1, f: 1, g: 6 });
        assert_eq!(last_error(), "");

        let bad = CString::new("example7").unwrap();
        assert_eq!(rt_plan_from_example(bad.as_ptr(), &mut plan), RtStatus::InvalidInput);
    }
}

#[test]
fn relative_base_through_params() {
    unsafe {
        let poly = CString::new("x^3 - x^2 - 4*x - 1").unwrap();
        let mut p = RtPlanParams { d: 3, m: 3, nilpotent_s: 1, conductor: 7, poly: poly.as_ptr(), ..params(3, 7, 6) };
        let mut plan: *mut RtPlan = ptr::null_mut();
        assert_eq!(rt_plan_new(&p, &mut plan), RtStatus::ValidationFailed);
        assert!(last_error().contains("assumption.item3"));
        p.class_number = 13;
        p.primes_above_p = 1;
        assert_eq!(rt_plan_new(&p, &mut plan), RtStatus::Ok);
        assert_eq!(rt_plan_prime_count(plan), 10);
        rt_plan_free(plan);
    }
}

#[test]
fn reproduce_and_factorization() {
    unsafe {
        let id = CString::new("example3").unwrap();
        let mut passed = -1;
        let mut s = ptr::null_mut();
        assert_eq!(rt_reproduce(id.as_ptr(), 1, &mut passed, &mut s), RtStatus::Ok);
        assert_eq!(passed, 1);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["kind"], "reproduction");
        assert!(v["warnings"].as_array().unwrap().iter().any(|w| w["code"] == "W301-EX3-FACTORIZATION-UNIT"));

        let factors: Vec<CString> = ["z + 1", "z^2 - z + 1"].iter().map(|f| CString::new(*f).unwrap()).collect();
        let ptrs: Vec<*const c_char> = factors.iter().map(|f| f.as_ptr()).collect();
        assert_eq!(rt_verify_factorization(3, 2, ptrs.as_ptr(), ptrs.len(), &mut passed, &mut s), RtStatus::Ok);
        // (ζ₃ + 1)(ζ₃² − ζ₃ + 1) = ζ₃³ + 1 = 2
        assert_eq!(passed, 1);
        rt_string_free(s);

        let junk = [CString::new("ζ₅").unwrap()];
        let ptrs: Vec<*const c_char> = junk.iter().map(|f| f.as_ptr()).collect();
        assert_eq!(rt_verify_factorization(7, 43, ptrs.as_ptr(), 1, &mut passed, &mut s), RtStatus::Parse);
    }
}
