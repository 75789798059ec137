use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use fanocheck_ffi::*;

fn last_error() -> String {
    let p = fc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn invariants_and_rr() {
    let mut inv = FcInvariants {
        i3: 0,
        i2: 0,
        i1: 0,
        e3: 0,
    };
    assert_eq!(
        unsafe { fc_blowup_invariants(12, 0, 0, &mut inv) },
        FcStatus::Ok
    );
    assert_eq!((inv.i3, inv.i2, inv.i1, inv.e3), (14, 4, -2, 1));
    assert_eq!(
        unsafe { fc_blowup_invariants(8, 4, 1, &mut inv) },
        FcStatus::Ok
    );
    assert_eq!((inv.i3, inv.i2, inv.i1, inv.e3), (6, 4, 0, -4));
    assert_eq!(
        unsafe { fc_blowup_invariants(1, 0, 0, &mut inv) },
        FcStatus::InvalidArgument
    );
    assert!(last_error().contains("genus"));
    assert_eq!(
        unsafe { fc_blowup_invariants(8, 1, 0, ptr::null_mut()) },
        FcStatus::NullPointer
    );

    let mut v = 0;
    assert_eq!(unsafe { fc_rr_h0(4, 3, &mut v) }, FcStatus::Ok);
    assert_eq!(v, 49);
    assert_eq!(
        unsafe { fc_rr_h0(4, -1, &mut v) },
        FcStatus::InvalidArgument
    );
}

#[test]
fn flop_table_handle() {
    let mut t: *mut FcFlopTable = ptr::null_mut();
    assert_eq!(
        unsafe { fc_flop_table_new(FcScenario::Line, 4, 12, true, &mut t) },
        FcStatus::Ok
    );
    assert_eq!(unsafe { fc_flop_table_len(t) }, 12);
    assert_eq!(unsafe { fc_flop_table_excluded_len(t) }, 2);
    let mut row = std::mem::MaybeUninit::<FcRow>::uninit();
    assert_eq!(
        unsafe { fc_flop_table_row(t, 4, row.as_mut_ptr()) },
        FcStatus::Ok
    );
    let row = unsafe { row.assume_init() };
    assert_eq!(
        (row.g, row.ray_type, row.subtype, row.alpha, row.beta),
        (5, FcRayType::C, FcSubtype::C1, 2, 1)
    );
    assert_eq!(row.deg_delta, 7);
    let mut other = row;
    assert_eq!(
        unsafe { fc_flop_table_row(t, 12, &mut other) },
        FcStatus::IndexOutOfBounds
    );
    assert!(last_error().contains("row 12"));
    unsafe { fc_flop_table_free(t) };
    unsafe { fc_flop_table_free(ptr::null_mut()) };
    assert_eq!(unsafe { fc_flop_table_len(ptr::null()) }, 0);

    assert_eq!(
        unsafe { fc_flop_table_new(FcScenario::Point, 3, 12, true, &mut t) },
        FcStatus::OutOfRange
    );
}

#[test]
fn point_table_payloads() {
    let mut t: *mut FcFlopTable = ptr::null_mut();
    assert_eq!(
        unsafe { fc_flop_table_new(FcScenario::Point, 6, 40, true, &mut t) },
        FcStatus::Ok
    );
    let n = unsafe { fc_flop_table_len(t) };
    assert_eq!(n, 15);
    let mut rows = Vec::new();
    for i in 0..n {
        let mut r = std::mem::MaybeUninit::<FcRow>::uninit();
        assert_eq!(
            unsafe { fc_flop_table_row(t, i, r.as_mut_ptr()) },
            FcStatus::Ok
        );
        rows.push(unsafe { r.assume_init() });
    }
    unsafe { fc_flop_table_free(t) };
    let r = rows
        .iter()
        .find(|r| r.g == 6 && r.ray_type == FcRayType::E1 && r.alpha == 5)
        .unwrap();
    assert_eq!((r.d3, r.r_w, r.kw3, r.kwb, r.g_b), (-22, 1, 22, 14, 5));
}

#[test]
fn divcont_handle() {
    let mut h: *mut FcDivCont = ptr::null_mut();
    assert_eq!(
        unsafe { fc_divcont_new(FcScenario::Line, &mut h) },
        FcStatus::Ok
    );
    assert_eq!(unsafe { fc_divcont_len(h) }, 2);
    let (mut g, mut a, mut b) = (0, 0, 0);
    assert_eq!(
        unsafe { fc_divcont_get(h, 0, &mut g, &mut a, &mut b) },
        FcStatus::Ok
    );
    assert_eq!((g, a, b), (4, 3, 2));
    assert_eq!(
        unsafe { fc_divcont_get(h, 5, &mut g, &mut a, &mut b) },
        FcStatus::IndexOutOfBounds
    );
    assert_eq!(
        unsafe { fc_divcont_get(h, 0, ptr::null_mut(), &mut a, &mut b) },
        FcStatus::NullPointer
    );
    unsafe { fc_divcont_free(h) };
}

#[test]
fn verdict_handle() {
    let mut v: *mut FcVerdict = ptr::null_mut();
    assert_eq!(unsafe { fc_nonfano_new(true, true, &mut v) }, FcStatus::Ok);
    assert_eq!(
        unsafe { (fc_verdict_survivor_count(v), fc_verdict_unresolved_count(v)) },
        (4, 0)
    );
    unsafe { fc_verdict_free(v) };
    assert_eq!(
        unsafe { fc_nonfano_new(false, false, &mut v) },
        FcStatus::Ok
    );
    assert_eq!(unsafe { fc_verdict_unresolved_count(v) }, 4);
    unsafe { fc_verdict_free(v) };
}

#[test]
fn verify_through_abi() {
    let (mut p, mut f) = (0u32, 0u32);
    assert_eq!(unsafe { fc_verify(2, &mut p, &mut f) }, FcStatus::Ok);
    assert_eq!((p, f), (11, 0));
    assert_eq!(
        unsafe { fc_verify(0, &mut p, &mut f) },
        FcStatus::OutOfRange
    );
}

/// The generated header compiles as C; skipped when no C compiler is present.
#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include").join("fanocheck.h");
    assert!(header.exists(), "header not generated");
    let probe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("header_probe.c");
    std::fs::write(
        &probe,
        "#include \"fanocheck.h\"\n\
         int probe(void) {\n\
           FcFlopTable *t = 0;\n\
           FcRow row;\n\
           FcStatus s = fc_flop_table_new(FC_SCENARIO_POINT, 6, 40, true, &t);\n\
           if (s == FC_STATUS_OK && fc_flop_table_len(t) > 0) s = fc_flop_table_row(t, 0, &row);\n\
           fc_flop_table_free(t);\n\
           return (int)s;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&probe)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "header failed to compile"),
        Err(e) => eprintln!("skipping C header check: {e}"),
    }
}
