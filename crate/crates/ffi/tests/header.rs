use std::path::Path;
use std::process::Command;

fn header() -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hessberg.h");
    std::fs::read_to_string(p).expect("header generated by build script")
}

#[test]
fn declares_every_entry_point() {
    let h = header();
    assert!(h.starts_with("#ifndef HESSBERG_H"));
    for f in [
        "const char *hb_version(void);",
        "const char *hb_last_error(void);",
        "void hb_string_free(char *s);",
        "HbStatus hb_validate(const char *h, bool *valid);",
        "HbStatus hb_quotient_new(const char *h, HbQuotient **out_q);",
        "void hb_quotient_free(HbQuotient *q);",
        "size_t hb_quotient_dim(const HbQuotient *q);",
        "size_t hb_quotient_nvars(const HbQuotient *q);",
        "HbStatus hb_quotient_hilbert(",
        "HbStatus hb_quotient_normal_form(",
        "HbStatus hb_quotient_coordinates_json(",
        "HbStatus hb_quotient_verify_basis(",
        "HbStatus hb_quotient_verify_duals(",
        "HbStatus hb_gysin(",
        "HbStatus hb_suite_json(",
        "typedef struct HbQuotient HbQuotient;",
        "HB_STATUS_OK = 0,",
        "HB_STATUS_PANIC = 15,",
    ] {
        assert!(h.contains(f), "missing {f}");
    }
}

#[test]
fn compiles_as_c_and_cxx() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(out) = Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(dir.join("hessberg.h"))
            .output()
        else {
            eprintln!("{cc} not available, skipping");
            continue;
        };
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
