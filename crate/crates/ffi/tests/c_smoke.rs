//! Compiles and runs a small C program against the generated header and the
//! static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include <stdio.h>
#include <math.h>
#include "clonedel.h"

int main(void) {
    CdState *state = NULL;
    double fidelity = 0.0;
    if (cd_bh_clone(0.6, 0.0, 0.8, 0.0, 0.5, &state, &fidelity) != CD_STATUS_OK) {
        fprintf(stderr, "constructor failed: %s\n", cd_last_error());
        return 1;
    }
    double n = 0.0, log_n = 0.0, dg = 0.0;
    if (cd_negativity(state, &n, &log_n) != CD_STATUS_OK) return 2;
    if (cd_geometric_discord(state, &dg) != CD_STATUS_OK) return 3;
    cd_state_free(state);
    if (fabs(n - 0.5) > 1e-12 || fabs(dg - 1.0) > 1e-12) {
        fprintf(stderr, "unexpected values n=%f dg=%f\n", n, dg);
        return 4;
    }
    if (cd_bh_clone(0.6, 0.0, 0.8, 0.0, 0.01, &state, &fidelity) != CD_STATUS_DOMAIN) {
        return 5;
    }
    printf("ok %s\n", cd_version());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let lib_dir: PathBuf = exe.parent().unwrap().parent().unwrap().to_path_buf();
    let static_lib = lib_dir.join("libclonedel_ffi.a");
    assert!(
        static_lib.exists(),
        "static library not found at {}",
        static_lib.display()
    );

    let include_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = tempfile::tempdir().unwrap();
    let c_file = work.path().join("smoke.c");
    std::fs::write(&c_file, C_SOURCE).unwrap();
    let binary = work.path().join("smoke");

    let compile = Command::new("cc")
        .arg(&c_file)
        .arg("-I")
        .arg(&include_dir)
        .arg(&static_lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().unwrap();
    assert!(
        run.status.success(),
        "smoke binary failed with {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.starts_with("ok "), "{stdout}");
}
