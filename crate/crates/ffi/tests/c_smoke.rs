//! Compiles `tests/smoke.c` against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

fn artifact_dir() -> PathBuf {
    // target/<profile>/deps/c_smoke-<hash> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let dir = artifact_dir();
    let lib = [
        dir.join("libbellgeom_ffi.a"),
        dir.join("deps/libbellgeom_ffi.a"),
    ]
    .into_iter()
    .find(|p| p.exists())
    .unwrap_or_else(|| panic!("libbellgeom_ffi.a not found under {}", dir.display()));

    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c11", "-Wall", "-Wextra", "-Werror", "-pedantic"])
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap_or_else(|e| panic!("failed to run C compiler `{cc}`: {e}"));
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success(),
        "{stdout}{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout.contains("C smoke test ok"));
}
