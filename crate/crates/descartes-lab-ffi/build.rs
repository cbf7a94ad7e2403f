//! Regenerates include/descartes_lab.h from the crate's public surface.
//! The header is committed so C users can build without running cbindgen;
//! this script keeps it in sync.

use std::path::Path;

fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets CARGO_MANIFEST_DIR");
    let header = Path::new(&crate_dir).join("include/descartes_lab.h");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        Err(e) => {
            // Header generation failing must not break consumers that
            // already have the committed header.
            println!("cargo:warning=cbindgen could not regenerate {}: {e}", header.display());
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
