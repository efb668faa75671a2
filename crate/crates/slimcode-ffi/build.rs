//! Generates the C header for the public ABI into `include/slimcode.h`
//! (committed alongside the crate) and into `OUT_DIR` for build systems
//! that consume the crate directly.

use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR is set by cargo");
    let out_dir = env::var("OUT_DIR").expect("OUT_DIR is set by cargo");

    let config = cbindgen::Config::from_file(PathBuf::from(&crate_dir).join("cbindgen.toml"))
        .expect("cbindgen.toml parses");
    let bindings = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("C header generation failed");

    bindings.write_to_file(PathBuf::from(&crate_dir).join("include/slimcode.h"));
    bindings.write_to_file(PathBuf::from(&out_dir).join("slimcode.h"));

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
