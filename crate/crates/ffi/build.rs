fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR is set");
    let header = std::path::Path::new(&crate_dir).join("include").join("tqsim.h");
    std::fs::create_dir_all(header.parent().expect("include dir")).expect("create include dir");

    cbindgen::generate(&crate_dir)
        .expect("header generation failed")
        .write_to_file(header);
}
