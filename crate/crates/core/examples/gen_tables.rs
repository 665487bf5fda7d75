//! Regenerates the checked-in tables under `src/`.

use std::path::Path;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("src");
    let tables = [
        (
            "equiv/signature_table.rs",
            hyperode::equiv::generate_signature_table(),
        ),
        (
            "solutions/basis_table.rs",
            hyperode::solutions::generate_basis_table(),
        ),
    ];
    for (rel, text) in tables {
        let path = root.join(rel);
        std::fs::write(&path, text).expect("write table");
        println!("wrote {}", path.display());
    }
}
