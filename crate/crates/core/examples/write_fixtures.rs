//! Regenerates the text fixtures under `fixtures/`.
//!
//! ```text
//! cargo run --example write_fixtures
//! ```

use std::path::Path;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;
    for (file, body) in rational_functions::text::fixture_files() {
        std::fs::write(dir.join(file), body)?;
        println!("wrote {file}");
    }
    Ok(())
}
