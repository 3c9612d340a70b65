//! Regenerate the JSON files under `crates/core/fixtures`.

use std::fs;
use std::path::Path;

use cgakit::fixtures;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("two_bone_cylinder.json"), fixtures::two_bone_cylinder().to_json())?;
    fs::write(dir.join("unit_cube.json"), fixtures::unit_cube().to_json())?;
    fs::write(dir.join("orbit_scenario.json"), fixtures::orbit_scenario().to_json())?;
    Ok(())
}
