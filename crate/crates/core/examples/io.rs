//! Reading and writing spaces as JSON, and looking up named fixtures.
//!
//! `cargo run --example io`

use mmspace::diagnostics::fixture;
use mmspace::io::{read_space, space_from_json, write_space};
use mmspace::MmSpace;

fn main() -> mmspace::Result<()> {
    let text = r#"{
        "labels": ["a", "b", "c"],
        "dist": [[0, 1, 2], [1, 0, 1], [2, 1, 0]],
        "weights": [0.25, 0.5, 0.25]
    }"#;
    let x = space_from_json(text, "inline")?;
    println!("parsed {} points, diameter {}", x.len(), x.diameter());

    let path = std::env::temp_dir().join("mmspace-example.json");
    write_space(
        &path,
        &x,
        Some(serde_json::json!({ "note": "a path of length 2" })),
    )?;
    let back: MmSpace = read_space(&path)?;
    println!("round trip equal: {}", back == x);
    println!(
        "{}",
        std::fs::read_to_string(&path).map_err(mmspace::Error::from)?
    );

    let y = fixture("exp212ii:2")?;
    println!(
        "fixture exp212ii:2 has {} points of weight {}",
        y.len(),
        y.weight(0)
    );
    Ok(())
}
