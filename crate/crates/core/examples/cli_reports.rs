// Running suites through the dispatch layer and rendering reports as text
// and JSON.

use cqtkit::cli::{dispatch, render_json, render_text, RunConfig, Suite};

pub fn run_example() -> cqtkit::Result<()> {
    let out = dispatch(&RunConfig::new("builtin:poincare-negative").suite(Suite::Validate))?;
    print!("{}", render_text(&out));
    println!("exit code {}", out.exit_code());
    assert_eq!(out.exit_code(), 1);

    let json = render_json(&out);
    let v: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    let failed: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["check_id"].as_str().unwrap())
        .collect();
    println!("failed: {failed:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
