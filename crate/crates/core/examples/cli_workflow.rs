//! Drives the command layer from code: builds a config with overrides, runs `converge`
//! and `entropy` into a scratch directory and lists what was written.

use d1q2::cli::{cmd_converge, cmd_entropy, from_map, parse_override};

fn main() -> d1q2::Result<()> {
    let dir = tempfile::tempdir()?;
    let mut map = serde_json::Map::new();
    for arg in [
        "model=burgers",
        "ic=step",
        "s=0.5,1.0",
        "levels=256,512,1024",
        "output_times=0.05,0.1",
    ] {
        let (k, v) = parse_override(arg)?;
        map.insert(k, v);
    }
    map.insert("out".into(), dir.path().to_string_lossy().into_owned().into());
    let cfg = from_map(map)?;
    println!("{}", cfg.to_json());

    cmd_converge(&cfg)?;
    cmd_entropy(&cfg)?;

    let mut files: Vec<_> = walk(dir.path());
    files.sort();
    for f in &files {
        println!("{}", f.strip_prefix(dir.path()).unwrap().display());
    }
    let summary = std::fs::read_to_string(dir.path().join("rates_summary.csv"))?;
    print!("{summary}");
    Ok(())
}

fn walk(dir: &std::path::Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).into_iter().flatten().flatten() {
        let path = entry.path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}
