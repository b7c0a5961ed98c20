//! Deterministic output helpers: fixed field ordering, fixed rational
//! formatting, stable decimal rendering.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use galq_core::{HpComplex, HpCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

pub fn write_text(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

pub fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("in-memory value");
    s.push('\n');
    s
}

pub fn csv_text(header: &str, rows: &[String]) -> String {
    let mut s = String::with_capacity(header.len() + rows.len() * 32);
    s.push_str(header);
    s.push('\n');
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

/// Complex value as a ["re", "im"] pair of full-precision decimal strings.
pub fn pair(z: &HpComplex, ctx: &HpCtx) -> serde_json::Value {
    let [re, im] = z.to_pair_strings(ctx);
    serde_json::json!([re, im])
}

/// Short decimal for human-facing tables; 10 fractional digits, trimmed.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.10}");
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" || t.is_empty() {
        "0".to_string()
    } else {
        t.to_string()
    }
}

pub fn fmt_complex_f64(re: f64, im: f64) -> String {
    let re_s = fmt_f64(re);
    let im_part = match fmt_f64(im).as_str() {
        "1" => "i".to_string(),
        "-1" => "-i".to_string(),
        other => format!("{other}i"),
    };
    match (re_s.as_str(), im_part.as_str()) {
        (_, "0i") => re_s,
        ("0", _) => im_part,
        _ if im_part.starts_with('-') => format!("{re_s}{im_part}"),
        _ => format!("{re_s}+{im_part}"),
    }
}

pub fn fmt_complex(z: &HpComplex) -> String {
    let (re, im) = z.to_f64_lossy();
    fmt_complex_f64(re, im)
}
