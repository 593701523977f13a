use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::harness::{ConvergenceStudy, Snapshot};
use crate::InvariantViolation;

/// Round-trip representation: 17 significant digits, locale independent.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Label used in file names, e.g. `0.05` in `fields_t0.05.csv`.
pub fn time_label(t: f64) -> String {
    format!("{t}")
}

/// Header of a field dump.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DumpMeta {
    pub file: String,
    pub model: String,
    pub ic: String,
    pub s: f64,
    pub lambda: f64,
    pub ncells: usize,
    pub dx: f64,
    pub dt: f64,
    pub t: f64,
    pub n: usize,
}

/// Cell-wise fields at one output time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldDump {
    #[serde(flatten)]
    pub meta: DumpMeta,
    pub x_center: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub fminus: Vec<f64>,
    pub fplus: Vec<f64>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_right: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
}

impl FieldDump {
    /// `t` is the requested output time; it names the file.
    pub fn new(model: &str, ic: &str, s: f64, t: f64, snap: &Snapshot, with_entropy: bool, ext: &str) -> Self {
        let grid = &snap.state.grid;
        let entropy = snap.entropy.as_ref().filter(|_| with_entropy);
        Self {
            meta: DumpMeta {
                file: format!("fields_t{}.{ext}", time_label(t)),
                model: model.into(),
                ic: ic.into(),
                s,
                lambda: grid.lambda,
                ncells: grid.ncells,
                dx: grid.dx,
                dt: grid.dt,
                t: snap.time,
                n: snap.step,
            },
            x_center: (0..grid.ncells).map(|j| grid.x_center(j)).collect(),
            u: snap.state.u(),
            v: snap.state.v(),
            fminus: snap.state.fminus.clone(),
            fplus: snap.state.fplus.clone(),
            e: entropy.map(|r| r.e.clone()),
            q_right: entropy.map(|r| r.q.clone()),
            mu: entropy.map(|r| r.mu.clone()),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut columns: Vec<(&str, &Vec<f64>)> = vec![
            ("x_center", &self.x_center),
            ("u", &self.u),
            ("v", &self.v),
            ("fminus", &self.fminus),
            ("fplus", &self.fplus),
        ];
        for (name, col) in [("E", &self.e), ("Q_right", &self.q_right), ("mu", &self.mu)] {
            if let Some(col) = col {
                columns.push((name, col));
            }
        }
        let header: Vec<&str> = columns.iter().map(|(n, _)| *n).collect();
        let mut out = header.join(",");
        out.push('\n');
        for j in 0..self.x_center.len() {
            let row: Vec<String> = columns.iter().map(|(_, c)| fmt_num(c[j])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes the dumps of one run plus `manifest.json` with their headers.
pub fn write_dumps(dir: &Path, dumps: &[FieldDump], json: bool) -> Result<()> {
    fs::create_dir_all(dir)?;
    for dump in dumps {
        let path = dir.join(&dump.meta.file);
        if json {
            fs::write(path, to_json(dump))?;
        } else {
            fs::write(path, dump.to_csv())?;
        }
    }
    let metas: Vec<&DumpMeta> = dumps.iter().map(|d| &d.meta).collect();
    fs::write(dir.join("manifest.json"), to_json(&metas))?;
    Ok(())
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// One row of `rates.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRow {
    pub s: f64,
    pub ncells: usize,
    pub dx: f64,
    pub error_u: f64,
    pub error_v: f64,
}

/// One row of `rates_summary.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateSummary {
    pub s: f64,
    pub p_u: f64,
    pub r2_u: f64,
    pub p_v: f64,
    pub r2_v: f64,
    pub fit_levels: Vec<usize>,
}

/// Writes `rates.{csv,json}` and, for studies with at least two levels, `rates_summary.{csv,json}`.
pub fn write_rates(dir: &Path, studies: &[ConvergenceStudy], json: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let rows: Vec<RateRow> = studies
        .iter()
        .flat_map(|st| {
            st.levels.iter().map(move |l| RateRow {
                s: st.s,
                ncells: l.ncells,
                dx: l.dx,
                error_u: l.error_u,
                error_v: l.error_v,
            })
        })
        .collect();
    let summary: Vec<RateSummary> = studies
        .iter()
        .filter_map(|st| {
            let (u, v) = (st.rate_u.as_ref()?, st.rate_v.as_ref()?);
            Some(RateSummary {
                s: st.s,
                p_u: u.p,
                r2_u: u.r2,
                p_v: v.p,
                r2_v: v.r2,
                fit_levels: st.fit_window.clone(),
            })
        })
        .collect();
    let mut written = Vec::new();
    let (rates, summ) = if json {
        (dir.join("rates.json"), dir.join("rates_summary.json"))
    } else {
        (dir.join("rates.csv"), dir.join("rates_summary.csv"))
    };
    if json {
        fs::write(&rates, to_json(&rows))?;
    } else {
        let mut out = String::from("s,ncells,dx,error_u,error_v\n");
        for r in &rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt_num(r.s),
                r.ncells,
                fmt_num(r.dx),
                fmt_num(r.error_u),
                fmt_num(r.error_v)
            );
        }
        fs::write(&rates, out)?;
    }
    written.push(rates);
    if !summary.is_empty() {
        if json {
            fs::write(&summ, to_json(&summary))?;
        } else {
            let mut out = String::from("s,p_u,r2_u,p_v,r2_v,fit_levels\n");
            for r in &summary {
                let levels: Vec<String> = r.fit_levels.iter().map(|l| l.to_string()).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt_num(r.s),
                    fmt_num(r.p_u),
                    fmt_num(r.r2_u),
                    fmt_num(r.p_v),
                    fmt_num(r.r2_v),
                    levels.join(";")
                );
            }
            fs::write(&summ, out)?;
        }
        written.push(summ);
    }
    Ok(written)
}

/// One row of `entropy_l1.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyRow {
    pub s: f64,
    pub ncells: usize,
    pub n: usize,
    pub t: f64,
    pub mu_l1: f64,
}

pub fn write_entropy_series(dir: &Path, rows: &[EntropyRow], json: bool) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    if json {
        let path = dir.join("entropy_l1.json");
        fs::write(&path, to_json(rows))?;
        return Ok(path);
    }
    let mut out = String::from("s,ncells,n,t,mu_l1\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", fmt_num(r.s), r.ncells, r.n, fmt_num(r.t), fmt_num(r.mu_l1));
    }
    let path = dir.join("entropy_l1.csv");
    fs::write(&path, out)?;
    Ok(path)
}

/// Report written in place of results when a strict run fails a bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub quantity: String,
    pub step: usize,
    pub cell: Option<usize>,
    pub value: f64,
    pub bound: f64,
    pub message: String,
}

impl From<&InvariantViolation> for ViolationReport {
    fn from(v: &InvariantViolation) -> Self {
        Self {
            quantity: v.quantity.clone(),
            step: v.step,
            cell: v.cell,
            value: v.value,
            bound: v.bound,
            message: v.to_string(),
        }
    }
}

pub fn write_violation(dir: &Path, v: &InvariantViolation) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join("violation.json");
    fs::write(&path, to_json(&ViolationReport::from(v)))?;
    Ok(path)
}
