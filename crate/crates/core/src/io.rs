//! Ingestion of scored candidate records and persistence of sweep artifacts.
//!
//! The exchange format is JSONL — one record per line:
//!
//! ```text
//! {"prompt_id": "p0", "candidate_id": "c3", "proxy_reward": 0.91, "true_reward": 0.87}
//! ```
//!
//! `true_reward` is optional (selection needs only proxies), and unknown fields are
//! preserved into a flat string map so adapters can round-trip their own annotations.
//! Malformed lines are collected into a line-numbered report rather than aborting the
//! read; a file is rejected only when more than 1% of its lines are malformed, or on
//! integrity violations that silently corrupt analyses — duplicate (prompt, candidate)
//! keys and non-finite rewards.
//!
//! Sweep results serialize to CSV (RFC-4180 quoting, LF line endings, fixed column
//! order, 9 significant digits) or JSON (an array of objects mirroring the CSV columns),
//! and to self-contained SVG charts. All writers are deterministic: identical inputs
//! produce byte-identical artifacts.

use crate::policies::{normalize_rewards, CandidatePool, NormalizationMode, PolicyError, RawScore};
use crate::simulator::{AblationPoint, SweepResult, SweepRow};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Errors from reading records and writing artifacts.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(
        "{path} rejected: {malformed} of {total} lines malformed (> 1%); first issue at line {}: {}",
        .issues.first().map(|i| i.line).unwrap_or(0),
        .issues.first().map(|i| i.message.as_str()).unwrap_or("")
    )]
    TooManyMalformed {
        path: PathBuf,
        total: usize,
        malformed: usize,
        issues: Vec<LineIssue>,
    },
    #[error("line {line}: duplicate key ({prompt_id}, {candidate_id})")]
    DuplicateKey {
        line: usize,
        prompt_id: String,
        candidate_id: String,
    },
    #[error("line {line}: non-finite reward for ({prompt_id}, {candidate_id})")]
    NonFiniteReward {
        line: usize,
        prompt_id: String,
        candidate_id: String,
    },
    #[error("plot input is empty")]
    EmptyPlot,
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error("csv serialization failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

/// One malformed input line: its 1-based line number and the parse failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineIssue {
    pub line: usize,
    pub message: String,
}

/// One scored candidate record as exchanged on disk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordLine {
    pub prompt_id: String,
    pub candidate_id: String,
    pub proxy_reward: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_reward: Option<f64>,
    /// Unknown input fields, preserved as strings.
    #[serde(flatten)]
    pub meta: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawRecord {
    prompt_id: String,
    candidate_id: String,
    proxy_reward: f64,
    #[serde(default)]
    true_reward: Option<f64>,
    #[serde(flatten)]
    extra: BTreeMap<String, serde_json::Value>,
}

fn value_to_string(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Parses one JSONL line into a record. Unknown fields land in `meta`; non-string
/// values are stringified as compact JSON.
pub fn parse_record_line(line: &str) -> Result<RecordLine, serde_json::Error> {
    let raw: RawRecord = serde_json::from_str(line)?;
    Ok(RecordLine {
        prompt_id: raw.prompt_id,
        candidate_id: raw.candidate_id,
        proxy_reward: raw.proxy_reward,
        true_reward: raw.true_reward,
        meta: raw
            .extra
            .iter()
            .map(|(k, v)| (k.clone(), value_to_string(v)))
            .collect(),
    })
}

/// Raw parse of a JSONL file: records in line order plus the malformed-line report.
///
/// Blank lines are skipped. Integrity violations — duplicate (prompt, candidate) keys
/// and non-finite rewards — abort the read; they are data corruption, not formatting
/// noise. A file with more than 1% malformed lines is rejected with the full report.
pub fn read_record_lines(path: &Path) -> Result<(Vec<RecordLine>, Vec<LineIssue>), IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut records = Vec::new();
    let mut issues = Vec::new();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut total = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        total += 1;
        match parse_record_line(line) {
            Err(err) => issues.push(LineIssue {
                line: line_no,
                message: err.to_string(),
            }),
            Ok(rec) => {
                if !rec.proxy_reward.is_finite()
                    || rec.true_reward.is_some_and(|t| !t.is_finite())
                {
                    return Err(IoError::NonFiniteReward {
                        line: line_no,
                        prompt_id: rec.prompt_id,
                        candidate_id: rec.candidate_id,
                    });
                }
                let key = (rec.prompt_id.clone(), rec.candidate_id.clone());
                if !seen.insert(key) {
                    return Err(IoError::DuplicateKey {
                        line: line_no,
                        prompt_id: rec.prompt_id,
                        candidate_id: rec.candidate_id,
                    });
                }
                records.push(rec);
            }
        }
    }
    if issues.len() * 100 > total {
        return Err(IoError::TooManyMalformed {
            path: path.to_path_buf(),
            total,
            malformed: issues.len(),
            issues,
        });
    }
    Ok((records, issues))
}

/// Records grouped into normalized pools, plus the malformed-line report.
#[derive(Debug)]
pub struct ReadOutcome {
    /// One pool per prompt, in first-seen prompt order; candidates sorted by id within
    /// each pool so construction is independent of line order.
    pub pools: Vec<CandidatePool>,
    pub issues: Vec<LineIssue>,
}

/// Reads a JSONL file into normalized candidate pools.
///
/// Lines are grouped by `prompt_id` preserving first-seen prompt order; within each
/// pool candidates are sorted by `candidate_id`, making pool construction independent
/// of line order. The chosen normalization is applied per pool.
///
/// # Errors
/// Unreadable files, duplicate keys, non-finite rewards, > 1% malformed lines, and
/// normalization failures.
pub fn read_records(path: &Path, mode: NormalizationMode) -> Result<ReadOutcome, IoError> {
    let (records, issues) = read_record_lines(path)?;
    let mut order: Vec<String> = Vec::new();
    let mut groups: HashMap<String, Vec<RawScore>> = HashMap::new();
    for rec in records {
        let score = match rec.true_reward {
            Some(t) => RawScore::new(&rec.candidate_id, rec.proxy_reward).with_true_reward(t),
            None => RawScore::new(&rec.candidate_id, rec.proxy_reward),
        };
        groups
            .entry(rec.prompt_id.clone())
            .or_insert_with(|| {
                order.push(rec.prompt_id.clone());
                Vec::new()
            })
            .push(score);
    }
    let mut pools = Vec::with_capacity(order.len());
    for prompt_id in order {
        let mut scores = groups.remove(&prompt_id).expect("grouped above");
        scores.sort_by(|a, b| a.candidate_id.cmp(&b.candidate_id));
        pools.push(normalize_rewards(&prompt_id, &scores, mode)?);
    }
    Ok(ReadOutcome { pools, issues })
}

/// Writes records as JSONL, one compact object per line, meta fields inlined at the top
/// level. Reading the result back yields field-identical records.
pub fn write_records(records: &[RecordLine], path: &Path) -> Result<(), IoError> {
    let mut out = String::new();
    for rec in records {
        out.push_str(&serde_json::to_string(rec)?);
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Output format for tabular artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Formats a float with exactly 9 significant digits, deterministically.
pub(crate) fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

const SWEEP_COLUMNS: [&str; 12] = [
    "policy",
    "N",
    "trial_count",
    "true_reward_mean",
    "true_reward_stderr",
    "proxy_reward_mean",
    "proxy_reward_stderr",
    "kappa_hat_mean",
    "alpha_mean",
    "kl_mean",
    "chi2_mean",
    "tsallis_mean",
];

fn sweep_csv_record(row: &SweepRow) -> Vec<String> {
    vec![
        row.policy.clone(),
        row.n.to_string(),
        row.trial_count.to_string(),
        sig9(row.true_reward_mean),
        sig9(row.true_reward_stderr),
        sig9(row.proxy_reward_mean),
        sig9(row.proxy_reward_stderr),
        row.kappa_hat_mean.map(sig9).unwrap_or_default(),
        row.alpha_mean.map(sig9).unwrap_or_default(),
        sig9(row.kl_mean),
        sig9(row.chi2_mean),
        sig9(row.tsallis_mean),
    ]
}

#[derive(Serialize)]
struct SweepJsonRow<'a> {
    policy: &'a str,
    #[serde(rename = "N")]
    n: usize,
    trial_count: usize,
    true_reward_mean: f64,
    true_reward_stderr: f64,
    proxy_reward_mean: f64,
    proxy_reward_stderr: f64,
    kappa_hat_mean: Option<f64>,
    alpha_mean: Option<f64>,
    kl_mean: f64,
    chi2_mean: f64,
    tsallis_mean: f64,
}

/// Serializes a sweep result.
///
/// CSV: fixed 12-column layout with a mandatory header, numbers at 9 significant
/// digits, rows ordered by policy label then N, RFC-4180 quoting, LF line endings.
/// JSON: an array of objects mirroring the CSV columns (absent estimates are null).
/// Output is byte-identical across runs for identical input.
pub fn write_sweep(result: &SweepResult, path: &Path, format: TableFormat) -> Result<(), IoError> {
    let mut rows: Vec<&SweepRow> = result.rows().iter().collect();
    rows.sort_by(|a, b| a.policy.cmp(&b.policy).then(a.n.cmp(&b.n)));
    let bytes = match format {
        TableFormat::Csv => {
            let mut writer = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            writer.write_record(SWEEP_COLUMNS)?;
            for row in &rows {
                writer.write_record(sweep_csv_record(row))?;
            }
            writer
                .into_inner()
                .expect("vec writer cannot fail to flush")
        }
        TableFormat::Json => {
            let json_rows: Vec<SweepJsonRow> = rows
                .iter()
                .map(|row| SweepJsonRow {
                    policy: &row.policy,
                    n: row.n,
                    trial_count: row.trial_count,
                    true_reward_mean: row.true_reward_mean,
                    true_reward_stderr: row.true_reward_stderr,
                    proxy_reward_mean: row.proxy_reward_mean,
                    proxy_reward_stderr: row.proxy_reward_stderr,
                    kappa_hat_mean: row.kappa_hat_mean,
                    alpha_mean: row.alpha_mean,
                    kl_mean: row.kl_mean,
                    chi2_mean: row.chi2_mean,
                    tsallis_mean: row.tsallis_mean,
                })
                .collect();
            let mut bytes = serde_json::to_vec_pretty(&json_rows)?;
            bytes.push(b'\n');
            bytes
        }
    };
    fs::write(path, bytes).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Chart kinds for sweep results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// True reward vs proxy reward, marker size growing with N.
    Trajectory,
    /// True reward vs N (log₂ axis) with stderr whiskers.
    Scaling,
    /// Proxy reward vs the policy's own divergence diagnostic.
    Distortion,
}

const PALETTE: [&str; 8] = [
    "#3366cc", "#dc3912", "#109618", "#990099", "#ff9900", "#0099c6", "#dd4477", "#66aa00",
];

const PLOT_W: f64 = 640.0;
const PLOT_H: f64 = 440.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 150.0;
const MARGIN_T: f64 = 24.0;
const MARGIN_B: f64 = 48.0;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn from_ranges(xs: &[f64], ys: &[f64]) -> Self {
        let pad = |lo: f64, hi: f64| {
            if (hi - lo).abs() < 1e-12 {
                (lo - 0.5, hi + 0.5)
            } else {
                let p = 0.06 * (hi - lo);
                (lo - p, hi + p)
            }
        };
        let (x_min, x_max) = pad(
            xs.iter().cloned().fold(f64::INFINITY, f64::min),
            xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        );
        let (y_min, y_max) = pad(
            ys.iter().cloned().fold(f64::INFINITY, f64::min),
            ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        );
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    fn sx(&self, x: f64) -> f64 {
        MARGIN_L + (x - self.x_min) / (self.x_max - self.x_min) * (PLOT_W - MARGIN_L - MARGIN_R)
    }

    fn sy(&self, y: f64) -> f64 {
        PLOT_H - MARGIN_B - (y - self.y_min) / (self.y_max - self.y_min) * (PLOT_H - MARGIN_T - MARGIN_B)
    }
}

fn fmt_coord(v: f64) -> String {
    format!("{v:.2}")
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (0.001..10000.0).contains(&a) {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

fn svg_open(title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
            "width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
            "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\" ",
            "text-anchor=\"middle\">{title}</text>\n"
        ),
        w = PLOT_W,
        h = PLOT_H,
        tx = (MARGIN_L + PLOT_W - MARGIN_R) / 2.0,
        title = title,
    )
}

fn svg_axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str, x_ticks: &[(f64, String)]) {
    let x0 = frame.sx(frame.x_min);
    let x1 = frame.sx(frame.x_max);
    let y0 = frame.sy(frame.y_min);
    let y1 = frame.sy(frame.y_max);
    let _ = write!(
        out,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n",
        x0 = fmt_coord(x0),
        x1 = fmt_coord(x1),
        y0 = fmt_coord(y0),
        y1 = fmt_coord(y1),
    );
    for (v, label) in x_ticks {
        let sx = frame.sx(*v);
        let _ = write!(
            out,
            "<line x1=\"{sx}\" y1=\"{y0}\" x2=\"{sx}\" y2=\"{yt}\" stroke=\"black\"/>\n\
             <text x=\"{sx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"10\" \
             text-anchor=\"middle\">{label}</text>\n",
            sx = fmt_coord(sx),
            y0 = fmt_coord(y0),
            yt = fmt_coord(y0 + 4.0),
            ty = fmt_coord(y0 + 16.0),
            label = label,
        );
    }
    for i in 0..=4 {
        let v = frame.y_min + (frame.y_max - frame.y_min) * i as f64 / 4.0;
        let sy = frame.sy(v);
        let _ = write!(
            out,
            "<line x1=\"{xt}\" y1=\"{sy}\" x2=\"{x0}\" y2=\"{sy}\" stroke=\"black\"/>\n\
             <text x=\"{tx}\" y=\"{tyy}\" font-family=\"sans-serif\" font-size=\"10\" \
             text-anchor=\"end\">{label}</text>\n",
            xt = fmt_coord(x0 - 4.0),
            x0 = fmt_coord(x0),
            sy = fmt_coord(sy),
            tx = fmt_coord(x0 - 7.0),
            tyy = fmt_coord(sy + 3.5),
            label = fmt_tick(v),
        );
    }
    let _ = write!(
        out,
        "<text x=\"{cx}\" y=\"{cy}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\">{x_label}</text>\n\
         <text x=\"14\" y=\"{my}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\" transform=\"rotate(-90 14 {my})\">{y_label}</text>\n",
        cx = fmt_coord((MARGIN_L + PLOT_W - MARGIN_R) / 2.0),
        cy = fmt_coord(PLOT_H - 10.0),
        my = fmt_coord((MARGIN_T + PLOT_H - MARGIN_B) / 2.0),
        x_label = x_label,
        y_label = y_label,
    );
}

fn svg_legend(out: &mut String, series: &[(&str, &str)]) {
    let lx = PLOT_W - MARGIN_R + 12.0;
    for (i, (label, color)) in series.iter().enumerate() {
        let y = MARGIN_T + 14.0 + 18.0 * i as f64;
        let _ = write!(
            out,
            "<line x1=\"{lx}\" y1=\"{y}\" x2=\"{lx2}\" y2=\"{y}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n\
             <text x=\"{tx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"11\">{label}</text>\n",
            lx = fmt_coord(lx),
            lx2 = fmt_coord(lx + 22.0),
            y = fmt_coord(y),
            color = color,
            tx = fmt_coord(lx + 28.0),
            ty = fmt_coord(y + 3.5),
            label = label,
        );
    }
}

/// Marker radius for budget N: strictly increasing in N.
fn marker_radius(n: usize) -> f64 {
    2.0 + 0.6 * (n.max(1) as f64).log2()
}

fn grouped_series(result: &SweepResult) -> Vec<(String, Vec<&SweepRow>)> {
    let mut series: Vec<(String, Vec<&SweepRow>)> = Vec::new();
    for row in result.rows() {
        match series.iter_mut().find(|(label, _)| label == &row.policy) {
            Some((_, rows)) => rows.push(row),
            None => series.push((row.policy.clone(), vec![row])),
        }
    }
    for (_, rows) in &mut series {
        rows.sort_by_key(|r| r.n);
    }
    series.sort_by(|a, b| a.0.cmp(&b.0));
    series
}

/// Renders a sweep result as a self-contained SVG 1.1 chart: one series per policy,
/// legend and axis labels included, byte-deterministic for identical input.
///
/// # Errors
/// Empty results and I/O failures.
pub fn emit_plot(result: &SweepResult, kind: PlotKind, path: &Path) -> Result<(), IoError> {
    let svg = render_plot(result, kind)?;
    fs::write(path, svg).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn render_plot(result: &SweepResult, kind: PlotKind) -> Result<String, IoError> {
    let series = grouped_series(result);
    if series.is_empty() {
        return Err(IoError::EmptyPlot);
    }
    let point = |row: &SweepRow| -> (f64, f64) {
        match kind {
            PlotKind::Trajectory => (row.proxy_reward_mean, row.true_reward_mean),
            PlotKind::Scaling => ((row.n as f64).log2(), row.true_reward_mean),
            PlotKind::Distortion => (row.tsallis_mean, row.proxy_reward_mean),
        }
    };
    let xs: Vec<f64> = result.rows().iter().map(|r| point(r).0).collect();
    let ys: Vec<f64> = result.rows().iter().map(|r| point(r).1).collect();
    let frame = Frame::from_ranges(&xs, &ys);
    let (title, x_label, y_label) = match kind {
        PlotKind::Trajectory => (
            "selection trajectory",
            "mean proxy reward",
            "mean true reward",
        ),
        PlotKind::Scaling => ("reward scaling", "budget N", "mean true reward"),
        PlotKind::Distortion => (
            "distortion frontier",
            "mean Tsallis divergence to uniform",
            "mean proxy reward",
        ),
    };
    let x_ticks: Vec<(f64, String)> = match kind {
        PlotKind::Scaling => {
            let mut ns: Vec<usize> = result.rows().iter().map(|r| r.n).collect();
            ns.sort_unstable();
            ns.dedup();
            ns.iter()
                .map(|&n| ((n as f64).log2(), n.to_string()))
                .collect()
        }
        _ => (0..=4)
            .map(|i| {
                let v = frame.x_min + (frame.x_max - frame.x_min) * i as f64 / 4.0;
                (v, fmt_tick(v))
            })
            .collect(),
    };
    let mut out = svg_open(title);
    svg_axes(&mut out, &frame, x_label, y_label, &x_ticks);
    let mut legend = Vec::new();
    for (s_idx, (label, rows)) in series.iter().enumerate() {
        let color = PALETTE[s_idx % PALETTE.len()];
        legend.push((label.as_str(), color));
        let _ = writeln!(out, "<g data-policy=\"{label}\">");
        if rows.len() > 1 {
            let pts: Vec<String> = rows
                .iter()
                .map(|r| {
                    let (x, y) = point(r);
                    format!("{},{}", fmt_coord(frame.sx(x)), fmt_coord(frame.sy(y)))
                })
                .collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                pts.join(" "),
            );
        }
        for row in rows {
            let (x, y) = point(row);
            let sx = frame.sx(x);
            let sy = frame.sy(y);
            if kind == PlotKind::Scaling && row.true_reward_stderr > 0.0 {
                let lo = frame.sy(y - row.true_reward_stderr);
                let hi = frame.sy(y + row.true_reward_stderr);
                let _ = writeln!(
                    out,
                    "<line x1=\"{sx}\" y1=\"{lo}\" x2=\"{sx}\" y2=\"{hi}\" stroke=\"{color}\" \
                     stroke-width=\"1\"/>",
                    sx = fmt_coord(sx),
                    lo = fmt_coord(lo),
                    hi = fmt_coord(hi),
                    color = color,
                );
            }
            let radius = match kind {
                PlotKind::Trajectory => marker_radius(row.n),
                _ => 3.0,
            };
            let _ = writeln!(
                out,
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r:.2}\" fill=\"{color}\" \
                 fill-opacity=\"0.75\"/>",
                cx = fmt_coord(sx),
                cy = fmt_coord(sy),
                r = radius,
                color = color,
            );
        }
        out.push_str("</g>\n");
    }
    svg_legend(&mut out, &legend);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders an ablation as a two-panel SVG: mean true reward (left) and mean proxy
/// reward (right) at the focal budget versus the swept parameter (log₁₀ axis), one
/// series per policy, with an optional reference marker on the swept axis.
///
/// # Errors
/// Empty inputs and I/O failures.
pub fn emit_ablation_plot(
    points: &[AblationPoint],
    axis_label: &str,
    focus_n: usize,
    reference: Option<f64>,
    path: &Path,
) -> Result<(), IoError> {
    if points.is_empty() {
        return Err(IoError::EmptyPlot);
    }
    let mut labels: Vec<String> = points[0]
        .result
        .rows()
        .iter()
        .map(|r| r.policy.clone())
        .collect();
    labels.dedup();
    labels.sort();

    let panel_w = 430.0;
    let total_w = 2.0 * panel_w + 160.0;
    let mut out = format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
            "width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
            "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
        ),
        w = total_w,
        h = PLOT_H,
    );
    for (panel, (value_of, y_label)) in [
        (
            0,
            (
                Box::new(|r: &SweepRow| r.true_reward_mean) as Box<dyn Fn(&SweepRow) -> f64>,
                "mean true reward",
            ),
        ),
        (
            1,
            (
                Box::new(|r: &SweepRow| r.proxy_reward_mean) as Box<dyn Fn(&SweepRow) -> f64>,
                "mean proxy reward",
            ),
        ),
    ] {
        let x_off = panel as f64 * panel_w;
        let xs: Vec<f64> = points.iter().map(|p| p.value.log10()).collect();
        let mut ys = Vec::new();
        for p in points {
            for row in p.result.rows().iter().filter(|r| r.n == focus_n) {
                ys.push(value_of(row));
            }
        }
        if ys.is_empty() {
            return Err(IoError::EmptyPlot);
        }
        let frame = Frame::from_ranges(&xs, &ys);
        let sx = |x: f64| {
            x_off + MARGIN_L
                + (x - frame.x_min) / (frame.x_max - frame.x_min) * (panel_w - MARGIN_L - 20.0)
        };
        let sy = |y: f64| frame.sy(y);
        let y0 = frame.sy(frame.y_min);
        let y1 = frame.sy(frame.y_max);
        let _ = write!(
            out,
            "<line x1=\"{a}\" y1=\"{y0}\" x2=\"{b}\" y2=\"{y0}\" stroke=\"black\"/>\n\
             <line x1=\"{a}\" y1=\"{y0}\" x2=\"{a}\" y2=\"{y1}\" stroke=\"black\"/>\n\
             <text x=\"{cx}\" y=\"{cy}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{axis_label} (log10)</text>\n\
             <text x=\"{lx}\" y=\"{my}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\" transform=\"rotate(-90 {lx} {my})\">{y_label}</text>\n",
            a = fmt_coord(sx(frame.x_min)),
            b = fmt_coord(sx(frame.x_max)),
            y0 = fmt_coord(y0),
            y1 = fmt_coord(y1),
            cx = fmt_coord(x_off + MARGIN_L + (panel_w - MARGIN_L) / 2.0),
            cy = fmt_coord(PLOT_H - 10.0),
            lx = fmt_coord(x_off + 14.0),
            my = fmt_coord((MARGIN_T + PLOT_H - MARGIN_B) / 2.0),
            axis_label = axis_label,
            y_label = y_label,
        );
        for (v, label) in xs.iter().zip(points.iter().map(|p| p.value)) {
            let tick_x = sx(*v);
            let _ = write!(
                out,
                "<line x1=\"{tick_x}\" y1=\"{y0}\" x2=\"{tick_x}\" y2=\"{yb}\" stroke=\"black\"/>\n\
                 <text x=\"{tick_x}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"9\" \
                 text-anchor=\"middle\">{label}</text>\n",
                tick_x = fmt_coord(tick_x),
                y0 = fmt_coord(y0),
                yb = fmt_coord(y0 + 4.0),
                ty = fmt_coord(y0 + 15.0),
                label = fmt_tick(label),
            );
        }
        if let Some(refv) = reference {
            if refv > 0.0 {
                let rx = sx(refv.log10());
                let _ = write!(
                    out,
                    "<line x1=\"{rx}\" y1=\"{y1}\" x2=\"{rx}\" y2=\"{y0}\" stroke=\"#888888\" \
                     stroke-dasharray=\"4 3\"/>\n\
                     <text x=\"{rx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"9\" \
                     text-anchor=\"middle\" fill=\"#555555\">reference</text>\n",
                    rx = fmt_coord(rx),
                    y0 = fmt_coord(y0),
                    y1 = fmt_coord(y1),
                    ty = fmt_coord(y1 - 4.0),
                );
            }
        }
        for (s_idx, label) in labels.iter().enumerate() {
            let color = PALETTE[s_idx % PALETTE.len()];
            let mut pts = Vec::new();
            for (p, &x) in points.iter().zip(&xs) {
                if let Some(row) = p.result.row(label, focus_n) {
                    pts.push((sx(x), sy(value_of(row))));
                }
            }
            if pts.len() > 1 {
                let joined: Vec<String> = pts
                    .iter()
                    .map(|(x, y)| format!("{},{}", fmt_coord(*x), fmt_coord(*y)))
                    .collect();
                let _ = writeln!(
                    out,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" \
                     stroke-width=\"1.5\"/>",
                    joined.join(" "),
                );
            }
            for (x, y) in &pts {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"3.00\" fill=\"{color}\"/>",
                    cx = fmt_coord(*x),
                    cy = fmt_coord(*y),
                );
            }
        }
    }
    let legend: Vec<(&str, &str)> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), PALETTE[i % PALETTE.len()]))
        .collect();
    let lx = 2.0 * panel_w + 10.0;
    for (i, (label, color)) in legend.iter().enumerate() {
        let y = MARGIN_T + 14.0 + 18.0 * i as f64;
        let _ = write!(
            out,
            "<line x1=\"{lx}\" y1=\"{y}\" x2=\"{lx2}\" y2=\"{y}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n\
             <text x=\"{tx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"11\">{label}</text>\n",
            lx = fmt_coord(lx),
            lx2 = fmt_coord(lx + 22.0),
            y = fmt_coord(y),
            color = color,
            tx = fmt_coord(lx + 28.0),
            ty = fmt_coord(y + 3.5),
            label = label,
        );
    }
    out.push_str("</svg>\n");
    fs::write(path, out).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}
