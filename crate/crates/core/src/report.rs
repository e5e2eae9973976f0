//! Result serialization: time-series and ellipse CSVs plus a JSON summary.
//!
//! Every floating-point value is written with 6 significant digits and a
//! `.` decimal separator, and rows are newline-terminated, so identical runs
//! produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::ObservableModeConfig;
use crate::squeeze::{EntropyTrace, SqueezingPoint, SweepGrid, SweepSummary, ThetaSample};

/// Formats with 6 significant digits, trimming trailing zeros; values
/// outside [1e-4, 1e6) switch to exponential notation.
pub fn format_sig6(x: f64) -> String {
    format_sig(x, 6)
}

fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format contains e");
    let exponent: i32 = exponent.parse().expect("valid exponent");
    if exponent >= -4 && exponent < digits as i32 {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa), exponent)
    }
}

fn trim_zeros(text: &str) -> String {
    if !text.contains('.') {
        return text.into();
    }
    let trimmed = text.trim_end_matches('0').trim_end_matches('.');
    trimmed.into()
}

/// Rounds to 6 significant digits through the textual representation, for
/// numeric JSON fields.
pub fn round_sig6(x: f64) -> f64 {
    format_sig6(x).parse().unwrap_or(x)
}

fn create_file(path: &Path) -> Result<fs::File> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    Ok(fs::File::create(path)?)
}

fn refuse_empty(what: &str, is_empty: bool) -> Result<()> {
    if is_empty {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            format!("refusing to write empty {what}"),
        )));
    }
    Ok(())
}

/// One CSV row per tau: expectation values, ellipse axes, normalized
/// uncertainties, per-site entropies, and the degeneracy flag.
pub fn write_timeseries(points: &[SqueezingPoint], path: &Path) -> Result<()> {
    refuse_empty("timeseries", points.is_empty())?;
    let n = points[0].entropy.len();
    let mut file = create_file(path)?;
    let mut header = String::from(
        "tau_ns,jx,jy,jz,j_mag,delta_b,delta_a,theta_opt_deg,sigma_b,sigma_a",
    );
    for site in 1..=n {
        header.push_str(&format!(",entropy_{site}"));
    }
    header.push_str(",degenerate");
    writeln!(file, "{header}")?;
    for p in points {
        let mut row = format!(
            "{},{},{},{},{},{},{},{},{},{}",
            format_sig6(p.tau_ns),
            format_sig6(p.j_exp[0]),
            format_sig6(p.j_exp[1]),
            format_sig6(p.j_exp[2]),
            format_sig6(p.j_mag),
            format_sig6(p.delta_b),
            format_sig6(p.delta_a),
            format_sig6(p.theta_opt_deg),
            format_sig6(p.sigma_b),
            format_sig6(p.sigma_a),
        );
        for &s in &p.entropy {
            row.push(',');
            row.push_str(&format_sig6(s));
        }
        row.push(',');
        row.push(if p.degenerate { '1' } else { '0' });
        writeln!(file, "{row}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct GridDoc {
    tau_start_ns: f64,
    tau_end_ns: f64,
    tau_step_ns: f64,
    theta_start_deg: f64,
    theta_end_deg: f64,
    theta_step_deg: f64,
}

impl From<&SweepGrid> for GridDoc {
    fn from(grid: &SweepGrid) -> Self {
        Self {
            tau_start_ns: round_sig6(grid.tau_start_ns),
            tau_end_ns: round_sig6(grid.tau_end_ns),
            tau_step_ns: round_sig6(grid.tau_step_ns),
            theta_start_deg: round_sig6(grid.theta_start_deg),
            theta_end_deg: round_sig6(grid.theta_end_deg),
            theta_step_deg: round_sig6(grid.theta_step_deg),
        }
    }
}

#[derive(Serialize)]
struct SummaryDoc {
    sigma_min: f64,
    tau_min_ns: f64,
    theta_min_deg: f64,
    sigma_a_min: f64,
    sigma_min_raw: f64,
    tau_min_raw_ns: f64,
    sigma_0: f64,
    n_spins: usize,
    mode: String,
    degenerate_points: usize,
    grid: GridDoc,
}

/// Flat key/value summary of a sweep as JSON.
pub fn write_summary(summary: &SweepSummary, path: &Path) -> Result<()> {
    let doc = SummaryDoc {
        sigma_min: round_sig6(summary.sigma_min),
        tau_min_ns: round_sig6(summary.tau_min_ns),
        theta_min_deg: round_sig6(summary.theta_min_deg),
        sigma_a_min: round_sig6(summary.sigma_a_min),
        sigma_min_raw: round_sig6(summary.sigma_min_raw),
        tau_min_raw_ns: round_sig6(summary.tau_min_raw_ns),
        sigma_0: round_sig6(summary.sigma_0),
        n_spins: summary.n_spins,
        mode: ObservableModeConfig::from_internal(summary.observable_mode).label(),
        degenerate_points: summary.degenerate_points,
        grid: GridDoc::from(&summary.grid),
    };
    let mut file = create_file(path)?;
    let text = serde_json::to_string_pretty(&doc).expect("summary serialization cannot fail");
    writeln!(file, "{text}")?;
    Ok(())
}

/// Ellipse samples as `(theta_deg, sigma_y, sigma_z)` rows: the uncertainty
/// axes normalized by the mean-spin amplitude at that tau.
pub fn write_ellipse(samples: &[ThetaSample], j_mag: f64, path: &Path) -> Result<()> {
    refuse_empty("ellipse", samples.is_empty())?;
    if !(j_mag > 0.0) {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            format!("cannot normalize ellipse by j_mag = {j_mag}"),
        )));
    }
    let mut file = create_file(path)?;
    writeln!(file, "theta_deg,sigma_y,sigma_z")?;
    for s in samples {
        writeln!(
            file,
            "{},{},{}",
            format_sig6(s.theta_deg),
            format_sig6(s.delta_y / j_mag),
            format_sig6(s.delta_z / j_mag),
        )?;
    }
    Ok(())
}

/// Per-site entropy trace as CSV.
pub fn write_entropy_trace(trace: &EntropyTrace, path: &Path) -> Result<()> {
    refuse_empty("entropy trace", trace.taus_ns.is_empty())?;
    let mut file = create_file(path)?;
    let mut header = String::from("tau_ns");
    for site in 1..=trace.n_spins {
        header.push_str(&format!(",entropy_{site}"));
    }
    writeln!(file, "{header}")?;
    for (tau, row) in trace.taus_ns.iter().zip(trace.entropies.iter()) {
        let mut line = format_sig6(*tau);
        for &s in row {
            line.push(',');
            line.push_str(&format_sig6(s));
        }
        writeln!(file, "{line}")?;
    }
    Ok(())
}
