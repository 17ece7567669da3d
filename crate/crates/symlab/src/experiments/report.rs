//! CSV and SVG output for run records and decay tables.
//!
//! Files are written atomically (temp sibling, rename on success) and the
//! bytes are a pure function of the inputs: floats print in shortest
//! round-trip form and nothing time- or path-dependent enters the output.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::minkowski::RunRecord;
use crate::experiments::decay::DecayTable;

/// Write bytes to `path` via a temp sibling and rename, so failed runs
/// leave no partial files behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// CSV for a run: `round,count,eps,mstar,rin,rout,vol,E2,E4,...`.
pub fn run_records_csv(records: &[RunRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no records to report".into()));
    }
    let energy_cols = records.iter().map(|r| r.energies.len()).max().unwrap_or(0);
    let mut out = String::from("round,count,eps,mstar,rin,rout,vol");
    for j in 0..energy_cols {
        write!(out, ",E{}", 2 * (j + 1)).unwrap();
    }
    out.push('\n');
    for r in records {
        write!(
            out,
            "{},{},{},{},{},{}",
            r.round, r.count, r.eps, r.mean_width_half, r.r_in, r.r_out
        )
        .unwrap();
        match r.volume {
            Some(v) => write!(out, ",{v}").unwrap(),
            None => out.push(','),
        }
        for j in 0..energy_cols {
            match r.energies.get(j) {
                Some(e) => write!(out, ",{e}").unwrap(),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_run_csv(path: &Path, records: &[RunRecord]) -> Result<()> {
    let csv = run_records_csv(records)?;
    write_atomic(path, csv.as_bytes())
}

pub fn write_decay_csv(path: &Path, table: &DecayTable) -> Result<()> {
    write_atomic(path, table.to_csv().as_bytes())
}

/// Self-contained SVG line chart of `eps` against symmetrization count,
/// log-scale vertically. One polyline per labeled series.
pub fn eps_series_svg(series: &[(String, Vec<(f64, f64)>)], title: &str) -> Result<String> {
    if series.iter().all(|(_, pts)| pts.is_empty()) {
        return Err(Error::InvalidArgument("no data points to plot".into()));
    }
    let width = 800.0;
    let height = 500.0;
    let margin = 60.0;
    let mut x_max = 1.0f64;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (_, pts) in series {
        for (x, y) in pts {
            if *y > 0.0 {
                x_max = x_max.max(*x);
                y_min = y_min.min(*y);
                y_max = y_max.max(*y);
            }
        }
    }
    if !y_min.is_finite() {
        return Err(Error::InvalidArgument("no positive values to plot".into()));
    }
    y_min = (y_min * 0.5).max(1e-16);
    y_max = (y_max * 2.0).max(y_min * 10.0);
    let lx = |x: f64| margin + (width - 2.0 * margin) * x / x_max;
    let ly = |y: f64| {
        let t = (y.ln() - y_min.ln()) / (y_max.ln() - y_min.ln());
        height - margin - (height - 2.0 * margin) * t
    };

    let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    let mut svg = String::new();
    write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    )
    .unwrap();
    write!(svg, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n").unwrap();
    write!(
        svg,
        "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        width / 2.0,
        xml_escape(title)
    )
    .unwrap();
    // axes
    write!(
        svg,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = margin,
        b = height - margin,
        r = width - margin,
        t = margin
    )
    .unwrap();
    // decade ticks on the log axis
    let mut decade = 10f64.powf(y_min.log10().floor());
    while decade <= y_max {
        if decade >= y_min {
            let y = ly(decade);
            write!(
                svg,
                "<line x1=\"{m}\" y1=\"{y}\" x2=\"{r}\" y2=\"{y}\" stroke=\"#dddddd\"/>\n<text x=\"{tx}\" y=\"{ty}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{label:e}</text>\n",
                m = margin,
                r = width - margin,
                tx = margin - 6.0,
                ty = y + 4.0,
                label = decade
            )
            .unwrap();
        }
        decade *= 10.0;
    }
    // x ticks: quarters
    for q in 0..=4 {
        let x = x_max * q as f64 / 4.0;
        write!(
            svg,
            "<text x=\"{tx}\" y=\"{ty}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{x:.0}</text>\n",
            tx = lx(x),
            ty = height - margin + 18.0
        )
        .unwrap();
    }
    write!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">symmetrizations</text>\n",
        width / 2.0,
        height - 14.0
    )
    .unwrap();
    for (idx, (label, pts)) in series.iter().enumerate() {
        let color = palette[idx % palette.len()];
        let path: Vec<String> = pts
            .iter()
            .filter(|(_, y)| *y > 0.0)
            .map(|(x, y)| format!("{:.2},{:.2}", lx(*x), ly(*y)))
            .collect();
        if path.is_empty() {
            continue;
        }
        write!(
            svg,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            path.join(" ")
        )
        .unwrap();
        write!(
            svg,
            "<text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\" fill=\"{color}\">{}</text>\n",
            xml_escape(label),
            x = width - margin + 4.0,
            y = margin + 16.0 * idx as f64
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_eps_svg(
    path: &Path,
    series: &[(String, Vec<(f64, f64)>)],
    title: &str,
) -> Result<()> {
    let svg = eps_series_svg(series, title)?;
    write_atomic(path, svg.as_bytes())
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
