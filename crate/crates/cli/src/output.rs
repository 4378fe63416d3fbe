//! CSV and SVG emission for scan results.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

/// Format a float with 17 significant digits so that re-parsing the text
/// reproduces the original bits exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write a CSV file atomically: the rows land in a sibling temp file which is
/// renamed into place on success, so a failed run leaves no partial output.
pub fn write_csv(path: &Path, header: &str, rows: &[Vec<f64>]) -> Result<()> {
    let mut body = String::with_capacity(64 * (rows.len() + 1));
    body.push_str(header);
    body.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
        body.push_str(&cells.join(","));
        body.push('\n');
    }
    let tmp = path.with_extension("csv.tmp");
    let cleanup = |e: anyhow::Error| {
        let _ = fs::remove_file(&tmp);
        e
    };
    fs::write(&tmp, &body)
        .with_context(|| format!("writing {}", tmp.display()))
        .map_err(cleanup)?;
    fs::rename(&tmp, path)
        .with_context(|| format!("renaming {} into place", path.display()))
        .map_err(cleanup)?;
    Ok(())
}

/// Minimal standalone SVG line plot of one (x, y) series.
pub fn write_svg(path: &Path, points: &[(f64, f64)], x_label: &str, y_label: &str) -> Result<()> {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const M: f64 = 60.0; // margin around the plot area

    let finite = points.iter().filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in finite {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(y);
        y_hi = y_hi.max(y);
    }
    if !x_lo.is_finite() || !y_lo.is_finite() {
        anyhow::bail!("no finite points to plot");
    }
    // avoid zero-width ranges for constant series
    if x_hi - x_lo < 1e-300 {
        x_hi = x_lo + 1.0;
    }
    if y_hi - y_lo < 1e-300 {
        y_hi = y_lo + 1.0;
    }
    let sx = |x: f64| M + (x - x_lo) / (x_hi - x_lo) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y_lo) / (y_hi - y_lo) * (H - 2.0 * M);

    let mut poly = String::new();
    for &(x, y) in points {
        poly.push_str(&format!("{:.2},{:.2} ", sx(x), sy(y)));
    }
    let svg = format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<line x1=\"{m}\" y1=\"{ym}\" x2=\"{xm}\" y2=\"{ym}\" stroke=\"black\"/>\n",
            "<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{ym}\" stroke=\"black\"/>\n",
            "<text x=\"{xc}\" y=\"{h2}\" text-anchor=\"middle\" font-size=\"14\">{xl}</text>\n",
            "<text x=\"14\" y=\"{yc}\" text-anchor=\"middle\" font-size=\"14\" ",
            "transform=\"rotate(-90 14 {yc})\">{yl}</text>\n",
            "<text x=\"{m}\" y=\"{yt}\" font-size=\"11\">{x0}</text>\n",
            "<text x=\"{xm}\" y=\"{yt}\" text-anchor=\"end\" font-size=\"11\">{x1}</text>\n",
            "<text x=\"{m2}\" y=\"{ym}\" font-size=\"11\">{y0}</text>\n",
            "<text x=\"{m2}\" y=\"{m}\" font-size=\"11\">{y1}</text>\n",
            "<polyline points=\"{poly}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n",
            "</svg>\n"
        ),
        w = W,
        h = H,
        m = M,
        m2 = M + 4.0,
        xm = W - M,
        ym = H - M,
        xc = W / 2.0,
        yc = H / 2.0,
        h2 = H - 20.0,
        yt = H - M + 16.0,
        xl = x_label,
        yl = y_label,
        x0 = format!("{x_lo:.4}"),
        x1 = format!("{x_hi:.4}"),
        y0 = format!("{y_lo:.4}"),
        y1 = format!("{y_hi:.4}"),
        poly = poly.trim_end(),
    );
    fs::write(path, svg).with_context(|| format!("writing {}", path.display()))
}
