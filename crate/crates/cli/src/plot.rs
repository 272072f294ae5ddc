//! SVG 1.1 rendering of previously computed artifacts. Nothing here computes
//! or changes a numeric result.

use std::fmt::Write as _;

use anyhow::{bail, Context};
use serde_json::Value;

use mplab_core::exactlin::rat_to_f64;
use mplab_core::RationalPolytope;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 60.0;
const ROW: f64 = 36.0;

fn header(width: f64, height: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Labelled one-dimensional polytopes drawn on a shared alpha axis.
pub fn polytopes_svg(rows: &[(String, RationalPolytope)]) -> anyhow::Result<String> {
    if rows.iter().any(|(_, p)| p.dim() != 1) {
        bail!("only one-dimensional polytopes can be plotted");
    }
    let hi =
        rows.iter().flat_map(|(_, p)| p.vertices().iter().map(|v| rat_to_f64(&v[0]))).fold(1.0f64, f64::max).ceil();
    let lo =
        rows.iter().flat_map(|(_, p)| p.vertices().iter().map(|v| rat_to_f64(&v[0]))).fold(0.0f64, f64::min).floor();
    let label_w = 120.0;
    let x = |v: f64| label_w + MARGIN / 2.0 + (v - lo) / (hi - lo) * (WIDTH - label_w - MARGIN);
    let height = MARGIN + ROW * rows.len() as f64 + 30.0;
    let mut out = header(WIDTH, height);
    let axis_y = height - 40.0;
    writeln!(out, "<line x1=\"{:.2}\" y1=\"{axis_y}\" x2=\"{:.2}\" y2=\"{axis_y}\" stroke=\"black\"/>", x(lo), x(hi))?;
    for t in (lo as i64)..=(hi as i64) {
        let tx = x(t as f64);
        writeln!(
            out,
            "<line x1=\"{tx:.2}\" y1=\"{axis_y}\" x2=\"{tx:.2}\" y2=\"{}\" stroke=\"black\"/>",
            axis_y + 5.0
        )?;
        writeln!(out, "<text x=\"{tx:.2}\" y=\"{}\" text-anchor=\"middle\">{t}</text>", axis_y + 18.0)?;
    }
    writeln!(out, "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"end\">alpha</text>", x(hi), axis_y - 6.0)?;
    for (i, (label, p)) in rows.iter().enumerate() {
        let y = MARGIN / 2.0 + ROW * i as f64 + ROW / 2.0;
        writeln!(out, "<text x=\"8\" y=\"{:.2}\">{}</text>", y + 4.0, escape(label))?;
        let v: Vec<f64> = p.vertices().iter().map(|v| rat_to_f64(&v[0])).collect();
        match v.as_slice() {
            [] => writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"gray\">empty</text>", x(lo), y + 4.0)?,
            [a] => writeln!(out, "<circle cx=\"{:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"black\"/>", x(*a))?,
            [a, b] => {
                writeln!(
                    out,
                    "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"black\" stroke-width=\"3\"/>",
                    x(*a),
                    x(*b)
                )?;
                for e in [a, b] {
                    writeln!(out, "<circle cx=\"{:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"black\"/>", x(*e))?;
                }
            }
            _ => unreachable!("a one-dimensional polytope has at most two vertices"),
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Scatter plot of two moment-map coordinates.
pub fn scatter_svg(points: &[(f64, f64)], x_label: &str, y_label: &str) -> anyhow::Result<String> {
    let extent = points.iter().fold(1e-9f64, |m, (a, b)| m.max(a.abs()).max(b.abs())) * 1.05;
    let size = WIDTH;
    let inner = size - 2.0 * MARGIN;
    let map = |v: f64| MARGIN + (v + extent) / (2.0 * extent) * inner;
    let flip = |v: f64| size - map(v);
    let mut out = header(size, size);
    let c = size / 2.0;
    writeln!(out, "<line x1=\"{MARGIN}\" y1=\"{c}\" x2=\"{}\" y2=\"{c}\" stroke=\"gray\"/>", size - MARGIN)?;
    writeln!(out, "<line x1=\"{c}\" y1=\"{MARGIN}\" x2=\"{c}\" y2=\"{}\" stroke=\"gray\"/>", size - MARGIN)?;
    writeln!(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>", size - MARGIN, c - 6.0, escape(x_label))?;
    writeln!(out, "<text x=\"{}\" y=\"{}\">{}</text>", c + 6.0, MARGIN - 6.0, escape(y_label))?;
    writeln!(out, "<text x=\"{}\" y=\"{}\">{extent:.3}</text>", size - MARGIN, c + 16.0)?;
    out.push_str("<g fill=\"steelblue\" fill-opacity=\"0.4\">\n");
    for (a, b) in points {
        writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.5\"/>", map(*a), flip(*b))?;
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// Polytopes from any JSON document emitted by the polytope, realpolytope
/// or catalog commands, or a bare list of polytopes.
pub fn polytopes_from_json(text: &str) -> anyhow::Result<Vec<(String, RationalPolytope)>> {
    let doc: Value = serde_json::from_str(text).context("input is not JSON")?;
    let poly = |v: &Value| -> anyhow::Result<RationalPolytope> { Ok(serde_json::from_value(v.clone())?) };
    if doc.get("dim").is_some() {
        return Ok(vec![("polytope".into(), poly(&doc)?)]);
    }
    if let Some(entries) = doc.get("entries").and_then(Value::as_array) {
        return entries
            .iter()
            .map(|e| Ok((e["class"].as_str().unwrap_or("?").to_string(), poly(&e["polytope"])?)))
            .collect();
    }
    if let (Some(a), Some(b)) = (doc.get("intersection"), doc.get("membership")) {
        return Ok(vec![("intersection".into(), poly(a)?), ("membership".into(), poly(b)?)]);
    }
    if let Some(p) = doc.get("polytope") {
        return Ok(vec![(doc["class"].as_str().unwrap_or("polytope").to_string(), poly(p)?)]);
    }
    if let Some(list) = doc.as_array() {
        return list.iter().enumerate().map(|(i, v)| Ok((format!("#{i}"), poly(v)?))).collect();
    }
    bail!("no polytope found in the JSON input")
}

/// `(phi1, phi3)` pairs from a sample CSV.
pub fn projections_from_csv(text: &str) -> anyhow::Result<Vec<(f64, f64)>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name).with_context(|| format!("missing column {name}"));
    let (i, j) = (col("phi1")?, col("phi3")?);
    reader
        .records()
        .map(|r| {
            let r = r?;
            Ok((r[i].parse()?, r[j].parse()?))
        })
        .collect()
}

pub fn render(text: &str) -> anyhow::Result<String> {
    if text.trim_start().starts_with(['{', '[']) {
        polytopes_svg(&polytopes_from_json(text)?)
    } else {
        scatter_svg(&projections_from_csv(text)?, "phi1", "phi3")
    }
}
