//! CSV and SVG writers. Output is a pure function of the input.

use std::fmt::Write as _;

use cyclotrace_core::loops::{to_f64, SuspensionPoint};
use cyclotrace_core::{PlLoop, SuspensionLoop};

/// Extra uniform rows per suspension-loop CSV.
pub const SUSPENSION_ROWS: usize = 256;

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ASCII output")
}

fn row(w: &mut csv::Writer<Vec<u8>>, t: f64, coords: &[f64]) {
    let cells = std::iter::once(t).chain(coords.iter().copied()).map(|x| x.to_string());
    w.write_record(cells).expect("in-memory writer");
}

fn header(w: &mut csv::Writer<Vec<u8>>, dim: usize, extra: Option<&str>) {
    let names =
        std::iter::once("t".to_string()).chain((1..=dim).map(|j| format!("x{j}"))).chain(extra.map(String::from));
    w.write_record(names).expect("in-memory writer");
}

/// `t,x1..xd` at every vertex, opened at `t = 0` and closed at `t = 1`.
pub fn loop_csv(l: &PlLoop) -> String {
    let mut out = writer();
    header(&mut out, l.dim(), None);
    let start = l.eval(0.0);
    if l.times()[0] != 0.0 {
        row(&mut out, 0.0, &start);
    }
    for (t, p) in l.vertices() {
        row(&mut out, to_f64(t), p);
    }
    row(&mut out, 1.0, &start);
    finish(out)
}

/// `t,x1..xd,height`: the label of the point (the basepoint when
/// collapsed) and its suspension height, at every excursion endpoint and
/// on a uniform grid.
pub fn suspension_csv(l: &SuspensionLoop) -> String {
    let b = l.basepoint();
    let mut ts: Vec<f64> = (0..=SUSPENSION_ROWS).map(|k| k as f64 / SUSPENSION_ROWS as f64).collect();
    ts.extend(l.breakpoints());
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let mut out = writer();
    header(&mut out, b.len(), Some("height"));
    for t in ts {
        let mut coords = match l.eval(t) {
            SuspensionPoint::Base => b.to_vec(),
            SuspensionPoint::At { label, .. } => label,
        };
        coords.push(match l.eval(t) {
            SuspensionPoint::Base => 0.0,
            SuspensionPoint::At { height, .. } => height,
        });
        row(&mut out, t, &coords);
    }
    finish(out)
}

/// Parses `t,x1..xd` rows after a header line.
pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>, String> {
    if text.trim().is_empty() {
        return Err("empty CSV".into());
    }
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    reader
        .records()
        .map(|record| {
            let record = record.map_err(|e| e.to_string())?;
            let line = record.position().map_or(0, |p| p.line());
            record.iter().map(|c| c.parse::<f64>().map_err(|e| format!("line {line}: {e}"))).collect()
        })
        .collect()
}

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

/// A 2-dimensional projection of CSV rows: `(x1, x2)` when there are two
/// or more coordinates, `(t, x1)` otherwise.
pub fn svg_from_rows(rows: &[Vec<f64>]) -> Result<String, String> {
    if rows.is_empty() {
        return Err("no rows to draw".into());
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| match r.len() {
            0 | 1 => Err("rows need at least one coordinate after t".to_string()),
            2 => Ok((r[0], r[1])),
            _ => Ok((r[1], r[2])),
        })
        .collect::<Result<_, _>>()?;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let mut d = String::new();
    for (j, &(x, y)) in pts.iter().enumerate() {
        let px = MARGIN + (x - x0) * scale;
        let py = SIZE - MARGIN - (y - y0) * scale;
        let _ = write!(d, "{}{px:.3} {py:.3}", if j == 0 { "M" } else { " L" });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(out, r#"  <path d="{d}" fill="none" stroke="black" stroke-width="1.5"/>"#);
    out.push_str("</svg>\n");
    Ok(out)
}
