//! Curve and energy-log file formats.
//!
//! Curves are JSON arrays of `[y1, y2]` rows (closed implicitly) or CSV
//! with header `y1,y2`. Every float is written with 17 significant digits,
//! so a parse/serialize round trip reproduces the file byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use elastica_core::{DiscreteCurve, EnergyReport};

use crate::error::{AppError, AppResult};

pub const LOG_HEADER: [&str; 6] = ["t", "elastic", "penalized", "length", "tac", "grad_l2"];

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn curve_to_json(c: &DiscreteCurve) -> String {
    let mut s = String::from("[\n");
    let n = c.n_samples();
    for (i, p) in c.xy().iter().enumerate() {
        let sep = if i + 1 < n { "," } else { "" };
        writeln!(s, "  [{}, {}]{sep}", fmt_f64(p[0]), fmt_f64(p[1])).unwrap();
    }
    s.push_str("]\n");
    s
}

pub fn curve_to_csv(c: &DiscreteCurve) -> String {
    let mut s = String::from("y1,y2\n");
    for p in c.xy() {
        writeln!(s, "{},{}", fmt_f64(p[0]), fmt_f64(p[1])).unwrap();
    }
    s
}

pub fn parse_curve_json(text: &str) -> Result<DiscreteCurve, String> {
    let xy: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    DiscreteCurve::from_xy(xy).map_err(|e| e.to_string())
}

pub fn parse_curve_csv(text: &str) -> Result<DiscreteCurve, String> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| e.to_string())?;
    if header.iter().map(str::trim).ne(["y1", "y2"]) {
        return Err(format!("expected header y1,y2, found {}", header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut xy = Vec::new();
    for row in rdr.deserialize::<(f64, f64)>() {
        let (a, b) = row.map_err(|e| e.to_string())?;
        xy.push([a, b]);
    }
    DiscreteCurve::from_xy(xy).map_err(|e| e.to_string())
}

/// Reads a curve, choosing the format by extension (`.csv`, otherwise JSON).
pub fn read_curve(path: &Path) -> AppResult<DiscreteCurve> {
    let text = fs::read_to_string(path).map_err(AppError::io(path))?;
    let parsed = match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("csv") => parse_curve_csv(&text),
        _ => parse_curve_json(&text),
    };
    parsed.map_err(|m| AppError::format(path, m))
}

pub fn write_curve(path: &Path, c: &DiscreteCurve) -> AppResult<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("csv") => curve_to_csv(c),
        _ => curve_to_json(c),
    };
    fs::write(path, text).map_err(AppError::io(path))
}

/// Fixed-width so that lexical order is time order.
pub fn snapshot_name(t: f64) -> String {
    format!("curve_t{t:021.12}.json")
}

pub fn log_row(t: f64, r: &EnergyReport) -> [f64; 6] {
    [t, r.elastic, r.penalized, r.length, r.total_abs_curv, r.grad_l2]
}

pub fn energy_log_to_csv(rows: &[[f64; 6]]) -> String {
    let mut s = LOG_HEADER.join(",");
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| fmt_f64(*x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn parse_energy_log(text: &str) -> Result<Vec<[f64; 6]>, String> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(LOG_HEADER) {
        return Err(format!("expected header {}", LOG_HEADER.join(",")));
    }
    rdr.deserialize::<[f64; 6]>().map(|r| r.map_err(|e| e.to_string())).collect()
}

pub fn read_energy_log(path: &Path) -> AppResult<Vec<[f64; 6]>> {
    let text = fs::read_to_string(path).map_err(AppError::io(path))?;
    parse_energy_log(&text).map_err(|m| AppError::format(path, m))
}

/// A two-column plot table.
pub fn xy_table(header: [&str; 2], rows: impl IntoIterator<Item = (f64, f64)>) -> String {
    let mut s = format!("{},{}\n", header[0], header[1]);
    for (a, b) in rows {
        writeln!(s, "{},{}", fmt_f64(a), fmt_f64(b)).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use elastica_core::shapes;

    #[test]
    fn json_round_trip_is_byte_exact() {
        let c = shapes::perturbed_circle(1.5, 1.0, 3, 0.05, 32).unwrap();
        let s = curve_to_json(&c);
        let back = parse_curve_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(curve_to_json(&back), s);
    }

    #[test]
    fn csv_needs_the_header() {
        assert!(parse_curve_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn snapshot_names_sort_by_time() {
        let mut names: Vec<String> = [10.5, 0.001, 2.0, 1234.0].iter().map(|t| snapshot_name(*t)).collect();
        let by_time = names.clone();
        names.sort();
        assert_eq!(names, vec![by_time[1].clone(), by_time[2].clone(), by_time[0].clone(), by_time[3].clone()]);
    }
}
