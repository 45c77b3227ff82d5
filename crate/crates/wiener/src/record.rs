//! Per-evaluation records and their CSV schema, shared by all methods.

use num_complex::Complex64;
use std::io::Write;

use crate::error::Result;

/// One evaluation: method, optional kernel parameter, index (N or R), probe
/// point, computed value, ground truth and absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub method: String,
    pub param: Option<f64>,
    pub index: f64,
    pub point: Vec<f64>,
    pub value: Complex64,
    pub truth: Complex64,
    pub abs_error: f64,
}

/// CSV header for records with d probe coordinates:
/// method,param,index,x_1..x_d,value_re,value_im,truth_re,truth_im,abs_error
pub fn csv_header(d: usize) -> String {
    let mut cols = vec!["method".to_string(), "param".to_string(), "index".to_string()];
    cols.extend((1..=d).map(|j| format!("x_{j}")));
    cols.extend(
        ["value_re", "value_im", "truth_re", "truth_im", "abs_error"]
            .iter()
            .map(|s| s.to_string()),
    );
    cols.join(",")
}

pub fn write_csv<W: Write>(w: &mut W, d: usize, records: &[RunRecord]) -> Result<()> {
    writeln!(w, "{}", csv_header(d))?;
    for r in records {
        let mut cols = vec![
            r.method.clone(),
            r.param.map_or(String::new(), |p| p.to_string()),
            r.index.to_string(),
        ];
        cols.extend(r.point.iter().map(|c| c.to_string()));
        cols.push(r.value.re.to_string());
        cols.push(r.value.im.to_string());
        cols.push(r.truth.re.to_string());
        cols.push(r.truth.im.to_string());
        cols.push(r.abs_error.to_string());
        writeln!(w, "{}", cols.join(","))?;
    }
    Ok(())
}
