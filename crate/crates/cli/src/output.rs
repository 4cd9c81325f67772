//! Number rendering and atomic file output.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;
use tfd_core::Complex;

use crate::config::CliError;

/// Significant digits in CSV cells.
pub const CSV_DIGITS: usize = 12;
/// Significant digits in JSON number strings.
pub const JSON_DIGITS: usize = 17;

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn finite(x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        // collapse -0 so signs never depend on rounding paths
        Ok(if x == 0.0 { 0.0 } else { x })
    } else {
        Err(CliError::Property(format!("non-finite value {x} in output")))
    }
}

/// `%g`-style rendering with [`CSV_DIGITS`] significant digits.
pub fn csv_number(x: f64) -> Result<String, CliError> {
    let x = finite(x)?;
    let sci = format!("{:.*e}", CSV_DIGITS - 1, x);
    let (mant, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..CSV_DIGITS as i32).contains(&exp) {
        let decimals = (CSV_DIGITS as i32 - 1 - exp) as usize;
        Ok(trim_zeros(&format!("{x:.decimals$}")).to_string())
    } else {
        Ok(format!("{}e{}", trim_zeros(mant), exp))
    }
}

/// JSON number as a string with [`JSON_DIGITS`] significant digits.
pub fn json_number(x: f64) -> Result<Value, CliError> {
    let x = finite(x)?;
    Ok(Value::String(format!("{:.*e}", JSON_DIGITS - 1, x)))
}

/// `[re, im]` pair of JSON number strings.
pub fn json_complex(c: Complex) -> Result<Value, CliError> {
    Ok(Value::Array(vec![json_number(c.re)?, json_number(c.im)?]))
}

pub fn json_complexes(cs: &[Complex]) -> Result<Value, CliError> {
    cs.iter().map(|&c| json_complex(c)).collect::<Result<_, _>>().map(Value::Array)
}

/// Reads back a number written by [`json_number`].
pub fn parse_json_number(v: &Value) -> Option<f64> {
    v.as_str()?.parse().ok()
}

/// CSV table with a mandatory header and LF line endings.
#[derive(Debug, Clone)]
pub struct Table {
    text: String,
    width: usize,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: format!("{}\n", header.join(",")),
            width: header.len(),
        }
    }

    pub fn push(&mut self, row: &[f64]) -> Result<(), CliError> {
        assert_eq!(row.len(), self.width, "row width must match the header");
        let cells = row.iter().map(|&x| csv_number(x)).collect::<Result<Vec<_>, _>>()?;
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
        Ok(())
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes through a sibling temp file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
