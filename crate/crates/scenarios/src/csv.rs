use std::io::Write;

use crate::error::{Result, ScenarioError};
use crate::pipeline::TimeSeriesRecord;

pub const CSV_HEADER: &str = "t,s_x,s_y,s_z,s_len,t_x,t_y,t_z,t_len,doe,capacity,entropy_B,purity";

/// Magnitudes below this print as `0`.
const ZERO_FLOOR: f64 = 1e-12;
const SIG_DIGITS: usize = 9;

/// Shortest `%.9g`-style rendering: 9 significant digits, trailing zeros
/// dropped, exponent form outside `[1e-5, 1e9)`.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < ZERO_FLOOR {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIG_DIGITS as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Write the header and one row per record, LF-terminated.
pub fn emit_csv<W: Write>(records: &[TimeSeriesRecord], mut out: W) -> Result<()> {
    if records.is_empty() {
        return Err(ScenarioError::Config("no records to emit".into()));
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        write!(out, "{:.9}", r.t)?;
        for (_, v) in r.columns() {
            write!(out, ",{}", format_sig(v))?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}
