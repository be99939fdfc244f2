use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `x` with 12 significant digits, trailing zeros trimmed, exponent form
/// outside `[1e-5, 1e12)`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mant), exp)
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

/// JSON document carrying the tool version and the config echo.
pub fn envelope<T: Serialize>(config: &Value, result: &T) -> String {
    let doc = json!({
        "tool": "honeylab",
        "version": VERSION,
        "config": config,
        "result": result,
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// CSV text with `#` header lines for version, config and extra keys.
pub fn csv_text(config: &Value, extra: &[(&str, String)], header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut out = format!("# honeylab {VERSION}\n# config: {}\n", serde_json::to_string(config).expect("config"));
    for (k, v) in extra {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Csv(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| CliError::Csv(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).expect("utf8"));
    Ok(out)
}

/// Parsed CSV: `# key: value` header lines and the data records.
pub struct CsvDoc {
    pub keys: Vec<(String, String)>,
    pub records: Vec<csv::StringRecord>,
}

pub fn parse_csv(text: &str) -> Result<CsvDoc, CliError> {
    let keys = text
        .lines()
        .filter_map(|l| l.strip_prefix('#'))
        .filter_map(|l| l.split_once(':'))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect();
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let records = r
        .records()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Csv(e.to_string()))?;
    Ok(CsvDoc { keys, records })
}
