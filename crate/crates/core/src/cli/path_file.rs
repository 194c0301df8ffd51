use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Interpolation, ScaledPath};

/// Read a `t,value` CSV (header optional, `#` comments ignored) into a linear path.
pub fn read_path(file: &Path) -> Result<ScaledPath> {
    let text = fs::read_to_string(file)?;
    parse_path(&text)
}

pub fn parse_path(text: &str) -> Result<ScaledPath> {
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse(format!("line {}: expected two fields \"t,value\"", lineno + 1)));
        };
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(t), Ok(v)) => {
                times.push(t);
                values.push(v);
            }
            _ if times.is_empty() && a == "t" => continue,
            _ => return Err(Error::Parse(format!("line {}: cannot parse {line:?}", lineno + 1))),
        }
    }
    if times.is_empty() {
        return Err(Error::Parse("path file has no data rows".into()));
    }
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Parse(format!("path times must be strictly increasing ({} then {})", w[0], w[1])));
        }
    }
    ScaledPath::new(times, values, Interpolation::Linear)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_header_and_comments() {
        let p = parse_path("t,value\n# identity\n0,0\n0.5,0.5\n1,1\n").unwrap();
        assert_eq!(p.times(), &[0.0, 0.5, 1.0]);
        assert_eq!(p.values(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_path("0,0\n0,0.5\n").is_err());
        assert!(parse_path("0,0\n0.5\n").is_err());
        assert!(parse_path("t,value\n").is_err());
        assert!(parse_path("0,0\n0.5,0.7\n0.7,0.6\n").is_err());
        assert!(parse_path("0.1,0\n").is_err());
    }
}
