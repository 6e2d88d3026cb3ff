//! PointSet CSV (`x,mantissa,pow2,tau_halves`) and the JSON shape used for hull
//! and chain results.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::point::{x_i64, LogPoint, PointSet, Tau};
use crate::error::{Error, Result};
use crate::polynomials::Coefficient;

fn field(record: &csv::StringRecord, i: usize, line: u64) -> Result<&str> {
    record
        .get(i)
        .ok_or_else(|| Error::Parse(format!("line {line}: expected 4 fields")))
}

/// Parse a PointSet CSV. `#` lines are comments; an optional header row whose
/// first field is `x` is skipped.
pub fn parse_point_csv(text: &str) -> Result<PointSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let line = record.position().map_or(n as u64 + 1, |p| p.line());
        if record.len() != 4 {
            return Err(Error::Parse(format!("line {line}: expected 4 fields, found {}", record.len())));
        }
        if n == 0 && field(&record, 0, line)? == "x" {
            continue;
        }
        let bad = |what: &str, v: &str| Error::Parse(format!("line {line}: bad {what} {v:?}"));
        let x: BigInt = field(&record, 0, line)?.parse().map_err(|_| bad("x", &record[0]))?;
        let mantissa: BigRational = field(&record, 1, line)?.parse().map_err(|_| bad("mantissa", &record[1]))?;
        let pow2: BigInt = field(&record, 2, line)?.parse().map_err(|_| bad("pow2", &record[2]))?;
        let tau_halves: i64 = field(&record, 3, line)?.parse().map_err(|_| bad("tau_halves", &record[3]))?;
        points.push(LogPoint::new(x, Coefficient::new(mantissa, pow2), tau_halves)?);
    }
    Ok(PointSet::new(points))
}

pub fn to_point_csv(set: &PointSet) -> String {
    let mut out = String::new();
    for p in set {
        out.push_str(&format!("{},{},{},{}\n", p.x, p.r.mantissa(), p.r.pow2(), p.tau_halves));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct PointJson {
    pub x: serde_json::Value,
    pub mantissa: String,
    pub pow2: String,
    pub tau_halves: i64,
    pub y_approx: f64,
}

impl PointJson {
    pub fn new(p: &LogPoint, tau: &Tau) -> Self {
        PointJson {
            x: x_i64(p).map_or_else(|| p.x.to_string().into(), Into::into),
            mantissa: p.r.mantissa().to_string(),
            pow2: p.r.pow2().to_string(),
            tau_halves: p.tau_halves,
            y_approx: p.y_approx(tau),
        }
    }
}

/// `{size, vertices}` as emitted by the `hull` and `chain` commands.
#[derive(Debug, Clone, Serialize)]
pub struct VertexReport {
    pub size: usize,
    pub vertices: Vec<PointJson>,
}

impl VertexReport {
    pub fn new<'a>(points: impl IntoIterator<Item = &'a LogPoint>, tau: &Tau) -> Self {
        let vertices: Vec<PointJson> = points.into_iter().map(|p| PointJson::new(p, tau)).collect();
        VertexReport {
            size: vertices.len(),
            vertices,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let text = "x,mantissa,pow2,tau_halves\n# comment\n0,1,0,0\n3, 3/5 ,-7,2\n-4,1,100,-1\n";
        let set = parse_point_csv(text).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(parse_point_csv(&to_point_csv(&set)).unwrap(), set);
    }

    #[test]
    fn csv_errors() {
        assert!(parse_point_csv("0,1,0\n").is_err());
        assert!(parse_point_csv("0,0,0,0\n").is_err());
        assert!(parse_point_csv("a,1,0,0\n").is_err());
    }

    #[test]
    fn json_shape() {
        let tau = Tau::from_integer(4).unwrap();
        let set = parse_point_csv("1,1,3,0\n").unwrap();
        let v = serde_json::to_value(VertexReport::new(&set, &tau)).unwrap();
        assert_eq!(v["size"], 1);
        assert_eq!(v["vertices"][0]["x"], 1);
        assert_eq!(v["vertices"][0]["pow2"], "3");
    }
}
