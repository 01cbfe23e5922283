use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use saw_forge::{Point, Polygon, Walk};
use serde_json::{json, Map, Value};

use crate::Failure;

pub const SCHEMA: &str = "saw-forge/1";

/// Rewrites every JSON number as a decimal string.
pub fn stringify_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => *v = Value::String(n.to_string()),
        Value::Array(a) => a.iter_mut().for_each(stringify_numbers),
        Value::Object(o) => o.values_mut().for_each(stringify_numbers),
        _ => {}
    }
}

pub fn point(p: &Point) -> Value {
    json!(p.coords())
}

/// `{"d": .., "vertices": [..]}`.
pub fn walk(w: &Walk) -> Value {
    serde_json::to_value(w).unwrap_or(Value::Null)
}

/// `{"d": .., "vertices": [..], "edges": [..]}` with the canonical closed tour.
pub fn polygon(p: &Polygon) -> Value {
    serde_json::to_value(p).unwrap_or(Value::Null)
}

/// A finished report: the result body plus the pass/fail verdict.
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub first_failure: Option<String>,
}

impl Report {
    pub fn ok(command: &'static str, config: Value, result: Value) -> Report {
        Report {
            command,
            config,
            result,
            first_failure: None,
        }
    }

    pub fn to_json(&self, argv: &[String], deterministic: bool) -> Value {
        let mut meta = Map::new();
        meta.insert("schema".into(), json!(SCHEMA));
        meta.insert("command".into(), json!(self.command));
        meta.insert("argv".into(), json!(argv));
        meta.insert("config".into(), self.config.clone());
        if !deterministic {
            let now = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            meta.insert("timestamp".into(), json!(now));
        }
        meta.insert("result".into(), self.result.clone());
        meta.insert(
            "status".into(),
            json!({
                "ok": self.first_failure.is_none(),
                "first_failure": self.first_failure,
            }),
        );
        let mut v = Value::Object(meta);
        stringify_numbers(&mut v);
        v
    }
}

pub fn write_json(v: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Io(e.to_string()))
}

pub fn is_csv(p: &Path) -> bool {
    p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads a polygon from a report carrying `polygon` (top level or under
/// `result`), a `{"vertices": [..]}` object, or a bare vertex array.
/// Coordinates may be numbers or decimal strings; a repeated closing
/// vertex is dropped.
pub fn read_polygon(path: &Path) -> Result<Polygon, Failure> {
    let bad = |m: &str| Failure::Input(format!("{}: {m}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| bad(&e.to_string()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    let mut arr = &v;
    if let Some(p) = arr.get("polygon").or_else(|| arr.get("result").and_then(|r| r.get("polygon"))) {
        arr = p;
    }
    if let Some(vs) = arr.get("vertices") {
        arr = vs;
    }
    let coord = |c: &Value| -> Option<i32> {
        match c {
            Value::Number(n) => n.as_i64().and_then(|x| i32::try_from(x).ok()),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        }
    };
    let mut pts = Vec::new();
    for p in arr.as_array().ok_or_else(|| bad("polygon must be an array"))? {
        let cs = p
            .as_array()
            .ok_or_else(|| bad("vertex must be an array"))?
            .iter()
            .map(coord)
            .collect::<Option<Vec<i32>>>()
            .ok_or_else(|| bad("coordinates must be integers"))?;
        pts.push(Point::try_new(&cs).map_err(|e| bad(&e.to_string()))?);
    }
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    Polygon::from_cycle(&pts).map_err(|e| bad(&e.to_string()))
}
