use std::io::Read;
use std::path::Path;

use pedalgeom::{Point, Polygon};
use serde_json::Value;

use crate::CliError;

/// Contents of `path`, or of stdin when `path` is `-`.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A polygon file: either `{"vertices": ...}` or a report whose outputs
/// carry a `polygon`, so commands chain.
pub fn read_polygon(path: &Path) -> Result<Polygon, CliError> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let poly = if value.get("vertices").is_some() {
        value
    } else if let Some(p) = value.get("outputs").and_then(|o| o.get("polygon")) {
        p.clone()
    } else {
        return Err(CliError::Input(format!(
            "{}: expected {{\"vertices\": [[x, y], ...]}}",
            path.display()
        )));
    };
    serde_json::from_value(poly).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parse `x,y`.
pub fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("not a finite number: {t:?}"))
    };
    Ok(Point::new(parse(x)?, parse(y)?))
}
