use serde_json::Value;

/// Flattens a JSON report into `path: value` lines.
///
/// Objects nest with dots, arrays of objects with `[i]`; any other array is
/// printed as compact JSON on one line so points and traces stay readable.
pub fn human(value: &Value) -> String {
    let mut out = String::new();
    flatten(value, "", &mut out);
    out
}

fn flatten(value: &Value, path: &str, out: &mut String) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(v, &p, out);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, &format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => line(out, path, s),
        other => line(out, path, &other.to_string()),
    }
}

fn line(out: &mut String, path: &str, text: &str) {
    if path.is_empty() {
        out.push_str(text);
    } else {
        out.push_str(path);
        out.push_str(": ");
        out.push_str(text);
    }
    out.push('\n');
}
