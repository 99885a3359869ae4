//! Aligned text rendering of JSON reports, field for field.

use serde_json::Value;

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    block(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) => {
            let parts: Option<Vec<String>> = xs
                .iter()
                .map(|x| match x {
                    Value::Array(_) | Value::Object(_) => None,
                    _ => scalar(x),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn indent(depth: usize) -> String {
    "  ".repeat(depth)
}

fn block(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let pad = width - k.chars().count();
                        out.push_str(&format!("{}{k}:{} {s}\n", indent(depth), " ".repeat(pad)));
                    }
                    None => {
                        out.push_str(&format!("{}{k}:\n", indent(depth)));
                        block(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            if let Some(rows) = flat_rows(xs) {
                table(&rows.0, &rows.1, depth, out);
            } else {
                for x in xs {
                    out.push_str(&format!("{}-\n", indent(depth)));
                    block(x, depth + 1, out);
                }
            }
        }
        _ => {
            out.push_str(&indent(depth));
            out.push_str(&scalar(v).unwrap_or_default());
            out.push('\n');
        }
    }
}

/// Objects with the same keys and scalar values only.
fn flat_rows(xs: &[Value]) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let first = xs.first()?.as_object()?;
    let header: Vec<String> = first.keys().cloned().collect();
    let mut rows = Vec::with_capacity(xs.len());
    for x in xs {
        let m = x.as_object()?;
        if m.len() != header.len() {
            return None;
        }
        let row: Option<Vec<String>> = header.iter().map(|k| m.get(k).and_then(scalar)).collect();
        rows.push(row?);
    }
    Some((header, rows))
}

fn table(header: &[String], rows: &[Vec<String>], depth: usize, out: &mut String) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String], out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(&indent(depth));
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header, out);
    for r in rows {
        line(r, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tables_align() {
        let v = json!({"n": 2, "rows": [{"a": 1, "bb": "x"}, {"a": 10, "bb": "yy"}]});
        assert_eq!(text(&v), "n:    2\nrows:\n  a   bb\n  1   x\n  10  yy\n");
    }

    #[test]
    fn nested_objects_indent() {
        let v = json!({"outer": {"k": [1, 2]}});
        assert_eq!(text(&v), "outer:\n  k: [1, 2]\n");
    }
}
