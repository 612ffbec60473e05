//! Input documents: one curve or one line arrangement each.
//!
//! Two encodings are accepted. A document whose first non-blank character is
//! `{` is read as JSON:
//!
//! ```text
//! {"kind": "curve", "degrees": [5], "singularities": ["6*T(2,3)"]}
//! {"kind": "arrangement", "lines": 7, "points": [[1,2,5],[1,3,6]]}
//! ```
//!
//! Anything else is read line by line as `key: value` pairs, with `#`
//! starting a comment:
//!
//! ```text
//! kind: curve
//! degrees: [5]
//! singularities: [T(2,3), T(2,3), 4*T(2,3)]
//! ```
//!
//! Curves take `degrees`, `singularities` and an optional `assignment` (the
//! zero-based component of each singularity). Arrangements take `lines` and
//! `points`, with lines numbered from 1; only points of multiplicity three or
//! more need to be listed. `n*X` repeats a singularity `n` times.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::curve_model::{CombinatorialCurve, LineArrangement};
use crate::error::{Error, Result};
use crate::singularities::SingularityType;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Curve(CombinatorialCurve),
    Arrangement(LineArrangement),
}

impl Document {
    /// Canonical JSON echo of the document, used in reports.
    pub fn echo(&self) -> Value {
        match self {
            Document::Curve(c) => {
                let mut v = json!({
                    "kind": "curve",
                    "degrees": c.component_degrees(),
                    "singularities": c.singularities().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                });
                if let Some(a) = c.assignment() {
                    v["assignment"] = json!(a);
                }
                v
            }
            Document::Arrangement(a) => json!({
                "kind": "arrangement",
                "lines": a.line_count(),
                "points": a
                    .listed_points()
                    .iter()
                    .map(|p| p.iter().map(|l| l + 1).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses `T(a,b)`, `O(m)` or `n*X`.
fn singularity_item(item: &str) -> std::result::Result<Vec<SingularityType>, String> {
    let item = item.trim();
    let (count, body) = match item.split_once('*') {
        Some((n, body)) => (
            n.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad repeat count in {item:?}"))?,
            body,
        ),
        None => (1, item),
    };
    let s: SingularityType = body.parse()?;
    Ok(vec![s; count])
}

fn singularity_list<'a>(
    items: impl IntoIterator<Item = &'a str>,
) -> std::result::Result<Vec<SingularityType>, String> {
    let mut out = Vec::new();
    for item in items {
        out.extend(singularity_item(item)?);
    }
    Ok(out)
}

/// Splits `a, T(1,2), b` on commas outside parentheses, with the column
/// offset of each piece.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out.retain(|(_, piece)| !piece.trim().is_empty());
    out
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawDocument {
    Curve {
        degrees: Vec<u32>,
        #[serde(default)]
        singularities: Vec<String>,
        #[serde(default)]
        assignment: Option<Vec<usize>>,
    },
    Arrangement {
        lines: usize,
        #[serde(default)]
        points: Vec<Vec<usize>>,
    },
}

fn build(raw: RawDocument) -> std::result::Result<Document, String> {
    match raw {
        RawDocument::Curve {
            degrees,
            singularities,
            assignment,
        } => {
            let sings = singularity_list(singularities.iter().map(String::as_str))?;
            let mut curve = CombinatorialCurve::new(degrees, sings).map_err(|e| e.to_string())?;
            if let Some(a) = assignment {
                curve = curve.with_assignment(a).map_err(|e| e.to_string())?;
            }
            Ok(Document::Curve(curve))
        }
        RawDocument::Arrangement { lines, points } => LineArrangement::from_one_based(lines, &points)
            .map(Document::Arrangement)
            .map_err(|e| e.to_string()),
    }
}

fn parse_json(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| parse_error(e.line(), e.column(), e.to_string()))?;
    let (line, column) = first_content_position(text);
    build(raw).map_err(|m| parse_error(line, column, m))
}

fn first_content_position(text: &str) -> (usize, usize) {
    for (n, line) in text.lines().enumerate() {
        if let Some(col) = line.find(|c: char| !c.is_whitespace()) {
            return (n + 1, col + 1);
        }
    }
    (1, 1)
}

fn parse_lines(text: &str) -> Result<Document> {
    let mut kind: Option<(usize, String)> = None;
    let mut degrees = None;
    let mut singularities = None;
    let mut assignment = None;
    let mut lines = None;
    let mut points = None;

    for (n, raw_line) in text.lines().enumerate() {
        let line_no = n + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
            return Err(parse_error(line_no, col, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let value = &content[colon + 1..];
        let value_col = colon + 2 + (value.len() - value.trim_start().len());
        let value = value.trim();
        let json_value = |what: &str| -> Result<Value> {
            serde_json::from_str(value).map_err(|e| {
                parse_error(line_no, value_col + e.column().saturating_sub(1), format!("{what}: {e}"))
            })
        };
        match key {
            "kind" => kind = Some((value_col, value.to_string())),
            "degrees" => degrees = Some((line_no, value_col, json_value("degrees")?)),
            "assignment" => assignment = Some((line_no, value_col, json_value("assignment")?)),
            "lines" => lines = Some((line_no, value_col, json_value("lines")?)),
            "points" => points = Some((line_no, value_col, json_value("points")?)),
            "singularities" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| parse_error(line_no, value_col, "expected [ ... ]"))?;
                let mut list = Vec::new();
                for (offset, piece) in split_top_level(inner) {
                    let col = value_col + 1 + offset + (piece.len() - piece.trim_start().len());
                    list.extend(singularity_item(piece).map_err(|m| parse_error(line_no, col, m))?);
                }
                singularities = Some(list);
            }
            other => {
                let col = content.find(other).unwrap_or(0) + 1;
                return Err(parse_error(line_no, col, format!("unknown key `{other}`")));
            }
        }
    }

    let (_, kind) = kind.ok_or_else(|| parse_error(1, 1, "missing `kind`"))?;
    let typed = |field: Option<(usize, usize, Value)>, name: &str| -> Result<(usize, usize, Value)> {
        field.ok_or_else(|| parse_error(1, 1, format!("missing `{name}`")))
    };
    match kind.as_str() {
        "curve" => {
            let (l, c, deg) = typed(degrees, "degrees")?;
            let deg: Vec<u32> = serde_json::from_value(deg)
                .map_err(|e| parse_error(l, c, format!("degrees: {e}")))?;
            let mut curve = CombinatorialCurve::new(deg, singularities.unwrap_or_default())
                .map_err(|e| parse_error(l, c, e.to_string()))?;
            if let Some((l, c, a)) = assignment {
                let a: Vec<usize> = serde_json::from_value(a)
                    .map_err(|e| parse_error(l, c, format!("assignment: {e}")))?;
                curve = curve
                    .with_assignment(a)
                    .map_err(|e| parse_error(l, c, e.to_string()))?;
            }
            Ok(Document::Curve(curve))
        }
        "arrangement" => {
            let (l, c, count) = typed(lines, "lines")?;
            let count: usize = serde_json::from_value(count)
                .map_err(|e| parse_error(l, c, format!("lines: {e}")))?;
            let (pl, pc, pts) = points.unwrap_or((l, c, json!([])));
            let pts: Vec<Vec<usize>> = serde_json::from_value(pts)
                .map_err(|e| parse_error(pl, pc, format!("points: {e}")))?;
            let arr = LineArrangement::from_one_based(count, &pts)
                .map_err(|e| parse_error(pl, pc, e.to_string()))?;
            Ok(Document::Arrangement(arr))
        }
        other => Err(parse_error(1, 1, format!("unknown kind `{other}`"))),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_lines(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format_curve() {
        let doc = parse_document(
            "# six cusps\nkind: curve\ndegrees: [5]\nsingularities: [T(2,3), 5*T(2,3)]\n",
        )
        .unwrap();
        let Document::Curve(c) = doc else { panic!() };
        assert_eq!(c.degree(), 5);
        assert_eq!(c.singularities().len(), 6);
    }

    #[test]
    fn json_arrangement() {
        let doc = parse_document(r#"{"kind":"arrangement","lines":6,"points":[[1,2,3],[1,4,5]]}"#)
            .unwrap();
        let Document::Arrangement(a) = doc else { panic!() };
        assert_eq!(a.weak_profile().count(2), 9);
        assert_eq!(
            Document::Arrangement(a).echo(),
            json!({"kind":"arrangement","lines":6,"points":[[1,2,3],[1,4,5]]})
        );
    }

    #[test]
    fn formats_agree() {
        let a = parse_document("kind: curve\ndegrees: [3, 1]\nsingularities: [O(3), T(2,3)]\nassignment: [0, 0]").unwrap();
        let b = parse_document(
            r#"{"kind":"curve","degrees":[3,1],"singularities":["O(3)","T(2,3)"],"assignment":[0,0]}"#,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_document(&a.echo().to_string()).unwrap(), a);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_document("kind: curve\ndegrees: [5]\nsingularities: [T(2,3), X(1)]").unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 3, column: 25, message: "expected T(a,b) or O(m), found \"X(1)\"".into() }
        );
        let err = parse_document("kind: curve\ndegrees [5]").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 1, .. }));
        let err = parse_document("{\"kind\": \"curve\",\n \"degrees\": [5,]}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_document("kind: arrangement\nlines: 3\npoints: [[1,2,3],[1,2]]").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 9, .. }), "{err:?}");
        assert!(parse_document("kind: surface\n").is_err());
        assert!(parse_document("degrees: [1]\n").is_err());
        assert!(parse_document("kind: curve\ncolour: red").is_err());
    }
}
