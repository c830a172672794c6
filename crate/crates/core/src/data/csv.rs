//! Dataset files.
//!
//! The on-disk dialect is plain comma-separated UTF-8 with no quoting and no
//! missing values. The first line declares the columns:
//!
//! ```text
//! name:numeric  |  name:symbolic  |  name:symbolic(v1|v2|...)
//! ```
//!
//! joined by commas, with the label column last, named `class`. A bare
//! `symbolic` declaration takes its domain from the observed values in first-
//! occurrence order. Every later line holds one token per column. An empty
//! token or `?` is treated as a missing value and rejected.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Attribute, AttributeKind, Dataset, Example, Label, Schema, Value};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

enum ColumnKind {
    Numeric,
    Declared(Vec<String>),
    /// Domain collected from the data, in first-occurrence order.
    Observed(Vec<String>),
}

struct Column {
    name: String,
    kind: ColumnKind,
}

fn parse_declaration(decl: &str, line: usize, column: usize) -> Result<Column> {
    let (name, kind_spec) = decl
        .split_once(':')
        .ok_or_else(|| parse_err(line, column, format!("expected name:kind, got {decl:?}")))?;
    let kind = if kind_spec == "numeric" {
        ColumnKind::Numeric
    } else if kind_spec == "symbolic" {
        ColumnKind::Observed(Vec::new())
    } else if let Some(rest) = kind_spec
        .strip_prefix("symbolic(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let values: Vec<String> = rest.split('|').map(str::to_owned).collect();
        ColumnKind::Declared(values)
    } else {
        return Err(parse_err(
            line,
            column,
            format!("unknown attribute kind {kind_spec:?} (expected numeric, symbolic, or symbolic(v1|v2|...))"),
        ));
    };
    Ok(Column {
        name: name.to_owned(),
        kind,
    })
}

fn check_missing(token: &str, line: usize, column: usize) -> Result<()> {
    if token.is_empty() || token == "?" {
        return Err(parse_err(line, column, "missing values are not supported"));
    }
    Ok(())
}

/// Loads a dataset, mapping the declared class value `positive_class` to the
/// positive label and the other one to negative.
pub fn load_csv(path: impl AsRef<Path>, positive_class: &str) -> Result<Dataset> {
    let text = fs::read_to_string(path.as_ref())?;
    let all_lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();

    let header = *all_lines.first().ok_or_else(|| parse_err(1, 0, "empty file"))?;
    let mut columns: Vec<Column> = header
        .split(',')
        .enumerate()
        .map(|(c, decl)| parse_declaration(decl, 1, c + 1))
        .collect::<Result<_>>()?;
    if columns.len() < 2 {
        return Err(parse_err(1, 0, "need at least one attribute and the class column"));
    }
    let class_column = columns.pop().expect("checked non-empty");
    if class_column.name != "class" {
        return Err(parse_err(
            1,
            columns.len() + 1,
            format!(
                "last column must be named \"class\", got {:?}",
                class_column.name
            ),
        ));
    }
    let mut class_kind = match class_column.kind {
        ColumnKind::Numeric => {
            return Err(parse_err(1, columns.len() + 1, "class column must be symbolic"))
        }
        other => other,
    };

    // raw tokens per row, resolved to values after domains are final
    let mut rows: Vec<(Vec<String>, String)> = Vec::new();
    for (line_idx, &line) in all_lines.iter().enumerate().skip(1) {
        let line_no = line_idx + 1;
        if line.is_empty() && line_idx + 1 == all_lines.len() {
            continue; // trailing blank line
        }
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.len() != columns.len() + 1 {
            return Err(parse_err(
                line_no,
                0,
                format!(
                    "row has {} fields but the header declares {}",
                    tokens.len(),
                    columns.len() + 1
                ),
            ));
        }
        for (c, (token, col)) in tokens.iter().zip(columns.iter_mut()).enumerate() {
            check_missing(token, line_no, c + 1)?;
            match &mut col.kind {
                ColumnKind::Numeric => {
                    let v: f64 = token.parse().map_err(|_| {
                        parse_err(
                            line_no,
                            c + 1,
                            format!("non-numeric token {token:?} in numeric column {:?}", col.name),
                        )
                    })?;
                    if !v.is_finite() {
                        return Err(parse_err(
                            line_no,
                            c + 1,
                            format!("non-finite value {token:?} in numeric column {:?}", col.name),
                        ));
                    }
                }
                ColumnKind::Declared(values) => {
                    if !values.iter().any(|v| v == token) {
                        return Err(parse_err(
                            line_no,
                            c + 1,
                            format!(
                                "value {token:?} is not declared for attribute {:?}",
                                col.name
                            ),
                        ));
                    }
                }
                ColumnKind::Observed(values) => {
                    if !values.iter().any(|v| v == token) {
                        values.push((*token).to_owned());
                    }
                }
            }
        }
        let class_token = tokens[columns.len()];
        check_missing(class_token, line_no, columns.len() + 1)?;
        match &mut class_kind {
            ColumnKind::Declared(values) => {
                if !values.iter().any(|v| v == class_token) {
                    return Err(parse_err(
                        line_no,
                        columns.len() + 1,
                        format!("class value {class_token:?} is not declared"),
                    ));
                }
            }
            ColumnKind::Observed(values) => {
                if !values.iter().any(|v| v == class_token) {
                    values.push(class_token.to_owned());
                }
            }
            ColumnKind::Numeric => unreachable!("rejected above"),
        }
        rows.push((
            tokens[..columns.len()].iter().map(|t| (*t).to_owned()).collect(),
            class_token.to_owned(),
        ));
    }

    let class_values = match class_kind {
        ColumnKind::Declared(v) | ColumnKind::Observed(v) => v,
        ColumnKind::Numeric => unreachable!(),
    };
    if class_values.len() != 2 {
        return Err(parse_err(
            1,
            columns.len() + 1,
            format!(
                "binary problems only: the class column carries {} distinct values",
                class_values.len()
            ),
        ));
    }
    if !class_values.iter().any(|v| v == positive_class) {
        return Err(Error::InvalidArgument(format!(
            "positive class {positive_class:?} is not one of the class values {class_values:?}"
        )));
    }
    let negative_class = class_values
        .iter()
        .find(|v| *v != positive_class)
        .expect("two distinct values")
        .clone();

    let attributes: Vec<Attribute> = columns
        .into_iter()
        .map(|col| match col.kind {
            ColumnKind::Numeric => Attribute::numeric(col.name),
            ColumnKind::Declared(values) | ColumnKind::Observed(values) => {
                Attribute::symbolic(col.name, values)
            }
        })
        .collect::<Result<_>>()?;
    let schema = Schema::new(attributes)?;

    let examples: Vec<Example> = rows
        .into_iter()
        .map(|(tokens, class_token)| {
            let values = schema
                .attributes()
                .iter()
                .zip(&tokens)
                .map(|(attr, token)| match &attr.kind {
                    AttributeKind::Numeric => {
                        Value::Numeric(token.parse().expect("validated above"))
                    }
                    AttributeKind::Symbolic { values } => Value::Symbolic(
                        values
                            .iter()
                            .position(|v| v == token)
                            .expect("validated above") as u32,
                    ),
                })
                .collect();
            let label = if class_token == positive_class {
                Label::Positive
            } else {
                Label::Negative
            };
            Example::new(values, label)
        })
        .collect();

    Dataset::new(schema, [positive_class.to_owned(), negative_class], examples)
}

fn render_value(value: &Value, attr: &Attribute) -> String {
    match (value, &attr.kind) {
        (Value::Numeric(x), AttributeKind::Numeric) => x.to_string(),
        (Value::Symbolic(i), AttributeKind::Symbolic { values }) => {
            values[*i as usize].clone()
        }
        _ => unreachable!("dataset construction enforces kind conformance"),
    }
}

/// Writes a dataset so that loading it back (with the dataset's positive
/// class name) reproduces it exactly. Domains are always written out
/// explicitly, including declared-but-unobserved values.
pub fn save_csv(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    for (i, ex) in data.examples().iter().enumerate() {
        for v in &ex.values {
            if let Value::Numeric(x) = v {
                if !x.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "example {i} holds a non-finite numeric value; the file format cannot \
                         round-trip it"
                    )));
                }
            }
        }
    }
    let mut out = String::new();
    for attr in data.schema().attributes() {
        match &attr.kind {
            AttributeKind::Numeric => {
                out.push_str(&format!("{}:numeric,", attr.name));
            }
            AttributeKind::Symbolic { values } => {
                out.push_str(&format!("{}:symbolic({}),", attr.name, values.join("|")));
            }
        }
    }
    out.push_str(&format!(
        "class:symbolic({}|{})\n",
        data.class_names()[0],
        data.class_names()[1]
    ));
    for ex in data.examples() {
        let mut fields: Vec<String> = data
            .schema()
            .attributes()
            .iter()
            .zip(&ex.values)
            .map(|(attr, v)| render_value(v, attr))
            .collect();
        fields.push(if ex.label.is_positive() {
            data.class_names()[0].clone()
        } else {
            data.class_names()[1].clone()
        });
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    fs::write(path.as_ref(), out)?;
    Ok(())
}
