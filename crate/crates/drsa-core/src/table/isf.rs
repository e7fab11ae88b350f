//! Line-oriented information-system file (ISF) reader and writer.
//!
//! ```text
//! # comment lines start with '#'
//! **ATTRIBUTES
//! + Number of Cases: (continuous)
//! + Rate of Change: (continuous)
//! decision: Tier [1, 2, 3]
//! **PREFERENCES
//! Number of Cases: gain
//! Rate of Change: gain
//! Tier: gain
//! **EXAMPLES
//! 195 2.48 8.05 3
//! **METADATA
//! 1 id=x1 region=North
//! **END
//! ```
//!
//! The class list on the `decision:` line is optional on input (classes are
//! then inferred from the EXAMPLES section, numeric-aware order) and always
//! written. The `**METADATA` section is optional; rows are addressed by their
//! 1-based EXAMPLES position, the reserved key `id` overrides the positional
//! observation id, and keys/values are %-escaped so they stay whitespace-free.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{
    sort_class_labels, Criterion, DecisionAttribute, Direction, InformationTable, Observation,
    TableError,
};

/// Reads an ISF file from disk.
pub fn load_isf(path: impl AsRef<Path>) -> Result<InformationTable, TableError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| TableError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_isf(BufReader::new(file), &path.display().to_string())
}

/// Writes a table as ISF to disk.
pub fn write_isf(table: &InformationTable, path: impl AsRef<Path>) -> Result<(), TableError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|source| TableError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut out = BufWriter::new(file);
    write_isf_to(table, &mut out).and_then(|()| {
        out.flush().map_err(|source| TableError::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Attributes,
    Preferences,
    Examples,
    Metadata,
    End,
}

/// Parses ISF content from any reader. `source` names the input in errors.
pub fn read_isf(reader: impl Read, source: &str) -> Result<InformationTable, TableError> {
    let err = |line: usize, message: String| TableError::IsfParse {
        path: source.to_string(),
        line,
        message,
    };

    let mut section = Section::Preamble;
    let mut criteria: Vec<Criterion> = Vec::new();
    let mut decision_name: Option<String> = None;
    let mut declared_classes: Option<Vec<String>> = None;
    let mut directions: BTreeMap<String, Direction> = BTreeMap::new();
    let mut decision_direction: Option<Direction> = None;
    let mut rows: Vec<(usize, Vec<f64>, String)> = Vec::new();
    let mut metadata: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();

    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| TableError::Io {
            path: source.into(),
            source: e,
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(header) = line.strip_prefix("**") {
            section = match header.trim() {
                "ATTRIBUTES" => Section::Attributes,
                "PREFERENCES" => Section::Preferences,
                "EXAMPLES" => Section::Examples,
                "METADATA" => Section::Metadata,
                "END" => Section::End,
                other => return Err(err(lineno, format!("unknown section '**{other}'"))),
            };
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(err(lineno, "content before **ATTRIBUTES".to_string()))
            }
            Section::End => return Err(err(lineno, "content after **END".to_string())),
            Section::Attributes => {
                if let Some(rest) = line.strip_prefix('+') {
                    let (name, kind) = split_decl(rest, lineno, source)?;
                    if kind != "(continuous)" {
                        return Err(err(
                            lineno,
                            format!("unsupported attribute kind '{kind}', expected (continuous)"),
                        ));
                    }
                    criteria.push(Criterion::gain(criteria.len(), name));
                } else if let Some(rest) = line.strip_prefix("decision:") {
                    let rest = rest.trim();
                    let (name, classes) = match rest.find('[') {
                        Some(open) => {
                            let close = rest.rfind(']').ok_or_else(|| {
                                err(lineno, "unterminated class list".to_string())
                            })?;
                            let labels: Vec<String> = rest[open + 1..close]
                                .split(',')
                                .map(|s| s.trim().to_string())
                                .filter(|s| !s.is_empty())
                                .collect();
                            (rest[..open].trim().to_string(), Some(labels))
                        }
                        None => (rest.to_string(), None),
                    };
                    if name.is_empty() {
                        return Err(err(lineno, "decision attribute has no name".to_string()));
                    }
                    decision_name = Some(name);
                    declared_classes = classes;
                } else {
                    return Err(err(
                        lineno,
                        format!("expected '+ <name>: (continuous)' or 'decision: <name>', got '{line}'"),
                    ));
                }
            }
            Section::Preferences => {
                let (name, token) = split_decl(line, lineno, source)?;
                let direction = match token.as_str() {
                    "gain" => Direction::Gain,
                    "cost" => Direction::Cost,
                    other => {
                        return Err(err(
                            lineno,
                            format!("unknown preference '{other}', expected gain or cost"),
                        ))
                    }
                };
                if Some(name.as_str()) == decision_name.as_deref() {
                    if direction != Direction::Gain {
                        return Err(err(
                            lineno,
                            "decision attribute must be gain-direction".to_string(),
                        ));
                    }
                    decision_direction = Some(direction);
                } else if criteria.iter().any(|c| c.name == name) {
                    directions.insert(name, direction);
                } else {
                    return Err(err(lineno, format!("preference for undeclared attribute '{name}'")));
                }
            }
            Section::Examples => {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() != criteria.len() + 1 {
                    return Err(err(
                        lineno,
                        format!(
                            "row has {} values for {} declared attributes",
                            tokens.len(),
                            criteria.len() + 1
                        ),
                    ));
                }
                let mut values = Vec::with_capacity(criteria.len());
                for (q, token) in tokens[..criteria.len()].iter().enumerate() {
                    let v: f64 = token.parse().map_err(|_| {
                        err(
                            lineno,
                            format!("non-numeric value '{token}' for '{}'", criteria[q].name),
                        )
                    })?;
                    values.push(v);
                }
                rows.push((lineno, values, tokens[criteria.len()].to_string()));
            }
            Section::Metadata => {
                let mut tokens = line.split_whitespace();
                let index_token = tokens.next().unwrap();
                let row: usize = index_token.parse().map_err(|_| {
                    err(lineno, format!("metadata row index '{index_token}' is not a number"))
                })?;
                if row == 0 || row > rows.len() {
                    return Err(err(
                        lineno,
                        format!("metadata row index {row} is out of range (1..={})", rows.len()),
                    ));
                }
                let entry = metadata.entry(row).or_default();
                for token in tokens {
                    let (key, value) = token.split_once('=').ok_or_else(|| {
                        err(lineno, format!("metadata token '{token}' is not key=value"))
                    })?;
                    entry.push((unescape(key), unescape(value)));
                }
            }
        }
    }

    if section != Section::End {
        return Err(err(0, "missing **END".to_string()));
    }
    let decision_name =
        decision_name.ok_or_else(|| err(0, "no decision attribute declared".to_string()))?;
    if decision_direction.is_none() {
        return Err(err(0, format!("no preference declared for decision '{decision_name}'")));
    }
    for criterion in &mut criteria {
        match directions.get(&criterion.name) {
            Some(direction) => criterion.direction = *direction,
            None => {
                return Err(err(
                    0,
                    format!("no preference declared for criterion '{}'", criterion.name),
                ))
            }
        }
    }

    let classes = match declared_classes {
        Some(labels) => labels,
        None => {
            let mut labels: Vec<String> = rows.iter().map(|(_, _, label)| label.clone()).collect();
            sort_class_labels(&mut labels);
            labels
        }
    };
    let decision = DecisionAttribute::new(decision_name, classes);

    let mut observations = Vec::with_capacity(rows.len());
    for (position, (lineno, values, label)) in rows.into_iter().enumerate() {
        let rank = decision
            .class_index(&label)
            .ok_or_else(|| err(lineno, format!("unknown class label '{label}'")))?;
        let mut obs = Observation::new((position + 1).to_string(), values, rank);
        if let Some(pairs) = metadata.get(&(position + 1)) {
            for (key, value) in pairs {
                if key == "id" {
                    obs.id = value.clone();
                } else {
                    obs.meta.insert(key.clone(), value.clone());
                }
            }
        }
        observations.push(obs);
    }
    InformationTable::new(criteria, decision, observations)
}

/// Writes ISF content to any writer.
pub fn write_isf_to(table: &InformationTable, out: &mut impl Write) -> Result<(), TableError> {
    let io_err = |source| TableError::Io {
        path: "<writer>".into(),
        source,
    };
    for criterion in table.criteria() {
        if criterion.name.contains(':') || criterion.name.trim() != criterion.name {
            return Err(TableError::Shape(format!(
                "criterion name '{}' cannot be written to ISF",
                criterion.name
            )));
        }
    }
    for label in &table.decision().classes {
        if label.chars().any(char::is_whitespace) || label.contains(',') || label.contains(']') {
            return Err(TableError::Shape(format!(
                "class label '{label}' cannot be written to ISF"
            )));
        }
    }

    writeln!(out, "**ATTRIBUTES").map_err(io_err)?;
    for criterion in table.criteria() {
        writeln!(out, "+ {}: (continuous)", criterion.name).map_err(io_err)?;
    }
    writeln!(
        out,
        "decision: {} [{}]",
        table.decision().name,
        table.decision().classes.join(", ")
    )
    .map_err(io_err)?;
    writeln!(out, "**PREFERENCES").map_err(io_err)?;
    for criterion in table.criteria() {
        writeln!(out, "{}: {}", criterion.name, criterion.direction).map_err(io_err)?;
    }
    writeln!(out, "{}: gain", table.decision().name).map_err(io_err)?;
    writeln!(out, "**EXAMPLES").map_err(io_err)?;
    for obs in table.observations() {
        let mut row = String::new();
        for v in &obs.values {
            row.push_str(&v.to_string());
            row.push(' ');
        }
        row.push_str(table.class_label(obs.decision));
        writeln!(out, "{row}").map_err(io_err)?;
    }

    let needs_metadata = table
        .observations()
        .iter()
        .enumerate()
        .any(|(i, obs)| obs.id != (i + 1).to_string() || !obs.meta.is_empty());
    if needs_metadata {
        writeln!(out, "**METADATA").map_err(io_err)?;
        for (i, obs) in table.observations().iter().enumerate() {
            let mut pairs = Vec::new();
            if obs.id != (i + 1).to_string() {
                pairs.push(format!("id={}", escape(&obs.id)));
            }
            for (key, value) in &obs.meta {
                pairs.push(format!("{}={}", escape(key), escape(value)));
            }
            if !pairs.is_empty() {
                writeln!(out, "{} {}", i + 1, pairs.join(" ")).map_err(io_err)?;
            }
        }
    }
    writeln!(out, "**END").map_err(io_err)?;
    Ok(())
}

fn split_decl(line: &str, lineno: usize, source: &str) -> Result<(String, String), TableError> {
    match line.rsplit_once(':') {
        Some((name, value)) => Ok((name.trim().to_string(), value.trim().to_string())),
        None => Err(TableError::IsfParse {
            path: source.to_string(),
            line: lineno,
            message: format!("expected '<name>: <value>', got '{line}'"),
        }),
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c == '%' || c == '=' || c.is_whitespace() {
            let mut buf = [0u8; 4];
            for byte in c.encode_utf8(&mut buf).as_bytes() {
                out.push_str(&format!("%{byte:02X}"));
            }
        } else {
            out.push(c);
        }
    }
    out
}

fn unescape(s: &str) -> String {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' && i + 3 <= bytes.len() {
            if let Ok(v) = u8::from_str_radix(&s[i + 1..i + 3], 16) {
                out.push(v);
                i += 3;
                continue;
            }
        }
        out.push(bytes[i]);
        i += 1;
    }
    String::from_utf8_lossy(&out).into_owned()
}
