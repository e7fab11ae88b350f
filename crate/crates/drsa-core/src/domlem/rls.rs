//! Line-oriented rule-set file (`.rls`): one rule per line,
//!
//! ```text
//! IF (Number of Cases >= 195) AND (Rate of Change >= 2.48) THEN (class >= 3) | support=3 strength=100.00% confidence=100.00%
//! ```
//!
//! Comment lines start with `#`. The writer emits header comments carrying
//! the decision name, class order, criteria order, source and parameters so
//! a parsed set is self-contained; the parser falls back to first-appearance
//! criterion order and numeric-aware class order when headers are absent.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::dominance::UnionKind;
use crate::table::sort_class_labels;

use super::{
    Consequent, DecisionRule, DomlemError, ElementaryCondition, InduceParams, Relation, RuleSet,
};

pub fn load_rls(path: impl AsRef<Path>) -> Result<RuleSet, DomlemError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| DomlemError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_rls(BufReader::new(file))
}

pub fn write_rls(ruleset: &RuleSet, path: impl AsRef<Path>) -> Result<(), DomlemError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|source| DomlemError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut out = BufWriter::new(file);
    write_rls_to(ruleset, &mut out).and_then(|()| {
        out.flush().map_err(|source| DomlemError::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

pub fn write_rls_to(ruleset: &RuleSet, out: &mut impl Write) -> Result<(), DomlemError> {
    let io_err = |source| DomlemError::Io {
        path: "<writer>".into(),
        source,
    };
    if !ruleset.source.is_empty() {
        writeln!(out, "# source: {}", ruleset.source).map_err(io_err)?;
    }
    writeln!(out, "# decision: {}", ruleset.decision).map_err(io_err)?;
    writeln!(out, "# classes: {}", ruleset.classes.join(" < ")).map_err(io_err)?;
    writeln!(out, "# criteria: {}", ruleset.criteria.join(" | ")).map_err(io_err)?;
    writeln!(
        out,
        "# params: min_strength={} max_length={}",
        ruleset.params.min_strength,
        ruleset
            .params
            .max_length
            .map_or("none".to_string(), |m| m.to_string())
    )
    .map_err(io_err)?;
    for rule in &ruleset.rules {
        writeln!(out, "{}", format_rule(rule, ruleset)).map_err(io_err)?;
    }
    Ok(())
}

/// Renders one rule as its `.rls` line.
pub fn format_rule(rule: &DecisionRule, ruleset: &RuleSet) -> String {
    format!(
        "IF {} THEN {} | support={} strength={:.2}% confidence={:.2}%",
        format_antecedent(rule, &ruleset.criteria),
        format_consequent(&rule.consequent, &ruleset.classes),
        rule.support,
        rule.strength,
        rule.confidence,
    )
}

pub fn format_antecedent(rule: &DecisionRule, criteria: &[String]) -> String {
    rule.conditions
        .iter()
        .map(|c| format!("({} {} {})", criteria[c.criterion], c.relation, c.threshold))
        .collect::<Vec<_>>()
        .join(" AND ")
}

pub fn format_consequent(consequent: &Consequent, classes: &[String]) -> String {
    let relation = match consequent.kind {
        UnionKind::AtLeast => ">=",
        UnionKind::AtMost => "<=",
    };
    format!("(class {} {})", relation, classes[consequent.class])
}

pub fn parse_rls(reader: impl Read) -> Result<RuleSet, DomlemError> {
    let parse_err = |line: usize, message: String| {
        DomlemError::RlsParse(format!("line {line}: {message}"))
    };

    let mut decision = "class".to_string();
    let mut classes: Option<Vec<String>> = None;
    let mut criteria: Option<Vec<String>> = None;
    let mut source = String::new();
    let mut params = InduceParams::default();

    struct RawRule {
        conditions: Vec<(String, Relation, f64)>,
        kind: UnionKind,
        label: String,
        support: usize,
        strength: f64,
        confidence: f64,
    }
    let mut raw_rules: Vec<RawRule> = Vec::new();

    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|source| DomlemError::Io {
            path: "<reader>".into(),
            source,
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("decision:") {
                decision = v.trim().to_string();
            } else if let Some(v) = comment.strip_prefix("classes:") {
                classes = Some(v.split('<').map(|s| s.trim().to_string()).collect());
            } else if let Some(v) = comment.strip_prefix("criteria:") {
                criteria = Some(v.split('|').map(|s| s.trim().to_string()).collect());
            } else if let Some(v) = comment.strip_prefix("source:") {
                source = v.trim().to_string();
            } else if let Some(v) = comment.strip_prefix("params:") {
                for token in v.split_whitespace() {
                    if let Some(ms) = token.strip_prefix("min_strength=") {
                        params.min_strength = ms.parse().map_err(|_| {
                            parse_err(lineno, format!("bad min_strength '{ms}'"))
                        })?;
                    } else if let Some(ml) = token.strip_prefix("max_length=") {
                        params.max_length = if ml == "none" {
                            None
                        } else {
                            Some(ml.parse().map_err(|_| {
                                parse_err(lineno, format!("bad max_length '{ml}'"))
                            })?)
                        };
                    }
                }
            }
            continue;
        }

        let body = line
            .strip_prefix("IF ")
            .ok_or_else(|| parse_err(lineno, "rule line must start with 'IF '".to_string()))?;
        let (antecedent, rest) = body
            .split_once(" THEN ")
            .ok_or_else(|| parse_err(lineno, "missing ' THEN '".to_string()))?;
        let (consequent_part, metrics_part) = rest
            .split_once('|')
            .ok_or_else(|| parse_err(lineno, "missing '|' before metrics".to_string()))?;

        let mut conditions = Vec::new();
        for token in antecedent.split(" AND ") {
            let (name, relation, value) = parse_comparison(token)
                .ok_or_else(|| parse_err(lineno, format!("bad condition '{token}'")))?;
            let threshold: f64 = value
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad threshold '{value}'")))?;
            conditions.push((name, relation, threshold));
        }
        if conditions.is_empty() {
            return Err(parse_err(lineno, "rule has no conditions".to_string()));
        }

        let (head, relation, label) = parse_comparison(consequent_part.trim())
            .ok_or_else(|| parse_err(lineno, format!("bad consequent '{consequent_part}'")))?;
        if head != "class" && head != decision {
            return Err(parse_err(
                lineno,
                format!("consequent attribute '{head}' does not match '{decision}'"),
            ));
        }
        let kind = match relation {
            Relation::Ge => UnionKind::AtLeast,
            Relation::Le => UnionKind::AtMost,
        };

        let mut support = 0usize;
        let mut strength = 0f64;
        let mut confidence = 100f64;
        for token in metrics_part.split_whitespace() {
            if let Some(v) = token.strip_prefix("support=") {
                support = v
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad support '{v}'")))?;
            } else if let Some(v) = token.strip_prefix("strength=") {
                let v = v.trim_end_matches('%');
                strength = v
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad strength '{v}'")))?;
            } else if let Some(v) = token.strip_prefix("confidence=") {
                let v = v.trim_end_matches('%');
                confidence = v
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad confidence '{v}'")))?;
            }
        }

        raw_rules.push(RawRule {
            conditions,
            kind,
            label,
            support,
            strength,
            confidence,
        });
    }

    let criteria = criteria.unwrap_or_else(|| {
        let mut names: Vec<String> = Vec::new();
        for rule in &raw_rules {
            for (name, _, _) in &rule.conditions {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        }
        names
    });
    let classes = match classes {
        Some(c) => c,
        None => {
            let mut labels: Vec<String> =
                raw_rules.iter().map(|r| r.label.clone()).collect();
            sort_class_labels(&mut labels);
            labels
        }
    };

    let mut rules = Vec::with_capacity(raw_rules.len());
    for raw in raw_rules {
        let class = classes
            .iter()
            .position(|c| *c == raw.label)
            .ok_or_else(|| {
                DomlemError::RlsParse(format!("consequent label '{}' not in class order", raw.label))
            })?;
        let conditions = raw
            .conditions
            .into_iter()
            .map(|(name, relation, threshold)| {
                let criterion = criteria
                    .iter()
                    .position(|c| *c == name)
                    .ok_or_else(|| {
                        DomlemError::RlsParse(format!("criterion '{name}' not in criteria header"))
                    })?;
                Ok(ElementaryCondition {
                    criterion,
                    relation,
                    threshold,
                })
            })
            .collect::<Result<Vec<_>, DomlemError>>()?;
        rules.push(DecisionRule {
            conditions,
            consequent: Consequent {
                kind: raw.kind,
                class,
            },
            cover: Default::default(),
            support: raw.support,
            strength: raw.strength,
            confidence: raw.confidence,
        });
    }

    Ok(RuleSet {
        criteria,
        decision,
        classes,
        rules,
        params,
        source,
    })
}

/// Splits `"(name >= value)"` into its parts. The relation is searched from
/// the right so names containing spaces survive.
fn parse_comparison(token: &str) -> Option<(String, Relation, String)> {
    let inner = token.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (relation, at) = match (inner.rfind(" >= "), inner.rfind(" <= ")) {
        (Some(a), Some(b)) if a > b => (Relation::Ge, a),
        (Some(_), Some(b)) => (Relation::Le, b),
        (Some(a), None) => (Relation::Ge, a),
        (None, Some(b)) => (Relation::Le, b),
        (None, None) => return None,
    };
    let name = inner[..at].trim().to_string();
    let value = inner[at + 4..].trim().to_string();
    if name.is_empty() || value.is_empty() {
        return None;
    }
    Some((name, relation, value))
}
