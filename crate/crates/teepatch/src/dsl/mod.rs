//! The repair-rule DSL: parsing, validation, and rendering.
//!
//! Rules describe a vulnerable statement shape (trigger) and its secure
//! replacement (transformer), separated by `=>`. Rule files are UTF-8 text
//! with `#` line comments; the six bundled rules ship in the workspace
//! `rules/` directory and are also embedded here.

mod ast;
mod parser;
mod render;
mod validate;

use std::path::Path;

use thiserror::Error;

pub use ast::{CallKind, DslNode, DslProgram, DslRule, DslTerm, GuardAction, RelOp, ResultSlot};
pub use parser::{parse_rule, parse_rule_file};
pub use render::{render_node, render_program, render_rule};
pub use validate::{validate_rule, Finding, Severity, ValidationReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("{kind} takes {want} argument(s), got {got}")]
    Arity {
        kind: &'static str,
        got: usize,
        want: String,
    },
    #[error("rule has no `=>` separator between trigger and transformer")]
    MissingSeparator,
}

/// The six bundled rules, embedded from the workspace `rules/` directory.
const BUILTIN: &[(&str, &str)] = &[
    ("1.1", include_str!("../../../../rules/rule-1.1.dsl")),
    ("1.2", include_str!("../../../../rules/rule-1.2.dsl")),
    ("2.1", include_str!("../../../../rules/rule-2.1.dsl")),
    ("2.2", include_str!("../../../../rules/rule-2.2.dsl")),
    ("3.1", include_str!("../../../../rules/rule-3.1.dsl")),
    ("3.2", include_str!("../../../../rules/rule-3.2.dsl")),
];

/// Parse and return the six bundled rules.
pub fn builtin_rules() -> Vec<DslRule> {
    BUILTIN
        .iter()
        .map(|(name, text)| {
            parse_rule(text)
                .unwrap_or_else(|e| panic!("bundled rule {name} must parse: {e}"))
                .with_name(*name)
        })
        .collect()
}

/// Load every `*.dsl` file in a directory, sorted by file name.
pub fn load_rules_dir(dir: &Path) -> Result<Vec<DslRule>, crate::Error> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| crate::Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "dsl"))
        .collect();
    paths.sort();

    let mut rules = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(&path).map_err(|e| crate::Error::io(&path, e))?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("rule")
            .to_string();
        rules.extend(parse_rule_file(&text, &stem).map_err(|e| crate::Error::Dsl {
            path: path.display().to_string(),
            source: e,
        })?);
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_1_1_parses_with_fresh_cipher() {
        let rule = parse_rule(
            "COPY($out,$plain,$len) -> _ => MALLOC($len) -> $cipher; \
             ENC($plain,$cipher,$len) -> _; COPY($out,$cipher,$len) -> _",
        )
        .unwrap();
        assert_eq!(rule.trigger.nodes.len(), 1);
        assert_eq!(rule.transformer.nodes.len(), 3);
        assert_eq!(
            rule.fresh.iter().collect::<Vec<_>>(),
            vec![&"cipher".to_string()]
        );
    }

    #[test]
    fn read_identity_rule_parses() {
        let rule = parse_rule("READ() -> $h1 => READ() -> $h1").unwrap();
        match &rule.trigger.nodes[0] {
            DslNode::FuncCall { kind, args, result } => {
                assert_eq!(*kind, CallKind::Read);
                assert!(args.is_empty());
                assert_eq!(result.as_ref().unwrap().placeholder_name(), Some("h1"));
            }
            other => panic!("unexpected node {other:?}"),
        }
        assert!(rule.fresh.is_empty());
    }

    #[test]
    fn copy_arity_violation() {
        let err = parse_rule("COPY($a,$b) -> _ => COPY($a,$b) -> _").unwrap_err();
        assert_eq!(
            err,
            DslError::Arity {
                kind: "COPY",
                got: 2,
                want: "3".to_string()
            }
        );
    }

    #[test]
    fn missing_separator() {
        assert_eq!(
            parse_rule("COPY($a,$b,$c) -> _").unwrap_err(),
            DslError::MissingSeparator
        );
    }

    #[test]
    fn double_separator_rejected() {
        let err = parse_rule("READ() -> $h => READ() -> $h => READ() -> $h").unwrap_err();
        assert!(matches!(err, DslError::Syntax { .. }));
    }

    #[test]
    fn unicode_arrow_accepted_and_rendered_ascii() {
        let rule = parse_rule("COPY($out, $plain, $len) → _ => COPY($out, $plain, $len) → _")
            .unwrap();
        let rendered = render_rule(&rule);
        assert!(rendered.contains("->"));
        assert!(!rendered.contains('→'));
    }

    #[test]
    fn render_rule_2_1_transformer() {
        let rule = parse_rule(
            "COPY($dst, $in, $len) -> _ => IF($len, >, $value) -> return ECODE; \
             COPY($dst, $in, $len) -> _",
        )
        .unwrap();
        assert_eq!(
            render_program(&rule.transformer),
            "IF($len, >, $value) -> return ECODE;\nCOPY($dst, $in, $len) -> _"
        );
    }

    #[test]
    fn render_single_guard_program() {
        let rule = parse_rule("ARRAY($b, $i) -> _ => IF($i, <, 0) -> return ECODE").unwrap();
        assert_eq!(
            render_program(&rule.transformer),
            "IF($i, <, 0) -> return ECODE"
        );
    }

    #[test]
    fn builtin_rules_parse_and_roundtrip() {
        let rules = builtin_rules();
        assert_eq!(rules.len(), 6);
        for rule in &rules {
            let rendered = render_rule(&rule);
            let reparsed = parse_rule(&rendered)
                .unwrap_or_else(|e| panic!("rendered rule {} must reparse: {e}", rule.name))
                .with_name(rule.name.clone());
            assert_eq!(&reparsed, rule, "round-trip of rule {}", rule.name);
        }
    }

    #[test]
    fn builtin_rules_validate_clean_with_documented_fresh() {
        for rule in builtin_rules() {
            let report = validate_rule(&rule);
            assert!(
                report.is_clean(),
                "rule {} has warnings: {:?}",
                rule.name,
                report.findings
            );
            let fresh: Vec<_> = report
                .findings
                .iter()
                .filter(|f| matches!(f, Finding::FreshPlaceholder(_)))
                .collect();
            assert!(!fresh.is_empty(), "rule {} documents no fresh slots", rule.name);
        }
    }

    #[test]
    fn unbound_placeholder_warns_when_not_marked_fresh() {
        let mut rule =
            parse_rule("COPY($a,$b,$c) -> _ => COPY($a,$b,$ghost) -> _").unwrap();
        rule.fresh.remove("ghost");
        let report = validate_rule(&rule);
        assert!(report
            .findings
            .contains(&Finding::UnboundPlaceholder("ghost".to_string())));
    }

    #[test]
    fn unused_trigger_binding_reports_info() {
        let rule = parse_rule("COPY($a,$b,$len) -> _ => WRITE($a)").unwrap();
        let report = validate_rule(&rule);
        assert!(report
            .findings
            .contains(&Finding::UnusedBinding("len".to_string())));
        assert!(report.is_clean());
    }

    #[test]
    fn equal_term_usable_as_guard_operand() {
        let rule =
            parse_rule("SHALLOW($sm) -> $buf => IF(equal($h1, $h2), !=, 0) -> return ECODE")
                .unwrap();
        match &rule.transformer.nodes[0] {
            DslNode::Guard { left: DslTerm::Equal(a, b), .. } => {
                assert_eq!(a.placeholder_name(), Some("h1"));
                assert_eq!(b.placeholder_name(), Some("h2"));
            }
            other => panic!("unexpected node {other:?}"),
        }
    }

    #[test]
    fn nested_calls_other_than_equal_rejected() {
        let err = parse_rule("COPY($a, foo($b), $c) -> _ => WRITE($a)").unwrap_err();
        assert!(matches!(err, DslError::Syntax { .. }));
    }

    #[test]
    fn mulenc_without_matching_mulmalloc_warns() {
        let rule = parse_rule(
            "SNPRINT($out, $fmt, $args) -> _ => MULENC($args, $ciphers) -> _; \
             SNPRINT($out, $fmt, $ciphers) -> _",
        )
        .unwrap();
        let report = validate_rule(&rule);
        assert!(report
            .findings
            .iter()
            .any(|f| matches!(f, Finding::MulExpansionMismatch { .. })));
    }
}
