//! Post-parse rule validation.
//!
//! Validation never fails; it produces a report of findings with
//! severities. A rule parsed by this crate is fresh-complete by
//! construction, so warnings here mostly surface on hand-built rules.

use super::ast::{CallKind, DslNode, DslRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Info,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    /// Transformer placeholder neither bound by the trigger nor marked fresh.
    UnboundPlaceholder(String),
    /// Trigger binding never used by the transformer.
    UnusedBinding(String),
    /// Placeholder left for synthesis (documentation, not a defect).
    FreshPlaceholder(String),
    /// MULENC consumes lists that no MULMALLOC in the same transformer produces.
    MulExpansionMismatch { args: String, ciphers: String },
}

impl Finding {
    pub fn severity(&self) -> Severity {
        match self {
            Finding::UnboundPlaceholder(_) | Finding::MulExpansionMismatch { .. } => {
                Severity::Warning
            }
            Finding::UnusedBinding(_) | Finding::FreshPlaceholder(_) => Severity::Info,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity() == Severity::Warning)
    }

    pub fn is_clean(&self) -> bool {
        self.warnings().next().is_none()
    }
}

pub fn validate_rule(rule: &DslRule) -> ValidationReport {
    let mut findings = Vec::new();
    let bound = rule.bound_placeholders();
    let used = rule.transformer.placeholders();

    for name in &used {
        if !bound.contains(name) && !rule.fresh.contains(name) {
            findings.push(Finding::UnboundPlaceholder(name.clone()));
        }
    }
    for name in &rule.fresh {
        if used.contains(name) {
            findings.push(Finding::FreshPlaceholder(name.clone()));
        }
    }
    for name in &bound {
        if !used.contains(name) {
            findings.push(Finding::UnusedBinding(name.clone()));
        }
    }

    // MULENC(args, ciphers) expands one ENC per argument; the ciphers list
    // must come from a MULMALLOC over the same args placeholder.
    for node in &rule.transformer.nodes {
        if let DslNode::FuncCall { kind: CallKind::MulEnc, args, .. } = node {
            let enc_args = args.first().and_then(|t| t.placeholder_name());
            let enc_ciphers = args.get(1).and_then(|t| t.placeholder_name());
            if let (Some(enc_args), Some(enc_ciphers)) = (enc_args, enc_ciphers) {
                let produced = rule.transformer.nodes.iter().any(|n| match n {
                    DslNode::FuncCall { kind: CallKind::MulMalloc, args, result } => {
                        args.first().and_then(|t| t.placeholder_name()) == Some(enc_args)
                            && result.as_ref().and_then(|t| t.placeholder_name())
                                == Some(enc_ciphers)
                    }
                    _ => false,
                });
                if !produced {
                    findings.push(Finding::MulExpansionMismatch {
                        args: enc_args.to_string(),
                        ciphers: enc_ciphers.to_string(),
                    });
                }
            }
        }
    }

    ValidationReport { findings }
}
