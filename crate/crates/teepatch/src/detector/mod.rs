//! Detection of the three bad-partitioning classes.
//!
//! All three analyses are flow-insensitive scans within one function:
//! earlier statements are consulted for encryption calls, deep copies,
//! and dominating guards, where "dominating" is approximated by lexical
//! precedence at the same or shallower brace depth. Analyses are pure
//! functions of the immutable model, so repeated runs are deterministic
//! and the detector doubles as the static oracle after patching.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cmodel::{
    normalize_ws, AbstractStmt, FunctionClassification, SourceModel, Span, Statement,
};
use crate::dsl::{CallKind, DslNode, RelOp};

mod analyses;

use analyses::FunctionCtx;

/// The three vulnerability classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IssueKind {
    UnencryptedOutput,
    InputValidationWeakness,
    SharedMemoryUse,
}

impl IssueKind {
    /// Class name as it appears in reports and prompts.
    pub fn display_name(self) -> &'static str {
        match self {
            IssueKind::UnencryptedOutput => "Unencrypted Data Output",
            IssueKind::InputValidationWeakness => "Input Validation Weaknesses",
            IssueKind::SharedMemoryUse => "Direct Usage of Shared Memory",
        }
    }
}

/// A located bad-partitioning finding.
#[derive(Debug, Clone)]
pub struct Issue {
    pub kind: IssueKind,
    pub span: Span,
    pub statement: String,
    pub evidence: BTreeMap<String, String>,
    pub rule_hint: String,
    pub function: Option<String>,
    pub file: Option<String>,
}

/// Serialized form of an issue, the unit of the JSON report file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IssueRecord {
    pub kind: IssueKind,
    pub file: Option<String>,
    pub line: usize,
    pub col: usize,
    pub statement: String,
    pub evidence: BTreeMap<String, String>,
    pub rule_hint: String,
}

impl From<&Issue> for IssueRecord {
    fn from(issue: &Issue) -> Self {
        IssueRecord {
            kind: issue.kind,
            file: issue.file.clone(),
            line: issue.span.start_line,
            col: issue.span.start_col,
            statement: normalize_ws(&issue.statement),
            evidence: issue.evidence.clone(),
            rule_hint: issue.rule_hint.clone(),
        }
    }
}

/// Run all three analyses and return the issues ordered by source span.
pub fn detect(model: &SourceModel, fc: &FunctionClassification) -> Vec<Issue> {
    let mut issues = Vec::new();
    issues.extend(detect_unencrypted_output(model, fc));
    issues.extend(detect_input_validation(model, fc));
    issues.extend(detect_shared_memory(model, fc));
    issues.sort_by_key(|i| (i.span.start_byte, i.kind));
    issues
}

/// COPY/SNPRINT into an output parameter where the copied data has no
/// encryption call on its backward path within the function.
pub fn detect_unencrypted_output(
    model: &SourceModel,
    fc: &FunctionClassification,
) -> Vec<Issue> {
    let mut issues = Vec::new();
    for func in &model.functions {
        let ctx = FunctionCtx::new(model, fc, &func.name);
        for (stmt, abs) in ctx.abstracted() {
            let DslNode::FuncCall { kind, args, .. } = &abs.node else {
                continue;
            };
            let (sources, rule_hint) = match kind {
                CallKind::Copy => (vec![args[1].render()], "1.1"),
                CallKind::Snprint => {
                    (args[2..].iter().map(|a| a.render()).collect(), "1.2")
                }
                _ => continue,
            };
            let dest = args[0].render();
            if !fc.is_output_param(ctx.resolve(&dest)) {
                continue;
            }
            let leaking = sources
                .iter()
                .find(|src| ctx.is_sensitive(src, stmt) && !ctx.encrypted_before(src, stmt));
            if let Some(src) = leaking {
                let mut evidence = BTreeMap::new();
                match kind {
                    CallKind::Copy => {
                        evidence.insert("out".into(), dest.clone());
                        evidence.insert("plain".into(), src.clone());
                        evidence.insert("len".into(), args[2].render());
                    }
                    _ => {
                        evidence.insert("out".into(), dest.clone());
                        evidence.insert("format".into(), args[1].render());
                        evidence.insert("args".into(), sources.join(", "));
                    }
                }
                issues.push(issue_at(
                    model,
                    IssueKind::UnencryptedOutput,
                    abs,
                    stmt,
                    evidence,
                    rule_hint,
                ));
            }
        }
    }
    issues
}

/// Unguarded copies of input data into TEE buffers (rule 2.1) and
/// unguarded array accesses driven by input (rule 2.2).
pub fn detect_input_validation(
    model: &SourceModel,
    fc: &FunctionClassification,
) -> Vec<Issue> {
    let mut issues = Vec::new();
    for func in &model.functions {
        let ctx = FunctionCtx::new(model, fc, &func.name);
        for (stmt, abs) in ctx.abstracted() {
            let DslNode::FuncCall { kind, args, .. } = &abs.node else {
                continue;
            };
            match kind {
                CallKind::Copy => {
                    let dst = args[0].render();
                    let src = args[1].render();
                    let len = args[2].render();
                    let src_resolved = ctx.resolve(&src).to_string();
                    if !fc.is_input_param(&src_resolved) {
                        continue;
                    }
                    let dst_resolved = ctx.resolve(&dst).to_string();
                    if fc.is_output_param(&dst_resolved) || fc.is_shared_mem(&dst_resolved) {
                        continue;
                    }
                    if !ctx.is_declared(&dst) {
                        continue;
                    }
                    if !ctx.derives_from_input(&len, stmt) {
                        continue;
                    }
                    if ctx.has_guard(&len, GuardSense::Upper, stmt) {
                        continue;
                    }
                    let mut evidence = BTreeMap::new();
                    evidence.insert("dst".into(), dst);
                    evidence.insert("in".into(), src);
                    evidence.insert("len".into(), len);
                    issues.push(issue_at(
                        model,
                        IssueKind::InputValidationWeakness,
                        abs,
                        stmt,
                        evidence,
                        "2.1",
                    ));
                }
                CallKind::Array => {
                    let base = args[0].render();
                    let index = args[1].render();
                    let input_index = ctx.derives_from_input(&index, stmt);
                    let input_base = fc.is_input_param(ctx.resolve(&base))
                        && crate::cmodel::normalize_ws(&index)
                            .chars()
                            .all(|c| c.is_ascii_digit());
                    if !input_index && !input_base {
                        continue;
                    }
                    let guarded = ctx.has_guard(&index, GuardSense::Upper, stmt)
                        && ctx.has_guard(&index, GuardSense::Lower, stmt);
                    if guarded {
                        continue;
                    }
                    let mut evidence = BTreeMap::new();
                    evidence.insert("base".into(), base);
                    evidence.insert("index".into(), index);
                    issues.push(issue_at(
                        model,
                        IssueKind::InputValidationWeakness,
                        abs,
                        stmt,
                        evidence,
                        "2.2",
                    ));
                }
                _ => {}
            }
        }
    }
    issues
}

/// Shallow aliases of shared memory (rule 3.1) and writes through shared
/// memory (rule 3.2). A preceding deep copy of the same region paired
/// with a hash comparison suppresses the finding.
pub fn detect_shared_memory(model: &SourceModel, fc: &FunctionClassification) -> Vec<Issue> {
    let mut issues = Vec::new();
    for func in &model.functions {
        let ctx = FunctionCtx::new(model, fc, &func.name);
        for (stmt, abs) in ctx.abstracted() {
            let DslNode::FuncCall { kind, args, result } = &abs.node else {
                continue;
            };
            match kind {
                CallKind::Shallow => {
                    let sm = args[0].render();
                    if ctx.integrity_checked_before(&sm, stmt) {
                        continue;
                    }
                    let mut evidence = BTreeMap::new();
                    evidence.insert("sm".into(), sm);
                    evidence.insert(
                        "buf".into(),
                        result.as_ref().map(|t| t.render()).unwrap_or_default(),
                    );
                    issues.push(issue_at(
                        model,
                        IssueKind::SharedMemoryUse,
                        abs,
                        stmt,
                        evidence,
                        "3.1",
                    ));
                }
                CallKind::Mutate => {
                    let sm = result.as_ref().map(|t| t.render()).unwrap_or_default();
                    if ctx.integrity_checked_before(&sm, stmt) {
                        continue;
                    }
                    let mut evidence = BTreeMap::new();
                    evidence.insert("value".into(), args[0].render());
                    evidence.insert("sm".into(), sm);
                    issues.push(issue_at(
                        model,
                        IssueKind::SharedMemoryUse,
                        abs,
                        stmt,
                        evidence,
                        "3.2",
                    ));
                }
                _ => {}
            }
        }
    }
    issues
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GuardSense {
    Upper,
    Lower,
}

impl GuardSense {
    /// Operators that bound the expression when it sits on the left side.
    fn left_ops(self) -> &'static [RelOp] {
        match self {
            GuardSense::Upper => &[RelOp::Gt, RelOp::Ge],
            GuardSense::Lower => &[RelOp::Lt, RelOp::Le],
        }
    }

    /// Mirrored operators for the expression on the right side.
    fn right_ops(self) -> &'static [RelOp] {
        match self {
            GuardSense::Upper => &[RelOp::Lt, RelOp::Le],
            GuardSense::Lower => &[RelOp::Gt, RelOp::Ge],
        }
    }
}

fn issue_at(
    model: &SourceModel,
    kind: IssueKind,
    abs: &AbstractStmt,
    stmt: &Statement,
    evidence: BTreeMap<String, String>,
    rule_hint: &str,
) -> Issue {
    Issue {
        kind,
        span: abs.span.clone(),
        statement: abs.text.clone(),
        evidence,
        rule_hint: rule_hint.to_string(),
        function: stmt.function.clone(),
        file: model.path.clone(),
    }
}

#[cfg(test)]
mod tests;
