//! Lifting C statements into DSL nodes.
//!
//! Recognition is shape-based: calls to classified functions become the
//! matching `FuncCall`, `if (L op R) return E;` becomes a `Guard` (the
//! braced three-statement form is folded into one node), indexed reads
//! and writes become `ARRAY`/`MUTATE`, and pointer declarations aliasing
//! shared memory become `SHALLOW`. Anything else stays opaque.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use regex::Regex;

use super::load::{parse_usize, split_params};
use super::{DeclKind, FunctionClassification, SourceModel, Span, Statement};
use crate::dsl::{CallKind, DslNode, DslTerm, GuardAction, RelOp};

/// A statement lifted to a DSL node, with its source extent.
#[derive(Debug, Clone)]
pub struct AbstractStmt {
    pub node: DslNode,
    pub span: Span,
    pub text: String,
    /// Original callee name for call-shaped statements.
    pub call_name: Option<String>,
}

/// `params[i].memref.buffer` occurrences, wherever they appear.
pub(crate) fn param_buffer_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"params\[\d+\]\.memref\.buffer").expect("static regex"))
}

/// Input-derived scalar expressions: memref sizes and value fields.
pub(crate) fn param_scalar_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"params\[\d+\]\.(memref\.size|value\.[ab])").expect("static regex")
    })
}

/// Strip leading C casts: `(char *)expr` becomes `expr`.
pub fn strip_casts(expr: &str) -> &str {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| {
        Regex::new(r"^\(\s*[A-Za-z_][A-Za-z0-9_ \t]*\**\s*\)\s*").expect("static regex")
    });
    let mut out = expr.trim();
    while let Some(m) = re.find(out) {
        out = out[m.end()..].trim_start();
    }
    out
}

/// Parse `lhs = callee(args);` or `callee(args);`. The lhs may be a plain
/// identifier or a declaration; its trailing identifier is returned.
pub fn parse_call_statement(text: &str) -> Option<(Option<String>, String, Vec<String>)> {
    let text = text.trim().strip_suffix(';')?.trim();
    let (lhs, call_text) = match split_assign(text) {
        Some((lhs, rhs)) => (Some(lhs), rhs.trim()),
        None => (None, text),
    };
    let open = call_text.find('(')?;
    if !call_text.ends_with(')') {
        return None;
    }
    let name = call_text[..open].trim();
    if name.is_empty()
        || !name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
        || name.chars().next().is_some_and(|c| c.is_ascii_digit())
    {
        return None;
    }
    let args = split_params(&call_text[open + 1..call_text.len() - 1]);
    let lhs_name = match lhs {
        Some(decl) => Some(trailing_identifier(decl)?),
        None => None,
    };
    Some((lhs_name, name.to_string(), args))
}

fn split_assign(text: &str) -> Option<(&str, &str)> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut in_str = false;
    for i in 0..bytes.len() {
        let b = bytes[i];
        match b {
            b'"' if i == 0 || bytes[i - 1] != b'\\' => in_str = !in_str,
            b'(' | b'[' | b'{' if !in_str => depth += 1,
            b')' | b']' | b'}' if !in_str => depth = depth.saturating_sub(1),
            b'=' if depth == 0 && !in_str => {
                let prev = if i > 0 { bytes[i - 1] } else { 0 };
                let next = if i + 1 < bytes.len() { bytes[i + 1] } else { 0 };
                if prev != b'=' && prev != b'!' && prev != b'<' && prev != b'>' && next != b'=' {
                    return Some((&text[..i], &text[i + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

fn trailing_identifier(text: &str) -> Option<String> {
    let text = text.trim().trim_end_matches(|c: char| c == ']' || c.is_whitespace());
    let text = match text.rfind('[') {
        Some(i) => &text[..i],
        None => text,
    };
    let name: String = text
        .chars()
        .rev()
        .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect::<String>()
        .chars()
        .rev()
        .collect();
    if name.is_empty() || name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        None
    } else {
        Some(name)
    }
}

fn term_of(text: &str) -> DslTerm {
    let text = text.trim();
    if text == "_" {
        return DslTerm::discard();
    }
    let numeric = parse_usize(text).is_some()
        || text.parse::<i64>().is_ok()
        || (text.starts_with('"') && text.ends_with('"'))
        || (text.starts_with('\'') && text.ends_with('\''));
    if numeric {
        DslTerm::Literal(text.to_string())
    } else {
        DslTerm::Identifier(text.to_string())
    }
}

/// Pointer aliases of `params[i].memref.buffer` within one function.
/// Only single-assignment aliases are kept; conflicting reassignment
/// drops the name.
pub(crate) fn alias_map(model: &SourceModel, function: &str) -> BTreeMap<String, String> {
    let mut aliases: BTreeMap<String, Option<String>> = BTreeMap::new();
    let mut record = |name: &str, target: &str| {
        let stripped = strip_casts(target).to_string();
        if param_buffer_re().is_match(&stripped) {
            match aliases.get(name) {
                Some(Some(existing)) if existing != &stripped => {
                    aliases.insert(name.to_string(), None);
                }
                Some(None) => {}
                _ => {
                    aliases.insert(name.to_string(), Some(stripped));
                }
            }
        } else if aliases.contains_key(name) {
            aliases.insert(name.to_string(), None);
        }
    };

    for decl in &model.declarations {
        if decl.function.as_deref() == Some(function) && decl.kind == DeclKind::Pointer {
            if let Some(init) = &decl.init {
                record(&decl.name, init);
            }
        }
    }
    for stmt in model.statements_in(function) {
        let text = stmt.text.trim();
        if let Some(body) = text.strip_suffix(';') {
            if let Some((lhs, rhs)) = split_assign(body) {
                let lhs = lhs.trim();
                if lhs
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
                    && !lhs.is_empty()
                {
                    record(lhs, rhs.trim());
                }
            }
        }
    }
    aliases
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
}

/// Resolve one level of pointer aliasing: a bare identifier that aliases
/// a shared buffer expression resolves to that expression.
pub(crate) fn resolve_alias<'a>(expr: &'a str, aliases: &'a BTreeMap<String, String>) -> &'a str {
    let trimmed = strip_casts(expr);
    match aliases.get(trimmed) {
        Some(target) => target,
        None => trimmed,
    }
}

/// Last `[...]` group of an expression at top level: `base[idx]`.
fn split_index_expr(expr: &str) -> Option<(String, String)> {
    let expr = expr.trim();
    if !expr.ends_with(']') {
        return None;
    }
    let bytes = expr.as_bytes();
    let mut depth = 0usize;
    let mut open = None;
    for i in (0..bytes.len() - 1).rev() {
        match bytes[i] {
            b']' => depth += 1,
            b'[' => {
                if depth == 0 {
                    open = Some(i);
                    break;
                }
                depth -= 1;
            }
            _ => {}
        }
    }
    let open = open?;
    let base = expr[..open].trim();
    let idx = expr[open + 1..expr.len() - 1].trim();
    if base.is_empty() || idx.is_empty() {
        return None;
    }
    Some((base.to_string(), idx.to_string()))
}

/// Find the shared-memory expression inside an lvalue, either a direct
/// `params[i].memref.buffer` occurrence or an alias identifier.
fn shared_expr_in(
    text: &str,
    fc: &FunctionClassification,
    aliases: &BTreeMap<String, String>,
) -> Option<String> {
    if let Some(m) = param_buffer_re().find(text) {
        if fc.is_shared_mem(m.as_str()) {
            return Some(m.as_str().to_string());
        }
    }
    // alias identifiers anywhere in the expression
    let ident_re = {
        static RE: OnceLock<Regex> = OnceLock::new();
        RE.get_or_init(|| Regex::new(r"[A-Za-z_][A-Za-z0-9_]*").expect("static regex"))
    };
    for m in ident_re.find_iter(text) {
        if let Some(target) = aliases.get(m.as_str()) {
            if fc.is_shared_mem(target) {
                return Some(m.as_str().to_string());
            }
        }
    }
    None
}

fn parse_relop_split(cond: &str) -> Option<(String, RelOp, String)> {
    let bytes = cond.as_bytes();
    let mut depth = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth = depth.saturating_sub(1),
            b'=' | b'!' | b'<' | b'>' if depth == 0 => {
                let two = if i + 1 < bytes.len() { bytes[i + 1] } else { 0 };
                let (op, width) = match (bytes[i], two) {
                    (b'=', b'=') => (RelOp::Eq, 2),
                    (b'!', b'=') => (RelOp::Ne, 2),
                    (b'<', b'=') => (RelOp::Le, 2),
                    (b'>', b'=') => (RelOp::Ge, 2),
                    (b'<', _) => (RelOp::Lt, 1),
                    (b'>', _) => (RelOp::Gt, 1),
                    _ => {
                        i += 1;
                        continue;
                    }
                };
                let left = cond[..i].trim();
                let right = cond[i + width..].trim();
                if left.is_empty() || right.is_empty() {
                    return None;
                }
                return Some((left.to_string(), op, right.to_string()));
            }
            _ => {}
        }
        i += 1;
    }
    None
}

fn guard_node(cond: &str, ecode: &str) -> Option<DslNode> {
    let (left, op, right) = parse_relop_split(cond)?;
    Some(DslNode::Guard {
        left: term_of(&left),
        op,
        right: term_of(&right),
        action: GuardAction {
            ecode: ecode.to_string(),
        },
    })
}

fn single_line_guard(text: &str) -> Option<DslNode> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| {
        Regex::new(r"^if\s*\((?s)(.*)\)\s*return\s+([A-Za-z_][A-Za-z0-9_]*)\s*;$")
            .expect("static regex")
    });
    let caps = re.captures(text.trim())?;
    guard_node(&caps[1], &caps[2])
}

fn braced_guard(model: &SourceModel, stmt: &Statement) -> Option<(DslNode, Span)> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"^if\s*\((?s)(.*)\)\s*\{$").expect("static regex"));
    let caps = re.captures(stmt.text.trim())?;

    let idx = model
        .statements
        .iter()
        .position(|s| s.span.start_byte == stmt.span.start_byte)?;
    let ret = model.statements.get(idx + 1)?;
    let close = model.statements.get(idx + 2)?;
    static RET_RE: OnceLock<Regex> = OnceLock::new();
    let ret_re = RET_RE.get_or_init(|| {
        Regex::new(r"^return\s+([A-Za-z_][A-Za-z0-9_]*)\s*;$").expect("static regex")
    });
    let ret_caps = ret_re.captures(ret.text.trim())?;
    if close.text.trim() != "}" {
        return None;
    }
    let node = guard_node(&caps[1], &ret_caps[1])?;
    let span = Span {
        start_line: stmt.span.start_line,
        start_col: stmt.span.start_col,
        end_line: close.span.end_line,
        end_col: close.span.end_col,
        start_byte: stmt.span.start_byte,
        end_byte: close.span.end_byte,
    };
    Some((node, span))
}

/// Lift one statement to a DSL node, or `None` for unrecognized shapes.
pub fn abstract_statement(
    stmt: &Statement,
    fc: &FunctionClassification,
    model: &SourceModel,
) -> Option<AbstractStmt> {
    let aliases = match stmt.function.as_deref() {
        Some(function) => alias_map(model, function),
        None => BTreeMap::new(),
    };
    abstract_with_aliases(stmt, fc, model, &aliases)
}

pub(crate) fn abstract_with_aliases(
    stmt: &Statement,
    fc: &FunctionClassification,
    model: &SourceModel,
    aliases: &BTreeMap<String, String>,
) -> Option<AbstractStmt> {
    let text = stmt.text.trim();

    // guards
    if text.starts_with("if") {
        if let Some(node) = single_line_guard(text) {
            return Some(AbstractStmt {
                node,
                span: stmt.span.clone(),
                text: stmt.text.clone(),
                call_name: None,
            });
        }
        if let Some((node, span)) = braced_guard(model, stmt) {
            let text = model.extract_span(&span);
            return Some(AbstractStmt {
                node,
                span,
                text,
                call_name: None,
            });
        }
        return None;
    }

    // classified calls
    if let Some(found) = abstract_call(stmt, fc) {
        return Some(found);
    }

    // declarations: shallow aliases and fixed-size buffers
    if let Some(decl) = model
        .declarations
        .iter()
        .find(|d| d.span.start_byte == stmt.span.start_byte)
    {
        match (decl.kind, &decl.init) {
            (DeclKind::Pointer, Some(init)) => {
                let target = strip_casts(init);
                if param_buffer_re().is_match(target) && fc.is_shared_mem(target) {
                    return Some(AbstractStmt {
                        node: DslNode::FuncCall {
                            kind: CallKind::Shallow,
                            args: vec![DslTerm::Identifier(target.to_string())],
                            result: Some(DslTerm::Identifier(decl.name.clone())),
                        },
                        span: stmt.span.clone(),
                        text: stmt.text.clone(),
                        call_name: None,
                    });
                }
            }
            (DeclKind::Array, _) => {
                let size = match decl.len_hint {
                    Some(n) => DslTerm::Literal(n.to_string()),
                    None => {
                        let open = stmt.text.find('[')?;
                        let close = stmt.text[open..].find(']')? + open;
                        term_of(&stmt.text[open + 1..close])
                    }
                };
                return Some(AbstractStmt {
                    node: DslNode::FuncCall {
                        kind: CallKind::Malloc,
                        args: vec![size],
                        result: Some(DslTerm::Identifier(decl.name.clone())),
                    },
                    span: stmt.span.clone(),
                    text: stmt.text.clone(),
                    call_name: None,
                });
            }
            (_, Some(init)) => {
                // scalar initialized from an indexed read
                if let Some((base, idx)) = split_index_expr(strip_casts(init)) {
                    return Some(array_or_mutate(
                        stmt, fc, aliases, &base, &idx, Some(&decl.name), false,
                    ));
                }
            }
            _ => {}
        }
        return None;
    }

    // assignments: writes through shared memory, indexed reads/writes
    let body = text.strip_suffix(';')?;
    if let Some((lhs, rhs)) = split_assign(body) {
        let lhs = lhs.trim();
        let rhs = rhs.trim();
        if lhs.starts_with('*') {
            let target = lhs.trim_start_matches('*').trim();
            let target = target
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(target);
            if let Some(sm) = shared_expr_in(target, fc, aliases) {
                let sm_expr = resolve_alias(&sm, aliases).to_string();
                return Some(AbstractStmt {
                    node: DslNode::FuncCall {
                        kind: CallKind::Mutate,
                        args: vec![term_of(rhs)],
                        result: Some(DslTerm::Identifier(sm_expr)),
                    },
                    span: stmt.span.clone(),
                    text: stmt.text.clone(),
                    call_name: None,
                });
            }
            return None;
        }
        if let Some((base, idx)) = split_index_expr(lhs) {
            return Some(array_or_mutate(stmt, fc, aliases, &base, &idx, None, true));
        }
        if let Some((base, idx)) = split_index_expr(strip_casts(rhs)) {
            let result = trailing_identifier(lhs);
            return Some(array_or_mutate(
                stmt,
                fc,
                aliases,
                &base,
                &idx,
                result.as_deref(),
                false,
            ));
        }
    }
    None
}

/// Indexed access: a write through shared memory is a MUTATE, anything
/// else is an ARRAY access.
#[allow(clippy::too_many_arguments)]
fn array_or_mutate(
    stmt: &Statement,
    fc: &FunctionClassification,
    aliases: &BTreeMap<String, String>,
    base: &str,
    idx: &str,
    result: Option<&str>,
    is_write: bool,
) -> AbstractStmt {
    let resolved_base = resolve_alias(base, aliases);
    if is_write && fc.is_shared_mem(resolved_base) {
        let rhs = stmt
            .text
            .trim()
            .strip_suffix(';')
            .and_then(split_assign)
            .map(|(_, r)| r.trim().to_string())
            .unwrap_or_default();
        return AbstractStmt {
            node: DslNode::FuncCall {
                kind: CallKind::Mutate,
                args: vec![term_of(&rhs)],
                result: Some(DslTerm::Identifier(resolved_base.to_string())),
            },
            span: stmt.span.clone(),
            text: stmt.text.clone(),
            call_name: None,
        };
    }
    AbstractStmt {
        node: DslNode::FuncCall {
            kind: CallKind::Array,
            args: vec![DslTerm::Identifier(base.to_string()), term_of(idx)],
            result: Some(match result {
                Some(name) => DslTerm::Identifier(name.to_string()),
                None => DslTerm::discard(),
            }),
        },
        span: stmt.span.clone(),
        text: stmt.text.clone(),
        call_name: None,
    }
}

fn abstract_call(stmt: &Statement, fc: &FunctionClassification) -> Option<AbstractStmt> {
    let (lhs, name, args) = parse_call_statement(&stmt.text)?;
    let wrap = |kind: CallKind, call_args: Vec<DslTerm>, result: Option<DslTerm>| {
        Some(AbstractStmt {
            node: DslNode::FuncCall {
                kind,
                args: call_args,
                result,
            },
            span: stmt.span.clone(),
            text: stmt.text.clone(),
            call_name: Some(name.clone()),
        })
    };

    if fc.copy_fns.contains(&name) && args.len() == 3 {
        let terms: Vec<DslTerm> = args.iter().map(|a| term_of(a)).collect();
        return wrap(CallKind::Copy, terms, Some(DslTerm::discard()));
    }
    if fc.snprint_fns.contains(&name) && args.len() >= 3 {
        let fmt_idx = args
            .iter()
            .position(|a| a.trim().starts_with('"'))
            .unwrap_or(1);
        if fmt_idx + 1 >= args.len() {
            return None; // no variadic data arguments
        }
        let mut terms = vec![term_of(&args[0]), term_of(&args[fmt_idx])];
        terms.extend(args[fmt_idx + 1..].iter().map(|a| term_of(a)));
        return wrap(CallKind::Snprint, terms, Some(DslTerm::discard()));
    }
    if fc.enc_fns.contains(&name) && args.len() == 3 {
        let terms: Vec<DslTerm> = args.iter().map(|a| term_of(a)).collect();
        return wrap(CallKind::Enc, terms, Some(DslTerm::discard()));
    }
    if fc.hash_fns.contains(&name) && args.len() == 3 {
        // C order is hash(out, base, len); the DSL orders HASH(Base, Var, Len)
        let terms = vec![term_of(&args[1]), term_of(&args[0]), term_of(&args[2])];
        return wrap(CallKind::Hash, terms, Some(DslTerm::discard()));
    }
    if fc.read_fns.contains(&name) && args.len() == 1 {
        return wrap(CallKind::Read, Vec::new(), Some(term_of(&args[0])));
    }
    if fc.write_fns.contains(&name) && args.len() == 1 {
        return wrap(CallKind::Write, vec![term_of(&args[0])], None);
    }
    if fc.malloc_fns.contains(&name) && !args.is_empty() {
        let result = lhs?;
        return wrap(
            CallKind::Malloc,
            vec![term_of(&args[0])],
            Some(DslTerm::Identifier(result)),
        );
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmodel::load_source;

    fn abstract_text(src: &str, needle: &str) -> Option<AbstractStmt> {
        let m = load_source(src).unwrap();
        let fc = FunctionClassification::default();
        let stmt = m
            .statements
            .iter()
            .find(|s| s.text.contains(needle))
            .expect("statement present");
        abstract_statement(stmt, &fc, &m)
    }

    const WRAP: &str = "TEE_Result f(uint32_t t, TEE_Param params[4])\n{\n    %BODY%\n    return TEE_SUCCESS;\n}\n";

    fn wrap(body: &str) -> String {
        WRAP.replace("%BODY%", body)
    }

    #[test]
    fn copy_call_abstracts_to_copy() {
        let got = abstract_text(
            &wrap("char plain[128];\n    TEE_MemMove(params[0].memref.buffer, plain, 128);"),
            "TEE_MemMove",
        )
        .unwrap();
        match got.node {
            DslNode::FuncCall { kind, args, .. } => {
                assert_eq!(kind, CallKind::Copy);
                assert_eq!(args[0].render(), "params[0].memref.buffer");
                assert_eq!(args[1].render(), "plain");
                assert_eq!(args[2].render(), "128");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(got.call_name.as_deref(), Some("TEE_MemMove"));
    }

    #[test]
    fn shared_pointer_declaration_is_shallow() {
        let got = abstract_text(&wrap("char* buf = params[3].memref.buffer;"), "buf").unwrap();
        match got.node {
            DslNode::FuncCall { kind, args, result } => {
                assert_eq!(kind, CallKind::Shallow);
                assert_eq!(args[0].render(), "params[3].memref.buffer");
                assert_eq!(result.unwrap().render(), "buf");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn plain_arithmetic_is_opaque() {
        let src = wrap("int x = 0;\n    x = x + 1;");
        let m = load_source(&src).unwrap();
        let fc = FunctionClassification::default();
        let stmt = m
            .statements
            .iter()
            .find(|s| s.text.contains("x + 1"))
            .unwrap();
        assert!(abstract_statement(stmt, &fc, &m).is_none());
    }

    #[test]
    fn deref_write_through_shared_memory_is_mutate() {
        let got = abstract_text(
            &wrap("*(params[3].memref.buffer + 10) = 0x55;"),
            "0x55",
        )
        .unwrap();
        match got.node {
            DslNode::FuncCall { kind, args, result } => {
                assert_eq!(kind, CallKind::Mutate);
                assert_eq!(args[0].render(), "0x55");
                assert_eq!(result.unwrap().render(), "params[3].memref.buffer");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn indexed_write_through_shared_memory_is_mutate() {
        let got = abstract_text(&wrap("params[1].memref.buffer[7] = 1;"), "= 1").unwrap();
        assert_eq!(got.node.call_kind(), Some(CallKind::Mutate));
    }

    #[test]
    fn indexed_write_to_local_array_is_array() {
        let got = abstract_text(
            &wrap("int table[16];\n    table[params[0].value.a] = 1;"),
            "table[params",
        )
        .unwrap();
        match got.node {
            DslNode::FuncCall { kind, args, .. } => {
                assert_eq!(kind, CallKind::Array);
                assert_eq!(args[0].render(), "table");
                assert_eq!(args[1].render(), "params[0].value.a");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn indexed_read_of_input_buffer_is_array() {
        let got = abstract_text(
            &wrap("char c = params[2].memref.buffer[15];"),
            "char c",
        )
        .unwrap();
        match got.node {
            DslNode::FuncCall { kind, args, result } => {
                assert_eq!(kind, CallKind::Array);
                assert_eq!(args[0].render(), "params[2].memref.buffer");
                assert_eq!(args[1].render(), "15");
                assert_eq!(result.unwrap().render(), "c");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn aliased_index_read_resolves_via_alias() {
        let got = abstract_text(
            &wrap("char *array = (char *)params[2].memref.buffer;\n    char c = array[15];"),
            "char c",
        )
        .unwrap();
        assert_eq!(got.node.call_kind(), Some(CallKind::Array));
    }

    #[test]
    fn braced_guard_folds_to_one_node() {
        let got = abstract_text(
            &wrap("if (params[1].memref.size > 64) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }"),
            "if (params",
        )
        .unwrap();
        match got.node {
            DslNode::Guard { left, op, right, action } => {
                assert_eq!(left.render(), "params[1].memref.size");
                assert_eq!(op, RelOp::Gt);
                assert_eq!(right.render(), "64");
                assert_eq!(action.ecode, "TEE_ERROR_BAD_PARAMETERS");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(got.text.contains('}'));
    }

    #[test]
    fn single_line_guard_recognized() {
        let got = abstract_text(&wrap("if (n < 0) return TEE_ERROR_BAD_PARAMETERS;"), "if (n")
            .unwrap();
        assert!(matches!(got.node, DslNode::Guard { .. }));
    }

    #[test]
    fn compare_call_guard_operand_kept_textually() {
        let got = abstract_text(
            &wrap("if (TEE_MemCompare(h1, h2, 256) != 0) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }"),
            "TEE_MemCompare",
        )
        .unwrap();
        match got.node {
            DslNode::Guard { left, op, .. } => {
                assert_eq!(left.render(), "TEE_MemCompare(h1, h2, 256)");
                assert_eq!(op, RelOp::Ne);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn read_write_hash_calls_abstract() {
        let src = wrap(
            "char h1[256];\n    read(h1);\n    char h2[256];\n    hash(h2, h1, 256);\n    write(h2);",
        );
        let m = load_source(&src).unwrap();
        let fc = FunctionClassification::default();
        let kinds: Vec<_> = m
            .statements
            .iter()
            .filter_map(|s| abstract_statement(s, &fc, &m))
            .filter_map(|a| a.node.call_kind())
            .collect();
        assert_eq!(
            kinds,
            vec![
                CallKind::Malloc,
                CallKind::Read,
                CallKind::Malloc,
                CallKind::Hash,
                CallKind::Write
            ]
        );
    }

    #[test]
    fn malloc_assignment_binds_result() {
        let got = abstract_text(&wrap("void *p = TEE_Malloc(64, 0);"), "TEE_Malloc").unwrap();
        match got.node {
            DslNode::FuncCall { kind, args, result } => {
                assert_eq!(kind, CallKind::Malloc);
                assert_eq!(args[0].render(), "64");
                assert_eq!(result.unwrap().render(), "p");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn snprintf_collects_variadic_args() {
        let got = abstract_text(
            &wrap("snprintf(params[0].memref.buffer, params[0].memref.size, \"%s %s\", user, pass);"),
            "snprintf",
        )
        .unwrap();
        match got.node {
            DslNode::FuncCall { kind, args, .. } => {
                assert_eq!(kind, CallKind::Snprint);
                assert_eq!(args[0].render(), "params[0].memref.buffer");
                assert_eq!(args[1].render(), "\"%s %s\"");
                assert_eq!(args[2].render(), "user");
                assert_eq!(args[3].render(), "pass");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
