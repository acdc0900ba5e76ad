//! Per-function analysis context shared by the three detectors.

use std::collections::BTreeMap;

use super::GuardSense;
use crate::cmodel::{
    normalize_ws, parse_call_statement, strip_casts, AbstractStmt, FunctionClassification,
    SourceModel, Statement,
};
use crate::dsl::{DslNode, RelOp};

pub(crate) struct FunctionCtx<'a> {
    model: &'a SourceModel,
    fc: &'a FunctionClassification,
    function: String,
    aliases: BTreeMap<String, String>,
    abstracted: Vec<(&'a Statement, AbstractStmt)>,
}

impl<'a> FunctionCtx<'a> {
    pub fn new(model: &'a SourceModel, fc: &'a FunctionClassification, function: &str) -> Self {
        let aliases = crate::cmodel::abstraction::alias_map(model, function);
        let abstracted = model
            .statements_in(function)
            .filter_map(|stmt| {
                crate::cmodel::abstraction::abstract_with_aliases(stmt, fc, model, &aliases)
                    .map(|abs| (stmt, abs))
            })
            .collect();
        FunctionCtx {
            model,
            fc,
            function: function.to_string(),
            aliases,
            abstracted,
        }
    }

    pub fn abstracted(&self) -> impl Iterator<Item = (&&'a Statement, &AbstractStmt)> {
        self.abstracted.iter().map(|(s, a)| (s, a))
    }

    pub fn resolve(&self, expr: &str) -> &str {
        crate::cmodel::abstraction::resolve_alias(expr, &self.aliases)
    }

    pub fn is_declared(&self, name: &str) -> bool {
        let name = strip_casts(name);
        self.model
            .declarations
            .iter()
            .any(|d| d.name == name && (d.function.is_none() || d.function.as_deref() == Some(&self.function)))
    }

    /// Sensitive data by default: anything declared inside the TEE or read
    /// from secure storage, unless its contents demonstrably came from the
    /// normal side (copied in from an input parameter, or the expression
    /// is itself a parameter access).
    pub fn is_sensitive(&self, src: &str, stmt: &Statement) -> bool {
        let src = strip_casts(src).trim();
        if src.starts_with('"') || src.starts_with('\'') || src.chars().all(|c| c.is_ascii_digit())
        {
            return false;
        }
        if src.contains("params[") {
            return false;
        }
        let resolved = self.resolve(src);
        if self.fc.is_input_param(resolved) || self.fc.is_shared_mem(resolved) {
            return false;
        }
        if self.copied_from_input_before(src, stmt) {
            return false;
        }
        self.is_declared(src) || self.is_read_result(src, stmt)
    }

    /// Any earlier call to a classified encryption helper that mentions
    /// the expression among its arguments.
    pub fn encrypted_before(&self, expr: &str, stmt: &Statement) -> bool {
        self.calls_before(stmt).any(|(name, args)| {
            self.fc.enc_fns.contains(&name)
                && args.iter().any(|a| strip_casts(a) == strip_casts(expr))
        })
    }

    fn is_read_result(&self, expr: &str, stmt: &Statement) -> bool {
        self.calls_before(stmt).any(|(name, args)| {
            self.fc.read_fns.contains(&name)
                && args.len() == 1
                && strip_casts(&args[0]) == strip_casts(expr)
        })
    }

    fn copied_from_input_before(&self, expr: &str, stmt: &Statement) -> bool {
        self.calls_before(stmt).any(|(name, args)| {
            self.fc.copy_fns.contains(&name)
                && args.len() == 3
                && strip_casts(&args[0]) == strip_casts(expr)
                && {
                    let src = self.resolve(&args[1]);
                    self.fc.is_input_param(src) || self.fc.is_shared_mem(src)
                }
        })
    }

    fn calls_before(
        &self,
        stmt: &Statement,
    ) -> impl Iterator<Item = (String, Vec<String>)> + '_ {
        let before = stmt.span.start_byte;
        self.model
            .statements_in(&self.function)
            .take_while(move |s| s.span.start_byte < before)
            .filter_map(|s| parse_call_statement(&s.text).map(|(_, name, args)| (name, args)))
    }

    /// Whether an expression is normal-side-controlled: it mentions an
    /// input size or value field directly, or it is an identifier whose
    /// initialization or assignment does (one level).
    pub fn derives_from_input(&self, expr: &str, stmt: &Statement) -> bool {
        let expr = strip_casts(expr);
        if crate::cmodel::abstraction::param_scalar_re().is_match(expr) {
            return true;
        }
        if !expr.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return false;
        }
        if let Some(decl) = self
            .model
            .declarations
            .iter()
            .find(|d| d.name == expr && d.function.as_deref() == Some(&self.function))
        {
            if let Some(init) = &decl.init {
                if crate::cmodel::abstraction::param_scalar_re().is_match(init) {
                    return true;
                }
            }
        }
        let before = stmt.span.start_byte;
        self.model
            .statements_in(&self.function)
            .take_while(|s| s.span.start_byte < before)
            .any(|s| {
                let text = s.text.trim().trim_end_matches(';');
                match text.split_once('=') {
                    Some((lhs, rhs))
                        if !lhs.ends_with(['=', '!', '<', '>']) && !rhs.starts_with('=') =>
                    {
                        lhs.trim() == expr
                            && crate::cmodel::abstraction::param_scalar_re().is_match(rhs)
                    }
                    _ => false,
                }
            })
    }

    /// A guard on the same expression, textually before the statement and
    /// at the same or shallower brace depth.
    pub fn has_guard(&self, expr: &str, sense: GuardSense, stmt: &Statement) -> bool {
        let want = normalize_ws(strip_casts(expr));
        self.guards_before(stmt).any(|(left, op, right)| {
            (left == want && sense.left_ops().contains(&op))
                || (right == want && sense.right_ops().contains(&op))
        })
    }

    fn guards_before(
        &self,
        stmt: &Statement,
    ) -> impl Iterator<Item = (String, RelOp, String)> + '_ {
        let before = stmt.span.start_byte;
        let depth = stmt.depth;
        self.abstracted
            .iter()
            .filter(move |(s, abs)| s.span.start_byte < before && {
                let _ = abs;
                s.depth <= depth
            })
            .filter_map(|(_, abs)| match &abs.node {
                DslNode::Guard { left, op, right, .. } => Some((
                    normalize_ws(&left.render()),
                    *op,
                    normalize_ws(&right.render()),
                )),
                _ => None,
            })
    }

    /// Deep copy of the region plus a hash-comparison guard, both before
    /// the statement: the integrity-check pattern of the repair rules.
    pub fn integrity_checked_before(&self, sm_expr: &str, stmt: &Statement) -> bool {
        let deep_copied = self.calls_before(stmt).any(|(name, args)| {
            self.fc.copy_fns.contains(&name)
                && args.len() == 3
                && self.resolve(&args[1]) == strip_casts(sm_expr)
                && self.is_declared(&args[0])
        });
        if !deep_copied {
            return false;
        }
        let before = stmt.span.start_byte;
        self.abstracted
            .iter()
            .filter(|(s, _)| s.span.start_byte < before)
            .any(|(_, abs)| match &abs.node {
                DslNode::Guard { left, right, .. } => {
                    let compare = |text: &str| {
                        self.fc
                            .compare_fns
                            .iter()
                            .any(|f| text.contains(&format!("{f}(")))
                    };
                    compare(&left.render()) || compare(&right.render())
                }
                _ => false,
            })
    }
}

