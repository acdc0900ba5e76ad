//! AST for the repair-rule DSL.
//!
//! A rule is two programs separated by `=>`: the trigger describes the
//! vulnerable statement shape, the transformer describes its secure
//! replacement. Programs are semicolon-separated sequences of nodes, each
//! node either an abstract function call or a guard.

use std::collections::BTreeSet;
use std::fmt;

/// The closed set of abstract call kinds admitted by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CallKind {
    Copy,
    Snprint,
    Malloc,
    Enc,
    MulMalloc,
    MulEnc,
    Array,
    Shallow,
    Read,
    Write,
    Hash,
    Mutate,
}

impl CallKind {
    pub fn keyword(self) -> &'static str {
        match self {
            CallKind::Copy => "COPY",
            CallKind::Snprint => "SNPRINT",
            CallKind::Malloc => "MALLOC",
            CallKind::Enc => "ENC",
            CallKind::MulMalloc => "MULMALLOC",
            CallKind::MulEnc => "MULENC",
            CallKind::Array => "ARRAY",
            CallKind::Shallow => "SHALLOW",
            CallKind::Read => "READ",
            CallKind::Write => "WRITE",
            CallKind::Hash => "HASH",
            CallKind::Mutate => "MUTATE",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "COPY" => CallKind::Copy,
            "SNPRINT" => CallKind::Snprint,
            "MALLOC" => CallKind::Malloc,
            "ENC" => CallKind::Enc,
            "MULMALLOC" => CallKind::MulMalloc,
            "MULENC" => CallKind::MulEnc,
            "ARRAY" => CallKind::Array,
            "SHALLOW" => CallKind::Shallow,
            "READ" => CallKind::Read,
            "WRITE" => CallKind::Write,
            "HASH" => CallKind::Hash,
            "MUTATE" => CallKind::Mutate,
            _ => return None,
        })
    }

    /// (min args, max args, result requirement) per the grammar.
    pub fn arity(self) -> (usize, Option<usize>, ResultSlot) {
        match self {
            CallKind::Copy => (3, Some(3), ResultSlot::Optional),
            // dest, format, then at least one variadic argument
            CallKind::Snprint => (3, None, ResultSlot::Optional),
            CallKind::Malloc => (1, Some(1), ResultSlot::Required),
            CallKind::Enc => (3, Some(3), ResultSlot::Optional),
            CallKind::MulMalloc => (1, Some(1), ResultSlot::Required),
            CallKind::MulEnc => (2, Some(2), ResultSlot::Optional),
            CallKind::Array => (2, Some(2), ResultSlot::Required),
            CallKind::Shallow => (1, Some(1), ResultSlot::Required),
            CallKind::Read => (0, Some(0), ResultSlot::Required),
            CallKind::Write => (1, Some(1), ResultSlot::Optional),
            CallKind::Hash => (3, Some(3), ResultSlot::Optional),
            CallKind::Mutate => (1, Some(1), ResultSlot::Required),
        }
    }

    /// Index from which arguments are a variadic tail that one list
    /// placeholder may absorb during matching (SNPRINT's Args).
    pub fn variadic_from(self) -> Option<usize> {
        match self {
            CallKind::Snprint => Some(2),
            CallKind::MulMalloc => Some(0),
            _ => None,
        }
    }
}

/// Whether a call kind carries a `-> result` clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultSlot {
    Required,
    Optional,
}

/// Relational operators admitted in guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Eq => "==",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A term in a DSL node: identifiers, literals, `$`-placeholders, `&name`
/// base-address aliases, and the reserved `equal(a, b)` comparison term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DslTerm {
    Identifier(String),
    Literal(String),
    Placeholder(String),
    AddressOf(String),
    Equal(Box<DslTerm>, Box<DslTerm>),
}

impl DslTerm {
    /// The discard marker `_`, modeled as a placeholder that never binds.
    pub fn discard() -> Self {
        DslTerm::Placeholder("_".to_string())
    }

    pub fn is_discard(&self) -> bool {
        matches!(self, DslTerm::Placeholder(name) if name == "_")
    }

    /// Placeholder name, when this term is a (non-discard) placeholder.
    pub fn placeholder_name(&self) -> Option<&str> {
        match self {
            DslTerm::Placeholder(name) if name != "_" => Some(name),
            _ => None,
        }
    }

    /// Concrete source rendering of the term.
    pub fn render(&self) -> String {
        match self {
            DslTerm::Identifier(s) | DslTerm::Literal(s) => s.clone(),
            DslTerm::Placeholder(name) => {
                if name == "_" {
                    "_".to_string()
                } else {
                    format!("${name}")
                }
            }
            DslTerm::AddressOf(name) => format!("&{name}"),
            DslTerm::Equal(a, b) => format!("equal({}, {})", a.render(), b.render()),
        }
    }

    fn collect_placeholders(&self, out: &mut BTreeSet<String>) {
        match self {
            DslTerm::Placeholder(name) if name != "_" => {
                out.insert(name.clone());
            }
            DslTerm::Equal(a, b) => {
                a.collect_placeholders(out);
                b.collect_placeholders(out);
            }
            _ => {}
        }
    }
}

/// A single DSL node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DslNode {
    FuncCall {
        kind: CallKind,
        args: Vec<DslTerm>,
        result: Option<DslTerm>,
    },
    Guard {
        left: DslTerm,
        op: RelOp,
        right: DslTerm,
        // Action is fixed to `return ECODE` by the grammar; the error code
        // symbol is stored so lowering can substitute the configured one.
        action: GuardAction,
    },
}

/// The guard action, `return ECODE`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardAction {
    pub ecode: String,
}

impl Default for GuardAction {
    fn default() -> Self {
        GuardAction {
            ecode: "ECODE".to_string(),
        }
    }
}

impl DslNode {
    pub fn call_kind(&self) -> Option<CallKind> {
        match self {
            DslNode::FuncCall { kind, .. } => Some(*kind),
            DslNode::Guard { .. } => None,
        }
    }

    pub fn placeholders(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        match self {
            DslNode::FuncCall { args, result, .. } => {
                for arg in args {
                    arg.collect_placeholders(&mut out);
                }
                if let Some(r) = result {
                    r.collect_placeholders(&mut out);
                }
            }
            DslNode::Guard { left, right, .. } => {
                left.collect_placeholders(&mut out);
                right.collect_placeholders(&mut out);
            }
        }
        out
    }
}

/// An ordered sequence of nodes: one side of a rule.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DslProgram {
    pub nodes: Vec<DslNode>,
}

impl DslProgram {
    pub fn placeholders(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for node in &self.nodes {
            out.extend(node.placeholders());
        }
        out
    }
}

/// A parsed repair rule: trigger, transformer, and the placeholder
/// classification computed at parse time. Transformer-only placeholders
/// are implicitly fresh (to be synthesized).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslRule {
    pub name: String,
    pub trigger: DslProgram,
    pub transformer: DslProgram,
    pub fresh: BTreeSet<String>,
}

impl DslRule {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Placeholders bound by matching the trigger (everything except `_`).
    pub fn bound_placeholders(&self) -> BTreeSet<String> {
        self.trigger.placeholders()
    }
}
