//! Statement-level model of trusted-application C source.

pub(crate) mod abstraction;
mod classify;
mod client_spec;
mod load;
mod scope;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub use abstraction::{abstract_statement, parse_call_statement, strip_casts, AbstractStmt};
pub use classify::FunctionClassification;
pub use client_spec::{extract_client_spec, ClientSpec, CommandId, CommandSpec, ParamType};
pub use load::{load_source, load_source_file, load_source_named, normalize_ws};
pub use scope::names_in_scope;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unbalanced braces at line {line}")]
    UnbalancedBraces { line: usize },
    #[error("no entry-point function found")]
    NoEntryPoint,
    #[error("entry point has no command cases")]
    NoCases,
    #[error("no UUID definition found in source or configuration")]
    MissingUuid,
}

/// Source location of a statement or declaration. Lines and columns are
/// 1-based; byte offsets index into the original text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start_line: usize,
    pub start_col: usize,
    pub end_line: usize,
    pub end_col: usize,
    pub start_byte: usize,
    pub end_byte: usize,
}

impl Span {
    pub fn lines_overlap(&self, other: &Span) -> bool {
        self.start_line <= other.end_line && other.start_line <= self.end_line
    }
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub span: Span,
    pub text: String,
    pub function: Option<String>,
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclKind {
    Array,
    Pointer,
    Scalar,
}

#[derive(Debug, Clone)]
pub struct Declaration {
    pub name: String,
    pub kind: DeclKind,
    /// Element byte size from the base type, when known.
    pub elem_size: Option<usize>,
    /// Element count for statically sized arrays.
    pub len_hint: Option<usize>,
    /// Initializer text after `=`, when present.
    pub init: Option<String>,
    pub span: Span,
    pub function: Option<String>,
}

#[derive(Debug, Clone)]
pub struct FunctionDef {
    pub name: String,
    pub params: Vec<String>,
    pub span: Span,
}

/// An object-like `#define`, captured literally.
#[derive(Debug, Clone)]
pub struct Define {
    pub name: String,
    pub value: String,
}

/// Immutable statement-level view of one translation unit.
#[derive(Debug, Clone)]
pub struct SourceModel {
    pub path: Option<String>,
    pub text: String,
    pub lines: Vec<String>,
    pub statements: Vec<Statement>,
    pub declarations: Vec<Declaration>,
    pub functions: Vec<FunctionDef>,
    pub defines: BTreeMap<String, Define>,
}

impl SourceModel {
    /// Reproduce a span's text from the stored lines.
    pub fn extract_span(&self, span: &Span) -> String {
        if span.start_line == span.end_line {
            let line = &self.lines[span.start_line - 1];
            return line[span.start_col - 1..span.end_col - 1].to_string();
        }
        let mut out = String::new();
        out.push_str(&self.lines[span.start_line - 1][span.start_col - 1..]);
        for line in &self.lines[span.start_line..span.end_line - 1] {
            out.push('\n');
            out.push_str(line);
        }
        out.push('\n');
        out.push_str(&self.lines[span.end_line - 1][..span.end_col - 1]);
        out
    }

    pub fn function_named(&self, name: &str) -> Option<&FunctionDef> {
        self.functions.iter().find(|f| f.name == name)
    }

    /// Statements belonging to one function, in source order.
    pub fn statements_in<'a>(
        &'a self,
        function: &'a str,
    ) -> impl Iterator<Item = &'a Statement> + 'a {
        self.statements
            .iter()
            .filter(move |s| s.function.as_deref() == Some(function))
    }

    pub fn statement_at(&self, span: &Span) -> Option<&Statement> {
        self.statements
            .iter()
            .find(|s| s.span.start_byte == span.start_byte && s.span.end_byte == span.end_byte)
    }

    pub fn declaration_of(&self, name: &str, function: Option<&str>) -> Option<&Declaration> {
        self.declarations
            .iter()
            .filter(|d| d.name == name)
            .find(|d| d.function.as_deref() == function || d.function.is_none())
    }

    /// Resolve an object-like macro chain to an integer, if it ends in one.
    pub fn resolve_const(&self, text: &str) -> Option<u64> {
        let mut current = text.trim().to_string();
        for _ in 0..4 {
            if let Some(hex) = current.strip_prefix("0x").or_else(|| current.strip_prefix("0X")) {
                return u64::from_str_radix(hex, 16).ok();
            }
            if let Ok(n) = current.parse::<u64>() {
                return Some(n);
            }
            match self.defines.get(current.as_str()) {
                Some(def) => current = def.value.clone(),
                None => return None,
            }
        }
        None
    }
}
