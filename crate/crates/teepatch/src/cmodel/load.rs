//! Statement-level loading of trusted-application C source.
//!
//! This is deliberately not a C parser. Statements are split on `;` and
//! braces outside strings and comments, declarations and function
//! definitions are recognized by token shape, and everything else is kept
//! as an opaque statement. That is enough surface for the three
//! bad-partitioning analyses, which match single statements plus local
//! declarations.

use std::collections::BTreeMap;
use std::path::Path;

use super::{
    Declaration, DeclKind, Define, FunctionDef, ModelError, SourceModel, Span, Statement,
};

const CONTROL_KEYWORDS: &[&str] = &[
    "if", "else", "for", "while", "do", "switch", "case", "default", "return", "goto", "break",
    "continue", "typedef", "sizeof",
];

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct RawStmt {
    start: usize,
    end: usize,
    start_line: usize,
    start_col: usize,
    end_line: usize,
    end_col: usize,
    depth: usize,
    boundary: Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Boundary {
    Semi,
    OpenBrace,
    CloseBrace,
    Label,
    Preprocessor,
    Eof,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek2(&self) -> Option<u8> {
        self.bytes.get(self.pos + 1).copied()
    }

    fn bump(&mut self) {
        if let Some(b) = self.peek() {
            self.pos += 1;
            if b == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    fn skip_line_comment(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'\n' {
                break;
            }
            self.bump();
        }
    }

    fn skip_block_comment(&mut self) {
        self.bump();
        self.bump();
        while let Some(b) = self.peek() {
            if b == b'*' && self.peek2() == Some(b'/') {
                self.bump();
                self.bump();
                return;
            }
            let _ = b;
            self.bump();
        }
    }

    fn skip_quoted(&mut self, quote: u8) {
        self.bump();
        while let Some(b) = self.peek() {
            if b == b'\\' {
                self.bump();
                self.bump();
            } else if b == quote {
                self.bump();
                return;
            } else {
                self.bump();
            }
        }
    }

    /// Consume a balanced `{...}` group, including nested groups.
    fn consume_braced_group(&mut self) {
        self.bump(); // `{`
        let mut nesting = 1usize;
        while let Some(b) = self.peek() {
            match b {
                b'{' => {
                    nesting += 1;
                    self.bump();
                }
                b'}' => {
                    nesting -= 1;
                    self.bump();
                    if nesting == 0 {
                        return;
                    }
                }
                b'"' => self.skip_quoted(b'"'),
                b'\'' => self.skip_quoted(b'\''),
                b'/' if self.peek2() == Some(b'*') => self.skip_block_comment(),
                b'/' if self.peek2() == Some(b'/') => self.skip_line_comment(),
                _ => self.bump(),
            }
        }
    }

    /// Consume a preprocessor logical line, honoring `\` continuations.
    fn skip_preprocessor(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'\\' {
                self.bump();
                if self.peek() == Some(b'\r') {
                    self.bump();
                }
                if self.peek() == Some(b'\n') {
                    self.bump();
                }
            } else if b == b'\n' {
                return;
            } else if b == b'/' && self.peek2() == Some(b'*') {
                self.skip_block_comment();
            } else {
                self.bump();
            }
        }
    }

    fn split(mut self) -> Result<Vec<RawStmt>, ModelError> {
        let mut out = Vec::new();
        let mut depth: usize = 0;
        let mut start: Option<(usize, usize, usize)> = None; // (byte, line, col)

        macro_rules! close {
            ($self:expr, $end:expr, $end_line:expr, $end_col:expr, $boundary:expr) => {
                if let Some((s, sl, sc)) = start.take() {
                    if $end > s {
                        out.push(RawStmt {
                            start: s,
                            end: $end,
                            start_line: sl,
                            start_col: sc,
                            end_line: $end_line,
                            end_col: $end_col,
                            depth,
                            boundary: $boundary,
                        });
                    }
                }
            };
        }

        while let Some(b) = self.peek() {
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'/' if self.peek2() == Some(b'/') => {
                    if start.is_some() {
                        self.skip_line_comment();
                    } else {
                        self.skip_line_comment();
                    }
                }
                b'/' if self.peek2() == Some(b'*') => {
                    self.skip_block_comment();
                }
                b'#' if start.is_none() => {
                    let (s, sl, sc) = (self.pos, self.line, self.col);
                    self.skip_preprocessor();
                    out.push(RawStmt {
                        start: s,
                        end: self.pos,
                        start_line: sl,
                        start_col: sc,
                        end_line: self.line,
                        end_col: self.col,
                        depth,
                        boundary: Boundary::Preprocessor,
                    });
                }
                b'"' => {
                    if start.is_none() {
                        start = Some((self.pos, self.line, self.col));
                    }
                    self.skip_quoted(b'"');
                }
                b'\'' => {
                    if start.is_none() {
                        start = Some((self.pos, self.line, self.col));
                    }
                    self.skip_quoted(b'\'');
                }
                b';' => {
                    if start.is_none() {
                        start = Some((self.pos, self.line, self.col));
                    }
                    self.bump();
                    close!(self, self.pos, self.line, self.col, Boundary::Semi);
                }
                b'{' => {
                    // a brace after a top-level `=` opens an initializer
                    // list, which stays inside the running statement
                    let is_initializer = start.is_some_and(|(s, _, _)| {
                        let text = std::str::from_utf8(&self.bytes[s..self.pos]).unwrap_or("");
                        has_top_level_assign(text)
                    });
                    if is_initializer {
                        self.consume_braced_group();
                    } else {
                        if start.is_none() {
                            start = Some((self.pos, self.line, self.col));
                        }
                        self.bump();
                        close!(self, self.pos, self.line, self.col, Boundary::OpenBrace);
                        depth += 1;
                    }
                }
                b'}' => {
                    close!(self, self.pos, self.line, self.col, Boundary::CloseBrace);
                    if depth == 0 {
                        return Err(ModelError::UnbalancedBraces { line: self.line });
                    }
                    depth -= 1;
                    let (s, sl, sc) = (self.pos, self.line, self.col);
                    self.bump();
                    out.push(RawStmt {
                        start: s,
                        end: self.pos,
                        start_line: sl,
                        start_col: sc,
                        end_line: self.line,
                        end_col: self.col,
                        depth,
                        boundary: Boundary::CloseBrace,
                    });
                }
                b':' => {
                    // close `case X:` / `default:` labels; otherwise the
                    // colon is kept inside the running statement
                    let is_label = start.is_some_and(|(s, _, _)| {
                        let text = std::str::from_utf8(&self.bytes[s..self.pos]).unwrap_or("");
                        let text = text.trim_start();
                        text.starts_with("case ")
                            || text.starts_with("case\t")
                            || text == "default"
                    });
                    self.bump();
                    if is_label {
                        close!(self, self.pos, self.line, self.col, Boundary::Label);
                    }
                }
                _ => {
                    if start.is_none() {
                        start = Some((self.pos, self.line, self.col));
                    }
                    self.bump();
                }
            }
        }
        let final_line = self.line;
        close!(self, self.pos, final_line, self.col, Boundary::Eof);
        if depth != 0 {
            return Err(ModelError::UnbalancedBraces { line: final_line });
        }
        Ok(out)
    }
}

/// Load C source text into a [`SourceModel`].
pub fn load_source(text: &str) -> Result<SourceModel, ModelError> {
    load_source_named(text, None)
}

pub fn load_source_file(path: &Path) -> Result<SourceModel, crate::Error> {
    let text = std::fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
    Ok(load_source_named(&text, Some(path.display().to_string()))?)
}

pub fn load_source_named(text: &str, name: Option<String>) -> Result<SourceModel, ModelError> {
    let raw = Scanner::new(text).split()?;
    let lines: Vec<String> = text.lines().map(|l| l.to_string()).collect();

    // Pass 1: function definitions. A `{`-terminated statement at depth 0
    // whose head looks like `ret name(args)` opens a function; the `}`
    // that returns to depth 0 closes it.
    let mut functions: Vec<FunctionDef> = Vec::new();
    let mut open_fn: Option<usize> = None;
    for stmt in &raw {
        match stmt.boundary {
            Boundary::OpenBrace if stmt.depth == 0 => {
                let head = &text[stmt.start..stmt.end];
                if let Some((fn_name, params)) = parse_function_header(head) {
                    functions.push(FunctionDef {
                        name: fn_name,
                        params,
                        span: Span {
                            start_line: stmt.start_line,
                            start_col: stmt.start_col,
                            end_line: stmt.end_line,
                            end_col: stmt.end_col,
                            start_byte: stmt.start,
                            end_byte: stmt.end,
                        },
                    });
                    open_fn = Some(functions.len() - 1);
                }
            }
            Boundary::CloseBrace if stmt.depth == 0 => {
                if let Some(idx) = open_fn.take() {
                    functions[idx].span.end_line = stmt.end_line;
                    functions[idx].span.end_col = stmt.end_col;
                    functions[idx].span.end_byte = stmt.end;
                }
            }
            _ => {}
        }
    }

    // Pass 2: statements with their enclosing function.
    let enclosing = |byte: usize| -> Option<String> {
        functions
            .iter()
            .find(|f| byte > f.span.start_byte && byte < f.span.end_byte)
            .map(|f| f.name.clone())
    };
    let mut statements = Vec::new();
    let mut defines: BTreeMap<String, Define> = BTreeMap::new();
    for stmt in &raw {
        let stmt_text = text[stmt.start..stmt.end].to_string();
        if stmt.boundary == Boundary::Preprocessor {
            if let Some(def) = parse_define(&stmt_text) {
                defines.entry(def.name.clone()).or_insert(def);
            }
        }
        statements.push(Statement {
            span: Span {
                start_line: stmt.start_line,
                start_col: stmt.start_col,
                end_line: stmt.end_line,
                end_col: stmt.end_col,
                start_byte: stmt.start,
                end_byte: stmt.end,
            },
            text: stmt_text,
            function: enclosing(stmt.start),
            depth: stmt.depth,
        });
    }

    // Pass 3: declarations.
    let mut model = SourceModel {
        path: name,
        text: text.to_string(),
        lines,
        statements,
        declarations: Vec::new(),
        functions,
        defines,
    };
    model.declarations = collect_declarations(&model);
    Ok(model)
}

/// Parse `ret name(args)` from a function-header statement ending in `{`.
fn parse_function_header(head: &str) -> Option<(String, Vec<String>)> {
    let head = head.trim_end_matches('{').trim();
    let open = head.find('(')?;
    if !head.ends_with(')') {
        return None;
    }
    let before = head[..open].trim();
    let args = &head[open + 1..head.len() - 1];
    let name = before.rsplit(|c: char| !c.is_alphanumeric() && c != '_').next()?;
    if name.is_empty() || CONTROL_KEYWORDS.contains(&name) {
        return None;
    }
    // need a return type token before the name
    if before[..before.len() - name.len()].trim().is_empty() {
        return None;
    }
    let params = split_params(args)
        .into_iter()
        .filter_map(|p| param_name(&p))
        .collect();
    Some((name.to_string(), params))
}

/// Whether `text` contains an assignment `=` outside brackets/strings.
fn has_top_level_assign(text: &str) -> bool {
    split_top_level_eq(text).is_some()
}

/// Split a parameter or argument list on top-level commas.
pub(crate) fn split_params(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let mut in_str = false;
    let mut prev = '\0';
    for ch in text.chars() {
        match ch {
            '"' if prev != '\\' => {
                in_str = !in_str;
                current.push(ch);
            }
            '(' | '[' | '{' if !in_str => {
                depth += 1;
                current.push(ch);
            }
            ')' | ']' | '}' if !in_str => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 && !in_str => {
                out.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(ch),
        }
        prev = ch;
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

/// Last identifier of a parameter declaration, e.g. `TEE_Param params[4]`
/// yields `params`.
fn param_name(param: &str) -> Option<String> {
    let param = param.trim();
    if param.is_empty() || param == "void" || param == "..." {
        return None;
    }
    let no_array = param.split('[').next().unwrap_or(param);
    let name = no_array
        .rsplit(|c: char| !c.is_alphanumeric() && c != '_')
        .find(|s| !s.is_empty())?;
    if name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return None;
    }
    Some(name.to_string())
}

fn parse_define(text: &str) -> Option<Define> {
    let joined = text.replace("\\\r\n", " ").replace("\\\n", " ");
    let rest = joined.trim().strip_prefix('#')?.trim_start();
    let rest = rest.strip_prefix("define")?.trim_start();
    let name_end = rest
        .find(|c: char| !c.is_alphanumeric() && c != '_')
        .unwrap_or(rest.len());
    let name = &rest[..name_end];
    if name.is_empty() || rest[name_end..].starts_with('(') {
        return None; // function-like macros are out of scope
    }
    let value = normalize_ws(rest[name_end..].trim());
    Some(Define {
        name: name.to_string(),
        value,
    })
}

/// Collapse internal whitespace runs to single spaces and trim.
pub fn normalize_ws(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn collect_declarations(model: &SourceModel) -> Vec<Declaration> {
    let mut out: Vec<Declaration> = Vec::new();
    for stmt in &model.statements {
        if !stmt.text.ends_with(';') {
            continue;
        }
        if let Some(decl) = parse_declaration(stmt, model, &out) {
            out.push(decl);
        }
    }
    out
}

fn element_size(type_tokens: &[&str]) -> Option<usize> {
    let last = type_tokens.last()?;
    Some(match *last {
        "char" | "int8_t" | "uint8_t" | "bool" => 1,
        "short" | "int16_t" | "uint16_t" => 2,
        "int" | "unsigned" | "signed" | "int32_t" | "uint32_t" | "float" | "TEE_Result" => 4,
        "long" | "int64_t" | "uint64_t" | "double" | "size_t" | "uintptr_t" => 8,
        _ => return None,
    })
}

/// Recognize `T name;`, `T *name;`, `T name[N];`, optionally initialized.
fn parse_declaration(
    stmt: &Statement,
    model: &SourceModel,
    earlier: &[Declaration],
) -> Option<Declaration> {
    let text = stmt.text.trim().trim_end_matches(';').trim();
    let (head, init) = match split_top_level_eq(text) {
        Some((h, i)) => (h.trim(), Some(i.trim().to_string())),
        None => (text, None),
    };
    if head.contains(',') {
        return None;
    }

    // head tokens: identifiers and stars, e.g. `unsigned char * buf [ 64 ]`
    let mut rest = head;
    let mut array_len_text = None;
    if let Some(open) = rest.find('[') {
        let close = rest.rfind(']')?;
        if close < open {
            return None;
        }
        array_len_text = Some(rest[open + 1..close].trim().to_string());
        rest = rest[..open].trim_end();
    }
    if rest.contains('(') {
        return None;
    }

    let mut stars = 0usize;
    let mut idents: Vec<&str> = Vec::new();
    for token in tokenize_head(rest) {
        match token {
            HeadToken::Star => stars += 1,
            HeadToken::Ident(word) => idents.push(word),
            HeadToken::Other => return None,
        }
    }
    if idents.len() < 2 {
        return None;
    }
    let name = idents.pop()?;
    if CONTROL_KEYWORDS.contains(&name) || idents.iter().any(|w| CONTROL_KEYWORDS.contains(w)) {
        return None;
    }

    let quals = ["static", "const", "volatile", "register", "struct", "union", "enum"];
    let type_tokens: Vec<&str> = idents
        .iter()
        .copied()
        .filter(|w| !quals.contains(w))
        .collect();
    if type_tokens.is_empty() {
        return None;
    }

    let kind = if array_len_text.is_some() {
        DeclKind::Array
    } else if stars > 0 {
        DeclKind::Pointer
    } else {
        DeclKind::Scalar
    };
    let elem_size = element_size(&type_tokens);
    let len_hint = array_len_text
        .as_deref()
        .and_then(|t| resolve_len(t, model, earlier, elem_size));

    Some(Declaration {
        name: name.to_string(),
        kind,
        elem_size,
        len_hint,
        init,
        span: stmt.span.clone(),
        function: stmt.function.clone(),
    })
}

enum HeadToken<'a> {
    Ident(&'a str),
    Star,
    Other,
}

fn tokenize_head(text: &str) -> Vec<HeadToken<'_>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, ch)) = chars.next() {
        if ch.is_whitespace() {
            continue;
        }
        if ch == '*' {
            out.push(HeadToken::Star);
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut end = i + ch.len_utf8();
            while let Some(&(j, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    end = j + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(HeadToken::Ident(&text[i..end]));
        } else {
            out.push(HeadToken::Other);
        }
    }
    out
}

/// Split `lhs = rhs` at the first top-level `=` that is an assignment.
fn split_top_level_eq(text: &str) -> Option<(&str, &str)> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut in_str = false;
    let mut i = 0;
    while i < bytes.len() {
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
        i += 1;
    }
    None
}

/// Resolve an array-length expression to an element count. Only literal
/// lengths, object-like macros that expand to literals, and `sizeof` on
/// statically sized arrays produce hints; anything else stays unknown.
fn resolve_len(
    text: &str,
    model: &SourceModel,
    earlier: &[Declaration],
    elem_size: Option<usize>,
) -> Option<usize> {
    let text = text.trim();
    if let Some(n) = parse_usize(text) {
        return Some(n);
    }
    if let Some(def) = model.defines.get(text) {
        return parse_usize(&def.value);
    }
    if let Some(inner) = text
        .strip_prefix("sizeof(")
        .and_then(|t| t.strip_suffix(')'))
    {
        let inner = inner.trim();
        let target = earlier.iter().find(|d| d.name == inner)?;
        let bytes = target.len_hint? * target.elem_size?;
        let own = elem_size.unwrap_or(1);
        if own > 0 && bytes % own == 0 {
            return Some(bytes / own);
        }
    }
    None
}

pub(crate) fn parse_usize(text: &str) -> Option<usize> {
    let text = text.trim();
    if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        usize::from_str_radix(hex, 16).ok()
    } else {
        text.parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2_SNIPPET: &str = r#"
TEE_Result handle_copy(uint32_t param_types, TEE_Param params[4])
{
    char dest[64];
    TEE_MemMove(dest, params[1].memref.buffer, params[1].memref.size);
    return TEE_SUCCESS;
}
"#;

    #[test]
    fn fig2_snippet_models_function_copy_and_declaration() {
        let m = load_source(FIG2_SNIPPET).unwrap();
        assert_eq!(m.functions.len(), 1);
        assert_eq!(m.functions[0].name, "handle_copy");
        assert_eq!(m.functions[0].params, vec!["param_types", "params"]);

        let copy = m
            .statements
            .iter()
            .find(|s| s.text.starts_with("TEE_MemMove"))
            .unwrap();
        assert_eq!(copy.function.as_deref(), Some("handle_copy"));

        let dest = m.declarations.iter().find(|d| d.name == "dest").unwrap();
        assert_eq!(dest.kind, DeclKind::Array);
        assert_eq!(dest.len_hint, Some(64));
        assert_eq!(dest.elem_size, Some(1));
    }

    #[test]
    fn array_initializer_declaration() {
        let m = load_source("int a[15] = {1, 2, 3};\n").unwrap();
        let a = m.declarations.iter().find(|d| d.name == "a").unwrap();
        assert_eq!(a.kind, DeclKind::Array);
        assert_eq!(a.len_hint, Some(15));
        assert_eq!(a.elem_size, Some(4));
        assert_eq!(a.init.as_deref(), Some("{1, 2, 3}"));
    }

    #[test]
    fn empty_file_has_no_statements() {
        let m = load_source("").unwrap();
        assert!(m.statements.is_empty());
        assert!(m.functions.is_empty());
    }

    #[test]
    fn unbalanced_braces_rejected() {
        let err = load_source("void f() { if (x) { return; }\n").unwrap_err();
        assert!(matches!(err, ModelError::UnbalancedBraces { .. }));
        let err = load_source("void f() }\n").unwrap_err();
        assert!(matches!(err, ModelError::UnbalancedBraces { line: 1 }));
    }

    #[test]
    fn span_fidelity_over_lines() {
        let src = "void f(void)\n{\n    int x = 1;\n    g(x,\n      y);\n}\n";
        let m = load_source(src).unwrap();
        for stmt in &m.statements {
            assert_eq!(m.extract_span(&stmt.span), stmt.text, "span {:?}", stmt.span);
        }
    }

    #[test]
    fn defines_captured_with_continuations() {
        let src = "#define TA_DEMO_UUID \\\n    { 0x1, 0x2 }\n#define CMD_RUN 3\n";
        let m = load_source(src).unwrap();
        assert_eq!(m.defines["TA_DEMO_UUID"].value, "{ 0x1, 0x2 }");
        assert_eq!(m.defines["CMD_RUN"].value, "3");
    }

    #[test]
    fn macro_resolved_array_length() {
        let src = "#define BUF_LEN 32\nvoid f(void)\n{\n    char buf[BUF_LEN];\n}\n";
        let m = load_source(src).unwrap();
        let d = m.declarations.iter().find(|d| d.name == "buf").unwrap();
        assert_eq!(d.len_hint, Some(32));
    }

    #[test]
    fn sizeof_length_from_static_array() {
        let src = "int base[4];\nchar view[sizeof(base)];\n";
        let m = load_source(src).unwrap();
        let d = m.declarations.iter().find(|d| d.name == "view").unwrap();
        assert_eq!(d.len_hint, Some(16));
    }

    #[test]
    fn strings_and_comments_do_not_split_statements() {
        let src = "void f(void)\n{\n    log(\"a;b{c\"); /* ; */ // ;\n    done();\n}\n";
        let m = load_source(src).unwrap();
        let texts: Vec<_> = m
            .statements
            .iter()
            .map(|s| normalize_ws(&s.text))
            .collect();
        assert!(texts.contains(&"log(\"a;b{c\");".to_string()));
        assert!(texts.contains(&"done();".to_string()));
    }

    #[test]
    fn case_labels_split() {
        let src = "void f(int c)\n{\n    switch (c) {\n    case 0:\n        g();\n        break;\n    default:\n        h();\n    }\n}\n";
        let m = load_source(src).unwrap();
        let texts: Vec<_> = m.statements.iter().map(|s| normalize_ws(&s.text)).collect();
        assert!(texts.contains(&"case 0:".to_string()));
        assert!(texts.contains(&"default:".to_string()));
    }
}
