//! Hand-rolled lexer and recursive-descent parser for the rule DSL.
//!
//! Total on arbitrary input: every string either parses or yields a
//! positioned [`DslError`]; the parser never panics.

use super::ast::{
    CallKind, DslNode, DslProgram, DslRule, DslTerm, GuardAction, RelOp, ResultSlot,
};
use super::DslError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Placeholder(String),
    Literal(String),
    Underscore,
    LParen,
    RParen,
    Comma,
    Semi,
    Arrow,
    FatArrow,
    Rel(RelOp),
    Amp,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Placeholder(s) => format!("placeholder `${s}`"),
            Tok::Literal(s) => format!("literal `{s}`"),
            Tok::Underscore => "`_`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Semi => "`;`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::FatArrow => "`=>`".to_string(),
            Tok::Rel(op) => format!("`{op}`"),
            Tok::Amp => "`&`".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = *self.src.get(self.pos)?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> DslError {
        DslError::Syntax {
            line: self.line,
            col: self.col,
            expected: expected.to_string(),
        }
    }

    fn tokenize(mut self) -> Result<Vec<Spanned>, DslError> {
        let mut out = Vec::new();
        while let Some(b) = self.peek() {
            let (line, col) = (self.line, self.col);
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'#' => {
                    // line comment
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                b'(' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::LParen, line, col });
                }
                b')' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::RParen, line, col });
                }
                b',' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Comma, line, col });
                }
                b';' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Semi, line, col });
                }
                b'&' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Amp, line, col });
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        out.push(Spanned { tok: Tok::Arrow, line, col });
                    } else {
                        return Err(self.error("`->`"));
                    }
                }
                b'=' => {
                    self.bump();
                    match self.peek() {
                        Some(b'>') => {
                            self.bump();
                            out.push(Spanned { tok: Tok::FatArrow, line, col });
                        }
                        Some(b'=') => {
                            self.bump();
                            out.push(Spanned { tok: Tok::Rel(RelOp::Eq), line, col });
                        }
                        _ => return Err(self.error("`=>` or `==`")),
                    }
                }
                b'!' => {
                    self.bump();
                    if self.peek() == Some(b'=') {
                        self.bump();
                        out.push(Spanned { tok: Tok::Rel(RelOp::Ne), line, col });
                    } else {
                        return Err(self.error("`!=`"));
                    }
                }
                b'<' => {
                    self.bump();
                    if self.peek() == Some(b'=') {
                        self.bump();
                        out.push(Spanned { tok: Tok::Rel(RelOp::Le), line, col });
                    } else {
                        out.push(Spanned { tok: Tok::Rel(RelOp::Lt), line, col });
                    }
                }
                b'>' => {
                    self.bump();
                    if self.peek() == Some(b'=') {
                        self.bump();
                        out.push(Spanned { tok: Tok::Rel(RelOp::Ge), line, col });
                    } else {
                        out.push(Spanned { tok: Tok::Rel(RelOp::Gt), line, col });
                    }
                }
                b'$' => {
                    self.bump();
                    let name = self.take_word();
                    if name.is_empty() {
                        return Err(self.error("placeholder name after `$`"));
                    }
                    out.push(Spanned { tok: Tok::Placeholder(name), line, col });
                }
                b'"' => {
                    self.bump();
                    let mut text = String::from("\"");
                    loop {
                        match self.bump() {
                            Some(b'"') => {
                                text.push('"');
                                break;
                            }
                            Some(b'\\') => {
                                text.push('\\');
                                if let Some(c) = self.bump() {
                                    text.push(c as char);
                                } else {
                                    return Err(self.error("closing `\"`"));
                                }
                            }
                            Some(c) => text.push(c as char),
                            None => return Err(self.error("closing `\"`")),
                        }
                    }
                    out.push(Spanned { tok: Tok::Literal(text), line, col });
                }
                b'0'..=b'9' => {
                    let word = self.take_number();
                    out.push(Spanned { tok: Tok::Literal(word), line, col });
                }
                b'_' => {
                    let word = self.take_word();
                    if word == "_" {
                        out.push(Spanned { tok: Tok::Underscore, line, col });
                    } else {
                        out.push(Spanned { tok: Tok::Ident(word), line, col });
                    }
                }
                b'a'..=b'z' | b'A'..=b'Z' => {
                    let word = self.take_word();
                    out.push(Spanned { tok: Tok::Ident(word), line, col });
                }
                0xe2 => {
                    // accept the unicode arrow `→` (U+2192) as `->`
                    if self.src[self.pos..].starts_with("→".as_bytes()) {
                        self.pos += "→".len();
                        self.col += 1;
                        out.push(Spanned { tok: Tok::Arrow, line, col });
                    } else {
                        return Err(self.error("token"));
                    }
                }
                _ => return Err(self.error("token")),
            }
        }
        Ok(out)
    }

    fn take_word(&mut self) -> String {
        let mut word = String::new();
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' {
                word.push(b as char);
                self.bump();
            } else {
                break;
            }
        }
        word
    }

    fn take_number(&mut self) -> String {
        let mut word = String::new();
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'.' || b == b'x' || b == b'X' {
                word.push(b as char);
                self.bump();
            } else {
                break;
            }
        }
        word
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn new(toks: Vec<Spanned>, end_line: usize, end_col: usize) -> Self {
        Parser { toks, pos: 0, end_line, end_col }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn error(&self, expected: &str) -> DslError {
        let (line, col) = self.here();
        let found = self
            .peek()
            .map(|t| t.describe())
            .unwrap_or_else(|| "end of input".to_string());
        DslError::Syntax {
            line,
            col,
            expected: format!("{expected}, found {found}"),
        }
    }

    fn expect(&mut self, want: &Tok, expected: &str) -> Result<(), DslError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn parse_program(&mut self) -> Result<DslProgram, DslError> {
        let mut nodes = vec![self.parse_node()?];
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            // tolerate a trailing semicolon
            if self.peek().is_none() {
                break;
            }
            nodes.push(self.parse_node()?);
        }
        Ok(DslProgram { nodes })
    }

    fn parse_node(&mut self) -> Result<DslNode, DslError> {
        match self.peek() {
            Some(Tok::Ident(word)) if word == "IF" => self.parse_guard(),
            Some(Tok::Ident(word)) => {
                let kind = CallKind::from_keyword(word)
                    .ok_or_else(|| self.error("node keyword (COPY, IF, ...)"))?;
                self.pos += 1;
                self.parse_call(kind)
            }
            _ => Err(self.error("node keyword (COPY, IF, ...)")),
        }
    }

    fn parse_guard(&mut self) -> Result<DslNode, DslError> {
        self.pos += 1; // IF
        self.expect(&Tok::LParen, "`(` after IF")?;
        let left = self.parse_term()?;
        self.expect(&Tok::Comma, "`,` after guard operand")?;
        let op = match self.next() {
            Some(Spanned { tok: Tok::Rel(op), .. }) => op,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.error("relational operator"));
            }
        };
        self.expect(&Tok::Comma, "`,` after relational operator")?;
        let right = self.parse_term()?;
        self.expect(&Tok::RParen, "`)` closing guard")?;
        self.expect(&Tok::Arrow, "`->` before guard action")?;
        match self.next() {
            Some(Spanned { tok: Tok::Ident(word), .. }) if word == "return" => {}
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.error("`return`"));
            }
        }
        let ecode = match self.next() {
            Some(Spanned { tok: Tok::Ident(word), .. }) => word,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.error("error code identifier"));
            }
        };
        Ok(DslNode::Guard {
            left,
            op,
            right,
            action: GuardAction { ecode },
        })
    }

    fn parse_call(&mut self, kind: CallKind) -> Result<DslNode, DslError> {
        self.expect(&Tok::LParen, "`(` after call keyword")?;
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            args.push(self.parse_term()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.parse_term()?);
            }
        }
        self.expect(&Tok::RParen, "`)` closing argument list")?;
        let result = if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            Some(self.parse_term()?)
        } else {
            None
        };

        let (min, max, slot) = kind.arity();
        let want = match max {
            Some(max) if max == min => min.to_string(),
            Some(max) => format!("{min}..{max}"),
            None => format!("{min}+"),
        };
        if args.len() < min || max.is_some_and(|m| args.len() > m) {
            return Err(DslError::Arity {
                kind: kind.keyword(),
                got: args.len(),
                want,
            });
        }
        if slot == ResultSlot::Required && result.is_none() {
            return Err(DslError::Arity {
                kind: kind.keyword(),
                got: args.len(),
                want: format!("{want} with `-> result`"),
            });
        }
        Ok(DslNode::FuncCall { kind, args, result })
    }

    fn parse_term(&mut self) -> Result<DslTerm, DslError> {
        match self.peek().cloned() {
            Some(Tok::Placeholder(name)) => {
                self.pos += 1;
                Ok(DslTerm::Placeholder(name))
            }
            Some(Tok::Underscore) => {
                self.pos += 1;
                Ok(DslTerm::discard())
            }
            Some(Tok::Literal(text)) => {
                self.pos += 1;
                Ok(DslTerm::Literal(text))
            }
            Some(Tok::Amp) => {
                self.pos += 1;
                match self.next() {
                    Some(Spanned { tok: Tok::Ident(name), .. }) => Ok(DslTerm::AddressOf(name)),
                    _ => {
                        self.pos = self.pos.saturating_sub(1);
                        Err(self.error("identifier after `&`"))
                    }
                }
            }
            Some(Tok::Ident(word)) if word == "equal" => {
                self.pos += 1;
                self.expect(&Tok::LParen, "`(` after equal")?;
                let a = self.parse_term()?;
                self.expect(&Tok::Comma, "`,` inside equal")?;
                let b = self.parse_term()?;
                self.expect(&Tok::RParen, "`)` closing equal")?;
                Ok(DslTerm::Equal(Box::new(a), Box::new(b)))
            }
            Some(Tok::Ident(word)) => {
                // nested calls other than `equal` are rejected; a plain
                // identifier must not be followed by `(`
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    self.pos -= 1;
                    return Err(self.error("flat term (nested calls are not allowed)"));
                }
                Ok(DslTerm::Identifier(word))
            }
            _ => Err(self.error("term")),
        }
    }
}

/// Parse one rule: `trigger => transformer`.
pub fn parse_rule(text: &str) -> Result<DslRule, DslError> {
    let end_line = text.lines().count().max(1);
    let end_col = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
    let toks = Lexer::new(text).tokenize()?;

    let separators = toks
        .iter()
        .filter(|s| s.tok == Tok::FatArrow)
        .count();
    if separators == 0 {
        return Err(DslError::MissingSeparator);
    }
    if separators > 1 {
        let second = toks
            .iter()
            .filter(|s| s.tok == Tok::FatArrow)
            .nth(1)
            .expect("counted above");
        return Err(DslError::Syntax {
            line: second.line,
            col: second.col,
            expected: "exactly one `=>` separator".to_string(),
        });
    }

    let mut parser = Parser::new(toks, end_line, end_col);
    let trigger = parser.parse_program()?;
    parser.expect(&Tok::FatArrow, "`=>`")?;
    let transformer = parser.parse_program()?;
    if parser.peek().is_some() {
        return Err(parser.error("end of rule"));
    }

    let bound = trigger.placeholders();
    let fresh = transformer
        .placeholders()
        .into_iter()
        .filter(|name| !bound.contains(name))
        .collect();

    Ok(DslRule {
        name: String::new(),
        trigger,
        transformer,
        fresh,
    })
}

/// Parse a rule file: one rule, or several separated by blank lines.
/// Rules are named `<stem>` or `<stem>.k` when a file holds several.
pub fn parse_rule_file(text: &str, stem: &str) -> Result<Vec<DslRule>, DslError> {
    let mut chunks: Vec<String> = Vec::new();
    let mut current = String::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if current.lines().any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')) {
                chunks.push(std::mem::take(&mut current));
            } else {
                current.clear();
            }
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    if current
        .lines()
        .any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
    {
        chunks.push(current);
    }

    let name = stem
        .strip_prefix("rule-")
        .or_else(|| stem.strip_prefix("rule_"))
        .unwrap_or(stem);
    let mut rules = Vec::new();
    for (i, chunk) in chunks.iter().enumerate() {
        let rule_name = if chunks.len() == 1 {
            name.to_string()
        } else {
            format!("{name}.{}", i + 1)
        };
        rules.push(parse_rule(chunk)?.with_name(rule_name));
    }
    Ok(rules)
}
