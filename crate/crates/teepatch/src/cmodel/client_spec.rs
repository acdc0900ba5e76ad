//! Extraction of the metadata a normal-side test client needs: the
//! application UUID, the command IDs dispatched by the entry point, and
//! how each of the four parameter slots is used.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::abstraction::{alias_map, parse_call_statement, resolve_alias, strip_casts};
use super::{FunctionClassification, ModelError, SourceModel, Statement};
use regex::Regex;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamType {
    ValueIn,
    ValueOut,
    MemrefIn,
    MemrefOut,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CommandId {
    Num(u32),
    Sym(String),
}

impl CommandId {
    /// C expression for the command id in generated client code.
    pub fn c_expr(&self) -> String {
        match self {
            CommandId::Num(n) => n.to_string(),
            CommandId::Sym(name) => name.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommandSpec {
    pub id: CommandId,
    /// Handler function dispatched for this command, when resolvable.
    pub handler: Option<String>,
    pub param_types: [ParamType; 4],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClientSpec {
    /// UUID initializer text, e.g. `{ 0x5c2f1b90, 0x41aa, ... }`.
    pub uuid: String,
    pub commands: Vec<CommandSpec>,
}

fn param_usage_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"params\[(\d+)\]\.(memref\.(?:buffer|size)|value\.[ab])").expect("static regex")
    })
}

/// Extract the client-facing interface of a trusted application.
pub fn extract_client_spec(
    model: &SourceModel,
    fc: &FunctionClassification,
) -> Result<ClientSpec, ModelError> {
    let entry = model
        .function_named(&fc.entry_point)
        .ok_or(ModelError::NoEntryPoint)?
        .clone();

    let uuid = match &fc.uuid_override {
        Some(uuid) => uuid.clone(),
        None => find_uuid(model).ok_or(ModelError::MissingUuid)?,
    };

    // case labels at the switch level inside the entry body
    let body: Vec<&Statement> = model
        .statements
        .iter()
        .filter(|s| {
            s.span.start_byte >= entry.span.start_byte && s.span.end_byte <= entry.span.end_byte
        })
        .collect();

    let mut commands = Vec::new();
    let mut i = 0;
    while i < body.len() {
        let stmt = body[i];
        let text = stmt.text.trim();
        if let Some(label) = text.strip_prefix("case ").and_then(|t| t.strip_suffix(':')) {
            let label = label.trim();
            // statements until the next label or a shallower depth
            let mut case_stmts: Vec<&Statement> = Vec::new();
            let mut j = i + 1;
            while j < body.len() {
                let next = body[j].text.trim();
                if next.starts_with("case ") || next.starts_with("default") {
                    break;
                }
                if body[j].depth < stmt.depth {
                    break;
                }
                case_stmts.push(body[j]);
                j += 1;
            }

            let handler = case_stmts.iter().find_map(|s| dispatched_callee(s, model));
            let mut scan: Vec<&Statement> = case_stmts.clone();
            if let Some(handler) = &handler {
                if let Some(func) = model.function_named(handler) {
                    scan.extend(model.statements.iter().filter(|s| {
                        s.span.start_byte >= func.span.start_byte
                            && s.span.end_byte <= func.span.end_byte
                    }));
                }
            }
            let param_types = infer_param_types(&scan, model);

            let id = match model.resolve_const(label) {
                Some(n) => CommandId::Num(n as u32),
                None => CommandId::Sym(label.to_string()),
            };
            commands.push(CommandSpec {
                id,
                handler,
                param_types,
            });
            i = j;
        } else {
            i += 1;
        }
    }

    if commands.is_empty() {
        return Err(ModelError::NoCases);
    }
    Ok(ClientSpec { uuid, commands })
}

/// First call in a case body that names a function defined in this model.
fn dispatched_callee(stmt: &Statement, model: &SourceModel) -> Option<String> {
    let text = stmt.text.trim();
    let text = text.strip_prefix("return").map(str::trim).unwrap_or(text);
    let normalized = format!("{};", text.trim_end_matches(';'));
    let (_, name, _) = parse_call_statement(&normalized)?;
    model.function_named(&name).map(|f| f.name.clone())
}

fn infer_param_types(stmts: &[&Statement], model: &SourceModel) -> [ParamType; 4] {
    #[derive(Default, Clone, Copy)]
    struct Usage {
        memref_read: bool,
        memref_written: bool,
        value_read: bool,
        value_written: bool,
    }
    let mut usage = [Usage::default(); 4];

    let mut mark = |slot: usize, field: &str, written: bool| {
        if slot >= 4 {
            return;
        }
        let u = &mut usage[slot];
        if field.starts_with("memref") {
            if written {
                u.memref_written = true;
            } else {
                u.memref_read = true;
            }
        } else if written {
            u.value_written = true;
        } else {
            u.value_read = true;
        }
    };

    for stmt in stmts {
        let text = stmt.text.trim();
        let body = text.strip_suffix(';').unwrap_or(text);

        // split assignments so the written side can be told apart
        let (write_side, read_side) = match split_assign_text(body) {
            Some((l, r)) => (l.to_string(), r.to_string()),
            None => (String::new(), body.to_string()),
        };

        // destination argument of copy-like calls is written
        let mut call_write_ranges: Vec<String> = Vec::new();
        if let Some((_, name, args)) = parse_call_statement(&format!("{body};")) {
            let writes_first_arg = ["TEE_MemMove", "memcpy", "memmove", "snprintf"]
                .contains(&name.as_str());
            if writes_first_arg {
                if let Some(first) = args.first() {
                    call_write_ranges.push(first.clone());
                }
            }
        }

        for m in param_usage_re().captures_iter(&write_side) {
            let slot: usize = m[1].parse().unwrap_or(4);
            mark(slot, &m[2], true);
        }
        for m in param_usage_re().captures_iter(&read_side) {
            let slot: usize = m[1].parse().unwrap_or(4);
            let expr = m.get(0).map(|g| g.as_str().to_string()).unwrap_or_default();
            let written = call_write_ranges.iter().any(|arg| {
                let arg = strip_casts(arg);
                arg.contains(&expr)
            });
            mark(slot, &m[2], written);
        }

        // aliases of shared buffers count as that slot's memref usage
        if let Some(function) = &stmt.function {
            let aliases = alias_map(model, function);
            for (alias, target) in &aliases {
                if !body.contains(alias.as_str()) || body.contains(target.as_str()) {
                    continue;
                }
                if let Some(m) = param_usage_re().captures(target) {
                    let slot: usize = m[1].parse().unwrap_or(4);
                    let resolved = resolve_alias(alias, &aliases).to_string();
                    let written = write_side.contains(alias.as_str())
                        || call_write_ranges.iter().any(|a| strip_casts(a).contains(&resolved));
                    mark(slot, &m[2], written);
                }
            }
        }
    }

    let mut out = [ParamType::None; 4];
    for (i, u) in usage.iter().enumerate() {
        out[i] = if u.memref_written {
            ParamType::MemrefOut
        } else if u.memref_read {
            ParamType::MemrefIn
        } else if u.value_written {
            ParamType::ValueOut
        } else if u.value_read {
            ParamType::ValueIn
        } else {
            ParamType::None
        };
    }
    out
}

fn split_assign_text(text: &str) -> Option<(&str, &str)> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth = depth.saturating_sub(1),
            b'=' if depth == 0 => {
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

/// Look for a UUID initializer: a `#define *UUID*` with a brace
/// initializer, or a `TEEC_UUID`/`TEE_UUID` declaration.
fn find_uuid(model: &SourceModel) -> Option<String> {
    let defines: BTreeMap<_, _> = model
        .defines
        .iter()
        .filter(|(name, def)| name.contains("UUID") && def.value.starts_with('{'))
        .collect();
    if let Some((_, def)) = defines.into_iter().next() {
        return Some(def.value.clone());
    }
    model
        .declarations
        .iter()
        .find(|d| d.name.to_uppercase().contains("UUID") || d.init.as_deref().is_some_and(|_| false))
        .and_then(|d| d.init.clone())
}
