//! Concrete-syntax rendering for DSL programs and rules.
//!
//! Output is parse-compatible: `parse(render(p))` is structurally equal
//! to `p`. The renderer always emits the ASCII arrow `->`.

use super::ast::{DslNode, DslProgram, DslRule, DslTerm};

pub fn render_node(node: &DslNode) -> String {
    match node {
        DslNode::FuncCall { kind, args, result } => {
            let args: Vec<String> = args.iter().map(DslTerm::render).collect();
            let mut text = format!("{}({})", kind.keyword(), args.join(", "));
            if let Some(result) = result {
                text.push_str(" -> ");
                text.push_str(&result.render());
            }
            text
        }
        DslNode::Guard {
            left,
            op,
            right,
            action,
        } => format!(
            "IF({}, {}, {}) -> return {}",
            left.render(),
            op,
            right.render(),
            action.ecode
        ),
    }
}

pub fn render_program(program: &DslProgram) -> String {
    program
        .nodes
        .iter()
        .map(render_node)
        .collect::<Vec<_>>()
        .join(";\n")
}

pub fn render_rule(rule: &DslRule) -> String {
    format!(
        "{}\n=>\n{}",
        render_program(&rule.trigger),
        render_program(&rule.transformer)
    )
}
