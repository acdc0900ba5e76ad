//! Name visibility queries, used by the synthesis layer to avoid
//! placeholder values that collide with existing identifiers.

use std::collections::BTreeSet;

use super::SourceModel;

/// All declaration and parameter names visible at a line: every file-scope
/// declaration and function name, plus the enclosing function's parameters
/// and the local declarations made at or before the line.
pub fn names_in_scope(model: &SourceModel, line: usize) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    for func in &model.functions {
        names.insert(func.name.clone());
    }
    for decl in &model.declarations {
        match &decl.function {
            None => {
                names.insert(decl.name.clone());
            }
            Some(_) => {}
        }
    }
    if let Some(func) = model
        .functions
        .iter()
        .find(|f| f.span.start_line <= line && line <= f.span.end_line)
    {
        names.extend(func.params.iter().cloned());
        for decl in &model.declarations {
            if decl.function.as_deref() == Some(&func.name) && decl.span.start_line <= line {
                names.insert(decl.name.clone());
            }
        }
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmodel::load_source;

    const SRC: &str = r#"
int global_counter = 0;

TEE_Result process(uint32_t param_types, TEE_Param params[4])
{
    char* buf = params[3].memref.buffer;
    int used = 0;
    return TEE_SUCCESS;
}
"#;

    #[test]
    fn scope_contains_params_and_prior_declarations() {
        let m = load_source(SRC).unwrap();
        let at_shallow = names_in_scope(&m, 6);
        assert!(at_shallow.contains("buf"));
        assert!(at_shallow.contains("params"));
        assert!(at_shallow.contains("param_types"));
        assert!(at_shallow.contains("global_counter"));
        assert!(at_shallow.contains("process"));
        assert!(!at_shallow.contains("used"));
    }

    #[test]
    fn line_before_declarations_sees_file_scope_only() {
        let m = load_source(SRC).unwrap();
        let names = names_in_scope(&m, 1);
        assert!(names.contains("global_counter"));
        assert!(names.contains("process"));
        assert!(!names.contains("buf"));
        assert!(!names.contains("params"));
    }

    #[test]
    fn scope_is_monotonic_within_a_block() {
        let m = load_source(SRC).unwrap();
        let mut prev = names_in_scope(&m, 5);
        for line in 6..=8 {
            let here = names_in_scope(&m, line);
            assert!(prev.is_subset(&here), "line {line}");
            prev = here;
        }
    }
}
