use super::*;
use crate::cmodel::load_source;

fn run(src: &str) -> Vec<Issue> {
    let m = load_source(src).unwrap();
    detect(&m, &FunctionClassification::default())
}

fn wrap(body: &str) -> String {
    format!(
        "TEE_Result handler(uint32_t param_types, TEE_Param params[4])\n{{\n{body}\n    return TEE_SUCCESS;\n}}\n"
    )
}

#[test]
fn empty_source_yields_no_issues() {
    assert!(run("").is_empty());
}

#[test]
fn unguarded_input_copy_is_flagged_once() {
    // normal side validates, TEE side copies without rechecking the size
    let src = wrap(
        "    char dest[64];\n    TEE_MemMove(dest, params[1].memref.buffer, params[1].memref.size);",
    );
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    let issue = &issues[0];
    assert_eq!(issue.kind, IssueKind::InputValidationWeakness);
    assert_eq!(issue.rule_hint, "2.1");
    assert!(issue.statement.contains("TEE_MemMove"));
    assert_eq!(issue.evidence["dst"], "dest");
    assert_eq!(issue.evidence["in"], "params[1].memref.buffer");
    assert_eq!(issue.evidence["len"], "params[1].memref.size");
}

#[test]
fn guarded_input_copy_is_clean() {
    let src = wrap(
        "    char dest[64];\n    if (params[1].memref.size > 64) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }\n    TEE_MemMove(dest, params[1].memref.buffer, params[1].memref.size);",
    );
    assert!(run(&src).is_empty());
}

#[test]
fn literal_length_input_copy_is_clean() {
    let src = wrap("    char dest[64];\n    TEE_MemMove(dest, params[1].memref.buffer, 64);");
    assert!(run(&src).is_empty());
}

#[test]
fn plain_copy_to_output_param_is_flagged() {
    let src = wrap(
        "    char plain[128] = \"secret\";\n    TEE_MemMove(params[0].memref.buffer, plain, 128);",
    );
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].kind, IssueKind::UnencryptedOutput);
    assert_eq!(issues[0].rule_hint, "1.1");
    assert_eq!(issues[0].evidence["plain"], "plain");
    assert_eq!(issues[0].evidence["len"], "128");
}

#[test]
fn encrypted_copy_to_output_param_is_clean() {
    let src = wrap(
        "    char plain[128] = \"secret\";\n    char cipher[128] = {0};\n    enc(plain, cipher, 128);\n    TEE_MemMove(params[0].memref.buffer, cipher, 128);",
    );
    assert!(run(&src).is_empty());
}

#[test]
fn snprintf_of_plaintext_args_selects_rule_1_2() {
    let src = wrap(
        "    char user[32] = \"u\";\n    char pass[32] = \"p\";\n    snprintf(params[0].memref.buffer, params[0].memref.size, \"%s %s\", user, pass);",
    );
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].kind, IssueKind::UnencryptedOutput);
    assert_eq!(issues[0].rule_hint, "1.2");
    assert_eq!(issues[0].evidence["args"], "user, pass");
}

#[test]
fn secure_storage_read_result_is_sensitive() {
    let src = wrap(
        "    char blob[64];\n    read(blob);\n    TEE_MemMove(params[1].memref.buffer, blob, 64);",
    );
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].kind, IssueKind::UnencryptedOutput);
}

#[test]
fn echoing_input_back_out_is_not_a_leak() {
    // data copied in from the normal side is not TEE-secret
    let src = wrap(
        "    char buf[64];\n    TEE_MemMove(buf, params[1].memref.buffer, 64);\n    TEE_MemMove(params[0].memref.buffer, buf, 64);",
    );
    let issues = run(&src);
    assert!(
        issues.iter().all(|i| i.kind != IssueKind::UnencryptedOutput),
        "{issues:?}"
    );
}

#[test]
fn raw_pointer_indirection_is_a_documented_miss() {
    // parameters passed as raw pointers lose the output-parameter shape,
    // so the backward scan cannot see the boundary crossing
    let src = r#"
char data[32] = "secret";

void copy(char *str, int size)
{
    TEE_MemMove(str, data, 32);
}

TEE_Result handler(uint32_t param_types, TEE_Param params[4])
{
    copy(params[0].memref.buffer, params[0].memref.size);
    return TEE_SUCCESS;
}
"#;
    assert!(run(src).is_empty());
}

#[test]
fn input_driven_array_index_is_flagged() {
    let src = wrap("    int array[16];\n    array[params[0].value.a - 8] = 43;");
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].kind, IssueKind::InputValidationWeakness);
    assert_eq!(issues[0].rule_hint, "2.2");
    assert_eq!(issues[0].evidence["base"], "array");
    assert_eq!(issues[0].evidence["index"], "params[0].value.a - 8");
}

#[test]
fn index_guards_must_cover_both_bounds() {
    let upper_only = wrap(
        "    int array[16];\n    if (params[0].value.a - 8 > 7) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }\n    array[params[0].value.a - 8] = 43;",
    );
    assert_eq!(run(&upper_only).len(), 1, "missing lower bound stays flagged");

    let both = wrap(
        "    int array[16];\n    if (params[0].value.a - 8 > 7) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }\n    if (params[0].value.a - 8 < 0) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }\n    array[params[0].value.a - 8] = 43;",
    );
    assert!(run(&both).is_empty());
}

#[test]
fn input_buffer_accessed_at_literal_index_is_flagged() {
    let src = wrap("    char c = params[2].memref.buffer[15];");
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].kind, IssueKind::InputValidationWeakness);
    assert_eq!(issues[0].rule_hint, "2.2");
    assert_eq!(issues[0].evidence["base"], "params[2].memref.buffer");
    assert_eq!(issues[0].evidence["index"], "15");
}

#[test]
fn aliased_input_array_access_is_flagged() {
    let src = wrap(
        "    char *array = (char *)params[2].memref.buffer;\n    char c = array[15];",
    );
    let issues = run(&src);
    // the alias itself is a shallow shared-memory use, the access an
    // input-validation weakness
    assert_eq!(issues.len(), 2);
    assert_eq!(issues[0].kind, IssueKind::SharedMemoryUse);
    assert_eq!(issues[1].kind, IssueKind::InputValidationWeakness);
}

#[test]
fn shallow_alias_is_flagged_with_rule_3_1() {
    let src = wrap("    char* buf = params[3].memref.buffer;");
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].kind, IssueKind::SharedMemoryUse);
    assert_eq!(issues[0].rule_hint, "3.1");
    assert_eq!(issues[0].evidence["sm"], "params[3].memref.buffer");
    assert_eq!(issues[0].evidence["buf"], "buf");
}

#[test]
fn deref_write_through_shared_memory_is_flagged_with_rule_3_2() {
    let src = wrap("    *(params[3].memref.buffer + 10) = 0x55;");
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].kind, IssueKind::SharedMemoryUse);
    assert_eq!(issues[0].rule_hint, "3.2");
    assert_eq!(issues[0].evidence["sm"], "params[3].memref.buffer");
    assert_eq!(issues[0].evidence["value"], "0x55");
}

#[test]
fn deep_copy_with_integrity_check_suppresses_shared_memory_use() {
    let src = wrap(
        "    char buf[64] = {0};\n    TEE_MemMove(buf, params[3].memref.buffer, 64);\n    char h1[256];\n    read(h1);\n    char h2[256];\n    hash(h2, buf, 64);\n    if (TEE_MemCompare(h1, h2, 256) != 0) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }\n    *(params[3].memref.buffer + 1) = 0;",
    );
    let issues = run(&src);
    assert!(
        issues.iter().all(|i| i.kind != IssueKind::SharedMemoryUse),
        "{issues:?}"
    );
}

#[test]
fn rule_3_1_post_state_is_clean() {
    let src = wrap(
        "    char buf[64] = {0};\n    TEE_MemMove(buf, params[3].memref.buffer, 64);\n    char h1[256];\n    read(h1);\n    char h2[256];\n    hash(h2, buf, 64);\n    if (TEE_MemCompare(h1, h2, 256) != 0) {\n        return TEE_ERROR_BAD_PARAMETERS;\n    }",
    );
    assert!(run(&src).is_empty());
}

#[test]
fn issues_are_ordered_and_deterministic() {
    let src = wrap(
        "    char plain[16] = \"k\";\n    char dest[8];\n    TEE_MemMove(params[0].memref.buffer, plain, 16);\n    TEE_MemMove(dest, params[1].memref.buffer, params[1].memref.size);\n    char* p = params[3].memref.buffer;",
    );
    let a = run(&src);
    let b = run(&src);
    assert_eq!(a.len(), 3);
    assert_eq!(
        a.iter().map(|i| i.kind).collect::<Vec<_>>(),
        vec![
            IssueKind::UnencryptedOutput,
            IssueKind::InputValidationWeakness,
            IssueKind::SharedMemoryUse
        ]
    );
    let key = |v: &Vec<Issue>| -> Vec<(usize, IssueKind, String)> {
        v.iter()
            .map(|i| (i.span.start_byte, i.kind, i.rule_hint.clone()))
            .collect()
    };
    assert_eq!(key(&a), key(&b));
}

#[test]
fn derived_length_variable_counts_as_input() {
    let src = wrap(
        "    char dest[64];\n    uint32_t n = params[1].memref.size;\n    TEE_MemMove(dest, params[1].memref.buffer, n);",
    );
    let issues = run(&src);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].rule_hint, "2.1");
}

#[test]
fn issue_record_carries_report_fields() {
    let src = wrap("    char* buf = params[3].memref.buffer;");
    let m = load_source(&src).unwrap();
    let issues = detect(&m, &FunctionClassification::default());
    let record = IssueRecord::from(&issues[0]);
    let json = serde_json::to_value(&record).unwrap();
    for field in ["kind", "file", "line", "col", "statement", "evidence", "rule_hint"] {
        assert!(json.get(field).is_some(), "missing {field}");
    }
    assert_eq!(json["kind"], "SharedMemoryUse");
    assert_eq!(json["line"], 3);
}
