//! Function classification: which C functions map onto which DSL call
//! kinds, and which parameter expressions count as boundary-crossing.
//!
//! Loaded from a TOML file; the defaults cover the OP-TEE helpers used by
//! the bundled corpus (`TEE_MemMove`, `snprintf`, `TEE_MemCompare`, and
//! the demo `enc`/`hash`/`read`/`write` helpers).

use std::collections::BTreeSet;
use std::path::Path;

use regex::Regex;
use serde::Deserialize;

#[derive(Debug, Clone)]
pub struct FunctionClassification {
    pub copy_fns: BTreeSet<String>,
    pub snprint_fns: BTreeSet<String>,
    pub enc_fns: BTreeSet<String>,
    pub hash_fns: BTreeSet<String>,
    pub read_fns: BTreeSet<String>,
    pub write_fns: BTreeSet<String>,
    pub malloc_fns: BTreeSet<String>,
    /// Byte-comparison helpers recognized in integrity-check guards.
    pub compare_fns: BTreeSet<String>,
    /// Full-expression patterns over parameter expressions.
    pub output_param_pattern: Regex,
    pub input_param_pattern: Regex,
    pub shared_mem_pattern: Regex,
    /// Entry-point function name for client-spec extraction.
    pub entry_point: String,
    /// Overrides the UUID initializer normally found in the source.
    pub uuid_override: Option<String>,
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

impl Default for FunctionClassification {
    fn default() -> Self {
        let memref_buffer = Regex::new(r"^params\[\d+\]\.memref\.buffer$").expect("static regex");
        FunctionClassification {
            copy_fns: set(&["TEE_MemMove", "memcpy", "memmove"]),
            snprint_fns: set(&["snprintf"]),
            enc_fns: set(&["enc"]),
            hash_fns: set(&["hash"]),
            read_fns: set(&["read"]),
            write_fns: set(&["write"]),
            malloc_fns: set(&["TEE_Malloc", "malloc"]),
            compare_fns: set(&["TEE_MemCompare", "memcmp"]),
            output_param_pattern: memref_buffer.clone(),
            input_param_pattern: memref_buffer.clone(),
            shared_mem_pattern: memref_buffer,
            entry_point: "TA_InvokeCommandEntryPoint".to_string(),
            uuid_override: None,
        }
    }
}

/// On-disk form of the classification file. Every key is optional and
/// falls back to the default.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassificationFile {
    copy_fns: Option<Vec<String>>,
    snprint_fns: Option<Vec<String>>,
    enc_fns: Option<Vec<String>>,
    hash_fns: Option<Vec<String>>,
    read_fns: Option<Vec<String>>,
    write_fns: Option<Vec<String>>,
    malloc_fns: Option<Vec<String>>,
    compare_fns: Option<Vec<String>>,
    output_param_pattern: Option<String>,
    input_param_pattern: Option<String>,
    shared_mem_pattern: Option<String>,
    entry_point: Option<String>,
    uuid_override: Option<String>,
}

impl FunctionClassification {
    pub fn load(path: &Path) -> Result<Self, crate::Error> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, crate::Error> {
        let file: ClassificationFile = toml::from_str(text)
            .map_err(|e| crate::Error::Config(format!("classification file: {e}")))?;
        let mut fc = FunctionClassification::default();
        let into_set = |v: Vec<String>| v.into_iter().collect::<BTreeSet<_>>();
        if let Some(v) = file.copy_fns {
            fc.copy_fns = into_set(v);
        }
        if let Some(v) = file.snprint_fns {
            fc.snprint_fns = into_set(v);
        }
        if let Some(v) = file.enc_fns {
            fc.enc_fns = into_set(v);
        }
        if let Some(v) = file.hash_fns {
            fc.hash_fns = into_set(v);
        }
        if let Some(v) = file.read_fns {
            fc.read_fns = into_set(v);
        }
        if let Some(v) = file.write_fns {
            fc.write_fns = into_set(v);
        }
        if let Some(v) = file.malloc_fns {
            fc.malloc_fns = into_set(v);
        }
        if let Some(v) = file.compare_fns {
            fc.compare_fns = into_set(v);
        }
        let compile = |name: &str, p: String| {
            Regex::new(&p).map_err(|e| crate::Error::Config(format!("{name}: {e}")))
        };
        if let Some(p) = file.output_param_pattern {
            fc.output_param_pattern = compile("output_param_pattern", p)?;
        }
        if let Some(p) = file.input_param_pattern {
            fc.input_param_pattern = compile("input_param_pattern", p)?;
        }
        if let Some(p) = file.shared_mem_pattern {
            fc.shared_mem_pattern = compile("shared_mem_pattern", p)?;
        }
        if let Some(name) = file.entry_point {
            fc.entry_point = name;
        }
        fc.uuid_override = file.uuid_override;
        fc.check_disjoint()?;
        Ok(fc)
    }

    /// The classified sets must be pairwise disjoint.
    fn check_disjoint(&self) -> Result<(), crate::Error> {
        let sets: [(&str, &BTreeSet<String>); 8] = [
            ("copy_fns", &self.copy_fns),
            ("snprint_fns", &self.snprint_fns),
            ("enc_fns", &self.enc_fns),
            ("hash_fns", &self.hash_fns),
            ("read_fns", &self.read_fns),
            ("write_fns", &self.write_fns),
            ("malloc_fns", &self.malloc_fns),
            ("compare_fns", &self.compare_fns),
        ];
        for (i, (name_a, a)) in sets.iter().enumerate() {
            for (name_b, b) in sets.iter().skip(i + 1) {
                if let Some(shared) = a.intersection(b).next() {
                    return Err(crate::Error::Config(format!(
                        "`{shared}` classified as both {name_a} and {name_b}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_output_param(&self, expr: &str) -> bool {
        self.output_param_pattern.is_match(expr.trim())
    }

    pub fn is_input_param(&self, expr: &str) -> bool {
        self.input_param_pattern.is_match(expr.trim())
    }

    pub fn is_shared_mem(&self, expr: &str) -> bool {
        self.shared_mem_pattern.is_match(expr.trim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_disjoint_and_match_memrefs() {
        let fc = FunctionClassification::default();
        fc.check_disjoint().unwrap();
        assert!(fc.is_output_param("params[0].memref.buffer"));
        assert!(fc.is_shared_mem("params[3].memref.buffer"));
        assert!(!fc.is_output_param("params[0].memref.size"));
        assert!(!fc.is_output_param("buf"));
    }

    #[test]
    fn load_overrides_and_rejects_overlap() {
        let fc = FunctionClassification::from_toml(
            r#"
copy_fns = ["my_copy"]
shared_mem_pattern = 'params\[3\]\.memref\.buffer'
"#,
        )
        .unwrap();
        assert!(fc.copy_fns.contains("my_copy"));
        assert!(fc.is_shared_mem("params[3].memref.buffer"));
        assert!(!fc.is_shared_mem("params[1].memref.buffer"));

        let err = FunctionClassification::from_toml(r#"enc_fns = ["TEE_MemMove"]"#);
        assert!(err.is_err());
    }
}
