//! Shared helpers for the CLI test suites: locating the binary and repo
//! files, and a minimal structural JSON-schema validator covering the
//! subset used by the shipped schemas (`type`, `required`, `properties`,
//! `items`, `enum`, `$ref` into `definitions`).

use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

/// Path of the compiled `stokes-lattice` binary.
pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stokes-lattice"))
}

/// Absolute path of a file in the repository's `configs/` directory.
pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

/// Absolute path of a file in the repository's `schema/` directory.
pub fn schema_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schema")
        .join(name)
}

/// Loads and parses a shipped schema.
pub fn load_schema(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_path(name)).expect("schema file readable");
    serde_json::from_str(&text).expect("schema parses")
}

fn resolve_ref<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let path = reference
        .strip_prefix("#/")
        .unwrap_or_else(|| panic!("unsupported $ref {reference:?}"));
    let mut node = root;
    for seg in path.split('/') {
        node = node
            .get(seg)
            .unwrap_or_else(|| panic!("$ref {reference:?}: missing segment {seg:?}"));
    }
    node
}

fn type_matches(ty: &str, value: &Value) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "number" => value.is_number(),
        "integer" => value.is_i64() || value.is_u64(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        other => panic!("unsupported schema type {other:?}"),
    }
}

/// Structural validation of `instance` against `schema` (rooted at `root`
/// for `$ref` resolution). Returns the first violation found.
pub fn validate(root: &Value, schema: &Value, instance: &Value, at: &str) -> Result<(), String> {
    let schema = match schema.get("$ref").and_then(Value::as_str) {
        Some(r) => resolve_ref(root, r),
        None => schema,
    };
    if let Some(ty) = schema.get("type") {
        let allowed: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{at}: malformed schema type")),
        };
        if !allowed.iter().any(|t| type_matches(t, instance)) {
            return Err(format!("{at}: expected type {allowed:?}, got {instance}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(instance) {
            return Err(format!("{at}: value {instance} not in enum {options:?}"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if instance.get(key).is_none() {
                return Err(format!("{at}: missing required property {key:?}"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        if let Some(obj) = instance.as_object() {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(root, sub, v, &format!("{at}/{key}"))?;
                }
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = instance.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(root, items, v, &format!("{at}[{i}]"))?;
            }
        }
    }
    Ok(())
}

/// Validates an instance against a shipped schema by name, panicking with
/// the violation on failure.
pub fn assert_matches_schema(schema_name: &str, instance: &Value) {
    let schema = load_schema(schema_name);
    if let Err(e) = validate(&schema, &schema, instance, "$") {
        panic!("{schema_name}: {e}");
    }
}
