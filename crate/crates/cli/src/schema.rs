//! The published `v1` schemas.

use schemars::gen::SchemaSettings;
use schemars::JsonSchema;
use serde_json::{json, Value};

use crate::request::Command;
use crate::response::{ErrorDocument, Success, VERSION};

fn root<T: JsonSchema>() -> Value {
    let gen = SchemaSettings::draft07().into_generator();
    serde_json::to_value(gen.into_root_schema_for::<T>()).expect("schemas serialize")
}

/// Request schema: one closed object per command, each also accepting the
/// envelope keys.
pub fn request_schema() -> Value {
    let mut schema = root::<Command>();
    let envelope = json!({
        "version": { "type": "string", "enum": [VERSION] },
        "tol": { "type": "number", "exclusiveMinimum": 0 },
        "seed": { "type": "integer", "minimum": 0 },
        "samples": { "type": "integer", "minimum": 1 },
    });
    let branches = schema["oneOf"].as_array_mut().expect("commands form a oneOf");
    for b in branches {
        let props = b["properties"].as_object_mut().expect("command branches are objects");
        for (k, v) in envelope.as_object().unwrap() {
            props.insert(k.clone(), v.clone());
        }
        b["additionalProperties"] = Value::Bool(false);
    }
    schema
}

/// Schema of a successful result document.
pub fn result_schema() -> Value {
    root::<Success>()
}

/// Schema of a failure document.
pub fn error_schema() -> Value {
    root::<ErrorDocument>()
}

/// All three schemas in one document.
pub fn published() -> Value {
    json!({
        "version": VERSION,
        "request": request_schema(),
        "result": result_schema(),
        "error": error_schema(),
    })
}
