//! The versioned output document shared by every subcommand.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "twogroup-output/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// The computation ran but a property check did not hold.
    Failed,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub input_digest: String,
    pub status: Status,
    pub results: Value,
    pub metadata: BTreeMap<String, Value>,
}

impl OutputDocument {
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Parses a document and checks its schema version.
    pub fn parse(text: &str) -> Result<OutputDocument, CliError> {
        let doc: OutputDocument =
            serde_json::from_str(text).map_err(|e| CliError::syntax(e.line(), e.column(), e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::field("schema_version", format!("unsupported schema {:?}", doc.schema_version)));
        }
        Ok(doc)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// What a command produced, before it is wrapped in a document.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub results: Value,
    pub metadata: BTreeMap<String, Value>,
    pub text: String,
}

impl Outcome {
    pub fn ok(results: Value, text: String) -> Outcome {
        Outcome { status: Status::Ok, results, metadata: BTreeMap::new(), text }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Outcome {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failed | Status::Error => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let doc = OutputDocument {
            schema_version: SCHEMA_VERSION.into(),
            command: "validate".into(),
            input_digest: digest(b"{}"),
            status: Status::Ok,
            results: json!({ "valid": true, "label": "Vect_Z2 ⊕ End(Vect⊕Vect)" }),
            metadata: BTreeMap::from([("max_size".to_string(), json!(32))]),
        };
        let text = doc.to_structured();
        assert_eq!(OutputDocument::parse(&text).unwrap(), doc);
        assert!(text.contains("⊕"));
    }

    #[test]
    fn rejects_other_schema() {
        let text = r#"{"schema_version": "x/9", "command": "c", "input_digest": "", "status": "ok", "results": null, "metadata": {}}"#;
        assert!(OutputDocument::parse(text).is_err());
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(digest(b""), "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
