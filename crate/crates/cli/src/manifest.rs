use std::collections::BTreeMap;
use std::fs;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct InputFile {
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

/// Everything needed to rerun a command; embedded in its output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub inputs: Vec<InputFile>,
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &'static str, seed: Option<u64>, out: Option<&str>) -> Self {
        RunManifest {
            tool: "cgakit",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
            seed,
            outputs: out.map(str::to_owned).into_iter().collect(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.to_owned(), serde_json::to_value(value).expect("parameter serializes"));
        self
    }

    /// Read an input file and record its digest.
    pub fn read_input(&mut self, path: &str) -> Result<String, CliError> {
        let data = fs::read(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        self.inputs.push(InputFile {
            path: path.to_owned(),
            bytes: data.len(),
            sha256: format!("{:x}", Sha256::digest(&data)),
        });
        String::from_utf8(data).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("manifest serializes")
    }

    /// `# manifest: {...}` header line for CSV outputs.
    pub fn csv_line(&self) -> String {
        format!("# manifest: {}\n", serde_json::to_string(self).expect("manifest serializes"))
    }
}
