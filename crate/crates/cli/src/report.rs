use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub threads: usize,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

pub struct Run {
    pub report: RunReport,
    started: Instant,
}

impl Run {
    pub fn new(command: &str, seed: u64, timings: bool) -> Self {
        Self {
            report: RunReport {
                command: command.to_string(),
                version: env!("CARGO_PKG_VERSION"),
                seed,
                threads: rayon::current_num_threads(),
                inputs: Vec::new(),
                timings_ms: timings.then(BTreeMap::new),
            },
            started: Instant::now(),
        }
    }

    /// Reads an input file and records its digest.
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.report.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn lap(&mut self, name: &str, since: Instant) {
        if let Some(t) = self.report.timings_ms.as_mut() {
            t.insert(name.to_string(), since.elapsed().as_secs_f64() * 1e3);
        }
    }

    pub fn finish(mut self, result: serde_json::Value) -> Result<()> {
        let started = self.started;
        self.lap("total", started);
        let doc = serde_json::json!({ "report": self.report, "result": result });
        let mut out = io::stdout().lock();
        match writeln!(out, "{}", serde_json::to_string_pretty(&doc)?) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            r => Ok(r?),
        }
    }
}
