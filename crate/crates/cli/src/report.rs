use std::fmt::Write as _;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

/// What a command prints: result values first, then provenance, then
/// timings, so output can be compared after cutting the timing lines.
#[derive(Debug, Default)]
pub struct RunReport {
    values: Vec<(String, String)>,
    command: String,
    digest: Option<String>,
    seed: Option<u64>,
    witness: Option<String>,
    timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn new(args: &[String]) -> RunReport {
        RunReport { command: args.join(" "), ..Default::default() }
    }

    pub fn value(&mut self, key: &str, value: impl ToString) {
        self.values.push((key.to_string(), value.to_string()));
    }

    pub fn digest_of(&mut self, inputs: &[&[u8]]) {
        let mut hasher = Sha256::new();
        for bytes in inputs {
            hasher.update(bytes);
        }
        self.digest = Some(hex::encode(hasher.finalize()));
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn witness(&mut self, path: &str) {
        self.witness = Some(path.to_string());
    }

    /// Runs `f`, recording its wall time under `phase`.
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push((phase.to_string(), start.elapsed()));
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.values {
            writeln!(out, "{k} {v}").unwrap();
        }
        if let Some(w) = &self.witness {
            writeln!(out, "witness {w}").unwrap();
        }
        writeln!(out, "command {}", self.command).unwrap();
        writeln!(out, "input_sha256 {}", self.digest.as_deref().unwrap_or("-")).unwrap();
        match self.seed {
            Some(s) => writeln!(out, "seed {s}").unwrap(),
            None => writeln!(out, "seed -").unwrap(),
        }
        for (phase, d) in &self.timings {
            writeln!(out, "time_ms {phase} {:.3}", d.as_secs_f64() * 1e3).unwrap();
        }
        out
    }
}
