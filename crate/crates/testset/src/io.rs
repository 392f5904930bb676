//! Stable on-disk formats: the canonical JSON instance document, the plain
//! 0/1 matrix format, and the report/trace emitters.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{GenParams, LabeledInstance, TestLabel};
use crate::instance::Instance;
use crate::solvers::SolveResult;

/// Canonical JSON instance document. Optional fields carry generator
/// metadata; plain instances round-trip with only `n` and `tests`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<usize>>>,
    pub tests: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<TestLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted_optimal: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adversarial: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<GenParams>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        let trivial_groups = instance.groups().len() == 1;
        InstanceFile {
            n: instance.n(),
            groups: (!trivial_groups).then(|| instance.groups().to_vec()),
            tests: instance.tests().iter().map(|t| t.iter().collect()).collect(),
            labels: None,
            planted_optimal: None,
            adversarial: None,
            params: None,
        }
    }

    pub fn from_labeled(labeled: &LabeledInstance) -> Self {
        let mut file = Self::from_instance(&labeled.instance);
        file.labels = Some(labeled.labels.clone());
        file.planted_optimal = Some(labeled.planted_optimal.clone());
        file.adversarial = Some(labeled.adversarial.clone());
        file.params = Some(labeled.params.clone());
        file
    }

    pub fn to_instance(&self) -> Result<Instance> {
        match &self.groups {
            Some(g) => Instance::with_groups(self.n, g.clone(), self.tests.clone()),
            None => Instance::new(self.n, self.tests.clone()),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serialization");
        s.push('\n');
        s
    }
}

/// Reads the matrix format: a header line `n m`, then `m` rows of `n`
/// characters in {0, 1}; row r column c is membership of item c in test r.
pub fn read_matrix(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::invalid("matrix: empty file"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::invalid("matrix: bad header"))?;
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::invalid("matrix: bad header"))?;
    if parts.next().is_some() {
        return Err(Error::invalid("matrix: bad header"));
    }
    let mut tests = Vec::with_capacity(m);
    for r in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::invalid(format!("matrix: missing row {r}")))?;
        if line.len() != n {
            return Err(Error::invalid(format!(
                "matrix: row {r} has {} characters, expected {n}",
                line.len()
            )));
        }
        let mut members = Vec::new();
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '1' => members.push(c),
                '0' => {}
                other => {
                    return Err(Error::invalid(format!(
                        "matrix: row {r} column {c}: unexpected character {other:?}"
                    )))
                }
            }
        }
        tests.push(members);
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::invalid("matrix: trailing content after last row"));
    }
    Instance::new(n, tests)
}

/// Writes the matrix format. Grouped instances are not expressible.
pub fn write_matrix(path: &Path, instance: &Instance) -> Result<()> {
    if instance.groups().len() != 1 {
        return Err(Error::invalid(
            "matrix: grouped instances cannot be written in matrix form",
        ));
    }
    let mut out = format!("{} {}\n", instance.n(), instance.num_tests());
    for t in instance.tests() {
        for c in 0..instance.n() {
            out.push(if t.contains(c) { '1' } else { '0' });
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Reproduction record embedded in every JSON report: the exact command,
/// its parameters, and the artifact version. No timestamps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tie_break: String,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: serde_json::Value, seed: Option<u64>, tie_break: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            tie_break: tie_break.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Solver report: the manifest plus the full run record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub manifest: RunManifest,
    pub n: usize,
    pub num_tests: usize,
    pub result: SolveResult,
}

pub fn to_report_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}

/// Per-step CSV with the fixed column set. `phase` is 0 when no schedule
/// was supplied.
pub fn trace_csv(result: &SolveResult, step_phase: Option<&[usize]>) -> String {
    let mut out = String::from("step,test_id,gain,measure_before,measure_after,phase\n");
    for (s, step) in result.steps.iter().enumerate() {
        let phase = step_phase.map_or(0, |p| p[s]);
        out.push_str(&format!(
            "{s},{},{},{},{},{phase}\n",
            step.test, step.gain, step.measure_before, step.measure_after
        ));
    }
    out
}
