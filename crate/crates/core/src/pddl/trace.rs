//! Line-delimited JSON demonstration traces.
//!
//! The first line is a header naming the fluents and actions; every further
//! line is one demonstration with its states listed as true fluents:
//!
//! ```text
//! {"fluents":["p","q"],"actions":["a"]}
//! {"pre":["p"],"action":"a","post":["p","q"]}
//! {"pre":["q"],"action":"a","post":null}
//! ```

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::PddlError;
use crate::literal::{FluentUniverse, State};
use crate::model::{Demonstration, GroundModel};

/// How a trace was produced, recorded by the simulator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub prng: String,
    pub seed: u64,
    pub length: usize,
    pub restarts: usize,
    pub ratio: f64,
    pub dedupe: bool,
    pub positives: usize,
    pub negatives: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub fluents: Vec<String>,
    pub actions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
}

impl TraceHeader {
    pub fn for_model(model: &GroundModel) -> Self {
        Self {
            fluents: model.universe().names().to_vec(),
            actions: model.action_names(),
            generator: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRecord {
    pub pre: Vec<String>,
    pub action: String,
    pub post: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct TraceFile {
    pub header: TraceHeader,
    pub universe: FluentUniverse,
    pub demos: Vec<Demonstration>,
}

impl TraceFile {
    /// Fails with `SchemaMismatch` unless the header lists exactly the
    /// model's fluents and actions, in order.
    pub fn check_against(&self, model: &GroundModel) -> Result<(), PddlError> {
        if self.header.fluents != model.universe().names() {
            return Err(PddlError::SchemaMismatch("fluent list differs".into()));
        }
        if self.header.actions != model.action_names() {
            return Err(PddlError::SchemaMismatch("action catalog differs".into()));
        }
        Ok(())
    }
}

fn state(universe: &FluentUniverse, names: &[String]) -> Result<State, PddlError> {
    universe
        .state(names.iter().map(String::as_str))
        .map_err(|e| PddlError::SchemaMismatch(e.to_string()))
}

pub fn read_trace<R: BufRead>(reader: R) -> Result<TraceFile, PddlError> {
    let mut lines = reader.lines();
    let first = lines
        .next()
        .ok_or_else(|| PddlError::SchemaMismatch("missing header line".into()))??;
    let header: TraceHeader =
        serde_json::from_str(&first).map_err(|e| PddlError::SchemaMismatch(format!("bad header: {e}")))?;
    let universe = FluentUniverse::new(header.fluents.iter().cloned())
        .map_err(|e| PddlError::SchemaMismatch(e.to_string()))?;
    let mut catalog = std::collections::HashMap::new();
    for (id, name) in header.actions.iter().enumerate() {
        if catalog.insert(name.as_str(), id).is_some() {
            return Err(PddlError::SchemaMismatch(format!("duplicate action `{name}`")));
        }
    }
    let mut demos = Vec::new();
    for (index, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: TraceRecord = serde_json::from_str(&line).map_err(|e| PddlError::MalformedRecord {
            index,
            reason: e.to_string(),
        })?;
        let action = *catalog
            .get(record.action.as_str())
            .ok_or_else(|| PddlError::SchemaMismatch(format!("unknown action `{}`", record.action)))?;
        let pre = state(&universe, &record.pre)?;
        let post = record.post.as_deref().map(|p| state(&universe, p)).transpose()?;
        demos.push(Demonstration { pre, action, post });
    }
    Ok(TraceFile {
        header,
        universe,
        demos,
    })
}

pub fn write_trace<W: Write>(
    mut writer: W,
    header: &TraceHeader,
    demos: &[Demonstration],
) -> Result<(), PddlError> {
    let universe = FluentUniverse::new(header.fluents.iter().cloned())?;
    writeln!(writer, "{}", json_line(header))?;
    for d in demos {
        let action = header
            .actions
            .get(d.action)
            .ok_or_else(|| PddlError::SchemaMismatch(format!("action #{} not in header", d.action)))?;
        let record = TraceRecord {
            pre: universe.true_fluent_names(&d.pre),
            action: action.clone(),
            post: d.post.as_ref().map(|s| universe.true_fluent_names(s)),
        };
        writeln!(writer, "{}", json_line(&record))?;
    }
    writer.flush()?;
    Ok(())
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("trace lines serialize")
}
