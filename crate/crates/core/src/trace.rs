//! Stage-by-stage record of a solve, for `--trace` output.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub stage: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new() -> Trace {
        Trace::default()
    }

    pub fn push(&mut self, stage: &str, detail: impl Into<String>) {
        self.events.push(TraceEvent {
            stage: stage.to_string(),
            detail: detail.into(),
        });
    }
}
