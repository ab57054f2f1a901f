//! Decision log consumed by `--explain`: one JSON object per event, each
//! tagged with an `"event"` name.

use std::sync::Mutex;

use serde_json::{Map, Value};

#[derive(Debug, Default)]
pub struct Explain {
    enabled: bool,
    events: Mutex<Vec<Value>>,
}

impl Explain {
    pub fn enabled() -> Self {
        Explain {
            enabled: true,
            events: Mutex::new(Vec::new()),
        }
    }

    /// A log that drops everything.
    pub fn disabled() -> Self {
        Explain::default()
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    /// Records `fields` (a JSON object) under the name `event`.
    pub fn record(&self, event: &str, fields: Value) {
        if !self.enabled {
            return;
        }
        let mut obj = Map::new();
        obj.insert("event".into(), Value::String(event.into()));
        match fields {
            Value::Object(m) => obj.extend(m),
            Value::Null => {}
            other => {
                obj.insert("value".into(), other);
            }
        }
        self.events.lock().expect("explain log poisoned").push(Value::Object(obj));
    }

    pub fn events(&self) -> Vec<Value> {
        self.events.lock().expect("explain log poisoned").clone()
    }

    pub fn to_json_lines(&self) -> String {
        self.events()
            .iter()
            .map(|e| format!("{e}\n"))
            .collect()
    }
}
