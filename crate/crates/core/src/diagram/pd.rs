//! PD text and JSON front ends.

use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramError};

/// JSON form: `{"pd": [[a,b,c,d], ...], "basepoint": a, "loops": [k], "signs": [±1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub pd: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loops: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
}

impl DiagramJson {
    pub fn into_diagram(self) -> Result<Diagram, DiagramError> {
        Diagram::new(self.pd, self.signs, self.loops, self.basepoint)
    }
}

/// Parses whitespace-separated `X(a,b,c,d)` and `O(k)` terms. Empty input is the unknot.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let kind = rest.as_bytes()[0];
        let open = rest[1..].trim_start();
        if !matches!(kind, b'X' | b'O') || !open.starts_with('(') {
            return Err(DiagramError::MalformedPd(format!(
                "unexpected input at `{}`",
                snippet(rest)
            )));
        }
        let close = open
            .find(')')
            .ok_or_else(|| DiagramError::MalformedPd("missing `)`".into()))?;
        let labels = open[1..close]
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| {
                        DiagramError::MalformedPd(format!("bad arc label `{}`", s.trim()))
                    })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        match (kind, labels.as_slice()) {
            (b'X', &[a, b, c, d]) => crossings.push([a, b, c, d]),
            (b'O', &[k]) => loops.push(k),
            _ => {
                return Err(DiagramError::MalformedPd(format!(
                    "wrong number of labels in `{}`",
                    snippet(rest)
                )))
            }
        }
        rest = open[close + 1..].trim_start();
    }
    Diagram::new(crossings, None, loops, None)
}

/// Accepts either the JSON object form or a bare array of 4-tuples.
pub fn parse_pd_json(text: &str) -> Result<Diagram, DiagramError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| DiagramError::MalformedPd(e.to_string()))?;
    let dj: DiagramJson = if value.is_array() {
        DiagramJson {
            pd: serde_json::from_value(value)
                .map_err(|e| DiagramError::MalformedPd(e.to_string()))?,
            basepoint: None,
            loops: Vec::new(),
            signs: None,
        }
    } else {
        serde_json::from_value(value).map_err(|e| DiagramError::MalformedPd(e.to_string()))?
    };
    dj.into_diagram()
}

fn snippet(s: &str) -> &str {
    let end = s.char_indices().nth(16).map_or(s.len(), |(i, _)| i);
    &s[..end]
}
