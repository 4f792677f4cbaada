//! The JSON generator file format.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use desc_core::{Alphabet, Generator};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventEntry {
    pub name: String,
    pub controllable: bool,
}

/// On-disk form of a generator. `marked` is accepted for compatibility and
/// ignored: every reachable state is marked for prefix-closed languages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub name: String,
    pub events: Vec<EventEntry>,
    pub states: Vec<String>,
    pub initial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<String>>,
    pub transitions: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty_language: bool,
}

impl GeneratorFile {
    /// Canonical file contents for `g`: states renumbered in BFS order and
    /// named by their index, events and transitions sorted.
    pub fn from_generator(name: &str, g: &Generator) -> Self {
        let events = g
            .alphabet()
            .iter()
            .map(|(e, c)| EventEntry {
                name: e.name().to_string(),
                controllable: c,
            })
            .collect();
        if g.is_empty_language() {
            return GeneratorFile {
                name: name.to_string(),
                events,
                states: vec!["0".into()],
                initial: "0".into(),
                marked: None,
                transitions: Vec::new(),
                empty_language: true,
            };
        }
        let c = g.canonical().with_index_labels();
        GeneratorFile {
            name: name.to_string(),
            events,
            states: c.labels().to_vec(),
            initial: c.label(c.initial()).to_string(),
            marked: None,
            transitions: c
                .transitions()
                .map(|(p, e, q)| {
                    (
                        c.label(p).to_string(),
                        e.name().to_string(),
                        c.label(q).to_string(),
                    )
                })
                .collect(),
            empty_language: false,
        }
    }

    /// Builds the generator; the second component lists warnings.
    pub fn to_generator(&self) -> Result<(Generator, Vec<String>)> {
        let mut warnings = Vec::new();
        let alphabet = Alphabet::new(
            self.events
                .iter()
                .map(|e| (e.name.as_str(), e.controllable)),
        )
        .with_context(|| format!("generator `{}`: events", self.name))?;
        if self.marked.is_some() {
            warnings.push(format!(
                "generator `{}`: `marked` is ignored; all reachable states are marked",
                self.name
            ));
        }
        if self.empty_language {
            if !self.transitions.is_empty() {
                bail!("generator `{}`: empty_language with transitions", self.name);
            }
            return Ok((Generator::empty(alphabet), warnings));
        }
        let g = Generator::new(
            alphabet,
            &self.states,
            self.transitions.iter().map(|(p, e, q)| (p, e, q)),
            &self.initial,
            self.marked.iter().flatten(),
        )
        .with_context(|| format!("generator `{}`", self.name))?;
        Ok((g, warnings))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn parse_generator(text: &str) -> Result<GeneratorFile> {
    serde_json::from_str(text).context("invalid generator file")
}

/// Reads a generator file, printing warnings to stderr.
pub fn read_generator(path: &Path) -> Result<(String, Generator)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = parse_generator(&text).with_context(|| format!("in {}", path.display()))?;
    let (g, warnings) = file.to_generator()?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok((file.name, g))
}

pub fn write_generator(path: &Path, name: &str, g: &Generator) -> Result<()> {
    fs::write(path, GeneratorFile::from_generator(name, g).to_json())
        .with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use desc_core::language_equal;

    const G1: &str = r#"{
        "name": "G1",
        "events": [{"name": "a1", "controllable": true}, {"name": "c", "controllable": true},
                   {"name": "u", "controllable": false}, {"name": "u1", "controllable": false}],
        "states": ["1", "2", "3", "4", "5"],
        "initial": "1",
        "marked": ["1"],
        "transitions": [["1", "c", "2"], ["2", "u1", "3"], ["1", "a1", "4"], ["4", "u", "5"]]
    }"#;

    #[test]
    fn round_trip_is_canonical() {
        let (g, warnings) = parse_generator(G1).unwrap().to_generator().unwrap();
        assert_eq!(warnings.len(), 1);
        let text = GeneratorFile::from_generator("G1", &g).to_json();
        let (h, warnings) = parse_generator(&text).unwrap().to_generator().unwrap();
        assert!(warnings.is_empty());
        assert!(language_equal(&g, &h).unwrap().holds);
        assert_eq!(GeneratorFile::from_generator("G1", &h).to_json(), text);
        assert!(!text.contains("marked"));
    }

    #[test]
    fn empty_language_round_trip() {
        let (g, _) = parse_generator(G1).unwrap().to_generator().unwrap();
        let e = Generator::empty(g.alphabet().clone());
        let text = GeneratorFile::from_generator("E", &e).to_json();
        let (h, _) = parse_generator(&text).unwrap().to_generator().unwrap();
        assert!(h.is_empty_language());
    }

    #[test]
    fn reports_position_of_syntax_errors() {
        let err = parse_generator("{\n  \"name\": 3\n}").unwrap_err();
        assert!(format!("{err:#}").contains("line 2"));
        let err = parse_generator(&G1.replace("\"initial\"", "\"start\"")).unwrap_err();
        assert!(format!("{err:#}").contains("start"));
    }

    #[test]
    fn rejects_bad_references() {
        let bad = G1.replace("[\"4\", \"u\", \"5\"]", "[\"4\", \"u\", \"9\"]");
        assert!(parse_generator(&bad).unwrap().to_generator().is_err());
        let bad = G1.replace("[\"4\", \"u\", \"5\"]", "[\"4\", \"zz\", \"5\"]");
        assert!(parse_generator(&bad).unwrap().to_generator().is_err());
    }
}
