//! Project files: a set of named generators plus an optional coordination block.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use desc_core::{
    default_coordinator, suggest_coordinator_events, Alphabet, CoordinatedPlant, Generator,
};
use serde::Deserialize;

use crate::format::{read_generator, GeneratorFile};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GeneratorRef {
    Path(PathBuf),
    Inline(Box<GeneratorFile>),
}

/// `"auto"`, a list of event names, or the name of an entry of `alphabets`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum EventsRef {
    Named(String),
    List(Vec<String>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinationBlock {
    pub g1: String,
    pub g2: String,
    pub gk: String,
    pub spec: String,
    pub ek: EventsRef,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    pub generators: Vec<GeneratorRef>,
    #[serde(default)]
    pub alphabets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub coordination: Option<CoordinationBlock>,
}

/// A loaded project with all generators parsed.
#[derive(Debug)]
pub struct Project {
    pub path: PathBuf,
    pub generators: BTreeMap<String, Generator>,
    pub alphabets: BTreeMap<String, Vec<String>>,
    pub coordination: Option<CoordinationBlock>,
}

/// The coordination block resolved into a plant and a specification.
#[derive(Debug)]
pub struct Coordination {
    pub plant: CoordinatedPlant,
    pub spec: Generator,
    pub spec_name: String,
}

pub const AUTO: &str = "auto";

impl Project {
    pub fn load(path: &Path) -> Result<Project> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: ProjectFile = serde_json::from_str(&text)
            .with_context(|| format!("invalid project file {}", path.display()))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let mut generators = BTreeMap::new();
        for r in file.generators {
            let (name, g) = match r {
                GeneratorRef::Path(p) => read_generator(&dir.join(p))?,
                GeneratorRef::Inline(f) => {
                    let (g, warnings) = f.to_generator()?;
                    for w in warnings {
                        eprintln!("warning: {w}");
                    }
                    (f.name, g)
                }
            };
            if name == AUTO {
                bail!("`{AUTO}` is reserved and cannot name a generator");
            }
            if generators.insert(name.clone(), g).is_some() {
                bail!("duplicate generator name `{name}`");
            }
        }
        let mut all = Alphabet::default();
        for (name, g) in &generators {
            all = all
                .union(g.alphabet())
                .with_context(|| format!("generator `{name}` disagrees on controllability"))?;
        }
        Ok(Project {
            path: path.to_path_buf(),
            generators,
            alphabets: file.alphabets,
            coordination: file.coordination,
        })
    }

    pub fn generator(&self, name: &str) -> Result<&Generator> {
        self.generators
            .get(name)
            .ok_or_else(|| anyhow!("unknown generator `{name}` in {}", self.path.display()))
    }

    fn event_names(&self, r: &EventsRef) -> Result<Option<Vec<String>>> {
        Ok(match r {
            EventsRef::Named(s) if s == AUTO => None,
            EventsRef::Named(s) => Some(
                self.alphabets
                    .get(s)
                    .ok_or_else(|| anyhow!("unknown alphabet `{s}`"))?
                    .clone(),
            ),
            EventsRef::List(v) => Some(v.clone()),
        })
    }

    /// Resolves `g1`, `g2`, `gk` and `ek`. An `"auto"` coordinator is the
    /// default one over `ek`; if `ek` is `"auto"` as well it is chosen by the
    /// coordinator event search, and for a named coordinator it defaults to
    /// the coordinator's alphabet.
    pub fn coordination(&self) -> Result<Coordination> {
        let block = self
            .coordination
            .as_ref()
            .ok_or_else(|| anyhow!("{} has no coordination block", self.path.display()))?;
        let g1 = self.generator(&block.g1)?.clone();
        let g2 = self.generator(&block.g2)?.clone();
        let spec = self.generator(&block.spec)?.clone();
        let all = g1.alphabet().union(g2.alphabet())?;
        let ek = match self.event_names(&block.ek)? {
            Some(names) => {
                let set = all
                    .resolve(&names)
                    .context("coordinator events must be events of G1 or G2")?;
                Some(all.restrict(&set))
            }
            None => None,
        };
        let gk = if block.gk == AUTO {
            let ek = match ek {
                Some(ek) => ek,
                None => suggest_coordinator_events(&spec, &g1, &g2)?,
            };
            default_coordinator(&g1, &g2, &ek)?
        } else {
            let gk = self.generator(&block.gk)?.clone();
            if let Some(ek) = ek {
                if !ek.same_events(gk.alphabet()) {
                    bail!(
                        "coordinator `{}` is over {}, but ek is {}",
                        block.gk,
                        gk.alphabet(),
                        ek
                    );
                }
            }
            gk
        };
        Ok(Coordination {
            plant: CoordinatedPlant::new(g1, g2, gk)?,
            spec,
            spec_name: block.spec.clone(),
        })
    }
}
