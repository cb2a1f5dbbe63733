//! Problem specification files (TOML or JSON) and the bundled fixtures.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GeneratorError, GeneratorSystem, GroupError, DEFAULT_ELEMENT_CAP};
use crate::lie::{TAssignment, TEntry};
use crate::linalg::{parse_q, Q};
use crate::perm::{PermSpec, Permutation};
use crate::schreier::{build_schreier, SchreierError, SchreierGraph, VertexLayout};

pub const SPEC_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{location}: {message}")]
    Schema { location: String, message: String },
    #[error("{location}: {source}")]
    Generators {
        location: String,
        source: GeneratorError,
    },
    #[error("{location}: {source}")]
    Group {
        location: String,
        source: GroupError,
    },
    #[error("{location}: {source}")]
    Schreier {
        location: String,
        source: SchreierError,
    },
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Schema {
        location: location.into(),
        message: message.into(),
    }
}

/// A rational written as an integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn resolve(&self) -> Option<Q> {
        match self {
            RationalText::Int(n) => Some(Q::from_integer((*n).into())),
            RationalText::Text(s) => parse_q(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub version: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub degree: usize,
    /// Generators of `G`; defaults to the label elements.
    #[serde(default)]
    pub group: Option<Vec<PermSpec>>,
    #[serde(default)]
    pub max_group_order: Option<usize>,
    pub labels: Vec<RawLabel>,
    pub subgroups: Vec<RawSubgroup>,
    #[serde(default)]
    pub t_assignment: Option<RawTAssignment>,
    #[serde(default)]
    pub search: Option<SearchSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLabel {
    pub name: String,
    pub element: PermSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSubgroup {
    pub name: String,
    pub generators: Vec<PermSpec>,
    #[serde(default)]
    pub vertices: Option<Vec<RawVertex>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawVertex {
    pub rep: PermSpec,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTAssignment {
    pub names: Vec<String>,
    pub labels: Vec<RawTEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTEntry {
    pub label: String,
    pub t1: Vec<RationalText>,
    pub t2: Vec<RationalText>,
}

/// Optional overrides for the isometry search.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub restarts: Option<usize>,
    pub max_iterations: Option<usize>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Subgroup {
    pub name: String,
    pub generators: Vec<Permutation>,
    pub layout: Option<VertexLayout>,
    pub graph: SchreierGraph,
}

/// A validated specification with its group and graphs already built.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub degree: usize,
    pub group: FiniteGroup,
    pub labels: GeneratorSystem,
    pub subgroups: Vec<Subgroup>,
    pub t_assignment: Option<TAssignment>,
    pub search: SearchSection,
}

/// Parses TOML, or JSON when the text starts with `{`.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    let raw: RawSpec = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?
    };
    resolve(raw)
}

fn perm(spec: &PermSpec, degree: usize, location: String) -> Result<Permutation, SpecError> {
    spec.resolve(degree)
        .map_err(|e| schema(location, e.to_string()))
}

pub fn resolve(raw: RawSpec) -> Result<ProblemSpec, SpecError> {
    if raw.version != SPEC_VERSION {
        return Err(schema(
            "version",
            format!(
                "unsupported version {} (expected {SPEC_VERSION})",
                raw.version
            ),
        ));
    }
    if raw.degree == 0 {
        return Err(schema("degree", "must be positive"));
    }
    let d = raw.degree;
    let mut entries = Vec::with_capacity(raw.labels.len());
    for (i, l) in raw.labels.iter().enumerate() {
        entries.push((
            l.name.clone(),
            perm(&l.element, d, format!("labels[{i}].element"))?,
        ));
    }
    let labels = GeneratorSystem::new(entries).map_err(|source| SpecError::Generators {
        location: generator_location(&raw, &source),
        source,
    })?;

    let cap = raw.max_group_order.unwrap_or(DEFAULT_ELEMENT_CAP);
    let group = match &raw.group {
        Some(gens) => {
            let gens = gens
                .iter()
                .enumerate()
                .map(|(i, g)| perm(g, d, format!("group[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::generate(&gens, cap)
        }
        None => labels.generate(cap),
    }
    .map_err(|source| SpecError::Group {
        location: "group".into(),
        source,
    })?;

    if raw.subgroups.is_empty() || raw.subgroups.len() > 2 {
        return Err(schema("subgroups", "expected one or two subgroups"));
    }
    let mut subgroups = Vec::with_capacity(raw.subgroups.len());
    for (s, sub) in raw.subgroups.iter().enumerate() {
        let generators = sub
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| perm(g, d, format!("subgroups[{s}].generators[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let layout = match &sub.vertices {
            Some(vs) => Some(VertexLayout {
                entries: vs
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        Ok((
                            perm(&v.rep, d, format!("subgroups[{s}].vertices[{i}].rep"))?,
                            v.name.clone(),
                        ))
                    })
                    .collect::<Result<Vec<_>, SpecError>>()?,
            }),
            None => None,
        };
        let graph =
            build_schreier(&group, &generators, &labels, layout.as_ref()).map_err(|source| {
                SpecError::Schreier {
                    location: format!("subgroups[{s}]"),
                    source,
                }
            })?;
        subgroups.push(Subgroup {
            name: sub.name.clone(),
            generators,
            layout,
            graph,
        });
    }

    let t_assignment = match &raw.t_assignment {
        Some(t) => Some(resolve_t(t)?),
        None => None,
    };

    Ok(ProblemSpec {
        name: raw.name.clone().unwrap_or_else(|| "unnamed".into()),
        degree: d,
        group,
        labels,
        subgroups,
        t_assignment,
        search: raw.search.clone().unwrap_or_default(),
    })
}

fn generator_location(raw: &RawSpec, e: &GeneratorError) -> String {
    let name = match e {
        GeneratorError::IdentityInGenerators(n)
        | GeneratorError::InvolutionInGenerators { name: n, .. }
        | GeneratorError::DuplicateName(n)
        | GeneratorError::DuplicateGenerator(_, n) => n,
        _ => return "labels".into(),
    };
    // last occurrence: duplicates are reported at the second entry
    match raw.labels.iter().rposition(|l| &l.name == name) {
        Some(i) => format!("labels[{i}].element"),
        None => "labels".into(),
    }
}

/// Parses a stand-alone `[t_assignment]` document (TOML or JSON).
pub fn parse_t_assignment(text: &str) -> Result<TAssignment, SpecError> {
    let raw: RawTAssignment = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?
    };
    resolve_t(&raw)
}

fn resolve_t(raw: &RawTAssignment) -> Result<TAssignment, SpecError> {
    let mut entries = Vec::with_capacity(raw.labels.len());
    for (i, e) in raw.labels.iter().enumerate() {
        let vec = |v: &[RationalText], slot: &str| {
            v.iter()
                .enumerate()
                .map(|(k, x)| {
                    x.resolve().ok_or_else(|| {
                        schema(
                            format!("t_assignment.labels[{i}].{slot}[{k}]"),
                            "not a rational number",
                        )
                    })
                })
                .collect::<Result<Vec<Q>, SpecError>>()
        };
        entries.push(TEntry {
            label: e.label.clone(),
            t1: vec(&e.t1, "t1")?,
            t2: vec(&e.t2, "t2")?,
        });
    }
    Ok(TAssignment {
        names: raw.names.clone(),
        entries,
    })
}

/// Specifications shipped with the crate.
pub mod fixtures {
    use super::*;
    use crate::linalg::q;

    pub const S4_S3: &str = include_str!("../fixtures/s4_s3.toml");
    pub const SL32: &str = include_str!("../fixtures/sl32.toml");
    pub const C5: &str = include_str!("../fixtures/c5.toml");

    pub fn s4_s3() -> ProblemSpec {
        parse_spec(S4_S3).expect("bundled fixture parses")
    }

    pub fn sl32() -> ProblemSpec {
        parse_spec(SL32).expect("bundled fixture parses")
    }

    pub fn c5() -> ProblemSpec {
        parse_spec(C5).expect("bundled fixture parses")
    }

    /// Alternative choices of `t` for the second SL(3,2) extension:
    /// `t ↔ −t`, swapping the `t` and `0` slots, and both.
    pub fn sl32_t_variations() -> Vec<(&'static str, TAssignment)> {
        vec![
            ("negated", TAssignment::single("z_r", "t", q(-1), q(0))),
            ("swapped", TAssignment::single("z_r", "t", q(0), q(-1))),
            (
                "swapped-negated",
                TAssignment::single("z_r", "t", q(0), q(1)),
            ),
        ]
    }
}
