//! JSON document formats for instances, assignments, source problems, and
//! generated gadgets.
//!
//! Rationals travel as bare integers or `"p/q"` strings — never floats — so
//! parse/serialize round-trips are bit-exact. Serialization is
//! deterministic: object keys appear in sorted order and rationals are
//! canonical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dff::DistanceFactorFunction;
use crate::instance::{Assignment, Instance};
use crate::rational::Rational;
use crate::reductions::{
    EquitablePartition, GeneratedInstance, GraphProblem, SourceProblem, ThreePartition,
    UnaryBinPacking,
};
use crate::topology::Topology;
use crate::validate::{render, Violation};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed document at {path}: {message}")]
    Json { path: String, message: String },
    #[error("invalid document at {location}: {message}")]
    Document { location: String, message: String },
    #[error("invalid instance:\n{}", render(.0))]
    Invalid(Vec<Violation>),
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, ParseError> {
    let mut deserializer = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut deserializer).map_err(|e| ParseError::Json {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// Keys in sorted order so output is deterministic.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct InstanceDoc {
    agents: Vec<String>,
    dff: DffDoc,
    edges: Vec<(usize, usize)>,
    utilities: Vec<Vec<Rational>>,
    vertices: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum DffDoc {
    Table { values: Vec<Rational> },
    Reciprocal,
    Exponential { base: Rational },
    Bounded { cutoff: usize, values: Vec<Rational> },
}

impl From<&DistanceFactorFunction> for DffDoc {
    fn from(dff: &DistanceFactorFunction) -> Self {
        match dff {
            DistanceFactorFunction::Table(values) => DffDoc::Table { values: values.clone() },
            DistanceFactorFunction::Reciprocal => DffDoc::Reciprocal,
            DistanceFactorFunction::Exponential(base) => {
                DffDoc::Exponential { base: base.clone() }
            }
            DistanceFactorFunction::BoundedTable { values, cutoff } => {
                DffDoc::Bounded { cutoff: *cutoff, values: values.clone() }
            }
        }
    }
}

impl From<DffDoc> for DistanceFactorFunction {
    fn from(doc: DffDoc) -> Self {
        match doc {
            DffDoc::Table { values } => DistanceFactorFunction::Table(values),
            DffDoc::Reciprocal => DistanceFactorFunction::Reciprocal,
            DffDoc::Exponential { base } => DistanceFactorFunction::Exponential(base),
            DffDoc::Bounded { cutoff, values } => {
                DistanceFactorFunction::BoundedTable { values, cutoff }
            }
        }
    }
}

/// Parses an instance document and validates it; rationals are canonicalized
/// (`"4/2"` becomes `2`), and any invariant violation fails the parse with
/// its JSON location.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let doc: InstanceDoc = from_json(text)?;
    let topology = Topology::new(doc.vertices, doc.edges).map_err(|e| ParseError::Document {
        location: "/edges".to_string(),
        message: e.to_string(),
    })?;
    let instance = Instance::new(topology, doc.agents, doc.utilities, doc.dff.into()).map_err(
        |e| ParseError::Document { location: "/utilities".to_string(), message: e.to_string() },
    )?;
    let violations = instance.validate();
    if violations.is_empty() {
        Ok(instance)
    } else {
        Err(ParseError::Invalid(violations))
    }
}

/// Deterministic pretty JSON for an instance; `parse(serialize(x)) = x`.
pub fn serialize_instance(instance: &Instance) -> String {
    let doc = InstanceDoc {
        agents: instance.agent_names().to_vec(),
        dff: instance.dff().into(),
        edges: instance.topology().edges().collect(),
        utilities: instance.utilities().to_vec(),
        vertices: instance.topology().vertex_count(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("instance serializes");
    text.push('\n');
    text
}

/// Parses an assignment document (`{"agent": vertex, ...}`) against an
/// instance; the error names the offending agent.
pub fn parse_assignment(text: &str, instance: &Instance) -> Result<Assignment, ParseError> {
    let doc: BTreeMap<String, usize> = from_json(text)?;
    let mut placement = vec![usize::MAX; instance.agent_count()];
    let mut index_of = BTreeMap::new();
    for (i, name) in instance.agent_names().iter().enumerate() {
        index_of.insert(name.as_str(), i);
    }
    for (name, &vertex) in &doc {
        let Some(&agent) = index_of.get(name.as_str()) else {
            return Err(ParseError::Document {
                location: format!("/{name}"),
                message: format!("unknown agent {name:?}"),
            });
        };
        if vertex >= instance.topology().vertex_count() {
            return Err(ParseError::Document {
                location: format!("/{name}"),
                message: format!(
                    "vertex {vertex} out of range for {} vertices",
                    instance.topology().vertex_count()
                ),
            });
        }
        placement[agent] = vertex;
    }
    for (i, name) in instance.agent_names().iter().enumerate() {
        if placement[i] == usize::MAX {
            return Err(ParseError::Document {
                location: format!("/{name}"),
                message: format!("agent {name:?} has no vertex"),
            });
        }
    }
    let mut seen: BTreeMap<usize, &str> = BTreeMap::new();
    for (i, &v) in placement.iter().enumerate() {
        let name = instance.agent_names()[i].as_str();
        if let Some(first) = seen.insert(v, name) {
            return Err(ParseError::Document {
                location: format!("/{name}"),
                message: format!("vertex {v} already assigned to agent {first:?}"),
            });
        }
    }
    Ok(Assignment::new(placement))
}

/// Deterministic JSON for an assignment (sorted agent names).
pub fn serialize_assignment(assignment: &Assignment, instance: &Instance) -> String {
    let doc: BTreeMap<&str, usize> = instance
        .agent_names()
        .iter()
        .enumerate()
        .map(|(i, name)| (name.as_str(), assignment.vertex_of(i)))
        .collect();
    let mut text = serde_json::to_string_pretty(&doc).expect("assignment serializes");
    text.push('\n');
    text
}

/// Source problems travel inside a `{"source": {...}}` envelope.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct SourceEnvelope {
    source: SourceDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum SourceDoc {
    #[serde(rename = "unary-bin-packing")]
    UnaryBinPacking { bins: usize, capacity: u64, items: Vec<u64> },
    #[serde(rename = "equitable-partition")]
    EquitablePartition { items: Vec<u64> },
    #[serde(rename = "3-partition")]
    ThreePartition { items: Vec<u64>, target: u64 },
    #[serde(rename = "independent-set")]
    IndependentSet { edges: Vec<(usize, usize)>, k: usize, vertices: usize },
    #[serde(rename = "clique")]
    Clique { edges: Vec<(usize, usize)>, k: usize, vertices: usize },
}

pub fn parse_source(text: &str) -> Result<SourceProblem, ParseError> {
    let envelope: SourceEnvelope = from_json(text)?;
    let graph = |vertices, edges: Vec<(usize, usize)>| {
        Topology::new(vertices, edges).map_err(|e| ParseError::Document {
            location: "/source/edges".to_string(),
            message: e.to_string(),
        })
    };
    Ok(match envelope.source {
        SourceDoc::UnaryBinPacking { bins, capacity, items } => {
            SourceProblem::UnaryBinPacking(UnaryBinPacking { items, bins, capacity })
        }
        SourceDoc::EquitablePartition { items } => {
            SourceProblem::EquitablePartition(EquitablePartition { items })
        }
        SourceDoc::ThreePartition { items, target } => {
            SourceProblem::ThreePartition(ThreePartition { items, target })
        }
        SourceDoc::IndependentSet { edges, k, vertices } => {
            SourceProblem::IndependentSet(GraphProblem { graph: graph(vertices, edges)?, k })
        }
        SourceDoc::Clique { edges, k, vertices } => {
            SourceProblem::Clique(GraphProblem { graph: graph(vertices, edges)?, k })
        }
    })
}

pub fn serialize_source(source: &SourceProblem) -> String {
    let doc = match source {
        SourceProblem::UnaryBinPacking(p) => SourceDoc::UnaryBinPacking {
            bins: p.bins,
            capacity: p.capacity,
            items: p.items.clone(),
        },
        SourceProblem::EquitablePartition(p) => {
            SourceDoc::EquitablePartition { items: p.items.clone() }
        }
        SourceProblem::ThreePartition(p) => {
            SourceDoc::ThreePartition { items: p.items.clone(), target: p.target }
        }
        SourceProblem::IndependentSet(p) => SourceDoc::IndependentSet {
            edges: p.graph.edges().collect(),
            k: p.k,
            vertices: p.graph.vertex_count(),
        },
        SourceProblem::Clique(p) => SourceDoc::Clique {
            edges: p.graph.edges().collect(),
            k: p.k,
            vertices: p.graph.vertex_count(),
        },
    };
    let mut text = serde_json::to_string_pretty(&SourceEnvelope { source: doc })
        .expect("source serializes");
    text.push('\n');
    text
}

/// Parses the compact distance-factor-function spec used by the CLI and the
/// bindings: `reciprocal`, `exponential:BASE`, `table:V1,V2,...`, or
/// `bounded:CUTOFF:V1,V2,...`.
pub fn parse_dff_spec(spec: &str) -> Result<DistanceFactorFunction, ParseError> {
    let bad = |message: String| ParseError::Document { location: "dff spec".to_string(), message };
    let parse_values = |csv: &str| -> Result<Vec<Rational>, ParseError> {
        csv.split(',')
            .map(|s| s.trim().parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(format!("invalid value: {e}")))
    };
    let (kind, rest) = match spec.split_once(':') {
        Some((kind, rest)) => (kind, Some(rest)),
        None => (spec, None),
    };
    match (kind, rest) {
        ("reciprocal", None) => Ok(DistanceFactorFunction::Reciprocal),
        ("exponential", Some(base)) => {
            let base = base.parse().map_err(|e| bad(format!("invalid base: {e}")))?;
            Ok(DistanceFactorFunction::Exponential(base))
        }
        ("table", Some(values)) => Ok(DistanceFactorFunction::Table(parse_values(values)?)),
        ("bounded", Some(rest)) => {
            let (cutoff, values) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected bounded:<cutoff>:<values>".to_string()))?;
            let cutoff = cutoff.parse().map_err(|e| bad(format!("invalid cutoff: {e}")))?;
            Ok(DistanceFactorFunction::BoundedTable { values: parse_values(values)?, cutoff })
        }
        _ => Err(bad(format!(
            "unknown spec {spec:?}; expected reciprocal, exponential:BASE, table:VALUES, or \
             bounded:CUTOFF:VALUES"
        ))),
    }
}

#[derive(Debug, Clone, Serialize)]
struct GeneratedDoc {
    gadget: String,
    instance: serde_json::Value,
    metadata: BTreeMap<String, String>,
}

/// Document written by `tdg generate`: the instance plus gadget provenance.
pub fn serialize_generated(gen: &GeneratedInstance) -> String {
    let instance_doc: serde_json::Value =
        serde_json::from_str(&serialize_instance(&gen.instance)).expect("round-trips");
    let doc = GeneratedDoc {
        gadget: gen.gadget.tag().to_string(),
        instance: instance_doc,
        metadata: gen.metadata.clone(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("generated doc serializes");
    text.push('\n');
    text
}
