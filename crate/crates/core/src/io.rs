//! JSON file formats.
//!
//! ```text
//! graph      {"vertices": ["l1", ...], "edges": [["l1", "l2"], ...]}
//! network    {"nodes": ["u", ...], "links": [{"u": "u", "v": "v", "mult": 2, "id": "uv"}, ...]}
//! demands    {"l1": "9/10", "l2": "0.25", "l3": 1}
//! schedule   {"horizon": "1", "links": {"l1": [["0", "9/10"]], ...}}
//! sets       {"horizon": "5/2", "sets": [{"links": ["v1", "v3"], "duration": "1/2"}, ...]}
//! points     {"points": [["0", "1/2"], ...]}
//! ```
//!
//! Rationals are written as canonical `"p/q"` strings and read from `"p/q"`,
//! integer or exact decimal strings (or bare JSON integers). Parse errors name
//! the JSON path of the offending field.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::demand::DemandVector;
use crate::error::Error;
use crate::graph::{ConflictGraph, LinkSpec, NetworkGraph};
use crate::rational::Rational;
use crate::schedule::{Interval, IntervalSet, Schedule, SetSchedule};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("at {path}: {message}")]
    Syntax { path: String, message: String },
    #[error(transparent)]
    Invalid(#[from] Error),
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| FormatError::Syntax {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

pub fn parse_graph(text: &str) -> Result<ConflictGraph, FormatError> {
    let f: GraphFile = parse(text)?;
    Ok(ConflictGraph::new(&f.vertices, &f.edges)?)
}

/// Edges are written with endpoints in id order and sorted.
pub fn graph_to_json(g: &ConflictGraph) -> String {
    let mut edges: Vec<(String, String)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (g.id(u).to_string(), g.id(v).to_string());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort();
    render(&GraphFile {
        vertices: g.ids().to_vec(),
        edges,
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkEntry {
    u: String,
    v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mult: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    nodes: Vec<String>,
    #[serde(default)]
    links: Vec<LinkEntry>,
}

pub fn parse_network(text: &str) -> Result<NetworkGraph, FormatError> {
    let f: NetworkFile = parse(text)?;
    let links = f
        .links
        .into_iter()
        .map(|l| LinkSpec {
            id: l.id,
            u: l.u,
            v: l.v,
            multiplicity: l.mult,
        })
        .collect();
    Ok(NetworkGraph::new(&f.nodes, links)?)
}

pub fn network_to_json(n: &NetworkGraph) -> String {
    let links = n
        .links()
        .iter()
        .map(|l| {
            let (u, v) = (n.nodes()[l.u].clone(), n.nodes()[l.v].clone());
            let default_id = format!("{u}-{v}");
            LinkEntry {
                mult: (l.multiplicity != 1).then_some(l.multiplicity),
                id: (l.id != default_id).then(|| l.id.clone()),
                u,
                v,
            }
        })
        .collect();
    render(&NetworkFile {
        nodes: n.nodes().to_vec(),
        links,
    })
}

pub fn parse_demands(text: &str) -> Result<DemandVector, FormatError> {
    parse(text)
}

pub fn demands_to_json(d: &DemandVector) -> String {
    render(d)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    horizon: Rational,
    links: BTreeMap<String, Vec<(Rational, Rational)>>,
}

pub fn parse_schedule(text: &str) -> Result<Schedule, FormatError> {
    let f: ScheduleFile = parse(text)?;
    let mut s = Schedule::new(f.horizon);
    for (id, pairs) in f.links {
        let intervals = pairs
            .into_iter()
            .map(|(a, b)| Interval::new(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        s.assignment.insert(id, IntervalSet::from_intervals(intervals));
    }
    Ok(s)
}

pub fn schedule_to_json(s: &Schedule) -> String {
    render(&ScheduleFile {
        horizon: s.horizon.clone(),
        links: s
            .assignment
            .iter()
            .map(|(id, set)| {
                let pairs = set
                    .intervals()
                    .iter()
                    .map(|iv| (iv.start.clone(), iv.end.clone()))
                    .collect();
                (id.clone(), pairs)
            })
            .collect(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetEntry {
    links: Vec<String>,
    duration: Rational,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetScheduleFile {
    horizon: Rational,
    sets: Vec<SetEntry>,
}

pub fn parse_set_schedule(text: &str) -> Result<SetSchedule, FormatError> {
    let f: SetScheduleFile = parse(text)?;
    let mut s = SetSchedule::new(f.horizon);
    for e in f.sets {
        s.add(e.links, e.duration);
    }
    Ok(s)
}

pub fn set_schedule_to_json(s: &SetSchedule) -> String {
    render(&SetScheduleFile {
        horizon: s.horizon.clone(),
        sets: s
            .durations
            .iter()
            .map(|(links, d)| SetEntry {
                links: links.clone(),
                duration: d.clone(),
            })
            .collect(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsFile {
    points: Vec<(Rational, Rational)>,
}

pub fn parse_points(text: &str) -> Result<Vec<(Rational, Rational)>, FormatError> {
    Ok(parse::<PointsFile>(text)?.points)
}

pub fn points_to_json(points: &[(Rational, Rational)]) -> String {
    render(&PointsFile {
        points: points.to_vec(),
    })
}
