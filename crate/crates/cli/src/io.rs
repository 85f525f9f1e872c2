//! Instance and coloring files.

use anyhow::{Context, Result};
use cfcolor::geometry::{CornerLShape, Frame, GroundedLShape, Instance, Interval, Point, Polyline};
use cfcolor::Hypergraph;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", content = "items", rename_all = "snake_case", deny_unknown_fields)]
enum RawInstance {
    Intervals(Vec<[i64; 2]>),
    GroundedLshapes(Vec<[i64; 3]>),
    CornerLshapes(Vec<[i64; 4]>),
    Frames(Vec<[i64; 4]>),
    Strings(Vec<Vec<[i64; 2]>>),
    Hypergraph(RawHypergraph),
}

pub fn kind_name(inst: &Instance) -> &'static str {
    match inst {
        Instance::Intervals(_) => "intervals",
        Instance::GroundedLShapes(_) => "grounded_lshapes",
        Instance::CornerLShapes(_) => "corner_lshapes",
        Instance::Frames(_) => "frames",
        Instance::Strings(_) => "strings",
        Instance::Hypergraph(_) => "hypergraph",
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).context("malformed instance file")?;
    Ok(match raw {
        RawInstance::Intervals(v) => Instance::Intervals(v.into_iter().map(|[a, b]| Interval::new(a, b)).collect()),
        RawInstance::GroundedLshapes(v) => {
            Instance::GroundedLShapes(v.into_iter().map(|[x, d, w]| GroundedLShape::new(x, d, w)).collect())
        }
        RawInstance::CornerLshapes(v) => {
            Instance::CornerLShapes(v.into_iter().map(|[x, y, h, w]| CornerLShape::new(x, y, h, w)).collect())
        }
        RawInstance::Frames(v) => Instance::Frames(v.into_iter().map(|[a, b, c, d]| Frame::new(a, b, c, d)).collect()),
        RawInstance::Strings(v) => Instance::Strings(
            v.into_iter().map(|p| Polyline::new(p.into_iter().map(|[x, y]| Point::new(x, y)).collect())).collect(),
        ),
        RawInstance::Hypergraph(h) => Instance::Hypergraph(Hypergraph::new(h.n, h.edges).context("invalid hypergraph")?),
    })
}

fn items<T: Serialize>(v: impl Iterator<Item = T>) -> String {
    let rows: Vec<String> = v.map(|x| serde_json::to_string(&x).expect("plain integers")).collect();
    if rows.is_empty() {
        "[]".into()
    } else {
        format!("[\n{}\n]", rows.join(",\n"))
    }
}

/// One item per line, so files stay diffable.
pub fn write_instance(inst: &Instance) -> String {
    let body = match inst {
        Instance::Intervals(v) => items(v.iter().map(|i| [i.a, i.b])),
        Instance::GroundedLShapes(v) => items(v.iter().map(|l| [l.x, l.depth, l.width])),
        Instance::CornerLShapes(v) => items(v.iter().map(|l| [l.x, l.y, l.height, l.width])),
        Instance::Frames(v) => items(v.iter().map(|f| [f.x1, f.y1, f.x2, f.y2])),
        Instance::Strings(v) => items(v.iter().map(|p| p.points.iter().map(|q| [q.x, q.y]).collect::<Vec<_>>())),
        Instance::Hypergraph(h) => format!("{{\"n\":{},\"edges\":{}}}", h.n(), items(h.edges().iter())),
    };
    format!("{{\"kind\":\"{}\",\"items\":{}}}\n", kind_name(inst), body)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringFile {
    pub colors: Vec<usize>,
    pub palette_size: usize,
    pub algo: String,
    pub k: usize,
    pub verified: bool,
}

pub fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_all_kinds() {
        let texts = [
            "{\"kind\":\"intervals\",\"items\":[\n[0,3],\n[1,5]\n]}\n",
            "{\"kind\":\"grounded_lshapes\",\"items\":[\n[0,2,4]\n]}\n",
            "{\"kind\":\"corner_lshapes\",\"items\":[]}\n",
            "{\"kind\":\"frames\",\"items\":[\n[0,0,4,4]\n]}\n",
            "{\"kind\":\"strings\",\"items\":[\n[[0,0],[3,1]]\n]}\n",
            "{\"kind\":\"hypergraph\",\"items\":{\"n\":3,\"edges\":[\n[0,1],\n[1,2]\n]}}\n",
        ];
        for t in texts {
            assert_eq!(write_instance(&parse_instance(t).unwrap()), t);
        }
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_instance("{\"kind\":\"intervals\",\n\"items\":[[0,1,2]]}").unwrap_err();
        assert!(format!("{err:#}").contains("line 2"), "{err:#}");
        assert!(parse_instance("{\"kind\":\"circles\",\"items\":[]}").is_err());
        assert!(parse_instance("{\"kind\":\"hypergraph\",\"items\":{\"n\":2,\"edges\":[[1,0]]}}").is_err());
    }
}
