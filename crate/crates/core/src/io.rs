//! JSON forms of complexes and sweeping orders.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{format_scalar, parse_scalar, CircleMode, DirectionCircle, Scalar, Vector};
use crate::sweep::{SweepEntry, SweepingOrder};

#[derive(Debug, Serialize, Deserialize)]
struct ComplexFile {
    dimension: usize,
    vertices: Vec<Vec<Value>>,
    #[serde(default)]
    maximal_simplices: Vec<Vec<usize>>,
}

fn scalar_from_json(value: &Value) -> Result<Scalar> {
    match value {
        Value::String(text) => parse_scalar(text),
        Value::Number(n) => parse_scalar(&n.to_string()),
        other => Err(Error::InvalidInput(format!("coordinate {other} is neither a number nor a string"))),
    }
}

fn vector_from_json(values: &[Value]) -> Result<Vector> {
    Ok(Vector::new(values.iter().map(scalar_from_json).collect::<Result<_>>()?))
}

fn vector_to_json(v: &Vector) -> Vec<String> {
    v.coords().iter().map(format_scalar).collect()
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed complex JSON: {e}")))?;
    let vertices = file
        .vertices
        .iter()
        .map(|coords| vector_from_json(coords))
        .collect::<Result<Vec<_>>>()?;
    let maximal = file
        .maximal_simplices
        .into_iter()
        .map(Simplex::try_new)
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_maximal(file.dimension, vertices, &maximal)
}

/// Pretty-printed, with coordinates as canonical rational strings.
pub fn complex_to_json(k: &SimplicialComplex) -> String {
    let file = ComplexFile {
        dimension: k.ambient_dim(),
        vertices: k
            .vertices()
            .iter()
            .map(|v| vector_to_json(v).into_iter().map(Value::String).collect())
            .collect(),
        maximal_simplices: k.maximal_simplices().iter().map(|s| s.ids().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("complex serializes")
}

#[derive(Debug, Serialize, Deserialize)]
struct CircleJson {
    u: Vec<Value>,
    w: Vec<Value>,
    mode: CircleMode,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryJson {
    simplex: Vec<usize>,
    direction: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    circle: Option<CircleJson>,
}

fn strings(v: &Vector) -> Vec<Value> {
    vector_to_json(v).into_iter().map(Value::String).collect()
}

pub fn sweeping_order_to_json(order: &SweepingOrder) -> String {
    let entries: Vec<EntryJson> = order
        .entries
        .iter()
        .map(|e| EntryJson {
            simplex: e.simplex.ids().to_vec(),
            direction: strings(&e.direction),
            circle: e.circle.as_ref().map(|c| CircleJson {
                u: strings(c.u()),
                w: strings(c.w()),
                mode: c.mode(),
            }),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("order serializes")
}

/// Reads an order for the simplices of `k`; circles are anchored at each
/// simplex's first vertex.
pub fn sweeping_order_from_json(text: &str, k: &SimplicialComplex) -> Result<SweepingOrder> {
    let entries: Vec<EntryJson> =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed sweeping order JSON: {e}")))?;
    let mut out = Vec::with_capacity(entries.len());
    let mut dim = None;
    for e in entries {
        let simplex = Simplex::try_new(e.simplex)?;
        if let Some(&bad) = simplex.ids().iter().find(|&&id| id >= k.vertices().len()) {
            return Err(Error::InvalidInput(format!("vertex id {bad} out of range in {simplex}")));
        }
        if *dim.get_or_insert(simplex.dim()) != simplex.dim() {
            return Err(Error::InvalidInput("sweeping order mixes dimensions".into()));
        }
        let circle = match e.circle {
            Some(c) => Some(DirectionCircle::new(
                k.vertex(simplex.ids()[0]).clone(),
                vector_from_json(&c.u)?,
                vector_from_json(&c.w)?,
                c.mode,
            )?),
            None => None,
        };
        out.push(SweepEntry {
            direction: vector_from_json(&e.direction)?,
            simplex,
            circle,
        });
    }
    Ok(SweepingOrder {
        dim: dim.unwrap_or(0),
        entries: out,
    })
}
