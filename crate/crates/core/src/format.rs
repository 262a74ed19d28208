//! JSON encodings of paths and expansions.
//!
//! Bits are written as `0`/`1`. A path is `{"n", "I", "C", "V"}`; an
//! expansion is `{"kind": "vertex"|"edge", "m", "D", "Q"}` plus `"s"` for
//! edge expansions, with `null` in `D` at column `C_m`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::expansion::{EdgeExpansion, Expansion, VertexExpansion};
use crate::path::{Simplex, SimplexPath};

fn to_bits(xs: &[u8]) -> Result<Vec<bool>, String> {
    xs.iter()
        .map(|&x| match x {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(format!("bit must be 0 or 1, got {other}")),
        })
        .collect()
}

fn from_bits(xs: &[bool]) -> Vec<u8> {
    xs.iter().map(|&b| u8::from(b)).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathJson {
    n: usize,
    #[serde(rename = "I")]
    initial: Vec<u8>,
    #[serde(rename = "C")]
    colors: Vec<usize>,
    #[serde(rename = "V")]
    values: Vec<u8>,
}

impl Serialize for SimplexPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PathJson {
            n: self.dim(),
            initial: from_bits(self.initial().bits()),
            colors: self.colors().to_vec(),
            values: from_bits(self.values()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplexPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PathJson::deserialize(d)?;
        let initial = Simplex::from_bits(to_bits(&j.initial).map_err(D::Error::custom)?);
        let values = to_bits(&j.values).map_err(D::Error::custom)?;
        SimplexPath::new(j.n, initial, j.colors, values).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Vertex,
    Edge,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionJson {
    kind: Kind,
    m: usize,
    #[serde(rename = "D")]
    d: Vec<Option<u8>>,
    #[serde(rename = "Q")]
    q: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
}

impl Serialize for Expansion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let j = match self {
            Expansion::Vertex(e) => ExpansionJson {
                kind: Kind::Vertex,
                m: e.m,
                d: e.d.iter().map(|&b| Some(u8::from(b))).collect(),
                q: e.q.clone(),
                s: None,
            },
            Expansion::Edge(e) => ExpansionJson {
                kind: Kind::Edge,
                m: e.m,
                d: e.d.iter().map(|b| b.map(u8::from)).collect(),
                q: e.q.clone(),
                s: Some(e.s),
            },
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ExpansionJson::deserialize(d)?;
        let bit = |x: u8| to_bits(&[x]).map(|v| v[0]).map_err(D::Error::custom);
        match j.kind {
            Kind::Vertex => {
                if j.s.is_some() {
                    return Err(D::Error::custom("vertex expansions take no split s"));
                }
                let d =
                    j.d.iter()
                        .map(|x| {
                            x.ok_or_else(|| D::Error::custom("vertex expansion D has a blank"))
                                .and_then(bit)
                        })
                        .collect::<Result<_, _>>()?;
                Ok(Expansion::Vertex(VertexExpansion { m: j.m, d, q: j.q }))
            }
            Kind::Edge => {
                let s = j.s.ok_or_else(|| D::Error::missing_field("s"))?;
                let d = j.d.iter().map(|x| x.map(bit).transpose()).collect::<Result<_, _>>()?;
                Ok(Expansion::Edge(EdgeExpansion { m: j.m, d, q: j.q, s }))
            }
        }
    }
}
