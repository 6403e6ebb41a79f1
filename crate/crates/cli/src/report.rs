//! JSON report documents. Every exact number is a `"p/q"` string.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use stringy_core::Polytope;

pub const SCHEMA_VERSION: u32 = 1;

pub fn q(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn qi(x: &BigInt) -> String {
    format!("{x}/1")
}

/// Inverse of [`q`]; also accepts plain integers.
pub fn parse_q(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

pub fn qvec(v: &[BigRational]) -> Vec<String> {
    v.iter().map(q).collect()
}

pub fn qivec(v: &[BigInt]) -> Vec<String> {
    v.iter().map(qi).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeDoc {
    pub fn of(p: &Polytope) -> PolytopeDoc {
        PolytopeDoc {
            dim: p.dim(),
            ambient_dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| qvec(v.coords())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub verdict: String,
    pub fine_interior_dim: Option<usize>,
    pub translation: Option<Vec<String>>,
    pub almost_pseudoreflexive: bool,
    pub pseudoreflexive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineDoc {
    /// `None` when the Fine interior is empty.
    pub interior: Option<PolytopeDoc>,
    pub support: Vec<Vec<String>>,
    pub canonical_hull: Option<PolytopeDoc>,
    pub translation: Option<Vec<String>>,
    pub cut_set_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDoc {
    pub translation: Vec<String>,
    pub verdict: String,
    pub dual: PolytopeDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTermDoc {
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub volume: String,
    pub cone_volume: String,
    pub contribution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub formula: String,
    pub value: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstrDoc {
    pub verdict: String,
    pub translation: Vec<String>,
    pub e_str: String,
    pub integer: bool,
    pub denominator: String,
    pub faces: Vec<FaceTermDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EfunDoc {
    pub translation: Vec<String>,
    /// Coefficients from degree 0 upwards.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub polynomial: bool,
    pub symmetric: bool,
    pub value_at_one: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorDoc {
    pub translation: Vec<String>,
    pub d: usize,
    pub e_str: String,
    pub e_str_dual: String,
    pub sign: i32,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaterializedDoc {
    pub verdict: String,
    pub e_str_delta: String,
    pub e_str_dual: String,
    pub agrees_with_closed_forms: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsDoc {
    pub a: u64,
    pub b: u64,
    pub l: u64,
    pub d: usize,
    pub e_str_x: String,
    pub e_str_xvee: String,
    pub aggregate: String,
    pub x_integer: bool,
    pub xvee_integer: bool,
    pub x_in_b_lattice: bool,
    pub xvee_in_a_lattice: bool,
    pub mirror_pass: bool,
    pub materialized: Option<MaterializedDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
    pub exit_code: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Body {
    Classify(ClassifyDoc),
    Fine(FineDoc),
    Dual(DualDoc),
    Estr(EstrDoc),
    Efun(EfunDoc),
    Mirror(MirrorDoc),
    Wps(WpsDoc),
    Error(ErrorDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    pub name: Option<String>,
    #[serde(flatten)]
    pub body: Body,
}

impl Document {
    pub fn new(name: Option<String>, body: Body) -> Document {
        Document { schema: SCHEMA_VERSION, name, body }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Document> {
        serde_json::from_str(s)
    }
}
