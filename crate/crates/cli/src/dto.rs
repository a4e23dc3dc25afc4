//! JSON input and output shapes, and their conversion to library types.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use eqlab::hyp::{BoundaryPoint, Geodesic, HPoint, UnitTangent};
use eqlab::lamination::{DiscreteLamination, Leaf};
use eqlab::surface::{FNSurface, Gluing, PantsId, WeightedMulticurve};
use eqlab::triangle::ShearTriangulation;

use crate::render::RenderSpec;

/// A rejected input, located by JSON pointer.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub pointer: String,
    pub message: String,
}

impl InputError {
    pub fn at(pointer: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schema violation at \"{}\": {}", self.pointer, self.message)
    }
}

fn escape_token(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

pub fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    path.iter()
        .filter_map(|seg| match seg {
            Segment::Seq { index } => Some(format!("/{index}")),
            Segment::Map { key } => Some(format!("/{}", escape_token(key))),
            Segment::Enum { .. } | Segment::Unknown => None,
        })
        .collect()
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let ptr = pointer(e.path());
        let inner = e.into_inner().to_string();
        // serde_json appends its own position; the pointer is enough.
        let msg = inner.split(" at line ").next().unwrap_or(&inner).to_string();
        InputError::at(ptr, msg)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Inf {
    Inf,
}

/// A boundary point: a real number or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Endpoint {
    Real(f64),
    Infinity(Inf),
}

impl Endpoint {
    pub fn to_point(self) -> BoundaryPoint {
        match self {
            Endpoint::Real(x) => BoundaryPoint::from_real(x),
            Endpoint::Infinity(_) => BoundaryPoint::INFINITY,
        }
    }

    pub fn from_point(p: &BoundaryPoint) -> Self {
        match p.to_real() {
            Some(x) => Endpoint::Real(x),
            None => Endpoint::Infinity(Inf::Inf),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafDto {
    pub endpoints: [Endpoint; 2],
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaminationDto {
    pub leaves: Vec<LeafDto>,
}

impl LaminationDto {
    pub fn build(&self, at: &str) -> Result<DiscreteLamination, InputError> {
        let leaves = self
            .leaves
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let g = Geodesic::new(l.endpoints[0].to_point(), l.endpoints[1].to_point())
                    .map_err(|e| InputError::at(format!("{at}/leaves/{k}/endpoints"), e))?;
                Ok(Leaf {
                    geodesic: g,
                    weight: l.weight,
                })
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        DiscreteLamination::new(leaves).map_err(|e| InputError::at(format!("{at}/leaves"), e))
    }

    pub fn from_lamination(lam: &DiscreteLamination) -> Self {
        Self {
            leaves: lam
                .leaves()
                .iter()
                .map(|l| LeafDto {
                    endpoints: [
                        Endpoint::from_point(&l.geodesic.start()),
                        Endpoint::from_point(&l.geodesic.end()),
                    ],
                    weight: l.weight,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDto {
    pub pants: Vec<PantsId>,
    pub gluings: Vec<Gluing>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, f64>,
}

impl SurfaceDto {
    pub fn surface(&self, at: &str) -> Result<FNSurface, InputError> {
        FNSurface::new(self.pants.iter().map(|p| p.id).collect(), self.gluings.clone())
            .map_err(|e| InputError::at(format!("{at}/gluings"), e))
    }

    /// The multicurve given by `weights`, if any.
    pub fn multicurve(&self, at: &str, s: &FNSurface) -> Result<Option<WeightedMulticurve>, InputError> {
        if self.weights.is_empty() {
            return Ok(None);
        }
        let mut w = BTreeMap::new();
        for (key, val) in &self.weights {
            let here = format!("{at}/weights/{}", escape_token(key));
            let g: usize = key
                .parse()
                .map_err(|_| InputError::at(&here, "key must be a gluing index"))?;
            if g >= s.gluings().len() {
                return Err(InputError::at(&here, format!("no gluing {g}")));
            }
            w.insert(g, *val);
        }
        WeightedMulticurve::new(w)
            .map(Some)
            .map_err(|e| InputError::at(format!("{at}/weights"), e))
    }

    pub fn from_surface(s: &FNSurface, mc: Option<&WeightedMulticurve>) -> Self {
        Self {
            pants: s.pants().iter().map(|id| PantsId { id: *id }).collect(),
            gluings: s.gluings().to_vec(),
            weights: mc
                .map(|m| m.weights.iter().map(|(g, w)| (g.to_string(), *w)).collect())
                .unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DevelopConfig {
    pub triangulation: ShearTriangulation,
    #[serde(default)]
    pub words: Vec<Vec<usize>>,
    #[serde(default)]
    pub lamination: Option<LaminationDto>,
    #[serde(default)]
    pub render: Option<RenderSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDto {
    pub matrix: [f64; 4],
    pub order_key: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpiralDto {
    pub surface: SurfaceDto,
    pub gluing: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportConfig {
    #[serde(default)]
    pub factors: Option<Vec<FactorDto>>,
    #[serde(default)]
    pub tail_mass: f64,
    #[serde(default)]
    pub spiral: Option<SpiralDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDto {
    pub point: [f64; 2],
    #[serde(default)]
    pub angle: f64,
}

impl BaseDto {
    pub fn tangent(&self, at: &str) -> Result<UnitTangent, InputError> {
        let p = HPoint::new(self.point[0], self.point[1]).map_err(|e| InputError::at(format!("{at}/point"), e))?;
        Ok(UnitTangent::at(&p, self.angle))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EarthquakeConfig {
    #[serde(default)]
    pub lamination: Option<LaminationDto>,
    #[serde(default)]
    pub base: Option<BaseDto>,
    #[serde(default)]
    pub points: Vec<[f64; 2]>,
    #[serde(default)]
    pub surface: Option<SurfaceDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PantsReport {
    pub shears: [f64; 3],
    pub lengths: [f64; 3],
    pub traces: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PantsSampleReport {
    pub seed: u64,
    pub samples: Vec<PantsReport>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlacementDto {
    pub word: Vec<usize>,
    pub triangle: u32,
    pub vertices: [Endpoint; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DevelopReport {
    pub placements: Vec<PlacementDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductReport {
    pub value: [f64; 4],
    pub error_bound: f64,
    pub retained: usize,
    pub dropped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpiralReport {
    pub shear: f64,
    pub error_bound: f64,
    pub factors: usize,
    pub depth_budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EarthquakeReport {
    pub t: f64,
    pub images: Vec<[f64; 2]>,
    pub lamination: LaminationDto,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointers_locate_errors() {
        let e = parse::<LaminationDto>(r#"{"leaves": [{"endpoints": [0, "inf"], "weight": 1}, {"endpoints": [1, 2], "weight": "x"}]}"#)
            .unwrap_err();
        assert_eq!(e.pointer, "/leaves/1/weight");
        let e = parse::<SurfaceDto>(r#"{"pants": [{"id": 0}], "gluings": [], "extra": 1}"#).unwrap_err();
        assert!(e.message.contains("extra"));
    }

    #[test]
    fn endpoints_accept_inf() {
        let l: LaminationDto = parse(r#"{"leaves": [{"endpoints": [0, "inf"], "weight": 2}]}"#).unwrap();
        let lam = l.build("").unwrap();
        assert!(lam.leaves()[0].geodesic.end().is_infinity());
        assert_eq!(LaminationDto::from_lamination(&lam), l);
    }

    #[test]
    fn semantic_errors_have_pointers() {
        let d: SurfaceDto = parse(
            r#"{"pants": [{"id": 0}, {"id": 1}], "gluings": [
              {"cuffs": [[0,0],[1,0]], "length": 1, "twist": 0, "spiral_signs": [1,1]},
              {"cuffs": [[0,1],[1,1]], "length": 1, "twist": 0, "spiral_signs": [1,1]},
              {"cuffs": [[0,2],[1,2]], "length": 1, "twist": 0, "spiral_signs": [1,1]}],
              "weights": {"5": 1.0}}"#,
        )
        .unwrap();
        let s = d.surface("").unwrap();
        assert_eq!(d.multicurve("", &s).unwrap_err().pointer, "/weights/5");
    }
}
