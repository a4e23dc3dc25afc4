//! Period data `(x, y)`: shear and transverse measure along an arc. Also
//! verifiers that check earthquakes act on it as `(x, y) ↦ (x + t·y, y)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyp::{Isometry, MoebiusTransform, UnitTangent, GEOMETRIC_TOL};
use crate::lamination::{
    earthquake_isometry, earthquaked, transverse_measure, DiscreteLamination, GeodesicArc, Leaf,
};
use crate::par;
use crate::surface::{earthquake_flow, shear_across_cuff, FNSurface, TruncationBudget, WeightedMulticurve};
use crate::transport::{shear_via_transport, TailPolicy, TransportChain};
use crate::triangle::{develop_step, shared_side, IdealTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodVector {
    pub x: f64,
    pub y: f64,
}

impl PeriodVector {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && y >= 0.0) {
            return Err(Error::Range(format!("period ({x}, {y}) needs finite x and y ≥ 0")));
        }
        Ok(Self { x, y })
    }
}

pub fn unipotent(p: PeriodVector, t: f64) -> PeriodVector {
    PeriodVector { x: p.x + t * p.y, y: p.y }
}

/// Consecutive adjacent triangles, with fault leaves among their shared
/// edges.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfiguration {
    triangles: Vec<IdealTriangle>,
    faults: DiscreteLamination,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    /// Shear across each link of the chain.
    pub shears: Vec<f64>,
    /// Fault weight on each link; zero means no fault.
    pub weights: Vec<f64>,
}

fn meets_interior(t: &IdealTriangle, lam: &DiscreteLamination) -> bool {
    lam.leaves()
        .iter()
        .any(|l| (0..3).any(|i| t.side(i).crosses(&l.geodesic)))
}

impl ChainConfiguration {
    pub fn new(triangles: Vec<IdealTriangle>, faults: DiscreteLamination) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        for w in triangles.windows(2) {
            shared_side(&w[0], &w[1], GEOMETRIC_TOL)?;
        }
        for (k, leaf) in faults.leaves().iter().enumerate() {
            let crossed = triangles
                .windows(2)
                .filter(|w| {
                    let (i, _) = shared_side(&w[0], &w[1], GEOMETRIC_TOL).expect("checked");
                    w[0].side(i).same_line(&leaf.geodesic, GEOMETRIC_TOL)
                })
                .count();
            if crossed != 1 {
                return Err(Error::InvalidChain(format!(
                    "fault {k} must be a shared edge crossed exactly once, crossed {crossed} times"
                )));
            }
        }
        if triangles.iter().any(|t| meets_interior(t, &faults)) {
            return Err(Error::InvalidChain("a fault cuts through a chain triangle".into()));
        }
        Ok(Self { triangles, faults })
    }

    /// A zig-zag strip starting at the standard triangle.
    pub fn from_spec(spec: &ChainSpec) -> Result<Self> {
        if spec.shears.len() != spec.weights.len() {
            return Err(Error::InvalidChain("shears and weights differ in length".into()));
        }
        let mut triangles = vec![IdealTriangle::standard()];
        let mut leaves = Vec::new();
        for (k, (s, w)) in spec.shears.iter().zip(&spec.weights).enumerate() {
            let exit = if k == 0 { 0 } else { 1 + (k + 1) % 2 };
            let last = triangles[k];
            if *w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidChain(format!("link {k} has weight {w}")));
            }
            if *w > 0.0 {
                leaves.push(Leaf {
                    geodesic: last.side(exit),
                    weight: *w,
                });
            }
            triangles.push(develop_step(&last, exit, *s)?);
        }
        Self::new(triangles, DiscreteLamination::new(leaves)?)
    }

    pub fn triangles(&self) -> &[IdealTriangle] {
        &self.triangles
    }

    pub fn faults(&self) -> &DiscreteLamination {
        &self.faults
    }

    /// The earthquake base: upward at the centre of the first triangle.
    pub fn base(&self) -> UnitTangent {
        UnitTangent::at(&self.triangles[0].center(), 0.0)
    }

    /// The chain after the earthquake in its faults; triangles move rigidly.
    pub fn earthquaked(&self, t: f64) -> Result<Self> {
        let base = self.base();
        let triangles = self
            .triangles
            .iter()
            .map(|tri| Ok(earthquake_isometry(&self.faults, t, &base, &tri.center())?.apply(tri)))
            .collect::<Result<Vec<_>>>()?;
        let faults = earthquaked(&self.faults, t, &base)?;
        if triangles.iter().any(|tri| meets_interior(tri, &faults)) {
            return Err(Error::Range(format!("t = {t} moves a triangle across a fault")));
        }
        Self::new(triangles, faults)
    }
}

impl Isometry for ChainConfiguration {
    fn moved_by(&self, m: &MoebiusTransform) -> Self {
        Self {
            triangles: self.triangles.iter().map(|t| m.apply(t)).collect(),
            faults: m.apply(&self.faults),
        }
    }
}

pub fn chain_period(c: &ChainConfiguration) -> Result<PeriodVector> {
    let tris = c.triangles();
    let x = if tris.len() < 2 {
        0.0
    } else {
        shear_via_transport(&TransportChain::adjacent(tris.to_vec())?, &TailPolicy::default())?.value
    };
    let arc = GeodesicArc::new(tris[0].center(), tris[tris.len() - 1].center())?;
    let y = transverse_measure(c.faults(), &arc)?;
    PeriodVector::new(x, y)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub measured: [f64; 2],
    pub predicted: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arc: Option<usize>,
}

impl Sample {
    fn new(t: f64, measured: PeriodVector, predicted: PeriodVector, arc: Option<usize>) -> Self {
        Self {
            t,
            measured: [measured.x, measured.y],
            predicted: [predicted.x, predicted.y],
            arc,
        }
    }

    pub fn residual(&self) -> f64 {
        (self.measured[0] - self.predicted[0])
            .abs()
            .max((self.measured[1] - self.predicted[1]).abs())
    }
}

/// Least-squares line `x ≈ intercept + slope·t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest deviation of a sample from the line.
    pub residual: f64,
}

pub fn fit_line(ts: &[f64], xs: &[f64]) -> Option<LinearFit> {
    let n = ts.len() as f64;
    if ts.len() < 2 || ts.len() != xs.len() {
        return None;
    }
    let tm = ts.iter().sum::<f64>() / n;
    let xm = xs.iter().sum::<f64>() / n;
    let stt: f64 = ts.iter().map(|t| (t - tm) * (t - tm)).sum();
    if stt == 0.0 {
        return None;
    }
    let stx: f64 = ts.iter().zip(xs).map(|(t, x)| (t - tm) * (x - xm)).sum();
    let slope = stx / stt;
    let intercept = xm - slope * tm;
    let residual = ts
        .iter()
        .zip(xs)
        .map(|(t, x)| (x - intercept - slope * t).abs())
        .fold(0.0, f64::max);
    Some(LinearFit {
        slope,
        intercept,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub samples: Vec<Sample>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// One fit of `x` against `t` per arc, in arc order.
    #[serde(default)]
    pub fits: Vec<LinearFit>,
}

impl VerificationReport {
    fn assemble(samples: Vec<Sample>, tolerance: f64, fits: Vec<LinearFit>) -> Self {
        let max_residual = samples.iter().map(Sample::residual).fold(0.0, f64::max);
        Self {
            passed: max_residual <= tolerance,
            samples,
            max_residual,
            tolerance,
            fits,
        }
    }
}

fn fit_samples(samples: &[Sample]) -> Option<LinearFit> {
    let ts: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let xs: Vec<f64> = samples.iter().map(|s| s.measured[0]).collect();
    fit_line(&ts, &xs)
}

/// Earthquakes the chain in its faults at each `t` and compares the chain
/// period with the unipotent image of the period at `t = 0`.
pub fn verify_fundamental_lemma(c: &ChainConfiguration, ts: &[f64], tolerance: f64) -> Result<VerificationReport> {
    let p0 = chain_period(c)?;
    let samples = par::try_map(ts, |&t| {
        let measured = chain_period(&c.earthquaked(t)?)?;
        Ok::<_, Error>(Sample::new(t, measured, unipotent(p0, t), None))
    })?;
    let fits = fit_samples(&samples).into_iter().collect();
    Ok(VerificationReport::assemble(samples, tolerance, fits))
}

/// For each cuff-crossing arc (named by its gluing), follows the shear
/// across the cuff along the earthquake flow. The mass is the arc's
/// intersection with the multicurve.
pub fn verify_conjugacy(
    s: &FNSurface,
    mc: &WeightedMulticurve,
    arcs: &[usize],
    ts: &[f64],
    budget: &TruncationBudget,
    tolerance: f64,
) -> Result<VerificationReport> {
    let mut samples = Vec::new();
    let mut fits = Vec::new();
    for &g in arcs {
        if g >= s.gluings().len() {
            return Err(Error::UnsupportedCurve(format!("arc {g} crosses no cuff of the surface")));
        }
        let y = mc.weight(g);
        let p0 = PeriodVector::new(shear_across_cuff(s, g, budget)?.value, y)?;
        let arc_samples = par::try_map(ts, |&t| {
            let moved = earthquake_flow(s, mc, t)?;
            let x = shear_across_cuff(&moved, g, budget)?.value;
            Ok::<_, Error>(Sample::new(t, PeriodVector::new(x, mc.weight(g))?, unipotent(p0, t), Some(g)))
        })?;
        fits.extend(fit_samples(&arc_samples));
        samples.extend(arc_samples);
    }
    Ok(VerificationReport::assemble(samples, tolerance, fits))
}
