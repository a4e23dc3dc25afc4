//! Finite measured laminations on the hyperbolic plane and earthquakes along
//! them.
//!
//! Sign convention: orient a leaf so that the base vector lies on its left.
//! The far side is then translated by `t·w` towards the leaf's end point.
//! Beyond leaves `L₁, …, L_k` (numbered outward from the base) the map is
//! `T₁ ∘ T₂ ∘ ⋯ ∘ T_k` where `Tᵢ` is the translation along the original
//! `Lᵢ`: the region beyond `L₁` moves by `T₁`, which carries `L₂` along, and
//! conjugating the second translation by `T₁` produces the product above.
//!
//! ```text
//!        base side │ far side
//!                  │  ↑  far side slides towards the end point
//!           ●      │
//!                  ▲ leaf oriented with the base on its left
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyp::{
    frame_distance, BoundaryPoint, Geodesic, HPoint, Isometry, MoebiusTransform, UnitTangent,
    GEOMETRIC_TOL,
};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leaf {
    pub geodesic: Geodesic,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscreteLamination {
    leaves: Vec<Leaf>,
}

impl DiscreteLamination {
    pub fn new(leaves: Vec<Leaf>) -> Result<Self> {
        for (k, leaf) in leaves.iter().enumerate() {
            if !(leaf.weight.is_finite() && leaf.weight > 0.0) {
                return Err(Error::InvalidLamination(format!(
                    "leaf {k} has non-positive weight {}",
                    leaf.weight
                )));
            }
            for (j, other) in leaves[..k].iter().enumerate() {
                if leaf.geodesic.crosses(&other.geodesic) {
                    return Err(Error::InvalidLamination(format!("leaves {j} and {k} cross")));
                }
                if leaf.geodesic.same_line(&other.geodesic, GEOMETRIC_TOL) {
                    return Err(Error::InvalidLamination(format!("leaves {j} and {k} coincide")));
                }
            }
        }
        Ok(Self { leaves })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn total_weight(&self) -> f64 {
        self.leaves.iter().map(|l| l.weight).sum()
    }
}

impl Isometry for DiscreteLamination {
    fn moved_by(&self, m: &MoebiusTransform) -> Self {
        Self {
            leaves: self
                .leaves
                .iter()
                .map(|l| Leaf {
                    geodesic: m.apply(&l.geodesic),
                    weight: l.weight,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicArc {
    p: HPoint,
    q: HPoint,
}

impl GeodesicArc {
    pub fn new(p: HPoint, q: HPoint) -> Result<Self> {
        if p.distance(&q) <= GEOMETRIC_TOL {
            return Err(Error::Range("arc endpoints coincide".into()));
        }
        Ok(Self { p, q })
    }

    pub fn endpoints(&self) -> (HPoint, HPoint) {
        (self.p, self.q)
    }
}

/// An isometry `N` with `N(p) = i` and `N(q) = i·e^D`, `D = d(p, q)`.
fn segment_frame(p: &HPoint, q: &HPoint) -> MoebiusTransform {
    let lift = MoebiusTransform::from_raw(1.0, -p.x(), 0.0, p.y());
    let q1 = lift.apply(q).to_complex();
    let w = (q1 - num_complex::Complex64::i()) / (q1 + num_complex::Complex64::i());
    MoebiusTransform::rotation(-w.arg()).compose(&lift)
}

/// Leaves separating `p` from `q`, ordered from the one nearest `p`.
pub fn separating_leaves<'a>(lam: &'a DiscreteLamination, p: &HPoint, q: &HPoint) -> Result<Vec<&'a Leaf>> {
    let mut hits = Vec::new();
    let n = segment_frame(p, q);
    for leaf in &lam.leaves {
        let sp = leaf.geodesic.side_of(p);
        let sq = leaf.geodesic.side_of(q);
        if sp.abs() <= GEOMETRIC_TOL || sq.abs() <= GEOMETRIC_TOL {
            return Err(Error::EndpointOnLeaf);
        }
        if sp.signum() != sq.signum() {
            let g = n.apply(&leaf.geodesic);
            let a = g.start().to_real().unwrap_or(f64::INFINITY);
            let b = g.end().to_real().unwrap_or(f64::INFINITY);
            hits.push(((-a * b).sqrt(), leaf));
        }
    }
    hits.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(hits.into_iter().map(|(_, l)| l).collect())
}

pub fn transverse_measure(lam: &DiscreteLamination, arc: &GeodesicArc) -> Result<f64> {
    Ok(separating_leaves(lam, &arc.p, &arc.q)?
        .iter()
        .map(|l| l.weight)
        .sum())
}

/// Something with a location in the plane that an earthquake can move.
pub trait Located: Isometry + Clone {
    fn location(&self) -> HPoint;
}

impl Located for HPoint {
    fn location(&self) -> HPoint {
        *self
    }
}

impl Located for UnitTangent {
    fn location(&self) -> HPoint {
        self.basepoint()
    }
}

/// The isometry an earthquake applies at `point`.
pub fn earthquake_isometry(
    lam: &DiscreteLamination,
    t: f64,
    base: &UnitTangent,
    point: &HPoint,
) -> Result<MoebiusTransform> {
    let b = base.basepoint();
    let mut m = MoebiusTransform::IDENTITY;
    for leaf in separating_leaves(lam, &b, point)? {
        let g = if leaf.geodesic.side_of(&b) < 0.0 {
            leaf.geodesic
        } else {
            leaf.geodesic.reversed()
        };
        m = m.compose(&g.translation(t * leaf.weight));
    }
    Ok(m)
}

pub fn earthquake_map<T: Located>(
    lam: &DiscreteLamination,
    t: f64,
    base: &UnitTangent,
    target: &T,
) -> Result<T> {
    let m = earthquake_isometry(lam, t, base, &target.location())?;
    // Untouched targets are returned bit for bit.
    if t == 0.0 || m == MoebiusTransform::IDENTITY {
        return Ok(target.clone());
    }
    Ok(m.apply(target))
}

/// [`earthquake_map`] over many targets, in parallel when enabled.
pub fn earthquake_many<T: Located + Send + Sync>(
    lam: &DiscreteLamination,
    t: f64,
    base: &UnitTangent,
    targets: &[T],
) -> Result<Vec<T>> {
    par::try_map(targets, |x| earthquake_map(lam, t, base, x))
}

/// The lamination after the earthquake: each leaf moves with the region on
/// its base side.
pub fn earthquaked(lam: &DiscreteLamination, t: f64, base: &UnitTangent) -> Result<DiscreteLamination> {
    let b = base.basepoint();
    let mut leaves = Vec::with_capacity(lam.leaves.len());
    for (k, leaf) in lam.leaves.iter().enumerate() {
        let foot = leaf.geodesic.project(&b);
        let others = DiscreteLamination {
            leaves: lam
                .leaves
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, l)| *l)
                .collect(),
        };
        let m = earthquake_isometry(&others, t, base, &foot)?;
        leaves.push(Leaf {
            geodesic: m.apply(&leaf.geodesic),
            weight: leaf.weight,
        });
    }
    Ok(DiscreteLamination { leaves })
}

/// The earthquake in the single unit-weight leaf through `v`.
pub fn geodesic_earthquake<T: Located>(v: &UnitTangent, t: f64, base: &UnitTangent, target: &T) -> Result<T> {
    let lam = DiscreteLamination::new(vec![Leaf {
        geodesic: v.geodesic(),
        weight: 1.0,
    }])?;
    earthquake_map(&lam, t, base, target)
}

/// Nested leaves `(-a, a)` for `a` in `[lo, hi]` with uniform transverse
/// density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformBand {
    pub lo: f64,
    pub hi: f64,
    pub density: f64,
}

impl Default for UniformBand {
    fn default() -> Self {
        Self {
            lo: 1.0,
            hi: 2.0,
            density: 1.0,
        }
    }
}

impl UniformBand {
    pub fn mass(&self) -> f64 {
        self.density * (self.hi - self.lo)
    }
}

/// Splits the band into `n` equal chunks and puts one leaf, carrying the
/// chunk's mass, at the inner edge of each chunk.
pub fn discretize_band(band: &UniformBand, n: usize) -> Result<DiscreteLamination> {
    if n == 0 || !(band.lo > 0.0 && band.hi > band.lo && band.density > 0.0) {
        return Err(Error::InvalidLamination("band needs n >= 1 and 0 < lo < hi".into()));
    }
    let w = band.mass() / n as f64;
    let leaves = (0..n)
        .map(|k| {
            let a = band.lo + (band.hi - band.lo) * k as f64 / n as f64;
            Leaf {
                geodesic: Geodesic::new(BoundaryPoint::from_real(-a), BoundaryPoint::from_real(a))
                    .expect("a > 0"),
                weight: w,
            }
        })
        .collect();
    DiscreteLamination::new(leaves)
}

/// `d(E_t(w), w) / t` for each `t`.
pub fn lipschitz_ratios(
    lam: &DiscreteLamination,
    base: &UnitTangent,
    w: &UnitTangent,
    ts: &[f64],
) -> Result<Vec<f64>> {
    par::try_map(ts, |&t| {
        let moved = earthquake_map(lam, t, base, w)?;
        Ok(frame_distance(&moved, w) / t)
    })
}

/// `d(E_{tv}(w), E_{tv'}(w)) / (t·d(v, v'))` for each `t`.
pub fn stability_ratios(
    v: &UnitTangent,
    v_prime: &UnitTangent,
    base: &UnitTangent,
    w: &UnitTangent,
    ts: &[f64],
) -> Result<Vec<f64>> {
    let dv = frame_distance(v, v_prime);
    par::try_map(ts, |&t| {
        let a = geodesic_earthquake(v, t, base, w)?;
        let b = geodesic_earthquake(v_prime, t, base, w)?;
        Ok(frame_distance(&a, &b) / (t * dv))
    })
}
