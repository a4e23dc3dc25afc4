//! Ideal triangles, shears across shared edges, and developing maps of
//! shear-decorated triangulations.
//!
//! Vertices are listed counterclockwise and side `i` runs from vertex `i` to
//! vertex `i + 1`. A crossing word is a sequence of side indices: each letter
//! names the side of the *current* triangle that is crossed next.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyp::{
    cyclic_orientation, BoundaryPoint, Geodesic, HPoint, Isometry, MoebiusTransform, ALGEBRAIC_TOL,
    GEOMETRIC_TOL,
};

/// Shears beyond this magnitude overflow the tangency arithmetic.
pub const MAX_SHEAR: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealTriangle {
    v: [BoundaryPoint; 3],
}

impl IdealTriangle {
    pub fn new(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint) -> Result<Self> {
        let distinct = a.cross(&b).abs() > ALGEBRAIC_TOL
            && b.cross(&c).abs() > ALGEBRAIC_TOL
            && c.cross(&a).abs() > ALGEBRAIC_TOL;
        if !distinct || cyclic_orientation(&a, &b, &c) <= 0.0 {
            return Err(Error::InvalidTriangle);
        }
        Ok(Self { v: [a, b, c] })
    }

    /// Convenience constructor; infinite values denote `∞`.
    pub fn from_reals(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(
            BoundaryPoint::from_real(a),
            BoundaryPoint::from_real(b),
            BoundaryPoint::from_real(c),
        )
    }

    /// The triangle `(-1, 0, ∞)` used as the developing root.
    pub fn standard() -> Self {
        Self::from_reals(-1.0, 0.0, f64::INFINITY).expect("standard triangle is counterclockwise")
    }

    pub fn vertices(&self) -> [BoundaryPoint; 3] {
        self.v
    }

    pub fn vertex(&self, i: usize) -> BoundaryPoint {
        self.v[i % 3]
    }

    /// Side `i`, oriented from vertex `i` to vertex `i + 1`.
    pub fn side(&self, i: usize) -> Geodesic {
        Geodesic::new(self.vertex(i), self.vertex(i + 1)).expect("vertices are distinct")
    }

    /// The transform sending `(0, ∞, -1)` to `(v_i, v_{i+1}, v_{i+2})`.
    pub fn side_frame(&self, i: usize) -> MoebiusTransform {
        let (z1, z2, z3) = (self.vertex(i), self.vertex(i + 1), self.vertex(i + 2));
        let c21 = z2.cross(&z1);
        let alpha = -z3.cross(&z1) / c21;
        let beta = z2.cross(&z3) / c21;
        let (p1, q1) = z1.components();
        let (p2, q2) = z2.components();
        MoebiusTransform::from_raw(alpha * p2, beta * p1, alpha * q2, beta * q1)
    }

    /// Foot of the perpendicular from the opposite vertex onto side `i`.
    pub fn tangency_point(&self, i: usize) -> HPoint {
        self.side_frame(i).apply(&HPoint::I)
    }

    /// The point equidistant from the three sides.
    pub fn center(&self) -> HPoint {
        let c = HPoint::new(-0.5, 0.75f64.sqrt()).expect("upper half-plane");
        self.side_frame(0).apply(&c)
    }

    /// Index of the side whose geodesic is `g` (either orientation).
    pub fn side_matching(&self, g: &Geodesic, tol: f64) -> Option<usize> {
        (0..3).find(|&i| self.side(i).same_line(g, tol))
    }

    /// Same triangle with vertex `k` moved to position 0.
    pub fn rotated(&self, k: usize) -> Self {
        Self {
            v: [self.vertex(k), self.vertex(k + 1), self.vertex(k + 2)],
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.v
            .iter()
            .zip(other.v.iter())
            .all(|(a, b)| a.approx_eq(b, tol))
    }
}

impl Isometry for IdealTriangle {
    fn moved_by(&self, m: &MoebiusTransform) -> Self {
        Self {
            v: self.v.map(|p| m.apply(&p)),
        }
    }
}

pub fn edge_tangency_point(t: &IdealTriangle, side: usize) -> HPoint {
    t.tangency_point(side)
}

/// Locates the shared edge: side `i` of `t1` equals side `j` of `t2` with the
/// opposite orientation.
pub fn shared_side(t1: &IdealTriangle, t2: &IdealTriangle, tol: f64) -> Result<(usize, usize)> {
    let mut found = None;
    for i in 0..3 {
        for j in 0..3 {
            let same = t1.vertex(i).approx_eq(&t2.vertex(j + 1), tol)
                && t1.vertex(i + 1).approx_eq(&t2.vertex(j), tol);
            if same {
                if found.is_some() {
                    return Err(Error::NotAdjacent);
                }
                found = Some((i, j));
            }
        }
    }
    found.ok_or(Error::NotAdjacent)
}

/// Signed distance from the tangency point of `t1` to that of `t2` along the
/// shared edge. Positive when, seen from `t1`, the far vertex of `t2` sits at
/// `e^s > 0` in the normalization `t1 = (0, ∞, -1)`. The value does not
/// depend on the order of the arguments.
pub fn shear_between_adjacent(t1: &IdealTriangle, t2: &IdealTriangle) -> Result<f64> {
    let (i, j) = shared_side(t1, t2, GEOMETRIC_TOL)?;
    let far = t1.side_frame(i).inverse().apply(&t2.vertex(j + 2));
    match far.to_real() {
        Some(x) if x > 0.0 => Ok(x.ln()),
        _ => Err(Error::NotAdjacent),
    }
}

/// The triangle across side `side` of `placed` with the given shear. Its
/// side 0 is the shared edge, so in the normalized model the result is
/// `(∞, 0, e^s)`.
pub fn develop_step(placed: &IdealTriangle, side: usize, shear: f64) -> Result<IdealTriangle> {
    check_shear(shear)?;
    let m = placed.side_frame(side);
    Ok(IdealTriangle {
        v: [
            placed.vertex(side + 1),
            placed.vertex(side),
            m.apply(&BoundaryPoint::from_real(shear.exp())),
        ],
    })
}

fn check_shear(s: f64) -> Result<()> {
    if !(s.abs() <= MAX_SHEAR) {
        return Err(Error::ShearOutOfRange {
            value: s,
            limit: MAX_SHEAR,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: u32,
    /// `(triangle id, side index)` for both sides of the edge.
    pub sides: [(u32, usize); 2],
    pub shear: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTriangulation", into = "RawTriangulation")]
pub struct ShearTriangulation {
    triangles: Vec<u32>,
    edges: Vec<Edge>,
    // (triangle index, side) -> (edge index, which end)
    #[serde(skip)]
    incidence: HashMap<(usize, usize), (usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriangulation {
    triangles: Vec<u32>,
    edges: Vec<Edge>,
}

impl TryFrom<RawTriangulation> for ShearTriangulation {
    type Error = Error;

    fn try_from(raw: RawTriangulation) -> Result<Self> {
        ShearTriangulation::new(raw.triangles, raw.edges)
    }
}

impl From<ShearTriangulation> for RawTriangulation {
    fn from(s: ShearTriangulation) -> Self {
        RawTriangulation {
            triangles: s.triangles,
            edges: s.edges,
        }
    }
}

/// Where a crossing lands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub edge: usize,
    pub to_triangle: usize,
    pub to_side: usize,
    pub shear: f64,
}

impl ShearTriangulation {
    pub fn new(triangles: Vec<u32>, edges: Vec<Edge>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        if triangles.is_empty() {
            return bad("no triangles".into());
        }
        let mut index = HashMap::new();
        for (k, id) in triangles.iter().enumerate() {
            if index.insert(*id, k).is_some() {
                return bad(format!("duplicate triangle id {id}"));
            }
        }
        let mut ids = HashMap::new();
        let mut incidence = HashMap::new();
        for (e, edge) in edges.iter().enumerate() {
            if ids.insert(edge.id, e).is_some() {
                return bad(format!("duplicate edge id {}", edge.id));
            }
            check_shear(edge.shear)?;
            for (end, (tri, side)) in edge.sides.iter().enumerate() {
                let Some(&t) = index.get(tri) else {
                    return bad(format!("edge {} references unknown triangle {tri}", edge.id));
                };
                if *side > 2 {
                    return bad(format!("edge {} uses side {side} > 2", edge.id));
                }
                if incidence.insert((t, *side), (e, end)).is_some() {
                    return bad(format!("side ({tri}, {side}) is glued twice"));
                }
            }
        }
        for (k, id) in triangles.iter().enumerate() {
            for side in 0..3 {
                if !incidence.contains_key(&(k, side)) {
                    return bad(format!("side ({id}, {side}) is not glued"));
                }
            }
        }
        let s = Self {
            triangles,
            edges,
            incidence,
        };
        if !s.is_connected() {
            return bad("incidence structure is disconnected".into());
        }
        Ok(s)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.triangles.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for side in 0..3 {
                let c = self.cross(t, side);
                if !seen[c.to_triangle] {
                    seen[c.to_triangle] = true;
                    queue.push_back(c.to_triangle);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn triangles(&self) -> &[u32] {
        &self.triangles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangle_index(&self, id: u32) -> Option<usize> {
        self.triangles.iter().position(|t| *t == id)
    }

    /// Crossing side `side` of the triangle with index `tri`.
    pub fn cross(&self, tri: usize, side: usize) -> Crossing {
        let (e, end) = self.incidence[&(tri, side)];
        let (to_id, to_side) = self.edges[e].sides[1 - end];
        Crossing {
            edge: e,
            to_triangle: self.triangle_index(to_id).expect("validated"),
            to_side,
            shear: self.edges[e].shear,
        }
    }

    /// Same combinatorics with replaced shears (indexed like `edges`).
    pub fn with_shears(&self, shears: &[f64]) -> Result<Self> {
        if shears.len() != self.edges.len() {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} shears, got {}",
                self.edges.len(),
                shears.len()
            )));
        }
        let edges = self
            .edges
            .iter()
            .zip(shears)
            .map(|(e, s)| Edge { shear: *s, ..e.clone() })
            .collect();
        Self::new(self.triangles.clone(), edges)
    }

    /// Cancels immediate back-crossings. Returns the reduced word and the
    /// index of the triangle it ends in.
    pub fn reduce(&self, word: &[usize]) -> Result<(Vec<usize>, usize)> {
        // Each stack entry: (letter, triangle crossed into, side arrived through).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        let mut current = 0usize;
        for (pos, &letter) in word.iter().enumerate() {
            if letter > 2 {
                return Err(Error::InvalidWord(format!(
                    "letter {letter} at position {pos} is not a side index"
                )));
            }
            if let Some(&(_, _, arrived)) = stack.last() {
                if arrived == letter {
                    stack.pop();
                    current = stack.last().map_or(0, |e| e.1);
                    continue;
                }
            }
            let c = self.cross(current, letter);
            stack.push((letter, c.to_triangle, c.to_side));
            current = c.to_triangle;
        }
        Ok((stack.into_iter().map(|e| e.0).collect(), current))
    }

    /// Develops every letter of `word` without reduction, starting at `root`.
    pub fn walk_literal(&self, root: &IdealTriangle, word: &[usize]) -> Result<(usize, IdealTriangle)> {
        let mut tri = 0usize;
        let mut placed = *root;
        for (pos, &letter) in word.iter().enumerate() {
            if letter > 2 {
                return Err(Error::InvalidWord(format!(
                    "letter {letter} at position {pos} is not a side index"
                )));
            }
            let c = self.cross(tri, letter);
            placed = place_across(&placed, letter, c.to_side, c.shear)?;
            tri = c.to_triangle;
        }
        Ok((tri, placed))
    }
}

/// Develops across `side` and relabels so the result's side `to_side` is the
/// shared edge, matching the abstract triangle's vertex labels.
fn place_across(
    placed: &IdealTriangle,
    side: usize,
    to_side: usize,
    shear: f64,
) -> Result<IdealTriangle> {
    let step = develop_step(placed, side, shear)?;
    let mut v = [step.v[0]; 3];
    for m in 0..3 {
        v[(to_side + m) % 3] = step.v[m];
    }
    Ok(IdealTriangle { v })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    /// Index of the abstract triangle in the triangulation.
    pub triangle: usize,
    pub placed: IdealTriangle,
}

/// Placements of developed triangles keyed by reduced crossing word.
#[derive(Debug, Clone)]
pub struct DevelopedComplex {
    root: IdealTriangle,
    cache: BTreeMap<Vec<usize>, Placement>,
    requested: Vec<(Vec<usize>, Placement)>,
}

impl DevelopedComplex {
    pub fn root(&self) -> &IdealTriangle {
        &self.root
    }

    /// The placements for the requested words, in request order.
    pub fn placements(&self) -> &[(Vec<usize>, Placement)] {
        &self.requested
    }

    pub fn get(&self, reduced: &[usize]) -> Option<&Placement> {
        self.cache.get(reduced)
    }
}

pub fn develop(s: &ShearTriangulation, words: &[Vec<usize>]) -> Result<DevelopedComplex> {
    develop_from(s, &IdealTriangle::standard(), words)
}

/// Develops with the root triangle placed at `root` instead of `(-1, 0, ∞)`.
pub fn develop_from(
    s: &ShearTriangulation,
    root: &IdealTriangle,
    words: &[Vec<usize>],
) -> Result<DevelopedComplex> {
    let mut cache = BTreeMap::new();
    cache.insert(
        Vec::new(),
        Placement {
            triangle: 0,
            placed: *root,
        },
    );
    let mut requested = Vec::with_capacity(words.len());
    for word in words {
        let (reduced, _) = s.reduce(word)?;
        let placement = place_cached(s, &mut cache, &reduced)?;
        requested.push((word.clone(), placement));
    }
    Ok(DevelopedComplex {
        root: *root,
        cache,
        requested,
    })
}

fn place_cached(
    s: &ShearTriangulation,
    cache: &mut BTreeMap<Vec<usize>, Placement>,
    reduced: &[usize],
) -> Result<Placement> {
    let known = (0..=reduced.len())
        .rev()
        .find(|&k| cache.contains_key(&reduced[..k]))
        .expect("empty word is always cached");
    let mut p = cache[&reduced[..known]];
    for k in known..reduced.len() {
        let letter = reduced[k];
        let c = s.cross(p.triangle, letter);
        p = Placement {
            triangle: c.to_triangle,
            placed: place_across(&p.placed, letter, c.to_side, c.shear)?,
        };
        cache.insert(reduced[..=k].to_vec(), p);
    }
    Ok(p)
}

/// The isometry carrying the root placement to the placement reached by the
/// closed word `loop_word`.
pub fn holonomy(s: &ShearTriangulation, loop_word: &[usize]) -> Result<MoebiusTransform> {
    let root = IdealTriangle::standard();
    let dev = develop_from(s, &root, &[loop_word.to_vec()])?;
    let end = dev.placements()[0].1;
    if end.triangle != 0 {
        return Err(Error::InvalidWord(
            "loop does not return to the root triangle".into(),
        ));
    }
    Ok(end.placed.side_frame(0).compose(&root.side_frame(0).inverse()))
}

/// Boundary loops of the two-triangle pants, one per cuff slot. Slot `k`
/// circles the puncture at vertex `(k + 1) mod 3` of triangle 0 and has
/// length `|s_{k+1} + s_{k+2}|` (shears indexed from 1, cyclically).
pub const PANTS_BOUNDARY_WORDS: [[usize; 2]; 3] = [[0, 1], [1, 0], [2, 2]];

/// Two ideal triangles `A = 0`, `B = 1` glued along three edges carrying
/// shears `s1, s2, s3`: `A0–B2`, `A1–B1`, `A2–B0`.
pub fn two_triangle_pants(s1: f64, s2: f64, s3: f64) -> Result<ShearTriangulation> {
    ShearTriangulation::new(
        vec![0, 1],
        vec![
            Edge {
                id: 0,
                sides: [(0, 0), (1, 2)],
                shear: s1,
            },
            Edge {
                id: 1,
                sides: [(0, 1), (1, 1)],
                shear: s2,
            },
            Edge {
                id: 2,
                sides: [(0, 2), (1, 0)],
                shear: s3,
            },
        ],
    )
}

pub fn pants_boundary_holonomies(s1: f64, s2: f64, s3: f64) -> Result<[MoebiusTransform; 3]> {
    let pants = two_triangle_pants(s1, s2, s3)?;
    let mut out = [MoebiusTransform::IDENTITY; 3];
    for (k, w) in PANTS_BOUNDARY_WORDS.iter().enumerate() {
        out[k] = holonomy(&pants, w)?;
    }
    Ok(out)
}

pub fn pants_boundary_lengths(s1: f64, s2: f64, s3: f64) -> [f64; 3] {
    [(s1 + s2).abs(), (s2 + s3).abs(), (s3 + s1).abs()]
}

/// Inverts [`pants_boundary_lengths`]: solves `s1 + s2 = σ1ℓ1`,
/// `s2 + s3 = σ2ℓ2`, `s3 + s1 = σ3ℓ3`.
pub fn shears_from_cuffs(lengths: [f64; 3], signs: [i8; 3]) -> [f64; 3] {
    let [a, b, c] = [0, 1, 2].map(|k| f64::from(signs[k].signum()) * lengths[k]);
    [0.5 * (a - b + c), 0.5 * (a + b - c), 0.5 * (-a + b + c)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn orientation_is_validated() {
        assert!(IdealTriangle::from_reals(-1.0, 0.0, INF).is_ok());
        assert!(IdealTriangle::from_reals(0.0, -1.0, INF).is_err());
        assert!(IdealTriangle::from_reals(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn side_frame_maps_reference_triple() {
        let t = IdealTriangle::from_reals(-2.0, 0.5, 3.0).unwrap();
        for i in 0..3 {
            let f = t.side_frame(i);
            assert!(f.apply(&BoundaryPoint::from_real(0.0)).approx_eq(&t.vertex(i), 1e-12));
            assert!(f.apply(&BoundaryPoint::INFINITY).approx_eq(&t.vertex(i + 1), 1e-12));
            assert!(f.apply(&BoundaryPoint::from_real(-1.0)).approx_eq(&t.vertex(i + 2), 1e-12));
        }
    }

    #[test]
    fn tangency_examples() {
        let t = IdealTriangle::standard();
        assert!(t.tangency_point(1).approx_eq(&HPoint::I, 1e-15));
        // (∞, 0, x) for x < 0 is (0, ∞, x) read counterclockwise from 0.
        for x in [-0.3, -2.0, -7.5] {
            let t = IdealTriangle::from_reals(0.0, INF, x).unwrap();
            let p = t.tangency_point(0);
            assert!(p.approx_eq(&HPoint::new(0.0, x.abs()).unwrap(), 1e-13));
        }
    }

    #[test]
    fn tangency_is_perpendicular_foot() {
        // Oracle: the foot from the opposite vertex is where the geodesic
        // through that vertex meets the side at a right angle, so the foot
        // is the projection of every point on that perpendicular.
        let t = IdealTriangle::from_reals(-1.5, 0.2, 4.0).unwrap();
        for i in 0..3 {
            let foot = t.tangency_point(i);
            let side = t.side(i);
            assert!(side.contains(&foot, 1e-12));
            let f = side.frame();
            let opp = f.inverse().apply(&t.vertex(i + 2)).to_real().unwrap();
            let expected = f.apply(&HPoint::new(0.0, opp.abs()).unwrap());
            assert!(foot.approx_eq(&expected, 1e-12));
        }
    }

    #[test]
    fn shear_examples() {
        let t1 = IdealTriangle::standard();
        let t2 = IdealTriangle::from_reals(INF, 0.0, 1.0).unwrap();
        assert!(shear_between_adjacent(&t1, &t2).unwrap().abs() < 1e-15);
        for s in [-2.0f64, 0.4, 3.0] {
            let t2 = IdealTriangle::from_reals(INF, 0.0, s.exp()).unwrap();
            assert!((shear_between_adjacent(&t1, &t2).unwrap() - s).abs() < 1e-14);
            // Independent check: signed distance between tangency points i and i·e^s.
            let p = t2.tangency_point(0);
            assert!((p.y().ln() - s).abs() < 1e-14);
        }
    }

    #[test]
    fn non_adjacent_is_rejected() {
        let t1 = IdealTriangle::standard();
        let t2 = IdealTriangle::from_reals(1.0, 2.0, 3.0).unwrap();
        assert_eq!(shear_between_adjacent(&t1, &t2), Err(Error::NotAdjacent));
    }

    #[test]
    fn develop_step_examples() {
        let t = IdealTriangle::standard();
        let zero = develop_step(&t, 1, 0.0).unwrap();
        assert!(zero.approx_eq(&IdealTriangle::from_reals(INF, 0.0, 1.0).unwrap(), 1e-15));
        let ln2 = develop_step(&t, 1, 2f64.ln()).unwrap();
        assert!(ln2.vertex(2).approx_eq(&BoundaryPoint::from_real(2.0), 1e-15));
        assert!(matches!(
            develop_step(&t, 0, 31.0),
            Err(Error::ShearOutOfRange { .. })
        ));
    }

    #[test]
    fn triangulation_validation() {
        let mut edges = two_triangle_pants(0.1, 0.2, 0.3).unwrap().edges().to_vec();
        edges[2].sides[1] = (1, 2);
        assert!(ShearTriangulation::new(vec![0, 1], edges.clone()).is_err());
        edges.pop();
        assert!(ShearTriangulation::new(vec![0, 1], edges).is_err());
        let json = r#"{"triangles":[0,1],"edges":[{"id":0,"sides":[[0,0],[1,2]],"shear":0.5},
            {"id":1,"sides":[[0,1],[1,1]],"shear":0.0},{"id":2,"sides":[[0,2],[1,0]],"shear":-1.0}]}"#;
        let s: ShearTriangulation = serde_json::from_str(json).unwrap();
        assert_eq!(s.edges()[0].shear, 0.5);
    }

    #[test]
    fn develop_examples() {
        let s = two_triangle_pants(0.3, -0.2, 1.1).unwrap();
        let d = develop(&s, &[vec![], vec![1]]).unwrap();
        assert!(d.placements()[0].1.placed.approx_eq(&IdealTriangle::standard(), 0.0));
        let one = d.placements()[1].1;
        assert_eq!(one.triangle, 1);
        // A1 is glued to B1: relabelled develop_step with shear s2.
        let step = develop_step(&IdealTriangle::standard(), 1, -0.2).unwrap();
        assert!(one.placed.side(1).same_line(&step.side(0), 1e-14));
        assert!((shear_between_adjacent(&IdealTriangle::standard(), &one.placed).unwrap() + 0.2).abs() < 1e-13);
        assert!(matches!(develop(&s, &[vec![3]]), Err(Error::InvalidWord(_))));
    }

    #[test]
    fn reduction_cancels_back_crossings() {
        let s = two_triangle_pants(0.3, -0.2, 1.1).unwrap();
        assert_eq!(s.reduce(&[0, 2]).unwrap(), (vec![], 0));
        assert_eq!(s.reduce(&[0, 1, 1, 0]).unwrap(), (vec![0, 0], 0));
        let boundary: Vec<usize> = PANTS_BOUNDARY_WORDS.iter().flatten().copied().collect();
        assert_eq!(s.reduce(&boundary).unwrap().0, Vec::<usize>::new());
    }

    #[test]
    fn holonomy_basics() {
        let s = two_triangle_pants(0.7, 0.1, -0.4).unwrap();
        assert!(holonomy(&s, &[]).unwrap().approx_eq(&MoebiusTransform::IDENTITY, 0.0));
        let h = holonomy(&s, &[0, 1]).unwrap();
        let hinv = holonomy(&s, &[1, 2]).unwrap();
        assert!(h.compose(&hinv).approx_eq(&MoebiusTransform::IDENTITY, 1e-12));
        assert!(matches!(holonomy(&s, &[0]), Err(Error::InvalidWord(_))));
    }

    #[test]
    fn pants_lengths_examples() {
        assert_eq!(pants_boundary_lengths(1.0, 1.0, 1.0), [2.0, 2.0, 2.0]);
        assert_eq!(pants_boundary_lengths(1.0, -1.0, 5.0), [0.0, 4.0, 6.0]);
        assert_eq!(pants_boundary_lengths(0.0, 0.0, 0.0), [0.0; 3]);
        assert_eq!(shears_from_cuffs([2.0; 3], [1; 3]), [1.0; 3]);
        assert_eq!(shears_from_cuffs([0.0; 3], [-1, 1, -1]), [0.0; 3]);
    }

    #[test]
    fn pants_traces_match_lengths() {
        let h = pants_boundary_holonomies(1.0, 1.0, 1.0).unwrap();
        for m in h {
            assert!((m.trace().abs() - 2.0 * 1f64.cosh()).abs() < 1e-9);
        }
        let cusp = pants_boundary_holonomies(1.0, -1.0, 0.5).unwrap();
        assert!((cusp[0].trace().abs() - 2.0).abs() < 1e-9);
        // Corner relation.
        let prod = h[0].compose(&h[1]).compose(&h[2]);
        assert!(prod.approx_eq(&MoebiusTransform::IDENTITY, 1e-10));
    }

    proptest! {
        #[test]
        fn develop_step_round_trip(s in -3.0f64..3.0, side in 0usize..3,
                                   a in -3.0f64..-0.1, b in -0.05f64..0.05, c in 0.1f64..3.0) {
            let t = IdealTriangle::from_reals(a, b, c).unwrap();
            let n = develop_step(&t, side, s).unwrap();
            prop_assert!((shear_between_adjacent(&t, &n).unwrap() - s).abs() < 1e-9);
            prop_assert!((shear_between_adjacent(&n, &t).unwrap() - s).abs() < 1e-9);
        }

        #[test]
        fn shear_cuff_round_trip(l in prop::array::uniform3(0.0f64..6.0),
                                 sg in prop::array::uniform3(prop::bool::ANY)) {
            let signs = sg.map(|b| if b { 1 } else { -1 });
            let [s1, s2, s3] = shears_from_cuffs(l, signs);
            let back = pants_boundary_lengths(s1, s2, s3);
            for k in 0..3 {
                prop_assert!((back[k] - l[k]).abs() < 1e-12);
            }
        }

        #[test]
        fn path_independence(s in prop::array::uniform3(-1.5f64..1.5),
                             word in prop::collection::vec(0usize..3, 0..8),
                             detour in 0usize..3, at in 0usize..8) {
            let tri = two_triangle_pants(s[0], s[1], s[2]).unwrap();
            let at = at.min(word.len());
            let (prefix_reduced, end_tri) = tri.reduce(&word[..at]).unwrap();
            let _ = prefix_reduced;
            let back = tri.cross(end_tri, detour).to_side;
            let mut longer = word[..at].to_vec();
            longer.extend([detour, back]);
            longer.extend_from_slice(&word[at..]);
            let root = IdealTriangle::standard();
            let (t1, p1) = tri.walk_literal(&root, &word).unwrap();
            let (t2, p2) = tri.walk_literal(&root, &longer).unwrap();
            prop_assert_eq!(t1, t2);
            prop_assert!(p1.approx_eq(&p2, 1e-10));
            let dev = develop(&tri, &[word.clone(), longer]).unwrap();
            prop_assert!(dev.placements()[0].1.placed.approx_eq(&dev.placements()[1].1.placed, 1e-10));
        }

        #[test]
        fn holonomy_is_a_homomorphism(s in prop::array::uniform3(-1.5f64..1.5),
                                      w1 in prop::sample::select(vec![vec![0,1], vec![1,0], vec![2,2], vec![0,0], vec![1,2]]),
                                      w2 in prop::sample::select(vec![vec![0,1], vec![2,2], vec![2,1], vec![0,0,2,2]])) {
            let tri = two_triangle_pants(s[0], s[1], s[2]).unwrap();
            let h1 = holonomy(&tri, &w1).unwrap();
            let h2 = holonomy(&tri, &w2).unwrap();
            let mut w = w1.clone();
            w.extend(w2);
            let h = holonomy(&tri, &w).unwrap();
            prop_assert!(h.approx_eq(&h1.compose(&h2), 1e-10 * (1.0 + h.deviation())));
        }
    }
}
