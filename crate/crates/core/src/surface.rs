//! Closed surfaces glued from pants in Fenchel-Nielsen coordinates.
//!
//! Each pants is modelled by the two-triangle complex whose shears come from
//! its cuff lengths. Its boundary holonomies are the corner-link loops, and
//! each cuff axis is oriented so that the pants lies on its left.
//!
//! Gluing cuff `(i, a)` to cuff `(j, b)` uses
//! `J = F_{i,a} · D(τ) · R · F_{j,b}⁻¹`. Here `F` maps the imaginary axis to
//! the cuff axis and `i` to the seam foot. `D(τ)` translates by the twist,
//! and `R` is the half turn about `i`. The seam foot on cuff `k` is the
//! foot of the common perpendicular to cuff `k + 1`, so zero twist lines up
//! those feet.
//!
//! Globally the surface group is presented as a graph of groups over a
//! spanning tree of the pants graph:
//! - generator `c{j}.{k}` is cuff `k` of pants `j`;
//! - generator `h{g}` is the stable letter of each gluing `g` outside the
//!   tree.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyp::{horocycle_height, BoundaryPoint, Geodesic, HPoint, MoebiusTransform, GEOMETRIC_TOL};
use crate::transport::{
    shear_via_transport, spike_between_sides, ConnectingArc, CrossingFactor, Spike, TailPolicy,
    TransportChain,
};
use crate::triangle::{
    pants_boundary_holonomies, shared_side, shears_from_cuffs, two_triangle_pants, IdealTriangle,
    ShearTriangulation,
};

/// Boundary holonomies of the pants with the given cuff lengths, all spiral
/// signs positive. Their product in slot order is the identity.
pub fn pants_rep(l1: f64, l2: f64, l3: f64) -> Result<[MoebiusTransform; 3]> {
    Ok(PantsModel::new([l1, l2, l3], [1, 1, 1])?.boundary)
}

#[derive(Debug, Clone)]
pub struct PantsModel {
    pub shears: [f64; 3],
    pub boundary: [MoebiusTransform; 3],
    /// Cuff axes, oriented with the pants on the left.
    pub axes: [Geodesic; 3],
    /// `+1` when the boundary holonomy translates forwards along the axis.
    pub eps: [i32; 3],
    /// `F_k`: imaginary axis to cuff `k`, `i` to the seam foot.
    pub frames: [MoebiusTransform; 3],
    /// The ideal vertex the triangles of slot `k` fan around.
    pub punctures: [BoundaryPoint; 3],
    /// `±1`: which way the fan approaches the cuff.
    pub spiral: [i64; 3],
    triangulation: ShearTriangulation,
}

impl PantsModel {
    pub fn new(lengths: [f64; 3], signs: [i8; 3]) -> Result<Self> {
        if let Some(l) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::Range(format!("cuff length {l} must be positive")));
        }
        let shears = shears_from_cuffs(lengths, signs);
        let [s1, s2, s3] = shears;
        let triangulation = two_triangle_pants(s1, s2, s3)?;
        let boundary = pants_boundary_holonomies(s1, s2, s3)?;
        let root = IdealTriangle::standard();
        let center = root.center();
        let mut axes = [Geodesic::imaginary_axis(); 3];
        let mut eps = [1; 3];
        let mut punctures = [BoundaryPoint::INFINITY; 3];
        let mut spiral = [1; 3];
        for k in 0..3 {
            let raw = boundary[k].axis()?;
            let axis = if raw.side_of(&center) < 0.0 { raw } else { raw.reversed() };
            axes[k] = axis;
            eps[k] = if axis.translation(lengths[k]).approx_eq(&boundary[k], 1e-8 * (1.0 + lengths[k].exp())) {
                1
            } else {
                -1
            };
            let v = root.vertex(k + 1);
            if !boundary[k].apply(&v).approx_eq(&v, 1e-9) {
                return Err(Error::InvalidGluing(format!(
                    "boundary {k} does not fix its puncture vertex"
                )));
            }
            punctures[k] = v;
            spiral[k] = if raw.start().approx_eq(&v, 1e-9) { 1 } else { -1 };
        }
        let mut frames = [MoebiusTransform::IDENTITY; 3];
        for k in 0..3 {
            let foot = axes[k].common_perpendicular_foot(&axes[(k + 1) % 3])?;
            let f = axes[k].frame();
            let r = f.inverse().apply(&foot).y().sqrt();
            frames[k] = f.compose(&MoebiusTransform::from_raw(r, 0.0, 0.0, 1.0 / r));
        }
        Ok(Self {
            shears,
            boundary,
            axes,
            eps,
            frames,
            punctures,
            spiral,
            triangulation,
        })
    }

    /// Triangle `k` of the fan around the puncture of `slot`: even indices
    /// are images of the root, odd ones of its neighbour across side `slot`.
    pub fn fan(&self, slot: usize, k: i64) -> IdealTriangle {
        let root = IdealTriangle::standard();
        let base = if k.rem_euclid(2) == 0 {
            root
        } else {
            self.triangulation
                .walk_literal(&root, &[slot])
                .expect("side index is valid")
                .1
        };
        let n = k.div_euclid(2) as i32;
        self.boundary[slot].powi(n).apply(&base)
    }
}

fn half_turn() -> MoebiusTransform {
    MoebiusTransform::rotation(std::f64::consts::PI)
}

/// The map placing the model of pants `j` across cuff `b` from cuff `a` of
/// pants `i`, in the model coordinates of pants `i`.
pub fn gluing_map(mi: &PantsModel, a: usize, mj: &PantsModel, b: usize, twist: f64) -> MoebiusTransform {
    mi.frames[a]
        .compose(&MoebiusTransform::geodesic_flow(twist))
        .compose(&half_turn())
        .compose(&mj.frames[b].inverse())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gluing {
    /// `(pants id, cuff slot)` on each side.
    pub cuffs: [(u32, usize); 2],
    pub length: f64,
    pub twist: f64,
    pub spiral_signs: [i8; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PantsId {
    pub id: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSurface", into = "RawSurface")]
pub struct FNSurface {
    pants: Vec<u32>,
    gluings: Vec<Gluing>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    pants: Vec<PantsId>,
    gluings: Vec<Gluing>,
}

impl TryFrom<RawSurface> for FNSurface {
    type Error = Error;

    fn try_from(raw: RawSurface) -> Result<Self> {
        FNSurface::new(raw.pants.into_iter().map(|p| p.id).collect(), raw.gluings)
    }
}

impl From<FNSurface> for RawSurface {
    fn from(s: FNSurface) -> Self {
        RawSurface {
            pants: s.pants.into_iter().map(|id| PantsId { id }).collect(),
            gluings: s.gluings,
        }
    }
}

impl FNSurface {
    pub fn new(pants: Vec<u32>, gluings: Vec<Gluing>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidGluing(m));
        if pants.is_empty() {
            return bad("no pants".into());
        }
        let mut seen = BTreeSet::new();
        for id in &pants {
            if !seen.insert(*id) {
                return bad(format!("duplicate pants id {id}"));
            }
        }
        let mut slots = BTreeSet::new();
        for (g, gl) in gluings.iter().enumerate() {
            if !(gl.length.is_finite() && gl.length > 0.0) {
                return bad(format!("gluing {g} has non-positive length {}", gl.length));
            }
            if !gl.twist.is_finite() {
                return bad(format!("gluing {g} has a non-finite twist"));
            }
            if gl.spiral_signs.iter().any(|s| s.abs() != 1) {
                return bad(format!("gluing {g} spiral signs must be ±1"));
            }
            for (p, slot) in gl.cuffs {
                if !seen.contains(&p) {
                    return bad(format!("gluing {g} references unknown pants {p}"));
                }
                if slot > 2 {
                    return bad(format!("gluing {g} uses slot {slot} > 2"));
                }
                if !slots.insert((p, slot)) {
                    return bad(format!("cuff ({p}, {slot}) is glued twice"));
                }
            }
        }
        if slots.len() != 3 * pants.len() {
            return bad("some cuffs are left unglued".into());
        }
        let s = Self { pants, gluings };
        if s.spanning_tree().iter().filter(|t| t.is_some()).count() + 1 != s.pants.len() {
            return bad("pants graph is disconnected".into());
        }
        Ok(s)
    }

    /// Two pants glued slot to slot along three cuffs.
    pub fn genus_two(lengths: [f64; 3], twists: [f64; 3], signs: [[i8; 2]; 3]) -> Result<Self> {
        Self::new(
            vec![0, 1],
            (0..3)
                .map(|k| Gluing {
                    cuffs: [(0, k), (1, k)],
                    length: lengths[k],
                    twist: twists[k],
                    spiral_signs: signs[k],
                })
                .collect(),
        )
    }

    pub fn pants(&self) -> &[u32] {
        &self.pants
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.gluings.iter().map(|g| g.length).collect()
    }

    pub fn twists(&self) -> Vec<f64> {
        self.gluings.iter().map(|g| g.twist).collect()
    }

    /// Same gluing pattern with new twists.
    pub fn with_twists(&self, twists: &[f64]) -> Result<Self> {
        if twists.len() != self.gluings.len() {
            return Err(Error::InvalidGluing("twist count does not match gluings".into()));
        }
        let mut out = self.clone();
        for (g, t) in out.gluings.iter_mut().zip(twists) {
            g.twist = *t;
        }
        Ok(out)
    }

    /// Coordinates `(ℓ₁, …, ℓₙ, τ₁, …, τₙ)`.
    pub fn coordinates(&self) -> Vec<f64> {
        let mut c = self.lengths();
        c.extend(self.twists());
        c
    }

    pub fn from_coordinates(&self, coords: &[f64]) -> Result<Self> {
        let n = self.gluings.len();
        if coords.len() != 2 * n {
            return Err(Error::InvalidGluing("coordinate count does not match gluings".into()));
        }
        let mut gluings = self.gluings.clone();
        for (k, g) in gluings.iter_mut().enumerate() {
            g.length = coords[k];
            g.twist = coords[n + k];
        }
        Self::new(self.pants.clone(), gluings)
    }

    fn pants_index(&self, id: u32) -> usize {
        self.pants.iter().position(|p| *p == id).expect("validated")
    }

    /// `(pants index, slot)` for side `side` of gluing `g`.
    pub fn cuff(&self, g: usize, side: usize) -> (usize, usize) {
        let (p, slot) = self.gluings[g].cuffs[side];
        (self.pants_index(p), slot)
    }

    /// For each gluing, `Some(parent side)` if it is a tree edge.
    fn spanning_tree(&self) -> Vec<Option<usize>> {
        let mut tree = vec![None; self.gluings.len()];
        let mut placed = vec![false; self.pants.len()];
        placed[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            for (g, slot) in tree.iter_mut().enumerate() {
                for side in 0..2 {
                    let (i, _) = self.cuff(g, side);
                    let (j, _) = self.cuff(g, 1 - side);
                    if i == p && !placed[j] {
                        placed[j] = true;
                        *slot = Some(side);
                        queue.push_back(j);
                    }
                }
            }
        }
        tree
    }

    pub fn pants_model(&self, p: usize) -> Result<PantsModel> {
        let mut lengths = [0.0; 3];
        let mut signs = [1i8; 3];
        for (g, gl) in self.gluings.iter().enumerate() {
            for side in 0..2 {
                let (q, slot) = self.cuff(g, side);
                if q == p {
                    lengths[slot] = gl.length;
                    signs[slot] = gl.spiral_signs[side];
                }
            }
        }
        PantsModel::new(lengths, signs)
    }
}

/// One letter of a word in the surface group generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Letter {
    pub generator: String,
    pub power: i32,
}

pub type Word = Vec<Letter>;

/// Parses words such as `"c0.1 h2^-1 c1.0^2"`.
pub fn parse_word(s: &str) -> Result<Word> {
    s.split_whitespace()
        .map(|tok| {
            let (g, p) = match tok.split_once('^') {
                Some((g, p)) => (
                    g,
                    p.parse::<i32>()
                        .map_err(|_| Error::InvalidWord(format!("bad exponent in {tok}")))?,
                ),
                None => (tok, 1),
            };
            Ok(Letter {
                generator: g.to_string(),
                power: p,
            })
        })
        .collect()
}

pub fn word_inverse(w: &Word) -> Word {
    w.iter()
        .rev()
        .map(|l| Letter {
            generator: l.generator.clone(),
            power: -l.power,
        })
        .collect()
}

fn letter(g: &str, p: i32) -> Letter {
    Letter {
        generator: g.to_string(),
        power: p,
    }
}

pub fn cuff_generator(pants: usize, slot: usize) -> String {
    format!("c{pants}.{slot}")
}

pub fn stable_generator(gluing: usize) -> String {
    format!("h{gluing}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyRep {
    pub generators: BTreeMap<String, MoebiusTransform>,
    pub relators: Vec<Word>,
}

impl HolonomyRep {
    pub fn eval(&self, w: &Word) -> Result<MoebiusTransform> {
        let mut m = MoebiusTransform::IDENTITY;
        for l in w {
            let g = self
                .generators
                .get(&l.generator)
                .ok_or_else(|| Error::InvalidWord(format!("unknown generator {}", l.generator)))?;
            m = m.compose(&g.powi(l.power));
        }
        Ok(m)
    }

    /// Largest distance from a relator's value to `±I`.
    pub fn max_relator_residual(&self) -> f64 {
        self.relators
            .iter()
            .map(|r| self.eval(r).map(|m| m.deviation()).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

/// Word for the cuff of gluing `g`, seen from its first side.
pub fn cuff_word(s: &FNSurface, g: usize) -> Word {
    let (p, slot) = s.cuff(g, 0);
    vec![letter(&cuff_generator(p, slot), 1)]
}

pub fn fn_to_holonomy(s: &FNSurface) -> Result<HolonomyRep> {
    let models = (0..s.pants.len())
        .map(|p| s.pants_model(p))
        .collect::<Result<Vec<_>>>()?;
    let tree = s.spanning_tree();
    let gmap = |g: usize, side: usize| {
        let (i, a) = s.cuff(g, side);
        let (j, b) = s.cuff(g, 1 - side);
        gluing_map(&models[i], a, &models[j], b, s.gluings[g].twist)
    };
    // Placements along the tree, in BFS order.
    let mut place = vec![None; s.pants.len()];
    place[0] = Some(MoebiusTransform::IDENTITY);
    while place.iter().any(|p| p.is_none()) {
        let mut progressed = false;
        for (g, t) in tree.iter().enumerate() {
            if let Some(side) = t {
                let (i, _) = s.cuff(g, *side);
                let (j, _) = s.cuff(g, 1 - side);
                if let (Some(pi), None) = (place[i], place[j]) {
                    place[j] = Some(pi.compose(&gmap(g, *side)));
                    progressed = true;
                }
            }
        }
        if !progressed {
            return Err(Error::InvalidGluing("pants graph is disconnected".into()));
        }
    }
    let place: Vec<MoebiusTransform> = place.into_iter().map(|p| p.expect("placed")).collect();
    let mut generators = BTreeMap::new();
    let mut relators = Vec::new();
    for (p, m) in models.iter().enumerate() {
        for k in 0..3 {
            generators.insert(cuff_generator(p, k), m.boundary[k].conjugated_by(&place[p]));
        }
        relators.push((0..3).map(|k| letter(&cuff_generator(p, k), 1)).collect());
    }
    for (g, t) in tree.iter().enumerate() {
        let (i, a) = s.cuff(g, 0);
        let (j, b) = s.cuff(g, 1);
        if models[i].eps[a] != models[j].eps[b] {
            return Err(Error::InvalidGluing(format!(
                "cuff orientations disagree across gluing {g}"
            )));
        }
        let ci = letter(&cuff_generator(i, a), 1);
        let cj = letter(&cuff_generator(j, b), 1);
        match t {
            Some(_) => relators.push(vec![ci, cj]),
            None => {
                let h = stable_generator(g);
                generators.insert(h.clone(), place[i].compose(&gmap(g, 0)).compose(&place[j].inverse()));
                relators.push(vec![letter(&h, 1), cj, letter(&h, -1), ci]);
            }
        }
    }
    Ok(HolonomyRep { generators, relators })
}

/// The substitution on generators induced by the Dehn twist about the cuff
/// of gluing `g`: representing the surface with twist `τ + ℓ` equals the
/// original representation precomposed with it.
pub fn dehn_twist_substitution(s: &FNSurface, g: usize) -> Result<BTreeMap<String, Word>> {
    if g >= s.gluings.len() {
        return Err(Error::UnsupportedCurve(format!("no gluing {g}")));
    }
    let tree = s.spanning_tree();
    let rep_side = tree[g].unwrap_or(0);
    let (i, a) = s.cuff(g, rep_side);
    let eps = s.pants_model(i)?.eps[a];
    let c = letter(&cuff_generator(i, a), eps);
    let c_inv = letter(&cuff_generator(i, a), -eps);
    let mut sub: BTreeMap<String, Word> = BTreeMap::new();
    match tree[g] {
        None => {
            sub.insert(stable_generator(g), vec![c, letter(&stable_generator(g), 1)]);
        }
        Some(parent_side) => {
            // Everything on the child side of the edge is conjugated.
            let (child, _) = s.cuff(g, 1 - parent_side);
            let subtree = s.subtree(&tree, g, child);
            for &p in &subtree {
                for k in 0..3 {
                    let name = cuff_generator(p, k);
                    sub.insert(name.clone(), vec![c.clone(), letter(&name, 1), c_inv.clone()]);
                }
            }
            for (h, t) in tree.iter().enumerate() {
                if t.is_some() {
                    continue;
                }
                let x = subtree.contains(&s.cuff(h, 0).0);
                let y = subtree.contains(&s.cuff(h, 1).0);
                let mut w = Vec::new();
                if x {
                    w.push(c.clone());
                }
                w.push(letter(&stable_generator(h), 1));
                if y {
                    w.push(c_inv.clone());
                }
                if x || y {
                    sub.insert(stable_generator(h), w);
                }
            }
        }
    }
    Ok(sub)
}

impl FNSurface {
    fn subtree(&self, tree: &[Option<usize>], edge: usize, root: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for (g, t) in tree.iter().enumerate() {
                if g == edge {
                    continue;
                }
                if let Some(side) = t {
                    let (i, _) = self.cuff(g, *side);
                    let (j, _) = self.cuff(g, 1 - side);
                    if i == p && out.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
        out
    }
}

pub fn substitute(w: &Word, sub: &BTreeMap<String, Word>) -> Word {
    let mut out = Vec::new();
    for l in w {
        match sub.get(&l.generator) {
            None => out.push(l.clone()),
            Some(img) => {
                let piece = if l.power < 0 { word_inverse(img) } else { img.clone() };
                for _ in 0..l.power.unsigned_abs() {
                    out.extend(piece.iter().cloned());
                }
            }
        }
    }
    out
}

/// Non-negative weights on the cuffs, keyed by gluing index.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WeightedMulticurve {
    pub weights: BTreeMap<usize, f64>,
}

impl WeightedMulticurve {
    pub fn new(weights: BTreeMap<usize, f64>) -> Result<Self> {
        if weights.values().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::UnsupportedCurve("weights must be finite and non-negative".into()));
        }
        if !weights.values().any(|w| *w > 0.0) {
            return Err(Error::UnsupportedCurve("at least one weight must be positive".into()));
        }
        Ok(Self { weights })
    }

    pub fn single(gluing: usize, weight: f64) -> Result<Self> {
        Self::new(BTreeMap::from([(gluing, weight)]))
    }

    pub fn weight(&self, gluing: usize) -> f64 {
        self.weights.get(&gluing).copied().unwrap_or(0.0)
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        Self::new(self.weights.iter().map(|(g, w)| (*g, w * k)).collect())
    }

    fn check(&self, s: &FNSurface) -> Result<()> {
        match self.weights.keys().find(|g| **g >= s.gluings.len()) {
            Some(g) => Err(Error::UnsupportedCurve(format!("gluing {g} is not a cuff of the surface"))),
            None => Ok(()),
        }
    }
}

/// The earthquake along a multicurve on the cuffs: `τᵢ ↦ τᵢ + t·wᵢ`.
pub fn earthquake_flow(s: &FNSurface, mc: &WeightedMulticurve, t: f64) -> Result<FNSurface> {
    mc.check(s)?;
    let mut out = s.clone();
    for (g, w) in &mc.weights {
        out.gluings[*g].twist += t * w;
    }
    Ok(out)
}

pub fn multicurve_length(s: &FNSurface, mc: &WeightedMulticurve) -> Result<f64> {
    mc.check(s)?;
    Ok(mc.weights.iter().map(|(g, w)| w * s.gluings[*g].length).sum())
}

/// Forward-difference Jacobian of the earthquake flow in coordinates
/// `(ℓ, τ)`, with step `h`.
pub fn earthquake_jacobian(s: &FNSurface, mc: &WeightedMulticurve, t: f64, h: f64) -> Result<Vec<Vec<f64>>> {
    let x0 = s.coordinates();
    let y0 = earthquake_flow(s, mc, t)?.coordinates();
    let n = x0.len();
    let mut jac = vec![vec![0.0; n]; n];
    for col in 0..n {
        let mut x = x0.clone();
        x[col] += h;
        let y = earthquake_flow(&s.from_coordinates(&x)?, mc, t)?.coordinates();
        for row in 0..n {
            jac[row][col] = (y[row] - y0[row]) / h;
        }
    }
    Ok(jac)
}

/// How far to follow the spirals on each side of a cuff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationBudget {
    pub min_deviation: f64,
    pub tail_tolerance: f64,
    /// Overrides the depth derived from the two tolerances.
    pub max_depth: Option<f64>,
}

impl Default for TruncationBudget {
    fn default() -> Self {
        Self {
            min_deviation: 1e-14,
            tail_tolerance: 1e-12,
            max_depth: None,
        }
    }
}

impl TruncationBudget {
    pub fn with_depth(depth: f64) -> Self {
        Self {
            max_depth: Some(depth),
            ..Self::default()
        }
    }

    /// Spikes deeper than this are left to the tail bound.
    pub fn depth_budget(&self, length: f64) -> f64 {
        self.max_depth.unwrap_or_else(|| {
            let by_size = -self.min_deviation.ln();
            let by_tail = -(self.tail_tolerance * (1.0 - (-length).exp())).ln();
            by_size.max(by_tail)
        })
    }
}

/// The spiralling triangles on both sides of a cuff, placed in the model
/// coordinates of the first side's pants.
#[derive(Debug, Clone)]
pub struct CuffSpiral {
    pub length: f64,
    pub axis: Geodesic,
    /// Start and end triangles of the transport arc.
    pub start: IdealTriangle,
    pub end: IdealTriangle,
    pub exit_side: usize,
    pub entry_side: usize,
    /// Where the arc meets the cuff.
    pub crossing: HPoint,
    /// The two spike classes on each side and their first depths.
    pub near_spikes: [Spike; 2],
    pub near_depths: [f64; 2],
    pub far_spikes: [Spike; 2],
    pub far_depths: [f64; 2],
    near: (PantsModel, usize),
    far: (PantsModel, usize, MoebiusTransform),
}

fn other_end(g: &Geodesic, v: &BoundaryPoint) -> BoundaryPoint {
    if g.start().approx_eq(v, 1e-9) {
        g.end()
    } else {
        g.start()
    }
}

/// Point where the horocycle centred at `center` through `z` meets the
/// geodesic from `center` to `other`.
fn horocycle_meets(center: &BoundaryPoint, z: &HPoint, other: &BoundaryPoint) -> HPoint {
    let (p, q) = center.components();
    let rot = MoebiusTransform::from_raw(p, -q, q, p);
    let x = rot.inverse().apply(other).to_real().expect("distinct from centre");
    let h = horocycle_height(center, z);
    rot.apply(&HPoint::new(x, h).expect("positive height"))
}

impl CuffSpiral {
    pub fn new(s: &FNSurface, gluing: usize) -> Result<Self> {
        if gluing >= s.gluings.len() {
            return Err(Error::UnsupportedCurve(format!("no gluing {gluing}")));
        }
        let (pi, a) = s.cuff(gluing, 0);
        let (pj, b) = s.cuff(gluing, 1);
        let mi = s.pants_model(pi)?;
        let mj = s.pants_model(pj)?;
        let glue = gluing_map(&mi, a, &mj, b, s.gluings[gluing].twist);
        let axis = mi.axes[a];

        let di = mi.spiral[a];
        let near_tri = |k: i64| mi.fan(a, k * di);
        let start = near_tri(0);
        let (exit_side, _) = shared_side(&start, &near_tri(1), GEOMETRIC_TOL)?;
        let p0 = start.tangency_point(exit_side);
        let v = mi.punctures[a];
        let crossing = horocycle_meets(&v, &p0, &other_end(&axis, &v));

        let dj = mj.spiral[b];
        let far_tri = |k: i64| glue.apply(&mj.fan(b, k * dj));
        let end = far_tri(0);
        let (entry_side, _) = shared_side(&end, &far_tri(1), GEOMETRIC_TOL)?;

        let mut out = Self {
            length: s.gluings[gluing].length,
            axis,
            start,
            end,
            exit_side,
            entry_side,
            crossing,
            near_spikes: [spike_in_fan(&near_tri, 1, false)?, spike_in_fan(&near_tri, 2, false)?],
            near_depths: [0.0; 2],
            far_spikes: [spike_in_fan(&far_tri, 1, true)?, spike_in_fan(&far_tri, 2, true)?],
            far_depths: [0.0; 2],
            near: (mi, a),
            far: (mj, b, glue),
        };
        out.near_depths = [
            out.near_spikes[0].depth_of(&p0),
            out.near_spikes[1].depth_of(&p0),
        ];
        out.far_depths = [
            out.far_spikes[0].depth_of(&crossing),
            out.far_spikes[1].depth_of(&crossing),
        ];
        Ok(out)
    }

    /// Depth of the `k`-th spike (from 1) computed from the placed fan
    /// triangle itself rather than by periodicity.
    pub fn geometric_depth(&self, far: bool, k: i64) -> Result<f64> {
        if far {
            let (m, b, glue) = &self.far;
            let tri = |j: i64| glue.apply(&m.fan(*b, j * m.spiral[*b]));
            Ok(spike_in_fan(&tri, k, true)?.depth_of(&self.crossing))
        } else {
            let (m, a) = &self.near;
            let tri = |j: i64| m.fan(*a, j * m.spiral[*a]);
            let p0 = self.start.tangency_point(self.exit_side);
            Ok(spike_in_fan(&tri, k, false)?.depth_of(&p0))
        }
    }

    /// Depth of the `k`-th spike by periodicity: one full turn around the
    /// cuff deepens the horocycle by the cuff length.
    pub fn depth(&self, far: bool, k: usize) -> f64 {
        let first = if far { self.far_depths } else { self.near_depths };
        first[(k - 1) % 2] + ((k - 1) / 2) as f64 * self.length
    }

    fn spike(&self, far: bool, k: usize) -> &Spike {
        if far {
            &self.far_spikes[(k - 1) % 2]
        } else {
            &self.near_spikes[(k - 1) % 2]
        }
    }

    /// Crossing factors up to depth `max_depth` and the deviation mass of
    /// the rest, in arc order: approach the cuff, then move away from it.
    pub fn factors(&self, max_depth: f64) -> (Vec<CrossingFactor>, f64) {
        let mut tail = 0.0;
        let mut side = |far: bool| {
            let mut out = Vec::new();
            let mut k = 1;
            loop {
                let d = self.depth(far, k);
                if d > max_depth {
                    // Both classes continue geometrically from here.
                    let d2 = self.depth(far, k + 1);
                    let ratio = 1.0 / (1.0 - (-self.length).exp());
                    tail += ((-d).exp() + (-d2).exp()) * ratio;
                    break;
                }
                let key = if far { 1.0 + 1.0 / (k as f64 + 1.0) } else { 1.0 - 1.0 / (k as f64 + 1.0) };
                out.push(self.spike(far, k).factor_at(d, key));
                k += 1;
            }
            out
        };
        let mut factors = side(false);
        let mut far = side(true);
        far.reverse();
        factors.extend(far);
        (factors, tail)
    }
}

/// Spike `k` of a fan indexed outward from triangle 0. Near the cuff the arc
/// travels with increasing `k`; on the far side it travels back towards 0.
fn spike_in_fan(tri: &dyn Fn(i64) -> IdealTriangle, k: i64, inward: bool) -> Result<Spike> {
    let t = tri(k);
    let (towards_zero, _) = shared_side(&t, &tri(k - 1), GEOMETRIC_TOL)?;
    let (away, _) = shared_side(&t, &tri(k + 1), GEOMETRIC_TOL)?;
    if inward {
        spike_between_sides(&t, away, towards_zero)
    } else {
        spike_between_sides(&t, towards_zero, away)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CuffShear {
    pub value: f64,
    pub error_bound: f64,
    pub factors: usize,
    pub depth_budget: f64,
}

/// Shear between the root triangles of the two pants along a short arc
/// crossing the cuff of `gluing`, from the first side to the second.
pub fn shear_across_cuff(s: &FNSurface, gluing: usize, budget: &TruncationBudget) -> Result<CuffShear> {
    let spiral = CuffSpiral::new(s, gluing)?;
    let depth = spiral.depth_budget(budget);
    let (factors, tail_mass) = spiral.factors(depth);
    let count = factors.len();
    let chain = TransportChain {
        stations: vec![spiral.start, spiral.end],
        arcs: vec![ConnectingArc {
            exit_side: spiral.exit_side,
            entry_side: spiral.entry_side,
            factors,
            tail_mass,
        }],
    };
    let policy = TailPolicy {
        min_deviation: budget.min_deviation,
        ..TailPolicy::default()
    };
    let t = shear_via_transport(&chain, &policy)?;
    Ok(CuffShear {
        value: t.value,
        error_bound: t.error_bound,
        factors: count,
        depth_budget: depth,
    })
}

impl CuffSpiral {
    fn depth_budget(&self, budget: &TruncationBudget) -> f64 {
        budget.depth_budget(self.length)
    }
}

/// Pants indices adjacent to each gluing, for reporting.
pub fn gluing_pants(s: &FNSurface) -> HashMap<usize, (usize, usize)> {
    (0..s.gluings.len())
        .map(|g| (g, (s.cuff(g, 0).0, s.cuff(g, 1).0)))
        .collect()
}
