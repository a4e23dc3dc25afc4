//! Crossing factors, ordered products with explicit error budgets, and
//! shears between non-adjacent triangles obtained by transporting a unit
//! tangent vector along a horocyclic arc.
//!
//! Factors are expressed in the body frame of the vector being carried:
//! if `v⁺ = v⁻·B` (right action on frames), the factor stores `B`. With this
//! convention the transport of `v₀` along an arc is `frame(v₀)·B₁·B₂⋯Bₙ` in
//! arc order, and the deviation `‖B − I‖` equals `frame_distance(v⁻, v⁺)`,
//! which does not depend on where the spike sits in the plane.

use crate::error::{Error, Result};
use crate::hyp::{
    cyclic_orientation, frame_distance, horocycle_height, BoundaryPoint, Geodesic, HPoint,
    MoebiusTransform, UnitTangent, ALGEBRAIC_TOL, GEOMETRIC_TOL,
};
use crate::triangle::{shared_side, IdealTriangle};

/// `g_{-t} · u_1 · g_t`, evaluated as the literal triple product.
pub fn horocycle_conjugate(t: f64) -> MoebiusTransform {
    let g = |s: f64| MoebiusTransform::geodesic_flow(s);
    g(-t).compose(&MoebiusTransform::parabolic(1.0)).compose(&g(t))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingFactor {
    pub matrix: MoebiusTransform,
    pub deviation: f64,
    /// Position along the arc; factors are multiplied in increasing order.
    pub order_key: f64,
}

impl CrossingFactor {
    pub fn new(matrix: MoebiusTransform, order_key: f64) -> Self {
        Self {
            matrix,
            deviation: matrix.deviation(),
            order_key,
        }
    }
}

/// The factor carrying `v_minus` to `v_plus`, in the body frame of `v_minus`.
pub fn crossing_factor(v_minus: &UnitTangent, v_plus: &UnitTangent, order_key: f64) -> CrossingFactor {
    let m = v_minus.frame().inverse().compose(v_plus.frame());
    let f = CrossingFactor::new(m, order_key);
    debug_assert!((f.deviation - frame_distance(v_minus, v_plus)).abs() < 1e-12);
    f
}

/// How an ordered product may be truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPolicy {
    /// Largest admissible sum of deviations.
    pub budget: f64,
    /// Factors below this deviation are dropped and charged to the error.
    pub min_deviation: f64,
    /// A-priori bound on the deviations of factors not supplied at all.
    pub tail_mass: f64,
}

impl Default for TailPolicy {
    fn default() -> Self {
        Self {
            budget: 1e3,
            min_deviation: 1e-14,
            tail_mass: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderedProduct {
    /// The retained factors, in order.
    pub factors: Vec<CrossingFactor>,
    pub value: MoebiusTransform,
    /// Bound on the distance from `value` to the full (untruncated) product.
    pub error_bound: f64,
    pub dropped: usize,
}

/// Multiplies the factors in `order_key` order.
///
/// Dropping factors with total deviation `D` moves the product by at most
/// `C·(e^D − 1) ≤ C·D·e^D`, where `C = ∏(1 + ‖sᵢ‖)` over the retained
/// factors and the norm of a difference is Frobenius, minimized over sign.
pub fn ordered_product(factors: &[CrossingFactor], policy: &TailPolicy) -> Result<OrderedProduct> {
    if factors.windows(2).any(|w| !(w[0].order_key < w[1].order_key)) {
        return Err(Error::InvalidChain(
            "factor order keys must be strictly increasing".into(),
        ));
    }
    let mut partial = policy.tail_mass;
    let mut kept = Vec::with_capacity(factors.len());
    let mut dropped_mass = policy.tail_mass;
    let mut dropped = 0;
    let mut c = 1.0;
    let mut value = MoebiusTransform::IDENTITY;
    for f in factors {
        partial += f.deviation;
        if partial > policy.budget {
            return Err(Error::DivergentBudget {
                partial,
                budget: policy.budget,
            });
        }
        if f.deviation < policy.min_deviation {
            dropped_mass += f.deviation;
            dropped += 1;
            continue;
        }
        c *= 1.0 + f.deviation;
        value = value.compose(&f.matrix);
        kept.push(*f);
    }
    Ok(OrderedProduct {
        factors: kept,
        value,
        error_bound: c * dropped_mass * dropped_mass.exp(),
        dropped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpikeKind {
    /// The apex lies to the left of travel; factors are upper unipotent.
    Unstable,
    /// The apex lies to the right of travel; factors are lower unipotent.
    Stable,
}

/// The thin end of an ideal triangle, traversed by horocycles centred at the
/// apex from the edge ending at `entry_end` to the edge ending at `exit_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spike {
    pub apex: BoundaryPoint,
    pub entry_end: BoundaryPoint,
    pub exit_end: BoundaryPoint,
}

impl Spike {
    pub fn new(apex: BoundaryPoint, entry_end: BoundaryPoint, exit_end: BoundaryPoint) -> Result<Self> {
        let pts = [apex, entry_end, exit_end];
        for i in 0..3 {
            if pts[i].cross(&pts[(i + 1) % 3]).abs() <= ALGEBRAIC_TOL {
                return Err(Error::InvalidTriangle);
            }
        }
        Ok(Self {
            apex,
            entry_end,
            exit_end,
        })
    }

    pub fn kind(&self) -> SpikeKind {
        if cyclic_orientation(&self.entry_end, &self.exit_end, &self.apex) > 0.0 {
            SpikeKind::Unstable
        } else {
            SpikeKind::Stable
        }
    }

    /// Point on the edge `end → apex` at signed distance `depth` from the
    /// triangle's tangency point, positive towards the apex.
    fn point_and_vector(&self, end: &BoundaryPoint, opposite: &BoundaryPoint, depth: f64) -> UnitTangent {
        let edge = Geodesic::new(*end, self.apex).expect("validated spike");
        let f = edge.frame();
        let x = f.inverse().apply(opposite).to_real().expect("opposite vertex is finite in the edge frame");
        let r = (x.abs().ln() + depth).exp().sqrt();
        let up = UnitTangent::new(f.compose(&MoebiusTransform::from_raw(r, 0.0, 0.0, 1.0 / r)));
        match self.kind() {
            SpikeKind::Unstable => up,
            SpikeKind::Stable => up.reversed(),
        }
    }

    /// The entry and exit vectors of the horocycle at `depth`, both pointing
    /// left of the direction of travel.
    pub fn vectors_at(&self, depth: f64) -> (UnitTangent, UnitTangent) {
        (
            self.point_and_vector(&self.entry_end, &self.exit_end, depth),
            self.point_and_vector(&self.exit_end, &self.entry_end, depth),
        )
    }

    /// Closed form of `crossing_factor(vectors_at(depth))`: a unipotent
    /// whose only parameter is `e^{-depth}`. Building it from the two frames
    /// loses all precision once the spike is deep.
    pub fn factor_at(&self, depth: f64, order_key: f64) -> CrossingFactor {
        let t = (-depth).exp();
        let m = match self.kind() {
            SpikeKind::Unstable => MoebiusTransform::parabolic(t),
            SpikeKind::Stable => MoebiusTransform::lower_parabolic(t),
        };
        CrossingFactor::new(m, order_key)
    }

    pub fn factor_from_frames(&self, depth: f64, order_key: f64) -> CrossingFactor {
        let (vm, vp) = self.vectors_at(depth);
        crossing_factor(&vm, &vp, order_key)
    }

    /// Signed depth of a point on either edge, relative to the tangency
    /// horocycle.
    pub fn depth_of(&self, z: &HPoint) -> f64 {
        let (vm, _) = self.vectors_at(0.0);
        (horocycle_height(&self.apex, z) / horocycle_height(&self.apex, &vm.basepoint())).ln()
    }
}

/// Factors for horocycles crossing `spike` at the given depths, keyed by
/// their position in the list.
pub fn spike_crossing_sequence(spike: &Spike, depths: &[f64]) -> Result<Vec<CrossingFactor>> {
    if depths.iter().any(|d| !d.is_finite()) || depths.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidDepths);
    }
    Ok(depths
        .iter()
        .enumerate()
        .map(|(k, d)| spike.factor_at(*d, k as f64))
        .collect())
}

/// The piece of the transport arc between two consecutive stations.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectingArc {
    /// Side of the departing station the arc leaves through.
    pub exit_side: usize,
    /// Side of the arriving station the arc enters through.
    pub entry_side: usize,
    pub factors: Vec<CrossingFactor>,
    /// Deviation mass of crossings beyond the supplied factors.
    pub tail_mass: f64,
}

impl ConnectingArc {
    pub fn adjacent(exit_side: usize, entry_side: usize) -> Self {
        Self {
            exit_side,
            entry_side,
            factors: Vec::new(),
            tail_mass: 0.0,
        }
    }

    /// Follows horocycles through the spikes of consecutive adjacent
    /// triangles `path[1..n-1]`, from the tangency point of `path[0]` on the
    /// side it shares with `path[1]`.
    pub fn through(path: &[IdealTriangle]) -> Result<Self> {
        if path.len() < 2 {
            return Err(Error::InvalidChain("a path needs two triangles".into()));
        }
        let (exit_side, _) = shared_side(&path[0], &path[1], GEOMETRIC_TOL)?;
        let mut point = path[0].tangency_point(exit_side);
        let mut factors = Vec::with_capacity(path.len() - 2);
        let mut entry_side = shared_side(&path[0], &path[1], GEOMETRIC_TOL)?.1;
        for k in 1..path.len() - 1 {
            let t = &path[k];
            let (out, next_entry) = shared_side(t, &path[k + 1], GEOMETRIC_TOL)?;
            let spike = spike_between_sides(t, entry_side, out)?;
            let depth = spike.depth_of(&point);
            let f = spike.factor_at(depth, k as f64);
            point = spike.vectors_at(depth).1.basepoint();
            factors.push(f);
            entry_side = next_entry;
        }
        Ok(Self {
            exit_side,
            entry_side,
            factors,
            tail_mass: 0.0,
        })
    }
}

/// The spike of `t` between its sides `entry` and `exit`.
pub fn spike_between_sides(t: &IdealTriangle, entry: usize, exit: usize) -> Result<Spike> {
    let (apex, entry_end, exit_end) = if exit == (entry + 1) % 3 {
        (t.vertex(entry + 1), t.vertex(entry), t.vertex(entry + 2))
    } else if exit == (entry + 2) % 3 {
        (t.vertex(entry), t.vertex(entry + 1), t.vertex(entry + 2))
    } else {
        return Err(Error::InvalidChain(format!(
            "entry and exit side {entry} coincide"
        )));
    };
    Spike::new(apex, entry_end, exit_end)
}

/// Placed triangles joined by connecting arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportChain {
    pub stations: Vec<IdealTriangle>,
    pub arcs: Vec<ConnectingArc>,
}

impl TransportChain {
    /// A chain whose stations are consecutive adjacent triangles.
    pub fn adjacent(triangles: Vec<IdealTriangle>) -> Result<Self> {
        let arcs = triangles
            .windows(2)
            .map(ConnectingArc::through)
            .collect::<Result<_>>()?;
        Ok(Self {
            stations: triangles,
            arcs,
        })
    }

    /// `self` followed by `other`; the last station of `self` must be the
    /// first of `other`.
    pub fn concat(&self, other: &TransportChain) -> Result<TransportChain> {
        match (self.stations.last(), other.stations.first()) {
            (Some(a), Some(b)) if a.approx_eq(b, GEOMETRIC_TOL) => {}
            _ => return Err(Error::InvalidChain("chains do not meet".into())),
        }
        let mut stations = self.stations.clone();
        stations.extend_from_slice(&other.stations[1..]);
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(&other.arcs);
        Ok(TransportChain { stations, arcs })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportShear {
    pub value: f64,
    /// First-order bound propagated from the truncated products.
    pub error_bound: f64,
    /// Contribution of each connecting arc.
    pub links: Vec<f64>,
}

/// Shear of one connecting arc: transports the tangent vector at the
/// departing tangency point and reads off where it lands relative to the
/// arriving tangency point.
pub fn link_shear(
    from: &IdealTriangle,
    to: &IdealTriangle,
    arc: &ConnectingArc,
    policy: &TailPolicy,
    closure_tol: f64,
) -> Result<(f64, f64)> {
    let policy = TailPolicy {
        tail_mass: policy.tail_mass + arc.tail_mass,
        ..*policy
    };
    let product = ordered_product(&arc.factors, &policy)?;
    let v0 = from.side_frame(arc.exit_side);
    let arrival = to
        .side_frame(arc.entry_side)
        .compose(&MoebiusTransform::rotation(std::f64::consts::PI));
    let a = arrival.inverse().compose(&v0);
    let x = a.compose(&product.value);
    let scale = x.a().abs().max(x.d().abs());
    if x.b().abs().max(x.c().abs()) > closure_tol * scale {
        return Err(Error::InvalidChain(format!(
            "transported vector misses the arrival edge by {:e}",
            x.b().abs().max(x.c().abs()) / scale
        )));
    }
    let shear = -2.0 * x.a().abs().ln();
    let norm = a.entries().iter().map(|e| e * e).sum::<f64>().sqrt();
    let bound = 2.0 * norm * product.error_bound / x.a().abs();
    Ok((shear, bound))
}

pub fn shear_via_transport(chain: &TransportChain, policy: &TailPolicy) -> Result<TransportShear> {
    shear_via_transport_with_tol(chain, policy, 1e-8)
}

pub fn shear_via_transport_with_tol(
    chain: &TransportChain,
    policy: &TailPolicy,
    closure_tol: f64,
) -> Result<TransportShear> {
    if chain.stations.len() != chain.arcs.len() + 1 {
        return Err(Error::InvalidChain(format!(
            "{} stations need {} arcs, got {}",
            chain.stations.len(),
            chain.stations.len().saturating_sub(1),
            chain.arcs.len()
        )));
    }
    let mut links = Vec::with_capacity(chain.arcs.len());
    let mut error_bound = 0.0;
    for (k, arc) in chain.arcs.iter().enumerate() {
        let (s, e) = link_shear(&chain.stations[k], &chain.stations[k + 1], arc, policy, closure_tol)?;
        links.push(s);
        error_bound += e;
    }
    Ok(TransportShear {
        value: links.iter().sum(),
        error_bound,
        links,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{develop_step, shear_between_adjacent};
    use proptest::prelude::*;

    #[test]
    fn basic_computation() {
        for t in [0.0, 1.0, 5.0, 20.0] {
            let m = horocycle_conjugate(t);
            let expected = [1.0, (-t).exp(), 0.0, 1.0];
            for (x, y) in m.entries().iter().zip(expected) {
                assert!((x - y).abs() <= 1e-15, "t = {t}: {x} vs {y}");
            }
            assert!((m.deviation() - (-t).exp()).abs() <= 1e-15);
        }
    }

    #[test]
    fn crossing_factor_identity() {
        let v = UnitTangent::at(&HPoint::new(0.2, 1.7).unwrap(), 1.0);
        let f = crossing_factor(&v, &v, 0.0);
        assert_eq!(f.deviation, 0.0);
    }

    fn unit_spike() -> Spike {
        // Triangle (0, 1, ∞) seen from its vertex at ∞, travelling from x = 0 to x = 1.
        Spike::new(
            BoundaryPoint::INFINITY,
            BoundaryPoint::from_real(0.0),
            BoundaryPoint::from_real(1.0),
        )
        .unwrap()
    }

    #[test]
    fn unstable_spike_factor_is_conjugated_horocycle_step() {
        let s = unit_spike();
        assert_eq!(s.kind(), SpikeKind::Unstable);
        for d in [0.0, 0.5, 3.0, 12.0] {
            let f = s.factor_from_frames(d, 0.0);
            assert!(f.matrix.approx_eq(&s.factor_at(d, 0.0).matrix, 1e-12));
            assert!(f.matrix.approx_eq(&horocycle_conjugate(d), 1e-12));
            assert!((f.deviation - (-d).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn stable_spike_factor_is_lower_unipotent() {
        let s = Spike::new(
            BoundaryPoint::INFINITY,
            BoundaryPoint::from_real(1.0),
            BoundaryPoint::from_real(0.0),
        )
        .unwrap();
        assert_eq!(s.kind(), SpikeKind::Stable);
        for d in [0.0, 2.0, 7.0] {
            let f = s.factor_from_frames(d, 0.0);
            assert!(f.matrix.approx_eq(&s.factor_at(d, 0.0).matrix, 1e-12));
            let expected = MoebiusTransform::lower_parabolic((-d).exp());
            assert!(f.matrix.approx_eq(&expected, 1e-12), "{:?}", f.matrix);
        }
    }

    #[test]
    fn factor_deviation_is_equivariant() {
        let s = unit_spike();
        let g = MoebiusTransform::new(0.3, -1.2, 0.8, 0.4).unwrap();
        let moved = Spike::new(g.apply(&s.apex), g.apply(&s.entry_end), g.apply(&s.exit_end)).unwrap();
        for d in [-1.0, 0.0, 2.5] {
            let a = s.factor_from_frames(d, 0.0);
            let b = moved.factor_from_frames(d, 0.0);
            assert!((a.deviation - b.deviation).abs() < 1e-10);
            assert!(b.matrix.approx_eq(&moved.factor_at(d, 0.0).matrix, 1e-9));
        }
    }

    #[test]
    fn ordered_product_trivial_cases() {
        let p = ordered_product(&[], &TailPolicy::default()).unwrap();
        assert_eq!(p.value, MoebiusTransform::IDENTITY);
        assert_eq!(p.error_bound, 0.0);
        let f = CrossingFactor::new(MoebiusTransform::parabolic(0.3), 0.0);
        let p = ordered_product(&[f], &TailPolicy::default()).unwrap();
        assert_eq!(p.value, f.matrix);
        assert_eq!(p.error_bound, 0.0);
    }

    #[test]
    fn ordered_product_rejects_excess_mass() {
        let fs: Vec<_> = (0..10)
            .map(|k| CrossingFactor::new(MoebiusTransform::parabolic(1.0), k as f64))
            .collect();
        let policy = TailPolicy {
            budget: 5.0,
            ..TailPolicy::default()
        };
        assert!(matches!(ordered_product(&fs, &policy), Err(Error::DivergentBudget { .. })));
        let unordered = [fs[1], fs[0]];
        assert!(ordered_product(&unordered, &TailPolicy::default()).is_err());
    }

    #[test]
    fn geometric_truncation() {
        let fs: Vec<_> = (1..=40)
            .map(|k| {
                let m = if k % 2 == 0 {
                    MoebiusTransform::parabolic((-(k as f64)).exp())
                } else {
                    MoebiusTransform::lower_parabolic((-(k as f64)).exp())
                };
                CrossingFactor::new(m, k as f64)
            })
            .collect();
        let full = ordered_product(&fs, &TailPolicy::default()).unwrap();
        let tail: f64 = fs[20..].iter().map(|f| f.deviation).sum();
        let short = ordered_product(
            &fs[..20],
            &TailPolicy {
                tail_mass: tail,
                ..TailPolicy::default()
            },
        )
        .unwrap();
        let c: f64 = fs[..20].iter().map(|f| 1.0 + f.deviation).product();
        assert!(short.value.distance(&full.value) <= c * tail);
        assert!(short.value.distance(&full.value) <= short.error_bound + full.error_bound);
    }

    #[test]
    fn spike_sequence_validation_and_decay() {
        let s = unit_spike();
        assert_eq!(spike_crossing_sequence(&s, &[1.0, 1.0]), Err(Error::InvalidDepths));
        let depths: Vec<f64> = (1..=30).map(f64::from).collect();
        let fs = spike_crossing_sequence(&s, &depths).unwrap();
        for w in fs.windows(2) {
            assert!(w[1].deviation <= w[0].deviation * (-1f64).exp() * (1.0 + 1e-6));
        }
    }

    #[test]
    fn adjacent_chain_recovers_shear() {
        let t0 = IdealTriangle::from_reals(-1.3, 0.4, 2.0).unwrap();
        for (side, s) in [(0, 0.7), (1, -1.1), (2, 2.4)] {
            let t1 = develop_step(&t0, side, s).unwrap();
            let chain = TransportChain::adjacent(vec![t0, t1]).unwrap();
            let v = shear_via_transport(&chain, &TailPolicy::default()).unwrap();
            assert!((v.value - s).abs() < 1e-12);
            assert!((v.value - shear_between_adjacent(&t0, &t1).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn chain_through_spikes_adds_shears() {
        let t0 = IdealTriangle::standard();
        let t1 = develop_step(&t0, 1, 0.4).unwrap();
        // Leave t1 through each of its two other sides.
        for exit in [1, 2] {
            let t2 = develop_step(&t1, exit, -0.9).unwrap();
            let direct = TransportChain {
                stations: vec![t0, t2],
                arcs: vec![ConnectingArc::through(&[t0, t1, t2]).unwrap()],
            };
            let stepwise = TransportChain::adjacent(vec![t0, t1, t2]).unwrap();
            let a = shear_via_transport(&direct, &TailPolicy::default()).unwrap();
            let b = shear_via_transport(&stepwise, &TailPolicy::default()).unwrap();
            assert!((a.value - b.value).abs() < 1e-12, "exit {exit}");
            assert!((a.value - (0.4 - 0.9)).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatched_arc_is_rejected() {
        let t0 = IdealTriangle::standard();
        let t1 = develop_step(&t0, 1, 0.4).unwrap();
        let far = develop_step(&t1, 2, 1.0).unwrap();
        let chain = TransportChain {
            stations: vec![t0, far],
            arcs: vec![ConnectingArc::adjacent(1, 0)],
        };
        assert!(matches!(
            shear_via_transport(&chain, &TailPolicy::default()),
            Err(Error::InvalidChain(_))
        ));
    }

    proptest! {
        #[test]
        fn removing_one_factor_obeys_product_bound(
            params in prop::collection::vec((-0.3f64..0.3, -0.3f64..0.3, -0.3f64..0.3), 1..12),
            pick in 0usize..12,
        ) {
            let mut fs: Vec<CrossingFactor> = params.iter().enumerate().map(|(k, (x, y, z))| {
                let m = MoebiusTransform::parabolic(*x)
                    .compose(&MoebiusTransform::lower_parabolic(*y))
                    .compose(&MoebiusTransform::geodesic_flow(*z));
                CrossingFactor::new(m, k as f64)
            }).collect();
            let total: f64 = fs.iter().map(|f| f.deviation).sum();
            if total > 1.0 {
                let scale = 1.0 / total;
                fs = params.iter().enumerate().map(|(k, (x, y, z))| {
                    let m = MoebiusTransform::parabolic(x * scale * 0.5)
                        .compose(&MoebiusTransform::lower_parabolic(y * scale * 0.5))
                        .compose(&MoebiusTransform::geodesic_flow(z * scale * 0.5));
                    CrossingFactor::new(m, k as f64)
                }).collect();
            }
            let pick = pick % fs.len();
            let all = ordered_product(&fs, &TailPolicy::default()).unwrap();
            let mut rest = fs.clone();
            let removed = rest.remove(pick);
            let without = ordered_product(&rest, &TailPolicy::default()).unwrap();
            let c: f64 = fs.iter().map(|f| 1.0 + f.deviation).product();
            prop_assert!(all.value.distance(&without.value) <= c * removed.deviation + 1e-15);
        }

        #[test]
        fn transport_is_isometry_invariant(s1 in -2.0f64..2.0, s2 in -2.0f64..2.0, exit in 1usize..3,
                                           a in -1.0f64..1.0, b in -1.0f64..1.0) {
            let g = MoebiusTransform::parabolic(a).compose(&MoebiusTransform::geodesic_flow(b));
            let t0 = g.apply(&IdealTriangle::standard());
            let t1 = develop_step(&t0, 1, s1).unwrap();
            let t2 = develop_step(&t1, exit, s2).unwrap();
            let chain = TransportChain {
                stations: vec![t0, t2],
                arcs: vec![ConnectingArc::through(&[t0, t1, t2]).unwrap()],
            };
            let v = shear_via_transport(&chain, &TailPolicy::default()).unwrap();
            prop_assert!((v.value - (s1 + s2)).abs() < 1e-9);
        }
    }
}
