//! Exhaustive enumeration of unimodular triangulations of the junior simplex.
//!
//! The search is an advancing front over the cross-section `x+y+z = r`: the
//! lexicographically smallest open edge is always closed next, trying every
//! unimodular triangle on its open side in lexicographic order. The result
//! order is therefore deterministic.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{junior_points, FanError, ResolutionFan};
use crate::lattice::{det3, QuotientWeights, ScaledLattice, Vec3};

pub const DEFAULT_ORDER_BOUND: i64 = 60;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("group order {order} exceeds the search bound {bound}; exhaustive search refused")]
    OrderTooLarge { order: i64, bound: i64 },
    #[error(transparent)]
    Fan(#[from] FanError),
}

type Edge = (usize, usize);

const PLUS: u8 = 1;
const MINUS: u8 = 2;

fn sign_bit(s: i64) -> u8 {
    if s > 0 {
        PLUS
    } else {
        MINUS
    }
}

fn flip(bit: u8) -> u8 {
    bit ^ (PLUS | MINUS)
}

struct Search<'a> {
    pts: &'a [Vec3],
    by_edge: BTreeMap<Edge, Vec<[usize; 3]>>,
    limit: usize,
    found: Vec<Vec<[usize; 3]>>,
}

#[derive(Clone)]
struct Front {
    /// Open edge → side (as sign bit) on which a triangle is still missing.
    open: BTreeMap<Edge, u8>,
    /// Edge → sides already covered.
    filled: BTreeMap<Edge, u8>,
    placed: Vec<[usize; 3]>,
}

impl Search<'_> {
    fn orient(&self, a: usize, b: usize, c: usize) -> i64 {
        det3(self.pts[a], self.pts[b], self.pts[c]).signum()
    }

    fn crosses(&self, (p1, p2): Edge, (q1, q2): Edge) -> bool {
        let d1 = self.orient(q1, q2, p1);
        let d2 = self.orient(q1, q2, p2);
        let d3 = self.orient(p1, p2, q1);
        let d4 = self.orient(p1, p2, q2);
        d1 * d2 < 0 && d3 * d4 < 0
    }

    fn run(&mut self, front: &mut Front) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some((&edge, &side)) = front.open.iter().next() else {
            let mut tri = front.placed.clone();
            tri.sort_unstable();
            self.found.push(tri);
            return;
        };
        let candidates = self.by_edge.get(&edge).cloned().unwrap_or_default();
        'tri: for t in candidates {
            let apex = t.iter().copied().find(|&v| v != edge.0 && v != edge.1).unwrap();
            if sign_bit(self.orient(edge.0, edge.1, apex)) != side {
                continue;
            }
            let mut new_edges = Vec::with_capacity(2);
            for end in [edge.0, edge.1] {
                let f = (end.min(apex), end.max(apex));
                let other = if end == edge.0 { edge.1 } else { edge.0 };
                let s = sign_bit(self.orient(f.0, f.1, other));
                let filled = front.filled.get(&f).copied().unwrap_or(0);
                if filled & s != 0 {
                    continue 'tri;
                }
                if filled == 0
                    && front.filled.keys().any(|&g| {
                        g.0 != f.0 && g.0 != f.1 && g.1 != f.0 && g.1 != f.1 && self.crosses(f, g)
                    })
                {
                    continue 'tri;
                }
                new_edges.push((f, s));
            }
            let saved = front.clone();
            front.open.remove(&edge);
            *front.filled.entry(edge).or_default() |= side;
            for (f, s) in new_edges {
                let mask = front.filled.entry(f).or_default();
                *mask |= s;
                if *mask == PLUS | MINUS {
                    front.open.remove(&f);
                } else {
                    front.open.insert(f, flip(s));
                }
            }
            front.placed.push(t);
            self.run(front);
            *front = saved;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// All unimodular triangulations using the three axis rays and every junior
/// point, at most `limit` of them. Ray ids are `x`, `y`, `z` for the axes and
/// `j{k}` for junior points.
pub fn find_unimodular_triangulations(
    w: &QuotientWeights,
    limit: usize,
    bound: i64,
) -> Result<Vec<ResolutionFan>, SearchError> {
    let r = w.order();
    if r > bound {
        return Err(SearchError::OrderTooLarge { order: r, bound });
    }
    let lattice = ScaledLattice::of(w);
    let mut ids = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    let mut pts: Vec<Vec3> = vec![[r, 0, 0], [0, r, 0], [0, 0, r]];
    for ray in junior_points(w) {
        ids.push(ray.id);
        pts.push(ray.coords);
    }
    let n = pts.len();
    let mut by_edge: BTreeMap<Edge, Vec<[usize; 3]>> = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if lattice.lattice_det(pts[a], pts[b], pts[c]).map(i64::abs) == Some(1) {
                    for e in [(a, b), (a, c), (b, c)] {
                        by_edge.entry(e).or_default().push([a, b, c]);
                    }
                }
            }
        }
    }
    let mut search = Search { pts: &pts, by_edge, limit, found: Vec::new() };
    let mut front = Front { open: BTreeMap::new(), filled: BTreeMap::new(), placed: Vec::new() };
    for (e, opposite) in [((0, 1), 2), ((0, 2), 1), ((1, 2), 0)] {
        let inward = sign_bit(search.orient(e.0, e.1, opposite));
        front.open.insert(e, inward);
        front.filled.insert(e, flip(inward));
    }
    search.run(&mut front);

    let rays: Vec<(String, Vec3)> = ids.iter().cloned().zip(pts.iter().copied()).collect();
    search
        .found
        .into_iter()
        .enumerate()
        .map(|(k, tri)| {
            let cones = tri.iter().map(|t| t.map(|i| ids[i].clone())).collect();
            let label = format!("triangulation-{k}");
            ResolutionFan::new(label, *w, rays.clone(), cones).map_err(SearchError::from)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_has_one_triangulation() {
        let w = QuotientWeights::new(3, [1, 1, 1]).unwrap();
        let fans = find_unimodular_triangulations(&w, 100, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(fans.len(), 1);
        assert!(fans[0].validate().is_valid());
    }

    #[test]
    fn every_result_is_valid_and_distinct() {
        let w = QuotientWeights::new(13, [1, 3, 9]).unwrap();
        let fans = find_unimodular_triangulations(&w, 100, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(fans.len(), 7);
        let mut seen = std::collections::BTreeSet::new();
        for f in &fans {
            assert!(f.validate().is_valid(), "{:?}", f.validate());
            assert!(seen.insert(f.cone_coordinates()));
        }
    }

    #[test]
    fn limit_and_bound_are_respected() {
        let w = QuotientWeights::new(13, [1, 3, 9]).unwrap();
        assert_eq!(find_unimodular_triangulations(&w, 2, 60).unwrap().len(), 2);
        assert!(matches!(
            find_unimodular_triangulations(&w, 2, 10),
            Err(SearchError::OrderTooLarge { order: 13, bound: 10 })
        ));
    }
}
