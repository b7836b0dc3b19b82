use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::isogeny::velu2_fq;
use crate::elliptic::{sylow2_shape, trace_of_frobenius, ReducedCurve, SylowShape, TraceData};
use crate::error::{internal, usage, Result};
use crate::numtheory::{distinct_roots, squarefree_part, v2, Fe};

#[derive(Clone, Debug)]
pub struct VolcanoNode {
    pub j: Fe,
    /// A model with this `j`-invariant, as reached by the walk.
    pub curve: ReducedCurve,
    pub shape: SylowShape,
    /// Distance to the floor.
    pub level: u32,
}

/// The connected component of the 2-isogeny graph over `F_q` containing a
/// given ordinary curve.
#[derive(Clone, Debug)]
pub struct Volcano {
    pub p: u64,
    pub degree: u8,
    /// Common group order of every node.
    pub order: u128,
    /// Trace of Frobenius over `F_q`.
    pub trace: i128,
    pub nodes: Vec<VolcanoNode>,
    /// Undirected, without loops or repeats.
    pub edges: Vec<(usize, usize)>,
    pub height: u32,
}

/// Height of the 2-volcano from the trace: with `t² - 4q = 2^v·u` and `D`
/// its squarefree part, `v` is `2H`, `2H + 2` or `2H + 3` according as
/// `D ≡ 1, 3, 2 (mod 4)`.
pub fn kohel_height(t: i128, q: u128) -> Result<u32> {
    let q = i128::try_from(q).map_err(|_| usage!("q too large"))?;
    let disc = t * t - 4 * q;
    if disc >= 0 {
        return Err(usage!("t² - 4q = {disc} is not negative: supersingular or invalid trace"));
    }
    let v = v2(disc)?;
    let d = squarefree_part(disc)?;
    let offset = match d.rem_euclid(4) {
        1 => 0,
        3 => 2,
        _ => 3,
    };
    if v < offset || (v - offset) % 2 == 1 {
        return Err(internal!("inconsistent 2-adic valuation {v} for D = {d}"));
    }
    Ok((v - offset) / 2)
}

/// Walk the 2-isogeny graph from `E`, keyed by `j`-invariant.
///
/// Over `F_{p²}` the curve must be defined over `F_p` so that the group order
/// follows from the trace over `F_p`. Floor nodes are those with cyclic
/// 2-Sylow; this is cross-checked against having at most one rational
/// 2-torsion point.
pub fn build_volcano(e: &ReducedCurve) -> Result<Volcano> {
    let f = e.field();
    let p = f.p();
    let base = if f.degree() == 1 {
        *e
    } else if e.a.in_base_field() && e.b.in_base_field() {
        e.base_change(1)
    } else {
        return Err(usage!("volcanoes over F_(p^2) need a curve defined over F_p"));
    };
    let td: TraceData = trace_of_frobenius(&base)?;
    // ap ≡ 0 (mod p) covers p = 3, where the library predicate is not defined.
    if td.ap.rem_euclid(p as i64) == 0 {
        return Err(usage!("supersingular reduction at p = {p}"));
    }
    let (order, trace) = if f.degree() == 1 { (td.np as u128, td.ap as i128) } else { (td.np2, td.ap2()) };

    let mut nodes: Vec<VolcanoNode> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut root_counts: Vec<usize> = Vec::new();
    let push = |nodes: &mut Vec<VolcanoNode>, c: ReducedCurve| -> Result<usize> {
        let shape = sylow2_shape(&c, order)?;
        nodes.push(VolcanoNode { j: c.j_invariant(), curve: c, shape, level: u32::MAX });
        Ok(nodes.len() - 1)
    };
    push(&mut nodes, *e)?;
    let mut i = 0;
    while i < nodes.len() {
        let c = nodes[i].curve;
        let rs = distinct_roots(&c.cubic());
        root_counts.push(rs.len());
        for x0 in rs {
            let img = velu2_fq(&c, x0)?;
            let j = img.j_invariant();
            let k = match nodes.iter().position(|n| n.j == j) {
                Some(k) => k,
                None => push(&mut nodes, img)?,
            };
            let edge = (i.min(k), i.max(k));
            if i != k && !edges.contains(&edge) {
                edges.push(edge);
            }
        }
        i += 1;
    }

    let mut queue = VecDeque::new();
    for (k, n) in nodes.iter_mut().enumerate() {
        if n.shape.is_cyclic() != (root_counts[k] <= 1) {
            return Err(internal!("floor criteria disagree at j = {}", n.j));
        }
        if n.shape.is_cyclic() {
            n.level = 0;
            queue.push_back(k);
        }
    }
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); nodes.len()];
    for &(u, w) in &edges {
        adj[u].push(w);
        adj[w].push(u);
    }
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if nodes[w].level == u32::MAX {
                nodes[w].level = nodes[u].level + 1;
                queue.push_back(w);
            }
        }
    }
    if nodes.iter().any(|n| n.level == u32::MAX) {
        return Err(internal!("volcano has nodes that cannot reach the floor"));
    }
    let height = nodes.iter().map(|n| n.level).max().unwrap_or(0);
    Ok(Volcano { p, degree: f.degree(), order, trace, nodes, edges, height })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::Fq;

    #[test]
    fn kohel_examples() {
        assert_eq!(kohel_height(-3, 5).unwrap(), 0);
        assert_eq!(kohel_height(2, 5).unwrap(), 1);
        assert!(kohel_height(0, 4).is_ok());
        assert!(kohel_height(4, 4).is_err());
        // t ≡ 2 mod 4: the height grows by one over F_{p²}
        for (t, p) in [(2i128, 5u128), (6, 13), (-2, 17), (10, 29)] {
            assert_eq!(kohel_height(t * t - 2 * p as i128, p * p).unwrap(), kohel_height(t, p).unwrap() + 1);
        }
    }

    #[test]
    fn small_volcano() {
        let f = Fq::prime(5).unwrap();
        let e = ReducedCurve::new(f.from_u64(1), f.from_u64(2)).unwrap();
        let v = build_volcano(&e).unwrap();
        assert_eq!(v.trace, 2);
        assert_eq!(v.height, 1);
        assert_eq!(v.height, kohel_height(2, 5).unwrap());
        for n in &v.nodes {
            assert_eq!(n.level == 0, n.shape.is_cyclic());
        }
        for &(u, w) in &v.edges {
            let (a, b) = (v.nodes[u].level, v.nodes[w].level);
            assert!(a.abs_diff(b) == 1 || a == b && a == v.height);
        }
    }
}
