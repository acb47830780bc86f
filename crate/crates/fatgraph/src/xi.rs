//! The homology-valued invariant of a trivalent spine and its identities:
//! the per-vertex formula, the coboundary identity against the flip
//! cocycles, the mod-2 shortcut, gluing and tail-slide behavior, and the
//! extension to punctured spines.

use crate::cocycle::cocycle_values;
use crate::error::GraphError;
use crate::graph::{BoundaryOrder, Dart, Fatgraph, FlipMove, GraphKind};
use crate::marking::{
    class_of_cycle, initial_marking, pair_with_cycle, transport_marking, HomologyClass, Marking,
    Mod2Class,
};

/// The invariant with its per-vertex breakdown.
#[derive(Clone, Debug)]
pub struct XiResult {
    pub xi: HomologyClass,
    pub xi_mod2: Mod2Class,
    /// (vertex, e_v, f_v, contribution) for each trivalent vertex.
    pub per_vertex: Vec<(usize, Dart, Dart, HomologyClass)>,
}

/// The invariant of a bordered trivalent spine: the sum over trivalent
/// vertices of mu(e_v) - mu(f_v), with (e_v, f_v) read off the vertex
/// frame by type.
pub fn xi(graph: &Fatgraph, bo: &BoundaryOrder, m: &Marking) -> Result<XiResult, GraphError> {
    let frames = graph.classify_vertices(bo)?;
    let mut total = HomologyClass::zero(m.rank());
    let mut per_vertex = Vec::with_capacity(frames.len());
    for f in frames {
        let (ev, fv) = f.contribution_darts();
        let contrib = m.mu(ev).sub(m.mu(fv))?;
        total = total.add(&contrib)?;
        per_vertex.push((f.vertex, ev, fv, contrib));
    }
    let xi_mod2 = total.mod2();
    Ok(XiResult {
        xi: total,
        xi_mod2,
        per_vertex,
    })
}

/// The mod-2 reduction computed directly as the sum of mod-2 markings
/// over unoriented edges.
pub fn xi_mod2_direct(graph: &Fatgraph, m: &Marking) -> Mod2Class {
    let mut acc = Mod2Class::zero(m.rank());
    for e in 0..graph.num_edges() {
        acc = acc.add(&m.mu_mod2_edge(e));
    }
    acc
}

/// The coboundary identity on one flip: the invariant's change equals
/// twice the contracted cocycle minus the other one.
pub fn check_delta(mv: &FlipMove, m: &Marking) -> Result<bool, GraphError> {
    let bo_src = mv.source.boundary_order()?;
    let xi_src = xi(&mv.source, &bo_src, m)?;
    let m2 = transport_marking(m, mv)?;
    let bo_dst = mv.result.boundary_order()?;
    let xi_dst = xi(&mv.result, &bo_dst, &m2)?;
    let val = cocycle_values(m, mv)?;
    let rhs = val.jprime.scale(2)?.sub(&val.m)?;
    Ok(xi_dst.xi.sub(&xi_src.xi)? == rhs)
}

/// The tail-slide identity: the invariant gains the marking of the dart
/// two steps counterclockwise past the slid edge.
pub fn check_tail_slide(graph: &Fatgraph) -> Result<bool, GraphError> {
    let bo = graph.boundary_order()?;
    let m = initial_marking(graph, &bo)?;
    let (mv, c) = graph.tail_slide()?;
    let xi_src = xi(graph, &bo, &m)?;
    let m2 = transport_marking(&m, &mv)?;
    let bo2 = mv.result.boundary_order()?;
    let xi_dst = xi(&mv.result, &bo2, &m2)?;
    Ok(xi_dst.xi == xi_src.xi.add(m.mu(c))?)
}

/// Fundamental cycles of the greedy tree as dart walks.
pub fn fundamental_cycles(graph: &Fatgraph, bo: &BoundaryOrder) -> Vec<Vec<Dart>> {
    let tree = graph.greedy_tree(bo);
    tree.non_tree
        .iter()
        .map(|&f| tree_cycle(graph, &tree.in_tree, f))
        .collect()
}

/// Closed walk: the dart plus the tree path from its head to its start.
fn tree_cycle(graph: &Fatgraph, in_tree: &[bool], f: Dart) -> Vec<Dart> {
    let mut walk = vec![f];
    walk.extend(tree_path(
        graph,
        in_tree,
        graph.head(f),
        graph.head(f.rev()),
    ));
    walk
}

/// Dart path between two vertices through tree edges.
pub fn tree_path(graph: &Fatgraph, in_tree: &[bool], from: usize, to: usize) -> Vec<Dart> {
    // Breadth-first search restricted to tree edges.
    let mut prev: Vec<Option<Dart>> = vec![None; graph.num_vertices()];
    let mut seen = vec![false; graph.num_vertices()];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &d in graph.vertex(v) {
            let out = d.rev();
            if !in_tree[out.edge()] {
                continue;
            }
            let u = graph.head(out);
            if !seen[u] {
                seen[u] = true;
                prev[u] = Some(out);
                queue.push_back(u);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let d = prev[v].expect("tree spans the graph");
        path.push(d);
        v = graph.head(d.rev());
    }
    path.reverse();
    path
}

/// The punctured invariant, reported as the pairing vector of the class
/// against the fundamental cycles of a fixed spanning tree of the
/// punctured spine (a basis, so the vector determines the class).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedXi {
    pub pairings: Vec<i64>,
    pub mod2: Vec<u8>,
}

impl PuncturedXi {
    pub fn is_zero(&self) -> bool {
        self.pairings.iter().all(|&x| x == 0)
    }

    pub fn mod2_is_zero(&self) -> bool {
        self.mod2.iter().all(|&b| b == 0)
    }
}

/// Evaluate the punctured invariant through the bordered lift at `at`.
pub fn xi_punctured_at(graph: &Fatgraph, at: Dart) -> Result<PuncturedXi, GraphError> {
    if graph.kind() != GraphKind::Punctured {
        return Err(GraphError::InvalidInputs {
            detail: "punctured invariant needs a punctured spine".into(),
        });
    }
    let cycles = punctured_cycle_basis(graph);
    xi_punctured_against(graph, at, &cycles)
}

/// Same, but pairing against caller-supplied cycles of the punctured
/// spine (used for the independence check so every anchor is compared
/// against one fixed basis).
pub fn xi_punctured_against(
    graph: &Fatgraph,
    at: Dart,
    cycles: &[Vec<Dart>],
) -> Result<PuncturedXi, GraphError> {
    let lift = graph.attach_tail(at)?;
    lift.validate()?;
    let bo = lift.boundary_order()?;
    let m = initial_marking(&lift, &bo)?;
    let x = xi(&lift, &bo, &m)?;
    // The lift halves the chosen edge; both halves carry its marking.
    let second_half = Dart(2 * graph.num_edges());
    debug_assert_eq!(m.mu(at), m.mu(second_half));
    let class = x.xi.sub(m.mu(at))?;
    let mut pairings = Vec::with_capacity(cycles.len());
    for cyc in cycles {
        let lifted = lift_walk(graph, at, cyc);
        pairings.push(pair_with_cycle(&lift, &m, &class, &lifted)?);
    }
    let mod2 = pairings.iter().map(|&x| (x.rem_euclid(2)) as u8).collect();
    Ok(PuncturedXi { pairings, mod2 })
}

/// Default evaluation: lift at the lowest dart of the canonical
/// labeling, pairing against the canonical cycle basis, so isomorphic
/// inputs report identical vectors.
pub fn xi_punctured(graph: &Fatgraph) -> Result<PuncturedXi, GraphError> {
    let canon = graph.canonical_graph()?;
    xi_punctured_at(&canon, Dart(0))
}

/// Fundamental cycles of a deterministic spanning tree of a punctured
/// spine.
pub fn punctured_cycle_basis(graph: &Fatgraph) -> Vec<Vec<Dart>> {
    let in_tree = graph.bfs_tree();
    (0..graph.num_edges())
        .filter(|&e| !in_tree[e])
        .map(|e| tree_cycle(graph, &in_tree, Dart(2 * e)))
        .collect()
}

/// Rewrite a walk of the punctured spine as a walk of its lift at `at`:
/// traversals of the subdivided edge pass through both halves.
fn lift_walk(graph: &Fatgraph, at: Dart, walk: &[Dart]) -> Vec<Dart> {
    let second = Dart(2 * graph.num_edges());
    let mut out = Vec::with_capacity(walk.len() + 2);
    for &d in walk {
        if d == at {
            out.push(d);
            out.push(second);
        } else if d == at.rev() {
            out.push(second.rev());
            out.push(d);
        } else {
            out.push(d);
        }
    }
    out
}

/// Independence of the punctured invariant from the chosen dart: every
/// anchor yields the same pairing vector against one fixed cycle basis.
pub fn check_punctured_independence(graph: &Fatgraph) -> Result<bool, GraphError> {
    let cycles = punctured_cycle_basis(graph);
    let reference = xi_punctured_against(graph, Dart(0), &cycles)?;
    for d in graph.darts().skip(1) {
        if xi_punctured_against(graph, d, &cycles)? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The balance criterion: the mod-2 invariant vanishes exactly on
/// balanced punctured spines.
pub fn check_balanced_criterion(graph: &Fatgraph) -> Result<bool, GraphError> {
    let bo = graph.boundary_order()?;
    let balanced = graph.is_balanced(&bo)?;
    let x = xi_punctured(graph)?;
    Ok(balanced == x.mod2_is_zero())
}

/// The gluing identity, verified through pairing vectors: host-supported
/// cycles see the host invariant shifted by the glue dart's marking, and
/// guest-supported cycles see the guest invariant.
pub fn check_gluing(host: &Fatgraph, at: Dart, guest: &Fatgraph) -> Result<bool, GraphError> {
    let (glued, _, guest_map) = host.glue(at, guest)?;
    let bo_g = glued.boundary_order()?;
    let m_g = initial_marking(&glued, &bo_g)?;
    let xi_g = xi(&glued, &bo_g, &m_g)?;

    let bo_h = host.boundary_order()?;
    let m_h = initial_marking(host, &bo_h)?;
    let xi_h = xi(host, &bo_h, &m_h)?;
    let shifted = xi_h.xi.add(m_h.mu(at))?;

    // Host cycles, rewritten through the subdivided edge.
    for cyc in fundamental_cycles(host, &bo_h) {
        let lifted = lift_walk(host, at, &cyc);
        let lhs = pair_with_cycle(&glued, &m_g, &xi_g.xi, &lifted)?;
        let rhs = pair_with_cycle(host, &m_h, &shifted, &cyc)?;
        if lhs != rhs {
            return Ok(false);
        }
    }

    let bo_gu = guest.boundary_order()?;
    let m_gu = initial_marking(guest, &bo_gu)?;
    let xi_gu = xi(guest, &bo_gu, &m_gu)?;
    for cyc in fundamental_cycles(guest, &bo_gu) {
        let mapped: Vec<Dart> = cyc.iter().map(|&d| guest_map.apply(d)).collect();
        let lhs = pair_with_cycle(&glued, &m_g, &xi_g.xi, &mapped)?;
        let rhs = pair_with_cycle(guest, &m_gu, &xi_gu.xi, &cyc)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The class of a closed walk, exposed for reports.
pub fn cycle_class(
    graph: &Fatgraph,
    m: &Marking,
    walk: &[Dart],
) -> Result<HomologyClass, GraphError> {
    class_of_cycle(graph, m, walk)
}

/// Mod-2 pairing of the invariant against an odd edge cycle; the
/// non-triviality witness pairs to one.
pub fn odd_cycle_pairing(
    graph: &Fatgraph,
    bo: &BoundaryOrder,
    m: &Marking,
) -> Result<i64, GraphError> {
    let cyc = graph.find_odd_edge_cycle(bo);
    let x = xi(graph, bo, m)?;
    let v = pair_with_cycle(graph, m, &x.xi, &cyc)?;
    Ok(v.rem_euclid(2))
}
