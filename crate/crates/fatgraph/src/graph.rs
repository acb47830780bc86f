//! Combinatorial maps for fatgraph spines.
//!
//! A spine is stored as a rotation system: a partition of the darts
//! `0..2E` into cyclic sequences, one per vertex, listed counterclockwise
//! with respect to the surface orientation. Darts `2k` and `2k+1` are the
//! two orientations of the unoriented edge `k`; reversal is `id ^ 1`.
//!
//! Bordered spines have exactly one univalent vertex (the endpoint of the
//! tail edge on the boundary) and all other vertices trivalent. Punctured
//! spines are trivalent throughout. In both cases the complement of the
//! spine in the surface is a disk, which combinatorially means the
//! boundary walk is a single cycle through all `2E` darts.

use crate::error::GraphError;
use std::fmt;

/// One of the two orientations of an edge. Reversal is `id ^ 1`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn rev(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// Index of the underlying unoriented edge.
    #[inline]
    pub fn edge(self) -> usize {
        self.0 >> 1
    }

    /// True if this is the even dart of its edge.
    #[inline]
    pub fn is_even(self) -> bool {
        self.0 & 1 == 0
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum GraphKind {
    Bordered,
    Punctured,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Bordered => write!(f, "bordered"),
            GraphKind::Punctured => write!(f, "punctured"),
        }
    }
}

/// A fatgraph spine. Immutable after construction; every operation that
/// changes the graph returns a new value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fatgraph {
    kind: GraphKind,
    /// Incoming darts at each vertex, counterclockwise.
    vertices: Vec<Vec<Dart>>,
    /// Next incoming dart counterclockwise at the same vertex.
    sigma: Vec<Dart>,
    /// Vertex holding each dart.
    vertex_of: Vec<usize>,
}

impl Fatgraph {
    /// Build from vertex cycles. Fails if the darts `0..2E` do not occur
    /// exactly once across the cycles.
    pub fn new(kind: GraphKind, vertices: Vec<Vec<Dart>>) -> Result<Fatgraph, GraphError> {
        let n: usize = vertices.iter().map(|c| c.len()).sum();
        if n == 0 || n % 2 != 0 {
            return Err(GraphError::MalformedPermutation {
                detail: format!("dart count {n} is not a positive even number"),
            });
        }
        let mut seen = vec![false; n];
        for cyc in &vertices {
            for &d in cyc {
                if d.0 >= n {
                    return Err(GraphError::MalformedPermutation {
                        detail: format!("dart {d} out of range 0..{n}"),
                    });
                }
                if seen[d.0] {
                    return Err(GraphError::MalformedPermutation {
                        detail: format!("dart {d} occurs twice"),
                    });
                }
                seen[d.0] = true;
            }
        }
        let mut sigma = vec![Dart(0); n];
        let mut vertex_of = vec![0usize; n];
        for (v, cyc) in vertices.iter().enumerate() {
            for (i, &d) in cyc.iter().enumerate() {
                sigma[d.0] = cyc[(i + 1) % cyc.len()];
                vertex_of[d.0] = v;
            }
        }
        Ok(Fatgraph {
            kind,
            vertices,
            sigma,
            vertex_of,
        })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.num_darts()).map(Dart)
    }

    /// Incoming darts at vertex `v`, counterclockwise.
    pub fn vertex(&self, v: usize) -> &[Dart] {
        &self.vertices[v]
    }

    pub fn vertex_cycles(&self) -> &[Vec<Dart>] {
        &self.vertices
    }

    /// Next incoming dart counterclockwise after `d` at `d`'s head.
    #[inline]
    pub fn next_at_vertex(&self, d: Dart) -> Dart {
        self.sigma[d.0]
    }

    /// The vertex `d` points at.
    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.vertex_of[d.0]
    }

    /// The vertex `d` points away from.
    #[inline]
    pub fn tail_vertex(&self, d: Dart) -> usize {
        self.vertex_of[d.0 ^ 1]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// The dart sitting at the univalent vertex of a bordered spine.
    pub fn tail(&self) -> Option<Dart> {
        if self.kind != GraphKind::Bordered {
            return None;
        }
        self.vertices.iter().find(|c| c.len() == 1).map(|c| c[0])
    }

    /// Genus from the Euler characteristic, assuming a single boundary
    /// cycle: `g = (E − V + 1) / 2`.
    pub fn genus(&self) -> usize {
        (self.num_edges() - self.num_vertices() + 1) / 2
    }

    /// Successor of `d` in the boundary walk: the walk traverses `d` up to
    /// its head and turns through the corner onto the next edge.
    #[inline]
    pub fn walk_next(&self, d: Dart) -> Dart {
        self.sigma[d.0].rev()
    }

    /// Check every spine invariant, reporting the first violation.
    pub fn validate(&self) -> Result<ValidationReport, GraphError> {
        // Valences.
        let mut univalent = Vec::new();
        for (v, cyc) in self.vertices.iter().enumerate() {
            match cyc.len() {
                1 => univalent.push(v),
                3 => {}
                k => {
                    return Err(GraphError::BadValence {
                        vertex: v,
                        valence: k,
                    })
                }
            }
        }
        match self.kind {
            GraphKind::Bordered => {
                if univalent.len() != 1 {
                    return Err(GraphError::BadValence {
                        vertex: *univalent.first().unwrap_or(&0),
                        valence: 1,
                    });
                }
            }
            GraphKind::Punctured => {
                if let Some(&v) = univalent.first() {
                    return Err(GraphError::BadValence {
                        vertex: v,
                        valence: 1,
                    });
                }
            }
        }
        // Connectivity.
        let mut seen = vec![false; self.num_vertices()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.vertices[v] {
                let u = self.head(d.rev());
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::Disconnected { vertex: v });
        }
        // Single boundary cycle.
        let mut visited = vec![false; self.num_darts()];
        let mut d = Dart(0);
        let mut steps = 0usize;
        loop {
            if visited[d.0] {
                break;
            }
            visited[d.0] = true;
            steps += 1;
            d = self.walk_next(d);
        }
        if steps != self.num_darts() {
            let stray = Dart(visited.iter().position(|v| !v).unwrap());
            return Err(GraphError::MultipleBoundaryCycles { dart: stray.0 });
        }
        // Genus bookkeeping.
        let v = self.num_vertices();
        let e = self.num_edges();
        if (e + 1)
            .checked_sub(v)
            .map_or(true, |x| x % 2 != 0 || x == 0)
        {
            return Err(GraphError::BadGenus {
                vertices: v,
                edges: e,
            });
        }
        let genus = (e + 1 - v) / 2;
        let expected = match self.kind {
            GraphKind::Bordered => (4 * genus, 6 * genus - 1),
            GraphKind::Punctured => (4 * genus - 2, 6 * genus - 3),
        };
        if (v, e) != expected {
            return Err(GraphError::BadGenus {
                vertices: v,
                edges: e,
            });
        }
        Ok(ValidationReport {
            kind: self.kind,
            genus,
            vertices: v,
            edges: e,
        })
    }

    /// The boundary walk. Bordered: a total order starting at the tail
    /// dart pointing into the graph. Punctured: a cyclic order anchored at
    /// dart 0.
    pub fn boundary_order(&self) -> Result<BoundaryOrder, GraphError> {
        let start = match self.kind {
            GraphKind::Bordered => self
                .tail()
                .ok_or(GraphError::BadValence {
                    vertex: 0,
                    valence: 0,
                })?
                .rev(),
            GraphKind::Punctured => Dart(0),
        };
        self.boundary_order_from(start)
    }

    /// Boundary walk anchored at a chosen dart.
    pub fn boundary_order_from(&self, start: Dart) -> Result<BoundaryOrder, GraphError> {
        let n = self.num_darts();
        let mut order = Vec::with_capacity(n);
        let mut position = vec![usize::MAX; n];
        let mut d = start;
        for i in 0..n {
            if position[d.0] != usize::MAX {
                return Err(GraphError::MultipleBoundaryCycles { dart: d.0 });
            }
            position[d.0] = i;
            order.push(d);
            d = self.walk_next(d);
        }
        if d != start {
            return Err(GraphError::MultipleBoundaryCycles { dart: d.0 });
        }
        Ok(BoundaryOrder { order, position })
    }

    /// Corners: consecutive dart pairs of the boundary walk sharing a
    /// vertex. Bordered spines omit the turn at the univalent vertex,
    /// leaving 3(4g−1) corners; punctured spines have one per walk step.
    pub fn corners(&self, bo: &BoundaryOrder) -> Vec<(Dart, Dart)> {
        let n = self.num_darts();
        let upper = match self.kind {
            GraphKind::Bordered => n - 1,
            GraphKind::Punctured => n,
        };
        (1..=upper)
            .map(|i| (bo.order[i - 1], bo.order[i % n]))
            .collect()
    }

    /// Frames and types for every trivalent vertex of a bordered spine.
    pub fn classify_vertices(&self, bo: &BoundaryOrder) -> Result<Vec<VertexFrame>, GraphError> {
        if self.kind != GraphKind::Bordered {
            return Err(GraphError::NotTrivalent { vertex: 0 });
        }
        let mut frames = Vec::new();
        for (v, cyc) in self.vertices.iter().enumerate() {
            if cyc.len() == 1 {
                continue;
            }
            if cyc.len() != 3 {
                return Err(GraphError::NotTrivalent { vertex: v });
            }
            frames.push(self.frame_at(v, bo));
        }
        Ok(frames)
    }

    /// The frame at a trivalent vertex: incoming darts (e1, e2, e3) with
    /// e1 first in the boundary order and e2 next counterclockwise.
    pub fn frame_at(&self, v: usize, bo: &BoundaryOrder) -> VertexFrame {
        let cyc = &self.vertices[v];
        debug_assert_eq!(cyc.len(), 3);
        let e1 = *cyc.iter().min_by_key(|d| bo.position[d.0]).unwrap();
        let e2 = self.next_at_vertex(e1);
        let e3 = self.next_at_vertex(e2);
        // A dart is preferred when it comes before its reversal; a type-i
        // vertex has exactly i preferred incoming darts.
        let pref = |d: Dart| bo.position[d.0] < bo.position[d.rev().0];
        let count = [e1, e2, e3].iter().filter(|&&d| pref(d)).count();
        let vtype = match count {
            1 => VertexType::Type1,
            2 => VertexType::Type2,
            _ => unreachable!("trivalent vertex with {count} preferred incoming darts"),
        };
        debug_assert!({
            let p = |d: Dart| bo.position[d.0];
            match vtype {
                VertexType::Type1 => {
                    p(e1) < p(e2.rev())
                        && p(e2.rev()) < p(e2)
                        && p(e2) < p(e3.rev())
                        && p(e3.rev()) < p(e3)
                        && p(e3) < p(e1.rev())
                }
                VertexType::Type2 => {
                    p(e1) < p(e2.rev())
                        && p(e2.rev()) < p(e3)
                        && p(e3) < p(e1.rev())
                        && p(e1.rev()) < p(e2)
                        && p(e2) < p(e3.rev())
                }
            }
        });
        VertexFrame {
            vertex: v,
            e1,
            e2,
            e3,
            vtype,
        }
    }

    /// Flip the edge: collapse it and expand the 4-valent vertex the other
    /// way. The new edge reuses the old dart ids; all other darts are
    /// untouched.
    pub fn flip(&self, edge: usize) -> Result<FlipMove, GraphError> {
        let h = Dart(2 * edge);
        let hbar = h.rev();
        if h.0 >= self.num_darts() {
            return Err(GraphError::MalformedPermutation {
                detail: format!("edge {edge} out of range"),
            });
        }
        let x = self.head(h);
        let y = self.head(hbar);
        if x == y {
            return Err(GraphError::LoopEdge { edge });
        }
        if self.valence(x) != 3 || self.valence(y) != 3 {
            return Err(GraphError::TailEdge { edge });
        }
        // Frame per the flip picture: (a, b) follow h counterclockwise at
        // its head, (c, d) follow the reversal at the other end.
        let a = self.next_at_vertex(h);
        let b = self.next_at_vertex(a);
        let c = self.next_at_vertex(hbar);
        let d = self.next_at_vertex(c);
        // New edge: the odd dart points at the vertex gathering (b, c),
        // the even dart at the vertex gathering (d, a).
        let k_bc = Dart(2 * edge + 1);
        let k_da = Dart(2 * edge);
        let mut vertices: Vec<Vec<Dart>> = Vec::with_capacity(self.vertices.len());
        for (v, cyc) in self.vertices.iter().enumerate() {
            if v == x {
                vertices.push(vec![k_bc, b, c]);
            } else if v == y {
                vertices.push(vec![k_da, d, a]);
            } else {
                vertices.push(cyc.clone());
            }
        }
        let result = Fatgraph::new(self.kind, vertices)?;
        Ok(FlipMove {
            source: self.clone(),
            result,
            edge,
            frame: FlipFrame {
                h,
                a,
                b,
                c,
                d,
                into_bc: k_bc,
                into_da: k_da,
            },
        })
    }

    /// The flip along the edge right after the tail in the boundary
    /// order. Also returns the dart two steps counterclockwise past that
    /// edge at its head, whose marking is the invariant's increment.
    pub fn tail_slide(&self) -> Result<(FlipMove, Dart), GraphError> {
        let bo = self.boundary_order()?;
        let e1 = bo.order[1];
        let b = self.next_at_vertex(e1);
        let c = self.next_at_vertex(b);
        let mv = self.flip(e1.edge())?;
        Ok((mv, c))
    }

    /// Plug the tail of `guest` into the right side of the dart `at`,
    /// subdividing its edge at a new trivalent vertex. Returns the glued
    /// graph and the dart maps for both inputs.
    pub fn glue(
        &self,
        at: Dart,
        guest: &Fatgraph,
    ) -> Result<(Fatgraph, DartMap, DartMap), GraphError> {
        if self.kind != GraphKind::Bordered || guest.kind != GraphKind::Bordered {
            return Err(GraphError::InvalidInputs {
                detail: "gluing needs two bordered spines".into(),
            });
        }
        self.validate()?;
        guest.validate()?;
        let host_e = self.num_edges();
        // Host darts keep their ids; the second half of the subdivided
        // edge takes the next edge id; guest darts follow.
        let second_out = Dart(2 * host_e); // from the new vertex toward the old head
        let second_in = Dart(2 * host_e + 1);
        let off = 2 * host_e + 2;
        let guest_tail = guest.tail().expect("bordered guest has a tail");
        let map_guest = |d: Dart| Dart(d.0 + off);

        let old_head = self.head(at);
        let mut vertices: Vec<Vec<Dart>> = Vec::new();
        for (v, cyc) in self.vertices.iter().enumerate() {
            if v == old_head {
                vertices.push(
                    cyc.iter()
                        .map(|&d| if d == at { second_out } else { d })
                        .collect(),
                );
            } else {
                vertices.push(cyc.clone());
            }
        }
        // Guest vertices, minus its univalent vertex.
        for cyc in guest.vertex_cycles() {
            if cyc.len() == 1 {
                continue;
            }
            vertices.push(cyc.iter().map(|&d| map_guest(d)).collect());
        }
        // New trivalent vertex: second half back in, first half in, guest
        // tail in — counterclockwise, which puts the guest on the right
        // side of the oriented edge. The dart that pointed at the guest's
        // univalent vertex now points here.
        let tail_in = map_guest(guest_tail);
        vertices.push(vec![second_in, at, tail_in]);
        let glued = Fatgraph::new(GraphKind::Bordered, vertices)?;
        glued.validate()?;
        let host_map = DartMap::identity(self.num_darts());
        let guest_map = DartMap::offset(guest.num_darts(), off);
        Ok((glued, host_map, guest_map))
    }

    /// Attach a tail edge at a new vertex subdividing the dart `at`, on
    /// its right side: the bordered lift of a punctured spine.
    pub fn attach_tail(&self, at: Dart) -> Result<Fatgraph, GraphError> {
        if self.kind != GraphKind::Punctured {
            return Err(GraphError::InvalidInputs {
                detail: "attach_tail needs a punctured spine".into(),
            });
        }
        let e = self.num_edges();
        let second_out = Dart(2 * e);
        let second_in = Dart(2 * e + 1);
        let tail_in = Dart(2 * e + 2); // into the subdividing vertex
        let tail_tip = Dart(2 * e + 3); // into the univalent vertex
        let old_head = self.head(at);
        let mut vertices: Vec<Vec<Dart>> = Vec::new();
        for (v, cyc) in self.vertices.iter().enumerate() {
            if v == old_head {
                vertices.push(
                    cyc.iter()
                        .map(|&d| if d == at { second_out } else { d })
                        .collect(),
                );
            } else {
                vertices.push(cyc.clone());
            }
        }
        vertices.push(vec![second_in, at, tail_in]);
        vertices.push(vec![tail_tip]);
        Fatgraph::new(GraphKind::Bordered, vertices)
    }

    /// Inverse of `attach_tail`: remove the tail edge and merge the two
    /// halves of the subdivided edge. Returns the punctured spine and the
    /// dart the tail was attached at.
    pub fn detach_tail(&self) -> Result<(Fatgraph, Dart), GraphError> {
        let tail = self.tail().ok_or(GraphError::InvalidInputs {
            detail: "detach_tail needs a bordered spine".into(),
        })?;
        let v_e = self.head(tail.rev());
        if self.valence(v_e) != 3 {
            return Err(GraphError::InvalidInputs {
                detail: "tail base vertex is not trivalent".into(),
            });
        }
        let tail_in = tail.rev();
        let second_in = self.next_at_vertex(tail_in); // reversal of the onward half
        let first_in = self.next_at_vertex(second_in); // the arriving half
                                                       // Merge: first_in's edge absorbs the second half. first_in keeps
                                                       // its id and now heads at second_in's reversal's head.
        let absorb_head = self.head(second_in.rev());
        let tail_edge = tail.edge();
        let second_edge = second_in.edge();
        // Renumber: drop the tail edge and the second-half edge.
        let mut new_id = vec![usize::MAX; self.num_darts()];
        let mut next = 0usize;
        for d in 0..self.num_darts() {
            let e = d >> 1;
            if e == tail_edge || e == second_edge {
                continue;
            }
            new_id[d] = next;
            next += 1;
        }
        let mut vertices: Vec<Vec<Dart>> = Vec::new();
        for (v, cyc) in self.vertices.iter().enumerate() {
            if v == v_e || cyc.len() == 1 {
                continue;
            }
            let mut mapped = Vec::with_capacity(3);
            for &d in cyc {
                let d2 = if v == absorb_head && d == second_in.rev() {
                    // The old head of the subdivided edge now receives the
                    // merged edge directly.
                    first_in
                } else {
                    d
                };
                mapped.push(Dart(new_id[d2.0]));
            }
            vertices.push(mapped);
        }
        let g = Fatgraph::new(GraphKind::Punctured, vertices)?;
        Ok((g, Dart(new_id[first_in.0])))
    }

    /// Relabel darts. `perm[d]` is the new id of dart `d`; the permutation
    /// must commute with reversal.
    pub fn relabel(&self, perm: &[usize]) -> Result<Fatgraph, GraphError> {
        for d in 0..self.num_darts() {
            if perm[d] ^ 1 != perm[d ^ 1] {
                return Err(GraphError::MalformedPermutation {
                    detail: format!("relabeling does not respect reversal at dart {d}"),
                });
            }
        }
        let vertices = self
            .vertices
            .iter()
            .map(|cyc| cyc.iter().map(|&d| Dart(perm[d.0])).collect())
            .collect();
        Fatgraph::new(self.kind, vertices)
    }

    /// Relabel darts by first occurrence along the boundary walk from
    /// `start`. The result's walk visits edges in id order, which makes
    /// the labeling canonical given the anchor.
    fn walk_labeled(&self, start: Dart) -> Result<Fatgraph, GraphError> {
        let bo = self.boundary_order_from(start)?;
        let mut perm = vec![usize::MAX; self.num_darts()];
        let mut next_edge = 0usize;
        for &d in &bo.order {
            if perm[d.0] == usize::MAX {
                perm[d.0] = 2 * next_edge;
                perm[d.rev().0] = 2 * next_edge + 1;
                next_edge += 1;
            }
        }
        self.relabel(&perm)
    }

    /// Canonical byte string: equal strings iff the spines are isomorphic
    /// (tail-preserving for bordered spines). Bordered spines anchor the
    /// walk at the tail; punctured ones take the minimum over all anchors.
    pub fn canonical_form(&self) -> Result<String, GraphError> {
        Ok(self.canonical_graph()?.serialize())
    }

    /// The canonically relabeled spine itself, with the vertex list in
    /// normal form (each cycle anchored at its least dart, cycles
    /// sorted), so the representation no longer remembers the input.
    pub fn canonical_graph(&self) -> Result<Fatgraph, GraphError> {
        let relabeled = match self.kind {
            GraphKind::Bordered => {
                let start = self
                    .tail()
                    .ok_or(GraphError::BadValence {
                        vertex: 0,
                        valence: 0,
                    })?
                    .rev();
                self.walk_labeled(start)?
            }
            GraphKind::Punctured => {
                let mut best: Option<(String, Fatgraph)> = None;
                for d in self.darts() {
                    let g = self.walk_labeled(d)?;
                    let s = g.serialize();
                    if best.as_ref().map_or(true, |(bs, _)| s < *bs) {
                        best = Some((s, g));
                    }
                }
                best.unwrap().1
            }
        };
        let mut cycles: Vec<Vec<Dart>> = relabeled
            .vertices
            .iter()
            .map(|cyc| {
                let k = cyc
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, d)| d.0)
                    .map(|(i, _)| i)
                    .unwrap();
                cyc[k..].iter().chain(cyc[..k].iter()).copied().collect()
            })
            .collect();
        cycles.sort_by_key(|c: &Vec<Dart>| c[0].0);
        Fatgraph::new(relabeled.kind, cycles)
    }

    /// Text form of the spine in the `fatgraph v1` format. Vertices are
    /// emitted sorted by their least dart, each cycle rotated to start at
    /// its least dart, so serialization is stable.
    pub fn serialize(&self) -> String {
        let mut out = format!("fatgraph v1 {}\n", self.kind);
        let mut cycles: Vec<Vec<Dart>> = self
            .vertices
            .iter()
            .map(|cyc| {
                let k = cyc
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, d)| d.0)
                    .map(|(i, _)| i)
                    .unwrap();
                cyc[k..].iter().chain(cyc[..k].iter()).copied().collect()
            })
            .collect();
        cycles.sort_by_key(|c| c[0].0);
        for (i, cyc) in cycles.iter().enumerate() {
            let darts: Vec<String> = cyc.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("v{}: {}\n", i, darts.join(" ")));
        }
        if let Some(t) = self.tail() {
            out.push_str(&format!("tail: {}\n", t));
        }
        out
    }

    /// An odd closed walk: two boundary corners at the same vertex whose
    /// indices differ by an odd amount bound a closed dart path of odd
    /// length, and corner counting guarantees such a pair exists.
    pub fn find_odd_edge_cycle(&self, bo: &BoundaryOrder) -> Vec<Dart> {
        let corners = self.corners(bo);
        // Corner i (1-based) sits at the vertex entered after walk step i-1.
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); self.num_vertices()];
        for (idx, (f, _)) in corners.iter().enumerate() {
            by_vertex[self.head(*f)].push(idx + 1);
        }
        for ids in &by_vertex {
            for (k, &i) in ids.iter().enumerate() {
                for &j in &ids[k + 1..] {
                    if (j - i) % 2 == 1 {
                        return bo.order[i..j].to_vec();
                    }
                }
            }
        }
        unreachable!("every bordered trivalent spine has an odd edge cycle");
    }

    /// True when the boundary walk starts with 4g preferred darts in a
    /// row.
    pub fn is_chord_diagram(&self, bo: &BoundaryOrder) -> bool {
        let g = self.genus();
        bo.order[..4 * g]
            .iter()
            .all(|d| bo.position[d.0] < bo.position[d.rev().0])
    }

    /// Balanced punctured spine: alternating corner labels are constant
    /// around every vertex.
    pub fn is_balanced(&self, bo: &BoundaryOrder) -> Result<bool, GraphError> {
        if self.kind != GraphKind::Punctured {
            return Err(GraphError::InvalidInputs {
                detail: "balance is defined for punctured spines".into(),
            });
        }
        if self.num_darts() % 2 != 0 {
            return Err(GraphError::OddCornerCount);
        }
        // Corner after walk step i has label i mod 2; monochromatic
        // vertices see three corners of equal parity.
        let mut parity: Vec<Option<usize>> = vec![None; self.num_vertices()];
        for (i, &d) in bo.order.iter().enumerate() {
            let v = self.head(d);
            let p = (i + 1) % 2;
            match parity[v] {
                None => parity[v] = Some(p),
                Some(q) if q == p => {}
                Some(_) => return Ok(false),
            }
        }
        Ok(true)
    }

    /// The greedy spanning tree: an edge belongs to the tree iff its
    /// preferred dart is first in the boundary order among the incoming
    /// darts at its head.
    pub fn greedy_tree(&self, bo: &BoundaryOrder) -> GreedyTree {
        let mut in_tree = vec![false; self.num_edges()];
        for e in 0..self.num_edges() {
            let d0 = Dart(2 * e);
            let d = if bo.position[d0.0] < bo.position[d0.rev().0] {
                d0
            } else {
                d0.rev()
            };
            let head = self.head(d);
            let min = self.vertices[head]
                .iter()
                .min_by_key(|x| bo.position[x.0])
                .unwrap();
            in_tree[e] = *min == d;
        }
        let mut non_tree: Vec<Dart> = (0..self.num_edges())
            .filter(|&e| !in_tree[e])
            .map(|e| {
                let d0 = Dart(2 * e);
                if bo.position[d0.0] < bo.position[d0.rev().0] {
                    d0
                } else {
                    d0.rev()
                }
            })
            .collect();
        non_tree.sort_by_key(|d| bo.position[d.0]);
        GreedyTree { in_tree, non_tree }
    }

    /// Any deterministic spanning tree (breadth-first in rotation order).
    /// Works for both kinds; used where no boundary anchor is wanted.
    pub fn bfs_tree(&self) -> Vec<bool> {
        let mut in_tree = vec![false; self.num_edges()];
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &d in &self.vertices[v] {
                let u = self.head(d.rev());
                if !seen[u] {
                    seen[u] = true;
                    in_tree[d.edge()] = true;
                    queue.push_back(u);
                }
            }
        }
        in_tree
    }
}

/// Spanning tree from the greedy algorithm, with the non-tree edges'
/// preferred darts in boundary order.
#[derive(Clone, Debug)]
pub struct GreedyTree {
    pub in_tree: Vec<bool>,
    pub non_tree: Vec<Dart>,
}

/// Outcome of `validate`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub kind: GraphKind,
    pub genus: usize,
    pub vertices: usize,
    pub edges: usize,
}

/// The boundary walk and its inverse position table.
#[derive(Clone, Debug)]
pub struct BoundaryOrder {
    /// Darts in walk order.
    pub order: Vec<Dart>,
    /// Position of each dart in the walk.
    pub position: Vec<usize>,
}

impl BoundaryOrder {
    #[inline]
    pub fn preferred(&self, d: Dart) -> bool {
        self.position[d.0] < self.position[d.rev().0]
    }

    /// The preferred dart of edge `e`.
    #[inline]
    pub fn preferred_dart(&self, e: usize) -> Dart {
        let d = Dart(2 * e);
        if self.preferred(d) {
            d
        } else {
            d.rev()
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VertexType {
    Type1,
    Type2,
}

/// Frame at a trivalent vertex; `e2` follows `e1` counterclockwise and
/// `e1` is first in the boundary order.
#[derive(Copy, Clone, Debug)]
pub struct VertexFrame {
    pub vertex: usize,
    pub e1: Dart,
    pub e2: Dart,
    pub e3: Dart,
    pub vtype: VertexType,
}

impl VertexFrame {
    /// The marked pair (e_v, f_v) whose marking difference is the
    /// vertex's contribution to the invariant.
    pub fn contribution_darts(&self) -> (Dart, Dart) {
        match self.vtype {
            VertexType::Type1 => (self.e2, self.e3),
            VertexType::Type2 => (self.e1, self.e3),
        }
    }
}

/// Local frame of a flip: `(a, b)` follow the base dart `h`
/// counterclockwise at its head, `(c, d)` follow the reversal at the
/// other end. In the result, `into_bc` points at the vertex gathering
/// (b, c) and `into_da` at the one gathering (d, a).
#[derive(Copy, Clone, Debug)]
pub struct FlipFrame {
    pub h: Dart,
    pub a: Dart,
    pub b: Dart,
    pub c: Dart,
    pub d: Dart,
    pub into_bc: Dart,
    pub into_da: Dart,
}

/// A flip move: source, result, and the local frame. Every dart off the
/// flipped edge keeps its id, so the move's dart bijection is the
/// identity there.
#[derive(Clone, Debug)]
pub struct FlipMove {
    pub source: Fatgraph,
    pub result: Fatgraph,
    pub edge: usize,
    pub frame: FlipFrame,
}

/// Dart map returned by gluing.
#[derive(Clone, Debug)]
pub struct DartMap {
    map: Vec<usize>,
}

impl DartMap {
    fn identity(n: usize) -> DartMap {
        DartMap {
            map: (0..n).collect(),
        }
    }

    fn offset(n: usize, off: usize) -> DartMap {
        DartMap {
            map: (off..off + n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, d: Dart) -> Dart {
        Dart(self.map[d.0])
    }
}
