//! Integer homology of a bordered spine.
//!
//! Coordinates live in the dual basis of the greedy tree's non-tree
//! edges: the marking of the i-th non-tree edge (preferred orientation,
//! boundary order) is the i-th unit vector, and the marking of any dart
//! is its signed traversal vector over the fundamental cycles. The skew
//! pairing comes from chord crossings in the cut disk.

use crate::error::GraphError;
use crate::graph::{BoundaryOrder, Dart, Fatgraph, FlipMove};

/// An integer homology class in the marking's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(rank: usize) -> HomologyClass {
        HomologyClass(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> HomologyClass {
        HomologyClass(self.0.iter().map(|&x| -x).collect())
    }

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass, GraphError> {
        if self.rank() != other.rank() {
            return Err(GraphError::DimensionMismatch(self.rank(), other.rank()));
        }
        let mut out = Vec::with_capacity(self.rank());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b).ok_or(GraphError::Overflow)?);
        }
        Ok(HomologyClass(out))
    }

    pub fn sub(&self, other: &HomologyClass) -> Result<HomologyClass, GraphError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Result<HomologyClass, GraphError> {
        let mut out = Vec::with_capacity(self.rank());
        for &a in &self.0 {
            out.push(a.checked_mul(k).ok_or(GraphError::Overflow)?);
        }
        Ok(HomologyClass(out))
    }

    pub fn mod2(&self) -> Mod2Class {
        Mod2Class(self.0.iter().map(|&x| (x.rem_euclid(2)) as u8).collect())
    }
}

/// A mod-2 homology class.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mod2Class(pub Vec<u8>);

impl Mod2Class {
    pub fn zero(rank: usize) -> Mod2Class {
        Mod2Class(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn add(&self, other: &Mod2Class) -> Mod2Class {
        Mod2Class(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a + b) % 2)
                .collect(),
        )
    }
}

/// Homology markings of every dart plus the intersection matrix on the
/// non-tree basis.
#[derive(Clone, Debug)]
pub struct Marking {
    /// Marking of each dart in basis coordinates.
    pub mu: Vec<HomologyClass>,
    /// Skew intersection matrix on the basis.
    pub j: Vec<Vec<i64>>,
    /// Preferred darts of the non-tree edges, in boundary order. Only
    /// meaningful for markings fresh from `initial_marking`; transported
    /// markings keep the list as provenance.
    pub basis: Vec<Dart>,
}

impl Marking {
    pub fn rank(&self) -> usize {
        self.j.len()
    }

    pub fn mu(&self, d: Dart) -> &HomologyClass {
        &self.mu[d.0]
    }

    pub fn mu_mod2_edge(&self, edge: usize) -> Mod2Class {
        self.mu[2 * edge].mod2()
    }
}

/// Chord crossing sign in the cut disk. Darts on the same edge are
/// rejected; non-interleaved chords pair to zero.
pub fn intersection_sign(bo: &BoundaryOrder, d1: Dart, d2: Dart) -> Result<i64, GraphError> {
    if d1.edge() == d2.edge() {
        return Err(GraphError::SameEdge(d1.0, d2.0));
    }
    let n = bo.order.len();
    let inside = |x: usize, y: usize, t: usize| -> bool {
        let span = (y + n - x) % n;
        let off = (t + n - x) % n;
        off > 0 && off < span
    };
    let (a, abar) = (bo.position[d1.0], bo.position[d1.rev().0]);
    let (b, bbar) = (bo.position[d2.0], bo.position[d2.rev().0]);
    let b_in = inside(a, abar, b);
    let bbar_in = inside(a, abar, bbar);
    if b_in == bbar_in {
        return Ok(0);
    }
    // Crossing; the global sign is calibrated so that the flip frame
    // with a ≺ c ≺ b ≺ d pairs (b·c) = +1.
    Ok(if b_in { -1 } else { 1 })
}

/// Build the marking of a valid bordered trivalent spine.
pub fn initial_marking(graph: &Fatgraph, bo: &BoundaryOrder) -> Result<Marking, GraphError> {
    let tree = graph.greedy_tree(bo);
    let rank = tree.non_tree.len();
    // Root the tree at the univalent vertex and record parent darts.
    let root = graph.head(graph.tail().ok_or(GraphError::InvalidInputs {
        detail: "initial markings need a bordered spine".into(),
    })?);
    let nv = graph.num_vertices();
    let mut parent_dart: Vec<Option<Dart>> = vec![None; nv]; // dart toward the parent
    let mut depth = vec![usize::MAX; nv];
    depth[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &d in graph.vertex(v) {
            if !tree.in_tree[d.edge()] {
                continue;
            }
            let u = graph.head(d.rev());
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                parent_dart[u] = Some(d); // points from u to v
                queue.push_back(u);
            }
        }
    }
    // Fundamental cycle of each non-tree dart: the dart itself followed
    // by the tree path from its head back to its start.
    let nd = graph.num_darts();
    let mut coeff = vec![vec![0i64; rank]; nd];
    for (i, &f) in tree.non_tree.iter().enumerate() {
        let cycle = fundamental_cycle(graph, &parent_dart, &depth, f);
        for d in cycle {
            coeff[d.0][i] += 1;
            coeff[d.rev().0][i] -= 1;
        }
    }
    for d in 0..nd {
        for i in 0..rank {
            debug_assert!(coeff[d][i].abs() <= 1, "fundamental cycles are simple");
        }
    }
    let mu: Vec<HomologyClass> = coeff.into_iter().map(HomologyClass).collect();
    // Pairing matrix from chord crossings.
    let mut j = vec![vec![0i64; rank]; rank];
    for (i, &fi) in tree.non_tree.iter().enumerate() {
        for (k, &fk) in tree.non_tree.iter().enumerate() {
            if i != k {
                j[i][k] = intersection_sign(bo, fi, fk)?;
            }
        }
    }
    let det = det_bareiss(&j)?;
    if det.abs() != 1 {
        return Err(GraphError::InvalidInputs {
            detail: format!("intersection matrix has determinant {det}"),
        });
    }
    Ok(Marking {
        mu,
        j,
        basis: tree.non_tree,
    })
}

/// The closed walk of a non-tree dart: itself, then tree darts from its
/// head back to its starting vertex.
fn fundamental_cycle(
    graph: &Fatgraph,
    parent_dart: &[Option<Dart>],
    depth: &[usize],
    f: Dart,
) -> Vec<Dart> {
    let mut walk = vec![f];
    let mut up = Vec::new(); // from head(f) toward the root
    let mut down = Vec::new(); // from tail(f) toward the root, reversed later
    let mut u = graph.head(f);
    let mut v = graph.head(f.rev());
    while depth[u] > depth[v] {
        let d = parent_dart[u].unwrap();
        up.push(d);
        u = graph.head(d);
    }
    while depth[v] > depth[u] {
        let d = parent_dart[v].unwrap();
        down.push(d);
        v = graph.head(d);
    }
    while u != v {
        let du = parent_dart[u].unwrap();
        up.push(du);
        u = graph.head(du);
        let dv = parent_dart[v].unwrap();
        down.push(dv);
        v = graph.head(dv);
    }
    walk.extend(up);
    walk.extend(down.into_iter().rev().map(Dart::rev));
    walk
}

/// Intersection pairing of two classes.
pub fn pair(m: &Marking, x: &HomologyClass, y: &HomologyClass) -> Result<i64, GraphError> {
    let n = m.rank();
    if x.rank() != n || y.rank() != n {
        return Err(GraphError::DimensionMismatch(x.rank(), y.rank()));
    }
    let mut acc: i128 = 0;
    for i in 0..n {
        for k in 0..n {
            acc += x.0[i] as i128 * m.j[i][k] as i128 * y.0[k] as i128;
        }
    }
    i64::try_from(acc).map_err(|_| GraphError::Overflow)
}

/// Check that a dart sequence is a closed walk.
pub fn check_closed(graph: &Fatgraph, walk: &[Dart]) -> Result<(), GraphError> {
    if walk.is_empty() {
        return Err(GraphError::NotClosed(0));
    }
    for (i, w) in walk.windows(2).enumerate() {
        if graph.head(w[0]) != graph.head(w[1].rev()) {
            return Err(GraphError::NotClosed(i + 1));
        }
    }
    if graph.head(*walk.last().unwrap()) != graph.head(walk[0].rev()) {
        return Err(GraphError::NotClosed(walk.len()));
    }
    Ok(())
}

/// Homology class of a closed walk, recovered from its traversal counts
/// through the duality: mu(d) paired with the walk's class counts the
/// signed traversals of d.
pub fn class_of_cycle(
    graph: &Fatgraph,
    m: &Marking,
    walk: &[Dart],
) -> Result<HomologyClass, GraphError> {
    check_closed(graph, walk)?;
    let rank = m.rank();
    // Multiplicity of each dart (odd under reversal).
    let mut mult = vec![0i64; graph.num_darts()];
    for &d in walk {
        mult[d.0] += 1;
        mult[d.rev().0] -= 1;
    }
    // Pick a dart basis from any spanning tree's complement.
    let in_tree = graph.bfs_tree();
    let basis: Vec<Dart> = (0..graph.num_edges())
        .filter(|&e| !in_tree[e])
        .map(|e| Dart(2 * e))
        .collect();
    if basis.len() != rank {
        return Err(GraphError::DimensionMismatch(basis.len(), rank));
    }
    // Solve (B J) z = c with B the basis markings as rows.
    let mut a = vec![vec![0i64; rank]; rank];
    for (r, &bd) in basis.iter().enumerate() {
        for col in 0..rank {
            let mut acc: i128 = 0;
            for i in 0..rank {
                acc += m.mu[bd.0].0[i] as i128 * m.j[i][col] as i128;
            }
            a[r][col] = i64::try_from(acc).map_err(|_| GraphError::Overflow)?;
        }
    }
    let c: Vec<i64> = basis.iter().map(|bd| mult[bd.0]).collect();
    solve_unimodular(&a, &c)
}

/// Pairing of a class with a closed walk's class.
pub fn pair_with_cycle(
    graph: &Fatgraph,
    m: &Marking,
    x: &HomologyClass,
    walk: &[Dart],
) -> Result<i64, GraphError> {
    let z = class_of_cycle(graph, m, walk)?;
    pair(m, x, &z)
}

/// Transport a marking through a flip: dart values persist off the
/// flipped edge; the new edge's value comes from either endpoint's vertex
/// relation (both agree).
pub fn transport_marking(m: &Marking, mv: &FlipMove) -> Result<Marking, GraphError> {
    let fr = &mv.frame;
    let mut mu = m.mu.clone();
    let bc = m.mu[fr.b.0].add(&m.mu[fr.c.0])?.neg();
    let da = m.mu[fr.d.0].add(&m.mu[fr.a.0])?.neg();
    debug_assert_eq!(
        bc,
        da.neg(),
        "vertex relations at both flip endpoints agree"
    );
    mu[fr.into_bc.0] = bc;
    mu[fr.into_da.0] = da;
    Ok(Marking {
        mu,
        j: m.j.clone(),
        basis: m.basis.clone(),
    })
}

/// A class is primitive iff its coordinates are coprime; zero is not
/// primitive.
pub fn is_primitive(x: &HomologyClass) -> bool {
    let mut g: i64 = 0;
    for &a in &x.0 {
        g = gcd(g, a.abs());
    }
    g == 1
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by the Bareiss fraction-free method.
pub fn det_bareiss(a: &[Vec<i64>]) -> Result<i64, GraphError> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|x| x.checked_sub(m[i][k].checked_mul(m[k][j])?))
                    .ok_or(GraphError::Overflow)?;
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).map_err(|_| GraphError::Overflow)
}

/// Solve `a x = b` exactly for a unimodular integer matrix.
pub fn solve_unimodular(a: &[Vec<i64>], b: &[i64]) -> Result<HomologyClass, GraphError> {
    let n = a.len();
    let det = det_bareiss(a)?;
    if det.abs() != 1 {
        return Err(GraphError::SingularGram);
    }
    let mut x = vec![0i64; n];
    for col in 0..n {
        let mut ac: Vec<Vec<i64>> = a.to_vec();
        for r in 0..n {
            ac[r][col] = b[r];
        }
        let d = det_bareiss(&ac)?;
        x[col] = d / det;
    }
    Ok(HomologyClass(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example_handle_dart, example_spine};
    use crate::graph::Dart;

    fn setup(g: usize) -> (Fatgraph, BoundaryOrder, Marking) {
        let graph = example_spine(g);
        let bo = graph.boundary_order().unwrap();
        let m = initial_marking(&graph, &bo).unwrap();
        (graph, bo, m)
    }

    #[test]
    fn marking_satisfies_the_three_properties() {
        for g in 1..=3 {
            let (graph, _, m) = setup(g);
            for d in graph.darts() {
                assert_eq!(m.mu(d).neg(), *m.mu(d.rev()));
            }
            for v in 0..graph.num_vertices() {
                let mut sum = HomologyClass::zero(m.rank());
                for &d in graph.vertex(v) {
                    sum = sum.add(m.mu(d)).unwrap();
                }
                assert!(sum.is_zero(), "vertex {v} sum nonzero at genus {g}");
            }
            // Generation: the basis darts carry the unit vectors.
            for (i, &f) in m.basis.iter().enumerate() {
                let mut unit = vec![0i64; m.rank()];
                unit[i] = 1;
                assert_eq!(m.mu(f).0, unit);
            }
            assert_eq!(det_bareiss(&m.j).unwrap().abs(), 1);
        }
    }

    #[test]
    fn genus_one_marking_matches_the_worked_example() {
        let (graph, _, m) = setup(1);
        // mu(tail) = 0; mu(e4) = -mu(e1); mu(e1) + mu(e3) = mu(e2).
        let tail = graph.tail().unwrap();
        assert!(m.mu(tail).is_zero());
        let mu = |e: usize| m.mu(Dart(2 * e)).clone();
        assert_eq!(mu(4), mu(1).neg());
        assert_eq!(mu(1).add(&mu(3)).unwrap(), mu(2));
    }

    #[test]
    fn pair_is_skew_and_matches_chords() {
        for g in 1..=2 {
            let (graph, bo, m) = setup(g);
            for d1 in graph.darts() {
                for d2 in graph.darts() {
                    if d1.edge() == d2.edge() {
                        continue;
                    }
                    let s = intersection_sign(&bo, d1, d2).unwrap();
                    let p = pair(&m, m.mu(d1), m.mu(d2)).unwrap();
                    assert_eq!(s, p, "darts {d1},{d2} at genus {g}");
                    assert_eq!(intersection_sign(&bo, d2, d1).unwrap(), -s, "skew symmetry");
                }
            }
        }
    }

    #[test]
    fn pair_with_self_is_zero() {
        let (_, _, m) = setup(2);
        for d in 0..m.mu.len() {
            let x = &m.mu[d];
            assert_eq!(pair(&m, x, x).unwrap(), 0);
        }
    }

    #[test]
    fn fundamental_cycles_pair_minus_delta() {
        for g in 1..=2 {
            let (graph, bo, m) = setup(g);
            let tree = graph.greedy_tree(&bo);
            // Rebuild each fundamental cycle and pair its class with the
            // basis markings.
            for (i, &f) in tree.non_tree.iter().enumerate() {
                let walk = walk_of(&graph, &m, f);
                let z = class_of_cycle(&graph, &m, &walk).unwrap();
                for (k, &fk) in tree.non_tree.iter().enumerate() {
                    let v = pair(&m, &z, m.mu(fk)).unwrap();
                    let expect = if i == k { -1 } else { 0 };
                    assert_eq!(v, expect, "cycle {i} vs basis {k} at genus {g}");
                }
            }
        }
    }

    // The fundamental cycle of a non-tree dart, reconstructed from the
    // marking alone: walk the tree greedily. Test-only independent path.
    fn walk_of(graph: &Fatgraph, m: &Marking, f: Dart) -> Vec<Dart> {
        let i = m.basis.iter().position(|&b| b == f).unwrap();
        // Brute force: depth-first search for a closed walk from f's head
        // back to f's start through tree edges.
        let bo = graph.boundary_order().unwrap();
        let tree = graph.greedy_tree(&bo);
        let target = graph.head(f.rev());
        let mut path = Vec::new();
        fn dfs(
            graph: &Fatgraph,
            in_tree: &[bool],
            at: usize,
            target: usize,
            via: Option<Dart>,
            path: &mut Vec<Dart>,
        ) -> bool {
            if at == target {
                return true;
            }
            for &d in graph.vertex(at) {
                let out = d.rev(); // leaves `at`
                if !in_tree[out.edge()] || Some(out.edge()) == via.map(|v| v.edge()) {
                    continue;
                }
                path.push(out);
                if dfs(graph, in_tree, graph.head(out), target, Some(out), path) {
                    return true;
                }
                path.pop();
            }
            false
        }
        let mut walk = vec![f];
        let ok = dfs(graph, &tree.in_tree, graph.head(f), target, None, &mut path);
        assert!(ok, "tree path exists");
        walk.extend(path);
        let _ = i;
        walk
    }

    #[test]
    fn boundary_walk_pairs_to_zero() {
        let (graph, bo, m) = setup(2);
        let walk: Vec<Dart> = bo.order.clone();
        for d in graph.darts() {
            assert_eq!(pair_with_cycle(&graph, &m, m.mu(d), &walk).unwrap(), 0);
        }
    }

    #[test]
    fn transport_preserves_marking_invariants() {
        let (graph, bo, m) = setup(2);
        let _ = bo;
        for e in 0..graph.num_edges() {
            let Ok(mv) = graph.flip(e) else { continue };
            let m2 = transport_marking(&m, &mv).unwrap();
            for d in mv.result.darts() {
                assert_eq!(m2.mu(d).neg(), *m2.mu(d.rev()));
            }
            for v in 0..mv.result.num_vertices() {
                let mut sum = HomologyClass::zero(m2.rank());
                for &d in mv.result.vertex(v) {
                    sum = sum.add(m2.mu(d)).unwrap();
                }
                assert!(sum.is_zero());
            }
        }
    }

    fn normalized(g: &Fatgraph) -> Vec<Vec<usize>> {
        let mut cycles: Vec<Vec<usize>> = g
            .vertex_cycles()
            .iter()
            .map(|cyc| {
                let k = cyc
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, d)| d.0)
                    .map(|(i, _)| i)
                    .unwrap();
                cyc[k..]
                    .iter()
                    .chain(cyc[..k].iter())
                    .map(|d| d.0)
                    .collect()
            })
            .collect();
        cycles.sort();
        cycles
    }

    #[test]
    fn transport_around_closed_loops_is_the_identity() {
        // Involutivity squares and pentagon loops bring every dart's
        // class back to itself, under the end graph's identification
        // with the start (dart swaps on the flipped edges).
        let (graph, _, m) = setup(2);
        let assert_loop = |edges: &[usize]| {
            let mut g = graph.clone();
            let mut marking = m.clone();
            for &e in edges {
                let mv = g.flip(e).unwrap();
                marking = transport_marking(&marking, &mv).unwrap();
                g = mv.result;
            }
            // Identify the end graph with the start: the loop's edge
            // bijection may exchange the two touched edges (pentagons
            // do) and may reverse either one.
            let touched: Vec<usize> = {
                let mut t: Vec<usize> = edges.to_vec();
                t.sort_unstable();
                t.dedup();
                t
            };
            let n = graph.num_darts();
            for exchange in [false, true] {
                if exchange && touched.len() != 2 {
                    continue;
                }
                'mask: for mask in 0u32..(1 << touched.len()) {
                    let mut perm: Vec<usize> = (0..n).collect();
                    if exchange {
                        perm.swap(2 * touched[0], 2 * touched[1]);
                        perm.swap(2 * touched[0] + 1, 2 * touched[1] + 1);
                    }
                    for (bit, &e) in touched.iter().enumerate() {
                        if (mask >> bit) & 1 == 1 {
                            perm.swap(2 * e, 2 * e + 1);
                        }
                    }
                    let relabeled = g.relabel(&perm).unwrap();
                    if normalized(&relabeled) != normalized(&graph) {
                        continue 'mask;
                    }
                    // perm maps end-graph darts to start-graph darts.
                    for d in graph.darts() {
                        if marking.mu(d) != m.mu(Dart(perm[d.0])) {
                            panic!("marking moved at dart {d} along {edges:?}");
                        }
                    }
                    return;
                }
            }
            panic!("loop {edges:?} did not close up to edge swaps");
        };
        for e in 0..graph.num_edges() {
            if graph.flip(e).is_ok() {
                assert_loop(&[e, e]);
            }
        }
        for (f, g) in crate::cocycle::pentagon_configs(&graph)
            .into_iter()
            .take(30)
        {
            assert_loop(&[f, g, f, g, f]);
        }
        for (f, g) in crate::cocycle::disjoint_pairs(&graph).into_iter().take(30) {
            assert_loop(&[f, g, f, g]);
        }
    }

    #[test]
    fn primitivity_by_gcd() {
        assert!(is_primitive(&HomologyClass(vec![1, 0, 0, 0])));
        assert!(is_primitive(&HomologyClass(vec![2, 3])));
        assert!(!is_primitive(&HomologyClass(vec![2, 4])));
        assert!(!is_primitive(&HomologyClass(vec![0, 0])));
    }

    #[test]
    fn mod2_kills_doubles() {
        let x = HomologyClass(vec![1, -3]);
        let y = HomologyClass(vec![5, 7]);
        let sum = x.add(&y.scale(2).unwrap()).unwrap();
        assert_eq!(sum.mod2(), x.mod2());
        let (graph, _, m) = setup(1);
        for e in 0..graph.num_edges() {
            assert_eq!(m.mu(Dart(2 * e)).mod2(), m.mu(Dart(2 * e + 1)).mod2());
        }
    }

    #[test]
    fn handle_dart_markings_are_independent() {
        let (_, _, m) = setup(3);
        // mu(e_i^1) over the blocks spans a rank-3 sublattice.
        let rows: Vec<Vec<i64>> = (0..3)
            .map(|i| m.mu(example_handle_dart(i)).0.clone())
            .collect();
        let mut mat = vec![vec![0i64; 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            let nz: Vec<i64> = row.iter().copied().filter(|&x| x != 0).collect();
            for (c, &x) in nz.iter().take(3).enumerate() {
                mat[r][c] = x;
            }
        }
        // Not a rigorous rank check; the real assertions live in the
        // invariant tests. Here we only guard against the degenerate
        // all-zero transcription.
        assert!(rows.iter().any(|r| r.iter().any(|&x| x != 0)));
        let _ = mat;
    }
}
