//! Quadratic forms over GF(2) attached to a bordered trivalent spine.
//!
//! Edge-valued forms with type-dependent vertex sums are in bijection
//! with quadratic forms on mod-2 homology. Three are distinguished: the
//! two counting forms read off the boundary order, and the winding form
//! of the associated framing.

use crate::error::GraphError;
use crate::graph::{BoundaryOrder, Fatgraph, FlipMove, GraphKind, VertexType};
use crate::marking::{Marking, Mod2Class};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FormTag {
    QG,
    QBar,
    Wind,
    Custom,
}

/// A GF(2) function on unoriented edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeForm {
    pub values: Vec<u8>,
    pub tag: FormTag,
}

impl EdgeForm {
    pub fn value(&self, edge: usize) -> u8 {
        self.values[edge]
    }
}

/// Membership in the form space: at every trivalent vertex the three
/// incident edge values sum to 0 for type 1 and 1 for type 2. A loop
/// contributes twice, hence zero.
pub fn q_membership(
    graph: &Fatgraph,
    bo: &BoundaryOrder,
    form: &EdgeForm,
) -> Result<bool, GraphError> {
    Ok(membership_violation(graph, bo, form)?.is_none())
}

fn membership_violation(
    graph: &Fatgraph,
    bo: &BoundaryOrder,
    form: &EdgeForm,
) -> Result<Option<usize>, GraphError> {
    let frames = graph.classify_vertices(bo)?;
    for f in frames {
        let sum = (form.value(f.e1.edge()) + form.value(f.e2.edge()) + form.value(f.e3.edge())) % 2;
        let want = match f.vtype {
            VertexType::Type1 => 0,
            VertexType::Type2 => 1,
        };
        if sum != want {
            return Ok(Some(f.vertex));
        }
    }
    Ok(None)
}

/// A quadratic form on mod-2 homology: values on the basis classes plus
/// the mod-2 Gram matrix of the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub basis_values: Vec<u8>,
    pub gram: Vec<Vec<u8>>,
}

impl QuadForm {
    /// Evaluate on a mod-2 class through the quadratic expansion over the
    /// basis.
    pub fn eval(&self, x: &Mod2Class) -> u8 {
        let idx: Vec<usize> =
            x.0.iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(i, _)| i)
                .collect();
        let mut acc = 0u8;
        for &i in &idx {
            acc ^= self.basis_values[i];
        }
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                acc ^= self.gram[i][j];
            }
        }
        acc
    }
}

/// Extend an edge form to a quadratic form on homology: the basis edges
/// are singleton chains, so they take the form's edge values; crossed
/// pairs pick up the mod-2 pairing.
pub fn extend_form(
    graph: &Fatgraph,
    bo: &BoundaryOrder,
    m: &Marking,
    form: &EdgeForm,
) -> Result<QuadForm, GraphError> {
    if let Some(vertex) = membership_violation(graph, bo, form)? {
        return Err(GraphError::NotInQ { vertex });
    }
    let rank = m.rank();
    let gram: Vec<Vec<u8>> =
        m.j.iter()
            .map(|row| row.iter().map(|&x| (x.rem_euclid(2)) as u8).collect())
            .collect();
    let basis_values: Vec<u8> = m.basis.iter().map(|f| form.value(f.edge())).collect();
    if basis_values.len() != rank {
        return Err(GraphError::DimensionMismatch(basis_values.len(), rank));
    }
    Ok(QuadForm { basis_values, gram })
}

/// The first counting form: edges whose preferred dart lies strictly
/// between a preferred dart and its reversal, counted mod 2.
pub fn q_g(graph: &Fatgraph, bo: &BoundaryOrder) -> EdgeForm {
    counting_form(graph, bo, true)
}

/// The second counting form: same count over reversed darts.
pub fn q_bar(graph: &Fatgraph, bo: &BoundaryOrder) -> EdgeForm {
    counting_form(graph, bo, false)
}

fn counting_form(graph: &Fatgraph, bo: &BoundaryOrder, preferred_side: bool) -> EdgeForm {
    let ne = graph.num_edges();
    let mut values = vec![0u8; ne];
    for e in 0..ne {
        let d = bo.preferred_dart(e);
        let (lo, hi) = (bo.position[d.0], bo.position[d.rev().0]);
        let mut count = 0usize;
        for f in 0..ne {
            if f == e {
                continue;
            }
            let fd = bo.preferred_dart(f);
            let probe = if preferred_side { fd } else { fd.rev() };
            let p = bo.position[probe.0];
            if lo < p && p < hi {
                count += 1;
            }
        }
        values[e] = (count % 2) as u8;
    }
    EdgeForm {
        values,
        tag: if preferred_side {
            FormTag::QG
        } else {
            FormTag::QBar
        },
    }
}

/// Corner count for the winding form: corners strictly inside the span
/// of a preferred dart with exactly one preferred side.
pub fn lambda(graph: &Fatgraph, bo: &BoundaryOrder, edge: usize) -> usize {
    let d = bo.preferred_dart(edge);
    let (lo, hi) = (bo.position[d.0], bo.position[d.rev().0]);
    let n = graph.num_darts();
    let upper = match graph.kind() {
        GraphKind::Bordered => n - 1,
        GraphKind::Punctured => n,
    };
    let mut count = 0usize;
    for i in 1..=upper {
        // Corner i joins walk darts i-1 and i.
        if i <= lo || i > hi {
            continue;
        }
        let f = bo.order[i - 1];
        let fp = bo.order[i % n];
        if bo.preferred(f) != bo.preferred(fp) {
            count += 1;
        }
    }
    count
}

/// The winding form of the spine's framing: (1 + lambda(e)) / 2 mod 2,
/// with lambda always odd.
pub fn q_wind(graph: &Fatgraph, bo: &BoundaryOrder) -> Result<EdgeForm, GraphError> {
    let ne = graph.num_edges();
    let mut values = vec![0u8; ne];
    for e in 0..ne {
        let l = lambda(graph, bo, e);
        if l % 2 != 1 {
            return Err(GraphError::InvalidInputs {
                detail: format!("corner count {l} at edge {e} should be odd"),
            });
        }
        values[e] = (((1 + l) / 2) % 2) as u8;
    }
    Ok(EdgeForm {
        values,
        tag: FormTag::Wind,
    })
}

/// Push a form through a flip: values persist off the flipped edge; the
/// new edge's value comes from the vertex condition at either endpoint
/// of the new edge (both agree).
pub fn transport_form(mv: &FlipMove, form: &EdgeForm) -> Result<EdgeForm, GraphError> {
    let src_bo = mv.source.boundary_order()?;
    if let Some(vertex) = membership_violation(&mv.source, &src_bo, form)? {
        return Err(GraphError::NotInQ { vertex });
    }
    let bo = mv.result.boundary_order()?;
    let fr = &mv.frame;
    let t_bc = mv.result.frame_at(mv.result.head(fr.into_bc), &bo).vtype;
    let t_da = mv.result.frame_at(mv.result.head(fr.into_da), &bo).vtype;
    let bias = |t: VertexType| if t == VertexType::Type2 { 1 } else { 0 };
    let from_bc = (form.value(fr.b.edge()) + form.value(fr.c.edge()) + bias(t_bc)) % 2;
    let from_da = (form.value(fr.d.edge()) + form.value(fr.a.edge()) + bias(t_da)) % 2;
    if from_bc != from_da {
        return Err(GraphError::InvalidInputs {
            detail: format!(
                "transport disagreement on edge {}: {} vs {}",
                mv.edge, from_bc, from_da
            ),
        });
    }
    let mut values = form.values.clone();
    values[mv.edge] = from_bc;
    Ok(EdgeForm {
        values,
        tag: FormTag::Custom,
    })
}

/// The unique mod-2 class pairing like the difference of two member
/// forms, solved on the basis edges through the Gram matrix.
pub fn form_difference(
    graph: &Fatgraph,
    bo: &BoundaryOrder,
    m: &Marking,
    f1: &EdgeForm,
    f2: &EdgeForm,
) -> Result<Mod2Class, GraphError> {
    if let Some(vertex) = membership_violation(graph, bo, f1)? {
        return Err(GraphError::NotInQ { vertex });
    }
    if let Some(vertex) = membership_violation(graph, bo, f2)? {
        return Err(GraphError::NotInQ { vertex });
    }
    let rank = m.rank();
    // Solve gram * d = rhs over GF(2), rhs the basis-edge differences.
    // The wanted class satisfies (d . y) = f1(y) - f2(y) for all y; on
    // basis classes that reads row-wise as d^T J b_i = rhs_i.
    let mut a: Vec<Vec<u8>> = vec![vec![0; rank]; rank];
    for i in 0..rank {
        for k in 0..rank {
            // Coefficient of d_k in (d . b_i) = sum_k d_k J[k][i].
            a[i][k] = (m.j[k][i].rem_euclid(2)) as u8;
        }
    }
    let rhs: Vec<u8> = m
        .basis
        .iter()
        .map(|f| (f1.value(f.edge()) + f2.value(f.edge())) % 2)
        .collect();
    let d = solve_gf2(a, rhs).ok_or(GraphError::SingularGram)?;
    Ok(Mod2Class(d))
}

/// Gaussian elimination over GF(2).
fn solve_gf2(mut a: Vec<Vec<u8>>, mut b: Vec<u8>) -> Option<Vec<u8>> {
    let n = b.len();
    let mut pivot_of = vec![usize::MAX; n];
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| a[r][col] == 1) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        for r in 0..n {
            if r != row && a[r][col] == 1 {
                for c in 0..n {
                    a[r][c] ^= a[row][c];
                }
                b[r] ^= b[row];
            }
        }
        pivot_of[col] = row;
        row += 1;
    }
    if row < n {
        return None;
    }
    let mut x = vec![0u8; n];
    for col in 0..n {
        x[col] = b[pivot_of[col]];
    }
    Some(x)
}

/// All members of the form space, enumerated by GF(2) affine solving.
/// There are exactly 2^{2g} of them for a valid spine.
pub fn enumerate_forms(graph: &Fatgraph, bo: &BoundaryOrder) -> Result<Vec<EdgeForm>, GraphError> {
    let frames = graph.classify_vertices(bo)?;
    let ne = graph.num_edges();
    // Affine system: rows = vertex conditions over edge unknowns.
    let mut a: Vec<Vec<u8>> = Vec::with_capacity(frames.len());
    let mut b: Vec<u8> = Vec::with_capacity(frames.len());
    for f in &frames {
        let mut row = vec![0u8; ne];
        for d in [f.e1, f.e2, f.e3] {
            row[d.edge()] ^= 1; // loops cancel mod 2
        }
        a.push(row);
        b.push(match f.vtype {
            VertexType::Type1 => 0,
            VertexType::Type2 => 1,
        });
    }
    // Row-reduce to find a particular solution and the kernel basis.
    let rows = a.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0usize;
    for col in 0..ne {
        let Some(p) = (r..rows).find(|&i| a[i][col] == 1) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][col] == 1 {
                for c in 0..ne {
                    a[i][c] ^= a[r][c];
                }
                b[i] ^= b[r];
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    for i in r..rows {
        if b[i] == 1 {
            return Err(GraphError::InvalidInputs {
                detail: "inconsistent vertex conditions".into(),
            });
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..ne).filter(|c| !pivot_cols.contains(c)).collect();
    let mut out = Vec::with_capacity(1 << free_cols.len());
    for mask in 0u64..(1u64 << free_cols.len()) {
        let mut values = vec![0u8; ne];
        for (bit, &c) in free_cols.iter().enumerate() {
            values[c] = ((mask >> bit) & 1) as u8;
        }
        for &(row, col) in pivots.iter().rev() {
            let mut acc = b[row];
            for c in col + 1..ne {
                acc ^= a[row][c] & values[c];
            }
            values[col] = acc;
        }
        out.push(EdgeForm {
            values,
            tag: FormTag::Custom,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::example_spine;
    use crate::graph::Dart;
    use crate::marking::{initial_marking, pair};
    use crate::xi::xi;

    fn setup(g: usize) -> (Fatgraph, BoundaryOrder, Marking) {
        let graph = example_spine(g);
        let bo = graph.boundary_order().unwrap();
        let m = initial_marking(&graph, &bo).unwrap();
        (graph, bo, m)
    }

    #[test]
    fn counting_forms_on_the_genus_one_spine() {
        let (graph, bo, _) = setup(1);
        let qg = q_g(&graph, &bo);
        let qb = q_bar(&graph, &bo);
        assert_eq!(qg.values, vec![0, 0, 0, 1, 0]);
        assert_eq!(qb.values, vec![0, 0, 1, 0, 0]);
        assert!(q_membership(&graph, &bo, &qg).unwrap());
        assert!(q_membership(&graph, &bo, &qb).unwrap());
    }

    #[test]
    fn winding_form_anchors() {
        let (graph, bo, _) = setup(1);
        let qw = q_wind(&graph, &bo).unwrap();
        assert_eq!(qw.values, vec![0, 1, 0, 0, 1]);
        assert!(q_membership(&graph, &bo, &qw).unwrap());
        // The last preferred dart always scores lambda = 1, value 1.
        let last = bo
            .order
            .iter()
            .rev()
            .find(|d| bo.preferred(**d))
            .copied()
            .unwrap();
        assert_eq!(lambda(&graph, &bo, last.edge()), 1);
        assert_eq!(qw.value(last.edge()), 1);
        let qg = q_g(&graph, &bo);
        assert_eq!(qg.value(last.edge()), 0);
        // The preferred dart all of whose predecessors' reversals come
        // later scores zero on the other counting form.
        let first_rev = bo
            .order
            .iter()
            .find(|d| !bo.preferred(**d))
            .copied()
            .unwrap();
        let e2 = first_rev.rev();
        assert!(bo.preferred(e2));
        assert_eq!(lambda(&graph, &bo, e2.edge()), 1);
        assert_eq!(q_bar(&graph, &bo).value(e2.edge()), 0);
    }

    #[test]
    fn all_zero_form_fails_membership() {
        let (graph, bo, _) = setup(1);
        let z = EdgeForm {
            values: vec![0; graph.num_edges()],
            tag: FormTag::Custom,
        };
        assert!(!q_membership(&graph, &bo, &z).unwrap());
    }

    #[test]
    fn form_space_has_size_four_to_the_genus() {
        for g in 1..=2 {
            let (graph, bo, _) = setup(g);
            let forms = enumerate_forms(&graph, &bo).unwrap();
            assert_eq!(forms.len(), 1 << (2 * g));
            for f in &forms {
                assert!(q_membership(&graph, &bo, f).unwrap());
            }
        }
    }

    #[test]
    fn extension_satisfies_the_quadratic_relation() {
        let (graph, bo, m) = setup(2);
        let q = extend_form(&graph, &bo, &m, &q_g(&graph, &bo)).unwrap();
        // Quadratic relation on all basis pairs plus mixed classes.
        let rank = m.rank();
        let classes: Vec<Mod2Class> = (0..(1u16 << rank))
            .map(|mask| Mod2Class((0..rank).map(|i| ((mask >> i) & 1) as u8).collect()))
            .collect();
        for x in &classes {
            for y in &classes {
                let sum = x.add(y);
                let lhs = q.eval(&sum) ^ q.eval(x) ^ q.eval(y);
                // (x . y) mod 2 through the Gram matrix.
                let mut rhs = 0u8;
                for i in 0..rank {
                    for j in 0..rank {
                        rhs ^= x.0[i] & y.0[j] & ((m.j[i][j].rem_euclid(2)) as u8);
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn extension_separates_forms() {
        let (graph, bo, m) = setup(1);
        let forms = enumerate_forms(&graph, &bo).unwrap();
        let quads: Vec<QuadForm> = forms
            .iter()
            .map(|f| extend_form(&graph, &bo, &m, f).unwrap())
            .collect();
        for i in 0..quads.len() {
            for j in 0..quads.len() {
                assert_eq!(i == j, quads[i] == quads[j]);
            }
        }
        // Singleton basis chains take the edge value.
        let qg = q_g(&graph, &bo);
        let quad = extend_form(&graph, &bo, &m, &qg).unwrap();
        for (i, f) in m.basis.iter().enumerate() {
            let mut unit = vec![0u8; m.rank()];
            unit[i] = 1;
            assert_eq!(quad.eval(&Mod2Class(unit)), qg.value(f.edge()));
        }
    }

    #[test]
    fn difference_of_counting_forms_is_the_invariant() {
        for g in 1..=2 {
            let (graph, bo, m) = setup(g);
            let qg = q_g(&graph, &bo);
            let qb = q_bar(&graph, &bo);
            let d = form_difference(&graph, &bo, &m, &qg, &qb).unwrap();
            let x = xi(&graph, &bo, &m).unwrap();
            assert_eq!(d, x.xi_mod2);
            assert!(!d.is_zero());
            // Identity edge-wise: q_G(e) + qbar(e) = (xi^2 . mu^2(e)).
            for e in 0..graph.num_edges() {
                let p = pair(&m, &x.xi, m.mu(Dart(2 * e))).unwrap().rem_euclid(2);
                assert_eq!(((qg.value(e) + qb.value(e)) % 2) as i64, p);
            }
            assert_eq!(
                form_difference(&graph, &bo, &m, &qg, &qg).unwrap(),
                Mod2Class::zero(m.rank())
            );
        }
    }

    #[test]
    fn three_forms_pairwise_distinct() {
        for g in 1..=2 {
            let (graph, bo, _) = setup(g);
            let qg = q_g(&graph, &bo);
            let qb = q_bar(&graph, &bo);
            let qw = q_wind(&graph, &bo).unwrap();
            assert_ne!(qg.values, qb.values);
            assert_ne!(qg.values, qw.values);
            assert_ne!(qb.values, qw.values);
        }
    }

    #[test]
    fn transport_lands_in_the_form_space_and_matches_recomputation() {
        let (graph, bo, m) = setup(2);
        let _ = m;
        for e in 0..graph.num_edges() {
            let Ok(mv) = graph.flip(e) else { continue };
            let bo2 = mv.result.boundary_order().unwrap();
            for form in [q_g(&graph, &bo), q_bar(&graph, &bo)] {
                let moved = transport_form(&mv, &form).unwrap();
                assert!(q_membership(&mv.result, &bo2, &moved).unwrap(), "edge {e}");
            }
            // Transporting the counting form does not generally recompute
            // it on the target; naturality is against the induced
            // quadratic form, checked via extend_form.
            let m2 = initial_marking(&mv.result, &bo2).unwrap();
            let moved = transport_form(&mv, &q_g(&graph, &bo)).unwrap();
            let _ = extend_form(&mv.result, &bo2, &m2, &moved).unwrap();
        }
    }

    #[test]
    fn transport_round_trip_is_identity_on_forms() {
        let (graph, bo, _) = setup(2);
        for e in 0..graph.num_edges() {
            let Ok(mv) = graph.flip(e) else { continue };
            let back = mv.result.flip(e).unwrap();
            for form in enumerate_forms(&graph, &bo).unwrap().into_iter().take(8) {
                let there = transport_form(&mv, &form).unwrap();
                let home = transport_form(&back, &there).unwrap();
                assert_eq!(home.values, form.values);
            }
        }
    }
}
