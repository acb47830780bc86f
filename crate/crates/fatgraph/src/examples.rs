//! Hand-built reference spines: the genus-g chain-of-handles example and
//! the three punctured genus-2 spines used by the balance tests.

use crate::graph::{Dart, Fatgraph, GraphKind};

/// The chain-of-handles spine of genus `g`.
///
/// Edge layout per handle block `i` (0-based here): `e0` enters the block
/// from the previous one (the first is the tail), `e1..e3` wind the
/// handle, `e4` runs back along the base line, and `e5` (absent in the
/// last block, where `e4` doubles for it) climbs to the handle's far
/// vertex.
pub fn example_spine(g: usize) -> Fatgraph {
    assert!(g >= 1);
    // Edge ids: block i owns e0..e4 (and e5 when i < g-1); darts 2k/2k+1.
    // Per block: e0 = 6i, e1 = 6i+1, e2 = 6i+2, e3 = 6i+3, e4 = 6i+4,
    // e5 = 6i+5 (i < g-1). The last block has no e5, so its ids stop at
    // 6(g-1)+4, giving 6g-1 edges in total.
    let fwd = |e: usize| Dart(2 * e);
    let rev = |e: usize| Dart(2 * e + 1);
    let e0 = |i: usize| 6 * i;
    let e1 = |i: usize| 6 * i + 1;
    let e2 = |i: usize| 6 * i + 2;
    let e3 = |i: usize| 6 * i + 3;
    let e4 = |i: usize| 6 * i + 4;
    let e5 = |i: usize| 6 * i + 5;

    let mut vertices: Vec<Vec<Dart>> = Vec::with_capacity(4 * g);
    // Univalent vertex at the marked boundary point.
    vertices.push(vec![rev(e0(0))]);
    for i in 0..g {
        let last = i + 1 == g;
        // v1: e0 ends here; e1 and e4 start here.
        vertices.push(vec![fwd(e0(i)), rev(e1(i)), rev(e4(i))]);
        // v2: e1 and e3 end here; e2 starts here.
        vertices.push(vec![fwd(e1(i)), rev(e2(i)), fwd(e3(i))]);
        // v3: e2 ends here; e3 starts here; the base line returns here.
        let back_in = if last { fwd(e4(i)) } else { fwd(e5(i)) };
        vertices.push(vec![fwd(e2(i)), rev(e3(i)), back_in]);
        if !last {
            // v4: e4 ends here; e5 and the next block's e0 start here.
            vertices.push(vec![fwd(e4(i)), rev(e5(i)), rev(e0(i + 1))]);
        }
    }
    Fatgraph::new(GraphKind::Bordered, vertices).expect("example spine is well-formed")
}

/// The dart whose marking is `mu(e_i^1)` in the chain spine: the handle
/// edge of block `i` (0-based), forward orientation.
pub fn example_handle_dart(i: usize) -> Dart {
    Dart(2 * (6 * i + 1))
}

/// Degenerate input: a loop plus tail at a single trivalent vertex. Its
/// complement is not a disk.
pub fn loop_with_tail() -> Fatgraph {
    // Edge 0 = tail (dart 0 into the trivalent vertex), edge 1 = loop.
    Fatgraph::new(
        GraphKind::Bordered,
        vec![vec![Dart(1)], vec![Dart(0), Dart(2), Dart(3)]],
    )
    .expect("well-formed permutation")
}

/// First punctured genus-2 spine with vanishing invariant: a ladder with
/// doubled side rails and a crossed middle rung. Vertices A..F; rotations
/// counterclockwise.
pub fn punctured_zero_a() -> Fatgraph {
    // Edges: 0 A-C, 1 C-E, 2 B-D, 3 D-F, 4 C-D, 5 A-B (near side),
    // 6 A-B (far side), 7 E-F (near side), 8 E-F (far side).
    let f = |e: usize| Dart(2 * e);
    let r = |e: usize| Dart(2 * e + 1);
    let vertices = vec![
        // A: toward C, toward B (near), toward B (far) -- incoming darts.
        vec![r(0), r(5), r(6)],
        // B: toward D, from A (near), from A (far).
        vec![r(2), f(5), f(6)],
        // C: toward E, from A, toward D.
        vec![r(1), f(0), r(4)],
        // D: toward F, from B, from C.
        vec![r(3), f(2), f(4)],
        // E: toward F (near), from C, toward F (far).
        vec![r(7), f(1), r(8)],
        // F: from E (near), from D, from E (far).
        vec![f(7), f(3), f(8)],
    ];
    Fatgraph::new(GraphKind::Punctured, vertices).expect("well-formed permutation")
}

/// Second punctured genus-2 spine with vanishing invariant: a fan of five
/// vertices over a base vertex, with two long chords over the top.
pub fn punctured_zero_b() -> Fatgraph {
    // Vertices A..E on the upper zig-zag, F on the base line.
    // Edges: 0 A-B, 1 B-C, 2 C-D, 3 D-E, 4 A-F, 5 F-E, 6 F-C, 7 A-D,
    // 8 B-E.
    let f = |e: usize| Dart(2 * e);
    let r = |e: usize| Dart(2 * e + 1);
    let vertices = vec![
        // A: toward B, toward D (over the top), toward F (left cap).
        vec![r(0), r(7), r(4)],
        // B: toward E (up), from A, toward C.
        vec![r(8), f(0), r(1)],
        // C: toward D, from B, from F.
        vec![r(2), f(1), f(6)],
        // D: from A (over the top), from C, toward E.
        vec![f(7), f(2), r(3)],
        // E: from F (right cap), from B, from D.
        vec![f(5), f(8), f(3)],
        // F: toward E along the base, from A, toward C.
        vec![r(5), f(4), r(6)],
    ];
    Fatgraph::new(GraphKind::Punctured, vertices).expect("well-formed permutation")
}

/// Balanced punctured genus-2 spine whose invariant is nonzero with zero
/// mod-2 reduction.
pub fn punctured_balanced_nonzero() -> Fatgraph {
    // Vertices A..F in a ladder; same outer edges as `punctured_zero_a`
    // but with a straight middle rung C-D.
    // Edges: 0 A-C, 1 C-E, 2 B-D, 3 D-F, 4 C-D, 5 A-B (near), 6 A-B
    // (far), 7 E-F (near), 8 E-F (far).
    let f = |e: usize| Dart(2 * e);
    let r = |e: usize| Dart(2 * e + 1);
    let vertices = vec![
        // A: toward C, toward B (near), toward B (far).
        vec![r(0), r(5), r(6)],
        // B: toward D, from A (near), from A (far).
        vec![r(2), f(5), f(6)],
        // C: toward E, from A, toward D.
        vec![r(1), f(0), r(4)],
        // D: toward F, from C, from B.
        vec![r(3), f(4), f(2)],
        // E: toward F (near), from C, toward F (far).
        vec![r(7), f(1), r(8)],
        // F: from E (near), from D, from E (far).
        vec![f(7), f(3), f(8)],
    ];
    Fatgraph::new(GraphKind::Punctured, vertices).expect("well-formed permutation")
}
