//! The exterior-cube algebra and the flip cocycles.
//!
//! A flip with frame (a, b, c, d) carries three values: the trivector
//! mu(a) wedge mu(b) wedge mu(c), its contraction under the intersection
//! pairing, and the class mu(a) + mu(c). Sums of these along flip paths
//! vanish on the relation loops of the flip complex.

use crate::error::GraphError;
use crate::graph::{Dart, Fatgraph, FlipMove};
use crate::marking::{pair, transport_marking, HomologyClass, Marking};
use std::collections::BTreeMap;

/// Sparse element of the third exterior power, keyed by strictly
/// increasing basis triples.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Trivector {
    coeffs: BTreeMap<[usize; 3], i64>,
}

impl Trivector {
    pub fn zero() -> Trivector {
        Trivector::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<[usize; 3], i64> {
        &self.coeffs
    }

    pub fn insert(&mut self, idx: [usize; 3], value: i64) -> Result<(), GraphError> {
        if value == 0 {
            return Ok(());
        }
        let (idx, sign) = normalize_triple(idx).ok_or(GraphError::InvalidInputs {
            detail: "repeated index in trivector".into(),
        })?;
        let slot = self.coeffs.entry(idx).or_insert(0);
        *slot = slot
            .checked_add(sign.checked_mul(value).ok_or(GraphError::Overflow)?)
            .ok_or(GraphError::Overflow)?;
        if *slot == 0 {
            self.coeffs.remove(&idx);
        }
        Ok(())
    }

    pub fn add(&self, other: &Trivector) -> Result<Trivector, GraphError> {
        let mut out = self.clone();
        for (&idx, &v) in &other.coeffs {
            out.insert(idx, v)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Trivector {
        Trivector {
            coeffs: self.coeffs.iter().map(|(&k, &v)| (k, -v)).collect(),
        }
    }

    pub fn sub(&self, other: &Trivector) -> Result<Trivector, GraphError> {
        self.add(&other.neg())
    }
}

/// Sort a triple, returning the permutation sign; `None` on repeats.
fn normalize_triple(mut idx: [usize; 3]) -> Option<([usize; 3], i64)> {
    let mut sign = 1i64;
    if idx[0] > idx[1] {
        idx.swap(0, 1);
        sign = -sign;
    }
    if idx[1] > idx[2] {
        idx.swap(1, 2);
        sign = -sign;
    }
    if idx[0] > idx[1] {
        idx.swap(0, 1);
        sign = -sign;
    }
    if idx[0] == idx[1] || idx[1] == idx[2] {
        return None;
    }
    Some((idx, sign))
}

/// Alternating trilinear wedge of three classes.
pub fn wedge3(
    x: &HomologyClass,
    y: &HomologyClass,
    z: &HomologyClass,
) -> Result<Trivector, GraphError> {
    let n = x.rank();
    if y.rank() != n || z.rank() != n {
        return Err(GraphError::DimensionMismatch(y.rank(), z.rank()));
    }
    let mut out = Trivector::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                // 3x3 determinant of the (i, j, k) rows of (x, y, z).
                let det = det3(
                    [x.0[i], y.0[i], z.0[i]],
                    [x.0[j], y.0[j], z.0[j]],
                    [x.0[k], y.0[k], z.0[k]],
                )?;
                out.insert([i, j, k], det)?;
            }
        }
    }
    Ok(out)
}

fn det3(r0: [i64; 3], r1: [i64; 3], r2: [i64; 3]) -> Result<i64, GraphError> {
    let m = |a: i64, b: i64| a.checked_mul(b).ok_or(GraphError::Overflow);
    let t0 = m(
        r0[0],
        m(r1[1], r2[2])?
            .checked_sub(m(r1[2], r2[1])?)
            .ok_or(GraphError::Overflow)?,
    )?;
    let t1 = m(
        r0[1],
        m(r1[0], r2[2])?
            .checked_sub(m(r1[2], r2[0])?)
            .ok_or(GraphError::Overflow)?,
    )?;
    let t2 = m(
        r0[2],
        m(r1[0], r2[1])?
            .checked_sub(m(r1[1], r2[0])?)
            .ok_or(GraphError::Overflow)?,
    )?;
    t0.checked_sub(t1)
        .and_then(|x| x.checked_add(t2))
        .ok_or(GraphError::Overflow)
}

/// Contraction: on decomposables, x^y^z maps to (x.y)z + (y.z)x + (z.x)y.
/// On a basis triple bi^bj^bk this is J(i,j) bk + J(j,k) bi + J(k,i) bj.
pub fn contraction(m: &Marking, t: &Trivector) -> Result<HomologyClass, GraphError> {
    let n = m.rank();
    let mut out = vec![0i64; n];
    for (&[i, j, k], &v) in t.coeffs() {
        let add = |out: &mut Vec<i64>, idx: usize, w: i64| -> Result<(), GraphError> {
            out[idx] = out[idx]
                .checked_add(w.checked_mul(v).ok_or(GraphError::Overflow)?)
                .ok_or(GraphError::Overflow)?;
            Ok(())
        };
        add(&mut out, k, m.j[i][j])?;
        add(&mut out, i, m.j[j][k])?;
        add(&mut out, j, m.j[k][i])?;
    }
    Ok(HomologyClass(out))
}

/// The three values a marked flip carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleValue {
    pub j: Trivector,
    pub jprime: HomologyClass,
    pub m: HomologyClass,
}

/// Evaluate the cocycles on one flip with the marking of its source.
pub fn cocycle_values(m: &Marking, mv: &FlipMove) -> Result<CocycleValue, GraphError> {
    let fr = &mv.frame;
    let (ma, mb, mc) = (m.mu(fr.a), m.mu(fr.b), m.mu(fr.c));
    let j = wedge3(ma, mb, mc)?;
    let jprime = contraction(m, &j)?;
    // Direct expansion must agree with the contraction of j.
    let direct = {
        let ab = pair(m, ma, mb)?;
        let bc = pair(m, mb, mc)?;
        let ca = pair(m, mc, ma)?;
        mc.scale(ab)?.add(&ma.scale(bc)?)?.add(&mb.scale(ca)?)?
    };
    debug_assert_eq!(
        jprime, direct,
        "contraction matches the displayed expansion"
    );
    let mval = ma.add(mc)?;
    Ok(CocycleValue { j, jprime, m: mval })
}

/// Accumulated cocycle sums along a flip path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSums {
    pub j: Trivector,
    pub jprime: HomologyClass,
    pub m: HomologyClass,
    pub steps: usize,
}

impl CocycleSums {
    pub fn zero(rank: usize) -> CocycleSums {
        CocycleSums {
            j: Trivector::zero(),
            jprime: HomologyClass::zero(rank),
            m: HomologyClass::zero(rank),
            steps: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.j.is_zero() && self.jprime.is_zero() && self.m.is_zero()
    }
}

/// Fold flips along a sequence of edge ids, transporting the marking and
/// accumulating all three cocycle sums.
pub fn evaluate_sequence(
    graph: &Fatgraph,
    m0: &Marking,
    edges: &[usize],
) -> Result<(CocycleSums, Fatgraph, Marking), GraphError> {
    let mut g = graph.clone();
    let mut m = m0.clone();
    let mut sums = CocycleSums::zero(m0.rank());
    for (step, &e) in edges.iter().enumerate() {
        let mv = g.flip(e).map_err(|source| GraphError::SequenceStep {
            step,
            source: Box::new(source),
        })?;
        let val = cocycle_values(&m, &mv)?;
        sums.j = sums.j.add(&val.j)?;
        sums.jprime = sums.jprime.add(&val.jprime)?;
        sums.m = sums.m.add(&val.m)?;
        sums.steps += 1;
        m = transport_marking(&m, &mv)?;
        g = mv.result;
    }
    Ok((sums, g, m))
}

/// All pentagon configurations of a trivalent spine: ordered pairs of
/// flippable edges sharing exactly one vertex.
pub fn pentagon_configs(graph: &Fatgraph) -> Vec<(usize, usize)> {
    let flippable: Vec<usize> = (0..graph.num_edges())
        .filter(|&e| graph.flip(e).is_ok())
        .collect();
    let ends = |e: usize| {
        let d = Dart(2 * e);
        [graph.head(d), graph.head(d.rev())]
    };
    let mut out = Vec::new();
    for &f in &flippable {
        for &g in &flippable {
            if f == g {
                continue;
            }
            let [a, b] = ends(f);
            let [c, d] = ends(g);
            let shared = usize::from(a == c)
                + usize::from(a == d)
                + usize::from(b == c)
                + usize::from(b == d);
            if shared == 1 {
                out.push((f, g));
            }
        }
    }
    out
}

/// All unordered pairs of flippable edges sharing no vertex.
pub fn disjoint_pairs(graph: &Fatgraph) -> Vec<(usize, usize)> {
    let flippable: Vec<usize> = (0..graph.num_edges())
        .filter(|&e| graph.flip(e).is_ok())
        .collect();
    let ends = |e: usize| {
        let d = Dart(2 * e);
        [graph.head(d), graph.head(d.rev())]
    };
    let mut out = Vec::new();
    for (i, &f) in flippable.iter().enumerate() {
        for &g in &flippable[i + 1..] {
            let [a, b] = ends(f);
            let [c, d] = ends(g);
            if a != c && a != d && b != c && b != d {
                out.push((f, g));
            }
        }
    }
    out
}

/// One verified relation loop.
#[derive(Clone, Debug)]
pub enum RelationKind {
    Involutivity { edge: usize },
    Commutativity { edges: (usize, usize) },
    Pentagon { edges: (usize, usize) },
}

/// Report from `verify_relations`.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub involutivity: usize,
    pub commutativity: usize,
    pub pentagons: usize,
    pub violations: Vec<String>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check involutivity on every flippable edge, commutativity on every
/// disjoint pair, and pentagons up to `budget` configurations.
pub fn verify_relations(
    graph: &Fatgraph,
    m: &Marking,
    budget: usize,
) -> Result<RelationReport, GraphError> {
    let mut report = RelationReport::default();
    let canon = graph.canonical_form()?;
    // Involutivity: flip forth and back.
    for e in 0..graph.num_edges() {
        if graph.flip(e).is_err() {
            continue;
        }
        let (sums, end, _) = evaluate_sequence(graph, m, &[e, e])?;
        if !sums.is_zero() || end.canonical_form()? != canon {
            report
                .violations
                .push(format!("involutivity broken at edge {e}"));
        }
        report.involutivity += 1;
    }
    // Commutativity: both orders land on the same labeled graph with the
    // same sums.
    for (f, g) in disjoint_pairs(graph) {
        let (s1, g1, _) = evaluate_sequence(graph, m, &[f, g])?;
        let (s2, g2, _) = evaluate_sequence(graph, m, &[g, f])?;
        if s1.j != s2.j || s1.jprime != s2.jprime || s1.m != s2.m || g1 != g2 {
            report
                .violations
                .push(format!("commutativity broken at edges ({f}, {g})"));
        }
        report.commutativity += 1;
    }
    // Pentagons: five alternating flips close the loop with zero sums.
    for (f, g) in pentagon_configs(graph).into_iter().take(budget) {
        match evaluate_sequence(graph, m, &[f, g, f, g, f]) {
            Ok((sums, end, _)) => {
                if !sums.is_zero() || end.canonical_form()? != canon {
                    report
                        .violations
                        .push(format!("pentagon broken at edges ({f}, {g})"));
                }
            }
            Err(err) => {
                report
                    .violations
                    .push(format!("pentagon undefined at edges ({f}, {g}): {err}"));
            }
        }
        report.pentagons += 1;
    }
    Ok(report)
}
