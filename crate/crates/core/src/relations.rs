//! The defining and derived local relations as data, with a verifier for
//! degree homogeneity.
//!
//! A relation lives on a fixed row of strands. Each side is a linear
//! combination of patterns; a pattern records which pairs of strands cross
//! (with multiplicity) and where dots sit. Polynomial coefficients in the dot
//! variables are expanded into dots, so every summand is a single pattern.
//!
//! A ghost strand may name its parent solid inside the window. Its dots then
//! mirror the parent and carry no degree. A ghost without a parent in the
//! window stands for a solid outside it, so a dot drawn on it is a dot of
//! that solid and has the solid's degree.

use serde::Serialize;

use crate::cartan::{q_iji, q_poly, CartanData, QuiverType, StrandKind};

/// Where a dot sits on a strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    Bottom,
    Top,
}

/// A strand of the local window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Strand {
    pub kind: StrandKind,
    /// For ghosts: index of the parent solid if it lies in the window.
    pub parent: Option<usize>,
}

impl Strand {
    pub fn solid(res: usize) -> Self {
        Strand { kind: StrandKind::Solid { res }, parent: None }
    }

    pub fn ghost(res: usize, tag: usize, parent: Option<usize>) -> Self {
        Strand { kind: StrandKind::Ghost { res, tag }, parent }
    }

    pub fn red(res: usize) -> Self {
        Strand { kind: StrandKind::Red { res }, parent: None }
    }
}

/// Crossings and dots on the strands of a window.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Pattern {
    /// Short description of the picture, such as `braid 121`.
    pub shape: String,
    /// Pairs of strands that cross, listed once per crossing.
    pub crossings: Vec<(usize, usize)>,
    pub dots: Vec<(usize, End)>,
}

impl Pattern {
    pub fn identity() -> Self {
        Pattern { shape: "id".into(), crossings: vec![], dots: vec![] }
    }

    pub fn new(shape: &str, crossings: Vec<(usize, usize)>, dots: Vec<(usize, End)>) -> Self {
        Pattern { shape: shape.into(), crossings, dots }
    }

    /// The same pattern with extra bottom dots.
    pub fn with_dots(&self, extra: &[(usize, u32)]) -> Self {
        let mut p = self.clone();
        for &(s, k) in extra {
            for _ in 0..k {
                p.dots.push((s, End::Bottom));
            }
        }
        p
    }

    fn normalized(&self) -> (Vec<(usize, usize)>, Vec<(usize, End)>) {
        let mut c: Vec<(usize, usize)> = self.crossings.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        c.sort_unstable();
        let mut d = self.dots.clone();
        d.sort_unstable();
        (c, d)
    }

    fn mirrored(&self, n: usize) -> Self {
        let m = |s: usize| n - 1 - s;
        Pattern {
            shape: self.shape.clone(),
            crossings: self.crossings.iter().map(|&(a, b)| (m(a), m(b))).collect(),
            dots: self.dots.iter().map(|&(s, e)| (m(s), e)).collect(),
        }
    }
}

/// `coeff · pattern`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Term {
    pub coeff: i64,
    pub pattern: Pattern,
}

/// Whether an entry is a defining relation or derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Provenance {
    Defining,
    Derived,
}

/// A local relation `lhs = Σ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LocalRelation {
    pub name: String,
    pub strands: Vec<Strand>,
    pub lhs: Pattern,
    pub rhs: Vec<Term>,
    /// Pairs of strands that must be close for the relation to apply.
    pub gate: Vec<(usize, usize)>,
    pub provenance: Provenance,
    /// Factor applied to every coefficient by the partner relation.
    pub partner_sign: i64,
}

/// Degree of a pattern on the given strands.
pub fn pattern_degree(cd: &CartanData, strands: &[Strand], p: &Pattern) -> i64 {
    let cross: i64 = p.crossings.iter().map(|&(a, b)| cd.crossing_degree(strands[a].kind, strands[b].kind)).sum();
    let dots: i64 = p
        .dots
        .iter()
        .map(|&(s, _)| match strands[s] {
            Strand { kind: StrandKind::Solid { res }, .. } => cd.dot_degree(res),
            Strand { kind: StrandKind::Ghost { res, .. }, parent: None } => cd.dot_degree(res),
            _ => 0,
        })
        .sum();
    cross + dots
}

/// True if every right-hand summand has the degree of the left-hand side.
pub fn verify_homogeneity(rel: &LocalRelation, cd: &CartanData) -> bool {
    let target = pattern_degree(cd, &rel.strands, &rel.lhs);
    rel.rhs.iter().all(|t| pattern_degree(cd, &rel.strands, &t.pattern) == target)
}

/// The vertical mirror of a relation; mirror-symmetric entries return themselves.
pub fn partner(rel: &LocalRelation) -> LocalRelation {
    let n = rel.strands.len();
    let m = |s: usize| n - 1 - s;
    let strands: Vec<Strand> = rel
        .strands
        .iter()
        .rev()
        .map(|s| Strand { kind: s.kind, parent: s.parent.map(m) })
        .collect();
    let lhs = rel.lhs.mirrored(n);
    let rhs: Vec<Term> = rel
        .rhs
        .iter()
        .map(|t| Term { coeff: t.coeff * rel.partner_sign, pattern: t.pattern.mirrored(n) })
        .collect();
    let symmetric = rel.partner_sign == 1
        && strands == rel.strands
        && lhs.normalized() == rel.lhs.normalized()
        && rhs.len() == rel.rhs.len()
        && rhs
            .iter()
            .zip(&rel.rhs)
            .all(|(a, b)| a.coeff == b.coeff && a.pattern.normalized() == b.pattern.normalized());
    if symmetric {
        return rel.clone();
    }
    let name = match rel.name.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{}'", rel.name),
    };
    LocalRelation {
        name,
        strands,
        lhs,
        rhs,
        gate: rel.gate.iter().map(|&(a, b)| (m(b), m(a))).collect(),
        provenance: rel.provenance,
        partner_sign: rel.partner_sign,
    }
}

fn twice(a: usize, b: usize) -> Vec<(usize, usize)> {
    vec![(a, b), (a, b)]
}

fn braid() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (1, 2)]
}

/// Expands `Q_ij(u, v)` on the strands `(u_strand, v_strand)` into dotted identity terms.
fn q_terms(qt: &QuiverType, i: usize, j: usize, u: usize, v: usize, base: &Pattern) -> Vec<Term> {
    q_poly(qt, i, j)
        .terms()
        .map(|(e, &c)| Term { coeff: c, pattern: base.with_dots(&[(u, e[0]), (v, e[1])]) })
        .collect()
}

fn rel(name: String, strands: Vec<Strand>, lhs: Pattern, rhs: Vec<Term>, provenance: Provenance) -> LocalRelation {
    LocalRelation { name, strands, lhs, rhs, gate: vec![], provenance, partner_sign: 1 }
}

/// The relation catalog of a quiver.
///
/// Defining entries: dot sliding, Reidemeister II for solids, ghosts and
/// reds, braid corrections with `Q_iji` and at red strings, and honest
/// braids. Derived entries: the two solid pull relations, the type A and
/// double-edge pull relations, and the pull past a ghost from a close pair
/// of equal solids.
pub fn catalog(qt: &QuiverType) -> Vec<LocalRelation> {
    use Provenance::*;
    let nv = qt.num_vertices();
    let edges = qt.edges();
    let mut out = Vec::new();
    let id = Pattern::identity();
    let t = |coeff: i64, pattern: Pattern| Term { coeff, pattern };

    for i in 0..nv {
        let ss = vec![Strand::solid(i), Strand::solid(i)];
        let cross = |dots| Pattern::new("cross", vec![(0, 1)], dots);
        out.push(rel(
            format!("dot_slide_same[{i}]"),
            ss.clone(),
            cross(vec![(0, End::Bottom)]),
            vec![t(1, cross(vec![(1, End::Top)])), t(1, id.clone())],
            Defining,
        ));
        out.push(rel(
            format!("rii_same[{i}]"),
            ss.clone(),
            Pattern::new("double", twice(0, 1), vec![]),
            vec![],
            Defining,
        ));
        let sr = vec![Strand::solid(i), Strand::red(i)];
        out.push(rel(
            format!("rii_red[{i}]"),
            sr,
            Pattern::new("double", twice(0, 1), vec![]),
            vec![t(1, id.with_dots(&[(0, 1)]))],
            Defining,
        ));
        let srs = vec![Strand::solid(i), Strand::red(i), Strand::solid(i)];
        out.push(rel(
            format!("braid_red[{i}]"),
            srs,
            Pattern::new("braid 121", braid(), vec![]),
            vec![t(1, Pattern::new("braid 212", braid(), vec![])), t(1, id.clone())],
            Defining,
        ));
        for j in 0..nv {
            if j == i {
                continue;
            }
            let sij = vec![Strand::solid(i), Strand::solid(j)];
            let cross = |dots| Pattern::new("cross", vec![(0, 1)], dots);
            out.push(rel(
                format!("dot_slide[{i},{j}]"),
                sij.clone(),
                cross(vec![(0, End::Bottom)]),
                vec![t(1, cross(vec![(0, End::Top)]))],
                Defining,
            ));
            out.push(rel(
                format!("rii_solid[{i},{j}]"),
                sij,
                Pattern::new("double", twice(0, 1), vec![]),
                vec![t(1, id.clone())],
                Defining,
            ));
            let srj = vec![Strand::solid(i), Strand::red(j)];
            out.push(rel(
                format!("rii_red_free[{i},{j}]"),
                srj,
                Pattern::new("double", twice(0, 1), vec![]),
                vec![t(1, id.clone())],
                Defining,
            ));
            if !qt.adjacent(i, j) {
                let sjs = vec![Strand::solid(i), Strand::solid(j), Strand::solid(i)];
                out.push(rel(
                    format!("braid[{i},{j}]"),
                    sjs,
                    Pattern::new("braid 121", braid(), vec![]),
                    vec![t(1, Pattern::new("braid 212", braid(), vec![]))],
                    Defining,
                ));
            }
        }
    }

    for ed in &edges {
        let (i, j) = (ed.tail, ed.head);
        let gs = vec![Strand::ghost(i, j, None), Strand::solid(j)];
        out.push(rel(
            format!("rii_ghost[{i}->{j}]"),
            gs,
            Pattern::new("double", twice(0, 1), vec![]),
            q_terms(qt, i, j, 0, 1, &id),
            Defining,
        ));
        let sg = vec![Strand::solid(j), Strand::ghost(i, j, None)];
        out.push(rel(
            format!("rii_ghost_rev[{i}->{j}]"),
            sg,
            Pattern::new("double", twice(0, 1), vec![]),
            q_terms(qt, i, j, 1, 0, &id),
            Defining,
        ));
        let sgs = vec![Strand::solid(j), Strand::ghost(i, j, None), Strand::solid(j)];
        let mut rhs = vec![t(1, Pattern::new("braid 212", braid(), vec![]))];
        let qiji = q_iji(qt, i, j).expect("edge endpoints differ");
        for (e, &c) in qiji.terms() {
            rhs.push(t(c, id.with_dots(&[(1, e[0]), (0, e[1]), (2, e[2])])));
        }
        out.push(rel(
            format!("braid_ghost[{i}->{j}]"),
            sgs,
            Pattern::new("braid 121", braid(), vec![]),
            rhs,
            Defining,
        ));
    }

    for i in 0..nv {
        let ss = vec![Strand::solid(i), Strand::solid(i)];
        let dbl = |dots: Vec<(usize, End)>| Pattern::new("double", twice(0, 1), dots);
        out.push(LocalRelation {
            gate: vec![(0, 1)],
            ..rel(
                format!("two_solid_pull[{i}]"),
                ss.clone(),
                id.clone(),
                vec![
                    t(1, dbl(vec![(0, End::Top), (1, End::Bottom)])),
                    t(-1, dbl(vec![(0, End::Top), (0, End::Bottom)])),
                ],
                Derived,
            )
        });
        out.push(LocalRelation {
            gate: vec![(0, 1)],
            ..rel(
                format!("two_solid_jump[{i}]"),
                ss,
                id.with_dots(&[(0, 1)]),
                vec![
                    t(1, id.with_dots(&[(1, 1)])),
                    t(1, dbl(vec![(0, End::Top), (0, End::Bottom), (1, End::Bottom)])),
                    t(-1, dbl(vec![(0, End::Top), (0, End::Bottom), (0, End::Bottom)])),
                ],
                Derived,
            )
        });
    }

    for ed in &edges {
        let (i, j) = (ed.tail, ed.head);
        let gs = vec![Strand::ghost(i, j, None), Strand::solid(j)];
        let jdots = if ed.double { 2 } else { 1 };
        let kind = if ed.double { "pull_double" } else { "pull_single" };
        out.push(LocalRelation {
            gate: vec![(0, 1)],
            ..rel(
                format!("{kind}[{i}->{j}]"),
                gs,
                id.with_dots(&[(0, 1)]),
                vec![t(1, Pattern::new("double", twice(0, 1), vec![])), t(1, id.with_dots(&[(1, jdots)]))],
                Derived,
            )
        });
    }

    // Two close solid i-strings whose ghosts flank a solid j-string; valid for
    // single edges i -> j and for double edges j => i.
    for i in 0..nv {
        for j in 0..nv {
            let single = qt.edge(i, j).is_some_and(|e| !e.double);
            let reversed_double = qt.is_double(j, i) && qt.edge(i, j).is_some();
            if !(single || reversed_double) {
                continue;
            }
            let strands = vec![
                Strand::solid(i),
                Strand::solid(i),
                Strand::ghost(i, j, Some(0)),
                Strand::solid(j),
                Strand::ghost(i, j, Some(1)),
            ];
            let crossings = vec![(0, 1), (0, 1), (2, 4), (2, 4), (2, 3), (2, 3)];
            out.push(LocalRelation {
                gate: vec![(0, 1), (2, 3), (3, 4)],
                partner_sign: -1,
                ..rel(
                    format!("pull_ghost_pair[{i}->{j}]"),
                    strands,
                    id.clone(),
                    vec![
                        t(-1, Pattern::new("double pair", crossings.clone(), vec![(1, End::Bottom), (4, End::Bottom)])),
                        t(-1, Pattern::new("double pair", crossings, vec![(0, End::Bottom), (2, End::Bottom)])),
                    ],
                    Derived,
                )
            });
        }
    }

    // A close pair of solid i-strings next to a ghost j-string, for i not
    // receiving a double edge from j: the first pull relation with a
    // spectator ghost.
    for i in 0..nv {
        for j in 0..nv {
            if qt.is_double(j, i) {
                continue;
            }
            let Some(ed) = qt.out_edges(j).into_iter().next() else { continue };
            let strands = vec![Strand::solid(i), Strand::solid(i), Strand::ghost(j, ed.head, None)];
            let dbl = |dots: Vec<(usize, End)>| Pattern::new("double", twice(0, 1), dots);
            out.push(LocalRelation {
                gate: vec![(0, 1), (1, 2)],
                ..rel(
                    format!("quadruple_pull[{i},{j}]"),
                    strands,
                    id.clone(),
                    vec![
                        t(1, dbl(vec![(0, End::Top), (1, End::Bottom)])),
                        t(-1, dbl(vec![(0, End::Top), (0, End::Bottom)])),
                    ],
                    Derived,
                )
            });
        }
    }
    out
}
