//! Semistandard and standard tableaux, their permutation diagrams and degrees.
//!
//! A `λ`-tableau of type `μ` assigns to every node of `λ` a distinct
//! type A coordinate `hcoorda` of `μ`. Semistandardness asks for:
//!
//! - (a) `T(m,1,1) <= κ̂_m` for every nonempty component,
//! - (b) `T(m,r,c) + 1 > T(m,r-1,c)` for vertical neighbours,
//! - (c) `T(m,r,c) + 1 > T(m,r,c-1)` for horizontal neighbours,
//! - equal residues at a node and at its image.
//!
//! Standard tableaux index the KLR idempotent truncation. They are fillings
//! of `λ` by the bottom positions `1..n` of a KLR idempotent such that node
//! 1 gets position 1 and every node comes after its predecessors in the
//! diagram order, except a direct row or column neighbour of equal residue.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::coords::{Context, InfCoord, Rat};
use crate::diagrams::{idem, PermutationDiagram, RedString, SolidString, StraightLineDiagram};
use crate::diagrams::perm_degree;
use crate::partitions::{MultiPartition, MultiPartitionJson, NodeInfo};
use crate::{Error, Result};

/// What a tableau is filled with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TableauType {
    /// Type A coordinates of a multipartition.
    Shape(MultiPartition),
    /// KLR bottom positions `1..n`.
    Standard,
}

/// A bijection from the nodes of `shape` to positions of its type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub shape: MultiPartition,
    pub ty: TableauType,
    /// `assignment[k]` is the type position (0-based) of shape node `k + 1`.
    pub assignment: Vec<usize>,
}

/// Serialized tableau.
#[derive(Debug, Clone, Serialize)]
pub struct TableauJson {
    pub shape: MultiPartitionJson,
    #[serde(rename = "type")]
    pub ty: MultiPartitionJson,
    pub entries: Vec<((usize, usize, usize), InfCoord)>,
}

/// Bottom positions of the KLR idempotent: `κ_1 - 1/ĥℓ - (t-1)·3/2 - tε`.
///
/// They run leftwards from the first red string, spaced so that ghosts never
/// coincide with solids.
pub fn klr_positions(ctx: &Context) -> Vec<InfCoord> {
    let h = ctx.hat_ell() as i64;
    (1..=ctx.n as i64)
        .map(|t| {
            let a = Rat::from_integer(ctx.kappa[0]) - Ratio::new(1, h) - Ratio::new(3 * (t - 1), 2);
            InfCoord::new(a, Rat::from_integer(-t), Rat::from_integer(0))
        })
        .collect()
}

/// Type A coordinates of `μ` in reading order.
pub fn type_values(ctx: &Context, mu: &MultiPartition) -> Vec<InfCoord> {
    mu.reading_order(ctx).iter().map(|nd| ctx.coorda_of(nd)).collect()
}

/// Shape-node indices of the left and upper neighbours of each node.
fn neighbours(nodes: &[NodeInfo]) -> Vec<(Option<usize>, Option<usize>)> {
    let find = |m: usize, r: usize, c: usize| nodes.iter().position(|nd| nd.m == m && nd.r == r && nd.c == c);
    nodes
        .iter()
        .map(|nd| {
            let left = if nd.c > 1 { find(nd.m, nd.r, nd.c - 1) } else { None };
            let up = if nd.r > 1 { find(nd.m, nd.r - 1, nd.c) } else { None };
            (left, up)
        })
        .collect()
}

impl Tableau {
    /// Entry of every shape node, in reading order.
    pub fn entries(&self, ctx: &Context) -> Vec<InfCoord> {
        let values = match &self.ty {
            TableauType::Shape(mu) => type_values(ctx, mu),
            TableauType::Standard => klr_positions(ctx),
        };
        self.assignment.iter().map(|&j| values[j]).collect()
    }

    /// Residues of the bottom positions induced by the tableau.
    pub fn bottom_residues(&self, ctx: &Context) -> Vec<usize> {
        let res = self.shape.residue_sequence(ctx);
        let mut out = vec![0; res.len()];
        for (k, &j) in self.assignment.iter().enumerate() {
            out[j] = res[k];
        }
        out
    }

    pub fn to_json(&self, ctx: &Context) -> TableauJson {
        let ty = match &self.ty {
            TableauType::Shape(mu) => mu.to_json(ctx),
            TableauType::Standard => omega(ctx).to_json(ctx),
        };
        let nodes = self.shape.reading_order(ctx);
        TableauJson {
            shape: self.shape.to_json(ctx),
            ty,
            entries: nodes.iter().zip(self.entries(ctx)).map(|(nd, x)| (nd.node(), x)).collect(),
        }
    }
}

/// `ω = (n|∅|…|∅)`.
pub fn omega(ctx: &Context) -> MultiPartition {
    MultiPartition::from_components(ctx, vec![vec![ctx.n]])
}

/// The canonical `λ`-tableau of type `λ`.
pub fn canonical(lam: &MultiPartition) -> Tableau {
    Tableau { shape: lam.clone(), ty: TableauType::Shape(lam.clone()), assignment: (0..lam.size()).collect() }
}

fn is_bijection(assignment: &[usize]) -> bool {
    let set: BTreeSet<usize> = assignment.iter().copied().collect();
    set.len() == assignment.len() && assignment.iter().all(|&j| j < assignment.len())
}

/// Checks conditions (a), (b), (c) and residue compatibility for a tableau of shape type.
pub fn is_semistandard(ctx: &Context, t: &Tableau) -> bool {
    let mu = match &t.ty {
        TableauType::Shape(mu) => mu,
        TableauType::Standard => return is_standard(ctx, t),
    };
    if !is_bijection(&t.assignment) || t.assignment.len() != mu.size() {
        return false;
    }
    let nodes = t.shape.reading_order(ctx);
    let targets = mu.reading_order(ctx);
    let values = type_values(ctx, mu);
    let nbrs = neighbours(&nodes);
    let one = InfCoord::from_int(1);
    nodes.iter().enumerate().all(|(k, nd)| {
        let v = values[t.assignment[k]];
        let anchor_ok = !(nd.r == 1 && nd.c == 1) || v <= InfCoord::from_int(ctx.kappa_hat(nd.m));
        let (left, up) = nbrs[k];
        let left_ok = left.is_none_or(|p| v + one > values[t.assignment[p]]);
        let up_ok = up.is_none_or(|p| v + one > values[t.assignment[p]]);
        anchor_ok && left_ok && up_ok && targets[t.assignment[k]].res == nd.res
    })
}

/// All semistandard `λ`-tableaux of type `μ`, in lexicographic order of the
/// assignment read in reading order.
pub fn enumerate_sstd(ctx: &Context, lam: &MultiPartition, mu: &MultiPartition) -> Result<Vec<Tableau>> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch(lam.size(), mu.size()));
    }
    let nodes = lam.reading_order(ctx);
    let targets = mu.reading_order(ctx);
    let values = type_values(ctx, mu);
    let nbrs = neighbours(&nodes);
    let one = InfCoord::from_int(1);
    let n = nodes.len();
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut w = Vec::with_capacity(n);
    fn rec(
        k: usize,
        ctx: &Context,
        st: (&[NodeInfo], &[NodeInfo], &[InfCoord], &[(Option<usize>, Option<usize>)]),
        used: &mut Vec<bool>,
        w: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        one: InfCoord,
    ) {
        let (nodes, targets, values, nbrs) = st;
        if k == nodes.len() {
            out.push(w.clone());
            return;
        }
        let nd = nodes[k];
        for j in 0..nodes.len() {
            if used[j] || targets[j].res != nd.res {
                continue;
            }
            let v = values[j];
            if nd.r == 1 && nd.c == 1 && v > InfCoord::from_int(ctx.kappa_hat(nd.m)) {
                continue;
            }
            let (left, up) = nbrs[k];
            if left.is_some_and(|p| v + one <= values[w[p]]) || up.is_some_and(|p| v + one <= values[w[p]]) {
                continue;
            }
            used[j] = true;
            w.push(j);
            rec(k + 1, ctx, st, used, w, out, one);
            w.pop();
            used[j] = false;
        }
    }
    let mut raw = Vec::new();
    rec(0, ctx, (&nodes, &targets, &values, &nbrs), &mut used, &mut w, &mut raw, one);
    for assignment in raw {
        out.push(Tableau { shape: lam.clone(), ty: TableauType::Shape(mu.clone()), assignment });
    }
    Ok(out)
}

/// `SStd(λ)`: semistandard tableaux of every finite type `μ` of the same size.
pub fn sstd_all(ctx: &Context, lam: &MultiPartition, types: &[MultiPartition]) -> Vec<Tableau> {
    types
        .iter()
        .filter(|mu| mu.size() == lam.size())
        .flat_map(|mu| enumerate_sstd(ctx, lam, mu).unwrap_or_default())
        .collect()
}

/// Predecessor constraints of the standard order: for each node, the nodes
/// that must receive smaller positions.
fn standard_requirements(nodes: &[NodeInfo]) -> Vec<BTreeSet<usize>> {
    let nbrs = neighbours(nodes);
    let mut preds: Vec<BTreeSet<usize>> = Vec::with_capacity(nodes.len());
    for (k, &(left, up)) in nbrs.iter().enumerate() {
        let mut all = BTreeSet::new();
        for p in [left, up].into_iter().flatten() {
            all.insert(p);
            all.extend(preds[p].iter().copied());
        }
        debug_assert!(all.iter().all(|&p| p < k));
        preds.push(all);
    }
    nbrs.iter()
        .enumerate()
        .map(|(k, &(left, up))| {
            let mut req = preds[k].clone();
            for p in [left, up].into_iter().flatten() {
                if nodes[p].res == nodes[k].res {
                    req.remove(&p);
                }
            }
            req
        })
        .collect()
}

/// Checks the standard conditions on a tableau of standard type.
pub fn is_standard(ctx: &Context, t: &Tableau) -> bool {
    if t.ty != TableauType::Standard || !is_bijection(&t.assignment) {
        return false;
    }
    let nodes = t.shape.reading_order(ctx);
    if t.assignment.first().is_some_and(|&j| j != 0) {
        return false;
    }
    let req = standard_requirements(&nodes);
    req.iter()
        .enumerate()
        .all(|(k, ps)| ps.iter().all(|&p| t.assignment[p] < t.assignment[k]))
}

/// The standard `λ`-tableaux, in lexicographic order of the assignment.
pub fn standard_tableaux(ctx: &Context, lam: &MultiPartition) -> Vec<Tableau> {
    let nodes = lam.reading_order(ctx);
    let req = standard_requirements(&nodes);
    let n = nodes.len();
    let mut out = Vec::new();
    let mut w: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(k: usize, req: &[BTreeSet<usize>], used: &mut Vec<bool>, w: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = req.len();
        if k == n {
            out.push(w.clone());
            return;
        }
        for j in 0..n {
            if used[j] || (k == 0 && j != 0) {
                continue;
            }
            if req[k].iter().any(|&p| w[p] > j) {
                continue;
            }
            used[j] = true;
            w.push(j);
            rec(k + 1, req, used, w, out);
            w.pop();
            used[j] = false;
        }
    }
    let mut raw = Vec::new();
    rec(0, &req, &mut used, &mut w, &mut raw);
    for assignment in raw {
        out.push(Tableau { shape: lam.clone(), ty: TableauType::Standard, assignment });
    }
    out
}

/// The permutation diagram `D_T`: from the type positions at the bottom to
/// `hcoord(λ)` at the top.
pub fn perm_of_tableau(ctx: &Context, t: &Tableau) -> PermutationDiagram {
    let top = idem(ctx, &t.shape);
    let positions: Vec<InfCoord> = match &t.ty {
        TableauType::Shape(mu) => mu.reading_order(ctx).iter().map(|nd| ctx.coord_of(nd)).collect(),
        TableauType::Standard => klr_positions(ctx),
    };
    let n = t.assignment.len();
    let mut solids = vec![SolidString { x: InfCoord::zero(), res: 0, dots: 0 }; n];
    let mut pairing = vec![0; n];
    for (k, &j) in t.assignment.iter().enumerate() {
        solids[j] = SolidString { x: positions[j], res: top.solids[k].res, dots: 0 };
        pairing[j] = k;
    }
    let reds: Vec<RedString> = top.reds.clone();
    let bottom = StraightLineDiagram { reds, solids, affine_reds: top.affine_reds.clone() };
    PermutationDiagram { bottom, top, pairing }
}

/// `deg D_T`.
pub fn tableau_degree(ctx: &Context, t: &Tableau) -> i64 {
    perm_degree(ctx, &perm_of_tableau(ctx, t))
}
