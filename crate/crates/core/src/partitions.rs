//! (Shifted) multipartitions, their nodes in row reading order, enumeration
//! of the finite and affine sets, addable nodes and dominance.
//!
//! A component whose red label is a multisink holds a shifted partition:
//! row `r` occupies columns `r..r+λ_r-1` and its nodes have diagonal index
//! `0..λ_r-1`. Usual components use columns `1..=λ_r` and diagonal `c - r`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coords::{bounce_residue, max_finite_coord, Context, InfCoord};
use crate::diagrams::dotidem_dots;
use crate::{Error, Result};

/// A node `(m, r, c)` together with its reading index, diagonal and residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeInfo {
    /// 1-based position in row reading order.
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub c: usize,
    pub diag: i64,
    pub res: usize,
}

impl NodeInfo {
    pub fn node(&self) -> (usize, usize, usize) {
        (self.m, self.r, self.c)
    }
}

/// A tuple of partitions, one per component.
///
/// The canonical form keeps at least `ℓ` components and drops trailing empty
/// affine components, so equal multipartitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPartition {
    pub components: Vec<Vec<usize>>,
}

impl MultiPartition {
    /// Builds and canonicalizes without validation.
    pub fn from_components(ctx: &Context, mut components: Vec<Vec<usize>>) -> Self {
        for comp in &mut components {
            while comp.last() == Some(&0) {
                comp.pop();
            }
        }
        while components.len() > ctx.level() && components.last().is_some_and(|c| c.is_empty()) {
            components.pop();
        }
        while components.len() < ctx.level() {
            components.push(Vec::new());
        }
        MultiPartition { components }
    }

    /// Builds, canonicalizes and validates.
    pub fn new(ctx: &Context, components: Vec<Vec<usize>>) -> Result<Self> {
        let lam = MultiPartition::from_components(ctx, components);
        lam.validate(ctx)?;
        Ok(lam)
    }

    /// The empty multipartition.
    pub fn empty(ctx: &Context) -> Self {
        MultiPartition::from_components(ctx, Vec::new())
    }

    /// A single-component shape in component 1.
    pub fn single(ctx: &Context, parts: &[usize]) -> Result<Self> {
        MultiPartition::new(ctx, vec![parts.to_vec()])
    }

    /// Checks part monotonicity per component and the component bound `ĥℓ`.
    pub fn validate(&self, ctx: &Context) -> Result<()> {
        if self.components.len() > ctx.hat_ell().max(ctx.level()) {
            return Err(Error::InvalidPartition(format!(
                "{} components exceed the bound {}",
                self.components.len(),
                ctx.hat_ell()
            )));
        }
        for (idx, comp) in self.components.iter().enumerate() {
            let m = idx + 1;
            if comp.contains(&0) {
                return Err(Error::InvalidPartition(format!("component {m} has a zero part")));
            }
            let ok = if ctx.is_shifted(m) {
                comp.windows(2).all(|w| w[0] > w[1])
            } else {
                comp.windows(2).all(|w| w[0] >= w[1])
            };
            if !ok {
                let kind = if ctx.is_shifted(m) { "strictly" } else { "weakly" };
                return Err(Error::InvalidPartition(format!(
                    "component {m} = {comp:?} is not {kind} decreasing"
                )));
            }
        }
        Ok(())
    }

    /// Total number of nodes.
    pub fn size(&self) -> usize {
        self.components.iter().flatten().sum()
    }

    /// True if a node lies in a component beyond the level.
    pub fn has_affine_nodes(&self, ctx: &Context) -> bool {
        self.components.iter().skip(ctx.level()).any(|c| !c.is_empty())
    }

    /// Nodes in row reading order: by component, then row, then column.
    pub fn reading_order(&self, ctx: &Context) -> Vec<NodeInfo> {
        let mut out = Vec::with_capacity(self.size());
        let mut k = 0;
        for (idx, comp) in self.components.iter().enumerate() {
            let m = idx + 1;
            let shifted = ctx.is_shifted(m);
            let rho = ctx.rho_hat(m);
            for (ridx, &len) in comp.iter().enumerate() {
                let r = ridx + 1;
                for i in 0..len {
                    k += 1;
                    let (c, diag) = if shifted {
                        (r + i, i as i64)
                    } else {
                        (i + 1, i as i64 - ridx as i64)
                    };
                    let res = bounce_residue(&ctx.qt, rho, diag);
                    out.push(NodeInfo { k, m, r, c, diag, res });
                }
            }
        }
        out
    }

    /// Reading data of the node `(m, r, c)`.
    pub fn node_info(&self, ctx: &Context, node: (usize, usize, usize)) -> Result<NodeInfo> {
        self.reading_order(ctx)
            .into_iter()
            .find(|nd| nd.node() == node)
            .ok_or(Error::NodeNotFound(node.0, node.1, node.2))
    }

    /// Residues in reading order.
    pub fn residue_sequence(&self, ctx: &Context) -> Vec<usize> {
        self.reading_order(ctx).iter().map(|nd| nd.res).collect()
    }

    /// `(component, residue)` in reading order; equal keys mean equal undotted idempotents.
    pub fn idem_key(&self, ctx: &Context) -> Vec<(usize, usize)> {
        self.reading_order(ctx).iter().map(|nd| (nd.m, nd.res)).collect()
    }

    /// JSON form `{"components":[[4,2]],"shifted":[true]}`.
    pub fn to_json(&self, ctx: &Context) -> MultiPartitionJson {
        MultiPartitionJson {
            components: self.components.clone(),
            shifted: (1..=self.components.len()).map(|m| ctx.is_shifted(m)).collect(),
        }
    }
}

impl fmt::Display for MultiPartition {
    /// `(4,2)` for one component, `(2|1|∅)` for several, `∅` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.iter().all(|c| c.is_empty()) && self.components.len() <= 1 {
            return write!(f, "∅");
        }
        let body: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "∅".to_string()
                } else {
                    c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                }
            })
            .collect();
        write!(f, "({})", body.join("|"))
    }
}

/// Serialized multipartition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPartitionJson {
    pub components: Vec<Vec<usize>>,
    pub shifted: Vec<bool>,
}

fn partitions_of(n: usize, max_part: usize, strict: bool, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=n.min(max_part)).rev() {
        cur.push(p);
        let next_max = if strict { p - 1 } else { p };
        partitions_of(n - p, next_max, strict, out, cur);
        cur.pop();
    }
}

/// Partitions of `n` in decreasing lexicographic order; `strict` gives distinct parts.
pub fn partitions(n: usize, strict: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    partitions_of(n, n, strict, &mut out, &mut Vec::new());
    out
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for a in 0..=n {
        for mut rest in compositions(n - a, parts - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// All finite multipartitions of size `ctx.n` (components `1..=ℓ`).
///
/// The order is deterministic: by the size vector, then by decreasing parts.
pub fn enumerate_parts(ctx: &Context) -> Vec<MultiPartition> {
    let l = ctx.level();
    let mut out = Vec::new();
    for sizes in compositions(ctx.n, l) {
        let choices: Vec<Vec<Vec<usize>>> = sizes
            .iter()
            .enumerate()
            .map(|(idx, &s)| partitions(s, ctx.is_shifted(idx + 1)))
            .collect();
        let mut idx = vec![0usize; l];
        'outer: loop {
            let comps: Vec<Vec<usize>> = (0..l).map(|m| choices[m][idx[m]].clone()).collect();
            out.push(MultiPartition::from_components(ctx, comps));
            for m in (0..l).rev() {
                idx[m] += 1;
                if idx[m] < choices[m].len() {
                    continue 'outer;
                }
                idx[m] = 0;
            }
            break;
        }
    }
    out
}

/// Addable nodes of residue `i`, across all `ĥℓ` components.
///
/// Shifted components reject `λ` itself if it is not strict.
pub fn addable_nodes(ctx: &Context, lam: &MultiPartition, i: usize) -> Result<Vec<(usize, usize, usize)>> {
    lam.validate(ctx)?;
    Ok(addable_all(ctx, lam).into_iter().filter(|&(_, res)| res == i).map(|(nd, _)| nd).collect())
}

/// Every addable node with its residue.
fn addable_all(ctx: &Context, lam: &MultiPartition) -> Vec<((usize, usize, usize), usize)> {
    let mut out = Vec::new();
    let h = ctx.hat_ell();
    for m in 1..=h {
        let comp: &[usize] = lam.components.get(m - 1).map(|c| c.as_slice()).unwrap_or(&[]);
        let shifted = ctx.is_shifted(m);
        let rho = ctx.rho_hat(m);
        for ridx in 0..=comp.len() {
            let cur = comp.get(ridx).copied().unwrap_or(0);
            let ok = if ridx == 0 {
                true
            } else if shifted {
                comp[ridx - 1] > cur + 1
            } else {
                comp[ridx - 1] > cur
            };
            if !ok {
                continue;
            }
            let r = ridx + 1;
            let (c, diag) = if shifted {
                (r + cur, cur as i64)
            } else {
                (cur + 1, cur as i64 - ridx as i64)
            };
            out.push(((m, r, c), bounce_residue(&ctx.qt, rho, diag)));
        }
    }
    out
}

fn add_node(ctx: &Context, lam: &MultiPartition, node: (usize, usize, usize)) -> MultiPartition {
    let mut comps = lam.components.clone();
    while comps.len() < node.0 {
        comps.push(Vec::new());
    }
    let comp = &mut comps[node.0 - 1];
    if comp.len() < node.1 {
        comp.push(1);
    } else {
        comp[node.1 - 1] += 1;
    }
    MultiPartition::from_components(ctx, comps)
}

/// The affine multipartitions of size `ctx.n`, built one addable node at a time.
///
/// An addable `i`-node with affine coordinate is added only if every
/// addable `i`-node strictly to its left has a finite coordinate.
pub fn enumerate_hparts(ctx: &Context) -> Vec<MultiPartition> {
    let mut level: BTreeSet<MultiPartition> = BTreeSet::new();
    level.insert(MultiPartition::empty(ctx));
    let bound = max_finite_coord(ctx);
    for _ in 0..ctx.n {
        let mut next = BTreeSet::new();
        for lam in &level {
            let adds = addable_all(ctx, lam);
            let placed: Vec<(((usize, usize, usize), usize), InfCoord)> = adds
                .iter()
                .map(|&(nd, res)| {
                    let grown = add_node(ctx, lam, nd);
                    let info = grown.node_info(ctx, nd).expect("added node present");
                    ((nd, res), ctx.coord_of(&info))
                })
                .collect();
            let is_affine = |x: &InfCoord| bound.is_none_or(|b| *x > b);
            for &((nd, res), x) in &placed {
                if is_affine(&x) {
                    let blocked = placed
                        .iter()
                        .any(|&((_, r2), y)| r2 == res && y < x && is_affine(&y));
                    if blocked {
                        continue;
                    }
                }
                next.insert(add_node(ctx, lam, nd));
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Dots of the dotted idempotent, indexed by reading order, as a 0/1 vector.
fn dot_vector(ctx: &Context, lam: &MultiPartition) -> Vec<u32> {
    let dots = dotidem_dots(ctx, lam);
    (1..=lam.size()).map(|k| u32::from(dots.contains(&k))).collect()
}

/// True if some residue-preserving bijection `d: λ -> μ` has
/// `hcoord(α) >= hcoord(d(α))` and at least as many dotted-idempotent dots at
/// `α` as at `d(α)`, for all `α`.
///
/// A solid string keeps its residue when it moves, so `d` matches strings of
/// equal residue. Without this, Dtwo shapes whose 0- and 2-strings trade
/// places would dominate each other.
pub fn dominates(ctx: &Context, lam: &MultiPartition, mu: &MultiPartition) -> Result<bool> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch(lam.size(), mu.size()));
    }
    let xs: Vec<(InfCoord, usize)> = lam.reading_order(ctx).iter().map(|nd| (ctx.coord_of(nd), nd.res)).collect();
    let ys: Vec<(InfCoord, usize)> = mu.reading_order(ctx).iter().map(|nd| (ctx.coord_of(nd), nd.res)).collect();
    let dl = dot_vector(ctx, lam);
    let dm = dot_vector(ctx, mu);
    let allowed = |a: usize, b: usize| xs[a].1 == ys[b].1 && xs[a].0 >= ys[b].0 && dl[a] >= dm[b];
    Ok(perfect_matching(xs.len(), &allowed))
}

/// Kuhn's augmenting-path test for a perfect matching in an `n × n` bipartite graph.
fn perfect_matching(n: usize, allowed: &dyn Fn(usize, usize) -> bool) -> bool {
    fn augment(
        a: usize,
        n: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for b in 0..n {
            if allowed(a, b) && !seen[b] {
                seen[b] = true;
                if owner[b].is_none_or(|o| augment(o, n, allowed, seen, owner)) {
                    owner[b] = Some(a);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; n];
    (0..n).all(|a| augment(a, n, allowed, &mut vec![false; n], &mut owner))
}

/// True if `λ` and `μ` have identical undotted idempotents.
pub fn idem_equivalent(ctx: &Context, lam: &MultiPartition, mu: &MultiPartition) -> bool {
    lam.idem_key(ctx) == mu.idem_key(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    fn ctx(f: Family, e: usize, n: usize, rho: usize) -> Context {
        Context::level_one(f, e, n, rho).unwrap()
    }

    #[test]
    fn reading_order_of_shifted_shape() {
        let c = ctx(Family::Dtwo, 2, 6, 0);
        let lam = MultiPartition::single(&c, &[4, 2]).unwrap();
        let nodes: Vec<_> = lam.reading_order(&c).iter().map(|nd| nd.node()).collect();
        assert_eq!(nodes, vec![(1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 1, 4), (1, 2, 2), (1, 2, 3)]);
        assert_eq!(lam.residue_sequence(&c), vec![0, 1, 2, 2, 0, 1]);
    }

    #[test]
    fn residue_sequence_examples() {
        let c = ctx(Family::Atwo, 2, 9, 2);
        let lam = MultiPartition::single(&c, &[8, 1]).unwrap();
        assert_eq!(lam.residue_sequence(&c), vec![2, 1, 0, 1, 2, 2, 1, 0, 2]);
        let c1 = ctx(Family::Atwo, 3, 1, 1);
        assert_eq!(MultiPartition::single(&c1, &[1]).unwrap().residue_sequence(&c1), vec![1]);
    }

    #[test]
    fn reading_order_multi() {
        let q = crate::cartan::QuiverType::new(Family::Atwo, 3).unwrap();
        let c = Context::new(q, 9, vec![0, 1, 2], vec![0, 1, 2]).unwrap();
        let lam = MultiPartition::new(&c, vec![vec![3], vec![2, 1], vec![1, 1, 1]]).unwrap();
        let ks: Vec<_> = lam.reading_order(&c).iter().map(|nd| (nd.k, nd.m, nd.r, nd.c)).collect();
        assert_eq!(ks[3], (4, 2, 1, 1));
        assert_eq!(ks[5], (6, 2, 2, 1));
        assert_eq!(ks[8], (9, 3, 3, 1));
    }

    #[test]
    fn enumerate_small() {
        let a0 = ctx(Family::Atwo, 2, 3, 0);
        let got: Vec<String> = enumerate_parts(&a0).iter().map(|l| l.to_string()).collect();
        assert_eq!(got, vec!["(3)", "(2,1)", "(1,1,1)"]);
        let a2 = ctx(Family::Atwo, 2, 3, 2);
        let got: Vec<String> = enumerate_parts(&a2).iter().map(|l| l.to_string()).collect();
        assert_eq!(got, vec!["(3)", "(2,1)"]);
        let z = ctx(Family::Atwo, 2, 0, 0);
        assert_eq!(enumerate_parts(&z), vec![MultiPartition::empty(&z)]);
    }

    #[test]
    fn shifted_validation() {
        let c = ctx(Family::Atwo, 2, 2, 2);
        assert!(MultiPartition::single(&c, &[1, 1]).is_err());
        let bad = MultiPartition { components: vec![vec![1, 1]] };
        assert!(addable_nodes(&c, &bad, 0).is_err());
    }

    #[test]
    fn addable_examples() {
        let c = ctx(Family::Atwo, 2, 4, 2);
        let lam = MultiPartition::single(&c, &[3]).unwrap();
        let res = bounce_residue(&c.qt, 2, 0);
        let nodes = addable_nodes(&c, &lam, res).unwrap();
        assert!(nodes.contains(&(1, 2, 2)));
        let z = ctx(Family::Atwo, 2, 1, 0);
        let nodes = addable_nodes(&z, &MultiPartition::empty(&z), 0).unwrap();
        assert!(nodes.contains(&(1, 1, 1)));
    }

    #[test]
    fn hparts_contain_named_examples() {
        let c = ctx(Family::Atwo, 2, 3, 0);
        let hp = enumerate_hparts(&c);
        let mu1 = MultiPartition::new(&c, vec![vec![2], vec![1]]).unwrap();
        let mu2 = MultiPartition::new(&c, vec![vec![1], vec![1], vec![1]]).unwrap();
        assert!(hp.contains(&mu1));
        assert!(hp.contains(&mu2));
        for lam in enumerate_parts(&c) {
            assert!(hp.contains(&lam));
        }
        let z = ctx(Family::Atwo, 2, 0, 0);
        assert_eq!(enumerate_hparts(&z), vec![MultiPartition::empty(&z)]);
    }

    #[test]
    fn idem_equivalence() {
        let c = ctx(Family::Atwo, 2, 3, 0);
        let l3 = MultiPartition::single(&c, &[3]).unwrap();
        let l111 = MultiPartition::single(&c, &[1, 1, 1]).unwrap();
        let l21 = MultiPartition::single(&c, &[2, 1]).unwrap();
        assert!(idem_equivalent(&c, &l3, &l111));
        assert!(idem_equivalent(&c, &l3, &l3));
        assert!(!idem_equivalent(&c, &l3, &l21));
    }

    #[test]
    fn dominance_reflexive_and_size_checked() {
        let c = ctx(Family::Dtwo, 2, 3, 0);
        let parts = enumerate_parts(&c);
        for lam in &parts {
            assert!(dominates(&c, lam, lam).unwrap());
        }
        let small = MultiPartition::single(&c, &[1]).unwrap();
        assert!(dominates(&c, &parts[0], &small).is_err());
    }

    #[test]
    fn json_shape() {
        let c = ctx(Family::Dtwo, 2, 6, 0);
        let lam = MultiPartition::single(&c, &[4, 2]).unwrap();
        let s = serde_json::to_string(&lam.to_json(&c)).unwrap();
        assert_eq!(s, r#"{"components":[[4,2]],"shifted":[true]}"#);
    }
}
