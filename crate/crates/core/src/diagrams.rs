//! Straight-line diagrams, (dotted) idempotents, closeness, degrees, the
//! star antiinvolution, left justification and the Young classifier.
//!
//! Ghosts are never stored. A solid `i`-string has one ghost per edge out of
//! `i`, shifted right by 1, or by `1 - ε²` for the Dtwo edge `1 => 0`. When
//! strings are listed for closeness, consecutive ghosts of one solid count as
//! a single string.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cartan::{Family, QuiverType, StrandKind};
use crate::coords::{Context, InfCoord};
use crate::partitions::{enumerate_parts, MultiPartition};
use crate::{Error, Result};

/// A red or affine red string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RedString {
    pub x: InfCoord,
    pub res: usize,
}

/// A solid string with its dot count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolidString {
    pub x: InfCoord,
    pub res: usize,
    pub dots: u32,
}

/// A diagram in which every string is vertical.
///
/// Affine reds are markers only: they take part in no crossing and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StraightLineDiagram {
    pub reds: Vec<RedString>,
    pub solids: Vec<SolidString>,
    #[serde(default)]
    pub affine_reds: Vec<RedString>,
}

/// Ghost positions and edge tags of a solid `res`-string at `x`.
pub fn ghosts(qt: &QuiverType, res: usize, x: InfCoord) -> Vec<(InfCoord, usize)> {
    qt.out_edges(res)
        .into_iter()
        .map(|ed| {
            let shift = if qt.family == Family::Dtwo && ed.tail == 1 && ed.head == 0 {
                InfCoord::from_int(1) - InfCoord::eps2()
            } else {
                InfCoord::from_int(1)
            };
            (x + shift, ed.head)
        })
        .collect()
}

/// Identifies a string of a straight-line diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StringRef {
    /// Solid string by index into `solids`.
    Solid(usize),
    /// Ghost of a solid string, by solid index and edge tag.
    Ghost(usize, usize),
    /// Red string by index into `reds`.
    Red(usize),
}

/// A positioned string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placed {
    pub x: InfCoord,
    pub kind: StrandKind,
    pub id: StringRef,
}

impl Placed {
    /// Solid index for solids and ghosts.
    pub fn parent(&self) -> Option<usize> {
        match self.id {
            StringRef::Solid(s) | StringRef::Ghost(s, _) => Some(s),
            StringRef::Red(_) => None,
        }
    }

    pub fn is_solid(&self) -> bool {
        matches!(self.kind, StrandKind::Solid { .. })
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self.kind, StrandKind::Ghost { .. })
    }

    pub fn is_red(&self) -> bool {
        matches!(self.kind, StrandKind::Red { .. })
    }
}

impl StraightLineDiagram {
    /// Number of solid strings.
    pub fn len(&self) -> usize {
        self.solids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solids.is_empty()
    }

    /// Solids, derived ghosts and genuine reds, sorted left to right.
    pub fn placed(&self, qt: &QuiverType) -> Vec<Placed> {
        let mut out = Vec::new();
        for (s, sol) in self.solids.iter().enumerate() {
            out.push(Placed { x: sol.x, kind: StrandKind::Solid { res: sol.res }, id: StringRef::Solid(s) });
            for (gx, tag) in ghosts(qt, sol.res, sol.x) {
                out.push(Placed {
                    x: gx,
                    kind: StrandKind::Ghost { res: sol.res, tag },
                    id: StringRef::Ghost(s, tag),
                });
            }
        }
        for (r, red) in self.reds.iter().enumerate() {
            out.push(Placed { x: red.x, kind: StrandKind::Red { res: red.res }, id: StringRef::Red(r) });
        }
        out.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.id.cmp(&b.id)));
        out
    }

    /// Left-to-right strings for closeness, with adjacent ghosts of one solid merged.
    pub fn string_groups(&self, qt: &QuiverType) -> Vec<Vec<Placed>> {
        let mut groups: Vec<Vec<Placed>> = Vec::new();
        for p in self.placed(qt) {
            if let Some(last) = groups.last_mut() {
                let prev = last[0];
                if p.is_ghost() && prev.is_ghost() && prev.parent() == p.parent() {
                    last.push(p);
                    continue;
                }
            }
            groups.push(vec![p]);
        }
        groups
    }

    /// Sum of dot degrees.
    pub fn degree(&self, ctx: &Context) -> i64 {
        self.solids.iter().map(|s| s.dots as i64 * ctx.cd.dot_degree(s.res)).sum()
    }
}

/// True if no other string lies strictly between `s` and `t`; ghost pairs of
/// one solid count as one string.
pub fn close(qt: &QuiverType, d: &StraightLineDiagram, s: StringRef, t: StringRef) -> Result<bool> {
    if s == t {
        return Err(Error::Degenerate("closeness needs two distinct strings".into()));
    }
    let groups = d.string_groups(qt);
    let find = |id: StringRef| groups.iter().position(|g| g.iter().any(|p| p.id == id));
    let gs = find(s).ok_or_else(|| Error::Degenerate(format!("{s:?} is not in the diagram")))?;
    let gt = find(t).ok_or_else(|| Error::Degenerate(format!("{t:?} is not in the diagram")))?;
    Ok(gs.abs_diff(gt) <= 1)
}

/// The idempotent of `λ`: reds at `κ`, affine reds at the affine charge and
/// undotted solids at `hcoord`, in reading order.
pub fn idem(ctx: &Context, lam: &MultiPartition) -> StraightLineDiagram {
    let reds = ctx.reds(false).into_iter().map(|(x, res)| RedString { x, res }).collect();
    let affine_reds = ctx.reds(true).into_iter().skip(ctx.level()).map(|(x, res)| RedString { x, res }).collect();
    let solids = lam
        .reading_order(ctx)
        .iter()
        .map(|nd| SolidString { x: ctx.coord_of(nd), res: nd.res, dots: 0 })
        .collect();
    StraightLineDiagram { reds, solids, affine_reds }
}

/// Reading indices that carry a dot in the dotted idempotent of `λ`.
///
/// A node gets a dot if the next node in reading order lies in the same
/// component and has the same residue. In usual components a node in
/// column `c > 1` also gets a dot if its residue equals that of the node
/// `(m, r+1, 1)` starting the next row.
pub fn dotidem_dots(ctx: &Context, lam: &MultiPartition) -> BTreeSet<usize> {
    let nodes = lam.reading_order(ctx);
    let mut dots = BTreeSet::new();
    for (idx, nd) in nodes.iter().enumerate() {
        if let Some(next) = nodes.get(idx + 1) {
            if next.m == nd.m && next.res == nd.res {
                dots.insert(nd.k);
            }
        }
        if !ctx.is_shifted(nd.m) && nd.c > 1 {
            let row_start = crate::coords::bounce_residue(&ctx.qt, ctx.rho_hat(nd.m), -(nd.r as i64));
            if row_start == nd.res {
                dots.insert(nd.k);
            }
        }
    }
    dots
}

/// The dotted idempotent `y_λ e(λ)`: at most one dot per solid string.
pub fn dotidem(ctx: &Context, lam: &MultiPartition) -> StraightLineDiagram {
    let mut d = idem(ctx, lam);
    for k in dotidem_dots(ctx, lam) {
        d.solids[k - 1].dots = 1;
    }
    d
}

/// Degree of the dotted idempotent.
pub fn dotidem_degree(ctx: &Context, lam: &MultiPartition) -> i64 {
    dotidem(ctx, lam).degree(ctx)
}

/// A diagram whose solids run straight from bottom positions to top positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDiagram {
    pub bottom: StraightLineDiagram,
    pub top: StraightLineDiagram,
    /// `pairing[s]` is the top solid joined to bottom solid `s`.
    pub pairing: Vec<usize>,
}

impl PermutationDiagram {
    /// Validates equal residues and dots along the pairing and equal reds.
    pub fn new(bottom: StraightLineDiagram, top: StraightLineDiagram, pairing: Vec<usize>) -> Result<Self> {
        if bottom.solids.len() != top.solids.len() || pairing.len() != bottom.solids.len() {
            return Err(Error::SizeMismatch(bottom.solids.len(), top.solids.len()));
        }
        let mut seen = vec![false; pairing.len()];
        for (s, &t) in pairing.iter().enumerate() {
            if t >= seen.len() || seen[t] {
                return Err(Error::Degenerate("pairing is not a permutation".into()));
            }
            seen[t] = true;
            let (b, u) = (bottom.solids[s], top.solids[t]);
            if b.res != u.res || b.dots != u.dots {
                return Err(Error::Degenerate(format!("bottom solid {s} and top solid {t} differ")));
            }
        }
        if bottom.reds != top.reds {
            return Err(Error::Degenerate("reds must be fixed".into()));
        }
        Ok(PermutationDiagram { bottom, top, pairing })
    }

    /// The identity diagram on a straight-line diagram.
    pub fn identity(d: &StraightLineDiagram) -> Self {
        PermutationDiagram { bottom: d.clone(), top: d.clone(), pairing: (0..d.solids.len()).collect() }
    }
}

/// Degree of a permutation diagram: dots plus the local degree of every pair
/// of strings (solids, derived ghosts, reds) whose order differs between
/// bottom and top.
pub fn perm_degree(ctx: &Context, pd: &PermutationDiagram) -> i64 {
    let qt = &ctx.qt;
    let mut objs: Vec<(InfCoord, InfCoord, StrandKind)> = Vec::new();
    for (s, &t) in pd.pairing.iter().enumerate() {
        let (b, u) = (pd.bottom.solids[s], pd.top.solids[t]);
        objs.push((b.x, u.x, StrandKind::Solid { res: b.res }));
        for ((gb, tag), (gt, _)) in ghosts(qt, b.res, b.x).into_iter().zip(ghosts(qt, b.res, u.x)) {
            objs.push((gb, gt, StrandKind::Ghost { res: b.res, tag }));
        }
    }
    for red in &pd.bottom.reds {
        objs.push((red.x, red.x, StrandKind::Red { res: red.res }));
    }
    let mut deg = pd.bottom.degree(ctx);
    for i in 0..objs.len() {
        for j in i + 1..objs.len() {
            let (a, b) = (&objs[i], &objs[j]);
            if (a.0 < b.0) != (a.1 < b.1) {
                deg += ctx.cd.crossing_degree(a.2, b.2);
            }
        }
    }
    deg
}

/// Reflection in the horizontal axis of a permutation diagram.
pub fn star(pd: &PermutationDiagram) -> PermutationDiagram {
    let mut inv = vec![0; pd.pairing.len()];
    for (s, &t) in pd.pairing.iter().enumerate() {
        inv[t] = s;
    }
    PermutationDiagram { bottom: pd.top.clone(), top: pd.bottom.clone(), pairing: inv }
}

/// Straight-line diagrams are fixed by the star antiinvolution.
pub fn star_straight(d: &StraightLineDiagram) -> StraightLineDiagram {
    d.clone()
}

/// One entry of a left-justified diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Justified {
    Solid { res: usize, dots: u32 },
    Ghost { res: usize, tag: usize, dots: u32 },
    Red { res: usize },
}

/// The order-preserving canonical form of a straight-line diagram.
pub fn left_justify(qt: &QuiverType, d: &StraightLineDiagram) -> Vec<Justified> {
    d.placed(qt)
        .iter()
        .map(|p| match (p.kind, p.id) {
            (StrandKind::Solid { res }, StringRef::Solid(s)) => Justified::Solid { res, dots: d.solids[s].dots },
            (StrandKind::Ghost { res, tag }, StringRef::Ghost(s, _)) => {
                Justified::Ghost { res, tag, dots: d.solids[s].dots }
            }
            (kind, _) => Justified::Red { res: kind.res() },
        })
        .collect()
}

/// Lookup table from left-justified dotted idempotents to multipartitions.
pub struct YoungIndex {
    ctx: Context,
    table: HashMap<Vec<Justified>, Vec<MultiPartition>>,
}

impl YoungIndex {
    /// Indexes every finite multipartition of size `n`.
    pub fn new(ctx: &Context, n: usize) -> Self {
        let sub = ctx.with_n(n);
        let mut table: HashMap<Vec<Justified>, Vec<MultiPartition>> = HashMap::new();
        for lam in enumerate_parts(&sub) {
            table.entry(left_justify(&sub.qt, &dotidem(&sub, &lam))).or_default().push(lam);
        }
        YoungIndex { ctx: sub, table }
    }

    /// Number of distinct left-justified forms.
    pub fn distinct_forms(&self) -> usize {
        self.table.len()
    }

    /// The unique `λ` with `L(d) = L(dotidem(λ))`, if any.
    pub fn classify(&self, d: &StraightLineDiagram) -> Option<MultiPartition> {
        let reds: Vec<(InfCoord, usize)> = d.reds.iter().map(|r| (r.x, r.res)).collect();
        if reds != self.ctx.reds(false) || d.solids.len() != self.ctx.n {
            return None;
        }
        match self.table.get(&left_justify(&self.ctx.qt, d))?.as_slice() {
            [lam] => Some(lam.clone()),
            _ => None,
        }
    }
}

/// Recovers the multipartition whose dotted idempotent has the same left
/// justification as `d`, or `None`.
///
/// The reds of `d` must sit at the charge of `ctx`; the size is read off `d`.
pub fn young_classify(ctx: &Context, d: &StraightLineDiagram) -> Option<MultiPartition> {
    YoungIndex::new(ctx, d.solids.len()).classify(d)
}

/// True if `λ` has no affine nodes.
pub fn is_steady(ctx: &Context, lam: &MultiPartition) -> bool {
    !lam.has_affine_nodes(ctx)
}

/// One text token per string, left to right: `R0` red, `A1` affine red,
/// `S2*` solid with one dot, `g1>0` ghost of a 1-string tagged `1 -> 0`.
pub fn render_ascii(qt: &QuiverType, d: &StraightLineDiagram, eps: f64) -> String {
    let mut items: Vec<(InfCoord, String)> = d
        .placed(qt)
        .iter()
        .map(|p| {
            let label = match (p.kind, p.id) {
                (StrandKind::Solid { res }, StringRef::Solid(s)) => {
                    format!("S{res}{}", "*".repeat(d.solids[s].dots as usize))
                }
                (StrandKind::Ghost { res, tag }, _) => format!("g{res}>{tag}"),
                (kind, _) => format!("R{}", kind.res()),
            };
            (p.x, label)
        })
        .collect();
    items.extend(d.affine_reds.iter().map(|r| (r.x, format!("A{}", r.res))));
    items.sort_by_key(|a| a.0);
    let mut out = String::new();
    for (x, label) in items {
        let _ = writeln!(out, "{:>9.3}  {label}", x.to_f64(eps));
    }
    out
}
