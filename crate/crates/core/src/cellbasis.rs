//! Sandwich slots, basis enumeration, graded dimensions and dimension formulas.
//!
//! The finite sandwiched algebra of `λ` is a product of dual-number factors,
//! one per finite dot slot. A slot is found on the idempotent of `λ` by two
//! close configurations for a double edge `i => j`:
//!
//! - P1: a solid `j`-string followed by a ghost `i`-string carrying the tag
//!   `j`, where intervening solids neither of residue `j` nor adjacent to `j`
//!   are skipped, and the string after the ghost is not a solid or red
//!   `j`-string. The slot sits on the solid `j`-string.
//! - P2: a ghost of an `i`-string with `1 <= i <= e-1` directly followed by a
//!   solid `j`-string `t`, where `t` is not followed by a solid or red
//!   `j`-string and has no P1 slot. The slot sits on the `i`-string.
//!
//! In both cases the `j`-string must not carry a dot in the dotted
//! idempotent of any `μ` with the same undotted idempotent as `λ`.
//! Affine reds are not part of the diagram and never interrupt closeness.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::coords::{max_finite_coord, Context};
use crate::diagrams::{dotidem_degree, dotidem_dots, idem, Placed};
use crate::laurent::Laurent;
use crate::partitions::{enumerate_hparts, enumerate_parts, MultiPartition};
use crate::tableaux::{enumerate_sstd, sstd_all, standard_tableaux, tableau_degree, Tableau};
use crate::{Error, Result};

/// A finite dot slot: reading index and degree `2 d_res` of its dot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub k: usize,
    pub degree: i64,
}

/// Slot data of `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichSpec {
    /// Reading indices of strings with affine coordinates.
    pub affine: Vec<usize>,
    pub finite: Vec<Slot>,
}

/// Union of the dotted-idempotent dots of `λ` and of every `μ` in `pool`
/// with the same undotted idempotent.
pub fn dot_exclusions(ctx: &Context, lam: &MultiPartition, pool: &[MultiPartition]) -> BTreeSet<usize> {
    let key = lam.idem_key(ctx);
    let mut ex = dotidem_dots(ctx, lam);
    for mu in pool {
        if mu.idem_key(ctx) == key {
            ex.extend(dotidem_dots(ctx, mu));
        }
    }
    ex
}

/// The default pool for exclusions: finite multipartitions for finite `λ`,
/// affine ones otherwise.
pub fn default_pool(ctx: &Context, lam: &MultiPartition) -> Vec<MultiPartition> {
    if lam.has_affine_nodes(ctx) {
        enumerate_hparts(ctx)
    } else {
        enumerate_parts(ctx)
    }
}

/// Finite dot slots of `λ`, sorted by reading index.
pub fn finite_dot_slots(ctx: &Context, lam: &MultiPartition, pool: &[MultiPartition]) -> Vec<Slot> {
    let qt = &ctx.qt;
    let ex = dot_exclusions(ctx, lam, pool);
    let groups = idem(ctx, lam).string_groups(qt);
    let len = groups.len();
    let head = |p: usize| -> Placed { groups[p][0] };
    let reading = |p: &Placed| p.parent().map(|s| s + 1);
    let is_j_string = |p: usize, j: usize| p < len && !head(p).is_ghost() && head(p).kind.res() == j;

    let mut p1 = BTreeSet::new();
    for p in 0..len {
        let s = head(p);
        if !s.is_solid() {
            continue;
        }
        let (k, j) = (reading(&s).unwrap(), s.kind.res());
        let mut q = p + 1;
        while q < len && head(q).is_solid() && head(q).kind.res() != j && !qt.adjacent(head(q).kind.res(), j) {
            q += 1;
        }
        if q >= len || ex.contains(&k) {
            continue;
        }
        let g = head(q);
        let tagged = groups[q].iter().any(|x| matches!(x.kind, crate::cartan::StrandKind::Ghost { tag, .. } if tag == j));
        if g.is_ghost() && qt.is_double(g.kind.res(), j) && tagged && !is_j_string(q + 1, j) {
            p1.insert(k);
        }
    }

    let mut slots = p1.clone();
    for p in 0..len {
        let g = head(p);
        if !g.is_ghost() || p + 1 >= len {
            continue;
        }
        let (i, k) = (g.kind.res(), reading(&g).unwrap());
        if !(1..qt.e).contains(&i) {
            continue;
        }
        let t = head(p + 1);
        if !t.is_solid() {
            continue;
        }
        let (j, tk) = (t.kind.res(), reading(&t).unwrap());
        if !qt.is_double(i, j) || ex.contains(&tk) || is_j_string(p + 2, j) || p1.contains(&tk) {
            continue;
        }
        slots.insert(k);
    }

    let res = lam.residue_sequence(ctx);
    slots.into_iter().map(|k| Slot { k, degree: ctx.cd.dot_degree(res[k - 1]) }).collect()
}

/// Reading indices of strings whose coordinate exceeds the maximal finite coordinate.
pub fn affine_slots(ctx: &Context, lam: &MultiPartition) -> Vec<usize> {
    let bound = max_finite_coord(ctx);
    lam.reading_order(ctx)
        .iter()
        .filter(|nd| bound.is_none_or(|b| ctx.coord_of(nd) > b))
        .map(|nd| nd.k)
        .collect()
}

/// Affine and finite slot data of `λ`.
pub fn sandwich_spec(ctx: &Context, lam: &MultiPartition, pool: &[MultiPartition]) -> SandwichSpec {
    SandwichSpec { affine: affine_slots(ctx, lam), finite: finite_dot_slots(ctx, lam, pool) }
}

/// All finite dot vectors `f` with `0 <= f_k <= c_k`, indexed by reading order.
pub fn finch_vectors(n: usize, slots: &[Slot]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for slot in slots {
        let with: Vec<Vec<u32>> = out
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g[slot.k - 1] = 1;
                g
            })
            .collect();
        out.extend(with);
    }
    out.sort();
    out
}

/// Graded dimension of the sandwiched algebra.
///
/// The cyclotomic case is `∏ (1 + q^{deg})` over finite slots. The affine
/// case also multiplies, per affine slot, the geometric series in its dot
/// degree cut off above `truncation` (inclusive).
pub fn sandwich_gdim(
    ctx: &Context,
    lam: &MultiPartition,
    spec: &SandwichSpec,
    cyclotomic: bool,
    truncation: Option<i64>,
) -> Result<Laurent> {
    let mut p = Laurent::one();
    for s in &spec.finite {
        p = p.mul(&Laurent::from_terms([(0, 1), (s.degree, 1)]));
    }
    if cyclotomic {
        return Ok(p);
    }
    let top = truncation.ok_or_else(|| Error::InvalidConfig("affine sandwich needs a truncation degree".into()))?;
    let res = lam.residue_sequence(ctx);
    for &k in &spec.affine {
        let step = ctx.cd.dot_degree(res[k - 1]);
        let series = Laurent::from_terms((0..).map(|t| t * step).take_while(|&d| d <= top).map(|d| (d, 1)));
        p = p.mul(&series);
    }
    Ok(Laurent::from_terms(p.terms().filter(|&(d, _)| d <= top)))
}

fn require_finite(ctx: &Context, lam: &MultiPartition) -> Result<()> {
    if lam.has_affine_nodes(ctx) {
        return Err(Error::InvalidPartition(format!("{lam} has affine nodes")));
    }
    if lam.size() != ctx.n {
        return Err(Error::SizeMismatch(lam.size(), ctx.n));
    }
    Ok(())
}

/// Graded dimension of the idempotent truncation `e(λ) W e(λ)` of the
/// cyclotomic weighted KLRW algebra at the cell `λ`:
/// `Σ_{S,T ∈ SStd(λ,λ)} q^{deg S + deg T + deg y_λ} · sandwich`.
pub fn wklrw_truncated_gdim(ctx: &Context, lam: &MultiPartition) -> Result<Laurent> {
    require_finite(ctx, lam)?;
    let pool = enumerate_parts(ctx);
    let spec = sandwich_spec(ctx, lam, &pool);
    let sw = sandwich_gdim(ctx, lam, &spec, true, None)?;
    let degs: Vec<i64> = enumerate_sstd(ctx, lam, lam)?.iter().map(|t| tableau_degree(ctx, t)).collect();
    let yd = dotidem_degree(ctx, lam);
    let mut total = Laurent::zero();
    for a in &degs {
        for b in &degs {
            total = total.add(&sw.shift(a + b + yd));
        }
    }
    Ok(total)
}

/// Per-`β` graded dimensions and tableau counts of the cyclotomic KLR algebra.
#[derive(Debug, Clone, Default)]
pub struct KlrTable {
    pub gdim: BTreeMap<Vec<usize>, Laurent>,
    /// Number of standard tableaux with bottom residues `β`.
    pub tableaux: BTreeMap<Vec<usize>, usize>,
}

/// Graded dimensions `dim_q e(β) R e(β)` for every `β` reached by a standard tableau.
pub fn klr_table(ctx: &Context) -> KlrTable {
    let pool = enumerate_parts(ctx);
    let mut table = KlrTable::default();
    for lam in &pool {
        let spec = sandwich_spec(ctx, lam, &pool);
        let sw = sandwich_gdim(ctx, lam, &spec, true, None).expect("cyclotomic");
        let yd = dotidem_degree(ctx, lam);
        let mut by_beta: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
        for t in standard_tableaux(ctx, lam) {
            by_beta.entry(t.bottom_residues(ctx)).or_default().push(tableau_degree(ctx, &t));
        }
        for (beta, degs) in by_beta {
            *table.tableaux.entry(beta.clone()).or_default() += degs.len();
            let entry = table.gdim.entry(beta).or_default();
            for a in &degs {
                for b in &degs {
                    *entry = entry.add(&sw.shift(a + b + yd));
                }
            }
        }
    }
    table
}

/// Graded dimension of `e(β) R e(β)` in the cyclotomic KLR algebra; the
/// size is taken from `β`.
pub fn klr_gdim(ctx: &Context, beta: &[usize]) -> Laurent {
    let sub = ctx.with_n(beta.len());
    klr_table(&sub).gdim.get(beta).cloned().unwrap_or_default()
}

/// Number of standard tableaux with bottom residues `β`.
pub fn klr_tableau_count(ctx: &Context, beta: &[usize]) -> usize {
    let sub = ctx.with_n(beta.len());
    klr_table(&sub).tableaux.get(beta).copied().unwrap_or(0)
}

/// One row of the dimension breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCount {
    pub shape: String,
    pub finite_slots: usize,
    pub sstd: usize,
    pub std: usize,
}

/// Ranks of the cyclotomic weighted KLRW and KLR algebras by the dimension formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalDim {
    pub weighted: u64,
    pub klr: u64,
    pub cells: Vec<CellCount>,
}

/// `Σ_λ 2^{f(λ)} (#SStd(λ))²` and `Σ_λ 2^{f(λ)} (#Std(λ))²` over finite `λ`,
/// where `SStd(λ)` ranges over all finite types of size `n`.
pub fn total_dim(ctx: &Context) -> TotalDim {
    let pool = enumerate_parts(ctx);
    let mut weighted = 0u64;
    let mut klr = 0u64;
    let mut cells = Vec::new();
    for lam in &pool {
        let f = finite_dot_slots(ctx, lam, &pool).len();
        let s = sstd_all(ctx, lam, &pool).len();
        let t = standard_tableaux(ctx, lam).len();
        weighted += (1u64 << f) * (s * s) as u64;
        klr += (1u64 << f) * (t * t) as u64;
        cells.push(CellCount { shape: lam.to_string(), finite_slots: f, sstd: s, std: t });
    }
    TotalDim { weighted, klr, cells }
}

/// A basis element `D_{ST}^{a,f}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisIndex {
    pub lam: MultiPartition,
    pub s: Tableau,
    pub t: Tableau,
    pub a: Vec<u32>,
    pub f: Vec<u32>,
}

/// Which cyclotomic algebra a basis enumeration targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    Weighted,
    Klr,
}

/// Enumerates the cyclotomic basis: `λ` finite, `S, T` semistandard of any
/// finite type (weighted) or standard (KLR), `f` a finite dot vector.
pub fn enumerate_cyclotomic_basis(ctx: &Context, algebra: Algebra) -> Vec<BasisIndex> {
    let pool = enumerate_parts(ctx);
    let mut out = Vec::new();
    for lam in &pool {
        let slots = finite_dot_slots(ctx, lam, &pool);
        let tabs = match algebra {
            Algebra::Weighted => sstd_all(ctx, lam, &pool),
            Algebra::Klr => standard_tableaux(ctx, lam),
        };
        let fs = finch_vectors(lam.size(), &slots);
        for s in &tabs {
            for t in &tabs {
                for f in &fs {
                    out.push(BasisIndex {
                        lam: lam.clone(),
                        s: s.clone(),
                        t: t.clone(),
                        a: vec![0; lam.size()],
                        f: f.clone(),
                    });
                }
            }
        }
    }
    out
}

/// `deg S + deg T + deg y_λ + Σ (a_k + f_k) 2 d_{res(k)}`.
pub fn basis_degree(ctx: &Context, b: &BasisIndex) -> i64 {
    let res = b.lam.residue_sequence(ctx);
    let sandwiched: i64 = (0..res.len())
        .map(|k| (b.a[k] + b.f[k]) as i64 * ctx.cd.dot_degree(res[k]))
        .sum();
    tableau_degree(ctx, &b.s) + tableau_degree(ctx, &b.t) + dotidem_degree(ctx, &b.lam) + sandwiched
}
