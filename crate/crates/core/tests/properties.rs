//! Property suites: exhaustive checks at small sizes and proptest samples.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use proptest::prelude::*;
use wklrw::cartan::{build_cartan, q_iji, q_poly};
use wklrw::cellbasis::{enumerate_cyclotomic_basis, klr_table, total_dim, Algebra};
use wklrw::coords::{bounce_residue, max_finite_coord, Rat};
use wklrw::diagrams::{dotidem, dotidem_degree, ghosts, perm_degree, star, StraightLineDiagram, YoungIndex};
use wklrw::partitions::{addable_nodes, dominates, enumerate_hparts, enumerate_parts};
use wklrw::relations::{catalog, partner, verify_homogeneity};
use wklrw::tableaux::{canonical, enumerate_sstd, is_semistandard, perm_of_tableau, Tableau, TableauType};
use wklrw::{Context, Family, InfCoord, MultiPartition, QuiverType};

const FAMILIES: [Family; 2] = [Family::Atwo, Family::Dtwo];

fn ctx(f: Family, e: usize, n: usize, rho: usize) -> Context {
    Context::level_one(f, e, n, rho).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of partitions of `n`, strict if asked, by the parts recursion.
fn partition_count(n: usize, strict: bool) -> usize {
    fn go(n: usize, max: usize, strict: bool) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| go(n - p, if strict { p - 1 } else { p }, strict)).sum()
    }
    go(n, n, strict)
}

#[test]
fn symmetrizable_and_homogeneous_cartan_data() {
    for f in FAMILIES {
        for e in 2..=12 {
            let qt = QuiverType::new(f, e).unwrap();
            let cd = build_cartan(qt);
            let nv = qt.num_vertices();
            for i in 0..nv {
                assert_eq!(cd.a[i][i], 2);
                for j in 0..nv {
                    assert_eq!(cd.d[i] * cd.a[i][j], cd.d[j] * cd.a[j][i], "{f} e={e} ({i},{j})");
                    if i != j {
                        q_iji(&qt, i, j).expect("exact division");
                    }
                }
            }
            for ed in qt.edges() {
                let (i, j) = (ed.tail, ed.head);
                let deg = q_poly(&qt, i, j).homogeneous_degree([2 * cd.d[i], 2 * cd.d[j]]);
                assert_eq!(deg, Some(2 * cd.crossing[&(i, j)]), "{f} e={e} edge {i}->{j}");
            }
        }
    }
}

#[test]
fn ghosts_follow_out_edges() {
    for f in FAMILIES {
        for e in 2..=5 {
            let qt = QuiverType::new(f, e).unwrap();
            for i in 0..qt.num_vertices() {
                let g = ghosts(&qt, i, InfCoord::zero());
                assert_eq!(g.len(), qt.out_edges(i).len());
                assert!(g.iter().all(|(x, _)| *x > InfCoord::zero()));
            }
            assert!(ghosts(&qt, e, InfCoord::zero()).is_empty());
            if f == Family::Dtwo {
                assert!(ghosts(&qt, 0, InfCoord::zero()).is_empty());
            }
        }
    }
}

#[test]
fn bounce_residue_is_periodic() {
    for f in FAMILIES {
        for e in 2..=6 {
            let qt = QuiverType::new(f, e).unwrap();
            let p = qt.period() as i64;
            for rho in 0..=e {
                for diag in -30..30 {
                    assert_eq!(bounce_residue(&qt, rho, diag), bounce_residue(&qt, rho, diag + p));
                }
            }
        }
    }
}

#[test]
fn coordinates_are_distinct_and_bounded() {
    for f in FAMILIES {
        for e in 2..=3 {
            for rho in 0..=e {
                for n in 0..=5 {
                    let c = ctx(f, e, n, rho);
                    let bound = max_finite_coord(&c);
                    let finite: BTreeSet<MultiPartition> = enumerate_parts(&c).into_iter().collect();
                    for lam in enumerate_hparts(&c) {
                        let nodes = lam.reading_order(&c);
                        let xs: BTreeSet<InfCoord> = nodes.iter().map(|nd| c.coord_of(nd)).collect();
                        assert_eq!(xs.len(), nodes.len(), "{lam}");
                        for nd in &nodes {
                            let x = c.coord_of(nd);
                            let affine = nd.m > c.level();
                            match bound {
                                Some(b) => assert_eq!(x > b, affine, "{lam} node {:?}", nd.node()),
                                None => assert!(!affine || nodes.is_empty()),
                            }
                        }
                        assert_eq!(finite.contains(&lam), !lam.has_affine_nodes(&c));
                    }
                    for lam in &finite {
                        assert!(lam.reading_order(&c).iter().all(|nd| bound.is_some_and(|b| c.coord_of(nd) <= b)));
                    }
                }
            }
        }
    }
}

#[test]
fn parts_counts_match_partition_numbers() {
    for f in FAMILIES {
        for e in 2..=3 {
            for rho in 0..=e {
                let c0 = ctx(f, e, 0, rho);
                let shifted = c0.is_shifted(1);
                for n in 0..=4 {
                    let c = c0.with_n(n);
                    assert_eq!(enumerate_parts(&c).len(), partition_count(n, shifted), "{f} e={e} ρ={rho} n={n}");
                }
            }
        }
    }
}

/// True if `λ` can be built from `∅` by adding addable nodes one at a time.
fn has_chain(c: &Context, lam: &MultiPartition) -> bool {
    let nodes = lam.reading_order(c);
    nodes.is_empty()
        || nodes.iter().any(|nd| {
            let (m, r, _) = nd.node();
            let row_end = nodes.iter().filter(|x| x.m == m && x.r == r).map(|x| x.c).max() == Some(nd.c);
            let mut comps = lam.components.clone();
            comps[m - 1][r - 1] -= 1;
            let smaller = MultiPartition::from_components(c, comps);
            row_end
                && smaller.validate(c).is_ok()
                && addable_nodes(c, &smaller, nd.res).unwrap().contains(&nd.node())
                && has_chain(c, &smaller)
        })
}

#[test]
fn hparts_have_addable_chains() {
    for f in FAMILIES {
        for rho in 0..=2 {
            for n in 0..=4 {
                let c = ctx(f, 2, n, rho);
                for lam in enumerate_hparts(&c) {
                    assert!(has_chain(&c, &lam), "{lam} has no chain");
                }
            }
        }
    }
}

#[test]
fn young_round_trip_and_injectivity() {
    let mut failures = Vec::new();
    for f in FAMILIES {
        for e in 2..=3 {
            for rho in 0..=e {
                for n in 0..=5 {
                    let c = ctx(f, e, n, rho);
                    let index = YoungIndex::new(&c, n);
                    let mut seen: BTreeMap<String, MultiPartition> = BTreeMap::new();
                    for lam in &enumerate_parts(&c) {
                        let d = dotidem(&c, lam);
                        if index.classify(&d).as_ref() != Some(lam) {
                            failures.push(format!("{f} e={e} ρ={rho}: classify(dotidem({lam})) != {lam}"));
                        }
                        let key = serde_json::to_string(&d).unwrap();
                        if let Some(prev) = seen.insert(key.clone(), lam.clone()) {
                            failures.push(format!("{f} e={e} ρ={rho}: dotidem({prev}) = dotidem({lam})"));
                        }
                        let back: StraightLineDiagram = serde_json::from_str(&key).unwrap();
                        assert_eq!(back, d);
                        let dots = d.solids.iter().map(|s| s.dots as i64 * c.cd.dot_degree(s.res)).sum::<i64>();
                        assert_eq!(dotidem_degree(&c, lam), dots);
                        assert!(dots >= 0);
                    }
                }
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn star_is_an_involution_preserving_degree() {
    for f in FAMILIES {
        for rho in 0..=2 {
            let c = ctx(f, 2, 4, rho);
            let parts = enumerate_parts(&c);
            for lam in &parts {
                for mu in &parts {
                    for t in enumerate_sstd(&c, lam, mu).unwrap() {
                        let pd = perm_of_tableau(&c, &t);
                        assert_eq!(star(&star(&pd)), pd);
                        assert_eq!(perm_degree(&c, &star(&pd)), perm_degree(&c, &pd));
                    }
                }
            }
        }
    }
}

#[test]
fn sstd_matches_brute_force() {
    for f in FAMILIES {
        for e in 2..=3 {
            for rho in 0..=e {
                for n in 0..=5 {
                    let c = ctx(f, e, n, rho);
                    let parts = enumerate_parts(&c);
                    let perms = permutations(n);
                    for lam in &parts {
                        assert!(is_semistandard(&c, &canonical(lam)), "canonical {lam}");
                        for mu in &parts {
                            let brute: Vec<Vec<usize>> = perms
                                .iter()
                                .filter(|p| {
                                    let t = Tableau {
                                        shape: lam.clone(),
                                        ty: TableauType::Shape(mu.clone()),
                                        assignment: p.to_vec(),
                                    };
                                    is_semistandard(&c, &t)
                                })
                                .cloned()
                                .collect();
                            let mut brute = brute;
                            brute.sort();
                            let got: Vec<Vec<usize>> =
                                enumerate_sstd(&c, lam, mu).unwrap().into_iter().map(|t| t.assignment).collect();
                            assert_eq!(got, brute, "{f} e={e} ρ={rho} {lam} type {mu}");
                        }
                        let res = lam.residue_sequence(&c);
                        for t in enumerate_sstd(&c, lam, lam).unwrap() {
                            assert_eq!(t.bottom_residues(&c), res);
                        }
                    }
                }
            }
        }
    }
}

/// `λ ⊵ μ` by scanning every bijection.
fn dominates_brute(c: &Context, lam: &MultiPartition, mu: &MultiPartition) -> bool {
    let xs: Vec<_> = lam.reading_order(c).iter().map(|nd| (c.coord_of(nd), nd.res)).collect();
    let ys: Vec<_> = mu.reading_order(c).iter().map(|nd| (c.coord_of(nd), nd.res)).collect();
    let dl = wklrw::diagrams::dotidem_dots(c, lam);
    let dm = wklrw::diagrams::dotidem_dots(c, mu);
    permutations(xs.len()).iter().any(|p| {
        (0..xs.len()).all(|a| {
            let (x, y) = (xs[a], ys[p[a]]);
            x.1 == y.1 && x.0 >= y.0 && (dl.contains(&(a + 1)) || !dm.contains(&(p[a] + 1)))
        })
    })
}

#[test]
fn dominance_is_a_partial_order() {
    for f in FAMILIES {
        for e in 2..=3 {
            for rho in 0..=e {
                let c = ctx(f, e, 3, rho);
                let parts = enumerate_parts(&c);
                let rel: Vec<Vec<bool>> = parts
                    .iter()
                    .map(|l| parts.iter().map(|m| dominates(&c, l, m).unwrap()).collect())
                    .collect();
                for (a, l) in parts.iter().enumerate() {
                    assert!(rel[a][a]);
                    for (b, m) in parts.iter().enumerate() {
                        assert_eq!(rel[a][b], dominates_brute(&c, l, m), "{l} vs {m}");
                        if a != b {
                            assert!(!(rel[a][b] && rel[b][a]), "{l} and {m}");
                        }
                        for k in 0..parts.len() {
                            if rel[a][b] && rel[b][k] {
                                assert!(rel[a][k]);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn cyclotomic_rank_matches_formula() {
    for f in FAMILIES {
        for rho in 0..=2 {
            for n in 0..=4 {
                let c = ctx(f, 2, n, rho);
                let basis = enumerate_cyclotomic_basis(&c, Algebra::Weighted);
                assert_eq!(basis.len() as u64, total_dim(&c).weighted, "{f} ρ={rho} n={n}");
            }
        }
    }
}

#[test]
fn klr_dimensions_are_positive_and_count_the_basis() {
    for f in FAMILIES {
        for rho in 0..=2 {
            for n in 0..=4 {
                let c = ctx(f, 2, n, rho);
                let table = klr_table(&c);
                let mut by_beta: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
                for b in enumerate_cyclotomic_basis(&c, Algebra::Klr) {
                    let (s, t) = (b.s.bottom_residues(&c), b.t.bottom_residues(&c));
                    if s == t {
                        *by_beta.entry(s).or_default() += 1;
                    }
                }
                for (beta, g) in &table.gdim {
                    assert!(g.has_nonnegative_coeffs());
                    assert_eq!(g.eval_one(), by_beta.get(beta).copied().unwrap_or(0), "β={beta:?}");
                }
            }
        }
    }
}

#[test]
fn catalog_homogeneous_for_small_e() {
    for f in FAMILIES {
        for e in 2..=4 {
            let qt = QuiverType::new(f, e).unwrap();
            let cd = build_cartan(qt);
            for r in catalog(&qt) {
                let p = partner(&r);
                assert!(verify_homogeneity(&r, &cd) && verify_homogeneity(&p, &cd), "{}", r.name);
                assert_eq!(partner(&p), r);
                for &(a, b) in &r.gate {
                    assert!(a < r.strands.len() && b < r.strands.len());
                }
            }
        }
    }
}

fn coord() -> impl Strategy<Value = InfCoord> {
    let rat = (-40i64..40, 1i64..12).prop_map(|(a, b)| Rat::new(a, b));
    (rat.clone(), rat.clone(), rat).prop_map(|(a, b, c)| InfCoord::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn infcoord_total_order(x in coord(), y in coord(), z in coord()) {
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        prop_assert_eq!(x == y, x.cmp(&y) == std::cmp::Ordering::Equal);
        if x <= y && y <= z {
            prop_assert!(x <= z);
        }
        prop_assert_eq!(x < y, x + z < y + z);
        prop_assert_eq!((x - y) + y, x);
    }

    #[test]
    fn infinitesimals_stay_below_units(a in -20i64..20, k in 1i64..1000) {
        let base = InfCoord::from_int(a);
        let kk = InfCoord::new(Rat::zero(), Rat::from_integer(k), Rat::zero());
        prop_assert!(base + kk < InfCoord::from_int(a + 1));
        prop_assert!(base - kk > InfCoord::from_int(a - 1));
        let k2 = InfCoord::new(Rat::zero(), Rat::zero(), Rat::from_integer(k));
        prop_assert!(base + k2 < base + InfCoord::eps());
    }
}
