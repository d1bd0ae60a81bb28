//! Finite frames, their nuclei, and the closure, interior and supplement
//! operators on the sublocale co-frame.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::data;
use crate::diagram::DiagramCatalog;
use crate::error::{DataError, FrameError};
use crate::monoid::{generate_monoid, OperatorMonoid};
use crate::poset::{down_sets, enumerate_posets_upto, EndoMap, Poset};

/// A finite distributive lattice with its operation tables.
#[derive(Clone, Debug)]
pub struct FiniteFrame {
    pub poset: Poset,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub top: usize,
    pub bottom: usize,
}

fn bound(p: &Poset, a: usize, b: usize, upper: bool) -> Option<usize> {
    let n = p.size();
    let cands: Vec<usize> =
        (0..n).filter(|&z| if upper { p.leq(a, z) && p.leq(b, z) } else { p.leq(z, a) && p.leq(z, b) }).collect();
    cands.iter().copied().find(|&z| cands.iter().all(|&w| if upper { p.leq(z, w) } else { p.leq(w, z) }))
}

pub fn check_frame(p: &Poset) -> Result<FiniteFrame, FrameError> {
    let n = p.size();
    if n == 0 {
        return Err(FrameError::NotALattice(0, 0));
    }
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            meet[a][b] = bound(p, a, b, false).ok_or(FrameError::NotALattice(a, b))?;
            join[a][b] = bound(p, a, b, true).ok_or(FrameError::NotALattice(a, b))?;
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                    return Err(FrameError::NotDistributive(a, b, c));
                }
            }
        }
    }
    let top = (0..n).find(|&x| (0..n).all(|y| p.leq(y, x))).expect("lattice has a top");
    let bottom = (0..n).find(|&x| (0..n).all(|y| p.leq(x, y))).expect("lattice has a bottom");
    let imp = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let ok: Vec<usize> = (0..n).filter(|&z| p.leq(meet[a][z], b)).collect();
                    *ok.iter().find(|&&z| ok.iter().all(|&w| p.leq(w, z))).expect("distributive lattices are Heyting")
                })
                .collect()
        })
        .collect();
    Ok(FiniteFrame { poset: p.clone(), meet, join, imp, top, bottom })
}

impl FiniteFrame {
    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    /// Pseudocomplement `a -> bottom`.
    pub fn pseudocomplement(&self) -> EndoMap {
        EndoMap { img: (0..self.size()).map(|a| self.imp[a][self.bottom]).collect() }
    }

    /// `x -> a or x`.
    pub fn closed(&self, a: usize) -> Nucleus {
        Nucleus(EndoMap { img: (0..self.size()).map(|x| self.join[a][x]).collect() })
    }

    /// `x -> (a implies x)`.
    pub fn open(&self, a: usize) -> Nucleus {
        Nucleus(EndoMap { img: (0..self.size()).map(|x| self.imp[a][x]).collect() })
    }

    pub fn is_nucleus(&self, j: &EndoMap) -> bool {
        let n = self.size();
        j.size() == n
            && (0..n).all(|x| self.leq(x, j.apply(x)) && j.apply(j.apply(x)) == j.apply(x))
            && (0..n).all(|a| (0..n).all(|b| j.apply(self.meet[a][b]) == self.meet[j.apply(a)][j.apply(b)]))
    }
}

/// The down-set lattice of a poset, ordered by inclusion.
pub fn down_set_lattice(p: &Poset) -> Poset {
    let sets: Vec<u64> = down_sets(p).iter().map(|d| d.iter().fold(0u64, |m, &x| m | 1 << x)).collect();
    let k = sets.len();
    let rel: Vec<Vec<bool>> = (0..k).map(|a| (0..k).map(|b| sets[a] & !sets[b] == 0).collect()).collect();
    Poset::from_relation(&rel).expect("inclusion is a partial order")
}

/// Every frame with at most `max_elements` elements, one per isomorphism
/// class, as down-set lattices of their join-irreducible posets.
pub fn frames_upto(max_elements: usize) -> Vec<FiniteFrame> {
    let mut seen = BTreeMap::new();
    for p in enumerate_posets_upto(max_elements.saturating_sub(1)) {
        let l = down_set_lattice(&p);
        if l.size() <= max_elements {
            seen.entry(l.canonical_code()).or_insert_with(|| l.canonical_form());
        }
    }
    let mut out: Vec<FiniteFrame> = vec![check_frame(&Poset::chain(1)).expect("trivial frame")];
    out.extend(seen.into_values().map(|l| check_frame(&l).expect("down-set lattices are distributive")));
    out
}

/// An inflationary, idempotent, meet-preserving map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Nucleus(pub EndoMap);

impl Nucleus {
    pub fn map(&self) -> &EndoMap {
        &self.0
    }
}

/// All nuclei in lexicographic order of images.
pub fn nuclei(f: &FiniteFrame) -> Vec<Nucleus> {
    let n = f.size();
    let mut out = Vec::new();
    let mut img = vec![0; n];
    fn rec(f: &FiniteFrame, x: usize, img: &mut Vec<usize>, out: &mut Vec<Nucleus>) {
        let n = f.size();
        if x == n {
            let j = EndoMap { img: img.clone() };
            if f.is_nucleus(&j) {
                out.push(Nucleus(j));
            }
            return;
        }
        for v in 0..n {
            if !f.leq(x, v) {
                continue;
            }
            img[x] = v;
            let ok = (0..x).all(|y| {
                (!f.leq(y, x) || f.leq(img[y], v))
                    && (!f.leq(x, y) || f.leq(v, img[y]))
                    && (img[y] > x || img[y] == y || img[img[y]] == img[y])
            }) && (v > x || img[v] == v);
            if ok {
                rec(f, x + 1, img, out);
            }
        }
    }
    rec(f, 0, &mut img, &mut out);
    out
}

/// Sublocales as nuclei, ordered by inclusion: `S_j ⊆ S_k` iff `k <= j`.
#[derive(Clone, Debug)]
pub struct SublocaleLattice {
    pub nuclei: Vec<Nucleus>,
    pub poset: Poset,
}

impl SublocaleLattice {
    pub fn index(&self, j: &Nucleus) -> usize {
        self.nuclei.iter().position(|k| k == j).expect("nucleus in the lattice")
    }

    /// Index of the whole locale (the identity nucleus).
    pub fn whole(&self) -> usize {
        self.nuclei.iter().position(|k| k.0.img.iter().enumerate().all(|(x, &y)| x == y)).expect("identity")
    }
}

pub fn sublocale_lattice(f: &FiniteFrame) -> SublocaleLattice {
    let nuclei = nuclei(f);
    let k = nuclei.len();
    let rel: Vec<Vec<bool>> =
        (0..k).map(|a| (0..k).map(|b| nuclei[b].0.below_unchecked(&nuclei[a].0, &f.poset)).collect()).collect();
    let poset = Poset::from_relation(&rel).expect("pointwise order on nuclei");
    SublocaleLattice { nuclei, poset }
}

/// Closure, interior and supplement on the sublocale lattice.
#[derive(Clone, Debug)]
pub struct LocalicOperators {
    pub lattice: SublocaleLattice,
    pub c: EndoMap,
    pub i: EndoMap,
    pub neg: EndoMap,
    /// Each sublocale sent to the largest open sublocale it contains,
    /// computed directly from the open family.
    pub largest_open: EndoMap,
}

pub fn localic_operators(f: &FiniteFrame) -> LocalicOperators {
    let lattice = sublocale_lattice(f);
    let n = f.size();
    let k = lattice.nuclei.len();
    let c = (0..k).map(|s| lattice.index(&f.closed(lattice.nuclei[s].0.apply(f.bottom)))).collect();
    let i = (0..k)
        .map(|s| {
            let j = &lattice.nuclei[s].0;
            let ok: Vec<usize> = (0..n).filter(|&a| (0..n).all(|x| f.leq(f.meet[a][j.apply(x)], x))).collect();
            let a = ok.iter().fold(f.bottom, |acc, &a| f.join[acc][a]);
            lattice.index(&f.open(a))
        })
        .collect();
    let whole = lattice.whole();
    let neg = (0..k)
        .map(|s| {
            let j = &lattice.nuclei[s].0;
            let cands: Vec<usize> = (0..k)
                .filter(|&t| {
                    let m = &lattice.nuclei[t].0;
                    (0..n).all(|x| f.meet[j.apply(x)][m.apply(x)] == x)
                })
                .collect();
            *cands
                .iter()
                .find(|&&t| cands.iter().all(|&u| lattice.poset.leq(t, u)))
                .expect("co-frames have supplements")
        })
        .collect();
    let opens: Vec<usize> = (0..n).map(|a| lattice.index(&f.open(a))).collect();
    let largest_open = (0..k)
        .map(|s| {
            let inside: Vec<usize> = opens.iter().copied().filter(|&o| lattice.poset.leq(o, s)).collect();
            *inside.iter().find(|&&o| inside.iter().all(|&u| lattice.poset.leq(u, o))).expect("open family has a bottom")
        })
        .collect();
    debug_assert!(lattice.poset.leq(lattice.index(&f.closed(f.top)), whole));
    LocalicOperators {
        c: EndoMap { img: c },
        i: EndoMap { img: i },
        neg: EndoMap { img: neg },
        largest_open: EndoMap { img: largest_open },
        lattice,
    }
}

impl LocalicOperators {
    /// Map of a word over `c`, `i`, `-`, or `id`.
    pub fn eval(&self, word: &str) -> EndoMap {
        let mut acc = EndoMap::identity(self.lattice.nuclei.len());
        if word == "id" {
            return acc;
        }
        for ch in word.chars().rev() {
            let g = match ch {
                'c' => &self.c,
                'i' => &self.i,
                '-' => &self.neg,
                other => panic!("unknown letter {other:?}"),
            };
            acc = g.after(&acc);
        }
        acc
    }
}

pub fn localic_monoid(f: &FiniteFrame) -> OperatorMonoid {
    let ops = localic_operators(f);
    generate_monoid(&ops.lattice.poset, &[('c', ops.c), ('i', ops.i), ('-', ops.neg)], true)
        .expect("operators act on the sublocale lattice")
}

pub fn sublocale_catalog() -> Result<DiagramCatalog, DataError> {
    data::catalog(data::SUBLOCALE_OPERATORS)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LocalicReport {
    pub elements: usize,
    pub nuclei: usize,
    pub monoid_size: usize,
    /// Named identities that fail.
    pub failed: Vec<String>,
    /// Catalog edges `(x, y)` where `x <= y` fails.
    pub edge_violations: Vec<(String, String)>,
}

impl LocalicReport {
    pub fn passed(&self) -> bool {
        self.failed.is_empty() && self.edge_violations.is_empty() && self.monoid_size <= 21
    }
}

pub fn check_localic_properties(f: &FiniteFrame, cat: &DiagramCatalog) -> LocalicReport {
    let ops = localic_operators(f);
    let sub = &ops.lattice.poset;
    let mut failed = Vec::new();
    if check_frame(&sub.dual()).is_err() {
        failed.push("co-frame".to_string());
    }
    for j in &ops.lattice.nuclei {
        if !j.0.is_monotone(&f.poset).unwrap_or(false) {
            failed.push("nucleus monotone".into());
        }
    }
    let identities = [("i", "--i"), ("-c-", "i"), ("i--", "i"), ("c-i", "-i"), ("i-c", "-c")];
    for (x, y) in identities {
        if ops.eval(x) != ops.eval(y) {
            failed.push(format!("{x} = {y}"));
        }
    }
    // on the reversed order the interior is c and the pseudocomplement is -
    if ops.eval("-c-") != ops.largest_open || ops.i != ops.largest_open {
        failed.push("largest open sublocale".into());
    }
    for (w, closure) in [("c", true), ("i", false)] {
        let m = ops.eval(w);
        let ok = if closure { m.is_closure(sub) } else { m.is_interior(sub) };
        if !ok.unwrap_or(false) {
            failed.push(format!("{w} operator laws"));
        }
    }
    let mut edge_violations = Vec::new();
    for (a, b) in cat.solid_edges() {
        let (x, y) = (&cat.nodes[a], &cat.nodes[b]);
        if !ops.eval(x).below_unchecked(&ops.eval(y), sub) {
            edge_violations.push((x.clone(), y.clone()));
        }
    }
    let monoid_size = localic_monoid(f).len();
    LocalicReport { elements: f.size(), nuclei: ops.lattice.nuclei.len(), monoid_size, failed, edge_violations }
}
