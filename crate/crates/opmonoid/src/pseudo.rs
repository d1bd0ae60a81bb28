//! The monoid generated by an interior operator `i` and a pseudocomplement
//! `-` on a poset, with `b = -i-`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::data;
use crate::diagram::DiagramCatalog;
use crate::error::{DataError, InstanceError, PosetError};
use crate::monoid::{generate_monoid, group_by_map, OperatorMonoid};
use crate::poset::{enumerate_posets_upto, interiors, EndoMap, Poset};

/// The 31 representatives: the upper component (17 words, containing `id`)
/// followed by the lower component (14 words).
pub const M_WORDS: [&str; 31] = [
    "i", "i--i", "i--", "ibi", "--i", "ibi--", "-b-", "--ibi", "ib", "--ibi--", "bi", "--ib", "bi--", "bib", "b", "id",
    "--", "i-", "-b", "-", "-bib", "ibi-", "ib-", "-ib", "-bi--", "i-i", "bib-", "-bi", "b-", "-ibi", "-i",
];

/// The six inequalities left open by the diagram, `(x, y)` meaning `x <= y`.
pub const DASHED: [(&str, &str); 6] =
    [("i--i", "id"), ("-b", "i-i"), ("-ib", "-bi"), ("i-i", "b-"), ("ibi-", "-"), ("ib-", "-ib")];

/// Identities forced by `i = --i`.
pub const QUOTIENT_IDENTITIES: [(&str, &str); 9] = [
    ("i", "i--i"),
    ("i-", "-b"),
    ("i--", "-b-"),
    ("ib", "--ib"),
    ("ibi", "--ibi"),
    ("ibi--", "--ibi--"),
    ("i-i", "-bi"),
    ("ibi-", "-bib"),
    ("ib-", "-bi--"),
];

pub fn m_words() -> Vec<&'static str> {
    M_WORDS.to_vec()
}

/// Expands `b` to `-i-` and `id` to the empty word.
pub fn expand(word: &str) -> String {
    if word == "id" {
        return String::new();
    }
    word.replace('b', "-i-")
}

/// `a <= f(x)` iff `x <= f(a)` for all `a, x`.
pub fn is_pseudocomplement_op(p: &Poset, f: &EndoMap) -> Result<bool, PosetError> {
    if f.size() != p.size() {
        return Err(PosetError::SizeMismatch(f.size(), p.size()));
    }
    Ok(galois_violation(p, f).is_none())
}

fn galois_violation(p: &Poset, f: &EndoMap) -> Option<(usize, usize)> {
    let n = p.size();
    (0..n).flat_map(|a| (0..n).map(move |x| (a, x))).find(|&(a, x)| p.leq(a, f.apply(x)) != p.leq(x, f.apply(a)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoInstance {
    pub poset: Poset,
    pub i: EndoMap,
    pub neg: EndoMap,
}

impl PseudoInstance {
    pub fn new(poset: &Poset, i: &EndoMap, neg: &EndoMap) -> Result<Self, InstanceError> {
        if !i.is_interior(poset)? {
            return Err(InstanceError::NotAnInterior);
        }
        if neg.size() != poset.size() {
            return Err(PosetError::SizeMismatch(neg.size(), poset.size()).into());
        }
        if let Some((a, x)) = galois_violation(poset, neg) {
            return Err(InstanceError::NotGalois(a, x));
        }
        Ok(PseudoInstance { poset: poset.clone(), i: i.clone(), neg: neg.clone() })
    }

    /// Map of a word over `i`, `-`, `b`, or `id`.
    pub fn eval(&self, word: &str) -> EndoMap {
        let mut acc = EndoMap::identity(self.poset.size());
        for ch in expand(word).chars().rev() {
            acc = match ch {
                'i' => self.i.after(&acc),
                '-' => self.neg.after(&acc),
                other => panic!("unknown letter {other:?}"),
            };
        }
        acc
    }

    pub fn holds(&self, x: &str, y: &str) -> bool {
        self.eval(x).below_unchecked(&self.eval(y), &self.poset)
    }

    /// First point where `x <= y` fails.
    pub fn failure_point(&self, x: &str, y: &str) -> Option<usize> {
        let (fx, fy) = (self.eval(x), self.eval(y));
        (0..self.poset.size()).find(|&p| !self.poset.leq(fx.apply(p), fy.apply(p)))
    }
}

/// Every Galois map on `p`, in lexicographic order of images.
pub fn pseudocomplements(p: &Poset) -> Vec<EndoMap> {
    let n = p.size();
    let mut out = Vec::new();
    let mut img = vec![0; n];
    fn rec(p: &Poset, x: usize, img: &mut Vec<usize>, out: &mut Vec<EndoMap>) {
        let n = p.size();
        if x == n {
            out.push(EndoMap { img: img.clone() });
            return;
        }
        for v in 0..n {
            img[x] = v;
            let ok = (0..=x).all(|a| p.leq(a, img[x]) == p.leq(x, img[a]));
            if ok {
                rec(p, x + 1, img, out);
            }
        }
    }
    rec(p, 0, &mut img, &mut out);
    out
}

/// All instances on one poset, interiors first then pseudocomplements.
pub fn instances_on(p: &Poset) -> Vec<PseudoInstance> {
    let negs = pseudocomplements(p);
    let mut out = Vec::new();
    for i in interiors(p) {
        for neg in &negs {
            out.push(PseudoInstance { poset: p.clone(), i: i.clone(), neg: neg.clone() });
        }
    }
    out
}

/// Instances on every poset with at most `max_points` points.
pub fn instances_upto(max_points: usize) -> Vec<PseudoInstance> {
    enumerate_posets_upto(max_points).iter().flat_map(instances_on).collect()
}

pub fn generate_m(inst: &PseudoInstance) -> OperatorMonoid {
    generate_monoid(&inst.poset, &[('i', inst.i.clone()), ('-', inst.neg.clone())], true)
        .expect("instance maps fit the poset")
}

/// Representatives grouped by the maps they induce on the instance.
pub fn word_partition(inst: &PseudoInstance) -> Vec<Vec<String>> {
    let maps: Vec<EndoMap> = M_WORDS.iter().map(|w| inst.eval(w)).collect();
    group_by_map(&M_WORDS, &maps)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    /// Diagram edges `(x, y)` where `x <= y` fails.
    pub violations: Vec<(String, String)>,
    /// Named identities or closure facts that fail.
    pub failed_facts: Vec<String>,
    /// Monoid elements not induced by any representative.
    pub uncovered: Vec<String>,
}

impl EdgeReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty() && self.failed_facts.is_empty() && self.uncovered.is_empty()
    }
}

pub fn catalog() -> Result<DiagramCatalog, DataError> {
    data::catalog(data::INTERIOR_PSEUDOCOMPLEMENT)
}

pub fn verify_edges(inst: &PseudoInstance, cat: &DiagramCatalog) -> EdgeReport {
    let maps: BTreeMap<&str, EndoMap> = cat.nodes.iter().map(|w| (w.as_str(), inst.eval(w))).collect();
    let p = &inst.poset;
    let mut report = EdgeReport::default();
    for (a, b) in cat.solid_edges() {
        let (x, y) = (&cat.nodes[a], &cat.nodes[b]);
        if !maps[x.as_str()].below_unchecked(&maps[y.as_str()], p) {
            report.violations.push((x.clone(), y.clone()));
        }
    }
    if inst.eval("---") != inst.eval("-") {
        report.failed_facts.push("--- = -".into());
    }
    for w in ["--", "b"] {
        if !inst.eval(w).is_closure(p).unwrap_or(false) {
            report.failed_facts.push(format!("{w} is a closure"));
        }
    }
    let covered: BTreeSet<&EndoMap> = maps.values().collect();
    let m = generate_m(inst);
    for (e, w) in m.elements.iter().zip(&m.witness) {
        if !covered.contains(e) {
            report.uncovered.push(if w.is_empty() { "id".into() } else { w.clone() });
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointWitness {
    pub points: usize,
    pub poset: Poset,
    pub i: EndoMap,
    pub neg: EndoMap,
    pub point: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DashedEntry {
    pub lower: String,
    pub upper: String,
    pub witness: Option<PointWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DashedReport {
    pub max_points: usize,
    pub instances: usize,
    pub entries: Vec<DashedEntry>,
}

impl DashedReport {
    pub fn complete(&self) -> bool {
        self.entries.iter().all(|e| e.witness.is_some())
    }
}

/// Least instances (by size, then enumeration order) refuting each dashed
/// inequality.
pub fn search_dashed_counterexamples(max_points: usize) -> DashedReport {
    let instances = instances_upto(max_points);
    let entries = DASHED
        .par_iter()
        .map(|&(x, y)| {
            let witness = instances.iter().find_map(|inst| {
                inst.failure_point(x, y).map(|point| PointWitness {
                    points: inst.poset.size(),
                    poset: inst.poset.clone(),
                    i: inst.i.clone(),
                    neg: inst.neg.clone(),
                    point,
                })
            });
            DashedEntry { lower: x.into(), upper: y.into(), witness }
        })
        .collect();
    DashedReport { max_points, instances: instances.len(), entries }
}

#[derive(Clone, Debug, Serialize)]
pub struct Obligation {
    pub premise: (String, String),
    pub conclusion: (String, String),
    pub witness: Option<PointWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RedundancyReport {
    pub max_points: usize,
    pub obligations: Vec<Obligation>,
}

impl RedundancyReport {
    pub fn missing(&self) -> Vec<&Obligation> {
        self.obligations.iter().filter(|o| o.witness.is_none()).collect()
    }
}

/// An instance where inequality `premise` holds everywhere and `conclusion`
/// fails somewhere.
pub fn refute_implication(instances: &[PseudoInstance], premise: usize, conclusion: usize) -> Option<PointWitness> {
    let (px, py) = DASHED[premise];
    let (cx, cy) = DASHED[conclusion];
    instances.iter().find_map(|inst| {
        if inst.failure_point(px, py).is_some() {
            return None;
        }
        inst.failure_point(cx, cy).map(|point| PointWitness {
            points: inst.poset.size(),
            poset: inst.poset.clone(),
            i: inst.i.clone(),
            neg: inst.neg.clone(),
            point,
        })
    })
}

/// The 30 implications between distinct dashed inequalities.
pub fn implication_redundancy_check(max_points: usize) -> RedundancyReport {
    let instances = instances_upto(max_points);
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|a| (0..6).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let obligations = pairs
        .par_iter()
        .map(|&(a, b)| Obligation {
            premise: (DASHED[a].0.into(), DASHED[a].1.into()),
            conclusion: (DASHED[b].0.into(), DASHED[b].1.into()),
            witness: refute_implication(&instances, a, b),
        })
        .collect();
    RedundancyReport { max_points, obligations }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub failed_identities: Vec<(String, String)>,
    pub blocks: usize,
    /// Catalog nodes whose merged words are separated on the instance.
    pub split_nodes: Vec<String>,
}

impl QuotientReport {
    pub fn holds(&self) -> bool {
        self.failed_identities.is_empty() && self.blocks <= 21 && self.split_nodes.is_empty()
    }
}

#[derive(serde::Deserialize)]
struct QuotientJson {
    merged: BTreeMap<String, Vec<String>>,
}

/// Words identified with each node of the quotient diagram.
pub fn quotient_merges() -> Result<BTreeMap<String, Vec<String>>, DataError> {
    let raw: QuotientJson = data::parse(data::INTERIOR_PSEUDOCOMPLEMENT_QUOTIENT)?;
    Ok(raw.merged)
}

pub fn localic_quotient_check(
    inst: &PseudoInstance,
    merges: &BTreeMap<String, Vec<String>>,
) -> Result<QuotientReport, InstanceError> {
    if inst.eval("i") != inst.eval("--i") {
        return Err(InstanceError::PreconditionFailed("i = --i"));
    }
    let failed_identities = QUOTIENT_IDENTITIES
        .iter()
        .filter(|(x, y)| inst.eval(x) != inst.eval(y))
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    let blocks = word_partition(inst).len();
    let split_nodes = merges
        .iter()
        .filter(|(node, others)| others.iter().any(|w| inst.eval(w) != inst.eval(node)))
        .map(|(node, _)| node.clone())
        .collect();
    Ok(QuotientReport { failed_identities, blocks, split_nodes })
}

/// Pointwise order between representatives intersected over instances.
pub fn sampled_order(instances: &[PseudoInstance]) -> Vec<Vec<bool>> {
    let k = M_WORDS.len();
    let mut rel = vec![vec![true; k]; k];
    for inst in instances {
        let maps: Vec<EndoMap> = M_WORDS.iter().map(|w| inst.eval(w)).collect();
        for a in 0..k {
            for b in 0..k {
                if rel[a][b] && !maps[a].below_unchecked(&maps[b], &inst.poset) {
                    rel[a][b] = false;
                }
            }
        }
    }
    rel
}
