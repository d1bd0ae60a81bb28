//! The eighteen quotients of the closure/interior monoid and a classifier.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::InstanceError;
use crate::monoid::eval_word;
use crate::poset::{closures, enumerate_posets, interiors, CanonicalCode, EndoMap, Poset};

/// The seven reduced words, smallest first: `id < i < c < ic < ci < ici < cic`.
pub const K_WORDS: [&str; 7] = ["id", "i", "c", "ic", "ci", "ici", "cic"];

/// Labels in catalog order; `d` marks the order dual.
pub const LABELS: [&str; 18] =
    ["1", "2", "2d", "3", "4", "5", "5d", "6", "6d", "7", "8", "8d", "9", "10", "10d", "11", "12", "13"];

fn defining_equations(label: &str) -> &'static [(&'static str, &'static str)] {
    match label {
        "1" => &[],
        "2" => &[("ici", "i")],
        "2d" => &[("c", "cic")],
        "3" => &[("ic", "ici")],
        "4" => &[("ci", "ici")],
        "5" => &[("ic", "i")],
        "5d" => &[("c", "ci")],
        "6" => &[("ci", "i")],
        "6d" => &[("c", "ic")],
        "7" => &[("cic", "ici")],
        "8" => &[("cic", "i")],
        "8d" => &[("c", "ici")],
        "9" => &[("ici", "i"), ("c", "cic")],
        "10" => &[("c", "id")],
        "10d" => &[("id", "i")],
        "11" => &[("ic", "i"), ("c", "ci")],
        "12" => &[("ci", "i"), ("c", "ic")],
        "13" => &[("c", "i")],
        _ => panic!("unknown label {label}"),
    }
}

pub fn dual_label(label: &str) -> String {
    match label.strip_suffix('d') {
        Some(base) => base.to_string(),
        None if ["2", "5", "6", "8", "10"].contains(&label) => format!("{label}d"),
        None => label.to_string(),
    }
}

fn reduce(word: &str) -> String {
    let mut w: String = if word == "id" { String::new() } else { word.to_string() };
    loop {
        let next = w.replace("cc", "c").replace("ii", "i").replace("cici", "ci").replace("icic", "ic");
        if next == w {
            return w;
        }
        w = next;
    }
}

fn word_index(word: &str) -> usize {
    let r = reduce(word);
    let r = if r.is_empty() { "id".to_string() } else { r };
    K_WORDS.iter().position(|&k| k == r).unwrap_or_else(|| panic!("{word} does not reduce into K"))
}

/// Composition table of the seven words.
pub fn k_table() -> [[usize; 7]; 7] {
    let mut t = [[0; 7]; 7];
    for (x, a) in K_WORDS.iter().enumerate() {
        for (y, b) in K_WORDS.iter().enumerate() {
            let a = if *a == "id" { "" } else { a };
            let b = if *b == "id" { "" } else { b };
            t[x][y] = word_index(&format!("{a}{b}"));
        }
    }
    t
}

/// General order: `i <= ici <= ic, ci <= cic <= c` and `i <= id <= c`.
pub fn k_order() -> [[bool; 7]; 7] {
    let covers = [("i", "ici"), ("ici", "ic"), ("ici", "ci"), ("ic", "cic"), ("ci", "cic"), ("cic", "c"), ("i", "id"), ("id", "c")];
    let mut r = [[false; 7]; 7];
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    for (a, b) in covers {
        r[word_index(a)][word_index(b)] = true;
    }
    for z in 0..7 {
        for x in 0..7 {
            for y in 0..7 {
                if r[x][z] && r[z][y] {
                    r[x][y] = true;
                }
            }
        }
    }
    r
}

/// Equality partition of the seven words as sorted blocks of word indices.
pub type Partition = Vec<Vec<usize>>;

/// Smallest partition containing `equations` that is compatible with
/// composition and with the general order (`a = b` with `a <= x <= b`
/// forces `x = a`).
pub fn close_equations(equations: &[(&str, &str)]) -> Partition {
    let table = k_table();
    let order = k_order();
    let mut block: Vec<usize> = (0..7).collect();
    let merge = |block: &mut Vec<usize>, a: usize, b: usize| -> bool {
        let (ra, rb) = (block[a], block[b]);
        if ra == rb {
            return false;
        }
        let (keep, gone) = (ra.min(rb), ra.max(rb));
        for v in block.iter_mut() {
            if *v == gone {
                *v = keep;
            }
        }
        true
    };
    for (a, b) in equations {
        merge(&mut block, word_index(a), word_index(b));
    }
    let gens = [word_index("c"), word_index("i")];
    loop {
        let mut changed = false;
        for x in 0..7 {
            for y in 0..7 {
                if block[x] != block[y] {
                    continue;
                }
                for &g in &gens {
                    changed |= merge(&mut block, table[g][x], table[g][y]);
                    changed |= merge(&mut block, table[x][g], table[y][g]);
                }
            }
        }
        // blocks that are mutually below each other collapse
        let mut pre = [[false; 7]; 7];
        for x in 0..7 {
            for y in 0..7 {
                if order[x][y] {
                    pre[block[x]][block[y]] = true;
                }
            }
        }
        for z in 0..7 {
            for x in 0..7 {
                for y in 0..7 {
                    if pre[x][z] && pre[z][y] {
                        pre[x][y] = true;
                    }
                }
            }
        }
        for x in 0..7 {
            for y in 0..7 {
                if pre[block[x]][block[y]] && pre[block[y]][block[x]] {
                    changed |= merge(&mut block, x, y);
                }
            }
        }
        if !changed {
            break;
        }
    }
    canonical_partition(&block)
}

fn canonical_partition(block_of: &[usize]) -> Partition {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &b) in block_of.iter().enumerate() {
        groups.entry(b).or_default().push(x);
    }
    let mut out: Partition = groups.into_values().collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiLabel {
    pub name: &'static str,
    pub partition: Partition,
}

impl KuratowskiLabel {
    pub fn cardinality(&self) -> usize {
        self.partition.len()
    }

    pub fn blocks(&self) -> Vec<Vec<&'static str>> {
        self.partition.iter().map(|b| b.iter().map(|&i| K_WORDS[i]).collect()).collect()
    }
}

/// All eighteen labels; panics if two of them share a partition.
pub fn catalog() -> &'static [KuratowskiLabel] {
    static CATALOG: OnceLock<Vec<KuratowskiLabel>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let labels: Vec<KuratowskiLabel> = LABELS
            .iter()
            .map(|&name| KuratowskiLabel { name, partition: close_equations(defining_equations(name)) })
            .collect();
        for (a, la) in labels.iter().enumerate() {
            for lb in &labels[a + 1..] {
                assert_ne!(la.partition, lb.partition, "labels {} and {} coincide", la.name, lb.name);
            }
        }
        labels
    })
}

pub fn label(name: &str) -> Option<&'static KuratowskiLabel> {
    catalog().iter().find(|l| l.name == name)
}

/// Partition of the seven words induced by a concrete pair of maps.
pub fn instance_partition(c: &EndoMap, i: &EndoMap) -> Partition {
    let n = c.size();
    let gens = [c.clone(), i.clone()];
    let maps: Vec<EndoMap> = K_WORDS
        .iter()
        .map(|w| eval_word(&['c', 'i'], &gens, n, if *w == "id" { "" } else { w }).expect("letters c, i"))
        .collect();
    let mut block = vec![0; 7];
    for x in 0..7 {
        block[x] = (0..=x).find(|&y| maps[y] == maps[x]).unwrap();
    }
    canonical_partition(&block)
}

pub fn classify(p: &Poset, c: &EndoMap, i: &EndoMap) -> Result<&'static KuratowskiLabel, InstanceError> {
    if !c.is_closure(p)? {
        return Err(InstanceError::NotAClosure);
    }
    if !i.is_interior(p)? {
        return Err(InstanceError::NotAnInterior);
    }
    let part = instance_partition(c, i);
    catalog().iter().find(|l| l.partition == part).ok_or(InstanceError::Unclassified)
}

#[derive(Clone, Debug, Serialize)]
pub struct KuratowskiWitness {
    pub label: String,
    pub points: usize,
    pub code: String,
    pub poset: Poset,
    pub c: EndoMap,
    pub i: EndoMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub max_points: usize,
    pub witnesses: Vec<KuratowskiWitness>,
    pub missing: Vec<String>,
    /// Partitions met that match no label (never expected).
    pub unclassified: usize,
}

type WitnessKey = (usize, CanonicalCode, EndoMap, EndoMap);

/// Least witness per label over all posets with at most `max_points` points
/// (size, then canonical code, then `c`, then `i`).
pub fn realize_labels(max_points: usize) -> RealizationReport {
    let mut best: BTreeMap<&'static str, (WitnessKey, Poset)> = BTreeMap::new();
    let mut unclassified = 0;
    for size in 1..=max_points {
        let posets = enumerate_posets(size);
        let found: Vec<(BTreeMap<&'static str, (WitnessKey, Poset)>, usize)> = posets
            .par_iter()
            .map(|p| {
                let code = p.canonical_code();
                let mut local: BTreeMap<&'static str, (WitnessKey, Poset)> = BTreeMap::new();
                let mut bad = 0;
                let cs = closures(p);
                let is = interiors(p);
                for c in &cs {
                    for i in &is {
                        let part = instance_partition(c, i);
                        match catalog().iter().find(|l| l.partition == part) {
                            Some(l) => {
                                local
                                    .entry(l.name)
                                    .or_insert_with(|| ((size, code.clone(), c.clone(), i.clone()), p.clone()));
                            }
                            None => bad += 1,
                        }
                    }
                }
                (local, bad)
            })
            .collect();
        for (local, bad) in found {
            unclassified += bad;
            for (name, entry) in local {
                match best.get(name) {
                    Some((k, _)) if *k <= entry.0 => {}
                    _ => {
                        best.insert(name, entry);
                    }
                }
            }
        }
        if best.len() == LABELS.len() {
            break;
        }
    }
    let witnesses = LABELS
        .iter()
        .filter_map(|name| {
            best.get(name).map(|((points, code, c, i), p)| KuratowskiWitness {
                label: name.to_string(),
                points: *points,
                code: code.to_hex(),
                poset: p.clone(),
                c: c.clone(),
                i: i.clone(),
            })
        })
        .collect();
    let missing = LABELS.iter().filter(|n| !best.contains_key(*n)).map(|n| n.to_string()).collect();
    RealizationReport { max_points, witnesses, missing, unclassified }
}
