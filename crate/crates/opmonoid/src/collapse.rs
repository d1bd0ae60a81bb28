//! Collapses satisfied by concrete `(poset, s, t)` instances, searches over
//! all small instances, and the implication catalog between equation classes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data;
use crate::diagram::DiagramCatalog;
use crate::error::{DataError, InstanceError};
use crate::poset::{enumerate_posets, CanonicalCode, EndoMap, Poset};
use crate::words::{normal_form, wset, Letter, NormalForm, Params, Word, WordAlgebra};

/// Carrier bound for the packed search representation.
pub const MAX_SEARCH_POINTS: usize = 16;

#[derive(Clone, Debug)]
pub struct Instance {
    poset: Poset,
    s: EndoMap,
    t: EndoMap,
    params: Params,
}

pub fn make_instance(poset: &Poset, s: &EndoMap, t: &EndoMap, params: Params) -> Result<Instance, InstanceError> {
    if !s.is_monotone(poset)? {
        return Err(InstanceError::NotMonotone("s"));
    }
    if !t.is_monotone(poset)? {
        return Err(InstanceError::NotMonotone("t"));
    }
    if !s.pointwise_leq(t, poset)? {
        return Err(InstanceError::NotDominated);
    }
    if s.power(params.m() as usize) != *s {
        return Err(InstanceError::NotPeriodic("s"));
    }
    if t.power(params.n() as usize) != *t {
        return Err(InstanceError::NotPeriodic("t"));
    }
    Ok(Instance { poset: poset.clone(), s: s.clone(), t: t.clone(), params })
}

impl Instance {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn s(&self) -> &EndoMap {
        &self.s
    }

    pub fn t(&self) -> &EndoMap {
        &self.t
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// The map a word induces (rightmost letter first).
    pub fn eval(&self, w: &Word) -> EndoMap {
        eval_letters(&self.s, &self.t, w.letters())
    }

    pub fn word_maps(&self) -> Vec<EndoMap> {
        wset(&self.params).iter().map(|f| self.eval(&f.word())).collect()
    }

    /// Disjoint union with componentwise maps.
    pub fn disjoint_union(&self, other: &Instance) -> Instance {
        Instance {
            poset: self.poset.disjoint_union(&other.poset),
            s: self.s.disjoint_union(&other.s),
            t: self.t.disjoint_union(&other.t),
            params: self.params,
        }
    }
}

pub(crate) fn eval_letters(s: &EndoMap, t: &EndoMap, letters: &[Letter]) -> EndoMap {
    let n = s.size();
    let img = (0..n)
        .map(|x| {
            letters.iter().rev().fold(x, |v, l| match l {
                Letter::S => s.apply(v),
                Letter::T => t.apply(v),
            })
        })
        .collect();
    EndoMap { img }
}

/// Unordered pairs of canonical-representative indices, as a bitset over
/// the pair index `b(b-1)/2 + a` for `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PairSet([u64; 5]);

impl PairSet {
    pub const CAPACITY_WORDS: usize = 25;

    #[inline]
    fn slot(a: usize, b: usize) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        b * (b - 1) / 2 + a
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        let k = Self::slot(a, b);
        self.0[k / 64] |= 1 << (k % 64);
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let k = Self::slot(a, b);
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn intersect(&self, other: &PairSet) -> PairSet {
        let mut out = *self;
        for (o, x) in out.0.iter_mut().zip(other.0) {
            *o &= x;
        }
        out
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self, words: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..words {
            for b in a + 1..words {
                if self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> PairSet {
        let mut p = PairSet::default();
        for &(a, b) in pairs {
            p.insert(a, b);
        }
        p
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.pairs(Self::CAPACITY_WORDS))
    }
}

/// A set of identified representative pairs, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Collapse {
    pub pairs: Vec<(usize, usize)>,
}

impl Collapse {
    pub fn from_set(set: &PairSet, words: usize) -> Self {
        Collapse { pairs: set.pairs(words) }
    }

    pub fn to_set(&self) -> PairSet {
        PairSet::from_pairs(&self.pairs)
    }

    /// Equality blocks with more than one member, as index lists.
    pub fn blocks(&self, words: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; words];
        let mut out = Vec::new();
        for a in 0..words {
            if seen[a] {
                continue;
            }
            let block: Vec<usize> = (a..words).filter(|&b| self.contains(a, b)).collect();
            for &b in &block {
                seen[b] = true;
            }
            if block.len() > 1 {
                out.push(block);
            }
        }
        out
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a == b || self.pairs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

pub fn satisfied_collapse(inst: &Instance) -> Collapse {
    let maps = inst.word_maps();
    let k = maps.len();
    let pairs = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&(a, b)| maps[a] == maps[b]).collect();
    Collapse { pairs }
}

/// Ordered pairs `(a, b)` of representatives with `a <= b` pointwise.
pub fn satisfied_order(inst: &Instance) -> Vec<(usize, usize)> {
    let maps = inst.word_maps();
    let mut out = Vec::new();
    for a in 0..maps.len() {
        for b in 0..maps.len() {
            if maps[a].below_unchecked(&maps[b], &inst.poset) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Whether identified pairs are closed under multiplication on both sides.
pub fn is_congruence(collapse: &Collapse, alg: &WordAlgebra) -> bool {
    let k = alg.len();
    collapse.pairs.iter().all(|&(a, b)| {
        (0..k).all(|g| {
            collapse.contains(alg.table[g][a], alg.table[g][b]) && collapse.contains(alg.table[a][g], alg.table[b][g])
        })
    })
}

// ---------------------------------------------------------------------------
// packed search

type Img = [u8; MAX_SEARCH_POINTS];

/// A poset flattened to bitmasks for the inner loops.
struct Packed {
    n: usize,
    up: [u16; MAX_SEARCH_POINTS],
    down: [u16; MAX_SEARCH_POINTS],
    /// earlier points below / above each point
    earlier_below: [u16; MAX_SEARCH_POINTS],
    earlier_above: [u16; MAX_SEARCH_POINTS],
}

impl Packed {
    fn new(p: &Poset) -> Self {
        let n = p.size();
        assert!(n <= MAX_SEARCH_POINTS);
        let mut pk = Packed {
            n,
            up: [0; MAX_SEARCH_POINTS],
            down: [0; MAX_SEARCH_POINTS],
            earlier_below: [0; MAX_SEARCH_POINTS],
            earlier_above: [0; MAX_SEARCH_POINTS],
        };
        for x in 0..n {
            for y in 0..n {
                if p.leq(x, y) {
                    pk.up[x] |= 1 << y;
                    pk.down[y] |= 1 << x;
                    if x < y {
                        pk.earlier_below[y] |= 1 << x;
                    }
                    if y < x {
                        pk.earlier_above[x] |= 1 << y;
                    }
                }
            }
        }
        pk
    }

    /// Calls `visit` on every monotone `f` with `f^k = f`, optionally with
    /// `f <= bound` pointwise, in lexicographic order.
    fn periodic_maps(&self, k: u32, bound: Option<&Img>, visit: &mut dyn FnMut(&Img)) {
        let mut img: Img = [0; MAX_SEARCH_POINTS];
        self.periodic_rec(0, k, bound, &mut img, visit);
    }

    fn periodic_rec(&self, x: usize, k: u32, bound: Option<&Img>, img: &mut Img, visit: &mut dyn FnMut(&Img)) {
        if x == self.n {
            visit(img);
            return;
        }
        let mut mask: u16 = if self.n == 16 { u16::MAX } else { (1u16 << self.n) - 1 };
        if let Some(b) = bound {
            mask &= self.down[b[x] as usize];
        }
        let mut below = self.earlier_below[x];
        while below != 0 {
            let y = below.trailing_zeros() as usize;
            below &= below - 1;
            mask &= self.up[img[y] as usize];
        }
        let mut above = self.earlier_above[x];
        while above != 0 {
            let y = above.trailing_zeros() as usize;
            above &= above - 1;
            mask &= self.down[img[y] as usize];
        }
        while mask != 0 {
            let v = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            img[x] = v;
            if self.orbits_consistent(x, k, img) {
                self.periodic_rec(x + 1, k, bound, img, visit);
            }
        }
    }

    /// `f^k = f` means every image point returns to itself after `k - 1`
    /// further steps; reject as soon as a fully assigned orbit fails.
    fn orbits_consistent(&self, x: usize, k: u32, img: &Img) -> bool {
        for y in 0..=x {
            let w = img[y] as usize;
            let mut cur = w;
            let mut known = true;
            for _ in 1..k {
                if cur > x {
                    known = false;
                    break;
                }
                cur = img[cur] as usize;
            }
            if known && cur != w {
                return false;
            }
        }
        true
    }
}

/// Letter sequences of the representatives, rightmost letter first.
struct WordPrograms {
    programs: Vec<Vec<bool>>,
}

impl WordPrograms {
    fn new(p: &Params) -> Self {
        let programs = wset(p)
            .iter()
            .map(|f| f.word().letters().iter().rev().map(|&l| l == Letter::T).collect())
            .collect();
        WordPrograms { programs }
    }

    fn len(&self) -> usize {
        self.programs.len()
    }

    /// Each word's map packed four bits per point.
    fn packed_maps(&self, n: usize, s: &Img, t: &Img, out: &mut [u64]) {
        for (prog, slot) in self.programs.iter().zip(out.iter_mut()) {
            let mut code = 0u64;
            for x in 0..n {
                let mut v = x as u8;
                for &is_t in prog {
                    v = if is_t { t[v as usize] } else { s[v as usize] };
                }
                code |= (v as u64) << (4 * x);
            }
            *slot = code;
        }
    }

    fn fingerprint(&self, n: usize, s: &Img, t: &Img, scratch: &mut [u64]) -> PairSet {
        self.packed_maps(n, s, t, scratch);
        let mut set = PairSet::default();
        let k = self.len();
        for b in 1..k {
            for a in 0..b {
                if scratch[a] == scratch[b] {
                    set.insert(a, b);
                }
            }
        }
        set
    }
}

fn to_endo(n: usize, img: &Img) -> EndoMap {
    EndoMap { img: img[..n].iter().map(|&v| v as usize).collect() }
}

/// Calls `visit(s, t)` for every instance on `p`, enumerating `t` first
/// and then `s <= t`.
fn for_each_instance(p: &Poset, params: &Params, visit: &mut dyn FnMut(&Img, &Img)) {
    let pk = Packed::new(p);
    let (m, n) = (params.m(), params.n());
    pk.periodic_maps(n, None, &mut |t| {
        let t = *t;
        pk.periodic_maps(m, Some(&t), &mut |s| visit(s, &t));
    });
}

/// Every valid instance on a poset, as owned maps `(s, t)`.
pub fn instances_on(p: &Poset, params: &Params) -> Vec<(EndoMap, EndoMap)> {
    let n = p.size();
    let mut out = Vec::new();
    for_each_instance(p, params, &mut |s, t| out.push((to_endo(n, s), to_endo(n, t))));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub points: usize,
    pub code: String,
    pub poset: Poset,
    pub s: EndoMap,
    pub t: EndoMap,
}

impl Witness {
    fn key(&self) -> (usize, CanonicalCode, &EndoMap, &EndoMap) {
        (self.points, self.poset.canonical_code(), &self.t, &self.s)
    }

    pub fn instance(&self, params: Params) -> Result<Instance, InstanceError> {
        make_instance(&self.poset, &self.s, &self.t, params)
    }
}

fn witness_of(p: &Poset, code: &CanonicalCode, s: &Img, t: &Img) -> Witness {
    let n = p.size();
    Witness { points: n, code: code.to_hex(), poset: p.clone(), s: to_endo(n, s), t: to_endo(n, t) }
}

/// Distinct collapses on one poset with their first witnesses (maps in
/// lexicographic order, `t` before `s`), plus the number of instances.
fn collapses_on(p: &Poset, params: &Params, programs: &WordPrograms) -> (BTreeMap<PairSet, Witness>, u64) {
    let code = p.canonical_code();
    let mut found: BTreeMap<PairSet, Witness> = BTreeMap::new();
    let mut scratch = vec![0u64; programs.len()];
    let mut count = 0u64;
    let n = p.size();
    for_each_instance(p, params, &mut |s, t| {
        count += 1;
        let fp = programs.fingerprint(n, s, t, &mut scratch);
        found.entry(fp).or_insert_with(|| witness_of(p, &code, s, t));
    });
    (found, count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Witness,
    Exhaustive,
}

#[derive(Clone, Debug)]
pub enum Target {
    Count(usize),
    Set(BTreeSet<PairSet>),
}

impl Target {
    fn met(&self, found: &BTreeMap<PairSet, Witness>) -> bool {
        match self {
            Target::Count(c) => found.len() >= *c,
            Target::Set(s) => s.iter().all(|x| found.contains_key(x)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub params: Params,
    pub max_points: usize,
    pub mode: SearchMode,
    /// Every poset up to this size is always visited.
    pub floor: usize,
    pub target: Option<Target>,
    /// Posets handed to workers per batch between target checks.
    pub batch: usize,
}

impl SearchConfig {
    pub fn new(params: Params, max_points: usize, mode: SearchMode) -> Self {
        SearchConfig { params, max_points, mode, floor: 5, target: None, batch: 256 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SizeStats {
    pub points: usize,
    pub posets: usize,
    pub instances: u64,
    pub new_collapses: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollapseRecord {
    pub pairs: Vec<(usize, usize)>,
    /// Nontrivial equality blocks in words.
    pub blocks: Vec<Vec<String>>,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub params: (u32, u32),
    pub max_points: usize,
    pub mode: SearchMode,
    pub count: usize,
    pub target_met: Option<bool>,
    pub stats: Vec<SizeStats>,
    pub union_rounds: usize,
    pub collapses: Vec<CollapseRecord>,
}

impl SearchReport {
    pub fn collapse_sets(&self) -> BTreeSet<PairSet> {
        self.collapses.iter().map(|c| PairSet::from_pairs(&c.pairs)).collect()
    }
}

fn merge_min(found: &mut BTreeMap<PairSet, Witness>, fp: PairSet, w: Witness) -> bool {
    match found.get(&fp) {
        Some(old) if old.key() <= w.key() => false,
        Some(_) => {
            found.insert(fp, w);
            false
        }
        None => {
            found.insert(fp, w);
            true
        }
    }
}

/// Sweeps posets of one size, in canonical-code order, batch by batch.
fn sweep_size(
    size: usize,
    config: &SearchConfig,
    programs: &WordPrograms,
    found: &mut BTreeMap<PairSet, Witness>,
    stop_early: bool,
) -> SizeStats {
    let posets = enumerate_posets(size);
    let mut stats = SizeStats { points: size, posets: 0, instances: 0, new_collapses: 0 };
    for chunk in posets.chunks(config.batch.max(1)) {
        let results: Vec<(BTreeMap<PairSet, Witness>, u64)> =
            chunk.par_iter().map(|p| collapses_on(p, &config.params, programs)).collect();
        stats.posets += chunk.len();
        for (local, count) in results {
            stats.instances += count;
            for (fp, w) in local {
                if merge_min(found, fp, w) {
                    stats.new_collapses += 1;
                }
            }
        }
        if stop_early && config.target.as_ref().is_some_and(|t| t.met(found)) {
            break;
        }
    }
    stats
}

/// Closes the found collapses under intersection. Two witnesses realize
/// the intersection of their collapses on their disjoint union, or on one
/// point fewer by gluing a point fixed by both maps in each. Returns the
/// number of rounds.
fn union_closure(config: &SearchConfig, found: &mut BTreeMap<PairSet, Witness>) -> usize {
    let mut rounds = 0;
    loop {
        let current: Vec<(PairSet, Witness)> = found.iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut fresh: BTreeMap<PairSet, Witness> = BTreeMap::new();
        for (i, (fa, wa)) in current.iter().enumerate() {
            for (fb, wb) in &current[i + 1..] {
                if wa.points + wb.points > config.max_points + 1 {
                    continue;
                }
                let meet = fa.intersect(fb);
                if found.contains_key(&meet) {
                    continue;
                }
                if wa.points + wb.points <= config.max_points {
                    merge_min(&mut fresh, meet, union_witness(wa, wb));
                }
                for w in wedge_witnesses(wa, wb) {
                    merge_min(&mut fresh, meet, w);
                }
            }
        }
        if fresh.is_empty() {
            return rounds;
        }
        rounds += 1;
        found.extend(fresh);
        if config.target.as_ref().is_some_and(|t| t.met(found)) {
            return rounds;
        }
    }
}

fn canonical_witness(p: Poset, s: EndoMap, t: EndoMap) -> Witness {
    let (code, order) = p.canonical_labelling();
    Witness { points: p.size(), code: code.to_hex(), poset: p.relabel(&order), s: s.relabel(&order), t: t.relabel(&order) }
}

fn union_witness(a: &Witness, b: &Witness) -> Witness {
    canonical_witness(a.poset.disjoint_union(&b.poset), a.s.disjoint_union(&b.s), a.t.disjoint_union(&b.t))
}

fn fixed_points(w: &Witness) -> Vec<usize> {
    (0..w.points).filter(|&x| w.s.apply(x) == x && w.t.apply(x) == x).collect()
}

/// `a` and `b` glued along a common fixed point, for every choice of one
/// fixed point on each side.
fn wedge_witnesses(a: &Witness, b: &Witness) -> Vec<Witness> {
    let (na, nb) = (a.points, b.points);
    let mut out = Vec::new();
    for x in fixed_points(a) {
        for y in fixed_points(b) {
            let place: Vec<usize> = (0..nb).map(|q| if q == y { x } else if q < y { na + q } else { na + q - 1 }).collect();
            let n = na + nb - 1;
            let mut rel = vec![vec![false; n]; n];
            for u in 0..na {
                for v in 0..na {
                    rel[u][v] = a.poset.leq(u, v);
                }
            }
            for u in 0..nb {
                for v in 0..nb {
                    rel[place[u]][place[v]] |= b.poset.leq(u, v);
                }
            }
            for k in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        if rel[u][k] && rel[k][v] {
                            rel[u][v] = true;
                        }
                    }
                }
            }
            let p = Poset::from_relation(&rel).expect("a wedge of posets is a poset");
            let glue = |f: &EndoMap, g: &EndoMap| {
                let mut img = f.img.clone();
                img.resize(n, 0);
                for u in 0..nb {
                    img[place[u]] = place[g.apply(u)];
                }
                EndoMap { img }
            };
            out.push(canonical_witness(p, glue(&a.s, &b.s), glue(&a.t, &b.t)));
        }
    }
    out
}

/// Collapses realized by instances with at most `max_points` points.
///
/// Exhaustive mode visits every poset up to the bound. Witness mode visits
/// every poset up to the floor, closes the result under disjoint unions and
/// wedges,
/// and then sweeps larger sizes only until the target (if any) is met.
pub fn search_collapses(config: &SearchConfig) -> SearchReport {
    let programs = WordPrograms::new(&config.params);
    let mut found: BTreeMap<PairSet, Witness> = BTreeMap::new();
    let mut stats = Vec::new();
    let mut union_rounds = 0;
    let floor = match config.mode {
        SearchMode::Exhaustive => config.max_points,
        SearchMode::Witness => config.floor.min(config.max_points),
    };
    for size in 1..=floor {
        stats.push(sweep_size(size, config, &programs, &mut found, false));
    }
    if config.mode == SearchMode::Witness {
        let met = |f: &BTreeMap<PairSet, Witness>| config.target.as_ref().is_some_and(|t| t.met(f));
        if !met(&found) {
            union_rounds = union_closure(config, &mut found);
        }
        for size in floor + 1..=config.max_points {
            if met(&found) {
                break;
            }
            stats.push(sweep_size(size, config, &programs, &mut found, true));
            if !met(&found) {
                union_rounds += union_closure(config, &mut found);
            }
        }
    }
    let words = programs.len();
    let labels: Vec<String> = wset(&config.params).iter().map(|f| f.to_string()).collect();
    let mut collapses: Vec<CollapseRecord> = found
        .into_iter()
        .map(|(fp, witness)| {
            let c = Collapse::from_set(&fp, words);
            let blocks = c.blocks(words).iter().map(|b| b.iter().map(|&i| labels[i].clone()).collect()).collect();
            CollapseRecord { pairs: c.pairs, blocks, witness }
        })
        .collect();
    collapses.sort_by(|a, b| a.pairs.cmp(&b.pairs));
    let target_met = config.target.as_ref().map(|t| match t {
        Target::Count(c) => collapses.len() == *c,
        Target::Set(s) => collapses.iter().map(|c| PairSet::from_pairs(&c.pairs)).collect::<BTreeSet<_>>() == *s,
    });
    SearchReport {
        params: (config.params.m(), config.params.n()),
        max_points: config.max_points,
        mode: config.mode,
        count: collapses.len(),
        target_met,
        stats,
        union_rounds,
        collapses,
    }
}

/// Pointwise order intersected over every instance on at most `max_points`
/// points.
pub fn order_intersection(params: &Params, max_points: usize) -> Vec<Vec<bool>> {
    let programs = WordPrograms::new(params);
    let k = programs.len();
    let partial: Vec<Vec<Vec<bool>>> = (1..=max_points)
        .flat_map(enumerate_posets)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| {
            let pk = Packed::new(p);
            let n = p.size();
            let mut rel = vec![vec![true; k]; k];
            let mut maps = vec![0u64; k];
            for_each_instance(p, params, &mut |s, t| {
                programs.packed_maps(n, s, t, &mut maps);
                for a in 0..k {
                    for b in 0..k {
                        if rel[a][b] && !packed_below(&pk, n, maps[a], maps[b]) {
                            rel[a][b] = false;
                        }
                    }
                }
            });
            rel
        })
        .collect();
    let mut rel = vec![vec![true; k]; k];
    for r in partial {
        for a in 0..k {
            for b in 0..k {
                rel[a][b] &= r[a][b];
            }
        }
    }
    rel
}

fn packed_below(pk: &Packed, n: usize, f: u64, g: u64) -> bool {
    (0..n).all(|x| {
        let a = (f >> (4 * x) & 15) as usize;
        let b = (g >> (4 * x) & 15) as usize;
        pk.up[a] >> b & 1 == 1
    })
}

/// Distinct collapses of every instance on at most `max_points` points, each
/// with the number of instances realizing it.
pub fn collapse_census(params: &Params, max_points: usize) -> BTreeMap<PairSet, u64> {
    let programs = WordPrograms::new(params);
    let posets: Vec<Poset> = (1..=max_points).flat_map(enumerate_posets).collect();
    let partial: Vec<BTreeMap<PairSet, u64>> = posets
        .par_iter()
        .map(|p| {
            let mut local = BTreeMap::new();
            let mut scratch = vec![0u64; programs.len()];
            let n = p.size();
            for_each_instance(p, params, &mut |s, t| {
                *local.entry(programs.fingerprint(n, s, t, &mut scratch)).or_insert(0) += 1;
            });
            local
        })
        .collect();
    let mut out = BTreeMap::new();
    for local in partial {
        for (k, v) in local {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// equation classes over the (3,3) representatives

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug)]
pub struct EquationClass {
    pub label: String,
    pub equations: Vec<(usize, usize)>,
    pub parity: Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    /// the row class is implied by the column class
    Gray,
    /// the conjunction is equivalent to the listed class
    Plain,
    /// the conjunction is equivalent to the row class and the listed class
    Italic,
    /// the conjunction is equivalent to the listed class and the column class
    Bold,
    Blank,
}

#[derive(Clone, Debug)]
pub struct TableCell {
    pub row: usize,
    pub col: usize,
    pub kind: CellKind,
    pub result: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ClassCatalog33 {
    pub words: Vec<NormalForm>,
    pub classes: Vec<EquationClass>,
    pub arrows: Vec<(usize, usize)>,
    pub table: Vec<TableCell>,
}

#[derive(Deserialize)]
struct RawClass {
    label: String,
    equations: Vec<(String, String)>,
    parity: Parity,
}

#[derive(Deserialize)]
struct RawCell {
    e1: String,
    e2: String,
    kind: CellKind,
    e3: Option<String>,
}

#[derive(Deserialize)]
struct RawTable {
    cells: Vec<RawCell>,
}

#[derive(Deserialize)]
struct RawCatalog {
    classes: Vec<RawClass>,
    arrows: Vec<(String, String)>,
    table: RawTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoherenceViolation {
    SplitClass(String),
    Arrow(String, String),
    Cell(String, String),
}

impl ClassCatalog33 {
    pub fn load() -> Result<Self, DataError> {
        let raw: RawCatalog = data::parse(data::CLASS_IMPLICATIONS)?;
        let params = Params::new(3, 3).expect("valid");
        let words = wset(&params);
        let bad = |m: String| DataError::Catalog(m);
        let word_idx = |w: &str| -> Result<usize, DataError> {
            let parsed: Word = w.parse().map_err(|_| bad(format!("bad word {w}")))?;
            let nf = normal_form(&parsed, &params);
            if nf.word() != parsed {
                return Err(bad(format!("{w} is not a representative")));
            }
            Ok(words.iter().position(|&f| f == nf).unwrap())
        };
        let mut classes = Vec::new();
        for c in &raw.classes {
            let equations =
                c.equations.iter().map(|(a, b)| Ok((word_idx(a)?, word_idx(b)?))).collect::<Result<Vec<_>, DataError>>()?;
            classes.push(EquationClass { label: c.label.clone(), equations, parity: c.parity });
        }
        let class_idx = |l: &str| classes.iter().position(|c: &EquationClass| c.label == l).ok_or_else(|| bad(format!("unknown class {l}")));
        let arrows =
            raw.arrows.iter().map(|(a, b)| Ok((class_idx(a)?, class_idx(b)?))).collect::<Result<Vec<_>, DataError>>()?;
        let table = raw
            .table
            .cells
            .iter()
            .map(|c| {
                Ok(TableCell {
                    row: class_idx(&c.e1)?,
                    col: class_idx(&c.e2)?,
                    kind: c.kind,
                    result: c.e3.as_deref().map(class_idx).transpose()?,
                })
            })
            .collect::<Result<Vec<_>, DataError>>()?;
        Ok(ClassCatalog33 { words, classes, arrows, table })
    }

    pub fn class(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    /// Parity computed from word lengths, for comparison with the tags.
    pub fn computed_parity(&self, class: usize) -> Vec<Parity> {
        self.classes[class]
            .equations
            .iter()
            .map(|&(a, b)| {
                if (self.words[a].len() + self.words[b].len()).is_multiple_of(2) {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            })
            .collect()
    }

    fn satisfied(&self, collapse: &PairSet, class: usize) -> (bool, bool) {
        let eqs = &self.classes[class].equations;
        let held = eqs.iter().filter(|&&(a, b)| collapse.contains(a, b)).count();
        (held == eqs.len(), held == 0 || held == eqs.len())
    }

    /// Flags every class, arrow or table cell the collapse contradicts.
    pub fn check(&self, collapse: &PairSet) -> Vec<CoherenceViolation> {
        let mut out = Vec::new();
        let mut sat = Vec::with_capacity(self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            let (all, uniform) = self.satisfied(collapse, i);
            if !uniform {
                out.push(CoherenceViolation::SplitClass(c.label.clone()));
            }
            sat.push(all);
        }
        for &(a, b) in &self.arrows {
            if sat[a] && !sat[b] {
                out.push(CoherenceViolation::Arrow(self.classes[a].label.clone(), self.classes[b].label.clone()));
            }
        }
        for cell in &self.table {
            let (e1, e2) = (sat[cell.row], sat[cell.col]);
            let e3 = cell.result.map(|r| sat[r]).unwrap_or(false);
            let ok = match cell.kind {
                CellKind::Gray => !e2 || e1,
                CellKind::Plain => (e1 && e2) == e3,
                CellKind::Italic => (e1 && e2) == (e1 && e3),
                CellKind::Bold => (e1 && e2) == (e3 && e2),
                CellKind::Blank => true,
            };
            if !ok {
                out.push(CoherenceViolation::Cell(self.classes[cell.row].label.clone(), self.classes[cell.col].label.clone()));
            }
        }
        out
    }
}

pub fn check_class_coherence(inst: &Instance, catalog: &ClassCatalog33) -> Vec<CoherenceViolation> {
    catalog.check(&satisfied_collapse(inst).to_set())
}

/// Containment diagram of collapses (as pair sets), nodes in the given order.
pub fn containment_order(collapses: &[PairSet], labels: Vec<String>) -> DiagramCatalog {
    let k = collapses.len();
    let order: Vec<Vec<bool>> =
        (0..k).map(|a| (0..k).map(|b| collapses[a].is_subset(&collapses[b])).collect()).collect();
    let edges = crate::monoid::hasse_edges(&order).expect("containment of distinct sets");
    DiagramCatalog::solid(labels, edges)
}

/// Golden collapse files: `collapses_<m>_<n>.json`.
pub fn golden_file(params: &Params) -> String {
    format!("collapses_{}_{}.json", params.m(), params.n())
}

pub fn load_golden(params: &Params) -> Result<SearchReport, DataError> {
    data::parse(&golden_file(params))
}
