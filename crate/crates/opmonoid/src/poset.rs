//! Finite posets, self-maps on their carriers, canonical labelling and
//! enumeration up to isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PosetError;

/// Largest carrier handled by the isomorphism-class enumerator.
pub const DEFAULT_MAX_POINTS: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers())
    }
}

impl Poset {
    /// Checks the three order axioms on a square boolean relation.
    pub fn from_relation(rel: &[Vec<bool>]) -> Result<Self, PosetError> {
        let n = rel.len();
        if rel.iter().any(|row| row.len() != n) {
            return Err(PosetError::NotSquare);
        }
        let leq: Vec<bool> = rel.iter().flatten().copied().collect();
        let p = Poset { n, leq };
        p.check_axioms()?;
        Ok(p)
    }

    fn check_axioms(&self) -> Result<(), PosetError> {
        let n = self.n;
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(PosetError::NotReflexive(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(PosetError::NotAntisymmetric(x, y));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        return Err(PosetError::NotTransitive(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reflexive-transitive closure of a list of `(lower, upper)` pairs.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PosetError::OutOfRange(a.max(b), n));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..x {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(PosetError::Cycle(y));
                }
            }
        }
        Ok(Poset { n, leq })
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &pairs).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_covers(n, &[]).expect("antichain")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn dual(&self) -> Self {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(y, x);
            }
        }
        Poset { n, leq }
    }

    pub fn relation(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.leq(x, y)).collect()).collect()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq(b, x)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&t| (0..self.n).all(|x| self.leq(x, t)))
    }

    /// Strict up-set bitmask; only meaningful for carriers of at most 64 points.
    pub fn up_mask(&self, x: usize) -> u64 {
        (0..self.n).filter(|&y| self.leq(x, y)).fold(0, |m, y| m | 1 << y)
    }

    pub fn down_mask(&self, x: usize) -> u64 {
        (0..self.n).filter(|&y| self.leq(y, x)).fold(0, |m, y| m | 1 << y)
    }

    /// The poset with point `i` playing the role of old point `order[i]`.
    pub fn relabel(&self, order: &[usize]) -> Self {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(order[i], order[j]);
            }
        }
        Poset { n, leq }
    }

    /// Side-by-side union; points of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Poset) -> Self {
        let n = self.n + other.n;
        let mut leq = vec![false; n * n];
        for x in 0..self.n {
            for y in 0..self.n {
                leq[x * n + y] = self.leq(x, y);
            }
        }
        for x in 0..other.n {
            for y in 0..other.n {
                leq[(x + self.n) * n + y + self.n] = other.leq(x, y);
            }
        }
        Poset { n, leq }
    }

    /// Adds one new point strictly above exactly the points of `below`
    /// (which must be a down-set).
    pub fn extend_above(&self, below: &[usize]) -> Self {
        let n = self.n + 1;
        let mut leq = vec![false; n * n];
        for x in 0..self.n {
            for y in 0..self.n {
                leq[x * n + y] = self.leq(x, y);
            }
        }
        for &x in below {
            leq[x * n + self.n] = true;
        }
        leq[self.n * n + self.n] = true;
        Poset { n, leq }
    }

    fn twins(&self, x: usize, y: usize) -> bool {
        (0..self.n).all(|z| {
            (z == x || z == y) || (self.leq(x, z) == self.leq(y, z) && self.leq(z, x) == self.leq(z, y))
        }) && !self.leq(x, y)
            && !self.leq(y, x)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        self.canonical_labelling().0
    }

    /// Canonical code plus the ordering realizing it: `order[i]` is the old
    /// point that becomes point `i` of the canonical copy.
    pub fn canonical_labelling(&self) -> (CanonicalCode, Vec<usize>) {
        let n = self.n;
        if n == 0 {
            return (CanonicalCode(vec![0]), vec![]);
        }
        let mut twin_rep: Vec<usize> = (0..n).collect();
        for x in 0..n {
            for y in 0..x {
                if twin_rep[y] == y && self.twins(x, y) {
                    twin_rep[x] = y;
                    break;
                }
            }
        }
        let cells = vec![(0..n).collect::<Vec<_>>()];
        let mut best: Option<(CanonicalCode, Vec<usize>)> = None;
        self.search_leaf(cells, &twin_rep, &mut best);
        best.expect("at least one leaf")
    }

    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.n;
        loop {
            let mut cell_of = vec![0usize; n];
            for (ci, c) in cells.iter().enumerate() {
                for &x in c {
                    cell_of[x] = ci;
                }
            }
            let sig = |x: usize| {
                let mut ups: Vec<usize> = (0..n).filter(|&y| self.lt(x, y)).map(|y| cell_of[y]).collect();
                let mut downs: Vec<usize> = (0..n).filter(|&y| self.lt(y, x)).map(|y| cell_of[y]).collect();
                ups.sort_unstable();
                downs.sort_unstable();
                (ups, downs)
            };
            let mut next = Vec::with_capacity(cells.len());
            for c in &cells {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
                for &x in c {
                    groups.entry(sig(x)).or_default().push(x);
                }
                next.extend(groups.into_values());
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn search_leaf(
        &self,
        cells: Vec<Vec<usize>>,
        twin_rep: &[usize],
        best: &mut Option<(CanonicalCode, Vec<usize>)>,
    ) {
        let cells = self.refine(cells);
        let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = CanonicalCode::of_ordering(self, &order);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order));
            }
            return;
        };
        let cell = &cells[pos];
        let mut seen_reps: Vec<usize> = Vec::new();
        for &x in cell {
            // swapping twins is an automorphism fixing the current partition
            let rep = cell.iter().copied().find(|&y| twin_rep[y] == twin_rep[x]).unwrap();
            if seen_reps.contains(&rep) {
                continue;
            }
            seen_reps.push(rep);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..pos]);
            next.push(vec![x]);
            next.push(cell.iter().copied().filter(|&y| y != x).collect());
            next.extend_from_slice(&cells[pos + 1..]);
            self.search_leaf(next, twin_rep, best);
        }
    }

    /// The isomorphic copy in canonical labelling.
    pub fn canonical_form(&self) -> Self {
        let (_, order) = self.canonical_labelling();
        self.relabel(&order)
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.n == other.n && self.canonical_code() == other.canonical_code()
    }
}

/// Byte string identifying a poset up to isomorphism: the size followed by
/// the off-diagonal relation bits under the canonical labelling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    fn of_ordering(p: &Poset, order: &[usize]) -> Self {
        let n = order.len();
        let mut bytes = vec![n as u8];
        let mut acc = 0u8;
        let mut nbits = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                acc = (acc << 1) | p.leq(order[i], order[j]) as u8;
                nbits += 1;
                if nbits == 8 {
                    bytes.push(acc);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            bytes.push(acc << (8 - nbits));
        }
        CanonicalCode(bytes)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// One representative per isomorphism class of `n`-point posets, in
/// canonical labelling, sorted by canonical code.
///
/// Every poset arises from a smaller one by adding a maximal point above a
/// down-set, so classes are grown one point at a time.
pub fn enumerate_posets(n: usize) -> Vec<Poset> {
    assert!(n >= 1, "need at least one point");
    let mut level: BTreeMap<CanonicalCode, Poset> = BTreeMap::new();
    let one = Poset::antichain(1);
    level.insert(one.canonical_code(), one);
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for p in level.values() {
            for below in down_sets(p) {
                let q = p.extend_above(&below);
                let (code, order) = q.canonical_labelling();
                next.entry(code).or_insert_with(|| q.relabel(&order));
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// All posets with at most `max` points, smallest first.
pub fn enumerate_posets_upto(max: usize) -> Vec<Poset> {
    (1..=max).flat_map(enumerate_posets).collect()
}

/// Down-closed subsets, as sorted point lists.
pub fn down_sets(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.size();
    assert!(n < 64);
    let downs: Vec<u64> = (0..n).map(|x| p.down_mask(x)).collect();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|x| s >> x & 1 == 0 || downs[x] & !s == 0))
        .map(|s| (0..n).filter(|&x| s >> x & 1 == 1).collect())
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EndoMap {
    pub img: Vec<usize>,
}

impl fmt::Debug for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.img)
    }
}

impl EndoMap {
    pub fn new(img: Vec<usize>) -> Result<Self, PosetError> {
        let n = img.len();
        if let Some(&bad) = img.iter().find(|&&v| v >= n) {
            return Err(PosetError::OutOfRange(bad, n));
        }
        Ok(EndoMap { img })
    }

    pub fn identity(n: usize) -> Self {
        EndoMap { img: (0..n).collect() }
    }

    pub fn constant(n: usize, v: usize) -> Self {
        EndoMap { img: vec![v; n] }
    }

    pub fn size(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    fn same_size(&self, other: &EndoMap) -> Result<(), PosetError> {
        if self.size() != other.size() {
            return Err(PosetError::SizeMismatch(self.size(), other.size()));
        }
        Ok(())
    }

    fn fits(&self, p: &Poset) -> Result<(), PosetError> {
        if self.size() != p.size() {
            return Err(PosetError::SizeMismatch(self.size(), p.size()));
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EndoMap) -> Result<Self, PosetError> {
        self.same_size(other)?;
        Ok(self.after(other))
    }

    /// Unchecked `self ∘ other`.
    pub fn after(&self, other: &EndoMap) -> Self {
        EndoMap { img: other.img.iter().map(|&x| self.img[x]).collect() }
    }

    pub fn power(&self, k: usize) -> Self {
        assert!(k >= 1, "power needs k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.after(&acc);
        }
        acc
    }

    pub fn is_monotone(&self, p: &Poset) -> Result<bool, PosetError> {
        self.fits(p)?;
        Ok(self.monotone_unchecked(p))
    }

    pub(crate) fn monotone_unchecked(&self, p: &Poset) -> bool {
        let n = p.size();
        (0..n).all(|x| (0..n).all(|y| !p.leq(x, y) || p.leq(self.img[x], self.img[y])))
    }

    /// `self(x) <= other(x)` for every point.
    pub fn pointwise_leq(&self, other: &EndoMap, p: &Poset) -> Result<bool, PosetError> {
        self.fits(p)?;
        other.fits(p)?;
        Ok(self.below_unchecked(other, p))
    }

    pub(crate) fn below_unchecked(&self, other: &EndoMap, p: &Poset) -> bool {
        self.img.iter().zip(&other.img).all(|(&a, &b)| p.leq(a, b))
    }

    pub fn is_idempotent(&self) -> bool {
        self.img.iter().all(|&y| self.img[y] == y)
    }

    pub fn is_closure(&self, p: &Poset) -> Result<bool, PosetError> {
        self.fits(p)?;
        let id = EndoMap::identity(p.size());
        Ok(self.monotone_unchecked(p) && id.below_unchecked(self, p) && self.is_idempotent())
    }

    pub fn is_interior(&self, p: &Poset) -> Result<bool, PosetError> {
        self.fits(p)?;
        let id = EndoMap::identity(p.size());
        Ok(self.monotone_unchecked(p) && self.below_unchecked(&id, p) && self.is_idempotent())
    }

    /// Transport along a relabelling where new point `i` is old `order[i]`.
    pub fn relabel(&self, order: &[usize]) -> Self {
        let mut inv = vec![0; order.len()];
        for (i, &o) in order.iter().enumerate() {
            inv[o] = i;
        }
        EndoMap { img: order.iter().map(|&o| inv[self.img[o]]).collect() }
    }

    /// Componentwise map on a disjoint union (`other` shifted past `self`).
    pub fn disjoint_union(&self, other: &EndoMap) -> Self {
        let k = self.size();
        let mut img = self.img.clone();
        img.extend(other.img.iter().map(|&v| v + k));
        EndoMap { img }
    }

    /// Permutation of an `n`-point carrier cycling `first..=last` upward
    /// (and `last` back to `first`), fixing every other point.
    pub fn cycle_range(n: usize, first: usize, last: usize) -> Result<Self, PosetError> {
        if first >= last {
            return Err(PosetError::BadRange(first as i64, last as i64));
        }
        if last >= n {
            return Err(PosetError::OutOfRange(last, n));
        }
        let mut img: Vec<usize> = (0..n).collect();
        for (k, slot) in img.iter_mut().enumerate().take(last).skip(first) {
            *slot = k + 1;
        }
        img[last] = first;
        Ok(EndoMap { img })
    }
}

/// The circular shift on the integer interval `u..=v`, as a map on indices
/// `0..=v-u` where index `k` stands for `u + k`.
pub fn circular_shift(u: i64, v: i64) -> Result<EndoMap, PosetError> {
    if u >= v {
        return Err(PosetError::BadRange(u, v));
    }
    let len = (v - u + 1) as usize;
    EndoMap::cycle_range(len, 0, len - 1)
}

/// Exhaustive backtracking over monotone maps, optionally squeezed between
/// pointwise bounds. Maps come out in lexicographic order of their images.
pub struct MonotoneMaps<'a> {
    p: &'a Poset,
    lower: Option<&'a EndoMap>,
    upper: Option<&'a EndoMap>,
    img: Vec<usize>,
    next_value: Vec<usize>,
    depth: usize,
    done: bool,
}

impl<'a> MonotoneMaps<'a> {
    pub fn new(p: &'a Poset) -> Self {
        Self::bounded(p, None, None)
    }

    pub fn bounded(p: &'a Poset, lower: Option<&'a EndoMap>, upper: Option<&'a EndoMap>) -> Self {
        let n = p.size();
        MonotoneMaps {
            p,
            lower,
            upper,
            img: vec![0; n],
            next_value: vec![0; n],
            depth: 0,
            done: n == 0,
        }
    }

    fn admissible(&self, x: usize, v: usize) -> bool {
        let p = self.p;
        if let Some(l) = self.lower {
            if !p.leq(l.img[x], v) {
                return false;
            }
        }
        if let Some(u) = self.upper {
            if !p.leq(v, u.img[x]) {
                return false;
            }
        }
        (0..x).all(|y| (!p.leq(y, x) || p.leq(self.img[y], v)) && (!p.leq(x, y) || p.leq(v, self.img[y])))
    }
}

impl Iterator for MonotoneMaps<'_> {
    type Item = EndoMap;

    fn next(&mut self) -> Option<EndoMap> {
        let n = self.p.size();
        if self.done {
            return None;
        }
        loop {
            let x = self.depth;
            let mut v = self.next_value[x];
            while v < n && !self.admissible(x, v) {
                v += 1;
            }
            if v == n {
                if x == 0 {
                    self.done = true;
                    return None;
                }
                self.next_value[x] = 0;
                self.depth -= 1;
                continue;
            }
            self.img[x] = v;
            self.next_value[x] = v + 1;
            if x + 1 == n {
                return Some(EndoMap { img: self.img.clone() });
            }
            self.depth += 1;
        }
    }
}

/// Monotone maps satisfying `pred`, in lexicographic order.
pub fn enumerate_monotone_endomaps<'a, F>(p: &'a Poset, pred: F) -> impl Iterator<Item = EndoMap> + 'a
where
    F: Fn(&EndoMap) -> bool + 'a,
{
    MonotoneMaps::new(p).filter(move |f| pred(f))
}

pub fn closures(p: &Poset) -> Vec<EndoMap> {
    let id = EndoMap::identity(p.size());
    MonotoneMaps::bounded(p, Some(&id), None).filter(|f| f.is_idempotent()).collect()
}

pub fn interiors(p: &Poset) -> Vec<EndoMap> {
    let id = EndoMap::identity(p.size());
    MonotoneMaps::bounded(p, None, Some(&id)).filter(|f| f.is_idempotent()).collect()
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    covers: Vec<[usize; 2]>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PosetJson { n: self.n, covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PosetJson::deserialize(d)?;
        let pairs: Vec<_> = raw.covers.iter().map(|c| (c[0], c[1])).collect();
        Poset::from_covers(raw.n, &pairs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> Poset {
        Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn axioms_reject_bad_relations() {
        assert!(Poset::from_relation(&[vec![true]]).is_ok());
        let sym = vec![vec![true, true], vec![true, true]];
        assert_eq!(Poset::from_relation(&sym), Err(PosetError::NotAntisymmetric(0, 1)));
        let nonrefl = vec![vec![false]];
        assert_eq!(Poset::from_relation(&nonrefl), Err(PosetError::NotReflexive(0)));
        let nontrans = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(Poset::from_relation(&nontrans), Err(PosetError::NotTransitive(0, 1, 2)));
        assert_eq!(Poset::from_covers(2, &[(0, 1), (1, 0)]), Err(PosetError::Cycle(0)));
    }

    #[test]
    fn dual_examples() {
        let c = Poset::chain(2);
        let d = c.dual();
        assert!(d.leq(1, 0) && !d.leq(0, 1));
        assert_eq!(Poset::antichain(3).dual(), Poset::antichain(3));
        let lambda = v_poset().dual();
        assert_eq!(lambda.top(), Some(0));
        assert_eq!(lambda.bottom(), None);
    }

    #[test]
    fn monotone_and_pointwise() {
        let c = Poset::chain(2);
        assert!(EndoMap::identity(2).is_monotone(&c).unwrap());
        assert!(EndoMap::constant(2, 1).is_monotone(&c).unwrap());
        assert!(!EndoMap::new(vec![1, 0]).unwrap().is_monotone(&c).unwrap());
        let lo = EndoMap::constant(2, 0);
        let hi = EndoMap::constant(2, 1);
        assert!(lo.pointwise_leq(&hi, &c).unwrap());
        assert!(!hi.pointwise_leq(&lo, &c).unwrap());
        assert!(hi.pointwise_leq(&hi, &c).unwrap());
        assert!(EndoMap::identity(3).is_monotone(&c).is_err());
    }

    #[test]
    fn composition_convention() {
        let f = EndoMap::new(vec![1, 1, 2]).unwrap();
        let g = EndoMap::new(vec![2, 2, 2]).unwrap();
        assert_eq!(f.compose(&g).unwrap().img, vec![2, 2, 2]);
        assert_eq!(g.compose(&f).unwrap().img, vec![2, 2, 2]);
        let h = EndoMap::new(vec![1, 0, 0]).unwrap();
        // f(h(x)) versus h(f(x)) differ, fixing the orientation
        assert_eq!(f.compose(&h).unwrap().img, vec![1, 1, 1]);
        assert_eq!(h.compose(&f).unwrap().img, vec![0, 0, 0]);
        let id = EndoMap::identity(3);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn powers() {
        assert_eq!(EndoMap::identity(4).power(5), EndoMap::identity(4));
        let swap = circular_shift(1, 2).unwrap();
        assert_eq!(swap.power(2), EndoMap::identity(2));
        let f = EndoMap::new(vec![1, 1, 2]).unwrap();
        assert_eq!(f.power(2), f);
        assert_eq!(f.power(3), f);
    }

    #[test]
    fn closure_interior_examples() {
        let c = Poset::chain(2);
        let id = EndoMap::identity(2);
        assert!(id.is_closure(&c).unwrap() && id.is_interior(&c).unwrap());
        let top = EndoMap::constant(2, 1);
        assert!(top.is_closure(&c).unwrap());
        assert!(!top.is_interior(&c).unwrap());
        let one = Poset::antichain(1);
        assert!(EndoMap::constant(1, 0).is_interior(&one).unwrap());
    }

    #[test]
    fn circular_shift_examples() {
        let s25 = circular_shift(2, 5).unwrap();
        // index 3 stands for 5, index 0 for 2
        assert_eq!(s25.apply(3), 0);
        let s13 = circular_shift(1, 3).unwrap();
        let labels: Vec<usize> = s13.img.iter().map(|k| k + 1).collect();
        assert_eq!(labels, vec![2, 3, 1]);
        let s14 = circular_shift(1, 4).unwrap();
        assert_eq!(s14.power(5), s14);
        for k in 2..5 {
            assert_ne!(s14.power(k), s14);
        }
        assert!(circular_shift(3, 3).is_err());
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn monotone_enumeration_examples() {
        assert_eq!(MonotoneMaps::new(&Poset::antichain(3)).count(), 27);
        let c = Poset::chain(2);
        let idem: Vec<_> = enumerate_monotone_endomaps(&c, |f| f.is_idempotent()).collect();
        assert_eq!(idem.len(), 3);
        assert_eq!(closures(&c).len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let p = v_poset();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":3,"covers":[[0,1],[0,2]]}"#);
        let back: Poset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let f = EndoMap::new(vec![0, 2, 2]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"img":[0,2,2]}"#);
        assert_eq!(serde_json::from_str::<EndoMap>(&s).unwrap(), f);
    }

    #[test]
    fn canonical_form_is_label_independent() {
        let p = Poset::from_covers(4, &[(0, 1), (2, 1), (2, 3)]).unwrap();
        let q = p.relabel(&[3, 1, 0, 2]);
        assert_eq!(p.canonical_code(), q.canonical_code());
        let (code, order) = p.canonical_labelling();
        assert_eq!(p.relabel(&order).canonical_code(), code);
    }
}
