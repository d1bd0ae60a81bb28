//! Words in two letters `s <= t` with `s^m = s` and `t^n = t`: canonical
//! representatives, the closed-form product, and the general order.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::diagram::DiagramCatalog;
use crate::error::WordError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    m: u32,
    n: u32,
    d: u32,
    l: u32,
}

impl Params {
    pub fn new(m: u32, n: u32) -> Result<Self, WordError> {
        if m < 2 || n < m {
            return Err(WordError::BadParams(m, n));
        }
        let (d, l) = ((m - 1).gcd(&(n - 1)), (m - 1).lcm(&(n - 1)));
        Ok(Params { m, n, d, l })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// gcd(m-1, n-1)
    pub fn gcd(&self) -> u32 {
        self.d
    }

    /// lcm(m-1, n-1)
    pub fn lcm(&self) -> u32 {
        self.l
    }

    pub fn wset_len(&self) -> usize {
        (self.m - 1 + self.n - 1 + 4 * self.d) as usize
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    S,
    T,
}

impl Letter {
    pub fn flip(self) -> Self {
        match self {
            Letter::S => Letter::T,
            Letter::T => Letter::S,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::S => 's',
            Letter::T => 't',
        }
    }
}

/// A nonempty word over `{s, t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letterwise swap of `s` and `t`.
    pub fn negate(&self) -> Word {
        Word(self.0.iter().map(|l| l.flip()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let letters = s
            .chars()
            .map(|c| match c {
                's' => Ok(Letter::S),
                't' => Ok(Letter::T),
                other => Err(WordError::UnknownLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// Mixed representatives: `s^j t`, `s^j t s`, `t^j s`, `t^j s t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    SjT,
    SjTS,
    TjS,
    TjST,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NormalForm {
    SPow(u32),
    TPow(u32),
    Mixed(Shape, u32),
}

impl NormalForm {
    pub fn len(&self) -> u32 {
        match *self {
            NormalForm::SPow(a) | NormalForm::TPow(a) => a,
            NormalForm::Mixed(Shape::SjT | Shape::TjS, j) => j + 1,
            NormalForm::Mixed(_, j) => j + 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Letter {
        match self {
            NormalForm::SPow(_) | NormalForm::Mixed(Shape::SjT | Shape::SjTS, _) => Letter::S,
            _ => Letter::T,
        }
    }

    pub fn last(&self) -> Letter {
        match self {
            NormalForm::SPow(_) | NormalForm::Mixed(Shape::SjTS | Shape::TjS, _) => Letter::S,
            _ => Letter::T,
        }
    }

    pub fn word(&self) -> Word {
        use Letter::{S, T};
        let rep = |l: Letter, k: u32| std::iter::repeat_n(l, k as usize);
        let letters: Vec<Letter> = match *self {
            NormalForm::SPow(a) => rep(S, a).collect(),
            NormalForm::TPow(a) => rep(T, a).collect(),
            NormalForm::Mixed(Shape::SjT, j) => rep(S, j).chain([T]).collect(),
            NormalForm::Mixed(Shape::SjTS, j) => rep(S, j).chain([T, S]).collect(),
            NormalForm::Mixed(Shape::TjS, j) => rep(T, j).chain([S]).collect(),
            NormalForm::Mixed(Shape::TjST, j) => rep(T, j).chain([S, T]).collect(),
        };
        Word(letters)
    }

    pub fn belongs_to(&self, p: &Params) -> bool {
        match *self {
            NormalForm::SPow(a) => (1..p.m).contains(&a),
            NormalForm::TPow(a) => (1..p.n).contains(&a),
            NormalForm::Mixed(_, j) => (1..=p.d).contains(&j),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// `r_k(x) = 1 + ((x - 1) mod k)`, the residue in `1..=k`.
fn residue(x: u32, k: u32) -> u32 {
    1 + (x as i64 - 1).rem_euclid(k as i64) as u32
}

/// Canonical representatives: s-powers, t-powers, then mixed forms by
/// exponent and shape.
pub fn wset(p: &Params) -> Vec<NormalForm> {
    let mut out: Vec<NormalForm> = (1..p.m).map(NormalForm::SPow).collect();
    out.extend((1..p.n).map(NormalForm::TPow));
    for j in 1..=p.d {
        for shape in [Shape::SjT, Shape::SjTS, Shape::TjS, Shape::TjST] {
            out.push(NormalForm::Mixed(shape, j));
        }
    }
    out
}

pub fn multiply(a: NormalForm, b: NormalForm, p: &Params) -> Result<NormalForm, WordError> {
    if !a.belongs_to(p) || !b.belongs_to(p) {
        return Err(WordError::ParamMismatch);
    }
    Ok(product(a, b, p))
}

fn product(a: NormalForm, b: NormalForm, p: &Params) -> NormalForm {
    let lambda = a.len() + b.len();
    match (a, b) {
        (NormalForm::SPow(_), NormalForm::SPow(_)) => NormalForm::SPow(residue(lambda, p.m - 1)),
        (NormalForm::TPow(_), NormalForm::TPow(_)) => NormalForm::TPow(residue(lambda, p.n - 1)),
        _ => {
            let u = residue(lambda - 2, p.d);
            let v = residue(lambda - 1, p.d);
            match (a.first(), b.last()) {
                (Letter::T, Letter::T) => NormalForm::Mixed(Shape::TjST, u),
                (Letter::T, Letter::S) => NormalForm::Mixed(Shape::TjS, v),
                (Letter::S, Letter::T) => NormalForm::Mixed(Shape::SjT, v),
                (Letter::S, Letter::S) => NormalForm::Mixed(Shape::SjTS, u),
            }
        }
    }
}

fn letter_form(l: Letter) -> NormalForm {
    match l {
        Letter::S => NormalForm::SPow(1),
        Letter::T => NormalForm::TPow(1),
    }
}

/// Left fold of the letters through the product.
pub fn normal_form(w: &Word, p: &Params) -> NormalForm {
    let mut letters = w.letters().iter();
    let first = letter_form(*letters.next().expect("words are nonempty"));
    letters.fold(first, |acc, &l| product(acc, letter_form(l), p))
}

pub fn parse_normal_form(s: &str, p: &Params) -> Result<NormalForm, WordError> {
    let w: Word = s.parse()?;
    let nf = normal_form(&w, p);
    if nf.word() != w {
        return Err(WordError::NotNormal(s.to_string()));
    }
    Ok(nf)
}

/// Least exponent `k > 1` with `(st)^k = st`, by the closed formula.
pub fn idempotent_exponent(p: &Params) -> u32 {
    if p.d.is_multiple_of(2) {
        p.d / 2 + 1
    } else {
        p.d + 1
    }
}

/// Least `k > 1` with `(st)^k = st`, found by multiplying out.
pub fn idempotent_exponent_by_search(p: &Params) -> u32 {
    let st = normal_form(&"st".parse().unwrap(), p);
    let mut acc = st;
    for k in 2.. {
        acc = product(acc, st, p);
        if acc == st {
            return k;
        }
    }
    unreachable!()
}

/// Multiplication table and general order over the canonical representatives.
#[derive(Clone, Debug)]
pub struct WordAlgebra {
    pub params: Params,
    pub forms: Vec<NormalForm>,
    pub table: Vec<Vec<usize>>,
    pub order: Vec<Vec<bool>>,
}

impl WordAlgebra {
    pub fn new(p: Params) -> Self {
        let forms = wset(&p);
        let idx = |f: NormalForm| forms.iter().position(|&g| g == f).expect("closed under product");
        let table: Vec<Vec<usize>> =
            forms.iter().map(|&a| forms.iter().map(|&b| idx(product(a, b, &p))).collect()).collect();
        let bound = 2 * p.l + 4;
        let order = order_relation(&p, &forms, bound);
        let check = order_relation(&p, &forms, bound + p.d);
        assert_eq!(order, check, "order generators did not stabilize for {p}");
        WordAlgebra { params: p, forms, table, order }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn index(&self, f: NormalForm) -> Option<usize> {
        self.forms.iter().position(|&g| g == f)
    }

    pub fn index_of_word(&self, w: &Word) -> usize {
        self.index(normal_form(w, &self.params)).unwrap()
    }

    pub fn leq(&self, a: NormalForm, b: NormalForm) -> Result<bool, WordError> {
        match (self.index(a), self.index(b)) {
            (Some(x), Some(y)) => Ok(self.order[x][y]),
            _ => Err(WordError::ParamMismatch),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.forms.iter().map(|f| f.to_string()).collect()
    }

    pub fn hasse(&self) -> DiagramCatalog {
        let edges = crate::monoid::hasse_edges(&self.order).expect("partial order");
        DiagramCatalog::solid(self.labels(), edges)
    }
}

/// Generating inequalities for one `k`, as pairs of words.
fn diamond(k: u32) -> Vec<(String, String)> {
    let s = |e: u32| "s".repeat(e as usize);
    let t = |e: u32| "t".repeat(e as usize);
    match k {
        1 => vec![("s".into(), "t".into())],
        2 => vec![
            ("ss".into(), "st".into()),
            ("ss".into(), "ts".into()),
            ("st".into(), "tt".into()),
            ("ts".into(), "tt".into()),
        ],
        _ => {
            let sk = s(k);
            let stss = format!("{}ts", s(k - 2));
            let sst = format!("{}t", s(k - 1));
            let tsts = format!("{}st", t(k - 2));
            let tk = t(k);
            let tts = format!("{}s", t(k - 1));
            vec![
                (sk, stss.clone()),
                (stss.clone(), sst.clone()),
                (sst, tsts.clone()),
                (tsts.clone(), tk),
                (stss, tts.clone()),
                (tts, tsts),
            ]
        }
    }
}

fn order_relation(p: &Params, forms: &[NormalForm], bound: u32) -> Vec<Vec<bool>> {
    let k = forms.len();
    let idx = |w: &str| {
        let nf = normal_form(&w.parse().unwrap(), p);
        forms.iter().position(|&g| g == nf).unwrap()
    };
    let mut rel = vec![vec![false; k]; k];
    for (x, row) in rel.iter_mut().enumerate() {
        row[x] = true;
    }
    for j in 1..=bound {
        for (lo, hi) in diamond(j) {
            rel[idx(&lo)][idx(&hi)] = true;
        }
    }
    for z in 0..k {
        for x in 0..k {
            if rel[x][z] {
                for y in 0..k {
                    if rel[z][y] {
                        rel[x][y] = true;
                    }
                }
            }
        }
    }
    rel
}

/// Standalone order test; builds the order once per call.
pub fn leq(a: NormalForm, b: NormalForm, p: &Params) -> Result<bool, WordError> {
    WordAlgebra::new(*p).leq(a, b)
}

pub fn hasse(p: &Params) -> DiagramCatalog {
    WordAlgebra::new(*p).hasse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str, p: &Params) -> NormalForm {
        normal_form(&s.parse().unwrap(), p)
    }

    fn params(m: u32, n: u32) -> Params {
        Params::new(m, n).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(1, 3).is_err());
        assert!(Params::new(3, 2).is_err());
        let p = params(3, 5);
        assert_eq!((p.gcd(), p.lcm()), (2, 4));
        assert_eq!(p.gcd() * p.lcm(), (p.m() - 1) * (p.n() - 1));
    }

    #[test]
    fn wset_examples() {
        assert_eq!(wset(&params(3, 3)).len(), 12);
        let w22: Vec<String> = wset(&params(2, 2)).iter().map(|f| f.to_string()).collect();
        assert_eq!(w22, vec!["s", "t", "st", "sts", "ts", "tst"]);
        assert_eq!(wset(&params(2, 3)).len(), 7);
        assert_eq!(wset(&params(3, 5)).len(), 14);
    }

    #[test]
    fn multiply_examples() {
        let p22 = params(2, 2);
        let t = nf("t", &p22);
        let s = nf("s", &p22);
        assert_eq!(multiply(t, s, &p22).unwrap().to_string(), "ts");
        let p = params(3, 3);
        assert_eq!(multiply(nf("ss", &p), nf("st", &p), &p).unwrap().to_string(), "st");
        assert_eq!(multiply(nf("st", &p), nf("ts", &p), &p).unwrap().to_string(), "ssts");
        assert_eq!(multiply(NormalForm::SPow(2), NormalForm::SPow(1), &p22), Err(WordError::ParamMismatch));
    }

    #[test]
    fn normal_form_examples() {
        let p = params(3, 3);
        assert_eq!(nf("s", &p).to_string(), "s");
        assert_eq!(nf("tss", &p).to_string(), "tts");
        assert_eq!(nf("stst", &p).to_string(), "st");
        assert!("".parse::<Word>().is_err());
        for f in wset(&p) {
            assert_eq!(normal_form(&f.word(), &p), f);
        }
        assert!(parse_normal_form("sss", &p).is_err());
    }

    #[test]
    fn order_examples() {
        for (m, n) in [(2, 2), (2, 3), (3, 3), (3, 5)] {
            let p = params(m, n);
            let alg = WordAlgebra::new(p);
            assert!(alg.leq(nf("s", &p), nf("t", &p)).unwrap());
            assert!(!alg.leq(nf("t", &p), nf("s", &p)).unwrap());
        }
        let p = params(3, 3);
        assert!(leq(nf("ss", &p), nf("tt", &p), &p).unwrap());
        assert!(!leq(nf("s", &p), nf("ss", &p), &p).unwrap());
    }

    #[test]
    fn exponent_examples() {
        for ((m, n), k) in [((2, 2), 2), ((3, 3), 2), ((4, 4), 4), ((5, 5), 3)] {
            let p = params(m, n);
            assert_eq!(idempotent_exponent(&p), k);
            assert_eq!(idempotent_exponent_by_search(&p), k);
        }
    }

    #[test]
    fn negation() {
        let w: Word = "sts".parse().unwrap();
        assert_eq!(w.negate().to_string(), "tst");
        assert_eq!(w.negate().negate(), w);
    }
}
