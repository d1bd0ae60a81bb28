//! Composition closure of named generator maps.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{PosetError, WordError};
use crate::poset::{EndoMap, Poset};

#[derive(Clone, Debug)]
pub struct OperatorMonoid {
    pub poset: Poset,
    pub alphabet: Vec<char>,
    pub generators: Vec<EndoMap>,
    pub elements: Vec<EndoMap>,
    /// Length-lex-least generator word for each element ("" is the identity).
    pub witness: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub order: Vec<Vec<bool>>,
}

/// Breadth-first closure by word length. A word `a1 a2 … ak` acts as
/// `a1(a2(…ak(x)))`; ties within a length go by the alphabet order given.
pub fn generate_monoid(
    p: &Poset,
    generators: &[(char, EndoMap)],
    include_identity: bool,
) -> Result<OperatorMonoid, PosetError> {
    for (_, g) in generators {
        if g.size() != p.size() {
            return Err(PosetError::SizeMismatch(g.size(), p.size()));
        }
    }
    let n = p.size();
    let alphabet: Vec<char> = generators.iter().map(|(c, _)| *c).collect();
    let gens: Vec<EndoMap> = generators.iter().map(|(_, g)| g.clone()).collect();
    let mut index: HashMap<EndoMap, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut witness = Vec::new();
    let mut frontier = Vec::new();
    if include_identity {
        let id = EndoMap::identity(n);
        index.insert(id.clone(), 0);
        elements.push(id);
        witness.push(String::new());
        frontier.push(0);
    } else {
        for (a, g) in alphabet.iter().zip(&gens) {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                frontier.push(elements.len());
                elements.push(g.clone());
                witness.push(a.to_string());
            }
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (a, g) in alphabet.iter().zip(&gens) {
            for &e in &frontier {
                let m = g.after(&elements[e]);
                if !index.contains_key(&m) {
                    let w = format!("{a}{}", witness[e]);
                    index.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(m);
                    witness.push(w);
                }
            }
        }
        frontier = next;
    }
    let k = elements.len();
    let table = (0..k)
        .map(|x| (0..k).map(|y| index[&elements[x].after(&elements[y])]).collect())
        .collect();
    let order = (0..k)
        .map(|x| (0..k).map(|y| elements[x].below_unchecked(&elements[y], p)).collect())
        .collect();
    Ok(OperatorMonoid { poset: p.clone(), alphabet, generators: gens, elements, witness, table, order })
}

impl OperatorMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The map a word induces; the empty word is the identity.
    pub fn eval_word(&self, word: &str) -> Result<EndoMap, WordError> {
        eval_word(&self.alphabet, &self.generators, self.poset.size(), word)
    }

    pub fn element_of(&self, word: &str) -> Result<Option<usize>, WordError> {
        let m = self.eval_word(word)?;
        Ok(self.elements.iter().position(|e| *e == m))
    }

    /// Words grouped by the maps they induce. Blocks keep input order and are
    /// sorted by their first member.
    pub fn element_partition(&self, words: &[&str]) -> Result<Vec<Vec<String>>, WordError> {
        let maps = words.iter().map(|w| self.eval_word(w)).collect::<Result<Vec<_>, _>>()?;
        Ok(group_by_map(words, &maps))
    }

    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        hasse_edges(&self.order).expect("pointwise order is a partial order")
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> =
            self.witness.iter().map(|w| if w.is_empty() { "id".to_string() } else { w.clone() }).collect();
        diagram_dot(&labels, &self.hasse_edges())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Element<'a> {
            witness: &'a str,
            img: &'a [usize],
        }
        let elements: Vec<Element> =
            self.elements.iter().zip(&self.witness).map(|(e, w)| Element { witness: w, img: &e.img }).collect();
        let edges: Vec<[usize; 2]> = self.hasse_edges().into_iter().map(|(a, b)| [a, b]).collect();
        serde_json::json!({ "elements": elements, "edges": edges })
    }
}

pub fn eval_word(alphabet: &[char], gens: &[EndoMap], n: usize, word: &str) -> Result<EndoMap, WordError> {
    let mut acc = EndoMap::identity(n);
    for ch in word.chars().rev() {
        let k = alphabet.iter().position(|&a| a == ch).ok_or(WordError::UnknownLetter(ch))?;
        acc = gens[k].after(&acc);
    }
    Ok(acc)
}

pub(crate) fn group_by_map(words: &[&str], maps: &[EndoMap]) -> Vec<Vec<String>> {
    let mut blocks: Vec<(EndoMap, Vec<String>)> = Vec::new();
    for (w, m) in words.iter().zip(maps) {
        match blocks.iter_mut().find(|(k, _)| k == m) {
            Some((_, b)) => b.push(w.to_string()),
            None => blocks.push((m.clone(), vec![w.to_string()])),
        }
    }
    blocks.into_iter().map(|(_, b)| b).collect()
}

/// Covering pairs of a partial order given as a boolean matrix.
pub fn hasse_edges(order: &[Vec<bool>]) -> Result<Vec<(usize, usize)>, PosetError> {
    let k = order.len();
    if order.iter().any(|r| r.len() != k) {
        return Err(PosetError::NotAPartialOrder);
    }
    for x in 0..k {
        if !order[x][x] {
            return Err(PosetError::NotAPartialOrder);
        }
        for y in 0..k {
            if x != y && order[x][y] && order[y][x] {
                return Err(PosetError::NotAPartialOrder);
            }
            for z in 0..k {
                if order[x][y] && order[y][z] && !order[x][z] {
                    return Err(PosetError::NotAPartialOrder);
                }
            }
        }
    }
    let lt = |a: usize, b: usize| a != b && order[a][b];
    let mut out = Vec::new();
    for x in 0..k {
        for y in 0..k {
            if lt(x, y) && !(0..k).any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Graphviz source for a diagram drawn bottom-to-top.
pub fn diagram_dot(labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, l) in labels.iter().enumerate() {
        s.push_str(&format!("  n{i} [label=\"{l}\"];\n"));
    }
    for (a, b) in edges {
        s.push_str(&format!("  n{a} -> n{b} [arrowhead=none];\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_generators() {
        let p = Poset::chain(3);
        let id = EndoMap::identity(3);
        let m = generate_monoid(&p, &[('c', id.clone()), ('i', id)], true).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.witness[0], "");
    }

    #[test]
    fn constants_on_a_chain() {
        let p = Poset::chain(2);
        let c = EndoMap::constant(2, 1);
        let i = EndoMap::constant(2, 0);
        let m = generate_monoid(&p, &[('i', i), ('c', c)], true).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.witness, vec!["", "i", "c"]);
        assert_eq!(m.hasse_edges().len(), 2);
    }

    #[test]
    fn idempotent_singleton_without_identity() {
        let p = Poset::chain(3);
        let f = EndoMap::new(vec![1, 1, 2]).unwrap();
        let m = generate_monoid(&p, &[('s', f.clone()), ('t', f)], false).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.witness, vec!["s"]);
    }

    #[test]
    fn witnesses_reproduce_elements() {
        let p = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let a = EndoMap::new(vec![0, 1, 1, 3]).unwrap();
        let b = EndoMap::new(vec![0, 2, 2, 3]).unwrap();
        let m = generate_monoid(&p, &[('a', a), ('b', b)], false).unwrap();
        for (e, w) in m.elements.iter().zip(&m.witness) {
            assert_eq!(&m.eval_word(w).unwrap(), e);
        }
        for x in 0..m.len() {
            for y in 0..m.len() {
                assert_eq!(m.elements[m.table[x][y]], m.elements[x].after(&m.elements[y]));
            }
        }
    }

    #[test]
    fn partition_examples() {
        let p = Poset::chain(3);
        let c = EndoMap::new(vec![1, 1, 2]).unwrap();
        let m = generate_monoid(&p, &[('c', c)], true).unwrap();
        assert_eq!(m.element_partition(&["c", "cc"]).unwrap(), vec![vec!["c", "cc"]]);
        assert!(matches!(m.element_partition(&["x"]), Err(WordError::UnknownLetter('x'))));
        let one = Poset::antichain(1);
        let id = EndoMap::identity(1);
        let m1 = generate_monoid(&one, &[('c', id.clone()), ('i', id)], true).unwrap();
        assert_eq!(m1.element_partition(&["", "c", "ic", "cic"]).unwrap().len(), 1);
    }

    #[test]
    fn hasse_examples() {
        let chain = |k: usize| -> Vec<Vec<bool>> { (0..k).map(|x| (0..k).map(|y| x <= y).collect()).collect() };
        assert_eq!(hasse_edges(&chain(2)).unwrap(), vec![(0, 1)]);
        assert_eq!(hasse_edges(&chain(3)).unwrap(), vec![(0, 1), (1, 2)]);
        let diamond = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(hasse_edges(&diamond.relation()).unwrap().len(), 4);
        let bad = vec![vec![true, true], vec![true, true]];
        assert!(hasse_edges(&bad).is_err());
    }
}
