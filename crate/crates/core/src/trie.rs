//! The trie of canonical subwords of a word and its block structure.
//!
//! The trie is exponential in the word length and only serves as a
//! structural cross-check of the counting routines in [`crate::words`];
//! construction refuses words longer than a size guard.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::words::{Base, Word};

/// Default bound on the word length accepted by [`build_trie`].
pub const DEFAULT_TRIE_LIMIT: usize = 20;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    parent: u32,
    digit: u8,
    depth: u32,
    /// Length of the shortest prefix of the word containing the label.
    end: u32,
    first_child: u32,
    child_count: u32,
}

/// Trie of the subwords of `w` restricted to `L_b`: the root is ε, its
/// children are the nonzero digits of `w`, and below them every subword
/// extension by a single digit. Nodes are stored in breadth-first order,
/// so the children of a node are contiguous and sorted by digit.
#[derive(Clone, Debug)]
pub struct Trie {
    word: Word,
    nodes: Vec<Node>,
    levels: Vec<usize>,
}

pub fn build_trie(word: &Word) -> Result<Trie> {
    build_trie_with_limit(word, DEFAULT_TRIE_LIMIT)
}

pub fn build_trie_with_limit(word: &Word, limit: usize) -> Result<Trie> {
    if word.len() > limit {
        return Err(Error::TrieTooLarge {
            len: word.len(),
            limit,
        });
    }
    let mut builder = TrieBuilder::default();
    builder.fill(word.base(), word.digits());
    let mut levels = Vec::new();
    for node in &builder.nodes {
        let depth = node.depth as usize;
        if levels.len() <= depth {
            levels.push(0);
        }
        levels[depth] += 1;
    }
    Ok(Trie {
        word: word.clone(),
        nodes: builder.nodes,
        levels,
    })
}

/// Reusable buffers for building many tries in a row.
#[derive(Clone, Debug, Default)]
pub struct TrieBuilder {
    next: Vec<u32>,
    nodes: Vec<Node>,
    stack: Vec<u32>,
}

impl TrieBuilder {
    /// Node count of the trie of `digits`, visiting every node once but
    /// keeping only the current frontier.
    pub fn node_count(&mut self, base: Base, digits: &[u8]) -> usize {
        let b = base.get() as usize;
        self.fill_next(b, digits);
        // children ending at the last position are leaves: counted, not pushed
        let last = digits.len() as u32;
        let mut count = 1;
        self.stack.clear();
        for &at in &self.next[1..b] {
            if at != NONE {
                count += 1;
                if at + 1 < last {
                    self.stack.push(at + 1);
                }
            }
        }
        while let Some(end) = self.stack.pop() {
            for &at in &self.next[end as usize * b..][..b] {
                if at != NONE {
                    count += 1;
                    if at + 1 < last {
                        self.stack.push(at + 1);
                    }
                }
            }
        }
        count
    }

    /// `next[p * b + a]`: smallest index `>= p` holding `a`.
    fn fill_next(&mut self, b: usize, digits: &[u8]) {
        let n = digits.len();
        self.next.clear();
        self.next.resize((n + 1) * b, NONE);
        for p in (0..n).rev() {
            let (head, tail) = self.next.split_at_mut((p + 1) * b);
            head[p * b..].copy_from_slice(&tail[..b]);
            head[p * b + digits[p] as usize] = p as u32;
        }
    }

    /// Breadth-first construction. A node whose label first embeds in
    /// `digits[..end]` gets the child `a` at `1 + next occurrence of a`.
    fn fill(&mut self, base: Base, digits: &[u8]) {
        let b = base.get() as usize;
        self.fill_next(b, digits);

        self.nodes.clear();
        self.nodes.push(Node {
            parent: NONE,
            digit: 0,
            depth: 0,
            end: 0,
            first_child: NONE,
            child_count: 0,
        });
        let mut cursor = 0;
        while cursor < self.nodes.len() {
            let node = self.nodes[cursor];
            let first = self.nodes.len() as u32;
            let lowest = usize::from(cursor == 0);
            let row = &self.next[node.end as usize * b..][..b];
            for (a, &at) in row.iter().enumerate().skip(lowest) {
                if at != NONE {
                    self.nodes.push(Node {
                        parent: cursor as u32,
                        digit: a as u8,
                        depth: node.depth + 1,
                        end: at + 1,
                        first_child: NONE,
                        child_count: 0,
                    });
                }
            }
            let count = self.nodes.len() as u32 - first;
            if count > 0 {
                self.nodes[cursor].first_child = first;
                self.nodes[cursor].child_count = count;
            }
            cursor += 1;
        }
    }
}

impl Trie {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn base(&self) -> Base {
        self.word.base()
    }

    /// Number of nodes, root included; equals `S_b` of the word.
    pub fn node_count(&self) -> BigUint {
        BigUint::from(self.nodes.len())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry `l` is the number of distinct canonical subwords of length `l`.
    pub fn level_counts(&self) -> Vec<BigUint> {
        self.levels.iter().map(|&c| BigUint::from(c)).collect()
    }

    pub fn children(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let node = &self.nodes[id.index()];
        let start = if node.child_count == 0 { 0 } else { node.first_child };
        (start..start + node.child_count).map(NodeId)
    }

    pub fn digit(&self, id: NodeId) -> Option<u8> {
        (id != NodeId::ROOT).then(|| self.nodes[id.index()].digit)
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        let p = self.nodes[id.index()].parent;
        (p != NONE).then_some(NodeId(p))
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.nodes[id.index()].depth as usize
    }

    pub fn child(&self, id: NodeId, digit: u8) -> Option<NodeId> {
        self.children(id)
            .find(|&c| self.nodes[c.index()].digit == digit)
    }

    /// Walks from the root along `label`.
    pub fn find(&self, label: &[u8]) -> Option<NodeId> {
        label
            .iter()
            .try_fold(NodeId::ROOT, |node, &d| self.child(node, d))
    }

    pub fn label(&self, id: NodeId) -> Word {
        let mut digits = Vec::with_capacity(self.depth(id));
        let mut cur = id;
        while let Some(parent) = self.parent(cur) {
            digits.push(self.nodes[cur.index()].digit);
            cur = parent;
        }
        digits.reverse();
        Word::new(self.base(), digits).expect("trie labels use the word's digits")
    }

    /// Graphviz rendering, one node per subword with digit-labelled edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"T({})\" {{", self.word);
        let _ = writeln!(out, "  node [shape=circle, fontsize=10];");
        for (i, _) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.label(NodeId(i as u32)));
        }
        for (i, node) in self.nodes.iter().enumerate().skip(1) {
            let _ = writeln!(out, "  n{} -> n{i} [label=\"{}\"];", node.parent, node.digit);
        }
        out.push_str("}\n");
        out
    }

    /// Interned shape of every subtree: two nodes get the same id exactly
    /// when their subtrees are equal after dropping the root's own label.
    fn shape_ids(&self) -> Vec<u32> {
        let mut ids = vec![0u32; self.nodes.len()];
        let mut interned: HashMap<Vec<(u8, u32)>, u32> = HashMap::new();
        for i in (0..self.nodes.len()).rev() {
            let key: Vec<(u8, u32)> = self
                .children(NodeId(i as u32))
                .map(|c| (self.nodes[c.index()].digit, ids[c.index()]))
                .collect();
            let fresh = interned.len() as u32;
            ids[i] = *interned.entry(key).or_insert(fresh);
        }
        ids
    }
}

/// Factorization `w = a_1^{n_1} ... a_M^{n_M}` into maximal blocks of a
/// repeated letter, with the tables `Alph(l)` and `j(a, l)`.
///
/// Block indices are 1-based in the accessors to match the usual notation:
/// `block(k)` for `k` in `1..=M`, `alph(l)` and `first_index(a, l)` for `l`
/// in `0..M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    word: Word,
    blocks: Vec<(u8, usize)>,
    alph: Vec<BTreeSet<u8>>,
    first_index: Vec<HashMap<u8, usize>>,
}

pub fn block_factorization(word: &Word) -> Result<BlockDecomposition> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !word.is_canonical() {
        return Err(Error::NotCanonical(word.to_string()));
    }
    let mut blocks: Vec<(u8, usize)> = Vec::new();
    for &d in word.digits() {
        match blocks.last_mut() {
            Some((letter, count)) if *letter == d => *count += 1,
            _ => blocks.push((d, 1)),
        }
    }
    let m = blocks.len();
    let mut alph = vec![BTreeSet::new(); m];
    let mut first_index = vec![HashMap::new(); m];
    let mut seen = BTreeSet::new();
    let mut first: HashMap<u8, usize> = HashMap::new();
    // l runs downwards so that block l+1 is the last one added
    for l in (0..m).rev() {
        let letter = blocks[l].0;
        seen.insert(letter);
        first.insert(letter, l + 1);
        alph[l] = seen.clone();
        first_index[l] = first.clone();
    }
    Ok(BlockDecomposition {
        word: word.clone(),
        blocks,
        alph,
        first_index,
    })
}

impl BlockDecomposition {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// `M`, the number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[(u8, usize)] {
        &self.blocks
    }

    /// `(a_k, n_k)` for `k` in `1..=M`.
    pub fn block(&self, k: usize) -> (u8, usize) {
        self.blocks[k - 1]
    }

    /// Letters occurring in `a_{l+1} ... a_M`.
    pub fn alph(&self, l: usize) -> &BTreeSet<u8> {
        &self.alph[l]
    }

    /// `j(a, l)`: smallest `k` in `l+1..=M` with `a_k = a`.
    pub fn first_index(&self, a: u8, l: usize) -> Option<usize> {
        self.first_index[l].get(&a).copied()
    }

    /// Label of the root of `T_l`: `a_1^{n_1} ... a_l^{n_l} a_{l+1}`.
    pub fn subtree_root_label(&self, l: usize) -> Vec<u8> {
        let mut label = self.prefix_label(l, 0);
        label.push(self.blocks[l].0);
        label
    }

    /// `a_1^{n_1} ... a_l^{n_l} a_{l+1}^i`.
    fn prefix_label(&self, l: usize, i: usize) -> Vec<u8> {
        let mut label = Vec::new();
        for &(a, count) in &self.blocks[..l] {
            label.extend(std::iter::repeat_n(a, count));
        }
        label.extend(std::iter::repeat_n(self.blocks[l].0, i));
        label
    }
}

/// Checks the block description of the trie:
///
/// 1. the root has one child per letter of `Alph(0) \ {0}`, and child `a`
///    roots a copy of `T_{j(a,0)-1}`;
/// 2. for `l < M`, `i < n_{l+1}`, `(l, i) != (0, 0)`, the node
///    `a_1^{n_1} ... a_l^{n_l} a_{l+1}^i` has one child per letter of
///    `Alph(l)`, and child `a != a_{l+1}` roots a copy of `T_{j(a,l)-1}`.
///
/// Copies are compared up to relabelling of the subtree root.
pub fn verify_structure(trie: &Trie, blocks: &BlockDecomposition) -> Result<bool> {
    if trie.word() != blocks.word() {
        return Err(Error::MismatchedInputs);
    }
    let shapes = trie.shape_ids();
    let m = blocks.block_count();
    let subtree_roots: Option<Vec<NodeId>> = (0..m)
        .map(|l| trie.find(&blocks.subtree_root_label(l)))
        .collect();
    let Some(subtree_roots) = subtree_roots else {
        return Ok(false);
    };
    let copy_of = |child: NodeId, a: u8, l: usize| -> bool {
        match blocks.first_index(a, l) {
            Some(j) => shapes[child.index()] == shapes[subtree_roots[j - 1].index()],
            None => false,
        }
    };
    let child_letters =
        |id: NodeId| -> Vec<u8> { trie.children(id).filter_map(|c| trie.digit(c)).collect() };

    let expected_root: Vec<u8> = blocks.alph(0).iter().copied().filter(|&a| a != 0).collect();
    if child_letters(NodeId::ROOT) != expected_root {
        return Ok(false);
    }
    for child in trie.children(NodeId::ROOT) {
        let a = trie.digit(child).expect("child has a digit");
        if !copy_of(child, a, 0) {
            return Ok(false);
        }
    }

    for l in 0..m {
        let (letter, count) = blocks.block(l + 1);
        for i in 0..count {
            if (l, i) == (0, 0) {
                continue;
            }
            let Some(node) = trie.find(&blocks.prefix_label(l, i)) else {
                return Ok(false);
            };
            let expected: Vec<u8> = blocks.alph(l).iter().copied().collect();
            if child_letters(node) != expected {
                return Ok(false);
            }
            for child in trie.children(node) {
                let a = trie.digit(child).expect("child has a digit");
                if a != letter && !copy_of(child, a, l) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::count_canonical_subwords;

    fn word(b: u64, s: &str) -> Word {
        Word::parse(Base::new(b).unwrap(), s).unwrap()
    }

    fn nat(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_tries() {
        let t = build_trie(&word(3, "121")).unwrap();
        assert_eq!(t.node_count(), nat(7));
        assert_eq!(t.level_counts(), vec![nat(1), nat(2), nat(3), nat(1)]);
        let mut labels: Vec<String> = (0..t.len())
            .map(|i| t.label(NodeId(i as u32)).to_string())
            .collect();
        labels.sort();
        assert_eq!(labels, ["1", "11", "12", "121", "2", "21", "ε"]);

        let e = build_trie(&Word::empty(Base::new(3).unwrap())).unwrap();
        assert_eq!(e.node_count(), nat(1));
        assert_eq!(e.level_counts(), vec![nat(1)]);

        assert_eq!(build_trie(&word(3, "120")).unwrap().node_count(), nat(7));
    }

    #[test]
    fn trie_matches_counting() {
        let w = word(3, "22000112");
        let t = build_trie(&w).unwrap();
        assert_eq!(t.node_count(), count_canonical_subwords(&w));
        let total: BigUint = t.level_counts().iter().sum();
        assert_eq!(total, t.node_count());
    }

    #[test]
    fn size_guard() {
        let w = word(2, &"1".repeat(21));
        assert_eq!(
            build_trie(&w).unwrap_err(),
            Error::TrieTooLarge { len: 21, limit: 20 }
        );
        assert!(build_trie_with_limit(&w, 21).is_ok());
    }

    #[test]
    fn builder_reuse() {
        let mut builder = TrieBuilder::default();
        assert_eq!(builder.node_count(Base::new(3).unwrap(), &[1, 2, 1]), 7);
        assert_eq!(builder.node_count(Base::new(3).unwrap(), &[]), 1);
        assert_eq!(builder.node_count(Base::new(2).unwrap(), &[1, 0, 1, 1]), 7);
    }

    #[test]
    fn factorization_example() {
        let d = block_factorization(&word(3, "22000112")).unwrap();
        assert_eq!(d.block_count(), 4);
        assert_eq!(d.blocks(), &[(2, 2), (0, 3), (1, 2), (2, 1)]);
        assert_eq!(d.alph(0), &BTreeSet::from([0, 1, 2]));
        assert_eq!(d.alph(2), &BTreeSet::from([1, 2]));
        assert_eq!(d.first_index(0, 0), Some(2));
        assert_eq!(d.first_index(1, 0), Some(3));
        assert_eq!(d.first_index(2, 0), Some(1));
        assert_eq!(d.first_index(2, 1), Some(4));
        assert_eq!(d.first_index(0, 2), None);

        let single = block_factorization(&word(2, "1")).unwrap();
        assert_eq!(single.blocks(), &[(1, 1)]);
    }

    #[test]
    fn factorization_rejects_bad_words() {
        assert_eq!(
            block_factorization(&Word::empty(Base::new(2).unwrap())),
            Err(Error::EmptyWord)
        );
        assert!(matches!(
            block_factorization(&word(3, "012")),
            Err(Error::NotCanonical(_))
        ));
    }

    #[test]
    fn structure_holds_on_examples() {
        for (b, s) in [(3, "22000112"), (3, "121"), (5, "4"), (4, "1230321")] {
            let w = word(b, s);
            let t = build_trie(&w).unwrap();
            let d = block_factorization(&w).unwrap();
            assert!(verify_structure(&t, &d).unwrap(), "{s}");
        }
        let t = build_trie(&word(2, "1")).unwrap();
        assert_eq!(t.children(NodeId::ROOT).count(), 1);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn structure_rejects_mismatch() {
        let t = build_trie(&word(3, "121")).unwrap();
        let d = block_factorization(&word(3, "122")).unwrap();
        assert_eq!(verify_structure(&t, &d), Err(Error::MismatchedInputs));
    }

    #[test]
    fn shape_ids_distinguish_labels() {
        // subtrees below "1" in T(10) and "1" in T(11) differ only in the edge label
        let t = build_trie(&word(3, "1021")).unwrap();
        let ids = t.shape_ids();
        let a = t.find(&[1, 0]).unwrap();
        let c = t.find(&[2]).unwrap();
        // "10" continues with {2,1,21}; "2" continues with {1}
        assert_ne!(ids[a.index()], ids[c.index()]);
        let x = t.find(&[1, 0, 2]).unwrap();
        assert_eq!(ids[x.index()], ids[c.index()]);
    }

    #[test]
    fn dot_export() {
        let dot = build_trie(&word(3, "12")).unwrap().to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("n0 -> n1 [label=\"1\"]"));
        assert_eq!(dot.matches("->").count(), 3);
    }
}
