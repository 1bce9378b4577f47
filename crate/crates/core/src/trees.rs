//! Bracket arrangements of multi-commutators as full binary trees.
//!
//! A tree over slots `0..=m` encodes one way of inserting binary
//! commutator brackets into the ordered list of slot groups; the
//! left-nested comb `[[..[0,1],..],m]` is the standard form. There are
//! Catalan(m) arrangements.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("slot count m must be 1..=4, got {0}")]
    SlotCountOutOfRange(usize),
    #[error("tree parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("leaves must read 0..=m in order, got {0:?}")]
    BadLeafOrder(Vec<usize>),
}

/// A full binary tree with leaves labelled by slot indices in increasing
/// left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    /// The standard form `[[..[0,1],..],m]`.
    pub fn standard(m: usize) -> BracketTree {
        let mut tree = BracketTree::Leaf(0);
        for slot in 1..=m {
            tree = BracketTree::Node(Box::new(tree), Box::new(BracketTree::Leaf(slot)));
        }
        tree
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            BracketTree::Leaf(s) => out.push(*s),
            BracketTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Number of slots minus one (the `m` in `0..=m`).
    pub fn max_slot(&self) -> usize {
        self.leaves().len() - 1
    }

    /// Nested-list notation, e.g. `[[0,1],2]`.
    pub fn render(&self) -> String {
        match self {
            BracketTree::Leaf(s) => s.to_string(),
            BracketTree::Node(l, r) => format!("[{},{}]", l.render(), r.render()),
        }
    }

    /// Parses nested-list notation and validates the leaf order.
    pub fn parse(text: &str) -> Result<BracketTree, TreeError> {
        let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = parse_tree(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(TreeError::Parse {
                position: pos,
                message: "trailing input".into(),
            });
        }
        let leaves = tree.leaves();
        if leaves.iter().enumerate().any(|(k, &s)| k != s) {
            return Err(TreeError::BadLeafOrder(leaves));
        }
        Ok(tree)
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_tree(chars: &[char], pos: &mut usize) -> Result<BracketTree, TreeError> {
    let err = |pos: usize, message: &str| TreeError::Parse {
        position: pos,
        message: message.into(),
    };
    match chars.get(*pos) {
        Some('[') => {
            *pos += 1;
            let left = parse_tree(chars, pos)?;
            if chars.get(*pos) != Some(&',') {
                return Err(err(*pos, "expected ','"));
            }
            *pos += 1;
            let right = parse_tree(chars, pos)?;
            if chars.get(*pos) != Some(&']') {
                return Err(err(*pos, "expected ']'"));
            }
            *pos += 1;
            Ok(BracketTree::Node(Box::new(left), Box::new(right)))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let text: String = chars[start..*pos].iter().collect();
            Ok(BracketTree::Leaf(text.parse().unwrap()))
        }
        _ => Err(err(*pos, "expected '[' or a slot index")),
    }
}

/// All full binary trees over leaves `0..=m` in deterministic order
/// (split position ascending, recursively). Catalan(m) many.
pub fn enumerate_bracketings(m: usize) -> Result<Vec<BracketTree>, TreeError> {
    if !(1..=4).contains(&m) {
        return Err(TreeError::SlotCountOutOfRange(m));
    }
    Ok(build_range(0, m))
}

fn build_range(lo: usize, hi: usize) -> Vec<BracketTree> {
    if lo == hi {
        return vec![BracketTree::Leaf(lo)];
    }
    let mut out = Vec::new();
    for split in lo..hi {
        for left in build_range(lo, split) {
            for right in build_range(split + 1, hi) {
                out.push(BracketTree::Node(
                    Box::new(left.clone()),
                    Box::new(right.clone()),
                ));
            }
        }
    }
    out
}
