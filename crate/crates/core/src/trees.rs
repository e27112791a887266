//! Exhaustive ternary trees, used as the brute-force ground truth for the
//! closed-form counts.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::combinatorics::{row_len, Triangle};
use crate::error::{Error, Result};

/// Largest `nmax` accepted by [`triangle_oracle`] unless overridden.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Node {
    pub left: Option<Arc<Node>>,
    pub middle: Option<Arc<Node>>,
    pub right: Option<Arc<Node>>,
}

impl Node {
    pub fn leaf() -> Self {
        Node::default()
    }

    pub fn with(left: Option<Node>, middle: Option<Node>, right: Option<Node>) -> Self {
        Node {
            left: left.map(Arc::new),
            middle: middle.map(Arc::new),
            right: right.map(Arc::new),
        }
    }

    fn slots(&self) -> [&Option<Arc<Node>>; 3] {
        [&self.left, &self.middle, &self.right]
    }

    fn nodes(&self) -> usize {
        1 + self.slots().iter().map(|s| s.as_ref().map_or(0, |c| c.nodes())).sum::<usize>()
    }

    fn middle_edges(&self) -> usize {
        usize::from(self.middle.is_some())
            + self.slots().iter().map(|s| s.as_ref().map_or(0, |c| c.middle_edges())).sum::<usize>()
    }

    fn serialize_into(&self, out: &mut String) {
        out.push('N');
        for slot in self.slots() {
            match slot {
                Some(c) => c.serialize_into(out),
                None => out.push('.'),
            }
        }
    }
}

/// A possibly empty ternary tree. Subtrees are shared, so cloning is cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TernaryTree {
    pub root: Option<Arc<Node>>,
}

impl TernaryTree {
    pub fn empty() -> Self {
        TernaryTree { root: None }
    }

    pub fn from_node(node: Node) -> Self {
        TernaryTree {
            root: Some(Arc::new(node)),
        }
    }

    pub fn nodes(&self) -> usize {
        self.root.as_ref().map_or(0, |r| r.nodes())
    }

    pub fn middle_edges(&self) -> usize {
        middle_edges(self)
    }

    /// Preorder serialization: `N` for a node followed by its left, middle
    /// and right slots, `.` for an empty slot. The empty tree is `.`.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        match &self.root {
            Some(r) => r.serialize_into(&mut s),
            None => s.push('.'),
        }
        s
    }

    /// Inverse of [`TernaryTree::serialize`]. Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut pos = 0;
        let root = parse_slot(&tokens, &mut pos, text.len())?;
        if let Some(&(at, c)) = tokens.get(pos) {
            return Err(Error::Parse {
                position: at,
                message: format!("unexpected trailing token '{c}'"),
            });
        }
        Ok(TernaryTree { root })
    }
}

fn parse_slot(tokens: &[(usize, char)], pos: &mut usize, end: usize) -> Result<Option<Arc<Node>>> {
    // Iterative to keep deep left chains off the call stack.
    enum Frame {
        Node(Vec<Option<Arc<Node>>>),
    }
    let mut stack: Vec<Frame> = Vec::new();
    loop {
        let &(at, c) = tokens.get(*pos).ok_or_else(|| Error::Parse {
            position: end,
            message: "unexpected end of input".into(),
        })?;
        *pos += 1;
        let mut done: Option<Option<Arc<Node>>> = match c {
            'N' => {
                stack.push(Frame::Node(Vec::with_capacity(3)));
                None
            }
            '.' => Some(None),
            other => {
                return Err(Error::Parse {
                    position: at,
                    message: format!("expected 'N' or '.', found '{other}'"),
                })
            }
        };
        while let Some(slot) = done.take() {
            match stack.last_mut() {
                None => return Ok(slot),
                Some(Frame::Node(children)) => {
                    children.push(slot);
                    if children.len() == 3 {
                        let Some(Frame::Node(mut ch)) = stack.pop() else { unreachable!() };
                        let right = ch.pop().unwrap();
                        let middle = ch.pop().unwrap();
                        let left = ch.pop().unwrap();
                        done = Some(Some(Arc::new(Node { left, middle, right })));
                    }
                }
            }
        }
    }
}

/// Number of occupied middle slots over all nodes.
pub fn middle_edges(tree: &TernaryTree) -> usize {
    tree.root.as_ref().map_or(0, |r| r.middle_edges())
}

/// All trees with `n` nodes: memoized subtree lists for sizes below `n`,
/// then a lazy product over compositions of the remaining `n - 1` nodes.
pub struct Enumeration {
    inner: Box<dyn Iterator<Item = TernaryTree>>,
}

impl Iterator for Enumeration {
    type Item = TernaryTree;

    fn next(&mut self) -> Option<TernaryTree> {
        self.inner.next()
    }
}

fn build_memo(upto: usize) -> Vec<Vec<Option<Arc<Node>>>> {
    let mut memo: Vec<Vec<Option<Arc<Node>>>> = vec![vec![None]];
    for m in 1..=upto {
        let level: Vec<Option<Arc<Node>>> = compositions(m - 1)
            .flat_map(|(a, b, c)| {
                let memo = &memo;
                memo[a].iter().flat_map(move |l| {
                    memo[b].iter().flat_map(move |mid| {
                        memo[c].iter().map(move |r| {
                            Some(Arc::new(Node {
                                left: l.clone(),
                                middle: mid.clone(),
                                right: r.clone(),
                            }))
                        })
                    })
                })
            })
            .collect();
        memo.push(level);
    }
    memo
}

fn compositions(total: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=total).flat_map(move |a| (0..=total - a).map(move |b| (a, b, total - a - b)))
}

/// Streams every ternary tree with exactly `n` nodes, each once.
pub fn enumerate(n: usize) -> Enumeration {
    if n == 0 {
        return Enumeration {
            inner: Box::new(std::iter::once(TernaryTree::empty())),
        };
    }
    let shared = Arc::new(build_memo(n - 1));
    let inner = compositions(n - 1).flat_map(move |(a, b, c)| {
        let m = Arc::clone(&shared);
        let (la, lb, lc) = (m[a].len(), m[b].len(), m[c].len());
        (0..la * lb * lc).map(move |idx| {
            let (i, rest) = (idx / (lb * lc), idx % (lb * lc));
            let (j, k) = (rest / lc, rest % lc);
            TernaryTree::from_node(Node {
                left: m[a][i].clone(),
                middle: m[b][j].clone(),
                right: m[c][k].clone(),
            })
        })
    });
    Enumeration {
        inner: Box::new(inner),
    }
}

/// Brute-force `T(n, k)` by enumerating and counting, limited to
/// `nmax <= DEFAULT_EXHAUSTIVE_BOUND`.
pub fn triangle_oracle(nmax: usize) -> Result<Triangle> {
    triangle_oracle_bounded(nmax, DEFAULT_EXHAUSTIVE_BOUND)
}

pub fn triangle_oracle_bounded(nmax: usize, bound: usize) -> Result<Triangle> {
    if nmax > bound {
        return Err(Error::BoundExceeded { nmax, bound });
    }
    let rows = (0..=nmax)
        .map(|n| {
            let mut counts = vec![0u64; row_len(n)];
            for tree in enumerate(n) {
                let k = middle_edges(&tree);
                // any k outside the row would contradict k <= n - 1
                counts[k] += 1;
            }
            counts.into_iter().map(BigInt::from).collect()
        })
        .collect();
    Ok(Triangle::from_rows(rows))
}

/// Graphviz rendering; middle edges are drawn bold and labeled `middle`.
pub fn to_dot(tree: &TernaryTree) -> String {
    let mut out = String::from("digraph ternary {\n  node [shape=point, width=0.12];\n");
    if let Some(root) = &tree.root {
        let mut next_id = 0usize;
        let mut stack: Vec<(usize, &Node)> = vec![(0, root)];
        writeln!(out, "  n0;").unwrap();
        while let Some((id, node)) = stack.pop() {
            for (slot, label) in node.slots().into_iter().zip(["left", "middle", "right"]) {
                if let Some(child) = slot {
                    next_id += 1;
                    let cid = next_id;
                    writeln!(out, "  n{cid};").unwrap();
                    let attrs = if label == "middle" {
                        "label=\"middle\", style=bold, penwidth=3"
                    } else {
                        match label {
                            "left" => "label=\"left\"",
                            _ => "label=\"right\"",
                        }
                    };
                    writeln!(out, "  n{id} -> n{cid} [{attrs}];").unwrap();
                    stack.push((cid, child));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn left_chain(len: usize) -> Option<Node> {
    (0..len).fold(None, |acc, _| Some(Node::with(acc, None, None)))
}

/// The 17-node example with three middle edges: a root whose left spine
/// has three nodes and whose right spine runs four nodes deep, with
/// middle leaves hanging off the root, the first and the third right-spine
/// nodes, and two further left chains off the right spine.
pub fn figure_tree() -> TernaryTree {
    let leaf = || Some(Node::leaf());
    let d4 = Node::leaf();
    let d3 = Node::with(left_chain(2), leaf(), Some(d4));
    let d2 = Node::with(None, None, Some(d3));
    let d1 = Node::with(left_chain(4), leaf(), Some(d2));
    TernaryTree::from_node(Node::with(left_chain(3), leaf(), Some(d1)))
}
