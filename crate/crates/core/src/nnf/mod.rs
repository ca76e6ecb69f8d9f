//! Hash-consed NNF DAGs.

mod io;
mod lit;

use std::collections::HashMap;
use std::fmt;

pub use io::{read_nnf, write_nnf, write_nnf_string, ParseError, ParseErrorKind};
pub use lit::{Assignment, Clause, Lit, Term, Var, VarSet};

use crate::error::{Error, Result};

/// Dense id of a node inside one [`NnfStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn raw(self) -> u32 {
        self.0
    }

    fn from_index(i: usize) -> NodeId {
        NodeId(u32::try_from(i).expect("store exceeds u32 ids"))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    True,
    False,
    Lit(Lit),
    And(Box<[NodeId]>),
    Or(Box<[NodeId]>),
}

impl Node {
    pub fn children(&self) -> &[NodeId] {
        match self {
            Node::And(c) | Node::Or(c) => c,
            _ => &[],
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::True | Node::False | Node::Lit(_))
    }

    pub fn as_lit(&self) -> Option<Lit> {
        match self {
            Node::Lit(l) => Some(*l),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    And,
    Or,
}

/// Append-only store of NNF nodes with a unique table.
///
/// The constants are inserted up front, so `true_node` and `false_node`
/// never need a mutable borrow.
#[derive(Clone, Debug)]
pub struct NnfStore {
    nodes: Vec<Node>,
    vars: Vec<VarSet>,
    unique: HashMap<Node, NodeId>,
    num_vars: u32,
}

const TRUE: NodeId = NodeId(0);
const FALSE: NodeId = NodeId(1);

impl Default for NnfStore {
    fn default() -> Self {
        NnfStore::new(0)
    }
}

impl NnfStore {
    pub fn new(num_vars: u32) -> NnfStore {
        let mut store = NnfStore {
            nodes: Vec::new(),
            vars: Vec::new(),
            unique: HashMap::new(),
            num_vars,
        };
        store.intern(Node::True);
        store.intern(Node::False);
        store
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Grows the declared universe to at least `n` variables.
    pub fn ensure_vars(&mut self, n: u32) {
        self.num_vars = self.num_vars.max(n);
    }

    /// The declared universe `1..=num_vars`.
    pub fn universe(&self) -> VarSet {
        VarSet::first(self.num_vars)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.nodes.len()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn get(&self, id: NodeId) -> Result<&Node> {
        self.nodes.get(id.index()).ok_or(Error::InvalidReference(id.0))
    }

    pub fn true_node(&self) -> NodeId {
        TRUE
    }

    pub fn false_node(&self) -> NodeId {
        FALSE
    }

    pub fn constant(&self, value: bool) -> NodeId {
        if value {
            TRUE
        } else {
            FALSE
        }
    }

    pub fn is_true(&self, id: NodeId) -> bool {
        id == TRUE
    }

    pub fn is_false(&self, id: NodeId) -> bool {
        id == FALSE
    }

    /// Cached `Vars` of a node.
    pub fn vars(&self, id: NodeId) -> &VarSet {
        &self.vars[id.index()]
    }

    pub fn lit(&mut self, l: Lit) -> NodeId {
        self.ensure_vars(l.var().index());
        self.intern(Node::Lit(l))
    }

    /// Literal node from a DIMACS-signed integer.
    ///
    /// # Panics
    ///
    /// Panics on zero.
    pub fn lit_code(&mut self, code: i64) -> NodeId {
        let l = Lit::from_dimacs(code).expect("zero is not a literal");
        self.lit(l)
    }

    /// Canonical constructor with validation of child ids.
    pub fn build(&mut self, kind: Kind, children: &[NodeId]) -> Result<NodeId> {
        if let Some(bad) = children.iter().find(|c| !self.contains(**c)) {
            return Err(Error::InvalidReference(bad.0));
        }
        Ok(match kind {
            Kind::And => self.and(children.iter().copied()),
            Kind::Or => self.or(children.iter().copied()),
        })
    }

    /// # Panics
    ///
    /// Panics if a child id is not in the store.
    pub fn and<I: IntoIterator<Item = NodeId>>(&mut self, children: I) -> NodeId {
        let children = self.canonical_children(children);
        if children.is_empty() {
            return TRUE;
        }
        self.intern(Node::And(children))
    }

    /// # Panics
    ///
    /// Panics if a child id is not in the store.
    pub fn or<I: IntoIterator<Item = NodeId>>(&mut self, children: I) -> NodeId {
        let children = self.canonical_children(children);
        if children.is_empty() {
            return FALSE;
        }
        self.intern(Node::Or(children))
    }

    /// `(v ∧ hi) ∨ (¬v ∧ lo)`.
    pub fn decision(&mut self, v: Var, hi: NodeId, lo: NodeId) -> NodeId {
        let p = self.lit(v.pos());
        let n = self.lit(v.neg());
        let a = self.and([p, hi]);
        let b = self.and([n, lo]);
        self.or([a, b])
    }

    /// Conjunction of the literals of a term, one node per literal.
    pub fn term(&mut self, t: &Term) -> NodeId {
        let lits: Vec<NodeId> = t.lits().iter().map(|&l| self.lit(l)).collect();
        match lits.as_slice() {
            [single] => *single,
            _ => self.and(lits),
        }
    }

    /// Disjunction of the literals of a clause, one node per literal.
    pub fn clause(&mut self, c: &Clause) -> NodeId {
        let lits: Vec<NodeId> = c.lits().iter().map(|&l| self.lit(l)).collect();
        match lits.as_slice() {
            [single] => *single,
            _ => self.or(lits),
        }
    }

    fn canonical_children<I: IntoIterator<Item = NodeId>>(&self, children: I) -> Box<[NodeId]> {
        let mut v: Vec<NodeId> = children.into_iter().collect();
        for c in &v {
            assert!(self.contains(*c), "child {c} is not in the store");
        }
        v.sort_unstable();
        v.dedup();
        v.into_boxed_slice()
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.unique.get(&node) {
            return id;
        }
        let id = NodeId::from_index(self.nodes.len());
        let vars = match &node {
            Node::True | Node::False => VarSet::new(),
            Node::Lit(l) => std::iter::once(l.var()).collect(),
            Node::And(c) | Node::Or(c) => {
                let mut acc = VarSet::new();
                for &ch in c.iter() {
                    debug_assert!(ch < id);
                    acc = acc.union(&self.vars[ch.index()]);
                }
                acc
            }
        };
        self.nodes.push(node.clone());
        self.vars.push(vars);
        self.unique.insert(node, id);
        id
    }

    /// Nodes reachable from `root`, in ascending id order, so children come
    /// before parents.
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        let mut mark = vec![false; root.index() + 1];
        mark[root.index()] = true;
        for i in (0..=root.index()).rev() {
            if mark[i] {
                for c in self.nodes[i].children() {
                    mark[c.index()] = true;
                }
            }
        }
        mark.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| NodeId::from_index(i))
            .collect()
    }

    /// Number of DAG edges reachable from `root`.
    pub fn size(&self, root: NodeId) -> usize {
        self.reachable(root)
            .iter()
            .map(|&id| self.node(id).children().len())
            .sum()
    }

    /// Longest root-to-leaf path, in edges.
    pub fn height(&self, root: NodeId) -> usize {
        let order = self.reachable(root);
        let mut h: HashMap<NodeId, usize> = HashMap::with_capacity(order.len());
        for &id in &order {
            let v = self
                .node(id)
                .children()
                .iter()
                .map(|c| h[c] + 1)
                .max()
                .unwrap_or(0);
            h.insert(id, v);
        }
        h[&root]
    }

    /// Truth value of `root` under a total assignment over its variables.
    pub fn evaluate(&self, root: NodeId, a: &Assignment) -> Result<bool> {
        let order = self.reachable(root);
        let mut val: HashMap<NodeId, bool> = HashMap::with_capacity(order.len());
        for &id in &order {
            let v = match self.node(id) {
                Node::True => true,
                Node::False => false,
                Node::Lit(l) => {
                    let b = a.get(l.var()).ok_or(Error::MissingVariable(l.var()))?;
                    b == l.is_positive()
                }
                Node::And(c) => c.iter().all(|c| val[c]),
                Node::Or(c) => c.iter().any(|c| val[c]),
            };
            val.insert(id, v);
        }
        Ok(val[&root])
    }

    /// Rebuilds the DAG under `root` bottom-up. `f` receives each original
    /// node together with its already rebuilt children and returns the image.
    pub fn rebuild<F>(&mut self, root: NodeId, mut f: F) -> NodeId
    where
        F: FnMut(&mut NnfStore, &Node, &[NodeId]) -> NodeId,
    {
        let order = self.reachable(root);
        let mut image: HashMap<NodeId, NodeId> = HashMap::with_capacity(order.len());
        for id in order {
            let node = self.node(id).clone();
            let kids: Vec<NodeId> = node.children().iter().map(|c| image[c]).collect();
            let out = f(self, &node, &kids);
            image.insert(id, out);
        }
        image[&root]
    }

    /// Replaces every literal over a variable of `gamma` by the constant it
    /// takes under `gamma`. No other rewriting happens.
    pub fn substitute(&mut self, root: NodeId, gamma: &Term) -> NodeId {
        self.rebuild(root, |s, node, kids| match node {
            Node::Lit(l) => match gamma.value_of(l.var()) {
                Some(b) => s.constant(b == l.is_positive()),
                None => s.lit(*l),
            },
            Node::And(_) => s.and(kids.iter().copied()),
            Node::Or(_) => s.or(kids.iter().copied()),
            Node::True => TRUE,
            Node::False => FALSE,
        })
    }

    /// Constant propagation plus collapse of single-child nodes.
    pub fn simplify(&mut self, root: NodeId) -> NodeId {
        self.rebuild(root, |s, node, kids| match node {
            Node::And(_) => {
                if kids.contains(&FALSE) {
                    return FALSE;
                }
                let mut rest: Vec<NodeId> = kids.iter().copied().filter(|&k| k != TRUE).collect();
                rest.sort_unstable();
                rest.dedup();
                match rest.as_slice() {
                    [] => TRUE,
                    [one] => *one,
                    _ => s.and(rest),
                }
            }
            Node::Or(_) => {
                if kids.contains(&TRUE) {
                    return TRUE;
                }
                let mut rest: Vec<NodeId> = kids.iter().copied().filter(|&k| k != FALSE).collect();
                rest.sort_unstable();
                rest.dedup();
                match rest.as_slice() {
                    [] => FALSE,
                    [one] => *one,
                    _ => s.or(rest),
                }
            }
            Node::Lit(l) => s.lit(*l),
            Node::True => TRUE,
            Node::False => FALSE,
        })
    }

    /// Copies the DAG under `root` from another store.
    pub fn import(&mut self, other: &NnfStore, root: NodeId) -> NodeId {
        self.ensure_vars(other.num_vars);
        let mut image: HashMap<NodeId, NodeId> = HashMap::new();
        for id in other.reachable(root) {
            let out = match other.node(id) {
                Node::True => TRUE,
                Node::False => FALSE,
                Node::Lit(l) => self.lit(*l),
                Node::And(c) => {
                    let kids: Vec<NodeId> = c.iter().map(|c| image[c]).collect();
                    self.and(kids)
                }
                Node::Or(c) => {
                    let kids: Vec<NodeId> = c.iter().map(|c| image[c]).collect();
                    self.or(kids)
                }
            };
            image.insert(id, out);
        }
        image[&root]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_canonicalizes() {
        let mut s = NnfStore::new(3);
        assert_eq!(s.and([]), s.true_node());
        assert_eq!(s.or([]), s.false_node());
        let a = s.lit_code(1);
        assert_eq!(s.lit_code(1), a);
        let o = s.or([a, a]);
        assert_eq!(s.node(o).children(), &[a]);
        let b = s.lit_code(-2);
        assert_eq!(s.and([a, b]), s.and([b, a]));
    }

    #[test]
    fn build_rejects_bad_ids() {
        let mut s = NnfStore::new(1);
        assert!(matches!(
            s.build(Kind::And, &[NodeId(99)]),
            Err(Error::InvalidReference(99))
        ));
    }

    #[test]
    fn vars_size_height() {
        let mut s = NnfStore::new(3);
        let n3 = s.lit_code(-3);
        assert_eq!(s.vars(n3).to_string(), "{3}");
        assert!(s.vars(s.true_node()).is_empty());
        let x1 = s.lit_code(1);
        let x2 = s.lit_code(2);
        let nx1 = s.lit_code(-1);
        let o = s.or([x2, nx1]);
        let a = s.and([x1, o]);
        assert_eq!(s.vars(a).to_string(), "{1,2}");
        assert_eq!((s.size(x1), s.height(x1)), (0, 0));
        let b = s.and([x1, x2]);
        assert_eq!((s.size(b), s.height(b)), (2, 1));
        assert_eq!(s.height(a), 2);
    }

    #[test]
    fn evaluation_and_missing_vars() {
        let mut s = NnfStore::new(1);
        let x = s.lit_code(1);
        let nx = s.lit_code(-1);
        let c = s.and([x, nx]);
        let a = Assignment::new(VarSet::first(1), vec![true]);
        assert!(!s.evaluate(c, &a).unwrap());
        assert!(s.evaluate(s.true_node(), &a).unwrap());
        let y = s.lit_code(2);
        assert!(matches!(s.evaluate(y, &a), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn substitute_then_simplify() {
        let mut s = NnfStore::new(2);
        let a = s.lit_code(1);
        let b = s.lit_code(2);
        let ab = s.and([a, b]);
        let t = Term::from_dimacs(&[1]).unwrap();
        let sub = s.substitute(ab, &t);
        let tr = s.true_node();
        assert_eq!(s.node(sub).children(), &[tr, b]);
        assert_eq!(s.simplify(sub), b);
    }
}
