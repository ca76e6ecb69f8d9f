//! Decision diagrams embedded in the NNF store.
//!
//! A decision node is `(x ∧ hi) ∨ (¬x ∧ lo)` where `hi` and `lo` are
//! themselves decision nodes or constants. The constants are the sinks.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::nnf::{Clause, Lit, NnfStore, Node, NodeId, Term, Var, VarSet};
use crate::order::VarOrder;

/// A node seen through the decision-diagram lens.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dd {
    Sink(bool),
    Test(Var, NodeId, NodeId),
}

/// Any Or node of shape `(l ∧ a) ∨ (¬l ∧ b)` with complementary literal
/// guards, returned with the positive branch first. Branches may be
/// literals, so this is looser than [`view`].
pub fn decision_shape(store: &NnfStore, id: NodeId) -> Option<(Var, NodeId, NodeId)> {
    let [c0, c1] = match store.node(id) {
        Node::Or(c) if c.len() == 2 => [c[0], c[1]],
        _ => return None,
    };
    let pair = |n: NodeId| match store.node(n) {
        Node::And(k) if k.len() == 2 => Some([k[0], k[1]]),
        _ => None,
    };
    let (a, b) = (pair(c0)?, pair(c1)?);
    let mut best = None;
    for (gi, &g) in a.iter().enumerate() {
        let Some(l) = store.node(g).as_lit() else { continue };
        for (hi_, &h) in b.iter().enumerate() {
            if store.node(h).as_lit() == Some(!l) {
                let (alpha, beta) = (a[1 - gi], b[1 - hi_]);
                let strict = store.node(alpha).as_lit().is_none() && store.node(beta).as_lit().is_none();
                let cand = if l.is_positive() {
                    (l.var(), alpha, beta)
                } else {
                    (l.var(), beta, alpha)
                };
                if strict {
                    return Some(cand);
                }
                best.get_or_insert(cand);
            }
        }
    }
    best
}

/// Decision view of a single node, without checking its descendants.
pub fn view(store: &NnfStore, id: NodeId) -> Option<Dd> {
    match store.node(id) {
        Node::True => Some(Dd::Sink(true)),
        Node::False => Some(Dd::Sink(false)),
        Node::Or(_) => {
            let (v, hi, lo) = decision_shape(store, id)?;
            let is_lit = |n: NodeId| store.node(n).as_lit().is_some();
            if is_lit(hi) || is_lit(lo) {
                None
            } else {
                Some(Dd::Test(v, hi, lo))
            }
        }
        _ => None,
    }
}

fn test(store: &NnfStore, id: NodeId) -> Dd {
    view(store, id).expect("node is part of a checked decision diagram")
}

/// Decision nodes and sinks reachable from `root` in ascending id order,
/// or `None` if `root` is not a decision diagram.
pub fn nodes(store: &NnfStore, root: NodeId) -> Option<Vec<NodeId>> {
    let mut seen = HashSet::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if !seen.insert(id) {
            continue;
        }
        match view(store, id)? {
            Dd::Sink(_) => {}
            Dd::Test(_, hi, lo) => {
                stack.push(hi);
                stack.push(lo);
            }
        }
    }
    let mut out: Vec<NodeId> = seen.into_iter().collect();
    out.sort();
    Some(out)
}

pub fn is_bdd(store: &NnfStore, root: NodeId) -> bool {
    nodes(store, root).is_some()
}

fn require_bdd(store: &NnfStore, root: NodeId) -> Result<Vec<NodeId>> {
    nodes(store, root).ok_or_else(|| Error::precondition("sentence is not a decision diagram"))
}

/// First decision node whose variable is tested again below it.
pub fn read_once_violation(store: &NnfStore, root: NodeId) -> Option<Option<NodeId>> {
    let ids = nodes(store, root)?;
    let mut below: HashMap<NodeId, VarSet> = HashMap::new();
    for &id in &ids {
        let set = match test(store, id) {
            Dd::Sink(_) => VarSet::new(),
            Dd::Test(v, hi, lo) => {
                let under = below[&hi].union(&below[&lo]);
                if under.contains(v) {
                    return Some(Some(id));
                }
                let mut s = under;
                s.insert(v);
                s
            }
        };
        below.insert(id, set);
    }
    Some(None)
}

/// Constraint edges `var(u) → var(v)` for each decision node u with a
/// decision child v.
fn order_edges(store: &NnfStore, ids: &[NodeId]) -> Vec<(Var, Var)> {
    let mut edges = Vec::new();
    for &id in ids {
        if let Dd::Test(v, hi, lo) = test(store, id) {
            for c in [hi, lo] {
                if let Dd::Test(w, _, _) = test(store, c) {
                    edges.push((v, w));
                }
            }
        }
    }
    edges
}

fn least_topological(n: u32, edges: &[(Var, Var)]) -> Option<VarOrder> {
    let n = n as usize;
    let mut indeg = vec![0usize; n + 1];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut dedup = HashSet::new();
    for &(a, b) in edges {
        let (a, b) = (a.index() as usize, b.index() as usize);
        if a == b {
            return None;
        }
        if dedup.insert((a, b)) {
            adj[a].push(b);
            indeg[b] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (1..=n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        out.push(Var::new(v as u32));
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    (out.len() == n).then(|| VarOrder::new(out).expect("topological order is a permutation"))
}

/// The lexicographically least order over `1..=num_vars` under which every
/// root is ordered, if one exists.
pub fn common_order(store: &NnfStore, roots: &[NodeId]) -> Option<VarOrder> {
    let mut edges = Vec::new();
    for &r in roots {
        edges.extend(order_edges(store, &nodes(store, r)?));
    }
    least_topological(store.num_vars(), &edges)
}

pub fn ordering_of(store: &NnfStore, root: NodeId) -> Option<VarOrder> {
    common_order(store, &[root])
}

/// `Some(None)` if consistent with `order`, `Some(Some(witness))` otherwise,
/// `None` if not a decision diagram.
pub fn order_violation(store: &NnfStore, root: NodeId, order: &VarOrder) -> Option<Option<NodeId>> {
    let ids = nodes(store, root)?;
    let pos = |v: Var| order.position(v).unwrap_or(usize::MAX);
    for &id in &ids {
        if let Dd::Test(v, hi, lo) = test(store, id) {
            for c in [hi, lo] {
                if let Dd::Test(w, _, _) = test(store, c) {
                    if pos(v) >= pos(w) {
                        return Some(Some(id));
                    }
                }
            }
        }
    }
    Some(None)
}

/// Decision node with the redundant-test rule applied.
pub fn mk(store: &mut NnfStore, v: Var, hi: NodeId, lo: NodeId) -> NodeId {
    if hi == lo {
        hi
    } else {
        store.decision(v, hi, lo)
    }
}

/// Bottom-up rebuild in the decision view.
fn rebuild<S, T>(store: &mut NnfStore, root: NodeId, mut sink: S, mut node: T) -> Result<NodeId>
where
    S: FnMut(&mut NnfStore, bool) -> NodeId,
    T: FnMut(&mut NnfStore, Var, NodeId, NodeId) -> NodeId,
{
    let ids = require_bdd(store, root)?;
    let mut image: HashMap<NodeId, NodeId> = HashMap::with_capacity(ids.len());
    for id in ids {
        let out = match test(store, id) {
            Dd::Sink(b) => sink(store, b),
            Dd::Test(v, hi, lo) => {
                let (h, l) = (image[&hi], image[&lo]);
                node(store, v, h, l)
            }
        };
        image.insert(id, out);
    }
    Ok(image[&root])
}

/// Redirects every test on a variable of `gamma` to the selected branch.
pub fn restrict(store: &mut NnfStore, root: NodeId, gamma: &Term) -> Result<NodeId> {
    rebuild(
        store,
        root,
        |s, b| s.constant(b),
        |s, v, hi, lo| match gamma.value_of(v) {
            Some(true) => hi,
            Some(false) => lo,
            None => mk(s, v, hi, lo),
        },
    )
}

/// Removes redundant tests; isomorphic nodes are already shared by the
/// unique table.
pub fn reduce(store: &mut NnfStore, root: NodeId) -> Result<NodeId> {
    rebuild(store, root, |s, b| s.constant(b), mk)
}

pub fn is_reduced(store: &NnfStore, root: NodeId) -> bool {
    match nodes(store, root) {
        None => false,
        Some(ids) => ids
            .iter()
            .all(|&id| !matches!(test(store, id), Dd::Test(_, hi, lo) if hi == lo)),
    }
}

pub fn swap_sinks(store: &mut NnfStore, root: NodeId) -> Result<NodeId> {
    rebuild(store, root, |s, b| s.constant(!b), |s, v, hi, lo| s.decision(v, hi, lo))
}

/// Replaces the `sink` leaf by `target`, which must be a decision diagram.
pub fn link_sink(store: &mut NnfStore, root: NodeId, sink: bool, target: NodeId) -> Result<NodeId> {
    require_bdd(store, target)?;
    rebuild(
        store,
        root,
        |s, b| if b == sink { target } else { s.constant(b) },
        |s, v, hi, lo| s.decision(v, hi, lo),
    )
}

/// Reachable decision nodes plus sinks.
pub fn node_count(store: &NnfStore, root: NodeId) -> Option<usize> {
    nodes(store, root).map(|v| v.len())
}

pub fn decision_count(store: &NnfStore, root: NodeId) -> Option<usize> {
    nodes(store, root).map(|v| v.iter().filter(|&&id| !matches!(test(store, id), Dd::Sink(_))).count())
}

fn root_var(store: &NnfStore, id: NodeId) -> Option<Var> {
    match test(store, id) {
        Dd::Test(v, _, _) => Some(v),
        Dd::Sink(_) => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
}

/// Ordered-diagram builder for one fixed variable order.
pub struct Obdd<'o> {
    order: &'o VarOrder,
    memo: HashMap<(BoolOp, NodeId, NodeId), NodeId>,
}

impl<'o> Obdd<'o> {
    pub fn new(order: &'o VarOrder) -> Obdd<'o> {
        Obdd {
            order,
            memo: HashMap::new(),
        }
    }

    fn pos(&self, v: Var) -> usize {
        self.order
            .position(v)
            .unwrap_or_else(|| panic!("{v} is missing from the variable order"))
    }

    fn check(&self, store: &NnfStore, root: NodeId) -> Result<()> {
        match order_violation(store, root, self.order) {
            None => Err(Error::precondition("operand is not a decision diagram")),
            Some(Some(w)) => Err(Error::precondition(format!(
                "operand is not ordered by {} (node {w})",
                self.order
            ))),
            Some(None) => {
                if store.vars(root).iter().any(|v| self.order.position(v).is_none()) {
                    Err(Error::precondition("operand mentions a variable outside the order"))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Combines two diagrams ordered by this builder's order. The result is
    /// reduced when the operands are.
    pub fn apply(&mut self, store: &mut NnfStore, op: BoolOp, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.check(store, a)?;
        self.check(store, b)?;
        let a = reduce(store, a)?;
        let b = reduce(store, b)?;
        Ok(self.apply_rec(store, op, a, b))
    }

    fn apply_rec(&mut self, store: &mut NnfStore, op: BoolOp, a: NodeId, b: NodeId) -> NodeId {
        let (t, f) = (store.true_node(), store.false_node());
        match op {
            BoolOp::And => {
                if a == f || b == f {
                    return f;
                }
                if a == t {
                    return b;
                }
                if b == t || a == b {
                    return a;
                }
            }
            BoolOp::Or => {
                if a == t || b == t {
                    return t;
                }
                if a == f {
                    return b;
                }
                if b == f || a == b {
                    return a;
                }
            }
        }
        let key = (op, a.min(b), a.max(b));
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let va = root_var(store, a).expect("non-sink");
        let vb = root_var(store, b).expect("non-sink");
        let v = if self.pos(va) <= self.pos(vb) { va } else { vb };
        let cof = |store: &NnfStore, n: NodeId| match test(store, n) {
            Dd::Test(w, hi, lo) if w == v => (hi, lo),
            _ => (n, n),
        };
        let (ah, al) = cof(store, a);
        let (bh, bl) = cof(store, b);
        let hi = self.apply_rec(store, op, ah, bh);
        let lo = self.apply_rec(store, op, al, bl);
        let r = mk(store, v, hi, lo);
        self.memo.insert(key, r);
        r
    }

    pub fn literal(&mut self, store: &mut NnfStore, l: Lit) -> NodeId {
        let (t, f) = (store.true_node(), store.false_node());
        if l.is_positive() {
            mk(store, l.var(), t, f)
        } else {
            mk(store, l.var(), f, t)
        }
    }

    /// Diagram of a clause, built bottom-up along the order.
    pub fn clause(&mut self, store: &mut NnfStore, c: &Clause) -> NodeId {
        if c.is_tautology() {
            return store.true_node();
        }
        let mut lits: Vec<Lit> = c.lits().to_vec();
        lits.sort_by_key(|l| Reverse(self.pos(l.var())));
        let t = store.true_node();
        let mut node = store.false_node();
        for l in lits {
            node = if l.is_positive() {
                mk(store, l.var(), t, node)
            } else {
                mk(store, l.var(), node, t)
            };
        }
        node
    }

    /// Converts any NNF sentence by folding apply over its nodes.
    pub fn from_nnf(&mut self, store: &mut NnfStore, root: NodeId) -> Result<NodeId> {
        if let Some(v) = store.vars(root).iter().find(|&v| self.order.position(v).is_none()) {
            return Err(Error::precondition(format!("{v} is missing from the variable order")));
        }
        let mut image: HashMap<NodeId, NodeId> = HashMap::new();
        for id in store.reachable(root) {
            let node = store.node(id).clone();
            let out = match node {
                Node::True => store.true_node(),
                Node::False => store.false_node(),
                Node::Lit(l) => self.literal(store, l),
                Node::And(c) => {
                    let mut acc = store.true_node();
                    for ch in c.iter() {
                        acc = self.apply_rec(store, BoolOp::And, acc, image[ch]);
                    }
                    acc
                }
                Node::Or(c) => {
                    let mut acc = store.false_node();
                    for ch in c.iter() {
                        acc = self.apply_rec(store, BoolOp::Or, acc, image[ch]);
                    }
                    acc
                }
            };
            image.insert(id, out);
        }
        Ok(image[&root])
    }
}

/// Equivalence of a read-once diagram `g` and an ordered diagram `h`, in
/// time polynomial in both sizes even when their orders differ. For each
/// node u of `g` one root path ρ_u is fixed; the check is that `h|ρ_u`
/// restricted on u's variable matches `h|ρ` of the corresponding child,
/// and that `h|ρ_sink` is that sink.
pub fn equivalent_read_once(store: &mut NnfStore, g: NodeId, h: NodeId) -> Result<bool> {
    let gids = require_bdd(store, g)?;
    if ordering_of(store, h).is_none() {
        return Err(Error::precondition("second operand is not an ordered diagram"));
    }
    if matches!(read_once_violation(store, g), Some(Some(_))) {
        return Err(Error::precondition("first operand is not read-once"));
    }
    let h = reduce(store, h)?;
    let mut path: HashMap<NodeId, Vec<Lit>> = HashMap::new();
    path.insert(g, Vec::new());
    for &id in gids.iter().rev() {
        let Some(rho) = path.get(&id).cloned() else { continue };
        if let Dd::Test(v, hi, lo) = test(store, id) {
            for (child, val) in [(hi, true), (lo, false)] {
                path.entry(child).or_insert_with(|| {
                    let mut p = rho.clone();
                    p.push(Lit::new(v, val));
                    p
                });
            }
        }
    }
    let mut restricted: HashMap<NodeId, NodeId> = HashMap::new();
    for &id in &gids {
        let term = Term::new(path[&id].iter().copied());
        let r = restrict(store, h, &term)?;
        restricted.insert(id, r);
    }
    for &id in &gids {
        let hu = restricted[&id];
        match test(store, id) {
            Dd::Sink(b) => {
                if hu != store.constant(b) {
                    return Ok(false);
                }
            }
            Dd::Test(v, hi, lo) => {
                let h1 = restrict(store, hu, &Term::new([v.pos()]))?;
                let h0 = restrict(store, hu, &Term::new([v.neg()]))?;
                if h1 != restricted[&hi] || h0 != restricted[&lo] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
