use crate::bdd::{self, Dd};
use crate::error::{Error, Result};
use crate::nnf::{NnfStore, Node, NodeId, Var, VarSet};

fn tautology(store: &mut NnfStore, v: Var) -> NodeId {
    let p = store.lit(v.pos());
    let n = store.lit(v.neg());
    store.or([p, n])
}

/// Pads every disjunct with `(¬v ∨ v)` for each variable it misses. Vars of
/// every rebuilt node equal those of the original, so decomposability and
/// determinism survive.
pub fn smooth(store: &mut NnfStore, root: NodeId) -> NodeId {
    store.rebuild(root, |s, node, kids| match node {
        Node::Or(_) => {
            let all = kids.iter().fold(VarSet::new(), |acc, k| acc.union(s.vars(*k)));
            let padded: Vec<NodeId> = kids
                .iter()
                .map(|&k| {
                    let missing = all.difference(s.vars(k));
                    if missing.is_empty() {
                        return k;
                    }
                    let mut parts = vec![k];
                    parts.extend(missing.iter().map(|v| tautology(s, v)));
                    s.and(parts)
                })
                .collect();
            s.or(padded)
        }
        Node::And(_) => s.and(kids.iter().copied()),
        Node::Lit(l) => s.lit(*l),
        Node::True => s.true_node(),
        Node::False => s.false_node(),
    })
}

/// Smooths a read-once diagram while keeping it one: a branch missing `y`
/// is wrapped as `(y ∧ α) ∨ (¬y ∧ α)`.
pub fn smooth_fbdd(store: &mut NnfStore, root: NodeId) -> Result<NodeId> {
    let ids = bdd::nodes(store, root).ok_or_else(|| Error::precondition("smooth_fbdd expects an FBDD"))?;
    if matches!(bdd::read_once_violation(store, root), Some(Some(_))) {
        return Err(Error::precondition("smooth_fbdd expects a read-once diagram"));
    }
    let mut image = std::collections::HashMap::new();
    for id in ids {
        let out = match bdd::view(store, id).expect("checked") {
            Dd::Sink(b) => store.constant(b),
            Dd::Test(v, hi, lo) => {
                let (mut h, mut l) = (image[&hi], image[&lo]);
                let (vh, vl) = (store.vars(h).clone(), store.vars(l).clone());
                for y in vl.difference(&vh).iter() {
                    h = store.decision(y, h, h);
                }
                for y in vh.difference(&vl).iter() {
                    l = store.decision(y, l, l);
                }
                store.decision(v, h, l)
            }
        };
        image.insert(id, out);
    }
    Ok(image[&root])
}
