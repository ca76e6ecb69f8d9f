use crate::nnf::{NnfStore, Node, NodeId};

/// Negation by De Morgan's laws. Preserves flatness.
pub fn de_morgan(store: &mut NnfStore, root: NodeId) -> NodeId {
    store.rebuild(root, |s, node, kids| match node {
        Node::True => s.false_node(),
        Node::False => s.true_node(),
        Node::Lit(l) => s.lit(!*l),
        Node::And(_) => s.or(kids.iter().copied()),
        Node::Or(_) => s.and(kids.iter().copied()),
    })
}

/// Negation that keeps determinism. An Or becomes the And of the negated
/// children; `∧(N_1..N_k)` becomes `∨_i (N'_i ∧ N_1 ∧ … ∧ N_{i−1})` with
/// the prefix conjunctions shared as a chain. Output size is linear.
pub fn negate_deterministic(store: &mut NnfStore, root: NodeId) -> NodeId {
    let order = store.reachable(root);
    let mut neg = std::collections::HashMap::with_capacity(order.len());
    for id in order {
        let node = store.node(id).clone();
        let out = match node {
            Node::True => store.false_node(),
            Node::False => store.true_node(),
            Node::Lit(l) => store.lit(!l),
            Node::Or(c) => {
                let kids: Vec<NodeId> = c.iter().map(|k| neg[k]).collect();
                singleton_or(store, kids, true)
            }
            Node::And(c) => {
                let mut disjuncts = Vec::with_capacity(c.len());
                let mut prefix: Option<NodeId> = None;
                for &k in c.iter() {
                    disjuncts.push(match prefix {
                        None => neg[&k],
                        Some(m) => store.and([neg[&k], m]),
                    });
                    prefix = Some(match prefix {
                        None => k,
                        Some(m) => store.and([m, k]),
                    });
                }
                singleton_or(store, disjuncts, false)
            }
        };
        neg.insert(id, out);
    }
    neg[&root]
}

fn singleton_or(store: &mut NnfStore, kids: Vec<NodeId>, conj: bool) -> NodeId {
    if kids.len() == 1 {
        return kids[0];
    }
    if conj {
        store.and(kids)
    } else {
        store.or(kids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use crate::properties;

    #[test]
    fn or_becomes_and() {
        let mut s = NnfStore::new(2);
        let (a, b) = (s.lit_code(1), s.lit_code(2));
        let o = s.or([a, b]);
        let n = negate_deterministic(&mut s, o);
        let (na, nb) = (s.lit_code(-1), s.lit_code(-2));
        assert_eq!(n, s.and([na, nb]));
    }

    #[test]
    fn and_negation_is_deterministic() {
        let mut s = NnfStore::new(3);
        let l: Vec<NodeId> = (1..=3).map(|i| s.lit_code(i)).collect();
        let o = s.or([l[1], l[2]]);
        let a = s.and([l[0], o]);
        let n = negate_deterministic(&mut s, a);
        let o2 = s.or([a, n]);
        assert!(Oracle::default().is_valid(&s, o2).unwrap());
        assert!(properties::deterministic_structurally(&s, n));
        let dm = de_morgan(&mut s, a);
        assert!(Oracle::default().equivalent(&s, dm, n).unwrap());
    }
}
