//! Exhaustive DPLL with component decomposition. Every Or node it emits is a
//! decision node and every And node joins variable-disjoint components, so
//! the output is d-DNNF by construction.

use std::collections::HashMap;

use crate::nnf::{Clause, Lit, NnfStore, NodeId, Var};

pub(super) struct Compiler<'s> {
    store: &'s mut NnfStore,
    cache: HashMap<Vec<Clause>, NodeId>,
}

impl<'s> Compiler<'s> {
    pub(super) fn new(store: &'s mut NnfStore) -> Self {
        Compiler {
            store,
            cache: HashMap::new(),
        }
    }

    pub(super) fn run(&mut self, mut clauses: Vec<Clause>) -> NodeId {
        clauses.retain(|c| !c.is_tautology());
        clauses.sort();
        clauses.dedup();
        self.compile(clauses)
    }

    fn compile(&mut self, clauses: Vec<Clause>) -> NodeId {
        if clauses.is_empty() {
            return self.store.true_node();
        }
        if clauses.iter().any(Clause::is_empty) {
            return self.store.false_node();
        }
        if let Some(&hit) = self.cache.get(&clauses) {
            return hit;
        }
        let parts = components(&clauses);
        let out = if parts.len() > 1 {
            let kids: Vec<NodeId> = parts.into_iter().map(|p| self.compile(p)).collect();
            if kids.iter().any(|&k| self.store.is_false(k)) {
                self.store.false_node()
            } else {
                self.store.and(kids)
            }
        } else {
            let v = branch_var(&clauses);
            let hi = self.compile(condition(&clauses, v.pos()));
            let lo = self.compile(condition(&clauses, v.neg()));
            if hi == lo {
                hi
            } else {
                self.store.decision(v, hi, lo)
            }
        };
        self.cache.insert(clauses, out);
        out
    }
}

fn condition(clauses: &[Clause], l: Lit) -> Vec<Clause> {
    let mut out: Vec<Clause> = clauses
        .iter()
        .filter(|c| !c.contains(l))
        .map(|c| Clause::new(c.lits().iter().copied().filter(|&x| x != !l)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Most frequent variable, ties to the lowest index.
fn branch_var(clauses: &[Clause]) -> Var {
    let mut freq: HashMap<Var, usize> = HashMap::new();
    for c in clauses {
        for l in c.lits() {
            *freq.entry(l.var()).or_default() += 1;
        }
    }
    freq.into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(v, _)| v)
        .expect("non-empty clauses")
}

/// Splits clauses into variable-disjoint groups, each sorted.
fn components(clauses: &[Clause]) -> Vec<Vec<Clause>> {
    let max = clauses
        .iter()
        .flat_map(|c| c.lits().iter().map(|l| l.var().index() as usize))
        .max()
        .unwrap_or(0);
    let mut parent: Vec<usize> = (0..=max).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in clauses {
        let lits = c.lits();
        let first = lits[0].var().index() as usize;
        for l in &lits[1..] {
            let (a, b) = (find(&mut parent, first), find(&mut parent, l.var().index() as usize));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Clause>)> = Vec::new();
    for c in clauses {
        let r = find(&mut parent, c.lits()[0].var().index() as usize);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(c.clone()),
            None => groups.push((r, vec![c.clone()])),
        }
    }
    groups.into_iter().map(|g| g.1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_disjoint_clauses() {
        let cs = vec![Clause::from_dimacs(&[1, 2]).unwrap(), Clause::from_dimacs(&[3]).unwrap(), Clause::from_dimacs(&[-2, 1]).unwrap()];
        let parts = components(&cs);
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn branches_on_most_frequent() {
        let cs = vec![Clause::from_dimacs(&[1, 3]).unwrap(), Clause::from_dimacs(&[2, 3]).unwrap(), Clause::from_dimacs(&[1, 2]).unwrap()];
        assert_eq!(branch_var(&cs), Var::new(1));
    }
}
