//! Clause and term sets: extraction from flat sentences, construction, and
//! the set algebra used by the CNF, DNF, PI, IP and MODS routines.

use crate::nnf::{Clause, Lit, NnfStore, Node, NodeId, Term, Var};

/// Clauses of a conjunction of clauses, or `None` if some disjunction is
/// not a plain disjunction of literals.
pub fn clauses_of(store: &NnfStore, root: NodeId) -> Option<Vec<Clause>> {
    let mut out = Vec::new();
    collect_clauses(store, root, &mut out)?;
    out.sort();
    out.dedup();
    Some(out)
}

fn collect_clauses(store: &NnfStore, id: NodeId, out: &mut Vec<Clause>) -> Option<()> {
    match store.node(id) {
        Node::True => {}
        Node::False => out.push(Clause::default()),
        Node::Lit(l) => out.push(Clause::new([*l])),
        Node::Or(c) => {
            let lits: Option<Vec<Lit>> = c.iter().map(|&ch| store.node(ch).as_lit()).collect();
            out.push(Clause::new(lits?));
        }
        Node::And(c) => {
            for &ch in c.iter() {
                collect_clauses(store, ch, out)?;
            }
        }
    }
    Some(())
}

/// Terms of a disjunction of terms; dual of [`clauses_of`].
pub fn terms_of(store: &NnfStore, root: NodeId) -> Option<Vec<Term>> {
    let mut out = Vec::new();
    collect_terms(store, root, &mut out)?;
    out.sort();
    out.dedup();
    Some(out)
}

fn collect_terms(store: &NnfStore, id: NodeId, out: &mut Vec<Term>) -> Option<()> {
    match store.node(id) {
        Node::False => {}
        Node::True => out.push(Term::default()),
        Node::Lit(l) => out.push(Term::new([*l])),
        Node::And(c) => {
            let lits: Option<Vec<Lit>> = c.iter().map(|&ch| store.node(ch).as_lit()).collect();
            out.push(Term::new(lits?));
        }
        Node::Or(c) => {
            for &ch in c.iter() {
                collect_terms(store, ch, out)?;
            }
        }
    }
    Some(())
}

/// CNF sentence for a clause list. An empty clause yields False.
pub fn cnf_node(store: &mut NnfStore, clauses: &[Clause]) -> NodeId {
    if clauses.iter().any(Clause::is_empty) {
        return store.false_node();
    }
    let kids: Vec<NodeId> = clauses.iter().map(|c| store.clause(c)).collect();
    match kids.as_slice() {
        [one] => *one,
        _ => store.and(kids),
    }
}

/// DNF sentence for a term list. An empty term yields True.
pub fn dnf_node(store: &mut NnfStore, terms: &[Term]) -> NodeId {
    if terms.iter().any(Term::is_empty) {
        return store.true_node();
    }
    let kids: Vec<NodeId> = terms.iter().map(|t| store.term(t)).collect();
    match kids.as_slice() {
        [one] => *one,
        _ => store.or(kids),
    }
}

/// Or over full terms, kept as an Or node even for a single model.
pub fn mods_node(store: &mut NnfStore, terms: &[Term]) -> NodeId {
    if terms.len() == 1 && terms[0].is_empty() {
        return store.true_node();
    }
    let kids: Vec<NodeId> = terms.iter().map(|t| store.term(t)).collect();
    store.or(kids)
}

/// Drops tautologies and clauses subsumed by another; sorted output.
pub fn minimize_clauses(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.retain(|c| !c.is_tautology());
    clauses.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    clauses.dedup();
    let mut kept: Vec<Clause> = Vec::with_capacity(clauses.len());
    for c in clauses {
        if !kept.iter().any(|k| k.subsumes(&c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// Drops inconsistent terms and terms that strictly contain another.
pub fn minimize_terms(mut terms: Vec<Term>) -> Vec<Term> {
    terms.retain(Term::is_consistent);
    terms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    terms.dedup();
    let mut kept: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if !kept.iter().any(|k| k.is_subset_of(&t)) {
            kept.push(t);
        }
    }
    kept.sort();
    kept
}

/// Clause set conditioned on a consistent term, before minimization.
pub fn condition_clauses(clauses: &[Clause], gamma: &Term) -> Vec<Clause> {
    clauses
        .iter()
        .filter(|c| !c.lits().iter().any(|&l| gamma.contains(l)))
        .map(|c| Clause::new(c.lits().iter().copied().filter(|&l| !gamma.contains(!l))))
        .collect()
}

/// Term set conditioned on a consistent term, before minimization.
pub fn condition_terms(terms: &[Term], gamma: &Term) -> Vec<Term> {
    terms
        .iter()
        .filter(|t| !t.lits().iter().any(|&l| gamma.contains(!l)))
        .map(|t| Term::new(t.lits().iter().copied().filter(|&l| !gamma.contains(l))))
        .collect()
}

pub fn disjoin_clauses(a: &Clause, b: &Clause) -> Clause {
    Clause::new(a.lits().iter().chain(b.lits()).copied())
}

/// Prime implicates of `a ∨ b` from those of `a` and `b`.
pub fn pi_or(a: &[Clause], b: &[Clause]) -> Vec<Clause> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(disjoin_clauses(x, y));
        }
    }
    minimize_clauses(out)
}

/// Prime implicants of `a ∧ b` from those of `a` and `b`.
pub fn ip_and(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.conjoin(y));
        }
    }
    minimize_terms(out)
}

/// The resolvent of two clauses on `v`, if not tautological.
pub fn resolvent(pos: &Clause, neg: &Clause, v: Var) -> Option<Clause> {
    let r = Clause::new(
        pos.lits()
            .iter()
            .filter(|l| **l != v.pos())
            .chain(neg.lits().iter().filter(|l| **l != v.neg()))
            .copied(),
    );
    (!r.is_tautology()).then_some(r)
}

/// Eliminates `v` by resolution: clauses without `v` plus every
/// non-tautological resolvent on `v`.
pub fn eliminate(clauses: &[Clause], v: Var) -> Vec<Clause> {
    let (pos, neg): (Vec<&Clause>, Vec<&Clause>) = (
        clauses.iter().filter(|c| c.contains(v.pos())).collect(),
        clauses.iter().filter(|c| c.contains(v.neg())).collect(),
    );
    let mut out: Vec<Clause> = clauses
        .iter()
        .filter(|c| !c.contains(v.pos()) && !c.contains(v.neg()))
        .cloned()
        .collect();
    for p in &pos {
        for n in &neg {
            out.extend(resolvent(p, n, v));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Resolution closure with subsumption deletion; the fixpoint is the set of
/// prime implicates.
pub fn prime_implicates(clauses: &[Clause]) -> Vec<Clause> {
    let mut set = minimize_clauses(clauses.to_vec());
    loop {
        let mut fresh: Vec<Clause> = Vec::new();
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let (a, b) = (&set[i], &set[j]);
                let clash: Vec<Var> = a
                    .lits()
                    .iter()
                    .filter(|&&l| b.contains(!l))
                    .map(|l| l.var())
                    .collect();
                if clash.len() != 1 {
                    continue;
                }
                let v = clash[0];
                let r = if a.contains(v.pos()) {
                    resolvent(a, b, v)
                } else {
                    resolvent(b, a, v)
                };
                if let Some(r) = r {
                    let covered = set.iter().chain(fresh.iter()).any(|k| k.subsumes(&r));
                    if !covered {
                        fresh.push(r);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return set;
        }
        set.extend(fresh);
        set = minimize_clauses(set);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(codes: &[i64]) -> Clause {
        Clause::from_dimacs(codes).unwrap()
    }

    fn t(codes: &[i64]) -> Term {
        Term::from_dimacs(codes).unwrap()
    }

    #[test]
    fn extraction_round_trips() {
        let mut s = NnfStore::new(3);
        let cl = vec![c(&[-1, 3]), c(&[1, 2])];
        let n = cnf_node(&mut s, &cl);
        assert_eq!(clauses_of(&s, n).unwrap(), cl);
        let tm = vec![t(&[1, 2]), t(&[-3])];
        let d = dnf_node(&mut s, &tm);
        let mut want = tm.clone();
        want.sort();
        assert_eq!(terms_of(&s, d).unwrap(), want);
        assert_eq!(clauses_of(&s, s.true_node()).unwrap(), Vec::<Clause>::new());
        assert!(clauses_of(&s, d).is_none());
    }

    #[test]
    fn minimization() {
        let m = minimize_clauses(vec![c(&[1]), c(&[1, 2]), c(&[2, -2]), c(&[3])]);
        assert_eq!(m, vec![c(&[1]), c(&[3])]);
        let m = minimize_terms(vec![t(&[1, 2]), t(&[1]), t(&[2, -2])]);
        assert_eq!(m, vec![t(&[1])]);
    }

    #[test]
    fn resolution_closure() {
        let pi = prime_implicates(&[c(&[1, 2]), c(&[-1, 2])]);
        assert_eq!(pi, vec![c(&[2])]);
        let pi = prime_implicates(&[c(&[1, 2]), c(&[3, 4])]);
        assert_eq!(pi.len(), 2);
        let pi = prime_implicates(&[c(&[1]), c(&[-1])]);
        assert_eq!(pi, vec![Clause::default()]);
    }

    #[test]
    fn conditioning_sets() {
        let g = t(&[1]);
        assert_eq!(condition_clauses(&[c(&[1, 2]), c(&[-1, 3])], &g), vec![c(&[3])]);
        let ip = condition_terms(&[t(&[1, 2]), t(&[-1, 3])], &g);
        assert_eq!(minimize_terms(ip), vec![t(&[2])]);
    }

    #[test]
    fn elimination_is_resolution() {
        let out = eliminate(&[c(&[1, 2]), c(&[-1, 3])], Var::new(1));
        assert_eq!(out, vec![c(&[2, 3])]);
    }
}
