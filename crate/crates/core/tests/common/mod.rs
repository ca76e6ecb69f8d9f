#![allow(dead_code)]

use kcmap::compile::{self, CnfFormula};
use kcmap::random::Gen;
use kcmap::{Clause, LanguageTag, NnfStore, NodeId, Oracle, Term, Var, VarOrder, VarSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn oracle() -> Oracle {
    Oracle::default()
}

/// One sentence in its own store.
pub struct Sample {
    pub store: NnfStore,
    pub root: NodeId,
}

/// Random NNF DAGs over at most 10 variables and 60 edges.
pub fn nnf_corpus(seed: u64, count: usize) -> Vec<Sample> {
    let mut g = Gen::new(seed);
    (0..count)
        .map(|_| {
            let n = g.rng().gen_range(1..=10);
            let mut store = NnfStore::new(n);
            let root = g.nnf(&mut store, n, 60);
            Sample { store, root }
        })
        .collect()
}

pub fn cnf_corpus(seed: u64, count: usize) -> Vec<CnfFormula> {
    let mut g = Gen::new(seed);
    (0..count)
        .map(|_| {
            let n = g.rng().gen_range(3..=10);
            let m = g.rng().gen_range(n as usize..=3 * n as usize);
            g.cnf3(n, m)
        })
        .collect()
}

/// The formula's clauses in a shuffled order.
pub fn shuffled(g: &mut Gen, f: &CnfFormula) -> CnfFormula {
    let mut cs = f.clauses.clone();
    cs.shuffle(g.rng());
    CnfFormula::new(f.num_vars, cs)
}

/// The formula and each of its compiled forms, in one store.
pub struct Compiled {
    pub store: NnfStore,
    pub roots: Vec<(&'static str, NodeId)>,
    pub order: VarOrder,
}

pub fn compile_all(g: &mut Gen, f: &CnfFormula) -> Compiled {
    let mut store = NnfStore::new(f.num_vars);
    let order = g.order(f.num_vars);
    let roots = compile_into(&mut store, f, &order);
    Compiled { store, roots, order }
}

pub fn compile_into(store: &mut NnfStore, f: &CnfFormula, order: &VarOrder) -> Vec<(&'static str, NodeId)> {
    vec![
        ("cnf", f.to_nnf(store)),
        ("ddnnf", compile::compile_ddnnf(store, f)),
        ("sddnnf", compile::compile_sddnnf(store, f)),
        ("obdd", compile::compile_obdd(store, f, order).unwrap()),
        ("mods", compile::compile_mods(store, f, &oracle()).unwrap()),
        ("pi", compile::compile_pi(store, f).unwrap()),
        ("ip", compile::compile_ip(store, f).unwrap()),
    ]
}

pub fn random_term(g: &mut Gen, n: u32) -> Term {
    g.term(n, 3)
}

pub fn random_clause(g: &mut Gen, n: u32) -> Clause {
    g.clause(n, 3)
}

pub fn random_vars(g: &mut Gen, n: u32) -> VarSet {
    let k = g.rng().gen_range(0..=n.min(3));
    (0..k).map(|_| g.var(n)).collect()
}

/// `∃X.Σ` as the disjunction of every instantiation of `X`.
pub fn forget_by_expansion(store: &mut NnfStore, root: NodeId, xs: &VarSet) -> NodeId {
    let vars: Vec<Var> = xs.iter().collect();
    let mut parts = Vec::new();
    for row in 0..1u64 << vars.len() {
        let t = Term::new(vars.iter().enumerate().map(|(i, v)| if row >> i & 1 == 1 { v.pos() } else { v.neg() }));
        parts.push(store.substitute(root, &t));
    }
    store.or(parts)
}

/// Whether `b` is the complement of `a`, by truth tables.
pub fn is_negation(store: &mut NnfStore, a: NodeId, b: NodeId) -> bool {
    let o = oracle();
    let both = store.and([a, b]);
    let either = store.or([a, b]);
    !o.is_consistent(store, both).unwrap() && o.is_valid(store, either).unwrap()
}

pub const LANGS: [LanguageTag; 16] = LanguageTag::ALL;
