//! Seeded generators for random sentences in each language.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compile::{self, CnfFormula};
use crate::language::LanguageTag;
use crate::nnf::{Clause, Lit, NnfStore, NodeId, Term, Var, VarSet};
use crate::oracle::Oracle;
use crate::order::VarOrder;
use crate::transforms;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn var(&mut self, n: u32) -> Var {
        Var::new(self.rng.gen_range(1..=n))
    }

    pub fn lit(&mut self, n: u32) -> Lit {
        Lit::new(self.var(n), self.rng.gen_bool(0.5))
    }

    fn lit_from(&mut self, vars: &[Var]) -> Lit {
        Lit::new(*vars.choose(&mut self.rng).expect("non-empty"), self.rng.gen_bool(0.5))
    }

    /// Consistent term of up to `max_len` literals over `x1..xn`.
    pub fn term(&mut self, n: u32, max_len: usize) -> Term {
        let mut vars: Vec<Var> = (1..=n).map(Var::new).collect();
        vars.shuffle(&mut self.rng);
        let len = self.rng.gen_range(0..=max_len.min(n as usize));
        Term::new(vars[..len].iter().map(|&v| Lit::new(v, self.rng.gen_bool(0.5))).collect::<Vec<_>>())
    }

    /// Non-tautological clause of 1..=`max_len` literals.
    pub fn clause(&mut self, n: u32, max_len: usize) -> Clause {
        let mut vars: Vec<Var> = (1..=n).map(Var::new).collect();
        vars.shuffle(&mut self.rng);
        let len = self.rng.gen_range(1..=max_len.min(n as usize).max(1));
        Clause::new(vars[..len].iter().map(|&v| Lit::new(v, self.rng.gen_bool(0.5))).collect::<Vec<_>>())
    }

    pub fn cnf3(&mut self, n: u32, clauses: usize) -> CnfFormula {
        let cs = (0..clauses).map(|_| self.clause_exact(n, 3)).collect();
        CnfFormula::new(n, cs)
    }

    fn clause_exact(&mut self, n: u32, k: usize) -> Clause {
        let mut vars: Vec<Var> = (1..=n).map(Var::new).collect();
        vars.shuffle(&mut self.rng);
        Clause::new(
            vars[..k.min(n as usize)]
                .iter()
                .map(|&v| Lit::new(v, self.rng.gen_bool(0.5)))
                .collect::<Vec<_>>(),
        )
    }

    /// Unrestricted NNF DAG with at most `max_edges` edges.
    pub fn nnf(&mut self, store: &mut NnfStore, n: u32, max_edges: usize) -> NodeId {
        store.ensure_vars(n);
        let mut pool: Vec<NodeId> = (0..n.max(2)).map(|_| {
            let l = self.lit(n);
            store.lit(l)
        }).collect();
        if self.rng.gen_bool(0.1) {
            pool.push(store.constant(self.rng.gen_bool(0.5)));
        }
        let mut edges = 0;
        let mut last = pool[0];
        while edges + 2 <= max_edges {
            let k = self.rng.gen_range(2..=3).min(max_edges - edges);
            // Favour recent nodes so the DAG gets deep.
            let kids: Vec<NodeId> = (0..k)
                .map(|_| {
                    let lo = pool.len().saturating_sub(6);
                    let i = if self.rng.gen_bool(0.6) {
                        self.rng.gen_range(lo..pool.len())
                    } else {
                        self.rng.gen_range(0..pool.len())
                    };
                    pool[i]
                })
                .collect();
            let node = if self.rng.gen_bool(0.5) { store.and(kids) } else { store.or(kids) };
            edges += store.node(node).children().len();
            pool.push(node);
            last = node;
            if self.rng.gen_bool(0.08) {
                break;
            }
        }
        last
    }

    /// Decomposable sentence: And splits its variables, Or reuses them.
    pub fn dnnf(&mut self, store: &mut NnfStore, n: u32, depth: u32) -> NodeId {
        store.ensure_vars(n);
        let vars: Vec<Var> = (1..=n).map(Var::new).collect();
        self.dnnf_over(store, &vars, depth)
    }

    fn dnnf_over(&mut self, store: &mut NnfStore, vars: &[Var], depth: u32) -> NodeId {
        if depth == 0 || vars.len() == 1 || self.rng.gen_bool(0.15) {
            return store.lit(self.lit_from(vars));
        }
        if self.rng.gen_bool(0.5) {
            let mut vs = vars.to_vec();
            vs.shuffle(&mut self.rng);
            let cut = self.rng.gen_range(1..vs.len());
            let (a, b) = vs.split_at(cut);
            let l = self.dnnf_over(store, a, depth - 1);
            let r = self.dnnf_over(store, b, depth - 1);
            store.and([l, r])
        } else {
            let l = self.dnnf_over(store, vars, depth - 1);
            let r = self.dnnf_over(store, vars, depth - 1);
            store.or([l, r])
        }
    }

    /// Deterministic sentence whose Or nodes are decision-shaped; And nodes
    /// are unrestricted, so it is usually not decomposable.
    pub fn d_nnf(&mut self, store: &mut NnfStore, n: u32, depth: u32) -> NodeId {
        store.ensure_vars(n);
        if depth == 0 || self.rng.gen_bool(0.15) {
            let l = self.lit(n);
            return store.lit(l);
        }
        let a = self.d_nnf(store, n, depth - 1);
        let b = self.d_nnf(store, n, depth - 1);
        if self.rng.gen_bool(0.5) {
            store.and([a, b])
        } else {
            let v = self.var(n);
            let (p, q) = (store.lit(v.pos()), store.lit(v.neg()));
            let l = store.and([p, a]);
            let r = store.and([q, b]);
            store.or([l, r])
        }
    }

    /// Flat sentence, possibly with repeated or complementary literals.
    pub fn f_nnf(&mut self, store: &mut NnfStore, n: u32, width: usize) -> NodeId {
        store.ensure_vars(n);
        let conj = self.rng.gen_bool(0.5);
        let k = self.rng.gen_range(1..=width.max(1));
        let kids: Vec<NodeId> = (0..k)
            .map(|_| {
                let j = self.rng.gen_range(1..=3);
                let ls: Vec<NodeId> = (0..j).map(|_| {
                    let l = self.lit(n);
                    store.lit(l)
                }).collect();
                if ls.len() == 1 {
                    ls[0]
                } else if conj {
                    store.or(ls)
                } else {
                    store.and(ls)
                }
            })
            .collect();
        if conj {
            store.and(kids)
        } else {
            store.or(kids)
        }
    }

    /// Decision DAG that may test a variable twice on a path.
    pub fn bdd(&mut self, store: &mut NnfStore, n: u32, nodes: usize) -> NodeId {
        store.ensure_vars(n);
        let mut pool = vec![store.true_node(), store.false_node()];
        for _ in 0..nodes {
            let v = self.var(n);
            let hi = *pool.choose(&mut self.rng).expect("non-empty");
            let mut lo = *pool.choose(&mut self.rng).expect("non-empty");
            if lo == hi {
                lo = pool[pool.len() - 1];
            }
            pool.push(store.decision(v, hi, lo));
        }
        *pool.last().expect("non-empty")
    }

    /// Read-once decision DAG: each path draws its next test from the
    /// variables not yet tested.
    pub fn fbdd(&mut self, store: &mut NnfStore, n: u32, depth: u32) -> NodeId {
        store.ensure_vars(n);
        let all: VarSet = VarSet::first(n);
        self.fbdd_over(store, &all, depth)
    }

    fn fbdd_over(&mut self, store: &mut NnfStore, avail: &VarSet, depth: u32) -> NodeId {
        if depth == 0 || avail.is_empty() || self.rng.gen_bool(0.1) {
            return store.constant(self.rng.gen_bool(0.5));
        }
        let vs: Vec<Var> = avail.iter().collect();
        let v = *vs.choose(&mut self.rng).expect("non-empty");
        let rest = avail.difference(&[v].into_iter().collect());
        let hi = self.fbdd_over(store, &rest, depth - 1);
        let lo = if self.rng.gen_bool(0.2) { hi } else { self.fbdd_over(store, &rest, depth - 1) };
        store.decision(v, hi, lo)
    }

    pub fn order(&mut self, n: u32) -> VarOrder {
        let mut vs: Vec<Var> = (1..=n).map(Var::new).collect();
        vs.shuffle(&mut self.rng);
        VarOrder::new(vs).expect("permutation")
    }

    pub fn dnf(&mut self, store: &mut NnfStore, n: u32, terms: usize, max_len: usize) -> NodeId {
        store.ensure_vars(n);
        let ts: Vec<Term> = (0..terms).map(|_| self.term(n, max_len)).filter(|t| !t.is_empty()).collect();
        crate::clausal::dnf_node(store, &ts)
    }

    pub fn cnf(&mut self, store: &mut NnfStore, n: u32, clauses: usize, max_len: usize) -> NodeId {
        store.ensure_vars(n);
        let cs: Vec<Clause> = (0..clauses).map(|_| self.clause(n, max_len)).collect();
        crate::clausal::cnf_node(store, &cs)
    }

    /// A sentence intended to lie in `lang`. Membership is not guaranteed
    /// for the weaker generators (e.g. a random d-NNF may happen to be
    /// decomposable too), only for the target language itself.
    pub fn sentence(&mut self, store: &mut NnfStore, lang: LanguageTag, n: u32) -> NodeId {
        use LanguageTag::*;
        match lang {
            Nnf => self.nnf(store, n, 40),
            Dnnf => self.dnnf(store, n, 5),
            DNnf => self.d_nnf(store, n, 4),
            SNnf => {
                let r = self.nnf(store, n, 30);
                transforms::smooth(store, r)
            }
            FNnf => self.f_nnf(store, n, 4),
            DDnnf => {
                let f = self.cnf3(n, (n as usize) + 2);
                compile::compile_ddnnf(store, &f)
            }
            SdDnnf => {
                let f = self.cnf3(n, (n as usize) + 2);
                compile::compile_sddnnf(store, &f)
            }
            Bdd => self.bdd(store, n, 8),
            Fbdd => self.fbdd(store, n, 5),
            Obdd | ObddLt => {
                let f = self.cnf3(n, (n as usize) + 1);
                let order = self.order(n);
                compile::compile_obdd(store, &f, &order).expect("order covers all variables")
            }
            Dnf => self.dnf(store, n, 4, 3),
            Cnf => self.cnf(store, n, 4, 3),
            Pi => {
                let f = self.cnf3(n.min(8), 4);
                compile::compile_pi(store, &f).expect("within cap")
            }
            Ip => {
                let f = self.cnf3(n.min(8), 4);
                compile::compile_ip(store, &f).expect("within cap")
            }
            Mods => {
                let f = self.cnf3(n.min(8), 3);
                compile::compile_mods(store, &f, &Oracle::default()).expect("within cap")
            }
        }
    }
}
