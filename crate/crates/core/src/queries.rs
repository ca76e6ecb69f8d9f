//! The eight queries, each gated by the query capability matrix and by a
//! membership check on its operands.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bdd::{self, BoolOp, Obdd};
use crate::capabilities::{self, Operation, QueryTag};
use crate::clausal;
use crate::error::{Error, Result};
use crate::language::LanguageTag::{self, *};
use crate::nnf::{Assignment, Clause, Lit, NnfStore, Node, NodeId, Term, Var, VarSet};
use crate::oracle::ModelSet;
use crate::properties::require_member;

/// Partial assignment indexed by variable.
#[derive(Clone, Debug, Default)]
pub struct Partial(Vec<Option<bool>>);

impl Partial {
    pub fn new() -> Partial {
        Partial(Vec::new())
    }

    pub fn from_term(t: &Term) -> Partial {
        let mut p = Partial::new();
        for &l in t.lits() {
            p.set(l.var(), Some(l.is_positive()));
        }
        p
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.0.get(v.index() as usize).copied().flatten()
    }

    pub fn set(&mut self, v: Var, b: Option<bool>) {
        let i = v.index() as usize;
        if self.0.len() <= i {
            self.0.resize(i + 1, None);
        }
        self.0[i] = b;
    }

    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.get(l.var()).map(|b| b == l.is_positive())
    }

    fn free(&self, vars: &VarSet) -> usize {
        vars.iter().filter(|&v| self.get(v).is_none()).count()
    }
}

fn gate(store: &NnfStore, root: NodeId, lang: LanguageTag, q: QueryTag) -> Result<()> {
    capabilities::require(lang, Operation::Query(q))?;
    require_member(store, root, lang)
}

/// Consistency of a decomposable sentence conditioned on `p`, in one pass.
pub fn sat_under(store: &NnfStore, root: NodeId, p: &Partial) -> bool {
    let order = store.reachable(root);
    let mut val = vec![false; root.index() + 1];
    for id in order {
        val[id.index()] = match store.node(id) {
            Node::True => true,
            Node::False => false,
            Node::Lit(l) => p.lit_value(*l) != Some(false),
            Node::And(c) => c.iter().all(|c| val[c.index()]),
            Node::Or(c) => c.iter().any(|c| val[c.index()]),
        };
    }
    val[root.index()]
}

/// Model count of a deterministic, decomposable sentence conditioned on
/// `p`, over the sentence's unassigned variables. Smoothing is implicit in
/// the Or rule.
pub fn count_under(store: &NnfStore, root: NodeId, p: &Partial) -> BigUint {
    let order = store.reachable(root);
    let mut val: Vec<BigUint> = vec![BigUint::zero(); root.index() + 1];
    for id in order {
        let v = match store.node(id) {
            Node::True => BigUint::one(),
            Node::False => BigUint::zero(),
            Node::Lit(l) => match p.lit_value(*l) {
                Some(false) => BigUint::zero(),
                _ => BigUint::one(),
            },
            Node::And(c) => c.iter().fold(BigUint::one(), |acc, c| acc * &val[c.index()]),
            Node::Or(c) => {
                let free = p.free(store.vars(id));
                c.iter().fold(BigUint::zero(), |acc, c| {
                    let gap = free - p.free(store.vars(*c));
                    acc + (&val[c.index()] << gap)
                })
            }
        };
        val[id.index()] = v;
    }
    std::mem::take(&mut val[root.index()])
}

fn pow2(n: usize) -> BigUint {
    BigUint::one() << n
}

fn clauses(store: &NnfStore, root: NodeId) -> Vec<Clause> {
    clausal::clauses_of(store, root).expect("member of a clausal language")
}

fn terms(store: &NnfStore, root: NodeId) -> Vec<Term> {
    clausal::terms_of(store, root).expect("member of a term language")
}

/// Consistency under a partial assignment for any language granting CO and
/// CD, which is what model enumeration needs.
fn co_under(store: &NnfStore, root: NodeId, lang: LanguageTag, cls: Option<&[Clause]>, p: &Partial) -> bool {
    match lang {
        Pi => !cls
            .expect("clauses of PI")
            .iter()
            .any(|c| c.lits().iter().all(|&l| p.lit_value(l) == Some(false))),
        _ => sat_under(store, root, p),
    }
}

pub fn co(store: &NnfStore, root: NodeId, lang: LanguageTag) -> Result<bool> {
    gate(store, root, lang, QueryTag::Co)?;
    Ok(match lang {
        Pi => !clauses(store, root).iter().any(Clause::is_empty),
        _ => sat_under(store, root, &Partial::new()),
    })
}

pub fn va(store: &NnfStore, root: NodeId, lang: LanguageTag) -> Result<bool> {
    gate(store, root, lang, QueryTag::Va)?;
    Ok(match lang {
        Cnf | Pi => clauses(store, root).iter().all(Clause::is_tautology),
        Ip => terms(store, root).iter().any(Term::is_empty),
        _ => count_under(store, root, &Partial::new()) == pow2(store.vars(root).len()),
    })
}

/// Whether the sentence entails the clause `gamma`.
pub fn ce(store: &NnfStore, root: NodeId, lang: LanguageTag, gamma: &Clause) -> Result<bool> {
    gate(store, root, lang, QueryTag::Ce)?;
    if gamma.is_tautology() {
        return Ok(true);
    }
    Ok(match lang {
        Pi => clauses(store, root).iter().any(|c| c.subsumes(gamma)),
        _ => !sat_under(store, root, &Partial::from_term(&gamma.negation())),
    })
}

/// Whether the term `gamma` entails the sentence.
pub fn im(store: &NnfStore, root: NodeId, lang: LanguageTag, gamma: &Term) -> Result<bool> {
    gate(store, root, lang, QueryTag::Im)?;
    if !gamma.is_consistent() {
        return Err(Error::precondition("implicant test needs a consistent term"));
    }
    Ok(match lang {
        Cnf | Pi => clauses(store, root)
            .iter()
            .all(|c| c.is_tautology() || c.lits().iter().any(|&l| gamma.contains(l))),
        Ip => terms(store, root).iter().any(|t| t.is_subset_of(gamma)),
        _ => {
            let p = Partial::from_term(gamma);
            count_under(store, root, &p) == pow2(p.free(store.vars(root)))
        }
    })
}

fn shared_order(store: &NnfStore, a: NodeId, b: NodeId) -> Result<crate::order::VarOrder> {
    bdd::common_order(store, &[a, b])
        .ok_or_else(|| Error::precondition("operands are not ordered by a common variable order"))
}

pub fn eq(store: &mut NnfStore, a: NodeId, b: NodeId, lang: LanguageTag) -> Result<bool> {
    gate(store, a, lang, QueryTag::Eq)?;
    require_member(store, b, lang)?;
    match lang {
        ObddLt => {
            shared_order(store, a, b)?;
            Ok(bdd::reduce(store, a)? == bdd::reduce(store, b)?)
        }
        Obdd => match bdd::common_order(store, &[a, b]) {
            Some(_) => Ok(bdd::reduce(store, a)? == bdd::reduce(store, b)?),
            None => bdd::equivalent_read_once(store, a, b),
        },
        Pi => Ok(clauses(store, a) == clauses(store, b)),
        Ip => Ok(terms(store, a) == terms(store, b)),
        Mods => Ok(mods_entails(store, a, b) && mods_entails(store, b, a)),
        _ => unreachable!("gated by the capability matrix"),
    }
}

/// Whether `a` entails `b`.
pub fn se(store: &mut NnfStore, a: NodeId, b: NodeId, lang: LanguageTag) -> Result<bool> {
    gate(store, a, lang, QueryTag::Se)?;
    require_member(store, b, lang)?;
    match lang {
        ObddLt => {
            let order = shared_order(store, a, b)?;
            let nb = bdd::swap_sinks(store, b)?;
            let conj = Obdd::new(&order).apply(store, BoolOp::And, a, nb)?;
            Ok(!sat_under(store, conj, &Partial::new()))
        }
        Pi => {
            let ca = clauses(store, a);
            Ok(clauses(store, b).iter().all(|cb| ca.iter().any(|c| c.subsumes(cb))))
        }
        Ip => {
            let tb = terms(store, b);
            Ok(terms(store, a).iter().all(|ta| tb.iter().any(|t| t.is_subset_of(ta))))
        }
        Mods => Ok(mods_entails(store, a, b)),
        _ => unreachable!("gated by the capability matrix"),
    }
}

/// Each model term of `a` must be extended by exactly
/// `2^|vars(b) ∖ vars(a)|` model terms of `b`.
fn mods_entails(store: &NnfStore, a: NodeId, b: NodeId) -> bool {
    let extra = store.vars(b).difference(store.vars(a)).len();
    let tb = terms(store, b);
    terms(store, a).iter().all(|ta| {
        let agree = tb
            .iter()
            .filter(|t| t.lits().iter().all(|&l| !ta.contains(!l)))
            .count();
        extra < usize::BITS as usize && agree == 1usize << extra
    })
}

pub fn ct(store: &NnfStore, root: NodeId, lang: LanguageTag, over: &VarSet) -> Result<BigUint> {
    gate(store, root, lang, QueryTag::Ct)?;
    let vars = store.vars(root);
    if !vars.is_subset(over) {
        return Err(Error::precondition(format!("count universe {over} does not contain {vars}")));
    }
    Ok(count_under(store, root, &Partial::new()) << (over.len() - vars.len()))
}

pub fn me(store: &NnfStore, root: NodeId, lang: LanguageTag, over: &VarSet) -> Result<ModelSet> {
    let models: Vec<Assignment> = me_iter(store, root, lang, over)?.collect();
    Ok(ModelSet::new(over.clone(), models))
}

/// Streams models in lexicographic order over `over`.
pub fn me_iter<'a>(store: &'a NnfStore, root: NodeId, lang: LanguageTag, over: &VarSet) -> Result<Models<'a>> {
    gate(store, root, lang, QueryTag::Me)?;
    let vars = store.vars(root);
    if !vars.is_subset(over) {
        return Err(Error::precondition(format!("model universe {over} does not contain {vars}")));
    }
    let clauses = (lang == Pi).then(|| clauses(store, root));
    Ok(Models {
        store,
        root,
        lang,
        clauses,
        over: over.clone(),
        partial: Partial::new(),
        stack: Vec::new(),
        started: false,
        done: false,
        tests: 0,
    })
}

/// Depth-first decision-tree expansion; a branch is kept only if the
/// sentence stays consistent under it.
pub struct Models<'a> {
    store: &'a NnfStore,
    root: NodeId,
    lang: LanguageTag,
    clauses: Option<Vec<Clause>>,
    over: VarSet,
    partial: Partial,
    // per level: next value to try, 0 = false, 1 = true, 2 = exhausted
    stack: Vec<u8>,
    started: bool,
    done: bool,
    tests: usize,
}

impl Models<'_> {
    /// Consistency tests performed so far.
    pub fn tests(&self) -> usize {
        self.tests
    }

    fn consistent(&mut self) -> bool {
        self.tests += 1;
        co_under(self.store, self.root, self.lang, self.clauses.as_deref(), &self.partial)
    }

    fn current(&self) -> Assignment {
        let values = self
            .over
            .iter()
            .map(|v| self.partial.get(v).expect("assigned"))
            .collect();
        Assignment::new(self.over.clone(), values)
    }
}

impl Iterator for Models<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if self.done {
            return None;
        }
        let n = self.over.len();
        if !self.started {
            self.started = true;
            if !self.consistent() {
                self.done = true;
                return None;
            }
            if n == 0 {
                self.done = true;
                return Some(self.current());
            }
            self.stack.push(0);
        }
        loop {
            let Some(level) = self.stack.len().checked_sub(1) else {
                self.done = true;
                return None;
            };
            let v = self.over.as_slice()[level];
            let state = self.stack[level];
            if state == 2 {
                self.partial.set(v, None);
                self.stack.pop();
                continue;
            }
            self.stack[level] += 1;
            self.partial.set(v, Some(state == 1));
            if self.consistent() {
                if level + 1 == n {
                    return Some(self.current());
                }
                self.stack.push(0);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clausal::cnf_node;

    #[test]
    fn literal_models_over_two_vars() {
        let mut s = NnfStore::new(2);
        let x = s.lit_code(1);
        let m = me(&s, x, Dnnf, &VarSet::first(2)).unwrap();
        assert_eq!(m.bit_strings(), vec!["10", "11"]);
        let f = s.false_node();
        let mut it = me_iter(&s, f, Dnnf, &VarSet::first(2)).unwrap();
        assert!(it.next().is_none());
        assert_eq!(it.tests(), 1);
    }

    #[test]
    fn empty_cnf_is_valid() {
        let mut s = NnfStore::new(1);
        let t = cnf_node(&mut s, &[]);
        assert!(va(&s, t, Cnf).unwrap());
        let x = s.lit_code(1);
        assert!(!va(&s, x, Cnf).unwrap());
    }

    #[test]
    fn implicant_for_cnf_shares_literals() {
        let mut s = NnfStore::new(3);
        let f = cnf_node(&mut s, &[Clause::from_dimacs(&[1, 3]).unwrap()]);
        assert!(im(&s, f, Cnf, &Term::from_dimacs(&[1, 2]).unwrap()).unwrap());
        assert!(!im(&s, f, Cnf, &Term::from_dimacs(&[2]).unwrap()).unwrap());
        assert!(im(&s, f, Cnf, &Term::from_dimacs(&[1, -1]).unwrap()).is_err());
    }

    #[test]
    fn gate_refuses_unsupported_and_non_members() {
        let mut s = NnfStore::new(1);
        let (a, b) = (s.lit_code(1), s.lit_code(-1));
        let c = s.and([a, b]);
        assert!(matches!(co(&s, c, Dnnf), Err(Error::NotInLanguage { .. })));
        assert!(matches!(co(&s, c, Nnf), Err(Error::Capability { .. })));
        assert!(ce(&s, a, Dnnf, &Clause::from_dimacs(&[1, -1]).unwrap()).unwrap());
    }

    #[test]
    fn implicit_smoothing_in_counts() {
        let mut s = NnfStore::new(2);
        let (x1, x2) = (s.lit_code(1), s.lit_code(2));
        let nx1 = s.lit_code(-1);
        let a = s.and([nx1, x2]);
        let o = s.or([x1, a]);
        assert_eq!(ct(&s, o, DDnnf, &VarSet::first(2)).unwrap(), BigUint::from(3u32));
        assert_eq!(ct(&s, o, DDnnf, &VarSet::first(3)).unwrap(), BigUint::from(6u32));
        assert!(ct(&s, o, DDnnf, &VarSet::first(1)).is_err());
    }
}
