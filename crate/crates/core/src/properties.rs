//! Structural and semantic property checks and the language classifier.

use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::bdd::{self, Dd};
use crate::clausal;
use crate::error::{Error, Result};
use crate::language::LanguageTag;
use crate::nnf::{Clause, NnfStore, Node, NodeId, Term, Var};
use crate::oracle::Oracle;
use crate::order::VarOrder;

/// Three-valued answer for checks that may hit the oracle cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Unknown, _) | (_, Tri::Unknown) => Tri::Unknown,
            _ => Tri::Yes,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Decomposability,
    Determinism,
    Smoothness,
    Flatness,
    SimpleDisjunction,
    SimpleConjunction,
    Decision,
    ReadOnce,
    Ordering,
    PrimeImplicates,
    PrimeImplicants,
}

/// Result of one check, with the first offending node on failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Check {
    pub value: Tri,
    pub witness: Option<NodeId>,
}

impl Check {
    fn yes() -> Check {
        Check {
            value: Tri::Yes,
            witness: None,
        }
    }

    fn no(w: NodeId) -> Check {
        Check {
            value: Tri::No,
            witness: Some(w),
        }
    }

    fn unknown(w: Option<NodeId>) -> Check {
        Check {
            value: Tri::Unknown,
            witness: w,
        }
    }

    fn from_witness(w: Option<NodeId>) -> Check {
        w.map_or(Check::yes(), Check::no)
    }

    fn and(self, other: Check) -> Check {
        match (self.value, other.value) {
            (Tri::No, _) => self,
            (_, Tri::No) => other,
            (Tri::Unknown, _) => self,
            (_, Tri::Unknown) => other,
            _ => Check::yes(),
        }
    }
}

pub fn decomposable(store: &NnfStore, root: NodeId) -> Check {
    for id in store.reachable(root) {
        if let Node::And(c) = store.node(id) {
            let mut seen = crate::nnf::VarSet::new();
            for ch in c.iter() {
                if !seen.is_disjoint(store.vars(*ch)) {
                    return Check::no(id);
                }
                seen = seen.union(store.vars(*ch));
            }
        }
    }
    Check::yes()
}

pub fn smooth(store: &NnfStore, root: NodeId) -> Check {
    let bad = store.reachable(root).into_iter().find(|&id| match store.node(id) {
        Node::Or(c) => c.iter().any(|ch| store.vars(*ch) != store.vars(c[0])),
        _ => false,
    });
    Check::from_witness(bad)
}

pub fn flat(store: &NnfStore, root: NodeId) -> Check {
    Check::from_witness((store.height(root) > 2).then_some(root))
}

fn literal_children(store: &NnfStore, c: &[NodeId]) -> bool {
    let mut vars = HashSet::new();
    c.iter()
        .all(|&ch| store.node(ch).as_lit().is_some_and(|l| vars.insert(l.var())))
}

/// Every Or node's children are literals over distinct variables.
pub fn simple_disjunction(store: &NnfStore, root: NodeId) -> Check {
    let bad = store.reachable(root).into_iter().find(|&id| match store.node(id) {
        Node::Or(c) => !literal_children(store, c),
        _ => false,
    });
    Check::from_witness(bad)
}

/// Every And node's children are literals over distinct variables.
pub fn simple_conjunction(store: &NnfStore, root: NodeId) -> Check {
    let bad = store.reachable(root).into_iter().find(|&id| match store.node(id) {
        Node::And(c) => !literal_children(store, c),
        _ => false,
    });
    Check::from_witness(bad)
}

/// Root and all decision descendants are decision nodes or constants.
pub fn decision(store: &NnfStore, root: NodeId) -> Check {
    let mut seen = HashSet::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if !seen.insert(id) {
            continue;
        }
        match bdd::view(store, id) {
            None => return Check::no(id),
            Some(Dd::Test(_, hi, lo)) => stack.extend([hi, lo]),
            Some(Dd::Sink(_)) => {}
        }
    }
    Check::yes()
}

/// No root-to-sink path tests a variable twice. Fails on non-diagrams.
pub fn read_once(store: &NnfStore, root: NodeId) -> Check {
    match bdd::read_once_violation(store, root) {
        None => Check::no(root),
        Some(w) => Check::from_witness(w),
    }
}

pub use bdd::ordering_of;

/// Memoized structural proof that two nodes have no common model.
struct Contra<'a> {
    store: &'a NnfStore,
    memo: HashMap<(NodeId, NodeId), bool>,
    steps: usize,
    budget: usize,
}

const CONTRA_BUDGET: usize = 200_000;

impl<'a> Contra<'a> {
    fn new(store: &'a NnfStore) -> Contra<'a> {
        Contra {
            store,
            memo: HashMap::new(),
            steps: 0,
            budget: CONTRA_BUDGET,
        }
    }

    fn prove(&mut self, a: NodeId, b: NodeId) -> Option<bool> {
        let key = (a.min(b), a.max(b));
        if let Some(&r) = self.memo.get(&key) {
            return Some(r);
        }
        self.steps += 1;
        if self.steps > self.budget {
            return None;
        }
        let (na, nb) = (self.store.node(a), self.store.node(b));
        let r = match (na, nb) {
            (Node::False, _) | (_, Node::False) => true,
            (Node::Lit(x), Node::Lit(y)) => *x == !*y,
            _ => self.rules(a, b)? || self.rules(b, a)?,
        };
        self.memo.insert(key, r);
        Some(r)
    }

    fn rules(&mut self, a: NodeId, b: NodeId) -> Option<bool> {
        match self.store.node(a) {
            Node::And(c) => {
                for &ch in c.iter() {
                    if self.prove(ch, b)? {
                        return Some(true);
                    }
                }
                Some(false)
            }
            Node::Or(c) => {
                for &ch in c.iter() {
                    if !self.prove(ch, b)? {
                        return Some(false);
                    }
                }
                Some(true)
            }
            _ => Some(false),
        }
    }
}

/// Per Or node: structural proof first, then the oracle within its cap.
pub fn deterministic(store: &NnfStore, root: NodeId, oracle: &Oracle) -> Check {
    let mut contra = Contra::new(store);
    let mut first_unknown = None;
    for id in store.reachable(root) {
        let Node::Or(c) = store.node(id) else { continue };
        if c.len() < 2 || bdd::decision_shape(store, id).is_some() {
            continue;
        }
        if structurally_disjoint(&mut contra, c) == Some(true) {
            continue;
        }
        match oracle.pairwise_disjoint(store, c) {
            Ok(true) => {}
            Ok(false) => return Check::no(id),
            Err(_) => {
                first_unknown.get_or_insert(id);
            }
        }
    }
    match first_unknown {
        Some(w) => Check::unknown(Some(w)),
        None => Check::yes(),
    }
}

fn structurally_disjoint(contra: &mut Contra<'_>, c: &[NodeId]) -> Option<bool> {
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if !contra.prove(c[i], c[j])? {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Whether every Or node is proven deterministic without the oracle.
pub fn deterministic_structurally(store: &NnfStore, root: NodeId) -> bool {
    let mut contra = Contra::new(store);
    store.reachable(root).into_iter().all(|id| match store.node(id) {
        Node::Or(c) if c.len() >= 2 => {
            bdd::decision_shape(store, id).is_some()
                || structurally_disjoint(&mut contra, c) == Some(true)
        }
        _ => true,
    })
}

fn resolution_closed(clauses: &[Clause]) -> bool {
    for (i, a) in clauses.iter().enumerate() {
        for (j, b) in clauses.iter().enumerate() {
            if i != j && a.subsumes(b) {
                return false;
            }
        }
    }
    for (i, a) in clauses.iter().enumerate() {
        for b in &clauses[i + 1..] {
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
                clausal::resolvent(a, b, v)
            } else {
                clausal::resolvent(b, a, v)
            };
            if let Some(r) = r {
                if !clauses.iter().any(|k| k.subsumes(&r)) {
                    return false;
                }
            }
        }
    }
    true
}

/// A CNF sentence is in prime-implicate form iff its clause set is
/// subsumption-free and closed under resolution modulo subsumption.
pub fn is_pi(store: &NnfStore, root: NodeId) -> Result<Tri> {
    if !(flat(store, root).value.is_yes() && simple_disjunction(store, root).value.is_yes()) {
        return Err(Error::precondition("is_pi expects a CNF sentence"));
    }
    let clauses = clausal::clauses_of(store, root).expect("CNF has clauses");
    Ok(resolution_closed(&clauses).into())
}

/// Dual of [`is_pi`] on the negated terms.
pub fn is_ip(store: &NnfStore, root: NodeId) -> Result<Tri> {
    if !(flat(store, root).value.is_yes() && simple_conjunction(store, root).value.is_yes()) {
        return Err(Error::precondition("is_ip expects a DNF sentence"));
    }
    let terms = clausal::terms_of(store, root).expect("DNF has terms");
    let negated: Vec<Clause> = terms.iter().map(Term::negation).collect();
    Ok(resolution_closed(&negated).into())
}

/// Lazily computed property checks for one sentence.
pub struct Analysis<'a> {
    store: &'a NnfStore,
    root: NodeId,
    oracle: Oracle,
    order: Option<&'a VarOrder>,
    dec: OnceCell<Check>,
    det: OnceCell<Check>,
    smooth: OnceCell<Check>,
    flat: OnceCell<Check>,
    sd: OnceCell<Check>,
    sc: OnceCell<Check>,
    decision: OnceCell<Check>,
    read_once: OnceCell<Check>,
    ordered: OnceCell<(Check, Option<VarOrder>)>,
    pi: OnceCell<Check>,
    ip: OnceCell<Check>,
}

impl<'a> Analysis<'a> {
    pub fn new(store: &'a NnfStore, root: NodeId, oracle: Oracle, order: Option<&'a VarOrder>) -> Self {
        Analysis {
            store,
            root,
            oracle,
            order,
            dec: OnceCell::new(),
            det: OnceCell::new(),
            smooth: OnceCell::new(),
            flat: OnceCell::new(),
            sd: OnceCell::new(),
            sc: OnceCell::new(),
            decision: OnceCell::new(),
            read_once: OnceCell::new(),
            ordered: OnceCell::new(),
            pi: OnceCell::new(),
            ip: OnceCell::new(),
        }
    }

    pub fn property(&self, p: Property) -> Check {
        let (s, r) = (self.store, self.root);
        match p {
            Property::Decomposability => *self.dec.get_or_init(|| decomposable(s, r)),
            Property::Determinism => *self.det.get_or_init(|| deterministic(s, r, &self.oracle)),
            Property::Smoothness => *self.smooth.get_or_init(|| smooth(s, r)),
            Property::Flatness => *self.flat.get_or_init(|| flat(s, r)),
            Property::SimpleDisjunction => *self.sd.get_or_init(|| simple_disjunction(s, r)),
            Property::SimpleConjunction => *self.sc.get_or_init(|| simple_conjunction(s, r)),
            Property::Decision => *self.decision.get_or_init(|| decision(s, r)),
            Property::ReadOnce => *self.read_once.get_or_init(|| read_once(s, r)),
            Property::Ordering => self.ordered().0,
            Property::PrimeImplicates => *self.pi.get_or_init(|| {
                let base = self.property(Property::Flatness).and(self.property(Property::SimpleDisjunction));
                if !base.value.is_yes() {
                    return base;
                }
                match is_pi(s, r) {
                    Ok(Tri::Yes) => Check::yes(),
                    _ => Check::no(r),
                }
            }),
            Property::PrimeImplicants => *self.ip.get_or_init(|| {
                let base = self.property(Property::Flatness).and(self.property(Property::SimpleConjunction));
                if !base.value.is_yes() {
                    return base;
                }
                match is_ip(s, r) {
                    Ok(Tri::Yes) => Check::yes(),
                    _ => Check::no(r),
                }
            }),
        }
    }

    fn ordered(&self) -> &(Check, Option<VarOrder>) {
        self.ordered.get_or_init(|| {
            let (s, r) = (self.store, self.root);
            match bdd::ordering_of(s, r) {
                None => (Check::no(r), None),
                Some(inferred) => match self.order {
                    None => (Check::yes(), Some(inferred)),
                    Some(given) => {
                        let given = given.extended(s.num_vars());
                        match bdd::order_violation(s, r, &given) {
                            Some(None) => (Check::yes(), Some(given)),
                            Some(Some(w)) => (Check::no(w), None),
                            None => (Check::no(r), None),
                        }
                    }
                },
            }
        })
    }

    /// Order of the diagram: the given one if consistent, else the least
    /// consistent one.
    pub fn order(&self) -> Option<VarOrder> {
        self.ordered().1.clone()
    }

    fn own(&self, lang: LanguageTag) -> Check {
        use LanguageTag::*;
        use Property::*;
        let p = |x| self.property(x);
        match lang {
            Nnf => Check::yes(),
            Dnnf => p(Decomposability),
            DNnf => p(Determinism),
            SNnf => p(Smoothness),
            FNnf => p(Flatness),
            DDnnf => p(Decomposability).and(p(Determinism)),
            SdDnnf => p(Decomposability).and(p(Determinism)).and(p(Smoothness)),
            Bdd => p(Decision),
            Fbdd => p(Decision).and(p(ReadOnce)),
            Obdd => p(Decision).and(p(ReadOnce)).and(self.inferred_order_check()),
            ObddLt => p(Decision).and(p(ReadOnce)).and(p(Ordering)),
            Dnf => p(Flatness).and(p(SimpleConjunction)),
            Cnf => p(Flatness).and(p(SimpleDisjunction)),
            Pi => p(PrimeImplicates),
            Ip => p(PrimeImplicants),
            Mods => p(Flatness)
                .and(p(SimpleConjunction))
                .and(p(Determinism))
                .and(p(Smoothness)),
        }
    }

    fn inferred_order_check(&self) -> Check {
        if bdd::ordering_of(self.store, self.root).is_some() {
            Check::yes()
        } else {
            Check::no(self.root)
        }
    }

    /// Membership with lattice coherence: a language is definite only if
    /// all its supersets are.
    pub fn member(&self, lang: LanguageTag) -> Check {
        lang.parents()
            .iter()
            .fold(self.own(lang), |acc, &p| acc.and(self.member(p)))
    }
}

/// Membership of one sentence in one language.
pub fn member(store: &NnfStore, root: NodeId, lang: LanguageTag, order: Option<&VarOrder>) -> Check {
    Analysis::new(store, root, Oracle::default(), order).member(lang)
}

/// Errors unless the sentence is definitely in `lang`.
pub fn require_member(store: &NnfStore, root: NodeId, lang: LanguageTag) -> Result<()> {
    let c = member(store, root, lang, None);
    match c.value {
        Tri::Yes => Ok(()),
        Tri::No => Err(Error::NotInLanguage {
            lang,
            witness: c.witness,
        }),
        Tri::Unknown => Err(Error::MembershipUnknown { lang }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub definite: Vec<LanguageTag>,
    pub unknown: Vec<LanguageTag>,
    pub witnesses: Vec<(LanguageTag, NodeId)>,
    pub order: Option<VarOrder>,
}

impl ClassificationReport {
    pub fn status(&self, lang: LanguageTag) -> Tri {
        if self.definite.contains(&lang) {
            Tri::Yes
        } else if self.unknown.contains(&lang) {
            Tri::Unknown
        } else {
            Tri::No
        }
    }

    pub fn witness(&self, lang: LanguageTag) -> Option<NodeId> {
        self.witnesses.iter().find(|(l, _)| *l == lang).map(|(_, w)| *w)
    }

    /// One line per language: `<tag> yes|no|unknown [witness=<id>]`.
    pub fn lines(&self) -> Vec<String> {
        LanguageTag::ALL
            .iter()
            .map(|&l| match self.witness(l) {
                Some(w) if self.status(l) != Tri::Yes => format!("{l} {} witness={w}", self.status(l)),
                _ => format!("{l} {}", self.status(l)),
            })
            .collect()
    }
}

pub fn classify(store: &NnfStore, root: NodeId, order: Option<&VarOrder>) -> ClassificationReport {
    classify_with(store, root, order, Oracle::default())
}

pub fn classify_with(store: &NnfStore, root: NodeId, order: Option<&VarOrder>, oracle: Oracle) -> ClassificationReport {
    let a = Analysis::new(store, root, oracle, order);
    let mut report = ClassificationReport {
        definite: Vec::new(),
        unknown: Vec::new(),
        witnesses: Vec::new(),
        order: None,
    };
    for lang in LanguageTag::ALL {
        let c = a.member(lang);
        match c.value {
            Tri::Yes => report.definite.push(lang),
            Tri::Unknown => report.unknown.push(lang),
            Tri::No => {}
        }
        if let Some(w) = c.witness {
            report.witnesses.push((lang, w));
        }
    }
    if report.definite.contains(&LanguageTag::ObddLt) {
        report.order = a.order();
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clausal::cnf_node;

    fn cnf(store: &mut NnfStore, cl: &[&[i64]]) -> NodeId {
        let cl: Vec<Clause> = cl.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect();
        cnf_node(store, &cl)
    }

    #[test]
    fn decomposability_witness() {
        let mut s = NnfStore::new(2);
        let (x1, x2) = (s.lit_code(1), s.lit_code(2));
        let o = s.or([x1, x2]);
        let a = s.and([x1, o]);
        assert_eq!(decomposable(&s, a), Check::no(a));
        assert!(decomposable(&s, x1).value.is_yes());
    }

    #[test]
    fn determinism_needs_contradictory_disjuncts() {
        let mut s = NnfStore::new(2);
        let (x1, x2) = (s.lit_code(1), s.lit_code(2));
        let o = s.or([x1, x2]);
        assert_eq!(deterministic(&s, o, &Oracle::default()).value, Tri::No);
        let nx1 = s.lit_code(-1);
        let f = s.false_node();
        let o2 = s.or([x1, nx1, f]);
        assert!(deterministic_structurally(&s, o2));
    }

    #[test]
    fn smoothness() {
        let mut s = NnfStore::new(2);
        let (x1, x2) = (s.lit_code(1), s.lit_code(2));
        let a = s.and([x1, x2]);
        let o = s.or([x1, a]);
        assert_eq!(smooth(&s, o).value, Tri::No);
        let single = s.or([a]);
        assert!(smooth(&s, single).value.is_yes());
    }

    #[test]
    fn cnf_classification() {
        let mut s = NnfStore::new(3);
        let f = cnf(&mut s, &[&[1, 2], &[2, 3]]);
        let r = classify(&s, f, None);
        assert_eq!(r.status(LanguageTag::Cnf), Tri::Yes);
        assert_eq!(r.status(LanguageTag::Dnnf), Tri::No);
        assert_eq!(r.witness(LanguageTag::Dnnf), Some(f));
        assert!(flat(&s, f).value.is_yes());
        assert_eq!(decision(&s, f).value, Tri::No);
    }

    #[test]
    fn pi_recognition() {
        let mut s = NnfStore::new(4);
        let f = cnf(&mut s, &[&[1, 2], &[3, 4]]);
        assert_eq!(is_pi(&s, f).unwrap(), Tri::Yes);
        let g = cnf(&mut s, &[&[1], &[1, 2]]);
        assert_eq!(is_pi(&s, g).unwrap(), Tri::No);
        let h = cnf(&mut s, &[&[1, 2], &[-1, 2]]);
        assert_eq!(is_pi(&s, h).unwrap(), Tri::No);
        let x1 = s.lit_code(1);
        let x2 = s.lit_code(2);
        let a = s.and([x1, x2]);
        let o = s.or([a, x1]);
        assert!(is_pi(&s, o).is_err());
    }

    #[test]
    fn bdd_languages() {
        let mut s = NnfStore::new(2);
        let (t, f) = (s.true_node(), s.false_node());
        let lo = s.decision(Var::new(2), t, f);
        let d = s.decision(Var::new(1), lo, f);
        let r = classify(&s, d, None);
        for l in [LanguageTag::Bdd, LanguageTag::Fbdd, LanguageTag::Obdd, LanguageTag::ObddLt, LanguageTag::DDnnf] {
            assert_eq!(r.status(l), Tri::Yes, "{l}");
        }
        // The low branch misses x2.
        assert_eq!(r.status(LanguageTag::SdDnnf), Tri::No);
        let rev: VarOrder = "2,1".parse().unwrap();
        assert_eq!(member(&s, d, LanguageTag::ObddLt, Some(&rev)).value, Tri::No);
        assert_eq!(member(&s, d, LanguageTag::Obdd, Some(&rev)).value, Tri::Yes);
    }

    #[test]
    fn lattice_is_coherent() {
        let mut s = NnfStore::new(2);
        let (a, b) = (s.lit_code(1), s.lit_code(-2));
        let t = s.and([a, b]);
        let m = s.or([t]);
        let r = classify(&s, m, None);
        for &l in &r.definite {
            for anc in l.ancestors() {
                assert!(r.definite.contains(&anc), "{l} without {anc}");
            }
        }
        assert_eq!(r.status(LanguageTag::Mods), Tri::Yes);
    }
}
