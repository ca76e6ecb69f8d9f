//! The eight transformations, each gated by the transformation capability
//! matrix and by a membership check on its operands.

mod negate;
mod smooth;

pub use negate::{de_morgan, negate_deterministic};
pub use smooth::{smooth, smooth_fbdd};

use crate::bdd::{self, BoolOp, Obdd};
use crate::capabilities::{self, Cell, Operation, TransformTag};
use crate::clausal;
use crate::error::{Error, Result};
use crate::language::LanguageTag::{self, *};
use crate::nnf::{Clause, NnfStore, Node, NodeId, Term, Var, VarSet};
use crate::order::VarOrder;
use crate::properties::require_member;

fn gate(store: &NnfStore, roots: &[NodeId], lang: LanguageTag, t: TransformTag) -> Result<()> {
    capabilities::require(lang, Operation::Transform(t))?;
    for &r in roots {
        require_member(store, r, lang)?;
    }
    Ok(())
}

fn clauses(store: &NnfStore, root: NodeId) -> Vec<Clause> {
    clausal::clauses_of(store, root).expect("member of a clausal language")
}

fn terms(store: &NnfStore, root: NodeId) -> Vec<Term> {
    clausal::terms_of(store, root).expect("member of a term language")
}

fn shared_order(store: &NnfStore, roots: &[NodeId]) -> Result<VarOrder> {
    bdd::common_order(store, roots)
        .ok_or_else(|| Error::precondition("operands are not ordered by a common variable order"))
}

/// Conditioning `Σ|γ`.
pub fn condition(store: &mut NnfStore, root: NodeId, gamma: &Term, lang: LanguageTag) -> Result<NodeId> {
    gate(store, &[root], lang, TransformTag::Cd)?;
    if !gamma.is_consistent() {
        return Err(Error::precondition("conditioning needs a consistent term"));
    }
    Ok(match lang {
        Bdd | Fbdd | Obdd | ObddLt => bdd::restrict(store, root, gamma)?,
        // A prime of Σ|γ is c|γ for some prime c of Σ, so minimizing the
        // conditioned primes is enough.
        Pi => {
            let cs = clausal::minimize_clauses(clausal::condition_clauses(&clauses(store, root), gamma));
            clausal::cnf_node(store, &cs)
        }
        Ip => {
            let ts = clausal::minimize_terms(clausal::condition_terms(&terms(store, root), gamma));
            clausal::dnf_node(store, &ts)
        }
        Cnf => {
            let cs = clausal::condition_clauses(&clauses(store, root), gamma);
            clausal::cnf_node(store, &cs)
        }
        Dnf => {
            let ts = clausal::condition_terms(&terms(store, root), gamma);
            clausal::dnf_node(store, &ts)
        }
        Mods => {
            let mut ts = clausal::condition_terms(&terms(store, root), gamma);
            ts.sort();
            ts.dedup();
            clausal::mods_node(store, &ts)
        }
        SNnf | SdDnnf => {
            let s = store.substitute(root, gamma);
            let s = store.simplify(s);
            smooth(store, s)
        }
        _ => {
            let s = store.substitute(root, gamma);
            store.simplify(s)
        }
    })
}

/// Forgetting `∃X.Σ`.
pub fn forget(store: &mut NnfStore, root: NodeId, xs: &VarSet, lang: LanguageTag) -> Result<NodeId> {
    gate(store, &[root], lang, TransformTag::Fo)?;
    Ok(forget_unchecked(store, root, xs, lang))
}

fn forget_unchecked(store: &mut NnfStore, root: NodeId, xs: &VarSet, lang: LanguageTag) -> NodeId {
    match lang {
        Pi => {
            let cs: Vec<Clause> = clauses(store, root)
                .into_iter()
                .filter(|c| c.vars().is_disjoint(xs))
                .collect();
            clausal::cnf_node(store, &cs)
        }
        Dnf | Mods => {
            let mut ts: Vec<Term> = terms(store, root)
                .iter()
                .map(|t| Term::new(t.lits().iter().copied().filter(|l| !xs.contains(l.var()))))
                .collect();
            ts.sort();
            ts.dedup();
            if lang == Mods {
                clausal::mods_node(store, &ts)
            } else {
                clausal::dnf_node(store, &ts)
            }
        }
        Dnnf => {
            let r = store.rebuild(root, |s, node, kids| match node {
                Node::Lit(l) if xs.contains(l.var()) => s.true_node(),
                Node::Lit(l) => s.lit(*l),
                Node::And(_) => s.and(kids.iter().copied()),
                Node::Or(_) => s.or(kids.iter().copied()),
                Node::True => s.true_node(),
                Node::False => s.false_node(),
            });
            store.simplify(r)
        }
        _ => unreachable!("gated by the capability matrix"),
    }
}

fn single(x: Var) -> VarSet {
    [x].into_iter().collect()
}

fn cofactors(store: &mut NnfStore, root: NodeId, x: Var) -> (NodeId, NodeId) {
    let hi = store.substitute(root, &Term::new([x.pos()]));
    let lo = store.substitute(root, &Term::new([x.neg()]));
    (store.simplify(hi), store.simplify(lo))
}

/// Forgetting a single variable, `Σ|x ∨ Σ|¬x`.
pub fn forget_single(store: &mut NnfStore, root: NodeId, x: Var, lang: LanguageTag) -> Result<NodeId> {
    gate(store, &[root], lang, TransformTag::Sfo)?;
    Ok(match lang {
        Dnnf | Dnf | Pi | Mods => forget_unchecked(store, root, &single(x), lang),
        Nnf | SNnf => {
            let (hi, lo) = cofactors(store, root, x);
            let r = store.or([hi, lo]);
            let r = store.simplify(r);
            if lang == SNnf {
                smooth(store, r)
            } else {
                r
            }
        }
        DNnf => {
            let (hi, lo) = cofactors(store, root, x);
            let n = negate_deterministic(store, hi);
            let rest = store.and([n, lo]);
            let r = store.or([hi, rest]);
            store.simplify(r)
        }
        FNnf => {
            let r = normalize_flat(store, root)?;
            match store.node(r) {
                Node::Or(_) => forget_unchecked(store, r, &single(x), Dnf),
                Node::Lit(l) if l.var() == x => store.true_node(),
                Node::And(_) => {
                    let cs = clausal::eliminate(&clauses(store, r), x);
                    clausal::cnf_node(store, &cs)
                }
                _ => r,
            }
        }
        Cnf => {
            let cs = clausal::eliminate(&clauses(store, root), x);
            clausal::cnf_node(store, &cs)
        }
        Bdd => {
            let hi = bdd::restrict(store, root, &Term::new([x.pos()]))?;
            let lo = bdd::restrict(store, root, &Term::new([x.neg()]))?;
            bdd::link_sink(store, hi, false, lo)?
        }
        Obdd | ObddLt => {
            let order = bdd::ordering_of(store, root)
                .ok_or_else(|| Error::precondition("operand is not an ordered diagram"))?
                .extended(store.num_vars());
            let hi = bdd::restrict(store, root, &Term::new([x.pos()]))?;
            let lo = bdd::restrict(store, root, &Term::new([x.neg()]))?;
            Obdd::new(&order).apply(store, BoolOp::Or, hi, lo)?
        }
        _ => unreachable!("gated by the capability matrix"),
    })
}

/// Conjunction of any number of sentences (∧C).
pub fn conjoin_many(store: &mut NnfStore, roots: &[NodeId], lang: LanguageTag) -> Result<NodeId> {
    gate(store, roots, lang, TransformTag::AndC)?;
    conjoin_many_unchecked(store, roots, lang)
}

fn conjoin_many_unchecked(store: &mut NnfStore, roots: &[NodeId], lang: LanguageTag) -> Result<NodeId> {
    Ok(match lang {
        Nnf | DNnf | SNnf => match roots {
            [one] => *one,
            _ => store.and(roots.iter().copied()),
        },
        Bdd => {
            let mut acc = store.true_node();
            for &r in roots.iter().rev() {
                acc = if store.is_true(acc) { r } else { bdd::link_sink(store, r, true, acc)? };
            }
            acc
        }
        Cnf => {
            let cs: Vec<Clause> = roots.iter().flat_map(|&r| clauses(store, r)).collect();
            let mut cs = cs;
            cs.sort();
            cs.dedup();
            clausal::cnf_node(store, &cs)
        }
        _ => unreachable!("gated by the capability matrix"),
    })
}

/// Disjunction of any number of sentences (∨C).
pub fn disjoin_many(store: &mut NnfStore, roots: &[NodeId], lang: LanguageTag) -> Result<NodeId> {
    gate(store, roots, lang, TransformTag::OrC)?;
    disjoin_many_unchecked(store, roots, lang)
}

fn disjoin_many_unchecked(store: &mut NnfStore, roots: &[NodeId], lang: LanguageTag) -> Result<NodeId> {
    if let [one] = roots {
        return Ok(*one);
    }
    Ok(match lang {
        Nnf | Dnnf => store.or(roots.iter().copied()),
        SNnf => {
            let r = store.or(roots.iter().copied());
            smooth(store, r)
        }
        // ∨_i (Σ_i ∧ ¬Σ_1 ∧ … ∧ ¬Σ_{i−1}); disjuncts are pairwise exclusive.
        DNnf => {
            let mut negs = Vec::with_capacity(roots.len());
            let mut disjuncts = Vec::with_capacity(roots.len());
            for &r in roots {
                let mut parts = vec![r];
                parts.extend(negs.iter().copied());
                disjuncts.push(if parts.len() == 1 { r } else { store.and(parts) });
                negs.push(negate_deterministic(store, r));
            }
            store.or(disjuncts)
        }
        Bdd => {
            let mut acc = store.false_node();
            for &r in roots.iter().rev() {
                acc = if store.is_false(acc) { r } else { bdd::link_sink(store, r, false, acc)? };
            }
            acc
        }
        Dnf => {
            let mut ts: Vec<Term> = roots.iter().flat_map(|&r| terms(store, r)).collect();
            ts.sort();
            ts.dedup();
            clausal::dnf_node(store, &ts)
        }
        _ => unreachable!("gated by the capability matrix"),
    })
}

/// Bounded conjunction (∧BC).
pub fn apply_and(store: &mut NnfStore, a: NodeId, b: NodeId, lang: LanguageTag) -> Result<NodeId> {
    gate(store, &[a, b], lang, TransformTag::AndBc)?;
    if capabilities::transform_cell(lang, TransformTag::AndC) == Cell::Supported {
        return conjoin_many_unchecked(store, &[a, b], lang);
    }
    Ok(match lang {
        Dnf | Mods => {
            let (ta, tb) = (terms(store, a), terms(store, b));
            let mut ts: Vec<Term> = ta
                .iter()
                .flat_map(|x| tb.iter().map(move |y| x.conjoin(y)))
                .filter(Term::is_consistent)
                .collect();
            ts.sort();
            ts.dedup();
            if lang == Mods {
                clausal::mods_node(store, &ts)
            } else {
                clausal::dnf_node(store, &ts)
            }
        }
        Ip => {
            let ts = clausal::ip_and(&terms(store, a), &terms(store, b));
            clausal::dnf_node(store, &ts)
        }
        ObddLt => {
            let order = shared_order(store, &[a, b])?;
            Obdd::new(&order).apply(store, BoolOp::And, a, b)?
        }
        _ => unreachable!("gated by the capability matrix"),
    })
}

/// Bounded disjunction (∨BC).
pub fn apply_or(store: &mut NnfStore, a: NodeId, b: NodeId, lang: LanguageTag) -> Result<NodeId> {
    gate(store, &[a, b], lang, TransformTag::OrBc)?;
    if capabilities::transform_cell(lang, TransformTag::OrC) == Cell::Supported {
        return disjoin_many_unchecked(store, &[a, b], lang);
    }
    Ok(match lang {
        Cnf => {
            let (ca, cb) = (clauses(store, a), clauses(store, b));
            let mut cs: Vec<Clause> = ca
                .iter()
                .flat_map(|x| cb.iter().map(move |y| clausal::disjoin_clauses(x, y)))
                .filter(|c| !c.is_tautology())
                .collect();
            cs.sort();
            cs.dedup();
            clausal::cnf_node(store, &cs)
        }
        Pi => {
            let cs = clausal::pi_or(&clauses(store, a), &clauses(store, b));
            clausal::cnf_node(store, &cs)
        }
        ObddLt => {
            let order = shared_order(store, &[a, b])?;
            Obdd::new(&order).apply(store, BoolOp::Or, a, b)?
        }
        _ => unreachable!("gated by the capability matrix"),
    })
}

/// Negation (¬C).
pub fn negate(store: &mut NnfStore, root: NodeId, lang: LanguageTag) -> Result<NodeId> {
    gate(store, &[root], lang, TransformTag::NotC)?;
    Ok(match lang {
        Nnf | FNnf => de_morgan(store, root),
        SNnf => {
            let r = de_morgan(store, root);
            smooth(store, r)
        }
        DNnf => negate_deterministic(store, root),
        Bdd | Fbdd | Obdd | ObddLt => bdd::swap_sinks(store, root)?,
        _ => unreachable!("gated by the capability matrix"),
    })
}

/// `Σ ∨ γ` for a d-DNNF `Σ` and a clause `γ = l_1 ∨ … ∨ l_n`, built as
/// `((Σ|α) ∧ α) ∨ β` with `α = ¬γ` and `β = ∨_i (l_i ∧ ¬l_1 ∧ … ∧ ¬l_{i−1})`.
pub fn or_clause_ddnnf(store: &mut NnfStore, root: NodeId, gamma: &Clause) -> Result<NodeId> {
    require_member(store, root, DDnnf)?;
    if gamma.is_tautology() {
        return Ok(store.true_node());
    }
    if gamma.is_empty() {
        return Ok(root);
    }
    let alpha = gamma.negation();
    let cond = store.substitute(root, &alpha);
    let cond = store.simplify(cond);
    let mut left = vec![cond];
    left.extend(alpha.lits().iter().map(|&l| store.lit(l)));
    let mut disjuncts = vec![store.and(left)];
    let lits = gamma.lits();
    for (i, &l) in lits.iter().enumerate() {
        let mut parts = vec![store.lit(l)];
        parts.extend(lits[..i].iter().map(|&p| store.lit(!p)));
        disjuncts.push(if parts.len() == 1 { parts[0] } else { store.and(parts) });
    }
    Ok(store.or(disjuncts))
}

/// Turns a flat sentence into a CNF (And root) or DNF (Or root): valid
/// clauses and inconsistent terms go away and constants are folded.
pub fn normalize_flat(store: &mut NnfStore, root: NodeId) -> Result<NodeId> {
    if !crate::properties::flat(store, root).value.is_yes() {
        return Err(Error::precondition("normalize_flat expects a flat sentence"));
    }
    let node = store.node(root).clone();
    Ok(match node {
        Node::And(kids) => {
            let mut cs = Vec::new();
            for &k in kids.iter() {
                match store.node(k) {
                    Node::True => {}
                    Node::False => cs.push(Clause::default()),
                    Node::Lit(l) => cs.push(Clause::new([*l])),
                    Node::Or(ls) => {
                        if ls.iter().any(|&x| store.is_true(x)) {
                            continue;
                        }
                        let c = Clause::new(ls.iter().filter_map(|&x| store.node(x).as_lit()));
                        if !c.is_tautology() {
                            cs.push(c);
                        }
                    }
                    Node::And(_) => unreachable!("flat"),
                }
            }
            cs.sort();
            cs.dedup();
            clausal::cnf_node(store, &cs)
        }
        Node::Or(kids) => {
            let mut ts = Vec::new();
            for &k in kids.iter() {
                match store.node(k) {
                    Node::False => {}
                    Node::True => ts.push(Term::default()),
                    Node::Lit(l) => ts.push(Term::new([*l])),
                    Node::And(ls) => {
                        if ls.iter().any(|&x| store.is_false(x)) {
                            continue;
                        }
                        let t = Term::new(ls.iter().filter_map(|&x| store.node(x).as_lit()));
                        if t.is_consistent() {
                            ts.push(t);
                        }
                    }
                    Node::Or(_) => unreachable!("flat"),
                }
            }
            ts.sort();
            ts.dedup();
            clausal::dnf_node(store, &ts)
        }
        _ => root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use crate::properties::{self, Tri};

    fn oracle() -> Oracle {
        Oracle::default()
    }

    fn t(codes: &[i64]) -> Term {
        Term::from_dimacs(codes).unwrap()
    }

    fn c(codes: &[i64]) -> Clause {
        Clause::from_dimacs(codes).unwrap()
    }

    #[test]
    fn condition_and_on_a() {
        let mut s = NnfStore::new(2);
        let (a, b) = (s.lit_code(1), s.lit_code(2));
        let r = s.and([a, b]);
        assert_eq!(condition(&mut s, r, &t(&[1]), Nnf).unwrap(), b);
        let raw = s.substitute(r, &t(&[1]));
        let tr = s.true_node();
        assert_eq!(s.node(raw).children(), &[tr, b]);
    }

    #[test]
    fn condition_ip_keeps_weakest_terms() {
        let mut s = NnfStore::new(3);
        // {x1x2, ¬x1x3} alone misses the consensus x2x3.
        let ip = clausal::dnf_node(&mut s, &[t(&[1, 2]), t(&[-1, 3]), t(&[2, 3])]);
        let r = condition(&mut s, ip, &t(&[1]), Ip).unwrap();
        assert_eq!(r, s.lit_code(2));
    }

    #[test]
    fn inconsistent_term_is_rejected() {
        let mut s = NnfStore::new(1);
        let a = s.lit_code(1);
        let bad = Term::new([Var::new(1).pos(), Var::new(1).neg()]);
        assert!(matches!(condition(&mut s, a, &bad, Nnf), Err(Error::Precondition(_))));
    }

    #[test]
    fn forget_dnnf_selector() {
        let mut s = NnfStore::new(3);
        let l: Vec<NodeId> = [1, 2, -1, 3].iter().map(|&i| s.lit_code(i)).collect();
        let a = s.and([l[0], l[1]]);
        let b = s.and([l[2], l[3]]);
        let r = s.or([a, b]);
        let f = forget(&mut s, r, &single(Var::new(1)), Dnnf).unwrap();
        let want = s.or([l[1], l[3]]);
        assert_eq!(f, want);
        assert_eq!(forget(&mut s, r, &VarSet::new(), Dnnf).unwrap(), s.simplify(r));
    }

    #[test]
    fn forget_pi_keeps_clauses_avoiding_x() {
        let mut s = NnfStore::new(3);
        let pi = clausal::cnf_node(&mut s, &[c(&[1, 2]), c(&[2, 3])]);
        let r = forget(&mut s, pi, &single(Var::new(1)), Pi).unwrap();
        assert_eq!(clausal::clauses_of(&s, r).unwrap(), vec![c(&[2, 3])]);
    }

    #[test]
    fn forget_single_cnf_resolves() {
        let mut s = NnfStore::new(3);
        let f = clausal::cnf_node(&mut s, &[c(&[1, 2]), c(&[-1, 3])]);
        let r = forget_single(&mut s, f, Var::new(1), Cnf).unwrap();
        assert_eq!(clausal::clauses_of(&s, r).unwrap(), vec![c(&[2, 3])]);
    }

    #[test]
    fn forget_single_obdd() {
        let mut s = NnfStore::new(2);
        let order = VarOrder::identity(2);
        let mut b = Obdd::new(&order);
        let (x1, x2) = (b.literal(&mut s, Var::new(1).pos()), b.literal(&mut s, Var::new(2).pos()));
        let f = b.apply(&mut s, BoolOp::And, x1, x2).unwrap();
        assert_eq!(forget_single(&mut s, f, Var::new(1), ObddLt).unwrap(), x2);
    }

    #[test]
    fn fo_refused_for_obdd() {
        let mut s = NnfStore::new(1);
        let (t_, f_) = (s.true_node(), s.false_node());
        let d = s.decision(Var::new(1), t_, f_);
        let e = forget(&mut s, d, &single(Var::new(1)), Obdd).unwrap_err();
        assert!(matches!(e, Error::Capability { .. }));
        assert!(e.to_string().contains("transformation capability matrix"));
    }

    #[test]
    fn negate_sink_swap_and_d_nnf() {
        let mut s = NnfStore::new(2);
        let (t_, f_) = (s.true_node(), s.false_node());
        let d = s.decision(Var::new(1), t_, f_);
        assert_eq!(negate(&mut s, d, Obdd).unwrap(), s.decision(Var::new(1), f_, t_));
        let (a, na, b) = (s.lit_code(1), s.lit_code(-1), s.lit_code(2));
        let right = s.and([na, b]);
        let o = s.or([a, right]);
        let n = negate(&mut s, o, DNnf).unwrap();
        let n_right = negate_deterministic(&mut s, right);
        assert_eq!(n, s.and([na, n_right]));
    }

    #[test]
    fn bdd_conjunction_sizes_add_up() {
        let mut s = NnfStore::new(3);
        let (t_, f_) = (s.true_node(), s.false_node());
        let ds: Vec<NodeId> = (1..=3).map(|i| s.decision(Var::new(i), t_, f_)).collect();
        let r = conjoin_many(&mut s, &ds, Bdd).unwrap();
        let sum: usize = ds.iter().map(|&d| bdd::decision_count(&s, d).unwrap()).sum();
        assert_eq!(bdd::decision_count(&s, r), Some(sum));
        let all = s.and(ds.clone());
        assert!(oracle().equivalent(&s, r, all).unwrap());
    }

    #[test]
    fn mods_product_over_disjoint_vars() {
        let mut s = NnfStore::new(2);
        let a = clausal::mods_node(&mut s, &[t(&[1])]);
        let b = clausal::mods_node(&mut s, &[t(&[2])]);
        let r = apply_and(&mut s, a, b, Mods).unwrap();
        assert_eq!(clausal::terms_of(&s, r).unwrap(), vec![t(&[1, 2])]);
        assert_eq!(properties::member(&s, r, Mods, None).value, Tri::Yes);
    }

    #[test]
    fn pi_disjunction_is_prime() {
        let mut s = NnfStore::new(4);
        let a = clausal::cnf_node(&mut s, &[c(&[1, 2, 3])]);
        let b = clausal::cnf_node(&mut s, &[c(&[4])]);
        let r = apply_or(&mut s, a, b, Pi).unwrap();
        assert_eq!(properties::is_pi(&s, r).unwrap(), Tri::Yes);
        let mut want = oracle().prime_implicates(&s, r).unwrap();
        want.sort();
        assert_eq!(clausal::clauses_of(&s, r).unwrap(), want);
    }

    #[test]
    fn or_clause_examples() {
        let mut s = NnfStore::new(3);
        let a = s.lit_code(1);
        let r = or_clause_ddnnf(&mut s, a, &c(&[2, 3])).unwrap();
        let want = s.clause(&c(&[1, 2, 3]));
        assert!(oracle().equivalent(&s, r, want).unwrap());
        assert_eq!(properties::member(&s, r, DDnnf, None).value, Tri::Yes);
        let taut = Clause::new([Var::new(2).pos(), Var::new(2).neg()]);
        let r = or_clause_ddnnf(&mut s, a, &taut).unwrap();
        assert!(s.is_true(r));
    }

    #[test]
    fn normalize_flat_cases() {
        let mut s = NnfStore::new(2);
        let (a, na, b) = (s.lit_code(1), s.lit_code(-1), s.lit_code(2));
        let valid = s.or([a, na]);
        let r = s.and([valid, b]);
        assert_eq!(normalize_flat(&mut s, r).unwrap(), b);
        let o = s.or([a, b]);
        assert_eq!(normalize_flat(&mut s, o).unwrap(), o);
        assert_eq!(normalize_flat(&mut s, a).unwrap(), a);
        let deep = s.or([r, a]);
        assert!(normalize_flat(&mut s, deep).is_err());
    }
}
