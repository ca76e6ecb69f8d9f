//! Parameterized separation families and a size-measurement report.
//!
//! Variable numbering:
//! - parity over `x1..xn`;
//! - pair clauses: clause `i` (0-based) is `x(2i+1) ∨ x(2i+2)`;
//! - equivalences: `x_i = i`, `y_i = n + i`;
//! - Chandra–Markowsky: `p_i = i`, `q_ij = k + (i−1)m + j`, guard `x = k + km + 1`.

use std::fmt;
use std::io::Write;

use num_bigint::BigUint;

use crate::bdd::{self, Obdd};
use crate::clausal;
use crate::compile::{self, CnfFormula};
use crate::error::{Error, Result};
use crate::nnf::{Clause, Lit, NnfStore, NodeId, Term, Var};
use crate::oracle::Oracle;
use crate::order::VarOrder;

/// Odd parity of `x1..xn` as a smooth d-DNNF built by halving.
pub fn gen_parity(store: &mut NnfStore, n: u32) -> Result<NodeId> {
    if n == 0 {
        return Err(Error::precondition("parity needs n ≥ 1"));
    }
    store.ensure_vars(n);
    Ok(parity_pair(store, 1, n).0)
}

/// (odd, even) over `x_lo..x_hi`.
fn parity_pair(store: &mut NnfStore, lo: u32, hi: u32) -> (NodeId, NodeId) {
    if lo == hi {
        let v = Var::new(lo);
        return (store.lit(v.pos()), store.lit(v.neg()));
    }
    let mid = lo + (hi - lo) / 2;
    let (oa, ea) = parity_pair(store, lo, mid);
    let (ob, eb) = parity_pair(store, mid + 1, hi);
    let odd_l = store.and([oa, eb]);
    let odd_r = store.and([ea, ob]);
    let even_l = store.and([oa, ob]);
    let even_r = store.and([ea, eb]);
    (store.or([odd_l, odd_r]), store.or([even_l, even_r]))
}

pub fn gen_pair_clauses(n: u32) -> CnfFormula {
    let clauses = (0..n)
        .map(|i| Clause::new([Var::new(2 * i + 1).pos(), Var::new(2 * i + 2).pos()]))
        .collect();
    CnfFormula::new(2 * n, clauses)
}

pub fn gen_equivalences(n: u32) -> CnfFormula {
    let mut clauses = Vec::with_capacity(2 * n as usize);
    for i in 1..=n {
        let (x, y) = (Var::new(i), Var::new(n + i));
        clauses.push(Clause::new([x.neg(), y.pos()]));
        clauses.push(Clause::new([x.pos(), y.neg()]));
    }
    CnfFormula::new(2 * n, clauses)
}

/// `x1, y1, x2, y2, …`: every equivalence is resolved before the next.
pub fn interleaved_order(n: u32) -> VarOrder {
    let v: Vec<u32> = (1..=n).flat_map(|i| [i, n + i]).collect();
    VarOrder::from_indices(&v).expect("permutation")
}

/// `x1..xn, y1..yn`: all `x` values must be remembered at the crossing.
pub fn blocked_order(n: u32) -> VarOrder {
    VarOrder::identity(2 * n)
}

#[derive(Clone, Copy, Debug)]
pub struct ChandraMarkowsky {
    /// `∨_{i,j} (x ∧ p_i ∧ q_ij) ∨ (¬x ∧ ∧_i ¬p_i)`, with `mk + 1` terms.
    pub sigma: NodeId,
    /// `∨_{i,j} (p_i ∧ q_ij) ∨ ∧_i ¬p_i`, equivalent to `∃x.Σ`.
    pub sigma_prime: NodeId,
    pub guard: Var,
}

pub fn cm_p(i: u32) -> Var {
    Var::new(i)
}

pub fn cm_q(k: u32, m: u32, i: u32, j: u32) -> Var {
    Var::new(k + (i - 1) * m + j)
}

pub fn gen_chandra_markowsky(store: &mut NnfStore, k: u32, m: u32) -> Result<ChandraMarkowsky> {
    if k == 0 || m == 0 {
        return Err(Error::precondition("Chandra–Markowsky needs k, m ≥ 1"));
    }
    let x = Var::new(k + k * m + 1);
    store.ensure_vars(x.index());
    let mut with_guard = Vec::new();
    let mut plain = Vec::new();
    for i in 1..=k {
        for j in 1..=m {
            let (p, q) = (cm_p(i).pos(), cm_q(k, m, i, j).pos());
            with_guard.push(Term::new([x.pos(), p, q]));
            plain.push(Term::new([p, q]));
        }
    }
    let none: Vec<Lit> = (1..=k).map(|i| cm_p(i).neg()).collect();
    with_guard.push(Term::new(none.iter().copied().chain([x.neg()])));
    plain.push(Term::new(none));
    Ok(ChandraMarkowsky {
        sigma: clausal::dnf_node(store, &with_guard),
        sigma_prime: clausal::dnf_node(store, &plain),
        guard: x,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Parity,
    Pairs,
    Equiv,
    Cm,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Parity => "parity",
            Family::Pairs => "pairs",
            Family::Equiv => "equiv",
            Family::Cm => "cm",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "parity" => Ok(Family::Parity),
            "pairs" | "pair_clauses" => Ok(Family::Pairs),
            "equiv" | "equivalences" => Ok(Family::Equiv),
            "cm" | "chandra_markowsky" => Ok(Family::Cm),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// OBDD node count, identity order (interleaved for `equiv`).
    Obdd,
    /// OBDD node count under the blocked order.
    ObddBlocked,
    /// Prime implicant count, the size of the smallest DNF for these families.
    Dnf,
    Ip,
    Pi,
    Mods,
    /// Edge count of the compiled d-DNNF.
    Ddnnf,
    /// Edge count of the generated sentence.
    Nnf,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Obdd => "obdd",
            Target::ObddBlocked => "obdd_blocked",
            Target::Dnf => "dnf",
            Target::Ip => "ip",
            Target::Pi => "pi",
            Target::Mods => "mods",
            Target::Ddnnf => "ddnnf",
            Target::Nnf => "nnf",
        }
    }

    pub fn metric(self) -> &'static str {
        match self {
            Target::Obdd | Target::ObddBlocked => "nodes",
            Target::Dnf | Target::Ip | Target::Mods => "terms",
            Target::Pi => "clauses",
            Target::Ddnnf | Target::Nnf => "edges",
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "obdd" => Ok(Target::Obdd),
            "obdd_blocked" => Ok(Target::ObddBlocked),
            "dnf" => Ok(Target::Dnf),
            "ip" => Ok(Target::Ip),
            "pi" => Ok(Target::Pi),
            "mods" => Ok(Target::Mods),
            "ddnnf" => Ok(Target::Ddnnf),
            "nnf" => Ok(Target::Nnf),
            _ => Err(format!("unknown target `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeValue {
    Count(BigUint),
    CapExceeded,
}

impl fmt::Display for SizeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeValue::Count(n) => n.fmt(f),
            SizeValue::CapExceeded => f.write_str("cap-exceeded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeRow {
    pub family: Family,
    pub params: String,
    pub target: Target,
    pub value: SizeValue,
}

impl SizeRow {
    pub fn count(&self) -> Option<u64> {
        match &self.value {
            SizeValue::Count(n) => u64::try_from(n).ok(),
            SizeValue::CapExceeded => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SizeConfig {
    pub family: Family,
    /// Inclusive range of `n`, or of `k` for `cm`.
    pub range: (u32, u32),
    /// Fixed `m` for `cm`.
    pub m: u32,
    pub targets: Vec<Target>,
    pub oracle: Oracle,
}

impl SizeConfig {
    pub fn new(family: Family, range: (u32, u32), targets: Vec<Target>) -> SizeConfig {
        SizeConfig {
            family,
            range,
            m: 2,
            targets,
            oracle: Oracle::default(),
        }
    }
}

/// A generated family member: a sentence, plus its CNF when it has one.
struct Instance {
    root: NodeId,
    cnf: Option<CnfFormula>,
    params: String,
    n: u32,
}

fn instance(store: &mut NnfStore, family: Family, p: u32, m: u32) -> Result<Instance> {
    Ok(match family {
        Family::Parity => Instance {
            root: gen_parity(store, p)?,
            cnf: None,
            params: format!("n={p}"),
            n: p,
        },
        Family::Pairs | Family::Equiv => {
            let f = if family == Family::Pairs {
                gen_pair_clauses(p)
            } else {
                gen_equivalences(p)
            };
            Instance {
                root: f.to_nnf(store),
                cnf: Some(f),
                params: format!("n={p}"),
                n: p,
            }
        }
        Family::Cm => Instance {
            root: gen_chandra_markowsky(store, p, m)?.sigma_prime,
            cnf: None,
            params: format!("k={p};m={m}"),
            n: p,
        },
    })
}

fn measure(store: &mut NnfStore, inst: &Instance, family: Family, target: Target, oracle: &Oracle) -> Result<BigUint> {
    let root = inst.root;
    let obdd = |store: &mut NnfStore, order: VarOrder| -> Result<usize> {
        let order = order.extended(store.num_vars());
        let d = match &inst.cnf {
            Some(f) => compile::compile_obdd(store, f, &order)?,
            None => Obdd::new(&order).from_nnf(store, root)?,
        };
        Ok(bdd::node_count(store, d).expect("diagram"))
    };
    let n = match target {
        Target::Obdd => {
            let order = if family == Family::Equiv {
                interleaved_order(inst.n)
            } else {
                VarOrder::identity(store.num_vars())
            };
            obdd(store, order)?
        }
        Target::ObddBlocked => {
            let order = if family == Family::Equiv {
                blocked_order(inst.n)
            } else {
                VarOrder::identity(store.num_vars())
            };
            obdd(store, order)?
        }
        Target::Dnf | Target::Ip => oracle.prime_implicants(store, root)?.len(),
        Target::Pi => oracle.prime_implicates(store, root)?.len(),
        Target::Mods => return oracle.count(store, root, &store.vars(root).clone()),
        Target::Ddnnf => {
            let f = match &inst.cnf {
                Some(f) => f.clone(),
                // Sentence-valued families are generated as d-DNNF already.
                None => return Ok(BigUint::from(store.size(root))),
            };
            let d = compile::compile_ddnnf(store, &f);
            store.size(d)
        }
        Target::Nnf => store.size(root),
    };
    Ok(BigUint::from(n))
}

/// Measures every (instance, target) cell; a cell over the oracle cap is
/// reported as such instead of aborting.
pub fn run_size_report(config: &SizeConfig) -> Result<Vec<SizeRow>> {
    let mut rows = Vec::new();
    for p in config.range.0..=config.range.1 {
        let mut store = NnfStore::new(0);
        let inst = instance(&mut store, config.family, p, config.m)?;
        for &target in &config.targets {
            let value = match measure(&mut store, &inst, config.family, target, &config.oracle) {
                Ok(n) => SizeValue::Count(n),
                Err(Error::OracleCap { .. }) => SizeValue::CapExceeded,
                Err(e) => return Err(e),
            };
            rows.push(SizeRow {
                family: config.family,
                params: inst.params.clone(),
                target,
                value,
            });
        }
    }
    Ok(rows)
}

/// CSV with header `family,params,target,metric,value`.
pub fn write_csv<W: Write>(rows: &[SizeRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["family", "params", "target", "metric", "value"]).map_err(io)?;
    for r in rows {
        w.write_record([
            r.family.name(),
            &r.params,
            r.target.name(),
            r.target.metric(),
            &r.value.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_of_one_is_a_literal() {
        let mut s = NnfStore::new(0);
        let r = gen_parity(&mut s, 1).unwrap();
        assert_eq!(r, s.lit_code(1));
    }

    #[test]
    fn parity_counts() {
        let mut s = NnfStore::new(0);
        let r = gen_parity(&mut s, 4).unwrap();
        let over = s.vars(r).clone();
        assert_eq!(Oracle::default().count(&s, r, &over).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn pair_clause_models() {
        let mut s = NnfStore::new(0);
        let r = gen_pair_clauses(2).to_nnf(&mut s);
        let over = s.vars(r).clone();
        assert_eq!(Oracle::default().count(&s, r, &over).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn equivalence_models() {
        let mut s = NnfStore::new(0);
        let r = gen_equivalences(1).to_nnf(&mut s);
        let over = s.vars(r).clone();
        assert_eq!(Oracle::default().count(&s, r, &over).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn cm_sigma_has_mk_plus_one_terms() {
        let mut s = NnfStore::new(0);
        let cm = gen_chandra_markowsky(&mut s, 2, 3).unwrap();
        assert_eq!(clausal::terms_of(&s, cm.sigma).unwrap().len(), 7);
    }

    #[test]
    fn csv_header() {
        let rows = run_size_report(&SizeConfig::new(Family::Parity, (2, 3), vec![Target::Obdd])).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "family,params,target,metric,value\nparity,n=2,obdd,nodes,5\nparity,n=3,obdd,nodes,7\n");
    }
}
