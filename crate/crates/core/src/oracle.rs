//! Brute-force truth-table semantics. Exponential, capped, and independent
//! of every structural algorithm in the crate.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::nnf::{Assignment, Clause, Lit, NnfStore, Node, NodeId, Term, VarSet};

pub const DEFAULT_MODEL_CAP: usize = 20;
pub const DEFAULT_PRIME_CAP: usize = 14;

// rows per evaluation block, in 64-bit words
const BLOCK_WORDS: usize = 64;

const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Function table over a sorted variable set. Row `r` assigns the first
/// variable the most significant bit of `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    vars: VarSet,
    bits: Vec<u64>,
}

impl TruthTable {
    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn rows(&self) -> u64 {
        1u64 << self.vars.len()
    }

    pub fn get(&self, row: u64) -> bool {
        (self.bits[(row / 64) as usize] >> (row % 64)) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.rows()
    }

    pub fn complement(&self) -> TruthTable {
        let mask = row_mask(self.vars.len());
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        if let Some(last) = bits.last_mut() {
            *last &= mask;
        }
        TruthTable {
            vars: self.vars.clone(),
            bits,
        }
    }

    /// True when every row of `self` is also a row of `other`.
    pub fn subset_of(&self, other: &TruthTable) -> bool {
        assert_eq!(self.vars, other.vars, "tables over different variables");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn disjoint_from(&self, other: &TruthTable) -> bool {
        assert_eq!(self.vars, other.vars, "tables over different variables");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn model_rows(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.rows()).filter(|&r| self.get(r))
    }
}

fn row_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u64 << n)) - 1
    }
}

/// Models over a declared variable set, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSet {
    over: VarSet,
    models: Vec<Assignment>,
}

impl ModelSet {
    pub fn new(over: VarSet, mut models: Vec<Assignment>) -> ModelSet {
        models.sort();
        models.dedup();
        ModelSet { over, models }
    }

    pub fn over(&self) -> &VarSet {
        &self.over
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn models(&self) -> &[Assignment] {
        &self.models
    }

    pub fn bit_strings(&self) -> Vec<String> {
        self.models.iter().map(Assignment::bit_string).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub model_cap: usize,
    pub prime_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            model_cap: DEFAULT_MODEL_CAP,
            prime_cap: DEFAULT_PRIME_CAP,
        }
    }
}

impl Oracle {
    pub fn new(model_cap: usize, prime_cap: usize) -> Oracle {
        Oracle {
            model_cap,
            prime_cap,
        }
    }

    fn check_cap(&self, n: usize, cap: usize) -> Result<()> {
        if n > cap {
            Err(Error::OracleCap { needed: n, cap })
        } else {
            Ok(())
        }
    }

    /// Truth table of `root` over `over`, which must contain its variables.
    pub fn table(&self, store: &NnfStore, root: NodeId, over: &VarSet) -> Result<TruthTable> {
        self.tables(store, &[root], over).map(|mut v| v.pop().expect("one root"))
    }

    /// Truth tables of several roots over one variable set, sharing the
    /// evaluation of common subgraphs.
    pub fn tables(&self, store: &NnfStore, roots: &[NodeId], over: &VarSet) -> Result<Vec<TruthTable>> {
        self.check_cap(over.len(), self.model_cap)?;
        for &r in roots {
            if !store.vars(r).is_subset(over) {
                return Err(Error::precondition(format!(
                    "variables {} not contained in {}",
                    store.vars(r),
                    over
                )));
            }
        }
        let n = over.len();
        let rows = 1usize << n;
        let words = rows.div_ceil(64);
        let block = words.min(BLOCK_WORDS);

        let mut order: Vec<NodeId> = roots.iter().flat_map(|&r| store.reachable(r)).collect();
        order.sort();
        order.dedup();
        let local: HashMap<NodeId, usize> = order.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut out: Vec<Vec<u64>> = vec![Vec::with_capacity(words); roots.len()];
        let mut buf = vec![0u64; order.len() * block];
        let mut w0 = 0;
        while w0 < words {
            let bw = block.min(words - w0);
            for (k, &id) in order.iter().enumerate() {
                for w in 0..bw {
                    let word = w0 + w;
                    let v = match store.node(id) {
                        Node::True => u64::MAX,
                        Node::False => 0,
                        Node::Lit(l) => lit_word(l, over, word),
                        Node::And(c) => c
                            .iter()
                            .fold(u64::MAX, |acc, ch| acc & buf[local[ch] * block + w]),
                        Node::Or(c) => c.iter().fold(0, |acc, ch| acc | buf[local[ch] * block + w]),
                    };
                    buf[k * block + w] = v;
                }
            }
            for (slot, r) in out.iter_mut().zip(roots) {
                let k = local[r];
                slot.extend_from_slice(&buf[k * block..k * block + bw]);
            }
            w0 += bw;
        }
        let mask = row_mask(n);
        Ok(out
            .into_iter()
            .map(|mut bits| {
                if let Some(last) = bits.last_mut() {
                    *last &= mask;
                }
                TruthTable {
                    vars: over.clone(),
                    bits,
                }
            })
            .collect())
    }

    pub fn models(&self, store: &NnfStore, root: NodeId, over: &VarSet) -> Result<ModelSet> {
        let t = self.table(store, root, over)?;
        let models = t.model_rows().map(|r| Assignment::from_row(over, r)).collect();
        Ok(ModelSet::new(over.clone(), models))
    }

    pub fn count(&self, store: &NnfStore, root: NodeId, over: &VarSet) -> Result<BigUint> {
        Ok(BigUint::from(self.table(store, root, over)?.count()))
    }

    pub fn is_consistent(&self, store: &NnfStore, root: NodeId) -> Result<bool> {
        Ok(!self.table(store, root, store.vars(root))?.is_zero())
    }

    pub fn is_valid(&self, store: &NnfStore, root: NodeId) -> Result<bool> {
        Ok(self.table(store, root, store.vars(root))?.is_full())
    }

    pub fn entails(&self, store: &NnfStore, a: NodeId, b: NodeId) -> Result<bool> {
        let over = store.vars(a).union(store.vars(b));
        let t = self.tables(store, &[a, b], &over)?;
        Ok(t[0].subset_of(&t[1]))
    }

    pub fn equivalent(&self, store: &NnfStore, a: NodeId, b: NodeId) -> Result<bool> {
        let over = store.vars(a).union(store.vars(b));
        let t = self.tables(store, &[a, b], &over)?;
        Ok(t[0] == t[1])
    }

    /// Whether every pair of `children` has disjoint model sets.
    pub fn pairwise_disjoint(&self, store: &NnfStore, children: &[NodeId]) -> Result<bool> {
        let over = children
            .iter()
            .fold(VarSet::new(), |acc, &c| acc.union(store.vars(c)));
        let tables = self.tables(store, children, &over)?;
        for (i, a) in tables.iter().enumerate() {
            for b in &tables[i + 1..] {
                if !a.disjoint_from(b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Entailment-maximal implicant terms over the sentence's variables.
    pub fn prime_implicants(&self, store: &NnfStore, root: NodeId) -> Result<Vec<Term>> {
        let vars = store.vars(root).clone();
        self.check_cap(vars.len(), self.prime_cap)?;
        let t = self.table(store, root, &vars)?;
        Ok(primes_of_table(&t))
    }

    /// Subsumption-minimal implicate clauses over the sentence's variables.
    pub fn prime_implicates(&self, store: &NnfStore, root: NodeId) -> Result<Vec<Clause>> {
        let vars = store.vars(root).clone();
        self.check_cap(vars.len(), self.prime_cap)?;
        let t = self.table(store, root, &vars)?.complement();
        let mut out: Vec<Clause> = primes_of_table(&t).iter().map(Term::negation).collect();
        out.sort();
        Ok(out)
    }
}

fn lit_word(l: &Lit, over: &VarSet, word: usize) -> u64 {
    let n = over.len();
    let i = over.position(l.var()).expect("checked subset");
    let bit = n - 1 - i;
    let w = if bit < 6 {
        PATTERNS[bit]
    } else if ((word as u64 * 64) >> bit) & 1 == 1 {
        u64::MAX
    } else {
        0
    };
    if l.is_positive() {
        w
    } else {
        !w
    }
}

/// Prime implicants of a table by dynamic programming over all 3^n terms.
/// Digit j of a term code is 0 if position j is absent, 1 if negative,
/// 2 if positive.
fn primes_of_table(t: &TruthTable) -> Vec<Term> {
    let vars = t.vars();
    let n = vars.len();
    let pow3: Vec<usize> = (0..=n).map(|j| 3usize.pow(j as u32)).collect();
    let total = pow3[n];
    let mut imp = vec![false; total];
    let mut digits = vec![2u8; n];
    for code in (0..total).rev() {
        let value = match digits.iter().position(|&d| d == 0) {
            Some(j) => imp[code + pow3[j]] && imp[code + 2 * pow3[j]],
            None => {
                let row = digits
                    .iter()
                    .fold(0u64, |acc, &d| (acc << 1) | u64::from(d == 2));
                t.get(row)
            }
        };
        imp[code] = value;
        decrement(&mut digits);
    }
    let mut primes = Vec::new();
    let mut digits = vec![0u8; n];
    for code in 0..total {
        if imp[code] {
            let prime = digits
                .iter()
                .enumerate()
                .all(|(j, &d)| d == 0 || !imp[code - d as usize * pow3[j]]);
            if prime {
                let lits = digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d != 0)
                    .map(|(j, &d)| Lit::new(vars.as_slice()[j], d == 2));
                primes.push(Term::new(lits));
            }
        }
        increment(&mut digits);
    }
    primes.sort();
    primes
}

fn decrement(digits: &mut [u8]) {
    for d in digits.iter_mut() {
        if *d > 0 {
            *d -= 1;
            return;
        }
        *d = 2;
    }
}

fn increment(digits: &mut [u8]) {
    for d in digits.iter_mut() {
        if *d < 2 {
            *d += 1;
            return;
        }
        *d = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(codes: &[i64]) -> Term {
        Term::from_dimacs(codes).unwrap()
    }

    #[test]
    fn or_has_three_models() {
        let mut s = NnfStore::new(2);
        let a = s.lit_code(1);
        let b = s.lit_code(2);
        let o = s.or([a, b]);
        let m = Oracle::default().models(&s, o, &VarSet::first(2)).unwrap();
        assert_eq!(m.bit_strings(), vec!["01", "10", "11"]);
        let f = s.false_node();
        assert!(Oracle::default().models(&s, f, &VarSet::first(1)).unwrap().is_empty());
    }

    #[test]
    fn wide_tables_match_direct_evaluation() {
        // 9 variables crosses the in-word/whole-word boundary
        let mut s = NnfStore::new(9);
        let l: Vec<NodeId> = (1..=9).map(|i| s.lit_code(if i % 2 == 0 { -i } else { i })).collect();
        let a = s.and([l[0], l[8]]);
        let b = s.and([l[3], l[6], l[7]]);
        let r = s.or([a, b]);
        let over = VarSet::first(9);
        let t = Oracle::default().table(&s, r, &over).unwrap();
        for row in 0..512 {
            let asg = Assignment::from_row(&over, row);
            assert_eq!(t.get(row), s.evaluate(r, &asg).unwrap(), "row {row}");
        }
    }

    #[test]
    fn cap_is_a_hard_error() {
        let mut s = NnfStore::new(0);
        let x = s.lit_code(21);
        let r = Oracle::default().models(&s, x, &VarSet::first(21));
        assert!(matches!(r, Err(Error::OracleCap { needed: 21, cap: 20 })));
    }

    #[test]
    fn primes_of_pair_clauses() {
        let mut s = NnfStore::new(4);
        let l: Vec<NodeId> = (1..=4).map(|i| s.lit_code(i)).collect();
        let c1 = s.or([l[0], l[1]]);
        let c2 = s.or([l[2], l[3]]);
        let f = s.and([c1, c2]);
        let o = Oracle::default();
        let pis = o.prime_implicants(&s, f).unwrap();
        assert_eq!(pis, vec![term(&[1, 3]), term(&[1, 4]), term(&[2, 3]), term(&[2, 4])]);
        let pcs = o.prime_implicates(&s, f).unwrap();
        assert_eq!(pcs.len(), 2);
        let x = s.lit_code(1);
        assert_eq!(o.prime_implicates(&s, x).unwrap(), vec![Clause::from_dimacs(&[1]).unwrap()]);
    }

    #[test]
    fn constants_have_degenerate_primes() {
        let s = NnfStore::new(0);
        let o = Oracle::default();
        assert_eq!(o.prime_implicants(&s, s.true_node()).unwrap(), vec![Term::default()]);
        assert!(o.prime_implicants(&s, s.false_node()).unwrap().is_empty());
        assert_eq!(o.prime_implicates(&s, s.false_node()).unwrap(), vec![Clause::default()]);
    }

    #[test]
    fn disjointness() {
        let mut s = NnfStore::new(2);
        let (a, b, na, nb) = (s.lit_code(1), s.lit_code(2), s.lit_code(-1), s.lit_code(-2));
        let l = s.and([na, b]);
        let r = s.and([nb, a]);
        let o = Oracle::default();
        assert!(o.pairwise_disjoint(&s, &[l, r]).unwrap());
        assert!(!o.pairwise_disjoint(&s, &[a, a]).unwrap());
        let f = s.false_node();
        assert!(o.pairwise_disjoint(&s, &[a, na, f]).unwrap());
    }
}
