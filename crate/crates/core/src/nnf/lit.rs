use std::fmt;
use std::ops::Not;

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// # Panics
    ///
    /// Panics if `index` is zero.
    pub fn new(index: u32) -> Var {
        assert!(index >= 1, "variable indices start at 1");
        Var(index)
    }

    pub fn try_new(index: u32) -> Option<Var> {
        (index >= 1).then_some(Var(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A signed variable. Literals order by variable first, with the negative
/// literal before the positive one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit { var, positive }
    }

    /// Reads a DIMACS-signed integer; zero is not a literal.
    pub fn from_dimacs(code: i64) -> Option<Lit> {
        let index = u32::try_from(code.unsigned_abs()).ok()?;
        Var::try_new(index).map(|v| Lit::new(v, code > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var.0);
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit::new(self.var, !self.positive)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A finite set of variables, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(Vec<Var>);

impl VarSet {
    pub fn new() -> VarSet {
        VarSet(Vec::new())
    }

    /// The variables `1..=n`.
    pub fn first(n: u32) -> VarSet {
        VarSet((1..=n).map(Var).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: Var) {
        if let Err(at) = self.0.binary_search(&v) {
            self.0.insert(at, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Var] {
        &self.0
    }

    /// Position of `v` in the sorted order.
    pub fn position(&self, v: Var) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        VarSet(out)
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        VarSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VarSet) -> VarSet {
        VarSet(self.iter().filter(|&v| other.contains(v)).collect())
    }
}

impl FromIterator<Var> for VarSet {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> VarSet {
        let mut vars: Vec<Var> = iter.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        VarSet(vars)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v.0)?;
        }
        f.write_str("}")
    }
}

fn canonical_lits<I: IntoIterator<Item = Lit>>(lits: I) -> Vec<Lit> {
    let mut lits: Vec<Lit> = lits.into_iter().collect();
    lits.sort_unstable();
    lits.dedup();
    lits
}

fn has_complementary_pair(lits: &[Lit]) -> bool {
    // sorted by var, so complements are adjacent
    lits.windows(2).any(|w| w[0].var == w[1].var)
}

fn write_lits(f: &mut fmt::Formatter<'_>, lits: &[Lit]) -> fmt::Result {
    for (i, l) in lits.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A disjunctively interpreted, duplicate-free set of literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Lit>);

impl Clause {
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Clause {
        Clause(canonical_lits(lits))
    }

    /// Builds a clause from DIMACS-signed integers; `None` if any is zero.
    pub fn from_dimacs(codes: &[i64]) -> Option<Clause> {
        codes
            .iter()
            .map(|&c| Lit::from_dimacs(c))
            .collect::<Option<Vec<_>>>()
            .map(Clause::new)
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    /// Valid clauses contain a literal and its complement.
    pub fn is_tautology(&self) -> bool {
        has_complementary_pair(&self.0)
    }

    /// `self` subsumes `other` when its literals are a subset of `other`'s.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|&l| other.contains(l))
    }

    pub fn vars(&self) -> VarSet {
        self.0.iter().map(|l| l.var).collect()
    }

    pub fn negation(&self) -> Term {
        Term(self.0.iter().map(|&l| !l).collect())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lits(f, &self.0)
    }
}

/// A conjunctively interpreted, duplicate-free set of literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Vec<Lit>);

impl Term {
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Term {
        Term(canonical_lits(lits))
    }

    pub fn from_dimacs(codes: &[i64]) -> Option<Term> {
        codes
            .iter()
            .map(|&c| Lit::from_dimacs(c))
            .collect::<Option<Vec<_>>>()
            .map(Term::new)
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn is_consistent(&self) -> bool {
        !has_complementary_pair(&self.0)
    }

    /// Value this term assigns to `v`, if it mentions it.
    pub fn value_of(&self, v: Var) -> Option<bool> {
        if self.contains(v.pos()) {
            Some(true)
        } else if self.contains(v.neg()) {
            Some(false)
        } else {
            None
        }
    }

    /// `self` is a subset of `other`, i.e. `other` entails `self`.
    pub fn is_subset_of(&self, other: &Term) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|&l| other.contains(l))
    }

    pub fn vars(&self) -> VarSet {
        self.0.iter().map(|l| l.var).collect()
    }

    pub fn negation(&self) -> Clause {
        Clause(self.0.iter().map(|&l| !l).collect())
    }

    pub fn conjoin(&self, other: &Term) -> Term {
        Term::new(self.0.iter().chain(other.0.iter()).copied())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lits(f, &self.0)
    }
}

/// A total truth assignment over a sorted set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    vars: VarSet,
    values: Vec<bool>,
}

impl Assignment {
    /// # Panics
    ///
    /// Panics if `values` does not have one entry per variable.
    pub fn new(vars: VarSet, values: Vec<bool>) -> Assignment {
        assert_eq!(vars.len(), values.len(), "one value per variable");
        Assignment { vars, values }
    }

    /// Assignment over `vars` whose bit string is the binary expansion of
    /// `row`, first variable most significant.
    pub fn from_row(vars: &VarSet, row: u64) -> Assignment {
        let n = vars.len();
        let values = (0..n).map(|i| (row >> (n - 1 - i)) & 1 == 1).collect();
        Assignment {
            vars: vars.clone(),
            values,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.vars.position(v).map(|i| self.values[i])
    }

    pub fn to_term(&self) -> Term {
        Term::new(self.vars.iter().zip(&self.values).map(|(v, &b)| Lit::new(v, b)))
    }

    pub fn bit_string(&self) -> String {
        self.values.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(c: i64) -> Lit {
        Lit::from_dimacs(c).unwrap()
    }

    #[test]
    fn literal_order_puts_negative_first() {
        assert!(lit(-1) < lit(1));
        assert!(lit(1) < lit(-2));
        assert_eq!(!lit(3), lit(-3));
        assert_eq!(Lit::from_dimacs(0), None);
    }

    #[test]
    fn clause_and_term_predicates() {
        let c = Clause::from_dimacs(&[2, 1, 2]).unwrap();
        assert_eq!(c.lits(), &[lit(1), lit(2)]);
        assert!(!c.is_tautology());
        assert!(Clause::from_dimacs(&[1, -1]).unwrap().is_tautology());
        assert!(Clause::from_dimacs(&[1]).unwrap().subsumes(&c));
        assert!(!c.subsumes(&Clause::from_dimacs(&[1]).unwrap()));
        let t = c.negation();
        assert_eq!(t.lits(), &[lit(-1), lit(-2)]);
        assert!(!Term::from_dimacs(&[3, -3]).unwrap().is_consistent());
        assert_eq!(t.value_of(Var::new(2)), Some(false));
    }

    #[test]
    fn varset_algebra() {
        let a: VarSet = [3, 1, 2].into_iter().map(Var::new).collect();
        let b: VarSet = [2, 5].into_iter().map(Var::new).collect();
        assert_eq!(a.union(&b), [1, 2, 3, 5].into_iter().map(Var::new).collect());
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.difference(&b).len(), 2);
        assert_eq!(a.to_string(), "{1,2,3}");
    }

    #[test]
    fn assignment_rows_are_msb_first() {
        let vars = VarSet::first(3);
        let a = Assignment::from_row(&vars, 0b100);
        assert_eq!(a.bit_string(), "100");
        assert_eq!(a.get(Var::new(1)), Some(true));
        assert_eq!(a.get(Var::new(4)), None);
    }
}
