use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nnf::Var;

/// A total order over the variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarOrder {
    order: Vec<Var>,
    // pos[v - 1] = position of v
    pos: Vec<usize>,
}

impl VarOrder {
    pub fn identity(n: u32) -> VarOrder {
        VarOrder::new((1..=n).map(Var::new).collect()).expect("identity is a permutation")
    }

    /// Fails unless `order` is a permutation of `1..=order.len()`.
    pub fn new(order: Vec<Var>) -> Result<VarOrder> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (i, v) in order.iter().enumerate() {
            let k = v.index() as usize;
            if k > n || pos[k - 1] != usize::MAX {
                return Err(Error::precondition(format!(
                    "variable order is not a permutation of 1..{n}"
                )));
            }
            pos[k - 1] = i;
        }
        Ok(VarOrder { order, pos })
    }

    pub fn from_indices(indices: &[u32]) -> Result<VarOrder> {
        let vars = indices
            .iter()
            .map(|&i| Var::try_new(i).ok_or_else(|| Error::precondition("variable 0 in order")))
            .collect::<Result<Vec<_>>>()?;
        VarOrder::new(vars)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.order
    }

    pub fn position(&self, v: Var) -> Option<usize> {
        self.pos.get(v.index() as usize - 1).copied()
    }

    /// Appends the variables `len+1..=n` in index order.
    pub fn extended(&self, n: u32) -> VarOrder {
        let mut order = self.order.clone();
        order.extend((self.order.len() as u32 + 1..=n).map(Var::new));
        VarOrder::new(order).expect("extension keeps a permutation")
    }
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v.index())?;
        }
        Ok(())
    }
}

impl FromStr for VarOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<VarOrder> {
        let idx = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::precondition(format!("bad variable `{t}` in order")))
            })
            .collect::<Result<Vec<_>>>()?;
        VarOrder::from_indices(&idx)
    }
}
