use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The sixteen NNF sublanguages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LanguageTag {
    Nnf,
    Dnnf,
    DNnf,
    SNnf,
    FNnf,
    DDnnf,
    SdDnnf,
    Bdd,
    Fbdd,
    Obdd,
    ObddLt,
    Dnf,
    Cnf,
    Pi,
    Ip,
    Mods,
}

use LanguageTag::*;

impl LanguageTag {
    pub const ALL: [LanguageTag; 16] = [
        Nnf, Dnnf, DNnf, SNnf, FNnf, DDnnf, SdDnnf, Bdd, Fbdd, Obdd, ObddLt, Dnf, Cnf, Pi, Ip, Mods,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Nnf => "NNF",
            Dnnf => "DNNF",
            DNnf => "d-NNF",
            SNnf => "s-NNF",
            FNnf => "f-NNF",
            DDnnf => "d-DNNF",
            SdDnnf => "sd-DNNF",
            Bdd => "BDD",
            Fbdd => "FBDD",
            Obdd => "OBDD",
            ObddLt => "OBDD_<",
            Dnf => "DNF",
            Cnf => "CNF",
            Pi => "PI",
            Ip => "IP",
            Mods => "MODS",
        }
    }

    /// Immediate supersets in the inclusion lattice.
    pub fn parents(self) -> &'static [LanguageTag] {
        match self {
            Nnf => &[],
            Dnnf | DNnf | SNnf | FNnf => &[Nnf],
            DDnnf => &[Dnnf, DNnf],
            SdDnnf => &[DDnnf, SNnf],
            Bdd => &[DNnf],
            Fbdd => &[Bdd, DDnnf],
            Obdd => &[Fbdd],
            ObddLt => &[Obdd],
            Dnf => &[Dnnf, FNnf],
            Cnf => &[FNnf],
            Pi => &[Cnf],
            Ip => &[Dnf],
            Mods => &[Dnf, SdDnnf],
        }
    }

    /// All strict supersets.
    pub fn ancestors(self) -> Vec<LanguageTag> {
        let mut out = Vec::new();
        let mut stack: Vec<LanguageTag> = self.parents().to_vec();
        while let Some(t) = stack.pop() {
            if !out.contains(&t) {
                out.push(t);
                stack.extend_from_slice(t.parents());
            }
        }
        out.sort();
        out
    }

    /// Languages whose members are decision diagrams.
    pub fn is_bdd_family(self) -> bool {
        matches!(self, Bdd | Fbdd | Obdd | ObddLt)
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LanguageTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<LanguageTag, Error> {
        let t = s.trim();
        if let Some(tag) = LanguageTag::ALL.iter().find(|l| l.name() == t) {
            return Ok(*tag);
        }
        let tag = match t.to_ascii_lowercase().as_str() {
            "nnf" => Nnf,
            "dnnf" => Dnnf,
            "d-nnf" => DNnf,
            "s-nnf" | "snnf" => SNnf,
            "f-nnf" | "fnnf" => FNnf,
            "d-dnnf" | "ddnnf" => DDnnf,
            "sd-dnnf" | "sddnnf" => SdDnnf,
            "bdd" => Bdd,
            "fbdd" => Fbdd,
            "obdd" => Obdd,
            "obdd_<" | "obdd<" | "obdd_lt" | "obddlt" => ObddLt,
            "dnf" => Dnf,
            "cnf" => Cnf,
            "pi" => Pi,
            "ip" => Ip,
            "mods" => Mods,
            _ => return Err(Error::precondition(format!("unknown language `{s}`"))),
        };
        Ok(tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for l in LanguageTag::ALL {
            assert_eq!(l.name().parse::<LanguageTag>().unwrap(), l);
        }
        assert_eq!("ddnnf".parse::<LanguageTag>().unwrap(), DDnnf);
        assert_eq!("obdd<".parse::<LanguageTag>().unwrap(), ObddLt);
        assert!("horn".parse::<LanguageTag>().is_err());
    }

    #[test]
    fn lattice_reaches_nnf() {
        for l in LanguageTag::ALL {
            if l != Nnf {
                assert!(l.ancestors().contains(&Nnf), "{l}");
            }
        }
        let mods = Mods.ancestors();
        for t in [Dnf, Dnnf, DDnnf, SdDnnf, SNnf, DNnf, FNnf] {
            assert!(mods.contains(&t));
        }
        assert!(ObddLt.ancestors().contains(&DDnnf));
    }
}
