mod common;

use common::*;
use kcmap::compile::{self, CnfFormula};
use kcmap::nnf::{read_nnf, write_nnf_string};
use kcmap::properties::{self, member, Tri};
use kcmap::random::Gen;
use kcmap::{bdd, queries, transforms, Clause, LanguageTag, NnfStore};
use proptest::prelude::*;

const TARGETS: [(&str, LanguageTag); 7] = [
    ("cnf", LanguageTag::Cnf),
    ("ddnnf", LanguageTag::DDnnf),
    ("sddnnf", LanguageTag::SdDnnf),
    ("obdd", LanguageTag::ObddLt),
    ("mods", LanguageTag::Mods),
    ("pi", LanguageTag::Pi),
    ("ip", LanguageTag::Ip),
];

fn formula(seed: u64, n: u32, m: usize) -> (Gen, CnfFormula) {
    let mut g = Gen::new(seed);
    let f = g.cnf3(n, m);
    (g, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiled_forms_are_equivalent_members(seed in any::<u64>(), n in 3u32..8, m in 1usize..20) {
        let (mut g, f) = formula(seed, n, m);
        let c = compile_all(&mut g, &f);
        let cnf = c.roots[0].1;
        for (&(name, root), &(_, lang)) in c.roots.iter().zip(TARGETS.iter()) {
            prop_assert!(oracle().equivalent(&c.store, root, cnf).unwrap(), "{name}");
            let order = (lang == LanguageTag::ObddLt).then_some(&c.order);
            prop_assert_eq!(member(&c.store, root, lang, order).value, Tri::Yes, "{}", name);
        }
    }

    #[test]
    fn every_generator_hits_its_language(seed in any::<u64>(), i in 0usize..16, n in 1u32..7) {
        let lang = LANGS[i];
        let mut g = Gen::new(seed);
        let mut s = NnfStore::new(n);
        let r = g.sentence(&mut s, lang, n);
        prop_assert_eq!(member(&s, r, lang, None).value, Tri::Yes);
        for p in lang.parents() {
            prop_assert_eq!(member(&s, r, *p, None).value, Tri::Yes, "parent {}", p);
        }
    }

    #[test]
    fn negation_is_an_involution(seed in any::<u64>(), i in 0usize..16, n in 1u32..7) {
        let lang = LANGS[i];
        let mut g = Gen::new(seed);
        let mut s = NnfStore::new(n);
        let r = g.sentence(&mut s, lang, n);
        if let Ok(neg) = transforms::negate(&mut s, r, lang) {
            prop_assert!(is_negation(&mut s, r, neg));
            let back = transforms::negate(&mut s, neg, lang).unwrap();
            prop_assert!(oracle().equivalent(&s, back, r).unwrap());
        }
    }

    #[test]
    fn smoothing_preserves_meaning(seed in any::<u64>(), n in 1u32..9) {
        let mut g = Gen::new(seed);
        let mut s = NnfStore::new(n);
        let r = g.nnf(&mut s, n, 40);
        let out = transforms::smooth(&mut s, r);
        prop_assert!(properties::smooth(&s, out).value.is_yes());
        prop_assert!(oracle().equivalent(&s, out, r).unwrap());
        prop_assert_eq!(transforms::smooth(&mut s, out), out);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 1u32..9) {
        let mut g = Gen::new(seed);
        let mut s = NnfStore::new(n);
        let r = g.nnf(&mut s, n, 40);
        let text = write_nnf_string(&s, r);
        prop_assert_eq!(read_nnf(text.as_bytes(), &mut s).unwrap(), r);
    }

    #[test]
    fn dimacs_round_trip(seed in any::<u64>(), n in 3u32..10, m in 0usize..20) {
        let (_, f) = formula(seed, n, m);
        let back = compile::parse_dimacs_str(&compile::write_dimacs(&f)).unwrap();
        prop_assert_eq!(back.num_vars, f.num_vars);
        prop_assert_eq!(back.clauses, f.clauses);
    }

    #[test]
    fn prime_implicates_are_negated_implicants_of_the_complement(seed in any::<u64>(), n in 1u32..7) {
        let mut g = Gen::new(seed);
        let mut s = NnfStore::new(n);
        let r = g.nnf(&mut s, n, 30);
        let neg = transforms::de_morgan(&mut s, r);
        let o = oracle();
        let mut from_neg: Vec<Clause> = o.prime_implicants(&s, neg).unwrap().iter().map(|t| t.negation()).collect();
        from_neg.sort();
        let mut direct = o.prime_implicates(&s, r).unwrap();
        direct.sort();
        prop_assert_eq!(direct, from_neg);
    }

    #[test]
    fn conditioning_theorem(seed in any::<u64>(), i in 0usize..16, n in 1u32..7) {
        let lang = LANGS[i];
        let mut g = Gen::new(seed);
        let mut s = NnfStore::new(n);
        let r = g.sentence(&mut s, lang, n);
        let gamma = random_term(&mut g, n);
        let tn = s.term(&gamma);
        let conj = s.and([r, tn]);
        let cd = transforms::condition(&mut s, r, &gamma, lang).unwrap();
        let o = oracle();
        prop_assert_eq!(o.is_consistent(&s, conj).unwrap(), o.is_consistent(&s, cd).unwrap());
        prop_assert!(s.vars(cd).is_disjoint(&gamma.vars()));
    }

    #[test]
    fn counts_split_on_a_variable(seed in any::<u64>(), n in 3u32..9, m in 1usize..20) {
        let (mut g, f) = formula(seed, n, m);
        let mut s = NnfStore::new(n);
        let r = compile::compile_ddnnf(&mut s, &f);
        let u = s.universe();
        let x = g.var(n);
        let total = queries::ct(&s, r, LanguageTag::DDnnf, &u).unwrap();
        let hi = transforms::condition(&mut s, r, &kcmap::Term::new([x.pos()]), LanguageTag::DDnnf).unwrap();
        let lo = transforms::condition(&mut s, r, &kcmap::Term::new([x.neg()]), LanguageTag::DDnnf).unwrap();
        let rest = u.difference(&[x].into_iter().collect());
        let parts = queries::ct(&s, hi, LanguageTag::DDnnf, &rest).unwrap()
            + queries::ct(&s, lo, LanguageTag::DDnnf, &rest).unwrap();
        prop_assert_eq!(total, parts);
    }

    #[test]
    fn reduced_obdds_are_canonical(seed in any::<u64>(), n in 3u32..8, m in 1usize..15) {
        let (mut g, f) = formula(seed, n, m);
        let order = g.order(n);
        let mut s = NnfStore::new(n);
        let a = compile::compile_obdd(&mut s, &f, &order).unwrap();
        prop_assert!(bdd::is_reduced(&s, a));
        prop_assert_eq!(bdd::reduce(&mut s, a).unwrap(), a);
        let count = queries::ct(&s, a, LanguageTag::ObddLt, &s.universe()).unwrap();
        prop_assert_eq!(count, oracle().count(&s, a, &s.universe()).unwrap());
    }
}
