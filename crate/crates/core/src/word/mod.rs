//! Group words `w(x̄, z̄)`, their evaluation, and solution sets over finite groups.

mod density;
mod parse;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub use density::{
    fubini_markov_positive_part, section_counts, solution_count, solution_density, AlgebraicSet,
    DensityReport, SectionSet, StructuredCounter, DENSITY_ENUMERATION_CAP,
};
pub use parse::parse_word;

/// `[[[x1,z1],z2],x2]`
pub const TRIPLE_COMMUTATOR_WORD: &str = "[[[x1,z1],z2],x2]";

/// Parse tree of a group word. Variable and parameter indices are 1-based,
/// as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordTerm {
    Identity,
    Var(usize),
    Param(usize),
    Inverse(Box<WordTerm>),
    Product(Box<WordTerm>, Box<WordTerm>),
    Commutator(Box<WordTerm>, Box<WordTerm>),
}

impl WordTerm {
    pub fn var(i: usize) -> Self {
        WordTerm::Var(i)
    }

    pub fn param(j: usize) -> Self {
        WordTerm::Param(j)
    }

    pub fn inverse(t: WordTerm) -> Self {
        WordTerm::Inverse(Box::new(t))
    }

    pub fn product(a: WordTerm, b: WordTerm) -> Self {
        WordTerm::Product(Box::new(a), Box::new(b))
    }

    pub fn commutator(a: WordTerm, b: WordTerm) -> Self {
        WordTerm::Commutator(Box::new(a), Box::new(b))
    }

    /// The distinguished word `[[[x1,z1],z2],x2]`.
    pub fn triple_commutator() -> Self {
        WordTerm::commutator(
            WordTerm::commutator(
                WordTerm::commutator(WordTerm::var(1), WordTerm::param(1)),
                WordTerm::param(2),
            ),
            WordTerm::var(2),
        )
    }

    /// Largest variable index, i.e. the number of variables.
    pub fn var_count(&self) -> usize {
        self.max_index(true)
    }

    /// Largest parameter index, i.e. the number of parameters.
    pub fn param_count(&self) -> usize {
        self.max_index(false)
    }

    fn max_index(&self, vars: bool) -> usize {
        match self {
            WordTerm::Identity => 0,
            WordTerm::Var(i) => {
                if vars {
                    *i
                } else {
                    0
                }
            }
            WordTerm::Param(j) => {
                if vars {
                    0
                } else {
                    *j
                }
            }
            WordTerm::Inverse(t) => t.max_index(vars),
            WordTerm::Product(a, b) | WordTerm::Commutator(a, b) => {
                a.max_index(vars).max(b.max_index(vars))
            }
        }
    }

    fn collect_indices(&self, vars: &mut Vec<usize>, params: &mut Vec<usize>) {
        match self {
            WordTerm::Identity => {}
            WordTerm::Var(i) => vars.push(*i),
            WordTerm::Param(j) => params.push(*j),
            WordTerm::Inverse(t) => t.collect_indices(vars, params),
            WordTerm::Product(a, b) | WordTerm::Commutator(a, b) => {
                a.collect_indices(vars, params);
                b.collect_indices(vars, params);
            }
        }
    }

    /// Checks that indices are `1..=k` with none skipped.
    pub fn check_contiguous(&self) -> Result<()> {
        let (mut vars, mut params) = (Vec::new(), Vec::new());
        self.collect_indices(&mut vars, &mut params);
        for (name, mut idx) in [("x", vars), ("z", params)] {
            idx.sort_unstable();
            idx.dedup();
            if idx.contains(&0) {
                return Err(Error::Invalid(format!("index {name}0 is not allowed")));
            }
            if let Some((k, _)) = idx.iter().enumerate().find(|&(k, &i)| i != k + 1) {
                return Err(Error::Invalid(format!(
                    "{name} indices must be contiguous from 1; {name}{} is missing",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// Rewrites commutator sugar as `a^-1 b^-1 a b`.
    pub fn expand(&self) -> WordTerm {
        match self {
            WordTerm::Identity | WordTerm::Var(_) | WordTerm::Param(_) => self.clone(),
            WordTerm::Inverse(t) => WordTerm::inverse(t.expand()),
            WordTerm::Product(a, b) => WordTerm::product(a.expand(), b.expand()),
            WordTerm::Commutator(a, b) => {
                let (a, b) = (a.expand(), b.expand());
                WordTerm::product(
                    WordTerm::product(
                        WordTerm::product(
                            WordTerm::inverse(a.clone()),
                            WordTerm::inverse(b.clone()),
                        ),
                        a,
                    ),
                    b,
                )
            }
        }
    }

    /// Evaluates the word with `x_i = xs[i-1]` and `z_j = cs[j-1]`.
    pub fn evaluate<G: FiniteGroup + ?Sized>(
        &self,
        g: &G,
        xs: &[G::Elem],
        cs: &[G::Elem],
    ) -> Result<G::Elem> {
        if xs.len() < self.var_count() {
            return Err(Error::ArityMismatch {
                expected: self.var_count(),
                got: xs.len(),
            });
        }
        if cs.len() < self.param_count() {
            return Err(Error::ArityMismatch {
                expected: self.param_count(),
                got: cs.len(),
            });
        }
        if let Some(bad) = xs.iter().chain(cs).find(|a| !g.contains(a)) {
            return Err(Error::GroupMismatch(format!(
                "{bad:?} is not in {}",
                g.describe()
            )));
        }
        Ok(self.eval_unchecked(g, xs, cs))
    }

    /// [`evaluate`](Self::evaluate) without arity and membership checks.
    pub fn eval_unchecked<G: FiniteGroup + ?Sized>(
        &self,
        g: &G,
        xs: &[G::Elem],
        cs: &[G::Elem],
    ) -> G::Elem {
        match self {
            WordTerm::Identity => g.identity(),
            WordTerm::Var(i) => xs[i - 1].clone(),
            WordTerm::Param(j) => cs[j - 1].clone(),
            WordTerm::Inverse(t) => g.inv(&t.eval_unchecked(g, xs, cs)),
            WordTerm::Product(a, b) => {
                g.mul(&a.eval_unchecked(g, xs, cs), &b.eval_unchecked(g, xs, cs))
            }
            WordTerm::Commutator(a, b) => {
                let a = a.eval_unchecked(g, xs, cs);
                let b = b.eval_unchecked(g, xs, cs);
                crate::group::commutator(g, &a, &b)
            }
        }
    }

    /// Random word over `x1..=vars` and `z1..=params` with at most `depth` levels.
    /// Indices may come out non-contiguous; callers that need contiguity
    /// should check.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, vars: usize, params: usize, depth: u32) -> Self {
        let leaf = |rng: &mut R| {
            let total = vars + params;
            if total == 0 || rng.gen_ratio(1, 8) {
                return WordTerm::Identity;
            }
            let k = rng.gen_range(0..total);
            if k < vars {
                WordTerm::var(k + 1)
            } else {
                WordTerm::param(k - vars + 1)
            }
        };
        if depth == 0 || rng.gen_ratio(1, 3) {
            return leaf(rng);
        }
        match rng.gen_range(0..3) {
            0 => WordTerm::inverse(Self::random(rng, vars, params, depth - 1)),
            1 => WordTerm::product(
                Self::random(rng, vars, params, depth - 1),
                Self::random(rng, vars, params, depth - 1),
            ),
            _ => WordTerm::commutator(
                Self::random(rng, vars, params, depth - 1),
                Self::random(rng, vars, params, depth - 1),
            ),
        }
    }

    fn is_atomic(&self) -> bool {
        !matches!(self, WordTerm::Product(..))
    }
}

/// Canonical text: products are space-separated and left-associated,
/// parentheses appear only where the tree needs them.
impl fmt::Display for WordTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordTerm::Identity => f.write_str("e"),
            WordTerm::Var(i) => write!(f, "x{i}"),
            WordTerm::Param(j) => write!(f, "z{j}"),
            WordTerm::Inverse(t) => {
                if t.is_atomic() {
                    write!(f, "{t}^-1")
                } else {
                    write!(f, "({t})^-1")
                }
            }
            WordTerm::Product(a, b) => {
                if b.is_atomic() {
                    write!(f, "{a} {b}")
                } else {
                    write!(f, "{a} ({b})")
                }
            }
            WordTerm::Commutator(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{commutator, Cyclic, ElementaryAbelian2, FiniteGroup, Symmetric};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distinguished_word() {
        let w = parse_word(TRIPLE_COMMUTATOR_WORD).unwrap();
        assert_eq!(w, WordTerm::triple_commutator());
        assert_eq!((w.var_count(), w.param_count()), (2, 2));
        assert_eq!(w.to_string(), TRIPLE_COMMUTATOR_WORD);
    }

    #[test]
    fn evaluation_matches_group_ops() {
        let g = Symmetric::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = WordTerm::triple_commutator();
        for _ in 0..50 {
            let (x, y, a, b) = (
                g.random_element(&mut rng),
                g.random_element(&mut rng),
                g.random_element(&mut rng),
                g.random_element(&mut rng),
            );
            let naive = commutator(&g, &commutator(&g, &commutator(&g, &x, &a), &b), &y);
            let v = w
                .evaluate(&g, &[x.clone(), y.clone()], &[a.clone(), b.clone()])
                .unwrap();
            assert_eq!(v, naive);
            let ex = w.expand().evaluate(&g, &[x, y], &[a, b]).unwrap();
            assert_eq!(ex, naive);
        }
    }

    #[test]
    fn trivial_evaluations() {
        let g = Symmetric::new(3).unwrap();
        let e = g.identity();
        let w = parse_word("[x1,x1]").unwrap();
        for x in g.elements().unwrap() {
            assert_eq!(w.evaluate(&g, &[x], &[]).unwrap(), e);
        }
        let w = parse_word("x1 z1 x2^-1").unwrap();
        assert_eq!(
            w.evaluate(&g, &[e.clone(), e.clone()], std::slice::from_ref(&e))
                .unwrap(),
            e
        );
        let ab = ElementaryAbelian2::new(3).unwrap();
        let w = parse_word("[x1,x2]").unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(w.evaluate(&ab, &[a, b], &[]).unwrap(), 0);
            }
        }
    }

    #[test]
    fn evaluate_checks_arity_and_membership() {
        let g = Cyclic::new(4).unwrap();
        let w = parse_word("x1 x2 z1").unwrap();
        assert!(matches!(
            w.evaluate(&g, &[1], &[1]),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
        assert!(w.evaluate(&g, &[1, 2], &[]).is_err());
        assert!(matches!(
            w.evaluate(&g, &[1, 7], &[0]),
            Err(Error::GroupMismatch(_))
        ));
        assert_eq!(w.evaluate(&g, &[1, 2], &[3]).unwrap(), 2);
    }

    fn arb_word() -> impl Strategy<Value = WordTerm> {
        let leaf = prop_oneof![
            Just(WordTerm::Identity),
            (1usize..4).prop_map(WordTerm::Var),
            (1usize..4).prop_map(WordTerm::Param),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(WordTerm::inverse),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| WordTerm::product(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| WordTerm::commutator(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(w in arb_word()) {
            let text = w.to_string();
            let back = parse::parse_tree(&text).unwrap();
            prop_assert_eq!(&back, &w);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn expansion_preserves_value(w in arb_word(), seed in any::<u64>()) {
            let g = Symmetric::new(4).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs: Vec<_> = (0..3).map(|_| g.random_element(&mut rng)).collect();
            let cs: Vec<_> = (0..3).map(|_| g.random_element(&mut rng)).collect();
            prop_assert_eq!(
                w.evaluate(&g, &xs, &cs).unwrap(),
                w.expand().evaluate(&g, &xs, &cs).unwrap()
            );
        }
    }
}
