use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::WordTerm;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ratio::Ratio;

/// Largest assignment space `|G|^arity` that is counted by enumeration.
pub const DENSITY_ENUMERATION_CAP: u64 = 1 << 26;

/// Exact solution count of `w(x̄, c̄) = e` and its density in `G^arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub solutions: BigUint,
    pub total: BigUint,
    pub density: Ratio,
    pub method: &'static str,
}

impl DensityReport {
    fn new(solutions: BigUint, total: BigUint, method: &'static str) -> Self {
        let density = Ratio::new(solutions.clone().into(), total.clone().into());
        DensityReport {
            solutions,
            total,
            density,
            method,
        }
    }
}

/// Counts solutions analytically for words and groups too large to enumerate.
/// Returns `None` when the counter does not apply to the given input.
pub trait StructuredCounter<G: FiniteGroup>: Sync {
    fn count(
        &self,
        group: &G,
        word: &WordTerm,
        params: &[G::Elem],
        arity: usize,
    ) -> Option<Result<BigUint>>;
}

fn assignment_space<G: FiniteGroup + ?Sized>(g: &G, arity: usize) -> Result<(BigUint, bool)> {
    let total = g.order().pow(arity as u32);
    let fits = total <= BigUint::from(DENSITY_ENUMERATION_CAP);
    Ok((total, fits))
}

/// Number of tuples `(a₀, …, a_{free-1}) ++ suffix` over `els` satisfying `pred`.
pub(crate) fn count_tuples<E, F>(els: &[E], free: usize, suffix: &[E], pred: F) -> u64
where
    E: Clone + Send + Sync,
    F: Fn(&[E]) -> bool + Sync,
{
    if free == 0 {
        return pred(suffix) as u64;
    }
    if els.is_empty() {
        return 0;
    }
    els.par_iter()
        .map(|first| {
            let mut buf: Vec<E> = Vec::with_capacity(free + suffix.len());
            buf.push(first.clone());
            buf.extend(std::iter::repeat_n(els[0].clone(), free - 1));
            buf.extend_from_slice(suffix);
            let mut idx = vec![0usize; free - 1];
            let mut count = 0u64;
            loop {
                count += pred(&buf) as u64;
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return count;
                    }
                    idx[k] += 1;
                    if idx[k] < els.len() {
                        buf[k + 1] = els[idx[k]].clone();
                        break;
                    }
                    idx[k] = 0;
                    buf[k + 1] = els[0].clone();
                    k += 1;
                }
            }
        })
        .sum()
}

fn check_signature<G: FiniteGroup + ?Sized>(
    g: &G,
    w: &WordTerm,
    params: &[G::Elem],
    arity: usize,
) -> Result<()> {
    if arity < w.var_count() {
        return Err(Error::ArityMismatch {
            expected: w.var_count(),
            got: arity,
        });
    }
    if params.len() < w.param_count() {
        return Err(Error::ArityMismatch {
            expected: w.param_count(),
            got: params.len(),
        });
    }
    if let Some(bad) = params.iter().find(|c| !g.contains(c)) {
        return Err(Error::GroupMismatch(format!(
            "parameter {bad:?} is not in {}",
            g.describe()
        )));
    }
    Ok(())
}

/// `|{x̄ ∈ G^arity : w(x̄, c̄) = e}|` by enumeration.
pub fn solution_count<G: FiniteGroup + ?Sized>(
    g: &G,
    w: &WordTerm,
    params: &[G::Elem],
    arity: usize,
) -> Result<BigUint> {
    check_signature(g, w, params, arity)?;
    let (total, fits) = assignment_space(g, arity)?;
    if !fits {
        return Err(Error::too_large(
            "assignment space |G|^arity",
            total,
            DENSITY_ENUMERATION_CAP,
        ));
    }
    let els = g.elements()?;
    let e = g.identity();
    Ok(BigUint::from(count_tuples(&els, arity, &[], |xs| {
        w.eval_unchecked(g, xs, params) == e
    })))
}

/// Exact density of the solution set; falls back to `counter` when the
/// assignment space is above [`DENSITY_ENUMERATION_CAP`].
pub fn solution_density<G: FiniteGroup>(
    g: &G,
    w: &WordTerm,
    params: &[G::Elem],
    arity: usize,
    counter: Option<&dyn StructuredCounter<G>>,
) -> Result<DensityReport> {
    check_signature(g, w, params, arity)?;
    let (total, fits) = assignment_space(g, arity)?;
    if fits {
        let n = solution_count(g, w, params, arity)?;
        return Ok(DensityReport::new(n, total, "enumerated"));
    }
    if arity <= 2 {
        if let Some(result) = counter.and_then(|c| c.count(g, w, params, arity)) {
            return Ok(DensityReport::new(result?, total, "structured"));
        }
    }
    Err(Error::too_large(
        "assignment space |G|^arity (no structured counter applies)",
        total,
        DENSITY_ENUMERATION_CAP,
    ))
}

/// `X = {ā ∈ G^arity : w(ā, c̄) = e}`.
#[derive(Clone, Debug)]
pub struct AlgebraicSet<'g, G: FiniteGroup> {
    group: &'g G,
    word: WordTerm,
    params: Vec<G::Elem>,
    arity: usize,
}

impl<'g, G: FiniteGroup> AlgebraicSet<'g, G> {
    pub fn new(group: &'g G, word: WordTerm, params: Vec<G::Elem>, arity: usize) -> Result<Self> {
        check_signature(group, &word, &params, arity)?;
        Ok(AlgebraicSet {
            group,
            word,
            params,
            arity,
        })
    }

    pub fn group(&self) -> &'g G {
        self.group
    }

    pub fn word(&self) -> &WordTerm {
        &self.word
    }

    pub fn params(&self) -> &[G::Elem] {
        &self.params
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn contains(&self, point: &[G::Elem]) -> Result<bool> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        Ok(self.word.evaluate(self.group, point, &self.params)? == self.group.identity())
    }

    pub fn count(&self) -> Result<BigUint> {
        solution_count(self.group, &self.word, &self.params, self.arity)
    }

    pub fn density(&self) -> Result<DensityReport> {
        solution_density(self.group, &self.word, &self.params, self.arity, None)
    }

    /// The section `A_g = {h̄ : (h̄, g) ∈ A}` at last coordinate `g`.
    pub fn section(&self, g: G::Elem) -> Result<SectionSet<'_, 'g, G>> {
        if self.arity < 2 {
            return Err(Error::Invalid("sections need arity at least 2".into()));
        }
        if !self.group.contains(&g) {
            return Err(Error::GroupMismatch(format!(
                "{g:?} is not in {}",
                self.group.describe()
            )));
        }
        Ok(SectionSet {
            parent: self,
            last: g,
        })
    }
}

/// `A_g` for an [`AlgebraicSet`] `A` of arity `n > 1`.
#[derive(Clone, Debug)]
pub struct SectionSet<'a, 'g, G: FiniteGroup> {
    parent: &'a AlgebraicSet<'g, G>,
    last: G::Elem,
}

impl<G: FiniteGroup> SectionSet<'_, '_, G> {
    pub fn last(&self) -> &G::Elem {
        &self.last
    }

    pub fn contains(&self, head: &[G::Elem]) -> Result<bool> {
        let mut point = head.to_vec();
        point.push(self.last.clone());
        self.parent.contains(&point)
    }

    pub fn count(&self) -> Result<BigUint> {
        let a = self.parent;
        let (total, fits) = assignment_space(a.group, a.arity - 1)?;
        if !fits {
            return Err(Error::too_large(
                "section space",
                total,
                DENSITY_ENUMERATION_CAP,
            ));
        }
        let els = a.group.elements()?;
        let e = a.group.identity();
        let n = count_tuples(&els, a.arity - 1, std::slice::from_ref(&self.last), |xs| {
            a.word.eval_unchecked(a.group, xs, &a.params) == e
        });
        Ok(BigUint::from(n))
    }

    /// `|A_g| / |G|^{n-1}`.
    pub fn density(&self) -> Result<Ratio> {
        let n = self.count()?;
        let total = self.parent.group.order().pow(self.parent.arity as u32 - 1);
        Ok(Ratio::new(n.into(), total.into()))
    }
}

/// `|A_g|` for every `g`, in enumeration order of `G`.
pub fn section_counts<G: FiniteGroup>(a: &AlgebraicSet<'_, G>) -> Result<Vec<(G::Elem, BigUint)>> {
    if a.arity < 2 {
        return Err(Error::Invalid("sections need arity at least 2".into()));
    }
    a.group
        .elements()?
        .into_iter()
        .map(|g| {
            let n = a.section(g.clone())?.count()?;
            Ok((g, n))
        })
        .collect()
}

/// `{g ∈ G : |A_g| > 0}`, the finite-level positive part.
pub fn fubini_markov_positive_part<G: FiniteGroup>(
    a: &AlgebraicSet<'_, G>,
) -> Result<Vec<G::Elem>> {
    Ok(section_counts(a)?
        .into_iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(g, _)| g)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{centralizer_count_enumerated, Cyclic, ElementaryAbelian2, Perm, Symmetric};
    use crate::ratio::{format_ratio, ratio_u64};
    use crate::word::parse_word;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn density<G: FiniteGroup>(g: &G, w: &str, params: &[G::Elem], arity: usize) -> String {
        let w = parse_word(w).unwrap();
        format_ratio(
            &solution_density(g, &w, params, arity, None)
                .unwrap()
                .density,
        )
    }

    #[test]
    fn reference_densities() {
        let s3 = Symmetric::new(3).unwrap();
        assert_eq!(density(&s3, "e", &[], 2), "1/1");
        assert_eq!(density(&s3, "[x1,x2]", &[], 2), "1/2");
        let z4 = Cyclic::new(4).unwrap();
        assert_eq!(density(&z4, "x1 x1", &[], 1), "1/2");
        let z2 = Cyclic::new(2).unwrap();
        assert_eq!(density(&z2, "x1 x1", &[], 1), "1/1");
    }

    #[test]
    fn commuting_pairs_match_centralizer_sum() {
        let s4 = Symmetric::new(4).unwrap();
        let els = s4.elements().unwrap();
        let sum: u64 = els
            .iter()
            .map(|s| centralizer_count_enumerated(&s4, s).unwrap())
            .sum();
        let w = parse_word("[x1,x2]").unwrap();
        assert_eq!(solution_count(&s4, &w, &[], 2).unwrap(), BigUint::from(sum));
    }

    #[test]
    fn sections_of_commuting_pairs() {
        let s3 = Symmetric::new(3).unwrap();
        let a = AlgebraicSet::new(&s3, parse_word("[x1,x2]").unwrap(), vec![], 2).unwrap();
        let e = a.section(s3.identity()).unwrap();
        assert_eq!(e.density().unwrap(), ratio_u64(1, 1));
        let t = Perm::parse_cycles(3, "(0 1)").unwrap();
        assert_eq!(a.section(t).unwrap().density().unwrap(), ratio_u64(1, 3));
        assert_eq!(fubini_markov_positive_part(&a).unwrap().len(), 6);
        assert!(AlgebraicSet::new(&s3, parse_word("x1").unwrap(), vec![], 1)
            .unwrap()
            .section(s3.identity())
            .is_err());
    }

    #[test]
    fn empty_and_full_positive_parts() {
        let s3 = Symmetric::new(3).unwrap();
        let c = Perm::parse_cycles(3, "(0 1 2)").unwrap();
        // x1 x1^-1 z1 = c ≠ e never holds
        let empty = AlgebraicSet::new(&s3, parse_word("x1 x1^-1 z1").unwrap(), vec![c], 2).unwrap();
        assert!(fubini_markov_positive_part(&empty).unwrap().is_empty());
        let full = AlgebraicSet::new(&s3, parse_word("e").unwrap(), vec![], 2).unwrap();
        assert_eq!(fubini_markov_positive_part(&full).unwrap().len(), 6);
        for g in s3.elements().unwrap() {
            assert_eq!(full.section(g).unwrap().density().unwrap(), ratio_u64(1, 1));
        }
    }

    #[test]
    fn arity_and_cap_errors() {
        let s3 = Symmetric::new(3).unwrap();
        let w = parse_word("x1 x2").unwrap();
        assert!(AlgebraicSet::new(&s3, w.clone(), vec![], 1).is_err());
        let big = ElementaryAbelian2::new(14).unwrap();
        assert!(matches!(
            solution_density(&big, &w, &[], 2, None),
            Err(Error::TooLarge { .. })
        ));
        struct Everything;
        impl StructuredCounter<ElementaryAbelian2> for Everything {
            fn count(
                &self,
                g: &ElementaryAbelian2,
                _: &WordTerm,
                _: &[u64],
                arity: usize,
            ) -> Option<Result<BigUint>> {
                Some(Ok(g.order().pow(arity as u32)))
            }
        }
        let r = solution_density(&big, &w, &[], 2, Some(&Everything)).unwrap();
        assert_eq!(r.method, "structured");
        assert_eq!(r.density, ratio_u64(1, 1));
    }

    fn fubini_holds<G: FiniteGroup>(a: &AlgebraicSet<'_, G>) -> bool {
        let whole = a.density().unwrap().density;
        let order = a.group().order();
        let sum: Ratio = section_counts(a)
            .unwrap()
            .into_iter()
            .map(|(g, _)| a.section(g).unwrap().density().unwrap())
            .sum();
        whole == sum / Ratio::from_integer(order.into())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn fubini_consistency(seed in any::<u64>(), arity in 2usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Symmetric::new(3).unwrap();
            let w = WordTerm::random(&mut rng, arity, 2, 4);
            let cs: Vec<_> = (0..2).map(|_| g.random_element(&mut rng)).collect();
            let a = AlgebraicSet::new(&g, w, cs, arity).unwrap();
            prop_assert!(fubini_holds(&a));
        }

        #[test]
        fn conjugation_invariance(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Symmetric::new(4).unwrap();
            let w = WordTerm::random(&mut rng, 2, 2, 4);
            let cs: Vec<Perm> = (0..2).map(|_| g.random_element(&mut rng)).collect();
            let h = g.random_element(&mut rng);
            let hi = g.inv(&h);
            let conj: Vec<Perm> = cs.iter().map(|c| g.mul(&g.mul(&hi, c), &h)).collect();
            prop_assert_eq!(
                solution_count(&g, &w, &cs, 2).unwrap(),
                solution_count(&g, &w, &conj, 2).unwrap()
            );
        }

        #[test]
        fn parallel_count_matches_sequential(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Symmetric::new(3).unwrap();
            let w = WordTerm::random(&mut rng, 3, 1, 4);
            let c = g.random_element(&mut rng);
            let els = g.elements().unwrap();
            let e = g.identity();
            let mut seq = 0u64;
            for a in &els {
                for b in &els {
                    for d in &els {
                        let xs = [a.clone(), b.clone(), d.clone()];
                        seq += (w.eval_unchecked(&g, &xs, std::slice::from_ref(&c)) == e) as u64;
                    }
                }
            }
            prop_assert_eq!(solution_count(&g, &w, &[c], 3).unwrap(), BigUint::from(seq));
        }
    }
}
