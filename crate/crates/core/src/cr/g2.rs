use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::g1::CrWitness;
use crate::bits::{format_mask, full_mask, parse_mask};
use crate::error::{Error, Result};
use crate::group::file::{read_named_elements, GroupFile, GroupIo};
use crate::group::{
    commutator, commutes, enumeration_guard, involution_report, FiniteGroup, GroupKind,
};

/// Element `y³_{U₃} · y²_{U₂} · g` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G2Elem<E> {
    pub u3: u64,
    pub u2: u64,
    pub g: E,
}

/// Multiplication law of a [`G2Group`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum G2Law {
    /// `(U₃,U₂,g)·(V₃,V₂,h) = (U₃ Δ V₃, U₂ Δ V₂, y¹_{U₂∩V₃}·g·h)`.
    #[default]
    Standard,
    /// Drops the `y¹_{U₂∩V₃}` correction; the result is the direct product
    /// `(Z/2)^{2n} × G₁` and fails relation (ε). Only for negative controls.
    WithoutCorrection,
}

/// Largest `n` for which all `y¹_U` are tabulated up front.
const Y1_TABLE_MAX_N: usize = 16;

/// The two-stage group `G₂` generated by `G₁` and commuting involutions
/// `y²_i`, `y³_i` (`i < n`) that centralize `G₁` and satisfy
/// `[y²_i, y³_j] = 𝔠(i, j)`, where `𝔠(i, i) = y¹_i` and `𝔠(i, j) = e` otherwise.
///
/// Elements are stored in the unique normal form `(U₃, U₂, g)`.
#[derive(Clone, Debug)]
pub struct G2Group<G: FiniteGroup> {
    n: usize,
    g1: G,
    y1: Vec<G::Elem>,
    z1: BTreeMap<u64, G::Elem>,
    y1_table: Option<Vec<G::Elem>>,
    law: G2Law,
}

/// Builds `G₂` over any `G₁` with a commuting involution sequence `ȳ¹` of length `n`.
pub fn build_g2<G: FiniteGroup>(g1: G, y1: Vec<G::Elem>, n: usize) -> Result<G2Group<G>> {
    G2Group::new(g1, y1, n)
}

/// Pairs `(i, g)` with `g` in a generating set of `G₁` and `[y¹_i, g] ≠ e`.
///
/// In `G₂`, `y²_i` and `y³_i` commute with all of `G₁`, hence so does
/// `[y²_i, y³_i] = y¹_i`. A `G₁` in which some `y¹_i` is not central does not
/// embed in `G₂`, and the normal-form law on it is not associative.
pub fn center_obstructions<G: FiniteGroup>(
    g1: &G,
    y1: &[G::Elem],
) -> Result<Vec<(usize, G::Elem)>> {
    let gens = match g1.generators() {
        Some(gens) => gens,
        None => g1.elements()?,
    };
    let mut out = Vec::new();
    for (i, y) in y1.iter().enumerate() {
        for g in &gens {
            if !commutes(g1, y, g) {
                out.push((i, g.clone()));
            }
        }
    }
    Ok(out)
}

impl<G: FiniteGroup> G2Group<G> {
    /// Fails unless `ȳ¹` is a commuting involution sequence of central
    /// elements of `G₁` (see [`center_obstructions`]).
    pub fn new(g1: G, y1: Vec<G::Elem>, n: usize) -> Result<Self> {
        let g2 = Self::new_unchecked(g1, y1, n)?;
        let bad = center_obstructions(&g2.g1, &g2.y1)?;
        if let Some((i, g)) = bad.first() {
            return Err(Error::ConstructionFailed(format!(
                "y1_{i} does not commute with {} in G1 ({} obstructions); relations (delta) and \
                 (epsilon) force every y1_i into the center of G1, so this G1 does not embed in G2",
                g2.g1.format_element(g),
                bad.len()
            )));
        }
        Ok(g2)
    }

    /// As [`new`](Self::new) without the centrality requirement. The result
    /// is a magma, not a group, when some `y¹_i` is not central.
    pub fn new_unchecked(g1: G, y1: Vec<G::Elem>, n: usize) -> Result<Self> {
        if y1.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: y1.len(),
            });
        }
        if n > 63 {
            return Err(Error::too_large("n", n, 63));
        }
        let report = involution_report(&g1, &y1)?;
        if !report.passed() {
            return Err(Error::Invalid(format!(
                "ȳ¹ is not a commuting involution sequence: order-2 failures {:?}, non-commuting {:?}, |⟨ȳ¹⟩| = {}",
                report.not_order_two, report.not_commuting, report.generated_order
            )));
        }
        let y1_table = (n <= Y1_TABLE_MAX_N).then(|| {
            let mut t = Vec::with_capacity(1 << n);
            t.push(g1.identity());
            for mask in 1u64..(1 << n) {
                let low = mask.trailing_zeros() as usize;
                let rest = &t[(mask & (mask - 1)) as usize];
                t.push(g1.mul(rest, &y1[low]));
            }
            t
        });
        Ok(G2Group {
            n,
            g1,
            y1,
            z1: BTreeMap::new(),
            y1_table,
            law: G2Law::Standard,
        })
    }

    /// `G₂` over the first-stage group of a CR witness, with `z¹ = z̄`.
    pub fn from_witness(w: CrWitness<G>) -> Result<Self> {
        Ok(Self::new(w.group, w.y, w.n)?.with_z1(w.z))
    }

    pub fn with_z1(mut self, z1: BTreeMap<u64, G::Elem>) -> Self {
        self.z1 = z1;
        self
    }

    pub fn with_law(mut self, law: G2Law) -> Self {
        self.law = law;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g1(&self) -> &G {
        &self.g1
    }

    pub fn y1(&self) -> &[G::Elem] {
        &self.y1
    }

    pub fn z1(&self) -> &BTreeMap<u64, G::Elem> {
        &self.z1
    }

    /// `z¹_I` when the instance defines it.
    pub fn z1_of(&self, mask: u64) -> Option<&G::Elem> {
        self.z1.get(&mask)
    }

    pub fn law(&self) -> G2Law {
        self.law
    }

    /// `y¹_U = ∏_{i ∈ U} y¹_i` in `G₁`.
    pub fn y1_of(&self, mask: u64) -> G::Elem {
        match &self.y1_table {
            Some(t) => t[mask as usize].clone(),
            None => crate::bits::indices(mask)
                .fold(self.g1.identity(), |acc, i| self.g1.mul(&acc, &self.y1[i])),
        }
    }

    /// `𝔠(i₀, i₁)`.
    pub fn frak_c(&self, i0: usize, i1: usize) -> G::Elem {
        if i0 == i1 {
            self.y1[i0].clone()
        } else {
            self.g1.identity()
        }
    }

    /// `g ∈ G₁` as `(∅, ∅, g)`.
    pub fn embed(&self, g: G::Elem) -> G2Elem<G::Elem> {
        G2Elem { u3: 0, u2: 0, g }
    }

    /// `y²_i`.
    pub fn y2(&self, i: usize) -> G2Elem<G::Elem> {
        G2Elem {
            u3: 0,
            u2: 1 << i,
            g: self.g1.identity(),
        }
    }

    /// `y³_i`.
    pub fn y3(&self, i: usize) -> G2Elem<G::Elem> {
        G2Elem {
            u3: 1 << i,
            u2: 0,
            g: self.g1.identity(),
        }
    }

    /// `y_{(3, I)} = ∏_{i ∈ I} y³_i`, built directly in normal form.
    pub fn y3_set(&self, mask: u64) -> G2Elem<G::Elem> {
        G2Elem {
            u3: mask,
            u2: 0,
            g: self.g1.identity(),
        }
    }

    /// `(𝒰₃(x), 𝒰₂(x), y_{(1,x)})`.
    pub fn normal_form(&self, x: &G2Elem<G::Elem>) -> (u64, u64, G::Elem) {
        (x.u3, x.u2, x.g.clone())
    }

    fn check_n(&self) -> u64 {
        full_mask(self.n)
    }

    /// `4ⁿ`.
    pub fn normal_form_count(&self) -> BigUint {
        BigUint::from(1u8) << (2 * self.n)
    }
}

impl<G: FiniteGroup> FiniteGroup for G2Group<G> {
    type Elem = G2Elem<G::Elem>;

    fn kind(&self) -> GroupKind {
        GroupKind::NormalFormG2
    }

    fn order(&self) -> BigUint {
        self.normal_form_count() * self.g1.order()
    }

    fn identity(&self) -> Self::Elem {
        self.embed(self.g1.identity())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let gh = self.g1.mul(&a.g, &b.g);
        let g = match self.law {
            G2Law::Standard => {
                let cross = a.u2 & b.u3;
                if cross == 0 {
                    gh
                } else {
                    self.g1.mul(&self.y1_of(cross), &gh)
                }
            }
            G2Law::WithoutCorrection => gh,
        };
        G2Elem {
            u3: a.u3 ^ b.u3,
            u2: a.u2 ^ b.u2,
            g,
        }
    }

    /// `(U₃,U₂,g)⁻¹ = (U₃, U₂, g⁻¹·y¹_{U₂∩U₃})`.
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        let gi = self.g1.inv(&a.g);
        let g = match self.law {
            G2Law::Standard => self.g1.mul(&gi, &self.y1_of(a.u2 & a.u3)),
            G2Law::WithoutCorrection => gi,
        };
        G2Elem {
            u3: a.u3,
            u2: a.u2,
            g,
        }
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        let m = self.check_n();
        a.u3 & !m == 0 && a.u2 & !m == 0 && self.g1.contains(&a.g)
    }

    fn elements(&self) -> Result<Vec<Self::Elem>> {
        enumeration_guard(self)?;
        let g1 = self.g1.elements()?;
        let mut out = Vec::with_capacity(g1.len() << (2 * self.n));
        for u3 in 0..(1u64 << self.n) {
            for u2 in 0..(1u64 << self.n) {
                for g in &g1 {
                    out.push(G2Elem {
                        u3,
                        u2,
                        g: g.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Self::Elem {
        G2Elem {
            u3: rng.next_u64() & self.check_n(),
            u2: rng.next_u64() & self.check_n(),
            g: self.g1.random_element(rng),
        }
    }

    /// `U3;U2;g` with index lists comma-separated.
    fn format_element(&self, a: &Self::Elem) -> String {
        format!(
            "{};{};{}",
            format_mask(a.u3),
            format_mask(a.u2),
            self.g1.format_element(&a.g)
        )
    }

    fn parse_element(&self, text: &str) -> Result<Self::Elem> {
        let mut parts = text.splitn(3, ';');
        let (Some(u3), Some(u2), Some(g)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(0, format!("expected `U3;U2;g`, got `{text}`")));
        };
        Ok(G2Elem {
            u3: parse_mask(u3, self.n)?,
            u2: parse_mask(u2, self.n)?,
            g: self.g1.parse_element(g)?,
        })
    }

    fn generators(&self) -> Option<Vec<Self::Elem>> {
        let mut gens: Vec<_> = self
            .g1
            .generators()?
            .into_iter()
            .map(|g| self.embed(g))
            .collect();
        for i in 0..self.n {
            gens.push(self.y2(i));
            gens.push(self.y3(i));
        }
        Some(gens)
    }
}

impl<G: FiniteGroup + GroupIo> GroupIo for G2Group<G> {
    fn to_group_file(&self) -> GroupFile {
        let mut f = GroupFile::new();
        f.push("kind", self.kind());
        f.push("n", self.n);
        f.append_section("g1", &self.g1.to_group_file());
        for (i, y) in self.y1.iter().enumerate() {
            f.push(format!("y1.{i}"), self.g1.format_element(y));
        }
        for (mask, z) in &self.z1 {
            f.push(
                format!("z1.{}", format_mask(*mask)),
                self.g1.format_element(z),
            );
        }
        f
    }

    fn from_group_file(file: &GroupFile) -> Result<Self> {
        if file.kind()? != GroupKind::NormalFormG2 {
            return Err(Error::Invalid("expected kind normal-form-g2".into()));
        }
        let n = file.require_usize("n")?;
        if n > 63 {
            return Err(Error::too_large("n", n, 63));
        }
        let g1 = G::from_group_file(&file.section("g1"))?;
        let mut y1 = vec![None; n];
        for (label, e) in read_named_elements(&g1, file, "y1")? {
            let i: usize = label
                .parse()
                .map_err(|_| Error::Invalid(format!("bad y1 label `{label}`")))?;
            *y1.get_mut(i)
                .ok_or(Error::IndexOutOfRange { index: i, len: n })? = Some(e);
        }
        let y1 = y1
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| Error::Invalid(format!("missing y1.{i}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut z1 = BTreeMap::new();
        for (label, e) in read_named_elements(&g1, file, "z1")? {
            z1.insert(parse_mask(&label, n)?, e);
        }
        Ok(G2Group::new(g1, y1, n)?.with_z1(z1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationFamily {
    /// equations of `G₁` (the embedding is a homomorphism)
    Alpha,
    /// `y^ℓ_i` has order 2
    Beta,
    /// `y^ℓ_i`, `y^ℓ_j` commute
    Gamma,
    /// `y^ℓ_i` commutes with `G₁`
    Delta,
    /// `[y²_i, y³_j] = 𝔠(i, j)`
    Epsilon,
    /// `y³_{U₃}·y²_{U₂}·g` has normal form `(U₃, U₂, g)`
    NormalForm,
    /// `[y¹_i, g] = e` for `g ∈ G₁`, a consequence of (δ) and (ε)
    Centrality,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 7] = [
        RelationFamily::Alpha,
        RelationFamily::Beta,
        RelationFamily::Gamma,
        RelationFamily::Delta,
        RelationFamily::Epsilon,
        RelationFamily::NormalForm,
        RelationFamily::Centrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Alpha => "alpha",
            RelationFamily::Beta => "beta",
            RelationFamily::Gamma => "gamma",
            RelationFamily::Delta => "delta",
            RelationFamily::Epsilon => "epsilon",
            RelationFamily::NormalForm => "normal-form",
            RelationFamily::Centrality => "centrality",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyResult {
    pub family: RelationFamily,
    pub checked: u64,
    pub exhaustive: bool,
    /// Up to 16 human-readable counterexamples.
    pub violations: Vec<String>,
    pub violation_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub families: Vec<FamilyResult>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.violation_count == 0)
    }

    pub fn family(&self, family: RelationFamily) -> &FamilyResult {
        self.families
            .iter()
            .find(|f| f.family == family)
            .expect("all families reported")
    }
}

/// Work above this many checks per family switches to seeded sampling.
const RELATION_EXHAUSTIVE_CAP: u64 = 1 << 24;
const RELATION_SAMPLES: u64 = 100_000;

struct Tally {
    family: RelationFamily,
    checked: u64,
    exhaustive: bool,
    violations: Vec<String>,
    count: u64,
}

impl Tally {
    fn new(family: RelationFamily, exhaustive: bool) -> Self {
        Tally {
            family,
            checked: 0,
            exhaustive,
            violations: Vec::new(),
            count: 0,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.count += 1;
            if self.violations.len() < 16 {
                self.violations.push(describe());
            }
        }
    }

    fn finish(self) -> FamilyResult {
        FamilyResult {
            family: self.family,
            checked: self.checked,
            exhaustive: self.exhaustive,
            violations: self.violations,
            violation_count: self.count,
        }
    }
}

impl<G: FiniteGroup> G2Group<G> {
    /// Verifies the defining relations `(α)–(ε)` and the normal-form
    /// decomposition on the realized generators, computing every product
    /// through the group law.
    pub fn relation_check(&self, seed: u64) -> Result<RelationReport> {
        let g1 = &self.g1;
        let g1_els = g1.elements()?;
        let h = g1_els.len() as u64;
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut families = Vec::new();
        let fmt = |x: &G2Elem<G::Elem>| self.format_element(x);

        // (α)
        let exhaustive = h * h <= RELATION_EXHAUSTIVE_CAP;
        let mut t = Tally::new(RelationFamily::Alpha, exhaustive);
        let check_alpha = |a: &G::Elem, b: &G::Elem, t: &mut Tally| {
            let lhs = self.mul(&self.embed(a.clone()), &self.embed(b.clone()));
            let rhs = self.embed(g1.mul(a, b));
            t.record(lhs == rhs, || {
                format!("{} * {}", g1.format_element(a), g1.format_element(b))
            });
        };
        if exhaustive {
            for a in &g1_els {
                for b in &g1_els {
                    check_alpha(a, b, &mut t);
                }
            }
        } else {
            for _ in 0..RELATION_SAMPLES {
                let a = g1.random_element(&mut rng);
                let b = g1.random_element(&mut rng);
                check_alpha(&a, &b, &mut t);
            }
        }
        families.push(t.finish());

        let gens: Vec<(usize, usize, G2Elem<G::Elem>)> = (0..n)
            .flat_map(|i| [(2, i, self.y2(i)), (3, i, self.y3(i))])
            .collect();
        let e = self.identity();

        // (β)
        let mut t = Tally::new(RelationFamily::Beta, true);
        for (l, i, y) in &gens {
            t.record(*y != e && self.mul(y, y) == e, || format!("y{l}_{i}"));
        }
        families.push(t.finish());

        // (γ)
        let mut t = Tally::new(RelationFamily::Gamma, true);
        for l in [2, 3] {
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = if l == 2 {
                        (self.y2(i), self.y2(j))
                    } else {
                        (self.y3(i), self.y3(j))
                    };
                    t.record(commutes(self, &a, &b), || format!("y{l}_{i}, y{l}_{j}"));
                }
            }
        }
        families.push(t.finish());

        // (δ)
        let exhaustive = 2 * n as u64 * h <= RELATION_EXHAUSTIVE_CAP;
        let mut t = Tally::new(RelationFamily::Delta, exhaustive);
        let sample: Vec<G::Elem> = if exhaustive {
            g1_els.clone()
        } else {
            (0..RELATION_SAMPLES)
                .map(|_| g1.random_element(&mut rng))
                .collect()
        };
        for (l, i, y) in &gens {
            for g in &sample {
                let eg = self.embed(g.clone());
                t.record(commutes(self, y, &eg), || {
                    format!("y{l}_{i} vs {}", g1.format_element(g))
                });
            }
        }
        families.push(t.finish());

        // (ε)
        let mut t = Tally::new(RelationFamily::Epsilon, true);
        for i in 0..n {
            for j in 0..n {
                let lhs = commutator(self, &self.y2(i), &self.y3(j));
                let rhs = self.embed(self.frak_c(i, j));
                t.record(lhs == rhs, || {
                    format!("[y2_{i}, y3_{j}] = {} != {}", fmt(&lhs), fmt(&rhs))
                });
            }
        }
        families.push(t.finish());

        // normal form via generator products
        let total = h << (2 * n);
        let exhaustive = total <= RELATION_EXHAUSTIVE_CAP;
        let mut t = Tally::new(RelationFamily::NormalForm, exhaustive);
        let word_for = |u3: u64, u2: u64, g: &G::Elem| {
            let mut acc = self.identity();
            for i in crate::bits::indices(u3) {
                acc = self.mul(&acc, &self.y3(i));
            }
            for i in crate::bits::indices(u2) {
                acc = self.mul(&acc, &self.y2(i));
            }
            self.mul(&acc, &self.embed(g.clone()))
        };
        let check_nf = |u3: u64, u2: u64, g: &G::Elem, t: &mut Tally| {
            let x = word_for(u3, u2, g);
            t.record(self.normal_form(&x) == (u3, u2, g.clone()), || {
                format!(
                    "{} -> {}",
                    fmt(&G2Elem {
                        u3,
                        u2,
                        g: g.clone()
                    }),
                    fmt(&x)
                )
            });
        };
        if exhaustive {
            for u3 in 0..(1u64 << n) {
                for u2 in 0..(1u64 << n) {
                    for g in &g1_els {
                        check_nf(u3, u2, g, &mut t);
                    }
                }
            }
        } else {
            for _ in 0..RELATION_SAMPLES {
                let x = self.random_element(&mut rng);
                check_nf(x.u3, x.u2, &x.g, &mut t);
            }
        }
        families.push(t.finish());

        // consequence of (δ) and (ε), evaluated inside G₂
        let mut t = Tally::new(RelationFamily::Centrality, true);
        let gens = g1.generators().unwrap_or_else(|| g1_els.clone());
        for i in 0..n {
            let y = self.embed(self.y1[i].clone());
            for g in &gens {
                let eg = self.embed(g.clone());
                t.record(commutes(self, &y, &eg), || {
                    format!("y1_{i} vs {}", g1.format_element(g))
                });
            }
        }
        families.push(t.finish());

        Ok(RelationReport { families })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::toys::elementary_g2;
    use crate::group::{check_group_axioms, CheckMode, ElementaryAbelian2};

    #[test]
    fn toy_size() {
        let g = elementary_g2(2, 2).unwrap();
        assert_eq!(g.order(), BigUint::from(64u32));
        assert_eq!(g.elements().unwrap().len(), 64);
    }

    #[test]
    fn example_products() {
        let g = elementary_g2(2, 2).unwrap();
        let a = G2Elem {
            u3: 0b01,
            u2: 0,
            g: 0,
        };
        let b = G2Elem {
            u3: 0,
            u2: 0b01,
            g: 0,
        };
        assert_eq!(
            g.mul(&a, &b),
            G2Elem {
                u3: 0b01,
                u2: 0b01,
                g: 0
            }
        );
        // [y²₀, y³₀] = y¹₀
        assert_eq!(
            commutator(&g, &g.y2(0), &g.y3(0)),
            G2Elem {
                u3: 0,
                u2: 0,
                g: 0b01
            }
        );
    }

    #[test]
    fn closed_form_inverse() {
        let g = elementary_g2(3, 3).unwrap();
        for x in g.elements().unwrap() {
            assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
            assert_eq!(g.mul(&g.inv(&x), &x), g.identity());
        }
    }

    #[test]
    fn associativity_on_toy64() {
        let g = elementary_g2(2, 2).unwrap();
        let r = check_group_axioms(&g, CheckMode::Exhaustive, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.triples_checked, 64 * 64 * 64);
    }

    #[test]
    fn relations_hold_and_negative_control_fails() {
        let g = elementary_g2(2, 2).unwrap();
        let r = g.relation_check(0).unwrap();
        assert!(r.passed(), "{r:?}");
        let bad = g
            .with_law(G2Law::WithoutCorrection)
            .relation_check(0)
            .unwrap();
        assert!(bad.family(RelationFamily::Epsilon).violation_count > 0);
        assert_eq!(bad.family(RelationFamily::Delta).violation_count, 0);
    }

    #[test]
    fn noncentral_y1_breaks_associativity() {
        // G₁ = (Z/2)^4 ⋊ ⟨π_{0,1}⟩ where π moves y¹_0
        let pi = crate::cr::toys::padded_pi(2, 0b11, 4).unwrap();
        let g1 = crate::group::Semidirect::new(4, vec![pi.clone()], 16).unwrap();
        let y1 = vec![g1.vector(1), g1.vector(2)];
        assert!(matches!(
            build_g2(g1.clone(), y1.clone(), 2),
            Err(Error::ConstructionFailed(_))
        ));
        let magma = G2Group::new_unchecked(g1.clone(), y1, 2).unwrap();
        let r = check_group_axioms(&magma, CheckMode::Exhaustive, 0).unwrap();
        assert!(r.associativity_failures > 0);
        let rel = magma.relation_check(0).unwrap();
        assert!(rel.family(RelationFamily::Centrality).violation_count > 0);
    }

    #[test]
    fn rejects_bad_y1() {
        let g1 = ElementaryAbelian2::new(2).unwrap();
        assert!(build_g2(g1.clone(), vec![1, 1], 2).is_err());
        assert!(build_g2(g1, vec![1], 2).is_err());
    }

    #[test]
    fn text_and_file_round_trip() {
        let g = crate::cr::toys::named_semidirect("sd512").unwrap();
        let x = G2Elem {
            u3: 0b10,
            u2: 0b11,
            g: crate::group::SdElem { auto: 1, vec: 0x5 },
        };
        let text = g.format_element(&x);
        assert_eq!(text, "1;0,1;1:5");
        assert_eq!(g.parse_element(&text).unwrap(), x);
        let back =
            G2Group::<crate::group::Semidirect>::from_group_file(&g.to_group_file()).unwrap();
        assert_eq!(back.order(), g.order());
        assert_eq!(back.z1(), g.z1());
        assert!(g.parse_element("1;0;").is_err());
        assert!(g.parse_element("5;0;0:0").is_err());
    }
}
