use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bits::{format_mask, submasks};
use crate::cr::{G2Elem, G2Group};
use crate::error::{Error, Result};
use crate::group::{centralizer_count, commutator, commutes, FiniteGroup};
use crate::ratio::{format_ratio, ratio};
use crate::report::{Check, Status};

/// Largest `|G₂|²` counted pair by pair.
pub const NAIVE_PAIR_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Naive,
    Structured,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Naive => "naive",
            CountMethod::Structured => "structured",
        }
    }
}

/// `|X|` for `X = {(x, y) : [[[x, c], c_*], y] = e}` and its split into
/// `X₁ = {(x, y) : [x, c] ∈ {e, y¹_{I_*}}}` and
/// `X₂ = {(x, y) ∈ X : [x, c] = y¹_I, I ⊆ I_*, I ∉ {∅, I_*}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub method: CountMethod,
    pub g2_order: BigUint,
    pub istar: Option<u64>,
    pub x: BigUint,
    pub x1: Option<BigUint>,
    pub x2: Option<BigUint>,
    /// `X = X₁ ∪ X₂` (the union is disjoint by definition).
    pub union_matches: Option<bool>,
    /// Elements `x` whose `[x, c]` is not any `y¹_I` with `I ⊆ I_*`.
    pub unclassified: u64,
    /// Classes `U ∉ {∅, I_*}` with `[y¹_U, c_*] = e`, counted anyway.
    pub degenerate: Vec<u64>,
}

impl CountReport {
    /// `|G₂ × G₂|`.
    pub fn pair_space(&self) -> BigUint {
        &self.g2_order * &self.g2_order
    }

    /// `⌊|G₂|² / m⌋` with `m = |I_*|`.
    pub fn bound(&self) -> Option<BigUint> {
        let m = self.istar?.count_ones();
        (m > 0).then(|| self.pair_space() / BigUint::from(m))
    }

    /// Values shared by the text and JSON reports.
    pub fn to_check(&self, name: &str, status: Status) -> Check {
        let mut c = Check::new(name, status)
            .value("method", self.method.as_str())
            .value("X", &self.x);
        if let Some(x1) = &self.x1 {
            c = c.value("X1", x1);
        }
        if let Some(x2) = &self.x2 {
            c = c.value("X2", x2);
        }
        if let Some(u) = self.union_matches {
            c = c.value("union", u);
        }
        c = c.value("pairs", self.pair_space()).value(
            "density",
            format_ratio(&ratio(self.x.clone(), self.pair_space())),
        );
        if let Some(b) = self.bound() {
            c = c.value("bound", b);
        }
        c
    }

    /// The crucial-lemma bound `|X| ≤ |G₂|²/m`. `hypotheses` lists the
    /// unmet hypotheses of the inequality; a miss is `conditional` when any are present.
    pub fn bound_check(&self, hypotheses: &[String]) -> Check {
        let Some(bound) = self.bound() else {
            return Check::skipped("count-bound", "I* is empty");
        };
        let ok = self.x <= bound;
        let status = if ok {
            Status::Pass
        } else if hypotheses.is_empty() {
            Status::Fail
        } else {
            Status::Conditional
        };
        let mut c = self.to_check("count-bound", status);
        if !ok && !hypotheses.is_empty() {
            c = c.with_note(hypotheses.join("; "));
        }
        c
    }
}

/// `I` for each value `y¹_I`, `I ⊆ I_*`.
fn class_lookup<G: FiniteGroup>(g2: &G2Group<G>, istar: u64) -> HashMap<G::Elem, u64> {
    submasks(istar).map(|u| (g2.y1_of(u), u)).collect()
}

/// Exact `|X|` by enumerating `G₂ × G₂`. Scans over `y` are shared between
/// elements `x` with the same inner value `[[x, c], c_*]`.
///
/// The split `X₁`, `X₂` is reported when `c = y_{(3, I_*)}` for some `I_*`.
pub fn count_x_naive<G: FiniteGroup>(
    g2: &G2Group<G>,
    c: &G2Elem<G::Elem>,
    c_star: &G2Elem<G::Elem>,
) -> Result<CountReport> {
    let order = g2.order();
    let pairs = &order * &order;
    if pairs > BigUint::from(NAIVE_PAIR_CAP) {
        return Err(Error::too_large(
            "naive pair space |G2|^2",
            pairs,
            NAIVE_PAIR_CAP,
        ));
    }
    if !g2.contains(c) || !g2.contains(c_star) {
        return Err(Error::GroupMismatch(g2.describe()));
    }
    let els = g2.elements()?;
    let size = els.len() as u64;
    let istar = (c.u2 == 0 && c.g == g2.g1().identity()).then_some(c.u3);
    let lookup = istar.map(|s| class_lookup(g2, s));

    let inner: Vec<(G2Elem<G::Elem>, G2Elem<G::Elem>)> = els
        .par_iter()
        .map(|x| {
            let d = commutator(g2, x, c);
            let v = commutator(g2, &d, c_star);
            (d, v)
        })
        .collect();
    let mut distinct: HashMap<&G2Elem<G::Elem>, u64> = HashMap::new();
    for (_, v) in &inner {
        distinct.entry(v).or_insert(0);
    }
    let keys: Vec<&G2Elem<G::Elem>> = distinct.keys().copied().collect();
    let counts: Vec<u64> = keys
        .par_iter()
        .map(|v| els.iter().filter(|y| commutes(g2, v, y)).count() as u64)
        .collect();
    for (k, n) in keys.into_iter().zip(counts) {
        distinct.insert(k, n);
    }

    let mut x = 0u64;
    let (mut x1, mut x2) = (0u64, 0u64);
    let mut x1_inside = true;
    let mut unclassified = 0u64;
    for (d, v) in &inner {
        let ys = distinct[v];
        x += ys;
        if let (Some(s), Some(look)) = (istar, &lookup) {
            let class = if d.u3 == 0 && d.u2 == 0 {
                look.get(&d.g)
            } else {
                None
            };
            match class {
                Some(&u) if u == 0 || u == s => {
                    x1 += size;
                    x1_inside &= ys == size;
                }
                Some(_) => x2 += ys,
                None => unclassified += 1,
            }
        }
    }
    let split = istar.is_some();
    Ok(CountReport {
        method: CountMethod::Naive,
        g2_order: order,
        istar,
        x: BigUint::from(x),
        x1: split.then(|| BigUint::from(x1)),
        x2: split.then(|| BigUint::from(x2)),
        union_matches: split.then_some(x1_inside && unclassified == 0 && x1 + x2 == x),
        unclassified,
        degenerate: Vec::new(),
    })
}

/// Exact `|X|` for `c = y_{(3, I_*)}`, `c_* = z¹_{I_*}` without enumerating `G₂`.
pub fn count_x_structured<G: FiniteGroup>(g2: &G2Group<G>, istar: u64) -> Result<CountReport> {
    let c_star = g2.z1_of(istar).cloned().ok_or_else(|| {
        Error::Invalid(format!("no z1 element for I* = {{{}}}", format_mask(istar)))
    })?;
    count_x_structured_with(g2, istar, &c_star)
}

/// As [`count_x_structured`] with `c_* ∈ G₁` supplied.
///
/// With `U = 𝒰₂(x) ∩ I_*` and `t_U = [y¹_U, c_*]`, equation (⋆) gives
/// `[[x, c], c_*] = t_U`, so
/// `|X| = Σ_{U ⊆ I_*} N_U · 4ⁿ · |C_{G₁}(t_U)|` with `N_U = 2ⁿ · 2^{n-|I_*|} · |G₁|`.
/// Refuses instances with `t_U = e` for some `U ∉ {∅, I_*}`, which violate
/// clause (d) at stage one.
pub fn count_x_structured_with<G: FiniteGroup>(
    g2: &G2Group<G>,
    istar: u64,
    c_star: &G::Elem,
) -> Result<CountReport> {
    let report = structured(g2, istar, c_star)?;
    if report.degenerate.is_empty() {
        return Ok(report);
    }
    let classes: Vec<String> = report
        .degenerate
        .iter()
        .map(|&u| format!("{{{}}}", format_mask(u)))
        .collect();
    Err(Error::ClauseDViolation(format!(
        "[y1_U, c*] = e for U = {} with U not in {{∅, I*}}",
        classes.join(", ")
    )))
}

/// As [`count_x_structured_with`] but counts classes with `t_U = e` too,
/// listing them in `degenerate`. The sum stays exact: such a class
/// contributes `N_U · |G₂|`.
pub fn count_x_structured_degenerate<G: FiniteGroup>(
    g2: &G2Group<G>,
    istar: u64,
    c_star: &G::Elem,
) -> Result<CountReport> {
    structured(g2, istar, c_star)
}

fn structured<G: FiniteGroup>(
    g2: &G2Group<G>,
    istar: u64,
    c_star: &G::Elem,
) -> Result<CountReport> {
    let n = g2.n();
    let g1 = g2.g1();
    if istar >> n != 0 {
        return Err(Error::IndexOutOfRange {
            index: 63 - istar.leading_zeros() as usize,
            len: n,
        });
    }
    if !g1.contains(c_star) {
        return Err(Error::GroupMismatch(g1.describe()));
    }
    let e1 = g1.identity();
    let order1 = g1.order();
    let k = istar.count_ones() as usize;
    let n_u = (BigUint::from(1u8) << (2 * n - k)) * &order1;
    let four_n = BigUint::from(1u8) << (2 * n);
    let g2_order = &four_n * &order1;

    let mut degenerate = Vec::new();
    let mut x = BigUint::zero();
    let mut x1 = BigUint::zero();
    let mut x2 = BigUint::zero();
    let mut top_trivial = true;
    for u in submasks(istar) {
        let t = commutator(g1, &g2.y1_of(u), c_star);
        let edge = u == 0 || u == istar;
        if !edge && t == e1 {
            degenerate.push(u);
        }
        let c_u = &four_n * centralizer_count(g1, &t)?;
        let pairs = &n_u * &c_u;
        x += &pairs;
        if edge {
            x1 += &n_u * &g2_order;
            if t != e1 {
                top_trivial = false;
            }
        } else {
            x2 += pairs;
        }
    }
    Ok(CountReport {
        method: CountMethod::Structured,
        g2_order,
        istar: Some(istar),
        x,
        x1: Some(x1),
        x2: Some(x2),
        union_matches: Some(top_trivial),
        unclassified: 0,
        degenerate,
    })
}
