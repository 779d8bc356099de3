use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::count::{count_x_structured_with, CountReport};
use super::partition::{find_partition_istar, partition_holds, PartitionChoice};
use crate::bits::{format_mask, submasks};
use crate::cr::{check_cr_shape, G2Elem, G2Group};
use crate::error::{Error, Result};
use crate::group::{commutator, commutes, max_nontrivial_centralizer, FiniteGroup};
use crate::report::{Check, Status};

/// Sample count for equation (⋆) on groups too large to scan.
pub const STAR_SAMPLES: u64 = 100_000;

/// Largest `|G₂|` scanned element by element.
const SCAN_CAP: u64 = 1 << 20;

fn scannable<G: FiniteGroup>(g2: &G2Group<G>) -> bool {
    g2.order() <= BigUint::from(SCAN_CAP)
}

/// Checks `[a, y_{(3, I_*)}] = y¹_{𝒰₂(a) ∩ I_*}` for every `a ∈ G₂`, or for
/// [`STAR_SAMPLES`] seeded samples when `G₂` is too large to scan.
pub fn check_equation_star<G: FiniteGroup>(
    g2: &G2Group<G>,
    istar: u64,
    seed: u64,
) -> Result<Check> {
    if istar >> g2.n() != 0 {
        return Err(Error::Invalid(format!(
            "I* = {{{}}} is not a subset of [0,{})",
            format_mask(istar),
            g2.n()
        )));
    }
    let c = g2.y3_set(istar);
    let holds = |a: &G2Elem<G::Elem>| commutator(g2, a, &c) == g2.embed(g2.y1_of(a.u2 & istar));
    let mut checked = 0u64;
    let mut failures = Vec::new();
    let mut failed = 0u64;
    let mut record = |a: &G2Elem<G::Elem>| {
        checked += 1;
        if !holds(a) {
            failed += 1;
            if failures.len() < 16 {
                failures.push(g2.format_element(a));
            }
        }
    };
    let mode = if scannable(g2) {
        for a in g2.elements()? {
            record(&a);
        }
        "exhaustive"
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..STAR_SAMPLES {
            record(&g2.random_element(&mut rng));
        }
        "sampled"
    };
    Ok(Check::new("star", Status::from_bool(failed == 0))
        .value("istar", format_mask(istar))
        .value("mode", mode)
        .value("checked", checked)
        .value("matched", checked - failed)
        .witnesses(failures))
}

/// `U ⊆ I_*` at which clause (d) fails for `c_*`: `[y¹_U, c_*] = e` should
/// hold exactly for `U ∈ {∅, I_*}`.
pub fn stage1_clause_d_violations<G: FiniteGroup>(
    g2: &G2Group<G>,
    istar: u64,
    c_star: &G::Elem,
) -> Vec<u64> {
    submasks(istar)
        .filter(|&u| commutes(g2.g1(), &g2.y1_of(u), c_star) != (u == 0 || u == istar))
        .collect()
}

/// Clause (e) for `G₁`: `max_{s ≠ e} |C_{G₁}(s)| < |G₁| / n²`, when computable.
pub fn stage1_clause_e<G: FiniteGroup>(g2: &G2Group<G>) -> Option<bool> {
    let n2 = BigUint::from(g2.n() * g2.n());
    max_nontrivial_centralizer(g2.g1())
        .ok()
        .map(|c| c * n2 < g2.g1().order())
}

/// The classes `B_I = {a ∈ G₂ : [a, c] = y¹_I}`, `I ⊆ I_*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub istar: u64,
    pub class_sizes: BTreeMap<u64, u64>,
    /// `2ⁿ · 2^{n-|I_*|} · |G₁|`.
    pub expected_size: BigUint,
    pub equal_sizes: bool,
    /// The values `y¹_I` are pairwise distinct, so no element lies in two classes.
    pub disjoint: bool,
    pub covers: bool,
    pub unclassified: u64,
    /// Elements where `[[x, c], c_*] = e` disagrees with `x ∈ B_∅ ∪ B_{I_*}`.
    pub equivalence_mismatches: u64,
    pub clause_d_violations: Vec<u64>,
}

impl PartitionReport {
    pub fn status(&self) -> Status {
        if !(self.equal_sizes && self.disjoint && self.covers) {
            Status::Fail
        } else if !self.clause_d_violations.is_empty() {
            Status::Conditional
        } else if self.equivalence_mismatches > 0 {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn to_check(&self) -> Check {
        let status = self.status();
        let mut c = Check::new("b-partition", status)
            .value("istar", format_mask(self.istar))
            .value("classes", self.class_sizes.len())
            .value("expected-size", &self.expected_size);
        for (u, n) in &self.class_sizes {
            c = c.value(format!("B{{{}}}", format_mask(*u)), n);
        }
        c = c
            .value("equal", self.equal_sizes)
            .value("disjoint", self.disjoint)
            .value("covers", self.covers)
            .value("equivalence-mismatches", self.equivalence_mismatches);
        if status == Status::Conditional {
            c = c.with_note("stage-1 clause (d)").witnesses(
                self.clause_d_violations
                    .iter()
                    .map(|u| format!("clause (d) fails at U = {{{}}}", format_mask(*u))),
            );
        }
        c
    }
}

/// Builds every `B_I` and checks the crucial-lemma clause (d) structure.
/// `c_*` defaults to `z¹_{I_*}`.
pub fn check_b_partition<G: FiniteGroup>(
    g2: &G2Group<G>,
    istar: u64,
    c_star: Option<&G::Elem>,
) -> Result<PartitionReport> {
    let c_star = match c_star {
        Some(c) => c.clone(),
        None => g2.z1_of(istar).cloned().ok_or_else(|| {
            Error::Invalid(format!("no z1 element for I* = {{{}}}", format_mask(istar)))
        })?,
    };
    if !scannable(g2) {
        return Err(Error::too_large(
            "B-partition scan |G2|",
            g2.order(),
            SCAN_CAP,
        ));
    }
    let c = g2.y3_set(istar);
    let cs = g2.embed(c_star.clone());
    let e = g2.identity();
    let lookup: HashMap<G::Elem, u64> = submasks(istar).map(|u| (g2.y1_of(u), u)).collect();
    let classes = 1u64 << istar.count_ones();
    let disjoint = lookup.len() as u64 == classes;

    let mut sizes: BTreeMap<u64, u64> = submasks(istar).map(|u| (u, 0)).collect();
    let mut unclassified = 0u64;
    let mut mismatches = 0u64;
    for x in g2.elements()? {
        let d = commutator(g2, &x, &c);
        let class = if d.u3 == 0 && d.u2 == 0 {
            lookup.get(&d.g).copied()
        } else {
            None
        };
        let Some(u) = class else {
            unclassified += 1;
            continue;
        };
        *sizes.get_mut(&u).expect("class key") += 1;
        let inner_trivial = commutator(g2, &d, &cs) == e;
        if inner_trivial != (u == 0 || u == istar) {
            mismatches += 1;
        }
    }
    let n = g2.n();
    let expected_size =
        (BigUint::from(1u8) << (2 * n - istar.count_ones() as usize)) * g2.g1().order();
    let equal_sizes = sizes.values().all(|&s| BigUint::from(s) == expected_size);
    Ok(PartitionReport {
        istar,
        class_sizes: sizes,
        expected_size,
        equal_sizes,
        disjoint,
        covers: unclassified == 0,
        unclassified,
        equivalence_mismatches: mismatches,
        clause_d_violations: stage1_clause_d_violations(g2, istar, &c_star),
    })
}

/// `(I_*, c, c_*)` for a tuple `x₀, …, x_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrucialWitness<E> {
    pub istar: u64,
    /// `y_{(3, I_*)}`
    pub c: G2Elem<E>,
    /// `z¹_{I_*}` embedded in `G₂`
    pub c_star: G2Elem<E>,
    pub xs: Vec<G2Elem<E>>,
}

#[derive(Clone, Debug)]
pub struct CrucialReport<E> {
    pub witness: CrucialWitness<E>,
    pub partition: PartitionChoice,
    pub checks: Vec<Check>,
    pub count: Option<CountReport>,
}

impl<E> CrucialReport<E> {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Unmet hypotheses of the counting bound for this instance.
pub fn bound_hypotheses<G: FiniteGroup>(g2: &G2Group<G>, istar: u64) -> Vec<String> {
    let mut out = Vec::new();
    match stage1_clause_e(g2) {
        Some(true) => {}
        Some(false) => out.push("stage-1 clause (e) fails".to_string()),
        None => out.push("stage-1 clause (e) not computable".to_string()),
    }
    let m = istar.count_ones() as usize;
    if !check_cr_shape(g2.n(), m)
        .iter()
        .all(|v| v.clause != crate::cr::ParamClause::Fractions)
    {
        out.push(format!("2/2^{m} + 1/{}^2 < 1/{m} fails", g2.n()));
    }
    out
}

/// Runs the partition lemma on `xs`, sets `c = y_{(3, I_*)}` and
/// `c_* = z¹_{I_*}`, and checks the conclusion clauses (a)–(c).
pub fn crucial_witness<G: FiniteGroup>(
    g2: &G2Group<G>,
    xs: &[G2Elem<G::Elem>],
) -> Result<CrucialReport<G::Elem>> {
    let k = xs.len();
    let n = g2.n();
    if let Some(bad) = xs.iter().find(|x| !g2.contains(x)) {
        return Err(Error::GroupMismatch(format!("{bad:?} is not in G2")));
    }
    let choice = find_partition_istar(g2, xs, k)?;
    let istar = choice.istar;
    let z = g2.z1_of(istar).cloned().ok_or_else(|| {
        Error::Invalid(format!("no z1 element for I* = {{{}}}", format_mask(istar)))
    })?;
    let c = g2.y3_set(istar);
    let c_star = g2.embed(z.clone());
    let e = g2.identity();
    let mut checks = Vec::new();

    let shape_ok = istar.count_ones() as usize == n >> k
        && g2.normal_form(&c) == (istar, 0, g2.g1().identity())
        && c_star.u3 == 0
        && c_star.u2 == 0;
    checks.push(
        Check::new("witness-shape", Status::from_bool(shape_ok))
            .value("istar", format_mask(istar))
            .value("size", istar.count_ones())
            .value("c", g2.format_element(&c))
            .value("c*", g2.format_element(&c_star)),
    );
    checks.push(
        Check::new(
            "partition",
            Status::from_bool(partition_holds(n, k, xs, istar)),
        )
        .value("k", k)
        .value(
            "eta",
            choice
                .eta
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>(),
        ),
    );

    let d_violations = stage1_clause_d_violations(g2, istar, &z);
    let inner: Vec<G2Elem<G::Elem>> = xs
        .iter()
        .map(|x| commutator(g2, &commutator(g2, x, &c), &c_star))
        .collect();
    let a_bad: Vec<usize> = (0..k).filter(|&l| inner[l] != e).collect();
    let a_status = if a_bad.is_empty() {
        Status::Pass
    } else if !d_violations.is_empty() {
        Status::Conditional
    } else {
        Status::Fail
    };
    let mut a = Check::new("conclusion-a", a_status).value("tuple", k);
    if a_status == Status::Conditional {
        a = a.with_note("stage-1 clause (d)");
    }
    checks.push(a.witnesses(a_bad.iter().map(|l| format!("[[x{l},c],c*] != e"))));

    let order = g2.order();
    let (counts, method): (Vec<BigUint>, &str) = if scannable(g2) {
        let els = g2.elements()?;
        (
            inner
                .iter()
                .map(|v| BigUint::from(els.iter().filter(|y| commutes(g2, v, y)).count()))
                .collect(),
            "enumerated",
        )
    } else {
        // a trivial inner value commutes with everything; otherwise the
        // generator test decides centrality
        let gens = g2.generators().unwrap_or_default();
        (
            inner
                .iter()
                .map(|v| {
                    if *v == e || gens.iter().all(|h| commutes(g2, v, h)) {
                        order.clone()
                    } else {
                        BigUint::from(0u8)
                    }
                })
                .collect(),
            "central-test",
        )
    };
    let b_ok = counts.iter().all(|n| *n == order);
    let b_status = if b_ok {
        Status::Pass
    } else if !d_violations.is_empty() {
        Status::Conditional
    } else {
        Status::Fail
    };
    let mut b = Check::new("conclusion-b", b_status).value("method", method);
    for (l, n) in counts.iter().enumerate() {
        b = b.value(format!("y-count{l}"), n);
    }
    if b_status == Status::Conditional {
        b = b.with_note("stage-1 clause (d)");
    }
    checks.push(b.value("order", &order));

    let count = match count_x_structured_with(g2, istar, &z) {
        Ok(r) => {
            checks.push(
                r.bound_check(&bound_hypotheses(g2, istar))
                    .with_name("conclusion-c"),
            );
            Some(r)
        }
        Err(Error::ClauseDViolation(msg)) => {
            checks.push(Check::conditional("conclusion-c", "stage-1 clause (d)").witness(msg));
            None
        }
        Err(Error::TooLarge { what, size, cap }) => {
            checks.push(Check::skipped(
                "conclusion-c",
                format!("{what} {size} exceeds {cap}"),
            ));
            None
        }
        Err(err) => return Err(err),
    };

    Ok(CrucialReport {
        witness: CrucialWitness {
            istar,
            c,
            c_star,
            xs: xs.to_vec(),
        },
        partition: choice,
        checks,
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::toys::{elementary_g2, named_semidirect};
    use crate::cr::G2Elem;

    #[test]
    fn star_on_toy64() {
        let g = elementary_g2(2, 2).unwrap();
        for istar in 0..4 {
            let c = check_equation_star(&g, istar, 0).unwrap();
            assert_eq!(c.status, Status::Pass);
            assert_eq!(c.values.get("matched"), Some("64"));
        }
        let a = G2Elem {
            u3: 0,
            u2: 0b10,
            g: 0,
        };
        assert_eq!(commutator(&g, &a, &g.y3_set(0b11)), g.embed(0b10));
    }

    #[test]
    fn b_partition_on_toy64_is_conditional() {
        let g = elementary_g2(2, 2).unwrap();
        let r = check_b_partition(&g, 0b11, Some(&0b01)).unwrap();
        assert_eq!(
            r.class_sizes.values().copied().collect::<Vec<_>>(),
            vec![16; 4]
        );
        assert!(r.equal_sizes && r.disjoint && r.covers);
        assert_eq!(r.status(), Status::Conditional);
    }

    #[test]
    fn b_partition_on_sd512() {
        let g = named_semidirect("sd512").unwrap();
        let r = check_b_partition(&g, 0b11, None).unwrap();
        assert!(r.equal_sizes && r.disjoint && r.covers, "{r:?}");
        assert_eq!(r.expected_size, BigUint::from(128u32));
        assert_eq!(r.clause_d_violations, vec![0b01, 0b10]);
        assert_eq!(r.status(), Status::Conditional);
        let single = check_b_partition(&g, 0b01, None).unwrap();
        assert_eq!(single.status(), Status::Pass);
    }

    #[test]
    fn witness_for_identity_tuple() {
        let g = named_semidirect("sd512").unwrap();
        let e = g.identity();
        let r = crucial_witness(&g, &[e]).unwrap();
        assert_eq!(r.witness.istar, 0b01);
        for name in ["witness-shape", "partition", "conclusion-a", "conclusion-b"] {
            assert_eq!(r.check(name).unwrap().status, Status::Pass, "{name}");
        }
        // |I*| = 1: the bound |G₂|²/1 is met
        assert_eq!(r.check("conclusion-c").unwrap().status, Status::Pass);
        assert!(r.count.is_some());
    }
}
