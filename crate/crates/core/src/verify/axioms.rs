use num_bigint::BigUint;

use crate::bits::{format_mask, full_mask, k_subsets};
use crate::cr::CrWitness;
use crate::error::{Error, Result};
use crate::group::{
    commutes, involution_report, max_nontrivial_centralizer, product_over, FiniteGroup,
};
use crate::ratio::{format_ratio, ratio};
use crate::report::{Check, Status};

/// Per-clause results `cr-a` … `cr-e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrAxiomReport {
    pub checks: Vec<Check>,
}

impl CrAxiomReport {
    pub fn clause(&self, c: char) -> &Check {
        let name = format!("cr-{c}");
        self.checks
            .iter()
            .find(|k| k.name == name)
            .expect("every clause is reported")
    }
}

const MAX_WITNESSES: usize = 16;

/// Checks clauses (a)–(e) of CR membership for `(G, ȳ, z̄)`.
///
/// Clause (d) is an exhaustive scan over `I ⊆ [0, n)`, `J ∈ [n]ᵐ`. Clause (e)
/// uses the realization's closed form when it has one (symmetric groups) and
/// conjugacy-class orbits otherwise; it is reported `skipped` when neither fits.
pub fn check_cr_axioms<G: FiniteGroup>(w: &CrWitness<G>) -> Result<CrAxiomReport> {
    let g = &w.group;
    let (n, m) = (w.n, w.m);
    if n > 24 {
        return Err(Error::too_large("n", n, 24));
    }
    let order = g.order();
    let mut checks = Vec::new();

    checks.push(Check::new("cr-a", Status::Pass).value("order", &order));

    let inv = involution_report(g, &w.y)?;
    let mut b = Check::new("cr-b", Status::from_bool(inv.passed() && w.y.len() == n))
        .value("n", n)
        .value("generated-order", inv.generated_order)
        .value("expected-order", BigUint::from(1u8) << n);
    for i in &inv.not_order_two {
        b = b.witness(format!("y{i} does not have order 2"));
    }
    for (i, j) in inv.not_commuting.iter().take(MAX_WITNESSES) {
        b = b.witness(format!("y{i} and y{j} do not commute"));
    }
    checks.push(b);

    let shapes = k_subsets(n, m);
    let mut c_wit = Vec::new();
    for key in w.z.keys() {
        if key.count_ones() as usize != m || key & !full_mask(n) != 0 {
            c_wit.push(format!(
                "z key {{{}}} is not an {m}-subset of [0,{n})",
                format_mask(*key)
            ));
        }
    }
    for s in &shapes {
        if !w.z.contains_key(s) {
            c_wit.push(format!("z_{{{}}} missing", format_mask(*s)));
        }
    }
    for (key, z) in &w.z {
        if !g.contains(z) {
            c_wit.push(format!("z_{{{}}} is not in the group", format_mask(*key)));
        }
    }
    checks.push(
        Check::new("cr-c", Status::from_bool(c_wit.is_empty()))
            .value("m", m)
            .value("expected-keys", shapes.len())
            .value("keys", w.z.len())
            .witnesses(c_wit.into_iter().take(MAX_WITNESSES)),
    );

    let ys: Vec<G::Elem> = (0..1u64 << n)
        .map(|i| product_over(g, &w.y, i))
        .collect::<Result<_>>()?;
    let mut scanned = 0u64;
    let mut bad = 0u64;
    let mut d_wit = Vec::new();
    for j in &shapes {
        let Some(z) = w.z.get(j) else { continue };
        for (i, y) in ys.iter().enumerate() {
            let i = i as u64;
            scanned += 1;
            let expect = i == 0 || i == *j;
            let got = commutes(g, y, z);
            if got != expect {
                bad += 1;
                if d_wit.len() < MAX_WITNESSES {
                    d_wit.push(format!(
                        "[y_{{{}}}, z_{{{}}}] {} e",
                        format_mask(i),
                        format_mask(*j),
                        if got { "=" } else { "!=" }
                    ));
                }
            }
        }
    }
    checks.push(
        Check::new(
            "cr-d",
            Status::from_bool(bad == 0 && scanned > 0 || shapes.is_empty()),
        )
        .value("pairs", scanned)
        .value("violations", bad)
        .witnesses(d_wit),
    );

    let n2 = BigUint::from(n * n);
    let e_check = match max_nontrivial_centralizer(g) {
        Ok(c) => Check::new("cr-e", Status::from_bool(&c * &n2 < order))
            .value("max-centralizer", &c)
            .value("bound", format_ratio(&ratio(order.clone(), n2.clone()))),
        Err(Error::TooLarge { what, size, cap }) => {
            Check::skipped("cr-e", format!("{what} {size} exceeds {cap}"))
        }
        Err(e) => return Err(e),
    };
    checks.push(e_check);
    Ok(CrAxiomReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::build_g1;
    use crate::group::{ElementaryAbelian2, Symmetric};
    use std::collections::BTreeMap;

    #[test]
    fn g1_passes_b_c_d() {
        let w = build_g1(3, 1, 1_000_000).unwrap();
        let r = check_cr_axioms(&w).unwrap();
        for c in ['a', 'b', 'c', 'd'] {
            assert_eq!(r.clause(c).status, Status::Pass, "{:?}", r.clause(c));
        }
        assert_eq!(r.clause('d').values.get("pairs"), Some("24"));
    }

    #[test]
    fn abelian_negative_control() {
        let g = ElementaryAbelian2::new(3).unwrap();
        let y = vec![1, 2, 4];
        let z: BTreeMap<u64, u64> = (0..3).map(|i| (1u64 << i, 1u64 << i)).collect();
        let w = CrWitness {
            group: g,
            n: 3,
            m: 1,
            y,
            z,
        };
        let r = check_cr_axioms(&w).unwrap();
        assert_eq!(r.clause('b').status, Status::Pass);
        assert_eq!(r.clause('c').status, Status::Pass);
        assert_eq!(r.clause('d').status, Status::Fail);
        assert_eq!(r.clause('e').status, Status::Fail);
    }

    #[test]
    fn symmetric_carrier_uses_closed_form() {
        let w = build_g1(2, 1, 1000).unwrap();
        let sym = w.embed_regular(1000).unwrap();
        let r = check_cr_axioms(&sym).unwrap();
        for c in ['b', 'c', 'd', 'e'] {
            assert_eq!(r.clause(c).status, Status::Pass, "{:?}", r.clause(c));
        }
        assert_eq!(sym.group, Symmetric::new(96).unwrap());
    }

    #[test]
    fn missing_z_is_reported() {
        let mut w = build_g1(2, 1, 1000).unwrap();
        w.z.remove(&1);
        let r = check_cr_axioms(&w).unwrap();
        assert_eq!(r.clause('c').status, Status::Fail);
    }
}
