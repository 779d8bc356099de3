use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cr::CrParams;
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, Ratio};
use crate::report::{Check, Status};

/// Values are materialized only up to this many bits.
pub const MATERIALIZE_BITS: u64 = 1 << 20;

/// Exponents of `2^e` are materialized for log bounds only up to this many bits.
const LOG_EXPONENT_BITS: u64 = 1 << 24;

const MAX_TOWER: usize = 4;

/// A non-negative integer kept symbolically: a plain integer or `2^e`.
///
/// Comparisons never materialize towers; they peel one exponent at a time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Num {
    Int(BigUint),
    Pow2(Box<Num>),
}

impl Num {
    pub fn int(v: impl Into<BigUint>) -> Num {
        Num::Int(v.into())
    }

    pub fn pow2(e: Num) -> Num {
        Num::Pow2(Box::new(e))
    }

    /// `2^{2^a}`
    pub fn tower(a: Num) -> Num {
        Num::pow2(Num::pow2(a))
    }

    /// Parses `123`, `2^a` or `2^2^a` (and longer chains up to four levels).
    pub fn parse(text: &str) -> Result<Num> {
        let t = text.trim();
        let parts: Vec<&str> = t.split('^').collect();
        if parts.len() > MAX_TOWER + 1 {
            return Err(Error::parse(0, format!("tower `{t}` is too tall")));
        }
        let (last, bases) = parts.split_last().expect("split yields one part");
        let mut pos = 0;
        for b in bases {
            if b.trim() != "2" {
                return Err(Error::parse(
                    pos,
                    format!("only base 2 is supported in `{t}`"),
                ));
            }
            pos += b.len() + 1;
        }
        let last = last.trim();
        if last.is_empty() || !last.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(pos, format!("bad integer `{last}`")));
        }
        let mut v = Num::Int(last.parse().map_err(|_| Error::parse(pos, "bad integer"))?);
        for _ in bases {
            v = Num::pow2(v);
        }
        Ok(v)
    }

    /// The exact value if it has at most `max_bits` bits.
    pub fn materialize(&self, max_bits: u64) -> Option<BigUint> {
        match self {
            Num::Int(v) => (v.bits() <= max_bits).then(|| v.clone()),
            Num::Pow2(e) => {
                let e = e.materialize(64)?.to_u64()?;
                (e < max_bits).then(|| BigUint::one() << e)
            }
        }
    }

    /// Closed bounds `lo ≤ log₂(self) ≤ hi`, or `None` when the value is zero
    /// or the exponent is too large to write down.
    fn log2_bounds(&self) -> Option<(BigUint, BigUint)> {
        match self {
            Num::Int(v) if v.is_zero() => None,
            Num::Int(v) => {
                let t = BigUint::from(v.bits() - 1);
                if v.count_ones() == 1 {
                    Some((t.clone(), t))
                } else {
                    let hi = &t + 1u8;
                    Some((t, hi))
                }
            }
            Num::Pow2(e) => {
                let e = e.materialize(LOG_EXPONENT_BITS)?;
                Some((e.clone(), e))
            }
        }
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Int(v) => write!(f, "{v}"),
            Num::Pow2(e) => write!(f, "2^{e}"),
        }
    }
}

impl PartialOrd for Num {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Num {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Num::Int(a), Num::Int(b)) => a.cmp(b),
            (Num::Pow2(a), Num::Pow2(b)) => a.cmp(b),
            (Num::Int(a), Num::Pow2(e)) => cmp_int_pow2(a, e),
            (Num::Pow2(e), Num::Int(b)) => cmp_int_pow2(b, e).reverse(),
        }
    }
}

/// Compares `b` with `2^e` via `t = ⌊log₂ b⌋`.
fn cmp_int_pow2(b: &BigUint, e: &Num) -> Ordering {
    if b.is_zero() {
        return Ordering::Less;
    }
    let t = Num::Int(BigUint::from(b.bits() - 1));
    match t.cmp(e) {
        // b < 2^{t+1} ≤ 2^e
        Ordering::Less => Ordering::Less,
        Ordering::Greater => Ordering::Greater,
        Ordering::Equal if b.count_ones() == 1 => Ordering::Equal,
        Ordering::Equal => Ordering::Greater,
    }
}

/// `2^{2^a} < b`, decided without materializing the tower.
pub fn tower_less(a: &Num, b: &Num) -> bool {
    Num::tower(a.clone()) < *b
}

/// One index of a growth profile, with optional CR data `(k, m, n, |G₂|)` for clause (d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub index: usize,
    pub f1: Num,
    pub g1: Num,
    pub f2: Num,
    pub g2: Num,
    pub cr: Option<CrLevel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrLevel {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    /// `|G₂|` for the instance, supplied by the user.
    pub size: Num,
}

/// Finite prefix `(f₁, g₁, f₂, g₂)` at indices `0..L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileParams {
    pub rows: Vec<ProfileRow>,
}

impl ProfileParams {
    pub fn new(rows: Vec<ProfileRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Invalid("profile needs at least one index".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.index != i {
                return Err(Error::Invalid(format!(
                    "profile rows must be indexed 0, 1, ...: found {} at position {i}",
                    r.index
                )));
            }
        }
        Ok(ProfileParams { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(m*_i, m**_i) = (g₂(i), f₂(i))`
    pub fn tail_sizes(&self) -> Vec<(Num, Num)> {
        self.rows
            .iter()
            .map(|r| (r.g2.clone(), r.f2.clone()))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# i f1 g1 f2 g2 [k m n size]\n");
        for r in &self.rows {
            out.push_str(&format!("{} {} {} {} {}", r.index, r.f1, r.g1, r.f2, r.g2));
            if let Some(c) = &r.cr {
                out.push_str(&format!(" {} {} {} {}", c.k, c.m, c.n, c.size));
            }
            out.push('\n');
        }
        out
    }
}

/// Parses rows `i f1 g1 f2 g2` or `i f1 g1 f2 g2 k m n size`; `#` starts a comment.
pub fn parse_profile(text: &str) -> Result<ProfileParams> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 && fields.len() != 9 {
            return Err(Error::parse(
                start,
                format!("expected 5 or 9 fields, found {}", fields.len()),
            ));
        }
        let at = |e: Error| match e {
            Error::Parse { pos, msg } => Error::parse(start + pos, msg),
            other => other,
        };
        let small = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(start, format!("bad index `{s}`")))
        };
        let index = small(fields[0])?;
        let nums: Vec<Num> = fields[1..5]
            .iter()
            .map(|s| Num::parse(s).map_err(at))
            .collect::<Result<_>>()?;
        let cr = if fields.len() == 9 {
            Some(CrLevel {
                k: small(fields[5])?,
                m: small(fields[6])?,
                n: small(fields[7])?,
                size: Num::parse(fields[8]).map_err(at)?,
            })
        } else {
            None
        };
        let mut it = nums.into_iter();
        rows.push(ProfileRow {
            index,
            f1: it.next().unwrap(),
            g1: it.next().unwrap(),
            f2: it.next().unwrap(),
            g2: it.next().unwrap(),
            cr,
        });
    }
    ProfileParams::new(rows)
}

/// Result of the sufficient ratio test at one index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioOutcome {
    Holds,
    Fails,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct ProfileReport {
    pub checks: Vec<Check>,
    /// Exact partial sums of `g₂(i)/f₂(i)` while the terms can be materialized.
    pub partial_sums: Vec<Ratio>,
}

impl ProfileReport {
    pub fn check(&self, clause: char) -> Option<&Check> {
        let name = format!("profile-{clause}");
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// `(clause, index)` of every failed clause.
    pub fn violations(&self) -> Vec<(char, usize)> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| {
                let clause = c.name.chars().last().unwrap_or('?');
                let index = c
                    .values
                    .get("index")
                    .and_then(|i| i.parse().ok())
                    .unwrap_or(0);
                (clause, index)
            })
            .collect()
    }
}

fn first_failure(name: &str, failure: Option<(usize, String)>) -> Check {
    match failure {
        None => Check::new(name, Status::Pass),
        Some((i, what)) => Check::new(name, Status::Fail)
            .value("index", i)
            .witness(what),
    }
}

/// `g₂(i)·f₂(i−1)·q ≤ p·g₂(i−1)·f₂(i)` for `r = p/q`.
pub fn ratio_step(prev: (&Num, &Num), cur: (&Num, &Num), r: &Ratio) -> RatioOutcome {
    let (g_prev, f_prev) = prev;
    let (g_cur, f_cur) = cur;
    let p = Num::Int(r.numer().magnitude().clone());
    let q = Num::Int(r.denom().magnitude().clone());
    let lhs = [g_cur, f_prev, &q];
    let rhs = [&p, g_prev, f_cur];
    let exact = |xs: &[&Num]| -> Option<BigUint> {
        xs.iter()
            .map(|x| x.materialize(MATERIALIZE_BITS))
            .product::<Option<BigUint>>()
    };
    if let (Some(l), Some(r)) = (exact(&lhs), exact(&rhs)) {
        return if l <= r {
            RatioOutcome::Holds
        } else {
            RatioOutcome::Fails
        };
    }
    let bounds = |xs: &[&Num]| -> Option<(BigUint, BigUint)> {
        xs.iter()
            .try_fold((BigUint::zero(), BigUint::zero()), |(lo, hi), x| {
                let (a, b) = x.log2_bounds()?;
                Some((lo + a, hi + b))
            })
    };
    match (bounds(&lhs), bounds(&rhs)) {
        (Some((_, l_hi)), Some((r_lo, _))) if l_hi < r_lo => return RatioOutcome::Holds,
        (Some((l_lo, _)), Some((_, r_hi))) if l_lo > r_hi => return RatioOutcome::Fails,
        (Some(_), Some(_)) => return RatioOutcome::Undecided,
        _ => {}
    }
    // A sum of three logs lies between its largest term and four times it.
    let (l_lo, l_hi) = dominant_log(&lhs);
    let (r_lo, r_hi) = dominant_log(&rhs);
    if upper_times4(&l_hi) < r_lo {
        RatioOutcome::Holds
    } else if upper_times4(&r_hi) < l_lo {
        RatioOutcome::Fails
    } else {
        RatioOutcome::Undecided
    }
}

/// Bounds on the largest `log₂` among `xs`, as symbolic numbers.
fn dominant_log(xs: &[&Num]) -> (Num, Num) {
    let logs = xs.iter().map(|x| match x {
        Num::Int(v) if v.is_zero() => (Num::int(0u8), Num::int(0u8)),
        Num::Int(v) => (Num::int(v.bits() - 1), Num::int(v.bits())),
        Num::Pow2(e) => ((**e).clone(), (**e).clone()),
    });
    logs.fold((Num::int(0u8), Num::int(0u8)), |(lo, hi), (a, b)| {
        (lo.max(a), hi.max(b))
    })
}

/// Some `y ≥ x + c`.
fn upper_add(x: &Num, c: u64) -> Num {
    match x {
        Num::Int(v) => Num::Int(v + c),
        Num::Pow2(e) => match x.materialize(MATERIALIZE_BITS) {
            Some(v) => Num::Int(v + c),
            // 2^e + c ≤ 2^{e+1} once 2^e ≥ c
            None => Num::pow2(upper_add(e, 1)),
        },
    }
}

/// Some `y ≥ 4x`.
fn upper_times4(x: &Num) -> Num {
    match x {
        Num::Int(v) => Num::Int(v << 2u8),
        Num::Pow2(e) => Num::pow2(upper_add(e, 2)),
    }
}

/// Checks clauses (a)–(e) of the growth profile on a finite prefix.
///
/// (c) is the concrete "sufficiently different" instance `2^{2^{f₁(i)}} < g₂(i)`
/// and `2^{2^{f₂(i)}} < g₂(i+1)`. (d) is checked against user-supplied CR data
/// and skipped without it. (e) reports exact partial sums and, when `ratio` is
/// given, applies the ratio test as a sufficient condition for convergence.
pub fn validate_profile(p: &ProfileParams, ratio: Option<&Ratio>) -> ProfileReport {
    let rows = &p.rows;
    let mut checks = Vec::new();

    let seqs: [(&str, fn(&ProfileRow) -> &Num); 4] = [
        ("f1", |r| &r.f1),
        ("g1", |r| &r.g1),
        ("f2", |r| &r.f2),
        ("g2", |r| &r.g2),
    ];
    let mut a_fail = None;
    'a: for i in 1..rows.len() {
        for (name, get) in seqs {
            if get(&rows[i]) <= get(&rows[i - 1]) {
                a_fail = Some((i, format!("{name}({i}) <= {name}({})", i - 1)));
                break 'a;
            }
        }
    }
    checks.push(first_failure("profile-a", a_fail).value("indices", rows.len()));

    let b_fail = rows.iter().find_map(|r| {
        let i = r.index;
        if r.f1 <= r.g1 {
            Some((i, format!("f1({i}) <= g1({i})")))
        } else if r.f2 <= r.g2 {
            Some((i, format!("f2({i}) <= g2({i})")))
        } else {
            None
        }
    });
    checks.push(first_failure("profile-b", b_fail));

    let c_fail = rows.iter().enumerate().find_map(|(i, r)| {
        if !tower_less(&r.f1, &r.g2) {
            Some((i, format!("2^2^f1({i}) >= g2({i})")))
        } else if i + 1 < rows.len() && !tower_less(&r.f2, &rows[i + 1].g2) {
            Some((i, format!("2^2^f2({i}) >= g2({})", i + 1)))
        } else {
            None
        }
    });
    checks.push(first_failure("profile-c", c_fail));

    let with_cr: Vec<(usize, &CrLevel)> = rows
        .iter()
        .filter_map(|r| r.cr.as_ref().map(|c| (r.index, c)))
        .collect();
    if with_cr.is_empty() {
        checks.push(Check::skipped("profile-d", "no CR data supplied"));
    } else {
        let d_fail = with_cr.iter().find_map(|&(i, c)| {
            let r = &rows[i];
            if let Err(e) = CrParams::new(c.k, c.m, c.n) {
                Some((i, e.to_string()))
            } else if r.f1 != c.size {
                Some((i, format!("f1({i}) != |G2| = {}", c.size)))
            } else if r.g2 != Num::int(c.k) {
                Some((i, format!("g2({i}) != k = {}", c.k)))
            } else {
                None
            }
        });
        checks.push(first_failure("profile-d", d_fail).value("rows-with-cr", with_cr.len()));
    }

    let mut partial_sums = Vec::new();
    let mut sum = Ratio::zero();
    for r in rows {
        match (
            r.g2.materialize(MATERIALIZE_BITS),
            r.f2.materialize(MATERIALIZE_BITS),
        ) {
            (Some(g), Some(f)) if !f.is_zero() => {
                sum += Ratio::new(BigInt::from(g), BigInt::from(f));
                partial_sums.push(sum.clone());
            }
            _ => break,
        }
    }
    let mut e = match ratio {
        None => Check::conditional("profile-e", "series convergence (no ratio supplied)"),
        Some(r) if !(r.is_positive() && *r < Ratio::one()) => Check::new("profile-e", Status::Fail)
            .value("index", 0)
            .witness(format!("ratio {} is not in (0, 1)", format_ratio(r))),
        Some(r) => {
            let mut status = Status::Pass;
            let mut index = None;
            for i in 1..rows.len() {
                let out = ratio_step(
                    (&rows[i - 1].g2, &rows[i - 1].f2),
                    (&rows[i].g2, &rows[i].f2),
                    r,
                );
                match out {
                    RatioOutcome::Holds => {}
                    RatioOutcome::Fails => {
                        status = Status::Fail;
                        index = Some(i);
                        break;
                    }
                    RatioOutcome::Undecided if status == Status::Pass => {
                        status = Status::Conditional;
                        index = Some(i);
                    }
                    RatioOutcome::Undecided => {}
                }
            }
            let mut c = Check::new("profile-e", status).value("ratio", format_ratio(r));
            match (status, index) {
                (Status::Fail, Some(i)) => {
                    c = c.value("index", i).witness(format!(
                        "g2({i})/f2({i}) > r*g2({})/f2({})",
                        i - 1,
                        i - 1
                    ))
                }
                (Status::Conditional, Some(i)) => {
                    c = c
                        .with_note(format!("ratio test undecided at index {i}"))
                        .value("index", i)
                }
                _ => {}
            }
            c
        }
    };
    for (i, s) in partial_sums.iter().enumerate() {
        e = e.value(format!("sum{i}"), format_ratio(s));
    }
    if partial_sums.len() < rows.len() {
        e = e.value("sums-exact-through", partial_sums.len());
    }
    checks.push(e);

    ProfileReport {
        checks,
        partial_sums,
    }
}
