use clap::{Args, Subcommand, ValueEnum};
use crgroups::bits::{format_mask, parse_mask};
use crgroups::cr::{build_g1, CrWitness, G2Elem, G2Group};
use crgroups::group::file::GroupFile;
use crgroups::group::{FiniteGroup, Semidirect};
use crgroups::report::{Check, RunReport, Status};
use crgroups::verify::{
    bound_hypotheses, check_b_partition, check_cr_axioms, check_equation_star, count_x_naive,
    count_x_structured_degenerate, crucial_witness, find_partition_istar, partition_holds,
    CountReport,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::groups::{load_g2, read_file};
use crate::{with_g2, CliError};

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// CR clauses (a)–(e) for a first-stage triple.
    CrAxioms(CrAxiomsArgs),
    /// The partition lemma for a tuple x_0..x_{k-1}.
    Partition(TupleArgs),
    /// [a, y3_{I*}] = y1_{U2(a) ∩ I*} for every a.
    Star(IstarArgs),
    /// The classes B_I and their sizes.
    BPartition(IstarArgs),
    /// |X| by pair enumeration and by the structured formula.
    CountX(CountArgs),
    /// The crucial-lemma witness (I*, c, c*) and its conclusions.
    Crucial(TupleArgs),
    /// The normal-form relation families.
    Relations(G2Arg),
}

#[derive(Args, Debug)]
pub struct G2Arg {
    /// Toy name or G2 group file.
    #[arg(long)]
    g2: String,
}

#[derive(Args, Debug)]
pub struct CrAxiomsArgs {
    /// CR triple file written by `construct g1 --out`.
    #[arg(long, conflicts_with_all = ["n", "m"])]
    file: Option<String>,
    #[arg(long, requires = "m")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    m: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    closure_cap: usize,
    /// Check the image in Sym(|G1|) under the regular representation instead.
    #[arg(long)]
    regular_cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct IstarArgs {
    #[arg(long)]
    g2: String,
    /// Comma-separated indices of I*.
    #[arg(long, allow_hyphen_values = true)]
    istar: String,
    /// c* as an element of G1 (default z1_{I*}).
    #[arg(long)]
    cstar: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Naive,
    Structured,
    Both,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    base: IstarArgs,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    /// c as an element of G2 (default y3_{I*}); naive only.
    #[arg(long)]
    c: Option<String>,
}

#[derive(Args, Debug)]
pub struct TupleArgs {
    #[arg(long)]
    g2: String,
    /// Tuple entries as G2 elements `U3;U2;g`, in order.
    #[arg(long = "x")]
    xs: Vec<String>,
    /// Draw a seeded random tuple of this length instead.
    #[arg(long, conflicts_with = "xs")]
    random: Option<usize>,
}

pub fn run(cmd: &VerifyCmd, seed: u64) -> Result<RunReport, CliError> {
    match cmd {
        VerifyCmd::CrAxioms(a) => cr_axioms(a, seed),
        VerifyCmd::Partition(a) => tuple_cmd("verify partition", a, seed, false),
        VerifyCmd::Crucial(a) => tuple_cmd("verify crucial", a, seed, true),
        VerifyCmd::Star(a) => {
            let mut r = RunReport::new("verify star", seed);
            r.input("g2", &a.g2);
            r.input("istar", &a.istar);
            let g = load_g2(&a.g2)?;
            with_g2!(&g, g => {
                let istar = parse_mask(&a.istar, g.n())?;
                r.push(check_equation_star(g, istar, seed)?);
            });
            Ok(r)
        }
        VerifyCmd::BPartition(a) => {
            let mut r = RunReport::new("verify b-partition", seed);
            r.input("g2", &a.g2);
            r.input("istar", &a.istar);
            let g = load_g2(&a.g2)?;
            with_g2!(&g, g => {
                let istar = parse_mask(&a.istar, g.n())?;
                let cstar = default_cstar(g, istar, a.cstar.as_deref(), &mut r)?;
                r.push(check_b_partition(g, istar, Some(&cstar))?.to_check());
            });
            Ok(r)
        }
        VerifyCmd::CountX(a) => count_x(a, seed),
        VerifyCmd::Relations(a) => {
            let mut r = RunReport::new("verify relations", seed);
            r.input("g2", &a.g2);
            let g = load_g2(&a.g2)?;
            let report = with_g2!(&g, g => g.relation_check(seed)?);
            for f in &report.families {
                r.push(
                    Check::new(
                        format!("relation-{}", f.family.name()),
                        Status::from_bool(f.violation_count == 0),
                    )
                    .value("checked", f.checked)
                    .value(
                        "mode",
                        if f.exhaustive {
                            "exhaustive"
                        } else {
                            "sampled"
                        },
                    )
                    .value("violations", f.violation_count)
                    .witnesses(f.violations.iter().cloned()),
                );
            }
            Ok(r)
        }
    }
}

fn cr_axioms(a: &CrAxiomsArgs, seed: u64) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("verify cr-axioms", seed);
    let w: CrWitness<Semidirect> = match (&a.file, a.n, a.m) {
        (Some(path), ..) => {
            r.input("file", path);
            CrWitness::from_group_file(&GroupFile::parse(&read_file(path)?)?)?
        }
        (None, Some(n), Some(m)) => {
            r.input("n", n);
            r.input("m", m);
            r.input("closure-cap", a.closure_cap);
            build_g1(n, m, a.closure_cap)?
        }
        _ => return Err(CliError::Usage("give --file or --n and --m".into())),
    };
    let checks = match a.regular_cap {
        Some(cap) => {
            r.input("regular-cap", cap);
            check_cr_axioms(&w.embed_regular(cap)?)?.checks
        }
        None => check_cr_axioms(&w)?.checks,
    };
    r.extend(checks);
    Ok(r)
}

/// `--cstar`, else `z¹_{I_*}`, else the identity of `G₁`.
fn default_cstar<G: FiniteGroup>(
    g: &G2Group<G>,
    istar: u64,
    text: Option<&str>,
    r: &mut RunReport,
) -> Result<G::Elem, CliError> {
    Ok(match (text, g.z1_of(istar)) {
        (Some(t), _) => {
            r.input("cstar", t);
            g.g1().parse_element(t)?
        }
        (None, Some(z)) => z.clone(),
        (None, None) => {
            r.input("cstar", "e");
            g.g1().identity()
        }
    })
}

fn parse_elems<G: FiniteGroup>(
    g: &G2Group<G>,
    xs: &[String],
) -> Result<Vec<G2Elem<G::Elem>>, CliError> {
    xs.iter()
        .map(|t| g.parse_element(t).map_err(CliError::from))
        .collect()
}

fn tuple_cmd(name: &str, a: &TupleArgs, seed: u64, crucial: bool) -> Result<RunReport, CliError> {
    let mut r = RunReport::new(name, seed);
    r.input("g2", &a.g2);
    let g = load_g2(&a.g2)?;
    with_g2!(&g, g => {
        let xs = match a.random {
            Some(k) => {
                r.input("random", k);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..k).map(|_| g.random_element(&mut rng)).collect()
            }
            None => parse_elems(g, &a.xs)?,
        };
        if xs.is_empty() {
            return Err(CliError::Usage("give --x at least once or --random K".into()));
        }
        for (i, x) in xs.iter().enumerate() {
            r.input(format!("x{i}"), g.format_element(x));
        }
        if crucial {
            let report = crucial_witness(g, &xs)?;
            r.extend(report.checks);
        } else {
            let k = xs.len();
            let choice = find_partition_istar(g, &xs, k)?;
            let eta: String = choice.eta.iter().map(|&b| if b { '1' } else { '0' }).collect();
            r.push(
                Check::new("partition", Status::from_bool(partition_holds(g.n(), k, &xs, choice.istar)))
                    .value("k", k)
                    .value("istar", format_mask(choice.istar))
                    .value("size", choice.istar.count_ones())
                    .value("eta", eta),
            );
        }
    });
    Ok(r)
}

fn count_x(a: &CountArgs, seed: u64) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("verify count-x", seed);
    let b = &a.base;
    r.input("g2", &b.g2);
    r.input("istar", &b.istar);
    r.input("method", format!("{:?}", a.method).to_lowercase());
    let g = load_g2(&b.g2)?;
    with_g2!(&g, g => {
        let istar = parse_mask(&b.istar, g.n())?;
        let cstar = default_cstar(g, istar, b.cstar.as_deref(), &mut r)?;
        let c = match &a.c {
            Some(t) => {
                if a.method != Method::Naive {
                    return Err(CliError::Usage("--c applies to --method naive only".into()));
                }
                r.input("c", t);
                g.parse_element(t)?
            }
            None => g.y3_set(istar),
        };
        let hypotheses = bound_hypotheses(g, istar);
        let naive = if a.method != Method::Structured {
            let n = count_x_naive(g, &c, &g.embed(cstar.clone()))?;
            r.push(n.to_check("count-x-naive", Status::Pass));
            Some(n)
        } else {
            None
        };
        let structured = if a.method != Method::Naive {
            let s = count_x_structured_degenerate(g, istar, &cstar)?;
            if s.degenerate.is_empty() {
                r.push(s.to_check("count-x-structured", Status::Pass));
            } else {
                let classes: Vec<String> =
                    s.degenerate.iter().map(|&u| format!("{{{}}}", format_mask(u))).collect();
                r.push(
                    s.to_check("count-x-structured", Status::Conditional)
                        .with_note("stage-1 clause (d)")
                        .witness(format!("[y1_U, c*] = e for U = {}", classes.join(", "))),
                );
            }
            Some(s)
        } else {
            None
        };
        if a.method == Method::Both {
            r.push(cross_oracle(naive.as_ref(), structured.as_ref()));
        }
        if let Some(rep) = structured.as_ref().or(naive.as_ref()) {
            if a.c.is_none() {
                r.push(rep.bound_check(&hypotheses));
            }
        }
    });
    Ok(r)
}

fn cross_oracle(naive: Option<&CountReport>, structured: Option<&CountReport>) -> Check {
    match (naive, structured) {
        (Some(n), Some(s)) => {
            let ok = n.x == s.x && n.x1 == s.x1 && n.x2 == s.x2;
            Check::new("cross-oracle", Status::from_bool(ok))
                .value("naive", &n.x)
                .value("structured", &s.x)
        }
        _ => Check::skipped("cross-oracle", "one method only"),
    }
}
