use clap::{Args, Subcommand};
use crgroups::cr::toys::{cr_g2, elementary_g2};
use crgroups::cr::{build_g1, smallest_params, CrParams};
use crgroups::group::file::GroupIo;
use crgroups::group::FiniteGroup;
use crgroups::report::{Check, RunReport, Status};

use crate::groups::{load_g2, write_file};
use crate::{with_g2, CliError};

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Admissible (k, m, n) triples, or the clauses a given triple violates.
    Params(ParamsArgs),
    /// The first-stage group G1 = G0 ⋊ H for shape (n, m).
    G1(G1Args),
    /// A normal-form G2: a named toy, an elementary toy, or over a built G1.
    G2(G2Args),
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[arg(long, conflicts_with_all = ["k", "m", "n"])]
    n_max: Option<usize>,
    #[arg(long, requires_all = ["m", "n"])]
    k: Option<usize>,
    #[arg(long, requires_all = ["k", "n"])]
    m: Option<usize>,
    #[arg(long, requires_all = ["k", "m"])]
    n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct G1Args {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1_000_000)]
    closure_cap: usize,
    /// Write the CR triple (G1, y, z) as a group file.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
pub struct G2Args {
    /// A named toy (toy64, toy512, toy4096, sd96, sd512, sd4096).
    #[arg(long, conflicts_with_all = ["n", "toy_g1_dim", "m"])]
    toy: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Build over the elementary abelian G1 = (Z/2)^dim.
    #[arg(long, conflicts_with = "m")]
    toy_g1_dim: Option<usize>,
    /// Build over the first-stage group for shape (n, m).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    closure_cap: usize,
    #[arg(long)]
    out: Option<String>,
}

pub fn run(cmd: &ConstructCmd, seed: u64) -> Result<RunReport, CliError> {
    match cmd {
        ConstructCmd::Params(a) => params(a, seed),
        ConstructCmd::G1(a) => g1(a, seed),
        ConstructCmd::G2(a) => g2(a, seed),
    }
}

fn params(a: &ParamsArgs, seed: u64) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("construct params", seed);
    match (a.n_max, a.k, a.m, a.n) {
        (Some(n_max), ..) => {
            r.input("n-max", n_max);
            let list = smallest_params(n_max);
            let text: Vec<String> = list.iter().map(|p| p.to_string()).collect();
            r.push(
                Check::new("params", Status::Pass)
                    .value("count", list.len())
                    .value("triples", text.join(",")),
            );
        }
        (None, Some(k), Some(m), Some(n)) => {
            r.input("k", k);
            r.input("m", m);
            r.input("n", n);
            let v = CrParams::violations(k, m, n);
            r.push(
                Check::new("params", Status::from_bool(v.is_empty()))
                    .witnesses(v.iter().map(|x| format!("{}: {}", x.clause, x.detail))),
            );
        }
        _ => return Err(CliError::Usage("give --n-max or all of --k --m --n".into())),
    }
    Ok(r)
}

fn g1(a: &G1Args, seed: u64) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("construct g1", seed);
    r.input("n", a.n);
    r.input("m", a.m);
    r.input("closure-cap", a.closure_cap);
    let w = build_g1(a.n, a.m, a.closure_cap)?;
    r.push(
        Check::new("g1", Status::Pass)
            .value("H", w.group.automorphism_count())
            .value("order", w.group.order())
            .value("z-count", w.z.len()),
    );
    if let Some(path) = &a.out {
        write_file(path, &w.to_group_file().render())?;
        r.input("out", path);
    }
    Ok(r)
}

fn g2(a: &G2Args, seed: u64) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("construct g2", seed);
    let (text, check) = match (&a.toy, a.n, a.toy_g1_dim, a.m) {
        (Some(name), ..) => {
            r.input("toy", name);
            let g = load_g2(name)?;
            with_g2!(&g, g => (g.to_group_file().render(), describe(g)))
        }
        (None, Some(n), Some(dim), None) => {
            r.input("n", n);
            r.input("toy-g1-dim", dim);
            let g = elementary_g2(n, dim)?;
            (g.to_group_file().render(), describe(&g))
        }
        (None, Some(n), None, Some(m)) => {
            r.input("n", n);
            r.input("m", m);
            r.input("closure-cap", a.closure_cap);
            let g = cr_g2(n, m, a.closure_cap)?;
            (g.to_group_file().render(), describe(&g))
        }
        _ => {
            return Err(CliError::Usage(
                "give --toy, or --n with one of --toy-g1-dim / --m".into(),
            ))
        }
    };
    r.push(check);
    if let Some(path) = &a.out {
        write_file(path, &text)?;
        r.input("out", path);
    }
    Ok(r)
}

fn describe<G: FiniteGroup>(g: &crgroups::cr::G2Group<G>) -> Check {
    Check::new("g2", Status::Pass)
        .value("n", g.n())
        .value("g1-order", g.g1().order())
        .value("order", g.order())
}
