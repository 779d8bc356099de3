use clap::{Args, Subcommand};
use crgroups::group::{Cyclic, FiniteGroup};
use crgroups::measure::{
    build_witness_cbar, cylinder_measure, parse_profile, slalom_cover_bounds, tail_cover_measure,
    validate_profile, x_cbar_naive, CylinderSet, ProductTruncation, Slalom,
};
use crgroups::ratio::{format_ratio, parse_ratio};
use crgroups::report::{Check, RunReport, Status};
use crgroups::word::WordTerm;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::groups::{load_semidirect_levels, read_file};
use crate::{parse_list, CliError};

#[derive(Subcommand, Debug)]
pub enum MeasureCmd {
    /// Measure of a cylinder over cyclic levels, B_i = {0, …, b_i − 1}.
    Cylinder(CylinderArgs),
    /// Measure of the tail set X_n for a slalom of widths m* in ranges m**.
    Tail(TailArgs),
    /// Validate a growth profile file.
    Profile(ProfileArgs),
    /// Build the witness c̄_ν over a truncation of G2 levels.
    Witness(WitnessArgs),
    /// Bounds on the number of slaloms needed to cover a finite product.
    Cover(CoverArgs),
}

#[derive(Args, Debug)]
pub struct CylinderArgs {
    /// Level sizes |G_i|.
    #[arg(long)]
    sizes: String,
    /// Per-level |B_i|, or `full`.
    #[arg(long)]
    subsets: String,
}

#[derive(Args, Debug)]
pub struct TailArgs {
    #[arg(long)]
    mstar: String,
    #[arg(long)]
    mstarstar: String,
    #[arg(long, default_value_t = 0)]
    from: usize,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[arg(long)]
    file: String,
    /// Ratio r < 1 for the sufficient convergence test.
    #[arg(long)]
    ratio: Option<String>,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// Comma-separated toy names or G2 files, one per level.
    #[arg(long)]
    levels: String,
    /// Slalom widths k_i (default 1 at every level).
    #[arg(long)]
    k: Option<String>,
    /// Cross-check the product pair density by enumerating the product.
    #[arg(long)]
    naive: bool,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long)]
    sizes: String,
    #[arg(long)]
    widths: String,
}

pub fn run(cmd: &MeasureCmd, seed: u64) -> Result<RunReport, CliError> {
    match cmd {
        MeasureCmd::Cylinder(a) => cylinder(a, seed),
        MeasureCmd::Tail(a) => {
            let mut r = RunReport::new("measure tail", seed);
            r.input("mstar", &a.mstar);
            r.input("mstarstar", &a.mstarstar);
            r.input("from", a.from);
            let widths: Vec<BigUint> = parse_list(&a.mstar, "m*")?;
            let sizes: Vec<BigUint> = parse_list(&a.mstarstar, "m**")?;
            let t = tail_cover_measure(&sizes, &widths, a.from)?;
            r.push(
                Check::new("tail", Status::from_bool(t.within_bound()))
                    .value("measure", format_ratio(&t.measure))
                    .value("bound", format_ratio(&t.bound)),
            );
            Ok(r)
        }
        MeasureCmd::Profile(a) => {
            let mut r = RunReport::new("measure profile", seed);
            r.input("file", &a.file);
            let ratio = match &a.ratio {
                Some(t) => {
                    r.input("ratio", t);
                    Some(
                        parse_ratio(t)
                            .ok_or_else(|| CliError::Usage(format!("bad ratio `{t}`")))?,
                    )
                }
                None => None,
            };
            let p = parse_profile(&read_file(&a.file)?)?;
            r.extend(validate_profile(&p, ratio.as_ref()).checks);
            Ok(r)
        }
        MeasureCmd::Witness(a) => witness(a, seed),
        MeasureCmd::Cover(a) => {
            let mut r = RunReport::new("measure cover", seed);
            r.input("sizes", &a.sizes);
            r.input("widths", &a.widths);
            let b = slalom_cover_bounds(
                &parse_list(&a.sizes, "size")?,
                &parse_list(&a.widths, "width")?,
            )?;
            let consistent = b.lower <= b.upper
                && b.exact
                    .is_none_or(|e| b.lower <= BigUint::from(e) && BigUint::from(e) <= b.upper);
            let mut c = Check::new("cover", Status::from_bool(consistent))
                .value("lower", &b.lower)
                .value("upper", &b.upper);
            c = match b.exact {
                Some(e) => c.value("exact", e),
                None => c.with_note("exact search skipped: instance above the search caps"),
            };
            r.push(c);
            Ok(r)
        }
    }
}

fn cylinder(a: &CylinderArgs, seed: u64) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("measure cylinder", seed);
    r.input("sizes", &a.sizes);
    r.input("subsets", &a.subsets);
    let sizes: Vec<u64> = parse_list(&a.sizes, "size")?;
    let subsets: Vec<&str> = a.subsets.split(',').map(str::trim).collect();
    if subsets.len() != sizes.len() {
        return Err(CliError::Usage(
            "--sizes and --subsets differ in length".into(),
        ));
    }
    let levels = sizes
        .iter()
        .map(|&s| Cyclic::new(s).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let t = ProductTruncation::new(levels)?;
    let sets = subsets
        .iter()
        .zip(&sizes)
        .map(|(&b, &size)| match b {
            "full" => Ok(None),
            _ => {
                let count: u64 = b
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad subset size `{b}`")))?;
                if count > size {
                    return Err(CliError::Usage(format!(
                        "subset size {count} exceeds level size {size}"
                    )));
                }
                Ok(Some((0..count).collect()))
            }
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let c = CylinderSet::new(&t, sets)?;
    r.push(
        Check::new("cylinder", Status::Pass).value("measure", format_ratio(&cylinder_measure(&c))),
    );
    Ok(r)
}

fn witness(a: &WitnessArgs, seed: u64) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("measure witness", seed);
    r.input("levels", &a.levels);
    let names: Vec<String> = a.levels.split(',').map(|s| s.trim().to_string()).collect();
    let levels = load_semidirect_levels(&names)?;
    let widths: Vec<usize> = match &a.k {
        Some(k) => {
            r.input("k", k);
            parse_list(k, "k")?
        }
        None => vec![1; levels.len()],
    };
    if widths.len() != levels.len() {
        return Err(CliError::Usage("--k needs one width per level".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(levels.len());
    for (g, &k) in levels.iter().zip(&widths) {
        if BigUint::from(k) > g.order() {
            return Err(CliError::Usage(format!(
                "width {k} exceeds |G2| = {}",
                g.order()
            )));
        }
        let mut level = Vec::with_capacity(k);
        while level.len() < k {
            let x = g.random_element(&mut rng);
            if !level.contains(&x) {
                level.push(x);
            }
        }
        sets.push(level);
    }
    let nu = Slalom::new(sets)?;
    let t = ProductTruncation::new(levels)?;
    for i in 0..t.depth() {
        let g = t.level(i);
        let text: Vec<String> = nu.level(i).iter().map(|x| g.format_element(x)).collect();
        r.input(format!("nu{i}"), text.join("|"));
    }
    let w = build_witness_cbar(&t, &nu)?;
    r.extend(w.checks.iter().cloned());
    if a.naive {
        let naive = x_cbar_naive(&t, &w.c1, &w.c2, &WordTerm::triple_commutator(), None)?;
        let c = match &w.product_density {
            Some(d) => Check::new("naive-product", Status::from_bool(*d == naive.pair_density))
                .value("levelwise", format_ratio(d))
                .value("naive", format_ratio(&naive.pair_density)),
            None => Check::skipped("naive-product", "levelwise density unavailable"),
        };
        r.push(c);
    }
    Ok(r)
}
