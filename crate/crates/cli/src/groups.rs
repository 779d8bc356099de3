use std::fs;

use crgroups::cr::toys::{named_elementary, named_semidirect, TOY_NAMES};
use crgroups::cr::G2Group;
use crgroups::group::file::{GroupFile, GroupIo};
use crgroups::group::{ElementaryAbelian2, GroupKind, Semidirect, Symmetric};

use crate::CliError;

/// A `G₂` over one of the supported `G₁` realizations.
pub enum AnyG2 {
    Elementary(G2Group<ElementaryAbelian2>),
    Semidirect(G2Group<Semidirect>),
    Symmetric(G2Group<Symmetric>),
}

/// Runs `$body` with `$g` bound to the concrete group.
#[macro_export]
macro_rules! with_g2 {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::groups::AnyG2::Elementary($g) => $body,
            $crate::groups::AnyG2::Semidirect($g) => $body,
            $crate::groups::AnyG2::Symmetric($g) => $body,
        }
    };
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

pub fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Resource(format!("cannot write {path}: {e}")))
}

/// A toy name or the path of a `normal-form-g2` group file.
pub fn load_g2(name: &str) -> Result<AnyG2, CliError> {
    if let Some(g) = named_elementary(name) {
        return Ok(AnyG2::Elementary(g));
    }
    if let Some(g) = named_semidirect(name) {
        return Ok(AnyG2::Semidirect(g));
    }
    if TOY_NAMES.contains(&name) {
        return Err(CliError::Resource(format!("toy {name} failed to build")));
    }
    let file = GroupFile::parse(&read_file(name)?)?;
    Ok(match file.section("g1").kind()? {
        GroupKind::ElementaryAbelian2 => AnyG2::Elementary(G2Group::from_group_file(&file)?),
        GroupKind::Semidirect => AnyG2::Semidirect(G2Group::from_group_file(&file)?),
        GroupKind::Symmetric => AnyG2::Symmetric(G2Group::from_group_file(&file)?),
        other => {
            return Err(CliError::Usage(format!(
                "G1 of kind {other} is not supported in G2 files"
            )))
        }
    })
}

/// Levels of a truncation, all over semidirect `G₁`.
pub fn load_semidirect_levels(specs: &[String]) -> Result<Vec<G2Group<Semidirect>>, CliError> {
    specs
        .iter()
        .map(|s| match load_g2(s)? {
            AnyG2::Semidirect(g) => Ok(g),
            _ => Err(CliError::Usage(format!(
                "level {s}: witness levels need a semidirect G1 with z1 data"
            ))),
        })
        .collect()
}
