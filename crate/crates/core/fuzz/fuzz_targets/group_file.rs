#![no_main]

use crgroups::cr::{CrWitness, G2Group};
use crgroups::group::file::{GroupFile, GroupIo};
use crgroups::group::{Cyclic, ElementaryAbelian2, GroupKind, Semidirect, Symmetric};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = GroupFile::parse(text) else {
        return;
    };
    let rendered = file.render();
    assert_eq!(GroupFile::parse(&rendered).expect("rendered file reparses").render(), rendered);
    match file.kind() {
        Ok(GroupKind::ElementaryAbelian2) => drop(ElementaryAbelian2::from_group_file(&file)),
        Ok(GroupKind::Cyclic) => drop(Cyclic::from_group_file(&file)),
        Ok(GroupKind::Symmetric) => drop(Symmetric::from_group_file(&file)),
        Ok(GroupKind::Semidirect) => {
            drop(Semidirect::from_group_file(&file));
            drop(CrWitness::<Semidirect>::from_group_file(&file));
        }
        Ok(GroupKind::NormalFormG2) => {
            drop(G2Group::<ElementaryAbelian2>::from_group_file(&file));
            drop(G2Group::<Semidirect>::from_group_file(&file));
        }
        _ => {}
    }
});
