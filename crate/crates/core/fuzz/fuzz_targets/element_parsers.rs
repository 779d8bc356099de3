#![no_main]

use crgroups::bits::{format_mask, parse_mask};
use crgroups::cr::toys::{named_elementary, named_semidirect};
use crgroups::group::{FiniteGroup, Perm};
use libfuzzer_sys::fuzz_target;

fn round_trip<G: FiniteGroup>(g: &G, text: &str) {
    if let Ok(x) = g.parse_element(text) {
        assert!(g.contains(&x));
        let printed = g.format_element(&x);
        assert_eq!(g.parse_element(&printed).expect("printed element reparses"), x);
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let toy = named_elementary("toy64").expect("toy64");
    let sd = named_semidirect("sd512").expect("sd512");
    round_trip(&toy, text);
    round_trip(&sd, text);
    round_trip(sd.g1(), text);
    if let Ok(p) = Perm::parse_cycles(6, text) {
        assert_eq!(Perm::parse_cycles(6, &p.cycle_notation()).expect("cycles reparse"), p);
    }
    if let Ok(m) = parse_mask(text, 8) {
        assert_eq!(parse_mask(&format_mask(m), 8).expect("mask reparses"), m);
    }
});
