#![no_main]

use crgroups::measure::{parse_profile, validate_profile};
use crgroups::ratio::ratio_u64;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_profile(text) {
        assert_eq!(parse_profile(&p.to_text()).expect("printed profile reparses"), p);
        let report = validate_profile(&p, Some(&ratio_u64(3, 4)));
        let _ = report.violations();
    }
});
