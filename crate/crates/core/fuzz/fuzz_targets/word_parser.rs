#![no_main]

use crgroups::word::parse_word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = parse_word(text) {
        // printing and reparsing must be stable
        let printed = w.to_string();
        let again = parse_word(&printed).expect("printed word reparses");
        assert_eq!(again.to_string(), printed);
    }
});
