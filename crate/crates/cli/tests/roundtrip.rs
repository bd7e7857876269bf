use std::fs;
use std::path::PathBuf;

use topos_cli::parse_workspace;

#[test]
fn fixtures_round_trip_through_the_serializer() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut count = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let parsed = parse_workspace(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = parsed.to_string();
        let reparsed = parse_workspace(&printed)
            .unwrap_or_else(|e| panic!("{}: {e}\n{printed}", path.display()));
        assert_eq!(reparsed, parsed, "{}", path.display());
        assert_eq!(reparsed.to_string(), printed);
        count += 1;
    }
    assert!(count >= 5);
}
