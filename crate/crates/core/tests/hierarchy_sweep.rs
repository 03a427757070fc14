use wl_lab::corpus::pair_corpus;
use wl_lab::hierarchy::check_hierarchy;

#[test]
fn no_relation_breaks_on_seeded_corpus() {
    let pairs: Vec<_> = pair_corpus(2024, 200, 10).unwrap().into_iter().map(|p| (p.g, p.h)).collect();
    let report = check_hierarchy(&pairs).unwrap();
    assert!(report.violations.is_empty(), "{:#?}", report.violations);
    eprintln!("{}", serde_json::to_string(&report.distinguished).unwrap());
    eprintln!("{}", serde_json::to_string(&report.open).unwrap());
}
