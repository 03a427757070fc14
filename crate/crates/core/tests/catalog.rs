use wl_lab::catalog::{builtin_catalog, search_separating_base, verify_catalog, Claim};
use wl_lab::furer::make_pair;
use wl_lab::AlgorithmSpec;

#[test]
fn empty_catalog_gives_empty_table() {
    assert!(verify_catalog(&[]).unwrap().is_empty());
}

#[test]
fn wrong_claim_fails_and_true_claims_pass() {
    let mut entry = builtin_catalog().into_iter().find(|e| e.id == "sv-over-vs").unwrap();
    entry.claims =
        vec![Claim { alg: "swl-vs".into(), distinguishes: true }, Claim { alg: "swl-sv".into(), distinguishes: true }];
    let rows = verify_catalog(&[entry]).unwrap();
    assert!(!rows[0].pass && !rows[0].observed);
    assert!(rows[1].pass && rows[1].observed);
}

#[test]
fn search_finds_a_pooling_separation() {
    let weak: AlgorithmSpec = "swl-vs".parse().unwrap();
    let strong: AlgorithmSpec = "swl-sv".parse().unwrap();
    let base = search_separating_base(&weak, &strong, 8, 300, 7).unwrap().expect("a base within budget");
    let (g, h) = make_pair(&base).unwrap();
    assert!(strong.distinguish(&g, &h).unwrap().distinguishes);
    assert!(!weak.distinguish(&g, &h).unwrap().distinguishes);
}

#[test]
fn search_reports_none_for_impossible_claims() {
    let weak: AlgorithmSpec = "fwl2".parse().unwrap();
    let strong: AlgorithmSpec = "slfwl2".parse().unwrap();
    assert_eq!(search_separating_base(&weak, &strong, 7, 40, 3).unwrap(), None);
}
