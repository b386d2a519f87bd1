use arglue_core::catalog::run_suite;

#[test]
fn suite() {
    let items = run_suite();
    for it in &items {
        println!("{} {}: {}", if it.pass { "PASS" } else { "FAIL" }, it.name, it.detail);
    }
    assert!(items.iter().all(|i| i.pass));
}
