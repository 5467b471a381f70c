//! Frozen reference values. `XLAG_BLESS=1 cargo test --test goldens` rewrites the
//! golden file from the oracles alone.

use xlag_core::acceptance::{frozen_goldens, implementation_value, oracle_goldens};

#[test]
fn goldens_are_reproduced_by_oracles() {
    let fresh = oracle_goldens();
    if std::env::var("XLAG_BLESS").as_deref() == Ok("1") {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/src/acceptance/goldens.json");
        std::fs::write(path, serde_json::to_string_pretty(&fresh).unwrap() + "\n").unwrap();
        return;
    }
    let frozen = frozen_goldens();
    assert_eq!(frozen.len(), fresh.len());
    for (k, g) in &frozen {
        let o = &fresh[k];
        assert!((o.value - g.value).abs() <= 1e-12 * g.value.abs().max(1.0), "{k}");
    }
}

#[test]
fn implementation_matches_goldens() {
    for (k, g) in frozen_goldens() {
        let v = implementation_value(&k).unwrap();
        let d = (v - g.value).abs() / g.value.abs().max(1.0);
        assert!(d <= g.tol, "{k}: {v} vs {} (tol {:e})", g.value, g.tol);
    }
}
