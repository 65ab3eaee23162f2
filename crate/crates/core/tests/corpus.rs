use arrzeta::corpus::{check_entry, corpus};

#[test]
fn annotations_match() {
    let mut bad = Vec::new();
    for e in corpus() {
        for c in check_entry(&e).unwrap() {
            if !c.ok {
                bad.push(format!("{} {}: expected {}, computed {}", e.name, c.key, c.expected, c.computed));
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
