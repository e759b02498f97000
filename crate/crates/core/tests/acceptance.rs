use std::io::Write;
use std::time::Instant;

use grady_core::selftest::CRITERIA;

#[test]
fn acceptance() {
    let mut err = std::io::stderr();
    let mut failed = Vec::new();
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let line = match result {
            Ok(msg) => format!("PASS {:>2} {}: {msg} ({secs:.1}s)", i + 1, c.name),
            Err(msg) => {
                failed.push(c.name);
                format!("FAIL {:>2} {}: {msg} ({secs:.1}s)", i + 1, c.name)
            }
        };
        writeln!(err, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
