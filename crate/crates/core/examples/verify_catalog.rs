//! Runs the full catalog verification with timings and prints one line per entry.
use quintic_aut::catalog::{verify_all, Status, VerifyOptions};

fn main() {
    let example = std::env::args().nth(1);
    let opts = VerifyOptions { timings: true, example, ..VerifyOptions::default() };
    let report = verify_all(&opts).expect("catalog loads");
    for e in &report.entries {
        let show = |c: &Option<u64>| c.map_or("-".to_string(), |x| x.to_string());
        println!(
            "{:>14} {:4} order {:>6}/{:<6} goren {:>5} semiperm {:>6} {:>16} {:>7} ms {}",
            e.id,
            if e.status == Status::Pass { "PASS" } else { "FAIL" },
            show(&e.group_order.found),
            show(&e.group_order.expected),
            e.gorenstein_order.as_ref().map_or("-".into(), |c| show(&c.found)),
            e.semi_perm_stabilizer_order.as_ref().map_or("-".into(), |c| show(&c.found)),
            e.smoothness.as_ref().map_or("-", |s| s.verdict.as_str()),
            e.elapsed.unwrap_or(0),
            e.failures.join("; "),
        );
    }
    for s in &report.sweeps {
        println!("sweep {} passed={} {:?}", s.name, s.passed, s.counts);
    }
    println!("passed: {}", report.passed);
}
