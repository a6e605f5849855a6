//! Runs the three diagonal exclusion sweeps and prints their counts.

use std::time::Instant;

use quintic_aut::invartheory::{sweep_elementary_abelian, sweep_order25, SweepReport};

fn show(r: &SweepReport, secs: f64) {
    println!("{} ({secs:.1} s): passed = {}", r.name, r.passed);
    for (k, v) in &r.counts {
        println!("  {k:>20}: {v}");
    }
    for e in &r.escalated {
        println!("  escalated {} -> {}", e.candidate, e.verdict);
    }
    for s in &r.survivors {
        println!("  SURVIVOR {s}");
    }
}

fn main() {
    let t = Instant::now();
    let r = sweep_order25();
    show(&r, t.elapsed().as_secs_f64());
    for p in [2, 3] {
        let t = Instant::now();
        let r = sweep_elementary_abelian(p);
        show(&r, t.elapsed().as_secs_f64());
    }
}
