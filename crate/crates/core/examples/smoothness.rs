//! Smoothness certificates: per-prime Jacobian checks for a catalog quintic and for
//! the singular order-480 form, plus a support-level singularity certificate.
use std::time::Instant;

use quintic_aut::catalog::load_catalog;
use quintic_aut::polyring::parse_poly_auto;
use quintic_aut::smoothcert::{certify, combinatorial_singularity, good_primes, jacobian_smooth_mod_p};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "15".into());
    let cat = load_catalog().expect("catalog");
    for id in [id.as_str(), "singular-480"] {
        let entry = cat.iter().find(|e| e.id == id).unwrap_or_else(|| panic!("no entry {id}"));
        let (f, _) = entry.materialize().expect("materialize");
        println!("entry {id}: {f}");
        for p in good_primes(&f, 3) {
            let t = Instant::now();
            let smooth = jacobian_smooth_mod_p(&f, &p).expect("reduction");
            println!("  mod {:>4}: {} ({:.2?})", p.prime, if smooth { "smooth" } else { "singular" }, t.elapsed());
        }
        println!("  verdict: {}", certify(&f, 3).label());
    }

    // every monomial lies in (x1, x2)^2, so each point with x1 = x2 = 0 is singular
    let f = parse_poly_auto("x1^5+x2^5+x1^2*x3^3+x2^2*x4^3", 4).expect("parse");
    match combinatorial_singularity(&f) {
        Some(c) => println!("{f}: {}", c.describe()),
        None => println!("{f}: no support certificate"),
    }
}
