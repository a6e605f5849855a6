//! Semi-permutation stabilizers of the Fermat and Klein quintics, and the
//! lifting problem for the Fermat group.
use std::time::Instant;

use quintic_aut::polyring::parse_poly_auto;
use quintic_aut::stabkit::{f_lift_group, semiperm_stabilizer};

fn main() {
    for (name, text) in [
        ("fermat", "x1^5+x2^5+x3^5+x4^5+x5^5"),
        ("klein", "x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^4*x1"),
    ] {
        let f = parse_poly_auto(text, 5).expect("parse");
        let t = Instant::now();
        let rep = semiperm_stabilizer(&f, true).expect("stabilizer");
        println!("{name}: order {} from {} support permutations in {:.2?}", rep.order, rep.permutations, t.elapsed());
        let t = Instant::now();
        match f_lift_group(&rep.group, &f).expect("lift") {
            Some(l) => println!("  lifts to GL(5) with branches {:?} in {:.2?}", l.branches, t.elapsed()),
            None => println!("  no subgroup of GL(5) fixing F maps onto it ({:.2?})", t.elapsed()),
        }
    }
}
