//! The lifting problem: does a projective group come from linear maps fixing F?
//! Reads a polynomial and generator file (defaults to the Klein C5² pair).
use quintic_aut::polyring::{parse_matrices, parse_poly_auto};
use quintic_aut::projgroup::{GeneratedGroup, ProjectiveClass};
use quintic_aut::stabkit::{f_lift_element, f_lift_group};

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let poly = args.next().unwrap_or_else(|| format!("{dir}/klein.poly"));
    let gens = args.next().unwrap_or_else(|| format!("{dir}/klein_c5sq.gens"));
    let f = parse_poly_auto(std::fs::read_to_string(&poly).expect("read poly").trim(), 5).expect("parse");
    let gens = parse_matrices(&std::fs::read_to_string(&gens).expect("read gens")).expect("parse gens");

    for (i, a) in gens.iter().enumerate() {
        let class = ProjectiveClass::canonicalize(a).expect("invertible");
        match f_lift_element(&class, &f).expect("lift") {
            Some(l) => println!("generator {}: lifts, factor {:?}", i + 1, f.semi_invariance_factor(&l).unwrap().map(|c| c.to_string())),
            None => println!("generator {}: no lift fixes F", i + 1),
        }
    }
    let g = GeneratedGroup::projective(&gens, 10_000).expect("closure");
    match f_lift_group(&g, &f).expect("group lift") {
        Some(l) => println!("group of order {} lifts with branches {:?}", g.order(), l.branches),
        None => println!("group of order {} has no lift", g.order()),
    }
}
