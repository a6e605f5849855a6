//! Restricts the Fermat quintic in P^5 and its S6 symmetries to the hyperplane
//! x1+...+x5 = 0 (entry 21) and regenerates the group there.
use quintic_aut::catalog::{load_catalog, restrict_to_hyperplane};
use quintic_aut::polyring::{parse_matrices, parse_poly_auto};
use quintic_aut::projgroup::GeneratedGroup;

fn main() {
    let entry = load_catalog().expect("catalog").into_iter().find(|e| e.id == "21").expect("entry 21");
    let f = parse_poly_auto(&entry.polynomial, 6).expect("parse");
    let l = parse_poly_auto(entry.hyperplane.as_deref().expect("hyperplane"), 6).expect("parse");
    let gens: Vec<_> = entry.generators.iter().flat_map(|g| parse_matrices(g).expect("matrix")).collect();
    let r = restrict_to_hyperplane(&f, &l, &gens).expect("generators preserve the hyperplane");
    println!("solved for x{}; restricted form:\n  {}", r.solved + 1, r.form);
    let g = GeneratedGroup::projective(&r.generators, 10_000).expect("closure");
    println!("restricted group order {} (expected {})", g.order(), entry.expected_order);
}
