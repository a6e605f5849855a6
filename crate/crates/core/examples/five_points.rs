//! Stabilizers in PGL(2) of five points on the line, given as roots of binary quintics.
use quintic_aut::exactnum::{zeta, Cyclotomic};
use quintic_aut::polyring::parse_poly_auto;
use quintic_aut::stabkit::binary_quintic_stabilizer;

fn main() {
    let one = || Cyclotomic::one(1);
    let zero = || Cyclotomic::zero(1);
    let finite = |m: u64, ks: &[i64]| ks.iter().map(|&k| [zeta(m, k), one()]).collect::<Vec<_>>();

    let mut cases = vec![("x1^5+x2^5", finite(10, &[1, 3, 5, 7, 9]))];
    let mut roots = vec![[one(), zero()], [zero(), one()]];
    roots.extend(finite(6, &[1, 3, 5]));
    cases.push(("x1^4*x2+x2^4*x1", roots));
    let mut roots = vec![[one(), zero()]];
    roots.extend(finite(8, &[1, 3, 5, 7]));
    cases.push(("x1^4*x2+x2^5", roots));

    for (text, roots) in cases {
        let h = parse_poly_auto(text, 2).expect("parse");
        let g = binary_quintic_stabilizer(&h, &roots).expect("stabilizer");
        println!("{text:>16}: stabilizer of order {}", g.order());
    }
}
