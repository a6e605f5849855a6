//! Rank profiles of the differential method: ranks of the spaces of i-th order
//! partials, and how they separate forms up to linear change of coordinates.
use quintic_aut::diffmethod::{diff_profile, diff_rank, equivalence_obstruction};
use quintic_aut::polyring::parse_poly_auto;

fn main() {
    let quartic = parse_poly_auto("4*x1^3*x2+x5^4", 5).expect("parse");
    println!("diff_rank(4x1^3x2+x5^4, 1) = {}", diff_rank(&quartic, 1));

    let forms = [
        ("fermat", "x1^5+x2^5+x3^5+x4^5+x5^5"),
        ("klein", "x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^4*x1"),
        ("chain", "x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^5"),
    ];
    let parsed: Vec<_> = forms.iter().map(|(n, s)| (*n, parse_poly_auto(s, 5).expect("parse"))).collect();
    for (name, f) in &parsed {
        println!("{name:>7}: profile {:?}", diff_profile(f).0);
    }
    for (i, (a, f)) in parsed.iter().enumerate() {
        for (b, g) in &parsed[i + 1..] {
            match equivalence_obstruction(f, g) {
                Some(k) => println!("{a} vs {b}: ranks differ at order {k}, not equivalent"),
                None => println!("{a} vs {b}: profiles agree, no obstruction"),
            }
        }
    }
}
