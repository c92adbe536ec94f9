// Kumar's criterion on the 3412 Schubert variety in A3, and partial flags.
use nilhecke::rootdata::RootDatum;
use nilhecke::smoothness::{parabolic_smooth, report};
use nilhecke::twisted::Transition;
use nilhecke::weyl::{format_word, WeylGroup};

fn main() -> nilhecke::Result<()> {
    let d = RootDatum::parse("A3")?;
    let g = WeylGroup::generate(&d)?;
    let t = Transition::build(&g);
    let w = g.parse_element("2,1,3,2")?;
    for v in g.interval(g.identity(), w) {
        let r = report(&t, w, v)?;
        println!("v = {:<8} |S| = {}  c' = {:<14} smooth = {}", format_word(g.word(v)), r.s_set.len(), r.c_prime.to_string(), r.smooth);
    }
    let j = [0usize, 2];
    println!("\nsmooth partial-flag Schubert varieties for J = {{s1, s3}}:");
    for v in g.min_coset_reps(&j) {
        println!("  {:<8} {}", format_word(g.word(v)), parabolic_smooth(&t, v, &j)?);
    }
    Ok(())
}
