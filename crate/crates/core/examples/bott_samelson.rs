// Bott-Samelson sums and bounded bijections on the G2 and I2(5) examples.
use nilhecke::poly::Poly;
use nilhecke::rootdata::RootDatum;
use nilhecke::structconst::{bijection_sum, bott_samelson_term, reduced_subwords, Admissibility};
use nilhecke::weyl::WeylGroup;

fn main() -> nilhecke::Result<()> {
    for spec in ["G2", "I2(5)"] {
        let d = RootDatum::parse(spec)?;
        let g = WeylGroup::generate(&d)?;
        let word = [0, 1, 0, 1];
        let u = g.element(&[0, 1])?;
        println!("{spec}: w = s1s2s1s2, u = v = s1s2");
        let subs = reduced_subwords(&g, &word, u);
        let (mut total_bs, mut total_bij) = (Poly::zero(2), Poly::zero(2));
        for &e1 in &subs {
            for &e2 in &subs {
                let bs = bott_samelson_term(&d, &word, e1, e2);
                println!("  E1={e1:04b} E2={e2:04b}  p = {bs}");
                total_bs.add_assign(&bs);
                total_bij.add_assign(&bijection_sum(&d, &word, e1, e2, Admissibility::AllPositions));
            }
        }
        println!("  total {total_bs}, by bounded bijections {total_bij}");
    }
    Ok(())
}
