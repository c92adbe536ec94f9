// Transition matrices: c_{w,v} from Y_w, d_{u,v} from Billey's formula, and C D^t = I.
use nilhecke::rootdata::RootDatum;
use nilhecke::twisted::{d_by_inversion, d_by_recursion, Transition};
use nilhecke::weyl::{format_word, WeylGroup};

fn main() -> nilhecke::Result<()> {
    let d = RootDatum::parse("A3")?;
    let g = WeylGroup::generate(&d)?;
    let t = Transition::build(&g);
    let w = g.parse_element("2,1,3,2")?;
    for (v, c) in t.c_row(w) {
        println!("c[{}] = {}", format_word(g.word(*v)), c.render(&d));
    }
    let v = g.longest();
    println!("\nd_(u,w0) for u = s2s1: {}", t.d(g.parse_element("2,1")?, v));
    t.verify_inverse()?;
    let same = d_by_recursion(&g).iter().enumerate().all(|(i, col)| col == t.d_column(g.elements().nth(i).unwrap()));
    println!("C D^t = I; recursion agrees with Billey: {same}");
    println!("inversion agrees with Billey: {}", d_by_inversion(&t)?.iter().enumerate().all(|(i, col)| col == t.d_column(g.elements().nth(i).unwrap())));

    let h3 = WeylGroup::generate(&RootDatum::parse("H3")?)?;
    Transition::build(&h3).verify_inverse()?;
    println!("H3 (|W| = {}): C D^t = I", h3.order());
    Ok(())
}
