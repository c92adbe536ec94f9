// Root data and Weyl groups for a handful of types, crystallographic or not.
use nilhecke::rootdata::RootDatum;
use nilhecke::weyl::{format_word, WeylGroup};

fn main() -> nilhecke::Result<()> {
    for spec in ["A3", "B3", "G2", "F4", "H3", "I2(5)", "I2(8):polarized"] {
        let d = RootDatum::parse(spec)?;
        let g = WeylGroup::generate(&d)?;
        println!(
            "{:<16} |W| = {:<5} |Phi+| = {:<3} index = {:<3} w0 = {}",
            d.spec().to_string(),
            g.order(),
            d.positive_roots().len(),
            d.lattice_index(),
            format_word(g.word(g.longest()))
        );
    }

    let d = RootDatum::parse("B3")?;
    let g = WeylGroup::generate(&d)?;
    let w = g.parse_element("1,2,3,2")?;
    println!("\nB3, w = 1,2,3,2");
    println!("reduced words: {}", g.reduced_words(w).len());
    println!("Bruhat interval [e, w]: {} elements", g.interval(g.identity(), w).len());
    for r in g.inversion_roots(g.word(w)) {
        let s: Vec<String> = r.iter().map(|c| c.to_string()).collect();
        println!("  inversion ({})", s.join(", "));
    }
    Ok(())
}
