// Structure constants p_{u,v}^w by every algorithm, and a full coproduct row.
use nilhecke::structconst::{Algo, StructureConstants};
use nilhecke::weyl::format_word;

fn main() -> nilhecke::Result<()> {
    let sc = StructureConstants::for_type("A3")?;
    let g = sc.group().clone();
    let w = g.parse_element("1,2,3,1")?;
    let u = g.parse_element("1,3")?;
    for algo in Algo::ALL {
        println!("{algo:>9}: p = {}", sc.p_with(algo, w, u, u)?);
    }

    let w = g.parse_element("2,1,3,2")?;
    println!("\nDelta(Y_w), w = 2,1,3,2:");
    for (u, v, p) in sc.row(Algo::Recursive, w)? {
        println!("  Y_{{{}}} x Y_{{{}}}: {p}", format_word(g.word(u)), format_word(g.word(v)));
    }
    Ok(())
}
