// The dual module: xi-basis products, the Hecke action, and Chevalley's formula.
use nilhecke::structconst::{chevalley, Algo, StructureConstants};
use nilhecke::twisted::Dual;
use nilhecke::weyl::format_word;

fn main() -> nilhecke::Result<()> {
    let sc = StructureConstants::for_type("A2")?;
    let g = sc.group().clone();
    let w = g.parse_element("1,2,1")?;
    let s1 = g.parse_element("1")?;
    for v in ["1,2", "2,1"] {
        let p = sc.p_with(Algo::Hecke, w, s1, g.parse_element(v)?)?;
        println!("p^(121)_(1; {v}) via Hecke = {p}");
    }

    let sc = StructureConstants::for_type("A3")?;
    let g = sc.group().clone();
    let v = g.parse_element("2,1")?;
    println!("\nxi_s2 * xi_(2,1) in A3:");
    for (x, c) in chevalley(&g, 1, v) {
        println!("  xi_{{{}}}: {c}", format_word(g.word(x)));
    }
    let t = sc.transition();
    let j = [0usize];
    for x in ["2,1", "1,2"] {
        let x = g.parse_element(x)?;
        println!("xi_{{{}}} invariant under W_{{s1}}: {}", format_word(g.word(x)), Dual::xi(t, x).is_invariant(&g, &j));
    }
    Ok(())
}
