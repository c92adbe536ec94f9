// Connective K-theory: X_i^2 = t X_i, the CK coproduct, and both specializations.
use nilhecke::connective::{CkContext, CkCoproduct, CkFraction, CkQW, CKScalar};
use nilhecke::weyl::format_word;

fn main() -> nilhecke::Result<()> {
    let ctx = CkContext::for_type("A2")?;
    let g = ctx.group().clone();
    let x1 = CkQW::x(&ctx, 0);
    let t = CkFraction::from_scalar(CKScalar::t(2));
    println!("X_1^2 = t X_1: {}", x1.mul(&ctx, &x1) == x1.scale_left(&ctx, &t));
    println!("X_1 o x_(a1+a2) = {}", ctx.divided_difference(0, &CKScalar::x(&[1, 1]))?);

    let cp = CkCoproduct::new(&ctx);
    let w = g.parse_element("2,1")?;
    println!("\nDelta(X_w), w = 2,1:");
    for ((u, v), p) in cp.table(w)? {
        let cap = (g.length(u) + g.length(v)) as u32;
        println!(
            "  X_{{{}}} x X_{{{}}}: {}\n      t=1: {}\n      t->0: {}",
            format_word(g.word(u)),
            format_word(g.word(v)),
            p,
            p.at_t1(),
            p.at_t0(cap)?
        );
    }
    Ok(())
}
