// Divided differences on the symmetric algebra and the nil-Hecke relations in Q_W.
use nilhecke::fraction::RootFraction;
use nilhecke::poly::{ddx, Poly};
use nilhecke::rootdata::RootDatum;
use nilhecke::twisted::QW;
use nilhecke::weyl::WeylGroup;

fn main() -> nilhecke::Result<()> {
    let d = RootDatum::parse("A2")?;
    let g = WeylGroup::generate(&d)?;
    let f = &Poly::var(2, 0) * &Poly::var(2, 1);
    println!("f = {f}");
    println!("X_1 o f = {}", ddx(&d, 0, &f));
    println!("X_2 o X_1 o f = {}", ddx(&d, 1, &ddx(&d, 0, &f)));

    let y1 = QW::y(&g, 0);
    let y2 = QW::y(&g, 1);
    println!("\nY_1 = {}", y1.render(&g));
    println!("Y_1^2 = 0: {}", y1.mul(&g, &y1).is_zero());
    let lhs = y1.mul(&g, &y2).mul(&g, &y1);
    let rhs = y2.mul(&g, &y1).mul(&g, &y2);
    println!("braid Y_1Y_2Y_1 = Y_2Y_1Y_2: {}", lhs == rhs);
    println!("Y_1 o (a0 a1) = {}", y1.circ_apply(&g, &RootFraction::from_poly(f)));
    Ok(())
}
