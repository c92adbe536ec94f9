// Exact arithmetic in Z[2cos(pi/m)].
use nilhecke::ring::{minpoly_2cos, AlgebraicInteger, NumberRing};

fn main() -> nilhecke::Result<()> {
    for m in [5, 7, 8, 12, 30] {
        println!("m = {m:<3} minimal polynomial (ascending): {:?}", minpoly_2cos(m)?);
    }

    let r = NumberRing::new(5)?;
    let tau = r.tau();
    println!("\ntau_5 = {:.12}", tau.to_f64());
    println!("1/tau_5 = {}", tau.inv().unwrap());
    println!("norm(4 - tau^2) = {}", (nilhecke::ring::Scalar::int(4) - &tau * &tau).norm());

    let r7 = NumberRing::new(7)?;
    let a = AlgebraicInteger::new(&r7, &[-1, 0, 1])?; // tau^2 - 1
    let b = AlgebraicInteger::new(&r7, &[0, 1])?;
    let prod = a.mul(&b)?;
    println!("\n(tau^2 - 1) * tau = {} in Z[tau_7]", prod.to_scalar());
    println!("back: {}", prod.exact_divide(&b)?.to_scalar());
    println!("json: {}", prod.to_json());
    Ok(())
}
