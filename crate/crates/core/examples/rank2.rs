// Rank-two binomial formulas for augmented constants.
use nilhecke::rootdata::RootDatum;
use nilhecke::structconst::{Rank2Data, Side};

fn main() -> nilhecke::Result<()> {
    for spec in ["G2", "I2(6):normalized", "I2(7)"] {
        let r = Rank2Data::from_datum(&*RootDatum::parse(spec)?)?;
        let show = |s: Side| r.seq(s).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        println!("{spec}: A = ({}), B = ({})", show(Side::U), show(Side::V));
        println!("  c^(u4)_(u1,u3) = {}", r.coefficient(1, 3, Side::U)?);
    }
    Ok(())
}
