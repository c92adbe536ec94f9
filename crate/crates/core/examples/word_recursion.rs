// The word recursion needs no group table, so it reaches ranks where W is huge.
use nilhecke::rootdata::RootDatum;
use nilhecke::structconst::p_complete;
use nilhecke::weyl::parse_word;

fn main() -> nilhecke::Result<()> {
    let d = RootDatum::parse("A8")?;
    let cases = [("1,5,4,3,2,3,4", "2,4", "4,3,2,3,4"), ("2,4,3,2", "2,3,2", "4,3,2")];
    for (w, u, v) in cases {
        let p = p_complete(&d, &parse_word(w)?, &parse_word(u)?, &parse_word(v)?)?;
        println!("w={w:<16} u={u:<6} v={v:<12} -> {p}");
    }
    Ok(())
}
