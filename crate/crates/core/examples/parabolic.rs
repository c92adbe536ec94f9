// Minimal coset representatives and the restriction of structure constants to W^J.
use nilhecke::structconst::StructureConstants;
use nilhecke::weyl::format_word;

fn main() -> nilhecke::Result<()> {
    let sc = StructureConstants::for_type("A3")?;
    let g = sc.group().clone();
    for j in g.subsets() {
        let reps = g.min_coset_reps(&j);
        sc.parabolic_consistent(&j)?;
        let names: Vec<String> = reps.iter().map(|&x| format!("[{}]", format_word(g.word(x)))).collect();
        println!("J = {j:?}: |W^J| = {:<3} {}", reps.len(), if reps.len() <= 6 { names.join(" ") } else { String::new() });
    }
    Ok(())
}
