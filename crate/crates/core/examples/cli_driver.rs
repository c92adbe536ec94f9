// Drives the command-line front end in-process, as a script would.
fn main() {
    let cmds = [
        "schub group-info --type I2(5):normalized",
        "schub schub --type A8 --w 1,5,4,3,2,3,4 --u 2,4 --v 4,3,2,3,4",
        "schub smooth --type A3 --w 2,1,3,2",
        "schub ck-schub --type A2 --w 2,1 --specialize t0",
    ];
    for c in cmds {
        println!("$ {c}");
        let args: Vec<String> = c.split_whitespace().map(String::from).collect();
        let code = nilhecke::cli::run(&args);
        println!("(exit {code})\n");
    }
}
