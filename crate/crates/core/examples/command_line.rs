//! Driving the command-line front end in-process.

fn main() {
    for args in [
        vec!["modunits", "units", "--group", "builtin:c4"],
        vec!["modunits", "mq", "--group", "builtin:c2xc2", "--json"],
        vec!["modunits", "classes", "--group", "builtin:d8", "--max-order", "4"],
    ] {
        let out = modunits::cli::run(&args);
        println!("$ {}\n{}{}exit {}\n", args.join(" "), out.stdout, out.stderr, out.code);
    }
}
