//! Enumerates a finite monoid and prints its right Cayley table.
//!
//! ```text
//! cargo run --example enumerate_monoid -- tests/corpus/z4.txt
//! ```

use schutzen::engine::{knuth_bendix, enumerate_universe, Limits};
use schutzen::words::parse_presentation;

const DEFAULT: &str = "# cyclic group of order 3 with an identity adjoined\nalphabet: a\nrule: aaaa = a\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let pres = parse_presentation(&text)?;
    let system = knuth_bendix(&pres, Limits::default())?;
    let universe = enumerate_universe(&system, 10_000)?;
    let alphabet = universe.alphabet();

    println!("{} elements", universe.len());
    let names: Vec<String> = universe.elements().iter().map(|w| alphabet.format_word(w)).collect();
    let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(1);
    print!("{:>width$} |", "·");
    for a in alphabet.names() {
        print!(" {a:>width$}");
    }
    println!();
    for (x, name) in names.iter().enumerate() {
        print!("{name:>width$} |");
        for a in alphabet.letters() {
            print!(" {:>width$}", names[universe.right(x, a)]);
        }
        println!();
    }
    Ok(())
}
