//! Completes a presentation, traces a reduction, and lists the critical
//! circuits that form a homotopy base for the completed system.
//!
//! ```text
//! cargo run --example knuth_bendix -- tests/corpus/nonregular.txt taat
//! ```

use schutzen::engine::{critical_circuits, knuth_bendix, Limits};
use schutzen::words::parse_presentation;

const DEFAULT: &str = "alphabet: a b\nrule: aba = b\nrule: bb = 1\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let pres = parse_presentation(&text)?;
    let system = knuth_bendix(&pres, Limits::default())?;
    let alphabet = system.alphabet();

    println!("{} input rules, {} after completion:", pres.rules().len(), system.rules().len());
    for r in system.rules() {
        println!("  {} -> {}", alphabet.format_word(&r.lhs), alphabet.format_word(&r.rhs));
    }

    let word = match args.next() {
        Some(w) => alphabet.parse_word(&w)?,
        None => alphabet.parse_word(&alphabet.names().concat().repeat(3))?,
    };
    let (normal, steps) = system.reduce_traced(&word);
    println!("\n{} reduces to {} in {} steps", alphabet.format_word(&word), alphabet.format_word(&normal), steps.len());
    for s in &steps {
        println!("  rule {} at position {}", s.rule, s.position);
    }

    let circuits = critical_circuits(&system);
    println!("\n{} critical circuits", circuits.len());
    for (k, c) in circuits.iter().enumerate() {
        let path = c.path(&system)?;
        println!("  circuit {k}: based at {}, {} edges", alphabet.format_word(path.start()), path.len());
    }
    Ok(())
}
