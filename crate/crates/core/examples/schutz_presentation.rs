//! Builds the presentation ⟨B|U⟩ of a Schützenberger group and checks it
//! against the group computed directly from the H-class.
//!
//! ```text
//! cargo run --example schutz_presentation -- tests/corpus/a6a3.txt aaa
//! ```

use schutzen::engine::Limits;
use schutzen::green::schutz_direct;
use schutzen::grouptools::{enumerate_group, isomorphic};
use schutzen::schutz::{build_presentation, choose_representatives, Monoid};
use schutzen::words::{parse_presentation, Word};

const DEFAULT: &str = "alphabet: a\nrule: aaaa = a\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let m = Monoid::new(parse_presentation(&text)?, Limits::default(), 10_000)?;
    let selector = match args.next() {
        Some(w) => m.alphabet().parse_word(&w)?,
        None => Word::letter(0),
    };
    let h = m.h_class_of(&selector);

    let d = choose_representatives(&m, &m.presentation, h, &Word::empty())?;
    let q = build_presentation(&d)?;
    let b = q.alphabet();
    println!("generators: {}", b.names().join(" "));
    println!("relations ({} nontrivial, {} trivial):", q.relations.len(), q.trivial.len());
    for r in &q.relations {
        let tags: Vec<String> = r.tags.iter().map(ToString::to_string).collect();
        println!("  {} = {}    [{}]", b.format_word(&r.lhs), b.format_word(&r.rhs), tags.join("; "));
    }

    let presented = enumerate_group(&q.presentation, Limits::default(), 10_000)?;
    let direct = schutz_direct(&m.universe, &m.green, h);
    println!("\npresented order {}, direct order {}", presented.order(), direct.order());
    println!("isomorphic: {}", isomorphic(&presented, &direct)?);
    for (k, w) in presented.element_words.iter().enumerate() {
        println!("  g{k} = {}  inverse {}", b.format_word(w), b.format_word(&presented.inverse_word(w)));
    }
    Ok(())
}
