//! A homotopy base for the presentation ⟨B|U⟩ of a Schützenberger group,
//! assembled from the critical circuits of the completed monoid.
//!
//! ```text
//! cargo run --example homotopy_base -- tests/corpus/z4.txt a
//! ```

use schutzen::engine::Limits;
use schutzen::schutz::{build_presentation, choose_representatives, Monoid};
use schutzen::squier::base::{critical_base, group_base, Provenance};
use schutzen::squier::canonical::CanonicalPaths;
use schutzen::squier::PathCaps;
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

    // edges of X refer to the completed rules, so ⟨B|U⟩ is built over them too
    let completed = m.system.presentation();
    let d = choose_representatives(&m, completed, m.h_class_of(&selector), &Word::empty())?;
    let q = build_presentation(&d)?;
    let cp = CanonicalPaths::build(&d, &q, PathCaps::default())?;
    let x = critical_base(&m.system)?;
    let y = group_base(&cp, &x)?;
    y.validate(&q.presentation)?;

    println!("|B| = {}, |U| = {}", q.alphabet().len(), q.relations.len());
    println!("|X| = {}", x.members.len());
    for p in [Provenance::Y1, Provenance::Y2, Provenance::Y3] {
        println!("|{p}| = {}", y.count(p));
    }
    println!("all members closed: {}", x.all_closed() && y.all_closed());
    for member in y.members.iter().take(8) {
        println!(
            "  {} {}: based at {}, {} edges",
            member.provenance,
            member.label,
            q.alphabet().format_word(member.path.start()),
            member.path.len()
        );
    }
    Ok(())
}
