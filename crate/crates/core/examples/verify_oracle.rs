//! Runs the randomized and exhaustive audits on every H-class of a monoid.
//! Set `SCHUTZEN_SEED` to vary the samples.
//!
//! ```text
//! SCHUTZEN_SEED=7 cargo run --example verify_oracle -- tests/corpus/nonregular.txt
//! ```

use schutzen::audit::{exhaustive_lemma_suite, lemma_suite, path_audit, rng_from_env, seed_from_env};
use schutzen::engine::Limits;
use schutzen::schutz::{build_presentation, choose_representatives, Monoid};
use schutzen::squier::base::{critical_base, group_base};
use schutzen::squier::canonical::CanonicalPaths;
use schutzen::squier::PathCaps;
use schutzen::words::{parse_presentation, Word};

const DEFAULT: &str = "alphabet: a b\nrule: ab = 1\nrule: ba = 1\nrule: aaaa = 1\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let m = Monoid::new(parse_presentation(&text)?, Limits::default(), 10_000)?;
    let completed = m.system.presentation();
    let x = critical_base(&m.system)?;
    let mut rng = rng_from_env();
    let mut failures = 0;

    for h in 0..m.green.h_classes.len() {
        let d = choose_representatives(&m, completed, h, &Word::empty())?;
        let q = build_presentation(&d)?;
        let mut report = lemma_suite(&d, &q, &mut rng, 1000);
        report.merge(exhaustive_lemma_suite(&d, &q, 4));
        let cp = CanonicalPaths::build(&d, &q, PathCaps::default())?;
        report.merge(path_audit(&cp, &group_base(&cp, &x)?, &mut rng, 100)?);

        let rep = m.alphabet().format_word(m.universe.word(m.green.h_classes[h][0]));
        println!("H-class of {rep}:");
        for c in &report.checks {
            println!("  {:<32} {:>6}/{:<6}", c.name, c.instances - c.failures, c.instances);
        }
        failures += report.failures();
    }
    println!("{failures} failures (seed {})", seed_from_env());
    Ok(())
}
