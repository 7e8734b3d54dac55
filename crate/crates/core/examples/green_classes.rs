//! Green's relations of a finite monoid, and the index sets attached to one
//! H-class: the left action on Λ and the star action on I.
//!
//! ```text
//! cargo run --example green_classes -- tests/corpus/right_zero.txt a
//! ```

use schutzen::engine::Limits;
use schutzen::green::{lambda_action, star_action};
use schutzen::schutz::Monoid;
use schutzen::words::{parse_presentation, Word};

const DEFAULT: &str = "alphabet: a t\nrule: tt = 1\nrule: ta = at\nrule: aaa = aa\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let m = Monoid::new(parse_presentation(&text)?, Limits::default(), 10_000)?;
    let (u, g) = (&m.universe, &m.green);
    let show = |class: &[usize]| -> String {
        let words: Vec<String> = class.iter().map(|&x| m.alphabet().format_word(u.word(x))).collect();
        format!("{{{}}}", words.join(", "))
    };

    for (name, classes) in [("R", &g.r_classes), ("L", &g.l_classes), ("H", &g.h_classes)] {
        let list: Vec<String> = classes.iter().map(|c| show(c)).collect();
        println!("{name}-classes: {}", list.join(" "));
    }

    let selector = match args.next() {
        Some(w) => m.alphabet().parse_word(&w)?,
        None => Word::letter(0),
    };
    let h = m.h_class_of(&selector);
    println!("\nH = {}{}", show(&g.h_classes[h]), if g.is_group_h_class(u, h) { " (a group)" } else { "" });

    let lambda = lambda_action(u, g, h);
    for (k, &class) in lambda.classes.iter().enumerate() {
        let moves: Vec<String> = m
            .alphabet()
            .letters()
            .map(|a| match lambda.act(k, a) {
                Some(t) => format!("{}·{} = {}", k + 1, m.alphabet().name(a), t + 1),
                None => format!("{}·{} = 0", k + 1, m.alphabet().name(a)),
            })
            .collect();
        println!("  H_{} = {}  {}", k + 1, show(&g.h_classes[class]), moves.join("  "));
    }

    let star = star_action(u, g, h, &Word::empty())?;
    println!("I has {} indices; ω = {}, η = {}", star.len(), star.label(star.omega), star.label(star.eta));
    let j: Vec<String> = star.j_ids.iter().map(|&i| star.label(i)).collect();
    println!("J = {{{}}}", j.join(", "));
    for i in 0..star.len() {
        println!("  r_{} = {}", star.label(i), m.alphabet().format_word(star.rep(i)));
    }
    Ok(())
}
