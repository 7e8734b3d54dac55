//! Paths in the derivation graph: a breadth-first derivation between two
//! equal words, and its image under φ in the graph of ⟨B|U⟩.
//!
//! ```text
//! cargo run --example derivation_paths
//! ```

use schutzen::cli::docs::PathDoc;
use schutzen::engine::Limits;
use schutzen::schutz::{build_presentation, choose_representatives, Monoid};
use schutzen::squier::canonical::CanonicalPaths;
use schutzen::squier::phi::{check_conditions, phi_path};
use schutzen::squier::{path_search, PathCaps};
use schutzen::words::{parse_presentation, Alphabet, Word};

fn show(alphabet: &Alphabet, p: &schutzen::squier::DGPath) -> String {
    let doc = PathDoc::from_path(alphabet, p);
    let edges: Vec<String> = doc
        .edges
        .iter()
        .map(|e| format!("{}·r{}{}·{}", e.left, e.rule, if e.sign > 0 { "" } else { "⁻" }, e.right))
        .collect();
    format!("{} [{}]", doc.base, edges.join(", "))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = Monoid::new(parse_presentation("alphabet: a\nrule: aaaa = a\n")?, Limits::default(), 100)?;
    let pres = &m.presentation;
    let a = m.alphabet();

    let from = a.parse_word("aaaaaaa")?;
    let to = a.parse_word("a")?;
    let p = path_search(pres, &from, &to, PathCaps::default())?;
    println!("derivation {} => {}: {}", a.format_word(&from), a.format_word(&to), show(a, &p));

    let h = m.h_class_of(&Word::letter(0));
    let d = choose_representatives(&m, pres, h, &Word::empty())?;
    let q = build_presentation(&d)?;
    let cp = CanonicalPaths::build(&d, &q, PathCaps::default())?;

    // φ at λ = 1, index ω: defined because every vertex keeps H below r_ω
    let j = d.star.omega;
    check_conditions(&d, 0, p.start(), j)?;
    let image = phi_path(&d, &q, 0, &p, j)?;
    println!("φ(1, ·) at ω: {}", show(q.alphabet(), &image));

    for (id, rel) in q.relations.iter().enumerate() {
        let b = q.alphabet();
        println!(
            "P[{} = {}]: {}",
            b.format_word(&rel.lhs),
            b.format_word(&rel.rhs),
            show(a, &cp.p_uv[id])
        );
    }
    for (y, inv) in &cp.w {
        let b = q.alphabet();
        println!("W: y = {}, ŷ = {}, D_y = {}", b.format_word(y), b.format_word(&inv.hat), show(b, &inv.d));
    }
    Ok(())
}
