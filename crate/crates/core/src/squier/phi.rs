//! Lifting φ(λ, κ(·, j)) from words to edges and paths.

use crate::error::{Error, Result};
use crate::schutz::{SchutzData, SchutzPresentation};
use crate::squier::graph::{DGEdge, DGPath};
use crate::words::Word;

fn violated(clause: &'static str, detail: String) -> Error {
    Error::PreconditionViolated { clause, detail }
}

/// Checks the three conditions under which `φ(λ, κ(w, j))` is used for
/// edges starting at `w`, returning `w ∗ j`.
pub fn check_conditions(d: &SchutzData, lambda: usize, w: &Word, j: usize) -> Result<usize> {
    let wj = d
        .star
        .act_word(w, j)
        .ok_or_else(|| violated("i", format!("start word times index {} is zero", d.star.label(j))))?;
    let k = d.kappa(w, j)?;
    if d.lambda.act_word(lambda, &k).is_none() {
        return Err(violated("ii", format!("λ={} is killed by κ", lambda + 1)));
    }
    if !d.h_lambda_below(lambda, wj) {
        return Err(violated("iii", format!("H_{} is not below the index {}", lambda + 1, d.star.label(wj))));
    }
    Ok(wj)
}

/// The image of a single edge of Γ(𝒫) in Γ(𝒬), or `None` when it is the
/// empty path (the relation it would use is trivial).
pub fn phi_edge(d: &SchutzData, q: &SchutzPresentation, lambda: usize, f: &DGEdge, j: usize) -> Result<Option<DGEdge>> {
    let rule = d.pres.rules().get(f.rule).ok_or_else(|| Error::Internal(format!("unknown rule {}", f.rule)))?;
    let (from, to) = rule.sides(f.sign);
    check_conditions(d, lambda, &from.wrap(&f.left, &f.right), j)?;

    let missing = || Error::Internal("φ of an edge left the domain of its maps".into());
    let j_beta = d.star.act_word(&f.right, j).ok_or_else(missing)?;
    let i_a_beta_j = d.star.act_word(from, j_beta).ok_or_else(missing)?;
    let kappa_alpha = d.kappa(&f.left, i_a_beta_j)?;
    let left = d.phi(lambda, &kappa_alpha)?;
    let lambda_mid = d.lambda.act_word(lambda, &kappa_alpha).ok_or_else(missing)?;
    let mid_from = d.phi(lambda_mid, &d.kappa(from, j_beta)?)?;
    let mid_to = d.phi(lambda_mid, &d.kappa(to, j_beta)?)?;
    if mid_from == mid_to {
        return Ok(None);
    }
    let lambda_right = d.lambda.act_word(lambda, &d.kappa(&f.left.concat(from), j_beta)?).ok_or_else(missing)?;
    let right = d.phi(lambda_right, &d.kappa(&f.right, j)?)?;
    let (id, sign) = q.find(&mid_from, &mid_to).ok_or_else(|| {
        Error::Internal(format!(
            "no relation {} = {} for λ={} and index {}",
            q.alphabet().format_word(&mid_from),
            q.alphabet().format_word(&mid_to),
            lambda_mid + 1,
            d.star.label(j_beta)
        ))
    })?;
    Ok(Some(DGEdge::new(left, id, sign, right)))
}

/// Edge-wise image `φ(λ, κ(p, j))` of a path of Γ(𝒫).
pub fn phi_path(d: &SchutzData, q: &SchutzPresentation, lambda: usize, p: &DGPath, j: usize) -> Result<DGPath> {
    check_conditions(d, lambda, p.start(), j)?;
    let start = d.phi(lambda, &d.kappa(p.start(), j)?)?;
    let mut out = DGPath::empty(start);
    for f in p.edges() {
        if let Some(e) = phi_edge(d, q, lambda, f, j)? {
            out.push(&q.presentation, e)?;
        }
    }
    let end = d.phi(lambda, &d.kappa(p.end(), j)?)?;
    if *out.end() != end {
        return Err(Error::Internal("φ of a path does not end at φ of its end".into()));
    }
    Ok(out)
}

/// `φ(p) = φ(1, κ(p, η))`
pub fn phi_eta(d: &SchutzData, q: &SchutzPresentation, p: &DGPath) -> Result<DGPath> {
    phi_path(d, q, 0, p, d.star.eta)
}
