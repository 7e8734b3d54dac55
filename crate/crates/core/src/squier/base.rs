//! Homotopy bases: critical circuits of a complete system, and the sets
//! Y1, Y2, Y3 for the presentation ⟨B|U⟩.

use std::fmt;

use crate::engine::{critical_circuits, CompleteSystem};
use crate::error::{Error, Result};
use crate::squier::canonical::CanonicalPaths;
use crate::squier::graph::{compose, DGEdge, DGPath};
use crate::squier::phi::{check_conditions, phi_path};
use crate::words::{Presentation, Sign, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Critical,
    Y1,
    Y2,
    Y3,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Critical => "X",
            Provenance::Y1 => "Y1",
            Provenance::Y2 => "Y2",
            Provenance::Y3 => "Y3",
        })
    }
}

/// Which graph a base lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Over {
    /// the completed monoid presentation
    Monoid,
    /// ⟨B|U⟩
    Group,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub provenance: Provenance,
    /// Parameters the member was built from, for display.
    pub label: String,
    pub path: DGPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyBase {
    pub over: Over,
    pub members: Vec<Member>,
}

impl HomotopyBase {
    pub fn count(&self, p: Provenance) -> usize {
        self.members.iter().filter(|m| m.provenance == p).count()
    }

    pub fn all_closed(&self) -> bool {
        self.members.iter().all(|m| m.path.is_closed())
    }

    /// Validates every member against the presentation it lives over.
    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        for (k, m) in self.members.iter().enumerate() {
            m.path.validate(pres)?;
            if !m.path.is_closed() {
                return Err(Error::Internal(format!("member {k} ({}) is not closed", m.provenance)));
            }
        }
        Ok(())
    }
}

/// The critical circuits of a complete system as a homotopy base.
pub fn critical_base(cs: &CompleteSystem) -> Result<HomotopyBase> {
    let members = critical_circuits(cs)
        .iter()
        .enumerate()
        .map(|(k, c)| Ok(Member { provenance: Provenance::Critical, label: format!("circuit {k}"), path: c.path(cs)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomotopyBase { over: Over::Monoid, members })
}

fn closed(path: DGPath, provenance: Provenance, label: String) -> Result<Member> {
    if !path.is_closed() {
        return Err(Error::Internal(format!("{provenance} member {label} is not closed")));
    }
    Ok(Member { provenance, label, path })
}

/// `φ(λ', κ(P, j'))` for every member P of `x` and every admissible pair
/// (λ', j') with j' in J. Taking α and β empty realizes every such pair, so
/// this is exactly the set of distinct members.
pub fn build_y1(cp: &CanonicalPaths, x: &HomotopyBase) -> Result<Vec<Member>> {
    let d = cp.d;
    let mut out = Vec::new();
    for (k, m) in x.members.iter().enumerate() {
        for l in 0..d.lambda.len() {
            for &j in &d.star.j_ids {
                if check_conditions(d, l, m.path.start(), j).is_err() {
                    continue;
                }
                let img = phi_path(d, cp.q, l, &m.path, j).map_err(|e| match e {
                    Error::PreconditionViolated { clause, detail } => {
                        Error::Internal(format!("Y1 precondition ({clause}) failed after checking: {detail}"))
                    }
                    other => other,
                })?;
                let label = format!("X{k},lambda={},j={}", l + 1, d.star.label(j));
                out.push(closed(img, Provenance::Y1, label)?);
            }
        }
    }
    Ok(out)
}

/// `𝕐_y = (D_y⁻¹ · y) ∘ (y · D*_y)` for every y in W.
pub fn build_y2(cp: &CanonicalPaths) -> Result<Vec<Member>> {
    cp.w
        .iter()
        .map(|(y, inv)| {
            let path = inv.d.inverse().right_act(y).then(&inv.d_star.left_act(y))?;
            closed(path, Provenance::Y2, format!("y={}", cp.q.alphabet().format_word(y)))
        })
        .collect()
}

/// Indices reachable from η under the letter actions of every ψ(b).
pub fn reachable_j(cp: &CanonicalPaths) -> Vec<usize> {
    let d = cp.d;
    let mut seen = vec![false; d.star.len()];
    seen[d.star.eta] = true;
    let mut stack = vec![d.star.eta];
    while let Some(i) = stack.pop() {
        for psi in &d.psi_base {
            if let Some(k) = d.star.act_word(psi, i) {
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    (0..d.star.len()).filter(|&i| seen[i]).collect()
}

/// One member per nontrivial relation, direction, and reachable index:
/// `Λ'_x⁻¹ ∘ A ∘ Λ'_z ∘ (φ_ω(π(z))·D_y⁻¹) ∘ ℚ⁻¹ ∘ (φ_ω(π(x))·D_y)` where A
/// runs from x to z and ℚ = φ(1, κ(P[u,v]^ε, j))·ŷ.
pub fn build_y3(cp: &CanonicalPaths) -> Result<Vec<Member>> {
    let d = cp.d;
    let q = cp.q;
    let mut out = Vec::new();
    for j in reachable_j(cp) {
        let y = d.phi(0, &d.kappa(&d.h, j)?)?;
        let inv = cp
            .inverse_of(&y)
            .ok_or_else(|| Error::Internal(format!("y = {} is missing from W", q.alphabet().format_word(&y))))?;
        for id in 0..q.relations.len() {
            for sign in [Sign::Pos, Sign::Neg] {
                let a = DGEdge::elementary(id, sign);
                let (x, z) = a.endpoints(&q.presentation);
                let puv = match sign {
                    Sign::Pos => cp.p_uv[id].clone(),
                    Sign::Neg => cp.p_uv[id].inverse(),
                };
                let big_q = phi_path(d, q, 0, &puv, j)?.right_act(&inv.hat);
                let parts = [
                    cp.lambda_prime(&x)?.inverse(),
                    DGPath::edge(&q.presentation, a),
                    cp.lambda_prime(&z)?,
                    inv.d.inverse().left_act(&d.phi_omega(&d.pi(&z))?),
                    big_q.inverse(),
                    inv.d.left_act(&d.phi_omega(&d.pi(&x))?),
                ];
                let label = format!("relation={id},sign={},j={}", sign, d.star.label(j));
                out.push(closed(compose(&parts)?, Provenance::Y3, label)?);
            }
        }
    }
    Ok(out)
}

/// Y1 ∪ Y2 ∪ Y3 as one base over ⟨B|U⟩.
pub fn group_base(cp: &CanonicalPaths, x: &HomotopyBase) -> Result<HomotopyBase> {
    let mut members = build_y1(cp, x)?;
    members.extend(build_y2(cp)?);
    members.extend(build_y3(cp)?);
    Ok(HomotopyBase { over: Over::Group, members })
}

/// Convenience for checking that a vertex is one of the words W.
pub fn in_w(cp: &CanonicalPaths, y: &Word) -> bool {
    cp.w.contains_key(y)
}
