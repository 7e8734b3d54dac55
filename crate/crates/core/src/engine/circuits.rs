//! Critical-peak circuits of a complete system.

use crate::engine::rewriting::{overlaps, CompleteSystem, Overlap};
use crate::error::Result;
use crate::squier::graph::{DGEdge, DGPath};
use crate::words::{Sign, Word};

/// Two rewrites out of one word, each followed by its reduction to the
/// common normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalCircuit {
    pub peak: (DGEdge, DGEdge),
    pub resolution: (DGPath, DGPath),
}

impl CriticalCircuit {
    /// The closed path `branch₁ ∘ branch₂⁻¹` based at the peak word.
    pub fn path(&self, cs: &CompleteSystem) -> Result<DGPath> {
        let pres = cs.presentation();
        let first = DGPath::edge(pres, self.peak.0.clone()).then(&self.resolution.0)?;
        let second = DGPath::edge(pres, self.peak.1.clone()).then(&self.resolution.1)?;
        first.then(&second.inverse())
    }
}

/// The reduction of `w` to normal form as a path of positive edges.
pub fn reduction_path(cs: &CompleteSystem, w: &Word) -> DGPath {
    let pres = cs.presentation();
    let (_, steps) = cs.reduce_traced(w);
    let mut path = DGPath::empty(w.clone());
    for s in steps {
        let cur = path.end().clone();
        let n = pres.rule(s.rule).lhs.len();
        let e = DGEdge::new(cur.prefix(s.position), s.rule, Sign::Pos, cur.suffix_from(s.position + n));
        path.push(pres, e).expect("traced step applies to the current word");
    }
    path
}

/// One circuit per overlap of left sides, for every ordered pair of rules
/// (a rule paired with itself included).
pub fn critical_circuits(cs: &CompleteSystem) -> Vec<CriticalCircuit> {
    let rules = cs.rules();
    let mut out = Vec::new();
    for r1 in rules {
        for r2 in rules {
            let (l1, l2) = (&r1.lhs, &r2.lhs);
            for o in overlaps(l1, l2, r1.id == r2.id) {
                let (e1, e2) = match o {
                    Overlap::Proper { k } => (
                        DGEdge::new(Word::empty(), r1.id, Sign::Pos, l2.suffix_from(k)),
                        DGEdge::new(l1.prefix(l1.len() - k), r2.id, Sign::Pos, Word::empty()),
                    ),
                    Overlap::Inclusion { position } => (
                        DGEdge::elementary(r1.id, Sign::Pos),
                        DGEdge::new(l1.prefix(position), r2.id, Sign::Pos, l1.suffix_from(position + l2.len())),
                    ),
                };
                let pres = cs.presentation();
                let b1 = reduction_path(cs, &e1.endpoints(pres).1);
                let b2 = reduction_path(cs, &e2.endpoints(pres).1);
                out.push(CriticalCircuit { peak: (e1, e2), resolution: (b1, b2) });
            }
        }
    }
    out
}
