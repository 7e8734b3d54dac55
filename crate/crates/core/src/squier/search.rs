//! Breadth-first search for derivations between equal words.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::squier::graph::{DGEdge, DGPath};
use crate::words::{apply_rule_at, Presentation, Sign, Word};

pub const DEFAULT_MAX_NODES: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathCaps {
    /// Longest intermediate word allowed. `None` means the longer endpoint
    /// plus the longest rule side.
    pub max_len: Option<usize>,
    pub max_nodes: usize,
}

impl Default for PathCaps {
    fn default() -> Self {
        PathCaps { max_len: None, max_nodes: DEFAULT_MAX_NODES }
    }
}

impl PathCaps {
    pub fn with_nodes(max_nodes: usize) -> Self {
        PathCaps { max_len: None, max_nodes }
    }
}

/// Every single rule application out of `w`, ordered by position, then
/// rule, then sign.
pub fn neighbours(pres: &Presentation, w: &Word) -> Vec<(DGEdge, Word)> {
    let mut out = Vec::new();
    for pos in 0..=w.len() {
        for rule in pres.rules() {
            for sign in [Sign::Pos, Sign::Neg] {
                let (from, _) = rule.sides(sign);
                if w.occurs_at(from, pos) {
                    let next = apply_rule_at(w, rule, sign, pos).expect("occurrence checked");
                    let e = DGEdge::new(w.prefix(pos), rule.id, sign, w.suffix_from(pos + from.len()));
                    out.push((e, next));
                }
            }
        }
    }
    out
}

/// A shortest path from `from` to `to` in the derivation graph, with ties
/// broken by the order of [`neighbours`].
pub fn path_search(pres: &Presentation, from: &Word, to: &Word, caps: PathCaps) -> Result<DGPath> {
    if from == to {
        return Ok(DGPath::empty(from.clone()));
    }
    let max_len = caps.max_len.unwrap_or(from.len().max(to.len()) + pres.max_side_len());
    let mut parent: HashMap<Word, (Word, DGEdge)> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    let mut seen = 1usize;
    let exhausted = |why: &str| Error::SearchExhausted {
        what: format!(
            "no derivation from a word of length {} to one of length {} ({why})",
            from.len(),
            to.len()
        ),
    };
    parent.insert(from.clone(), (from.clone(), DGEdge::elementary(usize::MAX, Sign::Pos)));
    while let Some(w) = queue.pop_front() {
        for (e, next) in neighbours(pres, &w) {
            if next.len() > max_len || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), (w.clone(), e));
            if next == *to {
                let mut edges = Vec::new();
                let mut cur = next;
                while cur != *from {
                    let (prev, e) = parent.remove(&cur).expect("every reached word has a parent");
                    edges.push(e);
                    cur = prev;
                }
                edges.reverse();
                return DGPath::from_edges(pres, from.clone(), edges);
            }
            seen += 1;
            if seen > caps.max_nodes {
                return Err(exhausted(&format!("node cap {} hit", caps.max_nodes)));
            }
            queue.push_back(next);
        }
    }
    Err(exhausted(&format!("every word up to length {max_len} visited")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;

    fn a(n: usize) -> Word {
        Word(vec![0; n])
    }

    #[test]
    fn search_examples() {
        let p = parse_presentation("alphabet: a\nrule: aaaa = a").unwrap();
        let one = path_search(&p, &a(4), &a(1), PathCaps::default()).unwrap();
        assert_eq!(one.edges(), &[DGEdge::elementary(0, Sign::Pos)]);

        let two = path_search(&p, &a(7), &a(1), PathCaps::default()).unwrap();
        assert_eq!(two.len(), 2);
        two.validate(&p).unwrap();
        assert_eq!(two.edges()[0], DGEdge::new(Word::empty(), 0, Sign::Pos, a(3)));

        assert!(matches!(path_search(&p, &a(2), &a(1), PathCaps::default()), Err(Error::SearchExhausted { .. })));
        assert!(path_search(&p, &a(3), &a(3), PathCaps::default()).unwrap().is_empty());
    }

    #[test]
    fn upward_moves_are_found() {
        let p = parse_presentation("alphabet: a\nrule: aaaa = a").unwrap();
        let up = path_search(&p, &a(1), &a(7), PathCaps::default()).unwrap();
        assert_eq!(up.len(), 2);
        assert_eq!(up.end(), &a(7));
    }

    #[test]
    fn node_cap_is_reported() {
        let p = parse_presentation("alphabet: a b\nrule: ab = ba").unwrap();
        let from = Word(vec![0, 0, 0, 1, 1, 1]);
        let to = Word(vec![1, 1, 1, 0, 0, 0]);
        let err = path_search(&p, &from, &to, PathCaps::with_nodes(3)).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { .. }));
        assert_eq!(path_search(&p, &from, &to, PathCaps::default()).unwrap().len(), 9);
    }

    #[test]
    fn results_are_deterministic() {
        let p = parse_presentation("alphabet: a b\nrule: ab = ba\nrule: aa = 1").unwrap();
        let from = Word(vec![0, 1, 0, 1]);
        let to = Word(vec![1, 1]);
        let x = path_search(&p, &from, &to, PathCaps::default()).unwrap();
        let y = path_search(&p, &from, &to, PathCaps::default()).unwrap();
        assert_eq!(x, y);
        x.validate(&p).unwrap();
    }
}
