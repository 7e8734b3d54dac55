//! Edges and paths of the derivation graph of a presentation.

use crate::error::{Error, Result};
use crate::words::{apply_rule_at, Presentation, Sign, Word};

/// An application of rule `rule` in direction `sign` inside the context
/// `left · _ · right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DGEdge {
    pub left: Word,
    pub rule: usize,
    pub sign: Sign,
    pub right: Word,
}

impl DGEdge {
    pub fn new(left: Word, rule: usize, sign: Sign, right: Word) -> Self {
        DGEdge { left, rule, sign, right }
    }

    /// An edge with empty context.
    pub fn elementary(rule: usize, sign: Sign) -> Self {
        DGEdge { left: Word::empty(), rule, sign, right: Word::empty() }
    }

    pub fn inverse(&self) -> Self {
        DGEdge { sign: self.sign.flip(), ..self.clone() }
    }

    /// `l · self · r`
    pub fn act(&self, l: &Word, r: &Word) -> Self {
        DGEdge { left: l.concat(&self.left), rule: self.rule, sign: self.sign, right: self.right.concat(r) }
    }

    pub fn endpoints(&self, pres: &Presentation) -> (Word, Word) {
        let (from, to) = pres.rule(self.rule).sides(self.sign);
        (from.wrap(&self.left, &self.right), to.wrap(&self.left, &self.right))
    }

    fn is_inverse_of(&self, other: &DGEdge) -> bool {
        self.rule == other.rule && self.sign != other.sign && self.left == other.left && self.right == other.right
    }
}

pub fn edge_endpoints(e: &DGEdge, pres: &Presentation) -> (Word, Word) {
    e.endpoints(pres)
}

/// A sequence of composable edges starting at `start`. The terminal vertex
/// is cached so that paths can be composed and acted on without consulting
/// the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DGPath {
    start: Word,
    end: Word,
    edges: Vec<DGEdge>,
}

impl DGPath {
    pub fn empty(v: Word) -> Self {
        DGPath { start: v.clone(), end: v, edges: Vec::new() }
    }

    pub fn edge(pres: &Presentation, e: DGEdge) -> Self {
        let (start, end) = e.endpoints(pres);
        DGPath { start, end, edges: vec![e] }
    }

    /// Builds and validates a path.
    pub fn from_edges(pres: &Presentation, start: Word, edges: Vec<DGEdge>) -> Result<Self> {
        let mut end = start.clone();
        for (k, e) in edges.iter().enumerate() {
            let rule = pres
                .rules()
                .get(e.rule)
                .ok_or_else(|| Error::BrokenPath(format!("edge {k} names unknown rule {}", e.rule)))?;
            let (from, _) = rule.sides(e.sign);
            let (iota, tau) = e.endpoints(pres);
            if iota != end {
                return Err(Error::BrokenPath(format!("edge {k} does not start where edge {} ends", k as i64 - 1)));
            }
            // Literal occurrence check of the rewritten side.
            debug_assert!(iota.occurs_at(from, e.left.len()));
            end = tau;
        }
        Ok(DGPath { start, end, edges })
    }

    pub fn start(&self) -> &Word {
        &self.start
    }

    pub fn end(&self) -> &Word {
        &self.end
    }

    pub fn edges(&self) -> &[DGEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    /// `self ∘ other`: traverse `self`, then `other`.
    pub fn then(&self, other: &DGPath) -> Result<DGPath> {
        if self.end != other.start {
            return Err(Error::BrokenPath(format!(
                "path ending at a word of length {} composed with one starting at a word of length {}",
                self.end.len(),
                other.start.len()
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(DGPath { start: self.start.clone(), end: other.end.clone(), edges })
    }

    /// Appends one edge, checking that it starts at the current end.
    pub fn push(&mut self, pres: &Presentation, e: DGEdge) -> Result<()> {
        let (iota, tau) = e.endpoints(pres);
        if iota != self.end {
            return Err(Error::BrokenPath("appended edge does not start at the path end".into()));
        }
        self.end = tau;
        self.edges.push(e);
        Ok(())
    }

    pub fn inverse(&self) -> DGPath {
        DGPath {
            start: self.end.clone(),
            end: self.start.clone(),
            edges: self.edges.iter().rev().map(DGEdge::inverse).collect(),
        }
    }

    /// `l · self · r`
    pub fn act(&self, l: &Word, r: &Word) -> DGPath {
        DGPath {
            start: self.start.wrap(l, r),
            end: self.end.wrap(l, r),
            edges: self.edges.iter().map(|e| e.act(l, r)).collect(),
        }
    }

    pub fn left_act(&self, l: &Word) -> DGPath {
        self.act(l, &Word::empty())
    }

    pub fn right_act(&self, r: &Word) -> DGPath {
        self.act(&Word::empty(), r)
    }

    /// Checks every edge against the presentation: the rewritten side must
    /// literally occur and consecutive endpoints must agree.
    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        let mut cur = self.start.clone();
        for (k, e) in self.edges.iter().enumerate() {
            let rule = pres
                .rules()
                .get(e.rule)
                .ok_or_else(|| Error::BrokenPath(format!("edge {k} names unknown rule {}", e.rule)))?;
            let (from, _) = rule.sides(e.sign);
            if !cur.occurs_at(from, e.left.len())
                || cur.len() != e.left.len() + from.len() + e.right.len()
                || cur.prefix(e.left.len()) != e.left
                || cur.suffix_from(e.left.len() + from.len()) != e.right
            {
                return Err(Error::BrokenPath(format!("edge {k} does not apply to its start vertex")));
            }
            cur = apply_rule_at(&cur, rule, e.sign, e.left.len())?;
        }
        if cur != self.end {
            return Err(Error::BrokenPath("cached end vertex is stale".into()));
        }
        Ok(())
    }

    /// Cancels adjacent pairs `e ∘ e⁻¹`.
    pub fn normalized(&self) -> DGPath {
        let mut stack: Vec<DGEdge> = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            match stack.last() {
                Some(top) if top.is_inverse_of(e) => {
                    stack.pop();
                }
                _ => stack.push(e.clone()),
            }
        }
        DGPath { start: self.start.clone(), end: self.end.clone(), edges: stack }
    }
}

/// Composes a sequence of paths left to right.
pub fn compose(paths: &[DGPath]) -> Result<DGPath> {
    let mut it = paths.iter();
    let first = it.next().ok_or_else(|| Error::Internal("empty composition".into()))?.clone();
    it.try_fold(first, |acc, p| acc.then(p))
}

/// The 2-cell boundary of two independent rewrites side by side.
pub fn square(pres: &Presentation, e1: &DGEdge, e2: &DGEdge) -> DGPath {
    let (i1, t1) = e1.endpoints(pres);
    let (i2, t2) = e2.endpoints(pres);
    let p1 = DGPath::edge(pres, e1.clone());
    let p2 = DGPath::edge(pres, e2.clone());
    let parts = [p1.right_act(&i2), p2.left_act(&t1), p1.inverse().right_act(&t2), p2.inverse().left_act(&i1)];
    compose(&parts).expect("square sides always compose")
}

/// `P ↓ Q = (P · ιQ) ∘ (τP · Q)`
pub fn arrow_down(p: &DGPath, q: &DGPath) -> DGPath {
    p.right_act(q.start()).then(&q.left_act(p.end())).expect("arrow composition is always defined")
}

/// `P ↑ Q = (ιP · Q) ∘ (P · τQ)`
pub fn arrow_up(p: &DGPath, q: &DGPath) -> DGPath {
    q.left_act(p.start()).then(&p.right_act(q.end())).expect("arrow composition is always defined")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;
    use proptest::prelude::*;

    fn pres() -> Presentation {
        parse_presentation("alphabet: a b\nrule: aaaa = a\nrule: ab = b").unwrap()
    }

    fn a(n: usize) -> Word {
        Word(vec![0; n])
    }

    #[test]
    fn endpoint_examples() {
        let p = pres();
        let e = DGEdge::elementary(0, Sign::Pos);
        assert_eq!(e.endpoints(&p), (a(4), a(1)));
        let e = DGEdge::new(a(1), 0, Sign::Pos, a(1));
        assert_eq!(e.endpoints(&p), (a(6), a(3)));
        assert_eq!(e.inverse().endpoints(&p), (a(3), a(6)));
    }

    #[test]
    fn action_examples() {
        let p = pres();
        let path = DGPath::edge(&p, DGEdge::elementary(0, Sign::Pos));
        assert_eq!(path.act(&Word::empty(), &Word::empty()), path);
        let acted = path.left_act(&a(1));
        assert_eq!(acted.edges()[0], DGEdge::new(a(1), 0, Sign::Pos, Word::empty()));
        acted.validate(&p).unwrap();

        let two = path.right_act(&a(3)).then(&DGPath::edge(&p, DGEdge::elementary(0, Sign::Pos))).unwrap();
        let lhs = two.act(&a(1), &a(2));
        let rhs = path.right_act(&a(3)).act(&a(1), &a(2)).then(&DGPath::edge(&p, DGEdge::elementary(0, Sign::Pos)).act(&a(1), &a(2))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_examples() {
        let p = pres();
        let e1 = DGEdge::elementary(0, Sign::Pos);
        let e2 = DGEdge::elementary(1, Sign::Pos);
        let sq = square(&p, &e1, &e2);
        assert_eq!(sq.len(), 4);
        assert!(sq.is_closed());
        assert_eq!(sq.start(), &a(4).concat(&Word(vec![0, 1])));
        sq.validate(&p).unwrap();
        assert!(square(&p, &e1, &e1).is_closed());
    }

    #[test]
    fn arrow_units_and_endpoints() {
        let p = pres();
        let e = DGPath::edge(&p, DGEdge::elementary(0, Sign::Pos));
        let v = Word(vec![1, 0]);
        assert_eq!(arrow_down(&e, &DGPath::empty(v.clone())), e.right_act(&v));
        assert_eq!(arrow_down(&DGPath::empty(v.clone()), &e), e.left_act(&v));
        let f = DGPath::edge(&p, DGEdge::elementary(1, Sign::Pos));
        let d = arrow_down(&e, &f);
        assert_eq!(d.end(), &e.end().concat(f.end()));
        assert_eq!(d.start(), &e.start().concat(f.start()));
        d.validate(&p).unwrap();
    }

    #[test]
    fn broken_composition_is_rejected() {
        let p = pres();
        let e = DGPath::edge(&p, DGEdge::elementary(0, Sign::Pos));
        assert!(matches!(e.then(&e), Err(Error::BrokenPath(_))));
        assert!(DGPath::from_edges(&p, a(3), vec![DGEdge::elementary(0, Sign::Pos)]).is_err());
    }

    #[test]
    fn normalizer_cancels_backtracking() {
        let p = pres();
        let e = DGPath::edge(&p, DGEdge::elementary(0, Sign::Pos));
        let there_and_back = e.then(&e.inverse()).unwrap();
        assert!(there_and_back.normalized().is_empty());
        assert_eq!(there_and_back.normalized().start(), &a(4));
    }

    fn arb_path() -> impl Strategy<Value = DGPath> {
        // Random walks in the derivation graph starting from a random word.
        (prop::collection::vec(0u32..2, 0..6), prop::collection::vec((0usize..16, 0usize..2, any::<bool>()), 0..5))
            .prop_map(|(start, moves)| {
                let p = pres();
                let mut path = DGPath::empty(Word(start));
                for (pos_seed, rule, pos_sign) in moves {
                    let sign = if pos_sign { Sign::Pos } else { Sign::Neg };
                    let (from, _) = p.rule(rule).sides(sign);
                    let hits = path.end().occurrences(from);
                    if hits.is_empty() {
                        continue;
                    }
                    let pos = hits[pos_seed % hits.len()];
                    let end = path.end().clone();
                    let e = DGEdge::new(end.prefix(pos), rule, sign, end.suffix_from(pos + from.len()));
                    path.push(&p, e).unwrap();
                }
                path
            })
    }

    proptest! {
        #[test]
        fn arrow_calculus(pp in arb_path(), qq in arb_path(), aa in arb_path()) {
            let p = pres();
            // (iv): (P↓Q)⁻¹ = P⁻¹↑Q⁻¹
            prop_assert_eq!(arrow_down(&pp, &qq).inverse(), arrow_up(&pp.inverse(), &qq.inverse()));
            // (i): P↓(A∘B) = (P↓A)∘(τP·B), with B running back along A.
            let b = aa.inverse();
            let ab = aa.then(&b).unwrap();
            let lhs = arrow_down(&pp, &ab);
            let rhs = arrow_down(&pp, &aa).then(&b.left_act(pp.end())).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            // (ii): (A∘B)↓P = (A·ιP)∘(B↓P)
            let lhs = arrow_down(&ab, &pp);
            let rhs = aa.right_act(pp.start()).then(&arrow_down(&b, &pp)).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            // (iii): P↓(A∘B)↓Q = [(P↓A)·ιQ]∘[τP·(B↓Q)]
            let lhs = arrow_down(&arrow_down(&pp, &ab), &qq);
            let rhs = arrow_down(&pp, &aa).right_act(qq.start()).then(&arrow_down(&b, &qq).left_act(pp.end())).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            // associativity of ↓
            prop_assert_eq!(arrow_down(&arrow_down(&pp, &qq), &aa), arrow_down(&pp, &arrow_down(&qq, &aa)));
            for path in [&lhs, &arrow_up(&pp, &qq)] {
                prop_assert!(path.validate(&p).is_ok());
            }
        }

        #[test]
        fn inverse_is_an_involution(pp in arb_path()) {
            prop_assert_eq!(pp.inverse().inverse(), pp.clone());
            let loop_ = pp.then(&pp.inverse()).unwrap();
            prop_assert!(loop_.is_closed());
            prop_assert!(loop_.normalized().is_empty());
        }
    }
}
