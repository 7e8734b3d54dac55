//! Fixed derivations used by the homotopy base construction: P[b], P[u,v],
//! P[w], θ, Λ_w, and the inverse words and paths D_y, D*_y.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::engine::Limits;
use crate::error::{Error, Result};
use crate::grouptools::{enumerate_group, FiniteGroupTable};
use crate::schutz::{SchutzData, SchutzPresentation};
use crate::squier::graph::{arrow_down, compose, DGEdge, DGPath};
use crate::squier::phi::phi_eta;
use crate::squier::search::{path_search, PathCaps};
use crate::words::{Sign, Word};

/// Elements allowed when enumerating the presented group.
pub const GROUP_CAP: usize = 10_000;

pub struct CanonicalPaths<'a> {
    pub d: &'a SchutzData<'a>,
    pub q: &'a SchutzPresentation,
    pub caps: PathCaps,
    pub group: FiniteGroupTable,
    /// `p_b[b]` runs from π(b)h to hψ(b).
    pub p_b: Vec<DGPath>,
    /// `p_uv[id]` runs from π(u)h to π(v)h for the relation `id` of 𝒬.
    pub p_uv: Vec<DGPath>,
    /// W with, for each member, its index j, ŷ, D_y and D*_y.
    pub w: BTreeMap<Word, Inverse>,
    memo: RefCell<HashMap<Word, DGPath>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inverse {
    pub j: usize,
    pub hat: Word,
    /// from y·ŷ to the empty word
    pub d: DGPath,
    /// from ŷ·y to the empty word
    pub d_star: DGPath,
}

fn named(e: Error, what: &str) -> Error {
    match e {
        Error::SearchExhausted { what: inner } => Error::SearchExhausted { what: format!("{what}: {inner}") },
        other => other,
    }
}

impl<'a> CanonicalPaths<'a> {
    pub fn build(d: &'a SchutzData<'a>, q: &'a SchutzPresentation, caps: PathCaps) -> Result<Self> {
        let group = enumerate_group(&q.presentation, Limits::default(), GROUP_CAP)?;

        let mut p_b = Vec::with_capacity(d.generators.len());
        for b in 0..d.generators.len() {
            let from = d.pi_base[b].concat(&d.h);
            let to = d.h.concat(&d.psi_base[b]);
            let path = path_search(d.pres, &from, &to, caps)
                .map_err(|e| named(e, &format!("P[{}]", d.b_alphabet.name(b as u32))))?;
            p_b.push(path);
        }

        let mut p_uv = Vec::with_capacity(q.relations.len());
        for (id, r) in q.relations.iter().enumerate() {
            let from = d.pi(&r.lhs).concat(&d.h);
            let to = d.pi(&r.rhs).concat(&d.h);
            let path = path_search(d.pres, &from, &to, caps).map_err(|e| named(e, &format!("P[u,v] for relation {id}")))?;
            p_uv.push(path);
        }

        let mut w = BTreeMap::new();
        for &j in &d.star.j_ids {
            if d.star.act_word(&d.h, j).is_none() {
                continue;
            }
            let y = d.phi(0, &d.kappa(&d.h, j)?)?;
            if w.contains_key(&y) {
                continue;
            }
            let hat = group.inverse_word(&y);
            let label = q.alphabet().format_word(&y);
            let dp = path_search(&q.presentation, &y.concat(&hat), &Word::empty(), caps)
                .map_err(|e| named(e, &format!("D_y for y = {label}")))?;
            let ds = path_search(&q.presentation, &hat.concat(&y), &Word::empty(), caps)
                .map_err(|e| named(e, &format!("D*_y for y = {label}")))?;
            w.insert(y, Inverse { j, hat, d: dp, d_star: ds });
        }

        Ok(CanonicalPaths { d, q, caps, group, p_b, p_uv, w, memo: RefCell::new(HashMap::new()) })
    }

    /// `P[w]` from π(w)h to hψ(w), built letter by letter from the left.
    pub fn p_word(&self, w: &Word) -> DGPath {
        if let Some(p) = self.memo.borrow().get(w) {
            return p.clone();
        }
        let path = match w.letters().split_last() {
            None => DGPath::empty(self.d.h.clone()),
            Some((&b, rest)) => {
                let prefix = Word(rest.to_vec());
                let first = self.p_b[b as usize].left_act(&self.d.pi(&prefix));
                let second = self.p_word(&prefix).right_act(&self.d.psi_base[b as usize]);
                first.then(&second).expect("P[w'] and P[b] pieces meet at π(w')hψ(b)")
            }
        };
        self.memo.borrow_mut().insert(w.clone(), path.clone());
        path
    }

    /// θ of an edge of Γ(𝒬): a path of Γ(𝒫) from π(ιE)h to π(τE)h.
    pub fn theta(&self, e: &DGEdge) -> Result<DGPath> {
        if e.sign == Sign::Neg {
            return Ok(self.theta(&e.inverse())?.inverse());
        }
        let r = self.q.relations.get(e.rule).ok_or_else(|| Error::Internal(format!("unknown relation {}", e.rule)))?;
        let pw2 = self.p_word(&e.right);
        let parts = [
            pw2.left_act(&self.d.pi(&r.lhs)),
            self.p_uv[e.rule].right_act(&self.d.psi(&e.right)),
            pw2.inverse().left_act(&self.d.pi(&r.rhs)),
        ];
        Ok(compose(&parts)?.left_act(&self.d.pi(&e.left)))
    }

    /// The edge `b = φ_ω(π(b))` as a path (empty when that relation is
    /// trivial).
    fn bb(&self, b: u32) -> Result<DGPath> {
        let from = Word::letter(b);
        let to = self.d.phi_omega(&self.d.pi_base[b as usize])?;
        self.relation_path(&from, &to)
    }

    /// The edge `1 = φ(1, κ(h, η))` as a path.
    fn hh(&self) -> Result<DGPath> {
        let to = self.d.phi(0, &self.d.kappa(&self.d.h, self.d.star.eta)?)?;
        self.relation_path(&Word::empty(), &to)
    }

    fn relation_path(&self, from: &Word, to: &Word) -> Result<DGPath> {
        if from == to {
            return Ok(DGPath::empty(from.clone()));
        }
        let (id, sign) = self.q.find(from, to).ok_or_else(|| {
            Error::Internal(format!(
                "missing relation {} = {}",
                self.q.alphabet().format_word(from),
                self.q.alphabet().format_word(to)
            ))
        })?;
        Ok(DGPath::edge(&self.q.presentation, DGEdge::elementary(id, sign)))
    }

    /// `Λ'_w`, from w to φ_ω(π(w)).
    pub fn lambda_prime(&self, w: &Word) -> Result<DGPath> {
        let mut acc = DGPath::empty(Word::empty());
        for &b in w.letters() {
            acc = arrow_down(&acc, &self.bb(b)?);
        }
        Ok(acc)
    }

    /// `Λ_w = Λ'_w ↓ ℍ`, from w to φ(1, κ(π(w)h, η)).
    pub fn lambda_path(&self, w: &Word) -> Result<DGPath> {
        Ok(arrow_down(&self.lambda_prime(w)?, &self.hh()?))
    }

    /// The closed path `E ∘ Λ_τE ∘ φ(θ(E))⁻¹ ∘ Λ_ιE⁻¹`.
    pub fn z_path(&self, e: &DGEdge) -> Result<DGPath> {
        let (iota, tau) = e.endpoints(&self.q.presentation);
        let theta = self.theta(e)?;
        let parts = [
            DGPath::edge(&self.q.presentation, e.clone()),
            self.lambda_path(&tau)?,
            phi_eta(self.d, self.q, &theta)?.inverse(),
            self.lambda_path(&iota)?.inverse(),
        ];
        compose(&parts)
    }

    pub fn inverse_of(&self, y: &Word) -> Option<&Inverse> {
        self.w.get(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schutz::tests::monoid;
    use crate::schutz::{build_presentation, choose_representatives};

    fn a(n: usize) -> Word {
        Word(vec![0; n])
    }

    fn words_up_to(letters: u32, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..n {
            let next: Vec<Word> =
                frontier.iter().flat_map(|w| (0..letters).map(move |c| w.concat(&Word::letter(c)))).collect();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn cyclic_example() {
        let m = monoid("alphabet: a\nrule: aaaa = a");
        let h = m.h_class_of(&a(1));
        let d = choose_representatives(&m, &m.presentation, h, &Word::empty()).unwrap();
        let q = build_presentation(&d).unwrap();
        let cp = CanonicalPaths::build(&d, &q, PathCaps::default()).unwrap();
        let pres = &q.presentation;
        let b = |n: usize| Word(vec![0; n]);

        assert_eq!(cp.w.keys().cloned().collect::<Vec<_>>(), vec![b(0), b(1)]);
        assert_eq!(cp.w[&b(1)].hat, b(2));
        assert_eq!(cp.w[&b(0)].hat, b(0));

        let (rel, sign) = q.find(&b(4), &b(1)).unwrap();
        let e = DGEdge::new(Word::empty(), rel, sign, Word::empty());
        let t = cp.theta(&e).unwrap();
        assert_eq!((t.start(), t.end()), (&a(5), &a(2)));
        assert_eq!(t, cp.p_uv[rel]);

        let lb = cp.lambda_path(&b(1)).unwrap();
        assert_eq!(lb.start(), &b(1));
        assert_eq!(lb.end(), &d.phi(0, &d.kappa(&a(2), d.star.eta).unwrap()).unwrap());
        assert!(cp.lambda_path(&Word::empty()).unwrap().len() <= 1);

        for y in cp.w.keys() {
            let inv = &cp.w[y];
            assert_eq!(inv.d.start(), &y.concat(&inv.hat));
            assert!(inv.d.end().is_empty());
            inv.d.validate(pres).unwrap();
            inv.d_star.validate(pres).unwrap();
        }
    }

    #[test]
    fn endpoint_audits() {
        for text in [
            "alphabet: a\nrule: aaaa = a",
            "alphabet: a\nrule: aaaaaa = aaa",
            "alphabet: a b\nrule: ab = 1\nrule: ba = 1\nrule: aaaa = 1",
            "alphabet: a t\nrule: tt = 1\nrule: ta = at\nrule: aaa = aa",
        ] {
            let m = monoid(text);
            for h in 0..m.green.h_classes.len() {
                let d = choose_representatives(&m, &m.presentation, h, &Word::empty()).unwrap();
                let q = build_presentation(&d).unwrap();
                let cp = CanonicalPaths::build(&d, &q, PathCaps::default()).unwrap();
                let nb = d.b_alphabet.len() as u32;
                let words = words_up_to(nb, if nb > 2 { 2 } else { 3 });
                for w in &words {
                    let pw = cp.p_word(w);
                    assert_eq!((pw.start(), pw.end()), (&d.pi(w).concat(&d.h), &d.h.concat(&d.psi(w))));
                    pw.validate(d.pres).unwrap();
                    let lw = cp.lambda_path(w).unwrap();
                    lw.validate(&q.presentation).unwrap();
                    let want = d.phi(0, &d.kappa(&d.pi(w).concat(&d.h), d.star.eta).unwrap()).unwrap();
                    assert_eq!((lw.start(), lw.end()), (w, &want));
                }
                for w1 in &words {
                    for w2 in &words {
                        if w1.len() + w2.len() > 3 {
                            continue;
                        }
                        for id in 0..q.relations.len() {
                            for sign in [Sign::Pos, Sign::Neg] {
                                let e = DGEdge::new(w1.clone(), id, sign, w2.clone());
                                let (iota, tau) = e.endpoints(&q.presentation);
                                let t = cp.theta(&e).unwrap();
                                t.validate(d.pres).unwrap();
                                assert_eq!(t.start(), &d.pi(&iota).concat(&d.h));
                                assert_eq!(t.end(), &d.pi(&tau).concat(&d.h));
                                let z = cp.z_path(&e).unwrap();
                                assert!(z.is_closed());
                                assert_eq!(z.start(), &iota);
                                z.validate(&q.presentation).unwrap();
                            }
                        }
                    }
                }
            }
        }
    }
}
