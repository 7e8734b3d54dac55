//! Representatives, the rewriting maps between the two alphabets, and the
//! presentation ⟨B|U⟩ of the Schützenberger group of an H-class.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::engine::{knuth_bendix, CompleteSystem, Limits, MonoidUniverse};
use crate::error::{Error, Result};
use crate::green::{compute_green, lambda_action, star_action, GreenStructure, LambdaAction, StarAction};
use crate::words::{Alphabet, Letter, Presentation, Sign, Word};

/// A finitely presented monoid together with everything computed from it.
#[derive(Debug, Clone)]
pub struct Monoid {
    pub presentation: Presentation,
    pub system: CompleteSystem,
    pub universe: MonoidUniverse,
    pub green: GreenStructure,
}

impl Monoid {
    pub fn new(presentation: Presentation, limits: Limits, max_elements: usize) -> Result<Self> {
        let system = knuth_bendix(&presentation, limits)?;
        let universe = crate::engine::enumerate_universe(&system, max_elements)?;
        let green = compute_green(&universe);
        Ok(Monoid { presentation, system, universe, green })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.presentation.alphabet
    }

    /// The H-class containing the element `w` represents.
    pub fn h_class_of(&self, w: &Word) -> usize {
        self.green.h_class_of[self.universe.element_of(w)]
    }
}

/// Shortlex-least `w` with `from · w` satisfying `goal`.
fn right_search(u: &MonoidUniverse, from: usize, goal: impl Fn(usize) -> bool) -> Option<Word> {
    if goal(from) {
        return Some(Word::empty());
    }
    let mut parent: HashMap<usize, (usize, Letter)> = HashMap::new();
    parent.insert(from, (from, 0));
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for a in u.alphabet().letters() {
            let y = u.right(x, a);
            if parent.contains_key(&y) {
                continue;
            }
            parent.insert(y, (x, a));
            if goal(y) {
                let mut letters = Vec::new();
                let mut cur = y;
                while cur != from {
                    let (p, l) = parent[&cur];
                    letters.push(l);
                    cur = p;
                }
                letters.reverse();
                return Some(Word(letters));
            }
            queue.push_back(y);
        }
    }
    None
}

/// Shortlex-least `w` with `w · source = target`. Left-multiplication
/// distances from `source` fix the length; letters are then chosen greedily
/// from the front, keeping the set of elements still able to finish.
fn left_search(u: &MonoidUniverse, source: usize, target: usize) -> Option<Word> {
    let n = u.len();
    let mut dist = vec![usize::MAX; n];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for a in u.alphabet().letters() {
            let y = u.left(a, x);
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let k = dist[target];
    if k == usize::MAX {
        return None;
    }
    let mut candidates = vec![false; n];
    candidates[target] = true;
    let mut letters = Vec::with_capacity(k);
    for m in 0..k {
        let want = k - m - 1;
        let layer: Vec<usize> = (0..n).filter(|&z| dist[z] == want).collect();
        let (c, next) = u.alphabet().letters().find_map(|c| {
            let next: Vec<usize> = layer.iter().copied().filter(|&z| candidates[u.left(c, z)]).collect();
            (!next.is_empty()).then_some((c, next))
        })?;
        letters.push(c);
        candidates = vec![false; n];
        for z in next {
            candidates[z] = true;
        }
    }
    Some(Word(letters))
}

/// A generator `b[λ,a]` of B: zero-based λ and the letter `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub lambda: usize,
    pub letter: Letter,
}

#[derive(Debug, Clone)]
pub struct SchutzData<'a> {
    pub monoid: &'a Monoid,
    /// The presentation whose rules feed the relation families.
    pub pres: &'a Presentation,
    pub h_class: usize,
    pub lambda: LambdaAction,
    pub star: StarAction,
    pub h: Word,
    pub e: Word,
    pub p: Vec<Word>,
    pub p_prime: Vec<Word>,
    /// `kappa_base[a][i]`, defined exactly where `a ∗ i ≠ 0`.
    pub kappa_base: Vec<Vec<Option<Word>>>,
    pub generators: Vec<Generator>,
    pub b_alphabet: Alphabet,
    pub pi_base: Vec<Word>,
    pub psi_base: Vec<Word>,
    gen_index: HashMap<Generator, Letter>,
    h_elem: usize,
}

/// Builds all representatives as shortlex-least words by breadth-first search.
pub fn choose_representatives<'a>(
    monoid: &'a Monoid,
    pres: &'a Presentation,
    h_class: usize,
    e: &Word,
) -> Result<SchutzData<'a>> {
    if pres.alphabet != *monoid.alphabet() {
        return Err(Error::Internal("presentation alphabet differs from the monoid's".into()));
    }
    let u = &monoid.universe;
    let g = &monoid.green;
    let lambda = lambda_action(u, g, h_class);
    let star = star_action(u, g, h_class, e)?;
    let h = star.h.clone();
    let h_elem = u.element_of(&h);
    let missing = |what: &str| Error::Internal(format!("no representative word for {what}"));

    let mut p = vec![Word::empty()];
    let mut p_prime = vec![Word::empty()];
    for l in 1..lambda.len() {
        let class = lambda.classes[l];
        let pl = right_search(u, h_elem, |y| g.h_class_of[y] == class).ok_or_else(|| missing("p"))?;
        let back = right_search(u, u.act_right(h_elem, &pl), |y| y == h_elem).ok_or_else(|| missing("p'"))?;
        p.push(pl);
        p_prime.push(back);
    }

    let kappa_base = u
        .alphabet()
        .letters()
        .map(|a| {
            (0..star.len())
                .map(|i| match star.act(a, i) {
                    None => Ok(None),
                    Some(k) => {
                        let goal = u.left(a, u.element_of(star.rep(i)));
                        right_search(u, u.element_of(star.rep(k)), |y| y == goal)
                            .map(Some)
                            .ok_or_else(|| missing("kappa"))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut generators = Vec::new();
    for l in 0..lambda.len() {
        for a in u.alphabet().letters() {
            if lambda.act(l, a).is_some() {
                generators.push(Generator { lambda: l, letter: a });
            }
        }
    }
    let names = generators
        .iter()
        .map(|b| format!("b[{},{}]", b.lambda + 1, u.alphabet().name(b.letter)))
        .collect();
    let b_alphabet = Alphabet::generated(names);
    let gen_index = generators.iter().enumerate().map(|(i, b)| (*b, i as Letter)).collect();

    let mut psi_base = Vec::with_capacity(generators.len());
    let mut pi_base = Vec::with_capacity(generators.len());
    for b in &generators {
        let next = lambda.act(b.lambda, b.letter).expect("generator has a defined action");
        let psi = Word::letter(b.letter).wrap(&p[b.lambda], &p_prime[next]);
        let target = u.act_right(h_elem, &psi);
        pi_base.push(left_search(u, h_elem, target).ok_or_else(|| missing("pi"))?);
        psi_base.push(psi);
    }

    Ok(SchutzData {
        monoid,
        pres,
        h_class,
        lambda,
        star,
        h,
        e: e.clone(),
        p,
        p_prime,
        kappa_base,
        generators,
        b_alphabet,
        pi_base,
        psi_base,
        gen_index,
        h_elem,
    })
}

impl<'a> SchutzData<'a> {
    pub fn universe(&self) -> &MonoidUniverse {
        &self.monoid.universe
    }

    pub fn green(&self) -> &GreenStructure {
        &self.monoid.green
    }

    pub fn h_element(&self) -> usize {
        self.h_elem
    }

    pub fn generator_letter(&self, lambda: usize, a: Letter) -> Option<Letter> {
        self.gen_index.get(&Generator { lambda, letter: a }).copied()
    }

    pub fn psi(&self, w: &Word) -> Word {
        Word(w.letters().iter().flat_map(|&b| self.psi_base[b as usize].letters().iter().copied()).collect())
    }

    pub fn pi(&self, w: &Word) -> Word {
        Word(w.letters().iter().flat_map(|&b| self.pi_base[b as usize].letters().iter().copied()).collect())
    }

    /// `φ(λ, w)`: one generator per letter, following the λ action.
    pub fn phi(&self, lambda: usize, w: &Word) -> Result<Word> {
        let mut out = Vec::with_capacity(w.len());
        let mut l = lambda;
        for (k, &a) in w.letters().iter().enumerate() {
            out.push(self.generator_letter(l, a).ok_or_else(|| {
                Error::ActionKilled(format!("λ={} dies at letter {} of a word of length {}", lambda + 1, k, w.len()))
            })?);
            l = self.lambda.act(l, a).expect("generator exists only where the action is defined");
        }
        Ok(Word(out))
    }

    /// `κ(w, i)` via `κ(wa,i) = κ(w, a∗i) κ(a,i)`.
    pub fn kappa(&self, w: &Word, i: usize) -> Result<Word> {
        let mut indices = vec![i; w.len()];
        let mut cur = i;
        for (k, &a) in w.letters().iter().enumerate().rev() {
            indices[k] = cur;
            cur = self.star.act(a, cur).ok_or_else(|| {
                Error::ActionKilled(format!("index {} dies under letter {} of a word of length {}", self.star.label(i), k, w.len()))
            })?;
        }
        let mut out = Vec::new();
        for (k, &a) in w.letters().iter().enumerate() {
            let piece = self.kappa_base[a as usize][indices[k]].as_ref().expect("defined where the action is");
            out.extend_from_slice(piece.letters());
        }
        Ok(Word(out))
    }

    /// `φ_ω(w) = φ(1, κ(w, ω))`
    pub fn phi_omega(&self, w: &Word) -> Result<Word> {
        self.phi(0, &self.kappa(w, self.star.omega)?)
    }

    /// Whether `H_λ ⊆ S·r_i`.
    pub fn h_lambda_below(&self, lambda: usize, i: usize) -> bool {
        let x = self.green().h_classes[self.lambda.classes[lambda]][0];
        let r = self.universe().element_of(self.star.rep(i));
        self.green().in_left_ideal(x, r)
    }

    /// `h·ψ(lhs) = h·ψ(rhs)` in S.
    pub fn verify_relation(&self, lhs: &Word, rhs: &Word) -> bool {
        let u = self.universe();
        u.act_right(self.h_elem, &self.psi(lhs)) == u.act_right(self.h_elem, &self.psi(rhs))
    }

    /// Test hook: replaces one κ entry by a word representing a different
    /// element, so that downstream checks have something to catch.
    #[doc(hidden)]
    pub fn corrupt_kappa(&mut self) -> bool {
        let u = &self.monoid.universe;
        for a in 0..self.kappa_base.len() {
            for i in 0..self.kappa_base[a].len() {
                let Some(k) = self.star.act(a as Letter, i) else { continue };
                let base = u.element_of(self.star.rep(k));
                let good = self.kappa_base[a][i].clone().expect("defined");
                for c in u.alphabet().letters() {
                    let bad = good.concat(&Word::letter(c));
                    if u.act_right(base, &bad) != u.act_right(base, &good) {
                        self.kappa_base[a][i] = Some(bad);
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Which family a relation came from, with its parameters (zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RelationTag {
    R1 { lambda: usize, rule: usize },
    R2 { lambda: usize, j: usize, rule: usize },
    R3 { lambda: usize, letter: String },
    R4,
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationTag::R1 { lambda, rule } => write!(f, "R1[lambda={},rule={}]", lambda + 1, rule),
            RelationTag::R2 { lambda, j, rule } => write!(f, "R2[lambda={},j={},rule={}]", lambda + 1, j + 1, rule),
            RelationTag::R3 { lambda, letter } => write!(f, "R3[lambda={},a={}]", lambda + 1, letter),
            RelationTag::R4 => write!(f, "R4"),
        }
    }
}

impl FromStr for RelationTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("malformed relation tag `{s}`"));
        if s == "R4" {
            return Ok(RelationTag::R4);
        }
        let (family, rest) = s.split_once('[').ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let mut fields = HashMap::new();
        for part in body.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            fields.insert(k, v);
        }
        let num = |k: &str| -> Result<usize> {
            fields.get(k).and_then(|v| v.parse::<usize>().ok()).ok_or_else(bad)
        };
        let one_based = |k: &str| -> Result<usize> { num(k)?.checked_sub(1).ok_or_else(bad) };
        match family {
            "R1" => Ok(RelationTag::R1 { lambda: one_based("lambda")?, rule: num("rule")? }),
            "R2" => Ok(RelationTag::R2 { lambda: one_based("lambda")?, j: one_based("j")?, rule: num("rule")? }),
            "R3" => Ok(RelationTag::R3 {
                lambda: one_based("lambda")?,
                letter: fields.get("a").ok_or_else(bad)?.to_string(),
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    pub tags: Vec<RelationTag>,
}

/// ⟨B|U⟩ with tagged relations. `presentation` holds the nontrivial ones as
/// rules in the same order.
#[derive(Debug, Clone)]
pub struct SchutzPresentation {
    pub relations: Vec<Relation>,
    pub trivial: Vec<Relation>,
    pub presentation: Presentation,
    lookup: HashMap<(Word, Word), (usize, Sign)>,
}

impl SchutzPresentation {
    pub fn from_relations(alphabet: Alphabet, relations: Vec<Relation>, trivial: Vec<Relation>) -> Result<Self> {
        let presentation =
            Presentation::new(alphabet, relations.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect())?;
        let mut lookup = HashMap::new();
        for (id, r) in relations.iter().enumerate() {
            lookup.entry((r.lhs.clone(), r.rhs.clone())).or_insert((id, Sign::Pos));
            lookup.entry((r.rhs.clone(), r.lhs.clone())).or_insert((id, Sign::Neg));
        }
        Ok(SchutzPresentation { relations, trivial, presentation, lookup })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.presentation.alphabet
    }

    /// The rule and direction rewriting `from` to `to` in one elementary step.
    pub fn find(&self, from: &Word, to: &Word) -> Option<(usize, Sign)> {
        self.lookup.get(&(from.clone(), to.clone())).copied()
    }
}

/// Accumulates relations, merging identical word pairs (in either order).
#[derive(Default)]
struct RelationSet {
    relations: Vec<Relation>,
    trivial: Vec<Relation>,
    seen: HashMap<(Word, Word), (bool, usize)>,
}

impl RelationSet {
    fn add(&mut self, lhs: Word, rhs: Word, tag: RelationTag) {
        let key = if lhs <= rhs { (lhs.clone(), rhs.clone()) } else { (rhs.clone(), lhs.clone()) };
        if let Some(&(trivial, i)) = self.seen.get(&key) {
            let list = if trivial { &mut self.trivial } else { &mut self.relations };
            list[i].tags.push(tag);
            return;
        }
        let trivial = lhs == rhs;
        let list = if trivial { &mut self.trivial } else { &mut self.relations };
        list.push(Relation { lhs, rhs, tags: vec![tag] });
        self.seen.insert(key, (trivial, list.len() - 1));
    }
}

/// All four relation families. Undefined φ or κ here would be a
/// construction bug, so it surfaces as an internal error.
pub fn build_presentation(d: &SchutzData) -> Result<SchutzPresentation> {
    let internal = |e: Error| Error::Internal(format!("relation family undefined: {e}"));
    let mut set = RelationSet::default();
    let rules = d.pres.rules();

    for l in 0..d.lambda.len() {
        for r in rules {
            if d.lambda.act_word(l, &r.lhs).is_some() {
                let lhs = d.phi(l, &r.lhs).map_err(internal)?;
                let rhs = d.phi(l, &r.rhs).map_err(internal)?;
                set.add(lhs, rhs, RelationTag::R1 { lambda: l, rule: r.id });
            }
        }
    }

    for l in 0..d.lambda.len() {
        for &j in &d.star.j_ids {
            for r in rules {
                let Some(uj) = d.star.act_word(&r.lhs, j) else { continue };
                if !d.h_lambda_below(l, uj) {
                    continue;
                }
                let lhs = d.phi(l, &d.kappa(&r.lhs, j).map_err(internal)?).map_err(internal)?;
                let rhs = d.phi(l, &d.kappa(&r.rhs, j).map_err(internal)?).map_err(internal)?;
                set.add(lhs, rhs, RelationTag::R2 { lambda: l, j, rule: r.id });
            }
        }
    }

    for (b, g) in d.generators.iter().enumerate() {
        let rhs = d.phi_omega(&d.pi_base[b]).map_err(internal)?;
        let letter = d.monoid.alphabet().name(g.letter).to_string();
        set.add(Word::letter(b as Letter), rhs, RelationTag::R3 { lambda: g.lambda, letter });
    }

    let rhs = d.phi(0, &d.kappa(&d.h, d.star.eta).map_err(internal)?).map_err(internal)?;
    set.add(Word::empty(), rhs, RelationTag::R4);

    SchutzPresentation::from_relations(d.b_alphabet.clone(), set.relations, set.trivial)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::words::parse_presentation;

    pub(crate) fn monoid(text: &str) -> Monoid {
        Monoid::new(parse_presentation(text).unwrap(), Limits::default(), 1000).unwrap()
    }

    pub(crate) const Z3: &str = "alphabet: a\nrule: aaaa = a";

    fn a(n: usize) -> Word {
        Word(vec![0; n])
    }

    #[test]
    fn representatives_of_the_cyclic_example() {
        let m = monoid(Z3);
        let h = m.h_class_of(&a(1));
        let d = choose_representatives(&m, &m.presentation, h, &Word::empty()).unwrap();
        assert_eq!(d.h, a(1));
        assert_eq!(d.p, vec![Word::empty()]);
        assert_eq!(d.p_prime, vec![Word::empty()]);
        assert_eq!(d.kappa_base[0][d.star.one], Some(Word::empty()));
        assert_eq!(d.kappa_base[0][d.star.omega], Some(a(1)));
        assert_eq!(d.b_alphabet.names(), ["b[1,a]"]);
        assert_eq!(d.pi_base, vec![a(1)]);
        assert_eq!(d.psi_base, vec![a(1)]);
    }

    #[test]
    fn map_examples() {
        let m = monoid(Z3);
        let h = m.h_class_of(&a(1));
        let d = choose_representatives(&m, &m.presentation, h, &Word::empty()).unwrap();
        let b = |n: usize| Word(vec![0; n]);
        assert_eq!(d.psi(&b(1)), a(1));
        assert_eq!(d.psi(&Word::empty()), Word::empty());
        assert_eq!(d.psi(&b(2)), a(2));
        assert_eq!(d.phi(0, &Word::empty()).unwrap(), Word::empty());
        assert_eq!(d.phi(0, &a(4)).unwrap(), b(4));
        assert_eq!(d.kappa(&Word::empty(), d.star.omega).unwrap(), Word::empty());
        assert_eq!(d.kappa(&a(4), d.star.one).unwrap(), a(3));
        assert_eq!(d.kappa(&a(4), d.star.omega).unwrap(), a(4));
        assert_eq!(d.pi(&Word::empty()), Word::empty());
        assert_eq!(d.pi(&b(1)), a(1));
        assert_eq!(d.pi(&b(2)), a(2));
    }

    #[test]
    fn phi_dies_outside_r() {
        let m = monoid(Z3);
        let d = choose_representatives(&m, &m.presentation, m.h_class_of(&Word::empty()), &Word::empty()).unwrap();
        assert!(matches!(d.phi(0, &a(1)), Err(Error::ActionKilled(_))));
        assert!(d.generators.is_empty());
    }

    #[test]
    fn presentation_of_the_cyclic_example() {
        let m = monoid(Z3);
        let d = choose_representatives(&m, &m.presentation, m.h_class_of(&a(1)), &Word::empty()).unwrap();
        let sp = build_presentation(&d).unwrap();
        let b = |n: usize| Word(vec![0; n]);
        let pairs: Vec<(Word, Word)> = sp.relations.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
        assert_eq!(pairs, vec![(b(4), b(1)), (b(3), Word::empty())]);
        assert_eq!(sp.relations[0].tags.len(), 2); // R1 and R2 at j = ω coincide
        let trivial: Vec<String> = sp.trivial.iter().flat_map(|r| r.tags.iter().map(|t| t.to_string())).collect();
        assert_eq!(trivial, ["R3[lambda=1,a=a]", "R4"]);
        for r in sp.relations.iter().chain(&sp.trivial) {
            assert!(d.verify_relation(&r.lhs, &r.rhs));
        }
        assert!(d.verify_relation(&b(4), &b(1)));
        assert!(!d.verify_relation(&b(1), &Word::empty()));
        assert_eq!(sp.find(&b(1), &b(4)), Some((0, Sign::Neg)));
    }

    #[test]
    fn idempotent_gives_the_trivial_group() {
        let m = monoid("alphabet: a\nrule: aa = a");
        let d = choose_representatives(&m, &m.presentation, m.h_class_of(&a(1)), &Word::empty()).unwrap();
        let sp = build_presentation(&d).unwrap();
        let g = crate::grouptools::enumerate_group(&sp.presentation, Limits::default(), 100).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn stabilizing_word_gives_nontrivial_fourth_family() {
        let m = monoid(Z3);
        let d = choose_representatives(&m, &m.presentation, m.h_class_of(&a(1)), &a(3)).unwrap();
        assert_eq!(d.h, a(3));
        assert_eq!(d.star.eta, d.star.omega);
        let sp = build_presentation(&d).unwrap();
        assert!(sp.relations.iter().any(|r| r.tags.contains(&RelationTag::R4)));
        for r in &sp.relations {
            assert!(d.verify_relation(&r.lhs, &r.rhs));
        }
    }

    #[test]
    fn left_search_finds_shortlex_least_words() {
        let m = monoid("alphabet: a b\nrule: ab = 1\nrule: ba = 1\nrule: aaaa = 1");
        let u = &m.universe;
        for s in 0..u.len() {
            for t in 0..u.len() {
                let w = left_search(u, s, t).unwrap();
                assert_eq!(u.act_left(&w, s), t);
                // brute force over all shorter-or-equal words
                let mut all = vec![Word::empty()];
                let mut frontier = vec![Word::empty()];
                for _ in 0..w.len() {
                    let mut next = Vec::new();
                    for x in &frontier {
                        for c in 0..2 {
                            let mut y = x.clone();
                            y.0.push(c);
                            next.push(y);
                        }
                    }
                    all.extend(next.iter().cloned());
                    frontier = next;
                }
                let best = all.into_iter().filter(|x| u.act_left(x, s) == t).min().unwrap();
                assert_eq!(best, w);
            }
        }
    }

    #[test]
    fn tags_round_trip() {
        for t in [
            RelationTag::R1 { lambda: 0, rule: 3 },
            RelationTag::R2 { lambda: 2, j: 1, rule: 0 },
            RelationTag::R3 { lambda: 1, letter: "x1".into() },
            RelationTag::R4,
        ] {
            assert_eq!(t.to_string().parse::<RelationTag>().unwrap(), t);
        }
        assert!("R9[x=1]".parse::<RelationTag>().is_err());
    }
}
