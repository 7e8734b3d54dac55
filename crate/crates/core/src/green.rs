//! Green's relations, the actions on H-classes of R and on R-classes, and the
//! Schützenberger group computed directly as a permutation group.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::engine::MonoidUniverse;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// Strongly connected components of the graph on `0..n` with successors
/// `succ(v)`. Returned ids are ordered by least member.
fn strong_components(n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw = vec![UNSEEN; n];
    let mut next_index = 0;
    let mut raw_count = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, successors, next successor position)
        let mut work: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        work.push((root, succ(root), 0));
        while let Some(frame) = work.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(parent) = work.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        raw[w] = raw_count;
                        if w == v {
                            break;
                        }
                    }
                    raw_count += 1;
                }
            }
        }
    }
    renumber_by_least(&raw)
}

/// Relabels class ids so that they appear in order of first occurrence.
fn renumber_by_least(raw: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    raw.iter()
        .map(|r| {
            let next = map.len();
            *map.entry(*r).or_insert(next)
        })
        .collect()
}

fn partition(class_of: &[usize]) -> Vec<Vec<usize>> {
    let count = class_of.iter().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); count];
    for (x, &c) in class_of.iter().enumerate() {
        classes[c].push(x);
    }
    classes
}

#[derive(Debug, Clone)]
pub struct GreenStructure {
    pub r_class_of: Vec<usize>,
    pub l_class_of: Vec<usize>,
    pub h_class_of: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    /// `l_reach[c][d]`: L-class `d` lies in the left ideal generated by L-class `c`.
    l_reach: Vec<Vec<bool>>,
    h_of_pair: HashMap<(usize, usize), usize>,
}

impl GreenStructure {
    /// `y ∈ S·x`
    pub fn in_left_ideal(&self, y: usize, x: usize) -> bool {
        self.l_reach[self.l_class_of[x]][self.l_class_of[y]]
    }

    /// The H-class of R-class `r` and L-class `l`, if they meet.
    pub fn h_class_at(&self, r: usize, l: usize) -> Option<usize> {
        self.h_of_pair.get(&(r, l)).copied()
    }

    pub fn is_group_h_class(&self, u: &MonoidUniverse, h: usize) -> bool {
        self.h_classes[h].iter().any(|&x| u.mul(x, x) == x)
    }
}

pub fn compute_green(u: &MonoidUniverse) -> GreenStructure {
    let n = u.len();
    let letters: Vec<Letter> = u.alphabet().letters().collect();
    let r_class_of = strong_components(n, |x| letters.iter().map(|&a| u.right(x, a)).collect());
    let l_class_of = strong_components(n, |x| letters.iter().map(|&a| u.left(a, x)).collect());

    let mut h_of_pair = HashMap::new();
    let h_class_of: Vec<usize> = (0..n)
        .map(|x| {
            let next = h_of_pair.len();
            *h_of_pair.entry((r_class_of[x], l_class_of[x])).or_insert(next)
        })
        .collect();

    let l_classes = partition(&l_class_of);
    let nl = l_classes.len();
    let mut l_succ = vec![BTreeSet::new(); nl];
    for x in 0..n {
        for &a in &letters {
            l_succ[l_class_of[x]].insert(l_class_of[u.left(a, x)]);
        }
    }
    let mut l_reach = vec![vec![false; nl]; nl];
    for (c, reach) in l_reach.iter_mut().enumerate() {
        let mut queue = VecDeque::from([c]);
        reach[c] = true;
        while let Some(d) = queue.pop_front() {
            for &e in &l_succ[d] {
                if !reach[e] {
                    reach[e] = true;
                    queue.push_back(e);
                }
            }
        }
    }

    GreenStructure {
        r_classes: partition(&r_class_of),
        h_classes: partition(&h_class_of),
        l_classes,
        r_class_of,
        l_class_of,
        h_class_of,
        l_reach,
        h_of_pair,
    }
}

/// The right action of letters on the H-classes of the R-class of `H`.
/// Index 0 is `H` itself; `None` in the table is the absorbing zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAction {
    pub r_class: usize,
    pub classes: Vec<usize>,
    pub table: Vec<Vec<Option<usize>>>,
}

impl LambdaAction {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn act(&self, lambda: usize, a: Letter) -> Option<usize> {
        self.table[lambda][a as usize]
    }

    /// `λ · w`, left to right.
    pub fn act_word(&self, lambda: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(lambda, |l, &a| self.act(l, a))
    }

    pub fn index_of_class(&self, h: usize) -> Option<usize> {
        self.classes.iter().position(|&c| c == h)
    }
}

pub fn lambda_action(u: &MonoidUniverse, g: &GreenStructure, h: usize) -> LambdaAction {
    let r_class = g.r_class_of[g.h_classes[h][0]];
    let mut classes = vec![h];
    let mut others: Vec<usize> = g.r_classes[r_class].iter().map(|&x| g.h_class_of[x]).collect();
    others.sort_unstable();
    others.dedup();
    classes.extend(others.into_iter().filter(|&c| c != h));
    let table = classes
        .iter()
        .map(|&c| {
            let x = g.h_classes[c][0];
            u.alphabet()
                .letters()
                .map(|a| {
                    let y = u.right(x, a);
                    if g.r_class_of[y] == r_class {
                        classes.iter().position(|&d| d == g.h_class_of[y])
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    LambdaAction { r_class, classes, table }
}

/// One member of the index set: an R-class with its chosen representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub class: usize,
    pub rep: Word,
}

/// The left action of letters on the inverse orbit of `R`.
///
/// Each R-class of the inverse orbit has one canonical entry, and letter
/// actions always land on canonical entries. The distinguished entries
/// (identity class with the empty word, `R` with `h`, the class of the
/// stabilizing word with that word) may share an R-class; a non-canonical
/// entry is then kept as an alias that only the empty word reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarAction {
    pub entries: Vec<IndexEntry>,
    pub one: usize,
    pub omega: usize,
    pub eta: usize,
    /// Representative word of an element of `H`; equal to the entry of `omega`.
    pub h: Word,
    /// `table[a][i]`
    pub table: Vec<Vec<Option<usize>>>,
    /// R-classes in the orbit of the class of the stabilizing word.
    pub orbit_classes: Vec<usize>,
    /// Closure of `eta` under the action; the index set J.
    pub j_ids: Vec<usize>,
    canonical: HashMap<usize, usize>,
}

impl StarAction {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Word {
        &self.entries[i].rep
    }

    pub fn act(&self, a: Letter, i: usize) -> Option<usize> {
        self.table[a as usize][i]
    }

    /// `w ∗ i`, applying the letters of `w` right to left.
    pub fn act_word(&self, w: &Word, i: usize) -> Option<usize> {
        w.letters().iter().rev().try_fold(i, |j, &a| self.act(a, j))
    }

    pub fn canonical_of_class(&self, r: usize) -> Option<usize> {
        self.canonical.get(&r).copied()
    }

    pub fn in_j(&self, i: usize) -> bool {
        self.j_ids.contains(&i)
    }

    /// Display label: `1`, `ω`, `η` for the distinguished entries, otherwise
    /// the one-based position.
    pub fn label(&self, i: usize) -> String {
        if i == self.one {
            "1".into()
        } else if i == self.omega {
            "ω".into()
        } else if i == self.eta {
            "η".into()
        } else {
            (i + 1).to_string()
        }
    }
}

/// Picks `h` and builds the index sets for the stabilizing word `e`.
/// When `e` itself represents an element of `H` it is used as `h`, so that
/// the entries of `omega` and `eta` coincide.
pub fn star_action(u: &MonoidUniverse, g: &GreenStructure, h_class: usize, e: &Word) -> Result<StarAction> {
    let e_elem = u.element_of(e);
    let h = if g.h_class_of[e_elem] == h_class {
        e.clone()
    } else {
        u.word(g.h_classes[h_class][0]).clone()
    };
    let h_elem = u.element_of(&h);
    if u.act_right(h_elem, e) != h_elem {
        return Err(Error::NotPointwiseStabilizer);
    }

    let n_r = g.r_classes.len();
    let letters: Vec<Letter> = u.alphabet().letters().collect();
    // a ∗ R' on R-classes, via the least element of R'.
    let class_act = |a: Letter, r: usize| g.r_class_of[u.left(a, g.r_classes[r][0])];

    let target = g.r_class_of[h_elem];
    let mut preds = vec![Vec::new(); n_r];
    for r in 0..n_r {
        for &a in &letters {
            preds[class_act(a, r)].push(r);
        }
    }
    let mut in_inverse_orbit = vec![false; n_r];
    in_inverse_orbit[target] = true;
    let mut queue = VecDeque::from([target]);
    while let Some(r) = queue.pop_front() {
        for &p in &preds[r] {
            if !in_inverse_orbit[p] {
                in_inverse_orbit[p] = true;
                queue.push_back(p);
            }
        }
    }

    let one_class = g.r_class_of[u.identity()];
    let e_class = g.r_class_of[e_elem];
    let mut entries = vec![IndexEntry { class: one_class, rep: Word::empty() }];
    let omega_entry = IndexEntry { class: target, rep: h.clone() };
    let omega = match entries.iter().position(|x| *x == omega_entry) {
        Some(i) => i,
        None => {
            entries.push(omega_entry);
            entries.len() - 1
        }
    };
    for (r, &inside) in in_inverse_orbit.iter().enumerate() {
        if inside && r != one_class && r != target {
            let rep = if r == e_class { e.clone() } else { u.word(g.r_classes[r][0]).clone() };
            entries.push(IndexEntry { class: r, rep });
        }
    }
    let mut canonical = HashMap::new();
    for (i, entry) in entries.iter().enumerate() {
        canonical.entry(entry.class).or_insert(i);
    }
    canonical.insert(target, omega);

    // Only the identity class and R can need an extra entry here; any other
    // class of `e` already carries `e` as its representative.
    let eta_entry = IndexEntry { class: e_class, rep: e.clone() };
    let eta = match entries.iter().position(|x| *x == eta_entry) {
        Some(i) => i,
        None => {
            entries.push(eta_entry);
            entries.len() - 1
        }
    };

    let table: Vec<Vec<Option<usize>>> = letters
        .iter()
        .map(|&a| {
            entries
                .iter()
                .map(|entry| {
                    let y = u.left(a, u.element_of(&entry.rep));
                    canonical.get(&g.r_class_of[y]).copied()
                })
                .collect()
        })
        .collect();

    let mut orbit = vec![false; n_r];
    orbit[e_class] = true;
    let mut queue = VecDeque::from([e_class]);
    while let Some(r) = queue.pop_front() {
        for &a in &letters {
            let s = class_act(a, r);
            if !orbit[s] {
                orbit[s] = true;
                queue.push_back(s);
            }
        }
    }
    let orbit_classes = (0..n_r).filter(|&r| orbit[r]).collect();

    let mut in_j = vec![false; entries.len()];
    in_j[eta] = true;
    let mut queue = VecDeque::from([eta]);
    while let Some(i) = queue.pop_front() {
        for row in &table {
            if let Some(j) = row[i] {
                if !in_j[j] {
                    in_j[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    let j_ids = (0..entries.len()).filter(|&i| in_j[i]).collect();

    Ok(StarAction { entries, one: 0, omega, eta, h, table, orbit_classes, j_ids, canonical })
}

/// A permutation group on `points`, stored as its full list of elements.
/// Permutations act on the right; the product `p q` applies `p` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    pub degree: usize,
    pub points: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
    pub elements: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        p.iter().map(|&x| q[x]).collect()
    }

    /// Closes a generating set under composition.
    pub fn generate(degree: usize, points: Vec<usize>, generators: Vec<Vec<usize>>) -> Self {
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = Self::compose(&p, g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        PermGroup { degree, points, generators, elements: seen.into_iter().collect() }
    }

    /// Multiplication table over `elements`; element 0 is the identity.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&Vec<usize>, usize> = self.elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        self.elements
            .iter()
            .map(|p| self.elements.iter().map(|q| index[&Self::compose(p, q)]).collect())
            .collect()
    }

    /// Every point is moved to every other by exactly one element.
    pub fn is_simply_transitive(&self) -> bool {
        self.order() == self.degree
            && (0..self.degree).all(|t| self.elements.iter().filter(|p| p[0] == t).count() == 1)
    }
}

/// The permutations `x ↦ x·s` of `H` for all `s` stabilizing `H`.
pub fn schutz_direct(u: &MonoidUniverse, g: &GreenStructure, h: usize) -> PermGroup {
    let points = g.h_classes[h].clone();
    let position: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let h0 = points[0];
    let mut perms = BTreeSet::new();
    for s in 0..u.len() {
        if !position.contains_key(&u.mul(h0, s)) {
            continue;
        }
        let perm: Vec<usize> = points.iter().map(|&x| position[&u.mul(x, s)]).collect();
        perms.insert(perm);
    }
    let generators: Vec<Vec<usize>> = perms.into_iter().collect();
    PermGroup::generate(points.len(), points, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Limits;
    use crate::words::parse_presentation;
    use proptest::prelude::*;

    fn universe(text: &str) -> MonoidUniverse {
        MonoidUniverse::from_presentation(&parse_presentation(text).unwrap(), Limits::default(), 1000).unwrap()
    }

    const Z3: &str = "alphabet: a\nrule: aaaa = a";

    pub(crate) fn corpus() -> Vec<MonoidUniverse> {
        [
            "alphabet: a\nrule: aa = a",
            Z3,
            "alphabet: a\nrule: aaaaaa = aaa",
            "alphabet: a b\nrule: ab = 1\nrule: ba = 1\nrule: aaaa = 1",
            "alphabet: a b\nrule: aa = a\nrule: bb = b\nrule: ab = b\nrule: ba = a",
            "alphabet: a t\nrule: tt = 1\nrule: ta = at\nrule: aaa = aa",
            "alphabet:",
        ]
        .iter()
        .map(|t| universe(t))
        .collect()
    }

    #[test]
    fn green_examples() {
        let u = universe(Z3);
        let g = compute_green(&u);
        assert_eq!(g.r_classes, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(g.l_classes, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(g.h_classes[g.h_class_of[1]], vec![1, 2, 3]);

        let u = universe("alphabet: a\nrule: aa = a");
        let g = compute_green(&u);
        assert!(g.h_classes.iter().all(|c| c.len() == 1));

        let u = universe("alphabet:");
        assert_eq!(compute_green(&u).h_classes, vec![vec![0]]);
    }

    #[test]
    fn lambda_examples() {
        let u = universe(Z3);
        let g = compute_green(&u);
        let la = lambda_action(&u, &g, g.h_class_of[1]);
        assert_eq!(la.len(), 1);
        assert_eq!(la.act(0, 0), Some(0));
        let la = lambda_action(&u, &g, g.h_class_of[0]);
        assert_eq!(la.len(), 1);
        assert_eq!(la.act(0, 0), None);

        let u = universe("alphabet: a\nrule: aa = a");
        let g = compute_green(&u);
        let la = lambda_action(&u, &g, g.h_class_of[1]);
        assert_eq!(la.act(0, 0), Some(0));
    }

    #[test]
    fn star_examples() {
        let u = universe(Z3);
        let g = compute_green(&u);
        let h = g.h_class_of[1];
        let st = star_action(&u, &g, h, &Word::empty()).unwrap();
        assert_eq!(st.len(), 2);
        assert_eq!(st.eta, st.one);
        assert_ne!(st.omega, st.one);
        assert_eq!(st.orbit_classes.len(), 2);
        assert_eq!(st.j_ids, vec![st.one, st.omega]);
        assert_eq!(st.act(0, st.one), Some(st.omega));
        assert_eq!(st.act(0, st.omega), Some(st.omega));

        let st = star_action(&u, &g, h, &Word(vec![0; 3])).unwrap();
        assert_eq!(st.eta, st.omega);
        assert_eq!(st.orbit_classes, vec![g.r_class_of[1]]);
        assert_eq!(st.j_ids, vec![st.omega]);

        assert_eq!(star_action(&u, &g, h, &Word(vec![0])).unwrap_err(), Error::NotPointwiseStabilizer);
    }

    #[test]
    fn direct_group_examples() {
        let u = universe(Z3);
        let g = compute_green(&u);
        let grp = schutz_direct(&u, &g, g.h_class_of[1]);
        assert_eq!(grp.order(), 3);
        assert!(grp.is_simply_transitive());
        assert_eq!(schutz_direct(&u, &g, g.h_class_of[0]).order(), 1);
    }

    #[test]
    fn non_group_h_class_still_has_a_regular_group() {
        let u = universe("alphabet: a t\nrule: tt = 1\nrule: ta = at\nrule: aaa = aa");
        let g = compute_green(&u);
        let a = u.element_of(&Word(vec![0]));
        let h = g.h_class_of[a];
        assert!(!g.is_group_h_class(&u, h));
        assert_eq!(g.h_classes[h].len(), 2);
        assert_eq!(schutz_direct(&u, &g, h).order(), 2);
    }

    #[test]
    fn corpus_invariants() {
        for u in corpus() {
            let g = compute_green(&u);
            let n = u.len();
            // partitions are disjoint covers and H = R ∩ L
            for classes in [&g.r_classes, &g.l_classes, &g.h_classes] {
                assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), n);
            }
            for x in 0..n {
                for y in 0..n {
                    let same_h = g.h_class_of[x] == g.h_class_of[y];
                    assert_eq!(same_h, g.r_class_of[x] == g.r_class_of[y] && g.l_class_of[x] == g.l_class_of[y]);
                }
            }
            // left ideals are unions of L-classes
            for x in 0..n {
                let ideal: BTreeSet<usize> = (0..n).map(|s| u.mul(s, x)).collect();
                for &y in &ideal {
                    for &z in &g.l_classes[g.l_class_of[y]] {
                        assert!(ideal.contains(&z));
                    }
                }
                for y in 0..n {
                    assert_eq!(ideal.contains(&y), g.in_left_ideal(y, x));
                }
            }
            for h in 0..g.h_classes.len() {
                let grp = schutz_direct(&u, &g, h);
                assert_eq!(grp.order(), g.h_classes[h].len());
                assert!(grp.is_simply_transitive());

                let la = lambda_action(&u, &g, h);
                for l in 0..la.len() {
                    for a in u.alphabet().letters() {
                        for b in u.alphabet().letters() {
                            if let Some(m) = la.act_word(l, &Word(vec![a, b])) {
                                assert_eq!(la.act(la.act(l, a).unwrap(), b), Some(m));
                            }
                        }
                    }
                }

                let st = star_action(&u, &g, h, &Word::empty()).unwrap();
                assert!(st.in_j(st.omega));
                assert_eq!(st.entries[st.one].rep, Word::empty());
                assert_eq!(st.rep(st.omega), &st.h);
                assert_eq!(st.rep(st.eta), &Word::empty());
                for &j in &st.j_ids {
                    for a in u.alphabet().letters() {
                        if let Some(k) = st.act(a, j) {
                            assert!(st.in_j(k));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn zero_absorbs(idx in 0usize..6, raw in prop::collection::vec(0u32..2, 1..8), suffix in prop::collection::vec(0u32..2, 0..8)) {
            let us = corpus();
            let u = &us[idx];
            let g = compute_green(u);
            let k = u.alphabet().len() as u32;
            let w = Word(raw.iter().map(|l| l % k).collect());
            let s = Word(suffix.iter().map(|l| l % k).collect());
            for h in 0..g.h_classes.len() {
                let la = lambda_action(u, &g, h);
                for l in 0..la.len() {
                    if la.act_word(l, &w).is_none() {
                        prop_assert!(la.act_word(l, &w.concat(&s)).is_none());
                    }
                }
            }
        }
    }
}
