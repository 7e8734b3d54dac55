//! Finite groups from presentations, and isomorphism testing of small groups.

use std::collections::VecDeque;

use crate::engine::{enumerate_universe, knuth_bendix, Limits};
use crate::error::{Error, Result};
use crate::green::PermGroup;
use crate::words::{Alphabet, Presentation, Word};

/// Largest order the isomorphism test accepts.
pub const MAX_ISO_ORDER: usize = 512;

#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    pub alphabet: Alphabet,
    /// Shortlex normal forms; element 0 is the identity.
    pub element_words: Vec<Word>,
    pub mult: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    generator_elements: Vec<usize>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.element_words.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_of(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |x, &b| self.mult[x][self.generator_elements[b as usize]])
    }

    /// Shortlex-least word for the inverse of the element `w` represents.
    pub fn inverse_word(&self, w: &Word) -> Word {
        self.element_words[self.inv[self.element_of(w)]].clone()
    }
}

/// Completes the presentation, enumerates it, and checks that every element
/// is invertible.
pub fn enumerate_group(pres: &Presentation, limits: Limits, cap: usize) -> Result<FiniteGroupTable> {
    let cs = knuth_bendix(pres, limits)?;
    let u = enumerate_universe(&cs, cap)?;
    let n = u.len();
    let mult: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| u.mul(x, y)).collect()).collect();
    let mut inv = Vec::with_capacity(n);
    for (x, row) in mult.iter().enumerate() {
        let y = (0..n)
            .find(|&y| row[y] == 0 && mult[y][x] == 0)
            .ok_or_else(|| Error::NotAGroup(format!("`{}` has no inverse", u.alphabet().format_word(u.word(x)))))?;
        inv.push(y);
    }
    let generator_elements = u.alphabet().letters().map(|b| u.right(0, b)).collect();
    Ok(FiniteGroupTable {
        alphabet: u.alphabet().clone(),
        element_words: u.elements().to_vec(),
        mult,
        inv,
        generator_elements,
    })
}

fn identity_of(table: &[Vec<usize>]) -> Option<usize> {
    (0..table.len()).find(|&e| (0..table.len()).all(|x| table[e][x] == x && table[x][e] == x))
}

fn element_orders(table: &[Vec<usize>], id: usize) -> Vec<usize> {
    (0..table.len())
        .map(|x| {
            let (mut k, mut y) = (1, x);
            while y != id {
                y = table[y][x];
                k += 1;
            }
            k
        })
        .collect()
}

/// Greedy generating set, plus for every element its BFS parent
/// `(previous element, generator position)`.
fn spanning_tree(table: &[Vec<usize>], id: usize) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
    let n = table.len();
    let mut gens = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut reached = vec![false; n];
    reached[id] = true;
    let mut order = vec![id];
    for x in 0..n {
        if reached[x] {
            continue;
        }
        gens.push(x);
        // Rebuild the tree with the enlarged generating set.
        reached = vec![false; n];
        reached[id] = true;
        parent = vec![None; n];
        order = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(y) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let z = table[y][g];
                if !reached[z] {
                    reached[z] = true;
                    parent[z] = Some((y, k));
                    order.push(z);
                    queue.push_back(z);
                }
            }
        }
    }
    // `order` lists elements so that parents come first.
    let mut sorted_parent = vec![None; n];
    for &z in &order {
        sorted_parent[z] = parent[z];
    }
    let _ = order;
    (gens, sorted_parent)
}

/// Whether two group multiplication tables are isomorphic.
pub fn isomorphic_tables(a: &[Vec<usize>], b: &[Vec<usize>]) -> Result<bool> {
    let n = a.len();
    if n > MAX_ISO_ORDER || b.len() > MAX_ISO_ORDER {
        return Err(Error::OrderTooLarge(n.max(b.len())));
    }
    if n != b.len() {
        return Ok(false);
    }
    let (Some(ida), Some(idb)) = (identity_of(a), identity_of(b)) else {
        return Err(Error::NotAGroup("table without identity".into()));
    };
    let (oa, ob) = (element_orders(a, ida), element_orders(b, idb));
    let (mut sa, mut sb) = (oa.clone(), ob.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(false);
    }

    let (gens, parent) = spanning_tree(a, ida);
    // BFS order again, parents before children.
    let mut bfs = vec![ida];
    let mut k = 0;
    while k < bfs.len() {
        let y = bfs[k];
        for (z, link) in parent.iter().enumerate() {
            if let Some((p, _)) = *link {
                if p == y {
                    bfs.push(z);
                }
            }
        }
        k += 1;
    }

    let mut images = vec![0usize; gens.len()];
    Ok(assign(a, b, &oa, &ob, idb, &gens, &parent, &bfs, &mut images, 0))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &[Vec<usize>],
    b: &[Vec<usize>],
    oa: &[usize],
    ob: &[usize],
    idb: usize,
    gens: &[usize],
    parent: &[Option<(usize, usize)>],
    bfs: &[usize],
    images: &mut Vec<usize>,
    k: usize,
) -> bool {
    if k == gens.len() {
        let n = a.len();
        let mut f = vec![usize::MAX; n];
        f[bfs[0]] = idb;
        for &z in &bfs[1..] {
            let (p, g) = parent[z].expect("non-identity has a parent");
            f[z] = b[f[p]][images[g]];
        }
        let mut hit = vec![false; n];
        for &y in &f {
            if y == usize::MAX || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        return (0..n).all(|x| gens.iter().enumerate().all(|(g, &ga)| f[a[x][ga]] == b[f[x]][images[g]]));
    }
    for y in 0..b.len() {
        if ob[y] != oa[gens[k]] {
            continue;
        }
        images[k] = y;
        if assign(a, b, oa, ob, idb, gens, parent, bfs, images, k + 1) {
            return true;
        }
    }
    false
}

pub fn isomorphic(g1: &FiniteGroupTable, g2: &PermGroup) -> Result<bool> {
    if g1.order() > MAX_ISO_ORDER || g2.order() > MAX_ISO_ORDER {
        return Err(Error::OrderTooLarge(g1.order().max(g2.order())));
    }
    isomorphic_tables(&g1.mult, &g2.cayley_table())
}

/// Multiplication table of a set of monoid elements closed under the
/// product, indexed by position in `elements`.
pub fn restricted_table(u: &crate::engine::MonoidUniverse, elements: &[usize]) -> Option<Vec<Vec<usize>>> {
    elements
        .iter()
        .map(|&x| elements.iter().map(|&y| elements.iter().position(|&z| z == u.mul(x, y))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;

    fn group(text: &str, cap: usize) -> Result<FiniteGroupTable> {
        enumerate_group(&parse_presentation(text).unwrap(), Limits::default(), cap)
    }

    fn cyclic_perm(n: usize) -> PermGroup {
        let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        PermGroup::generate(n, (0..n).collect(), vec![gen])
    }

    fn klein() -> PermGroup {
        PermGroup::generate(4, (0..4).collect(), vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
    }

    fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(group("alphabet: b\nrule: bbbb = b\nrule: bbb = 1", 10).unwrap().order(), 3);
        assert_eq!(group("alphabet: b\nrule: b = 1", 10).unwrap().order(), 1);
        assert_eq!(group("alphabet: b", 10).unwrap_err(), Error::CapExceeded(10));
        assert!(matches!(group("alphabet: b\nrule: bb = b", 10), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn isomorphism_examples() {
        let z3 = group("alphabet: b\nrule: bbb = 1", 10).unwrap();
        assert!(isomorphic(&z3, &cyclic_perm(3)).unwrap());
        let trivial = group("alphabet: b\nrule: b = 1", 10).unwrap();
        assert!(isomorphic(&trivial, &cyclic_perm(1)).unwrap());
        let z4 = group("alphabet: b\nrule: bbbb = 1", 10).unwrap();
        assert!(!isomorphic(&z4, &klein()).unwrap());
        assert!(isomorphic(&z4, &cyclic_perm(4)).unwrap());
        assert!(!isomorphic(&z3, &cyclic_perm(4)).unwrap());
        assert_eq!(isomorphic_tables(&cyclic_table(600), &cyclic_table(600)), Err(Error::OrderTooLarge(600)));
    }

    #[test]
    fn inverse_words() {
        let z3 = group("alphabet: b\nrule: bbb = 1", 10).unwrap();
        assert_eq!(z3.inverse_word(&Word(vec![0])), Word(vec![0, 0]));
        assert_eq!(z3.inverse_word(&Word::empty()), Word::empty());
    }

    #[test]
    fn tables_are_associative() {
        for text in ["alphabet: b\nrule: bbbbbb = 1", "alphabet: x y\nrule: xx = 1\nrule: yyy = 1\nrule: yx = xyy"] {
            let g = group(text, 100).unwrap();
            let n = g.order();
            assert!(n <= 64);
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(g.mult[g.mult[x][y]][z], g.mult[x][g.mult[y][z]]);
                    }
                }
            }
        }
    }

    fn small_groups() -> Vec<Vec<Vec<usize>>> {
        let s3 = PermGroup::generate(3, (0..3).collect(), vec![vec![1, 0, 2], vec![1, 2, 0]]);
        let d4 = PermGroup::generate(4, (0..4).collect(), vec![vec![1, 2, 3, 0], vec![3, 2, 1, 0]]);
        let q8 = group("alphabet: i j\nrule: iiii = 1\nrule: jj = ii\nrule: jij = i", 100).unwrap();
        let z8 = cyclic_table(8);
        let z2z4 = group("alphabet: x y\nrule: xx = 1\nrule: yyyy = 1\nrule: yx = xy", 100).unwrap();
        let a4 = PermGroup::generate(4, (0..4).collect(), vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
        let z12 = cyclic_table(12);
        let s4 = PermGroup::generate(4, (0..4).collect(), vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        vec![
            cyclic_table(1),
            cyclic_table(6),
            s3.cayley_table(),
            klein().cayley_table(),
            cyclic_table(4),
            d4.cayley_table(),
            q8.mult,
            z8,
            z2z4.mult,
            a4.cayley_table(),
            z12,
            s4.cayley_table(),
        ]
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric() {
        let gs = small_groups();
        for (i, a) in gs.iter().enumerate() {
            assert!(isomorphic_tables(a, a).unwrap());
            for (j, b) in gs.iter().enumerate() {
                let ab = isomorphic_tables(a, b).unwrap();
                assert_eq!(ab, isomorphic_tables(b, a).unwrap());
                assert_eq!(ab, i == j, "groups {i} and {j}");
            }
        }
    }

    #[test]
    fn relabelled_tables_are_isomorphic() {
        let s4 = small_groups().pop().unwrap();
        let n = s4.len();
        // relabel by a fixed shuffle
        let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 7) % n).collect();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabelled: Vec<Vec<usize>> =
            (0..n).map(|x| (0..n).map(|y| perm[s4[inv[x]][inv[y]]]).collect()).collect();
        assert!(isomorphic_tables(&s4, &relabelled).unwrap());
    }
}
