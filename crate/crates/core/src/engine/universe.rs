//! Full element enumeration with right and left Cayley tables.

use std::collections::{HashMap, VecDeque};

use crate::engine::rewriting::{knuth_bendix, CompleteSystem, Limits};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Presentation, Word};

/// The elements of a finite monoid, indexed by discovery order, with both
/// multiplication tables. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct MonoidUniverse {
    alphabet: Alphabet,
    elements: Vec<Word>,
    index: HashMap<Word, usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

impl MonoidUniverse {
    /// Completes `p` and enumerates its elements.
    pub fn from_presentation(p: &Presentation, limits: Limits, cap: usize) -> Result<Self> {
        enumerate_universe(&knuth_bendix(p, limits)?, cap)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Normal forms, in shortlex order.
    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn word(&self, x: usize) -> &Word {
        &self.elements[x]
    }

    /// `x · a`
    pub fn right(&self, x: usize, a: Letter) -> usize {
        self.right[x][a as usize]
    }

    /// `a · x`
    pub fn left(&self, a: Letter, x: usize) -> usize {
        self.left[a as usize][x]
    }

    pub fn right_table(&self) -> &[Vec<usize>] {
        &self.right
    }

    pub fn left_table(&self) -> &[Vec<usize>] {
        &self.left
    }

    /// The element a word represents.
    pub fn element_of(&self, w: &Word) -> usize {
        self.act_right(0, w)
    }

    /// `x · w`
    pub fn act_right(&self, x: usize, w: &Word) -> usize {
        w.letters().iter().fold(x, |acc, &a| self.right[acc][a as usize])
    }

    /// `w · x`
    pub fn act_left(&self, w: &Word, x: usize) -> usize {
        w.letters().iter().rev().fold(x, |acc, &a| self.left[a as usize][acc])
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.act_right(x, &self.elements[y])
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.element_of(u) == self.element_of(v)
    }

    pub fn index_of(&self, normal_form: &Word) -> Option<usize> {
        self.index.get(normal_form).copied()
    }
}

/// Breadth-first closure of the identity under right multiplication by
/// generators. Discovery order is shortlex order of normal forms because
/// shortlex normal forms are prefix closed.
pub fn enumerate_universe(cs: &CompleteSystem, cap: usize) -> Result<MonoidUniverse> {
    if cap == 0 {
        return Err(Error::Input("element cap must be positive".into()));
    }
    let k = cs.alphabet().len();
    let mut elements = vec![Word::empty()];
    let mut index = HashMap::from([(Word::empty(), 0usize)]);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k as Letter {
            let mut w = elements[x].clone();
            w.0.push(a);
            let nf = cs.reduce(&w);
            let y = match index.get(&nf) {
                Some(&y) => y,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let y = elements.len();
                    index.insert(nf.clone(), y);
                    elements.push(nf);
                    queue.push_back(y);
                    y
                }
            };
            row.push(y);
        }
        right.push(row);
    }

    let mut left = vec![vec![0usize; elements.len()]; k];
    for (a, row) in left.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            let w = Word::letter(a as Letter).concat(&elements[x]);
            *slot = *index
                .get(&cs.reduce(&w))
                .ok_or_else(|| Error::Internal("left product escaped the enumeration".into()))?;
        }
    }

    Ok(MonoidUniverse { alphabet: cs.alphabet().clone(), elements, index, right, left })
}
