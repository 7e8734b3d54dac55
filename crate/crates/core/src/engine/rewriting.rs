//! Shortlex Knuth–Bendix completion and leftmost-innermost reduction.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Presentation, Rule, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rules: usize,
    pub max_word_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_rules: 2000, max_word_len: 64 }
    }
}

/// A single reduction step: rule `rule` (applied positively) at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub position: usize,
    pub rule: usize,
}

/// Rules bucketed by the last letter of their left side, each bucket
/// sorted by (lhs length, rule index).
fn index_by_last(rules: &[(Word, Word)], letters: usize) -> Vec<Vec<usize>> {
    let mut by_last = vec![Vec::new(); letters];
    for (i, (lhs, _)) in rules.iter().enumerate() {
        if let Some(&last) = lhs.letters().last() {
            by_last[last as usize].push(i);
        }
    }
    for bucket in &mut by_last {
        bucket.sort_by_key(|&i| (rules[i].0.len(), i));
    }
    by_last
}

/// Leftmost-innermost rewriting to an irreducible word. The prefix already
/// scanned is kept irreducible, so the first match found ends at the
/// earliest possible position; ties go to the shortest then lowest rule.
fn rewrite(
    rules: &[(Word, Word)],
    by_last: &[Vec<usize>],
    w: &Word,
    mut trace: Option<&mut Vec<Step>>,
) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    let mut input: Vec<Letter> = w.letters().iter().rev().copied().collect();
    while let Some(c) = input.pop() {
        out.push(c);
        for &rid in &by_last[c as usize] {
            let (lhs, rhs) = &rules[rid];
            let n = lhs.len();
            if n <= out.len() && out[out.len() - n..] == lhs.letters()[..] {
                let position = out.len() - n;
                out.truncate(position);
                if let Some(t) = trace.as_deref_mut() {
                    t.push(Step { position, rule: rid });
                }
                input.extend(rhs.letters().iter().rev());
                break;
            }
        }
    }
    Word(out)
}

/// Critical pairs arising from overlapping the left sides of two rules.
/// Proper overlaps put a suffix of `l1` on a prefix of `l2`; inclusions put
/// `l2` inside `l1`.
pub(crate) fn overlaps(l1: &Word, l2: &Word, same_rule: bool) -> Vec<Overlap> {
    let mut found = Vec::new();
    let max_k = l1.len().min(l2.len());
    for k in 1..max_k {
        if l1.letters()[l1.len() - k..] == l2.letters()[..k] {
            found.push(Overlap::Proper { k });
        }
    }
    if !same_rule && l2.len() <= l1.len() {
        for p in l1.occurrences(l2) {
            found.push(Overlap::Inclusion { position: p });
        }
    }
    found
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Overlap {
    /// The last `k` letters of the first left side begin the second.
    Proper { k: usize },
    /// The second left side occurs inside the first at `position`.
    Inclusion { position: usize },
}

fn critical_pairs(a: &(Word, Word), b: &(Word, Word), same_rule: bool) -> Vec<(Word, Word)> {
    let (l1, r1) = a;
    let (l2, r2) = b;
    overlaps(l1, l2, same_rule)
        .into_iter()
        .map(|o| match o {
            Overlap::Proper { k } => {
                (r1.concat(&l2.suffix_from(k)), l1.prefix(l1.len() - k).concat(r2))
            }
            Overlap::Inclusion { position } => (
                r1.clone(),
                r2.wrap(&l1.prefix(position), &l1.suffix_from(position + l2.len())),
            ),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CompleteSystem {
    completed: Presentation,
    origin: Presentation,
    pairs: Vec<(Word, Word)>,
    by_last: Vec<Vec<usize>>,
}

impl CompleteSystem {
    fn from_rules(origin: &Presentation, mut pairs: Vec<(Word, Word)>) -> Result<Self> {
        pairs.sort();
        let completed = Presentation::new(origin.alphabet.clone(), pairs.clone())?;
        let by_last = index_by_last(&pairs, origin.alphabet.len());
        Ok(CompleteSystem { completed, origin: origin.clone(), pairs, by_last })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.completed.alphabet
    }

    /// Oriented rules, sorted by left side; rule ids are positions.
    pub fn rules(&self) -> &[Rule] {
        self.completed.rules()
    }

    /// The completed presentation, usable as a presentation in its own right.
    pub fn presentation(&self) -> &Presentation {
        &self.completed
    }

    pub fn origin(&self) -> &Presentation {
        &self.origin
    }

    pub fn reduce(&self, w: &Word) -> Word {
        rewrite(&self.pairs, &self.by_last, w, None)
    }

    /// Reduces and records each leftmost-innermost step.
    pub fn reduce_traced(&self, w: &Word) -> (Word, Vec<Step>) {
        let mut steps = Vec::new();
        let nf = rewrite(&self.pairs, &self.by_last, w, Some(&mut steps));
        (nf, steps)
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.reduce(u) == self.reduce(v)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.pairs.iter().all(|(lhs, _)| !w.contains(lhs))
    }
}

/// Completes `p` under shortlex with FIFO processing of pending pairs.
pub fn knuth_bendix(p: &Presentation, limits: Limits) -> Result<CompleteSystem> {
    if limits.max_rules == 0 || limits.max_word_len == 0 {
        return Err(Error::Input("completion limits must be positive".into()));
    }
    let letters = p.alphabet.len();
    let mut rules: Vec<(Word, Word)> = Vec::new();
    let mut by_last = index_by_last(&rules, letters);
    let mut pending: VecDeque<(Word, Word)> =
        p.rules().iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();

    while let Some((u, v)) = pending.pop_front() {
        let u = rewrite(&rules, &by_last, &u, None);
        let v = rewrite(&rules, &by_last, &v, None);
        if u == v {
            continue;
        }
        let (lhs, rhs) = if u > v { (u, v) } else { (v, u) };
        if lhs.len() > limits.max_word_len {
            return Err(Error::LimitExceeded { what: "word length", limit: limits.max_word_len });
        }

        // Rules whose left side the new rule rewrites go back into the queue.
        let mut kept = Vec::with_capacity(rules.len() + 1);
        for (l, r) in rules.drain(..) {
            if l.contains(&lhs) {
                pending.push_back((l, r));
            } else {
                kept.push((l, r));
            }
        }
        kept.push((lhs, rhs));
        rules = kept;
        if rules.len() > limits.max_rules {
            return Err(Error::LimitExceeded { what: "rule count", limit: limits.max_rules });
        }
        by_last = index_by_last(&rules, letters);
        for i in 0..rules.len() {
            let reduced = rewrite(&rules, &by_last, &rules[i].1, None);
            rules[i].1 = reduced;
        }

        let newest = rules.len() - 1;
        for i in 0..rules.len() {
            pending.extend(critical_pairs(&rules[newest], &rules[i], i == newest));
            if i != newest {
                pending.extend(critical_pairs(&rules[i], &rules[newest], false));
            }
        }
    }
    CompleteSystem::from_rules(p, rules)
}
