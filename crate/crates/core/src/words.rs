//! Alphabets, words, rules and monoid presentations.
//!
//! Letters are stored as indices into an [`Alphabet`]; the declaration order of
//! the alphabet is the letter order used by shortlex comparisons. The empty
//! word is written `1`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// Characters that may not appear inside a letter token.
const RESERVED: &[char] = &['#', '=', ',', '[', ']', ':', '"'];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet { names: Vec::new(), index: HashMap::new() };
        for name in names {
            alphabet.push(name.into())?;
        }
        Ok(alphabet)
    }

    /// Builds an alphabet whose names may contain brackets and commas
    /// (generated letters such as `b[1,a]`).
    pub(crate) fn generated(names: Vec<String>) -> Self {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i as Letter)).collect();
        Alphabet { names, index }
    }

    fn push(&mut self, name: String) -> Result<()> {
        if name.is_empty()
            || name == "1"
            || name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
        {
            return Err(Error::InvalidLetter(name));
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateLetter(name));
        }
        self.index.insert(name.clone(), self.names.len() as Letter);
        self.names.push(name);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len() as Letter
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    /// True when every letter is a single character, so words may be written
    /// without separators.
    pub fn is_terse(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word. Tokens are whitespace separated; in a terse alphabet a
    /// token may also be a run of single-character letters. The token `1` is
    /// the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            if let Some(l) = self.lookup(token) {
                letters.push(l);
            } else if self.is_terse() {
                for c in token.chars() {
                    let s = c.to_string();
                    letters.push(self.lookup(&s).ok_or(Error::UnknownLetter(s))?);
                }
            } else {
                return Err(Error::UnknownLetter(token.to_string()));
            }
        }
        Ok(Word(letters))
    }

    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let sep = if self.is_terse() { "" } else { " " };
        word.0.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(sep)
    }
}

/// A word over some alphabet. `Ord` is shortlex: shorter words first, then
/// lexicographic by letter index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `left · self · right`.
    pub fn wrap(&self, left: &Word, right: &Word) -> Word {
        let mut v = Vec::with_capacity(left.len() + self.len() + right.len());
        v.extend_from_slice(&left.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&right.0);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn occurs_at(&self, pattern: &Word, position: usize) -> bool {
        position + pattern.len() <= self.len()
            && self.0[position..position + pattern.len()] == pattern.0[..]
    }

    /// Start positions of every occurrence of `pattern`, in increasing order.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len()).filter(|&p| self.occurs_at(pattern, p)).collect()
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        if pattern.len() > self.len() {
            return false;
        }
        (0..=self.len() - pattern.len()).any(|p| self.occurs_at(pattern, p))
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// `u < v` in shortlex order.
pub fn shortlex_less(u: &Word, v: &Word) -> bool {
    u < v
}

/// Direction in which a rule is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.as_i8())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: usize,
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    /// `(from, to)` for an application in direction `sign`.
    pub fn sides(&self, sign: Sign) -> (&Word, &Word) {
        match sign {
            Sign::Pos => (&self.lhs, &self.rhs),
            Sign::Neg => (&self.rhs, &self.lhs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    rules: Vec<Rule>,
}

impl Presentation {
    /// Builds a presentation; rule ids are assigned in order.
    pub fn new(alphabet: Alphabet, pairs: Vec<(Word, Word)>) -> Result<Self> {
        let mut rules = Vec::with_capacity(pairs.len());
        for (id, (lhs, rhs)) in pairs.into_iter().enumerate() {
            if lhs == rhs {
                return Err(Error::TrivialRule(id));
            }
            let n = alphabet.len() as Letter;
            if let Some(&bad) = lhs.letters().iter().chain(rhs.letters()).find(|&&l| l >= n) {
                return Err(Error::UnknownLetter(format!("#{bad}")));
            }
            rules.push(Rule { id, lhs, rhs });
        }
        Ok(Presentation { alphabet, rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: usize) -> &Rule {
        &self.rules[id]
    }

    pub fn max_side_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len().max(r.rhs.len())).max().unwrap_or(0)
    }

    pub fn format_rule(&self, id: usize) -> String {
        let r = &self.rules[id];
        format!("{} = {}", self.alphabet.format_word(&r.lhs), self.alphabet.format_word(&r.rhs))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet.names().join(" "))?;
        for r in &self.rules {
            writeln!(f, "rule: {}", self.format_rule(r.id))?;
        }
        Ok(())
    }
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// # comment
/// alphabet: a b
/// rule: aaaa = a
/// rule: ab = 1
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut alphabet: Option<Alphabet> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line: line_no, message };
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(format!("expected `alphabet:` or `rule:`, found `{line}`")))?;
        match key.trim() {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(syntax("alphabet declared twice".into()));
                }
                let a = Alphabet::new(rest.split_whitespace()).map_err(|e| match e {
                    Error::DuplicateLetter(_) => e,
                    other => syntax(other.to_string()),
                })?;
                alphabet = Some(a);
            }
            "rule" => {
                let a = alphabet
                    .as_ref()
                    .ok_or_else(|| syntax("rule before alphabet declaration".into()))?;
                let (l, r) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax("rule needs the form `u = v`".into()))?;
                if r.contains('=') {
                    return Err(syntax("rule has more than one `=`".into()));
                }
                let lhs = a.parse_word(l).map_err(|e| syntax(e.to_string()))?;
                let rhs = a.parse_word(r).map_err(|e| syntax(e.to_string()))?;
                if lhs == rhs {
                    return Err(syntax("rule sides are identical".into()));
                }
                pairs.push((lhs, rhs));
            }
            other => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or(Error::Syntax { line: 0, message: "missing alphabet".into() })?;
    Presentation::new(alphabet, pairs)
}

/// Replaces the occurrence of the `sign`-side of `rule` at `position` in `w`
/// by the opposite side.
pub fn apply_rule_at(w: &Word, rule: &Rule, sign: Sign, position: usize) -> Result<Word> {
    let (from, to) = rule.sides(sign);
    if !w.occurs_at(from, position) {
        return Err(Error::OccurrenceMismatch { rule: rule.id, position });
    }
    let mut v = Vec::with_capacity(w.len() + to.len() - from.len().min(w.len() + to.len()));
    v.extend_from_slice(&w.0[..position]);
    v.extend_from_slice(&to.0);
    v.extend_from_slice(&w.0[position + from.len()..]);
    Ok(Word(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic() -> Presentation {
        parse_presentation("alphabet: a\nrule: aaaa = a").unwrap()
    }

    #[test]
    fn parses_single_rule() {
        let p = cyclic();
        assert_eq!(p.alphabet.len(), 1);
        assert_eq!(p.rules().len(), 1);
        assert_eq!(p.rule(0).lhs, Word(vec![0; 4]));
        assert_eq!(p.rule(0).rhs, Word(vec![0]));
    }

    #[test]
    fn one_is_the_empty_word() {
        let p = parse_presentation("alphabet: a\nrule: aa = 1").unwrap();
        assert_eq!(p.rule(0).rhs, Word::empty());
    }

    #[test]
    fn rejects_duplicate_letters() {
        assert_eq!(parse_presentation("alphabet: a a"), Err(Error::DuplicateLetter("a".into())));
    }

    #[test]
    fn rejects_undeclared_letter_with_line_number() {
        let err = parse_presentation("# x\nalphabet: a\nrule: ab = a").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn multi_character_tokens() {
        let p = parse_presentation("alphabet: x1 y\nrule: x1 y x1 = y").unwrap();
        assert_eq!(p.rule(0).lhs, Word(vec![0, 1, 0]));
        assert_eq!(p.alphabet.format_word(&p.rule(0).lhs), "x1 y x1");
    }

    #[test]
    fn trivial_monoid() {
        let p = parse_presentation("alphabet:\n").unwrap();
        assert!(p.alphabet.is_empty());
        assert!(p.rules().is_empty());
    }

    #[test]
    fn rule_application_examples() {
        let p = cyclic();
        let a5 = Word(vec![0; 5]);
        assert_eq!(apply_rule_at(&a5, p.rule(0), Sign::Pos, 0).unwrap(), Word(vec![0; 2]));
        assert_eq!(apply_rule_at(&a5, p.rule(0), Sign::Pos, 1).unwrap(), Word(vec![0; 2]));
        let a2 = Word(vec![0; 2]);
        assert_eq!(apply_rule_at(&a2, p.rule(0), Sign::Neg, 1).unwrap(), a5);
        assert!(apply_rule_at(&a2, p.rule(0), Sign::Pos, 0).is_err());
    }

    #[test]
    fn shortlex_examples() {
        let a = Word(vec![0]);
        assert!(shortlex_less(&a, &Word(vec![0, 0])));
        assert!(shortlex_less(&Word(vec![0, 1]), &Word(vec![1, 0])));
        assert!(!shortlex_less(&a, &a));
    }

    fn word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u32..3, 0..=max_len).prop_map(Word)
    }

    proptest! {
        #[test]
        fn rule_application_is_reversible(w in word(8), pos_seed in 0usize..16) {
            let rule = Rule { id: 0, lhs: Word(vec![0, 1]), rhs: Word(vec![2]) };
            let hits = w.occurrences(&rule.lhs);
            if !hits.is_empty() {
                let pos = hits[pos_seed % hits.len()];
                let there = apply_rule_at(&w, &rule, Sign::Pos, pos).unwrap();
                let back = apply_rule_at(&there, &rule, Sign::Neg, pos).unwrap();
                prop_assert_eq!(back, w);
            }
        }

        #[test]
        fn shortlex_is_a_strict_total_order(u in word(8), v in word(8), w in word(8)) {
            let exactly_one = [shortlex_less(&u, &v), u == v, shortlex_less(&v, &u)]
                .iter().filter(|&&b| b).count();
            prop_assert_eq!(exactly_one, 1);
            if shortlex_less(&u, &v) && shortlex_less(&v, &w) {
                prop_assert!(shortlex_less(&u, &w));
            }
        }
    }
}
