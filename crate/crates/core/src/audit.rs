//! Randomized and exhaustive checks of the identities the construction
//! relies on, and endpoint audits of every path builder.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::schutz::{SchutzData, SchutzPresentation};
use crate::squier::base::HomotopyBase;
use crate::squier::canonical::CanonicalPaths;
use crate::squier::graph::DGEdge;
use crate::squier::phi::{check_conditions, phi_edge};
use crate::squier::search::neighbours;
use crate::words::{Sign, Word};

pub const SEED_VAR: &str = "SCHUTZEN_SEED";
const DEFAULT_SEED: u64 = 0x5eed;

/// Seed from `SCHUTZEN_SEED`, or a fixed default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_env() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_failure: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.to_string(), instances: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Adds the counts of `other` into checks of the same name.
    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            match self.checks.iter_mut().find(|x| x.name == c.name) {
                Some(x) => {
                    x.instances += c.instances;
                    x.failures += c.failures;
                    if x.first_failure.is_none() {
                        x.first_failure = c.first_failure;
                    }
                }
                None => self.checks.push(c),
            }
        }
    }
}

fn random_word(rng: &mut impl Rng, letters: usize, max_len: usize) -> Word {
    if letters == 0 {
        return Word::empty();
    }
    let n = rng.gen_range(0..=max_len);
    Word((0..n).map(|_| rng.gen_range(0..letters) as u32).collect())
}

fn all_words(letters: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = frontier
            .iter()
            .flat_map(|w| (0..letters as u32).map(move |c| w.concat(&Word::letter(c))))
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn names(d: &SchutzData, w: &Word) -> String {
    d.monoid.alphabet().format_word(w)
}

/// The per-instance identities, one function per check so that random and
/// exhaustive drivers share them.
struct Lemmas<'d, 'a> {
    d: &'d SchutzData<'a>,
    checks: [Check; 7],
}

impl<'d, 'a> Lemmas<'d, 'a> {
    fn new(d: &'d SchutzData<'a>) -> Self {
        Lemmas {
            d,
            checks: [
                Check::new("phi splits over concatenation"),
                Check::new("h psi phi equals h p w p'"),
                Check::new("kappa splits over concatenation"),
                Check::new("w r_j equals r_(w*j) kappa"),
                Check::new("h psi equals pi h"),
                Check::new("pi fixes omega"),
                Check::new("relations hold in S"),
            ],
        }
    }

    fn phi_split(&mut self, lambda: usize, w1: &Word, w2: &Word) {
        let d = self.d;
        let w = w1.concat(w2);
        if d.lambda.act_word(lambda, &w).is_none() {
            return;
        }
        let mid = d.lambda.act_word(lambda, w1).expect("prefix of a surviving word survives");
        let ok = match (d.phi(lambda, &w), d.phi(lambda, w1), d.phi(mid, w2)) {
            (Ok(x), Ok(y), Ok(z)) => x == y.concat(&z),
            _ => false,
        };
        let text = || format!("λ={}, w1={}, w2={}", lambda + 1, names(d, w1), names(d, w2));
        self.checks[0].record(ok, text);
    }

    fn phi_psi(&mut self, lambda: usize, w: &Word) {
        let d = self.d;
        let Some(end) = d.lambda.act_word(lambda, w) else { return };
        let u = d.universe();
        let ok = d.phi(lambda, w).is_ok_and(|b| {
            let lhs = u.act_right(d.h_element(), &d.psi(&b));
            let rhs = u.act_right(d.h_element(), &w.wrap(&d.p[lambda], &d.p_prime[end]));
            lhs == rhs
        });
        let text = || format!("λ={}, w={}", lambda + 1, names(d, w));
        self.checks[1].record(ok, text);
    }

    fn kappa_split(&mut self, j: usize, w1: &Word, w2: &Word) {
        let d = self.d;
        let Some(w2j) = d.star.act_word(w2, j) else { return };
        if d.star.act_word(w1, w2j).is_none() {
            return;
        }
        let ok = match (d.kappa(&w1.concat(w2), j), d.kappa(w1, w2j), d.kappa(w2, j)) {
            (Ok(x), Ok(y), Ok(z)) => x == y.concat(&z),
            _ => false,
        };
        let text = || format!("j={}, w1={}, w2={}", d.star.label(j), names(d, w1), names(d, w2));
        self.checks[2].record(ok, text);
    }

    fn kappa_value(&mut self, j: usize, w: &Word) {
        let d = self.d;
        let Some(wj) = d.star.act_word(w, j) else { return };
        let u = d.universe();
        let ok = d.kappa(w, j).is_ok_and(|k| {
            u.element_of(&w.concat(d.star.rep(j))) == u.element_of(&d.star.rep(wj).concat(&k))
        });
        let text = || format!("j={}, w={}", d.star.label(j), names(d, w));
        self.checks[3].record(ok, text);
    }

    fn psi_pi(&mut self, w: &Word) {
        let d = self.d;
        let u = d.universe();
        let ok = u.act_right(d.h_element(), &d.psi(w)) == u.element_of(&d.pi(w).concat(&d.h));
        let text = || format!("w={}", d.b_alphabet.format_word(w));
        self.checks[4].record(ok, text);
    }

    fn pi_omega(&mut self, w: &Word) {
        let d = self.d;
        let pw = d.pi(w);
        let omega = d.star.omega;
        let ok = d.star.act_word(&pw, omega) == Some(omega)
            && d.kappa(&pw, omega).is_ok_and(|k| d.lambda.act_word(0, &k) == Some(0));
        let text = || format!("w={}", d.b_alphabet.format_word(w));
        self.checks[5].record(ok, text);
    }

    fn relations(&mut self, q: &SchutzPresentation) {
        for r in q.relations.iter().chain(&q.trivial) {
            let ok = self.d.verify_relation(&r.lhs, &r.rhs);
            let text = || format!("{} = {}", q.alphabet().format_word(&r.lhs), q.alphabet().format_word(&r.rhs));
            self.checks[6].record(ok, text);
        }
    }

    fn report(self) -> Report {
        Report { checks: self.checks.into() }
    }
}

/// A random word `w` of length at most `max_len` with `λ·w` defined.
fn word_surviving_lambda(rng: &mut impl Rng, d: &SchutzData, lambda: usize, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    let mut out = Vec::with_capacity(n);
    let mut l = lambda;
    for _ in 0..n {
        let alive: Vec<u32> = d.monoid.alphabet().letters().filter(|&a| d.lambda.act(l, a).is_some()).collect();
        if alive.is_empty() {
            break;
        }
        let a = alive[rng.gen_range(0..alive.len())];
        l = d.lambda.act(l, a).expect("filtered");
        out.push(a);
    }
    Word(out)
}

/// A random word `w` of length at most `max_len` with `w ∗ j` defined,
/// grown from the right.
fn word_surviving_star(rng: &mut impl Rng, d: &SchutzData, j: usize, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    let mut out = Vec::with_capacity(n);
    let mut i = j;
    for _ in 0..n {
        let alive: Vec<u32> = d.monoid.alphabet().letters().filter(|&a| d.star.act(a, i).is_some()).collect();
        if alive.is_empty() {
            break;
        }
        let a = alive[rng.gen_range(0..alive.len())];
        i = d.star.act(a, i).expect("filtered");
        out.push(a);
    }
    out.reverse();
    Word(out)
}

/// `samples` random instances of each identity, words of length up to 8.
/// Words are drawn so that every instance is defined.
pub fn lemma_suite(d: &SchutzData, q: &SchutzPresentation, rng: &mut impl Rng, samples: usize) -> Report {
    let nb = d.b_alphabet.len();
    let nl = d.lambda.len();
    let js = &d.star.j_ids;
    let mut l = Lemmas::new(d);
    for _ in 0..samples {
        let lambda = rng.gen_range(0..nl);
        let w = word_surviving_lambda(rng, d, lambda, 8);
        let k = rng.gen_range(0..=w.len());
        l.phi_split(lambda, &w.prefix(k), &w.suffix_from(k));
        l.phi_psi(lambda, &w);

        let j = js[rng.gen_range(0..js.len())];
        let w = word_surviving_star(rng, d, j, 8);
        let k = rng.gen_range(0..=w.len());
        l.kappa_split(j, &w.prefix(k), &w.suffix_from(k));
        l.kappa_value(j, &w);

        let wb = random_word(rng, nb, 8);
        l.psi_pi(&wb);
        l.pi_omega(&wb);
    }
    l.relations(q);
    l.report()
}

/// Every instance with words of length at most `max_len` (split points
/// included for the concatenation identities).
pub fn exhaustive_lemma_suite(d: &SchutzData, q: &SchutzPresentation, max_len: usize) -> Report {
    let words = all_words(d.monoid.alphabet().len(), max_len);
    let b_words = all_words(d.b_alphabet.len(), max_len);
    let mut l = Lemmas::new(d);
    for w in &words {
        for lambda in 0..d.lambda.len() {
            l.phi_psi(lambda, w);
            for k in 0..=w.len() {
                l.phi_split(lambda, &w.prefix(k), &w.suffix_from(k));
            }
        }
        for j in 0..d.star.len() {
            l.kappa_value(j, w);
            for k in 0..=w.len() {
                l.kappa_split(j, &w.prefix(k), &w.suffix_from(k));
            }
        }
    }
    for w in &b_words {
        l.psi_pi(w);
        l.pi_omega(w);
    }
    l.relations(q);
    l.report()
}

/// Endpoint contracts of φ on edges, θ, Λ_w and z, and closedness of
/// every base member.
pub fn path_audit(cp: &CanonicalPaths, y: &HomotopyBase, rng: &mut impl Rng, samples: usize) -> Result<Report> {
    let d = cp.d;
    let q = cp.q;
    let qp = &q.presentation;
    let nb = d.b_alphabet.len();
    let mut phi_check = Check::new("phi edge endpoints");
    let mut theta_check = Check::new("theta endpoints");
    let mut lambda_check = Check::new("Lambda endpoints");
    let mut z_check = Check::new("z paths closed");
    let mut base_check = Check::new("base members closed");

    // φ on random edges out of words that survive the index action
    let mut attempts = 0;
    while phi_check.instances < samples && attempts < 50 * samples {
        attempts += 1;
        let j = d.star.j_ids[rng.gen_range(0..d.star.j_ids.len())];
        let lambda = rng.gen_range(0..d.lambda.len());
        let w = word_surviving_star(rng, d, j, 7);
        let out = neighbours(d.pres, &w);
        if out.is_empty() || check_conditions(d, lambda, &w, j).is_err() {
            continue;
        }
        let (f, _) = &out[rng.gen_range(0..out.len())];
        let (iota, tau) = f.endpoints(d.pres);
        let want = (d.phi(lambda, &d.kappa(&iota, j)?)?, d.phi(lambda, &d.kappa(&tau, j)?)?);
        let ok = match phi_edge(d, q, lambda, f, j)? {
            Some(e) => e.endpoints(qp) == want && phi_edge(d, q, lambda, &f.inverse(), j)? == Some(e.inverse()),
            None => want.0 == want.1,
        };
        phi_check.record(ok, || format!("edge {f:?}, λ={}, j={}", lambda + 1, d.star.label(j)));
    }

    for _ in 0..samples {
        let wb = random_word(rng, nb, 4);
        let lw = cp.lambda_path(&wb)?;
        let want = d.phi(0, &d.kappa(&d.pi(&wb).concat(&d.h), d.star.eta)?)?;
        let ok = lw.start() == &wb && lw.end() == &want && lw.validate(qp).is_ok();
        lambda_check.record(ok, || format!("w={}", q.alphabet().format_word(&wb)));

        if !q.relations.is_empty() {
            let e = DGEdge::new(
                random_word(rng, nb, 3),
                rng.gen_range(0..q.relations.len()),
                if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg },
                random_word(rng, nb, 3),
            );
            let (iota, tau) = e.endpoints(qp);
            let t = cp.theta(&e)?;
            let ok = t.start() == &d.pi(&iota).concat(&d.h)
                && t.end() == &d.pi(&tau).concat(&d.h)
                && t.validate(d.pres).is_ok();
            theta_check.record(ok, || format!("edge {e:?}"));
            let z = cp.z_path(&e)?;
            let ok = z.is_closed() && z.start() == &iota && z.validate(qp).is_ok();
            z_check.record(ok, || format!("edge {e:?}"));
        }
    }

    for m in &y.members {
        let ok = m.path.is_closed() && m.path.validate(qp).is_ok();
        base_check.record(ok, || format!("{} {}", m.provenance, m.label));
    }

    Ok(Report { checks: vec![phi_check, theta_check, lambda_check, z_check, base_check] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schutz::tests::monoid;
    use crate::schutz::{build_presentation, choose_representatives};

    #[test]
    fn cyclic_example_passes() {
        let m = monoid("alphabet: a\nrule: aaaa = a");
        let h = m.h_class_of(&Word(vec![0]));
        let d = choose_representatives(&m, &m.presentation, h, &Word::empty()).unwrap();
        let q = build_presentation(&d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = lemma_suite(&d, &q, &mut rng, 200);
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.instances > 0), "{r:?}");
        let r = exhaustive_lemma_suite(&d, &q, 6);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn corrupted_kappa_is_caught() {
        let m = monoid("alphabet: a\nrule: aaaa = a");
        let h = m.h_class_of(&Word(vec![0]));
        let mut d = choose_representatives(&m, &m.presentation, h, &Word::empty()).unwrap();
        assert!(d.corrupt_kappa());
        let q = build_presentation(&d).unwrap();
        let r = exhaustive_lemma_suite(&d, &q, 6);
        assert!(!r.passed());
        assert!(r.get("w r_j equals r_(w*j) kappa").unwrap().failures > 0);
    }

    #[test]
    fn merge_adds_counts() {
        let mut a = Report { checks: vec![Check { name: "x".into(), instances: 2, failures: 0, first_failure: None }] };
        a.merge(Report {
            checks: vec![Check { name: "x".into(), instances: 3, failures: 1, first_failure: Some("y".into()) }],
        });
        assert_eq!(a.checks[0].instances, 5);
        assert_eq!(a.failures(), 1);
        assert_eq!(a.checks[0].first_failure.as_deref(), Some("y"));
    }
}
