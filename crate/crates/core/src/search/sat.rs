//! Left-linear witnesses as propositional satisfiability: one-hot step
//! choices, per-atom state bits after every step, and optional exact leaf
//! counts through sequential counters.

use std::fmt::Write;

use varisat::{ExtendFormula, Lit, Solver};

use super::{
    closure_search, encode, finish, steps_to_tree, Clock, Encoded, Outcome, SearchError, SearchOptions, Verdict,
};
use crate::expr::{BaseCatalog, Sign};
use crate::subset::AtomSet;

/// A formula in conjunctive normal form with DIMACS-style literals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub comments: Vec<String>,
}

impl Cnf {
    fn fresh(&mut self) -> i32 {
        self.vars += 1;
        self.vars as i32
    }

    fn add(&mut self, c: &[i32]) {
        self.clauses.push(c.to_vec());
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "c {c}");
        }
        let _ = writeln!(s, "p cnf {} {}", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{l} ");
            }
            s.push_str("0\n");
        }
        s
    }
}

struct Choice {
    var: i32,
    leaf: usize,
    sign: Sign,
}

struct Encoding {
    cnf: Cnf,
    steps: Vec<Vec<Choice>>,
}

/// `k` steps; weak mode allows idle steps (only after real ones) and both
/// signs, strong mode fixes signs and counts.
fn build(enc: &Encoded, k: usize, strong: Option<&[i64]>) -> Encoding {
    let mut cnf = Cnf::default();
    let truth = cnf.fresh();
    cnf.add(&[truth]);
    let options: Vec<(usize, Sign)> = match strong {
        Some(m) => m
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .map(|(j, &x)| (j, if x < 0 { Sign::Minus } else { Sign::Plus }))
            .collect(),
        None => enc
            .base
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b != 0)
            .flat_map(|(j, _)| [(j, Sign::Plus), (j, Sign::Minus)])
            .collect(),
    };
    let mut state: Vec<i32> = (0..enc.atoms).map(|_| cnf.fresh()).collect();
    for &x in &state {
        cnf.add(&[-x]);
    }
    let mut steps = Vec::new();
    let mut idles: Vec<i32> = Vec::new();
    for t in 0..k {
        let next: Vec<i32> = (0..enc.atoms).map(|_| cnf.fresh()).collect();
        let mut choices: Vec<Choice> = options
            .iter()
            .map(|&(leaf, sign)| Choice {
                var: cnf.fresh(),
                leaf,
                sign,
            })
            .collect();
        for c in &choices {
            cnf.comments.push(format!(
                "choice {} step {t} leaf {} {}",
                c.var,
                c.leaf,
                if c.sign == Sign::Plus { "+" } else { "-" }
            ));
        }
        let mut one_of: Vec<i32> = choices.iter().map(|c| c.var).collect();
        if strong.is_none() {
            let idle = cnf.fresh();
            if let Some(&prev) = idles.last() {
                cnf.add(&[-prev, idle]);
            }
            idles.push(idle);
            one_of.push(idle);
            for a in 0..enc.atoms {
                cnf.add(&[-idle, -state[a], next[a]]);
                cnf.add(&[-idle, state[a], -next[a]]);
            }
        }
        cnf.add(&one_of);
        for i in 0..one_of.len() {
            for j in i + 1..one_of.len() {
                cnf.add(&[-one_of[i], -one_of[j]]);
            }
        }
        for c in &choices {
            let b = enc.base[c.leaf];
            for a in 0..enc.atoms {
                let (before, after) = (state[a], next[a]);
                if b >> a & 1 == 1 {
                    let (pre, post) = match c.sign {
                        Sign::Plus => (-before, after),
                        Sign::Minus => (before, -after),
                    };
                    cnf.add(&[-c.var, pre]);
                    cnf.add(&[-c.var, post]);
                } else {
                    cnf.add(&[-c.var, -before, after]);
                    cnf.add(&[-c.var, before, -after]);
                }
            }
        }
        state = next;
        steps.push(std::mem::take(&mut choices));
    }
    for (a, &x) in state.iter().enumerate() {
        cnf.add(&[if enc.target >> a & 1 == 1 { x } else { -x }]);
    }
    if let Some(m) = strong {
        for (j, &x) in m.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let lits: Vec<i32> = steps
                .iter()
                .flat_map(|s| s.iter().filter(|c| c.leaf == j).map(|c| c.var))
                .collect();
            exactly(&mut cnf, truth, &lits, x.unsigned_abs() as usize);
        }
    }
    Encoding { cnf, steps }
}

/// Sequential counter: `s[j]` after literal `i` holds iff at least `j` of
/// the first `i` literals hold.
fn exactly(cnf: &mut Cnf, truth: i32, lits: &[i32], k: usize) {
    let mut prev: Vec<i32> = (0..=k + 1).map(|j| if j == 0 { truth } else { -truth }).collect();
    for &l in lits {
        let mut cur = vec![truth];
        for j in 1..=k + 1 {
            let s = cnf.fresh();
            cnf.add(&[-prev[j], s]);
            cnf.add(&[-l, -prev[j - 1], s]);
            cnf.add(&[-s, prev[j], l]);
            cnf.add(&[-s, prev[j], prev[j - 1]]);
            cur.push(s);
        }
        prev = cur;
    }
    cnf.add(&[prev[k]]);
    cnf.add(&[-prev[k + 1]]);
}

fn step_count(strong: Option<&[i64]>, max_steps: usize) -> usize {
    match strong {
        Some(m) => m.iter().map(|x| x.unsigned_abs() as usize).sum(),
        None => max_steps,
    }
}

fn prepare<T: AtomSet>(
    base: &BaseCatalog<T>,
    target: &T,
    multiplicities: Option<&[i64]>,
    opts: &SearchOptions,
) -> Result<(Encoding, usize), SearchError> {
    let enc = encode(base, target)?;
    let strong = if opts.polarity_constrained {
        Some(
            multiplicities
                .filter(|m| m.len() == base.len())
                .ok_or(SearchError::MissingMultiplicities)?,
        )
    } else {
        None
    };
    let max_steps = opts.steps_for(target.len(), base.len());
    let k = step_count(strong, max_steps);
    Ok((build(&enc, k, strong), max_steps))
}

/// The formula whose models are the left-linear witnesses.
pub fn emit_cnf<T: AtomSet>(
    base: &BaseCatalog<T>,
    target: &T,
    multiplicities: Option<&[i64]>,
    opts: &SearchOptions,
) -> Result<Cnf, SearchError> {
    Ok(prepare(base, target, multiplicities, opts)?.0.cnf)
}

/// Solves the encoding with the bundled solver. Agrees with the
/// exhaustive search on whether a left-linear witness exists; the
/// general-tree fallback is shared with it.
pub fn sat_witness<T: AtomSet>(
    base: &BaseCatalog<T>,
    target: &T,
    multiplicities: Option<&[i64]>,
    opts: &SearchOptions,
) -> Result<Verdict, SearchError> {
    let (encoding, max_steps) = prepare(base, target, multiplicities, opts)?;
    let mut solver = Solver::new();
    for c in &encoding.cnf.clauses {
        let lits: Vec<Lit> = c.iter().map(|&l| Lit::from_dimacs(l as isize)).collect();
        solver.add_clause(&lits);
    }
    let sat = solver
        .solve()
        .map_err(|e| SearchError::Invalid(format!("solver failed: {e}")))?;
    let outcome = if sat {
        let mut value = vec![false; encoding.cnf.vars + 1];
        for l in solver.model().unwrap_or_default() {
            value[l.var().to_dimacs() as usize] = l.is_positive();
        }
        let steps: Vec<(Sign, usize)> = encoding
            .steps
            .iter()
            .filter_map(|s| s.iter().find(|c| value[c.var as usize]).map(|c| (c.sign, c.leaf)))
            .collect();
        Outcome::Found(steps_to_tree(&steps))
    } else if !opts.polarity_constrained && !opts.left_linear_only {
        let enc = encode(base, target)?;
        closure_search(&enc, opts.max_states, &Clock::new(opts.time_budget))
    } else {
        Outcome::Refuted
    };
    finish(outcome, base, target, max_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SetFamily;
    use crate::search::{check_nci, exhaustive_witness, Engine};
    use crate::subset::SubsetMask;

    fn sat() -> SearchOptions {
        SearchOptions {
            engine: Engine::Sat,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn single_entry_is_one_step() {
        let base = BaseCatalog::new(SubsetMask::EMPTY, vec![SubsetMask(0b101)]);
        let v = sat_witness(&base, &SubsetMask(0b101), None, &sat()).unwrap();
        assert_eq!(
            v,
            Verdict::Witness {
                tree: crate::expr::WitnessTree::Leaf(0),
                steps: 1
            }
        );
    }

    #[test]
    fn unsatisfiable_small_bound() {
        let base = BaseCatalog::new(SubsetMask::EMPTY, vec![SubsetMask(0b11)]);
        for k in 1..=4 {
            let opts = SearchOptions {
                max_steps: Some(k),
                ..sat()
            };
            let v = sat_witness(&base, &SubsetMask(0b01), None, &opts).unwrap();
            assert_eq!(v, Verdict::Refuted { max_steps: k });
        }
    }

    #[test]
    fn agrees_with_exhaustive_on_samples() {
        for f in [
            crate::samples::l2(),
            crate::samples::l3(),
            crate::samples::l4(),
            crate::samples::three_sets(),
        ] {
            for strong in [false, true] {
                let base = SearchOptions {
                    polarity_constrained: strong,
                    ..SearchOptions::default()
                };
                let a = check_nci(&f, &base).unwrap();
                let b = check_nci(
                    &f,
                    &SearchOptions {
                        engine: Engine::Sat,
                        ..base.clone()
                    },
                )
                .unwrap();
                assert_eq!(a.verdict.label(), b.verdict.label());
            }
        }
    }

    #[test]
    fn bounded_steps_match() {
        let f = SetFamily::from_words(&["ab", "ac", "bc", "d"]).unwrap();
        let (c, t, _) = crate::search::nci_instance(&f).unwrap();
        for k in 1..=6 {
            let opts = SearchOptions {
                max_steps: Some(k),
                ..SearchOptions::default()
            };
            let a = exhaustive_witness(&c, &t, None, &opts).unwrap();
            let b = sat_witness(&c, &t, None, &opts).unwrap();
            assert_eq!(a.label(), b.label(), "k = {k}");
        }
    }

    #[test]
    fn dimacs_header() {
        let base = BaseCatalog::new(SubsetMask::EMPTY, vec![SubsetMask(0b1)]);
        let cnf = emit_cnf(&base, &SubsetMask(0b1), None, &SearchOptions::default()).unwrap();
        let text = cnf.to_dimacs();
        assert!(text.contains(&format!("p cnf {} {}", cnf.vars, cnf.clauses.len())));
        assert_eq!(text.lines().filter(|l| l.ends_with(" 0")).count(), cnf.clauses.len());
    }
}
