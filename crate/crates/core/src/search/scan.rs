//! The conjecture harness: every canonical antichain of `B_n` yields a
//! downset instance, and, when non-trivial, an intersection instance and
//! its union counterpart.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    all_configs, check_nci, check_ncpd, check_ncpd_config, check_ncu, sperner_families, SearchError, SearchOptions,
    Verdict,
};
use crate::bridge::ncu_counterpart;
use crate::lattice::SetFamily;
use crate::subset::{Config, SubsetMask, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Nci,
    Ncpd,
    Ncu,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOptions {
    pub n: usize,
    /// Options of the main check, normally with the general-tree fallback.
    pub search: SearchOptions,
    /// Also run the polarity-constrained left-linear search.
    pub strong: bool,
    pub strong_max_states: usize,
}

impl ScanOptions {
    pub fn new(n: usize) -> ScanOptions {
        ScanOptions {
            n,
            search: SearchOptions {
                left_linear_only: false,
                ..SearchOptions::default()
            },
            strong: true,
            strong_max_states: 200_000,
        }
    }
}

/// One line of the scan log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub instance: usize,
    pub formulation: Formulation,
    pub canonical_form: String,
    pub base_size: usize,
    pub verdict: &'static str,
    pub steps: Option<usize>,
    /// Verdict of the polarity-constrained search, if it ran.
    pub strong: Option<&'static str>,
    pub millis: u64,
}

impl CheckRecord {
    /// Whether either run produced a tree.
    pub fn found(&self) -> bool {
        self.verdict == "witness" || self.strong == Some("witness")
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    pub records: Vec<CheckRecord>,
    pub instances: usize,
    /// Instances whose every check found a witness in either run.
    pub witnesses: usize,
    /// Instances with a refuted check.
    pub candidates: usize,
    /// Instances with a timed-out check and no tree from its strong run.
    pub timeouts: usize,
    /// Checks where the strong verdict differs from the weak one.
    pub strong_differs: usize,
}

impl ScanReport {
    pub fn summary(&self) -> String {
        format!(
            "{} instances, {} witnesses, {} candidates",
            self.instances, self.witnesses, self.candidates
        )
    }

    /// The log as JSON lines.
    pub fn write_jsonl(&self, mut w: impl Write) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn render(sets: &[SubsetMask]) -> String {
    let v: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn record(
    instance: usize,
    formulation: Formulation,
    form: &str,
    base_size: usize,
    weak: &Verdict,
    strong: Option<&Verdict>,
    started: Instant,
) -> CheckRecord {
    CheckRecord {
        instance,
        formulation,
        canonical_form: form.to_string(),
        base_size,
        verdict: weak.label(),
        steps: match weak {
            Verdict::Witness { steps, .. } => Some(*steps),
            _ => None,
        },
        strong: strong.map(Verdict::label),
        millis: started.elapsed().as_millis() as u64,
    }
}

fn check_instance(instance: usize, sets: &[SubsetMask], opts: &ScanOptions) -> Result<Vec<CheckRecord>, SearchError> {
    let u = Universe::numbered(opts.n)?;
    let form = render(sets);
    let strong_opts = SearchOptions {
        polarity_constrained: true,
        max_states: opts.strong_max_states,
        ..opts.search.clone()
    };
    let mut out = Vec::new();
    let started = Instant::now();
    let downset = Config::from_masks(&u, sets.iter().copied())?.downset_closure();
    let weak = check_ncpd(&downset, &opts.search)?;
    let strong = opts.strong.then(|| check_ncpd(&downset, &strong_opts)).transpose()?;
    out.push(record(
        instance,
        Formulation::Ncpd,
        &form,
        weak.catalog.len(),
        &weak.verdict,
        strong.as_ref().map(|c| &c.verdict),
        started,
    ));
    let f = SetFamily::new(&u, sets.iter().copied())?;
    if !f.is_trivial() {
        let started = Instant::now();
        let weak = check_nci(&f, &opts.search)?;
        let strong = opts.strong.then(|| check_nci(&f, &strong_opts)).transpose()?;
        out.push(record(
            instance,
            Formulation::Nci,
            &form,
            weak.catalog.len(),
            &weak.verdict,
            strong.as_ref().map(|c| &c.verdict),
            started,
        ));
        let started = Instant::now();
        // left-linear union witnesses cannot exist, so no strong run here
        let g = ncu_counterpart(&f)?;
        let weak = check_ncu(&g, &opts.search)?;
        out.push(record(
            instance,
            Formulation::Ncu,
            &form,
            weak.catalog.len(),
            &weak.verdict,
            None,
            started,
        ));
    }
    Ok(out)
}

/// Checks every canonical antichain of `B_n`. Records are in instance
/// order whatever the thread count.
pub fn scan(opts: &ScanOptions) -> Result<ScanReport, SearchError> {
    let families = sperner_families(opts.n);
    let per: Vec<Vec<CheckRecord>> = families
        .par_iter()
        .enumerate()
        .map(|(i, sets)| check_instance(i, sets, opts))
        .collect::<Result<_, _>>()?;
    let mut report = ScanReport {
        instances: per.len(),
        ..ScanReport::default()
    };
    for recs in per {
        if recs.iter().all(CheckRecord::found) {
            report.witnesses += 1;
        }
        if recs.iter().any(|r| r.verdict == "refuted") {
            report.candidates += 1;
        }
        if recs.iter().any(|r| !r.found() && r.verdict == "timeout") {
            report.timeouts += 1;
        }
        report.strong_differs += recs.iter().filter(|r| r.strong.is_some_and(|s| s != r.verdict)).count();
        report.records.extend(recs);
    }
    Ok(report)
}

/// The first configuration of `B_n`, in bit order, that is not built from
/// the principal downsets of its nonzero generalised Möbius values.
pub fn non_downset_counterexample(n: usize) -> Result<Option<Config>, SearchError> {
    let opts = SearchOptions {
        left_linear_only: false,
        ..SearchOptions::default()
    };
    for c in all_configs(n) {
        if let Verdict::Refuted { .. } = check_ncpd_config(&c, &opts)?.verdict {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn three_elements() {
        let r = scan(&ScanOptions::new(3)).unwrap();
        assert_eq!(r.summary(), "10 instances, 10 witnesses, 0 candidates");
        assert_eq!(r.timeouts, 0);
    }

    #[test]
    fn log_lines() {
        let r = scan(&ScanOptions::new(2)).unwrap();
        let mut buf = Vec::new();
        r.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), r.records.len());
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        for key in ["instance", "canonical_form", "base_size", "verdict", "steps", "millis"] {
            assert!(first.get(key).is_some(), "{key}");
        }
    }

    /// Everything built from `base` by disjoint unions and complements of
    /// subsets, configurations of `B_4` as 16-bit words.
    fn closure_oracle(base: &[u16]) -> HashSet<u16> {
        let mut seen: HashSet<u16> = base.iter().copied().chain([0]).collect();
        let mut list: Vec<u16> = seen.iter().copied().collect();
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for j in 0..=i {
                let b = list[j];
                let mut found = Vec::new();
                if a & b == 0 {
                    found.push(a | b);
                }
                if b & !a == 0 {
                    found.push(a & !b);
                }
                if a & !b == 0 {
                    found.push(b & !a);
                }
                for x in found {
                    if seen.insert(x) {
                        list.push(x);
                    }
                }
            }
            i += 1;
        }
        seen
    }

    #[test]
    fn downset_restriction_matters() {
        let u = Universe::numbered(4).unwrap();
        let words = ["", "0", "1", "02", "13", "023", "123", "0123"];
        let masks: Vec<SubsetMask> = words
            .iter()
            .map(|w| u.mask_of(&w.chars().map(String::from).collect::<Vec<_>>()).unwrap())
            .collect();
        let c = Config::from_masks(&u, masks.iter().copied()).unwrap();
        assert!(!c.is_downset());
        let opts = SearchOptions {
            left_linear_only: false,
            ..SearchOptions::default()
        };
        assert!(matches!(
            check_ncpd_config(&c, &opts).unwrap().verdict,
            Verdict::Refuted { .. }
        ));

        let word = |ms: &mut dyn Iterator<Item = u32>| ms.fold(0u16, |w, m| w | 1 << m);
        let target = word(&mut masks.iter().map(|m| m.0));
        let mu = |x: u32| -> i64 {
            (0..16u32)
                .filter(|&y| y & x == x && target >> y & 1 == 1)
                .map(|y| {
                    if (y.count_ones() - x.count_ones()).is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        };
        let base: Vec<u16> = (0..16u32)
            .filter(|&x| mu(x) != 0)
            .map(|x| word(&mut (0..16u32).filter(|&y| y & x == y)))
            .collect();
        assert!(!base.is_empty());
        assert!(!closure_oracle(&base).contains(&target));
        assert_eq!(non_downset_counterexample(3).unwrap(), None);
    }
}
