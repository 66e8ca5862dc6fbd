//! Rewriting configurations by adding and removing adjacent pairs
//! `{X, X ∖ {x}}`, which preserves the Euler characteristic.

use super::ConstructError;
use crate::expr::Sign;
use crate::subset::{Config, SubsetMask, Universe};

/// The pair `{upper, upper ∖ {element}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjacentPair {
    pub upper: SubsetMask,
    pub element: usize,
}

impl AdjacentPair {
    /// The pair formed by two hypercube neighbours.
    pub fn of(a: SubsetMask, b: SubsetMask) -> Option<AdjacentPair> {
        let d = a.0 ^ b.0;
        if d.count_ones() != 1 {
            return None;
        }
        Some(AdjacentPair {
            upper: a.union(b),
            element: d.trailing_zeros() as usize,
        })
    }

    pub fn lower(&self) -> SubsetMask {
        self.upper.without(self.element)
    }

    pub fn members(&self) -> [SubsetMask; 2] {
        [self.lower(), self.upper]
    }

    pub fn to_config(&self, u: &std::sync::Arc<Universe>) -> Config {
        Config::from_masks(u, self.members()).expect("pair inside the universe")
    }

    pub fn render(&self, u: &Universe) -> String {
        format!("{{{}, {}}}", u.render(self.lower()), u.render(self.upper))
    }
}

/// A start configuration and signed pair steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: Config,
    pub steps: Vec<(Sign, AdjacentPair)>,
}

impl RewriteTrace {
    pub fn new(start: Config) -> RewriteTrace {
        RewriteTrace {
            start,
            steps: Vec::new(),
        }
    }

    /// Every intermediate configuration, starting with `start`.
    pub fn replay(&self) -> Result<Vec<Config>, ConstructError> {
        let mut cur = self.start.clone();
        let mut out = vec![cur.clone()];
        for (k, (sign, p)) in self.steps.iter().enumerate() {
            for m in p.members() {
                let present = cur.contains(m);
                match sign {
                    Sign::Plus if present => {
                        return Err(ConstructError::InvalidStep {
                            step: k,
                            reason: format!("{} already present", cur.universe().render(m)),
                        })
                    }
                    Sign::Minus if !present => {
                        return Err(ConstructError::InvalidStep {
                            step: k,
                            reason: format!("{} absent", cur.universe().render(m)),
                        })
                    }
                    _ => {}
                }
                if *sign == Sign::Plus {
                    cur.insert(m);
                } else {
                    cur.remove(m);
                }
            }
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<Config, ConstructError> {
        Ok(self.replay()?.pop().expect("at least the start"))
    }

    /// The same steps backwards, with signs flipped, from `end`.
    pub fn reversed(&self) -> Result<RewriteTrace, ConstructError> {
        Ok(RewriteTrace {
            start: self.end()?,
            steps: self.steps.iter().rev().map(|&(s, p)| (s.flip(), p)).collect(),
        })
    }

    fn add(&mut self, a: SubsetMask, b: SubsetMask) {
        self.steps.push((Sign::Plus, AdjacentPair::of(a, b).expect("adjacent")));
    }

    fn remove(&mut self, a: SubsetMask, b: SubsetMask) {
        self.steps
            .push((Sign::Minus, AdjacentPair::of(a, b).expect("adjacent")));
    }
}

fn check_path(c: &Config, path: &[SubsetMask]) -> Result<(), ConstructError> {
    if path.len() < 2 {
        return Err(ConstructError::BadPath("path needs two endpoints".into()));
    }
    let full = c.universe().full_mask();
    for (k, w) in path.windows(2).enumerate() {
        if AdjacentPair::of(w[0], w[1]).is_none() {
            return Err(ConstructError::BadPath(format!(
                "steps {k} and {} are not adjacent",
                k + 1
            )));
        }
    }
    for (k, x) in path.iter().enumerate() {
        if !x.is_subset(full) {
            return Err(ConstructError::BadPath("node outside the universe".into()));
        }
        if path[..k].contains(x) {
            return Err(ConstructError::BadPath("path is not simple".into()));
        }
    }
    if path[1..path.len() - 1].iter().any(|&x| c.contains(x)) {
        return Err(ConstructError::BadPath(
            "an interior node is in the configuration".into(),
        ));
    }
    Ok(())
}

/// Removes both endpoints of an odd-length path (an even number of
/// interior nodes).
pub fn erase(c: &Config, path: &[SubsetMask]) -> Result<RewriteTrace, ConstructError> {
    check_path(c, path)?;
    if !path.len().is_multiple_of(2) {
        return Err(ConstructError::BadPath(
            "erasing needs an even number of interior nodes".into(),
        ));
    }
    let (first, last) = (path[0], path[path.len() - 1]);
    if !c.contains(first) || !c.contains(last) {
        return Err(ConstructError::BadPath(
            "both endpoints must be in the configuration".into(),
        ));
    }
    let i = (path.len() - 2) / 2;
    let mut t = RewriteTrace::new(c.clone());
    for j in 0..i {
        t.add(path[2 * j + 1], path[2 * j + 2]);
        t.remove(path[2 * j], path[2 * j + 1]);
    }
    t.remove(path[2 * i], path[2 * i + 1]);
    Ok(t)
}

/// Moves the first endpoint of an even-length path to the last one.
pub fn teleport(c: &Config, path: &[SubsetMask]) -> Result<RewriteTrace, ConstructError> {
    check_path(c, path)?;
    if path.len() % 2 != 1 {
        return Err(ConstructError::BadPath(
            "teleporting needs an odd number of interior nodes".into(),
        ));
    }
    let (first, last) = (path[0], path[path.len() - 1]);
    if !c.contains(first) || c.contains(last) {
        return Err(ConstructError::BadPath("start must be present and end absent".into()));
    }
    let mut t = RewriteTrace::new(c.clone());
    for j in 0..(path.len() - 1) / 2 {
        t.add(path[2 * j + 1], path[2 * j + 2]);
        t.remove(path[2 * j], path[2 * j + 1]);
    }
    Ok(t)
}

/// Two members of `c` of opposite parity joined by a path in `g` whose
/// interior avoids `c`. Returns the endpoints and the path.
pub fn fetch(g: &Config, c: &Config) -> Result<(SubsetMask, SubsetMask, Vec<SubsetMask>), ConstructError> {
    if !c.is_subset_of(g) {
        return Err(ConstructError::NotContained);
    }
    let members = c.members();
    let Some(&a) = members.first() else {
        return Err(ConstructError::AllSameParity);
    };
    let parity = a.len() % 2;
    let Some(&b) = members.iter().find(|m| m.len() % 2 != parity) else {
        return Err(ConstructError::AllSameParity);
    };
    let path = g.shortest_path(a, b).ok_or(ConstructError::Disconnected)?;
    let k1 = (0..path.len())
        .rev()
        .find(|&j| path[j].len() % 2 == parity && c.contains(path[j]))
        .expect("start qualifies");
    let k2 = (k1 + 1..path.len())
        .find(|&j| path[j].len() % 2 != parity && c.contains(path[j]))
        .expect("end qualifies");
    let sub = path[k1..=k2].to_vec();
    Ok((sub[0], sub[sub.len() - 1], sub))
}

fn reduce(g: &Config, c: &Config) -> Result<RewriteTrace, ConstructError> {
    let mut trace = RewriteTrace::new(c.clone());
    let mut cur = c.clone();
    while cur.count() as i64 != cur.euler().abs() {
        let (_, _, path) = fetch(g, &cur)?;
        let step = erase(&cur, &path)?;
        cur = step.end()?;
        trace.steps.extend(step.steps);
    }
    Ok(trace)
}

/// Pair steps inside `g` turning `c1` into `c2`. Both sides are first
/// reduced by erasing opposite-parity pairs; the leftovers are then matched
/// by chains of teleports along shortest paths.
pub fn eul_equiv_steps(g: &Config, c1: &Config, c2: &Config) -> Result<RewriteTrace, ConstructError> {
    if !c1.is_subset_of(g) || !c2.is_subset_of(g) {
        return Err(ConstructError::NotContained);
    }
    if c1.euler() != c2.euler() {
        return Err(ConstructError::EulerMismatch(c1.euler(), c2.euler()));
    }
    let first = reduce(g, c1)?;
    let second = reduce(g, c2)?;
    let target = second.end()?;
    let mut cur = first.end()?;
    let mut trace = first;
    while cur != target {
        let x = *cur
            .members()
            .iter()
            .find(|&&m| !target.contains(m))
            .expect("sizes agree");
        let y = *target
            .members()
            .iter()
            .find(|&&m| !cur.contains(m))
            .expect("sizes agree");
        let path = g.shortest_path(x, y).ok_or(ConstructError::Disconnected)?;
        let k1 = (0..path.len())
            .rev()
            .find(|&j| cur.contains(path[j]) && !target.contains(path[j]))
            .expect("x qualifies");
        let k2 = (k1 + 1..path.len())
            .find(|&j| target.contains(path[j]) && !cur.contains(path[j]))
            .expect("y qualifies");
        let mut stops: Vec<usize> = vec![k1];
        stops.extend((k1 + 1..k2).filter(|&j| cur.contains(path[j])));
        stops.push(k2);
        for w in stops.windows(2).rev() {
            let step = teleport(&cur, &path[w[0]..=w[1]])?;
            cur = step.end()?;
            trace.steps.extend(step.steps);
        }
    }
    trace.steps.extend(second.reversed()?.steps);
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, masks: &[u32]) -> Config {
        let u = Universe::numbered(n).unwrap();
        Config::from_masks(&u, masks.iter().map(|&m| SubsetMask(m))).unwrap()
    }

    #[test]
    fn erase_length_one() {
        let c = cfg(2, &[0, 1]);
        let t = erase(&c, &[SubsetMask(0), SubsetMask(1)]).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.end().unwrap().count(), 0);
    }

    #[test]
    fn teleport_along_five_nodes() {
        let path: Vec<SubsetMask> = [0u32, 1, 3, 7, 15].iter().map(|&m| SubsetMask(m)).collect();
        let c = cfg(4, &[0]);
        let t = teleport(&c, &path).unwrap();
        assert_eq!(t.steps.len(), 4);
        let states = t.replay().unwrap();
        assert_eq!(states[1].members(), vec![SubsetMask(0), SubsetMask(1), SubsetMask(3)]);
        assert_eq!(t.end().unwrap(), cfg(4, &[15]));
    }

    #[test]
    fn bad_paths() {
        let c = cfg(2, &[0, 1]);
        assert!(matches!(
            erase(&c, &[SubsetMask(0), SubsetMask(3)]),
            Err(ConstructError::BadPath(_))
        ));
        assert!(matches!(
            teleport(&c, &[SubsetMask(0), SubsetMask(1)]),
            Err(ConstructError::BadPath(_))
        ));
        let c = cfg(2, &[0, 1, 3]);
        assert!(matches!(
            erase(&c, &[SubsetMask(0), SubsetMask(1), SubsetMask(3), SubsetMask(2)]),
            Err(ConstructError::BadPath(_))
        ));
    }

    #[test]
    fn fetch_needs_both_parities() {
        let g = cfg(2, &[0, 1, 2, 3]);
        assert_eq!(fetch(&g, &cfg(2, &[0, 3])).unwrap_err(), ConstructError::AllSameParity);
        let (a, b, p) = fetch(&g, &cfg(2, &[0, 2, 3])).unwrap();
        assert_eq!((a, b), (SubsetMask(0), SubsetMask(2)));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn equivalent_configs_are_connected_by_steps() {
        let g = cfg(3, &[0, 1, 2, 3, 4, 5, 6, 7]);
        let c1 = cfg(3, &[0, 3, 5]);
        let c2 = cfg(3, &[3, 5, 6, 0, 7]);
        assert_eq!(c1.euler(), c2.euler());
        let t = eul_equiv_steps(&g, &c1, &c2).unwrap();
        assert_eq!(t.end().unwrap(), c2);
        assert!(t.replay().unwrap().iter().all(|s| s.euler() == c1.euler()));
        assert_eq!(
            eul_equiv_steps(&g, &c1, &cfg(3, &[0])).unwrap_err(),
            ConstructError::EulerMismatch(3, 1)
        );
    }
}
