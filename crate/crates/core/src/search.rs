//! Enumeration of the maximal "low" and minimal "high" subsets of a finite
//! universe for an upward-closed predicate, in the style of MARCO.

use alloc::vec::Vec;

use crate::bits::Bits;
use crate::error::Result;
use crate::sat::{Lit, Solver};

/// Result of a [`marco`] run.
#[derive(Clone, Debug, Default)]
pub(crate) struct Frontier {
    /// ⊂-maximal sets on which the predicate is false.
    pub maximal: Vec<Bits>,
    /// ⊂-minimal sets on which the predicate is true.
    pub minimal: Vec<Bits>,
}

fn contains_any(s: &Bits, blocked: &[Bits]) -> bool {
    blocked.iter().any(|b| b.is_subset(s))
}

/// Enumerate the frontier of `high` over subsets of `0..n` that contain none of `blocked`.
///
/// `high` must be upward closed on that family. `on_minimal` sees each minimal
/// high set as it is found and may abort the run.
pub(crate) fn marco(
    n: usize,
    blocked: &[Bits],
    high: &mut dyn FnMut(&Bits) -> bool,
    on_minimal: &mut dyn FnMut(&Bits) -> Result<()>,
) -> Result<Frontier> {
    let mut map = Solver::new(n);
    map.prefer_true = true;
    let var = |i: usize| (i + 1) as Lit;
    for b in blocked {
        let c: Vec<Lit> = b.iter().map(|i| -var(i)).collect();
        map.add_clause(&c);
    }
    let mut out = Frontier::default();
    while map.solve(&[]) {
        let mut seed = Bits::new(n);
        for i in 0..n {
            if map.model_value(i + 1) {
                seed.insert(i);
            }
        }
        if high(&seed) {
            for i in seed.clone().iter() {
                seed.remove(i);
                if !high(&seed) {
                    seed.insert(i);
                }
            }
            on_minimal(&seed)?;
            let c: Vec<Lit> = seed.iter().map(|i| -var(i)).collect();
            map.add_clause(&c);
            out.minimal.push(seed.normalized());
        } else {
            for i in 0..n {
                if seed.contains(i) {
                    continue;
                }
                seed.insert(i);
                if contains_any(&seed, blocked) || high(&seed) {
                    seed.remove(i);
                }
            }
            let c: Vec<Lit> = (0..n).filter(|&i| !seed.contains(i)).map(var).collect();
            map.add_clause(&c);
            out.maximal.push(seed.normalized());
        }
    }
    out.maximal.sort();
    out.minimal.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn brute(n: usize, high: &dyn Fn(&Bits) -> bool) -> (Vec<Bits>, Vec<Bits>) {
        let sets: Vec<Bits> =
            (0u32..1 << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Bits>().normalized()).collect();
        let mut maximal: Vec<Bits> = sets
            .iter()
            .filter(|s| !high(s) && !sets.iter().any(|t| !high(t) && s.is_proper_subset(t)))
            .cloned()
            .collect();
        let mut minimal: Vec<Bits> = sets
            .iter()
            .filter(|s| high(s) && !sets.iter().any(|t| high(t) && t.is_proper_subset(s)))
            .cloned()
            .collect();
        maximal.sort();
        minimal.sort();
        (maximal, minimal)
    }

    #[test]
    fn pairwise_conflicts() {
        let conflicts = [(0usize, 1usize), (1, 2)];
        let high = |s: &Bits| conflicts.iter().any(|&(a, b)| s.contains(a) && s.contains(b));
        let f = marco(3, &[], &mut |s| high(s), &mut |_| Ok(())).unwrap();
        let mut expected = vec![
            [0usize, 2].into_iter().collect::<Bits>().normalized(),
            [1usize].into_iter().collect::<Bits>().normalized(),
        ];
        expected.sort();
        assert_eq!(f.maximal, expected);
        assert_eq!(f.minimal.len(), 2);
    }

    #[test]
    fn never_high() {
        let f = marco(4, &[], &mut |_| false, &mut |_| Ok(())).unwrap();
        assert_eq!(f.maximal, vec![Bits::full(4).normalized()]);
        assert!(f.minimal.is_empty());
    }

    #[test]
    fn always_high() {
        let f = marco(3, &[], &mut |_| true, &mut |_| Ok(())).unwrap();
        assert!(f.maximal.is_empty());
        assert_eq!(f.minimal, vec![Bits::new(3).normalized()]);
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            cores in proptest::collection::vec(proptest::collection::btree_set(0usize..6, 1..4), 0..5)
        ) {
            let cores: Vec<Bits> = cores.into_iter().map(|c| c.into_iter().collect::<Bits>()).collect();
            let high = |s: &Bits| cores.iter().any(|c| c.is_subset(s));
            let f = marco(6, &[], &mut |s| high(s), &mut |_| Ok(())).unwrap();
            let (mx, mn) = brute(6, &high);
            prop_assert_eq!(f.maximal, mx);
            prop_assert_eq!(f.minimal, mn);
        }
    }
}
