//! Small enumeration helpers shared by the exhaustive checkers.

use crate::{Error, Result};

/// Default cap on candidate tables enumerated by any single search.
pub const DEFAULT_GUARD: u128 = 1_000_000;

/// The enumeration guard, overridable through `QLAB_GUARD_CELLS`.
pub fn guard_limit() -> u128 {
    std::env::var("QLAB_GUARD_CELLS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

/// `base^exp`, saturating.
pub fn power(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Errors if `needed` exceeds the guard.
pub fn check_guard(guard: &'static str, needed: u128) -> Result<()> {
    let limit = guard_limit();
    if needed > limit {
        Err(Error::Resource { guard, needed, limit })
    } else {
        Ok(())
    }
}

/// All tuples in `[0, radix)^len` in lexicographic order (first position most
/// significant).
#[derive(Clone, Debug)]
pub struct Tuples {
    radix: usize,
    current: Option<Vec<usize>>,
}

impl Tuples {
    pub fn new(len: usize, radix: usize) -> Self {
        let current = if radix == 0 && len > 0 { None } else { Some(vec![0; len]) };
        Tuples { radix, current }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("present");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.radix {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// Index of a tuple in the order produced by [`Tuples`].
pub fn tuple_index(t: &[usize], radix: usize) -> usize {
    t.iter().fold(0, |acc, &d| acc * radix + d)
}

/// Inverse of [`tuple_index`].
pub fn tuple_at(mut index: usize, len: usize, radix: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % radix;
        index /= radix;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<_> = Tuples::new(2, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[8], vec![2, 2]);
        for (i, t) in all.iter().enumerate() {
            assert_eq!(tuple_index(t, 3), i);
            assert_eq!(&tuple_at(i, 2, 3), t);
        }
    }

    #[test]
    fn empty_tuples() {
        assert_eq!(Tuples::new(0, 5).count(), 1);
        assert_eq!(Tuples::new(0, 0).count(), 1);
        assert_eq!(Tuples::new(2, 0).count(), 0);
    }
}
