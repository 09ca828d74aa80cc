//! Integer partitions, ordinary and with distinct parts.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    Ordinary,
    Distinct,
}

/// Parts in non-increasing order (strictly decreasing for `Distinct`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<u32>,
    pub flavor: Flavor,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>, flavor: Flavor) -> Option<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.contains(&0) {
            return None;
        }
        if flavor == Flavor::Distinct && parts.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Partition { parts, flavor })
    }

    pub fn empty(flavor: Flavor) -> Self {
        Partition { parts: Vec::new(), flavor }
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, p: u32) -> usize {
        self.parts.iter().filter(|&&x| x == p).count()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.parts.contains(&p)
    }

    /// Number of parts strictly larger than `p`.
    pub fn count_above(&self, p: u32) -> usize {
        self.parts.iter().take_while(|&&x| x > p).count()
    }

    /// Insert a part; `None` when a distinct partition already has it.
    pub fn insert(&self, p: u32) -> Option<Self> {
        if self.flavor == Flavor::Distinct && self.contains(p) {
            return None;
        }
        let mut parts = self.parts.clone();
        let at = self.count_above(p);
        parts.insert(at, p);
        Some(Partition { parts, flavor: self.flavor })
    }

    /// Remove one copy of a part; returns the new partition and the position
    /// it was removed from.
    pub fn remove(&self, p: u32) -> Option<(Self, usize)> {
        let at = self.parts.iter().position(|&x| x == p)?;
        let mut parts = self.parts.clone();
        parts.remove(at);
        Some((Partition { parts, flavor: self.flavor }, at))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts.cmp(&other.parts).then(self.flavor.cmp(&other.flavor))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// All partitions of `n` with parts at most `max`, in lexicographically
/// decreasing order of parts.
fn partitions_bounded(n: u32, max: u32, distinct: bool, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=max.min(n)).rev() {
        prefix.push(p);
        let next_max = if distinct { p - 1 } else { p };
        partitions_bounded(n - p, next_max, distinct, prefix, out);
        prefix.pop();
    }
}

pub fn partitions(n: u32, flavor: Flavor) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_bounded(n, n, flavor == Flavor::Distinct, &mut Vec::new(), &mut out);
    out.into_iter().map(|parts| Partition { parts, flavor }).collect()
}

/// Distinct partitions whose parts minus one sum to `n` (parts ≥ 1, so a
/// part equal to 1 contributes nothing).
pub fn shifted_distinct(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for p in partitions(n, Flavor::Distinct) {
        let shifted: Vec<u32> = p.parts.iter().map(|x| x + 1).collect();
        out.push(Partition { parts: shifted.clone(), flavor: Flavor::Distinct });
        let mut with_one = shifted;
        with_one.push(1);
        out.push(Partition { parts: with_one, flavor: Flavor::Distinct });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n, Flavor::Ordinary).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        let d: Vec<usize> = (0..10).map(|n| partitions(n, Flavor::Distinct).len()).collect();
        assert_eq!(d, vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8]);
    }

    #[test]
    fn insert_keeps_order_and_distinctness() {
        let p = Partition::new(vec![5, 2], Flavor::Distinct).unwrap();
        assert_eq!(p.insert(3).unwrap().parts, vec![5, 3, 2]);
        assert!(p.insert(2).is_none());
        assert_eq!(p.count_above(3), 1);
    }
}
