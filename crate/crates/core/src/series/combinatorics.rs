/// Integer partition of `n`, stored as multiplicities `k_1..k_n` with
/// `sum j k_j = n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    multiplicities: Vec<usize>,
}

impl Partition {
    /// From a list of positive parts in any order.
    pub fn from_parts(parts: &[usize]) -> Self {
        let n: usize = parts.iter().sum();
        let mut multiplicities = vec![0; n];
        for &p in parts {
            assert!(p > 0, "partition parts are positive");
            multiplicities[p - 1] += 1;
        }
        Partition { multiplicities }
    }

    /// `k_j` for `j >= 1`; zero past the stored range.
    pub fn multiplicity(&self, j: usize) -> usize {
        assert!(j >= 1);
        self.multiplicities.get(j - 1).copied().unwrap_or(0)
    }

    /// `(j, k_j)` for every part size present.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i + 1, k))
    }

    /// The partitioned integer `sum j k_j`.
    pub fn n(&self) -> usize {
        self.nonzero().map(|(j, k)| j * k).sum()
    }

    /// Number of parts `sum k_j`.
    pub fn len(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.len());
        for (j, k) in self.nonzero().collect::<Vec<_>>().into_iter().rev() {
            v.extend(std::iter::repeat_n(j, k));
        }
        v
    }
}

/// All partitions of `n`, largest part first in descending lexicographic
/// order of the part lists: `[3], [2,1], [1,1,1]`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts(current));
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Ordered tuple of non-negative parts with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakComposition {
    parts: Vec<usize>,
}

impl WeakComposition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// All weak compositions of `n` into `m` parts, in ascending
/// lexicographic order.
///
/// # Panics
/// If `m == 0`.
pub fn enumerate_weak_compositions(n: usize, m: usize) -> Vec<WeakComposition> {
    assert!(m >= 1, "a weak composition has at least one part");
    fn rec(remaining: usize, slots: usize, current: &mut Vec<usize>, out: &mut Vec<WeakComposition>) {
        if slots == 1 {
            current.push(remaining);
            out.push(WeakComposition {
                parts: current.clone(),
            });
            current.pop();
            return;
        }
        for first in 0..=remaining {
            current.push(first);
            rec(remaining - first, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, &mut Vec::with_capacity(m), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partitions() {
        let p0 = enumerate_partitions(0);
        assert_eq!(p0.len(), 1);
        assert!(p0[0].is_empty());

        let p3: Vec<_> = enumerate_partitions(3).iter().map(Partition::parts).collect();
        assert_eq!(p3, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate_partitions(5).len(), 7);
    }

    #[test]
    fn partition_accessors() {
        let p = Partition::from_parts(&[2, 1, 2]);
        assert_eq!(p.n(), 5);
        assert_eq!(p.len(), 3);
        assert_eq!(p.multiplicity(2), 2);
        assert_eq!(p.multiplicity(7), 0);
        assert_eq!(p.parts(), vec![2, 2, 1]);
    }

    #[test]
    fn small_compositions() {
        let c: Vec<_> = enumerate_weak_compositions(2, 2).into_iter().map(|c| c.parts).collect();
        assert_eq!(c, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let c = enumerate_weak_compositions(0, 3);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].parts(), &[0, 0, 0]);
    }
}
