//! Finite partial orders.
//!
//! Elements are `0..p` internally. The relation is stored closed, with
//! `geq(j, i)` true when `j` influences `i`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A set of poset elements, kept sorted.
pub type NodeSet = BTreeSet<usize>;

/// Which derived set to compute from a node set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedKind {
    /// ↓R: everything some member of R dominates.
    Down,
    /// ↑R: everything dominating some member of R.
    Up,
    /// ⇓R = ↓R \ R.
    StrictDown,
    /// ⇑R = ↑R \ R.
    StrictUp,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    p: usize,
    geq: Vec<bool>,
}

/// Level sets L_k and the layers R_k = L_{k+1} \ L_k, both indexed from k = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    pub levels: Vec<NodeSet>,
    pub layers: Vec<NodeSet>,
}

impl Poset {
    /// Reflexive-transitive closure of `edges`, where `(j, i)` means j ⪰ i.
    pub fn from_edges(p: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut geq = vec![false; p * p];
        for i in 0..p {
            geq[i * p + i] = true;
        }
        for &(j, i) in edges {
            for index in [j, i] {
                if index >= p {
                    return Err(Error::IndexOutOfRange { index, p });
                }
            }
            geq[j * p + i] = true;
        }
        // Warshall
        for k in 0..p {
            for j in 0..p {
                if !geq[j * p + k] {
                    continue;
                }
                for i in 0..p {
                    if geq[k * p + i] {
                        geq[j * p + i] = true;
                    }
                }
            }
        }
        for j in 0..p {
            for i in 0..j {
                if geq[j * p + i] && geq[i * p + j] {
                    return Err(Error::Cycle {
                        witness: cycle_witness(p, edges, i, j),
                    });
                }
            }
        }
        Ok(Poset { p, geq })
    }

    pub fn antichain(p: usize) -> Self {
        Self::from_edges(p, &[]).expect("antichain is a poset")
    }

    /// Total order 0 ⪰ 1 ⪰ … ⪰ p-1.
    pub fn chain(p: usize) -> Self {
        let edges: Vec<_> = (1..p).map(|i| (i - 1, i)).collect();
        Self::from_edges(p, &edges).expect("chain is a poset")
    }

    pub fn size(&self) -> usize {
        self.p
    }

    /// True when j ⪰ i.
    pub fn geq(&self, j: usize, i: usize) -> bool {
        self.geq[j * self.p + i]
    }

    /// True when j ≻ i.
    pub fn gt(&self, j: usize, i: usize) -> bool {
        j != i && self.geq(j, i)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.geq(a, b) || self.geq(b, a)
    }

    /// ↓i as a sorted list.
    pub fn down(&self, i: usize) -> Vec<usize> {
        (0..self.p).filter(|&k| self.geq(i, k)).collect()
    }

    /// ↑i as a sorted list.
    pub fn up(&self, i: usize) -> Vec<usize> {
        (0..self.p).filter(|&k| self.geq(k, i)).collect()
    }

    pub fn strict_down(&self, i: usize) -> Vec<usize> {
        (0..self.p).filter(|&k| self.gt(i, k)).collect()
    }

    pub fn strict_up(&self, i: usize) -> Vec<usize> {
        (0..self.p).filter(|&k| self.gt(k, i)).collect()
    }

    pub fn derived_set(&self, set: &NodeSet, kind: DerivedKind) -> Result<NodeSet> {
        if let Some(&index) = set.iter().find(|&&i| i >= self.p) {
            return Err(Error::IndexOutOfRange { index, p: self.p });
        }
        let hit = |k: usize| match kind {
            DerivedKind::Down | DerivedKind::StrictDown => set.iter().any(|&j| self.geq(j, k)),
            DerivedKind::Up | DerivedKind::StrictUp => set.iter().any(|&j| self.geq(k, j)),
        };
        let strict = matches!(kind, DerivedKind::StrictDown | DerivedKind::StrictUp);
        Ok((0..self.p)
            .filter(|&k| hit(k) && !(strict && set.contains(&k)))
            .collect())
    }

    pub fn dual(&self) -> Self {
        let p = self.p;
        let mut geq = vec![false; p * p];
        for j in 0..p {
            for i in 0..p {
                geq[j * p + i] = self.geq(i, j);
            }
        }
        Poset { p, geq }
    }

    /// Covering pairs (j, i): j ≻ i with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.p {
            for i in 0..self.p {
                if self.gt(j, i) && !(0..self.p).any(|k| self.gt(j, k) && self.gt(k, i)) {
                    out.push((j, i));
                }
            }
        }
        out
    }

    /// Any two elements dominating a common element are comparable.
    pub fn is_in_ultra(&self) -> bool {
        (0..self.p).all(|j| {
            let up = self.up(j);
            up.iter()
                .all(|&a| up.iter().all(|&b| self.comparable(a, b)))
        })
    }

    /// Any two elements dominated by a common element are comparable.
    pub fn is_out_ultra(&self) -> bool {
        self.dual().is_in_ultra()
    }

    pub fn level_sets(&self) -> LevelSets {
        let up_size: Vec<usize> = (0..self.p).map(|j| self.up(j).len()).collect();
        let levels: Vec<NodeSet> = (1..=self.p)
            .map(|k| (0..self.p).filter(|&j| up_size[j] <= k).collect())
            .collect();
        let layers = (0..self.p)
            .map(|k| match levels.get(k + 1) {
                Some(next) => next.difference(&levels[k]).copied().collect(),
                None => NodeSet::new(),
            })
            .collect();
        LevelSets { levels, layers }
    }

    /// Linear extension with dominant elements first, ties by ascending label.
    /// Returns `perm` with `perm[old] = new`.
    pub fn block_triangular_relabel(&self) -> Vec<usize> {
        let mut perm = vec![usize::MAX; self.p];
        let mut placed = vec![false; self.p];
        for position in 0..self.p {
            let next = (0..self.p)
                .find(|&i| !placed[i] && (0..self.p).all(|j| placed[j] || !self.gt(j, i)))
                .expect("a finite poset always has a maximal element");
            placed[next] = true;
            perm[next] = position;
        }
        perm
    }

    /// Checks that `perm` maps j ⪰ i to perm[j] ≤ perm[i].
    pub fn is_triangular_relabel(&self, perm: &[usize]) -> bool {
        let mut seen = vec![false; self.p];
        if perm.len() != self.p || perm.iter().any(|&v| v >= self.p || std::mem::replace(&mut seen[v], true)) {
            return false;
        }
        (0..self.p).all(|j| (0..self.p).all(|i| !self.geq(j, i) || perm[j] <= perm[i]))
    }

    /// Poset obtained by renaming each element k to `perm[k]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let p = self.p;
        let mut geq = vec![false; p * p];
        for j in 0..p {
            for i in 0..p {
                geq[perm[j] * p + perm[i]] = self.geq(j, i);
            }
        }
        Poset { p, geq }
    }
}

/// Closed cycle a -> … -> b -> … -> a through the edge digraph.
fn cycle_witness(p: usize, edges: &[(usize, usize)], a: usize, b: usize) -> Vec<usize> {
    let mut path = shortest_path(p, edges, a, b);
    let back = shortest_path(p, edges, b, a);
    path.extend(back.into_iter().skip(1));
    path
}

fn shortest_path(p: usize, edges: &[(usize, usize)], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; p];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(j, i) in edges {
            if j == v && prev[i] == usize::MAX {
                prev[i] = v;
                queue.push_back(i);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Poset {
        Poset::from_edges(4, &[(0, 1), (2, 1), (1, 3)]).unwrap()
    }

    fn set(items: &[usize]) -> NodeSet {
        items.iter().copied().collect()
    }

    #[test]
    fn closure_adds_transitive_pairs() {
        let p = example();
        assert!(p.geq(0, 3) && p.geq(2, 3));
        assert!(!p.geq(0, 2));
    }

    #[test]
    fn cycle_is_reported_with_witness() {
        let err = Poset::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        match err {
            Error::Cycle { witness } => {
                assert_eq!(witness.first(), witness.last());
                assert!(witness.len() == 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Poset::from_edges(2, &[(0, 1), (1, 0)]),
            Err(Error::Cycle { .. })
        ));
        assert_eq!(
            Poset::from_edges(2, &[(0, 5)]),
            Err(Error::IndexOutOfRange { index: 5, p: 2 })
        );
    }

    #[test]
    fn derived_sets_of_example() {
        let p = example();
        assert_eq!(p.derived_set(&set(&[0]), DerivedKind::Down).unwrap(), set(&[0, 1, 3]));
        assert_eq!(p.derived_set(&set(&[0]), DerivedKind::StrictDown).unwrap(), set(&[1, 3]));
        assert_eq!(p.derived_set(&set(&[3]), DerivedKind::Up).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(p.derived_set(&set(&[1]), DerivedKind::StrictUp).unwrap(), set(&[0, 2]));
        assert!(p.derived_set(&set(&[]), DerivedKind::Up).unwrap().is_empty());
    }

    #[test]
    fn hasse_of_example_and_chain() {
        assert_eq!(example().hasse_edges(), vec![(0, 1), (1, 3), (2, 1)]);
        assert_eq!(Poset::chain(3).hasse_edges(), vec![(0, 1), (1, 2)]);
        assert!(Poset::antichain(3).hasse_edges().is_empty());
    }

    #[test]
    fn relabel_of_chain_and_antichain_is_identity() {
        assert_eq!(Poset::chain(3).block_triangular_relabel(), vec![0, 1, 2]);
        assert_eq!(Poset::antichain(4).block_triangular_relabel(), vec![0, 1, 2, 3]);
    }
}
