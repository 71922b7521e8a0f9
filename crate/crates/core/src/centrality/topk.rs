use rand::seq::SliceRandom;
use serde::Serialize;

use super::ScoreVector;
use crate::error::{Error, Result};
use crate::rng::stream;

/// The `k` highest-scoring nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TopKSet {
    k: usize,
    /// Ascending node ids.
    members: Vec<usize>,
    /// Set when the cutoff score is shared by two or more nodes, so the
    /// uniform tie rule decided (possibly trivially) which of them are in.
    tie_broken: bool,
}

impl TopKSet {
    /// Build a set directly from node ids. Duplicates are rejected.
    pub fn from_members(mut members: Vec<usize>, tie_broken: bool) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("members", "duplicate node id"));
        }
        if members.is_empty() {
            return Err(Error::invalid("members", "a top-k set needs k >= 1"));
        }
        Ok(TopKSet {
            k: members.len(),
            members,
            tie_broken,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn tie_broken(&self) -> bool {
        self.tie_broken
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    /// Membership mask over `n` nodes.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &i in &self.members {
            m[i] = true;
        }
        m
    }

    pub fn intersection_size(&self, other: &TopKSet) -> usize {
        let (mut i, mut j, mut common) = (0, 0, 0);
        let (a, b) = (&self.members, &other.members);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        common
    }
}

/// The `k` largest scores. Nodes tied exactly at the cutoff value fill the
/// remaining slots as a uniformly random subset drawn from `seed`.
pub fn top_k(scores: &ScoreVector, k: usize, seed: u64) -> Result<TopKSet> {
    top_k_values(scores.scores(), k, seed)
}

pub(crate) fn top_k_values(values: &[f64], k: usize, seed: u64) -> Result<TopKSet> {
    let n = values.len();
    if k == 0 || k > n {
        return Err(Error::invalid(
            "k",
            format!("must lie in [1, n = {n}] (got {k})"),
        ));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    // Stable: equal scores stay in ascending node order.
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let cutoff = values[idx[k - 1]];
    let above = idx.iter().take_while(|&&i| values[i] > cutoff).count();
    let tied: Vec<usize> = idx[above..]
        .iter()
        .copied()
        .take_while(|&i| values[i] == cutoff)
        .collect();

    let mut members: Vec<usize> = idx[..above].to_vec();
    let tie_broken = tied.len() > 1;
    if tie_broken {
        let mut pool = tied;
        let need = k - above;
        let mut rng = stream(seed);
        let (chosen, _) = pool.partial_shuffle(&mut rng, need);
        members.extend_from_slice(chosen);
    } else {
        members.extend_from_slice(&tied);
    }
    members.sort_unstable();
    Ok(TopKSet {
        k,
        members,
        tie_broken,
    })
}

fn same_k(a: &TopKSet, b: &TopKSet) -> Result<()> {
    if a.k != b.k {
        return Err(Error::invalid(
            "k",
            format!("sets have different sizes ({} vs {})", a.k, b.k),
        ));
    }
    Ok(())
}

/// Size of the symmetric difference, `2 (k - |a ∩ b|)`.
pub fn hamming(a: &TopKSet, b: &TopKSet) -> Result<usize> {
    same_k(a, b)?;
    Ok(2 * (a.k - a.intersection_size(b)))
}

/// `|a ∩ b| / |a ∪ b|`.
pub fn jaccard(a: &TopKSet, b: &TopKSet) -> f64 {
    let common = a.intersection_size(b);
    common as f64 / (a.k + b.k - common) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::ScoreKind;

    fn sv(v: &[f64]) -> ScoreVector {
        ScoreVector::new(ScoreKind::Degree, v.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> TopKSet {
        TopKSet::from_members(v.to_vec(), false).unwrap()
    }

    #[test]
    fn strict_order() {
        let s = top_k(&sv(&[5.0, 4.0, 3.0, 2.0, 1.0]), 2, 0).unwrap();
        assert_eq!(s.members(), &[0, 1]);
        assert!(!s.tie_broken());
    }

    #[test]
    fn ties_at_cutoff() {
        let s = top_k(&sv(&[3.0, 3.0, 3.0]), 3, 0).unwrap();
        assert_eq!(s.members(), &[0, 1, 2]);
        assert!(s.tie_broken());

        let s = top_k(&sv(&[1.0, 9.0, 2.0, 2.0, 2.0]), 2, 5).unwrap();
        assert!(s.contains(1));
        assert!(s.tie_broken());
        assert_eq!(s.k(), 2);
    }

    #[test]
    fn tie_resolution_is_roughly_uniform() {
        let mut counts = std::collections::HashMap::new();
        for seed in 0..3000 {
            let s = top_k(&sv(&[3.0, 3.0, 3.0]), 2, seed).unwrap();
            *counts.entry(s.members().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 3);
        assert!(counts.values().all(|&c| (800..1200).contains(&c)));
    }

    #[test]
    fn k_out_of_range() {
        assert!(top_k(&sv(&[1.0, 2.0]), 0, 0).is_err());
        assert!(top_k(&sv(&[1.0, 2.0]), 3, 0).is_err());
    }

    #[test]
    fn set_metrics() {
        assert_eq!(hamming(&set(&[1, 2, 3]), &set(&[1, 2, 3])).unwrap(), 0);
        assert_eq!(hamming(&set(&[0, 1, 2, 3, 4]), &set(&[5, 6, 7, 8, 9])).unwrap(), 10);
        assert_eq!(hamming(&set(&[1, 2, 3]), &set(&[2, 3, 4])).unwrap(), 2);
        assert!(hamming(&set(&[1, 2]), &set(&[1])).is_err());

        assert_eq!(jaccard(&set(&[1, 2]), &set(&[1, 2])), 1.0);
        assert_eq!(jaccard(&set(&[1, 2]), &set(&[3, 4])), 0.0);
        assert!((jaccard(&set(&[1, 2, 3, 4]), &set(&[3, 4, 5, 6])) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn from_members_validation() {
        assert!(TopKSet::from_members(vec![1, 1], false).is_err());
        assert!(TopKSet::from_members(vec![], false).is_err());
        assert_eq!(set(&[3, 1]).members(), &[1, 3]);
    }
}
