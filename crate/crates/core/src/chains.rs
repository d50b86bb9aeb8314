//! Chain combinatorics of monomial algebras: the associated-path sets
//! indexing the minimal resolution.
//!
//! `AP(0)` = trivial paths, `AP(1)` = arrows, `AP(2)` = minimal relations,
//! and a degree-`n` chain (n >= 3) is a quiver path carrying a greedy
//! sequence of relation occurrences `r_2, .., r_n` where `r_2` starts at the
//! first position, each `r_{i+1}` starts strictly after the end of `r_{i-1}`
//! and no later than the end of `r_i` (so consecutive relations overlap),
//! each placement is the earliest possible, and `r_n` ends exactly at the
//! end of the path.
//!
//! The number of chains from `i` to `j` in degree `n` equals
//! `dim Ext^n(S_j, S_i)`; this is the independent oracle for the resolution
//! dimensions (the two computations share nothing).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::quiver::{ArrowId, MonomialAlgebra};

/// A chain: a (generally zero) quiver path with its degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub degree: usize,
    pub arrows: Vec<ArrowId>,
    pub source: usize,
    pub target: usize,
}

/// All relation occurrences in `w`: `(start, end)` positions (1-based,
/// inclusive), sorted by start. At most one relation can start at a given
/// position because the relations form an antichain.
fn occurrences(alg: &MonomialAlgebra, w: &[ArrowId]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..w.len() {
        for r in alg.relations() {
            if s + r.len() <= w.len() && &w[s..s + r.len()] == r.as_slice() {
                out.push((s + 1, s + r.len()));
                break;
            }
        }
    }
    out
}

/// The chain degree of a path under the greedy placement, if it is a chain.
fn greedy_degree(alg: &MonomialAlgebra, w: &[ArrowId]) -> Option<usize> {
    match w.len() {
        0 => return Some(0),
        1 => return Some(1),
        _ => {}
    }
    let occ = occurrences(alg, w);
    // r_1 is the first arrow: (e_0, e_1) = (0, 1).
    let mut e_pp = 0usize;
    let mut e_p = 1usize;
    let mut degree = 1usize;
    while e_p < w.len() {
        let next = occ.iter().find(|&&(s, _)| s > e_pp && s <= e_p);
        match next {
            Some(&(_, e)) => {
                e_pp = e_p;
                e_p = e;
                degree += 1;
            }
            None => return None,
        }
    }
    (e_p == w.len()).then_some(degree)
}

/// The degree-`n` associated paths of a monomial algebra.
pub fn bardzell_chains(alg: &MonomialAlgebra, n: usize) -> Vec<Chain> {
    bardzell_up_to(alg, n).pop().unwrap_or_default()
}

/// Chains in all degrees `0..=n`, built by overlap extension and verified
/// by the greedy test.
pub fn bardzell_up_to(alg: &MonomialAlgebra, n: usize) -> Vec<Vec<Chain>> {
    let mut layers: Vec<Vec<Chain>> = Vec::with_capacity(n + 1);
    // AP(0): trivial paths.
    layers.push(
        (0..alg.n_vertices())
            .map(|v| Chain { degree: 0, arrows: Vec::new(), source: v, target: v })
            .collect(),
    );
    if n == 0 {
        return layers;
    }
    // AP(1): arrows.
    layers.push(
        alg.quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| Chain { degree: 1, arrows: alloc::vec![a], source: s, target: t })
            .collect(),
    );
    for deg in 2..=n {
        let mut seen = BTreeSet::new();
        let mut layer = Vec::new();
        for prev in &layers[deg - 1] {
            let w = &prev.arrows;
            // Window for the new relation start: (e_{deg-2}, e_{deg-1}]
            // where e_{deg-1} = |w|; e_{deg-2} is recovered by replaying the
            // greedy placement (1 for deg = 2).
            let e_prev_prev = if deg == 2 {
                0
            } else {
                greedy_second_last_end(alg, w).expect("previous layer entries are chains")
            };
            for r in alg.relations() {
                for s in (e_prev_prev + 1)..=w.len() {
                    let overlap = w.len() - s + 1;
                    if r.len() <= overlap {
                        continue; // must extend past the end
                    }
                    if &w[s - 1..] != &r[..overlap] {
                        continue;
                    }
                    let mut ext = w.clone();
                    ext.extend_from_slice(&r[overlap..]);
                    if greedy_degree(alg, &ext) != Some(deg) {
                        continue;
                    }
                    if seen.insert(ext.clone()) {
                        let source = prev.source;
                        let target = alg.quiver().target(*ext.last().unwrap());
                        layer.push(Chain { degree: deg, arrows: ext, source, target });
                    }
                }
            }
        }
        layer.sort();
        layers.push(layer);
    }
    layers
}

/// End position of the second-to-last relation in the greedy placement of a
/// chain (the value `e_{n-1}` for a degree-`n` chain's extension window).
fn greedy_second_last_end(alg: &MonomialAlgebra, w: &[ArrowId]) -> Option<usize> {
    if w.len() <= 1 {
        return Some(0);
    }
    let occ = occurrences(alg, w);
    let mut e_pp = 0usize;
    let mut e_p = 1usize;
    while e_p < w.len() {
        let next = occ.iter().find(|&&(s, _)| s > e_pp && s <= e_p)?;
        e_pp = e_p;
        e_p = next.1;
    }
    Some(e_pp)
}

/// Number of chains of degree `n` from `source` to `target`.
pub fn chain_count(alg: &MonomialAlgebra, n: usize, source: usize, target: usize) -> usize {
    bardzell_chains(alg, n)
        .iter()
        .filter(|c| c.source == source && c.target == target)
        .count()
}
