//! Deterministic contractions of the Hom complex onto its cohomology.
//!
//! Per block and degree the complex splits as `B (+) H (+) A` with
//! `B = im(d)`, `H` spanned by chosen cocycle representatives and `A` a
//! complement of the cocycles spanned by standard basis vectors at the
//! pivot columns of the outgoing differential. The data
//!
//!   iota: H -> C,   pi: C -> H,   h: C -> C[-1]
//!
//! satisfies `pi o iota = id`, `iota o pi - id = d h + h d` and the side
//! conditions `h iota = 0`, `pi h = 0`, `h h = 0`, all checked exactly on
//! construction.
//!
//! In degrees `0..=res_bound` the leading representatives are the lifted
//! Ext cocycles (so the first `ext` coordinates of `pi` are the canonical
//! Ext coordinates); the remaining representatives span the extra classes
//! of the truncated complex, normalized to have zero bottom-readout.
//!
//! All complement choices run through a pivot rule; `Rightmost` gives the
//! independent second contraction used as a cross-check oracle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactla::{Field, Mat};
use crate::homcx::{EndElt, HomBlocks};
use crate::quiver::MonomialAlgebra;
use crate::resolution::ExtTable;
use crate::Result;

/// Complement selection rule for all RREF-based choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    Leftmost,
    Rightmost,
}

fn pivots_by_rule<K: Field>(m: &Mat<K>, rule: PivotRule) -> Vec<usize> {
    match rule {
        PivotRule::Leftmost => m.independent_columns(),
        PivotRule::Rightmost => {
            let cols = m.cols();
            let reversed = Mat::from_fn(m.field().clone(), m.rows(), cols, |i, j| {
                m.at(i, cols - 1 - j).clone()
            });
            let mut piv: Vec<usize> =
                reversed.independent_columns().into_iter().map(|j| cols - 1 - j).collect();
            piv.sort_unstable();
            piv
        }
    }
}

#[derive(Debug, Clone)]
struct BlockContraction<K: Field> {
    /// Per degree index: columns are the cohomology representatives.
    iota: Vec<Mat<K>>,
    /// Per degree index: projection onto cohomology coordinates.
    pi: Vec<Mat<K>>,
    /// Per degree index: homotopy C_n -> C_{n-1}.
    hom: Vec<Mat<K>>,
    /// Leading count of Ext-prescribed representatives per degree index.
    ext: Vec<usize>,
}

/// Contraction data for every block of the Hom complex.
#[derive(Debug, Clone)]
pub struct Contraction<K: Field> {
    pub res_bound: usize,
    pub rule: PivotRule,
    data: BTreeMap<(usize, usize), BlockContraction<K>>,
}

impl<K: Field> Contraction<K> {
    /// Dimension of the full cohomology at a block degree.
    pub fn h_dim(&self, source: usize, target: usize, n: i64, blocks: &HomBlocks<K>) -> usize {
        match blocks.n_idx(n) {
            Some(nid) => self.data[&(source, target)].iota[nid].cols(),
            None => 0,
        }
    }

    /// Number of leading Ext-prescribed coordinates at a block degree.
    pub fn ext_prefix(&self, source: usize, target: usize, n: i64, blocks: &HomBlocks<K>) -> usize {
        match blocks.n_idx(n) {
            Some(nid) => self.data[&(source, target)].ext[nid],
            None => 0,
        }
    }

    /// The homotopy applied to an element (degree drops by one).
    pub fn apply_h(&self, k: &K, blocks: &HomBlocks<K>, x: &EndElt<K>) -> EndElt<K> {
        let nid = blocks.n_idx(x.degree).expect("degree in range");
        let bc = &self.data[&(x.source, x.target)];
        let coords = bc.hom[nid].apply(&x.coords);
        let _ = k;
        EndElt { source: x.source, target: x.target, degree: x.degree - 1, coords }
    }

    /// Full cohomology coordinates of an element.
    pub fn project(&self, blocks: &HomBlocks<K>, x: &EndElt<K>) -> Vec<K::Elem> {
        let nid = blocks.n_idx(x.degree).expect("degree in range");
        self.data[&(x.source, x.target)].pi[nid].apply(&x.coords)
    }

    /// The representative of a cohomology coordinate vector.
    pub fn include(
        &self,
        k: &K,
        blocks: &HomBlocks<K>,
        source: usize,
        target: usize,
        n: i64,
        coords: &[K::Elem],
    ) -> EndElt<K> {
        let nid = blocks.n_idx(n).expect("degree in range");
        let bc = &self.data[&(source, target)];
        let _ = k;
        EndElt { source, target, degree: n, coords: bc.iota[nid].apply(coords) }
    }

    /// Representative of a single cohomology basis element.
    pub fn basis_rep(
        &self,
        k: &K,
        blocks: &HomBlocks<K>,
        source: usize,
        target: usize,
        n: i64,
        idx: usize,
    ) -> EndElt<K> {
        let nid = blocks.n_idx(n).expect("degree in range");
        let bc = &self.data[&(source, target)];
        let iota = &bc.iota[nid];
        let coords = (0..iota.rows()).map(|r| iota.at(r, idx).clone()).collect();
        let _ = k;
        EndElt { source, target, degree: n, coords }
    }
}

/// Builds the contraction for every block and verifies the five identities
/// exactly before returning.
pub fn build_contraction<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    table: &ExtTable<K>,
    blocks: &HomBlocks<K>,
    rule: PivotRule,
) -> Result<Contraction<K>> {
    let b = blocks.res_bound;
    let mut data = BTreeMap::new();
    for j in 0..blocks.n_simples {
        for i in 0..blocks.n_simples {
            let block = blocks.block(j, i);
            let nids = block.basis.len();
            let mut iota = Vec::with_capacity(nids);
            let mut pi = Vec::with_capacity(nids);
            let mut hom = Vec::with_capacity(nids);
            let mut ext = Vec::with_capacity(nids);
            for nid in 0..nids {
                let n = nid as i64 - b as i64;
                let dim = block.basis[nid].len();
                let d_out = &block.diff[nid];
                let d_in: Option<&Mat<K>> = if nid > 0 { Some(&block.diff[nid - 1]) } else { None };

                // Boundaries: pivot columns of the incoming differential,
                // remembering the preimage standard vectors.
                let (b_basis, preimages) = match d_in {
                    Some(d) => {
                        let piv = pivots_by_rule(d, rule);
                        let cols: Vec<Vec<K::Elem>> = piv.iter().map(|&c| d.column(c)).collect();
                        (Mat::from_columns(k.clone(), dim, &cols), piv)
                    }
                    None => (Mat::zeros(k.clone(), dim, 0), Vec::new()),
                };
                let rank_b = b_basis.cols();

                // Cocycles.
                let z = d_out.kernel_mat();

                // Prescribed Ext representatives for degrees 0..=res_bound.
                let mut h_cols: Vec<Vec<K::Elem>> = Vec::new();
                let mut n_ext = 0;
                if n >= 0 && n as usize <= b {
                    for (pos, elt) in table.basis_of_degree(n as usize).iter().enumerate() {
                        let _ = pos;
                        if elt.source == j && elt.target == i {
                            let c = blocks.cocycle_for(alg, k, table, elt)?;
                            h_cols.push(c.coords);
                            n_ext += 1;
                        }
                    }
                }
                // Independence of [B | prescribed] must hold exactly.
                let ext_mat = Mat::from_columns(k.clone(), dim, &h_cols);
                let bh = b_basis.hstack(&ext_mat);
                if bh.rank() != rank_b + n_ext {
                    return Err(Error::Internal(format!(
                        "prescribed cocycles are dependent modulo boundaries on block ({j},{i}) degree {n}"
                    )));
                }
                // Complete to all of Z by pivot extension; normalize the
                // completions to zero bottom-readout (subtract their Ext
                // readout, which lives on the (m=0, trivial path) slots).
                let readout_rows: Vec<usize> = block.basis[nid]
                    .iter()
                    .enumerate()
                    .filter_map(|(r, &(m, _, l, p))| {
                        (n >= 0 && m == 0 && l == 0 && alg.path(p).is_trivial()).then_some(r)
                    })
                    .collect();
                // Greedy extension: the boundary + prescribed block always
                // stays; the rule only orders the kernel candidates.
                let mut working = bh.clone();
                let mut rank = working.rank();
                let order: Vec<usize> = match rule {
                    PivotRule::Leftmost => (0..z.cols()).collect(),
                    PivotRule::Rightmost => (0..z.cols()).rev().collect(),
                };
                let mut chosen = Vec::new();
                for c in order {
                    let cand = Mat::from_columns(k.clone(), dim, &[z.column(c)]);
                    let ext_try = working.hstack(&cand);
                    if ext_try.rank() > rank {
                        rank += 1;
                        working = ext_try;
                        chosen.push(c);
                    }
                }
                chosen.sort_unstable();
                for c in chosen {
                    let mut v = z.column(c);
                    if n_ext > 0 {
                        // v := v - sum_t readout_t(v) * iota_t; the t-th
                        // prescribed cocycle has unit readout at its own
                        // slot and zero at the others.
                        for (t, &row) in readout_rows.iter().enumerate() {
                            let coef = v[row].clone();
                            if !k.is_zero(&coef) {
                                for (idx, hv) in h_cols[t].iter().enumerate() {
                                    v[idx] = k.sub(&v[idx], &k.mul(&coef, hv));
                                }
                            }
                        }
                    }
                    h_cols.push(v);
                }
                let h_mat = Mat::from_columns(k.clone(), dim, &h_cols);
                let h_count = h_mat.cols();

                // A: complement of the cocycles, spanned by standard basis
                // vectors at the pivot columns of the outgoing differential.
                let piv_out = pivots_by_rule(d_out, rule);
                let a_cols: Vec<Vec<K::Elem>> = piv_out
                    .iter()
                    .map(|&c| {
                        let mut e = vec![k.zero(); dim];
                        e[c] = k.one();
                        e
                    })
                    .collect();
                let a_mat = Mat::from_columns(k.clone(), dim, &a_cols);

                if rank_b + h_count + a_mat.cols() != dim {
                    return Err(Error::Internal(format!(
                        "B/H/A decomposition mismatch on block ({j},{i}) degree {n}: {rank_b}+{h_count}+{} != {dim}",
                        a_mat.cols()
                    )));
                }
                let t = b_basis.hstack(&h_mat).hstack(&a_mat);
                let tinv = t
                    .solve(&Mat::identity(k.clone(), dim))
                    .ok_or_else(|| Error::Internal("B/H/A basis is singular".into()))?;
                // pi: the H rows of T^{-1}.
                let pi_mat = Mat::from_fn(k.clone(), h_count, dim, |r, c| {
                    tinv.at(rank_b + r, c).clone()
                });
                // h: -(preimage of the B part): C_n -> C_{n-1}.
                let prev_dim = if nid > 0 { block.basis[nid - 1].len() } else { 0 };
                let mut h_map = Mat::zeros(k.clone(), prev_dim, dim);
                for (bi, &piv_col) in preimages.iter().enumerate() {
                    for c in 0..dim {
                        let coef = tinv.at(bi, c);
                        if !k.is_zero(coef) {
                            let v = k.sub(h_map.at(piv_col, c), coef);
                            h_map.set(piv_col, c, v);
                        }
                    }
                }
                iota.push(h_mat);
                pi.push(pi_mat);
                hom.push(h_map);
                ext.push(n_ext);
            }
            data.insert((j, i), BlockContraction { iota, pi, hom, ext });
        }
    }
    let ctr = Contraction { res_bound: b, rule, data };
    verify_contraction(k, blocks, &ctr)?;
    Ok(ctr)
}

/// Exact verification of the five contraction identities on every block
/// and degree.
pub fn verify_contraction<K: Field>(
    k: &K,
    blocks: &HomBlocks<K>,
    ctr: &Contraction<K>,
) -> Result<()> {
    let b = blocks.res_bound;
    for j in 0..blocks.n_simples {
        for i in 0..blocks.n_simples {
            let block = blocks.block(j, i);
            let bc = &ctr.data[&(j, i)];
            let nids = block.basis.len();
            for nid in 0..nids {
                let dim = block.basis[nid].len();
                let iota = &bc.iota[nid];
                let pi = &bc.pi[nid];
                let h = &bc.hom[nid];
                // pi o iota = id.
                if pi.mul(iota) != Mat::identity(k.clone(), iota.cols()) {
                    return Err(Error::Internal(format!(
                        "pi o iota != id on block ({j},{i}) degree index {nid}"
                    )));
                }
                // h o iota = 0.
                if !h.mul(iota).is_zero() {
                    return Err(Error::Internal(format!(
                        "h o iota != 0 on block ({j},{i}) degree index {nid}"
                    )));
                }
                // pi o h = 0 (pi at degree nid - 1 applied to the image).
                if nid > 0 && !bc.pi[nid - 1].mul(h).is_zero() {
                    return Err(Error::Internal(format!(
                        "pi o h != 0 on block ({j},{i}) degree index {nid}"
                    )));
                }
                // h o h = 0.
                if nid > 0 && !bc.hom[nid - 1].mul(h).is_zero() {
                    return Err(Error::Internal(format!(
                        "h o h != 0 on block ({j},{i}) degree index {nid}"
                    )));
                }
                // iota o pi - id = d h + h d.
                let lhs = iota.mul(pi).sub(&Mat::identity(k.clone(), dim));
                let mut rhs = Mat::zeros(k.clone(), dim, dim);
                if nid > 0 {
                    rhs = rhs.add(&block.diff[nid - 1].mul(h));
                }
                if nid + 1 < nids {
                    rhs = rhs.add(&bc.hom[nid + 1].mul(&block.diff[nid]));
                }
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "homotopy identity fails on block ({j},{i}) degree index {nid}"
                    )));
                }
            }
        }
    }
    let _ = b;
    Ok(())
}
