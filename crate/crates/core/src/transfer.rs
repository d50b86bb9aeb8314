//! Homotopy transfer: the minimal A-infinity structure on the cohomology
//! of the Hom complex.
//!
//! The recursion runs in the degree-shifted picture, where no sign choices
//! remain: with `b2(x, y) = (-1)^{|x|} x o y` (|x| the unshifted degree)
//! the tree maps are
//!
//!   theta_k = sum_{u+v=k} b2(G_u (x) G_v),   G_1 = iota,  G_u = h theta_u,
//!
//! every `G_u` is an operator of shifted degree 0 (so tensor evaluation
//! produces no Koszul signs), and `b_k = pi theta_k` satisfies the sign-free
//! shifted Stasheff identities. The reported operations are
//!
//!   m_k(x_1..x_k) = (-1)^{sum_i (k-i)|x_i|} b_k(x_1..x_k),
//!
//! of degree `2-k`, satisfying the classical identities
//! `sum (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) = 0` with the usual
//! Koszul evaluation signs; `check_stasheff` verifies exactly that, on all
//! trusted tuples.
//!
//! Values are evaluated lazily per input tuple and memoized; an output (or
//! any internal value a check needs) whose degree exceeds the trust bound
//! `D = res_bound - 2` is flagged untrusted rather than reported.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::contraction::{build_contraction, Contraction, PivotRule};
use crate::error::Error;
use crate::exactla::Field;
use crate::homcx::{EndElt, HomBlocks};
use crate::quiver::MonomialAlgebra;
use crate::resolution::{ext_table, ExtTable, ExtVec};
use crate::Result;

/// One basis element of the transferred structure's underlying space (the
/// full cohomology of the Hom complex in degrees `0..=trust`); the leading
/// elements of each group are the canonical Ext basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HBasisElt {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    /// Coordinate index within the group; `is_ext` iff it is below the
    /// group's Ext prefix.
    pub idx: usize,
    pub is_ext: bool,
}

/// An element of one group of the transferred structure, in full
/// cohomology coordinates (Ext prefix first).
#[derive(Debug, Clone, PartialEq)]
pub struct HVec<K: Field> {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub coords: Vec<K::Elem>,
}

impl<K: Field> HVec<K> {
    pub fn is_zero(&self, k: &K) -> bool {
        self.coords.iter().all(|c| k.is_zero(c))
    }
}

/// Report of a Stasheff identity sweep.
#[derive(Debug, Clone)]
pub struct StasheffReport {
    pub tuples_checked: usize,
    /// Violations as (identity arity, input tuple).
    pub violations: Vec<(usize, Vec<u32>)>,
}

impl StasheffReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The transferred minimal A-infinity structure, with its evaluation
/// engine.
pub struct AInfinity<'a, K: Field> {
    pub alg: &'a MonomialAlgebra,
    pub k: K,
    pub table: ExtTable<K>,
    pub blocks: HomBlocks<K>,
    pub ctr: Contraction<K>,
    /// Trusted output degree bound `D`.
    pub trust: usize,
    pub k_max: usize,
    basis: Vec<HBasisElt>,
    groups: BTreeMap<(usize, usize, usize), Vec<u32>>,
    /// Memoized tree maps G_u, keyed by input id tuple. `None` is zero.
    memo_g: BTreeMap<Vec<u32>, Option<EndElt<K>>>,
    /// Memoized m-values; `None` means untrusted (outside the window).
    memo_m: BTreeMap<Vec<u32>, Option<HVec<K>>>,
}

impl<'a, K: Field> AInfinity<'a, K> {
    /// Runs resolutions, Hom complex, contraction and sets up the lazy
    /// evaluator. `d` is the trusted degree bound (resolutions go to
    /// `d + 2`), `k_max` the largest operation arity evaluated.
    pub fn new(
        alg: &'a MonomialAlgebra,
        k: K,
        d: usize,
        k_max: usize,
        rule: PivotRule,
    ) -> Result<Self> {
        if k_max < 2 {
            return Err(Error::InvalidInput("k_max must be at least 2".into()));
        }
        let table = ext_table(alg, &k, d)?;
        let blocks = HomBlocks::new(alg, &k, &table)?;
        let ctr = build_contraction(alg, &k, &table, &blocks, rule)?;
        let mut basis = Vec::new();
        let mut groups = BTreeMap::new();
        for n in 0..=d {
            for j in 0..table.n_simples() {
                for i in 0..table.n_simples() {
                    let h = ctr.h_dim(j, i, n as i64, &blocks);
                    if h == 0 {
                        continue;
                    }
                    let ext = ctr.ext_prefix(j, i, n as i64, &blocks);
                    let ids: Vec<u32> = (0..h)
                        .map(|idx| {
                            let id = basis.len() as u32;
                            basis.push(HBasisElt {
                                degree: n,
                                source: j,
                                target: i,
                                idx,
                                is_ext: idx < ext,
                            });
                            id
                        })
                        .collect();
                    groups.insert((n, j, i), ids);
                }
            }
        }
        Ok(AInfinity {
            alg,
            k,
            table,
            blocks,
            ctr,
            trust: d,
            k_max,
            basis,
            groups,
            memo_g: BTreeMap::new(),
            memo_m: BTreeMap::new(),
        })
    }

    pub fn basis_elt(&self, id: u32) -> &HBasisElt {
        &self.basis[id as usize]
    }

    pub fn n_basis(&self) -> usize {
        self.basis.len()
    }

    /// Ids of a group's basis (Ext prefix first); empty if the group is 0.
    pub fn group_ids(&self, n: usize, source: usize, target: usize) -> &[u32] {
        self.groups.get(&(n, source, target)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Ext dimension of a group (prefix length).
    pub fn ext_dim(&self, n: usize, source: usize, target: usize) -> usize {
        self.table.dim(n, source, target)
    }

    pub fn zero_hvec(&self, n: usize, source: usize, target: usize) -> HVec<K> {
        let len = self.group_ids(n, source, target).len();
        HVec { degree: n, source, target, coords: vec![self.k.zero(); len] }
    }

    /// Lifts an Ext vector into full cohomology coordinates.
    pub fn hvec_from_ext(&self, v: &ExtVec<K>) -> HVec<K> {
        let mut out = self.zero_hvec(v.degree, v.source, v.target);
        for (i, c) in v.coords.iter().enumerate() {
            out.coords[i] = c.clone();
        }
        out
    }

    /// The Ext coordinates of a full vector (the edge-class coordinates past the
    /// prefix are dropped).
    pub fn ext_part(&self, v: &HVec<K>) -> ExtVec<K> {
        let ext = self.ext_dim(v.degree, v.source, v.target);
        ExtVec {
            degree: v.degree,
            source: v.source,
            target: v.target,
            coords: v.coords.iter().take(ext).cloned().collect(),
        }
    }

    fn g_map(&mut self, ids: &[u32]) -> Option<EndElt<K>> {
        if let Some(v) = self.memo_g.get(ids) {
            return v.clone();
        }
        let val = if ids.len() == 1 {
            let e = self.basis[ids[0] as usize];
            Some(self.ctr.basis_rep(
                &self.k,
                &self.blocks,
                e.source,
                e.target,
                e.degree as i64,
                e.idx,
            ))
        } else {
            self.theta(ids)
                .map(|t| self.ctr.apply_h(&self.k, &self.blocks, &t))
        };
        // A zero representative behaves like zero.
        let val = match val {
            Some(v) if v.coords.iter().all(|c| self.k.is_zero(c)) => None,
            other => other,
        };
        self.memo_g.insert(ids.to_vec(), val.clone());
        val
    }

    /// The tree map `theta_k` (k >= 2) on basis inputs: the sum over splits
    /// of the shifted product of the two G-branches.
    fn theta(&mut self, ids: &[u32]) -> Option<EndElt<K>> {
        debug_assert!(ids.len() >= 2);
        let mut acc: Option<EndElt<K>> = None;
        for u in 1..ids.len() {
            let left = self.g_map(&ids[..u]);
            let right = self.g_map(&ids[u..]);
            let (Some(l), Some(r)) = (left, right) else { continue };
            // b2(l, r) = (-1)^{|l|} l o r; l is applied second.
            let Some(mut prod) = self.blocks.compose(self.alg, &self.k, &l, &r) else {
                continue;
            };
            if l.degree.rem_euclid(2) == 1 {
                for c in prod.coords.iter_mut() {
                    *c = self.k.neg(c);
                }
            }
            acc = Some(match acc {
                None => prod,
                Some(mut a) => {
                    for (x, y) in a.coords.iter_mut().zip(&prod.coords) {
                        *x = self.k.add(x, y);
                    }
                    a
                }
            });
        }
        acc
    }

    /// Output group of a composable tuple, or `None` if the chain does not
    /// compose or the arity is out of range.
    pub fn tuple_group(&self, ids: &[u32]) -> Option<(i64, usize, usize)> {
        if ids.len() < 2 || ids.len() > self.k_max {
            return None;
        }
        for w in ids.windows(2) {
            let a = self.basis[w[0] as usize];
            let b = self.basis[w[1] as usize];
            if a.source != b.target {
                return None;
            }
        }
        let first = self.basis[ids[0] as usize];
        let last = self.basis[ids[ids.len() - 1] as usize];
        let total: i64 = ids.iter().map(|&id| self.basis[id as usize].degree as i64).sum();
        let n = total + 2 - ids.len() as i64;
        Some((n, last.source, first.target))
    }

    /// The operation `m_k` on a tuple of basis elements, in full cohomology
    /// coordinates. `Ok(None)` flags an untrusted output (degree outside
    /// `0..=trust`); incomposable tuples give the zero vector of their
    /// formal group when that group is trusted, else `None`.
    pub fn m_on_ids(&mut self, ids: &[u32]) -> Result<Option<HVec<K>>> {
        if ids.len() < 2 {
            return Err(Error::InvalidInput("operations start at arity 2".into()));
        }
        if ids.len() > self.k_max {
            return Err(Error::InvalidInput(format!(
                "arity {} exceeds k_max = {}",
                ids.len(),
                self.k_max
            )));
        }
        if let Some(v) = self.memo_m.get(ids) {
            return Ok(v.clone());
        }
        let first = self.basis[ids[0] as usize];
        let last = self.basis[ids[ids.len() - 1] as usize];
        let total: i64 = ids.iter().map(|&id| self.basis[id as usize].degree as i64).sum();
        let n = total + 2 - ids.len() as i64;
        let val = if n < 0 || n as usize > self.trust {
            None
        } else {
            let n = n as usize;
            let mut out = self.zero_hvec(n, last.source, first.target);
            let composable = ids.windows(2).all(|w| {
                self.basis[w[0] as usize].source == self.basis[w[1] as usize].target
            });
            if composable {
                if let Some(theta) = self.theta(ids) {
                    debug_assert_eq!(theta.degree, n as i64);
                    let coords = self.ctr.project(&self.blocks, &theta);
                    // Unshift: m_k = (-1)^{sum (k-i) deg_i} b_k.
                    let kk = ids.len();
                    let mut sign = 0usize;
                    for (pos, &id) in ids.iter().enumerate() {
                        sign += (kk - 1 - pos) * self.basis[id as usize].degree;
                    }
                    let negate = sign % 2 == 1;
                    out.coords = coords
                        .into_iter()
                        .map(|c| if negate { self.k.neg(&c) } else { c })
                        .collect();
                }
            }
            Some(out)
        };
        self.memo_m.insert(ids.to_vec(), val.clone());
        Ok(val)
    }

    /// Multilinear extension of `m_k` to arbitrary vectors of the groups.
    pub fn m_on_vectors(&mut self, inputs: &[HVec<K>]) -> Result<Option<HVec<K>>> {
        if inputs.len() < 2 {
            return Err(Error::InvalidInput("operations start at arity 2".into()));
        }
        // Expand over the support of each input.
        let supports: Vec<Vec<(u32, K::Elem)>> = inputs
            .iter()
            .map(|v| {
                let ids = self.group_ids(v.degree, v.source, v.target);
                ids.iter()
                    .zip(&v.coords)
                    .filter(|(_, c)| !self.k.is_zero(c))
                    .map(|(&id, c)| (id, c.clone()))
                    .collect()
            })
            .collect();
        let total: i64 = inputs.iter().map(|v| v.degree as i64).sum();
        let n = total + 2 - inputs.len() as i64;
        if n < 0 || n as usize > self.trust {
            return Ok(None);
        }
        let n = n as usize;
        let src = inputs.last().unwrap().source;
        let tgt = inputs[0].target;
        let mut acc = self.zero_hvec(n, src, tgt);
        let mut stack: Vec<usize> = vec![0; inputs.len()];
        'outer: loop {
            // Current combination.
            if supports.iter().all(|s| !s.is_empty()) {
                let ids: Vec<u32> =
                    stack.iter().zip(&supports).map(|(&i, s)| s[i].0).collect();
                let mut coef = self.k.one();
                for (i, s) in stack.iter().zip(&supports) {
                    coef = self.k.mul(&coef, &s[*i].1);
                }
                match self.m_on_ids(&ids)? {
                    Some(v) => {
                        for (a, b) in acc.coords.iter_mut().zip(&v.coords) {
                            *a = self.k.add(a, &self.k.mul(&coef, b));
                        }
                    }
                    None => return Ok(None),
                }
            } else {
                break;
            }
            // Advance the multi-index.
            for pos in (0..stack.len()).rev() {
                stack[pos] += 1;
                if stack[pos] < supports[pos].len() {
                    continue 'outer;
                }
                stack[pos] = 0;
                if pos == 0 {
                    break 'outer;
                }
            }
        }
        Ok(Some(acc))
    }

    /// All composable tuples of a given arity whose entries satisfy the
    /// filter, with total degree at most `max_total`. Consecutive entries
    /// chain as maps: `x_t.source == x_{t+1}.target` (the rightmost entry
    /// is applied first).
    pub fn composable_tuples(
        &self,
        arity: usize,
        max_total: usize,
        filter: impl Fn(&HBasisElt) -> bool + Copy,
    ) -> Vec<Vec<u32>> {
        // Right extension: the next entry's target must equal the current
        // last entry's source.
        let mut by_target: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let mut all: Vec<u32> = Vec::new();
        for (pos, e) in self.basis.iter().enumerate() {
            if filter(e) {
                by_target.entry(e.target).or_default().push(pos as u32);
                all.push(pos as u32);
            }
        }
        let mut out = Vec::new();
        let mut current: Vec<u32> = Vec::new();
        fn extend<K: Field>(
            this: &AInfinity<'_, K>,
            by_target: &BTreeMap<usize, Vec<u32>>,
            current: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
            arity: usize,
            budget: i64,
        ) {
            if current.len() == arity {
                out.push(current.clone());
                return;
            }
            let last = this.basis[*current.last().unwrap() as usize];
            if let Some(cands) = by_target.get(&last.source) {
                for &id in cands {
                    let e = this.basis[id as usize];
                    if (e.degree as i64) > budget {
                        continue;
                    }
                    current.push(id);
                    extend(this, by_target, current, out, arity, budget - e.degree as i64);
                    current.pop();
                }
            }
        }
        for &id in &all {
            let e = self.basis[id as usize];
            if (e.degree as usize) > max_total {
                continue;
            }
            current.push(id);
            extend(
                self,
                &by_target,
                &mut current,
                &mut out,
                arity,
                max_total as i64 - e.degree as i64,
            );
            current.pop();
        }
        out
    }

    /// Verifies the Stasheff identities on every trusted tuple: for each
    /// arity `kk <= k_max` and composable basis tuple whose residual and
    /// every internal value stay inside the trusted window, the residual
    ///
    ///   sum_{r+s+t=kk} (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t)
    ///
    /// must vanish exactly. Violations are reported, not raised.
    pub fn check_stasheff(&mut self) -> Result<StasheffReport> {
        let mut report = StasheffReport { tuples_checked: 0, violations: Vec::new() };
        for kk in 3..=self.k_max {
            let tuples =
                self.composable_tuples(kk, self.trust + kk - 3, |_| true);
            for ids in tuples {
                let degs: Vec<usize> =
                    ids.iter().map(|&id| self.basis[id as usize].degree).collect();
                let total: usize = degs.iter().sum();
                let res_deg = total as i64 + 3 - kk as i64;
                if res_deg < 0 || res_deg as usize > self.trust {
                    continue;
                }
                // Every inner window must stay trusted.
                let mut windows_ok = true;
                'wcheck: for s in 2..kk {
                    for r in 0..=(kk - s) {
                        let inner: usize = degs[r..r + s].iter().sum();
                        let d = inner as i64 + 2 - s as i64;
                        if d < 0 || d as usize > self.trust {
                            windows_ok = false;
                            break 'wcheck;
                        }
                    }
                }
                if !windows_ok {
                    continue;
                }
                if let Some(residual) = self.stasheff_residual(&ids)? {
                    report.tuples_checked += 1;
                    if !residual.is_zero(&self.k) {
                        report.violations.push((kk, ids));
                    }
                }
            }
        }
        Ok(report)
    }

    /// The residual of the arity-`kk` identity on one tuple; `None` if some
    /// required value is untrusted.
    pub fn stasheff_residual(&mut self, ids: &[u32]) -> Result<Option<HVec<K>>> {
        let kk = ids.len();
        let degs: Vec<usize> = ids.iter().map(|&id| self.basis[id as usize].degree).collect();
        let total: usize = degs.iter().sum();
        let res_deg = total as i64 + 3 - kk as i64;
        if res_deg < 0 || res_deg as usize > self.trust {
            return Ok(None);
        }
        let src = self.basis[ids[kk - 1] as usize].source;
        let tgt = self.basis[ids[0] as usize].target;
        let mut residual = self.zero_hvec(res_deg as usize, src, tgt);
        for s in 2..kk {
            for r in 0..=(kk - s) {
                let t = kk - s - r;
                let outer_arity = r + 1 + t;
                if outer_arity > self.k_max || outer_arity < 2 {
                    continue;
                }
                let Some(inner) = self.m_on_ids(&ids[r..r + s])? else {
                    return Ok(None);
                };
                // (-1)^{r + s t} and the Koszul sign from moving m_s (of
                // degree 2 - s) past the first r inputs.
                let koszul: usize = degs[..r].iter().sum::<usize>() * s;
                let negate = (r + s * t + koszul) % 2 == 1;
                let inner_ids: Vec<u32> =
                    self.group_ids(inner.degree, inner.source, inner.target).to_vec();
                for (pos, c) in inner.coords.iter().enumerate() {
                    if self.k.is_zero(c) {
                        continue;
                    }
                    let mut outer_ids = Vec::with_capacity(outer_arity);
                    outer_ids.extend_from_slice(&ids[..r]);
                    outer_ids.push(inner_ids[pos]);
                    outer_ids.extend_from_slice(&ids[r + s..]);
                    let Some(outer) = self.m_on_ids(&outer_ids)? else {
                        return Ok(None);
                    };
                    let coef = if negate { self.k.neg(c) } else { c.clone() };
                    for (a, b) in residual.coords.iter_mut().zip(&outer.coords) {
                        *a = self.k.add(a, &self.k.mul(&coef, b));
                    }
                }
            }
        }
        Ok(Some(residual))
    }

    /// Mutation hook for the suite: adds 1 to one coordinate of a stored
    /// trusted value (the `seed`-th nonzero memo entry in deterministic
    /// order); subsequent identity checks must fail.
    pub fn corrupt_stored_value(&mut self, seed: usize) -> Option<(usize, Vec<u32>)> {
        let keys: Vec<Vec<u32>> = self
            .memo_m
            .iter()
            .filter(|(_, v)| {
                v.as_ref().map(|h| !h.is_zero(&self.k)).unwrap_or(false)
            })
            .map(|(k, _)| k.clone())
            .collect();
        if keys.is_empty() {
            return None;
        }
        let key = &keys[seed % keys.len()];
        let slot = self.memo_m.get_mut(key).unwrap();
        if let Some(Some(h)) = slot.as_mut().map(Some) {
            let one = self.k.one();
            h.coords[0] = self.k.add(&h.coords[0], &one);
        }
        Some((key.len(), key.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use crate::quiver::KupischSeries;

    fn linear(c: &[usize]) -> MonomialAlgebra {
        MonomialAlgebra::nakayama_linear(&KupischSeries::linear(c.to_vec()).unwrap()).unwrap()
    }

    fn cyclic(c: &[usize]) -> MonomialAlgebra {
        MonomialAlgebra::nakayama_cyclic(&KupischSeries::cyclic(c.to_vec()).unwrap()).unwrap()
    }

    /// The unique Ext^1 basis id of a one-vertex algebra.
    fn u_id<K: Field>(a: &AInfinity<'_, K>) -> u32 {
        a.group_ids(1, 0, 0)[0]
    }

    #[test]
    fn semisimple_structure_is_the_algebra() {
        let alg = linear(&[1, 1]);
        let k = Rationals;
        let mut a = AInfinity::new(&alg, k, 3, 4, PivotRule::Leftmost).unwrap();
        // m_2(e_i, e_j) = delta e_i; all higher operations vanish.
        let e0 = a.group_ids(0, 0, 0)[0];
        let e1 = a.group_ids(0, 1, 1)[0];
        let v = a.m_on_ids(&[e0, e0]).unwrap().unwrap();
        assert!(a.k.is_one(&v.coords[0]));
        let z = a.m_on_ids(&[e0, e1]).unwrap().unwrap();
        assert!(z.is_zero(&Rationals));
        // A triple product of idempotents lands in degree -1, outside the
        // graded window: flagged rather than reported.
        assert!(a.m_on_ids(&[e0, e0, e0]).unwrap().is_none());
    }

    #[test]
    fn units_act_strictly() {
        let alg = linear(&[1, 2, 2]);
        let k = PrimeField::default_prime();
        let mut a = AInfinity::new(&alg, k, 3, 4, PivotRule::Leftmost).unwrap();
        let e0 = a.group_ids(0, 0, 0)[0];
        let e1 = a.group_ids(0, 1, 1)[0];
        let x = a.group_ids(1, 1, 0)[0]; // Ext^1(S_2, S_1)
        let left = a.m_on_ids(&[e0, x]).unwrap().unwrap();
        assert!(a.k.is_one(&left.coords[0]));
        let right = a.m_on_ids(&[x, e1]).unwrap().unwrap();
        assert!(a.k.is_one(&right.coords[0]));
    }

    #[test]
    fn kx2_square_is_nonzero() {
        // k[x]/(x^2): Ext = k[u] with u^2 != 0: m_2(u,u) spans Ext^2.
        let alg = cyclic(&[2]);
        let k = PrimeField::default_prime();
        let mut a = AInfinity::new(&alg, k, 4, 4, PivotRule::Leftmost).unwrap();
        let u = u_id(&a);
        let sq = a.m_on_ids(&[u, u]).unwrap().unwrap();
        assert!(!a.k.is_zero(&sq.coords[0]));
        let rep = a.check_stasheff().unwrap();
        assert!(rep.passed(), "violations: {:?}", rep.violations);
        assert!(rep.tuples_checked > 0);
    }

    #[test]
    fn kx3_madsen_pattern() {
        // k[x]/(x^3): m_2(u,u) = 0, m_3(u,u,u) nonzero multiple of v.
        let alg = cyclic(&[3]);
        let k = PrimeField::default_prime();
        let mut a = AInfinity::new(&alg, k, 6, 6, PivotRule::Leftmost).unwrap();
        let u = u_id(&a);
        let sq = a.m_on_ids(&[u, u]).unwrap().unwrap();
        assert!(sq.is_zero(&a.k.clone()), "u^2 = {:?}", sq.coords);
        let cube = a.m_on_ids(&[u, u, u]).unwrap().unwrap();
        assert!(!a.k.is_zero(&cube.coords[0]), "m_3(u,u,u) = 0");
    }

    #[test]
    fn kx3_stasheff_passes() {
        let alg = cyclic(&[3]);
        let k = PrimeField::default_prime();
        let mut a = AInfinity::new(&alg, k, 6, 6, PivotRule::Leftmost).unwrap();
        let rep = a.check_stasheff().unwrap();
        assert!(rep.passed(), "violations: {:?}", rep.violations);
        assert!(rep.tuples_checked > 0);
    }

    #[test]
    fn degree_rule_holds_on_stored_values() {
        let alg = cyclic(&[3]);
        let k = PrimeField::default_prime();
        let mut a = AInfinity::new(&alg, k, 5, 5, PivotRule::Leftmost).unwrap();
        for arity in 2..=4usize {
            for ids in a.composable_tuples(arity, a.trust + arity - 2, |_| true) {
                let total: usize =
                    ids.iter().map(|&id| a.basis_elt(id).degree).sum();
                if let Some(v) = a.m_on_ids(&ids).unwrap() {
                    assert_eq!(v.degree as i64, total as i64 + 2 - arity as i64);
                }
            }
        }
    }

    #[test]
    fn mutation_breaks_stasheff() {
        let alg = cyclic(&[3]);
        let k = PrimeField::default_prime();
        let mut a = AInfinity::new(&alg, k, 6, 6, PivotRule::Leftmost).unwrap();
        let rep = a.check_stasheff().unwrap();
        assert!(rep.passed());
        a.corrupt_stored_value(0).expect("some nonzero value to corrupt");
        let rep2 = a.check_stasheff().unwrap();
        assert!(!rep2.passed(), "corruption went unnoticed");
    }

    #[test]
    fn corrupted_triple_product_fails_at_arity_four() {
        // Corrupting m_3(u,u,u) must break the arity-4 identity on
        // (u,u,u,u), which mixes m_2(m_3) and m_3(m_2) terms.
        let alg = cyclic(&[3]);
        let k = PrimeField::default_prime();
        let mut a = AInfinity::new(&alg, k, 6, 6, PivotRule::Leftmost).unwrap();
        let u = u_id(&a);
        // Evaluate exactly one tuple so the seeded corruption hits it.
        let v = a.m_on_ids(&[u, u, u]).unwrap().unwrap();
        assert!(!v.is_zero(&a.k.clone()));
        a.corrupt_stored_value(0).unwrap();
        let rep = a.check_stasheff().unwrap();
        // The damage surfaces first in arity-4 identities (tuples mixing
        // the corrupted m_3 with one more input; the pure (u,u,u,u)
        // residual stays zero by graded commutativity of the product).
        assert!(
            rep.violations.iter().any(|(arity, _)| *arity == 4),
            "violations: {:?}",
            rep.violations
        );
    }

    #[test]
    fn reversed_pivot_rule_agrees_on_zero_pattern() {
        for ell in [3usize, 4] {
            let alg = cyclic(&[ell]);
            let k = PrimeField::default_prime();
            let mut a = AInfinity::new(&alg, k, 6, 6, PivotRule::Leftmost).unwrap();
            let mut b = AInfinity::new(&alg, k, 6, 6, PivotRule::Rightmost).unwrap();
            let ua = u_id(&a);
            let ub = u_id(&b);
            for kk in 2..=ell {
                let va = a.m_on_ids(&vec![ua; kk]).unwrap().unwrap();
                let vb = b.m_on_ids(&vec![ub; kk]).unwrap().unwrap();
                let za = va.is_zero(&a.k.clone());
                let zb = vb.is_zero(&b.k.clone());
                assert_eq!(za, zb, "ell={ell} k={kk}");
                assert_eq!(za, kk != ell, "ell={ell} k={kk}");
            }
        }
    }
}
