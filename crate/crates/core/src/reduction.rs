//! Reduction of exact-sequence data to a linear Nakayama algebra, and the
//! generation checks on the transferred structure.
//!
//! From the interior lengths of an exact sequence `0 -> S_a -> M_1 -> ...
//! -> M_{d+1} -> S_b -> 0` the image lengths `N_i` are forced by exactness;
//! the associated Kupisch series is
//!
//!   (1, 2, .., len M_1, len N_1 + 1, .., len M_2, .., len M_{d+1}),
//!
//! of length `p = sum len M_i - sum len N_j`. Over that algebra the
//! sequence re-materializes as a chain of intervals with bicartesian
//! unfolding; dropping its first column yields the sequence whose class
//! `eta` satisfies `m_ell(eta_1, .., eta_{ell-1}, eta) = lambda gamma` with
//! `lambda` a nonzero scalar, `gamma` the class of the augmented minimal
//! resolution of the last simple, and `eta_i` the almost-split classes.
//!
//! `generation_closure` verifies directly that iterated operations applied
//! to the classes of degrees 0 and 1 span every trusted Ext group.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ar::ar_translate_sequence;
use crate::error::Error;
use crate::exactla::{Field, Mat};
use crate::module::{image_module, uniserial_labels, IntervalModule, Module, ModuleHom};
use crate::quiver::{KupischSeries, MonomialAlgebra, NakayamaShape};
use crate::resolution::{yoneda_class, ExactSequenceData, ExtTable, ExtVec};
use crate::transfer::{AInfinity, HVec};
use crate::Result;

/// Interior lengths of an exact sequence between simples, with the image
/// lengths derived from the exactness recurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceLengths {
    /// `[len M_1, .., len M_{d+1}]`, `d >= 1`.
    pub lengths_m: Vec<usize>,
    /// Derived `[len N_1, .., len N_d]`.
    pub lengths_n: Vec<usize>,
}

impl SequenceLengths {
    /// Validates the recurrences: `N_1 = M_1 - 1`, `N_i = M_i - N_{i-1}`,
    /// all `N_i >= 1`, and `M_{d+1} = N_d + 1`. Errors identify the first
    /// failed recurrence.
    pub fn new(lengths_m: &[usize]) -> Result<Self> {
        if lengths_m.len() < 2 {
            return Err(Error::InvalidLengths {
                index: 1,
                reason: "need at least two interior terms (d >= 1)".into(),
            });
        }
        let d = lengths_m.len() - 1;
        let mut lengths_n = Vec::with_capacity(d);
        for i in 0..d {
            let prev = if i == 0 { 1 } else { lengths_n[i - 1] };
            if lengths_m[i] < prev + 1 {
                return Err(Error::InvalidLengths {
                    index: i + 1,
                    reason: format!(
                        "len N_{} = len M_{} - {} would be {} < 1",
                        i + 1,
                        i + 1,
                        prev,
                        lengths_m[i] as i64 - prev as i64
                    ),
                });
            }
            lengths_n.push(lengths_m[i] - prev);
        }
        if lengths_m[d] != lengths_n[d - 1] + 1 {
            return Err(Error::InvalidLengths {
                index: d + 1,
                reason: format!(
                    "len M_{} must equal len N_{} + 1 = {}",
                    d + 1,
                    d,
                    lengths_n[d - 1] + 1
                ),
            });
        }
        Ok(SequenceLengths { lengths_m: lengths_m.to_vec(), lengths_n })
    }

    pub fn d(&self) -> usize {
        self.lengths_m.len() - 1
    }

    /// `ell = len M_1`.
    pub fn ell(&self) -> usize {
        self.lengths_m[0]
    }

    /// `p = sum len M_i - sum len N_j`.
    pub fn p(&self) -> usize {
        self.lengths_m.iter().sum::<usize>() - self.lengths_n.iter().sum::<usize>()
    }

    /// Top vertex `t_i` (1-based) of the interval `M_i` over the reduced
    /// algebra; `t_0 = 1` by convention (the left-end simple).
    fn tops(&self) -> Vec<usize> {
        let mut t = vec![1usize];
        let mut s = vec![0usize]; // socle of M_i (1-based), s[0] unused
        for i in 1..=self.lengths_m.len() {
            let socle = if i == 1 {
                1
            } else if i == 2 {
                2
            } else {
                t[i - 2] + 1
            };
            s.push(socle);
            t.push(socle + self.lengths_m[i - 1] - 1);
        }
        t
    }

    /// Socle/top windows (1-based, inclusive) of the intervals `M_i^B`.
    pub fn windows(&self) -> Vec<(usize, usize)> {
        let t = self.tops();
        (1..=self.lengths_m.len())
            .map(|i| {
                let socle = if i == 1 {
                    1
                } else if i == 2 {
                    2
                } else {
                    t[i - 2] + 1
                };
                (socle, t[i])
            })
            .collect()
    }
}

/// The Kupisch series of the reduced algebra, with its length `p`.
pub fn kupisch_from_sequence(lengths_m: &[usize]) -> Result<(KupischSeries, usize)> {
    let sl = SequenceLengths::new(lengths_m)?;
    let d = sl.d();
    let mut c = Vec::new();
    // Block (1 .. len M_1).
    for v in 1..=sl.lengths_m[0] {
        c.push(v);
    }
    // Blocks (len N_{i-1} + 1 .. len M_i) for 2 <= i <= d.
    for i in 2..=d {
        for v in (sl.lengths_n[i - 2] + 1)..=sl.lengths_m[i - 1] {
            c.push(v);
        }
    }
    // Final entry len M_{d+1}.
    c.push(sl.lengths_m[d]);
    let p = sl.p();
    if c.len() != p {
        return Err(Error::Internal(format!(
            "series length {} does not match p = {p}",
            c.len()
        )));
    }
    let series = KupischSeries::linear(c)?;
    Ok((series, p))
}

/// Builds the reduced algebra `B` of a length datum.
pub fn reduced_algebra(lengths_m: &[usize]) -> Result<(MonomialAlgebra, SequenceLengths)> {
    let sl = SequenceLengths::new(lengths_m)?;
    let (series, _) = kupisch_from_sequence(lengths_m)?;
    let alg = MonomialAlgebra::nakayama_linear(&series)?;
    Ok((alg, sl))
}

/// The inclusion-then-quotient map between overlapping intervals
/// `[a, b] -> [a', b']` (1-based windows, `a <= a' <= b + 1`, `b <= b'`):
/// identity on the shared window, zero elsewhere.
fn interval_connector<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    from: (usize, usize),
    to: (usize, usize),
) -> ModuleHom<K> {
    let n = alg.n_vertices();
    let blocks = (0..n)
        .map(|v| {
            let v1 = v + 1;
            let in_from = from.0 <= v1 && v1 <= from.1;
            let in_to = to.0 <= v1 && v1 <= to.1;
            let rows = usize::from(in_to);
            let cols = usize::from(in_from);
            let mut m = Mat::zeros(k.clone(), rows, cols);
            if in_from && in_to {
                m.set(0, 0, k.one());
            }
            m
        })
        .collect();
    ModuleHom::new(blocks)
}

/// Realizes the canonical exact sequence `0 -> S_1 -> M_1^B -> .. ->
/// M_{d+1}^B -> S_p -> 0` over the reduced algebra.
pub fn realize_sequence<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    sl: &SequenceLengths,
) -> Result<ExactSequenceData<K>> {
    let p = sl.p();
    let windows = sl.windows();
    let mut modules = vec![Module::simple(alg, k, 0)];
    for &(a, b) in &windows {
        modules.push(IntervalModule::from_window(alg, a - 1, b - 1)?.to_module(alg, k));
    }
    modules.push(Module::simple(alg, k, p - 1));
    let mut maps = Vec::new();
    // S_1 into the socle of M_1.
    maps.push(interval_connector(alg, k, (1, 1), windows[0]));
    for i in 0..windows.len() - 1 {
        maps.push(interval_connector(alg, k, windows[i], windows[i + 1]));
    }
    // Top projection onto S_p.
    maps.push(interval_connector(alg, k, windows[windows.len() - 1], (p, p)));
    let seq = ExactSequenceData { modules, maps };
    seq.verify_exact(alg, k)?;
    Ok(seq)
}

/// The sequence of the class `eta`: the realized grid with its first
/// column deleted, `0 -> S_ell -> [ell, t_2] -> M_3 -> .. -> S_p -> 0`
/// (for `d = 1` it degenerates to `0 -> S_ell -> [ell, p] -> S_p -> 0`).
pub fn eta_sequence<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    sl: &SequenceLengths,
) -> Result<ExactSequenceData<K>> {
    let p = sl.p();
    let ell = sl.ell();
    let windows = sl.windows();
    // Replace M_2's window by [ell, t_2]; for d = 1 the remaining interior
    // is just that interval.
    let mut mid_windows = vec![(ell, windows[1].1)];
    for w in windows.iter().skip(2) {
        mid_windows.push(*w);
    }
    let mut modules = vec![Module::simple(alg, k, ell - 1)];
    for &(a, b) in &mid_windows {
        modules.push(IntervalModule::from_window(alg, a - 1, b - 1)?.to_module(alg, k));
    }
    modules.push(Module::simple(alg, k, p - 1));
    let mut maps = Vec::new();
    maps.push(interval_connector(alg, k, (ell, ell), mid_windows[0]));
    for i in 0..mid_windows.len() - 1 {
        maps.push(interval_connector(alg, k, mid_windows[i], mid_windows[i + 1]));
    }
    maps.push(interval_connector(alg, k, mid_windows[mid_windows.len() - 1], (p, p)));
    let seq = ExactSequenceData { modules, maps };
    seq.verify_exact(alg, k)?;
    Ok(seq)
}

/// Reads the length datum and the bottom row of the bicartesian unfolding
/// off an exact sequence of uniserial modules between simples over a
/// Nakayama algebra. The image lengths are computed honestly and verified
/// against the recurrences.
pub fn unfold_sequence<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    seq: &ExactSequenceData<K>,
) -> Result<(SequenceLengths, Vec<usize>)> {
    if alg.nakayama().is_none() {
        return Err(Error::InvalidInput("unfolding needs a Nakayama algebra".into()));
    }
    seq.verify_exact(alg, k)?;
    let d_plus_1 = seq.interior_len();
    if d_plus_1 < 2 {
        return Err(Error::InvalidInput(
            "grid unfolding needs at least two interior terms (d >= 1); a 1-extension (split or not) has no grid".into(),
        ));
    }
    seq.modules[0]
        .simple_vertex()
        .ok_or_else(|| Error::EndsNotSimple("left end".into()))?;
    let b = seq
        .modules
        .last()
        .unwrap()
        .simple_vertex()
        .ok_or_else(|| Error::EndsNotSimple("right end".into()))?;
    // Interior lengths from the uniserial structure.
    let mut lengths_m = Vec::with_capacity(d_plus_1);
    let mut interior_labels = Vec::with_capacity(d_plus_1);
    for t in 1..=d_plus_1 {
        let labels = uniserial_labels(alg, k, &seq.modules[t])?;
        lengths_m.push(labels.len());
        interior_labels.push(labels);
    }
    let sl = SequenceLengths::new(&lengths_m)?;
    // Image lengths, honestly, with their composition labels.
    let d = sl.d();
    let mut image_labels: Vec<Vec<usize>> = Vec::with_capacity(d);
    for i in 1..=d {
        let (img, _, _) = image_module(alg, k, &seq.maps[i], &seq.modules[i + 1]);
        let labels = uniserial_labels(alg, k, &img)?;
        if labels.len() != sl.lengths_n[i - 1] {
            return Err(Error::NotExact(format!(
                "image length {} at position {} contradicts the recurrence value {}",
                labels.len(),
                i,
                sl.lengths_n[i - 1]
            )));
        }
        image_labels.push(labels);
    }
    // Bottom row: composition factors of M_1 socle-to-top, then the new
    // factors of each later column (the quotient N_i), then the right end.
    let mut bottom: Vec<usize> = interior_labels[0].iter().rev().copied().collect();
    for i in 2..=d {
        // N_i = M_i / N_{i-1}: the top lengths_n[i-1] labels of M_i.
        let labels = &interior_labels[i - 1];
        let take = sl.lengths_n[i - 1];
        bottom.extend(labels[..take].iter().rev());
    }
    bottom.push(b);
    if bottom.len() != sl.p() {
        return Err(Error::Internal(format!(
            "bottom row length {} does not equal p = {}",
            bottom.len(),
            sl.p()
        )));
    }
    Ok((sl, bottom))
}

/// The almost-split classes `eta_i` of a linear Nakayama algebra: one for
/// every vertex `i` whose successor simple is non-projective (all of
/// `1..p-1` for the reduced algebras), each spanning its one-dimensional
/// `Ext^1` component.
pub fn eta_classes<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    table: &ExtTable<K>,
) -> Result<Vec<ExtVec<K>>> {
    let series = alg
        .nakayama()
        .ok_or_else(|| Error::InvalidInput("eta classes need a Nakayama algebra".into()))?;
    if series.shape() != NakayamaShape::Linear {
        return Err(Error::InvalidInput("eta classes are defined for the linear shape".into()));
    }
    let p = series.len();
    let mut out = Vec::new();
    for i in 0..p.saturating_sub(1) {
        if series.c(i + 1) < 2 {
            continue; // no arrow i -> i+1: S_{i+1} is projective
        }
        let s = Module::simple(alg, k, i + 1);
        let seq = ar_translate_sequence(alg, k, &s)?;
        let class = yoneda_class(alg, k, table, &seq)?;
        if class.is_zero(k) {
            return Err(Error::Internal(format!("AR class at vertex {} vanished", i + 1)));
        }
        if table.dim(1, i + 1, i) != 1 {
            return Err(Error::Internal(format!(
                "Ext^1 component at vertex {} is not one-dimensional",
                i + 1
            )));
        }
        out.push(class);
    }
    Ok(out)
}

/// The class of the augmented minimal projective resolution of the last
/// simple: the canonical generator of `Ext^{d+1}(S_p, S_target)` read off
/// the resolution's top term. Errors if the projective dimension is not
/// `d + 1`.
pub fn gamma_class<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    table: &ExtTable<K>,
    d: usize,
) -> Result<ExtVec<K>> {
    let _ = (alg, k);
    let p = table.n_simples();
    let res = &table.resolutions[p - 1];
    let pd = res.projective_dimension().ok_or(Error::WrongProjectiveDimension {
        expected: d + 1,
        found: table.res_bound + 1,
    })?;
    if pd != d + 1 {
        return Err(Error::WrongProjectiveDimension { expected: d + 1, found: pd });
    }
    if res.terms[d + 1].len() != 1 {
        return Err(Error::Internal(format!(
            "top of the resolution of the last simple has {} summands",
            res.terms[d + 1].len()
        )));
    }
    let target = res.terms[d + 1].summands[0];
    let mut class = table.zero_vec(k, d + 1, p - 1, target);
    class.coords[0] = k.one();
    Ok(class)
}

/// Result of the key identity check `m_ell(eta_1, .., eta_{ell-1}, eta) =
/// lambda gamma`.
#[derive(Debug, Clone)]
pub struct MEllReport<K: Field> {
    pub ell: usize,
    pub d: usize,
    /// The scalar `lambda` (nonzero on pass).
    pub scalar: Option<K::Elem>,
    pub pass: bool,
}

/// Evaluates the transferred `m_ell` on `(eta_1, .., eta_{ell-1}, eta)` and
/// checks the result is a nonzero multiple of `gamma` (equality is only
/// defined up to the A-infinity isomorphism ambiguity of the model).
pub fn check_m_ell_identity<'a, K: Field>(
    ainf: &mut AInfinity<'a, K>,
    sl: &SequenceLengths,
) -> Result<MEllReport<K>> {
    let alg = ainf.alg;
    let k = ainf.k.clone();
    let ell = sl.ell();
    let d = sl.d();
    if d + 1 > ainf.trust {
        return Err(Error::UntrustedDegree { degree: d + 1, trusted: ainf.trust });
    }
    if ell > ainf.k_max {
        return Err(Error::UntrustedDegree { degree: ell, trusted: ainf.k_max });
    }
    let etas = eta_classes(alg, &k, &ainf.table)?;
    if etas.len() + 1 < ell {
        return Err(Error::Internal("missing AR classes for the identity".into()));
    }
    let eta_seq = eta_sequence(alg, &k, sl)?;
    let eta = yoneda_class(alg, &k, &ainf.table, &eta_seq)?;
    if eta.is_zero(&k) {
        return Err(Error::Internal("the class eta vanished".into()));
    }
    let gamma = gamma_class(alg, &k, &ainf.table, d)?;

    let mut inputs: Vec<HVec<K>> = Vec::with_capacity(ell);
    for eta_i in etas.iter().take(ell - 1) {
        inputs.push(ainf.hvec_from_ext(eta_i));
    }
    inputs.push(ainf.hvec_from_ext(&eta));
    let value = ainf
        .m_on_vectors(&inputs)?
        .ok_or(Error::UntrustedDegree { degree: d + 1, trusted: ainf.trust })?;
    let ext_val = ainf.ext_part(&value);
    // Proportionality with a nonzero scalar.
    if ext_val.degree != gamma.degree || ext_val.source != gamma.source || ext_val.target != gamma.target
    {
        return Ok(MEllReport { ell, d, scalar: None, pass: false });
    }
    let lam = proportionality_scalar(&k, &ext_val.coords, &gamma.coords);
    let pass = lam.as_ref().map(|l| !k.is_zero(l)).unwrap_or(false);
    Ok(MEllReport { ell, d, scalar: lam, pass })
}

/// If `a = lambda * b` with `b != 0`, returns `lambda`.
fn proportionality_scalar<K: Field>(
    k: &K,
    a: &[K::Elem],
    b: &[K::Elem],
) -> Option<K::Elem> {
    let pivot = b.iter().position(|c| !k.is_zero(c))?;
    let lam = k.div(&a[pivot], &b[pivot]);
    for (x, y) in a.iter().zip(b) {
        if *x != k.mul(&lam, y) {
            return None;
        }
    }
    Some(lam)
}

/// Group-level vanishing behind the two lemmas the identity relies on
/// (1-based labels):
/// `Ext^2(S_{j+1}, S_i) = 0` for `1 <= i < j < ell` and
/// `Ext^{d+1}(S_p, S_i) = 0` for `1 < i < ell`.
#[derive(Debug, Clone, Default)]
pub struct VanishingReport {
    /// Violations `(i, j)` of the first family (1-based).
    pub ext2_violations: Vec<(usize, usize)>,
    /// Violations `i` of the second family (1-based).
    pub top_violations: Vec<usize>,
}

impl VanishingReport {
    pub fn pass(&self) -> bool {
        self.ext2_violations.is_empty() && self.top_violations.is_empty()
    }
}

pub fn check_vanishing_groups<K: Field>(
    table: &ExtTable<K>,
    sl: &SequenceLengths,
) -> Result<VanishingReport> {
    let ell = sl.ell();
    let d = sl.d();
    let p = sl.p();
    if d + 1 > table.res_bound {
        return Err(Error::UntrustedDegree { degree: d + 1, trusted: table.res_bound });
    }
    let mut report = VanishingReport::default();
    for i in 1..ell {
        for j in (i + 1)..ell {
            // Ext^2(S_{j+1}, S_i): source j (0-based), target i - 1.
            if table.dim(2, j, i - 1) != 0 {
                report.ext2_violations.push((i, j));
            }
        }
    }
    for i in 2..ell {
        if table.dim(d + 1, p - 1, i - 1) != 0 {
            report.top_violations.push(i);
        }
    }
    Ok(report)
}

/// Witness tree of a closure element: a seed class or an operation applied
/// to earlier elements.
#[derive(Debug, Clone)]
pub enum OpTree {
    Seed { id: u32 },
    Op { arity: usize, args: Vec<OpTree> },
}

/// Per-degree closure comparison.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim_ext: usize,
    pub dim_closure: usize,
    pub pass: bool,
}

/// Witness for one sampled basis class.
#[derive(Debug, Clone)]
pub struct Witness {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub basis_index: usize,
    pub tree: OpTree,
}

#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub degrees: Vec<DegreeReport>,
    pub witnesses: Vec<Witness>,
    pub pass: bool,
    pub rounds: usize,
}

/// Iteratively closes the span of the degree-0 and degree-1 Ext classes
/// under all trusted operations and compares, degree by degree, with the
/// full Ext dimensions. Operations of arity >= 3 are applied to tuples of
/// positive-degree elements (the degree-0 classes are the strict
/// idempotents; beyond the product they cannot contribute certified
/// values inside the window).
pub fn generation_closure<K: Field>(ainf: &mut AInfinity<'_, K>) -> Result<GenerationReport> {
    let k = ainf.k.clone();
    let trust = ainf.trust;
    let k_max = ainf.k_max;

    struct Elt<K: Field> {
        vec: HVec<K>,
        tree: OpTree,
        round: usize,
    }
    let mut elts: Vec<Elt<K>> = Vec::new();
    // Span per group, tracked on full coordinates.
    let mut spans: alloc::collections::BTreeMap<(usize, usize, usize), Mat<K>> =
        alloc::collections::BTreeMap::new();

    let add_elt = |ainf: &AInfinity<'_, K>,
                       elts: &mut Vec<Elt<K>>,
                       spans: &mut alloc::collections::BTreeMap<(usize, usize, usize), Mat<K>>,
                       vec: HVec<K>,
                       tree: OpTree,
                       round: usize|
     -> bool {
        if vec.is_zero(&ainf.k) {
            return false;
        }
        let key = (vec.degree, vec.source, vec.target);
        let span = spans
            .entry(key)
            .or_insert_with(|| Mat::zeros(ainf.k.clone(), vec.coords.len(), 0));
        let cand = Mat::from_columns(ainf.k.clone(), vec.coords.len(), &[vec.coords.clone()]);
        let ext = span.hstack(&cand);
        if ext.rank() > span.rank() {
            *span = ext;
            elts.push(Elt { vec, tree, round });
            true
        } else {
            false
        }
    };

    // Seeds: the Ext classes of degrees 0 and 1.
    for n in 0..=1usize.min(trust) {
        for j in 0..ainf.table.n_simples() {
            for i in 0..ainf.table.n_simples() {
                let ids = ainf.group_ids(n, j, i).to_vec();
                for (pos, &id) in ids.iter().enumerate() {
                    if !ainf.basis_elt(id).is_ext {
                        continue;
                    }
                    let mut v = ainf.zero_hvec(n, j, i);
                    v.coords[pos] = k.one();
                    add_elt(ainf, &mut elts, &mut spans, v, OpTree::Seed { id }, 0);
                }
            }
        }
    }

    let mut round = 0usize;
    loop {
        round += 1;
        if round > trust + k_max + 2 {
            return Err(Error::Internal("closure did not stabilize".into()));
        }
        let mut added = false;
        let n_elts = elts.len();
        for arity in 2..=k_max {
            // Composable index tuples with at least one last-round entry.
            let mut stack: Vec<usize> = Vec::new();
            let mut tuples: Vec<Vec<usize>> = Vec::new();
            fn dfs<K: Field>(
                elts: &[ /* degree, source, target */ (usize, usize, usize, usize)],
                stack: &mut Vec<usize>,
                tuples: &mut Vec<Vec<usize>>,
                arity: usize,
                budget: i64,
                min_degree: usize,
            ) {
                if stack.len() == arity {
                    tuples.push(stack.clone());
                    return;
                }
                let last = elts[*stack.last().unwrap()];
                for (idx, e) in elts.iter().enumerate() {
                    if e.0 < min_degree || (e.0 as i64) > budget {
                        continue;
                    }
                    if e.2 != last.1 {
                        continue; // target must match the previous source
                    }
                    stack.push(idx);
                    dfs::<K>(elts, stack, tuples, arity, budget - e.0 as i64, min_degree);
                    stack.pop();
                }
            }
            let meta: Vec<(usize, usize, usize, usize)> = elts
                .iter()
                .map(|e| (e.vec.degree, e.vec.source, e.vec.target, e.round))
                .collect();
            let min_degree = if arity >= 3 { 1 } else { 0 };
            let budget = trust as i64 + arity as i64 - 2;
            for first in 0..n_elts {
                if meta[first].0 < min_degree || (meta[first].0 as i64) > budget {
                    continue;
                }
                stack.push(first);
                dfs::<K>(&meta, &mut stack, &mut tuples, arity, budget - meta[first].0 as i64, min_degree);
                stack.pop();
            }
            for tuple in tuples {
                if !tuple.iter().any(|&i| meta[i].3 + 1 == round) && round > 1 {
                    continue;
                }
                let total: usize = tuple.iter().map(|&i| meta[i].0).sum();
                let out_deg = total as i64 + 2 - arity as i64;
                if out_deg < 2 || out_deg as usize > trust {
                    continue;
                }
                let inputs: Vec<HVec<K>> = tuple.iter().map(|&i| elts[i].vec.clone()).collect();
                let Some(value) = ainf.m_on_vectors(&inputs)? else { continue };
                let tree = OpTree::Op {
                    arity,
                    args: tuple.iter().map(|&i| elts[i].tree.clone()).collect(),
                };
                if add_elt(ainf, &mut elts, &mut spans, value, tree, round) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    // Compare, per degree, the Ext-part of the closure span with Ext.
    let mut degrees = Vec::new();
    let mut pass = true;
    for n in 2..=trust {
        let dim_ext = ainf.table.total_dim(n);
        let mut dim_closure = 0;
        for j in 0..ainf.table.n_simples() {
            for i in 0..ainf.table.n_simples() {
                let e = ainf.ext_dim(n, j, i);
                if e == 0 {
                    continue;
                }
                if let Some(span) = spans.get(&(n, j, i)) {
                    // Ext-part of the span.
                    let proj = Mat::from_fn(k.clone(), e, span.rows(), |r, c| {
                        if c == r { k.one() } else { k.zero() }
                    });
                    dim_closure += proj.mul(span).rank();
                }
            }
        }
        let ok = dim_closure == dim_ext;
        pass &= ok;
        degrees.push(DegreeReport { degree: n, dim_ext, dim_closure, pass: ok });
    }

    // Witnesses: for the first basis class of each nonzero group in degrees
    // >= 2, an element of the closure with a nonzero coordinate there.
    let mut witnesses = Vec::new();
    for n in 2..=trust {
        for j in 0..ainf.table.n_simples() {
            for i in 0..ainf.table.n_simples() {
                if ainf.ext_dim(n, j, i) == 0 {
                    continue;
                }
                if let Some(e) = elts.iter().find(|e| {
                    e.vec.degree == n
                        && e.vec.source == j
                        && e.vec.target == i
                        && !k.is_zero(&e.vec.coords[0])
                }) {
                    witnesses.push(Witness {
                        degree: n,
                        source: j,
                        target: i,
                        basis_index: 0,
                        tree: e.tree.clone(),
                    });
                }
            }
        }
    }

    Ok(GenerationReport { degrees, witnesses, pass, rounds: round })
}

/// Convenience: builds everything needed for the identity checks of one
/// length datum and runs them.
pub struct ReductionOutcome<K: Field> {
    pub series: KupischSeries,
    pub p: usize,
    pub m_ell: MEllReport<K>,
    pub vanishing: VanishingReport,
    pub stasheff_pass: bool,
}

pub fn verify_reduction<K: Field>(
    k: &K,
    lengths_m: &[usize],
    rule: crate::contraction::PivotRule,
    with_stasheff: bool,
) -> Result<ReductionOutcome<K>> {
    let (alg, sl) = reduced_algebra(lengths_m)?;
    let (series, p) = kupisch_from_sequence(lengths_m)?;
    let d = sl.d();
    let ell = sl.ell();
    let k_max = ell.max(2);
    let trust = (d + 1).max(2);
    let mut ainf = AInfinity::new(&alg, k.clone(), trust, k_max, rule)?;
    let m_ell = check_m_ell_identity(&mut ainf, &sl)?;
    let vanishing = check_vanishing_groups(&ainf.table, &sl)?;
    let stasheff_pass = if with_stasheff {
        ainf.check_stasheff()?.passed()
    } else {
        true
    };
    Ok(ReductionOutcome { series, p, m_ell, vanishing, stasheff_pass })
}

/// A short human-readable description of an operation tree.
pub fn describe_tree(tree: &OpTree) -> String {
    match tree {
        OpTree::Seed { id } => format!("x{id}"),
        OpTree::Op { arity, args } => {
            let parts: Vec<String> = args.iter().map(describe_tree).collect();
            format!("m{arity}({})", parts.join(","))
        }
    }
}
