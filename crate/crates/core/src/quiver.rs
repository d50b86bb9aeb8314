//! Quivers, monomial path algebras, and Nakayama algebras via Kupisch series.
//!
//! A monomial algebra is a path algebra modulo an ideal generated by paths of
//! length >= 2. The set of nonzero paths (paths containing no relation as a
//! contiguous subpath) is a basis of the algebra; admissibility of the ideal
//! is exactly finiteness of that set and is decided up front.
//!
//! Conventions, fixed globally:
//! - vertices are 0-based internally (1-based in every external interface);
//! - paths are arrow sequences read left to right, `p = a_1 a_2 .. a_k`
//!   with `target(a_i) = source(a_{i+1})`;
//! - modules are representations in which an arrow `a: s -> t` acts by a map
//!   `M_t -> M_s` ("arrows act toward smaller indices" on a linear quiver),
//!   so the projective at vertex `i` has basis the nonzero paths into `i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactla::FieldSpec;
use crate::Result;

/// Arrow index into `Quiver::arrows`.
pub type ArrowId = usize;
/// Index into the nonzero-path table of a `MonomialAlgebra`.
pub type PathId = usize;

/// A finite quiver. Arrows may repeat (multiquiver).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub n_vertices: usize,
    /// (source, target) pairs, 0-based.
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(n_vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(s, t)) in arrows.iter().enumerate() {
            if s >= n_vertices || t >= n_vertices {
                return Err(Error::InvalidInput(format!(
                    "arrow {i} references a vertex outside 0..{n_vertices}"
                )));
            }
        }
        Ok(Quiver { n_vertices, arrows })
    }

    pub fn source(&self, a: ArrowId) -> usize {
        self.arrows[a].0
    }

    pub fn target(&self, a: ArrowId) -> usize {
        self.arrows[a].1
    }
}

/// Shape tag for Nakayama algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NakayamaShape {
    Linear,
    Cyclic,
}

/// A Kupisch series: the composition lengths of the indecomposable
/// projectives of a Nakayama algebra, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KupischSeries {
    c: Vec<usize>,
    shape: NakayamaShape,
}

impl KupischSeries {
    /// Linear shape: `c_1 = 1` and `c_{i+1} <= c_i + 1`.
    pub fn linear(c: Vec<usize>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidKupisch { index: 1, reason: "series is empty".into() });
        }
        if c[0] != 1 {
            return Err(Error::InvalidKupisch {
                index: 1,
                reason: "linear series must start with c_1 = 1".into(),
            });
        }
        for i in 0..c.len() {
            if c[i] == 0 {
                return Err(Error::InvalidKupisch {
                    index: i + 1,
                    reason: "entries must be positive".into(),
                });
            }
            if i + 1 < c.len() && c[i + 1] > c[i] + 1 {
                return Err(Error::InvalidKupisch {
                    index: i + 2,
                    reason: format!(
                        "c_{} = {} exceeds c_{} + 1 = {}",
                        i + 2,
                        c[i + 1],
                        i + 1,
                        c[i] + 1
                    ),
                });
            }
        }
        Ok(KupischSeries { c, shape: NakayamaShape::Linear })
    }

    /// Cyclic shape: `c_{i+1} <= c_i + 1` cyclically; for `p >= 2` all
    /// `c_i >= 2`; for `p = 1` any `c_1 >= 2` (the algebra `k[x]/(x^l)`).
    pub fn cyclic(c: Vec<usize>) -> Result<Self> {
        let p = c.len();
        if p == 0 {
            return Err(Error::InvalidKupisch { index: 1, reason: "series is empty".into() });
        }
        for (i, &ci) in c.iter().enumerate() {
            if ci < 2 {
                return Err(Error::InvalidKupisch {
                    index: i + 1,
                    reason: "cyclic series entries must be at least 2".into(),
                });
            }
        }
        if p >= 2 {
            for i in 0..p {
                let j = (i + 1) % p;
                if c[j] > c[i] + 1 {
                    return Err(Error::InvalidKupisch {
                        index: j + 1,
                        reason: format!(
                            "c_{} = {} exceeds c_{} + 1 = {}",
                            j + 1,
                            c[j],
                            i + 1,
                            c[i] + 1
                        ),
                    });
                }
            }
        }
        Ok(KupischSeries { c, shape: NakayamaShape::Cyclic })
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn shape(&self) -> NakayamaShape {
        self.shape
    }

    /// Composition length of the projective at 0-based vertex `v`.
    pub fn c(&self, v: usize) -> usize {
        self.c[v]
    }

    pub fn entries(&self) -> &[usize] {
        &self.c
    }
}

/// A nonzero path of a monomial algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathData {
    pub arrows: Vec<ArrowId>,
    pub source: usize,
    pub target: usize,
}

impl PathData {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A monomial path algebra `kQ/I` with `I` generated by paths.
///
/// Construction enumerates the (finite) basis of nonzero paths and indexes
/// concatenation; all homological machinery downstream works through that
/// index. The field tag is advisory metadata: the combinatorics of the
/// algebra does not depend on it.
#[derive(Debug, Clone)]
pub struct MonomialAlgebra {
    quiver: Quiver,
    /// Minimal antichain of relation paths (arrow sequences), sorted.
    relations: Vec<Vec<ArrowId>>,
    field: FieldSpec,
    nakayama: Option<KupischSeries>,
    paths: Vec<PathData>,
    /// Lookup for nontrivial paths by arrow sequence.
    by_arrows: BTreeMap<Vec<ArrowId>, PathId>,
    /// Trivial path ids, one per vertex.
    trivial: Vec<PathId>,
    /// Path ids sorted into (source, target) buckets.
    between: BTreeMap<(usize, usize), Vec<PathId>>,
    arrows_from: Vec<Vec<ArrowId>>,
    arrows_into: Vec<Vec<ArrowId>>,
}

impl MonomialAlgebra {
    /// General monomial algebra from a quiver and relation paths.
    ///
    /// Relations are reduced to a minimal antichain (subpath-minimal
    /// elements kept). Errors if a relation is shorter than 2 or not a
    /// composable path, or if the ideal is not admissible (the algebra
    /// would be infinite-dimensional); the latter error names a cycle
    /// without relations.
    pub fn monomial(
        quiver: Quiver,
        relations: Vec<Vec<ArrowId>>,
        field: FieldSpec,
    ) -> Result<Self> {
        Self::build(quiver, relations, field, None)
    }

    /// Linear Nakayama algebra of a Kupisch series.
    ///
    /// The quiver is the linear `A_p` quiver `1 -> 2 -> ... -> p` with the
    /// arrow `i -> i+1` present exactly when `c_{i+1} >= 2`; the relations
    /// are the minimal paths forced by the series (the path of length `c_i`
    /// ending at vertex `i`, whenever that path exists).
    pub fn nakayama_linear(series: &KupischSeries) -> Result<Self> {
        if series.shape() != NakayamaShape::Linear {
            return Err(Error::InvalidInput("expected a linear Kupisch series".into()));
        }
        let p = series.len();
        let mut arrows = Vec::new();
        let mut arrow_at = vec![None; p]; // arrow_at[v] = id of arrow v -> v+1
        for v in 0..p.saturating_sub(1) {
            if series.c(v + 1) >= 2 {
                arrow_at[v] = Some(arrows.len());
                arrows.push((v, v + 1));
            }
        }
        let quiver = Quiver::new(p, arrows)?;
        let mut relations = Vec::new();
        for v in 0..p {
            let c = series.c(v);
            if v >= c && series.c(v - c + 1) >= 2 {
                // Path of length c from vertex v-c to v; the interior arrows
                // exist by the series invariants.
                let mut rel = Vec::with_capacity(c);
                for u in (v - c)..v {
                    let a = arrow_at[u].ok_or_else(|| {
                        Error::Internal(format!(
                            "missing arrow {u}->{} inside a forced relation",
                            u + 1
                        ))
                    })?;
                    rel.push(a);
                }
                relations.push(rel);
            }
        }
        let alg = Self::build(
            quiver,
            relations,
            FieldSpec::Prime(crate::exactla::DEFAULT_PRIME),
            Some(series.clone()),
        )?;
        alg.verify_projective_lengths()?;
        Ok(alg)
    }

    /// Cyclic Nakayama algebra of a Kupisch series. For `p = 1`, `c = [l]`,
    /// this is `k[x]/(x^l)`.
    pub fn nakayama_cyclic(series: &KupischSeries) -> Result<Self> {
        if series.shape() != NakayamaShape::Cyclic {
            return Err(Error::InvalidInput("expected a cyclic Kupisch series".into()));
        }
        let p = series.len();
        // Arrow id v is the arrow v -> (v+1) mod p.
        let arrows: Vec<(usize, usize)> = (0..p).map(|v| (v, (v + 1) % p)).collect();
        let quiver = Quiver::new(p, arrows)?;
        let mut relations = Vec::new();
        for v in 0..p {
            let c = series.c(v);
            // The c consecutive arrows ending at v: the j-th one (j = 0..c)
            // is the arrow whose target is v - (c - 1 - j) mod p.
            let mut rel = Vec::with_capacity(c);
            for j in 0..c {
                let offset = (c - 1 - j) % p;
                let tgt = (v + p - offset) % p;
                let src = (tgt + p - 1) % p;
                rel.push(src); // arrow id = source vertex
            }
            relations.push(rel);
        }
        let alg = Self::build(
            quiver,
            relations,
            FieldSpec::Prime(crate::exactla::DEFAULT_PRIME),
            Some(series.clone()),
        )?;
        alg.verify_projective_lengths()?;
        Ok(alg)
    }

    fn build(
        quiver: Quiver,
        relations: Vec<Vec<ArrowId>>,
        field: FieldSpec,
        nakayama: Option<KupischSeries>,
    ) -> Result<Self> {
        for rel in &relations {
            if rel.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "relation {rel:?} has length {} < 2",
                    rel.len()
                )));
            }
            for &a in rel {
                if a >= quiver.arrows.len() {
                    return Err(Error::InvalidRelation(format!("arrow index {a} out of range")));
                }
            }
            for w in rel.windows(2) {
                if quiver.target(w[0]) != quiver.source(w[1]) {
                    return Err(Error::InvalidRelation(format!(
                        "arrows {} and {} are not composable",
                        w[0], w[1]
                    )));
                }
            }
        }
        let relations = minimal_antichain(relations);

        let mut arrows_from = vec![Vec::new(); quiver.n_vertices];
        let mut arrows_into = vec![Vec::new(); quiver.n_vertices];
        for (id, &(s, t)) in quiver.arrows.iter().enumerate() {
            arrows_from[s].push(id);
            arrows_into[t].push(id);
        }

        check_admissible(&quiver, &relations, &arrows_from)?;

        // Enumerate nonzero paths, BFS by length.
        let mut paths: Vec<PathData> = (0..quiver.n_vertices)
            .map(|v| PathData { arrows: Vec::new(), source: v, target: v })
            .collect();
        let mut frontier: Vec<usize> = (0..paths.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &pid in &frontier {
                let (tgt, arrs) = (paths[pid].target, paths[pid].arrows.clone());
                for &a in &arrows_from[tgt] {
                    let mut ext = arrs.clone();
                    ext.push(a);
                    if relations.iter().any(|r| is_suffix(r, &ext)) {
                        continue;
                    }
                    next.push(PathData {
                        source: paths[pid].source,
                        target: quiver.target(a),
                        arrows: ext,
                    });
                }
            }
            // Deterministic order inside each length layer.
            next.sort_by(|x, y| (x.source, &x.arrows).cmp(&(y.source, &y.arrows)));
            frontier = (paths.len()..paths.len() + next.len()).collect();
            paths.extend(next);
        }

        let mut by_arrows = BTreeMap::new();
        let mut trivial = vec![0; quiver.n_vertices];
        let mut between: BTreeMap<(usize, usize), Vec<PathId>> = BTreeMap::new();
        for (id, p) in paths.iter().enumerate() {
            if p.is_trivial() {
                trivial[p.source] = id;
            } else {
                by_arrows.insert(p.arrows.clone(), id);
            }
            between.entry((p.source, p.target)).or_default().push(id);
        }

        Ok(MonomialAlgebra {
            quiver,
            relations,
            field,
            nakayama,
            paths,
            by_arrows,
            trivial,
            between,
            arrows_from,
            arrows_into,
        })
    }

    /// Internal check: for a Nakayama algebra, the projective at `v` (paths
    /// into `v`) must have exactly `c_v` basis paths.
    fn verify_projective_lengths(&self) -> Result<()> {
        let series = self.nakayama.as_ref().expect("nakayama metadata");
        for v in 0..self.n_vertices() {
            let dim: usize = (0..self.n_vertices())
                .map(|u| self.paths_from_to(u, v).len())
                .sum();
            if dim != series.c(v) {
                return Err(Error::Internal(format!(
                    "projective at vertex {} has length {}, series says {}",
                    v + 1,
                    dim,
                    series.c(v)
                )));
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices
    }

    pub fn relations(&self) -> &[Vec<ArrowId>] {
        &self.relations
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.field
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    pub fn nakayama(&self) -> Option<&KupischSeries> {
        self.nakayama.as_ref()
    }

    /// Total dimension = number of nonzero paths.
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, id: PathId) -> &PathData {
        &self.paths[id]
    }

    pub fn num_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn trivial_path(&self, v: usize) -> PathId {
        self.trivial[v]
    }

    pub fn paths_from_to(&self, source: usize, target: usize) -> &[PathId] {
        self.between.get(&(source, target)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn arrows_from(&self, v: usize) -> &[ArrowId] {
        &self.arrows_from[v]
    }

    pub fn arrows_into(&self, v: usize) -> &[ArrowId] {
        &self.arrows_into[v]
    }

    /// Id of the length-1 path of an arrow.
    pub fn arrow_path(&self, a: ArrowId) -> Option<PathId> {
        self.by_arrows.get(&vec![a]).copied()
    }

    /// Looks up a nontrivial arrow sequence; `None` means the path is zero
    /// in the algebra.
    pub fn path_from_arrows(&self, arrows: &[ArrowId]) -> Option<PathId> {
        if arrows.is_empty() {
            return None;
        }
        self.by_arrows.get(arrows).copied()
    }

    /// Concatenation `p * q` (p first, then q). `None` if the paths are not
    /// composable or the product is zero.
    pub fn concat(&self, p: PathId, q: PathId) -> Option<PathId> {
        let (pp, qq) = (&self.paths[p], &self.paths[q]);
        if pp.target != qq.source {
            return None;
        }
        if pp.is_trivial() {
            return Some(q);
        }
        if qq.is_trivial() {
            return Some(p);
        }
        let mut arrows = Vec::with_capacity(pp.len() + qq.len());
        arrows.extend_from_slice(&pp.arrows);
        arrows.extend_from_slice(&qq.arrows);
        self.by_arrows.get(&arrows).copied()
    }

    /// True iff the arrow sequence contains a relation as a contiguous
    /// subpath (i.e. is zero in the algebra).
    pub fn is_zero_path(&self, arrows: &[ArrowId]) -> bool {
        self.relations.iter().any(|r| contains_factor(arrows, r))
    }

    /// Structural equality: same quiver, same minimal relations, same path
    /// basis. Metadata tags (field, Kupisch series) are ignored.
    pub fn structurally_equal(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.relations == other.relations
            && self.paths == other.paths
    }

    /// The opposite algebra: arrows reversed, relations reversed.
    pub fn opposite(&self) -> Result<Self> {
        let arrows = self.quiver.arrows.iter().map(|&(s, t)| (t, s)).collect();
        let quiver = Quiver::new(self.quiver.n_vertices, arrows)?;
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Self::build(quiver, relations, self.field, None)
    }
}

/// Keeps the subpath-minimal relations: drops duplicates and any relation
/// containing another as a contiguous subpath.
fn minimal_antichain(mut relations: Vec<Vec<ArrowId>>) -> Vec<Vec<ArrowId>> {
    relations.sort();
    relations.dedup();
    let keep: Vec<bool> = relations
        .iter()
        .map(|r| !relations.iter().any(|other| other != r && contains_factor(r, other)))
        .collect();
    relations
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect()
}

fn contains_factor(haystack: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

fn is_suffix(needle: &[ArrowId], haystack: &[ArrowId]) -> bool {
    needle.len() <= haystack.len() && haystack[haystack.len() - needle.len()..] == *needle
}

/// Decides admissibility via the suffix automaton of nonzero paths: states
/// are relation-free path suffixes shorter than the longest relation,
/// transitions append one arrow. The set of nonzero paths is infinite iff
/// the automaton has a reachable cycle; the cycle (which can repeat forever
/// without completing a relation) is reported in the error.
fn check_admissible(
    quiver: &Quiver,
    relations: &[Vec<ArrowId>],
    arrows_from: &[Vec<ArrowId>],
) -> Result<()> {
    if quiver.arrows.is_empty() {
        return Ok(());
    }
    let max_rel = relations.iter().map(|r| r.len()).max().unwrap_or(0);
    let keep = max_rel.saturating_sub(1);

    // State: (current vertex, suffix of at most `keep` last arrows).
    type State = (usize, Vec<ArrowId>);
    let mut states: BTreeMap<State, usize> = BTreeMap::new();
    let mut list: Vec<State> = Vec::new();
    let mut edges: Vec<Vec<(usize, ArrowId)>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for v in 0..quiver.n_vertices {
        let s = (v, Vec::new());
        states.insert(s.clone(), list.len());
        stack.push(list.len());
        list.push(s);
        edges.push(Vec::new());
    }
    while let Some(idx) = stack.pop() {
        let (v, suffix) = list[idx].clone();
        for &a in &arrows_from[v] {
            let mut ext = suffix.clone();
            ext.push(a);
            if relations.iter().any(|r| is_suffix(r, &ext)) {
                continue;
            }
            if ext.len() > keep {
                ext.remove(0);
            }
            let ns = (quiver.target(a), ext);
            let nid = match states.get(&ns) {
                Some(&i) => i,
                None => {
                    let i = list.len();
                    states.insert(ns.clone(), i);
                    list.push(ns);
                    edges.push(Vec::new());
                    stack.push(i);
                    i
                }
            };
            edges[idx].push((nid, a));
        }
    }

    // Cycle detection by iterative colouring DFS.
    let n = list.len();
    let mut colour = vec![0u8; n]; // 0 new, 1 active, 2 done
    let mut parent_edge: Vec<Option<(usize, ArrowId)>> = vec![None; n];
    for start in 0..n {
        if colour[start] != 0 {
            continue;
        }
        let mut dfs: Vec<(usize, usize)> = vec![(start, 0)];
        colour[start] = 1;
        while let Some(&mut (node, ref mut ei)) = dfs.last_mut() {
            if *ei < edges[node].len() {
                let (next, arrow) = edges[node][*ei];
                *ei += 1;
                match colour[next] {
                    0 => {
                        colour[next] = 1;
                        parent_edge[next] = Some((node, arrow));
                        dfs.push((next, 0));
                    }
                    1 => {
                        // Found a cycle: walk back from `node` to `next`.
                        let mut cycle_arrows = vec![arrow];
                        let mut cur = node;
                        while cur != next {
                            let (prev, a) = parent_edge[cur].expect("path back to cycle head");
                            cycle_arrows.push(a);
                            cur = prev;
                        }
                        cycle_arrows.reverse();
                        let verts: Vec<String> = cycle_arrows
                            .iter()
                            .map(|&a| format!("{}", quiver.source(a) + 1))
                            .chain(core::iter::once(format!(
                                "{}",
                                quiver.target(*cycle_arrows.last().unwrap()) + 1
                            )))
                            .collect();
                        return Err(Error::NotAdmissible { cycle: verts.join("->") });
                    }
                    _ => {}
                }
            } else {
                colour[node] = 2;
                dfs.pop();
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> FieldSpec {
        FieldSpec::Prime(crate::exactla::DEFAULT_PRIME)
    }

    #[test]
    fn semisimple_single_vertex() {
        let s = KupischSeries::linear(vec![1]).unwrap();
        let alg = MonomialAlgebra::nakayama_linear(&s).unwrap();
        assert_eq!(alg.n_vertices(), 1);
        assert!(alg.quiver().arrows.is_empty());
        assert!(alg.relations().is_empty());
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn kupisch_122_single_relation() {
        let s = KupischSeries::linear(vec![1, 2, 2]).unwrap();
        let alg = MonomialAlgebra::nakayama_linear(&s).unwrap();
        assert_eq!(alg.quiver().arrows, vec![(0, 1), (1, 2)]);
        // Single relation: the length-2 path through vertices 1,2,3.
        assert_eq!(alg.relations(), &[vec![0, 1]]);
        assert_eq!(alg.dim(), 1 + 2 + 2);
    }

    #[test]
    fn kupisch_12332_two_relations() {
        let s = KupischSeries::linear(vec![1, 2, 3, 3, 2]).unwrap();
        let alg = MonomialAlgebra::nakayama_linear(&s).unwrap();
        assert_eq!(alg.relations().len(), 2);
        assert_eq!(alg.dim(), 1 + 2 + 3 + 3 + 2);
    }

    #[test]
    fn kupisch_gap_series() {
        // c = (1,2,1,2): the arrow 2->3 is absent, algebra is A_2 x A_2.
        let s = KupischSeries::linear(vec![1, 2, 1, 2]).unwrap();
        let alg = MonomialAlgebra::nakayama_linear(&s).unwrap();
        assert_eq!(alg.quiver().arrows, vec![(0, 1), (2, 3)]);
        assert!(alg.relations().is_empty());
        assert_eq!(alg.dim(), 6);
    }

    #[test]
    fn invalid_linear_series_reports_first_index() {
        let err = KupischSeries::linear(vec![1, 3]).unwrap_err();
        assert!(matches!(err, Error::InvalidKupisch { index: 2, .. }));
        let err = KupischSeries::linear(vec![2, 2]).unwrap_err();
        assert!(matches!(err, Error::InvalidKupisch { index: 1, .. }));
    }

    #[test]
    fn cyclic_truncated_polynomial_ring() {
        let s = KupischSeries::cyclic(vec![3]).unwrap();
        let alg = MonomialAlgebra::nakayama_cyclic(&s).unwrap();
        assert_eq!(alg.quiver().arrows, vec![(0, 0)]);
        assert_eq!(alg.relations(), &[vec![0, 0, 0]]);
        assert_eq!(alg.dim(), 3); // e, x, x^2
    }

    #[test]
    fn cyclic_x_squared() {
        let s = KupischSeries::cyclic(vec![2]).unwrap();
        let alg = MonomialAlgebra::nakayama_cyclic(&s).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn cyclic_two_vertices() {
        let s = KupischSeries::cyclic(vec![2, 2]).unwrap();
        let alg = MonomialAlgebra::nakayama_cyclic(&s).unwrap();
        // Both length-2 paths around the cycle are relations.
        assert_eq!(alg.relations().len(), 2);
        assert_eq!(alg.dim(), 4);
    }

    #[test]
    fn monomial_a2_path_algebra() {
        let q = Quiver::new(2, vec![(0, 1)]).unwrap();
        let alg = MonomialAlgebra::monomial(q, vec![], fp()).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn monomial_loop_with_cube_matches_nakayama() {
        let q = Quiver::new(1, vec![(0, 0)]).unwrap();
        let alg = MonomialAlgebra::monomial(q, vec![vec![0, 0, 0]], fp()).unwrap();
        let s = KupischSeries::cyclic(vec![3]).unwrap();
        let nak = MonomialAlgebra::nakayama_cyclic(&s).unwrap();
        assert!(alg.structurally_equal(&nak));
    }

    #[test]
    fn monomial_loop_without_relations_is_infinite() {
        let q = Quiver::new(1, vec![(0, 0)]).unwrap();
        let err = MonomialAlgebra::monomial(q, vec![], fp()).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible { .. }));
    }

    #[test]
    fn nakayama_roundtrip_through_monomial() {
        let s = KupischSeries::linear(vec![1, 2, 3, 3, 2]).unwrap();
        let nak = MonomialAlgebra::nakayama_linear(&s).unwrap();
        let again =
            MonomialAlgebra::monomial(nak.quiver().clone(), nak.relations().to_vec(), fp())
                .unwrap();
        assert!(nak.structurally_equal(&again));
    }

    #[test]
    fn antichain_minimalization() {
        // On linear A_4 with relations abc and bc: only bc survives.
        let q = Quiver::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let alg = MonomialAlgebra::monomial(q, vec![vec![0, 1, 2], vec![1, 2]], fp()).unwrap();
        assert_eq!(alg.relations(), &[vec![1, 2]]);
    }

    #[test]
    fn concat_and_zero_paths() {
        let s = KupischSeries::linear(vec![1, 2, 2]).unwrap();
        let alg = MonomialAlgebra::nakayama_linear(&s).unwrap();
        let a01 = alg.arrow_path(0).unwrap();
        let a12 = alg.arrow_path(1).unwrap();
        // The length-2 path is the relation, so the product is zero.
        assert_eq!(alg.concat(a01, a12), None);
        let e1 = alg.trivial_path(1);
        assert_eq!(alg.concat(a01, e1), Some(a01));
        assert_eq!(alg.concat(e1, a12), Some(a12));
        // Not composable.
        assert_eq!(alg.concat(a12, a01), None);
    }

    #[test]
    fn dim_sums_match_projectives() {
        for c in [vec![1, 2, 2], vec![1, 2, 3, 3, 2], vec![1, 1, 2]] {
            let s = KupischSeries::linear(c).unwrap();
            let alg = MonomialAlgebra::nakayama_linear(&s).unwrap();
            let total: usize = (0..alg.n_vertices())
                .map(|v| {
                    (0..alg.n_vertices())
                        .map(|u| alg.paths_from_to(u, v).len())
                        .sum::<usize>()
                })
                .sum();
            assert_eq!(total, alg.dim());
        }
    }

    #[test]
    fn opposite_involutive() {
        let s = KupischSeries::linear(vec![1, 2, 3, 3, 2]).unwrap();
        let alg = MonomialAlgebra::nakayama_linear(&s).unwrap();
        let opop = alg.opposite().unwrap().opposite().unwrap();
        assert!(alg.structurally_equal(&opop));
    }

    #[test]
    fn cyclic_relation_wraps_correctly() {
        // c = [3, 2]: relation ending at vertex 1 has length 3 and wraps.
        let s = KupischSeries::cyclic(vec![3, 2]).unwrap();
        let alg = MonomialAlgebra::nakayama_cyclic(&s).unwrap();
        assert_eq!(alg.dim(), 5);
        for v in 0..2 {
            let dim: usize = (0..2).map(|u| alg.paths_from_to(u, v).len()).sum();
            assert_eq!(dim, s.c(v));
        }
    }
}
