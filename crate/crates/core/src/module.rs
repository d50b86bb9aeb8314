//! Finite-dimensional modules as quiver representations.
//!
//! A module assigns a vector space to each vertex and to each arrow
//! `a: s -> t` a linear map `M_t -> M_s` (stored as a `dims[s] x dims[t]`
//! matrix). A path acts by composing its arrow maps in path order, so the
//! projective at vertex `i` has basis the nonzero paths into `i` and
//! `Hom(P_i, M) = M_i`.
//!
//! Alongside the plain representation type this module carries the exact
//! structural toolbox the homological layer needs: hom spaces, kernels,
//! images, quotients, pushouts, radical series, uniseriality.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactla::{Field, Mat};
use crate::quiver::{MonomialAlgebra, NakayamaShape, PathId};
use crate::Result;

/// A finite-dimensional representation of a monomial algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Module<K: Field> {
    dims: Vec<usize>,
    /// One matrix per arrow `a: s -> t`, of shape `dims[s] x dims[t]`.
    maps: Vec<Mat<K>>,
}

impl<K: Field> Module<K> {
    pub fn new(alg: &MonomialAlgebra, dims: Vec<usize>, maps: Vec<Mat<K>>) -> Self {
        debug_assert_eq!(dims.len(), alg.n_vertices());
        debug_assert_eq!(maps.len(), alg.quiver().arrows.len());
        Module { dims, maps }
    }

    pub fn zero(alg: &MonomialAlgebra, k: &K) -> Self {
        let dims = vec![0; alg.n_vertices()];
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .map(|_| Mat::zeros(k.clone(), 0, 0))
            .collect();
        Module { dims, maps }
    }

    /// The simple module concentrated at `v`.
    pub fn simple(alg: &MonomialAlgebra, k: &K, v: usize) -> Self {
        let mut dims = vec![0; alg.n_vertices()];
        dims[v] = 1;
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .map(|&(s, t)| Mat::zeros(k.clone(), dims[s], dims[t]))
            .collect();
        Module { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_module(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn is_simple(&self) -> bool {
        self.total_dim() == 1
    }

    /// The vertex carrying the (unique) dimension of a simple module.
    pub fn simple_vertex(&self) -> Option<usize> {
        if !self.is_simple() {
            return None;
        }
        self.dims.iter().position(|&d| d == 1)
    }

    pub fn map(&self, arrow: usize) -> &Mat<K> {
        &self.maps[arrow]
    }

    /// Action of a nonzero path: the composite `M_{target(p)} -> M_{source(p)}`.
    pub fn path_action(&self, alg: &MonomialAlgebra, k: &K, p: PathId) -> Mat<K> {
        let pd = alg.path(p);
        let mut m = Mat::identity(k.clone(), self.dims[pd.target]);
        // Compose right to left: M_p = M_{a_1} ... M_{a_k}.
        for &a in pd.arrows.iter().rev() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Checks the representation contract: map shapes, and every relation
    /// acting as the zero map.
    pub fn verify(&self, alg: &MonomialAlgebra, k: &K) -> Result<()> {
        for (a, &(s, t)) in alg.quiver().arrows.iter().enumerate() {
            if self.maps[a].rows() != self.dims[s] || self.maps[a].cols() != self.dims[t] {
                return Err(Error::Internal(format!("arrow {a} map has wrong shape")));
            }
        }
        for rel in alg.relations() {
            let t = alg.quiver().target(*rel.last().unwrap());
            let mut m = Mat::identity(k.clone(), self.dims[t]);
            for &a in rel.iter().rev() {
                m = self.maps[a].mul(&m);
            }
            if !m.is_zero() {
                return Err(Error::Internal(format!("relation {rel:?} does not act as zero")));
            }
        }
        Ok(())
    }

    /// Radical subspace at each vertex: the span of all incoming arrow-map
    /// images, as a matrix of spanning columns.
    pub fn radical_spans(&self, alg: &MonomialAlgebra, k: &K) -> Vec<Mat<K>> {
        (0..alg.n_vertices())
            .map(|v| {
                let mut m = Mat::zeros(k.clone(), self.dims[v], 0);
                for &a in alg.arrows_from(v) {
                    m = m.hstack(&self.maps[a]);
                }
                m
            })
            .collect()
    }

    /// Dimension vector of `M / rad M`.
    pub fn top_dims(&self, alg: &MonomialAlgebra, k: &K) -> Vec<usize> {
        self.radical_spans(alg, k)
            .iter()
            .enumerate()
            .map(|(v, r)| self.dims[v] - r.rank())
            .collect()
    }

    /// Deterministic representatives of a basis of `M / rad M`: per vertex,
    /// the standard basis vectors at the coordinates not covered by the
    /// radical span (pivot extension of the RREF).
    pub fn top_representatives(&self, alg: &MonomialAlgebra, k: &K) -> Vec<(usize, Vec<K::Elem>)> {
        let mut out = Vec::new();
        for (v, rad) in self.radical_spans(alg, k).into_iter().enumerate() {
            let ext = rad.hstack(&Mat::identity(k.clone(), self.dims[v]));
            for &p in &ext.independent_columns() {
                if p >= rad.cols() {
                    let idx = p - rad.cols();
                    let mut e = vec![k.zero(); self.dims[v]];
                    e[idx] = k.one();
                    out.push((v, e));
                }
            }
        }
        out
    }

    pub fn direct_sum(alg: &MonomialAlgebra, k: &K, parts: &[&Module<K>]) -> Module<K> {
        let n = alg.n_vertices();
        let mut dims = vec![0usize; n];
        for m in parts {
            for v in 0..n {
                dims[v] += m.dims[v];
            }
        }
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut big = Mat::zeros(k.clone(), dims[s], dims[t]);
                let (mut ro, mut co) = (0, 0);
                for m in parts {
                    for i in 0..m.dims[s] {
                        for j in 0..m.dims[t] {
                            big.set(ro + i, co + j, m.maps[a].at(i, j).clone());
                        }
                    }
                    ro += m.dims[s];
                    co += m.dims[t];
                }
                big
            })
            .collect();
        Module { dims, maps }
    }
}

/// A homomorphism of representations: one block per vertex, `N_v x M_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleHom<K: Field> {
    blocks: Vec<Mat<K>>,
}

impl<K: Field> ModuleHom<K> {
    pub fn new(blocks: Vec<Mat<K>>) -> Self {
        ModuleHom { blocks }
    }

    pub fn zero(k: &K, src: &Module<K>, dst: &Module<K>) -> Self {
        let blocks = src
            .dims
            .iter()
            .zip(&dst.dims)
            .map(|(&m, &n)| Mat::zeros(k.clone(), n, m))
            .collect();
        ModuleHom { blocks }
    }

    pub fn identity(k: &K, m: &Module<K>) -> Self {
        let blocks = m.dims.iter().map(|&d| Mat::identity(k.clone(), d)).collect();
        ModuleHom { blocks }
    }

    pub fn block(&self, v: usize) -> &Mat<K> {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Mat<K>] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// `self` after `other`: the composite `other; self`.
    pub fn compose_after(&self, other: &ModuleHom<K>) -> ModuleHom<K> {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(f, g)| f.mul(g))
            .collect();
        ModuleHom { blocks }
    }

    pub fn add(&self, other: &ModuleHom<K>) -> ModuleHom<K> {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleHom { blocks }
    }

    pub fn scale(&self, c: &K::Elem) -> ModuleHom<K> {
        ModuleHom { blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    /// Checks intertwining with every arrow action.
    pub fn verify(&self, alg: &MonomialAlgebra, src: &Module<K>, dst: &Module<K>) -> Result<()> {
        for (a, &(s, t)) in alg.quiver().arrows.iter().enumerate() {
            let lhs = self.blocks[s].mul(src.map(a));
            let rhs = dst.map(a).mul(&self.blocks[t]);
            if lhs != rhs {
                return Err(Error::Internal(format!("hom does not intertwine arrow {a}")));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self, src: &Module<K>) -> bool {
        self.rank() == src.total_dim()
    }

    pub fn is_surjective(&self, dst: &Module<K>) -> bool {
        self.rank() == dst.total_dim()
    }
}

/// Basis of `Hom(M, N)` by exact linear algebra: the kernel of the
/// intertwining constraints, in the canonical RREF normalization.
pub fn hom_basis<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    m: &Module<K>,
    n: &Module<K>,
) -> Vec<ModuleHom<K>> {
    let nverts = alg.n_vertices();
    let mut offsets = vec![0usize; nverts + 1];
    for v in 0..nverts {
        offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offsets[nverts];
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for (a, &(s, t)) in alg.quiver().arrows.iter().enumerate() {
        // f_s * M_a = N_a * f_t, an (n_s x m_t) block of equations.
        for i in 0..n.dims[s] {
            for j in 0..m.dims[t] {
                let mut row = vec![k.zero(); unknowns];
                for l in 0..m.dims[s] {
                    let c = m.map(a).at(l, j);
                    if !k.is_zero(c) {
                        let idx = offsets[s] + i * m.dims[s] + l;
                        row[idx] = k.add(&row[idx], c);
                    }
                }
                for l in 0..n.dims[t] {
                    let c = n.map(a).at(i, l);
                    if !k.is_zero(c) {
                        let idx = offsets[t] + l * m.dims[t] + j;
                        row[idx] = k.sub(&row[idx], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        Mat::zeros(k.clone(), 0, unknowns)
    } else {
        let r = rows.len();
        Mat::from_fn(k.clone(), r, unknowns, |i, j| rows[i][j].clone())
    };
    sys.kernel_basis()
        .into_iter()
        .map(|sol| {
            let blocks = (0..nverts)
                .map(|v| {
                    Mat::from_fn(k.clone(), n.dims[v], m.dims[v], |i, j| {
                        sol[offsets[v] + i * m.dims[v] + j].clone()
                    })
                })
                .collect();
            ModuleHom { blocks }
        })
        .collect()
}

/// Kernel of a hom, as a module with its inclusion.
pub fn kernel_module<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    f: &ModuleHom<K>,
    src: &Module<K>,
) -> (Module<K>, ModuleHom<K>) {
    let _ = k;
    let nverts = alg.n_vertices();
    let basis: Vec<Mat<K>> = (0..nverts).map(|v| f.block(v).kernel_mat()).collect();
    let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            // K_t -> K_s: push a kernel basis vector through M_a, express in
            // the kernel basis at s (unique: kernel columns are independent).
            let img = src.map(a).mul(&basis[t]);
            basis[s]
                .solve(&img)
                .expect("arrow action leaves the kernel (hom commutes)")
        })
        .collect();
    let ker = Module { dims, maps };
    let incl = ModuleHom { blocks: basis };
    (ker, incl)
}

/// Image of a hom, as a module with its inclusion into the target and the
/// corestriction of `f` onto it.
pub fn image_module<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    f: &ModuleHom<K>,
    dst: &Module<K>,
) -> (Module<K>, ModuleHom<K>, ModuleHom<K>) {
    let nverts = alg.n_vertices();
    let mut basis: Vec<Mat<K>> = Vec::with_capacity(nverts);
    for v in 0..nverts {
        let cols = f.block(v).independent_columns();
        let sel: Vec<Vec<K::Elem>> = cols.iter().map(|&j| f.block(v).column(j)).collect();
        basis.push(Mat::from_columns(k.clone(), dst.dims[v], &sel));
    }
    let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let img = dst.map(a).mul(&basis[t]);
            basis[s].solve(&img).expect("arrow action preserves the image submodule")
        })
        .collect();
    let im = Module { dims, maps };
    let incl = ModuleHom { blocks: basis.clone() };
    let corest = ModuleHom {
        blocks: (0..nverts)
            .map(|v| basis[v].solve(f.block(v)).expect("f lands in its own image"))
            .collect(),
    };
    (im, incl, corest)
}

/// Quotient of `m` by the image of `f: S -> m`, with the projection.
pub fn quotient_by_image<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    m: &Module<K>,
    f: &ModuleHom<K>,
) -> (Module<K>, ModuleHom<K>) {
    let nverts = alg.n_vertices();
    let mut proj_blocks = Vec::with_capacity(nverts);
    let mut section = Vec::with_capacity(nverts); // standard vectors spanning a complement
    for v in 0..nverts {
        let sub = {
            let cols = f.block(v).independent_columns();
            let sel: Vec<Vec<K::Elem>> = cols.iter().map(|&j| f.block(v).column(j)).collect();
            Mat::from_columns(k.clone(), m.dims[v], &sel)
        };
        let ext = sub.hstack(&Mat::identity(k.clone(), m.dims[v]));
        let pivots = ext.independent_columns();
        let comp: Vec<usize> =
            pivots.iter().filter(|&&p| p >= sub.cols()).map(|&p| p - sub.cols()).collect();
        let sec_cols: Vec<Vec<K::Elem>> = comp
            .iter()
            .map(|&i| {
                let mut e = vec![k.zero(); m.dims[v]];
                e[i] = k.one();
                e
            })
            .collect();
        let sec = Mat::from_columns(k.clone(), m.dims[v], &sec_cols);
        // T = [sub | sec] is a basis of M_v; the projection is the lower
        // block of T^{-1}.
        let t = sub.hstack(&sec);
        let tinv = t.solve(&Mat::identity(k.clone(), m.dims[v])).expect("T is invertible");
        let q = Mat::from_fn(k.clone(), comp.len(), m.dims[v], |i, j| {
            tinv.at(sub.cols() + i, j).clone()
        });
        proj_blocks.push(q);
        section.push(sec);
    }
    let dims: Vec<usize> = proj_blocks.iter().map(|b| b.rows()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| proj_blocks[s].mul(&m.map(a).mul(&section[t])))
        .collect();
    let q = Module { dims, maps };
    let proj = ModuleHom { blocks: proj_blocks };
    (q, proj)
}

/// Pushout of `phi: S -> N` along an injective `incl: S -> M`:
/// `E = (N (+) M) / {(phi s, -incl s)}`, returned with the two maps
/// `N -> E` and `M -> E`.
pub fn pushout<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    n_mod: &Module<K>,
    m_mod: &Module<K>,
    phi: &ModuleHom<K>,
    incl: &ModuleHom<K>,
) -> (Module<K>, ModuleHom<K>, ModuleHom<K>) {
    let sum = Module::direct_sum(alg, k, &[n_mod, m_mod]);
    let nverts = alg.n_vertices();
    // The graph map S -> N (+) M, s |-> (phi s, -incl s).
    let graph = ModuleHom {
        blocks: (0..nverts)
            .map(|v| {
                let top = phi.block(v).clone();
                let bot = incl.block(v).scale(&k.from_i64(-1));
                top.vstack(&bot)
            })
            .collect(),
    };
    let (e, proj) = quotient_by_image(alg, k, &sum, &graph);
    let incl_n = ModuleHom {
        blocks: (0..nverts)
            .map(|v| {
                Mat::from_fn(k.clone(), e.dims[v], n_mod.dims[v], |i, j| {
                    proj.block(v).at(i, j).clone()
                })
            })
            .collect(),
    };
    let incl_m = ModuleHom {
        blocks: (0..nverts)
            .map(|v| {
                Mat::from_fn(k.clone(), e.dims[v], m_mod.dims[v], |i, j| {
                    proj.block(v).at(i, n_mod.dims[v] + j).clone()
                })
            })
            .collect(),
    };
    (e, incl_n, incl_m)
}

/// The projective module at vertex `v`: basis the nonzero paths into `v`,
/// with arrows acting by prepending.
pub fn projective_module<K: Field>(alg: &MonomialAlgebra, k: &K, v: usize) -> Module<K> {
    let nverts = alg.n_vertices();
    let dims: Vec<usize> = (0..nverts).map(|u| alg.paths_from_to(u, v).len()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let from_t = alg.paths_from_to(t, v);
            let from_s = alg.paths_from_to(s, v);
            let mut m = Mat::zeros(k.clone(), dims[s], dims[t]);
            let ap = alg.arrow_path(a);
            for (j, &p) in from_t.iter().enumerate() {
                if let Some(ap) = ap {
                    if let Some(q) = alg.concat(ap, p) {
                        let i = from_s.iter().position(|&x| x == q).expect("path bucket");
                        m.set(i, j, k.one());
                    }
                }
            }
            m
        })
        .collect();
    Module { dims, maps }
}

/// An interval (uniserial) module over a Nakayama algebra: the quotient of
/// the projective at `top` of composition length `len`. On a cyclic quiver
/// the window may wrap (and revisit vertices when `len > p`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalModule {
    pub top: usize,
    pub len: usize,
}

impl IntervalModule {
    /// Builds and validates against the algebra's Kupisch series
    /// (`len <= c_top`: it must be a quotient of the projective at `top`).
    pub fn new(alg: &MonomialAlgebra, top: usize, len: usize) -> Result<Self> {
        let series = alg
            .nakayama()
            .ok_or_else(|| Error::InvalidInput("interval modules need a Nakayama algebra".into()))?;
        if top >= series.len() {
            return Err(Error::InvalidInput(format!("vertex {top} out of range")));
        }
        if len == 0 || len > series.c(top) {
            return Err(Error::InvalidInput(format!(
                "interval length {len} is not in 1..={} (projective length at the top vertex)",
                series.c(top)
            )));
        }
        Ok(IntervalModule { top, len })
    }

    /// For linear shape: the interval `[a, b]` given by socle and top
    /// vertices (0-based, `a <= b`).
    pub fn from_window(alg: &MonomialAlgebra, a: usize, b: usize) -> Result<Self> {
        if a > b {
            return Err(Error::InvalidInput("interval window needs a <= b".into()));
        }
        Self::new(alg, b, b - a + 1)
    }

    /// Vertex of each basis position, top first.
    pub fn position_vertices(&self, alg: &MonomialAlgebra) -> Vec<usize> {
        let series = alg.nakayama().expect("nakayama");
        let p = series.len();
        (0..self.len)
            .map(|j| match series.shape() {
                NakayamaShape::Linear => self.top - j,
                NakayamaShape::Cyclic => (self.top + p - (j % p)) % p,
            })
            .collect()
    }

    /// Socle vertex (last position).
    pub fn socle_vertex(&self, alg: &MonomialAlgebra) -> usize {
        *self.position_vertices(alg).last().unwrap()
    }

    /// Top-to-socle composition series, as 0-based vertex labels.
    pub fn composition_series(&self, alg: &MonomialAlgebra) -> Vec<usize> {
        self.position_vertices(alg)
    }

    /// Lossless conversion to a representation: position `j` (counted from
    /// the top) lives at `position_vertices()[j]`, and the connecting arrow
    /// sends position `j` to position `j + 1`.
    pub fn to_module<K: Field>(&self, alg: &MonomialAlgebra, k: &K) -> Module<K> {
        let verts = self.position_vertices(alg);
        let nverts = alg.n_vertices();
        let mut dims = vec![0usize; nverts];
        let mut local = Vec::with_capacity(self.len);
        for &v in &verts {
            local.push(dims[v]);
            dims[v] += 1;
        }
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .map(|&(s, t)| {
                let mut m = Mat::zeros(k.clone(), dims[s], dims[t]);
                for j in 0..self.len {
                    if verts[j] == t && j + 1 < self.len && verts[j + 1] == s {
                        m.set(local[j + 1], local[j], k.one());
                    }
                }
                m
            })
            .collect();
        Module { dims, maps }
    }
}

/// Top-to-socle composition labels of a uniserial module, computed from its
/// radical filtration. Errors if any radical layer has dimension > 1.
pub fn uniserial_labels<K: Field>(
    alg: &MonomialAlgebra,
    k: &K,
    m: &Module<K>,
) -> Result<Vec<usize>> {
    let nverts = alg.n_vertices();
    let mut spans: Vec<Mat<K>> =
        (0..nverts).map(|v| Mat::identity(k.clone(), m.dims()[v])).collect();
    let mut labels = Vec::new();
    loop {
        let total: usize = spans.iter().map(|s| s.rank()).sum();
        if total == 0 {
            break;
        }
        // Next radical: arrows applied to the current submodule.
        let next: Vec<Mat<K>> = (0..nverts)
            .map(|v| {
                let mut acc = Mat::zeros(k.clone(), m.dims()[v], 0);
                for &a in alg.arrows_from(v) {
                    let t = alg.quiver().target(a);
                    acc = acc.hstack(&m.map(a).mul(&spans[t]));
                }
                acc
            })
            .collect();
        let next_total: usize = next.iter().map(|s| s.rank()).sum();
        if total - next_total != 1 {
            return Err(Error::NotUniserial(format!(
                "radical layer has dimension {}",
                total - next_total
            )));
        }
        let v = (0..nverts)
            .find(|&v| spans[v].rank() != next[v].rank())
            .expect("rank dropped somewhere");
        labels.push(v);
        spans = next;
        if labels.len() > m.total_dim() {
            return Err(Error::Internal("radical series does not terminate".into()));
        }
    }
    Ok(labels)
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

    #[test]
    fn projective_of_semisimple_is_simple() {
        let alg = linear(&[1]);
        let k = Rationals;
        let p = projective_module(&alg, &k, 0);
        assert_eq!(p.dims(), &[1]);
    }

    #[test]
    fn projective_122_at_vertex_3() {
        let alg = linear(&[1, 2, 2]);
        let k = PrimeField::default_prime();
        let p = projective_module(&alg, &k, 2);
        // Interval [2,3] in 1-based labels: dims (0,1,1).
        assert_eq!(p.dims(), &[0, 1, 1]);
        assert_eq!(p.total_dim(), 2);
        p.verify(&alg, &k).unwrap();
    }

    #[test]
    fn projective_truncated_polynomial() {
        let alg = cyclic(&[3]);
        let k = PrimeField::default_prime();
        let p = projective_module(&alg, &k, 0);
        assert_eq!(p.dims(), &[3]);
        p.verify(&alg, &k).unwrap();
        // x acts nilpotently with rank 2.
        assert_eq!(p.map(0).rank(), 2);
    }

    #[test]
    fn interval_composition_series() {
        let alg = linear(&[1, 2, 2]);
        // [2,3] in 1-based labels = window (1,2) 0-based: top S_3, socle S_2.
        let m = IntervalModule::from_window(&alg, 1, 2).unwrap();
        assert_eq!(m.composition_series(&alg), vec![2, 1]);
        let alg2 = linear(&[1, 2, 3]);
        let m2 = IntervalModule::from_window(&alg2, 0, 2).unwrap();
        assert_eq!(m2.composition_series(&alg2), vec![2, 1, 0]);
        let s = IntervalModule::from_window(&alg, 1, 1).unwrap();
        assert_eq!(s.composition_series(&alg), vec![1]);
    }

    #[test]
    fn interval_to_module_roundtrip() {
        let k = PrimeField::default_prime();
        for (alg, top, len) in [
            (linear(&[1, 2, 2]), 2usize, 2usize),
            (linear(&[1, 2, 3, 3, 2]), 3, 3),
            (cyclic(&[3]), 0, 3),
            (cyclic(&[2, 2]), 1, 2),
        ] {
            let iv = IntervalModule::new(&alg, top, len).unwrap();
            let m = iv.to_module(&alg, &k);
            m.verify(&alg, &k).unwrap();
            let labels = uniserial_labels(&alg, &k, &m).unwrap();
            assert_eq!(labels, iv.composition_series(&alg));
        }
    }

    #[test]
    fn interval_length_bounded_by_projective() {
        let alg = linear(&[1, 2, 2]);
        assert!(IntervalModule::new(&alg, 2, 3).is_err());
        assert!(IntervalModule::new(&alg, 2, 2).is_ok());
    }

    #[test]
    fn hom_spaces_between_projectives() {
        let alg = linear(&[1, 2, 2]);
        let k = PrimeField::default_prime();
        let p2 = projective_module(&alg, &k, 1);
        let p3 = projective_module(&alg, &k, 2);
        // Hom(P_2, P_3) = paths 2 -> 3, one-dimensional.
        assert_eq!(hom_basis(&alg, &k, &p2, &p3).len(), 1);
        // Hom(P_3, P_2) = paths 3 -> 2, zero.
        assert_eq!(hom_basis(&alg, &k, &p3, &p2).len(), 0);
        let s1 = Module::simple(&alg, &k, 0);
        assert_eq!(hom_basis(&alg, &k, &s1, &s1).len(), 1);
        let s2 = Module::simple(&alg, &k, 1);
        assert_eq!(hom_basis(&alg, &k, &s1, &s2).len(), 0);
    }

    #[test]
    fn kernel_and_quotient_of_projective_cover() {
        let alg = linear(&[1, 2, 2]);
        let k = Rationals;
        let p3 = projective_module(&alg, &k, 2);
        let s3 = Module::simple(&alg, &k, 2);
        let homs = hom_basis(&alg, &k, &p3, &s3);
        assert_eq!(homs.len(), 1);
        let f = &homs[0];
        let (ker, incl) = kernel_module(&alg, &k, f, &p3);
        assert_eq!(ker.total_dim(), 1);
        assert_eq!(ker.dims()[1], 1); // rad P_3 = S_2
        incl.verify(&alg, &ker, &p3).unwrap();
        let (q, proj) = quotient_by_image(&alg, &k, &p3, &incl);
        assert_eq!(q.total_dim(), 1);
        assert_eq!(q.dims()[2], 1);
        proj.verify(&alg, &p3, &q).unwrap();
    }

    #[test]
    fn top_of_projective_is_simple() {
        let alg = linear(&[1, 2, 3, 3, 2]);
        let k = PrimeField::default_prime();
        for v in 0..5 {
            let p = projective_module(&alg, &k, v);
            let top = p.top_dims(&alg, &k);
            let mut expect = vec![0; 5];
            expect[v] = 1;
            assert_eq!(top, expect);
        }
    }

    #[test]
    fn pushout_builds_extension() {
        // Over c = [1,2,2]: pushing rad P_2 = S_1 out along the identity
        // re-creates the non-split extension 0 -> S_1 -> E -> S_2 -> 0.
        let alg = linear(&[1, 2, 2]);
        let k = Rationals;
        let p2 = projective_module(&alg, &k, 1);
        let s2 = Module::simple(&alg, &k, 1);
        let cover = &hom_basis(&alg, &k, &p2, &s2)[0];
        let (omega, incl) = kernel_module(&alg, &k, cover, &p2);
        assert_eq!(omega.dims(), &[1, 0, 0]);
        let s1 = Module::simple(&alg, &k, 0);
        let phi = ModuleHom::identity(&k, &s1); // omega = S_1
        let (e, from_n, from_m) = pushout(&alg, &k, &s1, &p2, &phi, &incl);
        assert_eq!(e.total_dim(), 2);
        from_n.verify(&alg, &s1, &e).unwrap();
        from_m.verify(&alg, &p2, &e).unwrap();
        assert!(from_n.is_injective(&s1));
    }

    #[test]
    fn uniserial_rejects_direct_sum() {
        let alg = linear(&[1, 2, 2]);
        let k = Rationals;
        let s1 = Module::simple(&alg, &k, 0);
        let s2 = Module::simple(&alg, &k, 1);
        let sum = Module::direct_sum(&alg, &k, &[&s1, &s2]);
        assert!(uniserial_labels(&alg, &k, &sum).is_err());
    }
}
