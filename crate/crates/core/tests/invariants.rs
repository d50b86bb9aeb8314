//! Cross-module invariants on a small tour of algebras: the chain-count
//! oracle, splice functoriality of the product, field independence, AR
//! classes, and minimality of the differentials.

use yoneda_core::chains::bardzell_up_to;
use yoneda_core::contraction::PivotRule;
use yoneda_core::exactla::{Field, PrimeField, Rationals};
use yoneda_core::module::Module;
use yoneda_core::quiver::{KupischSeries, MonomialAlgebra};
use yoneda_core::resolution::{
    ext_table, sequence_for_class, splice, yoneda_class, ExtVec,
};
use yoneda_core::transfer::AInfinity;

fn linear(c: &[usize]) -> MonomialAlgebra {
    MonomialAlgebra::nakayama_linear(&KupischSeries::linear(c.to_vec()).unwrap()).unwrap()
}

fn cyclic(c: &[usize]) -> MonomialAlgebra {
    MonomialAlgebra::nakayama_cyclic(&KupischSeries::cyclic(c.to_vec()).unwrap()).unwrap()
}

/// A branching monomial algebra: two parallel arrows 1 -> 2, one arrow
/// 2 -> 3, and the relation killing one of the two length-2 composites.
/// Its Ext^1(S_2, S_1) is two-dimensional, which no serial algebra has.
fn branching() -> MonomialAlgebra {
    let q = yoneda_core::quiver::Quiver::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
    MonomialAlgebra::monomial(q, vec![vec![0, 2]], yoneda_core::FieldSpec::Prime(yoneda_core::DEFAULT_PRIME))
        .unwrap()
}

fn tour() -> Vec<MonomialAlgebra> {
    vec![
        linear(&[1]),
        linear(&[1, 1, 2]),
        linear(&[1, 2, 2]),
        linear(&[1, 2, 3, 3, 2]),
        linear(&[1, 2, 3, 4]),
        cyclic(&[2]),
        cyclic(&[3]),
        cyclic(&[2, 2]),
        cyclic(&[3, 2]),
        branching(),
    ]
}

#[test]
fn chain_counts_equal_ext_dims_everywhere() {
    let k = PrimeField::default_prime();
    for alg in tour() {
        let d = 4;
        let table = ext_table(&alg, &k, d).unwrap();
        let layers = bardzell_up_to(&alg, d);
        for n in 0..=d {
            for j in 0..alg.n_vertices() {
                for i in 0..alg.n_vertices() {
                    let count =
                        layers[n].iter().filter(|c| c.source == i && c.target == j).count();
                    assert_eq!(count, table.dim(n, j, i), "n={n} j={j} i={i}");
                }
            }
        }
    }
}

#[test]
fn ext_dims_are_field_independent() {
    for alg in tour() {
        let tp = ext_table(&alg, &PrimeField::default_prime(), 4).unwrap();
        let tq = ext_table(&alg, &Rationals, 4).unwrap();
        for n in 0..=4 {
            for j in 0..alg.n_vertices() {
                for i in 0..alg.n_vertices() {
                    assert_eq!(tp.dim(n, j, i), tq.dim(n, j, i));
                }
            }
        }
    }
}

#[test]
fn differentials_are_radical_valued() {
    // Composing a differential with the projection to the top of its
    // target must vanish: equivalently no trivial-path entries.
    let k = PrimeField::default_prime();
    for alg in tour() {
        let table = ext_table(&alg, &k, 3).unwrap();
        for res in &table.resolutions {
            for d in &res.diffs {
                assert!(d.is_radical(&alg, &k));
            }
            res.verify(&alg, &k).unwrap();
        }
    }
}

#[test]
fn ar_classes_are_nonzero_in_ext1() {
    let k = Rationals;
    for alg in tour() {
        if alg.nakayama().is_none() {
            continue; // the translate machinery is serial-only
        }
        let table = ext_table(&alg, &k, 2).unwrap();
        for v in 0..alg.n_vertices() {
            let s = Module::simple(&alg, &k, v);
            if yoneda_core::ar::is_projective(&alg, &k, &s).unwrap() {
                continue;
            }
            let seq = yoneda_core::ar::ar_translate_sequence(&alg, &k, &s).unwrap();
            seq.verify_exact(&alg, &k).unwrap();
            assert!(!seq.last_map_splits(&alg, &k));
            let class = yoneda_class(&alg, &k, &table, &seq).unwrap();
            assert!(!class.is_zero(&k), "AR class at vertex {v} vanished");
        }
    }
}

/// m_2 must agree with the independent Yoneda splice computation on all
/// defined pairs of low total degree, up to the documented sign
/// `(-1)^{|alpha| |beta|}` (the Koszul discrepancy between the two
/// standard conventions for the Yoneda composite).
#[test]
fn product_agrees_with_splice() {
    let k = PrimeField::default_prime();
    let mut checked = 0usize;
    for alg in tour() {
        let d = 4;
        let mut ainf = AInfinity::new(&alg, k, d, 4, PivotRule::Leftmost).unwrap();
        let table = ext_table(&alg, &k, d).unwrap();
        for m in 1..=3usize {
            for n in 1..=3usize {
                if m + n > 4 {
                    continue;
                }
                for j in 0..alg.n_vertices() {
                    for mid in 0..alg.n_vertices() {
                        for i in 0..alg.n_vertices() {
                            let dim_a = table.dim(m, mid, i);
                            let dim_b = table.dim(n, j, mid);
                            for ba in 0..dim_a {
                                for bb in 0..dim_b {
                                    let mut alpha = table.zero_vec(&k, m, mid, i);
                                    alpha.coords[ba] = k.one();
                                    let mut beta = table.zero_vec(&k, n, j, mid);
                                    beta.coords[bb] = k.one();
                                    let sa = sequence_for_class(&alg, &k, &table, &alpha).unwrap();
                                    let sb = sequence_for_class(&alg, &k, &table, &beta).unwrap();
                                    let sp = splice(&alg, &k, &sa, &sb).unwrap();
                                    let spliced = yoneda_class(&alg, &k, &table, &sp).unwrap();
                                    let ha = ainf.hvec_from_ext(&alpha);
                                    let hb = ainf.hvec_from_ext(&beta);
                                    let prod = ainf
                                        .m_on_vectors(&[ha, hb])
                                        .unwrap()
                                        .expect("product within window");
                                    let prod_ext: ExtVec<PrimeField> = ainf.ext_part(&prod);
                                    let expected: Vec<u64> = if (m * n) % 2 == 1 {
                                        spliced.coords.iter().map(|c| k.neg(c)).collect()
                                    } else {
                                        spliced.coords.clone()
                                    };
                                    assert_eq!(
                                        prod_ext.coords, expected,
                                        "alg dim {}: m={m} n={n} j={j} mid={mid} i={i}",
                                        alg.dim()
                                    );
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 30, "too few pairs exercised: {checked}");
}

/// The zero/nonzero pattern of transferred values at the checkpoints is
/// independent of the contraction's complement rule.
#[test]
fn contraction_rule_independence_at_checkpoints() {
    let k = PrimeField::default_prime();
    for alg in [cyclic(&[3]), cyclic(&[4]), linear(&[1, 2, 3, 3, 2])] {
        let mut a = AInfinity::new(&alg, k, 4, 4, PivotRule::Leftmost).unwrap();
        let mut b = AInfinity::new(&alg, k, 4, 4, PivotRule::Rightmost).unwrap();
        for arity in 2..=4usize {
            for ids in a.composable_tuples(arity, 4 + arity - 2, |e| e.is_ext) {
                let va = a.m_on_ids(&ids).unwrap();
                let vb = b.m_on_ids(&ids).unwrap();
                match (va, vb) {
                    (Some(x), Some(y)) => {
                        let kx = a.k;
                        assert_eq!(
                            a.ext_part(&x).is_zero(&kx),
                            b.ext_part(&y).is_zero(&kx),
                            "tuple {ids:?}"
                        );
                    }
                    (None, None) => {}
                    other => panic!("trust window mismatch: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn transferred_values_match_over_both_fields() {
    // Zero/nonzero pattern of the Madsen products over GF(32003) and Q.
    for ell in [3usize, 4] {
        let alg = cyclic(&[ell]);
        let mut ap = AInfinity::new(&alg, PrimeField::default_prime(), 5, 5, PivotRule::Leftmost)
            .unwrap();
        let mut aq = AInfinity::new(&alg, Rationals, 5, 5, PivotRule::Leftmost).unwrap();
        let up = ap.group_ids(1, 0, 0)[0];
        let uq = aq.group_ids(1, 0, 0)[0];
        for kk in 2..=ell {
            let vp = ap.m_on_ids(&vec![up; kk]).unwrap().unwrap();
            let vq = aq.m_on_ids(&vec![uq; kk]).unwrap().unwrap();
            assert_eq!(
                vp.is_zero(&PrimeField::default_prime()),
                vq.is_zero(&Rationals),
                "ell={ell} k={kk}"
            );
        }
    }
}

#[test]
fn branching_algebra_full_pipeline() {
    // Multi-dimensional Ext groups and multi-summand resolution terms:
    // the paths serial algebras never exercise.
    let alg = branching();
    let k = PrimeField::default_prime();
    assert_eq!(alg.dim(), 7);
    let table = ext_table(&alg, &k, 4).unwrap();
    assert_eq!(table.dim(1, 1, 0), 2); // dim Ext^1(S_2, S_1) = #arrows = 2
    assert_eq!(table.dim(1, 2, 1), 1);
    assert_eq!(table.dim(2, 2, 0), 1); // the relation
    for n in 3..=4 {
        assert_eq!(table.total_dim(n), 0);
    }
    let mut ainf = AInfinity::new(&alg, k, 4, 4, PivotRule::Leftmost).unwrap();
    let rep = ainf.check_stasheff().unwrap();
    assert!(rep.passed(), "violations: {:?}", rep.violations);
    // Exactly one of the two degree-1 directions multiplies onto Ext^2:
    // the composite killed by the relation.
    let alphas = ainf.group_ids(1, 1, 0).to_vec();
    let beta = ainf.group_ids(1, 2, 1)[0];
    let mut nonzero = 0;
    for &a in &alphas {
        let v = ainf.m_on_ids(&[a, beta]).unwrap().unwrap();
        if !ainf.ext_part(&v).is_zero(&k) {
            nonzero += 1;
        }
    }
    assert_eq!(nonzero, 1);
    // Degrees 0 and 1 still generate everything.
    let gen = yoneda_core::reduction::generation_closure(&mut ainf).unwrap();
    assert!(gen.pass, "{:?}", gen.degrees);
}
