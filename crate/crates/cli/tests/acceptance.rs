//! Acceptance suite. Each criterion is one test that prints a single
//! pass/fail line (run with `cargo test -p yoneda-cli --test acceptance --
//! --nocapture` to see them) and asserts exactness of every check.
//!
//! 1. Graded collapse of the truncated-polynomial family (dimension table
//!    independent of ell, u^2 = 0).
//! 2. The transferred operations separate the family (m_ell is the first
//!    nonzero power), cross-checked against an independent contraction.
//! 3. Kupisch construction: the series of every valid length datum has
//!    length exactly p and is admissible.
//! 4. The key identity m_ell(eta_1, .., eta_{ell-1}, eta) = lambda gamma,
//!    lambda != 0, over the whole sweep.
//! 5. The two vanishing families of Ext groups over the same sweep.
//! 6. Generation in degrees 0 and 1, exhaustively at desk scale.
//! 7. Stasheff identities hold exactly for every structure above; one
//!    seeded mutation per run must be caught.
//! 8. Oracle equivalence: chain counts vs resolution dimensions, and the
//!    product vs the splice lift (up to the documented Koszul sign).

use std::time::Instant;

use yoneda_cli::suites::{enumerate_cyclic, enumerate_kupisch, enumerate_lengths};
use yoneda_core::chains::bardzell_up_to;
use yoneda_core::contraction::PivotRule;
use yoneda_core::exactla::{Field, PrimeField, Rationals};
use yoneda_core::quiver::{KupischSeries, MonomialAlgebra};
use yoneda_core::reduction::{
    generation_closure, kupisch_from_sequence, reduced_algebra, verify_reduction,
};
use yoneda_core::resolution::{ext_table, sequence_for_class, splice, yoneda_class};
use yoneda_core::transfer::AInfinity;

fn fp() -> PrimeField {
    PrimeField::default_prime()
}

fn truncated_polynomial(ell: usize) -> MonomialAlgebra {
    MonomialAlgebra::nakayama_cyclic(&KupischSeries::cyclic(vec![ell]).unwrap()).unwrap()
}

/// The two exhaustive families of criterion 6 (and 7/8): all linear series
/// with p <= 7 and all cyclic series with p <= 3, entries <= 5.
fn desk_scale_family() -> Vec<MonomialAlgebra> {
    let mut out = Vec::new();
    for s in enumerate_kupisch(7).unwrap() {
        out.push(MonomialAlgebra::nakayama_linear(&s).unwrap());
    }
    for s in enumerate_cyclic(3, 5).unwrap() {
        out.push(MonomialAlgebra::nakayama_cyclic(&s).unwrap());
    }
    out
}

fn report(name: &str, pass: bool, start: Instant, detail: &str) {
    let secs = start.elapsed().as_secs_f64();
    println!(
        "criterion {name}: {} [{secs:.1}s] {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {name} failed: {detail}");
}

#[test]
fn criterion_1_graded_collapse() {
    let start = Instant::now();
    let k = fp();
    let d = 6;
    let mut pass = true;
    let mut tables = Vec::new();
    for ell in [3usize, 4, 5] {
        let alg = truncated_polynomial(ell);
        let table = ext_table(&alg, &k, d).unwrap();
        let dims: Vec<usize> = (0..=d).map(|n| table.dim(n, 0, 0)).collect();
        pass &= dims.iter().all(|&x| x == 1);
        // Field independence of the table at suite scale.
        let tq = ext_table(&alg, &Rationals, d).unwrap();
        pass &= (0..=d).all(|n| tq.dim(n, 0, 0) == table.dim(n, 0, 0));
        tables.push(dims);
        // u^2 = 0 exactly.
        let mut ainf = AInfinity::new(&alg, k, d, 3, PivotRule::Leftmost).unwrap();
        let u = ainf.group_ids(1, 0, 0)[0];
        let sq = ainf.m_on_ids(&[u, u]).unwrap().unwrap();
        pass &= ainf.ext_part(&sq).is_zero(&k);
    }
    pass &= tables.windows(2).all(|w| w[0] == w[1]);
    report(
        "1 (graded table independent of ell, u^2 = 0)",
        pass,
        start,
        "ell in {3,4,5}, D = 6",
    );
}

#[test]
fn criterion_2_operations_separate_the_family() {
    let start = Instant::now();
    let k = fp();
    let mut pass = true;
    for ell in [3usize, 4, 5] {
        let alg = truncated_polynomial(ell);
        let mut a = AInfinity::new(&alg, k, 6, ell.max(2), PivotRule::Leftmost).unwrap();
        let mut b = AInfinity::new(&alg, k, 6, ell.max(2), PivotRule::Rightmost).unwrap();
        let ua = a.group_ids(1, 0, 0)[0];
        let ub = b.group_ids(1, 0, 0)[0];
        for arity in 2..=ell {
            let va = a.m_on_ids(&vec![ua; arity]).unwrap().unwrap();
            let vb = b.m_on_ids(&vec![ub; arity]).unwrap().unwrap();
            let za = a.ext_part(&va).is_zero(&k);
            let zb = b.ext_part(&vb).is_zero(&k);
            // Expected pattern and oracle agreement.
            pass &= za == (arity != ell);
            pass &= za == zb;
        }
    }
    report(
        "2 (m_k(u..u) vanishes iff k < ell; independent contraction agrees)",
        pass,
        start,
        "ell in {3,4,5}",
    );
}

#[test]
fn criterion_3_kupisch_construction() {
    let start = Instant::now();
    let sweep = enumerate_lengths(3, 5);
    let mut pass = !sweep.is_empty();
    for sl in &sweep {
        match kupisch_from_sequence(&sl.lengths_m) {
            Ok((series, p)) => {
                pass &= series.len() == p;
                pass &= p == sl.p();
                // Linear admissibility is enforced by the constructor; spot
                // re-check the invariants directly.
                let c = series.entries();
                pass &= c[0] == 1;
                pass &= c.windows(2).all(|w| w[1] <= w[0] + 1);
            }
            Err(_) => pass = false,
        }
    }
    report(
        "3 (series length = p and admissible over the sweep)",
        pass,
        start,
        &format!("{} length data, d <= 3, len M_i <= 5", sweep.len()),
    );
}

#[test]
fn criterion_4_m_ell_identity_over_sweep() {
    let start = Instant::now();
    let k = fp();
    let sweep: Vec<_> = enumerate_lengths(3, 5).into_iter().filter(|sl| sl.d() + 1 <= 4).collect();
    let mut pass = !sweep.is_empty();
    let mut detail = String::new();
    for sl in &sweep {
        let out = verify_reduction(&k, &sl.lengths_m, PivotRule::Leftmost, false).unwrap();
        if !out.m_ell.pass {
            pass = false;
            detail = format!("fails at lengths {:?}", sl.lengths_m);
            break;
        }
    }
    if detail.is_empty() {
        detail = format!("{} instances", sweep.len());
    }
    report("4 (m_ell(eta_1..eta_{ell-1}, eta) = lambda gamma, lambda != 0)", pass, start, &detail);
}

#[test]
fn criterion_5_vanishing_lemmas_over_sweep() {
    let start = Instant::now();
    let k = fp();
    let sweep: Vec<_> = enumerate_lengths(3, 5).into_iter().filter(|sl| sl.d() + 1 <= 4).collect();
    let mut pass = !sweep.is_empty();
    for sl in &sweep {
        let (alg, _) = reduced_algebra(&sl.lengths_m).unwrap();
        let table = ext_table(&alg, &k, sl.d() + 1).unwrap();
        let rep = yoneda_core::reduction::check_vanishing_groups(&table, sl).unwrap();
        pass &= rep.pass();
    }
    report(
        "5 (Ext^2(S_{j+1},S_i) = 0 for i<j<ell; Ext^{d+1}(S_p,S_i) = 0 for 1<i<ell)",
        pass,
        start,
        &format!("{} instances", sweep.len()),
    );
}

#[test]
fn criterion_6_generation_at_desk_scale() {
    let start = Instant::now();
    let k = fp();
    let family = desk_scale_family();
    let mut pass = true;
    let mut failures = Vec::new();
    let mut q_checked = 0usize;
    for (idx, alg) in family.iter().enumerate() {
        let mut ainf = AInfinity::new(alg, k, 5, 6, PivotRule::Leftmost).unwrap();
        let rep = generation_closure(&mut ainf).unwrap();
        if !rep.pass {
            pass = false;
            failures.push(alg.nakayama().unwrap().entries().to_vec());
        }
        // Unlucky-prime guard: on a deterministic subset, rerun over the
        // rationals and compare dimension tables and the closure outcome.
        if idx % 47 == 0 {
            let tq = ext_table(alg, &Rationals, 5).unwrap();
            for n in 0..=5 {
                for j in 0..alg.n_vertices() {
                    for i in 0..alg.n_vertices() {
                        pass &= tq.dim(n, j, i) == ainf.table.dim(n, j, i);
                    }
                }
            }
            let mut aq = AInfinity::new(alg, Rationals, 5, 6, PivotRule::Leftmost).unwrap();
            let rq = generation_closure(&mut aq).unwrap();
            pass &= rq.pass == rep.pass;
            q_checked += 1;
        }
    }
    let detail = if failures.is_empty() {
        format!(
            "{} algebras (linear p <= 7, cyclic p <= 3 with c_i <= 5), D = 5, k_max = 6; {q_checked} re-verified over Q",
            family.len()
        )
    } else {
        format!("failing series: {failures:?}")
    };
    report("6 (Ext generated in degrees 0 and 1)", pass, start, &detail);
}

#[test]
fn criterion_7_stasheff_suite_with_mutation() {
    let start = Instant::now();
    let k = fp();
    let mut pass = true;
    let mut structures = 0usize;
    let mut total_tuples = 0usize;
    // Every structure class used in criteria 1-6: the truncated-polynomial
    // family at D = 6, the reduction sweep, and the desk-scale family.
    let mut engines: Vec<AInfinity<'_, PrimeField>> = Vec::new();
    let family = desk_scale_family();
    let algs_madsen: Vec<MonomialAlgebra> =
        [3usize, 4, 5].iter().map(|&ell| truncated_polynomial(ell)).collect();
    let sweep: Vec<_> = enumerate_lengths(3, 5).into_iter().filter(|sl| sl.d() + 1 <= 4).collect();
    let algs_sweep: Vec<(MonomialAlgebra, usize, usize)> = sweep
        .iter()
        .map(|sl| {
            let (alg, _) = reduced_algebra(&sl.lengths_m).unwrap();
            ((alg), (sl.d() + 1).max(2), sl.ell().max(2))
        })
        .collect();
    for alg in &algs_madsen {
        engines.push(AInfinity::new(alg, k, 6, 5, PivotRule::Leftmost).unwrap());
    }
    for (alg, trust, kmax) in &algs_sweep {
        engines.push(AInfinity::new(alg, k, *trust, *kmax, PivotRule::Leftmost).unwrap());
    }
    for alg in &family {
        engines.push(AInfinity::new(alg, k, 5, 6, PivotRule::Leftmost).unwrap());
    }
    for ainf in engines.iter_mut() {
        let rep = ainf.check_stasheff().unwrap();
        pass &= rep.passed();
        total_tuples += rep.tuples_checked;
        structures += 1;
    }
    // One seeded mutation per run must be caught (use a structure with
    // nonzero higher products).
    let alg = truncated_polynomial(3);
    let mut ainf = AInfinity::new(&alg, k, 6, 6, PivotRule::Leftmost).unwrap();
    assert!(ainf.check_stasheff().unwrap().passed());
    let seed = 1usize;
    ainf.corrupt_stored_value(seed).expect("a value to corrupt");
    let mutated = ainf.check_stasheff().unwrap();
    pass &= !mutated.passed();
    report(
        "7 (exact Stasheff residuals; seeded mutation detected)",
        pass,
        start,
        &format!("{structures} structures, {total_tuples} residual tuples, mutation caught: {}", !mutated.passed()),
    );
}

#[test]
fn criterion_8_oracle_equivalence() {
    let start = Instant::now();
    let k = fp();
    let mut pass = true;
    let mut algebras = desk_scale_family();
    for ell in [3usize, 4, 5] {
        algebras.push(truncated_polynomial(ell));
    }
    for sl in enumerate_lengths(3, 5) {
        algebras.push(reduced_algebra(&sl.lengths_m).unwrap().0);
    }
    // Chain counts vs resolution dimensions.
    let d = 5;
    for alg in &algebras {
        let table = ext_table(alg, &k, d).unwrap();
        let layers = bardzell_up_to(alg, d);
        for n in 0..=d {
            for j in 0..alg.n_vertices() {
                for i in 0..alg.n_vertices() {
                    let count =
                        layers[n].iter().filter(|c| c.source == i && c.target == j).count();
                    if count != table.dim(n, j, i) {
                        pass = false;
                    }
                }
            }
        }
    }
    // m_2 vs the splice lift, up to the documented sign (-1)^{mn}, on all
    // defined pairs with m + n <= 4 over a representative subfamily (every
    // algebra with at least one composable pair of positive degrees).
    let mut pairs_checked = 0usize;
    for alg in &algebras {
        if alg.dim() <= alg.n_vertices() {
            continue; // semisimple: no positive-degree classes
        }
        let table = ext_table(alg, &k, 4).unwrap();
        let mut ainf = AInfinity::new(alg, k, 4, 4, PivotRule::Leftmost).unwrap();
        for m in 1..=3usize {
            for n in 1..=3usize {
                if m + n > 4 {
                    continue;
                }
                for j in 0..alg.n_vertices() {
                    for mid in 0..alg.n_vertices() {
                        for i in 0..alg.n_vertices() {
                            for ba in 0..table.dim(m, mid, i) {
                                for bb in 0..table.dim(n, j, mid) {
                                    let mut alpha = table.zero_vec(&k, m, mid, i);
                                    alpha.coords[ba] = k.one();
                                    let mut beta = table.zero_vec(&k, n, j, mid);
                                    beta.coords[bb] = k.one();
                                    let sa = sequence_for_class(alg, &k, &table, &alpha).unwrap();
                                    let sb = sequence_for_class(alg, &k, &table, &beta).unwrap();
                                    let sp = splice(alg, &k, &sa, &sb).unwrap();
                                    let spliced = yoneda_class(alg, &k, &table, &sp).unwrap();
                                    let ha = ainf.hvec_from_ext(&alpha);
                                    let hb = ainf.hvec_from_ext(&beta);
                                    let prod = ainf.m_on_vectors(&[ha, hb]).unwrap().unwrap();
                                    let pe = ainf.ext_part(&prod);
                                    let expected: Vec<u64> = if (m * n) % 2 == 1 {
                                        spliced.coords.iter().map(|c| k.neg(c)).collect()
                                    } else {
                                        spliced.coords.clone()
                                    };
                                    if pe.coords != expected {
                                        pass = false;
                                    }
                                    pairs_checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report(
        "8 (chain-count oracle and splice oracle agree)",
        pass,
        start,
        &format!("{} algebras, {pairs_checked} product pairs", algebras.len()),
    );
}
