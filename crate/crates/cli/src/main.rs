//! Batch front end: parse an algebra job, run the requested computation,
//! emit a machine-readable report.
//!
//! Exit codes: 0 all asserted checks pass; 1 a verification failed; 2 a
//! parse/input error; 3 an internal invariant violation.


use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use yoneda_core::chains::bardzell_up_to;
use yoneda_core::contraction::PivotRule;
use yoneda_core::exactla::{Field, PrimeField, Rationals};
use yoneda_core::quiver::MonomialAlgebra;
use yoneda_core::reduction::{
    check_m_ell_identity, check_vanishing_groups, gamma_class, generation_closure,
    kupisch_from_sequence, reduced_algebra, OpTree, SequenceLengths,
};
use yoneda_core::resolution::ext_table;
use yoneda_core::transfer::AInfinity;
use yoneda_core::{Error, FieldSpec};

use yoneda_cli::jobs::{self, check_degree_bounds, parse_field, parse_usize_list, AlgebraDesc, AlgebraFile};
use yoneda_cli::reports::*;

#[derive(Parser)]
#[command(
    name = "yoneda",
    version,
    about = "Exact Yoneda algebras of monomial quiver algebras with their minimal A-infinity structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Algebra specification file (JSON).
    #[arg(long, value_name = "FILE")]
    algebra: Option<PathBuf>,
    /// Linear Kupisch series, e.g. 1,2,2.
    #[arg(long, value_name = "LIST")]
    kupisch: Option<String>,
    /// Cyclic Kupisch series, e.g. 3.
    #[arg(long, value_name = "LIST")]
    cyclic: Option<String>,
    /// Interior lengths of an exact sequence; selects the reduced algebra.
    #[arg(long, value_name = "LIST")]
    lengths: Option<String>,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Maximum cohomological degree D.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Largest operation arity (default min(6, D + 1)).
    #[arg(long)]
    k_max: Option<usize>,
    /// Base field: "q" or "fp:P".
    #[arg(long, default_value = "fp:32003")]
    field: String,
    /// Report output path (stdout when omitted). ".csv" selects the CSV
    /// dimension projection where available.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for the seeded parts of the suites (mutation selection).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Ext dimension table of an algebra.
    Ext {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Associated-path chains (the combinatorial resolution index).
    Chains {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Transferred A-infinity structure constants.
    Transfer {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify the Stasheff identities (plus one mutation test).
    CheckStasheff {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify generation in degrees 0 and 1.
    CheckGeneration {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build the reduced Nakayama algebra of an exact-sequence length datum.
    BuildB {
        /// Interior lengths, e.g. 3,3,2.
        #[arg(long, value_name = "LIST")]
        lengths: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Full reduction check: m_ell identity and vanishing lemmas.
    CheckKeller {
        /// Interior lengths, e.g. 3,3,2.
        #[arg(long, value_name = "LIST")]
        lengths: String,
        #[arg(long, default_value = "fp:32003")]
        field: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The truncated-polynomial example: graded collapse, A-infinity
    /// separation.
    Madsen {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value = "fp:32003")]
        field: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn resolve_algebra(
    args: &AlgebraArgs,
    field_flag: &str,
) -> Result<(MonomialAlgebra, String, FieldSpec), Error> {
    let mut field = parse_field(field_flag)?;
    let given = [
        args.algebra.is_some(),
        args.kupisch.is_some(),
        args.cyclic.is_some(),
        args.lengths.is_some(),
    ];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::InvalidInput(
            "give exactly one of --algebra, --kupisch, --cyclic, --lengths".into(),
        ));
    }
    let desc: AlgebraDesc = if let Some(path) = &args.algebra {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        let file: AlgebraFile = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("bad algebra file: {e}")))?;
        if let Some(f) = file.field {
            field = match f {
                jobs::FieldDesc::Rational => FieldSpec::Rational,
                jobs::FieldDesc::Prime { p } => {
                    let spec = FieldSpec::Prime(p);
                    spec.validate()?;
                    spec
                }
            };
        }
        file.algebra
    } else if let Some(list) = &args.kupisch {
        AlgebraDesc::KupischLinear { c: parse_usize_list(list)? }
    } else if let Some(list) = &args.lengths {
        let (series, _) = kupisch_from_sequence(&parse_usize_list(list)?)?;
        AlgebraDesc::KupischLinear { c: series.entries().to_vec() }
    } else {
        AlgebraDesc::KupischCyclic { c: parse_usize_list(args.cyclic.as_ref().unwrap())? }
    };
    let alg = desc.build()?;
    Ok((alg, desc.describe(), field))
}

fn write_output(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn effective_k_max(d: usize, flag: Option<usize>) -> usize {
    flag.unwrap_or_else(|| 6usize.min(d + 1)).max(2)
}

fn is_csv(out: &Option<PathBuf>) -> bool {
    out.as_ref()
        .map(|p| p.extension().map(|e| e == "csv").unwrap_or(false))
        .unwrap_or(false)
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Ext { alg, common } => {
            let (algebra, desc, field) = resolve_algebra(&alg, &common.field)?;
            check_degree_bounds(common.max_degree, 2)?;
            let report = match field {
                FieldSpec::Prime(p) => {
                    cmd_ext(PrimeField::new(p)?, &algebra, desc, common.max_degree)?
                }
                FieldSpec::Rational => cmd_ext(Rationals, &algebra, desc, common.max_degree)?,
            };
            if is_csv(&common.out) {
                write_output(&dims_to_csv(&report.dims), &common.out)?;
            } else {
                write_output(&to_canonical_json(&report), &common.out)?;
            }
            Ok(0)
        }
        Command::Chains { alg, common } => {
            let (algebra, desc, _) = resolve_algebra(&alg, &common.field)?;
            check_degree_bounds(common.max_degree, 2)?;
            let layers = bardzell_up_to(&algebra, common.max_degree);
            let counts: Vec<usize> = layers.iter().map(|l| l.len()).collect();
            let chains: Vec<ChainItem> = layers
                .iter()
                .flat_map(|layer| {
                    layer.iter().map(|c| ChainItem {
                        degree: c.degree,
                        source: c.source + 1,
                        target: c.target + 1,
                        arrows: c.arrows.iter().map(|&a| a + 1).collect(),
                    })
                })
                .collect();
            if is_csv(&common.out) {
                let mut dims: Vec<GroupDim> = Vec::new();
                for c in &chains {
                    if let Some(last) = dims.last_mut() {
                        if last.degree == c.degree
                            && last.source == c.source
                            && last.target == c.target
                        {
                            last.dim += 1;
                            continue;
                        }
                    }
                    dims.push(GroupDim {
                        degree: c.degree,
                        source: c.source,
                        target: c.target,
                        dim: 1,
                    });
                }
                write_output(&dims_to_csv(&dims), &common.out)?;
            } else {
                let report = ChainsReport {
                    schema_version: SCHEMA_VERSION,
                    command: "chains",
                    algebra: desc,
                    max_degree: common.max_degree,
                    counts,
                    chains,
                };
                write_output(&to_canonical_json(&report), &common.out)?;
            }
            Ok(0)
        }
        Command::Transfer { alg, common } => {
            let (algebra, desc, field) = resolve_algebra(&alg, &common.field)?;
            let k_max = effective_k_max(common.max_degree, common.k_max);
            check_degree_bounds(common.max_degree, k_max)?;
            let report = match field {
                FieldSpec::Prime(p) => {
                    cmd_transfer(PrimeField::new(p)?, &algebra, desc, common.max_degree, k_max)?
                }
                FieldSpec::Rational => {
                    cmd_transfer(Rationals, &algebra, desc, common.max_degree, k_max)?
                }
            };
            write_output(&to_canonical_json(&report), &common.out)?;
            Ok(0)
        }
        Command::CheckStasheff { alg, common } => {
            let (algebra, desc, field) = resolve_algebra(&alg, &common.field)?;
            let k_max = effective_k_max(common.max_degree, common.k_max);
            check_degree_bounds(common.max_degree, k_max)?;
            let (report, pass) = match field {
                FieldSpec::Prime(p) => cmd_stasheff(
                    PrimeField::new(p)?,
                    &algebra,
                    desc,
                    common.max_degree,
                    k_max,
                    common.seed,
                )?,
                FieldSpec::Rational => {
                    cmd_stasheff(Rationals, &algebra, desc, common.max_degree, k_max, common.seed)?
                }
            };
            write_output(&to_canonical_json(&report), &common.out)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::CheckGeneration { alg, common } => {
            let (algebra, desc, field) = resolve_algebra(&alg, &common.field)?;
            let k_max = effective_k_max(common.max_degree, common.k_max);
            check_degree_bounds(common.max_degree, k_max)?;
            let (report, pass) = match field {
                FieldSpec::Prime(p) => {
                    cmd_generation(PrimeField::new(p)?, &algebra, desc, common.max_degree, k_max)?
                }
                FieldSpec::Rational => {
                    cmd_generation(Rationals, &algebra, desc, common.max_degree, k_max)?
                }
            };
            write_output(&to_canonical_json(&report), &common.out)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::BuildB { lengths, out } => {
            let lengths = parse_usize_list(&lengths)?;
            let sl = SequenceLengths::new(&lengths)?;
            let (series, p) = kupisch_from_sequence(&lengths)?;
            let report = BuildBReport {
                schema_version: SCHEMA_VERSION,
                command: "build-b",
                lengths,
                derived_image_lengths: sl.lengths_n.clone(),
                p,
                kupisch: series.entries().to_vec(),
            };
            write_output(&to_canonical_json(&report), &out)?;
            Ok(0)
        }
        Command::CheckKeller { lengths, field, out } => {
            let lengths = parse_usize_list(&lengths)?;
            let field = parse_field(&field)?;
            let (report, pass) = match field {
                FieldSpec::Prime(p) => cmd_keller(PrimeField::new(p)?, &lengths)?,
                FieldSpec::Rational => cmd_keller(Rationals, &lengths)?,
            };
            write_output(&to_canonical_json(&report), &out)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Madsen { ell, max_degree, field, out } => {
            if ell < 2 {
                return Err(Error::InvalidInput("--ell must be at least 2".into()));
            }
            check_degree_bounds(max_degree, 2)?;
            let field = parse_field(&field)?;
            let (report, pass) = match field {
                FieldSpec::Prime(p) => cmd_madsen(PrimeField::new(p)?, ell, max_degree)?,
                FieldSpec::Rational => cmd_madsen(Rationals, ell, max_degree)?,
            };
            write_output(&to_canonical_json(&report), &out)?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

fn cmd_ext<K: Field>(
    k: K,
    alg: &MonomialAlgebra,
    desc: String,
    d: usize,
) -> Result<ExtReport, Error> {
    let table = ext_table(alg, &k, d)?;
    let mut dims = Vec::new();
    let mut totals = vec![0usize; d + 1];
    for n in 0..=d {
        for j in 0..alg.n_vertices() {
            for i in 0..alg.n_vertices() {
                let dim = table.dim(n, j, i);
                if dim > 0 {
                    dims.push(GroupDim { degree: n, source: j + 1, target: i + 1, dim });
                    totals[n] += dim;
                }
            }
        }
    }
    Ok(ExtReport {
        schema_version: SCHEMA_VERSION,
        command: "ext",
        algebra: desc,
        field: k.spec().to_string(),
        max_degree: d,
        dims,
        totals,
    })
}

fn cmd_transfer<K: Field>(
    k: K,
    alg: &MonomialAlgebra,
    desc: String,
    d: usize,
    k_max: usize,
) -> Result<TransferReport, Error> {
    let mut ainf = AInfinity::new(alg, k.clone(), d, k_max, PivotRule::Leftmost)?;
    let mut basis = Vec::new();
    for id in 0..ainf.n_basis() as u32 {
        let e = *ainf.basis_elt(id);
        if e.is_ext {
            basis.push(BasisEntry {
                id,
                degree: e.degree,
                source: e.source + 1,
                target: e.target + 1,
                index: e.idx,
            });
        }
    }
    let mut values = Vec::new();
    for arity in 2..=k_max {
        let tuples = ainf.composable_tuples(arity, d + arity - 2, |e| e.is_ext);
        for ids in tuples {
            let Some(v) = ainf.m_on_ids(&ids)? else { continue };
            let ext = ainf.ext_part(&v);
            if ext.is_zero(&k) {
                continue;
            }
            let group = ainf.group_ids(ext.degree, ext.source, ext.target).to_vec();
            let output: Vec<(u32, String)> = ext
                .coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !k.is_zero(c))
                .map(|(pos, c)| (group[pos], k.format_elem(c)))
                .collect();
            values.push(ValueEntry { k: arity, inputs: ids, output });
        }
    }
    Ok(TransferReport {
        schema_version: SCHEMA_VERSION,
        command: "transfer",
        algebra: desc,
        field: k.spec().to_string(),
        max_degree: d,
        k_max,
        trust_bound: d,
        basis,
        values,
    })
}

fn cmd_stasheff<K: Field>(
    k: K,
    alg: &MonomialAlgebra,
    desc: String,
    d: usize,
    k_max: usize,
    seed: u64,
) -> Result<(StasheffReportOut, bool), Error> {
    let mut ainf = AInfinity::new(alg, k.clone(), d, k_max, PivotRule::Leftmost)?;
    let rep = ainf.check_stasheff()?;
    // Mutation test: corrupt one stored value; the identities must notice.
    let corrupted = ainf.corrupt_stored_value(seed as usize);
    let mutation_detected = if corrupted.is_some() {
        !ainf.check_stasheff()?.passed()
    } else {
        // Nothing to corrupt (no nonzero operation at all): vacuous.
        true
    };
    let pass = rep.passed() && mutation_detected;
    let out = StasheffReportOut {
        schema_version: SCHEMA_VERSION,
        command: "check-stasheff",
        algebra: desc,
        field: k.spec().to_string(),
        max_degree: d,
        k_max,
        tuples_checked: rep.tuples_checked,
        violations: rep.violations,
        mutation_corrupted: corrupted,
        mutation_detected,
        pass,
    };
    Ok((out, pass))
}

fn tree_out(tree: &OpTree) -> TreeOut {
    match tree {
        OpTree::Seed { id } => TreeOut::Seed { seed: *id },
        OpTree::Op { arity, args } => {
            TreeOut::Op { op: *arity, args: args.iter().map(tree_out).collect() }
        }
    }
}

fn cmd_generation<K: Field>(
    k: K,
    alg: &MonomialAlgebra,
    desc: String,
    d: usize,
    k_max: usize,
) -> Result<(GenerationReportOut, bool), Error> {
    let mut ainf = AInfinity::new(alg, k.clone(), d, k_max, PivotRule::Leftmost)?;
    let rep = generation_closure(&mut ainf)?;
    let pass = rep.pass;
    let out = GenerationReportOut {
        schema_version: SCHEMA_VERSION,
        command: "check-generation",
        algebra: desc,
        field: k.spec().to_string(),
        max_degree: d,
        k_max,
        degrees: rep
            .degrees
            .iter()
            .map(|dr| DegreeOut {
                degree: dr.degree,
                dim_ext: dr.dim_ext,
                dim_closure: dr.dim_closure,
                pass: dr.pass,
            })
            .collect(),
        witnesses: rep
            .witnesses
            .iter()
            .map(|w| WitnessOut {
                class: GroupDim {
                    degree: w.degree,
                    source: w.source + 1,
                    target: w.target + 1,
                    dim: w.basis_index,
                },
                tree: tree_out(&w.tree),
            })
            .collect(),
        rounds: rep.rounds,
        pass: rep.pass,
    };
    Ok((out, pass))
}

fn cmd_keller<K: Field>(k: K, lengths: &[usize]) -> Result<(KellerReport, bool), Error> {
    let (alg, sl) = reduced_algebra(lengths)?;
    let (series, p) = kupisch_from_sequence(lengths)?;
    let d = sl.d();
    let ell = sl.ell();
    let trust = (d + 1).max(2);
    let k_max = ell.max(2);
    let mut ainf = AInfinity::new(&alg, k.clone(), trust, k_max, PivotRule::Leftmost)?;
    let gamma = gamma_class(&alg, &k, &ainf.table, d)?;
    let m_ell = check_m_ell_identity(&mut ainf, &sl)?;
    let vanishing = check_vanishing_groups(&ainf.table, &sl)?;
    let stasheff_pass = ainf.check_stasheff()?.passed();
    let pass = m_ell.pass && vanishing.pass() && stasheff_pass;
    let report = KellerReport {
        schema_version: SCHEMA_VERSION,
        command: "check-keller",
        field: k.spec().to_string(),
        lengths: lengths.to_vec(),
        p,
        kupisch: series.entries().to_vec(),
        ell,
        d,
        gamma: GroupDim {
            degree: gamma.degree,
            source: gamma.source + 1,
            target: gamma.target + 1,
            dim: gamma.coords.len(),
        },
        m_ell: MEllOut {
            ell: m_ell.ell,
            d: m_ell.d,
            scalar: m_ell.scalar.as_ref().map(|s| k.format_elem(s)),
            pass: m_ell.pass,
        },
        vanishing: VanishingOut {
            ext2_violations: vanishing.ext2_violations.clone(),
            top_violations: vanishing.top_violations.clone(),
            pass: vanishing.pass(),
        },
        stasheff_pass,
        pass,
    };
    Ok((report, pass))
}

fn cmd_madsen<K: Field>(k: K, ell: usize, d: usize) -> Result<(MadsenReport, bool), Error> {
    let series = yoneda_core::quiver::KupischSeries::cyclic(vec![ell])?;
    let alg = MonomialAlgebra::nakayama_cyclic(&series)?;
    let k_max = ell.max(2).min(d + 1);
    let mut ainf = AInfinity::new(&alg, k.clone(), d, k_max, PivotRule::Leftmost)?;
    let dims: Vec<usize> = (0..=d).map(|n| ainf.table.dim(n, 0, 0)).collect();
    let u = ainf.group_ids(1, 0, 0)[0];
    let mut pattern = Vec::new();
    let mut m_ell_scalar = String::from("0");
    let mut pattern_ok = true;
    for arity in 2..=ell.min(k_max) {
        let v = ainf
            .m_on_ids(&vec![u; arity])?
            .ok_or(Error::UntrustedDegree { degree: 2, trusted: d })?;
        let ext = ainf.ext_part(&v);
        let nonzero = !ext.is_zero(&k);
        if arity == ell && nonzero {
            m_ell_scalar = k.format_elem(&ext.coords[0]);
        }
        pattern_ok &= nonzero == (arity == ell);
        pattern.push(MadsenPatternEntry { k: arity, nonzero });
    }
    let dims_ok = dims.iter().all(|&x| x == 1);
    let m2_zero = pattern.first().map(|e| !e.nonzero).unwrap_or(false);
    let pass = dims_ok && pattern_ok && (ell == 2 || m2_zero);
    let report = MadsenReport {
        schema_version: SCHEMA_VERSION,
        command: "madsen",
        ell,
        field: k.spec().to_string(),
        max_degree: d,
        dims,
        m2_uu_is_zero: m2_zero,
        pattern,
        m_ell_scalar,
        pass,
    };
    Ok((report, pass))
}
