use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use kdfc_core::attacks::{
    build_snow2_tables, gd_search, keystream_needed, linearization_size, log2_big, pileup_bias, recurrence_row_tables,
    IndexTables, KDFC_TABLE_ROWS,
};
use kdfc_core::confgen::{continue_iterations, count_configurations, generate_config, y_offline, YMatrix};
use kdfc_core::kdfc::{derive_config, kdfc_init, KdfcParams};
use kdfc_core::lfsr::cycle_lengths;
use kdfc_core::linalg::char_poly;
use kdfc_core::poly::{is_primitive, PrimitiveTable};
use kdfc_core::randtests::run_battery;
use kdfc_core::snow2::{snow2_char_poly, snow2_gains, snow2_init, Snow2Key};
use kdfc_core::symbolic::{theorem1_check, verify_minor_lemmas, Expectation};
use kdfc_core::{BitMatrix, Gf2Poly, SigmaConfig};
use serde_json::json;

use super::{
    AnalyzeCmd, CharPolyArgs, Cli, Command, GenConfigArgs, KdfcArgs, KdfcCmd, KeyArgs, PolyFormat, RandtestArgs,
    ReportFormat, Snow2Cmd, TableSet, UsageError, VerifyCmd,
};
use crate::formats::{
    battery_text, parse_hex_lines, parse_words, poly_to_json, words_to_bits, words_to_hex_lines, ConfigJson, KatJson,
    MatrixJson, TestResultJson, YInitJson,
};
use crate::{tables, yinit};

const SHIPPED_KATS: &str = include_str!("../../data/snow2_kat.json");

/// Runs one command. `Ok(false)` means the command ran but a check failed.
pub(super) fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<bool> {
    let table = || tables::load(cli.table.as_deref());
    match &cli.command {
        Command::Snow2(Snow2Cmd::Stream { key, n }) => {
            let mut st = snow2_init(&snow2_key(key)?)?;
            out.write_all(words_to_hex_lines(&st.keystream(*n)).as_bytes())?;
            Ok(true)
        }
        Command::Snow2(Snow2Cmd::Kat { file }) => snow2_kat(file.as_deref(), out),
        Command::Kdfc(cmd) => kdfc(cmd, &table()?, out),
        Command::GenConfig(args) => gen_config(args, &table()?, out),
        Command::CharPoly(args) => char_poly_cmd(args, out),
        Command::Analyze(cmd) => analyze(cmd, out),
        Command::Randtest(args) => randtest(args, out),
        Command::Verify(cmd) => verify(cmd, &table()?, out),
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn snow2_key(k: &KeyArgs) -> Result<Snow2Key> {
    let key = parse_words(&k.key).map_err(|e| usage(format!("--key: {e:#}")))?;
    let iv = parse_words(&k.iv).map_err(|e| usage(format!("--iv: {e:#}")))?;
    Snow2Key::new(&key, &iv).map_err(|e| usage(e.to_string()))
}

fn parse_poly(s: &str) -> Result<Gf2Poly> {
    s.parse::<Gf2Poly>().map_err(|e| usage(format!("--poly: {e}")))
}

fn write_json(out: &mut impl Write, v: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn snow2_kat(file: Option<&Path>, out: &mut impl Write) -> Result<bool> {
    let text = match file {
        Some(p) => read_input(p)?,
        None => SHIPPED_KATS.to_string(),
    };
    let kats: Vec<KatJson> = serde_json::from_str(&text).context("parsing KAT file")?;
    let mut all = true;
    for (i, kat) in kats.iter().enumerate() {
        let expected = kat.words()?;
        let key = Snow2Key::new(&kat.key_words()?, &kat.iv_words()?)?;
        let got = snow2_init(&key)?.keystream(expected.len());
        let ok = got == expected;
        all &= ok;
        writeln!(out, "vector {i}: {} words {}", expected.len(), if ok { "ok" } else { "MISMATCH" })?;
    }
    Ok(all)
}

fn load_yinit(args: &KdfcArgs, table: &PrimitiveTable) -> Result<YMatrix> {
    let file: YInitJson = match &args.yinit {
        Some(p) => serde_json::from_str(&read_input(p)?).with_context(|| format!("parsing {}", p.display()))?,
        None if args.k == kdfc_core::kdfc::DEFAULT_OFFLINE_ITERATIONS => yinit::builtin(),
        None => {
            eprintln!("note: no --yinit for k = {}; generating one with seed {:#x}", args.k, yinit::BUILTIN_SEED);
            yinit::generate(yinit::BUILTIN_SEED, 32, 16, args.k, table)?
        }
    };
    if file.provenance.k != args.k {
        bail!(usage(format!("--k {} does not match the Y file (k = {})", args.k, file.provenance.k)));
    }
    if file.provenance.table_sha256 != table.checksum() {
        eprintln!("warning: Y was built against polynomial table {}", file.provenance.table_sha256);
    }
    file.y()
}

fn kdfc(cmd: &KdfcCmd, table: &PrimitiveTable, out: &mut impl Write) -> Result<bool> {
    let args = match cmd {
        KdfcCmd::Init(a) | KdfcCmd::DumpConfig(a) => a,
        KdfcCmd::Stream { args, .. } => args,
    };
    let key = snow2_key(&args.key)?;
    let y = load_yinit(args, table)?;
    let mut params = KdfcParams::new(key, &y, table);
    params.warmup = args.warmup;
    match cmd {
        KdfcCmd::Init(_) => {
            let st = kdfc_init(&params)?;
            let cp = char_poly(&st.config().config_matrix());
            let matches = cp == params.target;
            let lfsr: Vec<String> = st.lfsr().blocks().iter().map(|w| format!("{w:08x}")).collect();
            write_json(
                out,
                &json!({
                    "k": params.offline_iterations(),
                    "online_iterations": params.online_iterations(),
                    "warmup": params.warmup,
                    "nonzero_gains": st.config().nonzero_gains(),
                    "char_poly_matches_target": matches,
                    "lfsr": lfsr,
                    "r1": format!("{:08x}", st.fsm().r1),
                    "r2": format!("{:08x}", st.fsm().r2),
                }),
            )?;
            Ok(matches)
        }
        KdfcCmd::Stream { n, .. } => {
            let mut st = kdfc_init(&params)?;
            out.write_all(words_to_hex_lines(&st.keystream(*n)).as_bytes())?;
            Ok(true)
        }
        KdfcCmd::DumpConfig(_) => {
            write_json(out, &ConfigJson::from_config(&derive_config(&params)?))?;
            Ok(true)
        }
    }
}

fn gen_config(a: &GenConfigArgs, table: &PrimitiveTable, out: &mut impl Write) -> Result<bool> {
    if a.m == 0 || a.b == 0 || a.m > 64 {
        bail!(usage("--m must be in 1..=64 and --b at least 1"));
    }
    let n = a.m * a.b;
    if a.k > n - a.m {
        bail!(usage(format!("--k must be at most mb - m = {}", n - a.m)));
    }
    let p = match &a.poly {
        Some(s) => parse_poly(s)?,
        None => table.get(n)?.clone(),
    };
    let y = y_offline(a.b, a.k, &yinit::seeded_fill(a.seed, a.m, a.k), &BitMatrix::identity(a.m), table)?;
    if let Some(path) = &a.yinit_out {
        let file = yinit::generate(a.seed, a.m, a.b, a.k, table)?;
        std::fs::write(path, serde_json::to_string_pretty(&file)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let online = yinit::seeded_fill(a.online_seed, a.m, n - a.m - a.k);
    let cfg = generate_config(a.m, a.b, &p, &y, &online, table)?;
    write_json(out, &ConfigJson::from_config(&cfg))?;
    Ok(true)
}

fn print_poly(out: &mut impl Write, p: &Gf2Poly, format: PolyFormat) -> Result<()> {
    match format {
        PolyFormat::List => {
            let list: Vec<String> = p.exponents().iter().map(|e| e.to_string()).collect();
            writeln!(out, "{}", list.join(","))?;
        }
        PolyFormat::Terms => writeln!(out, "{p}")?,
        PolyFormat::Json => write_json(out, &poly_to_json(p))?,
    }
    Ok(())
}

fn char_poly_cmd(a: &CharPolyArgs, out: &mut impl Write) -> Result<bool> {
    let m = if a.snow2 {
        snow2_gains().config_matrix()
    } else if let Some(p) = &a.config {
        let c: ConfigJson = serde_json::from_str(&read_input(p)?).context("parsing configuration")?;
        c.to_config()?.config_matrix()
    } else if let Some(p) = &a.matrix {
        let m: MatrixJson = serde_json::from_str(&read_input(p)?).context("parsing matrix")?;
        m.to_matrix()?
    } else {
        bail!(usage("one of --snow2, --config or --matrix is required"));
    };
    ensure!(m.is_square(), "matrix is {}x{}, not square", m.rows(), m.cols());
    let p = char_poly(&m);
    print_poly(out, &p, a.format)?;
    if a.snow2 {
        let listed = snow2_char_poly();
        if p != listed {
            let note = if p == listed.reverse(512) { "its reciprocal" } else { "unrelated" };
            eprintln!("note: differs from the listed SNOW 2.0 polynomial; the computed one is {note}");
        }
    }
    Ok(true)
}

fn analyze(cmd: &AnalyzeCmd, out: &mut impl Write) -> Result<bool> {
    match cmd {
        AnalyzeCmd::Bias { eps_log2, taps } => {
            if *taps == 0 || *eps_log2 > 0.0 {
                bail!(usage("--taps must be positive and --eps-log2 at most 0"));
            }
            let eps = pileup_bias(*eps_log2, *taps);
            writeln!(out, "eps_final_log2 {eps:.3}")?;
            writeln!(out, "keystream_log2 {:.3}", keystream_needed(eps))?;
        }
        AnalyzeCmd::Linearization { vars, degree } => {
            if degree > vars {
                bail!(usage("--degree must not exceed --vars"));
            }
            let n = linearization_size(*vars, *degree);
            writeln!(out, "log2 {:.3}", log2_big(&n))?;
            writeln!(out, "bits {}", n.bits())?;
        }
        AnalyzeCmd::Gd { tables, max_stages, dump } => {
            let t = match tables {
                TableSet::Snow2 => build_snow2_tables(),
                TableSet::Kdfc => recurrence_row_tables(&snow2_char_poly(), KDFC_TABLE_ROWS)?,
            };
            if *dump {
                write_json(out, &json!({ "node_count": t.node_count(), "rows": t.rows() }))?;
                return Ok(true);
            }
            return gd(&t, *max_stages, out);
        }
    }
    Ok(true)
}

fn gd(t: &IndexTables, max_stages: usize, out: &mut impl Write) -> Result<bool> {
    match gd_search(t, max_stages) {
        Ok(path) => {
            write_json(
                out,
                &json!({
                    "nodes": t.node_count(),
                    "rows": t.rows().len(),
                    "basis": path.len(),
                    "path": path.nodes,
                    "complexity_log2": path.complexity_log2(32),
                }),
            )?;
            Ok(true)
        }
        Err(kdfc_core::Error::NoCover { stages }) => {
            writeln!(out, "no basis found within {stages} stages")?;
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn randtest(a: &RandtestArgs, out: &mut impl Write) -> Result<bool> {
    let words = parse_hex_lines(&read_input(&a.input)?)?;
    let bits = words_to_bits(&words);
    let results = run_battery(&bits)?;
    let all = results.iter().all(|r| r.pass);
    let mut segment_counts: Option<BTreeMap<&'static str, usize>> = None;
    let mut segments_ok = true;
    if let Some(s) = a.segments {
        ensure!(s >= 1 && words.len() / s >= 1, "too few words for {s} segments");
        let per = words.len() / s;
        let mut counts = BTreeMap::new();
        for chunk in words.chunks_exact(per).take(s) {
            for r in run_battery(&words_to_bits(chunk))? {
                *counts.entry(r.name).or_insert(0) += usize::from(r.pass);
            }
        }
        // at least 96 of 100 at the 0.01 level, scaled to the segment count
        let need = (s * 96).div_ceil(100);
        segments_ok = counts.values().all(|&c| c >= need);
        segment_counts = Some(counts);
    }
    match a.report {
        ReportFormat::Text => {
            out.write_all(battery_text(&results).as_bytes())?;
            if let (Some(counts), Some(s)) = (&segment_counts, a.segments) {
                writeln!(out, "\nsegments passing ({s} segments of {} bits)", bits.len() / s)?;
                for (name, c) in counts {
                    writeln!(out, "{name:<28} {c}/{s}")?;
                }
            }
        }
        ReportFormat::Json => {
            let rs: Vec<TestResultJson> = results.iter().map(TestResultJson::from).collect();
            write_json(out, &json!({ "bits": bits.len(), "results": rs, "segments": segment_counts }))?;
        }
    }
    Ok(all && segments_ok)
}

fn verify(cmd: &VerifyCmd, table: &PrimitiveTable, out: &mut impl Write) -> Result<bool> {
    let target = |poly: &Option<String>, n: usize| -> Result<Gf2Poly> {
        match poly {
            Some(s) => parse_poly(s),
            None => Ok(table.get(n)?.clone()),
        }
    };
    match cmd {
        VerifyCmd::Lemmas { m, b, poly, report } => {
            let p = target(poly, m * b)?;
            let rep = verify_minor_lemmas(*m, *b, &p)?;
            match report {
                ReportFormat::Text => {
                    writeln!(out, "m = {m}, b = {b}, p = {p}")?;
                    writeln!(out, "det(Q3) = {}", rep.det_q3)?;
                    for lemma in 1..=4 {
                        let status = if rep.lemma_holds(lemma) { "holds" } else { "VIOLATED" };
                        writeln!(out, "lemma {lemma}: {} minors checked, {status}", rep.count(lemma))?;
                    }
                    for c in rep.violations() {
                        writeln!(out, "  lemma {} at ({}, {}): expected {:?}, degree {:?}", c.lemma, c.i, c.j, c.expected, c.computed_degree)?;
                    }
                }
                ReportFormat::Json => {
                    let checks: Vec<_> = rep
                        .checks
                        .iter()
                        .map(|c| {
                            let expected = match c.expected {
                                Expectation::Degree(d) => json!({ "degree": d }),
                                Expectation::EqualsDetQ3 => json!("det_q3"),
                                Expectation::Zero => json!("zero"),
                            };
                            json!({ "lemma": c.lemma, "i": c.i, "j": c.j, "expected": expected,
                                    "computed_degree": c.computed_degree, "holds": c.holds })
                        })
                        .collect();
                    write_json(out, &json!({ "m": m, "b": b, "poly": poly_to_json(&p), "det_q3": rep.det_q3.to_text(),
                                              "all_hold": rep.all_hold(), "checks": checks }))?;
                }
            }
            Ok(rep.all_hold())
        }
        VerifyCmd::Theorem1 { m, b, poly } => {
            let p = target(poly, m * b)?;
            let r = theorem1_check(*m, *b, &p)?;
            writeln!(out, "entry C[{0}, {0}] = {1}", r.index, r.entry)?;
            let deg = r.degree.map_or("-inf".to_string(), |d| d.to_string());
            writeln!(out, "degree {deg}, bound mb - b = {}", r.expected)?;
            if r.vacuous {
                writeln!(out, "m = 1: no free variables, the bound is vacuous")?;
                return Ok(true);
            }
            writeln!(out, "{}", if r.bound_holds { "bound holds" } else { "bound VIOLATED" })?;
            Ok(r.bound_holds)
        }
        VerifyCmd::Count { m, b, brute_force } => {
            let formula = count_configurations(*m, *b)?;
            writeln!(out, "formula {formula}")?;
            if !brute_force {
                return Ok(true);
            }
            if m * m * b > 24 {
                bail!(usage("--brute-force needs m·m·b <= 24"));
            }
            let found = enumerate_primitive(*m, *b)?;
            writeln!(out, "enumerated {found}")?;
            Ok(formula == found.into())
        }
        VerifyCmd::Period { m, b, seed, poly } => {
            let n = m * b;
            if n > kdfc_core::lfsr::PERIOD_LIMIT || *m == 0 || *b == 0 {
                bail!(usage(format!("need 1 <= mb <= {}", kdfc_core::lfsr::PERIOD_LIMIT)));
            }
            let p = target(poly, n)?;
            let fill = yinit::seeded_fill(*seed, *m, n - m);
            let y = continue_iterations(YMatrix::identity(*m), 0, &fill, table)?;
            let cfg = generate_config(*m, *b, &p, &y, &fill, table)?;
            let lengths = cycle_lengths(&cfg)?;
            writeln!(out, "char poly {}", char_poly(&cfg.config_matrix()))?;
            for (len, states) in &lengths {
                writeln!(out, "period {len}: {states} states")?;
            }
            let full = (1u64 << n) - 1;
            let maximal = lengths.len() == 1 && lengths.get(&full) == Some(&full);
            let primitive = n <= 64 && is_primitive(&p)?;
            Ok(maximal == primitive)
        }
    }
}

fn enumerate_primitive(m: usize, b: usize) -> Result<u64> {
    let bits = m * m * b;
    let mut count = 0;
    for code in 0u64..(1 << bits) {
        let gains = (0..b)
            .map(|i| BitMatrix::from_fn(m, m, |r, c| code >> (i * m * m + r * m + c) & 1 == 1))
            .collect();
        if is_primitive(&char_poly(&SigmaConfig::new(m, b, gains)?.config_matrix()))? {
            count += 1;
        }
    }
    Ok(count)
}
