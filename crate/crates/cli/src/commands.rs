use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use serde_json::{json, Value};
use udmg_core::codes::{bounds as bound_report, BoundClass, LinearCode};
use udmg_core::format::{join_list, parse_list};
use udmg_core::waveform::{
    audit_product_distance, build_scheme, complexify, gap_exhaustive, rational_string, snr, AuditReport, CodeScheme,
    SnrReport,
};
use udmg_core::{minimal_genus, ConstructionFile, CurvePoint, Elem, FqMatrix, MatrixSetFile, Udmg};

/// What a subcommand prints, in both output modes, and its exit code.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn load_set(path: &Path) -> anyhow::Result<Udmg> {
    let file = MatrixSetFile::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    file.to_udmg().with_context(|| format!("invalid matrix set in {}", path.display()))
}

fn describe(u: &Udmg) -> String {
    format!("{} matrices over {}, K = {}, lengths {}", u.len(), u.field(), u.k(), join_list(&u.lengths()))
}

fn rows(m: &FqMatrix) -> Vec<Vec<Elem>> {
    m.row_vecs()
}

pub fn point_label(p: &CurvePoint, genus: usize) -> String {
    match (p, genus) {
        (CurvePoint::Infinity, 0) => "inf".into(),
        (CurvePoint::Affine { x, .. }, 0) => x.to_string(),
        _ => p.to_string(),
    }
}

pub fn verify(path: &Path, genus: Option<usize>, min_genus: bool) -> anyhow::Result<Report> {
    let mut u = load_set(path)?;
    if let Some(g) = genus {
        u = u.with_genus(g);
    }
    let r = u.verify();
    let witness_rank = r.witness.as_ref().map(|w| u.prefix_rank(w));
    let minimal = if min_genus { Some(minimal_genus(u.field(), u.k(), u.matrices())?) } else { None };

    let mut text = String::new();
    writeln!(text, "{}", describe(&u))?;
    writeln!(text, "genus {}: checked {} of {} allowable vectors", u.genus(), r.checked, r.total)?;
    match (&r.witness, witness_rank) {
        (Some(w), Some(rank)) => {
            writeln!(text, "result: INVALID")?;
            writeln!(text, "witness: {} (rank {rank} < {})", join_list(w), u.k())?;
        }
        _ if r.vacuous => writeln!(text, "result: VALID (vacuous: K + g exceeds the total column count)")?,
        _ => writeln!(text, "result: VALID")?,
    }
    if let Some((g, vacuous)) = minimal {
        writeln!(text, "minimal genus: {g}{}", if vacuous { " (vacuous)" } else { "" })?;
    }
    let json = json!({
        "K": u.k(),
        "L": u.len(),
        "genus": u.genus(),
        "lengths": u.lengths(),
        "valid": r.valid,
        "vacuous": r.vacuous,
        "checked": r.checked,
        "total": r.total,
        "witness": r.witness.as_deref().map(join_list),
        "witness_rank": witness_rank,
        "minimal_genus": minimal.map(|(g, _)| g),
        "minimal_genus_vacuous": minimal.map(|(_, v)| v),
    });
    Ok(Report { json, text, code: if r.valid { 0 } else { 1 } })
}

pub fn construct(path: &Path, output: &Path) -> anyhow::Result<Report> {
    let file = ConstructionFile::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let gc = file.build().with_context(|| format!("constructing from {}", path.display()))?;
    let u = &gc.udmg;
    write(output, &MatrixSetFile::from_udmg(u).to_canonical_json())?;
    let r = u.verify();
    let genus = gc.genus();
    let labels: Vec<String> = gc.points.iter().map(|p| point_label(p, genus)).collect();

    let mut text = String::new();
    writeln!(text, "{}, genus {genus}", describe(u))?;
    writeln!(text, "B_0: {}", gc.b0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))?;
    writeln!(text, "{:<10} valuations", "point")?;
    for (label, b) in labels.iter().zip(&gc.bases) {
        writeln!(text, "{label:<10} {}", join_list(&b.valuations))?;
    }
    writeln!(text, "verify: {}", if r.valid { "VALID" } else { "INVALID" })?;
    writeln!(text, "wrote {}", output.display())?;
    let json = json!({
        "K": u.k(),
        "L": u.len(),
        "genus": genus,
        "points": labels,
        "b0": gc.b0.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "valuations": gc.bases.iter().map(|b| b.valuations.clone()).collect::<Vec<_>>(),
        "valid": r.valid,
        "witness": r.witness.as_deref().map(join_list),
        "output": output.display().to_string(),
    });
    Ok(Report { json, text, code: if r.valid { 0 } else { 1 } })
}

pub fn quotient(path: &Path, truncate: &str, output: Option<&Path>) -> anyhow::Result<Report> {
    let u = load_set(path)?;
    let trunc = parse_list(truncate).context("--truncate")?;
    let res = u.realize().quotient(&trunc)?;
    let q = res.quotient.to_udmg();
    if let Some(out) = output {
        write(out, &MatrixSetFile::from_udmg(&q).to_canonical_json())?;
    }
    let mut text = String::new();
    writeln!(text, "{}, genus {}", describe(&u), u.genus())?;
    writeln!(text, "truncation {}: r = {}, d = {}, dim B = {}", join_list(&trunc), res.r, res.d, res.b_dim)?;
    writeln!(text, "quotient: K = {}, genus {}, lengths {}", q.k(), q.genus(), join_list(&q.lengths()))?;
    writeln!(text, "quotient verifies: {}", if res.verified { "yes" } else { "no" })?;
    if let Some(out) = output {
        writeln!(text, "wrote {}", out.display())?;
    }
    let json = json!({
        "truncation": trunc,
        "r": res.r,
        "d": res.d,
        "b_dim": res.b_dim,
        "quotient_K": q.k(),
        "quotient_genus": q.genus(),
        "quotient_lengths": q.lengths(),
        "verified": res.verified,
        "matrices": q.matrices().iter().map(rows).collect::<Vec<_>>(),
    });
    Ok(Report { json, text, code: if res.verified { 0 } else { 1 } })
}

pub fn code(path: &Path, min_distance: bool) -> anyhow::Result<Report> {
    let u = load_set(path)?;
    if u.matrices().iter().any(|m| m.cols() == 0) {
        bail!("every matrix needs at least one column to form the first-column code");
    }
    let cols: Vec<Vec<Elem>> = u.matrices().iter().map(|m| m.column(0)).collect();
    let mut code = LinearCode::new(FqMatrix::from_columns(u.field(), u.k(), &cols)?)?;
    if min_distance {
        code = code.with_distance()?;
    }
    let (n, k, g) = (code.n(), code.k(), u.genus());
    let long_enough = n >= k + g;
    let within = code.defect().map(|s| s <= g);

    let mut text = String::new();
    writeln!(text, "first-column code over {}: n = {n}, k = {k}", u.field())?;
    for row in rows(code.generator()) {
        writeln!(text, "  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))?;
    }
    if let (Some(d), Some(s)) = (code.d(), code.defect()) {
        writeln!(text, "d = {d}, Singleton defect = {s} (genus {g})")?;
        if long_enough {
            writeln!(text, "defect <= genus: {}", if s <= g { "yes" } else { "NO" })?;
        } else {
            writeln!(text, "defect bound needs L >= K + g = {}", k + g)?;
        }
    }
    let json = json!({
        "n": n,
        "k": k,
        "genus": g,
        "generator": rows(code.generator()),
        "d": code.d(),
        "defect": code.defect(),
        "defect_within_genus": within,
        "hypothesis_L_ge_K_plus_g": long_enough,
    });
    let fail = long_enough && within == Some(false);
    Ok(Report { json, text, code: if fail { 1 } else { 0 } })
}

pub fn bounds(k: usize, q: u64, g: usize, lengths: Option<&str>, nks: Option<&str>) -> anyhow::Result<Report> {
    let lengths = lengths.map(parse_list).transpose().context("--lengths")?;
    let nks = match nks.map(parse_list).transpose().context("--nks")? {
        None => None,
        Some(v) if v.len() == 3 => Some((v[0], v[1], v[2])),
        Some(v) => bail!("--nks: expected n,k,s, got {} values", v.len()),
    };
    let r = bound_report(k, q, g, lengths.as_deref(), nks)?;
    let opt = |v: Option<usize>| v.map_or("n/a".to_string(), |x| x.to_string());
    let mut text = String::new();
    writeln!(
        text,
        "K = {k}, q = {q}, g = {g}{}",
        lengths.as_deref().map_or(String::new(), |l| format!(", lengths {}", join_list(l)))
    )?;
    writeln!(text, "one-dimensional bound:     L <= {}", r.thm_1dim)?;
    let class = match &r.class {
        BoundClass::One => "1".to_string(),
        BoundClass::Two => "2".to_string(),
        BoundClass::NotApplicable(why) => format!("n/a ({why})"),
    };
    writeln!(text, "class:                     {class}")?;
    writeln!(text, "thm_bounddelta:            {}", opt(r.thm_bounddelta))?;
    writeln!(text, "partition_bound:           {}", opt(r.partition_bound))?;
    if let Some(note) = &r.partition_note {
        writeln!(text, "  note: {note}")?;
    }
    if let Some(a) = &r.asmds {
        writeln!(
            text,
            "A^s MDS length bound:      n <= {} ({})",
            a.bound,
            if a.satisfied { "satisfied" } else { "violated" }
        )?;
    }
    Ok(Report { json: serde_json::to_value(&r)?, text, code: 0 })
}

fn snr_json(s: &SnrReport) -> Value {
    json!({
        "snr": rational_string(&s.snr),
        "alpha": rational_string(&s.bounds.alpha),
        "beta": rational_string(&s.bounds.beta),
        "lower": rational_string(&s.bounds.lower),
        "upper": rational_string(&s.bounds.upper),
        "within_bounds": s.within_bounds,
        "messages": s.messages,
    })
}

fn audit_json(a: &AuditReport) -> Value {
    json!({
        "pairs_checked": a.pairs_checked,
        "min_product": a.min_product.as_ref().map(rational_string),
        "floor": rational_string(&a.floor),
        "max_agreement": a.max_agreement,
        "pass": a.pass,
        "vacuous": a.vacuous,
        "worst_pair": a.worst_pair.as_ref().map(|(v, w)| [v.clone(), w.clone()]),
    })
}

fn scheme_lines(s: &CodeScheme, text: &mut String) -> std::fmt::Result {
    writeln!(text, "scheme: N = {}, L = {}, q = {}, genus {}", s.n(), s.l(), s.field().order(), s.udmg.genus())?;
    writeln!(
        text,
        "kernel span dim = {}, message dim = {}, rate = {:.4} bits/use",
        s.delta,
        s.message_dim(),
        s.rate()
    )?;
    writeln!(text, "weights: {}", s.modulator.weights().iter().map(rational_string).collect::<Vec<_>>().join(", "))
}

fn snr_lines(s: &SnrReport, text: &mut String) -> std::fmt::Result {
    writeln!(text, "SNR = {} over {} messages", rational_string(&s.snr), s.messages)?;
    writeln!(
        text,
        "sandwich {} <= SNR <= {}: {}",
        rational_string(&s.bounds.lower),
        rational_string(&s.bounds.upper),
        if s.within_bounds { "holds" } else { "FAILS" }
    )
}

fn audit_lines(a: &AuditReport, text: &mut String) -> std::fmt::Result {
    writeln!(text, "audit: {} pairs, max agreement {}", a.pairs_checked, a.max_agreement)?;
    writeln!(
        text,
        "min product distance {} vs floor {}: {}",
        a.min_product.as_ref().map_or("n/a".into(), rational_string),
        rational_string(&a.floor),
        match (a.pass, a.vacuous) {
            (_, true) => "vacuous",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        }
    )
}

pub fn modulate(path: &Path, with_snr: bool, with_audit: bool, with_complex: bool) -> anyhow::Result<Report> {
    let u = load_set(path)?;
    let s = build_scheme(&u)?;
    let mut text = String::new();
    scheme_lines(&s, &mut text)?;
    let mut json = json!({
        "N": s.n(),
        "L": s.l(),
        "q": s.field().order(),
        "genus": u.genus(),
        "delta": s.delta,
        "message_dim": s.message_dim(),
        "rate": s.rate(),
        "weights": s.modulator.weights().iter().map(rational_string).collect::<Vec<_>>(),
    });
    let mut ok = true;
    if with_snr {
        let r = snr(&s)?;
        snr_lines(&r, &mut text)?;
        ok &= r.within_bounds;
        json["snr"] = snr_json(&r);
    }
    if with_audit {
        let a = audit_product_distance(&s)?;
        audit_lines(&a, &mut text)?;
        ok &= a.pass;
        json["audit"] = audit_json(&a);
    }
    if with_complex {
        let c = complexify(&s)?;
        writeln!(
            text,
            "complexified: SNR {} (doubled: {}), message dim {} (doubled: {})",
            rational_string(&c.complex_snr),
            c.snr_doubled,
            c.message_dim,
            c.rate_doubled
        )?;
        ok &= c.snr_doubled && c.rate_doubled;
        json["complexify"] = json!({
            "snr": rational_string(&c.snr),
            "complex_snr": rational_string(&c.complex_snr),
            "message_dim": c.message_dim,
            "snr_doubled": c.snr_doubled,
            "rate_doubled": c.rate_doubled,
        });
    }
    Ok(Report { json, text, code: if ok { 0 } else { 1 } })
}

/// Largest `q^N` for which the exhaustive gap check runs.
const GAP_LIMIT: u64 = 4096;

pub fn audit(path: &Path) -> anyhow::Result<Report> {
    let u = load_set(path)?;
    let s = build_scheme(&u)?;
    let (q, n) = (s.field().order(), s.n());
    let mut text = String::new();
    scheme_lines(&s, &mut text)?;

    let gap = if (q as u64).checked_pow(n as u32).is_some_and(|c| c <= GAP_LIMIT) {
        Some(gap_exhaustive(q, n)?)
    } else {
        None
    };
    match &gap {
        Some(gs) => {
            writeln!(text, "gap check: {} pairs, {}", gs.pairs_checked, if gs.all_pass { "holds" } else { "FAILS" })?
        }
        None => writeln!(text, "gap check: skipped, q^N exceeds {GAP_LIMIT}")?,
    }
    let r = snr(&s)?;
    snr_lines(&r, &mut text)?;
    let a = audit_product_distance(&s)?;
    audit_lines(&a, &mut text)?;

    let ok = gap.as_ref().is_none_or(|g| g.all_pass) && r.within_bounds && a.pass;
    let json = json!({
        "N": n,
        "L": s.l(),
        "q": q,
        "genus": u.genus(),
        "gap": gap.as_ref().map(|g| json!({
            "pairs_checked": g.pairs_checked,
            "all_pass": g.all_pass,
            "min_delta_by_prefix": g.min_delta_by_prefix.iter().map(rational_string).collect::<Vec<_>>(),
        })),
        "snr": snr_json(&r),
        "audit": audit_json(&a),
        "pass": ok,
    });
    Ok(Report { json, text, code: if ok { 0 } else { 1 } })
}
