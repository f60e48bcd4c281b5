//! `example-paper`: writes the genus-1 F_5 fixtures and checks the whole
//! pipeline on them.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;
use udmg_core::codes::first_column_code;
use udmg_core::curve::enumerate_points;
use udmg_core::format::join_list;
use udmg_core::waveform::{audit_product_distance, build_scheme, snr};
use udmg_core::{example, ConstructionFile, CurvePoint, FqMatrix, MatrixSetFile};

use crate::commands::{write, Report};

pub const CONSTRUCTION: &str = r#"{
  "q": 5,
  "genus": 1,
  "a": 1,
  "b": 1,
  "points": [[0, 1], [4, 2], [3, 4], [0, 4], [4, 3], [3, 1], [2, 1], [2, 4], "inf"],
  "divisor": {"n": 3, "h": "r + s"}
}
"#;

fn row_space(m: &FqMatrix) -> Vec<Vec<u32>> {
    let r = m.rref();
    r.reduced.row_vecs().into_iter().take(r.rank).collect()
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

pub fn run(out_dir: Option<&Path>) -> anyhow::Result<Report> {
    let printed = MatrixSetFile::from_udmg(&example::printed_udmg(1));
    let corrected = MatrixSetFile::from_udmg(&example::corrected_udmg(1));
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| anyhow::anyhow!("creating {}: {e}", dir.display()))?;
        write(&dir.join("paper_genus1.json"), &printed.to_canonical_json())?;
        write(&dir.join("paper_genus1_corrected.json"), &corrected.to_canonical_json())?;
        write(&dir.join("genus1_construction.json"), CONSTRUCTION)?;
    }

    let mut checks = Vec::new();
    let u1 = printed.to_udmg()?;
    let r1 = u1.verify();
    checks.push(Check {
        name: "reference set verifies at genus 1",
        pass: r1.valid,
        detail: r1
            .witness
            .as_deref()
            .map_or("valid".into(), |w| format!("witness {} (rank {})", join_list(w), u1.prefix_rank(w))),
    });
    let u0 = u1.with_genus(0);
    let r0 = u0.verify();
    let counter = [0, 0, 0, 0, 0, 1, 1, 1, 0];
    let rank = u0.prefix_rank(&counter);
    checks.push(Check {
        name: "reference set fails at genus 0",
        pass: !r0.valid && rank == 2,
        detail: format!(
            "first witness {}, rank at {} = {rank}",
            join_list(&r0.witness.unwrap_or_default()),
            join_list(&counter)
        ),
    });

    let curve = example::curve();
    let found: BTreeSet<CurvePoint> = enumerate_points(&curve)?.into_iter().collect();
    let listed: BTreeSet<CurvePoint> = example::points().into_iter().collect();
    let (lo, hi) = curve.hasse_weil_interval();
    checks.push(Check {
        name: "point census",
        pass: found == listed && (lo..=hi).contains(&(found.len() as i64)),
        detail: format!("{} points in [{lo}, {hi}]", found.len()),
    });

    let gc = ConstructionFile::parse(CONSTRUCTION)?.build()?;
    let rc = gc.udmg.verify();
    checks.push(Check {
        name: "construction verifies at genus 1",
        pass: rc.valid,
        detail: rc.witness.as_deref().map_or("valid".into(), join_list),
    });
    let same = row_space(&gc.generator()) == row_space(&example::printed_generator());
    checks.push(Check {
        name: "generator row space matches reference",
        pass: same,
        detail: if same { "equal".into() } else { "row spaces differ".into() },
    });
    let mismatch = gc.check_generator_identity()?;
    checks.push(Check {
        name: "generator identity",
        pass: mismatch.is_none(),
        detail: mismatch
            .map_or("holds at every point".into(), |(i, j)| format!("mismatch at row {}, point {}", i + 1, j + 1)),
    });
    let code = first_column_code(&gc.udmg)?;
    let d = code.d().unwrap_or(0);
    checks.push(Check {
        name: "first-column code distance",
        pass: (6..=7).contains(&d),
        detail: format!("[{}, {}, {d}], defect {}", code.n(), code.k(), code.defect().unwrap_or(0)),
    });
    let rcorr = corrected.to_udmg()?.verify();
    checks.push(Check {
        name: "corrected set verifies at genus 1",
        pass: rcorr.valid,
        detail: format!("{} vectors", rcorr.total),
    });

    let scheme = build_scheme(&gc.udmg)?;
    let s = snr(&scheme)?;
    checks.push(Check { name: "SNR sandwich", pass: s.within_bounds, detail: format!("{} messages", s.messages) });
    let a = audit_product_distance(&scheme)?;
    checks.push(Check {
        name: "product-distance audit",
        pass: a.pass && !a.vacuous,
        detail: format!("{} pairs, max agreement {}", a.pairs_checked, a.max_agreement),
    });

    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
    }
    if let Some(dir) = out_dir {
        writeln!(text, "fixtures written to {}", dir.display())?;
    }
    let all = checks.iter().all(|c| c.pass);
    let json = json!({
        "checks": checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        "pass": all,
    });
    Ok(Report { json, text, code: if all { 0 } else { 1 } })
}
