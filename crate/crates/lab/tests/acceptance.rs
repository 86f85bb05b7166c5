use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use fpcf::cfrac::{convergents, convergents_of, expand, open_question_check, ConvergentTable, OpenQuestionOutcome};
use fpcf::closedform::{
    beta_convergents_e1, omega_build, section3_rs_convergents, square_relation_check, w1_quotients, w2_quotients,
    OmegaFamily,
};
use fpcf::diophantine::{
    from_degrees, lambda1_squared, lambda_bounds_check, predicted_nu, ratio_to_f64, window_sups, Q,
};
use fpcf::laurent::{solve_root, EquationSpec, Family, QuarticSpec};
use fpcf::Poly;
use fpcf_lab::catalog::engine_expand;

type Verdict = Result<String, String>;

fn poly(s: &str) -> Poly {
    Poly::parse(s, 3).unwrap()
}

fn spec(f: Family, a: &str, c: &str) -> EquationSpec {
    EquationSpec::parse(f, a, c).unwrap()
}

fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/omega5_e1_t_t.txt")
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fpcf"))
        .args(["verify", "--family", "E1", "--A", "T", "--C", "T", "--depth", "5", "--no-meta", "--fixture"])
        .arg(fixture_path())
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let r = &report["result"];
    let fixture_len = std::fs::read_to_string(fixture_path()).unwrap().lines().filter(|l| !l.trim().is_empty()).count();
    let matched = r["matched_prefix_length"].as_u64().unwrap_or(0) as usize;
    check(
        out.status.code() == Some(0)
            && r["first_mismatch"].is_null()
            && r["fixture_compared"] == true
            && matched == fixture_len
            && r["generator_length"].as_u64() == Some(fixture_len as u64)
            && elapsed.as_secs_f64() < 5.0,
        format!(
            "engine, Ω_5 build and fixture agree on {matched} of {fixture_len} quotients in {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Verdict {
    let pairs = [("T", "1"), ("T^3+T", "T"), ("T^2", "T"), ("T^2+T", "T+1"), ("T^4+T^2", "T^2")];
    let mut checked = 0;
    for (a, c) in pairs {
        for family in [Family::W1, Family::W2] {
            let s = spec(family, a, c);
            let generated = if family == Family::W1 {
                w1_quotients(s.a().unwrap(), s.c().unwrap(), 7)
            } else {
                w2_quotients(s.a().unwrap(), s.c().unwrap(), 7)
            }
            .map_err(|e| format!("{family} A={a} C={c}: {e}"))?;
            let e = engine_expand(&s, 7, None).map_err(|e| format!("{family} A={a} C={c}: {e}"))?;
            if e.cf.tail()[..7] != generated[..] {
                return Err(format!("{family} A={a} C={c}: engine and closed form differ"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} equations (W1 and W2 over 5 pairs) agree on 7 quotients, max degree {}",
        w1_quotients(&poly("T^3+T"), &poly("T"), 7).unwrap()[6].deg()))
}

fn criterion_3() -> Verdict {
    let tol = Q::new(1, 10);
    let mut lines = Vec::new();
    let mut ok = true;
    let cases: [(Family, &str, &str, usize); 8] = [
        (Family::W1, "T", "1", 14),
        (Family::W1, "T^2+T", "T", 14),
        (Family::W1, "T^2+1", "T", 16),
        (Family::W1, "T^4+1", "T^3+T", 16),
        (Family::W2, "T^2", "T", 14),
        (Family::W2, "T^3+T", "T", 14),
        (Family::W2, "T^5+1", "T", 16),
        (Family::W2, "T^6+T+1", "T", 16),
    ];
    for (family, a, c, terms) in cases {
        let s = spec(family, a, c);
        let degrees: Vec<i64> = if s.c_divides_a() {
            let q = if family == Family::W1 {
                w1_quotients(s.a().unwrap(), s.c().unwrap(), terms as u32)
            } else {
                w2_quotients(s.a().unwrap(), s.c().unwrap(), terms as u32)
            }
            .map_err(|e| e.to_string())?;
            q.iter().map(Poly::deg).collect()
        } else {
            engine_expand(&s, terms, None).map_err(|e| e.to_string())?.cf.degrees()
        };
        let est = from_degrees(&degrees[..terms], terms / 2)
            .map_err(|e| e.to_string())?
            .with_predicted(predicted_nu(&s));
        let within = est.tail_within(tol).unwrap_or(false);
        ok &= within;
        lines.push(format!(
            "{family}({a},{c}) {:.3} vs {:.3}",
            ratio_to_f64(est.estimate_tail()),
            est.predicted.map_or(f64::NAN, ratio_to_f64)
        ));
    }
    check(ok, lines.join("; "))
}

fn determinant(table: &ConvergentTable, what: &str) -> Result<usize, String> {
    table.check_determinant().map_err(|e| format!("{what}: {e}"))?;
    Ok(table.len())
}

fn catalog() -> Vec<EquationSpec> {
    vec![
        spec(Family::W1, "T", "1"),
        spec(Family::W1, "T^2+1", "T"),
        spec(Family::W1, "T^3+T", "T"),
        spec(Family::W2, "T^2", "T"),
        spec(Family::W2, "T^5+1", "T"),
        spec(Family::E1, "T", "T"),
        spec(Family::E1, "T^2+T", "T+1"),
        spec(Family::E2, "T^2", "T"),
        spec(Family::E2, "T^3+T", "T"),
        EquationSpec::mr(3),
        EquationSpec::mr(5),
        EquationSpec::raw(QuarticSpec::parse(&["1", "T", "0", "T^2+1", "1"], 3).unwrap()),
    ]
}

fn criterion_4() -> Verdict {
    let mut tables = 0;
    let mut indices = 0;
    for s in catalog() {
        let x = solve_root(&s, 600).map_err(|e| format!("{}: {e}", s.describe()))?;
        let cf = expand(&x, 500).map_err(|e| e.to_string())?;
        indices += determinant(&convergents(&cf), &s.describe())?;
        tables += 1;
    }
    for (a, c) in [("T", "1"), ("T", "T"), ("T^3+T", "T"), ("T^2+T", "T+1")] {
        let (a, c) = (poly(a), poly(c));
        let mut q = vec![Poly::zero(3)];
        q.extend(w1_quotients(&a, &c, 6).unwrap());
        indices += determinant(&convergents_of(&q), "w1 quotients")?;
        let mut q = vec![Poly::zero(3)];
        q.extend(omega_build(OmegaFamily::E1, &a, &c, 4).unwrap().entries);
        indices += determinant(&convergents_of(&q), "omega")?;
        let beta = beta_convergents_e1(&a, &c, 6).unwrap();
        for (k, w) in beta.pairs.windows(2).enumerate() {
            let det = &(&w[1].0 * &w[0].1) - &(&w[1].1 * &w[0].0);
            let expected = if k % 2 == 0 { Poly::one(3) } else { -&Poly::one(3) };
            if det != expected {
                return Err(format!("β-convergents for A={a} C={c}: determinant {det} at {k}"));
            }
            indices += 1;
        }
        tables += 3;
    }
    Ok(format!("{tables} convergent sequences, {indices} indices, all determinants exact"))
}

fn criterion_5() -> Verdict {
    let omega = omega_build(OmegaFamily::MR, &Poly::t(3), &Poly::one(3), 5).map_err(|e| e.to_string())?;
    let mr = EquationSpec::mr(3);
    let e = engine_expand(&mr, 400, None).map_err(|e| e.to_string())?;
    let prefix_ok = e.cf.tail()[..omega.len()] == omega.entries[..];
    let est = from_degrees(&e.cf.degrees(), 60).map_err(|e| e.to_string())?;
    let bounds = [4usize, 11, 28, 69, 168, 399];
    let sups: Vec<Q> = bounds
        .windows(2)
        .map(|w| window_sups(&est, w[0], w[1] - w[0])[0])
        .collect();
    let decreasing = sups.windows(2).all(|w| w[1] < w[0]);
    let tail = est.estimate_tail();
    check(
        prefix_ok && tail <= Q::new(9, 4) && decreasing,
        format!(
            "prefix of {} matches Ω_5; tail estimate {:.4} from n0 = 60; window sups {:?}",
            omega.len(),
            ratio_to_f64(tail),
            sups.iter().map(|q| format!("{:.4}", ratio_to_f64(*q))).collect::<Vec<_>>()
        ),
    )
}

fn criterion_6() -> Verdict {
    let (a, c) = (Poly::t(3), Poly::t(3));
    let x = solve_root(&spec(Family::E1, "T", "T"), 800).map_err(|e| e.to_string())?;
    let cf = expand(&x, 400).map_err(|e| e.to_string())?;
    let table = convergents(&cf);
    let mut seen = Vec::new();
    for n in 1..=3 {
        let rs = section3_rs_convergents(&a, &c, n).map_err(|e| e.to_string())?;
        for (i, ((r, s), want)) in rs.pairs.iter().zip(rs.next_degrees).enumerate() {
            let k = table.locate(r, s).ok_or(format!("R_{},{n}/S_{},{n} is not a convergent", i + 1, i + 1))?;
            let got = cf.quotients.get(k + 1).ok_or(format!("expansion too short after index {k}"))?.deg();
            if got != want {
                return Err(format!("n={n} i={}: next degree {got}, predicted {want}", i + 1));
            }
            seen.push(got);
        }
    }
    Ok(format!("next-quotient degrees for n = 1..3: {seen:?}"))
}

fn criterion_7() -> Verdict {
    let x = solve_root(&spec(Family::E1, "T", "T"), 2000).map_err(|e| e.to_string())?;
    let cf = expand(&x, 260).map_err(|e| e.to_string())?;
    let r = lambda_bounds_check(&cf.degrees(), 1, 1, 3).map_err(|e| e.to_string())?;
    let all = r.centrals.iter().all(|c| c.lambda1_holds);
    let laws = r.centrals.iter().all(|c| Q::from_integer(c.deg_v) == c.predicted_deg_v);
    let detail = r
        .centrals
        .iter()
        .map(|c| format!("i={} deg a={} deg V={} λ^2={}", c.i, c.degree, c.deg_v, c.lambda_squared))
        .collect::<Vec<_>>()
        .join(", ");
    check(
        all && laws && r.lambda2_exceeds_lambda1 && r.min_lambda2_squared > lambda1_squared(),
        format!("{detail}; minimal λ2 = {:.4} > 2/√3", r.min_lambda2),
    )
}

fn criterion_8() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for (a, c) in [("T", "1"), ("T", "T"), ("T^3+T", "T")] {
        let r = square_relation_check(&poly(a), &poly(c), 5).map_err(|e| e.to_string())?;
        ok &= r.holds() && r.root_squared.matched >= 5 && r.omega_squared.matched >= 5;
        parts.push(format!("({a},{c}) {}+{}", r.root_squared.matched, r.omega_squared.matched));
    }
    check(ok, format!("matched quotients per side: {}", parts.join(", ")))
}

fn criterion_9() -> Verdict {
    let mut holds = 0;
    let mut unmet = 0;
    let mut counter = Vec::new();
    let pairs = [("T", "T"), ("T^2", "T"), ("T^3+T", "T"), ("T^2+T", "T+1"), ("T^3", "T^2"), ("T^2+2", "T+1")];
    for (a, c) in pairs {
        let (a, c) = (poly(a), poly(c));
        for family in [OmegaFamily::E1, OmegaFamily::E2] {
            if family == OmegaFamily::E2 && a.deg() <= c.deg() {
                continue;
            }
            for depth in 1..=3 {
                let o = omega_build(family, &a, &c, depth).map_err(|e| e.to_string())?;
                let r = open_question_check(&o.entries, &(-&c)).map_err(|e| e.to_string())?;
                match r.outcome {
                    OpenQuestionOutcome::ConclusionHolds => holds += 1,
                    OpenQuestionOutcome::HypothesisNotSatisfied => unmet += 1,
                    OpenQuestionOutcome::Counterexample { witness, detail } => {
                        counter.push(format!("{family} A={a} C={c} depth {depth}: {witness} {detail}"))
                    }
                }
            }
        }
    }
    Ok(format!(
        "hypothesis and conclusion {holds}, hypothesis unmet {unmet}, counterexamples {}{}",
        counter.len(),
        if counter.is_empty() { String::new() } else { format!(": {}", counter.join("; ")) }
    ))
}

fn criterion_10() -> Verdict {
    let mut n = 0;
    for s in catalog() {
        let lo = expand(&solve_root(&s, 300).map_err(|e| e.to_string())?, 1000).map_err(|e| e.to_string())?;
        let hi = expand(&solve_root(&s, 600).map_err(|e| e.to_string())?, 1000).map_err(|e| e.to_string())?;
        if hi.quotients.len() < lo.quotients.len() || hi.quotients[..lo.quotients.len()] != lo.quotients[..] {
            return Err(format!("{}: doubling precision changed the prefix", s.describe()));
        }
        n += 1;
    }
    Ok(format!("{n} catalog roots keep their prefix at 2x precision"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("Ω_5 fixture reproduction", criterion_1),
        ("closed-form agreement", criterion_2),
        ("measure reproduction", criterion_3),
        ("determinant invariant", criterion_4),
        ("Mills-Robbins prefix and trend", criterion_5),
        ("next-quotient degree table", criterion_6),
        ("λ bounds", criterion_7),
        ("square relation", criterion_8),
        ("open-question suite", criterion_9),
        ("engine soundness", criterion_10),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        let line = match &verdict {
            Ok(d) => format!("acceptance {:>2} PASS {name} ({secs:.2} s): {d}", i + 1),
            Err(d) => format!("acceptance {:>2} FAIL {name} ({secs:.2} s): {d}", i + 1),
        };
        writeln!(err, "{line}").unwrap();
        if verdict.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
