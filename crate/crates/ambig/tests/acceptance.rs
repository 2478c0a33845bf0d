//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ambig_core::contverify::matrix::{
    gl2_selfinv_family, gl2_selfinv_positive_det, inversion_differential_check, inversion_differential_deviation,
};
use ambig_core::contverify::registry::{existence_registry, query, Verdict};
use ambig_core::contverify::{sample_rng, Construction, SamplePlan};
use ambig_core::ecurve::CurveSpec;
use ambig_core::finfield::{is_prime, prime_power, FieldSpec};
use ambig_core::groups::{catalog, small_catalog, GroupHandle};
use ambig_core::iafun::{brute_force_exists, construct, decide_existence, scalar_witness, verify};
use rand::Rng;

type Outcome = Result<String, String>;

fn ambig(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ambig"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}", out.status.code()));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

struct Row {
    q: u64,
    roots: u64,
    nq: u64,
    exists: bool,
}

fn parse_scan(csv: &str) -> Result<Vec<Row>, String> {
    let mut lines = csv.lines();
    if lines.next() != Some("q,a,b,total,roots,nq,exists") {
        return Err("unexpected header".into());
    }
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let num = |i: usize| f.get(i).and_then(|s| s.parse::<u64>().ok()).ok_or(format!("bad row {l:?}"));
            Ok(Row {
                q: num(0)?,
                roots: num(4)?,
                nq: num(5)?,
                exists: f.get(6) == Some(&"true"),
            })
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let groups = small_catalog();
    for g in &groups {
        let brute = brute_force_exists(g).map_err(|e| format!("{g}: {e}"))?;
        if brute != decide_existence(g).exists {
            return Err(format!("{g}: brute force says {brute}"));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(60) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{} groups agree in {t:.2?}", groups.len()))
}

fn constructive_completeness() -> Outcome {
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    for g in catalog(2000) {
        if !decide_existence(&g).exists {
            continue;
        }
        let start = Instant::now();
        let f = construct(&g).ok_or(format!("{g}: no witness"))?;
        let report = verify(&g, &f.indices()).map_err(|e| format!("{g}: {e}"))?;
        if !report.passed {
            return Err(format!("{g}: {:?} fails at {:?}", report.failed_law, report.counterexample));
        }
        let t = start.elapsed();
        if t > Duration::from_secs(10) {
            return Err(format!("{g}: took {t:?}"));
        }
        slowest = slowest.max(t);
        checked += 1;
    }
    Ok(format!("{checked} groups verified, slowest {slowest:.2?}"))
}

fn scan_x3_minus_x() -> Outcome {
    let rows = parse_scan(&ambig(&["curve-scan", "--a", "-1", "--b", "0", "--qmin", "5", "--qmax", "361"])?)?;
    let expected: Vec<u64> = (5..=361)
        .filter(|&q| prime_power(q).is_some_and(|(p, _)| p >= 5))
        .collect();
    let got: Vec<u64> = rows.iter().map(|r| r.q).collect();
    if got != expected {
        return Err(format!("rows for {got:?}"));
    }
    if let Some(r) = rows.iter().find(|r| !r.exists || r.roots != 3) {
        return Err(format!("q = {}: exists {}, roots {}", r.q, r.exists, r.roots));
    }
    Ok(format!("{} orders, all exist with 3 roots", rows.len()))
}

fn scan_x3_plus_x() -> Outcome {
    let qs = [5u64, 7, 11, 13, 17, 19, 23, 25, 29, 49, 121, 343];
    let list = qs.map(|q| q.to_string()).join(",");
    let rows = parse_scan(&ambig(&["curve-scan", "--a", "1", "--b", "0", "--q", &list])?)?;
    if rows.len() != qs.len() {
        return Err(format!("{} rows", rows.len()));
    }
    let absent: BTreeSet<u64> = rows.iter().filter(|r| !r.exists).map(|r| r.q).collect();
    if absent != BTreeSet::from([7, 11, 19, 23, 343]) {
        return Err(format!("exists=false for {absent:?}"));
    }
    for r in rows.iter().filter(|r| !r.exists) {
        if r.nq % 2 == 0 || r.nq != (r.q - 1) / 2 {
            return Err(format!("q = {}: nq = {}", r.q, r.nq));
        }
    }
    Ok(format!("exists=false for {absent:?}, nq = (q-1)/2 there"))
}

fn random_curves() -> Outcome {
    let primes: Vec<u64> = (5..=97).filter(|&p| is_prime(p)).collect();
    let mut rng = sample_rng(20_240_601, 0);
    let (mut curves, mut three_roots) = (0, 0);
    while curves < 200 {
        let p = primes[rng.random_range(0..primes.len())];
        let (a, b) = (rng.random_range(0..p as i64), rng.random_range(0..p as i64));
        let field = FieldSpec::prime(p).map_err(|e| e.to_string())?;
        let Ok(c) = CurveSpec::from_integers(field, a, b) else { continue };
        curves += 1;
        let census = c.census();
        if census.roots_of_g != 3 {
            continue;
        }
        three_roots += 1;
        if !c.decide_existence().exists || census.self_inv != 4 || census.total % 4 != 0 {
            return Err(format!("{c}: {census:?}"));
        }
    }
    Ok(format!("{curves} curves, {three_roots} with three roots"))
}

fn vector_spaces() -> Outcome {
    let (mut decided, mut witnessed) = (0, 0);
    for q in 2..=49u64 {
        let Some((p, k)) = prime_power(q) else { continue };
        let field = FieldSpec::new(p, k).map_err(|e| e.to_string())?;
        for n in 1..=4u32 {
            let v = GroupHandle::vector_space(field.clone(), n).map_err(|e| e.to_string())?;
            let closed_form = q % 2 == 0 || q % 4 == 1 || n % 2 == 0;
            if decide_existence(&v).exists != closed_form {
                return Err(format!("{v}: decide disagrees with the closed form"));
            }
            decided += 1;
            if q % 4 == 1 || (p == 2 && q.pow(n) <= 10_000) {
                let f = scalar_witness(&v).map_err(|e| format!("{v}: {e}"))?;
                let report = verify(&v, &f.indices()).map_err(|e| format!("{v}: {e}"))?;
                if !report.passed {
                    return Err(format!("{v}: scalar map fails {:?}", report.failed_law));
                }
                witnessed += 1;
            }
        }
    }
    Ok(format!("{decided} spaces decided, {witnessed} scalar witnesses verified"))
}

const NINE: [&str; 9] = [
    "torus2",
    "torus-even",
    "lattice",
    "circle-z2",
    "r2n-linear",
    "sphere",
    "matrix-complex",
    "trace0-real",
    "gl-pingpong",
];

fn continuous_suite() -> Outcome {
    let start = Instant::now();
    for name in NINE {
        let c = Construction::from_name(name, None, None).map_err(|e| e.to_string())?;
        let plan = SamplePlan::new(10_000, 42, c.default_tol()).map_err(|e| e.to_string())?;
        let r = c.run(&plan).map_err(|e| format!("{name}: {e}"))?;
        if !r.square_law.passed || !r.fourth_power.passed {
            return Err(format!(
                "{name}: square law {:e}, fourth power {:e} (tol {:e})",
                r.square_law.max_error, r.fourth_power.max_error, plan.tol
            ));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(30) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("9 constructions x 10^4 samples in {t:.2?}"))
}

fn gl2_census() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for i in 0..100 {
        let a = -2.0 + 4.0 * i as f64 / 99.0;
        for j in 0..100 {
            let b = -2.0 + 4.0 * (j as f64 + 0.5) / 100.0;
            let m = gl2_selfinv_family(a, b).map_err(|e| e.to_string())?;
            let m2 = m * m;
            let sq = [(0, 0, 1.0), (0, 1, 0.0), (1, 0, 0.0), (1, 1, 1.0)]
                .iter()
                .map(|&(r, c, id)| (m2[(r, c)] - id).powi(2))
                .sum::<f64>()
                .sqrt();
            let det = (m.determinant() + 1.0).abs();
            worst = (worst.0.max(sq), worst.1.max(det));
        }
    }
    if worst.0 > 1e-12 || worst.1 > 1e-12 {
        return Err(format!("|A^2 - I| up to {:e}, |det + 1| up to {:e}", worst.0, worst.1));
    }
    let mut found = gl2_selfinv_positive_det().ok_or("solver reported a free branch")?;
    found.sort();
    if found != [[[-1, 0], [0, -1]], [[1, 0], [0, 1]]] {
        return Err(format!("solver returned {found:?}"));
    }
    Ok(format!("10^4 members, worst {:e} / {:e}; det>0 gives +-I", worst.0, worst.1))
}

fn inversion_differential() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=4 {
        let r = inversion_differential_check(n, 1e-6).map_err(|e| e.to_string())?;
        if !r.passed || r.max_error > 1e-5 {
            return Err(format!("n = {n}: deviation {:e}", r.max_error));
        }
        let (coarse, _) = inversion_differential_deviation(n, 1e-3).map_err(|e| e.to_string())?;
        let ratio = coarse / r.max_error;
        if !(1000.0 / 3.0..=3000.0).contains(&ratio) {
            return Err(format!("n = {n}: ratio {ratio:.1}"));
        }
        notes.push(format!("{ratio:.0}"));
    }
    Ok(format!("ratios {}", notes.join(", ")))
}

fn registry() -> Outcome {
    let entries = existence_registry();
    if let Some(e) = entries.iter().find(|e| e.anchor.trim().is_empty()) {
        return Err(format!("{} has no anchor", e.id));
    }
    for (q, want) in [
        ("SO(2)", Verdict::No),
        ("S³", Verdict::No),
        ("SL_4(R)", Verdict::No),
        ("T³", Verdict::No),
        ("T⁴", Verdict::Yes),
        ("E over C", Verdict::Yes),
    ] {
        let a = query(q).map_err(|e| format!("{q}: {e}"))?;
        if a.verdict != want || a.entry.anchor.is_empty() {
            return Err(format!("{q}: {:?} from {}", a.verdict, a.entry.id));
        }
    }
    Ok(format!("{} anchored entries, six queries match", entries.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("constructive completeness", constructive_completeness),
        ("curve-scan y^2 = x^3 - x", scan_x3_minus_x),
        ("curve-scan y^2 = x^3 + x", scan_x3_plus_x),
        ("random curves with three roots", random_curves),
        ("vector spaces", vector_spaces),
        ("continuous-map suite", continuous_suite),
        ("gl2 square roots of I", gl2_census),
        ("inversion differential", inversion_differential),
        ("registry", registry),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS {:>2} {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
