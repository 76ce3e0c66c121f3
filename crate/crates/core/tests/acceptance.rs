//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use graphprint::fixtures;
use graphprint::graph::{glue_pair, Graph};
use graphprint::oracle::random::{case_rng, edge_switched, relabeled};
use graphprint::oracle::{brute_force_isomorphic, run_suite, SuiteParams};
use graphprint::slabel::{fingerprint_s, node_aggregates, s_equivalent, Mode};
use graphprint::walk::{cospectral, w_equivalent, w_equivalent_all_columns};

type Outcome = Result<String, String>;

fn suites(names: &[&str]) -> Outcome {
    let mut details = Vec::new();
    let mut failed = Vec::new();
    for name in names {
        let r = run_suite(name, &SuiteParams::default()).map_err(|e| e.to_string())?;
        details.push(format!("{name}: {} cases in {:.1}s", r.cases, r.seconds));
        if !r.passed() {
            failed.push(r.to_text());
        }
    }
    if failed.is_empty() {
        Ok(details.join(", "))
    } else {
        Err(failed.join(""))
    }
}

fn check(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn exhaustive() -> Outcome {
    suites(&["exhaustive"])
}

fn srg_pair() -> Outcome {
    let start = Instant::now();
    let (a, b) = (fixtures::shrikhande(), fixtures::rook_4x4());
    let fp = |g: &Graph, k| fingerprint_s(g, k, Mode::Hashed).map_err(|e| e.to_string());
    check(fp(&a, 1)? == fp(&b, 1)?, "s1 fingerprints differ")?;
    check(fp(&a, 2)? != fp(&b, 2)?, "s2 fingerprints coincide")?;
    let iso = brute_force_isomorphic(&a, &b).map_err(|e| e.to_string())?;
    check(!iso.isomorphic, "brute force reports isomorphic")?;
    let t = start.elapsed();
    check(t <= Duration::from_secs(60), "over the 1 min budget")?;
    Ok(format!("{:.2}s", t.as_secs_f64()))
}

fn appendix() -> Outcome {
    let (srg, u, v) = fixtures::appendix_srg();
    let (g1, g2) = glue_pair(&srg, u, v).map_err(|e| e.to_string())?;
    let t = Instant::now();
    check(s_equivalent(&g1, &g2, 2).map_err(|e| e.to_string())?, "glued graphs not s2-equivalent")?;
    let t2 = t.elapsed();
    let t = Instant::now();
    check(!s_equivalent(&g1, &g2, 3).map_err(|e| e.to_string())?, "glued graphs s3-equivalent")?;
    let t3 = t.elapsed();
    let agg = node_aggregates(&[&srg], 2).map_err(|e| e.to_string())?;
    let multiset = |x: usize| {
        let mut m: Vec<usize> = srg.neighbors(x).iter().map(|&i| agg[0][i]).collect();
        m.sort_unstable();
        m
    };
    check(multiset(u) != multiset(v), "neighbor multisets of u and v coincide")?;
    check(t2 <= Duration::from_secs(120), "s2 over the 2 min budget")?;
    check(t3 <= Duration::from_secs(1800), "s3 over the 30 min budget")?;
    Ok(format!("s2 {:.1}s, s3 {:.1}s", t2.as_secs_f64(), t3.as_secs_f64()))
}

fn spectral() -> Outcome {
    let suite = suites(&["spectra"])?;
    let (c6, tt) = (fixtures::cycle(6), fixtures::two_triangles());
    check(!w_equivalent(&c6, &tt), "C6 and 2K3 walk-equivalent")?;
    check(
        cospectral(&c6, &tt),
        "C6 vs 2K3 not cospectral: trace(A^3) is 0 for C6 and 12 for 2K3, spectra {2,1,1,-1,-1,-2} vs {2,2,-1,-1,-1,-1}",
    )?;
    Ok(suite)
}

/// Random simple graph with exactly `m` edges.
fn gnm(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    Graph::from_edges(n, &pairs).expect("valid edges")
}

/// Total time of `w_equivalent` over a relabeled copy and a rewired copy of
/// three random graphs.
fn timed_batch(n: usize, m: usize, seed: u64, f: fn(&Graph, &Graph) -> bool) -> Result<f64, String> {
    let mut total = Duration::ZERO;
    for case in 0..3 {
        let mut rng = case_rng(seed, case);
        let g = gnm(n, m, &mut rng);
        let copy = relabeled(&g, &mut rng);
        let rewired = relabeled(&edge_switched(&g, 5, &mut rng), &mut rng);
        let t = Instant::now();
        let same = f(&g, &copy);
        total += t.elapsed();
        check(same, "relabeled copy not walk-equivalent")?;
        let t = Instant::now();
        let _ = f(&g, &rewired);
        total += t.elapsed();
    }
    Ok(total.as_secs_f64() / 3.0)
}

fn performance() -> Outcome {
    let small = timed_batch(200, 1000, 12, w_equivalent)?;
    let doubled = timed_batch(400, 2000, 12, w_equivalent)?;
    let dense = timed_batch(400, 4000, 12, w_equivalent)?;
    let ratio = doubled / small;
    let info = timed_batch(200, 1000, 12, w_equivalent_all_columns)?;
    let summary = format!(
        "n=200 m=1000 {small:.3}s, n=400 m=2000 {doubled:.3}s (x{ratio:.1}), n=400 m=4000 {dense:.3}s; \
         every column at n=200: {info:.2}s"
    );
    check(small <= 10.0, &format!("over 10 s: {summary}"))?;
    check(ratio <= 15.0, &format!("doubling ratio above 15: {summary}"))?;
    Ok(summary)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let criteria: Vec<Criterion> = vec![
        ("exhaustive identification, n <= 7", exhaustive),
        ("strongly regular pair", srg_pair),
        ("appendix counterexample", appendix),
        ("trees", || suites(&["trees"])),
        ("3-connected planar", || suites(&["planar3"])),
        ("spectral necessity", spectral),
        ("truncation", || suites(&["truncation"])),
        ("hierarchy and monotonicity", || suites(&["hierarchy", "monotonicity"])),
        ("complement", || suites(&["complement"])),
        ("separators and connectivity", || suites(&["separator", "connectivity"])),
        ("determinism and hash soundness", || suites(&["determinism", "exact-hash-agreement"])),
        ("walk equivalence performance", performance),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {}", i + 1, why.trim_end());
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
