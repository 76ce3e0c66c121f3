//! Verification suites. Each suite checks one guarantee of the invariants
//! against an independent oracle on fixtures or seeded random inputs, and
//! reports every failing case with enough data to replay it.

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::format::{serialize_graph, Format};
use crate::graph::{complement, diameter, glue_pair, is_k_connected, separator_members, srg_parameters, Graph};
use crate::slabel::{
    equivalent_exact, exact_classes, fingerprint, node_aggregates, refine, s_equivalent, tuple_label, AnchorTuple,
    Family, HashVersion, Interner, Iterations, LabelMode, Method, Mode,
};
use crate::walk::{
    canonical_w_label, closed_walk_counts, cospectral, node_walk_rank, sorted_prefix_rows, w_equivalent,
    w_equivalent_all_columns, w_equivalent_by_labels, walk_matrix, walk_matrix_extended, Truncation,
};

use super::enumerate::{enumerate_graphs, find_class, KNOWN_CLASS_COUNTS};
use super::iso::brute_force_isomorphic;
use super::random::{case_rng, random_connected, random_pair, random_tree, relabeled};
use super::tree::tree_canonical;

/// Every suite name, in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "trees",
    "srg-s1",
    "complement",
    "separator",
    "connectivity",
    "spectra",
    "walks",
    "truncation",
    "hierarchy",
    "monotonicity",
    "stabilization",
    "planar3",
    "glue",
    "figure1",
    "remark-neighbors",
    "exact-hash-agreement",
    "exhaustive",
    "determinism",
];

/// Knobs shared by all suites. `None` picks the suite's default.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    /// Number of random cases.
    pub cases: Option<usize>,
    /// Largest node count for exhaustive enumeration.
    pub max_n: Option<usize>,
    /// Digest version checked by `exact-hash-agreement`.
    pub version: HashVersion,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: 0x5eed_0001,
            cases: None,
            max_n: None,
            version: HashVersion::V1,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteFailure {
    pub case: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<SuiteFailure>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

#[derive(Serialize)]
struct Summary<'a> {
    name: &'a str,
    passed: bool,
    cases: usize,
    failures: usize,
    seed: u64,
    seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Line-oriented report: a header line, then one line per failure and note.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} cases={} failures={} seed={} time={:.2}s\n",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.failures.len(),
            self.seed,
            self.seconds
        );
        for f in &self.failures {
            out.push_str(&format!("  failure case={} {}\n", f.case, f.detail));
        }
        for n in &self.notes {
            out.push_str(&format!("  note {n}\n"));
        }
        out
    }

    /// Machine-readable one-object summary.
    pub fn summary_json(&self) -> String {
        serde_json::to_string(&Summary {
            name: &self.name,
            passed: self.passed(),
            cases: self.cases,
            failures: self.failures.len(),
            seed: self.seed,
            seconds: self.seconds,
        })
        .expect("summary serializes")
    }
}

type CaseResult = Result<Option<String>>;

fn fail(msg: String) -> CaseResult {
    Ok(Some(msg))
}

fn s6(g: &Graph) -> String {
    String::from_utf8(serialize_graph(g, Format::Sparse6).expect("sparse6 takes every graph")).expect("ascii")
}

fn pair_detail(a: &Graph, b: &Graph) -> String {
    format!("g1={} g2={}", s6(a), s6(b))
}

/// Runs `count` independent cases in parallel; failures come back ordered
/// by case index.
fn run_cases<F>(count: usize, seed: u64, f: F) -> Vec<SuiteFailure>
where
    F: Fn(usize, &mut ChaCha8Rng) -> CaseResult + Sync,
{
    let results: Vec<Option<SuiteFailure>> = (0..count)
        .into_par_iter()
        .map(|case| {
            let mut rng = case_rng(seed, case as u64);
            match f(case, &mut rng) {
                Ok(None) => None,
                Ok(Some(detail)) => Some(SuiteFailure { case, detail }),
                Err(e) => Some(SuiteFailure {
                    case,
                    detail: format!("error: {e}"),
                }),
            }
        })
        .collect();
    results.into_iter().flatten().collect()
}

/// Collects the outcome of a single fixed check as case 0.
fn single(f: impl FnOnce(&mut Vec<String>) -> Result<Vec<String>>, notes: &mut Vec<String>) -> Vec<SuiteFailure> {
    match f(notes) {
        Ok(problems) => problems.into_iter().map(|detail| SuiteFailure { case: 0, detail }).collect(),
        Err(e) => vec![SuiteFailure {
            case: 0,
            detail: format!("error: {e}"),
        }],
    }
}

/// Runs the named suite.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let seed = params.seed;
    let cases = |default: usize| params.cases.unwrap_or(default);
    let mut notes = Vec::new();
    let (count, failures) = match name {
        "trees" => {
            let c = cases(1000);
            (c, run_cases(c, seed, trees_case))
        }
        "srg-s1" => (1, single(srg_s1, &mut notes)),
        "complement" => {
            let c = cases(500);
            (c, run_cases(c, seed, complement_case))
        }
        "separator" => {
            let c = cases(200);
            (c, run_cases(c, seed, separator_case))
        }
        "connectivity" => {
            let c = cases(200);
            let mut f = run_cases(c, seed, connectivity_case);
            f.extend(single(connectivity_catalog, &mut notes).into_iter().map(|x| SuiteFailure { case: c, ..x }));
            (c + 1, f)
        }
        "spectra" => {
            let c = cases(500);
            let mut f = single(spectra_fixed, &mut notes);
            f.extend(run_cases(c, seed, spectra_case).into_iter().map(|x| SuiteFailure { case: x.case + 1, ..x }));
            (c + 1, f)
        }
        "walks" => {
            let c = cases(500);
            (c, run_cases(c, seed, walks_case))
        }
        "truncation" => {
            let c = cases(500);
            let mut f = single(truncation_tightness, &mut notes);
            f.extend(run_cases(c, seed, truncation_case).into_iter().map(|x| SuiteFailure { case: x.case + 1, ..x }));
            (c + 1, f)
        }
        "hierarchy" => {
            let c = cases(500);
            (c, run_cases(c, seed, hierarchy_case))
        }
        "monotonicity" => {
            let c = cases(500);
            (c, run_cases(c, seed, monotonicity_case))
        }
        "stabilization" => {
            let c = cases(1000);
            (c, run_cases(c, seed, stabilization_case))
        }
        "planar3" => (1, single(planar3, &mut notes)),
        "glue" => (1, single(glue, &mut notes)),
        "figure1" => (1, single(figure1, &mut notes)),
        "remark-neighbors" => (1, single(remark_neighbors, &mut notes)),
        "exact-hash-agreement" => {
            let c = cases(10_000);
            let version = params.version;
            let collisions = std::sync::Mutex::new(Vec::new());
            let f = run_cases(c, seed, |case, rng| agreement_case(case, rng, version, &collisions));
            let mut resolved = collisions.into_inner().expect("no poisoned lock");
            resolved.sort();
            notes.push(format!("hash version {version}, 64-bit collisions resolved by wide digest: {}", resolved.len()));
            notes.extend(resolved);
            (c, f)
        }
        "exhaustive" => {
            let max_n = params.max_n.unwrap_or(7);
            (max_n, single(|notes| exhaustive(max_n, seed, notes), &mut notes))
        }
        "determinism" => {
            let c = cases(50);
            (c, single(|_| determinism(c, seed), &mut notes))
        }
        _ => return Err(Error::InvalidArgument(format!("unknown suite {name:?}"))),
    };
    Ok(SuiteReport {
        name: name.to_string(),
        seed,
        cases: count,
        failures,
        notes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn trees_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(2..=16);
    let a = random_tree(n, rng);
    let b = if rng.gen_bool(0.5) {
        relabeled(&a, rng)
    } else {
        random_tree(n, rng)
    };
    let same_shape = tree_canonical(&a)? == tree_canonical(&b)?;
    let s1 = s_equivalent(&a, &b, 1)?;
    let bf = brute_force_isomorphic(&a, &b)?.isomorphic;
    if s1 != same_shape || bf != same_shape {
        return fail(format!(
            "s1={s1} canonical={same_shape} brute-force={bf} {}",
            pair_detail(&a, &b)
        ));
    }
    Ok(None)
}

fn srg_s1(_: &mut Vec<String>) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let a = fixtures::shrikhande();
    let b = fixtures::rook_4x4();
    let (pa, pb) = (srg_parameters(&a), srg_parameters(&b));
    if pa.is_none() || pa != pb {
        problems.push(format!("parameters differ: {pa:?} vs {pb:?}"));
    }
    if brute_force_isomorphic(&a, &b)?.isomorphic {
        problems.push("shrikhande and rook graph reported isomorphic".into());
    }
    if !s_equivalent(&a, &b, 1)? {
        problems.push("s1 separates the strongly regular pair".into());
    }
    if s_equivalent(&a, &b, 2)? {
        problems.push("s2 fails to separate the strongly regular pair".into());
    }
    let mut interner = Interner::new(1);
    let label = |g: &Graph, i: usize, it: &mut Interner| tuple_label(g, &AnchorTuple::new(vec![i])?, LabelMode::Exact(it));
    let reference = label(&a, 0, &mut interner)?;
    for i in 0..16 {
        for (name, g) in [("shrikhande", &a), ("rook", &b)] {
            if label(g, i, &mut interner)? != reference {
                problems.push(format!("anchored label of {name} node {i} differs"));
            }
        }
    }
    Ok(problems)
}

fn complement_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(2, 8, rng);
    let (ca, cb) = (complement(&a), complement(&b));
    for k in [1, 2] {
        if k > a.n() {
            continue;
        }
        let plain = s_equivalent(&a, &b, k)?;
        let comp = s_equivalent(&ca, &cb, k)?;
        if plain != comp {
            return fail(format!("k={k} plain={plain} complemented={comp} {}", pair_detail(&a, &b)));
        }
    }
    Ok(None)
}

fn separator_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(3, 8, rng);
    for k in [2, 3] {
        let agg = node_aggregates(&[&a, &b], k)?;
        let members = [separator_members(&a, k - 1), separator_members(&b, k - 1)];
        let nodes: Vec<(usize, usize)> = (0..a.n()).map(|i| (0, i)).chain((0..b.n()).map(|i| (1, i))).collect();
        for &(x, i) in &nodes {
            for &(y, j) in &nodes {
                if agg[x][i] == agg[y][j] && members[x].contains(&i) != members[y].contains(&j) {
                    return fail(format!(
                        "k={k} node {i} of g{} and node {j} of g{} share aggregates but not separator membership {}",
                        x + 1,
                        y + 1,
                        pair_detail(&a, &b)
                    ));
                }
            }
        }
    }
    Ok(None)
}

fn connectivity_check(a: &Graph, b: &Graph, k: usize) -> Result<Option<String>> {
    if a.n() != b.n() || k > a.n() || is_k_connected(a, k) == is_k_connected(b, k) {
        return Ok(None);
    }
    if s_equivalent(a, b, k)? {
        return Ok(Some(format!(
            "k={k} only one graph is k-connected yet they are s-equivalent {}",
            pair_detail(a, b)
        )));
    }
    Ok(None)
}

fn connectivity_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(3, 8, rng);
    for k in [2, 3] {
        if let Some(msg) = connectivity_check(&a, &b, k)? {
            return fail(msg);
        }
    }
    Ok(None)
}

fn connectivity_catalog(notes: &mut Vec<String>) -> Result<Vec<String>> {
    let catalog: Vec<fixtures::Fixture> = fixtures::catalog()
        .into_iter()
        .filter(|f| !f.graph.has_loops() && f.graph.n() <= 20)
        .collect();
    let mut problems = Vec::new();
    let mut checked = 0;
    for (x, f) in catalog.iter().enumerate() {
        for g in &catalog[x + 1..] {
            for k in [2, 3] {
                if f.graph.n() == g.graph.n() && k <= f.graph.n() {
                    checked += 1;
                }
                if let Some(msg) = connectivity_check(&f.graph, &g.graph, k)? {
                    problems.push(format!("{} vs {}: {msg}", f.name, g.name));
                }
            }
        }
    }
    notes.push(format!("catalog pairs checked: {checked}"));
    Ok(problems)
}

fn spectra_fixed(notes: &mut Vec<String>) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let c6 = fixtures::cycle(6);
    let tt = fixtures::two_triangles();
    if w_equivalent(&c6, &tt) {
        problems.push("C6 and 2K3 reported walk-equivalent".into());
    }
    notes.push(format!("C6 vs 2K3 cospectral (exact traces): {}", cospectral(&c6, &tt)));
    let star = fixtures::star(4);
    let c4k1 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)])?;
    if !cospectral(&star, &c4k1) || w_equivalent(&star, &c4k1) {
        problems.push("K1,4 vs C4+K1 should be cospectral and not walk-equivalent".into());
    }
    Ok(problems)
}

fn spectra_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(2, 10, rng);
    let w = w_equivalent(&a, &b);
    let by_labels = w_equivalent_by_labels(&a, &b, Truncation::NPlus1)?;
    let all = w_equivalent_all_columns(&a, &b);
    if w != by_labels || w != all {
        return fail(format!("walk equivalence routes disagree: {w} {by_labels} {all} {}", pair_detail(&a, &b)));
    }
    if !cospectral(&a, &b) && w {
        return fail(format!("non-cospectral pair reported walk-equivalent {}", pair_detail(&a, &b)));
    }
    Ok(None)
}

fn walks_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(2..=12);
    let g = random_connected(n, rng);
    let max_rank = (0..n).map(|i| node_walk_rank(&g, i)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0);
    let diam = diameter(&g).expect("connected");
    if max_rank < diam + 1 {
        return fail(format!("max walk rank {max_rank} below diameter + 1 = {} g={}", diam + 1, s6(&g)));
    }
    let h = relabeled(&g, rng);
    if !w_equivalent(&g, &h) {
        return fail(format!("relabeled copy not walk-equivalent {}", pair_detail(&g, &h)));
    }
    let (a, b) = random_pair(2, 8, rng);
    let n = a.n();
    let label = |g: &Graph, i: usize| canonical_w_label(g, i, Truncation::NPlus1);
    let mut ext = Vec::new();
    for (g, i) in (0..n).map(|i| (&a, i)).chain((0..n).map(|i| (&b, i))) {
        let m = walk_matrix_extended(g, i, n + 5)?;
        ext.push((label(g, i)?, sorted_prefix_rows(&m, n + 1), sorted_prefix_rows(&m, n + 5), closed_walk_counts(g, i)?));
    }
    for x in &ext {
        for y in &ext {
            if (x.1 == y.1) != (x.2 == y.2) {
                return fail(format!("n+1 and n+5 columns disagree {}", pair_detail(&a, &b)));
            }
            if x.0 == y.0 && x.3 != y.3 {
                return fail(format!("equal walk labels with different closed walk counts {}", pair_detail(&a, &b)));
            }
        }
    }
    Ok(None)
}

fn truncation_tightness(_: &mut Vec<String>) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for n in 3..=8 {
        let a = walk_matrix(&fixtures::path(n), 0, n + 1)?;
        let b = walk_matrix(&fixtures::path_with_loop(n), 0, n + 1)?;
        if sorted_prefix_rows(&a, n) != sorted_prefix_rows(&b, n) {
            problems.push(format!("n={n}: endpoint labels differ within n columns"));
        }
        if sorted_prefix_rows(&a, n + 1) == sorted_prefix_rows(&b, n + 1) {
            problems.push(format!("n={n}: endpoint labels agree on n+1 columns"));
        }
    }
    Ok(problems)
}

fn truncation_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(2, 10, rng);
    let labels = |t: Truncation| -> Result<Vec<_>> {
        (0..a.n())
            .map(|i| canonical_w_label(&a, i, t))
            .chain((0..b.n()).map(|i| canonical_w_label(&b, i, t)))
            .collect()
    };
    let full = labels(Truncation::NPlus1)?;
    let ranked = labels(Truncation::RankBased)?;
    for x in 0..full.len() {
        for y in 0..full.len() {
            if full[x].matches(&full[y])? != ranked[x].matches(&ranked[y])? {
                return fail(format!("rank-based and n+1 truncation disagree on nodes {x}, {y} {}", pair_detail(&a, &b)));
            }
        }
    }
    Ok(None)
}

/// Pairs have at least three nodes: below `k + 2` nodes no `(k+1)`-tuple
/// avoids the focal node, `t^(k+1)` folds only empty multisets and carries
/// no information.
fn hierarchy_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(3, 8, rng);
    let eq = |family: Family, k: usize| -> Result<Option<bool>> {
        if k > a.n() {
            return Ok(None);
        }
        equivalent_exact(&a, &b, family, k).map(Some)
    };
    for k in [0, 1] {
        let (s_k, s_k1) = (eq(Family::S, k)?, eq(Family::S, k + 1)?);
        let (t_k, t_k1) = (eq(Family::T, k)?, eq(Family::T, k + 1)?);
        if s_k1 == Some(true) && t_k == Some(false) {
            return fail(format!("k={k}: s^(k+1) equal but t^k different {}", pair_detail(&a, &b)));
        }
        if t_k1 == Some(true) && s_k == Some(false) {
            return fail(format!("k={k}: t^(k+1) equal but s^k different {}", pair_detail(&a, &b)));
        }
    }
    Ok(None)
}

fn monotonicity_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(2, 8, rng);
    for k in 0..=2 {
        if k + 1 > a.n() {
            break;
        }
        let here = equivalent_exact(&a, &b, Family::S, k)?;
        let next = equivalent_exact(&a, &b, Family::S, k + 1)?;
        if !here && next {
            return fail(format!("k={k}: s^k different but s^(k+1) equal {}", pair_detail(&a, &b)));
        }
    }
    Ok(None)
}

fn stabilization_case(_: usize, rng: &mut ChaCha8Rng) -> CaseResult {
    let (a, b) = random_pair(2, 8, rng);
    let k = rng.gen_range(0..=2.min(a.n()));
    let full = exact_classes(&[&a, &b], Family::S, k, Iterations::Full)?;
    let stable = exact_classes(&[&a, &b], Family::S, k, Iterations::Stable)?;
    let m = Method::new(Family::S, k, Mode::Hashed);
    let ms = Method {
        iters: Iterations::Stable,
        ..m
    };
    let hashed_full = fingerprint(&a, &m, false)?.digest == fingerprint(&b, &m, false)?.digest;
    let hashed_stable = fingerprint(&a, &ms, false)?.digest == fingerprint(&b, &ms, false)?.digest;
    let verdicts = [full[0] == full[1], stable[0] == stable[1], hashed_full, hashed_stable];
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return fail(format!("k={k}: full/stable verdicts {verdicts:?} {}", pair_detail(&a, &b)));
    }
    Ok(None)
}

fn planar3(notes: &mut Vec<String>) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let poly = fixtures::polyhedra();
    for (x, f) in poly.iter().enumerate() {
        let [a, b, c] = f.face.expect("planar fixtures carry a face");
        let g = &f.graph;
        let cols = refine(g, &AnchorTuple::new(vec![a, b, c])?, g.n() + 1, &mut Interner::new(3))?;
        let last = cols.last().expect("nonempty");
        if last.class_count() != g.n() {
            problems.push(format!("{}: face-anchored labels not pairwise distinct", f.name));
        }
        for h in &poly[x..] {
            let s3 = g.n() == h.graph.n() && s_equivalent(g, &h.graph, 3)?;
            let iso = brute_force_isomorphic(g, &h.graph)?.isomorphic;
            if s3 != iso {
                problems.push(format!("{} vs {}: s3={s3} isomorphic={iso}", f.name, h.name));
            }
        }
    }
    notes.push(format!("polyhedra: {}", poly.len()));
    Ok(problems)
}

fn glue(notes: &mut Vec<String>) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let (srg, u, v) = fixtures::appendix_srg();
    let (g1, g2) = glue_pair(&srg, u, v)?;
    for (name, g) in [("G1", &g1), ("G2", &g2)] {
        let merged = [u, v].iter().all(|&m| g.degree(m) == 35);
        let others = (0..g.n()).filter(|&i| i != u && i != v).all(|i| g.degree(i) == 18);
        if g.n() != 68 || !merged || !others {
            problems.push(format!("{name}: unexpected size or degrees"));
        }
    }
    let t = Instant::now();
    if !s_equivalent(&g1, &g2, 2)? {
        problems.push("glued graphs are not s2-equivalent".into());
    }
    notes.push(format!("s2 comparison {:.2}s", t.elapsed().as_secs_f64()));
    let t = Instant::now();
    if s_equivalent(&g1, &g2, 3)? {
        problems.push("glued graphs are s3-equivalent".into());
    }
    notes.push(format!("s3 comparison {:.2}s", t.elapsed().as_secs_f64()));
    Ok(problems)
}

fn figure1(_: &mut Vec<String>) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let g = fixtures::figure1();
    for t in [Truncation::NPlus1, Truncation::RankBased] {
        if !canonical_w_label(&g, 0, t)?.matches(&canonical_w_label(&g, 4, t)?)? {
            problems.push(format!("walk labels of v1 and v5 differ under {t:?}"));
        }
    }
    let mut it = Interner::new(1);
    let a = tuple_label(&g, &AnchorTuple::new(vec![0])?, LabelMode::Exact(&mut it))?;
    let b = tuple_label(&g, &AnchorTuple::new(vec![4])?, LabelMode::Exact(&mut it))?;
    if a == b {
        problems.push("anchored labels of v1 and v5 agree".into());
    }
    Ok(problems)
}

fn remark_neighbors(notes: &mut Vec<String>) -> Result<Vec<String>> {
    let (g, u, v) = fixtures::appendix_srg();
    let agg = node_aggregates(&[&g], 2)?;
    let multiset = |x: usize| {
        let mut m: Vec<usize> = g.neighbors(x).iter().map(|&i| agg[0][i]).collect();
        m.sort_unstable();
        m
    };
    notes.push(format!("marked nodes u={u} v={v} (0-based)"));
    if multiset(u) == multiset(v) {
        return Ok(vec!["neighbor s2 multisets of u and v coincide".into()]);
    }
    Ok(Vec::new())
}

fn agreement_case(_: usize, rng: &mut ChaCha8Rng, version: HashVersion, collisions: &std::sync::Mutex<Vec<String>>) -> CaseResult {
    let (a, b) = random_pair(2, 8, rng);
    let family = if rng.gen_bool(0.5) { Family::S } else { Family::T };
    let k = rng.gen_range(0..=2.min(a.n()));
    let exact = equivalent_exact(&a, &b, family, k)?;
    let m = Method {
        version,
        ..Method::new(family, k, Mode::Hashed)
    };
    let (fa, fb) = (fingerprint(&a, &m, false)?, fingerprint(&b, &m, false)?);
    let narrow = fa.digest == fb.digest;
    if narrow == exact {
        return Ok(None);
    }
    if narrow && !exact {
        let (wa, wb) = (fingerprint(&a, &m, true)?, fingerprint(&b, &m, true)?);
        if wa.wide != wb.wide {
            log::warn!("64-bit collision under {m} resolved by wide digest");
            collisions.lock().expect("no poisoned lock").push(format!("collision {m} {}", pair_detail(&a, &b)));
            return Ok(None);
        }
    }
    fail(format!("{m}: exact={exact} digests-equal={narrow} {}", pair_detail(&a, &b)))
}

fn exhaustive(max_n: usize, seed: u64, notes: &mut Vec<String>) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mut rng = case_rng(seed, u64::MAX);
    for n in 1..=max_n {
        let reps = enumerate_graphs(n)?;
        let expected = KNOWN_CLASS_COUNTS.get(n).copied().unwrap_or(0);
        if reps.len() != expected {
            problems.push(format!("n={n}: {} classes, expected {expected}", reps.len()));
        }
        for g in &reps {
            if find_class(&reps, &complement(g))?.is_none() {
                problems.push(format!("n={n}: complement of {} missing", s6(g)));
            }
        }
        let copies: Vec<Graph> = reps.iter().map(|g| relabeled(g, &mut rng)).collect();
        let all: Vec<&Graph> = reps.iter().chain(copies.iter()).collect();
        let mut ks = vec![2.min(n)];
        if n <= 5 {
            ks.push(n);
        }
        for k in ks {
            let classes = exact_classes(&all, Family::S, k, Iterations::Full)?;
            let (orig, copy) = classes.split_at(reps.len());
            let mut distinct = orig.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != reps.len() {
                problems.push(format!("n={n} k={k}: {} s-classes for {} isomorphism classes", distinct.len(), reps.len()));
            }
            if orig != copy {
                problems.push(format!("n={n} k={k}: relabeled copy lands in another class"));
            }
        }
        notes.push(format!("n={n}: {} classes", reps.len()));
    }
    Ok(problems)
}

fn determinism(count: usize, seed: u64) -> Result<Vec<String>> {
    let mut graphs: Vec<Graph> = fixtures::catalog().into_iter().map(|f| f.graph).filter(|g| g.n() <= 20).collect();
    let mut rng = case_rng(seed, u64::MAX - 1);
    for _ in 0..count {
        let n = rng.gen_range(2..=9);
        graphs.push(super::random::random_graph(n, &mut rng));
    }
    let methods: Vec<Method> = [(Family::S, 1), (Family::S, 2), (Family::T, 1)]
        .into_iter()
        .map(|(f, k)| Method::new(f, k, Mode::Hashed))
        .collect();
    let lines = |threads: usize| -> Result<Vec<String>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| {
            graphs
                .par_iter()
                .flat_map(|g| methods.par_iter().map(move |m| fingerprint(g, m, true).map(|f| f.to_line())))
                .collect()
        })
    };
    let mut problems = Vec::new();
    let (one, eight, again) = (lines(1)?, lines(8)?, lines(8)?);
    if one != eight || eight != again {
        problems.push("fingerprint lines depend on the schedule".into());
    }
    let refs: Vec<&Graph> = graphs.iter().collect();
    if exact_classes(&refs, Family::S, 1, Iterations::Full)? != exact_classes(&refs, Family::S, 1, Iterations::Full)? {
        problems.push("exact classes differ between runs".into());
    }
    Ok(problems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(name: &str) -> SuiteReport {
        let params = SuiteParams {
            cases: Some(20),
            max_n: Some(4),
            ..SuiteParams::default()
        };
        run_suite(name, &params).unwrap()
    }

    #[test]
    fn light_suites_pass() {
        for name in [
            "trees", "srg-s1", "complement", "separator", "connectivity", "spectra", "walks", "truncation", "hierarchy",
            "monotonicity", "stabilization", "planar3", "figure1", "remark-neighbors", "exact-hash-agreement",
            "exhaustive", "determinism",
        ] {
            let r = quick(name);
            assert!(r.passed(), "{}", r.to_text());
        }
        assert!(run_suite("nope", &SuiteParams::default()).is_err());
    }

    #[test]
    fn report_formats() {
        let r = quick("figure1");
        assert!(r.to_text().starts_with("suite figure1: PASS cases=1 failures=0"));
        let v: serde_json::Value = serde_json::from_str(&r.summary_json()).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["name"], "figure1");
    }
}
