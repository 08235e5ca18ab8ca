use clap::ValueEnum;
use itertools::Itertools;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use rowmotion::decompose::{antichain_span_dim, decompose, toggleability_space_dims, SpaceDims};
use rowmotion::dynamics::{ideal_orbits, Action, RankPermutation};
use rowmotion::families::*;
use rowmotion::lifted::{
    certificate_residual, lift_statistic, random_b_point, random_pl_point, random_positive,
    seeded_rng, PowerProduct,
};
use rowmotion::poset::Family;
use rowmotion::qrow::{q_homomesy_check, FlavorAlphabet};
use rowmotion::statistics::{
    antichain_toggleability, half_rook, homomesy_check, named_statistic, rook_a, rook_b, rook_rect,
    rook_sstair, t_q, t_signed, var_rook_b, StatKind, ToggleCombination, ToggleKind,
};
use rowmotion::{Error, IdealLattice, Poset, Rational};
use serde_json::json;

use crate::output::Report;
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Striker,
    Rooks,
    Halfrook,
    Lifting,
    Qstriker,
    Spans,
    Table2,
}

pub struct Bounds {
    pub max_cells: usize,
    pub max: usize,
    pub seed: Option<u64>,
    pub points: usize,
    pub cap: usize,
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, failure: Option<String>) -> Check {
    Check {
        name: name.into(),
        passed: failure.is_none(),
        detail: failure.unwrap_or_default(),
    }
}

type Job = Box<dyn Fn() -> Result<Vec<Check>, Error> + Send + Sync>;

fn name(p: &Poset) -> String {
    p.name().unwrap_or("poset").to_string()
}

fn grow(make: impl Fn(usize) -> rowmotion::Result<Poset>, max_cells: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for n in 1..=64 {
        match make(n) {
            Ok(p) if p.len() > max_cells => break,
            Ok(p) => out.push(p),
            Err(_) => continue,
        }
    }
    out
}

fn rectangles(max_cells: usize) -> Vec<Poset> {
    (1..=max_cells)
        .flat_map(|a| (a..=max_cells / a).map(move |b| (a, b)))
        .filter_map(|(a, b)| rectangle(a, b).ok())
        .collect()
}

/// Every family the library builds, cut off at `max_cells` elements.
fn all_posets(max_cells: usize) -> Vec<Poset> {
    let mut ps = rectangles(max_cells);
    ps.extend(grow(shifted_staircase, max_cells));
    ps.extend(grow(root_poset_a, max_cells));
    ps.extend(grow(root_poset_b, max_cells));
    ps.extend(grow(double_tailed_diamond, max_cells));
    ps.extend(grow(chain_of_vs, max_cells));
    ps.extend(
        [minuscule_e6(), minuscule_e7()]
            .into_iter()
            .filter(|p| p.len() <= max_cells),
    );
    ps.extend(
        [root_poset_d(4), trapezoid(2, 3), trapezoid(2, 4)]
            .into_iter()
            .flatten()
            .filter(|p| p.len() <= max_cells),
    );
    ps
}

fn need_seed(b: &Bounds, suite: Suite) -> Result<u64, Failure> {
    b.seed
        .ok_or_else(|| Failure::Usage(format!("suite {suite:?} samples at random; pass --seed")))
}

fn rank_count(p: &Poset) -> Option<usize> {
    p.max_rank().map(|r| r as usize + 1)
}

fn sigma_actions(p: &Poset, seed: Option<u64>) -> rowmotion::Result<Vec<(String, Action)>> {
    let mut out = vec![("rowmotion".to_string(), Action::Rowmotion)];
    let Some(k) = rank_count(p) else {
        return Ok(out);
    };
    let perms: Vec<Vec<u32>> = if k <= 4 {
        (0..k as u32).permutations(k).collect()
    } else {
        let mut rng = seeded_rng(seed.expect("seed checked before building jobs"));
        (0..5)
            .map(|_| {
                let mut v: Vec<u32> = (0..k as u32).collect();
                v.shuffle(&mut rng);
                v
            })
            .collect()
    };
    for s in perms {
        out.push((
            format!("sigma:{}", s.iter().join(",")),
            Action::Sigma(RankPermutation::new(p, s)?),
        ));
    }
    Ok(out)
}

fn striker_jobs(b: &Bounds) -> Result<Vec<Job>, Failure> {
    let posets = all_posets(b.max_cells);
    let seed = if posets.iter().any(|p| rank_count(p).is_some_and(|k| k > 4)) {
        Some(need_seed(b, Suite::Striker)?)
    } else {
        None
    };
    let cap = b.cap;
    Ok(posets
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            let seed = seed.map(|s| s.wrapping_add(k as u64));
            Box::new(move || {
                let lat = IdealLattice::with_cap(p.clone(), cap)?;
                let p = lat.poset();
                let mut out = Vec::new();
                for (label, a) in sigma_actions(p, seed)? {
                    let orbits = ideal_orbits(&lat, &a)?;
                    let bad = (0..p.len()).find_map(|x| {
                        let r = homomesy_check(&t_signed(&lat, x), &orbits);
                        r.per_orbit_averages
                            .iter()
                            .position(|v| !v.is_zero())
                            .map(|o| {
                                format!(
                                    "T_{} averages {} on orbit {o}",
                                    p.label(x),
                                    r.per_orbit_averages[o]
                                )
                            })
                    });
                    out.push(check(
                        format!("{} {label}: orbit sums of T_p vanish", name(p)),
                        bad,
                    ));
                }
                if lat.len() <= 100 {
                    let orbits = ideal_orbits(&lat, &Action::Rowmotion)?;
                    let bad = lat.ideals().iter().find_map(|&i| {
                        let a = p.maximal_elements(i);
                        let r = homomesy_check(
                            &antichain_toggleability(&lat, a, ToggleKind::Signed),
                            &orbits,
                        );
                        (!r.is_homomesic || !r.global_average.is_zero())
                            .then(|| format!("T_A for A = {:?} is not 0-mesic", a.set()))
                    });
                    out.push(check(format!("{}: orbit sums of T_A vanish", name(p)), bad));
                }
                Ok(out)
            }) as Job
        })
        .collect())
}

fn constant_one(lat: &IdealLattice, c: &ToggleCombination) -> Option<String> {
    let p = lat.poset();
    lat.ideals()
        .iter()
        .find(|&&i| !c.eval(p, i).is_one())
        .map(|&i| format!("value {} on ideal {:?}", c.eval(p, i), i.set()))
}

fn reduced_is_one(lat: &IdealLattice, c: &ToggleCombination) -> rowmotion::Result<Option<String>> {
    Ok(match decompose(lat, &c.evaluate(lat, "reduced rook"))? {
        Some(d) if d.constant.is_one() => None,
        Some(d) => Some(format!("reduced rook ≡ {}", d.constant)),
        None => Some("reduced rook is not in the span".into()),
    })
}

type Rook = fn(&Poset, i32, i32, bool) -> rowmotion::Result<ToggleCombination>;

fn rook_jobs(b: &Bounds) -> Vec<Job> {
    let mut posets = rectangles(b.max_cells);
    for make in [shifted_staircase, root_poset_a, root_poset_b] {
        posets.extend(grow(make, b.max_cells));
    }
    let cap = b.cap;
    posets
        .into_iter()
        .map(|p| {
            Box::new(move || {
                let lat = IdealLattice::with_cap(p.clone(), cap)?;
                let p = lat.poset();
                let mut rooks: Vec<(
                    String,
                    Box<dyn Fn(bool) -> rowmotion::Result<ToggleCombination>>,
                )> = Vec::new();
                match *p.family() {
                    Family::Rectangle { .. } | Family::ShiftedStaircase { .. } => {
                        let f: Rook = if matches!(p.family(), Family::Rectangle { .. }) {
                            rook_rect
                        } else {
                            rook_sstair
                        };
                        for &(i, j) in p.coords().unwrap_or_default() {
                            rooks.push((
                                format!("R({i},{j})"),
                                Box::new(move |red| f(p, i, j, red)),
                            ));
                        }
                    }
                    Family::RootA { n } => {
                        for i in 1..=n as i32 {
                            rooks.push((format!("R_{i}"), Box::new(move |red| rook_a(p, i, red))));
                        }
                    }
                    Family::RootB { n } => {
                        for i in 1..=n as i32 {
                            rooks.push((format!("R_{i}"), Box::new(move |red| rook_b(p, i, red))));
                            rooks.push((
                                format!("R'_{i}"),
                                Box::new(move |red| var_rook_b(p, i, red)),
                            ));
                        }
                    }
                    _ => {}
                }
                let mut out = Vec::new();
                let mut full = None;
                let mut reduced = None;
                for (label, make) in &rooks {
                    if full.is_none() {
                        full = constant_one(&lat, &make(false)?).map(|d| format!("{label}: {d}"));
                    }
                    if reduced.is_none() {
                        reduced =
                            reduced_is_one(&lat, &make(true)?)?.map(|d| format!("{label}: {d}"));
                    }
                }
                out.push(check(
                    format!("{}: {} rooks equal 1", name(p), rooks.len()),
                    full,
                ));
                out.push(check(
                    format!("{}: {} reduced rooks are ≡ 1", name(p), rooks.len()),
                    reduced,
                ));
                Ok(out)
            }) as Job
        })
        .collect()
}

fn halfrook_jobs(b: &Bounds) -> Vec<Job> {
    let mut posets = rectangles(b.max_cells);
    posets.extend(grow(root_poset_a, b.max_cells));
    let cap = b.cap;
    posets
        .into_iter()
        .map(|p| {
            Box::new(move || {
                let lat = IdealLattice::with_cap(p.clone(), cap)?;
                let p = lat.poset();
                let mut bad = None;
                for (x, &(i, j)) in p.coords().unwrap_or_default().iter().enumerate() {
                    let h = half_rook(p, i, j)?;
                    if let Some(&id) = lat.ideals().iter().find(|&&id| {
                        h.eval(p, id) != Rational::from_integer((id.contains(x) as i64).into())
                    }) {
                        bad = Some(format!(
                            "half rook at ({i},{j}) differs from 1_p on {:?}",
                            id.set()
                        ));
                        break;
                    }
                }
                Ok(vec![check(
                    format!("{}: half rooks equal the indicators", name(p)),
                    bad,
                )])
            }) as Job
        })
        .collect()
}

fn lifting_jobs(b: &Bounds) -> Result<Vec<Job>, Failure> {
    let seed = need_seed(b, Suite::Lifting)?;
    let mut posets = rectangles(b.max_cells);
    for make in [
        shifted_staircase,
        root_poset_a,
        root_poset_b,
        double_tailed_diamond,
    ] {
        posets.extend(grow(make, b.max_cells));
    }
    posets.extend(
        [minuscule_e6(), minuscule_e7()]
            .into_iter()
            .filter(|p| p.len() <= b.max_cells),
    );
    let (cap, points) = (b.cap, b.points);
    Ok(posets
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            Box::new(move || {
                let lat = IdealLattice::with_cap(p.clone(), cap)?;
                let p = lat.poset();
                let mut rng = seeded_rng(seed.wrapping_add(k as u64));
                let mut out = Vec::new();
                for kind in [StatKind::AntichainCard, StatKind::IdealCard] {
                    let f = named_statistic(p, &kind)?;
                    let Some(d) = decompose(&lat, &f.evaluate(&lat, kind.to_string()))? else {
                        continue;
                    };
                    let g = lift_statistic(p, &certificate_residual(&f, &d))?;
                    let mut bad = None;
                    for _ in 0..points {
                        let (a, w) = (random_positive(&mut rng), random_positive(&mut rng));
                        let pl = random_pl_point(p.len(), a.clone(), w.clone(), &mut rng);
                        let bp = random_b_point(p.len(), a.clone(), w.clone(), &mut rng)?;
                        if g.eval_pl(p, &pl) != &d.constant * (&w - &a) {
                            bad =
                                Some(format!("PL value {} at {:?}", g.eval_pl(p, &pl), pl.values));
                        } else if !g
                            .eval_b(p, &bp)
                            .same_value(&PowerProduct::power(&w / &a, d.constant.clone()))
                        {
                            bad = Some(format!("birational value differs at {:?}", bp.values()));
                        }
                        if bad.is_some() {
                            break;
                        }
                    }
                    out.push(check(
                        format!("{}: lifted {kind} is constant ({} points)", name(p), points),
                        bad,
                    ));
                }
                Ok(out)
            }) as Job
        })
        .collect())
}

fn qstriker_jobs(b: &Bounds) -> Result<Vec<Job>, Failure> {
    let seed = need_seed(b, Suite::Qstriker)?;
    let posets: Vec<Poset> = [root_poset_a(2), rectangle(2, 2), shifted_staircase(3)]
        .into_iter()
        .flatten()
        .filter(|p| p.len() <= b.max_cells)
        .collect();
    let cap = b.cap;
    let mut jobs: Vec<Job> = Vec::new();
    for (k, p) in posets.into_iter().enumerate() {
        for (r, s) in [(1, 1), (1, 2), (2, 1), (2, 3), (3, 3)] {
            let p = p.clone();
            let job_seed = seed.wrapping_add((k * 100 + r * 10 + s) as u64);
            jobs.push(Box::new(move || {
                let lat = IdealLattice::with_cap(p.clone(), cap)?;
                let mut rng = seeded_rng(job_seed);
                let mut out = Vec::new();
                for _ in 0..3 {
                    let al = FlavorAlphabet::random(r, s, &mut rng)?;
                    let mut bad = None;
                    for x in 0..lat.poset().len() {
                        let f = t_q(&lat, x)
                            .specialize(&al.q())
                            .expect("polynomial statistics have no poles");
                        let rep = q_homomesy_check(&lat, &al, &f, None, cap)?;
                        if !rep.is_homomesic || !rep.global_average.is_zero() {
                            bad = Some(format!(
                                "T^q at {} has orbit averages {:?}",
                                lat.poset().label(x),
                                rep.per_orbit_averages
                            ));
                            break;
                        }
                    }
                    out.push(check(
                        format!(
                            "{} r={r} s={s} θ={:?}: T^q_p is 0-mesic",
                            name(lat.poset()),
                            al.theta()
                        ),
                        bad,
                    ));
                }
                Ok(out)
            }));
        }
    }
    Ok(jobs)
}

fn span_jobs(b: &Bounds) -> Vec<Job> {
    let cap = b.cap;
    all_posets(b.max_cells)
        .into_iter()
        .map(|p| {
            Box::new(move || {
                let lat = IdealLattice::with_cap(p.clone(), cap)?;
                if lat.len() > 200 {
                    return Ok(vec![]);
                }
                let orbits = ideal_orbits(&lat, &Action::Rowmotion)?.len();
                let dim = antichain_span_dim(&lat, 200)?;
                let want = lat.len() - orbits;
                let bad = (dim != want).then(|| format!("span dimension {dim}, expected {want}"));
                Ok(vec![check(
                    format!(
                        "{}: dim span T_A = #A(P) − #orbits = {want}",
                        name(lat.poset())
                    ),
                    bad,
                )])
            }) as Job
        })
        .collect()
}

/// Conjectured toggleability-space dimensions for the family.
fn dimension_table(f: &Family) -> Option<SpaceDims> {
    let (dim_a, dim_i, dim_a_q, dim_i_q) = match *f {
        Family::Rectangle { a, b } => (a + b - 1, a + b - 1, a + b - 1, 2),
        Family::ShiftedStaircase { n } => (2 * n - 1, 2 * n - 1, n + 1, 2),
        Family::RootA { n } => (n, n, 1, 0),
        Family::RootB { n } => (2 * n - 1, 2 * n - 1, 2, 1),
        _ => return None,
    };
    Some(SpaceDims {
        dim_a,
        dim_i,
        dim_a_q,
        dim_i_q,
    })
}

fn table2_jobs(b: &Bounds) -> Vec<Job> {
    let m = b.max;
    let mut posets: Vec<Poset> = (1..=m)
        .flat_map(|a| (a..=m).filter_map(move |c| rectangle(a, c).ok()))
        .collect();
    for n in 1..=m {
        posets.extend(
            [shifted_staircase(n), root_poset_a(n), root_poset_b(n)]
                .into_iter()
                .flatten(),
        );
    }
    let cap = b.cap;
    posets
        .into_iter()
        .map(|p| {
            Box::new(move || {
                let want = dimension_table(p.family()).expect("table families only");
                let lat = IdealLattice::with_cap(p.clone(), cap)?;
                let got = toggleability_space_dims(&lat);
                let mut bad = Vec::new();
                if (got.dim_a, got.dim_i) != (want.dim_a, want.dim_i) {
                    bad.push(format!(
                        "classical dims ({}, {}), expected ({}, {})",
                        got.dim_a, got.dim_i, want.dim_a, want.dim_i
                    ));
                }
                if got.dim_a_q != want.dim_a_q {
                    bad.push(format!(
                        "q antichain dim {}, expected {}",
                        got.dim_a_q, want.dim_a_q
                    ));
                }
                if got.dim_i_q != want.dim_i_q {
                    bad.push(format!(
                        "q ideal dim {}, expected {}",
                        got.dim_i_q, want.dim_i_q
                    ));
                }
                let label = format!(
                    "{}: dims ({}, {}, {}, {})",
                    name(&p),
                    got.dim_a,
                    got.dim_i,
                    got.dim_a_q,
                    got.dim_i_q
                );
                Ok(vec![check(
                    label,
                    (!bad.is_empty()).then(|| bad.join("; ")),
                )])
            }) as Job
        })
        .collect()
}

pub fn run(suite: Suite, b: &Bounds, jobs: usize) -> Result<Report, Failure> {
    let work = match suite {
        Suite::Striker => striker_jobs(b)?,
        Suite::Rooks => rook_jobs(b),
        Suite::Halfrook => halfrook_jobs(b),
        Suite::Lifting => lifting_jobs(b)?,
        Suite::Qstriker => qstriker_jobs(b)?,
        Suite::Spans => span_jobs(b),
        Suite::Table2 => table2_jobs(b),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let results: Vec<Result<Vec<Check>, Error>> =
        pool.install(|| work.par_iter().map(|j| j()).collect());
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let suite_name = format!("{suite:?}").to_lowercase();
    let mut text = String::new();
    for c in &checks {
        text += &format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if !c.passed {
            text += &format!(": {}", c.detail);
        }
        text.push('\n');
    }
    text += &format!("{suite_name}: {} checks, {failed} failed\n", checks.len());
    Ok(Report {
        kind: "verify",
        body: json!({
            "suite": suite_name,
            "passed": failed == 0,
            "total": checks.len(),
            "failed": failed,
            "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
        }),
        header: vec!["check", "passed", "detail"],
        rows: checks
            .iter()
            .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
            .collect(),
        text,
        ok: failed == 0,
    })
}
