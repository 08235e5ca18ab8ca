use rowmotion::decompose::{decompose as decompose_q_free, q_decompose};
use rowmotion::dynamics::{
    antichain_rowmotion, ideal_orbits, permutation_orbits, Action, RankPermutation,
};
use rowmotion::lifted::{
    b_orbit, certificate_residual, lift_statistic, pl_orbit, random_b_point, random_pl_point,
    random_positive, seeded_rng, PowerProduct,
};
use rowmotion::parse::{parse_family, parse_q_expr, parse_statistic};
use rowmotion::qrow::{enumerate_labelings, q_homomesy_check, q_orbits, FlavorAlphabet};
use rowmotion::scalar::{format_rational, int, parse_rational};
use rowmotion::statistics::homomesy_check;
use rowmotion::{ElementSet, Field, IdealLattice, Poset, Rational};
use serde_json::{json, Value};

use crate::output::Report;
use crate::Failure;

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn lattice(family: &str, cap: usize) -> Result<IdealLattice, Failure> {
    Ok(IdealLattice::with_cap(parse_family(family)?, cap)?)
}

fn labels(p: &Poset, s: ElementSet) -> String {
    let v: Vec<String> = s.iter().map(|x| p.label(x)).collect();
    format!("{{{}}}", v.join(" "))
}

pub fn action(p: &Poset, spec: &str) -> Result<Action, Failure> {
    match spec.split_once(':') {
        None if spec == "rowmotion" => Ok(Action::Rowmotion),
        None if spec == "gyration" => Ok(Action::gyration(p)?),
        Some(("sigma", ranks)) => {
            let r: Vec<u32> = ranks
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| usage(format!("bad rank {x:?}")))
                })
                .collect::<Result<_, _>>()?;
            Ok(Action::Sigma(RankPermutation::new(p, r)?))
        }
        _ => Err(usage(format!("unknown action {spec:?}"))),
    }
}

pub fn alphabet(r: usize, s: usize, theta: &str) -> Result<FlavorAlphabet, Failure> {
    let a = match theta.split_once(':') {
        None if theta == "default" => FlavorAlphabet::new(r, s)?,
        Some(("random", seed)) => {
            let seed: u64 = seed
                .parse()
                .map_err(|_| usage(format!("bad seed {seed:?}")))?;
            FlavorAlphabet::random(r, s, &mut seeded_rng(seed))?
        }
        Some(("custom", images)) => {
            let t: Vec<u8> = images
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| usage(format!("bad flavor {x:?}")))
                })
                .collect::<Result<_, _>>()?;
            FlavorAlphabet::with_theta(r, s, t)?
        }
        _ => return Err(usage(format!("unknown theta {theta:?}"))),
    };
    Ok(a)
}

pub fn orbits(
    family: &str,
    variant: &str,
    theta: &str,
    stat: Option<&str>,
    cap: usize,
) -> Result<Report, Failure> {
    let lat = lattice(family, cap)?;
    let p = lat.poset();
    let f = stat
        .map(|e| parse_statistic(p, e).map(|c| c.evaluate(&lat, e)))
        .transpose()?;
    // orbit index lists plus a printable state for each index
    let (orbits, show, states): (Vec<Vec<usize>>, Box<dyn Fn(usize) -> String>, usize) =
        match variant.split_once(':') {
            Some(("q", rs)) => {
                let (r, s) = rs
                    .split_once(',')
                    .ok_or_else(|| usage("q variant needs q:<r>,<s>"))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("bad integer {x:?}")))
                };
                let al = alphabet(parse(r)?, parse(s)?, theta)?;
                let space = enumerate_labelings(&lat, &al, cap)?;
                let o = q_orbits(p, &al, &space)?;
                let n = space.len();
                (o, Box::new(move |k| format!("{:?}", space[k].labels())), n)
            }
            None if variant == "antichain" => {
                let perm = lat.permutation(|i| {
                    p.ideal_generated_by(antichain_rowmotion(p, p.maximal_elements(i)))
                })?;
                let ideals = lat.ideals().to_vec();
                let pp = p.clone();
                (
                    permutation_orbits(&perm),
                    Box::new(move |k| labels(&pp, pp.maximal_elements(ideals[k]).set())),
                    lat.len(),
                )
            }
            _ => {
                let a = action(p, variant)?;
                let ideals = lat.ideals().to_vec();
                let pp = p.clone();
                (
                    ideal_orbits(&lat, &a)?,
                    Box::new(move |k| labels(&pp, ideals[k].set())),
                    lat.len(),
                )
            }
        };
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let covered = sizes.iter().sum::<usize>() == states;
    let report = match (&f, variant.starts_with("q:")) {
        (Some(_), true) => {
            return Err(usage(
                "use the qrow command for statistics under q-rowmotion",
            ))
        }
        (Some(f), false) => Some(homomesy_check(f, &orbits)),
        _ => None,
    };
    let mut text = format!(
        "{} states, {} orbits, sizes {:?}\n",
        states,
        sizes.len(),
        sizes
    );
    let mut rows = Vec::new();
    for (k, o) in orbits.iter().enumerate() {
        let avg = report
            .as_ref()
            .map(|r| format_rational(&r.per_orbit_averages[k]))
            .unwrap_or_default();
        rows.push(vec![k.to_string(), o.len().to_string(), show(o[0]), avg]);
    }
    if let Some(r) = &report {
        text += &format!(
            "homomesic: {} (global average {})\n",
            r.is_homomesic, r.global_average
        );
    }
    Ok(Report {
        kind: "orbits",
        body: json!({
            "family": family,
            "variant": variant,
            "states": states,
            "orbit_sizes": sizes,
            "representatives": orbits.iter().map(|o| show(o[0])).collect::<Vec<_>>(),
            "partition_check": covered,
            "homomesy": report.map(|r| r.to_json()),
        }),
        header: vec!["orbit", "size", "representative", "average"],
        rows,
        text,
        ok: covered,
    })
}

pub fn decompose(family: &str, expr: &str, q: bool, cap: usize) -> Result<Report, Failure> {
    let lat = lattice(family, cap)?;
    let p = lat.poset();
    let f = parse_statistic(p, expr)?.evaluate(&lat, expr);
    // (certificate, human-readable constant, table rows)
    let (cert, constant, rows): (Option<Value>, Option<String>, Vec<Vec<String>>) = if q {
        match q_decompose(&lat, &f)? {
            Some(d) => {
                let mut rows = vec![vec!["constant".to_string(), d.constant.to_string()]];
                rows.extend(
                    d.coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, c)| vec![p.label(k), c.to_string()]),
                );
                (Some(d.certificate(p)), Some(d.constant.to_string()), rows)
            }
            None => (None, None, vec![]),
        }
    } else {
        match decompose_q_free(&lat, &f)? {
            Some(d) => {
                let mut rows = vec![vec!["constant".to_string(), format_rational(&d.constant)]];
                rows.extend(
                    d.coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, c)| vec![p.label(k), format_rational(c)]),
                );
                (Some(d.certificate(p)), Some(d.constant.to_string()), rows)
            }
            None => (None, None, vec![]),
        }
    };
    let summary = match &constant {
        Some(c) if q => format!("c(q) = {c}"),
        Some(c) => format!("c = {c}"),
        None => "NOT IN SPAN".to_string(),
    };
    Ok(Report {
        kind: "decompose",
        body: json!({
            "family": family,
            "statistic": expr,
            "field": if q { "Q(q)" } else { "Q" },
            "in_span": cert.is_some(),
            "summary": summary,
            "certificate": cert,
        }),
        header: vec!["term", "coefficient"],
        rows,
        text: summary,
        ok: true,
    })
}

pub fn qrow(
    family: &str,
    r: usize,
    s: usize,
    theta: &str,
    expr: &str,
    expect: Option<&str>,
    cap: usize,
) -> Result<Report, Failure> {
    let lat = lattice(family, cap)?;
    let al = alphabet(r, s, theta)?;
    let f = parse_statistic(lat.poset(), expr)?.evaluate(&lat, expr);
    let expected = expect.map(parse_q_expr).transpose()?;
    let rep = q_homomesy_check(&lat, &al, &f, expected.as_ref(), cap)?;
    if expected.is_some() && rep.expected.is_none() {
        return Err(usage(format!(
            "expected value has a pole at q = {}",
            al.q()
        )));
    }
    let rows = rep
        .orbit_sizes
        .iter()
        .zip(&rep.per_orbit_averages)
        .enumerate()
        .map(|(k, (n, a))| vec![k.to_string(), n.to_string(), format_rational(a)])
        .collect();
    let mut text = format!(
        "{} labelings, {} orbits; homomesic: {} (average {})",
        rep.labelings,
        rep.orbit_sizes.len(),
        rep.is_homomesic,
        rep.global_average
    );
    if let (Some(e), Some(m)) = (&rep.expected, rep.matches_expected) {
        text += &format!("; expected {e}: {}", if m { "match" } else { "MISMATCH" });
    }
    let mut body = rep.to_json();
    if let Value::Object(m) = &mut body {
        m.insert("family".into(), json!(family));
        m.insert("statistic".into(), json!(expr));
        m.insert("theta".into(), json!(al.theta()));
    }
    Ok(Report {
        kind: "qrow",
        ok: rep.matches_expected.unwrap_or(true),
        body,
        header: vec!["orbit", "size", "average"],
        rows,
        text,
    })
}

#[allow(clippy::too_many_arguments)]
pub struct LiftArgs<'a> {
    pub seed: u64,
    pub points: usize,
    pub pl: bool,
    pub b: bool,
    pub action: &'a str,
    /// Fixed bounds; drawn per point when absent.
    pub alpha: Option<&'a str>,
    pub omega: Option<&'a str>,
}

fn positive_bound(text: Option<&str>) -> Result<Option<Rational>, Failure> {
    let Some(t) = text else { return Ok(None) };
    let x = parse_rational(t).map_err(|e| usage(e.to_string()))?;
    if x <= int(0) {
        return Err(usage(format!("bound {t:?} must be positive")));
    }
    Ok(Some(x))
}

pub fn lift(family: &str, expr: &str, args: &LiftArgs, cap: usize) -> Result<Report, Failure> {
    let LiftArgs {
        seed,
        points,
        pl,
        b,
        action: action_spec,
        ..
    } = *args;
    let (fixed_alpha, fixed_omega) = (positive_bound(args.alpha)?, positive_bound(args.omega)?);
    let lat = lattice(family, cap)?;
    let p = lat.poset();
    let comb = parse_statistic(p, expr)?;
    if !p.has_at_most_two_covers() {
        return Err(usage("lifting needs every element to cover at most two elements and be covered by at most two"));
    }
    let Some(d) = decompose_q_free(&lat, &comb.evaluate(&lat, expr))? else {
        return Ok(Report {
            kind: "lift",
            body: json!({ "family": family, "statistic": expr, "in_span": false }),
            header: vec!["check", "passed"],
            rows: vec![],
            text: "NOT IN SPAN".into(),
            ok: false,
        });
    };
    let act = action(p, action_spec)?;
    let residual = certificate_residual(&comb, &d);
    let g = lift_statistic(p, &residual)?;
    let c = d.constant.clone();
    let mut rng = seeded_rng(seed);
    let (mut pl_bad, mut b_bad, mut pl_orbit_ok, mut b_orbit_ok, mut inconclusive) =
        (0, 0, 0, 0, 0);
    for k in 0..points {
        let alpha = fixed_alpha
            .clone()
            .unwrap_or_else(|| random_positive(&mut rng));
        let omega = fixed_omega
            .clone()
            .unwrap_or_else(|| random_positive(&mut rng));
        // orbit laws on the first few points only; orbits of generic points can be long
        let orbit_check = k < 5;
        if pl {
            let pt = random_pl_point(p.len(), alpha.clone(), omega.clone(), &mut rng);
            if g.eval_pl(p, &pt) != &c * (&omega - &alpha) {
                pl_bad += 1;
            }
            if orbit_check {
                match pl_orbit(p, &act, &pt, 1000)? {
                    Some(o) => {
                        let sum: Rational = o.iter().map(|x| g.eval_pl(p, x)).sum();
                        pl_orbit_ok +=
                            (sum == int(o.len() as i64) * &c * (&omega - &alpha)) as usize;
                    }
                    None => inconclusive += 1,
                }
            }
        }
        if b {
            let pt = random_b_point(p.len(), alpha.clone(), omega.clone(), &mut rng)?;
            if !g
                .eval_b(p, &pt)
                .same_value(&PowerProduct::power(&omega / &alpha, c.clone()))
            {
                b_bad += 1;
            }
            if orbit_check {
                match b_orbit(p, &act, &pt, 1000)? {
                    Some(o) => {
                        let mut prod = PowerProduct::one();
                        o.iter().for_each(|x| prod.mul(&g.eval_b(p, x)));
                        b_orbit_ok += prod.same_value(&PowerProduct::power(
                            &omega / &alpha,
                            int(o.len() as i64) * &c,
                        )) as usize;
                    }
                    None => inconclusive += 1,
                }
            }
        }
    }
    let orbits_run = points.min(5) * (pl as usize + b as usize);
    let ok = pl_bad == 0 && b_bad == 0 && pl_orbit_ok + b_orbit_ok + inconclusive == orbits_run;
    let text = format!(
        "c = {c}; constant at {points} points: PL {} B {}; orbit laws held {pl_orbit_ok} (PL) {b_orbit_ok} (B), {inconclusive} inconclusive",
        if pl { if pl_bad == 0 { "yes" } else { "NO" } } else { "-" },
        if b { if b_bad == 0 { "yes" } else { "NO" } } else { "-" },
    );
    Ok(Report {
        kind: "lift",
        body: json!({
            "family": family,
            "statistic": expr,
            "in_span": true,
            "constant": c.to_json(),
            "seed": seed,
            "points": points,
            "pl_failures": if pl { Some(pl_bad) } else { None },
            "b_failures": if b { Some(b_bad) } else { None },
            "pl_orbit_laws_held": pl_orbit_ok,
            "b_orbit_laws_held": b_orbit_ok,
            "orbits_inconclusive": inconclusive,
        }),
        header: vec!["level", "failures", "orbit_laws_held"],
        rows: vec![
            vec!["pl".into(), pl_bad.to_string(), pl_orbit_ok.to_string()],
            vec!["b".into(), b_bad.to_string(), b_orbit_ok.to_string()],
        ],
        text,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rowmotion::families::rectangle;

    #[test]
    fn action_specs() {
        let p = rectangle(2, 2).unwrap();
        assert!(matches!(action(&p, "rowmotion"), Ok(Action::Rowmotion)));
        assert!(matches!(action(&p, "sigma:2,1,0"), Ok(Action::Sigma(_))));
        assert!(action(&p, "gyration").is_ok());
        assert!(matches!(action(&p, "sigma:0,x"), Err(Failure::Usage(_))));
        assert!(matches!(action(&p, "promotion"), Err(Failure::Usage(_))));
    }

    #[test]
    fn theta_specs() {
        assert!(alphabet(1, 2, "default").is_ok());
        assert!(alphabet(2, 2, "random:5").is_ok());
        assert!(alphabet(1, 2, "random:five").is_err());
        assert!(alphabet(1, 1, "custom:1,0").is_ok());
        assert!(alphabet(1, 1, "custom:0,1").is_err());
        assert!(alphabet(1, 1, "cyclic").is_err());
    }

    #[test]
    fn bounds_must_be_positive() {
        assert_eq!(positive_bound(None).ok().flatten(), None);
        assert_eq!(
            positive_bound(Some("3/4")).ok().flatten(),
            Some(rowmotion::scalar::rat(3, 4))
        );
        assert!(positive_bound(Some("0")).is_err());
        assert!(positive_bound(Some("-1/2")).is_err());
        assert!(positive_bound(Some("half")).is_err());
    }

    #[test]
    fn decompose_reports_constant_or_absence() {
        let r = decompose("rect:2,3", "antichain_card", false, 1000)
            .ok()
            .unwrap();
        assert!(r.ok);
        assert_eq!(r.text, "c = 6/5");
        let r = decompose("rootD:4", "antichain_card", false, 1000)
            .ok()
            .unwrap();
        assert_eq!(r.text, "NOT IN SPAN");
        assert!(matches!(
            decompose("rect:3,3", "antichain_card", false, 5),
            Err(Failure::Cap(_))
        ));
    }
}
