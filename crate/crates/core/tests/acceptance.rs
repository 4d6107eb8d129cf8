//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use seplab::algebra::{discriminant_in_n, resultant, IntPoly, Integer};
use seplab::families::{gen_l, gen_r, Family, RangePolicy};
use seplab::irreducible::{certify_irreducible, rational_root_test, Verdict};
use seplab::report::{check_bound, render_csv, run_sweep, BoundStatus, NGrid, SweepConfig};
use seplab::roots::{
    cluster_offset, cluster_product, conjugate_pair_scaling, disc_crosscheck, mahler_sanity, measure, RootOptions,
    SepReport,
};
use seplab::verify::{
    verify_bracket, verify_eq2, verify_leading_coeffs, verify_low_order, verify_q_congruence, verify_r_structure,
    verify_xn_expansion, Canonical,
};

type Outcome = Result<String, String>;

fn int(v: u64) -> Integer {
    Integer::from(v)
}

fn instance(family: Family, n: u64) -> IntPoly {
    family.build(RangePolicy::STRICT).expect("family in range").instantiate(&int(n))
}

fn big_p(d: usize) -> Family {
    Family::ReducibleP(d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn measured(p: &IntPoly, opts: &RootOptions) -> Result<SepReport, String> {
    measure(p, opts).map_err(|e| e.to_string())
}

/// Polynomials generated by criteria 3 to 7, collected for the Mahler check.
#[derive(Default)]
struct Generated(Vec<(String, IntPoly)>);

impl Generated {
    fn add(&mut self, label: String, p: &IntPoly) {
        self.0.push((label, p.clone()));
    }
}

fn identities() -> Outcome {
    let clock = Instant::now();
    let src = Canonical;
    let reports = [
        verify_eq2(&src, 12),
        verify_q_congruence(&src, 12),
        verify_leading_coeffs(&src, 12),
        verify_low_order(&src, 12),
        verify_r_structure(&src, 25),
        verify_xn_expansion(&src, 12),
    ];
    let elapsed = clock.elapsed();
    for r in &reports {
        ensure(r.pass, || format!("{} failed: {}", r.id, r.witness.clone().unwrap_or_default()))?;
    }
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    Ok(format!("6 verifiers, {checked} instances, {:.2}s", elapsed.as_secs_f64()))
}

fn discriminant_spot() -> Outcome {
    let r4 = gen_r(4).map_err(|e| e.to_string())?;
    let disc = discriminant_in_n(&r4).map_err(|e| e.to_string())?;
    let mut coeffs = vec![Integer::zero(); 8];
    coeffs[7] = -int(4);
    let expected = IntPoly::from_coeffs(coeffs);
    ensure(disc == expected, || format!("got {disc}"))?;
    Ok(format!("B^2-4AC = {disc}"))
}

const GRID: [u64; 3] = [100, 1_000, 10_000];

fn p_separation(gen: &mut Generated, reports: &mut Vec<(usize, u64, SepReport)>) -> Outcome {
    let clock = Instant::now();
    let opts = RootOptions::new(128, 1024).map_err(|e| e.to_string())?;
    let mut first_pass = Vec::new();
    for d in 4..=6 {
        let family = big_p(d);
        let mut holds_from: Option<u64> = None;
        for &n in &GRID {
            let p = instance(family, n);
            gen.add(format!("P_{d},{n}"), &p);
            let r = measured(&p, &opts)?;
            match check_bound(&family, &int(n), &r.sep.hi) {
                BoundStatus::Satisfied => {
                    holds_from.get_or_insert(n);
                }
                BoundStatus::Violated => holds_from = None,
                other => return Err(format!("d={d} n={n}: bound status {}", other.as_str())),
            }
            reports.push((d, n, r));
        }
        let from = holds_from.ok_or_else(|| format!("d={d}: bound fails at n=10^4"))?;
        ensure(from <= 1_000, || format!("d={d}: bound only from n={from}"))?;
        first_pass.push(format!("d={d}: n>={from}"));
    }
    let elapsed = clock.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{} ({:.1}s, cap 1024 bits)", first_pass.join(", "), elapsed.as_secs_f64()))
}

fn p_trend(reports: &[(usize, u64, SepReport)]) -> Outcome {
    let mut parts = Vec::new();
    for d in 4..=6 {
        let e: Vec<f64> = reports.iter().filter(|(dd, _, _)| *dd == d).map(|(_, _, r)| r.e_lo).collect();
        ensure(e.len() == GRID.len(), || format!("d={d}: missing measurements"))?;
        let target = (2 * d - 1) as f64 / 3.0;
        ensure(e.windows(2).all(|w| w[0] < w[1]), || format!("d={d}: e_lo not increasing {e:?}"))?;
        ensure(e[2] >= 0.9 * target, || format!("d={d}: e_lo {} < 0.9*{target:.4}", e[2]))?;
        parts.push(format!("d={d}: {:.4}/{:.4}/{:.4} (target {target:.4})", e[0], e[1], e[2]));
    }
    Ok(parts.join("; "))
}

fn q_trend(gen: &mut Generated) -> Outcome {
    let opts = RootOptions::default();
    let n = int(1_000);
    let limit = Integer::from(2u32);
    let mut parts = Vec::new();
    for d in [6, 7] {
        let p = instance(Family::MonicQ(d), 1_000);
        gen.add(format!("Q_{d},1000"), &p);
        let r = measured(&p, &opts)?;
        // sep_hi * n^9 <= 2, exactly
        let scaled = r.sep.hi.to_rational() * num_rational::BigRational::from_integer(num_traits::pow(n.clone(), 9));
        ensure(scaled <= num_rational::BigRational::from_integer(limit.clone()), || {
            format!("Q_{d}: sep_hi * n^9 = {:.4}", r.sep.hi.to_f64(seplab::roots::Round::Up) * 1e27)
        })?;
        parts.push(format!("sep_hi(Q_{d}) = {:.4e}", r.sep.hi.to_f64(seplab::roots::Round::Up)));
    }
    let p = instance(Family::MonicQ(6), 10_000);
    gen.add("Q_6,10000".into(), &p);
    let r = measured(&p, &opts)?;
    ensure(r.e_lo >= 2.7, || format!("e_lo(Q_6, 10^4) = {}", r.e_lo))?;
    parts.push(format!("e_lo(Q_6,10^4) = {:.4}", r.e_lo));
    Ok(parts.join(", "))
}

fn conjugate_pairs(gen: &mut Generated) -> Outcome {
    let opts = RootOptions::default();
    let n = int(1_000);
    let mut parts = Vec::new();
    for big_d in 4..=7 {
        gen.add(format!("r_{big_d},1000"), &instance(Family::MonicR(big_d), 1_000));
        let c = conjugate_pair_scaling(big_d, &n, &opts).map_err(|e| format!("D={big_d}: {e}"))?;
        ensure((0.9..=1.1).contains(&c.gamma_lo) && (0.9..=1.1).contains(&c.gamma_hi), || {
            format!("D={big_d}: gamma in [{}, {}]", c.gamma_lo, c.gamma_hi)
        })?;
        parts.push(format!("D={big_d}: {:.4}", c.gamma_hat));
    }
    Ok(format!("gamma_hat {}", parts.join(", ")))
}

fn irreducibility(gen: &mut Generated) -> Outcome {
    let l = gen_l();
    let mut parts = Vec::new();
    for big_d in 4..=6 {
        for n in [10u64, 100] {
            let r = instance(Family::MonicR(big_d), n);
            gen.add(format!("r_{big_d},{n}"), &r);
            let cert = certify_irreducible(&r, 50).map_err(|e| e.to_string())?;
            ensure(cert.verdict == Verdict::Irreducible, || {
                format!("r_{big_d},{n}: {}", cert.verdict.name())
            })?;
            let roots = rational_root_test(&r);
            ensure(roots.is_empty(), || format!("r_{big_d},{n}: rational roots {roots:?}"))?;
            let res = resultant(&r, &l.instantiate(&int(n))).map_err(|e| e.to_string())?;
            ensure(res.abs() >= Integer::one(), || format!("r_{big_d},{n}: Res = {res}"))?;
            parts.push(format!("D={big_d},n={n}: {} prime(s), Res={res}", cert.patterns.len()));
        }
    }
    Ok(parts.join("; "))
}

fn mahler(gen: &Generated) -> Outcome {
    let opts = RootOptions::default();
    let mut worst = f64::INFINITY;
    for (label, p) in &gen.0 {
        let m = mahler_sanity(p, &opts).map_err(|e| format!("{label}: {e}"))?;
        ensure(m.pass, || format!("{label}: e_hi {} > bound {}", m.e_hi, m.bound))?;
        worst = worst.min(m.bound - m.e_hi);
    }
    Ok(format!("{} polynomials, min slack {worst:.4}", gen.0.len()))
}

fn crosscheck_instances() -> Vec<(String, IntPoly)> {
    let mut out = Vec::new();
    let mut push = |family: Family, n: u64| {
        out.push((format!("{family}@{n}"), instance(family, n)));
    };
    for d in 2..=6 {
        for n in [10, 100] {
            push(Family::BaseP(d), n);
        }
    }
    for d in 4..=6 {
        for n in [10, 100] {
            push(Family::ReducibleP(d), n);
        }
    }
    for n in [10, 100, 1_000] {
        push(Family::Quadratic, n);
    }
    for d in [2, 4, 6] {
        for n in [10, 100] {
            push(Family::BaseQ(d), n);
        }
    }
    for d in 6..=9 {
        for n in [10, 100] {
            push(Family::MonicQ(d), n);
        }
    }
    for d in 2..=5 {
        push(Family::AuxS(d), 10);
    }
    for d in 4..=7 {
        for n in [10, 100] {
            push(Family::MonicR(d), n);
        }
    }
    for h in [0, 1] {
        for n in [10, 100] {
            push(Family::ClusterP { delta: 4, h, pad: 0 }, n);
        }
    }
    for n in [10, 100] {
        push(Family::ClusterQ { delta: 6, h: 0, pad: 0 }, n);
    }
    out
}

fn crosscheck() -> Outcome {
    let opts = RootOptions::default();
    let instances = crosscheck_instances();
    ensure(instances.len() >= 50, || format!("only {} instances", instances.len()))?;
    for (label, p) in &instances {
        let c = disc_crosscheck(p, &opts).map_err(|e| format!("{label}: {e}"))?;
        ensure(c.pass, || format!("{label}: disc {} outside numeric interval", c.exact))?;
    }
    Ok(format!("{} instances", instances.len()))
}

fn cluster_trend() -> Outcome {
    let opts = RootOptions::default();
    let (k, h) = (3usize, 0usize);
    let family = Family::ClusterP { delta: 4, h, pad: 0 };
    let c = cluster_offset(h, false);
    let mut exps = Vec::new();
    for n in [100u64, 1_000] {
        let p = instance(family, n);
        let degree = p.degree().unwrap_or(0);
        let height = p.height().map_err(|e| e.to_string())?;
        let m = cluster_product(&p, k, &opts).map_err(|e| e.to_string())?;
        let (e_lo, _) = m.exponent(&height).map_err(|e| e.to_string())?;
        let floor = 0.8 * k as f64 / (k + 1) as f64 * degree as f64 - c;
        ensure(e_lo > floor, || format!("n={n}: exponent {e_lo} <= {floor}"))?;
        exps.push(e_lo);
    }
    ensure(exps[0] < exps[1], || format!("exponent not growing: {exps:?}"))?;
    Ok(format!("exponent {:.4} -> {:.4}, c = {c}", exps[0], exps[1]))
}

fn brackets() -> Outcome {
    let ns: Vec<Integer> = [32u64, 100, 1_000].into_iter().map(int).collect();
    let r = verify_bracket(&Canonical, &[3, 4, 5, 6], &ns);
    ensure(r.pass, || r.witness.clone().unwrap_or_default())?;
    Ok(format!("{} sign changes", r.checked))
}

fn determinism() -> Outcome {
    let cfg = SweepConfig {
        family: "P".into(),
        degrees: vec![4, 5],
        h: None,
        pad: 0,
        grid: "100,1000".parse::<NGrid>().map_err(|e| e.to_string())?,
        options: RootOptions::default(),
        policy: RangePolicy::STRICT,
        workers: None,
    };
    let a = render_csv(&run_sweep(&cfg).map_err(|e| e.to_string())?);
    let b = render_csv(&run_sweep(&cfg).map_err(|e| e.to_string())?);
    ensure(a == b, || "CSV differs between runs".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

fn main() -> ExitCode {
    let mut gen = Generated::default();
    let mut p_reports = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("exact identity suite", identities()),
        ("discriminant in n of r_4", discriminant_spot()),
        ("P separation bound", p_separation(&mut gen, &mut p_reports)),
        ("P exponent trend", p_trend(&p_reports)),
        ("Q separation bound and trend", q_trend(&mut gen)),
        ("conjugate pair scaling", conjugate_pairs(&mut gen)),
        ("r irreducibility ingredients", irreducibility(&mut gen)),
        ("Mahler sanity", mahler(&gen)),
        ("discriminant cross-check", crosscheck()),
        ("cluster trend", cluster_trend()),
        ("exact bracket checks", brackets()),
        ("sweep determinism", determinism()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
