//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines show under `cargo test`. Criterion 4 (degree 900) runs only with
//! `--slow` or `SOLGROUP_ACCEPTANCE_SLOW=1`; release mode is advised:
//!
//! ```text
//! cargo test --release -p solgroup-cli --test acceptance -- --slow
//! ```

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solgroup::bounds::{self, Cover, Status};
use solgroup::catalog::{self, Entry};
use solgroup::claims::{self, ExampleId};
use solgroup::hall::{self, Profiler};
use solgroup::oracle::{self, TinyGroup};
use solgroup::{build, series, Config, ConstructedGroup, GroupExpr, Perm, PermGroup, PrimeSet};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(s: &str) -> PrimeSet {
    s.parse().expect("prime set")
}

fn example(id: ExampleId) -> Result<ConstructedGroup, String> {
    let text = claims::expression(id, 1).ok_or("no expression")?;
    let expr = GroupExpr::parse(&text).map_err(|e| e.to_string())?;
    build(&expr, &Config::default()).map_err(|e| e.to_string())
}

/// h(G), then h(G_σ) for the listed σ, then Θ−2 over the triangle cover.
fn measure(cg: &ConstructedGroup, sigmas: &[&str]) -> Result<(usize, Vec<usize>, usize), String> {
    let p = Profiler::new(cg);
    let h = p.h_total().map_err(|e| e.to_string())?;
    let mut hs = Vec::new();
    for s in sigmas {
        hs.push(p.h(&set(s)).map_err(|e| e.to_string())?);
    }
    let theta: usize = ["{2,3}", "{3,5}", "{2,5}"]
        .iter()
        .map(|s| p.h(&set(s)))
        .sum::<Result<usize, _>>()
        .map_err(|e| e.to_string())?;
    Ok((h, hs, theta - 2))
}

/// The CLI `example` subcommand must agree and exit 0.
fn cli_example(id: &str) -> Result<(), String> {
    let out = solgroup_cli::run(["solgroup", "example", id, "--format", "kv"]);
    check(out.code == 0, || format!("cli example {id} exited {}: {}", out.code, out.stderr))?;
    check(out.stdout.contains("\nmismatches=0\n"), || format!("cli example {id} reports mismatches"))
}

fn c1() -> Outcome {
    let cg = example(ExampleId::E32a)?;
    // 2' = {3,5}, 3' = {2,5}, 5' = {2,3}.
    let (h, hs, t2) = measure(&cg, &["{3,5}", "{2,5}", "{2,3}"])?;
    check(h == 3 && hs == [2, 2, 2], || format!("h={h} primed={hs:?}"))?;
    let bound = bounds::bound_prop31(t2 + 2, 3).map_err(|e| e.to_string())?;
    check(bound == 4.into() && t2 == 4, || format!("triangle bound {bound}, Θ-2={t2}"))?;
    cli_example("3.2a")?;
    Ok(format!("h=3 = 2ℓ+1, h(G_2')=h(G_3')=h(G_5')=2, Θ-2=4=2ℓ+2 >= 3 (natural action, degree {})", cg.group().degree()))
}

fn c2() -> Outcome {
    let cg = example(ExampleId::E32b)?;
    let (h, hs, t2) = measure(&cg, &["{3,5}", "{2,5}", "{2,3}"])?;
    check(h == 2 && t2 == 2, || format!("h={h} Θ-2={t2}"))?;
    check(hs == [2, 1, 1], || format!("primed {hs:?}"))?;
    cli_example("3.2b")?;
    Ok("h=2 = Θ-2 = 2ℓ, prop 3.1 attained".into())
}

fn c3() -> Outcome {
    let cg = example(ExampleId::E33)?;
    let (h, hs, t2) = measure(&cg, &["{2,3}", "{3,5}", "{2,5}"])?;
    check(h == 4, || format!("h={h}"))?;
    check(hs == [2, 3, 2], || format!("h(G_5'), h(G_2'), h(G_3') = {hs:?}"))?;
    check(t2 == 5, || format!("Θ-2={t2}"))?;
    cli_example("3.3")?;
    Ok(format!("h=4=4ℓ, h(G_5')=2, h(G_2')=3, h(G_3')=2, Θ-2=5=4ℓ+1 (degree {})", cg.group().degree()))
}

fn c4() -> Outcome {
    let cg = example(ExampleId::E34)?;
    check(cg.group().degree() == 900, || format!("degree {}", cg.group().degree()))?;
    let (h, hs, _) = measure(&cg, &["{3,5}", "{2,5}", "{2,3}"])?;
    check(h == 6 && hs == [4, 4, 4], || format!("h={h} primed={hs:?}"))?;
    Ok("h=6=6ℓ, h(G_p')=h(G_q')=h(G_r')=4=2ℓ+2 (degree 900)".into())
}

fn c5() -> Outcome {
    let mut n = 0;
    for ell in 1..=20 {
        for id in [ExampleId::E32a, ExampleId::E32b, ExampleId::E33, ExampleId::E34, ExampleId::E35] {
            for c in claims::arithmetic(id, ell) {
                check(c.pass(), || format!("{id} ℓ={ell}: {} {} {} {}", c.name, c.lhs, c.relation, c.rhs))?;
                n += 1;
            }
        }
        // Example 3.4: 6ℓ ≤ 2(2ℓ+2)−1 exactly when ℓ < 2.
        let l = ell as i64;
        #[allow(clippy::int_plus_one)]
        let holds = 6 * l <= 2 * (2 * l + 2) - 1;
        check(holds == (ell < 2), || format!("3.4 comparison at ℓ={ell}"))?;
        // Example 3.5: the two printed right-hand sides.
        let (hp, hq, hpq) = (4 * l + 3, 4 * l + 2, 4 * l + 2);
        check(hp + hq + hpq - 2 == 12 * l + 5, || "12ℓ+5".into())?;
        check((hp + hq + (16 * l + 1) - 2) / 2 == 12 * l + 2, || "12ℓ+2".into())?;
    }
    Ok(format!(
        "substitute arithmetic suite, {n} checks over ℓ=1..20; group-level 3.5, 3.4 at ℓ=2 and ℓ>=2 declared out of scale"
    ))
}

fn remark_24(pi: &PrimeSet, max_t: usize) -> Result<usize, String> {
    let w = pi.len();
    let mut n = 0;
    for t in 3..=max_t {
        for c in bounds::enumerate_covers(pi, t, true) {
            let members: Vec<&PrimeSet> = c.members().collect();
            for p in pi.iter() {
                check(members.iter().filter(|m| !m.contains(p)).count() <= 1, || format!("2.4(a) {c}"))?;
            }
            let total: usize = members.iter().map(|m| m.len()).sum();
            check(total >= (t - 1) * w, || format!("2.4(b) {c}"))?;
            if !c.is_degenerate() {
                check(t <= w, || format!("2.4(c) {c}"))?;
                if t == w {
                    check(members.iter().all(|m| m.len() == w - 1), || format!("2.4(c) {c}"))?;
                }
            }
            if w == 2 && t == 3 {
                let only = pi.iter().map(PrimeSet::singleton).chain([pi.clone()]);
                let only = Cover::new(only, pi).map_err(|e| e.to_string())?;
                check(c.is_degenerate() && c == only, || format!("2.4(d) {c}"))?;
            }
            n += 1;
        }
    }
    Ok(n)
}

fn c6() -> Outcome {
    let entries = catalog::catalog();
    let mut ws = std::collections::BTreeSet::new();
    let mut evaluated = 0;
    let mut covers = 0;
    for e in &entries {
        let cg = e.build().map_err(|x| x.to_string())?;
        let r = bounds::check_all(&cg).map_err(|x| x.to_string())?;
        let w = r.primes.len();
        ws.insert(w);
        if let Some(v) = r.violations().next() {
            return Err(format!("{}: {} {} actual {} bound {:?}", e.name, v.name, v.inputs, v.actual, v.value));
        }
        check(r.lemma.pass(), || "lemma sweep".into())?;
        let applicable = |name| r.entries_named(name).filter(|x| x.status() != Status::NotApplicable).count();
        if w >= 4 {
            check(applicable(bounds::THEOREM_B) == 1, || format!("{}: theorem B missing", e.name))?;
        }
        if w >= 3 {
            check(applicable(bounds::THEOREM_C) == w - 2, || format!("{}: theorem C count", e.name))?;
            check(applicable(bounds::REMARK36) == 1, || format!("{}: remark 3.6 missing", e.name))?;
        }
        check(applicable(bounds::CJS) == (1 << w) - 2, || format!("{}: cjs count", e.name))?;
        evaluated += r.entries.len();
        covers += remark_24(&r.primes, w + 1)?;
        // Exit-code contract through the CLI.
        let out = solgroup_cli::run(["solgroup", "check", &format!("catalog:{}", e.name), "--format", "kv"]);
        check(out.code == 0 && out.stdout.contains("\nbounds=pass\n"), || format!("cli check {} exited {}", e.name, out.code))?;
    }
    check(entries.len() >= 12 && ws == [1, 2, 3, 4].into(), || format!("catalog spans w={ws:?}"))?;
    Ok(format!(
        "{} groups, w in {{1,2,3,4}}, {evaluated} bound entries, {covers} covers checked against remark 2.4, no violation",
        entries.len()
    ))
}

fn tiny(e: &Entry, cap: usize) -> Option<(ConstructedGroup, TinyGroup)> {
    let cg = e.build().ok()?;
    let t = oracle::enumerate(cg.group(), cap).ok()?;
    Some((cg, t))
}

fn c7() -> Outcome {
    let mut groups = 0;
    let mut lemma = 0;
    for e in catalog::catalog() {
        let Some((cg, t)) = tiny(&e, 2000) else { continue };
        groups += 1;
        let h = series::fitting_length(cg.group()).map_err(|x| x.to_string())?;
        let upper = oracle::fitting_length_upper(&t).map_err(|x| x.to_string())?;
        check(h == upper, || format!("{}: lower {h} vs upper {upper}", e.name))?;
        let f = oracle::fitting_subgroup(&t);
        let cores: usize = t.primes().iter().map(|p| oracle::core_sigma(&t, &PrimeSet::singleton(p)).order()).product();
        check(f.order() == cores, || format!("{}: |F| {} vs Π|O_p| {cores}", e.name, f.order()))?;
        for sigma in t.primes().subsets().into_iter().filter(|s| s.len() >= 2) {
            for p in sigma.iter() {
                for q in sigma.iter().filter(|&q| q != p) {
                    let ok = oracle::verify_lemma21(&t, &sigma, p, q).map_err(|x| x.to_string())?;
                    check(ok, || format!("{}: lemma 2.1 {sigma} {p} {q}", e.name))?;
                    lemma += 1;
                }
            }
        }
    }
    check(groups >= 10, || format!("only {groups} groups of order <= 2000"))?;
    Ok(format!("{groups} groups of order <= 2000: h agrees, F(G) = Π O_p(G), {lemma} lemma 2.1 cases hold"))
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> GroupExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        let p = [2, 3, 5][rng.gen_range(0..3)];
        return if rng.gen_bool(0.5) {
            GroupExpr::cyclic(p, 1)
        } else {
            GroupExpr::elem_abelian(p, rng.gen_range(1..3))
        };
    }
    let a = random_expr(rng, depth - 1);
    let b = random_expr(rng, depth - 1);
    if rng.gen_bool(0.3) {
        GroupExpr::direct(a, b)
    } else {
        GroupExpr::wreath(a, b, solgroup::Action::Natural)
    }
}

fn c8() -> Outcome {
    for n in 2..=8usize {
        let t = Perm::from_cycles(n, &[vec![0, 1]]).map_err(|e| e.to_string())?;
        let c = Perm::from_cycles(n, &[(0..n).collect()]).map_err(|e| e.to_string())?;
        let g = PermGroup::new(n, vec![t.clone(), c.clone()]).map_err(|e| e.to_string())?;
        let brute = TinyGroup::generate(n, [&t, &c], 40_320).map_err(|e| e.to_string())?;
        let fact: BigUint = (1..=n as u32).map(BigUint::from).product();
        check(g.order() == &fact && BigUint::from(brute.order()) == fact, || format!("S_{n}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut wreaths = 0;
    while wreaths < 10 {
        let a = random_expr(&mut rng, 1);
        let b = random_expr(&mut rng, 1);
        let expr = GroupExpr::wreath(a.clone(), b.clone(), solgroup::Action::Natural);
        let cfg = Config::default();
        if solgroup::construct::predicted_size(&expr, &cfg).0 > 200 {
            continue;
        }
        let ga = build(&a, &cfg).map_err(|e| e.to_string())?;
        let gb = build(&b, &cfg).map_err(|e| e.to_string())?;
        let gw = build(&expr, &cfg).map_err(|e| e.to_string())?;
        let d = gb.group().degree() as u32;
        let want = ga.group().order().pow(d) * gb.group().order();
        check(gw.group().order() == &want, || format!("|{expr}| = {} vs {want}", gw.group().order()))?;
        check(gw.system_is_valid(), || format!("{expr}: {}", gw.sylow_report()))?;
        wreaths += 1;
    }
    for e in catalog::catalog() {
        let cg = e.build().map_err(|x| x.to_string())?;
        check(hall::verify_sylow_system(&cg).pass(), || format!("{}: Sylow system", e.name))?;
    }
    Ok("|S_n| = n! for n <= 8 (brute force agrees), 10 random |A≀B| = |A|^d|B|, every catalog system verifies".into())
}

/// Triples of Hall subgroups of the attached system, one per 3-cover.
fn hall_triples(cg: &ConstructedGroup) -> Vec<([PrimeSet; 3], [Vec<Perm>; 3])> {
    let pi = cg.group().primes().clone();
    let mut out = Vec::new();
    for c in bounds::enumerate_covers(&pi, 3, true) {
        let m: Vec<PrimeSet> = c.members().cloned().collect();
        let gens = |s: &PrimeSet| hall::hall_subgroup(cg, s).expect("valid system").generators().to_vec();
        out.push(([m[0].clone(), m[1].clone(), m[2].clone()], [gens(&m[0]), gens(&m[1]), gens(&m[2])]));
    }
    out
}

fn c9() -> Outcome {
    let budget = Config::default().pair_budget;
    let mut kegel = 0;
    let mut data = Vec::new();
    for e in catalog::catalog() {
        let Some((cg, t)) = tiny(&e, 20_000) else { continue };
        let nilpotent = oracle::is_nilpotent(&t);
        for (sets, [h, k, l]) in hall_triples(&cg) {
            if nilpotent && kegel < 20 {
                // An Internal error here would be a Kegel counterexample.
                let r = oracle::check_conjecture37(&t, &h, &k, &l, budget).map_err(|x| format!("{}: {x}", e.name))?;
                check(r.trifactorized && r.kegel == Some(true), || format!("{}: {r:?}", e.name))?;
                kegel += 1;
            } else if !nilpotent && data.len() < 10 {
                let r = oracle::check_conjecture37(&t, &h, &k, &l, budget).map_err(|x| format!("{}: {x}", e.name))?;
                data.push(format!(
                    "{} {}/{}/{}: |G|={} trifactorized={} h(G)={} h(factors)={:?} inequality={:?}",
                    e.name, sets[0], sets[1], sets[2], r.order, r.trifactorized, r.h_g, r.h_factors, r.inequality
                ));
            }
        }
    }
    check(kegel == 20, || format!("only {kegel} nilpotent trifactorizations"))?;
    check(data.len() == 10, || format!("only {} non-nilpotent instances", data.len()))?;
    for d in &data {
        println!("    data: {d}");
    }
    Ok("20 nilpotent trifactorizations: G nilpotent each time; 10 non-nilpotent reports emitted as data".into())
}

fn c10() -> Outcome {
    let args = ["solgroup", "check", "example:3.3", "--format", "kv"];
    let a = solgroup_cli::run(args);
    let b = solgroup_cli::run(args);
    check(a.code == 0, || format!("exit {}", a.code))?;
    check(a == b, || "two runs differ".into())?;
    let c = solgroup_cli::run(["solgroup", "check", "example:3.3", "--format", "kv", "--parallel", "2"]);
    check(a == c, || "--parallel 2 differs from --parallel 1".into())?;
    Ok(format!("byte-identical, {} bytes (also under --parallel 2)", a.stdout.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    slow: bool,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let slow = std::env::args().any(|a| a == "--slow")
        || std::env::var("SOLGROUP_ACCEPTANCE_SLOW").is_ok_and(|v| v == "1");
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "example 3.2a at ℓ=1", limit: secs(60), slow: false, run: c1 },
        Criterion { id: 2, name: "example 3.2b at ℓ=1", limit: secs(30), slow: false, run: c2 },
        Criterion { id: 3, name: "example 3.3 at ℓ=1", limit: secs(300), slow: false, run: c3 },
        Criterion { id: 4, name: "example 3.4 at ℓ=1", limit: secs(1800), slow: true, run: c4 },
        Criterion { id: 5, name: "printed formulas, arithmetic", limit: secs(1), slow: false, run: c5 },
        Criterion { id: 6, name: "bounds over the catalog", limit: secs(600), slow: false, run: c6 },
        Criterion { id: 7, name: "oracle equivalence", limit: secs(120), slow: false, run: c7 },
        Criterion { id: 8, name: "engine calibration", limit: secs(60), slow: false, run: c8 },
        Criterion { id: 9, name: "Kegel property", limit: secs(60), slow: false, run: c9 },
        Criterion { id: 10, name: "determinism", limit: secs(60), slow: false, run: c10 },
    ];
    let mut failed = 0;
    for c in &criteria {
        if c.slow && !slow {
            println!("criterion {:>2} SKIP  {} (run with --slow)", c.id, c.name);
            continue;
        }
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > c.limit => Err(format!("{detail}; took longer than {:?}", c.limit)),
            r => r,
        };
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {}: {detail} [tolerance 0, {:.2} s of {} s]",
                c.id,
                c.name,
                took.as_secs_f64(),
                c.limit.as_secs()
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {why} [{:.2} s]", c.id, c.name, took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
