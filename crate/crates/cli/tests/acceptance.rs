//! Acceptance run: one PASS/FAIL line per criterion, all comparisons exact,
//! with a wall-clock limit per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::Parser;
use common::*;
use ep_cli::{run, Cli};
use ep_core::algebra::{Element, EpAlgebra, Triple};
use ep_core::groupoid::{self, check_aperiodicity, compose_bisections, disjoint, invert_bisection, Aperiodicity};
use ep_core::{catalog, Degree, GroupElement, PseudoFreeness, SelfSimilarSystem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn system_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("systems").join(name).display().to_string()
}

/// Runs a command line in-process and returns its exit code and JSON.
fn epalg(args: &[&str]) -> Result<(i32, serde_json::Value), String> {
    let cli = Cli::try_parse_from(std::iter::once("epalg").chain(["--json"]).chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    let out = run(&cli).map_err(|e| e.to_string())?;
    Ok((out.code, out.json))
}

fn report_passes(args: &[&str]) -> Result<u64, String> {
    let (code, json) = epalg(args)?;
    let checked = json["checked"].as_u64().unwrap_or(0);
    ensure(code == 0 && json["ok"] == true && checked > 0, || format!("{}: {json}", args.join(" ")))?;
    Ok(checked)
}

// Leavitt path algebra of the two-petal rose, on the basis of pairs `μν*`
// with `μ` and `ν` not both ending in `a`.

type Word = Vec<u8>;
type Leavitt = BTreeMap<(Word, Word), i64>;

fn l_add(into: &mut Leavitt, key: (Word, Word), c: i64) {
    let e = into.entry(key.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        into.remove(&key);
    }
}

/// Rewrites `μa (νa)* → μν* − μb (νb)*` until no such pair is left.
fn l_reduce(x: &Leavitt) -> Leavitt {
    let mut out = Leavitt::new();
    let mut work: Vec<((Word, Word), i64)> = x.iter().map(|(k, v)| (k.clone(), *v)).collect();
    while let Some(((mu, nu), c)) = work.pop() {
        if mu.last() == Some(&0) && nu.last() == Some(&0) {
            let (m, n) = (mu[..mu.len() - 1].to_vec(), nu[..nu.len() - 1].to_vec());
            let (mut mb, mut nb) = (m.clone(), n.clone());
            mb.push(1);
            nb.push(1);
            work.push(((m, n), c));
            work.push(((mb, nb), -c));
        } else {
            l_add(&mut out, (mu, nu), c);
        }
    }
    out
}

fn l_mul(x: &Leavitt, y: &Leavitt) -> Leavitt {
    let mut out = Leavitt::new();
    for ((mu, nu), c) in x {
        for ((ga, de), d) in y {
            let key = if ga.starts_with(nu) {
                let mut m = mu.clone();
                m.extend(&ga[nu.len()..]);
                (m, de.clone())
            } else if nu.starts_with(ga) {
                let mut n = de.clone();
                n.extend(&nu[ga.len()..]);
                (mu.clone(), n)
            } else {
                continue;
            };
            l_add(&mut out, key, c * d);
        }
    }
    l_reduce(&out)
}

fn to_leavitt(sys: &SelfSimilarSystem, a: &Element<i64>) -> Leavitt {
    let g = sys.graph();
    let word = |p: &ep_core::Path| -> Word { p.word().iter().map(|&e| if g.edge_name(e) == "a" { 0 } else { 1 }).collect() };
    let mut out = Leavitt::new();
    for (t, c) in a.terms() {
        l_add(&mut out, (word(&t.mu), word(&t.nu)), *c);
    }
    l_reduce(&out)
}

/// A random factor, built in both algebras: a monomial `μν*` with
/// `|μ|, |ν| ≤ 2`, or the zero `1 − aa* − bb*`.
fn random_factor(alg: &EpAlgebra<'_>, r: &mut ChaCha8Rng) -> (Element<i64>, Leavitt) {
    let g = alg.system().graph();
    let v = g.vertex_path(g.vertex_by_name("v").unwrap());
    let edges = [g.edge_by_name("a").unwrap(), g.edge_by_name("b").unwrap()];
    if r.gen_range(0..4) == 0 {
        let mut e = alg.gen_s(&v);
        let mut l = Leavitt::from([((vec![], vec![]), 1)]);
        for (i, &x) in edges.iter().enumerate() {
            let p = g.edge_path(x);
            e = e.sub(&alg.mul(&alg.gen_s(&p), &alg.gen_s_star(&p)).unwrap()).unwrap();
            l_add(&mut l, (vec![i as u8], vec![i as u8]), -1);
        }
        return (e, l);
    }
    let pick = |r: &mut ChaCha8Rng| -> (ep_core::Path, Word) {
        let w: Word = (0..r.gen_range(0..=2)).map(|_| r.gen_range(0..2u8)).collect();
        let ids: Vec<_> = w.iter().map(|&i| edges[i as usize]).collect();
        let p = if ids.is_empty() { v.clone() } else { g.path_from_word(&ids).unwrap() };
        (p, w)
    };
    let (mu, wm) = pick(r);
    let (nu, wn) = pick(r);
    let t = alg.triple(mu, alg.system().group().identity(), nu).unwrap();
    (alg.monomial(t, 1), Leavitt::from([((wm, wn), 1)]))
}

fn criterion_1() -> Check {
    let checked = report_passes(&["relations", &system_file("rose2.json"), "--depth", "2"])?;
    let sys = catalog::rose(2);
    ensure(sys.group().order() == Some(1), || "group not trivial".into())?;
    let alg = EpAlgebra::new(&sys);
    let mut r = rng(1);
    let mut zeros = 0;
    for i in 0..200 {
        let mut e = alg.zero();
        let mut l = Leavitt::new();
        for _ in 0..r.gen_range(1..=3) {
            let c = r.gen_range(-3..=3i64);
            let (e1, l1) = random_factor(&alg, &mut r);
            let (e2, l2) = random_factor(&alg, &mut r);
            e = e.add(&alg.mul(&e1, &e2).unwrap().scale(&c)).unwrap();
            let prod = l_mul(&l1, &l2);
            for (k, v) in prod {
                l_add(&mut l, k, c * v);
            }
        }
        let l = l_reduce(&l);
        let z = alg.is_zero(&e).map_err(|x| x.to_string())?;
        ensure(z == l.is_empty(), || format!("sample {i}: is_zero {z}, oracle {l:?}"))?;
        ensure(to_leavitt(&sys, &alg.normalize(&e)) == l, || format!("sample {i}: normal forms differ"))?;
        zeros += z as usize;
    }
    Ok(format!("relations: {checked} checks; 200 samples, {zeros} zero"))
}

fn criterion_2() -> Check {
    let sys = catalog::adding_machine();
    let pf = sys.check_pseudo_free(10_000);
    ensure(pf == PseudoFreeness::PseudoFree, || format!("{pf:?}"))?;
    let (code, json) = epalg(&["pseudofree", &system_file("adding_machine.json"), "--budget", "10000"])?;
    ensure(code == 0 && json["status"] == "pseudo-free", || format!("{json}"))?;
    let alg = EpAlgebra::new(&sys);
    let g = sys.graph();
    let v = g.vertex_by_name("v").unwrap();
    let t = GroupElement::Vector(vec![1]);
    let u: Element<i64> = alg.gen_u(v, &t).unwrap();
    let sa = alg.gen_s(&g.parse_path("a").unwrap());
    let sb = alg.gen_s(&g.parse_path("b").unwrap());
    ensure(alg.equals(&alg.mul(&u, &sa).unwrap(), &sb).unwrap(), || "u_t s_a != s_b".into())?;
    ensure(alg.equals(&alg.mul(&u, &sb).unwrap(), &alg.mul(&sa, &u).unwrap()).unwrap(), || "u_t s_b != s_a u_t".into())?;
    let checked = report_passes(&["relations", &system_file("adding_machine.json"), "--depth", "3"])?;
    Ok(format!("pseudo-free, 2 identities, relations: {checked} checks"))
}

fn criterion_3() -> Check {
    let systems = [catalog::adding_machine(), catalog::two_vertex(), catalog::odometer_2graph()];
    let mut r = rng(3);
    let mut tested = 0;
    for sys in &systems {
        let alg = EpAlgebra::new(sys);
        let k = sys.graph().k();
        let mut n_done = 0;
        while n_done < 100 {
            let a = random_homogeneous(&alg, &mut r, 3);
            if a.is_empty() {
                continue;
            }
            n_done += 1;
            let n = Degree::join_all(a.terms().keys().map(|t| t.mu.degree())).unwrap();
            let mut n2 = n.clone();
            for _ in 0..r.gen_range(1..=2) {
                n2 = n2.checked_add(&Degree::unit(k, r.gen_range(0..k))).unwrap();
            }
            let via = alg.expand_to_degree(&alg.expand_to_degree(&a, &n).unwrap(), &n2).unwrap();
            ensure(via == alg.expand_to_degree(&a, &n2).unwrap(), || "expansion incoherent".into())?;
            for b in [a.clone(), random_mixed(&alg, &mut r)] {
                let nf = alg.normalize(&b);
                ensure(alg.normalize(&nf) == nf, || "normalize not idempotent".into())?;
                let z = alg.is_zero(&b).unwrap();
                ensure(z == groupoid::vanishes(sys, &b).unwrap(), || "is_zero differs from evaluation".into())?;
                tested += 1;
            }
        }
    }
    Ok(format!("300 homogeneous elements, {tested} zero tests"))
}

fn criterion_4() -> Check {
    let c1 = report_passes(&["zs", "verify", &system_file("adding_machine.json"), "--max-degree", "(2)"])?;
    let c2 = report_passes(&["zs", "verify", &system_file("odometer_2graph.json"), "--max-degree", "(1,1)"])?;
    let c3 = report_passes(&["zs", "verify", &system_file("square.json"), "--max-degree", "(1,1)"])?;
    Ok(format!("adding machine {c1}, odometer {c2}, square {c3} checks"))
}

fn criterion_5() -> Check {
    let f = system_file("two_vertex.json");
    let (_, json) = epalg(&["ideals", "list", &f])?;
    let sets = json["sets"].as_array().map(|a| a.len()).unwrap_or(0);
    ensure(sets >= 3, || format!("lattice too small: {json}"))?;
    let checked = report_passes(&["ideals", "verify", &f])?;
    Ok(format!("{sets} invariant sets, {checked} checks"))
}

fn criterion_6() -> Check {
    let sys = catalog::adding_machine();
    let alg = EpAlgebra::new(&sys);
    let g = sys.graph();
    let v = g.vertex_path(g.vertex_by_name("v").unwrap());
    let elems: Vec<GroupElement> = [0, 1, -1, 2, -2].iter().map(|&n| GroupElement::Vector(vec![n])).collect();
    let depth = Degree::new(vec![2]);
    let mut pairs = 0;
    for x in &elems {
        for y in &elems {
            if x == y {
                continue;
            }
            let bx = Triple { mu: v.clone(), g: x.clone(), nu: v.clone() };
            let by = Triple { mu: v.clone(), g: y.clone(), nu: v.clone() };
            ensure(disjoint(&sys, &bx, &by, &depth) == Ok(true), || format!("Z(v,{x:?},v) meets Z(v,{y:?},v)"))?;
            pairs += 1;
        }
    }
    let mut r = rng(6);
    for _ in 0..100 {
        let t = random_triple(&sys, &mut r, &depth);
        let inv = invert_bisection(&sys, &t);
        ensure(invert_bisection(&sys, &inv) == t, || "double inverse".into())?;
        let sum = |ts: Vec<Triple>| -> Element<i64> { alg.from_terms(ts.into_iter().map(|x| (x, 1))) };
        let range = sum(compose_bisections(&sys, &t, &inv));
        let source = sum(compose_bisections(&sys, &inv, &t));
        let dr = alg.mul(&alg.gen_s(&t.mu), &alg.gen_s_star(&t.mu)).unwrap();
        let ds = alg.mul(&alg.gen_s(&t.nu), &alg.gen_s_star(&t.nu)).unwrap();
        ensure(same(&alg, &range, &dr) && same(&alg, &source, &ds), || "round trip".into())?;
    }
    Ok(format!("{pairs} ordered pairs disjoint, 100 round trips"))
}

fn criterion_7() -> Check {
    let d = Degree::new(vec![3]);
    let single = check_aperiodicity(&catalog::single_loop(), &d, 2, 100_000).map_err(|e| e.to_string())?;
    ensure(matches!(single, Aperiodicity::ViolationWitness { .. }), || format!("{single:?}"))?;
    let rose = check_aperiodicity(&catalog::rose(2), &d, 2, 100_000).map_err(|e| e.to_string())?;
    ensure(
        rose == Aperiodicity::NoWitnessUpToDepth { depth: d.clone(), group_truncated: false },
        || format!("{rose:?}"),
    )?;
    Ok("single loop periodic, rose aperiodic to depth (3)".into())
}

fn criterion_8() -> Check {
    let mut r = rng(8);
    let mut names = Vec::new();
    for (name, sys) in systems() {
        let alg = EpAlgebra::new(&sys);
        let paths = all_paths_up_to(&sys, &sample_depth(&sys));
        for i in 0..200 {
            let (a, b, c) = (random_element(&alg, &mut r, 2), random_element(&alg, &mut r, 2), random_element(&alg, &mut r, 2));
            let ab = alg.mul(&a, &b).unwrap();
            let left = alg.mul(&ab, &c).unwrap();
            let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
            ensure(same(&alg, &left, &right), || format!("{name} #{i}: associativity"))?;
            let inv = alg.mul(&alg.adjoint(&b), &alg.adjoint(&a)).unwrap();
            ensure(same(&alg, &alg.adjoint(&ab), &inv), || format!("{name} #{i}: involution"))?;

            let (h1, h2) = (random_homogeneous(&alg, &mut r, 2), random_homogeneous(&alg, &mut r, 2));
            if let (Some(g1), Some(g2)) = (h1.grades().into_iter().next(), h2.grades().into_iter().next()) {
                let sum: Vec<i64> = g1.iter().zip(&g2).map(|(x, y)| x + y).collect();
                let p = alg.mul(&h1, &h2).unwrap();
                ensure(p.grades().iter().all(|g| *g == sum), || format!("{name} #{i}: grading"))?;
            }

            let e = alg.expectation(&a).unwrap();
            ensure(alg.expectation(&e).unwrap() == e, || format!("{name} #{i}: expectation idempotence"))?;
            let mut diag = || {
                let p = &paths[r.gen_range(0..paths.len())];
                alg.mul(&alg.gen_s(p), &alg.gen_s_star(p)).unwrap()
            };
            let (d1, d2) = (diag(), diag());
            let lhs = alg.expectation(&alg.product(&[d1.clone(), a.clone(), d2.clone()]).unwrap()).unwrap();
            let rhs = alg.product(&[d1, e, d2]).unwrap();
            ensure(same(&alg, &lhs, &rhs), || format!("{name} #{i}: bimodule law"))?;
        }
        names.push(name);
    }
    Ok(format!("200 samples on each of {}", names.join(", ")))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 8] = [
        ("Leavitt oracle on the two-petal rose", 5, criterion_1),
        ("adding machine: pseudo-freeness, identities, relations", 5, criterion_2),
        ("graded uniqueness: coherence, idempotence, evaluation", 30, criterion_3),
        ("boundary quotient relations under translation", 60, criterion_4),
        ("ideal correspondence on the two-vertex system", 30, criterion_5),
        ("bisection disjointness and round trips", 10, criterion_6),
        ("aperiodicity probe", 5, criterion_7),
        ("algebraic laws", 60, criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!("too slow ({detail})")),
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {}  {name}  [{secs:.2}s < {limit}s, exact]  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}  {name}  [{secs:.2}s, limit {limit}s, exact]  {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
