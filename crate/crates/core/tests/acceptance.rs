//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use idealdec::arith::{discriminant, next_prime, rat, ratio, PrimeField, Rational, Rationals, UniPoly};
use idealdec::factor::{factor_bivariate_fp, factor_univariate_fp, factor_univariate_q};
use idealdec::groebner::{audited_basis_count, buchberger_with, eliminate, GbConfig, Ideal};
use idealdec::hilbert::{affine_hilbert_function, initial_ideal};
use idealdec::modred::{admissible_for, admissible_primes, reduce_alg_ideal, AlgPoly, ExtensionDescriptor};
use idealdec::mpoly::{parse_poly, resultant, Monomial, MultiPoly, TermOrder};
use idealdec::pipeline::{decompose, DecompositionReport, PipelineConfig, PipelineError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{audited, dense_top_poly, fixture, fp_ideal, macaulay_hf, random_poly};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    check(start.elapsed() < limit, format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

const XYZ: [&str; 3] = ["X", "Y", "Z"];

fn quartic() -> UniPoly<Rationals> {
    UniPoly::from_i64(Rationals, &[1, 0, -10, 0, 1])
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let ext = ExtensionDescriptor::new(&quartic(), "a").map_err(|e| e.to_string())?;
    let s2 = ext.element(&[rat(0), ratio(-9, 2), rat(0), ratio(1, 2)]);
    let s3 = ext.element(&[rat(0), ratio(11, 2), rat(0), ratio(-1, 2)]);
    let c = |v: i64| ext.constant(rat(v));
    let m = |e: [u32; 3]| Monomial::from_exps(&e);
    let gens = vec![
        AlgPoly::new(3, vec![(m([0, 2, 0]), c(3)), (m([1, 0, 1]), ext.mul(&c(-2), &s3))]),
        AlgPoly::new(3, vec![(m([1, 1, 0]), c(3)), (m([0, 0, 1]), ext.mul(&c(-1), &ext.mul(&s3, &s2)))]),
        AlgPoly::new(3, vec![(m([2, 0, 0]), c(2)), (m([0, 1, 0]), ext.mul(&c(-1), &s2))]),
    ];
    let ctx = ext.context(23, 21).map_err(|e| e.to_string())?;
    let red = reduce_alg_ideal(&gens, &ctx, &ext).map_err(|e| e.to_string())?;
    let field = PrimeField::new(23).unwrap();
    let want: Vec<MultiPoly<PrimeField>> = ["3*Y^2 + 14*Z*X", "3*Y*X + 12*Z", "2*X^2 + 18*Y"]
        .iter()
        .map(|s| parse_poly(s, &XYZ).unwrap().map_coeffs(field, |c| field.from_rational(c).unwrap()))
        .collect();
    check(red.generators() == want.as_slice(), format!("got {:?}", red.generators()))?;

    let qp = quartic().map(field, |c| field.from_rational(c).unwrap());
    let fl = factor_univariate_fp(&qp);
    let got: BTreeSet<Vec<u64>> = fl.factors.iter().map(|(f, _)| f.coeffs().to_vec()).collect();
    let expect: BTreeSet<Vec<u64>> = [21, 12, 2, 11].iter().map(|&a| vec![a, 1]).collect();
    check(got == expect && fl.factors.iter().all(|(_, e)| *e == 1), format!("factors {got:?}"))?;
    within(Duration::from_secs(1), start)?;
    Ok("images 3Y^2+14ZX, 3YX+12Z, 2X^2+18Y; q = (T+21)(T+12)(T+2)(T+11) mod 23".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let disc = discriminant(&quartic()).map_err(|e| e.to_string())?;
    check(disc == rat(147456), format!("discriminant {disc}"))?;
    admissible_for(&quartic(), 23)?;
    check(147456 % 23 != 0, "23 divides the discriminant")?;
    within(Duration::from_secs(1), start)?;
    Ok("disc = 147456, 23 admissible".into())
}

fn run_fixture(name: &str, cfg: &PipelineConfig) -> Result<DecompositionReport, String> {
    let f = fixture(name);
    decompose(&f.ideal.with_dimension(1), cfg).map_err(|e| format!("{name}: {e}"))
}

fn shape(r: &DecompositionReport) -> Vec<(usize, usize, usize, usize)> {
    r.components
        .iter()
        .map(|c| (c.rational_degree, c.multiplicity, c.absolute_count, c.absolute_degree))
        .collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let r = run_fixture("four_lines.ideal", &audited(42))?;
    check(r.s == 2, format!("s = {}", r.s))?;
    check(shape(&r) == vec![(2, 1, 2, 1); 2], format!("components {:?}", shape(&r)))?;
    for c in &r.components {
        let m = c.initial_ideal.as_ref().ok_or("missing initial ideal")?;
        check(
            m.generators().len() == 2 && m.generators().iter().all(|g| g.degree() == 1),
            format!("initial ideal {:?}", m.generators()),
        )?;
        let h = c.hilbert.as_ref().ok_or("missing Hilbert data")?;
        check(h.values[..4] == [1, 2, 3, 4], format!("HF {:?}", h.values))?;
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("s = 2, (2,1,2,1) twice, HF 1 2 3 4, primes {:?}", primes(&r)))
}

fn primes(r: &DecompositionReport) -> Vec<u64> {
    r.components.iter().map(|c| c.prime).collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = run_fixture("double_line.ideal", &audited(42))?;
    check(r.s == 1, format!("s = {}", r.s))?;
    let c = &r.components[0];
    check(
        (c.multiplicity, c.absolute_count, c.absolute_degree) == (2, 1, 1),
        format!("component {:?}", shape(&r)),
    )?;
    check(!c.isolating_polys_mod_p.is_empty(), "no isolating polynomials")?;
    check(c.hilbert.is_none() && c.initial_ideal.is_none(), "unexpected Hilbert data")?;
    within(Duration::from_secs(10), start)?;
    Ok(format!("s = 1, multiplicity 2, r = 1, {} isolating polys", c.isolating_polys_mod_p.len()))
}

/// Squarefree part, made monic.
fn squarefree_part(f: &MultiPoly<Rationals>, var: usize) -> UniPoly<Rationals> {
    let u = f.to_upoly(var).expect("univariate");
    let fl = factor_univariate_q(&u);
    let mut acc = UniPoly::one(Rationals);
    for (g, _) in &fl.factors {
        acc = &acc * g;
    }
    acc.monic()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let r = run_fixture("degree4.ideal", &audited(42))?;
    check(r.s == 1, format!("s = {}", r.s))?;
    check(shape(&r) == vec![(4, 1, 4, 1)], format!("components {:?}", shape(&r)))?;

    // eliminate X before any coordinate change, with both backends; Z = 1
    // dehomogenizes so both sides become univariate in Y
    let f = parse_poly("X^2 - 2*Z^2", &XYZ).unwrap();
    let g = parse_poly("Y^2 - X*Z", &XYZ).unwrap();
    let res = resultant(&f, &g, 0).map_err(|e| e.to_string())?;
    let want = parse_poly("Y^4 - 2*Z^4", &XYZ).unwrap();
    let ratio_ok = res.div_exact(&want).is_some_and(|q| q.is_constant());
    check(ratio_ok, format!("resultant {res}"))?;
    let idl = Ideal::new(Rationals, 3, vec![f, g]).unwrap();
    let elim = eliminate(&idl, &[0]).map_err(|e| e.to_string())?;
    check(elim.len() == 1, format!("elimination basis {elim:?}"))?;
    let one_z = |p: &MultiPoly<Rationals>| p.eval_partial(&[(2, rat(1))]);
    check(
        squarefree_part(&one_z(&elim[0]), 1) == squarefree_part(&one_z(&res), 1),
        format!("elimination {} vs resultant {}", elim[0], res),
    )?;
    check(
        elim[0].div_exact(&want).is_some_and(|q| q.is_constant()),
        format!("elimination {}", elim[0]),
    )?;
    within(Duration::from_secs(30), start)?;
    Ok("s = 1, (4,1,4,1); elimination and resultant agree with Y^4 - 2Z^4".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let p = 32003;
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let gens: Vec<MultiPoly<Rationals>> =
            (0..k).map(|_| {
                let d = rng.gen_range(1..=4);
                random_poly(&mut rng, n, d, 3, 5)
            }).collect();
        let idl = fp_ideal(&gens, n, p);
        if idl.generators().is_empty() {
            continue;
        }
        let cfg = GbConfig { audit: true, ..GbConfig::default() };
        let gb = buchberger_with(&idl, &TermOrder::DegLex, &cfg).map_err(|e| e.to_string())?;
        let m = initial_ideal(&gb).map_err(|e| e.to_string())?;
        let h = affine_hilbert_function(&m, 8).map_err(|e| e.to_string())?;
        let oracle = macaulay_hf(idl.generators(), n, 8);
        check(h.values[..=8] == oracle[..], format!("ideal {:?}: staircase {:?} vs {:?}", gens, h.values, oracle))?;
        checked += 1;
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{checked} random ideals, HF(0..=8) agree"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut ok, mut exhausted, mut total) = (0, 0, 0);
    let mut slowest = (Duration::ZERO, 0, 0);
    while total < 24 {
        let (df, dg) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        // dense top forms are coprime, so no component lies at infinity
        // and the affine degree is the full product
        let f = dense_top_poly(&mut rng, 3, df, 4, 6);
        let g = dense_top_poly(&mut rng, 3, dg, 4, 6);
        let idl = Ideal::new(Rationals, 3, vec![f, g]).unwrap().with_dimension(1);
        let seed = rng.gen();
        let t = Instant::now();
        let out = decompose(&idl, &audited(seed));
        if t.elapsed() > slowest.0 {
            slowest = (t.elapsed(), df, dg);
        }
        match out {
            Ok(r) => {
                let sum: usize = r.components.iter().map(|c| c.multiplicity * c.rational_degree).sum();
                check(
                    sum == (df * dg) as usize && sum == r.total_degree,
                    format!("degrees {df}*{dg} but components sum to {sum} ({:?})", shape(&r)),
                )?;
                ok += 1;
            }
            // not a complete intersection curve: draw again
            Err(PipelineError::DimensionMismatch { .. }) => continue,
            Err(PipelineError::RetryExhausted { .. }) => exhausted += 1,
            Err(e) => return Err(format!("unexpected error {e}")),
        }
        total += 1;
    }
    check(exhausted * 10 <= total, format!("{exhausted}/{total} runs exhausted retries"))?;
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "{ok}/{total} succeeded with Bezout-conserving degrees, {exhausted} exhausted, slowest {:.2?} ({}x{})",
        slowest.0, slowest.1, slowest.2
    ))
}

fn comparable(r: &DecompositionReport) -> Vec<String> {
    r.components
        .iter()
        .map(|c| {
            format!(
                "{:?} {:?} {:?}",
                (c.rational_degree, c.multiplicity, c.absolute_count, c.absolute_degree),
                c.initial_ideal.as_ref().map(|m| m.generators().to_vec()),
                c.hilbert.as_ref().map(|h| h.values.clone()),
            )
        })
        .collect()
}

/// Reruns `name` under the coordinates of a successful run with an override
/// prime not used before; `None` when these coordinates admit no other prime.
fn rerun_other_prime(name: &str, seed: u64) -> Option<(DecompositionReport, DecompositionReport)> {
    let Ok(base) = run_fixture(name, &audited(seed)) else {
        return None;
    };
    // attempt k of seed s uses the coordinates of attempt 0 of seed s + k
    let seed = seed + base.attempts as u64 - 1;
    let used: BTreeSet<u64> = base.components.iter().map(|c| c.prime).collect();
    let mut candidates: BTreeSet<u64> =
        base.components.iter().flat_map(|c| admissible_primes(&c.rational_factor)).collect();
    if base.components.iter().all(|c| c.rational_factor.deg() < 2) {
        candidates.extend(
            std::iter::successors(Some(next_prime(base.total_degree as u64 + 1)), |&p| Some(next_prime(p + 1))).take(20),
        );
    }
    for p in candidates.into_iter().filter(|p| !used.contains(p)) {
        let cfg = PipelineConfig { prime_override: Some(p), ..audited(seed) };
        if let Ok(again) = run_fixture(name, &cfg) {
            if again.attempts == 1 && again.components.iter().any(|c| c.prime == p) {
                return Some((base, again));
            }
        }
    }
    None
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for name in ["four_lines.ideal", "double_line.ideal", "degree4.ideal"] {
        let mut found = None;
        for seed in 42..62 {
            if let Some(pair) = rerun_other_prime(name, seed) {
                found = Some((seed, pair));
                break;
            }
        }
        let (seed, (base, again)) = found.ok_or(format!("{name}: no seed admits a second prime"))?;
        check(again.coord_change == base.coord_change, format!("{name}: coordinates differ"))?;
        let (a, b) = (primes(&base), primes(&again));
        check(
            again.s == base.s && comparable(&again) == comparable(&base),
            format!("{name}: reports differ between primes {a:?} and {b:?}"),
        )?;
        notes.push(format!("{name} seed {seed} {a:?}->{b:?}"));
    }
    within(Duration::from_secs(60), start)?;
    Ok(notes.join(", "))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let primes = [2u64, 3, 5, 7, 13, 101, 32003, 2147483647];
    for i in 0..500 {
        let p = primes[rng.gen_range(0..primes.len())];
        let field = PrimeField::new(p).unwrap();
        let deg = rng.gen_range(1..=20);
        let mut c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
        c[deg] = rng.gen_range(1..p);
        // sometimes square a factor to exercise multiplicities
        let mut f = UniPoly::new(field, c);
        if i % 5 == 0 && deg <= 10 {
            f = &f * &f;
        }
        let fl = factor_univariate_fp(&f);
        check(fl.expand_in(&field) == f, format!("F_{p}: {:?}", f.coeffs()))?;
        check(fl.weighted_degree(|g| g.deg()) == f.deg(), format!("F_{p} degree {:?}", f.coeffs()))?;
    }
    for i in 0..500 {
        let deg = rng.gen_range(1..=20);
        let mut c: Vec<Rational> = (0..=deg).map(|_| ratio(rng.gen_range(-50..=50), rng.gen_range(1..=6))).collect();
        if c[deg] == rat(0) {
            c[deg] = rat(1);
        }
        let mut f = UniPoly::new(Rationals, c);
        if i % 4 == 0 && deg <= 10 {
            f = &f * &UniPoly::new(Rationals, vec![rat(rng.gen_range(-9..=9)), rat(1)]);
        }
        let fl = factor_univariate_q(&f);
        check(fl.expand_in(&Rationals) == f, format!("Q: {f:?}"))?;
        check(fl.weighted_degree(|g| g.deg()) == f.deg(), format!("Q degree: {f:?}"))?;
    }
    let bprimes = [13u64, 17, 101, 32003];
    for _ in 0..200 {
        let p = bprimes[rng.gen_range(0..bprimes.len())];
        let field = PrimeField::new(p).unwrap();
        let nf = rng.gen_range(1..=3);
        let mut f = MultiPoly::one(field, 2);
        for _ in 0..nf {
            let budget = 12 - f.total_degree();
            if budget == 0 {
                break;
            }
            let d = rng.gen_range(1..=budget.min(6));
            let g = random_poly(&mut rng, 2, d, 5, 40).map_coeffs(field, |c| field.from_rational(c).unwrap());
            if g.is_zero() || f.total_degree() + g.total_degree() > 12 {
                continue;
            }
            f = &f * &g;
        }
        if f.is_constant() {
            continue;
        }
        let fl = factor_bivariate_fp(&f).map_err(|e| format!("{f}: {e}"))?;
        check(fl.expand_in(&field, 2) == f, format!("bivariate F_{p}: {f}"))?;
        check(
            fl.weighted_degree(|g| g.total_degree() as usize) == f.total_degree() as usize,
            format!("bivariate degree F_{p}: {f}"),
        )?;
    }
    within(Duration::from_secs(300), start)?;
    Ok("1000 univariate and 200 bivariate factorizations reconstruct".into())
}

fn main() -> ExitCode {
    let before = audited_basis_count();
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 reduction of the Q(sqrt2, sqrt3) ideal mod 23", criterion_1),
        ("2 prime-condition audit", criterion_2),
        ("3 four-lines fixture", criterion_3),
        ("4 double-line fixture", criterion_4),
        ("5 degree-4 splitting fixture", criterion_5),
        ("6 Hilbert function oracle", criterion_6),
        ("7 Bezout conservation", criterion_7),
        ("8 prime independence", criterion_8),
        ("9 factorization reconstruction", criterion_9),
    ];
    let mut failed = 0;
    let mut audit_ok = true;
    for (name, f) in criteria {
        let start = Instant::now();
        let out = f();
        let t = start.elapsed();
        match out {
            Ok(msg) => println!("PASS criterion {name} ({t:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                // an audit failure surfaces as a pipeline error inside 3-7
                if msg.contains("audit") {
                    audit_ok = false;
                }
                println!("FAIL criterion {name} ({t:.2?}): {msg}");
            }
        }
    }
    let audited = audited_basis_count() - before;
    if audit_ok && audited > 0 {
        println!("PASS criterion 10 Groebner audit: {audited} bases audited, no failures");
    } else {
        failed += 1;
        println!("FAIL criterion 10 Groebner audit: {audited} bases audited");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
