//! Acceptance suite: one line per criterion, exact integer comparisons,
//! each criterion also held to a wall-clock budget. Exits non-zero when
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sufree::atoms::{atom_dfa, atom_table, atoms};
use sufree::classes::{enumerate_class, vsf_generators, wsf_generators};
use sufree::exec::Limits;
use sufree::minimize::{is_isomorphic, minimize, quotient_complexity};
use sufree::ops::{boolean, concat, is_suffix_free, reverse, star, BooleanOp};
use sufree::semigroup::generate_named;
use sufree::verify::{check_semigroup_classes, REFERENCE_ATOM_MAXIMA};
use sufree::witnesses::{binary_product_left, binary_product_pair, d5, d5_dialect, d6, d6_dialect, verify_pred_word};
use sufree::{transition_semigroup, Dfa, Exec, SuffixFreeClass};

use common::{brute_force_quotients, empty_over, random_dfa, random_transformation};

type Outcome = Result<(), String>;

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn power(n: usize) -> usize {
    (1 << (n - 2)) + 1
}

fn wsf_size(n: usize) -> usize {
    (n - 1).pow(n as u32 - 2) + (n - 2)
}

fn expect(what: &str, got: usize, want: usize, misses: &mut Vec<String>) {
    if got != want {
        misses.push(format!("{what}: {got} != {want}"));
    }
}

fn finish(misses: Vec<String>) -> Outcome {
    if misses.is_empty() {
        Ok(())
    } else {
        Err(misses.join("; "))
    }
}

fn class_cardinalities() -> Outcome {
    let mut misses = Vec::new();
    let table = [
        (SuffixFreeClass::Bsf, 3, 3),
        (SuffixFreeClass::Bsf, 4, 15),
        (SuffixFreeClass::Bsf, 5, 115),
        (SuffixFreeClass::Vsf, 4, 13),
        (SuffixFreeClass::Vsf, 5, 73),
        (SuffixFreeClass::Wsf, 4, 11),
        (SuffixFreeClass::Wsf, 5, 67),
    ];
    for (class, n, size) in table {
        let got = enumerate_class(n, class).map_err(|e| e.to_string())?.len();
        expect(&format!("|{}({n})|", class.name()), got, size, &mut misses);
    }
    finish(misses)
}

fn generator_correctness() -> Outcome {
    let mut misses = Vec::new();
    for n in 4..=7 {
        let vsf = generate_named(n, &vsf_generators(n).unwrap()).unwrap();
        if vsf.sorted_elements() != enumerate_class(n, SuffixFreeClass::Vsf).unwrap().elements {
            misses.push(format!("Msf({n}) does not generate Vsf({n})"));
        }
        let wsf = generate_named(n, &wsf_generators(n).unwrap()).unwrap();
        if wsf.sorted_elements() != enumerate_class(n, SuffixFreeClass::Wsf).unwrap().elements {
            misses.push(format!("G({n}) does not generate Wsf({n})"));
        }
    }
    finish(misses)
}

fn wsf_formula() -> Outcome {
    let mut misses = Vec::new();
    for n in 4..=8 {
        let got = generate_named(n, &wsf_generators(n).unwrap()).unwrap().len();
        expect(&format!("|G({n})|"), got, wsf_size(n), &mut misses);
    }
    finish(misses)
}

fn star_bound() -> Outcome {
    let mut misses = Vec::new();
    for n in 6..=10 {
        let got = quotient_complexity(&star(&d5_dialect(n, "a,b,-").unwrap()));
        expect(&format!("star n={n}"), got, power(n), &mut misses);
    }
    finish(misses)
}

fn ternary_product() -> Outcome {
    let mut misses = Vec::new();
    for m in 6..=8 {
        for n in 6..=8 {
            let got = quotient_complexity(&concat(&d5(m).unwrap(), &d5_dialect(n, "b,c,a").unwrap()).unwrap());
            expect(&format!("product ({m},{n})"), got, (m - 1) * (1 << (n - 2)) + 1, &mut misses);
        }
    }
    finish(misses)
}

fn binary_product() -> Outcome {
    let mut misses = Vec::new();
    for (m, n) in [(7, 8), (8, 9), (6, 7)] {
        let (l, r) = binary_product_pair(m, n).unwrap();
        let got = quotient_complexity(&concat(&l, &r).unwrap());
        expect(&format!("binary product ({m},{n})"), got, (m - 1) * (1 << (n - 2)) + 1, &mut misses);
    }
    finish(misses)
}

fn boolean_bound(op: BooleanOp, m: usize, n: usize) -> usize {
    match op {
        BooleanOp::Union | BooleanOp::SymmetricDifference => m * n - (m + n - 2),
        BooleanOp::Intersection => m * n - 2 * (m + n - 3),
        BooleanOp::Difference => m * n - (m + 2 * n - 4),
    }
}

fn boolean_sweep(pairs: &[(usize, usize)], left: impl Fn(usize) -> Dfa, right: impl Fn(usize) -> Dfa) -> Outcome {
    let mut misses = Vec::new();
    for &(m, n) in pairs {
        let (l, r) = (left(m), right(n));
        for op in BooleanOp::ALL {
            let got = quotient_complexity(&boolean(&l, &r, op).map_err(|e| e.to_string())?);
            expect(&format!("{} ({m},{n})", op.name()), got, boolean_bound(op, m, n), &mut misses);
        }
    }
    finish(misses)
}

fn boolean_d5() -> Outcome {
    boolean_sweep(&[(6, 6), (7, 7)], |m| d5_dialect(m, "a,b,-").unwrap(), |n| d5_dialect(n, "-,b,a").unwrap())
}

fn boolean_d6() -> Outcome {
    let pairs: Vec<(usize, usize)> = (4..=7).flat_map(|m| (4..=7).map(move |n| (m, n))).collect();
    boolean_sweep(&pairs, |m| d6_dialect(m, "a,b,-,d,e").unwrap(), |n| d6_dialect(n, "b,a,-,d,e").unwrap())
}

fn reversal_bound() -> Outcome {
    let mut misses = Vec::new();
    for n in 4..=10 {
        let got = quotient_complexity(&reverse(&d6_dialect(n, "a,-,c,-,e").unwrap()));
        expect(&format!("reversal n={n}"), got, power(n), &mut misses);
    }
    finish(misses)
}

fn atom_count() -> Outcome {
    let mut misses = Vec::new();
    for n in 4..=7 {
        let d = d6(n).unwrap();
        let count = atoms(&d).unwrap().len();
        expect(&format!("atoms n={n}"), count, power(n), &mut misses);
        expect(&format!("reversal n={n}"), quotient_complexity(&reverse(&d)), count, &mut misses);
    }
    finish(misses)
}

fn atom_complexities() -> Outcome {
    let mut misses = Vec::new();
    for n in 4..=7 {
        let table = atom_table(&d6(n).unwrap()).unwrap();
        let want: Vec<usize> = REFERENCE_ATOM_MAXIMA[n - 4].iter().map(|&x| x as usize).collect();
        if table.maxima != want {
            misses.push(format!("maxima n={n}: {:?} != {want:?}", table.maxima));
        }
        for row in table.rows.iter().filter(|r| !r.met) {
            misses.push(format!("n={n} basis {}: {} != {}", row.basis, row.complexity, row.bound));
        }
    }
    finish(misses)
}

fn syntactic_complexity() -> Outcome {
    let mut misses = Vec::new();
    for n in 4..=7 {
        let got = transition_semigroup(&d6(n).unwrap()).unwrap().len();
        expect(&format!("syntactic n={n}"), got, wsf_size(n), &mut misses);
    }
    finish(misses)
}

fn class_separation() -> Outcome {
    let mut misses = Vec::new();
    for n in 4..=7 {
        let check = check_semigroup_classes(n, &Limits::default(), Exec::default()).unwrap();
        if !check.incompatible() {
            misses.push(format!("n={n}: {check:?}"));
        }
    }
    finish(misses)
}

fn suffix_freeness() -> Outcome {
    let mut misses = Vec::new();
    let mut witnesses: Vec<(String, Dfa)> = Vec::new();
    for n in 6..=8 {
        witnesses.push((format!("d5({n})"), d5(n).unwrap()));
        witnesses.push((format!("left({n})"), binary_product_left(n).unwrap()));
    }
    for n in 4..=7 {
        witnesses.push((format!("d6({n})"), d6(n).unwrap()));
    }
    for (name, d) in &witnesses {
        if !is_suffix_free(d) {
            misses.push(format!("{name} reported not suffix-free"));
        }
    }
    let a_star = Dfa::from_rows(1, &[('a', &[0])], 0, &[0]).unwrap();
    if is_suffix_free(&a_star) {
        misses.push("a* reported suffix-free".into());
    }
    for n in 4..=7 {
        let d = d6(n).unwrap();
        let finals = std::iter::once(0).chain((1..n - 1).filter(|q| q % 2 == 1)).collect();
        if is_suffix_free(&d.with_finals(finals).unwrap()) {
            misses.push(format!("d6({n}) with 0 final reported suffix-free"));
        }
    }
    finish(misses)
}

fn property_oracles() -> Outcome {
    let mut misses = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..100 {
        let d = random_dfa(&mut rng, 8, 2, 3);
        expect(&format!("random DFA {i}"), quotient_complexity(&d), brute_force_quotients(&d), &mut misses);
    }
    for i in 0..20 {
        let m = minimize(&random_dfa(&mut rng, 5, 2, 2));
        let bases = atoms(&m).unwrap();
        let dfas: Vec<Dfa> = bases.iter().map(|b| atom_dfa(&m, b).unwrap()).collect();
        for x in 0..dfas.len() {
            for y in x + 1..dfas.len() {
                if !boolean(&dfas[x], &dfas[y], BooleanOp::Intersection).unwrap().is_empty_language() {
                    misses.push(format!("minimal DFA {i}: atoms {} and {} overlap", bases[x], bases[y]));
                }
            }
        }
        for q in 0..m.states() {
            let mut union = empty_over(m.alphabet());
            for (b, a) in bases.iter().zip(&dfas) {
                if b.states().contains(&q) {
                    union = boolean(&union, a, BooleanOp::Union).unwrap();
                }
            }
            if !is_isomorphic(&union, &m.with_initial(q).unwrap()) {
                misses.push(format!("minimal DFA {i}: quotient {q} is not a union of atoms"));
            }
        }
    }
    for _ in 0..1000 {
        let n = rng.random_range(1..=8);
        let (r, s, t) = (
            random_transformation(&mut rng, n),
            random_transformation(&mut rng, n),
            random_transformation(&mut rng, n),
        );
        if r.then(&s).then(&t) != r.then(&s.then(&t)) {
            misses.push(format!("composition not associative on {r:?} {s:?} {t:?}"));
        }
    }
    for n in 6..=8 {
        for q in 1..=n - 2 {
            if !verify_pred_word(q, n).unwrap().holds() {
                misses.push(format!("pred_word q={q} n={n}"));
            }
        }
    }
    finish(misses)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 15] = [
        ("semigroup cardinalities", Duration::from_secs(1), class_cardinalities),
        ("generator correctness", Duration::from_secs(30), generator_correctness),
        ("Wsf formula", Duration::from_secs(60), wsf_formula),
        ("star", Duration::from_secs(10), star_bound),
        ("product ternary", Duration::from_secs(10), ternary_product),
        ("product binary", Duration::from_secs(10), binary_product),
        ("boolean, D5 dialects", Duration::from_secs(5), boolean_d5),
        ("boolean, D6 dialects", Duration::from_secs(5), boolean_d6),
        ("reversal", Duration::from_secs(10), reversal_bound),
        ("atom count", Duration::from_secs(60), atom_count),
        ("atom complexities", Duration::from_secs(300), atom_complexities),
        ("syntactic complexity", Duration::from_secs(30), syntactic_complexity),
        ("semigroup classes", Duration::from_secs(60), class_separation),
        ("suffix-freeness", Duration::from_secs(5), suffix_freeness),
        ("property suites", Duration::from_secs(120), property_oracles),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > *budget;
        let pass = outcome.is_ok() && !over;
        failed += usize::from(!pass);
        let mut line = format!(
            "{} {:>2}. {name} ({} ms, budget {} ms)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_millis(),
            budget.as_millis()
        );
        if let Err(detail) = &outcome {
            line.push_str(&format!(": {detail}"));
        }
        if over {
            line.push_str(": over budget");
        }
        println!("{line}");
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
