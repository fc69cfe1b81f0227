//! Acceptance suite: one line per criterion, nonzero exit if any is red.
//!
//! Run with `cargo test -p spinrep --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinrep::app::{run, Command, OperatorSpec, QrepAction, RunConfig};
use spinrep::exchange::{basis_state, S3_TRANSPOSITION_CLASS_IRREPS};
use spinrep::multiplets::pair_sum_spectrum_multiplet;
use spinrep::qrep::compare_cayley_tables;
use spinrep::rotations::{spectral_distance, stated_j_spectra, ClaimStatus};
use spinrep::{
    dot_op, dual_family, exchange_op, h0_spectrum_multiplet, heisenberg, hermitian_eigs,
    irrep_decomposition, j_class_ops, lie_closure, multiplicities, proposition_ledger, q_lift,
    qtilde, schroedinger_hamiltonian, schroedinger_hamiltonian_exact, schroedinger_poly,
    span_residual, spectrum_of, swap_oracle, swap_oracle_exact, vrep, vrep_word, AlgebraicValue,
    ComplexMatrix, ConstantConvention, Permutation, RationalMatrix, SiteSystem, SpectrumReport,
    SpinQuantum, Suite,
};

type Outcome = Result<Vec<Check>, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        ok,
        detail: detail.into(),
    }
}

fn sys(twice: u32, n: usize) -> SiteSystem {
    SiteSystem::new(SpinQuantum::from_twice(twice), n).expect("valid system")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = sys(2, 3);
    let h = schroedinger_hamiltonian(&s).map_err(err)?;
    let exact = schroedinger_hamiltonian_exact(&s).map_err(err)?;
    let r = spectrum_of(&h, Some(&exact)).map_err(err)?;
    let blocks = irrep_decomposition(&r, &S3_TRANSPOSITION_CLASS_IRREPS).map_err(err)?;
    let elapsed = start.elapsed().as_secs_f64();

    let i = AlgebraicValue::integer;
    let copies: Vec<(usize, usize)> = blocks.iter().map(|b| (b.copies, b.irrep_dim)).collect();
    Ok(vec![
        check(
            "spectrum",
            r.matches(&[(i(-3), 1), (i(0), 16), (i(3), 10)]),
            r.summary(),
        ),
        check("exact_verified", r.all_exact_verified(), ""),
        check(
            "trace",
            exact.trace() == BigRational::from_integer(BigInt::from(27)),
            format!("{}", exact.trace()),
        ),
        check(
            "irrep copies",
            copies == [(1, 1), (8, 2), (10, 1)],
            format!("(copies, dim) = {copies:?}"),
        ),
        check("runtime < 5 s", elapsed < 5.0, format!("{elapsed:.3} s")),
    ])
}

fn criterion_2() -> Outcome {
    let mut checks = Vec::new();
    for twice in 1..=4 {
        for n in 2..=3 {
            let s = sys(twice, n);
            let mut worst: f64 = 0.0;
            for i in 1..=n {
                for j in i + 1..=n {
                    let t = Permutation::transposition(n, i, j).map_err(err)?;
                    let d = exchange_op(&s, i, j)
                        .map_err(err)?
                        .max_abs_diff(&swap_oracle(&s, &t).map_err(err)?);
                    worst = worst.max(d);
                }
            }
            checks.push(check(
                format!("S={} N={n}", SpinQuantum::from_twice(twice)),
                worst <= 1e-10,
                format!("max deviation {worst:.2e}"),
            ));
        }
    }
    let p = exchange_op(&sys(1, 2), 1, 2).map_err(err)?;
    let recognized = RationalMatrix::recognize(&p, 1e-12, 64).map_err(err)?;
    let swap = RationalMatrix::from_integer_rows(&[
        &[1, 0, 0, 0],
        &[0, 0, 1, 0],
        &[0, 1, 0, 0],
        &[0, 0, 0, 1],
    ])
    .map_err(err)?;
    checks.push(check(
        "S=1/2 pair is the swap matrix",
        recognized == swap,
        "",
    ));
    Ok(checks)
}

fn criterion_3() -> Outcome {
    let mut checks = Vec::new();
    for twice in 1..=7u32 {
        let p = schroedinger_poly(SpinQuantum::from_twice(twice)).map_err(err)?;
        let t = twice as i64;
        let casimir = BigRational::new(BigInt::from(t * (t + 2)), BigInt::from(4));
        let mut ok = p.degree() == twice as usize;
        for q in 1..=t + 1 {
            let x = BigRational::new(BigInt::from(q * (q - 1)), BigInt::from(2)) - &casimir;
            let want = if (t + q - 1) % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            ok &= p.eval(&x) == want;
        }
        checks.push(check(
            format!("S={}", SpinQuantum::from_twice(twice)),
            ok,
            format!("{} grid points", twice + 1),
        ));
    }
    Ok(checks)
}

fn mismatches(a: &SpectrumReport, b: &SpectrumReport) -> usize {
    let pa = a.exact_pairs();
    let pb = b.exact_pairs();
    let missing = pa.iter().filter(|x| !pb.contains(x)).count();
    let extra = pb.iter().filter(|x| !pa.contains(x)).count();
    missing + extra + (a.classes.len() - pa.len()) + (b.classes.len() - pb.len())
}

fn criterion_4() -> Outcome {
    let mut checks = Vec::new();
    let systems = [
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (1, 6),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 2),
        (3, 3),
    ];
    let mut total = 0;
    for (twice, n) in systems {
        let s = sys(twice, n);
        for conv in [ConstantConvention::Zero, ConstantConvention::CasimirSum] {
            let fast = h0_spectrum_multiplet(&s, conv).map_err(err)?;
            let dense =
                spectrum_of(&heisenberg(&s, conv).map_err(err)?.matrix, None).map_err(err)?;
            total += mismatches(&fast, &dense);
        }
    }
    checks.push(check(
        "multiplet = dense on 10 systems, 2 conventions",
        total == 0,
        format!("{total} mismatches"),
    ));

    let fr = AlgebraicValue::rational;
    let s2 = sys(1, 2);
    let pair = pair_sum_spectrum_multiplet(&s2).map_err(err)?;
    let dense2 = spectrum_of(&dot_op(&s2, 1, 2).map_err(err)?, None).map_err(err)?;
    let want2 = [(fr(-3, 4), 1), (fr(1, 4), 3)];
    checks.push(check(
        "(1/2,2) pair sum",
        pair.matches(&want2) && dense2.matches(&want2),
        pair.summary(),
    ));

    let s3 = sys(1, 3);
    let pair3 = pair_sum_spectrum_multiplet(&s3).map_err(err)?;
    let mut sum = ComplexMatrix::zeros(8);
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        sum = &sum + &dot_op(&s3, i, j).map_err(err)?;
    }
    let dense3 = spectrum_of(&sum, None).map_err(err)?;
    let want3 = [(fr(-3, 4), 4), (fr(3, 4), 4)];
    checks.push(check(
        "(1/2,3) pair sum",
        pair3.matches(&want3) && dense3.matches(&want3),
        pair3.summary(),
    ));

    let table = multiplicities(SpinQuantum::ONE, 3).map_err(err)?;
    let degeneracies: Vec<u128> = table
        .entries()
        .map(|(s, m)| m * (s.twice() as u128 + 1))
        .collect();
    checks.push(check(
        "(1,3) multiplet degeneracies",
        degeneracies == [1, 9, 10, 7],
        format!("{degeneracies:?}"),
    ));
    Ok(checks)
}

fn criterion_5() -> Outcome {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(20240501);

    let s = sys(2, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = Permutation::random(3, &mut rng);
        let b = Permutation::random(3, &mut rng);
        let lhs = vrep(&s, &a.compose(&b).map_err(err)?).map_err(err)?;
        let rhs = &vrep(&s, &a).map_err(err)? * &vrep(&s, &b).map_err(err)?;
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    checks.push(check(
        "vrep homomorphism, 50 pairs",
        worst <= 1e-10,
        format!("{worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = Permutation::random(3, &mut rng);
        let b = Permutation::random(3, &mut rng);
        let lhs = q_lift(&s, &a.compose(&b).map_err(err)?).map_err(err)?;
        let rhs = &q_lift(&s, &a).map_err(err)? * &q_lift(&s, &b).map_err(err)?;
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    checks.push(check(
        "q_lift homomorphism, 50 pairs",
        worst <= 1e-10,
        format!("{worst:.2e}"),
    ));

    let c = Permutation::cycle(3, &[1, 2, 3]).map_err(err)?;
    let u = swap_oracle_exact(&s, &c).map_err(err)?;
    let cube = u.mul(&u).map_err(err)?.mul(&u).map_err(err)?;
    let fcube = swap_oracle(&s, &c).map_err(err)?.pow(3);
    checks.push(check(
        "swap((123))^3 = I",
        cube == RationalMatrix::identity(27) && fcube == ComplexMatrix::identity(27),
        "exact and floating point",
    ));

    // |↓↑↑⟩ under P(23)·P(12); level 0 is m = +1/2
    let half = sys(1, 3);
    let pol = vrep_word(&half, &[(2, 3), (1, 2)]).map_err(err)?;
    let out = pol.apply(&basis_state(&half, &[1, 0, 0]));
    let want = basis_state(&half, &[0, 0, 1]);
    checks.push(check(
        "sequential exchange |↓↑↑⟩ → |↑↑↓⟩",
        out == want,
        "bit-exact",
    ));
    Ok(checks)
}

fn criterion_6() -> Outcome {
    let s = sys(1, 2);
    let p = exchange_op(&s, 1, 2).map_err(err)?;
    let q = q_lift(&s, &Permutation::transposition(2, 1, 2).map_err(err)?).map_err(err)?;
    let fit = span_residual(&p, &[ComplexMatrix::identity(4), q]).map_err(err)?;
    // projection onto the orthogonal pair {1, Q}: both coefficients 1/2
    let closed_form = std::f64::consts::SQRT_2;
    Ok(vec![
        check(
            "residual > 1e-6",
            fit.residual > 1e-6,
            format!("{:.12}", fit.residual),
        ),
        check(
            "matches closed form √2",
            (fit.residual - closed_form).abs() < 1e-12,
            format!("{:.2e} off", (fit.residual - closed_form).abs()),
        ),
    ])
}

fn criterion_7() -> Outcome {
    let s = sys(2, 3);
    let j = j_class_ops(&s).map_err(err)?;
    let (j1_want, j3_want) = stated_j_spectra();
    let e1 = hermitian_eigs(&j.j1).map_err(err)?;
    let e3 = hermitian_eigs(&j.j3).map_err(err)?;
    let d1 = spectral_distance(&e1.values, &j1_want);
    let d3 = spectral_distance(&e3.values, &j3_want);
    let s1 = spectrum_of(&j.j1, None).map_err(err)?;
    let s3 = spectrum_of(&j.j3, None).map_err(err)?;
    let comm = (&(&j.j1 * &j.j3) - &(&j.j3 * &j.j1)).max_abs();

    let mut checks = vec![
        check(
            "c1 J1 spectrum {-3[4], 3[5], 0[18]}",
            d1 <= 1e-8,
            format!("found {} (distance {d1:.3})", s1.summary()),
        ),
        check(
            "c3 J3 spectrum {±4√3[9], 0[9]}",
            d3 <= 1e-8,
            format!("found {} (distance {d3:.1e})", s3.summary()),
        ),
        check(
            "[J1,J3] = 0",
            comm <= 1e-10 && j.j1_j3_commutator <= 1e-10,
            format!("max entry {comm:.1e}"),
        ),
    ];
    for eps in [-1, 0] {
        let d = dual_family(&s, eps, [0.0, 0.0]).map_err(err)?;
        checks.push(check(
            format!("dual orthogonality ε={eps}"),
            d.orthogonality_residual <= 1e-10,
            format!(
                "residual {:.3}, pairing rank {}",
                d.orthogonality_residual, d.pairing_rank
            ),
        ));
    }
    Ok(checks)
}

fn criterion_8() -> Outcome {
    let names: Vec<String> = ["(1 2)", "(1 3)", "(2 3)"]
        .iter()
        .map(|c| format!("Q{c}"))
        .collect();
    let perms: Vec<Permutation> = ["(1 2)", "(1 3)", "(2 3)"]
        .iter()
        .map(|c| Permutation::parse_cycles(3, c).expect("valid"))
        .collect();
    let parent: Vec<ComplexMatrix> = perms
        .iter()
        .map(|p| qtilde(SpinQuantum::ONE, p))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let s = sys(2, 3);
    let lifted: Vec<ComplexMatrix> = perms
        .iter()
        .map(|p| q_lift(&s, p))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let closure = lie_closure(&parent, 8).map_err(err)?;
    let cmp = compare_cayley_tables(&parent, &lifted, &names, 8, 1e-10).map_err(err)?;
    Ok(vec![
        check(
            "parent stabilizes at depth 3",
            closure.stabilized && closure.stabilization_depth == 3,
            format!("dims by depth {:?}", closure.dims_by_depth),
        ),
        check(
            "lifted structure constants match",
            cmp.matches,
            format!(
                "max deviation {:.1e}, lifted dims {:?}",
                cmp.max_constant_deviation, cmp.other_dims_by_depth
            ),
        ),
    ])
}

const EXPECTED_CLAIMS: [&str; 24] = [
    "orep.h0_n2.o_identity",
    "orep.h0_n3.o_identity",
    "orep.o_lift.commute",
    "orep.o_lift.square",
    "orep.p12_not_in_q_span",
    "prop5.1.j2",
    "prop5.1.jz",
    "prop5.1.sk2",
    "prop5.2.global",
    "prop6.1.k_disjoint",
    "prop6.1.k_overlap",
    "prop6.2.biparot",
    "prop7.3.parot_casimir",
    "prop7.3.sk2_in_span_b",
    "prop7.4.biparot_casimir",
    "prop7.4.not_in_span_b",
    "prop7.5.gear_conjugate_casimir",
    "prop7.5.gear_inverse_casimir",
    "prop7.5.not_in_span_b",
    "qsect6.dual_orthogonality.eps_0",
    "qsect6.dual_orthogonality.eps_m1",
    "qsect6.j1_j3_commute",
    "qsect6.j1_spectrum",
    "qsect6.j3_parent_identity",
];

fn criterion_9() -> Outcome {
    let mut checks = Vec::new();
    for (twice, n) in [(2, 3), (1, 3)] {
        let s = sys(twice, n);
        let label = format!("S={} N={n}", SpinQuantum::from_twice(twice));
        let claims = proposition_ledger(&s, Suite::All, 100, 42, 1e-10).map_err(err)?;
        let ids: Vec<&str> = claims.iter().map(|c| c.claim_id.as_str()).collect();
        let unique: BTreeSet<&str> = ids.iter().copied().collect();
        let mut expected: BTreeSet<&str> = EXPECTED_CLAIMS.iter().copied().collect();
        expected.insert("qsect6.j3_spectrum");
        checks.push(check(
            format!("{label}: one report per claim"),
            unique.len() == ids.len() && unique == expected,
            format!("{} reports", ids.len()),
        ));

        let status = |id: &str| claims.iter().find(|c| c.claim_id == id).map(|c| c.status);
        let passing: Vec<&str> = ids
            .iter()
            .copied()
            .filter(|id| {
                id.starts_with("prop5.") || *id == "prop6.1.k_disjoint" || *id == "prop6.2.biparot"
            })
            .collect();
        let bad: Vec<&str> = passing
            .iter()
            .copied()
            .filter(|id| status(id) != Some(ClaimStatus::Pass))
            .collect();
        checks.push(check(
            format!("{label}: prop5, disjoint parot, biparot PASS"),
            bad.is_empty() && passing.len() == 6,
            if bad.is_empty() {
                "100 samples, seed 42".into()
            } else {
                format!("not passing: {bad:?}")
            },
        ));

        let flagged: Vec<String> = ["prop6.1.k_overlap", "prop7.5.gear_inverse_casimir"]
            .iter()
            .map(|id| {
                let c = claims.iter().find(|c| c.claim_id == *id).expect("present");
                format!(
                    "{id} {} {:.3}",
                    serde_json::to_value(c.status)
                        .expect("serializable")
                        .as_str()
                        .unwrap_or_default(),
                    c.max_residual
                )
            })
            .collect();
        checks.push(check(
            format!("{label}: contradicted claims flagged"),
            ["prop6.1.k_overlap", "prop7.5.gear_inverse_casimir"]
                .iter()
                .all(|id| status(id) == Some(ClaimStatus::DiscrepancyWithPaper)),
            flagged.join("; "),
        ));

        let orep_ok = claims
            .iter()
            .filter(|c| c.claim_id.starts_with("orep."))
            .all(|c| c.status != ClaimStatus::Fail);
        let failures: Vec<&str> = claims
            .iter()
            .filter(|c| c.is_failure())
            .map(|c| c.claim_id.as_str())
            .collect();
        checks.push(check(
            format!("{label}: no asserted claim fails"),
            orep_ok && failures.is_empty(),
            format!("{failures:?}"),
        ));

        let mut cfg = RunConfig::new(Command::Verify { suite: Suite::All }, s.spin(), n);
        cfg.timestamp = false;
        let out = run(&cfg).map_err(err)?;
        checks.push(check(
            format!("{label}: verify exits 0"),
            out.exit_code == 0,
            "",
        ));
    }
    Ok(checks)
}

fn criterion_10() -> Outcome {
    let commands = [
        Command::Spectrum {
            operator: OperatorSpec::Schroedinger,
        },
        Command::Multiplets,
        Command::Verify { suite: Suite::All },
        Command::Qrep {
            action: QrepAction::Dual,
            epsilon: -1,
            kernel: [0.5, -0.25],
        },
    ];
    let mut checks = Vec::new();
    for command in commands {
        let name = format!("{command:?}");
        let mut cfg = RunConfig::new(command, SpinQuantum::ONE, 3);
        cfg.timestamp = false;
        let a = run(&cfg).map_err(err)?;
        let b = run(&cfg).map_err(err)?;
        let label: String = name.chars().take_while(|c| c.is_alphanumeric()).collect();
        checks.push(check(
            label,
            a.text == b.text && a.report == b.report,
            format!("{} bytes", a.text.len()),
        ));
    }
    Ok(checks)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("class-sum spectrum on three spin-1 sites", criterion_1),
        ("exchange polynomial equals the swap oracle", criterion_2),
        ("polynomial sign law", criterion_3),
        ("multiplet method equals dense diagonalization", criterion_4),
        ("representation laws", criterion_5),
        ("P(12) outside span{1, Q(12)}", criterion_6),
        ("J operator spectra and dual family", criterion_7),
        ("Lie closure and lifted structure constants", criterion_8),
        ("claim ledger completeness", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut red = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = f();
        let secs = started.elapsed().as_secs_f64();
        let (ok, lines) = match outcome {
            Ok(checks) => (
                checks.iter().all(|c| c.ok),
                checks
                    .iter()
                    .map(|c| {
                        let mark = if c.ok { "ok " } else { "RED" };
                        if c.detail.is_empty() {
                            format!("    {mark} {}", c.name)
                        } else {
                            format!("    {mark} {}: {}", c.name, c.detail)
                        }
                    })
                    .collect::<Vec<_>>(),
            ),
            Err(e) => (false, vec![format!("    error: {e}")]),
        };
        if !ok {
            red += 1;
        }
        println!(
            "criterion {:>2}: {} {title} ({secs:.2} s)",
            k + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        for line in lines {
            println!("{line}");
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - red);
    if red == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
