//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.
//!
//! Expected values that come from published listings and formulas are
//! transcribed here as test data and compared against the engine, never
//! derived from it.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use spinor_casimir::casimir::{
    i2k_of, i2k_polynomial, invariants_up_to, lemma1_verify, split_casimir_from_gammas,
    verify_recurrences, SectorLabel, Sign, SplitCasimir,
};
use spinor_casimir::check::{CheckRecord, Status};
use spinor_casimir::clifford::{build_gamma, GammaRep};
use spinor_casimir::colour::{colour_factor, Closure, LadderSpec};
use spinor_casimir::linalg::{poly_eval_rational, ExactMatrix, TensorShape};
use spinor_casimir::oracles::consistency_checks;
use spinor_casimir::report::{colour_suite, emit_tables, table_rows, TableRow};
use spinor_casimir::scalar::{binomial, rat, ExactScalar, Rational};
use spinor_casimir::spectra::{build_rho_projectors, build_sector_projectors, char_identity_rho};
use spinor_casimir::ybe::{
    prop9_check, rising_factorial_identity, sample_points, sector_r_matrix, sector_ybe_sweep,
    symmetry_check, unitarity_check, ybe_grid, Form, Normalization, ShanWitFamily,
};

type Outcome = Result<Tally, String>;
type Criterion = (&'static str, fn() -> Outcome);

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    discrepancies: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn records(&mut self, recs: &[CheckRecord]) {
        for c in recs {
            match c.status {
                Status::Pass => self.checks += 1,
                Status::Fail => {
                    self.checks += 1;
                    self.failures.push(format!(
                        "{}: {}",
                        c.id,
                        c.witness.clone().unwrap_or_default()
                    ));
                }
                Status::DocumentedDiscrepancy | Status::Skipped => {
                    self.failures
                        .push(format!("{} unexpectedly {:?}", c.id, c.status));
                }
            }
        }
    }
}

fn setup(r: usize) -> Result<(GammaRep, SplitCasimir), String> {
    let rep = build_gamma(r).map_err(|e| e.to_string())?;
    let c = split_casimir_from_gammas(&rep);
    Ok((rep, c))
}

fn int(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------- test data

/// Printed I_{2k}(Ĉ_ρ) as polynomials in Ĉ_ρ, constant term first, for 2k = 4..=12.
fn printed_i2k(r: i128, two_k: usize) -> Option<Vec<Rational>> {
    let p = |e: u32| 2i128.pow(e);
    let s = r - 1;
    let c: Vec<i128> = match two_k {
        4 => vec![-4 * r * (2 * r - 1), 256 * s * s, 1024 * s * s],
        6 => vec![
            64 * r * (r - 2) * (2 * r - 1),
            -128 * s * (18 * r * r - 65 * r + 46),
            -8192 * s * s * (3 * r - 5),
            -32768 * s.pow(3),
        ],
        8 => vec![
            -48 * r * (r - 2) * (2 * r - 1) * (22 * r - 71),
            p(11) * s * (10 * r.pow(3) - 91 * r * r + 217 * r - 132),
            p(13) * s * s * (66 * r * r - 301 * r + 308),
            p(19) * s.pow(3) * (3 * r - 7),
            p(20) * s.pow(4),
        ],
        10 => vec![
            p(9) * (r - 2) * r * (2 * r - 9) * (2 * r - 1) * (19 * r - 62),
            -p(9) * s * (140 * r.pow(4) - 5820 * r.pow(3) + 36351 * r * r - 72610 * r + 40536),
            -p(16) * s * s * (190 * r.pow(3) - 1665 * r * r + 4473 * r - 3590),
            -p(18) * s.pow(3) * (230 * r * r - 1335 * r + 1806),
            -p(24) * 5 * s.pow(4) * (r - 3),
            -p(25) * s.pow(5),
        ],
        12 => vec![
            -320 * r * (r - 2) * (2 * r - 9) * (2 * r - 1) * (622 * r * r - 5755 * r + 12172),
            -p(12)
                * s
                * (1404 * r.pow(5) - 2200 * r.pow(4) - 105897 * r.pow(3) + 607695 * r * r
                    - 1108426 * r
                    + 585720),
            p(14)
                * s
                * s
                * (18660 * r.pow(4) - 269060 * r.pow(3) + 1354221 * r * r - 2778930 * r + 1914616),
            p(21) * s.pow(3) * (1070 * r.pow(3) - 11165 * r * r + 36663 * r - 37400),
            p(22) * s.pow(4) * (1170 * r * r - 8305 * r + 13992),
            p(28) * 5 * s.pow(5) * (3 * r - 11),
            p(30) * s.pow(6),
        ],
        _ => return None,
    };
    Some(c.into_iter().map(int).collect())
}

/// Printed tr Ĉ_ρ^m for m = 2..=5, with tr I_0 = 4^r.
fn printed_trace(r: i128, m: u32) -> Rational {
    let base = r * (2 * r - 1);
    let s = r - 1;
    let ratio = match m {
        2 => Rational::new(base.into(), (256 * s * s).into()),
        3 => Rational::new((-base).into(), (1024 * s * s).into()),
        4 => Rational::new(
            (base * (30 * r * r - 63 * r + 34)).into(),
            (2i128.pow(16) * s.pow(4)).into(),
        ),
        5 => Rational::new(
            (-base * (34 * r * r - 89 * r + 62)).into(),
            (2i128.pow(17) * s.pow(4)).into(),
        ),
        _ => unreachable!(),
    };
    ratio * int(4i128.pow(r as u32))
}

type Listing = &'static [(i64, i64, usize)];

/// Printed (eigenvalue numerator, denominator, multiplicity) listings:
/// (r, ρ⊗ρ, mixed chirality (ε,−ε), same chirality (ε,ε)).
const LISTINGS: [(usize, Listing, Listing, Listing); 4] = [
    (
        2,
        &[(0, 1, 8), (1, 8, 6), (-3, 8, 2)],
        &[(0, 1, 4)],
        &[(1, 8, 3), (-3, 8, 1)],
    ),
    (
        3,
        &[(1, 32, 30), (3, 32, 20), (-5, 32, 12), (-15, 32, 2)],
        &[(3, 32, 10), (-5, 32, 6)],
        &[(1, 32, 15), (-15, 32, 1)],
    ),
    (
        4,
        &[
            (1, 12, 70),
            (1, 24, 112),
            (-1, 12, 56),
            (-7, 24, 16),
            (-7, 12, 2),
        ],
        &[(1, 24, 56), (-7, 24, 8)],
        &[(1, 12, 35), (-1, 12, 28), (-7, 12, 1)],
    ),
    (
        5,
        &[
            (5, 64, 252),
            (3, 64, 420),
            (-3, 64, 240),
            (-13, 64, 90),
            (-27, 64, 20),
            (-45, 64, 2),
        ],
        &[(5, 64, 126), (-3, 64, 120), (-27, 64, 10)],
        &[(3, 64, 210), (-13, 64, 45), (-45, 64, 1)],
    ),
];

/// Individual table rows quoted as examples: (r, CSV line).
const EXAMPLE_ROWS: [(usize, &str); 3] =
    [(4, "pp,0,-7/12,1"), (5, "rho,5,5/64,252"), (2, "pm,1,0,4")];

// ---------------------------------------------------------------- criteria

fn c1_clifford() -> Outcome {
    let mut t = Tally::default();
    for r in 2..=6 {
        let (rep, _) = setup(r)?;
        t.records(&rep.integrity_checks());
        // independent pass over the raw generators
        let n = 2 * r;
        let dim = rep.dim();
        let two = ExactMatrix::scalar(dim, &ExactScalar::from_int(2));
        for i in 1..=n {
            for j in 1..=n {
                let ac = &(rep.gamma(i) * rep.gamma(j)) + &(rep.gamma(j) * rep.gamma(i));
                let ok = if i == j { ac == two } else { ac.is_zero() };
                t.record(ok, || format!("r{r}: {{Γ{i}, Γ{j}}} wrong"));
            }
            t.record(rep.gamma(i).adjoint() == *rep.gamma(i), || {
                format!("r{r}: Γ{i} not Hermitian")
            });
        }
        let g = rep.chirality();
        t.record((g * g).is_identity(), || {
            format!("r{r}: chirality does not square to 1")
        });
        t.record(g.adjoint() == *g, || {
            format!("r{r}: chirality not Hermitian")
        });
        t.record(g.trace().is_zero(), || {
            format!("r{r}: chirality not traceless")
        });
        for i in 1..=n {
            let ac = &(g * rep.gamma(i)) + &(rep.gamma(i) * g);
            t.record(ac.is_zero(), || {
                format!("r{r}: chirality commutes with Γ{i}")
            });
        }
    }
    Ok(t)
}

fn c2_characteristic() -> Outcome {
    let mut t = Tally::default();
    for r in 2..=5 {
        let (_, c) = setup(r)?;
        let rho = build_rho_projectors(&c).map_err(|e| e.to_string())?;
        t.records(&char_identity_rho(&c, &rho));
        t.records(&rho.identity_checks());
        let printed = printed_i2k(r as i128, 2 * r + 2).expect("2r+2 ≤ 12");
        t.record(poly_eval_rational(&printed, &c.matrix).is_zero(), || {
            format!("r{r}: printed I_{} does not annihilate Ĉ_ρ", 2 * r + 2)
        });
        t.record(i2k_of(r, r + 1, &c.matrix).is_zero(), || {
            format!("r{r}: engine I_{} is nonzero", 2 * r + 2)
        });
    }
    Ok(t)
}

fn listing_map(l: Listing) -> BTreeMap<Rational, usize> {
    l.iter().map(|&(n, d, m)| (rat(n, d), m)).collect()
}

fn rows_map(rows: &[TableRow], sector: &str) -> Result<BTreeMap<Rational, usize>, String> {
    rows.iter()
        .filter(|row| row.sector == sector)
        .map(|row| {
            Ok((
                row.eigenvalue
                    .parse::<Rational>()
                    .map_err(|e| e.to_string())?,
                row.multiplicity,
            ))
        })
        .collect()
}

fn c3_tables() -> Outcome {
    let mut t = Tally::default();
    for &(r, rho, mixed, same) in &LISTINGS {
        let rows = table_rows(r).map_err(|e| e.to_string())?;
        let got_rho = rows_map(&rows, "rho")?;
        t.record(got_rho == listing_map(rho), || {
            format!("r{r}: rho {got_rho:?}")
        });
        let (printed_mixed, printed_same) = (listing_map(mixed), listing_map(same));
        for label in SectorLabel::ALL {
            let name = label.name();
            let got = rows_map(&rows, &name)?;
            let (expected, other) = if label.same_chirality() {
                (&printed_same, &printed_mixed)
            } else {
                (&printed_mixed, &printed_same)
            };
            if &got == expected {
                t.record(true, String::new);
            } else if &got == other && r % 2 == 1 {
                t.checks += 1;
                let note = format!("r{r} printed mixed and same sector listings swapped");
                if !t.discrepancies.contains(&note) {
                    t.discrepancies.push(note);
                }
            } else {
                t.record(false, || format!("r{r} {name}: {got:?}"));
            }
        }
    }
    for (r, line) in EXAMPLE_ROWS {
        let csv = emit_tables(r).map_err(|e| e.to_string())?;
        t.record(csv.lines().any(|l| l == line), || {
            format!("r{r}: row {line} missing")
        });
    }
    Ok(t)
}

fn c4_traces() -> Outcome {
    let mut t = Tally::default();
    for r in 2..=5 {
        let (_, c) = setup(r)?;
        let mut power = c.matrix.clone();
        for m in 2..=5u32 {
            power = &power * &c.matrix;
            let expected = ExactScalar::real(printed_trace(r as i128, m));
            let got = power.trace();
            t.record(got == expected, || {
                format!("r{r} m{m}: {got} vs {expected}")
            });
        }
    }
    Ok(t)
}

fn c5_projectors() -> Outcome {
    let mut t = Tally::default();
    for r in 2..=5 {
        let (rep, c) = setup(r)?;
        for label in SectorLabel::ALL {
            let fam = build_sector_projectors(&rep, &c, label).map_err(|e| e.to_string())?;
            t.records(&fam.axiom_checks());
            for (k, _, p) in &fam.projectors {
                let b = binomial(2 * r as u64, *k as u64);
                let expected = if *k == r { b / 2 } else { b };
                let tr = p.trace();
                t.record(
                    tr == ExactScalar::real(Rational::from_integer(expected.clone())),
                    || format!("r{r} {label} k{k}: trace {tr}, expected {expected}"),
                );
            }
        }
    }
    Ok(t)
}

fn c6_invariants() -> Outcome {
    let mut t = Tally::default();
    for r in 2..=4 {
        let (rep, c) = setup(r)?;
        t.records(&lemma1_verify(&rep));
        t.records(&verify_recurrences(&rep));
        let inv = invariants_up_to(&rep, 2 * r + 2);
        for two_k in (4..=(2 * r + 2).min(12)).step_by(2) {
            let printed = printed_i2k(r as i128, two_k).expect("tabulated");
            let m = poly_eval_rational(&printed, &c.matrix);
            t.record(m == inv[two_k], || {
                format!("r{r}: printed I_{two_k} differs from the matrix invariant")
            });
        }
    }
    // the printed polynomials hold for every r; compare coefficients for all ranks
    for r in 2..=6 {
        for two_k in (4..=12).step_by(2) {
            let printed = printed_i2k(r as i128, two_k).expect("tabulated");
            let engine = i2k_polynomial(r, two_k / 2);
            t.record(printed == engine, || {
                format!("r{r}: I_{two_k} coefficients {engine:?}")
            });
        }
    }
    Ok(t)
}

fn c7_colour() -> Outcome {
    let mut t = Tally::default();
    for r in 2..=4 {
        t.records(&colour_suite(r).map_err(|e| e.to_string())?);
    }
    // worked values at r = 2 from the compressed ++ block
    let (rep, c) = setup(2)?;
    let fam = build_sector_projectors(&rep, &c, SectorLabel::PP).map_err(|e| e.to_string())?;
    let block = c.matrix.compress(&SectorLabel::PP.support(&rep));
    let sq = &block * &block;
    let three_16 = ExactScalar::real(rat(3, 16));
    let three_32 = ExactScalar::real(rat(3, 32));
    t.record(sq.trace() == three_16, || {
        format!("tr Ĉ_++² = {}", sq.trace())
    });
    let reduced = sq
        .partial_trace(&TensorShape::uniform(2, 2), 1)
        .map_err(|e| e.to_string())?;
    t.record(reduced == ExactMatrix::scalar(2, &three_32), || {
        "tr₂ Ĉ_++² is not 3/32 · 1".into()
    });
    for (closure, expected) in [
        (Closure::FullTrace, &three_16),
        (Closure::PartialTrace, &three_32),
    ] {
        let spec = LadderSpec {
            r: 2,
            rungs: 2,
            sector: SectorLabel::PP,
            closure,
        };
        let rep = colour_factor(&fam, &spec).map_err(|e| e.to_string())?;
        t.record(&rep.total == expected && rep.cross_check, || {
            format!("{closure:?}: {}", rep.total)
        });
    }
    Ok(t)
}

fn c8_ybe() -> Outcome {
    let mut t = Tally::default();
    let us = sample_points(10, 3);
    for r in 2..=4 {
        let (rep, c) = setup(r)?;
        let grid = ybe_grid(r);
        t.record(grid.len() >= (2 * r + 3).pow(2), || {
            format!("r{r}: grid has {} points", grid.len())
        });
        for eps in [Sign::Plus, Sign::Minus] {
            let braid = sector_r_matrix(&rep, &c, eps, Form::Braid).map_err(|e| e.to_string())?;
            let sweep = sector_ybe_sweep(&braid, &grid);
            t.record(
                sweep.passed() && sweep.skipped.is_empty() && sweep.points.len() == grid.len(),
                || {
                    format!(
                        "r{r} {eps:?}: {} failures, {} skipped",
                        sweep.failures.len(),
                        sweep.skipped.len()
                    )
                },
            );
            let plain = sector_r_matrix(&rep, &c, eps, Form::Plain).map_err(|e| e.to_string())?;
            for u in &us {
                t.records(&[unitarity_check(&plain, u).map_err(|e| e.to_string())?]);
                t.records(&[symmetry_check(&plain, u).map_err(|e| e.to_string())?]);
            }
        }
    }
    for r in 2..=3 {
        let (rep, _) = setup(r)?;
        let grid = ybe_grid(r);
        let fam = ShanWitFamily::new(&rep, Normalization::ClosedForm).map_err(|e| e.to_string())?;
        let sweep = fam.ybe_sweep(&grid);
        t.record(sweep.passed() && sweep.skipped.is_empty(), || {
            format!(
                "r{r} full: {} failures, {} skipped",
                sweep.failures.len(),
                sweep.skipped.len()
            )
        });
    }
    Ok(t)
}

fn c9_symmetric_part() -> Outcome {
    let mut t = Tally::default();
    let us = sample_points(10, 3);
    for r in 2..=4 {
        let (rep, c) = setup(r)?;
        let recs = prop9_check(&rep, &c, &us).map_err(|e| e.to_string())?;
        t.record(recs.len() == (r + 1) + us.len(), || {
            format!("r{r}: {} records", recs.len())
        });
        t.records(&recs);
    }
    let xs = sample_points(20, 7);
    for r in 1..=8 {
        t.records(&rising_factorial_identity(r, &xs));
    }
    Ok(t)
}

fn c10_oracles() -> Outcome {
    let mut t = Tally::default();
    for r in 2..=5 {
        let (rep, _) = setup(r)?;
        t.records(&consistency_checks(r, &rep).map_err(|e| e.to_string())?);
    }
    Ok(t)
}

// ---------------------------------------------------------------- runner

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("clifford integrity, r = 2..6", c1_clifford),
        (
            "characteristic identity and minimality, r = 2..5",
            c2_characteristic,
        ),
        ("spectrum listings and example rows, r = 2..5", c3_tables),
        ("trace closed forms tr Ĉ_ρ^m, m = 2..5, r = 2..5", c4_traces),
        (
            "sector projector axioms and traces, r = 2..5",
            c5_projectors,
        ),
        (
            "invariant relations and I_2k polynomials, r = 2..4",
            c6_invariants,
        ),
        ("ladder colour factors, r = 2..4, L = 0..6", c7_colour),
        ("Yang-Baxter grids, unitarity, symmetry", c8_ybe),
        (
            "symmetric R-matrix vs sectors, rising factorials",
            c9_symmetric_part,
        ),
        ("Casimir oracle consistency, r = 2..5", c10_oracles),
    ];
    let mut all_ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(t) if t.failures.is_empty() => {
                let disc = if t.discrepancies.is_empty() {
                    String::new()
                } else {
                    format!(
                        ", {} documented-discrepancy: {}",
                        t.discrepancies.len(),
                        t.discrepancies.join("; ")
                    )
                };
                println!(
                    "PASS {:>2} {name}: {} exact checks, tolerance 0{disc} ({secs:.1}s)",
                    i + 1,
                    t.checks
                );
            }
            Ok(t) => {
                all_ok = false;
                println!(
                    "FAIL {:>2} {name}: {} of {} checks failed ({secs:.1}s)",
                    i + 1,
                    t.failures.len(),
                    t.checks
                );
                for f in t.failures.iter().take(10) {
                    println!("       {f}");
                }
            }
            Err(e) => {
                all_ok = false;
                println!("FAIL {:>2} {name}: error {e} ({secs:.1}s)", i + 1);
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
