//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

use std::path::{Path, PathBuf};
use std::process::Command;

use liebasis::json;
use liebasis::liealg::{is_nilpotent, LeviData, LieAlgebra, SolvableSplit};
use liebasis::polyring::{int, rat, PolyMatrix, Polynomial};
use liebasis::realize::{
    nowicki_commuting_basis, peel_to_factored_automorphism, realize_general, realize_nilpotent,
    realize_solvable, Realization, SignConvention,
};
use liebasis::tensorlie::{AhatElement, TensorElement, TensorLie};
use liebasis::verify::{
    check_basic, check_compat_equations, check_trace_divergence, extract_bracket_coefficients, DEFAULT_SEED,
};
use liebasis::vectorfield::FieldFamily;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn report(n: u32, title: &str, outcome: Outcome) {
    match &outcome {
        Ok(()) => println!("criterion {n}: PASS  {title}"),
        Err(why) => println!("criterion {n}: FAIL  {title}: {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {n} failed: {why}");
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn algebra(name: &str) -> LieAlgebra {
    json::algebra_from_json(&read(&fixture(name))).unwrap()
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_liebasis")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

enum Construction {
    Nilpotent,
    Solvable(SolvableSplit),
    General(LeviData, SolvableSplit),
}

fn catalog() -> Vec<(&'static str, Construction)> {
    use Construction::*;
    let k1 = SolvableSplit { k: 1, m: 1 };
    vec![
        ("abelian1.json", Nilpotent),
        ("abelian2.json", Nilpotent),
        ("abelian3.json", Nilpotent),
        ("abelian4.json", Nilpotent),
        ("abelian5.json", Nilpotent),
        ("heisenberg1.json", Nilpotent),
        ("heisenberg2.json", Nilpotent),
        ("filiform4.json", Nilpotent),
        ("two_dim.json", Solvable(k1)),
        ("r3.json", Solvable(k1)),
        ("r3_lambda_1.json", Solvable(k1)),
        ("r3_lambda_neg1.json", Solvable(k1)),
        ("r3_lambda_half.json", Solvable(k1)),
        ("sl2.json", General(LeviData { solvable_dim: Some(0), borel_end: 2 }, k1)),
    ]
}

fn construct(alg: &LieAlgebra, how: &Construction, conv: SignConvention) -> Realization {
    match how {
        Construction::Nilpotent => realize_nilpotent(alg, conv),
        Construction::Solvable(s) => realize_solvable(alg, s, conv),
        Construction::General(l, s) => realize_general(alg, l, s, conv),
    }
    .unwrap()
}

fn catalog_realizations() -> Vec<(&'static str, Realization)> {
    let mut out = Vec::new();
    for (name, how) in catalog() {
        let alg = algebra(name);
        for conv in [SignConvention::Proof, SignConvention::Normalized] {
            out.push((name, construct(&alg, &how, conv)));
        }
    }
    out
}

#[test]
fn criterion_1_heisenberg_golden() {
    let outcome = (|| {
        let dir = tempfile::tempdir().unwrap();
        for (alg, golden) in [("heisenberg1.json", "heisenberg1.golden.json"), ("heisenberg2.json", "heisenberg2.golden.json")] {
            let out = dir.path().join("real.json");
            let rep = dir.path().join("report.json");
            let (code, stdout) = cli(&[
                "realize",
                "--algebra",
                path_str(&fixture(alg)),
                "--mode",
                "nilpotent",
                "--paper-signs",
                "--out",
                path_str(&out),
                "--report",
                path_str(&rep),
            ]);
            ensure(code == 0, format!("{alg}: exit {code}"))?;
            let real = json::realization_from_json(&read(&out)).unwrap();
            let expected = json::fields_from_json(&read(&fixture(golden))).unwrap();
            ensure(*real.fields() == expected, format!("{alg}: fields differ from the golden file"))?;
            let n = real.nvars();
            ensure(real.b().det().unwrap() == Polynomial::one(n), format!("{alg}: det(B) != 1"))?;
            let report = json::report_from_json(&read(&rep)).unwrap();
            ensure(report.notes.iter().any(|s| s.contains("x_(i-n)")), format!("{alg}: index note missing from report"))?;
            ensure(stdout.contains("x_(i-n)"), format!("{alg}: index note missing from text report"))?;
        }
        Ok(())
    })();
    report(1, "Heisenberg H1/H2 golden fields, det(B) = 1, index note", outcome);
}

#[test]
fn criterion_2_sl2_golden() {
    let outcome = (|| {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("real.json");
        let (code, _) = cli(&[
            "realize",
            "--algebra",
            path_str(&fixture("sl2.json")),
            "--mode",
            "general",
            "--split",
            path_str(&fixture("sl2.split.json")),
            "--paper-signs",
            "--out",
            path_str(&out),
        ]);
        ensure(code == 0, format!("exit {code}"))?;
        let real = json::realization_from_json(&read(&out)).unwrap();
        let golden = json::fields_from_json(&read(&fixture("sl2.golden.json"))).unwrap();
        ensure(*real.fields() == golden, "fields differ from H, E, F of the worked example")?;

        let sl2 = algebra("sl2.json");
        let basic = check_basic(&sl2, &golden);
        ensure(basic.verdict(), "verifier rejects the golden fields")?;
        ensure(basic.det.as_ref().is_some_and(|d| d.is_unit()), "det not a nonzero constant")?;
        let c = |v: i64| Polynomial::constant(3, int(v));
        // basis order (H, E, F)
        let expect = [((0, 1), [c(0), c(2), c(0)]), ((0, 2), [c(0), c(0), c(-2)]), ((1, 2), [c(1), c(0), c(0)])];
        for ((i, j), gamma) in expect {
            let got = extract_bracket_coefficients(&golden, i, j).unwrap();
            ensure(got == gamma, format!("bracket ({},{}) coefficients {got:?}", i + 1, j + 1))?;
        }
        Ok(())
    })();
    report(2, "sl2 golden fields through the general pipeline", outcome);
}

#[test]
fn criterion_3_sl2_intermediates() {
    let outcome = (|| {
        let sl2 = algebra("sl2.json");
        let tl = TensorLie::new(&sl2, 3);
        let x = |i| Polynomial::var(3, i);
        let c = |v: i64| Polynomial::constant(3, int(v));
        let t = |coords: Vec<Polynomial>| TensorElement::new(3, coords).unwrap();
        let z = || Polynomial::zero(3);

        // e^{ad x2 ⊗ E}(∂2) = ∂2 - 1 ⊗ E
        let got = tl.exp_ad(&t(vec![z(), x(1), z()]), &tl.partial(1)).unwrap();
        let want = AhatElement::new(vec![int(0), int(1), int(0)], t(vec![z(), c(-1), z()])).unwrap();
        ensure(got == want, format!("first intermediate: {got}"))?;

        // e^{ad x3 ⊗ F}(∂1 + 2 x2 ⊗ E - 1 ⊗ H)
        let start = AhatElement::new(vec![int(1), int(0), int(0)], t(vec![c(-1), x(1).scale(&int(2)), z()])).unwrap();
        let got = tl.exp_ad(&t(vec![z(), z(), x(2)]), &start).unwrap();
        let x2x3 = &x(1) * &x(2);
        let want = AhatElement::new(
            vec![int(1), int(0), int(0)],
            t(vec![
                -(&c(1) + &x2x3.scale(&int(2))),
                x(1).scale(&int(2)),
                -(&x(2).scale(&int(2)) + &(&x2x3 * &x(2)).scale(&int(2))),
            ]),
        )
        .unwrap();
        ensure(got == want, format!("second intermediate: {got}"))
    })();
    report(3, "sl2 exponential intermediates", outcome);
}

#[test]
fn criterion_4_catalog() {
    let outcome = (|| {
        for (name, real) in catalog_realizations() {
            let alg = real.algebra();
            ensure(check_basic(alg, real.fields()).verdict(), format!("{name}: check_basic"))?;
            ensure(check_compat_equations(alg, real.b()).verdict(), format!("{name}: compatibility equations"))?;
            ensure(check_trace_divergence(alg, real.fields(), DEFAULT_SEED).verdict(), format!("{name}: trace/divergence"))?;
        }
        Ok(())
    })();
    report(4, "catalog realizations pass every check", outcome);
}

/// `I + f E_ij` (or its transpose) for random small `f`.
fn random_shear(rng: &mut ChaCha8Rng, n: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(n, n);
    let i = rng.random_range(0..n);
    let j = (i + rng.random_range(1..n)) % n;
    let mut f = Polynomial::zero(n);
    for _ in 0..rng.random_range(0..3) {
        let mut exps = vec![0u32; n];
        exps[rng.random_range(0..n)] = rng.random_range(0..3);
        f += &Polynomial::from_terms(n, [(exps, rat(rng.random_range(-3..=3), rng.random_range(1..=2)))]).unwrap();
    }
    m.set(i, j, f);
    m
}

fn compat_matches_basic(alg: &LieAlgebra, b: &PolyMatrix) -> Result<bool, String> {
    let compat = check_compat_equations(alg, b).verdict();
    let a = b.adjugate_inverse().map_err(|e| e.to_string())?;
    let fam = FieldFamily::from_matrix(&a).map_err(|e| e.to_string())?;
    let basic = check_basic(alg, &fam).verdict();
    if compat != basic {
        return Err(format!("compat {compat} but basic {basic}"));
    }
    Ok(compat)
}

#[test]
fn criterion_5_compat_iff_basic() {
    let outcome = (|| {
        for (name, real) in catalog_realizations() {
            ensure(compat_matches_basic(real.algebra(), real.b())?, format!("{name}: realization B rejected"))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let reals: Vec<_> = catalog_realizations().into_iter().filter(|(_, r)| r.nvars() >= 2).collect();
        let (mut passed, mut failed) = (0, 0);
        for t in 0..20 {
            let (name, real) = &reals[rng.random_range(0..reals.len())];
            let n = real.nvars();
            let u = random_shear(&mut rng, n);
            let b = if t % 2 == 0 { u.checked_mul(real.b()) } else { real.b().checked_mul(&u) }.unwrap();
            match compat_matches_basic(real.algebra(), &b) {
                Ok(true) => passed += 1,
                Ok(false) => failed += 1,
                Err(e) => return Err(format!("perturbation {t} of {name}: {e}")),
            }
        }
        ensure(passed + failed == 20 && failed > 0, "perturbations never produced a violation")?;

        // engineered violation: disturb one entry of the Heisenberg B
        let h = realize_nilpotent(&algebra("heisenberg1.json"), SignConvention::Normalized).unwrap();
        let mut b = h.b().clone();
        b.set(1, 2, &b.get(1, 2).clone() + &Polynomial::var(3, 0));
        let r = check_compat_equations(h.algebra(), &b);
        ensure(r.first_failure() == Some((1, 2, 3)), format!("witness {:?}", r.first_failure()))?;
        ensure(!compat_matches_basic(h.algebra(), &b)?, "disturbed B accepted")
    })();
    report(5, "compatibility equations hold iff the induced fields are basic", outcome);
}

#[test]
fn criterion_6_peeling_round_trip() {
    let outcome = (|| {
        for (name, real) in catalog_realizations() {
            if !is_nilpotent(real.algebra()) {
                continue;
            }
            let fa = peel_to_factored_automorphism(real.algebra(), real.b()).map_err(|e| format!("{name}: {e}"))?;
            ensure(fa.factors().windows(2).all(|w| w[0].0 < w[1].0), format!("{name}: columns not increasing"))?;
            ensure(fa.straightens(real.algebra(), real.b()).unwrap(), format!("{name}: round trip"))?;
        }
        Ok(())
    })();
    report(6, "peeling round trip on nilpotent catalog", outcome);
}

#[test]
fn criterion_7_trace_divergence() {
    let outcome = (|| {
        for (name, real) in catalog_realizations() {
            let alg = real.algebra();
            let r = check_trace_divergence(alg, real.fields(), DEFAULT_SEED);
            ensure(r.entries.len() == alg.dim() + 16, format!("{name}: {} elements checked", r.entries.len()))?;
            ensure(r.verdict(), format!("{name}: tr(ad d) + div(d) != 0"))?;
            if is_nilpotent(alg) || name == "sl2.json" {
                ensure(r.entries.iter().all(|e| e.divergence.is_zero()), format!("{name}: nonzero divergence"))?;
                for d in real.fields().fields() {
                    ensure(d.divergence().unwrap().is_zero(), format!("{name}: field {d} has divergence"))?;
                }
            }
        }
        Ok(())
    })();
    report(7, "trace equals minus divergence", outcome);
}

#[test]
fn criterion_8_linear_sl2_is_not_basic() {
    let outcome = (|| {
        let sl2 = algebra("sl2.json");
        let linear = json::fields_from_json(&read(&fixture("sl2_linear.fields.json"))).unwrap();
        // the fields do realize sl2: only basicness fails
        ensure(check_basic(&sl2, &linear).bracket_failures.is_empty(), "linear fields do not close")?;
        // every 2x2 minor of the 3x2 coefficient matrix is non-constant
        let m = linear.matrix();
        for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
            let sub = PolyMatrix::from_rows(vec![m.row(r1).to_vec(), m.row(r2).to_vec()]).unwrap();
            let det = sub.det().unwrap();
            ensure(!det.is_constant(), format!("minor ({},{}) is constant: {det}", r1 + 1, r2 + 1))?;
        }
        let (code, _) = cli(&[
            "verify",
            "--algebra",
            path_str(&fixture("sl2.json")),
            "--fields",
            path_str(&fixture("sl2_linear.fields.json")),
        ]);
        ensure(code == 1, format!("verify exit {code}"))
    })();
    report(8, "linear sl2 action in 2 variables is rejected", outcome);
}

#[test]
fn criterion_9_nowicki() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for t in 0..10 {
            let n = 2 + t % 3;
            let fs: Vec<Polynomial> = (0..n)
                .map(|i| {
                    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                    let mut f = Polynomial::var(n, i).scale(&int(sign));
                    for _ in 0..rng.random_range(0..4) {
                        if i == 0 {
                            break;
                        }
                        let mut exps = vec![0u32; n];
                        for e in exps.iter_mut().take(i) {
                            *e = rng.random_range(0..3);
                        }
                        let c = rat(rng.random_range(-4..=4), rng.random_range(1..=3));
                        f += &Polynomial::from_terms(n, [(exps, c)]).unwrap();
                    }
                    f
                })
                .collect();
            let fam = nowicki_commuting_basis(&fs).map_err(|e| format!("map {t}: {e}"))?;
            for (i, a) in fam.fields().iter().enumerate() {
                for b in &fam.fields()[i + 1..] {
                    ensure(a.bracket(b).unwrap().is_zero(), format!("map {t}: fields do not commute"))?;
                }
            }
            let det = fam.determinant().unwrap();
            let unit = det == Polynomial::one(n) || det == Polynomial::constant(n, int(-1));
            ensure(unit, format!("map {t}: det = {det}"))?;
        }
        Ok(())
    })();
    report(9, "Nowicki commuting bases of triangular maps", outcome);
}
