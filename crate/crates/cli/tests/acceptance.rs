//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kleppner_cli::catalog::SCENARIOS;
use kleppner_cli::run::{analyze_batch, analyze_source, Overrides};
use kleppner_cli::spec::ReportFormat;
use kleppner_core::circle::CircleValue;
use kleppner_core::cocycle::{Cocycle, Homomorphism, ValidationMode};
use kleppner_core::engine::{classify, ClassificationResult};
use kleppner_core::fc::{check_icc_quotient_minimality, fc_hypercenter, icc_quotient, upper_fc_series};
use kleppner_core::group::{Group, GroupElement};
use kleppner_core::kleppner::{kleppner_condition, sigma_regular_classes, KleppnerStatus};
use kleppner_core::subgroup::Subgroup;
use kleppner_core::verdict::Decision;
use kleppner_oracle::{carey_moran_instances, ExpansionForm, TraceVector, TwistedAlgebra, DEFAULT_THETA};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

type Check = Result<String, String>;
/// Name, check and optional time budget.
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

const EFFORT: u32 = 20;
const MAX_STEPS: usize = 8;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn frac(n: i64, d: i64) -> CircleValue {
    CircleValue::from_fraction(n, d)
}

fn zero() -> CircleValue {
    CircleValue::identity()
}

/// Strictly lower-triangular bicharacter matrix from its nonzero entries.
fn lower(dim: usize, entries: &[(usize, usize, CircleValue)]) -> Vec<Vec<CircleValue>> {
    let mut m = vec![vec![zero(); dim]; dim];
    for (i, j, v) in entries {
        m[*i][*j] = v.clone();
    }
    m
}

/// Pulls the Pauli cocycle back along a homomorphism given on table indices.
fn pauli_pullback(g: &Group, phi: impl Fn(u32) -> u32) -> Result<Cocycle, String> {
    let images = g
        .generators()
        .iter()
        .map(|x| match x {
            GroupElement::Finite(i) => GroupElement::Finite(phi(*i)),
            other => panic!("not a finite element: {other:?}"),
        })
        .collect();
    Cocycle::pullback_finite(g, images, &Cocycle::pauli()).map_err(err)
}

/// `r^k s^f` of `D_n`, `n` even, onto `Z2^2` as `(k mod 2, f)`.
fn dihedral_to_v4(n: u32) -> impl Fn(u32) -> u32 {
    move |i| ((i % n) % 2) * 2 + i / n
}

/// `Q8` onto `Z2^2` with kernel `{1, -1}`.
fn quaternion_to_v4(i: u32) -> u32 {
    [0, 2, 1, 3][(i / 2) as usize]
}

fn finite_corpus() -> Result<Vec<(String, Cocycle)>, String> {
    let mut out: Vec<(String, Cocycle)> = Vec::new();
    let mut push = |label: String, c: Result<Cocycle, String>| -> Result<(), String> {
        out.push((label.clone(), c.map_err(|e| format!("{label}: {e}"))?));
        Ok(())
    };
    for n in 1..=16u32 {
        let g = Group::cyclic(n).map_err(err)?;
        push(format!("Z{n} trivial"), Ok(Cocycle::trivial(&g)))?;
        if n > 1 {
            let b = Cocycle::bicharacter(&g, vec![vec![frac(1, n as i64)]]).map_err(err);
            push(format!("Z{n} bicharacter 1/{n}"), b)?;
        }
    }
    for n in 1..=8u32 {
        let g = Group::dihedral(n).map_err(err)?;
        push(format!("D{n} trivial"), Ok(Cocycle::trivial(&g)))?;
        if n % 2 == 0 {
            push(format!("D{n} Pauli pullback"), pauli_pullback(&g, dihedral_to_v4(n)))?;
        }
    }
    let q8 = Group::quaternion();
    push("Q8 trivial".into(), Ok(Cocycle::trivial(&q8)))?;
    push("Q8 Pauli pullback".into(), pauli_pullback(&q8, quaternion_to_v4))?;
    for k in 1..=4u32 {
        let g = Group::elementary_abelian(2, k).map_err(err)?;
        push(format!("Z2^{k} trivial"), Ok(Cocycle::trivial(&g)))?;
    }
    let half = frac(1, 2);
    let v4 = Group::elementary_abelian(2, 2).map_err(err)?;
    push("Z2^2 Pauli".into(), Ok(Cocycle::pauli()))?;
    let pauli_table = Cocycle::pauli().to_table().map_err(err)?;
    push("Z2^2 Pauli table".into(), Cocycle::table(&v4, pauli_table).map_err(err))?;
    let z2_3 = Group::elementary_abelian(2, 3).map_err(err)?;
    for (label, entries) in [
        ("degenerate", vec![(1, 0, half.clone())]),
        ("rank 2", vec![(1, 0, half.clone()), (2, 0, half.clone()), (2, 1, half.clone())]),
    ] {
        push(format!("Z2^3 {label}"), Cocycle::bicharacter(&z2_3, lower(3, &entries)).map_err(err))?;
    }
    let z2_4 = Group::elementary_abelian(2, 4).map_err(err)?;
    for (label, entries) in [
        ("symplectic", vec![(1, 0, half.clone()), (3, 2, half.clone())]),
        ("degenerate", vec![(1, 0, half.clone()), (2, 0, half.clone())]),
    ] {
        push(format!("Z2^4 {label}"), Cocycle::bicharacter(&z2_4, lower(4, &entries)).map_err(err))?;
    }
    let z4z4 = Group::direct_product(vec![Group::cyclic(4).map_err(err)?, Group::cyclic(4).map_err(err)?]).map_err(err)?;
    push("Z4xZ4 trivial".into(), Ok(Cocycle::trivial(&z4z4)))?;
    for k in 1..=3 {
        let b = Cocycle::bicharacter(&z4z4, lower(2, &[(1, 0, frac(k, 4))])).map_err(err);
        push(format!("Z4xZ4 bicharacter {k}/4"), b)?;
    }
    push("Z4xZ4 Pauli pullback".into(), pauli_pullback(&z4z4, |i| ((i / 4) % 2) * 2 + (i % 4) % 2))?;
    let d4 = Group::dihedral(4).map_err(err)?;
    let z2 = Group::cyclic(2).map_err(err)?;
    let d4z2 = Group::direct_product(vec![d4.clone(), z2.clone()]).map_err(err)?;
    push("D4xZ2 trivial".into(), Ok(Cocycle::trivial(&d4z2)))?;
    let d4_pauli = pauli_pullback(&d4, dihedral_to_v4(4))?;
    push(
        "D4xZ2 product".into(),
        Cocycle::product(&d4z2, vec![d4_pauli, Cocycle::trivial(&z2)]).map_err(err),
    )?;
    // (d, z) onto Z2^2 as (f(d), z), with f the reflection parity
    push("D4xZ2 Pauli pullback".into(), pauli_pullback(&d4z2, |i| ((i / 2) / 4) * 2 + i % 2))?;
    Ok(out)
}

fn finite_cross_check() -> Check {
    let corpus = finite_corpus()?;
    ensure!(corpus.len() >= 50, "only {} cocycles", corpus.len());
    let mut holds = 0;
    for (label, c) in &corpus {
        let v = c.validate(ValidationMode::Exhaustive).map_err(err)?;
        ensure!(v.is_valid(), "{label}: cocycle invalid");
        let regular = sigma_regular_classes(c).map_err(err)?.len();
        let a = TwistedAlgebra::build(c, Some(DEFAULT_THETA)).map_err(err)?;
        let center = a.center_dimension().map_err(err)?;
        let blocks = a.block_structure().map_err(err)?;
        let traces = a.invariant_trace_space_dim().map_err(err)?;
        ensure!(regular == center, "{label}: {regular} regular classes, center dimension {center}");
        let k = kleppner_condition(c, EFFORT).map_err(err)?;
        ensure!(!matches!(k.status, KleppnerStatus::Unknown(_)), "{label}: Kleppner unknown");
        let facts = [k.holds(), center == 1, blocks.len() == 1, traces == 1];
        ensure!(facts.iter().all(|&f| f == facts[0]), "{label}: disagreement {facts:?}");
        let r = classify(c, EFFORT).map_err(err)?;
        let expected = if k.holds() { Decision::Yes } else { Decision::No };
        ensure!(
            r.simple == expected && r.unique_trace == expected,
            "{label}: engine says simple {:?}, unique trace {:?}",
            r.simple,
            r.unique_trace
        );
        holds += usize::from(k.holds());
    }
    Ok(format!("{} cocycles, {holds} with Kleppner's condition, zero mismatches", corpus.len()))
}

fn rules(r: &ClassificationResult) -> Vec<&'static str> {
    r.justification.iter().map(|j| j.rule).collect()
}

fn torus_endpoints() -> Check {
    let z2 = Group::free_abelian(2);
    let irr = Cocycle::bicharacter(&z2, lower(2, &[(0, 1, CircleValue::theta())])).map_err(err)?;
    let r = classify(&irr, EFFORT).map_err(err)?;
    ensure!(r.kleppner.holds(), "theta: Kleppner {}", r.kleppner.status_str());
    ensure!(r.simple == Decision::Yes && r.unique_trace == Decision::Yes, "theta: not Yes/Yes");
    ensure!(rules(&r).contains(&"R2"), "theta: R2 did not fire ({:?})", rules(&r));
    for q in 2..=5 {
        let c = Cocycle::bicharacter(&z2, lower(2, &[(0, 1, frac(1, q))])).map_err(err)?;
        let r = classify(&c, EFFORT).map_err(err)?;
        let KleppnerStatus::Fails(w) = &r.kleppner.status else {
            return Err(format!("1/{q}: Kleppner {}", r.kleppner.status_str()));
        };
        ensure!(w.element == GroupElement::FreeAbelian(vec![q, 0]), "1/{q}: witness {:?}", w.element);
        ensure!(r.simple == Decision::No && r.unique_trace == Decision::No, "1/{q}: not No/No");
    }
    Ok("theta holds via R2; witnesses (q,0) for q = 2..5".into())
}

fn bs_pullback(g: &Group, value: CircleValue) -> Result<Cocycle, String> {
    let hom = Homomorphism::new(g, 2, vec![vec![1, 0], vec![0, 1]]).map_err(err)?;
    let inner = Cocycle::bicharacter(&Group::free_abelian(2), lower(2, &[(0, 1, value)])).map_err(err)?;
    Cocycle::pullback(g, hom, inner).map_err(err)
}

fn generator(g: &Group, name: &str) -> GroupElement {
    g.named_generators().into_iter().find(|(n, _)| n == name).expect("generator").1
}

fn baumslag_solitar() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2u32, 3] {
        let g = Group::baumslag_solitar(n).map_err(err)?;
        let bn = g.pow(&generator(&g, "b"), n as i64).map_err(err)?;
        let fch = fc_hypercenter(&g, MAX_STEPS, EFFORT).map_err(err)?;
        let cyc = Subgroup::cyclic(&g, bn.clone(), "<b^n>").map_err(err)?;
        ensure!(fch.contains(&bn), "n={n}: b^n not in FCH");
        for x in fch.generators() {
            ensure!(cyc.contains(x), "n={n}: FCH generator {x:?} outside <b^n>");
        }
        ensure!(fch.same_as(&cyc, &mut rng, 200), "n={n}: FCH differs from <b^n>");
        let q = icc_quotient(&g, MAX_STEPS, EFFORT).map_err(err)?;
        ensure!(q.group().tag() == "free_product", "n={n}: quotient is {}", q.group().tag());
        ensure!(q.group().name() == Group::free_product(n).map_err(err)?.name(), "n={n}: quotient {}", q.group().name());
        ensure!(q.group().is_icc(EFFORT).map_err(err)?.is_yes(), "n={n}: quotient not ICC");

        let r = classify(&bs_pullback(&g, CircleValue::theta())?, EFFORT).map_err(err)?;
        ensure!(r.kleppner.holds(), "n={n} theta: Kleppner {}", r.kleppner.status_str());
        ensure!(r.unique_trace == Decision::Yes, "n={n} theta: unique trace {:?}", r.unique_trace);
        ensure!(r.simple == Decision::Unknown, "n={n} theta: simple {:?}", r.simple);
        ensure!(rules(&r) == ["R3"], "n={n} theta: rules {:?}", rules(&r));

        let r = classify(&bs_pullback(&g, frac(1, 3))?, EFFORT).map_err(err)?;
        ensure!(r.kleppner.fails(), "n={n} 1/3: Kleppner {}", r.kleppner.status_str());
        ensure!(r.simple == Decision::No && r.unique_trace == Decision::No, "n={n} 1/3: not No/No");
        ensure!(rules(&r).first() == Some(&"R1"), "n={n} 1/3: rules {:?}", rules(&r));
    }
    Ok("FCH = <b^n>, ICC quotient Z*Zn; theta via R3 with simple unknown; 1/3 via R1".into())
}

fn lamplighter() -> Check {
    let g = Group::lamplighter();
    let r = classify(&Cocycle::trivial(&g), EFFORT).map_err(err)?;
    ensure!(r.kleppner.holds(), "Kleppner {}", r.kleppner.status_str());
    ensure!(r.simple == Decision::No && r.unique_trace == Decision::No, "not No/No");
    ensure!(rules(&r) == ["R5"], "rules {:?}", rules(&r));
    Ok("Kleppner holds, No/No via R5".into())
}

fn carey_moran() -> Check {
    let groups = [
        Group::cyclic(6),
        Group::dihedral(3),
        Group::dihedral(4),
        Ok(Group::quaternion()),
        Group::elementary_abelian(2, 3),
        Group::dihedral(5),
    ];
    let algebras = groups
        .into_iter()
        .map(|g| TwistedAlgebra::build(&Cocycle::trivial(&g.map_err(err)?), None).map_err(err))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let r = carey_moran_instances(&algebras[i % algebras.len()], &mut rng, 1).map_err(err)?;
        ensure!(r < 1e-10, "instance {i}: residual {r:e}");
        worst = worst.max(r);
    }
    // the expansion without the cross factor is off on some small instance
    let a = &algebras[2];
    let mut uncorrected: f64 = 0.0;
    for _ in 0..20 {
        let psi = TraceVector::random(a, &mut rng).map_err(err)?;
        let h = (rng.next_u32() as usize) % a.order();
        let gs = [a.identity_index(), 1 + (rng.next_u32() as usize) % (a.order() - 1)];
        let r = a.carey_moran_residual(&psi, h, &gs, ExpansionForm::WithoutCrossFactor).map_err(err)?;
        uncorrected = uncorrected.max(r);
    }
    ensure!(uncorrected > 1e-6, "the uncorrected form was never off ({uncorrected:e})");
    Ok(format!("100 instances, max residual {worst:.2e}; uncorrected form off by {uncorrected:.2e}"))
}

fn conjugation_identity() -> Check {
    let mut corpus = finite_corpus()?;
    for s in SCENARIOS {
        let spec = kleppner_cli::spec::parse_spec(s.spec).map_err(err)?;
        let g = kleppner_cli::build::build_group(&spec.group).map_err(err)?;
        if g.order().is_some_and(|n| n <= 16) {
            let c = kleppner_cli::build::build_cocycle(&spec.cocycle, &g, &spec.group).map_err(err)?;
            corpus.push((s.name.to_string(), c));
        }
    }
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (label, c) in corpus.iter().filter(|(_, c)| c.group().order().is_some_and(|n| n <= 16)) {
        let a = TwistedAlgebra::build(c, Some(DEFAULT_THETA)).map_err(err)?;
        let d = a.conjugation_max_defect().map_err(err)?;
        ensure!(d < 1e-12, "{label}: defect {d:e}");
        worst = worst.max(d);
        count += 1;
    }
    Ok(format!("{count} cocycles, max defect {worst:.2e}"))
}

fn g_sigma() -> Check {
    let (ext, m) = Cocycle::pauli().g_sigma_extension().map_err(err)?;
    ensure!(m == 2, "D^sigma has order {m}");
    ensure!(ext.order() == Some(8), "order {:?}", ext.order());
    let t = ext.as_finite().expect("finite extension");
    let e = Group::elementary_abelian(2, 2).map_err(err)?;
    let e_idx = e.as_finite().expect("finite").identity();
    let z = GroupElement::Finite(e_idx * m as u32 + 1);
    ensure!(ext.is_central(&z).map_err(err)?, "(e,1) is not central");
    ensure!(!ext.is_identity(&z) && ext.is_identity(&ext.pow(&z, 2).map_err(err)?), "(e,1) does not have order 2");
    let rows = t.table_rows();
    let n = rows.len();
    let latin = (0..n).all(|i| {
        let mut row: Vec<u32> = rows[i].clone();
        let mut col: Vec<u32> = rows.iter().map(|r| r[i]).collect();
        row.sort_unstable();
        col.sort_unstable();
        row.iter().copied().eq(0..n as u32) && col.iter().copied().eq(0..n as u32)
    });
    ensure!(latin, "the table is not a Latin square");

    let start = Instant::now();
    let z4z4 = Group::direct_product(vec![Group::cyclic(4).map_err(err)?, Group::cyclic(4).map_err(err)?]).map_err(err)?;
    let c = Cocycle::bicharacter(&z4z4, lower(2, &[(1, 0, frac(1, 4))])).map_err(err)?;
    let (ext, _) = c.g_sigma_extension().map_err(err)?;
    ensure!(ext.order() == Some(64), "Z4xZ4 extension has order {:?}", ext.order());
    let a = TwistedAlgebra::build(&Cocycle::trivial(&ext), None).map_err(err)?;
    let blocks = a.block_structure().map_err(err)?;
    let center = a.center_dimension().map_err(err)?;
    let elapsed = start.elapsed();
    ensure!(blocks.len() == center, "{} blocks, center dimension {center}", blocks.len());
    ensure!(blocks.iter().map(|b| b * b).sum::<usize>() == 64, "block dimensions {blocks:?}");
    ensure!(elapsed < Duration::from_secs(10), "order 64 checks took {elapsed:?}");
    Ok(format!(
        "Pauli extension of order 8 with central (e,1); order 64 extension has {center} blocks ({:.2}s)",
        elapsed.as_secs_f64()
    ))
}

fn fc_structure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let series_shape = |g: &Group, middle: GroupElement, label: &str, rng: &mut ChaCha8Rng| -> Result<(), String> {
        let s = upper_fc_series(g, MAX_STEPS, EFFORT).map_err(err)?;
        ensure!(s.stabilized && s.stabilization_index == 2, "{label}: stabilization at {}", s.stabilization_index);
        ensure!(s.steps[0].is_trivial(), "{label}: first term nontrivial");
        let cyc = Subgroup::cyclic(g, middle, "mid").map_err(err)?;
        ensure!(s.steps[1].same_as(&cyc, rng, 200), "{label}: second term is {}", s.steps[1].label());
        ensure!(s.steps[2].is_whole(), "{label}: third term is {}", s.steps[2].label());
        Ok(())
    };
    series_shape(
        &Group::infinite_dihedral(),
        GroupElement::Dihedral { shift: 1, flip: false },
        "D_inf",
        &mut rng,
    )?;
    series_shape(&Group::heisenberg(), GroupElement::Heisenberg([0, 0, 1]), "H3", &mut rng)?;

    let mut groups = vec![
        Group::trivial(),
        Group::dihedral(4).map_err(err)?,
        Group::quaternion(),
        Group::free_abelian(2),
        Group::infinite_dihedral(),
        Group::heisenberg(),
        Group::lamplighter(),
        Group::direct_product(vec![Group::infinite_dihedral(), Group::free_product(2).map_err(err)?]).map_err(err)?,
    ];
    for n in [2, 3] {
        let g = Group::baumslag_solitar(n).map_err(err)?;
        let bn = g.pow(&generator(&g, "b"), n as i64).map_err(err)?;
        let s = upper_fc_series(&g, MAX_STEPS, EFFORT).map_err(err)?;
        let cyc = Subgroup::cyclic(&g, bn, "<b^n>").map_err(err)?;
        ensure!(s.stabilized && s.last().same_as(&cyc, &mut rng, 200), "BS({n},{n}) does not stabilize at <b^n>");
        groups.push(g);
        groups.push(Group::free_product(n).map_err(err)?);
    }
    let mut pairs = 0;
    for g in &groups {
        let q = icc_quotient(g, MAX_STEPS, EFFORT).map_err(err)?;
        ensure!(q.group().is_icc(EFFORT).map_err(err)?.is_yes(), "{}: quotient {} not ICC", g.name(), q.group().name());
        ensure!(
            check_icc_quotient_minimality(g, q.kernel(), MAX_STEPS, EFFORT).map_err(err)?,
            "{}: minimality fails",
            g.name()
        );
        pairs += 1;
        // the whole group always gives an ICC (trivial) quotient
        if !g.is_trivial() {
            ensure!(
                check_icc_quotient_minimality(g, &Subgroup::whole(g), MAX_STEPS, EFFORT).map_err(err)?,
                "{}: minimality fails for G itself",
                g.name()
            );
            pairs += 1;
        }
    }
    Ok(format!("series shapes match; {} quotients ICC; minimality on {pairs} pairs", groups.len()))
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

fn determinism() -> Check {
    let json = Overrides { report: Some(ReportFormat::Json), ..Overrides::default() };
    let dir = std::env::temp_dir().join(format!("kleppner-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    for s in SCENARIOS {
        let expected = std::fs::read_to_string(golden_path(s.name)).map_err(|e| format!("{}: {e}", s.name))?;
        for run in 0..2 {
            let out = analyze_source(s.spec, &json);
            ensure!(out.code == 0, "{}: exit {}", s.name, out.code);
            ensure!(out.output == expected, "{}: run {run} differs from the golden report", s.name);
        }
        std::fs::write(dir.join(format!("{}.toml", s.name)), s.spec).map_err(err)?;
    }
    let batch = analyze_batch(&dir, &json).map_err(err);
    let _ = std::fs::remove_dir_all(&dir);
    for (path, outcome) in batch? {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        let expected = std::fs::read_to_string(golden_path(stem)).map_err(err)?;
        ensure!(outcome.output == expected, "{stem}: batch output differs from the golden report");
    }
    Ok(format!("{} scenarios byte-stable in single and batch runs", SCENARIOS.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("finite-group cross-check", finite_cross_check, Some(Duration::from_secs(60))),
        ("noncommutative torus endpoints", torus_endpoints, Some(Duration::from_secs(1))),
        ("BS(n,n) for n = 2, 3", baumslag_solitar, Some(Duration::from_secs(5))),
        ("lamplighter", lamplighter, None),
        ("Carey-Moran expansion", carey_moran, None),
        ("conjugation identity", conjugation_identity, None),
        ("G^sigma construction", g_sigma, None),
        ("FC-structure", fc_structure, None),
        ("determinism", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(b)) if elapsed > *b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match result {
            Ok(msg) => println!("PASS {} {name} ({:.2}s): {msg}", i + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({:.2}s): {msg}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    } else {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    }
}
