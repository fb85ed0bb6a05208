//! End-to-end acceptance suite.
//!
//! Each test prints one `[acceptance] <label>: PASS` line (visible with
//! `--nocapture`) after asserting its criterion exactly. The two motivating
//! fixtures are exercised both through the scenario runner and through
//! direct engine calls; the remaining tests are seeded random sweeps that
//! pit the engine against the independent oracles and the exact laws it
//! must satisfy.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{
    random_algebraic_tower, random_ideal, random_laurent, random_tower, rational, rng,
};
use lqt_core::analysis::{analyze, AnalysisOptions, LimitKind};
use lqt_core::certificate::CenterCertificate;
use lqt_core::oracle::{ord_by_powers, transform_step_oracle};
use lqt_core::scenario::{run_scenario, Outcome, RunOverrides, Scenario, ScenarioReport};
use lqt_core::{ExponentVector, Tower, TowerStatus, ValueMode, WeightValue};
use num_bigint::BigInt;
use rand::Rng;

const FIXTURE_BUDGET: Duration = Duration::from_secs(5);

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run_fixture(name: &str) -> (ScenarioReport, Outcome, Duration) {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    let scenario = Scenario::from_json(&text).expect("fixture parses");
    let started = Instant::now();
    let (report, outcome) =
        run_scenario(&scenario, &RunOverrides::default()).expect("scenario runs");
    (report, outcome, started.elapsed())
}

fn assert_fixture_passes(name: &str) -> (ScenarioReport, Duration) {
    let (report, outcome, took) = run_fixture(name);
    for a in &report.assertions {
        assert_eq!(
            a.outcome, "pass",
            "{name}: assertion `{}` expected `{}`, got `{}`",
            a.description, a.expected, a.actual
        );
    }
    assert_eq!(outcome, Outcome::Pass, "{name}: outcome {}", outcome.id());
    assert!(
        took < FIXTURE_BUDGET,
        "{name}: took {took:?}, budget {FIXTURE_BUDGET:?}"
    );
    (report, took)
}

/// The three-variable tower with nested infinitesimal weights
/// `w(x) = (0,1)`, `w(y) = (1,0)`, `w(z) = (1,1)` under the lexicographic
/// order: the center is the slot of `x` forever.
fn nested_lex_tower() -> Tower {
    let mode = ValueMode::lex(2).unwrap();
    let w = |a: i64, b: i64| WeightValue::new(mode.clone(), vec![rational(a), rational(b)]).unwrap();
    Tower::new(vec![w(0, 1), w(1, 0), w(1, 1)]).unwrap()
}

/// The three-variable tower with weights `1`, `√2`, `2 + √3`: archimedean,
/// centers alternate between the slots of `x` and `y`, never `z`.
fn square_root_tower() -> Tower {
    let mode = ValueMode::algebraic(&[1, 2, 3]).unwrap();
    let w = |c: &[i64]| {
        WeightValue::new(mode.clone(), c.iter().copied().map(rational).collect()).unwrap()
    };
    Tower::new(vec![w(&[1, 0, 0]), w(&[0, 1, 0]), w(&[2, 0, 1])]).unwrap()
}

#[test]
fn motivating_example_nested_infinitesimals_end_to_end() {
    let (report, took) = assert_fixture_passes("nested-infinitesimal-weights.json");

    // Every stage-j order valuation through j = 100 is refuted by an explicit
    // witness (an element of the union with negative stage-j order).
    let witnessed: Vec<usize> = report
        .order_witnesses
        .iter()
        .filter(|w| w.found)
        .map(|w| w.order_stage)
        .collect();
    assert_eq!(witnessed, (0..=100).collect::<Vec<_>>());

    // Persisting slots: exactly y and z stay inside every contracted product
    // ideal through depth 100; x falls out as soon as it is used as a center.
    let mut t = nested_lex_tower();
    t.extend_to(102).unwrap();
    let persisting: BTreeSet<usize> = (0..3)
        .filter(|&s| {
            let v = ExponentVector::unit(3, s);
            (0..=100).all(|k| t.contracted_product_member(k, &v).unwrap())
        })
        .collect();
    assert_eq!(persisting, BTreeSet::from([1, 2]));

    println!(
        "[acceptance] nested-infinitesimal fixture: PASS — outcome pass in {took:?}, \
         stage orders 0..=100 all refuted, persisting slots {{y, z}}"
    );
}

#[test]
fn motivating_example_square_root_weights_end_to_end() {
    let (report, took) = assert_fixture_passes("square-root-weights.json");
    assert_eq!(report.decomposition_violations, 0);

    // ord_i(z/(xy)) is exactly −1 at every stage through 200, and the slot
    // of z is never chosen as a center.
    let mut t = square_root_tower();
    t.extend_to(200).unwrap();
    assert!(t.is_active());
    let theta = ExponentVector::from_i64s(&[-1, -1, 1]);
    let orders = t.ord_sequence(&theta, 200).unwrap();
    assert_eq!(orders.len(), 201);
    let minus_one = BigInt::from(-1);
    assert!(orders.iter().all(|o| *o == minus_one));
    assert!(!t.centers().contains(&2));

    // The analysis certifies the center pattern via invariant forms, so the
    // exclusion of z holds forever, not just through the horizon; the first
    // change of direction is at stage 2.
    let mut t2 = square_root_tower();
    let options = AnalysisOptions {
        horizon: 200,
        hint_forms: vec![vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]],
        ..AnalysisOptions::default()
    };
    let analysis = analyze(&mut t2, &options).unwrap();
    assert!(matches!(
        analysis.certificate,
        Some(CenterCertificate::InvariantForms(_))
    ));
    assert_eq!(analysis.cio_slots, Some(vec![0, 1]));
    assert_eq!(analysis.first_direction_change, Some(2));

    println!(
        "[acceptance] square-root fixture: PASS — outcome pass in {took:?}, \
         ord(z/(xy)) ≡ −1 through 200, slot z certified never central"
    );
}

#[test]
fn transform_transitivity_and_product_law_fuzz() {
    let mut rng = rng(0x5eed_0003);
    let mut transitivity = 0usize;
    let mut product = 0usize;

    while transitivity < 1000 || product < 1000 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        t.extend_to(rng.gen_range(1..=6)).unwrap();
        let depth = t.last_frame();
        if depth == 0 {
            continue;
        }

        // Transitivity: the engine's step-by-step trail equals the oracle's
        // independent recomputation folded one stage at a time.
        let seed_ideal = random_ideal(&mut rng, 0, dim, 4, 5);
        let trail = t.transform_trail(seed_ideal.clone(), depth).unwrap();
        let mut folded = seed_ideal;
        for engine_ideal in trail.ideals().iter().skip(1) {
            folded = transform_step_oracle(&t, &folded).expect("oracle transform");
            assert_eq!(
                engine_ideal, &folded,
                "trail mismatch at stage {} of a depth-{depth} tower",
                folded.frame()
            );
        }
        transitivity += 1;

        // Product law: transforming a product equals the product of the
        // transforms, at every stage along the tower.
        let mut a = random_ideal(&mut rng, 0, dim, 4, 5);
        let mut b = random_ideal(&mut rng, 0, dim, 4, 5);
        while a.frame() < depth {
            let ab = t.transform_step(&a.product(&b)).unwrap();
            a = t.transform_step(&a).unwrap();
            b = t.transform_step(&b).unwrap();
            assert_eq!(
                ab,
                a.product(&b),
                "product law broke moving into stage {}",
                a.frame()
            );
            product += 1;
        }
    }

    println!(
        "[acceptance] transform laws: PASS — {transitivity} transitivity trails and \
         {product} product-law steps, all exact generator-set equalities"
    );
}

#[test]
fn order_and_transform_agree_with_power_table_oracles() {
    let mut rng = rng(0x5eed_0004);

    // Orders of effective monomials: the engine's frame solve against the
    // oracle's power-table membership scan.
    let mut ord_monomial = 0usize;
    while ord_monomial < 600 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        t.extend_to(rng.gen_range(0..=4)).unwrap();
        let stage = rng.gen_range(0..=t.last_frame());
        let frame = t.frame(stage).unwrap();
        let total = rng.gen_range(0..=6usize);
        let mut v = ExponentVector::zeros(dim);
        for _ in 0..total {
            v = v.add(&frame.columns()[rng.gen_range(0..dim)]);
        }
        let engine = t.ord(stage, &v).unwrap();
        let oracle = ord_by_powers(frame.columns(), &v, 7).expect("effective monomial");
        assert_eq!(engine, BigInt::from(oracle));
        assert_eq!(oracle, total);
        ord_monomial += 1;
    }

    // Orders of fractions extend by differences on both routes.
    let mut ord_fraction = 0usize;
    while ord_fraction < 200 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        t.extend_to(rng.gen_range(0..=4)).unwrap();
        let stage = rng.gen_range(0..=t.last_frame());
        let frame = t.frame(stage).unwrap();
        let (ta, tb) = (rng.gen_range(0..=6usize), rng.gen_range(0..=6usize));
        let mut build = |total: usize| {
            let mut v = ExponentVector::zeros(dim);
            for _ in 0..total {
                v = v.add(&frame.columns()[rng.gen_range(0..dim)]);
            }
            v
        };
        let (num, den) = (build(ta), build(tb));
        let engine = t.ord(stage, &num.sub(&den)).unwrap();
        let oracle_num = ord_by_powers(frame.columns(), &num, 7).unwrap() as i64;
        let oracle_den = ord_by_powers(frame.columns(), &den, 7).unwrap() as i64;
        assert_eq!(engine, BigInt::from(oracle_num - oracle_den));
        ord_fraction += 1;
    }

    // Single transform steps: engine rewrite against the oracle's
    // from-scratch rational solve at the next frame.
    let mut steps = 0usize;
    while steps < 1000 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        t.extend_to(rng.gen_range(1..=6)).unwrap();
        if t.last_frame() == 0 {
            continue;
        }
        let stage = rng.gen_range(0..t.last_frame());
        let ideal = random_ideal(&mut rng, stage, dim, 4, 5);
        let engine = t.transform_step(&ideal).unwrap();
        let oracle = transform_step_oracle(&t, &ideal).expect("oracle transform");
        assert_eq!(engine, oracle);
        steps += 1;
    }

    println!(
        "[acceptance] oracle agreement: PASS — {ord_monomial} monomial orders, \
         {ord_fraction} fraction orders, {steps} transform steps, zero mismatches"
    );
}

#[test]
fn contracted_product_ideals_track_center_prefix() {
    let mut rng = rng(0x5eed_0005);
    let mut checks = 0usize;
    let mut towers = 0usize;

    while towers < 150 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        t.extend_to(rng.gen_range(2..=12)).unwrap();
        let last = t.last_frame();
        if last < 2 {
            continue;
        }
        towers += 1;
        let centers = t.centers().to_vec();
        for s in 0..dim {
            let v = ExponentVector::unit(dim, s);
            // Per-depth law: the slot parameter lies in the contracted
            // product ideal of depth k exactly when it was never a center
            // among the first k steps.
            for k in 0..last {
                let member = t.contracted_product_member(k, &v).unwrap();
                let expected = !centers[..k].contains(&s);
                assert_eq!(
                    member, expected,
                    "slot {s} at depth {k}: centers {:?}",
                    centers
                );
                checks += 1;
            }
            // Aggregate over all computed depths: membership everywhere is
            // exactly "never centered before the final step".
            let everywhere = (0..last).all(|k| t.contracted_product_member(k, &v).unwrap());
            assert_eq!(everywhere, !centers[..last - 1].contains(&s));
        }
    }

    assert!(checks >= 1000, "only {checks} membership checks");
    println!(
        "[acceptance] contracted products: PASS — {checks} membership checks across \
         {towers} towers match the center-prefix law exactly"
    );
}

#[test]
fn step_order_identity_on_random_triples() {
    let mut rng = rng(0x5eed_0006);
    let mut cases = 0usize;

    while cases < 10_000 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        t.extend_to(rng.gen_range(1..=8)).unwrap();
        if t.last_frame() == 0 {
            continue;
        }
        for _ in 0..5 {
            if cases == 10_000 {
                break;
            }
            let q = random_laurent(&mut rng, dim, -5, 5);
            let i = rng.gen_range(0..t.last_frame());
            let u = t.frame_exponent(i, &q).unwrap();
            let center = t.centers()[i];
            let lhs = t.ord(i + 1, &q).unwrap();
            let rhs = t.ord(i, &q).unwrap() * 2 - u.coord(center);
            assert_eq!(lhs, rhs, "step identity failed at stage {i}");
            cases += 1;
        }
    }

    println!(
        "[acceptance] step order identity: PASS — ord_{{i+1}} = 2·ord_i − u_center \
         on {cases} random (tower, monomial, step) triples"
    );
}

#[test]
fn frames_stay_unimodular_with_integer_inverse_and_positive_weights() {
    let mut rng = rng(0x5eed_0007);
    let mut frames = 0usize;

    let mut towers: Vec<Tower> = vec![nested_lex_tower(), square_root_tower()];
    for t in &mut towers {
        t.extend_to(300).unwrap();
    }
    for _ in 0..60 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        t.extend_to(rng.gen_range(1..=40)).unwrap();
        towers.push(t);
    }

    for t in &towers {
        for i in 0..=t.last_frame() {
            t.verify_frame(i).unwrap();
            frames += 1;
        }
    }

    println!(
        "[acceptance] frame integrity: PASS — determinant 1, exact integer inverse and \
         positive consistent weights at {frames} frames across {} towers",
        towers.len()
    );
}

#[test]
fn order_sign_sequences_stabilize_on_algebraic_towers() {
    let mut rng = rng(0x5eed_0008);
    let mut towers = 0usize;
    let mut probes = 0usize;
    let mut resamples = 0usize;

    while towers < 100 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_algebraic_tower(&mut rng, dim);
        t.extend_to(500).unwrap();
        if !t.is_active() {
            // The trichotomy concerns infinite towers; a tie ends this one.
            resamples += 1;
            assert!(resamples < 1000, "could not sample active towers");
            continue;
        }
        towers += 1;
        for _ in 0..50 {
            let q = random_laurent(&mut rng, dim, -5, 5);
            let orders = t.ord_sequence(&q, 500).unwrap();
            let tail = &orders[451..];
            let sign = tail[0].sign();
            assert!(
                tail.iter().all(|o| o.sign() == sign),
                "sign of ord_i({}) still oscillates within stages 451..=500",
                q.render()
            );
            probes += 1;
        }
    }

    println!(
        "[acceptance] sign stabilization: PASS — {probes} probes on {towers} archimedean \
         towers, every order-sign sequence constant over stages 451..=500 \
         ({resamples} tied towers resampled)"
    );
}

#[test]
fn plane_towers_classify_as_valuation_or_terminate() {
    let (_, took_independent) = assert_fixture_passes("plane-independent-weights.json");
    let (_, took_rational) = assert_fixture_passes("plane-rational-weights.json");

    // Rationally independent weights 1, √2: the union is itself a valuation
    // ring, certified from the two-dimensional infinite-tower criterion.
    let mode = ValueMode::algebraic(&[1, 2]).unwrap();
    let w = |c: &[i64]| {
        WeightValue::new(mode.clone(), c.iter().copied().map(rational).collect()).unwrap()
    };
    let mut independent = Tower::new(vec![w(&[1, 0]), w(&[0, 1])]).unwrap();
    let analysis = analyze(&mut independent, &AnalysisOptions::default()).unwrap();
    assert_eq!(analysis.classification.kind, LimitKind::IsValuation);
    assert!(analysis.classification.certified);

    // Rational weights 2, 3: the subtractive weight walk is the Euclidean
    // algorithm, which bottoms out in a tie — the tower is finite.
    let mode1 = ValueMode::algebraic(&[1]).unwrap();
    let w1 = |c: i64| WeightValue::new(mode1.clone(), vec![rational(c)]).unwrap();
    let mut rational_weights = Tower::new(vec![w1(2), w1(3)]).unwrap();
    rational_weights.extend_to(40).unwrap();
    assert_eq!(
        rational_weights.status(),
        &TowerStatus::TerminatedTie {
            step: 2,
            tied: vec![0, 1]
        }
    );
    let analysis = analyze(&mut rational_weights, &AnalysisOptions::default()).unwrap();
    assert_eq!(analysis.classification.kind, LimitKind::TowerFinite);
    assert!(analysis.classification.certified);

    println!(
        "[acceptance] plane towers: PASS — (1, √2) certified a valuation ring in \
         {took_independent:?}; (2, 3) terminated in a tie at step 2 in {took_rational:?}"
    );
}

#[test]
fn no_certified_contradiction_to_intersection_decomposition() {
    // Fixture probes first: the reports must show zero violations.
    let mut fixture_probes = 0usize;
    for name in [
        "nested-infinitesimal-weights.json",
        "square-root-weights.json",
        "plane-independent-weights.json",
        "plane-rational-weights.json",
    ] {
        let (report, outcome, _) = run_fixture(name);
        assert_eq!(outcome, Outcome::Pass);
        assert_eq!(report.decomposition_violations, 0, "{name}");
        fixture_probes += report.probes.len();
    }

    // Random sweep: every probe whose three memberships are all decided must
    // satisfy "in the union ⇔ in the boundary valuation and in the hull",
    // and certified verdicts may never certify a contradiction.
    let mut rng = rng(0x5eed_000a);
    let mut decided = 0usize;
    let mut undecided = 0usize;
    for _ in 0..40 {
        let dim = rng.gen_range(2..=3);
        let mut t = random_tower(&mut rng, dim);
        let probes: Vec<ExponentVector> =
            (0..25).map(|_| random_laurent(&mut rng, dim, -4, 4)).collect();
        let options = AnalysisOptions {
            horizon: 300,
            ord_prefix: 8,
            probes,
            ..AnalysisOptions::default()
        };
        let analysis = analyze(&mut t, &options).unwrap();
        assert_eq!(analysis.decomposition_violations, 0);
        for p in &analysis.probes {
            let all_certified = [&p.in_limit, &p.in_boundary, &p.in_hull]
                .iter()
                .all(|v| v.judgment.is_certified());
            if all_certified {
                assert_eq!(
                    p.decomposition_consistent,
                    Some(true),
                    "certified contradiction on {}",
                    p.rendered
                );
            }
            match p.decomposition_consistent {
                Some(consistent) => {
                    assert!(consistent, "decided contradiction on {}", p.rendered);
                    decided += 1;
                }
                None => undecided += 1,
            }
        }
    }

    println!(
        "[acceptance] intersection decomposition: PASS — {fixture_probes} fixture probes \
         and {decided} decided random probes consistent, zero violations \
         ({undecided} probes left undecided)"
    );
}
