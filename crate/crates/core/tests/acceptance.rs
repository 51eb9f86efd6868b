//! Acceptance criteria 1–9, run in order without the test harness so the
//! wall-clock limits are measured without interference from other tests and
//! the PASS/FAIL lines are never captured.
//!
//! `cargo test -p bellgeom --test acceptance` prints one line per criterion
//! and exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use bellgeom::cli;
use bellgeom::geometry::{
    classify, distance_to_separable, project_onto_separable, sample_cube, sample_states,
    Classification, Region,
};
use bellgeom::measures::{
    concurrence_general, concurrence_standard, filter_concurrence_law, hs_distance_standard,
    measure, negativity_general, negativity_standard,
};
use bellgeom::qmat::hermitian_eigen;
use bellgeom::states::{from_standard, partial_transpose, LocalFilter, StandardState};
use bellgeom::verify::{
    hs_brute_force_undercut, random_density_matrix, random_filter_factor, sample_octahedron,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    criterion: u32,
    title: &'static str,
    detail: String,
    ok: bool,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.ok && self.limit.is_none_or(|l| self.elapsed < l)
    }

    fn line(&self) -> String {
        let limit = match self.limit {
            Some(l) => format!(" (limit {l:?})"),
            None => String::new(),
        };
        format!(
            "{} criterion {}: {}: {}; {:.3?}{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.criterion,
            self.title,
            self.detail,
            self.elapsed,
            limit
        )
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn max_dev(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |m, x| {
        if x.is_nan() {
            f64::INFINITY
        } else {
            m.max(x.abs())
        }
    })
}

fn criterion_1() -> Outcome {
    let s = StandardState::new(1.0, -1.0, 1.0);
    let (report, elapsed) = timed(|| measure(&s));
    let rt3 = 3f64.sqrt();
    let expected = [1.0, 1.0, 2.0 / rt3, 1.0 / rt3];
    let got = [
        report.concurrence.unwrap_or(f64::NAN),
        report.negativity.unwrap_or(f64::NAN),
        report.euclidean_distance.unwrap_or(f64::NAN),
        report.hs_distance.unwrap_or(f64::NAN),
    ];
    let dev = max_dev(got.iter().zip(&expected).map(|(g, e)| g - e));

    let rho = from_standard(&s);
    let spectrum = hermitian_eigen(rho.matrix()).unwrap().eigenvalues;
    let pt_min = hermitian_eigen(&partial_transpose(&rho)).unwrap().min();
    let anchors = max_dev(
        spectrum
            .iter()
            .zip([1.0, 0.0, 0.0, 0.0])
            .map(|(a, b)| a - b)
            .chain([pt_min + 0.5]),
    );
    Outcome {
        criterion: 1,
        title: "worked example (1,-1,1)",
        detail: format!(
            "C={:.12} E_N={:.12} D={:.12} D_HS={:.12}, max dev {dev:.1e}, spectrum/PT anchors dev {anchors:.1e}",
            got[0], got[1], got[2], got[3]
        ),
        ok: dev <= 1e-12 && anchors <= 1e-12 && report.classification == Classification::Entangled(bellgeom::Vertex::PHI_PLUS),
        elapsed,
        limit: Some(Duration::from_millis(1)),
    }
}

fn entangled_sample() -> Vec<StandardState> {
    sample_states(10_000, SEED, Region::Entangled).unwrap()
}

fn criterion_2(states: &[StandardState]) -> Outcome {
    let (dev, elapsed) = timed(|| {
        max_dev(states.iter().map(|s| {
            let d = distance_to_separable(s).unwrap();
            let c = concurrence_standard(s).unwrap();
            d - 2.0 * c / 3f64.sqrt()
        }))
    });
    Outcome {
        criterion: 2,
        title: "D = 2C/sqrt(3) on 10^4 entangled states",
        detail: format!("max |D - 2C/sqrt3| = {dev:.3e} (tol 1e-10)"),
        ok: states.len() == 10_000 && dev <= 1e-10,
        elapsed,
        limit: Some(Duration::from_secs(1)),
    }
}

fn criterion_3(states: &[StandardState]) -> Outcome {
    let (dev, elapsed) = timed(|| {
        max_dev(
            states
                .iter()
                .map(|s| concurrence_standard(s).unwrap() - negativity_standard(s).unwrap()),
        )
    });
    Outcome {
        criterion: 3,
        title: "C = E_N on the same sample",
        detail: format!("max |C - E_N| = {dev:.3e} (tol 1e-10)"),
        ok: dev <= 1e-10,
        elapsed,
        limit: Some(Duration::from_secs(1)),
    }
}

fn criterion_4(states: &[StandardState]) -> Outcome {
    let ((analytic, undercut), elapsed) = timed(|| {
        let analytic =
            max_dev(states.iter().map(|s| {
                hs_distance_standard(s).unwrap() - distance_to_separable(s).unwrap() / 2.0
            }));
        let undercut = hs_brute_force_undercut(&states[..100], 100_000, SEED).unwrap();
        (analytic, undercut)
    });
    Outcome {
        criterion: 4,
        title: "HS distance = D/2",
        detail: format!(
            "analytic max |D_HS - D/2| = {analytic:.3e} (tol 1e-10); brute force 100 states x 1e5 mixtures, max undercut {undercut:.3e} (tol 1e-3)"
        ),
        ok: analytic <= 1e-10 && undercut <= 1e-3,
        elapsed,
        limit: Some(Duration::from_secs(60)),
    }
}

fn criterion_5() -> Outcome {
    let ((c_dev, n_dev), elapsed) = timed(|| {
        let states = sample_states(1_000, SEED + 5, Region::Physical).unwrap();
        let mut c_dev = 0.0f64;
        let mut n_dev = 0.0f64;
        for s in &states {
            let rho = from_standard(s);
            c_dev = c_dev.max(max_dev(
                [concurrence_general(&rho).unwrap() - concurrence_standard(s).unwrap()].into_iter(),
            ));
            n_dev = n_dev.max(max_dev(
                [negativity_general(&rho).unwrap() - negativity_standard(s).unwrap()].into_iter(),
            ));
        }
        (c_dev, n_dev)
    });
    Outcome {
        criterion: 5,
        title: "general path agrees with closed forms on 1000 physical states",
        detail: format!("concurrence dev {c_dev:.3e}, negativity dev {n_dev:.3e} (tol 1e-9)"),
        ok: c_dev <= 1e-9 && n_dev <= 1e-9,
        elapsed,
        limit: Some(Duration::from_secs(5)),
    }
}

fn criterion_6(states: &[StandardState]) -> Outcome {
    let ((dev, beaten), elapsed) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
        let mut dev = 0.0f64;
        let mut beaten = 0usize;
        for s in states {
            let p = project_onto_separable(s);
            let best = s.distance(&p);
            dev = dev.max(max_dev(
                [distance_to_separable(s).unwrap() - best].into_iter(),
            ));
            for _ in 0..100 {
                if s.distance(&sample_octahedron(&mut rng)) < best - 1e-12 {
                    beaten += 1;
                }
            }
        }
        (dev, beaten)
    });
    Outcome {
        criterion: 6,
        title: "projection onto the octahedron",
        detail: format!(
            "max |D - ||s - P(s)||| = {dev:.3e} (tol 1e-10); competitors closer than P(s): {beaten} of {}",
            states.len() * 100
        ),
        ok: dev <= 1e-10 && beaten == 0,
        elapsed,
        limit: Some(Duration::from_secs(10)),
    }
}

fn criterion_7() -> Outcome {
    let ((dev, evaluated, skipped), elapsed) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
        let standard = sample_states(100, SEED + 7, Region::Physical).unwrap();
        let (mut dev, mut evaluated, mut skipped) = (0.0f64, 0usize, 0usize);
        let mut k = 0usize;
        while evaluated < 100 {
            let rho = if k.is_multiple_of(2) {
                from_standard(&standard[(k / 2) % standard.len()])
            } else {
                random_density_matrix(&mut rng)
            };
            k += 1;
            let f = LocalFilter::new(
                random_filter_factor(&mut rng),
                random_filter_factor(&mut rng),
            )
            .unwrap();
            let law = filter_concurrence_law(&rho, &f).unwrap();
            if law.exceeds_unity() {
                skipped += 1;
                continue;
            }
            evaluated += 1;
            dev = dev.max(max_dev([law.deviation()].into_iter()));
        }
        (dev, evaluated, skipped)
    });
    Outcome {
        criterion: 7,
        title: "filtering law",
        detail: format!(
            "{evaluated} pairs, max |predicted - actual| = {dev:.3e} (tol 1e-8); {skipped} pairs with predicted C' > 1 set aside"
        ),
        ok: evaluated == 100 && dev <= 1e-8,
        elapsed,
        limit: Some(Duration::from_secs(5)),
    }
}

fn criterion_8() -> Outcome {
    let ((physical, entangled), elapsed) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
        let n = 100_000;
        let (mut physical, mut entangled) = (0usize, 0usize);
        for _ in 0..n {
            match classify(&sample_cube(&mut rng)) {
                Classification::NonPhysical => {}
                Classification::Separable => physical += 1,
                Classification::Entangled(_) => {
                    physical += 1;
                    entangled += 1;
                }
            }
        }
        (
            physical as f64 / n as f64,
            entangled as f64 / physical as f64,
        )
    });
    Outcome {
        criterion: 8,
        title: "region volumes at n = 1e5",
        detail: format!(
            "physical fraction {physical:.4} (1/3 +- 0.02), entangled fraction of physical {entangled:.4} (1/2 +- 0.02)"
        ),
        ok: (physical - 1.0 / 3.0).abs() <= 0.02 && (entangled - 0.5).abs() <= 0.02,
        elapsed,
        limit: Some(Duration::from_secs(5)),
    }
}

fn run_sample(path: &std::path::Path, seed: &str, region: &str) -> Vec<u8> {
    let argv = [
        "bellgeom",
        "sample",
        "--n",
        "500",
        "--seed",
        seed,
        "--region",
        region,
        "--out",
        path.to_str().unwrap(),
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut out, &mut err);
    assert_eq!(code, cli::EXIT_OK, "{}", String::from_utf8_lossy(&err));
    std::fs::read(path).unwrap()
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let ((identical, differs), elapsed) = timed(|| {
        let mut identical = true;
        for region in ["cube", "physical", "entangled", "separable"] {
            let a = run_sample(&dir.path().join(format!("{region}-a.csv")), "42", region);
            let b = run_sample(&dir.path().join(format!("{region}-b.csv")), "42", region);
            identical &= a == b;
            identical &= cli::sample_csv(500, 42, region.parse().unwrap())
                .unwrap()
                .into_bytes()
                == a;
        }
        let other = run_sample(&dir.path().join("cube-other.csv"), "43", "cube");
        let base = std::fs::read(dir.path().join("cube-a.csv")).unwrap();
        (identical, other != base)
    });
    Outcome {
        criterion: 9,
        title: "sample output is deterministic",
        detail: format!(
            "repeated runs byte-identical for all regions: {identical}; different seed changes output: {differs}"
        ),
        ok: identical && differs,
        elapsed,
        limit: None,
    }
}

fn main() -> std::process::ExitCode {
    let states = entangled_sample();
    let outcomes = [
        criterion_1(),
        criterion_2(&states),
        criterion_3(&states),
        criterion_4(&states),
        criterion_5(),
        criterion_6(&states),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.passed())
        .map(|o| o.criterion)
        .collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", outcomes.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
