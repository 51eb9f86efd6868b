//! Numerical verification of the distance relations over seeded samples.
//!
//! Every check reports the largest deviation it saw next to the tolerance it
//! must stay within. Counting checks (exact set identities) report the number
//! of mismatches with tolerance zero.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{
    classify, distance_to_separable, in_both_tetrahedra, project_onto_separable, sample_cube,
    sample_with, Classification, Region, Vertex,
};
use crate::measures::{
    concurrence_general, concurrence_standard, filter_concurrence_law, hs_distance_standard,
    negativity_general, negativity_standard, spin_flip_roots,
};
use crate::qmat::{ComplexMatrix, C64};
use crate::states::{
    from_standard, standard_eigenvalues, DensityMatrix, LocalFilter, StandardState,
};

pub const IDENTITY_TOL: f64 = 1e-10;
pub const CROSS_PATH_TOL: f64 = 1e-9;
pub const OPTIMALITY_TOL: f64 = 1e-12;
pub const BRUTE_FORCE_TOL: f64 = 1e-3;
pub const FILTER_TOL: f64 = 1e-8;

/// Competitor points drawn per sample in the projection-optimality check.
pub const COMPETITORS_PER_SAMPLE: usize = 100;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub seed: u64,
    /// Separable mixtures per state in the brute-force HS check.
    pub mixtures_per_state: usize,
    /// States in the brute-force HS check (capped by `n`).
    pub brute_force_states: usize,
    /// Frank-Wolfe iterations per state in the second HS check.
    pub frank_wolfe_iterations: usize,
    /// Flip a sign in the plane-distance formula. Negative control only.
    pub inject_fault: bool,
}

impl VerifyConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        VerifyConfig {
            n,
            seed,
            mixtures_per_state: 10_000,
            brute_force_states: 10,
            frank_wolfe_iterations: 1_000,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifySummary {
    pub checks: Vec<Check>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<28} {:>8} {:>14} {:>10}  status",
            "check", "samples", "max_deviation", "tolerance"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<28} {:>8} {:>14.3e} {:>10.0e}  {}",
                c.name,
                c.samples,
                c.max_deviation,
                c.tolerance,
                if c.passed() { "pass" } else { "FAIL" }
            )?;
        }
        if self.all_passed() {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "FAILED: {}", self.failing().join(", "))
        }
    }
}

/// Independent stream for sub-task `k` of a run seeded with `seed`.
fn substream(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

fn faulty_distance(s: &StandardState) -> Result<f64> {
    match classify(s) {
        Classification::Entangled(v) => Ok((s.dot(&v.coords()) + 1.0) / 3f64.sqrt()),
        _ => distance_to_separable(s),
    }
}

fn dev(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x.abs()
    }
}

fn max_abs(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |m, x| {
        if x.is_nan() {
            f64::INFINITY
        } else {
            m.max(x.abs())
        }
    })
}

/// Uniform point of the octahedron `‖w‖₁ ≤ 1`.
pub fn sample_octahedron(rng: &mut impl Rng) -> StandardState {
    loop {
        let s = sample_cube(rng);
        if s.l1_norm() <= 1.0 {
            return s;
        }
    }
}

fn random_bloch(rng: &mut impl Rng) -> [f64; 3] {
    // Half the draws are axis-aligned: mixtures of those span the separable
    // Bell-diagonal states, so the search can actually approach the optimum.
    if rng.random_bool(0.5) {
        let mut v = [0.0; 3];
        v[rng.random_range(0..3)] = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        return v;
    }
    loop {
        let v = [
            rng.random_range(-1.0..=1.0f64),
            rng.random_range(-1.0..=1.0f64),
            rng.random_range(-1.0..=1.0f64),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = n2.sqrt();
            return v.map(|x| x / n);
        }
    }
}

/// Smallest `‖ρ(s) − ω‖₂` over `mixtures` random separable `ω`, each a convex
/// combination of one to four pure product states.
///
/// Works in Pauli coordinates, where `‖ρ − ω‖₂² = ¼ Σ_{μν} (r_{μν} − w_{μν})²`.
pub fn separable_mixture_min_distance(
    s: &StandardState,
    mixtures: usize,
    rng: &mut impl Rng,
) -> f64 {
    let mut target = [[0.0f64; 4]; 4];
    target[0][0] = 1.0;
    for i in 0..3 {
        target[i + 1][i + 1] = s.r[i];
    }
    let mut best = f64::INFINITY;
    for _ in 0..mixtures {
        let k = rng.random_range(1..=4usize);
        let mut weights = [0.0f64; 4];
        for w in weights.iter_mut().take(k) {
            *w = -(1.0 - rng.random::<f64>()).ln();
        }
        let total: f64 = weights.iter().sum();
        let mut t = [[0.0f64; 4]; 4];
        for &w in weights.iter().take(k) {
            let p = w / total;
            let a = random_bloch(rng);
            let b = random_bloch(rng);
            let av = [1.0, a[0], a[1], a[2]];
            let bv = [1.0, b[0], b[1], b[2]];
            for mu in 0..4 {
                for nu in 0..4 {
                    t[mu][nu] += p * av[mu] * bv[nu];
                }
            }
        }
        let mut d2 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let e = target[mu][nu] - t[mu][nu];
                d2 += e * e;
            }
        }
        best = best.min((0.25 * d2).sqrt());
    }
    best
}

fn pauli_dot(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| x * y)
        .sum()
}

fn product_tensor(a: &[f64; 3], b: &[f64; 3]) -> [[f64; 4]; 4] {
    let av = [1.0, a[0], a[1], a[2]];
    let bv = [1.0, b[0], b[1], b[2]];
    std::array::from_fn(|mu| std::array::from_fn(|nu| av[mu] * bv[nu]))
}

fn normalized_or(v: [f64; 3], fallback: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 1e-300 {
        v.map(|x| x / n)
    } else {
        fallback
    }
}

/// Product state `(1,a)⊗(1,b)` approximately minimizing `⟨g, ·⟩`, by alternating
/// exact minimization over each Bloch vector from several random starts.
fn product_lmo(g: &[[f64; 4]; 4], rng: &mut impl Rng) -> [[f64; 4]; 4] {
    let mut best = (f64::INFINITY, [[0.0; 4]; 4]);
    for _ in 0..4 {
        let mut a = random_bloch(rng);
        let mut b = random_bloch(rng);
        for _ in 0..20 {
            // fixed a: minimize Σ_ν (g_{0ν} + Σ_i a_i g_{iν}) b_ν
            let cb: [f64; 3] = std::array::from_fn(|j| {
                g[0][j + 1] + (0..3).map(|i| a[i] * g[i + 1][j + 1]).sum::<f64>()
            });
            b = normalized_or(cb.map(|x| -x), b);
            let ca: [f64; 3] = std::array::from_fn(|i| {
                g[i + 1][0] + (0..3).map(|j| b[j] * g[i + 1][j + 1]).sum::<f64>()
            });
            a = normalized_or(ca.map(|x| -x), a);
        }
        let t = product_tensor(&a, &b);
        let value = pauli_dot(g, &t);
        if value < best.0 {
            best = (value, t);
        }
    }
    best.1
}

/// Hilbert-Schmidt distance from `ρ(s)` to the full separable set, minimized
/// by Frank-Wolfe over the convex hull of pure product states.
///
/// Starts at the maximally mixed state. Every iterate is separable, so the
/// result is an upper bound on the true distance that tightens with
/// `iterations`.
pub fn frank_wolfe_hs_distance(s: &StandardState, iterations: usize, rng: &mut impl Rng) -> f64 {
    let mut target = [[0.0f64; 4]; 4];
    target[0][0] = 1.0;
    for i in 0..3 {
        target[i + 1][i + 1] = s.r[i];
    }
    let mut w = [[0.0f64; 4]; 4];
    w[0][0] = 1.0;
    let residual = |w: &[[f64; 4]; 4]| -> [[f64; 4]; 4] {
        std::array::from_fn(|mu| std::array::from_fn(|nu| w[mu][nu] - target[mu][nu]))
    };
    for _ in 0..iterations {
        let g = residual(&w);
        let v = product_lmo(&g, rng);
        let dir: [[f64; 4]; 4] =
            std::array::from_fn(|mu| std::array::from_fn(|nu| v[mu][nu] - w[mu][nu]));
        let denom = pauli_dot(&dir, &dir);
        if denom <= 0.0 {
            break;
        }
        let gamma = (-pauli_dot(&g, &dir) / denom).clamp(0.0, 1.0);
        if gamma == 0.0 {
            continue;
        }
        for mu in 0..4 {
            for nu in 0..4 {
                w[mu][nu] += gamma * dir[mu][nu];
            }
        }
    }
    let g = residual(&w);
    (0.25 * pauli_dot(&g, &g)).sqrt()
}

/// Largest amount by which the random separable search beats the closed-form
/// HS distance, over `states` (zero means it never did).
pub fn hs_brute_force_undercut(
    states: &[StandardState],
    mixtures: usize,
    seed: u64,
) -> Result<f64> {
    let undercuts: Vec<Result<f64>> = states
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut rng = substream(seed, 1_000 + i as u64);
            let analytic = hs_distance_standard(s)?;
            let brute = separable_mixture_min_distance(s, mixtures, &mut rng);
            Ok((analytic - brute).max(0.0))
        })
        .collect();
    let mut worst = 0.0f64;
    for u in undercuts {
        worst = worst.max(u?);
    }
    Ok(worst)
}

/// Random 2×2 complex matrix with `|det| ≥ 0.05`.
pub fn random_filter_factor(rng: &mut impl Rng) -> ComplexMatrix {
    loop {
        let m = ComplexMatrix::from_fn(2, 2, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        if m.det2().expect("2x2").norm() >= 0.05 {
            return m;
        }
    }
}

/// Random full-rank density matrix `G G† / Tr[G G†]`.
pub fn random_density_matrix(rng: &mut impl Rng) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(4, 4, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::unchecked(m.scale_real(1.0 / tr))
}

/// Signed coordinate permutations with an even number of sign flips: the 24
/// symmetries of the physical tetrahedron.
pub fn tetrahedral_symmetries() -> Vec<([usize; 3], [f64; 3])> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    const SIGNS: [[f64; 3]; 4] = [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ];
    PERMS
        .iter()
        .flat_map(|p| SIGNS.iter().map(move |s| (*p, *s)))
        .collect()
}

pub fn apply_symmetry(g: &([usize; 3], [f64; 3]), r: &[f64; 3]) -> [f64; 3] {
    let (perm, sign) = g;
    [
        sign[0] * r[perm[0]],
        sign[1] * r[perm[1]],
        sign[2] * r[perm[2]],
    ]
}

fn check(name: &'static str, samples: usize, max_deviation: f64, tolerance: f64) -> Check {
    Check {
        name,
        samples,
        max_deviation,
        tolerance,
    }
}

/// Runs every check at sample size `cfg.n`.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifySummary> {
    let n = cfg.n.max(1);
    let seed = cfg.seed;
    let distance: fn(&StandardState) -> Result<f64> = if cfg.inject_fault {
        faulty_distance
    } else {
        distance_to_separable
    };
    let mut summary = VerifySummary::default();
    let sqrt3 = 3f64.sqrt();

    let entangled = sample_with(&mut substream(seed, 1), n, Region::Entangled)?;
    let physical = sample_with(&mut substream(seed, 2), n, Region::Physical)?;
    let separable = sample_with(&mut substream(seed, 3), n, Region::Separable)?;
    let cube = sample_with(&mut substream(seed, 4), n, Region::Cube)?;

    let mut d_vs_c = 0.0f64;
    let mut c_vs_n = 0.0f64;
    let mut hs_vs_d = 0.0f64;
    let mut d_vs_proj = 0.0f64;
    for s in &entangled {
        let c = concurrence_standard(s)?;
        let neg = negativity_standard(s)?;
        let d = distance(s)?;
        let hs = hs_distance_standard(s)?;
        let proj = s.distance(&project_onto_separable(s));
        d_vs_c = d_vs_c.max(dev(d - 2.0 * c / sqrt3));
        c_vs_n = c_vs_n.max(dev(c - neg));
        hs_vs_d = hs_vs_d.max(dev(hs - d / 2.0));
        d_vs_proj = d_vs_proj.max(dev(d - proj));
    }
    summary
        .checks
        .push(check("euclid-vs-concurrence", n, d_vs_c, IDENTITY_TOL));
    summary
        .checks
        .push(check("concurrence-vs-negativity", n, c_vs_n, IDENTITY_TOL));
    summary
        .checks
        .push(check("hs-vs-euclid", n, hs_vs_d, IDENTITY_TOL));
    summary
        .checks
        .push(check("euclid-vs-projection", n, d_vs_proj, IDENTITY_TOL));

    let mut rng = substream(seed, 5);
    let mut undercut = 0.0f64;
    for s in &entangled {
        let best = s.distance(&project_onto_separable(s));
        for _ in 0..COMPETITORS_PER_SAMPLE {
            let w = sample_octahedron(&mut rng);
            undercut = undercut.max(best - s.distance(&w));
        }
    }
    summary
        .checks
        .push(check("projection-optimality", n, undercut, OPTIMALITY_TOL));

    let cross: Vec<Result<(f64, f64, f64)>> = physical
        .par_iter()
        .map(|s| {
            let rho = from_standard(s);
            let dc = concurrence_general(&rho)? - concurrence_standard(s)?;
            let dn = negativity_general(&rho)? - negativity_standard(s)?;
            let mut closed = standard_eigenvalues(s);
            closed.sort_by(|a, b| b.total_cmp(a));
            let roots = spin_flip_roots(&rho)?;
            let ds = max_abs(closed.iter().zip(&roots).map(|(a, b)| a - b));
            Ok((dc, dn, ds))
        })
        .collect();
    let (mut dc, mut dn, mut ds) = (0.0f64, 0.0f64, 0.0f64);
    for r in cross {
        let (a, b, c) = r?;
        dc = dc.max(dev(a));
        dn = dn.max(dev(b));
        ds = ds.max(c);
    }
    summary
        .checks
        .push(check("concurrence-cross-path", n, dc, CROSS_PATH_TOL));
    summary
        .checks
        .push(check("negativity-cross-path", n, dn, CROSS_PATH_TOL));
    summary
        .checks
        .push(check("spectral-identity", n, ds, CROSS_PATH_TOL));

    let mut sep_max = 0.0f64;
    for s in &separable {
        let values = [
            concurrence_standard(s)?,
            negativity_standard(s)?,
            distance(s)?,
            hs_distance_standard(s)?,
        ];
        sep_max = sep_max.max(max_abs(values.into_iter()));
    }
    summary
        .checks
        .push(check("separable-zero", n, sep_max, IDENTITY_TOL));

    let octa_mismatch = cube
        .iter()
        .filter(|s| (s.l1_norm() <= 1.0) != in_both_tetrahedra(s))
        .count();
    summary.checks.push(check(
        "octahedron-equivalence",
        n,
        octa_mismatch as f64,
        0.0,
    ));

    let double_corner = physical
        .iter()
        .filter(|s| {
            Vertex::ALL
                .iter()
                .filter(|v| s.dot(&v.coords()) > 1.0)
                .count()
                > 1
        })
        .count();
    summary
        .checks
        .push(check("corner-uniqueness", n, double_corner as f64, 0.0));

    let symmetries = tetrahedral_symmetries();
    let mut orbit_mismatch = 0usize;
    for s in cube.iter().chain(&entangled) {
        let base = classify(s);
        for g in &symmetries {
            let r = apply_symmetry(g, &s.r);
            let image = classify(&StandardState { r });
            let expected = match base {
                Classification::Entangled(v) => {
                    let [x, y, z] = apply_symmetry(g, &v.coords());
                    Vertex::new([x as i8, y as i8, z as i8]).map(Classification::Entangled)
                }
                other => Some(other),
            };
            if expected != Some(image) {
                orbit_mismatch += 1;
            }
        }
    }
    summary.checks.push(check(
        "classify-symmetry",
        2 * n,
        orbit_mismatch as f64,
        0.0,
    ));

    let filter_pairs = n.min(100);
    let mut rng = substream(seed, 6);
    let mut filter_dev = 0.0f64;
    let mut evaluated = 0;
    for k in 0..filter_pairs {
        let rho = if k % 2 == 0 {
            from_standard(&sample_with(&mut rng, 1, Region::Physical)?[0])
        } else {
            random_density_matrix(&mut rng)
        };
        let f = LocalFilter::new(
            random_filter_factor(&mut rng),
            random_filter_factor(&mut rng),
        )?;
        let law = filter_concurrence_law(&rho, &f)?;
        if !law.exceeds_unity() {
            filter_dev = filter_dev.max(dev(law.deviation()));
            evaluated += 1;
        }
    }
    summary
        .checks
        .push(check("filter-law", evaluated, filter_dev, FILTER_TOL));

    let bf_states = &entangled[..n.min(cfg.brute_force_states.max(1))];
    let undercut = hs_brute_force_undercut(bf_states, cfg.mixtures_per_state, seed)?;
    summary.checks.push(check(
        "hs-brute-force",
        bf_states.len(),
        undercut,
        BRUTE_FORCE_TOL,
    ));

    let fw: Vec<Result<f64>> = bf_states
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut rng = substream(seed, 2_000 + i as u64);
            let analytic = hs_distance_standard(s)?;
            Ok(
                (analytic - frank_wolfe_hs_distance(s, cfg.frank_wolfe_iterations, &mut rng))
                    .max(0.0),
            )
        })
        .collect();
    let mut fw_undercut = 0.0f64;
    for u in fw {
        fw_undercut = fw_undercut.max(u?);
    }
    summary.checks.push(check(
        "hs-frank-wolfe",
        bf_states.len(),
        fw_undercut,
        BRUTE_FORCE_TOL,
    ));

    Ok(summary)
}
