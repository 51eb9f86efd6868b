//! Polytope geometry of the standard-form parameter cube.
//!
//! Physical states fill the tetrahedron spanned by the four Bell vertices; the
//! partial transpose reflects it into the Peres-Horodecki tetrahedron, and the
//! intersection of the two is the octahedron `|r_x| + |r_y| + |r_z| ≤ 1` of
//! separable states. Each of the four corners cut off by the octahedron holds
//! the entangled states near one Bell vertex.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::states::{standard_eigenvalues, StandardState};

/// Boundary tolerance for both the physical and the separable test.
pub const CLASSIFY_TOL: f64 = 1e-10;

/// Rejection-sampling attempts allowed per accepted sample.
pub const MAX_ATTEMPTS_PER_SAMPLE: u64 = 1_000_000;

/// A vertex of the physical tetrahedron (a Bell state).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex([i8; 3]);

impl Vertex {
    pub const PHI_PLUS: Vertex = Vertex([1, -1, 1]);
    pub const PHI_MINUS: Vertex = Vertex([-1, 1, 1]);
    pub const PSI_PLUS: Vertex = Vertex([1, 1, -1]);
    pub const PSI_MINUS: Vertex = Vertex([-1, -1, -1]);

    /// Ordered like the spectrum returned by [`standard_eigenvalues`].
    pub const ALL: [Vertex; 4] = [
        Vertex::PHI_PLUS,
        Vertex::PHI_MINUS,
        Vertex::PSI_PLUS,
        Vertex::PSI_MINUS,
    ];

    /// Accepts sign triples whose product is −1.
    pub fn new(signs: [i8; 3]) -> Option<Vertex> {
        let unit = signs.iter().all(|s| s.abs() == 1);
        (unit && signs.iter().map(|&s| s as i32).product::<i32>() == -1).then_some(Vertex(signs))
    }

    pub fn signs(&self) -> [i8; 3] {
        self.0
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0.map(f64::from)
    }

    pub fn state(&self) -> StandardState {
        let [x, y, z] = self.coords();
        StandardState::new(x, y, z)
    }

    pub fn index(&self) -> usize {
        Vertex::ALL
            .iter()
            .position(|v| v == self)
            .expect("valid vertex")
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Vertices of the Peres-Horodecki tetrahedron: the physical ones with `r_y` negated.
pub const PH_VERTICES: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [-1.0, -1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, -1.0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Separable,
    Entangled(Vertex),
    NonPhysical,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Separable => "separable",
            Classification::Entangled(_) => "entangled",
            Classification::NonPhysical => "nonphysical",
        }
    }

    pub fn is_physical(&self) -> bool {
        !matches!(self, Classification::NonPhysical)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Entangled(v) => write!(f, "entangled({v})"),
            other => f.write_str(other.name()),
        }
    }
}

pub fn classify(s: &StandardState) -> Classification {
    if standard_eigenvalues(s).iter().any(|&x| x < -CLASSIFY_TOL) {
        return Classification::NonPhysical;
    }
    if s.l1_norm() <= 1.0 + CLASSIFY_TOL {
        return Classification::Separable;
    }
    let corner = Vertex::ALL
        .into_iter()
        .max_by(|a, b| s.dot(&a.coords()).total_cmp(&s.dot(&b.coords())))
        .expect("four vertices");
    Classification::Entangled(corner)
}

/// Membership in the intersection of the two tetrahedra, i.e. all eight
/// half-spaces `1 ± r_x ± r_y ± r_z ≥ 0`.
pub fn in_both_tetrahedra(s: &StandardState) -> bool {
    Vertex::ALL
        .iter()
        .map(|v| v.coords())
        .chain(PH_VERTICES)
        .all(|v| 1.0 - s.dot(&v) >= 0.0)
}

/// Euclidean distance from a physical point to the separable octahedron,
/// `(v·r − 1)/√3` in the corner at `v`.
pub fn distance_to_separable(s: &StandardState) -> Result<f64> {
    match classify(s) {
        Classification::NonPhysical => Err(Error::NonPhysical(s.x(), s.y(), s.z())),
        Classification::Separable => Ok(0.0),
        Classification::Entangled(v) => Ok(((s.dot(&v.coords()) - 1.0) / 3f64.sqrt()).max(0.0)),
    }
}

/// Euclidean projection of `v` onto `{x : ‖x‖₁ ≤ radius}`.
///
/// Sorts the magnitudes, finds the soft threshold that lands on the simplex
/// face, and restores signs.
pub fn project_onto_l1_ball(v: &[f64], radius: f64) -> Vec<f64> {
    let l1: f64 = v.iter().map(|x| x.abs()).sum();
    if l1 <= radius {
        return v.to_vec();
    }
    let mut mags: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    mags.sort_unstable_by(|a, b| b.total_cmp(a));

    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (j, &u) in mags.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - radius) / (j + 1) as f64;
        if u - candidate > 0.0 {
            threshold = candidate;
        } else {
            break;
        }
    }
    v.iter()
        .map(|&x| x.signum() * (x.abs() - threshold).max(0.0))
        .collect()
}

/// Nearest point of the separable octahedron. Works for any point of space.
pub fn project_onto_separable(s: &StandardState) -> StandardState {
    let p = project_onto_l1_ball(&s.r, 1.0);
    StandardState::new(p[0], p[1], p[2])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Cube,
    Physical,
    Entangled,
    Separable,
}

impl Region {
    pub fn accepts(&self, s: &StandardState) -> bool {
        match self {
            Region::Cube => true,
            Region::Physical => classify(s).is_physical(),
            Region::Entangled => matches!(classify(s), Classification::Entangled(_)),
            Region::Separable => classify(s) == Classification::Separable,
        }
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Region> {
        match s.to_ascii_lowercase().as_str() {
            "cube" => Ok(Region::Cube),
            "physical" => Ok(Region::Physical),
            "entangled" => Ok(Region::Entangled),
            "separable" => Ok(Region::Separable),
            other => Err(Error::Parse(format!("unknown region `{other}`"))),
        }
    }
}

/// Uniform point of `[-1, 1]³`.
pub fn sample_cube(rng: &mut impl Rng) -> StandardState {
    StandardState::new(
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    )
}

/// Seeded rejection sampler over a region of the cube.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`, so output is
/// identical across platforms for a given `(n, seed, region)`.
pub fn sample_states(n: usize, seed: u64, region: Region) -> Result<Vec<StandardState>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(&mut rng, n, region)
}

pub fn sample_with(rng: &mut impl Rng, n: usize, region: Region) -> Result<Vec<StandardState>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut attempts = 0u64;
        loop {
            if attempts == MAX_ATTEMPTS_PER_SAMPLE {
                return Err(Error::SamplingStalled { attempts });
            }
            attempts += 1;
            let s = sample_cube(rng);
            if region.accepts(&s) {
                out.push(s);
                break;
            }
        }
    }
    Ok(out)
}
