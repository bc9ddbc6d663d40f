//! Built-in instances: the two worked examples, small hand-picked rings,
//! Stanley–Reisner complexes and seeded random point sets.

use gmdist_core::codes::{point_profile, ProjectivePointSet};
use gmdist_core::groebner::Ideal;
use gmdist_core::linalg::Field;
use gmdist_core::poly::Ring;
use gmdist_core::schemes::{build_profile, RingProfile};
use gmdist_core::simplicial::SimplicialComplex;
use gmdist_core::Result;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub struct Instance {
    pub name: String,
    pub profile: RingProfile,
    pub complex: Option<SimplicialComplex>,
    pub points: Option<ProjectivePointSet>,
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        if self.complex.is_some() {
            "complex"
        } else if self.points.is_some() {
            "points"
        } else {
            "ideal"
        }
    }
}

pub fn field(p: u32) -> Field {
    Field::new(p).expect("suite characteristics are prime")
}

/// Ideal with a supplied decomposition.
pub fn ideal_instance(name: &str, p: u32, vars: &[&str], gens: &[&str], primes: &[&[&str]]) -> Result<Instance> {
    let ring = Ring::new(field(p), vars.iter().copied())?;
    let ideal = Ideal::parse(&ring, gens)?;
    let primes = primes.iter().map(|g| Ideal::parse(&ring, g)).collect::<Result<Vec<_>>>()?;
    Ok(Instance { name: name.into(), profile: build_profile(ideal, Some(primes))?, complex: None, points: None })
}

pub fn complex_instance(name: &str, p: u32, complex: SimplicialComplex) -> Result<Instance> {
    let profile = complex.profile(field(p))?;
    Ok(Instance { name: name.into(), profile, complex: Some(complex), points: None })
}

pub fn points_instance(name: &str, points: ProjectivePointSet) -> Result<Instance> {
    let profile = point_profile(&points)?;
    Ok(Instance { name: name.into(), profile, complex: None, points: Some(points) })
}

pub const FIRST_EXAMPLE_GENS: [&str; 2] = ["x^3+y^2*z", "x*y+z^2"];
pub const FIRST_EXAMPLE_PRIMES: [&[&str]; 3] = [&["x", "z"], &["y+z", "x+z"], &["x*y+z^2", "x^2+y^2+x*z+y*z+z^2"]];
pub const SECOND_EXAMPLE_GENS: [&str; 2] = ["y^2-y*z", "x^2*y-y*z^2"];
pub const SECOND_EXAMPLE_PRIMES: [&[&str]; 3] = [&["y"], &["x-z", "y-z"], &["x+z", "y-z"]];

pub fn first_example() -> Instance {
    ideal_instance("first example", 2, &["x", "y", "z"], &FIRST_EXAMPLE_GENS, &FIRST_EXAMPLE_PRIMES)
        .expect("valid example")
}

pub fn second_example() -> Instance {
    ideal_instance("second example", 3, &["x", "y", "z"], &SECOND_EXAMPLE_GENS, &SECOND_EXAMPLE_PRIMES)
        .expect("valid example")
}

fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    let f: Vec<Vec<usize>> = facets.iter().map(|s| s.to_vec()).collect();
    SimplicialComplex::new(n, &f).expect("valid complex")
}

pub fn triangle_boundary() -> SimplicialComplex {
    cx(3, &[&[1, 2], &[1, 3], &[2, 3]])
}

pub fn two_disjoint_edges() -> SimplicialComplex {
    cx(4, &[&[1, 2], &[3, 4]])
}

/// Six-vertex triangulation of the real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    cx(
        6,
        &[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[3, 4, 6],
            &[2, 4, 5],
            &[2, 4, 6],
            &[3, 5, 6],
        ],
    )
}

/// Connected complexes on at most six vertices with at least one edge.
pub fn connected_complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("triangle boundary", triangle_boundary()),
        ("4-cycle", cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])),
        ("5-cycle", cx(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]])),
        ("6-cycle", cx(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]])),
        ("path of three edges", cx(4, &[&[1, 2], &[2, 3], &[3, 4]])),
        ("star with three leaves", cx(4, &[&[1, 2], &[1, 3], &[1, 4]])),
        ("complete graph K4", cx(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]])),
        ("two triangles on an edge", cx(4, &[&[1, 2, 3], &[2, 3, 4]])),
        ("bowtie", cx(5, &[&[1, 2, 3], &[3, 4, 5]])),
        ("tetrahedron boundary", cx(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])),
        (
            "octahedron boundary",
            cx(6, &[&[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 2, 5], &[6, 2, 3], &[6, 3, 4], &[6, 4, 5], &[6, 2, 5]]),
        ),
        ("triangle with a pendant edge", cx(4, &[&[1, 2, 3], &[3, 4]])),
        ("projective plane", projective_plane()),
    ]
}

/// Complexes whose ring has dimension at least 2 but which fall apart.
pub fn disconnected_complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("two disjoint edges", two_disjoint_edges()),
        ("two disjoint triangles", cx(6, &[&[1, 2, 3], &[4, 5, 6]])),
        ("edge and disjoint triangle", cx(5, &[&[1, 2], &[3, 4, 5]])),
        ("edge and isolated vertex", cx(3, &[&[1, 2], &[3]])),
    ]
}

/// All points of `P^2(F_q)`.
pub fn plane_points(q: u32) -> Vec<Vec<i64>> {
    ProjectivePointSet::all(field(q), 3)
        .expect("small plane")
        .points()
        .iter()
        .map(|p| p.iter().map(|&c| c as i64).collect())
        .collect()
}

/// `count` point sets in `P^2(F_q)`, `q ∈ {2, 3}`, of size
/// `1..=max_points`, determined by `seed`.
pub fn random_point_sets(seed: u64, count: usize, max_points: usize) -> Vec<(String, ProjectivePointSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let q = if rng.gen_bool(0.5) { 2 } else { 3 };
            let all = plane_points(q);
            let size = rng.gen_range(1..=max_points.min(all.len()).max(1));
            let mut chosen: Vec<usize> = sample(&mut rng, all.len(), size).into_vec();
            chosen.sort_unstable();
            let raw: Vec<Vec<i64>> = chosen.iter().map(|&j| all[j].clone()).collect();
            let set = ProjectivePointSet::new(field(q), 3, &raw).expect("distinct normalized points");
            (format!("random points #{} (q={q}, |X|={size})", i + 1), set)
        })
        .collect()
}

/// Certified reduced rings on which both δ routes are compared.
pub fn oracle_suite(seed: u64) -> Vec<Instance> {
    let xyz = ["x", "y", "z"];
    let mut out = vec![
        first_example(),
        second_example(),
        ideal_instance("xy over F2", 2, &["x", "y"], &["x*y"], &[&["x"], &["y"]]).unwrap(),
        ideal_instance("xy over F3", 3, &["x", "y"], &["x*y"], &[&["x"], &["y"]]).unwrap(),
        complex_instance("triangle boundary", 2, triangle_boundary()).unwrap(),
        complex_instance("two disjoint edges", 2, two_disjoint_edges()).unwrap(),
        ideal_instance("smooth conic over F3", 3, &xyz, &["x^2+y^2+z^2"], &[&["x^2+y^2+z^2"]]).unwrap(),
        ideal_instance(
            "coordinate points over F2",
            2,
            &xyz,
            &["x*y", "x*z", "y*z"],
            &[&["x", "y"], &["x", "z"], &["y", "z"]],
        )
        .unwrap(),
        ideal_instance("plane and point over F3", 3, &xyz, &["x*y", "x*z"], &[&["x"], &["y", "z"]]).unwrap(),
        ideal_instance("line pair over F3", 3, &xyz, &["x*y-y^2"], &[&["y"], &["x-y"]]).unwrap(),
    ];
    for (name, pts) in random_point_sets(seed, 4, 5) {
        out.push(points_instance(&name, pts).unwrap());
    }
    out
}
