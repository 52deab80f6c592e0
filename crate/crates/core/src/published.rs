//! Reference numbers for the eight benchmark networks and the simulation
//! study, used by the benchmark harness to grade its own output.

/// Dataset summary: nodes, communities, edges, min/max/mean degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub d_min: usize,
    pub d_max: usize,
    pub d_bar: f64,
}

/// Published figures for one real network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub summary: Summary,
    /// Misclustered nodes for orthodox SCORE and for SCORE+ at `(t, delta) = (0.1, 0.1)`.
    pub score_errors: usize,
    pub score_plus_errors: usize,
    /// SCORE+ errors along [`DELTA_GRID`].
    pub delta_sweep: [usize; 8],
    /// `Q(xi_K) .. Q(xi_{K+3})`, adjacency then Laplacian.
    pub rq_adjacency: [f64; 4],
    pub rq_laplacian: [f64; 4],
    /// `1 - lambda_{K+1} / lambda_K` for adjacency and Laplacian.
    pub gap_adjacency: f64,
    pub gap_laplacian: f64,
    /// Allowed deviation in error counts.
    pub count_tolerance: usize,
}

pub const DELTA_GRID: [f64; 8] = [0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.175, 0.2];

pub const GAP_TOLERANCE: f64 = 0.002;
pub const RQ_TOLERANCE: f64 = 0.02;

pub fn reference(name: &str) -> Option<&'static Reference> {
    REFERENCES.iter().find(|(n, _)| *n == name).map(|(_, r)| r)
}

pub const REFERENCES: [(&str, Reference); 8] = [
    (
        "polblogs",
        Reference {
            summary: Summary { n: 1222, k: 2, edges: 16714, d_min: 1, d_max: 351, d_bar: 27.35 },
            score_errors: 58,
            score_plus_errors: 51,
            delta_sweep: [57, 54, 51, 51, 53, 54, 56, 58],
            rq_adjacency: [0.36, 0.02, 0.06, 0.01],
            rq_laplacian: [0.45, 0.02, 0.03, 0.01],
            gap_adjacency: 0.5997,
            gap_laplacian: 0.5223,
            count_tolerance: 5,
        },
    ),
    (
        "karate",
        Reference {
            summary: Summary { n: 34, k: 2, edges: 78, d_min: 1, d_max: 17, d_bar: 4.59 },
            score_errors: 0,
            score_plus_errors: 1,
            delta_sweep: [1, 1, 1, 1, 1, 1, 0, 0],
            rq_adjacency: [0.76, 0.07, 0.05, 0.01],
            rq_laplacian: [0.81, 0.02, 0.01, 0.01],
            gap_adjacency: 0.4140,
            gap_laplacian: 0.1768,
            count_tolerance: 2,
        },
    ),
    (
        "dolphins",
        Reference {
            summary: Summary { n: 62, k: 2, edges: 159, d_min: 1, d_max: 12, d_bar: 5.12 },
            score_errors: 0,
            score_plus_errors: 2,
            delta_sweep: [0, 1, 1, 2, 3, 3, 3, 3],
            rq_adjacency: [0.60, 0.00, 0.01, 0.01],
            rq_laplacian: [0.79, 0.00, 0.00, 0.02],
            gap_adjacency: 0.1863,
            gap_laplacian: 0.2027,
            count_tolerance: 2,
        },
    ),
    (
        "football",
        Reference {
            summary: Summary { n: 110, k: 11, edges: 570, d_min: 7, d_max: 13, d_bar: 10.36 },
            score_errors: 5,
            score_plus_errors: 6,
            delta_sweep: [6, 6, 6, 6, 6, 6, 6, 6],
            rq_adjacency: [0.45, 0.01, 0.00, 0.01],
            rq_laplacian: [0.48, 0.22, 0.00, 0.02],
            gap_adjacency: 1.9255,
            gap_laplacian: 0.1414,
            count_tolerance: 2,
        },
    ),
    (
        "polbooks",
        Reference {
            summary: Summary { n: 92, k: 2, edges: 374, d_min: 1, d_max: 24, d_bar: 8.13 },
            score_errors: 1,
            score_plus_errors: 2,
            delta_sweep: [2, 2, 2, 2, 2, 2, 2, 2],
            rq_adjacency: [0.63, 0.01, 0.01, 0.01],
            rq_laplacian: [0.79, 0.01, 0.00, 0.00],
            gap_adjacency: 0.5034,
            gap_laplacian: 0.2246,
            count_tolerance: 2,
        },
    ),
    (
        "ukfaculty",
        Reference {
            summary: Summary { n: 79, k: 3, edges: 552, d_min: 2, d_max: 39, d_bar: 13.97 },
            score_errors: 2,
            score_plus_errors: 2,
            delta_sweep: [1, 2, 2, 2, 2, 2, 3, 3],
            rq_adjacency: [0.80, 0.11, 0.00, 0.00],
            rq_laplacian: [0.89, 0.06, 0.00, 0.00],
            gap_adjacency: 0.3139,
            gap_laplacian: 0.3336,
            count_tolerance: 2,
        },
    ),
    (
        "simmons",
        Reference {
            summary: Summary { n: 1137, k: 4, edges: 24257, d_min: 1, d_max: 293, d_bar: 42.67 },
            score_errors: 268,
            score_plus_errors: 127,
            delta_sweep: [127, 117, 121, 127, 134, 137, 141, 142],
            rq_adjacency: [0.04, 0.20, 0.13, 0.15],
            rq_laplacian: [0.07, 0.31, 0.08, 0.00],
            gap_adjacency: 0.0804,
            gap_laplacian: 0.0533,
            count_tolerance: 10,
        },
    ),
    (
        "caltech",
        Reference {
            summary: Summary { n: 590, k: 8, edges: 12822, d_min: 1, d_max: 179, d_bar: 43.36 },
            score_errors: 183,
            score_plus_errors: 98,
            delta_sweep: [99, 100, 99, 98, 101, 101, 104, 105],
            rq_adjacency: [0.25, 0.47, 0.06, 0.11],
            rq_laplacian: [0.32, 0.54, 0.03, 0.09],
            gap_adjacency: 0.0777,
            gap_laplacian: 0.0236,
            count_tolerance: 10,
        },
    ),
];

/// Mean error rates of SCORE and SCORE+ over ten replicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationReference {
    pub experiment: u8,
    pub n: usize,
    pub score: f64,
    pub score_plus: f64,
}

pub const SIMULATION_TOLERANCE: f64 = 0.04;

pub const SIMULATION: [SimulationReference; 10] = [
    SimulationReference { experiment: 1, n: 1000, score: 0.40, score_plus: 0.26 },
    SimulationReference { experiment: 1, n: 2000, score: 0.47, score_plus: 0.21 },
    SimulationReference { experiment: 1, n: 4000, score: 0.44, score_plus: 0.17 },
    SimulationReference { experiment: 1, n: 7000, score: 0.45, score_plus: 0.14 },
    SimulationReference { experiment: 1, n: 10000, score: 0.67, score_plus: 0.14 },
    SimulationReference { experiment: 2, n: 1000, score: 0.37, score_plus: 0.07 },
    SimulationReference { experiment: 2, n: 2000, score: 0.31, score_plus: 0.05 },
    SimulationReference { experiment: 2, n: 4000, score: 0.30, score_plus: 0.05 },
    SimulationReference { experiment: 2, n: 7000, score: 0.26, score_plus: 0.03 },
    SimulationReference { experiment: 2, n: 10000, score: 0.27, score_plus: 0.03 },
];

pub fn simulation_reference(experiment: u8, n: usize) -> Option<&'static SimulationReference> {
    SIMULATION.iter().find(|r| r.experiment == experiment && r.n == n)
}
