//! Row data: brackets, metric templates, parameter conditions and the
//! printed connection entries for all fifteen rows.

use crate::lie::Vec3;

/// Resolved parameter values; unused slots stay `NaN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Values {
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
    pub c: f64,
}

/// Static description of one row.
#[derive(Debug, Clone, Copy)]
pub struct CaseInfo {
    pub id: u8,
    pub group: &'static str,
    /// Parameters the caller must supply.
    pub required: &'static [&'static str],
    /// Parameters accepted but unused by the metric template.
    pub inert: &'static [&'static str],
    /// Parameters pinned by the row (`c` for rows 10-13).
    pub fixed: &'static [(&'static str, f64)],
    pub conditions: &'static str,
    pub brackets: [&'static str; 3],
    pub metric: [[&'static str; 3]; 3],
    /// A representative in-domain parameter tuple.
    pub example: &'static [(&'static str, f64)],
}

const GC_BRACKETS: [&str; 3] = ["0", "-y", "c x - 2 y"];
const DIAG_1_MU_NU: [[&str; 3]; 3] = [["1", "0", "0"], ["0", "mu", "0"], ["0", "0", "nu"]];
const DIAG_1_1_NU: [[&str; 3]; 3] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "nu"]];
const DIAG_L_M_N: [[&str; 3]; 3] = [["lambda", "0", "0"], ["0", "mu", "0"], ["0", "0", "nu"]];
const SKEW_1_MU: [[&str; 3]; 3] = [["1", "1", "0"], ["1", "mu", "0"], ["0", "0", "nu"]];

pub static CASES: [CaseInfo; 15] = [
    CaseInfo {
        id: 1,
        group: "R^3",
        required: &[],
        inert: &[],
        fixed: &[],
        conditions: "-",
        brackets: ["0", "0", "0"],
        metric: [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        example: &[],
    },
    CaseInfo {
        id: 2,
        group: "Heisenberg group Nil",
        required: &["lambda"],
        inert: &[],
        fixed: &[],
        conditions: "lambda > 0",
        brackets: ["z", "0", "0"],
        metric: [["lambda", "0", "0"], ["0", "lambda", "0"], ["0", "0", "1"]],
        example: &[("lambda", 1.0)],
    },
    CaseInfo {
        id: 3,
        group: "solvable Lie group Sol",
        required: &["nu"],
        inert: &[],
        fixed: &[],
        conditions: "nu > 0",
        brackets: ["0", "-x", "y"],
        metric: DIAG_1_1_NU,
        example: &[("nu", 1.0)],
    },
    CaseInfo {
        id: 4,
        group: "solvable Lie group Sol",
        required: &["mu", "nu"],
        inert: &[],
        fixed: &[],
        conditions: "mu > 1, nu > 0",
        brackets: ["0", "-x", "y"],
        metric: SKEW_1_MU,
        example: &[("mu", 2.0), ("nu", 1.0)],
    },
    CaseInfo {
        id: 5,
        group: "solvable Lie group E~0(2)",
        required: &["mu", "nu"],
        inert: &[],
        fixed: &[],
        conditions: "0 < mu <= 1, nu > 0",
        brackets: ["0", "y", "-x"],
        metric: DIAG_1_MU_NU,
        example: &[("mu", 1.0), ("nu", 1.0)],
    },
    CaseInfo {
        id: 6,
        group: "simple Lie group PSL~(2,R)",
        required: &["lambda", "mu", "nu"],
        inert: &[],
        fixed: &[],
        conditions: "mu >= nu > 0, lambda > 0",
        brackets: ["2 z", "-2 y", "-2 x"],
        metric: DIAG_L_M_N,
        example: &[("lambda", 1.0), ("mu", 2.0), ("nu", 1.0)],
    },
    CaseInfo {
        id: 7,
        group: "simple Lie group SU(2)",
        required: &["lambda", "mu", "nu"],
        inert: &[],
        fixed: &[],
        conditions: "lambda >= mu >= nu > 0",
        brackets: ["z", "-y", "x"],
        metric: DIAG_L_M_N,
        example: &[("lambda", 3.0), ("mu", 2.0), ("nu", 1.0)],
    },
    CaseInfo {
        id: 8,
        group: "non-unimodular Lie group G_I",
        required: &["nu"],
        inert: &[],
        fixed: &[],
        conditions: "nu > 0",
        brackets: ["0", "-x", "-y"],
        metric: DIAG_1_1_NU,
        example: &[("nu", 1.0)],
    },
    CaseInfo {
        id: 9,
        group: "non-unimodular Lie group G_c",
        required: &["c", "mu", "nu"],
        inert: &[],
        fixed: &[],
        conditions: "0 < mu <= |c|, nu > 0",
        brackets: GC_BRACKETS,
        metric: DIAG_1_MU_NU,
        example: &[("c", 2.0), ("mu", 1.0), ("nu", 1.0)],
    },
    CaseInfo {
        id: 10,
        group: "non-unimodular Lie group G_c",
        required: &["mu", "nu"],
        inert: &[],
        fixed: &[("c", 0.0)],
        conditions: "mu, nu > 0, c = 0",
        brackets: GC_BRACKETS,
        metric: DIAG_1_MU_NU,
        example: &[("mu", 1.0), ("nu", 1.0)],
    },
    CaseInfo {
        id: 11,
        group: "non-unimodular Lie group G_c",
        required: &["nu"],
        inert: &[],
        fixed: &[("c", 0.0)],
        conditions: "nu > 0, c = 0",
        brackets: GC_BRACKETS,
        metric: [["1", "1/2", "0"], ["1/2", "1", "0"], ["0", "0", "nu"]],
        example: &[("nu", 1.0)],
    },
    CaseInfo {
        id: 12,
        group: "non-unimodular Lie group G_c",
        required: &["mu", "nu"],
        inert: &[],
        fixed: &[("c", 1.0)],
        conditions: "nu > 0, c = 1, 0 < mu <= 1",
        brackets: GC_BRACKETS,
        metric: DIAG_1_MU_NU,
        example: &[("mu", 0.5), ("nu", 1.0)],
    },
    CaseInfo {
        id: 13,
        group: "non-unimodular Lie group G_c",
        required: &["lambda", "nu"],
        inert: &["mu"],
        fixed: &[("c", 1.0)],
        conditions: "nu > 0, c = 1, 0 < mu <= 1, 0 < lambda < 1",
        brackets: GC_BRACKETS,
        metric: [["1", "lambda", "0"], ["lambda", "1", "0"], ["0", "0", "nu"]],
        example: &[("lambda", 0.5), ("nu", 1.0)],
    },
    CaseInfo {
        id: 14,
        group: "non-unimodular Lie group G_c",
        required: &["c", "mu", "nu"],
        inert: &[],
        fixed: &[],
        conditions: "nu > 0, c > 1, 1 < mu <= c",
        brackets: GC_BRACKETS,
        metric: SKEW_1_MU,
        example: &[("c", 3.0), ("mu", 2.0), ("nu", 1.0)],
    },
    CaseInfo {
        id: 15,
        group: "non-unimodular Lie group G_c",
        required: &["c", "mu", "nu"],
        inert: &[],
        fixed: &[],
        conditions: "0 <= mu < 1, nu > 0, lambda = sqrt(1 - c); accepted for 0 < c < 1 only",
        brackets: GC_BRACKETS,
        metric: [["A", "B", "0"], ["B", "D", "0"], ["0", "0", "nu"]],
        example: &[("c", 0.5), ("mu", 0.5), ("nu", 1.0)],
    },
];

/// First violated condition of the row, if any.
pub(crate) fn violated(id: u8, p: &Values) -> Option<&'static str> {
    let (l, m, n, c) = (p.lambda, p.mu, p.nu, p.c);
    let checks: &[(bool, &'static str)] = match id {
        1 => &[],
        2 => &[(l > 0.0, "lambda > 0")],
        3 | 8 | 11 => &[(n > 0.0, "nu > 0")],
        4 => &[(m > 1.0, "mu > 1"), (n > 0.0, "nu > 0")],
        5 => &[(m > 0.0 && m <= 1.0, "0 < mu <= 1"), (n > 0.0, "nu > 0")],
        6 => &[(l > 0.0, "lambda > 0"), (n > 0.0, "nu > 0"), (m >= n, "mu >= nu")],
        7 => &[(n > 0.0, "nu > 0"), (m >= n, "mu >= nu"), (l >= m, "lambda >= mu")],
        9 => &[(m > 0.0 && m <= c.abs(), "0 < mu <= |c|"), (n > 0.0, "nu > 0")],
        10 => &[(m > 0.0, "mu > 0"), (n > 0.0, "nu > 0")],
        12 => &[(m > 0.0 && m <= 1.0, "0 < mu <= 1"), (n > 0.0, "nu > 0")],
        13 => &[
            (l > 0.0 && l < 1.0, "0 < lambda < 1"),
            (m.is_nan() || (m > 0.0 && m <= 1.0), "0 < mu <= 1"),
            (n > 0.0, "nu > 0"),
        ],
        14 => &[
            (c > 1.0, "c > 1"),
            (m > 1.0 && m <= c, "1 < mu <= c"),
            (n > 0.0, "nu > 0"),
        ],
        15 => &[
            (c > 0.0 && c < 1.0, "0 < c < 1"),
            ((0.0..1.0).contains(&m), "0 <= mu < 1"),
            (n > 0.0, "nu > 0"),
        ],
        _ => &[(false, "unknown case")],
    };
    checks.iter().find(|(ok, _)| !ok).map(|(_, what)| *what)
}

fn v(a: f64, b: f64, c: f64) -> Vec3 {
    Vec3::new(a, b, c)
}

const ZERO: [f64; 3] = [0.0; 3];

/// `[x,y]`, `[x,z]`, `[y,z]`.
pub(crate) fn brackets(id: u8, p: &Values) -> [Vec3; 3] {
    let rows: [[f64; 3]; 3] = match id {
        1 => [ZERO; 3],
        2 => [[0., 0., 1.], ZERO, ZERO],
        3 | 4 => [ZERO, [-1., 0., 0.], [0., 1., 0.]],
        5 => [ZERO, [0., 1., 0.], [-1., 0., 0.]],
        6 => [[0., 0., 2.], [0., -2., 0.], [-2., 0., 0.]],
        7 => [[0., 0., 1.], [0., -1., 0.], [1., 0., 0.]],
        8 => [ZERO, [-1., 0., 0.], [0., -1., 0.]],
        9..=15 => [ZERO, [0., -1., 0.], [p.c, -2., 0.]],
        _ => unreachable!("case id validated upstream"),
    };
    rows.map(Vec3::from)
}

/// Case-15 metric entries `(A, B, D)` with `λ² = 1 − c`.
pub(crate) fn case15_abd(c: f64, mu: f64) -> (f64, f64, f64) {
    let l2 = 1.0 - c;
    let a = (l2 * (1.0 + mu) + 1.0 - mu) / (2.0 * c * c * l2);
    let b = (1.0 - mu) / (2.0 * c * l2);
    let d = (1.0 - mu) / (2.0 * l2);
    (a, b, d)
}

pub(crate) fn metric(id: u8, p: &Values) -> [[f64; 3]; 3] {
    let (l, m, n) = (p.lambda, p.mu, p.nu);
    match id {
        1 => [[1., 0., 0.], [0., 1., 0.], [0., 0., 1.]],
        2 => [[l, 0., 0.], [0., l, 0.], [0., 0., 1.]],
        3 | 8 => [[1., 0., 0.], [0., 1., 0.], [0., 0., n]],
        4 | 14 => [[1., 1., 0.], [1., m, 0.], [0., 0., n]],
        5 | 9 | 10 | 12 => [[1., 0., 0.], [0., m, 0.], [0., 0., n]],
        6 | 7 => [[l, 0., 0.], [0., m, 0.], [0., 0., n]],
        11 => [[1., 0.5, 0.], [0.5, 1., 0.], [0., 0., n]],
        13 => [[1., l, 0.], [l, 1., 0.], [0., 0., n]],
        15 => {
            let (a, b, d) = case15_abd(p.c, m);
            [[a, b, 0.], [b, d, 0.], [0., 0., n]]
        }
        _ => unreachable!("case id validated upstream"),
    }
}

/// The printed connection row, `table[i][j] = ∇_{e_i} e_j`.
pub(crate) fn printed_connection(id: u8, p: &Values) -> [[Vec3; 3]; 3] {
    let (l, m, n, c) = (p.lambda, p.mu, p.nu, p.c);
    let o = Vec3::zeros();
    match id {
        1 => [[o; 3]; 3],
        2 => [
            [o, v(0., 0., 0.5), v(0., -1. / (2. * l), 0.)],
            [v(0., 0., -0.5), o, v(1. / (2. * l), 0., 0.)],
            [v(0., -1. / (2. * l), 0.), v(1. / (2. * l), 0., 0.), o],
        ],
        3 => [
            [v(0., 0., 1. / n), o, v(-1., 0., 0.)],
            [o, v(0., 0., -1. / n), v(0., 1., 0.)],
            [o, o, o],
        ],
        4 => {
            let k = 1. - m;
            [
                [v(0., 0., 1. / n), o, v(m / k, -1. / k, 0.)],
                [o, v(0., 0., -m / n), v(m / k, -m / k, 0.)],
                [v(1. / k, -1. / k, 0.), v(m / k, -1. / k, 0.), o],
            ]
        }
        5 => [
            [o, v(0., 0., (1. - m) / (2. * n)), v(0., (m - 1.) / (2. * m), 0.)],
            [v(0., 0., (1. - m) / (2. * n)), o, v((m - 1.) / 2., 0., 0.)],
            [v(0., -(1. + m) / (2. * m), 0.), v((1. + m) / 2., 0., 0.), o],
        ],
        6 => [
            [o, v(0., 0., (l + m + n) / n), v(0., -(l + m + n) / m, 0.)],
            [v(0., 0., (l + m - n) / n), o, v((-l - m + n) / l, 0., 0.)],
            [v(0., (-l + m - n) / m, 0.), v((l - m + n) / l, 0., 0.), o],
        ],
        7 => [
            [o, v(0., 0., (-l + m + n) / (2. * n)), v(0., (l - m - n) / (2. * m), 0.)],
            [v(0., 0., (-l + m - n) / (2. * n)), o, v((l - m + n) / (2. * l), 0., 0.)],
            [v(0., (l + m - n) / (2. * m), 0.), v((-l - m + n) / (2. * l), 0., 0.), o],
        ],
        8 => [
            [v(0., 0., 1. / n), o, v(-1., 0., 0.)],
            [o, v(0., 0., 1. / n), v(0., -1., 0.)],
            [o, o, o],
        ],
        9 => [
            [o, v(0., 0., (m - c) / (2. * n)), v(0., (c - m) / (2. * m), 0.)],
            [
                v(0., 0., (m - c) / (2. * n)),
                v(0., 0., 2. * m / n),
                v((c - m) / 2., -2., 0.),
            ],
            [v(0., (c + m) / (2. * m), 0.), v(-(c + m) / 2., 0., 0.), o],
        ],
        10 => [
            [o, v(0., 0., m / (2. * n)), v(0., -0.5, 0.)],
            [v(0., 0., m / (2. * n)), v(0., 0., 2. * m / n), v(-m / 2., -2., 0.)],
            [v(0., 0.5, 0.), v(-m / 2., 0., 0.), o],
        ],
        11 => [
            [v(0., 0., 1. / (2. * n)), v(0., 0., 1. / n), v(0., -1., 0.)],
            [v(0., 0., 1. / n), v(0., 0., 2. / n), v(0., -2., 0.)],
            [o, o, o],
        ],
        12 => [
            [o, v(0., 0., (m - 1.) / (2. * n)), v(0., (1. - m) / (2. * m), 0.)],
            [
                v(0., 0., (m - 1.) / (2. * n)),
                v(0., 0., 2. * m / n),
                v((1. - m) / 2., -2., 0.),
            ],
            [v(0., (1. + m) / (2. * m), 0.), v(-(1. + m) / 2., 0., 0.), o],
        ],
        13 => {
            let k = 1. + l;
            [
                [v(0., 0., l / n), v(0., 0., l / n), v(-l / k, -l / k, 0.)],
                [v(0., 0., l / n), v(0., 0., (2. - l) / n), v(l / k, -(2. + l) / k, 0.)],
                [v(-l / k, 1. / k, 0.), v(-1. / k, l / k, 0.), o],
            ]
        }
        14 => {
            let k = 2. * (1. - m);
            [
                [
                    v(0., 0., 1. / n),
                    v(0., 0., (2. + m - c) / (2. * n)),
                    v((-2. + m + c) / k, (m - c) / k, 0.),
                ],
                [
                    v(0., 0., (2. + m - c) / (2. * n)),
                    v(0., 0., (2. * m - c) / n),
                    v((-m * (c + 2.) + 2. * c + m * m) / k, (-2. + 3. * m - c) / k, 0.),
                ],
                [
                    v((-2. + m + c) / k, (2. - m - c) / k, 0.),
                    v((m * m + m * (c - 2.)) / k, (2. - c - m) / k, 0.),
                    o,
                ],
            ]
        }
        15 => {
            let k = 1. + m;
            let q = c * (m * m - 1.);
            [
                [
                    v(0., 0., (1. - m) / (2. * c * (1. - c) * n)),
                    v(0., 0., (m - c) / (2. * c * (c - 1.) * n)),
                    v(-m / k, (c + c * m - 2. * m) / q, 0.),
                ],
                [
                    v(0., 0., (m - c) / (2. * c * (c - 1.) * n)),
                    v(0., 0., (m - 1.) / (2. * (c - 1.) * n)),
                    v(c / k, -(2. + m) / k, 0.),
                ],
                [v(-m / k, (-2. + c + c * m) * m / q, 0.), v(-c * m / k, m / k, 0.), o],
            ]
        }
        _ => unreachable!("case id validated upstream"),
    }
}
