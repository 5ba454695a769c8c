//! Reference data for the two-photons-per-mode output `ξ = 2233` with input
//! `υ = 1123`. Basis order: 2233, 2323, 2332, 3223, 3232, 3322.

#![allow(dead_code)]

/// Right cosets `C_k = {σ : P_σ ῡ^k = 2233}` in basis order.
pub const COSETS: [[&str; 4]; 6] = [
    ["e", "(12)", "(34)", "(12)(34)"],
    ["(23)", "(132)", "(234)", "(1342)"],
    ["(24)", "(142)", "(243)", "(1432)"],
    ["(13)", "(123)", "(134)", "(1234)"],
    ["(14)", "(124)", "(143)", "(1243)"],
    ["(1324)", "(1423)", "(13)(24)", "(14)(23)"],
];

/// Reference `Γ` permutation matrices, one-based column of the 1 in each row. The listed
/// matrix for `σ` is the transpose of the `Γ(σ)` defined by `P_σ Υ_i = Υ_j`.
pub const GAMMA: [(&str, [usize; 6]); 24] = [
    ("e", [1, 2, 3, 4, 5, 6]),
    ("(12)", [1, 4, 5, 2, 3, 6]),
    ("(13)", [4, 2, 6, 1, 5, 3]),
    ("(14)", [5, 6, 3, 4, 1, 2]),
    ("(23)", [2, 1, 3, 4, 6, 5]),
    ("(24)", [3, 2, 1, 6, 5, 4]),
    ("(34)", [1, 3, 2, 5, 4, 6]),
    ("(123)", [4, 1, 5, 2, 6, 3]),
    ("(124)", [5, 4, 1, 6, 3, 2]),
    ("(132)", [2, 4, 6, 1, 3, 5]),
    ("(134)", [4, 6, 2, 5, 1, 3]),
    ("(142)", [3, 6, 5, 2, 1, 4]),
    ("(143)", [5, 3, 6, 1, 4, 2]),
    ("(234)", [2, 3, 1, 6, 4, 5]),
    ("(243)", [3, 1, 2, 5, 6, 4]),
    ("(1234)", [4, 5, 1, 6, 2, 3]),
    ("(1243)", [5, 1, 4, 3, 6, 2]),
    ("(1324)", [6, 4, 2, 5, 3, 1]),
    ("(1342)", [2, 6, 4, 3, 1, 5]),
    ("(1423)", [6, 3, 5, 2, 4, 1]),
    ("(1432)", [3, 5, 6, 1, 2, 4]),
    ("(12)(34)", [1, 5, 4, 3, 2, 6]),
    ("(13)(24)", [6, 2, 4, 3, 5, 1]),
    ("(14)(23)", [6, 5, 3, 4, 2, 1]),
];

pub const D2: [[f64; 6]; 6] = [
    [1., 0., 0., 0., 0., 0.],
    [0., 0., 0., 1., 0., 0.],
    [0., 0., 0., 0., 1., 0.],
    [0., 1., 0., 0., 0., 0.],
    [0., 0., 1., 0., 0., 0.],
    [0., 0., 0., 0., 0., 1.],
];

pub const D3: [[f64; 6]; 6] = [
    [1., 1., 0., 1., 0., 0.],
    [1., 1., 0., 1., 0., 0.],
    [0., 0., 1., 0., 1., 1.],
    [1., 1., 0., 1., 0., 0.],
    [0., 0., 1., 0., 1., 1.],
    [0., 0., 1., 0., 1., 1.],
];

pub const D4: [[f64; 6]; 6] = [
    [2., 1., 1., 1., 1., 0.],
    [1., 2., 1., 1., 0., 1.],
    [1., 1., 2., 0., 1., 1.],
    [1., 1., 0., 2., 1., 1.],
    [1., 0., 1., 1., 2., 1.],
    [0., 1., 1., 1., 1., 2.],
];

/// `Σ_k (k + 7) D_k`.
pub const D_WEIGHTED: [[f64; 6]; 6] = [
    [41., 21., 11., 21., 11., 0.],
    [21., 32., 11., 30., 0., 11.],
    [11., 11., 32., 0., 30., 21.],
    [21., 30., 0., 32., 11., 11.],
    [11., 0., 30., 11., 32., 21.],
    [0., 11., 21., 11., 21., 41.],
];

/// Rows of the reference reducing basis; blocks `[4]`, `[3,1]`, `[2,2]` of sizes 1, 3, 2.
pub fn v() -> [[f64; 6]; 6] {
    let a = 1.0 / 6f64.sqrt();
    let b = 1.0 / 3f64.sqrt();
    let c = 1.0 / (2.0 * 3f64.sqrt());
    [
        [a, a, a, a, a, a],
        [0., -0.5, -0.5, 0.5, 0.5, 0.],
        [-b, c, -c, c, -c, b],
        [a, a, -a, a, -a, -a],
        [0., 0.5, -0.5, -0.5, 0.5, 0.],
        [b, -c, -c, -c, -c, b],
    ]
}

pub const V_BLOCKS: [(usize, usize); 3] = [(0, 1), (1, 3), (4, 2)];

/// S₄ characters for `[4]`, `[3,1]`, `[2,2]` on the classes `[4]`, `[3,1]`, `[2,2]`,
/// `[2,1,1]`, `[1,1,1,1]`.
pub const CHARACTERS: [(&[usize], [i64; 5]); 3] = [
    (&[4], [1, 1, 1, 1, 1]),
    (&[3, 1], [-1, 0, -1, 1, 3]),
    (&[2, 2], [0, -1, 2, 0, 2]),
];
pub const CLASSES: [&[usize]; 5] = [&[4], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]];

/// Interferometer of the `211 → 022` landscape.
pub const LANDSCAPE_U: [[(f64, f64); 3]; 3] = [
    [
        (0.232231, 0.437219),
        (-0.271046, 0.371938),
        (0.168757, 0.717374),
    ],
    [
        (-0.430781, 0.406851),
        (-0.447972, -0.0160114),
        (0.539331, -0.396341),
    ],
    [
        (-0.170262, -0.612224),
        (-0.476765, 0.599963),
        (-0.0840731, -0.043172),
    ],
];
