//! Birational maps between the equation models and their Weierstrass curves,
//! stored as coefficient tables of monomials `N^i s^j t^k`.

use num_traits::{One, Zero};

use crate::curve::{qi, Q};

/// `(coefficient, deg N, deg first variable, deg second variable)`.
pub type Term = (i64, u32, u32, u32);

pub fn eval_terms(terms: &[Term], n: &Q, s: &Q, t: &Q) -> Q {
    let mut acc = Q::zero();
    for &(c, i, j, k) in terms {
        acc += qi(c) * pow(n, i) * pow(s, j) * pow(t, k);
    }
    acc
}

pub fn pow(b: &Q, e: u32) -> Q {
    let mut r = Q::one();
    for _ in 0..e {
        r *= b;
    }
    r
}

// Cubic family, (N, u, v) -> x: numerator over (N - u)^2.
pub const CUBIC_X_NUM: &[Term] = &[
    (-45, 3, 0, 1),
    (45, 2, 1, 1),
    (120, 3, 0, 0),
    (-60, 2, 1, 0),
    (-60, 1, 2, 0),
    (15, 1, 0, 1),
    (-15, 0, 1, 1),
    (3, 0, 0, 2),
    (60, 0, 1, 0),
    (-12, 0, 0, 1),
    (-60, 1, 0, 0),
    (9, 0, 0, 0),
];

// Cubic family, (N, u, v) -> y: 3/2 times this numerator over (N - u)^3.
// With the factor -3/2 the image would be the negative of the point that the
// inverse maps below send back to (u, v).
pub const CUBIC_Y_NUM: &[Term] = &[
    (675, 6, 0, 0),
    (-675, 5, 1, 0),
    (-675, 4, 2, 0),
    (675, 3, 3, 0),
    (120, 3, 0, 2),
    (-120, 2, 1, 2),
    (-675, 4, 0, 0),
    (1125, 3, 1, 0),
    (-480, 3, 0, 1),
    (-225, 2, 2, 0),
    (390, 2, 1, 1),
    (-225, 1, 3, 0),
    (90, 1, 2, 1),
    (420, 3, 0, 0),
    (-180, 2, 1, 0),
    (-180, 1, 2, 0),
    (-40, 1, 0, 2),
    (-60, 0, 3, 0),
    (40, 0, 1, 2),
    (150, 2, 0, 0),
    (-300, 1, 1, 0),
    (190, 1, 0, 1),
    (150, 0, 2, 0),
    (-190, 0, 1, 1),
    (6, 0, 0, 2),
    (-240, 1, 0, 0),
    (240, 0, 1, 0),
    (-24, 0, 0, 1),
    (18, 0, 0, 0),
];

// Cubic family, (N, x, y) -> u numerator.
pub const CUBIC_U_NUM: &[Term] = &[
    (-2, 1, 3, 0),
    (-120, 0, 2, 0),
    (6, 0, 1, 1),
    (15525, 3, 1, 0),
    (-12375, 1, 1, 0),
    (540, 0, 1, 0),
    (4050, 4, 0, 1),
    (-2700, 2, 0, 1),
    (360, 1, 0, 1),
    (450, 0, 0, 1),
    (-1366875, 7, 0, 0),
    (1366875, 5, 0, 0),
    (135000, 4, 0, 0),
    (-455625, 3, 0, 0),
    (-67500, 2, 0, 0),
    (58725, 1, 0, 0),
    (-40500, 0, 0, 0),
];

// Cubic family, (N, x, y) -> v numerator.
pub const CUBIC_V_NUM: &[Term] = &[
    (5467500, 6, 0, 0),
    (-7290000, 4, 0, 0),
    (759375, 3, 0, 0),
    (3037500, 2, 0, 0),
    (-577125, 1, 0, 0),
    (-380700, 0, 0, 0),
    (-91125, 5, 1, 0),
    (60750, 3, 1, 0),
    (-8100, 2, 1, 0),
    (-10125, 1, 1, 0),
    (-8100, 0, 1, 0),
    (-270, 1, 2, 0),
    (5400, 3, 0, 1),
    (-1800, 1, 0, 1),
    (270, 0, 0, 1),
    (90, 2, 1, 1),
    (-30, 0, 1, 1),
];

// Shared denominator of the (x, y) -> (u, v) maps.
pub const CUBIC_UV_DEN: &[Term] = &[
    (-2, 0, 3, 0),
    (-360, 1, 2, 0),
    (-9450, 2, 1, 0),
    (-4050, 0, 1, 0),
    (2733750, 6, 0, 0),
    (-2733750, 4, 0, 0),
    (297000, 3, 0, 0),
    (911250, 2, 0, 0),
    (-243000, 1, 0, 0),
    (-89100, 0, 0, 0),
];

// Closed forms printed for N = -2, used as a regression check.
pub const D1_X_NUM: &[Term] = &[
    (120, 0, 2, 0),
    (165, 0, 1, 1),
    (3, 0, 0, 2),
    (-180, 0, 1, 0),
    (318, 0, 0, 1),
    (-831, 0, 0, 0),
];
pub const D1_Y_NUM: &[Term] = &[
    (7515, 0, 3, 0),
    (270, 0, 2, 1),
    (660, 0, 1, 2),
    (16785, 0, 2, 0),
    (-2055, 0, 1, 1),
    (1311, 0, 0, 2),
    (-19080, 0, 1, 0),
    (-5154, 0, 0, 1),
    (-45207, 0, 0, 0),
];
pub const D1_U_NUM: &[Term] = &[
    (2, 0, 3, 0),
    (-60, 0, 2, 0),
    (3, 0, 1, 1),
    (-49455, 0, 1, 0),
    (26865, 0, 0, 1),
    (68298525, 0, 0, 0),
];
pub const D1_V_NUM: &[Term] = &[
    (270, 0, 2, 0),
    (165, 0, 1, 1),
    (1204875, 0, 1, 0),
    (-19665, 0, 0, 1),
    (120064275, 0, 0, 0),
];
pub const D1_UV_DEN: &[Term] = &[
    (-1, 0, 3, 0),
    (360, 0, 2, 0),
    (-20925, 0, 1, 0),
    (66442950, 0, 0, 0),
];

// Quartic model, (u, v) -> x: 315 times this over u^2.
pub const QUARTIC_X_NUM: &[Term] = &[(1, 0, 2, 0), (-2, 0, 1, 0), (-2, 0, 0, 1), (630, 0, 0, 0)];
// (u, v) -> y: 630 times this over u^3; with -630 the forward map would not
// invert the (x, y) -> (u, v) maps below.
pub const QUARTIC_Y_NUM: &[Term] = &[
    (175, 0, 3, 0),
    (-945, 0, 2, 0),
    (-1, 0, 1, 1),
    (945, 0, 1, 0),
    (630, 0, 0, 1),
    (-198450, 0, 0, 0),
];
// (x, y) -> u: -630 times this over q(x).
pub const QUARTIC_U_NUM: &[Term] = &[(1, 0, 1, 0), (109935, 0, 0, 0), (1, 0, 0, 1)];
// (x, y) -> v: -315 times this over q(x)^2.
pub const QUARTIC_V_NUM: &[Term] = &[
    (1, 0, 4, 0),
    (630, 0, 3, 0),
    (2, 0, 2, 1),
    (-529200, 0, 2, 0),
    (439740, 0, 1, 1),
    (22441718250, 0, 1, 0),
    (-110933550, 0, 0, 1),
    (-196956864680625, 0, 0, 0),
];
// q(x) = x^2 - 630x - 13792275.
pub const QUARTIC_Q: &[Term] = &[(1, 0, 2, 0), (-630, 0, 1, 0), (-13792275, 0, 0, 0)];
