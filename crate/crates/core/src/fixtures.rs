//! Reference data reproduced by the test suite.

use crate::arith::Rational;
use crate::heron::family::Qs;
use crate::heron::triangle::{parse_csv, Triangle};
use crate::poly::Polynomial;

/// Twenty integer triangles with a common perimeter and area.
pub const TWENTY_TRIANGLES_CSV: &str = include_str!("../fixtures/twenty_triangles.csv");

pub const TWENTY_PERIMETER: &str = "6111518179503708972000";
pub const TWENTY_AREA: &str = "1340792724147847711994993266314426038400000";

pub fn twenty_triangles() -> Vec<Triangle> {
    parse_csv(TWENTY_TRIANGLES_CSV).expect("bundled table parses")
}

/// Point counts of the K3 surface over `F_11`, `F_121`, `F_1331`.
pub const COUNTS_F11: [u64; 3] = [298, 16908, 1792858];
pub const TRACES_F11: [i128; 3] = [176, 2266, 21296];

/// Factored cubic coordinates `(x_n, y_n, z_n)` for `n = 1..4`, each a list
/// of `(factor, exponent)`.
type Factored = &'static [(&'static str, u32)];

pub const TRIPLE_COORDINATES: [[Factored; 3]; 4] = [
    // n = 1
    [
        &[("s + 1", 1)],
        &[("s - 1", 1)],
        &[("s - 1", 1), ("s", 1)],
    ],
    // n = 2
    [
        &[("s - 1", 1), ("s^4 - 2*s^3 - 2*s^2 + 6*s + 1", 3)],
        &[("s - 1", 1), ("s^4 - 4*s^3 + 4*s^2 + 4*s - 1", 3)],
        &[("s", 1), ("s + 1", 1), ("s^4 - 4*s^3 + 4*s^2 + 3", 3)],
    ],
    // n = 3
    [
        &[("s - 1", 1), ("s^4 - 2*s^3 + 2*s^2 + 2*s + 1", 3), ("s^8 - 6*s^7 + 6*s^6 + 30*s^5 - 72*s^4 + 14*s^3 + 66*s^2 - 22*s - 1", 3)],
        &[("s + 1", 1), ("s^12 - 12*s^11 + 60*s^10 - 148*s^9 + 149*s^8 + 64*s^7 - 224*s^6 + 32*s^5 + 139*s^4 - 84*s^3 + 68*s^2 + 20*s - 1", 3)],
        &[("s - 1", 1), ("s", 1), ("s^12 - 10*s^11 + 38*s^10 - 62*s^9 + 27*s^8 + 12*s^7 + 28*s^6 + 52*s^5 - 225*s^4 + 62*s^3 + 126*s^2 + 10*s + 5", 3)],
    ],
    // n = 4
    [
        &[("s + 1", 1), ("s^24 - 18*s^23 + 138*s^22 - 546*s^21 + 844*s^20 + 2282*s^19 - 16034*s^18 + 40842*s^17 - 49467*s^16 + 12*s^15 + 85220*s^14 - 93076*s^13 - 13088*s^12 + 75284*s^11 - 1348*s^10 - 45356*s^9 - 15685*s^8 + 43622*s^7 - 10830*s^6 - 8298*s^5 + 7764*s^4 + 1698*s^3 + 198*s^2 - 62*s - 1", 3)],
        &[("s - 1", 1), ("s^24 - 22*s^23 + 218*s^22 - 1254*s^21 + 4476*s^20 - 9554*s^19 + 8990*s^18 + 8302*s^17 - 31195*s^16 + 17668*s^15 + 38884*s^14 - 63644*s^13 + 13088*s^12 + 45628*s^11 - 63076*s^10 + 41916*s^9 + 22875*s^8 - 51662*s^7 + 98*s^6 + 16674*s^5 + 5092*s^4 - 10*s^3 + 550*s^2 + 54*s - 1", 3)],
        &[("s - 1", 1), ("s", 1), ("s^24 - 20*s^23 + 176*s^22 - 884*s^21 + 2738*s^20 - 5228*s^19 + 5712*s^18 - 2796*s^17 - 1465*s^16 + 13656*s^15 - 46848*s^14 + 66840*s^13 + 380*s^12 - 107832*s^11 + 85440*s^10 + 46664*s^9 - 70305*s^8 - 10628*s^7 + 20176*s^6 + 6940*s^5 + 5170*s^4 - 2588*s^3 - 1168*s^2 - 28*s - 7", 3)],
    ],
];

fn expand(f: Factored) -> Polynomial<Rational> {
    f.iter().fold(Polynomial::one(), |acc, (text, e)| {
        acc.mul(&Polynomial::parse(text).expect("fixture polynomial").pow(*e))
    })
}

/// `(x_n, y_n, z_n)` as polynomials; `n` in `1..=4`.
pub fn triple_coordinates(n: usize) -> [Polynomial<Rational>; 3] {
    TRIPLE_COORDINATES[n - 1].map(expand)
}

/// Sides `s (s+1) (y+z) / (x+y+z)` and cyclic shifts from the reference coordinates.
pub fn triple_sides(n: usize) -> [Qs; 3] {
    let [x, y, z] = triple_coordinates(n).map(Qs::from_poly);
    crate::heron::triples::sides_from_cubic(&Qs::s(), &[x, y, z]).expect("nonzero sum")
}
