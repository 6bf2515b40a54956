//! Published data the computations are checked against.

use serde::Serialize;

/// One row of the Hecke sieve: the prime `p` of good reduction and the
/// auxiliary primes `q` used per degree. An empty column means
/// `Y_1(m, n)(F_{p^d})` is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SieveRow {
    pub m: u64,
    pub n: u64,
    pub p: u64,
    /// `q ≡ residue (mod modulus)` is required, when present.
    pub cc: Option<(u64, u64)>,
    pub deg2: &'static [u64],
    pub deg3: &'static [u64],
    pub deg2_2: &'static [u64],
    pub deg4: &'static [u64],
}

impl SieveRow {
    pub fn column(&self, d: u32) -> &'static [u64] {
        match d {
            2 => self.deg2,
            3 => self.deg3,
            4 => self.deg4,
            _ => &[],
        }
    }
}

const fn row(
    m: u64,
    n: u64,
    p: u64,
    cc: Option<(u64, u64)>,
    deg2: &'static [u64],
    deg3: &'static [u64],
    deg2_2: &'static [u64],
    deg4: &'static [u64],
) -> SieveRow {
    SieveRow { m, n, p, cc, deg2, deg3, deg2_2, deg4 }
}

pub const HECKE_SIEVE: [SieveRow; 9] = [
    row(1, 25, 3, None, &[], &[], &[], &[7]),
    row(1, 26, 7, None, &[3], &[3], &[3], &[3]),
    row(1, 28, 5, Some((1, 4)), &[13], &[13], &[3], &[3]),
    row(1, 32, 3, None, &[], &[5], &[], &[5]),
    row(1, 34, 3, None, &[], &[], &[], &[5]),
    row(1, 36, 5, Some((1, 4)), &[], &[13], &[], &[7]),
    row(1, 42, 11, None, &[5], &[5], &[5], &[5]),
    row(2, 20, 7, None, &[3], &[3], &[3], &[3]),
    row(2, 24, 5, Some((1, 4)), &[], &[17], &[], &[7, 11]),
];

/// A row of the quartic global-method table: `a`, the published order of
/// `<a>`, and `⌈b(n)⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DsRow {
    pub n: u64,
    pub a: u64,
    pub order: u64,
    pub b_ceil: u64,
    pub d_cm: u64,
}

pub const DS_TABLE: [DsRow; 9] = [
    DsRow { n: 77, a: 3, order: 30, b_ceil: 5, d_cm: 60 },
    DsRow { n: 85, a: 3, order: 16, b_ceil: 5, d_cm: 32 },
    DsRow { n: 91, a: 3, order: 6, b_ceil: 6, d_cm: 24 },
    DsRow { n: 121, a: 56, order: 11, b_ceil: 10, d_cm: 110 },
    DsRow { n: 143, a: 67, order: 12, b_ceil: 13, d_cm: 120 },
    DsRow { n: 169, a: 3, order: 39, b_ceil: 21, d_cm: 52 },
    DsRow { n: 187, a: 122, order: 16, b_ceil: 22, d_cm: 160 },
    DsRow { n: 221, a: 3, order: 48, b_ceil: 35, d_cm: 96 },
    DsRow { n: 289, a: 3, order: 272, b_ceil: 59, d_cm: 136 },
];

/// Higher-degree rows: `a = 3^e` with `e` the lcm of the positive-rank
/// character orders `chi` (`e = 1` when there are none).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HigherDegreeRow {
    pub n: u64,
    pub chi: &'static [u64],
    pub a_exp: u64,
    pub order: u64,
    pub b_ceil: u64,
    pub d_cm: u64,
}

pub const HIGHER_DEGREE_TABLE: [HigherDegreeRow; 8] = [
    HigherDegreeRow { n: 95, chi: &[12], a_exp: 12, order: 3, b_ceil: 6, d_cm: 72 },
    HigherDegreeRow { n: 119, chi: &[], a_exp: 1, order: 48, b_ceil: 10, d_cm: 96 },
    HigherDegreeRow { n: 125, chi: &[], a_exp: 1, order: 50, b_ceil: 10, d_cm: 50 },
    HigherDegreeRow { n: 133, chi: &[3, 6], a_exp: 6, order: 3, b_ceil: 11, d_cm: 36 },
    HigherDegreeRow { n: 209, chi: &[5], a_exp: 5, order: 18, b_ceil: 27, d_cm: 180 },
    HigherDegreeRow { n: 247, chi: &[12, 12], a_exp: 12, order: 3, b_ceil: 38, d_cm: 72 },
    HigherDegreeRow { n: 323, chi: &[8], a_exp: 8, order: 18, b_ceil: 65, d_cm: 288 },
    HigherDegreeRow { n: 361, chi: &[], a_exp: 1, order: 171, b_ceil: 93, d_cm: 114 },
];

/// `(n, ⌈bound⌉)` for the rank-zero quintic cases.
pub const QUINTIC_GONALITY: [(u64, u64); 4] = [(49, 12), (51, 12), (55, 15), (75, 24)];

/// Low-degree points on `X_1(n)` with the rank and gonality data used to certify them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SporadicRow {
    pub d: u64,
    pub n: u64,
    pub rank_zero: bool,
    pub gon: u64,
}

pub const SPORADIC_X1: [SporadicRow; 9] = [
    SporadicRow { d: 5, n: 28, rank_zero: true, gon: 6 },
    SporadicRow { d: 6, n: 37, rank_zero: false, gon: 18 },
    SporadicRow { d: 7, n: 33, rank_zero: true, gon: 10 },
    SporadicRow { d: 8, n: 33, rank_zero: true, gon: 10 },
    SporadicRow { d: 9, n: 31, rank_zero: true, gon: 12 },
    SporadicRow { d: 10, n: 29, rank_zero: true, gon: 11 },
    SporadicRow { d: 11, n: 35, rank_zero: true, gon: 12 },
    SporadicRow { d: 12, n: 39, rank_zero: true, gon: 14 },
    SporadicRow { d: 13, n: 39, rank_zero: true, gon: 14 },
];
