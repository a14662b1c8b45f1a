//! Reference parameters of known-good codes, used by tests, examples and the
//! acceptance suite.
//!
//! Two-dimensional rows use `f = 1 + x + x^a y^b`, `g = 1 + y + x^c y^d` on the
//! torus `a1 = (0, α)`, `a2 = (β, γ)`. One-dimensional rows use
//! `f = 1 + y^a + y^b`, `g = 1 + y + y^c` on a cycle of length `l`.

use crate::poly2::{Exponent, LaurentPoly};
use crate::torus::TwistedTorus;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ToricRow {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub f_term: (i64, i64),
    pub g_term: (i64, i64),
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl ToricRow {
    pub fn f(&self) -> LaurentPoly {
        LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(1, 0), Exponent::new(self.f_term.0, self.f_term.1)])
    }

    pub fn g(&self) -> LaurentPoly {
        LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(0, 1), Exponent::new(self.g_term.0, self.g_term.1)])
    }

    pub fn torus(&self) -> TwistedTorus {
        TwistedTorus::new(self.alpha, self.beta, self.gamma).expect("catalog tori are valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleRow {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub f_exps: (i64, i64),
    pub g_exp: i64,
    pub l: i64,
}

impl CycleRow {
    pub fn f(&self) -> LaurentPoly {
        LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(0, self.f_exps.0), Exponent::new(0, self.f_exps.1)])
    }

    pub fn g(&self) -> LaurentPoly {
        LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(0, 1), Exponent::new(0, self.g_exp)])
    }
}

#[allow(clippy::too_many_arguments)]
const fn row(n: usize, k: usize, d: usize, f_term: (i64, i64), g_term: (i64, i64), alpha: i64, beta: i64, gamma: i64) -> ToricRow {
    ToricRow { n, k, d, f_term, g_term, alpha, beta, gamma }
}

const fn gb(n: usize, k: usize, d: usize, f_exps: (i64, i64), g_exp: i64, l: i64) -> CycleRow {
    CycleRow { n, k, d, f_exps, g_exp, l }
}

/// Best weight-6 codes on twisted tori for `n ≤ 400`.
pub const TORIC_ROWS: &[ToricRow] = &[
    row(12, 4, 2, (1, 1), (1, 1), 3, 2, 1),
    row(14, 6, 2, (0, 1), (1, 0), 7, 1, 2),
    row(18, 4, 4, (1, 1), (1, 1), 3, 3, 0),
    row(24, 4, 4, (1, 1), (1, 1), 3, 4, 2),
    row(28, 6, 4, (-1, 1), (1, 1), 7, 2, 3),
    row(30, 4, 6, (2, 0), (2, 0), 3, 5, 1),
    row(36, 4, 6, (-1, 0), (0, -1), 9, 2, 4),
    row(42, 6, 6, (1, 1), (1, -1), 7, 3, 2),
    row(48, 4, 8, (2, 0), (2, 0), 3, 8, 1),
    row(54, 8, 6, (-1, 0), (3, 2), 3, 9, 0),
    row(56, 6, 8, (0, -2), (-2, 0), 7, 4, 3),
    row(60, 8, 6, (0, -2), (2, 0), 10, 3, 3),
    row(62, 10, 6, (-1, 1), (-1, -1), 31, 1, 13),
    row(66, 4, 10, (-2, -1), (2, 1), 3, 11, 2),
    row(70, 6, 8, (1, 1), (1, -1), 7, 5, 1),
    row(72, 8, 8, (-1, 3), (3, -1), 12, 3, 3),
    row(78, 4, 10, (-2, -1), (2, 1), 3, 13, 1),
    row(84, 6, 10, (-2, 0), (-2, 2), 14, 3, -6),
    row(90, 8, 10, (-1, -3), (3, -1), 15, 3, -6),
    row(96, 4, 12, (-2, 1), (1, -2), 12, 4, 2),
    row(98, 6, 12, (-1, 2), (-2, -1), 7, 7, 0),
    row(102, 4, 12, (-3, 1), (3, 2), 3, 17, 2),
    row(108, 8, 10, (-1, -3), (3, -1), 9, 6, 0),
    row(108, 8, 10, (-1, 3), (3, -1), 9, 6, 0),
    row(112, 6, 12, (-1, 2), (-2, -1), 7, 8, 2),
    row(114, 4, 14, (-3, 1), (-5, 0), 3, 19, 1),
    row(120, 8, 12, (-2, 1), (1, 2), 10, 6, 4),
    row(124, 10, 10, (-1, 2), (-2, -1), 31, 2, -12),
    row(126, 12, 10, (-1, -2), (1, -1), 9, 7, 3),
    row(132, 4, 14, (0, -2), (-2, 0), 33, 2, -7),
    row(138, 4, 14, (-3, 1), (3, 2), 3, 23, 2),
    row(140, 6, 14, (-2, 0), (-2, 2), 7, 10, 1),
    row(144, 12, 12, (-1, -3), (3, -1), 12, 6, 0),
    row(144, 12, 12, (-1, 3), (3, -1), 12, 6, 0),
    row(146, 18, 4, (0, 2), (-4, 1), 73, 1, 16),
    row(150, 8, 12, (-2, 1), (1, 2), 25, 3, 7),
    row(154, 6, 16, (-1, 2), (0, -4), 77, 1, 16),
    row(156, 4, 16, (-2, 1), (1, -2), 39, 2, -11),
    row(162, 8, 14, (-1, -3), (3, -1), 9, 9, -3),
    row(162, 8, 14, (-1, 3), (3, -1), 9, 9, -3),
    row(168, 8, 14, (2, 3), (-3, 2), 42, 2, -16),
    row(170, 16, 10, (0, -4), (4, 0), 17, 5, -7),
    row(174, 4, 18, (-8, 1), (6, 2), 3, 29, 1),
    row(180, 8, 16, (-1, -3), (3, -1), 15, 6, 6),
    row(180, 8, 16, (-1, 3), (3, -1), 15, 6, 3),
    row(182, 6, 18, (2, 3), (4, 1), 7, 13, 1),
    row(186, 10, 14, (2, 3), (2, -2), 31, 3, 7),
    row(192, 8, 16, (-1, 3), (3, -1), 12, 8, 2),
    row(196, 6, 18, (-1, 2), (-2, -1), 49, 2, -10),
    row(198, 8, 16, (-4, 0), (-3, 2), 33, 3, 9),
    row(204, 4, 20, (-3, 1), (-1, -2), 51, 2, 14),
    row(210, 10, 16, (-3, 2), (-3, -1), 21, 5, 10),
    row(216, 8, 18, (-2, -5), (-1, -3), 54, 2, 16),
    row(222, 4, 20, (-6, -1), (5, 0), 3, 37, 2),
    row(224, 6, 20, (-3, 2), (-3, -1), 28, 4, -6),
    row(228, 4, 20, (-2, 1), (1, -2), 57, 2, 10),
    row(234, 8, 18, (2, 3), (-3, 2), 39, 3, -9),
    row(234, 8, 18, (-1, 3), (3, -1), 39, 3, 6),
    row(238, 6, 20, (-4, 0), (-3, 2), 7, 17, 1),
    row(240, 8, 18, (-2, 1), (1, 2), 10, 12, 3),
    row(246, 4, 22, (3, 1), (2, -2), 123, 1, 22),
    row(248, 10, 18, (-2, 1), (-3, -2), 62, 2, 25),
    row(252, 12, 16, (-3, -1), (2, -2), 18, 7, 7),
    row(254, 14, 16, (-1, -3), (0, -6), 127, 1, 25),
    row(258, 4, 22, (-8, -1), (5, 1), 3, 43, 1),
    row(264, 8, 20, (1, -5), (1, 4), 66, 2, 28),
    row(266, 6, 22, (-1, -1), (5, 0), 7, 19, 2),
    row(270, 8, 20, (-1, -3), (3, -1), 15, 9, 6),
    row(270, 8, 20, (-1, 3), (3, -1), 45, 3, -12),
    row(276, 4, 24, (-3, 1), (3, 2), 6, 23, 5),
    row(280, 6, 22, (1, 3), (2, -2), 28, 5, 12),
    row(282, 4, 24, (-1, 3), (3, -1), 141, 1, 7),
    row(288, 12, 18, (-1, -3), (3, -1), 12, 12, 0),
    row(292, 18, 8, (0, 2), (-4, 1), 73, 2, 32),
    row(294, 10, 20, (-3, 1), (1, -3), 21, 7, 7),
    row(300, 8, 22, (-1, -4), (-3, 3), 75, 2, 26),
    row(306, 8, 22, (-1, -3), (3, -1), 51, 3, 21),
    row(308, 6, 24, (-1, -2), (2, -1), 77, 2, -13),
    row(310, 10, 22, (3, 2), (-4, 4), 31, 5, 11),
    row(312, 8, 22, (-1, 3), (1, 3), 78, 2, -16),
    row(318, 4, 26, (3, -4), (-1, -3), 159, 1, 17),
    row(322, 6, 24, (-3, 2), (-4, -1), 7, 23, 3),
    row(324, 8, 22, (-1, -3), (3, -1), 18, 9, 6),
    row(330, 8, 24, (-6, 2), (2, 5), 55, 3, 23),
    row(336, 10, 22, (-4, 0), (-1, -3), 84, 2, 37),
    row(340, 16, 18, (0, -4), (4, 0), 34, 5, -7),
    row(342, 8, 22, (-1, -3), (3, -1), 57, 3, 15),
    row(348, 4, 26, (-2, 2), (-1, -2), 87, 2, 14),
    row(350, 6, 26, (2, 2), (-4, 1), 35, 5, 13),
    row(354, 4, 28, (-2, 2), (-1, -2), 177, 1, -53),
    row(360, 12, 24, (-1, 3), (3, -1), 30, 6, 6),
    row(364, 6, 26, (-1, 3), (3, 0), 14, 13, 4),
    row(366, 4, 28, (2, 3), (2, -2), 183, 1, 76),
    row(372, 10, 24, (-3, -2), (-1, -3), 93, 2, -16),
    row(378, 12, 22, (3, -3), (4, 0), 21, 9, 6),
    row(384, 12, 24, (-4, -3), (3, -1), 48, 4, 20),
    row(390, 8, 26, (-2, 3), (2, 3), 15, 13, 1),
    row(392, 6, 28, (-3, 2), (-3, -1), 28, 7, 7),
    row(396, 8, 26, (-1, -3), (3, -1), 66, 3, 18),
];

/// One-dimensional bicycle codes on cycles, `n ≤ 400`.
pub const CYCLE_ROWS: &[CycleRow] = &[
    gb(12, 4, 2, (1, 2), 2, 6),
    gb(14, 6, 2, (1, 3), 3, 7),
    gb(18, 4, 4, (2, 4), 2, 9),
    gb(24, 4, 4, (2, 4), 2, 12),
    gb(28, 6, 4, (2, 3), 5, 14),
    gb(30, 8, 4, (2, 8), 4, 15),
    gb(36, 4, 6, (2, 4), 5, 18),
    gb(42, 10, 4, (2, 10), 5, 21),
    gb(48, 4, 8, (5, 7), 5, 24),
    gb(54, 4, 8, (5, 7), 5, 27),
    gb(56, 6, 8, (3, 9), 5, 28),
    gb(60, 8, 6, (7, 9), 4, 30),
    gb(62, 10, 6, (3, 8), 12, 31),
    gb(66, 4, 10, (2, 7), 11, 33),
    gb(70, 6, 8, (3, 9), 5, 35),
    gb(72, 4, 10, (2, 7), 11, 36),
    gb(78, 4, 10, (5, 7), 8, 39),
    gb(84, 10, 6, (11, 13), 5, 42),
    gb(90, 8, 8, (2, 9), 12, 45),
    gb(96, 4, 12, (5, 7), 11, 48),
    gb(98, 6, 12, (4, 12), 10, 49),
    gb(102, 4, 12, (4, 8), 11, 51),
    gb(108, 4, 12, (8, 10), 8, 54),
    gb(112, 6, 12, (3, 15), 10, 56),
    gb(114, 4, 14, (8, 13), 11, 57),
    gb(120, 8, 12, (8, 21), 12, 60),
    gb(124, 10, 10, (8, 11), 13, 62),
    gb(126, 12, 10, (12, 23), 8, 63),
    gb(132, 4, 14, (4, 14), 14, 66),
    gb(138, 4, 14, (8, 13), 8, 69),
    gb(140, 6, 14, (10, 16), 12, 70),
    gb(144, 4, 16, (23, 28), 20, 72),
    gb(146, 18, 4, (2, 18), 9, 73),
    gb(150, 8, 12, (2, 8), 19, 75),
    gb(154, 6, 16, (4, 34), 19, 77),
    gb(156, 4, 16, (11, 16), 14, 78),
    gb(162, 4, 16, (7, 11), 14, 81),
    gb(168, 10, 12, (11, 19), 17, 84),
    gb(170, 16, 10, (21, 25), 16, 85),
    gb(174, 4, 18, (7, 11), 17, 87),
    gb(180, 8, 16, (8, 47), 34, 90),
    gb(182, 6, 18, (9, 13), 38, 91),
    gb(186, 14, 10, (8, 19), 14, 93),
    gb(192, 4, 18, (11, 16), 14, 96),
    gb(196, 6, 18, (12, 22), 19, 98),
    gb(198, 4, 18, (11, 16), 14, 99),
    gb(204, 4, 20, (16, 35), 11, 102),
    gb(210, 14, 12, (11, 27), 19, 105),
    gb(216, 4, 20, (14, 22), 20, 108),
    gb(222, 4, 20, (10, 14), 20, 111),
    gb(224, 6, 20, (3, 22), 31, 112),
    gb(228, 4, 20, (7, 17), 20, 114),
    gb(234, 4, 22, (13, 29), 20, 117),
    gb(238, 6, 20, (9, 20), 24, 119),
    gb(240, 8, 18, (13, 21), 19, 120),
    gb(246, 4, 22, (13, 20), 23, 123),
    gb(248, 10, 18, (17, 27), 13, 124),
    gb(252, 12, 16, (25, 30), 8, 126),
    gb(254, 14, 16, (10, 37), 31, 127),
    gb(258, 4, 22, (14, 19), 14, 129),
    gb(264, 4, 22, (13, 20), 17, 132),
    gb(266, 6, 22, (12, 25), 17, 133),
    gb(270, 8, 20, (6, 23), 27, 135),
    gb(276, 4, 24, (8, 31), 20, 138),
    gb(280, 6, 22, (20, 23), 17, 140),
    gb(282, 4, 24, (10, 17), 23, 141),
    gb(288, 4, 24, (20, 25), 14, 144),
    gb(292, 18, 8, (4, 36), 9, 146),
    gb(294, 10, 20, (19, 29), 26, 147),
    gb(300, 8, 22, (43, 52), 57, 150),
    gb(306, 4, 24, (8, 22), 20, 153),
    gb(308, 6, 24, (12, 22), 26, 154),
    gb(310, 10, 22, (20, 43), 14, 155),
    gb(312, 4, 24, (10, 17), 23, 156),
    gb(318, 4, 26, (14, 34), 38, 159),
    gb(322, 6, 24, (5, 25), 24, 161),
    gb(324, 4, 26, (11, 16), 26, 162),
    gb(330, 8, 24, (32, 38), 49, 165),
    gb(336, 10, 22, (19, 50), 5, 168),
    gb(340, 16, 18, (4, 25), 70, 170),
    gb(342, 4, 26, (16, 23), 20, 171),
    gb(348, 4, 26, (16, 23), 20, 174),
    gb(350, 6, 26, (4, 33), 24, 175),
    gb(354, 4, 28, (19, 29), 23, 177),
    gb(360, 8, 24, (5, 25), 27, 180),
    gb(364, 6, 26, (17, 22), 24, 182),
    gb(366, 4, 28, (8, 28), 26, 183),
    gb(372, 14, 20, (26, 34), 20, 186),
    gb(378, 12, 22, (4, 37), 25, 189),
    gb(384, 4, 28, (16, 23), 26, 192),
    gb(390, 8, 26, (13, 37), 42, 195),
    gb(392, 6, 28, (6, 37), 24, 196),
    gb(396, 4, 30, (14, 22), 32, 198),
];

/// Rows with `n ≤ 110`.
pub fn small_toric_rows() -> impl Iterator<Item = &'static ToricRow> {
    TORIC_ROWS.iter().filter(|r| r.n <= 110)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_consistent() {
        for r in TORIC_ROWS {
            assert_eq!(r.n as i64, 2 * r.alpha * r.beta, "{r:?}");
            assert_eq!(r.f().len(), 3);
            assert_eq!(r.g().len(), 3);
        }
        for r in CYCLE_ROWS {
            assert_eq!(r.n as i64, 2 * r.l, "{r:?}");
        }
        assert_eq!(small_toric_rows().count(), 24);
    }
}
