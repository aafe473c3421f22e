//! The twelve transcribed formulas for `s = 4..7`, with their coefficient
//! polynomials copied term by term (in printed order) from the published
//! tables.

use super::{FormulaSpec, GSymbol, SymbolicFactor, ThetaTerm};
use crate::exact::PolyN;
use crate::partitions::Partition;

use GSymbol::{G, G22, G4, G5, G6};

fn terms(t: &[(i64, usize)]) -> PolyN {
    PolyN::from_terms(t)
}

/// `Π (N + a)` over the listed shifts.
fn factors(shifts: &[i64]) -> PolyN {
    PolyN::product(&shifts.iter().map(|&a| PolyN::linear(a)).collect::<Vec<_>>())
}

fn one() -> PolyN {
    PolyN::one()
}

fn part(s: &str) -> Partition {
    Partition::from_compact(s).expect("static index")
}

fn theta(name: &str, coefficient: i64, poly: PolyN, symbol: Option<GSymbol>, degrees: &str) -> ThetaTerm {
    ThetaTerm {
        name: name.to_string(),
        factor: SymbolicFactor::new(coefficient, poly, symbol),
        degrees: part(degrees),
    }
}

fn spec(id: &str, cof_factor: SymbolicFactor, dim_terms: Vec<SymbolicFactor>, theta_terms: Vec<ThetaTerm>) -> FormulaSpec {
    FormulaSpec { id: part(id), cof_factor, dim_terms, theta_terms }
}

/// `N (N + 2)`
fn n_n2() -> PolyN {
    factors(&[0, 2])
}

/// `N (N + 1) (N + 2)`
fn n_n1_n2() -> PolyN {
    factors(&[0, 1, 2])
}

/// All twelve formulas, degree 7 first, in the order the tables list them.
pub fn builtin_formulas() -> Vec<FormulaSpec> {
    let f7_7 = terms(&[(1, 6), (6, 5), (50, 4), (160, 3), (309, 2), (314, 1), (120, 0)]);
    let f7_52 = terms(&[(1, 5), (5, 4), (21, 3), (43, 2), (-70, 1), (-96, 0)]);
    let f7_43 = terms(&[(1, 5), (5, 4), (9, 3), (7, 2), (62, 1), (60, 0)]);
    let f7_322 = terms(&[(2, 4), (8, 3), (-5, 2), (-26, 1), (-15, 0)]);

    let f52_7 = terms(&[(1, 7), (7, 6), (31, 5), (85, 4), (16, 3), (-236, 2), (-192, 1)]);
    let f52_52 = terms(&[(1, 8), (8, 7), (32, 6), (80, 5), (515, 4), (1676, 3), (1648, 2), (72, 1), (-10080, 0)]);
    let f52_43 = terms(&[(6, 6), (36, 5), (-1, 2), (13, 4), (-188, 3), (470, 1), (840, 0)]);
    let f52_322 = terms(&[(1, 7), (7, 6), (-70, 4), (217, 3), (987, 2), (-134, 1), (-840, 0)]);
    let f52_32 = terms(&[
        (1, 10),
        (10, 9),
        (-19, 8),
        (-392, 7),
        (-497, 6),
        (3178, 5),
        (9183, 4),
        (6948, 3),
        (-604, 2),
        (-1680, 1),
    ]);
    let f52_5 = terms(&[
        (1, 11),
        (11, 10),
        (-2, 9),
        (-348, 8),
        (-1071, 7),
        (231, 6),
        (10856, 5),
        (35458, 4),
        (52712, 3),
        (37224, 2),
        (10080, 1),
    ]);

    let f43_7 = terms(&[(1, 7), (7, 6), (19, 5), (25, 4), (76, 3), (184, 2), (120, 1)]);
    let f43_52 = terms(&[(6, 6), (36, 5), (13, 4), (-188, 3), (-1, 2), (470, 1), (840, 0)]);
    let f43_43 = terms(&[(1, 8), (8, 7), (16, 6), (-16, 5), (681, 4), (2980, 3), (-986, 2), (-8060, 1), (-8400, 0)]);
    let f43_322 = terms(&[(2, 7), (14, 6), (133, 5), (525, 4), (-553, 3), (-3647, 2), (1510, 1), (4200, 0)]);
    let f43_3 = factors(&[-5, -4, -3, -2, 0, 1, 1, 1, 2, 4, 5, 6, 7]);

    let f322_7 = terms(&[(2, 6), (12, 5), (11, 4), (-36, 3), (-67, 2), (-30, 1)]);
    let f322_52 = terms(&[(1, 7), (7, 6), (-70, 4), (217, 3), (987, 2), (-134, 1), (-840, 0)]);
    let f322_43 = terms(&[(2, 7), (14, 6), (133, 5), (525, 4), (-553, 3), (-3647, 2), (1510, 1), (4200, 0)]);
    let f322_322 = terms(&[(1, 8), (8, 7), (-3, 6), (-130, 5), (109, 4), (1452, 3), (5113, 2), (6890, 1), (-4200, 0)]);
    let f322_5 = &factors(&[-5, -4, 0, 1, 1, 2, 6, 7]) * &terms(&[(1, 2), (2, 1), (-1, 0)]);
    let f322_32 = -(&factors(&[-4, -5, 0, 1, 2, 6, 7]) * &terms(&[(1, 4), (4, 3), (6, 2), (4, 1), (25, 0)]));
    let f322_3 = &factors(&[-5, -4, 0, 1, 2, 6, 7])
        * &terms(&[(5, 7), (35, 6), (-14, 5), (-420, 4), (-445, 3), (625, 2), (2014, 1), (1320, 0)]);

    let f6_6 = terms(&[(1, 5), (5, 4), (25, 3), (55, 2), (58, 1), (24, 0)]);
    let f6_42 = terms(&[(1, 4), (4, 3), (7, 2), (6, 1), (-18, 0)]);
    let f6_33 = terms(&[(3, 4), (12, 3), (7, 2), (-10, 1), (72, 0)]);
    let f6_222 = terms(&[(1, 3), (3, 2), (-4, 1), (-6, 0)]);

    let f42_6 = terms(&[(1, 7), (7, 6), (21, 5), (35, 4), (14, 3), (-42, 2), (-36, 1)]);
    let f42_42 = terms(&[(1, 8), (8, 7), (28, 6), (56, 5), (169, 4), (452, 3), (762, 2), (684, 1), (-2160, 0)]);
    let f42_33 = terms(&[(1, 6), (6, 5), (5, 4), (-20, 3), (-20, 2), (16, 1), (96, 0)]);
    let f42_222 = terms(&[(2, 7), (14, 6), (-3, 5), (-155, 4), (163, 3), (1221, 2), (-162, 1), (-1080, 0)]);
    let f42_4 = terms(&[
        (1, 11),
        (11, 10),
        (14, 9),
        (-204, 8),
        (-747, 7),
        (-189, 6),
        (3716, 5),
        (9334, 4),
        (10696, 3),
        (6168, 2),
        (1440, 1),
    ]);
    let f42_22 = terms(&[
        (2, 10),
        (20, 9),
        (3, 8),
        (-456, 7),
        (-1008, 6),
        (1680, 5),
        (7327, 4),
        (7036, 3),
        (1236, 2),
        (-720, 1),
    ]);
    // The explicit part of f^{42}_2 = (N + 1)^2 g6(N).
    let f42_2 = factors(&[1, 1]);

    let f33_6 = terms(&[(3, 7), (21, 6), (49, 5), (35, 4), (56, 3), (196, 2), (144, 1)]);
    let f33_42 = terms(&[(1, 6), (6, 5), (5, 4), (-20, 3), (-20, 2), (16, 1), (96, 0)]);
    let f33_33 = terms(&[(1, 8), (8, 7), (-112, 5), (127, 4), (1404, 3), (580, 2), (-2032, 1), (-3840, 0)]);
    let f33_222 = terms(&[(4, 5), (20, 4), (-19, 3), (-137, 2), (78, 1), (180, 0)]);

    let f222_6 = terms(&[(1, 6), (6, 5), (7, 4), (-12, 3), (-26, 2), (-12, 1)]);
    let f222_42 = terms(&[(2, 7), (14, 6), (-3, 5), (-155, 4), (163, 3), (1221, 2), (-162, 1), (-1080, 0)]);
    let f222_33 = terms(&[(4, 5), (20, 4), (-19, 3), (-137, 2), (78, 1), (180, 0)]);
    let f222_222 = terms(&[(1, 8), (8, 7), (-7, 6), (-154, 5), (-79, 4), (860, 3), (1777, 2), (1338, 1), (-3240, 0)]);
    let f222_4 = terms(&[
        (2, 10),
        (20, 9),
        (3, 8),
        (-456, 7),
        (-1008, 6),
        (1680, 5),
        (7327, 4),
        (7036, 3),
        (1236, 2),
        (-720, 1),
    ]);
    let f222_22 = terms(&[
        (1, 11),
        (11, 10),
        (7, 9),
        (-267, 8),
        (-687, 7),
        (1407, 6),
        (5543, 5),
        (157, 4),
        (-6664, 3),
        (6252, 2),
        (9360, 1),
    ]);
    let f222_2 = terms(&[
        (5, 14),
        (70, 13),
        (186, 12),
        (-1408, 11),
        (-7964, 10),
        (-1320, 9),
        (65098, 8),
        (121616, 7),
        (-67617, 6),
        (-437030, 5),
        (-422284, 4),
        (127992, 3),
        (432576, 2),
        (190080, 1),
    ]);

    let f5_5 = terms(&[(1, 4), (4, 3), (11, 2), (14, 1), (6, 0)]);
    let f5_32 = terms(&[(1, 3), (3, 2), (1, 1), (-1, 0)]);

    let f32_5 = terms(&[(1, 3), (3, 2), (1, 1), (-1, 0)]);
    let f32_32 = terms(&[(1, 4), (4, 3), (6, 2), (4, 1), (25, 0)]);
    let f32_3 = factors(&[-3, -2, 1, 1, 1, 4, 5]);

    let f4_4 = terms(&[(1, 3), (3, 2), (4, 1), (2, 0)]);
    let f4_22 = terms(&[(2, 2), (4, 1), (-1, 0)]);

    let f22_4 = terms(&[(2, 3), (6, 2), (3, 1), (-1, 0)]);
    let f22_22 = terms(&[(1, 4), (4, 3), (-8, 1), (13, 0)]);
    let f22_2 = terms(&[(1, 7), (7, 6), (8, 5), (-30, 4), (-59, 3), (-1, 2), (50, 1), (24, 0)]);

    let sf = SymbolicFactor::new;
    vec![
        spec(
            "7",
            sf(1, one(), Some(G)),
            vec![],
            vec![
                theta("f^{7}_{7}", -720, f7_7, None, "7"),
                theta("f^{7}_{52}", 5040, f7_52, None, "52"),
                theta("f^{7}_{43}", 5040, f7_43, None, "43"),
                theta("f^{7}_{322}", -10080, f7_322, None, "322"),
            ],
        ),
        spec(
            "52",
            sf(1, n_n2(), Some(G)),
            vec![],
            vec![
                theta("f^{52}_{7}", 5040, f52_7, None, "7"),
                theta("f^{52}_{52}", -504, f52_52, None, "52"),
                theta("f^{52}_{43}", -5040, f52_43, None, "43"),
                theta("f^{52}_{322}", 2520, f52_322, None, "322"),
                theta("f^{52}_{5}", 42, f52_5, None, "5"),
                theta("f^{52}_{32}", -210, f52_32, None, "32"),
            ],
        ),
        spec(
            "43",
            sf(12, n_n2(), Some(G)),
            vec![],
            vec![
                theta("f^{43}_{7}", 60480, f43_7, None, "7"),
                theta("f^{43}_{52}", -60480, f43_52, None, "52"),
                theta("f^{43}_{43}", -5040, f43_43, None, "43"),
                theta("f^{43}_{322}", 5040, f43_322, None, "322"),
                theta("f^{43}_{3}", -7, f43_3, None, "3"),
            ],
        ),
        spec(
            "322",
            sf(24, n_n2(), Some(G)),
            vec![],
            vec![
                theta("f^{322}_{7}", -241920, f322_7, None, "7"),
                theta("f^{322}_{52}", 60480, f322_52, None, "52"),
                theta("f^{322}_{43}", 10080, f322_43, None, "43"),
                theta("f^{322}_{322}", -5040, f322_322, None, "322"),
                theta("f^{322}_{5}", -5040, f322_5, None, "5"),
                theta("f^{322}_{32}", -840, f322_32, None, "32"),
                theta("f^{322}_{3}", -7, f322_3, None, "3"),
            ],
        ),
        spec(
            "6",
            sf(252, one(), Some(G6)),
            vec![sf(1, PolyN::linear(1), Some(G))],
            vec![
                theta("f^{6}_{6}", -30240, f6_6, None, "6"),
                theta("f^{6}_{42}", 181440, f6_42, None, "42"),
                theta("f^{6}_{33}", 30240, f6_33, None, "33"),
                theta("f^{6}_{222}", -211680, f6_222, None, "222"),
            ],
        ),
        spec(
            "42",
            sf(672, n_n1_n2(), Some(G6)),
            vec![sf(1, &n_n1_n2() * &terms(&[(7, 2), (14, 1), (47, 0)]), Some(G6))],
            vec![
                theta("f^{42}_{6}", 483840, f42_6, None, "6"),
                theta("f^{42}_{42}", -60480, f42_42, None, "42"),
                theta("f^{42}_{33}", -1209600, f42_33, None, "33"),
                theta("f^{42}_{222}", 60480, f42_222, None, "222"),
                theta("f^{42}_{4}", 5040, f42_4, None, "4"),
                theta("f^{42}_{22}", -5040, f42_22, None, "22"),
                theta("f^{42}_{2}", -84, f42_2, Some(G6), "2"),
            ],
        ),
        spec(
            "33",
            sf(126, n_n1_n2(), Some(G6)),
            vec![sf(-5, n_n1_n2(), Some(G6))],
            vec![
                theta("f^{33}_{6}", 15120, f33_6, None, "6"),
                theta("f^{33}_{42}", -226800, f33_42, None, "42"),
                theta("f^{33}_{33}", -5040, f33_33, None, "33"),
                theta("f^{33}_{222}", 60480, f33_222, None, "222"),
            ],
        ),
        spec(
            "222",
            sf(576, n_n1_n2(), Some(G6)),
            vec![sf(1, &factors(&[0, 1, 1, 2]) * &terms(&[(5, 2), (10, 1), (23, 0)]), Some(G6))],
            vec![
                theta("f^{222}_{6}", 483840, f222_6, None, "6"),
                theta("f^{222}_{42}", -51840, f222_42, None, "42"),
                theta("f^{222}_{33}", -276480, f222_33, None, "33"),
                theta("f^{222}_{222}", 8640, f222_222, None, "222"),
                theta("f^{222}_{4}", 4320, f222_4, None, "4"),
                theta("f^{222}_{22}", -2160, f222_22, None, "22"),
                theta("f^{222}_{2}", 36, f222_2, None, "2"),
            ],
        ),
        // Printed as cof·g5 − dim·(24 f Θ(5) − 120 f Θ(3)Θ(2)); the sign is
        // folded into the coefficients.
        spec(
            "5",
            sf(1, one(), Some(G5)),
            vec![],
            vec![theta("f^{5}_{5}", -24, f5_5, None, "5"), theta("f^{5}_{32}", 120, f5_32, None, "32")],
        ),
        spec(
            "32",
            sf(3, one(), Some(G5)),
            vec![],
            vec![
                theta("f^{32}_{5}", 360, f32_5, None, "5"),
                theta("f^{32}_{32}", -60, f32_32, None, "32"),
                theta("f^{32}_{3}", 5, f32_3, None, "3"),
            ],
        ),
        spec(
            "4",
            sf(-120, one(), Some(G4)),
            vec![sf(1, PolyN::linear(1), Some(G4))],
            vec![theta("f^{4}_{4}", 720, f4_4, None, "4"), theta("f^{4}_{22}", -720, f4_22, None, "22")],
        ),
        // The coefficient names in this formula are printed run together
        // ("f224", "f2222", "f222"); they are read as f^{22}_{4},
        // f^{22}_{22} and f^{22}_{2}, and the trailing factor as its own
        // symbol g22.
        spec(
            "22",
            sf(240, PolyN::linear(1), Some(G4)),
            vec![sf(-1, PolyN::linear(1), Some(G22))],
            vec![
                theta("f^{22}_{4}", 1440, f22_4, None, "4"),
                theta("f^{22}_{22}", -720, f22_22, None, "22"),
                theta("f^{22}_{2}", 120, f22_2, None, "2"),
            ],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};
    use crate::weights::{to_dynkin, MultiplicityTable, ThetaPowers};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn ids_in_order() {
        let ids: Vec<String> = builtin_formulas().iter().map(|f| f.label()).collect();
        assert_eq!(ids, ["7", "52", "43", "322", "6", "42", "33", "222", "5", "32", "4", "22"]);
        for f in builtin_formulas() {
            assert!(!f.id.contains_one());
            for t in &f.theta_terms {
                assert!(t.degrees.parts().iter().all(|&d| d >= 2));
                assert!(t.degrees.weight() <= f.id.weight());
                assert_eq!(t.degrees.weight() % 2, f.id.weight() % 2, "{} {}", f.label(), t.name);
            }
        }
    }

    #[test]
    fn degree_seven_coefficients() {
        let f = &builtin_formulas()[0];
        let c: Vec<i64> = f.theta_terms.iter().map(|t| t.factor.coefficient).collect();
        assert_eq!(c, [-720, 5040, 5040, -10080]);
        let d: Vec<String> = f.theta_terms.iter().map(|t| t.degrees.to_string()).collect();
        assert_eq!(d, ["7", "5,2", "4,3", "3,2,2"]);
    }

    #[test]
    fn degree_four_shape() {
        let f = &builtin_formulas()[10];
        assert_eq!(f.cof_factor, SymbolicFactor::new(-120, PolyN::one(), Some(G4)));
        assert_eq!(f.dim_terms, vec![SymbolicFactor::new(1, PolyN::linear(1), Some(G4))]);
        assert_eq!(f.theta_terms[0].factor.coefficient, 720);
        assert_eq!(f.theta_terms[1].factor.coefficient, -720);
    }

    #[test]
    fn symbol_inside_theta_term() {
        let f = &builtin_formulas()[5];
        let last = f.theta_terms.last().unwrap();
        assert_eq!(last.factor.symbol, Some(G6));
        assert_eq!(last.factor.poly, PolyN::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn printed_order_preserved() {
        // f^{52}_{43} is printed with its N^2 term out of place; the
        // polynomial is the same either way.
        let f = &builtin_formulas()[1];
        assert_eq!(f.theta_terms[2].factor.poly, PolyN::from_i64(&[840, 470, -1, -188, 13, 36, 6]));
        // Shared polynomials are printed identically in both places.
        let all = builtin_formulas();
        assert_eq!(all[1].theta_terms[3].factor.poly, all[3].theta_terms[1].factor.poly);
        assert_eq!(all[2].theta_terms[3].factor.poly, all[3].theta_terms[2].factor.poly);
        assert_eq!(all[5].theta_terms[3].factor.poly, all[7].theta_terms[1].factor.poly);
        assert_eq!(all[5].theta_terms[5].factor.poly, all[7].theta_terms[4].factor.poly);
        assert_eq!(all[6].theta_terms[3].factor.poly, all[7].theta_terms[2].factor.poly);
        assert_eq!(all[5].theta_terms[2].factor.poly, all[6].theta_terms[1].factor.poly);
    }

    #[test]
    fn factored_polynomials() {
        let all = builtin_formulas();
        let f43_3 = &all[2].theta_terms[4].factor.poly;
        assert_eq!(f43_3.degree(), Some(13));
        assert_eq!(f43_3.eval_int(3), rat(0));
        assert_eq!(f43_3.eval_int(6), rat(1 * 2 * 3 * 4 * 6 * 343 * 8 * 10 * 11 * 12 * 13));
        let f322_32 = &all[3].theta_terms[5].factor.poly;
        assert_eq!(f322_32.leading(), Some(&rat(-1)));
        assert_eq!(all[9].theta_terms[2].factor.poly.eval_int(4), rat(2 * 125 * 8 * 9));
    }

    #[test]
    fn fundamental_theta_block_vanishes_for_two_part_index() {
        // cof_{52} of a single fundamental orbit is zero, so the theta
        // block of that formula must vanish on it identically.
        let f = &builtin_formulas()[1];
        for n in 3..15u32 {
            let theta = ThetaPowers::new(&p("1"), n);
            assert!(to_dynkin(&p("1"), n).is_ok());
            let block: Rational = f
                .theta_terms
                .iter()
                .map(|t| t.factor.poly.eval_int(n as i64) * Rational::from_integer(t.factor.coefficient.into()) * theta.monomial(&t.degrees))
                .sum();
            assert_eq!(block, rat(0), "N = {n}");
            assert_eq!(f.phi_form(&MultiplicityTable::single_orbit(p("1")), n).unwrap().constant, rat(0));
        }
    }
}
