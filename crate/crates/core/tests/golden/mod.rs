//! Reference tables and brick lists for s = 0.
#![allow(dead_code)]

use bricks::Rational;

/// `v_s v_d phi_p r h` rows of T_3.
pub const T3_TABLE: &str = "\
v_s\tv_d\tphi_p\tr\th
2\t3\t1\t0\t0
4\t5\t1\t0\t1
6\t7\t0\t1\t1
8\t9\t1\t-1\t2
10\t11\t1\t1\t2
12\t13\t2\t0\t2
14\t15\t0\t2\t2
-1\t-1\t1\t-2\t3
-1\t-1\t2\t1\t3
-1\t-1\t2\t-1\t3
-1\t-1\t1\t2\t3
-1\t-1\t1\t-2\t3
-1\t-1\t2\t1\t3
-1\t-1\t3\t0\t3
-1\t-1\t0\t3\t3
";

/// `v_s v_d phi_p r h` rows of T_4.
pub const T4_TABLE: &str = "\
v_s\tv_d\tphi_p\tr\th
2\t3\t1\t0\t0
4\t5\t1\t0\t1
6\t7\t0\t1\t1
8\t9\t1\t-1\t2
10\t11\t1\t1\t2
12\t13\t2\t0\t2
14\t15\t0\t2\t2
16\t17\t1\t-2\t3
18\t19\t2\t1\t3
20\t21\t2\t-1\t3
22\t23\t1\t2\t3
24\t25\t1\t-2\t3
26\t27\t2\t1\t3
28\t29\t3\t0\t3
30\t31\t0\t3\t3
-1\t-1\t1\t-3\t4
-1\t-1\t3\t1\t4
-1\t-1\t2\t-2\t4
-1\t-1\t2\t2\t4
-1\t-1\t2\t-2\t4
-1\t-1\t2\t2\t4
-1\t-1\t3\t-1\t4
-1\t-1\t1\t3\t4
-1\t-1\t1\t-3\t4
-1\t-1\t3\t1\t4
-1\t-1\t2\t-2\t4
-1\t-1\t2\t2\t4
-1\t-1\t1\t-3\t4
-1\t-1\t3\t1\t4
-1\t-1\t4\t0\t4
-1\t-1\t0\t4\t4
";

/// Lower and upper corners of the cube built from T_3 at x = (3, 3, 3).
pub const CUBE_BRICKS: [([&str; 3], [&str; 3]); 6] = [
    (["0", "0", "0"], ["1/3", "1", "3"]),
    (["1/3", "0", "0"], ["5/3", "1", "3"]),
    (["5/3", "0", "0"], ["3", "1", "3"]),
    (["0", "1", "0"], ["2/3", "3", "3"]),
    (["2/3", "1", "0"], ["4/3", "3", "3"]),
    (["4/3", "1", "0"], ["3", "3", "3"]),
];

/// Lower and upper corners of the projected build of T_4 from node 2 at
/// x = (4, 4, 4, 4).
pub const PROJECTED_BRICKS: [([&str; 3], [&str; 3]); 24] = [
    (["0", "0", "0"], ["1/3", "1", "3"]),
    (["1/3", "0", "0"], ["2", "1", "3"]),
    (["2", "0", "0"], ["11/3", "1", "3"]),
    (["11/3", "0", "0"], ["16/3", "1", "3"]),
    (["0", "1", "0"], ["2/3", "7/2", "3"]),
    (["2/3", "1", "0"], ["4/3", "7/2", "3"]),
    (["4/3", "1", "0"], ["10/3", "7/2", "3"]),
    (["10/3", "1", "0"], ["16/3", "7/2", "3"]),
    (["0", "7/2", "0"], ["2/3", "6", "3"]),
    (["2/3", "7/2", "0"], ["4/3", "6", "3"]),
    (["4/3", "7/2", "0"], ["10/3", "6", "3"]),
    (["10/3", "7/2", "0"], ["16/3", "6", "3"]),
    (["0", "0", "3"], ["2/3", "3/2", "8"]),
    (["2/3", "0", "3"], ["4/3", "3/2", "8"]),
    (["4/3", "0", "3"], ["10/3", "3/2", "8"]),
    (["10/3", "0", "3"], ["16/3", "3/2", "8"]),
    (["0", "3/2", "3"], ["2/3", "3", "8"]),
    (["2/3", "3/2", "3"], ["4/3", "3", "8"]),
    (["4/3", "3/2", "3"], ["10/3", "3", "8"]),
    (["10/3", "3/2", "3"], ["16/3", "3", "8"]),
    (["0", "3", "3"], ["1", "6", "8"]),
    (["1", "3", "3"], ["2", "6", "8"]),
    (["2", "3", "3"], ["3", "6", "8"]),
    (["3", "3", "3"], ["16/3", "6", "8"]),
];

pub fn parse_corners(corners: &[([&str; 3], [&str; 3])]) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let parse = |v: &[&str; 3]| v.iter().map(|t| t.parse().unwrap()).collect::<Vec<Rational>>();
    corners.iter().map(|(lo, hi)| (parse(lo), parse(hi))).collect()
}
