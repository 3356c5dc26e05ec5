#![allow(dead_code)]

use tango_core::module::{double_dual, dual, image, GradedMatrix, GradedModule};
use tango_core::ring::{standard, Ring};

pub const A_ROWS: [[&str; 6]; 12] = [
    ["z0^2", "0", "0", "z1^2", "z1*z3+z0*z6", "-z0*z4+z1*z5"],
    ["0", "z0^2", "0", "z1*z3-z0*z6", "z3^2", "z0*z2+z3*z5"],
    ["0", "0", "z0^2", "z0*z4+z1*z5", "-z0*z2+z3*z5", "z5^2"],
    ["0", "z0*z2-z3*z5", "z3^2", "-z0*z3-z2*z6", "0", "z2^2"],
    ["z5^2", "0", "z0*z4-z1*z5", "z4^2", "-z2*z4-z0*z5", "0"],
    ["-z3^2", "z1*z3+z0*z6", "0", "-z6^2", "0", "-z0*z3+z2*z6"],
    ["0", "z5^2", "-z0*z2-z3*z5", "-z2*z4+z0*z5", "z2^2", "0"],
    ["z1*z3-z0*z6", "-z1^2", "0", "0", "-z6^2", "z0*z1+z4*z6"],
    ["z0*z4+z1*z5", "0", "-z1^2", "0", "-z0*z1+z4*z6", "-z4^2"],
    ["-z2^2", "-z2*z4-z0*z5", "z0*z3-z2*z6", "z0^2", "0", "0"],
    ["z2*z4-z0*z5", "z4^2", "z0*z1+z4*z6", "0", "z0^2", "0"],
    ["-z0*z3-z2*z6", "z0*z1-z4*z6", "-z6^2", "0", "0", "-z0^2"],
];

pub const B_ROWS: [[&str; 8]; 8] = [
    ["0", "0", "0", "-z3", "0", "-z1", "z5", "-z0"],
    ["0", "0", "z3", "0", "z1", "0", "-z0", "-z6"],
    ["0", "-z3", "0", "0", "-z5", "z0", "0", "-z2"],
    ["z3", "0", "0", "0", "z0", "z6", "z2", "0"],
    ["0", "-z1", "z5", "-z0", "0", "0", "0", "z4"],
    ["z1", "0", "-z0", "-z6", "0", "0", "-z4", "0"],
    ["-z5", "z0", "0", "-z2", "0", "z4", "0", "0"],
    ["z0", "z6", "z2", "0", "-z4", "0", "0", "0"],
];

pub fn matrix_a(ring: &Ring) -> GradedMatrix {
    let rows: Vec<Vec<&str>> = A_ROWS.iter().map(|r| r.to_vec()).collect();
    GradedMatrix::parse(ring, vec![0; 12], &rows).unwrap()
}

pub fn matrix_b(ring: &Ring) -> GradedMatrix {
    let rows: Vec<Vec<&str>> = B_ROWS.iter().map(|r| r.to_vec()).collect();
    GradedMatrix::parse(ring, vec![0; 8], &rows).unwrap()
}

pub fn q5() -> Ring {
    standard::q5()
}

pub fn spinor(ring: &Ring) -> GradedModule {
    GradedModule::coker(matrix_b(ring)).twist(-1)
}

/// `im A` (pruned) and `H = (im A)^*(-1)`.
pub fn horrocks() -> (GradedModule, GradedModule) {
    let ima = image(&matrix_a(&q5())).unwrap().prune().unwrap();
    let h = dual(&ima).unwrap().twist(-1);
    (ima, h)
}

/// `C(1)`: the quotient of `H` by its section of degree zero.
pub fn cayley_twisted() -> GradedModule {
    let (_, h) = horrocks();
    let p = h.presentation();
    let rows: Vec<usize> = (1..p.nrows()).collect();
    GradedModule::coker(p.select_rows(&rows)).prune().unwrap()
}

pub fn cayley() -> GradedModule {
    cayley_twisted().twist(-1)
}

pub fn tango() -> GradedModule {
    let c1 = cayley_twisted();
    double_dual(&GradedModule::coker(c1.presentation().apply_map(&standard::tango_map()).unwrap())).unwrap()
}

pub fn same_hilbert(a: &GradedModule, b: &GradedModule, top: i32) -> bool {
    (0..=top).all(|d| a.hilbert_function(d) == b.hilbert_function(d))
}
