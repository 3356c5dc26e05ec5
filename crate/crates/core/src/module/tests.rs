use proptest::prelude::*;

use super::*;
use crate::ring::{standard, Fp, Ring};

fn mat(ring: &Ring, rows_deg: Vec<i32>, rows: &[&[&str]]) -> GradedMatrix {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    GradedMatrix::parse(ring, rows_deg, &rows).unwrap()
}

fn p(n: usize) -> Ring {
    Ring::with_prefix(Fp::gf2(), "x", n + 1)
}

fn residue_field(ring: &Ring) -> GradedModule {
    let row: Vec<String> = ring.var_names().to_vec();
    let row: Vec<&str> = row.iter().map(|s| s.as_str()).collect();
    GradedModule::coker(mat(ring, vec![0], &[&row]))
}

#[test]
fn koszul_resolution_of_a_point() {
    let r = p(1);
    let res = free_resolution(&residue_field(&r), 5).unwrap();
    let ranks: Vec<usize> = (0..=res.length()).map(|i| res.betti().rank(i)).collect();
    assert_eq!(ranks, vec![1, 2, 1]);
    assert!(res.is_complex() && res.is_minimal() && !res.truncated);
    assert_eq!(res.betti().get(2, 2), 1);
}

#[test]
fn prune_removes_units() {
    let r = p(2);
    let id = GradedMatrix::identity(&r, vec![0, 1, 1]);
    assert_eq!(GradedModule::coker(id).prune().unwrap().num_generators(), 0);
    let m = mat(&r, vec![0, 1], &[&["x0", "x1^2"], &["1", "x2"]]);
    let pruned = GradedModule::coker(m).prune().unwrap();
    assert_eq!(pruned.generator_degrees(), &[0]);
    for d in 0..5 {
        assert_eq!(pruned.hilbert_function(d), GradedModule::coker(mat(&r, vec![0], &[&["x0*x2+x1^2"]])).hilbert_function(d));
    }
}

#[test]
fn quadric_coordinate_ring() {
    let s = GradedModule::free(&standard::q5(), vec![0]);
    assert_eq!(s.hilbert_function(0), 1);
    assert_eq!(s.hilbert_function(1), 7);
    assert_eq!(s.hilbert_function(2), 27);
    assert_eq!(s.hilbert_function(2), s.hilbert_function_linalg(2));
    assert_eq!(s.hilbert_function(-1), 0);
}

#[test]
fn ext_of_residue_field() {
    let r = p(2);
    let k = residue_field(&r);
    let s = GradedModule::free(&r, vec![0]);
    for i in 0..=3 {
        let e = ext(i, &k, &s).unwrap();
        let total: u64 = (-6..=6).map(|d| e.hilbert_function(d)).sum();
        if i == 3 {
            assert_eq!(total, 1);
            assert_eq!(e.hilbert_function(-3), 1);
        } else {
            assert_eq!(total, 0, "Ext^{i}");
        }
    }
}

#[test]
fn hom_and_duals() {
    let r = p(1);
    let n = GradedModule::coker(mat(&r, vec![0], &[&["x0"]]));
    let h = hom(&n, &n).unwrap();
    for d in 0..5 {
        assert_eq!(h.hilbert_function(d), n.hilbert_function(d));
    }
    let f = GradedModule::free(&r, vec![1, 2]);
    let fd = dual(&f).unwrap();
    let mut degs = fd.generator_degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![-2, -1]);
    assert_eq!(dual(&n).unwrap().num_generators(), 0);
}

#[test]
fn tensor_with_ring_and_squares() {
    let r = p(2);
    let m = GradedModule::coker(mat(&r, vec![0, 0], &[&["x0", "x1"], &["x1", "x2"]]));
    let s = GradedModule::free(&r, vec![0]);
    let t = tensor(&m, &s).unwrap();
    for d in 0..6 {
        assert_eq!(t.hilbert_function(d), m.hilbert_function(d));
    }
    let f3 = GradedModule::free(&r, vec![0, 0, 0]);
    let (w, sy) = (wedge2(&f3).unwrap(), sym2(&f3).unwrap());
    for d in 0..5 {
        assert_eq!(w.hilbert_function(d), 3 * s.hilbert_function(d));
        assert_eq!(sy.hilbert_function(d), 6 * s.hilbert_function(d));
    }
}

#[test]
fn minors_and_determinants() {
    let r = p(3);
    let a = mat(&r, vec![0, 0], &[&["x0", "x1", "x2"], &["x1", "x2", "x3"]]);
    let i2 = minors_ideal(2, &a).unwrap();
    assert_eq!(i2.gens().len(), 3);
    // twisted cubic: Hilbert function 3d + 1
    for d in 0..6 {
        assert_eq!(i2.hilbert_function(d), 3 * d as u64 + 1);
    }
    assert!(minors_ideal(3, &a).is_err());
    let sq = mat(&r, vec![0, 0], &[&["x0", "x1"], &["x2", "x3"]]);
    assert_eq!(determinant(&sq).unwrap(), r.parse("x0*x3+x1*x2").unwrap());
}

#[test]
fn split_and_nonsplit_extensions() {
    let r = p(1);
    let n = GradedModule::coker(mat(&r, vec![0], &[&["x0"]]));
    let m = GradedModule::free(&r, vec![1]);
    let zero = GradedMatrix::zero(&r, vec![1], vec![1]);
    let split = extension_module(&n, &m, &zero).unwrap();
    assert!(split.split);
    assert_eq!(split.module.num_generators(), 2);
    let one = GradedMatrix::from_columns(&r, vec![1], vec![1], vec![vec![r.one()]]).unwrap();
    let w = extension_module(&n, &m, &one).unwrap();
    assert!(!w.split);
    let w = w.module.prune().unwrap();
    assert_eq!(w.generator_degrees(), &[0]);
    assert_eq!(w.presentation().ncols(), 0);
}

#[test]
fn euler_sequence_as_section_extension() {
    // 0 -> O(-2) -> O(-1)^2 -> O -> 0 on P^1
    let r = p(1);
    let psi = mat(&r, vec![0], &[&["x0", "x1"]]);
    let classes = saturation_classes(&psi, 0, 2).unwrap();
    assert_eq!(classes.len(), 1);
    let w = section_extension(&psi, &classes[0]).unwrap();
    let free = GradedModule::free(&r, vec![1, 1]);
    for d in 0..6 {
        assert_eq!(w.hilbert_function(d), free.hilbert_function(d));
    }
    assert_eq!(w.presentation().ncols(), 0);
}

#[test]
fn pushforward_of_projection_line() {
    // x -> z1 from k[x0] to k[z0, z1]/(z0^2 + z1^2) is finite of degree 2
    let src = Ring::with_prefix(Fp::gf2(), "x", 2);
    let amb = Ring::with_prefix(Fp::gf2(), "z", 3);
    let tgt = amb.quotient(&amb.parse("z0^2+z1*z2").unwrap()).unwrap();
    let map = crate::ring::RingMap::new(src.clone(), tgt.clone(), vec![tgt.var(1), tgt.var(2)], 1).unwrap();
    let o = GradedModule::free(&tgt, vec![0]);
    let pushed = pushforward_presentation(&map, &o, 8).unwrap();
    let mut degs = pushed.generator_degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![0, 1]);
    assert_eq!(pushed.presentation().ncols(), 0);
}

fn arb_module() -> impl Strategy<Value = (GradedModule, i32)> {
    let r = p(2);
    let names = ["0", "x0", "x1", "x2", "x0+x1", "x1+x2"];
    (1usize..3, 1usize..4, prop::collection::vec(0usize..6, 9), 0i32..4).prop_map(move |(nr, nc, picks, d)| {
        let rows: Vec<Vec<&str>> = (0..nr).map(|i| (0..nc).map(|j| names[picks[(i * 3 + j) % 9]]).collect()).collect();
        let cols = vec![1; nc];
        let m = GradedMatrix::from_rows(&r, vec![0; nr], cols, rows.iter().map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect()).collect())
            .unwrap();
        (GradedModule::coker(m), d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_function_matches_linear_algebra((m, d) in arb_module()) {
        prop_assert_eq!(m.hilbert_function(d), m.hilbert_function_linalg(d));
        prop_assert_eq!(m.hilbert_function(d + 2), m.hilbert_function_linalg(d + 2));
    }

    #[test]
    fn resolutions_are_minimal_complexes((m, d) in arb_module()) {
        let res = free_resolution(&m, 4).unwrap();
        prop_assert!(!res.truncated);
        prop_assert!(res.is_complex());
        prop_assert!(res.is_minimal());
        let ring = m.ring().clone();
        let mut alt: i64 = 0;
        for (j, degs) in res.degrees.iter().enumerate() {
            let dim: i64 = degs.iter().map(|&a| ring.ambient_dim(d + 3 - a) as i64).sum();
            alt += if j % 2 == 0 { dim } else { -dim };
        }
        prop_assert_eq!(alt, m.hilbert_function(d + 3) as i64);
    }
}
