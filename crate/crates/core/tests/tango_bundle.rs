mod common;

use tango_core::chow::{chern_from_hilbert, hrr_chi, Ambient, ChernVector};
use tango_core::module::*;
use tango_core::numeric::{frac, q, QPoly};
use tango_core::ring::standard;
use tango_core::sheafcoh::{cohomology_table, render_table, sheaf_cohomology, SheafCohomology};

fn tango_chi() -> QPoly {
    QPoly::new(vec![q(-14), frac(-51, 10), frac(11, 3), frac(25, 12), frac(1, 3), frac(1, 60)])
}

#[test]
fn minors_of_a_cut_out_nothing() {
    let r = common::q5();
    let a = common::matrix_a(&r);
    for k in 1..=3 {
        let i = minors_ideal(k, &a).unwrap();
        assert!(i.saturate(None).unwrap().is_unit(), "{k}x{k} minors");
    }
    assert_eq!(minors_ideal(4, &a).unwrap().gens().len(), 0);
}

#[test]
fn spinor_determinant() {
    let b = common::matrix_b(&standard::p6());
    let q = standard::quadric();
    assert_eq!(determinant(&b).unwrap(), q.pow(4));
    // over the quadric the determinant vanishes
    assert!(determinant(&common::matrix_b(&common::q5())).unwrap().is_zero());
}

#[test]
fn horrocks_bundle() {
    let (_, h) = common::horrocks();
    let sc = SheafCohomology::new(&h).unwrap();
    for t in -4..=4 {
        for i in 1..5 {
            let want = u64::from(i == 1 && t == -1);
            assert_eq!(sc.h(i, t), want, "h^{i}(H({t}))");
        }
    }
    assert_eq!(sc.h(0, -1), 0);
    let w2 = wedge2(&h).unwrap().prune().unwrap();
    assert_eq!(sheaf_cohomology(&w2, 0, -1).unwrap(), 0);
    let c = chern_from_hilbert(&h, 3).unwrap().dual().twist(1);
    assert_eq!(c.integer_classes(), Some(vec![2, 2, 2]));
}

#[test]
fn extension_by_the_horrocks_section_is_the_spinor_bundle() {
    let (ima, h) = common::horrocks();
    let psi = ima.presentation().transpose().shift(2);
    let k = kernel(&psi).unwrap();
    assert!(common::same_hilbert(&k, &h.twist(-1), 8));
    let classes = saturation_classes(&psi, 0, 3).unwrap();
    assert_eq!(classes.len(), 1);
    let w = section_extension(&psi, &classes[0]).unwrap().prune().unwrap();
    assert_eq!(w.generator_histogram(), vec![(1, 8)]);
    let s = common::spinor(&common::q5());
    assert!(common::same_hilbert(&w, &s, 10));
    assert_eq!(hilbert_polynomial(&w).unwrap(), hilbert_polynomial(&s).unwrap());
    let sc = SheafCohomology::new(&w).unwrap();
    assert!((-5..=3).all(|t| (1..5).all(|i| sc.h(i, t) == 0)));
}

#[test]
fn cayley_bundle_resolution_is_periodic() {
    let c1 = common::cayley_twisted();
    assert_eq!(c1.generator_histogram(), vec![(1, 14)]);
    let res = free_resolution(&c1, 6).unwrap();
    assert!(res.is_complex() && res.is_minimal());
    assert_eq!(res.betti().summary(), "14@-1 | 34@-2 | 49@-3 | 55@-4 | 56@-5 | 56@-6 | 56@-7");
}

#[test]
fn cayley_bundle_cohomology() {
    let c = common::cayley();
    let tab = cohomology_table(&c, -5, 3).unwrap();
    let mids: Vec<_> = tab.nonzero().into_iter().filter(|&(i, _, _)| i > 0 && i < 5).collect();
    assert_eq!(mids, vec![(1, 0, 1), (4, -4, 1)]);
    assert_eq!(tab.get(0, 2), 14);
    assert_eq!(tab.get(0, 1), 0);
    let hp = hilbert_polynomial(&c).unwrap();
    assert_eq!(hp, hrr_chi(&ChernVector::new(Ambient::Quadric(5), 2, &[-1, 1])));
}

#[test]
fn tango_bundle_invariants() {
    let t = common::tango();
    assert_eq!(t.generator_histogram(), vec![(2, 14), (3, 7)]);
    assert_eq!(hilbert_polynomial(&t).unwrap(), tango_chi());
    assert_eq!(hrr_chi(&ChernVector::new(Ambient::Projective(5), 2, &[2, 4])), tango_chi());
    let res = free_resolution(&t, 7).unwrap();
    assert!(res.is_complex() && res.is_minimal() && !res.truncated);
    assert_eq!(res.betti().summary(), "14@-2 7@-3 | 76@-4 | 98@-5 | 49@-6 | 7@-7 1@-8");

    let tab = cohomology_table(&t, -8, 5).unwrap();
    let expected = "\
total: 573 260 92 27 14 7 2 2 7 14 27 92 260 573
   -6: 573 260 91 14  . . . . .  .  .  .   .   .
   -5:   .   .  1 13 14 7 1 . .  .  .  .   .   .
   -4:   .   .  .  .  . . 1 . .  .  .  .   .   .
   -3:   .   .  .  .  . . . 1 .  .  .  .   .   .
   -2:   .   .  .  .  . . . 1 7 14 13  1   .   .
   -1:   .   .  .  .  . . . . .  . 14 91 260 573
";
    assert_eq!(render_table(&tab), expected);
    for (i, tw, v) in [(1, -2, 1), (1, -1, 7), (1, 0, 14), (1, 1, 13), (1, 2, 1), (2, -3, 1)] {
        assert_eq!(tab.get(i, tw), v);
        assert_eq!(tab.get(5 - i, -tw - 8), v, "Serre dual of h^{i}(T({tw}))");
    }
    assert!((0..=5).all(|i| tab.get(i, -4) == 0));
    for tw in tab.twists() {
        assert_eq!(q(tab.euler(tw)), tango_chi().eval_int(tw as i64));
    }
}

#[test]
fn tango_module_is_reflexive() {
    let t = common::tango();
    let tt = double_dual(&t).unwrap();
    assert!(common::same_hilbert(&t, &tt, 8));
}
