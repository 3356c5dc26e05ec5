mod common;

use tango_core::beilinson::*;
use tango_core::module::*;
use tango_core::ring::ExteriorElement;
use tango_core::sheafcoh::{cohomology_table, render_table};

fn ext(rows: &[&[&str]]) -> Vec<Vec<ExteriorElement>> {
    rows.iter().map(|r| r.iter().map(|s| ExteriorElement::parse(s).unwrap()).collect()).collect()
}

fn tango_monad() -> Assignment {
    let beta = ext(&[
        &["e0", "e4*e5"],
        &["e1", "e3*e5"],
        &["e2", "e3*e4"],
        &["e3", "e1*e2"],
        &["e4", "e0*e2"],
        &["e5", "e0*e1"],
        &["0", "e0*e3+e1*e4+e2*e5"],
    ]);
    let alpha = ext(&[
        &["e0*e1*e2+e3*e4*e5", "e0*e1*e3*e4+e0*e2*e3*e5+e1*e2*e4*e5", "0"],
        &["e0*e3+e1*e4+e2*e5", "e0*e1*e2+e3*e4*e5", "e1*e2*e4*e5"],
    ]);
    assign_summands(vec![Summand::Line(0); 7], beta, alpha).unwrap()
}

#[test]
fn summand_assignment() {
    let a = tango_monad();
    assert_eq!(a.spec.left, vec![Summand::Omega(4), Summand::Line(-1)]);
    assert_eq!(a.spec.mid, vec![Summand::Omega(1), Summand::Omega(2)]);
    assert_eq!(a.alpha_columns, vec![0, 1]);
    assert_eq!(a.diagnostics.len(), 1);
    assert!(a.diagnostics[0].contains("column 2"));
    // term multiplicities 1,1 | 1,1 | 7
    assert_eq!((a.spec.left.len(), a.spec.mid.len(), a.spec.right.len()), (2, 2, 7));
}

#[test]
fn monad_conditions() {
    let a = tango_monad();
    let cert = check_monad(&a.spec).unwrap();
    assert!(cert.composite_zero && cert.beta_surjective && cert.alpha_injective);
    assert_eq!(cert.expected_rank, 2);
    assert!(cert.holds());
}

#[test]
fn monad_cohomology_is_the_tango_bundle() {
    let m = monad_cohomology(&tango_monad().spec).unwrap();
    let t = double_dual(&m.twist(1)).unwrap();
    assert_eq!(t.generator_histogram(), vec![(2, 14), (3, 7)]);
    let res = free_resolution(&t, 7).unwrap();
    assert_eq!(res.betti().summary(), "14@-2 7@-3 | 76@-4 | 98@-5 | 49@-6 | 7@-7 1@-8");
    let reference = common::tango();
    assert_eq!(
        render_table(&cohomology_table(&m.twist(1), -8, 5).unwrap()),
        render_table(&cohomology_table(&reference, -8, 5).unwrap())
    );
}
