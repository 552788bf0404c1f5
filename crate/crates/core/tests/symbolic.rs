//! Identities as exact polynomial identities with one indeterminate per entry.

use minorsum::identities::*;
use minorsum::{IndexSet, Matrix, RingTag, Scalar};

fn generic_abx(m: usize, n: usize) -> (Matrix, Matrix, Matrix) {
    let mut names = Matrix::generic_names("a", m, n);
    names.extend(Matrix::generic_names("b", m, n));
    names.extend(Matrix::generic_names("x", n, n));
    let ring = RingTag::polynomial(names).unwrap();
    (
        Matrix::generic(&ring, "a", m, n).unwrap(),
        Matrix::generic(&ring, "b", m, n).unwrap(),
        Matrix::generic(&ring, "x", n, n).unwrap(),
    )
}

fn assert_pass(r: IdentityReport) {
    assert!(r.pass, "{}", serde_json::to_string(&r).unwrap());
    assert!(!r.lhs.is_zero(), "{} degenerated to 0", r.identity);
}

#[test]
fn main_identities_symbolic() {
    for (m, n) in [(1, 2), (2, 2), (2, 3)] {
        let (a, b, x) = generic_abx(m, n);
        assert_pass(check_main1(&a, &b, &x).unwrap());
        if m % 2 == 0 {
            assert_pass(check_main2(&a, &b, &x).unwrap());
            assert_pass(check_cor7(&a, &x).unwrap());
        } else {
            assert_pass(check_lemma_aux(&a, &b, &x).unwrap());
        }
    }
}

#[test]
fn chain_theorems_symbolic() {
    for (m, n) in [(1, 3), (2, 3), (3, 3)] {
        let (a, b, _) = generic_abx(m, n);
        assert_pass(check_ab(&a, &b).unwrap());
        if m % 2 == 0 {
            assert_pass(check_ab2(&a, &b).unwrap());
            assert_pass(check_cauchy_binet_pf(&a, &b).unwrap());
        }
    }
}

#[test]
fn rank_one_symbolic() {
    for m in 2..=4usize {
        let mut names = Matrix::generic_skew_names("y", m);
        names.extend((1..=m).map(|i| format!("a{i}")));
        names.extend((1..=m).map(|i| format!("b{i}")));
        let ring = RingTag::polynomial(names).unwrap();
        let y = Matrix::generic_skew(&ring, "y", m).unwrap();
        let var = |p: &str, i: usize| Scalar::var(&ring, &format!("{p}{i}")).unwrap();
        let r1 = Rank1Data::new(
            (1..=m).map(|i| var("a", i)).collect(),
            (1..=m).map(|i| var("b", i)).collect(),
        )
        .unwrap();
        assert_pass(check_rank1(&y, &r1).unwrap());
        let sq = check_det_pf_square(&y).unwrap();
        assert!(sq.pass && sq.lhs.is_zero() == (m % 2 == 1));
    }
}

#[test]
fn inversion_lemma_symbolic() {
    let ring = RingTag::polynomial(Matrix::generic_skew_names("y", 5)).unwrap();
    let y = Matrix::generic_skew(&ring, "y", 5).unwrap();
    for set in [vec![1, 2], vec![2, 5], vec![1, 2, 3, 4], vec![1, 3, 4, 5]] {
        assert_pass(check_lemma_iswa(&y, &IndexSet::new(5, set).unwrap()).unwrap());
    }
}

#[test]
fn closed_forms_symbolic() {
    for n in 1..=4usize {
        let names: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
        let ring = RingTag::polynomial(names.clone()).unwrap();
        let diag: Vec<Scalar> = names.iter().map(|v| Scalar::var(&ring, v).unwrap()).collect();
        let r = check_closed_forms(n, &diag).unwrap();
        assert!(r.pass && r.checks.is_empty(), "{r:?}");
    }
}

#[test]
fn okada_and_byun_symbolic() {
    for (m, n) in [(1, 3), (2, 3), (2, 4), (3, 4)] {
        let (a, _, _) = generic_abx(m, n);
        assert_pass(check_okada(&a).unwrap());
        assert_pass(check_byun(&a).unwrap());
    }
}
