use minorsum::ring::{RingTag, Scalar};
use minorsum::{IndexSet, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
    Matrix::from_fn(&RingTag::Integer, r, c, |_, _| Scalar::int(rng.gen_range(-9i64..=9)))
}

fn skew(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut y = Matrix::zeros(&RingTag::Integer, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = Scalar::int(rng.gen_range(-9i64..=9));
            y.set(j, i, -&v).unwrap();
            y.set(i, j, v).unwrap();
        }
    }
    y
}

fn poly_matrix(rng: &mut ChaCha8Rng, ring: &RingTag, n: usize) -> Matrix {
    let names = ["p", "q", "r", "s"];
    Matrix::from_fn(ring, n, n, |_, _| {
        let mut e = Scalar::from_i64(ring, rng.gen_range(-3i64..=3));
        for v in names {
            if rng.gen_bool(0.4) {
                e += Scalar::var(ring, v).unwrap() * Scalar::from_i64(ring, rng.gen_range(-2i64..=2));
            }
        }
        e
    })
}

#[test]
fn det_is_pfaffian_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in (0..=8).step_by(2) {
        for _ in 0..20 {
            let y = skew(&mut rng, n);
            assert_eq!(y.det_cofactor().unwrap(), y.pfaffian_matchings().unwrap().square());
        }
    }
}

#[test]
fn pfaffian_kernels_agree_up_to_ten() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..100 {
        let n = 2 * (trial % 6);
        let y = skew(&mut rng, n);
        assert_eq!(
            y.pfaffian_matchings().unwrap(),
            y.pfaffian_laplace().unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn bareiss_matches_cofactor() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 0..=6 {
        for _ in 0..30 {
            let a = int_matrix(&mut rng, n, n);
            assert_eq!(a.det_bareiss().unwrap(), a.det_cofactor().unwrap());
        }
    }
    let ring = RingTag::polynomial(["p", "q", "r", "s"]).unwrap();
    for n in 0..=4 {
        for _ in 0..10 {
            let a = poly_matrix(&mut rng, &ring, n);
            assert_eq!(a.det_bareiss().unwrap(), a.det_cofactor().unwrap());
        }
    }
}

#[test]
fn bareiss_on_singular_and_rank_deficient_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 2..=6 {
        for _ in 0..20 {
            let mut a = int_matrix(&mut rng, n, n);
            // Zero out a leading column segment to force pivot searches.
            for i in 0..n.min(rng.gen_range(0..n)) {
                a.set(i, 0, Scalar::int(0)).unwrap();
            }
            let b = a.row(0).to_vec();
            if rng.gen_bool(0.5) {
                for (j, v) in b.into_iter().enumerate() {
                    a.set(n - 1, j, v).unwrap();
                }
            }
            assert_eq!(a.det_bareiss().unwrap(), a.det_cofactor().unwrap());
        }
    }
}

#[test]
fn odd_skew_determinant_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in [3, 5, 7] {
        for _ in 0..10 {
            let y = skew(&mut rng, n);
            assert!(y.det_cofactor().unwrap().is_zero());
            assert!(y.det_bareiss().unwrap().is_zero());
        }
    }
}

#[test]
fn row_swap_negates_both_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in 2..=6 {
        let a = int_matrix(&mut rng, n, n);
        let mut b = a.clone();
        b.swap_rows(0, n - 1);
        assert_eq!(b.det_cofactor().unwrap(), -a.det_cofactor().unwrap());
        assert_eq!(b.det_bareiss().unwrap(), -a.det_bareiss().unwrap());
    }
}

#[test]
fn row_swap_negates_pfaffian_of_congruence() {
    // Pf(A K Aᵗ) changes sign when two rows of A are exchanged.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for m in [2, 4] {
        for n in m..=6 {
            let a = int_matrix(&mut rng, m, n);
            let k = skew(&mut rng, n);
            let mut b = a.clone();
            b.swap_rows(0, 1);
            let pf = |x: &Matrix| x.mul(&k).unwrap().mul(&x.transpose()).unwrap().pfaffian().unwrap();
            assert_eq!(pf(&b), -pf(&a));
        }
    }
}

#[test]
fn symbolic_four_by_four_pfaffian() {
    let ring = RingTag::polynomial(Matrix::generic_skew_names("y", 4)).unwrap();
    let y = Matrix::generic_skew(&ring, "y", 4).unwrap();
    let pf = y.pfaffian().unwrap();
    assert_eq!(pf, y.pfaffian_matchings().unwrap());
    assert_eq!(y.det_cofactor().unwrap(), pf.square());
    assert_eq!(y.det_bareiss().unwrap(), pf.square());
}

#[test]
fn deleting_rows_and_columns_keeps_skewness() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let y = skew(&mut rng, 6);
    let idx = IndexSet::new(6, vec![2, 5]).unwrap();
    let z = y.delete_rc(&idx).unwrap();
    assert!(z.is_skew_symmetric());
    assert_eq!(z.rows(), 4);
}
