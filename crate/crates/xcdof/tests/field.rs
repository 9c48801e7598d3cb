#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use xcdof::field::RowBasis;
use xcdof::{Field, FieldMatrix, DEFAULT_PRIME};

/// Textbook elimination over `Z/pZ` on plain integers.
fn rank_oracle(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0i64..7, c), r)
    })
}

proptest! {
    #[test]
    fn rank_matches_oracle(rows in small_matrix()) {
        let f = Field::new(7).unwrap();
        let a = FieldMatrix::from_i64(f, &rows);
        prop_assert_eq!(a.rank(), rank_oracle(&rows, 7));
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn left_kernel_annihilates(rows in small_matrix()) {
        let f = Field::new(7).unwrap();
        let a = FieldMatrix::from_i64(f, &rows);
        let k = a.left_kernel();
        prop_assert_eq!(k.rows(), a.rows() - a.rank());
        if k.rows() > 0 {
            prop_assert!(k.mul(&a).is_zero());
            prop_assert_eq!(k.rank(), k.rows());
        }
    }

    #[test]
    fn product_rank_is_submultiplicative(a in small_matrix(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let f = Field::new(7).unwrap();
        let a = FieldMatrix::from_i64(f, &a);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let b = FieldMatrix::random(f, &mut rng, a.cols(), 4);
        prop_assert!(a.mul(&b).rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn row_basis_tracks_rank(rows in small_matrix()) {
        let f = Field::new(7).unwrap();
        let a = FieldMatrix::from_i64(f, &rows);
        let mut basis = RowBasis::new(f, a.cols());
        for r in 0..a.rows() {
            basis.insert(a.row(r));
            prop_assert!(basis.contains(a.row(r)));
        }
        prop_assert_eq!(basis.rank(), a.rank());
    }

    #[test]
    fn field_inverse(x in 1u64..DEFAULT_PRIME) {
        let f = Field::default();
        prop_assert_eq!(f.mul(x, f.inv(x)), 1);
    }
}

#[test]
fn composite_modulus_rejected() {
    assert!(Field::new(15).is_err());
    assert!(Field::new(1).is_err());
}
