use proptest::prelude::*;
use symquiver::group::{random_matrix, random_skew, trial_rng};
use symquiver::{RatMatrix, Rational};

/// Leibniz sum over permutations.
fn det_leibniz(m: &RatMatrix) -> Rational {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, m: &RatMatrix, total: &mut Rational) {
    if k == p.len() {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = Rational::one();
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        *total = if inversions % 2 == 0 { &*total + &term } else { &*total - &term };
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, m, total);
        p.swap(k, i);
    }
}

/// Signed sum over perfect matchings, pairing the first free index with each other one.
fn pf_matchings(m: &RatMatrix, free: &[usize]) -> Rational {
    if free.is_empty() {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for (pos, &j) in free.iter().enumerate().skip(1) {
        let rest: Vec<usize> = free.iter().copied().enumerate().filter(|&(p, _)| p != 0 && p != pos).map(|(_, v)| v).collect();
        let term = m.get(free[0], j) * &pf_matchings(m, &rest);
        total = if pos % 2 == 1 { &total + &term } else { &total - &term };
    }
    total
}

#[test]
fn det_matches_leibniz() {
    for t in 0..60 {
        let mut rng = trial_rng(11, t);
        let n = (t % 6) as usize;
        let m = random_matrix(n, n, &mut rng);
        assert_eq!(m.det().unwrap(), det_leibniz(&m), "{m:?}");
    }
}

#[test]
fn pfaffian_matches_matchings() {
    for t in 0..60 {
        let mut rng = trial_rng(12, t);
        let n = 2 * (t % 4) as usize;
        let a = random_skew(n, &mut rng);
        let idx: Vec<usize> = (0..n).collect();
        assert_eq!(a.pfaffian().unwrap(), pf_matchings(&a, &idx));
        assert_eq!(a.pfaffian_elimination().unwrap(), pf_matchings(&a, &idx));
    }
}

#[test]
fn pfaffian_methods_agree_above_expansion_range() {
    for t in 0..5 {
        let mut rng = trial_rng(13, t);
        let a = random_skew(10, &mut rng);
        let p = a.pfaffian().unwrap();
        assert_eq!(p, a.pfaffian_elimination().unwrap());
        assert_eq!(&p * &p, a.det().unwrap());
    }
}

#[test]
fn odd_skew_pfaffian_is_zero() {
    let mut rng = trial_rng(14, 0);
    for n in [1, 3, 5] {
        assert!(random_skew(n, &mut rng).pfaffian().unwrap().is_zero());
    }
}

#[test]
fn singular_inverse_errors() {
    let m = RatMatrix::from_ints(2, 2, &[1, 2, 2, 4]);
    assert!(m.inverse().is_err());
    assert!(RatMatrix::zeros(2, 3).det().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 0usize..6) {
        let mut rng = trial_rng(seed, 0);
        let a = random_matrix(n, n, &mut rng);
        let b = random_matrix(n, n, &mut rng);
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn pfaffian_laws(seed in any::<u64>(), h in 0usize..4) {
        let mut rng = trial_rng(seed, 1);
        let a = random_skew(2 * h, &mut rng);
        let b = random_matrix(2 * h, 2 * h, &mut rng);
        let p = a.pfaffian().unwrap();
        prop_assert_eq!(a.det().unwrap(), &p * &p);
        let c = b.mul(&a).unwrap().mul(&b.transpose()).unwrap();
        prop_assert_eq!(c.pfaffian().unwrap(), &b.det().unwrap() * &p);
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), r in 0usize..5, c in 0usize..6, k in 0usize..4) {
        let mut rng = trial_rng(seed, 2);
        // a product of shapes r x k and k x c has rank at most k
        let m = random_matrix(r, k, &mut rng).mul(&random_matrix(k, c, &mut rng)).unwrap();
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.cols(), c);
        prop_assert!(m.rank() <= k);
        prop_assert!(m.mul(&ker).unwrap().is_zero_matrix());
    }

    #[test]
    fn solve_and_inverse(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = trial_rng(seed, 3);
        let m = random_matrix(n, n, &mut rng);
        prop_assume!(!m.det().unwrap().is_zero());
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(n));
        let b = random_matrix(n, 1, &mut rng).column(0);
        let x = m.solve(&b).unwrap().expect("invertible");
        prop_assert_eq!(m.mul(&RatMatrix::column_vector(&x)).unwrap().column(0), b);
    }
}
