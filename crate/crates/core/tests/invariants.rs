use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sowkit::codes::{all_vectors, code_sow_distribution, rank_of, weight_distribution};
use sowkit::good::{self, MatrixEnsemble};
use sowkit::ldpc;
use sowkit::oracle;
use sowkit::orbits::joint_weight;
use sowkit::poly::{bivariate_projection, rat};
use sowkit::{
    transform, BigRat, EnsembleKind, EnsembleSpec, Field, KMatrix, LinearCode, Matrix, MonomialMap, OrbitTable,
};

const LIMIT: u64 = 1 << 22;

fn table(q: u64) -> OrbitTable {
    OrbitTable::for_order(q).unwrap()
}

fn random_code(f: &Arc<Field>, n: usize, k: usize, seed: u64) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LinearCode::random(f.clone(), n, k.min(n), &mut rng)
}

fn image(code: &LinearCode, map: &MonomialMap) -> LinearCode {
    let f = code.field();
    let rows: Vec<_> = code.basis().row_vectors().iter().map(|r| map.apply(f, r).unwrap()).collect();
    LinearCode::from_generator(&Matrix::from_rows(f.clone(), code.length(), &rows).unwrap())
}

// Pairs share a sow vector exactly when some monomial map carries one to the other.
#[test]
fn sow_classes_are_monomial_orbits() {
    for q in [2u64, 3] {
        let t = table(q);
        let f = t.field().clone();
        for n in 1..=3 {
            let maps = MonomialMap::all(n, &f, LIMIT).unwrap();
            let vs = all_vectors(&f, n, LIMIT).unwrap();
            let mut classes: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
            for u in &vs {
                for v in &vs {
                    classes.entry(t.sow(u, v).unwrap()).or_default().insert((u.clone(), v.clone()));
                }
            }
            for (s, members) in &classes {
                let (u, v) = members.iter().next().unwrap();
                let orbit: BTreeSet<_> =
                    maps.iter().map(|m| (m.apply(&f, u).unwrap(), m.apply(&f, v).unwrap())).collect();
                assert_eq!(&orbit, members, "q={q} n={n} sow={s:?}");
            }
        }
    }
}

#[test]
fn independence_from_sow_matches_rank() {
    for q in [2u64, 3] {
        let t = table(q);
        let f = t.field().clone();
        for n in 1..=3 {
            let vs = all_vectors(&f, n, LIMIT).unwrap();
            for u in &vs {
                for v in &vs {
                    let by_rank = rank_of(&f, &[u.clone(), v.clone()]) == 2;
                    assert_eq!(t.sow(u, v).unwrap().is_independent(), by_rank);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sow_refines_joint_weight(q in prop::sample::select(vec![2u64, 3, 4]), n in 1usize..7, seed in any::<u64>()) {
        let t = table(q);
        let f = t.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen: BTreeMap<_, [u32; 4]> = BTreeMap::new();
        for _ in 0..40 {
            let u: Vec<_> = (0..n).map(|_| f.element(rng.random_range(0..q as u32)).unwrap()).collect();
            let v: Vec<_> = (0..n).map(|_| f.element(rng.random_range(0..q as u32)).unwrap()).collect();
            let jw = joint_weight(&u, &v).unwrap();
            if let Some(prev) = seen.insert(t.sow(&u, &v).unwrap(), jw) {
                prop_assert_eq!(prev, jw);
            }
            // also the image under a random monomial map
            let m = MonomialMap::sample(n, &f, &mut rng);
            let (mu, mv) = (m.apply(&f, &u).unwrap(), m.apply(&f, &v).unwrap());
            prop_assert_eq!(t.sow(&mu, &mv).unwrap(), t.sow(&u, &v).unwrap());
            prop_assert_eq!(joint_weight(&mu, &mv).unwrap(), jw);
        }
    }

    #[test]
    fn monomial_maps_preserve_distributions(q in 2u64..4, n in 1usize..4, ku in 0usize..4, kv in 0usize..4, seed in any::<u64>()) {
        let t = table(q);
        let f = t.field().clone();
        let u = random_code(&f, n, ku, seed);
        let v = random_code(&f, n, kv, seed ^ 1);
        let m = MonomialMap::sample_seeded(n, &f, seed);
        let before = code_sow_distribution(&u, &v, &t, LIMIT).unwrap();
        let after = code_sow_distribution(&image(&u, &m), &image(&v, &m), &t, LIMIT).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn enumerator_mass_and_projection(q in 2u64..4, n in 1usize..5, ku in 0usize..5, kv in 0usize..5, seed in any::<u64>()) {
        let t = table(q);
        let f = t.field().clone();
        let u = random_code(&f, n, ku, seed);
        let v = random_code(&f, n, kv, seed.wrapping_add(7));
        let w = oracle::brute_enumerator(&u, &v, &t, LIMIT).unwrap();
        let ones = vec![rat(1); t.len()];
        prop_assert_eq!(w.evaluate(&ones).unwrap(), rat((u.size() * v.size()) as i64));
        // same code on both sides: the x-marginal is |C| times the weight distribution
        let wc = oracle::brute_enumerator(&u, &u, &t, LIMIT).unwrap();
        let marg = bivariate_projection(&wc, &t).unwrap().at_y_one();
        let a = weight_distribution(&u.codewords(LIMIT).unwrap(), n);
        for j in 0..=n {
            let got = marg.get(j).cloned().unwrap_or_else(|| rat(0));
            prop_assert_eq!(got, rat((a[j] * u.size()) as i64));
        }
    }

    #[test]
    fn transform_is_an_involution(q in 2u64..4, n in 1usize..5, ku in 0usize..5, kv in 0usize..5, seed in any::<u64>()) {
        let t = table(q);
        let k = KMatrix::build(&t);
        let f = t.field().clone();
        let u = random_code(&f, n, ku, seed);
        let v = random_code(&f, n, kv, seed.wrapping_mul(3));
        let w = oracle::brute_enumerator(&u, &v, &t, LIMIT).unwrap();
        let once = transform(&w, &rat(u.size() as i64), &rat(v.size() as i64), &k).unwrap();
        let (du, dv) = (u.dual(), v.dual());
        prop_assert_eq!(&once, &oracle::brute_enumerator(&du, &dv, &t, LIMIT).unwrap());
        let twice = transform(&once, &rat(du.size() as i64), &rat(dv.size() as i64), &k).unwrap();
        prop_assert_eq!(twice, w);
    }

    #[test]
    fn ensemble_values_are_nonnegative(q in 2u32..4, c in 1u32..4, d in 2u32..5, blocks in 1u32..3, two in any::<bool>()) {
        let n = d * blocks;
        let kind = if two { EnsembleKind::Two } else { EnsembleKind::One };
        let t = table(q as u64);
        let k = KMatrix::build(&t);
        let spec = EnsembleSpec::new(kind, q, c, d, n).unwrap();
        let dist = ldpc::expected_distribution(&spec, &t, &k).unwrap();
        let zero = BigRat::from_integer(0.into());
        prop_assert!(dist.values.values().all(|v| *v >= zero));
        let marg = dist.expected_weight_distribution();
        prop_assert_eq!(&marg[0], &rat(1));
        prop_assert!(marg.iter().all(|v| *v >= zero));
    }

    #[test]
    fn two_good_implies_one_good(q in 2u64..4, m in 1usize..3, n in 2usize..4, picks in prop::collection::vec(any::<u32>(), 1..12)) {
        let f = Arc::new(Field::from_order(q).unwrap());
        let qmn = (q as u32).pow((m * n) as u32);
        let distinct: BTreeSet<u32> = picks.iter().map(|p| p % qmn).collect();
        let members: Vec<Matrix> = distinct
            .into_iter()
            .map(|mut x| {
                let entries: Vec<u32> = (0..m * n).map(|_| { let e = x % q as u32; x /= q as u32; e }).collect();
                Matrix::from_indices(f.clone(), m, n, &entries).unwrap()
            })
            .collect();
        let e = MatrixEnsemble::explicit(f, m, n, members).unwrap();
        if good::is_k_good(&e, 2.min(m), 1 << 20).unwrap() {
            prop_assert!(good::is_k_good(&e, 1, 1 << 20).unwrap());
        }
    }
}
