mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use sqsieve::arith::{self, odd_primorial, roots_of_unity_in_dilate};
use sqsieve::expsum::{
    coprime_power_spectrum, direct_exp_sum, geometric_sum, no_cancellation_check, CoeffSpec,
    PhaseDelta,
};
use sqsieve::farey::{self, enumerate_sq_exact, lemma_count_check, witness_pairs};
use sqsieve::sieve::{
    gram_matrix, lhs_square_moduli, sharp_constant, theorem_factor, verify_theorem_chain, Engine,
    GramSpec, SquareFraction,
};

#[test]
fn root_counts_match_brute_force() {
    for m in 1..=6 {
        let p = odd_primorial(m).unwrap();
        let roots = roots_of_unity_in_dilate(&p);
        assert_eq!(roots.len(), 1 << m);
        assert_eq!(roots, brute_roots(p.modulus()));
    }
}

#[test]
fn crt_matches_scan_up_to_ten_thousand() {
    let moduli_sets: &[&[i128]] = &[&[3, 5], &[4, 9], &[7, 11, 13], &[8, 9, 25], &[2, 3, 5, 7, 11], &[97, 101]];
    for moduli in moduli_sets {
        let prod: i128 = moduli.iter().product();
        assert!(prod <= 10_000);
        for seed in 0..20i128 {
            let residues: Vec<i128> = moduli.iter().map(|n| (seed * 7919 + n * 31) % n).collect();
            let (x, m) = arith::crt_combine(&residues, moduli).unwrap();
            assert_eq!(m, prod);
            assert_eq!(x, brute_crt(&residues, moduli));
        }
    }
}

#[test]
fn mobius_matches_sieve() {
    let table = mobius_table(100_000);
    for d in 1..=100_000u64 {
        assert_eq!(arith::mobius(d).unwrap(), table[d as usize], "μ({d})");
    }
}

#[test]
fn mobius_counts_coprime_numerators() {
    for q in 1..=500i128 {
        let by_mobius: i128 = (1..=q)
            .filter(|d| q % d == 0)
            .map(|d| i128::from(arith::mobius(d as u64).unwrap()) * (q * q / d))
            .sum();
        assert_eq!(by_mobius, q * brute_phi(q), "q = {q}");
    }
}

#[test]
fn witness_invariants_hold() {
    for m in 1..=4 {
        let p = odd_primorial(m).unwrap();
        let q0 = p.modulus();
        for w in witness_pairs(&p) {
            assert_eq!(gcd(w.a, w.q), 1);
            assert!(q0 < w.q && w.q <= 2 * q0);
            assert!((w.a * q0 - w.q * w.q).abs() * q0 * q0 <= w.q * w.q);
            assert_eq!(w.discrepancy, -1);
            assert_eq!(w.q * w.q, 1 + w.a * q0);
        }
    }
}

#[test]
fn witnesses_are_inside_the_enumeration() {
    // the witness construction exists for primorial Q only
    for m in 1..=4 {
        let p = odd_primorial(m).unwrap();
        assert!(p.modulus() <= 1155);
        let s = enumerate_sq_exact(p.modulus()).unwrap();
        for w in witness_pairs(&p) {
            assert!(s.binary_search(&w).is_ok(), "{w:?} missing from S({})", p.modulus());
        }
    }
}

#[test]
fn enumeration_matches_naive_double_loop() {
    for q0 in 3..=40 {
        let fast: Vec<(i128, i128)> = enumerate_sq_exact(q0).unwrap().iter().map(|p| (p.a, p.q)).collect();
        assert_eq!(fast, naive_s(q0), "Q = {q0}");
    }
}

#[test]
fn enumeration_is_worker_independent() {
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let one = pool(1).install(|| enumerate_sq_exact(1155).unwrap());
    let many = pool(8).install(|| enumerate_sq_exact(1155).unwrap());
    assert_eq!(one, many);
}

#[test]
fn lemma_consistency_grid() {
    for m in 1..=6 {
        for eps in [0.0, 0.01, 0.1, 0.5, 1.0] {
            let r = lemma_count_check(m, eps).unwrap();
            let by_eps = eps >= r.epsilon_min;
            let by_count = r.witness_count as f64 >= r.bound;
            assert_eq!(r.passes, by_eps);
            assert_eq!(r.passes, by_count);
            assert_eq!(r.witness_count, 1 << m);
            assert!(r.exact_count.unwrap() >= r.witness_count);
        }
    }
}

#[test]
fn parseval_for_small_moduli() {
    for q in 1..=30i128 {
        let len = 1 + (q as usize * 7) % 64;
        let c = random_coeffs(q as u64, len);
        let q2 = q * q;
        let total: f64 = (0..q2).map(|a| naive_inner(&c, 0, a, q).norm_sqr()).sum();
        let mut folded = vec![Complex64::new(0.0, 0.0); q2 as usize];
        for (i, z) in c.iter().enumerate() {
            folded[(i + 1) % q2 as usize] += z;
        }
        let mass: f64 = folded.iter().map(|z| z.norm_sqr()).sum::<f64>() * q2 as f64;
        assert!(rel_err(total, mass) < 1e-9, "q = {q}");
        // the library's spectral route at d = 1 sees the same mass
        let spec = sqsieve::expsum::power_spectrum(&folded);
        assert!(rel_err(spec.iter().sum(), mass) < 1e-9);
    }
}

#[test]
fn engines_agree_on_small_s() {
    for q0 in [3i128, 15] {
        let len = q0 * q0 * q0 / 9;
        let coeffs = CoeffSpec::extremal(q0, len).unwrap();
        for p in enumerate_sq_exact(q0).unwrap() {
            let d = direct_exp_sum(&coeffs, p.a, p.q).unwrap().norm();
            let g = geometric_sum(PhaseDelta::for_pair(&p).unwrap(), len).unwrap().norm();
            assert!(rel_err(d, g) <= 1e-9, "{p:?}: {d} vs {g}");
        }
    }
}

#[test]
fn spectrum_matches_double_loop() {
    for q in 1..=12i128 {
        for (seed, len) in [(1u64, 5usize), (2, 17), (3, 40), (4, 200)] {
            let c = random_coeffs(seed * 1000 + q as u64, len);
            let spec = CoeffSpec::custom(c.clone()).unwrap().with_offset(seed as i128 - 2);
            let fast = coprime_power_spectrum(q, &spec).unwrap();
            let slow = naive_coprime_block(&c, seed as i128 - 2, q);
            assert!(rel_err(fast, slow) <= 1e-9, "q = {q}, N = {len}: {fast} vs {slow}");
        }
    }
}

#[test]
fn phases_that_are_whole_turns_contribute_one() {
    // a = q² makes every a·n a multiple of q²
    for q in [2i128, 5, 12] {
        let coeffs = CoeffSpec::all_ones(50).unwrap();
        let s = direct_exp_sum(&coeffs, q * q, q).unwrap();
        assert_eq!(s, Complex64::new(50.0, 0.0));
    }
}

#[test]
fn no_cancellation_for_every_witness_up_to_m5() {
    for m in 1..=5 {
        let p = odd_primorial(m).unwrap();
        let len = p.cube_ninth().unwrap();
        for w in witness_pairs(&p) {
            let r = no_cancellation_check(&w, len).unwrap();
            assert!(r.passes, "m = {m}, {w:?}: {} < {}", r.magnitude, r.floor);
        }
    }
}

#[test]
fn theorem_factor_decreases_in_epsilon() {
    for q in [3i128, 15, 105, 1155] {
        let mut prev = f64::INFINITY;
        for k in 0..40 {
            let f = theorem_factor(q, k as f64 * 0.05).unwrap();
            assert!(f < prev);
            prev = f;
        }
    }
}

#[test]
fn lhs_engines_agree() {
    let c = random_coeffs(77, 30);
    let spec = CoeffSpec::custom(c).unwrap();
    let d = lhs_square_moduli(1..=9, &spec, Engine::Direct).unwrap();
    let s = lhs_square_moduli(1..=9, &spec, Engine::Spectrum).unwrap();
    assert!(rel_err(s, d) <= 1e-8);

    let spec = CoeffSpec::extremal(15, 375).unwrap().with_offset(4);
    let d = lhs_square_moduli(16..=30, &spec, Engine::Direct).unwrap();
    let s = lhs_square_moduli(16..=30, &spec, Engine::Spectrum).unwrap();
    let g = lhs_square_moduli(16..=30, &spec, Engine::Geometric).unwrap();
    assert!(rel_err(s, d) <= 1e-8 && rel_err(g, d) <= 1e-8, "{d} {s} {g}");
}

#[test]
fn chain_engine_consistency() {
    for m in 1..=2 {
        let g = verify_theorem_chain(m, 0.5, true, Engine::Geometric).unwrap();
        let d = verify_theorem_chain(m, 0.5, true, Engine::Direct).unwrap();
        assert!(rel_err(d.lhs_full.unwrap(), g.lhs_full.unwrap()) <= 1e-8);
        assert!(rel_err(d.lhs_witness, g.lhs_witness) <= 1e-8);
    }
}

#[test]
fn chain_report_invariants() {
    for m in 1..=3 {
        for eps in [0.0, 0.5, 1.0] {
            let r = verify_theorem_chain(m, eps, m <= 2, Engine::Geometric).unwrap();
            assert_eq!(r.modulus.pow(3) + r.len, 10 * r.len);
            if let Some(full) = r.lhs_full {
                assert!(full >= r.lhs_witness);
            }
            assert!(r.lhs_witness >= 0.0);
            for s in &r.chain {
                assert_eq!(s.passes, s.relation.holds(s.lhs, s.rhs));
            }
            let normal = r.step("normalization").unwrap();
            assert!(rel_err(normal.lhs, normal.rhs) <= 1e-12);
            let by_eps = eps >= r.epsilon_min;
            assert_eq!(by_eps, r.step("count_bound").unwrap().passes);
        }
    }
}

fn dominance_holds(spec: &GramSpec, lambda: f64, seed: u64) {
    let len = spec.len as usize;
    let mut seqs: Vec<Vec<Complex64>> = (0..20).map(|k| random_coeffs(seed + k, len)).collect();
    seqs.push(vec![Complex64::new(1.0, 0.0); len]);
    seqs.push(extremal_coeffs(7, len));
    for c in seqs {
        let lhs: f64 = spec
            .fractions
            .iter()
            .map(|f| naive_inner(&c, 0, f.a, f.q).norm_sqr())
            .sum();
        let norm: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        assert!(lhs / norm <= lambda * (1.0 + 1e-6), "{} > {lambda}", lhs / norm);
    }
}

#[test]
fn sharp_constant_matches_jacobi_and_dominates() {
    for (lo, hi, len) in [(1i128, 4i128, 8i128), (2, 5, 16), (5, 7, 3)] {
        let spec = GramSpec::from_q_range(lo..=hi, len).unwrap();
        let r = sharp_constant(&spec).unwrap();
        assert!(r.converged);
        let thetas: Vec<(i128, i128)> = spec.fractions.iter().map(|f| (f.a, f.q)).collect();
        let oracle = jacobi_top_eigenvalue(&naive_gram(&thetas, len as usize));
        assert!(rel_err(r.lambda_max, oracle) <= 1e-6, "{} vs {oracle}", r.lambda_max);
        dominance_holds(&spec, r.lambda_max, 10 * lo as u64);
    }
}

#[test]
fn sharp_constant_grows_with_the_system() {
    let all = GramSpec::from_q_range(1..=6, 12).unwrap().fractions;
    let mut prev = 0.0;
    for k in [1usize, 5, 20, 40, all.len()] {
        let spec = GramSpec::new(all[..k].to_vec(), 12).unwrap();
        let lambda = sharp_constant(&spec).unwrap().lambda_max;
        assert!(lambda >= prev * (1.0 - 1e-9), "k = {k}: {lambda} < {prev}");
        prev = lambda;
    }
}

#[test]
fn gram_entries_match_naive_sums() {
    let spec = GramSpec::new(
        vec![
            SquareFraction { a: 1, q: 2 },
            SquareFraction { a: 5, q: 3 },
            SquareFraction { a: 17, q: 16 },
        ],
        9,
    )
    .unwrap();
    let g = gram_matrix(&spec).unwrap();
    let naive = naive_gram(&[(1, 2), (5, 3), (17, 16)], 9);
    for (row, nrow) in g.iter().zip(&naive) {
        for (z, w) in row.iter().zip(nrow) {
            assert!((z - w).norm() < 1e-12);
        }
    }
}

#[test]
fn jacobi_oracle_sanity() {
    // [[2, i], [−i, 2]] has eigenvalues 1 and 3
    let h = vec![
        vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)],
        vec![Complex64::new(0.0, -1.0), Complex64::new(2.0, 0.0)],
    ];
    assert!((jacobi_top_eigenvalue(&h) - 3.0).abs() < 1e-12);
}

#[test]
fn clustering_uses_closed_interval() {
    // δ = 1/Q³ reproduces S(Q)
    for q0 in [3i128, 7, 15, 21] {
        let w = farey::enumerate_window(q0, num_rational::Ratio::new(1, q0.pow(3))).unwrap();
        assert_eq!(w, enumerate_sq_exact(q0).unwrap());
    }
}

proptest! {
    #[test]
    fn crt_solution_satisfies_every_congruence(
        seeds in proptest::collection::vec(0i128..1000, 1..4),
        pick in 0usize..6,
    ) {
        let families: [&[i128]; 6] = [&[3, 5, 7], &[4, 9, 5], &[11, 13, 2], &[16, 27, 25], &[101, 103, 107], &[8, 15, 49]];
        let moduli = &families[pick][..seeds.len()];
        let residues: Vec<i128> = seeds.iter().zip(moduli).map(|(s, n)| s % n).collect();
        let (x, prod) = arith::crt_combine(&residues, moduli).unwrap();
        prop_assert!(0 <= x && x < prod);
        for (r, n) in residues.iter().zip(moduli) {
            prop_assert_eq!(x % n, *r);
        }
    }

    #[test]
    fn geometric_sum_matches_termwise(num in -500i128..500, den in 1i128..500, len in 1i128..300) {
        let d = PhaseDelta::new(num, den).unwrap();
        let g = geometric_sum(d, len).unwrap();
        let naive: Complex64 = (1..=len)
            .map(|n| {
                let x = (num * n).rem_euclid(den) as f64 / den as f64;
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x)
            })
            .sum();
        prop_assert!((g - naive).norm() <= 1e-9 * len as f64);
    }

    #[test]
    fn membership_is_exact_and_matches_fractions(q0 in 3i128..200, dq in 1i128..200, a_off in -3i128..3) {
        let q = q0 + 1 + (dq % q0);
        let a = (q * q) / q0 + a_off;
        let member = farey::in_s(a, q, q0);
        let rational = a >= 1 && gcd(a, q) == 1
            && {
                let d = num_rational::Ratio::new(a * q0 - q * q, q * q * q0);
                d <= num_rational::Ratio::new(1, q0.pow(3)) && -d <= num_rational::Ratio::new(1, q0.pow(3))
            };
        prop_assert_eq!(member, rational);
    }

    #[test]
    fn json_reports_roundtrip(m in 1usize..5, eps in 0.0f64..2.0) {
        use sqsieve::report::{render, Format};
        let r = lemma_count_check(m, eps);
        if let Ok(r) = r {
            let bytes = render(&r, Format::Json).unwrap();
            let back: farey::LemmaReport = serde_json::from_slice(&bytes).unwrap();
            prop_assert_eq!(back, r);
        }
        let c = verify_theorem_chain(m.min(3), eps, false, Engine::Geometric);
        if let Ok(c) = c {
            let bytes = render(&c, Format::Json).unwrap();
            let back: sqsieve::sieve::SieveReport = serde_json::from_slice(&bytes).unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
