//! Pipeline against an independent index-based evaluation, frozen goldens,
//! and structural properties.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use qpd3::{
    pipeline_payoffs, BasisReading, ChannelParams, Complex, Config, Move, Player, StrategyParams,
    Table,
};
use std::f64::consts::{FRAC_PI_2, PI};

type C = Complex<f64>;

const TABLE: [[f64; 3]; 8] = [
    [3.0, 3.0, 3.0],
    [2.0, 2.0, 5.0],
    [2.0, 5.0, 2.0],
    [0.0, 4.0, 4.0],
    [5.0, 2.0, 2.0],
    [4.0, 0.0, 4.0],
    [4.0, 4.0, 0.0],
    [1.0, 1.0, 1.0],
];

fn bit(x: usize, qubit: usize) -> usize {
    (x >> (2 - qubit)) & 1
}

/// Dephasing with diagonal Kraus operators only multiplies `rho[a][b]` by
/// `sum_w w * s(a) s(b)`, where `s` is the product of `+-1` phases.
fn dephase(rho: &mut [[C; 8]; 8], p: f64, mu: f64) {
    let prob = [1.0 - p / 2.0, p / 2.0];
    let link = |i: usize, j: usize| (1.0 - mu) * prob[i] + if i == j { mu } else { 0.0 };
    let mut factor = [[0.0; 8]; 8];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let w = link(i, j) * link(j, k) * prob[k];
                let paulis = [i, j, k];
                let sign = |x: usize| {
                    (0..3)
                        .filter(|&q| paulis[q] == 1 && bit(x, q) == 1)
                        .fold(1.0, |s, _| -s)
                };
                for a in 0..8 {
                    for b in 0..8 {
                        factor[a][b] += w * sign(a) * sign(b);
                    }
                }
            }
        }
    }
    for a in 0..8 {
        for b in 0..8 {
            rho[a][b] *= factor[a][b];
        }
    }
}

fn local(t: f64, a: f64, b: f64) -> [[C; 2]; 2] {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    let i = C::i();
    [
        [C::from_polar(c, a), i * C::from_polar(s, b)],
        [i * C::from_polar(s, -b), C::from_polar(c, -a)],
    ]
}

fn oracle(gamma: f64, delta: f64, ch: [(f64, f64); 2], s: [[f64; 3]; 3]) -> [f64; 3] {
    let mut psi = [C::new(0.0, 0.0); 8];
    psi[0] = C::new((gamma / 2.0).cos(), 0.0);
    psi[7] = C::new(0.0, (gamma / 2.0).sin());
    let mut rho = [[C::new(0.0, 0.0); 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            rho[a][b] = psi[a] * psi[b].conj();
        }
    }
    dephase(&mut rho, ch[0].0, ch[0].1);
    let u: Vec<_> = s.iter().map(|x| local(x[0], x[1], x[2])).collect();
    let big = |a: usize, b: usize| {
        (0..3).fold(C::new(1.0, 0.0), |acc, q| acc * u[q][bit(a, q)][bit(b, q)])
    };
    let mut next = [[C::new(0.0, 0.0); 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            for x in 0..8 {
                for y in 0..8 {
                    next[a][b] += big(a, x) * rho[x][y] * big(b, y).conj();
                }
            }
        }
    }
    dephase(&mut next, ch[1].0, ch[1].1);
    let (c, sn) = ((delta / 2.0).cos(), (delta / 2.0).sin());
    let mut pay = [0.0; 3];
    for x in 0..8 {
        let mut v = [C::new(0.0, 0.0); 8];
        v[x] += c;
        v[7 - x] += C::new(0.0, sn);
        let mut prob = C::new(0.0, 0.0);
        for a in 0..8 {
            for b in 0..8 {
                prob += v[a].conj() * next[a][b] * v[b];
            }
        }
        for k in 0..3 {
            pay[k] += prob.re * TABLE[x][k];
        }
    }
    pay
}

fn config(gamma: f64, delta: f64, ch: [(f64, f64); 2], s: [[f64; 3]; 3]) -> Config {
    let strategies = s.map(|x| StrategyParams::new(x[0], x[1], x[2]).unwrap());
    Config::new(gamma, delta, strategies)
        .unwrap()
        .with_passages(
            ChannelParams::new(ch[0].0, ch[0].1).unwrap(),
            ChannelParams::new(ch[1].0, ch[1].1).unwrap(),
        )
}

fn strategy() -> impl Strategy<Value = [f64; 3]> {
    (0.0..=PI, -PI..=PI, -PI..=PI).prop_map(|(t, a, b)| [t, a, b])
}

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pipeline_matches_oracle(
        gamma in 0.0..=FRAC_PI_2, delta in 0.0..=FRAC_PI_2,
        p1 in unit(), m1 in unit(), p2 in unit(), m2 in unit(),
        s1 in strategy(), s2 in strategy(), s3 in strategy(),
    ) {
        let ch = [(p1, m1), (p2, m2)];
        let out = pipeline_payoffs(&config(gamma, delta, ch, [s1, s2, s3])).unwrap();
        let want = oracle(gamma, delta, ch, [s1, s2, s3]);
        for k in 0..3 {
            prop_assert!((out.payoffs[k] - want[k]).abs() < 1e-12, "{:?} vs {:?}", out.payoffs, want);
        }
    }

    #[test]
    fn probabilities_normalised_and_payoffs_bounded(
        gamma in 0.0..=FRAC_PI_2, delta in 0.0..=FRAC_PI_2,
        p1 in unit(), m1 in unit(), p2 in unit(), m2 in unit(),
        s1 in strategy(), s2 in strategy(), s3 in strategy(),
        mixed in any::<bool>(),
    ) {
        let basis = if mixed { BasisReading::Mixed } else { BasisReading::Uniform };
        let cfg = config(gamma, delta, [(p1, m1), (p2, m2)], [s1, s2, s3]).with_basis(basis);
        let out = pipeline_payoffs(&cfg).unwrap();
        let total: f64 = out.probabilities.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(out.probabilities.iter().all(|&q| q >= -1e-12));
        prop_assert!(out.payoffs.iter().all(|&x| (-1e-12..=5.0 + 1e-12).contains(&x)));
    }

    #[test]
    fn swapping_alice_and_bob_swaps_their_payoffs(
        gamma in 0.0..=FRAC_PI_2, delta in 0.0..=FRAC_PI_2,
        p in unit(),
        s1 in strategy(), s2 in strategy(), s3 in strategy(),
    ) {
        // Memory correlates neighbouring qubits asymmetrically, so only mu = 0 is symmetric.
        let ch = [(p, 0.0), (p, 0.0)];
        let a = pipeline_payoffs(&config(gamma, delta, ch, [s1, s2, s3])).unwrap().payoffs;
        let b = pipeline_payoffs(&config(gamma, delta, ch, [s2, s1, s3])).unwrap().payoffs;
        prop_assert!((a[0] - b[1]).abs() < 1e-12 && (a[1] - b[0]).abs() < 1e-12 && (a[2] - b[2]).abs() < 1e-12);
    }

    #[test]
    fn full_dephasing_leaves_a_classical_mixture(
        s1 in strategy(), s2 in strategy(), s3 in strategy(),
        gamma in 0.0..=FRAC_PI_2, delta in 0.0..=FRAC_PI_2,
    ) {
        // After p = 1 without memory the state is cos^2 |000><000| + sin^2 |111><111|,
        // so payoffs are affine in sin^2(gamma / 2).
        let ch = [(1.0, 0.0), (0.3, 0.6)];
        let run = |g: f64| pipeline_payoffs(&config(g, delta, ch, [s1, s2, s3])).unwrap().payoffs;
        let (zero, half, at) = (run(0.0), run(FRAC_PI_2), run(gamma));
        let w = (gamma / 2.0).sin().powi(2) / 0.5;
        for k in 0..3 {
            prop_assert!((at[k] - zero[k] - w * (half[k] - zero[k])).abs() < 1e-12);
        }
    }
}

fn golden(
    gamma: f64,
    delta: f64,
    ch: [(f64, f64); 2],
    s: [[f64; 3]; 3],
    pay: [f64; 3],
    probs: [f64; 8],
) {
    let out = pipeline_payoffs(&config(gamma, delta, ch, s)).unwrap();
    for k in 0..3 {
        assert!(
            (out.payoffs[k] - pay[k]).abs() < 1e-12,
            "{:?} vs {pay:?}",
            out.payoffs
        );
    }
    for x in 0..8 {
        assert!((out.probabilities[x] - probs[x]).abs() < 1e-12);
    }
}

#[test]
fn golden_generic_noisy_config() {
    golden(
        0.7,
        1.1,
        [(0.35, 0.6), (0.8, 0.25)],
        [[1.2, 0.4, -0.9], [2.5, -1.3, 0.7], [0.3, 2.2, -2.8]],
        [2.840282257541424, 3.2215214451384466, 2.3631692581075083],
        [
            0.044450649527738216,
            0.0948364579646743,
            0.399307966543978,
            0.017427614710295143,
            0.027263707192636037,
            0.201151012324546,
            0.18738542764780272,
            0.02817716408832964,
        ],
    );
}

#[test]
fn golden_fig2_profile() {
    let h = FRAC_PI_2;
    golden(
        h,
        h,
        [(0.4, 1.0), (0.4, 1.0)],
        [[h, 0.0, 0.0], [h, 0.0, 0.0], [h, h, h]],
        [2.625; 3],
        [0.125; 8],
    );
}

#[test]
fn golden_weak_measurement_entanglement() {
    golden(
        1.3,
        0.2,
        [(0.9, 0.1), (0.05, 0.95)],
        [[0.0, 3.0, -3.0], [3.1, 0.0, 1.5], [1.6, -0.7, 0.2]],
        [2.2822851366781607, 3.208330226179829, 3.0059965281637866],
        [
            0.00013242144968485787,
            0.00014074307897352906,
            0.30617002221612,
            0.32382114273087803,
            0.19055609268836587,
            0.17902031750127642,
            8.178265242726389e-05,
            7.747768227461524e-05,
        ],
    );
}

#[test]
fn golden_fig4_off_ridge() {
    let h = FRAC_PI_2;
    golden(
        h,
        h,
        [(0.3, 0.3), (0.3, 0.3)],
        [[1.0, h, 0.5], [h, 0.0, 0.0], [h, 0.0, 0.0]],
        [2.8407469381467716, 2.4092530618532275, 2.4092530618532275],
        [
            0.09417900883617546,
            0.09417900883617542,
            0.09417900883617542,
            0.09417900883617544,
            0.15582099116382453,
            0.15582099116382453,
            0.15582099116382453,
            0.15582099116382458,
        ],
    );
}

#[test]
fn classical_table_is_dominance_solvable() {
    let table = Table::default();
    for others in [
        [Move::C, Move::C],
        [Move::C, Move::D],
        [Move::D, Move::C],
        [Move::D, Move::D],
    ] {
        for player in Player::ALL {
            let with = |m: Move| {
                let mut moves = [others[0], others[1], others[1]];
                let mut it = others.iter();
                for (idx, slot) in moves.iter_mut().enumerate() {
                    *slot = if idx == player.index() {
                        m
                    } else {
                        *it.next().unwrap()
                    };
                }
                qpd3::classical_payoff(moves, &table)[player.index()]
            };
            assert!(with(Move::D) >= with(Move::C));
        }
    }
}
