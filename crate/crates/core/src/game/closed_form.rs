//! Term-by-term evaluation of the closed-form payoff.
//!
//! The density-matrix pipeline is authoritative. This evaluator takes the
//! expression literally, including the repeated `sin(theta_2)` factor in its
//! last group of terms, and reports how far it is from the pipeline.
//! `xi` is taken to be `sin(delta) sin(gamma) / 2`.

use serde::Serialize;

use crate::channel::ChannelParams;
use crate::error::Result;
use crate::scalar::Real;

use super::config::GameConfig;
use super::pipeline::pipeline_payoffs;
use super::table::{Outcome, PayoffTable};

/// Coherence damping of one passage:
/// `(1-p)(1 - 2p + 4 mu p - 2 mu^2 p + p^2 - 2 mu p^2 + mu^2 p^2)`.
pub fn mu_p_factor<T: Real>(params: &ChannelParams<T>) -> T {
    let (p, mu) = (params.p(), params.mu());
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let poly = T::one() - two * p + four * mu * p - two * mu * mu * p + p * p - two * mu * p * p
        + mu * mu * p * p;
    (T::one() - p) * poly
}

/// Scalar coefficients entering the closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormTerms<T> {
    pub mu_p1: T,
    pub mu_p2: T,
    pub eta1: T,
    pub eta2: T,
    pub xi: T,
    /// `cos^2(theta_i / 2)`.
    pub c: [T; 3],
    /// `sin^2(theta_i / 2)`.
    pub s: [T; 3],
}

pub fn closed_form_terms<T: Real>(cfg: &GameConfig<T>) -> ClosedFormTerms<T> {
    let two = T::lit(2.0);
    let (g, d) = (cfg.gamma() / two, cfg.delta() / two);
    let sq = |x: T| x * x;
    let eta1 = sq(g.cos()) * sq(d.cos()) + sq(g.sin()) * sq(d.sin());
    let eta2 = sq(g.sin()) * sq(d.cos()) + sq(d.sin()) * sq(g.cos());
    let xi = cfg.delta().sin() * cfg.gamma().sin() / two;
    let c = cfg.strategies().map(|s| sq((s.theta() / two).cos()));
    let s = cfg.strategies().map(|s| sq((s.theta() / two).sin()));
    ClosedFormTerms {
        mu_p1: mu_p_factor(cfg.passage1()),
        mu_p2: mu_p_factor(cfg.passage2()),
        eta1,
        eta2,
        xi,
        c,
        s,
    }
}

/// One additive group of the closed form and its value for each player.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormTerm {
    pub label: &'static str,
    pub contribution: [f64; 3],
}

/// Closed-form values next to the pipeline, with the per-term breakdown.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    pub basis: String,
    /// The expression taken literally.
    pub values: [f64; 3],
    /// Same expression with the last group's third factor read as `sin(theta_3)`.
    pub values_theta3: [f64; 3],
    pub pipeline: [f64; 3],
    /// `values - pipeline`.
    pub discrepancy: [f64; 3],
    pub max_abs_discrepancy: f64,
    pub max_abs_discrepancy_theta3: f64,
    pub terms: Vec<ClosedFormTerm>,
}

impl ClosedFormReport {
    pub fn payoffs(&self) -> [f64; 3] {
        self.values
    }
}

struct Angles<T> {
    a: [T; 3],
    b: [T; 3],
    sin_theta: [T; 3],
}

/// Evaluates the closed form and compares it with [`pipeline_payoffs`] on `cfg`.
pub fn closed_form_payoffs<T: Real>(cfg: &GameConfig<T>) -> Result<ClosedFormReport> {
    let pipeline = pipeline_payoffs(cfg)?.payoffs.map(Real::to_f64_lossy);
    let t = closed_form_terms(cfg);
    let ang = Angles {
        a: cfg.strategies().map(|s| s.alpha()),
        b: cfg.strategies().map(|s| s.beta()),
        sin_theta: cfg.strategies().map(|s| s.theta().sin()),
    };

    let per_player: Vec<Vec<(&'static str, T)>> = (0..3)
        .map(|k| player_terms(cfg, &t, &ang, cfg.payoffs(), k))
        .collect();

    let labels: Vec<&'static str> = per_player[0].iter().map(|(l, _)| *l).collect();
    let mut terms = Vec::new();
    for (idx, &label) in labels.iter().enumerate() {
        let contribution = [0, 1, 2].map(|k| per_player[k][idx].1.to_f64_lossy());
        terms.push(ClosedFormTerm {
            label,
            contribution,
        });
    }

    let sum_where = |keep: &dyn Fn(&str) -> bool| {
        [0, 1, 2].map(|k| {
            terms
                .iter()
                .filter(|t| keep(t.label))
                .map(|t| t.contribution[k])
                .sum::<f64>()
        })
    };
    let values = sum_where(&|l| l != TAIL2_THETA3);
    let values_theta3 = sum_where(&|l| l != TAIL2_LITERAL);
    let discrepancy = [0, 1, 2].map(|k| values[k] - pipeline[k]);
    let max_abs =
        |v: [f64; 3], w: [f64; 3]| (0..3).map(|k| (v[k] - w[k]).abs()).fold(0.0, f64::max);
    Ok(ClosedFormReport {
        basis: cfg.basis().to_string(),
        values,
        values_theta3,
        pipeline,
        discrepancy,
        max_abs_discrepancy: max_abs(values, pipeline),
        max_abs_discrepancy_theta3: max_abs(values_theta3, pipeline),
        terms,
    })
}

const TAIL2_LITERAL: &str = "mu_p2 tail (sin theta2 twice)";
const TAIL2_THETA3: &str = "mu_p2 tail (sin theta3)";

fn player_terms<T: Real>(
    cfg: &GameConfig<T>,
    t: &ClosedFormTerms<T>,
    ang: &Angles<T>,
    table: &PayoffTable<T>,
    k: usize,
) -> Vec<(&'static str, T)> {
    let pay = |label: &str| table.get(Outcome::parse(label).expect("valid label"))[k];
    let two = T::lit(2.0);
    let eight = T::lit(8.0);
    let (c, s) = (t.c, t.s);
    let (a, b) = (ang.a, ang.b);
    let m = t.mu_p1 * t.mu_p2 * t.xi;
    let cos2 = |x: T| (two * x).cos();

    // (weight, first label, second label, leading eta is eta1?, sign, phase)
    let pairs: [(&'static str, T, &str, &str, bool, T); 8] = [
        (
            "c1c2c3",
            c[0] * c[1] * c[2],
            "000",
            "111",
            true,
            cos2(a[0] + a[1] + a[2]),
        ),
        (
            "s1s2s3",
            s[0] * s[1] * s[2],
            "000",
            "111",
            false,
            cos2(b[0] + b[1] + b[2]),
        ),
        (
            "c1c2s3",
            c[0] * c[1] * s[2],
            "001",
            "110",
            true,
            cos2(a[0] + a[1] - b[2]),
        ),
        (
            "s1s2c3",
            s[0] * s[1] * c[2],
            "001",
            "110",
            false,
            cos2(b[0] + b[1] - a[2]),
        ),
        (
            "s1c2c3",
            s[0] * c[1] * c[2],
            "100",
            "011",
            true,
            cos2(a[1] + a[2] - b[0]),
        ),
        (
            "c1s2s3",
            c[0] * s[1] * s[2],
            "100",
            "011",
            false,
            cos2(b[1] + b[2] - a[0]),
        ),
        (
            "s1c2s3",
            s[0] * c[1] * s[2],
            "101",
            "010",
            true,
            cos2(b[0] + b[2] - a[1]),
        ),
        (
            "c1s2c3",
            c[0] * s[1] * c[2],
            "101",
            "010",
            false,
            cos2(a[0] + a[2] - b[1]),
        ),
    ];
    let mut out: Vec<(&'static str, T)> = pairs
        .iter()
        .map(|&(label, w, first, second, leading, phase)| {
            let (e_first, e_second, sign) = if leading {
                (t.eta1, t.eta2, T::one())
            } else {
                (t.eta2, t.eta1, -T::one())
            };
            let v = e_first * pay(first)
                + e_second * pay(second)
                + sign * (pay(first) - pay(second)) * m * phase;
            (label, w * v)
        })
        .collect();

    let [st1, st2, st3] = ang.sin_theta;
    let sum_a = a[0] + a[1] + a[2];
    let sum_b = b[0] + b[1] + b[2];
    let cos_delta = {
        let h = cfg.delta() / two;
        h.cos() * h.cos() - h.sin() * h.sin()
    };
    let cos_gamma = {
        let h = cfg.gamma() / two;
        h.cos() * h.cos() - h.sin() * h.sin()
    };
    let combo =
        pay("000") - pay("111") - pay("001") + pay("110") - pay("010") + pay("101") + pay("011")
            - pay("100");
    let tail1 = t.mu_p1 / eight
        * cos_delta
        * combo
        * cfg.gamma().sin()
        * st1
        * st2
        * st3
        * (sum_a - sum_b).cos();
    out.push(("mu_p1 tail", tail1));

    let phases = (pay("000") - pay("111")) * (sum_a - sum_b).cos()
        + (pay("110") - pay("001")) * (a[0] + a[1] - a[2] + b[0] + b[1] - b[2]).cos()
        + (pay("010") - pay("101")) * (a[0] - a[1] + a[2] + b[0] - b[1] + b[2]).cos()
        + (pay("100") - pay("011")) * (a[0] - a[1] - a[2] + b[0] - b[1] - b[2]).cos();
    let lead = phases * cfg.delta().sin() * st1 * st2 * t.mu_p2 / eight * cos_gamma;
    out.push((TAIL2_LITERAL, lead * st2));
    out.push((TAIL2_THETA3, lead * st3));
    out
}
