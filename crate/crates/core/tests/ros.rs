mod common;

use gxe_core::ros::{ros_df, SignificanceRegion};
use gxe_core::stats::{mix_seed, ols_fit, sample_gaussian, student_t_quantile};
use gxe_core::{
    classify_ros, default_alpha, fit_legit, ros_analysis, ros_bounds, simple_slope, DfConvention, FitOptions,
    GxEDataset, GxeError, Label, LegitModel, ModelForm,
};
use ndarray::Array2;

fn standard(data: &GxEDataset<f64>) -> LegitModel<f64> {
    fit_legit(data, ModelForm::standard(), &FitOptions::default()).unwrap()
}

fn random_coefs(seed: u64) -> [f64; 4] {
    let z = sample_gaussian::<f64>(1.0, 4, seed).unwrap();
    [z[0], z[1], z[2], 1.5 * z[3]]
}

fn is_significant(model: &LegitModel<f64>, t_crit: f64, e: f64) -> bool {
    simple_slope(model, e).unwrap().t_stat.abs() >= t_crit
}

fn bounds(r: &gxe_core::RoSResult<f64>) -> Vec<f64> {
    r.lower_bound.into_iter().chain(r.upper_bound).collect()
}

#[test]
fn bounds_match_a_grid_scan() {
    let step = 1e-4;
    let mut checked = 0;
    for seed in 0..60u64 {
        let data = common::single_dataset(200, random_coefs(mix_seed(seed, 99)), 1.0, seed);
        let model = standard(&data);
        let r = ros_analysis(&model, None, DfConvention::Residual).unwrap();
        let (lo, hi) = model.env_score_range;
        let (a, b) = (lo - 1.0, hi + 1.0);
        let steps = ((b - a) / step).ceil() as usize;
        let mut transitions = Vec::new();
        let mut prev = is_significant(&model, r.t_crit, a);
        for i in 1..=steps {
            let e = a + i as f64 * step;
            let now = is_significant(&model, r.t_crit, e);
            if now != prev {
                transitions.push(e - step / 2.0);
            }
            prev = now;
        }
        let expected: Vec<f64> = bounds(&r).into_iter().filter(|v| *v > a && *v < b).collect();
        assert_eq!(transitions.len(), expected.len(), "seed {seed}: {transitions:?} vs {r:?}");
        for (t, v) in transitions.iter().zip(&expected) {
            assert!((t - v).abs() <= step, "seed {seed}: scan {t} vs bound {v}");
        }
        checked += expected.len();
    }
    assert!(checked > 20);
}

#[test]
fn simple_slope_matches_recentered_regression() {
    let data = common::single_dataset(300, [1.0, 0.4, -0.3, 1.2], 0.8, 5);
    let model = standard(&data);
    let g = data.genes().column(0);
    let y = data.outcome();
    for e0 in [-0.5, 0.0, 0.3, 0.77, 1.4] {
        let e = data.environments().column(0).mapv(|v| v - e0);
        let x = Array2::from_shape_fn((data.n_obs(), 4), |(i, j)| match j {
            0 => 1.0,
            1 => e[i],
            2 => g[i],
            _ => e[i] * g[i],
        });
        let oracle = ols_fit(x.view(), y).unwrap();
        let s = simple_slope(&model, e0).unwrap();
        assert!((s.slope - oracle.coefficients[2]).abs() < 1e-8);
        assert!((s.variance - oracle.coefficient_covariance[[2, 2]]).abs() < 1e-8);
        assert!((s.t_stat - oracle.t_value(2)).abs() < 1e-8);
    }
}

#[test]
fn slope_vanishes_at_the_crossover() {
    let data = common::single_dataset(300, [1.0, 0.4, -0.3, 1.2], 0.8, 6);
    let model = standard(&data);
    let c = -model.beta_g / model.beta_eg;
    let s = simple_slope(&model, c).unwrap();
    assert!(s.slope.abs() < 1e-12);
    assert!(s.t_stat.abs() < 1e-10);
    // the crossover is always in the non-significant set
    let r = ros_analysis(&model, None, DfConvention::Residual).unwrap();
    if r.region == SignificanceRegion::Outside {
        assert!(r.lower_bound.is_none_or(|l| l <= c));
        assert!(r.upper_bound.is_none_or(|u| u >= c));
    }
}

#[test]
fn reversing_gene_coding_keeps_the_bounds() {
    for seed in 0..10u64 {
        let data = common::single_dataset(250, random_coefs(mix_seed(seed, 5)), 1.0, 40 + seed);
        let flipped = GxEDataset::new(
            data.outcome().to_owned(),
            data.genes().mapv(|v| 1.0 - v),
            data.environments().clone(),
            None,
        )
        .unwrap();
        let a = ros_analysis(&standard(&data), None, DfConvention::Residual).unwrap();
        let b = ros_analysis(&standard(&flipped), None, DfConvention::Residual).unwrap();
        assert_eq!(a.region, b.region);
        for (x, y) in bounds(&a).iter().zip(&bounds(&b)) {
            assert!((x - y).abs() < 1e-8, "{x} vs {y}");
        }
        assert_eq!(a.label, b.label);
    }
}

#[test]
fn region_membership_agrees_with_the_slope_test() {
    let probes = sample_gaussian::<f64>(2.0, 2000, 17).unwrap();
    for seed in 0..20u64 {
        let data = common::single_dataset(150, random_coefs(mix_seed(seed, 11)), 1.5, 60 + seed);
        let model = standard(&data);
        let r = ros_analysis(&model, None, DfConvention::Residual).unwrap();
        for &e in probes.iter() {
            if bounds(&r).iter().any(|b| (b - e).abs() < 1e-9) {
                continue;
            }
            let between = r.lower_bound.is_none_or(|l| e > l) && r.upper_bound.is_none_or(|u| e < u);
            let predicted = match r.region {
                SignificanceRegion::Outside => !between,
                SignificanceRegion::Inside => between,
                SignificanceRegion::Everywhere => true,
                SignificanceRegion::Nowhere => false,
            };
            assert_eq!(predicted, is_significant(&model, r.t_crit, e), "seed {seed}, e {e}, {r:?}");
        }
    }
}

#[test]
fn smaller_alpha_widens_the_nonsignificant_interval() {
    let data = common::single_dataset(400, [1.0, 0.5, -0.5, 2.0], 0.7, 9);
    let model = standard(&data);
    let df = ros_df(&model, DfConvention::Residual);
    let mut prev: Option<(f64, f64)> = None;
    for alpha in [0.2, 0.1, 0.05, 0.01, 0.001] {
        let r = ros_bounds(&model, alpha, df).unwrap();
        assert_eq!(r.region, SignificanceRegion::Outside);
        let (l, u) = (r.lower_bound.unwrap(), r.upper_bound.unwrap());
        if let Some((pl, pu)) = prev {
            assert!(l < pl && u > pu);
        }
        prev = Some((l, u));
    }
}

#[test]
fn pure_noise_rarely_produces_bounds_in_range() {
    let reps = 200;
    let mut none = 0;
    for r in 0..reps {
        let base = common::single_dataset(300, [0.0; 4], 1.0, mix_seed(21, r));
        let y = sample_gaussian::<f64>(1.0, 300, mix_seed(22, r)).unwrap();
        let data = base.with_outcome(y).unwrap();
        let result = ros_analysis(&standard(&data), None, DfConvention::Residual).unwrap();
        if result.label == Label::NoEvidence {
            none += 1;
        }
    }
    let rate = none as f64 / reps as f64;
    assert!(rate >= 0.8, "no-evidence rate {rate}");
}

#[test]
fn degenerate_interaction_is_reported() {
    let data = common::single_dataset(100, [1.0, 0.5, 0.5, 1.0], 1.0, 3);
    let mut model = standard(&data);
    model.beta_eg = 0.0;
    model.diagnostics.main_step.coefficient_covariance.fill(0.0);
    let df = ros_df(&model, DfConvention::Residual);
    assert_eq!(ros_bounds(&model, 0.05, df), Err(GxeError::NoInteraction));
    assert!(matches!(simple_slope(&model, 0.5), Err(GxeError::NonPositiveVariance(_))));
    assert!(matches!(ros_bounds(&standard(&data), 1.5, df), Err(GxeError::Domain(_))));
}

#[test]
fn crossover_parametrized_models_are_rejected() {
    use gxe_core::{Crossover, EnvEffect};
    let data = common::single_dataset(200, [1.0, 0.5, 0.5, 1.0], 1.0, 4);
    let form = ModelForm::new(Crossover::Fixed(0.0), EnvEffect::Free);
    let model = fit_legit(&data, form, &FitOptions::default()).unwrap();
    assert_eq!(simple_slope(&model, 0.2), Err(GxeError::CrossoverParametrized));
}

#[test]
fn df_conventions_and_default_alpha() {
    let data = common::single_dataset(120, [1.0, 0.5, 0.5, 1.0], 1.0, 4);
    let model = standard(&data);
    assert_eq!(ros_df(&model, DfConvention::Residual), 116);
    assert_eq!(ros_df(&model, DfConvention::Reduced), 115);
    let r = ros_analysis(&model, None, DfConvention::Reduced).unwrap();
    assert_eq!(r.degrees_of_freedom, 115);
    assert_eq!(r.alpha, 0.05);
    assert!((r.t_crit - student_t_quantile::<f64>(0.975, 115).unwrap()).abs() < 1e-14);
    assert_eq!(default_alpha::<f64>(1, 1), 0.05);
    assert_eq!(default_alpha::<f64>(4, 3), 0.0001);
    assert_eq!(default_alpha::<f64>(1, 3), 0.0001);

    let multi = common::latent_dataset(300, [1.0, 0.5, 0.5, 1.0], &[0.25; 4], &[0.4, 0.3, 0.3], 1.0, 4);
    let m = standard(&multi);
    let r = ros_analysis(&m, None, DfConvention::Residual).unwrap();
    assert_eq!(r.alpha, 0.0001);
    assert_eq!(r.degrees_of_freedom, 296);
}

#[test]
fn label_follows_bound_placement() {
    let data = common::single_dataset(2000, [3.0, 0.0, -1.0, 2.0], 0.5, 12);
    let model = standard(&data);
    let r = ros_analysis(&model, None, DfConvention::Residual).unwrap();
    assert_eq!(r.observable_range, model.env_score_range);
    assert_eq!(r.label, classify_ros(&r, model.env_score_range));
    assert_eq!(r.label, Label::DifferentialSusceptibility);
    // a narrower observable window excludes the upper bound
    let narrow = (model.env_score_range.0, r.upper_bound.unwrap() - 1e-6);
    assert_eq!(classify_ros(&r, narrow), Label::DiathesisStress);
}

#[test]
fn single_precision_bounds() {
    let d = common::single_dataset(500, [1.0, 0.5, -0.5, 2.0], 0.7, 9);
    let data = GxEDataset::new(
        d.outcome().mapv(|v| v as f32),
        d.genes().mapv(|v| v as f32),
        d.environments().mapv(|v| v as f32),
        None,
    )
    .unwrap();
    let m32 = fit_legit(&data, ModelForm::standard(), &FitOptions::default()).unwrap();
    let r32 = ros_analysis(&m32, None, DfConvention::Residual).unwrap();
    let r64 = ros_analysis(&standard(&d), None, DfConvention::Residual).unwrap();
    assert_eq!(r32.region, r64.region);
    let b32: Vec<f32> = r32.lower_bound.into_iter().chain(r32.upper_bound).collect();
    assert_eq!(b32.len(), bounds(&r64).len());
    for (a, b) in b32.iter().zip(&bounds(&r64)) {
        assert!((*a as f64 - b).abs() < 1e-3);
    }
}
