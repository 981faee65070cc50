use robin_thermo::grand_canonical::EnsembleSpec;
use robin_thermo::spectrum::{WallKind, WallSpec};
use robin_thermo::sweep_io::{
    from_json, rows_from_csv, run_sweep, table1_harness_with, to_csv, to_json, BetaGrid, Ensemble,
    Spacing, SweepSpec,
};
use robin_thermo::Error;

fn wall(field: f64) -> WallSpec {
    WallSpec::new(WallKind::RobinAttractive, field).unwrap()
}

fn small_spec(ensemble: Ensemble) -> SweepSpec {
    let mut spec = SweepSpec::new(wall(1e-3), ensemble);
    spec.beta_grid = BetaGrid {
        min: 0.05,
        max: 5.0,
        points: 60,
        spacing: Spacing::LogInT,
    };
    spec
}

fn same_bits(a: Option<f64>, b: Option<f64>) -> bool {
    a.map(f64::to_bits) == b.map(f64::to_bits)
}

#[test]
fn json_round_trip_is_bit_exact() {
    for ens in [
        Ensemble::Canonical,
        Ensemble::Grand(EnsembleSpec::fermions(3).unwrap()),
        Ensemble::Grand(EnsembleSpec::bosons(50).unwrap()),
    ] {
        let r = run_sweep(&small_spec(ens)).unwrap();
        let back = from_json(&to_json(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        for (a, b) in r.rows.iter().zip(&back.rows) {
            assert_eq!(a.heat_capacity.to_bits(), b.heat_capacity.to_bits());
            assert_eq!(a.mean_energy.to_bits(), b.mean_energy.to_bits());
        }
    }
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let r = run_sweep(&small_spec(Ensemble::Grand(EnsembleSpec::bosons(50).unwrap()))).unwrap();
    let csv = to_csv(&r).unwrap();
    assert!(csv.starts_with("# robin-thermo sweep\n# spec: {"));
    assert!(csv.contains("\nbeta_inv,beta,mean_energy,heat_capacity,mu,n0,t_over_tcr\n"));
    let from_csv = rows_from_csv(&csv).unwrap();
    let from_json = from_json(&to_json(&r).unwrap()).unwrap().rows;
    assert_eq!(from_csv.len(), from_json.len());
    for (a, b) in from_csv.iter().zip(&from_json) {
        assert!(same_bits(Some(a.beta_inv), Some(b.beta_inv)));
        assert!(same_bits(Some(a.mean_energy), Some(b.mean_energy)));
        assert!(same_bits(Some(a.heat_capacity), Some(b.heat_capacity)));
        assert!(same_bits(a.mu, b.mu) && same_bits(a.n0, b.n0) && same_bits(a.t_over_tcr, b.t_over_tcr));
    }
}

#[test]
fn canonical_csv_has_only_the_base_columns() {
    let r = run_sweep(&small_spec(Ensemble::Canonical)).unwrap();
    let csv = to_csv(&r).unwrap();
    assert!(csv.contains("\nbeta_inv,beta,mean_energy,heat_capacity\n"));
    let rows = rows_from_csv(&csv).unwrap();
    assert!(rows.iter().all(|r| r.mu.is_none() && r.n0.is_none()));
}

#[test]
fn sweeps_are_deterministic() {
    let spec = small_spec(Ensemble::Grand(EnsembleSpec::fermions(5).unwrap()));
    let a = to_json(&run_sweep(&spec).unwrap()).unwrap();
    let b = to_json(&run_sweep(&spec).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rows_follow_the_grid() {
    let r = run_sweep(&small_spec(Ensemble::Canonical)).unwrap();
    assert_eq!(r.rows.len(), 60);
    assert!(r.rows.windows(2).all(|w| w[1].beta_inv > w[0].beta_inv));
    assert_eq!(r.rows[0].beta_inv, 0.05);
    assert_eq!(r.rows[59].beta_inv, 5.0);
}

#[test]
fn two_point_grid_has_no_extremum() {
    let mut spec = small_spec(Ensemble::Canonical);
    spec.beta_grid.points = 2;
    let r = run_sweep(&spec).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert!(r.extrema.max.is_none() && r.extrema.min.is_none());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn canonical_example_peak() {
    let mut spec = SweepSpec::new(wall(1e-3), Ensemble::Canonical);
    spec.beta_grid.max = 20.0;
    let m = run_sweep(&spec).unwrap().extrema.max.unwrap();
    assert!((m.beta_inv / 0.2504 - 1.0).abs() < 0.01 && (m.c / 7.815 - 1.0).abs() < 0.01, "{m:?}");
}

#[test]
fn normalized_boson_grid() {
    let mut spec = SweepSpec::new(wall(1e-7), Ensemble::Grand(EnsembleSpec::bosons(100_000).unwrap()));
    spec.normalize_by_tcr = true;
    spec.beta_grid = BetaGrid {
        min: 0.1,
        max: 3.0,
        points: 200,
        spacing: Spacing::LogInT,
    };
    let r = run_sweep(&spec).unwrap();
    let cr = r.condensate.unwrap();
    for (row, x) in r.rows.iter().zip(spec.beta_grid.temperatures()) {
        assert!((row.t_over_tcr.unwrap() / x - 1.0).abs() < 1e-14);
        assert!((row.beta_inv / (x * cr.t_cr) - 1.0).abs() < 1e-14);
    }
    // extrema stay in absolute temperature
    let m = r.extrema.max.unwrap();
    assert!((m.beta_inv / 0.4513 - 1.0).abs() < 0.015 && (m.c / 14.828 - 1.0).abs() < 0.015, "{m:?}");
}

#[test]
fn invalid_specs_are_rejected() {
    let mut spec = small_spec(Ensemble::Grand(EnsembleSpec::fermions(2).unwrap()));
    spec.normalize_by_tcr = true;
    assert!(matches!(run_sweep(&spec), Err(Error::Spec(_))));
    let mut spec = small_spec(Ensemble::Canonical);
    spec.beta_grid.min = 10.0;
    assert!(matches!(run_sweep(&spec), Err(Error::Spec(_))));
    spec.beta_grid.min = 0.1;
    spec.beta_grid.points = 1;
    assert_eq!(run_sweep(&spec).unwrap_err().exit_code(), 2);
}

#[test]
fn harness_reports_are_byte_identical() {
    let pick = |c: &robin_thermo::sweep_io::table1::CellSpec| c.field == 1e-4;
    let a = table1_harness_with(pick).unwrap();
    let b = table1_harness_with(pick).unwrap();
    assert_eq!(a.cells.len(), 11);
    assert_eq!(a.render(), b.render());
    assert!(a.passed(), "{}", a.render());
}
