use jmatrix::{parse_csv, plot_script, run_sweep, verify, write_csv, FigurePreset, RowFlag, SweepMethod};
use jmatrix_core::CouplingConstants;

#[test]
fn every_preset_matches_its_geometry() {
    let expected = [
        ("fig1a", 0, 1.0, 0.4, 3.0),
        ("fig1b", 1, 1.5, 0.5, 3.0),
        ("fig1c", 2, 2.0, 0.5, 3.0),
        ("fig1d", 3, 2.5, 0.2, 3.0),
        ("fig2a", 0, 1.0, 0.5, 3.0),
        ("fig2b", 1, 1.1, 0.4, 3.0),
        ("fig2c", 2, 1.4, 0.3, 4.0),
        ("fig2d", 3, 1.5, 0.3, 4.0),
    ];
    for (p, (id, nu, lambda, alpha, ratio)) in FigurePreset::all().into_iter().zip(expected) {
        let c = p.config();
        assert_eq!(p.id(), id);
        assert_eq!(id.parse::<FigurePreset>().unwrap(), p);
        assert_eq!(c.spec.nu, nu);
        assert_eq!(c.params.lambda, lambda);
        assert_eq!(c.params.alpha, alpha);
        assert_eq!(c.params.cc, alpha / ratio);
        assert_eq!(
            (c.couplings.v_plus, c.couplings.v_minus, c.couplings.v_zero),
            (0.5, 0.3, -0.2)
        );
        assert_eq!((c.e_min, c.e_max, c.n_points), (0.01, 10.0, 400));
    }
}

#[test]
fn zero_coupling_sweep_is_flat() {
    for p in FigurePreset::all() {
        let mut c = p.config();
        c.couplings = CouplingConstants::new(0.0, 0.0, 0.0).unwrap();
        c.n_points = 40;
        let table = run_sweep(&c).unwrap();
        for r in &table.rows {
            assert_eq!(r.flag, RowFlag::Ok);
            assert!(r.tau_rel_unwrapped.unwrap().abs() < 1e-12, "{p} {r:?}");
            assert!(r.tau_nonrel_unwrapped.unwrap().abs() < 1e-12, "{p} {r:?}");
        }
    }
}

#[test]
fn rows_are_ordered_and_unwrapped() {
    let mut c = FigurePreset::Fig1a.config();
    c.n_points = 200;
    let table = run_sweep(&c).unwrap();
    assert_eq!(table.rows.len(), 200);
    assert_eq!(table.rows[0].energy, 0.01);
    assert_eq!(table.rows[199].energy, 10.0);
    for w in table.rows.windows(2) {
        assert!(w[1].energy > w[0].energy);
        let (a, b) = (w[0].tau_rel_unwrapped.unwrap(), w[1].tau_rel_unwrapped.unwrap());
        assert!((b - a).abs() < std::f64::consts::FRAC_PI_2);
    }
    for r in &table.rows {
        let d = r.tau_rel_unwrapped.unwrap() - r.tau_rel.unwrap();
        let m = d / std::f64::consts::PI;
        assert!((m - m.round()).abs() < 1e-12);
    }
}

#[test]
fn log_grid_spans_the_range() {
    let mut c = FigurePreset::Fig2a.config();
    c.log_grid = true;
    c.n_points = 5;
    let g = c.grid();
    assert_eq!(g.first(), Some(&0.01));
    assert_eq!(g.last(), Some(&10.0));
    for w in g.windows(2) {
        assert!((w[1] / w[0] - 10f64.powf(0.75)).abs() < 1e-12);
    }
}

#[test]
fn numeric_only_agrees_with_auto() {
    let mut auto = FigurePreset::Fig1c.config();
    auto.n_points = 30;
    let mut numeric = auto.clone();
    numeric.method = SweepMethod::NumericOnly;
    numeric.n_basis = Some(20);
    let (a, n) = (run_sweep(&auto).unwrap(), run_sweep(&numeric).unwrap());
    for (x, y) in a.rows.iter().zip(&n.rows) {
        assert!((x.tau_rel_unwrapped.unwrap() - y.tau_rel_unwrapped.unwrap()).abs() < 1e-9);
        assert!((x.tau_nonrel_unwrapped.unwrap() - y.tau_nonrel_unwrapped.unwrap()).abs() < 1e-9);
    }
}

#[test]
fn auto_on_rank_four_leaves_a_notice() {
    let mut c = FigurePreset::Fig1d.config();
    c.n_points = 4;
    let table = run_sweep(&c).unwrap();
    assert!(table.notices.iter().any(|n| n.contains("numeric route")));
    assert!(verify(&c).unwrap().is_none());
}

#[test]
fn one_row_table_gives_header_and_one_record() {
    let mut c = FigurePreset::Fig1b.config();
    c.n_points = 2;
    let mut table = run_sweep(&c).unwrap();
    table.rows.truncate(1);
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 2);
    assert_eq!(
        data[0],
        "energy_hartree,tau_rel_rad,tau_rel_unwrapped_rad,tau_nonrel_rad,tau_nonrel_unwrapped_rad,flag"
    );
    assert!(data[1].ends_with(",ok"));
}

#[test]
fn csv_round_trips_bit_for_bit() {
    let mut c = FigurePreset::Fig2b.config();
    c.n_points = 60;
    let mut table = run_sweep(&c).unwrap();
    // a gap row must survive as empty fields
    table.rows[3].tau_rel = None;
    table.rows[3].tau_rel_unwrapped = None;
    table.rows[3].flag = RowFlag::Singular;
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).unwrap();
    let back = parse_csv(buf.as_slice()).unwrap();
    assert_eq!(back.len(), table.rows.len());
    for (r, b) in table.rows.iter().zip(&back) {
        assert_eq!(r.energy.to_bits(), b.energy.to_bits());
        assert_eq!(r.tau_rel.map(f64::to_bits), b.tau_rel.map(f64::to_bits));
        assert_eq!(r.tau_rel_unwrapped.map(f64::to_bits), b.tau_rel_unwrapped.map(f64::to_bits));
        assert_eq!(r.tau_nonrel.map(f64::to_bits), b.tau_nonrel.map(f64::to_bits));
        assert_eq!(r.tau_nonrel_unwrapped.map(f64::to_bits), b.tau_nonrel_unwrapped.map(f64::to_bits));
        assert_eq!(r.flag, b.flag);
    }
    assert!(String::from_utf8(buf).unwrap().contains(",,"));
}

#[test]
fn plot_script_draws_solid_and_dotted_curves() {
    let mut c = FigurePreset::Fig1a.config();
    c.n_points = 3;
    let s = plot_script(&run_sweep(&c).unwrap(), "fig1a");
    assert!(s.contains("set output 'fig1a.png'"));
    assert!(s.contains("dt 1"));
    assert!(s.contains("dt 3"));
    assert!(s.contains("$data << EOD"));
}

#[test]
fn invalid_configs_are_rejected() {
    let mut c = FigurePreset::Fig1a.config();
    c.e_min = 0.0;
    assert!(run_sweep(&c).is_err());
    let mut c = FigurePreset::Fig1c.config();
    c.n_basis = Some(2);
    assert!(c.validate().is_err());
}
