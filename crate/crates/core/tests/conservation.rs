mod common;

use proptest::prelude::*;

use pif_weno::grid::{fill_ghosts, Axis, BoundarySpec, Grid, Grid1D, Grid2D, State};
use pif_weno::pif::{conservative_update, reconstruct_interface_fluxes, ReconstructOptions, TimeAveragedFlux};
use pif_weno::systems::{Burgers, Euler1D, Euler2D, EulerParams, SystemModel};
use pif_weno::weno::{WenoMode, WenoParams};
use pif_weno::Execution;

fn relative_drift(before: &State, after: &State) -> f64 {
    let (a, b, s) = (
        before.field.interior_sum(),
        after.field.interior_sum(),
        before.field.interior_abs_sum(),
    );
    (0..a.len()).map(|k| (a[k] - b[k]).abs() / s[k]).fold(0.0, f64::max)
}

/// Update `q` with `flux` replaced by periodic noise and report the drift.
fn drift_with_noise<M: SystemModel>(model: &M, q: &State, noise: &[f64], mode: WenoMode) -> f64 {
    let mut flux = TimeAveragedFlux::instantaneous(model, q, Execution::Sequential).unwrap();
    let mut k = 0;
    let mut fields = vec![&mut flux.f];
    if let Some(g) = flux.g.as_mut() {
        fields.push(g);
    }
    for f in fields {
        for v in f.data_mut() {
            *v = noise[k % noise.len()];
            k += 1;
        }
        f.wrap_periodic(Axis::X);
        if f.ny() > 1 {
            f.wrap_periodic(Axis::Y);
        }
    }
    let weno = WenoParams { mode, ..WenoParams::default() };
    let fl = reconstruct_interface_fluxes(model, q, &flux, &ReconstructOptions::characteristic(weno)).unwrap();
    relative_drift(q, &conservative_update(q, &fl, 0.01, Execution::Sequential))
}

fn euler1d() -> Euler1D {
    Euler1D::new(EulerParams::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn burgers_conserves_with_any_flux(
        seed in any::<u64>(),
        n in 12usize..40,
        noise in prop::collection::vec(-50.0f64..50.0, 1..64),
        linear in any::<bool>(),
    ) {
        let mut rng = common::rng(seed);
        let q = common::smooth_profile(&mut rng, n, 0.5, 1.0);
        let g = Grid::One(Grid1D::new(0.0, 1.0, n).unwrap());
        let mut s = State::new(g, 1, 0.0);
        for (i, v) in q.iter().enumerate() {
            s.field.set(i as isize, 0, &[*v]);
        }
        fill_ghosts(&mut s, &BoundarySpec::periodic(), 0.0).unwrap();
        let mode = if linear { WenoMode::Linear } else { WenoMode::Nonlinear };
        prop_assert!(drift_with_noise(&Burgers, &s, &noise, mode) <= 1e-12);
    }

    #[test]
    fn euler1d_conserves_with_any_flux(
        seed in any::<u64>(),
        noise in prop::collection::vec(-10.0f64..10.0, 1..64),
    ) {
        let mut rng = common::rng(seed);
        let n = 24;
        let (rho, u, p) = (
            common::smooth_profile(&mut rng, n, 1.0, 0.5),
            common::smooth_profile(&mut rng, n, 0.0, 1.0),
            common::smooth_profile(&mut rng, n, 1.0, 0.5),
        );
        let e = euler1d();
        let g = Grid::One(Grid1D::new(0.0, 1.0, n).unwrap());
        let mut s = State::new(g, 3, 0.0);
        for i in 0..n {
            s.field.set(i as isize, 0, &e.conserved(rho[i], u[i], p[i])[..3]);
        }
        fill_ghosts(&mut s, &BoundarySpec::periodic(), 0.0).unwrap();
        prop_assert!(drift_with_noise(&e, &s, &noise, WenoMode::Nonlinear) <= 1e-12);
    }

    #[test]
    fn euler2d_conserves_with_any_flux(
        seed in any::<u64>(),
        noise in prop::collection::vec(-10.0f64..10.0, 1..64),
    ) {
        let mut rng = common::rng(seed);
        let (nx, ny) = (14, 12);
        let rho = common::smooth_profile(&mut rng, nx * ny, 1.0, 0.5);
        let e = Euler2D::new(EulerParams::default()).unwrap();
        let g = Grid::Two(Grid2D::new(0.0, 1.0, nx, 0.0, 1.0, ny).unwrap());
        let mut s = State::new(g, 4, 0.0);
        for j in 0..ny {
            for i in 0..nx {
                s.field.set(i as isize, j as isize, &e.conserved(rho[j * nx + i], 0.3, -0.2, 1.0));
            }
        }
        fill_ghosts(&mut s, &BoundarySpec::periodic(), 0.0).unwrap();
        prop_assert!(drift_with_noise(&e, &s, &noise, WenoMode::Nonlinear) <= 1e-12);
    }
}
