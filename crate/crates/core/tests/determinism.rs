use pif_weno::harness::{output, run, Integrator, RunConfig};
use pif_weno::Execution;

fn profile(problem: &str, mesh: Vec<usize>, integrator: Integrator, exec: Execution) -> String {
    let c = RunConfig {
        problem: problem.into(),
        integrator,
        mesh,
        t_final: Some(0.05),
        exec,
        ..RunConfig::default()
    };
    let r = run(&c).unwrap();
    output::profile_csv(&r.problem.model, &r.state)
}

#[test]
fn repeat_runs_are_bit_identical() {
    for integrator in Integrator::ALL {
        let a = profile("lax-harten", vec![80], integrator, Execution::Parallel);
        let b = profile("lax-harten", vec![80], integrator, Execution::Parallel);
        assert_eq!(a, b, "{integrator}");
    }
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    for (problem, mesh) in [("shock-entropy", vec![200]), ("euler2d-smooth", vec![24])] {
        for integrator in Integrator::ALL {
            let a = profile(problem, mesh.clone(), integrator, Execution::Parallel);
            let b = profile(problem, mesh.clone(), integrator, Execution::Sequential);
            assert_eq!(a, b, "{problem} {integrator}");
        }
    }
}
