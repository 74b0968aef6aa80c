//! Print convergence tables for the smooth catalog problems.
//!
//! `cargo run --release --example convergence -- [burgers|euler2d] [t_final]`

use pif_weno::harness::{converge, Integrator, RunConfig};

fn print(label: &str, config: &RunConfig, meshes: &[usize]) {
    match converge(config, meshes) {
        Ok(rows) => {
            println!("{label}");
            for r in rows {
                let order = r.order.map_or("---".to_string(), |o| format!("{o:.3}"));
                println!("  {:>5}  {:.4e}  {order}", r.mesh, r.error);
            }
        }
        Err(e) => println!("{label}: {e}"),
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let which = args.first().map(String::as_str).unwrap_or("burgers");
    let t_final = args.get(1).and_then(|s| s.parse().ok());
    match which {
        "burgers" => {
            let meshes = [10, 20, 40, 80, 160, 320];
            for (integrator, cfls) in [(Integrator::PifTaylor, [0.3, 0.5]), (Integrator::PifRk4, [0.4, 0.8])] {
                for cfl in cfls {
                    let config = RunConfig { integrator, cfl, ..RunConfig::default() };
                    print(&format!("burgers-smooth {integrator} cfl={cfl}"), &config, &meshes);
                }
            }
        }
        _ => {
            for integrator in Integrator::ALL {
                let config = RunConfig {
                    problem: "euler2d-smooth".into(),
                    integrator,
                    cfl: 0.4,
                    t_final,
                    ..RunConfig::default()
                };
                print(&format!("euler2d-smooth {integrator}"), &config, &[50, 100]);
            }
        }
    }
}
