//! Problem instances: seeded generators, graph extraction, exhaustive oracle
//! and the JSON instance format.

mod generate;
mod instance;
mod io;
mod oracle;

pub use generate::{gen_mvc, gen_portfolio, gen_portfolio_data, mvc_qubo, PortfolioData};
pub use instance::{instance_graph, GraphInstance, ProblemKind, QuboInstance};
pub use io::{load_instance, parse_instance, save_instance, to_json};
pub use oracle::{brute_force, OracleResult, MAX_ORACLE_VARIABLES};
