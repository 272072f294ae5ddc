//! Acceptance criteria: each line reports the check, its detail and the
//! wall time against the allowed budget. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mplab_core::verify::{self, Check};

const SEED: u64 = 0;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "moment polytope table", budget: secs(1), run: verify::polytope_table },
        Criterion { id: 2, title: "two-route equality", budget: secs(5), run: verify::route_equality },
        Criterion {
            id: 3,
            title: "Clebsch-Gordan completeness",
            budget: secs(1),
            run: verify::clebsch_gordan_completeness,
        },
        Criterion {
            id: 4,
            title: "highest weight oracle",
            budget: secs(30),
            run: || verify::highest_weight_oracle(SEED),
        },
        Criterion {
            id: 5,
            title: "highest weight identities",
            budget: secs(10),
            run: verify::highest_weight_identities,
        },
        Criterion {
            id: 6,
            title: "Lagrangian fixed sets",
            budget: secs(5),
            run: || verify::lagrangian_fixed_sets(SEED),
        },
        Criterion { id: 7, title: "coadjoint fixed set", budget: secs(5), run: || verify::coadjoint_fixed_sets(SEED) },
        Criterion {
            id: 8,
            title: "numeric/exact agreement",
            budget: secs(30),
            run: || verify::numeric_exact_agreement(SEED),
        },
        Criterion { id: 9, title: "gradient identity", budget: secs(10), run: || verify::gradient_identity(SEED) },
        Criterion { id: 10, title: "catalog finiteness", budget: secs(1), run: verify::catalog_finiteness },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let check = (c.run)();
        let elapsed = start.elapsed();
        let ok = check.passed && elapsed <= c.budget;
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {}: {} ({}; {:.3}s of {}s)",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            check.detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
