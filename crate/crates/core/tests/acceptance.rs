use std::process::ExitCode;

use fuss_deform::verify::{self, VerifyConfig};

fn main() -> ExitCode {
    let outcomes = verify::run_all(&VerifyConfig::default());
    for outcome in &outcomes {
        println!("{outcome}");
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("C{}", o.id))
        .collect();
    println!(
        "{} of {} criteria passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    if outcomes.len() != 11 || !failed.is_empty() {
        println!("failing: {}", failed.join(", "));
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
