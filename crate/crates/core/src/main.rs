use std::io;

use torimon::cli::{run, BUDGET_ENV};

fn main() {
    let budget = std::env::var(BUDGET_ENV).ok();
    let code = run(std::env::args_os(), budget.as_deref(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
