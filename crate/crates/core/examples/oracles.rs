//! Brute-force oracles for the combinatorial lemmas.

use graph_bootstrap::oracles::{
    verify_2lminus3, verify_double_cover, verify_dext, verify_var_ext, verify_wsat_lower,
};
use graph_bootstrap::pattern::complete_pattern;

fn main() -> graph_bootstrap::Result<()> {
    let reports = vec![
        verify_wsat_lower(6, 4)?,
        verify_2lminus3(6)?,
        verify_double_cover(3, 6)?,
        verify_var_ext(&complete_pattern(4)?, 2)?,
        verify_dext(8, 4, 2000, 1)?,
    ];
    for r in reports {
        println!(
            "{:<13} {:>7} cases  {}  ({})",
            r.lemma,
            r.cases_checked,
            if r.passed() { "ok" } else { "COUNTEREXAMPLE" },
            r.parameter_space
        );
    }
    Ok(())
}
