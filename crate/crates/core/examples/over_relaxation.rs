//! Over-relaxation s > 1 on the Burgers step: the run completes in warn mode and the
//! broken bounds are tallied.

use std::collections::BTreeMap;
use std::sync::Arc;

use d1q2::harness::{run_case, StudyConfig};
use d1q2::model::{Burgers, InitialCondition};

fn main() -> d1q2::Result<()> {
    let mut cfg = StudyConfig::new(Arc::new(Burgers), InitialCondition::default_step());
    cfg.unsafe_s = true;
    for s in [1.0, 1.5, 1.9] {
        let case = run_case(&cfg, s, 512, &[])?;
        let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for v in &case.violations {
            let entry = tally.entry(v.quantity.as_str()).or_insert((0, v.step));
            entry.0 += 1;
        }
        println!("s={s}: {} violations", case.violations.len());
        for (quantity, (count, first)) in tally {
            println!("  {quantity}: {count} (first at step {first})");
        }
    }
    Ok(())
}
