use std::process::ExitCode;

use rayon::prelude::*;
use wdparam::acceptance::{run, Bounds, CRITERIA};

const SEED: u64 = 20240611;

fn main() -> ExitCode {
    let ids: Vec<u8> = CRITERIA.iter().map(|c| c.0).collect();
    assert_eq!(ids, (1..=12).collect::<Vec<_>>());
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let selected: Vec<u8> = ids.into_iter().filter(|id| only.is_empty() || only.contains(id)).collect();
    let bounds = Bounds::default();
    let results: Vec<_> = selected.par_iter().map(|&id| run(id, SEED, &bounds)).collect();
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
