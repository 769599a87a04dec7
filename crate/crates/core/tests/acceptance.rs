//! Acceptance run: the eight end-to-end criteria at full size, one
//! `PASS`/`FAIL` line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pcf_core::oracle::DEFAULT_NODE_BUDGET;
use pcf_core::suites::{self, SuiteReport};

const SEED: u64 = 42;

struct Criterion {
    label: &'static str,
    limit: Duration,
    run: fn() -> SuiteReport,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            label: "1 C5 exclusion (uniform {1..4} unsat, 10000 random 4-lists sat)",
            limit: Duration::from_secs(30),
            run: || suites::c5(10_000, SEED, DEFAULT_NODE_BUDGET),
        },
        Criterion {
            label: "2 corpus n<=8, 200 (degree+2)-lists each, oracle agreement n<=6",
            limit: Duration::from_secs(600),
            run: || suites::corpus(8, 200, SEED, 6, DEFAULT_NODE_BUDGET),
        },
        Criterion {
            label: "3 degree+1 gadgets on K2 and P3 unsat",
            limit: Duration::from_secs(120),
            run: || suites::gadget(DEFAULT_NODE_BUDGET),
        },
        Criterion {
            label: "4 theta graphs (1,4,4) (1,4,7) (1,7,7) unsat",
            limit: Duration::from_secs(300),
            run: || suites::theta(DEFAULT_NODE_BUDGET),
        },
        Criterion {
            label: "5 cycles with uniform {1,2,3}: sat iff 3 | length",
            limit: Duration::from_secs(10),
            run: || suites::mod3(DEFAULT_NODE_BUDGET),
        },
        Criterion {
            label: "6 precolored paths s=3..7, 1000 random lists each",
            limit: Duration::from_secs(60),
            run: || suites::paths(7, 1000, SEED),
        },
        Criterion {
            label: "7 good ear or ear-chain for every 2-connected graph n=4..9 and anchor",
            limit: Duration::from_secs(300),
            run: || suites::ears(4, 9),
        },
        Criterion {
            label: "8 oracle vs plain enumeration, connected n<=5, 3-lists over {1..4}",
            limit: Duration::from_secs(600),
            run: || suites::oracle_consistency(5, DEFAULT_NODE_BUDGET),
        },
    ];
    let mut all_ok = true;
    for c in &criteria {
        let start = Instant::now();
        let rep = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let ok = rep.passed && in_time;
        all_ok &= ok;
        println!(
            "{} criterion {}: checked {}, failures {}, {:.1}s (limit {}s){}",
            if ok { "PASS" } else { "FAIL" },
            c.label,
            rep.checked,
            rep.failure_count,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            if in_time { "" } else { ", over time limit" },
        );
        for f in &rep.failures {
            println!("    {f}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
