//! Verification report plumbing: per-case JSON records with wall times,
//! and a small scoped-thread fan-out for independent cases.

use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

#[derive(Serialize, Clone)]
pub struct Case {
    #[serde(flatten)]
    pub detail: serde_json::Value,
    pub pass: bool,
    pub wall_ms: u64,
}

impl Case {
    pub fn new(detail: serde_json::Value, pass: bool) -> Self {
        Case {
            detail,
            pass,
            wall_ms: 0,
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub check: &'static str,
    pub pass: bool,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(check: &'static str, cases: Vec<Case>) -> Self {
        let pass = cases.iter().all(|c| c.pass);
        Report { check, pass, cases }
    }

    pub fn to_json(&self) -> String {
        format!("{}\n", serde_json::to_string_pretty(self).expect("json"))
    }
}

/// Evaluate one case per input, optionally fanned across threads. Results
/// come back in input order so output stays deterministic.
pub fn run_parallel<T, F>(jobs: usize, inputs: Vec<T>, f: F) -> Vec<Case>
where
    T: Sync,
    F: Fn(&T) -> Case + Sync,
{
    let slots: Mutex<Vec<Option<Case>>> = Mutex::new(vec![None; inputs.len()]);
    let next: Mutex<usize> = Mutex::new(0);
    let workers = jobs.max(1).min(inputs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = {
                    let mut guard = next.lock().expect("queue lock");
                    let idx = *guard;
                    if idx >= inputs.len() {
                        return;
                    }
                    *guard += 1;
                    idx
                };
                let started = Instant::now();
                let mut case = f(&inputs[idx]);
                case.wall_ms = started.elapsed().as_millis() as u64;
                slots.lock().expect("slot lock")[idx] = Some(case);
            });
        }
    });
    slots
        .into_inner()
        .expect("all workers done")
        .into_iter()
        .map(|c| c.expect("every case ran"))
        .collect()
}
