//! Shared plumbing for the `ddp` binary: the output record schema, wall
//! clock budgets for long searches, and a threaded driver for exhaustive
//! counts.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use ddp_core::{count_ddp_subtree, CountOutcome, GroupTable, SearchMonitor};
use serde::Serialize;

/// Structural facts about a group, as reported by `group info`.
#[derive(Debug, Clone, Serialize)]
pub struct GroupInfo {
    pub abelian: bool,
    pub involutions: usize,
    pub real_elements: usize,
    pub center_order: usize,
    pub nilpotent: bool,
}

/// One emitted result. Every command produces one of these (enumerating
/// commands produce one per line); in JSON mode it is printed verbatim
/// with absent fields omitted, in text mode it is rendered field by field.
/// Counts are strings so that consumers with 64-bit integers never
/// truncate them.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Record {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub info: Option<GroupInfo>,
}

impl Record {
    pub fn new(command: &str) -> Self {
        Record {
            command: command.to_string(),
            ..Record::default()
        }
    }
}

/// A search monitor that aborts once a wall-clock deadline passes.
/// Without a deadline it never aborts.
pub struct DeadlineMonitor {
    deadline: Option<Instant>,
}

impl DeadlineMonitor {
    pub fn new(deadline: Option<Instant>) -> Self {
        DeadlineMonitor { deadline }
    }

    /// Deadline `budget` seconds from now.
    pub fn from_budget(budget: Option<f64>) -> Self {
        DeadlineMonitor::new(deadline_from_budget(budget))
    }
}

/// Translate a budget in seconds into an absolute deadline.
pub fn deadline_from_budget(budget: Option<f64>) -> Option<Instant> {
    budget.map(|secs| Instant::now() + Duration::from_secs_f64(secs.max(0.0)))
}

impl SearchMonitor for DeadlineMonitor {
    fn tick(&mut self, _nodes: u64) -> bool {
        self.deadline.is_none_or(|d| Instant::now() < d)
    }
}

/// Count all distinct-divisor orderings using a pool of worker threads.
///
/// The search tree is split into independent subtrees by the second
/// element of the ordering and workers pull subtrees from a shared queue,
/// so the exact total is deterministic regardless of scheduling. Each
/// worker honors the deadline; if any subtree is cut short the result is
/// reported as aborted with the partial sum. Workers get large stacks
/// because the search recurses once per group element.
pub fn count_ddp_parallel(
    g: &Arc<GroupTable>,
    threads: usize,
    deadline: Option<Instant>,
) -> CountOutcome {
    let n = g.order();
    if n == 1 {
        return CountOutcome::Exact(1);
    }
    let threads = threads.clamp(1, n - 1);
    let next = AtomicUsize::new(1);
    let tally = Mutex::new((0u128, true));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            let group = Arc::clone(g);
            let next = &next;
            let tally = &tally;
            std::thread::Builder::new()
                .stack_size(32 << 20)
                .spawn_scoped(scope, move || loop {
                    let second = next.fetch_add(1, Ordering::Relaxed);
                    if second >= group.order() {
                        break;
                    }
                    let mut monitor = DeadlineMonitor::new(deadline);
                    let outcome = count_ddp_subtree(&group, second, &mut monitor)
                        .expect("second element is always in range");
                    let mut locked = tally.lock().expect("no worker panics while counting");
                    locked.0 += outcome.total();
                    locked.1 &= outcome.is_exact();
                })
                .expect("worker threads can be spawned");
        }
    });
    let (sum, exact) = *tally.lock().expect("all workers have finished");
    if exact {
        CountOutcome::Exact(sum)
    } else {
        CountOutcome::Aborted { partial: sum }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ddp_core::{build_group, parse_descriptor};

    fn table(desc: &str) -> Arc<GroupTable> {
        Arc::new(build_group(&parse_descriptor(desc).unwrap()).unwrap())
    }

    #[test]
    fn parallel_count_matches_known_values() {
        assert_eq!(
            count_ddp_parallel(&table("Z10"), 4, None),
            CountOutcome::Exact(288)
        );
        assert_eq!(
            count_ddp_parallel(&table("D5"), 3, None),
            CountOutcome::Exact(320)
        );
        assert_eq!(
            count_ddp_parallel(&table("Z1"), 2, None),
            CountOutcome::Exact(1)
        );
    }

    #[test]
    fn expired_deadline_aborts() {
        // Z14's whole search tree crosses the poll interval, so a
        // single-threaded monitored count is guaranteed to notice the
        // expired deadline.
        let past = Instant::now() - Duration::from_secs(1);
        let mut monitor = DeadlineMonitor::new(Some(past));
        let outcome = ddp_core::count_ddp_monitored(&table("Z14"), &mut monitor);
        match outcome {
            CountOutcome::Aborted { partial } => assert!(partial < 89328),
            CountOutcome::Exact(_) => panic!("an expired deadline must abort the count"),
        }
    }

    #[test]
    fn parallel_count_reports_partial_results_as_inexact() {
        // every second-element subtree of Z18 is far larger than one poll
        // interval, so each worker aborts shortly after its first poll
        let past = Instant::now() - Duration::from_secs(1);
        match count_ddp_parallel(&table("Z18"), 4, Some(past)) {
            CountOutcome::Aborted { .. } => {}
            CountOutcome::Exact(c) => panic!("clipped count of {c} claimed to be exact"),
        }
    }

    #[test]
    fn record_serialization_omits_absent_fields() {
        let mut record = Record::new("count");
        record.group = Some("Z10".to_string());
        record.count = Some("288".to_string());
        record.exact = Some(true);
        let json = serde_json::to_string(&record).unwrap();
        assert_eq!(
            json,
            r#"{"command":"count","group":"Z10","count":"288","exact":true}"#
        );
    }
}
