//! Block-parallel search driver.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use crate::error::{CliError, CliResult};

pub const THREADS_VAR: &str = "FGAP_THREADS";

/// Worker count from `FGAP_THREADS`, defaulting to the available cores.
pub fn thread_count() -> CliResult<usize> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => parse_threads(&v),
        Err(std::env::VarError::NotPresent) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
        Err(e) => Err(CliError::input(format!("{THREADS_VAR}: {e}"))),
    }
}

pub fn parse_threads(v: &str) -> CliResult<usize> {
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::input(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
    }
}

/// Applies `f` to every item on up to `threads` workers. Results come back
/// in item order; the first error in item order wins.
pub fn map_ordered<I, T, E, F>(items: &[I], threads: usize, f: F) -> Result<Vec<T>, E>
where
    I: Sync,
    T: Send,
    E: Send,
    F: Fn(&I) -> Result<T, E> + Sync,
{
    let workers = threads.clamp(1, items.len().max(1));
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<T, E>>>> = items.iter().map(|_| Mutex::new(None)).collect();
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *slots[i].lock().expect("slot") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot").expect("every item ran"))
        .collect()
}
