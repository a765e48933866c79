//! Resource limits and branch tracing shared by the algorithms.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Caps on the fixed-point loops and on decomposition work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Gröbner basis computations allowed inside one prime decomposition.
    pub max_gb: usize,
    /// Iterations of the star-closure chain.
    pub star_cap: usize,
    /// Iterations of the stable-kernel chain.
    pub kernel_cap: usize,
    /// Worklist expansions in the prime-enumeration algorithms.
    pub max_expansions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_gb: 10_000,
            star_cap: 256,
            kernel_cap: 64,
            max_expansions: 10_000,
        }
    }
}

/// Per-run state: limits, a running tally of Gröbner work, and an optional
/// trace of branch decisions.
#[derive(Debug, Default)]
pub struct Session {
    pub limits: Limits,
    gb_total: AtomicUsize,
    trace: Option<Mutex<Vec<String>>>,
}

impl Session {
    pub fn new(limits: Limits) -> Self {
        Session {
            limits,
            gb_total: AtomicUsize::new(0),
            trace: None,
        }
    }

    /// Same, recording trace lines.
    pub fn traced(limits: Limits) -> Self {
        Session {
            limits,
            gb_total: AtomicUsize::new(0),
            trace: Some(Mutex::new(Vec::new())),
        }
    }

    pub fn is_tracing(&self) -> bool {
        self.trace.is_some()
    }

    /// Records a branch decision; the message is only built when tracing.
    pub fn trace(&self, msg: impl FnOnce() -> String) {
        if let Some(t) = &self.trace {
            t.lock().unwrap().push(format!("# {}", msg()));
        }
    }

    pub fn take_trace(&self) -> Vec<String> {
        match &self.trace {
            Some(t) => std::mem::take(&mut *t.lock().unwrap()),
            None => Vec::new(),
        }
    }

    pub(crate) fn record_gb(&self, n: usize) {
        self.gb_total.fetch_add(n, Ordering::Relaxed);
    }

    /// Gröbner computations charged so far.
    pub fn gb_total(&self) -> usize {
        self.gb_total.load(Ordering::Relaxed)
    }

    pub(crate) fn cap(&self, what: &str, limit: usize) -> Error {
        Error::ResourceCap(format!("{what} exceeded the limit of {limit}"))
    }

    pub(crate) fn check_expansions(&self, n: usize) -> Result<()> {
        if n > self.limits.max_expansions {
            Err(self.cap("worklist expansions", self.limits.max_expansions))
        } else {
            Ok(())
        }
    }
}
