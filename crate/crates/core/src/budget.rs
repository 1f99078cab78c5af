use std::time::{Duration, Instant};

/// Resource budget for backtrack searches and the simplex solver.
///
/// A search that exhausts its budget reports `Error::BudgetExceeded`
/// (or a dedicated tri-state), never a truncated verdict.
#[derive(Debug, Clone)]
pub struct Budget {
    max_steps: Option<u64>,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_steps: None, deadline: None }
    }

    /// Limit by an abstract step count (search nodes, simplex pivots).
    pub fn steps(max_steps: u64) -> Self {
        Budget { max_steps: Some(max_steps), deadline: None }
    }

    /// Limit by wall-clock time from now. `0` means unlimited.
    pub fn seconds(secs: u64) -> Self {
        if secs == 0 {
            return Budget::unlimited();
        }
        Budget {
            max_steps: None,
            deadline: Some(Instant::now() + Duration::from_secs(secs)),
        }
    }

    pub fn with_deadline(mut self, secs: u64) -> Self {
        if secs > 0 {
            self.deadline = Some(Instant::now() + Duration::from_secs(secs));
        }
        self
    }

    /// Start a metered run against this budget.
    pub fn start(&self) -> BudgetMeter {
        BudgetMeter { budget: self.clone(), steps: 0 }
    }

    /// The configured step cap, if any.
    pub fn step_limit(&self) -> Option<u64> {
        self.max_steps
    }

    /// A copy of this budget whose step cap falls back to `cap` when none
    /// was configured; the deadline is kept.
    pub fn with_default_step_cap(&self, cap: u64) -> Budget {
        Budget {
            max_steps: Some(self.max_steps.unwrap_or(cap)),
            deadline: self.deadline,
        }
    }
}

/// Mutable counter tracking consumption of a [`Budget`].
#[derive(Debug)]
pub struct BudgetMeter {
    budget: Budget,
    steps: u64,
}

impl BudgetMeter {
    /// Record one step; returns false once the budget is exhausted.
    pub fn tick(&mut self) -> bool {
        self.steps += 1;
        if let Some(max) = self.budget.max_steps {
            if self.steps > max {
                return false;
            }
        }
        if let Some(deadline) = self.budget.deadline {
            // Poll the clock every 16 steps; steps range from backtrack
            // nodes (fast) to simplex pivots (slow).
            if self.steps % 16 == 0 && Instant::now() > deadline {
                return false;
            }
        }
        true
    }

    pub fn steps_used(&self) -> u64 {
        self.steps
    }
}
