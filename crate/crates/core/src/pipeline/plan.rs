/// Which variables each projection eliminates, for curves (`c = 1`).
///
/// Variables are 0-based: projection `i` (1-based, `1..n`) keeps `X_1` and
/// `X_{i+1}`, i.e. indices `0` and `i`, and eliminates the rest. The first
/// projection eliminates `{2, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionPlan {
    nvars: usize,
    sets: Vec<Vec<usize>>,
}

impl ProjectionPlan {
    pub fn curves(nvars: usize) -> Self {
        assert!(nvars >= 2, "a curve needs at least two variables");
        let sets = (1..nvars)
            .map(|i| (1..nvars).filter(|&v| v != i).collect())
            .collect();
        ProjectionPlan { nvars, sets }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of projections, `n - 1`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Eliminated variables of projection `k` (0-based).
    pub fn eliminated(&self, k: usize) -> &[usize] {
        &self.sets[k]
    }

    /// The two kept variables of projection `k` (0-based).
    pub fn kept(&self, k: usize) -> [usize; 2] {
        [0, k + 1]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }
}
