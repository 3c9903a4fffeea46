//! Basis-labelled graded vector spaces.

use std::collections::BTreeMap;

/// Finite-dimensional graded vector space with an ordered, labelled basis in
/// each degree. Labels are opaque strings; all computation happens on the
/// coordinate side, labels exist for reports and debugging.
#[derive(Clone, Debug, Default)]
pub struct GradedVectorSpace {
    components: BTreeMap<i64, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_component(&mut self, degree: i64, labels: Vec<String>) {
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            assert!(seen.insert(l.clone()), "duplicate basis label {l:?}");
        }
        if labels.is_empty() {
            self.components.remove(&degree);
        } else {
            self.components.insert(degree, labels);
        }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.components.get(&degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.components.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.components.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }
}
