//! Multigradings: one integer weight vector per variable.

/// Assigns each ring variable a weight in Z^g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    /// `weights[var]` has length `g`, the number of grading coordinates.
    pub weights: Vec<Vec<i64>>,
}

impl Grading {
    /// The standard grading: every variable has weight (1).
    pub fn total_degree(nvars: usize) -> Grading {
        Grading { weights: vec![vec![1]; nvars] }
    }

    pub fn dim(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|w| w.len() == self.dim())
    }
}

/// Result of asking for the common multidegree of a polynomial's terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiDeg {
    /// The zero polynomial is homogeneous of every degree.
    ZeroPoly,
    Homogeneous(Vec<i64>),
    Inhomogeneous,
}
