use serde::Serialize;

/// A base point with its reverse iterates `T̂⁰ = T < T̂¹ < … < T̂ᵏ`, where
/// `φ₁(T̂ʳ) = T̂ʳ⁻¹`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTower {
    pub base: f64,
    pub levels: Vec<f64>,
}

impl IterationTower {
    pub fn k(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn top(&self) -> f64 {
        *self.levels.last().expect("tower has at least its base")
    }

    pub fn level(&self, r: usize) -> f64 {
        self.levels[r]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[0] < w[1])
    }
}

/// The reverse-iterated segment `[T̂ʳ, (T+g)̂ʳ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub r: usize,
    pub lo: f64,
    pub hi: f64,
    pub g: f64,
}

impl Segment {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    /// `self` lies entirely to the left of `other`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.hi < other.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complementarity {
    #[serde(rename = "T")]
    pub t: f64,
    pub phi1: f64,
    pub prime_count: u64,
    /// `T − φ₁(T)`
    pub delta: f64,
    /// `(1 − c) π(T)`
    pub target: f64,
    pub ratio: f64,
}
