//! Small numeric helpers shared across modules.

/// Kahan compensated accumulator; keeps large reductions order-independent
/// to near machine precision.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, term: f64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(self) -> f64 {
        self.sum
    }
}

/// Binomial coefficient as f64; exact for the small orders used here.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..k.min(n - k) {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}
