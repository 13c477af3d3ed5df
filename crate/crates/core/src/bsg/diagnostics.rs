use std::sync::Mutex;

/// Estimator-call log, one line `op=<name> samples=<t> delta=<δ>` per call.
#[derive(Debug, Default)]
pub struct Diagnostics {
    lines: Mutex<Vec<String>>,
}

impl Diagnostics {
    #[must_use]
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, op: &str, samples: u64, delta: f64) {
        let line = format!("op={op} samples={samples} delta={delta}");
        self.lines.lock().expect("diagnostics lock").push(line);
    }

    #[must_use]
    pub fn lines(&self) -> Vec<String> {
        self.lines.lock().expect("diagnostics lock").clone()
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.lines.lock().expect("diagnostics lock").len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[must_use]
    pub fn render(&self) -> String {
        let mut s = self.lines().join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}

pub(crate) fn record(diag: Option<&Diagnostics>, op: &str, samples: u64, delta: f64) {
    if let Some(d) = diag {
        d.record(op, samples, delta);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let d = Diagnostics::new();
        d.record("edge", 64, 0.01);
        assert_eq!(d.render(), "op=edge samples=64 delta=0.01\n");
    }
}
