//! Identity reports with witnesses.

use std::fmt;

use rayon::prelude::*;

use crate::exact::{is_zero_vec, Scalar, Vector};

/// One violated instance of a named identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub identity: String,
    /// Zero-based basis indices of the arguments.
    pub tuple: Vec<usize>,
    /// Left-hand side minus right-hand side at that tuple.
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    failures: Vec<Failure>,
    /// Failing-instance counts per identity, in first-seen order.
    counts: Vec<(String, usize)>,
    total: usize,
    cap: usize,
}

impl IdentityReport {
    pub fn new(cap: usize) -> Self {
        IdentityReport {
            failures: Vec::new(),
            counts: Vec::new(),
            total: 0,
            cap,
        }
    }

    pub fn ok(&self) -> bool {
        self.total == 0
    }

    /// Recorded failures (at most the configured cap).
    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    /// Number of failing instances, including ones beyond the cap.
    pub fn failure_count(&self) -> usize {
        self.total
    }

    /// Whether `identity` failed anywhere, recorded or not.
    pub fn failed(&self, identity: &str) -> bool {
        self.failure_count_of(identity) > 0
    }

    pub fn failure_count_of(&self, identity: &str) -> usize {
        self.counts
            .iter()
            .find(|(name, _)| name == identity)
            .map_or(0, |(_, n)| *n)
    }

    /// Every failing identity name, in first-seen order, whether or not its
    /// witnesses made it under the cap.
    pub fn failing_identities(&self) -> Vec<&str> {
        self.counts.iter().map(|(name, _)| name.as_str()).collect()
    }

    fn count(&mut self, identity: &str, n: usize) {
        match self.counts.iter_mut().find(|(name, _)| name == identity) {
            Some((_, c)) => *c += n,
            None => self.counts.push((identity.to_string(), n)),
        }
        self.total += n;
    }

    pub fn push(&mut self, identity: &str, tuple: Vec<usize>, residual: Vector) {
        self.count(identity, 1);
        if self.failures.len() < self.cap {
            self.failures.push(Failure {
                identity: identity.to_string(),
                tuple,
                residual,
            });
        }
    }

    /// Records `residual` when it is nonzero.
    pub fn check(&mut self, identity: &str, tuple: &[usize], residual: Vector) {
        if !is_zero_vec(&residual) {
            self.push(identity, tuple.to_vec(), residual);
        }
    }

    pub fn merge(&mut self, other: IdentityReport) {
        for f in other.failures {
            if self.failures.len() < self.cap {
                self.failures.push(f);
            }
        }
        for (name, n) in other.counts {
            self.count(&name, n);
        }
    }

    /// Evaluates `residual` on every tuple in `{0..dim}^arity` (in parallel,
    /// recorded in lexicographic order).
    pub fn check_all<F>(&mut self, identity: &str, arity: usize, dim: usize, residual: F)
    where
        F: Fn(&[usize]) -> Vector + Sync,
    {
        let count = dim.pow(arity as u32);
        let bad: Vec<(Vec<usize>, Vector)> = (0..count)
            .into_par_iter()
            .filter_map(|n| {
                let idx = decode(n, arity, dim);
                let r = residual(&idx);
                (!is_zero_vec(&r)).then_some((idx, r))
            })
            .collect();
        for (idx, r) in bad {
            self.push(identity, idx, r);
        }
    }
}

/// The `n`-th tuple of `{0..dim}^arity` in lexicographic order.
pub(crate) fn decode(mut n: usize, arity: usize, dim: usize) -> Vec<usize> {
    let mut idx = vec![0; arity];
    for slot in (0..arity).rev() {
        idx[slot] = n % dim;
        n /= dim;
    }
    idx
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        writeln!(f, "{} failing instance(s)", self.total)?;
        for fl in &self.failures {
            let r: Vec<String> = fl.residual.iter().map(Scalar::to_string).collect();
            writeln!(f, "  {} at {:?}: [{}]", fl.identity, fl.tuple, r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;

    #[test]
    fn cap_limits_storage_not_count() {
        let q = Field::Rational;
        let mut r = IdentityReport::new(2);
        r.check_all("always", 2, 2, |_| vec![q.one()]);
        assert!(!r.ok());
        assert_eq!(r.failure_count(), 4);
        assert_eq!(r.failures().len(), 2);
        assert_eq!(r.failures()[0].tuple, vec![0, 0]);
        assert_eq!(r.failures()[1].tuple, vec![0, 1]);
    }

    #[test]
    fn identities_past_the_cap_still_count() {
        let q = Field::Rational;
        let mut r = IdentityReport::new(1);
        r.check_all("first", 1, 3, |_| vec![q.one()]);
        r.check_all("second", 1, 2, |_| vec![q.one()]);
        let mut other = IdentityReport::new(1);
        other.check("third", &[], vec![q.one()]);
        r.merge(other);
        assert_eq!(r.failures().len(), 1);
        assert!(r.failed("second") && r.failed("third"));
        assert_eq!(r.failure_count_of("second"), 2);
        assert_eq!(r.failing_identities(), ["first", "second", "third"]);
        assert_eq!(r.failure_count(), 6);
    }

    #[test]
    fn zero_residuals_pass() {
        let q = Field::Rational;
        let mut r = IdentityReport::new(8);
        r.check_all("never", 3, 3, |_| vec![q.zero(); 2]);
        assert!(r.ok());
        assert!(r.failures().is_empty());
    }
}
