use std::fmt;

use crate::exactlin::SparseMat;

/// One identity that failed, with `lhs - rhs` as a matrix whose columns are
/// input basis vectors and whose rows are output tensor slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub identity: String,
    pub matrix: SparseMat,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Discrepancy>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records `residual` under `identity` unless it is zero.
    pub fn record(&mut self, identity: impl Into<String>, residual: SparseMat) {
        if !residual.is_zero() {
            self.failures.push(Discrepancy { identity: identity.into(), matrix: residual });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.failures.extend(other.failures);
    }

    pub fn failed(&self, identity: &str) -> bool {
        self.failures.iter().any(|f| f.identity == identity)
    }

    pub fn first(&self) -> Option<&Discrepancy> {
        self.failures.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "pass");
        }
        for d in &self.failures {
            writeln!(f, "FAIL {}", d.identity)?;
            for (shown, (r, c, v)) in d.matrix.triplets().enumerate() {
                if shown == 12 {
                    writeln!(f, "  ... {} nonzero discrepancies in total", d.matrix.nnz())?;
                    break;
                }
                writeln!(f, "  basis {c}, slot {r}: lhs - rhs = {v}")?;
            }
        }
        Ok(())
    }
}
