//! Diff-specifications `V(N) \ V(M)` and their canonical prime
//! decomposition.

use std::fmt;
use std::sync::Arc;

use crate::arith::PolyRing;
use crate::groebner::{ideal_intersection_all, ideal_sum, Ideal};
use crate::primedec::minimal_primes;
use crate::spec::RedSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffSpec {
    pub n: Ideal,
    pub m: Ideal,
}

/// One component `V(N_i) \ (V(M_i1) ∪ ... ∪ V(M_il))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub prime: Ideal,
    pub removed: Vec<Ideal>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanSpec {
    pub components: Vec<Component>,
    pub warnings: Vec<String>,
}

impl CanSpec {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// `(N, N + ⟨h⟩)`.
pub fn redspec_to_diffspec(spec: &RedSpec) -> DiffSpec {
    DiffSpec {
        n: spec.n().clone(),
        m: spec.n().with(spec.h()),
    }
}

pub fn difftocanspec(d: &DiffSpec, bound: u32) -> CanSpec {
    let outer = minimal_primes(&d.n, bound);
    let mut warnings = outer.warnings.clone();
    let mut components = Vec::new();
    for p in outer.primes {
        if p.contains_ideal(&d.m) {
            continue;
        }
        let inner = minimal_primes(&ideal_sum(&d.m, &p), bound);
        for w in inner.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        components.push(Component {
            prime: p,
            removed: inner.primes,
        });
    }
    components.sort_by(|a, b| {
        a.prime
            .len()
            .cmp(&b.prime.len())
            .then_with(|| a.prime.cmp_canonical(&b.prime))
    });
    CanSpec {
        components,
        warnings,
    }
}

/// `∩ N_i`, the ideal of the Zariski closure; `⟨1⟩` when empty.
pub fn canspec_closure(c: &CanSpec, ring: &Arc<PolyRing>) -> Ideal {
    let primes: Vec<Ideal> = c.components.iter().map(|k| k.prime.clone()).collect();
    ideal_intersection_all(&primes, ring)
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({})", self.prime)?;
        if self.removed.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = self.removed.iter().map(|m| format!("V({m})")).collect();
        write!(f, " \\ ( {} )", parts.join(" ∪ "))
    }
}

impl fmt::Display for CanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}
