//! Seeded property suite behind the `selftest` subcommand.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covering::{connected_sum_witness, double_cover};
use crate::diagram::{random_diagram_with, Port, TwistedDiagram};
use crate::format::parse_diagram;
use crate::invariant::{jkss, twisted_jkss};
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use crate::moves::{apply, random_walk_trace, walk_sites, MoveKind};
use crate::oracle::cofactor_determinant;

/// A random matrix whose entries have at most `terms` terms with
/// coefficients in -3..=3 and exponents in -2..=2. About a third of the
/// entries are zero.
pub fn random_poly_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, terms: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(1.0 / 3.0) {
                continue;
            }
            let k = rng.random_range(1..=terms.max(1));
            let p: LaurentPoly = (0..k)
                .map(|_| {
                    LaurentPoly::monomial(
                        rng.random_range(-3i64..=3),
                        rng.random_range(-2..=2),
                        rng.random_range(-2..=2),
                    )
                })
                .sum();
            m.set(i, j, p);
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures.is_empty())
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            let status = if p.failures.is_empty() { "ok" } else { "FAIL" };
            writeln!(
                f,
                "{status:4} {:<28} {} cases, {} failures",
                p.name,
                p.checked,
                p.failures.len()
            )?;
            for msg in p.failures.iter().take(3) {
                writeln!(f, "     {msg}")?;
            }
        }
        Ok(())
    }
}

struct Runner {
    rng: ChaCha8Rng,
    results: Vec<PropertyResult>,
}

impl Runner {
    fn check(
        &mut self,
        name: &'static str,
        count: usize,
        mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), String>,
    ) {
        let mut failures = Vec::new();
        for k in 0..count {
            if let Err(msg) = case(&mut self.rng) {
                failures.push(format!("case {k}: {msg}"));
            }
        }
        self.results.push(PropertyResult {
            name,
            checked: count,
            failures,
        });
    }
}

fn twisted(d: &TwistedDiagram) -> Result<LaurentPoly, String> {
    twisted_jkss(d)
        .map(|v| v.canonical)
        .map_err(|e| e.to_string())
}

/// Runs every property `count` times from `seed`.
pub fn run(seed: u64, count: usize) -> SelftestReport {
    let mut r = Runner {
        rng: ChaCha8Rng::seed_from_u64(seed),
        results: Vec::new(),
    };

    r.check("determinant = cofactor", count, |rng| {
        let n = rng.random_range(0..=6);
        let m = random_poly_matrix(rng, n, 3);
        let (fast, slow) = (m.determinant(), cofactor_determinant(&m));
        (fast == slow)
            .then_some(())
            .ok_or_else(|| format!("{n}x{n}: {fast} != {slow}"))
    });

    r.check("text round trip", count, |rng| {
        let n = rng.random_range(0..=6);
        let bars = rng.random_range(0..=6);
        let d = random_diagram_with(rng, n, bars);
        let back = parse_diagram(&d.to_string()).map_err(|e| e.to_string())?;
        (back == d)
            .then_some(())
            .ok_or_else(|| format!("changed by round trip:\n{d}"))
    });

    r.check("mirror is an involution", count, |rng| {
        let n = rng.random_range(0..=6);
        let bars = rng.random_range(0..=6);
        let d = random_diagram_with(rng, n, bars);
        (d.mirror().mirror() == d)
            .then_some(())
            .ok_or_else(|| format!("\n{d}"))
    });

    r.check("twisted = jkss of cover", count, |rng| {
        let n = rng.random_range(0..=5);
        let bars = rng.random_range(0..=6);
        let d = random_diagram_with(rng, n, bars);
        let lhs = twisted_jkss(&d).map_err(|e| e.to_string())?.raw;
        let cover = double_cover(&d).map_err(|e| e.to_string())?;
        let rhs = jkss(&cover).map_err(|e| e.to_string())?.raw;
        (lhs == rhs)
            .then_some(())
            .ok_or_else(|| format!("{lhs} != {rhs} for\n{d}"))
    });

    r.check("barred cover = connected sum", count, |rng| {
        let n = rng.random_range(1..=4);
        let d = random_diagram_with(rng, n, 0);
        let edge = Port::outgoing(rng.random_range(1..=n as u32), rng.random_range(0..2));
        let (cover, csum) = connected_sum_witness(&d, edge).map_err(|e| e.to_string())?;
        let a = jkss(&cover).map_err(|e| e.to_string())?;
        let b = jkss(&csum).map_err(|e| e.to_string())?;
        a.equivalent(&b)
            .then_some(())
            .ok_or_else(|| format!("{} vs {} at {edge} of\n{d}", a.canonical, b.canonical))
    });

    r.check("single moves keep twisted", count, |rng| {
        let n = rng.random_range(1..=5);
        let bars = rng.random_range(0..=4);
        let d = random_diagram_with(rng, n, bars);
        let before = twisted(&d)?;
        let kinds: Vec<_> = MoveKind::ALL
            .into_iter()
            .map(|k| walk_sites(&d, k))
            .filter(|s| !s.is_empty())
            .collect();
        let sites = &kinds[rng.random_range(0..kinds.len())];
        let site = sites[rng.random_range(0..sites.len())];
        let after = apply(&d, site).map_err(|e| e.to_string())?;
        let value = twisted(&after)?;
        (value == before)
            .then_some(())
            .ok_or_else(|| format!("{site} changed {before} to {value} on\n{d}"))
    });

    r.check("walks keep twisted", count.div_ceil(10), |rng| {
        let n = rng.random_range(1..=4);
        let bars = rng.random_range(0..=4);
        let d = random_diagram_with(rng, n, bars);
        let before = twisted(&d)?;
        let seed = rng.random();
        for (site, step) in random_walk_trace(&d, 6, seed).map_err(|e| e.to_string())? {
            let value = twisted(&step)?;
            if value != before {
                return Err(format!(
                    "walk seed {seed}: {site} changed the value on\n{d}"
                ));
            }
        }
        Ok(())
    });

    SelftestReport {
        seed,
        properties: r.results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = run(7, 5);
        assert!(report.passed(), "{report}");
        assert_eq!(report.properties.len(), 7);
    }

    #[test]
    fn random_matrices_are_deterministic() {
        let a = random_poly_matrix(&mut ChaCha8Rng::seed_from_u64(3), 4, 2);
        let b = random_poly_matrix(&mut ChaCha8Rng::seed_from_u64(3), 4, 2);
        assert_eq!(a, b);
    }
}
