use serde::{Deserialize, Serialize};

use super::path::{first_shared_edge, ExtendedPath, PathEnd};
use super::quotient::cut_in_model;
use super::{SeparatorCertificate, Terminal};
use crate::error::Result;
use crate::presentation::{EndStructure, Presentation, VertexCoord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub paths: usize,
    pub certificates: usize,
    pub n_max: u32,
    pub failures: Vec<String>,
}

/// Whether a path end realizes a terminal: the terminal vertex itself, a ray
/// in the class, or a vertex dominating the class.
pub(crate) fn end_matches(ends: &EndStructure, end: PathEnd, t: Terminal) -> bool {
    match (end, t) {
        (PathEnd::Class(c), Terminal::Class(d)) => c == d,
        (PathEnd::Vertex(VertexCoord::Core { id }), Terminal::Core(v)) => id == v,
        (PathEnd::Vertex(VertexCoord::Core { id }), Terminal::Class(d)) => ends.classes[d].dominators.contains(&id),
        _ => false,
    }
}

fn matches_any(ends: &EndStructure, end: PathEnd, ts: &[Terminal]) -> bool {
    ts.iter().any(|&t| end_matches(ends, end, t))
}

/// Independent check of a path family against separator certificates.
///
/// Every path must be a simple extended path, the family edge-disjoint, and
/// for each certificate the paths with an end at one of its sources must run
/// to its sinks and cross it exactly once each, covering all of its edges; the
/// certificate must separate in every quotient truncation up to `n_max`.
pub fn verify_family(
    p: &Presentation,
    ends: &EndStructure,
    family: &[ExtendedPath],
    certificates: &[SeparatorCertificate],
    n_max: u32,
) -> Result<VerifyReport> {
    let mut failures = Vec::new();
    for (i, path) in family.iter().enumerate() {
        if let Err(e) = path.check(p) {
            failures.push(format!("path {i}: {e}"));
            continue;
        }
        if !path.is_simple(p)? {
            failures.push(format!("path {i} repeats a vertex"));
        }
        for r in [&path.head, &path.tail].into_iter().flatten() {
            if r.shift() <= 0 {
                failures.push(format!("path {i} has a ray that does not rise"));
            }
        }
    }
    if failures.is_empty() {
        if let Some((i, j, e)) = first_shared_edge(p, family)? {
            failures.push(format!("paths {i} and {j} share edge {e:?}"));
        }
    }
    for (k, cert) in certificates.iter().enumerate() {
        for n in cert.depth..=n_max.max(cert.depth) {
            if !cut_in_model(p, ends, cert, n)? {
                failures.push(format!("certificate {k} does not separate at depth {n}"));
                break;
            }
        }
        let mut hits = std::collections::BTreeMap::new();
        for (i, path) in family.iter().enumerate() {
            let (s, t) = (path.start(ends), path.end(ends));
            let from_src = matches_any(ends, s, &cert.sources);
            let to_src = matches_any(ends, t, &cert.sources);
            if !from_src && !to_src {
                continue;
            }
            let other = if from_src { t } else { s };
            if !matches_any(ends, other, &cert.sinks) {
                failures.push(format!("path {i} starts at a source of certificate {k} but does not reach a sink"));
            }
            let crossing: Vec<_> = path.edges_up_to(p, cert.depth)?.into_iter().filter(|e| cert.edges.contains(e)).collect();
            if crossing.len() != 1 {
                failures.push(format!("path {i} crosses certificate {k} {} times", crossing.len()));
            }
            for e in crossing {
                *hits.entry(e).or_insert(0usize) += 1;
            }
        }
        for e in &cert.edges {
            if hits.get(e).copied().unwrap_or(0) != 1 {
                failures.push(format!("edge {e:?} of certificate {k} is not on exactly one path"));
            }
        }
    }
    Ok(VerifyReport {
        ok: failures.is_empty(),
        paths: family.len(),
        certificates: certificates.len(),
        n_max,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ends::{menger_ends, EndSelector, LambdaOptions};
    use crate::presentation::fixtures::build;
    use crate::presentation::EdgeCoord;

    fn bridge() -> Presentation {
        build(1, &[], &[("L", 1, &[], &[(0, 0)]), ("R", 1, &[], &[(0, 0)])], &[(0, 0, 0), (0, 1, 0)], &[])
    }

    #[test]
    fn menger_output_verifies() {
        let p = bridge();
        let ends = EndStructure::new(&p).unwrap();
        let r = menger_ends(&p, &ends, &[EndSelector::Class(0)], &[EndSelector::Class(1)], &LambdaOptions::default()).unwrap();
        let report = verify_family(&p, &ends, &r.family, &[r.certificate], 40).unwrap();
        assert!(report.ok, "{:?}", report.failures);
    }

    #[test]
    fn shared_attach_edge_fails() {
        let p = bridge();
        let ends = EndStructure::new(&p).unwrap();
        let r = menger_ends(&p, &ends, &[EndSelector::Class(0)], &[EndSelector::Class(1)], &LambdaOptions::default()).unwrap();
        let family = vec![r.family[0].clone(), r.family[0].clone()];
        let report = verify_family(&p, &ends, &family, &[], 10).unwrap();
        assert!(!report.ok);
        assert!(report.failures[0].contains("share edge"));
    }

    #[test]
    fn certificate_missing_an_edge_fails() {
        let p = bridge();
        let ends = EndStructure::new(&p).unwrap();
        let r = menger_ends(&p, &ends, &[EndSelector::Class(0)], &[EndSelector::Class(1)], &LambdaOptions::default()).unwrap();
        let mut cert = r.certificate.clone();
        let crossing = *cert.edges.iter().next().unwrap();
        assert!(matches!(crossing, EdgeCoord::Attach { .. }));
        cert.edges.clear();
        let report = verify_family(&p, &ends, &r.family, &[cert], 10).unwrap();
        assert!(!report.ok);
    }
}
