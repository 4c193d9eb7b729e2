use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::lambda::{lambda_ends, Lambda, LambdaOptions, LambdaResult};
use super::path::ExtendedPath;
use super::routing::{route_to_ends, RouteRequest};
use super::{EndSelector, SeparatorCertificate};
use crate::error::{Error, Result};
use crate::presentation::{EdgeCoord, EndStructure, Presentation, VertexCoord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerEndsResult {
    pub family: Vec<ExtendedPath>,
    pub certificate: SeparatorCertificate,
    pub lambda: LambdaResult,
}

/// Routes one path per entry vertex to the given ends, staying on one side of `cert`.
pub(crate) fn route_side(
    p: &Presentation,
    ends: &EndStructure,
    cert: &SeparatorCertificate,
    inside: bool,
    sources: Vec<VertexCoord>,
    targets: BTreeSet<usize>,
) -> Result<Vec<ExtendedPath>> {
    let allowed = |e: &EdgeCoord| {
        let (u, v) = e.ends(p);
        !cert.edges.contains(e) && cert.contains(ends, u) == inside && cert.contains(ends, v) == inside
    };
    let req = RouteRequest { sources, targets, allowed: &allowed, min_port: cert.depth + 1, allow_dominators: true };
    route_to_ends(p, ends, &req)
}

/// `a` reversed, then the edge `f`, then `b`.
pub(crate) fn join(a: &ExtendedPath, f: EdgeCoord, b: &ExtendedPath) -> ExtendedPath {
    let a = a.reversed();
    let mut vertices = a.vertices;
    vertices.extend(b.vertices.iter().copied());
    let mut edges = a.edges;
    edges.push(f);
    edges.extend(b.edges.iter().copied());
    ExtendedPath { head: a.head, vertices, edges, tail: b.tail.clone() }
}

/// A maximum family of edge-disjoint paths between the ends in `a` and those
/// in `b`, each crossing the returned minimum separator exactly once.
pub fn menger_ends(
    p: &Presentation,
    ends: &EndStructure,
    a: &[EndSelector],
    b: &[EndSelector],
    opts: &LambdaOptions,
) -> Result<MengerEndsResult> {
    let lambda = lambda_ends(p, ends, a, b, opts)?;
    if lambda.value == Lambda::Infinite {
        return Err(Error::Ends("the selected ends cannot be separated by finitely many edges".into()));
    }
    let cert = lambda.certificate.clone().expect("finite value has a certificate");
    let ca: BTreeSet<usize> = a.iter().map(|s| s.class(ends)).collect::<Result<_>>()?;
    let cb: BTreeSet<usize> = b.iter().map(|s| s.class(ends)).collect::<Result<_>>()?;
    let mut near = Vec::new();
    let mut far = Vec::new();
    let cut: Vec<EdgeCoord> = cert.edges.iter().copied().collect();
    for e in &cut {
        let (u, v) = e.ends(p);
        if cert.contains(ends, u) {
            near.push(u);
            far.push(v);
        } else {
            near.push(v);
            far.push(u);
        }
    }
    let to_a = route_side(p, ends, &cert, true, near, ca)?;
    let to_b = route_side(p, ends, &cert, false, far, cb)?;
    let family = cut.iter().zip(to_a.iter().zip(&to_b)).map(|(&f, (x, y))| join(x, f, y)).collect();
    Ok(MengerEndsResult { family, certificate: cert, lambda })
}
