use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::quotient::model_min_cut;
use super::{EndSelector, SeparatorCertificate, Terminal};
use crate::error::{Error, Result};
use crate::multigraph::VertexId;
use crate::oracle;
use crate::presentation::{EndStructure, Presentation, StrandId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaOptions {
    /// deepest quotient truncation tried before giving up
    pub n_max: u32,
    /// consecutive equal values needed; `None` uses `|core| + sum |V_L| + 1`
    pub window: Option<u32>,
    /// re-solve at twice the final depth with the independent solver
    pub confirm: bool,
}

impl Default for LambdaOptions {
    fn default() -> Self {
        LambdaOptions { n_max: 256, window: None, confirm: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda {
    Finite(usize),
    Infinite,
}

/// Why two selected ends cannot be separated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeWitness {
    Dominator { class: usize, vertex: VertexId },
    Strand { class: usize, strand: StrandId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaResult {
    pub value: Lambda,
    pub certificate: Option<SeparatorCertificate>,
    pub witness: Option<MergeWitness>,
    /// first depth at which the final value was reached
    pub depth: u32,
    /// min-cut values of `M_0, M_1, ...`
    pub history: Vec<usize>,
}

pub(crate) fn default_window(p: &Presentation) -> u32 {
    (p.core.num_vertices() + p.arms.iter().map(|a| a.vertices.len()).sum::<usize>() + 1) as u32
}

/// Stabilized minimum cut between two terminal sets over `M_0, M_1, ...`.
///
/// Returns the value, the certificate at the first depth reaching it, and the history.
pub(crate) fn stabilized_cut(
    p: &Presentation,
    ends: &EndStructure,
    sources: &[Terminal],
    sinks: &[Terminal],
    opts: &LambdaOptions,
) -> Result<(usize, SeparatorCertificate, Vec<usize>)> {
    let window = opts.window.unwrap_or_else(|| default_window(p)).max(1) as usize;
    let mut history: Vec<usize> = Vec::new();
    let mut certs: Vec<SeparatorCertificate> = Vec::new();
    for n in 0..=opts.n_max {
        let (value, cert) = model_min_cut(p, ends, n, sources, sinks)?;
        let value = value as usize;
        if let Some(&prev) = history.last() {
            if value > prev {
                return Err(Error::Internal(format!("quotient cut grew from {prev} to {value} at depth {n}")));
            }
        }
        history.push(value);
        certs.push(cert);
        let len = history.len();
        if len >= window && history[len - window..].iter().all(|&v| v == value) {
            let first = history.iter().position(|&v| v == value).expect("value occurs");
            if opts.confirm {
                let check = oracle::model_min_cut(p, ends, 2 * n, sources, sinks)?;
                if check != value {
                    return Err(Error::Internal(format!(
                        "stabilized cut {value} at depth {n} disagrees with the independent value {check} at depth {}",
                        2 * n
                    )));
                }
            }
            let cert = certs.swap_remove(first);
            return Ok((value, cert, history));
        }
    }
    let hi = *history.last().unwrap_or(&0);
    Err(Error::NotStabilized { depth: opts.n_max, lo: 0, hi })
}

/// Minimum number of edges separating the ends in `a` from those in `b`.
pub fn lambda_ends(
    p: &Presentation,
    ends: &EndStructure,
    a: &[EndSelector],
    b: &[EndSelector],
    opts: &LambdaOptions,
) -> Result<LambdaResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Ends("both end sets must be nonempty".into()));
    }
    if let Some(s) = a.iter().find(|s| b.contains(s)) {
        return Err(Error::Ends(format!("end {s:?} is selected on both sides")));
    }
    let ca: BTreeSet<usize> = a.iter().map(|s| s.class(ends)).collect::<Result<_>>()?;
    let cb: BTreeSet<usize> = b.iter().map(|s| s.class(ends)).collect::<Result<_>>()?;
    if let Some(&c) = ca.intersection(&cb).next() {
        let class = ends.class(c)?;
        let witness = match class.dominators.iter().next() {
            Some(&vertex) => MergeWitness::Dominator { class: c, vertex },
            None => MergeWitness::Strand { class: c, strand: class.strands[0] },
        };
        return Ok(LambdaResult { value: Lambda::Infinite, certificate: None, witness: Some(witness), depth: 0, history: Vec::new() });
    }
    let sources: Vec<Terminal> = ca.into_iter().map(Terminal::Class).collect();
    let sinks: Vec<Terminal> = cb.into_iter().map(Terminal::Class).collect();
    let (value, cert, history) = stabilized_cut(p, ends, &sources, &sinks, opts)?;
    Ok(LambdaResult { value: Lambda::Finite(value), depth: cert.depth, certificate: Some(cert), witness: None, history })
}
