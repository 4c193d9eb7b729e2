//! Finitely presented infinite graphs.
//!
//! A presentation consists of a finite core multigraph, a list of periodic
//! arms, attach edges from core vertices into layer 0 of an arm, and dominating
//! columns joining a core vertex to one pattern vertex in every layer of an arm.
//! Arm `a` with pattern `(V_L, intra, inter)` contributes vertices `(p, n)` for
//! `p in V_L`, `n >= 0`, intra edges `(p, n)(q, n)` and inter edges `(p, n)(q, n+1)`.

mod strands;
mod truncate;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{GraphFile, Label};
use crate::multigraph::{Multigraph, VertexId};

pub use strands::{
    basic_open, canonical_ray, edge_dominators, edge_end_classes, strands, ArmStructure, EdgeEndClass,
    EndStructure, PatEdge, PatStep, RaySpec, Strand, StrandId,
};
pub use truncate::{truncate, EdgeCoord, Truncation, VertexCoord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmPattern {
    pub name: String,
    pub vertices: Vec<String>,
    /// undirected edges inside one layer
    pub intra: Vec<(usize, usize)>,
    /// edges from layer `n` to layer `n + 1`
    pub inter: Vec<(usize, usize)>,
}

/// A core vertex joined to pattern vertex `pat` of arm `arm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Anchor {
    pub core: VertexId,
    pub arm: usize,
    pub pat: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub core: Multigraph,
    pub arms: Vec<ArmPattern>,
    /// realized once, at layer 0
    pub attach: Vec<Anchor>,
    /// realized at every layer
    pub dominating: Vec<Anchor>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArmFile {
    pub id: Label,
    pub vertices: Vec<Label>,
    #[serde(default)]
    pub intra: Vec<(Label, Label)>,
    #[serde(default)]
    pub inter: Vec<(Label, Label)>,
}

/// On-disk form: `{core:{vertices, edges}, arms:[{id, vertices, intra, inter}], attach, dominating}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    pub core: GraphFile,
    pub arms: Vec<ArmFile>,
    #[serde(default)]
    pub attach: Vec<(Label, Label, Label)>,
    #[serde(default)]
    pub dominating: Vec<(Label, Label, Label)>,
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<Presentation> {
        let core = self.core.into_graph()?;
        let mut arm_index: BTreeMap<String, usize> = BTreeMap::new();
        let mut arms = Vec::new();
        for (i, arm) in self.arms.into_iter().enumerate() {
            let name = arm.id.as_string();
            if arm_index.insert(name.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate arm id {name:?}")));
            }
            let vertices: Vec<String> = arm.vertices.iter().map(Label::as_string).collect();
            let lookup = |l: &Label| {
                vertices
                    .iter()
                    .position(|v| *v == l.as_string())
                    .ok_or_else(|| Error::Parse(format!("arm {name:?} has no pattern vertex {:?}", l.as_string())))
            };
            let intra = arm.intra.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<_>>()?;
            let inter = arm.inter.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<_>>()?;
            arms.push(ArmPattern { name, vertices, intra, inter });
        }
        let anchor = |(c, a, p): &(Label, Label, Label)| -> Result<Anchor> {
            let core_v = core
                .vertex_by_label(&c.as_string())
                .ok_or_else(|| Error::Parse(format!("unknown core vertex {:?}", c.as_string())))?;
            let arm = *arm_index
                .get(&a.as_string())
                .ok_or_else(|| Error::Parse(format!("unknown arm {:?}", a.as_string())))?;
            let pat = arms[arm]
                .vertices
                .iter()
                .position(|v| *v == p.as_string())
                .ok_or_else(|| Error::Parse(format!("arm {:?} has no pattern vertex {:?}", a.as_string(), p.as_string())))?;
            Ok(Anchor { core: core_v, arm, pat })
        };
        let attach = self.attach.iter().map(anchor).collect::<Result<_>>()?;
        let dominating = self.dominating.iter().map(anchor).collect::<Result<_>>()?;
        Ok(Presentation { core, arms, attach, dominating })
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let text = |s: &str| Label::Text(s.to_string());
        let anchor = |a: &Anchor| {
            let arm = &p.arms[a.arm];
            (Label::Text(p.core.label(a.core)), text(&arm.name), text(&arm.vertices[a.pat]))
        };
        PresentationFile {
            core: GraphFile::from_graph(&p.core),
            arms: p
                .arms
                .iter()
                .map(|arm| {
                    let pair = |&(x, y): &(usize, usize)| (text(&arm.vertices[x]), text(&arm.vertices[y]));
                    ArmFile {
                        id: text(&arm.name),
                        vertices: arm.vertices.iter().map(|v| text(v)).collect(),
                        intra: arm.intra.iter().map(pair).collect(),
                        inter: arm.inter.iter().map(pair).collect(),
                    }
                })
                .collect(),
            attach: p.attach.iter().map(anchor).collect(),
            dominating: p.dominating.iter().map(anchor).collect(),
        }
    }
}

impl Presentation {
    /// Parses and validates a presentation file.
    pub fn from_json(text: &str) -> Result<Presentation> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let p = file.into_presentation()?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationFile::from_presentation(self)).expect("presentation serializes")
    }

    /// Referential integrity and strand infinitude; all problems are reported together.
    pub fn validate(&self) -> Result<()> {
        let mut problems = self.structural_problems();
        if problems.is_empty() {
            for arm in &self.arms {
                let s = ArmStructure::new(arm);
                for (c, comp) in s.components.iter().enumerate() {
                    if s.period[c] == 0 {
                        let names: Vec<&str> = comp.iter().map(|&p| arm.vertices[p].as_str()).collect();
                        problems.push(format!(
                            "arm {:?}: pattern component {{{}}} carries no infinite forward path",
                            arm.name,
                            names.join(", ")
                        ));
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Presentation(problems))
        }
    }

    fn structural_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut names = BTreeSet::new();
        for arm in &self.arms {
            if !names.insert(arm.name.as_str()) {
                problems.push(format!("duplicate arm id {:?}", arm.name));
            }
            if arm.vertices.is_empty() {
                problems.push(format!("arm {:?} has an empty pattern", arm.name));
            }
            let n = arm.vertices.len();
            for &(x, y) in &arm.intra {
                if x >= n || y >= n {
                    problems.push(format!("arm {:?}: intra edge references a missing pattern vertex", arm.name));
                } else if x == y {
                    problems.push(format!("arm {:?}: intra edge at {:?} is a loop", arm.name, arm.vertices[x]));
                }
            }
            if arm.inter.iter().any(|&(x, y)| x >= n || y >= n) {
                problems.push(format!("arm {:?}: inter edge references a missing pattern vertex", arm.name));
            }
        }
        for (kind, list) in [("attach", &self.attach), ("dominating", &self.dominating)] {
            for a in list.iter() {
                if !self.core.contains_vertex(a.core) {
                    problems.push(format!("{kind} entry references missing core vertex {}", a.core));
                }
                match self.arms.get(a.arm) {
                    None => problems.push(format!("{kind} entry references missing arm #{}", a.arm)),
                    Some(arm) if a.pat >= arm.vertices.len() => {
                        problems.push(format!("{kind} entry references missing pattern vertex #{} of arm {:?}", a.pat, arm.name))
                    }
                    _ => {}
                }
            }
        }
        let mut seen = BTreeSet::new();
        for a in &self.dominating {
            if !seen.insert(a) {
                problems.push(format!("dominating column {} -> arm #{} vertex #{} listed twice", a.core, a.arm, a.pat));
            }
        }
        problems
    }

    /// Largest pattern size over all arms.
    pub fn max_pattern(&self) -> usize {
        self.arms.iter().map(|a| a.vertices.len()).max().unwrap_or(0)
    }

    /// Core vertices carrying at least one dominating column.
    pub fn dominating_vertices(&self) -> BTreeSet<VertexId> {
        self.dominating.iter().map(|a| a.core).collect()
    }
}
