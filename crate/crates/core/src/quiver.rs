//! Finite acyclic quivers with optional admissible relations.
//!
//! The path algebra of such a quiver is the finite-dimensional algebra
//! whose modules the rest of the crate studies. Acyclicity is enforced
//! at construction by topological sort; relation paths must be
//! composable, of length at least two, and all paths in one relation
//! must share source and target.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

/// An arrow between two vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// One term of a relation: an integer coefficient on a composable path
/// of arrows, stored first-arrow-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coef: i64,
    pub path: Vec<usize>,
}

/// A k-linear combination of parallel paths that must act as zero.
pub type Relation = Vec<RelationTerm>;

/// A finite acyclic quiver with named vertices and arrows.
#[derive(Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    topo_order: Vec<usize>,
}

impl Quiver {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<Vec<(i64, Vec<String>)>>,
    ) -> Result<Arc<Quiver>> {
        let vertex_index = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {:?}", name)))
        };
        {
            let mut seen = std::collections::BTreeSet::new();
            for v in &vertices {
                if !seen.insert(v.clone()) {
                    return Err(Error::InvalidQuiver(format!("duplicate vertex {:?}", v)));
                }
            }
        }
        let mut built_arrows = Vec::new();
        for (name, src, tgt) in arrows {
            if built_arrows.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {:?}", name)));
            }
            built_arrows.push(Arrow {
                name,
                src: vertex_index(&src)?,
                tgt: vertex_index(&tgt)?,
            });
        }
        let arrow_index = |name: &str| -> Result<usize> {
            built_arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow {:?}", name)))
        };
        let mut built_relations = Vec::new();
        for rel in relations {
            let mut terms = Vec::new();
            for (coef, path_names) in rel {
                let path: Vec<usize> = path_names
                    .iter()
                    .map(|n| arrow_index(n))
                    .collect::<Result<_>>()?;
                terms.push(RelationTerm { coef, path });
            }
            built_relations.push(terms);
        }
        Self::from_parts(vertices, built_arrows, built_relations)
    }

    fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Arc<Quiver>> {
        let topo_order = topological_sort(vertices.len(), &arrows)?;
        let q = Quiver { vertices, arrows, relations, topo_order };
        q.check_relations()?;
        Ok(Arc::new(q))
    }

    fn check_relations(&self) -> Result<()> {
        for rel in &self.relations {
            if rel.is_empty() {
                return Err(Error::InvalidRelation("empty relation".into()));
            }
            let mut endpoints = None;
            for term in rel {
                if term.path.len() < 2 {
                    return Err(Error::InvalidRelation(
                        "relation paths must have length at least 2".into(),
                    ));
                }
                for w in term.path.windows(2) {
                    if self.arrows[w[0]].tgt != self.arrows[w[1]].src {
                        return Err(Error::InvalidRelation("path is not composable".into()));
                    }
                }
                let here = (
                    self.arrows[*term.path.first().unwrap()].src,
                    self.arrows[*term.path.last().unwrap()].tgt,
                );
                match endpoints {
                    None => endpoints = Some(here),
                    Some(e) if e == here => {}
                    Some(_) => {
                        return Err(Error::InvalidRelation(
                            "all paths in a relation must share source and target".into(),
                        ))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, index: usize) -> &str {
        &self.vertices[index]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    /// Vertex indices in a topological order (sources first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo_order
    }

    /// Undirected edges (with multiplicity) of the underlying graph.
    pub fn underlying_edges(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .map(|a| (a.src.min(a.tgt), a.src.max(a.tgt)))
            .collect()
    }

    /// The linear quiver `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
    pub fn line(n: usize) -> Arc<Quiver> {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| (format!("a{}", i), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(vertices, arrows, vec![]).expect("line quiver is valid")
    }

    /// `k` source vertices all mapping into one sink (the last vertex);
    /// with `k = 3` this is the four-subspace star underlying D4.
    pub fn star_into_sink(k: usize) -> Arc<Quiver> {
        let sink = (k + 1).to_string();
        let mut vertices: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
        vertices.push(sink.clone());
        let arrows = (1..=k)
            .map(|i| (format!("a{}", i), i.to_string(), sink.clone()))
            .collect();
        Quiver::new(vertices, arrows, vec![]).expect("star quiver is valid")
    }

    /// The full subquiver on `keep` (indices into this quiver), with the
    /// arrows between kept vertices. Fails unless the subquiver is
    /// convex: no path may leave the subquiver and come back.
    pub fn full_subquiver(&self, keep: &[usize]) -> Result<Arc<Quiver>> {
        let keep_set: std::collections::BTreeSet<usize> = keep.iter().copied().collect();
        for &v in keep {
            if v >= self.vertices.len() {
                return Err(Error::InvalidQuiver(format!("vertex index {} out of range", v)));
            }
        }
        self.check_convex(&keep_set)?;
        let vertices: Vec<String> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| keep_set.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        let reindex: std::collections::BTreeMap<usize, usize> = keep_set
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .filter(|a| keep_set.contains(&a.src) && keep_set.contains(&a.tgt))
            .map(|a| Arrow {
                name: a.name.clone(),
                src: reindex[&a.src],
                tgt: reindex[&a.tgt],
            })
            .collect();
        // hereditary quivers only carry empty relations into subquivers;
        // with relations, keep only those supported on kept arrows
        let kept_arrow_old: Vec<usize> = self
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| keep_set.contains(&a.src) && keep_set.contains(&a.tgt))
            .map(|(i, _)| i)
            .collect();
        let arrow_reindex: std::collections::BTreeMap<usize, usize> = kept_arrow_old
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let relations: Vec<Relation> = self
            .relations
            .iter()
            .filter(|rel| {
                rel.iter()
                    .all(|t| t.path.iter().all(|a| arrow_reindex.contains_key(a)))
            })
            .map(|rel| {
                rel.iter()
                    .map(|t| RelationTerm {
                        coef: t.coef,
                        path: t.path.iter().map(|a| arrow_reindex[a]).collect(),
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(vertices, arrows, relations)
    }

    /// Convexity: no directed path from a kept vertex to a kept vertex
    /// passes through a dropped vertex. Equivalently, no dropped vertex
    /// is both reachable from the kept set and reaches the kept set.
    fn check_convex(&self, keep: &std::collections::BTreeSet<usize>) -> Result<()> {
        let n = self.vertices.len();
        let mut from_keep = vec![false; n];
        let mut to_keep = vec![false; n];
        // forward reachability from kept vertices
        let mut stack: Vec<usize> = keep.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                if a.src == v && !from_keep[a.tgt] && !keep.contains(&a.tgt) {
                    from_keep[a.tgt] = true;
                    stack.push(a.tgt);
                }
            }
        }
        // backward reachability into kept vertices
        let mut stack: Vec<usize> = keep.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                if a.tgt == v && !to_keep[a.src] && !keep.contains(&a.src) {
                    to_keep[a.src] = true;
                    stack.push(a.src);
                }
            }
        }
        for v in 0..n {
            if from_keep[v] && to_keep[v] {
                return Err(Error::NotConvex(format!(
                    "vertex {:?} lies on a path between kept vertices",
                    self.vertices[v]
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quiver[{}; ", self.vertices.join(","))?;
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}:{}->{}", a.name, self.vertices[a.src], self.vertices[a.tgt]))
            .collect();
        write!(f, "{}]", arrows.join(","))
    }
}

fn topological_sort(n: usize, arrows: &[Arrow]) -> Result<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    for a in arrows {
        if a.src >= n || a.tgt >= n {
            return Err(Error::InvalidQuiver("arrow endpoint out of range".into()));
        }
        indegree[a.tgt] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop() {
        order.push(v);
        for a in arrows {
            if a.src == v {
                indegree[a.tgt] -= 1;
                if indegree[a.tgt] == 0 {
                    queue.push(a.tgt);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::CyclicQuiver);
    }
    Ok(order)
}

/// Nonnegative integers attached to the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub Vec<usize>);

impl DimensionVector {
    pub fn zero(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        DimensionVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Pointwise comparison.
    pub fn leq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}
