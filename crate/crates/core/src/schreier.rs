//! Labeled Schreier coset graphs and their single-label cycle structure.
//!
//! Vertices are right cosets `Hg`. For a label `z` the successor map is the
//! action `α(z)`, which sends the coset of `g` to the coset of `g·z` under the
//! crate's left-to-right composition. Written as functions composed right to
//! left this is the coset `Hgz⁻¹`, so the out-edge of `Hg` labeled `z` is the
//! edge `(Hg, Hgz⁻¹)`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{CosetTable, FiniteGroup, GeneratorError, GeneratorSystem, GroupError};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchreierError {
    #[error(transparent)]
    Generators(#[from] GeneratorError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(
        "the labels generate a group of order {generated}, not the full group of order {expected}"
    )]
    GeneratorsDoNotGenerate { generated: usize, expected: usize },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid vertex map: {0}")]
    VertexMap(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// An explicit numbering and naming of the cosets: entry `i` names the coset
/// containing `entries[i].0` and makes it vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLayout {
    pub entries: Vec<(Permutation, String)>,
}

#[derive(Debug, Clone)]
pub struct SchreierGraph {
    vertex_names: Vec<String>,
    labels: Vec<String>,
    label_elements: Vec<Permutation>,
    succ: Vec<Vec<usize>>,
    cosets: Option<CosetAction>,
}

/// Link between vertices and cosets, kept so that arbitrary group elements
/// can act on the graph.
#[derive(Debug, Clone)]
struct CosetAction {
    table: CosetTable,
    /// coset index to vertex index
    vertex_of: Vec<usize>,
    /// vertex index to a representative of its coset
    reps: Vec<Permutation>,
}

/// Builds the Schreier graph of `group` relative to `⟨h_gens⟩` and `labels`.
///
/// Vertices are numbered breadth-first from `H` unless `layout` fixes them.
pub fn build_schreier(
    group: &FiniteGroup,
    h_gens: &[Permutation],
    labels: &GeneratorSystem,
    layout: Option<&VertexLayout>,
) -> Result<SchreierGraph, SchreierError> {
    for (name, z) in labels.entries() {
        if !group.contains(z) {
            return Err(GroupError::SubgroupNotContained(format!("{name} = {z}")).into());
        }
    }
    let generated = labels.generate(group.order() + 1)?;
    if generated.order() != group.order() {
        return Err(SchreierError::GeneratorsDoNotGenerate {
            generated: generated.order(),
            expected: group.order(),
        });
    }
    let table = group.right_cosets(h_gens)?;
    let n = table.len();
    let act = |coset: usize, x: &Permutation| -> usize {
        let rep = &table.representatives()[coset];
        table.index_of(&rep.then(x)).expect("group is closed")
    };

    let (order, names): (Vec<usize>, Vec<String>) = match layout {
        Some(layout) => layout_order(&table, layout)?,
        None => {
            let order = bfs_order(
                n,
                table
                    .index_of(&Permutation::identity(group.degree()))
                    .unwrap(),
                labels,
                &act,
            );
            let names = order
                .iter()
                .map(|&c| default_name(&table.representatives()[c]))
                .collect();
            (order, names)
        }
    };
    let mut vertex_of = vec![0; n];
    for (v, &c) in order.iter().enumerate() {
        vertex_of[c] = v;
    }
    let succ = labels
        .elements()
        .map(|z| order.iter().map(|&c| vertex_of[act(c, z)]).collect())
        .collect();
    let reps = order
        .iter()
        .map(|&c| table.representatives()[c].clone())
        .collect();
    Ok(SchreierGraph {
        vertex_names: names,
        labels: labels.names().map(str::to_string).collect(),
        label_elements: labels.elements().cloned().collect(),
        succ,
        cosets: Some(CosetAction {
            table,
            vertex_of,
            reps,
        }),
    })
}

fn default_name(rep: &Permutation) -> String {
    if rep.is_identity() {
        "He".to_string()
    } else {
        format!("H{rep}")
    }
}

fn bfs_order(
    n: usize,
    start: usize,
    labels: &GeneratorSystem,
    act: &dyn Fn(usize, &Permutation) -> usize,
) -> Vec<usize> {
    let moves: Vec<Permutation> = labels
        .elements()
        .flat_map(|z| [z.inverse(), z.clone()])
        .collect();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for m in &moves {
            let d = act(c, m);
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    order
}

fn layout_order(
    table: &CosetTable,
    layout: &VertexLayout,
) -> Result<(Vec<usize>, Vec<String>), SchreierError> {
    if layout.entries.len() != table.len() {
        return Err(SchreierError::VertexMap(format!(
            "{} entries for {} cosets",
            layout.entries.len(),
            table.len()
        )));
    }
    let mut used = vec![false; table.len()];
    let mut order = Vec::with_capacity(table.len());
    let mut names = Vec::with_capacity(table.len());
    for (rep, name) in &layout.entries {
        let c = table
            .index_of(rep)
            .ok_or_else(|| SchreierError::VertexMap(format!("{rep} is not a group element")))?;
        if used[c] {
            return Err(SchreierError::VertexMap(format!(
                "{rep} ({name}) repeats a coset already listed"
            )));
        }
        used[c] = true;
        order.push(c);
        names.push(name.clone());
    }
    Ok((order, names))
}

impl SchreierGraph {
    /// A graph given directly by successor arrays, without a group behind it.
    pub fn from_succ(
        vertex_names: Vec<String>,
        labels: Vec<String>,
        succ: Vec<Vec<usize>>,
    ) -> Result<Self, SchreierError> {
        let n = vertex_names.len();
        if labels.len() != succ.len() {
            return Err(SchreierError::InvalidGraph(format!(
                "{} labels but {} successor arrays",
                labels.len(),
                succ.len()
            )));
        }
        let mut label_elements = Vec::with_capacity(succ.len());
        for (name, s) in labels.iter().zip(&succ) {
            if s.len() != n {
                return Err(SchreierError::InvalidGraph(format!(
                    "label `{name}` has {} successors for {n} vertices",
                    s.len()
                )));
            }
            let p = Permutation::from_images(s.clone()).map_err(|_| {
                SchreierError::InvalidGraph(format!("label `{name}` does not permute the vertices"))
            })?;
            label_elements.push(p);
        }
        Ok(Self {
            vertex_names,
            labels,
            label_elements,
            succ,
            cosets: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Group elements of the labels. For graphs built by
    /// [`SchreierGraph::from_succ`] these are the successor permutations.
    pub fn label_elements(&self) -> &[Permutation] {
        &self.label_elements
    }

    pub fn label_index(&self, label: &str) -> Result<usize, SchreierError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SchreierError::UnknownLabel(label.to_string()))
    }

    /// `succ(label)[i]` is the vertex `α(z)(v_i)`.
    pub fn succ(&self, label: usize) -> &[usize] {
        &self.succ[label]
    }

    pub fn succ_all(&self) -> &[Vec<usize>] {
        &self.succ
    }

    /// `α(z⁻¹)` as an array.
    pub fn pred(&self, label: usize) -> Vec<usize> {
        let s = &self.succ[label];
        let mut p = vec![0; s.len()];
        for (i, &j) in s.iter().enumerate() {
            p[j] = i;
        }
        p
    }

    /// Coset representative of each vertex, if the graph came from a group.
    pub fn representatives(&self) -> Option<&[Permutation]> {
        self.cosets.as_ref().map(|c| c.reps.as_slice())
    }

    /// `α(x)(v)` for an arbitrary group element `x`, if the graph came from a group.
    pub fn act(&self, x: &Permutation, vertex: usize) -> Option<usize> {
        let c = self.cosets.as_ref()?;
        let coset = c.table.index_of(&c.reps[vertex].then(x))?;
        Some(c.vertex_of[coset])
    }

    /// Renumbers the vertices: old vertex `i` becomes `perm[i]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Self, SchreierError> {
        let n = self.vertex_count();
        let p = Permutation::from_images(perm.to_vec())
            .ok()
            .filter(|p| p.degree() == n)
            .ok_or_else(|| SchreierError::VertexMap("not a permutation of the vertices".into()))?;
        let inv = p.inverse();
        let names = (0..n)
            .map(|new| self.vertex_names[inv.apply(new)].clone())
            .collect();
        let succ = self
            .succ
            .iter()
            .map(|s| (0..n).map(|new| p.apply(s[inv.apply(new)])).collect())
            .collect();
        Self::from_succ(names, self.labels.clone(), succ)
    }

    /// Single-label cycle decomposition, fixed points included. Each cycle
    /// starts at its smallest vertex and follows `succ`; cycles are sorted by
    /// that vertex.
    pub fn label_cycles(&self, label: usize) -> CycleDecomposition {
        let s = &self.succ[label];
        let mut seen = vec![false; s.len()];
        let mut cycles = Vec::new();
        for start in 0..s.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = s[v];
            }
            cycles.push(cycle);
        }
        CycleDecomposition {
            label: self.labels[label].clone(),
            cycles,
        }
    }

    pub fn label_cycles_by_name(&self, label: &str) -> Result<CycleDecomposition, SchreierError> {
        Ok(self.label_cycles(self.label_index(label)?))
    }

    pub fn classify_labels(&self) -> AdmissibilityReport {
        let labels = (0..self.labels.len())
            .map(|l| LabelReport {
                label: self.labels[l].clone(),
                verdict: classify_cycles(&self.label_cycles(l)),
            })
            .collect();
        AdmissibilityReport { labels }
    }

    /// Graphviz rendering with one edge style per label.
    pub fn export_dot(&self) -> String {
        const STYLES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];
        const COLORS: [&str; 6] = ["black", "blue", "red", "darkgreen", "purple", "orange"];
        let mut out = String::from("digraph schreier {\n  node [shape=circle];\n");
        for (i, name) in self.vertex_names.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", escape(name));
        }
        for (l, label) in self.labels.iter().enumerate() {
            let style = STYLES[l % STYLES.len()];
            let color = COLORS[l % COLORS.len()];
            for (i, &j) in self.succ[l].iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  v{i} -> v{j} [label=\"{}\", class=\"label{l}\", style={style}, color={color}];",
                    escape(label)
                );
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertex_names.clone(),
            labels: self.labels.clone(),
            succ: self
                .labels
                .iter()
                .cloned()
                .zip(self.succ.iter().cloned())
                .collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self, SchreierError> {
        let succ = doc
            .labels
            .iter()
            .map(|l| {
                doc.succ
                    .get(l)
                    .cloned()
                    .ok_or_else(|| SchreierError::UnknownLabel(l.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if doc.succ.len() != doc.labels.len() {
            return Err(SchreierError::InvalidGraph(
                "successor map has labels not in the label list".into(),
            ));
        }
        Self::from_succ(doc.vertices.clone(), doc.labels.clone(), succ)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON form `{vertices, labels, succ: {label: [indices]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub labels: Vec<String>,
    pub succ: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    pub label: String,
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    /// Cycle lengths in ascending order.
    pub fn lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InadmissibleReason {
    /// every cycle has length 1 or 2
    NoLongCycle,
    /// two or more cycles of length 3 or 4
    MultipleLongCycles,
    /// some cycle has length at least 5
    CycleTooLong,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LabelVerdict {
    Admissible { cycle: Vec<usize> },
    Inadmissible { reason: InadmissibleReason },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelReport {
    pub label: String,
    #[serde(flatten)]
    pub verdict: LabelVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub labels: Vec<LabelReport>,
}

impl AdmissibilityReport {
    /// `(label index, oriented cycle)` for every admissible label, in label order.
    pub fn admissible(&self) -> Vec<(usize, &[usize])> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(i, r)| match &r.verdict {
                LabelVerdict::Admissible { cycle } => Some((i, cycle.as_slice())),
                LabelVerdict::Inadmissible { .. } => None,
            })
            .collect()
    }

    pub fn any_admissible(&self) -> bool {
        !self.admissible().is_empty()
    }
}

fn classify_cycles(d: &CycleDecomposition) -> LabelVerdict {
    if d.cycles.iter().any(|c| c.len() >= 5) {
        return LabelVerdict::Inadmissible {
            reason: InadmissibleReason::CycleTooLong,
        };
    }
    let long: Vec<&Vec<usize>> = d.cycles.iter().filter(|c| c.len() >= 3).collect();
    match long.as_slice() {
        [] => LabelVerdict::Inadmissible {
            reason: InadmissibleReason::NoLongCycle,
        },
        [c] => LabelVerdict::Admissible {
            cycle: (*c).clone(),
        },
        _ => LabelVerdict::Inadmissible {
            reason: InadmissibleReason::MultipleLongCycles,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoMode {
    ExactLabels,
    AllowLabelPermutation,
}

/// A witness `g1 ≅ g2`: vertex `i` of `g1` maps to `vertex_map[i]` and label
/// `l` of `g1` to label `label_map[l]` of `g2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphIsomorphism {
    pub vertex_map: Vec<usize>,
    pub label_map: Vec<usize>,
}

/// Searches for a labeled digraph isomorphism. Label bijections are tried in
/// lexicographic order, vertex images in ascending order; the first witness
/// found is returned.
pub fn digraph_isomorphic(
    g1: &SchreierGraph,
    g2: &SchreierGraph,
    mode: IsoMode,
) -> Option<GraphIsomorphism> {
    let n = g1.vertex_count();
    let k = g1.labels.len();
    if n != g2.vertex_count() || k != g2.labels.len() {
        return None;
    }
    let label_maps: Vec<Vec<usize>> = match mode {
        IsoMode::ExactLabels => vec![(0..k).collect()],
        IsoMode::AllowLabelPermutation => permutations(k),
    };
    for label_map in label_maps {
        let s2: Vec<&[usize]> = label_map.iter().map(|&l| g2.succ(l)).collect();
        let p2: Vec<Vec<usize>> = label_map.iter().map(|&l| g2.pred(l)).collect();
        let p1: Vec<Vec<usize>> = (0..k).map(|l| g1.pred(l)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if extend(g1, &p1, &s2, &p2, &mut map, &mut used) {
            return Some(GraphIsomorphism {
                vertex_map: map,
                label_map,
            });
        }
    }
    None
}

fn extend(
    g1: &SchreierGraph,
    p1: &[Vec<usize>],
    s2: &[&[usize]],
    p2: &[Vec<usize>],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(v) = map.iter().position(|&x| x == usize::MAX) else {
        return true;
    };
    for target in 0..map.len() {
        if used[target] {
            continue;
        }
        let saved_map = map.clone();
        let saved_used = used.clone();
        if propagate(g1, p1, s2, p2, map, used, v, target) && extend(g1, p1, s2, p2, map, used) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

/// Assigns `v ↦ target` and follows every edge of `v`'s component.
#[allow(clippy::too_many_arguments)]
fn propagate(
    g1: &SchreierGraph,
    p1: &[Vec<usize>],
    s2: &[&[usize]],
    p2: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
    v: usize,
    target: usize,
) -> bool {
    let mut stack = vec![(v, target)];
    while let Some((a, b)) = stack.pop() {
        if map[a] != usize::MAX {
            if map[a] != b {
                return false;
            }
            continue;
        }
        if used[b] {
            return false;
        }
        map[a] = b;
        used[b] = true;
        for l in 0..s2.len() {
            stack.push((g1.succ(l)[a], s2[l][b]));
            stack.push((p1[l][a], p2[l][b]));
        }
    }
    true
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn s4_graph() -> SchreierGraph {
        let c = GeneratorSystem::new(vec![
            ("z1".into(), p("(1 2 3)", 4)),
            ("z2".into(), p("(1 2 3 4)", 4)),
        ])
        .unwrap();
        let g = c.generate(DEFAULT_ELEMENT_CAP).unwrap();
        let layout = VertexLayout {
            entries: vec![
                (p("()", 4), "He".into()),
                (p("(3 4)", 4), "H(34)".into()),
                (p("(2 3 4)", 4), "H(24)".into()),
                (p("(1 2 3 4)", 4), "H(14)".into()),
            ],
        };
        build_schreier(&g, &[p("(1 2)", 4), p("(2 3)", 4)], &c, Some(&layout)).unwrap()
    }

    #[test]
    fn s4_successors() {
        let g = s4_graph();
        assert_eq!(g.succ(0), &[0, 3, 1, 2]);
        assert_eq!(g.succ(1), &[3, 0, 1, 2]);
        assert_eq!(g.label_cycles(0).lengths(), vec![1, 3]);
        assert_eq!(g.label_cycles(1).lengths(), vec![4]);
    }

    #[test]
    fn action_is_a_right_action() {
        let g = s4_graph();
        let group = FiniteGroup::generate(&[p("(1 2 3)", 4), p("(1 2 3 4)", 4)], 100).unwrap();
        for x in group.elements() {
            for y in group.elements().iter().step_by(5) {
                for v in 0..4 {
                    let xy = x.then(y);
                    let lhs = g.act(&xy, v).unwrap();
                    let rhs = g.act(y, g.act(x, v).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn default_layout_is_bfs_from_h() {
        let c = GeneratorSystem::new(vec![("z".into(), p("(1 2 3)", 3))]).unwrap();
        let g = c.generate(10).unwrap();
        let graph = build_schreier(&g, &[], &c, None).unwrap();
        assert_eq!(graph.vertex_names()[0], "He");
        assert_eq!(graph.vertex_count(), 3);
        // BFS visits α(z⁻¹)(He) before α(z)(He)
        assert_eq!(graph.pred(0)[0], 1);
    }

    #[test]
    fn classification() {
        let g = s4_graph();
        let r = g.classify_labels();
        assert_eq!(r.admissible().len(), 2);
        assert_eq!(r.admissible()[0].1, &[1, 3, 2]);
        assert_eq!(r.admissible()[1].1, &[0, 3, 2, 1]);

        let c5 = SchreierGraph::from_succ(
            (0..5).map(|i| i.to_string()).collect(),
            vec!["z".into()],
            vec![vec![1, 2, 3, 4, 0]],
        )
        .unwrap();
        assert_eq!(
            c5.classify_labels().labels[0].verdict,
            LabelVerdict::Inadmissible {
                reason: InadmissibleReason::CycleTooLong
            }
        );
        let two = SchreierGraph::from_succ(
            (0..7).map(|i| i.to_string()).collect(),
            vec!["a".into(), "b".into()],
            vec![vec![1, 0, 2, 4, 5, 3, 6], vec![1, 2, 0, 4, 5, 3, 6]],
        )
        .unwrap();
        let r = two.classify_labels();
        assert!(matches!(
            r.labels[0].verdict,
            LabelVerdict::Admissible { .. }
        ));
        assert_eq!(
            r.labels[1].verdict,
            LabelVerdict::Inadmissible {
                reason: InadmissibleReason::MultipleLongCycles
            }
        );
    }

    #[test]
    fn labels_must_generate() {
        let c = GeneratorSystem::new(vec![("z".into(), p("(1 2 3)", 4))]).unwrap();
        let g = FiniteGroup::generate(&[p("(1 2 3)", 4), p("(1 2 3 4)", 4)], 100).unwrap();
        assert!(matches!(
            build_schreier(&g, &[], &c, None),
            Err(SchreierError::GeneratorsDoNotGenerate {
                generated: 3,
                expected: 24
            })
        ));
    }

    #[test]
    fn bad_layouts() {
        let c = GeneratorSystem::new(vec![("z".into(), p("(1 2 3)", 3))]).unwrap();
        let g = c.generate(10).unwrap();
        let dup = VertexLayout {
            entries: vec![
                (p("()", 3), "a".into()),
                (p("()", 3), "b".into()),
                (p("(1 3 2)", 3), "c".into()),
            ],
        };
        assert!(matches!(
            build_schreier(&g, &[], &c, Some(&dup)),
            Err(SchreierError::VertexMap(_))
        ));
    }

    #[test]
    fn isomorphism_search() {
        let g = s4_graph();
        let id = digraph_isomorphic(&g, &g, IsoMode::ExactLabels).unwrap();
        assert_eq!(id.vertex_map, vec![0, 1, 2, 3]);
        let perm = vec![2, 0, 3, 1];
        let h = g.permute_vertices(&perm).unwrap();
        let w = digraph_isomorphic(&g, &h, IsoMode::ExactLabels).unwrap();
        assert_eq!(w.vertex_map, perm);
        // swapping the labels cannot match cycle types {1,3} and {4}
        let swapped = SchreierGraph::from_succ(
            h.vertex_names().to_vec(),
            h.labels().to_vec(),
            vec![h.succ(1).to_vec(), h.succ(0).to_vec()],
        )
        .unwrap();
        assert!(digraph_isomorphic(&g, &swapped, IsoMode::ExactLabels).is_none());
        let w = digraph_isomorphic(&g, &swapped, IsoMode::AllowLabelPermutation).unwrap();
        assert_eq!(w.label_map, vec![1, 0]);
    }

    #[test]
    fn dot_export() {
        let one =
            SchreierGraph::from_succ(vec!["He".into()], vec!["z".into()], vec![vec![0]]).unwrap();
        let dot = one.export_dot();
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("v0 -> v0"));
        assert_eq!(s4_graph().export_dot().matches("->").count(), 8);
    }

    #[test]
    fn doc_round_trip() {
        let g = s4_graph();
        let back = SchreierGraph::from_doc(&g.to_doc()).unwrap();
        assert_eq!(back.succ_all(), g.succ_all());
        assert_eq!(back.vertex_names(), g.vertex_names());
    }
}
