//! Quivers with relations and their compilation to path-basis algebras.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Arrow, AssocAlgebra, PathWord};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

pub const DEFAULT_MAX_LEN: usize = 30;
const PATH_LIMIT: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n_vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(label, source, target)` with vertices numbered from 1.
    pub fn new<S: AsRef<str>>(n_vertices: usize, arrows: &[(S, usize, usize)]) -> Result<Self> {
        let mut out = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            let label = label.as_ref();
            if *s == 0 || *t == 0 || *s > n_vertices || *t > n_vertices {
                return Err(Error::InvalidQuiver(format!("arrow {label} has an endpoint outside 1..{n_vertices}")));
            }
            if label.is_empty() || label.contains('*') || label.contains(char::is_whitespace) {
                return Err(Error::InvalidQuiver(format!("bad arrow label {label:?}")));
            }
            if out.iter().any(|a: &Arrow| a.label == label) || is_trivial_label(label) {
                return Err(Error::InvalidQuiver(format!("duplicate or reserved arrow label {label}")));
            }
            out.push(Arrow {
                label: label.to_string(),
                source: s - 1,
                target: t - 1,
            });
        }
        Ok(Quiver {
            n_vertices,
            arrows: out,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// The path through the given arrow labels, checking composability.
    pub fn path<S: AsRef<str>>(&self, labels: &[S]) -> Result<PathWord> {
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            idx.push(
                self.arrow_index(l)
                    .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow {l}")))?,
            );
        }
        let Some(&first) = idx.first() else {
            return Err(Error::InvalidRelation("empty path in a relation".into()));
        };
        for w in idx.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::InvalidRelation(format!(
                    "{} does not end where {} starts",
                    self.arrows[w[0]].label, self.arrows[w[1]].label
                )));
            }
        }
        Ok(PathWord {
            source: self.arrows[first].source,
            target: self.arrows[*idx.last().unwrap()].target,
            arrows: idx,
        })
    }
}

fn is_trivial_label(l: &str) -> bool {
    l.strip_prefix('e').is_some_and(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()))
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F: Field> {
    pub terms: Vec<(F::Elem, PathWord)>,
}

impl<F: Field> Relation<F> {
    pub fn new(terms: Vec<(F::Elem, PathWord)>) -> Result<Self> {
        let mut merged: BTreeMap<PathWord, F::Elem> = BTreeMap::new();
        for (c, w) in terms {
            if w.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "term of length {} (relations must lie in the square of the arrow ideal)",
                    w.len()
                )));
            }
            let e = merged.entry(w).or_insert_with(|| c.sub(&c));
            *e = e.add(&c);
        }
        let terms: Vec<(F::Elem, PathWord)> =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect();
        if let Some((_, w0)) = terms.first() {
            if terms.iter().any(|(_, w)| w.source != w0.source || w.target != w0.target) {
                return Err(Error::InvalidRelation("terms are not parallel paths".into()));
            }
        }
        Ok(Relation { terms })
    }

    /// Terms given as arrow-label sequences.
    pub fn from_labels<S: AsRef<str>>(q: &Quiver, terms: &[(F::Elem, Vec<S>)]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (c, labels) in terms {
            out.push((c.clone(), q.path(labels)?));
        }
        Self::new(out)
    }

    fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).min().unwrap_or(0)
    }
}

/// A quiver with relations together with its compiled algebra.
#[derive(Clone, Debug)]
pub struct BoundQuiverAlgebra<F: Field> {
    pub quiver: Quiver,
    pub relations: Vec<Relation<F>>,
    pub algebra: AssocAlgebra<F>,
}

impl<F: Field> BoundQuiverAlgebra<F> {
    pub fn compile(field: &F, quiver: Quiver, relations: Vec<Relation<F>>, max_len: usize) -> Result<Self> {
        let algebra = compile_bqa(&quiver, &relations, field, max_len)?;
        Ok(BoundQuiverAlgebra {
            quiver,
            relations,
            algebra,
        })
    }
}

/// Longer paths first, then lexicographically larger arrow sequences.
fn deglex_desc(a: &PathWord, b: &PathWord) -> Ordering {
    b.len()
        .cmp(&a.len())
        .then_with(|| b.arrows.cmp(&a.arrows))
        .then_with(|| b.source.cmp(&a.source))
}

fn all_paths(q: &Quiver, max: usize) -> Option<Vec<PathWord>> {
    let mut out: Vec<PathWord> = (0..q.n_vertices).map(PathWord::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for (k, a) in q.arrows.iter().enumerate() {
                if a.source == w.target {
                    let mut arrows = w.arrows.clone();
                    arrows.push(k);
                    next.push(PathWord {
                        source: w.source,
                        target: a.target,
                        arrows,
                    });
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > PATH_LIMIT {
            return None;
        }
        frontier = next;
    }
    Some(out)
}

fn concat(a: &PathWord, b: &PathWord) -> PathWord {
    let mut arrows = a.arrows.clone();
    arrows.extend_from_slice(&b.arrows);
    PathWord {
        source: a.source,
        target: b.target,
        arrows,
    }
}

/// Compiles `KQ / I` to a path-basis algebra.
///
/// Works modulo `J^{L+1}` for `L = 1, 2, ...` until the dimension of
/// `KQ / (I + J^{L+1})` stops growing.
pub fn compile_bqa<F: Field>(
    q: &Quiver,
    rels: &[Relation<F>],
    field: &F,
    max_len: usize,
) -> Result<AssocAlgebra<F>> {
    for r in rels {
        for (_, w) in &r.terms {
            if w.arrows.iter().any(|&a| a >= q.arrows.len()) {
                return Err(Error::InvalidRelation("relation uses an unknown arrow".into()));
            }
        }
    }
    let mut prev_dim = None;
    for l in 1..=max_len + 1 {
        let Some(mut paths) = all_paths(q, l) else {
            return Err(Error::NotAdmissible(l));
        };
        paths.sort_by(deglex_desc);
        let col: HashMap<&PathWord, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for r in rels.iter().filter(|r| !r.terms.is_empty()) {
            let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
            let room = l.saturating_sub(r.min_len());
            if r.min_len() > l {
                continue;
            }
            for p in paths.iter().filter(|p| p.target == s && p.len() <= room) {
                for suf in paths.iter().filter(|x| x.source == t && p.len() + x.len() <= room) {
                    let mut row = vec![field.zero(); paths.len()];
                    for (c, w) in &r.terms {
                        let full = concat(&concat(p, w), suf);
                        if full.len() <= l {
                            let k = col[&full];
                            row[k] = row[k].add(c);
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let m = Matrix::from_rows(field, paths.len(), &rows)?;
        let red = m.rref();
        let pivot_of: HashMap<usize, usize> = red.pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        // J^l lies in I + J^{l+1} exactly when the quotient stopped growing
        let dim_here = paths.len() - red.rank;
        if prev_dim != Some(dim_here) {
            prev_dim = Some(dim_here);
            continue;
        }
        let mut standard: Vec<usize> = (0..paths.len()).filter(|k| !pivot_of.contains_key(k)).collect();
        standard.sort_by(|&a, &b| {
            let (x, y) = (&paths[a], &paths[b]);
            x.len().cmp(&y.len()).then(x.source.cmp(&y.source)).then(x.arrows.cmp(&y.arrows))
        });
        let pos: HashMap<usize, usize> = standard.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let reduce = |w: &PathWord| -> Vec<(usize, F::Elem)> {
            if w.len() > l {
                return Vec::new();
            }
            let k = col[w];
            if let Some(&i) = pos.get(&k) {
                return vec![(i, field.one())];
            }
            let row = red.reduced.row(pivot_of[&k]);
            let mut out: Vec<(usize, F::Elem)> = standard
                .iter()
                .filter(|&&c| !row[c].is_zero())
                .map(|&c| (pos[&c], row[c].neg()))
                .collect();
            out.sort_by_key(|t| t.0);
            out
        };
        let words: Vec<PathWord> = standard.iter().map(|&k| paths[k].clone()).collect();
        let d = words.len();
        let mut table = Vec::with_capacity(d * d);
        for a in &words {
            for b in &words {
                if a.target == b.source {
                    table.push(reduce(&concat(a, b)));
                } else {
                    table.push(Vec::new());
                }
            }
        }
        return AssocAlgebra::from_paths(field, q.n_vertices, q.arrows.clone(), words, table, None);
    }
    Err(Error::NotAdmissible(max_len))
}
