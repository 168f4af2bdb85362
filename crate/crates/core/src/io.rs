//! JSON descriptions of algebras and modules.
//!
//! Vertices, arrow endpoints and orders are 1-based in files. Basis indices
//! in a structure table are positions in the `basis` list, 0-based.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Arrow, AssocAlgebra, PathWord};
use crate::error::{Error, Result};
use crate::families::{ExampleId, JordanType};
use crate::field::{Field, FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::module::ModuleRep;
use crate::quiver::{compile_bqa, Quiver, Relation, DEFAULT_MAX_LEN};
use crate::strat::verify::VerifyInput;
use crate::strat::IdempotentOrder;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime {
        p: u32,
    },
}

impl FieldJson {
    pub fn spec(&self) -> Result<FieldSpec> {
        let s = match self {
            FieldJson::Named(n) => n.parse()?,
            FieldJson::Prime { p } => FieldSpec::Prime(*p),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_spec(s: FieldSpec) -> Self {
        match s {
            FieldSpec::Rational => FieldJson::Named("Q".into()),
            FieldSpec::Prime(p) => FieldJson::Prime { p },
        }
    }
}

/// A named member of one of the built-in families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyRef {
    Cent { n: usize, parts: Vec<usize> },
    Schur { m: usize },
    Brauer { n: usize },
    Example { id: String },
}

impl FamilyRef {
    /// Parses `cent:3:1,2`, `schur:2`, `brauer:1` or an example id.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad family reference {s:?}"));
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let mut it = s.splitn(3, ':');
        match (it.next(), it.next(), it.next()) {
            (Some("cent"), Some(n), parts) => Ok(FamilyRef::Cent {
                n: num(n)?,
                parts: match parts {
                    None | Some("") => Vec::new(),
                    Some(p) => p.split(',').map(num).collect::<Result<_>>()?,
                },
            }),
            (Some("schur"), Some(m), None) => Ok(FamilyRef::Schur { m: num(m)? }),
            (Some("brauer"), Some(n), None) => Ok(FamilyRef::Brauer { n: num(n)? }),
            (Some(id), None, None) => {
                id.parse::<ExampleId>()?;
                Ok(FamilyRef::Example { id: id.to_string() })
            }
            _ => Err(bad()),
        }
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<VerifyInput<F>> {
        match self {
            FamilyRef::Cent { n, parts } => {
                let j = JordanType::new(*n, parts.clone())?;
                let mut inp = VerifyInput::from_jordan(&j, field)?;
                inp.label = format!("family:cent:{n}:{}", join(parts));
                Ok(inp)
            }
            FamilyRef::Schur { m } => VerifyInput::example(ExampleId::SchurA(*m), field),
            FamilyRef::Brauer { n } => VerifyInput::example(ExampleId::BrauerB(*n), field),
            FamilyRef::Example { id } => VerifyInput::example(id.parse()?, field),
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Path basis and sparse multiplication table `(r, s, t, coefficient)`,
/// sorted row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureJson {
    pub basis: Vec<String>,
    pub table: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema: u32,
    pub field: FieldJson,
    pub vertices: usize,
    pub arrows: Vec<(String, usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<(String, Vec<String>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
}

impl AlgebraFile {
    pub fn from_json(s: &str) -> Result<Self> {
        let f: AlgebraFile = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if f.schema != SCHEMA {
            return Err(Error::InvalidInput(format!("unsupported schema {}", f.schema)));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.spec()
    }

    /// Structure form of an algebra.
    pub fn from_algebra<F: Field>(a: &AssocAlgebra<F>, order: Option<&IdempotentOrder>, family: Option<FamilyRef>) -> Self {
        let d = a.dim();
        let mut table = Vec::new();
        for r in 0..d {
            for s in 0..d {
                let mut row: Vec<_> = a.basis_mul(r, s).iter().filter(|(_, c)| !c.is_zero()).collect();
                row.sort_by_key(|(t, _)| *t);
                table.extend(row.into_iter().map(|(t, c)| (r, s, *t, c.to_string())));
            }
        }
        AlgebraFile {
            schema: SCHEMA,
            field: FieldJson::from_spec(a.field().spec()),
            vertices: a.n_vertices(),
            arrows: a.arrows().iter().map(|x| (x.label.clone(), x.source + 1, x.target + 1)).collect(),
            relations: Vec::new(),
            order: order.map(IdempotentOrder::to_one_based),
            structure: Some(StructureJson {
                basis: a.labels().to_vec(),
                table,
            }),
            family,
            max_len: None,
        }
    }

    fn quiver(&self) -> Result<Quiver> {
        let arrows: Vec<(&str, usize, usize)> = self.arrows.iter().map(|(l, s, t)| (l.as_str(), *s, *t)).collect();
        Quiver::new(self.vertices, &arrows)
    }

    /// The algebra described by the arrows and either relations or a table.
    pub fn algebra<F: Field>(&self, field: &F) -> Result<Arc<AssocAlgebra<F>>> {
        let q = self.quiver()?;
        let a = match &self.structure {
            Some(st) => {
                if !self.relations.is_empty() {
                    return Err(Error::InvalidInput("give either relations or a structure table".into()));
                }
                let words = st
                    .basis
                    .iter()
                    .map(|l| parse_word(&q, l))
                    .collect::<Result<Vec<PathWord>>>()?;
                let d = words.len();
                let mut table = vec![Vec::new(); d * d];
                for (r, s, t, c) in &st.table {
                    if *r >= d || *s >= d || *t >= d {
                        return Err(Error::InvalidAlgebra("table index out of range".into()));
                    }
                    let c = field.parse(c)?;
                    if !c.is_zero() {
                        table[r * d + s].push((*t, c));
                    }
                }
                let arrows: Vec<Arrow> = q.arrows().to_vec();
                AssocAlgebra::from_paths(field, self.vertices, arrows, words, table, None)?
            }
            None => {
                let rels = self
                    .relations
                    .iter()
                    .map(|r| {
                        let terms = r
                            .iter()
                            .map(|(c, p)| Ok((field.parse(c)?, p.clone())))
                            .collect::<Result<Vec<_>>>()?;
                        Relation::from_labels(&q, &terms)
                    })
                    .collect::<Result<Vec<_>>>()?;
                compile_bqa(&q, &rels, field, self.max_len.unwrap_or(DEFAULT_MAX_LEN))?
            }
        };
        Ok(Arc::new(a))
    }

    fn order_for(&self, n: usize) -> Result<Option<IdempotentOrder>> {
        self.order
            .as_ref()
            .map(|o| {
                if o.len() != n {
                    return Err(Error::InvalidOrder(format!("order has {} entries for {n} vertices", o.len())));
                }
                IdempotentOrder::from_one_based(o)
            })
            .transpose()
    }

    /// Builds the input. A `family` entry supplies the extra data some
    /// properties need; the described algebra must then match it.
    pub fn load<F: Field>(&self, field: &F, label: &str) -> Result<VerifyInput<F>> {
        let a = self.algebra(field)?;
        let mut inp = match &self.family {
            Some(fam) => {
                let inp = fam.build(field)?;
                if *inp.algebra != *a {
                    return Err(Error::InvalidInput(format!(
                        "algebra does not match its family entry {}",
                        serde_json::to_string(fam).expect("serializable")
                    )));
                }
                inp
            }
            None => {
                let n = a.n_vertices();
                VerifyInput::from_algebra(label, a, IdempotentOrder::natural(n))
            }
        };
        if let Some(o) = self.order_for(inp.algebra.n_vertices())? {
            inp.order = o;
        }
        inp.label = label.to_string();
        Ok(inp)
    }
}

fn parse_word(q: &Quiver, label: &str) -> Result<PathWord> {
    if let Some(v) = label.strip_prefix('e').and_then(|x| x.parse::<usize>().ok()) {
        if v == 0 || v > q.n_vertices() {
            return Err(Error::InvalidAlgebra(format!("no vertex for basis element {label}")));
        }
        return Ok(PathWord::trivial(v - 1));
    }
    let parts: Vec<&str> = label.split('*').collect();
    q.path(&parts)
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    json!((0..m.rows())
        .map(|r| m.row(r).iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// `{"dims": [...], "arrows": {label: rows}}` with entries as strings.
pub fn module_to_json<F: Field>(m: &ModuleRep<F>) -> Value {
    let arrows: BTreeMap<&str, Value> = m
        .algebra()
        .arrows()
        .iter()
        .zip(m.arrow_matrices())
        .map(|(a, x)| (a.label.as_str(), matrix_to_json(x)))
        .collect();
    json!({"schema": SCHEMA, "dims": m.dims(), "arrows": arrows})
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    schema: u32,
    dims: Vec<usize>,
    arrows: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn module_from_json<F: Field>(a: &Arc<AssocAlgebra<F>>, s: &str) -> Result<ModuleRep<F>> {
    let f: ModuleFile = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
    if f.schema != SCHEMA {
        return Err(Error::InvalidInput(format!("unsupported schema {}", f.schema)));
    }
    if f.arrows.len() != a.arrows().len() {
        return Err(Error::InvalidModule("one matrix per arrow is required".into()));
    }
    let field = a.field();
    let mut mats = Vec::with_capacity(a.arrows().len());
    for arr in a.arrows() {
        let rows = f
            .arrows
            .get(&arr.label)
            .ok_or_else(|| Error::InvalidModule(format!("no matrix for arrow {}", arr.label)))?;
        let (nr, nc) = (*f.dims.get(arr.source).unwrap_or(&0), *f.dims.get(arr.target).unwrap_or(&0));
        if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
            return Err(Error::InvalidModule(format!("matrix for arrow {} has the wrong shape", arr.label)));
        }
        let data = rows.iter().flatten().map(|c| field.parse(c)).collect::<Result<Vec<_>>>()?;
        mats.push(Matrix::new(field, nr, nc, data)?);
    }
    ModuleRep::new(a, f.dims, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::rad_square_zero;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn structure_round_trip() {
        let f = Rationals;
        let a = rad_square_zero(&f).unwrap().algebra;
        let file = AlgebraFile::from_algebra(&a, None, None);
        let back = AlgebraFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        let b = back.algebra(&f).unwrap();
        assert_eq!(b.dim(), a.dim());
        assert_eq!(b.cartan_matrix(), a.cartan_matrix());
    }

    #[test]
    fn quiver_form_compiles() {
        let s = r#"{"schema": 1, "field": {"p": 101}, "vertices": 2,
            "arrows": [["alpha", 1, 1], ["beta", 2, 1]],
            "relations": [[["1", ["alpha", "alpha"]]], [["1", ["beta", "alpha"]]]]}"#;
        let file = AlgebraFile::from_json(s).unwrap();
        let f = PrimeField::new(101).unwrap();
        let a = file.algebra(&f).unwrap();
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn unknown_fields_rejected() {
        let s = r#"{"schema": 1, "field": "Q", "vertices": 1, "arrows": [], "colour": 3}"#;
        assert!(AlgebraFile::from_json(s).is_err());
        let s = r#"{"schema": 2, "field": "Q", "vertices": 1, "arrows": []}"#;
        assert!(AlgebraFile::from_json(s).is_err());
    }

    #[test]
    fn family_entry_is_checked() {
        let f = PrimeField::new(101).unwrap();
        let fam = FamilyRef::parse("cent:3:1").unwrap();
        let inp = fam.build(&f).unwrap();
        let file = AlgebraFile::from_algebra(&inp.algebra, Some(&inp.order), Some(fam));
        let back = AlgebraFile::from_json(&file.to_json()).unwrap().load(&f, "x").unwrap();
        assert!(back.gendo.is_some());
        assert_eq!(back.algebra.dim(), 6);
    }

    #[test]
    fn module_round_trip() {
        let f = Rationals;
        let a = Arc::new(rad_square_zero(&f).unwrap().algebra);
        let p = ModuleRep::projective(&a, 0);
        let s = module_to_json(&p).to_string();
        let q = module_from_json(&a, &s).unwrap();
        assert_eq!(q.dims(), p.dims());
        assert_eq!(q.arrow_matrices(), p.arrow_matrices());
    }
}
