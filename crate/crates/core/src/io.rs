//! JSON file formats and the workspace manifest.
//!
//! Algebra file:
//!
//! ```json
//! {"schema": 1,
//!  "vertices": ["0", "1", "2"],
//!  "arrows": [{"name": "a", "src": "1", "tgt": "0"}, {"name": "b", "src": "0", "tgt": "2"}],
//!  "relations": [[{"coef": "1", "path": ["b", "a"]}]],
//!  "field": {"kind": "Fp", "p": 2}}
//! ```
//!
//! Paths list their arrows left factor first, composing right to left, so
//! `["b", "a"]` is `b` after `a`. Module files name their algebra file
//! (relative to the module file) and give one matrix per arrow, shaped
//! `dims[tgt] x dims[src]`. Entries are integers or strings such as `"-3/2"`.

use crate::algebra::{
    build_algebra, Arrow, BasisElt, PathBasisAlgebra, Quiver, Relation, StructAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::{Elem, Field, Matrix};
use crate::module::Module;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn parse(&self, f: &Field) -> Result<Elem> {
        match self {
            Entry::Int(v) => Ok(f.from_i64(*v)),
            Entry::Text(s) => f.parse(s),
        }
    }

    fn of(f: &Field, e: &Elem) -> Entry {
        match (f, e) {
            (Field::Prime(_), Elem::P(x)) => Entry::Int(*x as i64),
            _ => {
                let s = f.format(e);
                match s.strip_suffix("/1").map(str::parse::<i64>) {
                    Some(Ok(v)) => Entry::Int(v),
                    _ => Entry::Text(s),
                }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FieldSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldSpec {
    pub fn field(&self) -> Result<Field> {
        match (self.kind.as_str(), self.p) {
            ("Q", _) => Ok(Field::Rationals),
            ("Fp", Some(p)) => Field::prime(p),
            _ => Err(Error::Parse(format!("unknown field kind {:?}", self.kind))),
        }
    }

    pub fn of(f: &Field) -> Result<FieldSpec> {
        match f {
            Field::Rationals => Ok(FieldSpec {
                kind: "Q".into(),
                p: None,
            }),
            Field::Prime(p) => Ok(FieldSpec {
                kind: "Fp".into(),
                p: Some(*p),
            }),
            Field::Extension(_) => Err(Error::Parse("extension fields have no file format".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArrowSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermSpec {
    pub coef: Entry,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    #[serde(default = "schema_default")]
    pub schema: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    pub field: FieldSpec,
}

fn schema_default() -> u32 {
    SCHEMA_VERSION
}

fn check_schema(v: u32) -> Result<()> {
    if v > SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema version {v} is newer than {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

impl AlgebraFile {
    pub fn build(&self) -> Result<PathBasisAlgebra> {
        check_schema(self.schema)?;
        let f = self.field.field()?;
        let vertex = |l: &str| {
            self.vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    name: a.name.clone(),
                    src: vertex(&a.src)?,
                    tgt: vertex(&a.tgt)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let quiver = Quiver::new(self.vertices.clone(), arrows)?;
        let mut relations = vec![];
        for r in &self.relations {
            let mut terms = vec![];
            for t in r {
                let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
                terms.push((t.coef.parse(&f)?, quiver.path(&names)?));
            }
            relations.push(Relation::new(&f, terms)?);
        }
        build_algebra(quiver, relations, f)
    }

    pub fn of(a: &PathBasisAlgebra) -> Result<AlgebraFile> {
        let q = a.quiver();
        let f = a.field();
        Ok(AlgebraFile {
            schema: SCHEMA_VERSION,
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|x| ArrowSpec {
                    name: x.name.clone(),
                    src: q.vertices[x.src].clone(),
                    tgt: q.vertices[x.tgt].clone(),
                })
                .collect(),
            relations: a
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coef: Entry::of(f, c),
                            path: p.arrows.iter().map(|&i| q.arrows[i].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            field: FieldSpec::of(f)?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleFile {
    #[serde(default = "schema_default")]
    pub schema: u32,
    pub algebra: String,
    pub dims: Vec<usize>,
    pub maps: BTreeMap<String, Vec<Vec<Entry>>>,
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<Entry>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| Entry::of(m.field(), e)).collect())
        .collect()
}

fn matrix_from_rows(f: &Field, rows: usize, cols: usize, v: &[Vec<Entry>]) -> Result<Matrix> {
    if v.len() != rows || v.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("expected a {rows}x{cols} matrix")));
    }
    let data = v
        .iter()
        .flatten()
        .map(|e| e.parse(f))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(f.clone(), rows, cols, data)
}

impl ModuleFile {
    /// Generators are matched by label; arrows of a path algebra are labelled
    /// by their names.
    pub fn build(&self, alg: &Arc<StructAlgebra>) -> Result<Module> {
        check_schema(self.schema)?;
        let f = alg.field();
        if self.dims.len() != alg.n_vertices() {
            return Err(Error::Dimension(format!(
                "{} dimensions for {} vertices",
                self.dims.len(),
                alg.n_vertices()
            )));
        }
        let mut maps = vec![];
        for g in 0..alg.gens().len() {
            let b = alg.gen_elt(g);
            let (r, c) = (self.dims[b.tgt], self.dims[b.src]);
            maps.push(match self.maps.get(&b.label) {
                Some(v) => matrix_from_rows(f, r, c, v)?,
                None if r == 0 || c == 0 => Matrix::zeros(f, r, c),
                None => return Err(Error::Parse(format!("no matrix for {}", b.label))),
            });
        }
        for k in self.maps.keys() {
            if !(0..alg.gens().len()).any(|g| &alg.gen_elt(g).label == k) {
                return Err(Error::Parse(format!("unknown arrow {k:?}")));
            }
        }
        Module::new(alg.clone(), self.dims.clone(), maps)
    }

    pub fn of(m: &Module, algebra: &str) -> ModuleFile {
        let alg = m.alg();
        ModuleFile {
            schema: SCHEMA_VERSION,
            algebra: algebra.to_string(),
            dims: m.dims().to_vec(),
            maps: (0..alg.gens().len())
                .map(|g| (alg.gen_elt(g).label.clone(), matrix_rows(m.map(g))))
                .collect(),
        }
    }
}

/// Structure constants as sparse `[i, j, k, c]` triples (`b_i b_j` has
/// coefficient `c` on `b_k`), basis labels and idempotent flags.
pub fn struct_algebra_json(a: &StructAlgebra) -> Result<Value> {
    let f = a.field();
    let mut table = vec![];
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.product(i, j) {
                if !f.is_zero(c) {
                    table.push(json!([i, j, k, Entry::of(f, c)]));
                }
            }
        }
    }
    let basis: Vec<Value> = a
        .basis()
        .iter()
        .map(|b| json!({"label": b.label, "src": b.src, "tgt": b.tgt, "factors": b.factors, "idempotent": b.is_idempotent()}))
        .collect();
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "field": FieldSpec::of(f)?,
        "vertices": a.vertices(),
        "special": a.special(),
        "gens": a.gens(),
        "basis": basis,
        "products": table,
        "fingerprint": a.fingerprint(),
    }))
}

#[derive(Deserialize)]
struct BasisSpec {
    label: String,
    src: usize,
    tgt: usize,
    factors: Vec<usize>,
}

#[derive(Deserialize)]
struct StructSpec {
    schema: u32,
    field: FieldSpec,
    vertices: Vec<String>,
    special: Vec<bool>,
    gens: Vec<usize>,
    basis: Vec<BasisSpec>,
    products: Vec<(usize, usize, usize, Entry)>,
}

pub fn struct_algebra_from_json(v: &Value) -> Result<StructAlgebra> {
    let s: StructSpec =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    check_schema(s.schema)?;
    let f = s.field.field()?;
    let k = s.basis.len();
    let mut table = vec![vec![vec![]; k]; k];
    for (i, j, r, c) in &s.products {
        if *i >= k || *j >= k || *r >= k {
            return Err(Error::Dimension("product index out of range".into()));
        }
        table[*i][*j].push((*r, c.parse(&f)?));
    }
    let basis = s
        .basis
        .into_iter()
        .map(|b| BasisElt {
            label: b.label,
            src: b.src,
            tgt: b.tgt,
            factors: b.factors,
        })
        .collect();
    StructAlgebra::new(f, s.vertices, basis, s.gens, table, s.special)
}

/// Dense action matrix of every basis element.
pub fn module_actions_json(m: &Module) -> Value {
    let alg = m.alg();
    let acts: BTreeMap<String, Vec<Vec<Entry>>> = alg
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| (b.label.clone(), matrix_rows(m.act(i))))
        .collect();
    json!({"schema": SCHEMA_VERSION, "algebra": alg.fingerprint(), "dims": m.dims(), "actions": acts})
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> Result<PathBasisAlgebra> {
    read_json::<AlgebraFile>(path)?.build()
}

/// Loads a module file and the algebra file it names.
pub fn load_module(path: &Path) -> Result<(PathBasisAlgebra, Module)> {
    let file: ModuleFile = read_json(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let a = load_algebra(&dir.join(&file.algebra))?;
    let m = file.build(a.structure())?;
    Ok((a, m))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Canonical text of a JSON value: pretty-printed, keys sorted, trailing
/// newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct ManifestEntry {
    pub sha256: String,
    /// Input name -> hash of the input it was built from.
    pub inputs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Manifest {
    pub schema: u32,
    pub artifacts: BTreeMap<String, ManifestEntry>,
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            schema: SCHEMA_VERSION,
            artifacts: BTreeMap::new(),
        }
    }
}

/// A directory of artifacts with a `manifest.json` of content hashes.
pub struct Workspace {
    pub root: PathBuf,
}

impl Workspace {
    pub const MANIFEST: &'static str = "manifest.json";

    pub fn new(root: impl Into<PathBuf>) -> Result<Workspace> {
        let root = root.into();
        std::fs::create_dir_all(&root)
            .map_err(|e| Error::Io(format!("{}: {e}", root.display())))?;
        Ok(Workspace { root })
    }

    pub fn manifest(&self) -> Result<Manifest> {
        let p = self.root.join(Self::MANIFEST);
        if p.exists() {
            read_json(&p)
        } else {
            Ok(Manifest::default())
        }
    }

    /// Hash of a file in the workspace (or anywhere, for absolute paths).
    pub fn hash_of(&self, name: &Path) -> Result<String> {
        let p = self.root.join(name);
        let bytes = std::fs::read(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        Ok(sha256_hex(&bytes))
    }

    /// Writes `text` to `name` and records it with the hashes of `inputs`.
    pub fn write(&self, name: &str, text: &str, inputs: &[&Path]) -> Result<PathBuf> {
        let path = self.root.join(name);
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)
                .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        }
        let mut recorded = BTreeMap::new();
        for i in inputs {
            recorded.insert(i.display().to_string(), self.hash_of(i)?);
        }
        std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut m = self.manifest()?;
        m.artifacts.insert(
            name.to_string(),
            ManifestEntry {
                sha256: sha256_hex(text.as_bytes()),
                inputs: recorded,
            },
        );
        let mtext = to_text(&serde_json::to_value(&m).expect("serialisable"));
        std::fs::write(self.root.join(Self::MANIFEST), mtext)
            .map_err(|e| Error::Io(e.to_string()))?;
        Ok(path)
    }

    /// Names whose recorded hash no longer matches the file on disk.
    pub fn stale(&self) -> Result<Vec<String>> {
        let m = self.manifest()?;
        let mut out = vec![];
        for (name, e) in &m.artifacts {
            if self.hash_of(Path::new(name)).ok().as_deref() != Some(e.sha256.as_str()) {
                out.push(name.clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::{subspace_algebra, subspace_module};

    #[test]
    fn algebra_and_module_round_trip() {
        let a = subspace_algebra(2, Field::prime(3).unwrap()).unwrap();
        let file = AlgebraFile::of(&a).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let b = serde_json::from_str::<AlgebraFile>(&text)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(a, b);
        let m = subspace_module(&a).unwrap();
        let mf = ModuleFile::of(&m, "algebra.json");
        let n = serde_json::from_str::<ModuleFile>(&serde_json::to_string(&mf).unwrap())
            .unwrap()
            .build(b.structure())
            .unwrap();
        assert!(m.same_matrices(&n));
    }

    #[test]
    fn relations_and_rationals_parse() {
        let text = r#"{"vertices":["1","2","3"],
            "arrows":[{"name":"a","src":"1","tgt":"2"},{"name":"b","src":"2","tgt":"3"}],
            "relations":[[{"coef":"1","path":["b","a"]}]],
            "field":{"kind":"Q"}}"#;
        let a = serde_json::from_str::<AlgebraFile>(text)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(a.dim(), 5);
        let m: ModuleFile =
            serde_json::from_str(r#"{"algebra":"x","dims":[1,1,0],"maps":{"a":[["-3/2"]]}}"#)
                .unwrap();
        let m = m.build(a.structure()).unwrap();
        assert_eq!(m.map(0).get(0, 0), &Field::Rationals.parse("-3/2").unwrap());
        let again = AlgebraFile::of(&a).unwrap();
        assert_eq!(again.relations[0][0].path, vec!["b", "a"]);
    }

    #[test]
    fn struct_algebra_round_trip() {
        let a = subspace_algebra(3, Field::prime(2).unwrap()).unwrap();
        let v = struct_algebra_json(a.structure()).unwrap();
        let b = struct_algebra_from_json(&v).unwrap();
        assert_eq!(a.structure().fingerprint(), b.fingerprint());
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let bad: ModuleFile = serde_json::from_str(
            r#"{"algebra":"x","dims":[1,1,1],"maps":{"a1":[[1,0]],"a2":[[1]]}}"#,
        )
        .unwrap();
        assert!(matches!(bad.build(a.structure()), Err(Error::Dimension(_))));
        let unknown: ModuleFile = serde_json::from_str(
            r#"{"algebra":"x","dims":[1,1,1],"maps":{"z":[[1]],"a1":[[1]],"a2":[[1]]}}"#,
        )
        .unwrap();
        assert!(matches!(unknown.build(a.structure()), Err(Error::Parse(_))));
    }

    #[test]
    fn manifest_tracks_hashes() {
        let dir = std::env::temp_dir().join(format!("tiltrep-ws-{}", std::process::id()));
        let ws = Workspace::new(&dir).unwrap();
        ws.write("a.json", "{}\n", &[]).unwrap();
        ws.write("b.json", "[]\n", &[Path::new("a.json")]).unwrap();
        let m = ws.manifest().unwrap();
        assert_eq!(m.artifacts["b.json"].inputs["a.json"], sha256_hex(b"{}\n"));
        assert!(ws.stale().unwrap().is_empty());
        std::fs::write(dir.join("a.json"), "{ }").unwrap();
        assert_eq!(ws.stale().unwrap(), vec!["a.json".to_string()]);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
