//! Instance files: exact category, crossed-braiding and setting data as
//! canonical JSON.
//!
//! Scalars are `{"conductor": n, "coeffs": [[p, q], ...]}` in the power basis
//! of `Q(ζ_n)`, always written at their smallest conductor. F, R and action
//! blocks that are omitted are identities, and export omits exactly those, so
//! `export(load(f)) == f` for every file produced by export.

mod canonical;

pub use canonical::to_canonical_string;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{FusionRing, Mor, Obj, SkeletalCategory, Word};
use crate::gcrossed::{FiniteGroup, GCrossed};
use crate::induction::InductionSetting;
use crate::kernel::{BigRational, Field, Mat, Scalar};
use crate::qsystem::{EquivariantStructure, QSystem};
use crate::report::CheckReport;

pub const FORMAT: &str = "gxi-instance/1";

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("axiom failure: {suite}.{check} ({witness})")]
    Axiom {
        suite: String,
        check: String,
        witness: String,
        reports: Vec<CheckReport>,
    },
}

fn schema(msg: impl Into<String>) -> LoadError {
    LoadError::Schema(msg.into())
}

/// Integer that falls back to a decimal string outside `i64`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn from_big(n: &BigInt) -> Self {
        i64::try_from(n).map_or_else(|_| Int::Big(n.to_string()), Int::Small)
    }

    fn to_big(&self) -> Result<BigInt, LoadError> {
        match self {
            Int::Small(n) => Ok(BigInt::from(*n)),
            Int::Big(s) => s.parse().map_err(|_| schema(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarRepr {
    pub conductor: u32,
    pub coeffs: Vec<(Int, Int)>,
}

impl ScalarRepr {
    pub fn from_scalar(s: &Scalar) -> Self {
        let s = s.reduce_conductor();
        ScalarRepr {
            conductor: s.conductor(),
            coeffs: s
                .coeffs()
                .iter()
                .map(|q| (Int::from_big(q.numer()), Int::from_big(q.denom())))
                .collect(),
        }
    }

    pub fn to_scalar(&self) -> Result<Scalar, LoadError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, q)| {
                let q = q.to_big()?;
                if q == BigInt::from(0) {
                    return Err(schema("zero denominator"));
                }
                Ok(BigRational::new(p.to_big()?, q))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Scalar::from_coeffs(self.conductor, coeffs).map_err(|e| schema(e.to_string()))
    }
}

pub type MatrixRepr = Vec<Vec<ScalarRepr>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block3 {
    pub a: String,
    pub b: String,
    pub c: String,
    pub matrix: MatrixRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block4 {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub matrix: MatrixRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRepr {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRepr {
    /// Image of each label, in label order.
    pub perm: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<Block3>,
}

/// Per-channel blocks of a morphism between single objects, keyed by label.
pub type MorRepr = BTreeMap<String, MatrixRepr>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingRepr {
    pub name: String,
    pub group: GroupRepr,
    /// Image in the grading group of each element of `group`.
    pub proj: Vec<String>,
    pub theta: BTreeMap<String, u32>,
    pub w: MorRepr,
    pub x: MorRepr,
    pub sqrt_dtheta: ScalarRepr,
    pub z: BTreeMap<String, MorRepr>,
}

/// Golden values the engine must reproduce for one setting.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRepr {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    /// `(λ, μ, dim Hom)` for simples of equal degree.
    #[serde(default)]
    pub hom_dims: Vec<(String, String, u32)>,
    /// Underlying objects of the twisted modules, per element of `G`.
    #[serde(default)]
    pub sectors: BTreeMap<String, Vec<BTreeMap<String, u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub labels: Vec<String>,
    pub unit: String,
    pub duals: Vec<String>,
    /// Nonzero `N^{ab}_c` as `[a, b, c, N]`.
    pub fusion: Vec<(String, String, String, u32)>,
    pub dims: Vec<ScalarRepr>,
    #[serde(rename = "F", default, skip_serializing_if = "Vec::is_empty")]
    pub f: Vec<Block4>,
    pub group: GroupRepr,
    pub grading: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, ActionRepr>,
    #[serde(rename = "R", default, skip_serializing_if = "Vec::is_empty")]
    pub r: Vec<Block3>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub settings: Vec<SettingRepr>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, ExpectedRepr>,
}

impl InstanceFile {
    pub fn to_canonical_string(&self) -> String {
        to_canonical_string(&serde_json::to_value(self).expect("instance serializes"))
    }
}

pub fn parse(text: &str) -> Result<InstanceFile, LoadError> {
    let f: InstanceFile = serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        match e.classify() {
            serde_json::error::Category::Data => schema(format!("line {line}, column {column}: {e}")),
            _ => LoadError::Parse {
                line,
                column,
                msg: e.to_string(),
            },
        }
    })?;
    if f.format != FORMAT {
        return Err(schema(format!("unsupported format {:?}, expected {FORMAT:?}", f.format)));
    }
    Ok(f)
}

/// A loaded instance: one crossed category and its settings.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub description: String,
    pub gx: GCrossed<Scalar>,
    pub settings: Vec<InductionSetting<Scalar>>,
    pub expected: BTreeMap<String, ExpectedRepr>,
}

pub fn load_str(text: &str, validate: bool) -> Result<Instance, LoadError> {
    let inst = Instance::from_file(&parse(text)?)?;
    if validate {
        inst.ensure_valid()?;
    }
    Ok(inst)
}

pub fn load(path: impl AsRef<Path>, validate: bool) -> Result<Instance, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    load_str(&text, validate)
}

struct Names<'a> {
    what: &'static str,
    names: &'a [String],
}

impl Names<'_> {
    fn get(&self, n: &str) -> Result<usize, LoadError> {
        self.names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| schema(format!("unknown {} {n:?}", self.what)))
    }
}

fn matrix_from(m: &MatrixRepr) -> Result<Mat<Scalar>, LoadError> {
    let rows: Vec<Vec<Scalar>> = m
        .iter()
        .map(|r| r.iter().map(ScalarRepr::to_scalar).collect())
        .collect::<Result<_, _>>()?;
    if rows.is_empty() || rows[0].is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(schema("matrices must be nonempty and rectangular"));
    }
    Ok(Mat::from_rows(rows))
}

fn matrix_to(m: &Mat<Scalar>) -> MatrixRepr {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ScalarRepr::from_scalar).collect())
        .collect()
}

fn group_from(g: &GroupRepr) -> Result<FiniteGroup, LoadError> {
    let names = Names {
        what: "group element",
        names: &g.elements,
    };
    let table = g
        .table
        .iter()
        .map(|r| r.iter().map(|x| names.get(x)).collect())
        .collect::<Result<_, _>>()?;
    FiniteGroup::new(g.elements.clone(), table).map_err(|e| schema(e.to_string()))
}

fn group_to(g: &FiniteGroup) -> GroupRepr {
    GroupRepr {
        elements: g.names().to_vec(),
        table: g
            .table()
            .iter()
            .map(|r| r.iter().map(|&x| g.name(x).to_string()).collect())
            .collect(),
    }
}

/// Fills every nonempty block of the zero morphism `src → dst`.
fn mor_from(cat: &SkeletalCategory<Scalar>, src: Word, dst: Word, m: &MorRepr) -> Result<Mor<Scalar>, LoadError> {
    let labels = Names {
        what: "label",
        names: cat.ring().labels(),
    };
    let mut out = cat.zero_mor(src, dst);
    for (name, block) in m {
        let c = labels.get(name)?;
        let b = matrix_from(block)?;
        if b.shape() != out.blocks[c].shape() {
            return Err(schema(format!(
                "block {name} must be {:?}, got {:?}",
                out.blocks[c].shape(),
                b.shape()
            )));
        }
        out.blocks[c] = b;
    }
    for (c, b) in out.blocks.iter().enumerate() {
        if b.rows() > 0 && b.cols() > 0 && !m.contains_key(cat.ring().name(c)) {
            return Err(schema(format!("missing block {}", cat.ring().name(c))));
        }
    }
    Ok(out)
}

fn mor_to(cat: &SkeletalCategory<Scalar>, m: &Mor<Scalar>) -> MorRepr {
    m.blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.rows() > 0 && b.cols() > 0)
        .map(|(c, b)| (cat.ring().name(c).to_string(), matrix_to(b)))
        .collect()
}

fn obj_from(labels: &Names, rank: usize, m: &BTreeMap<String, u32>) -> Result<Obj, LoadError> {
    let mut mult = vec![0; rank];
    for (n, &k) in m {
        mult[labels.get(n)?] = k;
    }
    Ok(Obj::from_mult(mult))
}

/// Nonzero multiplicities of `x`, keyed by label.
pub fn obj_to<F: Field>(cat: &SkeletalCategory<F>, x: &Obj) -> BTreeMap<String, u32> {
    x.support()
        .map(|a| (cat.ring().name(a).to_string(), x.mult(a)))
        .collect()
}

impl Instance {
    pub fn from_file(f: &InstanceFile) -> Result<Self, LoadError> {
        let labels = Names {
            what: "label",
            names: &f.labels,
        };
        let r = f.labels.len();
        let mut sorted = f.labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != r {
            return Err(schema("label names must be distinct"));
        }
        if f.duals.len() != r || f.dims.len() != r || f.grading.len() != r {
            return Err(schema("duals, dims and grading need one entry per label"));
        }
        let dual = f.duals.iter().map(|d| labels.get(d)).collect::<Result<Vec<_>, _>>()?;
        let mut n = vec![0u32; r * r * r];
        for (a, b, c, k) in &f.fusion {
            let idx = (labels.get(a)? * r + labels.get(b)?) * r + labels.get(c)?;
            if n[idx] != 0 {
                return Err(schema(format!("fusion rule ({a},{b},{c}) listed twice")));
            }
            n[idx] = *k;
        }
        let ring = FusionRing::new(f.labels.clone(), labels.get(&f.unit)?, dual, |a, b, c| n[(a * r + b) * r + c])
            .map_err(|e| schema(e.to_string()))?;
        let dims = f.dims.iter().map(ScalarRepr::to_scalar).collect::<Result<Vec<_>, _>>()?;

        let mut fblocks = HashMap::new();
        for blk in &f.f {
            let key = (labels.get(&blk.a)?, labels.get(&blk.b)?, labels.get(&blk.c)?, labels.get(&blk.d)?);
            if fblocks.insert(key, matrix_from(&blk.matrix)?).is_some() {
                return Err(schema("F block listed twice"));
            }
        }
        let cat = SkeletalCategory::new(ring, |a, b, c, d| fblocks.get(&(a, b, c, d)).cloned(), dims)
            .map_err(|e| schema(e.to_string()))?;

        let group = group_from(&f.group)?;
        let elements = Names {
            what: "group element",
            names: &f.group.elements,
        };
        let grading = f.grading.iter().map(|g| elements.get(g)).collect::<Result<Vec<_>, _>>()?;
        let mut perm: Vec<Vec<usize>> = group.elements().map(|_| (0..r).collect()).collect();
        let mut vblocks = HashMap::new();
        for (g, act) in &f.action {
            let g = elements.get(g)?;
            if act.perm.len() != r {
                return Err(schema("action permutations need one image per label"));
            }
            perm[g] = act.perm.iter().map(|x| labels.get(x)).collect::<Result<_, _>>()?;
            for blk in &act.vertices {
                let key = (g, labels.get(&blk.a)?, labels.get(&blk.b)?, labels.get(&blk.c)?);
                if vblocks.insert(key, matrix_from(&blk.matrix)?).is_some() {
                    return Err(schema("action block listed twice"));
                }
            }
        }
        let mut rblocks = HashMap::new();
        for blk in &f.r {
            let key = (labels.get(&blk.a)?, labels.get(&blk.b)?, labels.get(&blk.c)?);
            if rblocks.insert(key, matrix_from(&blk.matrix)?).is_some() {
                return Err(schema("R block listed twice"));
            }
        }
        let gx = GCrossed::new(
            cat,
            group,
            grading,
            perm,
            |g, a, b, c| vblocks.get(&(g, a, b, c)).cloned(),
            |a, b, c| rblocks.get(&(a, b, c)).cloned(),
        )
        .map_err(|e| schema(e.to_string()))?;

        let mut settings = Vec::new();
        for s in &f.settings {
            if settings.iter().any(|t: &InductionSetting<Scalar>| t.name == s.name) {
                return Err(schema(format!("setting {:?} listed twice", s.name)));
            }
            settings.push(setting_from(&gx, &labels, s)?);
        }
        for name in f.expected.keys() {
            if !f.settings.iter().any(|s| &s.name == name) {
                return Err(schema(format!("expected results for unknown setting {name:?}")));
            }
        }
        Ok(Instance {
            name: f.name.clone(),
            description: f.description.clone(),
            gx,
            settings,
            expected: f.expected.clone(),
        })
    }

    pub fn to_file(&self) -> InstanceFile {
        let cat = self.gx.cat();
        let ring = cat.ring();
        let r = cat.rank();
        let name = |a: usize| ring.name(a).to_string();
        let mut fusion = Vec::new();
        let mut f = Vec::new();
        let mut rb = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let k = cat.n(a, b, c);
                    if k > 0 {
                        fusion.push((name(a), name(b), name(c), k as u32));
                    }
                    let m = self.gx.r_block(a, b, c);
                    if !m.is_identity() {
                        rb.push(Block3 {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                            matrix: matrix_to(m),
                        });
                    }
                    for d in 0..r {
                        let m = cat.f(a, b, c, d);
                        if !m.is_identity() {
                            f.push(Block4 {
                                a: name(a),
                                b: name(b),
                                c: name(c),
                                d: name(d),
                                matrix: matrix_to(m),
                            });
                        }
                    }
                }
            }
        }
        let group = self.gx.group();
        let mut action = BTreeMap::new();
        for g in group.elements() {
            let perm = &self.gx.perms()[g];
            let mut vertices = Vec::new();
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        let m = self.gx.vertex_action(g, a, b, c);
                        if m.rows() + m.cols() > 0 && !m.is_identity() {
                            vertices.push(Block3 {
                                a: name(a),
                                b: name(b),
                                c: name(c),
                                matrix: matrix_to(m),
                            });
                        }
                    }
                }
            }
            if !vertices.is_empty() || perm.iter().enumerate().any(|(i, &p)| i != p) {
                action.insert(
                    group.name(g).to_string(),
                    ActionRepr {
                        perm: perm.iter().map(|&p| name(p)).collect(),
                        vertices,
                    },
                );
            }
        }
        InstanceFile {
            format: FORMAT.into(),
            name: self.name.clone(),
            description: self.description.clone(),
            labels: ring.labels().to_vec(),
            unit: name(cat.unit()),
            duals: (0..r).map(|a| name(cat.dual(a))).collect(),
            fusion,
            dims: cat.dims().iter().map(ScalarRepr::from_scalar).collect(),
            f,
            group: group_to(group),
            grading: (0..r).map(|a| group.name(self.gx.grade(a)).to_string()).collect(),
            action,
            r: rb,
            settings: self.settings.iter().map(setting_to).collect(),
            expected: self.expected.clone(),
        }
    }

    pub fn export(&self) -> String {
        self.to_file().to_canonical_string()
    }

    pub fn validate(&self) -> Vec<CheckReport> {
        structural_reports(&self.gx, &self.settings)
    }

    pub fn ensure_valid(&self) -> Result<(), LoadError> {
        let reports = self.validate();
        let bad = reports
            .iter()
            .find_map(|r| r.first_failure().map(|c| (r.suite.clone(), c.clone())));
        match bad {
            None => Ok(()),
            Some((suite, c)) => Err(LoadError::Axiom {
                suite,
                check: c.id,
                witness: c.witness.unwrap_or_default(),
                reports,
            }),
        }
    }

    /// The named setting, or the first one.
    pub fn setting(&self, name: Option<&str>) -> Result<&InductionSetting<Scalar>, LoadError> {
        match name {
            None => self.settings.first().ok_or_else(|| schema("instance has no settings")),
            Some(n) => self
                .settings
                .iter()
                .find(|s| s.name == n)
                .ok_or_else(|| schema(format!("unknown setting {n:?}"))),
        }
    }
}

/// Ring, pentagon and crossed-axiom reports, then one per setting.
pub fn structural_reports<F: Field>(gx: &GCrossed<F>, settings: &[InductionSetting<F>]) -> Vec<CheckReport> {
    let cat = gx.cat();
    let mut ring = CheckReport::new("ring");
    let ax = cat.ring().check_axioms();
    ring.single("axioms", ax.is_ok(), || ax.clone().unwrap_err());
    let mut out = vec![ring];
    if ax.is_err() {
        return out;
    }
    out.push(cat.check_pentagon());
    out.push(gx.check_crossed_axioms());
    for s in settings {
        let mut rep = s.validate();
        rep.suite = format!("setting:{}", s.name);
        out.push(rep);
    }
    out
}

fn setting_from(
    gx: &GCrossed<Scalar>,
    labels: &Names,
    s: &SettingRepr,
) -> Result<InductionSetting<Scalar>, LoadError> {
    let cat = gx.cat();
    let group = group_from(&s.group)?;
    if s.proj.len() != group.order() {
        return Err(schema("proj needs one image per group element"));
    }
    let proj = s
        .proj
        .iter()
        .map(|g| gx.group().index(g).map_err(|e| schema(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let theta = obj_from(labels, cat.rank(), &s.theta)?;
    let tw = vec![theta.clone()];
    let w = mor_from(cat, vec![], tw.clone(), &s.w)?;
    let x = mor_from(cat, tw.clone(), vec![theta.clone(); 2], &s.x)?;
    let q = QSystem {
        theta: theta.clone(),
        w,
        x,
        sqrt_dtheta: s.sqrt_dtheta.to_scalar()?,
    };
    let mut z = Vec::with_capacity(group.order());
    for g in group.elements() {
        let blocks = s
            .z
            .get(group.name(g))
            .ok_or_else(|| schema(format!("missing z for {}", group.name(g))))?;
        let src = gx.act_word(proj[g], &tw);
        z.push(mor_from(cat, src, tw.clone(), blocks)?);
    }
    if s.z.len() != group.order() {
        return Err(schema("z lists an unknown group element"));
    }
    let eq = EquivariantStructure { group, proj, z };
    InductionSetting::new(s.name.clone(), gx.clone(), q, eq).map_err(|e| schema(e.to_string()))
}

fn setting_to(s: &InductionSetting<Scalar>) -> SettingRepr {
    let cat = s.gx.cat();
    let group = s.group();
    SettingRepr {
        name: s.name.clone(),
        group: group_to(group),
        proj: group
            .elements()
            .map(|g| s.gx.group().name(s.proj(g)).to_string())
            .collect(),
        theta: obj_to(cat, &s.q.theta),
        w: mor_to(cat, &s.q.w),
        x: mor_to(cat, &s.q.x),
        sqrt_dtheta: ScalarRepr::from_scalar(&s.q.sqrt_dtheta),
        z: group
            .elements()
            .map(|g| (group.name(g).to_string(), mor_to(cat, &s.z.z[g])))
            .collect(),
    }
}

/// Assembles an instance from in-memory data, e.g. to author a new file.
pub fn instance(
    name: impl Into<String>,
    description: impl Into<String>,
    gx: GCrossed<Scalar>,
    settings: Vec<InductionSetting<Scalar>>,
) -> Instance {
    Instance {
        name: name.into(),
        description: description.into(),
        gx,
        settings,
        expected: BTreeMap::new(),
    }
}
