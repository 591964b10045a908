//! JSON interchange for groups, algebras, modules, twisting systems,
//! φ-families and equivalence data.
//!
//! Scalars are strings read in the field of the enclosing structure, so
//! `"3"` means `3 mod 7` inside an `F_7` algebra. Degree keys are decimal
//! (`"g"` or `"g,h"`). An `"algebra"` (or `"source"`/`"target"`) entry may be
//! a path, resolved against the directory of the referring file, or an
//! inline object.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::marker::PhantomData;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::{self, DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::enriched::ModuleHomSpace;
use crate::equivalence::EquivalenceData;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar};
use crate::graded::{GradedAlgebra, GradedModule, GradedMorphism, GradedVectorSpace};
use crate::groups::{Degree, FiniteGroup, Group, IntegerWindow};
use crate::graded::shift_module;
use crate::graded::regular_module;
use crate::twist::{PhiFamily, TwistKind, TwistingSystem};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraWire {
    field: Field,
    group: Group,
    dims: BTreeMap<String, usize>,
    mult: BTreeMap<String, MatrixWire>,
    unit: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<Ref<AlgebraWire>>,
    dims: BTreeMap<String, usize>,
    action: BTreeMap<String, MatrixWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum TwistWire {
    Explicit {
        maps: BTreeMap<String, MatrixWire>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<(i64, i64)>,
    },
    Cocycle {
        alpha: BTreeMap<String, String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<(i64, i64)>,
    },
    Automorphism {
        sigma: BTreeMap<String, MatrixWire>,
        order: Option<usize>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiWire {
    source: Ref<AlgebraWire>,
    target: Ref<AlgebraWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<(i64, i64)>,
    maps: BTreeMap<String, MatrixWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RosterWire {
    shift: Degree,
    image: Ref<ModuleWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquivalenceWire {
    source: Ref<AlgebraWire>,
    target: Ref<AlgebraWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<(i64, i64)>,
    roster: Vec<RosterWire>,
    phi: BTreeMap<String, MatrixWire>,
    #[serde(default)]
    t: BTreeMap<String, BTreeMap<String, MatrixWire>>,
}

#[derive(Serialize)]
struct HomDegreeWire {
    degree: Degree,
    basis: Vec<BTreeMap<String, MatrixWire>>,
}

/// A file path or an inline object. Inline objects are read in place so
/// that parse errors keep their position.
enum Ref<T> {
    Path(String),
    Inline(Box<T>),
}

impl<T: Serialize> Serialize for Ref<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ref::Path(p) => s.serialize_str(p),
            Ref::Inline(v) => v.serialize(s),
        }
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Ref<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RefVisitor<T>(PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for RefVisitor<T> {
            type Value = Ref<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a file path or an inline object")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Ref<T>, E> {
                Ok(Ref::Path(v.to_string()))
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<Ref<T>, A::Error> {
                T::deserialize(de::value::MapAccessDeserializer::new(map)).map(|v| Ref::Inline(Box::new(v)))
            }
        }

        d.deserialize_any(RefVisitor(PhantomData))
    }
}

/// Where the text came from: a display name and the directory that
/// relative references resolve against.
#[derive(Clone, Debug)]
struct Origin {
    name: String,
    dir: PathBuf,
}

impl Origin {
    fn of(path: &Path) -> Origin {
        Origin {
            name: path.display().to_string(),
            dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        }
    }

    fn invalid(&self, context: impl Into<String>, e: Error) -> Error {
        match e {
            e @ (Error::Parse { .. } | Error::Invalid { .. } | Error::Io { .. }) => e,
            e => Error::Invalid {
                file: self.name.clone(),
                context: context.into(),
                message: e.to_string(),
            },
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_json<T: DeserializeOwned>(text: &str, name: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        Error::Parse {
            file: name.to_string(),
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

fn resolve<T: DeserializeOwned>(r: Ref<T>, origin: &Origin) -> Result<(T, Origin)> {
    match r {
        Ref::Inline(v) => Ok((*v, origin.clone())),
        Ref::Path(p) => {
            let path = origin.dir.join(p);
            let text = read(&path)?;
            Ok((parse_json(&text, &path.display().to_string())?, Origin::of(&path)))
        }
    }
}

fn degree(key: &str, origin: &Origin) -> Result<Degree> {
    key.trim().parse().map_err(|_| Error::Invalid {
        file: origin.name.clone(),
        context: format!("key {key:?}"),
        message: "expected a decimal degree".into(),
    })
}

fn pair(key: &str, origin: &Origin) -> Result<(Degree, Degree)> {
    let bad = || Error::Invalid {
        file: origin.name.clone(),
        context: format!("key {key:?}"),
        message: "expected a pair of degrees \"g,h\"".into(),
    };
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((degree(a, origin)?, degree(b, origin)?))
}

fn window(w: Option<(i64, i64)>, origin: &Origin) -> Result<Option<IntegerWindow>> {
    w.map(|(lo, hi)| IntegerWindow::new(lo, hi).map_err(|e| origin.invalid("window", e)))
        .transpose()
}

fn matrix(w: MatrixWire, field: Field, context: &str, origin: &Origin) -> Result<Matrix> {
    let entries = w
        .entries
        .iter()
        .map(|s| field.parse_scalar(s))
        .collect::<Result<Vec<Scalar>>>()
        .map_err(|e| origin.invalid(context, e))?;
    Matrix::new(field, w.rows, w.cols, entries).map_err(|e| origin.invalid(context, e))
}

fn matrices<K: Ord>(
    map: BTreeMap<String, MatrixWire>,
    field: Field,
    what: &str,
    key: impl Fn(&str, &Origin) -> Result<K>,
    origin: &Origin,
) -> Result<BTreeMap<K, Matrix>> {
    map.into_iter()
        .map(|(k, w)| Ok((key(&k, origin)?, matrix(w, field, &format!("{what} {k:?}"), origin)?)))
        .collect()
}

fn space(group: &Group, dims: BTreeMap<String, usize>, origin: &Origin) -> Result<GradedVectorSpace> {
    let dims = dims
        .into_iter()
        .map(|(k, n)| Ok((degree(&k, origin)?, n)))
        .collect::<Result<_>>()?;
    GradedVectorSpace::new(group.clone(), dims).map_err(|e| origin.invalid("dims", e))
}

fn to_algebra(w: AlgebraWire, origin: &Origin) -> Result<GradedAlgebra> {
    let field = w.field;
    let space = space(&w.group, w.dims, origin)?;
    let mult = matrices(w.mult, field, "mult", pair, origin)?;
    let unit = w
        .unit
        .iter()
        .map(|s| field.parse_scalar(s))
        .collect::<Result<Vec<Scalar>>>()
        .map_err(|e| origin.invalid("unit", e))?;
    let unit = Matrix::column(field, unit);
    GradedAlgebra::new(field, space, mult, unit).map_err(|e| origin.invalid("algebra", e))
}

fn algebra_ref(r: Ref<AlgebraWire>, origin: &Origin) -> Result<Arc<GradedAlgebra>> {
    let (w, at) = resolve(r, origin)?;
    Ok(Arc::new(to_algebra(w, &at)?))
}

fn to_module(
    w: ModuleWire,
    origin: &Origin,
    default: Option<&Arc<GradedAlgebra>>,
) -> Result<GradedModule> {
    let algebra = match (w.algebra, default) {
        (Some(r), _) => algebra_ref(r, origin)?,
        (None, Some(a)) => a.clone(),
        (None, None) => {
            return Err(Error::Invalid {
                file: origin.name.clone(),
                context: "module".into(),
                message: "missing \"algebra\"".into(),
            })
        }
    };
    let space = space(algebra.group(), w.dims, origin)?;
    let action = matrices(w.action, algebra.field(), "action", pair, origin)?;
    GradedModule::new(space, algebra, action).map_err(|e| origin.invalid("module", e))
}

fn to_twist(w: TwistWire, algebra: Arc<GradedAlgebra>, origin: &Origin) -> Result<TwistingSystem> {
    let field = algebra.field();
    let kind = match w {
        TwistWire::Explicit { maps, window: win } => TwistKind::Explicit {
            maps: matrices(maps, field, "maps", pair, origin)?,
            window: window(win, origin)?,
        },
        TwistWire::Cocycle { alpha, window: win } => TwistKind::Cocycle {
            alpha: alpha
                .into_iter()
                .map(|(k, s)| {
                    let v = field
                        .parse_scalar(&s)
                        .map_err(|e| origin.invalid(format!("alpha {k:?}"), e))?;
                    Ok((pair(&k, origin)?, v))
                })
                .collect::<Result<_>>()?,
            window: window(win, origin)?,
        },
        TwistWire::Automorphism { sigma, order } => {
            let comps = matrices(sigma, field, "sigma", degree, origin)?;
            let sp = algebra.space().clone();
            TwistKind::Automorphism {
                sigma: GradedMorphism::new(field, sp.clone(), sp, comps)
                    .map_err(|e| origin.invalid("sigma", e))?,
                order,
            }
        }
    };
    TwistingSystem::new(algebra, kind).map_err(|e| origin.invalid("twist", e))
}

fn from_path<T: DeserializeOwned>(path: &Path) -> Result<(T, Origin)> {
    let text = read(path)?;
    Ok((parse_json(&text, &path.display().to_string())?, Origin::of(path)))
}

fn from_text<T: DeserializeOwned>(text: &str, name: &str, dir: &Path) -> Result<(T, Origin)> {
    let origin = Origin {
        name: name.to_string(),
        dir: dir.to_path_buf(),
    };
    Ok((parse_json(text, name)?, origin))
}

pub fn load_group(path: &Path) -> Result<Group> {
    Ok(from_path::<Group>(path)?.0)
}

/// A finite group file read without the closure checks of
/// [`Group::finite`], for `check_group`.
pub fn load_finite_table(path: &Path) -> Result<FiniteGroup> {
    Ok(from_path::<FiniteGroup>(path)?.0)
}

pub fn load_algebra(path: &Path) -> Result<GradedAlgebra> {
    let (w, o) = from_path(path)?;
    to_algebra(w, &o)
}

pub fn parse_algebra(text: &str, name: &str) -> Result<GradedAlgebra> {
    let (w, o) = from_text(text, name, Path::new("."))?;
    to_algebra(w, &o)
}

pub fn load_module(path: &Path) -> Result<GradedModule> {
    let (w, o) = from_path(path)?;
    to_module(w, &o, None)
}

/// A module file; `algebra` fills in a missing `"algebra"` entry.
pub fn parse_module(text: &str, name: &str, algebra: Option<&Arc<GradedAlgebra>>) -> Result<GradedModule> {
    let (w, o) = from_text(text, name, Path::new("."))?;
    to_module(w, &o, algebra)
}

pub fn load_twist(path: &Path, algebra: Arc<GradedAlgebra>) -> Result<TwistingSystem> {
    let (w, o) = from_path(path)?;
    to_twist(w, algebra, &o)
}

pub fn parse_twist(text: &str, name: &str, algebra: Arc<GradedAlgebra>) -> Result<TwistingSystem> {
    let (w, o) = from_text(text, name, Path::new("."))?;
    to_twist(w, algebra, &o)
}

fn to_phi(w: PhiWire, o: &Origin) -> Result<PhiFamily> {
    let source = algebra_ref(w.source, o)?;
    let target = algebra_ref(w.target, o)?;
    let maps = matrices(w.maps, target.field(), "maps", pair, o)?;
    PhiFamily::new(source, target, maps, window(w.window, o)?).map_err(|e| o.invalid("phi", e))
}

pub fn load_phi(path: &Path) -> Result<PhiFamily> {
    let (w, o) = from_path(path)?;
    to_phi(w, &o)
}

pub fn parse_phi(text: &str, name: &str) -> Result<PhiFamily> {
    let (w, o) = from_text(text, name, Path::new("."))?;
    to_phi(w, &o)
}

fn to_equivalence(w: EquivalenceWire, o: &Origin) -> Result<EquivalenceData> {
    let source = algebra_ref(w.source, o)?;
    let target = algebra_ref(w.target, o)?;
    let field = target.field();
    let mut images = BTreeMap::new();
    for r in w.roster {
        let (m, at) = resolve(r.image, o)?;
        images.insert(r.shift, to_module(m, &at, Some(&target))?);
    }
    let phi = matrices(w.phi, field, "phi", pair, o)?;
    let reg_b = regular_module(&target);
    let mut t = BTreeMap::new();
    for (k, comps) in w.t {
        let shift = degree(&k, o)?;
        let image = images.get(&shift).ok_or_else(|| Error::Invalid {
            file: o.name.clone(),
            context: format!("t {k:?}"),
            message: "no roster entry with this shift".into(),
        })?;
        let comps = matrices(comps, field, &format!("t {k:?}"), degree, o)?;
        let sb = shift_module(&reg_b, shift).map_err(|e| o.invalid(format!("t {k:?}"), e))?;
        let m = GradedMorphism::new(field, image.space().clone(), sb.space().clone(), comps)
            .map_err(|e| o.invalid(format!("t {k:?}"), e))?;
        t.insert(shift, m);
    }
    EquivalenceData::new(source, target, images, phi, t, window(w.window, o)?)
        .map_err(|e| o.invalid("equivalence", e))
}

pub fn load_equivalence(path: &Path) -> Result<EquivalenceData> {
    let (w, o) = from_path(path)?;
    to_equivalence(w, &o)
}

pub fn parse_equivalence(text: &str, name: &str) -> Result<EquivalenceData> {
    let (w, o) = from_text(text, name, Path::new("."))?;
    to_equivalence(w, &o)
}

fn matrix_wire(m: &Matrix) -> MatrixWire {
    MatrixWire {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.entries().iter().map(Scalar::to_string).collect(),
    }
}

fn dims_wire(s: &GradedVectorSpace) -> BTreeMap<String, usize> {
    s.dims().iter().map(|(g, n)| (g.to_string(), *n)).collect()
}

fn pair_map(m: &BTreeMap<(Degree, Degree), Matrix>) -> BTreeMap<String, MatrixWire> {
    m.iter().map(|((a, b), x)| (format!("{a},{b}"), matrix_wire(x))).collect()
}

fn degree_map(m: &BTreeMap<Degree, Matrix>) -> BTreeMap<String, MatrixWire> {
    m.iter().map(|(a, x)| (a.to_string(), matrix_wire(x))).collect()
}

fn window_wire(w: Option<IntegerWindow>) -> Option<(i64, i64)> {
    w.map(|w| (w.lo(), w.hi()))
}

fn algebra_wire(a: &GradedAlgebra) -> AlgebraWire {
    AlgebraWire {
        field: a.field(),
        group: a.group().clone(),
        dims: dims_wire(a.space()),
        mult: pair_map(a.mult_table()),
        unit: a.unit().entries().iter().map(Scalar::to_string).collect(),
    }
}

fn module_wire(m: &GradedModule, algebra: &AlgebraLink) -> ModuleWire {
    ModuleWire {
        algebra: match algebra {
            AlgebraLink::Inline => Some(Ref::Inline(Box::new(algebra_wire(m.algebra())))),
            AlgebraLink::Path(p) => Some(Ref::Path(p.clone())),
            AlgebraLink::Omit => None,
        },
        dims: dims_wire(m.space()),
        action: pair_map(m.action_table()),
    }
}

fn to_value<T: Serialize>(w: &T) -> Value {
    serde_json::to_value(w).expect("wire types serialize")
}

/// How a module file names its algebra.
#[derive(Clone, Debug)]
pub enum AlgebraLink {
    Inline,
    Path(String),
    /// Left out; the reader must supply it.
    Omit,
}

pub fn algebra_json(a: &GradedAlgebra) -> Value {
    to_value(&algebra_wire(a))
}

pub fn module_json(m: &GradedModule, algebra: AlgebraLink) -> Value {
    to_value(&module_wire(m, &algebra))
}

pub fn group_json(g: &Group) -> Value {
    to_value(g)
}

/// The twist in its stored form; the algebra is not included.
pub fn twist_json(t: &TwistingSystem) -> Value {
    let w = match t.kind() {
        TwistKind::Explicit { maps, window } => TwistWire::Explicit {
            maps: pair_map(maps),
            window: window_wire(*window),
        },
        TwistKind::Cocycle { alpha, window } => TwistWire::Cocycle {
            alpha: alpha.iter().map(|((a, b), s)| (format!("{a},{b}"), s.to_string())).collect(),
            window: window_wire(*window),
        },
        TwistKind::Automorphism { sigma, order } => TwistWire::Automorphism {
            sigma: degree_map(sigma.components()),
            order: *order,
        },
    };
    to_value(&w)
}

pub fn phi_json(p: &PhiFamily) -> Value {
    to_value(&PhiWire {
        source: Ref::Inline(Box::new(algebra_wire(p.source()))),
        target: Ref::Inline(Box::new(algebra_wire(p.target()))),
        window: window_wire(p.window()),
        maps: pair_map(p.maps()),
    })
}

/// Equivalence data with both algebras inline; roster images leave their
/// algebra out since it is always the target.
pub fn equivalence_json(d: &EquivalenceData) -> Value {
    to_value(&EquivalenceWire {
        source: Ref::Inline(Box::new(algebra_wire(d.source()))),
        target: Ref::Inline(Box::new(algebra_wire(d.target()))),
        window: window_wire(d.window()),
        roster: d
            .roster()
            .values()
            .map(|r| RosterWire {
                shift: r.shift,
                image: Ref::Inline(Box::new(module_wire(&r.image, &AlgebraLink::Omit))),
            })
            .collect(),
        phi: pair_map(d.phi()),
        t: d
            .shift_witnesses()
            .iter()
            .map(|(k, m)| (k.to_string(), degree_map(m.components())))
            .collect(),
    })
}

/// One entry per degree: the canonical basis, each vector split into its
/// blocks `Hom(M_{g⁻¹p}, N_p)` keyed by `p`.
pub fn hom_space_json(s: &ModuleHomSpace) -> Result<Value> {
    let mut out = Vec::new();
    for g in s.degrees() {
        let mut basis = Vec::new();
        for j in 0..s.dim(g) {
            let e = s.basis_element(g, j)?;
            basis.push(degree_map(&e.blocks));
        }
        out.push(HomDegreeWire { degree: g, basis });
    }
    Ok(to_value(&out))
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, render(v)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
