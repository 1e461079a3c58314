//! Object-level models of Drinfeld centers: simples, the induction functor as
//! an integer matrix, invertible objects acting by permutations, and braided
//! autoequivalences as permutations of simples.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{FusionError, FusionRing, ObjectVector};
use crate::groups::{
    character_table, restrict_inner, AbelianGroup, Bicharacter, CharacterTable, ConjugacyStructure, Cyclotomic,
    FiniteGroup, GroupError, GroupMorphism,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CenterError {
    #[error("bicharacter is degenerate")]
    DegenerateBicharacter,
    #[error("bicharacter is not symmetric at ({x}, {y})")]
    AsymmetricBicharacter { x: String, y: String },
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism is not an isometry: chi({x}, {y}) changes")]
    NonIsometry { x: String, y: String },
    #[error("{0} is not an invertible simple of the center")]
    NotInvertible(String),
    #[error("center model and object belong to different fusion rings")]
    RingMismatch,
    #[error("center vector has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("autoequivalence {0:?} does not apply to this category")]
    UnsupportedAutoequivalence(&'static str),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("invalid autoequivalence: {0}")]
    InvalidAutoequivalence(String),
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

/// Multiplicities over the simples of a center model.
pub type CenterVector = Vec<BigUint>;

/// Sign token for the Tambara-Yamagami parameter `tau = +-|A|^(-1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TauSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TyData {
    pub group: AbelianGroup,
    pub chi: Bicharacter,
    pub tau: TauSign,
}

impl TyData {
    pub fn new(group: AbelianGroup, matrix: Vec<Vec<i64>>, tau: TauSign) -> Result<Self, CenterError> {
        let chi = Bicharacter::new(group.clone(), matrix)?;
        let elems: Vec<Vec<u64>> = group.elements().collect();
        for x in &elems {
            for y in &elems {
                if chi.exponent(x, y) != chi.exponent(y, x) {
                    return Err(CenterError::AsymmetricBicharacter {
                        x: group.element_name(x),
                        y: group.element_name(y),
                    });
                }
            }
        }
        if !chi.is_nondegenerate() {
            return Err(CenterError::DegenerateBicharacter);
        }
        Ok(TyData { group, chi, tau })
    }
}

/// Reference to a group element in configuration: local index or name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

impl ElementRef {
    pub fn resolve(&self, group: &FiniteGroup) -> Result<usize, CenterError> {
        match self {
            ElementRef::Index(i) if *i < group.order() => Ok(*i),
            ElementRef::Index(i) => Err(CenterError::UnknownElement(i.to_string())),
            ElementRef::Name(n) => group
                .element_by_name(n)
                .ok_or_else(|| CenterError::UnknownElement(n.clone())),
        }
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::Index(i) => write!(f, "{i}"),
            ElementRef::Name(n) => write!(f, "{n}"),
        }
    }
}

/// Autoequivalence description as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AutoequivalenceSpec {
    Identity(bool),
    Bicharacter(Vec<Vec<i64>>),
    Automorphism(Vec<ElementRef>),
    TyIsometry(Vec<ElementRef>),
}

/// A braided autoequivalence at the level of simple objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterAutoEquiv {
    perm: Vec<usize>,
    partial: bool,
}

impl CenterAutoEquiv {
    pub fn identity(model: &CenterModel) -> Self {
        CenterAutoEquiv {
            perm: (0..model.len()).collect(),
            partial: model.is_ty(),
        }
    }

    /// Checks the permutation against the model: bijective, dimension
    /// preserving, unit fixing, invertibles onto invertibles.
    pub fn new(model: &CenterModel, perm: Vec<usize>, partial: bool) -> Result<Self, CenterError> {
        let n = model.len();
        if perm.len() != n {
            return Err(CenterError::InvalidAutoequivalence("wrong number of images".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(CenterError::InvalidAutoequivalence("not a permutation".into()));
            }
        }
        if perm[model.unit()] != model.unit() {
            return Err(CenterError::InvalidAutoequivalence("unit is not fixed".into()));
        }
        for z in 0..n {
            if partial && !model.tracked[z] {
                continue;
            }
            if model.dim_sq[z] != model.dim_sq[perm[z]] || model.weights[z] != model.weights[perm[z]] {
                return Err(CenterError::InvalidAutoequivalence(format!(
                    "{} and its image {} differ in dimension",
                    model.labels[z], model.labels[perm[z]]
                )));
            }
            if model.is_invertible(z) != model.is_invertible(perm[z]) {
                return Err(CenterError::InvalidAutoequivalence(format!(
                    "{} is not mapped to an object of the same invertibility",
                    model.labels[z]
                )));
            }
        }
        Ok(CenterAutoEquiv { perm, partial })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, z: usize) -> usize {
        self.perm[z]
    }

    /// True when only the tracked simples carry meaningful images.
    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `F(v)` where `F` sends simple `z` to `perm[z]`.
    pub fn apply(&self, v: &[BigUint]) -> Result<CenterVector, CenterError> {
        permute(&self.perm, v)
    }
}

fn permute(perm: &[usize], v: &[BigUint]) -> Result<CenterVector, CenterError> {
    if v.len() != perm.len() {
        return Err(CenterError::LengthMismatch {
            expected: perm.len(),
            got: v.len(),
        });
    }
    let mut out = vec![BigUint::zero(); v.len()];
    for (z, m) in v.iter().enumerate() {
        out[perm[z]] = m.clone();
    }
    Ok(out)
}

#[derive(Clone, Debug)]
struct RepGroupCenter {
    group: FiniteGroup,
    table: CharacterTable,
    conj: ConjugacyStructure,
    cent_tables: Vec<CharacterTable>,
    offsets: Vec<usize>,
    abelian: Option<AbelianGroup>,
}

impl RepGroupCenter {
    fn simple(&self, class: usize, row: usize) -> usize {
        self.offsets[class] + row
    }

    fn locate(&self, z: usize) -> (usize, usize) {
        let class = self.offsets.partition_point(|&o| o <= z) - 1;
        (class, z - self.offsets[class])
    }

    /// Value of the centralizer character of simple `z` at a parent element
    /// of the centralizer of its class representative.
    fn pi_value(&self, z: usize, parent: usize) -> &Cyclotomic {
        let (c, row) = self.locate(z);
        let local = self.conj.centralizers[c].local(parent).expect("element lies in the centralizer");
        self.cent_tables[c].value(row, local)
    }

    /// Finds the simple over `class` whose character agrees with `values`
    /// on the centralizer of the class representative.
    fn find_simple(&self, class: usize, values: impl Fn(usize) -> Cyclotomic) -> Result<usize, CenterError> {
        let sub = &self.conj.centralizers[class];
        let per_local: Vec<Cyclotomic> = sub.elements.iter().map(|&p| values(p)).collect();
        let row = self.cent_tables[class]
            .find_row_by_elements(&per_local)
            .ok_or_else(|| CenterError::Internal("transported character is not irreducible".into()))?;
        Ok(self.simple(class, row))
    }

    /// Moves `g` to its class representative: returns `(class, x)` with `x g x^-1 = rep`.
    fn to_representative(&self, g: usize) -> (usize, usize) {
        let class = self.conj.class_of[g];
        let rep = self.conj.representative(class);
        let x = self.group.conjugator(g, rep).expect("conjugate elements have a conjugator");
        (class, x)
    }
}

#[derive(Clone, Debug)]
struct TyCenter {
    data: TyData,
}

#[derive(Clone, Debug)]
enum CenterKind {
    RepGroup(Box<RepGroupCenter>),
    Ty(Box<TyCenter>),
}

/// Object-level model of `Z(C)` together with the induction `C -> Z(C)`.
#[derive(Clone, Debug)]
pub struct CenterModel {
    labels: Vec<String>,
    dim_sq: Vec<u64>,
    weights: Vec<u64>,
    tracked: Vec<bool>,
    induction: Vec<Vec<u64>>,
    invertibles: Vec<usize>,
    inv_perms: Vec<Vec<usize>>,
    unit: usize,
    ring_id: u64,
    ring_rank: usize,
    kind: CenterKind,
}

impl CenterModel {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, z: usize) -> &str {
        &self.labels[z]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Squared dimension of each simple.
    pub fn dim_sq(&self) -> &[u64] {
        &self.dim_sq
    }

    /// Integer dimension when it exists.
    pub fn dim(&self, z: usize) -> Option<u64> {
        let d = self.dim_sq[z];
        let r = (d as f64).sqrt().round() as u64;
        (r * r == d).then_some(r)
    }

    /// Number of genuine simples each label stands for.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Simples whose images under invertibles and autoequivalences are known.
    pub fn tracked(&self) -> &[bool] {
        &self.tracked
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn ring_id(&self) -> u64 {
        self.ring_id
    }

    pub fn is_ty(&self) -> bool {
        matches!(self.kind, CenterKind::Ty(_))
    }

    /// Number of simples with aggregated labels expanded.
    pub fn unaggregated_len(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn induction_matrix(&self) -> &[Vec<u64>] {
        &self.induction
    }

    pub fn invertibles(&self) -> &[usize] {
        &self.invertibles
    }

    pub fn is_invertible(&self, z: usize) -> bool {
        self.invertibles.contains(&z)
    }

    /// Permutation `z -> g (x) z` of the invertible simple `g`.
    pub fn invertible_perm(&self, g: usize) -> Result<&[usize], CenterError> {
        let i = self
            .invertibles
            .iter()
            .position(|&x| x == g)
            .ok_or_else(|| CenterError::NotInvertible(self.labels.get(g).cloned().unwrap_or_default()))?;
        Ok(&self.inv_perms[i])
    }

    /// `g (x) h` for invertible `g`, `h`.
    pub fn invertible_product(&self, g: usize, h: usize) -> Result<usize, CenterError> {
        if !self.is_invertible(h) {
            return Err(CenterError::NotInvertible(self.labels[h].clone()));
        }
        Ok(self.invertible_perm(g)?[h])
    }

    /// Multiplicity vector of `I(v)`.
    pub fn induce(&self, v: &ObjectVector) -> Result<CenterVector, CenterError> {
        if v.ring_id() != self.ring_id {
            return Err(CenterError::RingMismatch);
        }
        let mut out = vec![BigUint::zero(); self.len()];
        for (a, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (z, &m) in self.induction[a].iter().enumerate() {
                if m != 0 {
                    out[z] += c * m;
                }
            }
        }
        Ok(out)
    }

    /// `g (x) v` for an invertible simple `g`.
    pub fn act_invertible(&self, g: usize, v: &[BigUint]) -> Result<CenterVector, CenterError> {
        permute(self.invertible_perm(g)?, v)
    }

    /// Equality on tracked coordinates.
    pub fn tracked_eq(&self, a: &[BigUint], b: &[BigUint]) -> bool {
        a.len() == b.len() && (0..a.len()).all(|z| !self.tracked[z] || a[z] == b[z])
    }

    /// Center simples over central elements whose centralizer irreducible has
    /// degree above one. They have dimension at least two and are therefore
    /// not invertible, although the naive list `Z(G) x Irr(G)` would contain them.
    pub fn non_invertible_central_candidates(&self) -> Vec<String> {
        match &self.kind {
            CenterKind::RepGroup(rg) => rg
                .conj
                .center
                .iter()
                .flat_map(|&z| {
                    let c = rg.conj.class_of[z];
                    (0..rg.cent_tables[c].len())
                        .filter(move |&row| rg.cent_tables[c].degrees[row] > 1)
                        .map(move |row| rg.simple(c, row))
                })
                .map(|s| self.labels[s].clone())
                .collect(),
            CenterKind::Ty(_) => Vec::new(),
        }
    }

    /// Explanatory notes attached to reports built on this model.
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        let excluded = self.non_invertible_central_candidates();
        if !excluded.is_empty() {
            notes.push(format!(
                "invertible set uses the dimension-one criterion; {} have dimension > 1 and are excluded even though they pair a central element with an irreducible of G",
                excluded.join(", ")
            ));
        }
        if self.is_ty() {
            notes.push(
                "Tambara-Yamagami center: signs of the X family are aggregated and Y/Z images are untracked, so verdicts are a necessary condition only".into(),
            );
        }
        notes
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.kind {
            CenterKind::RepGroup(rg) => Some(&rg.group),
            CenterKind::Ty(_) => None,
        }
    }

    pub fn ty_data(&self) -> Option<&TyData> {
        match &self.kind {
            CenterKind::Ty(t) => Some(&t.data),
            CenterKind::RepGroup(_) => None,
        }
    }

    /// Class representative and centralizer character of a `Rep(G)` center simple.
    pub fn rep_group_simple(&self, z: usize) -> Option<(usize, Vec<Cyclotomic>)> {
        match &self.kind {
            CenterKind::RepGroup(rg) => {
                let (c, _) = rg.locate(z);
                let sub = &rg.conj.centralizers[c];
                let values = sub.elements.iter().map(|&p| rg.pi_value(z, p).clone()).collect();
                Some((rg.conj.representative(c), values))
            }
            CenterKind::Ty(_) => None,
        }
    }

    /// Centralizer (as parent element indices) of a class representative.
    pub fn centralizer_of_simple(&self, z: usize) -> Option<&[usize]> {
        match &self.kind {
            CenterKind::RepGroup(rg) => Some(&rg.conj.centralizers[rg.locate(z).0].elements),
            CenterKind::Ty(_) => None,
        }
    }

    pub fn format_vector(&self, v: &[BigUint]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(z, c)| {
                if *c == BigUint::from(1u8) {
                    self.labels[z].clone()
                } else {
                    format!("{c}*{}", self.labels[z])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Center of `Rep(G)`: simples `([g], pi)` with `pi` an irreducible of the
/// centralizer of the minimal class member `g`.
pub fn build_center_rep_group(
    group: &FiniteGroup,
    table: &CharacterTable,
    ring: &FusionRing,
) -> Result<CenterModel, CenterError> {
    if ring.rank() != table.len() || table.group_order() != group.order() {
        return Err(CenterError::RingMismatch);
    }
    let conj = group.conjugacy_structure();
    let cent_tables = conj
        .centralizers
        .iter()
        .map(|sub| character_table(&sub.group))
        .collect::<Result<Vec<_>, GroupError>>()?;
    let mut offsets = Vec::with_capacity(conj.len());
    let mut labels = Vec::new();
    let mut dim_sq = Vec::new();
    for (c, ct) in cent_tables.iter().enumerate() {
        offsets.push(labels.len());
        let rep = conj.representative(c);
        for row in 0..ct.len() {
            labels.push(format!("([{}],pi{row})", group.name(rep)));
            let d = conj.classes[c].len() as u64 * ct.degrees[row];
            dim_sq.push(d * d);
        }
    }
    let n = labels.len();
    let mut induction = vec![vec![0u64; n]; table.len()];
    for (a, ind_row) in induction.iter_mut().enumerate() {
        let chi = table.expand(a);
        for (c, ct) in cent_tables.iter().enumerate() {
            for row in 0..ct.len() {
                ind_row[offsets[c] + row] = restrict_inner(&chi, &conj.centralizers[c], &ct.expand(row))?;
            }
        }
    }
    let rg = RepGroupCenter {
        group: group.clone(),
        table: table.clone(),
        conj,
        cent_tables,
        offsets,
        abelian: None,
    };
    let unit = rg.simple(0, (0..rg.cent_tables[0].len()).find(|&r| rg.cent_tables[0].is_trivial_row(r)).unwrap());
    let invertibles: Vec<usize> = (0..n).filter(|&z| dim_sq[z] == 1).collect();
    let inv_perms = invertibles
        .iter()
        .map(|&g| rep_group_invertible_perm(&rg, g, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CenterModel {
        labels,
        dim_sq,
        weights: vec![1; n],
        tracked: vec![true; n],
        induction,
        invertibles,
        inv_perms,
        unit,
        ring_id: ring.id(),
        ring_rank: ring.rank(),
        kind: CenterKind::RepGroup(Box::new(rg)),
    })
}

/// `([z], lambda) (x) ([h], pi) = ([zh], lambda|_{Z(h)} pi)`.
fn rep_group_invertible_perm(rg: &RepGroupCenter, g: usize, n: usize) -> Result<Vec<usize>, CenterError> {
    let (gc, _) = rg.locate(g);
    let z = rg.conj.representative(gc);
    let lambda = |y: usize| rg.pi_value(g, y).clone();
    let mut perm = Vec::with_capacity(n);
    for s in 0..n {
        let (c, _) = rg.locate(s);
        let h = rg.conj.representative(c);
        let (tc, x) = rg.to_representative(rg.group.mul(z, h));
        let xi = rg.group.inv(x);
        let img = rg.find_simple(tc, |p| {
            let y = rg.group.conjugate(p, xi);
            &lambda(y) * rg.pi_value(s, y)
        })?;
        perm.push(img);
    }
    Ok(perm)
}

/// Center of `Rep(A)` for an abelian group, remembering `A` so that
/// bicharacter autoequivalences can be built.
pub fn build_center_abelian(group: &AbelianGroup, ring: &FusionRing) -> Result<CenterModel, CenterError> {
    let g = group.to_finite_group();
    let table = character_table(&g)?;
    let mut model = build_center_rep_group(&g, &table, ring)?;
    if let CenterKind::RepGroup(rg) = &mut model.kind {
        rg.abelian = Some(group.clone());
    }
    Ok(model)
}

/// Center of `TY(A, chi, tau)` with the sign pairs `X_{a,+}, X_{a,-}`
/// aggregated into one label `X_a` of weight two.
pub fn build_center_ty(data: &TyData, ring: &FusionRing) -> Result<CenterModel, CenterError> {
    let a = &data.group;
    let order = a.order();
    if ring.rank() != order + 1 {
        return Err(CenterError::RingMismatch);
    }
    let names: Vec<String> = a.elements().map(|x| a.element_name(&x)).collect();
    let mut labels = Vec::new();
    let mut dim_sq = Vec::new();
    let mut weights = Vec::new();
    let mut tracked = Vec::new();
    for name in &names {
        labels.push(format!("X_{name}"));
        dim_sq.push(1);
        weights.push(2);
        tracked.push(true);
    }
    let y_start = labels.len();
    let mut y_index = vec![vec![usize::MAX; order]; order];
    for i in 0..order {
        for j in i + 1..order {
            y_index[i][j] = labels.len();
            y_index[j][i] = labels.len();
            labels.push(format!("Y_{{{},{}}}", names[i], names[j]));
            dim_sq.push(4);
            weights.push(1);
            tracked.push(false);
        }
    }
    let z_start = labels.len();
    for name in &names {
        for sign in ['+', '-'] {
            labels.push(format!("Z_{{{name},{sign}}}"));
            dim_sq.push(order as u64);
            weights.push(1);
            tracked.push(false);
        }
    }
    let n = labels.len();
    debug_assert_eq!(z_start - y_start, order * (order - 1) / 2);
    let mut induction = vec![vec![0u64; n]; order + 1];
    for i in 0..order {
        induction[i][i] = 1;
        for j in 0..order {
            if j != i {
                induction[i][y_index[i][j]] = 1;
            }
        }
    }
    for z in z_start..n {
        induction[order][z] = 1;
    }
    let invertibles: Vec<usize> = (0..order).collect();
    let inv_perms = (0..order)
        .map(|c| {
            let shift = a.element(c);
            (0..n)
                .map(|z| if z < order { a.index(&a.add(&a.element(z), &shift)) } else { z })
                .collect()
        })
        .collect();
    Ok(CenterModel {
        labels,
        dim_sq,
        weights,
        tracked,
        induction,
        invertibles,
        inv_perms,
        unit: 0,
        ring_id: ring.id(),
        ring_rank: ring.rank(),
        kind: CenterKind::Ty(Box::new(TyCenter { data: data.clone() })),
    })
}

/// `X_a -> X_{phi(a)}` after verifying that `phi` is an isometry of `chi`.
pub fn ty_autoequiv_xfamily(model: &CenterModel, phi: &GroupMorphism) -> Result<CenterAutoEquiv, CenterError> {
    let data = model.ty_data().ok_or(CenterError::UnsupportedAutoequivalence("ty_isometry"))?;
    let a = &data.group;
    let order = a.order();
    if phi.images().len() != order || !phi.is_bijective() {
        return Err(CenterError::NotAutomorphism("not a bijection of A".into()));
    }
    for x in 0..order {
        for y in 0..order {
            let (ex, ey) = (a.element(x), a.element(y));
            let (px, py) = (a.element(phi.apply(x)), a.element(phi.apply(y)));
            if data.chi.exponent(&px, &py) != data.chi.exponent(&ex, &ey) {
                return Err(CenterError::NonIsometry {
                    x: a.element_name(&ex),
                    y: a.element_name(&ey),
                });
            }
        }
    }
    let perm = (0..model.len()).map(|z| if z < order { phi.apply(z) } else { z }).collect();
    CenterAutoEquiv::new(model, perm, true)
}

fn resolve_automorphism(group: &FiniteGroup, images: &[ElementRef]) -> Result<GroupMorphism, CenterError> {
    let gen_images = images
        .iter()
        .map(|r| r.resolve(group))
        .collect::<Result<Vec<_>, _>>()?;
    let phi = GroupMorphism::from_generator_images(group, group, &gen_images)
        .map_err(|e| CenterError::NotAutomorphism(e.to_string()))?;
    if !phi.is_bijective() {
        return Err(CenterError::NotAutomorphism("generator images do not generate the group".into()));
    }
    Ok(phi)
}

/// Builds the permutation of center simples for an autoequivalence spec.
pub fn build_autoequivalence(model: &CenterModel, spec: &AutoequivalenceSpec) -> Result<CenterAutoEquiv, CenterError> {
    match (spec, &model.kind) {
        (AutoequivalenceSpec::Identity(true), _) => Ok(CenterAutoEquiv::identity(model)),
        (AutoequivalenceSpec::Identity(false), _) => Err(CenterError::InvalidAutoequivalence(
            "identity must be set to true".into(),
        )),
        (AutoequivalenceSpec::Bicharacter(matrix), CenterKind::RepGroup(rg)) => {
            let a = rg.abelian.as_ref().ok_or(CenterError::UnsupportedAutoequivalence("bicharacter"))?;
            bicharacter_autoequiv(model, rg, a, matrix)
        }
        (AutoequivalenceSpec::Automorphism(images), CenterKind::RepGroup(rg)) => {
            let phi = resolve_automorphism(&rg.group, images)?;
            automorphism_autoequiv(model, rg, &phi)
        }
        (AutoequivalenceSpec::TyIsometry(images), CenterKind::Ty(t)) => {
            let g = t.data.group.to_finite_group();
            let phi = resolve_automorphism(&g, images)?;
            ty_autoequiv_xfamily(model, &phi)
        }
        (AutoequivalenceSpec::Bicharacter(_), CenterKind::Ty(_)) => {
            Err(CenterError::UnsupportedAutoequivalence("bicharacter"))
        }
        (AutoequivalenceSpec::Automorphism(_), CenterKind::Ty(_)) => {
            Err(CenterError::UnsupportedAutoequivalence("automorphism"))
        }
        (AutoequivalenceSpec::TyIsometry(_), CenterKind::RepGroup(_)) => {
            Err(CenterError::UnsupportedAutoequivalence("ty_isometry"))
        }
    }
}

/// `F_beta(a, chi) = (phi_beta^{-1}(chi), phi_beta(a))`.
fn bicharacter_autoequiv(
    model: &CenterModel,
    rg: &RepGroupCenter,
    a: &AbelianGroup,
    matrix: &[Vec<i64>],
) -> Result<CenterAutoEquiv, CenterError> {
    let beta = Bicharacter::new(a.clone(), matrix.to_vec())?;
    let musical = beta.musical_morphism();
    let inverse = musical.inverse().ok_or(CenterError::DegenerateBicharacter)?;
    let elems: Vec<Vec<u64>> = a.elements().collect();
    // simple over element `x` carrying the character with exponent tuple `y`
    let simple_of = |x: usize, y: usize| {
        let chi = a.character(elems[y].clone());
        let class = rg.conj.class_of[x];
        rg.find_simple(class, |p| a.evaluate(&chi, &elems[p]))
    };
    let mut perm = vec![usize::MAX; model.len()];
    for x in 0..a.order() {
        for y in 0..a.order() {
            perm[simple_of(x, y)?] = simple_of(inverse.apply(y), musical.apply(x))?;
        }
    }
    CenterAutoEquiv::new(model, perm, false)
}

/// `F_phi([g], pi) = ([phi(g)], pi o phi^{-1})`.
fn automorphism_autoequiv(
    model: &CenterModel,
    rg: &RepGroupCenter,
    phi: &GroupMorphism,
) -> Result<CenterAutoEquiv, CenterError> {
    let phi_inv = phi
        .inverse()
        .ok_or_else(|| CenterError::NotAutomorphism("not invertible".into()))?;
    let perm = (0..model.len())
        .map(|s| {
            let (c, _) = rg.locate(s);
            let h = rg.conj.representative(c);
            let (tc, x) = rg.to_representative(phi.apply(h));
            let xi = rg.group.inv(x);
            rg.find_simple(tc, |p| rg.pi_value(s, phi_inv.apply(rg.group.conjugate(p, xi))).clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    CenterAutoEquiv::new(model, perm, false)
}

impl CenterModel {
    /// Ring rank the induction matrix expects.
    pub fn ring_rank(&self) -> usize {
        self.ring_rank
    }

    /// Parent group character table for `Rep(G)` models.
    pub fn character_table(&self) -> Option<&CharacterTable> {
        match &self.kind {
            CenterKind::RepGroup(rg) => Some(&rg.table),
            CenterKind::Ty(_) => None,
        }
    }
}
