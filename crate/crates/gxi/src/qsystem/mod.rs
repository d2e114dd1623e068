//! Q-systems `(θ, w, x)` and their equivariant structures.
//!
//! Unit and multiplication are stored in a balanced gauge: `w0†w0 = 1` and
//! `x0†x0 = s²` with `s = √dθ` supplied as data. The standard Q-system is
//! `(θ, κ w0, κ⁻¹ x0)` with `κ² = s`; every axiom checked here is homogeneous in
//! `κ`, so the gauge never needs `√s`.

use rayon::prelude::*;
use thiserror::Error;

use crate::fusion::{Mor, Obj, Word};
use crate::gcrossed::{FiniteGroup, GCrossed};
use crate::kernel::{Field, FromScalar, Mat, Scalar};
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSystemError {
    #[error("not unitary: {0}")]
    NotUnitary(String),
    #[error("group algebra obstruction: {0}")]
    Obstruction(String),
    #[error("malformed Q-system data: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug)]
pub struct QSystem<F> {
    pub theta: Obj,
    /// `1 → θ`, norm one.
    pub w: Mor<F>,
    /// `θ → θθ`, with `x†x = s²`.
    pub x: Mor<F>,
    /// `s = √dθ`.
    pub sqrt_dtheta: F,
}

/// Unitaries `z_g : γ_{g'}(θ) → θ` for a group `G` acting through `proj : G → G'`.
#[derive(Clone, Debug)]
pub struct EquivariantStructure<F> {
    pub group: FiniteGroup,
    pub proj: Vec<usize>,
    pub z: Vec<Mor<F>>,
}

impl<F: Field> QSystem<F> {
    pub fn theta_word(&self) -> Word {
        vec![self.theta.clone()]
    }
}

impl<F: Field> EquivariantStructure<F> {
    /// Identity structure over `group` acting trivially.
    pub fn trivial(gx: &GCrossed<F>, q: &QSystem<F>, group: FiniteGroup) -> Self {
        let proj = vec![gx.group().identity(); group.order()];
        let z = group.elements().map(|_| gx.cat().id_obj(&q.theta)).collect();
        EquivariantStructure { group, proj, z }
    }
}

impl QSystem<Scalar> {
    pub fn convert<G: FromScalar>(&self, tol: f64) -> QSystem<G> {
        QSystem {
            theta: self.theta.clone(),
            w: self.w.convert(tol),
            x: self.x.convert(tol),
            sqrt_dtheta: G::from_scalar(&self.sqrt_dtheta, tol),
        }
    }
}

impl EquivariantStructure<Scalar> {
    pub fn convert<G: FromScalar>(&self, tol: f64) -> EquivariantStructure<G> {
        EquivariantStructure {
            group: self.group.clone(),
            proj: self.proj.clone(),
            z: self.z.iter().map(|m| m.convert(tol)).collect(),
        }
    }
}

pub fn trivial_qsystem<F: Field>(gx: &GCrossed<F>) -> QSystem<F> {
    let cat = gx.cat();
    let u = cat.unit();
    let theta = cat.simple(u);
    let w = cat.inclusion(&theta, u, 0).retype(vec![], vec![theta.clone()]);
    let x = cat.vertex(u, u, u, 0);
    QSystem {
        theta,
        w,
        x,
        sqrt_dtheta: F::one(),
    }
}

/// `θ = ⊕_{h ∈ H} h` with multiplication `Σ ω(h,k) v^{hk}`; `sqrt_order` is `√|H|`.
pub fn group_qsystem<F: Field>(
    gx: &GCrossed<F>,
    subgroup: &[usize],
    cochain: Option<&dyn Fn(usize, usize) -> F>,
    sqrt_order: F,
) -> Result<QSystem<F>, QSystemError> {
    let cat = gx.cat();
    let r = cat.rank();
    let e = gx.group().identity();
    let mut mult = vec![0u32; r];
    for &h in subgroup {
        if !cat.ring().is_invertible(h) || gx.grade(h) != e {
            return Err(QSystemError::Malformed(format!(
                "{} must be invertible of trivial degree",
                cat.ring().name(h)
            )));
        }
        mult[h] = 1;
    }
    let prod = |h: usize, k: usize| cat.fuse(h, k).support().next().expect("invertible product");
    for &h in subgroup {
        if mult[cat.dual(h)] == 0 || subgroup.iter().any(|&k| mult[prod(h, k)] == 0) {
            return Err(QSystemError::Malformed("subgroup not closed".into()));
        }
    }
    if mult[cat.unit()] != 1 {
        return Err(QSystemError::Malformed("subgroup must contain the unit".into()));
    }
    let theta = Obj::from_mult(mult);
    let w = cat.inclusion(&theta, cat.unit(), 0).retype(vec![], vec![theta.clone()]);
    let tt = vec![theta.clone(), theta.clone()];
    let mut x = cat.zero_mor(vec![theta.clone()], tt.clone());
    for &h in subgroup {
        for &k in subgroup {
            let m = prod(h, k);
            let om = cochain.map_or_else(F::one, |c| c(h, k));
            let piece = cat
                .tensor(&cat.inclusion(&theta, h, 0), &cat.inclusion(&theta, k, 0))
                .compose(&cat.vertex(h, k, m, 0))
                .compose(&cat.inclusion(&theta, m, 0).adjoint());
            x = x.add(&piece.scale(&om));
        }
    }
    let q = QSystem {
        theta,
        w,
        x,
        sqrt_dtheta: sqrt_order,
    };
    if !associative(gx, &q) {
        return Err(QSystemError::Obstruction(if cochain.is_some() {
            "supplied cochain does not trivialize the associator".into()
        } else {
            "associator is nontrivial on the subgroup and no cochain was supplied".into()
        }));
    }
    Ok(q)
}

fn associative<F: Field>(gx: &GCrossed<F>, q: &QSystem<F>) -> bool {
    let cat = gx.cat();
    let t = q.theta_word();
    let l = cat.rid(&q.x, &t).compose(&q.x);
    let r = cat.lid(&t, &q.x).compose(&q.x);
    l.approx_eq(&r)
}

/// `(θ', u w, (u⊗u) x u†)` and `z'_g = u z_g γ_{g'}(u†)`.
pub fn transport_qsystem<F: Field>(
    gx: &GCrossed<F>,
    q: &QSystem<F>,
    z: &EquivariantStructure<F>,
    u: &Mor<F>,
) -> Result<(QSystem<F>, EquivariantStructure<F>), QSystemError> {
    let cat = gx.cat();
    if u.src != q.theta_word() || u.dst.len() != 1 || !u.is_unitary() {
        return Err(QSystemError::NotUnitary("u must be a unitary θ → θ'".into()));
    }
    let theta = u.dst[0].clone();
    let q2 = QSystem {
        theta: theta.clone(),
        w: u.compose(&q.w),
        x: cat.tensor(u, u).compose(&q.x).compose(&u.adjoint()),
        sqrt_dtheta: q.sqrt_dtheta.clone(),
    };
    let zs = z
        .group
        .elements()
        .map(|g| u.compose(&z.z[g]).compose(&gx.act(z.proj[g], &u.adjoint())))
        .collect();
    Ok((
        q2,
        EquivariantStructure {
            group: z.group.clone(),
            proj: z.proj.clone(),
            z: zs,
        },
    ))
}

/// Axioms, standardness, Frobenius property, commutativity and irreducibility.
pub fn check_qsystem<F: Field>(gx: &GCrossed<F>, q: &QSystem<F>) -> CheckReport {
    let mut rep = CheckReport::new("qsystem");
    let cat = gx.cat();
    let t = q.theta_word();
    let e = gx.group().identity();
    let shape_ok = q.w.src.is_empty() && q.w.dst == t && q.x.src == t && q.x.dst == vec![q.theta.clone(); 2];
    rep.single("shapes", shape_ok, || "w must be 1 → θ and x must be θ → θθ".into());
    if !shape_ok {
        return rep;
    }
    let deg_e = q.theta.support().all(|a| gx.grade(a) == e);
    rep.single("theta_degree_e", deg_e, || format!("{:?}", q.theta));

    let id = cat.id(&t);
    let s = &q.sqrt_dtheta;
    let s2 = s.clone() * s;
    rep.single("sqrt_dtheta", s.is_positive_real() && s2.eq_field(&cat.obj_dim(&q.theta)), || {
        format!("s = {s:?}, s^2 must equal dim θ")
    });
    rep.single("associativity", associative(gx, q), || "(x⊗1)x != (1⊗x)x".into());
    let wa = q.w.adjoint();
    let ul = cat.rid(&wa, &t).compose(&q.x);
    let ur = cat.lid(&t, &wa).compose(&q.x);
    rep.single("unit_law", ul.blocks_eq(&id) && ur.blocks_eq(&id), || "(w†⊗1)x or (1⊗w†)x != 1".into());
    rep.single(
        "standard_w",
        q.w.adjoint().compose(&q.w).is_identity(),
        || "w†w != 1 in the balanced gauge".into(),
    );
    rep.single(
        "standard_x",
        q.x.adjoint().compose(&q.x).approx_eq(&id.scale(&s2)),
        || "x†x != dθ in the balanced gauge".into(),
    );
    let xa = q.x.adjoint();
    let f1 = cat.lid(&t, &xa).compose(&cat.rid(&q.x, &t));
    let f2 = q.x.compose(&xa);
    let f3 = cat.rid(&xa, &t).compose(&cat.lid(&t, &q.x));
    rep.single("frobenius", f1.approx_eq(&f2) && f2.approx_eq(&f3), || {
        "(1⊗x†)(x⊗1), xx†, (x†⊗1)(1⊗x) differ".into()
    });
    let comm = gx.braid(&t, &t).map(|c| c.compose(&q.x).approx_eq(&q.x));
    rep.single("commutative", comm == Ok(true), || "c(θ,θ)x != x".into());
    let comm_op = gx.braid_op(&t, &t).map(|c| c.compose(&q.x).approx_eq(&q.x));
    rep.single("commutative_opposite", comm_op == Ok(true), || "c⁻(θ,θ)x != x".into());
    rep.single("irreducible", q.theta.mult(cat.unit()) == 1, || {
        format!("dim Hom(1, θ) = {}", q.theta.mult(cat.unit()))
    });
    rep
}

/// Unitarity, Q-system isomorphism identities and the cocycle for all pairs.
pub fn check_equivariant<F: Field>(
    gx: &GCrossed<F>,
    q: &QSystem<F>,
    z: &EquivariantStructure<F>,
) -> CheckReport {
    let mut rep = CheckReport::new("equivariant");
    let cat = gx.cat();
    let grp = &z.group;
    rep.single(
        "projection_onto",
        grp.is_surjection_onto(gx.group(), &z.proj) && z.z.len() == grp.order(),
        || "proj must be a surjective homomorphism onto the acting group".into(),
    );
    if z.z.len() != grp.order() || z.proj.len() != grp.order() {
        return rep;
    }
    let t = q.theta_word();
    let typed: Vec<bool> = grp
        .elements()
        .map(|g| z.z[g].src == gx.act_word(z.proj[g], &t) && z.z[g].dst == t)
        .collect();
    rep.tally(
        "shapes",
        grp.elements()
            .map(|g| (!typed[g]).then(|| format!("g={}", grp.name(g)))),
    );
    if typed.iter().any(|ok| !ok) {
        return rep;
    }
    rep.single("identity", z.z[grp.identity()].is_identity(), || "z_e != 1".into());
    rep.tally(
        "unitary",
        grp.elements()
            .map(|g| (!z.z[g].is_unitary()).then(|| format!("g={}", grp.name(g)))),
    );
    rep.tally(
        "multiplicative",
        grp.elements().map(|g| {
            let zg = &z.z[g];
            let lhs = q.x.compose(zg);
            let rhs = cat.tensor(zg, zg).compose(&gx.act(z.proj[g], &q.x));
            (!lhs.approx_eq(&rhs)).then(|| format!("g={}", grp.name(g)))
        }),
    );
    rep.tally(
        "unital",
        grp.elements().map(|g| {
            let rhs = z.z[g].compose(&gx.act(z.proj[g], &q.w));
            (!q.w.approx_eq(&rhs)).then(|| format!("g={}", grp.name(g)))
        }),
    );
    let pairs: Vec<(usize, usize)> = grp.elements().flat_map(|g| grp.elements().map(move |h| (g, h))).collect();
    rep.tally(
        "cocycle",
        pairs
            .par_iter()
            .map(|&(g, h)| {
                let lhs = &z.z[grp.mul(g, h)];
                let rhs = z.z[g].compose(&gx.act(z.proj[g], &z.z[h]));
                (!lhs.approx_eq(&rhs)).then(|| format!("g={} h={}", grp.name(g), grp.name(h)))
            })
            .collect::<Vec<_>>(),
    );
    rep
}

/// Diagonal `z_g` on `θ` from one scalar per summand, for multiplicity-free `θ`.
pub fn diagonal_z<F: Field>(gx: &GCrossed<F>, theta: &Obj, g: usize, phases: &[F]) -> Mor<F> {
    let cat = gx.cat();
    let src = gx.act_obj(g, theta);
    let blocks = (0..cat.rank())
        .map(|c| {
            let mut m = Mat::zeros(theta.mult(c) as usize, src.mult(c) as usize);
            if m.rows() == 1 && m.cols() == 1 {
                m[(0, 0)] = phases[c].clone();
            }
            m
        })
        .collect();
    Mor {
        src: vec![src],
        dst: vec![theta.clone()],
        blocks,
    }
}
