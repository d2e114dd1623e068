use rayon::prelude::*;

use super::GCrossed;
use crate::fusion::{Mor, Obj};
use crate::kernel::{Field, Mat};
use crate::report::CheckReport;

impl<F: Field> GCrossed<F> {
    fn lname(&self, a: usize) -> &str {
        self.cat().ring().name(a)
    }

    fn gname(&self, g: usize) -> &str {
        self.group().name(g)
    }

    fn s(&self, a: usize) -> Obj {
        self.cat().simple(a)
    }

    fn vertices(&self) -> Vec<(usize, usize, usize, usize)> {
        let r = self.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for mu in 0..self.cat().n(a, b, c) {
                        out.push((a, b, c, mu));
                    }
                }
            }
        }
        out
    }

    /// Grading, action and crossed-braiding axioms over all simples.
    pub fn check_crossed_axioms(&self) -> CheckReport {
        let mut rep = CheckReport::new("gcrossed");
        let grp = self.group();
        let cat = self.cat();
        let r = self.rank();
        let e = grp.identity();
        let gs: Vec<usize> = grp.elements().collect();

        let ga = grp.check_axioms();
        rep.single("group_axioms", ga.is_ok(), || ga.clone().unwrap_err());

        let mut grading = vec![rep_item(self.grade(cat.unit()) != e, || "unit has nontrivial degree".into())];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let bad = cat.n(a, b, c) > 0 && self.grade(c) != grp.mul(self.grade(a), self.grade(b));
                    grading.push(rep_item(bad, || format!("a={} b={} c={}", self.lname(a), self.lname(b), self.lname(c))));
                }
            }
        }
        rep.tally("grading_multiplicative", grading);

        // strict action on labels and vertices
        let mut strict = Vec::new();
        for &g in &gs {
            for &h in &gs {
                let gh = grp.mul(g, h);
                for a in 0..r {
                    let bad = self.act_label(gh, a) != self.act_label(g, self.act_label(h, a));
                    strict.push(rep_item(bad, || format!("g={} h={} a={}", self.gname(g), self.gname(h), self.lname(a))));
                }
                for (a, b, c, _) in self.vertices().into_iter().filter(|v| v.3 == 0) {
                    let (ha, hb, hc) = (self.act_label(h, a), self.act_label(h, b), self.act_label(h, c));
                    let lhs = self.vertex_action(gh, a, b, c);
                    let rhs = self.vertex_action(g, ha, hb, hc).mul(self.vertex_action(h, a, b, c));
                    strict.push(rep_item(!lhs.approx_eq(&rhs), || {
                        format!(
                            "g={} h={} a={} b={} c={}",
                            self.gname(g),
                            self.gname(h),
                            self.lname(a),
                            self.lname(b),
                            self.lname(c)
                        )
                    }));
                }
            }
        }
        for a in 0..r {
            strict.push(rep_item(self.act_label(e, a) != a, || format!("identity moves a={}", self.lname(a))));
        }
        for (a, b, c, _) in self.vertices().into_iter().filter(|v| v.3 == 0) {
            strict.push(rep_item(!self.vertex_action(e, a, b, c).is_identity(), || {
                format!("identity acts nontrivially on a={} b={} c={}", self.lname(a), self.lname(b), self.lname(c))
            }));
        }
        rep.tally("action_strict", strict);

        let mut cov = Vec::new();
        for &g in &gs {
            for a in 0..r {
                let bad = self.grade(self.act_label(g, a)) != grp.conj(g, self.grade(a));
                cov.push(rep_item(bad, || format!("g={} a={}", self.gname(g), self.lname(a))));
            }
        }
        rep.tally("action_grading_covariant", cov);

        let mut pres = Vec::new();
        for &g in &gs {
            let p = |a| self.act_label(g, a);
            pres.push(rep_item(p(cat.unit()) != cat.unit(), || format!("g={} moves the unit", self.gname(g))));
            for a in 0..r {
                pres.push(rep_item(!cat.qdim(p(a)).eq_field(cat.qdim(a)), || {
                    format!("g={} a={} changes the dimension", self.gname(g), self.lname(a))
                }));
                for b in 0..r {
                    for c in 0..r {
                        let bad = cat.n(p(a), p(b), p(c)) != cat.n(a, b, c);
                        pres.push(rep_item(bad, || {
                            format!("g={} a={} b={} c={}", self.gname(g), self.lname(a), self.lname(b), self.lname(c))
                        }));
                    }
                }
            }
        }
        rep.tally("action_preserves_fusion", pres);

        let mut unit = Vec::new();
        for &g in &gs {
            for (a, b, c, _) in self.vertices().into_iter().filter(|v| v.3 == 0) {
                let m = self.vertex_action(g, a, b, c);
                let bad = (a == cat.unit() || b == cat.unit()) && !m.is_identity();
                unit.push(rep_item(bad, || {
                    format!("g={} a={} b={} c={}", self.gname(g), self.lname(a), self.lname(b), self.lname(c))
                }));
                let bad = !m.mul(&m.adjoint()).is_identity();
                unit.push(rep_item(bad, || {
                    format!("non-unitary g={} a={} b={} c={}", self.gname(g), self.lname(a), self.lname(b), self.lname(c))
                }));
            }
        }
        rep.tally("action_unitary_unital", unit);

        let quads: Vec<(usize, [usize; 4])> = gs
            .iter()
            .flat_map(|&g| {
                let mut v = Vec::new();
                for a in 0..r {
                    for b in 0..r {
                        for c in 0..r {
                            for d in 0..r {
                                if cat.f(a, b, c, d).rows() > 0 {
                                    v.push((g, [a, b, c, d]));
                                }
                            }
                        }
                    }
                }
                v
            })
            .collect();
        rep.tally(
            "action_f_compatible",
            quads
                .par_iter()
                .map(|&(g, q)| {
                    let bad = !self.f_compatible(g, q);
                    rep_item(bad, || {
                        format!(
                            "g={} a={} b={} c={} d={}",
                            self.gname(g),
                            self.lname(q[0]),
                            self.lname(q[1]),
                            self.lname(q[2]),
                            self.lname(q[3])
                        )
                    })
                })
                .collect::<Vec<_>>(),
        );

        let verts = self.vertices();
        rep.tally(
            "r_unitary",
            verts
                .iter()
                .filter(|v| v.3 == 0)
                .map(|&(a, b, c, _)| {
                    let m = self.r_block(a, b, c);
                    rep_item(!m.mul(&m.adjoint()).is_identity(), || {
                        format!("a={} b={} c={}", self.lname(a), self.lname(b), self.lname(c))
                    })
                })
                .collect::<Vec<_>>(),
        );

        let pairs: Vec<(usize, usize)> = (0..r * r).map(|i| (i / r, i % r)).collect();
        rep.tally(
            "braid_unitary",
            pairs
                .par_iter()
                .map(|&(a, b)| {
                    rep_item(!self.braid_simple(a, b).is_unitary(), || {
                        format!("a={} b={}", self.lname(a), self.lname(b))
                    })
                })
                .collect::<Vec<_>>(),
        );

        let nat: Vec<((usize, usize, usize, usize), usize)> =
            verts.iter().flat_map(|&v| (0..r).map(move |x| (v, x))).collect();
        rep.tally(
            "naturality",
            nat.par_iter()
                .map(|&((a, b, c, mu), x)| {
                    let ok = self.natural_second(x, (a, b, c, mu)) && self.natural_first((a, b, c, mu), x);
                    rep_item(!ok, || {
                        format!(
                            "x={} vertex a={} b={} c={} mu={mu}",
                            self.lname(x),
                            self.lname(a),
                            self.lname(b),
                            self.lname(c)
                        )
                    })
                })
                .collect::<Vec<_>>(),
        );

        let kab: Vec<(usize, usize, usize)> = gs
            .iter()
            .flat_map(|&k| pairs.iter().map(move |&(a, b)| (k, a, b)))
            .collect();
        rep.tally(
            "covariance",
            kab.par_iter()
                .map(|&(k, a, b)| {
                    let lhs = self.act(k, &self.braid_simple(a, b));
                    let rhs = self.braid_simple(self.act_label(k, a), self.act_label(k, b));
                    rep_item(!lhs.approx_eq(&rhs), || {
                        format!("k={} a={} b={}", self.gname(k), self.lname(a), self.lname(b))
                    })
                })
                .collect::<Vec<_>>(),
        );

        let triples: Vec<[usize; 3]> = (0..r * r * r).map(|i| [i / (r * r), (i / r) % r, i % r]).collect();
        let run = |f: &(dyn Fn([usize; 3]) -> bool + Sync)| {
            triples
                .par_iter()
                .map(|&t| {
                    rep_item(!f(t), || {
                        format!("x={} y={} z={}", self.lname(t[0]), self.lname(t[1]), self.lname(t[2]))
                    })
                })
                .collect::<Vec<_>>()
        };
        rep.tally("braid_relation_1", run(&|t| self.br1(t)));
        rep.tally("braid_relation_2", run(&|t| self.br2(t)));
        rep.tally("opposite_braid_relation_1", run(&|t| self.br1_op(t)));
        rep.tally("opposite_braid_relation_2", run(&|t| self.br2_op(t)));
        rep.tally("yang_baxter", run(&|t| self.ybe(t)));

        rep.tally(
            "opposite_inverse",
            pairs
                .par_iter()
                .map(|&(a, b)| {
                    let h = self.grade(b);
                    let ga = self.act_label(grp.inv(h), a);
                    let op = self.braid_op_simple(a, b);
                    let mut ok = op.compose(&self.braid_simple(b, ga)).is_identity()
                        && self.braid_simple(b, ga).compose(&op).is_identity();
                    if h == e {
                        ok &= op.approx_eq(&self.braid_simple(b, a).adjoint());
                    }
                    rep_item(!ok, || format!("a={} b={}", self.lname(a), self.lname(b)))
                })
                .collect::<Vec<_>>(),
        );
        rep
    }

    /// `F' · ARᵀ = ALᵀ · F` with `F' = F^{γa γb γc}_{γd}`.
    fn f_compatible(&self, g: usize, [a, b, c, d]: [usize; 4]) -> bool {
        let cat = self.cat();
        let r = self.rank();
        let p = |x| self.act_label(g, x);
        let n = |x, y, z| cat.n(x, y, z);
        let fm = cat.f(a, b, c, d);
        let fp = cat.f(p(a), p(b), p(c), p(d));
        let dim = fm.rows();
        let mut al = Mat::<F>::zeros(dim, dim);
        let mut ar = Mat::<F>::zeros(dim, dim);
        for x in 0..r {
            let (a1, a2) = (self.vertex_action(g, a, b, x), self.vertex_action(g, x, c, d));
            for al0 in 0..n(a, b, x) {
                for be0 in 0..n(x, c, d) {
                    let col = cat.f_row(a, b, c, d, x, al0, be0);
                    for al1 in 0..n(a, b, x) {
                        for be1 in 0..n(x, c, d) {
                            let row = cat.f_row(p(a), p(b), p(c), p(d), p(x), al1, be1);
                            al[(row, col)] = a1[(al1, al0)].clone() * &a2[(be1, be0)];
                        }
                    }
                }
            }
            let (b1, b2) = (self.vertex_action(g, b, c, x), self.vertex_action(g, a, x, d));
            for mu0 in 0..n(b, c, x) {
                for nu0 in 0..n(a, x, d) {
                    let col = cat.f_col(a, b, c, d, x, mu0, nu0);
                    for mu1 in 0..n(b, c, x) {
                        for nu1 in 0..n(a, x, d) {
                            let row = cat.f_col(p(a), p(b), p(c), p(d), p(x), mu1, nu1);
                            ar[(row, col)] = b1[(mu1, mu0)].clone() * &b2[(nu1, nu0)];
                        }
                    }
                }
            }
        }
        fm.mul(&ar.transpose()).approx_eq(&al.transpose().mul(fp))
    }

    /// `c(x, ab)(1_x ⊗ v) = (γ_{∂x}(v) ⊗ 1_x) c(x, c)`
    fn natural_second(&self, x: usize, (a, b, c, mu): (usize, usize, usize, usize)) -> bool {
        let cat = self.cat();
        let v = cat.vertex(a, b, c, mu);
        let sx = [self.s(x)];
        let lhs = self
            .braid(&sx, &[self.s(a), self.s(b)])
            .unwrap()
            .compose(&cat.lid(&sx, &v));
        let rhs = cat
            .rid(&self.act(self.grade(x), &v), &sx)
            .compose(&self.braid(&sx, &[self.s(c)]).unwrap());
        lhs.approx_eq(&rhs)
    }

    /// `c(ab, y)(v ⊗ 1_y) = (1_{γy} ⊗ v) c(c, y)`
    fn natural_first(&self, (a, b, c, mu): (usize, usize, usize, usize), y: usize) -> bool {
        let cat = self.cat();
        let v = cat.vertex(a, b, c, mu);
        let sy = [self.s(y)];
        let gy = [self.s(self.act_label(self.grade(c), y))];
        let lhs = self
            .braid(&[self.s(a), self.s(b)], &sy)
            .unwrap()
            .compose(&cat.rid(&v, &sy));
        let rhs = cat.lid(&gy, &v).compose(&self.braid(&[self.s(c)], &sy).unwrap());
        lhs.approx_eq(&rhs)
    }

    fn br(&self, x: &[Obj], y: &[Obj]) -> Mor<F> {
        self.braid(x, y).expect("homogeneous")
    }

    fn br_op(&self, x: &[Obj], y: &[Obj]) -> Mor<F> {
        self.braid_op(x, y).expect("homogeneous")
    }

    /// `c(XY, Z) = (c(X, γ_{∂Y} Z) ⊗ 1_Y)(1_X ⊗ c(Y, Z))`
    fn br1(&self, [x, y, z]: [usize; 3]) -> bool {
        let cat = self.cat();
        let (sx, sy, sz) = ([self.s(x)], [self.s(y)], [self.s(z)]);
        let gz = [self.s(self.act_label(self.grade(y), z))];
        let lhs = self.br(&[self.s(x), self.s(y)], &sz);
        let rhs = cat
            .rid(&self.br(&sx, &gz), &sy)
            .compose(&cat.lid(&sx, &self.br(&sy, &sz)));
        lhs.approx_eq(&rhs)
    }

    /// `c(X, YZ) = (1_{γY} ⊗ c(X, Z))(c(X, Y) ⊗ 1_Z)`
    fn br2(&self, [x, y, z]: [usize; 3]) -> bool {
        let cat = self.cat();
        let (sx, sy, sz) = ([self.s(x)], [self.s(y)], [self.s(z)]);
        let gy = [self.s(self.act_label(self.grade(x), y))];
        let lhs = self.br(&sx, &[self.s(y), self.s(z)]);
        let rhs = cat
            .lid(&gy, &self.br(&sx, &sz))
            .compose(&cat.rid(&self.br(&sx, &sy), &sz));
        lhs.approx_eq(&rhs)
    }

    /// `c⁻(XY, Z) = (c⁻(X, Z) ⊗ 1)(1_X ⊗ c⁻(Y, Z))`
    fn br1_op(&self, [x, y, z]: [usize; 3]) -> bool {
        let cat = self.cat();
        let (sx, sy, sz) = ([self.s(x)], [self.s(y)], [self.s(z)]);
        let hi = self.group().inv(self.grade(z));
        let gy = [self.s(self.act_label(hi, y))];
        let lhs = self.br_op(&[self.s(x), self.s(y)], &sz);
        let rhs = cat
            .rid(&self.br_op(&sx, &sz), &gy)
            .compose(&cat.lid(&sx, &self.br_op(&sy, &sz)));
        lhs.approx_eq(&rhs)
    }

    /// `c⁻(X, YZ) = (1_Y ⊗ c⁻(γ_{∂Y⁻¹} X, Z))(c⁻(X, Y) ⊗ 1_Z)`
    fn br2_op(&self, [x, y, z]: [usize; 3]) -> bool {
        let cat = self.cat();
        let (sx, sy, sz) = ([self.s(x)], [self.s(y)], [self.s(z)]);
        let gx = [self.s(self.act_label(self.group().inv(self.grade(y)), x))];
        let lhs = self.br_op(&sx, &[self.s(y), self.s(z)]);
        let rhs = cat
            .lid(&sy, &self.br_op(&gx, &sz))
            .compose(&cat.rid(&self.br_op(&sx, &sy), &sz));
        lhs.approx_eq(&rhs)
    }

    /// `(c(γ_g Y, γ_g Z) ⊗ 1)(1 ⊗ c(X, Z))(c(X, Y) ⊗ 1)
    ///  = (1 ⊗ c(X, Y))(c(X, γ_h Z) ⊗ 1)(1 ⊗ c(Y, Z))`
    fn ybe(&self, [x, y, z]: [usize; 3]) -> bool {
        let cat = self.cat();
        let (g, h) = (self.grade(x), self.grade(y));
        let (sx, sy, sz) = ([self.s(x)], [self.s(y)], [self.s(z)]);
        let gy = [self.s(self.act_label(g, y))];
        let gz = [self.s(self.act_label(g, z))];
        let hz = [self.s(self.act_label(h, z))];
        let ghz = [self.s(self.act_label(g, hz[0].as_simple().unwrap()))];
        let lhs = cat
            .rid(&self.br(&gy, &gz), &sx)
            .compose(&cat.lid(&gy, &self.br(&sx, &sz)))
            .compose(&cat.rid(&self.br(&sx, &sy), &sz));
        let rhs = cat
            .lid(&ghz, &self.br(&sx, &sy))
            .compose(&cat.rid(&self.br(&sx, &hz), &sy))
            .compose(&cat.lid(&sx, &self.br(&sy, &sz)));
        lhs.approx_eq(&rhs)
    }
}

fn rep_item(bad: bool, w: impl FnOnce() -> String) -> Option<String> {
    bad.then(w)
}
