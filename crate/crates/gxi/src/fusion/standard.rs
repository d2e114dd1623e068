use super::{Mor, SkeletalCategory};
use crate::kernel::Field;

/// Solution of the conjugate equations for one label, in a balanced gauge.
///
/// `r` has norm one and `rbar` norm `d`; the standard pair with equal norms
/// `√d` is `(√d · r, rbar / √d)`, which needs `√d` only as a bookkeeping factor.
#[derive(Clone, Debug)]
pub struct StandardSolution<F> {
    pub r: Mor<F>,
    pub rbar: Mor<F>,
    /// `d`, the square of the common norm of the standard pair.
    pub scale_sq: F,
}

impl<F: Field> SkeletalCategory<F> {
    /// `r : 1 → ā a` and `r̄ : 1 → a ā` satisfying both zig-zag identities.
    pub fn standard_solution(&self, a: usize) -> StandardSolution<F> {
        let u = self.unit();
        let ab = self.dual(a);
        let r = self.vertex(ab, a, u, 0).retype(vec![], vec![self.simple(ab), self.simple(a)]);
        let rbar0 = self.vertex(a, ab, u, 0).retype(vec![], vec![self.simple(a), self.simple(ab)]);
        let sa = [self.simple(a)];
        let zig = self.rid(&rbar0.adjoint(), &sa).compose(&self.lid(&sa, &r));
        let kappa = zig.blocks[a][(0, 0)].clone();
        let scale = kappa.conj().inv().expect("zig-zag coefficient vanishes");
        StandardSolution {
            r,
            rbar: rbar0.scale(&scale),
            scale_sq: self.qdim(a).clone(),
        }
    }

    /// Both zig-zag identities and the norm relation `|r̄|² = d²`.
    pub fn check_standard(&self, a: usize) -> Result<(), String> {
        let s = self.standard_solution(a);
        let ab = self.dual(a);
        let sa = [self.simple(a)];
        let sab = [self.simple(ab)];
        let z1 = self.rid(&s.rbar.adjoint(), &sa).compose(&self.lid(&sa, &s.r));
        if !z1.is_identity() {
            return Err("first zig-zag".into());
        }
        let z2 = self.rid(&s.r.adjoint(), &sab).compose(&self.lid(&sab, &s.rbar));
        if !z2.is_identity() {
            return Err("second zig-zag".into());
        }
        if !s.r.adjoint().compose(&s.r).blocks[self.unit()][(0, 0)].is_one() {
            return Err("|r| != 1".into());
        }
        let d2 = s.scale_sq.clone() * &s.scale_sq;
        if !s.rbar.adjoint().compose(&s.rbar).blocks[self.unit()][(0, 0)].eq_field(&d2) {
            return Err("|rbar|^2 != d^2".into());
        }
        Ok(())
    }
}
