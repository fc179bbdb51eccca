//! `M⊗_V N` as a quotient of `M⊗₂N` by the balancing congruence.

use std::sync::Arc;

use crate::suplat::{check_bimorphism, classify_bimorphism, congruence, tensor_sup, SupCongruence, TensorSup};
use crate::vmat::same_base;
use crate::{Error, Result};

use super::{check_module_map, VModule};

#[derive(Clone, Debug)]
pub struct TensorModule {
    pub left: VModule,
    pub right: VModule,
    pub tensor: TensorSup,
    pub congruence: SupCongruence,
    pub module: VModule,
}

/// Generates the least sup-congruence on `M⊗₂N` containing
/// `π(ρ(v,x),y) ~ π(x,θ(v,y))` and closed under the action `ρ⊗id`. Seeding
/// on `π`-images suffices because they join-generate `M⊗₂N`.
pub fn tensor_mod(m: &VModule, n: &VModule) -> Result<TensorModule> {
    same_base(m.base(), n.base())?;
    let q = m.base().clone();
    let t = tensor_sup(m.carrier(), n.carrier())?;
    let mut actions = Vec::with_capacity(q.size());
    for v in q.elements() {
        let f: Vec<usize> = m
            .carrier()
            .elements()
            .flat_map(|x| n.carrier().elements().map(move |y| (x, y)))
            .map(|(x, y)| t.pi(m.act(v, x), y))
            .collect();
        actions.push(classify_bimorphism(&t, t.lattice(), &f)?);
    }
    let mut seeds = Vec::new();
    for v in q.elements() {
        for x in m.carrier().elements() {
            for y in n.carrier().elements() {
                seeds.push((t.pi(m.act(v, x), y), t.pi(x, n.act(v, y))));
            }
        }
    }
    let c = congruence(t.lattice(), &seeds, &actions)?;
    let classes = c.classes();
    let mut action = Vec::with_capacity(q.size() * classes);
    for act in &actions {
        for i in 0..classes {
            action.push(c.project(act[c.representative(i)]));
        }
    }
    let module = VModule::new(q, c.quotient().clone(), action)
        .map_err(|e| Error::internal(format!("induced action on M⊗N violates module laws: {e}")))?;
    Ok(TensorModule { left: m.clone(), right: n.clone(), tensor: t, congruence: c, module })
}

impl TensorModule {
    /// The universal balanced bimorphism `(x,y) ↦ [π(x,y)]`.
    pub fn pi(&self, x: usize, y: usize) -> usize {
        self.congruence.project(self.tensor.pi(x, y))
    }

    /// Classifies a bimorphism `f: M×N → P` that is balanced
    /// (`f(ρ(v,x),y) = f(x,θ(v,y))`) and equivariant
    /// (`f(ρ(v,x),y) = σ(v,f(x,y))`).
    pub fn classify(&self, p: &VModule, f: &[usize]) -> Result<Vec<usize>> {
        same_base(self.module.base(), p.base())?;
        let (m, n) = (&self.left, &self.right);
        let bim = check_bimorphism(m.carrier(), n.carrier(), p.carrier(), f)?;
        if !bim.is_ok() {
            return Err(Error::precondition(format!("not a bimorphism: {bim}")));
        }
        let width = n.size();
        for v in m.base().elements() {
            for x in 0..m.size() {
                for y in 0..width {
                    let lhs = f[m.act(v, x) * width + y];
                    if lhs != f[x * width + n.act(v, y)] {
                        return Err(Error::precondition(format!("not balanced at ({v},{x},{y})")));
                    }
                    if lhs != p.act(v, f[x * width + y]) {
                        return Err(Error::precondition(format!("not equivariant at ({v},{x},{y})")));
                    }
                }
            }
        }
        let on_tensor = classify_bimorphism(&self.tensor, p.carrier(), f)?;
        let out = self
            .congruence
            .factor(&on_tensor)
            .ok_or_else(|| Error::internal("balanced classifier does not respect the congruence"))?;
        let r = check_module_map(&self.module, p, &out)?;
        if !r.is_ok() {
            return Err(Error::internal(format!("classifier is not a module map: {r}")));
        }
        Ok(out)
    }
}

/// `l_M: V⊗_V M → M`, classified from `ρ`; errors unless it is an
/// isomorphism of modules.
pub fn left_unitor(m: &VModule) -> Result<(TensorModule, Vec<usize>)> {
    let v = VModule::on_itself(Arc::clone(m.base()));
    let tm = tensor_mod(&v, m)?;
    let f: Vec<usize> =
        v.carrier().elements().flat_map(|a| m.carrier().elements().map(move |x| (a, x))).map(|(a, x)| m.act(a, x)).collect();
    let l = tm.classify(m, &f)?;
    if !tm.module.carrier().is_isomorphism(m.carrier(), &l) {
        return Err(Error::internal("left unitor is not an isomorphism"));
    }
    Ok((tm, l))
}
