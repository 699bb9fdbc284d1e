//! Gauge transformations (twistings) by 2-cochains, and the tensor
//! decomposition of generalized Clifford algebras.

use crate::cochain::{build_f_gca, gca_braiding_direct, Braiding, Cochain2, Cochain3, GcaParams};
use crate::error::{Error, Result};
use crate::quasialg::{braided_tensor_algebra, QuasiAlgebra};
use crate::weakhopf::{CoalgebraData, WeakHopfData};

/// An invertible normalized 2-cochain F acting Vec_G^Φ → Vec_G^{Φ·∂F}.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeTransform {
    cochain: Cochain2,
}

impl GaugeTransform {
    /// Values of a [`Cochain2`] are already invertible and normalized.
    pub fn new(cochain: Cochain2) -> Self {
        GaugeTransform { cochain }
    }

    pub fn cochain(&self) -> &Cochain2 {
        &self.cochain
    }

    pub fn inverse(&self) -> GaugeTransform {
        GaugeTransform {
            cochain: self.cochain.invert(),
        }
    }

    /// Twisting by `self` then `other` is twisting by this.
    pub fn then(&self, other: &GaugeTransform) -> Result<GaugeTransform> {
        Ok(GaugeTransform {
            cochain: self.cochain.pointwise_product(&other.cochain)?,
        })
    }

    fn check(&self, spec: &crate::group::GroupSpec, ctx: &crate::scalar::ScalarContext) -> Result<()> {
        spec.check(self.cochain.spec())?;
        ctx.check(self.cochain.ctx())
    }

    /// Φ·∂F
    pub fn twist_associator(&self, phi: &Cochain3) -> Result<Cochain3> {
        self.check(phi.spec(), phi.ctx())?;
        phi.pointwise_product(&self.cochain.coboundary())
    }

    /// F(R)(x,y) = F(x,y)/F(y,x) · R(x,y)
    pub fn twist_braiding(&self, r: &Braiding) -> Result<Braiding> {
        self.check(r.spec(), r.ctx())?;
        r.pointwise_product(&self.cochain.braiding())
    }

    /// x ·_F y = F(|x|,|y|) x·y
    pub fn twist_algebra(&self, a: &QuasiAlgebra) -> Result<QuasiAlgebra> {
        self.check(a.spec(), a.ctx())?;
        let dim = a.dim();
        let deg = a.basis().degrees();
        let mut product = Vec::with_capacity(dim * dim);
        for x in 0..dim {
            for y in 0..dim {
                product.push(a.product(x, y).scale(self.cochain.value(deg[x], deg[y]))?);
            }
        }
        let braiding = a.braiding().map(|r| self.twist_braiding(r)).transpose()?;
        QuasiAlgebra::new(
            a.basis().clone(),
            a.ctx(),
            product,
            a.unit(),
            self.twist_associator(a.phi())?,
            braiding,
        )
    }

    /// Δ_F(u) = F(|u_1|,|u_2|)^{-1} u_1 ⊗ u_2; ε unchanged.
    pub fn twist_coalgebra(&self, c: &CoalgebraData) -> Result<CoalgebraData> {
        self.check(c.spec(), c.ctx())?;
        let inv = self.cochain.invert();
        let deg = c.basis().degrees();
        let comul = (0..c.basis().dim())
            .map(|x| {
                c.comul(x)
                    .iter()
                    .map(|t| Ok((t.left, t.right, t.coeff.try_mul(inv.value(deg[t.left], deg[t.right]))?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CoalgebraData::new(c.basis().clone(), c.ctx(), comul, c.counits().to_vec())
    }

    /// Twists algebra and coalgebra; S is kept.
    pub fn twist_weak_hopf(&self, h: &WeakHopfData) -> Result<WeakHopfData> {
        WeakHopfData::new(
            self.twist_algebra(h.algebra())?,
            self.twist_coalgebra(h.coalgebra())?,
            h.antipode().to_vec(),
        )
    }
}

/// Both sides of a tensor decomposition of k_{F_GCA}[Z_n^m] and the
/// degree-matching basis map between them.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub whole: QuasiAlgebra,
    pub split: QuasiAlgebra,
    /// `map[i]` is the index in `split` of whole's basis element i.
    pub map: Vec<usize>,
    pub mismatch: Option<(usize, usize)>,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Splits the generator range at the given cut points; each block becomes
/// a twisted group algebra zero-padded into Z_n^m, and the blocks are
/// combined left to right by ⊗̂ in (Φ ≡ 1, R_GCA).
fn decompose_at(params: &GcaParams, cuts: &[usize]) -> Result<Decomposition> {
    let spec = params.group()?;
    let ctx = params.ctx();
    let phi = Cochain3::trivial(&spec, ctx);
    let r = gca_braiding_direct(params)?;
    let whole = QuasiAlgebra::twisted_group_algebra(&build_f_gca(params)?);
    let mut bounds = vec![0];
    bounds.extend_from_slice(cuts);
    bounds.push(params.m());
    let mut split: Option<QuasiAlgebra> = None;
    for w in bounds.windows(2) {
        let factor = QuasiAlgebra::twisted_group_algebra(&build_f_gca(&params.slice(w[0], w[1])?)?)
            .embed_grading(&spec, w[0])?;
        split = Some(match split {
            None => factor,
            Some(acc) => braided_tensor_algebra(&acc, &factor, &phi, &r)?,
        });
    }
    let split = split.expect("at least one block");
    let map = whole.bijection_by_degree(&split)?;
    let mismatch = whole.table_mismatch(&split, &map)?;
    Ok(Decomposition {
        whole,
        split,
        map,
        mismatch,
    })
}

/// C^{(n)}(q_1..q_m) against C^{(n)}(q_1..q_l) ⊗̂ C^{(n)}(q_{l+1}..q_m).
pub fn decompose(params: &GcaParams, l: usize) -> Result<Decomposition> {
    if l < 1 || l >= params.m() {
        return Err(Error::Parameter(format!(
            "split index {l} outside 1..{} for m = {}",
            params.m(),
            params.m()
        )));
    }
    decompose_at(params, &[l])
}

/// C^{(n)}(q_1..q_m) against C^{(n)}(q_1) ⊗̂ ⋯ ⊗̂ C^{(n)}(q_m).
pub fn decompose_fully(params: &GcaParams) -> Result<Decomposition> {
    if params.m() < 2 {
        return Err(Error::Parameter("m = 1 admits no split".into()));
    }
    let cuts: Vec<usize> = (1..params.m()).collect();
    decompose_at(params, &cuts)
}

/// The split at `l` and the full split both hold.
pub fn verify_decomposition(params: &GcaParams, l: usize) -> Result<bool> {
    Ok(decompose(params, l)?.holds() && decompose_fully(params)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{build_f_clifford, build_f_octonion};
    use crate::group::GroupSpec;
    use crate::scalar::ScalarContext;
    use crate::weakhopf::{canonical_weak_hopf, twisted_weak_hopf, verify_weak_hopf};

    fn group_algebra(spec: &GroupSpec, ctx: &ScalarContext) -> QuasiAlgebra {
        QuasiAlgebra::twisted_group_algebra(&Cochain2::trivial(spec, ctx))
    }

    #[test]
    fn twisting_the_group_algebra() {
        let p = GcaParams::symbolic(3, 2).unwrap();
        let f = build_f_gca(&p).unwrap();
        let g = GaugeTransform::new(f.clone());
        let base = group_algebra(f.spec(), f.ctx())
            .with_braiding(Some(Braiding::trivial(f.spec(), f.ctx())))
            .unwrap();
        let twisted = g.twist_algebra(&base).unwrap();
        let direct = QuasiAlgebra::twisted_group_algebra(&f);
        assert_eq!(twisted, direct);
        assert_eq!(
            g.twist_braiding(&Braiding::trivial(f.spec(), f.ctx())).unwrap(),
            gca_braiding_direct(&p).unwrap()
        );
        assert_eq!(g.inverse().twist_algebra(&twisted).unwrap(), base);
    }

    #[test]
    fn twisting_weak_hopf_data() {
        for f in [
            build_f_gca(&GcaParams::symbolic(2, 2).unwrap()).unwrap(),
            build_f_clifford(3).unwrap(),
            build_f_octonion(3).unwrap(),
        ] {
            let g = GaugeTransform::new(f.clone());
            let canon = canonical_weak_hopf(f.spec(), f.ctx()).unwrap();
            let twisted = g.twist_weak_hopf(&canon).unwrap();
            assert_eq!(twisted, twisted_weak_hopf(&f).unwrap());
            let phi = g.twist_associator(&Cochain3::trivial(f.spec(), f.ctx())).unwrap();
            let r = g.twist_braiding(&Braiding::trivial(f.spec(), f.ctx())).unwrap();
            assert!(verify_weak_hopf(&twisted, &phi, &r).unwrap().all_pass());
            assert_eq!(g.inverse().twist_weak_hopf(&twisted).unwrap(), canon);
        }
    }

    #[test]
    fn identity_gauge_is_inert() {
        let spec = GroupSpec::new(vec![2, 3]).unwrap();
        let ctx = ScalarContext::new(6, 0).unwrap();
        let g = GaugeTransform::new(Cochain2::trivial(&spec, &ctx));
        let h = canonical_weak_hopf(&spec, &ctx).unwrap();
        assert_eq!(g.twist_weak_hopf(&h).unwrap(), h);
    }

    #[test]
    fn decompositions() {
        let p = GcaParams::symbolic(2, 2).unwrap();
        let d = decompose(&p, 1).unwrap();
        assert!(d.holds());
        assert_eq!(d.split.basis().label(d.map[3]), "u_(1)⊗u_(1)");
        assert!(decompose_fully(&GcaParams::symbolic(3, 3).unwrap()).unwrap().holds());
        assert!(verify_decomposition(&GcaParams::symbolic(2, 3).unwrap(), 2).unwrap());
        assert!(matches!(
            decompose(&GcaParams::symbolic(2, 1).unwrap(), 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(decompose(&p, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn decomposition_needs_the_braiding() {
        let p = GcaParams::symbolic(2, 2).unwrap();
        let spec = p.group().unwrap();
        let ctx = p.ctx();
        let whole = QuasiAlgebra::twisted_group_algebra(&build_f_gca(&p).unwrap());
        let factors: Vec<_> = (0..2)
            .map(|i| {
                QuasiAlgebra::twisted_group_algebra(&build_f_gca(&p.slice(i, i + 1).unwrap()).unwrap())
                    .embed_grading(&spec, i)
                    .unwrap()
            })
            .collect();
        let flat = braided_tensor_algebra(
            &factors[0],
            &factors[1],
            &Cochain3::trivial(&spec, ctx),
            &Braiding::trivial(&spec, ctx),
        )
        .unwrap();
        let map = whole.bijection_by_degree(&flat).unwrap();
        assert!(whole.table_mismatch(&flat, &map).unwrap().is_some());
    }
}
