//! A pair of projections and the identities that govern it.
//!
//! For projections `p`, `q` the fixed notation throughout is
//!
//! ```text
//! a = pqp        b = pq(1-p)        d = (1-p)q(1-p)
//! ```
//!
//! so that `q = a + b + b* + d` splits along the ranges of `p` and `1-p`.
//! The checks in this module verify the identity layer: the block Gram
//! identities, the transfer rules that move MP inverses between corners,
//! closed forms for `(1-pq)^+`, and the join/meet constructions. Each
//! check computes its claim by formula and judges it either against a
//! second independent route or against the subspace oracle; no check ever
//! assumes the conclusion it is verifying.

use crate::report::{pair_fingerprint, StableDigest, StatementId, TheoremReport};
use crate::ring::{
    is_projection, judged_idempotent, judged_penrose, judged_projection, penrose_residuals,
    Decision, RingError, StarRing,
};
use crate::subspace::{Subspace, SubspaceBackend};

/// Validated pair of projections with the block pieces cached.
#[derive(Clone, Debug)]
pub struct ProjectionPair<R: StarRing> {
    p: R,
    q: R,
    pbar: R,
    qbar: R,
    a: R,
    b: R,
    d: R,
}

/// Run `mp` and record a hard failure on the report if the backend could
/// not produce it (the exact backend never fails; the float backend only
/// on SVD non-convergence).
fn mp_for<R: StarRing>(report: &mut TheoremReport, label: &str, x: &R) -> Option<R> {
    match x.mp() {
        Ok(m) => Some(m),
        Err(_) => {
            report.require(&format!("{label}_mp_computed"), false);
            None
        }
    }
}

fn oracle_step<T>(report: &mut TheoremReport, label: &str, r: Result<T, RingError>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(_) => {
            report.require(&format!("{label}_oracle_computed"), false);
            None
        }
    }
}

impl<R: StarRing> ProjectionPair<R> {
    /// Validate both inputs as projections of matching dimension and
    /// cache the block decomposition.
    pub fn new(p: R, q: R) -> Result<Self, RingError> {
        let n = p.dim();
        if q.dim() != n {
            return Err(RingError::DimensionMismatch {
                left: (n, n),
                right: (q.dim(), q.dim()),
            });
        }
        if !is_projection(&p) || !is_projection(&q) {
            return Err(RingError::NotProjection);
        }
        let pbar = p.complement();
        let qbar = q.complement();
        let a = p.mul(&q).mul(&p);
        let b = p.mul(&q).mul(&pbar);
        let d = pbar.mul(&q).mul(&pbar);
        Ok(ProjectionPair { p, q, pbar, qbar, a, b, d })
    }

    pub fn p(&self) -> &R {
        &self.p
    }

    pub fn q(&self) -> &R {
        &self.q
    }

    pub fn pbar(&self) -> &R {
        &self.pbar
    }

    pub fn qbar(&self) -> &R {
        &self.qbar
    }

    pub fn a(&self) -> &R {
        &self.a
    }

    pub fn b(&self) -> &R {
        &self.b
    }

    pub fn d(&self) -> &R {
        &self.d
    }

    pub fn b_star(&self) -> R {
        self.b.adjoint()
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// The same geometry seen from the complements: `(1-p, 1-q)`.
    pub fn complement_pair(&self) -> Self {
        ProjectionPair {
            p: self.pbar.clone(),
            q: self.qbar.clone(),
            pbar: self.p.clone(),
            qbar: self.q.clone(),
            a: self.pbar.mul(&self.qbar).mul(&self.pbar),
            b: self.pbar.mul(&self.qbar).mul(&self.p),
            d: self.p.mul(&self.qbar).mul(&self.p),
        }
    }

    pub fn one_minus_pq(&self) -> R {
        self.p.identity_like().sub(&self.p.mul(&self.q))
    }

    pub fn one_minus_qp(&self) -> R {
        self.p.identity_like().sub(&self.q.mul(&self.p))
    }

    pub fn p_plus_q_minus_qp(&self) -> R {
        self.p.add(&self.q).sub(&self.q.mul(&self.p))
    }

    /// `(1-pq)^+` by closed form: `(p-a)^+(1+b) + 1-p`. The only MP call
    /// is on the self-adjoint corner `p-a`.
    pub fn mp_one_minus_pq(&self) -> Result<R, RingError> {
        let pa_mp = self.p.sub(&self.a).mp()?;
        let one_plus_b = self.p.identity_like().add(&self.b);
        Ok(pa_mp.mul(&one_plus_b).add(&self.pbar))
    }

    /// `(p-pqp)^+` computed as `(1-pq)^+ p`, transferring the inverse of
    /// the full element down to the corner.
    pub fn mp_p_minus_pqp(&self) -> Result<R, RingError> {
        Ok(self.one_minus_pq().mp()?.mul(&self.p))
    }

    /// `((1-p)q)^+` computed as `q((1-p)q(1-p))^+`, transferring the
    /// inverse of the corner `d` up to the rectangular product.
    pub fn mp_transfer(&self) -> Result<R, RingError> {
        Ok(self.q.mul(&self.d.mp()?))
    }

    /// The projection onto `pR + qR`: `p + (1-p)((1-p)q)^+`.
    pub fn join_projection(&self) -> Result<R, RingError> {
        let pbar_q_mp = self.pbar.mul(&self.q).mp()?;
        Ok(self.p.add(&self.pbar.mul(&pbar_q_mp)))
    }

    /// The projection onto `pR ∩ qR`: `p - p(p(1-q))^+`.
    pub fn meet_projection(&self) -> Result<R, RingError> {
        let p_qbar_mp = self.p.mul(&self.qbar).mp()?;
        Ok(self.p.sub(&self.p.mul(&p_qbar_mp)))
    }
}

impl<R: SubspaceBackend + StableDigest> ProjectionPair<R> {
    pub fn fingerprint(&self) -> String {
        pair_fingerprint(&self.p, &self.q)
    }

    pub fn range_p(&self) -> Result<Subspace<R>, RingError> {
        Subspace::column_space(&self.p)
    }

    pub fn range_q(&self) -> Result<Subspace<R>, RingError> {
        Subspace::column_space(&self.q)
    }

    pub fn range_pbar(&self) -> Result<Subspace<R>, RingError> {
        Subspace::column_space(&self.pbar)
    }

    pub fn range_qbar(&self) -> Result<Subspace<R>, RingError> {
        Subspace::column_space(&self.qbar)
    }

    /// Block Gram identities: `bb* = (p-a) - (p-a)^2` and
    /// `b*b = d - d^2`.
    pub fn check_block_gram(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L2_2, self.fingerprint());
        let pa = self.p.sub(&self.a);
        let bs = self.b_star();
        r.check_eq("bb_star_vs_defect", &self.b.mul(&bs), &pa.sub(&pa.mul(&pa)));
        r.check_eq("b_star_b_vs_defect", &bs.mul(&self.b), &self.d.sub(&self.d.mul(&self.d)));
        r
    }

    /// Transfer identities tying `b` to the corner inverses, plus the
    /// existence of an MP inverse for `p - q`.
    pub fn check_transfer_identities(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L2_3, self.fingerprint());
        let pa = self.p.sub(&self.a);
        let bs = self.b_star();
        let Some(pa_mp) = mp_for(&mut r, "corner", &pa) else { return r };
        let Some(d_mp) = mp_for(&mut r, "d", &self.d) else { return r };
        r.check_eq("corner_absorbs_b", &pa.mul(&pa_mp).mul(&self.b), &self.b);
        r.check_eq("d_absorbs_b", &self.b.mul(&self.d).mul(&d_mp), &self.b);
        r.check_eq("b_shifts_right", &self.b.mul(&d_mp), &pa_mp.mul(&self.b));
        r.check_eq("b_star_shifts_left", &d_mp.mul(&bs), &bs.mul(&pa_mp));
        let diff = self.p.sub(&self.q);
        match diff.mp() {
            Ok(diff_mp) => {
                let worst = penrose_residuals(&diff, &diff_mp)
                    .into_iter()
                    .fold(0.0f64, f64::max);
                r.record_residual_decision(
                    "difference_penrose_max",
                    worst,
                    judged_penrose(&diff, &diff_mp),
                );
            }
            Err(_) => r.require("difference_mp_computed", false),
        }
        r
    }

    /// Closed forms around `1 - pq`: the corner transfer
    /// `(p-pqp)^+ = (1-pq)^+ p`, the closed expression
    /// `(1-pq)^+ = (p-a)^+(1+b) + 1-p`, and the two products of `1-pq`
    /// with its inverse, both equal to `(p-a)(p-a)^+ + 1-p`.
    pub fn check_closed_forms(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L2_5, self.fingerprint());
        let pa = self.p.sub(&self.a);
        let one_minus_pq = self.one_minus_pq();
        let Some(pa_mp) = mp_for(&mut r, "corner", &pa) else { return r };
        let Some(global_mp) = mp_for(&mut r, "one_minus_pq", &one_minus_pq) else { return r };
        r.check_eq("corner_from_global", &pa_mp, &global_mp.mul(&self.p));
        let closed = pa_mp
            .mul(&self.p.identity_like().add(&self.b))
            .add(&self.pbar);
        r.check_eq("global_closed_form", &global_mp, &closed);
        let target = pa.mul(&pa_mp).add(&self.pbar);
        r.check_eq("left_product", &one_minus_pq.mul(&global_mp), &target);
        r.check_eq("right_product", &global_mp.mul(&one_minus_pq), &target);
        r
    }

    /// `pqp(pqp)^+ pq = pq`: the corner's range projection absorbs `pq`.
    pub fn check_product_absorption(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L3_1, self.fingerprint());
        let Some(a_mp) = mp_for(&mut r, "pqp", &self.a) else { return r };
        let pq = self.p.mul(&self.q);
        r.check_eq("absorption", &self.a.mul(&a_mp).mul(&pq), &pq);
        r
    }

    /// The transfer formula `((1-p)q)^+ = q((1-p)q(1-p))^+`, judged both
    /// against the backend MP inverse and against the Penrose equations
    /// directly.
    pub fn check_transfer_formula(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L3_2_1, self.fingerprint());
        let pbar_q = self.pbar.mul(&self.q);
        let Some(via_corner) = oracle_step(&mut r, "transfer", self.mp_transfer()) else {
            return r;
        };
        let Some(backend) = mp_for(&mut r, "pbar_q", &pbar_q) else { return r };
        r.check_eq("route_agreement", &via_corner, &backend);
        let worst = penrose_residuals(&pbar_q, &via_corner)
            .into_iter()
            .fold(0.0f64, f64::max);
        r.record_residual_decision("penrose_max", worst, judged_penrose(&pbar_q, &via_corner));
        r
    }

    /// `p + (1-p)((1-p)q)^+` is a projection whose range is `pR + qR`.
    pub fn check_join(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L3_2_2, self.fingerprint());
        let Some(x) = oracle_step(&mut r, "join", self.join_projection()) else { return r };
        r.require_decision("is_projection", judged_projection(&x));
        let Some(range_x) = oracle_step(&mut r, "range_x", Subspace::column_space(&x)) else {
            return r;
        };
        let Some(rp) = oracle_step(&mut r, "range_p", self.range_p()) else { return r };
        let Some(rq) = oracle_step(&mut r, "range_q", self.range_q()) else { return r };
        let Some(sum) = oracle_step(&mut r, "sum", rp.sum(&rq)) else { return r };
        let Some(eq) = oracle_step(&mut r, "equality", range_x.equals(&sum)) else { return r };
        r.require_decision("range_is_join", eq);
        r
    }

    /// `p - p(p(1-q))^+` is a projection whose range is `pR ∩ qR`.
    pub fn check_meet(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L3_2_3, self.fingerprint());
        let Some(y) = oracle_step(&mut r, "meet", self.meet_projection()) else { return r };
        r.require_decision("is_projection", judged_projection(&y));
        let Some(range_y) = oracle_step(&mut r, "range_y", Subspace::column_space(&y)) else {
            return r;
        };
        let Some(rp) = oracle_step(&mut r, "range_p", self.range_p()) else { return r };
        let Some(rq) = oracle_step(&mut r, "range_q", self.range_q()) else { return r };
        let Some(meet) = oracle_step(&mut r, "intersection", rp.intersection(&rq)) else {
            return r;
        };
        let Some(eq) = oracle_step(&mut r, "equality", range_y.equals(&meet)) else { return r };
        r.require_decision("range_is_meet", eq);
        r
    }

    /// `pR + qR = R` iff the corner `(1-p)q(1-p)` has the same range as
    /// `1-p`. Both sides are evaluated by the oracle and compared.
    pub fn check_surjectivity_criterion(&self) -> TheoremReport {
        let mut r = TheoremReport::new(StatementId::L3_2_4, self.fingerprint());
        let Some(rp) = oracle_step(&mut r, "range_p", self.range_p()) else { return r };
        let Some(rq) = oracle_step(&mut r, "range_q", self.range_q()) else { return r };
        let Some(sum) = oracle_step(&mut r, "sum", rp.sum(&rq)) else { return r };
        let join_whole = sum.is_whole();
        let Some(corner_range) = oracle_step(&mut r, "range_d", Subspace::column_space(&self.d))
        else {
            return r;
        };
        let Some(rpbar) = oracle_step(&mut r, "range_pbar", self.range_pbar()) else { return r };
        let Some(corner_full) = oracle_step(&mut r, "corner_eq", corner_range.equals(&rpbar))
        else {
            return r;
        };
        r.flag("join_is_whole", join_whole.holds);
        r.flag("corner_range_is_pbar", corner_full.holds);
        r.require_decision(
            "equivalence",
            Decision {
                holds: join_whole.holds == corner_full.holds,
                marginal: join_whole.marginal || corner_full.marginal,
            },
        );
        r
    }
}

/// For an idempotent `e`: `ee^+` projects onto `eR` and `1 - e^+e`
/// projects onto `(1-e)R`. The idempotency of the input is a hypothesis,
/// so a non-idempotent input yields an inconclusive report, not a failure.
pub fn check_idempotent_ranges<R: SubspaceBackend + StableDigest>(
    e: &R,
    fingerprint: String,
) -> TheoremReport {
    let mut r = TheoremReport::new(StatementId::L3_3, fingerprint);
    let idem = judged_idempotent(e);
    r.flag("input_idempotent", idem.holds);
    if idem.marginal {
        r.mark_inconclusive("hypothesis_marginal");
        return r;
    }
    if !idem.holds {
        r.mark_inconclusive("hypothesis_not_satisfied");
        return r;
    }
    let Some(e_mp) = mp_for(&mut r, "e", e) else { return r };
    let ee_mp = e.mul(&e_mp);
    let left_defect = e.identity_like().sub(&e_mp.mul(e));
    let one_minus_e = e.complement();
    let steps = (|| -> Result<(Decision, Decision), RingError> {
        let range_proj = Subspace::column_space(&ee_mp)?;
        let range_e = Subspace::column_space(e)?;
        let range_defect = Subspace::column_space(&left_defect)?;
        let range_comp = Subspace::column_space(&one_minus_e)?;
        Ok((range_proj.equals(&range_e)?, range_defect.equals(&range_comp)?))
    })();
    match steps {
        Ok((range_side, kernel_side)) => {
            r.require_decision("range_of_ee_mp", range_side);
            r.require_decision("range_of_defect", kernel_side);
        }
        Err(_) => r.require("oracle_computed", false),
    }
    r
}
