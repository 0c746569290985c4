//! Statement dispatch: one entry point from a statement id to the check
//! that verifies it, generic over the backend.

use anyhow::{bail, Result};
use projcalc_core::exact::ExactMatrix;
use projcalc_core::float::{FloatMatrix, ToleranceConfig};
use projcalc_core::idempotent::{self, EquivalenceClause};
use projcalc_core::pair::{check_idempotent_ranges, ProjectionPair};
use projcalc_core::report::{StatementId, TheoremReport};
use projcalc_core::Backend;

use crate::io::{LoadedMatrix, PairJson};

/// Run the check behind one statement id against a projection pair.
pub fn verify_statement<R: Backend>(id: StatementId, pair: &ProjectionPair<R>) -> TheoremReport {
    match id {
        StatementId::L2_2 => pair.check_block_gram(),
        StatementId::L2_3 => pair.check_transfer_identities(),
        StatementId::L2_5 => pair.check_closed_forms(),
        StatementId::L3_1 => pair.check_product_absorption(),
        StatementId::L3_2_1 => pair.check_transfer_formula(),
        StatementId::L3_2_2 => pair.check_join(),
        StatementId::L3_2_3 => pair.check_meet(),
        StatementId::L3_2_4 => pair.check_surjectivity_criterion(),
        // The range law for idempotents, exercised on the idempotent this
        // calculus actually produces from the pair. Idempotency of the
        // candidate is the check's own hypothesis gate; route agreement
        // for it is T3.4's claim, not this one's.
        StatementId::L3_3 => match pair.qbar().mul(pair.p()).mp() {
            Ok(e) => check_idempotent_ranges(&e, pair.fingerprint()),
            Err(_) => {
                let mut r = TheoremReport::new(StatementId::L3_3, pair.fingerprint());
                r.require("idempotent_constructed", false);
                r
            }
        },
        StatementId::T3_4 => idempotent::check_oblique_qbar_p(pair),
        StatementId::C3_5 => idempotent::check_disjoint_meet_case(pair),
        StatementId::C3_6 => idempotent::check_full_join_case(pair),
        StatementId::R3_8 => idempotent::check_meet_invertibility_link(pair),
        StatementId::T3_9 => idempotent::check_oblique_witnesses(pair),
        StatementId::C3_10 => idempotent::check_complemented_case(pair),
        StatementId::T3_11_1 => {
            idempotent::check_equality_equivalence(pair, EquivalenceClause::JoinIsWhole)
        }
        StatementId::T3_11_2 => {
            idempotent::check_equality_equivalence(pair, EquivalenceClause::MeetIsTrivial)
        }
        StatementId::T3_11_3 => {
            idempotent::check_equality_equivalence(pair, EquivalenceClause::Complemented)
        }
        StatementId::T3_13 => idempotent::check_orth_decomposition(pair),
    }
}

/// A projection pair in whichever backend its file declared.
pub enum PairHandle {
    Exact(ProjectionPair<ExactMatrix>),
    Float(ProjectionPair<FloatMatrix>),
}

impl PairHandle {
    /// Load and validate a deserialized pair: both matrices must share a
    /// backend and both must be projections.
    pub fn load(pair: &PairJson, tol: ToleranceConfig) -> Result<PairHandle> {
        let p = pair.p.load(tol)?;
        let q = pair.q.load(tol)?;
        match (p, q) {
            (LoadedMatrix::Exact(p), LoadedMatrix::Exact(q)) => {
                Ok(PairHandle::Exact(ProjectionPair::new(p, q)?))
            }
            (LoadedMatrix::Float(p), LoadedMatrix::Float(q)) => {
                Ok(PairHandle::Float(ProjectionPair::new(p, q)?))
            }
            _ => bail!("p and q are tagged with different backends"),
        }
    }

    pub fn verify(&self, id: StatementId) -> TheoremReport {
        match self {
            PairHandle::Exact(pair) => verify_statement(id, pair),
            PairHandle::Float(pair) => verify_statement(id, pair),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            PairHandle::Exact(pair) => pair.dim(),
            PairHandle::Float(pair) => pair.dim(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::MatrixJson;
    use projcalc_core::report::Verdict;

    fn transversal() -> ProjectionPair<ExactMatrix> {
        let p = ExactMatrix::diag_i64(&[1, 0]);
        let q = ExactMatrix::from_rational_rows(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
        ProjectionPair::new(p, q).unwrap()
    }

    #[test]
    fn every_statement_id_dispatches() {
        let pair = transversal();
        for id in StatementId::ALL {
            let report = verify_statement(id, &pair);
            assert_eq!(report.statement_id, id);
            assert!(!report.is_hard_fail(), "{id} failed on a healthy pair");
        }
    }

    #[test]
    fn statement_ids_map_to_their_own_checks() {
        // Spot-check that ids are not crossed: the meet check reports the
        // meet id, the join check the join id.
        let pair = transversal();
        assert_eq!(verify_statement(StatementId::L3_2_3, &pair).statement_id, StatementId::L3_2_3);
        assert_eq!(verify_statement(StatementId::T3_13, &pair).statement_id, StatementId::T3_13);
    }

    #[test]
    fn loading_rejects_mixed_backends_and_non_projections() {
        let tol = ToleranceConfig::default();
        let exact = MatrixJson::from_exact(&ExactMatrix::identity(2));
        let float = MatrixJson::from_float(&FloatMatrix::identity(2, tol));
        let mixed = PairJson { p: exact.clone(), q: float };
        assert!(PairHandle::load(&mixed, tol).is_err());

        let not_proj = MatrixJson::from_exact(&ExactMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]));
        let bad = PairJson { p: exact.clone(), q: not_proj };
        assert!(PairHandle::load(&bad, tol).is_err());

        let good = PairJson { p: exact.clone(), q: exact };
        let handle = PairHandle::load(&good, tol).unwrap();
        assert_eq!(handle.dim(), 2);
        let report = handle.verify(StatementId::L3_1);
        assert_eq!(report.verdict, Verdict::Pass);
    }
}
