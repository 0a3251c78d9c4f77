# domain/constructions/pipeline.py

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from domain.algebra.algebra import Algebra
from domain.algebra.bracket import BracketPreconditionError, a_bracket_i
from domain.algebra.ideals import (
    Ideal,
    left_annihilator_space,
    left_multiple,
    quotient,
    residual_identity,
    right_annihilator_space,
    right_multiple,
    sandwich,
)
from domain.algebra.properties import NakayamaPermutation, is_self_injective
from domain.algebra.quiver import is_acyclic, valued_quiver
from domain.constructions.isomorphism import IsoBudget, algebra_isomorphism, socle_equivalent
from domain.constructions.twist import find_twist_witness
from domain.modules.decomposition import DEFAULT_SPLIT_ATTEMPTS, DecompositionError
from domain.modules.hom import hom_dim
from domain.modules.homology import id_le_1, is_tilting, pd_le_1, tau, tau_inverse
from domain.modules.module import Module, module_annihilator, restrict_to_quotient
from domain.modules.trace import dual_trace_ideal, trace_ideal
from domain.slices.slice import Slice, SliceHypothesisError, classify_slice, slice_module
from domain.status import Verdict

logger = logging.getLogger(__name__)


STAGES = (
    "self_injective",
    "slice",
    "annihilator",
    "hom_vanishing",
    "tilting",
    "annihilator_identities",
    "trace_identities",
    "quiver_acyclic",
    "bracket",
    "socle_equivalence",
)


@dataclass
class StageResult:
    """ok = None : verdict indéterminé (budget)."""

    name: str
    ok: Optional[bool]
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"stage": self.name, "ok": self.ok, "details": self.details}


@dataclass
class TheoremReport:
    slice_names: List[str]
    stages: List[StageResult] = field(default_factory=list)
    m_module: Optional[Module] = None
    ideal: Optional[Ideal] = None
    survivors: List[str] = field(default_factory=list)
    b_algebra: Optional[Algebra] = None
    bracket_algebra: Optional[Algebra] = None
    socle_verdict: Verdict = Verdict.UNDETERMINED
    direct_isomorphism: Verdict = Verdict.UNDETERMINED
    contradiction: bool = False
    witnesses: Dict[str, Any] = field(default_factory=dict)

    def stage(self, name: str) -> Optional[StageResult]:
        return next((s for s in self.stages if s.name == name), None)

    @property
    def failed_stage(self) -> Optional[str]:
        return next((s.name for s in self.stages if s.ok is False), None)

    @property
    def complete(self) -> bool:
        return len(self.stages) == len(STAGES)

    @property
    def ok(self) -> bool:
        return self.complete and all(s.ok for s in self.stages)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "slice": self.slice_names,
            "stages": [s.to_dict() for s in self.stages],
            "failed_stage": self.failed_stage,
            "contradiction": self.contradiction,
            "socle_equivalent": self.socle_verdict.value,
            "direct_isomorphism": self.direct_isomorphism.value,
        }
        if self.ideal is not None:
            out["ideal_dim"] = self.ideal.dim
            out["residual_vertices"] = self.survivors
        if self.b_algebra is not None:
            out["b"] = {"dim": self.b_algebra.dim, "quiver": valued_quiver(self.b_algebra).to_dict()}
        if self.bracket_algebra is not None:
            out["a_bracket_i"] = {"dim": self.bracket_algebra.dim}
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


# ------------------------------------------------------------------ #
# Étapes
# ------------------------------------------------------------------ #


def _annihilator_identities(a: Algebra, ideal: Ideal, e) -> Dict[str, bool]:
    r_i = right_annihilator_space(a, ideal.basis)
    l_i = left_annihilator_space(a, ideal.basis)
    e_i = left_multiple(a, e, ideal.space)
    i_e = right_multiple(a, ideal.space, e)
    eie = sandwich(a, e, ideal.space)
    return {
        "r_A(I) = eI": r_i == e_i,
        "l_A(I) = Ie": l_i == i_e,
        "(eIe)^2 = 0": a.product_span(eie.basis, eie.basis).dim == 0,
    }


def _trace_identities(a: Algebra, m: Module, ideal: Ideal, e) -> Dict[str, bool]:
    j = trace_ideal(a, m).space
    j_dual = dual_trace_ideal(a, m).space
    i = ideal.space
    return {
        "J ⊆ I": i.contains_space(j),
        "J' ⊆ I": i.contains_space(j_dual),
        "l_A(I) = J": left_annihilator_space(a, i.basis) == j,
        "r_A(I) = J'": right_annihilator_space(a, i.basis) == j_dual,
        "I = r_A(J)": right_annihilator_space(a, j.basis) == i,
        "I = l_A(J')": left_annihilator_space(a, j_dual.basis) == i,
        "eIe = eJe": sandwich(a, e, i) == sandwich(a, e, j),
        "Ie = J": right_multiple(a, i, e) == j,
        "eI = J'": left_multiple(a, e, i) == j_dual,
    }


def theorem_pipeline(
    a: Algebra,
    d: Slice,
    budget: Optional[IsoBudget] = None,
    attempts: int = DEFAULT_SPLIT_ATTEMPTS,
    seed: int = 0,
    search_twist: bool = True,
) -> TheoremReport:
    """
    Chaîne complète : section héréditaire presque régulière à droite Δ,
    M = M(Δ), I = r_A(M), B = A/I basculée, identités d'annulateurs, A[I]
    auto-injective et socle-équivalente à A.

    Un échec est consigné dans le rapport (étape en défaut), jamais levé.
    """
    g = d.quiver
    if g.algebra is not a:
        raise ValueError("la section n'appartient pas au carquois de l'algèbre fournie")
    report = TheoremReport(d.names)
    try:
        _run(a, d, report, budget, attempts, seed, search_twist)
    except (SliceHypothesisError, DecompositionError, BracketPreconditionError) as exc:
        logger.warning("Chaîne interrompue : %s", exc)
        report.stages.append(StageResult("error", False, {"message": str(exc)}))
    except Exception as exc:
        logger.exception("Erreur inattendue dans la chaîne du théorème")
        raise RuntimeError(f"Erreur inattendue dans la chaîne du théorème: {exc}") from exc
    if report.contradiction:
        logger.error("Identités d'annulateurs violées : incohérence d'implémentation.")
    elif report.ok:
        logger.info("Chaîne du théorème validée sur %s.", d.describe())
    return report


def _run(
    a: Algebra,
    d: Slice,
    report: TheoremReport,
    budget: Optional[IsoBudget],
    attempts: int,
    seed: int,
    search_twist: bool,
) -> None:
    stages = report.stages
    nakayama: Optional[NakayamaPermutation] = is_self_injective(a)
    stages.append(StageResult(
        "self_injective", nakayama is not None,
        {"nakayama_permutation": str(nakayama)} if nakayama is not None else {},
    ))
    if nakayama is None:
        return

    classification = classify_slice(d.quiver, d, attempts, seed)
    slice_ok = classification.hereditary and classification.almost_right_regular
    stages.append(StageResult("slice", slice_ok, classification.to_dict()))
    if not slice_ok:
        return

    m = slice_module(d)
    ideal = Ideal.classified(a, module_annihilator(m))
    e, survivors = residual_identity(a, ideal)
    qmap = quotient(a, ideal)
    b = qmap.target
    report.m_module, report.ideal, report.b_algebra = m, ideal, b
    report.survivors = [a.vertex_names[v] for v in survivors]
    stages.append(StageResult("annihilator", ideal.is_two_sided, {
        "m_dim_vector": list(m.dim_vector),
        "ideal_dim": ideal.dim,
        "residual_vertices": report.survivors,
        "b_dim": b.dim,
    }))
    logger.info("B = A/r_A(M) : dim %d, sommets %s.", b.dim, report.survivors)

    m_b = restrict_to_quotient(m, qmap)
    left = hom_dim(tau_inverse(m_b), m_b)
    right = hom_dim(m_b, tau(m_b))
    stages.append(StageResult("hom_vanishing", left == 0 and right == 0, {
        "hom(tau_inv M, M)": left,
        "hom(M, tau M)": right,
    }))

    tilting = is_tilting(b, m_b)
    injective_ok = id_le_1(m_b)
    details = tilting.to_dict()
    details["pd_at_most_one"] = tilting.pd_at_most_one and pd_le_1(m_b)
    details["id_at_most_one"] = injective_ok
    stages.append(StageResult("tilting", tilting.is_tilting and injective_ok, details))

    identities = _annihilator_identities(a, ideal, e)
    stages.append(StageResult("annihilator_identities", all(identities.values()), identities))
    traces = _trace_identities(a, m, ideal, e)
    stages.append(StageResult("trace_identities", all(traces.values()), traces))
    if not identities["r_A(I) = eI"] or not identities["l_A(I) = Ie"]:
        report.contradiction = True
        return

    quiver_b = valued_quiver(b)
    stages.append(StageResult("quiver_acyclic", is_acyclic(quiver_b), {"quiver": quiver_b.to_dict()}))

    bracket = a_bracket_i(a, ideal)
    report.bracket_algebra = bracket
    bracket_nakayama = is_self_injective(bracket)
    same = bracket_nakayama is not None and bracket_nakayama.mapping == nakayama.mapping
    stages.append(StageResult("bracket", same, {
        "dim": bracket.dim,
        "nakayama_permutation": str(bracket_nakayama) if bracket_nakayama is not None else None,
    }))

    comparison = socle_equivalent(a, bracket, budget)
    report.socle_verdict = comparison.verdict
    verdict_ok = {Verdict.YES: True, Verdict.NO: False}.get(comparison.verdict)
    stages.append(StageResult("socle_equivalence", verdict_ok, comparison.to_dict()))

    direct = algebra_isomorphism(a, bracket, budget)
    report.direct_isomorphism = direct.verdict
    report.witnesses["direct_isomorphism"] = direct.to_dict()
    if search_twist:
        twist = find_twist_witness(b, bracket, budget)
        report.witnesses["orbit_form"] = twist.to_dict() if twist is not None else None
