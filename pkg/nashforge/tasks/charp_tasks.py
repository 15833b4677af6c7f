if __package__=="nashforge.tasks":
    from .base_task import *
else:
    import os, sys
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from base_task import *


SRF_HEURISTIC_CAVEAT = "the strong F-regularity label is a heuristic read from the core chain, not a certificate"


class FPureTask(Task):
    """F-purity at the origin by the colon criterion."""
    name = "fpure"

    def compute(self, inp:VarietyInput):
        result = fedder_test(inp.ideal)
        evidence = {
            "method": result.method,
            "witness": result.witness,
            "colon_generators": result.colon_generators,
        }
        return evidence, krull_dimension(inp.ideal), None

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        return "F_PURE" if evidence["witness"] is not None else "NOT_F_PURE"


class KunzTask(Task):
    """Regularity at the origin from freeness of R^{1/p^e}."""
    name = "kunz"
    needs_domain = True

    def compute(self, inp:VarietyInput):
        result = kunz_test(inp.ideal, self._e)
        cond = result.conditions
        evidence = {
            "e": result.e,
            "generators": result.generators,
            "expected_rank": result.expected_rank,
            "rank_at_origin": cond.rank_at_origin,
            "relation_rank": cond.relation_rank,
        }
        return evidence, krull_dimension(inp.ideal), self._e

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        slack = evidence["generators"] - evidence["expected_rank"]
        free = evidence["rank_at_origin"] >= slack and evidence["relation_rank"] <= slack
        return "REGULAR" if free else "SINGULAR"

    def verify(self, inp:VarietyInput, evidence:dict):
        smooth = jacobian_smoothness(inp.ideal).verdict
        if (self.verdict_from_evidence(evidence) == "REGULAR") != (smooth == "SMOOTH"):
            raise ConsistencyError("Kunz test and Jacobian criterion disagree (Jacobian says %s)" % smooth)


class SmoothTask(Task):
    """Jacobian criterion at the origin."""
    name = "smooth"

    def compute(self, inp:VarietyInput):
        result = jacobian_smoothness(inp.ideal)
        evidence = {
            "jacobian_rank": result.jacobian_rank,
            "codimension": result.codimension,
        }
        return evidence, result.dim, None

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        return "SMOOTH" if evidence["jacobian_rank"] == evidence["codimension"] else "SINGULAR"

    def verify(self, inp:VarietyInput, evidence:dict):
        if not inp.ctx.field.is_prime_field:
            return
        kunz = kunz_test(inp.ideal, self._e).verdict
        if (kunz == "REGULAR") != (self.verdict_from_evidence(evidence) == "SMOOTH"):
            raise ConsistencyError("Jacobian criterion and Kunz test disagree (Kunz says %s)" % kunz)


class SummaryTask(Task):
    """
    Smoothness, Kunz, F-purity, the order-1 Nash check and the core chain side by side, checked against the
    implications that tie them together:

    - a singular point with F-pure (or characteristic 0) local ring never has an isomorphic order-1 Nash blowup;
    - in positive characteristic Kunz and the Jacobian criterion agree;
    - STRONGLY_F_REGULAR_LIKELY is only given to F-pure inputs whose core chain keeps growing.
    """
    name = "summary"
    needs_domain = True

    def compute(self, inp:VarietyInput):
        I = inp.ideal
        prime = inp.ctx.field.is_prime_field
        smooth = jacobian_smoothness(I).verdict
        nash = nash_isomorphism_check(I, 1, verbose=self._verbose).verdict
        fpure = fedder_test(I).verdict if prime else None
        kunz = kunz_test(I, self._e).verdict if prime else None
        chain = differential_core_chain(I, self._depth, verbose=self._verbose)
        if fpure == "F_PURE" and chain.verdict == "CORE_ZERO_LIKELY":
            srf = "STRONGLY_F_REGULAR_LIKELY"
        else:
            srf = "NOT_CLAIMED"
        evidence = {
            "smooth": smooth,
            "kunz": kunz,
            "fpure": fpure,
            "nash_order_1": nash,
            "core_codims": chain.codims,
            "core_chain": chain.verdict,
            "strong_f_regularity": srf,
        }
        return evidence, krull_dimension(I), 1

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        singular = evidence["smooth"] == "SINGULAR"
        fpure = evidence["fpure"]
        iso = evidence["nash_order_1"] == "ISO_CERTIFIED"
        if singular and iso and fpure in (None, "F_PURE"):
            return "INCONSISTENT"
        if evidence["kunz"] is not None and (evidence["kunz"] == "REGULAR") != (not singular):
            return "INCONSISTENT"
        if evidence["strong_f_regularity"] == "STRONGLY_F_REGULAR_LIKELY" and fpure != "F_PURE":
            return "INCONSISTENT"
        return "CONSISTENT"

    def verify(self, inp:VarietyInput, evidence:dict):
        if self.verdict_from_evidence(evidence) != "CONSISTENT":
            raise ConsistencyError("summary relations violated: %s" % json.dumps(evidence, sort_keys=True))

    def caveats(self, inp:VarietyInput):
        return super().caveats(inp) + [SRF_HEURISTIC_CAVEAT]
