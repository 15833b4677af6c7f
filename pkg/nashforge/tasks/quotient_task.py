if __package__=="nashforge.tasks":
    from .base_task import *
else:
    import os, sys
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from base_task import *


class QuotientTask(Task):
    """Order-n Nash obstruction for a quotient by a finite linear group without pseudo-reflections."""
    name = "quotient"

    def compute(self, inp:VarietyInput):
        if inp.group is None:
            raise InputError("the quotient task needs a [group] block with matrices")
        if not inp.ideal.is_zero:
            raise UnsupportedScopeError("group quotients are only taken of the full polynomial ring (empty ideal)")
        n = self._order
        ctx = inp.ctx
        G = GroupAction.from_matrices(ctx, inp.group, verbose=self._verbose)
        check = pseudo_reflection_check(G)
        inv = invariant_generators(G, verbose=self._verbose)
        dims = quotient_diff_power_dims(G, n, inv, verbose=self._verbose)
        described = inv.formatted()
        evidence = {
            "group_order": G.order,
            "pseudo_reflection_check": check.verdict,
            "invariants": described["generators"],
            "invariant_degrees": inv.degrees,
            "presentation": described["presentation"],
            "codim": dims.codim,
            "bound": dims.bound,
            "graded_count": dims.graded_count,
            "presentation_codim": dims.presentation_codim,
        }
        return evidence, ctx.ngens, n

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        return "NOT_ISO" if evidence["codim"] < evidence["bound"] else "NO_OBSTRUCTION"

    def verify(self, inp:VarietyInput, evidence:dict):
        counts = (evidence["codim"], evidence["graded_count"], evidence["presentation_codim"])
        if len(set(counts)) != 1:
            raise ConsistencyError("quotient dimensions disagree: elimination %s, graded %s, presentation %s" % counts)
