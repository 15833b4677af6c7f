if __package__=="nashforge.tasks":
    from .base_task import *
else:
    import os, sys
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from base_task import *


def _oracle_disagreement(inp:VarietyInput, n:int, codim:int, cutoff:int=None):
    dim, used = jets_oracle_diff_dim(inp.ideal, n, cutoff)
    if dim != codim:
        raise ConsistencyError("order %d: differential power codimension %s but jets oracle %s (cutoff %d)"
                               % (n, codim, dim, used))


class NashCheckTask(Task):
    """Obstruction or hypersurface certificate for Nash_n(X) = X at the origin."""
    name = "nash-check"
    needs_domain = True

    def compute(self, inp:VarietyInput):
        n = self._order
        result = nash_isomorphism_check(inp.ideal, n, verbose=self._verbose)
        evidence = {
            "free_rank": result.free_rank,
            "expected_rank": result.expected,
            "diff_power_codim": result.free_rank,
            "generic_rank": result.generic_rank,
            "hypersurface": result.hypersurface,
            "minor_ideal": result.minor_ideal,
            "minor_ideal_generators": result.minor_ideal_generators,
            "principal_witness": result.principal_witness,
            "notes": result.notes or [],
        }
        return evidence, krull_dimension(inp.ideal), n

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        if evidence["free_rank"] < evidence["expected_rank"]:
            return "NOT_ISO"
        if evidence["hypersurface"] and evidence.get("minor_ideal_generators") == 1 and evidence.get("principal_witness"):
            return "ISO_CERTIFIED"
        return "NO_OBSTRUCTION"

    def verify(self, inp:VarietyInput, evidence:dict):
        _oracle_disagreement(inp, self._order + 1, evidence["diff_power_codim"], self._cutoff)


class DiffPowerTask(Task):
    """m^<n> at the origin, with the pairing rank."""
    name = "diffpower"

    def compute(self, inp:VarietyInput):
        n = self._order
        ctx = inp.ctx
        power = differential_power(inp.ideal, n, verbose=self._verbose)
        pairing = pairing_matrix(inp.ideal, n, power)
        evidence = {
            "generators": power.formatted(),
            "codim": power.codim,
            "standard_monomials": [monomial_label(ctx, m) for m in power.standard_monomials],
            "operator_count": len(power.operators),
            "operators": power.operators.formatted(),
            "pairing_rank": pairing.rank,
        }
        return evidence, krull_dimension(inp.ideal), n

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        return "PAIRING_NONDEGENERATE" if evidence["pairing_rank"] == evidence["codim"] else "PAIRING_DEGENERATE"

    def verify(self, inp:VarietyInput, evidence:dict):
        _oracle_disagreement(inp, self._order, evidence["codim"], self._cutoff)


class PPartsTask(Task):
    """Presentation, torsion and free rank of the module of principal parts P^n."""
    name = "pparts"
    needs_domain = True

    def compute(self, inp:VarietyInput):
        n = self._order
        ctx = inp.ctx
        I = inp.ideal
        M = principal_parts_presentation(I, n)
        c = parse_multiplier(ctx, self._multiplier)
        rank = free_rank_pparts(I, n, structural=True, c=c, verbose=self._verbose)
        path = rank.structural
        torsion = path.torsion
        evidence = {
            "generators": [monomial_label(ctx, g) for g in M.labels],
            "relations": M.formatted_rows(),
            "free_rank": rank.free_rank,
            "expected_rank": rank.expected,
            "multiplier": ctx.format(torsion.multiplier) if torsion is not None else None,
            "torsion_generators": torsion.formatted(ctx) if torsion is not None else None,
            "torsion_free": torsion.torsion_free if torsion is not None else None,
            "saturation_exponent": torsion.exponent if torsion is not None else None,
            "structural_conclusive": path.conclusive,
            "structural_free_rank": path.free_rank,
            "structural_generators": path.minimal_generators,
        }
        return evidence, krull_dimension(I), n

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        if evidence["structural_conclusive"] and evidence["structural_free_rank"] != evidence["free_rank"]:
            return "INCONSISTENT"
        return "FULL_FREE_RANK" if evidence["free_rank"] == evidence["expected_rank"] else "FREE_RANK_DEFICIENT"

    def verify(self, inp:VarietyInput, evidence:dict):
        if self.verdict_from_evidence(evidence) == "INCONSISTENT":
            raise ConsistencyError("structural free rank %s differs from the differential power codimension %s"
                                   % (evidence["structural_free_rank"], evidence["free_rank"]))
        _oracle_disagreement(inp, self._order + 1, evidence["free_rank"], self._cutoff)


class CoreChainTask(Task):
    """The chain m^<1>, ..., m^<depth> as evidence about the differential core."""
    name = "core-chain"

    def compute(self, inp:VarietyInput):
        chain = differential_core_chain(inp.ideal, self._depth, verbose=self._verbose)
        evidence = {
            "codims": chain.codims,
            "first_plateau": chain.first_plateau,
            "stable_ideal": chain.stable_ideal,
        }
        return evidence, krull_dimension(inp.ideal), self._depth

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        codims = evidence["codims"]
        if len(codims) < 2:
            return "INCONCLUSIVE"
        return "CORE_ZERO_LIKELY" if codims[-1] > codims[-2] else "CORE_STABILIZED"

    def verify(self, inp:VarietyInput, evidence:dict):
        for n, codim in enumerate(evidence["codims"], start=1):
            _oracle_disagreement(inp, n, codim, self._cutoff)


class OracleTask(Task):
    """Three independent values of dim_K R/m^<n>: the Gröbner staircase, the pairing rank and the jets oracle."""
    name = "oracle"

    def compute(self, inp:VarietyInput):
        n = self._order
        power = differential_power(inp.ideal, n, verbose=self._verbose)
        pairing = pairing_matrix(inp.ideal, n, power)
        jets, cutoff = jets_oracle_diff_dim(inp.ideal, n, self._cutoff)
        evidence = {
            "diff_power_codim": power.codim,
            "pairing_rank": pairing.rank,
            "jets_dim": jets,
            "jets_cutoff": cutoff,
        }
        return evidence, krull_dimension(inp.ideal), n

    @staticmethod
    def verdict_from_evidence(evidence:dict):
        values = {evidence["diff_power_codim"], evidence["pairing_rank"], evidence["jets_dim"]}
        return "AGREE" if len(values) == 1 else "DISAGREE"

    def verify(self, inp:VarietyInput, evidence:dict):
        if self.verdict_from_evidence(evidence) != "AGREE":
            raise ConsistencyError("oracle paths disagree: %s" % json.dumps(evidence, sort_keys=True))
