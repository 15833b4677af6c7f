if __package__=="nashforge.algebra":
    from .pparts import *
else:
    import sys, os
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from pparts import *


def _require_prime(ctx:PolyContext, what:str):
    if not ctx.field.is_prime_field:
        raise CharacteristicError("%s needs a prime characteristic, the input is over %s" % (what, ctx.field))
    return ctx.field.characteristic


########################################################################################################################
# p^e-th roots
########################################################################################################################

def root_labels(nvars:int, q:int):
    """Exponent vectors in [0, q)^nvars, the first coordinate varying fastest."""
    return [tuple(reversed(t)) for t in itertools.product(range(q), repeat=nvars)]


def root_decomposition(f, q:int):
    """
    f = sum_alpha u_alpha^q x^alpha with alpha in [0, q)^d, returned as {alpha: u_alpha} (nonzero parts only).

    A monomial x^mu contributes to alpha = mu mod q with x^(mu // q); coefficients pass unchanged since c^q = c
    in F_p.
    """
    ring = f.ring
    parts = {}
    for m, c in f.items():
        alpha = tuple(e % q for e in m)
        mu = tuple(e // q for e in m)
        parts.setdefault(alpha, {})[mu] = c
    return {alpha: ring.from_dict(terms) for alpha, terms in parts.items()}


def reassemble(parts:dict, q:int, ring):
    """sum_alpha u_alpha^q x^alpha, the inverse of `root_decomposition(., q)`."""
    out = ring.zero
    for alpha, u in parts.items():
        out += u**q * ring.from_dict({tuple(alpha): ring.domain.one})
    return out


def frobenius_power(ideal:Ideal, q:int):
    """I^[q] = (f^q : f in I), generated by the q-th powers of any generating set."""
    return Ideal(ideal.ctx, [g**q for g in ideal.basis])


def frobenius_pushforward(ideal:Ideal, e:int=1):
    """
    Presentation of R^{1/q}, q = p^e, as an R-module.

    ### Args:
        - `ideal` (Ideal): I over F_p.
        - `e` (int): Frobenius power, e >= 1.

    ### Returns:
        A `ModulePresentation` with generators e_alpha = x^(alpha/q), alpha in [0, q)^d' (`root_labels` order),
        and one row per Gröbner generator f_j and beta in [0, q)^d': the root decomposition of x^beta f_j.
        `generic_rank_expected` is q^d.
    """
    p = _require_prime(ideal.ctx, "the Frobenius pushforward")
    if e < 1:
        raise InputError("Frobenius power must be >= 1, got %d" % e)
    ctx = ideal.ctx
    q = p**e
    labels = root_labels(ctx.ngens, q)
    rows = []
    for f in ideal.basis:
        for beta in labels:
            parts = root_decomposition(f * ctx.monomial(beta), q)
            rows.append(tuple(parts.get(alpha, ctx.zero) for alpha in labels))
    expected = None if ideal.is_unit else q**krull_dimension(ideal)
    return ModulePresentation(ideal, labels, rows, expected)


########################################################################################################################
# Regularity and F-purity tests at the origin
########################################################################################################################

@dataclass
class KunzResult:
    """REGULAR iff R^{1/q} is free of rank q^d at the origin, read from the two Fitting conditions."""
    verdict: str
    e: int
    generators: int
    expected_rank: int
    conditions: FittingConditions


def kunz_test(ideal:Ideal, e:int=1):
    """
    Regularity at the origin through freeness of the Frobenius pushforward.

    Fitt_r(R^{1/q}) = R at the origin and Fitt_{r-1} = 0 for r = q^d are tested in rank form
    (see `fitting_conditions`).
    """
    check_origin(ideal)
    M = frobenius_pushforward(ideal, e)
    r = M.generic_rank_expected
    cond = fitting_conditions(M, r)
    verdict = "REGULAR" if cond.free else "SINGULAR"
    return KunzResult(verdict, e, M.ngens, r, cond)


def _outside_frobenius_maximal(f, p:int):
    """True when some monomial of f has every exponent below p, i.e. f is not in m^[p]."""
    return any(all(a < p for a in m) for m, c in f.items() if c)


@dataclass
class FedderResult:
    verdict: str
    method: str
    witness: str = None
    colon_generators: list = None


def fedder_test(ideal:Ideal):
    """
    F-purity of R at the origin: F_PURE iff (I^[p] : I) is not contained in m^[p] = (x_1^p, ..., x_d^p).

    For a hypersurface f the colon is (f^(p-1)) + I^[p], so only f^(p-1) is tested. The witness is the first
    element of the colon (in basis order) outside m^[p].
    """
    p = _require_prime(ideal.ctx, "the F-purity test")
    check_origin(ideal)
    ctx = ideal.ctx
    if ideal.is_zero:
        return FedderResult("F_PURE", "polynomial ring", ctx.format(ctx.one), [ctx.format(ctx.one)])
    if is_hypersurface(ideal):
        w = ideal.basis[0]**(p - 1)
        pure = _outside_frobenius_maximal(w, p)
        return FedderResult("F_PURE" if pure else "NOT_F_PURE", "hypersurface", ctx.format(w) if pure else None,
                            [ctx.format(w)])
    colon = ideal_colon(frobenius_power(ideal, p), ideal)
    basis = colon.basis
    witness = next((g for g in basis if _outside_frobenius_maximal(g, p)), None)
    verdict = "F_PURE" if witness is not None else "NOT_F_PURE"
    return FedderResult(verdict, "colon", ctx.format(witness) if witness is not None else None,
                        [ctx.format(g) for g in basis])


@dataclass
class SmoothnessResult:
    verdict: str
    jacobian_rank: int
    codimension: int
    dim: int


def jacobian_smoothness(ideal:Ideal):
    """SMOOTH iff the Jacobian of the Gröbner generators has rank d' - d at the origin."""
    check_origin(ideal)
    ctx = ideal.ctx
    d = krull_dimension(ideal)
    h = ctx.ngens - d
    jac = [[g.const() for g in row] for row in ctx.jacobian(ideal.basis)]
    rank = matrix_rank(jac, ctx.field, ncols=ctx.ngens) if jac else 0
    return SmoothnessResult("SMOOTH" if rank == h else "SINGULAR", rank, h, d)


if __name__ == '__main__':
    ctx = PolyContext(("x", "y"), FieldSpec(2))
    cusp = Ideal(ctx, ["x^3 + y^2"])
    M = frobenius_pushforward(cusp)
    for row in M.formatted_rows():
        print(row)
    print(kunz_test(cusp).verdict, fedder_test(cusp).verdict, jacobian_smoothness(cusp).verdict)
