if __package__=="nashforge.algebra":
    from .charp import *
else:
    import sys, os
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from charp import *


########################################################################################################################
# Finite linear groups
########################################################################################################################

def _key(matrix):
    return tuple(tuple(row) for row in matrix.tolist())


class GroupAction:
    """
    Finite group of invertible d' x d' matrices acting linearly on the variables of `ctx`, x_i -> sum_j g_ij x_j.

    ### Args:
        - `ctx` (PolyContext): Ring the group acts on.
        - `matrices` (list): numpy object arrays of field elements. The list must already be closed under products.

    Use `GroupAction.from_matrices` to build one from integer or `a/b` entries; it verifies closure, the identity,
    inverses and that the characteristic does not divide the order.
    """
    def __init__(self, ctx:PolyContext, matrices):
        self.ctx = ctx
        self.matrices = list(matrices)
        self.order = len(self.matrices)

    def __repr__(self):
        return "GroupAction(order=%d, degree=%d, field=%s)" % (self.order, self.ctx.ngens, self.ctx.field)

    def __len__(self):
        return self.order

    @classmethod
    def from_matrices(cls, ctx:PolyContext, entries, verbose:int=0):
        field = ctx.field
        K = field.domain
        d = ctx.ngens
        if not entries:
            raise InputError("a group needs at least one matrix")
        matrices = []
        seen = set()
        for k, m in enumerate(entries):
            if len(m) != d or any(len(row) != d for row in m):
                raise InputError("group matrix %d is not %d x %d" % (k + 1, d, d))
            arr = np.array([[field.scalar(v) for v in row] for row in m], dtype=object)
            if matrix_rank(arr.tolist(), field, ncols=d) != d:
                raise InputError("group matrix %d is not invertible over %s" % (k + 1, field))
            if _key(arr) not in seen:
                seen.add(_key(arr))
                matrices.append(arr)
        identity = np.array([[K.one if i == j else K.zero for j in range(d)] for i in range(d)], dtype=object)
        if _key(identity) not in seen:
            raise InputError("the group matrices do not contain the identity")
        for a in matrices:
            if not any(_key(a.dot(b)) == _key(identity) for b in matrices):
                raise InputError("the group matrices are not closed under inverses")
            for b in matrices:
                if _key(a.dot(b)) not in seen:
                    raise InputError("the group matrices are not closed under products")
        p = field.characteristic
        if p and len(matrices) % p == 0:
            raise UnsupportedScopeError("the characteristic %d divides the group order %d (modular case)"
                                        % (p, len(matrices)))
        log("group of order %d on %d variables" % (len(matrices), d), verbose)
        matrices.sort(key=lambda a: (_key(a) != _key(identity), [field.format_scalar(v) for v in a.flat]))
        return cls(ctx, matrices)

    def is_identity(self, g):
        K = self.ctx.domain
        d = self.ctx.ngens
        return all(g[i, j] == (K.one if i == j else K.zero) for i in range(d) for j in range(d))

    @property
    def is_trivial(self):
        return self.order == 1

    def act(self, g, f):
        """f(g x): simultaneous substitution of the linear forms sum_j g_ij x_j."""
        ctx = self.ctx
        d = ctx.ngens
        forms = []
        for i in range(d):
            forms.append(ctx.from_terms((tuple(1 if k == j else 0 for k in range(d)), g[i, j]) for j in range(d)))
        return f.compose(list(zip(ctx.gens, forms))) if d else f

    def formatted(self, g):
        return [[self.ctx.field.format_scalar(v) for v in row] for row in g.tolist()]


def reynolds(f, G:GroupAction):
    """(1/|G|) sum_g g.f, the projection onto the invariants."""
    ctx = G.ctx
    K = ctx.domain
    if ctx.field.characteristic and G.order % ctx.field.characteristic == 0:
        raise UnsupportedScopeError("Reynolds operator needs |G| invertible; %d is zero in %s" % (G.order, ctx.field))
    f = ctx.convert(f)
    total = ctx.zero
    for g in G.matrices:
        total += G.act(g, f)
    return total * ctx.ring.ground_new(K.one / K(G.order))


def is_invariant(f, G:GroupAction):
    return all(G.act(g, f) == f for g in G.matrices)


########################################################################################################################
# Invariant rings
########################################################################################################################

@dataclass
class InvariantRingPresentation:
    """
    Fundamental invariants u_1..u_m (polynomials in x) and the ideal of relations among them in K[u_1..u_m].
    """
    group: GroupAction
    generators: list
    names: tuple
    degrees: list
    presentation: Ideal

    @property
    def ring_context(self):
        return self.presentation.ctx

    def formatted(self):
        ctx = self.group.ctx
        return {
            "generators": {name: ctx.format(u) for name, u in zip(self.names, self.generators)},
            "presentation": self.presentation.formatted_basis(),
        }


def _coefficient_rows(polys, monomials):
    index = {m: k for k, m in enumerate(monomials)}
    return [{index[m]: c for m, c in f.items()} for f in polys]


def _invariant_names(ctx:PolyContext, m:int):
    for prefix in ("u", "t", "inv_u"):
        names = tuple("%s%d" % (prefix, k + 1) for k in range(m))
        if not set(names) & set(ctx.variables):
            return names
    raise InputError("cannot pick names for the invariants that avoid %s" % ", ".join(ctx.variables))


def _eliminate_into(ctx:PolyContext, names:tuple, links, extra=()):
    """Ideal of K[names] obtained by eliminating the variables of `ctx` from `links` + `extra` in K[x, u]."""
    big = PolyContext(ctx.variables + names, ctx.field)
    d = ctx.ngens
    gens = [big.embed(f) for f in extra]
    for k, u in enumerate(links):
        gens.append(big.gens[d + k] - big.embed(u))
    return eliminate(Ideal(big, gens), ctx.variables)


def invariant_generators(G:GroupAction, verbose:int=0):
    """
    Fundamental invariants and their relations.

    Degrees 1..|G| are scanned (the degree bound holds when |G| is invertible). In each degree, Reynolds images of
    the monomials are kept when they are not in the span of products of the invariants already chosen. The
    relations come from eliminating x from (u_i - u_i(x)).
    """
    ctx = G.ctx
    d = ctx.ngens
    field = ctx.field
    chosen = []
    degrees = []
    span = {0: [ctx.one]}
    for k in range(1, G.order + 1):
        monos = monomials_of_degree(d, k)
        products = []
        for u, a in zip(chosen, degrees):
            products.extend(u * s for s in span.get(k - a, []))
        rows = _coefficient_rows(products, monos)
        reduced, _ = row_reduce(rows, len(monos), field)
        rank = len(reduced)
        basis = [ctx.from_terms((monos[j], c) for j, c in r.items()) for r in reduced]
        for mono in monos:
            image = reynolds(ctx.monomial(mono), G)
            if not image:
                continue
            if matrix_rank(_coefficient_rows(basis + [image], monos), field, ncols=len(monos)) > rank:
                image = image.monic()
                chosen.append(image)
                degrees.append(k)
                basis.append(image)
                rank += 1
        span[k] = basis
        log("invariants: degree %d, %d generators so far" % (k, len(chosen)), verbose)
    names = _invariant_names(ctx, len(chosen))
    presentation = _eliminate_into(ctx, names, chosen)
    return InvariantRingPresentation(G, chosen, names, degrees, presentation)


@dataclass
class PseudoReflectionResult:
    verdict: str
    witness: list = None
    trivial_group: bool = False


def pseudo_reflection_check(G:GroupAction):
    """HYPOTHESIS_HOLDS unless a non-identity element fixes a hyperplane, i.e. rank(g - id) <= 1."""
    ctx = G.ctx
    K = ctx.domain
    d = ctx.ngens
    identity = np.array([[K.one if i == j else K.zero for j in range(d)] for i in range(d)], dtype=object)
    for g in G.matrices:
        if G.is_identity(g):
            continue
        if matrix_rank((g - identity).tolist(), ctx.field, ncols=d) <= 1:
            return PseudoReflectionResult("FAILS", G.formatted(g), G.is_trivial)
    if G.is_trivial:
        warnings.warn("the trivial group satisfies the hyperplane condition only vacuously", UserWarning)
    return PseudoReflectionResult("HYPOTHESIS_HOLDS", None, G.is_trivial)


@dataclass
class QuotientDiffPowerDims:
    """dim_K R^G / eta^<n+1> by elimination, by the graded Reynolds count and on the presentation ideal."""
    order: int
    codim: int
    bound: int
    verdict: str
    graded_count: int
    presentation_codim: int
    invariants: InvariantRingPresentation

    @property
    def paths_agree(self):
        return self.codim == self.graded_count == self.presentation_codim


def graded_invariant_count(G:GroupAction, n:int):
    """Number of linearly independent invariants of degree <= n (ranks of Reynolds images, degree by degree)."""
    ctx = G.ctx
    total = 0
    for k in range(n + 1):
        monos = monomials_of_degree(ctx.ngens, k)
        images = [reynolds(ctx.monomial(m), G) for m in monos]
        total += matrix_rank(_coefficient_rows(images, monos), ctx.field, ncols=len(monos))
    return total


def meet_with_invariants(G:GroupAction, n:int, invariants:InvariantRingPresentation=None, verbose:int=0):
    """
    m^n meet R^G as an ideal of K[u_1..u_m] (it contains the relations). For n = 1 this is the maximal ideal eta of
    R^G at the origin; for groups without pseudo-reflections it is the differential power eta^<n>.
    """
    if n < 1:
        raise InputError("order must be >= 1, got %d" % n)
    ctx = G.ctx
    inv = invariants or invariant_generators(G, verbose=verbose)
    return _eliminate_into(ctx, inv.names, inv.generators, ctx.power_of_maximal(n))


def quotient_diff_power_dims(G:GroupAction, n:int, invariants:InvariantRingPresentation=None, verbose:int=0):
    """
    dim_K R^G/eta^<n+1> against C(n+d, d) for X = Spec(R^G), order-n Nash blowup.

    Only licensed for non-trivial groups without pseudo-reflections: then eta^<n+1> = m^(n+1) meet R^G, computed
    in the coordinates u by eliminating x from (u_i - u_i(x)) + m_x^(n+1). Other groups raise
    `UnsupportedScopeError`.
    """
    if n < 1:
        raise InputError("order must be >= 1, got %d" % n)
    if G.is_trivial:
        raise UnsupportedScopeError("the quotient criterion needs a non-trivial group")
    check = pseudo_reflection_check(G)
    if check.verdict != "HYPOTHESIS_HOLDS":
        raise UnsupportedScopeError("the group contains a pseudo-reflection %s" % json.dumps(check.witness))
    ctx = G.ctx
    d = ctx.ngens
    inv = invariants or invariant_generators(G, verbose=verbose)
    eta = meet_with_invariants(G, n + 1, inv)
    codim = k_dimension(eta)
    bound = count_monomials(d, n)
    graded = graded_invariant_count(G, n)
    on_presentation = differential_power(inv.presentation, n + 1, verbose=verbose).codim
    verdict = "NOT_ISO" if codim < bound else "NO_OBSTRUCTION"
    log("quotient: codim %s, graded %d, presentation %s, bound %d" % (codim, graded, on_presentation, bound), verbose)
    return QuotientDiffPowerDims(n, codim, bound, verdict, graded, on_presentation, inv)


if __name__ == '__main__':
    ctx = PolyContext(("x", "y"), FieldSpec(0))
    G = GroupAction.from_matrices(ctx, [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]])
    inv = invariant_generators(G)
    print(inv.formatted())
    print(quotient_diff_power_dims(G, 1, inv).codim, quotient_diff_power_dims(G, 2, inv).codim)
