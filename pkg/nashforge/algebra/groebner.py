if __package__=="nashforge.algebra":
    from .core import *
else:
    import sys, os
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from core import *


########################################################################################################################
# Vectors over S
#
# Ideals are rank-1 submodules: every routine below works on tuples of PolyElements, ordered position over term
# (the lowest position dominates, then the ring's monomial order inside a position).
########################################################################################################################

def _lead(vector, ring):
    """(position, monomial, coefficient) of the leading term, or None for the zero vector."""
    for pos, f in enumerate(vector):
        if f:
            m = f.leading_expv()
            return pos, m, f[m]
    return None


def _is_zero(vector):
    return not any(vector)


def _sugar(vector):
    return max((sum(m) for f in vector for m in f), default=0)


def _position_key(vector, ring):
    """Sort key making larger elements (lower position, larger monomial) compare greater."""
    lt = _lead(vector, ring)
    return (-lt[0], ring.order(lt[1]))


def _monic(vector, ring):
    lt = _lead(vector, ring)
    if lt is None or lt[2] == ring.domain.one:
        return tuple(vector)
    inv = ring.domain.one / lt[2]
    return tuple(f.mul_ground(inv) if f else f for f in vector)


class GroebnerBasis:
    """
    Reduced Gröbner basis of a submodule of S^k (k = `rank`, k = 1 for ideals), in position-over-term order.

    Elements are monic, inter-reduced and sorted by (position, leading monomial), so two bases of the same
    submodule under the same order are identical element by element.
    """
    def __init__(self, ring, rank:int, vectors):
        self.ring = ring
        self.rank = rank
        self.vectors = tuple(tuple(v) for v in vectors)
        self.leads = [_lead(v, ring) for v in self.vectors]
        self._by_pos = {}
        for i, lt in enumerate(self.leads):
            self._by_pos.setdefault(lt[0], []).append(i)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    @property
    def polys(self):
        assert self.rank == 1, "Only ideal bases have a polynomial view."
        return [v[0] for v in self.vectors]

    @property
    def is_unit(self):
        """True when the submodule is all of S^k."""
        return sorted(pos for pos, m, _ in self.leads if not any(m)) == list(range(self.rank))

    def reduce(self, vector, counter:StepCounter=None):
        return _reduce(vector, self.vectors, self.leads, self._by_pos, self.ring, counter)

    def contains(self, vector):
        return _is_zero(self.reduce(vector))


def _reduce(vector, basis, leads, by_pos, ring, counter:StepCounter=None):
    """Full reduction of `vector` modulo `basis`; the remainder has no term divisible by a leading term."""
    div = ring.monomial_div
    K = ring.domain
    p = [f.copy() for f in vector]
    r = [ring.zero for _ in vector]
    while True:
        lt = _lead(p, ring)
        if lt is None:
            return tuple(r)
        pos, m, c = lt
        if not c:
            del p[pos][m]
            continue
        for i in by_pos.get(pos, ()):
            _, gm, gc = leads[i]
            q = div(m, gm)
            if q is None:
                continue
            if counter is not None:
                counter.tick()
            factor = c if gc == K.one else c / gc
            g = basis[i]
            for j in range(pos, len(p)):
                if g[j]:
                    p[j] = p[j] - g[j].mul_term((q, factor))
            break
        else:
            r[pos][m] = c
            del p[pos][m]


def _spoly(f, g, lf, lg, ring):
    L = ring.monomial_lcm(lf[1], lg[1])
    uf = ring.monomial_ldiv(L, lf[1])
    ug = ring.monomial_ldiv(L, lg[1])
    # basis elements are monic
    return tuple(a.mul_monom(uf) - b.mul_monom(ug) for a, b in zip(f, g))


def _update(G, leads, P, lead_new, rank, ring):
    """Gebauer-Moeller update of the pair set when an element with leading data `lead_new` joins G."""
    lcm = ring.monomial_lcm
    mul = ring.monomial_mul
    div = ring.monomial_div
    pos_h, m_h, _ = lead_new
    new = len(G)
    kept = set()
    for (i, j) in P:
        pi, mi, _ = leads[i]
        pj, mj, _ = leads[j]
        if pi != pos_h:
            kept.add((i, j))
            continue
        L = lcm(mi, mj)
        if div(L, m_h) is None or L == lcm(mi, m_h) or L == lcm(mj, m_h):
            kept.add((i, j))
    lcm_dict = {}
    for i, (pi, mi, _) in enumerate(leads):
        if pi == pos_h:
            lcm_dict.setdefault(lcm(mi, m_h), []).append(i)
    minimal = []
    for L in sorted(lcm_dict.keys(), key=ring.order):
        if all(div(L, L_) is None for L_ in minimal):
            minimal.append(L)
    for L in minimal:
        # product criterion only holds for ideals
        if rank == 1 and any(lcm(leads[i][1], m_h) == mul(leads[i][1], m_h) for i in lcm_dict[L]):
            continue
        kept.add((min(lcm_dict[L]), new))
    return kept


def buchberger(vectors, ring, rank:int, counter:StepCounter=None, verbose:int=0):
    """
    Buchberger's algorithm with sugar selection and both Buchberger criteria.

    ### Args:
        - `vectors` (list): Generators, tuples of `rank` PolyElements of `ring`.
        - `ring` (PolyRing): The ring, carrying the monomial order.
        - `rank` (int): Ambient free-module rank.
        - `counter` (StepCounter): Shared reduction budget. A fresh one is made if None.
        - `verbose` (int): Progress lines on stderr if > 0.

    ### Returns:
        A `GroebnerBasis` (reduced, monic, sorted).
    """
    counter = counter if counter is not None else StepCounter(what="Groebner basis")
    order = ring.order
    G, leads, sugars = [], [], []
    P = set()

    def add(vector, sugar):
        nonlocal P
        vector = _monic(vector, ring)
        lt = _lead(vector, ring)
        P = _update(G, leads, P, lt, rank, ring)
        G.append(vector)
        leads.append(lt)
        sugars.append(sugar)

    start = [tuple(v) for v in vectors if not _is_zero(v)]
    start.sort(key=lambda v: _position_key(v, ring), reverse=True)
    for v in start:
        add(v, _sugar(v))

    pair_keys = {}

    def pair_key(pair):
        if pair not in pair_keys:
            i, j = pair
            L = ring.monomial_lcm(leads[i][1], leads[j][1])
            dL = sum(L)
            s = max(sugars[i] + dL - sum(leads[i][1]), sugars[j] + dL - sum(leads[j][1]))
            pair_keys[pair] = (s, leads[i][0], order(L), i, j)
        return pair_keys[pair]

    processed = 0
    while P:
        pair = min(P, key=pair_key)
        P.discard(pair)
        i, j = pair
        s = _spoly(G[i], G[j], leads[i], leads[j], ring)
        by_pos = {}
        for k, lt in enumerate(leads):
            by_pos.setdefault(lt[0], []).append(k)
        h = _reduce(s, G, leads, by_pos, ring, counter)
        processed += 1
        if not _is_zero(h):
            add(h, pair_key(pair)[0])
        if verbose > 1 and processed % 100 == 0:
            log("buchberger: %d pairs processed, basis size %d, %d pending" % (processed, len(G), len(P)), verbose, 2)

    G, leads = _minimalize(G, leads, ring)
    G = _interreduce(G, leads, ring, counter)
    G.sort(key=lambda v: (_lead(v, ring)[0], order(_lead(v, ring)[1])))
    log("buchberger: %d pairs, final basis of %d elements" % (processed, len(G)), verbose)
    return GroebnerBasis(ring, rank, G)


def _minimalize(G, leads, ring):
    div = ring.monomial_div
    keep = []
    for i, (pi, mi, _) in enumerate(leads):
        redundant = False
        for j, (pj, mj, _) in enumerate(leads):
            if i == j or pi != pj or div(mi, mj) is None:
                continue
            if mi != mj or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    return [G[i] for i in keep], [leads[i] for i in keep]


def _interreduce(G, leads, ring, counter):
    out = []
    for i in range(len(G)):
        others = G[:i] + G[i+1:]
        other_leads = leads[:i] + leads[i+1:]
        by_pos = {}
        for k, lt in enumerate(other_leads):
            by_pos.setdefault(lt[0], []).append(k)
        out.append(_monic(_reduce(G[i], others, other_leads, by_pos, ring, counter), ring))
    return out


def is_groebner_basis(basis:GroebnerBasis):
    """Re-verify Buchberger's criterion: every S-pair of equal position reduces to zero."""
    ring = basis.ring
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if basis.leads[i][0] != basis.leads[j][0]:
                continue
            s = _spoly(basis.vectors[i], basis.vectors[j], basis.leads[i], basis.leads[j], ring)
            if not _is_zero(basis.reduce(s)):
                return False
    return True


########################################################################################################################
# Ideals and submodules
########################################################################################################################

class Ideal:
    """
    Ideal of S = K[x] given by generators, with a write-once Gröbner basis cache per monomial order.

    ### Args:
        - `ctx` (PolyContext): Ring context; its order is the default order.
        - `generators` (list): PolyElements of `ctx.ring` or strings parsed in `ctx`. Zeros are dropped.
    """
    def __init__(self, ctx:PolyContext, generators=()):
        self.ctx = ctx
        gens = []
        for g in generators:
            g = ctx.parse(g) if isinstance(g, str) else ctx.convert(g)
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = {}

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(self.ctx.format(g) for g in self.generators)

    def __str__(self):
        return "(" + ", ".join(self.ctx.format(g) for g in self.generators) + ")"

    @property
    def is_zero(self):
        return not self.generators

    def groebner(self, order:MonomialOrder=None, verbose:int=0):
        order = order or self.ctx.order
        if order not in self._gb:
            ctx = self.ctx.with_order(order)
            vectors = [(ctx.convert(g),) for g in self.generators]
            self._gb[order] = buchberger(vectors, ctx.ring, 1, verbose=verbose)
        return self._gb[order]

    @property
    def basis(self):
        """Reduced Gröbner basis polynomials in the context order."""
        return self.groebner().polys

    def reduce(self, f):
        return self.groebner().reduce((f,))[0]

    def contains(self, f):
        return not self.reduce(f)

    def contains_ideal(self, other:"Ideal"):
        return all(self.contains(self.ctx.convert(g)) for g in other.generators)

    def equals(self, other:"Ideal"):
        return self.contains_ideal(other) and other.contains_ideal(self)

    @property
    def is_unit(self):
        return self.groebner().is_unit

    def formatted_basis(self):
        return [self.ctx.format(g) for g in self.basis]

    def __add__(self, other):
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.ctx, list(self.generators) + [self.ctx.convert(g) for g in other])


class Submodule:
    """
    Submodule of the free module S^k, given by generating vectors.

    ### Args:
        - `ctx` (PolyContext): Ring context.
        - `rank` (int): k.
        - `generators` (list): Tuples of k PolyElements. Zero vectors are dropped.
    """
    def __init__(self, ctx:PolyContext, rank:int, generators=()):
        self.ctx = ctx
        self.rank = rank
        gens = []
        for v in generators:
            v = tuple(ctx.convert(f) for f in v)
            assert len(v) == rank, "Generator length %d does not match the ambient rank %d." % (len(v), rank)
            if not _is_zero(v):
                gens.append(v)
        self.generators = tuple(gens)
        self._gb = None

    def __repr__(self):
        return "Submodule(rank=%d, %d generators)" % (self.rank, len(self.generators))

    def groebner(self, counter:StepCounter=None, verbose:int=0):
        if self._gb is None:
            self._gb = buchberger(self.generators, self.ctx.ring, self.rank, counter=counter, verbose=verbose)
        return self._gb

    def reduce(self, vector):
        return self.groebner().reduce(tuple(vector))

    def contains(self, vector):
        return _is_zero(self.reduce(vector))

    def contains_module(self, other:"Submodule"):
        return all(self.contains(v) for v in other.generators)

    def formatted(self):
        return [self.ctx.format_vector(v) for v in self.generators]


def free_module_multiple(ideal:Ideal, rank:int):
    """Generators of I*S^rank: each Gröbner basis element of I in each position."""
    z = ideal.ctx.zero
    out = []
    for g in ideal.basis:
        for k in range(rank):
            out.append(tuple(g if l == k else z for l in range(rank)))
    return out


########################################################################################################################
# Operations
########################################################################################################################

def groebner_basis(target, order:MonomialOrder=None, verbose:int=0):
    """
    Reduced Gröbner basis of an `Ideal` (list of polynomials) or a `Submodule` (list of vectors).

    A step budget (`get_budget()`) aborts runaway inputs with `BudgetExceededError`.
    """
    if isinstance(target, Ideal):
        return target.groebner(order, verbose=verbose).polys
    assert order is None or order == target.ctx.order, "Submodules use the order of their context."
    return list(target.groebner(verbose=verbose).vectors)


def normal_form(f, basis):
    """Remainder of a polynomial or a vector modulo a `GroebnerBasis`, `Ideal` or `Submodule`."""
    if isinstance(basis, (Ideal, Submodule)):
        basis = basis.groebner()
    if isinstance(f, PolyElement):
        return basis.reduce((f,))[0]
    return basis.reduce(tuple(f))


def kernel_of_quotient_map(A, ideal:Ideal=None, modulo=(), ctx:PolyContext=None, counter:StepCounter=None, verbose:int=0):
    """
    Generators of {v in S^a : A.v = 0 in (S^b)/N}, where N = I*S^b plus the vectors in `modulo`.

    ### Args:
        - `A` (list): b rows of a PolyElements.
        - `ideal` (Ideal): I. None means the zero ideal.
        - `modulo` (list): Extra b-vectors added to N.
        - `ctx` (PolyContext): Needed only when it cannot be read from `ideal`.

    ### Returns:
        A `Submodule` of S^a. It contains I*S^a.

    The kernel is read off a position-over-term basis of the module generated by (column_c of A, e_c) and
    (n, 0) for n in N inside S^(b+a): the basis elements with vanishing top part generate the kernel.
    """
    ctx = ctx or ideal.ctx
    b = len(A)
    a = len(A[0]) if b else 0
    z = ctx.zero
    vectors = []
    for c in range(a):
        vectors.append(tuple(ctx.convert(A[r][c]) for r in range(b)) + tuple(ctx.one if k == c else z for k in range(a)))
    n_vectors = list(free_module_multiple(ideal, b)) if ideal is not None and not ideal.is_zero else []
    n_vectors += [tuple(ctx.convert(f) for f in v) for v in modulo]
    for v in n_vectors:
        vectors.append(tuple(v) + (z,)*a)
    if b == 0:
        return Submodule(ctx, a, [tuple(ctx.one if k == c else z for k in range(a)) for c in range(a)])
    gb = buchberger(vectors, ctx.ring, b + a, counter=counter, verbose=verbose)
    kernel = [v[b:] for v, lt in zip(gb.vectors, gb.leads) if lt[0] >= b]
    return Submodule(ctx, a, kernel)


def syzygies(vectors, ctx:PolyContext):
    """Syzygy module of a list of b-vectors: kernel of S^a -> S^b."""
    vectors = [tuple(v) for v in vectors]
    b = len(vectors[0]) if vectors else 0
    A = [[v[r] for v in vectors] for r in range(b)]
    return kernel_of_quotient_map(A, None, ctx=ctx)


def ideal_colon(I:Ideal, J:Ideal):
    """(I : J) = {f : f J in I}, the kernel of S -> (S/I)^m, f -> (f g_1, ..., f g_m)."""
    if J.is_zero:
        raise InputError("colon by the zero ideal is undefined here")
    A = [[g] for g in J.generators]
    K = kernel_of_quotient_map(A, I)
    return Ideal(I.ctx, [v[0] for v in K.generators])


def ideal_intersection(I:Ideal, J:Ideal):
    """I meet J, the kernel of S -> S/I (+) S/J."""
    ctx = I.ctx
    z = ctx.zero
    modulo = [(g, z) for g in I.basis] + [(z, ctx.convert(g)) for g in J.basis]
    K = kernel_of_quotient_map([[ctx.one], [ctx.one]], None, modulo=modulo, ctx=ctx)
    return Ideal(ctx, [v[0] for v in K.generators])


def ideal_membership(f, I:Ideal):
    return I.contains(f)


def ideal_contains(I:Ideal, J:Ideal):
    """True iff J is a subset of I."""
    return I.contains_ideal(J)


def ideal_equal(I:Ideal, J:Ideal):
    return I.equals(J)


@dataclass
class SaturationResult:
    """(N : c^infinity) inside S^k, the exponent at which the colon chain stopped, and the added generators."""
    saturated: Submodule
    index: int
    torsion_generators: list


def saturation(module:Submodule, c, ideal:Ideal=None, counter:StepCounter=None, verbose:int=0):
    """
    (N : c^infinity) for N = `module` (+ I*S^k when `ideal` is given), by iterating N_{i+1} = (N_i : c).

    The returned torsion generators are the saturated basis elements that are not in N, reduced modulo N,
    i.e. generators of the c-power torsion of S^k/N.
    """
    ctx = module.ctx
    k = module.rank
    c = ctx.convert(c)
    if ideal is not None and ideal.contains(c):
        raise InputError("saturation multiplier %s lies in the ideal" % ctx.format(c))
    if not c:
        raise InputError("saturation multiplier must be nonzero")
    extra = free_module_multiple(ideal, k) if ideal is not None and not ideal.is_zero else []
    base = Submodule(ctx, k, list(module.generators) + list(extra))
    base.groebner(counter=counter)
    current = base
    z = ctx.zero
    diag = [[c if r == col else z for col in range(k)] for r in range(k)]
    index = 0
    while True:
        nxt = kernel_of_quotient_map(diag, None, modulo=current.groebner().vectors, ctx=ctx, counter=counter)
        nxt.groebner(counter=counter)
        if current.contains_module(nxt):
            break
        current = nxt
        index += 1
        log("saturation: colon step %d" % index, verbose)
    torsion = []
    for v in current.groebner().vectors:
        r = base.reduce(v)
        if not _is_zero(r):
            torsion.append(r)
    return SaturationResult(current, index, torsion)


def _staircase(leads, nvars:int, limit:int=None):
    """Standard monomials outside the monomial ideal of `leads`, or None when there are infinitely many."""
    for i in range(nvars):
        if not any(all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0 for m in leads):
            if not any(not any(m) for m in leads):
                return None
    if any(not any(m) for m in leads):
        return []
    def divisible(mono):
        return any(all(a >= b for a, b in zip(mono, m)) for m in leads)
    start = (0,)*nvars
    seen = {start}
    frontier = [start]
    out = [start]
    while frontier:
        nxt = []
        for mono in frontier:
            for i in range(nvars):
                cand = mono[:i] + (mono[i] + 1,) + mono[i+1:]
                if cand in seen or divisible(cand):
                    continue
                seen.add(cand)
                out.append(cand)
                nxt.append(cand)
                if limit is not None and len(out) > limit:
                    raise BudgetExceededError("staircase larger than %d monomials" % limit)
        frontier = nxt
    return sorted(out, key=lambda m: (sum(m), tuple(-e for e in m)))


def standard_monomials(target):
    """Staircase of S/I (list of exponent vectors) or of S^k/N (list of (position, exponents)); None if infinite."""
    gb = target.groebner() if isinstance(target, (Ideal, Submodule)) else target
    nvars = gb.ring.ngens
    out = []
    for pos in range(gb.rank):
        leads = [m for p, m, _ in gb.leads if p == pos]
        stairs = _staircase(leads, nvars)
        if stairs is None:
            return None
        if gb.rank > 1:
            out.extend((pos, m) for m in stairs)
        else:
            out.extend(stairs)
    return out


def k_dimension(target):
    """dim_K of S/I or S^k/N from the staircase of a Gröbner basis; `INFINITE` when not finite."""
    stairs = standard_monomials(target)
    return INFINITE if stairs is None else len(stairs)


def eliminate(I:Ideal, variables):
    """
    I meet K[remaining variables], through an elimination block order with `variables` in the first block.

    Returns an `Ideal` over the context of the remaining variables (same field, grevlex).
    """
    ctx = I.ctx
    variables = [str(v) for v in variables]
    for v in variables:
        if v not in ctx.variables:
            raise InputError("cannot eliminate unknown variable %r" % v)
    remaining = [v for v in ctx.variables if v not in variables]
    if not remaining:
        raise InputError("cannot eliminate every variable")
    if not variables:
        return Ideal(ctx.with_order(GREVLEX), I.basis)
    perm = [ctx.variables.index(v) for v in variables + remaining]
    k = len(variables)
    ectx = PolyContext(tuple(variables + remaining), ctx.field, MonomialOrder("elimination", k))
    moved = [ectx.from_terms((tuple(m[i] for i in perm), c) for m, c in g.items()) for g in I.generators]
    gb = buchberger([(g,) for g in moved], ectx.ring, 1)
    rctx = PolyContext(tuple(remaining), ctx.field, GREVLEX)
    kept = [rctx.from_terms((m[k:], c) for m, c in g.items()) for (g,) in gb.vectors if all(not any(m[:k]) for m in g)]
    return Ideal(rctx, kept)


def krull_dimension(I:Ideal):
    """Dimension of V(I): the largest set of variables free of every leading monomial of a grevlex basis."""
    gb = I.groebner(GREVLEX)
    if gb.is_unit:
        raise InputError("the ideal is the unit ideal; V(I) is empty")
    leads = [m for _, m, _ in gb.leads]
    n = I.ctx.ngens
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(all(i in s for i, e in enumerate(m) if e) for m in leads):
                return size
    return 0


if __name__ == '__main__':
    ctx = PolyContext(("x", "y"), FieldSpec(0))
    I = Ideal(ctx, ["x^3 - y^2", "x^2*y"])
    print(I.formatted_basis())
    print(k_dimension(I))
