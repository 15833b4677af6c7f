if __package__=="nashforge.algebra":
    from .diffops import *
else:
    import sys, os
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from diffops import *


MINOR_LIMIT = 20000


########################################################################################################################
# Finitely presented modules over R = S/I
########################################################################################################################

class ModulePresentation:
    """
    Finitely presented module over R = S/I: generators `labels`, relation rows over S.

    ### Args:
        - `ideal` (Ideal): I. The module is coker(rows) (x) R.
        - `labels` (list): One label per generator (exponent vectors for P^n and Frobenius pushforwards).
        - `rows` (list): Relation rows, tuples of PolyElements of length `len(labels)`.
        - `generic_rank_expected` (int): Rank over Frac(R) the construction promises, if known.
    """
    def __init__(self, ideal:Ideal, labels, rows, generic_rank_expected:int=None):
        self.ideal = ideal
        self.ctx = ideal.ctx
        self.labels = list(labels)
        self.rows = [tuple(r) for r in rows]
        self.generic_rank_expected = generic_rank_expected
        for r in self.rows:
            assert len(r) == len(self.labels), "Relation row length does not match the generator count."
        self._reduced = None

    def __repr__(self):
        return "ModulePresentation(%d generators, %d relations)" % (self.ngens, len(self.rows))

    @property
    def ngens(self):
        return len(self.labels)

    def reduced_rows(self):
        """Rows with entries in normal form modulo I, zero rows dropped."""
        if self._reduced is None:
            out = []
            for r in self.rows:
                red = tuple(self.ideal.reduce(f) for f in r)
                if any(red):
                    out.append(red)
            self._reduced = out
        return self._reduced

    def rank_at_origin(self):
        """Rank of the relation matrix evaluated at the origin."""
        rows = [[f.const() for f in r] for r in self.reduced_rows()]
        return matrix_rank(rows, self.ctx.field, ncols=self.ngens) if rows else 0

    def minimal_generators_at_origin(self):
        """dim_K M/mM, the minimal number of generators of the localization at the origin."""
        return self.ngens - self.rank_at_origin()

    def relation_rank(self):
        """Rank of the relation matrix over Frac(R); R is assumed to be a domain."""
        return fraction_free_rank(self.reduced_rows(), self.ideal)

    def generic_rank(self):
        return self.ngens - self.relation_rank()

    def fitting_ideal(self, i:int, limit:int=MINOR_LIMIT):
        return fitting_ideal(self, i, limit=limit)

    def formatted_rows(self):
        return [self.ctx.format_vector(r) for r in self.reduced_rows()]


def _primitive(row, ideal:Ideal):
    """Divide a row by the gcd of its entries in S; over Frac(S/I) this is a nonzero rescaling."""
    entries = [f for f in row if f]
    if not entries:
        return row
    g = functools.reduce(lambda a, b: a.gcd(b), entries)
    if g.is_ground:
        return row
    return [ideal.reduce(f.exquo(g)) if f else f for f in row]


def fraction_free_rank(rows, ideal:Ideal):
    """
    Rank over Frac(S/I) of a matrix over S/I, by fraction-free elimination with entries kept in normal form.

    Pivots are tested for being nonzero modulo I, which is valid because S/I is a domain.
    """
    active = [list(r) for r in rows if any(r)]
    if not active:
        return 0
    ring = ideal.ctx.ring
    ncols = len(active[0])
    rank = 0
    for col in range(ncols):
        candidates = [k for k, r in enumerate(active) if r[col]]
        if not candidates:
            continue
        k_piv = min(candidates, key=lambda k: (len(active[k][col]), ring.order(active[k][col].LM), k))
        pivot = active[k_piv]
        p = pivot[col]
        remaining = []
        for k, r in enumerate(active):
            if k == k_piv:
                continue
            if r[col]:
                a = r[col]
                r = _primitive([ideal.reduce(p*x - a*y) for x, y in zip(r, pivot)], ideal)
            if any(r):
                remaining.append(r)
        active = remaining
        rank += 1
        if not active:
            break
    return rank


def _minors(matrix, size:int, reduce, limit:int):
    """All nonzero size x size minors of `matrix` (list of rows), each passed through `reduce`."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    memo = {}

    def det(rows:tuple, cols:tuple):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        r0 = rows[0]
        if len(rows) == 1:
            value = reduce(matrix[r0][cols[0]])
        else:
            value = matrix[r0][cols[0]] * 0
            for k, c in enumerate(cols):
                a = matrix[r0][c]
                if not a:
                    continue
                sub = det(rows[1:], cols[:k] + cols[k+1:])
                if sub:
                    value = value + a*sub if k % 2 == 0 else value - a*sub
            value = reduce(value)
        memo[key] = value
        return value

    out = []
    count = 0
    for rows in itertools.combinations(range(nrows), size):
        for cols in itertools.combinations(range(ncols), size):
            count += 1
            if count > limit:
                raise BudgetExceededError("more than %d minors of size %d needed" % (limit, size))
            m = det(rows, cols)
            if m:
                out.append(m)
    return out


def fitting_ideal(M:ModulePresentation, i:int, limit:int=MINOR_LIMIT):
    """
    Fitt_i(M): the ideal of (g - i)-minors of the relation matrix, taken in R (returned as an ideal of S containing I).

    ### Args:
        - `M` (ModulePresentation): Presentation with g generators.
        - `i` (int): Index. Fitt_i = R for i >= g, Fitt_i = 0 (i.e. I) for i < 0.
        - `limit` (int): Maximal number of minors to expand before `BudgetExceededError`.
    """
    ctx = M.ctx
    size = M.ngens - i
    if size <= 0:
        return Ideal(ctx, [ctx.one])
    rows = M.reduced_rows()
    if i < 0 or size > len(rows):
        return Ideal(ctx, M.ideal.generators)
    minors = _minors([list(r) for r in rows], size, M.ideal.reduce, limit)
    return Ideal(ctx, list(M.ideal.generators) + minors)


@dataclass
class FittingConditions:
    """
    The two conditions of the freeness test for rank r at the origin.

    `unit_at_origin`: Fitt_r contains a unit, i.e. rank Rel(0) >= g - r.
    `lower_vanishes`: Fitt_{r-1} = 0 in the domain R, i.e. rank Rel over Frac(R) <= g - r.
    """
    rank: int
    generators: int
    rank_at_origin: int
    relation_rank: int
    unit_at_origin: bool
    lower_vanishes: bool

    @property
    def free(self):
        return self.unit_at_origin and self.lower_vanishes


def fitting_conditions(M:ModulePresentation, r:int):
    g = M.ngens
    at0 = M.rank_at_origin()
    generic = M.relation_rank()
    return FittingConditions(r, g, at0, generic, at0 >= g - r, generic <= g - r)


def minimal_generator_count(J:Ideal, ideal:Ideal):
    """
    dim_K J/mJ for the image of J in R = S/I, from the relation module of its generators evaluated at the origin.

    Returns (count, generators of J in normal form, relation rank at the origin).
    """
    gens = []
    for h in J.generators:
        h = ideal.reduce(h)
        if h and h not in gens:
            gens.append(h)
    if not gens:
        return 0, [], 0
    rel = kernel_of_quotient_map([gens], ideal)
    rows = [[f.const() for f in v] for v in rel.generators]
    r0 = matrix_rank(rows, ideal.ctx.field, ncols=len(gens)) if rows else 0
    return len(gens) - r0, gens, r0


########################################################################################################################
# Principal parts
########################################################################################################################

def principal_parts_presentation(ideal:Ideal, n:int):
    """
    Presentation of P^n = K[x, z]/(I(x) + I(x+z) + (z)^(n+1)) as an R-module.

    ### Args:
        - `ideal` (Ideal): I.
        - `n` (int): Order, n >= 1.

    ### Returns:
        A `ModulePresentation` with generators e_gamma (|gamma| <= n, graded, `monomials_up_to` order) and one
        row per Gröbner generator f_j and shift |delta| <= n: the z-coefficients of z^delta f_j(x+z) mod (z)^(n+1),
        whose entry at gamma >= delta is D^(gamma - delta)(f_j).
    """
    if n < 1:
        raise InputError("principal parts are built for n >= 1, got %d" % n)
    ctx = ideal.ctx
    d = ctx.ngens
    labels = monomials_up_to(d, n)
    rows = []
    for f in ideal.basis:
        slices = taylor_coefficients(f, n)
        for delta in labels:
            row = []
            for gamma in labels:
                if all(g >= e for g, e in zip(gamma, delta)):
                    row.append(slices[tuple(g - e for g, e in zip(gamma, delta))])
                else:
                    row.append(ctx.zero)
            rows.append(tuple(row))
    expected = None
    if not ideal.is_unit:
        expected = count_monomials(krull_dimension(ideal), n)
    return ModulePresentation(ideal, labels, rows, expected)


def is_hypersurface(ideal:Ideal):
    return len(ideal.basis) == 1 and not ideal.is_unit


def default_multiplier(ideal:Ideal):
    """
    Nonzero element of R vanishing on the singular locus: the smallest nonzero h x h minor of the Jacobian
    (h = codimension), made monic. The smallest is taken by leading monomial, then by its text.
    """
    ctx = ideal.ctx
    if ideal.is_zero:
        return ctx.one
    d = krull_dimension(ideal)
    h = ctx.ngens - d
    jac = ctx.jacobian(ideal.basis)
    minors = _minors(jac, h, ideal.reduce, MINOR_LIMIT) if h <= len(jac) else []
    if not minors:
        raise InputError("the Jacobian ideal vanishes on R; the input is inseparable or not reduced")
    order = ctx.ring.order
    best = min(minors, key=lambda f: (order(f.LM), ctx.format(f.monic())))
    return best.monic()


@dataclass
class TorsionReport:
    """Torsion submodule T(M) = ker(M -> M_c): generators in S^g, multiplier c, saturation exponent."""
    generators: list
    multiplier: object
    exponent: int
    torsion_free: bool
    saturated: Submodule

    def formatted(self, ctx:PolyContext):
        return [ctx.format_vector(v) for v in self.generators]


def torsion_submodule(M:ModulePresentation, c=None, verbose:int=0):
    """
    T(M) as the c-power torsion of M, computed by saturating the relation module by c.

    ### Args:
        - `M` (ModulePresentation): Module over the domain R = S/I.
        - `c` (PolyElement): Multiplier, nonzero in R and vanishing on the singular locus. Defaults to
          `default_multiplier(I)`.
    """
    ideal = M.ideal
    c = default_multiplier(ideal) if c is None else M.ctx.convert(c)
    if ideal.contains(c):
        raise InputError("torsion multiplier %s is zero in R" % M.ctx.format(c))
    N = Submodule(M.ctx, M.ngens, M.reduced_rows())
    sat = saturation(N, c, ideal if not ideal.is_zero else None, verbose=verbose)
    return TorsionReport(sat.torsion_generators, c, sat.index, not sat.torsion_generators, sat.saturated)


@dataclass
class StructuralRank:
    """Torsion split + Fitting path: conclusive only when M/T is free of the generic rank at the origin."""
    conclusive: bool
    free_rank: int
    generic_rank: int
    minimal_generators: int
    torsion_free: bool
    reason: str = ""
    torsion: TorsionReport = None


def structural_free_rank(ideal:Ideal, n:int, c=None, verbose:int=0):
    """Free rank of P^n through M/T; inconclusive when M/T is not free or the budget runs out."""
    M = principal_parts_presentation(ideal, n)
    r = M.generic_rank_expected
    try:
        torsion = torsion_submodule(M, c, verbose=verbose)
    except BudgetExceededError as err:
        warnings.warn("structural free-rank path gave up: %s" % err, UserWarning)
        return StructuralRank(False, None, r, None, None, "budget: %s" % err)
    quotient = ModulePresentation(ideal, M.labels, torsion.saturated.groebner().vectors)
    mu = quotient.minimal_generators_at_origin()
    if mu == r:
        return StructuralRank(True, r, r, mu, torsion.torsion_free, "", torsion)
    return StructuralRank(False, None, r, mu, torsion.torsion_free, "M/T needs %d generators at the origin" % mu, torsion)


@dataclass
class FreeRankResult:
    free_rank: int
    expected: int
    structural: StructuralRank = None

    @property
    def consistent(self):
        if self.structural is None or not self.structural.conclusive:
            return True
        return self.structural.free_rank == self.free_rank


def free_rank_pparts(ideal:Ideal, n:int, structural:bool=True, c=None, verbose:int=0):
    """
    free.rank(P^n) = dim_K R/m^<n+1>, with the structural path as cross-check when `structural` is set.
    """
    check_origin(ideal)
    power = differential_power(ideal, n + 1, verbose=verbose)
    expected = count_monomials(krull_dimension(ideal), n)
    path = structural_free_rank(ideal, n, c, verbose=verbose) if structural else None
    return FreeRankResult(power.codim, expected, path)


@dataclass
class NashVerdict:
    """
    NOT_ISO, ISO_CERTIFIED or NO_OBSTRUCTION for the order-n Nash blowup at the origin, with its evidence.
    """
    verdict: str
    order: int
    free_rank: int
    expected: int
    hypersurface: bool
    generic_rank: int
    minor_ideal: list = None
    minor_ideal_generators: int = None
    principal_witness: str = None
    notes: list = None


def nash_isomorphism_check(ideal:Ideal, n:int, require_certificate:bool=False, verbose:int=0):
    """
    Obstruction / certification of Nash_n(X) = X at the origin.

    ### Args:
        - `ideal` (Ideal): I, origin on V(I).
        - `n` (int): Order.
        - `require_certificate` (bool): Ask for the principality test even when I is not a hypersurface, which
          raises `UnsupportedScopeError`.

    ### Returns:
        A `NashVerdict`. NOT_ISO when free.rank(P^n) < C(n+d, d). For hypersurfaces, ISO_CERTIFIED when the top
        minor ideal J = Fitt_{C(n+d,d)}(P^n) is nonzero in R and principal at the origin (dim J/mJ = 1).
        Otherwise NO_OBSTRUCTION.
    """
    check_origin(ideal)
    hyp = is_hypersurface(ideal)
    if require_certificate and not hyp:
        raise UnsupportedScopeError("isomorphism certificates are only issued for hypersurfaces")
    ctx = ideal.ctx
    power = differential_power(ideal, n + 1, verbose=verbose)
    M = principal_parts_presentation(ideal, n)
    expected = M.generic_rank_expected
    generic = M.generic_rank()
    notes = []
    if generic != expected:
        notes.append("generic rank %d differs from C(n+d,d) = %d" % (generic, expected))
    result = NashVerdict("NO_OBSTRUCTION", n, power.codim, expected, hyp, generic, notes=notes)
    if hyp:
        try:
            J = fitting_ideal(M, expected)
        except BudgetExceededError as err:
            notes.append("minor ideal skipped: %s" % err)
            J = None
        if J is not None:
            mu, gens, _ = minimal_generator_count(J, ideal)
            result.minor_ideal = [ctx.format(g) for g in Ideal(ctx, gens).basis] if gens else []
            result.minor_ideal_generators = mu
            if mu == 1:
                mJ = Ideal(ctx, list(ideal.generators) + [x*g for x in ctx.gens for g in gens])
                witness = next((g for g in gens if not mJ.contains(g)), None)
                result.principal_witness = ctx.format(witness) if witness is not None else None
    if power.codim < expected:
        result.verdict = "NOT_ISO"
    elif hyp and result.minor_ideal_generators == 1 and result.principal_witness is not None:
        result.verdict = "ISO_CERTIFIED"
    return result


if __name__ == '__main__':
    for p in (0, 2):
        ctx = PolyContext(("x", "y"), FieldSpec(p))
        cusp = Ideal(ctx, ["x^3 - y^2"])
        print(FieldSpec(p), nash_isomorphism_check(cusp, 1))
