if __package__=="nashforge.algebra":
    from .groebner import *
else:
    import sys, os
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from groebner import *


########################################################################################################################
# Operators preserving an ideal
########################################################################################################################

@dataclass
class OperatorBasis:
    """
    S-module generators of the order-<= n operators delta = sum_alpha g_alpha D^(alpha) with delta(I) in I,
    taken modulo I (every coefficient is a normal form, zero operators dropped).

    `alphas[k]` is the exponent vector whose coefficient sits at index k of each generator.
    """
    ideal: Ideal
    order: int
    alphas: list
    generators: list

    def __len__(self):
        return len(self.generators)

    def formatted(self):
        """Each generator as {'D^(a)': coefficient} over its nonzero coefficients."""
        ctx = self.ideal.ctx
        out = []
        for op in self.generators:
            out.append({_alpha_label(a): ctx.format(g) for a, g in zip(self.alphas, op) if g})
        return out


def _alpha_label(alpha):
    return "D^(" + ",".join(str(a) for a in alpha) + ")"


def apply_operator(operator, alphas, f):
    """delta(f) for delta = sum_k operator[k] * D^(alphas[k])."""
    out = f.ring.zero
    for g, alpha in zip(operator, alphas):
        if g:
            out += g * apply_divided_power(alpha, f)
    return out


def preservation_conditions(ideal:Ideal, n:int):
    """
    Rows D^(alpha)(f_j x^beta) over the Gröbner generators f_j and |beta| <= n - 1, columns |alpha| <= n.

    An operator of order <= n maps I into I exactly when it maps every f_j x^beta with |beta| <= n - 1 into I:
    the commutator [delta, x_i] has order <= n - 1, so membership for larger beta follows by induction.
    """
    ctx = ideal.ctx
    d = ctx.ngens
    alphas = monomials_up_to(d, n)
    rows = []
    for f in ideal.basis:
        for beta in monomials_up_to(d, n - 1):
            h = f * ctx.monomial(beta)
            rows.append([apply_divided_power(alpha, h) for alpha in alphas])
    return alphas, rows


def idealizer_operators(ideal:Ideal, n:int, verbose:int=0):
    """
    Generators of the operators of order <= n on S that preserve I, i.e. of D^n of R = S/I modulo I.

    ### Args:
        - `ideal` (Ideal): I.
        - `n` (int): Order bound, n >= 0.

    ### Returns:
        An `OperatorBasis`. For n = 0 this is the single multiplication operator 1.
    """
    assert n >= 0, "Operator order must be non-negative."
    ctx = ideal.ctx
    d = ctx.ngens
    alphas = monomials_up_to(d, n)
    if n == 0 or ideal.is_zero:
        gens = [tuple(ctx.one if k == i else ctx.zero for k in range(len(alphas))) for i in range(len(alphas))]
        return OperatorBasis(ideal, n, alphas, gens)
    alphas, rows = preservation_conditions(ideal, n)
    kernel = kernel_of_quotient_map(rows, ideal, verbose=verbose)
    gens = []
    seen = set()
    for v in kernel.generators:
        op = tuple(ideal.reduce(g) for g in v)
        if not any(op):
            continue
        key = tuple(tuple(sorted(g.items())) for g in op)
        if key in seen:
            continue
        seen.add(key)
        gens.append(op)
    log("idealizer: order %d, %d operator generators" % (n, len(gens)), verbose)
    return OperatorBasis(ideal, n, alphas, gens)


########################################################################################################################
# Differential powers of the maximal ideal at the origin
########################################################################################################################

def check_origin(ideal:Ideal):
    """Raise `PointNotOnVarietyError` unless every generator of I vanishes at the origin."""
    for g in ideal.generators:
        if g.const():
            raise PointNotOnVarietyError(
                "the origin is not on V(I): generator %s has a nonzero constant term" % ideal.ctx.format(g))


@dataclass
class DiffPowerIdeal:
    """
    m^<n> at the origin, as an ideal of S containing I.

    `codim` is dim_K R/m^<n>; `standard_monomials` a K-basis of R/m^<n>; `operators` the order-(n-1) operator
    basis used, whose values at the origin form `evaluation` (rows: operators, columns: |beta| <= n-1).
    """
    order: int
    ideal: Ideal
    generators: list
    codim: int
    standard_monomials: list
    operators: OperatorBasis
    evaluation: list
    betas: list

    @property
    def as_ideal(self):
        return Ideal(self.ideal.ctx, self.generators)

    def formatted(self):
        return self.as_ideal.formatted_basis()


def differential_power(ideal:Ideal, n:int, verbose:int=0):
    """
    The n-th differential power m^<n> = {f : delta(f) in m for every operator delta of order <= n-1 on R}.

    ### Args:
        - `ideal` (Ideal): I, with the origin on V(I).
        - `n` (int): n >= 1.

    ### Returns:
        A `DiffPowerIdeal`. It is I + m^n plus the polynomials of degree < n on which every operator generator
        vanishes at the origin; its codimension is the rank of the evaluation matrix g_{i,beta}(0), cross-checked
        against the staircase of a Gröbner basis.
    """
    if n < 1:
        raise InputError("differential powers are defined for n >= 1, got %d" % n)
    check_origin(ideal)
    ctx = ideal.ctx
    d = ctx.ngens
    field = ctx.field
    ops = idealizer_operators(ideal, n - 1, verbose=verbose)
    betas = monomials_up_to(d, n - 1)
    index = {a: k for k, a in enumerate(ops.alphas)}
    # delta(x^beta)(0) = g_beta(0)
    evaluation = [[op[index[beta]].const() for beta in betas] for op in ops.generators]
    kernel = nullspace_basis(evaluation, len(betas), field) if evaluation else \
        [[ctx.domain.one if k == i else ctx.domain.zero for k in range(len(betas))] for i in range(len(betas))]
    rank = len(betas) - len(kernel)
    low = [ctx.from_terms((beta, c) for beta, c in zip(betas, v)) for v in kernel]
    gens = list(ideal.generators) + ctx.power_of_maximal(n) + low
    power = Ideal(ctx, gens)
    stairs = standard_monomials(power)
    codim = INFINITE if stairs is None else len(stairs)
    if codim != rank:
        raise ConsistencyError("differential power of order %d: staircase gives %s, evaluation rank gives %d"
                               % (n, codim, rank))
    log("differential power m^<%d>: codim %d" % (n, rank), verbose)
    return DiffPowerIdeal(n, ideal, power.basis, rank, stairs, ops, evaluation, betas)


@dataclass
class PairingMatrix:
    """Values delta_i(x^beta)(0) for operator generators delta_i and standard monomials x^beta of R/m^<n>."""
    matrix: list
    monomials: list
    rank: int
    operators: int


def pairing_matrix(ideal:Ideal, n:int, power:DiffPowerIdeal=None):
    """The operator/function pairing at the origin; its rank equals dim_K R/m^<n> when the pairing is non-degenerate."""
    power = power or differential_power(ideal, n)
    ops = power.operators
    monos = power.standard_monomials
    matrix = []
    for op in ops.generators:
        row = []
        for beta in monos:
            value = apply_operator(op, ops.alphas, ideal.ctx.monomial(beta)).const()
            row.append(value)
        matrix.append(row)
    rank = matrix_rank(matrix, ideal.ctx.field, ncols=len(monos)) if monos else 0
    return PairingMatrix(matrix, monos, rank, len(ops))


@dataclass
class CoreChain:
    """m^<1> > m^<2> > ... with codimensions; `verdict` is CORE_ZERO_LIKELY, CORE_STABILIZED or INCONCLUSIVE."""
    steps: list
    verdict: str
    first_plateau: int = None
    stable_ideal: list = None

    @property
    def codims(self):
        return [s.codim for s in self.steps]


def differential_core_chain(ideal:Ideal, n_max:int, verbose:int=0):
    """
    The chain of differential powers up to order `n_max`, evidence about the differential core.

    The verdict only reads the last step: growth there gives CORE_ZERO_LIKELY, a plateau gives
    CORE_STABILIZED with the stable ideal. Earlier plateaus are kept in `first_plateau`. Nothing here proves
    that the core is zero.
    """
    if n_max < 1:
        raise InputError("core chain depth must be >= 1, got %d" % n_max)
    steps = []
    for n in range(1, n_max + 1):
        steps.append(differential_power(ideal, n, verbose=verbose))
    codims = [s.codim for s in steps]
    first_plateau = None
    for k in range(1, len(codims)):
        if codims[k] == codims[k - 1]:
            first_plateau = k
            break
    if n_max == 1:
        return CoreChain(steps, "INCONCLUSIVE", first_plateau)
    if codims[-1] > codims[-2]:
        return CoreChain(steps, "CORE_ZERO_LIKELY", first_plateau)
    return CoreChain(steps, "CORE_STABILIZED", first_plateau, steps[-1].formatted())


########################################################################################################################
# Jet-truncation oracle
########################################################################################################################

def _truncated_vector(f, index:dict, cutoff:int):
    return {index[m]: c for m, c in f.items() if sum(m) <= cutoff}


def default_cutoff(ideal:Ideal, n:int):
    maxdeg = max((sum(m) for g in ideal.generators for m in g), default=0)
    return n + maxdeg + 1


def jets_oracle_diff_dim(ideal:Ideal, n:int, cutoff:int=None):
    """
    dim_K R/m^<n> by finite linear algebra on jets, with no Gröbner bases.

    ### Args:
        - `ideal` (Ideal): I, origin on V(I).
        - `n` (int): n >= 1.
        - `cutoff` (int): Degree cutoff D >= n + max generator degree. Defaults to n + max degree + 1.

    ### Returns:
        (dimension, cutoff used).

    Unknowns are the coefficients c_{alpha,mu} of operators sum c_{alpha,mu} x^mu D^(alpha) with |alpha| <= n-1
    and |mu| <= D. Each preservation condition on f_j x^beta is imposed on D-jets, modulo the span W of the
    D-jets of x^mu f_j. The answer is the dimension of the projection of the solution space onto the constant
    coefficients c_{alpha,0}, which is #alphas - (rank(E) - rank(E without the constant columns)). The value
    can only decrease as D grows.
    """
    if n < 1:
        raise InputError("differential powers are defined for n >= 1, got %d" % n)
    check_origin(ideal)
    ctx = ideal.ctx
    field = ctx.field
    K = ctx.domain
    d = ctx.ngens
    gens = list(ideal.generators)
    maxdeg = max((sum(m) for g in gens for m in g), default=0)
    cutoff = default_cutoff(ideal, n) if cutoff is None else int(cutoff)
    if cutoff < n + maxdeg:
        raise InputError("jet cutoff %d is below n + max generator degree = %d" % (cutoff, n + maxdeg))
    alphas = monomials_up_to(d, n - 1)
    if not gens:
        return len(alphas), cutoff
    jets = monomials_up_to(d, cutoff)
    index = {m: k for k, m in enumerate(jets)}
    ncoords = len(jets)

    # W and its reduced echelon form
    w_rows = []
    for f in gens:
        for mu in jets:
            row = _truncated_vector(f * ctx.monomial(mu), index, cutoff)
            if row:
                w_rows.append(row)
    w_reduced, w_pivots = row_reduce(w_rows, ncoords, field)
    pivot_set = set(w_pivots)
    residual = [k for k in range(ncoords) if k not in pivot_set]
    res_index = {k: r for r, k in enumerate(residual)}

    w_by_pivot = dict(zip(w_pivots, w_reduced))

    def modulo_w(vec):
        out = {}
        for k, v in vec.items():
            if k in res_index:
                out[res_index[k]] = out.get(res_index[k], K.zero) + v
        for pk, v in vec.items():
            row = w_by_pivot.get(pk)
            if row is None:
                continue
            for k, w in row.items():
                if k in res_index:
                    out[res_index[k]] = out.get(res_index[k], K.zero) - v*w
        return {k: v for k, v in out.items() if v}

    conditions = [f * ctx.monomial(beta) for f in gens for beta in monomials_up_to(d, n - 1)]
    unknowns = [(alpha, mu) for mu in jets for alpha in alphas]
    constant = [k for k, (alpha, mu) in enumerate(unknowns) if not any(mu)]
    # columns: one per unknown; rows: (condition, residual coordinate)
    columns = {}
    for ci, h in enumerate(conditions):
        slices = {alpha: apply_divided_power(alpha, h) for alpha in alphas}
        for k, (alpha, mu) in enumerate(unknowns):
            if not slices[alpha]:
                continue
            vec = _truncated_vector(slices[alpha] * ctx.monomial(mu), index, cutoff)
            if not vec:
                continue
            for r, v in modulo_w(vec).items():
                columns.setdefault(k, {})[ci*len(residual) + r] = v
    nrows = len(conditions)*len(residual)
    full = _transpose(columns, nrows)
    constant_set = set(constant)
    partial = _transpose({k: col for k, col in columns.items() if k not in constant_set}, nrows)
    rank_full = matrix_rank(full, field, ncols=len(unknowns)) if full else 0
    rank_partial = matrix_rank(partial, field, ncols=len(unknowns)) if partial else 0
    return len(alphas) - (rank_full - rank_partial), cutoff


def _transpose(columns:dict, nrows:int):
    rows = {}
    for k, col in columns.items():
        for r, v in col.items():
            rows.setdefault(r, {})[k] = v
    return [rows[r] for r in sorted(rows)]


if __name__ == '__main__':
    ctx = PolyContext(("x", "y"), FieldSpec(2))
    cusp = Ideal(ctx, ["x^3 + y^2"])
    for n in (1, 2, 3):
        print(n, differential_power(cusp, n).codim, jets_oracle_diff_dim(cusp, n))
