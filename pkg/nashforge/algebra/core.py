if __package__=="nashforge.algebra":
    from ..utils import *
else:
    import os, sys
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.append(parent_dir)
    from utils import *


########################################################################################################################
# Coefficient fields
########################################################################################################################

@functools.lru_cache(maxsize=None)
def _domain_for(characteristic:int):
    return QQ if characteristic == 0 else GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    """
    Exact coefficient field: the rationals (characteristic 0) or the prime field F_p.

    ### Args:
        - `characteristic` (int): 0, or a prime 2 <= p < 2^31.

    Elements are sympy domain elements (`QQ` or `GF(p, symmetric=False)`), so F_p values are always kept as
    representatives 0..p-1 and rationals are reduced with a positive denominator.
    """
    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise CharacteristicError("characteristic must be an integer, got %r" % (p,))
        p = int(p)
        object.__setattr__(self, "characteristic", p)
        if p != 0 and not (2 <= p < 2**31 and isprime(p)):
            raise CharacteristicError("characteristic must be 0 or a prime below 2^31, got %d" % p)

    @property
    def domain(self):
        return _domain_for(self.characteristic)

    @property
    def is_prime_field(self):
        return self.characteristic > 0

    def __str__(self):
        return "QQ" if self.characteristic == 0 else "GF(%d)" % self.characteristic

    def scalar(self, value):
        """Coerce an int, a `Fraction`, an `a/b` string or a domain element into the field."""
        K = self.domain
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
        elif isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            num, den = int(value), 1
        else:
            return K.convert(value)
        if self.characteristic and den % self.characteristic == 0:
            raise FieldMismatchError("%s/%s is undefined in characteristic %d" % (num, den, self.characteristic))
        return K(num) if den == 1 else K(num) / K(den)

    def parse_scalar(self, text:str):
        match = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*", text)
        if not match:
            raise ParseError("expected an integer or a/b rational, got %r" % text)
        num = int(match.group(1))
        den = int(match.group(2)) if match.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator in %r" % text)
        if self.characteristic and den % self.characteristic == 0:
            raise FieldMismatchError("%s is undefined in characteristic %d" % (text.strip(), self.characteristic))
        return self.scalar(Fraction(num, den))

    def format_scalar(self, c):
        if self.characteristic:
            return str(int(c))
        num, den = int(c.numerator), int(c.denominator)
        return str(num) if den == 1 else "%d/%d" % (num, den)

    def is_negative(self, c):
        return self.characteristic == 0 and c < 0


########################################################################################################################
# Monomial orders
########################################################################################################################

@functools.lru_cache(maxsize=None)
def _sympy_order(kind:str, split:int):
    if kind == "grevlex":
        return grevlex
    if kind == "lex":
        return lex
    # Cached so that rings built twice with the same split compare equal.
    return ProductOrder((grevlex, lambda m: m[:split]), (grevlex, lambda m: m[split:]))


@dataclass(frozen=True)
class MonomialOrder:
    """`grevlex` (default), `lex`, or `elimination` with the first `split` variables eliminated first."""
    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        assert self.kind in ("grevlex", "lex", "elimination"), "Unknown monomial order kind '%s'" % self.kind
        assert self.kind == "elimination" or self.split == 0, "Only elimination orders take a split index."

    @property
    def key(self):
        return _sympy_order(self.kind, self.split)

    def __str__(self):
        return self.kind if self.kind != "elimination" else "elimination(%d)" % self.split


GREVLEX = MonomialOrder()


########################################################################################################################
# Polynomial contexts
########################################################################################################################

@functools.lru_cache(maxsize=None)
def _make_ring(variables:tuple, characteristic:int, order:MonomialOrder):
    return PolyRing(variables, _domain_for(characteristic), order.key)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|\^)|([-+*/()]))")


@dataclass(frozen=True)
class PolyContext:
    """
    Variables, coefficient field and monomial order of a polynomial ring S = K[x_1, ..., x_d'].

    The sympy ring behind it is cached, so two equal contexts always hand out elements of equal rings.
    Polynomials themselves are plain sympy `PolyElement`s.
    """
    variables: tuple
    field: FieldSpec = FieldSpec(0)
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        names = tuple(str(v).strip() for v in self.variables)
        object.__setattr__(self, "variables", names)
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise InputError("invalid variable name %r" % name)
        if len(set(names)) != len(names):
            raise InputError("variables must be distinct, got %s" % ", ".join(names))

    @property
    def ring(self):
        return _make_ring(self.variables, self.field.characteristic, self.order)

    @property
    def ngens(self):
        return len(self.variables)

    @property
    def gens(self):
        return self.ring.gens

    @property
    def domain(self):
        return self.field.domain

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    def with_order(self, order:MonomialOrder):
        return PolyContext(self.variables, self.field, order)

    def constant(self, value):
        return self.ring.ground_new(self.field.scalar(value))

    def monomial(self, exponents, coeff=None):
        exponents = tuple(int(e) for e in exponents)
        assert len(exponents) == self.ngens, "Exponent vector length must equal the number of variables."
        return self.ring.term_new(exponents, self.domain.one if coeff is None else self.field.scalar(coeff))

    def from_terms(self, terms):
        """Build a polynomial of this ring from (exponents, coefficient) pairs, dropping zeros."""
        poly = self.ring.zero
        K = self.domain
        for monom, coeff in (terms.items() if isinstance(terms, dict) else terms):
            coeff = K.convert(coeff)
            if coeff:
                poly[tuple(monom)] = coeff
        return poly

    def convert(self, f):
        """Move `f` from a ring with the same variables (any order) into this ring."""
        return self.from_terms(f.items())

    def embed(self, f, offset:int=0):
        """Pad the exponent vectors of `f` to this ring's arity, placing them at position `offset`."""
        pad_l, pad_r = offset, self.ngens - offset - len(f.ring.gens)
        assert pad_r >= 0, "Target ring has too few variables."
        return self.from_terms(((0,)*pad_l + m + (0,)*pad_r, c) for m, c in f.items())

    def power_of_maximal(self, n:int):
        """Monomial generators of m^n at the origin."""
        return [self.monomial(e) for e in monomials_of_degree(self.ngens, n)]

    def translate(self, f, point):
        """Substitute x_i -> x_i + a_i, moving the point `a` to the origin."""
        point = [self.field.scalar(a) for a in point]
        assert len(point) == self.ngens, "Point must have one coordinate per variable."
        subs = [(x, x + self.ring.ground_new(a)) for x, a in zip(self.gens, point) if a]
        return f.compose(subs) if subs else f

    def jacobian(self, polys):
        # diff over GF(p) can leave explicit zero coefficients
        return [[self.from_terms(f.diff(x).items()) for x in self.gens] for f in polys]

    ####################################################################################################################
    # Text form
    ####################################################################################################################

    def parse(self, text:str):
        """
        Parse a polynomial such as `x^3 - 1/2 y^2` or `3*x*(y+1)^2` into this ring.

        Coefficients are reduced into the field; a coefficient that does not exist there (e.g. `1/2` in
        characteristic 2) raises `FieldMismatchError`. Syntax errors raise `ParseError` with a 1-based column.
        """
        tokens = []
        pos = 0
        text = str(text)
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN_RE.match(text, pos)
            if not match:
                col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise ParseError("unexpected character %r" % text[col - 1], column=col)
            num, ident, power, op = match.groups()
            start = match.start(match.lastindex) + 1
            if num is not None:
                tokens.append(("num", num, start))
            elif ident is not None:
                tokens.append(("ident", ident, start))
            elif power is not None:
                tokens.append(("pow", power, start))
            else:
                tokens.append(("op", op, start))
            pos = match.end()
        if not tokens:
            raise ParseError("empty polynomial", column=1)
        parser = _PolyParser(self, tokens, len(text) + 1)
        return parser.parse()

    def format(self, f):
        """Canonical text: terms in descending monomial order, `^` powers, `*` between factors."""
        if not f:
            return "0"
        out = []
        for monom, coeff in f.terms():
            negative = self.field.is_negative(coeff)
            mag = -coeff if negative else coeff
            mono = "*".join(name if e == 1 else "%s^%d" % (name, e) for name, e in zip(self.variables, monom) if e)
            cstr = self.field.format_scalar(mag)
            if not mono:
                term = cstr
            elif cstr == "1":
                term = mono
            else:
                term = cstr + "*" + mono
            if not out:
                out.append("-" + term if negative else term)
            else:
                out.append(("- " if negative else "+ ") + term)
        return " ".join(out)

    def format_vector(self, vector):
        return [self.format(f) for f in vector]


class _PolyParser:
    """Recursive-descent parser: expr := [+-] term {(+|-) term}; term := factor {[*] factor}; factor := base [^ int]."""
    def __init__(self, ctx:PolyContext, tokens:list, end_col:int):
        self.ctx = ctx
        self.tokens = tokens
        self.i = 0
        self.end_col = end_col

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        f = self.expr()
        kind, value, col = self.peek()
        if kind is not None:
            raise ParseError("unexpected %r" % value, column=col)
        return f

    def expr(self):
        kind, value, _ = self.peek()
        sign = 1
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                g = self.term()
                f = f + g if value == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                f = f * self.factor()
            elif kind in ("num", "ident") or (kind == "op" and value == "("):
                f = f * self.factor()
            else:
                return f

    def factor(self):
        f = self.base()
        kind, value, col = self.peek()
        if kind == "pow":
            self.take()
            kind, value, col = self.take()
            if kind != "num":
                raise ParseError("expected an integer exponent", column=col)
            f = f ** int(value)
        return f

    def base(self):
        kind, value, col = self.take()
        if kind == "num":
            num, den = int(value), 1
            nkind, nvalue, _ = self.peek()
            if nkind == "op" and nvalue == "/":
                self.take()
                dkind, dvalue, dcol = self.take()
                if dkind != "num":
                    raise ParseError("expected an integer denominator", column=dcol)
                den = int(dvalue)
                if den == 0:
                    raise ParseError("zero denominator", column=dcol)
            try:
                return self.ctx.constant(Fraction(num, den))
            except FieldMismatchError as err:
                raise FieldMismatchError("%s at column %d" % (err, col))
        if kind == "ident":
            if value not in self.ctx.variables:
                raise ParseError("unknown variable %r" % value, column=col)
            return self.ctx.gens[self.ctx.variables.index(value)]
        if kind == "op" and value == "(":
            f = self.expr()
            ckind, cvalue, ccol = self.take()
            if not (ckind == "op" and cvalue == ")"):
                raise ParseError("expected ')'", column=ccol)
            return f
        if kind is None:
            raise ParseError("unexpected end of polynomial", column=col)
        raise ParseError("unexpected %r" % value, column=col)


########################################################################################################################
# Monomials, divided powers, Taylor shifts
########################################################################################################################

def monomials_of_degree(nvars:int, degree:int):
    """Exponent vectors of total degree `degree`, e.g. (2,0), (1,1), (0,2) for two variables."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        exps = [0]*nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return out


def monomials_up_to(nvars:int, degree:int):
    """All exponent vectors of total degree <= `degree`, graded, lowest degree first."""
    out = []
    for k in range(degree + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def divided_power_coefficient(beta, alpha):
    """prod_i C(beta_i, alpha_i) as an integer, 0 when some alpha_i > beta_i."""
    out = 1
    for b, a in zip(beta, alpha):
        if a > b:
            return 0
        out *= math.comb(b, a)
    return out


def binomial_in_field(beta, alpha, field:FieldSpec):
    """
    Divided-power coefficient prod_i C(beta_i, alpha_i) as an element of `field`.

    ### Args:
        - `beta` (tuple): Exponent vector of the monomial.
        - `alpha` (tuple): Exponent vector of the operator D^(alpha).
        - `field` (FieldSpec): Target field.

    ### Returns:
        A domain element; zero whenever some alpha_i > beta_i.
    """
    assert len(beta) == len(alpha), "beta and alpha must have the same length."
    assert all(b >= 0 for b in beta) and all(a >= 0 for a in alpha), "Exponents must be non-negative."
    if field.characteristic:
        p = field.characteristic
        out = 1
        # Lucas: C(b, a) mod p is the product of digit-wise binomials in base p.
        for b, a in zip(beta, alpha):
            while a or b:
                b_i, a_i = b % p, a % p
                if a_i > b_i:
                    return field.domain.zero
                out = (out * math.comb(b_i, a_i)) % p
                b, a = b // p, a // p
        return field.scalar(out)
    return field.scalar(divided_power_coefficient(beta, alpha))


def apply_divided_power(alpha, f):
    """
    D^(alpha)(f): the linear map with D^(alpha)(x^beta) = C(beta, alpha) x^(beta - alpha).

    It equals (1/alpha!) d^alpha f in characteristic 0 and is well defined in every characteristic.
    """
    ring = f.ring
    alpha = tuple(alpha)
    assert len(alpha) == ring.ngens, "alpha must have the ring's arity."
    if not any(alpha):
        return f.copy()
    out = {}
    for monom, coeff in f.iterterms():
        b = divided_power_coefficient(monom, alpha)
        if not b:
            continue
        c = coeff * b
        if c:
            m = tuple(e - a for e, a in zip(monom, alpha))
            out[m] = out.get(m, ring.domain.zero) + c
    poly = ring.zero
    for m, c in out.items():
        if c:
            poly[m] = c
    return poly


def taylor_coefficients(f, n:int):
    """Map alpha -> D^(alpha)(f) for |alpha| <= n, the slices of f(x+z) = sum_alpha D^(alpha)(f)(x) z^alpha."""
    assert n >= 0, "Order must be non-negative."
    return {alpha: apply_divided_power(alpha, f) for alpha in monomials_up_to(f.ring.ngens, n)}


def shift_context(ctx:PolyContext, prefix:str="z_"):
    """Context K[x, z] with one increment variable `z_<name>` per variable of `ctx`."""
    return PolyContext(ctx.variables + tuple(prefix + v for v in ctx.variables), ctx.field, GREVLEX)


def taylor_shift(f, n:int, ctx:PolyContext):
    """
    f(x+z) truncated to z-degree <= n, as a polynomial of `shift_context(ctx)`.

    Computed by substitution, independently of `taylor_coefficients`; the two agree slice by slice.
    """
    assert n >= 0, "Order must be non-negative."
    ext = shift_context(ctx)
    d = ctx.ngens
    lifted = ext.embed(f)
    subs = [(ext.gens[i], ext.gens[i] + ext.gens[d + i]) for i in range(d)]
    shifted = lifted.compose(subs) if subs else lifted
    return ext.from_terms((m, c) for m, c in shifted.items() if sum(m[d:]) <= n)


def taylor_shift_from_slices(f, n:int, ctx:PolyContext):
    ext = shift_context(ctx)
    d = ctx.ngens
    out = ext.zero
    for alpha, slice_ in taylor_coefficients(f, n).items():
        out += ext.embed(slice_) * ext.monomial((0,)*d + alpha)
    return out


########################################################################################################################
# Exact linear algebra
########################################################################################################################

def _domain_matrix(rows, ncols:int, field:FieldSpec):
    K = field.domain
    sparse = {}
    for i, row in enumerate(rows):
        entries = {}
        for j, v in (row.items() if isinstance(row, dict) else enumerate(row)):
            v = K.convert(v)
            if v:
                entries[j] = v
        if entries:
            sparse[i] = entries
    return DomainMatrix(sparse, (len(rows), ncols), K)


def matrix_rank(rows, field:FieldSpec, ncols:int=None):
    """Rank over `field` of a matrix given as a list of rows (lists, or dicts column -> value)."""
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = max((max(r) + 1 if r else 0) for r in rows) if isinstance(rows[0], dict) else len(rows[0])
    if ncols == 0:
        return 0
    _, pivots = _domain_matrix(rows, ncols, field).rref()
    return len(pivots)


def row_reduce(rows, ncols:int, field:FieldSpec):
    """Reduced row echelon form: (list of nonzero rows as dicts column -> value, pivot columns)."""
    rows = list(rows)
    if not rows or ncols == 0:
        return [], ()
    rref, pivots = _domain_matrix(rows, ncols, field).rref()
    dense = rref.to_list()
    out = []
    for i in range(len(pivots)):
        out.append({j: v for j, v in enumerate(dense[i]) if v})
    return out, tuple(pivots)


def nullspace_basis(rows, ncols:int, field:FieldSpec):
    """Basis of {v : rows . v = 0} as a list of length-`ncols` lists of field elements."""
    K = field.domain
    reduced, pivots = row_reduce(rows, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [K.zero]*ncols
        v[free] = K.one
        for row, pj in zip(reduced, pivots):
            v[pj] = -row.get(free, K.zero)
        basis.append(v)
    return basis


if __name__ == '__main__':
    ctx = PolyContext(("x", "y"), FieldSpec(2))
    f = ctx.parse("x^3 + y^2")
    print(ctx.format(f))
    print(shift_context(ctx).format(taylor_shift(f, 2, ctx)))
