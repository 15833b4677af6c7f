if __name__=="nashforge.algebra.test":
    from ..utils import *
    from . import *
else:
    import os, sys
    sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    from utils import *
    from algebra import *

import pytest


def ring(variables="x, y", p=0):
    return PolyContext(tuple(v.strip() for v in variables.split(",")), FieldSpec(p))


def ideal(variables, p, *gens):
    return Ideal(ring(variables, p), list(gens))


def random_poly(ctx, rng, terms=4, degree=4):
    d = ctx.ngens
    out = []
    for _ in range(terms):
        exps = tuple(int(e) for e in rng.integers(0, degree + 1, size=d))
        if sum(exps) > degree:
            continue
        out.append((exps, int(rng.integers(-5, 6))))
    f = ctx.zero
    for m, c in out:
        if c:
            f += ctx.monomial(m, c)
    return f


BATTERY = [
    ("x, y", 0, ["x^3 - y^2"]),
    ("x, y", 2, ["x^3 + y^2"]),
    ("u, v, w", 0, ["u*w - v^2"]),
    ("u, v, w", 5, ["u*w - v^2"]),
    ("x, y", 0, ["y"]),
    ("x, y", 0, []),
]


########################################################################################################################
# Fields, parsing, formatting
########################################################################################################################

def test_field_spec():
    with pytest.raises(CharacteristicError):
        FieldSpec(4)
    with pytest.raises(FieldMismatchError):
        FieldSpec(2).parse_scalar("1/2")
    assert FieldSpec(5).format_scalar(FieldSpec(5).scalar(-1)) == "4"
    assert FieldSpec(0).format_scalar(FieldSpec(0).parse_scalar("6/4")) == "3/2"
    assert FieldSpec(7).format_scalar(FieldSpec(7).parse_scalar("1/2")) == "4"


def test_parse_and_format():
    ctx = ring()
    assert ctx.format(ctx.parse("x^3 - y^2")) == "x^3 - y^2"
    assert ctx.format(ctx.parse("-y^2 + x^3")) == "x^3 - y^2"
    assert ctx.format(ctx.parse("3*x*(y+1)^2")) == ctx.format(ctx.parse("3*x*y^2 + 6*x*y + 3*x"))
    assert ctx.parse("x^3 - 1/2 y^2") == ctx.parse("x^3 - (1/2)*y^2")
    with pytest.raises(ParseError) as err:
        ctx.parse("x^3 + $")
    assert err.value.column == 7
    with pytest.raises(ParseError):
        ctx.parse("x + z")
    with pytest.raises(FieldMismatchError):
        ring("x, y", 2).parse("x^3 - 1/2 y^2")


def test_translate_point():
    ctx = ring()
    f = ctx.parse("(x - 1)^3 - (y - 1)^2")
    g = ctx.translate(f, [1, 1])
    assert g == ctx.parse("x^3 - y^2")
    assert g.const() == 0


def test_monomials_up_to():
    assert monomials_up_to(2, 1) == [(0, 0), (1, 0), (0, 1)]
    assert len(monomials_up_to(3, 3)) == count_monomials(3, 3) == 20


def test_taylor_slices_match_substitution():
    rng = reset_rng()
    checks = 0
    for p in (0, 2, 3):
        ctx = ring("x, y", p)
        for _ in range(50):
            f = random_poly(ctx, rng)
            n = int(rng.integers(0, 4))
            assert taylor_shift(f, n, ctx) == taylor_shift_from_slices(f, n, ctx)
            checks += 1
    assert checks == 150


def test_divided_power_composition_law():
    rng = reset_rng()
    checks = 0
    for p in (0, 2, 3, 5):
        ctx = ring("x, y, z", p)
        for _ in range(100):
            f = random_poly(ctx, rng, terms=5, degree=6)
            a = tuple(int(e) for e in rng.integers(0, 3, size=3))
            b = tuple(int(e) for e in rng.integers(0, 3, size=3))
            ab = tuple(x + y for x, y in zip(a, b))
            lhs = apply_divided_power(a, apply_divided_power(b, f))
            rhs = apply_divided_power(ab, f) * ctx.constant(divided_power_coefficient(ab, a))
            assert lhs == rhs
            checks += 1
    assert checks == 400


def test_binomial_in_field_lucas():
    assert binomial_in_field((3,), (2,), FieldSpec(2)) == FieldSpec(2).scalar(1)
    assert binomial_in_field((4,), (2,), FieldSpec(2)) == FieldSpec(2).scalar(0)
    assert binomial_in_field((5, 2), (2, 1), FieldSpec(0)) == FieldSpec(0).scalar(20)


def test_linear_algebra_helpers():
    F = FieldSpec(0)
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert matrix_rank(rows, F) == 2
    kernel = nullspace_basis(rows, 3, F)
    assert len(kernel) == 1
    v = kernel[0]
    for row in rows:
        assert sum(F.scalar(a)*b for a, b in zip(row, v)) == 0
    assert matrix_rank([[1, 1], [1, 1]], FieldSpec(2)) == 1


########################################################################################################################
# Gröbner bases and ideal operations
########################################################################################################################

def test_random_groebner_bases_pass_buchberger_criterion():
    rng = reset_rng()
    checks = 0
    for p in (0, 2, 3):
        ctx = ring("x, y", p)
        for _ in range(30):
            gens = [random_poly(ctx, rng, terms=3, degree=3) for _ in range(int(rng.integers(1, 4)))]
            I = Ideal(ctx, gens)
            gb = I.groebner()
            assert is_groebner_basis(gb)
            for g in I.generators:
                assert I.contains(g)
            checks += 1
    assert checks == 90


def test_groebner_of_cusp_and_monomial_ideals():
    I = ideal("x, y", 0, "x^3 - y^2")
    assert I.formatted_basis() == ["x^3 - y^2"]
    J = ideal("x, y", 0, "x^2", "y^3")
    assert k_dimension(J) == 6
    assert standard_monomials(ideal("x, y", 0, "x^2", "x*y", "y^2")) == [(0, 0), (1, 0), (0, 1)]
    assert k_dimension(I) == INFINITE
    assert ideal("x, y", 0, "x", "x + 1").is_unit


def test_krull_dimension():
    assert krull_dimension(ideal("x, y", 0, "x^3 - y^2")) == 1
    assert krull_dimension(ideal("u, v, w", 0, "u*w - v^2")) == 2
    assert krull_dimension(ideal("x, y", 0)) == 2
    assert krull_dimension(ideal("x, y", 0, "x", "y")) == 0
    with pytest.raises(InputError):
        krull_dimension(ideal("x, y", 0, "1"))


def test_colon_intersection_elimination():
    ctx = ring()
    assert ideal_colon(Ideal(ctx, ["x^2*y"]), Ideal(ctx, ["x"])).equals(Ideal(ctx, ["x*y"]))
    assert ideal_intersection(Ideal(ctx, ["x"]), Ideal(ctx, ["y"])).equals(Ideal(ctx, ["x*y"]))
    assert ideal_membership(ctx.parse("x^2*y - x*y^2"), Ideal(ctx, ["x*y"]))
    assert ideal_contains(Ideal(ctx, ["x", "y"]), Ideal(ctx, ["x^2", "x*y"]))
    assert not ideal_contains(Ideal(ctx, ["x^2"]), Ideal(ctx, ["x"]))
    assert ideal_equal(Ideal(ctx, ["x + y", "y"]), Ideal(ctx, ["x", "y"]))
    big = PolyContext(("x", "y", "u1", "u2", "u3"), FieldSpec(0))
    E = eliminate(Ideal(big, ["u1 - x^2", "u2 - x*y", "u3 - y^2"]), ["x", "y"])
    assert E.ctx.variables == ("u1", "u2", "u3")
    assert E.equals(Ideal(E.ctx, ["u1*u3 - u2^2"]))
    with pytest.raises(InputError):
        eliminate(Ideal(ctx, ["x"]), ["x", "y"])


def test_syzygies_and_kernel():
    ctx = ring()
    x, y = ctx.gens
    S = syzygies([(x,), (y,)], ctx)
    assert S.contains((y, -x))
    for g in S.generators:
        assert x*g[0] + y*g[1] == 0
    # kernel of multiplication by x on S/(x^2)
    K = kernel_of_quotient_map([[x]], Ideal(ctx, ["x^2"]))
    assert K.contains((x,))
    assert not K.contains((ctx.one,))
    cusp = Ideal(ctx, ["x^3 - y^2"])
    K = kernel_of_quotient_map([[x**2, 2*y]], cusp)
    assert K.contains((3*x, ctx.parse("-3/2*y")))
    assert K.contains((2*y, -x**2))
    assert not K.contains((ctx.one, ctx.zero))
    f2 = ring("x, y", 2)
    K = kernel_of_quotient_map([[f2.parse("x^2"), f2.zero]], Ideal(f2, ["x^3 + y^2"]))
    assert K.contains((f2.zero, f2.one))
    assert not K.contains((f2.one, f2.zero))


def test_saturation():
    ctx = ring()
    x, y = ctx.gens
    N = Submodule(ctx, 1, [(x**2*y,)])
    sat = saturation(N, x)
    assert sat.index == 2
    assert sat.saturated.contains((y,))
    assert sat.torsion_generators
    with pytest.raises(InputError):
        saturation(N, ctx.zero)
    with pytest.raises(InputError):
        saturation(N, x, Ideal(ctx, ["x"]))


def test_saturation_kills_a_torsion_summand():
    # R/(x^2) + R over the cusp ring: y^2 = x^3 annihilates the first summand
    ctx = ring()
    x, y = ctx.gens
    cusp = Ideal(ctx, ["x^3 - y^2"])
    N = Submodule(ctx, 2, [(x**2, ctx.zero)])
    sat = saturation(N, y, cusp)
    assert sat.index >= 1
    assert sat.saturated.contains((ctx.one, ctx.zero))
    assert not sat.saturated.contains((ctx.zero, ctx.one))
    assert not sat.saturated.contains((ctx.zero, y))
    assert len(sat.torsion_generators) == 1
    assert sat.torsion_generators[0][1] == 0


########################################################################################################################
# Differential operators and differential powers
########################################################################################################################

def test_idealizer_operators_preserve_the_ideal():
    rng = reset_rng()
    checks = 0
    for variables, p, gens in BATTERY[:4]:
        I = ideal(variables, p, *gens)
        ctx = I.ctx
        for n in (1, 2):
            ops = idealizer_operators(I, n)
            assert len(ops) > 0
            for op in ops.generators:
                for _ in range(10):
                    h = random_poly(ctx, rng, terms=3, degree=3) * I.basis[0]
                    assert I.contains(apply_operator(op, ops.alphas, h))
                    checks += 1
    assert checks >= 80


@pytest.mark.parametrize("variables, p, gens, n, codim", [
    ("x, y", 0, ["x^3 - y^2"], 1, 1),
    ("x, y", 0, ["x^3 - y^2"], 2, 1),
    ("x, y", 2, ["x^3 + y^2"], 2, 2),
    ("x, y", 2, ["x^3 + y^2"], 3, 3),
    ("u, v, w", 0, ["u*w - v^2"], 2, 1),
    ("u, v, w", 0, ["u*w - v^2"], 3, 4),
    ("x, y", 0, ["y"], 3, 3),
    ("x, y", 0, [], 2, 3),
    ("x, y", 0, [], 3, 6),
])
def test_differential_power_codimensions(variables, p, gens, n, codim):
    power = differential_power(ideal(variables, p, *gens), n)
    assert power.codim == codim
    assert len(power.standard_monomials) == codim


def test_differential_power_needs_origin():
    with pytest.raises(PointNotOnVarietyError):
        differential_power(ideal("x, y", 0, "x - 1"), 1)


def test_order_zero_operators_are_multiplications():
    I = ideal("x, y", 0, "x^3 - y^2")
    ops = idealizer_operators(I, 0)
    assert ops.alphas == [(0, 0)]
    assert ops.generators == [(I.ctx.one,)]
    f = I.ctx.parse("x*y + 3")
    assert apply_operator(ops.generators[0], ops.alphas, f) == f


@pytest.mark.parametrize("variables, p, gens", BATTERY)
def test_differential_powers_are_nested(variables, p, gens):
    I = ideal(variables, p, *gens)
    ctx = I.ctx
    powers = [differential_power(I, n).as_ideal for n in (1, 2, 3)]
    for n, P in enumerate(powers, start=1):
        assert ideal_contains(P, I)
        assert ideal_contains(P, Ideal(ctx, ctx.power_of_maximal(n)))
    for bigger, smaller in zip(powers, powers[1:]):
        assert ideal_contains(bigger, smaller)
    # m^<1> is the maximal ideal
    assert ideal_equal(powers[0], Ideal(ctx, list(ctx.gens)))


@pytest.mark.parametrize("variables, p, gens", BATTERY)
def test_three_paths_agree(variables, p, gens):
    I = ideal(variables, p, *gens)
    for n in (1, 2, 3):
        power = differential_power(I, n)
        assert pairing_matrix(I, n, power).rank == power.codim
        assert jets_oracle_diff_dim(I, n)[0] == power.codim


def test_core_chain_of_rational_cusp():
    chain = differential_core_chain(ideal("x, y", 0, "x^3 - y^2"), 3)
    assert chain.codims[:2] == [1, 1]
    assert chain.codims[2] > 1
    assert chain.first_plateau == 1
    assert chain.verdict == "CORE_ZERO_LIKELY"
    assert differential_core_chain(ideal("x, y", 0), 1).verdict == "INCONCLUSIVE"
    assert differential_core_chain(ideal("x, y", 2, "x^3 + y^2"), 4).codims == [1, 2, 3, 4]
    line = differential_core_chain(ideal("x", 0), 3)
    assert line.codims == [1, 2, 3]
    assert line.first_plateau is None


########################################################################################################################
# Principal parts
########################################################################################################################

def test_principal_parts_rows():
    I = ideal("x, y", 0, "x^3 - y^2")
    M = principal_parts_presentation(I, 1)
    assert M.labels == [(0, 0), (1, 0), (0, 1)]
    assert M.formatted_rows() == [["0", "3*x^2", "-2*y"]]
    assert M.generic_rank_expected == 2
    assert M.generic_rank() == 2
    J = ideal("x, y", 2, "x^3 + y^2")
    ctx = J.ctx
    x, y = ctx.gens
    M2 = principal_parts_presentation(J, 2)
    assert (ctx.zero, x**2, ctx.zero, x, ctx.zero, ctx.one) in M2.reduced_rows()
    plane = principal_parts_presentation(ideal("x, y", 0), 2)
    assert plane.reduced_rows() == []
    assert plane.generic_rank() == 6


@pytest.mark.parametrize("variables, p, gens, n, rank", [
    ("x, y", 0, ["x^3 - y^2"], 1, 1),
    ("x, y", 2, ["x^3 + y^2"], 1, 2),
    ("x, y", 2, ["x^3 + y^2"], 2, 3),
    ("x, y", 0, [], 2, 6),
    ("x, y", 0, ["y"], 2, 3),
])
def test_free_rank_pparts(variables, p, gens, n, rank):
    result = free_rank_pparts(ideal(variables, p, *gens), n)
    assert result.free_rank == rank
    assert result.consistent


@pytest.mark.parametrize("variables, p, gens", BATTERY)
def test_structural_path_agrees_when_conclusive(variables, p, gens):
    I = ideal(variables, p, *gens)
    orders = (1, 2, 3) if I.ctx.ngens < 3 else (1, 2)
    for n in orders:
        result = free_rank_pparts(I, n)
        if result.structural.conclusive:
            assert result.structural.free_rank == result.free_rank


def test_torsion_of_cusp_and_cone():
    cusp = ideal("x, y", 0, "x^3 - y^2")
    M = principal_parts_presentation(cusp, 1)
    assert default_multiplier(cusp) == cusp.ctx.parse("y")
    by_y = torsion_submodule(M)
    by_x = torsion_submodule(M, cusp.ctx.parse("x"))
    assert not by_y.torsion_free
    assert not by_x.torsion_free
    # the torsion does not depend on the multiplier
    assert by_y.saturated.contains_module(by_x.saturated)
    assert by_x.saturated.contains_module(by_y.saturated)
    for p in (0, 5):
        cone = ideal("u, v, w", p, "u*w - v^2")
        for n in (1, 2):
            P = principal_parts_presentation(cone, n)
            assert torsion_submodule(P).torsion_free
        assert torsion_submodule(principal_parts_presentation(cone, 1), cone.ctx.parse("u")).torsion_free
    with pytest.raises(InputError):
        torsion_submodule(M, cusp.ctx.parse("x^3 - y^2"))


def test_multiplier_of_the_char_two_cusp():
    cusp = ideal("x, y", 2, "x^3 + y^2")
    ctx = cusp.ctx
    jac = ctx.jacobian(cusp.basis)
    assert jac == [[ctx.parse("x^2"), ctx.zero]]
    assert all(c for row in jac for f in row for c in f.values())
    assert default_multiplier(cusp) == ctx.parse("x^2")
    T = torsion_submodule(principal_parts_presentation(cusp, 1))
    assert not T.torsion_free
    assert T.saturated.contains((ctx.zero, ctx.one, ctx.zero))
    path = structural_free_rank(cusp, 1)
    assert (path.conclusive, path.free_rank, path.minimal_generators) == (True, 2, 2)


def test_fitting_ideals():
    ctx = ring("x", 0)
    x = ctx.gens[0]
    M = ModulePresentation(Ideal(ctx, []), [(0,)], [(x**2,)])
    assert fitting_ideal(M, 0).equals(Ideal(ctx, ["x^2"]))
    assert fitting_ideal(M, 1).is_unit
    free = ModulePresentation(Ideal(ctx, []), [(0,), (1,)], [])
    assert fitting_ideal(free, 2).is_unit
    assert fitting_ideal(free, 1).is_zero
    cond = fitting_conditions(free, 2)
    assert cond.free


def test_minimal_generator_count():
    cusp = ideal("x, y", 0, "x^3 - y^2")
    mu, gens, _ = minimal_generator_count(Ideal(cusp.ctx, ["3*x^2", "-2*y"]), cusp)
    assert mu == 2
    mu, _, _ = minimal_generator_count(Ideal(cusp.ctx, ["x^2", "x^2*y"]), cusp)
    assert mu == 1


def test_nash_check_verdicts():
    iso = nash_isomorphism_check(ideal("x, y", 2, "x^3 + y^2"), 1)
    assert iso.verdict == "ISO_CERTIFIED"
    assert iso.free_rank == 2
    assert iso.minor_ideal_generators == 1
    assert iso.principal_witness is not None
    assert nash_isomorphism_check(ideal("x, y", 2, "x^3 + y^2"), 2).free_rank == 3
    assert nash_isomorphism_check(ideal("x, y", 2, "x^3 + y^2"), 2).verdict != "NOT_ISO"
    cusp = ideal("x, y", 0, "x^3 - y^2")
    no = nash_isomorphism_check(cusp, 1)
    assert no.verdict == "NOT_ISO"
    assert no.free_rank == 1 and no.expected == 2
    assert no.minor_ideal_generators == 2
    assert Ideal(cusp.ctx, no.minor_ideal).equals(Ideal(cusp.ctx, ["x^2", "y"]))
    smooth = nash_isomorphism_check(ideal("x, y", 0, "x - y^2"), 1)
    assert smooth.verdict == "ISO_CERTIFIED"
    with pytest.raises(UnsupportedScopeError):
        nash_isomorphism_check(ideal("x, y, z", 0, "x", "y"), 1, require_certificate=True)


########################################################################################################################
# Prime characteristic
########################################################################################################################

def test_root_decomposition_round_trip():
    rng = reset_rng()
    checks = 0
    for p, e in ((2, 1), (2, 2), (3, 1), (5, 1)):
        ctx = ring("x, y, z", p)
        q = p**e
        for _ in range(75):
            f = random_poly(ctx, rng, terms=6, degree=9)
            parts = root_decomposition(f, q)
            assert all(all(a < q for a in alpha) for alpha in parts)
            assert reassemble(parts, q, ctx.ring) == f
            checks += 1
    assert checks == 300


def test_frobenius_pushforward_of_cusp():
    I = ideal("x, y", 2, "x^3 + y^2")
    ctx = I.ctx
    x, y = ctx.gens
    z = ctx.zero
    M = frobenius_pushforward(I)
    assert M.labels == [(0, 0), (1, 0), (0, 1), (1, 1)]
    rows = M.reduced_rows()
    for row in [(y, x, z, z), (x**2, y, z, z), (z, z, y, x), (z, z, x**2, y)]:
        assert row in rows
    assert M.generic_rank_expected == 2
    assert M.generic_rank() == 2
    F2 = fitting_ideal(M, 2)
    for g in ("x^2", "x*y", "y^2"):
        assert F2.contains(ctx.parse(g))
    assert not F2.is_unit
    assert all(g.const() == 0 for g in F2.basis)
    with pytest.raises(CharacteristicError):
        frobenius_pushforward(ideal("x, y", 0, "x^3 - y^2"))


def test_frobenius_pushforward_of_a_point():
    M = frobenius_pushforward(ideal("x", 2, "x"))
    assert M.ngens == 2
    assert M.generic_rank_expected == 1
    assert kunz_test(ideal("x", 2, "x")).verdict == "REGULAR"


@pytest.mark.parametrize("variables, p, gens, verdict", [
    ("x, y", 2, ["x^3 + y^2"], "SINGULAR"),
    ("x, y", 2, [], "REGULAR"),
    ("x, y", 3, ["x + y^2"], "REGULAR"),
    ("u, v, w", 2, ["u*w + v^2"], "SINGULAR"),
    ("u, v, w", 3, ["u*w - v^2"], "SINGULAR"),
])
def test_kunz_agrees_with_jacobian(variables, p, gens, verdict):
    I = ideal(variables, p, *gens)
    assert kunz_test(I).verdict == verdict
    assert (jacobian_smoothness(I).verdict == "SMOOTH") == (verdict == "REGULAR")


def test_fedder():
    cone = fedder_test(ideal("u, v, w", 2, "u*w - v^2"))
    assert cone.verdict == "F_PURE"
    assert cone.method == "hypersurface"
    ctx = ring("u, v, w", 2)
    assert ctx.parse(cone.witness) == ctx.parse("u*w + v^2")
    assert fedder_test(ideal("x, y", 2, "x^3 + y^2")).verdict == "NOT_F_PURE"
    assert fedder_test(ideal("x, y", 3)).verdict == "F_PURE"
    axes = fedder_test(ideal("x, y, z", 2, "x*y", "x*z", "y*z"))
    assert axes.verdict == "F_PURE" and axes.method == "colon"
    assert fedder_test(ideal("x, y, z", 2, "x^3 + y^2", "z")).verdict == "NOT_F_PURE"
    with pytest.raises(CharacteristicError):
        fedder_test(ideal("x, y", 0, "x*y"))


def test_jacobian_smoothness():
    assert jacobian_smoothness(ideal("x, y", 0, "x^3 - y^2")).verdict == "SINGULAR"
    assert jacobian_smoothness(ideal("x, y", 2, "x^3 + y^2")).verdict == "SINGULAR"
    assert jacobian_smoothness(ideal("x, y", 0, "x - y^2")).verdict == "SMOOTH"
    assert jacobian_smoothness(ideal("u, v, w", 0, "u*w - v^2")).verdict == "SINGULAR"
    assert jacobian_smoothness(ideal("x, y", 0)).verdict == "SMOOTH"


########################################################################################################################
# Invariants
########################################################################################################################

PM_ID = [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]]
REFLECTION = [[[1, 0], [0, 1]], [[1, 0], [0, -1]]]


def test_reynolds():
    ctx = ring()
    G = GroupAction.from_matrices(ctx, PM_ID)
    assert reynolds(ctx.parse("x^2"), G) == ctx.parse("x^2")
    assert reynolds(ctx.parse("x"), G) == ctx.zero
    assert reynolds(ctx.parse("x^2 + x"), G) == ctx.parse("x^2")
    rng = reset_rng()
    for _ in range(50):
        f = random_poly(ctx, rng, terms=5, degree=5)
        r = reynolds(f, G)
        assert reynolds(r, G) == r
        assert is_invariant(r, G)


def test_group_validation():
    ctx = ring()
    with pytest.raises(InputError):
        GroupAction.from_matrices(ctx, [[[-1, 0], [0, -1]]])
    with pytest.raises(InputError):
        GroupAction.from_matrices(ctx, [[[1, 0], [0, 1]], [[2, 0], [0, 1]]])
    with pytest.raises(UnsupportedScopeError):
        GroupAction.from_matrices(ring("x, y", 2), [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])


def _substitute(relation, inv):
    ctx = inv.group.ctx
    out = ctx.zero
    for m, c in relation.items():
        term = ctx.one
        for u, e in zip(inv.generators, m):
            term *= u**e
        out += term * ctx.ring.ground_new(ctx.domain.convert(c))
    return out


def test_invariant_generators():
    ctx = ring()
    inv = invariant_generators(GroupAction.from_matrices(ctx, PM_ID))
    assert inv.formatted()["generators"] == {"u1": "x^2", "u2": "x*y", "u3": "y^2"}
    assert inv.presentation.equals(Ideal(inv.ring_context, ["u1*u3 - u2^2"]))
    for r in inv.presentation.basis:
        assert _substitute(r, inv) == ctx.zero
    trivial = invariant_generators(GroupAction.from_matrices(ctx, [[[1, 0], [0, 1]]]))
    assert [ctx.format(u) for u in trivial.generators] == ["x", "y"]
    assert trivial.presentation.is_zero
    refl = invariant_generators(GroupAction.from_matrices(ctx, REFLECTION))
    assert [ctx.format(u) for u in refl.generators] == ["x", "y^2"]
    assert refl.presentation.is_zero


def test_pseudo_reflection_check():
    ctx = ring()
    assert pseudo_reflection_check(GroupAction.from_matrices(ctx, PM_ID)).verdict == "HYPOTHESIS_HOLDS"
    fails = pseudo_reflection_check(GroupAction.from_matrices(ctx, REFLECTION))
    assert fails.verdict == "FAILS"
    assert fails.witness == [["1", "0"], ["0", "-1"]]
    with pytest.warns(UserWarning):
        trivial = pseudo_reflection_check(GroupAction.from_matrices(ctx, [[[1, 0], [0, 1]]]))
    assert trivial.verdict == "HYPOTHESIS_HOLDS" and trivial.trivial_group


@pytest.mark.parametrize("p, n, codim, bound", [(5, 1, 1, 3), (0, 1, 1, 3), (0, 2, 4, 6), (5, 2, 4, 6)])
def test_quotient_diff_power_dims(p, n, codim, bound):
    G = GroupAction.from_matrices(ring("x, y", p), PM_ID)
    dims = quotient_diff_power_dims(G, n)
    assert (dims.codim, dims.bound, dims.verdict) == (codim, bound, "NOT_ISO")
    assert dims.paths_agree


def test_invariant_differential_powers_are_nested():
    G = GroupAction.from_matrices(ring("x, y", 0), PM_ID)
    inv = invariant_generators(G)
    eta = meet_with_invariants(G, 1, inv)
    uctx = eta.ctx
    assert ideal_equal(eta, Ideal(uctx, list(uctx.gens)))
    previous = eta
    for n in (2, 3, 4):
        current = meet_with_invariants(G, n, inv)
        assert ideal_contains(previous, current)
        assert ideal_contains(current, Ideal(uctx, uctx.power_of_maximal(n)))
        assert ideal_contains(current, inv.presentation)
        previous = current
    assert k_dimension(meet_with_invariants(G, 3, inv)) == 4


def test_quotient_refuses_reflections_and_trivial_groups():
    ctx = ring()
    with pytest.raises(UnsupportedScopeError):
        quotient_diff_power_dims(GroupAction.from_matrices(ctx, REFLECTION), 1)
    with pytest.raises(UnsupportedScopeError):
        quotient_diff_power_dims(GroupAction.from_matrices(ctx, [[[1, 0], [0, 1]]]), 1)


if __name__ == '__main__':
    test_field_spec()
    test_nash_check_verdicts()
    test_quotient_diff_power_dims(0, 2, 4, 6)
