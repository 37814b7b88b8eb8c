"""The twisted tensor product: worked 3x3 and 9x9 examples, determinant law,
naturality witnesses, projectivity preservation."""

import pytest

from matfac import (
    MatFac,
    MatfacError,
    Matrix,
    PolynomialRing,
    TensorMatFac,
    assoc_check,
    cyclotomic_field,
    det_check,
    distribute_witness,
    is_projective_tensor,
    projective,
    recognize_projective_sum,
    shift_witness,
    swap_witness,
    tensor,
    tensor_morphism_left,
    tensor_morphism_right,
)
from matfac.morphisms import Morphism

from oracles import det_cofactor

F3 = cyclotomic_field(3)
R9 = PolynomialRing(F3, ("x1", "x2", "x0", "y1", "y2", "y0", "z1", "z2", "z0"))


def rank_one(ring, *names):
    entries = [ring.variable(v) for v in names]
    f = ring.one()
    for e in entries:
        f = f * e
    return MatFac(ring, f, [Matrix(ring, [[e]]) for e in entries])


X = rank_one(R9, "x1", "x2", "x0")
Y = rank_one(R9, "y1", "y2", "y0")
Z = rank_one(R9, "z1", "z2", "z0")
ZETA = F3.zeta(1)


def as_matrix(rows):
    return Matrix(R9, [[R9.parse(s) for s in row] for row in rows])


# The printed 3x3 triple for (x1,x2,x0) (x) (y1,y2,y0) at twist zeta,
# diagonal carrying the zeta-scaled y entries and the x entries one block over.
A1 = as_matrix([
    ["y1", "x1", "0"],
    ["0", "z*y0", "x2"],
    ["x0", "0", "z^2*y2"],
])
A2 = as_matrix([
    ["y2", "x1", "0"],
    ["0", "z*y1", "x2"],
    ["x0", "0", "z^2*y0"],
])
A0 = as_matrix([
    ["y0", "x1", "0"],
    ["0", "z*y2", "x2"],
    ["x0", "0", "z^2*y1"],
])


def test_three_by_three_example_exact():
    t = tensor(X, Y, ZETA)
    assert t.n == 3
    assert t.mats[0] == A1
    assert t.mats[1] == A2
    assert t.mats[2] == A0
    assert t.validate().passed
    assert t.f == X.f + Y.f


def test_nine_by_nine_example_exact():
    t = tensor(tensor(X, Y, ZETA), Z, ZETA)
    assert t.n == 9
    zero3 = Matrix.zero(R9, 3, 3)

    def zscaled(name, power):
        val = R9.scalar(F3.zeta(power)) * R9.variable(name)
        return Matrix.scalar(R9, 3, val)

    expected = [
        Matrix.block(R9, [
            [zscaled("z1", 0), A1, zero3],
            [zero3, zscaled("z0", 1), A2],
            [A0, zero3, zscaled("z2", 2)],
        ]),
        Matrix.block(R9, [
            [zscaled("z2", 0), A1, zero3],
            [zero3, zscaled("z1", 1), A2],
            [A0, zero3, zscaled("z0", 2)],
        ]),
        Matrix.block(R9, [
            [zscaled("z0", 0), A1, zero3],
            [zero3, zscaled("z2", 1), A2],
            [A0, zero3, zscaled("z1", 2)],
        ]),
    ]
    for p in range(3):
        assert t.mats[p] == expected[p]
    assert t.validate().passed


def test_tensor_remembers_factors():
    t = tensor(X, Y, ZETA)
    assert isinstance(t, TensorMatFac)
    assert t.left == X and t.right == Y and t.zeta == ZETA
    # provenance does not affect equality with plain data
    plain = MatFac(t.ring, t.f, list(t.mats))
    assert t == plain and plain == t


def test_non_primitive_twist_rejected():
    with pytest.raises(MatfacError):
        tensor(X, Y, F3.one())


def grid_ring(d):
    fld = cyclotomic_field(d)
    names = tuple(f"u{i}" for i in range(d)) + tuple(f"v{i}" for i in range(d))
    ring = PolynomialRing(fld, names)
    x1 = rank_one(ring, *(f"u{i}" for i in range(d)))
    y1 = rank_one(ring, *(f"v{i}" for i in range(d)))
    return ring, fld, x1, y1


def grid_factor(base, rank):
    return base if rank == 1 else base.direct_sum(base.shift(1))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("m", [1, 2])
def test_determinant_law_on_grid(d, n, m):
    ring, fld, x1, y1 = grid_ring(d)
    x = grid_factor(x1, n)
    y = grid_factor(y1, m)
    zeta = fld.root_of_unity(d, 1)
    rep = det_check(x, y, zeta)
    assert rep.passed
    # independent oracle: cofactor expansion of each factor of the tensor
    t = tensor(x, y, zeta)
    assert t.validate().passed
    nm = n * m
    expected = (x.f + y.f) ** nm
    if (nm * (d + 1)) % 2:
        expected = -expected
    assert rep.expected == expected
    for mat in t.mats:
        assert det_cofactor(mat) == expected


def test_swap_witness_is_isomorphism():
    w = swap_witness(X, Y, ZETA)
    assert w.source == tensor(X, Y, ZETA)
    assert w.target == tensor(Y, X, ZETA.inverse())
    assert w.is_morphism()
    assert w.is_isomorphism()


def test_shift_witness_and_data_equality():
    w, equality = shift_witness(X, Y, ZETA)
    assert equality  # T(X (x) Y) == X (x) TY on the nose
    assert w.is_morphism()
    assert w.is_isomorphism()
    assert w.source == tensor(X.shift(1), Y, ZETA)
    assert w.target == tensor(X, Y, ZETA).shift(1)


def test_distribute_witness():
    X2 = rank_one(R9, "x2", "x0", "x1")  # same f, different order
    w = distribute_witness(X, X2, Y, ZETA)
    assert w.is_morphism()
    assert w.is_isomorphism()
    assert w.target == tensor(X, Y, ZETA).direct_sum(tensor(X2, Y, ZETA))


def test_associativity_as_data():
    ok, regroup = assoc_check(X, Y, Z, ZETA)
    assert ok
    assert regroup.is_isomorphism()


def test_tensor_of_morphisms():
    mul = Morphism(X, X, [Matrix(R9, [[R9.variable("x0") ** 2]])] * 3)
    left = tensor_morphism_left(mul, Y, ZETA)
    assert left.is_morphism()
    right = tensor_morphism_right(X, Morphism.identity(Y), ZETA)
    assert right.is_morphism()
    assert right.is_isomorphism()


def test_projective_tensor_recognition():
    p = projective(R9, 3, X.f, 0)
    rep = is_projective_tensor(p, Y, ZETA)
    assert rep.passed
    assert rep.input_shifts == [0]
    assert len(rep.shifts_found) == 3
    t = tensor(p, Y, ZETA)
    assert t.validate().passed
    with pytest.raises(MatfacError):
        recognize_projective_sum(tensor(X, Y, ZETA))
