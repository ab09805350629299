import pytest
from hypothesis import given, settings, strategies as st

from onemotives.intlinalg import (
    FiniteAbelianGroup,
    IntMatrix,
    cokernel_structure,
    hnf,
    kernel_basis,
    rank,
    saturate,
    snf,
    solve_integral,
    standard_symplectic_form,
    symplectic_basis,
    lattice_complement,
    unimodular_inverse,
)


def M(rows):
    return IntMatrix(rows)


small_entries = st.integers(min_value=-30, max_value=30)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(min_value=1, max_value=max_dim))
    n = draw(st.integers(min_value=1, max_value=max_dim))
    rows = draw(
        st.lists(
            st.lists(small_entries, min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
    return IntMatrix(rows)


@st.composite
def unimodular(draw, n):
    # product of random shears and swaps; determinant stays +-1
    U = IntMatrix.identity(n)
    for _ in range(draw(st.integers(min_value=1, max_value=8))):
        i = draw(st.integers(min_value=0, max_value=n - 1))
        j = draw(st.integers(min_value=0, max_value=n - 1))
        if i == j:
            continue
        c = draw(st.integers(min_value=-3, max_value=3))
        E = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        E[i][j] = c
        U = U * IntMatrix(E)
    return U


# -- IntMatrix basics --------------------------------------------------------

def test_matrix_immutable():
    A = M([[1, 2]])
    with pytest.raises(AttributeError):
        A.nrows = 5


def test_degenerate_shapes():
    A = IntMatrix.zeros(0, 3)
    assert A.shape == (0, 3)
    assert A.transpose().shape == (3, 0)
    B = IntMatrix.zeros(3, 0)
    assert (B * A).shape == (3, 3)
    assert (B * A).is_zero()
    assert (A * B).shape == (0, 0)
    assert A.transpose().to_float().shape == (3, 0)


def test_det_bareiss():
    assert M([[2, 1], [0, 3]]).det() == 6
    assert M([[0, 1], [1, 0]]).det() == -1
    assert M([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).det() == 0
    assert IntMatrix.identity(0).det() == 1


# -- hnf ---------------------------------------------------------------------

def test_hnf_fixed_point():
    A = M([[2, 1], [0, 3]])
    H, U = hnf(A)
    assert H == A
    assert U == IntMatrix.identity(2)


def test_hnf_zero_matrix():
    A = IntMatrix.zeros(2, 2)
    H, U = hnf(A)
    assert H.is_zero()
    assert U == IntMatrix.identity(2)


def test_hnf_rank_drop():
    A = M([[4, 6], [6, 9]])
    H, U = hnf(A)
    assert H == M([[2, 3], [0, 0]])
    assert U * A == H
    assert U.det() in (1, -1)


@settings(max_examples=150)
@given(matrices())
def test_hnf_properties(A):
    H, U = hnf(A)
    assert U * A == H
    assert U.det() in (1, -1)
    # pivots positive, entries above reduced into [0, pivot)
    prev_col = -1
    for i in range(H.nrows):
        nz = [j for j in range(H.ncols) if H[i, j] != 0]
        if not nz:
            # all later rows must be zero too
            assert all(
                H[k, j] == 0 for k in range(i, H.nrows) for j in range(H.ncols)
            )
            break
        p = nz[0]
        assert p > prev_col
        prev_col = p
        assert H[i, p] > 0
        for k in range(i):
            assert 0 <= H[k, p] < H[i, p]


# -- snf ---------------------------------------------------------------------

def test_snf_already_diagonal():
    A = M([[2, 0], [0, 4]])
    D, U, V = snf(A)
    assert D == A
    assert U * A * V == D


def test_snf_2x2():
    A = M([[2, 4], [6, 8]])
    D, U, V = snf(A)
    assert [D[0, 0], D[1, 1]] == [2, 4]
    assert U * A * V == D
    assert U.det() in (1, -1) and V.det() in (1, -1)


def test_snf_singular():
    A = M([[4, 6], [6, 9]])
    D, U, V = snf(A)
    assert [D[0, 0], D[1, 1]] == [1, 0]
    assert U * A * V == D


@settings(max_examples=150)
@given(matrices())
def test_snf_properties(A):
    D, U, V = snf(A)
    assert U * A * V == D
    assert U.det() in (1, -1) and V.det() in (1, -1)
    diag = [D[i, i] for i in range(min(D.nrows, D.ncols))]
    assert all(
        D[i, j] == 0
        for i in range(D.nrows)
        for j in range(D.ncols)
        if i != j
    )
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a and b:
            assert b % a == 0
        if a == 0:
            assert b == 0
    assert sum(1 for d in diag if d) == rank(A)


# -- kernel / saturation / cokernel -------------------------------------------

def test_kernel_line():
    A = M([[1, 2, 3]])
    K = kernel_basis(A)
    assert K.shape == (3, 2)
    assert (A * K).is_zero()
    assert saturate(K) == K


def test_kernel_trivial():
    assert kernel_basis(IntMatrix.identity(2)).shape == (2, 0)


def test_kernel_diagonal_line():
    K = kernel_basis(M([[1, 1], [1, 1]]))
    assert K.shape == (2, 1)
    assert K.column(0) in ((1, -1), (-1, 1))


@settings(max_examples=150)
@given(matrices())
def test_kernel_properties(A):
    K = kernel_basis(A)
    assert (A * K).is_zero()
    assert K.ncols == A.ncols - rank(A)
    if K.ncols:
        assert saturate(K) == K


def test_cokernel_examples():
    assert cokernel_structure(M([[2, 0], [0, 6]])) == FiniteAbelianGroup((2, 6))
    assert cokernel_structure(IntMatrix.identity(2)) == FiniteAbelianGroup(())
    assert cokernel_structure(M([[2, 4], [6, 8]])) == FiniteAbelianGroup((2, 4))
    assert cokernel_structure(IntMatrix.zeros(2, 1)) == FiniteAbelianGroup((), 2)


@settings(max_examples=60)
@given(st.data())
def test_cokernel_unimodular_invariance(data):
    A = data.draw(matrices(max_dim=4))
    P = data.draw(unimodular(A.nrows))
    Q = data.draw(unimodular(A.ncols))
    assert cokernel_structure(P * A * Q) == cokernel_structure(A)


def test_saturate_examples():
    assert saturate(M([[2], [0]])) == M([[1], [0]])
    assert saturate(M([[2], [2]])) == M([[1], [1]])
    U = M([[1, 1], [0, 1]])
    S = saturate(U)
    # already full rank unimodular: saturation is all of Z^2
    assert S.ncols == 2 and S.det() in (1, -1)


def test_saturate_rejects_dependent():
    with pytest.raises(ValueError):
        saturate(M([[1, 2], [2, 4]]))


# -- solve_integral ------------------------------------------------------------

def test_solve_diagonal():
    A = M([[2, 0], [0, 3]])
    assert solve_integral(A, (4, 9)) == (2, 3)
    assert solve_integral(A, (1, 0)) is None


def test_solve_rectangular():
    A = M([[2, 4], [6, 8]])
    x = solve_integral(A, (2, 6))
    assert x is not None
    assert A.matvec(x) == (2, 6)


def test_solve_no_equations():
    A = IntMatrix.zeros(0, 3)
    x = solve_integral(A, ())
    assert x == (0, 0, 0)


@settings(max_examples=100)
@given(st.data())
def test_solve_finds_planted_solution(data):
    A = data.draw(matrices(max_dim=4))
    x0 = data.draw(
        st.lists(small_entries, min_size=A.ncols, max_size=A.ncols)
    )
    b = A.matvec(x0)
    x = solve_integral(A, b)
    assert x is not None
    assert A.matvec(x) == tuple(b)


# -- FiniteAbelianGroup --------------------------------------------------------

def test_group_validation():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((3, 2))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1, 2))
    g = FiniteAbelianGroup((2, 6), 1)
    assert g.order() is None
    assert str(g) == "Z/2 + Z/6 + Z"
    assert g.elementary_divisors() == [2, 2, 3]


# -- symplectic reduction --------------------------------------------------------

def test_symplectic_standard_is_reachable():
    E = standard_symplectic_form(2)
    U = symplectic_basis(E)
    assert U.transpose() * E * U == E


@settings(max_examples=40)
@given(st.data())
def test_symplectic_random_unimodular_twist(data):
    g = data.draw(st.integers(min_value=1, max_value=3))
    V = data.draw(unimodular(2 * g))
    E = V.transpose() * standard_symplectic_form(g) * V
    U = symplectic_basis(E)
    assert U.det() in (1, -1)
    assert U.transpose() * E * U == standard_symplectic_form(g)


def test_symplectic_rejects_bad_input():
    with pytest.raises(ValueError):
        symplectic_basis(M([[0, 2], [-2, 0]]))  # not unimodular
    with pytest.raises(ValueError):
        symplectic_basis(M([[0, 1], [1, 0]]))  # not alternating


# -- inverses and lattice complements -----------------------------------------

def col_lattice_canon(A):
    # canonical row-set of the column lattice, for lattice equality tests
    H, _ = hnf(A.transpose())
    return [r for r in H.data if any(r)]


def test_unimodular_inverse_fixed():
    A = M([[2, 1], [1, 1]])
    assert unimodular_inverse(A) * A == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(M([[2, 0], [0, 1]]))


@settings(max_examples=40)
@given(st.data())
def test_unimodular_inverse_random(data):
    n = data.draw(st.integers(min_value=1, max_value=4))
    U = data.draw(unimodular(n))
    V = unimodular_inverse(U)
    assert U * V == IntMatrix.identity(n)
    assert V * U == IntMatrix.identity(n)


def test_lattice_complement_fixed():
    sub = M([[1], [0]])
    C = lattice_complement(sub, IntMatrix.identity(2))
    assert C.ncols == 1
    assert col_lattice_canon(sub.hstack(C)) == col_lattice_canon(IntMatrix.identity(2))
    # non-saturated sublattice is rejected
    with pytest.raises(ValueError):
        lattice_complement(M([[2], [0]]), IntMatrix.identity(2))
    # not inside the lattice at all
    with pytest.raises(ValueError):
        lattice_complement(M([[1], [0]]), M([[2, 0], [0, 1]]))


@settings(max_examples=40)
@given(st.data())
def test_lattice_complement_random(data):
    n = data.draw(st.integers(min_value=1, max_value=4))
    k = data.draw(st.integers(min_value=0, max_value=n))
    U = data.draw(unimodular(n))
    sup = data.draw(unimodular(n))
    sub = sup * U.submatrix(range(n), range(k))
    C = lattice_complement(sub, sup)
    assert C.ncols == n - k
    assert col_lattice_canon(sub.hstack(C)) == col_lattice_canon(sup)
