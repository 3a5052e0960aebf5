"""Closed-form recoupling data: theta nets, tetrahedron symbols, and the
change-of-basis coefficients for four-holed-sphere spaces.

The closed forms here are quotients of products of quantum factorials.  They
are never trusted on their own: the test suite pins every family against the
brute-force network evaluator in tl.py.  All arithmetic is exact, and in
root-of-unity mode every denominator factorial argument stays at most p-2,
so the divisions below cannot hit a vanishing quantum integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .matrices import RingMatrix
from .scalars import RingSpec, Scalar, loop_value, quantum_integer
from .spaces import admissibility_failure, channel_colors, is_admissible_triple


def _product_of_quantum_factorials(ring: RingSpec, num_args, den_args) -> Scalar:
    """Exact Prod [k]! over num_args divided by the same over den_args.

    Shared quantum-integer factors are cancelled at integer-exponent level
    before any ring division happens; this keeps generic-mode rational
    function arithmetic small.
    """
    exp: dict = {}
    for k in num_args:
        for r in range(2, k + 1):
            exp[r] = exp.get(r, 0) + 1
    for k in den_args:
        for r in range(2, k + 1):
            exp[r] = exp.get(r, 0) - 1
    num = Scalar.one(ring)
    den = Scalar.one(ring)
    for r in sorted(exp):
        e = exp[r]
        if e == 0:
            continue
        q = quantum_integer(ring, r) ** abs(e)
        if e > 0:
            num = num * q
        else:
            den = den * q
    if den.is_one():
        return num
    return num / den


@lru_cache(maxsize=None)
def theta(a: int, b: int, c: int, ring: RingSpec) -> Scalar:
    """Value of the theta net with edge colors a, b, c.

    With x = (a+b-c)/2, y = (b+c-a)/2, z = (a+c-b)/2:
        theta = (-1)^(x+y+z) [x+y+z+1]! [x]! [y]! [z]! / ([x+y]! [y+z]! [x+z]!)
    Nonzero for every admissible triple, in both modes.
    """
    reason = admissibility_failure(a, b, c, ring)
    if reason is not None:
        raise ValueError(f"theta({a},{b},{c}) inadmissible: {reason}")
    x = (a + b - c) // 2
    y = (b + c - a) // 2
    z = (a + c - b) // 2
    value = _product_of_quantum_factorials(
        ring, [x + y + z + 1, x, y, z], [x + y, y + z, x + z]
    )
    if (x + y + z) % 2 != 0:
        value = -value
    return value


@dataclass(frozen=True)
class TetFrame:
    """The six colors of a tetrahedral network together with the derived
    half-sums that drive the summation formula.

    Vertices carry the triples (a,b,i), (c,d,i), (a,d,j), (b,c,j); m_1..m_4
    are the vertex half-sums, n_1..n_3 the half-sums over the three
    four-color circuits, and the summation variable z runs over
    [max m_s, min n_t].
    """

    a: int
    b: int
    i: int
    c: int
    d: int
    j: int

    def vertex_triples(self) -> tuple:
        return (
            (self.a, self.b, self.i),
            (self.c, self.d, self.i),
            (self.a, self.d, self.j),
            (self.b, self.c, self.j),
        )

    def check(self, ring: RingSpec) -> None:
        for triple in self.vertex_triples():
            reason = admissibility_failure(*triple, ring)
            if reason is not None:
                raise ValueError(
                    f"tet frame {self.colors()} has inadmissible vertex "
                    f"{triple}: {reason}"
                )

    def colors(self) -> tuple:
        return (self.a, self.b, self.i, self.c, self.d, self.j)

    @property
    def m_values(self) -> tuple:
        a, b, i, c, d, j = self.colors()
        return (
            (a + b + i) // 2,
            (c + d + i) // 2,
            (a + d + j) // 2,
            (b + c + j) // 2,
        )

    @property
    def n_values(self) -> tuple:
        a, b, i, c, d, j = self.colors()
        return (
            (a + b + c + d) // 2,
            (b + i + d + j) // 2,
            (a + i + c + j) // 2,
        )

    @property
    def z_range(self) -> tuple:
        return (max(self.m_values), min(self.n_values))

    @property
    def summand_count(self) -> int:
        lo, hi = self.z_range
        return hi - lo + 1


def tet_summands(a: int, b: int, i: int, c: int, d: int, j: int, ring: RingSpec) -> list:
    """The individual z-terms of the tetrahedron sum, in increasing z.

    Each term is
        E * (-1)^z [z+1]! / (prod_t [n_t - z]! * prod_s [z - m_s]!)
    with the shared prefactor
        E = prod_{s,t} [n_t - m_s]! / ([a]! [b]! [i]! [c]! [d]! [j]!).
    """
    frame = TetFrame(a, b, i, c, d, j)
    frame.check(ring)
    ms = frame.m_values
    ns = frame.n_values
    lo, hi = frame.z_range
    # all twelve n_t - m_s differences are triangle slacks, hence >= 0
    assert lo <= hi, frame
    prefactor = _product_of_quantum_factorials(
        ring,
        [n - m for n in ns for m in ms],
        [a, b, i, c, d, j],
    )
    out = []
    for z in range(lo, hi + 1):
        term = _product_of_quantum_factorials(
            ring, [z + 1], [n - z for n in ns] + [z - m for m in ms]
        )
        if z % 2 != 0:
            term = -term
        out.append(prefactor * term)
    return out


@lru_cache(maxsize=None)
def tet(a: int, b: int, i: int, c: int, d: int, j: int, ring: RingSpec) -> Scalar:
    """Tetrahedron symbol with vertices (a,b,i), (c,d,i), (a,d,j), (b,c,j)."""
    total = Scalar.zero(ring)
    for term in tet_summands(a, b, i, c, d, j, ring):
        total = total + term
    return total


def tet_symmetry_images(colors: tuple) -> set:
    """All color tuples obtained from the tetrahedral symmetries: vertex
    permutations act on the six edges (edge = pair of vertices)."""
    a, b, i, c, d, j = colors
    # slot -> vertex pair, vertices numbered 1..4 as in vertex_triples
    pair_of_slot = (
        frozenset({1, 3}),  # a
        frozenset({1, 4}),  # b
        frozenset({1, 2}),  # i
        frozenset({2, 4}),  # c
        frozenset({2, 3}),  # d
        frozenset({3, 4}),  # j
    )
    slot_of_pair = {p: s for s, p in enumerate(pair_of_slot)}
    images = set()
    for sigma in permutations((1, 2, 3, 4)):
        relabel = {v: sigma[v - 1] for v in (1, 2, 3, 4)}
        out = [0] * 6
        for slot, pair in enumerate(pair_of_slot):
            new_pair = frozenset(relabel[v] for v in pair)
            out[slot_of_pair[new_pair]] = colors[slot]
        images.add(tuple(out))
    return images


@lru_cache(maxsize=None)
def sixj(a: int, b: int, i: int, c: int, d: int, j: int, ring: RingSpec) -> Scalar:
    """Coefficient of w_j in the expansion of v_i on the four-holed sphere
    with boundary colors (a,b,c,d):

        sixj = loop(j) * tet(a,b,i,c,d,j) / (theta(a,d,j) * theta(b,c,j))

    v_i is the tree pairing (a,b) and (c,d) through the middle color i; w_j
    pairs (a,d) and (b,c) through j.
    """
    for triple in ((a, b, i), (c, d, i)):
        reason = admissibility_failure(*triple, ring)
        if reason is not None:
            raise ValueError(f"sixj source vertex {triple} inadmissible: {reason}")
    for triple in ((a, d, j), (b, c, j)):
        reason = admissibility_failure(*triple, ring)
        if reason is not None:
            raise ValueError(f"sixj target vertex {triple} inadmissible: {reason}")
    den = theta(a, d, j, ring) * theta(b, c, j, ring)
    if den.is_zero():
        raise ValueError(f"sixj({a},{b},{i},{c},{d},{j}): theta denominator vanishes")
    return loop_value(ring, j) * tet(a, b, i, c, d, j, ring) / den


def middle_colors(a: int, b: int, c: int, d: int, ring: RingSpec) -> list:
    """Admissible middle colors i for the tree pairing (a,b)(c,d), ascending."""
    right = set(channel_colors(c, d, ring))
    return [i for i in channel_colors(a, b, ring) if i in right]


def fusion_matrix(a: int, b: int, c: int, d: int, ring: RingSpec) -> RingMatrix:
    """Change of basis for the four-holed sphere: columns indexed by the
    middle colors i of the (a,b)(c,d) tree, rows by the middle colors j of
    the (a,d)(b,c) tree, both ascending; entry (j,i) = sixj(a,b,i,c,d,j)."""
    i_set = middle_colors(a, b, c, d, ring)
    if not i_set:
        raise ValueError(
            f"fusion_matrix({a},{b},{c},{d}): the space is zero-dimensional"
        )
    j_set = middle_colors(a, d, c, b, ring)
    assert len(i_set) == len(j_set), (i_set, j_set)
    rows = [[sixj(a, b, i, c, d, j, ring) for i in i_set] for j in j_set]
    return RingMatrix(ring, rows, row_labels=j_set, col_labels=i_set)
