"""Modular-category data for the two shipped anyon theories.

This module holds the fusion rules, quantum dimensions, F-matrices (6j
symbols) and R-symbols for SU(2)_4 (= SO(3)_2) and SO(5)_2, together with
pentagon/hexagon/unitarity consistency checks and a line-oriented file
format.

Conventions
-----------
* An F-matrix ``F[a,b,c;d]`` is the change of basis between the two fusion
  orders of three anyons with total charge ``d``.  Rows are indexed by the
  left-associated internal charge ``n`` (``n`` in ``a x b`` with ``d`` in
  ``n x c``), columns by the right-associated charge ``m`` (``m`` in
  ``b x c`` with ``d`` in ``a x m``).  Index sets are sorted in the
  category's canonical label order.
* ``F[a,b,c;d] = (1)`` whenever one of ``a, b, c`` is the unit and the
  tuple is admissible; such blocks are synthesized on access, never stored.
* An R-symbol ``R[a,b;c]`` is the phase acquired when two anyons fusing to
  ``c`` are exchanged once (positive crossing).  ``R[1,a;a] = R[a,1;a] = 1``.
* SO(5)_2 data is deliberately partial: looking up an absent entry raises
  :class:`MissingDataError` instead of guessing, and the consistency
  checker skips (and counts) equations it cannot evaluate.

All categories here are multiplicity-free (every fusion coefficient is 0
or 1), and every label is self-dual.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "Category",
    "CategoryError",
    "UnknownLabelError",
    "InadmissibleError",
    "MissingDataError",
    "CategoryFileError",
    "ConsistencyReport",
    "builtin_category",
    "check_consistency",
    "serialize_category",
    "parse_category",
    "categories_equal",
]


class CategoryError(Exception):
    """Base class for category-data errors."""


class UnknownLabelError(CategoryError):
    """A label name that the category does not define."""


class InadmissibleError(CategoryError):
    """An F/R lookup whose index tuple violates the fusion rules."""


class MissingDataError(CategoryError):
    """An admissible F/R entry that the (partial) tables do not provide."""


class CategoryFileError(CategoryError):
    """Malformed category file; carries the offending line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Category:
    """Immutable bundle of labels, fusion rules, F-matrices and R-symbols.

    ``labels`` fixes the canonical order used for all row/column index
    sets; the unit label comes first.  ``f_table``/``r_table`` hold only
    non-trivial stored entries (unit-involving blocks are synthesized).
    """

    name: str
    labels: tuple
    qdim: dict
    fusion: dict  # (a, b) -> frozenset of outcomes
    f_table: dict  # (a, b, c, d) -> complex ndarray
    r_table: dict  # (a, b, c) -> complex
    aliases: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)

    @property
    def unit(self):
        return self.labels[0]

    def resolve(self, label):
        """Map a label or alias to its canonical name."""
        name = str(label)
        if name in self.qdim:
            return name
        if name in self.aliases:
            return self.aliases[name]
        raise UnknownLabelError(f"{self.name}: unknown label {label!r}")

    def label_index(self, label):
        return self.labels.index(self.resolve(label))

    def fuse(self, a, b):
        """Fusion outcomes of ``a x b`` as a frozenset."""
        return self.fusion[(self.resolve(a), self.resolve(b))]

    def n(self, a, b, c):
        """Fusion coefficient N^{ab}_c (0 or 1; multiplicity-free)."""
        return 1 if self.resolve(c) in self.fuse(a, b) else 0

    def _sorted(self, labels):
        return tuple(sorted(labels, key=self.labels.index))

    def f_rows(self, a, b, c, d):
        """Admissible row labels of F[a,b,c;d] in canonical order."""
        a, b, c, d = map(self.resolve, (a, b, c, d))
        return self._sorted(n for n in self.fuse(a, b) if d in self.fuse(n, c))

    def f_cols(self, a, b, c, d):
        """Admissible column labels of F[a,b,c;d] in canonical order."""
        a, b, c, d = map(self.resolve, (a, b, c, d))
        return self._sorted(m for m in self.fuse(b, c) if d in self.fuse(a, m))

    def is_admissible_f(self, a, b, c, d):
        return bool(self.f_rows(a, b, c, d)) and bool(self.f_cols(a, b, c, d))

    def has_f(self, a, b, c, d):
        """True if F[a,b,c;d] is admissible and available."""
        key = tuple(map(self.resolve, (a, b, c, d)))
        if not self.is_admissible_f(*key):
            return False
        return self.unit in key[:3] or key in self.f_table

    def f(self, a, b, c, d):
        """The F-matrix as a dense array.

        Raises :class:`InadmissibleError` for tuples the fusion rules
        forbid and :class:`MissingDataError` for admissible entries absent
        from a partial table.
        """
        key = tuple(map(self.resolve, (a, b, c, d)))
        if not self.is_admissible_f(*key):
            raise InadmissibleError(f"{self.name}: inadmissible F{key}")
        if self.unit in key[:3]:
            return np.ones((1, 1), dtype=complex)
        if key not in self.f_table:
            raise MissingDataError(f"{self.name}: no stored F-matrix for {key}")
        return self.f_table[key]

    def has_r(self, a, b, c):
        a, b, c = map(self.resolve, (a, b, c))
        if c not in self.fuse(a, b):
            return False
        return self.unit in (a, b) or (a, b, c) in self.r_table

    def r(self, a, b, c):
        """The R-symbol R[a,b;c] (a unit-modulus complex number)."""
        a, b, c = map(self.resolve, (a, b, c))
        if c not in self.fuse(a, b):
            raise InadmissibleError(f"{self.name}: inadmissible R[{a},{b};{c}]")
        if self.unit in (a, b):
            return complex(1.0)
        if (a, b, c) not in self.r_table:
            raise MissingDataError(f"{self.name}: no stored R-symbol for ({a},{b};{c})")
        return self.r_table[(a, b, c)]


def _symmetrized_fusion(labels, rules):
    """Close a fusion-rule dict under commutativity and check coverage."""
    table = {}
    for (a, b), out in rules.items():
        table[(a, b)] = frozenset(out)
        table.setdefault((b, a), frozenset(out))
    for a in labels:
        for b in labels:
            if (a, b) not in table:
                raise ValueError(f"fusion rule missing for ({a},{b})")
    return table


def _build_su2_4():
    """SU(2) level-4 / SO(3)_2 with the integer labels {0,1,2,3,4}."""
    labels = ("0", "1", "2", "3", "4")
    qdim = {j: math.sin((int(j) + 1) * math.pi / 6) / math.sin(math.pi / 6) for j in labels}
    rules = {}
    for a in range(5):
        for b in range(5):
            cs = range(abs(a - b), min(a + b, 8 - a - b) + 1, 2)
            rules[(str(a), str(b))] = frozenset(str(c) for c in cs)
    fusion = _symmetrized_fusion(labels, rules)

    s2, s3 = math.sqrt(2), math.sqrt(3)
    m_a = [[-1 / s3, s2 / s3], [s2 / s3, 1 / s3]]
    m_b = [[-1 / s2, 1 / s2], [1 / s2, 1 / s2]]
    m_c = [[-s2 / s3, 1 / s3], [1 / s3, s2 / s3]]
    m_d = [[-0.5, s3 / 2], [s3 / 2, 0.5]]
    m_e = [[-s3 / 2, 0.5], [0.5, s3 / 2]]
    m_f = [[1 / s2, -1 / s2], [-1 / s2, -1 / s2]]
    m_g = [[0.5, -s3 / 2], [-s3 / 2, -0.5]]
    m_h = [[0.5, -1 / s2, 0.5], [-1 / s2, 0.0, 1 / s2], [0.5, 1 / s2, 0.5]]

    groups = [
        (-1.0, ["114 4", "123 4", "124 3", "132 4", "133 3", "134 2", "141 4",
                "142 3", "143 2", "144 1", "213 4", "214 3", "222 4", "224 2",
                "231 4", "234 1", "241 3", "242 2", "243 1", "312 4", "313 3",
                "314 2", "321 4", "324 1", "331 3", "333 1", "334 4", "341 2",
                "342 1", "343 4", "344 3", "411 4", "412 3", "413 2", "414 1",
                "421 3", "422 2", "423 1", "431 2", "432 1", "433 4", "434 3",
                "441 1", "443 3"]),
        (m_a, ["111 1", "131 3", "313 1", "333 3"]),
        (m_b, ["112 2", "122 1", "122 3", "132 2", "211 2", "213 2", "221 1",
               "221 3", "223 1", "231 2", "312 2", "322 1"]),
        (m_c, ["113 3", "133 1", "311 3", "331 1"]),
        (m_d, ["121 2", "212 1"]),
        (m_e, ["123 2", "212 3", "232 1", "321 2"]),
        (m_f, ["223 3", "233 2", "322 3", "332 2"]),
        (m_g, ["232 3", "323 2"]),
        (m_h, ["222 2"]),
    ]

    f_table = {}
    for value, keys in groups:
        # Tables are printed with columns indexed by the left-associated
        # charge; transpose into the row convention (no-op when symmetric).
        mat = np.asarray(value, dtype=complex).reshape(-1)
        size = int(round(math.sqrt(mat.size)))
        mat = mat.reshape(size, size).T.copy()
        for key in keys:
            abc, d = key.split()
            f_table[(abc[0], abc[1], abc[2], d)] = mat

    cat = Category("su2_4", labels, qdim, fusion, f_table, {},
                   aliases={"eps": "1", "eps'": "3", "y": "2", "z": "4", "unit": "0"})

    # Every admissible tuple the printed tables drop is a trivial scalar 1.
    for a in labels:
        for b in labels:
            for c in labels:
                for d in labels:
                    key = (a, b, c, d)
                    if cat.unit in key[:3] or key in f_table:
                        continue
                    rows, cols = cat.f_rows(*key), cat.f_cols(*key)
                    if not rows or not cols:
                        continue
                    if len(rows) != 1 or len(cols) != 1:
                        raise AssertionError(f"unlisted non-scalar F{key}")
                    f_table[key] = np.ones((1, 1), dtype=complex)

    e = cmath.exp
    pi = math.pi
    r_groups = [
        (1.0, ["00 0", "01 1", "02 2", "03 3", "04 4", "10 1", "20 2", "30 3",
               "40 4", "44 0"]),
        (e(3j * pi / 4), ["11 0"]),
        (e(1j * pi / 12), ["11 2"]),
        (e(2j * pi / 3), ["12 1", "21 1", "22 2", "23 3", "32 3"]),
        (e(1j * pi / 6), ["12 3", "21 3"]),
        (e(7j * pi / 12), ["13 2", "31 2"]),
        (e(1j * pi / 4), ["13 4", "31 4"]),
        (1j, ["14 3", "41 3"]),
        (e(-2j * pi / 3), ["22 0"]),
        (e(1j * pi / 3), ["22 4"]),
        (e(-5j * pi / 6), ["23 1", "32 1"]),
        (-1.0, ["24 2", "42 2"]),
        (e(-1j * pi / 4), ["33 0"]),
        (e(-11j * pi / 12), ["33 2"]),
        (-1j, ["34 1", "43 1"]),
    ]
    for value, keys in r_groups:
        for key in keys:
            ab, c = key.split()
            cat.r_table[(ab[0], ab[1], c)] = complex(value)
    return cat


def _build_so5_2():
    """SO(5)_2 with labels {1, z, y1, y2, eps, eps'}; tables are partial."""
    labels = ("1", "z", "y1", "y2", "eps", "eps'")
    s5 = math.sqrt(5)
    qdim = {"1": 1.0, "z": 1.0, "y1": 2.0, "y2": 2.0, "eps": s5, "eps'": s5}
    rules = {
        ("1", "1"): {"1"}, ("1", "z"): {"z"}, ("1", "y1"): {"y1"},
        ("1", "y2"): {"y2"}, ("1", "eps"): {"eps"}, ("1", "eps'"): {"eps'"},
        ("z", "z"): {"1"}, ("z", "y1"): {"y1"}, ("z", "y2"): {"y2"},
        ("z", "eps"): {"eps'"}, ("z", "eps'"): {"eps"},
        ("y1", "y1"): {"1", "z", "y2"}, ("y1", "y2"): {"y1", "y2"},
        ("y2", "y2"): {"1", "z", "y1"},
        ("y1", "eps"): {"eps", "eps'"}, ("y1", "eps'"): {"eps", "eps'"},
        ("y2", "eps"): {"eps", "eps'"}, ("y2", "eps'"): {"eps", "eps'"},
        ("eps", "eps"): {"1", "y1", "y2"}, ("eps", "eps'"): {"z", "y1", "y2"},
        ("eps'", "eps'"): {"1", "y1", "y2"},
    }
    fusion = _symmetrized_fusion(labels, rules)

    h = math.sqrt(10 - 2 * s5)
    k = math.sqrt(10 + 2 * s5)
    s2 = math.sqrt(2)
    gp = (s5 + 1) / 2
    gm = (s5 - 1) / 2

    hh = [[1 / s2, -1 / s2], [1 / s2, 1 / s2]]
    ph = [[1 / s2, 1 / s2], [1 / s2, -1 / s2]]
    sw = [[0.0, 1.0], [1.0, 0.0]]
    rt = [[1 / s2, 1 / s2], [-1 / s2, 1 / s2]]
    lt = [[-1 / s2, 1 / s2], [1 / s2, 1 / s2]]
    nb = [[-1 / s2, -1 / s2], [1 / s2, -1 / s2]]
    nf = [[1 / s2, -1 / s2], [-1 / s2, -1 / s2]]
    nn = [[-1 / s2, 1 / s2], [-1 / s2, -1 / s2]]
    j1 = [[-s5 * k * k / 40, h / 4], [h / 4, s5 * k * k / 40]]
    j2 = [[h / 4, s5 * k * k / 40], [s5 * k * k / 40, -h / 4]]
    j3 = [[s5 * h * h / 40, k / 4], [k / 4, -s5 * h * h / 40]]
    j4 = [[k / 4, -s5 * h * h / 40], [-s5 * h * h / 40, -s5 * h * k * k / 80]]
    j5 = [[s5 * k * k / 40, -h / 4], [-h / 4, -s5 * k * k / 40]]
    j6 = [[-s5 * h * h / 40, -s5 * h * k * k / 80], [-s5 * h * k * k / 80, s5 * h * h / 40]]
    j7 = [[-s5 * k * k / 40, -h / 4], [-h / 4, s5 * k * k / 40]]
    j8 = [[-h / 4, s5 * k * k / 40], [s5 * k * k / 40, h / 4]]
    j9 = [[s5 * k * k / 40, h / 4], [h / 4, -s5 * k * k / 40]]
    t2 = [[s5 * h / 10, s5 * k / 10], [s5 * k / 10, -s5 * h / 10]]
    u2 = [[-s5 * h / 10, -h * k * k / 40], [-h * k * k / 40, s5 * h / 10]]
    v3 = [[0.5, 0.5, 1 / s2], [0.5, 0.5, -1 / s2], [1 / s2, -1 / s2, 0.0]]
    w3 = [[1 / s5, s2 / s5, s2 / s5],
          [s2 / s5, -gp / s5, gm / s5],
          [s2 / s5, gm / s5, -gp / s5]]
    x3 = [[1 / s5, -s2 / s5, -s2 / s5],
          [s2 / s5, gp / s5, -gm / s5],
          [s2 / s5, -gm / s5, gp / s5]]
    y3 = [[-1 / s5, s2 / s5, s2 / s5],
          [s2 / s5, gp / s5, -gm / s5],
          [s2 / s5, -gm / s5, gp / s5]]
    z3 = [[1 / s5, s2 / s5, s2 / s5],
          [-s2 / s5, gp / s5, -gm / s5],
          [-s2 / s5, -gm / s5, gp / s5]]

    p, q = "eps", "eps'"
    groups = [
        (-1.0, [("z", "y1", "y1", "y2"), ("z", "y1", "y2", "y1"),
                ("z", "y2", "y1", "y1"), ("z", "y2", "y1", "y2"),
                ("z", p, "z", p), ("z", p, "y1", q), ("z", p, "y2", q),
                ("z", q, "z", q), ("z", q, "y1", p), ("z", q, "y2", p),
                ("y1", "z", "y1", "y2"), ("y1", "z", "y2", "y1"),
                ("y1", "y1", "z", "y2"), ("y1", "y1", "y2", "z"),
                ("y1", "y2", "z", "y1"), ("y1", "y2", "z", "y2"),
                ("y1", "y2", "y1", "z"), ("y1", p, "z", q), ("y1", q, "z", p),
                ("y2", "z", "y1", "y1"), ("y2", "z", "y2", "y1"),
                ("y2", "y1", "z", "y1"), ("y2", "y1", "y1", "z"),
                ("y2", "y1", "y2", "z"), ("y2", p, "z", q), ("y2", q, "z", p),
                (p, "z", p, "z"), (p, "z", q, "y1"), (p, "z", q, "y2"),
                (p, "y1", q, "z"), (p, "y2", q, "z"),
                (q, "z", p, "y1"), (q, "z", p, "y2"), (q, "z", q, "z"),
                (q, "y1", p, "z"), (q, "y2", p, "z")]),
        (hh, [("y1", "y1", "y2", "y2"), ("y1", "y1", p, q), ("y1", "y1", q, p),
              ("y1", p, p, "y2"), ("y2", "y2", "y1", "y1"), ("y2", p, p, "y1"),
              (p, "y1", "y2", p), (p, "y2", "y1", p), (p, q, "y1", "y1"),
              (q, p, "y1", "y1")]),
        (ph, [("y1", "y1", p, p), ("y1", "y1", q, q), ("y1", p, p, "y1"),
              ("y1", q, q, "y1"), ("y2", "y2", p, p), ("y2", "y2", p, q),
              ("y2", "y2", q, p), ("y2", "y2", q, q), ("y2", p, p, "y2"),
              ("y2", p, q, "y2"), ("y2", q, p, "y2"), ("y2", q, q, "y2"),
              (p, "y1", "y1", p), (p, "y2", "y2", p), (p, "y2", "y2", q),
              (p, p, "y1", "y1"), (p, p, "y2", "y2"), (p, q, "y2", "y2"),
              (q, "y1", "y1", q), (q, "y2", "y2", p), (q, "y2", "y2", q),
              (q, p, "y2", "y2"), (q, q, "y1", "y1"), (q, q, "y2", "y2")]),
        (sw, [("y1", "y2", "y1", "y2"), ("y2", "y1", "y2", "y1")]),
        (rt, [("y1", "y2", "y2", "y1"), ("y1", "y2", p, p), ("y1", p, q, "y1"),
              ("y1", q, p, "y1"), ("y2", "y1", "y1", "y2"), ("y2", "y1", p, p),
              (p, "y1", "y1", q), (p, p, "y1", "y2"), (p, p, "y2", "y1"),
              (q, "y1", "y1", p)]),
        (lt, [("y1", "y2", p, q), ("y1", q, p, "y2"), ("y2", "y1", q, p),
              ("y2", p, q, "y1"), (p, "y2", "y1", q), (p, q, "y1", "y2"),
              (q, "y1", "y2", p), (q, p, "y2", "y1")]),
        (nb, [("y1", "y2", q, p), ("y2", "y1", p, q), (p, q, "y2", "y1"),
              (q, p, "y1", "y2")]),
        (nf, [("y1", "y2", q, q), ("y1", q, q, "y2"), ("y2", "y1", q, q),
              ("y2", q, q, "y1"), (q, "y1", "y2", q), (q, "y2", "y1", q),
              (q, q, "y1", "y2"), (q, q, "y2", "y1")]),
        (j1, [("y1", p, "y1", p), (p, "y1", p, "y1")]),
        (j2, [("y1", p, "y1", q), ("y1", q, "y1", p), (p, "y1", q, "y1"),
              (q, "y1", p, "y1")]),
        (j3, [("y1", p, "y2", p), ("y2", p, "y1", p), (p, "y1", p, "y2"),
              (p, "y2", p, "y1")]),
        (j4, [("y1", p, "y2", q), ("y1", q, "y2", p), ("y2", p, "y1", q),
              ("y2", q, "y1", p), (p, "y1", q, "y2"), (p, "y2", q, "y1"),
              (q, "y1", p, "y2"), (q, "y2", p, "y1")]),
        (nn, [("y1", p, q, "y2"), ("y2", q, p, "y1"), (p, "y1", "y2", q),
              (q, "y2", "y1", p)]),
        (j5, [("y1", q, "y1", q), (q, "y1", q, "y1")]),
        (j6, [("y1", q, "y2", q), ("y2", q, "y1", q), (q, "y1", q, "y2"),
              (q, "y2", q, "y1")]),
        (j7, [("y2", p, "y2", p), (p, "y2", p, "y2")]),
        (j8, [("y2", p, "y2", q), ("y2", q, "y2", p), (p, "y2", q, "y2"),
              (q, "y2", p, "y2")]),
        (j9, [("y2", q, "y2", q), (q, "y2", q, "y2")]),
        (t2, [(p, p, p, q), (p, p, q, p), (p, q, p, p), (q, p, p, p)]),
        (u2, [(p, q, q, q), (q, p, q, q), (q, q, p, q), (q, q, q, p)]),
        (v3, [("y1", "y1", "y1", "y1"), ("y2", "y2", "y2", "y2")]),
        (w3, [(p, p, p, p), (q, q, q, q)]),
        (x3, [(p, p, q, q), (q, q, p, p)]),
        (y3, [(p, q, p, q), (q, p, q, p)]),
        (z3, [(p, q, q, p), (q, p, p, q)]),
    ]

    f_table = {}
    for value, keys in groups:
        mat = np.atleast_2d(np.asarray(value, dtype=complex)).T.copy()
        for key in keys:
            f_table[key] = mat

    pi = math.pi
    r_table = {
        ("y1", "y1", "1"): cmath.exp(6j * pi / 5),
        ("y1", "y1", "z"): cmath.exp(1j * pi / 5),
        ("y1", "y1", "y2"): cmath.exp(4j * pi / 5),
        ("eps", "eps", "1"): -1j,
        ("eps", "eps", "y1"): cmath.exp(11j * pi / 10),
        ("eps", "eps", "y2"): cmath.exp(-1j * pi / 10),
    }

    cat = Category("so5_2", labels, qdim, fusion, f_table, r_table,
                   aliases={"y_1": "y1", "y_2": "y2", "epsp": "eps'", "unit": "1"},
                   constants={"h": h, "k": k})

    for key, mat in f_table.items():
        rows, cols = cat.f_rows(*key), cat.f_cols(*key)
        if mat.shape != (len(rows), len(cols)):
            raise AssertionError(f"F{key}: table shape {mat.shape} vs {(len(rows), len(cols))}")
    return cat


@lru_cache(maxsize=None)
def builtin_category(name):
    """Return one of the shipped categories: ``su2_4`` or ``so5_2``."""
    if name == "su2_4":
        return _build_su2_4()
    if name == "so5_2":
        return _build_so5_2()
    raise ValueError(f"unknown category {name!r} (expected 'su2_4' or 'so5_2')")


# ---------------------------------------------------------------------------
# consistency checks


@dataclass
class ConsistencyReport:
    category: str
    dim_residual: float
    unitarity_max: float
    r_modulus_max: float
    pentagon_max: float
    pentagon_checked: int
    pentagon_skipped: int
    hexagon_max: float
    hexagon_checked: int
    hexagon_skipped: int
    hexagon_orientation: str

    @property
    def skips(self):
        return self.pentagon_skipped + self.hexagon_skipped


def _block(cat, cache, a, b, c, d):
    """(row index map, col index map, matrix or None-if-missing)."""
    key = (a, b, c, d)
    hit = cache.get(key)
    if hit is None:
        rows = cat.f_rows(*key)
        cols = cat.f_cols(*key)
        if rows and cols:
            mat = cat.f(*key) if cat.has_f(*key) else None
        else:
            mat = np.zeros((0, 0))
        hit = ({n: i for i, n in enumerate(rows)}, {m: j for j, m in enumerate(cols)}, mat)
        cache[key] = hit
    return hit


def _pentagon(cat):
    """Max residual of sum_s F[abc;v]_{us} F[asd;e]_{vt} F[bcd;t]_{sr}
    = F[ucd;e]_{vr} F[abr;e]_{ut} over all admissible instances."""
    cache = {}
    worst = 0.0
    checked = skipped = 0
    labels = cat.labels
    for a in labels:
        for b in labels:
            for c in labels:
                for d in labels:
                    for u in cat.fuse(a, b):
                        for v in cat.fuse(u, c):
                            for e in cat.fuse(v, d):
                                rs = [r for r in cat.fuse(c, d) if e in cat.fuse(u, r)]
                                for r in rs:
                                    for t in cat.fuse(b, r):
                                        if e not in cat.fuse(a, t):
                                            continue
                                        try:
                                            lhs = 0.0
                                            r1, c1, m1 = _block(cat, cache, a, b, c, v)
                                            for s in cat.fuse(b, c):
                                                if u not in r1 or s not in c1:
                                                    continue
                                                r2, c2, m2 = _block(cat, cache, a, s, d, e)
                                                if v not in r2 or t not in c2:
                                                    continue
                                                r3, c3, m3 = _block(cat, cache, b, c, d, t)
                                                if s not in r3 or r not in c3:
                                                    continue
                                                if m1 is None or m2 is None or m3 is None:
                                                    raise MissingDataError(cat.name)
                                                lhs += (m1[r1[u], c1[s]]
                                                        * m2[r2[v], c2[t]]
                                                        * m3[r3[s], c3[r]])
                                            r4, c4, m4 = _block(cat, cache, u, c, d, e)
                                            r5, c5, m5 = _block(cat, cache, a, b, r, e)
                                            rhs = 0.0
                                            if v in r4 and r in c4 and u in r5 and t in c5:
                                                if m4 is None or m5 is None:
                                                    raise MissingDataError(cat.name)
                                                rhs = m4[r4[v], c4[r]] * m5[r5[u], c5[t]]
                                        except MissingDataError:
                                            skipped += 1
                                            continue
                                        checked += 1
                                        worst = max(worst, abs(lhs - rhs))
    return worst, checked, skipped


def _hexagon(cat):
    """Residuals of F[abc;d] D(R^{bc}) F[acb;d]^-1 D(R^{ac}) F[cab;d]
    = D(R^{nc}_d), for both R orientations."""
    cache = {}
    worst = {False: 0.0, True: 0.0}
    checked = skipped = 0
    labels = cat.labels
    for a in labels:
        for b in labels:
            for c in labels:
                ns = cat._sorted(cat.fuse(a, b))
                for d in cat._sorted({x for n in ns for x in cat.fuse(n, c)}):
                    n_set = [n for n in ns if d in cat.fuse(n, c)]
                    if not n_set:
                        continue
                    try:
                        r1, c1, f1 = _block(cat, cache, a, b, c, d)
                        r2, c2, f2 = _block(cat, cache, a, c, b, d)
                        r3, c3, f3 = _block(cat, cache, c, a, b, d)
                        if f1 is None or f2 is None or f3 is None:
                            raise MissingDataError(cat.name)
                        rbc = np.array([cat.r(b, c, m) for m in c1], dtype=complex)
                        rac = np.array([cat.r(a, c, kk) for kk in r2], dtype=complex)
                        rnc = np.array([cat.r(n, c, d) for n in r1], dtype=complex)
                    except MissingDataError:
                        skipped += 1
                        continue
                    checked += 1
                    f2inv = f2.conj().T
                    for invert in (False, True):
                        rb, ra, rn = (rbc.conj(), rac.conj(), rnc.conj()) if invert else (rbc, rac, rnc)
                        lhs = (f1 * rb) @ (f2inv * ra) @ f3
                        res = abs(lhs - np.diag(rn)).max()
                        worst[invert] = max(worst[invert], res)
    return worst[False], worst[True], checked, skipped


def check_consistency(cat):
    """Evaluate every checkable pentagon/hexagon instance plus the
    unitarity, R-modulus and quantum-dimension invariants."""
    dim_res = 0.0
    for a in cat.labels:
        for b in cat.labels:
            total = sum(cat.qdim[c] for c in cat.fuse(a, b))
            dim_res = max(dim_res, abs(cat.qdim[a] * cat.qdim[b] - total))

    unit_res = 0.0
    for mat in cat.f_table.values():
        eye = np.eye(mat.shape[0])
        unit_res = max(unit_res, abs(mat.conj().T @ mat - eye).max())

    r_res = max((abs(abs(v) - 1.0) for v in cat.r_table.values()), default=0.0)

    p_max, p_checked, p_skipped = _pentagon(cat)
    h_r, h_rinv, h_checked, h_skipped = _hexagon(cat)
    if h_r <= h_rinv:
        h_max, orientation = h_r, "R"
    else:
        h_max, orientation = h_rinv, "R-inverse"
    return ConsistencyReport(
        category=cat.name,
        dim_residual=dim_res,
        unitarity_max=unit_res,
        r_modulus_max=r_res,
        pentagon_max=p_max,
        pentagon_checked=p_checked,
        pentagon_skipped=p_skipped,
        hexagon_max=h_max,
        hexagon_checked=h_checked,
        hexagon_skipped=h_skipped,
        hexagon_orientation=orientation,
    )


# ---------------------------------------------------------------------------
# file format


def serialize_category(cat):
    """Render a category as the line-oriented text format.

    Grammar: ``label <name> qdim <decimal>``, ``fuse <a> <b> -> <c>[,...]``,
    ``F <a> <b> <c> <d> : <n> <m> = <re> <im>``, ``R <a> <b> <c> = <re> <im>``
    and ``#`` comments.  Stored entries only; unit-trivial blocks are
    implied by convention.
    """
    out = [f"# category: {cat.name}"]
    for lab in cat.labels:
        out.append(f"label {lab} qdim {cat.qdim[lab]:.17g}")
    for a in cat.labels:
        for b in cat.labels:
            cs = ",".join(cat._sorted(cat.fuse(a, b)))
            out.append(f"fuse {a} {b} -> {cs}")
    for key in sorted(cat.f_table, key=lambda t: tuple(map(cat.labels.index, t))):
        rows, cols = cat.f_rows(*key), cat.f_cols(*key)
        mat = cat.f_table[key]
        for i, n in enumerate(rows):
            for j, m in enumerate(cols):
                z = mat[i, j]
                out.append(f"F {key[0]} {key[1]} {key[2]} {key[3]} : {n} {m} = "
                           f"{z.real:.17g} {z.imag:.17g}")
    for key in sorted(cat.r_table, key=lambda t: tuple(map(cat.labels.index, t))):
        z = cat.r_table[key]
        out.append(f"R {key[0]} {key[1]} {key[2]} = {z.real:.17g} {z.imag:.17g}")
    return "\n".join(out) + "\n"


def parse_category(text, name="parsed"):
    """Parse the category file format; inverse of :func:`serialize_category`.

    Raises :class:`CategoryFileError` (with the line number) on malformed
    lines, unknown labels, or inadmissible fusion references.
    """
    labels, qdim, rules = [], {}, {}
    f_entries, r_entries = {}, {}
    partial = None

    def fail(lineno, msg):
        raise CategoryFileError(lineno, msg)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "label":
            if len(parts) != 4 or parts[2] != "qdim":
                fail(lineno, f"bad label line: {raw!r}")
            try:
                value = float(parts[3])
            except ValueError:
                fail(lineno, f"bad qdim value: {parts[3]!r}")
            labels.append(parts[1])
            qdim[parts[1]] = value
        elif kind == "fuse":
            if len(parts) != 5 or parts[3] != "->":
                fail(lineno, f"bad fuse line: {raw!r}")
            a, b, cs = parts[1], parts[2], parts[4].split(",")
            for lab in (a, b, *cs):
                if lab not in qdim:
                    fail(lineno, f"unknown label {lab!r}")
            rules[(a, b)] = frozenset(cs)
        elif kind == "F":
            if len(parts) != 11 or parts[5] != ":" or parts[8] != "=":
                fail(lineno, f"bad F line: {raw!r}")
            key, n, m = tuple(parts[1:5]), parts[6], parts[7]
            for lab in (*key, n, m):
                if lab not in qdim:
                    fail(lineno, f"unknown label {lab!r}")
            if partial is None:
                partial = _partial_category(name, labels, qdim, rules)
            if not partial.is_admissible_f(*key):
                fail(lineno, f"inadmissible F{key}")
            if n not in partial.f_rows(*key) or m not in partial.f_cols(*key):
                fail(lineno, f"index ({n},{m}) not admissible for F{key}")
            try:
                value = complex(float(parts[9]), float(parts[10]))
            except ValueError:
                fail(lineno, f"bad F value on {raw!r}")
            f_entries.setdefault(key, {})[(n, m)] = value
        elif kind == "R":
            if len(parts) != 7 or parts[4] != "=":
                fail(lineno, f"bad R line: {raw!r}")
            a, b, c = parts[1], parts[2], parts[3]
            for lab in (a, b, c):
                if lab not in qdim:
                    fail(lineno, f"unknown label {lab!r}")
            if partial is None:
                partial = _partial_category(name, labels, qdim, rules)
            if c not in partial.fuse(a, b):
                fail(lineno, f"inadmissible R[{a},{b};{c}]")
            try:
                r_entries[(a, b, c)] = complex(float(parts[5]), float(parts[6]))
            except ValueError:
                fail(lineno, f"bad R value on {raw!r}")
        else:
            fail(lineno, f"unrecognized line: {raw!r}")

    if partial is None:
        partial = _partial_category(name, labels, qdim, rules)
    f_table = {}
    for key, entries in f_entries.items():
        rows, cols = partial.f_rows(*key), partial.f_cols(*key)
        mat = np.zeros((len(rows), len(cols)), dtype=complex)
        for i, n in enumerate(rows):
            for j, m in enumerate(cols):
                if (n, m) not in entries:
                    raise CategoryFileError(0, f"incomplete F-block F{key}: missing ({n},{m})")
                mat[i, j] = entries[(n, m)]
        f_table[key] = mat
    return Category(name, tuple(labels), qdim, partial.fusion, f_table, r_entries)


def _partial_category(name, labels, qdim, rules):
    try:
        fusion = _symmetrized_fusion(tuple(labels), rules)
    except ValueError as exc:
        raise CategoryFileError(0, str(exc)) from None
    return Category(name, tuple(labels), dict(qdim), fusion, {}, {})


def categories_equal(cat1, cat2, tol=1e-12):
    """Entrywise equality of two categories' data within ``tol``."""
    if cat1.labels != cat2.labels:
        return False
    if any(abs(cat1.qdim[l] - cat2.qdim[l]) > tol for l in cat1.labels):
        return False
    if cat1.fusion != cat2.fusion:
        return False
    if set(cat1.f_table) != set(cat2.f_table) or set(cat1.r_table) != set(cat2.r_table):
        return False
    for key, mat in cat1.f_table.items():
        if mat.shape != cat2.f_table[key].shape or abs(mat - cat2.f_table[key]).max() > tol:
            return False
    return all(abs(v - cat2.r_table[k]) <= tol for k, v in cat1.r_table.items())
