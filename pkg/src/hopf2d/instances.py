"""Constructors for the concrete 2D coalgebra and bialgebra instances.

Most examples follow a common recipe: one marked symbol is spread over the
lattice with an "earlier" letter filling the sites that precede it in a
linear order and a "later" letter on the sites that follow it.  The linear
order is a lattice reading order (primary axis plus two sweep directions)
selected by an angle; angle zero gives the bottom-row-first, left-to-right
order.  Group-like letters double literally.

The half-plane assignment (letter "b" on the disk section between the
angles [theta, theta+pi) around the marked site) is exposed separately as
:func:`half_plane_grid`.  For axis-aligned angles it coincides with the
reading-order construction at every size; for diagonal angles the two
agree on 2 x 2 lattices but differ beyond, and only the reading order
admits row/column growth maps (see the package docs).
"""

from __future__ import annotations

from dataclasses import dataclass
import cmath
import math

import numpy as np

from .coalgebra import (
    AntipodeRule,
    CoalgebraExample,
    ConfigurationError,
    CounitRule,
    MultiplicationRule,
    Splitter,
)
from .grids import Alphabet, FormalSum, GridShape, GridWord
from .linops import Representation

TWO_PI = 2.0 * math.pi
THETA_STEP = math.pi / 8.0


# ---------------------------------------------------------------------------
# angles, half planes and reading orders


def quantize_theta(theta: float) -> float:
    """Validate and snap an angle to the pi/8 grid in [0, 2*pi)."""
    k = theta / THETA_STEP
    if abs(k - round(k)) > 1e-9:
        raise ConfigurationError(f"theta must be a multiple of pi/8, got {theta}")
    return (int(round(k)) % 16) * THETA_STEP


def half_plane_after(theta: float, dx: int, dy: int) -> bool:
    """Is the offset (dx, dy) inside the half plane [theta, theta + pi)?

    Ties at angle exactly theta count as inside (so for theta = 0 the site
    to the right of the mark gets the later letter, as in the base layout).
    """
    ux, uy = math.cos(theta), math.sin(theta)
    cross = ux * dy - uy * dx
    if abs(cross) <= 1e-9:
        return ux * dx + uy * dy > 0
    return cross > 0


def reading_order_key(theta: float):
    """The insertion-stable lattice reading order induced by an angle.

    Determined by the half-plane relation on the four axis neighbors, with
    the primary axis chosen so the diagonal neighbors are consistent.
    Returns a key function (x, y) -> sortable tuple.
    """
    theta = quantize_theta(theta)
    after_r = half_plane_after(theta, 1, 0)
    after_u = half_plane_after(theta, 0, 1)
    after_d1 = half_plane_after(theta, 1, 1)
    after_d2 = half_plane_after(theta, -1, 1)
    sx = 1 if after_r else -1
    sy = 1 if after_u else -1
    if after_d1 == after_u and after_d2 == after_u:
        return lambda x, y: (sy * y, sx * x)
    if after_d1 == after_r and after_d2 != after_r:
        return lambda x, y: (sx * x, sy * y)
    raise ConfigurationError(f"no consistent reading order for theta={theta}")


def half_plane_grid(theta: float, shape: GridShape, vsite, alphabet: Alphabet | None = None) -> GridWord:
    """The disk-section assignment around a marked site.

    ``vsite`` is (row from bottom, column).  Sites whose direction from the
    mark lies in [theta, theta+pi) get "b", the rest "a".
    """
    theta = quantize_theta(theta)
    if alphabet is None:
        alphabet = Alphabet(["a", "b", "v"])
    i0, j0 = vsite
    cells = []
    for i in range(1, shape.rows + 1):
        for j in range(1, shape.cols + 1):
            if (i, j) == (i0, j0):
                cells.append(alphabet["v"])
            elif half_plane_after(theta, j - j0, i - i0):
                cells.append(alphabet["b"])
            else:
                cells.append(alphabet["a"])
    return GridWord(shape, tuple(cells))


# ---------------------------------------------------------------------------
# the marked-symbol splitter family


@dataclass
class MarkedFamily:
    """Splitter data for marked-symbol examples.

    ``markers`` maps each marked symbol to its (earlier, later) letter pair;
    ``cut_pairs`` lists letter pairs whose monotone mixed slices are valid;
    ``grouplike`` symbols double literally as constant slices.
    """

    markers: dict
    cut_pairs: list
    grouplike: set
    key: object

    def slice_positions(self, direction, n):
        if direction == "x":
            return [(1, y) for y in range(1, n + 1)]
        return [(x, 1) for x in range(1, n + 1)]

    def doubled_positions(self, direction, n):
        if direction == "x":
            return [(c, y) for y in range(1, n + 1) for c in (1, 2)]
        return [(x, c) for c in (1, 2) for x in range(1, n + 1)]

    def doubled_shape(self, direction, n):
        return GridShape(n, 2) if direction == "x" else GridShape(2, n)

    def _classify(self, word, direction):
        """Return ('marker', pos, sym) or ('free', None, None); raise KeyError if invalid."""
        pos = self.slice_positions(direction, len(word.cells))
        marked = [(p, c) for p, c in zip(pos, word.cells) if c in self.markers]
        if len(marked) > 1:
            return None
        if len(marked) == 1:
            (p0, v) = marked[0]
            a, b = self.markers[v]
            k0 = self.key(*p0)
            for p, c in zip(pos, word.cells):
                if p == p0:
                    continue
                want = a if self.key(*p) < k0 else b
                if c != want:
                    return None
            return ("marker", p0, v)
        letters = set(word.cells)
        if len(letters) == 1 and next(iter(letters)) in self.grouplike:
            return ("free", None, None)
        for a, b in self.cut_pairs:
            if letters <= {a, b}:
                ordered = sorted(zip(pos, word.cells), key=lambda pc: self.key(*pc[0]))
                seen_b = False
                ok = True
                for _, c in ordered:
                    if c == b:
                        seen_b = True
                    elif seen_b:
                        ok = False
                        break
                if ok:
                    return ("free", None, None)
        return None

    def domain(self, direction):
        return lambda w: self._classify(w, direction) is not None

    def splitter(self, direction) -> Splitter:
        def split(word):
            n = len(word.cells)
            kind = self._classify(word, direction)
            shape = self.doubled_shape(direction, n)
            dpos = self.doubled_positions(direction, n)
            pos = self.slice_positions(direction, n)
            if kind[0] == "free":
                lookup = dict(zip(pos, word.cells))
                src = (lambda p: (1, p[1])) if direction == "x" else (lambda p: (p[0], 1))
                cells = tuple(lookup[src(p)] for p in dpos)
                return FormalSum.unit(GridWord(shape, cells))
            _, p0, v = kind
            a, b = self.markers[v]
            terms = []
            for c in (1, 2):
                landing = (c, p0[1]) if direction == "x" else (p0[0], c)
                kl = self.key(*landing)
                cells = tuple(
                    v if p == landing else (a if self.key(*p) < kl else b)
                    for p in dpos
                )
                terms.append((GridWord(shape, cells), 1.0))
            return FormalSum(shape, terms)

        return Splitter(direction, split, self.domain(direction))

    def counit(self, direction) -> CounitRule:
        def eps(word):
            kind = self._classify(word, direction)
            return 0.0 if kind[0] == "marker" else 1.0

        return CounitRule(direction, eps, self.domain(direction))

    def samples(self, direction, n):
        """Canonical in-domain slice words: every marker position plus all cuts."""
        pos = self.slice_positions(direction, n)
        ordered = sorted(pos, key=lambda p: self.key(*p))
        out = []
        shape = GridShape(n, 1) if direction == "x" else GridShape(1, n)

        def build(assign):
            lookup = dict(assign)
            return GridWord(shape, tuple(lookup[p] for p in pos))

        for v, (a, b) in self.markers.items():
            for i in range(n):
                assign = [(p, a) for p in ordered[:i]] + [(ordered[i], v)] + [
                    (p, b) for p in ordered[i + 1:]
                ]
                out.append(build(assign))
        for a, b in self.cut_pairs:
            for t in range(n + 1):
                assign = [(p, a) for p in ordered[:t]] + [(p, b) for p in ordered[t:]]
                out.append(build(assign))
        cut_letters = {s for pair in self.cut_pairs for s in pair}
        for g in sorted(self.grouplike, key=lambda s: s.id):
            if g not in cut_letters:
                out.append(build([(p, g) for p in pos]))
        seen, unique = set(), []
        for w in out:
            if w.cells not in seen:
                seen.add(w.cells)
                unique.append(w)
        return unique


def _family_example(name, alphabet, family, **kw) -> CoalgebraExample:
    return CoalgebraExample(
        name=name,
        alphabet=alphabet,
        splitter_x=family.splitter("x"),
        splitter_y=family.splitter("y"),
        counit_x=family.counit("x"),
        counit_y=family.counit("y"),
        sample_columns=lambda n: family.samples("x", n),
        sample_rows=lambda m: family.samples("y", m),
        **kw,
    )


# ---------------------------------------------------------------------------
# cellwise splitters (group-like and primitive coproducts)


def _assemble(direction, firsts, seconds):
    n = len(firsts)
    if direction == "x":
        cells = []
        for y in range(n):
            cells.extend((firsts[y], seconds[y]))
        return GridWord(GridShape(n, 2), tuple(cells))
    return GridWord(GridShape(2, n), tuple(firsts) + tuple(seconds))


def _cellwise_splitter(direction, rules, domain=None) -> Splitter:
    """Split every cell independently by 1-site Sweedler rules."""

    def split(word):
        combos = [(1.0 + 0j, (), ())]
        for c in word.cells:
            combos = [
                (coef * rc, firsts + (s1,), seconds + (s2,))
                for coef, firsts, seconds in combos
                for rc, s1, s2 in rules[c]
            ]
        shape = GridShape(len(word.cells), 2) if direction == "x" else GridShape(2, len(word.cells))
        return FormalSum(
            shape, [(_assemble(direction, f, s), coef) for coef, f, s in combos]
        )

    if domain is None:
        domain = lambda w: all(c in rules for c in w.cells)
    return Splitter(direction, split, domain)


def _sitewise_rule(table):
    """Word rule applying ``symbol -> (coeff, symbol)`` on every site."""

    def anti(word):
        coef = 1.0 + 0j
        cells = []
        for c in word.cells:
            k, s = table[c]
            coef *= k
            cells.append(s)
        return FormalSum.unit(GridWord(word.shape, tuple(cells)), coef)

    return anti


def _sitewise_antipode(table) -> AntipodeRule:
    """Same sitewise antipode in both directions (cellwise splitters)."""
    rule = _sitewise_rule(table)
    return AntipodeRule(rule, rule)


def _product_counit(eps_table) -> object:
    def eps(word):
        val = 1.0 + 0j
        for c in word.cells:
            val *= eps_table[c]
        return val

    return eps


# ---------------------------------------------------------------------------
# group-like and Lie-like instances


def make_group_like(names, table=None, unit=None) -> CoalgebraExample:
    """Every basis symbol is group-like; both splitters copy slices verbatim.

    ``table`` is an optional multiplication table {(name, name): name}; with
    it the example carries a multiplication rule and the inverse antipode.
    """
    alphabet = Alphabet(names)
    rules = {s: [(1.0, s, s)] for s in alphabet}
    eps = _product_counit({s: 1.0 for s in alphabet})
    total = lambda w: True
    mult = None
    antipode = None
    unit_sym = alphabet[unit] if unit else None
    if table is not None:
        lookup = {(alphabet[u], alphabet[w]): alphabet[p] for (u, w), p in table.items()}

        def product(u, w):
            return FormalSum.unit(GridWord(GridShape(1, 1), (lookup[(u, w)],)))

        if unit_sym is None:
            raise ConfigurationError("a group table needs a designated unit")
        inverse = {}
        for (u, w), p in lookup.items():
            if p == unit_sym:
                inverse[u] = w
        if set(inverse) != set(alphabet.symbols):
            raise ConfigurationError("group table has no inverse for some symbol")
        mult = MultiplicationRule(unit_sym, product)
        antipode = _sitewise_antipode({s: (1.0, inverse[s]) for s in alphabet})

    def samples(n):
        shape_c = GridShape(n, 1)
        return [GridWord(shape_c, tuple(s for _ in range(n))) for s in alphabet]

    def samples_r(m):
        shape_r = GridShape(1, m)
        return [GridWord(shape_r, tuple(s for _ in range(m))) for s in alphabet]

    return CoalgebraExample(
        name="group_like",
        alphabet=alphabet,
        splitter_x=_cellwise_splitter("x", rules, total),
        splitter_y=_cellwise_splitter("y", rules, total),
        counit_x=CounitRule("x", eps, total),
        counit_y=CounitRule("y", eps, total),
        multiplication=mult,
        antipode=antipode,
        unit=unit_sym,
        grow_symbols=tuple(alphabet.symbols),
        sample_columns=samples,
        sample_rows=samples_r,
    )


def make_cyclic_group(k: int) -> CoalgebraExample:
    """Group-like example over the cyclic group of order k, with table."""
    names = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, k)]
    table = {}
    for i in range(k):
        for j in range(k):
            table[(names[i], names[j])] = names[(i + j) % k]
    return make_group_like(names, table=table, unit="1")


def cyclic_regular_rep(ex: CoalgebraExample) -> Representation:
    """Permutation-matrix regular representation of a cyclic group example."""
    k = len(ex.alphabet)
    mats = {}
    for i, s in enumerate(ex.alphabet):
        m = np.zeros((k, k), dtype=complex)
        for j in range(k):
            m[(i + j) % k, j] = 1.0
        mats[s] = m
    return Representation(ex.alphabet, mats)


def make_lie_like(primitive_names, unit="1") -> CoalgebraExample:
    """Cellwise primitive coproduct: the unit is group-like, the rest primitive."""
    alphabet = Alphabet([unit] + list(primitive_names))
    u = alphabet[unit]
    rules = {u: [(1.0, u, u)]}
    for s in alphabet:
        if s != u:
            rules[s] = [(1.0, u, s), (1.0, s, u)]
    eps = _product_counit({s: (1.0 if s == u else 0.0) for s in alphabet})
    total = lambda w: True
    anti = _sitewise_antipode({s: ((1.0, s) if s == u else (-1.0, s)) for s in alphabet})

    def samples(direction, n):
        shape = GridShape(n, 1) if direction == "x" else GridShape(1, n)
        out = [GridWord(shape, tuple(u for _ in range(n)))]
        for s in alphabet:
            if s == u:
                continue
            for p in range(n):
                cells = [u] * n
                cells[p] = s
                out.append(GridWord(shape, tuple(cells)))
        return out

    return CoalgebraExample(
        name="lie_like",
        alphabet=alphabet,
        splitter_x=_cellwise_splitter("x", rules, total),
        splitter_y=_cellwise_splitter("y", rules, total),
        counit_x=CounitRule("x", eps, total),
        counit_y=CounitRule("y", eps, total),
        antipode=anti,
        unit=u,
        grow_symbols=tuple(alphabet.symbols),
        sample_columns=lambda n: samples("x", n),
        sample_rows=lambda m: samples("y", m),
    )


# ---------------------------------------------------------------------------
# quasi-1D constructions: one direction total, the other on its image


def _inner_rules(alphabet, inner):
    """Normalize {name: [(coef, name, name)]} to symbol-keyed Sweedler rules."""
    rules = {}
    for name, pairs in inner.items():
        rules[alphabet[name]] = [(c, alphabet[s1], alphabet[s2]) for c, s1, s2 in pairs]
    return rules


def make_quasi1d_group(inner=None, inner_counit=None, names=None) -> CoalgebraExample:
    """Vertical splitter copies rows verbatim; the horizontal one acts on
    constant columns through an arbitrary inner 1D coproduct."""
    if names is None:
        names = ["a", "b", "v"]
        inner = {"v": [(1.0, "a", "v"), (1.0, "v", "b")],
                 "a": [(1.0, "a", "a")], "b": [(1.0, "b", "b")]}
        inner_counit = {"v": 0.0, "a": 1.0, "b": 1.0}
    alphabet = Alphabet(names)
    rules = _inner_rules(alphabet, inner)
    eps_in = {alphabet[k]: complex(v) for k, v in inner_counit.items()}

    copy_rules = {s: [(1.0, s, s)] for s in alphabet}
    total = lambda w: True

    def const_domain(word):
        return len(set(word.cells)) == 1 and word.cells[0] in rules

    def split_x(word):
        n = len(word.cells)
        sym = word.cells[0]
        shape = GridShape(n, 2)
        terms = []
        for c, s1, s2 in rules[sym]:
            terms.append((_assemble("x", (s1,) * n, (s2,) * n), c))
        return FormalSum(shape, terms)

    def eps_x(word):
        return eps_in[word.cells[0]]

    def samples_x(n):
        return [GridWord(GridShape(n, 1), (s,) * n) for s in alphabet if s in rules]

    def samples_y(m):
        out = []
        for s in alphabet:
            out.append(GridWord(GridShape(1, m), (s,) * m))
        return out

    return CoalgebraExample(
        name="quasi1d_group",
        alphabet=alphabet,
        splitter_x=Splitter("x", split_x, const_domain),
        splitter_y=_cellwise_splitter("y", copy_rules, total),
        counit_x=CounitRule("x", eps_x, const_domain),
        counit_y=CounitRule("y", lambda w: 1.0, total),
        grow_symbols=tuple(s for s in alphabet.symbols if s in rules),
        sample_columns=samples_x,
        sample_rows=samples_y,
    )


def make_quasi1d_lie(inner=None, inner_counit=None, names=None, unit="1") -> CoalgebraExample:
    """Vertical splitter embeds a row next to a unit row; horizontal one is
    the cellwise inner coproduct.  The inner coproduct must fix the unit."""
    if names is None:
        names = ["1", "a", "b", "v"]
        inner = {"v": [(1.0, "a", "v"), (1.0, "v", "b")],
                 "a": [(1.0, "a", "a")], "b": [(1.0, "b", "b")],
                 "1": [(1.0, "1", "1")]}
        inner_counit = {"v": 0.0, "a": 1.0, "b": 1.0, "1": 1.0}
    alphabet = Alphabet(names)
    u = alphabet[unit]
    rules = _inner_rules(alphabet, inner)
    if rules.get(u) != [(1.0, u, u)]:
        raise ConfigurationError("the inner coproduct must send the unit to unit x unit")
    eps_in = {alphabet[k]: complex(v) for k, v in inner_counit.items()}
    total = lambda w: True

    def split_y(word):
        m = len(word.cells)
        shape = GridShape(2, m)
        ones = (u,) * m
        if all(c == u for c in word.cells):
            return FormalSum.unit(GridWord(shape, ones + ones))
        w = tuple(word.cells)
        return FormalSum(shape, [(GridWord(shape, ones + w), 1.0),
                                 (GridWord(shape, w + ones), 1.0)])

    def eps_y(word):
        return 1.0 if all(c == u for c in word.cells) else 0.0

    def samples_y(m):
        out = [GridWord(GridShape(1, m), (u,) * m)]
        for s in alphabet:
            if s == u:
                continue
            for p in range(m):
                cells = [u] * m
                cells[p] = s
                out.append(GridWord(GridShape(1, m), tuple(cells)))
        return out

    def samples_x(n):
        out = []
        for s in alphabet:
            if s not in rules:
                continue
            for p in range(n):
                cells = [u] * n
                cells[p] = s
                out.append(GridWord(GridShape(n, 1), tuple(cells)))
        return out

    return CoalgebraExample(
        name="quasi1d_lie",
        alphabet=alphabet,
        splitter_x=_cellwise_splitter("x", rules),
        splitter_y=Splitter("y", split_y, total),
        counit_x=CounitRule("x", _product_counit(eps_in), lambda w: all(c in eps_in for c in w.cells)),
        counit_y=CounitRule("y", eps_y, total),
        unit=u,
        grow_symbols=tuple(alphabet.symbols),
        sample_columns=samples_x,
        sample_rows=samples_y,
    )


# ---------------------------------------------------------------------------
# the cross-shaped instance


def make_cross() -> CoalgebraExample:
    """Six-letter instance spreading a mark into a cross of t, b, l, r arms."""
    alphabet = Alphabet(["1", "t", "b", "r", "l", "v"])
    one, t_, b_, r_, l_, v_ = (alphabet[n] for n in ["1", "t", "b", "r", "l", "v"])
    free = {one, t_, b_, r_, l_}

    def classify_col(word):
        cells = word.cells
        marked = [y for y, c in enumerate(cells) if c == v_]
        if len(marked) == 1:
            y0 = marked[0]
            ok = all(c == b_ for c in cells[:y0]) and all(c == t_ for c in cells[y0 + 1:])
            return ("v", y0) if ok else None
        if not marked and set(cells) <= free:
            return ("free", None)
        return None

    def classify_row(word):
        cells = word.cells
        marked = [x for x, c in enumerate(cells) if c == v_]
        if len(marked) == 1:
            x0 = marked[0]
            ok = all(c == l_ for c in cells[:x0]) and all(c == r_ for c in cells[x0 + 1:])
            return ("v", x0) if ok else None
        if not marked and set(cells) <= free:
            return ("free", None)
        return None

    def arm_col(n, y0, letter):
        cells = [one] * n
        cells[y0] = letter
        return tuple(cells)

    def split_x(word):
        n = len(word.cells)
        shape = GridShape(n, 2)
        kind = classify_col(word)
        if kind[0] == "free":
            cells = tuple(c for cell in word.cells for c in (cell, cell))
            return FormalSum.unit(GridWord(shape, cells))
        y0 = kind[1]
        w = word.cells
        left_arm = arm_col(n, y0, l_)
        right_arm = arm_col(n, y0, r_)
        t1 = tuple(c for pair in zip(w, right_arm) for c in pair)
        t2 = tuple(c for pair in zip(left_arm, w) for c in pair)
        return FormalSum(shape, [(GridWord(shape, t1), 1.0), (GridWord(shape, t2), 1.0)])

    def split_y(word):
        m = len(word.cells)
        shape = GridShape(2, m)
        kind = classify_row(word)
        if kind[0] == "free":
            return FormalSum.unit(GridWord(shape, word.cells + word.cells))
        x0 = kind[1]
        w = word.cells
        top_arm = arm_col(m, x0, t_)
        bottom_arm = arm_col(m, x0, b_)
        return FormalSum(shape, [(GridWord(shape, w + top_arm), 1.0),
                                 (GridWord(shape, bottom_arm + w), 1.0)])

    def eps_col(word):
        return 0.0 if classify_col(word)[0] == "v" else 1.0

    def eps_row(word):
        return 0.0 if classify_row(word)[0] == "v" else 1.0

    def samples_x(n):
        shape = GridShape(n, 1)
        out = []
        for y0 in range(n):
            cells = [b_] * y0 + [v_] + [t_] * (n - y0 - 1)
            out.append(GridWord(shape, tuple(cells)))
            out.append(GridWord(shape, arm_col(n, y0, r_)))
            out.append(GridWord(shape, arm_col(n, y0, l_)))
        for s in (one, t_, b_):
            out.append(GridWord(shape, (s,) * n))
        return out

    def samples_y(m):
        shape = GridShape(1, m)
        out = []
        for x0 in range(m):
            cells = [l_] * x0 + [v_] + [r_] * (m - x0 - 1)
            out.append(GridWord(shape, tuple(cells)))
            out.append(GridWord(shape, arm_col(m, x0, t_)))
            out.append(GridWord(shape, arm_col(m, x0, b_)))
        for s in (one, r_, l_):
            out.append(GridWord(shape, (s,) * m))
        return out

    return CoalgebraExample(
        name="cross",
        alphabet=alphabet,
        splitter_x=Splitter("x", split_x, lambda w: classify_col(w) is not None),
        splitter_y=Splitter("y", split_y, lambda w: classify_row(w) is not None),
        counit_x=CounitRule("x", eps_col, lambda w: classify_col(w) is not None),
        counit_y=CounitRule("y", eps_row, lambda w: classify_row(w) is not None),
        grow_symbols=tuple(alphabet.symbols),
        sample_columns=samples_x,
        sample_rows=samples_y,
    )


# ---------------------------------------------------------------------------
# the marked-symbol ("pivot") instance and its angle generalization


@dataclass
class PivotConfig:
    symbols: tuple = ("a", "b", "v")
    theta: float = 0.0


def make_pivot(cfg: PivotConfig | None = None, theta: float | None = None) -> CoalgebraExample:
    """Marked-symbol instance: "a" before the mark, "b" after, in the
    reading order induced by the angle (theta = 0: bottom rows first,
    left to right)."""
    if cfg is None:
        cfg = PivotConfig(theta=theta or 0.0)
    theta_q = quantize_theta(cfg.theta)
    alphabet = Alphabet(list(cfg.symbols))
    a, b, v = (alphabet[n] for n in cfg.symbols)
    family = MarkedFamily(
        markers={v: (a, b)},
        cut_pairs=[(a, b)],
        grouplike={a, b},
        key=reading_order_key(theta_q),
    )
    ex = _family_example(f"pivot(theta={theta_q:g})", alphabet, family,
                         grow_symbols=(a, b, v))
    ex.meta = {"theta": theta_q, "family": family}
    return ex


# ---------------------------------------------------------------------------
# Taft bialgebra instance


@dataclass
class TaftConfig:
    n: int = 2
    omega: complex = -1.0

    def __post_init__(self):
        if self.n < 2:
            raise ConfigurationError("order must be at least 2")
        w = complex(self.omega)
        if abs(w ** self.n - 1) > 1e-12:
            raise ConfigurationError("omega must be an n-th root of unity")
        for k in range(1, self.n):
            if abs(w ** k - 1) < 1e-12:
                raise ConfigurationError("omega must be a primitive n-th root")


def taft_basis_name(i: int, j: int) -> str:
    if i == 0 and j == 0:
        return "1"
    gpart = "" if i == 0 else ("g" if i == 1 else f"g{i}")
    xpart = "" if j == 0 else ("x" if j == 1 else f"x{j}")
    return gpart + xpart


def make_taft(cfg: TaftConfig) -> CoalgebraExample:
    """Marked-symbol instance over the n^2-dimensional basis g^i x^j, with
    normal-form multiplication (x g = omega g x, g^n = 1, x^n = 0) and the
    antipode forced by the Hopf axioms."""
    n, omega = cfg.n, complex(cfg.omega)
    names = [taft_basis_name(i, j) for j in range(n) for i in range(n)]
    alphabet = Alphabet(names)
    idx = {(i, j): alphabet[taft_basis_name(i, j)] for j in range(n) for i in range(n)}
    exponents = {sym: ij for ij, sym in idx.items()}
    one, g, x = idx[(0, 0)], idx[(1, 0)], idx[(0, 1)]

    def product(u, w):
        (i1, j1), (i2, j2) = exponents[u], exponents[w]
        if j1 + j2 >= n:
            return FormalSum.zero(GridShape(1, 1))
        coef = omega ** (j1 * i2)
        sym = idx[((i1 + i2) % n, j1 + j2)]
        return FormalSum.unit(GridWord(GridShape(1, 1), (sym,)), coef)

    mult = MultiplicationRule(one, product)

    # S(g^i x^j) = S(x)^j S(g)^i with S(g) = g^(n-1), S(x) = -x g^(n-1)
    anti_table = {}
    for (i, j), sym in idx.items():
        coef, cur = 1.0 + 0j, idx[(0, 0)]
        for _ in range(j):
            coef *= -1.0
            for term, c in product(cur, x).items():
                cur, coef = term.cells[0], coef * c
            for term, c in product(cur, idx[((n - 1) % n, 0)]).items():
                cur, coef = term.cells[0], coef * c
        for _ in range(i):
            for term, c in product(cur, idx[(n - 1, 0)]).items():
                cur, coef = term.cells[0], coef * c
        anti_table[sym] = (coef, cur)

    family = MarkedFamily(
        markers={x: (one, g)},
        cut_pairs=[(one, g)],
        grouplike={one, g},
        key=reading_order_key(0.0),
    )
    sitewise = _sitewise_rule(anti_table)
    ginv = idx[(n - 1, 0)]

    def anti_y(word):
        # marked rows embed the whole slice: S(row) = -(S(1).u.S(g) per site)
        if not any(c == x for c in word.cells):
            return sitewise(word)
        coef, cells = -1.0 + 0j, []
        for u in word.cells:
            for term, c in product(u, ginv).items():
                cells.append(term.cells[0])
                coef *= c
        return FormalSum.unit(GridWord(word.shape, tuple(cells)), coef)

    def tensor_mul(acc, factor):
        out = {}
        for (u1, u2), c in acc.items():
            for (w1, w2), d in factor.items():
                for t1, c1 in product(u1, w1).items():
                    for t2, c2 in product(u2, w2).items():
                        k = (t1.cells[0], t2.cells[0])
                        out[k] = out.get(k, 0j) + c * d * c1 * c2
        return {k: v for k, v in out.items() if abs(v) > 1e-14}

    # full 1-site coproduct on the basis: delta(g^i x^j) = (g x g)^i (1 x x + x x g)^j
    delta_g = {(g, g): 1.0 + 0j}
    delta_x = {(one, x): 1.0 + 0j, (x, g): 1.0 + 0j}
    delta_1site = {}
    for (i, j), sym in idx.items():
        acc = {(one, one): 1.0 + 0j}
        for _ in range(i):
            acc = tensor_mul(acc, delta_g)
        for _ in range(j):
            acc = tensor_mul(acc, delta_x)
        delta_1site[sym] = [(c, s1, s2) for (s1, s2), c in acc.items()]

    ex = _family_example(f"taft(n={n})", alphabet, family,
                         multiplication=mult,
                         antipode=AntipodeRule(sitewise, anti_y),
                         unit=one,
                         grow_symbols=(one, g, x))
    ex.meta = {"taft": cfg, "family": family, "delta_1site": delta_1site}
    return ex


def taft_regular_rep(ex: CoalgebraExample) -> Representation:
    """Left regular representation on the n^2-dimensional basis."""
    cfg = ex.meta["taft"]
    n = cfg.n
    basis = list(ex.alphabet.symbols)
    pos = {s: k for k, s in enumerate(basis)}
    mats = {}
    for h in basis:
        m = np.zeros((len(basis), len(basis)), dtype=complex)
        for e in basis:
            out = ex.multiplication(h, e)
            for word, c in out.items():
                m[pos[word.cells[0]], pos[e]] = c
        mats[h] = m
    return Representation(ex.alphabet, mats)


# ---------------------------------------------------------------------------
# the symbolic quantum-group instance


def make_uq_symbolic(q: complex) -> CoalgebraExample:
    """Deformed su(2) generators on the lattice, as a marked-symbol instance.

    Raising/lowering marks spread with K- before and K+ after; the Cartan
    mark spreads with identities; K letters and their squares are
    group-like.  The deformation parameter enters the antipode scaling and
    downstream numeric checks only.
    """
    q = complex(q)
    if q == 0:
        raise ConfigurationError("q must be nonzero")
    names = ["1", "S+", "S-", "Sz", "K+", "K-", "K+2", "K-2"]
    alphabet = Alphabet(names)
    one, sp, sm, sz, kp, km, kp2, km2 = (alphabet[n] for n in names)
    family = MarkedFamily(
        markers={sp: (km, kp), sm: (km, kp), sz: (one, one)},
        cut_pairs=[(km, kp), (km2, kp2)],
        grouplike={one, kp, km, kp2, km2},
        key=reading_order_key(0.0),
    )
    sitewise = _sitewise_rule({
        one: (1.0, one),
        sp: (-q, sp),
        sm: (-1.0 / q, sm),
        sz: (-1.0, sz),
        kp: (1.0, km),
        km: (1.0, kp),
        kp2: (1.0, km2),
        km2: (1.0, kp2),
    })
    scale = {sp: -q, sm: -1.0 / q, sz: -1.0 + 0j}

    def anti_y(word):
        # marked rows keep their K letters and only pick up the mark's scale
        marks = [c for c in word.cells if c in scale]
        if not marks:
            return sitewise(word)
        return FormalSum.unit(word, scale[marks[0]])

    ex = _family_example(f"uq(q={q:g})", alphabet, family,
                         antipode=AntipodeRule(sitewise, anti_y), unit=one,
                         grow_symbols=tuple(alphabet.symbols))
    ex.meta = {"q": q, "family": family}
    return ex


# ---------------------------------------------------------------------------
# config-driven selection


def example_from_config(cfg: dict) -> CoalgebraExample:
    """Build an example from a JSON-style config dict.

    Recognized forms include {"example": "pivot", "theta_over_pi": 0.25},
    {"example": "taft", "n": 2}, {"example": "uq", "q_re": 1.3, "q_im": 0.0},
    plus "group", "lie", "quasi1d-group", "quasi1d-lie" and "cross".
    """
    kind = cfg.get("example")
    if kind == "pivot":
        theta = float(cfg.get("theta_over_pi", 0.0)) * math.pi
        return make_pivot(theta=theta)
    if kind == "taft":
        n = int(cfg.get("n", 2))
        omega = cfg.get("omega")
        if omega is None:
            omega = cmath.exp(2j * math.pi / n)
            if n == 2:
                omega = -1.0 + 0j
        return make_taft(TaftConfig(n=n, omega=omega))
    if kind == "uq":
        q = complex(float(cfg.get("q_re", 2.0)), float(cfg.get("q_im", 0.0)))
        return make_uq_symbolic(q)
    if kind == "group":
        return make_cyclic_group(int(cfg.get("order", 3)))
    if kind == "lie":
        return make_lie_like(cfg.get("primitives", ["a", "c"]))
    if kind in ("quasi1d-group", "quasi1d_group"):
        return make_quasi1d_group()
    if kind in ("quasi1d-lie", "quasi1d_lie"):
        return make_quasi1d_lie()
    if kind == "cross":
        return make_cross()
    raise ConfigurationError(f"unknown example selector {kind!r}")
