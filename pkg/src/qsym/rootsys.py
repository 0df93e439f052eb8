"""Finite root systems in Bourbaki numbering with exact inner products.

Vectors live in simple-root coordinates. Roots have integer coordinates,
weights Fraction coordinates. The invariant form is normalized so long roots
have squared length 2; the Cartan matrix convention is
A[i][j] = 2(alpha_i, alpha_j)/(alpha_j, alpha_j).
"""

from __future__ import annotations

from fractions import Fraction as Q


class InvalidType(ValueError):
    """Unknown series letter or rank out of range for the series."""


class NotSimple(ValueError):
    """Operation requires a simple root system, got a product."""


class NotDominant(ValueError):
    """Highest weight must have nonnegative fundamental coordinates."""


_SERIES = ("A", "B", "C", "D", "E", "F", "G")


def _norms_and_bonds(letter, n):
    """Squared lengths (alpha_i, alpha_i) and off-diagonal products (i<j)."""
    norms = [Q(2)] * n
    bonds = {}
    if letter == "A":
        for i in range(n - 1):
            bonds[(i, i + 1)] = Q(-1)
    elif letter == "B":
        norms[n - 1] = Q(1)
        for i in range(n - 1):
            bonds[(i, i + 1)] = Q(-1)
    elif letter == "C":
        for i in range(n - 1):
            norms[i] = Q(1)
        for i in range(n - 2):
            bonds[(i, i + 1)] = Q(-1, 2)
        bonds[(n - 2, n - 1)] = Q(-1)
    elif letter == "D":
        for i in range(n - 3):
            bonds[(i, i + 1)] = Q(-1)
        bonds[(n - 3, n - 2)] = Q(-1)
        bonds[(n - 3, n - 1)] = Q(-1)
    elif letter == "E":
        # Bourbaki: chain 1-3-4-5-6(-7-8), node 2 hangs off node 4
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            bonds[(a, b)] = Q(-1)
        bonds[(1, 3)] = Q(-1)
    elif letter == "F":
        norms[2] = norms[3] = Q(1)
        bonds[(0, 1)] = Q(-1)
        bonds[(1, 2)] = Q(-1)
        bonds[(2, 3)] = Q(-1, 2)
    elif letter == "G":
        norms[0] = Q(2, 3)
        bonds[(0, 1)] = Q(-1)
    return norms, bonds


def _rank_ok(letter, n):
    return (
        (letter == "A" and n >= 1)
        or (letter in ("B", "C") and n >= 2)
        or (letter == "D" and n >= 3)
        or (letter == "E" and n in (6, 7, 8))
        or (letter == "F" and n == 4)
        or (letter == "G" and n == 2)
    )


def _inv(mat):
    """Exact inverse of a small Fraction matrix by Gauss-Jordan."""
    n = len(mat)
    a = [[Q(x) for x in row] + [Q(1) if i == j else Q(0) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        lead = a[col][col]
        a[col] = [x / lead for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class RootSystem:
    """A (possibly reducible) finite root system with precomputed data."""

    def __init__(self, components):
        for letter, n in components:
            if letter not in _SERIES or not _rank_ok(letter, n):
                raise InvalidType("no simple type %s%d" % (letter, n))
        self.components = tuple(components)
        self.label = "x".join("%s%d" % c for c in components)
        self.rank = sum(n for _, n in components)
        # block-diagonal symmetric form (alpha_i, alpha_j)
        self.bform = [[Q(0)] * self.rank for _ in range(self.rank)]
        off = 0
        self._offsets = []
        for letter, n in components:
            self._offsets.append(off)
            norms, bonds = _norms_and_bonds(letter, n)
            for i in range(n):
                self.bform[off + i][off + i] = norms[i]
            for (i, j), v in bonds.items():
                self.bform[off + i][off + j] = v
                self.bform[off + j][off + i] = v
            off += n
        self.norms = [self.bform[i][i] for i in range(self.rank)]
        self.cartan = [
            [int(2 * self.bform[i][j] / self.bform[j][j]) for j in range(self.rank)]
            for i in range(self.rank)
        ]
        # fundamental weights: row i of the inverse Cartan matrix
        inv = _inv([[Q(x) for x in row] for row in self.cartan])
        self.fundamental_weights = [tuple(inv[i]) for i in range(self.rank)]
        self.positive_roots = self._close_roots()
        self._root_set = set(self.positive_roots)
        self._root_set.update(tuple(-x for x in r) for r in self.positive_roots)

    # -- construction ------------------------------------------------------

    def _close_roots(self):
        seen = set()
        frontier = []
        for i in range(self.rank):
            e = tuple(1 if k == i else 0 for k in range(self.rank))
            seen.add(e)
            frontier.append(e)
        while frontier:
            nxt = []
            for r in frontier:
                for j in range(self.rank):
                    pair = sum(r[i] * self.cartan[i][j] for i in range(self.rank))
                    s = list(r)
                    s[j] -= pair
                    s = tuple(s)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        pos = [r for r in seen if all(x >= 0 for x in r) and any(r)]
        pos.sort(key=lambda r: (sum(r), r))
        return tuple(pos)

    # -- predicates and lookups ---------------------------------------------

    @property
    def is_simple(self):
        return len(self.components) == 1

    def is_root(self, coords):
        return tuple(coords) in self._root_set

    @property
    def highest_root(self):
        if not self.is_simple:
            raise NotSimple("highest root needs a simple system")
        return self.positive_roots[-1]

    # -- exact linear algebra on coordinates --------------------------------

    def inner(self, x, y):
        """Invariant form of two vectors in simple-root coordinates."""
        total = Q(0)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.bform[i]
            for j, yj in enumerate(y):
                if yj != 0:
                    total += Q(xi) * row[j] * yj
        return total

    def copair(self, x, j):
        """2(x, alpha_j)/(alpha_j, alpha_j) for x in root coordinates."""
        return sum(Q(x[i]) * self.cartan[i][j] for i in range(self.rank))

    def fund_to_root(self, m):
        if len(m) != self.rank:
            raise ValueError("weight has %d coordinates, rank is %d" % (len(m), self.rank))
        out = [Q(0)] * self.rank
        for i, mi in enumerate(m):
            if mi:
                w = self.fundamental_weights[i]
                for k in range(self.rank):
                    out[k] += mi * w[k]
        return tuple(out)

    def root_to_fund(self, x):
        return tuple(self.copair(x, j) for j in range(self.rank))

    def reflect(self, x, j):
        c = self.copair(x, j)
        out = list(x)
        out[j] = out[j] - c
        return tuple(out)

    def dominant_rep(self, x):
        """The dominant Weyl-chamber representative of x (root coordinates)."""
        x = tuple(Q(v) for v in x)
        while True:
            for j in range(self.rank):
                if self.copair(x, j) < 0:
                    x = self.reflect(x, j)
                    break
            else:
                return x

    def weyl_orbit(self, x):
        start = tuple(Q(v) for v in x)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for j in range(self.rank):
                    w = self.reflect(v, j)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen


def cominuscule_nodes(rs):
    """1-indexed nodes whose coefficient in the highest root is 1."""
    theta = rs.highest_root
    return [i + 1 for i, c in enumerate(theta) if c == 1]


def build_root_system(spec, rank=None):
    """Build from ('A', 2), 'A2', 'so5', or a product label like 'A2xA1'."""
    if rank is not None:
        return RootSystem([(spec, rank)])
    comps = []
    for part in spec.split("x"):
        part = part.strip()
        if len(part) >= 2 and part[0] in _SERIES and part[1:].isdigit():
            comps.append((part[0], int(part[1:])))
        else:
            comps.append(normalize_type(part))
    if not comps:
        raise InvalidType("empty type")
    return RootSystem(comps)


def normalize_type(name):
    """Resolve names like so10, sp4, sl3, e6 to (series letter, rank)."""
    s = name.strip().lower().replace("(", "").replace(")", "")
    if len(s) >= 2 and s[0] in "abcdefg" and s[1:].isdigit():
        letter, n = s[0].upper(), int(s[1:])
    elif s.startswith("sl") and s[2:].isdigit():
        letter, n = "A", int(s[2:]) - 1
    elif s.startswith("so") and s[2:].isdigit():
        m = int(s[2:])
        letter, n = ("B", (m - 1) // 2) if m % 2 else ("D", m // 2)
    elif s.startswith("sp") and s[2:].isdigit():
        m = int(s[2:])
        if m % 2:
            raise InvalidType("sp needs an even dimension, got %s" % name)
        letter, n = "C", m // 2
    else:
        raise InvalidType("cannot parse type %r" % name)
    if not _rank_ok(letter, n):
        raise InvalidType("no simple type %s%d (from %r)" % (letter, n, name))
    return letter, n


# ---------------------------------------------------------------------------
# independent dimension and multiplicity oracles
# ---------------------------------------------------------------------------

def _check_dominant(rs, lam):
    if len(lam) != rs.rank or any(c < 0 for c in lam):
        raise NotDominant("fundamental coordinates must be nonnegative, got %r" % (lam,))


def weyl_dim(rs, lam):
    """Weyl dimension formula for highest weight lam (fundamental coords)."""
    _check_dominant(rs, lam)
    lr = rs.fund_to_root(lam)
    rho = rs.fund_to_root((1,) * rs.rank)
    top = Q(1)
    bot = Q(1)
    for g in rs.positive_roots:
        lam_rho = tuple(a + b for a, b in zip(lr, rho))
        top *= rs.inner(lam_rho, g)
        bot *= rs.inner(rho, g)
    d = top / bot
    assert d.denominator == 1
    return int(d)


def weight_multiplicities(rs, lam):
    """Freudenthal multiplicities: {fundamental coords: multiplicity}."""
    _check_dominant(rs, lam)
    lr = rs.fund_to_root(lam)
    rho = rs.fund_to_root((1,) * rs.rank)

    def depth_to_weight(c):
        return tuple(a - b for a, b in zip(lr, c))

    dominant = {}  # dominant weight root-coords -> depth height
    all_depths = []
    # BFS over depth vectors; keep c when lam - c is a genuine weight
    zero = (0,) * rs.rank
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for c in frontier:
            mu = depth_to_weight(c)
            rep = rs.dominant_rep(mu)
            gap = tuple(a - b for a, b in zip(lr, rep))
            if any(x < 0 or Q(x).denominator != 1 for x in gap):
                continue
            all_depths.append(c)
            if mu == rep:
                dominant[mu] = sum(c)
            for i in range(rs.rank):
                c2 = tuple(v + (1 if k == i else 0) for k, v in enumerate(c))
                if c2 not in seen:
                    seen.add(c2)
                    nxt.append(c2)
        frontier = nxt

    lam_rho = tuple(a + b for a, b in zip(lr, rho))
    c_lam = rs.inner(lam_rho, lam_rho)
    mult = {}
    for mu in sorted(dominant, key=lambda m: dominant[m]):
        if dominant[mu] == 0:
            mult[mu] = 1
            continue
        acc = Q(0)
        for g in rs.positive_roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, g))
                rep = rs.dominant_rep(nu)
                if rep not in mult:
                    gap = tuple(a - b for a, b in zip(lr, rep))
                    if any(x < 0 for x in gap):
                        break  # beyond the weight polytope in this direction
                    raise AssertionError("Freudenthal order broken")
                acc += mult[rep] * rs.inner(nu, g)
                k += 1
        mu_rho = tuple(a + b for a, b in zip(mu, rho))
        denom = c_lam - rs.inner(mu_rho, mu_rho)
        m = 2 * acc / denom
        assert m.denominator == 1 and m > 0
        mult[mu] = int(m)

    out = {}
    for c in all_depths:
        mu = depth_to_weight(c)
        out[rs.root_to_fund(mu)] = mult[rs.dominant_rep(mu)]
    return out
