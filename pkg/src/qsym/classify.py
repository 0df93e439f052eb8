"""Classification sweep: which pairs (g, V) admit a semidirect bialgebra.

Each row of the sweep records, for a simple type and a dominant weight, the
necessary weight filter, the Schouten-square criterion and its independent
Jacobi oracle, whether g acts on V as the Levi factor on the abelian
nilradical of some cominuscule parabolic one rank up, whether that parabolic
construction actually produces a bialgebra with all axioms checked, and
membership in the hard-coded list of pairs the sweep is expected to find.

Rows are emitted under canonical series labels: the rank-2 B/C coincidence
is reported as C2 (with the B2 spelling attached as an alias) and D3 input
is folded into A3, so coincident spellings like so5/sp4 land on one row.
"""

from collections import Counter
from fractions import Fraction as Q
from itertools import permutations

from .bialg import (
    bd_r_matrix,
    enumerate_bd_triples,
    parabolic_semidirect,
    standard_r,
)
from .liealg import (
    abelian_radical_module,
    chevalley_basis,
    highest_weight_module,
    weyl_dimension_and_weights,
)
from .poisson import (
    generator_brackets,
    jacobi_oracle,
    r_minus_operator,
    schouten_promoted,
)
from .rootsys import (
    NotDominant,
    build_root_system,
    cominuscule_nodes,
    normalize_type,
    weight_multiplicities,
    weyl_dim,
)

DEFAULT_DIM_BUDGET = 128


class BudgetExceeded(ValueError):
    """The requested module is larger than the configured dimension budget."""


_RS_CACHE = {}
_ALG_CACHE = {}


def _root_system(letter, rank):
    key = "%s%d" % (letter, rank)
    rs = _RS_CACHE.get(key)
    if rs is None:
        rs = build_root_system(letter, rank)
        _RS_CACHE[key] = rs
    return rs


def _algebra(rs):
    alg = _ALG_CACHE.get(rs.label)
    if alg is None:
        alg = chevalley_basis(rs)
        _ALG_CACHE[rs.label] = alg
    return alg


# ---------------------------------------------------------------------------
# the necessary weight filter
# ---------------------------------------------------------------------------

def _is_positive_root(rs, v):
    iv = []
    for x in v:
        q = Q(x)
        if q < 0 or q.denominator != 1:
            return False
        iv.append(int(q))
    return rs.is_root(tuple(iv))


def weight_filter(rs, lam):
    """Root-gap test: lowered weights must stay within one root of lam.

    For every weight mu of V(lam) and every simple i with (lam, alpha_i) > 0
    and (mu, alpha_i) < 0, either lam - mu is in R+ u {0} or lam - mu -
    alpha_i is in R+.  Necessary for the semidirect structure to exist, and
    strictly weaker than the Schouten criterion.
    """
    lam = tuple(int(c) for c in lam)
    if len(lam) != rs.rank or any(c < 0 for c in lam) or not any(lam):
        raise NotDominant("need a nonzero dominant weight, got %r" % (lam,))
    lamr = rs.fund_to_root(lam)
    for mu in weight_multiplicities(rs, lam):
        mur = rs.fund_to_root(mu)
        diff = tuple(a - b for a, b in zip(lamr, mur))
        if not any(diff):
            continue
        in_rplus = _is_positive_root(rs, diff)
        for i in range(rs.rank):
            if lam[i] > 0 and mu[i] < 0 and not in_rplus:
                shifted = list(diff)
                shifted[i] -= 1
                if not _is_positive_root(rs, tuple(shifted)):
                    return False
    return True


# ---------------------------------------------------------------------------
# the hard-coded verdict list and spelling bookkeeping
# ---------------------------------------------------------------------------

def in_classification_list(letter, rank, lam):
    """Membership of (letter rank, lam) in the expected passing list.

    Canonical coordinates: the rank-2 symplectic row is (C2, omega2) and the
    A series covers its own dual/coincident spellings.
    """
    lam = tuple(int(c) for c in lam)

    def e(i, m=1):
        return tuple(m if j == i else 0 for j in range(rank))

    if letter == "A":
        allowed = {e(0), e(0, 2), e(rank - 1), e(rank - 1, 2)}
        if rank >= 2:
            allowed.add(e(1))
            allowed.add(e(rank - 2))
        return lam in allowed
    if letter == "B":
        return lam == e(0)
    if letter == "C":
        return rank == 2 and lam == e(1)
    if letter == "D":
        if lam == e(0):
            return True
        if rank == 4:
            return lam in (e(2), e(3))
        if rank == 5:
            return lam in (e(3), e(4))
        return False
    if letter == "E":
        return rank == 6 and lam in (e(0), e(5))
    return False


def _weight_spellings(letter, rank, lam):
    """All (series, rank, weight) spellings of one abstract pair.

    Closes lam under the diagram automorphisms of its type (A reversal, the
    D spin swap, the full triality orbit for D4, the order-2 flip for E6)
    and bridges the rank-2 B/C coincidence by swapping coordinates.
    """
    lam = tuple(lam)
    variants = {lam}
    if letter == "A":
        variants.add(lam[::-1])
    elif letter == "D":
        if rank == 4:
            a, b, c, d = lam
            variants.update((p, b, q, s) for p, q, s in permutations((a, c, d)))
        else:
            variants.add(lam[:-2] + (lam[-1], lam[-2]))
    elif letter == "E" and rank == 6:
        a1, a2, a3, a4, a5, a6 = lam
        variants.add((a6, a2, a5, a4, a3, a1))
    out = {(letter, rank, v) for v in variants}
    if (letter, rank) == ("C", 2):
        out.update(("B", 2, v[::-1]) for v in variants)
    elif (letter, rank) == ("B", 2):
        out.update(("C", 2, v[::-1]) for v in variants)
    return out


def _canonical_pair(g_type, lam):
    """Resolve aliases and coincidences to (letter, rank, lam, aliases)."""
    if isinstance(g_type, str):
        letter, rank = normalize_type(g_type)
    else:
        letter, rank = g_type
        letter, rank = letter.upper(), int(rank)
    lam = tuple(int(c) for c in lam)
    if len(lam) != rank:
        raise NotDominant("weight has %d coordinates, rank is %d"
                          % (len(lam), rank))
    if (letter, rank) == ("B", 2):
        letter, lam = "C", lam[::-1]
    elif (letter, rank) == ("D", 3):
        letter, lam = "A", (lam[1], lam[0], lam[2])
    aliases = []
    if (letter, rank) == ("C", 2):
        aliases.append(("B2", lam[::-1]))
    return letter, rank, lam, aliases


# ---------------------------------------------------------------------------
# geometric decomposability: ambient cominuscule parabolics
# ---------------------------------------------------------------------------

def _ambient_types(rank, extended):
    out = [("A", rank)]
    if rank >= 3:
        out.append(("B", rank))
    if rank >= 2:
        out.append(("C", rank))
    if rank >= 4:
        out.append(("D", rank))
    if rank in ((6, 7, 8) if extended else (6, 8)):
        out.append(("E", rank))
    if rank == 4:
        out.append(("F", 4))
    if rank == 2:
        out.append(("G", 2))
    return out


def geometric_ambients(letter, rank, lam, extended=False):
    """Ambient (label, node) pairs whose cominuscule radical realizes (g, V).

    The Levi of a maximal parabolic has semisimple corank one, so only
    simple types of rank + 1 can put a simple g on an abelian nilradical.
    The E7 ambient is searched only when `extended` is set.
    """
    wanted = _weight_spellings(letter, rank, tuple(lam))
    found = []
    for lt, rk in _ambient_types(rank + 1, extended):
        rs2 = _root_system(lt, rk)
        for node in cominuscule_nodes(rs2):
            levi, lam_levi, abelian = abelian_radical_module(rs2, node)
            if not abelian or len(levi) != 1:
                continue
            l2, r2 = levi[0]
            if (l2, r2, tuple(int(x) for x in lam_levi)) in wanted:
                found.append((rs2.label, node))
    return found


# ---------------------------------------------------------------------------
# rows and the sweep
# ---------------------------------------------------------------------------

class ClassificationRow:
    """Verdicts for one (simple type, dominant weight) pair."""

    def __init__(self, g_type, lam, dim_V, weight_filter, schouten, jacobi,
                 geometrically_decomposable, semidirect_constructed,
                 in_paper_list, aliases=(), ambients=(), bd_verdicts=None,
                 oracle_ok=True):
        self.g_type = g_type
        self.lam = tuple(lam)
        self.dim_V = dim_V
        self.weight_filter = weight_filter
        self.schouten = schouten
        self.jacobi = jacobi
        self.geometrically_decomposable = geometrically_decomposable
        self.semidirect_constructed = semidirect_constructed
        self.in_paper_list = in_paper_list
        self.aliases = list(aliases)
        self.ambients = list(ambients)
        self.bd_verdicts = bd_verdicts
        self.oracle_ok = oracle_ok

    @property
    def label(self):
        return "%s%d" % self.g_type

    @property
    def passing(self):
        return self.schouten and self.geometrically_decomposable

    def as_dict(self):
        return {
            "type": self.label,
            "lam": list(self.lam),
            "dim": self.dim_V,
            "weight_filter": self.weight_filter,
            "schouten": self.schouten,
            "jacobi": self.jacobi,
            "geometrically_decomposable": self.geometrically_decomposable,
            "semidirect_constructed": self.semidirect_constructed,
            "in_paper_list": self.in_paper_list,
            "aliases": [[t, list(w)] for t, w in self.aliases],
            "ambients": ["%s:%d" % (label, node) for label, node in self.ambients],
        }

    def __repr__(self):
        return "ClassificationRow(%s, %r, %s)" % (
            self.label, self.lam, "pass" if self.passing else "fail")


def classify_pair(g_type, lam, dim_budget=DEFAULT_DIM_BUDGET, all_bd=False,
                  extended=False):
    """Evaluate every verdict for one pair; see ClassificationRow."""
    letter, rank, lam, aliases = _canonical_pair(g_type, lam)
    rs = _root_system(letter, rank)
    if not any(lam):
        raise NotDominant("the zero weight is out of scope")
    dim, mults = weyl_dimension_and_weights(rs, lam)
    if dim > dim_budget:
        raise BudgetExceeded("dim V = %d exceeds the budget %d" % (dim, dim_budget))
    wf = weight_filter(rs, lam)
    alg = _algebra(rs)
    mod = highest_weight_module(alg, lam)
    oracle_ok = mod.dim == dim and Counter(mod.weights) == dict(mults)
    r = standard_r(alg)
    schouten = schouten_promoted(r_minus_operator(alg, r, mod))
    jacobi = jacobi_oracle(generator_brackets(alg, r, mod))
    bd_verdicts = None
    if all_bd:
        bd_verdicts = {}
        for triple in enumerate_bd_triples(rs):
            r_t, _ = bd_r_matrix(alg, triple)
            bd_verdicts[triple.key()] = schouten_promoted(
                r_minus_operator(alg, r_t, mod))
    ambients = geometric_ambients(letter, rank, lam, extended=extended)
    semidirect = False
    if ambients:
        label2, node = ambients[0]
        _, report = parabolic_semidirect(label2, node)
        semidirect = all(report.values())
    return ClassificationRow(
        (letter, rank), lam, dim, wf, schouten, jacobi,
        bool(ambients), semidirect, in_classification_list(letter, rank, lam),
        aliases=aliases, ambients=ambients, bd_verdicts=bd_verdicts,
        oracle_ok=oracle_ok)


def _dominant_weights_within(rs, dim_budget):
    """Nonzero dominant weights with dim V <= budget, lexicographically.

    The Weyl dimension grows when any coordinate grows, so the search can
    stop expanding a weight as soon as it leaves the budget.
    """
    zero = (0,) * rs.rank
    seen = {zero}
    out = []
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                w = tuple(c + (1 if k == i else 0) for k, c in enumerate(v))
                if w in seen:
                    continue
                seen.add(w)
                if weyl_dim(rs, w) <= dim_budget:
                    out.append(w)
                    nxt.append(w)
        frontier = nxt
    out.sort()
    return out


def classification_table(max_rank, dim_budget, all_bd=False, extended=False,
                         threads=1):
    """One row per simple type of rank <= max_rank and dominant weight in budget.

    Canonical series only: B2 and D3 rows are emitted under C2 and A3. The
    E series joins the sweep only under `extended` (its smallest faithful
    modules are already large). Ordering is deterministic: type label, then
    weight lexicographically; with threads > 1 the rows are evaluated in a
    pool but merged back in submission order.
    """
    types = []
    for r in range(1, max_rank + 1):
        types.append(("A", r))
        if r >= 3:
            types.append(("B", r))
        if r >= 2:
            types.append(("C", r))
        if r >= 4:
            types.append(("D", r))
        if extended and r in (6, 7, 8):
            types.append(("E", r))
        if r == 4:
            types.append(("F", 4))
        if r == 2:
            types.append(("G", 2))
    types.sort()
    jobs = []
    for lt, rk in types:
        rs = _root_system(lt, rk)
        for lam in _dominant_weights_within(rs, dim_budget):
            jobs.append(((lt, rk), lam))

    def run(job):
        pair, lam = job
        return classify_pair(pair, lam, dim_budget=dim_budget, all_bd=all_bd,
                             extended=extended)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]


def paper_diff(rows):
    """Rows whose computed passing verdict disagrees with the embedded list."""
    missing = [r for r in rows if r.in_paper_list and not r.passing]
    extra = [r for r in rows if r.passing and not r.in_paper_list]
    return {"missing": missing, "extra": extra}
