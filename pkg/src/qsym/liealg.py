"""Exact semisimple Lie algebras: irreducible modules and Chevalley bases.

Modules are built level by level from the highest weight vector; candidate
vectors f_i(b) are kept or rejected by exact elimination of the contravariant
Gram matrix, which quotients the Verma module to the irreducible one. The
Chevalley basis is bootstrapped from the adjoint module: root-vector operators
are nested commutators of the generator matrices along a deterministic descent
path, with F_gamma rescaled so that [E_gamma, F_gamma] = H_gamma exactly.
"""

from __future__ import annotations

from fractions import Fraction as Q

from .rootsys import (
    NotDominant,
    RootSystem,
    build_root_system,
    weight_multiplicities,
    weyl_dim,
)


class DegenerateForm(ValueError):
    """The invariant form is singular where a dual basis is required."""


# ---------------------------------------------------------------------------
# sparse matrices in column form: mat[j] = {i: value} means e_j -> sum value e_i
# ---------------------------------------------------------------------------

def _vadd_into(acc, vec, scale=Q(1)):
    for i, v in vec.items():
        s = acc.get(i, Q(0)) + v * scale
        if s:
            acc[i] = s
        elif i in acc:
            del acc[i]


def _mapply(m, vec):
    out = {}
    for j, c in vec.items():
        col = m.get(j)
        if col:
            _vadd_into(out, col, c)
    return out


def _mcompose(a, b):
    out = {}
    for j, col in b.items():
        v = _mapply(a, col)
        if v:
            out[j] = v
    return out


def _mscaled_sum(pairs):
    """Sparse sum of (scale, matrix) pairs."""
    out = {}
    for scale, m in pairs:
        for j, col in m.items():
            acc = out.setdefault(j, {})
            _vadd_into(acc, col, scale)
            if not acc:
                del out[j]
    return out


def _mcomm(a, b):
    return _mscaled_sum([(Q(1), _mcompose(a, b)), (Q(-1), _mcompose(b, a))])


def _mscale(m, c):
    if not c:
        return {}
    return {j: {i: v * c for i, v in col.items()} for j, col in m.items()}


def _scalar_ratio(m, base):
    """m == ratio * base exactly, or None. base must be nonzero."""
    j0 = min(base)
    i0 = min(base[j0])
    ratio = m.get(j0, {}).get(i0, Q(0)) / base[j0][i0]
    if _mscaled_sum([(Q(1), m), (-ratio, base)]):
        return None
    return ratio


def _solve_dense(a, b):
    """Solve a x = b exactly; a is a list of rows, b a list."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        lead = m[col][col]
        m[col] = [x / lead for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# irreducible highest-weight modules
# ---------------------------------------------------------------------------

class ModuleRep:
    """Generator matrices of V(lambda) in an exact weight basis."""

    def __init__(self, rs, lam, dim, weights, e, f):
        self.rs = rs
        self.lam = tuple(lam)
        self.dim = dim
        self.weights = weights  # fundamental coordinates per basis index
        self.e = e  # list over simple i of column-form matrices
        self.f = f

    def h_scalar(self, i, idx):
        return self.weights[idx][i]


def module_matrices(rs, lam):
    """Irreducible module with highest weight lam (fundamental coordinates)."""
    if len(lam) != rs.rank or any(c < 0 for c in lam):
        raise NotDominant("fundamental coordinates must be nonnegative, got %r" % (lam,))
    lam = tuple(int(c) for c in lam)
    rank = rs.rank
    alpha_fund = [tuple(rs.cartan[i]) for i in range(rank)]

    weights = [lam]
    e = [{} for _ in range(rank)]
    f = [{} for _ in range(rank)]
    prev = [0]
    gram_prev = {(0, 0): Q(1)}

    while prev:
        cands = [(b, i) for b in prev for i in range(rank)]
        buckets = {}
        for b, i in cands:
            w = tuple(x - y for x, y in zip(weights[b], alpha_fund[i]))
            buckets.setdefault(w, []).append((b, i))

        new_indices = []
        gram_new = {}
        for w in sorted(buckets):
            group = buckets[w]
            m = len(group)
            # vector e_i f_j(b') = f_j(e_i b') + delta_ij <wt(b'), a_i^> b'
            efs = {}
            for b2, j in group:
                for i in {gi for _, gi in group}:
                    vec = _mapply(f[j], e[i].get(b2, {}))
                    if i == j:
                        _vadd_into(vec, {b2: Q(weights[b2][i])})
                    efs[(i, (b2, j))] = vec
            gram = [[Q(0)] * m for _ in range(m)]
            for a, (b1, i) in enumerate(group):
                for c, (b2, j) in enumerate(group):
                    total = Q(0)
                    for idx, val in efs[(i, (b2, j))].items():
                        g = gram_prev.get((b1, idx))
                        if g:
                            total += g * val
                    gram[a][c] = total
            # exact symmetric elimination to find a pivot set
            red = [row[:] for row in gram]
            pivots = []
            prow = 0
            for col in range(m):
                piv = next((r for r in range(prow, m) if red[r][col] != 0), None)
                if piv is None:
                    continue
                red[prow], red[piv] = red[piv], red[prow]
                lead = red[prow][col]
                red[prow] = [x / lead for x in red[prow]]
                for r in range(m):
                    if r != prow and red[r][col] != 0:
                        fac = red[r][col]
                        red[r] = [x - fac * y for x, y in zip(red[r], red[prow])]
                pivots.append(col)
                prow += 1
            base = len(weights)
            local = {}
            for k, col in enumerate(pivots):
                b, i = group[col]
                idx = base + k
                local[col] = idx
                weights.append(w)
                new_indices.append(idx)
                f[i][b] = {idx: Q(1)}
                for j in range(rank):
                    vec = _mapply(f[i], e[j].get(b, {}))
                    if i == j:
                        _vadd_into(vec, {b: Q(weights[b][i])})
                    if vec:
                        e[j][idx] = vec
            for c in range(m):
                if c in local:
                    continue
                b, i = group[c]
                if not pivots:
                    continue
                sub = [[gram[p][pp] for pp in pivots] for p in pivots]
                rhs = [gram[p][c] for p in pivots]
                sol = _solve_dense(sub, rhs)
                expansion = {local[pivots[k]]: sol[k]
                             for k in range(len(pivots)) if sol[k]}
                if expansion:
                    f[i][b] = expansion
            for a, col_a in enumerate(pivots):
                for bl, col_b in enumerate(pivots):
                    gram_new[(local[col_a], local[col_b])] = gram[col_a][col_b]
        prev = new_indices
        gram_prev = gram_new

    return ModuleRep(rs, lam, len(weights), weights, e, f)


# ---------------------------------------------------------------------------
# Chevalley basis via the adjoint bootstrap
# ---------------------------------------------------------------------------

class ChevalleyAlgebra:
    """Basis E_gamma, H_i, F_gamma (+ optional central z_k), exact brackets.

    Signs of the non-simple root vectors are fixed by the deterministic
    descent convention recorded in `recipes`: E_gamma is the left-normed
    bracket [E_i, E_{gamma - alpha_i}] / (p+1) for the smallest simple i
    with gamma - alpha_i a positive root.
    """

    def __init__(self, rs, central_dims=0):
        self.rs = rs
        self.rank = rs.rank
        self.central_dims = central_dims
        pos = list(rs.positive_roots)
        self.pos_roots = pos
        self.names = (["E%s" % (tuple(g),) for g in pos]
                      + ["H%d" % (i + 1) for i in range(rs.rank)]
                      + ["F%s" % (tuple(g),) for g in pos]
                      + ["z%d" % (k + 1) for k in range(central_dims)])
        self.dim = len(self.names)
        self.e_idx = {g: k for k, g in enumerate(pos)}
        self.h_idx = {i: len(pos) + i for i in range(rs.rank)}
        self.f_idx = {g: len(pos) + rs.rank + k for k, g in enumerate(pos)}
        self.z_idx = [len(pos) * 2 + rs.rank + k for k in range(central_dims)]
        zero = tuple(Q(0) for _ in range(rs.rank))
        self.weight = ([tuple(Q(x) for x in g) for g in pos]
                       + [zero] * rs.rank
                       + [tuple(-Q(x) for x in g) for g in pos]
                       + [zero] * central_dims)
        # recipe per root vector: how to build its matrix in any representation
        self.recipes = {}
        self._bootstrap()
        self._form = self._build_form()

    # -- structure constants -------------------------------------------------

    def _component_of(self, idx):
        w = self.weight[idx]
        for c, off in enumerate(self.rs._offsets):
            n = self.rs.components[c][1]
            if any(w[off + k] for k in range(n)):
                return c
        return None  # Cartan or central

    def _descent(self, gamma):
        """Smallest simple i with gamma - alpha_i a positive root, and the
        Chevalley denominator p+1 for that pair."""
        rank = self.rank
        for i in range(rank):
            down = list(gamma)
            down[i] -= 1
            if tuple(down) in self.e_idx or (sum(down) == 0 and not any(down)):
                if sum(gamma) == 1:
                    return None
                prev = tuple(down)
                p = 0
                while True:
                    lower = list(prev)
                    lower[i] -= 1
                    if self.rs.is_root(tuple(lower)):
                        prev = tuple(lower)
                        p += 1
                    else:
                        break
                down = list(gamma)
                down[i] -= 1
                return i, tuple(down), p
        raise AssertionError("no simple descent from %s" % (gamma,))

    def _bootstrap(self):
        rs = self.rs
        rank = self.rank
        ops = {}
        # one adjoint module per simple component, assembled block-diagonally
        dim_off = 0
        comp_systems = []
        for letter, n in rs.components:
            comp_systems.append(build_root_system(letter, n))
        comp_reps = []
        for c, crs in enumerate(comp_systems):
            theta = crs.highest_root
            rep = module_matrices(crs, crs.root_to_fund(theta))
            comp_reps.append((rep, dim_off))
            dim_off += rep.dim
        total = dim_off

        def lift(mat, off):
            return {j + off: {i + off: v for i, v in col.items()} for j, col in mat.items()}

        gen_e = []
        gen_f = []
        gen_h = []
        for i in range(rank):
            c = next(k for k, offk in enumerate(rs._offsets)
                     if offk <= i < offk + rs.components[k][1])
            local = i - rs._offsets[c]
            rep, off = comp_reps[c]
            gen_e.append(lift(rep.e[local], off))
            gen_f.append(lift(rep.f[local], off))
            gen_h.append({j + off: {j + off: Q(rep.weights[j][local])}
                          for j in range(rep.dim) if rep.weights[j][local]})

        for i in range(rank):
            alpha = tuple(1 if k == i else 0 for k in range(rank))
            ops[self.e_idx[alpha]] = gen_e[i]
            ops[self.f_idx[alpha]] = gen_f[i]
            ops[self.h_idx[i]] = gen_h[i]
            self.recipes[self.e_idx[alpha]] = ("e", i)
            self.recipes[self.f_idx[alpha]] = ("f", i)

        tilde_scale = {}  # f-side rescaling factors t_gamma
        for gamma in self.pos_roots:
            if sum(gamma) == 1:
                tilde_scale[gamma] = Q(1)
                continue
            i, parent, p = self._descent(gamma)
            coef = Q(1, p + 1)
            e_op = _mscale(_mcomm(gen_e[i], ops[self.e_idx[parent]]), coef)
            ops[self.e_idx[gamma]] = e_op
            ft_op = _mscale(_mcomm(gen_f[i], ops[self.f_idx[parent]]), coef * tilde_scale[parent])
            # H_gamma in coroot coordinates: gamma^ = sum gamma_j (a_j,a_j)/(g,g) a_j^
            gnorm = rs.inner(gamma, gamma)
            h_op = _mscaled_sum(
                [(Q(gamma[j]) * rs.norms[j] / gnorm, gen_h[j]) for j in range(rank)])
            t = _scalar_ratio(_mcomm(e_op, ft_op), h_op)
            assert t is not None and t != 0, "bad Cartan scale at %s" % (gamma,)
            tilde_scale[gamma] = t
            ops[self.f_idx[gamma]] = _mscale(ft_op, Q(1) / t)
            self.recipes[self.e_idx[gamma]] = ("comm_e", i, self.e_idx[parent], coef)
            self.recipes[self.f_idx[gamma]] = (
                "comm_f", i, self.f_idx[parent], coef * tilde_scale[parent] / t)

        # extract structure constants with weight pruning
        table = {}
        n_basis = 2 * len(self.pos_roots) + rank

        def put(i, j, val):
            if val:
                table[(i, j)] = val

        hspace = {self.h_idx[i] for i in range(rank)}
        for a in range(n_basis):
            for b in range(a + 1, n_basis):
                wa, wb = self.weight[a], self.weight[b]
                if a in hspace and b in hspace:
                    continue
                if a in hspace or b in hspace:
                    hi = (a if a in hspace else b) - self.h_idx[0]
                    other = b if a in hspace else a
                    w = self.weight[other]
                    scal = sum(Q(w[k]) * rs.cartan[k][hi] for k in range(rank))
                    if b in hspace:
                        scal = -scal
                    put(a, b, {other: scal} if scal else {})
                    continue
                if self._component_of(a) != self._component_of(b):
                    continue
                target = tuple(x + y for x, y in zip(wa, wb))
                m = _mcomm(ops[a], ops[b])
                if not any(target):
                    if not m:
                        continue
                    # must be [E_g, F_g] = H_g
                    gamma = tuple(int(x) for x in wa)
                    gnorm = rs.inner(gamma, gamma)
                    coords = {self.h_idx[j]: Q(gamma[j]) * rs.norms[j] / gnorm
                              for j in range(rank) if gamma[j]}
                    h_op = _mscaled_sum([(coords[self.h_idx[j]], gen_h[j])
                                         for j in range(rank) if gamma[j]])
                    assert not _mscaled_sum([(Q(1), m), (Q(-1), h_op)]), \
                        "Cartan bracket mismatch at %s" % (gamma,)
                    put(a, b, coords)
                    continue
                ti = tuple(int(x) for x in target)
                if ti in self.e_idx:
                    tgt = self.e_idx[ti]
                elif tuple(-x for x in ti) in self.f_idx:
                    tgt = self.f_idx[tuple(-x for x in ti)]
                else:
                    assert not m, "unexpected bracket weight %s" % (target,)
                    continue
                if not m:
                    continue
                ratio = _scalar_ratio(m, ops[tgt])
                assert ratio is not None, "bracket not a multiple at %s,%s" % (a, b)
                put(a, b, {tgt: ratio})

        self.table = table

    def _build_form(self):
        rs = self.rs
        form = {}
        for g in self.pos_roots:
            val = 2 / rs.inner(g, g)
            form[(self.e_idx[g], self.f_idx[g])] = val
            form[(self.f_idx[g], self.e_idx[g])] = val
        for i in range(self.rank):
            for j in range(self.rank):
                val = 4 * rs.bform[i][j] / (rs.norms[i] * rs.norms[j])
                if val:
                    form[(self.h_idx[i], self.h_idx[j])] = val
        return form

    # -- public interface ----------------------------------------------------

    def bracket_idx(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -v for k, v in self.table.get((j, i), {}).items()}

    def bracket(self, x, y):
        out = {}
        for i, xi in x.items():
            for j, yj in y.items():
                c = xi * yj
                if c:
                    _vadd_into(out, self.bracket_idx(i, j), c)
        return out

    def form(self, i, j):
        return self._form.get((i, j), Q(0))

    def adjoint_rep(self):
        """Matrices of ad(basis element) on the algebra itself."""
        mats = []
        for a in range(self.dim):
            col = {}
            for b in range(self.dim):
                v = self.bracket_idx(a, b)
                if v:
                    col[b] = v
            mats.append(col)
        return mats


def chevalley_basis(rs, central_dims=0):
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return ChevalleyAlgebra(rs, central_dims)


class Module:
    """Action matrices of every algebra basis element on V(lam)."""

    def __init__(self, alg, lam, dim, weights, mats, e, f):
        self.alg = alg
        self.lam = tuple(lam)
        self.dim = dim
        self.weights = weights
        self.mats = mats  # aligned with alg basis indices
        self.e = e  # generator matrices, per simple index
        self.f = f


def highest_weight_module(alg, lam, central_scalars=()):
    """V(lam) with exact matrices for all of alg's basis, z_k acting by scalars."""
    rep = module_matrices(alg.rs, lam)
    mats = [None] * alg.dim
    for i in range(alg.rank):
        alpha = tuple(1 if k == i else 0 for k in range(alg.rank))
        mats[alg.e_idx[alpha]] = rep.e[i]
        mats[alg.f_idx[alpha]] = rep.f[i]
        mats[alg.h_idx[i]] = {j: {j: Q(rep.weights[j][i])}
                              for j in range(rep.dim) if rep.weights[j][i]}
    for gamma in sorted(alg.pos_roots, key=lambda g: (sum(g), g)):
        for idx in (alg.e_idx[gamma], alg.f_idx[gamma]):
            recipe = alg.recipes[idx]
            if recipe[0] in ("e", "f"):
                continue
            kind, i, parent, coef = recipe
            gen = rep.e[i] if kind == "comm_e" else rep.f[i]
            mats[idx] = _mscale(_mcomm(gen, mats[parent]), coef)
    for k, zidx in enumerate(alg.z_idx):
        s = Q(central_scalars[k]) if k < len(central_scalars) else Q(0)
        mats[zidx] = {j: {j: s} for j in range(rep.dim)} if s else {}
    return Module(alg, lam, rep.dim, rep.weights, mats, rep.e, rep.f)


def weyl_dimension_and_weights(rs, lam):
    """Independent dimension and weight-multiset oracle (Weyl + Freudenthal)."""
    return weyl_dim(rs, lam), weight_multiplicities(rs, lam)


def casimir(alg):
    """Casimir c = sum x_i @ x^i over dual bases and its Cartan part c0.

    Returns (c, c0): c = sum_g (g,g)/2 (E@F + F@E) + sum B^{-1}_ij H_i@H_j
    with B the coroot Gram matrix, and c0 the H@H part alone.
    """
    rs = alg.rs
    c = {}
    for g in alg.pos_roots:
        half = rs.inner(g, g) / 2
        c[(alg.e_idx[g], alg.f_idx[g])] = half
        c[(alg.f_idx[g], alg.e_idx[g])] = half
    bmat = [[4 * rs.bform[i][j] / (rs.norms[i] * rs.norms[j]) for j in range(alg.rank)]
            for i in range(alg.rank)]
    n = alg.rank
    if n == 0:
        raise DegenerateForm("no semisimple part")
    inv = []
    for col in range(n):
        rhs = [Q(1) if r == col else Q(0) for r in range(n)]
        try:
            inv.append(_solve_dense([row[:] for row in bmat], rhs))
        except StopIteration:
            raise DegenerateForm("coroot Gram matrix is singular") from None
    c0 = {}
    for i in range(n):
        for j in range(n):
            v = inv[j][i]
            if v:
                c0[(alg.h_idx[i], alg.h_idx[j])] = v
                c[(alg.h_idx[i], alg.h_idx[j])] = v
    return c, c0


# ---------------------------------------------------------------------------
# parabolic nilradicals as Levi modules
# ---------------------------------------------------------------------------

def _match_subdiagram(nodes, bform):
    """Classify the Dynkin diagram induced on `nodes` (indices into bform).

    Returns (series, rank, mapping) where mapping[k] = the node playing the
    role of canonical simple root k+1 of build_root_system((series, rank)).
    """
    from itertools import permutations

    n = len(nodes)
    candidates = ["A"]
    if n >= 2:
        candidates += ["B", "C", "G"]
    if n >= 3:
        candidates += ["D"]
    if n == 4:
        candidates += ["F"]
    if n in (6, 7, 8):
        candidates += ["E"]

    def cartan_of(perm):
        return [[2 * bform[a][b] / bform[b][b] for b in perm] for a in perm]

    degrees = sorted(sum(1 for b in nodes if b != a and bform[a][b]) for a in nodes)
    for letter in candidates:
        try:
            ref = build_root_system(letter, n)
        except Exception:
            continue
        ref_cartan = [[Q(x) for x in row] for row in ref.cartan]
        ref_deg = sorted(sum(1 for b in range(n) if b != a and ref.cartan[a][b])
                         for a in range(n))
        if ref_deg != degrees:
            continue
        for perm in permutations(nodes):
            if cartan_of(perm) == ref_cartan:
                return letter, n, list(perm)
    raise AssertionError("unclassifiable subdiagram %r" % (nodes,))


def abelian_radical_module(rs, node):
    """Levi type, Levi-highest weight of the nilradical, and abelianness.

    node is 1-indexed. The nilradical is spanned by the root spaces whose
    node coefficient is positive; it is abelian exactly when no two such
    roots sum to a root.
    """
    k = node - 1
    if not 0 <= k < rs.rank:
        raise ValueError("node out of range: %r" % (node,))
    radical = [g for g in rs.positive_roots if g[k] > 0]
    abelian = True
    for a in range(len(radical)):
        for b in range(a, len(radical)):
            s = tuple(x + y for x, y in zip(radical[a], radical[b]))
            if rs.is_root(s):
                abelian = False
                break
        if not abelian:
            break
    levi_nodes = [i for i in range(rs.rank) if i != k]
    levi_type = []
    lam_levi = []
    seen = set()
    for i in levi_nodes:
        if i in seen:
            continue
        comp = {i}
        frontier = [i]
        while frontier:
            a = frontier.pop()
            for b in levi_nodes:
                if b not in comp and rs.bform[a][b]:
                    comp.add(b)
                    frontier.append(b)
        seen |= comp
        letter, n, mapping = _match_subdiagram(sorted(comp), rs.bform)
        levi_type.append((letter, n))
        theta = max(radical, key=lambda g: (sum(g), g))
        for src in mapping:
            lam_levi.append(rs.copair(theta, src))
    return levi_type, tuple(lam_levi), abelian
