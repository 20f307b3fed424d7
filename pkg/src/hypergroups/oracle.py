"""Naive reference implementation used as an independent cross-check.

Everything here works on plain ``frozenset`` tables and recomputes each notion
straight from its definition: full subset scans, explicit double cosets,
exhaustive chain searches. It imports nothing else from this package, so a
bug in the bitmask code paths cannot leak into the oracle.
"""

from __future__ import annotations

from itertools import chain, combinations, product


def _subsets(elems):
    elems = sorted(elems)
    for r in range(1, len(elems) + 1):
        for c in combinations(elems, r):
            yield frozenset(c)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _p_power(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


class Naive:
    """A hypergroup given by ``table[(p, q)] -> frozenset``."""

    def __init__(self, elems, table, star=None, identity=None):
        self.elems = frozenset(elems)
        self.table = {k: frozenset(v) for k, v in table.items()}
        self.identity = identity if identity is not None else self._find_identity()
        self.star = star if star is not None else self._find_star()

    @classmethod
    def from_rows(cls, rows):
        n = len(rows)
        return cls(range(n), {(i, j): frozenset(rows[i][j]) for i in range(n) for j in range(n)})

    # -- axioms --------------------------------------------------------------

    def _find_identity(self):
        for e in sorted(self.elems):
            if all(self.table[(s, e)] == {s} and self.table[(e, s)] == {s} for s in self.elems):
                return e
        return None

    def _h3(self, star) -> bool:
        for p, q in product(self.elems, repeat=2):
            for r in self.table[(p, q)]:
                if q not in self.table[(star[p], r)] or p not in self.table[(r, star[q])]:
                    return False
        return True

    def _find_star(self):
        if self.identity is None:
            return None
        order = sorted(self.elems)
        found = []
        for images in product(order, repeat=len(order)):
            star = dict(zip(order, images))
            if self._h3(star):
                found.append(star)
        return found[0] if len(found) == 1 else None

    def prod(self, P, Q):
        return frozenset(chain.from_iterable(self.table[(p, q)] for p in P for q in Q))

    def is_valid(self) -> bool:
        if any(not c for c in self.table.values()):
            return False
        if self.identity is None or self.star is None:
            return False
        for p, q, r in product(self.elems, repeat=3):
            if self.prod({p}, self.table[(q, r)]) != self.prod(self.table[(p, q)], {r}):
                return False
        return all(self.star[self.star[s]] == s for s in self.elems)

    # -- elementary ----------------------------------------------------------

    def sstar(self, S):
        return frozenset(self.star[s] for s in S)

    def thin_elements(self):
        return frozenset(s for s in self.elems if self.table[(self.star[s], s)] == {self.identity})

    def is_thin(self):
        return self.thin_elements() == self.elems

    def is_commutative(self):
        return all(self.table[(a, b)] == self.table[(b, a)] for a, b in product(self.elems, repeat=2))

    def is_closed(self, F):
        return bool(F) and all(self.table[(self.star[a], b)] <= F for a in F for b in F)

    def closed_subsets(self):
        return [F for F in _subsets(self.elems) if self.is_closed(F)]

    def restrict(self, F):
        F = frozenset(F)
        return Naive(F, {(a, b): self.table[(a, b)] for a in F for b in F},
                     {a: self.star[a] for a in F}, self.identity)

    def normal_in(self, F, W):
        return all(self.prod(F, {h}) <= self.prod({h}, F) for h in W)

    def strongly_normal_in(self, F, W):
        return all(self.prod(self.prod({self.star[h]}, F), {h}) <= F for h in W)

    # -- quotient ------------------------------------------------------------

    def quotient(self, F):
        """(Naive quotient, map element -> coset)."""
        F = frozenset(F)
        cos = {h: self.prod(self.prod(F, {h}), F) for h in self.elems}
        classes = set(cos.values())
        for a, b in combinations(classes, 2):
            if a & b:
                raise ValueError("cosets overlap")
        table = {}
        for a, b in product(self.elems, repeat=2):
            entry = frozenset(cos[x] for x in self.prod(self.prod({a}, F), {b}))
            key = (cos[a], cos[b])
            if key in table and table[key] != entry:
                raise ValueError("representative dependence")
            table[key] = entry
        star = {cos[a]: cos[self.star[a]] for a in self.elems}
        return Naive(classes, table, star, cos[self.identity]), cos

    # -- center --------------------------------------------------------------

    def center(self):
        thin = self.thin_elements()
        return frozenset(
            h for h in self.elems
            if h in thin and all(self.table[(h, x)] == self.table[(x, h)] for x in self.elems)
        )

    def upper_center_series(self):
        terms = [frozenset({self.identity})]
        while True:
            Q, cos = self.quotient(terms[-1])
            zq = Q.center()
            nxt = frozenset(h for h in self.elems if cos[h] in zq)
            if nxt == terms[-1]:
                return terms
            terms.append(nxt)

    def is_weakly_nilpotent(self):
        return self.upper_center_series()[-1] == self.elems

    def thin_residue(self):
        out = self.elems
        for F in self.closed_subsets():
            if self.strongly_normal_in(F, self.elems):
                out = out & F
        return out

    # -- chains --------------------------------------------------------------

    def _chains(self, start, step):
        """All strictly ascending chains of closed subsets from start to H."""
        closed = self.closed_subsets()
        out = []

        def walk(path):
            if path[-1] == self.elems:
                out.append(list(path))
                return
            for G in closed:
                if path[-1] < G and step(path[-1], G):
                    walk(path + [G])

        walk([frozenset(start)])
        return out

    def step_quotient(self, E, G):
        return self.restrict(G).quotient(E)[0]

    def rt_valencies(self):
        """Set of chain valencies (empty when not RT)."""
        chains = self._chains({self.identity}, lambda E, G: self.step_quotient(E, G).is_thin())
        vals = set()
        for ch in chains:
            v = 1
            for E, G in zip(ch, ch[1:]):
                v *= len(self.step_quotient(E, G).elems)
            vals.add(v)
        return vals

    def is_rt(self):
        return bool(self.rt_valencies())

    def valency(self):
        vals = self.rt_valencies()
        if len(vals) != 1:
            return None
        return next(iter(vals))

    def is_solvable(self):
        def step(E, G):
            Q = self.step_quotient(E, G)
            return Q.is_thin() and _is_prime(len(Q.elems))

        if len(self.elems) == 1:
            return True
        return bool(self._chains({self.identity}, step))

    def is_subnormal(self, F, strongly=False):
        F = frozenset(F)
        if F == self.elems:
            return True
        rel = self.strongly_normal_in if strongly else self.normal_in
        return bool(self._chains(F, lambda E, G: rel(E, G)))

    def sub_valency(self, C):
        return self.restrict(C).valency()

    def sylow(self, p):
        n = self.valency()
        out = []
        for C in self.closed_subsets():
            m = self.sub_valency(C)
            if m is not None and _p_power(m, p) and n % m == 0 and (n // m) % p:
                out.append(C)
        return out

    def is_p_valenced(self, p, strict=False):
        for U in self.closed_subsets():
            if not self.is_subnormal(U):
                continue
            m = self.sub_valency(U)
            if m is None or not _p_power(m, p):
                continue
            Q, cos = self.quotient(U)
            thin = Q.thin_elements()
            for h in self.elems:
                S = Q.table[(cos[self.star[h]], cos[h])]
                qualifies = S <= thin if strict else (len(S) == 1 and S <= thin)
                if qualifies and not _p_power(len(S), p):
                    return False
        return True

    def has_central_series(self):
        """Brute force over descending chains of normal closed subsets."""
        normals = [F for F in self.closed_subsets() if self.normal_in(F, self.elems)]
        one = frozenset({self.identity})

        def ok(upper, lower):
            Q, cos = self.quotient(lower)
            return frozenset(cos[x] for x in upper) <= Q.center()

        def walk(top):
            if top == one:
                return True
            return any(F < top and ok(top, F) and walk(F) for F in normals)

        return walk(self.elems)
