"""Finite permutation groups: breadth-first materialization, conjugacy
classes, and the subgroup/quotient machinery behind the classification
pipeline.

Element order is canonical: breadth-first discovery from the identity with
generators applied in list order, so every downstream numbering (classes,
reports) is reproducible across runs.  All lazily built tables are write-once
behind a lock, so a group value may be shared across threads.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import OrderCapExceeded
from .perm import Permutation

DEFAULT_ORDER_CAP = 20000
# Full |G| x |G| product tables pay off in the enumeration loops but grow
# quadratically; beyond this order products are composed on the fly.
CAYLEY_LIMIT = 512


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` as a membership mask over element indices."""

    parent: "FiniteGroup"
    member_flags: tuple[bool, ...]
    indices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.indices)

    def __contains__(self, index: int) -> bool:
        return self.member_flags[index]

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole_group(self) -> bool:
        return self.order == self.parent.order


@dataclass(frozen=True, eq=False)
class ClassPartition:
    """Conjugacy-class decomposition with canonical (smallest-member) reps."""

    group: "FiniteGroup"
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def members(self, class_index: int) -> list[int]:
        return [i for i, c in enumerate(self.class_of) if c == class_index]


class FiniteGroup:
    """A finite permutation group materialized from its generators.

    ``elements[0]`` is the identity and ``elements`` is closed under products
    and inverses.  Heavy accessors (product table, inverses, element orders,
    conjugacy classes) are built on first use and cached.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: list[Permutation], index: dict[Permutation, int],
                 *, name: str | None = None, cayley_limit: int = CAYLEY_LIMIT):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = elements
        self.name = name
        self._index = index
        self._cayley_limit = cayley_limit
        # Reentrant: lazy builders call each other (classes need the table).
        self._lock = threading.RLock()
        self._table: list[list[int]] | None = None
        self._inverses: list[int] | None = None
        self._orders: list[int] | None = None
        self._classes: ClassPartition | None = None
        self._center: Subgroup | None = None
        self._derived: Subgroup | None = None
        self._small_gens: tuple[int, ...] | None = None
        self._ext_plan: tuple[int, ...] | None = None

    # -- basics ---------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.order}, degree={self.degree})"

    def index_of(self, perm: Permutation) -> int:
        return self._index[perm]

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self._index

    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self._index[g] for g in self.generators)

    # -- products ---------------------------------------------------------

    def cayley_table(self) -> list[list[int]] | None:
        """The full product table, or None when the group is too large."""
        if self.order > self._cayley_limit:
            return None
        if self._table is None:
            with self._lock:
                if self._table is None:
                    idx = self._index
                    self._table = [
                        [idx[p * q] for q in self.elements] for p in self.elements
                    ]
        return self._table

    def product(self, i: int, j: int) -> int:
        table = self.cayley_table()
        if table is not None:
            return table[i][j]
        return self._index[self.elements[i] * self.elements[j]]

    def inverses(self) -> list[int]:
        if self._inverses is None:
            with self._lock:
                if self._inverses is None:
                    idx = self._index
                    self._inverses = [idx[p.inverse()] for p in self.elements]
        return self._inverses

    def inverse(self, i: int) -> int:
        return self.inverses()[i]

    def power(self, i: int, exponent: int) -> int:
        if exponent < 0:
            return self.power(self.inverse(i), -exponent)
        acc = 0
        for _ in range(exponent):
            acc = self.product(acc, i)
        return acc

    def element_order(self, i: int) -> int:
        return self.element_orders()[i]

    def element_orders(self) -> list[int]:
        if self._orders is None:
            with self._lock:
                if self._orders is None:
                    orders = [1] * self.order
                    for i in range(1, self.order):
                        n, acc = 1, i
                        while acc != 0:
                            acc = self.product(acc, i)
                            n += 1
                        orders[i] = n
                    self._orders = orders
        return self._orders

    # -- conjugacy --------------------------------------------------------

    def conjugacy_classes(self) -> ClassPartition:
        if self._classes is None:
            with self._lock:
                if self._classes is None:
                    self._classes = self._compute_classes()
        return self._classes

    def _compute_classes(self) -> ClassPartition:
        n = self.order
        inv = self.inverses()
        class_of = [-1] * n
        reps: list[int] = []
        sizes: list[int] = []
        table = self.cayley_table()
        for g in range(n):
            if class_of[g] >= 0:
                continue
            cid = len(reps)
            reps.append(g)
            size = 0
            if table is not None:
                for h in range(n):
                    c = table[table[h][g]][inv[h]]
                    if class_of[c] < 0:
                        class_of[c] = cid
                        size += 1
            else:
                for h in range(n):
                    c = self.product(self.product(h, g), inv[h])
                    if class_of[c] < 0:
                        class_of[c] = cid
                        size += 1
            sizes.append(size)
        partition = ClassPartition(self, tuple(class_of), tuple(reps), tuple(sizes))
        if sum(sizes) != n or any(n % s for s in sizes):
            raise AssertionError("conjugacy class sizes violate orbit-stabiliser")
        if partition.class_of[0] != 0 or partition.sizes[0] != 1:
            raise AssertionError("identity class is not class 0 of size 1")
        return partition

    def class_number(self) -> int:
        return self.conjugacy_classes().count

    # -- subgroups --------------------------------------------------------

    def subgroup(self, indices: Iterable[int]) -> Subgroup:
        """Build a verified subgroup from member indices.

        Checks identity membership, closure under products (which forces
        inverses in a finite group, checked anyway) and Lagrange.
        """
        members = sorted(set(indices))
        flags = [False] * self.order
        for i in members:
            flags[i] = True
        if not members or members[0] != 0:
            raise ValueError("subgroup must contain the identity")
        inv = self.inverses()
        for a in members:
            if not flags[inv[a]]:
                raise ValueError("subgroup not closed under inverses")
            for b in members:
                if not flags[self.product(a, b)]:
                    raise ValueError("subgroup not closed under products")
        if self.order % len(members):
            raise AssertionError("subgroup order violates Lagrange")
        return Subgroup(self, tuple(flags), tuple(members))

    def trivial_subgroup(self) -> Subgroup:
        return self.subgroup([0])

    def subgroup_closure(self, seeds: Iterable[int]) -> tuple[int, ...]:
        """Indices of the subgroup generated by ``seeds``, sorted."""
        seeds = [s for s in set(seeds) if s != 0]
        members = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in seeds:
                    y = self.product(x, s)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(members))

    def is_normal(self, sub: Subgroup) -> bool:
        flags = sub.member_flags
        inv = self.inverses()
        for g in self.generator_indices():
            for x in sub.indices:
                if not flags[self.product(self.product(g, x), inv[g])]:
                    return False
        return True

    def normal_closure(self, seeds: Iterable[int]) -> Subgroup:
        """Smallest normal subgroup containing ``seeds``.

        The union of the conjugacy classes of the seeds is conjugation-closed,
        and the subgroup generated by a conjugation-closed set is normal.
        """
        classes = self.conjugacy_classes()
        wanted = {classes.class_of[s] for s in seeds}
        conjugates = [i for i, c in enumerate(classes.class_of) if c in wanted]
        return self.subgroup(self.subgroup_closure(conjugates))

    def center(self) -> Subgroup:
        if self._center is None:
            with self._lock:
                if self._center is None:
                    gens = self.generator_indices()
                    members = [
                        i for i in range(self.order)
                        if all(self.product(i, g) == self.product(g, i)
                               for g in gens)
                    ]
                    self._center = self.subgroup(members)
        return self._center

    def derived_subgroup(self) -> Subgroup:
        if self._derived is None:
            with self._lock:
                if self._derived is None:
                    self._derived = self._compute_derived()
        return self._derived

    def _compute_derived(self) -> Subgroup:
        n = self.order
        inv = self.inverses()
        table = self.cayley_table()
        commutators = set()
        if table is not None:
            for i in range(n):
                row = table[i]
                for j in range(n):
                    commutators.add(table[row[j]][inv[table[j][i]]])
        else:
            for i in range(n):
                for j in range(n):
                    ij = self.product(i, j)
                    ji = self.product(j, i)
                    commutators.add(self.product(ij, inv[ji]))
        return self.subgroup(self.subgroup_closure(commutators))

    # -- structural predicates ---------------------------------------------

    def is_abelian(self) -> bool:
        gens = self.generator_indices()
        return all(
            self.product(a, b) == self.product(b, a) for a in gens for b in gens
        )

    def is_perfect(self) -> bool:
        return self.derived_subgroup().order == self.order

    def is_simple(self) -> bool:
        """True iff |G| > 1 and every nontrivial element normally generates G.

        The trivial group is not simple; prime-order groups are.
        """
        if self.order == 1:
            return False
        classes = self.conjugacy_classes()
        for rep in classes.representatives[1:]:
            if len(self.subgroup_closure(classes.members(classes.class_of[rep]))) != self.order:
                return False
        return True

    def is_quasisimple(self) -> bool:
        if not self.is_perfect():
            return False
        quotient_group, _ = self.quotient(self.center())
        return quotient_group.is_simple()

    def is_nilpotent(self) -> bool:
        """Lower central series reaches the trivial subgroup."""
        current = tuple(range(self.order))
        inv = self.inverses()
        while True:
            commutators = set()
            for g in range(self.order):
                for x in current:
                    gx = self.product(g, x)
                    xg = self.product(x, g)
                    commutators.add(self.product(gx, inv[xg]))
            nxt = self.subgroup_closure(commutators)
            if len(nxt) == 1:
                return True
            if len(nxt) == len(current):
                return False
            current = nxt

    # -- quotients ----------------------------------------------------------

    def left_cosets(self, sub: Subgroup) -> tuple[list[int], list[int]]:
        """(coset_of, representatives); reps are smallest member indices."""
        coset_of = [-1] * self.order
        reps: list[int] = []
        for e in range(self.order):
            if coset_of[e] >= 0:
                continue
            cid = len(reps)
            reps.append(e)
            for x in sub.indices:
                coset_of[self.product(e, x)] = cid
        return coset_of, reps

    def quotient(self, sub: Subgroup):
        """Quotient by a normal subgroup, realized on its left cosets.

        Returns ``(quotient_group, projection)`` where the projection is a
        verified surjective Morphism with kernel ``sub``.
        """
        from .morphism import Morphism  # deferred: morphism depends on group

        if sub.parent is not self:
            raise ValueError("subgroup belongs to a different group")
        if not self.is_normal(sub):
            raise ValueError("subgroup is not normal")
        coset_of, reps = self.left_cosets(sub)
        m = len(reps)
        gen_perms = [
            Permutation(coset_of[self.product(g, r)] for r in reps)
            for g in self.generator_indices()
        ]
        label = f"{self.name}/N{sub.order}" if self.name else None
        quotient_group = closure(m, gen_perms, name=label,
                                 order_cap=self.order, cayley_limit=self._cayley_limit)
        if quotient_group.order * sub.order != self.order:
            raise AssertionError("coset action has the wrong order")
        proj_table = []
        for e in range(self.order):
            perm = Permutation(coset_of[self.product(e, r)] for r in reps)
            proj_table.append(quotient_group.index_of(perm))
        projection = Morphism(self, quotient_group, proj_table)
        if tuple(i for i, t in enumerate(proj_table) if t == 0) != sub.indices:
            raise AssertionError("projection kernel differs from the subgroup")
        return quotient_group, projection

    # -- generating sets for morphism search ---------------------------------

    def small_generating_set(self) -> tuple[int, ...]:
        """Generator indices used by the morphism search.

        The declared generators are kept (minus duplicates and the identity)
        when there are at most three; otherwise a small set is re-derived
        greedily, picking the element that maximally grows the closure.
        """
        if self._small_gens is None:
            with self._lock:
                if self._small_gens is None:
                    self._small_gens = self._derive_small_gens()
        return self._small_gens

    def _derive_small_gens(self) -> tuple[int, ...]:
        declared = []
        for g in self.generator_indices():
            if g != 0 and g not in declared:
                declared.append(g)
        if len(declared) <= 3:
            return tuple(declared)
        chosen: list[int] = []
        reached = 1
        while reached < self.order:
            best, best_size = None, reached
            for cand in range(1, self.order):
                size = len(self.subgroup_closure(chosen + [cand]))
                if size > best_size:
                    best, best_size = cand, size
            chosen.append(best)
            reached = best_size
        return tuple(chosen)

    def extension_plan(self) -> tuple[int, ...]:
        """Element indices in BFS order over the small generating set.

        Guarantees that when an index is visited, its image under a partial
        homomorphism extension is already determined.
        """
        if self._ext_plan is None:
            with self._lock:
                if self._ext_plan is None:
                    gens = self.small_generating_set()
                    seen = [False] * self.order
                    seen[0] = True
                    order = [0]
                    head = 0
                    while head < len(order):
                        x = order[head]
                        head += 1
                        for g in gens:
                            y = self.product(x, g)
                            if not seen[y]:
                                seen[y] = True
                                order.append(y)
                    if len(order) != self.order:
                        raise AssertionError(
                            "small generating set does not generate")
                    self._ext_plan = tuple(order)
        return self._ext_plan


def closure(degree: int, generators: Sequence[Permutation], *,
            name: str | None = None, order_cap: int = DEFAULT_ORDER_CAP,
            cayley_limit: int = CAYLEY_LIMIT) -> FiniteGroup:
    """Materialize the group generated by ``generators`` on ``degree`` points.

    Breadth-first from the identity, generators applied in list order; the
    resulting element order is deterministic.  Raises OrderCapExceeded when
    the group would exceed ``order_cap``.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    identity = Permutation.identity(degree)
    elements = [identity]
    index = {identity: 0}
    head = 0
    while head < len(elements):
        p = elements[head]
        for g in generators:
            q = p * g
            if q not in index:
                if len(elements) >= order_cap:
                    raise OrderCapExceeded(
                        f"group exceeds order cap {order_cap}"
                    )
                index[q] = len(elements)
                elements.append(q)
        head += 1
    return FiniteGroup(degree, generators, elements, index,
                       name=name, cayley_limit=cayley_limit)
