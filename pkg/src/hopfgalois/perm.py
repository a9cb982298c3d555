"""Finite permutation groups on a coset space, the left-translation embedding,
and the regular-subgroup machinery (enumeration, opposites, centralizers)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .errors import CapabilityError, StructureError

ENUMERATION_BOUND = 8
GROUP_QUERY_BOUND = 60


class Permutation:
    """Bijection of {0, ..., n-1}; ``(p * q)(i) == p(q(i))``."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise StructureError(f"not a bijection of 0..{len(images) - 1}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(self.images[j] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cur, cyc = start, []
            while not seen[cur]:
                seen[cur] = True
                cyc.append(cur)
                cur = self.images[cur]
            out.append(cyc)
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __le__(self, other):
        return self.images <= other.images

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def _close_tuples(gens: list[tuple[int, ...]], degree: int, limit: int | None = None):
    """Closure of image tuples under composition; None when `limit` is hit."""
    identity = tuple(range(degree))
    group = {identity}
    frontier = [g for g in gens if g != identity]
    group.update(frontier)
    while frontier:
        new = []
        for p in frontier:
            for q in list(group):
                for prod in (tuple(p[i] for i in q), tuple(q[i] for i in p)):
                    if prod not in group:
                        group.add(prod)
                        new.append(prod)
                        if limit is not None and len(group) > limit:
                            return None
        frontier = new
    return group


class FiniteGroup:
    """A group of permutations of a common finite set, with the element list
    sorted canonically (lexicographic image tuples)."""

    __slots__ = ("elements", "generators", "_index", "_inv", "degree")

    def __init__(self, elements, generators=None):
        elems = sorted(set(elements))
        if not elems:
            raise StructureError("a group needs at least the identity element")
        self.degree = elems[0].degree
        for p in elems:
            if p.degree != self.degree:
                raise StructureError("elements act on sets of different sizes")
        self.elements = tuple(elems)
        self._index = {p: i for i, p in enumerate(self.elements)}
        for p in elems:
            for q in elems:
                if (p * q) not in self._index:
                    raise StructureError(
                        f"not closed under composition: {p} * {q} is missing")
        if not self.elements[0].is_identity():
            raise StructureError("identity element is missing")
        self._inv = tuple(self._index[p.inverse()] for p in self.elements)
        if generators is None:
            generators = tuple(range(len(self.elements)))
        self.generators = tuple(self._index[g] if isinstance(g, Permutation) else g
                                for g in generators)

    @classmethod
    def generated_by(cls, gens, limit: int | None = None) -> "FiniteGroup":
        gens = list(gens)
        if not gens:
            raise StructureError("need at least one generator (or an explicit identity)")
        degree = gens[0].degree
        closure = _close_tuples([g.images for g in gens], degree, limit)
        if closure is None:
            raise StructureError(f"closure exceeds the limit of {limit} elements")
        return cls((Permutation(t) for t in closure), generators=gens)

    @classmethod
    def trivial(cls, degree: int) -> "FiniteGroup":
        return cls([Permutation.identity(degree)])

    @classmethod
    def symmetric(cls, degree: int) -> "FiniteGroup":
        return cls(Permutation(p) for p in itertools.permutations(range(degree)))

    def order(self) -> int:
        return len(self.elements)

    @property
    def identity_index(self) -> int:
        return 0  # identity is lexicographically minimal

    def index_of(self, p: Permutation) -> int:
        return self._index[p]

    def __contains__(self, p: Permutation) -> bool:
        return p in self._index

    def mul(self, i: int, j: int) -> int:
        return self._index[self.elements[i] * self.elements[j]]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def element_order(self, i: int) -> int:
        return self.elements[i].order()

    def order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(p.order() for p in self.elements))

    def is_abelian(self) -> bool:
        gens = [self.elements[i] for i in self.generators]
        return all(a * b == b * a for a in gens for b in gens)

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return all(p in other for p in self.elements)

    def center(self) -> "FiniteGroup":
        central = [p for p in self.elements
                   if all(p * q == q * p for q in self.elements)]
        return FiniteGroup(central)

    def conjugacy_classes(self) -> list[frozenset[Permutation]]:
        seen = set()
        classes = []
        for p in self.elements:
            if p in seen:
                continue
            cls = frozenset(q * p * q.inverse() for q in self.elements)
            seen.update(cls)
            classes.append(cls)
        return classes

    def subgroups(self) -> list["FiniteGroup"]:
        """Every subgroup, by closure of incrementally extended generator sets."""
        trivial = frozenset({self.elements[self.identity_index]})
        found = {trivial}
        frontier = [trivial]
        while frontier:
            new = []
            for sub in frontier:
                for p in self.elements:
                    if p in sub:
                        continue
                    closure = _close_tuples(
                        [q.images for q in sub | {p}], self.degree, None)
                    bigger = frozenset(Permutation(t) for t in closure)
                    if bigger not in found:
                        found.add(bigger)
                        new.append(bigger)
            frontier = new
        groups = [FiniteGroup(s) for s in found]
        groups.sort(key=lambda g: (g.order(), [p.images for p in g.elements]))
        return groups

    def normal_subgroups(self) -> list["FiniteGroup"]:
        out = []
        for sub in self.subgroups():
            members = set(sub.elements)
            if all(q * p * q.inverse() in members
                   for p in sub.elements for q in self.elements):
                out.append(sub)
        return out

    def is_isomorphic_to(self, other: "FiniteGroup") -> bool:
        """Exhaustive generator-image search with order-profile pruning."""
        if self.order() != other.order():
            return False
        if self.order_profile() != other.order_profile():
            return False
        gens = self._small_generating_set()
        orders = [g.order() for g in gens]
        pools = [[q for q in other.elements if q.order() == o] for o in orders]
        for images in itertools.product(*pools):
            if self._extends_to_isomorphism(gens, images, other):
                return True
        return False

    def _small_generating_set(self) -> list[Permutation]:
        chosen: list[Permutation] = []
        span = {self.elements[self.identity_index]}
        while len(span) < self.order():
            best = None
            best_span = None
            for p in self.elements:
                if p in span:
                    continue
                closure = _close_tuples(
                    [q.images for q in list(span) + [p]], self.degree, None)
                if best_span is None or len(closure) > len(best_span):
                    best, best_span = p, closure
                    if len(closure) == self.order():
                        break
            chosen.append(best)
            span = {Permutation(t) for t in best_span}
        return chosen

    def _extends_to_isomorphism(self, gens, images, other) -> bool:
        mapping = {self.elements[self.identity_index]:
                   other.elements[other.identity_index]}
        frontier = [self.elements[self.identity_index]]
        while frontier:
            nxt = []
            for p in frontier:
                for g, h in zip(gens, images):
                    q = p * g
                    target = mapping[p] * h
                    if q in mapping:
                        if mapping[q] != target:
                            return False
                    else:
                        mapping[q] = target
                        nxt.append(q)
            frontier = nxt
        return len(mapping) == self.order() and len(set(mapping.values())) == self.order()


@dataclass(frozen=True)
class CosetSpace:
    """The left coset space X = G / G_L with canonical minimal representatives."""

    group: FiniteGroup
    stabilizer: FiniteGroup
    representatives: tuple[int, ...]      # coset index -> minimal G-element index
    coset_of: tuple[int, ...]             # G-element index -> coset index
    base_point: int                       # the coset of the identity

    @property
    def size(self) -> int:
        return len(self.representatives)


def build_coset_space(group: FiniteGroup, stabilizer: FiniteGroup) -> CosetSpace:
    """Partition G into left cosets of G_L, labelling each coset by the minimal
    element index it contains."""
    for p in stabilizer.elements:
        if p not in group:
            raise StructureError(
                f"stabilizer element {p} does not belong to the group")
    stab = [group.index_of(p) for p in stabilizer.elements]
    assigned = {}
    reps = []
    for i, p in enumerate(group.elements):
        if i in assigned:
            continue
        coset = len(reps)
        members = sorted(group.mul(i, s) for s in stab)
        if members[0] != i:
            # i was not minimal in its coset; the minimal member was visited first
            raise StructureError("coset partition is inconsistent")
        for m in members:
            if m in assigned:
                raise StructureError(
                    f"cosets overlap at element {group.elements[m]}; "
                    "stabilizer is not a subgroup")
        for m in members:
            assigned[m] = coset
        reps.append(i)
    coset_of = tuple(assigned[i] for i in range(group.order()))
    return CosetSpace(group, stabilizer, tuple(reps), coset_of,
                      coset_of[group.identity_index])


@dataclass(frozen=True)
class LambdaEmbedding:
    """The homomorphism G -> Perm(X) by left translation of cosets."""

    space: CosetSpace
    maps: tuple[Permutation, ...]         # G-element index -> permutation of X

    def of(self, g_index: int) -> Permutation:
        return self.maps[g_index]

    @property
    def generator_images(self) -> list[Permutation]:
        return [self.maps[i] for i in self.space.group.generators]

    def image(self) -> FiniteGroup:
        return FiniteGroup(self.maps, generators=self.generator_images)

    def kernel_size(self) -> int:
        ident = Permutation.identity(self.space.size)
        return sum(1 for p in self.maps if p == ident)


def left_translation_embedding(space: CosetSpace) -> LambdaEmbedding:
    group = space.group
    maps = []
    for i in range(group.order()):
        images = [0] * space.size
        for c, rep in enumerate(space.representatives):
            images[c] = space.coset_of[group.mul(i, rep)]
        maps.append(Permutation(images))
    emb = LambdaEmbedding(space, tuple(maps))
    for i in range(group.order()):
        for j in range(group.order()):
            if emb.maps[group.mul(i, j)] != emb.maps[i] * emb.maps[j]:
                raise StructureError("coset translation is not a homomorphism")
    orbit = {maps[i](space.base_point) for i in range(group.order())}
    if len(orbit) != space.size:
        raise StructureError("coset translation image is not transitive")
    return emb


class RegularSubgroup:
    """A regular subgroup N of Perm(X): order |X|, simply transitive."""

    __slots__ = ("elements", "point_to_element", "size")

    def __init__(self, elements, size: int):
        elems = sorted(set(elements))
        self.size = size
        if len(elems) != size:
            raise StructureError(
                f"regular subgroup on {size} points must have {size} elements, "
                f"got {len(elems)}")
        self.elements = tuple(elems)
        index = {p: None for p in elems}
        for p in elems:
            for q in elems:
                if p * q not in index:
                    raise StructureError("regular subgroup is not closed")

    def build_point_map(self, base: int) -> dict[int, Permutation]:
        """point -> the unique element sending the base point there."""
        table = {}
        for p in self.elements:
            target = p(base)
            if target in table:
                raise StructureError("subgroup is not simply transitive")
            table[target] = p
        if len(table) != self.size:
            raise StructureError("subgroup is not transitive")
        return table

    def as_group(self) -> FiniteGroup:
        return FiniteGroup(self.elements)

    def __eq__(self, other):
        return isinstance(other, RegularSubgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"RegularSubgroup({[list(p.images) for p in self.elements]})"

    def sort_key(self):
        return tuple(p.images for p in self.elements)


def is_regular(perms, space: CosetSpace) -> bool:
    """True iff the (verified) subgroup has order |X| and is transitive."""
    elems = sorted(set(perms))
    index = set(elems)
    for p in elems:
        for q in elems:
            if p * q not in index:
                raise StructureError(f"not closed under composition: {p} * {q}")
    if len(elems) != space.size:
        return False
    orbit = {p(space.base_point) for p in elems}
    return len(orbit) == space.size


def is_normalized_by(n: RegularSubgroup, lam: LambdaEmbedding) -> bool:
    members = set(n.elements)
    for g in lam.generator_images:
        ginv = g.inverse()
        for p in n.elements:
            if g * p * ginv not in members:
                return False
    return True


def _power_free_candidates(size: int):
    """Permutations whose cyclic group meets the base point freely: identity,
    or fixed-point-free with every nontrivial power fixed-point-free."""
    out = []
    for images in itertools.permutations(range(size)):
        if all(images[i] == i for i in range(size)):
            out.append(images)
            continue
        if any(images[i] == i for i in range(size)):
            continue
        power = images
        ok = True
        while True:
            power = tuple(images[i] for i in power)
            if all(power[i] == i for i in range(size)):
                break
            if any(power[i] == i for i in range(size)):
                ok = False
                break
        if ok:
            out.append(images)
    return out


def enumerate_regular_normalized(space: CosetSpace, lam: LambdaEmbedding,
                                 bound: int = ENUMERATION_BOUND) -> list[RegularSubgroup]:
    """All regular subgroups of Perm(X) normalized by the translation image,
    canonically ordered.

    The search picks, for each uncovered coset, the unique element carrying the
    base point there, then closes under composition and translation-conjugation,
    pruning branches whose closure exceeds |X| or meets the base point twice.
    """
    size = space.size
    if size > bound:
        raise CapabilityError(
            f"coset space of size {size} exceeds the enumeration bound {bound}")
    base = space.base_point
    identity = tuple(range(size))
    lam_gens = []
    for g in lam.generator_images:
        ginv = g.inverse()
        lam_gens.append((g.images, ginv.images))

    pool: dict[int, list[tuple[int, ...]]] = {}
    for cand in _power_free_candidates(size):
        if cand != identity:
            pool.setdefault(cand[base], []).append(cand)

    def close(seed: set[tuple[int, ...]]):
        group = set(seed)
        group.add(identity)
        frontier = list(group)
        while frontier:
            new = []
            for p in frontier:
                conjugates = [tuple(g[p[ginv[x]]] for x in range(size))
                              for g, ginv in lam_gens]
                others = itertools.chain(
                    (tuple(p[i] for i in q) for q in list(group)),
                    (tuple(q[i] for i in p) for q in list(group)),
                    conjugates)
                for prod in others:
                    if prod in group:
                        continue
                    if prod != identity and any(prod[i] == i for i in range(size)):
                        return None
                    group.add(prod)
                    new.append(prod)
                    if len(group) > size:
                        return None
            frontier = new
        return group

    results: set[frozenset] = set()

    def extend(group: set[tuple[int, ...]]):
        hits = {p[base] for p in group}
        if len(group) == size:
            results.add(frozenset(group))
            return
        target = min(c for c in range(size) if c not in hits)
        for cand in pool.get(target, []):
            bigger = close(group | {cand})
            if bigger is not None:
                extend(bigger)

    extend({identity})
    subgroups = [RegularSubgroup((Permutation(t) for t in g), size)
                 for g in results]
    subgroups.sort(key=RegularSubgroup.sort_key)
    return subgroups


def right_translation_subgroup(space: CosetSpace) -> RegularSubgroup:
    """The image of right translation h -> h g^{-1}; defined on the coset
    space only when the stabilizer is trivial (the classical structure)."""
    if space.stabilizer.order() != 1:
        raise StructureError(
            "right translation needs a trivial stabilizer (a Galois fixture)")
    group = space.group
    perms = []
    for g in range(group.order()):
        ginv = group.inv(g)
        perms.append(Permutation(
            space.coset_of[group.mul(space.representatives[c], ginv)]
            for c in range(space.size)))
    return RegularSubgroup(perms, space.size)


def opposite(n: RegularSubgroup, space: CosetSpace) -> RegularSubgroup:
    """The commuting partner of N: built pointwise from the simple-transitivity
    table, sending each coset g to (element over g)(eta(base))."""
    base = space.base_point
    table = n.build_point_map(base)
    partners = []
    for eta in n.elements:
        anchor = eta(base)
        partners.append(Permutation(table[g](anchor) for g in range(n.size)))
    result = RegularSubgroup(partners, n.size)
    result.build_point_map(base)  # must again be simply transitive
    return result


def centralizer_bruteforce(n: RegularSubgroup, space: CosetSpace,
                           bound: int = ENUMERATION_BOUND) -> tuple[Permutation, ...]:
    """Exact centralizer of N in the full symmetric group on X, by scanning
    every permutation; the oracle for `opposite`."""
    size = space.size
    if size > bound:
        raise CapabilityError(
            f"coset space of size {size} exceeds the brute-force bound {bound}")
    members = [p.images for p in n.elements]
    out = []
    for images in itertools.permutations(range(size)):
        if all(tuple(images[q[i]] for i in range(size))
               == tuple(q[images[i]] for i in range(size)) for q in members):
            out.append(Permutation(images))
    return tuple(sorted(out))


@dataclass(frozen=True)
class GroupFacts:
    center: FiniteGroup
    normal_subgroups: list[FiniteGroup]
    abelian: bool
    iso_class: tuple


def group_queries(group: FiniteGroup) -> GroupFacts:
    """Center, all normal subgroups, abelianness, and a canonical invariant
    (order and element-order profile; full isomorphism needs the search)."""
    if group.order() > GROUP_QUERY_BOUND:
        raise CapabilityError(
            f"group of order {group.order()} exceeds the query bound {GROUP_QUERY_BOUND}")
    center = group.center()
    normal = group.normal_subgroups()
    abelian = center.order() == group.order()
    iso_class = (group.order(), group.order_profile(), abelian)
    return GroupFacts(center, normal, abelian, iso_class)


def metacyclic_group(r: int, q: int, d: int) -> tuple[FiniteGroup, Permutation, Permutation]:
    """The split metacyclic group <s, t | s^r = t^q = 1, t s = s^d t> as its
    right-regular permutation representation on the q*r normal forms s^i t^j.

    Returns (group, image of s, image of t).  The presentation defines a group
    of order q*r exactly when d^q = 1 (mod r); anything else is rejected.
    """
    if r < 1 or q < 1:
        raise StructureError("metacyclic parameters must be positive")
    if pow(d, q, r) != 1 % r:
        raise StructureError(
            f"inconsistent presentation: {d}^{q} is not 1 modulo {r}")
    n = q * r

    def idx(i, j):
        return (i % r) * q + (j % q)

    def mul(a, b):
        ia, ja = divmod(a, q)
        ib, jb = divmod(b, q)
        return idx(ia + ib * pow(d, ja, r), ja + jb)

    def left_mult(a):
        return Permutation(mul(a, b) for b in range(n))

    elems = [left_mult(a) for a in range(n)]
    s_perm = left_mult(idx(1, 0))
    t_perm = left_mult(idx(0, 1))
    group = FiniteGroup(elems, generators=[s_perm, t_perm])
    if group.order() != n:
        raise StructureError("presentation closure has the wrong order")
    # relations must hold in the representation
    e = Permutation.identity(n)
    s_r = e
    for _ in range(r):
        s_r = s_r * s_perm
    t_q = e
    for _ in range(q):
        t_q = t_q * t_perm
    s_d = e
    for _ in range(d):
        s_d = s_d * s_perm
    if s_r != e or t_q != e or t_perm * s_perm != s_d * t_perm:
        raise StructureError("presentation relations fail in the representation")
    return group, s_perm, t_perm
