"""Finite permutation groups by explicit enumeration.

Permutations act on the right, as in GAP: ``(a * b)(i) = b(a(i))``.
Points are 1..n in text and 0..n-1 internally. Every group handled here is
small enough to list, so classes, cosets and normalizers come from plain
orbit computations rather than stabilizer chains.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import factorial

DEFAULT_ORDER_BOUND = 10**7


class GroupTooLargeError(RuntimeError):
    def __init__(self, bound, partial):
        super().__init__(f"group order exceeds {bound} (enumerated {partial} elements)")
        self.bound = bound
        self.partial = partial


# ---------------------------------------------------------------------------
# permutations and cycle types

def _compose(a, b):
    return tuple(b[i] for i in a)


def _inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _cycle_type(a):
    seen = [False] * len(a)
    parts = []
    for i in range(len(a)):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                k += 1
            parts.append(k)
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images_1based):
        imgs = tuple(i - 1 for i in images_1based)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection: {images_1based}")
        return cls(imgs)

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Disjoint-cycle notation such as ``(1 2 3)(4 5)``; ``()`` is the identity."""
        imgs = list(range(n))
        if not re.fullmatch(r"\s*(\([0-9,\s]*\)\s*)*", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        seen = set()
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            for a in pts:
                if not 1 <= a <= n or a in seen:
                    raise ValueError(f"bad point {a} in {text!r}")
                seen.add(a)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                imgs[a - 1] = b - 1
        return cls(tuple(imgs))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of the 1-based point i."""
        return self.images[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_inverse(self.images))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def cycle_type(self) -> tuple:
        return _cycle_type(self.images)

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type())

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def is_even(self) -> bool:
        return sum(k - 1 for k in self.cycle_type()) % 2 == 0

    def cycles(self):
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = []
            j = i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cs = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"

    def __repr__(self):
        return f"Permutation('{self}')"


def format_cycle_type(ct) -> str:
    """Descending partition -> ``1^3 2^2`` style text (ascending parts)."""
    c = Counter(ct)
    return " ".join(f"{k}^{c[k]}" if c[k] > 1 else f"{k}" for k in sorted(c))


def parse_cycle_type(text: str) -> tuple:
    parts = []
    for tok in text.replace("·", " ").replace("*", " ").split():
        if "^" in tok:
            k, m = tok.split("^")
            parts += [int(k)] * int(m)
        else:
            parts.append(int(tok))
    return tuple(sorted(parts, reverse=True))


# ---------------------------------------------------------------------------
# groups

class PermGroupSpec:
    """A permutation group given by generators.

    Element-level data is computed on first use and cached; a group is never
    mutated after construction.
    """

    def __init__(self, degree, generators, label=None, name=None, order_bound=DEFAULT_ORDER_BOUND):
        self.degree = degree
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = Permutation.parse(g, degree)
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            gens.append(g)
        self.generators = tuple(gens)
        self.label = label
        self.name = name
        self.order_bound = order_bound

    def __repr__(self):
        tag = self.label or "group"
        return f"<{tag} degree {self.degree} on {len(self.generators)} generators>"

    @cached_property
    def _element_tuples(self):
        n = self.degree
        ident = tuple(range(n))
        gens = [g.images for g in self.generators if not g.is_identity()]
        seen = {ident}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > self.order_bound:
                        raise GroupTooLargeError(self.order_bound, len(seen))
                    queue.append(y)
        return frozenset(seen)

    def elements(self):
        return frozenset(Permutation(t) for t in self._element_tuples)

    @property
    def order(self) -> int:
        return len(self._element_tuples)

    def __contains__(self, g) -> bool:
        if isinstance(g, Permutation):
            g = g.images
        return g in self._element_tuples

    def is_transitive(self) -> bool:
        orbit = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for g in self.generators:
                j = g.images[i]
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(j)
        return len(orbit) == self.degree

    def is_even(self) -> bool:
        return all(g.is_even() for g in self.generators)

    @cached_property
    def cycle_types(self) -> Counter:
        return Counter(_cycle_type(x) for x in self._element_tuples)

    def cycle_type_support(self) -> frozenset:
        return frozenset(self.cycle_types)

    @cached_property
    def _classes(self):
        """Conjugacy classes as a list of frozensets of tuples, sorted by (order, type, min)."""
        gens = [g.images for g in self.generators]
        ginv = [_inverse(g) for g in gens]
        remaining = set(self._element_tuples)
        classes = []
        while remaining:
            x = min(remaining)
            cls = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for g, gi in zip(gens, ginv):
                    z = _compose(_compose(gi, y), g)
                    if z not in cls:
                        cls.add(z)
                        frontier.append(z)
            remaining -= cls
            classes.append(frozenset(cls))

        def key(c):
            r = min(c)
            return (Permutation(r).order(), _cycle_type(r), len(c), r)

        classes.sort(key=key)
        return classes

    def conjugacy_classes(self):
        """List of (representative, size) in a deterministic order."""
        return [(Permutation(min(c)), len(c)) for c in self._classes]

    def class_index(self, g) -> int:
        t = g.images if isinstance(g, Permutation) else g
        for i, c in enumerate(self._classes):
            if t in c:
                return i
        raise ValueError(f"{g} is not in the group")

    def subgroup(self, generators, label=None) -> "PermGroupSpec":
        H = PermGroupSpec(self.degree, generators, label=label, order_bound=self.order_bound)
        for g in H.generators:
            if g not in self:
                raise ValueError(f"{g} is not in the group")
        return H

    def stabilizer(self, point: int) -> "PermGroupSpec":
        """Point stabilizer of the 1-based point, with all its elements as generators."""
        els = [Permutation(t) for t in self._element_tuples if t[point - 1] == point - 1]
        return PermGroupSpec(self.degree, _small_generating_set(els, self.degree),
                             order_bound=self.order_bound)

    def normalizes(self, g) -> bool:
        gi = _inverse(g.images)
        return all(_compose(_compose(gi, s.images), g.images) in self._element_tuples
                   for s in self.generators)


def _small_generating_set(elements, degree):
    """Greedy generating set for the group consisting of ``elements``."""
    target = len(set(e.images for e in elements))
    gens = []
    span = {tuple(range(degree))}
    for e in sorted(elements, key=lambda p: (-p.order(), p.images)):
        if e.images in span:
            continue
        gens.append(e)
        span = PermGroupSpec(degree, gens)._element_tuples
        if len(span) == target:
            break
    return gens or [Permutation.identity(degree)]


def group_elements(G: PermGroupSpec):
    return G.elements()


def cycle_type_distribution(G: PermGroupSpec) -> dict:
    """Cycle type (descending tuple) -> number of elements."""
    return dict(sorted(G.cycle_types.items()))


def symmetric_group(n: int) -> PermGroupSpec:
    if n == 1:
        return PermGroupSpec(1, [Permutation.identity(1)], label="1T1", name="S1")
    gens = [Permutation(tuple(list(range(1, n)) + [0]))]
    gens.append(Permutation(tuple([1, 0] + list(range(2, n)))))
    return PermGroupSpec(n, gens, name=f"S{n}")


def alternating_group(n: int) -> PermGroupSpec:
    gens = []
    for i in range(2, n):
        imgs = list(range(n))
        imgs[0], imgs[1], imgs[i] = 1, i, 0
        gens.append(Permutation(tuple(imgs)))
    return PermGroupSpec(n, gens or [Permutation.identity(n)], name=f"A{n}")


# ---------------------------------------------------------------------------
# normalizers and fusion of involution classes

def normalizer_in_symmetric(G: PermGroupSpec, max_degree: int = 9) -> PermGroupSpec:
    """N_{S_n}(G) by exhaustive search over S_n (degree <= max_degree)."""
    n = G.degree
    if n > max_degree:
        raise ValueError(f"brute-force normalizer limited to degree {max_degree}")
    gens = [s.images for s in G.generators]
    els = G._element_tuples
    # a normalizing element maps each generator to an element of equal cycle type
    found = []
    for perm in itertools.permutations(range(n)):
        pinv = _inverse(perm)
        if all(_compose(_compose(pinv, s), perm) in els for s in gens):
            found.append(Permutation(perm))
    return PermGroupSpec(n, _small_generating_set(found, n), name="N(G)")


@dataclass(frozen=True)
class FusedClass:
    cycle_type: tuple
    class_ids: tuple
    representative: Permutation

    def __str__(self):
        return f"{format_cycle_type(self.cycle_type)} (classes {', '.join(map(str, self.class_ids))})"


@dataclass(frozen=True)
class FusionResult:
    classes: tuple  # of FusedClass
    fused: bool = True  # False when no normalizer was available

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def involution_classes_fused(G: PermGroupSpec, normalizer: PermGroupSpec | None = None,
                             max_degree: int = 9) -> FusionResult:
    """Classes of elements of order 1 or 2, merged when the normalizer of G in S_n
    swaps them.

    Above ``max_degree`` a normalizer must be supplied; otherwise the classes
    come back unfused with ``fused=False``.
    """
    fused = True
    if normalizer is None:
        if G.degree <= max_degree:
            normalizer = normalizer_in_symmetric(G, max_degree)
        else:
            fused = False
    ids = [i for i, c in enumerate(G._classes) if Permutation(min(c)).order() <= 2]
    parent = {i: i for i in ids}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if normalizer is not None:
        lookup = {}
        for i in ids:
            for t in G._classes[i]:
                lookup[t] = i
        for nu in normalizer.generators:
            ni = _inverse(nu.images)
            for i in ids:
                rep = min(G._classes[i])
                j = lookup[_compose(_compose(ni, rep), nu.images)]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups = {}
    for i in ids:
        groups.setdefault(find(i), []).append(i)
    out = []
    for root in sorted(groups):
        rep = Permutation(min(G._classes[root]))
        out.append(FusedClass(rep.cycle_type(), tuple(groups[root]), rep))
    return FusionResult(tuple(out), fused)


# ---------------------------------------------------------------------------
# coset actions, splitting and discriminant transfer

class CosetAction:
    """Right action of G on the right cosets Hg."""

    def __init__(self, G: PermGroupSpec, H: PermGroupSpec):
        for g in H.generators:
            if g not in G:
                raise ValueError("H is not a subgroup of G")
        self.G, self.H = G, H
        hel = list(H._element_tuples)
        index = {}
        reps = []
        for g in sorted(G._element_tuples):
            if g in index:
                continue
            k = len(reps)
            reps.append(g)
            for h in hel:
                index[_compose(h, g)] = k
        self._index = index
        self.reps = reps

    @property
    def size(self) -> int:
        return len(self.reps)

    def image(self, g) -> tuple:
        """The permutation induced by g on coset indices."""
        t = g.images if isinstance(g, Permutation) else g
        return tuple(self._index[_compose(r, t)] for r in self.reps)

    def permutation(self, g) -> Permutation:
        return Permutation(self.image(g))


def _orbits(perms, size):
    seen = [False] * size
    out = []
    for i in range(size):
        if seen[i]:
            continue
        orb = [i]
        seen[i] = True
        k = 0
        while k < len(orb):
            x = orb[k]
            k += 1
            for p in perms:
                y = p[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(orb)
    return out


def splitting_prediction(G: PermGroupSpec, H: PermGroupSpec, D: PermGroupSpec, I) -> list:
    """(e_i, f_i) for the primes of the fixed field of H, given decomposition
    group D and inertia generators I (tame case, D/I cyclic).

    The D-orbits on G/H are the primes; inside one orbit the I-orbits all
    have the ramification index as their size, and their number is the
    residue degree.
    """
    I = list(I.generators if isinstance(I, PermGroupSpec) else I) or [Permutation.identity(G.degree)]
    for g in D.generators:
        if g not in G:
            raise ValueError("D is not contained in G")
    for g in I:
        if g not in D:
            raise ValueError("I is not contained in D")
    Igrp = PermGroupSpec(G.degree, I)
    for d in D.generators:
        if not Igrp.normalizes(d):
            raise ValueError("I is not normal in D")
    act = CosetAction(G, H)
    dperm = [act.image(g) for g in D.generators]
    iperm = [act.image(g) for g in I]
    out = []
    for orb in _orbits(dperm, act.size):
        sub = set(orb)
        iorbs = [o for o in _orbits(iperm, act.size) if o[0] in sub]
        e = len(iorbs[0])
        out.append((e, len(iorbs)))
    return sorted(out, reverse=True)


def ind(pi: Permutation, H: PermGroupSpec, G: PermGroupSpec | None = None, action: CosetAction | None = None) -> int:
    """[G:H] minus the number of orbits of pi on G/H."""
    if action is None:
        if G is None:
            raise ValueError("G or a coset action is required")
        action = CosetAction(G, H)
    if pi not in action.G:
        raise ValueError(f"{pi} is not in G")
    return action.size - len(_orbits([action.image(pi)], action.size))


@dataclass(frozen=True)
class TransferRow:
    representative: Permutation
    type1: tuple
    type2: tuple
    ind1: int
    ind2: int
    classes: int = 1

    def __str__(self):
        return (f"{format_cycle_type(self.type1):<12} {format_cycle_type(self.type2):<12} "
                f"{self.ind1:>3} {self.ind2:>3}")


def normalizer_in(G: PermGroupSpec, H: PermGroupSpec) -> PermGroupSpec:
    """Elements of G normalizing H, as a subgroup of G."""
    gens = [Permutation(x) for x in G._element_tuples if H.normalizes(Permutation(x))]
    return PermGroupSpec(G.degree, _small_generating_set(gens, G.degree))


def transfer_table(G: PermGroupSpec, H1: PermGroupSpec, H2: PermGroupSpec, merge: bool = True):
    """Cycle types and index contributions of each class of G on G/H1 and G/H2.

    With ``merge`` the classes that give identical rows (for instance the two
    classes of 7-cycles in L2(7)) are listed once, with a class count.
    """
    a1, a2 = CosetAction(G, H1), CosetAction(G, H2)
    for a in (a1, a2):
        if _kernel_size(G, a) != 1:
            raise ValueError("coset action is not faithful")
    rows = []
    for rep, _ in G.conjugacy_classes():
        p1, p2 = a1.permutation(rep), a2.permutation(rep)
        rows.append(TransferRow(rep, p1.cycle_type(), p2.cycle_type(),
                                ind(rep, H1, action=a1), ind(rep, H2, action=a2)))
    if merge:
        merged = {}
        order = []
        for r in rows:
            k = (r.type1, r.type2)
            if k in merged:
                m = merged[k]
                merged[k] = TransferRow(m.representative, m.type1, m.type2, m.ind1, m.ind2, m.classes + 1)
            else:
                merged[k] = r
                order.append(k)
        rows = [merged[k] for k in order]
    return rows


def _kernel_size(G, action):
    ident = tuple(range(action.size))
    return sum(1 for g in G._element_tuples if action.image(g) == ident)


# ---------------------------------------------------------------------------
# embedded transitive groups

@dataclass
class TransitiveGroup:
    label: str
    degree: int
    order: int
    name: str
    generators: list
    contains: list = field(default_factory=list)

    @cached_property
    def group(self) -> PermGroupSpec:
        return PermGroupSpec(self.degree, self.generators, label=self.label, name=self.name)

    @property
    def number(self) -> int:
        return int(self.label.split("T")[1])

    def is_even(self) -> bool:
        return self.group.is_even()

    def cycle_type_support(self) -> frozenset:
        return self.group.cycle_type_support()


_TABLE_CACHE: dict = {}


def _load_table():
    if _TABLE_CACHE:
        return _TABLE_CACHE
    text = resources.files("fieldforge.data").joinpath("transitive_groups.txt").read_text()
    block = []
    for line in text.splitlines() + [""]:
        if line.startswith("#"):
            continue
        if line.strip():
            block.append(line.strip())
            continue
        if not block:
            continue
        head = block[0].split(maxsplit=3)
        label, deg, order = head[0], int(head[1]), int(head[2])
        name = head[3] if len(head) > 3 else label
        gens = []
        contains = []
        for ln in block[1:]:
            if ln.startswith("contains"):
                contains = ln.split()[1:]
            else:
                gens.append(Permutation.parse(ln, deg))
        _TABLE_CACHE.setdefault(deg, []).append(TransitiveGroup(label, deg, order, name, gens, contains))
        block = []
    return _TABLE_CACHE


def transitive_table(n: int):
    """Transitive groups of degree n (2 <= n <= 8), in nTk order."""
    if not 2 <= n <= 8:
        raise ValueError("embedded transitive groups cover degrees 2..8 only")
    return list(_load_table()[n])


def transitive_group(label: str) -> TransitiveGroup:
    n = int(label.split("T")[0])
    for t in transitive_table(n):
        if t.label == label:
            return t
    raise KeyError(label)


def fused_class_count(n: int) -> int:
    """Total number of fused order-<=2 classes over the transitive groups of degree n."""
    return sum(len(involution_classes_fused(t.group)) for t in transitive_table(n))


def index_divides_factorial(G: PermGroupSpec) -> bool:
    return factorial(G.degree) % G.order == 0
