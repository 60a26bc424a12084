"""Concrete connected Hopf monoids and the canonical morphisms between them.

Product and coproduct are given on basis structures for decompositions with
both parts nonempty; the empty-side cases are the canonical identifications
forced by connectedness and are handled once in HopfMonoid. All the monoids
built here are linearized: structure maps send basis elements to basis
elements (or to zero, for coproducts with an admissibility condition).

Coproducts of the partition and composition monoids are plain restriction,
which together with the union/concatenation products passes the full axiom
suite and gives the expected generating series.
"""

from __future__ import annotations

import itertools

from .species import (EMPTY, Element, FiniteSet, FunctionToK, LinearOrder,
                      PairStructure, PalComposition, QTensor, QVector,
                      SetComposition, SetPartition, SingletonMark,
                      SpeciesSpec, Structure, hadamard)


class HopfMonoid:
    """A species with product mu_{S,T} and coproduct Delta_{S,T} on basis
    elements, returning exact-rational vectors / tensors.

    Structure maps are pure, so evaluations are memoized; the cached values
    are immutable and safe to share.
    """

    def __init__(self, species: SpeciesSpec, mu, delta, name: str | None = None):
        self.species = species
        self.name = name or species.name
        self._mu = mu        # (S, T, x, y) -> QVector on S u T; S, T nonempty
        self._delta = delta  # (S, T, s) -> QTensor on (S, T); S, T nonempty
        self._mu_cache: dict = {}
        self._delta_cache: dict = {}

    def one(self) -> Structure:
        structs = self.species.structures(EMPTY)
        if len(structs) != 1:
            raise ValueError("%s is not connected: dim at the empty set is %d"
                             % (self.name, len(structs)))
        return structs[0]

    def product(self, S: FiniteSet, T: FiniteSet, x: Structure, y: Structure) -> QVector:
        if len(S) == 0:
            return QVector.basis(y)
        if len(T) == 0:
            return QVector.basis(x)
        key = (S.labels, x, y)
        got = self._mu_cache.get(key)
        if got is None:
            got = self._mu(S, T, x, y)
            self._mu_cache[key] = got
        return got

    def coproduct(self, S: FiniteSet, T: FiniteSet, s: Structure) -> QTensor:
        if len(S) == 0:
            return QTensor.basis(self.one(), s)
        if len(T) == 0:
            return QTensor.basis(s, self.one())
        key = (S.labels, s)
        got = self._delta_cache.get(key)
        if got is None:
            got = self._delta(S, T, s)
            self._delta_cache[key] = got
        return got

    def __repr__(self):
        return "HopfMonoid(%s)" % self.name


def product_vectors(h: HopfMonoid, S, T, xv: QVector, yv: QVector) -> QVector:
    """mu_{S,T} extended linearly to vectors."""
    out = QVector.zero(S.union(T))
    for x, cx in xv.terms.items():
        for y, cy in yv.terms.items():
            out = out + h.product(S, T, x, y).scale(cx * cy)
    return out


def product_tensor(h: HopfMonoid, t: QTensor) -> QVector:
    out = QVector.zero(t.left.union(t.right))
    for (x, y), c in t.terms.items():
        out = out + h.product(t.left, t.right, x, y).scale(c)
    return out


def coproduct_vector(h: HopfMonoid, S, T, v: QVector) -> QTensor:
    """Delta_{S,T} extended linearly to vectors."""
    out = QTensor.zero(S, T)
    for s, c in v.terms.items():
        out = out + h.coproduct(S, T, s).scale(c)
    return out


def iterated_product(h: HopfMonoid, parts, vectors) -> QVector:
    """mu applied left-to-right over a sequence of disjoint supports."""
    parts = list(parts)
    vectors = list(vectors)
    acc_support, acc = parts[0], vectors[0]
    for S, v in zip(parts[1:], vectors[1:]):
        acc = product_vectors(h, acc_support, S, acc, v)
        acc_support = acc_support.union(S)
    return acc


class HopfMorphism:
    """A morphism of Hopf monoids, given on basis structures and extended
    linearly; naturality in the label set is part of the contract."""

    def __init__(self, name: str, source: HopfMonoid, target: HopfMonoid, on_basis):
        self.name = name
        self.source = source
        self.target = target
        self._on_basis = on_basis

    def on_basis(self, s: Structure) -> QVector:
        return self._on_basis(s)

    def __call__(self, v: QVector) -> QVector:
        out = QVector.zero(v.ambient)
        for s, c in v.terms.items():
            out = out + self._on_basis(s).scale(c)
        return out

    def __repr__(self):
        return "HopfMorphism(%s)" % self.name


# ---------------------------------------------------------------------------
# The exponential monoid E, the singleton species X, linear orders L
# ---------------------------------------------------------------------------

def make_E() -> HopfMonoid:
    sp = SpeciesSpec("E", lambda I: [SingletonMark(I)])

    def mu(S, T, x, y):
        return QVector.basis(SingletonMark(S.union(T)))

    def delta(S, T, s):
        return QTensor.basis(SingletonMark(S), SingletonMark(T))

    return HopfMonoid(sp, mu, delta)


def make_X() -> HopfMonoid:
    """The species of singletons. Not connected (empty set carries nothing);
    it exists as the primitive part of E and fails check_connected."""
    sp = SpeciesSpec("X", lambda I: [SingletonMark(I)] if len(I) == 1 else [])

    def mu(S, T, x, y):
        return QVector.zero(S.union(T))

    def delta(S, T, s):
        return QTensor.zero(S, T)

    return HopfMonoid(sp, mu, delta)


def make_L() -> HopfMonoid:
    sp = SpeciesSpec(
        "L", lambda I: [LinearOrder(p) for p in itertools.permutations(tuple(I))])

    def mu(S, T, x, y):
        return QVector.basis(LinearOrder(x.seq + y.seq))

    def delta(S, T, s):
        return QTensor.basis(s.restrict(S), s.restrict(T))

    return HopfMonoid(sp, mu, delta)


# ---------------------------------------------------------------------------
# Set partitions
# ---------------------------------------------------------------------------

def set_partitions(I: FiniteSet):
    toks = tuple(I)
    if not toks:
        yield SetPartition(())
        return

    def rec(rest, blocks):
        if not rest:
            yield SetPartition(blocks)
            return
        head, tail = rest[0], rest[1:]
        for i in range(len(blocks)):
            yield from rec(tail, blocks[:i] + [blocks[i] + (head,)] + blocks[i + 1:])
        yield from rec(tail, blocks + [(head,)])

    yield from rec(toks, [])


def make_Pi() -> HopfMonoid:
    sp = SpeciesSpec("Pi", set_partitions)

    def mu(S, T, x, y):
        return QVector.basis(SetPartition(x.blocks + y.blocks))

    def delta(S, T, s):
        return QTensor.basis(s.restrict(S), s.restrict(T))

    return HopfMonoid(sp, mu, delta)


def make_PiPrime() -> SpeciesSpec:
    """Set partitions with pairwise distinct block sizes. A species only:
    no Hopf structure is provided, and none exists on this basis."""

    def enum(I):
        for p in set_partitions(I):
            sizes = [len(b) for b in p.blocks]
            if len(set(sizes)) == len(sizes):
                yield p

    return SpeciesSpec("PiPrime", enum)


def closed_sizes(generators, max_size: int) -> frozenset:
    """All sums of the generators up to max_size: the block-size support of
    the additive submonoid they generate."""
    gens = sorted(set(int(g) for g in generators))
    if not gens or gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    reach = {0}
    for v in range(1, max_size + 1):
        if any(v - g in reach for g in gens if v >= g):
            reach.add(v)
    return frozenset(v for v in reach if v > 0)


def make_PiS(allowed, max_size: int = 9) -> HopfMonoid:
    """Quotient of Pi onto partitions with all block sizes in `allowed`.

    `allowed` must be closed under addition within the working window, i.e.
    be a numerical submonoid there; otherwise restriction-then-project is
    not coassociative. Product is union followed by projection (which never
    leaves the basis) and coproduct is restriction followed by projection.
    """
    allowed = frozenset(int(s) for s in allowed)
    if not allowed or min(allowed) <= 0:
        raise ValueError("allowed block sizes must be positive")
    for i in allowed:
        for j in allowed:
            if i + j <= max_size and i + j <= max(allowed) and i + j not in allowed:
                raise ValueError(
                    "sizes %r are not closed under addition (%d+%d)" % (sorted(allowed), i, j))
    name = "PiS:" + ",".join(str(s) for s in sorted(allowed))

    def ok(p: SetPartition) -> bool:
        return all(len(b) in allowed for b in p.blocks)

    def enum(I):
        return [p for p in set_partitions(I) if ok(p)]

    sp = SpeciesSpec(name, enum)

    def mu(S, T, x, y):
        merged = SetPartition(x.blocks + y.blocks)
        return QVector.basis(merged) if ok(merged) else QVector.zero(S.union(T))

    def delta(S, T, s):
        left, right = s.restrict(S), s.restrict(T)
        if ok(left) and ok(right):
            return QTensor.basis(left, right)
        return QTensor.zero(S, T)

    return HopfMonoid(sp, mu, delta)


def make_Pi_even(max_size: int = 9) -> HopfMonoid:
    return make_PiS(closed_sizes([2], max_size), max_size)


# ---------------------------------------------------------------------------
# Set compositions and palindromic set compositions
# ---------------------------------------------------------------------------

def set_compositions(I: FiniteSet, cls=SetComposition):
    toks = tuple(I)
    if not toks:
        yield cls(())
        return
    n = len(toks)
    for first_size in range(1, n + 1):
        for first in itertools.combinations(toks, first_size):
            rest = FiniteSet(t for t in toks if t not in first)
            for tail in set_compositions(rest, SetComposition):
                try:
                    yield cls((first,) + tail.blocks)
                except ValueError:
                    continue


def make_Sigma() -> HopfMonoid:
    sp = SpeciesSpec("Sigma", set_compositions)

    def mu(S, T, x, y):
        return QVector.basis(SetComposition(x.blocks + y.blocks))

    def delta(S, T, s):
        return QTensor.basis(s.restrict(S), s.restrict(T))

    return HopfMonoid(sp, mu, delta)


def pal_split(F: PalComposition):
    """The triple (initial blocks, central block or (), final blocks)."""
    r = len(F.blocks)
    half = r // 2
    center = F.blocks[half] if r % 2 else ()
    return F.blocks[:half], center, F.blocks[r - half:]


def pal_admissible(F: PalComposition, S) -> bool:
    S = set(S)
    r = len(F.blocks)
    return all(
        sum(1 for t in F.blocks[i] if t in S)
        == sum(1 for t in F.blocks[r - 1 - i] if t in S)
        for i in range(r))


def make_Pal() -> HopfMonoid:
    def enum(I):
        for c in set_compositions(I):
            w = c.size_word()
            if w == w[::-1]:
                yield PalComposition(c.blocks)

    sp = SpeciesSpec("Pal", enum)

    def mu(S, T, x, y):
        # concatenate initial runs, merge central blocks, concatenate final
        # runs in the opposite order
        xinit, xc, xfin = pal_split(x)
        yinit, yc, yfin = pal_split(y)
        center = tuple(sorted(xc + yc))
        blocks = xinit + yinit + ((center,) if center else ()) + yfin + xfin
        return QVector.basis(PalComposition(blocks))

    def delta(S, T, s):
        if not pal_admissible(s, S):
            return QTensor.zero(S, T)
        return QTensor.basis(PalComposition(s.restrict(S).blocks),
                             PalComposition(s.restrict(T).blocks))

    return HopfMonoid(sp, mu, delta)


# ---------------------------------------------------------------------------
# Cauchy powers of E, and the species of elements
# ---------------------------------------------------------------------------

def make_Ek(k: int) -> HopfMonoid:
    """The k-th Cauchy power of E: basis the functions I -> {1..k};
    product glues graphs of functions with disjoint domains."""
    if k < 0:
        raise ValueError("k must be a nonnegative integer")

    def enum(I):
        toks = tuple(I)
        if not toks:
            return [FunctionToK({}, k)]
        return [FunctionToK(dict(zip(toks, values)), k)
                for values in itertools.product(range(1, k + 1), repeat=len(toks))]

    sp = SpeciesSpec("Ek:%d" % k, enum)

    def mu(S, T, x, y):
        return QVector.basis(FunctionToK(dict(x.mapping) | dict(y.mapping), k))

    def delta(S, T, s):
        return QTensor.basis(s.restrict(S), s.restrict(T))

    return HopfMonoid(sp, mu, delta)


def make_el() -> SpeciesSpec:
    """The species of elements: the label set itself is the basis. Species
    only; its dimension sequence rules out any Hopf monoid structure."""
    return SpeciesSpec("el", lambda I: [Element(I, t) for t in I])


def hadamard_hopf(a: HopfMonoid, b: HopfMonoid) -> HopfMonoid:
    """Componentwise structure maps on pair structures."""
    sp = hadamard(a.species, b.species)

    def mu(S, T, x, y):
        u = a.product(S, T, x.left, y.left)
        v = b.product(S, T, x.right, y.right)
        I = S.union(T)
        out = {}
        for s1, c1 in u.terms.items():
            for s2, c2 in v.terms.items():
                key = PairStructure(s1, s2)
                out[key] = out.get(key, 0) + c1 * c2
        return QVector(I, out)

    def delta(S, T, s):
        u = a.coproduct(S, T, s.left)
        v = b.coproduct(S, T, s.right)
        out = {}
        for (x1, y1), c1 in u.terms.items():
            for (x2, y2), c2 in v.terms.items():
                key = (PairStructure(x1, x2), PairStructure(y1, y2))
                out[key] = out.get(key, 0) + c1 * c2
        return QTensor(S, T, out)

    return HopfMonoid(sp, mu, delta, name="Hadamard(%s,%s)" % (a.name, b.name))


# ---------------------------------------------------------------------------
# Canonical morphisms
# ---------------------------------------------------------------------------

def morphism_L_to_E(L: HopfMonoid | None = None, E: HopfMonoid | None = None) -> HopfMorphism:
    """Collapse every linear order to the canonical basis element."""
    L = L or make_L()
    E = E or make_E()
    return HopfMorphism("L->E", L, E,
                        lambda s: QVector.basis(SingletonMark(s.labels)))


def morphism_E_to_Pi(E: HopfMonoid | None = None, Pi: HopfMonoid | None = None) -> HopfMorphism:
    """Embed E as the partitions into singletons."""
    E = E or make_E()
    Pi = Pi or make_Pi()
    return HopfMorphism("E->Pi", E, Pi,
                        lambda s: QVector.basis(SetPartition((t,) for t in s.labels)))


def morphism_L_to_Sigma(L: HopfMonoid | None = None,
                        Sigma: HopfMonoid | None = None) -> HopfMorphism:
    """View a linear order as a composition into singleton blocks."""
    L = L or make_L()
    Sigma = Sigma or make_Sigma()
    return HopfMorphism("L->Sigma", L, Sigma,
                        lambda s: QVector.basis(SetComposition((t,) for t in s.seq)))


def morphism_Ek_to_Ek1(k: int, source: HopfMonoid | None = None,
                       target: HopfMonoid | None = None) -> HopfMorphism:
    """Postcompose with the inclusion {1..k} into {1..k+1} sending i to i."""
    source = source or make_Ek(k)
    target = target or make_Ek(k + 1)
    return HopfMorphism("Ek:%d->Ek:%d" % (k, k + 1), source, target,
                        lambda s: QVector.basis(FunctionToK(dict(s.mapping), k + 1)))


def morphism_Pi_to_PiS(allowed, Pi: HopfMonoid | None = None,
                       PiS: HopfMonoid | None = None) -> HopfMorphism:
    """Project a partition onto the quotient basis, killing partitions with
    a block size outside `allowed`."""
    Pi = Pi or make_Pi()
    PiS = PiS or make_PiS(allowed)
    allowed = frozenset(int(s) for s in allowed)

    def on_basis(s):
        if all(len(b) in allowed for b in s.blocks):
            return QVector.basis(s)
        return QVector.zero(s.labels)

    return HopfMorphism("Pi->%s" % PiS.name, Pi, PiS, on_basis)


# ---------------------------------------------------------------------------
# Identifier registry (CLI surface)
# ---------------------------------------------------------------------------

def get_species(ident: str) -> SpeciesSpec:
    ident = ident.strip()
    if ident.startswith("Hadamard(") and ident.endswith(")"):
        inner = ident[len("Hadamard("):-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return hadamard(get_species(inner[:i]), get_species(inner[i + 1:]))
        raise ValueError("malformed Hadamard identifier: %r" % ident)
    if ident == "PiPrime":
        return make_PiPrime()
    if ident == "el":
        return make_el()
    return get_hopf(ident).species


def get_hopf(ident: str) -> HopfMonoid:
    ident = ident.strip()
    if ident.startswith("Hadamard(") and ident.endswith(")"):
        inner = ident[len("Hadamard("):-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return hadamard_hopf(get_hopf(inner[:i]), get_hopf(inner[i + 1:]))
        raise ValueError("malformed Hadamard identifier: %r" % ident)
    if ident == "E":
        return make_E()
    if ident == "X":
        return make_X()
    if ident == "L":
        return make_L()
    if ident == "Pi":
        return make_Pi()
    if ident == "Sigma":
        return make_Sigma()
    if ident == "Pal":
        return make_Pal()
    if ident.startswith("Ek:"):
        return make_Ek(int(ident[3:]))
    if ident.startswith("PiS:"):
        gens = [int(v) for v in ident[4:].split(",") if v]
        return make_PiS(closed_sizes(gens, 9))
    if ident in ("PiPrime", "el"):
        raise ValueError("%s is a species without a Hopf monoid structure" % ident)
    raise ValueError("unknown species identifier: %r" % ident)


def get_morphism(ident: str) -> HopfMorphism:
    ident = ident.strip()
    if "->" not in ident:
        raise ValueError("morphism identifier must look like 'L->E': %r" % ident)
    src, dst = (part.strip() for part in ident.split("->", 1))
    if (src, dst) == ("L", "E"):
        return morphism_L_to_E()
    if (src, dst) == ("E", "Pi"):
        return morphism_E_to_Pi()
    if (src, dst) == ("L", "Sigma"):
        return morphism_L_to_Sigma()
    if src.startswith("Ek:") and dst.startswith("Ek:"):
        k, k1 = int(src[3:]), int(dst[3:])
        if k1 != k + 1:
            raise ValueError("only the inclusion Ek:k->Ek:k+1 is available")
        return morphism_Ek_to_Ek1(k)
    if src == "Pi" and dst.startswith("PiS:"):
        gens = [int(v) for v in dst[4:].split(",") if v]
        sizes = closed_sizes(gens, 9)
        return morphism_Pi_to_PiS(sizes, PiS=make_PiS(sizes))
    raise ValueError("unknown morphism identifier: %r" % ident)
