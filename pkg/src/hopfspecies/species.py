"""Set species over finite label sets.

A species is given by a basis enumerator (finite label set -> list of
combinatorial structures) together with relabeling along bijections. The
structures themselves are immutable value objects with a total order, so
every enumeration, vector and matrix in the package is canonically sorted.
"""

from __future__ import annotations

import itertools
from math import factorial

from .exactalg import CycleIndexPoly, Q, TruncatedSeries, _q
from .reports import qstr

SEPARATOR_CHARS = set(".|,:;()[]{}<>=→ \t\r\n")

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


class NotLinearized(TypeError):
    """Operation needs a species whose basis is permuted by relabeling."""


def check_label(tok: str) -> str:
    if not isinstance(tok, str) or not tok or not tok.isascii():
        raise ValueError("label must be a nonempty ASCII token: %r" % (tok,))
    if any(ch in SEPARATOR_CHARS for ch in tok):
        raise ValueError("label contains a separator character: %r" % (tok,))
    return tok


class FiniteSet:
    """A finite set of labels, kept sorted; the sorted order doubles as the
    default reference linear order used by the kernel constructions."""

    __slots__ = ("labels",)

    def __init__(self, labels=()):
        labels = tuple(sorted(check_label(t) for t in labels))
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be pairwise distinct: %r" % (labels,))
        self.labels = labels

    @classmethod
    def _fast(cls, sorted_labels: tuple) -> "FiniteSet":
        # internal: callers guarantee a sorted tuple of valid distinct labels
        out = object.__new__(cls)
        out.labels = sorted_labels
        return out

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, tok):
        return tok in self.labels

    def __eq__(self, other):
        return isinstance(other, FiniteSet) and self.labels == other.labels

    def __lt__(self, other):
        return self.labels < other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return "{%s}" % ",".join(self.labels)

    def union(self, other) -> "FiniteSet":
        if set(self.labels) & set(other.labels):
            raise ValueError("union of non-disjoint label sets")
        return FiniteSet._fast(tuple(sorted(self.labels + other.labels)))

    def minus(self, other) -> "FiniteSet":
        drop = set(other)
        return FiniteSet._fast(tuple(t for t in self.labels if t not in drop))

    def restrict(self, keep) -> "FiniteSet":
        keep = set(keep)
        return FiniteSet._fast(tuple(t for t in self.labels if t in keep))

    def subsets(self):
        """All subsets as FiniteSets, by size then lexicographically."""
        for k in range(len(self.labels) + 1):
            for combo in itertools.combinations(self.labels, k):
                yield FiniteSet._fast(combo)

    def decompositions(self):
        """All ordered pairs (S, T) with S disjoint-union T = self."""
        for S in self.subsets():
            yield S, self.minus(S)

    def triple_decompositions(self):
        """All ordered triples (R, S, T) with R,S,T pairwise disjoint covering."""
        for R in self.subsets():
            rest = self.minus(R)
            for S in rest.subsets():
                yield R, S, rest.minus(S)


EMPTY = FiniteSet()


def labelset(n: int) -> FiniteSet:
    """The canonical n-element label set {a, b, c, ...}."""
    if n > len(ALPHABET):
        raise ValueError("canonical label sets stop at %d labels" % len(ALPHABET))
    return FiniteSet(ALPHABET[:n])


def identity_map(I: FiniteSet) -> dict:
    return {t: t for t in I}


def compose_maps(sigma: dict, tau: dict) -> dict:
    """The bijection sigma o tau (apply tau first)."""
    return {t: sigma[v] for t, v in tau.items()}


def bijections(I: FiniteSet, J: FiniteSet):
    """All bijections I -> J as dicts, in a canonical order."""
    src = tuple(I)
    if len(src) != len(J):
        raise ValueError("no bijections between sets of different sizes")
    for img in itertools.permutations(tuple(J)):
        yield dict(zip(src, img))


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------

class Structure:
    """Base for labeled combinatorial objects; immutable and totally ordered.

    Subclasses store their payload, then call _finish() once to freeze the
    label set, comparison key and hash.
    """

    __slots__ = ("_labels", "_key", "_hash")
    kind = "?"

    def _finish(self, labels: FiniteSet):
        self._labels = labels
        self._key = (self.kind, self.key())
        self._hash = hash(self._key)

    @property
    def labels(self) -> FiniteSet:
        return self._labels

    def relabel(self, mapping: dict) -> "Structure":
        raise NotImplementedError

    def key(self):
        raise NotImplementedError

    def text(self) -> str:
        raise NotImplementedError

    def orbit_key(self):
        """A complete relabeling-orbit invariant, or None if the kind has no
        cheap one (then orbit counting falls back to orbit enumeration)."""
        return None

    def __eq__(self, other):
        return isinstance(other, Structure) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __repr__(self):
        return self.text()

    def to_json(self) -> dict:
        return {"kind": self.kind, "labels": list(self.labels), "value": self.text()}


class SingletonMark(Structure):
    """The canonical basis element attached to a whole label set."""

    __slots__ = ()
    kind = "mark"

    def __init__(self, labels):
        self._finish(labels if isinstance(labels, FiniteSet) else FiniteSet(labels))

    def relabel(self, mapping):
        return SingletonMark(FiniteSet(mapping[t] for t in self._labels))

    def key(self):
        return self._labels.labels

    def text(self):
        return "*"

    def orbit_key(self):
        return ("mark",)


class LinearOrder(Structure):
    __slots__ = ("seq",)
    kind = "order"

    def __init__(self, seq):
        self.seq = tuple(seq)
        if len(set(self.seq)) != len(self.seq):
            raise ValueError("linear order repeats a label: %r" % (self.seq,))
        self._finish(FiniteSet(self.seq))

    def relabel(self, mapping):
        return LinearOrder(mapping[t] for t in self.seq)

    def restrict(self, keep) -> "LinearOrder":
        keep = set(keep)
        return LinearOrder(t for t in self.seq if t in keep)

    def key(self):
        return self.seq

    def text(self):
        return "|".join(self.seq)

    def orbit_key(self):
        return ("order", len(self.seq))


def _canon_blocks(blocks):
    out = []
    seen = set()
    for b in blocks:
        b = tuple(sorted(b))
        if not b:
            raise ValueError("empty block")
        for t in b:
            if t in seen:
                raise ValueError("blocks are not disjoint at %r" % (t,))
            seen.add(t)
        out.append(b)
    return out


class SetPartition(Structure):
    __slots__ = ("blocks",)
    kind = "partition"

    def __init__(self, blocks):
        self.blocks = tuple(sorted(_canon_blocks(blocks)))
        self._finish(FiniteSet(t for b in self.blocks for t in b))

    def relabel(self, mapping):
        return SetPartition(tuple(mapping[t] for t in b) for b in self.blocks)

    def restrict(self, keep) -> "SetPartition":
        keep = set(keep)
        return SetPartition(bb for b in self.blocks
                            if (bb := tuple(t for t in b if t in keep)))

    def block_sizes(self):
        return sorted((len(b) for b in self.blocks), reverse=True)

    def key(self):
        return self.blocks

    def text(self):
        return ".".join("".join(b) for b in self.blocks) if self.blocks else "()"

    def orbit_key(self):
        return ("partition", tuple(self.block_sizes()))


class SetComposition(Structure):
    __slots__ = ("blocks",)
    kind = "composition"

    def __init__(self, blocks):
        self.blocks = tuple(_canon_blocks(blocks))
        self._check_blocks()
        self._finish(FiniteSet(t for b in self.blocks for t in b))

    def _check_blocks(self):
        pass

    def relabel(self, mapping):
        return type(self)(tuple(mapping[t] for t in b) for b in self.blocks)

    def restrict(self, keep):
        """Intersect each block with `keep`, deleting empty intersections."""
        keep = set(keep)
        return type(self)(bb for b in self.blocks
                          if (bb := tuple(t for t in b if t in keep)))

    def size_word(self):
        return tuple(len(b) for b in self.blocks)

    def key(self):
        return self.blocks

    def text(self):
        return "|".join("".join(b) for b in self.blocks) if self.blocks else "()"

    def orbit_key(self):
        return ("composition", self.size_word())


class PalComposition(SetComposition):
    """A set composition whose block-size word is palindromic."""

    __slots__ = ()
    kind = "pal"

    def _check_blocks(self):
        w = tuple(len(b) for b in self.blocks)
        if w != w[::-1]:
            raise ValueError("block sizes %r are not palindromic" % (w,))

    def orbit_key(self):
        return ("pal", self.size_word())


class FunctionToK(Structure):
    """A function from the label set to {1, ..., k}."""

    __slots__ = ("mapping", "k")
    kind = "function"

    def __init__(self, mapping, k: int):
        items = tuple(sorted(dict(mapping).items()))
        if any(not (1 <= v <= k) for _, v in items):
            raise ValueError("function value out of range 1..%d" % k)
        self.mapping = items
        self.k = k
        self._finish(FiniteSet._fast(tuple(t for t, _ in items)))

    def relabel(self, mapping):
        return FunctionToK({mapping[t]: v for t, v in self.mapping}, self.k)

    def restrict(self, keep) -> "FunctionToK":
        keep = set(keep)
        return FunctionToK({t: v for t, v in self.mapping if t in keep}, self.k)

    def key(self):
        return (self.k, self.mapping)

    def text(self):
        return ",".join("%s→%d" % (t, v) for t, v in self.mapping)

    def orbit_key(self):
        sizes = [0] * self.k
        for _, v in self.mapping:
            sizes[v - 1] += 1
        return ("function", self.k, tuple(sizes))


class Element(Structure):
    """One distinguished label of the underlying set."""

    __slots__ = ("point",)
    kind = "element"

    def __init__(self, labels, point):
        labels = labels if isinstance(labels, FiniteSet) else FiniteSet(labels)
        if point not in labels:
            raise ValueError("%r is not in the label set" % (point,))
        self.point = point
        self._finish(labels)

    def relabel(self, mapping):
        return Element(FiniteSet(mapping[t] for t in self._labels), mapping[self.point])

    def key(self):
        return (self._labels.labels, self.point)

    def text(self):
        return self.point

    def orbit_key(self):
        return ("element", len(self._labels))


class PairStructure(Structure):
    """A Hadamard-product structure: a pair on one common label set."""

    __slots__ = ("left", "right")
    kind = "pair"

    def __init__(self, left: Structure, right: Structure):
        if left.labels != right.labels:
            raise ValueError("pair components live on different label sets")
        self.left = left
        self.right = right
        self._finish(left.labels)

    def relabel(self, mapping):
        return PairStructure(self.left.relabel(mapping), self.right.relabel(mapping))

    def key(self):
        return (self.left._key, self.right._key)

    def text(self):
        return "(%s ; %s)" % (self.left.text(), self.right.text())


# ---------------------------------------------------------------------------
# Species
# ---------------------------------------------------------------------------

class SpeciesSpec:
    """A species presented by a basis enumerator.

    `enumerator(I)` yields the basis structures on the label set I;
    enumeration results are memoized and returned sorted. Relabeling is the
    structures' own relabel, so functoriality holds by construction.
    """

    def __init__(self, name: str, enumerator, linearized: bool = True):
        self.name = name
        self._enumerator = enumerator
        self.linearized = linearized
        self._cache: dict = {}

    def structures(self, I: FiniteSet) -> tuple:
        got = self._cache.get(I.labels)
        if got is None:
            got = tuple(sorted(self._enumerator(I)))
            self._cache[I.labels] = got
        return got

    def dimension(self, I) -> int:
        if isinstance(I, int):
            I = labelset(I)
        return len(self.structures(I))

    def dims(self, nmax: int) -> list:
        return [self.dimension(n) for n in range(nmax + 1)]

    def relabel(self, mapping: dict, s: Structure) -> Structure:
        return s.relabel(mapping)

    def __repr__(self):
        return "SpeciesSpec(%s)" % self.name


def orbit_count(sp: SpeciesSpec, n: int) -> int:
    """Number of S_n-orbits on the basis structures over an n-element set.

    Uses a structure-provided complete invariant when available; otherwise
    enumerates orbits by applying all n! relabelings (desk scale, n <= 8).
    """
    I = labelset(n)
    structs = sp.structures(I)
    if structs and all(s.orbit_key() is not None for s in structs):
        return len({s.orbit_key() for s in structs})
    if n > 8:
        raise ValueError("orbit enumeration without invariants is capped at n = 8")
    seen = set()
    count = 0
    perms = [dict(zip(I, img)) for img in itertools.permutations(tuple(I))]
    for s in structs:
        if s in seen:
            continue
        count += 1
        for sigma in perms:
            seen.add(s.relabel(sigma))
    return count


def egf(sp: SpeciesSpec, order: int) -> TruncatedSeries:
    return TruncatedSeries(
        [Q(sp.dimension(n), factorial(n)) for n in range(order + 1)], order)


def ogf(sp: SpeciesSpec, order: int) -> TruncatedSeries:
    return TruncatedSeries([sp.dimension(n) for n in range(order + 1)], order)


def tgf(sp: SpeciesSpec, order: int) -> TruncatedSeries:
    return TruncatedSeries([orbit_count(sp, n) for n in range(order + 1)], order)


def integer_partitions(n: int, largest: int | None = None):
    """Partitions of n as weakly decreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - part, part):
            yield (part,) + rest


def _perm_of_type(I: FiniteSet, lam) -> dict:
    """A permutation of I whose cycle type is the partition `lam`."""
    toks = tuple(I)
    sigma = {}
    pos = 0
    for part in lam:
        cyc = toks[pos: pos + part]
        for i, t in enumerate(cyc):
            sigma[t] = cyc[(i + 1) % part]
        pos += part
    return sigma


def _cycle_type_counts(lam, n: int) -> tuple:
    expts = [0] * n
    for part in lam:
        expts[part - 1] += 1
    return tuple(expts)


def _z_lambda(lam) -> int:
    z = 1
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part ** m * factorial(m)
    return z


def cycle_index(sp: SpeciesSpec, order: int) -> CycleIndexPoly:
    """Z = sum_n (1/n!) sum_{sigma in S_n} fix(sigma) x^{cycletype(sigma)},
    computed one conjugacy class at a time."""
    if not sp.linearized:
        raise NotLinearized("cycle index needs a linearized species")
    terms: dict = {}
    for n in range(order + 1):
        I = labelset(n)
        structs = sp.structures(I)
        for lam in integer_partitions(n):
            sigma = _perm_of_type(I, lam)
            fix = sum(1 for s in structs if s.relabel(sigma) == s)
            if fix:
                e = _cycle_type_counts(lam, n) if n else ()
                terms[e] = terms.get(e, Q(0)) + Q(fix, _z_lambda(lam))
    return CycleIndexPoly(terms, order)


def hadamard(a: SpeciesSpec, b: SpeciesSpec) -> SpeciesSpec:
    """Structures are pairs on the same label set; dimensions multiply."""

    def enumerate_pairs(I):
        return [PairStructure(x, y) for x in a.structures(I) for y in b.structures(I)]

    return SpeciesSpec("Hadamard(%s,%s)" % (a.name, b.name), enumerate_pairs,
                       linearized=a.linearized and b.linearized)


# ---------------------------------------------------------------------------
# Vectors and tensors over a fixed label set
# ---------------------------------------------------------------------------

class QVector:
    """A sparse exact-rational combination of structures on one label set."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: FiniteSet, terms: dict | None = None):
        self.ambient = ambient
        clean = {}
        for s, c in (terms or {}).items():
            c = _q(c)
            if c == 0:
                continue
            if s._labels != ambient:
                raise ValueError("structure %r not on ambient %r" % (s, ambient))
            clean[s] = c
        self.terms = clean

    @classmethod
    def basis(cls, s: Structure, coeff=1) -> "QVector":
        return cls(s.labels, {s: coeff})

    @classmethod
    def zero(cls, ambient: FiniteSet) -> "QVector":
        return cls(ambient, {})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other: "QVector") -> "QVector":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, Q(0)) + c
        return QVector(self.ambient, out)

    def __sub__(self, other: "QVector") -> "QVector":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, Q(0)) - c
        return QVector(self.ambient, out)

    def scale(self, c) -> "QVector":
        c = _q(c)
        return QVector(self.ambient, {s: v * c for s, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, QVector) and self.ambient == other.ambient
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ambient, tuple(self.items())))

    def relabel(self, mapping: dict) -> "QVector":
        new_ambient = FiniteSet(mapping[t] for t in self.ambient)
        return QVector(new_ambient,
                       {s.relabel(mapping): c for s, c in self.terms.items()})

    def coordinates(self, basis_index: dict) -> dict:
        """Sparse coordinate row {index: coeff} for a fixed basis ordering."""
        return {basis_index[s]: c for s, c in self.terms.items()}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for s, c in self.items():
            if c == 1:
                parts.append(("+ " if parts else "") + s.text())
            elif c == -1:
                parts.append("- " + s.text())
            else:
                parts.append(("- " if c < 0 else ("+ " if parts else ""))
                             + "%s*%s" % (qstr(abs(c)), s.text()))
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"ambient": list(self.ambient),
                "terms": [{"structure": s.text(), "coeff": qstr(c)}
                          for s, c in self.items()]}


class QTensor:
    """A sparse combination of pairs (structure on S, structure on T)."""

    __slots__ = ("left", "right", "terms")

    def __init__(self, left: FiniteSet, right: FiniteSet, terms: dict | None = None):
        self.left = left
        self.right = right
        clean = {}
        for (x, y), c in (terms or {}).items():
            c = _q(c)
            if c == 0:
                continue
            if x._labels != left or y._labels != right:
                raise ValueError("tensor term (%r, %r) off ambient (%r, %r)"
                                 % (x, y, left, right))
            clean[(x, y)] = c
        self.terms = clean

    @classmethod
    def basis(cls, x: Structure, y: Structure, coeff=1) -> "QTensor":
        return cls(x.labels, y.labels, {(x, y): coeff})

    @classmethod
    def zero(cls, left: FiniteSet, right: FiniteSet) -> "QTensor":
        return cls(left, right, {})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other: "QTensor") -> "QTensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Q(0)) + c
        return QTensor(self.left, self.right, out)

    def __sub__(self, other: "QTensor") -> "QTensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Q(0)) - c
        return QTensor(self.left, self.right, out)

    def scale(self, c) -> "QTensor":
        c = _q(c)
        return QTensor(self.left, self.right,
                       {k: v * c for k, v in self.terms.items()})

    def swap(self) -> "QTensor":
        return QTensor(self.right, self.left,
                       {(y, x): c for (x, y), c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, QTensor) and self.left == other.left
                and self.right == other.right and self.terms == other.terms)

    def __hash__(self):
        return hash((self.left, self.right, tuple(self.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (x, y), c in self.items():
            body = "%s (x) %s" % (x.text(), y.text())
            if c == 1:
                parts.append(("+ " if parts else "") + body)
            else:
                parts.append(("- " if c < 0 else ("+ " if parts else ""))
                             + ("" if abs(c) == 1 else qstr(abs(c)) + "*") + body)
        return " ".join(parts)
