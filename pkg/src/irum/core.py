"""Alternatives, menus, preferences, choice functions and random choice models.

Menus are plain ``int`` bitmasks over alternative indices (bit ``i`` set means
alternative ``i`` is on the menu).  Preferences are tuples of alternative
indices ranked best first.  Every probability is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from irum.errors import PreconditionError, SizeLimitError

Menu = int
Preference = tuple[int, ...]

MIN_ALTERNATIVES = 2
MAX_ALTERNATIVES = 12
#: Largest ``n`` for which every choice function is enumerated.
MAX_ENUMERATED_N = 4


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions, and decimal or ``p/q`` strings exactly.

    Floats are rejected: ``0.1`` has no exact binary representation, so the
    caller must pass ``"0.1"`` instead.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a string or Fraction")
    return Fraction(value)


def popcount(menu: Menu) -> int:
    return bin(menu).count("1")


def members(menu: Menu) -> tuple[int, ...]:
    """Alternative indices on ``menu`` in ascending order."""
    out = []
    i = 0
    while menu >> i:
        if menu >> i & 1:
            out.append(i)
        i += 1
    return tuple(out)


def menu_of(indices: Iterable[int]) -> Menu:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class AlternativeSet:
    """Labelled finite set of alternatives, indexed ``0..n-1``."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not MIN_ALTERNATIVES <= len(labels) <= MAX_ALTERNATIVES:
            raise PreconditionError(
                f"need between {MIN_ALTERNATIVES} and {MAX_ALTERNATIVES} alternatives, got {len(labels)}"
            )
        if len(set(labels)) != len(labels):
            raise PreconditionError(f"alternative labels must be distinct: {labels}")
        if any(not isinstance(lab, str) or not lab for lab in labels):
            raise PreconditionError("alternative labels must be non-empty strings")

    @classmethod
    def standard(cls, n: int) -> AlternativeSet:
        """Alternatives labelled ``a, b, c, ...``."""
        return cls(tuple("abcdefghijkl"[:n]))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def grand(self) -> Menu:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PreconditionError(f"unknown alternative {label!r}") from None

    def menu(self, spec: str | Iterable[str]) -> Menu:
        """Menu from labels; a string of single-character labels works too."""
        return menu_of(self.index(lab) for lab in spec)

    def preference(self, spec: str | Sequence[str]) -> Preference:
        """Parse ``"c>s>f"`` or a label sequence, best first."""
        if isinstance(spec, str):
            spec = [s.strip() for s in spec.split(">")] if ">" in spec else list(spec)
        ranking = tuple(self.index(lab) for lab in spec)
        check_preference(ranking, self.n)
        return ranking

    def menu_name(self, menu: Menu) -> str:
        labs = [self.labels[i] for i in members(menu)]
        if all(len(lab) == 1 for lab in self.labels):
            return "".join(labs)
        return "{" + ",".join(labs) + "}"

    def menu_key(self, menu: Menu) -> str:
        """Serialization key: sorted member labels joined by ``|``."""
        return "|".join(sorted(self.labels[i] for i in members(menu)))

    def preference_name(self, pref: Preference) -> str:
        return ">".join(self.labels[i] for i in pref)


def check_preference(ranking: Sequence[int], n: int) -> None:
    if sorted(ranking) != list(range(n)):
        raise PreconditionError(f"{tuple(ranking)} is not a ranking of {n} alternatives")


@lru_cache(maxsize=None)
def _menus(n: int) -> tuple[Menu, ...]:
    return tuple(m for m in range(1 << n) if popcount(m) >= 2)


def enumerate_menus(alt_set: AlternativeSet | int) -> tuple[tuple[Menu, ...], int]:
    """All menus with at least two members in ascending bitmask order, and their count K."""
    n = alt_set if isinstance(alt_set, int) else alt_set.n
    if n < 2:
        raise PreconditionError("need at least two alternatives")
    menus = _menus(n)
    return menus, len(menus)


def menu_count(n: int) -> int:
    return (1 << n) - n - 1


@lru_cache(maxsize=None)
def menu_positions(n: int) -> dict[Menu, int]:
    return {m: i for i, m in enumerate(_menus(n))}


def preferences(n: int) -> Iterator[Preference]:
    """All strict rankings of ``n`` alternatives in lexicographic order."""
    return itertools.permutations(range(n))


def best(pref: Preference, menu: Menu) -> int:
    for x in pref:
        if menu >> x & 1:
            return x
    raise PreconditionError("empty menu")


def worst_two(pref: Preference) -> Menu:
    """The pair formed by the two lowest-ranked alternatives of ``pref``."""
    if len(pref) < 2:
        raise PreconditionError("need at least two alternatives")
    return menu_of(pref[-2:])


def menus_excluding_worst_pair(pref: Preference) -> tuple[Menu, ...]:
    """Every menu except the worst pair of ``pref`` (K-1 menus)."""
    n = len(pref)
    if n < 3:
        raise PreconditionError("menus excluding the worst pair need n >= 3 (n = 2 leaves nothing)")
    pair = worst_two(pref)
    return tuple(m for m in _menus(n) if m != pair)


def worst_pair_swap(pref: Preference) -> Preference:
    """The preference agreeing with ``pref`` except that its bottom two are exchanged."""
    return pref[:-2] + (pref[-1], pref[-2])


@dataclass(frozen=True)
class ChoiceFunction:
    """One chosen alternative per menu, aligned with :func:`enumerate_menus` order."""

    alt_set: AlternativeSet
    choices: tuple[int, ...]

    def __post_init__(self):
        menus, k = enumerate_menus(self.alt_set)
        choices = tuple(self.choices)
        object.__setattr__(self, "choices", choices)
        if len(choices) != k:
            raise PreconditionError(f"expected {k} choices, got {len(choices)}")
        for m, x in zip(menus, choices):
            if not (m >> x & 1):
                raise PreconditionError(
                    f"choice {x} is not on menu {self.alt_set.menu_name(m)}"
                )

    @classmethod
    def from_mapping(cls, alt_set: AlternativeSet, mapping: Mapping) -> ChoiceFunction:
        """Build from ``{menu: chosen}``; keys and values may be labels or indices."""
        menus, _ = enumerate_menus(alt_set)
        table = {}
        for key, val in mapping.items():
            m = key if isinstance(key, int) else alt_set.menu(key.split("|") if "|" in key else key)
            table[m] = val if isinstance(val, int) else alt_set.index(val)
        missing = [alt_set.menu_name(m) for m in menus if m not in table]
        if missing:
            raise PreconditionError(f"choice function is missing menus {missing}")
        if len(table) != len(menus):
            raise PreconditionError("choice function mentions menus outside the domain")
        return cls(alt_set, tuple(table[m] for m in menus))

    def __call__(self, menu: Menu) -> int:
        return self.choices[menu_positions(self.alt_set.n)[menu]]

    def items(self) -> Iterator[tuple[Menu, int]]:
        return zip(enumerate_menus(self.alt_set)[0], self.choices)

    def replace(self, menu: Menu, choice: int) -> ChoiceFunction:
        pos = menu_positions(self.alt_set.n)[menu]
        new = list(self.choices)
        new[pos] = choice
        return ChoiceFunction(self.alt_set, tuple(new))

    def describe(self) -> str:
        return ", ".join(
            f"{self.alt_set.menu_name(m)}->{self.alt_set.labels[x]}" for m, x in self.items()
        )


def rational_choice_function(pref: Preference, alt_set: AlternativeSet | None = None) -> ChoiceFunction:
    """The choice function that picks the ``pref``-best member of every menu."""
    alt_set = alt_set or AlternativeSet.standard(len(pref))
    check_preference(pref, alt_set.n)
    return _rational_cf(pref, alt_set)


@lru_cache(maxsize=4096)
def _rational_cf(pref: Preference, alt_set: AlternativeSet) -> ChoiceFunction:
    menus, _ = enumerate_menus(alt_set)
    return ChoiceFunction(alt_set, tuple(best(pref, m) for m in menus))


def is_rational(c: ChoiceFunction) -> Preference | None:
    """Return the unique preference rationalizing ``c``, or ``None``.

    The binary menus define a tournament.  It is transitive exactly when the
    win counts are ``0..n-1``; the candidate ranking must then also
    reproduce ``c`` on every larger menu.
    """
    n = c.alt_set.n
    wins = [0] * n
    for m, x in c.items():
        if popcount(m) == 2:
            wins[x] += 1
    if sorted(wins) != list(range(n)):
        return None
    pref = tuple(sorted(range(n), key=lambda i: -wins[i]))
    if all(best(pref, m) == x for m, x in c.items()):
        return pref
    return None


def rational_choice_functions(alt_set: AlternativeSet) -> tuple[ChoiceFunction, ...]:
    return tuple(rational_choice_function(p, alt_set) for p in preferences(alt_set.n))


@lru_cache(maxsize=8)
def all_choice_functions(alt_set: AlternativeSet) -> tuple[ChoiceFunction, ...]:
    """Every choice function over ``alt_set`` (the product of the menus), n <= 4."""
    if alt_set.n > MAX_ENUMERATED_N:
        raise SizeLimitError(
            f"enumerating all choice functions is limited to n <= {MAX_ENUMERATED_N}, got n = {alt_set.n}"
        )
    menus, _ = enumerate_menus(alt_set)
    return tuple(
        ChoiceFunction(alt_set, combo)
        for combo in itertools.product(*(members(m) for m in menus))
    )


@lru_cache(maxsize=8)
def irrational_choice_functions(alt_set: AlternativeSet) -> tuple[ChoiceFunction, ...]:
    return tuple(c for c in all_choice_functions(alt_set) if is_rational(c) is None)


@dataclass(frozen=True)
class StochasticChoiceFunction:
    """Exact choice probabilities on every menu with at least two members.

    ``probs`` maps each menu to a dense vector over its members in ascending
    index order.
    """

    alt_set: AlternativeSet
    probs: Mapping[Menu, tuple[Fraction, ...]]
    _flat: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        menus, _ = enumerate_menus(self.alt_set)
        probs = {}
        for m in menus:
            if m not in self.probs:
                raise PreconditionError(f"missing menu {self.alt_set.menu_name(m)}")
            vec = tuple(to_fraction(p) for p in self.probs[m])
            if len(vec) != popcount(m):
                raise PreconditionError(
                    f"menu {self.alt_set.menu_name(m)} needs {popcount(m)} probabilities"
                )
            if any(p < 0 or p > 1 for p in vec):
                raise PreconditionError(f"probabilities on {self.alt_set.menu_name(m)} must lie in [0, 1]")
            if sum(vec) != 1:
                raise PreconditionError(
                    f"menu probabilities must sum to 1 on {self.alt_set.menu_name(m)} (got {sum(vec)})"
                )
            probs[m] = vec
        if len(probs) != len(self.probs):
            raise PreconditionError("probabilities given for menus outside the domain")
        object.__setattr__(self, "probs", probs)
        flat = {}
        for m, vec in probs.items():
            for x, p in zip(members(m), vec):
                flat[x, m] = p
        object.__setattr__(self, "_flat", flat)

    def __hash__(self):
        return hash((self.alt_set, tuple(sorted(self.probs.items()))))

    @classmethod
    def from_table(cls, alt_set: AlternativeSet, table: Mapping) -> StochasticChoiceFunction:
        """Build from ``{menu: {alternative: p}}``; menus/alternatives as labels or ints.

        Alternatives missing from a menu's inner mapping get probability 0.
        """
        probs = {}
        for key, row in table.items():
            m = key if isinstance(key, int) else alt_set.menu(key)
            idx = {(a if isinstance(a, int) else alt_set.index(a)): to_fraction(p) for a, p in row.items()}
            stray = [a for a in idx if not (m >> a & 1)]
            if stray:
                raise PreconditionError(
                    f"alternatives {[alt_set.labels[a] for a in stray]} are not on menu {alt_set.menu_name(m)}"
                )
            probs[m] = tuple(idx.get(x, Fraction(0)) for x in members(m))
        return cls(alt_set, probs)

    @classmethod
    def uniform(cls, alt_set: AlternativeSet) -> StochasticChoiceFunction:
        """Choice probability ``1/|A|`` for every member of every menu."""
        menus, _ = enumerate_menus(alt_set)
        return cls(alt_set, {m: (Fraction(1, popcount(m)),) * popcount(m) for m in menus})

    @property
    def n(self) -> int:
        return self.alt_set.n

    def __call__(self, a: int, menu: Menu) -> Fraction:
        """``rho(a, menu)``; zero when ``a`` is not on the menu."""
        return self._flat.get((a, menu), Fraction(0))

    def pairs(self) -> Iterator[tuple[Menu, int, Fraction]]:
        """``(menu, member, probability)`` in canonical order."""
        for m in enumerate_menus(self.alt_set)[0]:
            for x, p in zip(members(m), self.probs[m]):
                yield m, x, p

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(p for _, _, p in self.pairs())

    def support(self, menu: Menu) -> tuple[int, ...]:
        """Members of ``menu`` chosen with positive probability."""
        return tuple(x for x, p in zip(members(menu), self.probs[menu]) if p > 0)

    def combine(self, weight, other: StochasticChoiceFunction) -> StochasticChoiceFunction:
        """Pointwise ``weight * self + (1 - weight) * other``."""
        w = to_fraction(weight)
        if self.alt_set != other.alt_set:
            raise PreconditionError("cannot mix choice data over different alternative sets")
        return StochasticChoiceFunction(
            self.alt_set,
            {m: tuple(w * p + (1 - w) * q for p, q in zip(v, other.probs[m])) for m, v in self.probs.items()},
        )

    def describe(self) -> str:
        lines = []
        for m in enumerate_menus(self.alt_set)[0]:
            cells = "  ".join(
                f"{self.alt_set.labels[x]}={p}" for x, p in zip(members(m), self.probs[m])
            )
            lines.append(f"{self.alt_set.menu_name(m):>8}: {cells}")
        return "\n".join(lines)


@dataclass(frozen=True)
class RandomChoiceModel:
    """A finite distribution over choice functions with strictly positive weights."""

    support: tuple[tuple[ChoiceFunction, Fraction], ...]

    def __post_init__(self):
        support = tuple((c, to_fraction(w)) for c, w in self.support)
        object.__setattr__(self, "support", support)
        if not support:
            raise PreconditionError("a random choice model needs a nonempty support")
        if any(w <= 0 for _, w in support):
            raise PreconditionError("support weights must be strictly positive")
        if sum(w for _, w in support) != 1:
            raise PreconditionError("support weights must sum to 1")
        if len({c for c, _ in support}) != len(support):
            raise PreconditionError("duplicate choice function in support")
        if len({c.alt_set for c, _ in support}) != 1:
            raise PreconditionError("support mixes alternative sets")

    @classmethod
    def from_weights(cls, weights: Iterable[tuple[ChoiceFunction, object]]) -> RandomChoiceModel:
        """Merge duplicates and drop zero weights, then validate."""
        acc: dict[ChoiceFunction, Fraction] = {}
        for c, w in weights:
            acc[c] = acc.get(c, Fraction(0)) + to_fraction(w)
        return cls(tuple((c, w) for c, w in acc.items() if w != 0))

    @classmethod
    def from_preferences(cls, dist: Mapping[Preference, object], alt_set: AlternativeSet | None = None) -> RandomChoiceModel:
        """A RUM from ``{preference: weight}``."""
        if alt_set is None:
            alt_set = AlternativeSet.standard(len(next(iter(dist))))
        return cls.from_weights((rational_choice_function(p, alt_set), w) for p, w in dist.items())

    @property
    def alt_set(self) -> AlternativeSet:
        return self.support[0][0].alt_set

    def weight(self, c: ChoiceFunction) -> Fraction:
        for d, w in self.support:
            if d == c:
                return w
        return Fraction(0)

    def is_rum(self) -> bool:
        return all(is_rational(c) is not None for c, _ in self.support)

    def is_dual_rum(self) -> bool:
        return self.is_rum() and len(self.support) <= 2

    def all_irrational(self) -> bool:
        return all(is_rational(c) is None for c, _ in self.support)

    def as_distribution(self) -> dict[Preference, Fraction]:
        """The preference distribution of a RUM."""
        out = {}
        for c, w in self.support:
            p = is_rational(c)
            if p is None:
                raise PreconditionError(f"support member ({c.describe()}) is not rational")
            out[p] = w
        return out

    def mix(self, weight, other: RandomChoiceModel) -> RandomChoiceModel:
        w = to_fraction(weight)
        return RandomChoiceModel.from_weights(
            [(c, w * v) for c, v in self.support] + [(c, (1 - w) * v) for c, v in other.support]
        )


def aggregate(mu: RandomChoiceModel) -> StochasticChoiceFunction:
    """Choice probabilities induced by ``mu``: the mass choosing ``a`` from each menu."""
    alt_set = mu.alt_set
    menus, _ = enumerate_menus(alt_set)
    acc = {m: {x: Fraction(0) for x in members(m)} for m in menus}
    for c, w in mu.support:
        for m, x in zip(menus, c.choices):
            acc[m][x] += w
    return StochasticChoiceFunction(alt_set, {m: tuple(acc[m][x] for x in members(m)) for m in menus})


def as_preference_distribution(mu, n: int | None = None) -> dict[Preference, Fraction]:
    """Normalize a RUM given as a mapping or as a :class:`RandomChoiceModel`.

    Zero weights are dropped.  Raises if any support member is irrational or if
    the weights do not sum to one.
    """
    if isinstance(mu, RandomChoiceModel):
        dist = mu.as_distribution()
    else:
        dist = {tuple(p): to_fraction(w) for p, w in mu.items()}
    if not dist:
        raise PreconditionError("empty preference distribution")
    size = n if n is not None else len(next(iter(dist)))
    for p, w in dist.items():
        check_preference(p, size)
        if w < 0:
            raise PreconditionError("preference weights must be nonnegative")
    if sum(dist.values()) != 1:
        raise PreconditionError("preference weights must sum to 1")
    return {p: w for p, w in dist.items() if w != 0}
