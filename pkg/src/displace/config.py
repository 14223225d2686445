"""Hyperconfigurations and hypersequents.

A configuration is a tuple of items: the metalinguistic separator, sort-0
type leaves, and hyperleaves.  A hyperleaf is an occurrence of a type of
sort n >= 1 carrying exactly n filler subconfigurations, one per point of
discontinuity.  The sort of a configuration is the number of separators
in its flattened left-to-right traversal, where a hyperleaf contributes
the sum of its fillers' sorts.

Items optionally carry a semantic label.  Labels take part in equality;
the prover only ever works on label-free configurations (see
:func:`strip_labels`).
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

from .types import TypeFormula, type_latex, type_text


class _Separator:
    """The unique metalinguistic separator item, written ``[]``."""

    __slots__ = ()
    _instance: "_Separator | None" = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "[]"

    def __hash__(self) -> int:
        return hash(_Separator)

    def __eq__(self, other) -> bool:
        return other is self


SEP = _Separator()

Item = "_Separator | Leaf | HyperLeaf"
Config = tuple  # tuple of items


class Leaf:
    """A sort-0 type occurrence."""

    __slots__ = ("type", "label", "_hash")

    def __init__(self, t: TypeFormula, label=None):
        if t.sort != 0:
            raise ValueError(f"leaf type must have sort 0: {t!r}")
        self.type = t
        self.label = label
        self._hash = hash((Leaf, t, label))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Leaf
            and other._hash == self._hash
            and other.type == self.type
            and other.label == self.label
        )

    def __repr__(self) -> str:
        return config_text((self,))


class HyperLeaf:
    """A type occurrence of sort n >= 1 with its n filler configurations.

    ``fsort`` is the item's separator contribution: the sum of the
    fillers' sorts (the type's own separators are consumed by fillers).
    """

    __slots__ = ("type", "fillers", "label", "fsort", "_hash")

    def __init__(self, t: TypeFormula, fillers: Sequence[Config], label=None):
        fillers = tuple(tuple(f) for f in fillers)
        if t.sort < 1:
            raise ValueError(f"hyperleaf type must have sort >= 1: {t!r}")
        if len(fillers) != t.sort:
            raise ValueError(
                f"hyperleaf {t!r} needs {t.sort} fillers, got {len(fillers)}"
            )
        self.type = t
        self.fillers = fillers
        self.label = label
        self.fsort = sum(config_sort(f) for f in fillers)
        self._hash = hash((HyperLeaf, t, fillers, label))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is HyperLeaf
            and other._hash == self._hash
            and other.type == self.type
            and other.fillers == self.fillers
            and other.label == self.label
        )

    def __repr__(self) -> str:
        return config_text((self,))


def mk_item(t: TypeFormula, fillers: Sequence[Config] = (), label=None):
    """Leaf for sort-0 types, HyperLeaf otherwise."""
    if t.sort == 0:
        if fillers:
            raise ValueError(f"sort-0 item {t!r} takes no fillers")
        return Leaf(t, label)
    return HyperLeaf(t, fillers, label)


def item_sort(item) -> int:
    """Separator contribution of one item in the flattened traversal."""
    if item is SEP:
        return 1
    if type(item) is Leaf:
        return 0
    return item.fsort


def config_sort(c: Config) -> int:
    return sum(item_sort(it) for it in c)


def weight_config(c: Config) -> int:
    """Sum of the weights of all type occurrences in ``c``."""
    total = 0
    for it in c:
        if it is SEP:
            continue
        if type(it) is Leaf:
            total += it.type.weight
        else:
            total += it.type.weight + sum(weight_config(f) for f in it.fillers)
    return total


def vector(t: TypeFormula) -> Config:
    """Canonical configuration of a type: the type itself at sort 0,
    otherwise the type with one bare-separator filler per sort."""
    if t.sort == 0:
        return (Leaf(t),)
    return (HyperLeaf(t, ((SEP,),) * t.sort),)


def is_vector_item(item, t: Optional[TypeFormula] = None) -> bool:
    """True when the item is vector-shaped: a leaf, or a hyperleaf whose
    fillers are all single separators."""
    if item is SEP:
        return False
    if t is not None and item.type != t:
        return False
    if type(item) is Leaf:
        return True
    return all(f == (SEP,) for f in item.fillers)


def item_fillers(item) -> tuple:
    return () if type(item) is Leaf else item.fillers


def wrap_at(d: Config, k: int, g: Config) -> Config:
    """Replace the k-th separator of ``d`` (flattened order) by ``g``."""
    out, remaining = _wrap(d, k, g)
    if remaining:
        raise IndexError(f"configuration has fewer than {k} separators")
    return out


def _wrap(seq: Config, k: int, g: Config) -> tuple[Config, int]:
    items: list = []
    for it in seq:
        if k == 0:
            items.append(it)
        elif it is SEP:
            k -= 1
            if k == 0:
                items.extend(g)
            else:
                items.append(it)
        elif type(it) is Leaf:
            items.append(it)
        elif k <= it.fsort:
            fillers = []
            for f in it.fillers:
                if k > 0:
                    f, k = _wrap(f, k, g)
                fillers.append(f)
            items.append(HyperLeaf(it.type, fillers, it.label))
        else:
            k -= it.fsort
            items.append(it)
    return tuple(items), k


def gen_wrap(d: Config, gs: Sequence[Config]) -> Config:
    """Simultaneously replace the i-th separator of ``d`` by ``gs[i]``."""
    if len(gs) != config_sort(d):
        raise ValueError(
            f"generalized wrap arity mismatch: {config_sort(d)} separators, "
            f"{len(gs)} fillers"
        )
    it = iter(gs)
    out = _gen_wrap(d, it)
    return out


def _gen_wrap(seq: Config, gs: Iterator[Config]) -> Config:
    items: list = []
    for it in seq:
        if it is SEP:
            items.extend(next(gs))
        elif type(it) is Leaf:
            items.append(it)
        elif it.fsort == 0:
            items.append(it)
        else:
            fillers = tuple(_gen_wrap(f, gs) for f in it.fillers)
            items.append(HyperLeaf(it.type, fillers, it.label))
    return tuple(items)


def strip_labels(c: Config) -> Config:
    out = []
    for it in c:
        if it is SEP:
            out.append(it)
        elif type(it) is Leaf:
            out.append(it if it.label is None else Leaf(it.type))
        else:
            out.append(HyperLeaf(it.type, tuple(strip_labels(f) for f in it.fillers)))
    return tuple(out)


def config_types(c: Config) -> Iterator[TypeFormula]:
    """All type occurrences in a configuration, fillers included."""
    for it in c:
        if it is SEP:
            continue
        yield it.type
        if type(it) is HyperLeaf:
            for f in it.fillers:
                yield from config_types(f)


class Hypersequent:
    """An antecedent configuration and a succedent type of equal sort."""

    __slots__ = ("ant", "succ", "_hash")

    def __init__(self, ant: Config, succ: TypeFormula):
        ant = tuple(ant)
        if config_sort(ant) != succ.sort:
            raise ValueError(
                f"sort mismatch: antecedent has sort {config_sort(ant)}, "
                f"succedent {succ!r} has sort {succ.sort}"
            )
        self.ant = ant
        self.succ = succ
        self._hash = hash((ant, succ))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Hypersequent
            and other._hash == self._hash
            and other.ant == self.ant
            and other.succ == self.succ
        )

    @property
    def weight(self) -> int:
        return weight_config(self.ant) + self.succ.weight

    def __repr__(self) -> str:
        return sequent_text(self)


def config_text(c: Config) -> str:
    if not c:
        return "0"
    parts = []
    for it in c:
        if it is SEP:
            parts.append("[]")
        elif type(it) is Leaf:
            parts.append(type_text(it.type))
        else:
            fill = " : ".join(config_text(f) for f in it.fillers)
            parts.append(f"{type_text(it.type)}{{{fill}}}")
    return ", ".join(parts)


def sequent_text(s: Hypersequent) -> str:
    return f"{config_text(s.ant)} => {type_text(s.succ)}"


def config_latex(c: Config) -> str:
    if not c:
        return r"\Lambda"
    parts = []
    for it in c:
        if it is SEP:
            parts.append(r"[\,]")
        elif type(it) is Leaf:
            parts.append(type_latex(it.type))
        else:
            fill = " : ".join(config_latex(f) for f in it.fillers)
            parts.append(rf"{type_latex(it.type)}\{{{fill}\}}")
    return ", ".join(parts)


def sequent_latex(s: Hypersequent) -> str:
    return rf"{config_latex(s.ant)} \Rightarrow {type_latex(s.succ)}"
