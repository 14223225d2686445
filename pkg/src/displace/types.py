"""Sorted type formulas of the displacement calculus.

The sort of a formula is the number of separators a string of that type
contains.  Atoms are fixed at sort 0.  Eight constructors build complex
formulas: the concatenating family (under ``A\\C``, over ``C/B``, product
``A*B`` and its unit ``I``) and the wrapping family (infix ``A!kC``,
extract ``C^kB``, discontinuous product ``A(o)kB`` and its unit ``J``).
The wrapping constructors carry a positive wrap index ``k``.

Sorts are derived at construction time; side conditions (sort bounds and
index bounds on ``k``) are checked separately by :func:`validate_type`,
so that ill-sorted formulas can be built, reported and rejected.
"""

from __future__ import annotations

from typing import Callable, Iterator


class InvalidTypeError(ValueError):
    """A formula violates a sort or index side condition."""

    def __init__(self, formula: "TypeFormula", reason: str):
        super().__init__(f"{formula!r}: {reason}")
        self.formula = formula
        self.reason = reason


class TypeFormula:
    """Base class for formulas; subclasses precompute sort, weight, hash.

    ``weight`` counts connective and unit occurrences (atoms weigh 0,
    units weigh 1); it is the measure driving proof-search termination
    and the Cut degree.
    """

    __slots__ = ("sort", "weight", "_hash")

    sort: int
    weight: int
    _hash: int

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return type_text(self)


class Atom(TypeFormula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.sort = 0
        self.weight = 0
        self._hash = hash((Atom, name))

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is Atom and other.name == self.name)

    __hash__ = TypeFormula.__hash__


class UnitI(TypeFormula):
    """Continuous product unit; sort 0."""

    __slots__ = ()

    def __init__(self):
        self.sort = 0
        self.weight = 1
        self._hash = hash(UnitI)

    def __eq__(self, other) -> bool:
        return type(other) is UnitI

    __hash__ = TypeFormula.__hash__


class UnitJ(TypeFormula):
    """Discontinuous product unit; sort 1."""

    __slots__ = ()

    def __init__(self):
        self.sort = 1
        self.weight = 1
        self._hash = hash(UnitJ)

    def __eq__(self, other) -> bool:
        return type(other) is UnitJ

    __hash__ = TypeFormula.__hash__


I = UnitI()
J = UnitJ()


class _Binary(TypeFormula):
    __slots__ = ("left", "right")

    op = ""

    def __init__(self, left: TypeFormula, right: TypeFormula):
        self.left = left
        self.right = right
        self.sort = self._derive_sort()
        self.weight = left.weight + right.weight + 1
        self._hash = hash((type(self), left, right))

    def _derive_sort(self) -> int:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is type(self)
            and self._hash == other._hash
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = TypeFormula.__hash__


class _Indexed(_Binary):
    __slots__ = ("k",)

    def __init__(self, k: int, left: TypeFormula, right: TypeFormula):
        self.k = k
        super().__init__(left, right)
        self._hash = hash((type(self), k, left, right))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is type(self)
            and self._hash == other._hash
            and other.k == self.k
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = TypeFormula.__hash__


class Under(_Binary):
    """``A\\C``: a function looking for A on its left to form C."""

    __slots__ = ()
    op = "\\"

    def _derive_sort(self) -> int:
        return self.right.sort - self.left.sort


class Over(_Binary):
    """``C/B``: a function looking for B on its right to form C."""

    __slots__ = ()
    op = "/"

    def _derive_sort(self) -> int:
        return self.left.sort - self.right.sort


class Prod(_Binary):
    """``A*B``: concatenation product."""

    __slots__ = ()
    op = "*"

    def _derive_sort(self) -> int:
        return self.left.sort + self.right.sort


class InfixDn(_Indexed):
    """``A!kC``: infixes itself at the k-th separator of an A to form C."""

    __slots__ = ()
    op = "!"

    def _derive_sort(self) -> int:
        return self.right.sort - self.left.sort + 1


class Extract(_Indexed):
    """``C^kB``: a C lacking a B at its k-th point of discontinuity."""

    __slots__ = ()
    op = "^"

    def _derive_sort(self) -> int:
        return self.left.sort - self.right.sort + 1


class DiscProd(_Indexed):
    """``A(o)kB``: wrapping product, B plugged into A's k-th separator."""

    __slots__ = ()
    op = "(o)"

    def _derive_sort(self) -> int:
        return self.left.sort + self.right.sort - 1


def sort_of_type(t: TypeFormula) -> int:
    """Sort of a validated formula."""
    return t.sort


def weight_type(t: TypeFormula) -> int:
    """Number of connective and unit occurrences in ``t``."""
    return t.weight


def validate_type(t: TypeFormula) -> None:
    """Raise :class:`InvalidTypeError` at the innermost offending subformula."""
    if isinstance(t, (Atom, UnitI, UnitJ)):
        return
    assert isinstance(t, _Binary)
    validate_type(t.left)
    validate_type(t.right)
    a, b = t.left, t.right
    if isinstance(t, Under):
        if b.sort < a.sort:
            raise InvalidTypeError(t, f"sort({b!r}) < sort({a!r})")
    elif isinstance(t, Over):
        if a.sort < b.sort:
            raise InvalidTypeError(t, f"sort({a!r}) < sort({b!r})")
    elif isinstance(t, InfixDn):
        if a.sort < 1:
            raise InvalidTypeError(t, f"sort({a!r}) = {a.sort} violates sort >= 1")
        if b.sort < a.sort - 1:
            raise InvalidTypeError(t, f"sort({b!r}) < sort({a!r}) - 1")
        if not 1 <= t.k <= a.sort:
            raise InvalidTypeError(t, f"index k={t.k} outside 1..{a.sort}")
    elif isinstance(t, Extract):
        if a.sort < b.sort:
            raise InvalidTypeError(t, f"sort({a!r}) < sort({b!r})")
        if not 1 <= t.k <= a.sort - b.sort + 1:
            raise InvalidTypeError(t, f"index k={t.k} outside 1..{a.sort - b.sort + 1}")
    elif isinstance(t, DiscProd):
        if a.sort < 1:
            raise InvalidTypeError(t, f"sort({a!r}) = {a.sort} violates sort >= 1")
        if not 1 <= t.k <= a.sort:
            raise InvalidTypeError(t, f"index k={t.k} outside 1..{a.sort}")


def is_valid_type(t: TypeFormula) -> bool:
    try:
        validate_type(t)
    except InvalidTypeError:
        return False
    return True


def subtypes(t: TypeFormula) -> Iterator[TypeFormula]:
    """All subformulas of ``t``, including ``t`` itself."""
    yield t
    if isinstance(t, _Binary):
        yield from subtypes(t.left)
        yield from subtypes(t.right)


def subformulas(t: TypeFormula) -> frozenset[TypeFormula]:
    return frozenset(subtypes(t))


def type_text(t: TypeFormula, bare: bool = True) -> str:
    """ASCII rendering; nested binary subformulas are parenthesized.

    With ``bare`` the outermost binary is printed without parentheses,
    matching the canonical sequent syntax.
    """
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, UnitI):
        return "I"
    if isinstance(t, UnitJ):
        return "J"
    assert isinstance(t, _Binary)
    k = ""
    if isinstance(t, _Indexed) and t.k != 1:
        k = str(t.k)
    body = f"{type_text(t.left, bare=False)}{t.op}{k}{type_text(t.right, bare=False)}"
    return body if bare else f"({body})"


def type_latex(t: TypeFormula, bare: bool = True) -> str:
    """LaTeX rendering mirroring :func:`type_text`."""
    if isinstance(t, Atom):
        return rf"\textit{{{t.name}}}" if len(t.name) > 1 else t.name
    if isinstance(t, UnitI):
        return "I"
    if isinstance(t, UnitJ):
        return "J"
    assert isinstance(t, _Binary)
    ops = {
        Under: r"\backslash",
        Over: "/",
        Prod: r"\bullet",
        InfixDn: r"\downarrow",
        Extract: r"\uparrow",
        DiscProd: r"\odot",
    }
    op = ops[type(t)]
    if isinstance(t, _Indexed) and t.k != 1:
        op += f"_{{{t.k}}}"
    body = f"{type_latex(t.left, bare=False)}{op}{type_latex(t.right, bare=False)}"
    return body if bare else f"({body})"
