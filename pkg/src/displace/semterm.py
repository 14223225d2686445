"""Typed lambda terms for Curry-Howard readings.

Terms are applications, abstractions, pairs, projections, constants,
variables and the unit element ``d``.  Semantic types are ``e``, ``t``,
``unit``, arrows and products; syntactic types map onto them
homomorphically (see :func:`sem_type`).

Normalization performs full beta reduction plus projection reduction on
pairs, with capture-avoiding substitution; on well-typed terms this
terminates with the unique normal form.  Alpha-equivalence is equality
modulo bound-variable renaming.
"""

from __future__ import annotations

import string
from typing import Iterator, Optional

from .types import (
    Atom,
    DiscProd,
    Extract,
    InfixDn,
    Over,
    Prod,
    TypeFormula,
    Under,
    UnitI,
    UnitJ,
)


class SemTypeError(ValueError):
    pass


class SemType:
    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return semtype_text(self)


class BaseType(SemType):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash((BaseType, name))

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is BaseType and other.name == self.name)

    __hash__ = SemType.__hash__


E = BaseType("e")
T = BaseType("t")
UNIT = BaseType("unit")


class ArrowType(SemType):
    __slots__ = ("arg", "res")

    def __init__(self, arg: SemType, res: SemType):
        self.arg = arg
        self.res = res
        self._hash = hash((ArrowType, arg, res))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is ArrowType and other.arg == self.arg and other.res == self.res
        )

    __hash__ = SemType.__hash__


class PairType(SemType):
    __slots__ = ("fst", "snd")

    def __init__(self, fst: SemType, snd: SemType):
        self.fst = fst
        self.snd = snd
        self._hash = hash((PairType, fst, snd))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is PairType and other.fst == self.fst and other.snd == self.snd
        )

    __hash__ = SemType.__hash__


def semtype_text(t: SemType, bare: bool = True) -> str:
    if isinstance(t, BaseType):
        return t.name
    if isinstance(t, ArrowType):
        body = f"{semtype_text(t.arg, False)} -> {semtype_text(t.res, False)}"
    else:
        body = f"{semtype_text(t.fst, False)} * {semtype_text(t.snd, False)}"
    return body if bare else f"({body})"


def sem_type(t: TypeFormula, atoms: dict) -> SemType:
    """Semantic type of a syntactic type under an atom table."""
    if isinstance(t, Atom):
        try:
            return atoms[t.name]
        except KeyError:
            raise SemTypeError(f"unknown atom {t.name!r} in semantic atom table")
    if isinstance(t, (UnitI, UnitJ)):
        return UNIT
    if isinstance(t, Under):
        return ArrowType(sem_type(t.left, atoms), sem_type(t.right, atoms))
    if isinstance(t, Over):
        return ArrowType(sem_type(t.right, atoms), sem_type(t.left, atoms))
    if isinstance(t, InfixDn):
        return ArrowType(sem_type(t.left, atoms), sem_type(t.right, atoms))
    if isinstance(t, Extract):
        return ArrowType(sem_type(t.right, atoms), sem_type(t.left, atoms))
    assert isinstance(t, (Prod, DiscProd))
    return PairType(sem_type(t.left, atoms), sem_type(t.right, atoms))


# The atom table used throughout: common nouns are properties,
# prepositional phrases denote their object, than-clauses a proposition.
DEFAULT_ATOMS = {
    "N": E,
    "S": T,
    "CN": ArrowType(E, T),
    "PP": E,
    "CP": T,
}

# Logical vocabulary: uninterpreted constants with fixed types.
LOGICAL_CONSTANTS = {
    "forall": ArrowType(ArrowType(E, T), T),
    "exists": ArrowType(ArrowType(E, T), T),
    "and": ArrowType(T, ArrowType(T, T)),
    "implies": ArrowType(T, ArrowType(T, T)),
    "iota": ArrowType(ArrowType(E, T), E),
    "card": ArrowType(ArrowType(E, T), E),
    "gt": ArrowType(E, ArrowType(E, T)),
}


# ---------------------------------------------------------------------------
# terms


class SemTerm:
    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return render_term(self)


class Var(SemTerm):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash((Var, name))

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is Var and other.name == self.name)

    __hash__ = SemTerm.__hash__


class Const(SemTerm):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash((Const, name))

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is Const and other.name == self.name)

    __hash__ = SemTerm.__hash__


class App(SemTerm):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: SemTerm, arg: SemTerm):
        self.fn = fn
        self.arg = arg
        self._hash = hash((App, fn, arg))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is App and other.fn == self.fn and other.arg == self.arg
        )

    __hash__ = SemTerm.__hash__


class Lam(SemTerm):
    __slots__ = ("var", "body")

    def __init__(self, var: str, body: SemTerm):
        self.var = var
        self.body = body
        self._hash = hash((Lam, var, body))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Lam and other.var == self.var and other.body == self.body
        )

    __hash__ = SemTerm.__hash__


class Pair(SemTerm):
    __slots__ = ("fst", "snd")

    def __init__(self, fst: SemTerm, snd: SemTerm):
        self.fst = fst
        self.snd = snd
        self._hash = hash((Pair, fst, snd))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Pair and other.fst == self.fst and other.snd == self.snd
        )

    __hash__ = SemTerm.__hash__


class Proj(SemTerm):
    __slots__ = ("index", "arg")

    def __init__(self, index: int, arg: SemTerm):
        if index not in (1, 2):
            raise ValueError("projection index must be 1 or 2")
        self.index = index
        self.arg = arg
        self._hash = hash((Proj, index, arg))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Proj and other.index == self.index and other.arg == self.arg
        )

    __hash__ = SemTerm.__hash__


class UnitElem(SemTerm):
    """The canonical inhabitant of the unit type, printed ``d``."""

    __slots__ = ()

    def __init__(self):
        self._hash = hash(UnitElem)

    def __eq__(self, other) -> bool:
        return type(other) is UnitElem

    __hash__ = SemTerm.__hash__


D = UnitElem()


def free_vars(t: SemTerm) -> frozenset:
    if type(t) is Var:
        return frozenset((t.name,))
    if type(t) is App:
        return free_vars(t.fn) | free_vars(t.arg)
    if type(t) is Lam:
        return free_vars(t.body) - {t.var}
    if type(t) is Pair:
        return free_vars(t.fst) | free_vars(t.snd)
    if type(t) is Proj:
        return free_vars(t.arg)
    return frozenset()


def _fresh(base: str, avoid: frozenset) -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def substitute(t: SemTerm, var: str, value: SemTerm) -> SemTerm:
    """Capture-avoiding substitution of ``value`` for ``var`` in ``t``."""
    if type(t) is Var:
        return value if t.name == var else t
    if type(t) in (Const, UnitElem):
        return t
    if type(t) is App:
        return App(substitute(t.fn, var, value), substitute(t.arg, var, value))
    if type(t) is Pair:
        return Pair(substitute(t.fst, var, value), substitute(t.snd, var, value))
    if type(t) is Proj:
        return Proj(t.index, substitute(t.arg, var, value))
    assert type(t) is Lam
    if t.var == var:
        return t
    fv = free_vars(value)
    if t.var in fv:
        new = _fresh(t.var, fv | free_vars(t.body) | {var})
        body = substitute(t.body, t.var, Var(new))
        return Lam(new, substitute(body, var, value))
    return Lam(t.var, substitute(t.body, var, value))


def normalize(t: SemTerm) -> SemTerm:
    """Beta-pi normal form (well-typed input assumed, hence terminating)."""
    if type(t) in (Var, Const, UnitElem):
        return t
    if type(t) is Lam:
        return Lam(t.var, normalize(t.body))
    if type(t) is Pair:
        return Pair(normalize(t.fst), normalize(t.snd))
    if type(t) is Proj:
        arg = normalize(t.arg)
        if type(arg) is Pair:
            return arg.fst if t.index == 1 else arg.snd
        return Proj(t.index, arg)
    assert type(t) is App
    fn = normalize(t.fn)
    if type(fn) is Lam:
        return normalize(substitute(fn.body, fn.var, t.arg))
    return App(fn, normalize(t.arg))


def alpha_eq(t: SemTerm, u: SemTerm) -> bool:
    """Equality modulo bound-variable renaming."""
    return _alpha(t, u, {}, {}, [0])


def _alpha(t, u, env_t: dict, env_u: dict, depth: list) -> bool:
    if type(t) is not type(u):
        return False
    if type(t) is Var:
        bt, bu = env_t.get(t.name), env_u.get(u.name)
        if bt is None and bu is None:
            return t.name == u.name
        return bt == bu
    if type(t) is Const:
        return t.name == u.name
    if type(t) is UnitElem:
        return True
    if type(t) is App:
        return _alpha(t.fn, u.fn, env_t, env_u, depth) and _alpha(
            t.arg, u.arg, env_t, env_u, depth
        )
    if type(t) is Pair:
        return _alpha(t.fst, u.fst, env_t, env_u, depth) and _alpha(
            t.snd, u.snd, env_t, env_u, depth
        )
    if type(t) is Proj:
        return t.index == u.index and _alpha(t.arg, u.arg, env_t, env_u, depth)
    assert type(t) is Lam
    d = depth[0]
    depth[0] += 1
    et = dict(env_t)
    eu = dict(env_u)
    et[t.var] = d
    eu[u.var] = d
    ok = _alpha(t.body, u.body, et, eu, depth)
    depth[0] = d
    return ok


def canonicalize_names(t: SemTerm) -> SemTerm:
    """Rename bound variables to A, B, C, ... in binder traversal order,
    for display; alpha-equivalent to the input."""
    letters = string.ascii_uppercase
    counter = [0]

    def next_name(avoid: frozenset) -> str:
        while True:
            i = counter[0]
            counter[0] += 1
            name = letters[i % 26] + ("" if i < 26 else str(i // 26))
            if name not in avoid:
                return name

    fv = free_vars(t)

    def walk(t: SemTerm, env: dict) -> SemTerm:
        if type(t) is Var:
            return Var(env.get(t.name, t.name))
        if type(t) in (Const, UnitElem):
            return t
        if type(t) is App:
            return App(walk(t.fn, env), walk(t.arg, env))
        if type(t) is Pair:
            return Pair(walk(t.fst, env), walk(t.snd, env))
        if type(t) is Proj:
            return Proj(t.index, walk(t.arg, env))
        assert type(t) is Lam
        name = next_name(fv)
        env2 = dict(env)
        env2[t.var] = name
        return Lam(name, walk(t.body, env2))

    return walk(t, {})


# ---------------------------------------------------------------------------
# type checking with inference metavariables


class _MVar:
    __slots__ = ("ref",)

    def __init__(self):
        self.ref: Optional[object] = None


def _resolve(t):
    while type(t) is _MVar and t.ref is not None:
        t = t.ref
    return t


def _occurs(m: _MVar, t) -> bool:
    t = _resolve(t)
    if t is m:
        return True
    if isinstance(t, ArrowType):
        return _occurs(m, t.arg) or _occurs(m, t.res)
    if isinstance(t, PairType):
        return _occurs(m, t.fst) or _occurs(m, t.snd)
    return False


def _unify(a, b, what: str) -> None:
    a, b = _resolve(a), _resolve(b)
    if a is b:
        return
    if type(a) is _MVar:
        if _occurs(a, b):
            raise SemTypeError(f"occurs check failed in {what}")
        a.ref = b
        return
    if type(b) is _MVar:
        _unify(b, a, what)
        return
    if isinstance(a, BaseType) and isinstance(b, BaseType) and a == b:
        return
    if isinstance(a, ArrowType) and isinstance(b, ArrowType):
        _unify(a.arg, b.arg, what)
        _unify(a.res, b.res, what)
        return
    if isinstance(a, PairType) and isinstance(b, PairType):
        _unify(a.fst, b.fst, what)
        _unify(a.snd, b.snd, what)
        return
    raise SemTypeError(f"cannot unify {_ground(a)!r} with {_ground(b)!r} in {what}")


def _ground(t):
    t = _resolve(t)
    if type(t) is _MVar:
        return t
    if isinstance(t, ArrowType):
        return ArrowType(_ground(t.arg), _ground(t.res))
    if isinstance(t, PairType):
        return PairType(_ground(t.fst), _ground(t.snd))
    return t


def _infer(t: SemTerm, env: dict, consts: dict, what: str):
    if type(t) is Var:
        try:
            return env[t.name]
        except KeyError:
            raise SemTypeError(f"unbound variable {t.name!r} in {what}")
    if type(t) is Const:
        return consts.setdefault(t.name, _MVar())
    if type(t) is UnitElem:
        return UNIT
    if type(t) is App:
        tf = _infer(t.fn, env, consts, what)
        ta = _infer(t.arg, env, consts, what)
        res = _MVar()
        _unify(tf, ArrowType(ta, res), what)
        return res
    if type(t) is Lam:
        targ = _MVar()
        env2 = dict(env)
        env2[t.var] = targ
        tres = _infer(t.body, env2, consts, what)
        return ArrowType(targ, tres)
    if type(t) is Pair:
        return PairType(
            _infer(t.fst, env, consts, what), _infer(t.snd, env, consts, what)
        )
    assert type(t) is Proj
    tf = PairType(_MVar(), _MVar())
    _unify(_infer(t.arg, env, consts, what), tf, what)
    return tf.fst if t.index == 1 else tf.snd


def typecheck(
    t: SemTerm,
    env: Optional[dict] = None,
    expected: Optional[SemType] = None,
    consts: Optional[dict] = None,
    what: str = "term",
) -> SemType:
    """Infer the semantic type of ``t``.

    ``env`` types free variables; ``consts`` types constants (unknown
    constants get per-call inference variables, so closed lexical terms
    check against their entry types without a global constant table).
    Raises :class:`SemTypeError` on failure or if the result is not
    fully determined.
    """
    cenv: dict = dict(LOGICAL_CONSTANTS)
    if consts:
        cenv.update(consts)
    got = _infer(t, dict(env or {}), cenv, what)
    if expected is not None:
        _unify(got, expected, what)
    result = _ground(got)
    if _has_mvar(result):
        raise SemTypeError(f"type of {what} is not fully determined")
    return result


def _has_mvar(t) -> bool:
    if type(t) is _MVar:
        return True
    if isinstance(t, ArrowType):
        return _has_mvar(t.arg) or _has_mvar(t.res)
    if isinstance(t, PairType):
        return _has_mvar(t.fst) or _has_mvar(t.snd)
    return False


# ---------------------------------------------------------------------------
# term syntax


_TERM_IDENT_START = set(string.ascii_letters + "_")
_TERM_IDENT_BODY = _TERM_IDENT_START | set(string.digits + "'")


class TermParseError(ValueError):
    pass


class _TermScanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str):
        raise TermParseError(f"column {self.i + 1}: {msg}")

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i] in " \t\n":
            self.i += 1

    def at(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.i)

    def eat(self, s: str):
        if not self.at(s):
            self.error(f"expected {s!r}")
        self.i += len(s)

    def ident(self) -> Optional[str]:
        self.skip_ws()
        if self.i >= len(self.text) or self.text[self.i] not in _TERM_IDENT_START:
            return None
        j = self.i
        while j < len(self.text) and self.text[j] in _TERM_IDENT_BODY:
            j += 1
        word = self.text[self.i : j]
        self.i = j
        return word

    def done(self) -> bool:
        self.skip_ws()
        return self.i >= len(self.text)


def _term_atom(sc: _TermScanner, bound: frozenset) -> Optional[SemTerm]:
    if sc.at("("):
        sc.eat("(")
        t = _term(sc, bound)
        sc.eat(")")
        return t
    if sc.at("<"):
        sc.eat("<")
        fst = _term(sc, bound)
        sc.eat(",")
        snd = _term(sc, bound)
        sc.eat(">")
        return Pair(fst, snd)
    save = sc.i
    word = sc.ident()
    if word is None:
        return None
    if word == "lam":
        var = sc.ident()
        if var is None:
            sc.error("expected a variable after 'lam'")
        sc.eat(".")
        return Lam(var, _term(sc, bound | {var}))
    if word in ("p1", "p2"):
        arg = _term_atom(sc, bound)
        if arg is None:
            sc.error(f"expected an argument after {word}")
        return Proj(1 if word == "p1" else 2, arg)
    if word in ("forall", "exists"):
        # binder sugar: 'forall X. t' means (forall lam X. t)
        save2 = sc.i
        var = sc.ident()
        if var is not None and sc.at("."):
            sc.eat(".")
            return App(Const(word), Lam(var, _term(sc, bound | {var})))
        sc.i = save2
        return Const(word)
    if word == "d":
        return D
    if word in bound:
        return Var(word)
    return Const(word)


def _term(sc: _TermScanner, bound: frozenset) -> SemTerm:
    head = _term_atom(sc, bound)
    if head is None:
        sc.error("expected a term")
    while True:
        save = sc.i
        arg = _term_atom(sc, bound)
        if arg is None:
            sc.i = save
            return head
        head = App(head, arg)


def parse_term(text: str) -> SemTerm:
    """Closed-term parser: identifiers bound by an enclosing ``lam`` are
    variables, everything else is a constant."""
    sc = _TermScanner(text)
    t = _term(sc, frozenset())
    if not sc.done():
        sc.error("trailing input after term")
    return t


def render_term(t: SemTerm, style: str = "ascii") -> str:
    """ASCII (round-trips through :func:`parse_term`) or pretty output
    following the usual display conventions for readings."""
    if style == "ascii":
        return _ascii(t)
    if style == "pretty":
        return _pretty(t)
    raise ValueError(f"unknown style {style!r}")


def _ascii(t: SemTerm) -> str:
    if type(t) is Var or type(t) is Const:
        return t.name
    if type(t) is UnitElem:
        return "d"
    if type(t) is Lam:
        return f"lam {t.var}. {_ascii(t.body)}"
    if type(t) is Pair:
        return f"<{_ascii(t.fst)}, {_ascii(t.snd)}>"
    if type(t) is Proj:
        arg = t.arg
        inner = _ascii(arg)
        if type(arg) not in (Var, Const, UnitElem, Pair):
            inner = f"({inner})"
        return f"p{t.index} {inner}"
    assert type(t) is App
    return f"({_ascii(t.fn)} {_ascii(t.arg)})"


_PRETTY_BIN = {"and": "∧", "implies": "→"}
_QUANT = {"forall": "∀", "exists": "∃"}


def _pretty(t: SemTerm) -> str:
    if type(t) is Var:
        return t.name
    if type(t) is Const:
        return {"iota": "ι"}.get(t.name, t.name)
    if type(t) is UnitElem:
        return "d"
    if type(t) is Lam:
        body = _pretty(t.body)
        if body and body[0] in "([λ∀∃|":
            return f"λ{t.var}{body}"
        return f"λ{t.var}.{body}"
    if type(t) is Pair:
        return f"⟨{_pretty(t.fst)}, {_pretty(t.snd)}⟩"
    if type(t) is Proj:
        sub = "₁" if t.index == 1 else "₂"
        arg = _pretty(t.arg)
        if type(t.arg) not in (Var, Const, UnitElem):
            arg = f"({arg})"
        return f"π{sub}{arg}"
    assert type(t) is App
    # binary connective display: [x op y]
    if (
        type(t.fn) is App
        and type(t.fn.fn) is Const
        and t.fn.fn.name in _PRETTY_BIN
    ):
        op = _PRETTY_BIN[t.fn.fn.name]
        return f"[{_pretty(t.fn.arg)} {op} {_pretty(t.arg)}]"
    # comparison of cardinalities: [|x| > |y|]
    if (
        type(t.fn) is App
        and type(t.fn.fn) is Const
        and t.fn.fn.name == "gt"
        and type(t.fn.arg) is App
        and type(t.fn.arg.fn) is Const
        and t.fn.arg.fn.name == "card"
        and type(t.arg) is App
        and type(t.arg.fn) is Const
        and t.arg.fn.name == "card"
    ):
        return f"[|{_pretty(t.fn.arg.arg)}| > |{_pretty(t.arg.arg)}|]"
    # quantifier display: Qx[body]
    if type(t.fn) is Const and t.fn.name in _QUANT and type(t.arg) is Lam:
        q = _QUANT[t.fn.name]
        body = _pretty(t.arg.body)
        if not (body.startswith("[") and body.endswith("]")):
            body = f"[{body}]"
        return f"{q}{t.arg.var}{body}"
    return f"({_pretty(t.fn)} {_pretty(t.arg)})"
