"""Backward rule instances and forward rule reconstruction.

Every inference figure of the calculus is implemented twice, from the two
directions a rule can be read:

* :func:`inferences` enumerates, for a goal hypersequent, the complete
  finite set of backward rule instances (premises plus instance
  metadata).  The enumeration order is deterministic: the identity axiom
  first, then the right rule for the succedent's main constructor, then
  left rules over antecedent occurrences in document order, instances per
  occurrence ordered by region, span and extraction enumeration order.

* :func:`forward` independently rebuilds a conclusion from premises and
  metadata.  The proof checker compares this reconstruction against the
  recorded conclusion, so prover and checker never share a code path for
  the same direction.

Metadata is conclusion-side except where noted: ``occ`` is the principal
occurrence address, ``span`` the carved region, ``thetas`` the extraction
spans in document order, ``k`` the wrap index, ``split`` the top-level
split point of *R.  For ^R and Cut, ``occ`` addresses the vector
occurrence in the premise instead, which is where those rules act.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .config import (
    SEP,
    Config,
    HyperLeaf,
    Hypersequent,
    Leaf,
    config_sort,
    gen_wrap,
    is_vector_item,
    item_fillers,
    mk_item,
    vector,
    wrap_at,
)
from .matcher import (
    Extraction,
    SpanRef,
    enumerate_spans,
    extract,
    extract_pinned,
    gen_wrap_spans,
    item_at,
    item_span,
    occurrences,
    offset_span,
    rebase_addr,
    sep_addrs,
    seq_at,
    span_content,
    splice_item,
    splice_span,
    with_seq,
    wrap_at_spans,
)
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
from .types import I as UNIT_I
from .types import J as UNIT_J

ID = "id"
UNDER_L, UNDER_R = "\\L", "\\R"
OVER_L, OVER_R = "/L", "/R"
PROD_L, PROD_R = "*L", "*R"
I_L, I_R = "IL", "IR"
INFIX_L, INFIX_R = "!L", "!R"
EXTRACT_L, EXTRACT_R = "^L", "^R"
DISC_L, DISC_R = "(o)L", "(o)R"
J_L, J_R = "JL", "JR"
CUT = "Cut"

RULES = (
    ID, UNDER_L, UNDER_R, OVER_L, OVER_R, PROD_L, PROD_R, I_L, I_R,
    INFIX_L, INFIX_R, EXTRACT_L, EXTRACT_R, DISC_L, DISC_R, J_L, J_R, CUT,
)


class Meta:
    __slots__ = ("occ", "span", "thetas", "k", "split")

    def __init__(self, occ=None, span=None, thetas=None, k=None, split=None):
        self.occ = occ
        self.span = span
        self.thetas = thetas
        self.k = k
        self.split = split

    def __repr__(self) -> str:
        parts = [
            f"{f}={getattr(self, f)!r}"
            for f in self.__slots__
            if getattr(self, f) is not None
        ]
        return f"Meta({', '.join(parts)})"


class Inference:
    __slots__ = ("rule", "premises", "meta")

    def __init__(self, rule: str, premises: tuple, meta: Meta):
        self.rule = rule
        self.premises = premises
        self.meta = meta

    def __repr__(self) -> str:
        return f"Inference({self.rule}, {self.premises!r})"


class RuleError(ValueError):
    """A rule instance that does not match its schema."""


def prefix_span(span: SpanRef, prefix) -> SpanRef:
    return SpanRef(tuple(prefix) + span.pos, span.start, span.end)


def _spans_containing(c: Config, addr) -> list:
    """Sibling spans, at each position along the address path, whose
    subtree contains the addressed item; outermost position first."""
    pos, idx = addr
    out = []
    for m in range(len(pos) + 1):
        p = pos[:m]
        b = pos[m][0] if m < len(pos) else idx
        n = len(seq_at(c, p))
        for start in range(b + 1):
            for end in range(b + 1, n + 1):
                out.append(SpanRef(p, start, end))
    return out


def inferences(goal: Hypersequent) -> list:
    """All backward rule instances applicable to ``goal``."""
    ant, succ = goal.ant, goal.succ
    out: list = []

    if ant == vector(succ):
        out.append(Inference(ID, (), Meta()))

    _right_rules(ant, succ, out)

    for addr, t, fillers in occurrences(ant):
        _left_rules(goal, addr, t, fillers, out)

    return out


def _right_rules(ant: Config, succ: TypeFormula, out: list) -> None:
    if isinstance(succ, Under):
        a, c = succ.left, succ.right
        out.append(
            Inference(UNDER_R, (Hypersequent(vector(a) + ant, c),), Meta())
        )
    elif isinstance(succ, Over):
        c, b = succ.left, succ.right
        out.append(
            Inference(OVER_R, (Hypersequent(ant + vector(b), c),), Meta())
        )
    elif isinstance(succ, Prod):
        a, b = succ.left, succ.right
        for i in range(len(ant) + 1):
            g1, g2 = ant[:i], ant[i:]
            if config_sort(g1) != a.sort or config_sort(g2) != b.sort:
                continue
            out.append(
                Inference(
                    PROD_R,
                    (Hypersequent(g1, a), Hypersequent(g2, b)),
                    Meta(split=i),
                )
            )
    elif isinstance(succ, UnitI):
        if ant == ():
            out.append(Inference(I_R, (), Meta()))
    elif isinstance(succ, UnitJ):
        if ant == (SEP,):
            out.append(Inference(J_R, (), Meta()))
    elif isinstance(succ, InfixDn):
        a, c = succ.left, succ.right
        out.append(
            Inference(
                INFIX_R,
                (Hypersequent(wrap_at(vector(a), succ.k, ant), c),),
                Meta(k=succ.k),
            )
        )
    elif isinstance(succ, Extract):
        c, b = succ.left, succ.right
        wrapped, landing = wrap_at_spans(ant, succ.k, vector(b))
        out.append(
            Inference(
                EXTRACT_R,
                (Hypersequent(wrapped, c),),
                Meta(occ=(landing.pos, landing.start), k=succ.k),
            )
        )
    elif isinstance(succ, DiscProd):
        a, b = succ.left, succ.right
        for span in enumerate_spans(ant):
            g2 = span_content(ant, span)
            if config_sort(g2) != b.sort:
                continue
            g1 = splice_span(ant, span, (SEP,))
            rank = sep_addrs(g1).index((span.pos, span.start)) + 1
            if rank != succ.k:
                continue
            out.append(
                Inference(
                    DISC_R,
                    (Hypersequent(g1, a), Hypersequent(g2, b)),
                    Meta(span=span, k=succ.k),
                )
            )


def _left_rules(goal, addr, t: TypeFormula, fillers: tuple, out: list) -> None:
    ant, succ = goal.ant, goal.succ
    pos, idx = addr
    if isinstance(t, Under):
        a, c = t.left, t.right
        seq = seq_at(ant, pos)
        for start in range(idx + 1):
            region = seq[start:idx]
            for ex in extract(region, a.sort):
                citem = mk_item(c, ex.thetas + fillers)
                prem2 = Hypersequent(
                    splice_span(ant, SpanRef(pos, start, idx + 1), (citem,)), succ
                )
                out.append(
                    Inference(
                        UNDER_L,
                        (Hypersequent(ex.gamma, a), prem2),
                        Meta(
                            occ=addr,
                            span=SpanRef(pos, start, idx),
                            thetas=tuple(
                                offset_span(s, (pos, start)) for s in ex.spans
                            ),
                        ),
                    )
                )
    elif isinstance(t, Over):
        c, b = t.left, t.right
        seq = seq_at(ant, pos)
        for end in range(idx + 1, len(seq) + 1):
            region = seq[idx + 1 : end]
            for ex in extract(region, b.sort):
                citem = mk_item(c, fillers + ex.thetas)
                prem2 = Hypersequent(
                    splice_span(ant, SpanRef(pos, idx, end), (citem,)), succ
                )
                out.append(
                    Inference(
                        OVER_L,
                        (Hypersequent(ex.gamma, b), prem2),
                        Meta(
                            occ=addr,
                            span=SpanRef(pos, idx + 1, end),
                            thetas=tuple(
                                offset_span(s, (pos, idx + 1)) for s in ex.spans
                            ),
                        ),
                    )
                )
    elif isinstance(t, Prod):
        a, b = t.left, t.right
        item_a = mk_item(a, fillers[: a.sort])
        item_b = mk_item(b, fillers[a.sort :])
        prem = Hypersequent(splice_item(ant, addr, (item_a, item_b)), succ)
        out.append(Inference(PROD_L, (prem,), Meta(occ=addr)))
    elif isinstance(t, UnitI):
        prem = Hypersequent(splice_item(ant, addr, ()), succ)
        out.append(Inference(I_L, (prem,), Meta(occ=addr)))
    elif isinstance(t, UnitJ):
        (phi,) = fillers
        prem = Hypersequent(splice_item(ant, addr, phi), succ)
        out.append(
            Inference(
                J_L, (prem,), Meta(occ=addr, span=SpanRef(pos, idx, idx + len(phi)))
            )
        )
    elif isinstance(t, InfixDn):
        a, c = t.left, t.right
        k = t.k
        for region in _spans_containing(ant, addr):
            rel_pin = rebase_addr(addr, region)
            region_cfg = span_content(ant, region)
            for ex, pin_k in extract_pinned(region_cfg, a.sort - 1, rel_pin):
                if pin_k != k:
                    continue
                citem = mk_item(c, ex.thetas[: k - 1] + fillers + ex.thetas[k - 1 :])
                prem2 = Hypersequent(splice_span(ant, region, (citem,)), succ)
                base = (region.pos, region.start)
                out.append(
                    Inference(
                        INFIX_L,
                        (Hypersequent(ex.gamma, a), prem2),
                        Meta(
                            occ=addr,
                            span=region,
                            thetas=tuple(offset_span(s, base) for s in ex.spans),
                            k=k,
                        ),
                    )
                )
    elif isinstance(t, Extract):
        c, b = t.left, t.right
        k = t.k
        for ex in extract(fillers[k - 1], b.sort):
            citem = mk_item(c, fillers[: k - 1] + ex.thetas + fillers[k:])
            prem2 = Hypersequent(splice_item(ant, addr, (citem,)), succ)
            prefix = pos + ((idx, k - 1),)
            out.append(
                Inference(
                    EXTRACT_L,
                    (Hypersequent(ex.gamma, b), prem2),
                    Meta(
                        occ=addr,
                        thetas=tuple(prefix_span(s, prefix) for s in ex.spans),
                        k=k,
                    ),
                )
            )
    elif isinstance(t, DiscProd):
        a, b = t.left, t.right
        k = t.k
        inner = mk_item(b, fillers[k - 1 : k - 1 + b.sort])
        item_a = mk_item(
            a, fillers[: k - 1] + ((inner,),) + fillers[k - 1 + b.sort :]
        )
        prem = Hypersequent(splice_item(ant, addr, (item_a,)), succ)
        out.append(Inference(DISC_L, (prem,), Meta(occ=addr, k=k)))


# ---------------------------------------------------------------------------
# forward reconstruction


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise RuleError(msg)


def forward(rule: str, meta: Meta, premises: tuple) -> Hypersequent:
    """Rebuild the conclusion a rule instance proves, from its premises
    and metadata alone.  Raises :class:`RuleError` on schema mismatch."""
    try:
        return _forward(rule, meta, premises)
    except RuleError:
        raise
    except (ValueError, IndexError, TypeError, AttributeError) as e:
        raise RuleError(f"malformed {rule} instance: {e}") from e


def _forward(rule: str, meta: Meta, premises: tuple) -> Hypersequent:
    if rule == ID:
        raise RuleError("id has no premises to reconstruct from")

    if rule == UNDER_R:
        (p,) = premises
        first = p.ant[0]
        _need(first is not SEP and is_vector_item(first), "\\R premise must start with a vector")
        return Hypersequent(p.ant[1:], Under(first.type, p.succ))

    if rule == OVER_R:
        (p,) = premises
        last = p.ant[-1]
        _need(last is not SEP and is_vector_item(last), "/R premise must end with a vector")
        return Hypersequent(p.ant[:-1], Over(p.succ, last.type))

    if rule == INFIX_R:
        (p,) = premises
        k = meta.k
        _need(len(p.ant) == 1 and type(p.ant[0]) is HyperLeaf, "!R premise shape")
        it = p.ant[0]
        fillers = it.fillers
        _need(1 <= k <= len(fillers), "!R index")
        _need(
            all(f == (SEP,) for i, f in enumerate(fillers) if i != k - 1),
            "!R non-selected fillers must be bare separators",
        )
        return Hypersequent(fillers[k - 1], InfixDn(k, it.type, p.succ))

    if rule == EXTRACT_R:
        (p,) = premises
        k, occ = meta.k, meta.occ
        it = item_at(p.ant, occ)
        _need(it is not SEP and is_vector_item(it), "^R occurrence must be a vector")
        ant = splice_item(p.ant, occ, (SEP,))
        _need(sep_addrs(ant)[k - 1] == (occ[0], occ[1]), "^R separator rank mismatch")
        return Hypersequent(ant, Extract(k, p.succ, it.type))

    if rule == PROD_R:
        p1, p2 = premises
        _need(meta.split == len(p1.ant), "*R split mismatch")
        return Hypersequent(p1.ant + p2.ant, Prod(p1.succ, p2.succ))

    if rule == DISC_R:
        p1, p2 = premises
        return Hypersequent(wrap_at(p1.ant, meta.k, p2.ant), DiscProd(meta.k, p1.succ, p2.succ))

    if rule == I_R:
        _need(premises == (), "IR takes no premises")
        return Hypersequent((), UNIT_I)

    if rule == J_R:
        _need(premises == (), "JR takes no premises")
        return Hypersequent((SEP,), UNIT_J)

    if rule == UNDER_L:
        p1, p2 = premises
        at = (meta.span.pos, meta.span.start)
        it = item_at(p2.ant, at)
        _need(it is not SEP, "\\L context occurrence is a separator")
        c = it.type
        a = p1.succ
        fillers = item_fillers(it)
        _need(len(fillers) == c.sort, "\\L filler count")
        thetas, psis = fillers[: a.sort], fillers[a.sort :]
        region = gen_wrap(p1.ant, thetas) + (mk_item(Under(a, c), psis),)
        return Hypersequent(splice_item(p2.ant, at, region), p2.succ)

    if rule == OVER_L:
        p1, p2 = premises
        at = meta.occ
        it = item_at(p2.ant, at)
        _need(it is not SEP, "/L context occurrence is a separator")
        c = it.type
        b = p1.succ
        t = Over(c, b)
        fillers = item_fillers(it)
        psis, thetas = fillers[: t.sort], fillers[t.sort :]
        region = (mk_item(t, psis),) + gen_wrap(p1.ant, thetas)
        return Hypersequent(splice_item(p2.ant, at, region), p2.succ)

    if rule == EXTRACT_L:
        p1, p2 = premises
        at, k = meta.occ, meta.k
        it = item_at(p2.ant, at)
        _need(it is not SEP, "^L context occurrence is a separator")
        c = it.type
        b = p1.succ
        fillers = item_fillers(it)
        thetas = fillers[k - 1 : k - 1 + b.sort]
        new_item = mk_item(
            Extract(k, c, b),
            fillers[: k - 1] + (gen_wrap(p1.ant, thetas),) + fillers[k - 1 + b.sort :],
        )
        return Hypersequent(splice_item(p2.ant, at, (new_item,)), p2.succ)

    if rule == INFIX_L:
        p1, p2 = premises
        at = (meta.span.pos, meta.span.start)
        k = meta.k
        it = item_at(p2.ant, at)
        _need(it is not SEP, "!L context occurrence is a separator")
        c = it.type
        a = p1.succ
        t = InfixDn(k, a, c)
        fillers = item_fillers(it)
        theta_before = fillers[: k - 1]
        psis = fillers[k - 1 : k - 1 + t.sort]
        theta_after = fillers[k - 1 + t.sort :]
        region = gen_wrap(
            p1.ant, theta_before + ((mk_item(t, psis),),) + theta_after
        )
        return Hypersequent(splice_item(p2.ant, at, region), p2.succ)

    if rule == PROD_L:
        (p,) = premises
        pos, idx = meta.occ
        seq = seq_at(p.ant, pos)
        _need(idx + 1 < len(seq), "*L needs two adjacent items")
        ita, itb = seq[idx], seq[idx + 1]
        _need(ita is not SEP and itb is not SEP, "*L items are separators")
        new_item = mk_item(
            Prod(ita.type, itb.type), item_fillers(ita) + item_fillers(itb)
        )
        return Hypersequent(
            splice_span(p.ant, SpanRef(pos, idx, idx + 2), (new_item,)), p.succ
        )

    if rule == DISC_L:
        (p,) = premises
        k = meta.k
        it = item_at(p.ant, meta.occ)
        _need(type(it) is HyperLeaf, "(o)L occurrence must be a hyperleaf")
        inner_cfg = it.fillers[k - 1]
        _need(len(inner_cfg) == 1 and inner_cfg[0] is not SEP, "(o)L inner occurrence")
        inner = inner_cfg[0]
        new_item = mk_item(
            DiscProd(k, it.type, inner.type),
            it.fillers[: k - 1] + item_fillers(inner) + it.fillers[k:],
        )
        return Hypersequent(splice_item(p.ant, meta.occ, (new_item,)), p.succ)

    if rule == I_L:
        (p,) = premises
        return Hypersequent(insert_at(p.ant, meta.occ, (Leaf(UNIT_I),)), p.succ)

    if rule == J_L:
        (p,) = premises
        phi = span_content(p.ant, meta.span)
        return Hypersequent(
            splice_span(p.ant, meta.span, (HyperLeaf(UNIT_J, (phi,)),)), p.succ
        )

    if rule == CUT:
        p1, p2 = premises
        it = item_at(p2.ant, meta.occ)
        _need(it is not SEP, "Cut occurrence is a separator")
        _need(it.type == p1.succ, "Cut formula mismatch")
        region = gen_wrap(p1.ant, item_fillers(it))
        return Hypersequent(splice_item(p2.ant, meta.occ, region), p2.succ)

    raise RuleError(f"unknown rule {rule!r}")


def insert_at(c: Config, addr, items: Config) -> Config:
    pos, idx = addr
    seq = seq_at(c, pos)
    _need(0 <= idx <= len(seq), "insertion point out of range")
    return with_seq(c, pos, seq[:idx] + tuple(items) + seq[idx:])


def cut_inference(p1_seq: Hypersequent, p2_seq: Hypersequent, occ) -> Inference:
    """Build a Cut instance: ``occ`` addresses the cut-formula occurrence
    in the right premise's antecedent.  Also records the landing spans of
    the occurrence's fillers in the conclusion, for semantic replay."""
    it = item_at(p2_seq.ant, occ)
    if it is SEP or it.type != p1_seq.succ:
        raise RuleError("Cut occurrence does not carry the cut formula")
    fillers = item_fillers(it)
    region, landings = gen_wrap_spans(p1_seq.ant, fillers)
    base = occ
    span = SpanRef(occ[0], occ[1], occ[1] + len(region))
    thetas = tuple(offset_span(s, base) for s in landings)
    return Inference(CUT, (p1_seq, p2_seq), Meta(occ=occ, span=span, thetas=thetas))
