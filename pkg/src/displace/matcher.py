"""Spans, occurrences and extractions over hyperconfigurations.

This module realizes the distinguished-hyperoccurrence notation used by
every inference rule: locating type occurrences at arbitrary nesting
depth, carving contiguous (possibly empty) spans out of a configuration,
and decomposing a configuration into a skeleton plus fillers such that
the generalized wrap reproduces it exactly.

Addresses.  A nesting *position* is a tuple of ``(item_index,
filler_index)`` steps from the root sequence; ``()`` is the top level.
An item address is ``(position, index)``.  A :class:`SpanRef` addresses
the half-open run ``[start, end)`` of sibling items at a position;
``start == end`` is the empty span at that gap.  Spans never cross a
hyperleaf boundary, but may live inside one.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional

from .config import SEP, Config, HyperLeaf, Leaf, config_sort
from .types import TypeFormula

Pos = tuple  # tuple[(int, int), ...]
ItemAddr = tuple  # (Pos, int)


class SpanRef:
    __slots__ = ("pos", "start", "end", "_hash")

    def __init__(self, pos: Pos, start: int, end: int):
        self.pos = pos
        self.start = start
        self.end = end
        self._hash = hash((pos, start, end))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            type(other) is SpanRef
            and other.pos == self.pos
            and other.start == self.start
            and other.end == self.end
        )

    def __repr__(self) -> str:
        return f"SpanRef({self.pos!r}, {self.start}, {self.end})"


class Extraction:
    """A decomposition ``gen_wrap(gamma, thetas) == c``.

    ``spans`` are the carved regions of ``c`` in document order; the i-th
    span became the i-th separator of ``gamma`` and its content is
    ``thetas[i]``.
    """

    __slots__ = ("spans", "gamma", "thetas")

    def __init__(self, spans: tuple, gamma: Config, thetas: tuple):
        self.spans = spans
        self.gamma = gamma
        self.thetas = thetas

    def __repr__(self) -> str:
        return f"Extraction(spans={self.spans!r})"


# ---------------------------------------------------------------------------
# basic navigation


def seq_at(c: Config, pos: Pos) -> Config:
    for i, f in pos:
        c = c[i].fillers[f]
    return c


def item_at(c: Config, addr: ItemAddr):
    pos, idx = addr
    return seq_at(c, pos)[idx]


def with_seq(c: Config, pos: Pos, new_seq: Config) -> Config:
    if not pos:
        return tuple(new_seq)
    (i, f), rest = pos[0], pos[1:]
    it = c[i]
    fillers = list(it.fillers)
    fillers[f] = with_seq(fillers[f], rest, new_seq)
    return c[:i] + (HyperLeaf(it.type, fillers, it.label),) + c[i + 1 :]


def splice_span(c: Config, span: SpanRef, items: Config) -> Config:
    seq = seq_at(c, span.pos)
    return with_seq(c, span.pos, seq[: span.start] + tuple(items) + seq[span.end :])


def splice_item(c: Config, addr: ItemAddr, items: Config) -> Config:
    pos, idx = addr
    return splice_span(c, SpanRef(pos, idx, idx + 1), items)


def insert_items(c: Config, addr: ItemAddr, items: Config) -> Config:
    pos, idx = addr
    return splice_span(c, SpanRef(pos, idx, idx), items)


def span_content(c: Config, span: SpanRef) -> Config:
    return seq_at(c, span.pos)[span.start : span.end]


def item_span(addr: ItemAddr) -> SpanRef:
    pos, idx = addr
    return SpanRef(pos, idx, idx + 1)


# ---------------------------------------------------------------------------
# document order

def sep_addrs(c: Config, pos: Pos = ()) -> list:
    """Separator addresses in flattened left-to-right traversal order,
    descending into hyperleaf fillers in filler order."""
    out = []
    for idx, it in enumerate(c):
        if it is SEP:
            out.append((pos, idx))
        elif type(it) is HyperLeaf:
            for f, filler in enumerate(it.fillers):
                out.extend(sep_addrs(filler, pos + ((idx, f),)))
    return out


def kth_sep_addr(c: Config, k: int) -> ItemAddr:
    return sep_addrs(c)[k - 1]


def positions(c: Config, pos: Pos = ()) -> list:
    """All nesting positions, pre-order."""
    out = [pos]
    for idx, it in enumerate(c):
        if type(it) is HyperLeaf:
            for f, filler in enumerate(it.fillers):
                out.extend(positions(filler, pos + ((idx, f),)))
    return out


def enumerate_spans(c: Config) -> list:
    """All contiguous spans, empty gaps included, at every nesting
    position; per position ordered by start then length."""
    out = []
    for pos in positions(c):
        n = len(seq_at(c, pos))
        for start in range(n + 1):
            for end in range(start, n + 1):
                out.append(SpanRef(pos, start, end))
    return out


def doc_key(span: SpanRef) -> tuple:
    """Total order on spans consistent with the flattened traversal of
    the separators they would introduce."""
    return tuple((i, 1, f) for i, f in span.pos) + ((span.start, 0),)


def addr_key(addr: ItemAddr) -> tuple:
    pos, idx = addr
    return tuple((i, 1, f) for i, f in pos) + ((idx, 0),)


def compatible(a: SpanRef, b: SpanRef) -> bool:
    """Neither overlapping nor one nested inside the other (touching
    boundaries are fine)."""
    if a.pos == b.pos:
        return not (a.start < b.end and b.start < a.end)
    if len(a.pos) > len(b.pos):
        a, b = b, a
    if b.pos[: len(a.pos)] == a.pos:
        i = b.pos[len(a.pos)][0]
        return not (a.start <= i < a.end)
    return True


def covers_sep(span: SpanRef, sep: ItemAddr) -> bool:
    pos, idx = sep
    if pos == span.pos:
        return span.start <= idx < span.end
    if len(pos) > len(span.pos) and pos[: len(span.pos)] == span.pos:
        return span.start <= pos[len(span.pos)][0] < span.end
    return False


def covers_addr(span: SpanRef, addr: ItemAddr) -> bool:
    return covers_sep(span, addr)


# ---------------------------------------------------------------------------
# occurrences


def occurrences(
    c: Config, pred: Callable[[TypeFormula], bool] = lambda t: True, pos: Pos = ()
) -> list:
    """Leaf/hyperleaf occurrences whose type satisfies ``pred``, document
    order, nested occurrences included.  Yields (addr, type, fillers)."""
    out = []
    for idx, it in enumerate(c):
        if it is SEP:
            continue
        if pred(it.type):
            out.append(((pos, idx), it.type, () if type(it) is Leaf else it.fillers))
        if type(it) is HyperLeaf:
            for f, filler in enumerate(it.fillers):
                out.extend(occurrences(filler, pred, pos + ((idx, f),)))
    return out


# ---------------------------------------------------------------------------
# extraction


def _carve(c: Config, spans: list) -> Config:
    """Replace each span (assumed compatible) by one separator."""
    for span in sorted(spans, key=doc_key, reverse=True):
        c = splice_span(c, span, (SEP,))
    return c


def extract(c: Config, n: int) -> list:
    """All ways to carve ``n`` pairwise-compatible spans covering every
    native separator of ``c``, yielding skeleton + fillers."""
    if n == 0:
        return [] if sep_addrs(c) else [Extraction((), c, ())]
    spans = sorted(enumerate_spans(c), key=doc_key)
    seps = sep_addrs(c)
    out = []

    def choose(i: int, chosen: list):
        if len(chosen) == n:
            if all(any(covers_sep(s, a) for s in chosen) for a in seps):
                gamma = _carve(c, chosen)
                thetas = tuple(span_content(c, s) for s in chosen)
                out.append(Extraction(tuple(chosen), gamma, thetas))
            return
        if i == len(spans):
            return
        for j in range(i, len(spans)):
            s = spans[j]
            if all(compatible(s, t) for t in chosen):
                chosen.append(s)
                choose(j + 1, chosen)
                chosen.pop()

    choose(0, [])
    return out


def extract_pinned(c: Config, n: int, pin: ItemAddr) -> list:
    """Extractions around a pinned item: the pinned item becomes a
    separator of the skeleton, ``n`` further spans are carved, and every
    native separator outside the pinned item is covered.  Yields
    ``(Extraction, pin_k)`` where ``pin_k`` is the 1-based rank of the
    pin's separator among the skeleton's separators."""
    pin_span = item_span(pin)
    seps = [a for a in sep_addrs(c) if not covers_sep(pin_span, a)]
    if n == 0:
        if seps:
            return []
        carved = _carve(c, [pin_span])
        return [(Extraction((), carved, ()), 1 + sum(
            1 for a in sep_addrs(carved) if addr_key(a) < addr_key((pin_span.pos, pin_span.start))
        ))]
    spans = sorted(
        (s for s in enumerate_spans(c) if compatible(s, pin_span)), key=doc_key
    )
    out = []

    def emit(chosen: list):
        if not all(any(covers_sep(s, a) for s in chosen) for a in seps):
            return
        carved = _carve(c, chosen + [pin_span])
        thetas = tuple(span_content(c, s) for s in chosen)
        ordered = sorted(chosen + [pin_span], key=doc_key)
        pin_k = ordered.index(pin_span) + 1
        out.append((Extraction(tuple(chosen), carved, thetas), pin_k))

    def choose(i: int, chosen: list):
        if len(chosen) == n:
            emit(chosen)
            return
        for j in range(i, len(spans)):
            s = spans[j]
            if all(compatible(s, t) for t in chosen):
                chosen.append(s)
                choose(j + 1, chosen)
                chosen.pop()

    choose(0, [])
    return out


# ---------------------------------------------------------------------------
# wraps with landing information


def wrap_at_spans(d: Config, k: int, g: Config) -> tuple[Config, SpanRef]:
    """`wrap_at` that also reports where ``g`` landed."""
    result, landings = gen_wrap_spans_partial(d, {k - 1: g})
    return result, landings[k - 1]


def gen_wrap_spans(gamma: Config, thetas) -> tuple[Config, tuple]:
    """`gen_wrap` that also reports each theta's landing span (in result
    coordinates)."""
    result, landings = gen_wrap_spans_partial(gamma, dict(enumerate(thetas)))
    return result, tuple(landings[i] for i in range(len(thetas)))


def gen_wrap_spans_partial(d: Config, repl: dict) -> tuple[Config, dict]:
    """Replace the separators whose 0-based flattened index is a key of
    ``repl`` by the corresponding configuration; report landing spans."""
    landings: dict = {}
    counter = [0]

    def walk(seq: Config, pos: Pos) -> Config:
        items: list = []
        for it in seq:
            if it is SEP:
                i = counter[0]
                counter[0] += 1
                if i in repl:
                    g = repl[i]
                    landings[i] = SpanRef(pos, len(items), len(items) + len(g))
                    items.extend(g)
                else:
                    items.append(it)
            elif type(it) is Leaf:
                items.append(it)
            elif it.fsort == 0:
                items.append(it)
            else:
                fillers = []
                base = len(items)
                # reserve the item slot before descending so positions use
                # the post-splice index of the hyperleaf itself
                for f, filler in enumerate(it.fillers):
                    fillers.append(walk(filler, pos + ((base, f),)))
                items.append(HyperLeaf(it.type, fillers, it.label))
        return tuple(items)

    out = walk(d, ())
    total = counter[0]
    for i in repl:
        if i >= total:
            raise IndexError(f"separator index {i} out of range ({total})")
    return out, landings


# ---------------------------------------------------------------------------
# address arithmetic


def offset_addr(rel: ItemAddr, base: ItemAddr) -> ItemAddr:
    """Absolute address of ``rel`` (relative to a region spliced at item
    address ``base``)."""
    bpos, bidx = base
    pos, idx = rel
    if not pos:
        return (bpos, bidx + idx)
    (i, f), rest = pos[0], pos[1:]
    return (bpos + ((bidx + i, f),) + rest, idx)


def offset_span(rel: SpanRef, base: ItemAddr) -> SpanRef:
    bpos, bidx = base
    if not rel.pos:
        return SpanRef(bpos, bidx + rel.start, bidx + rel.end)
    (i, f), rest = rel.pos[0], rel.pos[1:]
    return SpanRef(bpos + ((bidx + i, f),) + rest, rel.start, rel.end)


def rebase_addr(addr: ItemAddr, region: SpanRef) -> Optional[ItemAddr]:
    """Address relative to a region taken as a standalone configuration;
    None when the address lies outside the region."""
    pos, idx = addr
    if pos == region.pos:
        if region.start <= idx < region.end:
            return ((), idx - region.start)
        return None
    if len(pos) > len(region.pos) and pos[: len(region.pos)] == region.pos:
        steps = pos[len(region.pos) :]
        i0, f0 = steps[0]
        if region.start <= i0 < region.end:
            return (((i0 - region.start, f0),) + steps[1:], idx)
    return None


def rebase_span(span: SpanRef, region: SpanRef) -> Optional[SpanRef]:
    if span.pos == region.pos:
        if region.start <= span.start and span.end <= region.end:
            return SpanRef((), span.start - region.start, span.end - region.start)
        return None
    if len(span.pos) > len(region.pos) and span.pos[: len(region.pos)] == region.pos:
        steps = span.pos[len(region.pos) :]
        i0, f0 = steps[0]
        if region.start <= i0 < region.end:
            return SpanRef(
                ((i0 - region.start, f0),) + steps[1:], span.start, span.end
            )
    return None


def splice_shift_addr(addr: ItemAddr, at: ItemAddr, new_len: int) -> Optional[ItemAddr]:
    """Address of the same item after the item at ``at`` is replaced by
    ``new_len`` items; None when ``addr`` is the replaced item or inside
    it."""
    apos, aidx = at
    pos, idx = addr
    d = new_len - 1
    if pos == apos:
        if idx == aidx:
            return None
        return (pos, idx + d) if idx > aidx else addr
    if len(pos) > len(apos) and pos[: len(apos)] == apos:
        steps = pos[len(apos) :]
        i0, f0 = steps[0]
        if i0 == aidx:
            return None
        if i0 > aidx:
            return (apos + ((i0 + d, f0),) + steps[1:], idx)
    return addr


def splice_shift_span(span: SpanRef, at: ItemAddr, new_len: int) -> Optional[SpanRef]:
    """Span tracking through replacement of one item by ``new_len`` items.
    A span containing the item stretches; a span inside it maps to None."""
    apos, aidx = at
    d = new_len - 1
    if span.pos == apos:
        if span.end <= aidx:
            return span
        if span.start > aidx:
            return SpanRef(span.pos, span.start + d, span.end + d)
        return SpanRef(span.pos, span.start, span.end + d)
    if len(span.pos) > len(apos) and span.pos[: len(apos)] == apos:
        steps = span.pos[len(apos) :]
        i0, f0 = steps[0]
        if i0 == aidx:
            return None
        if i0 > aidx:
            return SpanRef(apos + ((i0 + d, f0),) + steps[1:], span.start, span.end)
    return span


def collapse_shift_addr(addr: ItemAddr, spans: list) -> Optional[ItemAddr]:
    """Address tracking through the replacement of each span by a single
    separator (the extraction direction).  None when inside a span."""
    for span in sorted(spans, key=doc_key, reverse=True):
        addr = _collapse_one_addr(addr, span)
        if addr is None:
            return None
    return addr


def _collapse_one_addr(addr: ItemAddr, span: SpanRef) -> Optional[ItemAddr]:
    pos, idx = addr
    d = 1 - (span.end - span.start)
    if pos == span.pos:
        if span.start <= idx < span.end:
            return None
        return (pos, idx + d) if idx >= span.end else addr
    if len(pos) > len(span.pos) and pos[: len(span.pos)] == span.pos:
        steps = pos[len(span.pos) :]
        i0, f0 = steps[0]
        if span.start <= i0 < span.end:
            return None
        if i0 >= span.end:
            return (span.pos + ((i0 + d, f0),) + steps[1:], idx)
    return addr


def gen_wrap_shift_addr(gamma: Config, thetas, addr: ItemAddr) -> ItemAddr:
    """Address of a (non-separator) item of ``gamma`` in
    ``gen_wrap(gamma, thetas)``."""
    seps = sep_addrs(gamma)

    def level_shift(prefix: Pos, index: int) -> int:
        s = 0
        for j, (spos, sidx) in enumerate(seps):
            if spos == prefix and sidx < index:
                s += len(thetas[j]) - 1
        return s

    pos, idx = addr
    new_pos = tuple(
        (i + level_shift(pos[:m], i), f) for m, (i, f) in enumerate(pos)
    )
    return (new_pos, idx + level_shift(pos, idx))


def gen_wrap_shift_span(gamma: Config, thetas, span: SpanRef) -> SpanRef:
    """Span of ``gamma`` tracked into ``gen_wrap(gamma, thetas)``;
    separators inside the span stretch it."""
    seps = sep_addrs(gamma)

    def level_shift(prefix: Pos, index: int) -> int:
        s = 0
        for j, (spos, sidx) in enumerate(seps):
            if spos == prefix and sidx < index:
                s += len(thetas[j]) - 1
        return s

    new_pos = tuple(
        (i + level_shift(span.pos[:m], i), f) for m, (i, f) in enumerate(span.pos)
    )
    return SpanRef(
        new_pos,
        span.start + level_shift(span.pos, span.start),
        span.end + level_shift(span.pos, span.end),
    )
