"""Curry-Howard term extraction: replaying a proof over a labeled
antecedent.

The prover works on label-free hypersequents; semantics re-walks a found
proof top-down carrying a parallel antecedent whose leaves and
hyperleaves are labeled with terms.  Each rule application transfers
labels to the premise antecedents:

* the identity axiom returns its occurrence's label;
* left rules for the function constructors label the freshly introduced
  value occurrence with an application of the functor's label to the
  argument premise's term;
* right rules for the function constructors abstract over a fresh
  variable labeling the introduced argument vector;
* the product rules pair premise terms and project occurrence labels;
* the unit right rules return the unit element, the unit left rules
  discard the occurrence's label;
* Cut labels the cut occurrence with the left subproof's term.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .config import (
    SEP,
    Config,
    HyperLeaf,
    Hypersequent,
    Leaf,
    Item,
    mk_item,
    strip_labels,
)
from .matcher import (
    SpanRef,
    item_at,
    item_span,
    kth_sep_addr,
    rebase_addr,
    rebase_span,
    span_content,
    splice_item,
    splice_span,
)
from .matcher import _carve as carve
from .prover import Proof
from .rules import (
    CUT,
    DISC_L,
    DISC_R,
    EXTRACT_L,
    EXTRACT_R,
    ID,
    I_L,
    I_R,
    INFIX_L,
    INFIX_R,
    J_L,
    J_R,
    OVER_L,
    OVER_R,
    PROD_L,
    PROD_R,
    UNDER_L,
    UNDER_R,
)
from .semterm import App, D, Lam, Pair, Proj, SemTerm, Var, alpha_eq, normalize


class ReadingError(ValueError):
    pass


def label_vector(t, term) -> Config:
    if t.sort == 0:
        return (Leaf(t, term),)
    return (HyperLeaf(t, ((SEP,),) * t.sort, term),)


def _label_of(item) -> SemTerm:
    if item is SEP or item.label is None:
        raise ReadingError(f"occurrence {item!r} carries no semantic label")
    return item.label


def extract_term(proof: Proof, labeling: Config) -> SemTerm:
    """Succedent term of ``proof`` under a labeled copy of its endsequent
    antecedent.  Fresh variables are numbered in traversal order, so the
    result is deterministic for a given proof."""
    counter = [0]

    def fresh() -> str:
        name = f"v{counter[0]}"
        counter[0] += 1
        return name

    def rec(node: Proof, ant: Config) -> SemTerm:
        if strip_labels(ant) != node.conclusion.ant:
            raise ReadingError(
                f"labeling does not match {node.rule} node "
                f"{node.conclusion!r}"
            )
        rule, meta, succ = node.rule, node.meta, node.conclusion.succ

        if rule == ID:
            return _label_of(ant[0])

        if rule == UNDER_R:
            v = fresh()
            prem = label_vector(succ.left, Var(v)) + ant
            return Lam(v, rec(node.premises[0], prem))

        if rule == OVER_R:
            v = fresh()
            prem = ant + label_vector(succ.right, Var(v))
            return Lam(v, rec(node.premises[0], prem))

        if rule == INFIX_R:
            v = fresh()
            a, k = succ.left, meta.k
            fillers = (((SEP,),) * (k - 1)) + (ant,) + (((SEP,),) * (a.sort - k))
            prem = (HyperLeaf(a, fillers, Var(v)),)
            return Lam(v, rec(node.premises[0], prem))

        if rule == EXTRACT_R:
            v = fresh()
            addr = kth_sep_addr(ant, meta.k)
            prem = splice_item(ant, addr, label_vector(succ.right, Var(v)))
            return Lam(v, rec(node.premises[0], prem))

        if rule == PROD_R:
            i = meta.split
            return Pair(
                rec(node.premises[0], ant[:i]), rec(node.premises[1], ant[i:])
            )

        if rule == DISC_R:
            g2 = span_content(ant, meta.span)
            g1 = splice_span(ant, meta.span, (SEP,))
            return Pair(rec(node.premises[0], g1), rec(node.premises[1], g2))

        if rule in (I_R, J_R):
            return D

        if rule == I_L:
            return rec(node.premises[0], splice_item(ant, meta.occ, ()))

        if rule == J_L:
            occ = item_at(ant, meta.occ)
            return rec(
                node.premises[0], splice_item(ant, meta.occ, occ.fillers[0])
            )

        if rule == PROD_L:
            occ = item_at(ant, meta.occ)
            t = _label_of(occ)
            a, b = occ.type.left, occ.type.right
            fillers = () if type(occ) is Leaf else occ.fillers
            item_a = mk_item(a, fillers[: a.sort], Proj(1, t))
            item_b = mk_item(b, fillers[a.sort :], Proj(2, t))
            return rec(
                node.premises[0], splice_item(ant, meta.occ, (item_a, item_b))
            )

        if rule == DISC_L:
            occ = item_at(ant, meta.occ)
            t = _label_of(occ)
            a, b, k = occ.type.left, occ.type.right, meta.k
            inner = mk_item(b, occ.fillers[k - 1 : k - 1 + b.sort], Proj(2, t))
            item_a = mk_item(
                a,
                occ.fillers[: k - 1] + ((inner,),) + occ.fillers[k - 1 + b.sort :],
                Proj(1, t),
            )
            return rec(node.premises[0], splice_item(ant, meta.occ, (item_a,)))

        if rule in (UNDER_L, OVER_L):
            occ = item_at(ant, meta.occ)
            functor = _label_of(occ)
            fillers = () if type(occ) is Leaf else occ.fillers
            region = span_content(ant, meta.span)
            rel = [rebase_span(s, meta.span) for s in meta.thetas]
            gamma = carve(region, rel)
            t1 = rec(node.premises[0], gamma)
            thetas = tuple(span_content(ant, s) for s in meta.thetas)
            if rule == UNDER_L:
                c = occ.type.right
                citem = mk_item(c, thetas + fillers, App(functor, t1))
                whole = SpanRef(meta.span.pos, meta.span.start, meta.occ[1] + 1)
            else:
                c = occ.type.left
                citem = mk_item(c, fillers + thetas, App(functor, t1))
                whole = SpanRef(meta.span.pos, meta.occ[1], meta.span.end)
            prem2 = splice_span(ant, whole, (citem,))
            return rec(node.premises[1], prem2)

        if rule == EXTRACT_L:
            occ = item_at(ant, meta.occ)
            functor = _label_of(occ)
            k = meta.k
            prefix = meta.occ[0] + ((meta.occ[1], k - 1),)
            rel = [
                SpanRef(s.pos[len(prefix) :], s.start, s.end) for s in meta.thetas
            ]
            gamma = carve(occ.fillers[k - 1], rel)
            t1 = rec(node.premises[0], gamma)
            thetas = tuple(span_content(ant, s) for s in meta.thetas)
            citem = mk_item(
                occ.type.left,
                occ.fillers[: k - 1] + thetas + occ.fillers[k:],
                App(functor, t1),
            )
            return rec(
                node.premises[1], splice_item(ant, meta.occ, (citem,))
            )

        if rule == INFIX_L:
            occ = item_at(ant, meta.occ)
            functor = _label_of(occ)
            fillers = () if type(occ) is Leaf else occ.fillers
            k = meta.k
            region = span_content(ant, meta.span)
            rel_pin = rebase_addr(meta.occ, meta.span)
            rel = [rebase_span(s, meta.span) for s in meta.thetas]
            gamma = carve(region, rel + [item_span(rel_pin)])
            t1 = rec(node.premises[0], gamma)
            thetas = tuple(span_content(ant, s) for s in meta.thetas)
            citem = mk_item(
                occ.type.right,
                thetas[: k - 1] + fillers + thetas[k - 1 :],
                App(functor, t1),
            )
            return rec(
                node.premises[1], splice_span(ant, meta.span, (citem,))
            )

        if rule == CUT:
            a = node.premises[0].conclusion.succ
            region = span_content(ant, meta.span)
            rel = [rebase_span(s, meta.span) for s in meta.thetas]
            gamma = carve(region, rel)
            t1 = rec(node.premises[0], gamma)
            phis = tuple(span_content(ant, s) for s in meta.thetas)
            prem2 = splice_span(ant, meta.span, (mk_item(a, phis, t1),))
            return rec(node.premises[1], prem2)

        raise ReadingError(f"no term assignment for rule {rule!r}")

    return rec(proof, labeling)


class Reading:
    """A distinct normalized reading with its supporting derivations."""

    __slots__ = ("term", "proofs")

    def __init__(self, term: SemTerm, proofs: list):
        self.term = term
        self.proofs = proofs

    @property
    def count(self) -> int:
        return len(self.proofs)

    def __repr__(self) -> str:
        return f"Reading({self.term!r}, {self.count} derivations)"


def readings(proofs: Iterable[Proof], labeling: Config, dedup: bool = True) -> list:
    """Normalized readings in first-derivation order; with ``dedup``,
    alpha-equivalent readings are merged."""
    out: list = []
    for p in proofs:
        term = normalize(extract_term(p, labeling))
        if dedup:
            for r in out:
                if alpha_eq(r.term, term):
                    r.proofs.append(p)
                    break
            else:
                out.append(Reading(term, [p]))
        else:
            out.append(Reading(term, [p]))
    return out
