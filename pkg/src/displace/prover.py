"""Backward-chaining cut-free proof search and an independent checker.

Search is exhaustive depth-first over :func:`displace.rules.inferences`
with memoization of completed subgoals.  Every backward step removes
exactly one connective occurrence, so the weight of a goal bounds the
search depth and the search space is finite; memoized results are total
for their subgoal, which keeps the answer set independent of sharing.

The checker never reuses the search path: it reconstructs each node's
conclusion from its premises and metadata via :func:`displace.rules.forward`
and compares exactly.
"""

from __future__ import annotations

import itertools
import json
import time
from typing import Iterable, Optional

from .config import (
    Config,
    Hypersequent,
    config_types,
    sequent_text,
    strip_labels,
    vector,
    weight_config,
)
from .matcher import SpanRef
from .rules import CUT, ID, Meta, RuleError, forward, inferences
from .types import TypeFormula, subtypes


class SearchTruncated(Exception):
    """Search gave up before exhausting the space (limit or timeout);
    distinguishes "no proof found" from "not searched"."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class ProofCheckError(Exception):
    """A node failed checking; ``path`` addresses it by premise indices
    from the root (e.g. "0.1" = second premise of the first premise)."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"node {path or 'root'}: {reason}")
        self.path = path
        self.reason = reason


class Proof:
    """An inference-tree node; immutable, premises may be shared."""

    __slots__ = ("conclusion", "rule", "premises", "meta")

    def __init__(self, conclusion: Hypersequent, rule: str, premises: tuple, meta: Meta):
        self.conclusion = conclusion
        self.rule = rule
        self.premises = premises
        self.meta = meta

    def __repr__(self) -> str:
        return f"Proof({self.rule}, {sequent_text(self.conclusion)})"

    def nodes(self) -> Iterable["Proof"]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    def is_cut_free(self) -> bool:
        return all(n.rule != CUT for n in self.nodes())

    def size(self) -> int:
        return sum(1 for _ in self.nodes())


class Limits:
    """Search budget: proofs retained per subgoal and wall-clock time."""

    __slots__ = ("max_proofs", "timeout")

    def __init__(self, max_proofs: int = 5000, timeout: Optional[float] = None):
        if max_proofs < 1:
            raise ValueError("max_proofs must be positive")
        if timeout is not None and timeout <= 0:
            raise ValueError("timeout must be positive")
        self.max_proofs = max_proofs
        self.timeout = timeout


class Prover:
    """Exhaustive cut-free prover with a reusable subgoal memo."""

    def __init__(self, limits: Optional[Limits] = None):
        self.limits = limits or Limits()
        self._memo: dict = {}
        self._decided: dict = {}
        self._deadline: Optional[float] = None

    def prove_all(self, goal: Hypersequent, limits: Optional[Limits] = None) -> tuple:
        """All cut-free proofs of ``goal``, deterministic order.
        Raises :class:`SearchTruncated` when a budget is exhausted."""
        limits = limits or self.limits
        goal = Hypersequent(strip_labels(goal.ant), goal.succ)
        self._deadline = (
            time.monotonic() + limits.timeout if limits.timeout else None
        )
        try:
            return self._search(goal, limits.max_proofs)
        finally:
            self._deadline = None

    def provable(self, goal: Hypersequent, limits: Optional[Limits] = None) -> bool:
        """Decision procedure: stops at the first proof of each subgoal."""
        limits = limits or self.limits
        goal = Hypersequent(strip_labels(goal.ant), goal.succ)
        self._deadline = (
            time.monotonic() + limits.timeout if limits.timeout else None
        )
        try:
            return self._decide(goal)
        finally:
            self._deadline = None

    def _tick(self) -> None:
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise SearchTruncated("time budget exhausted")

    def _search(self, goal: Hypersequent, cap: int) -> tuple:
        hit = self._memo.get(goal)
        if hit is not None:
            return hit
        self._tick()
        proofs: list = []
        for inf in inferences(goal):
            subs = []
            dead = False
            for prem in inf.premises:
                found = self._search(prem, cap)
                if not found:
                    dead = True
                    break
                subs.append(found)
            if dead:
                continue
            for combo in itertools.product(*subs):
                proofs.append(Proof(goal, inf.rule, combo, inf.meta))
                if len(proofs) > cap:
                    raise SearchTruncated(
                        f"more than {cap} proofs for {sequent_text(goal)}"
                    )
        result = tuple(proofs)
        self._memo[goal] = result
        self._decided[goal] = bool(result)
        return result

    def _decide(self, goal: Hypersequent) -> bool:
        hit = self._decided.get(goal)
        if hit is not None:
            return hit
        self._tick()
        for inf in inferences(goal):
            if all(self._decide(p) for p in inf.premises):
                self._decided[goal] = True
                return True
        self._decided[goal] = False
        return False


def prove_all(goal: Hypersequent, limits: Optional[Limits] = None) -> tuple:
    return Prover(limits).prove_all(goal)


def applicable_inferences(goal: Hypersequent) -> list:
    """The finite set of backward rule instances matching ``goal``."""
    return inferences(goal)


# ---------------------------------------------------------------------------
# checking


def check_proof(p: Proof) -> None:
    """Verify every node against its rule schema; raise
    :class:`ProofCheckError` at the first invalid node."""
    _check(p, "")


def _check(p: Proof, path: str) -> None:
    for i, prem in enumerate(p.premises):
        _check(prem, f"{path}.{i}" if path else str(i))
    if p.rule == ID:
        if p.premises:
            raise ProofCheckError(path, "id with premises")
        if p.conclusion.ant != vector(p.conclusion.succ):
            raise ProofCheckError(
                path, f"not an identity axiom: {sequent_text(p.conclusion)}"
            )
        return
    try:
        rebuilt = forward(p.rule, p.meta, tuple(q.conclusion for q in p.premises))
    except RuleError as e:
        raise ProofCheckError(path, str(e)) from e
    if rebuilt != p.conclusion:
        raise ProofCheckError(
            path,
            f"{p.rule} rebuilds {sequent_text(rebuilt)}, "
            f"recorded {sequent_text(p.conclusion)}",
        )


def is_valid_proof(p: Proof) -> bool:
    try:
        check_proof(p)
    except ProofCheckError:
        return False
    return True


def weight_decrease_ok(p: Proof) -> bool:
    """Non-axiom backward steps lose exactly one connective occurrence.
    Cut nodes are exempt (Cut is not part of backward search)."""
    for node in p.nodes():
        if node.rule == ID or node.rule == CUT:
            continue
        w = node.conclusion.weight
        for prem in node.premises:
            if prem.conclusion.weight != w - 1:
                return False
    return True


def subformula_check(p: Proof) -> bool:
    """True iff every type anywhere in the proof is a subformula of a
    type of the endsequent.  Meaningful for cut-free proofs."""
    end = p.conclusion
    allowed: set = set()
    for t in config_types(end.ant):
        allowed.update(subtypes(t))
    allowed.update(subtypes(end.succ))
    for node in p.nodes():
        for t in config_types(node.conclusion.ant):
            if t not in allowed:
                return False
        if node.conclusion.succ not in allowed:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON serialization (stable across runs)


def _pos_json(pos) -> list:
    return [[i, f] for i, f in pos]


def _addr_json(addr) -> list:
    return [_pos_json(addr[0]), addr[1]]


def _span_json(s: SpanRef) -> list:
    return [_pos_json(s.pos), s.start, s.end]


def meta_to_json(m: Meta) -> dict:
    out: dict = {}
    if m.occ is not None:
        out["occ"] = _addr_json(m.occ)
    if m.span is not None:
        out["span"] = _span_json(m.span)
    if m.thetas is not None:
        out["extraction"] = [_span_json(s) for s in m.thetas]
    if m.k is not None:
        out["k"] = m.k
    if m.split is not None:
        out["split"] = m.split
    return out


def _pos_from(j) -> tuple:
    return tuple((int(i), int(f)) for i, f in j)


def meta_from_json(j: dict) -> Meta:
    occ = j.get("occ")
    span = j.get("span")
    thetas = j.get("extraction")
    return Meta(
        occ=(_pos_from(occ[0]), int(occ[1])) if occ is not None else None,
        span=SpanRef(_pos_from(span[0]), int(span[1]), int(span[2]))
        if span is not None
        else None,
        thetas=tuple(
            SpanRef(_pos_from(s[0]), int(s[1]), int(s[2])) for s in thetas
        )
        if thetas is not None
        else None,
        k=j.get("k"),
        split=j.get("split"),
    )


def proof_to_json(p: Proof) -> dict:
    return {
        "rule": p.rule,
        "conclusion": sequent_text(p.conclusion),
        "meta": meta_to_json(p.meta),
        "premises": [proof_to_json(q) for q in p.premises],
    }


def proof_from_json(j: dict) -> Proof:
    from .syntax import parse_sequent

    return Proof(
        parse_sequent(j["conclusion"]),
        j["rule"],
        tuple(proof_from_json(q) for q in j.get("premises", ())),
        meta_from_json(j.get("meta", {})),
    )


def dump_proof(p: Proof) -> str:
    return json.dumps(proof_to_json(p), indent=2)


def load_proof(text: str) -> Proof:
    return proof_from_json(json.loads(text))
