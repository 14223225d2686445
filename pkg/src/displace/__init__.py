"""Displacement-calculus theorem prover, parser and semantics."""

from .config import (
    SEP,
    Config,
    HyperLeaf,
    Hypersequent,
    Leaf,
    config_sort,
    gen_wrap,
    mk_item,
    strip_labels,
    vector,
    weight_config,
    wrap_at,
)
from .prover import (
    Limits,
    Proof,
    ProofCheckError,
    Prover,
    SearchTruncated,
    applicable_inferences,
    check_proof,
    prove_all,
    subformula_check,
)
from .syntax import ParseError, parse_config, parse_sequent, parse_type, render
from .types import (
    Atom,
    DiscProd,
    Extract,
    InfixDn,
    InvalidTypeError,
    Over,
    Prod,
    TypeFormula,
    Under,
    sort_of_type,
    validate_type,
    weight_type,
)

__all__ = [name for name in dir() if not name.startswith("_")]
