"""Kripke-semantics toolkit: modal satisfiability, quantified boolean
translations and single-variable embeddings."""

try:
    from ._modalkit import (
        attach,
        chain_model,
        embed,
        fmt,
        model_check,
        qbf_eval,
        qbf_translate,
        qbf_witness,
        sat,
        selftest,
        star,
        valid,
    )
except ImportError:
    from _modalkit import (
        attach,
        chain_model,
        embed,
        fmt,
        model_check,
        qbf_eval,
        qbf_translate,
        qbf_witness,
        sat,
        selftest,
        star,
        valid,
    )

__all__ = [
    "attach",
    "chain_model",
    "embed",
    "fmt",
    "model_check",
    "qbf_eval",
    "qbf_translate",
    "qbf_witness",
    "sat",
    "selftest",
    "star",
    "valid",
]
