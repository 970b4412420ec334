"""Exact intersection numbers of psi, omega and kappa classes on moduli of curves."""

from pinwheel.partitions import SetPartition, codimension, enumerate_set_partitions, part_weights
from pinwheel.psi import IntegrityError, PsiCache, psi_top, psi_top_genus0_closed
from pinwheel.expansion import (
    OmegaMonomial,
    PinwheelTerm,
    evaluate_pinwheel_term,
    expand_graph_formula,
    integrate_expansion,
)
from pinwheel.numeric import KappaMonomial, check_pushforward_identity, kappa_top, omega_top

__all__ = [
    "IntegrityError",
    "KappaMonomial",
    "OmegaMonomial",
    "PinwheelTerm",
    "PsiCache",
    "SetPartition",
    "check_pushforward_identity",
    "codimension",
    "enumerate_set_partitions",
    "evaluate_pinwheel_term",
    "expand_graph_formula",
    "integrate_expansion",
    "kappa_top",
    "omega_top",
    "part_weights",
    "psi_top",
    "psi_top_genus0_closed",
]
