"""Bruhat order on partial fixed-point-free involutions: poset construction,
EL-labeling verification, order-complex topology and length generating
functions."""

from .involutions import (
    Arc,
    Involution,
    PartialInvolution,
    RankControlMatrix,
    complete,
    enumerate_arcs,
    enumerate_pf,
    length_pf,
    length_via_arcs,
    maximum_element,
    minimum_element,
    rank_control,
    rho_leq,
    rho_lt,
    standard_form,
)
from .labeling import CoverLabel, MoveType, classify_cover, label_cover, label_poset, verify_el_poset
from .poset import Interval, Poset, build_poset, cocovers, covers, leq, mobius
from .qseries import QPoly
from .topology import BallCertificate, ball_certificate

__version__ = "0.1.0"
