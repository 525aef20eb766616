"""Tightness and contact-class certificates for open books on the annulus and
the once-punctured torus."""

from .eh import CertKind, Certificate, bigon_complex, certify_nonzero, certify_zero_left_arc, decide, replay
from .heegaard import HeegaardDiagram, annulus_diagram, build_diagram, torus_diagram
from .mcg import classify, evaluate, fdtc, right_veering, tight
from .surface import TorusBasis, make_annulus, make_punctured_torus, slide_sequence
from .words import MapClassWord, word

__version__ = "0.1.0"

__all__ = [
    "CertKind", "Certificate", "HeegaardDiagram", "MapClassWord", "TorusBasis",
    "annulus_diagram", "bigon_complex", "build_diagram", "certify_nonzero", "certify_zero_left_arc",
    "classify", "decide", "evaluate", "fdtc", "make_annulus", "make_punctured_torus", "replay",
    "right_veering", "slide_sequence", "tight", "torus_diagram", "word",
]
