"""Exact-arithmetic certificates for Kontsevich-Zorich monodromies of
square-tiled surfaces: cylinder decompositions, Dehn-twist actions on the
non-tautological homology, Galois-pinching analysis of reciprocal
characteristic polynomials, and the three-transvection arithmeticity
criterion."""

__version__ = "0.1.0"
