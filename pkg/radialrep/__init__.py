"""
radialrep: numerical verification of radial representation results

radialrep checks, on finite-dimensional spaces and finite-difference meshes,
the theory of radially uniformly upper semicontinuous (ru-usc) functions:
the radial modulus, strongly star-shaped sets, lower semicontinuous
envelopes, radial limits on boundaries, the ru-usc calculus and the
gradient-constrained relaxation application.
"""

__version__ = "0.1.0"
