"""Verifiers: star shape, ru-usc modulus, lsc envelopes, radial limits, calculus and relaxation."""
