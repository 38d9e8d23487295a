"""Unit tests for AlphaEvolve.""" 