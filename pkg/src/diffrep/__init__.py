"""Differential representations of SL2, tori and vector groups over Q(t)."""
