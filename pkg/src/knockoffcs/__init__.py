"""Knockoff-guided compressive sensing."""
