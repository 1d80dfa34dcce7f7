"""Exact and approximate (normalized) multiple sequence alignment."""
