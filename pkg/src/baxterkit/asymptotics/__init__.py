"""Asymptotic expansions and log-convexity certificates for P-recursive sequences."""
