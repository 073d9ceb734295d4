"""Height-preserving straightening of y-monotone poly-line drawings."""
