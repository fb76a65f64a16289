"""Hard Max-Cut instances: Karloff and strongly-regular families, Goemans-Williamson
and depth-1 QAOA instance-specific approximation ratios."""

__version__ = "0.1.0"
