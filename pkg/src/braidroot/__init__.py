"""Braid group computations built on Garside normal forms.

The package certifies conjugacy with explicit conjugators and uses that to
check, case by case, that braids sharing a k-th power are conjugate."""

__version__ = "0.1.0"
