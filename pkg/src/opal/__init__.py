"""Symbolic computation in free monoids and semigroups carrying two
unary operators D and P: monomial orders on bracketed words, rewriting
to normal form, bounded confluence checking and completion for operator
rule systems, presented base algebras, and linear bases of the
quotients by irreducible-word enumeration."""

__version__ = "0.1.0"
