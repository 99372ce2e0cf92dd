"""Exact Laurent-polynomial tools for classical group characters.

Characters of gl, so(2n+1), sp(2n) and o(2n) are built as bialternant
quotients, factorization identities between them are checked symbolically
or at random rational points, and plane-partition counts are compared with
the character specializations that produce them.
"""

__version__ = "0.1.0"
