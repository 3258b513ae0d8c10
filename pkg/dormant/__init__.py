"""Exact arithmetic for Frobenius descent and dormant oper counts"""

__version__ = "0.1.0"
