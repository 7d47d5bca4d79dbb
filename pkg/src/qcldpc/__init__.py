"""Quasi-cyclic LDPC / GLDPC construction and analysis toolkit."""

__version__ = "0.1.0"
