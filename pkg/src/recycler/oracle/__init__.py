"""
A library for exact enumerated laws and the statistical tests samplers are checked with.
"""
